//! Arithmetic in GF(p) and GF(p^m).
//!
//! Extension elements are coordinate vectors in the polynomial basis
//! `1, x, ..., x^(m-1)` of `GF(p)[x] / (f)`, where `f` is the field's monic
//! irreducible modulus. The same basis identifies `GF(p^m)^n` with the
//! `m x n` matrices over GF(p): coordinate `j` of a vector becomes column `j`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::linalg::MatrixGF;
use crate::{Error, Result};

/// Largest field order for which log/antilog tables are built.
const TABLE_LIMIT: u64 = 4096;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Polynomials over GF(p), coefficients low-to-high, no trailing zeros.
mod poly {
    use super::inv_mod;
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Quotient and remainder of `a` by nonzero `b`.
    pub fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut rem = trim(a.to_vec());
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        let mut quot = vec![0u32; rem.len() - b.len() + 1];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = rem.last().unwrap() * lead_inv % p;
            quot[shift] = c;
            for (j, &bj) in b.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + p * p - c * bj % p) % p;
            }
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        divrem(a, b, p).1
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), f, p);
            }
            b = rem(&mul(&b, &b, p), f, p);
            e >>= 1;
        }
        rem(&acc, f, p)
    }

    /// Rabin's test: `f` of degree `m` is irreducible iff `x^(p^m) = x mod f`
    /// and `gcd(x^(p^(m/l)) - x, f) = 1` for each prime `l | m`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        let x = rem(&[0, 1], &f, p);
        // frob[k] = x^(p^k) mod f
        let mut frob = vec![x.clone()];
        for k in 1..=m {
            let next = pow_mod(&frob[k - 1], p as u64, &f, p);
            frob.push(next);
        }
        if frob[m] != x {
            return false;
        }
        let mut rest = m;
        let mut l = 2;
        while rest > 1 {
            if rest.is_multiple_of(l) {
                while rest.is_multiple_of(l) {
                    rest /= l;
                }
                let h = sub(&frob[m / l], &x, p);
                if gcd(&h, &f, p).len() > 1 {
                    return false;
                }
            }
            l += 1;
        }
        true
    }
}

#[derive(Debug, Clone)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(p^m) with a fixed monic irreducible modulus.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    order: Option<u64>,
    tables: Option<LogTables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Element of GF(p^m) as polynomial-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElement {
    coeffs: Vec<u32>,
}

impl ExtElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl FieldSpec {
    /// Builds GF(p^m) from an explicit modulus (coefficients low-to-high,
    /// length `m + 1`, leading coefficient 1).
    pub fn new(p: u32, m: usize, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("field characteristic {p} is not prime")));
        }
        if p > 255 {
            return Err(Error::usage(format!("characteristic {p} exceeds 255")));
        }
        if m == 0 {
            return Err(Error::usage("extension degree must be at least 1"));
        }
        if modulus.len() != m + 1 {
            return Err(Error::usage(format!(
                "modulus has {} coefficients, expected {}",
                modulus.len(),
                m + 1
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::usage("modulus coefficient out of range"));
        }
        if modulus[m] != 1 {
            return Err(Error::usage("modulus must be monic"));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::usage(format!(
                "modulus {} is reducible over GF({p})",
                poly_digits(&modulus, p)
            )));
        }
        let order = (p as u64).checked_pow(m as u32);
        let mut field = FieldSpec {
            p,
            m,
            modulus,
            order,
            tables: None,
        };
        if let Some(q) = order.filter(|&q| q <= TABLE_LIMIT) {
            field.tables = Some(field.build_tables(q));
        }
        Ok(field)
    }

    /// GF(p^m) under the lexicographically least monic irreducible modulus,
    /// comparing coefficient strings low-to-high.
    pub fn default_for(p: u32, m: usize) -> Result<Self> {
        if !is_prime(p) || p > 255 {
            return Err(Error::usage(format!("field characteristic {p} is not a prime below 256")));
        }
        if m == 0 {
            return Err(Error::usage("extension degree must be at least 1"));
        }
        // low coefficients c0..c(m-1), c0 most significant in the ordering
        let mut low = vec![0u32; m];
        loop {
            let mut f = low.clone();
            f.push(1);
            if poly::is_irreducible(&f, p) {
                return FieldSpec::new(p, m, f);
            }
            let mut i = m;
            loop {
                if i == 0 {
                    unreachable!("an irreducible polynomial of every degree exists");
                }
                i -= 1;
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `p^m`, when it fits in 64 bits.
    pub fn order(&self) -> Option<u64> {
        self.order
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> ExtElement {
        self.constant(1)
    }

    /// Embeds a base-field residue.
    pub fn constant(&self, c: u32) -> ExtElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.p;
        e
    }

    /// The class of `x`; equals `1 + ... ` only when `m = 1`.
    pub fn x(&self) -> ExtElement {
        self.x_pow(1)
    }

    /// `x^i` reduced modulo the modulus.
    pub fn x_pow(&self, i: usize) -> ExtElement {
        let mut mono = vec![0u32; i + 1];
        mono[i] = 1;
        self.reduce_poly(&mono)
    }

    fn reduce_poly(&self, a: &[u32]) -> ExtElement {
        let r = poly::rem(a, &self.modulus, self.p);
        let mut coeffs = vec![0u32; self.m];
        coeffs[..r.len()].copy_from_slice(&r);
        ExtElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<ExtElement> {
        let e = ExtElement { coeffs };
        self.check(&e)?;
        Ok(e)
    }

    fn check(&self, e: &ExtElement) -> Result<()> {
        if e.coeffs.len() != self.m || e.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::usage(format!("element {:?} is not in {}", e.coeffs, self)));
        }
        Ok(())
    }

    /// Element with base-`p` digits of `index` as coordinates (low first).
    pub fn from_index(&self, mut index: u64) -> ExtElement {
        let mut coeffs = vec![0u32; self.m];
        for c in coeffs.iter_mut() {
            *c = (index % self.p as u64) as u32;
            index /= self.p as u64;
        }
        ExtElement { coeffs }
    }

    pub fn index_of(&self, e: &ExtElement) -> u64 {
        e.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// All field elements in index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = ExtElement> + '_> {
        let q = self
            .order
            .ok_or_else(|| Error::capacity("field enumeration", u64::MAX, u64::MAX))?;
        Ok((0..q).map(move |i| self.from_index(i)))
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    fn add_unchecked(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        ExtElement { coeffs }
    }

    pub fn neg(&self, a: &ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        Ok(ExtElement { coeffs })
    }

    pub fn sub(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        match &self.tables {
            Some(t) => {
                let (ia, ib) = (self.index_of(a), self.index_of(b));
                if ia == 0 || ib == 0 {
                    return self.zero();
                }
                let n = t.exp.len() as u64;
                let s = (t.log[ia as usize] as u64 + t.log[ib as usize] as u64) % n;
                self.from_index(t.exp[s as usize] as u64)
            }
            None => self.mul_schoolbook(a, b),
        }
    }

    fn mul_schoolbook(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let prod = poly::mul(&a.coeffs, &b.coeffs, self.p);
        self.reduce_poly(&prod)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: &ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::usage("zero has no inverse"));
        }
        let p = self.p;
        let (mut r0, mut r1) = (self.modulus.clone(), poly::trim(a.coeffs.clone()));
        let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = poly::divrem(&r0, &r1, p);
            let s = poly::sub(&s0, &poly::mul(&q, &s1, p), p);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant
        let c = inv_mod(r0[0], p);
        let scaled: Vec<u32> = s0.iter().map(|&x| x * c % p).collect();
        Ok(self.reduce_poly(&scaled))
    }

    pub fn pow(&self, a: &ExtElement, mut e: u64) -> Result<ExtElement> {
        self.check(a)?;
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(&acc, &b);
            }
            b = self.mul_unchecked(&b, &b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `a^(q^(step * i))`, the `i`-th power of the Frobenius automorphism
    /// `z -> z^(q^step)`. Requires `gcd(step, m) = 1`.
    pub fn frobenius_pow(&self, a: &ExtElement, i: usize, step: usize) -> Result<ExtElement> {
        self.check(a)?;
        if step == 0 || gcd(step, self.m) != 1 {
            return Err(Error::usage(format!(
                "automorphism step {step} is not coprime to m = {}",
                self.m
            )));
        }
        let reps = (step % self.m) * (i % self.m) % self.m;
        let mut out = a.clone();
        for _ in 0..reps {
            out = self.pow(&out, self.p as u64)?;
        }
        Ok(out)
    }

    /// Column `j` of the result holds the coordinates of `v[j]`.
    pub fn vec_to_matrix(&self, v: &[ExtElement]) -> Result<MatrixGF> {
        let mut x = MatrixGF::zeros(self.p, self.m, v.len())?;
        for (j, e) in v.iter().enumerate() {
            self.check(e)?;
            for (t, &c) in e.coeffs.iter().enumerate() {
                x.set(t, j, c as u8);
            }
        }
        Ok(x)
    }

    pub fn matrix_to_vec(&self, x: &MatrixGF) -> Result<Vec<ExtElement>> {
        if x.p() != self.p || x.rows() != self.m {
            return Err(Error::usage(format!(
                "{}x{} matrix over GF({}) does not match {}",
                x.rows(),
                x.cols(),
                x.p(),
                self
            )));
        }
        Ok((0..x.cols())
            .map(|j| ExtElement {
                coeffs: (0..self.m).map(|t| x.get(t, j) as u32).collect(),
            })
            .collect())
    }

    fn build_tables(&self, q: u64) -> LogTables {
        let n = (q - 1) as usize;
        if n == 0 {
            return LogTables { exp: Vec::new(), log: Vec::new() };
        }
        for cand in 1..q {
            let g = self.from_index(cand);
            let mut exp = Vec::with_capacity(n);
            let mut cur = self.one();
            let mut primitive = true;
            for k in 0..n {
                let idx = self.index_of(&cur) as u32;
                if k > 0 && idx == 1 {
                    primitive = false;
                    break;
                }
                exp.push(idx);
                cur = self.mul_schoolbook(&cur, &g);
            }
            if primitive {
                let mut log = vec![0u32; q as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[v as usize] = k as u32;
                }
                return LogTables { exp, log };
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }
}

fn poly_digits(coeffs: &[u32], p: u32) -> String {
    let mut s = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if p > 10 && i > 0 {
            s.push('.');
        }
        s.push_str(&format!("{c}"));
    }
    s
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gf:p={},m={},poly={}",
            self.p,
            self.m,
            poly_digits(&self.modulus, self.p)
        )
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `gf:p=2,m=4,poly=10011`. Digits are low-to-high; for `p > 10`
    /// they are separated by `.`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("gf:")
            .ok_or_else(|| Error::usage(format!("field spec `{s}` lacks `gf:` prefix")))?;
        let (mut p, mut m, mut poly) = (None, None, None);
        for part in body.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::usage(format!("bad field spec component `{part}`")))?;
            match k {
                "p" => p = v.parse::<u32>().ok(),
                "m" => m = v.parse::<usize>().ok(),
                "poly" => poly = Some(v),
                _ => return Err(Error::usage(format!("unknown field spec key `{k}`"))),
            }
        }
        let (p, m) = match (p, m) {
            (Some(p), Some(m)) => (p, m),
            _ => return Err(Error::usage(format!("field spec `{s}` needs numeric p and m"))),
        };
        match poly {
            None => FieldSpec::default_for(p, m),
            Some(digits) => {
                let coeffs: Option<Vec<u32>> = if digits.contains('.') || p > 10 {
                    digits.split('.').map(|d| d.parse().ok()).collect()
                } else {
                    digits.chars().map(|c| c.to_digit(10)).collect()
                };
                let coeffs = coeffs.ok_or_else(|| Error::usage(format!("bad polynomial `{digits}`")))?;
                FieldSpec::new(p, m, coeffs)
            }
        }
    }
}
