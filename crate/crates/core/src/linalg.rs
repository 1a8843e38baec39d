//! Dense matrices over GF(p), canonical subspaces, and the rank, subspace
//! and injection metrics.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::gf::{inv_mod, is_prime};
use crate::{Error, Result};

/// Dense row-major matrix over GF(p), `p < 256`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixGF {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl MatrixGF {
    pub fn new(p: u32, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        check_prime(p)?;
        if data.len() != rows * cols {
            return Err(Error::usage(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&e| e as u32 >= p) {
            return Err(Error::usage(format!("matrix entry out of range for GF({p})")));
        }
        Ok(MatrixGF {
            p: p as u8,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::from_raw(p as u8, rows, cols, vec![0; rows * cols]))
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut x = Self::zeros(p, n, n)?;
        for i in 0..n {
            x.set(i, i, 1);
        }
        Ok(x)
    }

    pub fn from_rows(p: u32, rows: &[&[u8]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::usage("ragged rows"));
        }
        Self::new(p, rows.len(), cols, rows.concat())
    }

    pub(crate) fn from_raw(p: u8, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        MatrixGF { p, rows, cols, data }
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(v < self.p);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut data = vec![0u8; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        Self::from_raw(self.p, self.cols, self.rows, data)
    }

    fn same_shape(&self, other: &MatrixGF) -> Result<()> {
        if self.p != other.p || self.shape() != other.shape() {
            return Err(Error::usage(format!(
                "shape mismatch: {}x{} over GF({}) vs {}x{} over GF({})",
                self.rows, self.cols, self.p, other.rows, other.cols, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixGF) -> Result<MatrixGF> {
        self.same_shape(other)?;
        let p = self.p as u16;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
            .collect();
        Ok(Self::from_raw(self.p, self.rows, self.cols, data))
    }

    pub fn neg(&self) -> MatrixGF {
        let p = self.p;
        let data = self.data.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        Self::from_raw(self.p, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &MatrixGF) -> Result<MatrixGF> {
        self.add(&other.neg())
    }

    pub fn matmul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.p != other.p || self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u32;
        let mut out = vec![0u8; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: u32 = (0..self.cols)
                    .map(|k| self.get(i, k) as u32 * other.get(k, j) as u32)
                    .sum();
                out[i * other.cols + j] = (s % p) as u8;
            }
        }
        Ok(Self::from_raw(self.p, self.rows, other.cols, out))
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.p != other.p || self.cols != other.cols {
            return Err(Error::usage("vstack needs equal column counts"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self::from_raw(self.p, self.rows + other.rows, self.cols, data))
    }

    /// Columns `idx` of `self`, in order.
    pub fn select_cols(&self, idx: &[usize]) -> MatrixGF {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            data.extend(idx.iter().map(|&j| self.get(i, j)));
        }
        Self::from_raw(self.p, self.rows, idx.len(), data)
    }

    pub fn rank(&self) -> usize {
        let mut buf = self.data.clone();
        rank_in_place(self.p, self.rows, self.cols, &mut buf)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (MatrixGF, Vec<usize>) {
        let mut buf = self.data.clone();
        let pivots = rref_in_place(self.p, self.rows, self.cols, &mut buf);
        (Self::from_raw(self.p, self.rows, self.cols, buf), pivots)
    }

    /// R(X), a subspace of GF(p)^cols.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_generators(self)
    }

    /// C(X), a subspace of GF(p)^rows.
    pub fn col_space(&self) -> Subspace {
        Subspace::from_generators(&self.transpose())
    }

    /// `(G, H)` with `self = G^T H`, both of full row rank `r = rank(self)`.
    ///
    /// `H` is the nonzero part of the RREF, so it is the canonical basis of
    /// the row space; `G^T` is the submatrix of `self` on the pivot columns.
    pub fn rank_factorization(&self) -> (MatrixGF, MatrixGF) {
        let (red, pivots) = self.rref();
        let r = pivots.len();
        let h = Self::from_raw(self.p, r, self.cols, red.data[..r * self.cols].to_vec());
        let g = self.select_cols(&pivots).transpose();
        (g, h)
    }

    /// Parses the `a b c; d e f` text form, checking the expected shape.
    pub fn parse(p: u32, rows: usize, cols: usize, s: &str) -> Result<MatrixGF> {
        let m = Self::parse_any(p, s)?;
        if m.rows == 0 && rows == 0 {
            return Self::zeros(p, 0, cols);
        }
        if m.shape() != (rows, cols) {
            return Err(Error::usage(format!(
                "expected a {rows}x{cols} matrix, found {}x{}",
                m.rows, m.cols
            )));
        }
        Ok(m)
    }

    /// Parses the text form, inferring the shape from the text.
    pub fn parse_any(p: u32, s: &str) -> Result<MatrixGF> {
        let s = s.trim();
        if s.is_empty() || s == "[]" {
            return Self::zeros(p, 0, 0);
        }
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for row in s.split(';') {
            let entries: core::result::Result<Vec<u8>, _> =
                row.split_whitespace().map(u8::from_str).collect();
            let entries = entries.map_err(|_| Error::usage(format!("bad matrix row `{}`", row.trim())))?;
            rows.push(entries);
        }
        let refs: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        Self::from_rows(p, &refs)
    }
}

impl fmt::Display for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 {
            return f.write_str("[]");
        }
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

fn check_prime(p: u32) -> Result<()> {
    if p > 255 || !is_prime(p) {
        return Err(Error::usage(format!("GF({p}) unsupported: need a prime below 256")));
    }
    Ok(())
}

/// Rank of a row-major buffer; the buffer is clobbered.
pub(crate) fn rank_in_place(p: u8, rows: usize, cols: usize, data: &mut [u8]) -> usize {
    if p == 2 && cols <= 64 {
        return rank_gf2_rows(rows, cols, data);
    }
    rref_in_place(p, rows, cols, data).len()
}

fn rank_gf2_rows(rows: usize, cols: usize, data: &[u8]) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for i in 0..rows {
        let mut v = data[i * cols..(i + 1) * cols]
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &b)| acc | ((b as u64) << j));
        while v != 0 {
            let h = 63 - v.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = v;
                rank += 1;
                break;
            }
            v ^= basis[h];
        }
    }
    rank
}

/// Rank of a GF(2) matrix given as bit-packed rows (bit `j` = column `j`).
pub(crate) fn rank_gf2_packed(rows: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &row in rows {
        let mut v = row;
        while v != 0 {
            let h = 63 - v.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = v;
                rank += 1;
                break;
            }
            v ^= basis[h];
        }
    }
    rank
}

pub(crate) fn rref_in_place(p: u8, rows: usize, cols: usize, data: &mut [u8]) -> Vec<usize> {
    let p32 = p as u32;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                data.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(data[r * cols + c] as u32, p32);
        if inv != 1 {
            for j in c..cols {
                data[r * cols + j] = (data[r * cols + j] as u32 * inv % p32) as u8;
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c] as u32;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * data[r * cols + j] as u32 % p32;
                data[i * cols + j] = ((data[i * cols + j] as u32 + p32 - sub) % p32) as u8;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A subspace of GF(p)^n held by its reduced row echelon basis, so equal
/// subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    basis: MatrixGF,
}

impl Subspace {
    /// Row space of `g`.
    pub fn from_generators(g: &MatrixGF) -> Subspace {
        let (red, pivots) = g.rref();
        let r = pivots.len();
        Subspace {
            basis: MatrixGF::from_raw(g.p, r, g.cols, red.data[..r * g.cols].to_vec()),
        }
    }

    /// Wraps a basis that must already be in canonical form.
    pub fn from_rref(basis: MatrixGF) -> Result<Subspace> {
        let canon = Subspace::from_generators(&basis);
        if canon.basis != basis {
            return Err(Error::usage(format!("`{basis}` is not a reduced row echelon basis")));
        }
        Ok(canon)
    }

    pub fn zero(p: u32, n: usize) -> Result<Subspace> {
        Ok(Subspace {
            basis: MatrixGF::zeros(p, 0, n)?,
        })
    }

    pub fn full(p: u32, n: usize) -> Result<Subspace> {
        Ok(Subspace {
            basis: MatrixGF::identity(p, n)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn p(&self) -> u32 {
        self.basis.p()
    }

    /// Canonical generator matrix.
    pub fn basis(&self) -> &MatrixGF {
        &self.basis
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        if v.len() != self.ambient() {
            return false;
        }
        let row = MatrixGF::from_raw(self.basis.p, 1, v.len(), v.to_vec());
        match self.basis.vstack(&row) {
            Ok(stacked) => stacked.rank() == self.dim(),
            Err(_) => false,
        }
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.basis.fmt(f)
    }
}

fn same_ambient(u: &Subspace, v: &Subspace) -> Result<()> {
    if u.ambient() != v.ambient() || u.p() != v.p() {
        return Err(Error::usage(format!(
            "ambient mismatch: GF({})^{} vs GF({})^{}",
            u.p(),
            u.ambient(),
            v.p(),
            v.ambient()
        )));
    }
    Ok(())
}

/// dim(U + V).
pub fn subspace_sum_dim(u: &Subspace, v: &Subspace) -> Result<usize> {
    same_ambient(u, v)?;
    Ok(u.basis.vstack(&v.basis)?.rank())
}

/// dim(U ∩ V) = dim U + dim V - dim(U + V).
pub fn subspace_intersect_dim(u: &Subspace, v: &Subspace) -> Result<usize> {
    let sum = subspace_sum_dim(u, v)?;
    Ok(u.dim() + v.dim() - sum)
}

/// d_S(U, V) = 2 dim(U + V) - dim U - dim V.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    let sum = subspace_sum_dim(u, v)?;
    Ok(2 * sum - u.dim() - v.dim())
}

/// d_I(U, V) = dim(U + V) - min(dim U, dim V).
pub fn injection_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    let sum = subspace_sum_dim(u, v)?;
    Ok(sum - u.dim().min(v.dim()))
}

/// d_R(X, Y) = rank(X - Y).
pub fn rank_distance(x: &MatrixGF, y: &MatrixGF) -> Result<usize> {
    Ok(x.sub(y)?.rank())
}

/// Lower and upper bounds on d_R(X, Y) from the injection distances of the
/// row spaces and of the column spaces:
///
/// `dI(R) + dI(C) - |rk X - rk Y| <= d_R(X, Y) <= min(dI(R), dI(C)) + min(rk X, rk Y)`.
pub fn rank_distance_bounds(x: &MatrixGF, y: &MatrixGF) -> Result<(usize, usize)> {
    x.same_shape(y)?;
    let (rx, ry) = (x.rank(), y.rank());
    let d_row = injection_distance(&x.row_space(), &y.row_space())?;
    let d_col = injection_distance(&x.col_space(), &y.col_space())?;
    let lower = d_row + d_col - rx.abs_diff(ry);
    let upper = d_row.min(d_col) + rx.min(ry);
    Ok((lower, upper))
}

/// Minimum distance of a code; `Infinite` for codes with fewer than two words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MinDistance {
    Finite(usize),
    Infinite,
}

impl MinDistance {
    pub fn finite(self) -> Option<usize> {
        match self {
            MinDistance::Finite(d) => Some(d),
            MinDistance::Infinite => None,
        }
    }

    pub fn at_least(self, d: usize) -> bool {
        self >= MinDistance::Finite(d)
    }
}

impl fmt::Display for MinDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDistance::Finite(d) => write!(f, "{d}"),
            MinDistance::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for MinDistance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" => Ok(MinDistance::Infinite),
            _ => s
                .parse()
                .map(MinDistance::Finite)
                .map_err(|_| Error::usage(format!("bad distance `{s}`"))),
        }
    }
}

/// All `r`-dimensional subspaces of GF(p)^n, sorted canonically.
pub fn grassmannian(p: u32, n: usize, r: usize) -> Result<Vec<Subspace>> {
    check_prime(p)?;
    let mut out = Vec::new();
    if r > n {
        return Ok(out);
    }
    let p8 = p as u8;
    let mut pivots: Vec<usize> = (0..r).collect();
    loop {
        // free positions: row i, columns after its pivot that are not pivots
        let mut free = Vec::new();
        for (i, &c) in pivots.iter().enumerate() {
            for j in c + 1..n {
                if !pivots.contains(&j) {
                    free.push(i * n + j);
                }
            }
        }
        let mut base = vec![0u8; r * n];
        for (i, &c) in pivots.iter().enumerate() {
            base[i * n + c] = 1;
        }
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut data = base.clone();
            for (&pos, &d) in free.iter().zip(&digits) {
                data[pos] = d;
            }
            out.push(Subspace {
                basis: MatrixGF::from_raw(p8, r, n, data),
            });
            if !odometer(&mut digits, p8) {
                break;
            }
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// All `m x n` matrices of rank `r`, sorted, built as `G^T H` over canonical
/// row-space bases `H` and full-rank `G`.
pub fn matrices_of_rank(p: u32, m: usize, n: usize, r: usize) -> Result<Vec<MatrixGF>> {
    check_prime(p)?;
    if r > m.min(n) {
        return Ok(Vec::new());
    }
    let p8 = p as u8;
    let hs = grassmannian(p, n, r)?;
    let mut gs = Vec::new();
    let mut digits = vec![0u8; r * m];
    loop {
        let g = MatrixGF::from_raw(p8, r, m, digits.clone());
        if g.rank() == r {
            gs.push(g.transpose());
        }
        if !odometer(&mut digits, p8) {
            break;
        }
    }
    let mut out = Vec::with_capacity(hs.len() * gs.len());
    for h in &hs {
        for gt in &gs {
            out.push(gt.matmul(h.basis())?);
        }
    }
    out.sort();
    Ok(out)
}

/// Advances a base-`p` counter (last digit fastest); false after wrapping.
pub(crate) fn odometer(digits: &mut [u8], p: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
