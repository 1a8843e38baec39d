//! Exact counting: Gaussian binomials, matrix and subspace counts, the MRD
//! rank distribution, and a memoized enumeration oracle for the size of the
//! intersection of two rank-metric spheres.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::linalg::{rank_gf2_packed, rank_in_place};
use crate::{Error, Result};

/// `base^exp` as a big integer.
pub fn pow_big(base: u64, exp: usize) -> BigUint {
    Pow::pow(BigUint::from(base), exp)
}

/// Number of `r`-dimensional subspaces of GF(q)^n; zero when `r > n`.
pub fn gaussian_binomial(n: usize, r: usize, q: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    // product of (q^{n-i} - 1) / (q^{i+1} - 1), kept exact by dividing at the end
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= pow_big(q, n - i) - 1u32;
        den *= pow_big(q, i + 1) - 1u32;
    }
    num / den
}

/// `prod_{i<r} (q^m - q^i)`: ordered linearly independent `r`-tuples in GF(q)^m.
pub fn alpha(m: usize, r: usize, q: u64) -> BigUint {
    if r > m {
        return BigUint::zero();
    }
    let qm = pow_big(q, m);
    (0..r).fold(BigUint::one(), |acc, i| acc * (&qm - pow_big(q, i)))
}

/// Number of `m x n` matrices of rank `r` over GF(q).
pub fn n_rank(q: u64, m: usize, n: usize, r: usize) -> BigUint {
    if r > m.min(n) {
        return BigUint::zero();
    }
    gaussian_binomial(n, r, q) * alpha(m, r, q)
}

/// `K_q = prod_{j>=1} (1 - q^-j)`, truncated once the tail is below `tol`.
pub fn k_q(q: u64, tol: f64) -> f64 {
    let qf = q as f64;
    let mut prod = 1.0;
    let mut term = 1.0;
    loop {
        term /= qf;
        prod *= 1.0 - term;
        // remaining factors change the product by at most 2 * term / q
        if 2.0 * term / qf < tol * prod || term == 0.0 {
            return prod;
        }
    }
}

/// Exact rational enclosure `(lo, hi)` of `K_q` from the first `terms` factors.
///
/// `hi` is the truncated product; `lo` multiplies it by `1 - q^-terms/(q-1)`,
/// which under-estimates the tail.
pub fn k_q_enclosure(q: u64, terms: usize) -> (BigRational, BigRational) {
    let qb = BigInt::from(q);
    let mut hi = BigRational::one();
    for j in 1..=terms {
        let qj = Pow::pow(&qb, j);
        hi *= BigRational::new(&qj - 1, qj);
    }
    let tail = BigRational::new(BigInt::one(), Pow::pow(&qb, terms) * (&qb - 1));
    let lo = &hi * (BigRational::one() - tail);
    (lo, hi)
}

/// Number of subspaces of E_r(q,n) at injection distance `d` from a fixed one:
/// `q^{d^2} [r d] [n-r d]`.
pub fn n_cdc_ball_shell(q: u64, n: usize, r: usize, d: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    pow_big(q, d * d) * gaussian_binomial(r, d, q) * gaussian_binomial(n - r, d, q)
}

/// Number of rank-`r` codewords in an `(n, n-d+1, d)` MRD code over GF(q^m).
pub fn mrd_rank_distribution(q: u64, m: usize, n: usize, d: usize, r: usize) -> Result<BigUint> {
    if !(1 <= d && d <= r && r <= n && n <= m) {
        return Err(Error::usage(format!(
            "MRD distribution needs 1 <= d <= r <= n <= m, got d={d} r={r} n={n} m={m}"
        )));
    }
    let mut sum = BigInt::zero();
    for j in d..=r {
        let e = r - j;
        let term = BigInt::from(gaussian_binomial(r, j, q))
            * BigInt::from(pow_big(q, e * e.saturating_sub(1) / 2))
            * BigInt::from(pow_big(q, m * (j - d + 1)) - 1u32);
        if e.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let sum = sum
        .to_biguint()
        .ok_or_else(|| Error::usage("negative MRD distribution term sum"))?;
    Ok(gaussian_binomial(n, r, q) * sum)
}

/// The row-count threshold `(n-r)(r-d+1) + r + 1`.
pub fn m_zero(n: usize, r: usize, d: usize) -> usize {
    (n - r) * (r + 1 - d) + r + 1
}

/// Key of the sphere-intersection count: matrices of rank `s` at rank
/// distance `r` from a fixed `m x n` matrix of rank `d`, over GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JrKey {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub d: usize,
}

impl JrKey {
    pub fn new(q: u64, m: usize, n: usize, r: usize, s: usize, d: usize) -> Self {
        JrKey { q, m, n, r, s, d }
    }
}

/// Default enumeration cap for the oracle, in matrices.
pub const JR_DEFAULT_CAP: u64 = 1 << 24;

/// Memo of sphere-intersection counts, filled one `(q, m, n)` table at a
/// time by enumerating every matrix once.
#[derive(Debug, Clone)]
pub struct JrMemo {
    entries: BTreeMap<JrKey, BigUint>,
    cap: u64,
    dirty: bool,
}

impl Default for JrMemo {
    fn default() -> Self {
        Self::new(JR_DEFAULT_CAP)
    }
}

impl JrMemo {
    pub fn new(cap: u64) -> Self {
        JrMemo {
            entries: BTreeMap::new(),
            cap,
            dirty: false,
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// True when entries were computed since the last `mark_clean`.
    pub fn is_dirty(&self) -> bool {
        self.dirty
    }

    pub fn mark_clean(&mut self) {
        self.dirty = false;
    }

    /// Seeds a known value, e.g. from a persisted cache.
    pub fn insert(&mut self, key: JrKey, value: BigUint) {
        self.entries.insert(key, value);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&JrKey, &BigUint)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&mut self, key: JrKey) -> Result<BigUint> {
        let JrKey { q, m, n, r, s, d } = key;
        let k = m.min(n);
        if r > k || s > k || d > k {
            return Ok(BigUint::zero());
        }
        if r == 0 {
            return Ok(if s == d { BigUint::one() } else { BigUint::zero() });
        }
        if d == 0 {
            return Ok(if s == r { n_rank(q, m, n, r) } else { BigUint::zero() });
        }
        // transposition maps the table for (m, n) onto the one for (n, m)
        let norm = JrKey::new(q, m.max(n), m.min(n), r, s, d);
        if let Some(v) = self.entries.get(&norm) {
            return Ok(v.clone());
        }
        self.fill(q, m.max(n), m.min(n))?;
        Ok(self.entries.get(&norm).cloned().unwrap_or_default())
    }

    fn fill(&mut self, q: u64, m: usize, n: usize) -> Result<()> {
        let total = pow_big(q, m * n);
        if total > BigUint::from(self.cap) {
            return Err(Error::capacity(
                format!("sphere-intersection enumeration over GF({q})^({m}x{n})"),
                total,
                self.cap,
            ));
        }
        if q > 255 || !crate::gf::is_prime(q as u32) {
            return Err(Error::usage(format!("q={q} must be a prime below 256")));
        }
        let k = n; // n <= m here
        // counts[d][r][s]
        let mut counts = vec![vec![vec![0u64; k + 1]; k + 1]; k + 1];
        if q == 2 {
            count_gf2(m, n, &mut counts);
        } else {
            count_generic(q as u8, m, n, &mut counts);
        }
        for (d, by_r) in counts.iter().enumerate().skip(1) {
            for (r, by_s) in by_r.iter().enumerate().skip(1) {
                for (s, &c) in by_s.iter().enumerate() {
                    self.entries.insert(JrKey::new(q, m, n, r, s, d), BigUint::from(c));
                }
            }
        }
        self.dirty = true;
        Ok(())
    }
}

fn count_gf2(m: usize, n: usize, counts: &mut [Vec<Vec<u64>>]) {
    let k = n;
    let mask = (1u64 << n) - 1;
    let mut rows = vec![0u64; m];
    let mut diff = vec![0u64; m];
    for x in 0u64..(1u64 << (m * n)) {
        for (i, row) in rows.iter_mut().enumerate() {
            *row = (x >> (i * n)) & mask;
        }
        let s = rank_gf2_packed(&rows);
        for d in 1..=k {
            diff.copy_from_slice(&rows);
            for (i, row) in diff.iter_mut().enumerate().take(d) {
                *row ^= 1 << i;
            }
            let r = rank_gf2_packed(&diff);
            counts[d][r][s] += 1;
        }
    }
}

fn count_generic(p: u8, m: usize, n: usize, counts: &mut [Vec<Vec<u64>>]) {
    let k = n;
    let mut x = vec![0u8; m * n];
    let mut buf = vec![0u8; m * n];
    loop {
        buf.copy_from_slice(&x);
        let s = rank_in_place(p, m, n, &mut buf);
        for d in 1..=k {
            buf.copy_from_slice(&x);
            for i in 0..d {
                let e = &mut buf[i * n + i];
                *e = if *e == 0 { p - 1 } else { *e - 1 };
            }
            let r = rank_in_place(p, m, n, &mut buf);
            counts[d][r][s] += 1;
        }
        if !crate::linalg::odometer(&mut x, p) {
            break;
        }
    }
}

/// Sign-aware conversion used by callers combining exact counts.
pub(crate) fn to_bigint(x: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{injection_distance, grassmannian, rank_distance, MatrixGF};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(7, 0, 2), big(1));
        assert_eq!(gaussian_binomial(4, 2, 2), big(35));
        assert_eq!(gaussian_binomial(3, 1, 2), big(7));
        assert_eq!(gaussian_binomial(2, 3, 2), big(0));
        assert_eq!(gaussian_binomial(4, 2, 3), big(130));
    }

    #[test]
    fn gaussian_binomial_pascal() {
        for q in [2, 3, 5] {
            for n in 1..=8 {
                for r in 1..=n {
                    let lhs = gaussian_binomial(n, r, q);
                    let rhs = gaussian_binomial(n - 1, r - 1, q) + pow_big(q, r) * gaussian_binomial(n - 1, r, q);
                    assert_eq!(lhs, rhs, "q={q} n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(5, 0, 2), big(1));
        assert_eq!(alpha(4, 2, 2), big(210));
        assert_eq!(alpha(3, 3, 2), big(168));
        // ordered independent pairs in GF(2)^4, counted directly
        let mut pairs = 0;
        for a in 1u64..16 {
            for b in 1u64..16 {
                if a != b {
                    pairs += 1;
                }
            }
        }
        assert_eq!(alpha(4, 2, 2), big(pairs));
    }

    #[test]
    fn gl3_by_enumeration() {
        let mut count = 0;
        for x in 0u32..512 {
            let data = (0..9).map(|i| ((x >> i) & 1) as u8).collect();
            if MatrixGF::new(2, 3, 3, data).unwrap().rank() == 3 {
                count += 1;
            }
        }
        assert_eq!(alpha(3, 3, 2), big(count));
    }

    #[test]
    fn n_rank_examples_and_row_sums() {
        assert_eq!(n_rank(2, 3, 3, 0), big(1));
        assert_eq!(n_rank(2, 2, 2, 1), big(9));
        assert_eq!(n_rank(2, 3, 2, 2), big(42));
        assert_eq!(n_rank(2, 3, 2, 3), big(0));
        for q in [2, 3] {
            for m in 1..=5 {
                for n in 1..=5 {
                    let total: BigUint = (0..=m.min(n)).map(|r| n_rank(q, m, n, r)).sum();
                    assert_eq!(total, pow_big(q, m * n));
                }
            }
        }
    }

    #[test]
    fn n_rank_by_enumeration() {
        let mut hist = [0u64; 3];
        for x in 0u32..64 {
            let data = (0..6).map(|i| ((x >> i) & 1) as u8).collect();
            hist[MatrixGF::new(2, 3, 2, data).unwrap().rank()] += 1;
        }
        for r in 0..3 {
            assert_eq!(n_rank(2, 3, 2, r), big(hist[r]));
        }
    }

    #[test]
    fn k_q_values() {
        let k2 = k_q(2, 1e-12);
        assert!((k2 - 0.288_788_095_086_6).abs() < 1e-10, "{k2}");
        assert!(1.0 / k2 < 4.0);
        let big_q = k_q(1_000_000, 1e-9);
        assert!(big_q > 0.999_998 && big_q < 1.0);
        for q in [2, 3, 5, 7] {
            let inv = 1.0 / k_q(q, 1e-12);
            assert!(inv > 1.0 && inv <= 1.0 / k2 + 1e-12);
        }
    }

    #[test]
    fn k_q_enclosure_brackets_float() {
        use num_traits::ToPrimitive;
        for q in [2, 3, 5] {
            let (lo, hi) = k_q_enclosure(q, 40);
            assert!(lo < hi);
            let f = k_q(q, 1e-14);
            assert!(lo.to_f64().unwrap() <= f + 1e-12 && f <= hi.to_f64().unwrap() + 1e-12);
        }
    }

    #[test]
    fn gaussian_binomial_sandwich() {
        for q in [2u64, 3, 5] {
            let (_, k_hi) = k_q_enclosure(q, 64);
            for n in 0..=8 {
                for r in 0..=n {
                    let g = gaussian_binomial(n, r, q);
                    let lower = pow_big(q, r * (n - r));
                    assert!(lower <= g);
                    // [n r] * K_q < q^{r(n-r)} follows from [n r] * hi < q^{r(n-r)}
                    let lhs = BigRational::from_integer(to_bigint(&g)) * &k_hi;
                    assert!(lhs < BigRational::from_integer(to_bigint(&lower)), "q={q} n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn cdc_shell_examples() {
        assert_eq!(n_cdc_ball_shell(2, 4, 2, 0), big(1));
        assert_eq!(n_cdc_ball_shell(2, 4, 2, 1), big(18));
        assert_eq!(n_cdc_ball_shell(2, 4, 2, 2), big(16));
        for q in [2, 3] {
            for n in 0..=7 {
                for r in 0..=n / 2 {
                    let s: BigUint = (0..=r).map(|d| n_cdc_ball_shell(q, n, r, d)).sum();
                    assert_eq!(s, gaussian_binomial(n, r, q));
                }
            }
        }
    }

    #[test]
    fn cdc_shell_by_enumeration() {
        let g = grassmannian(2, 5, 2).unwrap();
        let center = &g[7];
        let mut hist = [0u64; 3];
        for u in &g {
            hist[injection_distance(center, u).unwrap()] += 1;
        }
        for d in 0..3 {
            assert_eq!(n_cdc_ball_shell(2, 5, 2, d), big(hist[d]));
        }
    }

    #[test]
    fn mrd_distribution_closed_cases() {
        for q in [2, 3] {
            for m in 2..=5 {
                for n in 1..=m {
                    for r in 1..=n {
                        assert_eq!(
                            mrd_rank_distribution(q, m, n, r, r).unwrap(),
                            gaussian_binomial(n, r, q) * (pow_big(q, m) - 1u32)
                        );
                    }
                    for d in 1..=n {
                        let total: BigUint =
                            (d..=n).map(|r| mrd_rank_distribution(q, m, n, d, r).unwrap()).sum();
                        assert_eq!(total + 1u32, pow_big(q, m * (n - d + 1)));
                    }
                }
            }
        }
        assert_eq!(mrd_rank_distribution(2, 4, 3, 2, 2).unwrap(), big(105));
        assert!(mrd_rank_distribution(2, 3, 3, 3, 2).is_err());
        assert!(mrd_rank_distribution(2, 3, 4, 1, 2).is_err());
    }

    #[test]
    fn m_zero_examples() {
        assert_eq!(m_zero(4, 2, 2), 5);
        assert_eq!(m_zero(5, 3, 3), 6);
        assert_eq!(m_zero(6, 3, 1), 13);
    }

    #[test]
    fn jr_trivial_cases() {
        let mut memo = JrMemo::default();
        assert_eq!(memo.get(JrKey::new(2, 3, 3, 0, 2, 2)).unwrap(), big(1));
        assert_eq!(memo.get(JrKey::new(2, 3, 3, 0, 1, 2)).unwrap(), big(0));
        assert_eq!(memo.get(JrKey::new(2, 3, 3, 2, 2, 0)).unwrap(), n_rank(2, 3, 3, 2));
        assert_eq!(memo.get(JrKey::new(2, 3, 3, 2, 1, 0)).unwrap(), big(0));
        assert!(memo.is_empty());
    }

    #[test]
    fn jr_row_sums() {
        let mut memo = JrMemo::default();
        for (q, m, n) in [(2, 3, 3), (2, 2, 3), (3, 2, 2)] {
            let k = m.min(n);
            for i in 0..=k {
                for r in 0..=k {
                    let sum: BigUint = (0..=k).map(|s| memo.get(JrKey::new(q, m, n, s, r, i)).unwrap()).sum();
                    assert_eq!(sum, n_rank(q, m, n, r), "q={q} m={m} n={n} i={i} r={r}");
                }
            }
        }
    }

    #[test]
    fn jr_symmetric_and_transposable() {
        let mut memo = JrMemo::default();
        for r in 0..=2 {
            for s in 0..=2 {
                for d in 0..=2 {
                    let a = memo.get(JrKey::new(2, 3, 2, r, s, d)).unwrap();
                    assert_eq!(a, memo.get(JrKey::new(2, 3, 2, s, r, d)).unwrap());
                    assert_eq!(a, memo.get(JrKey::new(2, 2, 3, r, s, d)).unwrap());
                }
            }
        }
    }

    #[test]
    fn jr_center_invariance() {
        // recount around random centers of each rank and compare with the memo
        let mut memo = JrMemo::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (m, n) = (3, 3);
        let all: Vec<MatrixGF> = (0u32..512)
            .map(|x| MatrixGF::new(2, m, n, (0..9).map(|i| ((x >> i) & 1) as u8).collect()).unwrap())
            .collect();
        for d in 1..=3 {
            for _ in 0..2 {
                let center = loop {
                    let c = &all[rng.gen_range(0..all.len())];
                    if c.rank() == d {
                        break c;
                    }
                };
                let mut hist = [[0u64; 4]; 4];
                for x in &all {
                    hist[rank_distance(center, x).unwrap()][x.rank()] += 1;
                }
                for r in 1..=3 {
                    for s in 0..=3 {
                        assert_eq!(memo.get(JrKey::new(2, m, n, r, s, d)).unwrap(), big(hist[r][s]));
                    }
                }
            }
        }
    }

    #[test]
    fn jr_capacity_error() {
        let mut memo = JrMemo::new(1 << 10);
        let err = memo.get(JrKey::new(2, 4, 4, 1, 1, 1)).unwrap_err();
        assert!(err.is_capacity());
    }
}
