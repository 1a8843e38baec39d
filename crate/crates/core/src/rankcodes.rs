//! Generalized Gabidulin codes, explicit rank-metric codes, rank shells and
//! the coset-translate construction of constant-rank codes with `d > r`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::counting::{gaussian_binomial, pow_big};
use crate::gf::{ExtElement, FieldSpec};
use crate::linalg::{rank_gf2_packed, rank_in_place, MatrixGF, MinDistance};
use crate::{Error, Result};

/// Default cap on the number of codewords an enumeration may visit.
pub const ENUM_DEFAULT_CAP: u64 = 1 << 24;

/// Default cap on pairwise distance evaluations.
pub const PAIR_DEFAULT_CAP: u64 = 1 << 26;

/// Parameters of a generalized Gabidulin code: generator rows are the
/// Frobenius powers `g^[i]`, `i` in `0..k`, where `[i]` raises every
/// coordinate to the `q^(step*i)`-th power.
#[derive(Debug, Clone, PartialEq)]
pub struct GabidulinSpec {
    field: FieldSpec,
    n: usize,
    k: usize,
    step: usize,
    g: Vec<ExtElement>,
}

impl GabidulinSpec {
    pub fn new(field: FieldSpec, n: usize, k: usize, step: usize, g: Vec<ExtElement>) -> Result<Self> {
        let m = field.m();
        if n == 0 || n > m {
            return Err(Error::usage(format!("length n={n} must satisfy 1 <= n <= m={m}")));
        }
        if k > n {
            return Err(Error::usage(format!("dimension k={k} exceeds n={n}")));
        }
        if step == 0 || crate::gf::gcd(step, m) != 1 {
            return Err(Error::usage(format!("automorphism step {step} is not coprime to m={m}")));
        }
        if g.len() != n {
            return Err(Error::usage(format!("g has {} coordinates, expected {n}", g.len())));
        }
        if field.vec_to_matrix(&g)?.rank() != n {
            return Err(Error::usage("g must have rank n over the base field"));
        }
        Ok(GabidulinSpec { field, n, k, step, g })
    }

    /// The `(n, n-d+1, d)` code with `g = (1, x, ..., x^(n-1))` and step 1.
    pub fn standard(field: FieldSpec, n: usize, d: usize) -> Result<Self> {
        if d == 0 || d > n {
            return Err(Error::usage(format!("minimum distance d={d} must satisfy 1 <= d <= n={n}")));
        }
        let g = (0..n).map(|i| field.x_pow(i)).collect();
        Self::new(field, n, n - d + 1, 1, g)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn g(&self) -> &[ExtElement] {
        &self.g
    }

    /// Designed minimum distance `n - k + 1`.
    pub fn distance(&self) -> usize {
        self.n - self.k + 1
    }

    /// `g^[i]`.
    pub fn frobenius_row(&self, i: usize) -> Result<Vec<ExtElement>> {
        self.g
            .iter()
            .map(|e| self.field.frobenius_pow(e, i, self.step))
            .collect()
    }

    /// Linear code spanned by the rows `g^[i]`, `i` in `rows`.
    pub fn span_of_rows(&self, rows: Range<usize>) -> Result<LinearRankCode> {
        let gen = rows.map(|i| self.frobenius_row(i)).collect::<Result<Vec<_>>>()?;
        LinearRankCode::from_generator(self.field.clone(), self.n, gen)
    }
}

/// The Gabidulin code itself: rows `g^[0..k]`.
pub fn build_gabidulin(spec: &GabidulinSpec) -> Result<LinearRankCode> {
    let mut code = spec.span_of_rows(0..spec.k)?;
    code.designed_distance = Some(spec.distance());
    Ok(code)
}

/// A GF(q^m)-linear code of length `n`, viewed as `m x n` matrices over GF(q).
#[derive(Debug, Clone)]
pub struct LinearRankCode {
    field: FieldSpec,
    n: usize,
    generator: Vec<Vec<ExtElement>>,
    /// `contrib[i][u]`: flattened matrix of `u * generator[i]`, `u` by field index.
    contrib: Vec<Vec<Vec<u8>>>,
    designed_distance: Option<usize>,
}

impl LinearRankCode {
    pub fn from_generator(field: FieldSpec, n: usize, generator: Vec<Vec<ExtElement>>) -> Result<Self> {
        let q_m = field
            .order()
            .filter(|&o| o <= 1 << 16)
            .ok_or_else(|| Error::capacity("encoding tables for the extension field", pow_big(field.p() as u64, field.m()), 1u64 << 16))?;
        let mut contrib = Vec::with_capacity(generator.len());
        for row in &generator {
            if row.len() != n {
                return Err(Error::usage(format!("generator row has {} entries, expected {n}", row.len())));
            }
            let mut table = Vec::with_capacity(q_m as usize);
            for u in 0..q_m {
                let u = field.from_index(u);
                let scaled = row.iter().map(|e| field.mul(&u, e)).collect::<Result<Vec<_>>>()?;
                table.push(field.vec_to_matrix(&scaled)?.data().to_vec());
            }
            contrib.push(table);
        }
        Ok(LinearRankCode {
            field,
            n,
            generator,
            contrib,
            designed_distance: None,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.field.m()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<ExtElement>] {
        &self.generator
    }

    pub fn designed_distance(&self) -> Option<usize> {
        self.designed_distance
    }

    /// `q^(m k)`.
    pub fn size(&self) -> BigUint {
        pow_big(self.field.p() as u64, self.m() * self.dimension())
    }

    pub fn encode(&self, message: &[ExtElement]) -> Result<MatrixGF> {
        if message.len() != self.dimension() {
            return Err(Error::usage(format!(
                "message has {} symbols, code dimension is {}",
                message.len(),
                self.dimension()
            )));
        }
        let mut acc = self.field.vec_to_matrix(&vec![self.field.zero(); self.n])?;
        for (u, row) in message.iter().zip(&self.generator) {
            let scaled = row.iter().map(|e| self.field.mul(u, e)).collect::<Result<Vec<_>>>()?;
            acc = acc.add(&self.field.vec_to_matrix(&scaled)?)?;
        }
        Ok(acc)
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let size = self.size();
        if size > BigUint::from(cap) {
            return Err(Error::capacity("codeword enumeration", size, cap));
        }
        Ok(())
    }

    /// Calls `f` on every codeword as a flattened row-major `m x n` buffer,
    /// in message-lexicographic order (first message symbol most significant).
    pub fn for_each_codeword(&self, cap: u64, mut f: impl FnMut(&[u8])) -> Result<()> {
        self.check_cap(cap)?;
        let len = self.m() * self.n;
        let p = self.field.p() as u8;
        let k = self.dimension();
        let mut partial = vec![vec![0u8; len]; k + 1];
        self.walk(0, p, &mut partial, &mut f);
        Ok(())
    }

    fn walk(&self, level: usize, p: u8, partial: &mut [Vec<u8>], f: &mut impl FnMut(&[u8])) {
        if level == self.contrib.len() {
            f(&partial[level]);
            return;
        }
        for table in &self.contrib[level] {
            let (head, tail) = partial.split_at_mut(level + 1);
            let (src, dst) = (&head[level], &mut tail[0]);
            for ((d, &a), &b) in dst.iter_mut().zip(src).zip(table) {
                let s = a as u16 + b as u16;
                *d = if s >= p as u16 { s - p as u16 } else { s } as u8;
            }
            self.walk(level + 1, p, partial, f);
        }
    }

    pub fn codewords(&self, cap: u64) -> Result<Vec<MatrixGF>> {
        let (p, m, n) = (self.field.p() as u8, self.m(), self.n);
        let mut out = Vec::new();
        self.for_each_codeword(cap, |w| out.push(MatrixGF::from_raw(p, m, n, w.to_vec())))?;
        Ok(out)
    }

    /// Number of codewords of each rank `0..=min(m, n)`.
    pub fn rank_distribution(&self, cap: u64) -> Result<Vec<BigUint>> {
        let (p, m, n) = (self.field.p() as u8, self.m(), self.n);
        let mut hist = vec![0u64; m.min(n) + 1];
        let mut scratch = vec![0u8; m * n];
        self.for_each_codeword(cap, |w| hist[flat_rank(p, m, n, w, &mut scratch)] += 1)?;
        Ok(hist.into_iter().map(BigUint::from).collect())
    }

    /// Minimum nonzero codeword rank, which equals the minimum distance.
    pub fn min_rank_distance(&self, cap: u64) -> Result<MinDistance> {
        let dist = self.rank_distribution(cap)?;
        Ok(dist
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_zero())
            .map_or(MinDistance::Infinite, |(r, _)| MinDistance::Finite(r)))
    }

    /// Codewords of rank exactly `r`.
    pub fn rank_shell(&self, r: usize, cap: u64) -> Result<ConstantRankCode> {
        let (p, m, n) = (self.field.p() as u8, self.m(), self.n);
        let mut words = Vec::new();
        let mut scratch = vec![0u8; m * n];
        self.for_each_codeword(cap, |w| {
            if flat_rank(p, m, n, w, &mut scratch) == r {
                words.push(MatrixGF::from_raw(p, m, n, w.to_vec()));
            }
        })?;
        ConstantRankCode::new(p as u32, m, n, r, words)
    }

    /// The explicit code, flagged linear.
    pub fn to_rank_code(&self, cap: u64) -> Result<RankCode> {
        let mut code = RankCode::new(self.field.p(), self.m(), self.n, self.codewords(cap)?)?;
        code.linear = true;
        Ok(code)
    }
}

fn flat_rank(p: u8, m: usize, n: usize, w: &[u8], scratch: &mut [u8]) -> usize {
    if p == 2 && n <= 64 && m <= 64 {
        let mut rows = [0u64; 64];
        for (i, row) in rows.iter_mut().enumerate().take(m) {
            *row = w[i * n..(i + 1) * n]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &b)| acc | ((b as u64) << j));
        }
        return rank_gf2_packed(&rows[..m]);
    }
    scratch.copy_from_slice(w);
    rank_in_place(p, m, n, scratch)
}

/// True when the words form a subspace: a set of size `p^k` inside a span
/// of dimension `k` is that span.
fn spans_itself(p: u8, len: usize, words: &[MatrixGF]) -> bool {
    if words.is_empty() || len == 0 {
        return false;
    }
    let mut data: Vec<u8> = words.iter().flat_map(|w| w.data().iter().copied()).collect();
    let k = rank_in_place(p, words.len(), len, &mut data);
    (p as u128).checked_pow(k as u32) == Some(words.len() as u128)
}

/// An explicit set of `m x n` matrices over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCode {
    p: u32,
    m: usize,
    n: usize,
    codewords: Vec<MatrixGF>,
    linear: bool,
}

impl RankCode {
    /// Sorts and deduplicates; every word must be `m x n` over GF(p).
    pub fn new(p: u32, m: usize, n: usize, mut codewords: Vec<MatrixGF>) -> Result<Self> {
        if let Some(bad) = codewords.iter().find(|x| x.p() != p || x.shape() != (m, n)) {
            return Err(Error::usage(format!(
                "codeword of shape {}x{} over GF({}) in a {m}x{n} code over GF({p})",
                bad.rows(),
                bad.cols(),
                bad.p()
            )));
        }
        codewords.sort();
        codewords.dedup();
        let linear = spans_itself(p as u8, m * n, &codewords);
        Ok(RankCode {
            p,
            m,
            n,
            codewords,
            linear,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn codewords(&self) -> &[MatrixGF] {
        &self.codewords
    }

    /// For linear codes the minimum nonzero rank; otherwise every pair is checked.
    pub fn min_rank_distance(&self, pair_cap: u64) -> Result<MinDistance> {
        if self.linear {
            return Ok(self
                .codewords
                .iter()
                .map(MatrixGF::rank)
                .filter(|&r| r > 0)
                .min()
                .map_or(MinDistance::Infinite, MinDistance::Finite));
        }
        pairwise_min_rank_distance(&self.codewords, pair_cap)
    }

    pub fn rank_distribution(&self) -> Vec<BigUint> {
        let mut hist = vec![0u64; self.m.min(self.n) + 1];
        for x in &self.codewords {
            hist[x.rank()] += 1;
        }
        hist.into_iter().map(BigUint::from).collect()
    }

    pub fn rank_shell(&self, r: usize) -> Result<ConstantRankCode> {
        let words = self.codewords.iter().filter(|x| x.rank() == r).cloned().collect();
        ConstantRankCode::new(self.p, self.m, self.n, r, words)
    }
}

/// A code whose codewords all have rank exactly `rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantRankCode {
    code: RankCode,
    rank: usize,
}

impl ConstantRankCode {
    pub fn new(p: u32, m: usize, n: usize, rank: usize, codewords: Vec<MatrixGF>) -> Result<Self> {
        let code = RankCode::new(p, m, n, codewords)?;
        if let Some(bad) = code.codewords.iter().find(|x| x.rank() != rank) {
            return Err(Error::usage(format!(
                "codeword `{bad}` has rank {}, expected {rank}",
                bad.rank()
            )));
        }
        Ok(ConstantRankCode { code, rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn p(&self) -> u32 {
        self.code.p
    }

    pub fn shape(&self) -> (usize, usize) {
        self.code.shape()
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    pub fn codewords(&self) -> &[MatrixGF] {
        self.code.codewords()
    }

    pub fn as_rank_code(&self) -> &RankCode {
        &self.code
    }

    pub fn min_rank_distance(&self, pair_cap: u64) -> Result<MinDistance> {
        pairwise_min_rank_distance(self.codewords(), pair_cap)
    }
}

/// Minimum of `rank(X - Y)` over distinct pairs.
pub fn pairwise_min_rank_distance(words: &[MatrixGF], pair_cap: u64) -> Result<MinDistance> {
    let len = words.len() as u64;
    let pairs = len * len.saturating_sub(1) / 2;
    if pairs > pair_cap {
        return Err(Error::capacity("pairwise distance check", pairs, pair_cap));
    }
    let Some(first) = words.first() else {
        return Ok(MinDistance::Infinite);
    };
    let (m, n) = first.shape();
    let mut best = MinDistance::Infinite;
    if first.p() == 2 && n <= 64 && m <= 64 {
        let packed: Vec<Vec<u64>> = words.iter().map(pack_gf2).collect();
        let mut diff = vec![0u64; m];
        for i in 0..packed.len() {
            for j in i + 1..packed.len() {
                for (d, (a, b)) in diff.iter_mut().zip(packed[i].iter().zip(&packed[j])) {
                    *d = a ^ b;
                }
                best = best.min(MinDistance::Finite(rank_gf2_packed(&diff)));
            }
        }
        return Ok(best);
    }
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            best = best.min(MinDistance::Finite(words[i].sub(&words[j])?.rank()));
        }
    }
    Ok(best)
}

pub(crate) fn pack_gf2(x: &MatrixGF) -> Vec<u64> {
    (0..x.rows())
        .map(|i| {
            x.row(i)
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &b)| acc | ((b as u64) << j))
        })
        .collect()
}

/// The pair of Gabidulin codes behind the translate construction: `C`
/// spanned by `g^[0..=n-d]` and `C'` spanned by `g^[n-d+1..=n-r]`.
#[derive(Debug, Clone)]
pub struct CosetConstruction {
    n: usize,
    d: usize,
    r: usize,
    base: LinearRankCode,
    translates: LinearRankCode,
}

/// Outcome of scanning every translate `C + c'`.
#[derive(Debug, Clone)]
pub struct CosetSearch {
    /// Coefficients `(c_{n-d+1}, ..., c_{n-r})` of the chosen `c'`.
    pub best_message: Vec<ExtElement>,
    /// `c'` as a matrix.
    pub best_translate: MatrixGF,
    /// `sigma_r(c')` for every `c'`, in message-lexicographic order.
    pub sigma_profile: Vec<u64>,
    /// Rank-`r` codewords of the chosen translate.
    pub crc: ConstantRankCode,
    /// `ceil([n r] q^(m(r-d+1)))`, the size some translate is known to reach.
    pub guarantee: BigUint,
}

impl CosetSearch {
    /// `sum over c' of sigma_r(c')`.
    pub fn sigma_total(&self) -> u64 {
        self.sigma_profile.iter().sum()
    }
}

impl CosetConstruction {
    pub fn new(spec_field: FieldSpec, n: usize, d: usize, r: usize) -> Result<Self> {
        let m = spec_field.m();
        if !(1 <= r && r < d && d <= n && n <= m) {
            return Err(Error::usage(format!(
                "translate construction needs 1 <= r < d <= n <= m, got r={r} d={d} n={n} m={m}"
            )));
        }
        let spec = GabidulinSpec::standard(spec_field, n, d)?;
        let base = build_gabidulin(&spec)?;
        let translates = spec.span_of_rows(n - d + 1..n - r + 1)?;
        Ok(CosetConstruction {
            n,
            d,
            r,
            base,
            translates,
        })
    }

    pub fn base(&self) -> &LinearRankCode {
        &self.base
    }

    pub fn translates(&self) -> &LinearRankCode {
        &self.translates
    }

    /// `[n r] q^(m(r-d+1))`, rounded up.
    pub fn guarantee(&self) -> BigUint {
        let q = self.base.field.p() as u64;
        let num = gaussian_binomial(self.n, self.r, q);
        let den = pow_big(q, self.base.m() * (self.d - self.r - 1));
        Integer::div_ceil(&num, &den)
    }

    /// Runs the scan. Translates whose last coefficient is zero lie in a
    /// code of minimum distance `r + 1` and are recorded with `sigma = 0`
    /// without enumeration.
    pub fn search(&self, cap: u64) -> Result<CosetSearch> {
        let work = self.base.size() * self.translates.size();
        if work > BigUint::from(cap) {
            return Err(Error::capacity("translate scan", work, cap));
        }
        let field = &self.base.field;
        let (p, m, n, r) = (field.p() as u8, self.base.m(), self.n, self.r);
        let base_words = {
            let mut v = Vec::new();
            self.base.for_each_codeword(cap, |w| v.extend_from_slice(w))?;
            v
        };
        let len = m * n;
        let q_m = field.order().unwrap_or(0);
        let mut profile = Vec::new();
        let mut best: Option<(u64, u64, Vec<u8>)> = None;
        let mut index = 0u64;
        let mut scratch = vec![0u8; len];
        let mut sum = vec![0u8; len];
        self.translates.for_each_codeword(cap, |c| {
            let last_zero = index.is_multiple_of(q_m);
            let sigma = if last_zero {
                0
            } else {
                let mut count = 0u64;
                for w in base_words.chunks_exact(len) {
                    for ((s, &a), &b) in sum.iter_mut().zip(w).zip(c) {
                        let t = a as u16 + b as u16;
                        *s = if t >= p as u16 { t - p as u16 } else { t } as u8;
                    }
                    if flat_rank(p, m, n, &sum, &mut scratch) == r {
                        count += 1;
                    }
                }
                count
            };
            profile.push(sigma);
            if best.as_ref().is_none_or(|(_, s, _)| sigma > *s) {
                best = Some((index, sigma, c.to_vec()));
            }
            index += 1;
        })?;
        let (best_index, _, best_c) = best.ok_or_else(|| Error::usage("empty translate code"))?;
        let crc = self.translate_shell_of(&best_c)?;
        let k = self.translates.dimension();
        let mut msg = Vec::with_capacity(k);
        let mut rest = best_index;
        for _ in 0..k {
            msg.push(field.from_index(rest % q_m));
            rest /= q_m;
        }
        msg.reverse();
        Ok(CosetSearch {
            best_message: msg,
            best_translate: MatrixGF::from_raw(p, m, n, best_c),
            sigma_profile: profile,
            crc,
            guarantee: self.guarantee(),
        })
    }

    /// Rank-`r` words of `C + c'` for the translate with the given message.
    pub fn translate_shell(&self, message: &[ExtElement]) -> Result<ConstantRankCode> {
        let c = self.translates.encode(message)?;
        self.translate_shell_of(c.data())
    }

    fn translate_shell_of(&self, c: &[u8]) -> Result<ConstantRankCode> {
        let field = &self.base.field;
        let (p, m, n, r) = (field.p() as u8, self.base.m(), self.n, self.r);
        let mut words = Vec::new();
        let mut scratch = vec![0u8; m * n];
        self.base.for_each_codeword(u64::MAX, |w| {
            let sum: Vec<u8> = w
                .iter()
                .zip(c)
                .map(|(&a, &b)| ((a as u16 + b as u16) % p as u16) as u8)
                .collect();
            if flat_rank(p, m, n, &sum, &mut scratch) == r {
                words.push(MatrixGF::from_raw(p, m, n, sum));
            }
        })?;
        ConstantRankCode::new(p as u32, m, n, r, words)
    }
}

/// Scans every translate for the `(q, m, n, d, r)` construction over the
/// default field and returns the first translate with the largest rank-`r` set.
pub fn coset_crc_search(q: u32, m: usize, n: usize, d: usize, r: usize, cap: u64) -> Result<CosetSearch> {
    let field = FieldSpec::default_for(q, m)?;
    CosetConstruction::new(field, n, d, r)?.search(cap)
}

/// Rank histogram of an explicit codeword list.
pub fn rank_distribution(words: &[MatrixGF]) -> Vec<BigUint> {
    let len = words.first().map_or(1, |x| x.rows().min(x.cols()) + 1);
    let mut hist = vec![0u64; len];
    for x in words {
        hist[x.rank()] += 1;
    }
    hist.into_iter().map(BigUint::from).collect()
}

/// `n - log_{q^m} |C| + 1` when `|C|` is a power of `q^m`.
pub fn singleton_distance(q: u64, m: usize, n: usize, size: &BigUint) -> Option<usize> {
    if size.is_zero() {
        return None;
    }
    let base = pow_big(q, m);
    let mut k = 0usize;
    let mut acc = BigUint::from(1u32);
    while &acc < size {
        acc *= &base;
        k += 1;
    }
    (&acc == size && k <= n).then(|| n - k + 1)
}
