//! Exact bound calculators for `A_R(q,m,n,d,r)` (largest constant-rank
//! code) and `A_C(q,n,r,d)` (largest constant-dimension code), tightness
//! ratios, and asymptotic rate regions.
//!
//! Lower bounds on cardinalities round up, upper bounds round down.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counting::{
    alpha, gaussian_binomial, k_q_enclosure, mrd_rank_distribution, n_rank, pow_big, to_bigint, JrKey, JrMemo,
};
use crate::{Error, Result};

/// Source of exactly known optima, e.g. a search cache.
pub trait ExactValues {
    fn a_r(&mut self, q: u64, m: usize, n: usize, d: usize, r: usize) -> Option<BigUint>;
    fn a_c(&mut self, q: u64, n: usize, r: usize, d: usize) -> Option<BigUint>;
}

/// Knows nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoExact;

impl ExactValues for NoExact {
    fn a_r(&mut self, _: u64, _: usize, _: usize, _: usize, _: usize) -> Option<BigUint> {
        None
    }

    fn a_c(&mut self, _: u64, _: usize, _: usize, _: usize) -> Option<BigUint> {
        None
    }
}

/// A table of known optima. `A_R` entries are stored with `m >= n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactTable {
    a_r: BTreeMap<(u64, usize, usize, usize, usize), BigUint>,
    a_c: BTreeMap<(u64, usize, usize, usize), BigUint>,
}

impl ExactTable {
    pub fn insert_a_r(&mut self, q: u64, m: usize, n: usize, d: usize, r: usize, value: BigUint) {
        self.a_r.insert((q, m.max(n), m.min(n), d, r), value);
    }

    pub fn insert_a_c(&mut self, q: u64, n: usize, r: usize, d: usize, value: BigUint) {
        self.a_c.insert((q, n, r, d), value);
    }

    pub fn a_r_entries(&self) -> impl Iterator<Item = (&(u64, usize, usize, usize, usize), &BigUint)> {
        self.a_r.iter()
    }

    pub fn a_c_entries(&self) -> impl Iterator<Item = (&(u64, usize, usize, usize), &BigUint)> {
        self.a_c.iter()
    }
}

impl ExactValues for ExactTable {
    fn a_r(&mut self, q: u64, m: usize, n: usize, d: usize, r: usize) -> Option<BigUint> {
        self.a_r.get(&(q, m.max(n), m.min(n), d, r)).cloned()
    }

    fn a_c(&mut self, q: u64, n: usize, r: usize, d: usize) -> Option<BigUint> {
        self.a_c.get(&(q, n, r, d)).cloned()
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    Integer::div_ceil(a, b)
}

fn ceil_rational(x: &BigRational) -> BigUint {
    let c = x.ceil().to_integer();
    if c.is_negative() {
        BigUint::zero()
    } else {
        c.to_biguint().unwrap_or_default()
    }
}

fn ratio(a: &BigUint, b: &BigUint) -> BigRational {
    BigRational::new(to_bigint(a), to_bigint(b))
}

// ---------------------------------------------------------------------------
// Constant-dimension codes

/// `(lower, upper)` on `A_C(q,n,r,d)` for `r <= n/2` and `2 <= d <= r`:
/// `q^((n-r)(r-d+1))` and `[n, r-d+1] / [r, r-d+1]` (floored). `d = 1`
/// gives the exact Grassmannian size.
pub fn cdc_singleton_bounds(q: u64, n: usize, r: usize, d: usize) -> Result<(BigUint, BigUint)> {
    if d == 1 && r <= n {
        let g = gaussian_binomial(n, r, q);
        return Ok((g.clone(), g));
    }
    if !(2 * r <= n && 2 <= d && d <= r) {
        return Err(Error::usage(format!(
            "CDC bounds need r <= n/2 and 2 <= d <= r, got n={n} r={r} d={d}"
        )));
    }
    let k = r - d + 1;
    let lower = pow_big(q, (n - r) * k);
    let upper = gaussian_binomial(n, k, q) / gaussian_binomial(r, k, q);
    Ok((lower, upper))
}

/// Best available enclosure of `A_C(q,n,r,d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcValue {
    pub lower: BigUint,
    pub upper: BigUint,
    pub provenance: String,
}

impl AcValue {
    fn exact(v: BigUint, provenance: &str) -> Self {
        AcValue {
            lower: v.clone(),
            upper: v,
            provenance: provenance.into(),
        }
    }
}

/// Exact value from `exact` if known, else the closed-form enclosure where
/// it applies, else `1 <= A_C <= [n r]`.
pub fn a_c_value(q: u64, n: usize, r: usize, d: usize, exact: &mut dyn ExactValues) -> AcValue {
    let g = gaussian_binomial(n, r, q);
    if d == 0 || (d == 1 && r <= n) {
        return AcValue::exact(g, "theorem");
    }
    if r > n || g.is_zero() {
        return AcValue::exact(BigUint::zero(), "theorem");
    }
    if d > r.min(n - r) {
        return AcValue::exact(big(1), "theorem");
    }
    if let Some(v) = exact.a_c(q, n, r, d) {
        return AcValue::exact(v, "search");
    }
    match cdc_singleton_bounds(q, n, r, d) {
        Ok((lower, upper)) => AcValue {
            lower,
            upper,
            provenance: "cdc-singleton".into(),
        },
        Err(_) => AcValue {
            lower: big(1),
            upper: g,
            provenance: "trivial".into(),
        },
    }
}

// ---------------------------------------------------------------------------
// Constant-rank codes

fn check_crc(m: usize, n: usize, r: usize, d: usize) -> Result<()> {
    if !(1 <= r && r <= n && n <= m && d >= 1) {
        return Err(Error::usage(format!(
            "need 1 <= r <= n <= m and d >= 1, got m={m} n={n} r={r} d={d}"
        )));
    }
    Ok(())
}

/// Values of `A_R` that follow directly from closed-form results.
pub fn known_exact(q: u64, m: usize, n: usize, d: usize, r: usize) -> Option<(BigUint, &'static str)> {
    let (m, n) = (m.max(n), m.min(n));
    if check_crc(m, n, r, d).is_err() {
        return None;
    }
    if d == 1 {
        return Some((n_rank(q, m, n, r), "all rank-r matrices"));
    }
    if d > 2 * r || d > n {
        return Some((big(1), "distance exceeds reach"));
    }
    if d == r {
        return Some((gaussian_binomial(n, r, q) * (pow_big(q, m) - 1u32), "mrd rank shell is optimal"));
    }
    if d == r + 1 {
        return Some((gaussian_binomial(n, r, q), "translate shell is optimal"));
    }
    None
}

/// `ceil(N_R(r) / sum_{i<d} J_R(i, r, r))` and
/// `min_{1<=s<=n} floor(N_R(s) / sum_{i<=t} J_R(i, s, r))`, `t = (d-1)/2`.
pub fn crc_gilbert_hamming(
    q: u64,
    m: usize,
    n: usize,
    r: usize,
    d: usize,
    memo: &mut JrMemo,
) -> Result<(BigUint, BigUint)> {
    let (m, n) = (m.max(n), m.min(n));
    check_crc(m, n, r, d)?;
    let mut cover = BigUint::zero();
    for i in 0..d.min(n + 1) {
        cover += memo.get(JrKey::new(q, m, n, i, r, r))?;
    }
    let gilbert = ceil_div(&n_rank(q, m, n, r), &cover);
    let t = (d - 1) / 2;
    let mut hamming: Option<BigUint> = None;
    for s in 1..=n {
        let mut ball = BigUint::zero();
        for i in 0..=t.min(n) {
            ball += memo.get(JrKey::new(q, m, n, i, s, r))?;
        }
        if ball.is_zero() {
            continue;
        }
        let v = n_rank(q, m, n, s) / ball;
        hamming = Some(match hamming {
            Some(h) if h <= v => h,
            _ => v,
        });
    }
    Ok((gilbert, hamming.unwrap_or_else(|| n_rank(q, m, n, r))))
}

/// One step from length `n - 1` to `n`: `floor((q^n - 1) A / (q^(n-r) - 1))`.
pub fn crc_johnson_step(q: u64, n: usize, r: usize, a_next: &BigUint) -> Result<BigUint> {
    if r >= n {
        return Err(Error::usage(format!("step needs r < n, got r={r} n={n}")));
    }
    Ok((pow_big(q, n) - 1u32) * a_next / (pow_big(q, n - r) - 1u32))
}

/// Chains the step from the shortest length `max(r, d)`. At that length the
/// bound is `alpha(m, r-d+1)` when `d <= r`, else `min(N_R, q^m)`.
pub fn crc_johnson_chain(q: u64, m: usize, n: usize, d: usize, r: usize) -> Result<BigUint> {
    let (m, n) = (m.max(n), m.min(n));
    check_crc(m, n, r, d)?;
    if d > n {
        return Err(Error::usage("chain needs d <= n"));
    }
    let start = r.max(d);
    let mut a = if d <= r {
        alpha(m, r - d + 1, q)
    } else {
        n_rank(q, m, start, r).min(pow_big(q, m))
    };
    for len in start + 1..=n {
        a = crc_johnson_step(q, len, r, &a)?;
    }
    Ok(a)
}

/// `[n r] alpha(m, r-d+1)` for `1 <= d <= r`.
pub fn crc_singleton_combined(q: u64, m: usize, n: usize, d: usize, r: usize) -> Result<BigUint> {
    let (m, n) = (m.max(n), m.min(n));
    check_crc(m, n, r, d)?;
    if d > r {
        return Err(Error::usage("needs d <= r"));
    }
    Ok(gaussian_binomial(n, r, q) * alpha(m, r - d + 1, q))
}

/// `q^(m(n-d+1))`, the size of an MRD code with distance `d`.
pub fn rank_singleton(q: u64, m: usize, n: usize, d: usize) -> Result<BigUint> {
    let (m, n) = (m.max(n), m.min(n));
    if d == 0 || d > n {
        return Err(Error::usage(format!("needs 1 <= d <= n, got d={d} n={n}")));
    }
    Ok(pow_big(q, m * (n - d + 1)))
}

/// `ceil(N_R(r) / q^(m(d-1)))`.
pub fn crc_mrd_volume_lower(q: u64, m: usize, n: usize, d: usize, r: usize) -> Result<BigUint> {
    let (m, n) = (m.max(n), m.min(n));
    check_crc(m, n, r, d)?;
    if d > n {
        return Err(Error::usage("needs d <= n"));
    }
    Ok(ceil_div(&n_rank(q, m, n, r), &pow_big(q, m * (d - 1))))
}

/// Averaging bound over translates of MRD codes in GF(q)^(l x k): maximizes
/// `sum_i A_i J(s, r, i) / N_R(l, k, s)` over `s`, `k`, `l`, where `A_i` is the
/// MRD rank distribution. With `extended` and `r + 1 < d <= 2r`, the
/// rank-`s` points within `d - r - 1` of a codeword leave the denominator.
pub fn crc_bassalygo_lower(
    q: u64,
    m: usize,
    n: usize,
    d: usize,
    r: usize,
    extended: bool,
    memo: &mut JrMemo,
) -> Result<BigUint> {
    let (m, n) = (m.max(n), m.min(n));
    check_crc(m, n, r, d)?;
    if d > 2 * r || d > n {
        return Err(Error::usage(format!("needs d <= min(2r, n), got d={d} r={r} n={n}")));
    }
    if extended && !(r + 1 < d) {
        return Err(Error::usage("extended form needs r + 1 < d"));
    }
    let mut best = BigRational::zero();
    for k in r.max(d)..=n {
        for l in k..=m {
            let mut dist = Vec::with_capacity(k + 1);
            dist.push((0usize, big(1)));
            for i in d..=k {
                dist.push((i, mrd_rank_distribution(q, l, k, d, i)?));
            }
            for s in 0..=k {
                let mut num = BigUint::zero();
                let mut excluded = BigUint::zero();
                for (i, a_i) in &dist {
                    num += a_i * memo.get(JrKey::new(q, l, k, s, r, *i))?;
                    if extended {
                        for t in 0..d - r {
                            excluded += a_i * memo.get(JrKey::new(q, l, k, s, t, *i))?;
                        }
                    }
                }
                let total = n_rank(q, l, k, s);
                if excluded >= total {
                    continue;
                }
                let v = ratio(&num, &(total - excluded));
                if v > best {
                    best = v;
                }
            }
        }
    }
    Ok(ceil_rational(&best).max(big(1)))
}

/// Rank shells and translates of Gabidulin codes: `M(d, r)` when `d <= r`,
/// `ceil([n r] q^(n(r-d+1)))` when `r < d <= n`, else 1.
pub fn crc_gabidulin_lower(q: u64, m: usize, n: usize, d: usize, r: usize) -> Result<BigUint> {
    let (m, n) = (m.max(n), m.min(n));
    check_crc(m, n, r, d)?;
    if d <= r {
        return mrd_rank_distribution(q, m, n, d, r);
    }
    if d > n || d > 2 * r {
        return Ok(big(1));
    }
    let v = ceil_div(&gaussian_binomial(n, r, q), &pow_big(q, n * (d - r - 1)));
    Ok(v.max(big(1)))
}

/// Which kind of claim a bound makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
            BoundKind::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: BigUint,
    pub provenance: String,
}

/// Every applicable bound on `A_R(q,m,n,d,r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub d: usize,
    pub entries: Vec<BoundEntry>,
    /// Bounds that could not be evaluated, with the reason.
    pub skipped: Vec<(&'static str, String)>,
}

impl BoundReport {
    pub fn lowers(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.kind != BoundKind::Upper)
    }

    pub fn uppers(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.kind != BoundKind::Lower)
    }

    pub fn best_lower(&self) -> BigUint {
        self.lowers().map(|e| e.value.clone()).max().unwrap_or_else(|| big(1))
    }

    pub fn best_upper(&self) -> BigUint {
        self.uppers().map(|e| e.value.clone()).min().unwrap_or_default()
    }

    pub fn exact(&self) -> Option<&BigUint> {
        self.entries.iter().find(|e| e.kind == BoundKind::Exact).map(|e| &e.value)
    }

    /// Every lower bound is at most every upper bound.
    pub fn is_consistent(&self) -> bool {
        self.best_lower() <= self.best_upper()
    }

    /// Pairs `(lower, upper)` that contradict each other.
    pub fn violations(&self) -> Vec<(&BoundEntry, &BoundEntry)> {
        let mut out = Vec::new();
        for lo in self.lowers() {
            for hi in self.uppers() {
                if lo.value > hi.value {
                    out.push((lo, hi));
                }
            }
        }
        out
    }
}

/// Evaluates every bound that applies to the tuple. Bounds whose inputs
/// exceed the oracle budget are listed under `skipped`.
pub fn bound_report(
    q: u64,
    m: usize,
    n: usize,
    r: usize,
    d: usize,
    exact: &mut dyn ExactValues,
    memo: &mut JrMemo,
) -> Result<BoundReport> {
    let (m, n) = (m.max(n), m.min(n));
    check_crc(m, n, r, d)?;
    let mut rep = BoundReport {
        q,
        m,
        n,
        r,
        d,
        entries: Vec::new(),
        skipped: Vec::new(),
    };
    let push = |rep: &mut BoundReport, name, kind, value: Result<BigUint>, provenance: &str| match value {
        Ok(value) => rep.entries.push(BoundEntry {
            name,
            kind,
            value,
            provenance: provenance.into(),
        }),
        Err(e) => rep.skipped.push((name, format!("{e}"))),
    };
    use BoundKind::*;
    push(&mut rep, "trivial", Lower, Ok(big(1)), "formula");
    push(&mut rep, "trivial", Upper, Ok(n_rank(q, m, n, r)), "formula");
    if let Some((v, why)) = known_exact(q, m, n, d, r) {
        push(&mut rep, "closed-form", Exact, Ok(v), why);
    }
    if let Some(v) = exact.a_r(q, m, n, d, r) {
        push(&mut rep, "search", Exact, Ok(v), "clique search");
    }
    if d > 2 * r || d > n {
        return Ok(rep);
    }
    match crc_gilbert_hamming(q, m, n, r, d, memo) {
        Ok((g, h)) => {
            push(&mut rep, "gilbert", Lower, Ok(g), "sphere-intersection oracle");
            push(&mut rep, "hamming", Upper, Ok(h), "sphere-intersection oracle");
        }
        Err(e) => {
            rep.skipped.push(("gilbert", format!("{e}")));
            rep.skipped.push(("hamming", format!("{e}")));
        }
    }
    push(&mut rep, "johnson", Upper, crc_johnson_chain(q, m, n, d, r), "formula");
    if d <= r {
        push(&mut rep, "singleton-johnson", Upper, crc_singleton_combined(q, m, n, d, r), "formula");
    }
    push(&mut rep, "rank-singleton", Upper, rank_singleton(q, m, n, d), "formula");
    push(&mut rep, "mrd-volume", Lower, crc_mrd_volume_lower(q, m, n, d, r), "formula");
    push(
        &mut rep,
        "bassalygo-elias",
        Lower,
        crc_bassalygo_lower(q, m, n, d, r, false, memo),
        "sphere-intersection oracle",
    );
    if r + 1 < d {
        push(
            &mut rep,
            "bassalygo-elias-extended",
            Lower,
            crc_bassalygo_lower(q, m, n, d, r, true, memo),
            "sphere-intersection oracle",
        );
    }
    push(&mut rep, "gabidulin", Lower, crc_gabidulin_lower(q, m, n, d, r), "formula");
    if d > r {
        let dd = d - r;
        let up = a_c_value(q, n, r, dd, exact);
        push(&mut rep, "cdc-transfer", Upper, Ok(up.upper), &format!("A_C {}", up.provenance));
        let mut best: Option<(BigUint, String)> = None;
        for p in 0..=r - dd {
            if let Ok(t) = crate::cdc::transfer_bounds(q, m, n, r, dd, p, exact) {
                if t.in_range && best.as_ref().is_none_or(|(b, _)| t.lower > *b) {
                    best = Some((t.lower, format!("A_C {} at p={p}", t.provenance)));
                }
            }
        }
        if let Some((v, prov)) = best {
            push(&mut rep, "cdc-transfer", Lower, Ok(v), &prov);
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Tightness ratios

/// Outcome of an exact comparison against a stated scalar bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    /// The bound involves `K_q`, and the rational enclosure could not decide.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCheck {
    pub ratio: BigRational,
    /// The scalar bound, or for `K_q` bounds a rational value not above it.
    pub bound: BigRational,
    pub strict: bool,
    pub case: &'static str,
    pub verdict: Verdict,
}

fn compare(ratio: &BigRational, bound: &BigRational, strict: bool) -> Verdict {
    let ok = if strict { ratio < bound } else { ratio <= bound };
    if ok {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `C = A_R q^(m(d-1)) / N_R(r)` against `q^2/(q^2-1)` when `r + d - 1 <= m`
/// and `(q-1)/q * K_q^-1` (strict) otherwise. Needs `2 <= d <= r <= n <= m`.
pub fn tightness_ratio_c(q: u64, m: usize, n: usize, d: usize, r: usize, a_r: &BigUint) -> Result<RatioCheck> {
    let (m, n) = (m.max(n), m.min(n));
    if !(2 <= d && d <= r && r <= n) {
        return Err(Error::usage(format!("C ratio needs 2 <= d <= r <= n, got d={d} r={r} n={n}")));
    }
    let c = ratio(&(a_r * pow_big(q, m * (d - 1))), &n_rank(q, m, n, r));
    let qi = q as i64;
    if r + d - 1 <= m {
        let bound = rat(qi * qi, qi * qi - 1);
        let verdict = compare(&c, &bound, false);
        return Ok(RatioCheck {
            ratio: c,
            bound,
            strict: false,
            case: "r+d-1<=m",
            verdict,
        });
    }
    let (k_lo, k_hi) = k_q_enclosure(q, 64);
    let scale = rat(qi - 1, qi);
    // K_q^-1 lies in [1/k_hi, 1/k_lo]
    let safe = &scale / &k_hi;
    let outer = &scale / &k_lo;
    let verdict = if c < safe {
        Verdict::Holds
    } else if c >= outer {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    };
    Ok(RatioCheck {
        ratio: c,
        bound: safe,
        strict: true,
        case: "r+d-1>m",
        verdict,
    })
}

/// The scalar bound on `B = A_R / M(d, r)` for `1 <= d < r <= n <= m`, `m >= 3`.
pub fn ratio_b_bound(q: u64, m: usize, n: usize, d: usize, r: usize) -> Result<(BigRational, bool, &'static str)> {
    let (m, n) = (m.max(n), m.min(n));
    if !(1 <= d && d < r && r <= n && m >= 3) {
        return Err(Error::usage(format!(
            "B ratio needs 1 <= d < r <= n <= m and m >= 3, got d={d} r={r} n={n} m={m}"
        )));
    }
    let qi = q as i64;
    if r < m {
        return Ok((rat(qi, qi - 1), true, "r<m"));
    }
    // r = n = m
    if d == m - 1 {
        if q == 2 {
            let v = (1i64 << (m - 1)) - 1;
            return Ok((rat(v, 1), false, "r=n=m,d=m-1,q=2"));
        }
        return Ok((rat(qi - 1, qi - 2), true, "r=n=m,d=m-1"));
    }
    let (q1, q2, q3) = (qi - 1, qi * qi - 1, qi * qi * qi - 1);
    if d == m - 2 {
        return Ok((rat(q2 * q1, q2 * (qi - 2) + 1), true, "r=n=m,d=m-2"));
    }
    Ok((rat(q3 * q2 * q1, q3 * q2 * (qi - 2) + qi * qi * qi - 2), true, "r=n=m,d<m-2"))
}

pub fn tightness_ratio_b(q: u64, m: usize, n: usize, d: usize, r: usize, a_r: &BigUint) -> Result<RatioCheck> {
    let (bound, strict, case) = ratio_b_bound(q, m, n, d, r)?;
    let (m, n) = (m.max(n), m.min(n));
    let b = ratio(a_r, &mrd_rank_distribution(q, m, n, d, r)?);
    let verdict = compare(&b, &bound, strict);
    Ok(RatioCheck {
        ratio: b,
        bound,
        strict,
        case,
        verdict,
    })
}

// ---------------------------------------------------------------------------
// Asymptotic rates

/// Which formula governs a normalized point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `delta <= rho`: the rate is known exactly.
    Determined,
    /// `2 rho <= nu`.
    Narrow,
    /// `nu <= 2 rho <= 1`.
    Middle,
    /// `2 rho >= 1`.
    Wide,
    /// `delta > 2 rho`: rate zero.
    Empty,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Determined => "delta<=rho",
            Regime::Narrow => "2rho<=nu",
            Regime::Middle => "nu<=2rho<=1",
            Regime::Wide => "2rho>=1",
            Regime::Empty => "delta>2rho",
        })
    }
}

/// Normalized parameters `nu = n/m`, `rho = r/m`, `delta = d/m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticPoint {
    pub nu: BigRational,
    pub rho: BigRational,
    pub delta: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateBounds {
    pub lower: BigRational,
    pub upper: BigRational,
    pub exact: bool,
    pub regime: Regime,
}

impl AsymptoticPoint {
    pub fn new(nu: BigRational, rho: BigRational, delta: BigRational) -> Result<Self> {
        let zero = BigRational::zero();
        if nu > BigRational::one() || rho < zero || delta < zero || rho > nu || delta > nu {
            return Err(Error::usage(format!(
                "need 0 <= rho, delta <= nu <= 1, got nu={nu} rho={rho} delta={delta}"
            )));
        }
        Ok(AsymptoticPoint { nu, rho, delta })
    }

    pub fn regime(&self) -> Regime {
        let two = BigRational::from_integer(2.into());
        let two_rho = &two * &self.rho;
        if self.delta > two_rho {
            Regime::Empty
        } else if self.delta <= self.rho {
            Regime::Determined
        } else if two_rho <= self.nu {
            Regime::Narrow
        } else if two_rho <= BigRational::one() {
            Regime::Middle
        } else {
            Regime::Wide
        }
    }
}

/// Exact rational bounds on the asymptotic rate at a point.
pub fn asymptotic_rate(pt: &AsymptoticPoint) -> RateBounds {
    let regime = pt.regime();
    let (lower, upper) = rate_bounds_in(pt, regime);
    RateBounds {
        lower,
        upper,
        exact: matches!(regime, Regime::Empty | Regime::Determined),
        regime,
    }
}

/// The `(lower, upper)` formulas of `regime` evaluated at `pt`, whether or
/// not `pt` lies in that regime. Used to compare one-sided limits at
/// regime boundaries.
pub fn rate_bounds_in(pt: &AsymptoticPoint, regime: Regime) -> (BigRational, BigRational) {
    let (nu, rho, delta) = (&pt.nu, &pt.rho, &pt.delta);
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let translate = rho * (&two * nu - rho) - nu * delta;
    match regime {
        Regime::Empty => (BigRational::zero(), BigRational::zero()),
        Regime::Determined => {
            let v = rho * (&one + nu - rho) - delta;
            (v.clone(), v)
        }
        Regime::Narrow => {
            let transfer = (&one - rho) * (nu - rho) * (&two * rho - delta) / (&one + nu - &two * rho);
            (transfer.max(translate), (nu - rho) * (&two * rho - delta))
        }
        Regime::Middle => {
            let transfer = rho * (&one - rho) * (nu - delta);
            (transfer.max(translate), rho * (nu - delta))
        }
        Regime::Wide => {
            let transfer = rho / &two * (&one + nu - &two * rho - delta);
            (transfer.max(translate).max(BigRational::zero()), rho * (nu - delta))
        }
    }
}

/// The regime that governs `nu`, `rho` for `rho < delta <= 2 rho`.
pub fn open_regime(nu: &BigRational, rho: &BigRational) -> Regime {
    let two_rho = BigRational::from_integer(2.into()) * rho;
    if &two_rho <= nu {
        Regime::Narrow
    } else if two_rho <= BigRational::one() {
        Regime::Middle
    } else {
        Regime::Wide
    }
}

/// `steps + 1` evenly spaced values of `delta` from 0 to `min(nu, 2 rho)`.
pub fn asymptotic_sweep(nu: &BigRational, rho: &BigRational, steps: usize) -> Result<Vec<(AsymptoticPoint, RateBounds)>> {
    if steps == 0 {
        return Err(Error::usage("need at least one step"));
    }
    let two = BigRational::from_integer(2.into());
    let end = nu.clone().min(&two * rho);
    (0..=steps)
        .map(|i| {
            let delta = &end * rat(i as i64, steps as i64);
            let pt = AsymptoticPoint::new(nu.clone(), rho.clone(), delta)?;
            let b = asymptotic_rate(&pt);
            Ok((pt, b))
        })
        .collect()
}

/// Named `(nu, rho)` presets for the three plotted curve families.
pub fn asymptotic_preset(name: &str) -> Option<(BigRational, BigRational)> {
    match name {
        "fig1" => Some((rat(3, 4), rat(1, 5))),
        "fig2" => Some((rat(3, 4), rat(2, 5))),
        "fig3" => Some((rat(3, 4), rat(3, 5))),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdc_singleton_examples() {
        assert_eq!(cdc_singleton_bounds(2, 4, 2, 1).unwrap(), (big(35), big(35)));
        assert_eq!(cdc_singleton_bounds(2, 4, 2, 2).unwrap(), (big(4), big(5)));
        assert_eq!(cdc_singleton_bounds(2, 5, 2, 2).unwrap(), (big(8), big(10)));
        assert!(cdc_singleton_bounds(2, 5, 3, 2).is_err());
        assert!(cdc_singleton_bounds(2, 6, 2, 3).is_err());
    }

    #[test]
    fn cdc_singleton_quotient_is_not_always_integral() {
        // [5 1]/[2 1] = 31/3: the upper bound is floored
        let num = gaussian_binomial(5, 1, 2);
        let den = gaussian_binomial(2, 1, 2);
        assert!(!(&num % &den).is_zero());
        // but it is integral whenever r - d + 1 = r
        for n in 2..=8 {
            for r in 1..=n / 2 {
                let k = r;
                if k >= 1 {
                    let (a, b) = (gaussian_binomial(n, k, 2), gaussian_binomial(r, k, 2));
                    assert!((a % b).is_zero());
                }
            }
        }
    }

    #[test]
    fn a_c_value_fallbacks() {
        let mut none = NoExact;
        assert_eq!(a_c_value(2, 4, 2, 1, &mut none).lower, big(35));
        assert_eq!(a_c_value(2, 4, 2, 3, &mut none).upper, big(1));
        let v = a_c_value(2, 5, 3, 2, &mut none);
        assert_eq!((v.lower, v.upper, v.provenance.as_str()), (big(1), big(155), "trivial"));
        let mut t = ExactTable::default();
        t.insert_a_c(2, 5, 2, 2, big(9));
        assert_eq!(a_c_value(2, 5, 2, 2, &mut t).lower, big(9));
    }

    #[test]
    fn known_exact_cases() {
        assert_eq!(known_exact(2, 3, 2, 2, 2).unwrap().0, big(7));
        assert_eq!(known_exact(2, 4, 3, 3, 2).unwrap().0, big(7));
        assert_eq!(known_exact(2, 3, 3, 1, 2).unwrap().0, big(294));
        assert_eq!(known_exact(2, 3, 3, 5, 2).unwrap().0, big(1));
        assert!(known_exact(2, 4, 4, 4, 2).is_none());
    }

    #[test]
    fn gilbert_hamming_d1() {
        let mut memo = JrMemo::default();
        let (g, h) = crc_gilbert_hamming(2, 3, 3, 2, 1, &mut memo).unwrap();
        assert_eq!(g, big(294));
        assert!(h >= big(294));
    }

    #[test]
    fn johnson_values() {
        assert_eq!(crc_johnson_step(2, 3, 2, &big(1)).unwrap(), big(7));
        assert_eq!(crc_johnson_chain(2, 3, 2, 2, 2).unwrap(), big(7));
        let chain = crc_johnson_chain(2, 4, 4, 2, 2).unwrap();
        assert!(chain <= crc_singleton_combined(2, 4, 4, 2, 2).unwrap());
    }

    #[test]
    fn singleton_combined_examples() {
        assert_eq!(crc_singleton_combined(2, 3, 2, 2, 2).unwrap(), big(7));
        for d in 1..=3 {
            let a = crc_singleton_combined(2, 4, 4, d, 3).unwrap();
            let b = crc_singleton_combined(2, 4, 4, d + 1, 3).unwrap_or_default();
            assert!(b <= a);
            if d == 3 {
                assert_eq!(a, gaussian_binomial(4, 3, 2) * (pow_big(2, 4) - 1u32));
            }
        }
    }

    #[test]
    fn mrd_volume_example() {
        // 294 / 8 rounded up
        assert_eq!(n_rank(2, 3, 3, 2), big(294));
        assert_eq!(crc_mrd_volume_lower(2, 3, 3, 2, 2).unwrap(), big(37));
    }

    #[test]
    fn mrd_volume_is_sum_over_s() {
        // summing the averaging numerators and denominators over s
        let mut memo = JrMemo::default();
        let (q, m, n, d, r) = (2u64, 3usize, 3usize, 2usize, 2usize);
        let mut num = BigUint::zero();
        for s in 0..=n {
            num += memo.get(JrKey::new(q, m, n, s, r, 0)).unwrap();
            for i in d..=n {
                num += mrd_rank_distribution(q, m, n, d, i).unwrap() * memo.get(JrKey::new(q, m, n, s, r, i)).unwrap();
            }
        }
        // numerator sums to |MRD| * N_R(r); denominator sums to q^(mn)
        assert_eq!(num, pow_big(q, m * (n - d + 1)) * n_rank(q, m, n, r));
        let lhs = ratio(&num, &pow_big(q, m * n));
        assert_eq!(lhs, ratio(&n_rank(q, m, n, r), &pow_big(q, m * (d - 1))));
    }

    #[test]
    fn bassalygo_requirements() {
        let mut memo = JrMemo::default();
        assert!(crc_bassalygo_lower(2, 3, 3, 2, 2, true, &mut memo).is_err());
        assert!(crc_bassalygo_lower(2, 4, 4, 5, 2, false, &mut memo).is_err());
        let plain = crc_bassalygo_lower(2, 4, 4, 4, 2, false, &mut memo).unwrap();
        let ext = crc_bassalygo_lower(2, 4, 4, 4, 2, true, &mut memo).unwrap();
        assert!(ext >= plain);
        let v = crc_bassalygo_lower(2, 3, 3, 2, 2, false, &mut memo).unwrap();
        assert!(v >= crc_mrd_volume_lower(2, 3, 3, 2, 2).unwrap());
    }

    #[test]
    fn bassalygo_collapses_near_2r() {
        let mut memo = JrMemo::default();
        let mut prev: Option<BigUint> = None;
        for d in 1..=4 {
            let v = crc_bassalygo_lower(2, 4, 4, d, 2, false, &mut memo).unwrap();
            if let Some(p) = prev {
                assert!(v <= p);
            }
            prev = Some(v);
        }
    }

    #[test]
    fn gabidulin_lower_cases() {
        assert_eq!(crc_gabidulin_lower(2, 4, 3, 2, 2).unwrap(), big(105));
        assert_eq!(crc_gabidulin_lower(2, 4, 3, 3, 2).unwrap(), big(7));
        // [4 2] q^(4 * -1) = 35/16 -> 3
        assert_eq!(crc_gabidulin_lower(2, 4, 4, 4, 2).unwrap(), big(3));
        assert_eq!(crc_gabidulin_lower(2, 4, 4, 5, 2).unwrap(), big(1));
    }

    #[test]
    fn report_consistent_without_search() {
        let mut memo = JrMemo::default();
        for m in 1..=4 {
            for n in 1..=m {
                for r in 1..=n {
                    for d in 1..=2 * r + 1 {
                        let rep = bound_report(2, m, n, r, d, &mut NoExact, &mut memo).unwrap();
                        assert!(rep.violations().is_empty(), "{m} {n} {r} {d}: {:?}", rep.violations());
                        assert!(rep.skipped.is_empty(), "{:?}", rep.skipped);
                    }
                }
            }
        }
    }

    #[test]
    fn report_far_distance_is_one() {
        let rep = bound_report(2, 4, 3, 1, 3, &mut NoExact, &mut JrMemo::default()).unwrap();
        assert_eq!(rep.exact(), Some(&big(1)));
        assert_eq!(rep.best_lower(), big(1));
        assert_eq!(rep.best_upper(), big(1));
    }

    #[test]
    fn ratio_c_small() {
        let a = known_exact(2, 4, 3, 2, 2).unwrap().0;
        let chk = tightness_ratio_c(2, 4, 3, 2, 2, &a).unwrap();
        assert_eq!(chk.verdict, Verdict::Holds);
        assert_eq!(chk.bound, rat(4, 3));
        let chk = tightness_ratio_c(5, 3, 3, 2, 3, &big(1)).unwrap();
        assert_eq!(chk.case, "r+d-1>m");
        assert_eq!(chk.verdict, Verdict::Holds);
    }

    #[test]
    fn ratio_b_cases() {
        assert_eq!(ratio_b_bound(3, 4, 3, 1, 2).unwrap().0, rat(3, 2));
        assert_eq!(ratio_b_bound(2, 4, 4, 3, 4).unwrap(), (rat(7, 1), false, "r=n=m,d=m-1,q=2"));
        assert_eq!(ratio_b_bound(3, 3, 3, 2, 3).unwrap().0, rat(2, 1));
        assert_eq!(ratio_b_bound(2, 4, 4, 2, 4).unwrap().0, rat(3, 1));
        assert_eq!(ratio_b_bound(2, 5, 5, 2, 5).unwrap().0, rat(21, 6));
        assert!(ratio_b_bound(2, 4, 4, 2, 2).is_err());
        // at d = 1 every rank-r matrix is in the shell, so B = 1
        let chk = tightness_ratio_b(2, 4, 3, 1, 2, &n_rank(2, 4, 3, 2)).unwrap();
        assert_eq!(chk.ratio, rat(1, 1));
        assert_eq!(chk.verdict, Verdict::Holds);
    }

    #[test]
    fn asymptotic_examples() {
        let pt = AsymptoticPoint::new(rat(3, 4), rat(1, 5), rat(0, 1)).unwrap();
        let b = asymptotic_rate(&pt);
        assert!(b.exact);
        assert_eq!(b.lower, rat(31, 100));
        let pt = AsymptoticPoint::new(rat(3, 4), rat(3, 5), rat(3, 4)).unwrap();
        let b = asymptotic_rate(&pt);
        assert_eq!(b.regime, Regime::Wide);
        assert_eq!(b.upper, rat(0, 1));
        let pt = AsymptoticPoint::new(rat(3, 4), rat(1, 5), rat(1, 2)).unwrap();
        assert_eq!(asymptotic_rate(&pt), RateBounds {
            lower: rat(0, 1),
            upper: rat(0, 1),
            exact: true,
            regime: Regime::Empty
        });
        assert!(AsymptoticPoint::new(rat(3, 4), rat(4, 5), rat(0, 1)).is_err());
    }

    #[test]
    fn asymptotic_continuity_at_delta_rho() {
        for (nu, rho) in [(rat(3, 4), rat(1, 5)), (rat(3, 4), rat(2, 5)), (rat(3, 4), rat(3, 5)), (rat(1, 1), rat(1, 2))] {
            let at = AsymptoticPoint::new(nu.clone(), rho.clone(), rho.clone()).unwrap();
            let exact = asymptotic_rate(&at);
            assert!(exact.exact);
            let (lo, hi) = rate_bounds_in(&at, open_regime(&nu, &rho));
            assert_eq!(lo, exact.lower);
            assert_eq!(hi, exact.upper);
        }
    }

    #[test]
    fn asymptotic_grid_is_ordered() {
        for i in 0..=60 {
            for j in 0..=60 {
                for k in 0..=60 {
                    let (nu, rho, delta) = (rat(i, 60), rat(j, 60), rat(k, 60));
                    if let Ok(pt) = AsymptoticPoint::new(nu, rho, delta) {
                        let b = asymptotic_rate(&pt);
                        assert!(b.lower <= b.upper, "{pt:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn presets() {
        assert_eq!(asymptotic_preset("fig2"), Some((rat(3, 4), rat(2, 5))));
        assert!(asymptotic_preset("fig4").is_none());
        let sweep = asymptotic_sweep(&rat(3, 4), &rat(1, 5), 10).unwrap();
        assert_eq!(sweep.len(), 11);
        assert_eq!(sweep.last().unwrap().0.delta, rat(2, 5));
    }
}
