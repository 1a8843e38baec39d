//! Constant-dimension codes and the conversions between them and
//! constant-rank codes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::bounds::{a_c_value, AcValue, ExactValues};
use crate::counting::m_zero;
use crate::linalg::{injection_distance, rank_gf2_packed, MatrixGF, MinDistance, Subspace};
use crate::rankcodes::{pack_gf2, ConstantRankCode};
use crate::{Error, Result};

/// A set of `r`-dimensional subspaces of GF(p)^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantDimensionCode {
    p: u32,
    n: usize,
    r: usize,
    subspaces: Vec<Subspace>,
}

impl ConstantDimensionCode {
    /// Sorts and deduplicates; every member must be `r`-dimensional in GF(p)^n.
    pub fn new(p: u32, n: usize, r: usize, mut subspaces: Vec<Subspace>) -> Result<Self> {
        if let Some(bad) = subspaces
            .iter()
            .find(|u| u.p() != p || u.ambient() != n || u.dim() != r)
        {
            return Err(Error::usage(format!(
                "subspace `{bad}` (dim {} in GF({})^{}) is not in E_{r}(GF({p})^{n})",
                bad.dim(),
                bad.p(),
                bad.ambient()
            )));
        }
        subspaces.sort();
        subspaces.dedup();
        Ok(ConstantDimensionCode { p, n, r, subspaces })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    /// Exact pairwise minimum of the injection distance.
    pub fn min_injection_distance(&self, pair_cap: u64) -> Result<MinDistance> {
        pairwise_min_injection_distance(&self.subspaces, pair_cap)
    }
}

/// Minimum of `d_I(U, V)` over distinct pairs of equal-dimension subspaces.
pub fn pairwise_min_injection_distance(subspaces: &[Subspace], pair_cap: u64) -> Result<MinDistance> {
    let len = subspaces.len() as u64;
    let pairs = len * len.saturating_sub(1) / 2;
    if pairs > pair_cap {
        return Err(Error::capacity("pairwise distance check", pairs, pair_cap));
    }
    let Some(first) = subspaces.first() else {
        return Ok(MinDistance::Infinite);
    };
    let mut best = MinDistance::Infinite;
    if first.p() == 2 && first.ambient() <= 64 {
        let packed: Vec<Vec<u64>> = subspaces.iter().map(|u| pack_gf2(u.basis())).collect();
        let mut both = Vec::new();
        for i in 0..packed.len() {
            for j in i + 1..packed.len() {
                both.clear();
                both.extend_from_slice(&packed[i]);
                both.extend_from_slice(&packed[j]);
                let sum = rank_gf2_packed(&both);
                let d = sum - packed[i].len().min(packed[j].len());
                best = best.min(MinDistance::Finite(d));
            }
        }
        return Ok(best);
    }
    for i in 0..subspaces.len() {
        for j in i + 1..subspaces.len() {
            best = best.min(MinDistance::Finite(injection_distance(&subspaces[i], &subspaces[j])?));
        }
    }
    Ok(best)
}

/// Which subspace of a codeword to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Row spaces, in E_r(q, n).
    Rows,
    /// Column spaces, in E_r(q, m).
    Cols,
}

/// Result of mapping a constant-rank code to its row or column spaces.
#[derive(Debug, Clone)]
pub struct CdcImage {
    pub cdc: ConstantDimensionCode,
    /// True when distinct codewords gave distinct subspaces.
    pub injective: bool,
}

pub fn crc_to_cdc(crc: &ConstantRankCode, side: Side) -> Result<CdcImage> {
    let (m, n) = crc.shape();
    let (spaces, ambient): (Vec<Subspace>, usize) = match side {
        Side::Rows => (crc.codewords().iter().map(MatrixGF::row_space).collect(), n),
        Side::Cols => (crc.codewords().iter().map(MatrixGF::col_space).collect(), m),
    };
    let cdc = ConstantDimensionCode::new(crc.p(), ambient, crc.rank(), spaces)?;
    let injective = cdc.len() == crc.len();
    Ok(CdcImage { cdc, injective })
}

/// Injection distances of both images of a constant-rank code, and whether
/// `dI(C) + dI(R) <= dR <= min(dI(C), dI(R)) + r` holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageDistances {
    pub rank_distance: MinDistance,
    pub row_distance: MinDistance,
    pub col_distance: MinDistance,
    pub sandwich_holds: bool,
}

/// Measures both images of `crc`. The sandwich is evaluated only for codes
/// with at least two words.
pub fn image_distances(crc: &ConstantRankCode, pair_cap: u64) -> Result<ImageDistances> {
    let rank_distance = crc.min_rank_distance(pair_cap)?;
    let rows = crc_to_cdc(crc, Side::Rows)?;
    let cols = crc_to_cdc(crc, Side::Cols)?;
    // a collapsed image has a repeated subspace, i.e. distance zero
    let dist = |img: &CdcImage| -> Result<MinDistance> {
        if !img.injective {
            return Ok(MinDistance::Finite(0));
        }
        img.cdc.min_injection_distance(pair_cap)
    };
    let row_distance = dist(&rows)?;
    let col_distance = dist(&cols)?;
    let sandwich_holds = match (rank_distance, row_distance, col_distance) {
        (MinDistance::Finite(dr), MinDistance::Finite(a), MinDistance::Finite(b)) => {
            a + b <= dr && dr <= a.min(b) + crc.rank()
        }
        _ => true,
    };
    Ok(ImageDistances {
        rank_distance,
        row_distance,
        col_distance,
        sandwich_holds,
    })
}

/// Pairs `cols[i]` (in E_r(q,m)) with `rows[perm[i]]` (in E_r(q,n)) into the
/// codewords `G_i^T H_i`. Without `perm`, both codes pair in sorted order.
pub fn cdc_pair_to_crc(
    cols: &ConstantDimensionCode,
    rows: &ConstantDimensionCode,
    perm: Option<&[usize]>,
) -> Result<ConstantRankCode> {
    if cols.len() != rows.len() {
        return Err(Error::usage(format!(
            "codes have {} and {} subspaces; sizes must match",
            cols.len(),
            rows.len()
        )));
    }
    if cols.dim() != rows.dim() || cols.p() != rows.p() {
        return Err(Error::usage("codes must share the field and the subspace dimension"));
    }
    let identity: Vec<usize> = (0..rows.len()).collect();
    let perm = perm.unwrap_or(&identity);
    let mut seen = alloc::vec![false; rows.len()];
    if perm.len() != rows.len() || perm.iter().any(|&j| j >= rows.len() || core::mem::replace(&mut seen[j], true)) {
        return Err(Error::usage("pairing is not a permutation"));
    }
    let words = cols
        .subspaces()
        .iter()
        .zip(perm)
        .map(|(g, &j)| g.basis().transpose().matmul(rows.subspaces()[j].basis()))
        .collect::<Result<Vec<_>>>()?;
    ConstantRankCode::new(cols.p(), cols.ambient(), rows.ambient(), cols.dim(), words)
}

/// Bounds `min(A_C(q,n,r,d+p), A_C(q,m,r,r-p)) <= A_R(q,m,n,d+r,r) <= A_C(q,n,r,d)`
/// evaluated with the best available values of `A_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferBounds {
    pub lower: BigUint,
    pub upper: BigUint,
    /// `max(0, 2r - m) ..= min(r - d, n - r - d)`, empty when `lo > hi`.
    pub nontrivial_p: (i64, i64),
    /// False when `p` lies outside the nontrivial range; `lower` is then 1.
    pub in_range: bool,
    pub provenance: String,
}

pub fn transfer_bounds(
    q: u64,
    m: usize,
    n: usize,
    r: usize,
    d: usize,
    p: usize,
    exact: &mut dyn ExactValues,
) -> Result<TransferBounds> {
    if !(1 <= d && d <= r && r <= n && n <= m && p <= r) {
        return Err(Error::usage(format!(
            "need 1 <= d <= r <= n <= m and p <= r, got d={d} r={r} n={n} m={m} p={p}"
        )));
    }
    let lo = (2 * r as i64 - m as i64).max(0);
    let hi = (r as i64 - d as i64).min(n as i64 - r as i64 - d as i64);
    let in_range = lo <= p as i64 && p as i64 <= hi;
    let upper_ac: AcValue = a_c_value(q, n, r, d, exact);
    let (lower, provenance) = if in_range {
        let a = a_c_value(q, n, r, d + p, exact);
        let b = a_c_value(q, m, r, r - p, exact);
        (
            a.lower.clone().min(b.lower.clone()),
            format!("lower: {} / {}; upper: {}", a.provenance, b.provenance, upper_ac.provenance),
        )
    } else {
        (BigUint::from(1u32), format!("lower: trivial; upper: {}", upper_ac.provenance))
    };
    Ok(TransferBounds {
        lower,
        upper: upper_ac.upper,
        nontrivial_p: (lo, hi),
        in_range,
        provenance,
    })
}

/// Whether an optimal CRC with distance `d + r` yields an optimal CDC.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalityTransfer {
    pub m_zero: usize,
    /// `d = r` or `m >= m_zero`.
    pub hypothesis: bool,
    /// `|crc|` equals the exact `A_R(q,m,n,d+r,r)`; `None` when unknown.
    pub crc_optimal: Option<bool>,
    /// Row-space code of the CRC.
    pub cdc: ConstantDimensionCode,
    pub cdc_distance: MinDistance,
    /// The row-space code is certified optimal with distance `d`.
    pub cdc_certified: bool,
    /// Exact `A_C(q,n,r,d)` agrees with `|cdc|`; `None` when unknown.
    pub matches_exact_a_c: Option<bool>,
    pub note: String,
}

/// Checks the optimality transfer for a CRC of constant rank `r`, intended
/// distance `d + r`, in GF(q)^(m x n). Requires `2r <= n <= m`, `1 <= d <= r`.
#[allow(clippy::too_many_arguments)]
pub fn optimality_transfer(
    q: u64,
    m: usize,
    n: usize,
    r: usize,
    d: usize,
    crc: &ConstantRankCode,
    exact: &mut dyn ExactValues,
    pair_cap: u64,
) -> Result<OptimalityTransfer> {
    if !(2 * r <= n && n <= m && 1 <= d && d <= r) {
        return Err(Error::usage(format!(
            "need 2r <= n <= m and 1 <= d <= r, got r={r} n={n} m={m} d={d}"
        )));
    }
    if crc.shape() != (m, n) || crc.rank() != r {
        return Err(Error::usage("code does not match the stated parameters"));
    }
    let m0 = m_zero(n, r, d);
    let hypothesis = d == r || m >= m0;
    let a_r = exact.a_r(q, m, n, d + r, r);
    let crc_optimal = a_r.as_ref().map(|v| *v == BigUint::from(crc.len()));
    let image = crc_to_cdc(crc, Side::Rows)?;
    let cdc_distance = if image.injective {
        image.cdc.min_injection_distance(pair_cap)?
    } else {
        MinDistance::Finite(0)
    };
    let crc_distance = crc.min_rank_distance(pair_cap)?;
    let cdc_certified = hypothesis
        && crc_optimal == Some(true)
        && crc_distance.at_least(d + r)
        && image.injective
        && cdc_distance.at_least(d);
    let matches_exact_a_c = exact
        .a_c(q, n, r, d)
        .map(|v| v == BigUint::from(image.cdc.len()));
    let note = if !hypothesis {
        format!("no transfer guarantee: d < r and m = {m} < m0 = {m0}")
    } else if cdc_certified {
        String::from("row-space code is an optimal constant-dimension code")
    } else if crc_optimal.is_none() {
        String::from("optimality of the CRC is unknown")
    } else {
        String::from("CRC is not certified optimal")
    };
    Ok(OptimalityTransfer {
        m_zero: m0,
        hypothesis,
        crc_optimal,
        cdc: image.cdc,
        cdc_distance,
        cdc_certified,
        matches_exact_a_c,
        note,
    })
}
