//! Exact optima `A_R` and `A_C` at tiny parameters by maximum-clique search
//! on distance-compatibility graphs.
//!
//! The solver is a bitset branch and bound with greedy-coloring bounds over
//! a degeneracy vertex order. Both graph families are vertex-transitive
//! (`GL(m) x GL(n)` acts transitively on rank-`r` matrices, `GL(n)` on
//! `r`-subspaces), so the optional symmetry reduction may fix one vertex and
//! search its neighbourhood only.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::bounds::{ExactTable, ExactValues};
use crate::cdc::ConstantDimensionCode;
use crate::counting::{gaussian_binomial, m_zero, n_rank};
use crate::gf::FieldSpec;
use crate::linalg::{grassmannian, matrices_of_rank, rank_gf2_packed, rank_in_place, MatrixGF, Subspace};
use crate::rankcodes::{build_gabidulin, pack_gf2, ConstantRankCode, CosetConstruction, GabidulinSpec, ENUM_DEFAULT_CAP};
use crate::{Error, Result};

pub const VERTEX_DEFAULT_BUDGET: usize = 2000;
pub const NODE_DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest graph (after any symmetry reduction) that will be built.
    pub vertex_budget: usize,
    /// Largest number of branch-and-bound nodes.
    pub node_budget: u64,
    /// Fix the first vertex and search its neighbourhood.
    pub symmetry: bool,
    /// Seed the incumbent with an algebraic construction when one applies.
    pub seed_constructions: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            vertex_budget: VERTEX_DEFAULT_BUDGET,
            node_budget: NODE_DEFAULT_BUDGET,
            symmetry: false,
            seed_constructions: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    /// Rank distance on constant-rank matrices.
    Rank,
    /// Injection distance on constant-dimension subspaces.
    Injection,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Rank => "R",
            Metric::Injection => "C",
        })
    }
}

// ---------------------------------------------------------------------------
// Bitsets and the clique solver

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
}

/// Undirected simple graph on `0..len` with a distance-compatibility meaning.
#[derive(Clone)]
pub struct CompatGraph {
    adj: Vec<Bits>,
}

impl fmt::Debug for CompatGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompatGraph")
            .field("vertices", &self.len())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl CompatGraph {
    /// Builds the graph joining `i < j` whenever `adjacent(i, j)`.
    pub fn from_fn(len: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = vec![Bits::new(len); len];
        for i in 0..len {
            for j in i + 1..len {
                if adjacent(i, j) {
                    adj[i].set(j);
                    adj[j].set(i);
                }
            }
        }
        CompatGraph { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].get(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bits::count).sum::<usize>() / 2
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &i)| set[k + 1..].iter().all(|&j| i != j && self.has_edge(i, j)))
    }

    /// Subgraph induced on `keep` (renumbered in the given order).
    pub fn induced(&self, keep: &[usize]) -> CompatGraph {
        CompatGraph::from_fn(keep.len(), |a, b| self.has_edge(keep[a], keep[b]))
    }

    /// Vertices sorted so that each has the fewest neighbours among those
    /// still unplaced, reversed: dense cores come first.
    fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut deg: Vec<usize> = (0..n).map(|i| self.degree(i)).collect();
        let mut alive = Bits::new(n);
        for i in 0..n {
            alive.set(i);
        }
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&i| alive.get(i))
                .min_by_key(|&i| (deg[i], i))
                .expect("vertex left");
            alive.clear(v);
            order.push(v);
            for u in 0..n {
                if alive.get(u) && self.has_edge(v, u) {
                    deg[u] -= 1;
                }
            }
        }
        order.reverse();
        order
    }
}

/// Result of a maximum-clique search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Sorted vertex indices of a maximum clique.
    pub clique: Vec<usize>,
    pub nodes: u64,
    /// The incumbent already met the root bound, so no branching was needed.
    pub closed_at_root: bool,
}

struct Solver<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    best_len: usize,
    current: Vec<usize>,
    nodes: u64,
    node_budget: u64,
}

impl Solver<'_> {
    fn color_sort(&self, p: &Bits, kmin: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut uncolored = p.clone();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.clear(v);
                q.and_not_assign(&self.adj[v]);
                uncolored.clear(v);
                if k >= kmin {
                    out.push((v, k));
                }
            }
        }
        out
    }

    fn expand(&mut self, mut p: Bits) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(Error::capacity("branch-and-bound nodes", self.nodes, self.node_budget));
        }
        let kmin = (self.best_len + 1).saturating_sub(self.current.len()).max(1);
        let colored = self.color_sort(&p, kmin);
        for &(v, k) in colored.iter().rev() {
            if self.current.len() + k <= self.best_len {
                return Ok(());
            }
            self.current.push(v);
            let next = p.and(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best_len {
                    self.best_len = self.current.len();
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.current.pop();
            p.clear(v);
        }
        Ok(())
    }
}

/// Greedy clique following `order`.
fn greedy_clique(g: &CompatGraph, order: &[usize]) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for &v in order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique
}

/// Maximum clique of `g`.
///
/// `incumbent` is a known clique used as the starting lower bound and
/// `root_bound` a proven upper bound on the clique number; when they meet
/// the search stops at once.
pub fn max_clique(
    g: &CompatGraph,
    incumbent: Option<&[usize]>,
    root_bound: Option<usize>,
    node_budget: u64,
) -> Result<CliqueResult> {
    if let Some(c) = incumbent {
        if !g.is_clique(c) {
            return Err(Error::usage("incumbent is not a clique"));
        }
    }
    if g.is_empty() {
        return Ok(CliqueResult {
            clique: Vec::new(),
            nodes: 0,
            closed_at_root: true,
        });
    }
    let order = g.degeneracy_order();
    let relabeled = g.induced(&order);
    let mut start: Vec<usize> = greedy_clique(&relabeled, &(0..g.len()).collect::<Vec<_>>())
        .into_iter()
        .map(|v| order[v])
        .collect();
    if let Some(c) = incumbent {
        if c.len() > start.len() {
            start = c.to_vec();
        }
    }
    let mut inverse = vec![0; g.len()];
    for (new, &old) in order.iter().enumerate() {
        inverse[old] = new;
    }
    let mut solver = Solver {
        adj: &relabeled.adj,
        best: start.iter().map(|&v| inverse[v]).collect(),
        best_len: start.len(),
        current: Vec::new(),
        nodes: 0,
        node_budget,
    };
    let mut all = Bits::new(g.len());
    for i in 0..g.len() {
        all.set(i);
    }
    let color_bound = solver.color_sort(&all, 1).last().map_or(0, |&(_, k)| k);
    let bound = root_bound.map_or(color_bound, |b| b.min(color_bound));
    let closed_at_root = solver.best_len >= bound;
    if !closed_at_root {
        solver.expand(all)?;
    }
    let mut clique: Vec<usize> = solver.best.iter().map(|&v| order[v]).collect();
    clique.sort_unstable();
    Ok(CliqueResult {
        clique,
        nodes: solver.nodes,
        closed_at_root,
    })
}

// ---------------------------------------------------------------------------
// Graphs of codes

fn rank_diff(p: u8, x: &MatrixGF, y: &MatrixGF, scratch: &mut Vec<u8>) -> usize {
    scratch.clear();
    scratch.extend(x.data().iter().zip(y.data()).map(|(&a, &b)| ((a as u16 + p as u16 - b as u16) % p as u16) as u8));
    rank_in_place(p, x.rows(), x.cols(), scratch)
}

fn rank_distance_fn(words: &[MatrixGF]) -> impl Fn(usize, usize) -> usize + '_ {
    let p = words.first().map_or(2, |w| w.p() as u8);
    let packed: Vec<Vec<u64>> = if p == 2 { words.iter().map(pack_gf2).collect() } else { Vec::new() };
    move |i, j| {
        if p == 2 {
            let rows: Vec<u64> = packed[i].iter().zip(&packed[j]).map(|(a, b)| a ^ b).collect();
            rank_gf2_packed(&rows)
        } else {
            rank_diff(p, &words[i], &words[j], &mut Vec::new())
        }
    }
}

fn injection_distance_fn(spaces: &[Subspace]) -> impl Fn(usize, usize) -> usize + '_ {
    let p = spaces.first().map_or(2, |s| s.p() as u8);
    let packed: Vec<Vec<u64>> = if p == 2 { spaces.iter().map(|s| pack_gf2(s.basis())).collect() } else { Vec::new() };
    move |i, j| {
        let r = spaces[i].dim();
        let sum = if p == 2 {
            let mut rows = packed[i].clone();
            rows.extend_from_slice(&packed[j]);
            rank_gf2_packed(&rows)
        } else {
            let (a, b) = (spaces[i].basis(), spaces[j].basis());
            let mut data = a.data().to_vec();
            data.extend_from_slice(b.data());
            rank_in_place(p, a.rows() + b.rows(), a.cols(), &mut data)
        };
        sum - r
    }
}

/// A universe of codewords and the graph over the part that is searched.
struct Prepared {
    /// Universe indices of the graph's vertices.
    vertices: Vec<usize>,
    graph: CompatGraph,
    /// Universe index fixed by the symmetry reduction.
    fixed: Option<usize>,
}

fn prepare(
    universe_len: usize,
    dist: &dyn Fn(usize, usize) -> usize,
    d: usize,
    opts: &SearchOptions,
    what: &str,
) -> Result<Prepared> {
    let (vertices, fixed) = if opts.symmetry && universe_len > 0 {
        ((1..universe_len).filter(|&j| dist(0, j) >= d).collect::<Vec<_>>(), Some(0))
    } else {
        ((0..universe_len).collect(), None)
    };
    if vertices.len() > opts.vertex_budget {
        return Err(Error::capacity(format!("{what} graph vertices"), vertices.len() as u64, opts.vertex_budget as u64));
    }
    let graph = CompatGraph::from_fn(vertices.len(), |a, b| dist(vertices[a], vertices[b]) >= d);
    Ok(Prepared { vertices, graph, fixed })
}

/// Runs the clique search and returns universe indices of an optimum.
///
/// `seed` is a valid code given as universe indices; `bound` a proven upper
/// bound on the whole code size.
fn solve(prep: &Prepared, seed: Option<&[usize]>, bound: Option<usize>, opts: &SearchOptions) -> Result<Vec<usize>> {
    let shift = prep.fixed.is_some() as usize;
    let local: BTreeMap<usize, usize> = prep.vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut incumbent: Option<Vec<usize>> = None;
    let mut seed_full: Option<&[usize]> = None;
    if let Some(s) = seed {
        match prep.fixed {
            Some(f) if s.contains(&f) => {
                incumbent = Some(s.iter().filter(|&&v| v != f).map(|v| local[v]).collect());
            }
            Some(_) => seed_full = Some(s),
            None => incumbent = Some(s.iter().map(|v| local[v]).collect()),
        }
    }
    // a seed that avoids the fixed vertex still certifies its size
    let floor = seed_full.map_or(0, |s| s.len().saturating_sub(shift));
    let mut inc_vec = incumbent.unwrap_or_default();
    let pad = floor > inc_vec.len();
    if pad {
        inc_vec.clear();
    }
    let root_bound = bound.map(|b| b.saturating_sub(shift));
    let result = if pad {
        // search only for strictly larger cliques than the seed implies
        let mut g = prep.graph.clone();
        let res = max_clique_above(&mut g, floor, root_bound, opts.node_budget)?;
        match res {
            Some(c) => c,
            None => return Ok(seed_full.expect("seed").to_vec()),
        }
    } else {
        max_clique(&prep.graph, Some(&inc_vec), root_bound, opts.node_budget)?.clique
    };
    let mut out: Vec<usize> = result.into_iter().map(|k| prep.vertices[k]).collect();
    if let Some(f) = prep.fixed {
        out.push(f);
    }
    out.sort_unstable();
    Ok(out)
}

/// A clique larger than `floor`, if one exists.
fn max_clique_above(g: &mut CompatGraph, floor: usize, root_bound: Option<usize>, node_budget: u64) -> Result<Option<Vec<usize>>> {
    if root_bound.is_some_and(|b| b <= floor) {
        return Ok(None);
    }
    let res = max_clique(g, None, root_bound, node_budget)?;
    if res.clique.len() > floor {
        return Ok(Some(res.clique));
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Exact A_R

/// A constructed constant-rank code usable as a starting incumbent.
fn crc_seed(q: u32, m: usize, n: usize, d: usize, r: usize) -> Option<ConstantRankCode> {
    if m < n {
        let t = crc_seed(q, n, m, d, r)?;
        let words = t.codewords().iter().map(MatrixGF::transpose).collect();
        return ConstantRankCode::new(q, m, n, r, words).ok();
    }
    let field = FieldSpec::default_for(q, m).ok()?;
    if d <= r {
        let spec = GabidulinSpec::standard(field, n, d).ok()?;
        let code = build_gabidulin(&spec).ok()?;
        return code.rank_shell(r, ENUM_DEFAULT_CAP).ok();
    }
    if d <= n && d <= 2 * r {
        let c = CosetConstruction::new(field, n, d, r).ok()?;
        return c.search(ENUM_DEFAULT_CAP).ok().map(|s| s.crc);
    }
    None
}

/// Proper colouring of the rank graph: equal keys never reach distance `d`.
/// For `d <= r` the key is the row space plus the first `r - d + 1`
/// coordinate columns; for `d > r` it is the row or column space.
fn crc_color_bound(words: &[MatrixGF], vertices: &[usize], d: usize, r: usize) -> usize {
    let mut rows_only = BTreeSet::new();
    let mut cols_only = BTreeSet::new();
    let mut refined = BTreeSet::new();
    for &v in vertices {
        let x = &words[v];
        let (g, h) = x.rank_factorization();
        if d <= r {
            let k = r - d + 1;
            let coords = g.transpose().select_cols(&(0..k).collect::<Vec<_>>());
            refined.insert((h, coords));
        } else {
            rows_only.insert(h);
            cols_only.insert(x.col_space());
        }
    }
    if d <= r {
        refined.len()
    } else {
        rows_only.len().min(cols_only.len())
    }
}

/// Exact `A_R(q,m,n,d,r)` and a code attaining it.
pub fn exact_a_r(q: u32, m: usize, n: usize, d: usize, r: usize, opts: &SearchOptions) -> Result<(BigUint, ConstantRankCode)> {
    if !(1 <= r && r <= m.min(n) && d >= 1) {
        return Err(Error::usage(format!("need 1 <= r <= min(m,n), d >= 1, got m={m} n={n} r={r} d={d}")));
    }
    let universe = n_rank(q as u64, m, n, r);
    if universe > BigUint::from(ENUM_DEFAULT_CAP) {
        return Err(Error::capacity("rank-r universe", universe, ENUM_DEFAULT_CAP));
    }
    let words = matrices_of_rank(q, m, n, r)?;
    let chosen: Vec<usize> = if d == 1 {
        (0..words.len()).collect()
    } else if d > 2 * r {
        vec![0]
    } else {
        let dist = rank_distance_fn(&words);
        let prep = prepare(words.len(), &dist, d, opts, "rank")?;
        let seed: Option<Vec<usize>> = if opts.seed_constructions {
            crc_seed(q, m, n, d, r).and_then(|c| {
                c.codewords().iter().map(|w| words.binary_search(w).ok()).collect()
            })
        } else {
            None
        };
        let mut with_fixed = prep.vertices.clone();
        with_fixed.extend(prep.fixed);
        let bound = crc_color_bound(&words, &with_fixed, d, r);
        solve(&prep, seed.as_deref(), Some(bound), opts)?
    };
    let code = ConstantRankCode::new(q, m, n, r, chosen.iter().map(|&i| words[i].clone()).collect())?;
    Ok((BigUint::from(code.len()), code))
}

/// Exact `A_C(q,n,r,d)` and a code attaining it.
pub fn exact_a_c(q: u32, n: usize, r: usize, d: usize, opts: &SearchOptions) -> Result<(BigUint, ConstantDimensionCode)> {
    if r > n || d == 0 {
        return Err(Error::usage(format!("need r <= n and d >= 1, got n={n} r={r} d={d}")));
    }
    let universe = gaussian_binomial(n, r, q as u64);
    if universe > BigUint::from(ENUM_DEFAULT_CAP) {
        return Err(Error::capacity("Grassmannian", universe, ENUM_DEFAULT_CAP));
    }
    let spaces = grassmannian(q, n, r)?;
    let chosen: Vec<usize> = if d == 1 {
        (0..spaces.len()).collect()
    } else if d > r.min(n - r) {
        vec![0]
    } else {
        let dist = injection_distance_fn(&spaces);
        let prep = prepare(spaces.len(), &dist, d, opts, "subspace")?;
        solve(&prep, None, None, opts)?
    };
    let code = ConstantDimensionCode::new(q, n, r, chosen.iter().map(|&i| spaces[i].clone()).collect())?;
    Ok((BigUint::from(code.len()), code))
}

// ---------------------------------------------------------------------------
// Memoizing oracle

/// Runs searches on demand and remembers values and capacity failures.
#[derive(Debug, Clone, Default)]
pub struct SearchOracle {
    pub opts: SearchOptions,
    pub table: ExactTable,
    failed_r: BTreeSet<(u64, usize, usize, usize, usize)>,
    failed_c: BTreeSet<(u64, usize, usize, usize)>,
}

impl SearchOracle {
    pub fn new(opts: SearchOptions) -> Self {
        SearchOracle {
            opts,
            ..Default::default()
        }
    }

    /// Tuples `(q, m, n, d, r)` whose search exceeded a budget.
    pub fn failed_a_r(&self) -> impl Iterator<Item = &(u64, usize, usize, usize, usize)> {
        self.failed_r.iter()
    }

    pub fn failed_a_c(&self) -> impl Iterator<Item = &(u64, usize, usize, usize)> {
        self.failed_c.iter()
    }
}

impl ExactValues for SearchOracle {
    fn a_r(&mut self, q: u64, m: usize, n: usize, d: usize, r: usize) -> Option<BigUint> {
        if let Some(v) = self.table.a_r(q, m, n, d, r) {
            return Some(v);
        }
        let key = (q, m, n, d, r);
        if self.failed_r.contains(&key) || q > u32::MAX as u64 {
            return None;
        }
        match exact_a_r(q as u32, m, n, d, r, &self.opts) {
            Ok((v, _)) => {
                self.table.insert_a_r(q, m, n, d, r, v.clone());
                Some(v)
            }
            Err(_) => {
                self.failed_r.insert(key);
                None
            }
        }
    }

    fn a_c(&mut self, q: u64, n: usize, r: usize, d: usize) -> Option<BigUint> {
        if let Some(v) = self.table.a_c(q, n, r, d) {
            return Some(v);
        }
        let key = (q, n, r, d);
        if self.failed_c.contains(&key) || q > u32::MAX as u64 {
            return None;
        }
        match exact_a_c(q as u32, n, r, d, &self.opts) {
            Ok((v, _)) => {
                self.table.insert_a_c(q, n, r, d, v.clone());
                Some(v)
            }
            Err(_) => {
                self.failed_c.insert(key);
                None
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Equality checks between the two families

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityCheck {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    /// Subspace distance; the rank code has distance `d + r`.
    pub d: usize,
    pub a_r: Option<BigUint>,
    pub a_c: Option<BigUint>,
    /// `A_R(q,m,n,d+r,r) <= A_C(q,n,r,d)`; `None` when a side is unknown.
    pub upper_holds: Option<bool>,
    /// Equality is predicted (`d = r` or `m >= m0`).
    pub equality_expected: bool,
    pub equality_holds: Option<bool>,
    /// `A_R(q,m,n,r+1,r) = [n r]`.
    pub translate_constant: Option<bool>,
}

impl EqualityCheck {
    /// False only on a definite contradiction.
    pub fn is_ok(&self) -> bool {
        self.upper_holds != Some(false)
            && !(self.equality_expected && self.equality_holds == Some(false))
            && self.translate_constant != Some(false)
    }
}

/// Checks, for each `(q, m, n, r, d)` with `2r <= n <= m` and `1 <= d <= r`,
/// the relations between `A_R(q,m,n,d+r,r)` and `A_C(q,n,r,d)`.
pub fn verify_equality_theorems(grid: &[(u64, usize, usize, usize, usize)], oracle: &mut SearchOracle) -> Result<Vec<EqualityCheck>> {
    let mut out = Vec::new();
    for &(q, m, n, r, d) in grid {
        if !(2 * r <= n && n <= m && 1 <= d && d <= r) {
            return Err(Error::usage(format!("tuple ({q},{m},{n},{r},{d}) needs 2r <= n <= m and 1 <= d <= r")));
        }
        let a_r = oracle.a_r(q, m, n, d + r, r);
        let a_c = oracle.a_c(q, n, r, d);
        let upper_holds = match (&a_r, &a_c) {
            (Some(x), Some(y)) => Some(x <= y),
            _ => None,
        };
        let equality_expected = d == r || m >= m_zero(n, r, d);
        let equality_holds = match (&a_r, &a_c) {
            (Some(x), Some(y)) => Some(x == y),
            _ => None,
        };
        let translate_constant = oracle.a_r(q, m, n, r + 1, r).map(|v| v == gaussian_binomial(n, r, q));
        out.push(EqualityCheck {
            q,
            m,
            n,
            r,
            d,
            a_r,
            a_c,
            upper_holds,
            equality_expected,
            equality_holds,
            translate_constant,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::MinDistance;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_clique(g: &CompatGraph) -> usize {
        let n = g.len();
        let mut best = 0;
        for mask in 0u32..1 << n {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if set.len() > best && g.is_clique(&set) {
                best = set.len();
            }
        }
        best
    }

    #[test]
    fn clique_matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..200 {
            let n = 1 + trial % 14;
            let density = [0.2, 0.5, 0.8][trial % 3];
            let edges: Vec<bool> = (0..n * n).map(|_| rand::Rng::gen_bool(&mut rng, density)).collect();
            let g = CompatGraph::from_fn(n, |i, j| edges[i * n + j]);
            let res = max_clique(&g, None, None, u64::MAX).unwrap();
            assert!(g.is_clique(&res.clique));
            assert_eq!(res.clique.len(), brute_clique(&g), "trial {trial}");
        }
    }

    #[test]
    fn clique_value_is_order_independent() {
        let words = matrices_of_rank(2, 3, 2, 2).unwrap();
        let dist = rank_distance_fn(&words);
        let g = CompatGraph::from_fn(words.len(), |i, j| dist(i, j) >= 2);
        let base = max_clique(&g, None, None, u64::MAX).unwrap().clique.len();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..3 {
            let mut perm: Vec<usize> = (0..g.len()).collect();
            perm.shuffle(&mut rng);
            let h = g.induced(&perm);
            assert_eq!(max_clique(&h, None, None, u64::MAX).unwrap().clique.len(), base);
        }
        assert_eq!(base, 7);
    }

    #[test]
    fn node_budget_is_reported() {
        // a 5-cycle: greedy colouring needs 3 colours, the clique number is 2
        let g = CompatGraph::from_fn(5, |i, j| j - i == 1 || j - i == 4);
        let err = max_clique(&g, None, None, 1).unwrap_err();
        assert!(err.is_capacity());
    }

    fn no_seed() -> SearchOptions {
        SearchOptions {
            seed_constructions: false,
            ..SearchOptions::default()
        }
    }

    #[test]
    fn a_r_small_values() {
        let (v, code) = exact_a_r(2, 3, 2, 2, 2, &no_seed()).unwrap();
        assert_eq!(v, BigUint::from(7u32));
        assert!(code.min_rank_distance(u64::MAX).unwrap().at_least(2));
        let (v, code) = exact_a_r(2, 3, 2, 1, 2, &SearchOptions::default()).unwrap();
        assert_eq!(v, n_rank(2, 3, 2, 2));
        assert_eq!(code.len(), 42);
        let (v, code) = exact_a_r(2, 3, 2, 5, 2, &SearchOptions::default()).unwrap();
        assert_eq!(v, BigUint::from(1u32));
        assert_eq!(code.min_rank_distance(u64::MAX).unwrap(), MinDistance::Infinite);
    }

    #[test]
    fn seeded_and_symmetric_runs_agree() {
        let plain = no_seed();
        let seeded = SearchOptions::default();
        let sym = SearchOptions {
            symmetry: true,
            ..no_seed()
        };
        for (m, n, d, r) in [(3, 2, 2, 2), (3, 3, 2, 1), (3, 3, 3, 2), (3, 2, 3, 2), (3, 3, 4, 2)] {
            let a = exact_a_r(2, m, n, d, r, &plain).unwrap();
            let b = exact_a_r(2, m, n, d, r, &seeded).unwrap();
            let c = exact_a_r(2, m, n, d, r, &sym).unwrap();
            assert_eq!(a.0, b.0, "{m} {n} {d} {r}");
            assert_eq!(a.0, c.0, "{m} {n} {d} {r}");
            for (_, code) in [a, b, c] {
                assert!(code.min_rank_distance(u64::MAX).unwrap().at_least(d));
            }
        }
    }

    #[test]
    fn transposed_shapes_agree() {
        for r in 1..=2 {
            for d in 1..=2 * r + 1 {
                let a = exact_a_r(2, 3, 2, d, r, &SearchOptions::default()).unwrap().0;
                let b = exact_a_r(2, 2, 3, d, r, &SearchOptions::default()).unwrap().0;
                assert_eq!(a, b, "d={d} r={r}");
            }
        }
    }

    #[test]
    fn a_c_small_values() {
        let (v, code) = exact_a_c(2, 4, 2, 2, &SearchOptions::default()).unwrap();
        assert_eq!(v, BigUint::from(5u32));
        assert!(code.min_injection_distance(u64::MAX).unwrap().at_least(2));
        assert_eq!(exact_a_c(2, 4, 2, 1, &SearchOptions::default()).unwrap().0, BigUint::from(35u32));
        assert_eq!(exact_a_c(2, 4, 1, 1, &SearchOptions::default()).unwrap().0, BigUint::from(15u32));
        assert_eq!(exact_a_c(3, 3, 1, 1, &SearchOptions::default()).unwrap().0, BigUint::from(13u32));
    }

    #[test]
    fn vertex_budget_is_reported() {
        let opts = SearchOptions {
            vertex_budget: 10,
            ..SearchOptions::default()
        };
        assert!(exact_a_r(2, 3, 2, 2, 2, &opts).unwrap_err().is_capacity());
        assert!(exact_a_c(2, 4, 2, 2, &opts).unwrap_err().is_capacity());
    }

    #[test]
    fn oracle_remembers() {
        let mut o = SearchOracle::new(SearchOptions::default());
        assert_eq!(o.a_c(2, 4, 2, 2), Some(BigUint::from(5u32)));
        assert_eq!(o.table.a_c_entries().count(), 1);
        let mut tiny = SearchOracle::new(SearchOptions {
            vertex_budget: 3,
            ..SearchOptions::default()
        });
        assert_eq!(tiny.a_c(2, 4, 2, 2), None);
        assert_eq!(tiny.failed_a_c().count(), 1);
    }

    #[test]
    fn equality_on_small_grid() {
        let mut o = SearchOracle::new(SearchOptions::default());
        let grid = [(2, 2, 2, 1, 1), (2, 3, 2, 1, 1), (2, 3, 3, 1, 1), (2, 4, 3, 1, 1)];
        for c in verify_equality_theorems(&grid, &mut o).unwrap() {
            assert!(c.is_ok(), "{c:?}");
            assert_eq!(c.equality_holds, Some(true));
        }
    }
}
