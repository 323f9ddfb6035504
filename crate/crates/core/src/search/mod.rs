//! Exact extremal numbers: the largest `kind`-free subfamily of a ground set.
//!
//! Every result is the maximum independent set of the conflict hypergraph
//! built by [`build_instance`]. Witnesses are re-checked with
//! [`find_violation`](crate::structures::find_violation) before they are
//! returned.

mod instance;
mod solver;

use std::fmt;
use std::time::Duration;

use num_rational::Ratio;

pub use instance::{build_instance, build_instance_with_cap, verify_certificate, ConflictInstance, DEFAULT_GROUND_CAP};

use crate::error::{Error, Result};
use crate::family::{BinaryFamily, Family, TernaryFamily};
use crate::structures::{find_violation, StructureKind};
use crate::vector::{BinaryVector, Point, TernaryVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Worker threads; 1 is the canonical sequential mode.
    pub workers: usize,
    /// Wall-clock budget; `None` searches to completion.
    pub timeout: Option<Duration>,
    pub ground_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self::sequential()
    }
}

impl SearchConfig {
    pub fn sequential() -> Self {
        Self { workers: 1, timeout: None, ground_cap: DEFAULT_GROUND_CAP }
    }

    pub fn with_workers(workers: usize) -> Self {
        Self { workers: workers.max(1), ..Self::sequential() }
    }

    pub fn timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }

    pub fn is_canonical(&self) -> bool {
        self.workers <= 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// The search completed; `extremal_size` is the exact maximum.
    Optimal,
    /// The budget ran out; `extremal_size` is only a lower bound.
    TimedOut,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Optimal => "optimal",
            SearchStatus::TimedOut => "timeout (lower bound)",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult<V: Point> {
    pub extremal_size: usize,
    /// A free subfamily of the ground set, in ground order.
    pub witness: Family<V>,
    pub nodes_explored: u64,
    /// True iff produced by the canonical sequential search.
    pub deterministic: bool,
    pub status: SearchStatus,
}

impl<V: Point> SearchResult<V> {
    pub fn is_optimal(&self) -> bool {
        self.status == SearchStatus::Optimal
    }
}

/// Largest free subfamily of the instance's ground set.
pub fn max_free<V: Point>(instance: &ConflictInstance<V>, config: &SearchConfig) -> Result<SearchResult<V>> {
    solve_containing(instance, &[], config)
}

/// Largest free subfamily of the ground set that contains `forced`.
///
/// The forced members are committed up front: every ground point that
/// would complete a constraint with them is dropped, and every triple with
/// one forced member becomes a pair constraint on the other two. The rest
/// is an ordinary instance for the solver.
pub fn max_free_containing<V: Point>(
    instance: &ConflictInstance<V>,
    forced: &Family<V>,
    config: &SearchConfig,
) -> Result<SearchResult<V>> {
    if find_violation(forced, instance.kind())?.is_some() {
        return Err(Error::Range("forced members already contain a violation".into()));
    }
    let idx = instance.indices_of(forced)?;
    solve_containing(instance, &idx, config)
}

fn solve_containing<V: Point>(
    instance: &ConflictInstance<V>,
    forced: &[usize],
    config: &SearchConfig,
) -> Result<SearchResult<V>> {
    let ground = instance.ground();
    let size = ground.len();
    let mut is_forced = vec![false; size];
    for &f in forced {
        is_forced[f] = true;
    }
    let mut alive: Vec<bool> = is_forced.iter().map(|f| !f).collect();
    for &[a, b] in instance.pairs() {
        let (a, b) = (a as usize, b as usize);
        if is_forced[a] {
            alive[b] = false;
        }
        if is_forced[b] {
            alive[a] = false;
        }
    }
    for t in instance.triples() {
        let forced_count = t.iter().filter(|&&v| is_forced[v as usize]).count();
        if forced_count == 2 {
            for &v in t {
                alive[v as usize] = false;
            }
        }
    }
    let residual: Vec<usize> = (0..size).filter(|&v| alive[v]).collect();
    let mut local = vec![u32::MAX; size];
    for (i, &v) in residual.iter().enumerate() {
        local[v] = i as u32;
    }
    let mut pairs: Vec<[u32; 2]> = Vec::new();
    for &[a, b] in instance.pairs() {
        if alive[a as usize] && alive[b as usize] {
            pairs.push([local[a as usize], local[b as usize]]);
        }
    }
    let mut triples: Vec<[u32; 3]> = Vec::new();
    for t in instance.triples() {
        let live: Vec<u32> = t.iter().filter(|&&v| alive[v as usize]).map(|&v| local[v as usize]).collect();
        match (live.len(), t.iter().any(|&v| is_forced[v as usize])) {
            (3, _) => triples.push([live[0], live[1], live[2]]),
            (2, true) => pairs.push([live[0], live[1]]),
            _ => {}
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let outcome = solver::solve(
        residual.len(),
        &pairs,
        &triples,
        &solver::SolverConfig { workers: config.workers, timeout: config.timeout },
    );
    let mut keep = is_forced;
    for &i in &outcome.best {
        keep[residual[i]] = true;
    }
    let witness = Family::from_members(ground.dim(), ground.iter().zip(&keep).filter(|(_, k)| **k).map(|(v, _)| *v))?;
    if find_violation(&witness, instance.kind())?.is_some() || !verify_certificate(&witness, instance)? {
        return Err(Error::WitnessRejected);
    }
    Ok(SearchResult {
        extremal_size: witness.len(),
        witness,
        nodes_explored: outcome.nodes,
        deterministic: config.is_canonical(),
        status: if outcome.timed_out { SearchStatus::TimedOut } else { SearchStatus::Optimal },
    })
}

/// All of `{0,1}^n`, lexicographically ordered.
pub fn cube(n: usize) -> Result<BinaryFamily> {
    BinaryFamily::from_members(n, BinaryVector::all(n)?)
}

/// The weight-`k` slice of `{0,1}^n`, lexicographically ordered.
pub fn slice(n: usize, k: usize) -> Result<BinaryFamily> {
    if k > n {
        return Err(Error::Range(format!("weight {k} exceeds dimension {n}")));
    }
    BinaryFamily::from_members(n, BinaryVector::all(n)?.filter(|v| v.weight() as usize == k))
}

/// All of `F_3^n`, lexicographically ordered.
pub fn ternary_space(n: usize) -> Result<TernaryFamily> {
    TernaryFamily::from_members(n, TernaryVector::all(n)?)
}

/// Largest family of subsets of `{1..n}` without a weak Δ-system of size 3.
pub fn g3(n: usize, config: &SearchConfig) -> Result<SearchResult<BinaryVector>> {
    max_free(&build_instance_with_cap(&cube(n)?, StructureKind::WeakDelta, config.ground_cap)?, config)
}

/// Size of the largest capset in `F_3^n`.
///
/// A capset either lies in an affine hyperplane, and then has at most
/// `C_{n-1}` points, or affinely spans `F_3^n` and so contains an affine
/// frame. The affine group preserves lines and acts transitively on
/// ordered frames, so spanning capsets may be assumed to contain
/// `{0, e_1, .., e_n}`. Hence `C_n = max(C_{n-1}, largest capset through
/// that frame)`, and only the second term needs a search in dimension `n`.
pub fn capset_number(n: usize, config: &SearchConfig) -> Result<SearchResult<TernaryVector>> {
    let ground = ternary_space(n)?;
    let instance = build_instance_with_cap(&ground, StructureKind::CapsetLine, config.ground_cap)?;
    if n == 0 {
        return max_free(&instance, config);
    }
    let lower = capset_number(n - 1, config)?;
    let frame = affine_frame(n)?;
    let spanning = max_free_containing(&instance, &frame, config)?;
    let nodes = lower.nodes_explored + spanning.nodes_explored;
    let status =
        if lower.is_optimal() && spanning.is_optimal() { SearchStatus::Optimal } else { SearchStatus::TimedOut };
    let mut best = if spanning.extremal_size >= lower.extremal_size {
        spanning
    } else {
        // Embed the lower-dimensional capset in the hyperplane x_n = 0.
        let embedded = lower
            .witness
            .iter()
            .map(|v| TernaryVector::from_planes(n, v.ones_plane() << 1, v.twos_plane() << 1).unwrap());
        let witness = ground.filter({
            let set: std::collections::HashSet<_> = embedded.collect();
            move |v| set.contains(v)
        });
        SearchResult { extremal_size: witness.len(), witness, ..lower }
    };
    best.nodes_explored = nodes;
    best.status = status;
    Ok(best)
}

/// `{0, e_1, .., e_n}` in `F_3^n`.
pub fn affine_frame(n: usize) -> Result<TernaryFamily> {
    let mut members = vec![TernaryVector::zero(n)?];
    for i in 0..n {
        members.push(TernaryVector::from_planes(n, 1 << i, 0)?);
    }
    TernaryFamily::from_members(n, members)
}

/// Largest sunflower-free subset of the weight-`k` slice of `{0,1}^n`.
pub fn max_sunflower_free_slice(n: usize, k: usize, config: &SearchConfig) -> Result<SearchResult<BinaryVector>> {
    max_free(&build_instance_with_cap(&slice(n, k)?, StructureKind::Sunflower, config.ground_cap)?, config)
}

/// Largest equilateral-free subset of the weight-`k` slice of `{0,1}^n`.
pub fn max_equilateral_free_slice(n: usize, k: usize, config: &SearchConfig) -> Result<SearchResult<BinaryVector>> {
    max_free(&build_instance_with_cap(&slice(n, k)?, StructureKind::Equilateral, config.ground_cap)?, config)
}

/// Share of a ground set that a largest equilateral-free subset occupies.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub ground_size: usize,
    pub extremal_size: usize,
    pub delta: Ratio<u64>,
    pub status: SearchStatus,
}

impl DensityReport {
    /// Fails on an empty ground set, where the density is undefined.
    pub fn new(ground_size: usize, extremal_size: usize, status: SearchStatus) -> Result<Self> {
        if ground_size == 0 {
            return Err(Error::EmptyGround);
        }
        Ok(Self { ground_size, extremal_size, delta: Ratio::new(extremal_size as u64, ground_size as u64), status })
    }

    pub fn decimal(&self) -> f64 {
        *self.delta.numer() as f64 / *self.delta.denom() as f64
    }
}

/// `w(B) / |B|` where `w(B)` is the largest equilateral-free subset of `B`.
pub fn delta_density(ground: &BinaryFamily, config: &SearchConfig) -> Result<DensityReport> {
    if ground.is_empty() {
        return Err(Error::EmptyGround);
    }
    let instance = build_instance_with_cap(ground, StructureKind::Equilateral, config.ground_cap)?;
    let result = max_free(&instance, config)?;
    DensityReport::new(ground.len(), result.extremal_size, result.status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq() -> SearchConfig {
        SearchConfig::sequential()
    }

    #[test]
    fn square_weak_delta() {
        let inst = build_instance(&cube(2).unwrap(), StructureKind::WeakDelta).unwrap();
        let r = max_free(&inst, &seq()).unwrap();
        assert_eq!(r.extremal_size, 3);
        assert!(r.deterministic && r.is_optimal());
        assert!(verify_certificate(&r.witness, &inst).unwrap());
    }

    #[test]
    fn unconstrained_ground_is_its_own_witness() {
        let g = BinaryFamily::from_rows(3, &["111", "000"]).unwrap();
        let inst = build_instance(&g, StructureKind::WeakDelta).unwrap();
        let r = max_free(&inst, &seq()).unwrap();
        assert_eq!(r.extremal_size, 2);
        assert_eq!(r.witness, g);
    }

    #[test]
    fn small_named_values() {
        assert_eq!(g3(1, &seq()).unwrap().extremal_size, 2);
        assert_eq!(g3(2, &seq()).unwrap().extremal_size, 3);
        assert_eq!(capset_number(0, &seq()).unwrap().extremal_size, 1);
        assert_eq!(capset_number(1, &seq()).unwrap().extremal_size, 2);
        assert_eq!(max_sunflower_free_slice(3, 1, &seq()).unwrap().extremal_size, 2);
        for n in 0..=5 {
            assert_eq!(max_sunflower_free_slice(n, n, &seq()).unwrap().extremal_size, 1);
        }
    }

    #[test]
    fn density_examples() {
        let free = BinaryFamily::from_rows(3, &["000", "100", "110"]).unwrap();
        let d = delta_density(&free, &seq()).unwrap();
        assert_eq!(d.delta, Ratio::from_integer(1));

        let d = delta_density(&slice(3, 1).unwrap(), &seq()).unwrap();
        assert_eq!(d.extremal_size, 2);
        assert_eq!(d.delta, Ratio::new(2, 3));

        assert_eq!(delta_density(&BinaryFamily::new(3).unwrap(), &seq()), Err(Error::EmptyGround));
    }

    #[test]
    fn slice_range() {
        assert!(slice(3, 4).is_err());
        assert_eq!(slice(4, 2).unwrap().len(), 6);
    }

    #[test]
    fn timeout_is_reported() {
        let cfg = SearchConfig::sequential().timeout(Duration::ZERO);
        let r = capset_number(3, &cfg).unwrap();
        assert_eq!(r.status, SearchStatus::TimedOut);
    }
}
