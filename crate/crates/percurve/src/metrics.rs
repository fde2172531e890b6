//! Exact diagram metrics at desk scale.
//!
//! Bottleneck distance is computed by binary search over the finite set of
//! candidate distances (inter-point and point-to-diagonal), with a
//! bipartite-matching feasibility check at each candidate. Wasserstein-p is
//! an exact optimal assignment on the diagonal-augmented cost matrix.
//!
//! The ground metric defaults to the l-infinity norm on the plane; a
//! point's cheapest diagonal match is its projection at cost `(d - b) / 2`.
//! Both inputs must be finite (capped), with identical caps.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::curves::{DiagramContext, PersistenceCurve, Psi};
use crate::persistence::PersistenceDiagram;

/// Combined point-count limit for the exact algorithms.
pub const DEFAULT_SIZE_LIMIT: usize = 2000;

/// Ground norm on the plane. All shipped tests pin [`GroundNorm::LInf`];
/// `L2` exists for experimentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GroundNorm {
    #[default]
    LInf,
    L2,
}

impl GroundNorm {
    fn dist(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        let (dx, dy) = ((a.0 - b.0).abs(), (a.1 - b.1).abs());
        match self {
            GroundNorm::LInf => dx.max(dy),
            GroundNorm::L2 => libm::sqrt(dx * dx + dy * dy),
        }
    }

    /// Distance from a point to its nearest diagonal projection.
    fn diag(&self, p: (f64, f64)) -> f64 {
        let mid = (p.0 + p.1) / 2.0;
        self.dist(p, (mid, mid))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MetricError {
    /// Combined diagram size exceeds the exact-algorithm limit.
    SizeLimit { size: usize, limit: usize },
    /// A diagram still contains infinite deaths; cap it first.
    InfiniteDeath,
    /// The two diagrams were capped at different values.
    CapMismatch,
    /// Curve grids differ and no exact breakpoints are available.
    GridMismatch,
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricError::SizeLimit { size, limit } => {
                write!(f, "combined diagram size {size} exceeds exact-metric limit {limit}")
            }
            MetricError::InfiniteDeath => write!(f, "diagram has uncapped infinite deaths"),
            MetricError::CapMismatch => write!(f, "diagrams were capped at different values"),
            MetricError::GridMismatch => write!(f, "curve grids differ"),
        }
    }
}

/// An optimal matching between two diagrams. `None` on a side means the
/// point was matched to its diagonal projection.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    /// `(index into C, index into D)`; every off-diagonal point of each
    /// diagram appears exactly once.
    pub pairs: Vec<(Option<usize>, Option<usize>)>,
    /// The achieved distance (max ground distance for bottleneck, p-sum
    /// root for Wasserstein).
    pub cost: f64,
}

impl Matching {
    /// The same matching viewed from the other diagram's side.
    pub fn reversed(&self) -> Matching {
        Matching {
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
            cost: self.cost,
        }
    }
}

fn check_pair(c: &PersistenceDiagram, d: &PersistenceDiagram, limit: usize) -> Result<(), MetricError> {
    if c.has_infinite_deaths() || d.has_infinite_deaths() {
        return Err(MetricError::InfiniteDeath);
    }
    if let (Some(a), Some(b)) = (c.death_cap(), d.death_cap()) {
        if a != b {
            return Err(MetricError::CapMismatch);
        }
    }
    let size = c.len() + d.len();
    if size > limit {
        return Err(MetricError::SizeLimit { size, limit });
    }
    Ok(())
}

/// Exact bottleneck distance and an optimal matching.
pub fn bottleneck(
    c: &PersistenceDiagram,
    d: &PersistenceDiagram,
) -> Result<(f64, Matching), MetricError> {
    bottleneck_with(c, d, GroundNorm::LInf, DEFAULT_SIZE_LIMIT)
}

pub fn bottleneck_with(
    c: &PersistenceDiagram,
    d: &PersistenceDiagram,
    norm: GroundNorm,
    limit: usize,
) -> Result<(f64, Matching), MetricError> {
    check_pair(c, d, limit)?;
    let cp = c.pairs();
    let dp = d.pairs();
    let (n, m) = (cp.len(), dp.len());
    if n == 0 && m == 0 {
        return Ok((0.0, Matching { pairs: Vec::new(), cost: 0.0 }));
    }

    let mut candidates: Vec<f64> = Vec::with_capacity(n * m + n + m + 1);
    candidates.push(0.0);
    for &x in cp {
        candidates.push(norm.diag(x));
        for &y in dp {
            candidates.push(norm.dist(x, y));
        }
    }
    for &y in dp {
        candidates.push(norm.diag(y));
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup();

    // Smallest candidate for which a perfect matching exists.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    debug_assert!(feasible_matching(cp, dp, norm, candidates[hi]).is_some());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible_matching(cp, dp, norm, candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let delta = candidates[lo];
    let pairs = feasible_matching(cp, dp, norm, delta).expect("feasible at optimum");
    // The achieved max over matched edges equals the optimal candidate:
    // otherwise a smaller candidate would already have been feasible.
    let cost = matching_max_cost(cp, dp, norm, &pairs);
    Ok((cost, Matching { pairs, cost }))
}

fn matching_max_cost(
    cp: &[(f64, f64)],
    dp: &[(f64, f64)],
    norm: GroundNorm,
    pairs: &[(Option<usize>, Option<usize>)],
) -> f64 {
    let mut max = 0.0f64;
    for &(a, b) in pairs {
        let cost = match (a, b) {
            (Some(i), Some(j)) => norm.dist(cp[i], dp[j]),
            (Some(i), None) => norm.diag(cp[i]),
            (None, Some(j)) => norm.diag(dp[j]),
            (None, None) => 0.0,
        };
        max = max.max(cost);
    }
    max
}

// Perfect matching on the diagonal-augmented bipartite graph at threshold
// `delta`, or None. Left nodes: C points then diagonal partners for D;
// right nodes: D points then diagonal partners for C. A point may only use
// its own diagonal slot; diagonal-diagonal edges are free.
fn feasible_matching(
    cp: &[(f64, f64)],
    dp: &[(f64, f64)],
    norm: GroundNorm,
    delta: f64,
) -> Option<Vec<(Option<usize>, Option<usize>)>> {
    let (n, m) = (cp.len(), dp.len());
    let total = n + m;
    let allowed = |u: usize, v: usize| -> bool {
        match (u < n, v < m) {
            (true, true) => norm.dist(cp[u], dp[v]) <= delta,
            (true, false) => v - m == u && norm.diag(cp[u]) <= delta,
            (false, true) => u - n == v && norm.diag(dp[v]) <= delta,
            (false, false) => true,
        }
    };

    let mut match_right: Vec<Option<usize>> = vec![None; total];
    let mut match_left: Vec<Option<usize>> = vec![None; total];
    let mut visited = vec![false; total];

    fn try_augment(
        u: usize,
        total: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        visited: &mut [bool],
        match_right: &mut [Option<usize>],
        match_left: &mut [Option<usize>],
    ) -> bool {
        for v in 0..total {
            if visited[v] || !allowed(u, v) {
                continue;
            }
            visited[v] = true;
            let free = match match_right[v] {
                None => true,
                Some(w) => try_augment(w, total, allowed, visited, match_right, match_left),
            };
            if free {
                match_right[v] = Some(u);
                match_left[u] = Some(v);
                return true;
            }
        }
        false
    }

    // Greedy warm start cuts most augmenting searches.
    for u in 0..total {
        for v in 0..total {
            if match_right[v].is_none() && allowed(u, v) {
                match_right[v] = Some(u);
                match_left[u] = Some(v);
                break;
            }
        }
    }
    for u in 0..total {
        if match_left[u].is_some() {
            continue;
        }
        visited.iter_mut().for_each(|x| *x = false);
        if !try_augment(u, total, &allowed, &mut visited, &mut match_right, &mut match_left) {
            return None;
        }
    }

    let mut pairs = Vec::with_capacity(total);
    for u in 0..total {
        let v = match_left[u].expect("perfect matching");
        match (u < n, v < m) {
            (true, true) => pairs.push((Some(u), Some(v))),
            (true, false) => pairs.push((Some(u), None)),
            (false, true) => pairs.push((None, Some(v))),
            (false, false) => {}
        }
    }
    Some(pairs)
}

/// Exact Wasserstein-p distance (`p >= 1`) and an optimal matching.
pub fn wasserstein(
    c: &PersistenceDiagram,
    d: &PersistenceDiagram,
    p: f64,
) -> Result<(f64, Matching), MetricError> {
    wasserstein_with(c, d, p, GroundNorm::LInf, DEFAULT_SIZE_LIMIT)
}

pub fn wasserstein_with(
    c: &PersistenceDiagram,
    d: &PersistenceDiagram,
    p: f64,
    norm: GroundNorm,
    limit: usize,
) -> Result<(f64, Matching), MetricError> {
    assert!(p >= 1.0);
    check_pair(c, d, limit)?;
    let cp = c.pairs();
    let dp = d.pairs();
    let (n, m) = (cp.len(), dp.len());
    if n == 0 && m == 0 {
        return Ok((0.0, Matching { pairs: Vec::new(), cost: 0.0 }));
    }

    let total = n + m;
    let mut cost = vec![vec![0.0f64; total]; total];
    for i in 0..total {
        for j in 0..total {
            cost[i][j] = match (i < n, j < m) {
                (true, true) => libm::pow(norm.dist(cp[i], dp[j]), p),
                (true, false) => libm::pow(norm.diag(cp[i]), p),
                (false, true) => libm::pow(norm.diag(dp[j]), p),
                (false, false) => 0.0,
            };
        }
    }
    let assignment = hungarian(&cost);
    let mut pairs = Vec::with_capacity(total);
    let mut total_cost = 0.0;
    for (i, &j) in assignment.iter().enumerate() {
        total_cost += cost[i][j];
        match (i < n, j < m) {
            (true, true) => pairs.push((Some(i), Some(j))),
            (true, false) => pairs.push((Some(i), None)),
            (false, true) => pairs.push((None, Some(j))),
            (false, false) => {}
        }
    }
    let distance = libm::pow(total_cost, 1.0 / p);
    Ok((distance, Matching { pairs, cost: distance }))
}

// Minimal-cost perfect assignment on a square matrix (potentials method,
// O(n^3)). Returns assignment[row] = col.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![n; n + 1]; // p[col] = row, n = unassigned
    let mut way = vec![0usize; n + 1];

    for i in 0..n {
        p[n] = i;
        let mut j0 = n;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 0..n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0][j] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == n {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == n {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 0..n {
        if p[j] < n {
            assignment[p[j]] = j;
        }
    }
    assignment
}

/// L1 distance between two curves sampled on the same grid, as a
/// left-Riemann sum with spacing weights (the trailing point reuses the
/// last spacing; a single-point grid uses weight 1).
pub fn curve_l1_distance(a: &PersistenceCurve, b: &PersistenceCurve) -> Result<f64, MetricError> {
    if a.grid != b.grid {
        return Err(MetricError::GridMismatch);
    }
    let n = a.grid.len();
    let mut total = 0.0;
    for i in 0..n {
        let weight = if i + 1 < n {
            a.grid[i + 1] - a.grid[i]
        } else if n >= 2 {
            a.grid[n - 1] - a.grid[n - 2]
        } else {
            1.0
        };
        total += (a.values[i] - b.values[i]).abs() * weight;
    }
    Ok(total)
}

/// Exact L1 distance between the sum-statistic curves of two diagrams,
/// integrated over the merged breakpoint set.
///
/// Sum curves with time-independent psi are piecewise constant with
/// breakpoints at births and deaths only, so the integral is exact.
/// Panics if `psi` is time-dependent.
pub fn l1_distance_exact(c: &PersistenceDiagram, d: &PersistenceDiagram, psi: Psi) -> f64 {
    assert!(psi.is_time_independent(), "exact L1 requires time-independent psi");
    let mut breakpoints: Vec<f64> = c
        .pairs()
        .iter()
        .chain(d.pairs().iter())
        .flat_map(|&(b, dd)| [b, dd])
        .collect();
    breakpoints.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breakpoints.dedup();
    if breakpoints.len() < 2 {
        return 0.0;
    }

    let ctx_c = DiagramContext::of(c);
    let ctx_d = DiagramContext::of(d);
    let sum_at = |diagram: &PersistenceDiagram, ctx: &DiagramContext, t: f64| -> f64 {
        diagram
            .pairs()
            .iter()
            .filter(|&&(b, dd)| b <= t && dd > t)
            .map(|&(b, dd)| psi.eval(ctx, b, dd, t))
            .sum()
    };

    let mut total = 0.0;
    for w in breakpoints.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        total += (sum_at(c, &ctx_c, x0) - sum_at(d, &ctx_d, x0)).abs() * (x1 - x0);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::betti_curve;
    use alloc::vec;

    fn diagram(pairs: &[(f64, f64)]) -> PersistenceDiagram {
        PersistenceDiagram::new(0, pairs.to_vec())
    }

    #[test]
    fn identical_diagrams_are_zero() {
        let d = diagram(&[(0.0, 4.0), (1.0, 9.0)]);
        assert_eq!(bottleneck(&d, &d).unwrap().0, 0.0);
        assert_eq!(wasserstein(&d, &d, 1.0).unwrap().0, 0.0);
        assert_eq!(wasserstein(&d, &d, 2.0).unwrap().0, 0.0);
    }

    #[test]
    fn single_point_to_empty() {
        let c = diagram(&[(2.0, 10.0)]);
        let empty = PersistenceDiagram::empty(0);
        let (dist, matching) = bottleneck(&c, &empty).unwrap();
        assert_eq!(dist, 4.0);
        assert_eq!(matching.pairs, vec![(Some(0), None)]);

        let c = diagram(&[(0.0, 2.0)]);
        assert_eq!(wasserstein(&c, &empty, 1.0).unwrap().0, 1.0);
    }

    #[test]
    fn direct_match_beats_double_diagonal() {
        let c = diagram(&[(0.0, 4.0)]);
        let d = diagram(&[(1.0, 4.0)]);
        let (dist, matching) = bottleneck(&c, &d).unwrap();
        assert_eq!(dist, 1.0);
        assert_eq!(matching.pairs, vec![(Some(0), Some(0))]);
    }

    #[test]
    fn diagonal_shortcut_is_half_life() {
        let norm = GroundNorm::LInf;
        for &(b, d) in &[(0.0, 4.0), (3.0, 11.5), (7.0, 7.25)] {
            assert_eq!(norm.diag((b, d)), (d - b) / 2.0);
        }
    }

    #[test]
    fn matching_cost_is_reproducible() {
        let c = diagram(&[(0.0, 6.0), (2.0, 3.0), (5.0, 9.0)]);
        let d = diagram(&[(0.5, 5.0), (4.0, 10.0)]);
        let (dist, matching) = bottleneck(&c, &d).unwrap();
        assert_eq!(
            matching_max_cost(c.pairs(), d.pairs(), GroundNorm::LInf, &matching.pairs),
            dist
        );
        let (wdist, wmatching) = wasserstein(&c, &d, 1.0).unwrap();
        let mut recomputed = 0.0;
        for &(a, b) in &wmatching.pairs {
            recomputed += match (a, b) {
                (Some(i), Some(j)) => GroundNorm::LInf.dist(c.pairs()[i], d.pairs()[j]),
                (Some(i), None) => GroundNorm::LInf.diag(c.pairs()[i]),
                (None, Some(j)) => GroundNorm::LInf.diag(d.pairs()[j]),
                (None, None) => 0.0,
            };
        }
        assert!((recomputed - wdist).abs() < 1e-12);
    }

    #[test]
    fn every_point_matched_once() {
        let c = diagram(&[(0.0, 6.0), (2.0, 3.0), (5.0, 9.0)]);
        let d = diagram(&[(0.5, 5.0), (4.0, 10.0)]);
        for matching in [
            bottleneck(&c, &d).unwrap().1,
            wasserstein(&c, &d, 2.0).unwrap().1,
        ] {
            let mut seen_c = vec![false; c.len()];
            let mut seen_d = vec![false; d.len()];
            for &(a, b) in &matching.pairs {
                if let Some(i) = a {
                    assert!(!seen_c[i]);
                    seen_c[i] = true;
                }
                if let Some(j) = b {
                    assert!(!seen_d[j]);
                    seen_d[j] = true;
                }
            }
            assert!(seen_c.iter().all(|&x| x));
            assert!(seen_d.iter().all(|&x| x));
        }
    }

    #[test]
    fn errors() {
        let inf = PersistenceDiagram::new(0, vec![(1.0, f64::INFINITY)]);
        let fin = diagram(&[(0.0, 1.0)]);
        assert_eq!(bottleneck(&inf, &fin), Err(MetricError::InfiniteDeath));

        let a = PersistenceDiagram::new(0, vec![(1.0, f64::INFINITY)])
            .cap_infinite(256.0)
            .unwrap();
        let b = PersistenceDiagram::new(0, vec![(1.0, f64::INFINITY)])
            .cap_infinite(255.0)
            .unwrap();
        assert_eq!(bottleneck(&a, &b), Err(MetricError::CapMismatch));

        let big = PersistenceDiagram::new(0, (0..1500).map(|i| (i as f64, i as f64 + 1.5)).collect());
        assert!(matches!(
            bottleneck(&big, &big),
            Err(MetricError::SizeLimit { .. })
        ));
    }

    #[test]
    fn curve_l1_examples() {
        let g: Vec<f64> = (0..6).map(|t| t as f64).collect();
        let a = betti_curve(&diagram(&[(0.0, 4.0)]), &g);
        let b = betti_curve(&diagram(&[(0.0, 2.0)]), &g);
        assert_eq!(curve_l1_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(curve_l1_distance(&a, &b).unwrap(), 2.0);

        let other = betti_curve(&diagram(&[(0.0, 4.0)]), &[0.0, 1.0]);
        assert_eq!(curve_l1_distance(&a, &other), Err(MetricError::GridMismatch));
    }

    #[test]
    fn exact_breakpoint_integral_examples() {
        let c = diagram(&[(0.0, 4.0)]);
        let d = diagram(&[(0.0, 2.0)]);
        assert_eq!(l1_distance_exact(&c, &d, Psi::One), 2.0);
        // |4*1_[0,4) - 2*1_[0,2)| integrates to 2*2 + 4*2 = 12.
        assert_eq!(l1_distance_exact(&c, &d, Psi::Life), 12.0);
        assert_eq!(l1_distance_exact(&c, &c, Psi::Life), 0.0);
    }

    // Exact breakpoint integral agrees with a dense Riemann sum in the
    // limit of fine grids.
    #[test]
    fn exact_matches_refined_riemann() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let gen = |rng: &mut rand_chacha::ChaCha8Rng| {
                let pairs: Vec<(f64, f64)> = (0..rng.gen_range(1..8))
                    .map(|_| {
                        let b: f64 = rng.gen_range(0.0..50.0);
                        (b, b + rng.gen_range(0.1..30.0))
                    })
                    .collect();
                diagram(&pairs)
            };
            let c = gen(&mut rng);
            let d = gen(&mut rng);
            let exact = l1_distance_exact(&c, &d, Psi::Life);
            let spacing = 0.005;
            let grid: Vec<f64> = (0..(100.0 / spacing) as usize)
                .map(|i| i as f64 * spacing)
                .collect();
            let a = crate::curves::life_curve(&c, &grid);
            let b = crate::curves::life_curve(&d, &grid);
            let riemann = curve_l1_distance(&a, &b).unwrap();
            // Error is O(spacing * total variation).
            let tv: f64 = (c.len() + d.len()) as f64 * 200.0;
            assert!((exact - riemann).abs() <= spacing * tv + 1e-9);
        }
    }

    // Factorial-free brute force: recurse over all ways to match C points
    // to D points or the diagonal.
    fn brute_force(cp: &[(f64, f64)], dp: &[(f64, f64)], p: Option<f64>) -> f64 {
        fn rec(
            i: usize,
            cp: &[(f64, f64)],
            dp: &[(f64, f64)],
            used: &mut [bool],
            p: Option<f64>,
            acc: f64,
            best: &mut f64,
        ) {
            let norm = GroundNorm::LInf;
            if i == cp.len() {
                let mut total = acc;
                for (j, &u) in used.iter().enumerate() {
                    if !u {
                        let c = norm.diag(dp[j]);
                        total = match p {
                            Some(p) => total + libm::pow(c, p),
                            None => total.max(c),
                        };
                    }
                }
                if total < *best {
                    *best = total;
                }
                return;
            }
            let combine = |acc: f64, c: f64| match p {
                Some(p) => acc + libm::pow(c, p),
                None => acc.max(c),
            };
            rec(i + 1, cp, dp, used, p, combine(acc, GroundNorm::LInf.diag(cp[i])), best);
            for j in 0..dp.len() {
                if !used[j] {
                    used[j] = true;
                    rec(i + 1, cp, dp, used, p, combine(acc, GroundNorm::LInf.dist(cp[i], dp[j])), best);
                    used[j] = false;
                }
            }
        }
        let mut best = f64::INFINITY;
        let mut used = vec![false; dp.len()];
        rec(0, cp, dp, &mut used, p, 0.0, &mut best);
        match p {
            Some(p) => libm::pow(best, 1.0 / p),
            None => best,
        }
    }

    #[test]
    fn brute_force_agreement_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let gen = |rng: &mut rand_chacha::ChaCha8Rng| {
                let pairs: Vec<(f64, f64)> = (0..rng.gen_range(0..5))
                    .map(|_| {
                        let b: f64 = rng.gen_range(0.0..20.0);
                        (b, b + rng.gen_range(0.5..10.0))
                    })
                    .collect();
                diagram(&pairs)
            };
            let c = gen(&mut rng);
            let d = gen(&mut rng);
            let (bn, _) = bottleneck(&c, &d).unwrap();
            assert!((bn - brute_force(c.pairs(), d.pairs(), None)).abs() < 1e-12);
            let (w1, _) = wasserstein(&c, &d, 1.0).unwrap();
            assert!((w1 - brute_force(c.pairs(), d.pairs(), Some(1.0))).abs() < 1e-9);
        }
    }

    #[test]
    fn metric_axioms_on_random_small_diagrams() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let gen = |rng: &mut rand_chacha::ChaCha8Rng| {
            let pairs: Vec<(f64, f64)> = (0..rng.gen_range(0..6))
                .map(|_| {
                    let b: f64 = rng.gen_range(0.0..20.0);
                    (b, b + rng.gen_range(0.5..10.0))
                })
                .collect();
            diagram(&pairs)
        };
        for _ in 0..30 {
            let a = gen(&mut rng);
            let b = gen(&mut rng);
            let c = gen(&mut rng);
            for dist in [
                |x: &PersistenceDiagram, y: &PersistenceDiagram| bottleneck(x, y).unwrap().0,
                |x: &PersistenceDiagram, y: &PersistenceDiagram| wasserstein(x, y, 1.0).unwrap().0,
            ] {
                let (ab, ba) = (dist(&a, &b), dist(&b, &a));
                assert!((ab - ba).abs() < 1e-9, "symmetry");
                assert!(dist(&a, &a) < 1e-12, "identity");
                assert!(dist(&a, &c) <= ab + dist(&b, &c) + 1e-9, "triangle");
            }
        }
    }
}
