//! The persistence-curve framework and its named instances.
//!
//! A persistence curve is `P(D, psi, T)(t) = T({psi(D; b, d, t) | b <= t,
//! d > t})`: apply `psi` to every diagram point inside the fundamental box
//! at threshold `t` (the half-open window `b <= t < d`), reduce the
//! resulting multiset with the statistic `T`, and sweep `t` over a grid.
//!
//! Named instances:
//!
//! | name     | psi                          | T     |
//! |----------|------------------------------|-------|
//! | betti    | 1                            | sum   |
//! | life     | d - b                        | sum   |
//! | midlife  | (b + d) / 2                  | sum   |
//! | mul      | (d + 1) / (b + 1)            | sum   |
//! | le       | -q ln q, q = (d-b)/L         | sum   |
//! | mle      | -q ln q, q = (d+b)/sum(d+b)  | sum   |
//! | mule     | -q ln q, q over offset d/b   | sum   |
//! | landscape| min(t - b, d - t)            | max_k |
//!
//! The multiplicative life uses `(d+1)/(b+1)` rather than `d/b`, which is
//! undefined at `b = 0` (common for dimension-0 diagrams of images).
//! Entropy normalizers are taken over the whole diagram, not the window,
//! and logarithms are natural.

use alloc::string::String;
use alloc::vec::Vec;

use crate::persistence::PersistenceDiagram;

/// Whole-diagram totals used as entropy normalizers.
///
/// All totals run over every stored pair of the diagram, never over the
/// window at a particular threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramContext {
    /// `L = sum(d - b)`.
    pub total_life: f64,
    /// `sum(d + b)`.
    pub total_midlife: f64,
    /// `sum((d + 1) / (b + 1))`.
    pub total_mullife: f64,
    /// Number of stored pairs.
    pub count: usize,
}

impl DiagramContext {
    pub fn of(diagram: &PersistenceDiagram) -> Self {
        let mut total_life = 0.0;
        let mut total_midlife = 0.0;
        let mut total_mullife = 0.0;
        for &(b, d) in diagram.pairs() {
            total_life += d - b;
            total_midlife += d + b;
            total_mullife += (d + 1.0) / (b + 1.0);
        }
        DiagramContext {
            total_life,
            total_midlife,
            total_mullife,
            count: diagram.len(),
        }
    }
}

/// The point function `psi` of a persistence curve.
///
/// Every variant vanishes on the diagonal (`eval(ctx, x, x, t) == 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Psi {
    /// Indicator of an off-diagonal point; yields the Betti curve.
    One,
    /// Lifespan `d - b`.
    Life,
    /// Midlife `(b + d) / 2`.
    Midlife,
    /// Offset multiplicative life `(d + 1) / (b + 1)`.
    MulLife,
    /// Life-entropy summand `-q ln q` with `q = (d - b) / L`.
    LifeEntropy,
    /// Midlife-entropy summand, normalized by `sum(d + b)`.
    MidlifeEntropy,
    /// Multiplicative-life-entropy summand, over the offset ratio.
    MulLifeEntropy,
    /// Landscape tent `min(t - b, d - t)`; time-dependent.
    Tent,
    /// Thresholding objective summand `(d - t)(t - b)`; time-dependent.
    ThresholdObjective,
}

fn neg_q_ln_q(value: f64, total: f64) -> f64 {
    if total <= 0.0 || value <= 0.0 {
        return 0.0;
    }
    let q = value / total;
    -q * libm::log(q)
}

impl Psi {
    pub fn eval(&self, ctx: &DiagramContext, b: f64, d: f64, t: f64) -> f64 {
        if b == d {
            return 0.0;
        }
        match self {
            Psi::One => 1.0,
            Psi::Life => d - b,
            Psi::Midlife => (b + d) / 2.0,
            Psi::MulLife => (d + 1.0) / (b + 1.0),
            Psi::LifeEntropy => neg_q_ln_q(d - b, ctx.total_life),
            Psi::MidlifeEntropy => neg_q_ln_q(d + b, ctx.total_midlife),
            Psi::MulLifeEntropy => neg_q_ln_q((d + 1.0) / (b + 1.0), ctx.total_mullife),
            Psi::Tent => {
                let v = if t - b < d - t { t - b } else { d - t };
                if v > 0.0 {
                    v
                } else {
                    0.0
                }
            }
            Psi::ThresholdObjective => (d - t) * (t - b),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Psi::One => "one",
            Psi::Life => "life",
            Psi::Midlife => "midlife",
            Psi::MulLife => "mul",
            Psi::LifeEntropy => "le",
            Psi::MidlifeEntropy => "mle",
            Psi::MulLifeEntropy => "mule",
            Psi::Tent => "tent",
            Psi::ThresholdObjective => "phi",
        }
    }

    /// Whether `eval` ignores the threshold argument. The stability bounds
    /// only apply to time-independent psi.
    pub fn is_time_independent(&self) -> bool {
        !matches!(self, Psi::Tent | Psi::ThresholdObjective)
    }
}

/// The statistic `T` reducing the window multiset to a scalar.
///
/// Every built-in statistic maps the empty multiset to 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    Sum,
    Mean,
    /// The k-th largest value (k >= 1); 0 when fewer than k values.
    MaxK(usize),
}

impl Statistic {
    pub fn reduce(&self, values: &[f64]) -> f64 {
        if values.is_empty() {
            return 0.0;
        }
        match self {
            Statistic::Sum => values.iter().sum(),
            Statistic::Mean => values.iter().sum::<f64>() / values.len() as f64,
            Statistic::MaxK(k) => {
                let k = *k;
                if k == 0 || k > values.len() {
                    return 0.0;
                }
                let mut sorted = values.to_vec();
                sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
                sorted[k - 1]
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Statistic::Sum => "sum",
            Statistic::Mean => "mean",
            Statistic::MaxK(_) => "max_k",
        }
    }
}

/// Provenance of a sampled curve: which diagram, psi, and statistic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub diagram_dimension: u8,
    pub psi: String,
    pub statistic: String,
}

/// A persistence curve sampled on a strictly increasing threshold grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub provenance: Provenance,
}

/// The integer grid `0..=255`, the natural grid for 8-bit images.
pub fn grid_0_255() -> Vec<f64> {
    (0..256).map(|t| t as f64).collect()
}

/// Evaluate `P(D, psi, T)` at each grid point.
///
/// The diagram must be finite (capped). An empty diagram yields the zero
/// curve.
pub fn evaluate_curve(
    diagram: &PersistenceDiagram,
    psi: Psi,
    stat: Statistic,
    grid: &[f64],
) -> PersistenceCurve {
    debug_assert!(grid.windows(2).all(|w| w[0] < w[1]));
    let ctx = DiagramContext::of(diagram);
    let mut window = Vec::with_capacity(diagram.len());
    let values = grid
        .iter()
        .map(|&t| {
            window.clear();
            for &(b, d) in diagram.pairs() {
                if b <= t && d > t {
                    window.push(psi.eval(&ctx, b, d, t));
                }
            }
            stat.reduce(&window)
        })
        .collect();
    PersistenceCurve {
        grid: grid.to_vec(),
        values,
        provenance: Provenance {
            diagram_dimension: diagram.dimension(),
            psi: String::from(psi.name()),
            statistic: String::from(stat.name()),
        },
    }
}

/// Betti curve: `psi = 1`, `T = sum`; integer-valued, equal to
/// [`PersistenceDiagram::betti_at`] at every grid point.
pub fn betti_curve(diagram: &PersistenceDiagram, grid: &[f64]) -> PersistenceCurve {
    evaluate_curve(diagram, Psi::One, Statistic::Sum, grid)
}

/// Life curve: `psi = d - b`, `T = sum`.
pub fn life_curve(diagram: &PersistenceDiagram, grid: &[f64]) -> PersistenceCurve {
    evaluate_curve(diagram, Psi::Life, Statistic::Sum, grid)
}

/// Midlife curve: `psi = (b + d) / 2`, `T = sum`.
pub fn midlife_curve(diagram: &PersistenceDiagram, grid: &[f64]) -> PersistenceCurve {
    evaluate_curve(diagram, Psi::Midlife, Statistic::Sum, grid)
}

/// Multiplicative-life curve with the `+1` offset: `psi = (d+1)/(b+1)`.
pub fn mul_curve(diagram: &PersistenceDiagram, grid: &[f64]) -> PersistenceCurve {
    evaluate_curve(diagram, Psi::MulLife, Statistic::Sum, grid)
}

/// Life-entropy curve.
pub fn le_curve(diagram: &PersistenceDiagram, grid: &[f64]) -> PersistenceCurve {
    evaluate_curve(diagram, Psi::LifeEntropy, Statistic::Sum, grid)
}

/// Midlife-entropy curve.
pub fn mle_curve(diagram: &PersistenceDiagram, grid: &[f64]) -> PersistenceCurve {
    evaluate_curve(diagram, Psi::MidlifeEntropy, Statistic::Sum, grid)
}

/// Multiplicative-life-entropy curve.
pub fn mule_curve(diagram: &PersistenceDiagram, grid: &[f64]) -> PersistenceCurve {
    evaluate_curve(diagram, Psi::MulLifeEntropy, Statistic::Sum, grid)
}

/// k-th persistence landscape: `psi = min(t - b, d - t)`, `T = max_k`.
pub fn landscape_k(diagram: &PersistenceDiagram, k: usize, grid: &[f64]) -> PersistenceCurve {
    evaluate_curve(diagram, Psi::Tent, Statistic::MaxK(k), grid)
}

/// Thresholding objective: mean of `(d - t)(t - b)` over the window.
pub fn phi_curve(diagram: &PersistenceDiagram, grid: &[f64]) -> PersistenceCurve {
    evaluate_curve(diagram, Psi::ThresholdObjective, Statistic::Mean, grid)
}

/// Euler characteristic curve: alternating sum of Betti curves over the
/// diagrams, indexed by homology dimension starting at 0.
pub fn ecc(diagrams: &[&PersistenceDiagram], grid: &[f64]) -> PersistenceCurve {
    let mut values = alloc::vec![0.0; grid.len()];
    for (i, diagram) in diagrams.iter().enumerate() {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let betti = betti_curve(diagram, grid);
        for (v, b) in values.iter_mut().zip(betti.values.iter()) {
            *v += sign * b;
        }
    }
    PersistenceCurve {
        grid: grid.to_vec(),
        values,
        provenance: Provenance {
            diagram_dimension: 0,
            psi: String::from("ecc"),
            statistic: String::from("sum"),
        },
    }
}

/// The cited entropy summary `S(D)` with the closed window `b <= t <= d`.
///
/// Dominates the life-entropy curve pointwise, since the latter drops the
/// death value from the window.
pub fn entropy_summary(diagram: &PersistenceDiagram, grid: &[f64]) -> PersistenceCurve {
    let ctx = DiagramContext::of(diagram);
    let values = grid
        .iter()
        .map(|&t| {
            diagram
                .pairs()
                .iter()
                .filter(|&&(b, d)| b <= t && d >= t)
                .map(|&(b, d)| neg_q_ln_q(d - b, ctx.total_life))
                .sum()
        })
        .collect();
    PersistenceCurve {
        grid: grid.to_vec(),
        values,
        provenance: Provenance {
            diagram_dimension: diagram.dimension(),
            psi: String::from("entropy_summary"),
            statistic: String::from("sum"),
        },
    }
}

/// Per-diagram scalar summaries: mean, median, population standard
/// deviation, skewness, kurtosis (non-excess), and the 10th, 25th, 75th,
/// 90th percentiles: first of the multiset `{d + b}`, then of the
/// lifespans `{d - b}`. An empty diagram gives 18 zeros.
pub fn persistence_statistics(diagram: &PersistenceDiagram) -> [f64; 18] {
    let midlives: Vec<f64> = diagram.pairs().iter().map(|&(b, d)| d + b).collect();
    let lifespans: Vec<f64> = diagram.pairs().iter().map(|&(b, d)| d - b).collect();
    let mut out = [0.0; 18];
    out[..9].copy_from_slice(&summary_statistics(&midlives));
    out[9..].copy_from_slice(&summary_statistics(&lifespans));
    out
}

fn summary_statistics(data: &[f64]) -> [f64; 9] {
    if data.is_empty() {
        return [0.0; 9];
    }
    let n = data.len() as f64;
    let mean = data.iter().sum::<f64>() / n;
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let var = data.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let std = libm::sqrt(var);
    // Standardized central moments; 0 for a degenerate distribution.
    let (skew, kurt) = if std > 0.0 {
        let m3 = data.iter().map(|x| libm::pow(x - mean, 3.0)).sum::<f64>() / n;
        let m4 = data.iter().map(|x| libm::pow(x - mean, 4.0)).sum::<f64>() / n;
        (m3 / (std * std * std), m4 / (var * var))
    } else {
        (0.0, 0.0)
    };
    [
        mean,
        percentile(&sorted, 50.0),
        std,
        skew,
        kurt,
        percentile(&sorted, 10.0),
        percentile(&sorted, 25.0),
        percentile(&sorted, 75.0),
        percentile(&sorted, 90.0),
    ]
}

// Linear interpolation between order statistics; `sorted` is ascending.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let rank = p / 100.0 * (n - 1) as f64;
    let lo = rank as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = rank - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}
