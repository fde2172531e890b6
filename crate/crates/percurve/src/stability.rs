//! Executable stability bounds for sum-statistic persistence curves.
//!
//! For two diagrams indexed through a bottleneck-optimal matching (with
//! unmatched points padded by their diagonal projections, which contribute
//! zero psi and zero lifespan), the L1 distance between their sum curves is
//! bounded by
//!
//! `eps = min{ L_C * max|dpsi| + 2 Psi_D W, L_D * max|dpsi| + 2 Psi_C W }`
//!
//! where `L` is the total lifespan, `Psi` the total absolute psi mass, `W`
//! the bottleneck distance, and the max runs over matched index pairs.
//! The bound applies only to time-independent psi; for a psi that is
//! additionally Lipschitz against the bottleneck distance, the Lipschitz
//! (corollary) form gives `lhs <= K_tilde * W`. The entropy curve carries
//! its own relative-error bound, implemented in [`entropy_bound`].
//!
//! All bounds are reported with a numerical slack of [`SLACK`].

use core::fmt;

use crate::curves::{DiagramContext, Psi};
use crate::metrics::{self, Matching, MetricError};
use crate::persistence::PersistenceDiagram;

/// Numerical slack added to the right-hand side of every inequality check.
pub const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum StabilityError {
    /// The bound is only stated for time-independent psi with `T = sum`.
    UnsupportedPsi,
    /// A diagram was empty where the bound requires points.
    EmptyDiagram,
    Metric(MetricError),
}

impl fmt::Display for StabilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityError::UnsupportedPsi => {
                write!(f, "bound requires a time-independent psi with T = sum")
            }
            StabilityError::EmptyDiagram => write!(f, "bound requires nonempty diagrams"),
            StabilityError::Metric(e) => write!(f, "{e}"),
        }
    }
}

impl From<MetricError> for StabilityError {
    fn from(e: MetricError) -> Self {
        StabilityError::Metric(e)
    }
}

/// The sums and extremes entering the bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityComponents {
    /// Total lifespan of each diagram.
    pub life_c: f64,
    pub life_d: f64,
    /// Total absolute psi mass of each diagram.
    pub psi_c: f64,
    pub psi_d: f64,
    /// `max_i |psi_i^C - psi_i^D|` over the matched index pairs.
    pub max_psi_diff: f64,
}

/// Outcome of checking the main bound on a concrete diagram pair.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// `||P(C) - P(D)||_1`, by exact breakpoint integration.
    pub lhs: f64,
    /// The bound.
    pub epsilon: f64,
    /// Bottleneck distance.
    pub w_inf: f64,
    pub components: StabilityComponents,
    /// `lhs <= epsilon + SLACK`.
    pub satisfied: bool,
}

fn components(
    c: &PersistenceDiagram,
    d: &PersistenceDiagram,
    psi: Psi,
    matching: &Matching,
) -> StabilityComponents {
    let ctx_c = DiagramContext::of(c);
    let ctx_d = DiagramContext::of(d);
    // psi is time-independent here; the threshold argument is irrelevant.
    let eval_c = |i: usize| {
        let (b, dd) = c.pairs()[i];
        psi.eval(&ctx_c, b, dd, b)
    };
    let eval_d = |j: usize| {
        let (b, dd) = d.pairs()[j];
        psi.eval(&ctx_d, b, dd, b)
    };

    let mut max_psi_diff = 0.0f64;
    for &(a, b) in &matching.pairs {
        let pc = a.map_or(0.0, eval_c);
        let pd = b.map_or(0.0, eval_d);
        max_psi_diff = max_psi_diff.max((pc - pd).abs());
    }
    StabilityComponents {
        life_c: c.pairs().iter().map(|&(b, dd)| dd - b).sum(),
        life_d: d.pairs().iter().map(|&(b, dd)| dd - b).sum(),
        psi_c: (0..c.len()).map(|i| eval_c(i).abs()).sum(),
        psi_d: (0..d.len()).map(|j| eval_d(j).abs()).sum(),
        max_psi_diff,
    }
}

/// The bound `eps` for a given bottleneck-optimal matching.
///
/// Symmetric in `(C, D)` by the outer min. Errors on time-dependent psi
/// (the landscape tent and the thresholding objective).
pub fn theorem1_bound(
    c: &PersistenceDiagram,
    d: &PersistenceDiagram,
    psi: Psi,
    matching: &Matching,
) -> Result<f64, StabilityError> {
    if !psi.is_time_independent() {
        return Err(StabilityError::UnsupportedPsi);
    }
    let comp = components(c, d, psi, matching);
    let w = matching.cost;
    let a = comp.life_c * comp.max_psi_diff + 2.0 * comp.psi_d * w;
    let b = comp.life_d * comp.max_psi_diff + 2.0 * comp.psi_c * w;
    Ok(a.min(b))
}

/// Compute the matching, both sides of the inequality, and the verdict.
pub fn theorem1_check(
    c: &PersistenceDiagram,
    d: &PersistenceDiagram,
    psi: Psi,
) -> Result<StabilityReport, StabilityError> {
    if !psi.is_time_independent() {
        return Err(StabilityError::UnsupportedPsi);
    }
    let (w_inf, matching) = metrics::bottleneck(c, d)?;
    let comp = components(c, d, psi, &matching);
    let epsilon = theorem1_bound(c, d, psi, &matching)?;
    let lhs = metrics::l1_distance_exact(c, d, psi);
    Ok(StabilityReport {
        lhs,
        epsilon,
        w_inf,
        components: comp,
        satisfied: lhs <= epsilon + SLACK,
    })
}

/// Outcome of the Lipschitz-form check.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryReport {
    /// Whether `max|dpsi| <= K * W` held on this pair; when false, the
    /// stability conclusion does not apply (but the fields are still
    /// reported).
    pub premise_holds: bool,
    pub lhs: f64,
    pub w_inf: f64,
    /// `min{K L_C + 2 Psi_D, K L_D + 2 Psi_C}` (the symmetric form).
    pub k_tilde: f64,
    /// The printed form with a repeated `Psi_D` term, reported alongside
    /// the symmetric reading.
    pub k_tilde_asymmetric: f64,
    pub components: StabilityComponents,
    /// `lhs <= k_tilde * w_inf + SLACK`.
    pub satisfied: bool,
}

/// Check the Lipschitz (corollary) form with a caller-supplied constant
/// `K` for which `max|dpsi| <= K * W` is expected to hold.
pub fn corollary_check(
    c: &PersistenceDiagram,
    d: &PersistenceDiagram,
    psi: Psi,
    k: f64,
) -> Result<CorollaryReport, StabilityError> {
    if !psi.is_time_independent() {
        return Err(StabilityError::UnsupportedPsi);
    }
    let (w_inf, matching) = metrics::bottleneck(c, d)?;
    let comp = components(c, d, psi, &matching);
    let premise_holds = comp.max_psi_diff <= k * w_inf + SLACK;
    let k_tilde = (k * comp.life_c + 2.0 * comp.psi_d).min(k * comp.life_d + 2.0 * comp.psi_c);
    let k_tilde_asymmetric =
        (k * comp.life_c + 2.0 * comp.psi_d).min(k * comp.life_d + 2.0 * comp.psi_d);
    let lhs = metrics::l1_distance_exact(c, d, psi);
    Ok(CorollaryReport {
        premise_holds,
        lhs,
        w_inf,
        k_tilde,
        k_tilde_asymmetric,
        components: comp,
        satisfied: lhs <= k_tilde * w_inf + SLACK,
    })
}

/// Outcome of the entropy-curve bound.
#[derive(Debug, Clone, PartialEq)]
pub enum EntropyBound {
    /// The formula degenerates (`r = 0`) or yields a nonpositive bound.
    NotApplicable { r_inf: f64 },
    Applicable {
        r_inf: f64,
        bound: f64,
        /// `||P(C, le) - P(D, le)||_1`, exact.
        lhs: f64,
        /// `lhs <= bound + SLACK`.
        satisfied: bool,
    },
}

/// The relative-error bound for the life-entropy curve:
/// `2r (ln(2r) + L_max ln(N) / N)` with `r = 2N W / L_max`.
pub fn entropy_bound(
    c: &PersistenceDiagram,
    d: &PersistenceDiagram,
) -> Result<EntropyBound, StabilityError> {
    if c.is_empty() || d.is_empty() {
        return Err(StabilityError::EmptyDiagram);
    }
    let (w_inf, _) = metrics::bottleneck(c, d)?;
    let life = |x: &PersistenceDiagram| x.pairs().iter().map(|&(b, dd)| dd - b).sum::<f64>();
    let l_max = life(c).max(life(d));
    let n = c.len().max(d.len()) as f64;
    let r_inf = 2.0 * n * w_inf / l_max;
    if r_inf <= 0.0 {
        return Ok(EntropyBound::NotApplicable { r_inf });
    }
    let bound = 2.0 * r_inf * (libm::log(2.0 * r_inf) + l_max * libm::log(n) / n);
    if bound <= 0.0 {
        return Ok(EntropyBound::NotApplicable { r_inf });
    }
    let lhs = metrics::l1_distance_exact(c, d, Psi::LifeEntropy);
    Ok(EntropyBound::Applicable {
        r_inf,
        bound,
        lhs,
        satisfied: lhs <= bound + SLACK,
    })
}
