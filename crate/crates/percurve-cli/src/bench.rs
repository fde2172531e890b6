//! Timing harness for curve evaluation.
//!
//! Synthetic diagrams have births uniform on [0, 100) and deaths uniform
//! on [birth, 101). Grids are equidistant points spanning [0, 100]. Only
//! the curve evaluation itself is timed; diagram and grid construction
//! happen outside the clock.

use std::time::Instant;

use percurve::curves::{evaluate_curve, Psi, Statistic};
use percurve::persistence::PersistenceDiagram;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub diagram_sizes: Vec<usize>,
    pub grid_sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for BenchmarkSpec {
    fn default() -> Self {
        BenchmarkSpec {
            diagram_sizes: vec![1_000, 10_000, 100_000],
            grid_sizes: vec![100, 1_000, 10_000],
            trials: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub diagram_size: usize,
    pub grid_size: usize,
    pub trials: usize,
    pub mean_seconds: f64,
}

pub fn random_diagram<R: Rng>(rng: &mut R, size: usize) -> PersistenceDiagram {
    let pairs: Vec<(f64, f64)> = (0..size)
        .map(|_| {
            let b = rng.gen_range(0.0..100.0);
            let d = rng.gen_range(b..101.0);
            (b, d)
        })
        .collect();
    PersistenceDiagram::new(0, pairs)
}

pub fn uniform_grid(points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![0.0];
    }
    (0..points)
        .map(|i| 100.0 * i as f64 / (points - 1) as f64)
        .collect()
}

/// Run the timing matrix. The normalized-life entropy curve is the
/// evaluated statistic; its cost profile is representative of the family.
pub fn run_benchmark(spec: &BenchmarkSpec) -> Vec<BenchRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows = Vec::new();
    for &n in &spec.diagram_sizes {
        for &g in &spec.grid_sizes {
            let grid = uniform_grid(g);
            let mut total = 0.0f64;
            for _ in 0..spec.trials {
                let diagram = random_diagram(&mut rng, n);
                let start = Instant::now();
                let curve = evaluate_curve(&diagram, Psi::MulLifeEntropy, Statistic::Sum, &grid);
                total += start.elapsed().as_secs_f64();
                std::hint::black_box(curve);
            }
            rows.push(BenchRow {
                diagram_size: n,
                grid_size: g,
                trials: spec.trials,
                mean_seconds: total / spec.trials as f64,
            });
        }
    }
    rows
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_generation_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = random_diagram(&mut rng, 500);
        assert_eq!(d.len(), 500);
        for &(b, death) in d.pairs() {
            assert!((0.0..100.0).contains(&b));
            assert!(death > b && death < 101.0);
        }
    }

    #[test]
    fn grid_is_equidistant() {
        let g = uniform_grid(5);
        assert_eq!(g, vec![0.0, 25.0, 50.0, 75.0, 100.0]);
    }

    #[test]
    fn benchmark_produces_full_matrix() {
        let spec = BenchmarkSpec {
            diagram_sizes: vec![10, 20],
            grid_sizes: vec![8],
            trials: 2,
            seed: 3,
        };
        let rows = run_benchmark(&spec);
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.mean_seconds >= 0.0));
    }
}
