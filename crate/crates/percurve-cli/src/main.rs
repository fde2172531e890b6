//! Command-line interface for topological texture features.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use percurve::curves::Psi;
use percurve::stability;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use percurve_cli::bench::{run_benchmark, write_csv, BenchmarkSpec};
use percurve_cli::config::{ChannelMode, FeatureConfig};
use percurve_cli::diagram_io::{read_features_csv, write_features_csv};
use percurve_cli::features::extract_features;
use percurve_cli::knn::evaluate;
use percurve_cli::noise::add_gaussian_noise;
use percurve_cli::pgm::{read_image, write_pgm};

#[derive(Parser)]
#[command(name = "percurve", version, about = "Topological texture features for raster images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract feature vectors from images into a CSV table.
    Features {
        /// Input images (PGM or PPM; PNG with the `png` feature).
        #[arg(required = true)]
        images: Vec<PathBuf>,
        /// JSON configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path; a layout sidecar is written next to it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify a labelled test table against a labelled training table.
    Classify {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        /// Number of neighbours.
        #[arg(short, default_value_t = 1)]
        k: usize,
    },
    /// Randomized check of the curve stability inequality; prints a JSON report.
    StabilityFuzz {
        /// Number of random diagram pairs.
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weight function: one, life, midlife, or mul.
        #[arg(long, default_value = "life")]
        psi: String,
    },
    /// Time curve evaluation over a size matrix; prints CSV.
    Bench {
        /// Comma-separated diagram sizes.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1000usize, 10000, 100000])]
        sizes: Vec<usize>,
        /// Comma-separated grid sizes.
        #[arg(long, value_delimiter = ',', default_values_t = vec![100usize, 1000, 10000])]
        grids: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Optional output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add rounded standard-normal noise to an image.
    Noise {
        image: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output PGM path; defaults to `<stem>.noisy.pgm`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Features { images, config, out } => cmd_features(&images, &config, &out),
        Command::Classify { train, test, k } => cmd_classify(&train, &test, k),
        Command::StabilityFuzz { pairs, seed, psi } => cmd_stability_fuzz(pairs, seed, &psi),
        Command::Bench {
            sizes,
            grids,
            trials,
            seed,
            out,
        } => cmd_bench(sizes, grids, trials, seed, out),
        Command::Noise { image, seed, out } => cmd_noise(&image, seed, out),
    }
}

fn cmd_features(images: &[PathBuf], config_path: &PathBuf, out: &PathBuf) -> Result<()> {
    let config: FeatureConfig = serde_json::from_reader(BufReader::new(
        File::open(config_path)
            .with_context(|| format!("opening config {}", config_path.display()))?,
    ))
    .with_context(|| format!("parsing config {}", config_path.display()))?;

    let mut rows = Vec::with_capacity(images.len());
    for path in images {
        let decoded = read_image(path)?;
        let channels = match config.channels {
            ChannelMode::Grayscale => {
                if decoded.channels.len() == 1 {
                    decoded.channels
                } else {
                    bail!(
                        "{} has {} channels; use \"channels\": \"rgb-split\" for color input",
                        path.display(),
                        decoded.channels.len()
                    );
                }
            }
            ChannelMode::RgbSplit => decoded.channels,
        };
        let fv = extract_features(&channels, &config)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        rows.push((label, fv));
    }
    write_features_csv(out, &rows)?;
    eprintln!(
        "wrote {} rows of {} features to {}",
        rows.len(),
        rows.first().map_or(0, |(_, fv)| fv.len()),
        out.display()
    );
    Ok(())
}

fn cmd_classify(train: &PathBuf, test: &PathBuf, k: usize) -> Result<()> {
    let train_rows = read_features_csv(train)?;
    let test_rows = read_features_csv(test)?;
    let ev = evaluate(&train_rows, &test_rows, k)?;
    println!("accuracy: {:.4}", ev.accuracy);
    println!("confusion (rows = truth, columns = prediction):");
    print!("{:>12}", "");
    for l in &ev.labels {
        print!("{l:>12}");
    }
    println!();
    for (i, l) in ev.labels.iter().enumerate() {
        print!("{l:>12}");
        for c in &ev.confusion[i] {
            print!("{c:>12}");
        }
        println!();
    }
    Ok(())
}

fn parse_psi(name: &str) -> Result<Psi> {
    Ok(match name {
        "one" => Psi::One,
        "life" => Psi::Life,
        "midlife" => Psi::Midlife,
        "mul" => Psi::MulLife,
        other => bail!("unsupported weight function {other:?} (use one, life, midlife, or mul)"),
    })
}

fn cmd_stability_fuzz(pairs: usize, seed: u64, psi_name: &str) -> Result<()> {
    let psi = parse_psi(psi_name)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_margin = f64::INFINITY;
    let mut violations = 0usize;
    let mut reports = Vec::new();
    for i in 0..pairs {
        let c = random_small_diagram(&mut rng);
        let d = random_small_diagram(&mut rng);
        let report = stability::theorem1_check(&c, &d, psi)
            .map_err(|e| anyhow::anyhow!("stability check failed: {e}"))?;
        let margin = report.epsilon - report.lhs;
        if !report.satisfied {
            violations += 1;
        }
        if margin < worst_margin {
            worst_margin = margin;
        }
        reports.push(serde_json::json!({
            "pair": i,
            "lhs": report.lhs,
            "bound": report.epsilon,
            "w_inf": report.w_inf,
            "satisfied": report.satisfied,
        }));
    }
    let summary = serde_json::json!({
        "psi": psi.name(),
        "pairs": pairs,
        "seed": seed,
        "violations": violations,
        "worst_margin": worst_margin,
        "reports": reports,
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    if violations > 0 {
        bail!("{violations} stability violations found");
    }
    Ok(())
}

fn random_small_diagram(rng: &mut ChaCha8Rng) -> percurve::persistence::PersistenceDiagram {
    let n = rng.gen_range(1..=20);
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let b: f64 = rng.gen_range(0.0..100.0);
            let d = b + rng.gen_range(0.5..50.0);
            (b, d)
        })
        .collect();
    percurve::persistence::PersistenceDiagram::new(0, pairs)
}

fn cmd_bench(
    sizes: Vec<usize>,
    grids: Vec<usize>,
    trials: usize,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<()> {
    let spec = BenchmarkSpec {
        diagram_sizes: sizes,
        grid_sizes: grids,
        trials,
        seed,
    };
    let rows = run_benchmark(&spec);
    match out {
        Some(path) => {
            let file = File::create(&path)
                .with_context(|| format!("creating {}", path.display()))?;
            write_csv(&rows, file)?;
        }
        None => {
            let stdout = std::io::stdout();
            write_csv(&rows, stdout.lock())?;
        }
    }
    Ok(())
}

fn cmd_noise(image_path: &PathBuf, seed: u64, out: Option<PathBuf>) -> Result<()> {
    let decoded = read_image(image_path)?;
    if decoded.channels.len() != 1 {
        bail!("noise injection expects a single-channel image");
    }
    let noisy = add_gaussian_noise(&decoded.channels[0], seed);
    let out = out.unwrap_or_else(|| {
        let stem = image_path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "image".to_string());
        image_path.with_file_name(format!("{stem}.noisy.pgm"))
    });
    write_pgm(&out, &noisy)?;
    eprintln!("wrote {}", out.display());
    std::io::stderr().flush().ok();
    Ok(())
}
