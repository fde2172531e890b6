//! Feature-vector assembly.
//!
//! Per channel, the diagrams of the image (and of its complement when
//! configured) are computed once, capped at 256, and every configured
//! curve is evaluated on the grid. Blocks are concatenated channel-major:
//! for each curve the order is `[D0(I), D1(I), D0(I^C), D1(I^C)]`, so with
//! the default grid the Betti-curve layout is `0..256 = beta0(I)`,
//! `256..512 = beta1(I)`, `512..768 = beta0(I^C)`, `768..1024 =
//! beta1(I^C)`. Statistics blocks (18 values per diagram) follow the
//! curves of each channel. The layout manifest records every block.

use percurve::cubical::GrayscaleImage;
use percurve::curves::{self, PersistenceCurve};
use percurve::persistence::{image_diagrams, PersistenceDiagram, IMAGE_DEATH_CAP};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::FeatureConfig;

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("unknown curve name {0:?}")]
    UnknownCurve(String),
    #[error("grid must be nonempty and strictly increasing")]
    BadGrid,
    #[error("image error: {0}")]
    Image(String),
}

/// One contiguous block of a feature vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutBlock {
    pub start: usize,
    pub len: usize,
    pub channel: usize,
    /// Whether the block was computed on the complement image.
    pub complement: bool,
    /// Homology dimension of the source diagram; `None` for ECC blocks,
    /// which combine dimensions.
    pub dimension: Option<u8>,
    /// Curve name, or `"statistics"`.
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub layout: Vec<LayoutBlock>,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn block(&self, b: &LayoutBlock) -> &[f64] {
        &self.values[b.start..b.start + b.len]
    }
}

struct ChannelDiagrams {
    image: (PersistenceDiagram, PersistenceDiagram),
    complement: Option<(PersistenceDiagram, PersistenceDiagram)>,
}

fn capped_diagrams(image: &GrayscaleImage) -> (PersistenceDiagram, PersistenceDiagram) {
    let (d0, d1) = image_diagrams(image);
    (
        d0.cap_infinite(IMAGE_DEATH_CAP).expect("cap above range"),
        d1.cap_infinite(IMAGE_DEATH_CAP).expect("cap above range"),
    )
}

fn parse_curve(name: &str) -> Result<(String, Option<usize>), FeatureError> {
    if let Some(rank) = name.strip_prefix("landscape:") {
        let k: usize = rank
            .parse()
            .map_err(|_| FeatureError::UnknownCurve(name.to_string()))?;
        if k == 0 {
            return Err(FeatureError::UnknownCurve(name.to_string()));
        }
        return Ok(("landscape".to_string(), Some(k)));
    }
    match name {
        "betti" | "life" | "midlife" | "mul" | "le" | "mle" | "mule" | "ecc" | "phi" => {
            Ok((name.to_string(), None))
        }
        "landscape" => Ok(("landscape".to_string(), Some(1))),
        _ => Err(FeatureError::UnknownCurve(name.to_string())),
    }
}

fn curve_values(
    kind: &str,
    k: Option<usize>,
    diagram: &PersistenceDiagram,
    grid: &[f64],
) -> PersistenceCurve {
    match kind {
        "betti" => curves::betti_curve(diagram, grid),
        "life" => curves::life_curve(diagram, grid),
        "midlife" => curves::midlife_curve(diagram, grid),
        "mul" => curves::mul_curve(diagram, grid),
        "le" => curves::le_curve(diagram, grid),
        "mle" => curves::mle_curve(diagram, grid),
        "mule" => curves::mule_curve(diagram, grid),
        "phi" => curves::phi_curve(diagram, grid),
        "landscape" => curves::landscape_k(diagram, k.unwrap_or(1), grid),
        _ => unreachable!("validated curve name"),
    }
}

/// Extract the configured features from the channels of one image.
pub fn extract_features(
    channels: &[GrayscaleImage],
    config: &FeatureConfig,
) -> Result<FeatureVector, FeatureError> {
    let grid = config.grid();
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FeatureError::BadGrid);
    }
    let parsed: Vec<(String, Option<usize>)> = config
        .curves
        .iter()
        .map(|n| parse_curve(n))
        .collect::<Result<_, _>>()?;

    let mut values = Vec::new();
    let mut layout = Vec::new();
    for (channel_index, channel) in channels.iter().enumerate() {
        let diagrams = ChannelDiagrams {
            image: capped_diagrams(channel),
            complement: config
                .use_complement
                .then(|| capped_diagrams(&channel.complement())),
        };
        let sources: Vec<(bool, &(PersistenceDiagram, PersistenceDiagram))> =
            std::iter::once((false, &diagrams.image))
                .chain(diagrams.complement.iter().map(|d| (true, d)))
                .collect();

        for (name, k) in &parsed {
            if name == "ecc" {
                for &(complement, (d0, d1)) in &sources {
                    let curve = curves::ecc(&[d0, d1], &grid);
                    push_block(
                        &mut values,
                        &mut layout,
                        curve.values,
                        channel_index,
                        complement,
                        None,
                        "ecc",
                    );
                }
            } else {
                for &(complement, (d0, d1)) in &sources {
                    for (dim, diagram) in [(0u8, d0), (1u8, d1)] {
                        let curve = curve_values(name, *k, diagram, &grid);
                        let kind = match k {
                            Some(k) if name == "landscape" => format!("landscape:{k}"),
                            _ => name.clone(),
                        };
                        push_block(
                            &mut values,
                            &mut layout,
                            curve.values,
                            channel_index,
                            complement,
                            Some(dim),
                            &kind,
                        );
                    }
                }
            }
        }

        if config.include_statistics {
            for &(complement, (d0, d1)) in &sources {
                for (dim, diagram) in [(0u8, d0), (1u8, d1)] {
                    let stats = curves::persistence_statistics(diagram);
                    push_block(
                        &mut values,
                        &mut layout,
                        stats.to_vec(),
                        channel_index,
                        complement,
                        Some(dim),
                        "statistics",
                    );
                }
            }
        }
    }
    Ok(FeatureVector { values, layout })
}

fn push_block(
    values: &mut Vec<f64>,
    layout: &mut Vec<LayoutBlock>,
    block: Vec<f64>,
    channel: usize,
    complement: bool,
    dimension: Option<u8>,
    kind: &str,
) {
    layout.push(LayoutBlock {
        start: values.len(),
        len: block.len(),
        channel,
        complement,
        dimension,
        kind: kind.to_string(),
    });
    values.extend(block);
}
