//! Feature-extraction configuration, mirrored by the JSON config file.

use serde::{Deserialize, Serialize};

/// Registered curve names.
pub const CURVE_NAMES: &[&str] = &[
    "betti", "life", "midlife", "mul", "le", "mle", "mule", "ecc", "phi", "landscape",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelMode {
    #[default]
    Grayscale,
    RgbSplit,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureConfig {
    /// Ordered curve names; `landscape` may carry a rank as `landscape:3`.
    pub curves: Vec<String>,
    #[serde(default = "default_true")]
    pub use_complement: bool,
    #[serde(default)]
    pub include_statistics: bool,
    /// Threshold grid; defaults to the integers 0..=255.
    #[serde(default)]
    pub grid: Option<Vec<f64>>,
    #[serde(default)]
    pub channels: ChannelMode,
}

fn default_true() -> bool {
    true
}

impl FeatureConfig {
    pub fn with_curves(curves: &[&str]) -> Self {
        FeatureConfig {
            curves: curves.iter().map(|s| s.to_string()).collect(),
            use_complement: true,
            include_statistics: false,
            grid: None,
            channels: ChannelMode::Grayscale,
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        self.grid.clone().unwrap_or_else(percurve::curves::grid_0_255)
    }
}
