//! Additive Gaussian pixel noise.
//!
//! Each pixel receives an independent draw from a standard normal, rounded
//! to the nearest integer and clamped into 0..=255. The generator is a
//! seeded ChaCha8 stream, so the output is a deterministic function of the
//! input image and the seed.

use percurve::cubical::GrayscaleImage;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn add_gaussian_noise(image: &GrayscaleImage, seed: u64) -> GrayscaleImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    add_gaussian_noise_rng(image, &mut rng)
}

pub fn add_gaussian_noise_rng<R: rand::Rng>(image: &GrayscaleImage, rng: &mut R) -> GrayscaleImage {
    let values = image
        .values()
        .iter()
        .map(|&v| {
            let delta: f64 = StandardNormal.sample(rng);
            (v as f64 + delta.round()).clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayscaleImage::new(image.width(), image.height(), values).unwrap()
}
