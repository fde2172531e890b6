//! Persistence diagrams via mod-2 boundary-matrix reduction.
//!
//! Cells are processed in the filtration order fixed by
//! [`crate::cubical::build_filtered_complex`]; the standard left-to-right
//! column algorithm pairs each death cell with the birth cell of the class
//! it kills (elder rule). Zero-persistence pairs are pruned at construction.
//!
//! Infinite deaths of essential classes are retained until explicitly
//! capped with [`PersistenceDiagram::cap_infinite`]. The recommended cap
//! for image-derived diagrams is 256 (one past the maximum pixel value), so
//! that `betti_at(255)` still counts every essential class.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cubical::FilteredComplex;

/// Cap for image-derived diagrams: one past the maximum pixel value, so
/// the window condition `d > t` holds at `t = 255` for essential classes.
pub const IMAGE_DEATH_CAP: f64 = 256.0;

/// A single birth-death pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub birth: f64,
    pub death: f64,
    pub dimension: u8,
}

/// Error from [`PersistenceDiagram::cap_infinite`].
#[derive(Debug, Clone, PartialEq)]
pub enum CapError {
    /// The requested cap is below some birth or finite death.
    Inconsistent { cap: f64, required: f64 },
}

impl fmt::Display for CapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapError::Inconsistent { cap, required } => {
                write!(f, "cap {cap} is below a diagram value {required}")
            }
        }
    }
}

/// A multiset of `(birth, death)` pairs for one homology dimension.
///
/// The diagonal is implicit and never stored; stored pairs satisfy
/// `birth < death` (zero-persistence pairs are discarded on construction).
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    pairs: Vec<(f64, f64)>,
    dimension: u8,
    death_cap: Option<f64>,
}

impl PersistenceDiagram {
    /// Build a diagram, discarding pairs with `birth == death`.
    pub fn new(dimension: u8, pairs: Vec<(f64, f64)>) -> Self {
        let pairs = pairs.into_iter().filter(|&(b, d)| b < d).collect();
        PersistenceDiagram {
            pairs,
            dimension,
            death_cap: None,
        }
    }

    pub fn empty(dimension: u8) -> Self {
        Self::new(dimension, Vec::new())
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn dimension(&self) -> u8 {
        self.dimension
    }

    pub fn death_cap(&self) -> Option<f64> {
        self.death_cap
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether any stored pair has death `+inf`.
    pub fn has_infinite_deaths(&self) -> bool {
        self.pairs.iter().any(|&(_, d)| d.is_infinite())
    }

    /// Replace every infinite death by `cap` and record it. Idempotent.
    ///
    /// Errors if `cap` is below any birth or any finite death.
    pub fn cap_infinite(&self, cap: f64) -> Result<PersistenceDiagram, CapError> {
        let mut required = f64::NEG_INFINITY;
        for &(b, d) in &self.pairs {
            required = required.max(b);
            if d.is_finite() {
                required = required.max(d);
            }
        }
        if required > cap {
            return Err(CapError::Inconsistent { cap, required });
        }
        let pairs = self
            .pairs
            .iter()
            .map(|&(b, d)| (b, if d.is_infinite() { cap } else { d }))
            .filter(|&(b, d)| b < d)
            .collect();
        Ok(PersistenceDiagram {
            pairs,
            dimension: self.dimension,
            death_cap: Some(cap),
        })
    }

    /// The Betti number at threshold `t`: the count of stored pairs with
    /// `b <= t < d` (the fundamental box).
    pub fn betti_at(&self, t: f64) -> usize {
        self.pairs.iter().filter(|&&(b, d)| b <= t && d > t).count()
    }

    /// Stored pairs as [`PersistencePair`] values.
    pub fn iter_pairs(&self) -> impl Iterator<Item = PersistencePair> + '_ {
        let dim = self.dimension;
        self.pairs.iter().map(move |&(birth, death)| PersistencePair {
            birth,
            death,
            dimension: dim,
        })
    }
}

/// Reduce the boundary matrix of a filtered complex and return the
/// dimension-0 and dimension-1 diagrams.
///
/// Unpaired 0-cells become essential classes with death `+inf`. For
/// complexes built from 2D images the full complex is a solid rectangle, so
/// dimension 1 has no essential classes; any that do arise (from other
/// complexes) are emitted with death `+inf` as well.
pub fn compute_persistence(complex: &FilteredComplex) -> (PersistenceDiagram, PersistenceDiagram) {
    let n = complex.len();
    let dimensions: Vec<u8> = complex.cells().iter().map(|c| c.dimension).collect();
    let values: Vec<f64> = complex
        .cells()
        .iter()
        .map(|c| c.filtration_value as f64)
        .collect();
    let boundary: Vec<&[usize]> = (0..n).map(|i| complex.boundary(i)).collect();
    reduce_boundary_matrix(&dimensions, &values, &boundary)
}

/// Standard column reduction over an explicit filtration order.
///
/// `boundary[j]` lists the facets of cell `j` as ascending indices, all
/// `< j`. Exposed so alternative (but filtration-compatible) tie-break
/// orders can be reduced and compared.
pub fn reduce_boundary_matrix(
    dimensions: &[u8],
    filtration_values: &[f64],
    boundary: &[&[usize]],
) -> (PersistenceDiagram, PersistenceDiagram) {
    let n = boundary.len();
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(n);
    // pivot[i] = column whose low is i.
    let mut pivot: Vec<Option<usize>> = vec![None; n];
    let mut paired = vec![false; n];
    let mut pairs0 = Vec::new();
    let mut pairs1 = Vec::new();

    for j in 0..n {
        let mut col = boundary[j].to_vec();
        while let Some(&low) = col.last() {
            match pivot[low] {
                Some(k) => col = xor_sorted(&col, &reduced[k]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            pivot[low] = Some(j);
            paired[low] = true;
            paired[j] = true;
            let pair = (filtration_values[low], filtration_values[j]);
            match dimensions[low] {
                0 => pairs0.push(pair),
                1 => pairs1.push(pair),
                _ => {}
            }
        }
        reduced.push(col);
    }

    // Positive, never-killed cells are essential.
    for i in 0..n {
        if !paired[i] && reduced[i].is_empty() {
            let pair = (filtration_values[i], f64::INFINITY);
            match dimensions[i] {
                0 => pairs0.push(pair),
                1 => pairs1.push(pair),
                _ => {}
            }
        }
    }

    (
        PersistenceDiagram::new(0, pairs0),
        PersistenceDiagram::new(1, pairs1),
    )
}

/// Diagrams of an image's sublevel filtration, uncapped.
pub fn image_diagrams(
    image: &crate::cubical::GrayscaleImage,
) -> (PersistenceDiagram, PersistenceDiagram) {
    compute_persistence(&crate::cubical::build_filtered_complex(image))
}

// Symmetric difference of two ascending index lists.
fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{betti_oracle, GrayscaleImage};

    fn img(rows: &[&[u8]]) -> GrayscaleImage {
        GrayscaleImage::from_rows(rows).unwrap()
    }

    #[test]
    fn constant_image() {
        let (d0, d1) = image_diagrams(&GrayscaleImage::constant(4, 3, 7).unwrap());
        assert_eq!(d0.pairs(), &[(7.0, f64::INFINITY)]);
        assert!(d1.is_empty());
    }

    #[test]
    fn two_components_merge_by_elder_rule() {
        let (d0, d1) = image_diagrams(&img(&[&[5, 9, 5]]));
        let mut pairs = d0.pairs().to_vec();
        pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(pairs, vec![(5.0, 9.0), (5.0, f64::INFINITY)]);
        assert!(d1.is_empty());

        // Cross-check with the oracle at thresholds around the events.
        let capped = d0.cap_infinite(IMAGE_DEATH_CAP).unwrap();
        let i = img(&[&[5, 9, 5]]);
        for t in [4u8, 5, 8, 9] {
            assert_eq!(capped.betti_at(t as f64), betti_oracle(&i.threshold(t)).0);
        }
    }

    #[test]
    fn ring_opens_and_fills() {
        // Ring of value 10 around interior 200, exterior 10: one loop from
        // 10 until the interior enters at 200.
        let i = img(&[
            &[10, 10, 10, 10, 10],
            &[10, 10, 10, 10, 10],
            &[10, 10, 200, 10, 10],
            &[10, 10, 10, 10, 10],
            &[10, 10, 10, 10, 10],
        ]);
        let (_, d1) = image_diagrams(&i);
        assert_eq!(d1.pairs(), &[(10.0, 200.0)]);
        assert_eq!(betti_oracle(&i.threshold(10)).1, 1);
        assert_eq!(betti_oracle(&i.threshold(200)).1, 0);
    }

    #[test]
    fn cap_examples() {
        let d = PersistenceDiagram::new(0, vec![(5.0, f64::INFINITY)]);
        let capped = d.cap_infinite(256.0).unwrap();
        assert_eq!(capped.pairs(), &[(5.0, 256.0)]);
        assert_eq!(capped.death_cap(), Some(256.0));
        // Idempotent on a diagram without infinite deaths.
        assert_eq!(capped.cap_infinite(256.0).unwrap().pairs(), capped.pairs());

        let d = PersistenceDiagram::new(0, vec![(5.0, f64::INFINITY), (3.0, 200.0)]);
        let capped = d.cap_infinite(255.0).unwrap();
        let mut pairs = capped.pairs().to_vec();
        pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(pairs, vec![(3.0, 200.0), (5.0, 255.0)]);

        let d = PersistenceDiagram::new(0, vec![(5.0, f64::INFINITY)]);
        assert!(d.cap_infinite(4.0).is_err());
    }

    #[test]
    fn betti_at_examples() {
        assert_eq!(PersistenceDiagram::empty(0).betti_at(17.0), 0);

        let i = img(&[&[0, 200], &[200, 90]]);
        let (d0, _) = image_diagrams(&i);
        let capped = d0.cap_infinite(IMAGE_DEATH_CAP).unwrap();
        assert_eq!(capped.betti_at(255.0), betti_oracle(&i.threshold(255)).0);
        assert_eq!(capped.betti_at(255.0), 1);
    }

    #[test]
    fn zero_persistence_pairs_pruned() {
        let d = PersistenceDiagram::new(1, vec![(3.0, 3.0), (1.0, 2.0)]);
        assert_eq!(d.pairs(), &[(1.0, 2.0)]);
    }

    #[test]
    fn pair_count_bounded_by_half_cells() {
        let i = img(&[&[9, 1, 4], &[3, 8, 2], &[5, 7, 6]]);
        let cx = crate::cubical::build_filtered_complex(&i);
        let (d0, d1) = compute_persistence(&cx);
        assert!(d0.len() + d1.len() <= cx.len() / 2 + 1);
    }

    // Fundamental Lemma equivalence on random images; the central test of
    // this module. More images are exercised in the acceptance suite.
    #[test]
    fn fundamental_lemma_on_random_images() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let w = rng.gen_range(1..=12);
            let h = rng.gen_range(1..=12);
            let values: alloc::vec::Vec<u8> = (0..w * h).map(|_| rng.gen()).collect();
            let i = GrayscaleImage::new(w, h, values).unwrap();
            let (d0, d1) = image_diagrams(&i);
            let d0 = d0.cap_infinite(IMAGE_DEATH_CAP).unwrap();
            let d1 = d1.cap_infinite(IMAGE_DEATH_CAP).unwrap();
            for t in 0..=255u32 {
                let (b0, b1) = betti_oracle(&i.threshold(t as u8));
                assert_eq!(d0.betti_at(t as f64), b0);
                assert_eq!(d1.betti_at(t as f64), b1);
            }
        }
    }

    // Any order compatible with the filtration yields the same diagram:
    // shuffle ties within (value, dimension) groups and re-reduce.
    #[test]
    fn shuffled_tie_order_gives_same_diagram() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let w = rng.gen_range(1..=8);
            let h = rng.gen_range(1..=8);
            // Few distinct values to force many ties.
            let values: alloc::vec::Vec<u8> =
                (0..w * h).map(|_| rng.gen_range(0..3) * 100).collect();
            let i = GrayscaleImage::new(w, h, values).unwrap();
            let cx = crate::cubical::build_filtered_complex(&i);
            let (d0, d1) = compute_persistence(&cx);

            // Random keys, stable within (value, dim) so faces still precede
            // cofaces of equal value.
            let n = cx.len();
            let mut perm: alloc::vec::Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mut order: alloc::vec::Vec<usize> = (0..n).collect();
            order.sort_by_key(|&j| {
                (
                    cx.cells()[j].filtration_value,
                    cx.cells()[j].dimension,
                    perm[j],
                )
            });
            let mut rank = alloc::vec![0usize; n];
            for (pos, &j) in order.iter().enumerate() {
                rank[j] = pos;
            }
            let dims: alloc::vec::Vec<u8> =
                order.iter().map(|&j| cx.cells()[j].dimension).collect();
            let vals: alloc::vec::Vec<f64> = order
                .iter()
                .map(|&j| cx.cells()[j].filtration_value as f64)
                .collect();
            let cols: alloc::vec::Vec<alloc::vec::Vec<usize>> = order
                .iter()
                .map(|&j| {
                    let mut facets: alloc::vec::Vec<usize> =
                        cx.boundary(j).iter().map(|&f| rank[f]).collect();
                    facets.sort_unstable();
                    facets
                })
                .collect();
            let col_refs: alloc::vec::Vec<&[usize]> =
                cols.iter().map(|c| c.as_slice()).collect();
            let (e0, e1) = reduce_boundary_matrix(&dims, &vals, &col_refs);

            let sort = |d: &PersistenceDiagram| {
                let mut p = d.pairs().to_vec();
                p.sort_by(|a, b| a.partial_cmp(b).unwrap());
                p
            };
            assert_eq!(sort(&d0), sort(&e0));
            assert_eq!(sort(&d1), sort(&e1));
        }
    }

    #[test]
    fn essential_classes_match_full_image_components() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let w = rng.gen_range(1..=10);
            let h = rng.gen_range(1..=10);
            let values: alloc::vec::Vec<u8> = (0..w * h).map(|_| rng.gen_range(0..4) * 80).collect();
            let i = GrayscaleImage::new(w, h, values).unwrap();
            let (d0, d1) = image_diagrams(&i);
            let essential0 = d0.pairs().iter().filter(|p| p.1.is_infinite()).count();
            let essential1 = d1.pairs().iter().filter(|p| p.1.is_infinite()).count();
            let (b0, b1) = betti_oracle(&i.threshold(255));
            assert_eq!(essential0, b0);
            assert_eq!(essential1, b1);
            assert_eq!(essential1, 0);
        }
    }
}
