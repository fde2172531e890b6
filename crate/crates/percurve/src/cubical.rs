//! Images as filtered cubical complexes.
//!
//! A pixel at row `i`, column `j` is the closed elementary square
//! `[i, i+1] x [j, j+1]`. Its faces (edges and vertices) carry the minimum
//! filtration value over all pixels containing them, so the subcomplex of
//! cells with value `<= t` is exactly the cubical closure of the sublevel
//! binary image `I_t`.
//!
//! Because pixels are closed squares, two white pixels that share only a
//! corner are connected; holes are therefore 4-connected regions of black
//! pixels. [`betti_oracle`] computes Betti numbers of a binary image by
//! union-find and the Euler characteristic only, independent of the
//! boundary-matrix reduction in [`crate::persistence`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Error building a [`GrayscaleImage`] from raw parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageError {
    /// Width or height was zero.
    EmptyDimensions,
    /// `values.len() != width * height`.
    LengthMismatch { expected: usize, actual: usize },
}

impl fmt::Display for ImageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageError::EmptyDimensions => write!(f, "image dimensions must be positive"),
            ImageError::LengthMismatch { expected, actual } => {
                write!(f, "expected {expected} pixel values, got {actual}")
            }
        }
    }
}

/// An integer raster with values in `[0, 255]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayscaleImage {
    width: usize,
    height: usize,
    values: Vec<u8>,
}

impl GrayscaleImage {
    pub fn new(width: usize, height: usize, values: Vec<u8>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::EmptyDimensions);
        }
        if values.len() != width * height {
            return Err(ImageError::LengthMismatch {
                expected: width * height,
                actual: values.len(),
            });
        }
        Ok(GrayscaleImage {
            width,
            height,
            values,
        })
    }

    /// Constant image of the given value.
    pub fn constant(width: usize, height: usize, value: u8) -> Result<Self, ImageError> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Build from rows; all rows must have equal, nonzero length.
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self, ImageError> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let mut values = Vec::with_capacity(width * height);
        for row in rows {
            if row.len() != width {
                return Err(ImageError::LengthMismatch {
                    expected: width,
                    actual: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(width, height, values)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Pixel value at row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.values[i * self.width + j]
    }

    /// Sublevel-set binary image: white where `I(i,j) <= t`.
    pub fn threshold(&self, t: u8) -> BinaryImage {
        BinaryImage {
            width: self.width,
            height: self.height,
            mask: self.values.iter().map(|&v| v <= t).collect(),
        }
    }

    /// The complement image `255 - I(i,j)`; an involution.
    pub fn complement(&self) -> GrayscaleImage {
        GrayscaleImage {
            width: self.width,
            height: self.height,
            values: self.values.iter().map(|&v| 255 - v).collect(),
        }
    }
}

/// A binary image; `true` pixels are white (foreground).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, mask: Vec<bool>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::EmptyDimensions);
        }
        if mask.len() != width * height {
            return Err(ImageError::LengthMismatch {
                expected: width * height,
                actual: mask.len(),
            });
        }
        Ok(BinaryImage {
            width,
            height,
            mask,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.width + j]
    }
}

/// Orientation of a 1-cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// An elementary cube of the image complex.
///
/// `anchor` is the lattice coordinate `(row, col)` of the cell's lower-left
/// corner: the 2-cell of pixel `(i,j)` has anchor `(i,j)`, the vertex at
/// lattice point `(r,c)` has anchor `(r,c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub dimension: u8,
    pub anchor: (u32, u32),
    pub orientation: Option<Orientation>,
    pub filtration_value: u8,
}

/// All elementary cubes of an image, sorted by
/// `(filtration_value, dimension, anchor)`, with mod-2 boundary lists.
///
/// Facet indices always precede the cell they bound in the sorted order, so
/// the order is a valid filtration order.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    cells: Vec<Cell>,
    boundary: Vec<Vec<usize>>,
}

impl FilteredComplex {
    /// Cells in filtration order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Facets of cell `i`, as indices into [`Self::cells`], ascending.
    pub fn boundary(&self, i: usize) -> &[usize] {
        &self.boundary[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Mod-2 boundary chain of a cell: 4 edges for a square, 2 vertices for
    /// an edge, empty for a vertex.
    pub fn boundary_chain(&self, i: usize) -> Vec<Cell> {
        self.boundary[i].iter().map(|&f| self.cells[f]).collect()
    }

    /// Count of cells of each dimension `(n0, n1, n2)`.
    pub fn cell_counts(&self) -> (usize, usize, usize) {
        let mut counts = [0usize; 3];
        for c in &self.cells {
            counts[c.dimension as usize] += 1;
        }
        (counts[0], counts[1], counts[2])
    }
}

// The complex is laid out on the (2h+1) x (2w+1) "doubled" grid: grid point
// (gr, gc) is a vertex when both coordinates are even, an edge when exactly
// one is odd, and a pixel square when both are odd. Pixel (i,j) sits at
// (2i+1, 2j+1).
fn grid_value(image: &GrayscaleImage, gr: usize, gc: usize) -> u8 {
    let rows = incident_pixel_range(gr, image.height);
    let cols = incident_pixel_range(gc, image.width);
    let mut v = u8::MAX;
    for i in rows.clone() {
        for j in cols.clone() {
            v = v.min(image.get(i, j));
        }
    }
    v
}

// Pixel indices along one axis whose closed square touches doubled
// coordinate `g` (axis length `n` pixels).
fn incident_pixel_range(g: usize, n: usize) -> core::ops::Range<usize> {
    if g % 2 == 1 {
        let i = (g - 1) / 2;
        i..i + 1
    } else {
        let lo = (g / 2).saturating_sub(1);
        let hi = (g / 2).min(n - 1);
        if g == 0 {
            0..1
        } else if g / 2 == n {
            n - 1..n
        } else {
            lo..hi + 1
        }
    }
}

fn cell_at(image: &GrayscaleImage, gr: usize, gc: usize) -> Cell {
    let dim = (gr % 2 + gc % 2) as u8;
    let orientation = match (gr % 2, gc % 2) {
        (0, 1) => Some(Orientation::Horizontal),
        (1, 0) => Some(Orientation::Vertical),
        _ => None,
    };
    Cell {
        dimension: dim,
        anchor: ((gr / 2) as u32, (gc / 2) as u32),
        orientation,
        filtration_value: grid_value(image, gr, gc),
    }
}

/// Build the full filtered cubical complex of a grayscale image.
///
/// Contains `(w+1)(h+1)` vertices, `w(h+1) + h(w+1)` edges and `wh` squares;
/// the subcomplex of cells with filtration value `<= t` is the cubical
/// closure of `image.threshold(t)`.
pub fn build_filtered_complex(image: &GrayscaleImage) -> FilteredComplex {
    let (w, h) = (image.width, image.height);
    let (gw, gh) = (2 * w + 1, 2 * h + 1);
    let n = gw * gh;

    // Sort doubled-grid indices into filtration order.
    let mut order: Vec<usize> = (0..n).collect();
    let key = |g: usize| {
        let (gr, gc) = (g / gw, g % gw);
        let c = cell_at(image, gr, gc);
        (c.filtration_value, c.dimension, c.anchor, gr, gc)
    };
    order.sort_unstable_by_key(|&g| key(g));

    let mut rank = vec![0usize; n];
    for (pos, &g) in order.iter().enumerate() {
        rank[g] = pos;
    }

    let mut cells = Vec::with_capacity(n);
    let mut boundary = Vec::with_capacity(n);
    for &g in &order {
        let (gr, gc) = (g / gw, g % gw);
        cells.push(cell_at(image, gr, gc));
        let mut facets: Vec<usize> = match (gr % 2, gc % 2) {
            (0, 0) => Vec::new(),
            (0, 1) => vec![rank[gr * gw + gc - 1], rank[gr * gw + gc + 1]],
            (1, 0) => vec![rank[(gr - 1) * gw + gc], rank[(gr + 1) * gw + gc]],
            (1, 1) => vec![
                rank[(gr - 1) * gw + gc],
                rank[(gr + 1) * gw + gc],
                rank[gr * gw + gc - 1],
                rank[gr * gw + gc + 1],
            ],
            _ => unreachable!(),
        };
        facets.sort_unstable();
        boundary.push(facets);
    }
    FilteredComplex { cells, boundary }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Betti numbers `(beta0, beta1)` of the white cubical set of a binary
/// image, by union-find and the Euler characteristic.
///
/// White pixels are connected when their closed squares intersect (shared
/// edge or shared corner). `beta1 = beta0 - chi` with `chi = V - E + F` of
/// the white subcomplex. An all-black image gives `(0, 0)`.
pub fn betti_oracle(binary: &BinaryImage) -> (usize, usize) {
    let (w, h) = (binary.width, binary.height);
    let mut uf = UnionFind::new(w * h);
    let mut components = 0usize;
    for i in 0..h {
        for j in 0..w {
            if !binary.get(i, j) {
                continue;
            }
            components += 1;
            // Neighbors already visited in row-major order: W, NW, N, NE.
            let neighbors: [(isize, isize); 4] = [(0, -1), (-1, -1), (-1, 0), (-1, 1)];
            for (di, dj) in neighbors {
                let (ni, nj) = (i as isize + di, j as isize + dj);
                if ni >= 0 && nj >= 0 && (nj as usize) < w && binary.get(ni as usize, nj as usize)
                {
                    if uf.union(i * w + j, ni as usize * w + nj as usize) {
                        components -= 1;
                    }
                }
            }
        }
    }
    let chi = euler_characteristic(binary);
    let beta1 = components as i64 - chi;
    debug_assert!(beta1 >= 0);
    (components, beta1 as usize)
}

/// `V - E + F` of the cubical closure of the white pixels.
pub fn euler_characteristic(binary: &BinaryImage) -> i64 {
    let (w, h) = (binary.width, binary.height);
    let mut chi = 0i64;
    for gr in 0..2 * h + 1 {
        for gc in 0..2 * w + 1 {
            let rows = incident_pixel_range(gr, h);
            let cols = incident_pixel_range(gc, w);
            let present = rows
                .clone()
                .any(|i| cols.clone().any(|j| binary.get(i, j)));
            if present {
                chi += if (gr % 2 + gc % 2) % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    chi
}
