//! Netpbm image ingestion: PGM (P2 ASCII, P5 binary) and PPM (P3, P6) with
//! maxval <= 255. PPM images are split into their R, G, B channels, each
//! treated as a grayscale image. PNG grayscale is available behind the
//! `png` feature.

use std::fs;
use std::path::Path;

use percurve::cubical::GrayscaleImage;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NetpbmError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("unsupported netpbm magic {0:?} (expected P2, P3, P5, or P6)")]
    BadMagic(String),
    #[error("malformed netpbm header")]
    BadHeader,
    #[error("maxval {0} unsupported (must be 1..=255)")]
    BadMaxval(u32),
    #[error("truncated pixel data: expected {expected} samples, got {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("sample value {0} exceeds maxval {1}")]
    SampleRange(u32, u32),
    #[error("invalid image geometry: {0}")]
    Geometry(String),
}

/// A decoded raster: one channel for PGM, three for PPM.
pub struct Channels {
    pub width: usize,
    pub height: usize,
    pub channels: Vec<GrayscaleImage>,
}

/// Read a PGM or PPM file.
pub fn read_netpbm(path: &Path) -> Result<Channels, NetpbmError> {
    let bytes = fs::read(path).map_err(|source| NetpbmError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_netpbm(&bytes)
}

/// Read an image by extension: `.pgm`/`.ppm` always; `.png` behind the
/// `png` feature.
pub fn read_image(path: &Path) -> Result<Channels, NetpbmError> {
    match path.extension().and_then(|e| e.to_str()) {
        #[cfg(feature = "png")]
        Some("png") => read_png(path),
        _ => read_netpbm(path),
    }
}

#[cfg(feature = "png")]
fn read_png(path: &Path) -> Result<Channels, NetpbmError> {
    let img = image::open(path).map_err(|e| NetpbmError::Geometry(e.to_string()))?;
    let rgb = img.to_rgb8();
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    let mut planes = vec![Vec::with_capacity(w * h); 3];
    for px in rgb.pixels() {
        for c in 0..3 {
            planes[c].push(px.0[c]);
        }
    }
    let gray = img.to_luma8();
    let channels = if planes[0] == planes[1] && planes[1] == planes[2] {
        vec![GrayscaleImage::new(w, h, gray.into_raw())
            .map_err(|e| NetpbmError::Geometry(e.to_string()))?]
    } else {
        planes
            .into_iter()
            .map(|p| GrayscaleImage::new(w, h, p).map_err(|e| NetpbmError::Geometry(e.to_string())))
            .collect::<Result<_, _>>()?
    };
    Ok(Channels {
        width: w,
        height: h,
        channels,
    })
}

fn parse_netpbm(bytes: &[u8]) -> Result<Channels, NetpbmError> {
    if bytes.len() < 2 {
        return Err(NetpbmError::BadHeader);
    }
    let magic = std::str::from_utf8(&bytes[..2]).map_err(|_| NetpbmError::BadHeader)?;
    let (samples_per_pixel, ascii) = match magic {
        "P2" => (1, true),
        "P3" => (3, true),
        "P5" => (1, false),
        "P6" => (3, false),
        other => return Err(NetpbmError::BadMagic(other.to_string())),
    };

    let mut cursor = 2;
    let width = next_header_token(bytes, &mut cursor)?;
    let height = next_header_token(bytes, &mut cursor)?;
    let maxval = next_header_token(bytes, &mut cursor)?;
    if maxval == 0 || maxval > 255 {
        return Err(NetpbmError::BadMaxval(maxval));
    }
    let (w, h) = (width as usize, height as usize);
    let expected = w * h * samples_per_pixel;

    let samples: Vec<u8> = if ascii {
        let mut out = Vec::with_capacity(expected);
        while out.len() < expected {
            let v = match next_header_token(bytes, &mut cursor) {
                Ok(v) => v,
                Err(_) => break,
            };
            if v > maxval {
                return Err(NetpbmError::SampleRange(v, maxval));
            }
            out.push(v as u8);
        }
        out
    } else {
        // Exactly one whitespace byte follows the maxval.
        let data = &bytes[cursor..];
        for &b in data.iter().take(expected) {
            if b as u32 > maxval {
                return Err(NetpbmError::SampleRange(b as u32, maxval));
            }
        }
        data.iter().take(expected).copied().collect()
    };
    if samples.len() != expected {
        return Err(NetpbmError::Truncated {
            expected,
            actual: samples.len(),
        });
    }

    // Rescale to the full 0..=255 range when maxval < 255.
    let scale = |v: u8| -> u8 {
        if maxval == 255 {
            v
        } else {
            ((v as u32 * 255 + maxval / 2) / maxval) as u8
        }
    };

    let mut channels = Vec::with_capacity(samples_per_pixel);
    for c in 0..samples_per_pixel {
        let plane: Vec<u8> = samples
            .iter()
            .skip(c)
            .step_by(samples_per_pixel)
            .map(|&v| scale(v))
            .collect();
        channels.push(
            GrayscaleImage::new(w, h, plane).map_err(|e| NetpbmError::Geometry(e.to_string()))?,
        );
    }
    Ok(Channels {
        width: w,
        height: h,
        channels,
    })
}

// Skip whitespace and `#` comments, then parse one unsigned decimal.
// Advances past the single terminating whitespace byte.
fn next_header_token(bytes: &[u8], cursor: &mut usize) -> Result<u32, NetpbmError> {
    let mut i = *cursor;
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else {
            break;
        }
    }
    let start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if start == i {
        return Err(NetpbmError::BadHeader);
    }
    let token = std::str::from_utf8(&bytes[start..i]).unwrap();
    let value: u32 = token.parse().map_err(|_| NetpbmError::BadHeader)?;
    if i < bytes.len() && bytes[i].is_ascii_whitespace() {
        i += 1;
    }
    *cursor = i;
    Ok(value)
}

/// Write a binary (P5) PGM file.
pub fn write_pgm(path: &Path, image: &GrayscaleImage) -> Result<(), NetpbmError> {
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.values());
    fs::write(path, out).map_err(|source| NetpbmError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_p2_with_comment() {
        let data = b"P2\n# a comment\n3 2\n255\n0 10 20\n30 40 50\n";
        let img = parse_netpbm(data).unwrap();
        assert_eq!(img.channels.len(), 1);
        assert_eq!(img.channels[0].values(), &[0, 10, 20, 30, 40, 50]);
    }

    #[test]
    fn parse_p5_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.pgm");
        let img = GrayscaleImage::new(2, 2, vec![1, 2, 3, 255]).unwrap();
        write_pgm(&path, &img).unwrap();
        let back = read_netpbm(&path).unwrap();
        assert_eq!(back.channels[0], img);
    }

    #[test]
    fn parse_p3_splits_channels() {
        let data = b"P3\n2 1\n255\n10 20 30 40 50 60\n";
        let img = parse_netpbm(data).unwrap();
        assert_eq!(img.channels.len(), 3);
        assert_eq!(img.channels[0].values(), &[10, 40]);
        assert_eq!(img.channels[1].values(), &[20, 50]);
        assert_eq!(img.channels[2].values(), &[30, 60]);
    }

    #[test]
    fn maxval_rescaled() {
        let data = b"P2\n2 1\n15\n0 15\n";
        let img = parse_netpbm(data).unwrap();
        assert_eq!(img.channels[0].values(), &[0, 255]);
    }

    #[test]
    fn errors_reported() {
        assert!(matches!(parse_netpbm(b"P7\n1 1\n255\n"), Err(NetpbmError::BadMagic(_))));
        assert!(matches!(
            parse_netpbm(b"P2\n2 2\n255\n1 2 3\n"),
            Err(NetpbmError::Truncated { .. })
        ));
        assert!(matches!(
            parse_netpbm(b"P2\n1 1\n300\n5\n"),
            Err(NetpbmError::BadMaxval(300))
        ));
        assert!(matches!(
            parse_netpbm(b"P2\n1 1\n100\n200\n"),
            Err(NetpbmError::SampleRange(200, 100))
        ));
    }
}
