//! Binary rasters read from PGM/PBM files.

use std::path::Path;

use image::ImageFormat;

use crate::continuum::Continuum;
use crate::error::{Error, Result};

pub const DEFAULT_THRESHOLD: u8 = 127;

/// A foreground mask in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub mask: Vec<bool>,
}

impl Raster {
    pub fn new(width: usize, height: usize, mask: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || mask.len() != width * height {
            return Err(Error::Raster(format!("mask of {} pixels does not fit {width}x{height}", mask.len())));
        }
        Ok(Raster { width, height, mask })
    }

    /// Decodes a PGM or PBM image.
    ///
    /// PGM pixels brighter than `threshold` are foreground. PBM pixels are
    /// foreground when set (black ink), regardless of the threshold.
    pub fn from_pnm_bytes(bytes: &[u8], threshold: u8) -> Result<Self> {
        let bitmap = matches!(bytes.get(..2), Some(b"P1") | Some(b"P4"));
        let img = image::load_from_memory_with_format(bytes, ImageFormat::Pnm)
            .map_err(|e| Error::Raster(e.to_string()))?
            .to_luma8();
        let (w, h) = img.dimensions();
        let mask = img.pixels().map(|p| if bitmap { p.0[0] < 128 } else { p.0[0] > threshold }).collect();
        Raster::new(w as usize, h as usize, mask)
    }

    pub fn open(path: &Path, threshold: u8) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_pnm_bytes(&bytes, threshold)
    }
}

/// One cell per foreground pixel at its center, 4-adjacent, normalized to diameter 1.
pub fn load_bitmap(raster: &Raster) -> Result<Continuum> {
    let mut ids = vec![usize::MAX; raster.mask.len()];
    let mut raw = Vec::new();
    for (i, &on) in raster.mask.iter().enumerate() {
        if on {
            ids[i] = raw.len();
            let (r, c) = (i / raster.width, i % raster.width);
            raw.push([c as f64 + 0.5, r as f64 + 0.5]);
        }
    }
    if raw.is_empty() {
        return Err(Error::Empty);
    }
    let mut pairs = Vec::new();
    for (i, &id) in ids.iter().enumerate() {
        if id == usize::MAX {
            continue;
        }
        let c = i % raster.width;
        if c + 1 < raster.width && ids[i + 1] != usize::MAX {
            pairs.push((id, ids[i + 1]));
        }
        if i + raster.width < ids.len() && ids[i + raster.width] != usize::MAX {
            pairs.push((id, ids[i + raster.width]));
        }
    }
    Continuum::from_graph(raw, pairs)
}
