//! Image containers, 24-bit BMP I/O, colour conversion, the whole-frame DCT
//! and keyed coefficient selection.

mod bmp;
mod color;
mod dct;
mod selection;
mod synthetic;

pub use bmp::{load_bmp, save_bmp};
pub use color::{rgb_to_ycbcr, ycbcr_to_rgb};
pub use dct::{dct2, idct2};
pub use selection::{key_seed, select_coefficients, zigzag_order, CoefficientSelection};
pub use synthetic::synthetic_cover;

use crate::error::{Error, Result};

/// 8-bit RGB image, row-major from the top-left pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParams(format!(
                "image dimensions {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::InvalidParams(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [[u8; 3]] {
        &mut self.pixels
    }

    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        self.pixels[row * self.width + col]
    }

    pub fn row(&self, row: usize) -> &[[u8; 3]] {
        &self.pixels[row * self.width..(row + 1) * self.width]
    }
}

/// A real-valued plane, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Plane {
    /// Panics if `data.len() != width * height`.
    pub fn from_vec(width: usize, height: usize, data: Vec<f64>) -> Self {
        assert_eq!(
            data.len(),
            width * height,
            "plane data does not match {width}x{height}"
        );
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.data[row * self.width + col] = v;
    }

    pub fn energy(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }
}

/// Full-precision luma and chroma planes.
#[derive(Debug, Clone, PartialEq)]
pub struct YcbcrPlanes {
    pub y: Plane,
    pub cb: Plane,
    pub cr: Plane,
}

impl YcbcrPlanes {
    pub fn width(&self) -> usize {
        self.y.width()
    }

    pub fn height(&self) -> usize {
        self.y.height()
    }
}
