//! Uncompressed 24-bit BMP (BITMAPFILEHEADER + BITMAPINFOHEADER).
//!
//! Writing always produces the canonical layout: bottom-up rows, BGR byte
//! order, rows padded to 4 bytes, 2835 px/m resolution and no palette.
//! Reading also accepts top-down files and larger info headers (V4/V5) as
//! long as the pixels are plain 24-bit BI_RGB.

use super::RgbImage;
use crate::error::{Error, Result};

const FILE_HEADER_LEN: usize = 14;
const INFO_HEADER_LEN: usize = 40;
const PIXELS_PER_METER: i32 = 2835;
const BI_RGB: u32 = 0;

fn row_stride(width: usize) -> usize {
    (width * 3 + 3) & !3
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

fn i32_at(b: &[u8], at: usize) -> i32 {
    u32_at(b, at) as i32
}

pub fn load_bmp(bytes: &[u8]) -> Result<RgbImage> {
    if bytes.len() < FILE_HEADER_LEN + INFO_HEADER_LEN {
        return Err(Error::Bmp(format!(
            "{} bytes is too short for a BMP header",
            bytes.len()
        )));
    }
    if &bytes[..2] != b"BM" {
        return Err(Error::Bmp("missing BM signature".into()));
    }
    let data_offset = u32_at(bytes, 10) as usize;
    let info_len = u32_at(bytes, 14) as usize;
    if info_len < INFO_HEADER_LEN {
        return Err(Error::Bmp(format!(
            "unsupported info header of {info_len} bytes"
        )));
    }
    let width = i32_at(bytes, 18);
    let height = i32_at(bytes, 22);
    let bpp = u16_at(bytes, 28);
    let compression = u32_at(bytes, 30);
    if bpp != 24 {
        return Err(Error::Bmp(format!(
            "unsupported bit depth {bpp}, only 24-bit is handled"
        )));
    }
    if compression != BI_RGB {
        return Err(Error::Bmp(format!("unsupported compression {compression}")));
    }
    if width <= 0 || height == 0 {
        return Err(Error::Bmp(format!("invalid dimensions {width}x{height}")));
    }
    let top_down = height < 0;
    let (w, h) = (width as usize, height.unsigned_abs() as usize);
    let stride = row_stride(w);
    let needed = data_offset
        .checked_add(stride * h)
        .ok_or_else(|| Error::Bmp("pixel data size overflows".into()))?;
    if data_offset < FILE_HEADER_LEN + info_len || bytes.len() < needed {
        return Err(Error::Bmp(format!(
            "truncated pixel data: need {needed} bytes, have {}",
            bytes.len()
        )));
    }

    let mut pixels = Vec::with_capacity(w * h);
    for y in 0..h {
        let file_row = if top_down { y } else { h - 1 - y };
        let row = &bytes[data_offset + file_row * stride..][..w * 3];
        pixels.extend(row.chunks_exact(3).map(|bgr| [bgr[2], bgr[1], bgr[0]]));
    }
    RgbImage::new(w, h, pixels)
}

pub fn save_bmp(image: &RgbImage) -> Vec<u8> {
    let (w, h) = (image.width(), image.height());
    let stride = row_stride(w);
    let image_size = stride * h;
    let file_size = FILE_HEADER_LEN + INFO_HEADER_LEN + image_size;

    let mut out = Vec::with_capacity(file_size);
    out.extend_from_slice(b"BM");
    out.extend_from_slice(&(file_size as u32).to_le_bytes());
    out.extend_from_slice(&[0; 4]);
    out.extend_from_slice(&((FILE_HEADER_LEN + INFO_HEADER_LEN) as u32).to_le_bytes());

    out.extend_from_slice(&(INFO_HEADER_LEN as u32).to_le_bytes());
    out.extend_from_slice(&(w as i32).to_le_bytes());
    out.extend_from_slice(&(h as i32).to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&24u16.to_le_bytes());
    out.extend_from_slice(&BI_RGB.to_le_bytes());
    out.extend_from_slice(&(image_size as u32).to_le_bytes());
    out.extend_from_slice(&PIXELS_PER_METER.to_le_bytes());
    out.extend_from_slice(&PIXELS_PER_METER.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());

    let pad = stride - w * 3;
    for y in (0..h).rev() {
        for px in image.row(y) {
            out.extend_from_slice(&[px[2], px[1], px[0]]);
        }
        out.extend(std::iter::repeat_n(0u8, pad));
    }
    out
}
