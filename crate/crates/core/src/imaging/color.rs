//! Full-range BT.601 RGB <-> YCbCr.

use std::sync::LazyLock;

use super::{Plane, RgbImage, YcbcrPlanes};

const FORWARD: [[f64; 3]; 3] = [
    [0.299, 0.587, 0.114],
    [-0.168736, -0.331264, 0.5],
    [0.5, -0.418688, -0.081312],
];

// Exact inverse of FORWARD, so an unmodified image survives the round trip
// with only floating-point error before the final rounding.
static INVERSE: LazyLock<[[f64; 3]; 3]> = LazyLock::new(|| invert(&FORWARD));

fn invert(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let c =
        |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let cof = [
        [c(1, 2, 1, 2), -c(1, 2, 0, 2), c(1, 2, 0, 1)],
        [-c(0, 2, 1, 2), c(0, 2, 0, 2), -c(0, 2, 0, 1)],
        [c(0, 1, 1, 2), -c(0, 1, 0, 2), c(0, 1, 0, 1)],
    ];
    let det: f64 = (0..3).map(|j| m[0][j] * cof[0][j]).sum();
    let mut inv = [[0.0; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = cof[j][i] / det;
        }
    }
    inv
}

pub fn rgb_to_ycbcr(image: &RgbImage) -> YcbcrPlanes {
    let n = image.pixels().len();
    let (mut y, mut cb, mut cr) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    for &[r, g, b] in image.pixels() {
        let (r, g, b) = (f64::from(r), f64::from(g), f64::from(b));
        y.push(FORWARD[0][0] * r + FORWARD[0][1] * g + FORWARD[0][2] * b);
        cb.push(128.0 + FORWARD[1][0] * r + FORWARD[1][1] * g + FORWARD[1][2] * b);
        cr.push(128.0 + FORWARD[2][0] * r + FORWARD[2][1] * g + FORWARD[2][2] * b);
    }
    let (w, h) = (image.width(), image.height());
    YcbcrPlanes {
        y: Plane::from_vec(w, h, y),
        cb: Plane::from_vec(w, h, cb),
        cr: Plane::from_vec(w, h, cr),
    }
}

fn quantize(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Inverse conversion; clamps to `0..=255` and rounds half away from zero.
pub fn ycbcr_to_rgb(planes: &YcbcrPlanes) -> RgbImage {
    let inv = &*INVERSE;
    let pixels = planes
        .y
        .data()
        .iter()
        .zip(planes.cb.data())
        .zip(planes.cr.data())
        .map(|((&y, &cb), &cr)| {
            let (cb, cr) = (cb - 128.0, cr - 128.0);
            let ch = |row: &[f64; 3]| quantize(row[0] * y + row[1] * cb + row[2] * cr);
            [ch(&inv[0]), ch(&inv[1]), ch(&inv[2])]
        })
        .collect();
    RgbImage::new(planes.y.width(), planes.y.height(), pixels).expect("plane dimensions are valid")
}
