//! Whole-plane orthonormal 2D DCT-II and its inverse.
//!
//! Per dimension of length `L` the basis is scaled by `sqrt(1/L)` for index 0
//! and `sqrt(2/L)` otherwise, so the transform preserves energy. The 1D
//! kernels come from `rustdct`; only the scaling and the separable row/column
//! passes live here.

use rustdct::DctPlanner;

use super::Plane;

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Inverse,
}

fn transform_lines(
    data: &mut [f64],
    line_len: usize,
    planner: &mut DctPlanner<f64>,
    dir: Direction,
) {
    let n = line_len as f64;
    let (s0, sk) = ((1.0 / n).sqrt(), (2.0 / n).sqrt());
    match dir {
        Direction::Forward => {
            let dct = planner.plan_dct2(line_len);
            let mut scratch = vec![0.0; dct.get_scratch_len()];
            for line in data.chunks_exact_mut(line_len) {
                dct.process_dct2_with_scratch(line, &mut scratch);
                line[0] *= s0;
                line[1..].iter_mut().for_each(|v| *v *= sk);
            }
        }
        Direction::Inverse => {
            // rustdct's DCT-III computes x_n = X_0 / 2 + Σ_k X_k cos(..)
            let dct = planner.plan_dct3(line_len);
            let mut scratch = vec![0.0; dct.get_scratch_len()];
            for line in data.chunks_exact_mut(line_len) {
                line[0] *= 2.0 * s0;
                line[1..].iter_mut().for_each(|v| *v *= sk);
                dct.process_dct3_with_scratch(line, &mut scratch);
            }
        }
    }
}

fn transpose(data: &[f64], width: usize, height: usize) -> Vec<f64> {
    let mut out = vec![0.0; data.len()];
    for (r, row) in data.chunks_exact(width).enumerate() {
        for (c, &v) in row.iter().enumerate() {
            out[c * height + r] = v;
        }
    }
    out
}

fn separable(plane: &Plane, dir: Direction) -> Plane {
    let (w, h) = (plane.width(), plane.height());
    let mut planner = DctPlanner::new();
    let mut rows = plane.data().to_vec();
    transform_lines(&mut rows, w, &mut planner, dir);
    let mut cols = transpose(&rows, w, h);
    transform_lines(&mut cols, h, &mut planner, dir);
    Plane::from_vec(w, h, transpose(&cols, h, w))
}

pub fn dct2(plane: &Plane) -> Plane {
    separable(plane, Direction::Forward)
}

pub fn idct2(plane: &Plane) -> Plane {
    separable(plane, Direction::Inverse)
}
