//! Thin wrappers over `rustfft` for the torus transforms.
//!
//! Forward transforms are unnormalized; inverse transforms carry the factor
//! `1 / (number of samples)`. Arrays are in FFT order: bin `k` lives at index
//! `k mod L`.

use ndarray::{Array2, Axis};
use num_complex::Complex64;
use rustfft::FftPlanner;

pub fn forward_1d(data: &mut [Complex64]) {
    if data.is_empty() {
        return;
    }
    FftPlanner::new().plan_fft_forward(data.len()).process(data);
}

pub fn inverse_1d(data: &mut [Complex64]) {
    if data.is_empty() {
        return;
    }
    FftPlanner::new().plan_fft_inverse(data.len()).process(data);
    let scale = 1.0 / data.len() as f64;
    data.iter_mut().for_each(|z| *z *= scale);
}

fn transform_2d(data: &mut Array2<Complex64>, inverse: bool) {
    let (rows, cols) = data.dim();
    if rows == 0 || cols == 0 {
        return;
    }
    let mut planner = FftPlanner::new();
    let (row_fft, col_fft) = if inverse {
        (planner.plan_fft_inverse(cols), planner.plan_fft_inverse(rows))
    } else {
        (planner.plan_fft_forward(cols), planner.plan_fft_forward(rows))
    };
    // Standard layout keeps each row contiguous.
    if let Some(buf) = data.as_slice_mut() {
        row_fft.process(buf);
    } else {
        for mut row in data.axis_iter_mut(Axis(0)) {
            let mut tmp = row.to_vec();
            row_fft.process(&mut tmp);
            row.iter_mut().zip(tmp).for_each(|(d, s)| *d = s);
        }
    }
    let mut column = vec![Complex64::new(0.0, 0.0); rows];
    for mut col in data.axis_iter_mut(Axis(1)) {
        column.iter_mut().zip(col.iter()).for_each(|(d, s)| *d = *s);
        col_fft.process(&mut column);
        col.iter_mut().zip(column.iter()).for_each(|(d, s)| *d = *s);
    }
    if inverse {
        let scale = 1.0 / (rows * cols) as f64;
        data.mapv_inplace(|z| z * scale);
    }
}

pub fn forward_2d(data: &mut Array2<Complex64>) {
    transform_2d(data, false);
}

pub fn inverse_2d(data: &mut Array2<Complex64>) {
    transform_2d(data, true);
}

/// FFT-order index of the signed bin `k` on an axis of length `len`.
pub fn bin_index(k: i64, len: usize) -> usize {
    k.rem_euclid(len as i64) as usize
}

/// Signed bin represented by FFT-order index `idx`, in `[-len/2, len/2)`.
pub fn signed_bin(idx: usize, len: usize) -> i64 {
    let half = len / 2;
    if idx >= len - half {
        idx as i64 - len as i64
    } else {
        idx as i64
    }
}
