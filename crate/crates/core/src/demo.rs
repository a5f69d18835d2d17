//! Worked example: a nonnegative element whose forward (row-by-row)
//! Cholesky factor leaves the algebra while the backward construction
//! stays inside it.
//!
//! `X` has corner `[[10, 7], [7, 6]]` and Toeplitz band `(1, 2, 1)`. It is
//! `Y1*Y1` for the (not triangular) element `Y1` with corner `[[3, 2], [1, 1]]`
//! and symbol `1 + z`. The forward factor has diagonal `√10, √(11/10),
//! √(12/11), …`, which never settles, so it is not of the form `T_p + F`.
//! The backward factor is `Y` with corner `[[1/√5, 0], [7/√5, √5]]` and
//! tail band `(1, 1)`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::oracle::{self, ForwardBackwardReport};
use crate::{CMatrix, C64};

pub const NAMES: [&str; 1] = ["section3"];

fn real(m: &[&[f64]]) -> CMatrix {
    CMatrix::from_fn(m.len(), m[0].len(), |i, j| C64::new(m[i][j], 0.0))
}

/// The element `X`.
pub fn section3_x() -> AlgebraElement {
    AlgebraElement::from_parts(real(&[&[8.0, 6.0], &[6.0, 4.0]]), LaurentPoly::from_real(-1, &[1.0, 2.0, 1.0]))
        .expect("square block")
}

/// `Y1` with `X = Y1* Y1`; upper entry `2` at `(0, 1)`.
pub fn section3_y1() -> AlgebraElement {
    AlgebraElement::from_parts(real(&[&[2.0, 2.0], &[0.0, 0.0]]), LaurentPoly::from_real(0, &[1.0, 1.0]))
        .expect("square block")
}

/// Closed form of the backward factor's corner.
pub fn section3_backward_corner() -> [[f64; 2]; 2] {
    let s5 = 5f64.sqrt();
    [[1.0 / s5, 0.0], [7.0 / s5, s5]]
}

/// Closed form of the forward factor's diagonal: `√10`, then `√((k+11)/(k+10))`.
pub fn section3_forward_diagonal(len: usize) -> Vec<f64> {
    (0..len)
        .map(|i| {
            if i == 0 {
                10f64.sqrt()
            } else {
                let k = (i - 1) as f64;
                ((k + 11.0) / (k + 10.0)).sqrt()
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Section3Report {
    pub name: String,
    /// `max_deviation(Y1* Y1, X)`.
    pub y1_residual: f64,
    pub comparison: ForwardBackwardReport,
    /// Largest error of the first `diagonal_checked` forward diagonal entries.
    pub forward_diagonal_error: f64,
    pub diagonal_checked: usize,
    /// Largest error of the backward corner against `1/√5, 7/√5, √5`.
    pub backward_corner_error: f64,
    /// Largest error of the backward tail band against `(1, 1)`.
    pub backward_band_error: f64,
}

pub fn section3(section: usize) -> Result<Section3Report> {
    let x = section3_x();
    let y1 = section3_y1();
    let y1_residual = y1.adjoint().multiply(&y1)?.max_deviation(&x);
    let comparison = oracle::forward_vs_backward(&x, section, 1e-9)?;

    let diagonal_checked = 6.min(section);
    let forward_diagonal_error = section3_forward_diagonal(diagonal_checked)
        .iter()
        .zip(&comparison.forward_diagonal)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let corner = section3_backward_corner();
    let mut backward_corner_error: f64 = 0.0;
    for (i, row) in corner.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let got = comparison.backward_corner.get(i).and_then(|r| r.get(j)).copied();
            let err = got.map_or(f64::INFINITY, |g| (g - v).norm());
            backward_corner_error = backward_corner_error.max(err);
        }
    }
    let backward_band_error = (0..2)
        .map(|k| {
            comparison
                .backward_band
                .get(k)
                .map_or(f64::INFINITY, |c| (c - 1.0).norm())
        })
        .fold(0.0, f64::max);

    Ok(Section3Report {
        name: "section3".into(),
        y1_residual,
        comparison,
        forward_diagonal_error,
        diagonal_checked,
        backward_corner_error,
        backward_band_error,
    })
}

/// Human-readable rendering with closed forms side by side.
pub fn render_section3(r: &Section3Report) -> String {
    let mut s = String::new();
    let c = &r.comparison;
    let _ = writeln!(s, "X: corner [[10, 7], [7, 6]], Toeplitz band (1, 2, 1)");
    let _ = writeln!(s, "Y1* Y1 = X            residual {:.3e}", r.y1_residual);
    let _ = writeln!(s);
    let _ = writeln!(s, "forward factor (row-by-row Cholesky), section {}", c.section);
    let _ = writeln!(s, "  {:>4}  {:>24}  {:>24}", "row", "diagonal", "closed form");
    let closed = section3_forward_diagonal(r.diagonal_checked);
    let labels = ["√10", "√(11/10)", "√(12/11)", "√(13/12)", "√(14/13)", "√(15/14)"];
    for (i, want) in closed.iter().enumerate() {
        let _ = writeln!(
            s,
            "  {:>4}  {:>24.16e}  {:>24.16e}  {}",
            i, c.forward_diagonal[i], want, labels[i]
        );
    }
    if let Some(sub) = c.forward_subdiagonal.first() {
        let _ = writeln!(s, "  (1,0) {:>23.16e}  {:>24.16e}  7/√10", sub.re, 7.0 / 10f64.sqrt());
    }
    let _ = writeln!(
        s,
        "  stationary past the cut: {}   (settles at row {:?})",
        c.forward_stationary, c.forward_settles_at
    );
    let _ = writeln!(s);
    let _ = writeln!(s, "backward factor Y (UL construction)");
    let corner = section3_backward_corner();
    let names = [["1/√5", "0"], ["7/√5", "√5"]];
    for i in 0..2 {
        for j in 0..2 {
            let got = c.backward_corner.get(i).and_then(|row| row.get(j)).map_or(f64::NAN, |z| z.re);
            let _ = writeln!(
                s,
                "  ({i},{j}) {:>23.16e}  {:>24.16e}  {}",
                got, corner[i][j], names[i][j]
            );
        }
    }
    for (k, y) in c.backward_band.iter().enumerate() {
        let _ = writeln!(s, "  y_{k}   {:>23.16e}  {:>24.16e}  1", y.re, 1.0);
    }
    let _ = writeln!(
        s,
        "  stationary past the cut: {}   residual {:.3e}",
        c.backward_stationary, c.backward_residual
    );
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "max errors: forward diagonal {:.3e}, backward corner {:.3e}, backward band {:.3e}",
        r.forward_diagonal_error, r.backward_corner_error, r.backward_band_error
    );
    s
}
