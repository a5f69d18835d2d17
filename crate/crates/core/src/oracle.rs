//! Brute-force ground truth on finite sections.
//!
//! Compressions of a nonnegative operator are nonnegative, so a negative
//! eigenvalue of any section `P_N X P_N` refutes `X >= 0`. These routines
//! only ever look at materialized sections and never reuse the
//! factorization pipeline's algebra, which keeps them usable as an oracle.

use nalgebra::{DVector, SVD};
use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::factorize::{self, FactorOptions};
use crate::laurent::AnalyticPolynomial;
use crate::linalg::{self, max_abs};
use crate::{CMatrix, C64};

pub const DEFAULT_TRUNCATION: usize = 200;
/// Consecutive band rows closer than this count as identical.
pub const STATIONARY_TOL: f64 = 1e-12;

/// Smallest eigenvalue of the hermitian `N×N` section of `x`.
pub fn truncated_min_eig(x: &AlgebraElement, n: usize) -> Result<f64> {
    let section = hermitian_section(x, n)?;
    Ok(linalg::hermitian_min_eig(&section))
}

fn hermitian_section(x: &AlgebraElement, n: usize) -> Result<CMatrix> {
    if n < x.cut() + 1 {
        return Err(Error::InvalidInput(format!(
            "section order {n} is below cut + 1 = {}",
            x.cut() + 1
        )));
    }
    let defect = x.hermitian_defect();
    if defect > 1e-12 * x.magnitude() {
        return Err(Error::NotHermitian(defect));
    }
    let t = x.truncate(n);
    Ok((&t + t.adjoint()) * C64::new(0.5, 0.0))
}

/// Band rows `(m[i][i], m[i][i-1], …, m[i][i-width])` of a lower-triangular matrix.
fn band_row(m: &CMatrix, i: usize, width: usize) -> Vec<C64> {
    (0..=width)
        .map(|k| if k <= i { m[(i, i - k)] } else { C64::new(0.0, 0.0) })
        .collect()
}

/// First row `r > cut` from which every later band row matches its
/// predecessor within [`STATIONARY_TOL`].
fn stationary_from(m: &CMatrix, cut: usize, width: usize) -> Option<usize> {
    let n = m.nrows();
    let mut first = None;
    for i in (cut + 2..n).rev() {
        let a = band_row(m, i, width);
        let b = band_row(m, i - 1, width);
        let diff = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        if diff > STATIONARY_TOL {
            break;
        }
        first = Some(i - 1);
    }
    first
}

/// Forward (row-by-row) Cholesky of a section against the backward
/// construction.
#[derive(Debug, Clone, Serialize)]
pub struct ForwardBackwardReport {
    pub section: usize,
    pub cut: usize,
    /// Diagonal of the forward factor `L` with `T_N(X) = L L*`.
    pub forward_diagonal: Vec<f64>,
    /// First subdiagonal of `L`.
    pub forward_subdiagonal: Vec<C64>,
    /// Band rows of `L` identical for every row past the cut.
    pub forward_stationary: bool,
    /// First row after which `L`'s band stops moving, if any.
    pub forward_settles_at: Option<usize>,
    /// Corner `(cut+1)×(cut+1)` of the backward factor `Y`, row-major.
    pub backward_corner: Vec<Vec<C64>>,
    /// Tail band `y_0, y_1, …` of `Y`.
    pub backward_band: Vec<C64>,
    pub backward_stationary: bool,
    pub backward_settles_at: Option<usize>,
    /// `max_deviation(Y*Y, X)`.
    pub backward_residual: f64,
}

pub fn forward_vs_backward(x: &AlgebraElement, n: usize, tol: f64) -> Result<ForwardBackwardReport> {
    let section = hermitian_section(x, n)?;
    let scale = x.magnitude();
    let (l, _) = linalg::forward_cholesky(&section, tol * scale)?;
    let cut = x.cut();
    let width = cut.max(1);

    let cert = factorize::factorize_with(x, &FactorOptions::with_tol(tol))?;
    let y = cert.factor.ok_or_else(|| Error::NotPsd {
        index: 0,
        pivot: cert.witness.as_ref().map_or(f64::NAN, |w| w.value()),
    })?;
    let ys = y.truncate(n);
    let ycut = y.cut();

    let forward_settles_at = stationary_from(&l, cut, width);
    let backward_settles_at = stationary_from(&ys, cut, width);
    Ok(ForwardBackwardReport {
        section: n,
        cut,
        forward_diagonal: (0..n).map(|i| l[(i, i)].re).collect(),
        forward_subdiagonal: (1..n).map(|i| l[(i, i - 1)]).collect(),
        forward_stationary: forward_settles_at == Some(cut + 1),
        forward_settles_at,
        backward_corner: (0..=ycut).map(|i| (0..=ycut).map(|j| ys[(i, j)]).collect()).collect(),
        backward_band: (0..=ycut).map(|k| y.symbol().coeff(k as i64)).collect(),
        backward_stationary: backward_settles_at == Some(cut + 1),
        backward_settles_at,
        backward_residual: y.adjoint().multiply(&y)?.max_deviation(x),
    })
}

/// Least-squares residuals `min_u ‖T_q u - e_0‖` with `u` ranging over
/// polynomials of degree `< N`, one per `N` in `schedule`.
///
/// `T_q` restricted to `span{e_0..e_{N-1}}` is exactly the `(N+d)×N`
/// lower-triangular Toeplitz section, so each value is exact for that `N`.
pub fn density_proxy(q: &AnalyticPolynomial, schedule: &[usize]) -> Vec<f64> {
    let d = q.coeffs().len() - 1;
    schedule
        .iter()
        .map(|&n| {
            let rows = n + d;
            let t = CMatrix::from_fn(rows, n, |i, j| if i >= j { q.coeff(i - j) } else { C64::new(0.0, 0.0) });
            let mut e0 = DVector::from_element(rows, C64::new(0.0, 0.0));
            e0[0] = C64::new(1.0, 0.0);
            if n == 0 {
                return 1.0;
            }
            let u = SVD::new(t.clone(), true, true)
                .solve(&e0, 1e-15 * max_abs(&t).max(f64::MIN_POSITIVE))
                .expect("both singular factors were requested");
            (&t * u - e0).norm()
        })
        .collect()
}
