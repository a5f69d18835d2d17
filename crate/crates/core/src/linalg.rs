//! Dense complex kernels shared by the factorization and the oracle.

use nalgebra::{DVector, Schur, SymmetricEigen};

use crate::error::{Error, Result};
use crate::{CMatrix, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Forward semidefinite Cholesky `M = L L*`, `L` lower triangular.
///
/// Pivots in `[-pivot_tol, pivot_tol]` are treated as zero and their column
/// is zeroed. Returns `L` and the smallest pivot seen.
pub(crate) fn forward_cholesky(m: &CMatrix, pivot_tol: f64) -> Result<(CMatrix, f64)> {
    let n = m.nrows();
    let mut l = CMatrix::zeros(n, n);
    let mut min_pivot = f64::INFINITY;
    for j in 0..n {
        let mut d = m[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        min_pivot = min_pivot.min(d);
        if d < -pivot_tol {
            return Err(Error::NotPsd { index: j, pivot: d });
        }
        if d <= pivot_tol {
            continue;
        }
        let djj = d.sqrt();
        l[(j, j)] = C64::new(djj, 0.0);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok((l, if n == 0 { 0.0 } else { min_pivot }))
}

/// Smallest eigenvalue of a hermitian matrix with a unit eigenvector.
pub(crate) fn hermitian_min_eigpair(m: &CMatrix) -> (f64, DVector<C64>) {
    let eig = SymmetricEigen::new(m.clone());
    let (idx, val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
    (val, eig.eigenvectors.column(idx).into_owned())
}

pub(crate) fn hermitian_min_eig(m: &CMatrix) -> f64 {
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// `⟨M v, v⟩`, real part.
pub(crate) fn quadratic_form(m: &CMatrix, v: &DVector<C64>) -> f64 {
    (v.adjoint() * m * v)[(0, 0)].re
}

/// Roots of `Σ c_k z^k` (ascending coefficients).
///
/// Companion-matrix eigenvalues from a complex Schur form, then a few
/// guarded Newton steps per root against the original coefficients.
pub(crate) fn polynomial_roots(coeffs: &[C64]) -> Vec<C64> {
    let Some(top) = coeffs.iter().rposition(|c| *c != ZERO) else {
        return Vec::new();
    };
    let low = coeffs.iter().position(|c| *c != ZERO).unwrap();
    let mut roots = vec![ZERO; low];
    let core = &coeffs[low..=top];
    let m = core.len() - 1;
    if m == 0 {
        return roots;
    }
    let lead = core[m];
    let mut companion = CMatrix::zeros(m, m);
    for i in 1..m {
        companion[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..m {
        companion[(i, m - 1)] = -core[i] / lead;
    }
    let eig = Schur::try_new(companion.clone(), f64::EPSILON, 10_000)
        .and_then(|s| s.eigenvalues())
        .expect("complex Schur iteration converges for companion matrices");
    roots.extend(eig.iter().map(|&r| polish_root(core, r)));
    roots
}

fn polish_root(coeffs: &[C64], mut r: C64) -> C64 {
    let eval = |z: C64| {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let (mut p, mut dp) = eval(r);
    for _ in 0..8 {
        if p == ZERO || dp == ZERO {
            break;
        }
        let next = r - p / dp;
        let (pn, dpn) = eval(next);
        if pn.norm() >= p.norm() {
            break;
        }
        r = next;
        p = pn;
        dp = dpn;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_simple_polynomials() {
        // (z - 2)(z + 1) = z^2 - z - 2
        let mut r = polynomial_roots(&[C64::new(-2.0, 0.0), C64::new(-1.0, 0.0), C64::new(1.0, 0.0)]);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] + 1.0).norm() < 1e-14 && (r[1] - 2.0).norm() < 1e-14);

        // z^2 (z - i)
        let r = polynomial_roots(&[ZERO, ZERO, C64::new(0.0, -1.0), C64::new(1.0, 0.0)]);
        assert_eq!(r.len(), 3);
        assert!(r.iter().filter(|z| z.norm() == 0.0).count() == 2);
        assert!(r.iter().any(|z| (z - C64::i()).norm() < 1e-14));

        assert!(polynomial_roots(&[C64::new(3.0, 0.0)]).is_empty());
    }

    #[test]
    fn semidefinite_cholesky_zeroes_columns() {
        let one = C64::new(1.0, 0.0);
        let m = CMatrix::from_row_slice(2, 2, &[one, one, one, one]);
        let (l, min_pivot) = forward_cholesky(&m, 1e-12).unwrap();
        assert_eq!(l[(1, 1)], ZERO);
        assert!(min_pivot.abs() < 1e-15);
        assert!(max_abs(&(&l * l.adjoint() - m)) < 1e-15);
    }
}
