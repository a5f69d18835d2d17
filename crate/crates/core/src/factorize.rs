//! Decides `X >= 0` for a hermitian algebra element and, when it holds,
//! builds a lower-triangular `Y` in the algebra with `X = Y*Y`.
//!
//! With the canonical cut `n`, write
//!
//! ```text
//!     X = ( A   B* )        Y = ( U   0 )
//!         ( B   T_p )           ( V   W )
//! ```
//!
//! where `A` is the `(n+1)×(n+1)` corner and `B` the band below it. The tail
//! `W` is the Toeplitz operator of the outer factor `q` of `p = q̄q`, `V` is
//! the band of `q` that pokes into columns `0..n`, and `U` is a UL Cholesky
//! factor of `A - V*V`. Since `q` is outer, `W` has dense range, so the range
//! projector in the block bound is the identity.

use nalgebra::{DVector, SVD};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, TriangularElement};
use crate::error::{Error, Result};
use crate::laurent::{AnalyticPolynomial, HermitianLaurentSymbol};
use crate::linalg::{self, max_abs};
use crate::spectral::{self, SpectralOptions};
use crate::{CMatrix, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Relative pivot threshold of the backward Cholesky.
pub const PIVOT_TOL: f64 = 1e-10;
/// Relative residual accepted for `Y*Y = X`.
pub const VERIFY_TOL: f64 = 1e-8;
/// Largest section searched for a vector witness.
pub const MAX_WITNESS_SECTION: usize = 1024;

#[derive(Debug, Clone, Copy)]
pub struct FactorOptions {
    /// Scale-relative decision tolerance.
    pub tol: f64,
    /// Scale-relative acceptance threshold for the final `Y*Y = X` check.
    pub verify_tol: f64,
    /// Section order used when a vector witness has to be searched for.
    pub truncation: usize,
    pub spectral: SpectralOptions,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            tol: spectral::DEFAULT_TOL,
            verify_tol: VERIFY_TOL,
            truncation: 200,
            spectral: SpectralOptions::default(),
        }
    }
}

impl FactorOptions {
    pub fn with_tol(tol: f64) -> Self {
        FactorOptions {
            tol,
            spectral: SpectralOptions { tol, ..SpectralOptions::default() },
            ..Self::default()
        }
    }
}

/// `X` split at its canonical cut.
#[derive(Debug, Clone)]
pub struct BlockPartition {
    pub cut: usize,
    /// Corner `P_n X P_n`.
    pub a: CMatrix,
    /// `(I - P_n) X P_n` restricted to its nonzero rows `n+1..=2n`; shape `n × (n+1)`.
    pub b: CMatrix,
    pub symbol: HermitianLaurentSymbol,
}

/// Splits a hermitian element into corner, band and Toeplitz tail.
///
/// `tol` is relative to [`AlgebraElement::magnitude`].
pub fn partition(x: &AlgebraElement, tol: f64) -> Result<BlockPartition> {
    let scale = x.magnitude();
    let defect = x.hermitian_defect();
    if defect > tol * scale {
        return Err(Error::NotHermitian(defect));
    }
    let n = x.cut();
    let a = hermitian_part(&x.truncate(n + 1));
    let symbol = HermitianLaurentSymbol::from_laurent(x.symbol(), f64::INFINITY)?;
    let b = CMatrix::from_fn(n, n + 1, |r, j| symbol.coeff((n + 1 + r) as i64 - j as i64));
    Ok(BlockPartition { cut: n, a, b, symbol })
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// The Toeplitz tail `W = (I - P_n) T_q (I - P_n)`, lower triangular with band `y_0..y_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzTail {
    pub q: AnalyticPolynomial,
}

impl ToeplitzTail {
    /// Leading `rows × cols` section, indices relative to row/column `n+1`.
    pub fn section(&self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |i, j| if i >= j { self.q.coeff(i - j) } else { ZERO })
    }
}

/// `V` (rows `n+1..=2n`, columns `0..=n`, entry `y_{i-j}`) and the tail `W`.
pub fn build_vw(q: &AnalyticPolynomial, n: usize) -> (CMatrix, ToeplitzTail) {
    let v = CMatrix::from_fn(n, n + 1, |r, j| {
        let i = n + 1 + r;
        if i - j <= n {
            q.coeff(i - j)
        } else {
            ZERO
        }
    });
    (v, ToeplitzTail { q: q.clone() })
}

/// `W*V`, computed over the finitely many rows where `V` is nonzero.
pub fn tail_times_band(v: &CMatrix, w: &ToeplitzTail) -> CMatrix {
    let n = v.nrows();
    w.section(n, n).adjoint() * v
}

/// Checks the identity `W*V = B` for the lower-left band (equivalently
/// `V*W = B*` for the upper-right one). `tol` is absolute.
pub fn check_b_consistency(part: &BlockPartition, v: &CMatrix, w: &ToeplitzTail, tol: f64) -> bool {
    if part.b.shape() != v.shape() {
        return false;
    }
    max_abs(&(tail_times_band(v, w) - &part.b)) <= tol
}

/// `U` lower triangular with `U*U = M` and real nonnegative diagonal.
#[derive(Debug, Clone)]
pub struct UlFactor {
    pub u: CMatrix,
    pub min_pivot: f64,
}

/// UL (backward) Cholesky `M = U*U` with `U` lower triangular.
///
/// With `J` the index reversal, `J M J = L L*` is a forward Cholesky and
/// `U = J L* J`. Pivots within `pivot_tol·‖M‖_max` of zero are zeroed along
/// with their column; anything more negative is reported as `NotPsd`
/// (index refers to the original ordering).
pub fn backward_cholesky(m: &CMatrix, pivot_tol: f64) -> Result<UlFactor> {
    let n = m.nrows();
    let flipped = CMatrix::from_fn(n, n, |i, j| m[(n - 1 - i, n - 1 - j)]);
    let abs_tol = pivot_tol * max_abs(m);
    let (l, min_pivot) = linalg::forward_cholesky(&flipped, abs_tol).map_err(|e| match e {
        Error::NotPsd { index, pivot } => Error::NotPsd { index: n - 1 - index, pivot },
        other => other,
    })?;
    let u = CMatrix::from_fn(n, n, |i, j| l[(n - 1 - j, n - 1 - i)].conj());
    Ok(UlFactor { u, min_pivot })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Positive,
    NotPositive,
}

/// Checkable evidence that `X` is not a nonnegative operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `p(e^{it}) < 0`: the Toeplitz tail is not nonnegative.
    Symbol { angle: f64, value: f64 },
    /// Unit vector `v` on the first `len(v)` coordinates with `⟨Xv, v⟩ < 0`.
    Vector { vector: Vec<C64>, value: f64 },
}

impl Witness {
    /// Re-evaluates the witness against `x` from scratch.
    pub fn recompute(&self, x: &AlgebraElement) -> f64 {
        match self {
            Witness::Symbol { angle, .. } => x.symbol().evaluate_on_circle(*angle).re,
            Witness::Vector { vector, .. } => {
                let v = DVector::from_column_slice(vector);
                linalg::quadratic_form(&x.truncate(vector.len()), &v)
            }
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Witness::Symbol { value, .. } | Witness::Vector { value, .. } => *value,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `max_deviation(Y*Y, X)` for a positive verdict.
    pub residual: Option<f64>,
    /// Roots of the outer factor `q`.
    pub q_roots: Vec<C64>,
    /// Smallest pivot of the backward Cholesky.
    pub min_pivot: Option<f64>,
    /// Minimum of the symbol on the circle.
    pub symbol_min: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityCertificate {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factor: Option<AlgebraElement>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub diagnostics: Diagnostics,
}

impl PositivityCertificate {
    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::Positive
    }

    /// The factor as a [`TriangularElement`], when positive.
    pub fn triangular_factor(&self) -> Option<TriangularElement> {
        self.factor.clone().and_then(|y| TriangularElement::new(y).ok())
    }
}

/// Factorization with default options.
pub fn factorize(x: &AlgebraElement, tol: f64) -> Result<PositivityCertificate> {
    factorize_with(x, &FactorOptions::with_tol(tol))
}

pub fn factorize_with(x: &AlgebraElement, opts: &FactorOptions) -> Result<PositivityCertificate> {
    let scale = x.magnitude();
    let part = partition(x, opts.tol)?;
    let n = part.cut;
    let mut diag = Diagnostics::default();
    let abs_tol = opts.tol * scale;

    let not_positive = |witness: Witness, diag: Diagnostics| PositivityCertificate {
        verdict: Verdict::NotPositive,
        factor: None,
        witness: Some(witness),
        diagnostics: diag,
    };

    if part.symbol.is_zero() {
        diag.symbol_min = Some(0.0);
        if max_abs(&part.b) > abs_tol {
            let w = search_witness(x, n + 1, opts)?;
            return Ok(not_positive(w, diag));
        }
        return match backward_cholesky(&part.a, pivot_tol(&part.a, abs_tol)) {
            Ok(ul) => {
                diag.min_pivot = Some(ul.min_pivot);
                let y = TriangularElement::from_corner_and_symbol(&ul.u, &AnalyticPolynomial::new(vec![ZERO]))?;
                finish(x, y, diag, opts)
            }
            Err(Error::NotPsd { pivot, .. }) => {
                diag.min_pivot = Some(pivot);
                let (_, phi) = linalg::hermitian_min_eigpair(&part.a);
                let w = vector_witness(x, phi.iter().copied().collect());
                match w {
                    Some(w) if w.value() < 0.0 => Ok(not_positive(w, diag)),
                    _ => Ok(not_positive(search_witness(x, n + 1, opts)?, diag)),
                }
            }
            Err(e) => Err(e),
        };
    }

    let (symbol_min, angle) = part.symbol.min_on_circle(part.symbol.default_samples());
    diag.symbol_min = Some(symbol_min);
    if symbol_min < -abs_tol {
        return Ok(not_positive(
            Witness::Symbol {
                angle,
                value: symbol_min,
            },
            diag,
        ));
    }

    let factor = match spectral::fejer_riesz_roots_with(&part.symbol, &opts.spectral) {
        Ok(f) => f,
        Err(Error::NotNonnegative(_)) => {
            // Odd circle multiplicity: p changes sign somewhere too shallowly
            // for the sampled minimum to see; fall back to sections.
            return Ok(not_positive(search_witness(x, n + 1, opts)?, diag));
        }
        Err(e) => return Err(e),
    };
    diag.q_roots = factor.roots.clone();
    let q = factor.q;

    let (v, w) = build_vw(&q, n);
    if !check_b_consistency(&part, &v, &w, (opts.verify_tol * scale).max(abs_tol)) {
        return Err(Error::InternalInconsistency(format!(
            "W*V differs from the band B by {:e}",
            max_abs(&(tail_times_band(&v, &w) - &part.b))
        )));
    }

    let m = hermitian_part(&(&part.a - v.adjoint() * &v));
    match backward_cholesky(&m, pivot_tol(&m, abs_tol)) {
        Ok(ul) => {
            diag.min_pivot = Some(ul.min_pivot);
            let y = TriangularElement::from_corner_and_symbol(&ul.u, &q)?;
            finish(x, y, diag, opts)
        }
        Err(Error::NotPsd { pivot, .. }) => {
            diag.min_pivot = Some(pivot);
            let w = lift_witness(x, &m, &v, &w, opts).map_or_else(|| search_witness(x, n + 1, opts), Ok)?;
            Ok(not_positive(w, diag))
        }
        Err(e) => Err(e),
    }
}

/// Relative pivot threshold for `M`, never finer than the decision tolerance
/// on the scale of `X` (cancellation in `A - V*V` happens at that scale).
fn pivot_tol(m: &CMatrix, abs_tol: f64) -> f64 {
    let norm = max_abs(m);
    if norm == 0.0 {
        PIVOT_TOL
    } else {
        PIVOT_TOL.max(abs_tol / norm)
    }
}

fn finish(
    x: &AlgebraElement,
    y: TriangularElement,
    mut diag: Diagnostics,
    opts: &FactorOptions,
) -> Result<PositivityCertificate> {
    let residual = y.hermitian_square().max_deviation(x);
    diag.residual = Some(residual);
    // zeroed pivots may leave up to `tol · scale` behind
    let limit = opts.verify_tol.max(opts.tol) * x.magnitude().max(f64::MIN_POSITIVE);
    if residual > limit {
        return Err(Error::InternalInconsistency(format!(
            "Y*Y misses X by {residual:e} (limit {limit:e})"
        )));
    }
    Ok(PositivityCertificate {
        verdict: Verdict::Positive,
        factor: Some(y.into_element()),
        witness: None,
        diagnostics: diag,
    })
}

fn vector_witness(x: &AlgebraElement, vector: Vec<C64>) -> Option<Witness> {
    let norm = vector.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let vector: Vec<C64> = vector.into_iter().map(|c| c / norm).collect();
    let mut w = Witness::Vector { vector, value: 0.0 };
    let value = w.recompute(x);
    if let Witness::Vector { value: v, .. } = &mut w {
        *v = value;
    }
    Some(w)
}

/// Lifts a negative direction `φ` of `M = A - V*V` to a finite vector
/// `(φ, ψ)` with `⟨X(φ,ψ), (φ,ψ)⟩ = ⟨Mφ,φ⟩ + ‖Vφ + Wψ‖² < 0`, choosing `ψ`
/// by least squares on growing sections of `W`.
fn lift_witness(
    x: &AlgebraElement,
    m: &CMatrix,
    v: &CMatrix,
    w: &ToeplitzTail,
    opts: &FactorOptions,
) -> Option<Witness> {
    let (lambda, phi) = linalg::hermitian_min_eigpair(m);
    if lambda >= 0.0 {
        return None;
    }
    let n = v.nrows();
    let d = w.q.coeffs().len() - 1;
    let v_phi = v * &phi;
    let mut k = n.max(1);
    let limit = opts.truncation.max(n + 1).min(MAX_WITNESS_SECTION);
    while n + 1 + k <= limit.max(n + 2) {
        let rows = n.max(k + d);
        let section = w.section(rows, k);
        let mut rhs = DVector::from_element(rows, ZERO);
        rhs.rows_mut(0, n).copy_from(&(-&v_phi));
        let psi = SVD::new(section, true, true).solve(&rhs, 1e-14).ok()?;
        let vector: Vec<C64> = phi.iter().chain(psi.iter()).copied().collect();
        if let Some(wit) = vector_witness(x, vector) {
            if wit.value() < 0.0 {
                return Some(wit);
            }
        }
        if n + 1 + k >= limit {
            break;
        }
        k = (2 * k).min(limit - n - 1);
    }
    None
}

/// Minimum eigenvectors of growing sections, starting at `start` and
/// doubling up to [`MAX_WITNESS_SECTION`].
fn search_witness(x: &AlgebraElement, start: usize, opts: &FactorOptions) -> Result<Witness> {
    let mut size = start.max(opts.truncation.min(MAX_WITNESS_SECTION)).max(1);
    loop {
        let (lambda, vec) = linalg::hermitian_min_eigpair(&hermitian_part(&x.truncate(size)));
        if lambda < 0.0 {
            if let Some(w) = vector_witness(x, vec.iter().copied().collect()) {
                if w.value() < 0.0 {
                    return Ok(w);
                }
            }
        }
        if size >= MAX_WITNESS_SECTION {
            return Err(Error::InternalInconsistency(
                "element looks non-positive but no negative section was found".into(),
            ));
        }
        size = (2 * size).min(MAX_WITNESS_SECTION);
    }
}

/// How the range projector `P_W` is formed in [`lemma23_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectorMode {
    /// `P_W = I`, valid when `W` has dense range.
    Identity,
    /// Orthogonal projector onto the numerical range of `W`.
    RangeOfW,
}

#[derive(Debug, Clone)]
pub struct Lemma23Report {
    /// Smallest eigenvalue of `[[A, V*W], [W*V, W*W]]`.
    pub block_min_eig: f64,
    pub precondition_holds: bool,
    /// Smallest eigenvalue of `A - V* P_W V`.
    pub bound_min_eig: f64,
    pub bound_holds: bool,
    /// `[[U, 0], [P_W V, W]]* [[U, 0], [P_W V, W]]`, when `U` was supplied.
    pub assembled: Option<CMatrix>,
    /// Max-norm distance from `assembled` to the block matrix.
    pub reassembly_error: Option<f64>,
}

/// Finite-dimensional check of the block bound `A >= V* P_W V` and of the
/// factorization `[[A, V*W], [W*V, W*W]] = G*G` with `G = [[U, 0], [P_W V, W]]`.
///
/// `a` is `h×h`, `v` is `k×h`, `w` is `k×k`; `tol` is relative to the
/// max-norm of the block matrix.
pub fn lemma23_bound(
    a: &CMatrix,
    v: &CMatrix,
    w: &CMatrix,
    mode: ProjectorMode,
    u: Option<&CMatrix>,
    tol: f64,
) -> Lemma23Report {
    let h = a.nrows();
    let k = w.nrows();
    let block = block_matrix(a, &(v.adjoint() * w), &(w.adjoint() * v), &(w.adjoint() * w));
    let abs_tol = tol * max_abs(&block).max(f64::MIN_POSITIVE);
    let block_min_eig = linalg::hermitian_min_eig(&hermitian_part(&block));

    let p_w = match mode {
        ProjectorMode::Identity => CMatrix::identity(k, k),
        ProjectorMode::RangeOfW => range_projector(w),
    };
    let pv = &p_w * v;
    let gap = hermitian_part(&(a - v.adjoint() * &pv));
    let bound_min_eig = if h == 0 { 0.0 } else { linalg::hermitian_min_eig(&gap) };

    let (assembled, reassembly_error) = match u {
        Some(u) => {
            let g = block_matrix(u, &CMatrix::zeros(h, k), &pv, w);
            let assembled = g.adjoint() * &g;
            let err = max_abs(&(&assembled - &block));
            (Some(assembled), Some(err))
        }
        None => (None, None),
    };

    Lemma23Report {
        block_min_eig,
        precondition_holds: block_min_eig >= -abs_tol,
        bound_min_eig,
        bound_holds: bound_min_eig >= -abs_tol,
        assembled,
        reassembly_error,
    }
}

fn block_matrix(tl: &CMatrix, tr: &CMatrix, bl: &CMatrix, br: &CMatrix) -> CMatrix {
    let (h, k) = (tl.nrows(), br.nrows());
    let mut out = CMatrix::zeros(h + k, h + k);
    out.view_mut((0, 0), (h, h)).copy_from(tl);
    out.view_mut((0, h), (h, k)).copy_from(tr);
    out.view_mut((h, 0), (k, h)).copy_from(bl);
    out.view_mut((h, h), (k, k)).copy_from(br);
    out
}

fn range_projector(w: &CMatrix) -> CMatrix {
    let k = w.nrows();
    let svd = SVD::new(w.clone(), true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut p = CMatrix::zeros(k, k);
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > 1e-12 * smax.max(f64::MIN_POSITIVE) && smax > 0.0 {
            let col = u.column(i);
            p += col * col.adjoint();
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn re(m: &[&[f64]]) -> CMatrix {
        CMatrix::from_fn(m.len(), m[0].len(), |i, j| C64::new(m[i][j], 0.0))
    }

    fn section3_x() -> AlgebraElement {
        AlgebraElement::from_parts(re(&[&[8.0, 6.0], &[6.0, 4.0]]), LaurentPoly::from_real(-1, &[1.0, 2.0, 1.0]))
            .unwrap()
    }

    #[test]
    fn partition_examples() {
        let p = partition(&section3_x(), 1e-9).unwrap();
        assert_eq!(p.cut, 1);
        assert_eq!(p.a, re(&[&[10.0, 7.0], &[7.0, 6.0]]));
        assert_eq!(p.b, re(&[&[0.0, 1.0]]));

        let p = partition(&AlgebraElement::identity(), 1e-9).unwrap();
        assert_eq!((p.cut, p.a.clone(), p.b.len()), (0, re(&[&[1.0]]), 0));

        let t = AlgebraElement::toeplitz(LaurentPoly::from_real(-1, &[1.0, 2.0, 1.0]));
        let p = partition(&t, 1e-9).unwrap();
        assert_eq!(p.a, re(&[&[2.0, 1.0], &[1.0, 2.0]]));
        assert_eq!(p.b, re(&[&[0.0, 1.0]]));

        assert!(matches!(partition(&AlgebraElement::shift(), 1e-9), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn build_vw_examples() {
        let (v, w) = build_vw(&AnalyticPolynomial::from_real(&[1.0, 1.0]), 1);
        assert_eq!(v, re(&[&[0.0, 1.0]]));
        assert_eq!(w.section(2, 2), re(&[&[1.0, 0.0], &[1.0, 1.0]]));

        let (v, w) = build_vw(&AnalyticPolynomial::from_real(&[1.0]), 0);
        assert_eq!(v.shape(), (0, 1));
        assert_eq!(w.section(3, 3), CMatrix::identity(3, 3));

        let (v, _) = build_vw(&AnalyticPolynomial::from_real(&[2.0, 1.0]), 1);
        assert_eq!(v, re(&[&[0.0, 1.0]]));
    }

    #[test]
    fn b_consistency() {
        // W*V by hand for q = 1 + z, n = 1: row 2 of W is (1, 0...) on
        // columns 2.., V row 2 is (0, 1) -> W*V = conj(y0)·(0, 1) = (0, 1).
        let part = partition(&section3_x(), 1e-9).unwrap();
        let (v, w) = build_vw(&AnalyticPolynomial::from_real(&[1.0, 1.0]), 1);
        assert_eq!(tail_times_band(&v, &w), re(&[&[0.0, 1.0]]));
        assert!(check_b_consistency(&part, &v, &w, 1e-12));

        let mut corrupted = part.clone();
        corrupted.b[(0, 0)] += C64::new(1.0, 0.0);
        assert!(!check_b_consistency(&corrupted, &v, &w, 1e-12));

        let part = partition(&AlgebraElement::identity(), 1e-9).unwrap();
        let (v, w) = build_vw(&AnalyticPolynomial::from_real(&[1.0]), 0);
        assert!(check_b_consistency(&part, &v, &w, 0.0));
    }

    #[test]
    fn backward_cholesky_examples() {
        let s5 = 5f64.sqrt();
        let ul = backward_cholesky(&re(&[&[10.0, 7.0], &[7.0, 5.0]]), PIVOT_TOL).unwrap();
        let expect = re(&[&[1.0 / s5, 0.0], &[7.0 / s5, s5]]);
        assert!(max_abs(&(&ul.u - expect)) < 1e-14);

        let ul = backward_cholesky(&CMatrix::identity(3, 3), PIVOT_TOL).unwrap();
        assert_eq!(ul.u, CMatrix::identity(3, 3));

        let m = re(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let ul = backward_cholesky(&m, PIVOT_TOL).unwrap();
        assert_eq!(ul.u, re(&[&[0.0, 0.0], &[1.0, 1.0]]));
        assert_eq!(ul.u.adjoint() * &ul.u, m);

        assert!(matches!(
            backward_cholesky(&re(&[&[0.0, 0.0], &[0.0, -1.0]]), PIVOT_TOL),
            Err(Error::NotPsd { index: 1, .. })
        ));
    }

    #[test]
    fn backward_cholesky_complex() {
        let i = C64::i();
        let one = C64::new(1.0, 0.0);
        let m = CMatrix::from_row_slice(2, 2, &[one * 3.0, i, -i, one * 2.0]);
        let ul = backward_cholesky(&m, PIVOT_TOL).unwrap();
        assert_eq!(ul.u[(0, 1)], ZERO);
        assert!(max_abs(&(ul.u.adjoint() * &ul.u - &m)) < 1e-14);
        assert!(ul.u[(0, 0)].im == 0.0 && ul.u[(1, 1)].im == 0.0);
    }

    #[test]
    fn factorize_section3() {
        let cert = factorize(&section3_x(), 1e-9).unwrap();
        assert!(cert.is_positive());
        let y = cert.factor.unwrap();
        let s5 = 5f64.sqrt();
        let corner = y.truncate(4);
        let expect = re(&[
            &[1.0 / s5, 0.0, 0.0, 0.0],
            &[7.0 / s5, s5, 0.0, 0.0],
            &[0.0, 1.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0, 1.0],
        ]);
        assert!(max_abs(&(corner - expect)) < 1e-7);
    }

    #[test]
    fn factorize_identity() {
        let cert = factorize(&AlgebraElement::identity(), 1e-9).unwrap();
        assert!(cert.is_positive());
        assert!(cert.factor.unwrap().equals(&AlgebraElement::identity(), 1e-14));
    }

    #[test]
    fn factorize_negative_symbol() {
        let x = AlgebraElement::toeplitz(LaurentPoly::from_real(-1, &[1.0, 0.0, 1.0]));
        let cert = factorize(&x, 1e-9).unwrap();
        assert_eq!(cert.verdict, Verdict::NotPositive);
        match cert.witness.as_ref().unwrap() {
            Witness::Symbol { angle, value } => {
                assert!((angle - std::f64::consts::PI).abs() < 1e-5);
                assert!((value + 2.0).abs() < 1e-12);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(cert.witness.unwrap().recompute(&x) < 0.0);
    }

    #[test]
    fn factorize_negative_corner() {
        let x = AlgebraElement::from_parts(re(&[&[-3.0]]), LaurentPoly::from_real(0, &[1.0])).unwrap();
        let cert = factorize(&x, 1e-9).unwrap();
        assert_eq!(cert.verdict, Verdict::NotPositive);
        let w = cert.witness.unwrap();
        assert!((w.value() + 2.0).abs() < 1e-12, "{w:?}");
        match &w {
            Witness::Vector { vector, .. } => {
                assert!((vector[0].norm() - 1.0).abs() < 1e-12);
                assert!(vector[1..].iter().all(|c| c.norm() < 1e-12));
            }
            _ => panic!("expected vector witness"),
        }
        assert!((w.recompute(&x) + 2.0).abs() < 1e-12);
    }

    #[test]
    fn factorize_pure_finite() {
        let x = AlgebraElement::finite(re(&[&[1.0, 1.0], &[1.0, 1.0]])).unwrap();
        let cert = factorize(&x, 1e-9).unwrap();
        assert!(cert.is_positive());
        let x = AlgebraElement::finite(re(&[&[1.0, 2.0], &[2.0, 1.0]])).unwrap();
        let cert = factorize(&x, 1e-9).unwrap();
        assert_eq!(cert.verdict, Verdict::NotPositive);
        assert!(cert.witness.unwrap().recompute(&x) < 0.0);
    }

    #[test]
    fn factorize_lifted_witness() {
        // Symbol nonnegative, corner too small: A - V*V is indefinite.
        let x = AlgebraElement::from_parts(re(&[&[-4.1]]), LaurentPoly::from_real(-1, &[2.0, 5.0, 2.0]))
            .unwrap();
        let cert = factorize(&x, 1e-9).unwrap();
        assert_eq!(cert.verdict, Verdict::NotPositive);
        let w = cert.witness.unwrap();
        assert!(matches!(w, Witness::Vector { .. }));
        assert!(w.recompute(&x) < 0.0);
    }

    #[test]
    fn lemma23_trivial_and_failing() {
        let i1 = CMatrix::identity(1, 1);
        let r = lemma23_bound(&i1, &CMatrix::zeros(1, 1), &i1, ProjectorMode::Identity, Some(&i1), 1e-12);
        assert!(r.precondition_holds && r.bound_holds);
        assert_eq!(r.assembled.unwrap(), CMatrix::identity(2, 2));

        let r = lemma23_bound(&re(&[&[0.0]]), &i1, &i1, ProjectorMode::Identity, None, 1e-12);
        assert!(!r.precondition_holds);
        assert!(!r.bound_holds);
        assert!(r.block_min_eig < 0.0);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = factorize(&AlgebraElement::identity(), 1e-9).unwrap();
        let v: serde_json::Value = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["verdict"], "positive");
        assert!(v["factor"]["cut"].is_u64());
        assert!(v.get("witness").is_none());
        for key in ["residual", "q_roots", "min_pivot", "symbol_min"] {
            assert!(v["diagnostics"].get(key).is_some(), "{key}");
        }
        let back: PositivityCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);
    }

    mod props {
        use super::*;
        use crate::generate;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn hermitian_squares_factor_back(seed in any::<u64>(), cut in 0usize..=5) {
                let y0 = generate::random_triangular(&mut generate::rng(seed), cut);
                let x = y0.hermitian_square();
                let cert = factorize(&x, 1e-9).unwrap();
                prop_assert!(cert.is_positive());
                let y = cert.triangular_factor().unwrap();
                prop_assert!(y.hermitian_square().equals(&x, VERIFY_TOL * x.magnitude()));
                prop_assert!(y.analytic_symbol().coeff(0).re > 0.0);
            }
        }
    }
}
