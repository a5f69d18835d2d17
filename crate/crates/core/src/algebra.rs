//! Elements of the *-algebra generated by the unilateral shift, stored in
//! the normal form `X = T_p + F`.
//!
//! `T_p` is the Toeplitz operator with Laurent symbol `p` (matrix entry
//! `(i, j)` is `p_{i-j}`) and `F` is a finite matrix sitting in the top-left
//! `(n+1)×(n+1)` corner. The cut `n` is kept canonical: the smallest value
//! that holds both the band of `p` and the support of `F`.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{AnalyticPolynomial, LaurentPoly};
use crate::linalg::max_abs;
use crate::{CMatrix, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Relative size of the out-of-window residue tolerated by [`AlgebraElement::multiply`].
pub const PRODUCT_WINDOW_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct AlgebraElement {
    cut: usize,
    block: CMatrix,
    symbol: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    cut: usize,
    finite_block: Vec<Vec<C64>>,
    symbol: LaurentPoly,
}

impl TryFrom<ElementRepr> for AlgebraElement {
    type Error = Error;

    fn try_from(r: ElementRepr) -> Result<Self> {
        let size = r.cut + 1;
        if r.finite_block.len() != size {
            return Err(Error::InvalidInput(format!(
                "finite_block: expected {size} rows for cut {}, found {}",
                r.cut,
                r.finite_block.len()
            )));
        }
        if let Some((i, row)) = r.finite_block.iter().enumerate().find(|(_, row)| row.len() != size) {
            return Err(Error::InvalidInput(format!(
                "finite_block: row {i} has {} entries, expected {size}",
                row.len()
            )));
        }
        if r.finite_block.iter().flatten().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("finite_block: non-finite entry".into()));
        }
        let block = CMatrix::from_fn(size, size, |i, j| r.finite_block[i][j]);
        AlgebraElement::from_parts(block, r.symbol)
    }
}

impl From<AlgebraElement> for ElementRepr {
    fn from(x: AlgebraElement) -> Self {
        let finite_block = x
            .block
            .row_iter()
            .map(|row| row.iter().copied().collect())
            .collect();
        ElementRepr {
            cut: x.cut,
            finite_block,
            symbol: x.symbol,
        }
    }
}

impl AlgebraElement {
    /// `T_p + F`, with `F` embedded in the top-left corner.
    pub fn from_parts(block: CMatrix, symbol: LaurentPoly) -> Result<Self> {
        if block.nrows() != block.ncols() {
            return Err(Error::InvalidInput(format!(
                "finite_block: not square ({}×{})",
                block.nrows(),
                block.ncols()
            )));
        }
        let extent = (0..block.nrows())
            .flat_map(|i| (0..block.ncols()).map(move |j| (i, j)))
            .filter(|&(i, j)| block[(i, j)] != ZERO)
            .map(|(i, j)| i.max(j))
            .max()
            .unwrap_or(0);
        let cut = extent.max(symbol.band_degree());
        let size = cut + 1;
        let block = CMatrix::from_fn(size, size, |i, j| {
            if i < block.nrows() && j < block.ncols() {
                // `+ 0` turns signed zeros into `0.0`
                block[(i, j)] + ZERO
            } else {
                ZERO
            }
        });
        Ok(AlgebraElement { cut, block, symbol })
    }

    /// The Toeplitz operator `T_p`.
    pub fn toeplitz(symbol: LaurentPoly) -> Self {
        Self::from_parts(CMatrix::zeros(1, 1), symbol).expect("square")
    }

    /// A finite matrix in the corner.
    pub fn finite(block: CMatrix) -> Result<Self> {
        Self::from_parts(block, LaurentPoly::zero())
    }

    pub fn zero() -> Self {
        Self::toeplitz(LaurentPoly::zero())
    }

    pub fn identity() -> Self {
        Self::toeplitz(LaurentPoly::constant(ONE))
    }

    /// The unilateral shift `S e_k = e_{k+1}`.
    pub fn shift() -> Self {
        Self::toeplitz(LaurentPoly::monomial(1, ONE))
    }

    /// The rank-one operator `e_k ⊗ e_n = ⟨·, e_k⟩ e_n`.
    pub fn rank_one(k: usize, n: usize) -> Self {
        let size = k.max(n) + 1;
        let mut block = CMatrix::zeros(size, size);
        block[(n, k)] = ONE;
        Self::finite(block).expect("square")
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    /// `F`, of size `(cut+1)×(cut+1)`.
    pub fn finite_block(&self) -> &CMatrix {
        &self.block
    }

    pub fn symbol(&self) -> &LaurentPoly {
        &self.symbol
    }

    /// Matrix entry `⟨X e_j, e_i⟩`.
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        let f = if i <= self.cut && j <= self.cut {
            self.block[(i, j)]
        } else {
            ZERO
        };
        f + self.symbol.coeff(i as i64 - j as i64)
    }

    /// The `N×N` section `P_N X P_N` in the standard basis.
    pub fn truncate(&self, n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    pub fn adjoint(&self) -> Self {
        AlgebraElement {
            cut: self.cut,
            block: self.block.adjoint(),
            symbol: self.symbol.involute(),
        }
    }

    /// Max-norm of `X - X*` over block and symbol.
    pub fn hermitian_defect(&self) -> f64 {
        self.max_deviation(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `max(‖corner‖_max, Σ|p_k|)`: the reference size for relative tolerances.
    pub fn magnitude(&self) -> f64 {
        max_abs(&self.truncate(self.cut + 1)).max(self.symbol.l1_norm())
    }

    /// Bound on the absolute row sums of the matrix.
    fn row_sum_bound(&self) -> f64 {
        (self.cut + 1) as f64 * max_abs(&self.block) + self.symbol.l1_norm()
    }

    fn padded_block(&self, size: usize) -> CMatrix {
        CMatrix::from_fn(size, size, |i, j| {
            if i <= self.cut && j <= self.cut {
                self.block[(i, j)]
            } else {
                ZERO
            }
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let size = self.cut.max(other.cut) + 1;
        let block = self.padded_block(size) + other.padded_block(size);
        Self::from_parts(block, &self.symbol + &other.symbol).expect("square")
    }

    pub fn subtract(&self, other: &Self) -> Self {
        let size = self.cut.max(other.cut) + 1;
        let block = self.padded_block(size) - other.padded_block(size);
        Self::from_parts(block, &self.symbol - &other.symbol).expect("square")
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_parts(self.block.map(|x| x * c), self.symbol.scale(c)).expect("square")
    }

    /// Operator product, returned in canonical form.
    ///
    /// The symbol of the product is the product of the symbols. The finite
    /// part is read off a section of order `2(n_a + n_b) + 2`: inside the
    /// corner window of size `n_a + n_b + 1` it is the section product minus
    /// the Toeplitz band of the new symbol, and outside that window (where
    /// the section product is still exact) the difference must vanish.
    /// Differences below [`PRODUCT_WINDOW_TOL`] times the product of the
    /// row-sum bounds are treated as zero in both regions.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let window = self.cut + other.cut;
        let n = 2 * window + 2;
        let prod = self.truncate(n) * other.truncate(n);
        let symbol = &self.symbol * &other.symbol;
        let tol = PRODUCT_WINDOW_TOL * (self.row_sum_bound() * other.row_sum_bound()).max(f64::MIN_POSITIVE);

        let mut block = CMatrix::zeros(window + 1, window + 1);
        // Entry (i, j) of the section product is exact while i < n - cut_a
        // and j < n - cut_b.
        for i in 0..n - self.cut {
            for j in 0..n - other.cut {
                let r = prod[(i, j)] - symbol.coeff(i as i64 - j as i64);
                if i <= window && j <= window {
                    // Rounding-level entries would otherwise inflate the cut.
                    block[(i, j)] = if r.norm() > tol { r } else { ZERO };
                } else if r.norm() > tol {
                    return Err(Error::InternalInconsistency(format!(
                        "product residue {:e} at ({i}, {j}) outside the corner window {window}",
                        r.norm()
                    )));
                }
            }
        }
        Self::from_parts(block, symbol)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| &acc * self)
    }

    /// Largest coefficientwise difference of the normal forms.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let size = self.cut.max(other.cut) + 1;
        let block = max_abs(&(self.padded_block(size) - other.padded_block(size)));
        block.max(self.symbol.max_abs_diff(&other.symbol))
    }

    pub fn equals(&self, other: &Self, tol: f64) -> bool {
        self.max_deviation(other) <= tol
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.multiply(rhs).expect("product left the normal form")
    }
}

/// An element whose matrix is lower triangular: lower-triangular finite
/// block and a symbol supported on nonnegative degrees.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct TriangularElement(AlgebraElement);

impl TriangularElement {
    pub fn new(x: AlgebraElement) -> Result<Self> {
        if !x.symbol.is_zero() && x.symbol.min_degree() < 0 {
            return Err(Error::InvalidInput(format!(
                "symbol: has negative degree {}",
                x.symbol.min_degree()
            )));
        }
        for i in 0..=x.cut {
            for j in i + 1..=x.cut {
                if x.block[(i, j)] != ZERO {
                    return Err(Error::InvalidInput(format!(
                        "finite_block: nonzero entry above the diagonal at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(TriangularElement(x))
    }

    /// Assembles the element whose `(cut+1)` corner is `corner` and whose
    /// matrix below and right of the corner is the Toeplitz band of `q`.
    pub fn from_corner_and_symbol(corner: &CMatrix, q: &AnalyticPolynomial) -> Result<Self> {
        let symbol = q.to_laurent();
        let size = corner.nrows();
        let block = CMatrix::from_fn(size, size, |i, j| corner[(i, j)] - symbol.coeff(i as i64 - j as i64));
        Self::new(AlgebraElement::from_parts(block, symbol)?)
    }

    pub fn element(&self) -> &AlgebraElement {
        &self.0
    }

    pub fn into_element(self) -> AlgebraElement {
        self.0
    }

    /// The analytic symbol `y_0..y_cut`.
    pub fn analytic_symbol(&self) -> AnalyticPolynomial {
        let cut = self.0.cut as i64;
        AnalyticPolynomial::new((0..=cut).map(|k| self.0.symbol.coeff(k)).collect())
    }

    /// `Y*Y`.
    pub fn hermitian_square(&self) -> AlgebraElement {
        &self.0.adjoint() * &self.0
    }
}

impl<'de> Deserialize<'de> for TriangularElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = AlgebraElement::deserialize(d)?;
        TriangularElement::new(x).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(m: &[&[f64]]) -> CMatrix {
        CMatrix::from_fn(m.len(), m[0].len(), |i, j| C64::new(m[i][j], 0.0))
    }

    fn section3_x() -> AlgebraElement {
        AlgebraElement::from_parts(re(&[&[8.0, 6.0], &[6.0, 4.0]]), LaurentPoly::from_real(-1, &[1.0, 2.0, 1.0]))
            .unwrap()
    }

    fn section3_y() -> TriangularElement {
        let s5 = 5f64.sqrt();
        let corner = re(&[&[1.0 / s5, 0.0], &[7.0 / s5, s5]]);
        TriangularElement::from_corner_and_symbol(&corner, &AnalyticPolynomial::from_real(&[1.0, 1.0])).unwrap()
    }

    #[test]
    fn from_parts_examples() {
        let x = AlgebraElement::from_parts(re(&[&[1.0]]), LaurentPoly::zero()).unwrap();
        assert_eq!(x.cut(), 0);
        assert_eq!(x.truncate(3), re(&[&[1.0, 0.0, 0.0], &[0.0; 3], &[0.0; 3]]));

        let t = AlgebraElement::from_parts(CMatrix::zeros(2, 2), LaurentPoly::from_real(-1, &[1.0, 2.0, 1.0])).unwrap();
        assert_eq!(t.cut(), 1);
        assert!(t.finite_block().iter().all(|c| *c == ZERO));

        let x = section3_x();
        assert_eq!(
            x.truncate(4),
            re(&[&[10.0, 7.0, 0.0, 0.0], &[7.0, 6.0, 1.0, 0.0], &[0.0, 1.0, 2.0, 1.0], &[0.0, 0.0, 1.0, 2.0]])
        );
    }

    #[test]
    fn canonical_cut_shrinks_padding() {
        let mut f = CMatrix::zeros(5, 5);
        f[(1, 0)] = ONE;
        let x = AlgebraElement::from_parts(f, LaurentPoly::zero()).unwrap();
        assert_eq!(x.cut(), 1);
        let y = AlgebraElement::from_parts(x.finite_block().clone(), LaurentPoly::zero()).unwrap();
        assert_eq!(x, y);
        assert!(x.equals(&y, 0.0));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(AlgebraElement::identity().adjoint(), AlgebraElement::identity());
        assert_eq!(
            AlgebraElement::shift().adjoint(),
            AlgebraElement::toeplitz(LaurentPoly::monomial(-1, ONE))
        );
        let y = section3_y();
        let ys = y.element().adjoint();
        let t = ys.truncate(6);
        assert_eq!(t, y.element().truncate(6).adjoint());
        for i in 0..6 {
            for j in 0..i {
                assert_eq!(t[(i, j)], ZERO);
            }
        }
    }

    #[test]
    fn shift_products() {
        let s = AlgebraElement::shift();
        let ss = s.adjoint();
        assert_eq!(&ss * &s, AlgebraElement::identity());
        let p = &s * &ss;
        assert_eq!(p.cut(), 0);
        assert_eq!(p.finite_block()[(0, 0)], C64::new(-1.0, 0.0));
        assert_eq!(p.symbol(), &LaurentPoly::constant(ONE));
    }

    #[test]
    fn section3_square() {
        let y = section3_y();
        let x = y.hermitian_square();
        let dev = x.max_deviation(&section3_x());
        assert!(dev < 1e-13, "{dev:e}");
    }

    #[test]
    fn linear_structure() {
        let x = section3_x();
        assert_eq!(x.add(&AlgebraElement::zero()), x);
        assert_eq!(x.subtract(&x), AlgebraElement::zero());
        assert_eq!(
            AlgebraElement::identity().scale(C64::new(2.0, 0.0)),
            AlgebraElement::toeplitz(LaurentPoly::constant(C64::new(2.0, 0.0)))
        );
    }

    #[test]
    fn equals_examples() {
        let x = section3_x();
        assert!(x.equals(&x, 0.0));
        assert!(!AlgebraElement::identity().equals(&AlgebraElement::shift(), 1e-9));
    }

    #[test]
    fn rank_one_action() {
        // e_2 ⊗ e_0 maps e_2 to e_0.
        let r = AlgebraElement::rank_one(2, 0);
        let t = r.truncate(4);
        assert_eq!(t[(0, 2)], ONE);
        assert_eq!(t.iter().filter(|c| **c != ZERO).count(), 1);
    }

    #[test]
    fn triangular_rejects_upper_entries() {
        assert!(TriangularElement::new(AlgebraElement::shift().adjoint()).is_err());
        assert!(TriangularElement::new(AlgebraElement::rank_one(1, 0)).is_err());
        assert!(TriangularElement::new(AlgebraElement::rank_one(0, 1)).is_ok());
    }

    #[test]
    fn json_shape_and_errors() {
        let s = serde_json::to_string(&AlgebraElement::shift()).unwrap();
        assert_eq!(
            s,
            r#"{"cut":1,"finite_block":[[[0.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]],"symbol":{"min_degree":1,"coeffs":[[1.0,0.0]]}}"#
        );
        let bad = r#"{"cut":1,"finite_block":[[[0.0,0.0]]],"symbol":{"min_degree":0,"coeffs":[]}}"#;
        let err = serde_json::from_str::<AlgebraElement>(bad).unwrap_err().to_string();
        assert!(err.contains("finite_block"), "{err}");
        let missing = r#"{"cut":0,"finite_block":[[[1.0,0.0]]]}"#;
        let err = serde_json::from_str::<AlgebraElement>(missing).unwrap_err().to_string();
        assert!(err.contains("symbol"), "{err}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element() -> impl Strategy<Value = AlgebraElement> {
            let entry = (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| C64::new(a, b));
            (0usize..5, -3i64..=0, 0usize..5).prop_flat_map(move |(size, lo, len)| {
                (
                    prop::collection::vec(entry.clone(), size * size),
                    prop::collection::vec(entry.clone(), len),
                )
                    .prop_map(move |(block, coeffs)| {
                        let block = CMatrix::from_row_slice(size, size, &block);
                        AlgebraElement::from_parts(block, LaurentPoly::new(lo, coeffs)).unwrap()
                    })
            })
        }

        proptest! {
            #[test]
            fn normal_form_is_canonical(x in element()) {
                let again = AlgebraElement::from_parts(x.finite_block().clone(), x.symbol().clone()).unwrap();
                prop_assert_eq!(&again, &x);
                prop_assert_eq!(x.adjoint().truncate(12), x.truncate(12).adjoint());
            }

            #[test]
            fn product_is_an_antihomomorphic_star_algebra(a in element(), b in element()) {
                let ab = a.multiply(&b).unwrap();
                let rhs = b.adjoint().multiply(&a.adjoint()).unwrap();
                prop_assert!(ab.adjoint().max_deviation(&rhs) <= 1e-12 * (1.0 + a.magnitude() * b.magnitude()));
                let n = 32;
                let window = n - a.symbol().band_degree().max(b.symbol().band_degree());
                let direct = ab.truncate(n);
                let sections = a.truncate(n) * b.truncate(n);
                let diff = (0..window)
                    .flat_map(|i| (0..window).map(move |j| (i, j)))
                    .map(|(i, j)| (direct[(i, j)] - sections[(i, j)]).norm())
                    .fold(0.0, f64::max);
                prop_assert!(diff <= 1e-10 * (1.0 + a.magnitude() * b.magnitude()));
            }
        }
    }
}
