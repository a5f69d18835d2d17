//! Laurent polynomials `p(z) = Σ a_k z^k` with complex coefficients.
//!
//! Three flavours are used across the crate:
//!
//! - [`LaurentPoly`]: general finite support, dense storage from `min_degree`.
//! - [`HermitianLaurentSymbol`]: `a_{-k} = conj(a_k)`, stored as `x_0..x_n`;
//!   real-valued on the unit circle.
//! - [`AnalyticPolynomial`]: only nonnegative degrees, `y_0..y_n`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Laurent polynomial with finite support.
///
/// Stored densely as `coeffs[i]` = coefficient of `z^(min_degree + i)`.
/// Exact-zero coefficients at either end are trimmed on construction; the
/// zero polynomial has empty `coeffs` and `min_degree == 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LaurentRepr", into = "LaurentRepr")]
pub struct LaurentPoly {
    min_degree: i64,
    coeffs: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    min_degree: i64,
    coeffs: Vec<C64>,
}

impl TryFrom<LaurentRepr> for LaurentPoly {
    type Error = Error;

    fn try_from(r: LaurentRepr) -> Result<Self> {
        if r.coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("coeffs: non-finite coefficient".into()));
        }
        Ok(LaurentPoly::new(r.min_degree, r.coeffs))
    }
}

impl From<LaurentPoly> for LaurentRepr {
    fn from(p: LaurentPoly) -> Self {
        LaurentRepr {
            min_degree: p.min_degree,
            coeffs: p.coeffs,
        }
    }
}

impl LaurentPoly {
    pub fn new(min_degree: i64, coeffs: Vec<C64>) -> Self {
        LaurentPoly { min_degree, coeffs }.trimmed(0.0)
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_degree: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(degree: i64, c: C64) -> Self {
        Self::new(degree, vec![c])
    }

    /// Builds a polynomial from real coefficients starting at `min_degree`.
    pub fn from_real(min_degree: i64, coeffs: &[f64]) -> Self {
        Self::new(min_degree, coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.min_degree + self.coeffs.len() as i64 - 1
        }
    }

    /// Largest `|k|` with nonzero coefficient; 0 for the zero polynomial.
    pub fn band_degree(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.min_degree.unsigned_abs().max(self.max_degree().unsigned_abs()) as usize
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> C64 {
        let i = k - self.min_degree;
        if i < 0 || i >= self.coeffs.len() as i64 {
            ZERO
        } else {
            self.coeffs[i as usize]
        }
    }

    /// Drops end coefficients with modulus `<= tol`. With `tol = 0` only
    /// exact zeros go, which is what construction does.
    pub fn trimmed(mut self, tol: f64) -> Self {
        let keep = |c: &C64| c.norm() > tol;
        match self.coeffs.iter().position(keep) {
            None => Self::zero(),
            Some(first) => {
                let last = self.coeffs.iter().rposition(keep).unwrap();
                self.coeffs.truncate(last + 1);
                self.coeffs.drain(..first);
                self.min_degree += first as i64;
                self
            }
        }
    }

    /// The involution `Σ a_k z^k ↦ Σ conj(a_k) z^{-k}`.
    pub fn involute(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_degree: -self.max_degree(),
            coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::new(self.min_degree, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Evaluates at a nonzero complex point.
    pub fn evaluate(&self, z: C64) -> C64 {
        if self.is_zero() {
            return ZERO;
        }
        // Horner in z, then shift by z^min_degree.
        let acc = self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c);
        acc * z.powi(self.min_degree as i32)
    }

    /// `Σ a_k e^{ikt}`.
    pub fn evaluate_on_circle(&self, t: f64) -> C64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * C64::from_polar(1.0, (self.min_degree + i as i64) as f64 * t))
            .sum()
    }

    /// True iff `|a_{-k} - conj(a_k)| <= tol` for all `k`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    pub fn hermitian_defect(&self) -> f64 {
        let n = self.band_degree() as i64;
        (0..=n)
            .map(|k| (self.coeff(-k) - self.coeff(k).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Σ |a_k|.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Coefficientwise max-norm distance.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        (lo..=hi)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    fn combine(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        let lo = if self.is_zero() {
            other.min_degree
        } else if other.is_zero() {
            self.min_degree
        } else {
            self.min_degree.min(other.min_degree)
        };
        let hi = self.max_degree().max(other.max_degree());
        let coeffs = (lo..=hi).map(|k| f(self.coeff(k), other.coeff(k))).collect();
        Self::new(lo, coeffs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Convolution of coefficient sequences.
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_degree + rhs.min_degree, out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Hermitian Laurent symbol `Σ_{|k|<=n} x_k z^k` with `x_{-k} = conj(x_k)`.
///
/// Only `x_0..x_n` are stored; `x_0` is real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianLaurentSymbol {
    coeffs: Vec<C64>,
}

impl HermitianLaurentSymbol {
    /// `coeffs[k] = x_k` for `k >= 0`. Fails if `x_0` has a nonzero imaginary part.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        let mut coeffs = coeffs;
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        if coeffs[0].im != 0.0 {
            return Err(Error::NotHermitian(coeffs[0].im.abs()));
        }
        Ok(HermitianLaurentSymbol { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
            .expect("real coefficients are hermitian")
    }

    /// Reads a hermitian symbol off a Laurent polynomial, averaging each
    /// conjugate pair. Fails if the defect exceeds `tol`.
    pub fn from_laurent(p: &LaurentPoly, tol: f64) -> Result<Self> {
        let defect = p.hermitian_defect();
        if defect > tol {
            return Err(Error::NotHermitian(defect));
        }
        let n = p.band_degree() as i64;
        let mut coeffs: Vec<C64> = (0..=n)
            .map(|k| (p.coeff(k) + p.coeff(-k).conj()) * 0.5)
            .collect();
        coeffs[0].im = 0.0;
        Ok(HermitianLaurentSymbol { coeffs })
    }

    /// Stored band degree `n` (may carry trailing zeros).
    pub fn band_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree after discarding exactly-zero top coefficients.
    pub fn effective_degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != ZERO).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// `x_k` for any integer `k`.
    pub fn coeff(&self, k: i64) -> C64 {
        let idx = k.unsigned_abs() as usize;
        match self.coeffs.get(idx) {
            None => ZERO,
            Some(&c) if k < 0 => c.conj(),
            Some(&c) => c,
        }
    }

    /// `x_0..x_n`.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let n = self.band_degree() as i64;
        LaurentPoly::new(-n, (-n..=n).map(|k| self.coeff(k)).collect())
    }

    /// Σ_{|k|<=n} |x_k|.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs[0].norm() + 2.0 * self.coeffs[1..].iter().map(|c| c.norm()).sum::<f64>()
    }

    /// `p(e^{it})`, real by construction.
    pub fn evaluate(&self, t: f64) -> f64 {
        self.coeffs[0].re
            + 2.0
                * self.coeffs[1..]
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c * C64::from_polar(1.0, (i + 1) as f64 * t)).re)
                    .sum::<f64>()
    }

    /// Minimum of `p` on the circle and an angle attaining it.
    ///
    /// Dense uniform sampling followed by golden-section search on the two
    /// grid cells around the best sample. `samples` is raised to
    /// `4·(n+1)` if smaller.
    pub fn min_on_circle(&self, samples: usize) -> (f64, f64) {
        let samples = samples.max(4 * (self.band_degree() + 1));
        let h = 2.0 * PI / samples as f64;
        let (best_j, _) = (0..samples)
            .map(|j| (j, self.evaluate(j as f64 * h)))
            .fold((0, f64::INFINITY), |acc, (j, v)| if v < acc.1 { (j, v) } else { acc });
        let center = best_j as f64 * h;
        let (t, v) = golden_section_min(|t| self.evaluate(t), center - h, center + h, 1e-13);
        let (t, v) = if v <= self.evaluate(center) {
            (t, v)
        } else {
            (center, self.evaluate(center))
        };
        (v, t.rem_euclid(2.0 * PI))
    }

    /// Default sampling density used by the factorization pipeline.
    pub fn default_samples(&self) -> usize {
        (64 * (self.band_degree() + 1)).max(1024)
    }
}

fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > xtol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

/// Analytic polynomial `q(z) = Σ_{k=0}^n y_k z^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticPolynomial {
    coeffs: Vec<C64>,
}

impl AnalyticPolynomial {
    pub fn new(coeffs: Vec<C64>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![ZERO] } else { coeffs };
        AnalyticPolynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    /// `c · Π (z - r)`.
    pub fn from_roots(scale: C64, roots: &[C64]) -> Self {
        let mut coeffs = vec![scale];
        for &r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        AnalyticPolynomial { coeffs }
    }

    /// `y_0..y_n` as stored.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Degree ignoring exactly-zero top coefficients.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != ZERO).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    pub fn evaluate(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::new(0, self.coeffs.clone())
    }

    /// `q̄·q` as a hermitian symbol.
    pub fn hermitian_square(&self) -> HermitianLaurentSymbol {
        let q = self.to_laurent();
        let p = &q.involute() * &q;
        HermitianLaurentSymbol::from_laurent(&p, f64::INFINITY).expect("q̄q is hermitian")
    }

    /// Roots via companion-matrix eigenvalues (with Newton polishing).
    pub fn roots(&self) -> Vec<C64> {
        linalg::polynomial_roots(&self.coeffs)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Outer (no roots with `|λ| < 1 - eps_circle`) and `y_0 > 0`.
    pub fn is_outer_normalized(&self, eps_circle: f64) -> bool {
        self.coeffs[0].re > 0.0
            && self.coeffs[0].im == 0.0
            && self.roots().iter().all(|r| r.norm() >= 1.0 - eps_circle)
    }
}
