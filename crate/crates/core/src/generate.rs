//! Seeded random instances for tests, examples and `ncfr random`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, TriangularElement};
use crate::laurent::AnalyticPolynomial;
use crate::oracle;
use crate::{CMatrix, C64};

/// Indefinite instances must sit at least this far (relative) below zero.
pub const INDEFINITE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceMode {
    Psd,
    Indefinite,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex Gaussian with `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Random roots with modulus uniform in `[r_min, r_max]` and uniform angle.
pub fn random_roots<R: Rng + ?Sized>(rng: &mut R, count: usize, r_min: f64, r_max: f64) -> Vec<C64> {
    (0..count)
        .map(|_| {
            let r = rng.random_range(r_min..=r_max);
            let t = rng.random_range(0.0..2.0 * PI);
            C64::from_polar(r, t)
        })
        .collect()
}

/// `q(z) = q0 · Π (1 - z/λ)` with `q(0) = q0 > 0`: outer when every `|λ| >= 1`.
pub fn outer_from_roots(q0: f64, roots: &[C64]) -> AnalyticPolynomial {
    let lead = roots.iter().fold(C64::new(q0, 0.0), |acc, r| acc * (-1.0 / r));
    let mut coeffs = AnalyticPolynomial::from_roots(lead, roots).coeffs().to_vec();
    coeffs[0] = C64::new(q0, 0.0);
    AnalyticPolynomial::new(coeffs)
}

/// Random outer polynomial of the given degree, roots with `|λ| ∈ [r_min, r_max]`, `q(0) = 1`.
pub fn random_outer<R: Rng + ?Sized>(rng: &mut R, degree: usize, r_min: f64, r_max: f64) -> AnalyticPolynomial {
    let roots = random_roots(rng, degree, r_min, r_max);
    outer_from_roots(1.0, &roots)
}

/// Random lower-triangular element of the given cut: Gaussian corner and an
/// outer symbol of random degree `<= cut` with `q(0) = |g|`, `g` Gaussian.
pub fn random_triangular<R: Rng + ?Sized>(rng: &mut R, cut: usize) -> TriangularElement {
    let size = cut + 1;
    let mut corner = CMatrix::zeros(size, size);
    for i in 0..size {
        for j in 0..=i {
            corner[(i, j)] = complex_gaussian(rng);
        }
    }
    let degree = rng.random_range(0..=cut);
    let roots = random_roots(rng, degree, 1.0, 3.0);
    let q0 = complex_gaussian(rng).norm().max(0.05);
    let q = outer_from_roots(q0, &roots);
    TriangularElement::from_corner_and_symbol(&corner, &q).expect("lower-triangular corner")
}

/// `Y0* Y0` for a random triangular `Y0`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, cut: usize) -> AlgebraElement {
    random_triangular(rng, cut).hermitian_square()
}

/// A hermitian element that the section oracle shows to be indefinite by a
/// margin of [`INDEFINITE_MARGIN`] relative to its magnitude.
///
/// Starts from `Y0* Y0` and either lowers the whole operator by more than
/// the symbol's minimum (making the symbol negative somewhere) or subtracts
/// a rank-one term `t·vv*` on the corner with `t` around `⟨Xv, v⟩`. Draws
/// are rejected until the oracle at order `truncation` confirms.
pub fn random_indefinite<R: Rng + ?Sized>(rng: &mut R, cut: usize, truncation: usize) -> AlgebraElement {
    loop {
        let x = random_psd(rng, cut);
        let candidate = if rng.random_bool(0.3) {
            let sym = crate::laurent::HermitianLaurentSymbol::from_laurent(x.symbol(), f64::INFINITY)
                .expect("Y*Y is hermitian");
            let (pmin, _) = sym.min_on_circle(sym.default_samples());
            let shift = pmin + rng.random_range(0.05..0.5) * x.magnitude();
            x.subtract(&AlgebraElement::identity().scale(C64::new(shift, 0.0)))
        } else {
            let size = cut + 1;
            let mut v: Vec<C64> = (0..size).map(|_| complex_gaussian(rng)).collect();
            let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            v.iter_mut().for_each(|c| *c /= norm);
            let corner = x.truncate(size);
            let vx: C64 = (0..size)
                .flat_map(|i| (0..size).map(move |j| (i, j)))
                .map(|(i, j)| v[i].conj() * corner[(i, j)] * v[j])
                .sum();
            let t = vx.re * rng.random_range(0.6..1.6);
            let rank_one = CMatrix::from_fn(size, size, |i, j| v[i] * v[j].conj() * t);
            x.subtract(&AlgebraElement::finite(rank_one).expect("square"))
        };
        // exact hermitian symmetry for the oracle
        let candidate = candidate.add(&candidate.adjoint()).scale(C64::new(0.5, 0.0));
        let n = truncation.max(candidate.cut() + 1);
        let min_eig = oracle::truncated_min_eig(&candidate, n).expect("hermitian by construction");
        if min_eig < -INDEFINITE_MARGIN * candidate.magnitude() {
            return candidate;
        }
    }
}

pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, cut: usize, mode: InstanceMode, truncation: usize) -> AlgebraElement {
    match mode {
        InstanceMode::Psd => {
            let x = random_psd(rng, cut);
            x.add(&x.adjoint()).scale(C64::new(0.5, 0.0))
        }
        InstanceMode::Indefinite => random_indefinite(rng, cut, truncation),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outer_from_roots_has_requested_roots() {
        let roots = [C64::new(2.0, 0.0), C64::new(0.0, -1.5)];
        let q = outer_from_roots(3.0, &roots);
        assert_eq!(q.coeff(0), C64::new(3.0, 0.0));
        for r in roots {
            assert!(q.evaluate(r).norm() < 1e-12);
        }
    }

    #[test]
    fn triangular_is_lower() {
        let mut r = rng(7);
        for cut in 0..5 {
            let y = random_triangular(&mut r, cut);
            let t = y.element().truncate(12);
            for i in 0..12 {
                for j in i + 1..12 {
                    assert_eq!(t[(i, j)], C64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = random_instance(&mut rng(42), 3, InstanceMode::Indefinite, 60);
        let b = random_instance(&mut rng(42), 3, InstanceMode::Indefinite, 60);
        assert_eq!(a, b);
    }
}
