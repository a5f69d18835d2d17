//! Scalar spectral factorization `p = q̄·q` of a hermitian symbol that is
//! nonnegative on the unit circle.
//!
//! The factor returned is the outer one: no roots in the open unit disk and
//! `q(0) > 0`, which pins it down uniquely. Two independent backends are
//! provided:
//!
//! - [`fejer_riesz_roots`] splits the roots of `z^d p(z)` into the
//!   reciprocal-conjugate pairs `λ ↔ 1/conj(λ)` and keeps the outer half.
//! - [`bauer_factor`] reads the factor off the last row of the forward
//!   Cholesky factor of growing Toeplitz sections `T_N(p)`.

use crate::error::{Error, Result};
use crate::laurent::{AnalyticPolynomial, HermitianLaurentSymbol};
use crate::linalg;
use crate::C64;

/// Roots with `||λ| - 1| <= EPS_CIRCLE` are treated as lying on the circle.
pub const EPS_CIRCLE: f64 = 1e-7;
/// Circle roots closer than this are merged into one cluster.
pub const EPS_CLUSTER: f64 = 1e-6;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_BAUER_SCHEDULE: [usize; 5] = [32, 64, 128, 256, 512];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootLocation {
    Inside,
    Circle,
    Outside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    pub representative: C64,
    pub multiplicity: usize,
    pub location: RootLocation,
}

#[derive(Debug, Clone, Copy)]
pub struct SpectralOptions {
    pub tol: f64,
    pub eps_circle: f64,
    pub eps_cluster: f64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tol: DEFAULT_TOL,
            eps_circle: EPS_CIRCLE,
            eps_cluster: EPS_CLUSTER,
        }
    }
}

/// Outer factor together with the root bookkeeping that produced it.
#[derive(Debug, Clone)]
pub struct SpectralFactor {
    pub q: AnalyticPolynomial,
    /// Roots of `q`.
    pub roots: Vec<C64>,
    /// Clusters of the roots of `z^d p(z)`.
    pub clusters: Vec<RootCluster>,
    /// `min_on_circle(p)` as seen by the nonnegativity check.
    pub symbol_min: f64,
}

/// Outer factor via root splitting with default clustering thresholds.
pub fn fejer_riesz_roots(p: &HermitianLaurentSymbol, tol: f64) -> Result<AnalyticPolynomial> {
    let opts = SpectralOptions {
        tol,
        ..SpectralOptions::default()
    };
    fejer_riesz_roots_with(p, &opts).map(|f| f.q)
}

pub fn fejer_riesz_roots_with(p: &HermitianLaurentSymbol, opts: &SpectralOptions) -> Result<SpectralFactor> {
    if p.is_zero() {
        return Err(Error::DegenerateSymbol("symbol is identically zero".into()));
    }
    let scale = p.l1_norm();
    let (symbol_min, angle) = p.min_on_circle(p.default_samples());
    if symbol_min < -opts.tol * scale {
        return Err(Error::NotNonnegative(format!(
            "p(e^it) = {symbol_min:e} at t = {angle}"
        )));
    }
    let d = p.effective_degree();
    if d == 0 {
        let x0 = p.coeff(0).re;
        return Ok(SpectralFactor {
            q: AnalyticPolynomial::new(vec![C64::new(x0.sqrt(), 0.0)]),
            roots: Vec::new(),
            clusters: Vec::new(),
            symbol_min,
        });
    }

    // z^d p(z) = Σ_{k=0}^{2d} x_{k-d} z^k; x_{±d} != 0 so no roots at 0.
    let shifted: Vec<C64> = (0..=2 * d as i64).map(|k| p.coeff(k - d as i64)).collect();
    let all_roots = linalg::polynomial_roots(&shifted);
    let clusters = cluster_roots(&all_roots, opts.eps_circle, opts.eps_cluster);

    if let Some(bad) = clusters
        .iter()
        .find(|c| c.location == RootLocation::Circle && c.multiplicity % 2 == 1)
    {
        return Err(Error::NotNonnegative(format!(
            "root cluster at {} on the circle has odd multiplicity {}",
            bad.representative, bad.multiplicity
        )));
    }

    let mut selected: Vec<C64> = Vec::with_capacity(d);
    for c in &clusters {
        match c.location {
            RootLocation::Outside => {
                selected.extend(std::iter::repeat_n(c.representative, c.multiplicity))
            }
            RootLocation::Circle => {
                let on_circle = c.representative / c.representative.norm();
                selected.extend(std::iter::repeat_n(on_circle, c.multiplicity / 2));
            }
            RootLocation::Inside => {}
        }
    }
    if selected.len() != d {
        // Misclassified near-circle pair; fall back to the d largest moduli,
        // which picks one member of every reciprocal pair.
        let mut by_modulus = all_roots.clone();
        by_modulus.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
        selected = by_modulus[..d].to_vec();
    }

    let monic = AnalyticPolynomial::from_roots(C64::new(1.0, 0.0), &selected);
    let energy: f64 = monic.coeffs().iter().map(|c| c.norm_sqr()).sum();
    let magnitude = (p.coeff(0).re / energy).sqrt();
    let m0 = monic.coeff(0);
    if (m0 * magnitude).norm() < 1e-12 * scale {
        return Err(Error::DegenerateSymbol(format!("|q(0)| = {:e} underflows", (m0 * magnitude).norm())));
    }
    let phase = m0.conj() / m0.norm();
    let mut coeffs: Vec<C64> = monic.coeffs().iter().map(|&c| c * phase * magnitude).collect();
    coeffs[0] = C64::new(coeffs[0].norm(), 0.0);
    Ok(SpectralFactor {
        q: AnalyticPolynomial::new(coeffs),
        roots: selected,
        clusters,
        symbol_min,
    })
}

/// Groups roots by location and proximity.
///
/// Off-circle roots are kept individually (multiplicity 1 each unless they
/// coincide exactly). Circle roots are merged by single linkage at
/// `eps_cluster`, with the cluster mean as representative.
pub fn cluster_roots(roots: &[C64], eps_circle: f64, eps_cluster: f64) -> Vec<RootCluster> {
    let location = |r: &C64| {
        let m = r.norm();
        if (m - 1.0).abs() <= eps_circle * m.max(1.0) {
            RootLocation::Circle
        } else if m < 1.0 {
            RootLocation::Inside
        } else {
            RootLocation::Outside
        }
    };

    let mut clusters = Vec::new();
    let mut circle: Vec<C64> = Vec::new();
    for r in roots {
        match location(r) {
            RootLocation::Circle => circle.push(*r),
            loc => clusters.push(RootCluster {
                representative: *r,
                multiplicity: 1,
                location: loc,
            }),
        }
    }

    // Single-linkage components over the circle roots.
    let n = circle.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (circle[i] - circle[j]).norm() <= eps_cluster {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, &member) in circle.iter().enumerate() {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push(member),
            None => groups.push((root, vec![member])),
        }
    }
    for (_, members) in groups {
        let mean = members.iter().sum::<C64>() / members.len() as f64;
        clusters.push(RootCluster {
            representative: mean,
            multiplicity: members.len(),
            location: RootLocation::Circle,
        });
    }
    clusters
}

/// Outer factor via the Bauer recursion.
///
/// The forward Cholesky factor `L` of `T_N(p)` does not depend on `N` row
/// by row, so the schedule is a list of checkpoints: at each checkpoint the
/// last two rows are compared, and once their bands agree within
/// `tol · sqrt(Σ|x_k|)` the last row read right to left is returned.
pub fn bauer_factor(p: &HermitianLaurentSymbol, schedule: &[usize], tol: f64) -> Result<AnalyticPolynomial> {
    if p.is_zero() {
        return Err(Error::DegenerateSymbol("symbol is identically zero".into()));
    }
    let d = p.effective_degree();
    let scale = p.l1_norm();
    let stat_tol = tol * scale.sqrt();
    let max_n = schedule.iter().copied().max().unwrap_or(0);
    let mut checkpoints: Vec<usize> = schedule.iter().copied().filter(|&n| n >= 2).collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();

    // bands[i][k] = L[i][i-k], k = 0..=d
    let mut bands: Vec<Vec<C64>> = Vec::with_capacity(max_n);
    let mut next_check = checkpoints.iter().peekable();
    let mut last_diff = f64::INFINITY;
    for i in 0..max_n {
        let mut row = vec![C64::new(0.0, 0.0); d + 1];
        for k in (0..=d.min(i)).rev() {
            let j = i - k;
            // T[i][j] = x_{i-j}
            let mut s = p.coeff(k as i64);
            for m in (k + 1)..=d.min(i) {
                // L[i][i-m] * conj(L[j][i-m]), with L[j][i-m] = bands[j][m-k]
                let other = if k == 0 { row[m] } else { bands[j][m - k] };
                s -= row[m] * other.conj();
            }
            if k == 0 {
                let pivot = s.re;
                if pivot < -tol * scale {
                    return Err(Error::NotNonnegative(format!(
                        "Toeplitz section of order {} has pivot {pivot:e}",
                        i + 1
                    )));
                }
                row[0] = C64::new(pivot.max(0.0).sqrt(), 0.0);
            } else {
                let djj = bands[j][0].re;
                row[k] = if djj > 0.0 {
                    s / djj
                } else if s.norm() > tol * scale {
                    // zero pivot with a nonzero column entry: the section is indefinite
                    return Err(Error::NotNonnegative(format!(
                        "Toeplitz section of order {} is indefinite",
                        i + 1
                    )));
                } else {
                    C64::new(0.0, 0.0)
                };
            }
        }
        bands.push(row);

        if next_check.peek().is_some_and(|&&n| n == i + 1) {
            next_check.next();
            let last = &bands[i];
            let prev = &bands[i - 1];
            last_diff = last
                .iter()
                .zip(prev)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if last_diff <= stat_tol {
                return Ok(AnalyticPolynomial::new(last.clone()));
            }
        }
    }
    Err(Error::NotConverged(format!(
        "last-row band still moving by {last_diff:e} at N = {max_n}"
    )))
}

/// True iff every root of `q` satisfies `|λ| >= 1 - eps_circle`.
pub fn is_outer(q: &AnalyticPolynomial, eps_circle: f64) -> bool {
    !q.is_zero() && q.roots().iter().all(|r| r.norm() >= 1.0 - eps_circle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_identity(p: &HermitianLaurentSymbol, q: &AnalyticPolynomial, tol: f64) {
        let back = q.hermitian_square();
        let err = p.to_laurent().max_abs_diff(&back.to_laurent());
        assert!(err <= tol * p.l1_norm(), "factor identity off by {err:e}");
    }

    #[test]
    fn roots_backend_examples() {
        let p = HermitianLaurentSymbol::from_real(&[2.0, 1.0]);
        let q = fejer_riesz_roots(&p, 1e-9).unwrap();
        assert!(q.max_abs_diff(&AnalyticPolynomial::from_real(&[1.0, 1.0])) < 1e-7, "{q:?}");
        check_identity(&p, &q, 1e-9);

        let p = HermitianLaurentSymbol::from_real(&[5.0, 2.0]);
        let q = fejer_riesz_roots(&p, 1e-9).unwrap();
        assert!(q.max_abs_diff(&AnalyticPolynomial::from_real(&[2.0, 1.0])) < 1e-12);

        let p = HermitianLaurentSymbol::from_real(&[1.0]);
        assert_eq!(fejer_riesz_roots(&p, 1e-9).unwrap(), AnalyticPolynomial::from_real(&[1.0]));
    }

    #[test]
    fn complex_known_factor() {
        // q0 = 3 + (1+i) z - 0.5i z^2, roots outside the disk
        let q0 = AnalyticPolynomial::new(vec![C64::new(3.0, 0.0), C64::new(1.0, 1.0), C64::new(0.0, -0.5)]);
        assert!(is_outer(&q0, EPS_CIRCLE));
        let q = fejer_riesz_roots(&q0.hermitian_square(), 1e-9).unwrap();
        assert!(q.max_abs_diff(&q0) < 1e-12, "{q:?}");
    }

    #[test]
    fn errors() {
        let p = HermitianLaurentSymbol::from_real(&[0.0, 1.0]);
        assert!(matches!(fejer_riesz_roots(&p, 1e-9), Err(Error::NotNonnegative(_))));
        let p = HermitianLaurentSymbol::from_real(&[0.0, 0.0]);
        assert!(matches!(fejer_riesz_roots(&p, 1e-9), Err(Error::DegenerateSymbol(_))));
        let p = HermitianLaurentSymbol::from_real(&[-1.0]);
        assert!(matches!(fejer_riesz_roots(&p, 1e-9), Err(Error::NotNonnegative(_))));
    }

    #[test]
    fn odd_circle_cluster_is_rejected() {
        // Roots -1 (x2), 1 (x1): an odd circle cluster.
        let roots = [C64::new(-1.0, 0.0), C64::new(-1.0, 1e-9), C64::new(1.0, 0.0)];
        let clusters = cluster_roots(&roots, EPS_CIRCLE, EPS_CLUSTER);
        assert_eq!(clusters.len(), 2);
        assert!(clusters.iter().any(|c| c.multiplicity == 1 && c.location == RootLocation::Circle));
    }

    #[test]
    fn trailing_zero_coefficients_do_not_raise_degree() {
        let p = HermitianLaurentSymbol::from_real(&[5.0, 2.0, 0.0, 0.0]);
        let q = fejer_riesz_roots(&p, 1e-9).unwrap();
        assert_eq!(q.coeffs().len(), 2);
    }

    #[test]
    fn bauer_examples() {
        let p = HermitianLaurentSymbol::from_real(&[5.0, 2.0]);
        let q = bauer_factor(&p, &DEFAULT_BAUER_SCHEDULE, 1e-12).unwrap();
        assert!(q.max_abs_diff(&AnalyticPolynomial::from_real(&[2.0, 1.0])) < 1e-6);

        let p = HermitianLaurentSymbol::from_real(&[1.0]);
        let q = bauer_factor(&p, &[32], 1e-12).unwrap();
        assert_eq!(q, AnalyticPolynomial::from_real(&[1.0]));
    }

    #[test]
    fn bauer_does_not_converge_with_circle_zero() {
        // L[i][i] = sqrt((i+2)/(i+1)); the rows drift like 1/i^2.
        let p = HermitianLaurentSymbol::from_real(&[2.0, 1.0]);
        assert!(matches!(
            bauer_factor(&p, &DEFAULT_BAUER_SCHEDULE, 1e-10),
            Err(Error::NotConverged(_))
        ));
    }

    #[test]
    fn bauer_flags_negative_symbol() {
        let p = HermitianLaurentSymbol::from_real(&[1.0, 1.0]);
        assert!(matches!(
            bauer_factor(&p, &DEFAULT_BAUER_SCHEDULE, 1e-10),
            Err(Error::NotNonnegative(_))
        ));
    }

    #[test]
    fn is_outer_examples() {
        assert!(is_outer(&AnalyticPolynomial::from_real(&[1.0, 1.0]), EPS_CIRCLE));
        assert!(!is_outer(&AnalyticPolynomial::from_real(&[0.0, 1.0]), EPS_CIRCLE));
        assert!(is_outer(&AnalyticPolynomial::from_real(&[2.0, 1.0]), EPS_CIRCLE));
    }
}
