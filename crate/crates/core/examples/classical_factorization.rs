//! Scalar factorization `p = q̄ q` by root splitting and by the Bauer recursion.

use ncfr::generate::outer_from_roots;
use ncfr::laurent::HermitianLaurentSymbol;
use ncfr::spectral::{self, DEFAULT_BAUER_SCHEDULE};
use ncfr::laurent::AnalyticPolynomial;
use ncfr::C64;

fn show(q: &AnalyticPolynomial) -> String {
    let terms: Vec<String> = q.coeffs().iter().map(|c| format!("{c:.6}")).collect();
    format!("[{}]", terms.join(", "))
}

fn main() -> ncfr::Result<()> {
    let p = HermitianLaurentSymbol::from_real(&[5.0, 2.0]);
    let q = spectral::fejer_riesz_roots(&p, 1e-9)?;
    println!("2z⁻¹ + 5 + 2z = |q|² with q = {}", show(&q));

    let truth = outer_from_roots(1.5, &[C64::new(1.2, 0.5), C64::new(-2.0, 1.0), C64::new(0.3, -1.1)]);
    let p = truth.hermitian_square();
    let roots = spectral::fejer_riesz_roots(&p, 1e-9)?;
    let bauer = spectral::bauer_factor(&p, &DEFAULT_BAUER_SCHEDULE, 1e-12)?;
    println!("\ndegree {} symbol", p.band_degree());
    println!("root splitting error: {:.2e}", roots.max_abs_diff(&truth));
    println!("Bauer recursion error: {:.2e}", bauer.max_abs_diff(&truth));

    // a double zero on the circle: roots still work, Bauer stalls
    let p = HermitianLaurentSymbol::from_real(&[2.0, 1.0]);
    println!("\nz⁻¹ + 2 + z by roots: {}", show(&spectral::fejer_riesz_roots(&p, 1e-9)?));
    match spectral::bauer_factor(&p, &DEFAULT_BAUER_SCHEDULE, 1e-10) {
        Ok(q) => println!("z⁻¹ + 2 + z by Bauer: {}", show(&q)),
        Err(e) => println!("z⁻¹ + 2 + z by Bauer: {e}"),
    }

    let p = HermitianLaurentSymbol::from_real(&[1.0, 1.0]);
    println!("\n1 + 2cos t: {}", spectral::fejer_riesz_roots(&p, 1e-9).unwrap_err());
    Ok(())
}
