//! Deciding `X >= 0`: a triangular factor `Y` with `X = Y*Y`, or a witness.

use ncfr::algebra::AlgebraElement;
use ncfr::factorize::{factorize, Witness};
use ncfr::laurent::LaurentPoly;
use ncfr::{oracle, CMatrix, C64};

fn report(name: &str, x: &AlgebraElement) -> ncfr::Result<()> {
    let cert = factorize(x, 1e-9)?;
    println!("{name}: {:?}", cert.verdict);
    if let Some(y) = &cert.factor {
        println!("  Y corner:\n{:.6}", y.truncate(y.cut() + 1).map(|z| z.re));
        println!("  Y symbol coefficients: {:.6?}", y.symbol().coeffs().iter().map(|c| c.re).collect::<Vec<_>>());
        println!("  residual: {:.2e}", cert.diagnostics.residual.unwrap_or(f64::NAN));
    }
    match &cert.witness {
        Some(Witness::Symbol { angle, value }) => println!("  symbol is {value:.4} at t = {angle:.6}"),
        Some(w @ Witness::Vector { vector, .. }) => {
            println!("  vector witness of length {}, ⟨Xv,v⟩ = {:.4e}", vector.len(), w.recompute(x))
        }
        None => {}
    }
    println!("  smallest eigenvalue of the 200×200 section: {:.4e}", oracle::truncated_min_eig(x, 200)?);
    Ok(())
}

fn main() -> ncfr::Result<()> {
    let band = LaurentPoly::from_real(-1, &[2.0, 5.0, 2.0]);
    let corner = |v: f64| CMatrix::from_element(1, 1, C64::new(v, 0.0));

    report("T_p + 1", &AlgebraElement::from_parts(corner(1.0), band.clone())?)?;
    // corner PSD on its own, but the tail cannot absorb it
    report("T_p - 4.1 e_0⊗e_0", &AlgebraElement::from_parts(corner(-4.1), band)?)?;
    report("z + z⁻¹", &AlgebraElement::toeplitz(LaurentPoly::from_real(-1, &[1.0, 0.0, 1.0])))?;

    let cert = factorize(&ncfr::demo::section3_x(), 1e-9)?;
    println!("\ncertificate JSON:\n{}", serde_json::to_string_pretty(&cert).expect("serializable"));
    Ok(())
}
