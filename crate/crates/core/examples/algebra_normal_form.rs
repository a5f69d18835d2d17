//! Elements `T_p + F`, exact products, and the shift relations.

use ncfr::algebra::AlgebraElement;
use ncfr::laurent::LaurentPoly;
use ncfr::{CMatrix, C64};

fn main() -> ncfr::Result<()> {
    let s = AlgebraElement::shift();
    let s_adj = s.adjoint();

    println!("s*s = 1: {}", s_adj.multiply(&s)? == AlgebraElement::identity());
    let ss = s.multiply(&s_adj)?;
    println!("s s* = 1 + F with F = {} at cut {}", ss.finite_block()[(0, 0)], ss.cut());

    // s^2 (1 - s s*) s*^1 is the matrix unit sending e_1 to e_2
    let defect = AlgebraElement::identity().subtract(&ss);
    let unit = s.pow(2).multiply(&defect)?.multiply(&s_adj)?;
    println!("s^2 (1 - ss*) s* = e_1 ⊗ e_2: {}", unit == AlgebraElement::rank_one(1, 2));

    let a = AlgebraElement::from_parts(
        CMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 2.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]),
        LaurentPoly::from_real(-1, &[1.0, 3.0, 1.0]),
    )?;
    let b = a.adjoint().multiply(&a)?;
    let band: Vec<f64> = b.symbol().coeffs().iter().map(|c| c.re).collect();
    println!("\na*a: cut {}, symbol band {band:?}", b.cut());
    println!("8×8 section:\n{:.3}", b.truncate(8).map(|z| z.re));
    println!("JSON: {}", serde_json::to_string(&a).expect("serializable"));
    Ok(())
}
