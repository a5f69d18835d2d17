//! Seeded instances checked against the section oracle.

use ncfr::factorize::factorize;
use ncfr::generate::{self, InstanceMode};
use ncfr::oracle;

fn main() -> ncfr::Result<()> {
    let mut rng = generate::rng(2024);
    println!("{:>4} {:>11} {:>4} {:>13} {:>14}", "#", "mode", "cut", "verdict", "section min");
    for i in 0..10 {
        let mode = if i % 2 == 0 { InstanceMode::Psd } else { InstanceMode::Indefinite };
        let cut = i % 5;
        let x = generate::random_instance(&mut rng, cut, mode, 120);
        let cert = factorize(&x, 1e-9)?;
        let min_eig = oracle::truncated_min_eig(&x, 120)?;
        println!("{i:>4} {:>11} {cut:>4} {:>13} {:>14.3e}", format!("{mode:?}"), format!("{:?}", cert.verdict), min_eig);
    }
    Ok(())
}
