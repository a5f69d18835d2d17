//! How fast polynomial multiples of `q` approach `1`: outer `q` gives
//! decaying residuals, an interior root leaves a floor.

use ncfr::generate::outer_from_roots;
use ncfr::oracle::density_proxy;
use ncfr::C64;

fn main() {
    let schedule: Vec<usize> = (1..=12).collect();
    let cases = [
        ("root at 2", C64::new(2.0, 0.0)),
        ("root at 1.2i", C64::new(0.0, 1.2)),
        ("root at 1", C64::new(1.0, 0.0)),
        ("root at 0.5", C64::new(0.5, 0.0)),
    ];
    for (name, root) in cases {
        let q = outer_from_roots(1.0, &[root]);
        let r = density_proxy(&q, &schedule);
        let ratio = (r[11] / r[10]).powi(2);
        println!("{name:>14}: r_1 = {:.3e}, r_12 = {:.3e}, r_12²/r_11² = {ratio:.4} (|1/λ|² = {:.4})", r[0], r[11], 1.0 / root.norm_sqr());
    }
}
