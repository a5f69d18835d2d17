//! Forward versus backward Cholesky on the worked example.

fn main() -> ncfr::Result<()> {
    let report = ncfr::demo::section3(40)?;
    print!("{}", ncfr::demo::render_section3(&report));
    Ok(())
}
