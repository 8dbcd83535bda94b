use bracket_core::bracket::bracket_level;
use bracket_core::filters::builtin;
use bracket_core::verify::{default_range, default_tests, verify, VerifyConfig};

fn main() -> bracket_core::Result<()> {
    let haar = builtin("haar", 1)?;
    println!("h = {:?}", haar.bank.h.taps());

    let dil = &haar.bank.dilation;
    let b = bracket_level(&haar.phi, &haar.phi, dil, 1, None)?;
    println!("[phi, phi]_1 = {:?}", b.taps());

    let cfg = VerifyConfig { n_range: default_range("haar"), ..Default::default() };
    let report = verify(&haar.psi, dil, &default_tests("haar", 1), &cfg)?;
    println!("{:?}: ortho {:.1e}, recon {:.1e}", report.verdict, report.ortho_residual,
        report.recon_residuals.iter().cloned().fold(0.0, f64::max));
    Ok(())
}
