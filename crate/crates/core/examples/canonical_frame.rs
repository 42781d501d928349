//! The frame `𝓧 = S⁻¹ÔᵀX` that turns `M` into the metric `η` and removes the loss-gain terms.

use lossgain::frame::{build_frame, symplectic_residual};
use lossgain::linalg::Tolerances;
use lossgain::representations::{build_landau, build_tridiagonal, chain_gauge};

fn main() -> lossgain::Result<()> {
    let tol = Tolerances::default();
    for b in [build_landau(2.0, 0.3, 1.0), build_landau(0.5, 0.0, 1.0), build_tridiagonal(4, 0.2, 0.5, chain_gauge(4))?] {
        let f = build_frame(&b.spec, &vec![0.0; b.spec.n], &tol)?;
        println!("{} (region index {})", b.label, f.region_index);
        println!("  metric residual     {:.2e}", f.metric_residual(&b.spec.big_m));
        println!("  symplectic residual {:.2e}", symplectic_residual(&f.phase_space_jacobian()));
        println!("  η𝓡 = {:.6}", f.eta_r());
    }
    Ok(())
}
