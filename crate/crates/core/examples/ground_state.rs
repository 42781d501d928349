//! Lowest-level wavefunctions on a grid: annihilation residual and the elliptic density ridge.

use lossgain::landau_classical::derive_params;
use lossgain::quantum::ground::{default_grid, ground_state_eval};

fn main() -> lossgain::Result<()> {
    let p = derive_params(2.0, 0.0, 1.0)?;
    let grid = default_grid(&p);
    println!("grid {}², half width {:.3}", grid.n, grid.half_width);
    for m in 0..3 {
        let r = ground_state_eval(&p, m, grid)?;
        println!(
            "m = {m}: |aφ|/|φ| = {:.2e}, ridge ratio {:?}, moment ratio {:.5}, predicted {:.5}",
            r.residual, r.ridge_axis_ratio, r.moment_axis_ratio, r.predicted_axis_ratio
        );
    }
    Ok(())
}
