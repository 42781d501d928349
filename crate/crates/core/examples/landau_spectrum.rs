//! Landau levels from a truncated two-mode number basis.

use lossgain::landau_classical::derive_params;
use lossgain::quantum::fock::landau_spectrum;

fn main() -> lossgain::Result<()> {
    for g in [0.0, 0.5, 1.0, 1.5] {
        let p = derive_params(2.0, 0.0, g)?;
        let s = landau_spectrum(&p, 30, 3)?;
        println!("gamma = {g}, |omega| = {:.6}", p.omega);
        for (n, l) in s.levels.iter().enumerate() {
            let exact = (n as f64 + 0.5) * p.omega;
            println!("  n = {n}: {:.9} (exact {exact:.9}), degeneracy {}", l.energy, l.degeneracy);
        }
    }
    Ok(())
}
