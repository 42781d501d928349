//! Landau levels tilted by a uniform field, against direct diagonalization.

use lossgain::landau_classical::derive_params;
use lossgain::quantum::hall::{hall_quantum, shifted_oscillator_levels};

fn main() -> lossgain::Result<()> {
    let p = derive_params(2.0, 0.0, 1.0)?;
    for k2 in [-1.0, 0.0, 1.0] {
        let q = hall_quantum(&p, 1.0, k2, 4)?;
        let oracle = shifted_oscillator_levels(p.omega, q.field_magnitude, k2, 120);
        println!("k2 = {k2}: centre {:.6}", q.center);
        for (n, e) in q.energies.iter().enumerate() {
            println!("  n = {n}: {e:.12} vs {:.12}", oracle.energies[n]);
        }
    }
    let q = hall_quantum(&p, 1.0, 0.0, 1)?;
    println!("current {:?}, classical drift {:?}", q.velocity, q.classical_drift);
    Ok(())
}
