//! Pauli Hamiltonian with two supercharge pairs, and its paired spectrum.

use lossgain::landau_classical::derive_params;
use lossgain::susy::{build_supercharges, susy_spectrum_check};

fn main() -> lossgain::Result<()> {
    let p = derive_params(2.0, 0.0, 1.0)?;
    let r = build_supercharges(&p)?;
    for c in r.q_algebra.iter().chain(&r.big_q_algebra).chain(&r.commutes_with_hamiltonian) {
        println!("{:<22} remainder {:.1e}", c.name, c.residual);
    }
    for c in &r.big_q_algebra_unshifted {
        println!("{:<22} at angle {:.4}: remainder {:.2}", c.name, r.unshifted_angle, c.residual);
    }
    for m in &r.mixed {
        println!("{} = ({:.4} + {:.4}i) H_S, remainder {:.1e}", m.name, m.coefficient[0], m.coefficient[1], m.remainder);
    }
    let s = susy_spectrum_check(&p, 30)?;
    println!("ground {:.2e}, pairing residual {:.2e}", s.ground, s.pairing_residual);
    for (u, d) in s.up.iter().zip(s.down.iter().skip(1)) {
        println!("  up {:.8} ({}), down {:.8} ({})", u.energy, u.degeneracy, d.energy, d.degeneracy);
    }
    Ok(())
}
