//! Ladder operators of the Landau problem checked symbolically in the Weyl-symbol algebra.

use lossgain::landau_classical::derive_params;
use lossgain::quantum::ladder::commutation_table;

fn main() -> lossgain::Result<()> {
    let p = derive_params(2.0, 0.0, 1.0)?;
    for c in commutation_table(&p)? {
        println!("{:<28} remainder {:.1e}", c.name, c.residual);
    }
    Ok(())
}
