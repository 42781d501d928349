//! Drift of the classical orbit in a uniform field and its Hall angle.

use lossgain::landau_classical::{derive_params, hall_drift, hall_mean_velocity};

fn main() -> lossgain::Result<()> {
    let e = 1.0;
    for g in [1.0, 0.5, 1e-3] {
        let p = derive_params(2.0, 0.0, g)?;
        let d = hall_drift(2.0, g, e)?;
        let v = hall_mean_velocity(&p, e, 200.0, 1e-3)?;
        println!("gamma = {g}: drift {:?}, measured {v:?}, Hall angle {:.4} deg", d.velocity, d.angle.to_degrees());
    }
    Ok(())
}
