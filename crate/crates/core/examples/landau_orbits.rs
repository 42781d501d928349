//! Closed-form orbits in the three regions against RK4, with the conserved orbit centre.

use lossgain::landau_classical::{closed_form, constants_of_motion, derive_params, fit_constants};
use lossgain::linalg::Tolerances;
use lossgain::system::integrate;

fn main() -> lossgain::Result<()> {
    let (x0, v0) = ([1.0, 0.0], [0.0, 0.5]);
    for (b, g, t_end) in [(2.0, 1.0, 10.0), (0.5, 1.0, 5.0), (-2.0, 1.0, 10.0)] {
        let p = derive_params(b, 0.0, g)?;
        let k = fit_constants(&p, x0, v0)?;
        let traj = integrate(&p.spec(), &x0, &v0, t_end, 1e-3, &Tolerances::default())?;
        let (t, s) = traj.last().expect("trajectory has samples");
        let exact = closed_form(&p, p.region, &k, t)?;
        let c = constants_of_motion(&p, p.region, x0, v0)?;
        println!("B = {b}, gamma = {g}: region {}, |omega| = {:.6}", p.region, p.omega);
        println!("  x({t}) RK4 {:?}", s.x);
        println!("  x({t}) exact {:?}", exact.x);
        println!("  orbit centre {:?}", c.c_vec);
    }
    Ok(())
}
