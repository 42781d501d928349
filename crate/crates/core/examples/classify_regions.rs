//! Signature of the kinetic matrix across the Landau parameter plane.

use lossgain::frame::classify;
use lossgain::linalg::Tolerances;
use lossgain::representations::build_landau;

fn main() -> lossgain::Result<()> {
    let tol = Tolerances::default();
    println!("{:>6} {:>6} {:>6}  region  eigenvalues of M", "B", "C", "gamma");
    for (b, c, g) in [(2.0, 0.0, 1.0), (2.0, 0.6, 1.0), (0.5, 0.0, 1.0), (0.0, 0.3, 0.4), (-2.0, 0.0, 1.0), (-3.0, 1.0, 2.0)] {
        let r = classify(&build_landau(b, c, g).spec.big_m, &tol)?;
        println!("{b:>6} {c:>6} {g:>6}  {:<6}  {:?}", r.label(), r.eigenvalues);
    }
    // on |B| = √(C² + γ²) the matrix is singular
    let boundary = classify(&build_landau(1.0, 0.6, 0.8).spec.big_m, &tol);
    println!("B = 1, C = 0.6, gamma = 0.8: {boundary:?}");
    Ok(())
}
