//! The built-in representations: closed-form eigenvalues, loss-gain profile and balance.

use lossgain::linalg::{eig_sym, Tolerances};
use lossgain::representations::{
    build_beta_modified, build_landau, build_pairwise, build_tridiagonal, build_uniform, chain_gauge,
};
use lossgain::system::{check_balance, derive_matrices, BlockMap};

fn main() -> lossgain::Result<()> {
    let tol = Tolerances::default();
    let bundles = [
        build_pairwise(2, 0.8, 1.5, vec![BlockMap::identity(); 2])?,
        build_beta_modified(1, 0.8, 1.5, 1.0, 0.4, vec![BlockMap::identity()])?,
        build_tridiagonal(5, 1.0, 0.3, chain_gauge(5))?,
        build_uniform(4, 1.0, 0.3, chain_gauge(4))?,
        build_landau(2.0, 0.3, 1.0),
    ];
    for b in &bundles {
        let numeric = eig_sym(&b.spec.big_m, tol.sym)?.values;
        let d = derive_matrices(&b.spec, &vec![0.2; b.spec.n], &tol)?;
        let balance = check_balance(&d.eta_diag(), tol.alg);
        println!("{}: n = {}, positive definite = {}", b.label, b.spec.n, b.positive_definite);
        println!("  closed form {:?}", b.analytic_eigenvalues);
        println!("  numerical   {numeric:?}");
        println!("  loss-gain diagonal {:?}, balanced = {}", d.eta_diag(), balance.balanced);
    }
    Ok(())
}
