//! Koenigs linearizers: x^2 at 1 gives the exponential, x^2 - 2 at 2 gives 2 cosh(sqrt w),
//! and the affine coefficient pulled back along the linearizer vanishes.

use denv::algebra::{Poly, RatFun, Scalar};
use denv::koenigs::{koenigs_at, linearization_residual, pullback_mu_series, scaling_defect};

fn main() -> Result<(), denv::Error> {
    let square = RatFun::from_poly(Poly::from_ints(&[0, 0, 1]));
    let psi = koenigs_at(&square, &Scalar::one(), 8)?;
    let coeffs: Vec<String> = psi.coefficients().iter().map(|c| c.to_string()).collect();
    println!("x^2 at 1: {}", coeffs.join(", "));
    println!("residual: {}", linearization_residual(&square, &psi)?);

    let cheb = RatFun::from_poly(Poly::from_ints(&[-2, 0, 1]));
    let psi2 = koenigs_at(&cheb, &Scalar::from_int(2), 5)?;
    let coeffs: Vec<String> = psi2.coefficients().iter().map(|c| c.to_string()).collect();
    println!("x^2 - 2 at 2: {}", coeffs.join(", "));

    let mu = RatFun::new(Poly::from_ints(&[-1]), Poly::x());
    let bar = pullback_mu_series(&mu, &psi)?;
    println!("pullback of -1/x is zero: {}", bar.is_zero());
    let bar0 = pullback_mu_series(&RatFun::zero(), &psi)?;
    println!("pullback of 0 is zero: {}", bar0.is_zero());
    println!("its scaling defect is zero: {}", scaling_defect(&bar0, &psi.multiplier, 1).is_zero());
    Ok(())
}
