//! Change of coordinates: conjugating a map by a Möbius transformation transforms the
//! coefficient of the equation it solves.

use denv::algebra::{Poly, RatFun, Scalar};
use denv::cli::format_ratfun;
use denv::equations::{gauge_transform, is_solution, GroupoidEq};

fn main() -> Result<(), denv::Error> {
    let r = RatFun::from_poly(Poly::from_ints(&[-2, 0, 1]));
    let e = GroupoidEq::G2(RatFun::new(Poly::from_ints(&[0, -1]), Poly::from_ints(&[-4, 0, 1])));
    let phi = RatFun::mobius(Scalar::from_int(2), Scalar::zero(), Scalar::zero(), Scalar::one())?;
    let conj = r.mobius_conjugate(&phi)?;
    let moved = gauge_transform(&e, &phi)?;
    println!("{} solves {e}", format_ratfun(&r));
    println!("{} solves {moved}: {}", format_ratfun(&conj), is_solution(&moved, &conj));
    Ok(())
}
