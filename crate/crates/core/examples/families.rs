//! The three exceptional families, their semigroup laws and the coefficients they keep.

use denv::algebra::Scalar;
use denv::cli::format_ratfun;
use denv::equations::{is_solution, GroupoidEq};
use denv::families::{chebyshev, commutes, known_mu, lattes, monomial, FamilySpec, LattesParams, Normalization};

fn main() -> Result<(), denv::Error> {
    let t2 = chebyshev(2, Normalization::Classical)?;
    let t3 = chebyshev(3, Normalization::Classical)?;
    println!("T2 = {}, T3 = {}", format_ratfun(&t2), format_ratfun(&t3));
    println!("T2∘T3 == T6: {}", t2.compose(&t3) == chebyshev(6, Normalization::Classical)?);
    println!("x^2 and T2 commute: {}", commutes(&monomial(2)?, &t2));

    let l2 = lattes(&LattesParams::new(Scalar::from_int(4), Scalar::zero(), 2)?)?;
    let l3 = lattes(&LattesParams::new(Scalar::from_int(4), Scalar::zero(), 3)?)?;
    println!("L2 = {}", format_ratfun(&l2));
    println!("L2 and L3 commute: {}", commutes(&l2, &l3));

    let mu = known_mu(&FamilySpec::with_invariants(4, Scalar::from_int(4), Scalar::zero()))?.mu;
    println!("mu = {} solves G2 for L2: {}", format_ratfun(&mu), is_solution(&GroupoidEq::G2(mu.clone()), &l2));
    Ok(())
}
