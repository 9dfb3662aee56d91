//! Critical orbits, exceptional sets and repelling points.

use denv::algebra::{Divisor, Field, Poly, RatFun};
use denv::dynamics::{critical_divisor, exceptional_set, postcritical_closure, repelling_point_avoiding, OrbitCaps, Postcritical};

fn describe(name: &str, r: &RatFun) {
    let crit = critical_divisor(r);
    let e = exceptional_set(r);
    match postcritical_closure(r, OrbitCaps::default()) {
        Postcritical::Finite { divisor, iterations } => println!(
            "{name}: {} critical points, postcritical support {} after {iterations} steps, exceptional set {}",
            crit.degree(),
            divisor.support_size(),
            e.support_size()
        ),
        Postcritical::Overflow { iterations, reason } => {
            println!("{name}: critical orbit not finite within caps ({reason}, {iterations} steps)")
        }
    }
}

fn main() -> Result<(), denv::Error> {
    describe("x^2 - 2", &RatFun::from_poly(Poly::from_ints(&[-2, 0, 1])));
    describe("x^2 - 1", &RatFun::from_poly(Poly::from_ints(&[-1, 0, 1])));
    describe("x^2 + 1", &RatFun::from_poly(Poly::from_ints(&[1, 0, 1])));
    let r = RatFun::from_poly(Poly::from_ints(&[-2, 0, 1]));
    let avoid = Divisor::from_poly(&Poly::from_ints(&[-4, 0, 1]));
    let p = repelling_point_avoiding(&r, &avoid, Field::Rational, 6, 128)?;
    println!("repelling point of x^2 - 2 away from ±2: {} with multiplier {}", p.point, p.multiplier);
    Ok(())
}
