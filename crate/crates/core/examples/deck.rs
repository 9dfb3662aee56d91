//! Deck transformations of the covers behind the exceptional families are affine; a
//! generic polynomial cover gives a nonlinear one.

use denv::algebra::{BigFloatC, Poly, Scalar};
use denv::koenigs::{deck_transform_series, exp_series, nonlinearity, polynomial_series, two_cos_series, weierstrass_series};

fn main() -> Result<(), denv::Error> {
    let w0 = BigFloatC::from_f64(0.3, 0.2, 128);
    let w1 = &w0 + &BigFloatC::two_pi_i(128);
    let g = deck_transform_series(&exp_series(&w0, 12), &exp_series(&w1, 12))?;
    println!("exp, w -> w + 2 pi i: slope {}, nonlinearity {:e}", g.coeff(1), nonlinearity(&g));

    let (c, s) = (Scalar::ratio(3, 5), Scalar::ratio(4, 5));
    let g = deck_transform_series(&two_cos_series(&c, &s, 12), &two_cos_series(&c, &(-&s), 12))?;
    println!("2 cos, w -> -w: slope {}, nonlinearity {}", g.coeff(1), nonlinearity(&g));

    let (g2, x, y) = (Scalar::zero(), Scalar::zero(), Scalar::from_int(2));
    let g = deck_transform_series(&weierstrass_series(&g2, &x, &y, 12), &weierstrass_series(&g2, &x, &(-&y), 12))?;
    println!("weierstrass, w -> -w: slope {}, nonlinearity {}", g.coeff(1), nonlinearity(&g));

    let p = Poly::from_ints(&[0, -1, 0, 1]);
    let g = deck_transform_series(&polynomial_series(&p, &Scalar::zero(), 12), &polynomial_series(&p, &Scalar::one(), 12))?;
    println!("w^3 - w, 0 -> 1: nonlinearity {}", nonlinearity(&g));
    Ok(())
}
