//! Jets of maps compose like the maps themselves.

use denv::algebra::{PointP1, Poly, RatFun, Scalar};
use denv::jets::{jet_of_map, Jet};

fn main() -> Result<(), denv::Error> {
    let f = RatFun::from_poly(Poly::from_ints(&[1, 1, 1]));
    let g = RatFun::new(Poly::from_ints(&[1]), Poly::from_ints(&[2, 1]));
    let x = Scalar::one();
    let jf = jet_of_map(&f, &PointP1::Finite(x.clone()), 4)?;
    let y = jf.target().clone();
    let jg = jet_of_map(&g, &PointP1::Finite(y), 4)?;
    let composed: Jet = jf.then(&jg)?;
    let direct = jet_of_map(&g.compose(&f), &PointP1::Finite(x), 4)?;
    println!("j(f) = {jf}\nj(g) = {jg}\nj(g)∘j(f) = {composed}\nj(g∘f) = {direct}");
    println!("inverse of j(f): {}", jf.invert());
    Ok(())
}
