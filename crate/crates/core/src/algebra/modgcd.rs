//! Multi-modular gcd of integer polynomials: images modulo 61-bit primes, combined by the
//! Chinese remainder theorem until the lift stabilizes and divides both inputs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 || n % 2 == 0 {
        return n == 2;
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 0 || x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^61`, largest first.
fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 61) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    while a.len() > db {
        let c = mul_mod(*a.last().expect("nonempty"), inv, p);
        let shift = a.len() - 1 - db;
        for (j, bc) in b.iter().enumerate() {
            let t = mul_mod(c, *bc, p);
            a[shift + j] = (a[shift + j] + p - t) % p;
        }
        trim(&mut a);
    }
    a
}

/// Monic gcd modulo `p`; both inputs are nonzero modulo `p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem_mod(a, &b, p);
        a = b;
        b = r;
    }
    let inv = pow_mod(*a.last().expect("nonzero gcd"), p - 2, p);
    a.iter().map(|c| mul_mod(*c, inv, p)).collect()
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    if c * 2 > *m {
        c - m
    } else {
        c.clone()
    }
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let v: Vec<BigInt> = if g.is_zero() || g.is_one() { v } else { v.into_iter().map(|c| c / &g).collect() };
    if v.last().is_some_and(|c| c.sign() == Sign::Minus) {
        v.into_iter().map(|c| -c).collect()
    } else {
        v
    }
}

/// `a / b` over the integers, or `None` if `b` does not divide `a`.
pub(super) fn exact_div(mut a: Vec<BigInt>, b: &[BigInt]) -> Option<Vec<BigInt>> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let lb = &b[db];
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let (q, r) = a[k + db].div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                a[k + j] -= &q * bc;
            }
        }
        quot[k] = q;
    }
    a.iter().all(|c| c.is_zero()).then_some(quot)
}

/// Primitive gcd, with positive leading coefficient, of nonzero integer polynomials
/// without trailing zero coefficients.
pub(super) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (a, b) = (primitive(a.to_vec()), primitive(b.to_vec()));
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let h = a.last().expect("nonzero").gcd(b.last().expect("nonzero"));
    let mut lift: Option<(Vec<BigInt>, BigInt)> = None;
    for p in primes() {
        if reduce(a.last().expect("nonzero"), p) == 0 || reduce(b.last().expect("nonzero"), p) == 0 {
            continue;
        }
        let image = gcd_mod(a.iter().map(|c| reduce(c, p)).collect(), b.iter().map(|c| reduce(c, p)).collect(), p);
        if image.len() == 1 {
            return vec![BigInt::one()];
        }
        let hp = reduce(&h, p);
        let image: Vec<u64> = image.iter().map(|c| mul_mod(*c, hp, p)).collect();
        let bp = BigInt::from(p);
        let next = match lift.take() {
            Some((c, m)) if c.len() == image.len() => {
                let minv = BigInt::from(pow_mod(reduce(&m, p), p - 2, p));
                let combined: Vec<BigInt> = c
                    .iter()
                    .zip(&image)
                    .map(|(ci, &r)| ci + &m * ((BigInt::from(r) - ci) * &minv).mod_floor(&bp))
                    .collect();
                let mp = &m * &bp;
                let old: Vec<BigInt> = c.iter().map(|x| symmetric(x, &m)).collect();
                let new: Vec<BigInt> = combined.iter().map(|x| symmetric(x, &mp)).collect();
                if old == new {
                    let cand = primitive(new);
                    if exact_div(a.clone(), &cand).is_some() && exact_div(b.clone(), &cand).is_some() {
                        return cand;
                    }
                }
                (combined, mp)
            }
            // a smaller degree means every earlier prime was unlucky
            Some((c, m)) if c.len() < image.len() => (c, m),
            _ => (image.into_iter().map(BigInt::from).collect(), bp),
        };
        lift = Some(next);
    }
    unreachable!("the prime iterator is unbounded")
}
