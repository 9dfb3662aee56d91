//! Exact dense linear algebra over [`Scalar`].
//!
//! Elimination is fraction-free (Bareiss) after clearing row denominators, which keeps
//! entry growth linear in the number of steps; a final pass brings the echelon form to
//! reduced form with field divisions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::poly::Poly;
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + &(a * rhs.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn clear_row_denominators(&mut self) {
        for r in 0..self.rows {
            let l = (0..self.cols).fold(BigInt::one(), |acc, c| acc.lcm(&self.get(r, c).denominator_lcm()));
            if !l.is_one() {
                let s = Scalar::from_bigint(l);
                for c in 0..self.cols {
                    let v = self.get(r, c) * &s;
                    self.set(r, c, v);
                }
            }
        }
    }

    /// Bareiss forward elimination in place. Returns pivot columns and the number of swaps.
    fn bareiss(&mut self) -> (Vec<usize>, usize) {
        let mut prev = Scalar::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                swaps += 1;
            }
            let pivot = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let lead = self.get(i, c).clone();
                for j in c + 1..self.cols {
                    let v = &(&(&pivot * self.get(i, j)) - &(&lead * self.get(r, j))) / &prev;
                    self.set(i, j, v);
                }
                self.set(i, c, Scalar::zero());
            }
            // rows above the pivot row are untouched; entries left of c in lower rows are zero
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        (pivots, swaps)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        m.clear_row_denominators();
        let (pivots, _) = m.bareiss();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..r {
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.clear_row_denominators();
        m.bareiss().0.len()
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Scalar::one();
        }
        let mut m = self.clone();
        let (pivots, swaps) = m.bareiss();
        if pivots.len() < self.rows {
            return Scalar::zero();
        }
        let d = m.get(self.rows - 1, self.cols - 1).clone();
        if swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// `det(y I - M)` as a monic polynomial in `y`, by exact interpolation.
    pub fn charpoly(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let xs: Vec<Scalar> = (0..=n as i64).map(Scalar::from_int).collect();
        let ys: Vec<Scalar> = xs
            .iter()
            .map(|y| {
                let mut a = self.clone();
                for i in 0..n {
                    for j in 0..n {
                        let v = if i == j { y - a.get(i, j) } else { -a.get(i, j) };
                        a.set(i, j, v);
                    }
                }
                a.det()
            })
            .collect();
        interpolate(&xs, &ys)
    }
}

/// Newton interpolation through distinct nodes.
pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Poly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut coef: Vec<Scalar> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = &(&coef[i] - &coef[i - 1]) / &(&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Poly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Poly::linear_root(&xs[i])) + &Poly::constant(coef[i].clone());
    }
    p
}

/// Affine solution set of `A c = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Solves `A c = b` exactly; `None` when inconsistent. The particular solution has all free
/// variables zero and the kernel basis is read off the reduced echelon form.
pub fn solve_affine(a: &Matrix, b: &[Scalar]) -> Option<AffineSolution> {
    assert_eq!(a.rows(), b.len());
    let n = a.cols();
    let mut aug = Matrix::zeros(a.rows(), n + 1);
    for r in 0..a.rows() {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, n, b[r].clone());
    }
    let (m, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![Scalar::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m.get(r, n).clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = Scalar::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m.get(r, f);
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn determinant() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1), s(0)], vec![s(1), s(3), s(1)], vec![s(0), s(1), s(4)]]);
        assert_eq!(m.det(), s(18));
        let sing = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert_eq!(sing.det(), s(0));
        let swap = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
        assert_eq!(swap.det(), s(-1));
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of x^2 - 3x + 2
        let m = Matrix::from_rows(vec![vec![s(0), s(-2)], vec![s(1), s(3)]]);
        assert_eq!(m.charpoly(), Poly::from_ints(&[2, -3, 1]));
    }

    #[test]
    fn affine_solve() {
        // x + y = 2, 2x + 2y = 4: particular (2, 0), kernel (-1, 1)
        let a = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(2), s(2)]]);
        let sol = solve_affine(&a, &[s(2), s(4)]).unwrap();
        assert_eq!(sol.particular, vec![s(2), s(0)]);
        assert_eq!(sol.kernel, vec![vec![s(-1), s(1)]]);
        assert!(solve_affine(&a, &[s(2), s(5)]).is_none());
    }

    #[test]
    fn rational_entries() {
        let a = Matrix::from_rows(vec![vec![Scalar::ratio(1, 2), Scalar::ratio(1, 3)], vec![Scalar::ratio(1, 4), s(1)]]);
        let sol = solve_affine(&a, &[s(1), s(1)]).unwrap();
        let x = &sol.particular[0];
        let y = &sol.particular[1];
        assert_eq!(&(&Scalar::ratio(1, 2) * x) + &(&Scalar::ratio(1, 3) * y), s(1));
        assert_eq!(&(&Scalar::ratio(1, 4) * x) + y, s(1));
        assert!(sol.kernel.is_empty());
    }
}
