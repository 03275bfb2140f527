//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{round_div, IntMatrix};

/// Result of [`smith_normal_form`]: `u * m * v == d`.
///
/// `v_inv` is the inverse of `v`, maintained alongside the column operations so
/// that callers can transport coordinates in both directions.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// The diagonal entries `d_1 | d_2 | ...`, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Diagonalizes `m` by unimodular row and column operations.
///
/// Pivots are chosen as the entry of smallest absolute value in the active
/// block, and every elimination uses the nearest-integer quotient so
/// remainders stay at most half the pivot.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    'outer: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t) else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -round_div(&a[(i, t)], &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = round_div(&a[(t, j)], &a[(t, t)]);
                let neg = -&q;
                a.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                v_inv.add_row_multiple(t, j, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d: a, v, v_inv }
}

fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Basis (as columns) of the integer kernel `{ z : m z = 0 }`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    (rank..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// Row-style Hermite normal form of the lattice spanned by the rows of a matrix.
///
/// Rows are in echelon form with positive pivots, entries above each pivot lie
/// in `[0, pivot)`, and zero rows are dropped. Two generating sets span the same
/// lattice iff their forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermiteBasis {
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl HermiteBasis {
    pub fn new(generators: &IntMatrix) -> Self {
        let mut a = generators.clone();
        let (m, n) = (a.rows(), a.cols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            loop {
                let best = (r..m)
                    .filter(|&i| !a[(i, c)].is_zero())
                    .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()));
                let Some(i) = best else { break };
                a.swap_rows(r, i);
                let mut done = true;
                for i in r + 1..m {
                    if a[(i, c)].is_zero() {
                        continue;
                    }
                    let q = -a[(i, c)].div_floor(&a[(r, c)]);
                    a.add_row_multiple(i, r, &q);
                    done &= a[(i, c)].is_zero();
                }
                if done {
                    break;
                }
            }
            if a[(r, c)].is_zero() {
                continue;
            }
            if a[(r, c)].is_negative() {
                a.negate_row(r);
            }
            for i in 0..r {
                let q = -a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &q);
            }
            pivots.push(c);
            r += 1;
        }
        let keep: Vec<usize> = (0..r).collect();
        let all: Vec<usize> = (0..n).collect();
        HermiteBasis {
            basis: a.select(&keep, &all),
            pivots,
        }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients `c` with `c * basis == x`, or `None` if `x` is not in the lattice.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.basis.cols(), "lattice dimension mismatch");
        let mut rest = x.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.rank()];
        let mut k = 0;
        for col in 0..rest.len() {
            if k < self.pivots.len() && self.pivots[k] == col {
                let p = &self.basis[(k, col)];
                let (q, r) = rest[col].div_mod_floor(p);
                if !r.is_zero() {
                    return None;
                }
                if !q.is_zero() {
                    for (j, item) in rest.iter_mut().enumerate().skip(col) {
                        *item -= &q * &self.basis[(k, j)];
                    }
                }
                coeffs[k] = q;
                k += 1;
            } else if !rest[col].is_zero() {
                return None;
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.solve(x).is_some()
    }

    /// Product of the pivots: the index of the lattice in `Z^n` when it has full rank.
    pub fn pivot_product(&self) -> BigInt {
        (0..self.rank())
            .map(|k| self.basis[(k, self.pivots[k])].clone())
            .product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_certificate(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        assert_eq!(s.u.determinant().abs(), BigInt::from(1));
        assert_eq!(s.v.determinant().abs(), BigInt::from(1));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0] >= BigInt::zero());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(s.d, id);
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.d, z);
        check_certificate(&z);
    }

    #[test]
    fn diag_two_three() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check_certificate(&m);
    }

    #[test]
    fn rectangular_and_negative() {
        check_certificate(&IntMatrix::from_i64(&[&[-4, 6, 8], &[10, -14, 4]]));
        check_certificate(&IntMatrix::from_i64(&[&[0, 0], &[0, -5], &[15, 0]]));
        check_certificate(&IntMatrix::zeros(0, 3));
        check_certificate(&IntMatrix::from_i64(&[&[-3, -18], &[19, 15]]));
    }

    #[test]
    fn kernel_of_row() {
        let m = IntMatrix::from_i64(&[&[2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for z in &k {
            assert!(m.mul_vec(z).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn hermite_is_canonical() {
        let a = HermiteBasis::new(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        let b = HermiteBasis::new(&IntMatrix::from_i64(&[&[2, 3], &[2, 6], &[4, 0]]));
        assert_eq!(a, b);
        assert!(a.contains(&[BigInt::from(4), BigInt::from(-3)]));
        assert!(!a.contains(&[BigInt::from(1), BigInt::from(0)]));
        let c = a.solve(&[BigInt::from(4), BigInt::from(-3)]).unwrap();
        assert_eq!(c, vec![BigInt::from(2), BigInt::from(-1)]);
    }
}
