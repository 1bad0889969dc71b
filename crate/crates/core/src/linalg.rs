//! Small dense matrix helpers over exact rationals and machine integers.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::Rational;

pub type QMatrix = Vec<Vec<Rational>>;
pub type IMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn int_identity(n: usize) -> IMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for (t, bt) in b.iter().enumerate() {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bt[j].is_zero() {
                    out[i][j] += &a[i][t] * &bt[j];
                }
            }
        }
    }
    out
}

pub fn int_mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (t, bt) in b.iter().enumerate() {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * bt[j];
            }
        }
    }
    out
}

pub fn int_apply(a: &IMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn to_rational(a: &IMatrix) -> QMatrix {
    a.iter()
        .map(|r| r.iter().map(|&x| crate::q(x)).collect())
        .collect()
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(a: &QMatrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    d
}

/// Solves `a x = b`; `None` when `a` is singular.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let piv = m[c][c].clone();
        for k in c..=n {
            m[c][k] = &m[c][k] / &piv;
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..=n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let id = identity(n);
    let cols: Option<Vec<Vec<Rational>>> = (0..n)
        .map(|j| {
            let e: Vec<Rational> = id.iter().map(|r| r[j].clone()).collect();
            solve(a, &e)
        })
        .collect();
    let cols = cols?;
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Leading principal `k x k` minor.
pub fn leading_minor(a: &QMatrix, k: usize) -> Rational {
    let sub: QMatrix = a[..k].iter().map(|r| r[..k].to_vec()).collect();
    det(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn m(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(det(&a), q(4));
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(3));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_matches_hand_computation() {
        // A2: omega_1 + omega_2 = alpha_1 + alpha_2
        let a = m(&[&[2, -1], &[-1, 2]]);
        assert_eq!(solve(&a, &[q(1), q(1)]).unwrap(), vec![q(1), q(1)]);
    }

    #[test]
    fn leading_minor_of_identity() {
        assert_eq!(leading_minor(&identity(4), 2), q(1));
    }
}
