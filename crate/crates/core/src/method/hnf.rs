//! Exact integer linear systems `M·c = v` via a column Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `M·U = H` with `U` unimodular and `H` in column echelon form: each pivot
/// is positive and entries left of a pivot are reduced modulo it.
pub struct ColumnHnf {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, in order
    pub pivots: Vec<(usize, usize)>,
}

fn col_combine(
    m: &mut [Vec<BigInt>],
    i: usize,
    j: usize,
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
) {
    // (col_i, col_j) ← (a·col_i + b·col_j, c·col_i + d·col_j)
    for row in m.iter_mut() {
        let (x, y) = (row[i].clone(), row[j].clone());
        row[i] = a * &x + b * &y;
        row[j] = c * &x + d * &y;
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[src] * f;
        row[dst] -= t;
    }
}

fn col_negate(m: &mut [Vec<BigInt>], i: usize) {
    for row in m.iter_mut() {
        row[i] = -&row[i];
    }
}

pub fn column_hnf(m: &[Vec<BigInt>], ncols: usize) -> ColumnHnf {
    let mut h: Vec<Vec<BigInt>> = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    for r in 0..h.len() {
        if k >= ncols {
            break;
        }
        for j in k + 1..ncols {
            if h[r][j].is_zero() {
                continue;
            }
            let (a, b) = (h[r][k].clone(), h[r][j].clone());
            let e = a.extended_gcd(&b);
            // [x  -b/g; y  a/g] has determinant 1
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            let nb = -bg;
            col_combine(&mut h, k, j, &e.x, &e.y, &nb, &ag);
            col_combine(&mut u, k, j, &e.x, &e.y, &nb, &ag);
        }
        if h[r][k].is_zero() {
            continue;
        }
        if h[r][k].is_negative() {
            col_negate(&mut h, k);
            col_negate(&mut u, k);
        }
        let piv = h[r][k].clone();
        for j in 0..k {
            let q = h[r][j].div_floor(&piv);
            if !q.is_zero() {
                col_axpy(&mut h, j, k, &q);
                col_axpy(&mut u, j, k, &q);
            }
        }
        pivots.push((r, k));
        k += 1;
    }
    ColumnHnf { h, u, pivots }
}

/// The particular solution of `M·c = v` with every free parameter of the
/// HNF parametrization set to zero, or `None` if there is no integer
/// solution.
pub fn solve(m: &[Vec<BigInt>], v: &[BigInt], ncols: usize) -> Option<Vec<BigInt>> {
    let f = column_hnf(m, ncols);
    let mut y = vec![BigInt::zero(); ncols];
    let mut next = 0;
    for (r, row) in f.h.iter().enumerate() {
        let mut val = v[r].clone();
        for (c, yc) in y.iter().enumerate().take(next) {
            val -= &row[c] * yc;
        }
        if next < f.pivots.len() && f.pivots[next].0 == r {
            let col = f.pivots[next].1;
            let (q, rem) = val.div_rem(&row[col]);
            if !rem.is_zero() {
                return None;
            }
            y[col] = q;
            next += 1;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(
        (0..ncols)
            .map(|i| f.u[i].iter().zip(&y).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn apply(m: &[Vec<BigInt>], c: &[BigInt]) -> Vec<BigInt> {
        m.iter()
            .map(|r| r.iter().zip(c).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn solves_and_detects_unsolvable() {
        let m = bi(&[&[2, 4, 6], &[1, 0, 1]]);
        let v = vec![BigInt::from(2), BigInt::from(3)];
        let c = solve(&m, &v, 3).unwrap();
        assert_eq!(apply(&m, &c), v);
        let v2 = vec![BigInt::from(1), BigInt::from(0)];
        assert!(solve(&m, &v2, 3).is_none());
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let m = bi(&[&[3, 5], &[7, 11]]);
        let c = solve(&m, &[BigInt::zero(), BigInt::zero()], 2).unwrap();
        assert!(c.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn dependent_rows_need_consistency() {
        let m = bi(&[&[1, 1], &[2, 2]]);
        assert!(solve(&m, &[BigInt::from(1), BigInt::from(2)], 2).is_some());
        assert!(solve(&m, &[BigInt::from(1), BigInt::from(3)], 2).is_none());
    }

    #[test]
    fn transform_is_consistent() {
        let m = bi(&[&[4, 6, 10], &[3, 9, 0], &[1, 1, 1]]);
        let f = column_hnf(&m, 3);
        for (r, row) in m.iter().enumerate() {
            for c in 0..3 {
                let s: BigInt = (0..3).map(|k| &row[k] * &f.u[k][c]).sum();
                assert_eq!(s, f.h[r][c]);
            }
        }
    }
}
