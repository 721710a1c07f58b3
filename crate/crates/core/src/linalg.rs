//! Small dense linear algebra over the rationals.
//!
//! Every routine here is exact. Matrices are row-major `Vec<Vec<Q>>` and are
//! at most a handful of rows wide, so plain Gauss-Jordan elimination is used
//! throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_int(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns.
fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Indices of a maximal linearly independent subset of `rows`, chosen
/// greedily in the given order.
pub fn independent_rows(rows: &[Vec<Q>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<Q>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        acc.push(row.clone());
        if rank(&acc) > chosen.len() {
            chosen.push(i);
        } else {
            acc.pop();
        }
    }
    chosen
}

pub fn transpose(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    if n != b.len() || a.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Basis of `{x : m x = 0}`.
pub fn kernel(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut r = m.to_vec();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let delta = &f * &a[c][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    d
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Scales a nonzero rational vector to the primitive integer vector pointing
/// the same way. The zero vector maps to itself.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * q_int(&lcm)).to_integer()).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn to_q(v: &[BigInt]) -> Vec<Q> {
    v.iter().map(q_int).collect()
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

pub fn abs_cmp_zero(x: &Q) -> std::cmp::Ordering {
    if x.is_positive() {
        std::cmp::Ordering::Greater
    } else if x.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_det() {
        let a = m(&[&[1, 0, 0], &[0, 7, -1], &[0, -1, 0]]);
        assert_eq!(rank(&a), 3);
        assert_eq!(det(&a), q(-1));
        let b = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&b), 1);
        assert_eq!(det(&b), q(0));
    }

    #[test]
    fn solve_and_kernel() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q_frac(4, 5), q_frac(7, 5)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[q(1), q(1)]).is_none());

        let k = kernel(&m(&[&[1, 6, 0], &[0, 8, -1]]), 3);
        assert_eq!(k.len(), 1);
        assert_eq!(
            primitive(&k[0]),
            vec![BigInt::from(-6), BigInt::from(1), BigInt::from(8)]
        );
    }

    #[test]
    fn primitive_keeps_direction() {
        let v = primitive(&[q_frac(-1, 2), q(3)]);
        assert_eq!(v, vec![BigInt::from(-1), BigInt::from(6)]);
        assert_eq!(
            independent_rows(&m(&[&[0, 0], &[1, 1], &[2, 2], &[0, 1]])),
            vec![1, 3]
        );
    }
}
