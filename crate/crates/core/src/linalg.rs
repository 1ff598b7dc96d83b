//! Exact linear algebra: fraction-free Bareiss elimination over ℤ for
//! rational matrices, and Gauss–Jordan elimination over any [`Field`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{Field, Rational};

fn count_nonzero_big(row: &[BigInt], from: usize) -> usize {
    row[from..].iter().filter(|x| !x.is_zero()).count()
}

/// Rank of an integer matrix by Bareiss elimination. Among the candidate
/// pivot rows the sparsest is chosen.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let pivot = (rank..m)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| count_nonzero_big(&a[i], col));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pv = &prow[col];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[col]);
            for j in col + 1..n {
                let lhs_zero = row[j].is_zero();
                if lhs_zero && (f.is_zero() || prow[j].is_zero()) {
                    continue;
                }
                let mut v = pv * &row[j];
                if !f.is_zero() && !prow[j].is_zero() {
                    v -= &f * &prow[j];
                }
                debug_assert!(v.is_multiple_of(&prev));
                row[j] = v / &prev;
            }
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Multiply each row by the lcm of its denominators to get an integer matrix
/// of the same rank.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    bareiss_rank(integer_rows(rows))
}

/// Rank by elimination over a field, touching only the nonzero entries of
/// each pivot row.
pub fn gaussian_rank<F: Field>(mut a: Vec<Vec<F>>) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let pivot = (rank..m)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col..].iter().filter(|x| !x.is_zero()).count());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let inv = a[rank][col].inv();
        let support: Vec<usize> = (col + 1..n).filter(|&j| !a[rank][j].is_zero()).collect();
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].mul_ref(&inv);
            row[col] = factor.zero_like();
            for &j in &support {
                row[j] -= &factor.mul_ref(&prow[j]);
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(a: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].inv();
        for j in col..a[r].len() {
            if !a[r][j].is_zero() {
                a[r][j] = a[r][j].mul_ref(&inv);
            }
        }
        let support: Vec<usize> = (col..a[r].len()).filter(|&j| !a[r][j].is_zero()).collect();
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for &j in &support {
                row[j] -= &factor.mul_ref(&prow[j]);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{v : A v = 0}` of an `m x ncols` matrix.
pub fn kernel_basis<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let Some(template) = rows.iter().flatten().next().cloned() else {
        return Vec::new();
    };
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, ncols);
    let zero = template.zero_like();
    let one = template.one_like();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![zero.clone(); ncols];
            v[fc] = one.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution<F> {
    Unique(Vec<F>),
    /// One particular solution; the kernel has the given dimension.
    Many(Vec<F>, usize),
    Inconsistent,
}

pub fn solve<F: Field>(rows: &[Vec<F>], rhs: &[F]) -> Solution<F> {
    assert_eq!(rows.len(), rhs.len());
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return Solution::Inconsistent;
    }
    let zero = rhs[0].zero_like();
    let mut x = vec![zero; ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][ncols].clone();
    }
    if pivots.len() == ncols {
        Solution::Unique(x)
    } else {
        Solution::Many(x, ncols - pivots.len())
    }
}

pub fn mat_vec<F: Field>(rows: &[Vec<F>], v: &[F]) -> Vec<F> {
    rows.iter()
        .map(|row| {
            let mut acc = v[0].zero_like();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc += &a.mul_ref(b);
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rational_rank(&qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rational_rank(&qm(&[&[0, 0], &[0, 0]])), 0);
        let half = Rational::new(1, 2);
        let rows = vec![
            vec![q(1), half.clone(), half.clone()],
            vec![q(1), -half.clone(), -half],
        ];
        assert_eq!(rational_rank(&rows), 2);
        assert_eq!(gaussian_rank(rows), 2);
        assert_eq!(rational_rank(&qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]])), 2);
    }

    #[test]
    fn kernel_and_solve() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        let a = qm(&[&[2, 1], &[1, 3]]);
        match solve(&a, &[q(3), q(4)]) {
            Solution::Unique(x) => assert_eq!(x, vec![q(1), q(1)]),
            other => panic!("{other:?}"),
        }
        let a = qm(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&a, &[q(1), q(2)]), Solution::Inconsistent);
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(m, n)| {
            proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..5], n), m)
        })
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_field_elimination(rows in arb_matrix()) {
            let qr: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            prop_assert_eq!(rational_rank(&qr), gaussian_rank(qr.clone()));
        }

        #[test]
        fn rank_invariant_under_permutation_and_scaling(rows in arb_matrix(), s in 1i64..9, rot in 0usize..7) {
            let qr: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let base = rational_rank(&qr);
            let mut perm = qr.clone();
            let len = perm.len();
            perm.rotate_left(rot % len);
            for row in perm.iter_mut() {
                row.reverse();
            }
            perm[0] = perm[0].iter().map(|x| x * &Rational::new(s, 3)).collect();
            prop_assert_eq!(rational_rank(&perm), base);
        }
    }
}
