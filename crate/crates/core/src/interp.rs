//! Evaluation of plane polynomials of degree at most r on Chebyshev grid
//! points, over K_d.

use crate::arith::{AlgNum, Field};
use crate::chebyshev::ChebData;
use crate::error::CurveError;
use crate::poly::{binomial2, monomial_basis, Monomial, MonomialOrder};

/// Rows are points, columns the monomials of degree at most `r` in x, y.
#[derive(Clone, Debug)]
pub struct EvalMatrix {
    pub points: Vec<(AlgNum, AlgNum)>,
    pub r: u32,
    pub columns: Vec<Monomial>,
    pub entries: Vec<Vec<AlgNum>>,
}

fn powers(x: &AlgNum, n: usize) -> Vec<AlgNum> {
    let mut out = vec![x.one_like()];
    for k in 1..=n {
        let next = out[k - 1].mul_ref(x);
        out.push(next);
    }
    out
}

impl EvalMatrix {
    pub fn new(points: Vec<(AlgNum, AlgNum)>, r: u32) -> Self {
        let columns = monomial_basis(r, 2, MonomialOrder::Grevlex);
        let entries = points
            .iter()
            .map(|(x, y)| {
                let (px, py) = (powers(x, r as usize), powers(y, r as usize));
                columns
                    .iter()
                    .map(|m| px[m.0[0] as usize].mul_ref(&py[m.0[1] as usize]))
                    .collect()
            })
            .collect();
        EvalMatrix { points, r, columns, entries }
    }

    pub fn rank(&self) -> usize {
        rank_exact(&self.entries)
    }
}

/// Exact rank over ℚ (Bareiss) or K_d (Gaussian elimination).
pub fn rank_exact<F: Field>(rows: &[Vec<F>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    F::matrix_rank(rows.to_vec())
}

fn b_points(data: &ChebData) -> Vec<(AlgNum, AlgNum)> {
    data.b_points.iter().map(|p| (p.x.clone(), p.y.clone())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thresholds {
    /// Largest r in `0..=d` with an injective evaluation map on B_d.
    pub max_injective: Option<u32>,
    /// Smallest r in `0..=d` with a surjective evaluation map on B_d.
    pub min_surjective: Option<u32>,
    /// Rank for each r in `0..=d`.
    pub ranks: Vec<usize>,
}

pub fn prop2_thresholds(data: &ChebData) -> Thresholds {
    let pts = b_points(data);
    let ranks: Vec<usize> = (0..=data.d).map(|r| EvalMatrix::new(pts.clone(), r).rank()).collect();
    let max_injective = (0..=data.d).rev().find(|&r| ranks[r as usize] == binomial2(r as i64 + 2));
    let min_surjective = (0..=data.d).find(|&r| ranks[r as usize] == pts.len());
    Thresholds { max_injective, min_surjective, ranks }
}

/// Dimension of the polynomials of degree at most `r` vanishing on B_d.
pub fn kernel_dim_e(data: &ChebData, r: u32) -> Result<usize, CurveError> {
    let m = EvalMatrix::new(b_points(data), r);
    Ok(m.columns.len() - m.rank())
}

/// Evaluation of the forms of degree `2d-3` at the nodes `(λ_p, λ_q, 1)` is
/// onto the node set.
pub fn lemma1_check_chebyshev(data: &ChebData) -> Result<bool, CurveError> {
    let d = data.d;
    if !(3..=6).contains(&d) {
        return Err(CurveError::DegreeOutOfRange { d, lo: 3, hi: 6 });
    }
    // z = 1, so forms of degree 2d-3 restrict to all of degree <= 2d-3
    let pts: Vec<(AlgNum, AlgNum)> = data.a_points.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    let n = pts.len();
    Ok(EvalMatrix::new(pts, 2 * d - 3).rank() == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::chebyshev::build;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        let q = |n: i64| Rational::from(n);
        let id: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| q((i == j) as i64)).collect()).collect();
        assert_eq!(rank_exact(&id), 3);
        let h = Rational::new(1, 2);
        assert_eq!(rank_exact(&[vec![q(1), h.clone(), h.clone()], vec![q(1), -h.clone(), -h]]), 2);
        assert_eq!(rank_exact(&vec![vec![q(0); 4]; 3]), 0);
    }

    #[test]
    fn thresholds() {
        for (d, pair) in [(3, (0, 1)), (4, (1, 2)), (5, (2, 3)), (6, (3, 4))] {
            let c = build(d).unwrap();
            let t = prop2_thresholds(&c);
            assert_eq!((t.max_injective, t.min_surjective), (Some(pair.0), Some(pair.1)), "d={d}");
        }
        assert_eq!(build(4).unwrap().b_points.len(), 5);
        assert_eq!(build(5).unwrap().b_points.len(), 8);
    }

    #[test]
    fn kernel_dims() {
        let c4 = build(4).unwrap();
        assert_eq!(kernel_dim_e(&c4, 2).unwrap(), 1);
        assert_eq!(kernel_dim_e(&c4, 1).unwrap(), 0);
        assert_eq!(kernel_dim_e(&build(5).unwrap(), 3).unwrap(), 2);
        for d in 3..=6 {
            let c = build(d).unwrap();
            let nb = c.b_points.len();
            for r in 0..=d {
                let expected = if r + 3 <= d { 0 } else { binomial2(r as i64 + 2) - nb };
                assert_eq!(kernel_dim_e(&c, r).unwrap(), expected, "d={d} r={r}");
            }
        }
    }

    #[test]
    fn surjective_at_nodes() {
        for d in 3..=6 {
            assert!(lemma1_check_chebyshev(&build(d).unwrap()).unwrap(), "d={d}");
        }
        assert!(lemma1_check_chebyshev(&build(7).unwrap()).is_err());
        let c4 = build(4).unwrap();
        let pts: Vec<(AlgNum, AlgNum)> = c4.a_points.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        let m = EvalMatrix::new(pts, 5);
        assert_eq!((m.rank(), m.columns.len()), (4, 21));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn rank_invariant_under_permutation_and_scaling(
            d in 3u32..7, r in 0u32..5, rot in 0usize..40, a in -5i64..6, b in 1i64..5,
        ) {
            let c = build(d).unwrap();
            let m = EvalMatrix::new(b_points(&c), r);
            let base = m.rank();
            let mut rows = m.entries.clone();
            let len = rows.len();
            rows.rotate_left(rot % len);
            for row in rows.iter_mut() {
                row.reverse();
            }
            // a nonzero field element that is not rational in general
            let s = &c.lambdas[0] + &AlgNum::from_rational(&c.field, Rational::new(a, b));
            if !s.is_zero() {
                rows[0] = rows[0].iter().map(|x| x * &s).collect();
            }
            prop_assert_eq!(rank_exact(&rows), base);
        }
    }
}
