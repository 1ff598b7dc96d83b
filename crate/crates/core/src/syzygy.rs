//! Syzygies of the partial derivatives `(f_x, f_y, f_z)` degree by degree,
//! by exact linear algebra.
//!
//! A syzygy of degree `r` is a triple `(a_1, a_2, a_3)` of forms of degree
//! `r` with `a_1 f_x + a_2 f_y + a_3 f_z = 0`.

use std::collections::HashMap;

use crate::arith::{Field, Rational};
use crate::chebyshev::{minus_conic, minus_conic_count, projective_curve, ChebData, Sign};
use crate::error::CurveError;
use crate::hilbert::MilnorProfile;
use crate::linalg::{kernel_basis, solve, Solution};
use crate::poly::{binomial2, monomial_basis, KPoly, MPoly, Monomial, MonomialOrder, QPoly};

/// `dim S_n` for three variables, zero for negative `n`.
fn dim_s(n: i64) -> usize {
    binomial2(n + 2)
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

/// Matrix of `(a_1, a_2, a_3) -> a_1 f_x + a_2 f_y + a_3 f_z` on `S_r^3`.
#[derive(Clone, Debug)]
pub struct DegreeMatrix {
    pub r: u32,
    /// Monomial basis of `S_{r+d-1}`.
    pub rows: Vec<Monomial>,
    /// `(block, monomial)` with the monomial in `S_r`.
    pub cols: Vec<(usize, Monomial)>,
    pub entries: Vec<Vec<Rational>>,
}

impl DegreeMatrix {
    pub fn new(f: &QPoly, r: u32) -> Self {
        let d = f.degree();
        let order = MonomialOrder::Grevlex;
        let rows = monomial_basis(r + d - 1, 3, order);
        let index = index_of(&rows);
        let src = monomial_basis(r, 3, order);
        let partials = [f.partial(0), f.partial(1), f.partial(2)];
        let cols: Vec<(usize, Monomial)> =
            (0..3).flat_map(|b| src.iter().map(move |m| (b, *m))).collect();
        let mut entries = vec![vec![Rational::zero(); cols.len()]; rows.len()];
        for (j, (b, m)) in cols.iter().enumerate() {
            for (t, c) in partials[*b].terms() {
                entries[index[&t.mul(m)]][j] += c;
            }
        }
        DegreeMatrix { r, rows, cols, entries }
    }

    pub fn rank(&self) -> usize {
        Rational::matrix_rank(self.entries.clone())
    }

    /// Basis of the syzygies of degree `r` as polynomial triples.
    pub fn kernel(&self) -> Vec<[QPoly; 3]> {
        kernel_basis(&self.entries, self.cols.len())
            .into_iter()
            .map(|v| {
                let mut parts: [Vec<(Monomial, Rational)>; 3] = Default::default();
                for ((b, m), c) in self.cols.iter().zip(v) {
                    if !c.is_zero() {
                        parts[*b].push((*m, c));
                    }
                }
                parts.map(|ts| QPoly::from_terms(3, MonomialOrder::Grevlex, ts))
            })
            .collect()
    }
}

/// `dim` of the syzygies of degree `r`, by Bareiss elimination.
pub fn syzygy_dim(f: &QPoly, r: u32) -> usize {
    let m = DegreeMatrix::new(f, r);
    m.cols.len() - m.rank()
}

/// The same dimension by rank–nullity from the Hilbert function of M(f):
/// `3 dim S_r - dim (J_f)_{r+d-1}`.
pub fn expected_syzygy_dim_from_hilbert(profile: &MilnorProfile, r: u32) -> i64 {
    let s = r as i64 + profile.d as i64 - 1;
    let image = dim_s(s) as i64 - profile.hilbert.dim(s as usize);
    3 * dim_s(r as i64) as i64 - image
}

/// Only Koszul syzygies: the count for a smooth curve of degree d.
pub fn koszul_syzygy_dim(d: u32, r: u32) -> i64 {
    let (d, r) = (d as i64, r as i64);
    3 * dim_s(r - d + 1) as i64 - dim_s(r - 2 * d + 2) as i64
}

/// A relation `α_1 f_x + α_2 f_y + α_3 f_z = 0` of degree d-2 over K_d,
/// with `α_3` the homogenized minus curve divided by its conic factor `g_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rho {
    pub j: u32,
    pub alpha: [KPoly; 3],
}

impl Rho {
    /// `α_1 f_x + α_2 f_y + α_3 f_z`, which is zero for a valid relation.
    pub fn evaluate_relation(&self, f: &QPoly) -> KPoly {
        let field = self.alpha[2].leading_coeff().expect("nonzero α_3").field().clone();
        (0..3)
            .map(|i| self.alpha[i].mul(&f.partial(i).promote(&field)))
            .fold(KPoly::zero(3), |acc, t| acc.add(&t))
    }
}

/// Builds ρ_j for the Chebyshev curve of degree d.
pub fn construct_rho(data: &ChebData, j: u32) -> Result<Rho, CurveError> {
    let d = data.d;
    let n = minus_conic_count(d);
    if j == 0 || j > n {
        return Err(CurveError::IndexOutOfRange(format!("ρ index {j} outside 1..={n}")));
    }
    let field = &data.field;
    let order = MonomialOrder::Grevlex;
    let f_minus = projective_curve(d, Sign::Minus).promote(field);
    let g = minus_conic(field, j).homogenize(2)?.with_order(order);
    let alpha3 = f_minus
        .exact_div(&g)
        .map_err(|_| CurveError::InexactDivision(format!("minus curve by g_{j}")))?;

    let f = data.f.promote(field);
    let (fx, fy, fz) = f.partials();
    let rhs_poly = alpha3.mul(&fz).neg();
    let src = monomial_basis(d - 2, 3, order);
    let dst = monomial_basis(2 * d - 3, 3, order);
    let index = index_of(&dst);
    let zero = crate::arith::AlgNum::zero(field);
    let mut rows = vec![vec![zero.clone(); 2 * src.len()]; dst.len()];
    for (b, p) in [&fx, &fy].into_iter().enumerate() {
        for (k, m) in src.iter().enumerate() {
            for (t, c) in p.terms() {
                rows[index[&t.mul(m)]][b * src.len() + k] += c;
            }
        }
    }
    let mut rhs = vec![zero; dst.len()];
    for (t, c) in rhs_poly.terms() {
        rhs[index[t]] = c.clone();
    }
    let x = match solve(&rows, &rhs) {
        Solution::Unique(x) => x,
        Solution::Many(_, k) => {
            return Err(CurveError::Verification(format!("ρ_{j}: solution not unique ({k} free)")));
        }
        Solution::Inconsistent => return Err(CurveError::InconsistentSystem(format!("ρ_{j}"))),
    };
    let part = |b: usize| {
        KPoly::from_terms(3, order, src.iter().zip(&x[b * src.len()..(b + 1) * src.len()]).map(|(m, c)| (*m, c.clone())))
    };
    Ok(Rho { j, alpha: [part(0), part(1), alpha3] })
}

/// Per-degree record of the first syzygies and the second-level check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRecord {
    pub r: u32,
    pub syzygy_dim: i64,
    pub expected_dim: i64,
    /// Rank of the map from the second module of the resolution in this degree.
    pub u1_rank: i64,
    pub u1_kernel: i64,
    pub expected_u1_kernel: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub r: u32,
    pub what: String,
    pub got: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionReport {
    pub d: u32,
    pub records: Vec<DegreeRecord>,
    pub first_syzygy_degree: Option<u32>,
    pub first_syzygy_count: i64,
    /// Each ρ_j satisfies its relation identically.
    pub rho_identities: Vec<bool>,
    /// Each α_3^j vanishes on every B-point.
    pub rho_vanish_on_b: Vec<bool>,
    /// The ρ_j span the rational syzygies of degree d-2 over K_d.
    pub rho_span_ok: bool,
    pub mismatches: Vec<Mismatch>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.rho_span_ok
            && self.rho_identities.iter().all(|&b| b)
            && self.rho_vanish_on_b.iter().all(|&b| b)
    }
}

fn koszul(f: &QPoly) -> [[QPoly; 3]; 3] {
    let (fx, fy, fz) = f.partials();
    let z = QPoly::zero(3);
    [
        [fy.clone(), fx.neg(), z.clone()],
        [fz.clone(), z.clone(), fx.neg()],
        [z, fz, fy.neg()],
    ]
}

fn flatten(v: &[QPoly; 3], index: &HashMap<Monomial, usize>, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); 3 * n];
    for (b, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            out[b * n + index[m]] = c.clone();
        }
    }
    out
}

/// Rank of `(b_j, c_k) -> Σ b_j σ_j + Σ c_k r_k` in syzygy degree `r`,
/// where `σ_j` span the syzygies of degree `d-2` and `r_k` are the Koszul
/// relations; returns `(rank, number of generators)`.
fn u1_rank(sigmas: &[[QPoly; 3]], kz: &[[QPoly; 3]; 3], d: u32, r: u32) -> (usize, usize) {
    let order = MonomialOrder::Grevlex;
    let target = monomial_basis(r, 3, order);
    let index = index_of(&target);
    let mut rows = Vec::new();
    let mut push = |gen: &[QPoly; 3], deg: i64| {
        if deg < 0 {
            return;
        }
        for m in monomial_basis(deg as u32, 3, order) {
            let shifted = [0, 1, 2].map(|b| gen[b].mul_term(&m, &Rational::one()));
            rows.push(flatten(&shifted, &index, target.len()));
        }
    };
    for s in sigmas {
        push(s, r as i64 - (d as i64 - 2));
    }
    for k in kz {
        push(k, r as i64 - (d as i64 - 1));
    }
    let n = rows.len();
    (if n == 0 { 0 } else { Rational::matrix_rank(rows) }, n)
}

/// Expected kernel dimension of the second-level map in syzygy degree `r`.
pub fn expected_u1_kernel(d: u32, r: u32) -> i64 {
    let m = (d / 2) as i64;
    let (di, ri) = (d as i64, r as i64);
    let base = m * dim_s(ri - di) as i64;
    if d.is_multiple_of(2) {
        base
    } else {
        // all three Koszul relations kept: one extra relation among them
        base + dim_s(ri - di + 1) as i64
    }
}

fn same_span(rhos: &[Rho], sigmas: &[[QPoly; 3]], data: &ChebData) -> bool {
    let order = MonomialOrder::Grevlex;
    let src = monomial_basis(data.d - 2, 3, order);
    let index = index_of(&src);
    let n = src.len();
    let zero = crate::arith::AlgNum::zero(&data.field);
    let to_row = |v: [KPoly; 3]| -> Vec<crate::arith::AlgNum> {
        let mut out = vec![zero.clone(); 3 * n];
        for (b, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                out[b * n + index[m]] = c.clone();
            }
        }
        out
    };
    let rho_rows: Vec<_> = rhos.iter().map(|r| to_row(r.alpha.clone())).collect();
    let mut all = rho_rows.clone();
    all.extend(sigmas.iter().map(|s| to_row(s.clone().map(|p| p.promote(&data.field)))));
    let k = sigmas.len();
    crate::arith::AlgNum::matrix_rank(rho_rows) == k && crate::arith::AlgNum::matrix_rank(all) == k
}

/// Checks the shape of the free resolution of M(f) for the Chebyshev curve
/// in syzygy degrees `0..=rmax`.
pub fn verify_resolution(data: &ChebData, profile: &MilnorProfile, rmax: u32) -> Result<ResolutionReport, CurveError> {
    let d = data.d;
    let f = &data.f;
    let m = (d / 2) as i64;
    let count = minus_conic_count(d);
    let mut mismatches = Vec::new();

    let rhos: Vec<Rho> = (1..=count).map(|j| construct_rho(data, j)).collect::<Result<_, _>>()?;
    let rho_identities: Vec<bool> = rhos.iter().map(|r| r.evaluate_relation(f).is_zero()).collect();
    let rho_vanish_on_b: Vec<bool> = rhos
        .iter()
        .map(|rho| {
            data.b_points.iter().all(|p| {
                let pt = [p.x.clone(), p.y.clone(), crate::arith::AlgNum::one(&data.field)];
                rho.alpha[2].evaluate(&pt).map(|v| v.is_zero()).unwrap_or(false)
            })
        })
        .collect();

    let sigmas = DegreeMatrix::new(f, d - 2).kernel();
    let rho_span_ok = same_span(&rhos, &sigmas, data);
    let kz = koszul(f);

    let mut records = Vec::new();
    let mut first = None;
    let mut first_count = 0;
    for r in 0..=rmax {
        let got = syzygy_dim(f, r) as i64;
        let expected = expected_syzygy_dim_from_hilbert(profile, r);
        if got != expected {
            mismatches.push(Mismatch { r, what: "syzygy_dim".into(), got, expected });
        }
        if first.is_none() && got > 0 {
            first = Some(r);
            first_count = got;
        }
        let (rank, gens) = u1_rank(&sigmas, &kz, d, r);
        let (rank, gens) = (rank as i64, gens as i64);
        if rank != got {
            mismatches.push(Mismatch { r, what: "u1_rank".into(), got: rank, expected: got });
        }
        let ek = expected_u1_kernel(d, r);
        if gens - rank != ek {
            mismatches.push(Mismatch { r, what: "u1_kernel".into(), got: gens - rank, expected: ek });
        }
        records.push(DegreeRecord {
            r,
            syzygy_dim: got,
            expected_dim: expected,
            u1_rank: rank,
            u1_kernel: gens - rank,
            expected_u1_kernel: ek,
        });
    }
    let expected_first = if d.is_multiple_of(2) { m - 1 } else { m };
    if rmax >= d - 2 {
        if first != Some(d - 2) {
            mismatches.push(Mismatch {
                r: d - 2,
                what: "first_syzygy_degree".into(),
                got: first.map_or(-1, |r| r as i64),
                expected: d as i64 - 2,
            });
        } else if first_count != expected_first {
            mismatches.push(Mismatch { r: d - 2, what: "first_syzygy_count".into(), got: first_count, expected: expected_first });
        }
    }
    Ok(ResolutionReport {
        d,
        records,
        first_syzygy_degree: first,
        first_syzygy_count: first_count,
        rho_identities,
        rho_vanish_on_b,
        rho_span_ok,
        mismatches,
    })
}

/// Generic relation check `Σ a_i ∂_i f = 0` for rational triples.
pub fn is_syzygy(f: &QPoly, a: &[QPoly; 3]) -> bool {
    (0..3)
        .map(|i| a[i].mul(&f.partial(i)))
        .fold(MPoly::zero(3), |acc: QPoly, t| acc.add(&t))
        .is_zero()
}
