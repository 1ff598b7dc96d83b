//! Rationality test for reduced nodal plane curves: every component of a
//! nodal curve of degree d is rational exactly when `dim M(f)_{2d-3}`
//! equals the number of nodes.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::interp::rank_exact;
use crate::error::CurveError;
use crate::groebner::{buchberger_with, leading_ideal, normal_form, GroebnerBasis, GroebnerOptions, Ideal, PairStrategy};
use crate::hilbert::{hilbert_numerator, milnor_profile_with, MilnorProfile, ProfileOptions};
use crate::poly::{gcd, MPoly, Monomial, MonomialOrder, QPoly};

pub const MAX_ATTEMPTS: usize = 5;

/// No repeated factor: `gcd(f, f_x, f_y, f_z)` is constant.
pub fn is_reduced(f: &QPoly) -> bool {
    let mut g = f.clone();
    for i in 0..f.nvars() {
        g = gcd(&g, &f.partial(i));
        if g.is_constant() {
            return true;
        }
    }
    g.is_constant()
}

fn random_matrix(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    loop {
        let mut a = [[0i64; 3]; 3];
        for row in a.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-10..=10);
            }
        }
        let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        if det != 0 {
            return a;
        }
    }
}

/// `f(A (x, y, z)^T)`.
pub fn change_coordinates(f: &QPoly, a: &[[i64; 3]; 3]) -> QPoly {
    let images: Vec<QPoly> = a
        .iter()
        .map(|row| {
            QPoly::from_terms(
                3,
                f.order(),
                (0..3).map(|j| (Monomial::var(j), Rational::from(row[j]))),
            )
        })
        .collect();
    f.substitute(&images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Trial {
    Count(usize),
    AtInfinity,
    NotZeroDimensional,
}

fn trial(f: &QPoly, strategy: PairStrategy) -> Trial {
    let opts = GroebnerOptions { strategy, degree_bound: None };
    let (fx, fy, fz) = f.partials();
    // singular points on the line z = 0
    let at_infinity = Ideal::new([fx.clone(), fy.clone(), fz.clone(), MPoly::var(2, Rational::one(), 3)], MonomialOrder::Grevlex);
    let p = hilbert_numerator(&leading_ideal(&buchberger_with(&at_infinity, opts)));
    if p.multiplicity_at_one() < 3 {
        return Trial::AtInfinity;
    }
    let chart = Ideal::new([fx, fy, fz].map(|p| p.dehomogenize()), MonomialOrder::Grevlex);
    let g = buchberger_with(&chart, opts);
    if g.is_unit() {
        return Trial::Count(0);
    }
    let lms = g.leading_monomials();
    let pure = |i: usize| lms.iter().any(|m| m.0[i] > 0 && m.0[1 - i] == 0);
    if !(pure(0) && pure(1)) {
        return Trial::NotZeroDimensional;
    }
    Trial::Count(distinct_points(&g))
}

/// Number of distinct points of the finite scheme cut out by `g`: the rank
/// of the trace form `(a, b) -> Tr(m_ab)` on the quotient algebra, whose
/// kernel is the nilradical.
fn distinct_points(g: &GroebnerBasis<Rational>) -> usize {
    let lms = g.leading_monomials();
    let bound = |i: usize| lms.iter().filter(|m| m.0[1 - i] == 0).map(|m| m.0[i]).min().unwrap_or(0);
    let (bx, by) = (bound(0), bound(1));
    let basis: Vec<Monomial> = (0..by)
        .flat_map(|b| (0..bx).map(move |a| Monomial::new(a, b, 0)))
        .filter(|m| !lms.iter().any(|l| l.divides(m)))
        .collect();
    let n = basis.len();
    let index: BTreeMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let one = Rational::one();
    // products[i][j] = coordinates of NF(b_i b_j), for i <= j
    let mut products = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let nf = normal_form(&MPoly::monomial(basis[i].mul(&basis[j]), one.clone(), 2), g);
            let mut v = vec![Rational::zero(); n];
            for (m, c) in nf.terms() {
                v[index[m]] = c.clone();
            }
            products[i][j] = v;
        }
    }
    let product = |i: usize, j: usize| &products[i.min(j)][i.max(j)];
    let traces: Vec<Rational> = (0..n)
        .map(|k| (0..n).fold(Rational::zero(), |acc, l| acc + &product(k, l)[l]))
        .collect();
    let form: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| product(i, j).iter().zip(&traces).fold(Rational::zero(), |acc, (c, t)| acc + &(c * t)))
                .collect()
        })
        .collect();
    rank_exact(&form)
}

/// Singular-point count together with the coordinate changes it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub count: usize,
    /// Random coordinate changes tried, including the accepted one.
    pub attempts: usize,
}

/// Number of distinct singular points of the projective curve `f = 0`.
/// Coordinate changes come from a ChaCha8 stream seeded with `seed` and are
/// redrawn while a singular point lies on `z = 0`.
pub fn count_distinct_singular_points(f: &QPoly, seed: u64) -> Result<PointCount, CurveError> {
    count_distinct_singular_points_with(f, seed, PairStrategy::Normal)
}

pub fn count_distinct_singular_points_with(
    f: &QPoly,
    seed: u64,
    strategy: PairStrategy,
) -> Result<PointCount, CurveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut infinity_failures = 0;
    for attempt in 1..=MAX_ATTEMPTS {
        let a = random_matrix(&mut rng);
        match trial(&change_coordinates(f, &a), strategy) {
            Trial::Count(count) => return Ok(PointCount { count, attempts: attempt }),
            Trial::AtInfinity => infinity_failures += 1,
            Trial::NotZeroDimensional => {}
        }
    }
    if infinity_failures == MAX_ATTEMPTS {
        Err(CurveError::PointsAtInfinity { attempts: MAX_ATTEMPTS })
    } else {
        Err(CurveError::ShapeFailure { attempts: MAX_ATTEMPTS })
    }
}

/// Every singular point is a node: the Tjurina number equals the number of
/// singular points.
pub fn is_nodal(f: &QPoly, seed: u64) -> Result<bool, CurveError> {
    let profile = milnor_profile_with(f, ProfileOptions::default())?;
    let n = count_distinct_singular_points(f, seed)?;
    Ok(profile.tau == n.count as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    AllRational,
    HasIrrationalComponent,
    NotNodal,
    NotReduced,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AllRational => "all_rational",
            Verdict::HasIrrationalComponent => "has_irrational_component",
            Verdict::NotNodal => "not_nodal",
            Verdict::NotReduced => "not_reduced",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveReport {
    pub d: u32,
    pub tau: i64,
    /// Absent for non-reduced curves, whose singular locus is not finite.
    pub distinct_singular_points: Option<usize>,
    pub dim_at_2dm3: i64,
    pub verdict: Verdict,
    /// `dim M_{2d-3} - tau`, for nodal curves.
    pub genus_sum: Option<i64>,
    /// Whether `dim M_k` is constant on `[2d-3, 3d]`.
    pub constant_from_2dm3: bool,
    pub profile: MilnorProfile,
}

impl CurveReport {
    /// For nodal curves the verdict agrees with early stabilization.
    pub fn stabilization_consistent(&self) -> bool {
        match self.verdict {
            Verdict::AllRational => self.constant_from_2dm3,
            Verdict::HasIrrationalComponent => !self.constant_from_2dm3,
            _ => true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    pub seed: u64,
    pub strategy: PairStrategy,
    pub kmax: Option<usize>,
}

pub fn rationality_test(f: &QPoly, seed: u64) -> Result<CurveReport, CurveError> {
    rationality_test_with(f, ReportOptions { seed, ..Default::default() })
}

pub fn rationality_test_with(f: &QPoly, opts: ReportOptions) -> Result<CurveReport, CurveError> {
    if f.nvars() != 3 || f.is_zero() || !f.is_homogeneous() {
        return Err(CurveError::NotHomogeneous);
    }
    let d = f.degree();
    if d < 3 {
        return Err(CurveError::DegreeOutOfRange { d, lo: 3, hi: u32::MAX });
    }
    let kmax = opts.kmax.unwrap_or(3 * d as usize).max(3 * d as usize);
    let profile = milnor_profile_with(f, ProfileOptions { kmax: Some(kmax), strategy: opts.strategy })?;
    let tau = profile.tau;
    let lo = 2 * d as usize - 3;
    let dims = &profile.hilbert.dims;
    let dim_at_2dm3 = dims[lo];
    let constant_from_2dm3 = dims[lo..=3 * d as usize].iter().all(|&v| v == dim_at_2dm3);

    let mut report = CurveReport {
        d,
        tau,
        distinct_singular_points: None,
        dim_at_2dm3,
        verdict: Verdict::NotReduced,
        genus_sum: None,
        constant_from_2dm3,
        profile,
    };
    if !is_reduced(f) {
        return Ok(report);
    }
    let points = count_distinct_singular_points_with(f, opts.seed, opts.strategy)?;
    report.distinct_singular_points = Some(points.count);
    if points.count as i64 != tau {
        report.verdict = Verdict::NotNodal;
        return Ok(report);
    }
    let genus = dim_at_2dm3 - tau;
    report.genus_sum = Some(genus);
    report.verdict = if genus == 0 { Verdict::AllRational } else { Verdict::HasIrrationalComponent };
    Ok(report)
}
