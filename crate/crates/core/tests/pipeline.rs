use chebcurve::arith::Rational;
use chebcurve::arrangement::{count_distinct_singular_points, rationality_test, Verdict};
use chebcurve::chebyshev::{build, projective_curve, Sign};
use chebcurve::hilbert::{milnor_profile, MilnorProfile};
use chebcurve::poly::{binomial2, Monomial, MonomialOrder, QPoly};
use chebcurve::syzygy::{verify_resolution, DegreeMatrix};
use proptest::prelude::*;

fn line(c: [i64; 3]) -> QPoly {
    QPoly::from_terms(3, MonomialOrder::default(), (0..3).map(|i| (Monomial::var(i), Rational::from(c[i]))))
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn proportional(a: [i64; 3], b: [i64; 3]) -> bool {
    cross(a, b) == [0, 0, 0]
}

/// Distinct intersection points of the lines, deduplicated projectively.
fn intersection_points(lines: &[[i64; 3]]) -> Vec<[i64; 3]> {
    let mut pts: Vec<[i64; 3]> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = cross(lines[i], lines[j]);
            if !pts.iter().any(|&q| proportional(p, q)) {
                pts.push(p);
            }
        }
    }
    pts
}

fn dim_s(k: i64) -> i64 {
    if k < 0 { 0 } else { binomial2(k + 2) as i64 }
}

#[test]
fn chebyshev_pipeline() {
    for d in 3..=5 {
        let data = build(d).unwrap();
        let profile = milnor_profile(&data.f).unwrap();
        assert_eq!(profile.tau, data.a_points.len() as i64);
        let rep = verify_resolution(&data, &profile, 2 * d).unwrap();
        assert!(rep.passed(), "d={d}: {:?}", rep.mismatches);
        let r = rationality_test(&projective_curve(d, Sign::Plus), 11).unwrap();
        assert_eq!(r.distinct_singular_points, Some(data.a_points.len()));
    }
}

fn arb_lines() -> impl Strategy<Value = Vec<[i64; 3]>> {
    proptest::collection::vec(prop::array::uniform3(-3i64..=3), 3..=5)
        .prop_filter("nonzero lines", |ls| ls.iter().all(|l| *l != [0, 0, 0]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn line_arrangements(lines in arb_lines()) {
        let f = lines.iter().fold(QPoly::constant(Rational::one(), 3), |acc, &l| acc.mul(&line(l)));
        let d = lines.len() as i64;
        let repeated = (0..lines.len()).any(|i| (i + 1..lines.len()).any(|j| proportional(lines[i], lines[j])));
        let r = rationality_test(&f, 4).unwrap();
        if repeated {
            prop_assert_eq!(r.verdict, Verdict::NotReduced);
            return Ok(());
        }
        let pts = intersection_points(&lines);
        prop_assert_eq!(r.distinct_singular_points, Some(pts.len()));
        if pts.len() as i64 == d * (d - 1) / 2 {
            prop_assert_eq!(r.verdict, Verdict::AllRational);
            prop_assert_eq!(r.tau, d * (d - 1) / 2);
        } else {
            prop_assert_eq!(r.verdict, Verdict::NotNodal);
        }
        let other = count_distinct_singular_points(&f, 1234).unwrap();
        prop_assert_eq!(other.count, pts.len());
    }

    #[test]
    fn hilbert_dims_match_jacobian_rank(
        coeffs in proptest::collection::vec(-3i64..=3, 10),
        d in 3u32..=4,
    ) {
        let basis = chebcurve::poly::monomial_basis(d, 3, MonomialOrder::default());
        let f = QPoly::from_terms(3, MonomialOrder::default(),
            basis.iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (*m, Rational::from(c))));
        prop_assume!(!f.is_zero());
        let (fx, fy, fz) = f.partials();
        prop_assume!(!(fx.is_zero() && fy.is_zero() && fz.is_zero()));
        let p: MilnorProfile = milnor_profile(&f).unwrap();
        for k in 0..=(3 * d as i64) {
            let r = k - (d as i64 - 1);
            let jac = if r < 0 { 0 } else { DegreeMatrix::new(&f, r as u32).rank() as i64 };
            prop_assert_eq!(p.hilbert.dims[k as usize], dim_s(k) - jac, "k={}", k);
        }
    }
}
