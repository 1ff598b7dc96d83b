//! One function per subcommand, each returning the `results` object.

use std::time::Instant;

use chebcurve::arith::Rational;
use chebcurve::arrangement::{rationality_test_with, ReportOptions};
use chebcurve::chebyshev::{build, minus_conic_count, projective_curve, verify_nodes, ChebData, GridPoint, Sign};
use chebcurve::error::CurveError;
use chebcurve::groebner::PairStrategy;
use chebcurve::hilbert::{chebyshev_pm_closed_form, expected_node_count, milnor_profile_with, MilnorProfile, ProfileOptions};
use chebcurve::interp::{kernel_dim_e, lemma1_check_chebyshev, prop2_thresholds};
use chebcurve::poly::{MPoly, QPoly};
use chebcurve::syzygy::{expected_syzygy_dim_from_hilbert, koszul_syzygy_dim, syzygy_dim, verify_resolution, ResolutionReport};
use serde_json::{json, Map, Value};

use crate::render;
use crate::CliError;

/// Largest degree for the Gröbner-based checks of `verify`.
pub const GROEBNER_MAX_D: u32 = 8;
/// Largest degree for the surjectivity check at the nodes.
pub const SURJECTIVITY_MAX_D: u32 = 6;

/// Wall-clock milliseconds per phase, kept only on request.
#[derive(Default)]
pub struct Timer {
    enabled: bool,
    phases: Map<String, Value>,
}

impl Timer {
    pub fn new(enabled: bool) -> Self {
        Timer { enabled, phases: Map::new() }
    }

    pub fn phase<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            self.phases.insert(name.to_string(), json!((ms * 1e3).round() / 1e3));
        }
        out
    }

    pub fn into_value(self) -> Option<Value> {
        self.enabled.then_some(Value::Object(self.phases))
    }
}

/// Curve given on the command line: a file or a Chebyshev degree.
#[derive(Clone, Debug)]
pub enum CurveInput {
    Poly(QPoly),
    Chebyshev(u32, Sign),
}

impl CurveInput {
    pub fn polynomial(&self) -> QPoly {
        match self {
            CurveInput::Poly(f) => f.clone(),
            CurveInput::Chebyshev(d, sign) => projective_curve(*d, *sign),
        }
    }
}

fn precondition(e: CurveError) -> CliError {
    match e {
        CurveError::NotHomogeneous | CurveError::ZeroJacobian | CurveError::DegreeOutOfRange { .. } => {
            CliError::Precondition(e.to_string())
        }
        other => CliError::Failed(other.to_string()),
    }
}

fn check_homogeneous(f: &QPoly) -> Result<u32, CliError> {
    if f.is_zero() || !f.is_homogeneous() {
        return Err(CliError::Precondition(CurveError::NotHomogeneous.to_string()));
    }
    Ok(f.degree())
}

fn grid(points: &[GridPoint]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|pt| json!({ "p": pt.p, "q": pt.q, "x": render::alg(&pt.x), "y": render::alg(&pt.y) }))
            .collect(),
    )
}

pub fn gen(d: u32, sign: Sign, timer: &mut Timer) -> Result<Value, CliError> {
    let data = timer.phase("build", || build(d)).map_err(precondition)?;
    let (affine, nodes, factors) = match sign {
        Sign::Plus => (&data.f_plus, &data.a_points, &data.factors_plus),
        Sign::Minus => (&data.f_minus, &data.b_points, &data.factors_minus),
    };
    Ok(json!({
        "d": d,
        "sign": sign.to_string(),
        "chebyshev_t": data.t.iter().map(render::bigint).collect::<Vec<_>>(),
        "affine_curve": render::qpoly(affine),
        "projective_curve": render::qpoly(&projective_curve(d, sign)),
        "field": {
            "d": d,
            "degree": data.field.degree(),
            "generator": format!("2cos(pi/{d})"),
            "minpoly": render::upoly(data.field.minpoly()),
        },
        "lambdas": data.lambdas.iter().enumerate()
            .map(|(k, l)| json!({ "k": k + 1, "value": render::alg(l) }))
            .collect::<Vec<_>>(),
        "node_count": nodes.len(),
        "nodes": grid(nodes),
        "a_points": grid(&data.a_points),
        "b_points": grid(&data.b_points),
        "factorization": {
            "constant": render::rational(&factors.constant),
            "factors": factors.factors.iter().map(render::kpoly).collect::<Vec<_>>(),
        },
    }))
}

fn profile(f: &QPoly, kmax: Option<usize>, strategy: PairStrategy, timer: &mut Timer) -> Result<MilnorProfile, CliError> {
    timer
        .phase("groebner", || milnor_profile_with(f, ProfileOptions { kmax, strategy }))
        .map_err(precondition)
}

fn hilbert_value(p: &MilnorProfile) -> Value {
    let h = &p.hilbert;
    json!({
        "degree": p.d,
        "numerator": render::int_poly(&h.numerator),
        "numerator_text": h.numerator.to_string(),
        "dims": h.dims,
        "kmax": h.dims.len() - 1,
        "tau": p.tau,
        "tau_index": MilnorProfile::tau_index(p.d),
        "stabilized_from": h.stabilized_from,
        "stabilized_value": h.stabilized_value,
        "q_polynomial": p.q_polynomial.as_ref().map(render::int_poly),
        "leading_ideal": p.leading_ideal.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
    })
}

pub fn hilbert(input: &CurveInput, kmax: Option<usize>, strategy: PairStrategy, timer: &mut Timer) -> Result<Value, CliError> {
    let f = input.polynomial();
    let d = check_homogeneous(&f)?;
    if d < 2 {
        return Err(CliError::Precondition(format!("degree {d} is below 2")));
    }
    let p = profile(&f, kmax, strategy, timer)?;
    let mut v = hilbert_value(&p);
    v["polynomial"] = render::qpoly(&f);
    Ok(v)
}

fn resolution_value(rep: &ResolutionReport) -> Value {
    json!({
        "passed": rep.passed(),
        "first_syzygy_degree": rep.first_syzygy_degree,
        "first_syzygy_count": rep.first_syzygy_count,
        "rho_identities": rep.rho_identities,
        "rho_vanish_on_b": rep.rho_vanish_on_b,
        "rho_span_ok": rep.rho_span_ok,
        "records": rep.records.iter().map(|r| json!({
            "r": r.r,
            "syzygy_dim": r.syzygy_dim,
            "expected_dim": r.expected_dim,
            "u1_rank": r.u1_rank,
            "u1_kernel": r.u1_kernel,
            "expected_u1_kernel": r.expected_u1_kernel,
        })).collect::<Vec<_>>(),
        "mismatches": rep.mismatches.iter().map(|m| json!({
            "r": m.r, "what": m.what, "got": m.got, "expected": m.expected,
        })).collect::<Vec<_>>(),
    })
}

pub fn syzygy(input: &CurveInput, rmax: Option<u32>, strategy: PairStrategy, timer: &mut Timer) -> Result<Value, CliError> {
    let f = input.polynomial();
    let d = check_homogeneous(&f)?;
    if d < 2 {
        return Err(CliError::Precondition(format!("degree {d} is below 2")));
    }
    let rmax = rmax.unwrap_or(2 * d);
    let p = profile(&f, None, strategy, timer)?;
    let records: Vec<Value> = timer.phase("syzygies", || {
        (0..=rmax)
            .map(|r| {
                json!({
                    "r": r,
                    "syzygy_dim": syzygy_dim(&f, r),
                    "expected_from_hilbert": expected_syzygy_dim_from_hilbert(&p, r),
                    "koszul_dim": koszul_syzygy_dim(d, r),
                })
            })
            .collect()
    });
    let first = records.iter().find(|r| r["syzygy_dim"].as_u64() != Some(0)).map(|r| r["r"].clone());
    let mut out = json!({
        "degree": d,
        "polynomial": render::qpoly(&f),
        "rmax": rmax,
        "degrees": records,
        "first_syzygy_degree": first,
    });
    if let (CurveInput::Chebyshev(_, Sign::Plus), true) = (input, d <= GROEBNER_MAX_D) {
        let data = build(d).map_err(precondition)?;
        let rep = timer.phase("resolution", || verify_resolution(&data, &p, rmax)).map_err(precondition)?;
        out["resolution"] = resolution_value(&rep);
    }
    Ok(out)
}

pub fn interp(d: u32, timer: &mut Timer) -> Result<Value, CliError> {
    let data = timer.phase("build", || build(d)).map_err(precondition)?;
    let t = timer.phase("ranks", || prop2_thresholds(&data));
    let kernels: Vec<usize> = (0..=d).map(|r| kernel_dim_e(&data, r)).collect::<Result<_, _>>().map_err(precondition)?;
    let surjective = if d <= SURJECTIVITY_MAX_D {
        Some(timer.phase("surjectivity", || lemma1_check_chebyshev(&data)).map_err(precondition)?)
    } else {
        None
    };
    Ok(json!({
        "d": d,
        "b_point_count": data.b_points.len(),
        "ranks": t.ranks,
        "kernel_dims": kernels,
        "max_injective": t.max_injective,
        "min_surjective": t.min_surjective,
        "expected": [d - 3, d - 2],
        "surjective_at_nodes": surjective,
    }))
}

pub fn rational_test(input: &CurveInput, seed: u64, strategy: PairStrategy, kmax: Option<usize>, timer: &mut Timer) -> Result<Value, CliError> {
    let f = input.polynomial();
    check_homogeneous(&f)?;
    let r = timer
        .phase("rationality", || rationality_test_with(&f, ReportOptions { seed, strategy, kmax }))
        .map_err(precondition)?;
    Ok(json!({
        "polynomial": render::qpoly(&f),
        "d": r.d,
        "tau": r.tau,
        "distinct_singular_points": r.distinct_singular_points,
        "dim_at_2dm3": r.dim_at_2dm3,
        "verdict": r.verdict.to_string(),
        "genus_sum": r.genus_sum,
        "constant_from_2dm3": r.constant_from_2dm3,
        "stabilization_consistent": r.stabilization_consistent(),
        "hilbert": hilbert_value(&r.profile),
    }))
}

/// Outcome of one verification item.
struct Item {
    name: &'static str,
    status: Option<bool>,
    detail: Value,
}

impl Item {
    fn run(name: &'static str, passed: bool, detail: Value) -> Self {
        Item { name, status: Some(passed), detail }
    }

    fn skipped(name: &'static str, why: String) -> Self {
        Item { name, status: None, detail: json!({ "reason": why }) }
    }

    fn value(&self) -> Value {
        let status = match self.status {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "skipped",
        };
        json!({ "name": self.name, "status": status, "detail": self.detail })
    }
}

fn factorization_item(data: &ChebData) -> Item {
    let k = &data.field;
    let plus = data.factors_plus.expand() == data.f_plus.promote(k);
    let minus = data.factors_minus.expand() == data.f_minus.promote(k);
    let mut detail = json!({ "plus": plus, "minus": minus });
    let mut ok = plus && minus;
    if data.d % 2 == 1 {
        let one = Rational::one();
        let flip = [MPoly::var(0, one.clone(), 2), MPoly::var(1, -one, 2)];
        let flipped = data.f_plus.substitute(&flip) == data.f_minus;
        detail["plus_flipped_is_minus"] = json!(flipped);
        ok &= flipped;
    }
    Item::run("factorization_identity", ok, detail)
}

fn groebner_items(data: &ChebData, strategy: PairStrategy, timer: &mut Timer, items: &mut Vec<Item>) -> Result<(), CliError> {
    let d = data.d;
    let p = profile(&data.f, None, strategy, timer)?;
    let h = &p.hilbert;
    let expected = chebyshev_pm_closed_form(d);
    items.push(Item::run(
        "closed_form_numerator",
        h.numerator == expected,
        json!({ "computed": render::int_poly(&h.numerator), "expected": render::int_poly(&expected) }),
    ));

    let count = expected_node_count(d) as i64;
    let lo = 2 * d as usize - 3;
    let window = &h.dims[lo..=3 * d as usize];
    let stable = window.iter().all(|&v| v == count);
    items.push(Item::run(
        "node_count_and_stabilization",
        data.a_points.len() as i64 == count && stable && p.tau == count,
        json!({ "expected_nodes": count, "a_points": data.a_points.len(), "tau": p.tau, "dims_2dm3_to_3d": window }),
    ));

    let n = &h.numerator;
    let (at_one, slope_at_one) = (n.eval(1), n.derivative().eval(1));
    items.push(Item::run(
        "series_sanity",
        at_one == 0 && slope_at_one == 0 && n.degree() == Some(2 * d as usize - 1),
        json!({ "p_at_1": at_one, "p_prime_at_1": slope_at_one, "degree": n.degree() }),
    ));

    let conics = minus_conic_count(d) as i64;
    let kernel = kernel_dim_e(data, d - 2).map_err(precondition)? as i64;
    let rep = timer.phase("resolution", || verify_resolution(data, &p, 2 * d)).map_err(precondition)?;
    let ok = rep.passed()
        && rep.first_syzygy_degree == Some(d - 2)
        && rep.first_syzygy_count == conics
        && kernel == conics;
    let mut detail = resolution_value(&rep);
    detail["kernel_dim_e_at_d_minus_2"] = json!(kernel);
    detail["conic_count"] = json!(conics);
    items.push(Item::run("syzygy_resolution", ok, detail));
    Ok(())
}

pub fn verify(d: u32, strategy: PairStrategy, timer: &mut Timer) -> Result<(Value, bool), CliError> {
    let data = timer.phase("build", || build(d)).map_err(precondition)?;
    let mut items = Vec::new();

    let nodes = timer.phase("nodes", || verify_nodes(&data)).map_err(precondition)?;
    let failures: Vec<Value> = nodes
        .failures
        .iter()
        .map(|f| json!({ "p": f.p, "q": f.q, "curve": f.curve.to_string() }))
        .collect();
    items.push(Item::run(
        "node_verification",
        nodes.passed(),
        json!({ "a_checked": nodes.a_checked, "b_checked": nodes.b_checked, "failures": failures }),
    ));

    items.push(timer.phase("factorization", || factorization_item(&data)));

    let t = timer.phase("ranks", || prop2_thresholds(&data));
    let (inj, surj) = (t.max_injective, t.min_surjective);
    items.push(Item::run(
        "evaluation_thresholds",
        inj == Some(d - 3) && surj == Some(d - 2),
        json!({ "max_injective": inj, "min_surjective": surj, "ranks": t.ranks, "expected": [d - 3, d - 2] }),
    ));

    if d <= GROEBNER_MAX_D {
        groebner_items(&data, strategy, timer, &mut items)?;
    } else {
        for name in ["closed_form_numerator", "node_count_and_stabilization", "series_sanity", "syzygy_resolution"] {
            items.push(Item::skipped(name, format!("Gröbner checks run for d <= {GROEBNER_MAX_D}")));
        }
    }

    if d <= SURJECTIVITY_MAX_D {
        let ok = timer.phase("surjectivity", || lemma1_check_chebyshev(&data)).map_err(precondition)?;
        items.push(Item::run("surjective_at_nodes", ok, json!({ "degree": 2 * d - 3, "points": data.a_points.len() })));
    } else {
        items.push(Item::skipped("surjective_at_nodes", format!("runs for d <= {SURJECTIVITY_MAX_D}")));
    }

    let passed = items.iter().all(|i| i.status != Some(false));
    let results = json!({
        "d": d,
        "passed": passed,
        "items": items.iter().map(Item::value).collect::<Vec<_>>(),
    });
    Ok((results, passed))
}
