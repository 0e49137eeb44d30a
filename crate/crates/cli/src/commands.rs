use std::path::Path;

use anyhow::Context;
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use polycert::bounds::{bound_report, delta_bits_estimate, delta_bound, MAX_MATERIALIZED_BITS};
use polycert::certify::{check_certificate, grid_certificate, GridParams};
use polycert::gadgets::{self, check_point, GadgetBundle};
use polycert::polyalg::{format_polynomial, PolyJson};
use polycert::ratcore::{format_rational, parse_rational};
use polycert::rays::{classify_ray_alg, rationalize_unbounded_ray};
use polycert::reductions::{self as red, CnfFormula};
use polycert::separable::{solve_separable, SeparableCubic, SeparableOutcome};
use polycert::systems::{Point, ViolationSign};
use polycert::{AlgebraicElement, PolySystem, Polynomial, Rational, Verdict};

use crate::report::{Failure, Inputs, Outcome};
use crate::{GadgetName, Variant};

type Res = Result<Outcome, Failure>;

fn read(inputs: &mut Inputs, tag: &str, path: &Path) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    inputs.add(tag, text.as_bytes());
    Ok(text)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn load_system(inputs: &mut Inputs, path: &Path) -> Result<PolySystem, Failure> {
    Ok(PolySystem::from_json_str(&read(inputs, "system", path)?)?)
}

fn load_point(inputs: &mut Inputs, tag: &str, path: &Path) -> Result<Point, Failure> {
    Ok(Point::from_json_str(&read(inputs, tag, path)?)?)
}

fn param(inputs: &mut Inputs, tag: &str, value: &str) {
    inputs.add(tag, value.as_bytes());
}

fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn integer(s: &str, what: &str) -> Result<BigInt, Failure> {
    s.trim().parse().map_err(|_| Failure::Usage(format!("{what} must be an integer, got {s:?}")))
}

fn rational_point(p: Point, what: &str) -> Result<Vec<Rational>, Failure> {
    match p {
        Point::Rational(v) => Ok(v),
        Point::Algebraic(v) => v
            .iter()
            .map(AlgebraicElement::to_rational)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Failure::Negative(format!("{what} must be rational"))),
    }
}

fn alg_point(p: Point) -> Vec<AlgebraicElement> {
    match p {
        Point::Rational(v) => v.into_iter().map(AlgebraicElement::rational).collect(),
        Point::Algebraic(v) => v,
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn alg_value(a: &AlgebraicElement) -> Value {
    match a.to_rational() {
        Some(q) => json!(format_rational(&q)),
        None => serde_json::to_value(a.to_json()).expect("serializable"),
    }
}

fn poly_json(p: &Polynomial, names: &[String]) -> Value {
    json!({ "text": format_polynomial(p, names), "json": p.to_json() })
}

fn system_summary(sys: &PolySystem) -> Value {
    let meta = sys.meta();
    json!({
        "num_vars": sys.num_vars(),
        "num_constraints": sys.constraints().len(),
        "linear": meta.m,
        "nonlinear": meta.ell,
        "degree": meta.d,
        "height": meta.h.to_string(),
    })
}

fn verdict_json<S: ViolationSign>(sys: &PolySystem, v: &Verdict<S>, value: impl Fn(&S) -> Value) -> Value {
    let violated: Vec<Value> = v
        .violated_indices(sys)
        .into_iter()
        .map(|i| {
            json!({
                "index": i,
                "label": sys.constraints()[i].label,
                "residual": value(&v.residuals[i]),
            })
        })
        .collect();
    json!({
        "feasible": v.feasible,
        "worst_violation": value(&v.worst_violation),
        "residuals": v.residuals.iter().map(&value).collect::<Vec<_>>(),
        "violated": violated,
    })
}

fn point_verdict(sys: &PolySystem, p: &Point) -> Result<(bool, Value), Failure> {
    Ok(match p {
        Point::Rational(x) => {
            let v = sys.verify(x)?;
            (v.feasible, verdict_json(sys, &v, |r| json!(format_rational(r))))
        }
        Point::Algebraic(x) => {
            let v = sys.verify_alg(x)?;
            (v.feasible, verdict_json(sys, &v, alg_value))
        }
    })
}

fn feasibility_outcome(feasible: bool, outputs: Value) -> Outcome {
    if feasible {
        Outcome::ok(outputs)
    } else {
        Outcome::negative(outputs)
    }
}

pub fn verify(inputs: &mut Inputs, system: &Path, point: &Path) -> Res {
    let sys = load_system(inputs, system)?;
    let p = load_point(inputs, "point", point)?;
    let (feasible, v) = point_verdict(&sys, &p)?;
    Ok(feasibility_outcome(feasible, v))
}

fn parse_delta(s: &str) -> Result<BigInt, Failure> {
    let d = integer(s, "delta")?;
    if !d.is_positive() {
        return Err(Failure::Usage("delta must be a positive integer".into()));
    }
    Ok(d)
}

pub fn check(inputs: &mut Inputs, system: &Path, delta: &str, point: &Path) -> Res {
    param(inputs, "delta", delta);
    let sys = load_system(inputs, system)?;
    let delta = parse_delta(delta)?;
    let p = load_point(inputs, "point", point)?;
    let relaxed = sys.relax(&delta);
    let (feasible, v) = match &p {
        Point::Rational(x) => {
            let v = check_certificate(&sys, &delta, x)?;
            (v.feasible, verdict_json(&relaxed, &v, |r| json!(format_rational(r))))
        }
        Point::Algebraic(_) => point_verdict(&relaxed, &p)?,
    };
    Ok(feasibility_outcome(feasible, json!({ "delta": delta.to_string(), "verdict": v })))
}

/// The separation bound for a system: `delta(n, m + l, 2d, l H^2)`.
fn separation_delta(sys: &PolySystem) -> Result<BigInt, Failure> {
    let meta = sys.meta();
    let ell = meta.ell.max(1) as u32;
    let (n, m, d) = (sys.num_vars() as u32, meta.m as u32 + ell, 2 * meta.d.max(1));
    let h = BigInt::from(ell) * &meta.h * &meta.h;
    let bits = delta_bits_estimate(n, m, d, &h);
    if bits > MAX_MATERIALIZED_BITS {
        return Err(Failure::Negative(format!("delta for this system has about {bits:.3e} bits; pass an explicit --delta")));
    }
    Ok(delta_bound(n, m, d, &h)?)
}

pub fn certify(
    inputs: &mut Inputs,
    system: &Path,
    point: &Path,
    delta: &str,
    box_m: Option<&str>,
    lipschitz: Option<&str>,
) -> Res {
    param(inputs, "delta", delta);
    let sys = load_system(inputs, system)?;
    let x = rational_point(load_point(inputs, "point", point)?, "x_tilde")?;
    let delta = if matches!(delta.trim(), "bound" | "paper") { separation_delta(&sys)? } else { parse_delta(delta)? };
    let mut params = GridParams::default();
    if let Some(m) = box_m {
        param(inputs, "box", m);
        params.m = Some(integer(m, "--box")?);
    }
    if let Some(l) = lipschitz {
        param(inputs, "lipschitz", l);
        params.l = Some(integer(l, "--lipschitz")?);
    }
    let cert = grid_certificate(&sys, &delta, &x, &params)?;
    let verdict = check_certificate(&sys, &delta, &cert.point)?;
    let out = json!({
        "certificate": cert.to_json(),
        "delta_bits": delta.bits(),
        "phi_bits": cert.phi.bits(),
        "verified": verdict.feasible,
    });
    Ok(feasibility_outcome(verdict.feasible, out))
}

fn gadget_bundle(name: GadgetName, param: Option<&str>) -> Result<GadgetBundle, Failure> {
    let size = |default: usize| -> Result<usize, Failure> {
        match param {
            None => Ok(default),
            Some(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("--param must be a size, got {s:?}"))),
        }
    };
    let rat_or = |default: &str| rational(param.unwrap_or(default));
    Ok(match name {
        GadgetName::H => gadgets::gadget_h(&rat_or("4")?)?,
        GadgetName::Tiny => gadgets::gadget_tiny(size(4)?)?,
        GadgetName::Khachiyan => gadgets::gadget_khachiyan(size(6)?)?,
        GadgetName::Badboy => gadgets::gadget_badboy(size(4)?)?,
        GadgetName::Unlucky => gadgets::gadget_unlucky(&rat_or("0")?)?,
        GadgetName::Socp => {
            let v: Vec<i64> = param
                .unwrap_or("1,2,2,3")
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage("socp --param is a,b,c,d".into()))?;
            let [a, b, c, d] = v[..] else { return Err(Failure::Usage("socp --param is a,b,c,d".into())) };
            gadgets::gadget_socp(a, b, c, d)?
        }
    })
}

pub fn gadget(inputs: &mut Inputs, name: GadgetName, p: Option<&str>, out: &Path, landmarks: Option<&Path>) -> Res {
    param(inputs, "name", &format!("{name:?}"));
    if let Some(s) = p {
        param(inputs, "param", s);
    }
    let b = gadget_bundle(name, p)?;
    write(out, &b.system.to_json_string())?;
    let mut lms = Vec::new();
    for lm in &b.landmarks {
        let chk = check_point(&b.system, &lm.point)?;
        lms.push(json!({
            "name": lm.name,
            "point": lm.point.to_json()?,
            "expect": lm.expect,
            "feasible": chk.feasible,
            "worst_violation": alg_value(&chk.worst_violation),
        }));
    }
    if let Some(path) = landmarks {
        write(path, &serde_json::to_string_pretty(&lms).expect("serializable"))?;
    }
    let names = b.system.var_names().to_vec();
    Ok(Outcome::ok(json!({
        "gadget": b.name,
        "system": system_summary(&b.system),
        "objective": b.objective.as_ref().map(|o| poly_json(o, &names)),
        "landmarks": lms,
        "notes": b.notes,
    })))
}

pub fn separable(inputs: &mut Inputs, system: &Path, cubic: &Path) -> Res {
    let sys = load_system(inputs, system)?;
    let text = read(inputs, "cubic", cubic)?;
    let sc: SeparableCubic = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("cubic file: {e}")))?;
    Ok(match solve_separable(&sc, &sys)? {
        SeparableOutcome::Point(x) => {
            let value = sc.eval(&x)?;
            Outcome::ok(json!({ "verdict": "point", "point": strings(&x), "value": format_rational(&value) }))
        }
        SeparableOutcome::Infeasible => Outcome::negative(json!({ "verdict": "infeasible" })),
        SeparableOutcome::NeedsIrrational { note } => {
            Outcome::negative(json!({ "verdict": "needs-irrational", "note": note }))
        }
    })
}

pub fn ray(
    inputs: &mut Inputs,
    poly: &Path,
    from: &Path,
    dir: &Path,
    polytope: Option<&Path>,
    rationalize: Option<&str>,
) -> Res {
    let pj: PolyJson =
        serde_json::from_str(&read(inputs, "poly", poly)?).map_err(|e| Failure::Usage(format!("poly file: {e}")))?;
    let f = Polynomial::from_json(&pj)?;
    let x0 = alg_point(load_point(inputs, "from", from)?);
    let v = alg_point(load_point(inputs, "dir", dir)?);
    let cone = match polytope {
        Some(p) => Some(load_system(inputs, p)?),
        None => None,
    };
    let class = classify_ray_alg(&f, &x0, &v)?;
    let mut out = json!({
        "growth_order": class.growth_order,
        "direction": class.direction,
        "leading": alg_value(&class.leading),
        "restriction": class.restriction.coeffs().iter().map(alg_value).collect::<Vec<_>>(),
    });
    if let Some(eps) = rationalize {
        param(inputs, "rationalize", eps);
        let eps = rational(eps)?;
        let (xt, vt) = rationalize_unbounded_ray(&f, &x0, &v, cone.as_ref(), &eps)?;
        out["rationalized"] = json!({ "from": strings(&xt), "dir": strings(&vt) });
    }
    Ok(Outcome::ok(out))
}

pub fn bounds(inputs: &mut Inputs, system: Option<&Path>, flags: [Option<u32>; 4], h: Option<&str>, loose: bool) -> Res {
    let (n, m, ell, d, h) = match system {
        Some(p) => {
            let sys = load_system(inputs, p)?;
            let meta = sys.meta();
            (sys.num_vars() as u32, meta.m as u32, meta.ell as u32, meta.d, meta.h)
        }
        None => {
            let [Some(n), Some(m), Some(ell), Some(d)] = flags else {
                return Err(Failure::Usage("give --system or all of --n --m --ell --d --height".into()));
            };
            let h = integer(h.ok_or_else(|| Failure::Usage("--height is required".into()))?, "--height")?;
            param(inputs, "params", &format!("{n},{m},{ell},{d},{h}"));
            (n, m, ell, d, h)
        }
    };
    param(inputs, "loose", if loose { "1" } else { "0" });
    let r = bound_report(n, m, ell, d, &h, loose)?;
    let mut out = serde_json::to_value(&r).expect("serializable");
    out["delta_bits_exact"] = json!(r.delta.as_ref().map(BigInt::bits));
    out["inputs"] = json!({ "n": n, "m": m, "ell": ell, "d": d, "H": h.to_string() });
    Ok(Outcome::ok(out))
}

enum WitnessKind {
    Sat,
    Always,
    Eps(Rational),
}

fn witness_kind(s: &str) -> Result<WitnessKind, Failure> {
    match s.trim() {
        "sat" => Ok(WitnessKind::Sat),
        "always" => Ok(WitnessKind::Always),
        other => match other.strip_prefix("eps:") {
            Some(r) => Ok(WitnessKind::Eps(rational(r)?)),
            None => Err(Failure::Usage(format!("--witness is sat, always or eps:<rational>, got {s:?}"))),
        },
    }
}

fn satisfying(cnf: &CnfFormula) -> Result<red::Assignment, Failure> {
    red::brute_force_sat(cnf)?
        .ok_or_else(|| Failure::Negative("formula is unsatisfiable; the witness needs a satisfying assignment".into()))
}

fn unsupported(variant: Variant, w: &str) -> Failure {
    Failure::Negative(format!("no {w} witness for variant {variant:?}"))
}

pub fn reduce(
    inputs: &mut Inputs,
    variant: Variant,
    cnf_path: &Path,
    out: &Path,
    witness: Option<&str>,
    witness_out: Option<&Path>,
) -> Res {
    param(inputs, "variant", &format!("{variant:?}"));
    let cnf = red::parse_dimacs(&read(inputs, "cnf", cnf_path)?)?;
    let (sys, objective) = match variant {
        Variant::Np => (red::build_np_hard_system(&cnf, false)?, None),
        Variant::Quad => (red::build_np_hard_system(&cnf, true)?, None),
        Variant::Cubic => (red::build_cubic_system(&cnf)?, None),
        Variant::Superopt => {
            let p = red::build_superopt_problem(&cnf)?;
            (p.system, Some(p.objective))
        }
        Variant::Unbounded => {
            let p = red::build_unbounded_instance(&cnf)?;
            (p.system, Some(p.objective))
        }
    };
    write(out, &sys.to_json_string())?;
    let names = sys.var_names().to_vec();
    let mut result = json!({
        "variant": format!("{variant:?}").to_lowercase(),
        "cnf": { "num_vars": cnf.num_vars, "num_clauses": cnf.num_clauses() },
        "system": system_summary(&sys),
        "objective": objective.as_ref().map(|o| poly_json(o, &names)),
    });
    let Some(w) = witness else { return Ok(Outcome::ok(result)) };
    param(inputs, "witness", w);
    let kind = witness_kind(w)?;
    let point = match (variant, &kind) {
        (Variant::Np, WitnessKind::Sat) => Point::Rational(red::witness_satisfiable(&cnf, &satisfying(&cnf)?)?),
        (Variant::Np, WitnessKind::Always) => Point::Rational(red::witness_always(&cnf)?),
        (Variant::Quad, WitnessKind::Sat) => {
            let w = red::witness_satisfiable(&cnf, &satisfying(&cnf)?)?;
            Point::Rational(red::extend_quadratized(cnf.num_vars, &w)?)
        }
        (Variant::Quad, WitnessKind::Always) => {
            Point::Rational(red::extend_quadratized(cnf.num_vars, &red::witness_always(&cnf)?)?)
        }
        (Variant::Cubic, WitnessKind::Sat) => {
            Point::Rational(red::witness_cubic_satisfiable(&cnf, &satisfying(&cnf)?)?)
        }
        (Variant::Superopt, WitnessKind::Eps(eps)) => {
            let x = red::witness_epsilon(&cnf, eps)?;
            if cnf.num_vars <= red::MAX_BRUTE_FORCE_VARS {
                result["superoptimality"] = serde_json::to_value(red::check_superoptimality(&cnf, &x)?).expect("serializable");
            }
            Point::Rational(x)
        }
        (Variant::Unbounded, WitnessKind::Sat) => {
            Point::Rational(red::unbounded_ray_satisfiable(&cnf, &satisfying(&cnf)?)?)
        }
        (Variant::Unbounded, WitnessKind::Always) => Point::Algebraic(red::unbounded_ray_always(&cnf)?),
        (_, WitnessKind::Sat) => return Err(unsupported(variant, "sat")),
        (_, WitnessKind::Always) => return Err(unsupported(variant, "always")),
        (_, WitnessKind::Eps(_)) => return Err(unsupported(variant, "eps")),
    };
    let (feasible, verdict) = point_verdict(&sys, &point)?;
    let pj = point.to_json()?;
    if let Some(path) = witness_out {
        write(path, &serde_json::to_string_pretty(&pj).expect("serializable"))?;
    }
    result["witness"] = json!({ "point": pj, "verdict": verdict });
    // the eps witness is only eps-feasible by construction
    let expected_feasible = !matches!(kind, WitnessKind::Eps(_));
    Ok(if feasible || !expected_feasible { Outcome::ok(result) } else { Outcome::negative(result) })
}
