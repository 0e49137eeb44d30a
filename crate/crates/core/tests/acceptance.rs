//! Acceptance suite. Each criterion runs with its own time budget and prints a
//! single PASS/FAIL line; the test fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polycert::bounds::{delta_bound, lipschitz_constant};
use polycert::certify::{check_certificate, grid_certificate, GridParams};
use polycert::gadgets::{
    check_point, gadget_badboy, gadget_khachiyan, gadget_socp, h_polynomial, khachiyan_landmark, y_star,
};
use polycert::linalg::Polyhedron;
use polycert::ratcore::{encoding_size, format_rational, int, pow2, rat, vector_size};
use polycert::rays::{classify_ray, classify_ray_alg, d_tilde, irrational_ray_example, quartic_counterexample, Direction};
use polycert::reductions::{
    brute_force_sat, build_np_hard_system, witness_always, witness_satisfiable, Assignment, CnfFormula, NpLayout,
    Y_TILDE,
};
use polycert::separable::{solve_separable, SeparableCubic, SeparableOutcome};
use polycert::systems::Point;
use polycert::{AlgebraicElement, Extension, Monomial, PolySystem, Polynomial, UniPoly};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Line {
    passed: bool,
    text: String,
}

fn run(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Check) -> Line {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let el = start.elapsed();
    let (passed, detail) = match res {
        Ok(d) if el <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over time budget {:.1}s", budget.as_secs_f64())),
        Err(e) => (false, e),
    };
    let tag = if passed { "PASS" } else { "FAIL" };
    Line { passed, text: format!("[{tag}] criterion {id}: {name} ({:.2}s) {detail}", el.as_secs_f64()) }
}

fn random_cnf(rng: &mut ChaCha8Rng, n: usize, m: usize) -> CnfFormula {
    let clauses = (0..m)
        .map(|_| {
            let mut c = [0i32; 3];
            for l in &mut c {
                let v = rng.gen_range(1..=n as i32);
                *l = if rng.gen_bool(0.5) { v } else { -v };
            }
            c
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

fn rand_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> BigRational {
    let q = rng.gen_range(1..=max_den);
    rat(rng.gen_range(lo * q..=hi * q), q)
}

// ---------------------------------------------------------------- criterion 1

fn c1_algebraic_landmarks() -> Check {
    let h = h_polynomial(2, 0, 1);
    let hv = ok(h.eval_alg(&y_star()))?;
    ensure(hv.is_zero(), || format!("h(y*) = {hv:?}"))?;

    let ex = irrational_ray_example();
    let zero = vec![AlgebraicElement::rational(int(0)); 3];
    let r = ok(classify_ray_alg(&ex.f, &zero, &d_tilde()))?;
    let t = AlgebraicElement::generator(&ok(Extension::cbrt(2))?);
    ensure(r.leading == t, || format!("leading coefficient {:?}", r.leading))?;
    ensure(r.growth_order == 2, || format!("growth order {}", r.growth_order))?;

    let socp = ok(gadget_socp(1, 2, 2, 3))?;
    let lm = &socp.landmarks[0];
    let chk = ok(check_point(&socp.system, &lm.point))?;
    ensure(chk.feasible, || "SOCP landmark infeasible".into())?;
    let Point::Algebraic(x) = &lm.point else { return Err("SOCP landmark is rational".into()) };
    let sq = x[0].clone() * x[0].clone();
    ensure(sq == AlgebraicElement::rational(int(5)) && !x[0].is_rational(), || "x0 is not sqrt 5".into())?;
    let cone1 = &socp.system.constraints()[socp.system.find("cone1")[0]];
    let res = ok(cone1.poly.eval_alg(x))?;
    ensure(res.is_zero(), || "cone residual nonzero".into())?;
    Ok("h(y*) = 0, q(d~) = 2^(1/3), x0 = sqrt 5 with zero residual".into())
}

// ---------------------------------------------------------------- criterion 2

/// The (b)-witness for an arbitrary assignment, built from the layout alone.
fn canonical_point(n: usize, a: &Assignment) -> Vec<BigRational> {
    let lay = NpLayout::new(n, false);
    let mut p = vec![int(0); lay.num_vars()];
    for j in 0..n {
        let v = if a.0[j] { int(1) } else { int(-1) };
        p[lay.x(n + j)] = -v.clone();
        p[lay.x(j)] = v;
    }
    p[lay.gamma()] = int(4);
    p[lay.y1()] = rat(Y_TILDE[0].0, Y_TILDE[0].1);
    p[lay.y2()] = rat(Y_TILDE[1].0, Y_TILDE[1].1);
    p
}

fn c2_reduction_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut sat_count = 0;
    let mut overhead: Option<i64> = None;
    for inst in 0..200 {
        // half the draws are dense small formulas, so unsatisfiable ones show up
        let (n, m) = if inst % 2 == 0 {
            (rng.gen_range(3..=8), rng.gen_range(1..=15))
        } else {
            (rng.gen_range(3..=4), rng.gen_range(10..=15))
        };
        let cnf = random_cnf(&mut rng, n, m);
        let sys = ok(build_np_hard_system(&cnf, false))?;
        let oracle = ok(brute_force_sat(&cnf))?;
        let mut any = false;
        for idx in 0..(1u64 << n) {
            let a = Assignment::from_index(n, idx);
            let feasible = ok(sys.verify(&canonical_point(n, &a)))?.feasible;
            ensure(feasible == a.satisfies(&cnf), || format!("instance {inst}: witness/assignment mismatch"))?;
            any |= feasible;
        }
        ensure(any == oracle.is_some(), || format!("instance {inst}: oracle disagrees"))?;
        if let Some(a) = oracle {
            sat_count += 1;
            let w = ok(witness_satisfiable(&cnf, &a))?;
            ensure(ok(sys.verify(&w))?.feasible, || format!("instance {inst}: witness infeasible"))?;
            // size is exactly 8n + c: +-1 costs 3 bits, a zero costs 2
            let c = vector_size(&w) as i64 - 8 * n as i64;
            match overhead {
                None => overhead = Some(c),
                Some(c0) => ensure(c == c0, || format!("instance {inst}: size {} not 8n + {c0}", vector_size(&w)))?,
            }
        }
    }
    Ok(format!("200 instances, {sat_count} satisfiable, witness size = 8n + {} bits", overhead.unwrap_or(0)))
}

// ---------------------------------------------------------------- criterion 3

fn c3_always_feasible() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    for n in 3..=6usize {
        for _ in 0..20 {
            let m = rng.gen_range(1..=15);
            let cnf = random_cnf(&mut rng, n, m);
            let sys = ok(build_np_hard_system(&cnf, false))?;
            let w = ok(witness_always(&cnf))?;
            ensure(ok(sys.verify(&w))?.feasible, || format!("n = {n}: always-witness infeasible"))?;
            let s = &w[NpLayout::new(n, false).s()];
            let expect = BigRational::new(BigInt::one(), BigInt::one() << (1usize << n));
            ensure(s == &expect, || format!("s = {}", format_rational(s)))?;
            ensure(encoding_size(s) >= 1 << n, || format!("encoding_size(s) = {}", encoding_size(s)))?;
        }
    }
    Ok("80 formulas, s = 2^(-2^n) with size >= 2^n".into())
}

// ---------------------------------------------------------------- criterion 4

fn random_poly(rng: &mut ChaCha8Rng, n: usize, d: u32, h: i64) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..rng.gen_range(1..=10) {
        let mut e = vec![0u32; n];
        let deg = rng.gen_range(0..=d);
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let mut c = rng.gen_range(-h..=h);
        if c == 0 {
            c = h;
        }
        // overwrite rather than accumulate, so |coefficient| <= H
        let m = Monomial(e);
        let old = p.coeff(&m);
        p.add_term(m, int(c) - old);
    }
    p
}

fn c4_lipschitz() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let mut tight = BigRational::zero();
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=3usize);
        let d = rng.gen_range(1..=4u32);
        let h = rng.gen_range(1..=10i64);
        let m = rng.gen_range(1..=4i64);
        let g = random_poly(&mut rng, n, d, h);
        let point = |rng: &mut ChaCha8Rng| -> Vec<BigRational> {
            (0..n)
                .map(|_| if rng.gen_bool(0.2) { int(if rng.gen_bool(0.5) { m } else { -m }) } else { rand_rat(rng, -m, m, 64) })
                .collect()
        };
        let y = point(&mut rng);
        let z = point(&mut rng);
        let l = BigRational::from_integer(lipschitz_constant(n as u32, d, &BigInt::from(h), &BigInt::from(m)));
        let dist = y.iter().zip(&z).map(|(a, b)| (a - b).abs()).max().unwrap();
        let diff = (ok(g.eval(&y))? - ok(g.eval(&z))?).abs();
        ensure(diff <= &l * &dist, || format!("violation: n={n} d={d} H={h} M={m}"))?;
        if !dist.is_zero() {
            tight = tight.max(diff / (l * dist));
        }
    }
    Ok(format!("10^4 triples, zero violations, max |dg|/(L|dx|) = {:.3}", to_f64(&tight)))
}

fn to_f64(q: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------- criterion 5

fn c5_certificate_chain() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    let delta = BigInt::from(1_000_000);
    let mut max_bits = 0u64;
    for inst in 0..50 {
        let n = rng.gen_range(1..=3usize);
        let x_tilde: Vec<BigRational> = (0..n).map(|_| rand_rat(&mut rng, -2, 2, 7)).collect();
        let mut sys = PolySystem::with_default_names(n);
        let var = |i| Polynomial::var(n, i);
        let k = |q: BigRational| Polynomial::constant(n, q);
        for i in 0..n {
            sys.add_le(k(int(rng.gen_range(-3..=-2))) - var(i), "lo");
            sys.add_le(var(i) - k(int(rng.gen_range(2..=3))), "hi");
        }
        if n > 1 && rng.gen_bool(0.5) {
            // a cut through the box that keeps x_tilde
            let coef: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let mut row = Polynomial::zero(n);
            let mut at = BigRational::zero();
            for (i, c) in coef.iter().enumerate() {
                row = row + var(i).scale(&int(*c));
                at += int(*c) * &x_tilde[i];
            }
            sys.add_le(row - k(BigRational::from_integer(at.ceil().to_integer())), "cut");
        }
        let ell = rng.gen_range(1..=3usize);
        let mut gs = Vec::new();
        for _ in 0..ell {
            let mut q = Polynomial::zero(n);
            for i in 0..n {
                for j in i..n {
                    q = q + (var(i) * var(j)).scale(&int(rng.gen_range(-3..=3)));
                }
                q = q + var(i).scale(&int(rng.gen_range(-3..=3)));
            }
            if q.degree() < 2 {
                q = q + var(0).pow(2);
            }
            let slack = rat(rng.gen_range(0..=4), 2);
            let c = -(ok(q.eval(&x_tilde))?) - slack;
            let g = q + k(c);
            sys.add_le(g.clone(), "g");
            gs.push(g);
        }
        let cert = ok(grid_certificate(&sys, &delta, &x_tilde, &GridParams::default()))?;
        let xb = &cert.point;
        ensure(ok(check_certificate(&sys, &delta, xb))?.feasible, || format!("instance {inst}: certificate fails S"))?;
        let mq = BigRational::from_integer(cert.m.clone());
        let phi = BigRational::from_integer(cert.phi.clone());
        let dist = xb.iter().zip(&x_tilde).map(|(a, b)| (a - b).abs()).max().unwrap();
        ensure(dist <= &mq / &phi, || format!("instance {inst}: |x_bar - x_tilde| > M/phi"))?;
        let gap = BigRational::new(BigInt::one(), BigInt::from(ell) * &delta);
        for g in &gs {
            let dg = (ok(g.eval(xb))? - ok(g.eval(&x_tilde))?).abs();
            ensure(dg <= gap, || format!("instance {inst}: |g(x_bar) - g(x_tilde)| > 1/(l delta)"))?;
        }
        let hmax = sys
            .constraints()
            .iter()
            .map(|c| c.poly.terms().map(|(_, v)| v.abs().ceil().to_integer()).max().unwrap_or_default())
            .max()
            .unwrap();
        let lg = |v: f64| v.max(1.0).log2();
        let env = 64.0
            * (n as f64).powi(3)
            * 2.0
            * (lg(num_traits::ToPrimitive::to_f64(&hmax).unwrap()) + lg(1e6) + lg(ell as f64) + 8.0);
        ensure((cert.size_bits as f64) <= env, || format!("instance {inst}: size {} > envelope {env}", cert.size_bits))?;
        max_bits = max_bits.max(cert.size_bits);
    }
    Ok(format!("50 instances, chain exact, largest certificate {max_bits} bits"))
}

// ---------------------------------------------------------------- criterion 6

const MARGIN_BITS: i64 = 8;

/// Lower bound of `p` on `[c - r, c + r]` from its exact Taylor expansion at `c`.
fn cubic_lower(p: &UniPoly, c: &BigRational, r: &BigRational) -> BigRational {
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let a = p.coeff(3).abs();
    p.eval(c) - d1.eval(c).abs() * r - d2.eval(c).abs() * r * r / int(2) - a * r * r * r
}

/// Branch and bound over dyadic boxes. `Some(true)`: a rational point with
/// `g <= -2^-8` was found; `Some(false)`: `g >= 2^-8` on the polytope; `None`: neither.
fn grid_oracle(sc: &SeparableCubic, poly: &Polyhedron, bbox: Vec<(BigRational, BigRational)>) -> Option<bool> {
    let n = sc.num_vars();
    let margin = pow2(-MARGIN_BITS);
    let min_width = pow2(-20);
    let unis: Vec<UniPoly> = (0..n).map(|i| sc.univariate(i)).collect();
    let g = |x: &[BigRational]| sc.eval(x).unwrap();
    let mut best: Option<BigRational> = None;
    for v in poly.vertices() {
        let val = g(&v);
        best = Some(best.map_or(val.clone(), |b| b.min(val)));
    }
    let mut stack = vec![bbox];
    let mut steps = 0;
    while let Some(cell) = stack.pop() {
        steps += 1;
        if steps > 200_000 {
            return None;
        }
        let outside = poly.a.iter().zip(&poly.b).any(|(row, b)| {
            let lo: BigRational = row
                .iter()
                .zip(&cell)
                .map(|(r, (l, h))| if r.is_negative() { r * h } else { r * l })
                .fold(BigRational::zero(), |s, t| s + t);
            &lo > b
        });
        if outside {
            continue;
        }
        let center: Vec<BigRational> = cell.iter().map(|(l, h)| (l + h) / int(2)).collect();
        if poly.contains(&center) {
            let val = g(&center);
            best = Some(best.map_or(val.clone(), |b| b.min(val)));
        }
        if let Some(b) = &best {
            if b <= &-margin.clone() {
                return Some(true);
            }
        }
        let lb = cell
            .iter()
            .enumerate()
            .map(|(i, (l, h))| cubic_lower(&unis[i], &((l + h) / int(2)), &((h - l) / int(2))))
            .fold(BigRational::zero(), |s, t| s + t);
        if lb >= margin || best.as_ref().is_some_and(|b| &lb > b) {
            continue;
        }
        let (wi, width) = cell.iter().enumerate().map(|(i, (l, h))| (i, h - l)).max_by(|a, b| a.1.cmp(&b.1)).unwrap();
        if width < min_width {
            return None;
        }
        let (l, h) = cell[wi].clone();
        let mid = (&l + &h) / int(2);
        let mut left = cell.clone();
        left[wi] = (l, mid.clone());
        let mut right = cell;
        right[wi] = (mid, h);
        stack.push(left);
        stack.push(right);
    }
    match best {
        Some(b) if b < margin => None,
        _ => Some(false),
    }
}

fn c6_separable_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    let (mut accepted, mut skipped, mut feasible) = (0, 0, 0);
    while accepted < 100 {
        ensure(skipped < 2000, || format!("too many undecided instances ({skipped})"))?;
        let n = rng.gen_range(1..=2usize);
        let coeffs: Vec<[i64; 4]> = (0..n)
            .map(|_| {
                let mut a = rng.gen_range(-10..=10);
                if a == 0 {
                    a = 1;
                }
                [a, rng.gen_range(-10..=10), rng.gen_range(-10..=10), rng.gen_range(-10..=10)]
            })
            .collect();
        let sc = ok(SeparableCubic::from_i64(&coeffs))?;
        let mut sys = PolySystem::with_default_names(n);
        let mut bbox = Vec::new();
        for i in 0..n {
            let lo = rng.gen_range(-3..=2i64);
            let hi = lo + rng.gen_range(1..=3i64);
            sys.add_le(Polynomial::constant(n, int(lo)) - Polynomial::var(n, i), "lo");
            sys.add_le(Polynomial::var(n, i) - Polynomial::constant(n, int(hi)), "hi");
            bbox.push((int(lo), int(hi)));
        }
        if n == 2 && rng.gen_bool(0.4) {
            // x1 + x2 <= c, kept nonempty by choosing c at or above the low corner
            let c = bbox[0].0.clone() + bbox[1].0.clone() + int(rng.gen_range(1..=3));
            sys.add_le(Polynomial::var(2, 0) + Polynomial::var(2, 1) - Polynomial::constant(2, c), "cut");
        }
        let poly = sys.linear_polyhedron();
        let Some(expect) = grid_oracle(&sc, &poly, bbox) else {
            skipped += 1;
            continue;
        };
        accepted += 1;
        match ok(solve_separable(&sc, &sys))? {
            SeparableOutcome::Point(x) => {
                ensure(expect, || format!("solver found a point, oracle says infeasible: {coeffs:?}"))?;
                ensure(poly.contains(&x) && ok(sc.eval(&x))? <= BigRational::zero(), || {
                    format!("returned point fails exact verification: {coeffs:?}")
                })?;
                feasible += 1;
            }
            SeparableOutcome::Infeasible => {
                ensure(!expect, || format!("solver says infeasible, oracle found a point: {coeffs:?}"))?
            }
            SeparableOutcome::NeedsIrrational { note } => {
                return Err(format!("unexpected irrational-only verdict ({note}): {coeffs:?}"))
            }
        }
    }
    Ok(format!("100 instances ({feasible} feasible), {skipped} skipped inside the 2^-8 margin"))
}

// ---------------------------------------------------------------- criterion 7

fn c7_rays() -> Check {
    let ex = irrational_ray_example();
    let zero = vec![int(0); 3];
    for i in 0..=20 {
        for j in 0..=20 {
            let d = vec![rat(5, 4) + rat(i, 2000), rat(79, 50) + rat(j, 2000), int(1)];
            let c = ok(ex.c.eval(&d))?;
            ensure(c.is_negative(), || format!("c(d) >= 0 at grid point ({i},{j})"))?;
            let r = ok(classify_ray(&ex.f, &zero, &d))?;
            ensure(r.growth_order == 3 && r.direction == Direction::ToMinusInfinity, || {
                format!("grid point ({i},{j}) classified {:?} order {}", r.direction, r.growth_order)
            })?;
        }
    }
    let azero = vec![AlgebraicElement::rational(int(0)); 3];
    let r = ok(classify_ray_alg(&ex.f, &azero, &d_tilde()))?;
    let t = AlgebraicElement::generator(&ok(Extension::cbrt(2))?);
    ensure(r.growth_order == 2 && r.direction == Direction::ToPlusInfinity && r.leading == t, || {
        format!("R(0, d~): {:?} order {}", r.direction, r.growth_order)
    })?;

    let f = quartic_counterexample();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC7);
    for _ in 0..1000 {
        let x0 = vec![rand_rat(&mut rng, -5, 5, 9), rand_rat(&mut rng, -5, 5, 9)];
        let mut v = vec![rand_rat(&mut rng, -5, 5, 9), rand_rat(&mut rng, -5, 5, 9)];
        if v.iter().all(|c| c.is_zero()) {
            v[1] = int(1);
        }
        let r = ok(classify_ray(&f, &x0, &v))?;
        ensure(r.direction != Direction::ToPlusInfinity, || "quartic unbounded along a ray".into())?;
    }
    for k in 1..=10i64 {
        let v = ok(f.eval(&[int(k), int(k * k)]))?;
        ensure(v == int(k * k), || format!("f(k, k^2) = {} at k = {k}", format_rational(&v)))?;
    }
    Ok("441 grid rays order 3 to -inf, R(0,d~) order 2 to +inf, quartic bounded on 1000 rays".into())
}

// ---------------------------------------------------------------- criterion 8

fn c8_gadget_magnitudes() -> Check {
    for n in 1..=6usize {
        let b = ok(gadget_khachiyan(n))?;
        let lm = khachiyan_landmark(n);
        let expect = BigRational::from_integer(BigInt::one() << (1usize << (n - 1)));
        ensure(lm[n - 1] == expect, || format!("y_{n} = {}", format_rational(&lm[n - 1])))?;
        ensure(ok(b.system.verify(&lm))?.feasible, || format!("Khachiyan landmark infeasible at n = {n}"))?;
    }

    let b = ok(gadget_badboy(4))?;
    let lm = b.landmarks.iter().find(|l| l.name == "spread").ok_or("no spread landmark")?;
    let chk = ok(check_point(&b.system, &lm.point))?;
    let target = AlgebraicElement::rational(pow2(-16));
    ensure(chk.worst_violation == target, || format!("infeasibility {:?}", chk.worst_violation))?;
    let Point::Algebraic(x) = &lm.point else { return Err("badboy landmark is rational".into()) };
    let obj = ok(b.objective.as_ref().ok_or("no objective")?.eval_alg(x))?;
    let s2 = AlgebraicElement::generator(&ok(Extension::sqrt(2))?);
    ensure(obj == s2, || format!("objective {obj:?}"))?;

    let verbatim = b.landmarks.iter().find(|l| l.name == "verbatim").ok_or("no verbatim landmark")?;
    let vchk = ok(check_point(&b.system, &verbatim.point))?;
    Ok(format!(
        "y_6 = 2^32; badboy infeasibility 2^-16 at objective sqrt 2 (textbook point: {})",
        vchk.worst_violation.to_rational().map(|q| format_rational(&q)).unwrap_or_default()
    ))
}

// ---------------------------------------------------------------- criterion 9

fn c9_delta_formula() -> Check {
    let expect = BigInt::from(2) * num_traits::pow(BigInt::from(192), 32);
    let got = ok(delta_bound(2, 1, 2, &BigInt::from(2)))?;
    ensure(got == expect, || format!("delta(2,1,2,2) = {got}"))?;
    for h in [1i64, 10, 13] {
        let vals: Vec<BigInt> = (1..=3u32).map(|m| delta_bound(2, m, 2, &BigInt::from(h))).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for m in 0..2usize {
            ensure(vals[m] <= vals[m + 1], || format!("delta decreases in m at H = {h}"))?;
            // strictly increasing once 2n + 2m dominates H
            if 4 + 2 * (m as i64 + 2) > h {
                ensure(vals[m] < vals[m + 1], || format!("delta not strictly increasing at H = {h}, m = {}", m + 1))?;
            }
        }
    }
    Ok("delta(2,1,2,2) = 2*192^32; monotone in m on the 3x3 grid".into())
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let lines = vec![
        run(1, "algebraic landmarks", s(1), c1_algebraic_landmarks),
        run(2, "reduction vs SAT oracle", s(60), c2_reduction_oracle),
        run(3, "always-feasible witness", s(10), c3_always_feasible),
        run(4, "Lipschitz property", s(30), c4_lipschitz),
        run(5, "certificate chain", s(60), c5_certificate_chain),
        run(6, "separable solver vs grid oracle", s(120), c6_separable_oracle),
        run(7, "ray classification", s(20), c7_rays),
        run(8, "gadget magnitudes", s(5), c8_gadget_magnitudes),
        run(9, "delta formula", s(1), c9_delta_formula),
    ];
    for l in &lines {
        println!("{}", l.text);
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
