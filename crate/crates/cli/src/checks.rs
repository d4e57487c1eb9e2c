//! Built-in verification sweeps (`qpi selfcheck`): the same assertions the
//! acceptance suite makes, runnable in production builds with a configurable
//! sweep bound. Prints one pass/fail line per check; any failure exits with
//! the internal-consistency code.

use std::time::Instant;

use num::{BigInt, BigRational};
use qpi_core::error::{Error, Result};
use qpi_core::geometry::{bezout_ledger, mult_at_infinity_coprime, puiseux_order_oracle};
use qpi_core::isotropy::{
    coprime_lcm_split, finiteness_check, isotropy_group_of_inner, realize_group,
    RealizabilityStatus,
};
use qpi_core::oracles;
use qpi_core::qplane::{commutes, Derivation, DiagonalAutomorphism, QPoly};
use qpi_core::scalar::{QSpec, Scalar};
use qpi_core::torus::{
    brute_force_solutions, invariants_from_points, smith_normal_form, two_equation_structure,
    Character, Classification, TorsionPoint,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type NamedCheck = (&'static str, Box<dyn Fn() -> Check>);

const T: QSpec = QSpec::Transcendental;

fn mono(i: u32, j: u32) -> QPoly {
    QPoly::monomial(i, j, Scalar::one())
}

fn specs() -> Vec<QSpec> {
    vec![
        T,
        QSpec::root_of_unity(3).unwrap(),
        QSpec::root_of_unity(4).unwrap(),
        QSpec::root_of_unity(5).unwrap(),
    ]
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.random_range(-6i64..=6);
    let den = rng.random_range(1i64..=4);
    Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn random_w(rng: &mut ChaCha8Rng, spec: &QSpec, max_exp: u32, max_terms: usize) -> QPoly {
    let mut acc = QPoly::zero();
    for _ in 0..rng.random_range(1..=max_terms) {
        let i = rng.random_range(0..=max_exp);
        let j = rng.random_range(0..=max_exp);
        let c = Scalar::from_integer(*[-2i64, -1, 1, 2, 3].choose(rng).unwrap());
        acc = acc.add(&QPoly::monomial(i, j, c), spec).unwrap();
    }
    acc
}

fn random_qpoly(rng: &mut ChaCha8Rng, spec: &QSpec, max_exp: u32, max_terms: usize) -> QPoly {
    let mut acc = QPoly::zero();
    for _ in 0..rng.random_range(1..=max_terms) {
        let i = rng.random_range(0..=max_exp);
        let j = rng.random_range(0..=max_exp);
        let mut c = random_rational(rng);
        if c.is_zero() {
            c = Scalar::one();
        }
        acc = acc.add(&QPoly::monomial(i, j, c), spec).unwrap();
    }
    acc
}

fn realize_point(p: &TorsionPoint, spec: &QSpec) -> DiagonalAutomorphism {
    let (un, ud) = p.u();
    let (vn, vd) = p.v();
    DiagonalAutomorphism::new(
        Scalar::root_of_unity(ud as u64, un).unwrap(),
        Scalar::root_of_unity(vd as u64, vn).unwrap(),
        spec,
    )
    .unwrap()
}

fn err(msg: impl Into<String>) -> Check {
    Err(msg.into())
}

fn check_example_order_four() -> Check {
    let w = mono(3, 1).add(&mono(2, 2), &T).map_err(|e| e.to_string())?;
    let res = isotropy_group_of_inner(&w, &Scalar::zero(), &Scalar::zero(), &T)
        .map_err(|e| e.to_string())?;
    if res.report.classification != Classification::Finite
        || res.report.order != Some(4)
        || res.report.invariants != (4, 1)
    {
        return err(format!("isotropy of x^3 y + x^2 y^2 gave {:?}", res.report));
    }
    let ledger = bezout_ledger(3, 1, 2, 2).map_err(|e| e.to_string())?;
    if (ledger.total, ledger.affine, ledger.at010, ledger.at100) != (16, 4, 8, 4) {
        return err(format!("(3,1,2,2) ledger gave {ledger:?}"));
    }
    Ok("order-4 isotropy and ledger 16 = 4 + 8 + 4".into())
}

fn check_example_ledger_72() -> Check {
    let ledger = bezout_ledger(2, 4, 3, 9).map_err(|e| e.to_string())?;
    if (ledger.total, ledger.affine, ledger.at010, ledger.at100) != (72, 6, 18, 48) {
        return err(format!("(2,4,3,9) ledger gave {ledger:?}"));
    }
    let pair = mult_at_infinity_coprime(1, 2, 1, 3).map_err(|e| e.to_string())?;
    if pair != (3, 8) {
        return err(format!("branch pair (1,2,1,3) gave {pair:?}"));
    }
    Ok("ledger {72, 6, 18, 48} and branch pair (3, 8)".into())
}

fn check_scaling_table() -> Check {
    for m in 1..=10u32 {
        let res = isotropy_group_of_inner(&mono(m, 0), &Scalar::zero(), &Scalar::zero(), &T)
            .map_err(|e| e.to_string())?;
        if res.report.classification != Classification::Infinite
            || res.report.invariants != (m as u64, 1)
            || res.report.torus_rank != 1
        {
            return err(format!("w = x^{m} gave {:?}", res.report));
        }
        for n in 1..=10u32 {
            let w = mono(m, 0).add(&mono(0, n), &T).map_err(|e| e.to_string())?;
            let res = isotropy_group_of_inner(&w, &Scalar::zero(), &Scalar::zero(), &T)
                .map_err(|e| e.to_string())?;
            let expected = (
                num::integer::lcm(m as u64, n as u64),
                num::integer::gcd(m as u64, n as u64),
            );
            if res.report.order != Some(m as u64 * n as u64) || res.report.invariants != expected {
                return err(format!("w = x^{m} + y^{n} gave {:?}", res.report));
            }
            let single = isotropy_group_of_inner(&mono(m, n), &Scalar::zero(), &Scalar::zero(), &T)
                .map_err(|e| e.to_string())?;
            if single.report.classification != Classification::Infinite {
                return err(format!(
                    "single monomial x^{m} y^{n} gave {:?}",
                    single.report
                ));
            }
        }
    }
    let res = isotropy_group_of_inner(&QPoly::one(), &Scalar::zero(), &Scalar::zero(), &T)
        .map_err(|e| e.to_string())?;
    if res.report.classification != Classification::FullTorus {
        return err("constant w must give the full torus");
    }
    Ok("scaling table for m, n <= 10".into())
}

fn check_triple_route(bound: u64) -> Check {
    let mut quadruples = 0u64;
    for a in 1..=bound {
        for b in 1..=bound {
            for c in 1..=bound {
                for d in 1..=bound {
                    let det = (a * d) as i64 - (b * c) as i64;
                    if det == 0 {
                        continue;
                    }
                    quadruples += 1;
                    let order = det.unsigned_abs();
                    let closed = two_equation_structure(a, b, c, d).map_err(|e| e.to_string())?;
                    let chars = [
                        Character::new(a as i64, b as i64),
                        Character::new(c as i64, d as i64),
                    ];
                    let snf = smith_normal_form(&chars).map_err(|e| e.to_string())?;
                    let (s1, s2) = snf.invariants();
                    let points = brute_force_solutions(&chars, order).map_err(|e| e.to_string())?;
                    let brute = invariants_from_points(&points).map_err(|e| e.to_string())?;
                    if closed.order != order
                        || closed.invariants != (s2, s1)
                        || brute != (s2, s1)
                        || points.len() as u64 != order
                    {
                        return err(format!(
                            "routes disagree at ({a},{b},{c},{d}): closed {:?}, snf ({s2},{s1}), brute {:?}",
                            closed.invariants, brute
                        ));
                    }
                    let ledger = bezout_ledger(a, b, c, d).map_err(|e| e.to_string())?;
                    if ledger.total != ledger.affine + ledger.at010 + ledger.at100 {
                        return err(format!("bezout identity failed at ({a},{b},{c},{d})"));
                    }
                    if num::integer::gcd(a, b) == 1 && num::integer::gcd(c, d) == 1 {
                        let oracle = puiseux_order_oracle(a, b, c, d).map_err(|e| e.to_string())?;
                        if oracle != ledger.at010 {
                            return err(format!("puiseux oracle disagrees at ({a},{b},{c},{d})"));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("three routes agree on {quadruples} quadruples"))
}

fn check_realization() -> Check {
    let specs = [
        T,
        QSpec::root_of_unity(5).unwrap(),
        QSpec::root_of_unity(7).unwrap(),
    ];
    let mut cases = 0;
    for n1 in 1..=12u64 {
        for n2 in 1..=n1 {
            if n1 % n2 != 0 {
                continue;
            }
            for spec in &specs {
                if spec.q_power_is_one(n1 as i64) {
                    continue;
                }
                cases += 1;
                let verdict = realize_group(n1, n2, spec).map_err(|e| e.to_string())?;
                let ok = verdict.status == RealizabilityStatus::Realizable
                    && verdict
                        .verified
                        .as_ref()
                        .is_some_and(|r| r.invariants == (n1, n2));
                if !ok {
                    return err(format!("realize({n1}, {n2}) gave {:?}", verdict.status));
                }
            }
        }
    }
    Ok(format!("round trip on {cases} (n1, n2, q) cases"))
}

fn check_obstruction() -> Check {
    for p in [3u64, 4, 5] {
        let spec = QSpec::root_of_unity(p).unwrap();
        for r in 1..=3u64 {
            for s in 1..=3u64 {
                let n1 = num::integer::lcm(p * r, p * s);
                let n2 = num::integer::gcd(p * r, p * s);
                let verdict = realize_group(n1, n2, &spec).map_err(|e| e.to_string())?;
                if verdict.status != RealizabilityStatus::NotRealizable {
                    return err(format!(
                        "realize({n1}, {n2}) under order {p} gave {:?}",
                        verdict.status
                    ));
                }
            }
        }
        let forbidden: Vec<(u64, u64)> = (1..=3u64)
            .flat_map(|r| {
                (1..=3u64).map(move |s| {
                    (
                        num::integer::lcm(p * r, p * s),
                        num::integer::gcd(p * r, p * s),
                    )
                })
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(600 + p);
        for round in 0..500 {
            let w = random_w(&mut rng, &spec, 6, 4);
            let res = isotropy_group_of_inner(&w, &Scalar::zero(), &Scalar::zero(), &spec)
                .map_err(|e| e.to_string())?;
            if res.report.classification == Classification::Finite
                && forbidden.contains(&res.report.invariants)
            {
                return err(format!(
                    "p={p} round {round}: forbidden invariants {:?} from w = {w}",
                    res.report.invariants
                ));
            }
        }
    }
    Ok("obstructed groups rejected; absent from 1500 random sweeps".into())
}

fn check_commutation() -> Check {
    let specs = specs();
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let mut done = 0;
    while done < 100 {
        let spec = specs[done % specs.len()];
        let w = random_w(&mut rng, &spec, 4, 3);
        if !finiteness_check(&w, &spec) {
            continue;
        }
        let delta = Derivation::from_inner_form(&w, &Scalar::zero(), &Scalar::zero(), &spec)
            .map_err(|e| e.to_string())?;
        let res = qpi_core::isotropy::isotropy_group(&delta, &spec).map_err(|e| e.to_string())?;
        for gen in &res.report.generators {
            let rho = realize_point(gen, &spec);
            if !commutes(&rho, &delta, &spec).map_err(|e| e.to_string())? {
                return err(format!("generator {gen} fails to commute with w = {w}"));
            }
        }
        let c = res.constraints[0];
        let non_member = if c.m != 0 {
            TorsionPoint::new(1, 2 * c.m, 0, 1).unwrap()
        } else {
            TorsionPoint::new(0, 1, 1, 2 * c.n).unwrap()
        };
        let rho = realize_point(&non_member, &spec);
        if commutes(&rho, &delta, &spec).map_err(|e| e.to_string())? {
            return err(format!("non-member {non_member} commutes with w = {w}"));
        }
        done += 1;
    }
    Ok("100 finite instances: generators commute, non-members fail".into())
}

fn check_algebra_soundness() -> Check {
    let specs = specs();
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    for round in 0..100 {
        let spec = specs[round % specs.len()];
        let w = random_qpoly(&mut rng, &spec, 5, 4);
        let a = random_rational(&mut rng);
        let b = random_rational(&mut rng);
        let delta = Derivation::from_inner_form(&w, &a, &b, &spec).map_err(|e| e.to_string())?;
        if Derivation::from_images(delta.dx().clone(), delta.dy().clone(), &spec).is_err() {
            return err(format!("constructed derivation rejected at round {round}"));
        }
    }
    if Derivation::from_images(QPoly::y(), QPoly::zero(), &T).is_ok() {
        return err("planted non-derivation (dx = y, dy = 0) was accepted");
    }
    for round in 0..500 {
        let spec = specs[round % specs.len()];
        let f = random_qpoly(&mut rng, &spec, 6, 3);
        let g = random_qpoly(&mut rng, &spec, 6, 3);
        let fast = f.mul(&g, &spec).map_err(|e| e.to_string())?;
        let slow = oracles::free_multiply(&f, &g, &spec).map_err(|e| e.to_string())?;
        if fast != slow {
            return err(format!(
                "product disagrees with rewriting oracle at round {round}"
            ));
        }
    }
    Ok("well-definedness checks and 500 oracle-checked products".into())
}

fn check_coprime_split() -> Check {
    for r in 1..=50u64 {
        for s in 1..=50u64 {
            let (rp, sp) = coprime_lcm_split(r, s).map_err(|e| e.to_string())?;
            let lcm = num::integer::lcm(r, s);
            if num::integer::gcd(rp, sp) != 1 || r % rp != 0 || s % sp != 0 || rp * sp != lcm {
                return err(format!("split({r}, {s}) gave ({rp}, {sp})"));
            }
            let elem = TorsionPoint::new(1, rp as i64, 0, 1)
                .unwrap()
                .add(&TorsionPoint::new(1, sp as i64, 0, 1).unwrap())
                .unwrap();
            if elem.order() != lcm {
                return err(format!("order identity failed for ({r}, {s})"));
            }
        }
    }
    Ok("split postconditions and order identity for r, s <= 50".into())
}

pub fn run_selfcheck(bound: u64, json: bool) -> Result<()> {
    if bound == 0 {
        return Err(Error::BadInput("sweep bound must be positive".into()));
    }
    let checks: Vec<NamedCheck> = vec![
        ("example-order-four", Box::new(check_example_order_four)),
        ("example-ledger-72", Box::new(check_example_ledger_72)),
        ("scaling-table", Box::new(check_scaling_table)),
        (
            "triple-route-sweep",
            Box::new(move || check_triple_route(bound)),
        ),
        ("realization-round-trip", Box::new(check_realization)),
        ("obstructed-groups", Box::new(check_obstruction)),
        ("end-to-end-commutation", Box::new(check_commutation)),
        ("algebra-soundness", Box::new(check_algebra_soundness)),
        ("coprime-lcm-split", Box::new(check_coprime_split)),
    ];

    let total = checks.len();
    let mut passed = 0;
    let mut rows = Vec::new();
    let start = Instant::now();
    for (idx, (name, check)) in checks.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = check();
        let ms = t0.elapsed().as_millis();
        let ok = outcome.is_ok();
        if ok {
            passed += 1;
        }
        let detail = match &outcome {
            Ok(s) => s.clone(),
            Err(s) => s.clone(),
        };
        if !json {
            println!(
                "[{}/{}] {}  {:<24} {} ({} ms)",
                idx + 1,
                total,
                if ok { "PASS" } else { "FAIL" },
                name,
                detail,
                ms
            );
        }
        rows.push(serde_json::json!({
            "name": name,
            "status": if ok { "pass" } else { "fail" },
            "detail": detail,
            "ms": ms,
        }));
    }
    let elapsed = start.elapsed();
    if json {
        let value = serde_json::json!({
            "checks": rows,
            "passed": passed,
            "total": total,
            "ms": elapsed.as_millis(),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        println!(
            "selfcheck: {passed}/{total} passed in {:.2} s",
            elapsed.as_secs_f64()
        );
    }
    if passed == total {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "selfcheck failed: {}/{total} checks passed",
            passed
        )))
    }
}
