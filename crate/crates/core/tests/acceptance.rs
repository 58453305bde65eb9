//! Acceptance criteria A1 to A10. Prints one line per criterion and exits
//! nonzero unless the failing set is exactly the documented one.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{ex1, k_m, load, model, worked_instances, random_instances, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uniserial::analysis::{finite_type_report, quotient_check, symbolic_a, uniserdim, AnalysisOptions, QuotientVerdict, UniserialDimension, Verdict};
use uniserial::linalg::{commutator, is_zero_matrix};
use uniserial::par::Execution;
use uniserial::rep::{differential_rank_at_zero, endo_basis_oracle, fiber_report, realize, same_fiber, top_change, verify};
use uniserial::variety::{build_variety, count_points, sample_point, Classification, VarietyModel};
use uniserial::{parse_sequence, AlgebraPresentation, Rational, Rationals};

/// Criteria known to fail, with the reason recorded alongside the project notes.
const EXPECTED_FAILURES: &[&str] = &["A2"];

const MAST6: &str = "a5*a4*a3*a1*a2*a1";

fn opts() -> AnalysisOptions {
    AnalysisOptions { samples: 16, seed: 0, execution: Execution::Sequential }
}

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn is_affine(model: &VarietyModel, d: usize) -> bool {
    matches!(model.classification(), Classification::AffineSpace { dimension, .. } if *dimension == d)
}

fn a1() -> Outcome {
    for l in 1..=4 {
        let pres = ex1(l);
        for p in pres.quiver().all_paths_of_length(l) {
            let m = build_variety(&pres, &p);
            check(is_affine(&m, l * (l + 1) / 2), format!("l={l} {}: {:?}", pres.quiver().render_path(&p), m.classification().status()))?;
        }
    }
    Ok("l=1..4: every mast gives AffineSpace(l(l+1)/2)".into())
}

fn a2() -> Outcome {
    let pres = ex1(3);
    let m = model(&pres, "a*a*b");
    let got: Vec<usize> = (1..=3)
        .map(|i| fiber_report(m.context(), &realize(&Rationals, pres.quiver(), m.context(), &k_m(&pres, i))).fiber_dim)
        .collect();
    let want = vec![2, 1, 0];
    if got == want {
        Ok(format!("fiber_dim at k(1), k(2), k(3) = {got:?}"))
    } else {
        Err(format!("fiber_dim at k(1), k(2), k(3) = {got:?}, expected {want:?}"))
    }
}

fn a3() -> Outcome {
    let pres = load("ex2a.uat");
    let m = model(&pres, MAST6);
    let polys = m.render_polynomials(pres.quiver());
    check(polys == ["X(a5,3,6) - 1"], format!("polynomials {polys:?}"))?;
    check(is_affine(&m, 2), "not AffineSpace(2)")?;
    let mut ranks = 0;
    for seed in 0..16 {
        let k = sample_point(&m, seed).ok_or("no sample point")?;
        let x = realize(&Rationals, pres.quiver(), m.context(), k.coords());
        let r = fiber_report(m.context(), &x).rank_a;
        check(r == 1, format!("rank {r} at seed {seed}"))?;
        ranks += 1;
    }
    let a = symbolic_a(&pres, &m).ok_or("no symbolic A")?;
    check(a.entries().iter().any(|e| !e.is_zero()), "symbolic A vanishes")?;
    let seq = parse_sequence("1 2 1 2 3 2 4", pres.quiver()).unwrap();
    let u = uniserdim(&pres, &seq, &opts()).value;
    check(u == UniserialDimension::Value(1), format!("uniserdim {u:?}"))?;
    Ok(format!("{{X(a5,3,6) - 1}}, AffineSpace(2), rank 1 at {ranks} points, symbolic A nonzero, uniserdim 1"))
}

fn a4() -> Outcome {
    let pres = load("ex2b.uat");
    let m = model(&pres, MAST6);
    let polys = m.render_polynomials(pres.quiver());
    check(polys == ["X(a3,1,4) - X(a5,1,6)", "X(a5,3,6) - 1"], format!("polynomials {polys:?}"))?;
    check(is_affine(&m, 1), "not AffineSpace(1)")?;
    let seq = parse_sequence("1 2 1 2 3 2 4", pres.quiver()).unwrap();
    let u = uniserdim(&pres, &seq, &opts()).value;
    check(u == UniserialDimension::Value(0), format!("uniserdim {u:?}"))?;
    let v = finite_type_report(&pres, pres.loewy_bound() - 1, &opts()).map_err(|e| e.to_string())?;
    check(v.verdict == Verdict::Finite, format!("verdict {}", v.verdict.as_str()))?;
    Ok("AffineSpace(1), uniserdim 0, finite type".into())
}

fn a5() -> Outcome {
    let pres = load("ex2a.uat");
    let v = finite_type_report(&pres, pres.loewy_bound() - 1, &opts()).map_err(|e| e.to_string())?;
    check(v.verdict == Verdict::Infinite, format!("verdict {}", v.verdict.as_str()))?;
    let want = parse_sequence("1 2 1 2 3 2 4", pres.quiver()).unwrap();
    check(v.witnesses.iter().any(|w| w.sequence == want), "witness (1,2,1,2,3,2,4) missing")?;
    Ok(format!("infinite, {} witnesses including (1,2,1,2,3,2,4)", v.witnesses.len()))
}

fn corpus() -> Vec<Instance> {
    let mut all = worked_instances();
    all.extend(random_instances(0, 100));
    all
}

fn a6(corpus: &[Instance]) -> Outcome {
    let mut positive = 0;
    for inst in corpus {
        let r = fiber_report(inst.ctx(), &inst.x);
        let oracle = endo_basis_oracle(&Rationals, &inst.x).len();
        check(oracle == inst.ctx().t() + 1 - r.rank_a, format!("{}: endo {oracle}, rank {}", inst.label, r.rank_a))?;
        let d = differential_rank_at_zero(inst.ctx(), &inst.x);
        check(d == r.rank_a, format!("{}: differential {d}, rank {}", inst.label, r.rank_a))?;
        positive += usize::from(r.rank_a > 0);
    }
    Ok(format!("{} instances (100 random), {positive} with rank A > 0", corpus.len()))
}

fn a7(corpus: &[Instance]) -> Outcome {
    for inst in corpus {
        let basis = endo_basis_oracle(&Rationals, &inst.x);
        for a in &basis {
            for b in &basis {
                check(is_zero_matrix(&Rationals, &commutator(&Rationals, a, b)), format!("{}: commutator", inst.label))?;
            }
        }
    }
    Ok(format!("{} instances", corpus.len()))
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=5).into())
}

fn a8_example(pres: &AlgebraPresentation, path: &str, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = model(pres, path);
    let ctx = m.context();
    for i in 0..50 {
        let k = sample_point(&m, rng.gen()).ok_or("no sample point")?;
        let x = realize(&Rationals, pres.quiver(), ctx, k.coords());
        let c: Vec<Rational> = (0..ctx.t()).map(|_| small_rational(rng)).collect();
        let k2 = top_change(&Rationals, ctx, &x, &c);
        check(m.contains(&k2), format!("{path} pair {i}: top change leaves V_p"))?;
        let x2 = realize(&Rationals, pres.quiver(), ctx, &k2);
        check(verify(pres, ctx, &x2).ok, format!("{path} pair {i}: relations fail"))?;
        check(same_fiber(&Rationals, ctx, &x, ctx, &x2).map_err(|e| e.to_string())?, format!("{path} pair {i}: not isomorphic"))?;
        let f = fiber_report(ctx, &x).fiber_dim;
        check(f < ctx.mu(), format!("{path} pair {i}: fiber {f} > mu - 1"))?;
    }
    Ok(())
}

fn a8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    a8_example(&ex1(3), "a*a*b", &mut rng)?;
    a8_example(&ex1(4), "b*a*b*a", &mut rng)?;
    a8_example(&load("ex2a.uat"), MAST6, &mut rng)?;
    a8_example(&load("ex2b.uat"), MAST6, &mut rng)?;
    Ok("50 pairs on each of 4 patches".into())
}

fn a9() -> Outcome {
    let mut models: Vec<VarietyModel> = Vec::new();
    for l in 1..=4 {
        let pres = ex1(l);
        models.extend(pres.quiver().all_paths_of_length(l).iter().map(|p| build_variety(&pres, p)));
    }
    models.push(model(&load("ex2a.uat"), MAST6));
    models.push(model(&load("ex2b.uat"), MAST6));
    let mut checked = 0;
    for m in &models {
        let Classification::AffineSpace { dimension, .. } = m.classification() else { continue };
        for q in [2u64, 3, 5] {
            let n = count_points(m, q, Execution::Sequential).map_err(|e| e.to_string())?;
            check(n == q.pow(*dimension as u32), format!("count {n} != {q}^{dimension}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (patch, q) pairs"))
}

fn a10() -> Outcome {
    let lin = load("linear_a4.uat");
    let v = quotient_check(&lin, &parse_sequence("1 2 3 4", lin.quiver()).unwrap(), &opts());
    check(v == QuotientVerdict::Yes, format!("linear A4: {v:?}"))?;
    let pres = load("ex2a.uat");
    let v = quotient_check(&pres, &parse_sequence("1 2 1 2 3 2 4", pres.quiver()).unwrap(), &opts());
    let QuotientVerdict::No { rank_a, .. } = v else { return Err(format!("ex2a: {v:?}")) };
    Ok(format!("linear A4 yes; ex2a no with witness of rank {rank_a}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    println!("corpus: {} instances built in {:.2}s", corpus.len(), start.elapsed().as_secs_f64());
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("A1", Box::new(a1)),
        ("A2", Box::new(a2)),
        ("A3", Box::new(a3)),
        ("A4", Box::new(a4)),
        ("A5", Box::new(a5)),
        ("A6", Box::new(|| a6(&corpus))),
        ("A7", Box::new(|| a7(&corpus))),
        ("A8", Box::new(a8)),
        ("A9", Box::new(a9)),
        ("A10", Box::new(a10)),
    ];
    let mut failed = Vec::new();
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("{name} PASS ({secs:.2}s) {msg}"),
            Err(msg) => {
                println!("{name} FAIL ({secs:.2}s) {msg}");
                failed.push(*name);
            }
        }
    }
    if failed == EXPECTED_FAILURES {
        println!("acceptance: {} of {} pass; failing set matches {EXPECTED_FAILURES:?}", criteria.len() - failed.len(), criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failing set {failed:?}, documented {EXPECTED_FAILURES:?}");
        ExitCode::FAILURE
    }
}
