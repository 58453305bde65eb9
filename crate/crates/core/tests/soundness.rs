//! Point counts against a brute-force module check over F_q: every assignment
//! of the coordinates is realized and kept when all relations act as zero.

mod common;

use common::{ex1, load, model, random_instances};
use uniserial::field::PrimeField;
use uniserial::linalg::{self, is_zero_matrix, Matrix};
use uniserial::par::Execution;
use uniserial::rep::{path_matrix, realize};
use uniserial::variety::{count_points, VarietyModel};
use uniserial::AlgebraPresentation;

fn brute_force(pres: &AlgebraPresentation, model: &VarietyModel, q: u64) -> Option<u64> {
    let field = PrimeField::new(q).unwrap();
    let ctx = model.context();
    let n = ctx.variable_count();
    let relations: Vec<Vec<(u64, _)>> = pres
        .relations()
        .iter()
        .map(|r| r.terms().iter().map(|(c, p)| field.reduce(c).map(|c| (c, p.clone()))).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let dim = ctx.len() + 1;
    let mut count = 0;
    let mut k = vec![0u64; n];
    for idx in 0..q.pow(n as u32) {
        let mut rest = idx;
        for c in k.iter_mut() {
            *c = rest % q;
            rest /= q;
        }
        let x = realize(&field, pres.quiver(), ctx, &k);
        let vanishes = relations.iter().all(|terms| {
            let mut acc = Matrix::zero(&field, dim, dim);
            for (c, p) in terms {
                acc = linalg::add(&field, &acc, &linalg::scale(&field, c, &path_matrix(&field, &x, p)));
            }
            is_zero_matrix(&field, &acc)
        });
        count += u64::from(vanishes);
    }
    Some(count)
}

fn agree(pres: &AlgebraPresentation, model: &VarietyModel, q: u64) -> bool {
    match (brute_force(pres, model, q), count_points(model, q, Execution::Sequential)) {
        (Some(b), Ok(c)) => b == c,
        // A coefficient without an inverse mod q on either side.
        (None, _) | (_, Err(_)) => true,
    }
}

#[test]
fn worked_examples() {
    for name in ["ex2a.uat", "ex2b.uat"] {
        let pres = load(name);
        let m = model(&pres, "a5*a4*a3*a1*a2*a1");
        for q in [2, 3, 5] {
            assert!(agree(&pres, &m, q), "{name} q={q}");
        }
    }
    let pres = ex1(2);
    for p in pres.quiver().all_paths_of_length(2) {
        let m = uniserial::variety::build_variety(&pres, &p);
        assert!(agree(&pres, &m, 3));
    }
    let lin = load("linear_a4.uat");
    assert!(agree(&lin, &model(&lin, "z*y*x"), 2));
}

#[test]
fn random_presentations() {
    let mut compared = 0;
    for inst in random_instances(1000, 60) {
        if inst.ctx().variable_count() > 7 {
            continue;
        }
        for q in [2, 3] {
            assert!(agree(&inst.presentation, &inst.model, q), "{} q={q}\n{}", inst.label, inst.presentation.render());
        }
        compared += 1;
    }
    assert!(compared >= 30, "only {compared} instances compared");
}

#[test]
fn masts_with_relations_in_play() {
    // Masts whose varieties are cut out by at least one polynomial.
    let mut seen = 0;
    for inst in random_instances(5000, 200) {
        if inst.model.polynomials().is_empty() || inst.ctx().variable_count() > 7 {
            continue;
        }
        assert!(agree(&inst.presentation, &inst.model, 3), "{}\n{}", inst.label, inst.presentation.render());
        seen += 1;
    }
    assert!(seen >= 10, "only {seen} constrained instances");
}
