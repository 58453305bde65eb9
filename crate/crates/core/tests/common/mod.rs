#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uniserial::detour::MastContext;
use uniserial::rep::{realize, RepresentationPoint};
use uniserial::variety::{build_variety, sample_point, VarietyModel};
use uniserial::{parse_path, parse_presentation, AlgebraPresentation, Rational, Rationals};

pub fn data_path(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn load(name: &str) -> AlgebraPresentation {
    parse_presentation(&std::fs::read_to_string(data_path(name)).unwrap()).unwrap()
}

/// Two loops at one vertex with every path of length `l + 1` zero.
pub fn ex1(l: usize) -> AlgebraPresentation {
    parse_presentation(&format!("vertices v\narrow a : v -> v\narrow b : v -> v\nloewy {}\n", l + 1)).unwrap()
}

pub fn model(pres: &AlgebraPresentation, path: &str) -> VarietyModel {
    build_variety(pres, &parse_path(path, pres.quiver()).unwrap())
}

pub fn rats(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// A point of a patch together with its realization.
pub struct Instance {
    pub label: String,
    pub presentation: AlgebraPresentation,
    pub model: VarietyModel,
    pub k: Vec<Rational>,
    pub x: RepresentationPoint<Rational>,
}

impl Instance {
    pub fn new(label: String, presentation: AlgebraPresentation, model: VarietyModel, k: Vec<Rational>) -> Self {
        let x = realize(&Rationals, presentation.quiver(), model.context(), &k);
        Instance { label, presentation, model, k, x }
    }

    pub fn ctx(&self) -> &MastContext {
        self.model.context()
    }
}

/// Text of a random presentation: up to three vertices, up to four arrows,
/// a few monomial or binomial relations.
pub fn random_presentation_text(rng: &mut ChaCha8Rng, loewy: usize) -> String {
    let nv = rng.gen_range(1..=3usize);
    let na = rng.gen_range(nv.max(2)..=4usize);
    let mut text = String::from("vertices");
    for v in 0..nv {
        text.push_str(&format!(" v{v}"));
    }
    text.push('\n');
    let mut arrows = Vec::new();
    for a in 0..na {
        let (s, t) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        text.push_str(&format!("arrow c{a} : v{s} -> v{t}\n"));
        arrows.push((s, t));
    }
    text.push_str(&format!("loewy {loewy}\n"));
    // Random composable words, stored as arrow indices in application order.
    let word = |rng: &mut ChaCha8Rng, len: usize| -> Option<Vec<usize>> {
        let mut w = vec![rng.gen_range(0..na)];
        while w.len() < len {
            let at = arrows[*w.last().unwrap()].1;
            let next: Vec<usize> = (0..na).filter(|&b| arrows[b].0 == at).collect();
            w.push(*next.choose(rng)?);
        }
        Some(w)
    };
    let render = |w: &[usize]| w.iter().rev().map(|a| format!("c{a}")).collect::<Vec<_>>().join("*");
    for _ in 0..rng.gen_range(0..=2) {
        let len = rng.gen_range(2..=3);
        let Some(w) = word(rng, len) else { continue };
        let mut rel = render(&w);
        if rng.gen_bool(0.5) {
            // A second word with the same endpoints, when one turns up.
            let (s, t) = (arrows[w[0]].0, arrows[*w.last().unwrap()].1);
            for _ in 0..20 {
                let len2 = rng.gen_range(2..=4);
                if let Some(u) = word(rng, len2) {
                    if u != w && arrows[u[0]].0 == s && arrows[*u.last().unwrap()].1 == t {
                        let sign = if rng.gen_bool(0.5) { '+' } else { '-' };
                        rel = format!("{rel} {sign} {} {}", rng.gen_range(1..=2), render(&u));
                        break;
                    }
                }
            }
        }
        text.push_str(&format!("rel {rel}\n"));
    }
    text
}

/// A random (presentation, mast, point) triple with at most 8 variables and
/// mast length at most 6, or `None` when this seed gives nothing usable.
pub fn random_instance(seed: u64) -> Option<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = rng.gen_range(1..=6usize);
    let loewy = l + rng.gen_range(1..=2);
    let text = random_presentation_text(&mut rng, loewy);
    let pres = parse_presentation(&text).ok()?;
    let mut paths = pres.quiver().all_paths_of_length(l);
    paths.shuffle(&mut rng);
    for p in paths.into_iter().take(8) {
        let model = build_variety(&pres, &p);
        if model.is_empty() || model.context().variable_count() > 8 {
            continue;
        }
        if let Some(k) = sample_point(&model, seed) {
            let label = format!("seed {seed}: {}", pres.quiver().render_path(&p));
            return Some(Instance::new(label, pres, model, k.coords().to_vec()));
        }
    }
    None
}

/// The first `count` usable random instances starting from `seed`.
pub fn random_instances(seed: u64, count: usize) -> Vec<Instance> {
    (seed..).filter_map(random_instance).take(count).collect()
}

/// Points on the worked examples: every mast of the two-loop algebra for
/// `l <= 4`, the `k_m` points at `a*a*b`, and sampled points of both
/// length-6 patches over the five-arrow quiver.
pub fn worked_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for l in 1..=4 {
        let pres = ex1(l);
        for p in pres.quiver().all_paths_of_length(l) {
            let model = build_variety(&pres, &p);
            let label = format!("two loops l={l}: {}", pres.quiver().render_path(&p));
            let k = sample_point(&model, l as u64).unwrap().coords().to_vec();
            out.push(Instance::new(label, pres.clone(), model.clone(), k));
            out.push(Instance::new(format!("{} at 0", pres.quiver().render_path(&p)), pres.clone(), model.clone(), vec![
                Rational::from_integer(0.into());
                model.context().variable_count()
            ]));
        }
    }
    let pres = ex1(3);
    for m in 1..=3 {
        out.push(Instance::new(format!("k_{m}"), pres.clone(), model(&pres, "a*a*b"), k_m(&pres, m)));
    }
    for name in ["ex2a.uat", "ex2b.uat"] {
        let pres = load(name);
        let model = model(&pres, "a5*a4*a3*a1*a2*a1");
        for seed in 0..4 {
            let k = sample_point(&model, seed).unwrap().coords().to_vec();
            out.push(Instance::new(format!("{name} seed {seed}"), pres.clone(), model.clone(), k));
        }
    }
    out
}

/// The point of `V_{a*a*b}` whose only nonzero coordinate is `X(a,0,m) = 1`.
pub fn k_m(pres: &AlgebraPresentation, m: usize) -> Vec<Rational> {
    let model = model(pres, "a*a*b");
    let a = pres.quiver().arrow_id("a").unwrap();
    let mut k = rats(&vec![0; model.context().variable_count()]);
    k[model.context().variable_position(a, 0, m).unwrap()] = Rational::from_integer(1.into());
    k
}
