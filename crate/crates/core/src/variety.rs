//! Defining polynomials of the affine variety `V_p` of uniserial modules with
//! mast `p`, obtained by rewriting left-ideal generators to normal form.
//!
//! Elements of `KQ e(0)` with polynomial coefficients are rewritten to
//! `sum_i tau_i p_i`, one monomial `f v` at a time:
//!
//! * `v = p_r`: contributes `f` to `tau_r`.
//! * `v = w a p_m` with `p_m` the longest right-subpath prefix of `v` and
//!   `(a, p_m)` a detour: becomes `sum_{i in I(a, p_m)} f X(a,m,i) w p_i`.
//! * `v = w a p_m` with `(a, p_m)` not a detour: zero. Then `a` ends at a
//!   vertex that no `p_s`, `s > m`, ends at, and since the identity is the
//!   leftmost embedding of `p_m`'s word, `a p_m` is not a route.
//! * `v` not a route (in particular `len(v) > l`): zero.
//!
//! Each detour step shortens the part of the path outside the matched prefix
//! by one arrow, so rewriting terminates.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num::bigint::BigInt;
use num::Zero;

use crate::detour::{MastContext, VariableIndex};
use crate::error::Error;
use crate::field::{Field, PrimeField, Rational, Rationals, Ring};
use crate::linalg::{rref, Matrix};
use crate::par::{self, Execution};
use crate::poly::{render_poly, Monomial, Poly, PolyRing};
use crate::presentation::AlgebraPresentation;
use crate::quiver::{Path, Quiver};

pub type QPoly = Poly<Rational>;

/// A finite sum of `(polynomial, path)` pairs, all paths starting at `e(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedElement {
    terms: Vec<(QPoly, Path)>,
}

impl MixedElement {
    /// Merges repeated paths and drops zero coefficients.
    pub fn new(ring: &PolyRing<Rationals>, terms: Vec<(QPoly, Path)>) -> Self {
        let mut merged: BTreeMap<Path, QPoly> = BTreeMap::new();
        for (f, v) in terms {
            let entry = merged.entry(v).or_insert_with(|| ring.zero());
            *entry = ring.add(entry, &f);
        }
        MixedElement { terms: merged.into_iter().filter(|(_, f)| !f.is_zero()).map(|(v, f)| (f, v)).collect() }
    }

    pub fn terms(&self) -> &[(QPoly, Path)] {
        &self.terms
    }
}

/// Where a defining polynomial came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// `tau_index(relation * route)`.
    Relation { relation: usize, route: Path, index: usize },
    /// The mast itself is at or beyond the Loewy bound.
    LoewyBound,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Classification<E> {
    Empty,
    /// `solved` lists `(variable, affine expression in the free variables)`.
    AffineSpace { dimension: usize, solved: Vec<(usize, Poly<E>)> },
    /// Linear elimination stalled on `remaining`, which only involve free variables.
    Residual { solved: Vec<(usize, Poly<E>)>, remaining: Vec<Poly<E>> },
}

impl<E> Classification<E> {
    pub fn status(&self) -> &'static str {
        match self {
            Classification::Empty => "empty",
            Classification::AffineSpace { .. } => "affine_space",
            Classification::Residual { .. } => "residual",
        }
    }

    pub fn solved(&self) -> &[(usize, Poly<E>)] {
        match self {
            Classification::Empty => &[],
            Classification::AffineSpace { solved, .. } | Classification::Residual { solved, .. } => solved,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VarietyModel {
    ctx: MastContext,
    ring: PolyRing<Rationals>,
    polynomials: Vec<(QPoly, Provenance)>,
    classification: Classification<Rational>,
}

impl VarietyModel {
    pub fn context(&self) -> &MastContext {
        &self.ctx
    }

    pub fn ring(&self) -> &PolyRing<Rationals> {
        &self.ring
    }

    pub fn polynomials(&self) -> &[(QPoly, Provenance)] {
        &self.polynomials
    }

    pub fn classification(&self) -> &Classification<Rational> {
        &self.classification
    }

    pub fn dimension(&self) -> Option<usize> {
        match self.classification {
            Classification::AffineSpace { dimension, .. } => Some(dimension),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.classification, Classification::Empty)
    }

    pub fn variable_names(&self, quiver: &Quiver) -> Vec<String> {
        variable_names(quiver, self.ctx.variables())
    }

    /// Distinct defining polynomials, made monic and rendered in graded-lex order.
    pub fn render_polynomials(&self, quiver: &Quiver) -> Vec<String> {
        let names = self.variable_names(quiver);
        let mut out: Vec<String> = Vec::new();
        for (p, _) in &self.polynomials {
            let s = render_poly(&self.ring.monic(p), &names);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    pub fn render_solved(&self, quiver: &Quiver) -> Vec<String> {
        let names = self.variable_names(quiver);
        self.classification
            .solved()
            .iter()
            .map(|(v, e)| format!("{} = {}", names[*v], render_poly(e, &names)))
            .collect()
    }

    /// Whether every defining polynomial vanishes at `point`.
    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.ctx.variable_count()
            && self.polynomials.iter().all(|(p, _)| self.ring.evaluate(p, point).is_zero())
    }

    /// Indices of the variables not solved for.
    pub fn free_variables(&self) -> Vec<usize> {
        free_variables(self.ctx.variable_count(), self.classification.solved())
    }
}

pub fn variable_names(quiver: &Quiver, vars: &[VariableIndex]) -> Vec<String> {
    vars.iter().map(|v| v.render(quiver)).collect()
}

fn free_variables<E>(n: usize, solved: &[(usize, Poly<E>)]) -> Vec<usize> {
    (0..n).filter(|v| !solved.iter().any(|(s, _)| s == v)).collect()
}

/// A point of `V_p`, checked against the defining polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct UniserialPoint {
    coords: Vec<Rational>,
}

impl UniserialPoint {
    pub fn new(model: &VarietyModel, coords: Vec<Rational>) -> Result<Self, Error> {
        if coords.len() != model.context().variable_count() {
            return Err(Error::invalid("coordinate count does not match the mast"));
        }
        if !model.contains(&coords) {
            return Err(Error::domain("point does not lie on the variety"));
        }
        Ok(UniserialPoint { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

/// Normal form coefficients `(tau_0, ..., tau_l)` of `z`.
pub fn rewrite(quiver: &Quiver, ctx: &MastContext, ring: &PolyRing<Rationals>, z: &MixedElement) -> Vec<QPoly> {
    let mut tau = vec![ring.zero(); ctx.len() + 1];
    for (f, v) in z.terms() {
        reduce_monomial(quiver, ctx, ring, f.clone(), v, &mut tau);
    }
    tau
}

fn reduce_monomial(
    quiver: &Quiver,
    ctx: &MastContext,
    ring: &PolyRing<Rationals>,
    f: QPoly,
    v: &Path,
    tau: &mut [QPoly],
) {
    if !ctx.is_route(quiver, v) {
        return;
    }
    let m = ctx.longest_subpath_prefix(v);
    if m == v.len() {
        tau[m] = ring.add(&tau[m], &f);
        return;
    }
    let arrow = v.arrows()[m];
    let Some(targets) = ctx.detour_variables(arrow, m) else {
        // dead end: a p_m is a non-route
        return;
    };
    let w = v.suffix_after(quiver, m + 1);
    for &(i, var) in targets {
        let next = quiver.compose(&w, ctx.right_subpath(i)).expect("detour re-enters at p_i");
        reduce_monomial(quiver, ctx, ring, ring.mul(&f, &ring.var(var)), &next, tau);
    }
}

/// `relation * route` for every relation and every route on `p` ending at
/// the relation's source, keeping only products with a surviving monomial.
pub fn left_ideal_generators(
    presentation: &AlgebraPresentation,
    ctx: &MastContext,
    ring: &PolyRing<Rationals>,
) -> Vec<(MixedElement, Provenance)> {
    let quiver = presentation.quiver();
    let routes = ctx.routes(quiver);
    let mut out = Vec::new();
    for (j, rel) in presentation.relations().iter().enumerate() {
        for q in routes.iter().filter(|q| q.target() == rel.source()) {
            let terms: Vec<(QPoly, Path)> = rel
                .terms()
                .iter()
                .filter_map(|(c, path)| quiver.compose(path, q).map(|v| (c, v)))
                .filter(|(_, v)| v.len() <= ctx.len() && ctx.is_route(quiver, v))
                .map(|(c, v)| (ring.constant(c.clone()), v))
                .collect();
            if terms.is_empty() {
                continue;
            }
            out.push((MixedElement::new(ring, terms), Provenance::Relation { relation: j, route: q.clone(), index: 0 }));
        }
    }
    out
}

pub fn build_variety(presentation: &AlgebraPresentation, p: &Path) -> VarietyModel {
    let quiver = presentation.quiver();
    let ctx = MastContext::new(quiver, p);
    let ring = PolyRing::new(Rationals, ctx.variable_count());
    if p.len() >= presentation.loewy_bound() {
        return VarietyModel {
            polynomials: vec![(ring.one(), Provenance::LoewyBound)],
            classification: Classification::Empty,
            ctx,
            ring,
        };
    }
    let mut polynomials = Vec::new();
    for (z, prov) in left_ideal_generators(presentation, &ctx, &ring) {
        let tau = rewrite(quiver, &ctx, &ring, &z);
        for (i, t) in tau.into_iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let prov = match &prov {
                Provenance::Relation { relation, route, .. } => {
                    Provenance::Relation { relation: *relation, route: route.clone(), index: i }
                }
                Provenance::LoewyBound => Provenance::LoewyBound,
            };
            polynomials.push((t, prov));
        }
    }
    let polys: Vec<QPoly> = polynomials.iter().map(|(p, _)| p.clone()).collect();
    let classification = simplify_system(&ring, &polys);
    VarietyModel { ctx, ring, polynomials, classification }
}

fn canonical_order<F: Field>(ring: &PolyRing<F>, polys: Vec<Poly<F::Elem>>) -> Vec<Poly<F::Elem>> {
    let mut out: Vec<Poly<F::Elem>> = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let p = ring.monic(&p);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort_by_cached_key(|p| {
        let key: Vec<(Monomial, String)> = p.terms().rev().map(|(m, c)| (m.clone(), format!("{c:?}"))).collect();
        std::cmp::Reverse(key)
    });
    out
}

/// Repeated linear elimination: solve the affine-linear members, substitute
/// into the rest, and repeat until nothing linear is left.
pub fn simplify_system<F: Field>(ring: &PolyRing<F>, polys: &[Poly<F::Elem>]) -> Classification<F::Elem> {
    let n = ring.nvars();
    let field = ring.field();
    let mut subs: Vec<Option<Poly<F::Elem>>> = vec![None; n];
    let mut current = canonical_order(ring, polys.to_vec());
    loop {
        if current.iter().any(|p| p.degree() == Some(0)) {
            return Classification::Empty;
        }
        let (linear, rest): (Vec<_>, Vec<_>) = current.into_iter().partition(|p| p.is_affine());
        if linear.is_empty() {
            current = rest;
            break;
        }
        let mut m = Matrix::zero(field, linear.len(), n + 1);
        for (r, p) in linear.iter().enumerate() {
            for (mono, c) in p.terms() {
                let col = mono.as_var().unwrap_or(n);
                m[(r, col)] = c.clone();
            }
        }
        let pivots = rref(field, &mut m);
        if pivots.last() == Some(&n) {
            return Classification::Empty;
        }
        let mut fresh: Vec<Option<Poly<F::Elem>>> = vec![None; n];
        for (r, &v) in pivots.iter().enumerate() {
            let mut terms = Vec::new();
            for j in (0..n).filter(|&j| j != v) {
                if !field.is_zero(&m[(r, j)]) {
                    terms.push((Monomial::var(n, j), field.neg(&m[(r, j)])));
                }
            }
            terms.push((Monomial::one(n), field.neg(&m[(r, n)])));
            fresh[v] = Some(ring.from_terms(terms));
        }
        for s in subs.iter_mut().flatten() {
            *s = ring.substitute(s, &fresh);
        }
        for (v, e) in fresh.into_iter().enumerate() {
            if e.is_some() {
                subs[v] = e;
            }
        }
        current = canonical_order(ring, rest.iter().map(|p| ring.substitute(p, &subs)).collect());
    }
    let solved: Vec<(usize, Poly<F::Elem>)> =
        subs.into_iter().enumerate().filter_map(|(v, e)| e.map(|e| (v, e))).collect();
    if current.is_empty() {
        Classification::AffineSpace { dimension: n - solved.len(), solved }
    } else {
        Classification::Residual { solved, remaining: current }
    }
}

/// Fills in solved variables from the free ones (which must already be set).
fn complete_point<F: Field>(ring: &PolyRing<F>, solved: &[(usize, Poly<F::Elem>)], point: &mut [F::Elem]) {
    for (v, e) in solved {
        point[*v] = ring.evaluate(e, point);
    }
}

const SAMPLE_NUMERATOR_BOUND: i64 = 1_000_000;
const SAMPLE_DENOMINATOR_BOUND: i64 = 1_000;
const RESIDUAL_SEARCH_LIMIT: usize = 20_000;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(-SAMPLE_NUMERATOR_BOUND..=SAMPLE_NUMERATOR_BOUND);
    let d = rng.gen_range(1..=SAMPLE_DENOMINATOR_BOUND);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A rational point of the variety. Free coordinates of an affine space are
/// distinct seeded random rationals; residual systems are searched on a small
/// integer grid, with `None` when nothing is found.
pub fn sample_point(model: &VarietyModel, seed: u64) -> Option<UniserialPoint> {
    let ring = model.ring();
    let n = model.context().variable_count();
    let mut point = vec![Rational::zero(); n];
    let free = model.free_variables();
    match model.classification() {
        Classification::Empty => return None,
        Classification::AffineSpace { solved, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut used: Vec<Rational> = Vec::new();
            for &v in &free {
                let value = loop {
                    let r = random_rational(&mut rng);
                    if !used.contains(&r) {
                        break r;
                    }
                };
                used.push(value.clone());
                point[v] = value;
            }
            complete_point(ring, solved, &mut point);
        }
        Classification::Residual { solved, remaining } => {
            let grid: Vec<i64> = vec![0, 1, -1, 2, -2, 3, -3];
            let found = search_grid(free.len(), grid.len(), RESIDUAL_SEARCH_LIMIT, |digits| {
                for (slot, &v) in free.iter().enumerate() {
                    point[v] = Rational::from_integer(BigInt::from(grid[digits[slot]]));
                }
                remaining.iter().all(|p| ring.evaluate(p, &point).is_zero())
            });
            if !found {
                return None;
            }
            complete_point(ring, solved, &mut point);
        }
    }
    UniserialPoint::new(model, point).ok()
}

/// Visits digit vectors over `base` in odometer order, up to `limit` of them,
/// until `accept` returns true.
fn search_grid(len: usize, base: usize, limit: usize, mut accept: impl FnMut(&[usize]) -> bool) -> bool {
    let mut digits = vec![0usize; len];
    for _ in 0..limit {
        if accept(&digits) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == len {
                return false;
            }
            digits[k] += 1;
            if digits[k] < base {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
    false
}

/// Largest ambient dimension accepted by point counting.
pub const COUNT_MAX_VARIABLES: usize = 20;
/// Largest number of free-coordinate assignments enumerated.
pub const COUNT_MAX_ASSIGNMENTS: u64 = 10_000_000;

/// The defining polynomials reduced mod `q`, classified over `F_q`.
pub struct ModularSystem {
    pub field: PrimeField,
    pub ring: PolyRing<PrimeField>,
    pub polynomials: Vec<Poly<u64>>,
    pub classification: Classification<u64>,
}

pub fn reduce_mod(model: &VarietyModel, q: u64) -> Result<ModularSystem, Error> {
    let field = PrimeField::new(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime <= 2^31")))?;
    let ring = PolyRing::new(field, model.context().variable_count());
    let mut polynomials = Vec::new();
    for (p, _) in model.polynomials() {
        let r = p.try_map(|c: &u64| *c == 0, |c| field.reduce(c)).ok_or_else(|| {
            Error::Guard(format!("a defining polynomial has a coefficient whose denominator vanishes mod {q}"))
        })?;
        polynomials.push(r);
    }
    let classification = simplify_system(&ring, &polynomials);
    Ok(ModularSystem { field, ring, polynomials, classification })
}

impl ModularSystem {
    fn free_variables(&self) -> Vec<usize> {
        free_variables(self.ring.nvars(), self.classification.solved())
    }

    /// Free coordinates split into those occurring in some polynomial or
    /// solved expression, and the rest. The guard applies to all of them.
    fn assignments(&self) -> Result<(Vec<usize>, u32, u64), Error> {
        let free = self.free_variables();
        let q = self.field.modulus();
        let total = (q as u128).checked_pow(free.len() as u32).filter(|t| *t <= COUNT_MAX_ASSIGNMENTS as u128);
        if total.is_none() {
            return Err(Error::Guard(format!(
                "{q}^{} free-coordinate assignments exceed the limit of {COUNT_MAX_ASSIGNMENTS}",
                free.len()
            )));
        }
        let occurs = |v: usize| {
            self.polynomials.iter().any(|p| p.uses_var(v))
                || self.classification.solved().iter().any(|(_, e)| e.uses_var(v))
        };
        let (involved, idle): (Vec<usize>, Vec<usize>) = free.into_iter().partition(|v| occurs(*v));
        Ok((involved.clone(), idle.len() as u32, q.pow(involved.len() as u32)))
    }

    /// Decodes assignment `index` and fills in solved coordinates.
    fn point_at(&self, free: &[usize], index: u64, point: &mut [u64]) {
        let q = self.field.modulus();
        let mut rest = index;
        for &v in free {
            point[v] = rest % q;
            rest /= q;
        }
        complete_point(&self.ring, self.classification.solved(), point);
    }

    fn satisfies_all(&self, point: &[u64]) -> bool {
        self.polynomials.iter().all(|p| self.ring.evaluate(p, point) == 0)
    }
}

/// Exact `|V(F_q)|`: enumerate free coordinates after linear solving over
/// `F_q`, and test every original polynomial at the completed point.
/// Coordinates that occur nowhere contribute a factor of `q` each.
pub fn count_points(model: &VarietyModel, q: u64, exec: Execution) -> Result<u64, Error> {
    let n = model.context().variable_count();
    if n > COUNT_MAX_VARIABLES {
        return Err(Error::Guard(format!("{n} variables exceed the point-counting limit of {COUNT_MAX_VARIABLES}")));
    }
    let sys = reduce_mod(model, q)?;
    if matches!(sys.classification, Classification::Empty) {
        return Ok(0);
    }
    let (free, idle, total) = sys.assignments()?;
    let block = (total / 64).max(1024);
    let scale = q.pow(idle);
    Ok(scale * par::sum_blocks(exec, total, block, |start, end| {
        let mut point = vec![0u64; n];
        (start..end)
            .filter(|&idx| {
                sys.point_at(&free, idx, &mut point);
                sys.satisfies_all(&point)
            })
            .count() as u64
    }))
}

/// First point of `V(F_q)` in enumeration order, if any.
pub fn find_point_mod(model: &VarietyModel, q: u64) -> Result<Option<Vec<u64>>, Error> {
    let sys = reduce_mod(model, q)?;
    if matches!(sys.classification, Classification::Empty) {
        return Ok(None);
    }
    let (free, _, total) = sys.assignments()?;
    let mut point = vec![0u64; model.context().variable_count()];
    for idx in 0..total {
        sys.point_at(&free, idx, &mut point);
        if sys.satisfies_all(&point) {
            return Ok(Some(point));
        }
    }
    Ok(None)
}
