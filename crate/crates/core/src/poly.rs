//! Sparse commutative polynomials in the detour coordinates.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::Signed;

use crate::field::{render_rational_compact, Field, Rational, Ring};

/// Exponent vector, ordered graded-lexicographically with variable 0 largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// The single variable of a degree-one monomial.
    pub fn as_var(&self) -> Option<usize> {
        if self.degree() != 1 {
            return None;
        }
        self.0.iter().position(|e| *e == 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone> Poly<E> {
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Total degree at most one.
    pub fn is_affine(&self) -> bool {
        self.degree().is_none_or(|d| d <= 1)
    }

    pub fn leading(&self) -> Option<(&Monomial, &E)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Option<&E> {
        self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Maps coefficients into another ring, dropping those that become zero.
    /// `None` if any coefficient fails to map.
    pub fn try_map<T, F>(&self, is_zero: impl Fn(&T) -> bool, f: F) -> Option<Poly<T>>
    where
        F: Fn(&E) -> Option<T>,
    {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let c = f(c)?;
            if !is_zero(&c) {
                terms.insert(m.clone(), c);
            }
        }
        Some(Poly { terms })
    }
}

/// The polynomial ring over `field` in `nvars` variables.
#[derive(Clone, Debug)]
pub struct PolyRing<F> {
    field: F,
    nvars: usize,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, nvars: usize) -> Self {
        PolyRing { field, nvars }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        let mut terms = BTreeMap::new();
        if !self.field.is_zero(&c) {
            terms.insert(Monomial::one(self.nvars), c);
        }
        Poly { terms }
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(self.nvars, i), self.field.one());
        Poly { terms }
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Poly<F::Elem> {
        let mut out = Poly { terms: BTreeMap::new() };
        for (m, c) in terms {
            assert_eq!(m.0.len(), self.nvars, "monomial arity");
            self.add_term(&mut out, m, c);
        }
        out
    }

    fn add_term(&self, p: &mut Poly<F::Elem>, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match p.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    p.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                p.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &F::Elem, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Poly { terms: p.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(c, x))).collect() }
    }

    /// Value at a point given as one field element per variable.
    pub fn evaluate(&self, p: &Poly<F::Elem>, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &p.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = f.mul(&term, &point[i]);
                }
            }
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Replaces every variable `i` with `subs[i]` when present.
    pub fn substitute(&self, p: &Poly<F::Elem>, subs: &[Option<Poly<F::Elem>>]) -> Poly<F::Elem> {
        if subs.iter().all(Option::is_none) {
            return p.clone();
        }
        let mut out = self.zero();
        for (m, c) in &p.terms {
            let mut kept = Monomial::one(self.nvars);
            let mut term = self.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                match &subs[i] {
                    Some(s) => {
                        for _ in 0..e {
                            term = self.mul(&term, s);
                        }
                    }
                    None => kept.0[i] = e,
                }
            }
            let shifted = Poly { terms: term.terms.into_iter().map(|(mm, cc)| (mm.times(&kept), cc)).collect() };
            out = self.add(&out, &shifted);
        }
        out
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.leading() {
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(&inv, p)
            }
            None => p.clone(),
        }
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Poly<F::Elem> {
        Poly { terms: BTreeMap::new() }
    }
    fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }
    fn from_int(&self, n: i64) -> Poly<F::Elem> {
        self.constant(self.field.from_int(n))
    }
    fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut out, m.clone(), c.clone());
        }
        out
    }
    fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect() }
    }
    fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(&mut out, ma.times(mb), self.field.mul(ca, cb));
            }
        }
        out
    }
    fn is_zero(&self, a: &Poly<F::Elem>) -> bool {
        a.terms.is_empty()
    }
}

/// Renders a rational polynomial with the given variable names, leading
/// (graded-lex largest) term first, e.g. `X(a5,3,6) - 1`.
pub fn render_poly(p: &Poly<Rational>, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let mag = c.abs();
        let mut factors = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], e)),
            }
        }
        let body = if factors.is_empty() {
            render_rational_compact(&mag)
        } else if num::One::is_one(&mag) {
            factors.join("*")
        } else {
            format!("{}*{}", render_rational_compact(&mag), factors.join("*"))
        };
        match (k, c.is_negative()) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out
}
