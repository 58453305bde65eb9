//! Algebras `KQ/I` given by quiver and relations, and the text format they
//! are read from.
//!
//! ```text
//! # comments run to end of line
//! vertices 1 2
//! arrow a1 : 1 -> 2
//! arrow a2 : 2 -> 1
//! loewy 4
//! rel a2*a1*a2 - 3/2 a2*a1*a2*a1*a2
//! ```
//!
//! `*` composes right to left: `a2*a1` means "a2 after a1", so `a1` is
//! applied first. This matches product notation in the path algebra and is
//! the opposite of most graph notations.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::detour::{MastContext, SimpleSequence};
use crate::error::Error;
use crate::field::{parse_rational, render_rational_compact, Rational};
use crate::quiver::{Path, Quiver, VertexId};

/// A nonzero linear combination of paths sharing source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Rational, Path)>,
}

impl Relation {
    /// Builds a relation, merging repeated paths and dropping zero terms.
    /// Fails if the result is zero or the endpoints are not uniform.
    pub fn new(quiver: &Quiver, terms: Vec<(Rational, Path)>) -> Result<Self, Error> {
        let terms = merge_terms(quiver, terms);
        let Some((_, first)) = terms.first() else {
            return Err(Error::invalid("relation is the zero combination"));
        };
        let (s, t) = (first.source(), first.target());
        if terms.iter().any(|(_, p)| p.source() != s || p.target() != t) {
            return Err(Error::invalid("relation terms do not share endpoints"));
        }
        Ok(Relation { terms })
    }

    pub fn terms(&self) -> &[(Rational, Path)] {
        &self.terms
    }

    pub fn source(&self) -> VertexId {
        self.terms[0].1.source()
    }

    pub fn target(&self) -> VertexId {
        self.terms[0].1.target()
    }

    pub fn render(&self, quiver: &Quiver) -> String {
        let mut out = String::new();
        for (k, (c, p)) in self.terms.iter().enumerate() {
            let path = quiver.render_path(p);
            let mag = c.abs();
            let coeff = if mag.is_one() { String::new() } else { format!("{} ", render_rational_compact(&mag)) };
            match (k, c.is_negative()) {
                (0, false) => out.push_str(&format!("{coeff}{path}")),
                (0, true) => out.push_str(&format!("-{coeff}{path}")),
                (_, false) => out.push_str(&format!(" + {coeff}{path}")),
                (_, true) => out.push_str(&format!(" - {coeff}{path}")),
            }
        }
        out
    }
}

/// Sums coefficients of equal paths and drops zeros, in path order.
fn merge_terms(quiver: &Quiver, terms: Vec<(Rational, Path)>) -> Vec<(Rational, Path)> {
    let mut merged: BTreeMap<(usize, Vec<String>), (Rational, Path)> = BTreeMap::new();
    for (c, p) in terms {
        let key = sort_key(quiver, &p);
        let entry = merged.entry(key).or_insert_with(|| (Rational::zero(), p));
        entry.0 += c;
    }
    merged.into_values().filter(|(c, _)| !c.is_zero()).collect()
}

fn sort_key(quiver: &Quiver, p: &Path) -> (usize, Vec<String>) {
    let (len, names) = p.sort_key(quiver);
    (len, names.into_iter().map(str::to_string).collect())
}

/// `KQ/I` with all paths of length `>= loewy_bound` in `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    quiver: Quiver,
    relations: Vec<Relation>,
    loewy_bound: usize,
}

impl AlgebraPresentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, loewy_bound: usize) -> Result<Self, Error> {
        if loewy_bound == 0 {
            return Err(Error::invalid("loewy bound must be at least 1"));
        }
        for r in &relations {
            for (_, p) in r.terms() {
                if p.len() < 2 || p.len() >= loewy_bound {
                    return Err(Error::invalid(format!(
                        "relation monomial `{}` must have length in [2, {})",
                        quiver.render_path(p),
                        loewy_bound
                    )));
                }
            }
        }
        Ok(AlgebraPresentation { quiver, relations, loewy_bound })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn loewy_bound(&self) -> usize {
        self.loewy_bound
    }

    /// Renders back into the input format; `parse_presentation` inverts it.
    pub fn render(&self) -> String {
        let q = &self.quiver;
        let mut out = String::new();
        let names: Vec<&str> = q.vertex_ids().map(|v| q.vertex_name(v)).collect();
        out.push_str(&format!("vertices {}\n", names.join(" ")));
        for a in q.arrows() {
            out.push_str(&format!("arrow {} : {} -> {}\n", a.name, q.vertex_name(a.source), q.vertex_name(a.target)));
        }
        out.push_str(&format!("loewy {}\n", self.loewy_bound));
        for r in &self.relations {
            out.push_str(&format!("rel {}\n", r.render(q)));
        }
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses the presentation format. Relations with mixed endpoints are split
/// into their `e_t rho e_s` components; monomials at or above the Loewy bound
/// are dropped since they already lie in the ideal.
pub fn parse_presentation(text: &str) -> Result<AlgebraPresentation, Error> {
    let mut quiver = Quiver::empty();
    let mut loewy: Option<usize> = None;
    let mut rel_lines = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "vertices" => {
                if rest.is_empty() {
                    return Err(Error::parse(line_no, "`vertices` needs at least one identifier"));
                }
                for v in rest.split_whitespace() {
                    quiver.add_vertex(v).map_err(|e| Error::parse(line_no, e.to_string()))?;
                }
            }
            "arrow" => {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line_no, "expected `arrow <name> : <src> -> <dst>`"))?;
                let (src, dst) = ends
                    .split_once("->")
                    .ok_or_else(|| Error::parse(line_no, "expected `->` between arrow endpoints"))?;
                let (name, src, dst) = (name.trim(), src.trim(), dst.trim());
                if !is_identifier(name) {
                    return Err(Error::parse(line_no, format!("invalid arrow name `{name}`")));
                }
                if src.is_empty() || dst.is_empty() || src.contains(char::is_whitespace) || dst.contains(char::is_whitespace) {
                    return Err(Error::parse(line_no, "arrow endpoints must be single vertex identifiers"));
                }
                quiver.add_arrow(name, src, dst).map_err(|e| Error::parse(line_no, e.to_string()))?;
            }
            "loewy" => {
                if loewy.is_some() {
                    return Err(Error::parse(line_no, "duplicate `loewy` line"));
                }
                let l: usize = rest
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("invalid loewy bound `{rest}`")))?;
                if l == 0 {
                    return Err(Error::parse(line_no, "loewy bound must be at least 1"));
                }
                loewy = Some(l);
            }
            "rel" => rel_lines.push((line_no, rest.to_string())),
            other => return Err(Error::parse(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let loewy = loewy.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `loewy` line"))?;
    let mut relations = Vec::new();
    for (line_no, body) in rel_lines {
        let terms = parse_combination(&quiver, &body).map_err(|m| Error::parse(line_no, m))?;
        for (_, p) in &terms {
            if p.len() < 2 {
                return Err(Error::parse(
                    line_no,
                    format!("relation monomial `{}` has length < 2", quiver.render_path(p)),
                ));
            }
        }
        if merge_terms(&quiver, terms.clone()).is_empty() {
            return Err(Error::parse(line_no, "relation is the zero combination"));
        }

        let mut groups: BTreeMap<(VertexId, VertexId), Vec<(Rational, Path)>> = BTreeMap::new();
        for (c, p) in terms {
            if p.len() >= loewy {
                continue;
            }
            groups.entry((p.target(), p.source())).or_default().push((c, p));
        }
        for (_, group) in groups {
            // a component may still cancel to zero; it is then no constraint
            if let Ok(r) = Relation::new(&quiver, group) {
                relations.push(r);
            }
        }
    }
    AlgebraPresentation::new(quiver, relations, loewy)
}

#[derive(Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Number(String),
    Name(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push(Token::Plus);
            i += 1;
        } else if c == '-' {
            out.push(Token::Minus);
            i += 1;
        } else if c == '*' {
            out.push(Token::Star);
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            out.push(Token::Number(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token::Name(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

/// `[+-] [coeff [*]] name (* name)* ((+|-) ...)*`
fn parse_combination(quiver: &Quiver, text: &str) -> Result<Vec<(Rational, Path)>, String> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let mut terms = Vec::new();
    if tokens.is_empty() {
        return Err("empty relation".into());
    }
    loop {
        let mut sign = Rational::one();
        match tokens.get(pos) {
            Some(Token::Plus) => pos += 1,
            Some(Token::Minus) => {
                sign = -sign;
                pos += 1;
            }
            _ if terms.is_empty() => {}
            Some(t) => return Err(format!("expected `+` or `-` between terms, found {t:?}")),
            None => break,
        }
        let mut coeff = Rational::one();
        if let Some(Token::Number(n)) = tokens.get(pos) {
            coeff = parse_rational(n).ok_or_else(|| format!("invalid coefficient `{n}`"))?;
            pos += 1;
            if tokens.get(pos) == Some(&Token::Star) {
                pos += 1;
            }
        }
        let mut names = Vec::new();
        loop {
            match tokens.get(pos) {
                Some(Token::Name(n)) => {
                    names.push(n.clone());
                    pos += 1;
                }
                other => return Err(format!("expected an arrow name, found {other:?}")),
            }
            if tokens.get(pos) == Some(&Token::Star) {
                pos += 1;
            } else {
                break;
            }
        }
        let path = product_path(quiver, &names)?;
        terms.push((sign * coeff, path));
        if pos == tokens.len() {
            break;
        }
    }
    Ok(terms)
}

/// `names` in product order (last applied first).
fn product_path(quiver: &Quiver, names: &[String]) -> Result<Path, String> {
    let mut ids = Vec::with_capacity(names.len());
    for n in names.iter().rev() {
        ids.push(quiver.arrow_id(n).map_err(|e| e.to_string())?);
    }
    quiver.path(&ids).map_err(|_| format!("non-composable monomial `{}`", names.join("*")))
}

/// Parses `a2*a1` (product order) or `e_v` for a trivial path.
pub fn parse_path(text: &str, quiver: &Quiver) -> Result<Path, Error> {
    let text = text.trim();
    if let Some(v) = text.strip_prefix("e_") {
        if let Ok(v) = quiver.vertex(v) {
            return Ok(quiver.trivial(v));
        }
    }
    let names: Vec<String> = text.split('*').map(|s| s.trim().to_string()).collect();
    if names.iter().any(|n| n.is_empty()) {
        return Err(Error::parse(1, format!("malformed path `{text}`")));
    }
    for n in &names {
        quiver.arrow_id(n)?;
    }
    product_path(quiver, &names).map_err(|m| Error::parse(1, m))
}

/// Parses whitespace-separated vertex names.
pub fn parse_sequence(text: &str, quiver: &Quiver) -> Result<SimpleSequence, Error> {
    let vertices = text.split_whitespace().map(|v| quiver.vertex(v)).collect::<Result<Vec<_>, _>>()?;
    SimpleSequence::new(vertices)
}

/// Parses `arrow,m,i=value;...` into a full coordinate vector (unmentioned
/// coordinates are zero).
pub fn parse_point(text: &str, quiver: &Quiver, ctx: &MastContext) -> Result<Vec<Rational>, Error> {
    let mut coords = vec![Rational::zero(); ctx.variable_count()];
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Error::parse(1, format!("expected `arrow,m,i=value`, got `{item}`")))?;
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        let [arrow, m, i] = parts.as_slice() else {
            return Err(Error::parse(1, format!("coordinate key `{key}` needs three fields")));
        };
        let arrow = quiver.arrow_id(arrow)?;
        let m: usize = m.parse().map_err(|_| Error::parse(1, format!("bad subpath index `{m}`")))?;
        let i: usize = i.parse().map_err(|_| Error::parse(1, format!("bad target index `{i}`")))?;
        let pos = ctx
            .variable_position(arrow, m, i)
            .ok_or_else(|| Error::invalid(format!("`{key}` is not a coordinate of this mast")))?;
        coords[pos] = parse_rational(value).ok_or_else(|| Error::parse(1, format!("bad rational `{value}`")))?;
    }
    Ok(coords)
}
