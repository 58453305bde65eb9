//! Quivers and paths.
//!
//! A [`Path`] lists its arrows in application order: `arrows[0]` is applied
//! first. In product notation the path `(a1, a2, a3)` is written `a3 a2 a1`
//! ("a3 after a2 after a1"), and that is also how paths are rendered.

use std::collections::HashMap;
use std::fmt;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
    /// Outgoing arrows per vertex, sorted by arrow name.
    outgoing: Vec<Vec<ArrowId>>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self, Error> {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
            outgoing: Vec::new(),
        };
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name.as_ref(), s.as_ref(), t.as_ref())?;
        }
        Ok(q)
    }

    pub(crate) fn empty() -> Self {
        Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
            outgoing: Vec::new(),
        }
    }

    pub(crate) fn add_vertex(&mut self, name: &str) -> Result<VertexId, Error> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::invalid(format!("duplicate vertex `{name}`")));
        }
        let id = VertexId(self.vertices.len());
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        self.outgoing.push(Vec::new());
        Ok(id)
    }

    pub(crate) fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<ArrowId, Error> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::invalid(format!("duplicate arrow `{name}`")));
        }
        let source = self.vertex(source)?;
        let target = self.vertex(target)?;
        let id = ArrowId(self.arrows.len());
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        self.arrow_index.insert(name.to_string(), id);
        let out = &mut self.outgoing[source.0];
        out.push(id);
        let arrows = &self.arrows;
        out.sort_by(|a, b| arrows[a.0].name.cmp(&arrows[b.0].name));
        Ok(id)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, Error> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::invalid(format!("unknown vertex `{name}`")))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId, Error> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::invalid(format!("unknown arrow `{name}`")))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    /// Arrows leaving `v`, sorted by name.
    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.0]
    }

    /// Arrows from `s` to `t`, sorted by name.
    pub fn parallel_arrows(&self, s: VertexId, t: VertexId) -> Vec<ArrowId> {
        self.outgoing(s).iter().copied().filter(|a| self.arrow(*a).target == t).collect()
    }

    pub fn trivial(&self, v: VertexId) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    /// Path from arrows in application order; fails on a broken chain or an empty list.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path, Error> {
        let first = arrows.first().ok_or_else(|| Error::invalid("empty arrow list"))?;
        let mut path = self.trivial(self.arrow(*first).source);
        for &a in arrows {
            path = self
                .append(&path, a)
                .ok_or_else(|| Error::invalid(format!("arrow `{}` does not compose", self.arrow(a).name)))?;
        }
        Ok(path)
    }

    /// `a` after `p`, if composable.
    pub fn append(&self, p: &Path, a: ArrowId) -> Option<Path> {
        let arrow = self.arrow(a);
        if arrow.source != p.target {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.push(a);
        Some(Path { source: p.source, target: arrow.target, arrows })
    }

    /// "q after p". `None` stands for the zero product in the path algebra.
    pub fn compose(&self, q: &Path, p: &Path) -> Option<Path> {
        if q.source != p.target {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { source: p.source, target: q.target, arrows })
    }

    /// All paths starting at `v` of length at most `max_len`, ordered by
    /// length and then by arrow names in application order.
    pub fn paths_from(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![self.trivial(v)];
        let mut frontier = vec![self.trivial(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &a in self.outgoing(p.target) {
                    next.push(self.append(p, a).expect("outgoing arrow composes"));
                }
            }
            // frontier is already sorted, and outgoing lists are sorted by name,
            // so `next` comes out in lexicographic order.
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// All paths of length exactly `len` starting anywhere.
    pub fn all_paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        for v in self.vertex_ids() {
            out.extend(self.paths_from(v, len).into_iter().filter(|p| p.len() == len));
        }
        out
    }

    /// Renders a path in product notation, e.g. `a2*a1`; trivial paths as `e_v`.
    pub fn render_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertex_name(p.source));
        }
        p.arrows
            .iter()
            .rev()
            .map(|a| self.arrow(*a).name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn display<'a>(&'a self, p: &'a Path) -> PathDisplay<'a> {
        PathDisplay { quiver: self, path: p }
    }
}

pub struct PathDisplay<'a> {
    quiver: &'a Quiver,
    path: &'a Path,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.quiver.render_path(self.path))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// Arrows in application order.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// The vertices visited, `len() + 1` of them.
    pub fn vertex_word(&self, quiver: &Quiver) -> Vec<VertexId> {
        let mut word = Vec::with_capacity(self.arrows.len() + 1);
        word.push(self.source);
        word.extend(self.arrows.iter().map(|a| quiver.arrow(*a).target));
        word
    }

    /// The right subpath of length `i`, i.e. the first `i` arrows applied.
    pub fn right_subpath(&self, quiver: &Quiver, i: usize) -> Path {
        if i == 0 {
            return quiver.trivial(self.source);
        }
        let arrows = self.arrows[..i].to_vec();
        let target = quiver.arrow(arrows[i - 1]).target;
        Path { source: self.source, target, arrows }
    }

    /// The part applied after the first `i` arrows, so that
    /// `self = compose(suffix_after(i), right_subpath(i))`.
    pub fn suffix_after(&self, quiver: &Quiver, i: usize) -> Path {
        if i == self.arrows.len() {
            return quiver.trivial(self.target);
        }
        let arrows = self.arrows[i..].to_vec();
        let source = quiver.arrow(arrows[0]).source;
        Path { source, target: self.target, arrows }
    }

    /// Order key used for canonical listings: length, then arrow names.
    pub fn sort_key<'a>(&self, quiver: &'a Quiver) -> (usize, Vec<&'a str>) {
        (self.len(), self.arrows.iter().map(|a| quiver.arrow(*a).name.as_str()).collect())
    }
}
