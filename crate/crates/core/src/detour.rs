//! Combinatorics of a mast candidate `p`: right subpaths, routes, detours and
//! the coordinate system of the affine space its variety lives in.

use std::collections::HashMap;

use crate::error::Error;
use crate::presentation::AlgebraPresentation;
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

/// A sequence of simples `(S(0), ..., S(l))`, identified with vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleSequence {
    vertices: Vec<VertexId>,
}

impl SimpleSequence {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self, Error> {
        if vertices.is_empty() {
            return Err(Error::invalid("a sequence of simples needs at least one entry"));
        }
        Ok(SimpleSequence { vertices })
    }

    pub fn of_path(quiver: &Quiver, p: &Path) -> Self {
        SimpleSequence { vertices: p.vertex_word(quiver) }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// `l`, one less than the number of entries.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Multiplicity of the top simple `S(0)`.
    pub fn top_multiplicity(&self) -> usize {
        self.vertices.iter().filter(|v| **v == self.vertices[0]).count()
    }

    pub fn render(&self, quiver: &Quiver) -> Vec<String> {
        self.vertices.iter().map(|v| quiver.vertex_name(*v).to_string()).collect()
    }
}

/// One coordinate `X(arrow, m, i)` of the ambient affine space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VariableIndex {
    pub arrow: ArrowId,
    pub m: usize,
    pub i: usize,
}

impl VariableIndex {
    pub fn render(&self, quiver: &Quiver) -> String {
        format!("X({},{},{})", quiver.arrow(self.arrow).name, self.m, self.i)
    }
}

/// A detour `(arrow, p_m)` together with its index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detour {
    pub arrow: ArrowId,
    pub m: usize,
    pub index_set: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct MastContext {
    path: Path,
    right_subpaths: Vec<Path>,
    word: Vec<VertexId>,
    detours: Vec<Detour>,
    variables: Vec<VariableIndex>,
    /// `(arrow, m)` of a detour -> `(i, variable position)` pairs.
    detour_lookup: HashMap<(ArrowId, usize), Vec<(usize, usize)>>,
    /// Lengths of the nontrivial right subpaths ending at `e(0)`, increasing.
    cycle_lengths: Vec<usize>,
}

impl MastContext {
    pub fn new(quiver: &Quiver, p: &Path) -> Self {
        let l = p.len();
        let word = p.vertex_word(quiver);
        let right_subpaths: Vec<Path> = (0..=l).map(|i| p.right_subpath(quiver, i)).collect();

        let mut detours = Vec::new();
        for m in 0..=l {
            for &a in quiver.outgoing(word[m]) {
                if m < l && p.arrows()[m] == a {
                    continue;
                }
                let target = quiver.arrow(a).target;
                let index_set: Vec<usize> = (m + 1..=l).filter(|&s| word[s] == target).collect();
                if !index_set.is_empty() {
                    detours.push(Detour { arrow: a, m, index_set });
                }
            }
        }
        // outgoing() is sorted by name, so detours are in (m, arrow name) order
        let mut variables = Vec::new();
        let mut detour_lookup = HashMap::new();
        for d in &detours {
            let entry: Vec<(usize, usize)> = d
                .index_set
                .iter()
                .map(|&i| {
                    variables.push(VariableIndex { arrow: d.arrow, m: d.m, i });
                    (i, variables.len() - 1)
                })
                .collect();
            detour_lookup.insert((d.arrow, d.m), entry);
        }
        let cycle_lengths = (1..=l).filter(|&s| word[s] == word[0]).collect();

        MastContext {
            path: p.clone(),
            right_subpaths,
            word,
            detours,
            variables,
            detour_lookup,
            cycle_lengths,
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// `l`.
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_trivial()
    }

    pub fn right_subpath(&self, i: usize) -> &Path {
        &self.right_subpaths[i]
    }

    pub fn right_subpaths(&self) -> &[Path] {
        &self.right_subpaths
    }

    /// `(e(0), ..., e(l))`.
    pub fn word(&self) -> &[VertexId] {
        &self.word
    }

    pub fn sequence(&self) -> SimpleSequence {
        SimpleSequence { vertices: self.word.clone() }
    }

    pub fn detours(&self) -> &[Detour] {
        &self.detours
    }

    pub fn variables(&self) -> &[VariableIndex] {
        &self.variables
    }

    /// `N`, the dimension of the ambient affine space.
    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_position(&self, arrow: ArrowId, m: usize, i: usize) -> Option<usize> {
        self.detour_lookup.get(&(arrow, m))?.iter().find(|(j, _)| *j == i).map(|(_, pos)| *pos)
    }

    /// Index set and variable positions of the detour `(arrow, p_m)`, if it is one.
    pub fn detour_variables(&self, arrow: ArrowId, m: usize) -> Option<&[(usize, usize)]> {
        self.detour_lookup.get(&(arrow, m)).map(Vec::as_slice)
    }

    /// `t`: number of nontrivial right subpaths ending at `e(0)`.
    pub fn t(&self) -> usize {
        self.cycle_lengths.len()
    }

    /// `mu = t + 1`, the multiplicity of the top vertex in the word.
    pub fn mu(&self) -> usize {
        self.t() + 1
    }

    /// Lengths of `w_1, ..., w_t`.
    pub fn cycle_lengths(&self) -> &[usize] {
        &self.cycle_lengths
    }

    /// Length of the longest common initial segment of `v` and `p`, i.e. the
    /// largest `m` with `p_m` a right subpath of `v`.
    pub fn longest_subpath_prefix(&self, v: &Path) -> usize {
        if v.source() != self.word[0] {
            return 0;
        }
        v.arrows().iter().zip(self.path.arrows()).take_while(|(a, b)| a == b).count()
    }

    /// Whether the vertex word of `v` embeds as a subsequence of `(e(0), ..., e(l))`.
    pub fn is_route(&self, quiver: &Quiver, v: &Path) -> bool {
        if v.source() != self.word[0] || v.len() > self.len() {
            return false;
        }
        // greedy leftmost matching
        let mut pos = 0;
        for a in v.arrows() {
            let target = quiver.arrow(*a).target;
            match (pos + 1..self.word.len()).find(|&s| self.word[s] == target) {
                Some(s) => pos = s,
                None => return false,
            }
        }
        true
    }

    /// All routes on `p`, by depth-first extension. Extensions of non-routes
    /// are never routes, so pruning at the first failure is complete.
    pub fn routes(&self, quiver: &Quiver) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![quiver.trivial(self.word[0])];
        while let Some(v) = stack.pop() {
            if v.len() < self.len() {
                for &a in quiver.outgoing(v.target()).iter().rev() {
                    let w = quiver.append(&v, a).expect("outgoing arrow composes");
                    if self.is_route(quiver, &w) {
                        stack.push(w);
                    }
                }
            }
            out.push(v);
        }
        out.sort_by(|a, b| a.sort_key(quiver).cmp(&b.sort_key(quiver)));
        out
    }
}

/// Paths whose vertex word is exactly the given sequence.
pub fn paths_through(quiver: &Quiver, seq: &SimpleSequence) -> Vec<Path> {
    let vs = seq.vertices();
    let mut paths = vec![quiver.trivial(vs[0])];
    for pair in vs.windows(2) {
        let arrows = quiver.parallel_arrows(pair[0], pair[1]);
        paths = paths
            .iter()
            .flat_map(|p| arrows.iter().map(move |a| quiver.append(p, *a).expect("parallel arrow composes")))
            .collect();
        if paths.is_empty() {
            break;
        }
    }
    paths
}

/// A pair `(arrow, mast)` breaking the necessary condition for finite
/// uniserial type: the mast runs parallel to the arrow but neither starts nor
/// ends with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionNViolation {
    pub arrow: ArrowId,
    pub mast: Path,
}

pub fn condition_n(presentation: &AlgebraPresentation, masts: &[Path]) -> Vec<ConditionNViolation> {
    let quiver = presentation.quiver();
    let mut out = Vec::new();
    for a in quiver.arrow_ids() {
        let arrow = quiver.arrow(a);
        for p in masts {
            if p.is_trivial() || p.source() != arrow.source || p.target() != arrow.target {
                continue;
            }
            let first = p.arrows()[0];
            let last = *p.arrows().last().expect("nontrivial");
            if first != a && last != a {
                out.push(ConditionNViolation { arrow: a, mast: p.clone() });
            }
        }
    }
    out
}
