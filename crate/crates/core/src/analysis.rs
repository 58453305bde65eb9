//! Sequence-level invariants assembled from per-mast patches: uniserial
//! dimension, the quotient criterion and finite uniserial type.

use crate::detour::{condition_n, paths_through, ConditionNViolation, MastContext, SimpleSequence};
use crate::error::Error;
use crate::field::{Rational, Rationals, Ring};
use crate::linalg::Matrix;
use crate::par::{self, Execution};
use crate::poly::PolyRing;
use crate::presentation::AlgebraPresentation;
use crate::quiver::{ArrowId, Path, Quiver};
use crate::rep::{build_a, fiber_report, realize, verify};
use crate::variety::{build_variety, sample_point, Classification, QPoly, VarietyModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Points drawn per patch when estimating the generic fiber dimension.
    pub samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { samples: 16, seed: 0, execution: Execution::default() }
    }
}

impl AnalysisOptions {
    fn sample_seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.samples as u64).map(|j| self.seed.wrapping_add(j))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MastEntry {
    pub path: Path,
    pub status: &'static str,
    pub dimension: Option<usize>,
    /// Residual patch on which no point was found.
    pub possibly_empty: bool,
}

fn check_max_len(presentation: &AlgebraPresentation, max_len: usize) -> Result<(), Error> {
    if max_len < 1 || max_len >= presentation.loewy_bound() {
        return Err(Error::invalid(format!(
            "max length must lie in [1, {}) for loewy bound {}",
            presentation.loewy_bound(),
            presentation.loewy_bound()
        )));
    }
    Ok(())
}

fn candidate_paths(quiver: &Quiver, max_len: usize) -> Vec<Path> {
    (1..=max_len).flat_map(|len| quiver.all_paths_of_length(len)).collect()
}

/// Paths of length `1..=max_len` whose variety is not empty.
pub fn enumerate_masts(
    presentation: &AlgebraPresentation,
    max_len: usize,
    opts: &AnalysisOptions,
) -> Result<Vec<MastEntry>, Error> {
    check_max_len(presentation, max_len)?;
    let paths = candidate_paths(presentation.quiver(), max_len);
    let entries = par::map(opts.execution, &paths, |p| {
        let model = build_variety(presentation, p);
        if model.is_empty() {
            return None;
        }
        let possibly_empty = matches!(model.classification(), Classification::Residual { .. })
            && sample_point(&model, opts.seed).is_none();
        Some(MastEntry { path: p.clone(), status: model.classification().status(), dimension: model.dimension(), possibly_empty })
    });
    Ok(entries.into_iter().flatten().collect())
}

/// One patch `V_p` of a sequence report.
#[derive(Clone, Debug, PartialEq)]
pub struct PatchReport {
    pub path: Path,
    pub status: &'static str,
    pub dimension: Option<usize>,
    /// Largest rank of `A(k)` over the sampled points.
    pub generic_fiber_dim: Option<usize>,
    /// `dimension - generic_fiber_dim` for affine patches.
    pub contribution: Option<i64>,
    pub samples: usize,
    pub diagnostics: Vec<String>,
}

fn analyze_patch(presentation: &AlgebraPresentation, p: &Path, opts: &AnalysisOptions) -> PatchReport {
    let model = build_variety(presentation, p);
    let mut report = PatchReport {
        path: p.clone(),
        status: model.classification().status(),
        dimension: model.dimension(),
        generic_fiber_dim: None,
        contribution: None,
        samples: 0,
        diagnostics: Vec::new(),
    };
    let seeds: Vec<u64> = match model.classification() {
        Classification::Empty => return report,
        Classification::AffineSpace { .. } => opts.sample_seeds().collect(),
        Classification::Residual { .. } => vec![opts.seed],
    };
    let mut best: Option<usize> = None;
    for seed in seeds {
        let Some(k) = sample_point(&model, seed) else { continue };
        let x = realize(&Rationals, presentation.quiver(), model.context(), k.coords());
        let check = verify(presentation, model.context(), &x);
        if !check.ok {
            report.diagnostics.extend(check.diagnostics);
            continue;
        }
        report.samples += 1;
        let rank = fiber_report(model.context(), &x).rank_a;
        best = Some(best.map_or(rank, |b| b.max(rank)));
    }
    if let Some(d) = report.dimension {
        report.generic_fiber_dim = best;
        report.contribution = best.map(|g| d as i64 - g as i64);
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniserialDimension {
    Value(i64),
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceReport {
    pub sequence: SimpleSequence,
    pub per_path: Vec<PatchReport>,
    pub value: UniserialDimension,
}

pub fn uniserdim(presentation: &AlgebraPresentation, seq: &SimpleSequence, opts: &AnalysisOptions) -> SequenceReport {
    let paths = paths_through(presentation.quiver(), seq);
    let per_path = par::map(opts.execution, &paths, |p| analyze_patch(presentation, p, opts));
    let nonempty: Vec<&PatchReport> = per_path.iter().filter(|r| r.status != "empty").collect();
    let value = if nonempty.is_empty() {
        UniserialDimension::Value(-1)
    } else if nonempty.iter().any(|r| r.contribution.is_none()) {
        UniserialDimension::Unknown
    } else {
        UniserialDimension::Value(nonempty.iter().filter_map(|r| r.contribution).max().expect("nonempty"))
    };
    SequenceReport { sequence: seq.clone(), per_path, value }
}

/// `A(k)` over the coordinate ring of an affine patch, with `k` the generic
/// point given by the solved-variable parametrization.
pub fn symbolic_a(presentation: &AlgebraPresentation, model: &VarietyModel) -> Option<Matrix<QPoly>> {
    let Classification::AffineSpace { solved, .. } = model.classification() else {
        return None;
    };
    let ring: PolyRing<Rationals> = model.ring().clone();
    let mut k: Vec<QPoly> = (0..ring.nvars()).map(|v| ring.var(v)).collect();
    for (v, e) in solved {
        k[*v] = e.clone();
    }
    let x = realize(&ring, presentation.quiver(), model.context(), &k);
    Some(build_a(&ring, model.context(), &x))
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuotientVerdict {
    Yes,
    No { path: Path, point: Vec<Rational>, rank_a: usize },
    Unknown { path: Path },
}

/// Whether `A(k)` vanishes identically on every patch through `seq`.
pub fn quotient_check(presentation: &AlgebraPresentation, seq: &SimpleSequence, opts: &AnalysisOptions) -> QuotientVerdict {
    let paths = paths_through(presentation.quiver(), seq);
    let verdicts = par::map(opts.execution, &paths, |p| patch_quotient(presentation, p, opts));
    if let Some(no) = verdicts.iter().find(|v| matches!(v, QuotientVerdict::No { .. })) {
        return no.clone();
    }
    verdicts.into_iter().find(|v| matches!(v, QuotientVerdict::Unknown { .. })).unwrap_or(QuotientVerdict::Yes)
}

fn patch_quotient(presentation: &AlgebraPresentation, p: &Path, opts: &AnalysisOptions) -> QuotientVerdict {
    let model = build_variety(presentation, p);
    if model.is_empty() || model.context().t() == 0 {
        return QuotientVerdict::Yes;
    }
    let rank_at = |seed: u64| {
        let k = sample_point(&model, seed)?;
        let x = realize(&Rationals, presentation.quiver(), model.context(), k.coords());
        let rank_a = fiber_report(model.context(), &x).rank_a;
        Some((k.coords().to_vec(), rank_a))
    };
    let affine = matches!(model.classification(), Classification::AffineSpace { .. });
    let seeds: Vec<u64> = if affine { opts.sample_seeds().collect() } else { vec![opts.seed] };
    for seed in seeds {
        if let Some((point, rank_a)) = rank_at(seed) {
            if rank_a > 0 {
                return QuotientVerdict::No { path: p.clone(), point, rank_a };
            }
        }
    }
    match symbolic_a(presentation, &model) {
        Some(a) if a.entries().iter().all(|e| model.ring().is_zero(e)) => QuotientVerdict::Yes,
        _ => QuotientVerdict::Unknown { path: p.clone() },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Finite,
    Infinite,
    Unknown,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Finite => "finite",
            Verdict::Infinite => "infinite",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessReason {
    /// At least two arrows share source and target, one of them nonzero.
    DoubleArrow { arrows: Vec<ArrowId> },
    /// Recorded only; does not change the verdict.
    ConditionN { arrow: ArrowId },
    /// The patch has a positive-dimensional family of isomorphism classes.
    ExcessDimension { dimension: usize, generic_fiber_dim: usize },
    /// No linear parametrization was found.
    Residual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub sequence: SimpleSequence,
    pub path: Option<Path>,
    pub reason: WitnessReason,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTypeVerdict {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub max_len: usize,
}

pub fn finite_type_report(
    presentation: &AlgebraPresentation,
    max_len: usize,
    opts: &AnalysisOptions,
) -> Result<FiniteTypeVerdict, Error> {
    check_max_len(presentation, max_len)?;
    let quiver = presentation.quiver();
    let masts = enumerate_masts(presentation, max_len, opts)?;
    let mast_paths: Vec<Path> = masts.iter().map(|m| m.path.clone()).collect();
    let mut witnesses = Vec::new();
    let mut infinite = false;
    let mut unknown = false;

    for s in quiver.vertex_ids() {
        for t in quiver.vertex_ids() {
            let arrows = quiver.parallel_arrows(s, t);
            let realizable = arrows.iter().any(|a| mast_paths.iter().any(|p| p.arrows() == [*a]));
            if arrows.len() >= 2 && realizable {
                infinite = true;
                witnesses.push(Witness {
                    sequence: SimpleSequence::new(vec![s, t]).expect("nonempty"),
                    path: None,
                    reason: WitnessReason::DoubleArrow { arrows },
                });
            }
        }
    }

    for ConditionNViolation { arrow, mast } in condition_n(presentation, &mast_paths) {
        witnesses.push(Witness {
            sequence: MastContext::new(quiver, &mast).sequence(),
            path: Some(mast),
            reason: WitnessReason::ConditionN { arrow },
        });
    }

    let patches = par::map(opts.execution, &mast_paths, |p| analyze_patch(presentation, p, opts));
    for patch in patches {
        let sequence = MastContext::new(quiver, &patch.path).sequence();
        match (patch.dimension, patch.generic_fiber_dim) {
            (Some(d), Some(g)) if d > g => {
                infinite = true;
                witnesses.push(Witness {
                    sequence,
                    path: Some(patch.path),
                    reason: WitnessReason::ExcessDimension { dimension: d, generic_fiber_dim: g },
                });
            }
            (Some(_), Some(_)) => {}
            _ => {
                unknown = true;
                witnesses.push(Witness { sequence, path: Some(patch.path), reason: WitnessReason::Residual });
            }
        }
    }

    let verdict = if infinite {
        Verdict::Infinite
    } else if unknown {
        Verdict::Unknown
    } else {
        Verdict::Finite
    };
    Ok(FiniteTypeVerdict { verdict, witnesses, max_len })
}
