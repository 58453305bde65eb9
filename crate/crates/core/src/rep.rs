//! Matrix models of uniserial modules and their endomorphisms.
//!
//! A point `k` of `V_p` is realized on `K^{l+1}` with basis `e_i = p_i x`.
//! Everything here is exact linear algebra on those matrices.

use crate::detour::MastContext;
use crate::error::Error;
use crate::field::{Dual, Field, Rational, Rationals, Ring};
use crate::linalg::{self, is_zero_matrix, nullspace, rank, solve_unitriangular, Matrix};
use crate::presentation::AlgebraPresentation;
use crate::quiver::{Path, Quiver};

/// Arrow and vertex matrices of a module of dimension `l + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationPoint<E> {
    arrows: Vec<Matrix<E>>,
    vertices: Vec<Matrix<E>>,
}

impl<E: Clone> RepresentationPoint<E> {
    pub fn dimension(&self) -> usize {
        self.vertices.first().map_or(0, Matrix::rows)
    }

    /// Indexed by `ArrowId`.
    pub fn arrow_matrices(&self) -> &[Matrix<E>] {
        &self.arrows
    }

    /// Indexed by `VertexId`.
    pub fn vertex_matrices(&self) -> &[Matrix<E>] {
        &self.vertices
    }

    fn generators(&self) -> impl Iterator<Item = &Matrix<E>> {
        self.arrows.iter().chain(&self.vertices)
    }
}

fn basis_vector<R: Ring>(ring: &R, n: usize, i: usize) -> Vec<R::Elem> {
    let mut v = vec![ring.zero(); n];
    v[i] = ring.one();
    v
}

/// The representation with coordinates `k`, one entry per variable of `ctx`.
/// Points off the variety are realized too; [`verify`] rejects them.
pub fn realize<R: Ring>(ring: &R, quiver: &Quiver, ctx: &MastContext, k: &[R::Elem]) -> RepresentationPoint<R::Elem> {
    assert_eq!(k.len(), ctx.variable_count(), "coordinate count");
    let l = ctx.len();
    let n = l + 1;
    let mast = ctx.path().arrows();
    let mut arrows = Vec::new();
    for beta in quiver.arrow_ids() {
        let mut m = Matrix::zero(ring, n, n);
        for j in 0..n {
            if mast.get(j) == Some(&beta) {
                m.set_column(j, &basis_vector(ring, n, j + 1));
            } else if let Some(targets) = ctx.detour_variables(beta, j) {
                let mut col = vec![ring.zero(); n];
                for &(i, var) in targets {
                    col[i] = k[var].clone();
                }
                m.set_column(j, &col);
            }
        }
        arrows.push(m);
    }
    let vertices = quiver
        .vertex_ids()
        .map(|v| {
            let mut m = Matrix::zero(ring, n, n);
            for (j, w) in ctx.word().iter().enumerate() {
                if *w == v {
                    m[(j, j)] = ring.one();
                }
            }
            m
        })
        .collect();
    RepresentationPoint { arrows, vertices }
}

/// Matrix by which `path` acts.
pub fn path_matrix<R: Ring>(ring: &R, x: &RepresentationPoint<R::Elem>, path: &Path) -> Matrix<R::Elem> {
    let mut m = x.vertices[path.source().0].clone();
    for a in path.arrows() {
        m = linalg::mul(ring, &x.arrows[a.0], &m);
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

/// Checks that every relation acts as zero and the mast does not.
pub fn verify(
    presentation: &AlgebraPresentation,
    ctx: &MastContext,
    x: &RepresentationPoint<Rational>,
) -> Verification {
    let ring = Rationals;
    let quiver = presentation.quiver();
    let n = x.dimension();
    let mut diagnostics = Vec::new();
    for (j, rel) in presentation.relations().iter().enumerate() {
        let mut acc = Matrix::zero(&ring, n, n);
        for (c, path) in rel.terms() {
            acc = linalg::add(&ring, &acc, &linalg::scale(&ring, c, &path_matrix(&ring, x, path)));
        }
        if !is_zero_matrix(&ring, &acc) {
            diagnostics.push(format!("relation {} ({}) does not vanish", j + 1, rel.render(quiver)));
        }
    }
    let top = basis_vector(&ring, n, 0);
    let image = linalg::mul_vec(&ring, &path_matrix(&ring, x, ctx.path()), &top);
    if image != basis_vector(&ring, n, ctx.len()) {
        diagnostics.push(format!("mast {} does not map the top to the socle", quiver.render_path(ctx.path())));
    }
    Verification { ok: diagnostics.is_empty(), diagnostics }
}

/// Stacked coefficients of `[E_j, g]` over all generators `g`, one column per
/// cycle `w_j`, where `E_j` has column `i` equal to `p_i(x) e_{s_j}`.
/// `E_0 + sum_j c_j E_j` is an endomorphism iff `A c = 0`.
pub fn build_a<R: Ring>(ring: &R, ctx: &MastContext, x: &RepresentationPoint<R::Elem>) -> Matrix<R::Elem> {
    let n = ctx.len() + 1;
    let subpaths: Vec<Matrix<R::Elem>> = ctx.right_subpaths().iter().map(|p| path_matrix(ring, x, p)).collect();
    let columns: Vec<Vec<R::Elem>> = ctx
        .cycle_lengths()
        .iter()
        .map(|&s| {
            let e_s = basis_vector(ring, n, s);
            let cols: Vec<Vec<R::Elem>> = subpaths.iter().map(|p| linalg::mul_vec(ring, p, &e_s)).collect();
            let e_j = Matrix::from_columns(n, &cols);
            x.generators().flat_map(|g| linalg::commutator(ring, &e_j, g).entries().to_vec()).collect()
        })
        .collect();
    let rows = x.generators().count() * n * n;
    if columns.is_empty() {
        return Matrix::zero(ring, rows, 0);
    }
    Matrix::from_columns(rows, &columns)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberReport {
    pub t: usize,
    pub mu: usize,
    pub a: Matrix<Rational>,
    pub rank_a: usize,
    /// `dim End(U)`.
    pub delta: usize,
    /// `dim Aut^u(U)`, the nullity of `A`.
    pub dim_aut_u: usize,
    pub fiber_dim: usize,
}

pub fn fiber_report(ctx: &MastContext, x: &RepresentationPoint<Rational>) -> FiberReport {
    let a = build_a(&Rationals, ctx, x);
    let rank_a = rank(&Rationals, &a);
    let t = ctx.t();
    let report = FiberReport {
        t,
        mu: ctx.mu(),
        a,
        rank_a,
        delta: t + 1 - rank_a,
        dim_aut_u: t - rank_a,
        fiber_dim: rank_a,
    };
    assert_eq!(report.fiber_dim, report.mu - report.delta);
    report
}

type MatrixPair<'a, E> = (&'a Matrix<E>, &'a Matrix<E>);

/// Rows expressing `T a = b T` for each pair, over `n*n` unknowns `T[r][c]`
/// at index `r * n + c`.
fn intertwining_system<F: Field>(field: &F, n: usize, pairs: &[MatrixPair<F::Elem>]) -> Matrix<F::Elem> {
    let mut system = Matrix::zero(field, 0, n * n);
    for (a, b) in pairs {
        for i in 0..n {
            for j in 0..n {
                // (T a)[i][j] - (b T)[i][j]
                let mut row = vec![field.zero(); n * n];
                for k in 0..n {
                    row[i * n + k] = field.add(&row[i * n + k], &a[(k, j)]);
                    row[k * n + j] = field.sub(&row[k * n + j], &b[(i, k)]);
                }
                if row.iter().any(|e| !field.is_zero(e)) {
                    system.push_row(row);
                }
            }
        }
    }
    system
}

fn unflatten<E: Clone>(n: usize, v: Vec<E>) -> Matrix<E> {
    Matrix::from_rows(v.chunks(n).map(<[E]>::to_vec).collect())
}

/// Basis of the full commutant of the representation, by brute-force nullspace.
pub fn endo_basis_oracle<F: Field>(field: &F, x: &RepresentationPoint<F::Elem>) -> Vec<Matrix<F::Elem>> {
    let n = x.dimension();
    let pairs: Vec<_> = x.generators().map(|g| (g, g)).collect();
    nullspace(field, &intertwining_system(field, n, &pairs)).into_iter().map(|v| unflatten(n, v)).collect()
}

/// Coordinates of the same module relative to the top element
/// `y(c) = e_0 + sum_j c_j e_{s_j}`.
pub fn top_change<R: Ring>(ring: &R, ctx: &MastContext, x: &RepresentationPoint<R::Elem>, c: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(c.len(), ctx.t(), "one parameter per cycle");
    let n = ctx.len() + 1;
    let mut y = basis_vector(ring, n, 0);
    for (&s, cj) in ctx.cycle_lengths().iter().zip(c) {
        y[s] = ring.add(&y[s], cj);
    }
    let cols: Vec<Vec<R::Elem>> =
        ctx.right_subpaths().iter().map(|p| linalg::mul_vec(ring, &path_matrix(ring, x, p), &y)).collect();
    let basis = Matrix::from_columns(n, &cols);
    let mut k = vec![ring.zero(); ctx.variable_count()];
    for d in ctx.detours() {
        let image = linalg::mul_vec(ring, &x.arrows[d.arrow.0], &cols[d.m]);
        let coeffs = solve_unitriangular(ring, &basis, &image);
        for &(i, var) in ctx.detour_variables(d.arrow, d.m).expect("listed detour") {
            k[var] = coeffs[i].clone();
        }
    }
    k
}

/// Rank of the first-order part of `c -> top_change(k, c)` at `c = 0`.
pub fn differential_rank_at_zero(ctx: &MastContext, x: &RepresentationPoint<Rational>) -> usize {
    let dual = Dual(Rationals);
    let lifted = RepresentationPoint {
        arrows: x.arrows.iter().map(|m| m.map(|e| dual.lift(e.clone()))).collect(),
        vertices: x.vertices.iter().map(|m| m.map(|e| dual.lift(e.clone()))).collect(),
    };
    let t = ctx.t();
    let columns: Vec<Vec<Rational>> = (0..t)
        .map(|j| {
            let mut c = vec![dual.zero(); t];
            c[j] = dual.epsilon();
            top_change(&dual, ctx, &lifted, &c).into_iter().map(|(_, d)| d).collect()
        })
        .collect();
    if columns.is_empty() {
        return 0;
    }
    rank(&Rationals, &Matrix::from_columns(ctx.variable_count(), &columns))
}

/// Whether two points of the same patch give isomorphic modules: some
/// intertwiner `T` from `x` to `x2` has `T[0][0] != 0`.
pub fn same_fiber<F: Field>(
    field: &F,
    ctx: &MastContext,
    x: &RepresentationPoint<F::Elem>,
    ctx2: &MastContext,
    x2: &RepresentationPoint<F::Elem>,
) -> Result<bool, Error> {
    if ctx.path() != ctx2.path() {
        return Err(Error::domain("points lie on different masts"));
    }
    let n = x.dimension();
    let pairs: Vec<_> = x.generators().zip(x2.generators()).collect();
    let hom = nullspace(field, &intertwining_system(field, n, &pairs));
    Ok(hom.iter().any(|v| !field.is_zero(&v[0])))
}
