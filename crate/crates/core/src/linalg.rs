//! Dense exact linear algebra.
//!
//! Matrices are plain row-major element storage; every operation takes the
//! ring it works over as an argument.

use crate::field::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for col in columns {
                data.push(col[i].clone());
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[E]) {
        for (i, v) in col.iter().enumerate() {
            self[(i, j)] = v.clone();
        }
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn push_row(&mut self, row: Vec<E>) {
        if self.rows == 0 && self.data.is_empty() {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let mut out = Matrix::zero(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = &a[(i, k)];
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = &b[(k, j)];
                if ring.is_zero(bkj) {
                    continue;
                }
                out[(i, j)] = ring.add(&out[(i, j)], &ring.mul(aik, bkj));
            }
        }
    }
    out
}

pub fn mul_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(a.cols, v.len(), "dimension mismatch in matrix-vector product");
    (0..a.rows)
        .map(|i| {
            let mut acc = ring.zero();
            for (j, vj) in v.iter().enumerate() {
                if !ring.is_zero(vj) && !ring.is_zero(&a[(i, j)]) {
                    acc = ring.add(&acc, &ring.mul(&a[(i, j)], vj));
                }
            }
            acc
        })
        .collect()
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect(),
    }
}

pub fn sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| ring.sub(x, y)).collect(),
    }
}

pub fn scale<R: Ring>(ring: &R, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(c, x))
}

/// `ab - ba`.
pub fn commutator<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    sub(ring, &mul(ring, a, b), &mul(ring, b, a))
}

pub fn is_zero_matrix<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.data.iter().all(|x| ring.is_zero(x))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&i| !field.is_zero(&m[(i, col)])) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = field.inv(&m[(row, col)]).expect("pivot is nonzero");
        for j in col..m.cols {
            m[(row, j)] = field.mul(&m[(row, j)], &inv);
        }
        for i in 0..m.rows {
            if i == row || field.is_zero(&m[(i, col)]) {
                continue;
            }
            let factor = m[(i, col)].clone();
            for j in col..m.cols {
                if field.is_zero(&m[(row, j)]) {
                    continue;
                }
                let t = field.mul(&factor, &m[(row, j)]);
                m[(i, j)] = field.sub(&m[(i, j)], &t);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(field, &mut work).len()
}

/// A basis of `{v : m v = 0}`, one vector per free column.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&work[(r, free)]);
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `m x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(m.rows, b.len(), "right-hand side length mismatch");
    let mut aug = Matrix::zero(field, m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![field.zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[(r, m.cols)].clone();
    }
    Some(x)
}

/// Solves `m x = b` for lower unitriangular `m` by forward substitution.
/// Needs only ring operations, so it also runs over dual numbers.
pub fn solve_unitriangular<R: Ring>(ring: &R, m: &Matrix<R::Elem>, b: &[R::Elem]) -> Vec<R::Elem> {
    let n = m.rows;
    let mut x: Vec<R::Elem> = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = b[i].clone();
        for (j, xj) in x.iter().enumerate() {
            if !ring.is_zero(&m[(i, j)]) {
                acc = ring.sub(&acc, &ring.mul(&m[(i, j)], xj));
            }
        }
        x.push(acc);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, PrimeField, Rational, Rationals};
    use proptest::prelude::*;

    fn qmat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
    }

    /// Independent row reduction: fraction-free elimination on i128 with
    /// determinant-style cross multiplication.
    fn rank_fraction_free(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, p);
            for i in r + 1..m.len() {
                let (a, b) = (m[r][c], m[i][c]);
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = *x * a - y * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
            r += 1;
        }
        r
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    #[test]
    fn identity_and_zero_rank() {
        let q = Rationals;
        assert_eq!(rank(&q, &Matrix::identity(&q, 5)), 5);
        assert_eq!(rank(&q, &Matrix::zero(&q, 3, 4)), 0);
        assert_eq!(rank(&q, &Matrix::<Rational>::zero(&q, 0, 3)), 0);
    }

    #[test]
    fn nullspace_spans_kernel() {
        let q = Rationals;
        let m = qmat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = nullspace(&q, &m);
        assert_eq!(ns.len(), 1);
        assert!(mul_vec(&q, &m, &ns[0]).iter().all(|x| q.is_zero(x)));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let q = Rationals;
        let m = qmat(&[&[1, 1], &[1, -1]]);
        let x = solve(&q, &m, &[rat(3, 1), rat(1, 1)]).unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(1, 1)]);
        let singular = qmat(&[&[1, 1], &[2, 2]]);
        assert!(solve(&q, &singular, &[rat(1, 1), rat(3, 1)]).is_none());
        assert!(solve(&q, &singular, &[rat(1, 1), rat(2, 1)]).is_some());
    }

    #[test]
    fn rank_over_prime_field_can_drop() {
        let f = PrimeField::new(3).unwrap();
                let m = Matrix::from_rows(vec![vec![1u64, 2], vec![2, 1]]);
        // det = -3 = 0 mod 3
        assert_eq!(rank(&f, &m), 1);
    }

    #[test]
    fn unitriangular_solve_matches_general_solve() {
        let q = Rationals;
        let m = qmat(&[&[1, 0, 0], &[5, 1, 0], &[-2, 7, 1]]);
        let b = vec![rat(1, 1), rat(2, 3), rat(-4, 1)];
        assert_eq!(solve_unitriangular(&q, &m, &b), solve(&q, &m, &b).unwrap());
    }

    proptest! {
        #[test]
        fn rank_nullity_random_4x4(entries in proptest::collection::vec(-3i64..4, 16)) {
            let q = Rationals;
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect());
            let r = rank(&q, &m);
            let ns = nullspace(&q, &m);
            prop_assert_eq!(r + ns.len(), 4);
            prop_assert_eq!(r, rank_fraction_free(&rows));
            for v in &ns {
                prop_assert!(mul_vec(&q, &m, v).iter().all(|x| q.is_zero(x)));
            }
        }

        #[test]
        fn rank_invariant_under_row_ops(
            entries in proptest::collection::vec(-4i64..5, 12),
            perm_seed in 0usize..6,
            scale in 1i64..7,
        ) {
            let q = Rationals;
            let rows: Vec<Vec<Rational>> = entries.chunks(4).map(|c| c.iter().map(|&x| rat(x, 1)).collect()).collect();
            let m = Matrix::from_rows(rows.clone());
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let permuted: Vec<Vec<Rational>> = perms[perm_seed]
                .iter()
                .enumerate()
                .map(|(k, &i)| rows[i].iter().map(|x| if k == 0 { x * rat(-scale, 3) } else { x.clone() }).collect())
                .collect();
            prop_assert_eq!(rank(&q, &m), rank(&q, &Matrix::from_rows(permuted)));
        }
    }
}
