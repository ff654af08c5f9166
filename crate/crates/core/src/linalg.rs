//! Vectors, matrices and subspaces over a finite field.
//!
//! A [`Subspace`] always stores its basis in reduced row echelon form, so two
//! subspaces are equal iff their bases are equal and the coordinates of a
//! member vector are simply its entries at the pivot columns.

use std::collections::BTreeMap;

use crate::field::{Elem, Field};

pub type Vector = Vec<Elem>;
/// Row-major matrix: `m[i]` is row `i`.
pub type Matrix = Vec<Vector>;

/// `y += c·x`.
#[inline]
pub fn axpy(f: &Field, y: &mut [Elem], c: Elem, x: &[Elem]) {
    if c == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = f.add(*yi, f.mul(c, xi));
        }
    }
}

pub fn add(f: &Field, x: &[Elem], y: &[Elem]) -> Vector {
    x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
}

pub fn sub(f: &Field, x: &[Elem], y: &[Elem]) -> Vector {
    x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect()
}

pub fn scale(f: &Field, c: Elem, x: &[Elem]) -> Vector {
    x.iter().map(|&a| f.mul(c, a)).collect()
}

pub fn is_zero(x: &[Elem]) -> bool {
    x.iter().all(|&a| a == 0)
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Row vector times matrix: `Σ_i x_i · m[i]`.
pub fn vec_mat(f: &Field, x: &[Elem], m: &[Vector], cols: usize) -> Vector {
    let mut out = vec![0; cols];
    for (&c, row) in x.iter().zip(m) {
        axpy(f, &mut out, c, row);
    }
    out
}

pub fn mat_mul(f: &Field, a: &[Vector], b: &[Vector], cols: usize) -> Matrix {
    a.iter().map(|row| vec_mat(f, row, b, cols)).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit(n, i)).collect()
}

/// Decode `index` as a vector of length `n` in base `q`, least significant first.
pub fn vector_from_index(q: usize, n: usize, mut index: u64) -> Vector {
    (0..n)
        .map(|_| {
            let d = (index % q as u64) as Elem;
            index /= q as u64;
            d
        })
        .collect()
}

/// Inverse of [`vector_from_index`].
pub fn vector_index(q: usize, v: &[Elem]) -> u64 {
    v.iter().rev().fold(0u64, |acc, &a| acc * q as u64 + a as u64)
}

/// All nonzero vectors of length `n` whose first nonzero entry is 1, in index order.
pub fn projective_points(f: &Field, n: usize) -> impl Iterator<Item = Vector> + '_ {
    let q = f.q();
    let total = (q as u64).pow(n as u32);
    (1..total)
        .map(move |i| vector_from_index(q, n, i))
        .filter(|v| v.iter().find(|&&a| a != 0) == Some(&1))
}

/// Bring `rows` to reduced row echelon form in place; drop zero rows; return pivot columns.
pub fn rref(f: &Field, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let coef = f.neg(row[c]);
                axpy(f, row, coef, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &Field, rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis (in RREF) of `{x : Σ x_i rows[i] = 0}`.
pub fn left_kernel(f: &Field, rows: &[Vector]) -> Matrix {
    let n = rows.len();
    let width = rows.first().map_or(0, |r| r.len());
    let mut aug: Matrix = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend(unit(n, i));
            v
        })
        .collect();
    rref(f, &mut aug);
    let mut ker: Matrix = aug
        .into_iter()
        .filter(|r| is_zero(&r[..width]))
        .map(|r| r[width..].to_vec())
        .collect();
    rref(f, &mut ker);
    ker
}

/// Basis of `{x : m·x = 0}` for a matrix with `cols` columns.
pub fn right_kernel(f: &Field, m: &[Vector], cols: usize) -> Matrix {
    let t: Matrix = (0..cols).map(|c| m.iter().map(|row| row[c]).collect()).collect();
    left_kernel(f, &t)
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(f: &Field, m: &[Vector]) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend(unit(n, i));
            v
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A subspace of `F^n` with an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { ambient: n, basis: vec![], pivots: vec![] }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace { ambient: n, basis: identity(n), pivots: (0..n).collect() }
    }

    pub fn span(f: &Field, n: usize, vecs: impl IntoIterator<Item = Vector>) -> Subspace {
        let mut rows: Matrix = vecs.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        let pivots = rref(f, &mut rows);
        Subspace { ambient: n, basis: rows, pivots }
    }

    /// Span of the coordinate axes in `cols`.
    pub fn coordinate(n: usize, cols: impl IntoIterator<Item = usize>) -> Subspace {
        let mut cols: Vec<usize> = cols.into_iter().collect();
        cols.sort_unstable();
        cols.dedup();
        Subspace { ambient: n, basis: cols.iter().map(|&c| unit(n, c)).collect(), pivots: cols }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the basis: zero at every pivot column.
    pub fn reduce(&self, f: &Field, v: &[Elem]) -> Vector {
        let mut r = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let a = r[c];
            if a != 0 {
                axpy(f, &mut r, f.neg(a), row);
            }
        }
        r
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        is_zero(&self.reduce(f, v))
    }

    /// Coordinates with respect to the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, f: &Field, v: &[Elem]) -> Option<Vector> {
        self.contains(f, v).then(|| self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// `Σ c_i b_i` for coordinates `c`.
    pub fn combine(&self, f: &Field, coords: &[Elem]) -> Vector {
        vec_mat(f, coords, &self.basis, self.ambient)
    }

    pub fn contains_subspace(&self, f: &Field, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.basis.iter().all(|v| self.contains(f, v))
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Subspace {
        Subspace::span(f, self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn with_vector(&self, f: &Field, v: Vector) -> Subspace {
        Subspace::span(f, self.ambient, self.basis.iter().cloned().chain(std::iter::once(v)))
    }

    /// Intersection via the Zassenhaus sum–intersection algorithm.
    pub fn intersection(&self, f: &Field, other: &Subspace) -> Subspace {
        let n = self.ambient;
        let mut rows: Matrix = self
            .basis
            .iter()
            .map(|u| u.iter().chain(u.iter()).copied().collect())
            .chain(other.basis.iter().map(|w| w.iter().copied().chain(std::iter::repeat_n(0, n)).collect()))
            .collect();
        rref(f, &mut rows);
        Subspace::span(f, n, rows.into_iter().filter(|r| is_zero(&r[..n])).map(|r| r[n..].to_vec()))
    }

    /// Unit vectors at the non-pivot columns: a complement of the subspace.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut piv = self.pivots.iter().peekable();
        (0..self.ambient)
            .filter(|c| {
                if piv.peek() == Some(&c) {
                    piv.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Image under the linear map whose matrix has row `i` = image of `e_i`.
    pub fn image(&self, f: &Field, m: &[Vector], cols: usize) -> Subspace {
        Subspace::span(f, cols, self.basis.iter().map(|v| vec_mat(f, v, m, cols)))
    }

    /// All vectors of the subspace (q^dim of them), in coordinate index order.
    pub fn elements<'a>(&'a self, f: &'a Field) -> impl Iterator<Item = Vector> + 'a {
        let q = f.q();
        let total = (q as u64).pow(self.dim() as u32);
        (0..total).map(move |i| self.combine(f, &vector_from_index(q, self.dim(), i)))
    }

    /// Finest partition of the column groups such that the subspace is the
    /// direct sum of its intersections with the corresponding coordinate
    /// subspaces.  `group_of[c]` names the group of column `c`; groups whose
    /// columns the subspace never touches are returned as singletons.
    ///
    /// Uses the fact that for an RREF basis the connected components of the
    /// column matroid are the components of the graph joining each pivot to
    /// the non-pivot columns where its row is nonzero.
    pub fn split_by_groups(&self, group_of: &[usize]) -> Vec<Vec<usize>> {
        let ngroups = group_of.iter().copied().max().map_or(0, |g| g + 1);
        let mut parent: Vec<usize> = (0..ngroups).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let g0 = find(&mut parent, group_of[pc]);
            for (c, &a) in row.iter().enumerate() {
                if a != 0 {
                    let g = find(&mut parent, group_of[c]);
                    if g != g0 {
                        parent[g] = g0;
                    }
                }
            }
            // Re-root so later unions see the merged representative.
            let _ = find(&mut parent, group_of[pc]);
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for g in 0..ngroups {
            let r = find(&mut parent, g);
            comps.entry(r).or_default().push(g);
        }
        let mut out: Vec<Vec<usize>> = comps.into_values().collect();
        out.sort();
        out
    }
}

/// Incrementally built basis with an echelon shadow, used by closure loops.
///
/// Vectors are stored as inserted (so callers can attach provenance to them)
/// while a pivot-indexed echelon copy answers membership queries.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: Matrix,
    pivot_row: Vec<Option<usize>>,
    pivot_order: Vec<usize>,
}

impl Echelon {
    pub fn new(n: usize) -> Echelon {
        Echelon { n, rows: vec![], pivot_row: vec![None; n], pivot_order: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    fn reduce_in_place(&self, f: &Field, v: &mut [Elem]) {
        for c in 0..self.n {
            if v[c] != 0 {
                if let Some(r) = self.pivot_row[c] {
                    let a = f.neg(v[c]);
                    axpy(f, v, a, &self.rows[r]);
                }
            }
        }
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(f, &mut w);
        is_zero(&w)
    }

    /// Insert `v` if it is independent of the current span; report whether it was.
    pub fn insert(&mut self, f: &Field, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(f, &mut w);
        let Some(c) = w.iter().position(|&a| a != 0) else { return false };
        let inv = f.inv(w[c]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.pivot_order.push(c);
        self.rows.push(w);
        true
    }

    pub fn to_subspace(&self, f: &Field) -> Subspace {
        Subspace::span(f, self.n, self.rows.iter().cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn intersection_and_sum_dimensions() {
        let f = Field::new(3).unwrap();
        let u = Subspace::span(&f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(&f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersection(&f, &w);
        assert_eq!(i, Subspace::span(&f, 3, vec![vec![0, 1, 0]]));
        assert_eq!(u.sum(&f, &w), Subspace::full(3));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::new(5).unwrap();
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv, 2), identity(2));
        assert!(inverse(&f, &[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn split_by_groups_detects_diagonals() {
        let f = f2();
        // Columns grouped in pairs; vectors (1,0,1,0,0,0) and (0,0,0,0,1,1).
        let s = Subspace::span(&f, 6, vec![vec![1, 0, 1, 0, 0, 0], vec![0, 0, 0, 0, 1, 1]]);
        let parts = s.split_by_groups(&[0, 0, 1, 1, 2, 2]);
        assert_eq!(parts, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn projective_point_count() {
        let f = Field::new(3).unwrap();
        assert_eq!(projective_points(&f, 3).count(), 13);
    }

    fn arb_rows(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(prop::collection::vec(0u8..3, n), 0..5)
    }

    proptest! {
        #[test]
        fn dimension_formula(a in arb_rows(4), b in arb_rows(4)) {
            let f = Field::new(3).unwrap();
            let u = Subspace::span(&f, 4, a);
            let w = Subspace::span(&f, 4, b);
            let s = u.sum(&f, &w);
            let i = u.intersection(&f, &w);
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(u.contains_subspace(&f, &i) && w.contains_subspace(&f, &i));
            prop_assert!(s.contains_subspace(&f, &u) && s.contains_subspace(&f, &w));
        }

        #[test]
        fn kernel_is_annihilated(a in arb_rows(3)) {
            let f = Field::new(3).unwrap();
            for x in left_kernel(&f, &a) {
                prop_assert!(is_zero(&vec_mat(&f, &x, &a, 3)));
            }
            prop_assert_eq!(left_kernel(&f, &a).len() + rank(&f, &a), a.len());
        }

        #[test]
        fn echelon_agrees_with_span(a in arb_rows(5)) {
            let f = Field::new(3).unwrap();
            let mut e = Echelon::new(5);
            for v in &a { e.insert(&f, v); }
            prop_assert_eq!(e.to_subspace(&f), Subspace::span(&f, 5, a));
        }
    }
}
