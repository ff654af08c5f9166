//! Finite-dimensional algebras given by structure constants, and the
//! subspace-level operations built on them: closures, quotients, the power,
//! depth, commutator, annihilator and socle series, ideal and subalgebra
//! lattices, minimal ideals and chief series.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, axpy, unit, Echelon, Matrix, Subspace, Vector};

/// Anything with a bilinear product on `F^dim`.
pub trait Bilinear {
    fn field(&self) -> &Field;
    fn dim(&self) -> usize;
    fn mul(&self, u: &[Elem], v: &[Elem]) -> Vector;
}

/// Provenance of a basis vector produced by a closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Node {
    /// The `i`-th generator.
    Gen(usize),
    /// The product of closure vectors `s` and `t`, in that order.
    Prod(usize, usize),
}

/// Result of closing a generating set under multiplication.
#[derive(Clone, Debug)]
pub struct Closure {
    /// Basis vectors in order of discovery (not reduced).
    pub vecs: Matrix,
    /// How each basis vector arose.
    pub nodes: Vec<Node>,
    /// `prefix[k]` = number of basis vectors spanning the subalgebra generated by the first `k + 1` generators.
    pub prefix: Vec<usize>,
    pub span: Subspace,
}

/// Close `gens` under the product of `p`, generator by generator.
///
/// Every surviving vector is either a generator or the product of two
/// earlier basis vectors, so the `nodes` list is a straight-line program
/// for the basis.  Stops early once the span is the whole space.
pub fn closure<P: Bilinear + ?Sized>(p: &P, gens: &[Vector]) -> Closure {
    let f = p.field().clone();
    let mut ech = Echelon::new(p.dim());
    let mut vecs: Matrix = vec![];
    let mut nodes = vec![];
    let mut prefix = vec![];
    // Invariant: all products among vecs[..k] have been inserted.
    let mut k = 0;
    for (gi, g) in gens.iter().enumerate() {
        if !ech.is_full() && ech.insert(&f, g) {
            vecs.push(g.clone());
            nodes.push(Node::Gen(gi));
        }
        while k < vecs.len() && !ech.is_full() {
            for j in 0..=k {
                for (s, t) in [(j, k), (k, j)] {
                    let w = p.mul(&vecs[s], &vecs[t]);
                    if ech.insert(&f, &w) {
                        vecs.push(w);
                        nodes.push(Node::Prod(s, t));
                    }
                    if s == t {
                        break;
                    }
                }
            }
            k += 1;
        }
        prefix.push(vecs.len());
    }
    let span = ech.to_subspace(&f);
    Closure { vecs, nodes, prefix, span }
}

/// `U·V = span{u v}`.
pub fn product_space<P: Bilinear + ?Sized>(p: &P, u: &Subspace, v: &Subspace) -> Subspace {
    let f = p.field();
    let mut e = Echelon::new(p.dim());
    'outer: for a in u.basis() {
        for b in v.basis() {
            e.insert(f, &p.mul(a, b));
            if e.is_full() {
                break 'outer;
            }
        }
    }
    e.to_subspace(f)
}

/// Smallest subspace containing `seed` and closed under multiplication on
/// either side by elements of `container`.
pub fn ideal_closure_in<P: Bilinear + ?Sized>(p: &P, container: &Subspace, seed: &Subspace) -> Subspace {
    let f = p.field().clone();
    let mut ech = Echelon::new(p.dim());
    let mut queue: VecDeque<Vector> = VecDeque::new();
    for v in seed.basis() {
        if ech.insert(&f, v) {
            queue.push_back(v.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for b in container.basis() {
            for w in [p.mul(b, &v), p.mul(&v, b)] {
                if ech.insert(&f, &w) {
                    queue.push_back(w);
                }
            }
        }
    }
    ech.to_subspace(&f)
}

/// A subspace closed under `p`, as an algebra in its RREF basis.
pub fn restrict_bilinear<P: Bilinear + ?Sized>(p: &P, s: &Subspace) -> Result<Algebra> {
    let f = p.field();
    let b = s.basis();
    let mut table = Vec::with_capacity(b.len().pow(3));
    for x in b {
        for y in b {
            let w = p.mul(x, y);
            table.extend(s.coordinates(f, &w).ok_or_else(|| Error::domain("subspace is not closed under multiplication"))?);
        }
    }
    Algebra::new(f.clone(), b.len(), table)
}

pub fn is_subalgebra<P: Bilinear + ?Sized>(p: &P, s: &Subspace) -> bool {
    let f = p.field();
    s.basis().iter().all(|a| s.basis().iter().all(|b| s.contains(f, &p.mul(a, b))))
}

/// The structure constants `c[i][j][l]` with `e_i e_j = Σ_l c_ij^l e_l`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    table: Vec<Elem>,
}

/// Serialized form: `table[i][j]` is the coordinate vector of `e_i e_j`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AlgebraJson {
    pub q: usize,
    pub p: u32,
    pub k: u32,
    pub dim: usize,
    pub table: Vec<Vec<Vec<u32>>>,
}

impl Bilinear for Algebra {
    fn field(&self) -> &Field {
        &self.field
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn mul(&self, u: &[Elem], v: &[Elem]) -> Vector {
        let m = self.dim;
        let f = &self.field;
        let mut out = vec![0; m];
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj == 0 {
                    continue;
                }
                axpy(f, &mut out, f.mul(ui, vj), self.basis_product(i, j));
            }
        }
        out
    }
}

impl Algebra {
    /// Build from a flat tensor indexed `(i·dim + j)·dim + l`.
    pub fn new(field: Field, dim: usize, table: Vec<Elem>) -> Result<Algebra> {
        if table.len() != dim * dim * dim {
            return Err(Error::domain(format!("tensor of length {} does not fit dimension {dim}", table.len())));
        }
        if let Some(&bad) = table.iter().find(|&&a| !field.contains(a as u32)) {
            return Err(Error::domain(format!("entry {bad} is not an element of GF({})", field.q())));
        }
        Ok(Algebra { field, dim, table })
    }

    /// Build from a function giving the coordinate vector of `e_i e_j`.
    pub fn from_fn(field: Field, dim: usize, mut prod: impl FnMut(usize, usize) -> Vector) -> Algebra {
        let mut table = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = prod(i, j);
                assert_eq!(v.len(), dim);
                table.extend(v);
            }
        }
        Algebra { field, dim, table }
    }

    /// Build from any bilinear product by tabulating it on unit vectors.
    pub fn tabulate<P: Bilinear + ?Sized>(p: &P) -> Algebra {
        let n = p.dim();
        Algebra::from_fn(p.field().clone(), n, |i, j| p.mul(&unit(n, i), &unit(n, j)))
    }

    /// The algebra of dimension `dim` with zero multiplication.
    pub fn zero(field: Field, dim: usize) -> Algebra {
        Algebra { field, dim, table: vec![0; dim * dim * dim] }
    }

    pub fn tensor(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[Elem] {
        let m = self.dim;
        &self.table[(i * m + j) * m..(i * m + j + 1) * m]
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            q: self.field.q(),
            p: self.field.p(),
            k: self.field.k(),
            dim: self.dim,
            table: (0..self.dim)
                .map(|i| {
                    (0..self.dim).map(|j| self.basis_product(i, j).iter().map(|&a| a as u32).collect()).collect()
                })
                .collect(),
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Algebra> {
        let field = Field::from_parts(j.q, j.p, j.k)?;
        let m = j.dim;
        if j.table.len() != m || j.table.iter().any(|r| r.len() != m || r.iter().any(|v| v.len() != m)) {
            return Err(Error::domain(format!("table shape does not match dim = {m}")));
        }
        let mut table = Vec::with_capacity(m * m * m);
        for row in &j.table {
            for v in row {
                for &a in v {
                    if !field.contains(a) {
                        return Err(Error::domain(format!("entry {a} is not an element of GF({})", j.q)));
                    }
                    table.push(a as Elem);
                }
            }
        }
        Algebra::new(field, m, table)
    }

    pub fn from_json_str(s: &str) -> Result<Algebra> {
        Algebra::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Algebra> {
        Algebra::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.dim)
    }

    pub fn span(&self, vecs: impl IntoIterator<Item = Vector>) -> Subspace {
        Subspace::span(&self.field, self.dim, vecs)
    }

    /// Number of elements, saturating.
    pub fn order(&self) -> u128 {
        caps::pow_sat(self.field.q() as u128, self.dim as u128)
    }

    /// All elements in index order (cap-checked).
    pub fn elements(&self) -> Result<Vec<Vector>> {
        let n = self.order();
        caps::check("element enumeration", n, caps::current().subspaces as u128)?;
        Ok((0..n as u64).map(|i| linalg::vector_from_index(self.field.q(), self.dim, i)).collect())
    }

    /// Nonzero vectors up to scalars (cap-checked on q^dim).
    pub fn points(&self) -> Result<Vec<Vector>> {
        caps::check("vector enumeration", self.order(), caps::current().subspaces as u128)?;
        Ok(linalg::projective_points(&self.field, self.dim).collect())
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.table.iter().all(|&a| a == 0)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn is_associative(&self) -> bool {
        let m = self.dim;
        (0..m).all(|i| {
            (0..m).all(|j| {
                (0..m).all(|k| {
                    let (ei, ej, ek) = (unit(m, i), unit(m, j), unit(m, k));
                    self.mul(&self.mul(&ei, &ej), &ek) == self.mul(&ei, &self.mul(&ej, &ek))
                })
            })
        })
    }

    /// Matrix of `x ↦ a x` (row `i` is `a e_i`).
    pub fn left_mult(&self, a: &[Elem]) -> Matrix {
        (0..self.dim).map(|i| self.mul(a, &unit(self.dim, i))).collect()
    }

    /// Matrix of `x ↦ x a` (row `i` is `e_i a`).
    pub fn right_mult(&self, a: &[Elem]) -> Matrix {
        (0..self.dim).map(|i| self.mul(&unit(self.dim, i), a)).collect()
    }

    pub fn product(&self, u: &Subspace, v: &Subspace) -> Subspace {
        product_space(self, u, v)
    }

    pub fn square(&self, u: &Subspace) -> Subspace {
        product_space(self, u, u)
    }

    pub fn ideal_closure(&self, seed: &Subspace) -> Subspace {
        ideal_closure_in(self, &self.full(), seed)
    }

    pub fn principal_ideal(&self, v: &[Elem]) -> Subspace {
        self.ideal_closure(&self.span([v.to_vec()]))
    }

    pub fn subalgebra_generated(&self, gens: &[Vector]) -> Subspace {
        closure(self, gens).span
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        is_subalgebra(self, s)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let f = &self.field;
        s.basis().iter().all(|v| {
            (0..self.dim).all(|j| {
                let e = unit(self.dim, j);
                s.contains(f, &self.mul(v, &e)) && s.contains(f, &self.mul(&e, v))
            })
        })
    }

    /// The subalgebra `s` as an algebra in its RREF basis.
    pub fn restrict(&self, s: &Subspace) -> Result<Algebra> {
        restrict_bilinear(self, s)
    }

    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(ideal) {
            return Err(Error::domain("quotient by a subspace that is not an ideal"));
        }
        Ok(Quotient::new(self, ideal.clone()))
    }

    /// Direct sum with componentwise product, summands concatenated in order.
    pub fn direct_sum(parts: &[&Algebra]) -> Result<Algebra> {
        let field = parts.first().map(|a| a.field.clone()).unwrap_or(Field::new(2)?);
        if parts.iter().any(|a| a.field != field) {
            return Err(Error::domain("direct sum of algebras over different fields"));
        }
        let offs: Vec<usize> = parts
            .iter()
            .scan(0, |acc, a| {
                let o = *acc;
                *acc += a.dim;
                Some(o)
            })
            .collect();
        let n: usize = parts.iter().map(|a| a.dim).sum();
        let which = |i: usize| offs.iter().rposition(|&o| o <= i).unwrap();
        Ok(Algebra::from_fn(field, n, |i, j| {
            let (a, b) = (which(i), which(j));
            let mut v = vec![0; n];
            if a == b {
                let alg = parts[a];
                let o = offs[a];
                v[o..o + alg.dim].copy_from_slice(alg.basis_product(i - o, j - o));
            }
            v
        }))
    }

    pub fn direct_power(&self, k: usize) -> Algebra {
        let parts: Vec<&Algebra> = std::iter::repeat_n(self, k).collect();
        if k == 0 {
            return Algebra::zero(self.field.clone(), 0);
        }
        Algebra::direct_sum(&parts).expect("same field")
    }

    /// Apply the basis change whose row `i` is the new `e'_i` in old coordinates.
    pub fn change_basis(&self, g: &[Vector]) -> Result<Algebra> {
        let ginv = linalg::inverse(&self.field, g).ok_or_else(|| Error::domain("basis change is singular"))?;
        let m = self.dim;
        Ok(Algebra::from_fn(self.field.clone(), m, |i, j| {
            let w = self.mul(&g[i], &g[j]);
            linalg::vec_mat(&self.field, &w, &ginv, m)
        }))
    }

    // ----- series -----

    /// `A^1 = A`, `A^k = Σ_{s+t=k} A^s A^t`.  For nilpotent algebras the list
    /// ends with the first zero term; otherwise it holds the first `dim + 1` terms.
    pub fn power_series(&self) -> Vec<Subspace> {
        let limit = if self.is_nilpotent() { usize::MAX } else { self.dim + 1 };
        let f = &self.field;
        let mut terms = vec![self.full()];
        while !terms.last().unwrap().is_zero() && terms.len() < limit {
            let k = terms.len() + 1;
            let acc = (1..k).fold(self.zero_space(), |acc, s| {
                acc.sum(f, &self.product(&terms[s - 1], &terms[k - s - 1]))
            });
            terms.push(acc);
        }
        terms
    }

    /// `A(0) = A`, `A(i) = A·A(i-1) + A(i-1)·A + A(i-1)·A(i-1)`, until zero or stable.
    pub fn depth_series(&self) -> Vec<Subspace> {
        let f = &self.field;
        let full = self.full();
        let mut terms = vec![full.clone()];
        loop {
            let prev = terms.last().unwrap();
            if prev.is_zero() {
                break;
            }
            let next = self
                .product(&full, prev)
                .sum(f, &self.product(prev, &full))
                .sum(f, &self.product(prev, prev));
            if &next == prev {
                break;
            }
            terms.push(next);
        }
        terms
    }

    /// `A^(1) = A`, `A^(k+1) = (A^(k))²`, until zero or stable.
    pub fn commutator_series(&self) -> Vec<Subspace> {
        let mut terms = vec![self.full()];
        loop {
            let prev = terms.last().unwrap();
            if prev.is_zero() {
                break;
            }
            let next = self.square(prev);
            if &next == prev {
                break;
            }
            terms.push(next);
        }
        terms
    }

    /// `Z_0 = 0`, `Z_{i+1} = {a : aA + Aa ⊆ Z_i}`, until stable.
    pub fn upper_annihilator_series(&self) -> Vec<Subspace> {
        let m = self.dim;
        let f = &self.field;
        let mut terms = vec![self.zero_space()];
        loop {
            let z = terms.last().unwrap();
            let rows: Matrix = (0..m)
                .map(|a| {
                    let ea = unit(m, a);
                    let mut r = Vec::with_capacity(2 * m * m);
                    for j in 0..m {
                        let ej = unit(m, j);
                        r.extend(z.reduce(f, &self.mul(&ea, &ej)));
                        r.extend(z.reduce(f, &self.mul(&ej, &ea)));
                    }
                    r
                })
                .collect();
            let next = if m == 0 { self.zero_space() } else { self.span(linalg::left_kernel(f, &rows)) };
            if &next == z {
                break;
            }
            terms.push(next);
        }
        terms
    }

    /// `Ann(A) = {a : aA = Aa = 0}`.
    pub fn annihilator(&self) -> Subspace {
        self.upper_annihilator_series().get(1).cloned().unwrap_or_else(|| self.zero_space())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.depth_series().last().unwrap().is_zero()
    }

    /// Least `c ≥ 1` with `A^{c+1} = 0`.
    pub fn nilpotency_class(&self) -> Option<usize> {
        if !self.is_nilpotent() {
            return None;
        }
        let s = self.power_series();
        // s[k-1] = A^k; the last entry is zero.
        Some((s.len() - 1).max(1))
    }

    /// Least `d` with `A(d) = 0`.
    pub fn depth(&self) -> Option<usize> {
        let s = self.depth_series();
        s.last().unwrap().is_zero().then(|| s.len() - 1)
    }

    pub fn is_solvable(&self) -> bool {
        self.commutator_series().last().unwrap().is_zero()
    }

    /// Least `ℓ ≥ 1` with `A^(ℓ+1) = 0`.
    pub fn solvable_length(&self) -> Option<usize> {
        let s = self.commutator_series();
        s.last().unwrap().is_zero().then(|| (s.len() - 1).max(1))
    }

    // ----- lattices -----

    /// Distinct principal ideals, sorted.
    pub fn principal_ideals(&self) -> Result<Vec<Subspace>> {
        let set: BTreeSet<Subspace> = self.points()?.iter().map(|v| self.principal_ideal(v)).collect();
        Ok(set.into_iter().collect())
    }

    /// All ideals (sums of principal ideals), sorted by dimension then basis.
    pub fn ideals(&self) -> Result<Vec<Subspace>> {
        let principal = self.principal_ideals()?;
        let f = &self.field;
        let mut seen: HashSet<Subspace> = HashSet::new();
        let mut queue = VecDeque::from([self.zero_space()]);
        seen.insert(self.zero_space());
        let limit = caps::current().enumeration as usize;
        while let Some(i) = queue.pop_front() {
            for p in &principal {
                if i.contains_subspace(f, p) {
                    continue;
                }
                let s = i.sum(f, p);
                if seen.insert(s.clone()) {
                    if seen.len() > limit {
                        return Err(Error::cap("ideal lattice", seen.len() as u128, limit as u128));
                    }
                    queue.push_back(s);
                }
            }
        }
        let mut out: Vec<Subspace> = seen.into_iter().collect();
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Minimal (nonzero) ideals, sorted.
    pub fn minimal_ideals(&self) -> Result<Vec<Subspace>> {
        let principal = self.principal_ideals()?;
        let f = &self.field;
        Ok(principal
            .iter()
            .filter(|p| !principal.iter().any(|o| o != *p && o.dim() < p.dim() && p.contains_subspace(f, o)))
            .cloned()
            .collect())
    }

    /// All subalgebras, sorted by dimension then basis.
    pub fn subalgebras(&self) -> Result<Vec<Subspace>> {
        let points = self.points()?;
        let f = &self.field;
        let mut seen: HashSet<Subspace> = HashSet::new();
        let mut queue = VecDeque::from([self.zero_space()]);
        seen.insert(self.zero_space());
        let limit = caps::current().enumeration as u128;
        let mut work: u128 = 0;
        while let Some(s) = queue.pop_front() {
            for v in &points {
                if s.contains(f, v) {
                    continue;
                }
                work += 1;
                if work > limit {
                    return Err(Error::cap("subalgebra lattice", work, limit));
                }
                let mut gens: Vec<Vector> = s.basis().to_vec();
                gens.push(v.clone());
                let t = self.subalgebra_generated(&gens);
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<Subspace> = seen.into_iter().collect();
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// `A² ≠ 0` and no ideals besides `0` and `A`.
    pub fn is_simple(&self) -> Result<bool> {
        if self.dim == 0 || self.is_zero_algebra() {
            return Ok(false);
        }
        let full = self.full();
        for v in self.points()? {
            if self.principal_ideal(&v) != full {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `A² ≠ 0` and no subalgebras besides `0` and `A`.
    pub fn is_minimal(&self) -> Result<bool> {
        if self.dim == 0 || self.is_zero_algebra() {
            return Ok(false);
        }
        let full = self.full();
        for v in self.points()? {
            if self.subalgebra_generated(&[v]) != full {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generated by a single element.
    pub fn is_cyclic(&self) -> Result<bool> {
        if self.dim == 0 {
            return Ok(true);
        }
        let full = self.full();
        Ok(self.points()?.iter().any(|v| self.subalgebra_generated(std::slice::from_ref(v)) == full))
    }

    /// Sum of the minimal ideals.
    pub fn socle(&self) -> Result<Subspace> {
        let f = &self.field;
        Ok(self.minimal_ideals()?.iter().fold(self.zero_space(), |acc, m| acc.sum(f, m)))
    }

    /// `S_0 = 0`, `S_{i+1}/S_i = soc(A/S_i)`, ending at `A`.
    pub fn socle_series(&self) -> Result<Vec<Subspace>> {
        let mut terms = vec![self.zero_space()];
        while !terms.last().unwrap().is_full() {
            let s = terms.last().unwrap().clone();
            let quot = Quotient::new(self, s);
            let soc = quot.algebra.socle()?;
            terms.push(quot.preimage(&soc));
        }
        Ok(terms)
    }

    /// Number of nontrivial steps of the socle series.
    pub fn socle_height(&self) -> Result<usize> {
        Ok(self.socle_series()?.len() - 1)
    }

    /// Ascending chief series `0 = J_0 ⊂ … ⊂ J_r = A`, each step adding the
    /// lexicographically least minimal ideal of the current quotient.
    pub fn chief_series(&self) -> Result<Vec<Subspace>> {
        let mut terms = vec![self.zero_space()];
        while !terms.last().unwrap().is_full() {
            let quot = Quotient::new(self, terms.last().unwrap().clone());
            let mins = quot.algebra.minimal_ideals()?;
            let least = mins.into_iter().next().expect("nonzero algebras have minimal ideals");
            terms.push(quot.preimage(&least));
        }
        Ok(terms)
    }

    /// Every chief factor is one-dimensional with zero multiplication.
    pub fn is_supersolvable(&self) -> Result<bool> {
        let f = &self.field;
        let series = self.chief_series()?;
        Ok(series.windows(2).all(|w| w[1].dim() == w[0].dim() + 1 && w[0].contains_subspace(f, &self.square(&w[1]))))
    }

    /// Dimensions of the chief factors.
    pub fn chief_factor_dims(&self) -> Result<Vec<usize>> {
        Ok(self.chief_series()?.windows(2).map(|w| w[1].dim() - w[0].dim()).collect())
    }
}

/// `A/I` with basis the images of the unit vectors at the non-pivot columns of `I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    pub ideal: Subspace,
    /// Column of `A` lifted by each quotient basis vector.
    pub lift_cols: Vec<usize>,
    parent_dim: usize,
}

impl Quotient {
    fn new(a: &Algebra, ideal: Subspace) -> Quotient {
        let f = a.field.clone();
        let cols = ideal.complement_columns();
        let n = a.dim;
        let algebra = Algebra::from_fn(f.clone(), cols.len(), |i, j| {
            let w = a.mul(&unit(n, cols[i]), &unit(n, cols[j]));
            let r = ideal.reduce(&f, &w);
            cols.iter().map(|&c| r[c]).collect()
        });
        Quotient { algebra, ideal, lift_cols: cols, parent_dim: n }
    }

    /// Image of `v ∈ A` in the quotient.
    pub fn project(&self, v: &[Elem]) -> Vector {
        let r = self.ideal.reduce(self.algebra.field(), v);
        self.lift_cols.iter().map(|&c| r[c]).collect()
    }

    /// The coset representative supported on the complement columns.
    pub fn lift(&self, w: &[Elem]) -> Vector {
        let mut v = vec![0; self.parent_dim];
        for (&c, &a) in self.lift_cols.iter().zip(w) {
            v[c] = a;
        }
        v
    }

    /// Full preimage in `A` of a subspace of the quotient.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let f = self.algebra.field();
        Subspace::span(
            f,
            self.parent_dim,
            s.basis().iter().map(|w| self.lift(w)).chain(self.ideal.basis().iter().cloned()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn json_roundtrip() {
        let a = examples::eminvar();
        let b = Algebra::from_json_str(&a.to_json_string()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_rejects_bad_entries() {
        let s = r#"{"q":2,"p":2,"k":1,"dim":1,"table":[[[2]]]}"#;
        assert!(Algebra::from_json_str(s).is_err());
        let s = r#"{"q":4,"p":2,"k":1,"dim":1,"table":[[[1]]]}"#;
        assert!(Algebra::from_json_str(s).is_err());
    }

    #[test]
    fn n2_series() {
        let a = examples::n2();
        assert_eq!(a.nilpotency_class(), Some(2));
        assert_eq!(a.depth(), Some(2));
        assert_eq!(a.solvable_length(), Some(2));
        assert_eq!(a.socle_height().unwrap(), 2);
        assert_eq!(a.annihilator(), a.span([vec![0, 1]]));
    }

    #[test]
    fn zero_algebra_conventions() {
        let f = Field::new(3).unwrap();
        for m in [0, 1, 3] {
            let z = Algebra::zero(f.clone(), m);
            assert_eq!(z.nilpotency_class(), Some(1));
            assert_eq!(z.solvable_length(), Some(1));
            assert_eq!(z.depth(), Some(if m == 0 { 0 } else { 1 }));
        }
    }

    #[test]
    fn eminvar_is_minimal_and_simple() {
        let a = examples::eminvar();
        assert!(a.is_minimal().unwrap());
        assert!(a.is_simple().unwrap());
        assert!(!a.is_nilpotent());
        assert!(!a.is_solvable());
    }

    #[test]
    fn evsa_subalgebras() {
        let a = examples::evsa();
        let subs = a.subalgebras().unwrap();
        assert_eq!(subs.len(), 5);
        assert!(a.is_simple().unwrap());
        assert!(a.is_commutative());
    }

    #[test]
    fn solvable3_structure() {
        let a = examples::solvable3();
        assert_eq!(a.solvable_length(), Some(3));
        assert!(!a.is_nilpotent());
        let c = a.span([vec![0, 0, 1]]);
        assert!(!a.is_ideal(&c));
    }

    #[test]
    fn quotient_and_preimage() {
        let a = examples::n2();
        let i = a.span([vec![0, 1]]);
        let q = a.quotient(&i).unwrap();
        assert_eq!(q.algebra, Algebra::zero(a.field().clone(), 1));
        assert_eq!(q.preimage(&q.algebra.full()), a.full());
        assert!(a.quotient(&a.span([vec![1, 0]])).is_err());
    }

    #[test]
    fn closure_prefixes_span_partial_subalgebras() {
        let a = examples::evsa();
        let c = closure(&a, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(c.prefix, vec![1, 2]);
        assert_eq!(c.span, a.full());
    }

    #[test]
    fn direct_sum_is_componentwise() {
        let a = examples::eminvar();
        let d = a.direct_power(2);
        assert_eq!(d.mul(&[1, 0, 0, 0], &[1, 0, 0, 0]), vec![0, 1, 0, 0]);
        assert_eq!(d.mul(&[1, 0, 0, 0], &[0, 0, 1, 0]), vec![0, 0, 0, 0]);
        assert_eq!(d.minimal_ideals().unwrap().len(), 2);
    }
}
