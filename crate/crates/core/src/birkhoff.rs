//! Relatively free algebras of the variety generated by a finite algebra.
//!
//! For a finite algebra `A` and rank `n`, the Birkhoff algebra `B_n(A)` is
//! the direct power of `A` indexed by the nonzero maps `φ: {x_1..x_n} → A`;
//! the elements `x̄_i(φ) = φ(x_i)` generate a copy of the free algebra
//! `F_n` of the variety generated by `A`.  Evaluating at `φ` is then just the
//! projection onto the `φ`-component, which makes kernels, supports and
//! decompositions plain linear algebra on coordinates.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{closure, product_space, restrict_bilinear, Algebra, Bilinear, Closure, Node};
use crate::caps;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::morphisms;
use crate::poly::Monomial;

/// The direct power `A^Φ` with componentwise product (never tabulated).
#[derive(Clone, Debug)]
pub struct BirkhoffAmbient {
    pub base: Algebra,
    pub rank: usize,
    /// The nonzero maps `φ`, as tuples `(φ(x_1), …, φ(x_n))` of elements of `A`.
    pub points: Vec<Vec<Vector>>,
}

impl Bilinear for BirkhoffAmbient {
    fn field(&self) -> &Field {
        self.base.field()
    }
    fn dim(&self) -> usize {
        self.points.len() * self.base.dim()
    }
    fn mul(&self, u: &[Elem], v: &[Elem]) -> Vector {
        let m = self.base.dim();
        let mut out = vec![0; u.len()];
        for b in 0..self.points.len() {
            let (ub, vb) = (&u[b * m..(b + 1) * m], &v[b * m..(b + 1) * m]);
            if linalg::is_zero(ub) || linalg::is_zero(vb) {
                continue;
            }
            out[b * m..(b + 1) * m].copy_from_slice(&self.base.mul(ub, vb));
        }
        out
    }
}

impl BirkhoffAmbient {
    /// `B_n(A)`; its dimension `dim A · (|A|^n − 1)` must respect the ambient cap.
    pub fn new(base: &Algebra, rank: usize) -> Result<BirkhoffAmbient> {
        let order = base.order();
        let count = caps::pow_sat(order, rank as u128).saturating_sub(1);
        let dim = count.saturating_mul(base.dim() as u128);
        caps::check("Birkhoff ambient dimension", dim, caps::current().ambient as u128)?;
        let elems = base.elements()?;
        let points = (1..=count as u64)
            .map(|idx| {
                let digits = linalg::vector_from_index(order as usize, rank, idx);
                digits.iter().map(|&d| elems[d as usize].clone()).collect()
            })
            .collect();
        Ok(BirkhoffAmbient { base: base.clone(), rank, points })
    }

    /// `x̄_i` for `i = 0..n`.
    pub fn generators(&self) -> Matrix {
        let m = self.base.dim();
        (0..self.rank)
            .map(|i| {
                let mut v = vec![0; self.dim()];
                for (b, phi) in self.points.iter().enumerate() {
                    v[b * m..(b + 1) * m].copy_from_slice(&phi[i]);
                }
                v
            })
            .collect()
    }

    /// The `φ`-component of `v`.
    pub fn component<'a>(&self, v: &'a [Elem], point: usize) -> &'a [Elem] {
        let m = self.base.dim();
        &v[point * m..(point + 1) * m]
    }

    /// Coordinate group (point index) of each ambient column.
    pub fn column_groups(&self) -> Vec<usize> {
        let m = self.base.dim().max(1);
        (0..self.dim()).map(|c| c / m).collect()
    }

    /// Span of the coordinates belonging to the given points.
    pub fn coordinate_space(&self, points: impl IntoIterator<Item = usize>) -> Subspace {
        let m = self.base.dim();
        Subspace::coordinate(self.dim(), points.into_iter().flat_map(|p| p * m..(p + 1) * m))
    }
}

/// `F_n` realised inside `B_n(A)`.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub ambient: BirkhoffAmbient,
    pub gens: Matrix,
    pub closure: Closure,
}

/// A summand of `F_n` supported on a set of Birkhoff coordinates.
#[derive(Clone, Debug)]
pub struct Block {
    pub points: Vec<usize>,
    pub space: Subspace,
}

impl FreeAlgebra {
    pub fn new(base: &Algebra, rank: usize) -> Result<FreeAlgebra> {
        let ambient = BirkhoffAmbient::new(base, rank)?;
        let gens = ambient.generators();
        let closure = closure(&ambient, &gens);
        Ok(FreeAlgebra { ambient, gens, closure })
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank
    }

    pub fn dim(&self) -> usize {
        self.closure.span.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.closure.span
    }

    pub fn field(&self) -> &Field {
        self.ambient.field()
    }

    /// The monomial in `x_1..x_n` whose value is the `k`-th closure vector.
    pub fn witness(&self, k: usize) -> Monomial {
        match self.closure.nodes[k] {
            Node::Gen(i) => Monomial::var(i),
            Node::Prod(s, t) => Monomial::prod(self.witness(s), self.witness(t)),
        }
    }

    /// Degrees of the witness monomials, in closure order.
    pub fn witness_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.closure.nodes.len()];
        for (k, n) in self.closure.nodes.iter().enumerate() {
            deg[k] = match *n {
                Node::Gen(_) => 1,
                Node::Prod(s, t) => deg[s] + deg[t],
            };
        }
        deg
    }

    /// `F_n` tabulated in the RREF basis of its span, with the generators'
    /// coordinates in that basis.
    pub fn materialize(&self) -> Result<(Algebra, Matrix)> {
        let d = self.dim() as u128;
        caps::check("materialized free algebra (dim³ constants)", d * d * d, caps::current().enumeration as u128)?;
        let alg = restrict_bilinear(&self.ambient, self.space())?;
        let f = self.field();
        let gens = self.gens.iter().map(|g| self.space().coordinates(f, g).expect("generator in span")).collect();
        Ok((alg, gens))
    }

    /// Finest decomposition of `F_n` into summands with disjoint Birkhoff
    /// supports.  Each block is an ideal, and `F_n` is their direct product.
    pub fn blocks(&self) -> Vec<Block> {
        let f = self.field();
        let space = self.space();
        space
            .split_by_groups(&self.ambient.column_groups())
            .into_iter()
            .filter_map(|points| {
                let s = space.intersection(f, &self.ambient.coordinate_space(points.iter().copied()));
                (!s.is_zero()).then_some(Block { points, space: s })
            })
            .collect()
    }

    pub fn block_algebra(&self, b: &Block) -> Result<Algebra> {
        restrict_bilinear(&self.ambient, &b.space)
    }

    /// `F_n²`.
    pub fn square(&self) -> Subspace {
        product_space(&self.ambient, self.space(), self.space())
    }
}

/// `dim F_n(var A)`.
pub fn free_dimension(a: &Algebra, n: usize) -> Result<usize> {
    Ok(FreeAlgebra::new(a, n)?.dim())
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalDecomposition {
    pub rank: usize,
    pub base_dim: usize,
    pub dim: usize,
    pub summands: usize,
    /// `(|A|^n − 1) / |Aut A|`.
    pub expected: usize,
    pub aut_order: usize,
    /// Every summand was found isomorphic to `A`.
    pub all_isomorphic: bool,
}

impl MinimalDecomposition {
    pub fn ok(&self) -> bool {
        self.all_isomorphic && self.summands == self.expected && self.dim == self.summands * self.base_dim
    }
}

/// For a minimal algebra `A`, split `F_n` into summands and check each is `≅ A`.
pub fn decompose_free_minimal(a: &Algebra, n: usize) -> Result<MinimalDecomposition> {
    if !a.is_minimal()? {
        return Err(Error::domain("the algebra is not minimal"));
    }
    let free = FreeAlgebra::new(a, n)?;
    let aut = morphisms::automorphism_group(a)?;
    let blocks = free.blocks();
    let mut all_iso = blocks.iter().map(|b| b.space.dim()).sum::<usize>() == free.dim();
    for b in &blocks {
        let alg = free.block_algebra(b)?;
        all_iso &= morphisms::are_isomorphic(&alg, a)?;
    }
    let count = caps::pow_sat(a.order(), n as u128) - 1;
    Ok(MinimalDecomposition {
        rank: n,
        base_dim: a.dim(),
        dim: free.dim(),
        summands: blocks.len(),
        expected: (count / aut.order as u128) as usize,
        aut_order: aut.order,
        all_isomorphic: all_iso,
    })
}

/// Direct pair `X × Y` with componentwise product.
struct Pair<'a, X: ?Sized, Y: ?Sized> {
    x: &'a X,
    y: &'a Y,
}

impl<X: Bilinear + ?Sized, Y: Bilinear + ?Sized> Bilinear for Pair<'_, X, Y> {
    fn field(&self) -> &Field {
        self.x.field()
    }
    fn dim(&self) -> usize {
        self.x.dim() + self.y.dim()
    }
    fn mul(&self, u: &[Elem], v: &[Elem]) -> Vector {
        let k = self.x.dim();
        let mut out = self.x.mul(&u[..k], &v[..k]);
        out.extend(self.y.mul(&u[k..], &v[k..]));
        out
    }
}

/// Whether the algebra `b`, generated by `gens`, lies in the variety
/// generated by `a`: the subalgebra of `B_n(A) × B` generated by the pairs
/// `(x̄_i, b_i)` must meet `0 × B` trivially, i.e. be the graph of a map.
pub fn in_variety(b: &Algebra, gens: &[Vector], a: &Algebra) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::domain("algebras over different fields"));
    }
    if !b.subalgebra_generated(gens).is_full() {
        return Err(Error::domain("the given elements do not generate the algebra"));
    }
    let amb = BirkhoffAmbient::new(a, gens.len())?;
    let xs = amb.generators();
    let pair = Pair { x: &amb, y: b };
    let pairs: Matrix = xs.iter().zip(gens).map(|(x, g)| x.iter().chain(g).copied().collect()).collect();
    let cl = closure(&pair, &pairs);
    let k = amb.dim();
    let proj: Matrix = cl.vecs.iter().map(|v| v[..k].to_vec()).collect();
    Ok(linalg::rank(a.field(), &proj) == cl.vecs.len())
}

/// `d(n)` for `n = 1..=n_max` and the content components `d_k` defined by
/// `d(n) = Σ_k C(n, k) d_k`.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionTable {
    pub d: Vec<usize>,
    pub components: Vec<i128>,
    /// `dim F_k[{x_1..x_k}]` computed directly from supports, when requested.
    pub direct_components: Option<Vec<usize>>,
}

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `d_k = d(k) − Σ_{j<k} C(k, j) d_j`.
pub fn components_from_dims(d: &[usize]) -> Vec<i128> {
    let mut comps: Vec<i128> = vec![];
    for k in 1..=d.len() {
        let s: i128 = (1..k).map(|j| binomial(k, j) * comps[j - 1]).sum();
        comps.push(d[k - 1] as i128 - s);
    }
    comps
}

/// Elements of `F_k` vanishing whenever some `x_i ↦ 0`: the span of values
/// of monomials involving every variable.
pub fn full_content_dimension(a: &Algebra, k: usize) -> Result<usize> {
    let free = FreeAlgebra::new(a, k)?;
    let full: Vec<usize> = free
        .ambient
        .points
        .iter()
        .enumerate()
        .filter(|(_, phi)| phi.iter().all(|x| !linalg::is_zero(x)))
        .map(|(i, _)| i)
        .collect();
    let coord = free.ambient.coordinate_space(full);
    Ok(free.space().intersection(a.field(), &coord).dim())
}

pub fn dimension_table(a: &Algebra, n_max: usize, direct: bool) -> Result<DimensionTable> {
    let d: Vec<usize> = (1..=n_max).map(|n| free_dimension(a, n)).collect::<Result<_>>()?;
    let components = components_from_dims(&d);
    let direct_components = if direct {
        Some((1..=n_max).map(|k| full_content_dimension(a, k)).collect::<Result<_>>()?)
    } else {
        None
    };
    Ok(DimensionTable { d, components, direct_components })
}

/// Socle height of a free algebra, computed blockwise.
pub fn free_socle_height(free: &FreeAlgebra) -> Result<usize> {
    let mut h = 0;
    for b in free.blocks() {
        h = h.max(free.block_algebra(&b)?.socle_height()?);
    }
    Ok(h)
}

pub fn socle_heights_of_frees(a: &Algebra, n_max: usize) -> Result<Vec<usize>> {
    (1..=n_max).map(|n| free_socle_height(&FreeAlgebra::new(a, n)?)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MalcevCheck {
    pub independent_mod_square: bool,
    pub generates: bool,
}

/// Whether `ys` (vectors of the ambient lying in `F`) is independent modulo
/// `F²` and whether it generates `F`.
pub fn malcev_generation_check(free: &FreeAlgebra, ys: &[Vector]) -> Result<MalcevCheck> {
    let f = free.field();
    if ys.iter().any(|y| !free.space().contains(f, y)) {
        return Err(Error::domain("the elements must lie in the free algebra"));
    }
    let sq = free.square();
    let reduced: Matrix = ys.iter().map(|y| sq.reduce(f, y)).collect();
    let independent = linalg::rank(f, &reduced) == ys.len();
    let generates = closure(&free.ambient, ys).span == *free.space();
    Ok(MalcevCheck { independent_mod_square: independent, generates })
}

/// Search for a tuple of `dim F/F²` elements independent modulo `F²` that
/// fails to generate `F`.
pub fn find_malcev_counterexample(free: &FreeAlgebra) -> Result<Option<Matrix>> {
    let f = free.field();
    let sq = free.square();
    let r = free.dim() - sq.dim();
    let total = caps::pow_sat(caps::pow_sat(f.q() as u128, free.dim() as u128), r as u128);
    caps::check("generating-tuple search", total, caps::current().enumeration as u128)?;
    let elems: Vec<Vector> = free.space().elements(f).collect();
    let mut idx = vec![0usize; r];
    loop {
        let ys: Matrix = idx.iter().map(|&i| elems[i].clone()).collect();
        let reduced: Matrix = ys.iter().map(|y| sq.reduce(f, y)).collect();
        if linalg::rank(f, &reduced) == r && closure(&free.ambient, &ys).span != *free.space() {
            return Ok(Some(ys));
        }
        let mut k = 0;
        loop {
            if k == r {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentReport {
    pub dims: Vec<usize>,
    /// `d(n)^{1/n}`.
    pub roots: Vec<f64>,
    /// `d(n+1)/d(n)`.
    pub ratios: Vec<f64>,
    /// `|A|^n · dim A` for each `n`.
    pub upper: Vec<f64>,
    /// For simple `A`: a constant `c > 0` with `c·|A|^n·dim A < d(n) < |A|^n·dim A` at every computed `n`.
    pub witness_c: Option<f64>,
    pub bounds_hold: bool,
}

pub fn exponent_report(a: &Algebra, n_max: usize) -> Result<ExponentReport> {
    let dims: Vec<usize> = (1..=n_max).map(|n| free_dimension(a, n)).collect::<Result<_>>()?;
    let roots = dims.iter().enumerate().map(|(i, &d)| (d as f64).powf(1.0 / (i + 1) as f64)).collect();
    let ratios = dims.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let order = a.order() as f64;
    let upper: Vec<f64> = (1..=n_max).map(|n| order.powi(n as i32) * a.dim() as f64).collect();
    let (witness_c, bounds_hold) = if a.is_simple()? {
        let min_ratio = dims.iter().zip(&upper).map(|(&d, &u)| d as f64 / u).fold(f64::INFINITY, f64::min);
        let c = min_ratio / 2.0;
        let holds = dims.iter().zip(&upper).all(|(&d, &u)| c * u < d as f64 && (d as f64) < u);
        (Some(c), holds)
    } else {
        (None, dims.iter().zip(&upper).all(|(&d, &u)| (d as f64) < u))
    };
    Ok(ExponentReport { dims, roots, ratios, upper, witness_c, bounds_hold })
}

/// Birkhoff points of `F_n` on which the generator tuple generates all of `A`.
pub fn generating_points(amb: &BirkhoffAmbient) -> BTreeSet<usize> {
    let full = amb.base.full();
    amb.points
        .iter()
        .enumerate()
        .filter(|(_, phi)| amb.base.subalgebra_generated(phi) == full)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::poly::{self, NAPoly};

    #[test]
    fn gf2_dimensions() {
        let a = examples::ground_field(Field::new(2).unwrap());
        for n in 1..=6 {
            assert_eq!(free_dimension(&a, n).unwrap(), (1 << n) - 1);
        }
    }

    #[test]
    fn eminvar_decomposition() {
        let a = examples::eminvar();
        let d1 = decompose_free_minimal(&a, 1).unwrap();
        assert_eq!((d1.dim, d1.summands, d1.expected), (6, 3, 3));
        assert!(d1.all_isomorphic);
        let d2 = decompose_free_minimal(&a, 2).unwrap();
        assert_eq!((d2.dim, d2.summands, d2.expected), (30, 15, 15));
        assert!(d2.ok());
    }

    #[test]
    fn n2_free_dimensions() {
        // Values of x_i and of the products x_i x_j (i ≤ j) are independent.
        let a = examples::n2();
        for n in 1..=4 {
            assert_eq!(free_dimension(&a, n).unwrap(), n + n * (n + 1) / 2);
        }
    }

    #[test]
    fn witnesses_evaluate_to_basis() {
        let a = examples::solvable3();
        let free = FreeAlgebra::new(&a, 1).unwrap();
        for k in 0..free.dim() {
            let p = NAPoly::monomial(a.field(), free.witness(k));
            assert_eq!(p.evaluate(&free.ambient, &free.gens), free.closure.vecs[k]);
        }
    }

    #[test]
    fn free_algebra_satisfies_identities_of_generator() {
        let a = examples::evsa();
        let free = FreeAlgebra::new(&a, 2).unwrap();
        let (f2, _) = free.materialize().unwrap();
        for src in ["x1 x2 - x2 x1", "x^2 - x"] {
            let p = NAPoly::parse(a.field(), src).unwrap();
            assert!(poly::is_identity(&f2, &p).unwrap());
        }
    }

    #[test]
    fn variety_membership() {
        let e = examples::eminvar();
        let v = examples::evsa();
        assert!(!in_variety(&v, &[vec![1, 0], vec![0, 1]], &e).unwrap());
        assert!(in_variety(&e.direct_power(2), &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]], &e).unwrap());
        let gf2 = examples::ground_field(Field::new(2).unwrap());
        assert!(in_variety(&gf2, &[vec![1]], &v).unwrap());
    }

    #[test]
    fn components_match_direct_computation() {
        for a in [examples::n2(), examples::ground_field(Field::new(2).unwrap()), examples::evsa()] {
            let t = dimension_table(&a, 3, true).unwrap();
            let direct: Vec<i128> = t.direct_components.unwrap().into_iter().map(|x| x as i128).collect();
            assert_eq!(t.components, direct);
        }
    }

    #[test]
    fn malcev_witness_for_perfect_free_algebra() {
        let free = FreeAlgebra::new(&examples::eminvar(), 1).unwrap();
        let ys = find_malcev_counterexample(&free).unwrap().expect("witness");
        let chk = malcev_generation_check(&free, &ys).unwrap();
        assert!(chk.independent_mod_square && !chk.generates);
        let free = FreeAlgebra::new(&examples::n2(), 2).unwrap();
        assert!(find_malcev_counterexample(&free).unwrap().is_none());
    }

    #[test]
    fn ambient_cap_is_enforced() {
        let a = examples::eminvar();
        let caps = caps::Caps { ambient: 29, ..caps::Caps::default() };
        let err = caps::with_caps(caps, || FreeAlgebra::new(&a, 2)).unwrap_err();
        assert!(err.is_cap_exceeded());
    }
}
