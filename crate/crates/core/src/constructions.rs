//! Algebra-building operations: semidirect sums over abelian ideals (with a
//! certificate that the result lies in the variety of the input), free
//! products of direct powers of rigid minimal simple algebras, associative
//! multiplication envelopes, and the dimension formula for products of
//! associative varieties.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{closure, ideal_closure_in, product_space, restrict_bilinear, Algebra, Bilinear};
use crate::caps;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, unit, Matrix, Subspace, Vector};
use crate::morphisms;

/// `S = B ⋉ A` for an abelian ideal `A` of `C` and `B = C/A`.
#[derive(Clone, Debug)]
pub struct SemidirectData {
    pub base: Algebra,
    pub ideal: Subspace,
    /// On `B ⊕ A`: the first `dim B` coordinates are the quotient, the rest
    /// are coordinates in the RREF basis of `A`.
    pub result: Algebra,
    pub certificate: SemidirectCertificate,
}

/// The section witness: `T = C̃ + (A × A) ⊆ C × C`, `R = T/Ã`, and the map
/// `φ(c̄, a) = (c + a, c) + Ã`, checked to be an isomorphism `S → R`.
#[derive(Clone, Debug, Serialize)]
pub struct SemidirectCertificate {
    pub t_dim: usize,
    pub r_dim: usize,
    #[serde(skip)]
    pub phi: Matrix,
    pub t_is_subalgebra: bool,
    pub diag_ideal_is_ideal: bool,
    pub phi_is_isomorphism: bool,
}

impl SemidirectCertificate {
    pub fn ok(&self) -> bool {
        self.t_is_subalgebra && self.diag_ideal_is_ideal && self.phi_is_isomorphism
    }
}

pub fn semidirect_sum(c: &Algebra, a_ideal: &Subspace) -> Result<SemidirectData> {
    let f = c.field().clone();
    let m = c.dim();
    if !c.is_ideal(a_ideal) {
        return Err(Error::domain("the subspace is not an ideal"));
    }
    if !c.square(a_ideal).is_zero() {
        return Err(Error::domain("the ideal has nonzero internal multiplication"));
    }
    let quot = c.quotient(a_ideal)?;
    let b = quot.algebra.dim();
    let k = a_ideal.dim();
    let split = |v: &[Elem]| -> (Vector, Vector) {
        let lift = quot.lift(&v[..b]);
        (lift, a_ideal.combine(&f, &v[b..]))
    };
    let s = Algebra::from_fn(f.clone(), b + k, |i, j| {
        let (c1, a1) = split(&unit(b + k, i));
        let (c2, a2) = split(&unit(b + k, j));
        let mut out = quot.project(&c.mul(&c1, &c2));
        let cross = linalg::add(&f, &c.mul(&a1, &c2), &c.mul(&c1, &a2));
        out.extend(a_ideal.coordinates(&f, &cross).expect("A is an ideal"));
        out
    });

    // Witness inside C × C.
    let cc = Algebra::direct_sum(&[c, c])?;
    let pair = |x: &[Elem], y: &[Elem]| -> Vector { x.iter().chain(y).copied().collect() };
    let zero = vec![0; m];
    let diag_c = (0..m).map(|i| pair(&unit(m, i), &unit(m, i)));
    let axa = a_ideal.basis().iter().flat_map(|a| [pair(a, &zero), pair(&zero, a)]);
    let t = cc.span(diag_c.chain(axa).collect::<Vec<_>>());
    let t_is_subalgebra = cc.is_subalgebra(&t);
    let diag_a = cc.span(a_ideal.basis().iter().map(|a| pair(a, a)).collect::<Vec<_>>());
    let diag_ideal_is_ideal = ideal_closure_in(&cc, &t, &diag_a) == diag_a;
    let mut cert = SemidirectCertificate {
        t_dim: t.dim(),
        r_dim: t.dim() - diag_a.dim(),
        phi: vec![],
        t_is_subalgebra,
        diag_ideal_is_ideal,
        phi_is_isomorphism: false,
    };
    if t_is_subalgebra && diag_ideal_is_ideal {
        let t_alg = cc.restrict(&t)?;
        let diag_in_t = t_alg.span(diag_a.basis().iter().map(|v| t.coordinates(&f, v).unwrap()).collect::<Vec<_>>());
        let r = t_alg.quotient(&diag_in_t)?;
        let phi: Matrix = (0..b + k)
            .map(|i| {
                let (cv, av) = split(&unit(b + k, i));
                let v = pair(&linalg::add(&f, &cv, &av), &cv);
                r.project(&t.coordinates(&f, &v).expect("φ lands in T"))
            })
            .collect();
        cert.phi_is_isomorphism = morphisms::is_isomorphism(&s, &r.algebra, &phi);
        cert.phi = phi;
    }
    Ok(SemidirectData { base: c.clone(), ideal: a_ideal.clone(), result: s, certificate: cert })
}

impl SemidirectData {
    /// The copy `{(0, a)}` of the ideal inside `S`.
    pub fn ideal_image(&self) -> Subspace {
        let n = self.result.dim();
        let b = n - self.ideal.dim();
        Subspace::coordinate(n, b..n)
    }

    /// Whether the copy of the ideal is a minimal ideal of `S`.
    pub fn ideal_image_is_minimal(&self) -> Result<bool> {
        let s = &self.result;
        let img = self.ideal_image();
        if img.is_zero() || !s.is_ideal(&img) {
            return Ok(false);
        }
        let f = s.field();
        let elems: Vec<Vector> = img.elements(f).filter(|v| !linalg::is_zero(v)).collect();
        Ok(elems.iter().all(|v| s.principal_ideal(v) == img))
    }
}

/// A subalgebra `B` with `C = B ⊕ I` (vector-space direct sum), if one exists.
pub fn semidirect_complement(c: &Algebra, ideal: &Subspace) -> Result<Option<Subspace>> {
    let f = c.field();
    let want = c.dim() - ideal.dim();
    Ok(c.subalgebras()?.into_iter().find(|s| s.dim() == want && s.intersection(f, ideal).is_zero()))
}

/// Hypotheses under which the diagonal grid is the free product.
#[derive(Clone, Debug, Serialize)]
pub struct FreeProductHypotheses {
    pub simple: bool,
    pub nonzero_square: bool,
    pub trivial_aut: bool,
    pub minimal: bool,
}

#[derive(Clone, Debug)]
pub struct FreeProductPowers {
    /// Direct power over the index pairs `(i, i') ≠ (0, 0)`, in lexicographic order.
    pub algebra: Algebra,
    pub index: Vec<(usize, usize)>,
    /// Embedding of `A^k` (row `s` = image of the `s`-th basis vector).
    pub left: Matrix,
    /// Embedding of `A^ℓ`.
    pub right: Matrix,
    pub generated: bool,
}

pub fn free_product_hypotheses(a: &Algebra) -> Result<FreeProductHypotheses> {
    Ok(FreeProductHypotheses {
        simple: a.is_simple()?,
        nonzero_square: !a.square(&a.full()).is_zero(),
        trivial_aut: morphisms::automorphism_group(a)?.order == 1,
        minimal: a.is_minimal()?,
    })
}

/// The free product of `A^k` and `A^ℓ` in `var A` as the diagonal grid
/// `⊕_{(i,i') ≠ (0,0)} A_{ii'}`: the `i`-th summand of `A^k` goes diagonally
/// onto `A_{i0} ⊕ … ⊕ A_{iℓ}`, the `j`-th summand of `A^ℓ` onto `A_{0j} ⊕ … ⊕ A_{kj}`.
pub fn free_product_powers(a: &Algebra, k: usize, l: usize) -> Result<FreeProductPowers> {
    let h = free_product_hypotheses(a)?;
    for (ok, name) in [
        (h.simple, "A is not simple"),
        (h.nonzero_square, "A² = 0"),
        (h.trivial_aut, "A has nontrivial automorphisms"),
        (h.minimal, "A is not minimal"),
    ] {
        if !ok {
            return Err(Error::domain(format!("free product hypothesis fails: {name}")));
        }
    }
    let m = a.dim();
    let index: Vec<(usize, usize)> =
        (0..=k).flat_map(|i| (0..=l).map(move |j| (i, j))).filter(|&p| p != (0, 0)).collect();
    let d = a.direct_power(index.len());
    let n = d.dim();
    let embed = |count: usize, on: &dyn Fn(usize, (usize, usize)) -> bool| -> Matrix {
        (0..count)
            .flat_map(|summand| {
                (0..m).map(move |s| (summand, s))
            })
            .map(|(summand, s)| {
                let mut v = vec![0; n];
                for (pos, &p) in index.iter().enumerate() {
                    if on(summand + 1, p) {
                        v[pos * m + s] = 1;
                    }
                }
                v
            })
            .collect()
    };
    let left = embed(k, &|i, (r, _)| r == i);
    let right = embed(l, &|j, (_, c)| c == j);
    let gens: Matrix = left.iter().chain(&right).cloned().collect();
    let generated = d.subalgebra_generated(&gens).is_full();
    Ok(FreeProductPowers { algebra: d, index, left, right, generated })
}

/// Square matrices of size `m` (flattened row-major) under matrix product.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    field: Field,
    m: usize,
}

impl MatrixAlgebra {
    pub fn new(field: Field, m: usize) -> MatrixAlgebra {
        MatrixAlgebra { field, m }
    }

    pub fn flatten(mat: &[Vector]) -> Vector {
        mat.iter().flatten().copied().collect()
    }

    pub fn unflatten(&self, v: &[Elem]) -> Matrix {
        v.chunks(self.m.max(1)).map(|c| c.to_vec()).collect()
    }
}

impl Bilinear for MatrixAlgebra {
    fn field(&self) -> &Field {
        &self.field
    }
    fn dim(&self) -> usize {
        self.m * self.m
    }
    fn mul(&self, u: &[Elem], v: &[Elem]) -> Vector {
        let a = self.unflatten(u);
        let b = self.unflatten(v);
        MatrixAlgebra::flatten(&linalg::mat_mul(&self.field, &a, &b, self.m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeKind {
    Left,
    Right,
    TwoSided,
}

/// The associative algebra of operators generated by the `L(a)` and/or `R(a)`.
#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    pub kind: EnvelopeKind,
    pub matrices: MatrixAlgebra,
    pub carrier: Subspace,
}

impl EnvelopingAlgebra {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// Least `c ≥ 0` with `U^{c+1} = 0`, or `None` if `U` is not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let mut power = self.carrier.clone();
        let mut c = 0;
        while !power.is_zero() {
            let next = product_space(&self.matrices, &power, &self.carrier);
            if next == power {
                return None;
            }
            power = next;
            c += 1;
        }
        Some(c)
    }

    /// `U` tabulated as an algebra in the RREF basis of its carrier.
    pub fn as_algebra(&self) -> Result<Algebra> {
        restrict_bilinear(&self.matrices, &self.carrier)
    }

    /// A chain of two-sided ideals of `U` with one-dimensional steps from 0 to `U`.
    pub fn full_ideal_flag(&self) -> Result<Option<Vec<Subspace>>> {
        let f = self.matrices.field().clone();
        caps::check(
            "envelope ideal-flag search",
            caps::pow_sat(f.q() as u128, self.dim() as u128),
            caps::current().subspaces as u128,
        )?;
        let elems: Vec<Vector> = self.carrier.elements(&f).filter(|v| !linalg::is_zero(v)).collect();
        let mut dead: HashSet<Subspace> = HashSet::new();
        let mut chain = vec![Subspace::zero(self.matrices.dim())];
        if self.flag_from(&elems, &mut chain, &mut dead) {
            Ok(Some(chain))
        } else {
            Ok(None)
        }
    }

    fn flag_from(&self, elems: &[Vector], chain: &mut Vec<Subspace>, dead: &mut HashSet<Subspace>) -> bool {
        let f = self.matrices.field();
        let cur = chain.last().unwrap().clone();
        if cur == self.carrier {
            return true;
        }
        if dead.contains(&cur) {
            return false;
        }
        let mut tried: HashSet<Subspace> = HashSet::new();
        for v in elems {
            if cur.contains(f, v) {
                continue;
            }
            let next = ideal_closure_in(&self.matrices, &self.carrier, &cur.with_vector(f, v.clone()));
            if next.dim() != cur.dim() + 1 || !tried.insert(next.clone()) {
                continue;
            }
            chain.push(next);
            if self.flag_from(elems, chain, dead) {
                return true;
            }
            chain.pop();
        }
        dead.insert(cur);
        false
    }
}

pub fn enveloping(a: &Algebra, kind: EnvelopeKind) -> EnvelopingAlgebra {
    let m = a.dim();
    let mats = MatrixAlgebra::new(a.field().clone(), m);
    let mut gens: Matrix = vec![];
    for i in 0..m {
        let e = unit(m, i);
        if kind != EnvelopeKind::Right {
            gens.push(MatrixAlgebra::flatten(&a.left_mult(&e)));
        }
        if kind != EnvelopeKind::Left {
            gens.push(MatrixAlgebra::flatten(&a.right_mult(&e)));
        }
    }
    let carrier = closure(&mats, &gens).span;
    EnvelopingAlgebra { kind, matrices: mats, carrier }
}

#[derive(Clone, Debug, Serialize)]
pub struct SupersolvableReport {
    pub supersolvable: bool,
    pub envelope_ideal_flag: bool,
    pub chief_factors_one_dim: bool,
    pub agree: bool,
}

pub fn supersolvable_equivalences(a: &Algebra) -> Result<SupersolvableReport> {
    let supersolvable = a.is_supersolvable()?;
    let envelope_ideal_flag = enveloping(a, EnvelopeKind::TwoSided).full_ideal_flag()?.is_some();
    let chief_factors_one_dim = a.chief_factor_dims()?.iter().all(|&d| d == 1);
    Ok(SupersolvableReport {
        supersolvable,
        envelope_ideal_flag,
        chief_factors_one_dim,
        agree: supersolvable == envelope_ideal_flag && supersolvable == chief_factors_one_dim,
    })
}

/// `(n − 1)·d1(n)·d2(n) + n·(d1(n) + d2(n) + 1)`, with `d1`, `d2` given as
/// sequences indexed from `n = 1`.
pub fn product_variety_dimension(d1: &[u128], d2: &[u128], n: usize) -> Result<u128> {
    if n == 0 || n > d1.len() || n > d2.len() {
        return Err(Error::domain(format!("n = {n} outside the given dimension sequences")));
    }
    let (a, b, n) = (d1[n - 1], d2[n - 1], n as u128);
    Ok((n - 1) * a * b + n * (a + b + 1))
}

/// Number of nonempty words of length `≤ c` in `n` letters.
pub fn free_nilpotent_assoc_dim(n: u128, c: u32) -> u128 {
    (1..=c).map(|i| n.pow(i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::poly::{self, NAPoly};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn semidirect_of_n2_is_zero_algebra() {
        let c = examples::n2();
        let s = semidirect_sum(&c, &c.span([vec![0, 1]])).unwrap();
        assert!(s.result.is_zero_algebra());
        assert!(s.certificate.ok());
        let x = NAPoly::parse(c.field(), "x1 x2").unwrap();
        assert!(poly::is_identity(&s.result, &x).unwrap());
        assert!(!poly::is_identity(&c, &x).unwrap());
    }

    #[test]
    fn semidirect_with_zero_ideal_is_base() {
        let c = examples::solvable3();
        let s = semidirect_sum(&c, &c.zero_space()).unwrap();
        assert!(morphisms::are_isomorphic(&s.result, &c).unwrap());
        assert!(s.certificate.ok());
    }

    #[test]
    fn semidirect_rejects_bad_ideals() {
        let c = examples::eminvar();
        assert!(semidirect_sum(&c, &c.full()).is_err());
        assert!(semidirect_sum(&c, &c.span([vec![1, 0]])).is_err());
    }

    #[test]
    fn free_product_shapes() {
        let a = examples::eminvar();
        let fp = free_product_powers(&a, 1, 1).unwrap();
        assert_eq!(fp.algebra.dim(), 6);
        assert!(fp.generated);
        let gf2 = examples::ground_field(Field::new(2).unwrap());
        let fp = free_product_powers(&gf2, 1, 2).unwrap();
        assert_eq!(fp.algebra.dim(), 5);
        assert!(fp.generated);
        let fp = free_product_powers(&a, 0, 3).unwrap();
        assert_eq!(fp.algebra.dim(), 6);
        assert!(free_product_powers(&examples::evsa(), 1, 1).is_err());
    }

    #[test]
    fn random_diagonal_placements_respect_free_product_bound() {
        // Copies of A and A placed diagonally in A^6 never generate more than dim 6.
        let a = examples::eminvar();
        let a6 = a.direct_power(6);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut place = || -> Matrix {
                let mask: Vec<bool> = loop {
                    let m: Vec<bool> = (0..6).map(|_| rng.gen()).collect();
                    if m.iter().any(|&b| b) {
                        break m;
                    }
                };
                (0..2)
                    .map(|s| (0..12).map(|c| (mask[c / 2] && c % 2 == s) as u8).collect())
                    .collect()
            };
            let mut gens = place();
            gens.extend(place());
            assert!(a6.subalgebra_generated(&gens).dim() <= 6);
        }
    }

    #[test]
    fn envelopes() {
        let z = Algebra::zero(Field::new(2).unwrap(), 2);
        assert_eq!(enveloping(&z, EnvelopeKind::TwoSided).dim(), 0);
        let n2 = examples::n2();
        let u = enveloping(&n2, EnvelopeKind::TwoSided);
        assert_eq!(u.dim(), 1);
        assert_eq!(u.nilpotency_class(), Some(1));
        let v = enveloping(&examples::evsa(), EnvelopeKind::TwoSided);
        assert_eq!(v.dim(), 4);
        assert_eq!(v.nilpotency_class(), None);
    }

    #[test]
    fn supersolvable_reports() {
        let r = supersolvable_equivalences(&examples::n2()).unwrap();
        assert!(r.supersolvable && r.envelope_ideal_flag && r.chief_factors_one_dim);
        let r = supersolvable_equivalences(&examples::evsa()).unwrap();
        assert!(!r.supersolvable && !r.envelope_ideal_flag && !r.chief_factors_one_dim);
        let r = supersolvable_equivalences(&Algebra::zero(Field::new(2).unwrap(), 2)).unwrap();
        assert!(r.supersolvable && r.envelope_ideal_flag && r.chief_factors_one_dim);
    }

    #[test]
    fn envelope_identities_pass_to_quotients() {
        // Identities of U(A) in two variables of degree ≤ 3 hold in U(A/I).
        let a = examples::solvable3();
        let f = a.field().clone();
        let ua = enveloping(&a, EnvelopeKind::TwoSided).as_algebra().unwrap();
        let i = a.span([vec![0, 1, 0], vec![0, 0, 1]]);
        let qa = a.quotient(&i).unwrap().algebra;
        let uq = enveloping(&qa, EnvelopeKind::TwoSided).as_algebra().unwrap();
        for src in ["x1 x2 - x2 x1", "x1 x1 x2 - x2 x1 x1", "x1 x2 x1", "x^3", "x^2"] {
            let p = NAPoly::parse(&f, src).unwrap();
            if poly::is_identity(&ua, &p).unwrap() {
                assert!(poly::is_identity(&uq, &p).unwrap(), "{src}");
            }
        }
    }

    #[test]
    fn formulas() {
        assert_eq!(free_nilpotent_assoc_dim(2, 1), 2);
        assert_eq!(free_nilpotent_assoc_dim(2, 3), 14);
        assert_eq!(free_nilpotent_assoc_dim(3, 2), 12);
        let d: Vec<u128> = (1..=5).collect();
        let zero = vec![0u128; 5];
        assert_eq!(product_variety_dimension(&d, &zero, 3).unwrap(), 3 * 3 + 3);
        assert!(product_variety_dimension(&d, &d, 6).is_err());
    }
}
