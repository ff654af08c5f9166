//! Homomorphism searches and the properties defined through them.
//!
//! Every search starts from a *presentation* of the source algebra: a
//! generating tuple together with a straight-line program expressing a basis
//! in terms of products of the generators.  A homomorphism is fixed by the
//! images of the generators, so the search backtracks over those images,
//! pruning as soon as a relation among the already-determined basis images
//! fails.  Maps are returned as matrices whose row `i` is the image of `e_i`.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::algebra::{closure, Algebra, Bilinear, Node};
use crate::caps;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix, Subspace, Vector};

/// A generating tuple with a straight-line program for a basis.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub gens: Matrix,
    pub nodes: Vec<Node>,
    pub vecs: Matrix,
    pub prefix: Vec<usize>,
    /// `consts[s][t]` = coordinates of `v_s v_t` in the node basis.
    consts: Vec<Vec<Vector>>,
    /// Row `i` = coordinates of `e_i` in the node basis.
    to_nodes: Matrix,
    /// For each generator, its coordinates in the node basis.
    gen_coords: Matrix,
}

impl Presentation {
    /// Present `a` by `gens`, which must generate it.
    pub fn new(a: &Algebra, gens: &[Vector]) -> Result<Presentation> {
        let f = a.field();
        let cl = closure(a, gens);
        if !cl.span.is_full() {
            return Err(Error::domain("the given elements do not generate the algebra"));
        }
        let d = cl.vecs.len();
        let to_nodes = linalg::inverse(f, &cl.vecs).expect("closure basis is independent");
        let coords = |w: &[u8]| linalg::vec_mat(f, w, &to_nodes, d);
        let consts = (0..d).map(|s| (0..d).map(|t| coords(&a.mul(&cl.vecs[s], &cl.vecs[t]))).collect()).collect();
        let gen_coords = gens.iter().map(|g| coords(g)).collect();
        Ok(Presentation {
            gens: gens.to_vec(),
            nodes: cl.nodes,
            vecs: cl.vecs,
            prefix: cl.prefix,
            consts,
            to_nodes,
            gen_coords,
        })
    }

    /// Present `a` by a greedily chosen small generating tuple.
    pub fn greedy(a: &Algebra) -> Result<Presentation> {
        Presentation::new(a, &generating_tuple(a)?)
    }

    pub fn dim(&self) -> usize {
        self.vecs.len()
    }
}

/// A small generating tuple: repeatedly add the (index-least) vector that
/// enlarges the generated subalgebra the most.  Falls back to adding unit
/// vectors when the algebra is too large to scan.
pub fn generating_tuple(a: &Algebra) -> Result<Matrix> {
    let f = a.field();
    let m = a.dim();
    let mut gens: Matrix = vec![];
    let mut cur = a.zero_space();
    let scan = a.points().ok();
    while !cur.is_full() {
        let best = match &scan {
            Some(points) => {
                let mut best: Option<(usize, Vector)> = None;
                for v in points.iter().filter(|v| !cur.contains(f, v)) {
                    let mut g = gens.clone();
                    g.push(v.clone());
                    let d = a.subalgebra_generated(&g).dim();
                    if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
                        best = Some((d, v.clone()));
                        if d == m {
                            break;
                        }
                    }
                }
                best.expect("a proper subalgebra misses some point").1
            }
            None => (0..m).map(|i| linalg::unit(m, i)).find(|e| !cur.contains(f, e)).unwrap(),
        };
        gens.push(best);
        cur = a.subalgebra_generated(&gens);
    }
    Ok(gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Want {
    Any,
    Injective,
    Surjective,
}

/// Enumerate homomorphisms from the presented algebra into `target`.
///
/// `visit` receives each homomorphism (as a matrix) and returns `false` to
/// stop.  Candidate generator images are drawn from `candidates` if given,
/// otherwise from all of `target`.  Every candidate tried counts towards the
/// enumeration cap.
pub fn search_homs(
    pres: &Presentation,
    target: &Algebra,
    want: Want,
    candidates: Option<&[Vector]>,
    mut visit: impl FnMut(&Matrix) -> bool,
) -> Result<()> {
    let n = target.dim();
    let all_elems;
    let cands: &[Vector] = match candidates {
        Some(c) => c,
        None => {
            all_elems = target.elements()?;
            &all_elems
        }
    };
    if want == Want::Injective && pres.dim() > n {
        return Ok(());
    }
    let cap = caps::current().enumeration as u128;
    let mut work: u128 = 0;
    let d = pres.dim();
    let mut images: Matrix = vec![vec![0; n]; d];

    struct Ctx<'a, V: FnMut(&Matrix) -> bool> {
        pres: &'a Presentation,
        target: &'a Algebra,
        cands: &'a [Vector],
        want: Want,
        visit: V,
        cap: u128,
    }

    fn rec<V: FnMut(&Matrix) -> bool>(
        cx: &mut Ctx<'_, V>,
        level: usize,
        images: &mut Matrix,
        ech: &Echelon,
        work: &mut u128,
    ) -> Result<bool> {
        let pres = cx.pres;
        let f = cx.target.field().clone();
        let n = cx.target.dim();
        if level == pres.gens.len() {
            if cx.want == Want::Surjective {
                let img = Subspace::span(&f, n, images.iter().cloned());
                if !img.is_full() {
                    return Ok(true);
                }
            }
            let d = pres.dim();
            let m: Matrix = pres.to_nodes.iter().map(|row| linalg::vec_mat(&f, row, images, n)).collect();
            debug_assert_eq!(m.len(), d);
            return Ok((cx.visit)(&m));
        }
        let lo = if level == 0 { 0 } else { pres.prefix[level - 1] };
        let hi = pres.prefix[level];
        let forced: Option<Vector> = (lo == hi).then(|| {
            // Redundant generator: its image is determined by the earlier ones.
            linalg::vec_mat(&f, &pres.gen_coords[level], images, n)
        });
        let owned;
        let cands: &[Vector] = match &forced {
            Some(v) => {
                owned = [v.clone()];
                &owned
            }
            None => cx.cands,
        };
        'cand: for c in cands {
            *work += 1;
            if *work > cx.cap {
                return Err(Error::cap("homomorphism search (generator images tried)", *work, cx.cap));
            }
            if let Some(fv) = &forced {
                if c != fv {
                    continue;
                }
            }
            let mut ech2 = ech.clone();
            for k in lo..hi {
                images[k] = match pres.nodes[k] {
                    Node::Gen(g) => {
                        debug_assert_eq!(g, level);
                        c.clone()
                    }
                    Node::Prod(s, t) => cx.target.mul(&images[s], &images[t]),
                };
                if cx.want == Want::Injective && !ech2.insert(&f, &images[k]) {
                    continue 'cand;
                }
            }
            // Relations v_s v_t = Σ consts · v_k among determined nodes.
            for s in 0..hi {
                for t in 0..hi {
                    if s < lo && t < lo {
                        continue;
                    }
                    let lhs = linalg::vec_mat(&f, &pres.consts[s][t][..hi], &images[..hi], n);
                    if lhs != cx.target.mul(&images[s], &images[t]) {
                        continue 'cand;
                    }
                }
            }
            if !rec(cx, level + 1, images, &ech2, work)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    let mut cx = Ctx { pres, target, cands, want, visit: &mut visit, cap };
    let ech = Echelon::new(n);
    rec(&mut cx, 0, &mut images, &ech, &mut work)?;
    Ok(())
}

/// Whether the matrix `m` (rows = images of `e_i`) is multiplicative.
pub fn is_homomorphism(a: &Algebra, b: &Algebra, m: &[Vector]) -> bool {
    let f = b.field();
    let n = b.dim();
    (0..a.dim()).all(|i| {
        (0..a.dim()).all(|j| linalg::vec_mat(f, a.basis_product(i, j), m, n) == b.mul(&m[i], &m[j]))
    })
}

pub fn kernel(a: &Algebra, m: &[Vector]) -> Subspace {
    a.span(linalg::left_kernel(a.field(), m))
}

fn collect_homs(a: &Algebra, b: &Algebra, want: Want, limit: Option<usize>) -> Result<Vec<Matrix>> {
    if a.field() != b.field() {
        return Err(Error::domain("algebras over different fields"));
    }
    if a.dim() == 0 {
        return Ok(vec![vec![]]);
    }
    let pres = Presentation::greedy(a)?;
    let mut out = vec![];
    search_homs(&pres, b, want, None, |m| {
        out.push(m.clone());
        limit.is_none_or(|l| out.len() < l)
    })?;
    Ok(out)
}

pub fn homomorphisms(a: &Algebra, b: &Algebra) -> Result<Vec<Matrix>> {
    collect_homs(a, b, Want::Any, None)
}

pub fn epimorphisms(a: &Algebra, b: &Algebra) -> Result<Vec<Matrix>> {
    collect_homs(a, b, Want::Surjective, None)
}

pub fn endomorphisms(a: &Algebra) -> Result<Vec<Matrix>> {
    homomorphisms(a, a)
}

/// Injective homomorphisms `a → b`.
pub fn embeddings(a: &Algebra, b: &Algebra) -> Result<Vec<Matrix>> {
    collect_homs(a, b, Want::Injective, None)
}

pub fn find_isomorphism(a: &Algebra, b: &Algebra) -> Result<Option<Matrix>> {
    if a.dim() != b.dim() || a.field() != b.field() {
        return Ok(None);
    }
    Ok(collect_homs(a, b, Want::Injective, Some(1))?.into_iter().next())
}

pub fn are_isomorphic(a: &Algebra, b: &Algebra) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// The automorphism group: its order, all elements, and a generating set.
#[derive(Clone, Debug, Serialize)]
pub struct AutGroup {
    pub order: usize,
    #[serde(skip)]
    pub elements: Vec<Matrix>,
    #[serde(skip)]
    pub generators: Vec<Matrix>,
}

pub fn automorphism_group(a: &Algebra) -> Result<AutGroup> {
    let cap = caps::current().aut;
    let elements = collect_homs(a, a, Want::Injective, Some(cap + 1))?;
    if elements.len() > cap {
        return Err(Error::cap("automorphism group order", elements.len() as u128, cap as u128));
    }
    let f = a.field();
    let m = a.dim();
    let mut generated: HashSet<Matrix> = HashSet::from([linalg::identity(m)]);
    let mut generators: Vec<Matrix> = vec![];
    for g in &elements {
        if generated.contains(g) {
            continue;
        }
        generators.push(g.clone());
        let mut queue: VecDeque<Matrix> = generated.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = linalg::mat_mul(f, &x, s, m);
                if generated.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(AutGroup { order: elements.len(), elements, generators })
}

/// Invariant under every map in `maps`.
pub fn is_invariant(a: &Algebra, s: &Subspace, maps: &[Matrix]) -> bool {
    let f = a.field();
    maps.iter().all(|m| s.contains_subspace(f, &s.image(f, m, a.dim())))
}

pub fn is_characteristic(a: &Algebra, s: &Subspace, aut: &AutGroup) -> bool {
    is_invariant(a, s, &aut.generators)
}

pub fn is_fully_invariant(a: &Algebra, s: &Subspace) -> Result<bool> {
    Ok(is_invariant(a, s, &endomorphisms(a)?))
}

/// Characteristically simple in the subalgebra sense: no proper nonzero
/// characteristic subalgebra.
pub fn is_cs(a: &Algebra) -> Result<bool> {
    let aut = automorphism_group(a)?;
    Ok(a.subalgebras()?.iter().all(|s| s.is_zero() || s.is_full() || !is_characteristic(a, s, &aut)))
}

/// Characteristically simple in the ideal sense: no proper nonzero characteristic ideal.
pub fn is_cw(a: &Algebra) -> Result<bool> {
    let aut = automorphism_group(a)?;
    Ok(a.ideals()?.iter().all(|s| s.is_zero() || s.is_full() || !is_characteristic(a, s, &aut)))
}

/// Whether the intersection of the kernels of all epimorphisms `b → a` is
/// zero, where `b` is presented by `gens` (or a greedy tuple if `None`).
pub fn is_residually(b: &Algebra, gens: Option<&[Vector]>, a: &Algebra) -> Result<bool> {
    if b.field() != a.field() {
        return Err(Error::domain("algebras over different fields"));
    }
    if b.dim() == 0 {
        return Ok(true);
    }
    let pres = match gens {
        Some(g) => Presentation::new(b, g)?,
        None => Presentation::greedy(b)?,
    };
    let f = b.field();
    let mut meet = b.full();
    search_homs(&pres, a, Want::Surjective, None, |m| {
        meet = meet.intersection(f, &kernel(b, m));
        !meet.is_zero()
    })?;
    Ok(meet.is_zero())
}

/// Length of the chain `A_0 = A`, `A_{i+1}` = ideal closure of `B` in `A_i`
/// needed to reach `B`, or `None` if the chain stabilises above `B`.
pub fn subideal_depth(a: &Algebra, b: &Subspace) -> Result<Option<usize>> {
    if !a.is_subalgebra(b) {
        return Err(Error::domain("subideal test needs a subalgebra"));
    }
    let mut cur = a.full();
    let mut depth = 0;
    while &cur != b {
        let next = crate::algebra::ideal_closure_in(a, &cur, b);
        if next == cur {
            return Ok(None);
        }
        cur = next;
        depth += 1;
    }
    Ok(Some(depth))
}

pub fn is_subideal(a: &Algebra, b: &Subspace) -> Result<bool> {
    Ok(subideal_depth(a, b)?.is_some())
}

/// Some ideal `I` of `b` satisfies `b = s ⊕ I`.
pub fn is_retract(b: &Algebra, s: &Subspace) -> Result<bool> {
    if !b.is_subalgebra(s) {
        return Err(Error::domain("retract test needs a subalgebra"));
    }
    let f = b.field();
    let want = b.dim() - s.dim();
    Ok(b.ideals()?.iter().any(|i| i.dim() == want && i.intersection(f, s).is_zero()))
}

/// Every ideal of every subalgebra has a complementary subalgebra.
pub fn is_nice(a: &Algebra) -> Result<bool> {
    let f = a.field();
    for b in a.subalgebras()? {
        let bb = a.restrict(&b)?;
        let subs = bb.subalgebras()?;
        for i in bb.ideals()? {
            let want = bb.dim() - i.dim();
            if !subs.iter().any(|c| c.dim() == want && c.intersection(f, &i).is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Inside `S^k` (blocks of `factor_dim` coordinates), decide whether `img`
/// is a direct sum of diagonals: returns the partition of the touched factor
/// indices such that `img` is the sum of subspaces each projecting
/// isomorphically onto every factor of its part.
pub fn diagonal_decomposition(
    s: &Algebra,
    k: usize,
    img: &Subspace,
) -> Result<Option<Vec<Vec<usize>>>> {
    let m = s.dim();
    let f = s.field();
    if img.ambient() != m * k {
        return Err(Error::domain("image does not live in the direct power"));
    }
    let groups: Vec<usize> = (0..m * k).map(|c| c / m.max(1)).collect();
    let mut parts = vec![];
    let mut total = 0;
    for part in img.split_by_groups(&groups) {
        let cols: Vec<usize> = part.iter().flat_map(|&g| g * m..(g + 1) * m).collect();
        let piece = img.intersection(f, &Subspace::coordinate(m * k, cols));
        if piece.is_zero() {
            continue;
        }
        if piece.dim() != m {
            return Ok(None);
        }
        for &g in &part {
            let proj: Matrix = piece.basis().iter().map(|v| v[g * m..(g + 1) * m].to_vec()).collect();
            if linalg::rank(f, &proj) != m {
                return Ok(None);
            }
        }
        total += piece.dim();
        parts.push(part);
    }
    Ok((total == img.dim()).then_some(parts))
}

/// Whether `m`, viewed as a map `a → b`, is a bijective homomorphism.
pub fn is_isomorphism(a: &Algebra, b: &Algebra, m: &[Vector]) -> bool {
    a.dim() == b.dim() && linalg::inverse(a.field(), m).is_some() && is_homomorphism(a, b, m)
}

/// Image subspace of a map `a → b`.
pub fn image(b: &Algebra, m: &[Vector]) -> Subspace {
    b.span(m.iter().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::field::Field;

    /// Brute-force automorphism count over all of GL(m, q).
    fn brute_aut_order(a: &Algebra) -> usize {
        let f = a.field();
        let m = a.dim();
        let total = (f.q() as u64).pow((m * m) as u32);
        (0..total)
            .map(|i| {
                let flat = linalg::vector_from_index(f.q(), m * m, i);
                flat.chunks(m).map(|c| c.to_vec()).collect::<Matrix>()
            })
            .filter(|g| is_isomorphism(a, a, g))
            .count()
    }

    #[test]
    fn aut_orders_match_brute_force() {
        for a in [examples::eminvar(), examples::evsa(), examples::n2(), examples::solvable3()] {
            assert_eq!(automorphism_group(&a).unwrap().order, brute_aut_order(&a));
        }
        assert_eq!(automorphism_group(&examples::eminvar()).unwrap().order, 1);
        assert_eq!(automorphism_group(&examples::evsa()).unwrap().order, 6);
        let z = Algebra::zero(Field::new(2).unwrap(), 3);
        assert_eq!(automorphism_group(&z).unwrap().order, 168);
    }

    #[test]
    fn generators_generate() {
        let a = examples::evsa();
        let g = automorphism_group(&a).unwrap();
        assert!(!g.generators.is_empty() && g.generators.len() <= 2);
    }

    #[test]
    fn isomorphism_after_basis_change() {
        let a = examples::solvable3();
        let g = vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]];
        let b = a.change_basis(&g).unwrap();
        let iso = find_isomorphism(&a, &b).unwrap().expect("isomorphic");
        assert!(is_isomorphism(&a, &b, &iso));
        assert!(find_isomorphism(&examples::eminvar(), &examples::evsa()).unwrap().is_none());
    }

    #[test]
    fn homs_from_minimal_algebra() {
        let a = examples::eminvar();
        let a4 = a.direct_power(4);
        let emb = embeddings(&a, &a4).unwrap();
        assert_eq!(emb.len(), 15);
        for e in &emb {
            assert!(is_homomorphism(&a, &a4, e));
        }
    }

    #[test]
    fn eminvar_cube_is_residually_eminvar() {
        let a = examples::eminvar();
        assert!(is_residually(&a.direct_power(3), None, &a).unwrap());
        assert!(!is_residually(&examples::n2(), None, &a).unwrap() || epimorphisms(&examples::n2(), &a).unwrap().is_empty());
    }

    #[test]
    fn solvable3_subideal() {
        let a = examples::solvable3();
        let c = a.span([vec![0, 0, 1]]);
        assert_eq!(subideal_depth(&a, &c).unwrap(), Some(2));
    }

    #[test]
    fn diagonal_of_evsa_square_is_not_subideal() {
        let a = examples::evsa();
        let p = a.direct_power(2);
        let diag = p.span([vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        assert!(p.is_subalgebra(&diag));
        assert_eq!(subideal_depth(&p, &diag).unwrap(), None);
        assert_eq!(diagonal_decomposition(&a, 2, &diag).unwrap(), Some(vec![vec![0, 1]]));
    }

    #[test]
    fn characteristic_simplicity() {
        let a = examples::evsa();
        assert!(is_cs(&a).unwrap());
        assert!(is_cw(&a.direct_power(2)).unwrap());
    }

    #[test]
    fn eminvar_square_subalgebras_are_retracts() {
        let a = examples::eminvar().direct_power(2);
        for s in a.subalgebras().unwrap() {
            assert!(is_retract(&a, &s).unwrap());
        }
    }
}
