//! The theorem suite: twelve finite, exactly checkable statements about the
//! library's example algebras, each reported as PASS or FAIL with details.
//! Shared by the `theorem-suite` command and the acceptance test target.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Bilinear};
use crate::birkhoff::{self, FreeAlgebra};
use crate::census::{self, Orbiter, Property};
use crate::constructions::{self, EnvelopeKind};
use crate::error::Result;
use crate::examples;
use crate::field::Field;
use crate::linalg::{self, Matrix, Subspace};
use crate::morphisms;
use crate::poly;

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Also run the full 2^27-tensor census at `(m, q) = (3, 2)`.
    pub full_census: bool,
    /// Seed for the sampled checks.
    pub seed: u64,
}

impl SuiteOptions {
    /// Defaults, with the long census enabled by `VARIETYLAB_FULL_CENSUS=1`.
    pub fn from_env() -> SuiteOptions {
        let full_census = std::env::var("VARIETYLAB_FULL_CENSUS").is_ok_and(|v| v == "1");
        SuiteOptions { full_census, seed: 2024 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    #[serde(skip)]
    pub millis: u128,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({} ms): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.millis,
            self.detail
        )
    }
}

type Check = fn(&SuiteOptions) -> Result<(bool, String)>;

pub const CHECKS: [(&str, Check); 12] = [
    ("minimal rigid algebra and its free algebras", minimal_rigid),
    ("free product of powers", free_product),
    ("ground field GF(2) as an algebra", ground_field),
    ("nilpotency equivalences", nilpotency),
    ("solvable three-dimensional example", solvable_example),
    ("structure-tuple counting formulas", tuple_counts),
    ("census of 2-dimensional algebras over GF(2)", census_small),
    ("semidirect sum certificates", semidirect),
    ("residual approximation of a free nilpotent algebra", residual),
    ("enveloping algebra nilpotency correspondence", enveloping),
    ("product-variety dimension formula", product_variety),
    ("socle height one and retracts", socle_height_one),
];

pub fn run_check(id: usize, opts: &SuiteOptions) -> CheckOutcome {
    let (name, check) = CHECKS[id - 1];
    let start = Instant::now();
    let (pass, detail) = match check(opts) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome { id, name, pass, detail, millis: start.elapsed().as_millis() }
}

pub fn run_all(opts: &SuiteOptions) -> Vec<CheckOutcome> {
    (1..=CHECKS.len()).map(|id| run_check(id, opts)).collect()
}

fn gf2() -> Field {
    Field::new(2).expect("GF(2)")
}

fn random_algebra(rng: &mut ChaCha8Rng, f: &Field, m: usize) -> Algebra {
    let table = (0..m * m * m).map(|_| rng.gen_range(0..f.q()) as u8).collect();
    Algebra::new(f.clone(), m, table).expect("valid table")
}

fn minimal_rigid(_: &SuiteOptions) -> Result<(bool, String)> {
    let a = examples::eminvar();
    let minimal = a.is_minimal()?;
    let simple = a.is_simple()?;
    let aut = morphisms::automorphism_group(&a)?.order;
    let d1 = birkhoff::decompose_free_minimal(&a, 1)?;
    let d2 = birkhoff::decompose_free_minimal(&a, 2)?;
    let beta2 = a.dim() * (a.order() as usize * a.order() as usize - 1) / aut;
    let pass = minimal
        && simple
        && aut == 1
        && d1.ok()
        && (d1.dim, d1.summands) == (6, 3)
        && d2.ok()
        && (d2.dim, d2.summands) == (30, 15)
        && beta2 == 30;
    Ok((
        pass,
        format!(
            "minimal={minimal} simple={simple} |Aut|={aut} dim F1={} ({} summands) dim F2={} ({} summands) beta(2)={beta2}",
            d1.dim, d1.summands, d2.dim, d2.summands
        ),
    ))
}

fn free_product(_: &SuiteOptions) -> Result<(bool, String)> {
    let a = examples::eminvar();
    let fp = constructions::free_product_powers(&a, 1, 1)?;
    let expected = ((1 + 1) * (1 + 1) - 1) * a.dim();
    let a4 = a.direct_power(4);
    let embeds = morphisms::embeddings(&a, &a4)?;
    let mut largest = 0;
    for e1 in &embeds {
        for e2 in &embeds {
            let gens: Matrix = e1.iter().chain(e2).cloned().collect();
            largest = largest.max(a4.subalgebra_generated(&gens).dim());
        }
    }
    let pass = fp.algebra.dim() == expected && fp.generated && largest <= expected && !embeds.is_empty();
    Ok((
        pass,
        format!(
            "dim={} expected={expected} generated={} embeddings A->A^4={} largest 2-copy subalgebra={largest}",
            fp.algebra.dim(),
            fp.generated,
            embeds.len()
        ),
    ))
}

fn ground_field(_: &SuiteOptions) -> Result<(bool, String)> {
    let f = gf2();
    let a = examples::ground_field(f.clone());
    let mut pass = true;
    let mut dims = vec![];
    for n in 1..=8 {
        let d = birkhoff::free_dimension(&a, n)?;
        pass &= d == (1 << n) - 1;
        dims.push(d);
    }
    for n in 1..=4 {
        let dec = birkhoff::decompose_free_minimal(&a, n)?;
        pass &= dec.ok() && dec.summands == (1 << n) - 1;
    }
    let mut lagrange = 0;
    for n in 1..=2 {
        let free = FreeAlgebra::new(&a, n)?;
        for b in free.blocks() {
            let [p] = b.points[..] else {
                pass = false;
                continue;
            };
            let point: Vec<u8> = free.ambient.points[p].iter().map(|x| x[0]).collect();
            let ind = poly::indicator_polynomial(&f, &point)?;
            let value = ind.evaluate(&free.ambient, &free.gens);
            pass &= b.space == Subspace::span(&f, free.ambient.dim(), [value]);
            lagrange += 1;
        }
    }
    pass &= lagrange == 1 + 3;
    Ok((pass, format!("d(1..8)={dims:?}; decompositions n<=4 ok; {lagrange} Lagrange components matched")))
}

/// Equivalences and bounds among the nilpotency invariants of one algebra.
fn nilpotency_violation(a: &Algebra) -> Result<Option<String>> {
    let class = a.nilpotency_class();
    let depth = a.depth();
    let upper = a.upper_annihilator_series();
    let reaches = upper.last().is_some_and(|z| z.is_full());
    if class.is_some() != depth.is_some() || depth.is_some() != reaches {
        return Ok(Some(format!("class={class:?} depth={depth:?} annihilator reaches={reaches}")));
    }
    if let (Some(c), Some(d)) = (class, depth) {
        if !(d <= c && c <= (1 << (d - 1)) + 1) {
            return Ok(Some(format!("bounds fail: depth={d} class={c}")));
        }
        if a.socle_series()? != upper {
            return Ok(Some("socle series differs from the upper annihilator series".into()));
        }
    }
    Ok(None)
}

fn nilpotency(opts: &SuiteOptions) -> Result<(bool, String)> {
    let f = gf2();
    let mut checked = 0;
    let mut nilpotent = 0;
    let mut violations = vec![];
    let mut visit = |a: &Algebra| -> Result<()> {
        checked += 1;
        nilpotent += a.is_nilpotent() as usize;
        if let Some(v) = nilpotency_violation(a)? {
            violations.push(format!("{:?}: {v}", a.tensor()));
        }
        Ok(())
    };
    for idx in 0..256 {
        visit(&Algebra::new(f.clone(), 2, census::tensor_from_index(2, 2, idx))?)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..10_000 {
        visit(&random_algebra(&mut rng, &f, 3))?;
    }
    // Every nilpotent 3-dimensional algebra is conjugate to a flag tuple.
    for t in flag_tuples(&f, 3) {
        visit(&t)?;
    }
    Ok((
        violations.is_empty(),
        format!("{checked} algebras ({nilpotent} nilpotent), {} violations {:?}", violations.len(), violations.first()),
    ))
}

/// All tensors with `e_j e_l` in the span of basis vectors below `min(j, l)`.
fn flag_tuples(f: &Field, m: usize) -> Vec<Algebra> {
    let free: Vec<(usize, usize, usize)> = (0..m)
        .flat_map(|j| (0..m).flat_map(move |l| (0..j.min(l)).map(move |u| (j, l, u))))
        .collect();
    let total = (f.q() as u64).pow(free.len() as u32);
    (0..total)
        .map(|idx| {
            let digits = linalg::vector_from_index(f.q(), free.len(), idx);
            let mut table = vec![0; m * m * m];
            for (&(j, l, u), &d) in free.iter().zip(&digits) {
                table[(j * m + l) * m + u] = d;
            }
            Algebra::new(f.clone(), m, table).expect("valid table")
        })
        .collect()
}

fn solvable_example(_: &SuiteOptions) -> Result<(bool, String)> {
    let a = examples::solvable3();
    let len = a.solvable_length();
    let abelian_ideals =
        a.ideals()?.iter().filter(|i| !i.is_zero() && a.square(i).is_zero()).count();
    let series = a.commutator_series();
    let last = series.iter().rev().find(|s| !s.is_zero()).cloned().unwrap_or_else(|| a.zero_space());
    let depth = morphisms::subideal_depth(&a, &last)?;
    let is_ideal = a.is_ideal(&last);
    let pass = len == Some(3) && abelian_ideals == 0 && depth == Some(2) && !is_ideal;
    Ok((
        pass,
        format!(
            "solvable length={len:?} abelian ideals={abelian_ideals} last derived term dim={} subideal depth={depth:?} ideal={is_ideal}",
            last.dim()
        ),
    ))
}

fn tuple_counts(_: &SuiteOptions) -> Result<(bool, String)> {
    let mut pass = true;
    let mut parts = vec![];
    for q in [2, 3] {
        for m in [1, 2] {
            let mu = census::count_nilpotent_flag_tuples(m, q)?;
            let rho = census::count_solvable_flag_tuples(m, q)?;
            pass &= mu.ok() && rho.ok() && mu.direct.is_some() && rho.direct.is_some();
            parts.push(format!("mu({m},{q})={} rho({m},{q})={}", mu.formula, rho.formula));
        }
    }
    let expect = [(2, 2, 2, 8), (2, 3, 3, 27)];
    for (m, q, mu, rho) in expect {
        pass &= census::count_nilpotent_flag_tuples(m, q)?.formula == mu;
        pass &= census::count_solvable_flag_tuples(m, q)?.formula == rho;
    }
    Ok((pass, parts.join(", ")))
}

fn census_small(opts: &SuiteOptions) -> Result<(bool, String)> {
    let base = census::enumerate_algebras(2, 2, &Property::ALL, 1, false)?;
    let json = serde_json::to_string(&base)?;
    let mut deterministic = true;
    for shards in [2, 8] {
        let r = census::enumerate_algebras(2, 2, &Property::ALL, shards, false)?;
        deterministic &= serde_json::to_string(&r)? == json;
    }
    let rigid = base.counts[&Property::TrivialAut];
    let mut pass = base.invariants.ok()
        && base.orbit_size_sum == 256
        && base.invariants.rigid_orbits_full == Some(true)
        && deterministic;
    let mut detail = format!(
        "phi(2)={} rigid={rigid} simple={} bounds {:.2} <= phi <= {} orbit sum={} deterministic over shards 1,2,8={deterministic}",
        base.phi, base.counts[&Property::Simple], base.lower_bound, base.upper_bound, base.orbit_size_sum
    );
    if opts.full_census {
        let shards = std::thread::available_parallelism().map_or(8, |n| n.get() * 4);
        let big = census::enumerate_algebras(3, 2, &[Property::TrivialAut], shards, true)?;
        pass &= big.invariants.ok() && big.orbit_size_sum == 1 << 27;
        detail += &format!("; (3,2): phi={} rigid={} orbit sum={}", big.phi, big.counts[&Property::TrivialAut], big.orbit_size_sum);
    }
    Ok((pass, detail))
}

fn semidirect(opts: &SuiteOptions) -> Result<(bool, String)> {
    let f = gf2();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5e);
    let mut built = 0;
    let mut failures = 0;
    let mut attempts = 0;
    while built < 20 && attempts < 100_000 {
        attempts += 1;
        let m = rng.gen_range(2..=3);
        let c = random_algebra(&mut rng, &f, m);
        let ideals: Vec<Subspace> =
            c.minimal_ideals()?.into_iter().filter(|i| c.square(i).is_zero() && !i.is_full()).collect();
        let Some(ideal) = ideals.first() else { continue };
        let s = constructions::semidirect_sum(&c, ideal)?;
        built += 1;
        if !s.certificate.ok() || !s.ideal_image_is_minimal()? {
            failures += 1;
        }
    }
    Ok((built == 20 && failures == 0, format!("{built} certificates built, {failures} failures")))
}

fn residual(_: &SuiteOptions) -> Result<(bool, String)> {
    let a = examples::n2();
    let free = FreeAlgebra::new(&a, 6)?;
    let (alg, gens) = free.materialize()?;
    let residually = morphisms::is_residually(&alg, Some(&gens), &a)?;
    Ok((
        residually && alg.dim() == 27,
        format!("dim F6={} kernels of epimorphisms onto A meet in zero={residually}", alg.dim()),
    ))
}

fn enveloping(opts: &SuiteOptions) -> Result<(bool, String)> {
    let f = gf2();
    let violates = |a: &Algebra| {
        let u = constructions::enveloping(a, EnvelopeKind::TwoSided);
        a.depth() != u.nilpotency_class().map(|c| c + 1)
    };
    let mut violations = 0;
    let mut classes_2 = 0;
    let census = census::enumerate_algebras(2, 2, &[Property::Nilpotent], 1, false)?;
    for c in census.classes.iter().filter(|c| c.properties.contains(&Property::Nilpotent)) {
        violations += violates(&Algebra::new(f.clone(), 2, c.tensor.clone())?) as usize;
        classes_2 += 1;
    }
    let mut sampled = 0;
    // Random nilpotent tensors: a random flag tuple in a random basis.
    let flags = flag_tuples(&f, 3);
    let orbiter = Orbiter::new(f.clone(), 3)?;
    let group = census::gl_elements(&f, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xe7);
    for _ in 0..1000 {
        let t = &flags[rng.gen_range(0..flags.len())];
        let (g, h) = &group[rng.gen_range(0..group.len())];
        let a = Algebra::new(f.clone(), 3, orbiter.transform(t.tensor(), g, h))?;
        violations += violates(&a) as usize;
        sampled += 1;
    }
    Ok((
        violations == 0,
        format!("{classes_2} nilpotent (2,2) classes and {sampled} sampled (3,2) tensors, {violations} violations"),
    ))
}

fn product_variety(_: &SuiteOptions) -> Result<(bool, String)> {
    let d: Vec<u128> = (1..=10).collect();
    let mut pass = true;
    for n in 1..=10u128 {
        let v = constructions::product_variety_dimension(&d, &d, n as usize)?;
        pass &= v == constructions::free_nilpotent_assoc_dim(n, 3) && v == n + n * n + n * n * n;
    }
    Ok((pass, "n + n^2 + n^3 for n = 1..10".into()))
}

/// `F` splits into simple summands and every ideal is a direct summand.
fn splits_into_simples(a: &Algebra) -> Result<bool> {
    let Some(parts) = census::minimal_ideal_decomposition(a)? else { return Ok(false) };
    for p in &parts {
        if !a.restrict(p)?.is_simple()? {
            return Ok(false);
        }
    }
    let f = a.field();
    let ideals = a.ideals()?;
    Ok(ideals.iter().all(|i| ideals.iter().any(|j| i.intersection(f, j).is_zero() && i.dim() + j.dim() == a.dim())))
}

fn socle_height_one(_: &SuiteOptions) -> Result<(bool, String)> {
    let a = examples::evsa();
    let mut pass = true;
    let mut dims = vec![];
    for n in 1..=2 {
        let free = FreeAlgebra::new(&a, n)?;
        let (alg, _) = free.materialize()?;
        pass &= splits_into_simples(&alg)? && birkhoff::free_socle_height(&free)? == 1;
        dims.push(alg.dim());
    }
    let e = examples::eminvar();
    let sq = e.direct_power(2);
    let subs = sq.subalgebras()?;
    let mut retracts = 0;
    for s in &subs {
        retracts += morphisms::is_retract(&sq, s)? as usize;
    }
    pass &= retracts == subs.len();
    Ok((
        pass,
        format!("eVSA free dims {dims:?} split into simples; {retracts}/{} subalgebras of the square are retracts", subs.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_tuple_count() {
        assert_eq!(flag_tuples(&gf2(), 3).len(), 32);
        assert!(flag_tuples(&gf2(), 3).iter().all(|a| a.is_nilpotent()));
    }

    #[test]
    fn quick_checks_pass() {
        let opts = SuiteOptions::default();
        for id in [1, 5, 6, 11] {
            let r = run_check(id, &opts);
            assert!(r.pass, "{}", r.line());
        }
    }
}
