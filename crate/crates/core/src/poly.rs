//! Nonassociative polynomials without constant term.
//!
//! Syntax: terms joined by `+`/`-`; a term is an optional integer
//! coefficient followed by a product; juxtaposition is the left-normed
//! product (`x1 x2 x3` means `(x1 x2) x3`); `(…)` groups; `a^k` is the
//! left-normed power `((a a) a)…`; variables are `x<digits>` (1-based) or a
//! bare `x` for `x1`.  Coefficients are reduced mod q and read in the field's
//! integer encoding.  Parsing merges like terms and drops zero terms, so a
//! polynomial that cancels completely parses to the zero polynomial.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::algebra::{Algebra, Bilinear};
use crate::caps;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, Echelon, Subspace, Vector};

/// A nonassociative monomial: a binary tree with variable leaves.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Monomial {
    /// Zero-based variable index (`x1` is `Var(0)`).
    Var(usize),
    Mul(Box<Monomial>, Box<Monomial>),
}

impl Monomial {
    pub fn var(i: usize) -> Monomial {
        Monomial::Var(i)
    }

    pub fn prod(a: Monomial, b: Monomial) -> Monomial {
        Monomial::Mul(Box::new(a), Box::new(b))
    }

    /// Left-normed product of the given factors.
    pub fn left_normed(factors: impl IntoIterator<Item = Monomial>) -> Option<Monomial> {
        factors.into_iter().reduce(Monomial::prod)
    }

    pub fn degree(&self) -> usize {
        match self {
            Monomial::Var(_) => 1,
            Monomial::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    /// Height of the tree: 0 for a variable.
    pub fn depth(&self) -> usize {
        match self {
            Monomial::Var(_) => 0,
            Monomial::Mul(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Occurrences of each variable, indexed `0..nvars`.
    pub fn multidegree(&self, nvars: usize) -> Vec<usize> {
        let mut d = vec![0; nvars];
        self.count_vars(&mut d);
        d
    }

    fn count_vars(&self, d: &mut Vec<usize>) {
        match self {
            Monomial::Var(i) => {
                if *i >= d.len() {
                    d.resize(i + 1, 0);
                }
                d[*i] += 1
            }
            Monomial::Mul(a, b) => {
                a.count_vars(d);
                b.count_vars(d);
            }
        }
    }

    /// Set of variables occurring.
    pub fn content(&self) -> BTreeSet<usize> {
        let mut d = vec![];
        self.count_vars(&mut d);
        d.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i).collect()
    }

    pub fn max_var(&self) -> usize {
        match self {
            Monomial::Var(i) => *i,
            Monomial::Mul(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Replace variables by shifting their indices.
    pub fn shift_vars(&self, by: usize) -> Monomial {
        match self {
            Monomial::Var(i) => Monomial::Var(i + by),
            Monomial::Mul(a, b) => Monomial::prod(a.shift_vars(by), b.shift_vars(by)),
        }
    }

    fn structural_cmp(&self, other: &Monomial) -> Ordering {
        match (self, other) {
            (Monomial::Var(a), Monomial::Var(b)) => a.cmp(b),
            (Monomial::Var(_), Monomial::Mul(..)) => Ordering::Less,
            (Monomial::Mul(..), Monomial::Var(_)) => Ordering::Greater,
            (Monomial::Mul(a1, b1), Monomial::Mul(a2, b2)) => {
                a1.structural_cmp(a2).then_with(|| b1.structural_cmp(b2))
            }
        }
    }
}

/// Degree first, then tree structure.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.structural_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Var(i) => write!(f, "x{}", i + 1),
            Monomial::Mul(a, b) => match **b {
                Monomial::Var(_) => write!(f, "{a} {b}"),
                _ => write!(f, "{a} ({b})"),
            },
        }
    }
}

/// A polynomial: a finite linear combination of monomials over `GF(q)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NAPoly {
    field: Field,
    terms: BTreeMap<Monomial, Elem>,
}

impl NAPoly {
    pub fn zero(field: &Field) -> NAPoly {
        NAPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(field: &Field, m: Monomial) -> NAPoly {
        NAPoly::from_terms(field, [(m, 1)])
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> NAPoly {
        let mut p = NAPoly::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Elem) {
        let f = &self.field;
        let e = self.terms.entry(m).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Elem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of variables mentioned (one more than the largest index).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.max_var() + 1).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NAPoly) -> NAPoly {
        let mut p = self.clone();
        for (m, c) in other.terms() {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn scale(&self, c: Elem) -> NAPoly {
        NAPoly::from_terms(&self.field, self.terms().map(|(m, a)| (m.clone(), self.field.mul(c, a))))
    }

    pub fn neg(&self) -> NAPoly {
        self.scale(self.field.neg(1))
    }

    pub fn sub(&self, other: &NAPoly) -> NAPoly {
        self.add(&other.neg())
    }

    /// Bilinear product.
    pub fn mul(&self, other: &NAPoly) -> NAPoly {
        let f = &self.field;
        let mut p = NAPoly::zero(f);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                p.add_term(Monomial::prod(a.clone(), b.clone()), f.mul(ca, cb));
            }
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Parse using the grammar described in the module docs.
    pub fn parse(field: &Field, src: &str) -> Result<NAPoly> {
        let mut p = Parser { src: src.as_bytes(), pos: 0, field };
        let poly = p.poly()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(poly)
    }

    pub fn compile(&self) -> Compiled {
        Compiled::new(self)
    }

    /// Value at the assignment `x_{i+1} ↦ assign[i]`.
    pub fn evaluate<P: Bilinear + ?Sized>(&self, p: &P, assign: &[Vector]) -> Vector {
        self.compile().eval(p, assign)
    }
}

impl fmt::Display for NAPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c} {m}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse::<u64>().unwrap_or(u64::MAX)
        })
    }

    fn poly(&mut self) -> Result<NAPoly> {
        let f = self.field;
        let mut acc = NAPoly::zero(f);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if sign { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => sign = false,
                Some(b'-') => sign = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(b'x') | Some(b'('))
    }

    fn term(&mut self) -> Result<NAPoly> {
        let f = self.field;
        let coef = match self.integer() {
            Some(n) => {
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                }
                Some((n % f.q() as u64) as Elem)
            }
            None => None,
        };
        if !self.starts_factor() {
            return Err(self.err(if coef.is_some() {
                "constant terms are not allowed"
            } else {
                "expected a variable or '('"
            }));
        }
        let mut prod = self.power()?;
        while self.starts_factor() {
            let next = self.power()?;
            prod = prod.mul(&next);
        }
        Ok(match coef {
            Some(c) => prod.scale(c),
            None => prod,
        })
    }

    fn power(&mut self) -> Result<NAPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer().ok_or_else(|| self.err("expected an exponent"))?;
            if k == 0 {
                return Err(self.err("zeroth powers are constants"));
            }
            if k > 64 {
                return Err(self.err("exponent too large"));
            }
            let mut acc = base.clone();
            for _ in 1..k {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NAPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.poly()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = match self.src.get(self.pos) {
                    Some(c) if c.is_ascii_digit() => self.integer().unwrap(),
                    _ => 1,
                };
                if idx == 0 || idx > 1 << 16 {
                    return Err(self.err("variables are numbered from x1"));
                }
                Ok(NAPoly::monomial(self.field, Monomial::var(idx as usize - 1)))
            }
            _ => Err(self.err("expected a variable or '('")),
        }
    }
}

/// A polynomial compiled to a straight-line program over its sub-monomials.
#[derive(Clone, Debug)]
pub struct Compiled {
    nvars: usize,
    ops: Vec<Op>,
    terms: Vec<(usize, Elem)>,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(usize),
    Mul(usize, usize),
}

impl Compiled {
    fn new(p: &NAPoly) -> Compiled {
        let mut slots: HashMap<Monomial, usize> = HashMap::new();
        let mut ops = vec![];
        fn slot(m: &Monomial, slots: &mut HashMap<Monomial, usize>, ops: &mut Vec<Op>) -> usize {
            if let Some(&s) = slots.get(m) {
                return s;
            }
            let op = match m {
                Monomial::Var(i) => Op::Var(*i),
                Monomial::Mul(a, b) => {
                    let sa = slot(a, slots, ops);
                    let sb = slot(b, slots, ops);
                    Op::Mul(sa, sb)
                }
            };
            ops.push(op);
            slots.insert(m.clone(), ops.len() - 1);
            ops.len() - 1
        }
        let terms = p.terms().map(|(m, c)| (slot(m, &mut slots, &mut ops), c)).collect();
        Compiled { nvars: p.nvars(), ops, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval<P: Bilinear + ?Sized>(&self, p: &P, assign: &[Vector]) -> Vector {
        let f = p.field();
        let mut vals: Vec<Vector> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => assign[i].clone(),
                Op::Mul(a, b) => p.mul(&vals[a], &vals[b]),
            };
            vals.push(v);
        }
        let mut out = vec![0; p.dim()];
        for &(s, c) in &self.terms {
            linalg::axpy(f, &mut out, c, &vals[s]);
        }
        out
    }
}

/// Iterate over all `elems^n` tuples, calling `visit` until it returns `false`.
fn for_each_tuple(elems: &[Vector], n: usize, mut visit: impl FnMut(&[Vector]) -> bool) {
    if elems.is_empty() {
        return;
    }
    let mut idx = vec![0usize; n];
    let mut tuple: Vec<Vector> = vec![elems[0].clone(); n];
    loop {
        if !visit(&tuple) {
            return;
        }
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                tuple[k] = elems[idx[k]].clone();
                break;
            }
            idx[k] = 0;
            tuple[k] = elems[0].clone();
            k += 1;
        }
    }
}

fn check_tuple_cap(a: &Algebra, nvars: usize) -> Result<Vec<Vector>> {
    let needed = caps::pow_sat(a.order(), nvars as u128);
    caps::check("identity check (assignments)", needed, caps::current().enumeration as u128)?;
    a.elements()
}

/// `Ok(None)` if `p` vanishes identically on `a`, otherwise a counterexample.
pub fn find_counterexample(a: &Algebra, p: &NAPoly) -> Result<Option<Vec<Vector>>> {
    if p.field() != a.field() {
        return Err(Error::domain("polynomial and algebra over different fields"));
    }
    let c = p.compile();
    let elems = check_tuple_cap(a, c.nvars())?;
    let mut found = None;
    for_each_tuple(&elems, c.nvars(), |t| {
        if linalg::is_zero(&c.eval(a, t)) {
            true
        } else {
            found = Some(t.to_vec());
            false
        }
    });
    Ok(found)
}

pub fn is_identity(a: &Algebra, p: &NAPoly) -> Result<bool> {
    Ok(find_counterexample(a, p)?.is_none())
}

pub fn satisfies_all(a: &Algebra, ps: &[NAPoly]) -> Result<bool> {
    for p in ps {
        if !is_identity(a, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A quasi-identity `p_1 = 0 ∧ … ∧ p_r = 0 → c = 0`.
#[derive(Clone, Debug)]
pub struct QuasiIdentity {
    pub premises: Vec<NAPoly>,
    pub conclusion: NAPoly,
}

/// `Ok(None)` if the quasi-identity holds in `a`, otherwise a counterexample.
pub fn quasi_counterexample(a: &Algebra, qi: &QuasiIdentity) -> Result<Option<Vec<Vector>>> {
    let prem: Vec<Compiled> = qi.premises.iter().map(NAPoly::compile).collect();
    let concl = qi.conclusion.compile();
    let n = prem.iter().map(Compiled::nvars).chain([concl.nvars()]).max().unwrap_or(0);
    let elems = check_tuple_cap(a, n)?;
    let mut found = None;
    for_each_tuple(&elems, n, |t| {
        let holds = prem.iter().all(|p| linalg::is_zero(&p.eval(a, t)));
        if holds && !linalg::is_zero(&concl.eval(a, t)) {
            found = Some(t.to_vec());
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// The ideal generated by all values of the polynomials on `a`.
pub fn verbal_ideal(a: &Algebra, ps: &[NAPoly]) -> Result<Subspace> {
    let f = a.field();
    let mut ech = Echelon::new(a.dim());
    for p in ps {
        let c = p.compile();
        let elems = check_tuple_cap(a, c.nvars())?;
        for_each_tuple(&elems, c.nvars(), |t| {
            ech.insert(f, &c.eval(a, t));
            !ech.is_full()
        });
    }
    Ok(a.ideal_closure(&ech.to_subspace(f)))
}

/// All binary trees with leaves `x_{first+1}, …, x_{first+n}` in order.
pub fn bracketings(first: usize, n: usize) -> Vec<Monomial> {
    if n == 1 {
        return vec![Monomial::var(first)];
    }
    let mut out = vec![];
    for split in 1..n {
        for l in bracketings(first, split) {
            for r in bracketings(first + split, n - split) {
                out.push(Monomial::prod(l.clone(), r));
            }
        }
    }
    out
}

/// The `Catalan(c)` monomials of degree `c + 1` (leaves in order); their
/// vanishing characterises nilpotency class `≤ c`.
pub fn nilpotent_class_identities(field: &Field, c: usize) -> Vec<NAPoly> {
    bracketings(0, c + 1).into_iter().map(|m| NAPoly::monomial(field, m)).collect()
}

/// Multilinear monomials of degree `d + 1` and depth `d` (leaves in order);
/// their vanishing characterises depth `≤ d`.
pub fn depth_identities(field: &Field, d: usize) -> Vec<NAPoly> {
    bracketings(0, d + 1)
        .into_iter()
        .filter(|m| m.depth() == d)
        .map(|m| NAPoly::monomial(field, m))
        .collect()
}

/// `s_1 = x1 x2`, `s_ℓ = s_{ℓ-1}(x_1..) · s_{ℓ-1}(x_{2^{ℓ-1}+1}..)`: the
/// identity characterising solvable length `≤ ℓ`.
pub fn solvability_monomial(l: usize) -> Monomial {
    assert!(l >= 1);
    if l == 1 {
        return Monomial::prod(Monomial::var(0), Monomial::var(1));
    }
    let half = solvability_monomial(l - 1);
    let shift = 1 << (l - 1);
    Monomial::prod(half.clone(), half.shift_vars(shift))
}

pub fn solvability_identity(field: &Field, l: usize) -> NAPoly {
    NAPoly::monomial(field, solvability_monomial(l))
}

/// `d = 0 ↦ 0`, otherwise the representative of `d` in `1..=q-1` mod `q - 1`:
/// monomials with equal reduced exponent vectors define the same function on GF(q).
fn reduced_degree(d: usize, q: usize) -> usize {
    if d == 0 {
        0
    } else {
        (d - 1) % (q - 1) + 1
    }
}

/// Each variable has the same degree mod `q - 1` in every monomial.
pub fn is_quasihomogeneous(p: &NAPoly) -> bool {
    let q = p.field().q();
    let n = p.nvars();
    let degs: Vec<Vec<usize>> = p.terms().map(|(m, _)| m.multidegree(n)).collect();
    (0..n).all(|i| degs.windows(2).all(|w| w[0][i] % (q - 1) == w[1][i] % (q - 1)))
}

/// Split `p` by reduced exponent vector; each part is quasihomogeneous.
pub fn quasihomogeneous_components(p: &NAPoly) -> Vec<NAPoly> {
    let q = p.field().q();
    let n = p.nvars();
    let mut groups: BTreeMap<Vec<usize>, NAPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let key: Vec<usize> = m.multidegree(n).into_iter().map(|d| reduced_degree(d, q)).collect();
        groups.entry(key).or_insert_with(|| NAPoly::zero(p.field())).add_term(m.clone(), c);
    }
    groups.into_values().collect()
}

/// Identity of the ground field (as a 1-dimensional algebra) iff every
/// component's coefficients sum to zero.
pub fn is_ground_field_identity(p: &NAPoly) -> bool {
    let f = p.field();
    quasihomogeneous_components(p).iter().all(|c| c.terms().fold(0, |acc, (_, a)| f.add(acc, a)) == 0)
}

/// The polynomial whose value function on `GF(q)^n` is the indicator of the
/// nonzero point `point`, written with left-normed monomials `x1^{e1} x2^{e2} …`.
pub fn indicator_polynomial(field: &Field, point: &[Elem]) -> Result<NAPoly> {
    if point.iter().all(|&a| a == 0) {
        return Err(Error::domain("the indicator of the origin has a constant term"));
    }
    let q = field.q();
    // Commutative polynomial: exponent vector -> coefficient.
    let mut poly: BTreeMap<Vec<usize>, Elem> = BTreeMap::from([(vec![0; point.len()], 1)]);
    for (i, &a) in point.iter().enumerate() {
        // Univariate factor as coefficients of x^0..x^{q-1}.
        let factor: Vec<Elem> = if a == 0 {
            let mut c = vec![0; q];
            c[0] = 1;
            c[q - 1] = field.neg(1);
            c
        } else {
            let mut c = vec![1];
            let mut denom = 1;
            for b in field.elements().filter(|&b| b != a) {
                // multiply by (x - b)
                let mut next = vec![0; c.len() + 1];
                for (d, &cd) in c.iter().enumerate() {
                    next[d + 1] = field.add(next[d + 1], cd);
                    next[d] = field.sub(next[d], field.mul(cd, b));
                }
                c = next;
                denom = field.mul(denom, field.sub(a, b));
            }
            let inv = field.inv(denom);
            c.iter().map(|&x| field.mul(x, inv)).collect()
        };
        let mut next: BTreeMap<Vec<usize>, Elem> = BTreeMap::new();
        for (e, &c) in &poly {
            for (d, &fd) in factor.iter().enumerate() {
                if fd == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] = d;
                let slot = next.entry(e2).or_insert(0);
                *slot = field.add(*slot, field.mul(c, fd));
            }
        }
        poly = next;
    }
    let mut out = NAPoly::zero(field);
    for (e, c) in poly {
        if c == 0 {
            continue;
        }
        let factors = e.iter().enumerate().flat_map(|(i, &d)| std::iter::repeat_n(Monomial::var(i), d));
        let m = Monomial::left_normed(factors).ok_or_else(|| Error::domain("constant term survived"))?;
        out.add_term(m, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn parse_left_normed_and_parens() {
        let f = f2();
        let p = NAPoly::parse(&f, "x1 x2 x3").unwrap();
        let want = Monomial::prod(Monomial::prod(Monomial::var(0), Monomial::var(1)), Monomial::var(2));
        assert_eq!(p, NAPoly::monomial(&f, want));
        let r = NAPoly::parse(&f, "x1 (x2 x3)").unwrap();
        assert_ne!(p, r);
        assert_eq!(NAPoly::parse(&f, "x^3").unwrap(), NAPoly::parse(&f, "x1 x1 x1").unwrap());
    }

    #[test]
    fn parse_cancellation_and_errors() {
        let f = f2();
        assert!(NAPoly::parse(&f, "x1 + x1").unwrap().is_zero());
        assert!(NAPoly::parse(&f, "x1 + 1").is_err());
        assert!(NAPoly::parse(&f, "x0").is_err());
        assert!(NAPoly::parse(&f, "x1 +").is_err());
        assert!(NAPoly::parse(&f, "(x1").is_err());
        let f3 = Field::new(3).unwrap();
        let p = NAPoly::parse(&f3, "2x1 x2 - x2 x1 + x1 x2").unwrap();
        assert_eq!(p, NAPoly::parse(&f3, "2 x2 x1").unwrap());
    }

    #[test]
    fn distributes_over_sums() {
        let f = Field::new(3).unwrap();
        let p = NAPoly::parse(&f, "(x1 + x2) x3").unwrap();
        assert_eq!(p, NAPoly::parse(&f, "x1 x3 + x2 x3").unwrap());
    }

    #[test]
    fn family_sizes() {
        let f = f2();
        let catalan = [1, 1, 2, 5, 14, 42];
        for (c, &count) in catalan.iter().enumerate() {
            assert_eq!(nilpotent_class_identities(&f, c).len(), count);
        }
        for d in 1..6 {
            assert_eq!(depth_identities(&f, d).len(), 1 << (d - 1));
        }
        assert_eq!(solvability_monomial(3).degree(), 8);
        assert_eq!(solvability_monomial(3).depth(), 3);
    }

    #[test]
    fn evsa_identities() {
        let a = examples::evsa();
        let f = a.field().clone();
        assert!(is_identity(&a, &NAPoly::parse(&f, "x1 x2 - x2 x1").unwrap()).unwrap());
        assert!(is_identity(&a, &NAPoly::parse(&f, "x^2 - x").unwrap()).unwrap());
        assert!(!is_identity(&a, &NAPoly::parse(&f, "x1 x2 x3 - x1 (x2 x3)").unwrap()).unwrap());
    }

    #[test]
    fn quasi_identity_counterexample() {
        let f = f2();
        // x² = x → x = 0 fails in eVSA (idempotents exist) but holds in N2.
        let qi = QuasiIdentity {
            premises: vec![NAPoly::parse(&f, "x^2 - x").unwrap()],
            conclusion: NAPoly::parse(&f, "x").unwrap(),
        };
        assert!(quasi_counterexample(&examples::evsa(), &qi).unwrap().is_some());
        assert!(quasi_counterexample(&examples::n2(), &qi).unwrap().is_none());
    }

    #[test]
    fn verbal_ideal_of_commutator_in_eminvar() {
        let a = examples::eminvar();
        let p = NAPoly::parse(a.field(), "x1 x2 - x2 x1").unwrap();
        assert_eq!(verbal_ideal(&a, &[p]).unwrap(), a.full());
    }

    #[test]
    fn family_identities_match_series() {
        for a in [examples::n2(), examples::solvable3(), examples::eminvar()] {
            let f = a.field().clone();
            for c in 1..4 {
                let holds = satisfies_all(&a, &nilpotent_class_identities(&f, c)).unwrap();
                assert_eq!(holds, a.nilpotency_class().is_some_and(|k| k <= c));
                let holds = satisfies_all(&a, &depth_identities(&f, c)).unwrap();
                assert_eq!(holds, a.depth().is_some_and(|k| k <= c));
            }
            for l in 1..3 {
                let holds = is_identity(&a, &solvability_identity(&f, l)).unwrap();
                assert_eq!(holds, a.solvable_length().is_some_and(|k| k <= l));
            }
        }
    }

    #[test]
    fn indicator_values() {
        for q in [2, 3, 4] {
            let f = Field::new(q).unwrap();
            let gf = examples::ground_field(f.clone());
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    if (a, b) == (0, 0) {
                        continue;
                    }
                    let p = indicator_polynomial(&f, &[a, b]).unwrap();
                    for x in 0..q as u8 {
                        for y in 0..q as u8 {
                            let v = p.evaluate(&gf, &[vec![x], vec![y]]);
                            assert_eq!(v[0], ((x, y) == (a, b)) as u8, "q={q} point=({a},{b}) at ({x},{y})");
                        }
                    }
                }
            }
        }
    }

    fn arb_monomial(nvars: usize) -> impl Strategy<Value = Monomial> {
        let leaf = (0..nvars).prop_map(Monomial::var);
        leaf.prop_recursive(4, 12, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Monomial::prod(a, b)))
    }

    fn arb_poly(q: usize) -> impl Strategy<Value = NAPoly> {
        prop::collection::vec((arb_monomial(3), 0..q as u8), 1..5)
            .prop_map(move |ts| NAPoly::from_terms(&Field::new(q).unwrap(), ts))
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(p in arb_poly(3)) {
            let text = p.to_string();
            if p.is_zero() {
                prop_assert_eq!(text, "0");
            } else {
                prop_assert_eq!(NAPoly::parse(p.field(), &text).unwrap(), p);
            }
        }

        #[test]
        fn ground_field_identity_criterion(p in arb_poly(3)) {
            let gf = examples::ground_field(p.field().clone());
            prop_assert_eq!(is_ground_field_identity(&p), is_identity(&gf, &p).unwrap());
        }

        #[test]
        fn components_are_quasihomogeneous(p in arb_poly(3)) {
            let parts = quasihomogeneous_components(&p);
            let sum = parts.iter().fold(NAPoly::zero(p.field()), |a, c| a.add(c));
            prop_assert_eq!(sum, p);
            for c in parts { prop_assert!(is_quasihomogeneous(&c)); }
        }
    }
}
