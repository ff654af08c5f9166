//! Finite fields GF(p^k) with q = p^k ≤ 256.
//!
//! Elements are encoded as integers `0..q`: the integer `Σ a_i p^i` stands
//! for the residue class of the polynomial `Σ a_i x^i` modulo the field's
//! defining polynomial.  The defining polynomial is the least monic
//! irreducible polynomial of degree `k` over GF(p), where polynomials are
//! ordered by the same integer encoding of their lower coefficients.  For
//! GF(4) this is `x² + x + 1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element in the polynomial encoding.
pub type Elem = u8;

struct Tables {
    p: u32,
    k: u32,
    q: usize,
    /// Coefficients `m_0..m_{k-1}` of the monic defining polynomial (leading 1 omitted).
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// A finite field; cheap to clone (tables are shared).
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

fn factor_prime_power(q: usize) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let (mut n, mut k) = (q, 0u32);
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1).then_some((p as u32, k))
}

fn digits(mut a: usize, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (a % p as usize) as u32;
            a /= p as usize;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Multiply two residues (digit vectors of length k) modulo the monic modulus.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len();
    let mut prod = vec![0u32; 2 * k.max(1)];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // Reduce: x^k = -Σ m_i x^i.
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            let t = (c * m) % p;
            prod[deg - k + i] = (prod[deg - k + i] + p - t) % p;
        }
    }
    prod.truncate(k);
    prod
}

/// True iff the monic polynomial with lower coefficients `m` is irreducible,
/// tested by checking that no monic polynomial of degree `1..=k/2` divides it.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len();
    let mut full: Vec<u32> = m.to_vec();
    full.push(1);
    for d in 1..=k / 2 {
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut div = digits(code, p, d as u32);
            div.push(1);
            if poly_divides(&div, &full, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(div: &[u32], num: &[u32], p: u32) -> bool {
    let mut r = num.to_vec();
    let dd = div.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in div.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

impl Field {
    /// The field with `q` elements; `q` must be a prime power ≤ 256.
    pub fn new(q: usize) -> Result<Field> {
        let (p, k) = factor_prime_power(q)
            .filter(|_| q <= 256)
            .ok_or_else(|| Error::domain(format!("q = {q} is not a prime power in 2..=256")))?;
        let modulus = if k == 1 {
            vec![0]
        } else {
            (0..(p as usize).pow(k))
                .map(|code| digits(code, p, k))
                .find(|m| is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let elems: Vec<Vec<u32>> = (0..q).map(|a| digits(a, p, k)).collect();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = elems[a].iter().zip(&elems[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as Elem;
                let m = if k == 1 {
                    vec![(elems[a][0] * elems[b][0]) % p]
                } else {
                    poly_mulmod(&elems[a], &elems[b], &modulus, p)
                };
                mul[a * q + b] = undigits(&m, p) as Elem;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem)
            .collect();
        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("field has inverses") as Elem;
        }
        Ok(Field(Arc::new(Tables { p, k, q, modulus, add, mul, neg, inv })))
    }

    /// Build from characteristic and degree, checking consistency with `q` if given.
    pub fn from_parts(q: usize, p: u32, k: u32) -> Result<Field> {
        let f = Field::new(q)?;
        if f.p() != p || f.k() != k {
            return Err(Error::domain(format!("q = {q} is not {p}^{k}")));
        }
        Ok(f)
    }

    pub fn q(&self) -> usize {
        self.0.q
    }
    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    /// Lower coefficients of the defining polynomial (the leading 1 is implicit).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }
    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        self.0.inv[a as usize]
    }
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let (mut base, mut e, mut acc) = (a, e, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }
    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|a| a as Elem)
    }
    /// Whether `a` is a valid encoded element.
    pub fn contains(&self, a: u32) -> bool {
        (a as usize) < self.0.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 10, 12, 257, 512] {
            assert!(Field::new(q).is_err(), "q = {q}");
        }
    }

    #[test]
    fn gf4_uses_x2_plus_x_plus_1() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1]);
        // g = x encoded as 2; g·g = g + 1 = 3.
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 1), 3);
    }

    #[test]
    fn field_axioms_hold_for_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    assert_eq!(f.pow(a, q as u64 - 1), 1, "Fermat in GF({q})");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn gf256_has_inverses() {
        let f = Field::new(256).unwrap();
        assert_eq!((f.p(), f.k()), (2, 8));
        for a in 1..=255u8 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
