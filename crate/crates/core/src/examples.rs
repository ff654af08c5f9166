//! Small algebras used throughout the tests, the CLI and the theorem suite.

use crate::algebra::Algebra;
use crate::field::Field;
use crate::linalg::Vector;

fn gf2() -> Field {
    Field::new(2).expect("GF(2)")
}

fn table(field: Field, dim: usize, rows: &[&[&[u8]]]) -> Algebra {
    Algebra::from_fn(field, dim, |i, j| rows[i][j].to_vec())
}

/// The 2-dimensional algebra over GF(2) with `ee = f`, `ef = 0`, `fe = ff = e`:
/// minimal, simple, with trivial automorphism group.
pub fn eminvar() -> Algebra {
    table(gf2(), 2, &[&[&[0, 1], &[0, 0]], &[&[1, 0], &[1, 0]]])
}

/// The 2-dimensional commutative algebra over GF(2) with `e² = e`, `f² = f`,
/// `ef = fe = e + f`: simple, satisfying `x² = x`, automorphism group of order 6.
pub fn evsa() -> Algebra {
    table(gf2(), 2, &[&[&[1, 0], &[1, 1]], &[&[1, 1], &[0, 1]]])
}

/// The 2-dimensional algebra over GF(2) with `ee = f` and all other products zero.
pub fn n2() -> Algebra {
    table(gf2(), 2, &[&[&[0, 1], &[0, 0]], &[&[0, 0], &[0, 0]]])
}

/// The ground field as a 1-dimensional algebra with `e² = e`.
pub fn ground_field(field: Field) -> Algebra {
    Algebra::from_fn(field, 1, |_, _| vec![1])
}

/// A 3-dimensional commutative solvable, non-nilpotent algebra over GF(2).
/// Basis `a, b, c`: `a² = b`, `ab = b² = c`, `ac = b`, `bc = c`, `c² = 0`.
pub fn solvable3() -> Algebra {
    let b: Vector = vec![0, 1, 0];
    let c: Vector = vec![0, 0, 1];
    let z: Vector = vec![0, 0, 0];
    let rows = [[b.clone(), c.clone(), b.clone()], [c.clone(), c.clone(), c.clone()], [b, c, z]];
    Algebra::from_fn(gf2(), 3, |i, j| rows[i][j].clone())
}

/// Look up a built-in algebra by name (`eminvar`, `evsa`, `n2`, `gf2`, `solvable3`).
pub fn builtin(name: &str) -> Option<Algebra> {
    Some(match name {
        "eminvar" => eminvar(),
        "evsa" => evsa(),
        "n2" => n2(),
        "gf2" => ground_field(gf2()),
        "solvable3" => solvable3(),
        _ => return None,
    })
}

pub const BUILTIN_NAMES: &[&str] = &["eminvar", "evsa", "n2", "gf2", "solvable3"];
