//! Resource caps for the exhaustive searches.
//!
//! Every brute-force routine checks its projected work against a cap before
//! starting and fails with [`Error::CapExceeded`] instead of running away.
//! Defaults can be overridden by the `VARIETYLAB_CAP` environment variable,
//! either as a single integer (replacing the enumeration cap) or as a comma
//! separated list of `key=value` pairs with keys `enum`, `ambient`, `gl`,
//! `subspaces`, `aut`.  Code may also scope an override with [`with_caps`].

use std::cell::RefCell;
use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Tuple evaluations in identity checks and morphism searches.
    pub enumeration: u64,
    /// Ambient dimension of Birkhoff algebras.
    pub ambient: usize,
    /// Order of GL(m, q) enumerated by the census.
    pub gl: usize,
    /// Number of field vectors scanned by subspace-lattice enumerations (q^m).
    pub subspaces: u64,
    /// Order of automorphism groups listed element by element.
    pub aut: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { enumeration: 1 << 24, ambient: 1 << 14, gl: 10_000, subspaces: 1 << 16, aut: 10_000 }
    }
}

impl Caps {
    /// Defaults adjusted by `VARIETYLAB_CAP`, if set and well formed.
    pub fn from_env() -> Result<Caps> {
        match std::env::var("VARIETYLAB_CAP") {
            Ok(s) => Caps::parse(&s),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        let bad = || Error::domain(format!("malformed VARIETYLAB_CAP value {s:?}"));
        if let Ok(n) = s.trim().parse::<u64>() {
            caps.enumeration = n;
            return Ok(caps);
        }
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(bad)?;
            let val: u64 = val.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "enum" => caps.enumeration = val,
                "ambient" => caps.ambient = val as usize,
                "gl" => caps.gl = val as usize,
                "subspaces" => caps.subspaces = val,
                "aut" => caps.aut = val as usize,
                _ => return Err(bad()),
            }
        }
        Ok(caps)
    }
}

static ENV_CAPS: OnceLock<Caps> = OnceLock::new();

thread_local! {
    static OVERRIDE: RefCell<Option<Caps>> = const { RefCell::new(None) };
}

/// Caps in force on this thread.
pub fn current() -> Caps {
    OVERRIDE
        .with(|o| *o.borrow())
        .unwrap_or_else(|| *ENV_CAPS.get_or_init(|| Caps::from_env().unwrap_or_default()))
}

/// Run `f` with `caps` in force on the current thread.
pub fn with_caps<T>(caps: Caps, f: impl FnOnce() -> T) -> T {
    let prev = OVERRIDE.with(|o| o.borrow_mut().replace(caps));
    let out = f();
    OVERRIDE.with(|o| *o.borrow_mut() = prev);
    out
}

/// Fail unless `needed ≤ cap`.
pub fn check(what: &str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::cap(what, needed, cap))
    } else {
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub fn pow_sat(base: u128, exp: u128) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(Caps::parse("1000").unwrap().enumeration, 1000);
        let c = Caps::parse("gl=5, ambient=7").unwrap();
        assert_eq!((c.gl, c.ambient), (5, 7));
        assert!(Caps::parse("bogus=1").is_err());
        assert!(Caps::parse("gl=x").is_err());
    }

    #[test]
    fn scoped_override_restores() {
        let before = current();
        let inner = with_caps(Caps { gl: 3, ..before }, || current().gl);
        assert_eq!(inner, 3);
        assert_eq!(current(), before);
    }
}
