//! C ABI over the `varietylab` core.  Algebras are opaque `VlAlgebra`
//! handles; every fallible call returns a `VlStatus` and writes its result
//! through an out-pointer.  On failure the message is available from
//! `vl_last_error_message` until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use varietylab::birkhoff;
use varietylab::examples;
use varietylab::morphisms;
use varietylab::poly::{self, NAPoly};
use varietylab::{Algebra, Bilinear, Error};

/// Opaque algebra handle.
pub struct VlAlgebra(Algebra);

/// Result codes; `VL_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VlStatus {
    VlOk = 0,
    VlDomainError = 1,
    VlCapExceeded = 2,
    VlParseError = 3,
    VlIoError = 4,
    VlNullPointer = 5,
    VlInvalidUtf8 = 6,
    VlPanic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("interior NULs removed"));
}

fn status_of(e: &Error) -> VlStatus {
    match e {
        Error::Domain(_) => VlStatus::VlDomainError,
        Error::CapExceeded { .. } => VlStatus::VlCapExceeded,
        Error::Parse { .. } | Error::Json(_) => VlStatus::VlParseError,
        Error::Io(_) => VlStatus::VlIoError,
    }
}

enum Fail {
    Status(VlStatus, String),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Core(e)
    }
}

/// Run `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VlStatus::VlOk,
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            VlStatus::VlPanic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Status(VlStatus::VlNullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(VlStatus::VlInvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn alg_arg<'a>(a: *const VlAlgebra) -> Result<&'a Algebra, Fail> {
    a.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Fail::Status(VlStatus::VlNullPointer, "algebra handle is NULL".into()))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(VlStatus::VlNullPointer, "output pointer is NULL".into()));
    }
    out.write(v);
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failing call on this thread (never NULL).
#[no_mangle]
pub extern "C" fn vl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse an algebra from its JSON form `{q, p, k, dim, table}`.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_from_json(json: *const c_char, out: *mut *mut VlAlgebra) -> VlStatus {
    guard(|| {
        let a = Algebra::from_json_str(str_arg(json, "json")?)?;
        write(out, Box::into_raw(Box::new(VlAlgebra(a))))
    })
}

/// One of the built-in example algebras (`eminvar`, `evsa`, `n2`, `gf2`, `solvable3`).
///
/// # Safety
/// `name` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_builtin(name: *const c_char, out: *mut *mut VlAlgebra) -> VlStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let a = examples::builtin(name)
            .ok_or_else(|| Fail::Status(VlStatus::VlDomainError, format!("unknown builtin {name:?}")))?;
        write(out, Box::into_raw(Box::new(VlAlgebra(a))))
    })
}

/// Release a handle; NULL is ignored.
///
/// # Safety
/// `a` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_free(a: *mut VlAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// The JSON form of an algebra; release with `vl_string_free`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_to_json(a: *const VlAlgebra, out: *mut *mut c_char) -> VlStatus {
    guard(|| {
        let s = CString::new(alg_arg(a)?.to_json_string()).expect("JSON has no NUL");
        write(out, s.into_raw())
    })
}

/// Release a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_dim(a: *const VlAlgebra, out: *mut usize) -> VlStatus {
    guard(|| write(out, alg_arg(a)?.dim()))
}

/// Order `q` of the ground field.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_field_order(a: *const VlAlgebra, out: *mut usize) -> VlStatus {
    guard(|| write(out, alg_arg(a)?.field().q()))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_is_simple(a: *const VlAlgebra, out: *mut bool) -> VlStatus {
    guard(|| write(out, alg_arg(a)?.is_simple()?))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_is_minimal(a: *const VlAlgebra, out: *mut bool) -> VlStatus {
    guard(|| write(out, alg_arg(a)?.is_minimal()?))
}

/// Nilpotency class, or 0 if the algebra is not nilpotent.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_nilpotency_class(a: *const VlAlgebra, out: *mut usize) -> VlStatus {
    guard(|| write(out, alg_arg(a)?.nilpotency_class().unwrap_or(0)))
}

/// Solvable length, or 0 if the algebra is not solvable.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_algebra_solvable_length(a: *const VlAlgebra, out: *mut usize) -> VlStatus {
    guard(|| write(out, alg_arg(a)?.solvable_length().unwrap_or(0)))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_automorphism_group_order(a: *const VlAlgebra, out: *mut usize) -> VlStatus {
    guard(|| write(out, morphisms::automorphism_group(alg_arg(a)?)?.order))
}

/// `dim F_n(var A)`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_free_dimension(a: *const VlAlgebra, rank: usize, out: *mut usize) -> VlStatus {
    guard(|| write(out, birkhoff::free_dimension(alg_arg(a)?, rank)?))
}

/// Whether the polynomial (e.g. `"x1 x2 - x2 x1"`) is an identity of the algebra.
///
/// # Safety
/// `a` must be a live handle; `poly` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vl_is_identity(a: *const VlAlgebra, poly: *const c_char, out: *mut bool) -> VlStatus {
    guard(|| {
        let a = alg_arg(a)?;
        let p = NAPoly::parse(a.field(), str_arg(poly, "poly")?)?;
        write(out, poly::is_identity(a, &p)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(vl_last_error_message()).to_string_lossy().into_owned() }
    }

    #[test]
    fn round_trip_and_queries() {
        unsafe {
            let mut a = ptr::null_mut();
            assert_eq!(vl_algebra_builtin(c"eminvar".as_ptr(), &mut a), VlStatus::VlOk);
            let mut dim = 0;
            assert_eq!(vl_algebra_dim(a, &mut dim), VlStatus::VlOk);
            assert_eq!(dim, 2);
            let mut simple = false;
            assert_eq!(vl_algebra_is_simple(a, &mut simple), VlStatus::VlOk);
            assert!(simple);
            let mut d = 0;
            assert_eq!(vl_free_dimension(a, 2, &mut d), VlStatus::VlOk);
            assert_eq!(d, 30);
            let mut json = ptr::null_mut();
            assert_eq!(vl_algebra_to_json(a, &mut json), VlStatus::VlOk);
            let mut b = ptr::null_mut();
            assert_eq!(vl_algebra_from_json(json, &mut b), VlStatus::VlOk);
            assert_eq!((*a).0, (*b).0);
            vl_string_free(json);
            let mut order = 0;
            assert_eq!(vl_automorphism_group_order(b, &mut order), VlStatus::VlOk);
            assert_eq!(order, 1);
            vl_algebra_free(a);
            vl_algebra_free(b);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut a = ptr::null_mut();
            assert_eq!(vl_algebra_from_json(c"{not json".as_ptr(), &mut a), VlStatus::VlParseError);
            assert!(!last_error().is_empty());
            assert_eq!(vl_algebra_builtin(c"nope".as_ptr(), &mut a), VlStatus::VlDomainError);
            assert!(last_error().contains("nope"));
            let mut dim = 0;
            assert_eq!(vl_algebra_dim(ptr::null(), &mut dim), VlStatus::VlNullPointer);
            assert_eq!(vl_algebra_builtin(c"n2".as_ptr(), &mut a), VlStatus::VlOk);
            assert_eq!(vl_free_dimension(a, 12, &mut dim), VlStatus::VlCapExceeded);
            let mut holds = false;
            assert_eq!(vl_is_identity(a, c"x1 (x2 x3)".as_ptr(), &mut holds), VlStatus::VlOk);
            assert!(holds);
            assert_eq!(vl_is_identity(a, c"x1 +".as_ptr(), &mut holds), VlStatus::VlParseError);
            let mut class = 0;
            assert_eq!(vl_algebra_nilpotency_class(a, &mut class), VlStatus::VlOk);
            assert_eq!(class, 2);
            vl_algebra_free(a);
        }
    }

    #[test]
    fn header_declares_the_api() {
        let header = include_str!("../include/varietylab.h");
        for name in ["VlAlgebra", "VlStatus", "vl_algebra_from_json", "vl_free_dimension", "vl_last_error_message"] {
            assert!(header.contains(name), "{name} missing from header");
        }
    }
}
