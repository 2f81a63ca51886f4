//! C ABI over the bigrade engine.
//!
//! Automorphisms cross the boundary as opaque `BgAut` handles. Every call
//! returns a `BgStatus`; results come back through out-pointers, strings are
//! NUL-terminated UTF-8 owned by the caller and released with
//! `bg_string_free`. The message of the last failure on the calling thread is
//! available from `bg_last_error`. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bigrade::catalog::{self, CatalogEntry};
use bigrade::grading::{ExtPair, OrdinalCnf};
use bigrade::johnson::{self, Battery};
use bigrade::magnus::{self, Weights};
use bigrade::words::{FreeGroupAut, Word};
use bigrade::{freelie, Error};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    Null = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Malformed word, level, ordinal or catalog text.
    Parse = 3,
    /// The input parsed but the computation is undefined or failed.
    Math = 4,
    /// No catalog entry of that name.
    NotFound = 5,
    /// Internal panic; the handle arguments are left untouched.
    Panic = 6,
}

/// Opaque automorphism handle.
pub struct BgAut {
    name: String,
    aut: FreeGroupAut,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(BgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_)
            | Error::InvalidLetter(_)
            | Error::InvalidIndex(_)
            | Error::InvalidDegree(_)
            | Error::EmptyBracket => BgStatus::Parse,
            Error::Catalog(m) if m.starts_with("no catalog entry") => BgStatus::NotFound,
            Error::Catalog(_) => BgStatus::Parse,
            _ => BgStatus::Math,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BgStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BgStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BgStatus::Null, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(BgStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const BgAut, what: &str) -> Result<&'a BgAut, Fail> {
    p.as_ref().ok_or_else(|| Fail(BgStatus::Null, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(BgStatus::Null, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn new_handle(name: String, aut: FreeGroupAut) -> *mut BgAut {
    Box::into_raw(Box::new(BgAut { name, aut }))
}

unsafe fn check_out<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(BgStatus::Null, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a catalog element by `name` or `file:name`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_aut_from_catalog(name: *const c_char, out: *mut *mut BgAut) -> BgStatus {
    guard(|| {
        let name = text(name, "name")?;
        check_out(out)?;
        let e = catalog::find(name)?;
        let aut = e.to_aut()?;
        put(out, new_handle(e.name, aut))
    })
}

/// Builds an element from one catalog entry in JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_aut_from_json(json: *const c_char, out: *mut *mut BgAut) -> BgStatus {
    guard(|| {
        let json = text(json, "json")?;
        check_out(out)?;
        let e: CatalogEntry = serde_json::from_str(json).map_err(|e| Fail(BgStatus::Parse, e.to_string()))?;
        let aut = e.to_aut()?;
        put(out, new_handle(e.name, aut))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bg_aut_free(h: *mut BgAut) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `a ∘ b` (apply `b` first).
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_aut_compose(a: *const BgAut, b: *const BgAut, out: *mut *mut BgAut) -> BgStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        check_out(out)?;
        let c = a.aut.compose(&b.aut)?;
        put(out, new_handle(format!("{} {}", a.name, b.name), c))
    })
}

/// # Safety
/// `a` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_aut_inverse(a: *const BgAut, out: *mut *mut BgAut) -> BgStatus {
    guard(|| {
        let a = handle(a, "a")?;
        check_out(out)?;
        put(out, new_handle(format!("{}^-1", a.name), a.aut.inverse()))
    })
}

/// Image of a word such as `x1 y2^-1`, as reduced word text.
///
/// # Safety
/// `a` must be live, `word` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_aut_apply(a: *const BgAut, word: *const c_char, out: *mut *mut c_char) -> BgStatus {
    guard(|| {
        let a = handle(a, "a")?;
        let word = text(word, "word")?;
        check_out(out)?;
        let alpha = *a.aut.alphabet();
        let w = Word::parse(&alpha, word)?;
        put(out, owned(a.aut.apply(&w).display(&alpha).to_string()))
    })
}

/// Whether the element fixes the boundary word of its surface alphabet.
///
/// # Safety
/// `a` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_aut_fixes_boundary(a: *const BgAut, out: *mut bool) -> BgStatus {
    guard(|| {
        let a = handle(a, "a")?;
        check_out(out)?;
        put(out, a.aut.fixes_boundary()?)
    })
}

/// Magnus expansion of a word up to `bound`, as series text. Weights
/// `wx = wy = 1` give the ordinary expansion.
///
/// # Safety
/// `word` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_expand(word: *const c_char, bound: u32, wx: u32, wy: u32, out: *mut *mut c_char) -> BgStatus {
    guard(|| {
        let word = text(word, "word")?;
        check_out(out)?;
        let alpha = bigrade::words::AlphabetSpec::infer(word)?;
        let w = Word::parse(&alpha, word)?;
        let s = magnus::magnus_expand(&alpha, &w, bound, Weights::new(wx, wy)?)?;
        put(out, owned(s.to_string()))
    })
}

/// Rank of `Lie_{m,n}` for `p` generators `a_i` and `q` generators `b_j`.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_lie_dim(p: usize, q: usize, m: usize, n: usize, out: *mut usize) -> BgStatus {
    guard(|| {
        check_out(out)?;
        let alpha = bigrade::words::AlphabetSpec::new(p, q)?;
        put(out, freelie::lie_rank(&alpha, (m, n)))
    })
}

/// Natural sum of two ordinals in the text syntax `w^2*3+w+5`.
///
/// # Safety
/// Inputs NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_ordinal_sum(a: *const c_char, b: *const c_char, out: *mut *mut c_char) -> BgStatus {
    guard(|| {
        let a = OrdinalCnf::parse(text(a, "a")?)?;
        let b = OrdinalCnf::parse(text(b, "b")?)?;
        check_out(out)?;
        put(out, owned(a.hessenberg_sum(&b).to_string()))
    })
}

/// Johnson image as a JSON document. `kind` is `classical`, `double`,
/// `edge` or `alt`; `level` is `m,n` for the double kinds and a single
/// degree otherwise.
///
/// # Safety
/// `a` live, strings NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_tau_json(
    a: *const BgAut,
    kind: *const c_char,
    level: *const c_char,
    bound: u32,
    battery: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> BgStatus {
    guard(|| {
        let a = handle(a, "a")?;
        let kind = text(kind, "kind")?;
        let level = text(level, "level")?;
        check_out(out)?;
        let bat = Battery { size: battery, seed };
        let degree = || {
            level
                .trim()
                .parse::<u32>()
                .map_err(|_| Fail(BgStatus::Parse, format!("bad degree {level:?}")))
        };
        let t = match kind {
            "classical" => johnson::tau_classical(&a.aut, degree()?, bound)?,
            "alt" => johnson::tau_alt(&a.aut, degree()?, bound)?,
            "double" => johnson::tau_double_with(&a.aut, ExtPair::parse(level)?, bound, bat)?,
            "edge" => johnson::tau_edge_with(&a.aut, ExtPair::parse(level)?, bound, bat)?,
            other => return Err(Fail(BgStatus::Parse, format!("unknown kind {other:?}"))),
        };
        put(out, owned(t.to_json().to_string()))
    })
}

/// Maximal verified levels and refutation witnesses as JSON.
///
/// # Safety
/// `a` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_probe_json(
    a: *const BgAut,
    max_total: i32,
    bound: u32,
    battery: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> BgStatus {
    guard(|| {
        let a = handle(a, "a")?;
        check_out(out)?;
        let r = johnson::probe(&a.aut, max_total, bound, Battery { size: battery, seed })?;
        put(out, owned(r.to_json().to_string()))
    })
}

/// Name the handle was created under; caller frees the string.
///
/// # Safety
/// `a` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_aut_name(a: *const BgAut, out: *mut *mut c_char) -> BgStatus {
    guard(|| {
        let a = handle(a, "a")?;
        check_out(out)?;
        put(out, owned(a.name.clone()))
    })
}
