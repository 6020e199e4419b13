//! C interface to `ordlat`.
//!
//! Groups and cones are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`OrdlatStatus`]; on failure
//! the message is available from [`ordlat_last_error`] on the same thread.
//! Strings returned through out-pointers are owned by the caller and must
//! be released with [`ordlat_string_free`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ordlat::group::{Group, GroupError};
use ordlat::lgroup::{eval_form, normalize, LGroupError, LTerm, DEFAULT_ROW_CAP};
use ordlat::orderings::{count_finite_cones, OrderError, PositiveCone, Sign};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdlatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Element outside a finite cone's ball, identity queried, or a cone
    /// that does not fit the group.
    Domain = 4,
    PrecisionExhausted = 5,
    CapExceeded = 6,
    Internal = 7,
}

/// A group instance such as `braid:n=3`.
pub struct OrdlatGroup {
    group: Group,
}

/// A positive cone on a group.
pub struct OrdlatCone {
    cone: PositiveCone,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(OrdlatStatus, String);

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let status = match e {
            GroupError::CapExceeded { .. } => OrdlatStatus::CapExceeded,
            GroupError::Mismatch { .. } | GroupError::NotBraid(_) => OrdlatStatus::Domain,
            GroupError::Overflow => OrdlatStatus::Internal,
            _ => OrdlatStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

impl From<OrderError> for Failure {
    fn from(e: OrderError) -> Self {
        let status = match &e {
            OrderError::Group(g) => return Failure::from(g.clone()),
            OrderError::IdentityQueried
            | OrderError::OutsideDomain { .. }
            | OrderError::Incompatible { .. }
            | OrderError::BadConstraint { .. }
            | OrderError::NotComplete(_) => OrdlatStatus::Domain,
            OrderError::PrecisionExhausted { .. } => OrdlatStatus::PrecisionExhausted,
            OrderError::CapExceeded { .. } => OrdlatStatus::CapExceeded,
            OrderError::BadConeSpec { .. } | OrderError::Io { .. } => OrdlatStatus::Parse,
            OrderError::MagnusOverflow => OrdlatStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

impl From<LGroupError> for Failure {
    fn from(e: LGroupError) -> Self {
        match e {
            LGroupError::Order(o) => o.into(),
            LGroupError::RowCap { .. } => Failure(OrdlatStatus::CapExceeded, e.to_string()),
            LGroupError::Incomplete => Failure(OrdlatStatus::Domain, e.to_string()),
        }
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OrdlatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OrdlatStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            OrdlatStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(OrdlatStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(OrdlatStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).expect("rendered words contain no nul").into_raw()
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ordlat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ordlat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a group spec such as `tararin:n=3`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ordlat_group_parse(spec: *const c_char, out: *mut *mut OrdlatGroup) -> OrdlatStatus {
    guard(|| {
        let group = Group::parse(text(spec, "spec")?)?;
        put(out, Box::into_raw(Box::new(OrdlatGroup { group })), "out")
    })
}

/// # Safety
/// `g` must be NULL or a handle from [`ordlat_group_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn ordlat_group_free(g: *mut OrdlatGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Writes the normal form of `word` to `out`.
///
/// # Safety
/// Pointers must be valid; `out` receives a string for [`ordlat_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ordlat_word_normalize(
    g: *const OrdlatGroup,
    word: *const c_char,
    out: *mut *mut c_char,
) -> OrdlatStatus {
    guard(|| {
        let g = handle(g, "group")?;
        let w = g.group.parse_word(text(word, "word")?)?;
        put(out, owned(w.to_string()), "out")
    })
}

/// Parses a cone spec such as `dehornoy` or `tararin:+,-`.
///
/// # Safety
/// Pointers must be valid; `out` receives a handle for [`ordlat_cone_free`].
#[no_mangle]
pub unsafe extern "C" fn ordlat_cone_parse(
    g: *const OrdlatGroup,
    spec: *const c_char,
    out: *mut *mut OrdlatCone,
) -> OrdlatStatus {
    guard(|| {
        let g = handle(g, "group")?;
        let cone = PositiveCone::parse(g.group, text(spec, "spec")?)?;
        put(out, Box::into_raw(Box::new(OrdlatCone { cone })), "out")
    })
}

/// # Safety
/// `c` must be NULL or a handle from [`ordlat_cone_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn ordlat_cone_free(c: *mut OrdlatCone) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Writes `1` if `word` is in the cone and `-1` otherwise. The identity is
/// a domain error.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ordlat_cone_sign(c: *const OrdlatCone, word: *const c_char, out: *mut i32) -> OrdlatStatus {
    guard(|| {
        let c = handle(c, "cone")?;
        let w = c.cone.group().parse_word(text(word, "word")?)?;
        let s = match c.cone.sign(&w)? {
            Sign::Pos => 1,
            Sign::Neg => -1,
        };
        put(out, s, "out")
    })
}

/// Writes `-1`, `0` or `1` as `g` is below, equal to or above `h`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ordlat_cone_compare(
    c: *const OrdlatCone,
    g: *const c_char,
    h: *const c_char,
    out: *mut i32,
) -> OrdlatStatus {
    guard(|| {
        let c = handle(c, "cone")?;
        let group = c.cone.group();
        let g = group.parse_word(text(g, "g")?)?;
        let h = group.parse_word(text(h, "h")?)?;
        let v = match c.cone.compare(&g, &h)? {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        put(out, v, "out")
    })
}

/// Counts consistent sign assignments on the ball of `radius`, with at
/// most `cap` ball elements and `cap` assignments.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ordlat_count_cones(
    g: *const OrdlatGroup,
    radius: usize,
    cap: usize,
    out: *mut usize,
) -> OrdlatStatus {
    guard(|| {
        let g = handle(g, "group")?;
        let c = count_finite_cones(g.group, radius, &[], Some(cap), cap)?;
        if !c.exhaustive {
            return Err(Failure(
                OrdlatStatus::CapExceeded,
                format!("more than {cap} consistent assignments"),
            ));
        }
        put(out, c.count, "out")
    })
}

/// Evaluates the lattice term `term` at `point` under the cone.
///
/// # Safety
/// Pointers must be valid; `out` receives a string for [`ordlat_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ordlat_eval_term(
    c: *const OrdlatCone,
    term: *const c_char,
    point: *const c_char,
    out: *mut *mut c_char,
) -> OrdlatStatus {
    guard(|| {
        let c = handle(c, "cone")?;
        let group = c.cone.group();
        let t = LTerm::parse(group, text(term, "term")?)?;
        let h = group.parse_word(text(point, "point")?)?;
        let form = normalize(&t, DEFAULT_ROW_CAP)?;
        let r = eval_form(&c.cone, &form, &h)?;
        put(out, owned(r.output.to_string()), "out")
    })
}
