//! C ABI over `cherlab`.
//!
//! Every fallible entry point returns a [`CherlabStatus`]; on failure the message is
//! available from [`cherlab_last_error`] until the next call on the same thread.
//! Strings handed out by the library are freed with [`cherlab_string_free`], group
//! handles with [`cherlab_group_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cherlab::charclass::{index_density, CurvatureData, LinearForm, TraceFunctional};
use cherlab::cyclo::parse_rational;
use cherlab::group::FiniteMatrixGroup;
use cherlab::io::parse_group_file;
use cherlab::strata::hochschild_profile;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CherlabStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    MalformedInput = 3,
    DomainError = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Opaque handle to an enumerated finite matrix group.
pub struct CherlabGroup {
    inner: FiniteMatrixGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: CherlabStatus, msg: impl Into<String>) -> CherlabStatus {
    set_error(msg);
    status
}

fn guarded(f: impl FnOnce() -> CherlabStatus) -> CherlabStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CherlabStatus::Panic, "internal panic"))
}

/// # Safety
/// `s` must be NULL or a valid NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, CherlabStatus> {
    if s.is_null() {
        return Err(fail(CherlabStatus::NullArgument, format!("{what} is NULL")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(CherlabStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn hand_out(s: String, out: *mut *mut c_char) -> CherlabStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for NULL before reaching here.
            unsafe { *out = c.into_raw() };
            CherlabStatus::Ok
        }
        Err(_) => fail(CherlabStatus::DomainError, "output contains NUL"),
    }
}

/// Message of the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn cherlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Build a group from descriptor text (`dim`, `conductor`, `gen` blocks).
///
/// # Safety
/// `descriptor` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cherlab_group_from_text(
    descriptor: *const c_char,
    order_cap: usize,
    out: *mut *mut CherlabGroup,
) -> CherlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CherlabStatus::NullArgument, "out is NULL");
        }
        let src = match text(descriptor, "descriptor") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let parsed = match parse_group_file(src) {
            Ok(p) => p,
            Err(e) => return fail(CherlabStatus::MalformedInput, e.to_string()),
        };
        match FiniteMatrixGroup::generate(&parsed.generators, order_cap) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(CherlabGroup { inner: g }));
                CherlabStatus::Ok
            }
            Err(e) => fail(CherlabStatus::DomainError, e.to_string()),
        }
    })
}

/// # Safety
/// `group` must be NULL or a handle from [`cherlab_group_from_text`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cherlab_group_free(group: *mut CherlabGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

unsafe fn group_ref<'a>(group: *const CherlabGroup) -> Result<&'a FiniteMatrixGroup, CherlabStatus> {
    group.as_ref().map(|g| &g.inner).ok_or_else(|| fail(CherlabStatus::NullArgument, "group is NULL"))
}

/// Group order, dimension and number of conjugacy classes.
///
/// # Safety
/// `group` must be a live handle; each output pointer must be writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn cherlab_group_sizes(
    group: *const CherlabGroup,
    order: *mut usize,
    dim: *mut usize,
    classes: *mut usize,
) -> CherlabStatus {
    guarded(|| {
        let g = match group_ref(group) {
            Ok(g) => g,
            Err(s) => return s,
        };
        if !order.is_null() {
            *order = g.order();
        }
        if !dim.is_null() {
            *dim = g.dim();
        }
        if !classes.is_null() {
            *classes = g.conjugacy_classes().len();
        }
        CherlabStatus::Ok
    })
}

/// Write `a_0..a_{2n}` into `buf`. `needed` always receives `2n + 1`.
///
/// # Safety
/// `group` must be a live handle, `buf` must hold `len` values (or be NULL when `len` is 0),
/// and `needed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cherlab_group_profile(
    group: *const CherlabGroup,
    buf: *mut usize,
    len: usize,
    needed: *mut usize,
) -> CherlabStatus {
    guarded(|| {
        let g = match group_ref(group) {
            Ok(g) => g,
            Err(s) => return s,
        };
        if needed.is_null() {
            return fail(CherlabStatus::NullArgument, "needed is NULL");
        }
        let a = hochschild_profile(g).a;
        *needed = a.len();
        if len < a.len() {
            return fail(CherlabStatus::BufferTooSmall, format!("profile has {} entries", a.len()));
        }
        if buf.is_null() {
            return fail(CherlabStatus::NullArgument, "buf is NULL");
        }
        ptr::copy_nonoverlapping(a.as_ptr(), buf, a.len());
        CherlabStatus::Ok
    })
}

/// Reflection report as `key=value` lines; free with [`cherlab_string_free`].
///
/// # Safety
/// `group` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cherlab_group_report(group: *const CherlabGroup, out: *mut *mut c_char) -> CherlabStatus {
    guarded(|| {
        let g = match group_ref(group) {
            Ok(g) => g,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(CherlabStatus::NullArgument, "out is NULL");
        }
        let r = match g.report() {
            Ok(r) => r,
            Err(e) => return fail(CherlabStatus::DomainError, e.to_string()),
        };
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let mut s = format!(
            "order={}\nN={}\nN*={}\nrank={}\nirreducible={}\nwell_generated={}\n",
            r.order, r.reflections, r.hyperplanes, r.rank, r.irreducible, r.well_generated
        );
        if let Ok(d) = &r.degrees {
            s.push_str(&format!("degrees={}\n", join(d)));
        }
        if let Some(Ok(h)) = &r.coxeter_number {
            s.push_str(&format!("h={h}\n"));
        }
        hand_out(s, out)
    })
}

/// Index density lines `coeff * monomial * hbar^k`, newline separated.
///
/// `tangent_roots` and `moments` are comma separated; `theta` is `0` or a linear form in symbols.
///
/// # Safety
/// String arguments must be valid NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cherlab_index_density(
    n: usize,
    l: usize,
    tangent_roots: *const c_char,
    theta: *const c_char,
    moments: *const c_char,
    out: *mut *mut c_char,
) -> CherlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CherlabStatus::NullArgument, "out is NULL");
        }
        let (roots, theta, moments) =
            match (text(tangent_roots, "tangent_roots"), text(theta, "theta"), text(moments, "moments")) {
                (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
            };
        let list = |s: &str| s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect::<Vec<_>>();
        let roots: Result<Vec<_>, _> = list(roots).iter().map(|r| LinearForm::parse(r)).collect();
        let theta = LinearForm::parse(theta);
        let moments: Result<Vec<_>, _> = list(moments).iter().map(|m| parse_rational(m)).collect();
        let (roots, theta, moments) = match (roots, theta, moments) {
            (Ok(r), Ok(t), Ok(m)) => (r, t, m),
            (Err(e), _, _) | (_, Err(e), _) => return fail(CherlabStatus::MalformedInput, e.to_string()),
            (_, _, Err(e)) => return fail(CherlabStatus::MalformedInput, e.to_string()),
        };
        let result = TraceFunctional::from_rationals(&moments)
            .and_then(|tf| index_density(&CurvatureData::new(roots, theta), n, l, &tf, None));
        match result {
            Ok(d) => {
                let lines = d.component.lines();
                hand_out(if lines.is_empty() { "0".into() } else { lines.join("\n") }, out)
            }
            Err(e) => fail(CherlabStatus::DomainError, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cherlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
