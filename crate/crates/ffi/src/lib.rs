//! C interface to the `omniversal` crate.
//!
//! Objects are opaque handles created by `omv_*` constructors and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`OmvStatus`]; on failure a description is available from
//! [`omv_last_error_message`]. Strings returned to the caller are released
//! with [`omv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use omniversal::classify::{self, ClassifyOptions};
use omniversal::construct::{self, LStarParams};
use omniversal::engine::{self, SearchBudget, SpectrumOptions};
use omniversal::{group, Group, LatinSquare, LengthStatus, SpectrumReport, Verdict};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidSquare = 3,
    OutOfRange = 4,
    NotFound = 5,
    Timeout = 6,
    Internal = 7,
}

/// Outcome for one length of a report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmvLengthStatus {
    Achieved = 0,
    ProvenAbsent = 1,
    Forbidden = 2,
    Timeout = 3,
}

/// Verdict of a report. `Incomplete` means some length timed out.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmvVerdict {
    Incomplete = 0,
    Omniversal = 1,
    NearOmniversal = 2,
    Other = 3,
}

/// A Latin square.
pub struct OmvSquare(LatinSquare);

/// A finite group from the catalog.
pub struct OmvGroup(Group);

/// A spectrum report.
pub struct OmvReport(SpectrumReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: OmvStatus, msg: impl Into<String>) -> OmvStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> OmvStatus) -> OmvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(OmvStatus::Internal, "internal panic"),
    }
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, OmvStatus> {
    if p.is_null() {
        return Err(fail(OmvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(OmvStatus::InvalidArgument, "string is not UTF-8"))
}

fn budget(node_limit: u64) -> SearchBudget {
    if node_limit == 0 {
        SearchBudget::exhaustive()
    } else {
        SearchBudget::nodes(node_limit)
    }
}

fn string_out(out: *mut *mut c_char, s: String) -> OmvStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            OmvStatus::Ok
        }
        Err(_) => fail(OmvStatus::Internal, "string contains NUL"),
    }
}

/// Copies the message of the last failed call on this thread into a new
/// string, or returns NULL if there is none.
#[no_mangle]
pub extern "C" fn omv_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |m| m.clone().into_raw())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn omv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a square from `n * n` row-major symbols in `0..n`.
///
/// # Safety
/// `grid` must point to `n * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn omv_square_from_grid(
    grid: *const usize,
    n: usize,
    out: *mut *mut OmvSquare,
) -> OmvStatus {
    guard(|| {
        if grid.is_null() || out.is_null() {
            return fail(OmvStatus::NullPointer, "null argument");
        }
        let Some(len) = n.checked_mul(n) else {
            return fail(OmvStatus::OutOfRange, "order too large");
        };
        let cells = std::slice::from_raw_parts(grid, len).to_vec();
        match LatinSquare::from_flat(n, cells) {
            Ok(l) => {
                put(out, OmvSquare(l));
                OmvStatus::Ok
            }
            Err(e) => fail(OmvStatus::InvalidSquare, e.to_string()),
        }
    })
}

/// Parses the text square format: the order, then one row per line.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn omv_square_parse(
    text: *const c_char,
    out: *mut *mut OmvSquare,
) -> OmvStatus {
    guard(|| {
        if out.is_null() {
            return fail(OmvStatus::NullPointer, "null output");
        }
        let text = match str_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match LatinSquare::parse(text) {
            Ok(l) => {
                put(out, OmvSquare(l));
                OmvStatus::Ok
            }
            Err(e) => fail(OmvStatus::InvalidSquare, e.to_string()),
        }
    })
}

/// Order of the square, or 0 for NULL.
///
/// # Safety
/// `sq` must be NULL or a live square handle.
#[no_mangle]
pub unsafe extern "C" fn omv_square_order(sq: *const OmvSquare) -> usize {
    sq.as_ref().map_or(0, |s| s.0.order())
}

/// Symbol at row `r`, column `c`.
///
/// # Safety
/// `sq` must be a live square handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omv_square_get(
    sq: *const OmvSquare,
    r: usize,
    c: usize,
    out: *mut usize,
) -> OmvStatus {
    let (Some(sq), false) = (sq.as_ref(), out.is_null()) else {
        return fail(OmvStatus::NullPointer, "null argument");
    };
    let n = sq.0.order();
    if r >= n || c >= n {
        return fail(
            OmvStatus::OutOfRange,
            format!("cell ({r}, {c}) outside order {n}"),
        );
    }
    *out = sq.0.get(r, c);
    OmvStatus::Ok
}

/// Hex digest of the square's canonical bytes.
///
/// # Safety
/// `sq` must be a live square handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omv_square_hash(sq: *const OmvSquare, out: *mut *mut c_char) -> OmvStatus {
    let (Some(sq), false) = (sq.as_ref(), out.is_null()) else {
        return fail(OmvStatus::NullPointer, "null argument");
    };
    string_out(out, sq.0.hash_hex())
}

/// Releases a square. NULL is ignored.
///
/// # Safety
/// `sq` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn omv_square_free(sq: *mut OmvSquare) {
    if !sq.is_null() {
        drop(Box::from_raw(sq));
    }
}

/// Looks up a catalog group by name, such as `"Z7"`, `"D8"` or `"Q16"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omv_group_by_name(
    name: *const c_char,
    out: *mut *mut OmvGroup,
) -> OmvStatus {
    guard(|| {
        if out.is_null() {
            return fail(OmvStatus::NullPointer, "null output");
        }
        let name = match str_arg(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match group::by_name(name) {
            Ok(g) => {
                put(out, OmvGroup(g));
                OmvStatus::Ok
            }
            Err(e) => fail(OmvStatus::NotFound, e.to_string()),
        }
    })
}

/// Order of the group, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn omv_group_order(g: *const OmvGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// The Cayley table of the group as a new square.
///
/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omv_group_cayley_table(
    g: *const OmvGroup,
    out: *mut *mut OmvSquare,
) -> OmvStatus {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return fail(OmvStatus::NullPointer, "null argument");
    };
    put(out, OmvSquare(g.0.cayley_table()));
    OmvStatus::Ok
}

/// Releases a group. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn omv_group_free(g: *mut OmvGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// The omniversal square `L*` of order `8m + 4q`, with `m >= 1` and `q` in `{0, 1}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn omv_build_l_star(
    m: usize,
    q: usize,
    out: *mut *mut OmvSquare,
) -> OmvStatus {
    guard(|| {
        if out.is_null() {
            return fail(OmvStatus::NullPointer, "null output");
        }
        match LStarParams::new(m, q) {
            Ok(p) => {
                put(out, OmvSquare(construct::build_l_star(p)));
                OmvStatus::Ok
            }
            Err(e) => fail(OmvStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// The near-omniversal square `M*` of order `4m + 2`, with `m >= 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn omv_build_m_star(m: usize, out: *mut *mut OmvSquare) -> OmvStatus {
    guard(|| {
        if out.is_null() {
            return fail(OmvStatus::NullPointer, "null output");
        }
        if m == 0 || m > 1 << 20 {
            return fail(OmvStatus::InvalidArgument, format!("m = {m} out of range"));
        }
        put(out, OmvSquare(construct::build_m_star(m)));
        OmvStatus::Ok
    })
}

fn report_out(out: *mut *mut OmvReport, r: SpectrumReport) -> OmvStatus {
    let timed_out = r.has_timeout();
    unsafe { put(out, OmvReport(r)) };
    if timed_out {
        fail(
            OmvStatus::Timeout,
            "some lengths timed out; verdict withheld",
        )
    } else {
        OmvStatus::Ok
    }
}

/// Searches every length of the admissible range. `node_limit` bounds each
/// length's search; 0 means unlimited. On `Timeout` the report is still
/// written to `out` and must be freed.
///
/// # Safety
/// `sq` must be a live square handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omv_spectrum(
    sq: *const OmvSquare,
    node_limit: u64,
    out: *mut *mut OmvReport,
) -> OmvStatus {
    guard(|| {
        let (Some(sq), false) = (sq.as_ref(), out.is_null()) else {
            return fail(OmvStatus::NullPointer, "null argument");
        };
        let opts = SpectrumOptions {
            budget: budget(node_limit),
            ..SpectrumOptions::exhaustive()
        };
        match engine::spectrum(&sq.0, &opts) {
            Ok(r) => report_out(out, r),
            Err(e) => fail(OmvStatus::Internal, e.to_string()),
        }
    })
}

/// Classifies a group with the forbidding rules, constructions and searches.
/// `node_limit` as for [`omv_spectrum`].
///
/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omv_classify_group(
    g: *const OmvGroup,
    node_limit: u64,
    out: *mut *mut OmvReport,
) -> OmvStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(OmvStatus::NullPointer, "null argument");
        };
        let opts = ClassifyOptions {
            budget: budget(node_limit),
            ..ClassifyOptions::exhaustive()
        };
        match classify::classify_group(&g.0, &opts) {
            Ok(r) => report_out(out, r),
            Err(e) => fail(OmvStatus::Internal, e.to_string()),
        }
    })
}

/// The admissible length range `[lo, hi]` covered by the report.
///
/// # Safety
/// `r` must be a live report handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn omv_report_range(
    r: *const OmvReport,
    lo: *mut usize,
    hi: *mut usize,
) -> OmvStatus {
    let (Some(r), false, false) = (r.as_ref(), lo.is_null(), hi.is_null()) else {
        return fail(OmvStatus::NullPointer, "null argument");
    };
    *lo = r.0.range[0];
    *hi = r.0.range[1];
    OmvStatus::Ok
}

/// Status of one length.
///
/// # Safety
/// `r` must be a live report handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omv_report_status(
    r: *const OmvReport,
    len: usize,
    out: *mut OmvLengthStatus,
) -> OmvStatus {
    let (Some(r), false) = (r.as_ref(), out.is_null()) else {
        return fail(OmvStatus::NullPointer, "null argument");
    };
    let Some(s) = r.0.status(len) else {
        return fail(
            OmvStatus::OutOfRange,
            format!("length {len} outside the report range"),
        );
    };
    *out = match s {
        LengthStatus::Achieved { .. } => OmvLengthStatus::Achieved,
        LengthStatus::ProvenAbsent { .. } => OmvLengthStatus::ProvenAbsent,
        LengthStatus::Forbidden { .. } => OmvLengthStatus::Forbidden,
        LengthStatus::Timeout => OmvLengthStatus::Timeout,
    };
    OmvStatus::Ok
}

/// The verdict; `mu` receives the missing length for near-omniversal
/// reports and 0 otherwise.
///
/// # Safety
/// `r` must be a live report handle; `kind` and `mu` must be writable.
#[no_mangle]
pub unsafe extern "C" fn omv_report_verdict(
    r: *const OmvReport,
    kind: *mut OmvVerdict,
    mu: *mut usize,
) -> OmvStatus {
    let (Some(r), false, false) = (r.as_ref(), kind.is_null(), mu.is_null()) else {
        return fail(OmvStatus::NullPointer, "null argument");
    };
    let (k, m) = match &r.0.verdict {
        None => (OmvVerdict::Incomplete, 0),
        Some(Verdict::Omniversal) => (OmvVerdict::Omniversal, 0),
        Some(Verdict::NearOmniversal { mu }) => (OmvVerdict::NearOmniversal, *mu),
        Some(Verdict::Other { .. }) => (OmvVerdict::Other, 0),
    };
    *kind = k;
    *mu = m;
    OmvStatus::Ok
}

/// Copies the witness for an achieved length into `buf` as `row, col, symbol`
/// triples. `written` receives the number of values the witness needs
/// (`3 * len`); if `cap` is smaller, nothing is copied and `OutOfRange` is returned.
///
/// # Safety
/// `r` must be a live report handle, `written` writable, and `buf` valid for
/// `cap` writes (it may be NULL when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn omv_report_witness(
    r: *const OmvReport,
    len: usize,
    buf: *mut usize,
    cap: usize,
    written: *mut usize,
) -> OmvStatus {
    let (Some(r), false) = (r.as_ref(), written.is_null()) else {
        return fail(OmvStatus::NullPointer, "null argument");
    };
    let Some(LengthStatus::Achieved { witness, .. }) = r.0.status(len) else {
        return fail(OmvStatus::NotFound, format!("no witness for length {len}"));
    };
    let flat: Vec<usize> = witness.iter().flat_map(|t| [t.row, t.col, t.sym]).collect();
    *written = flat.len();
    if cap < flat.len() {
        return fail(
            OmvStatus::OutOfRange,
            format!("buffer holds {cap} values, witness needs {}", flat.len()),
        );
    }
    if buf.is_null() {
        return fail(OmvStatus::NullPointer, "null buffer");
    }
    ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len());
    OmvStatus::Ok
}

/// The report as JSON in the published schema.
///
/// # Safety
/// `r` must be a live report handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omv_report_to_json(
    r: *const OmvReport,
    out: *mut *mut c_char,
) -> OmvStatus {
    let (Some(r), false) = (r.as_ref(), out.is_null()) else {
        return fail(OmvStatus::NullPointer, "null argument");
    };
    match serde_json::to_string(&r.0) {
        Ok(s) => string_out(out, s),
        Err(e) => fail(OmvStatus::Internal, e.to_string()),
    }
}

/// Releases a report. NULL is ignored.
///
/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn omv_report_free(r: *mut OmvReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
