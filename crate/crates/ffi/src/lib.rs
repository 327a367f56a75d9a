//! C ABI over `nsmodop`.
//!
//! Every function returns an [`NsmStatus`]. Results go through out
//! pointers; handles and strings returned by the library must be released
//! with the matching `*_free` function. On failure the message is kept per
//! thread and read with [`nsm_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nsmodop::dihedral::wheel_count;
use nsmodop::envelope::{count_mod_ass, verify_envelope, Status};
use nsmodop::graphs::{are_isomorphic, canonical, graph_from_json, graph_to_json, GraphMode, NsGraph};
use nsmodop::orders::{mc_cut, mc_merge, parse_multicyclic_type, Label, MulticyclicType};
use nsmodop::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NsmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    VerificationFailed = 5,
    Inconclusive = 6,
    Panic = 7,
}

/// Opaque multicyclic order.
pub struct NsmType(MulticyclicType);

/// Opaque graph.
pub struct NsmGraph(NsGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(NsmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => NsmStatus::Parse,
            _ => NsmStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<NsmStatus, Failure>) -> NsmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            NsmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(NsmStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(NsmStatus::InvalidUtf8, e.to_string()))
}

unsafe fn read_ref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(NsmStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<NsmStatus, Failure> {
    if out.is_null() {
        return Err(Failure(NsmStatus::NullPointer, "null out pointer".into()));
    }
    out.write(value);
    Ok(NsmStatus::Ok)
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).expect("library output has no interior nul").into_raw()
}

/// The last error on this thread, or null. Valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn nsm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nsm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{(a b) (c) ()}`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_type_parse(text: *const c_char, out: *mut *mut NsmType) -> NsmStatus {
    guard(|| {
        let t = parse_multicyclic_type(read_str(text)?)?;
        write_out(out, Box::into_raw(Box::new(NsmType(t))))
    })
}

/// # Safety
/// `t` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn nsm_type_free(t: *mut NsmType) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_type_to_string(t: *const NsmType, out: *mut *mut c_char) -> NsmStatus {
    guard(|| write_out(out, to_c(read_ref(t)?.0.to_string())))
}

/// Number of components.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_type_b(t: *const NsmType, out: *mut usize) -> NsmStatus {
    guard(|| write_out(out, read_ref(t)?.0.b()))
}

/// # Safety
/// Handles must be live, labels nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_type_merge(
    left: *const NsmType,
    u: *const c_char,
    right: *const NsmType,
    v: *const c_char,
    out: *mut *mut NsmType,
) -> NsmStatus {
    guard(|| {
        let t =
            mc_merge(&read_ref(left)?.0, &Label::new(read_str(u)?), &read_ref(right)?.0, &Label::new(read_str(v)?))?;
        write_out(out, Box::into_raw(Box::new(NsmType(t))))
    })
}

/// # Safety
/// `t` must be live, labels nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_type_cut(
    t: *const NsmType,
    u: *const c_char,
    v: *const c_char,
    out: *mut *mut NsmType,
) -> NsmStatus {
    guard(|| {
        let c = mc_cut(&read_ref(t)?.0, &Label::new(read_str(u)?), &Label::new(read_str(v)?))?;
        write_out(out, Box::into_raw(Box::new(NsmType(c))))
    })
}

/// Parses and validates a graph in the JSON format.
///
/// # Safety
/// `json` must be nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_graph_from_json(json: *const c_char, out: *mut *mut NsmGraph) -> NsmStatus {
    guard(|| {
        let g = graph_from_json(read_str(json)?)?;
        write_out(out, Box::into_raw(Box::new(NsmGraph(g))))
    })
}

/// # Safety
/// `g` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn nsm_graph_free(g: *mut NsmGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_graph_to_json(g: *const NsmGraph, out: *mut *mut c_char) -> NsmStatus {
    guard(|| write_out(out, to_c(graph_to_json(&read_ref(g)?.0))))
}

/// JSON of the canonical representative.
///
/// # Safety
/// `g` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_graph_canonical_json(g: *const NsmGraph, out: *mut *mut c_char) -> NsmStatus {
    guard(|| write_out(out, to_c(graph_to_json(canonical(&read_ref(g)?.0).rep()))))
}

/// # Safety
/// `g` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_graph_genus(g: *const NsmGraph, out: *mut u32) -> NsmStatus {
    guard(|| write_out(out, read_ref(g)?.0.genus()?))
}

/// Induced multicyclic order on the legs.
///
/// # Safety
/// `g` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_graph_leg_type(g: *const NsmGraph, out: *mut *mut NsmType) -> NsmStatus {
    guard(|| {
        let t = read_ref(g)?.0.leg_type()?;
        write_out(out, Box::into_raw(Box::new(NsmType(t))))
    })
}

/// # Safety
/// Handles live, labels nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_graph_graft(
    left: *const NsmGraph,
    u: *const c_char,
    right: *const NsmGraph,
    v: *const c_char,
    out: *mut *mut NsmGraph,
) -> NsmStatus {
    guard(|| {
        let g = read_ref(left)?.0.graft(&Label::new(read_str(u)?), &read_ref(right)?.0, &Label::new(read_str(v)?))?;
        write_out(out, Box::into_raw(Box::new(NsmGraph(g))))
    })
}

/// # Safety
/// `g` live, labels nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_graph_self_glue(
    g: *const NsmGraph,
    u: *const c_char,
    v: *const c_char,
    out: *mut *mut NsmGraph,
) -> NsmStatus {
    guard(|| {
        let h = read_ref(g)?.0.self_glue(&Label::new(read_str(u)?), &Label::new(read_str(v)?))?;
        write_out(out, Box::into_raw(Box::new(NsmGraph(h))))
    })
}

/// # Safety
/// Handles live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_graph_isomorphic(a: *const NsmGraph, b: *const NsmGraph, out: *mut bool) -> NsmStatus {
    guard(|| write_out(out, are_isomorphic(&read_ref(a)?.0, &read_ref(b)?.0)))
}

/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_count_mod_ass(n: usize, g: u32, out: *mut u64) -> NsmStatus {
    guard(|| write_out(out, count_mod_ass(n, g)))
}

/// `2^(n-1) (n-1)!`; `n = 0` is a domain error.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_wheel_count(n: usize, out: *mut u64) -> NsmStatus {
    guard(|| {
        let c = wheel_count(n).ok_or_else(|| Failure(NsmStatus::Domain, format!("no wheel count for n = {n}")))?;
        write_out(out, c)
    })
}

/// Runs the envelope verifier and writes its JSON certificate. Returns
/// `VerificationFailed` or `Inconclusive` when the run does not pass; the
/// certificate is written in every case.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nsm_envelope_verify(
    n: usize,
    g: u32,
    vmax: usize,
    symmetric: bool,
    out: *mut *mut c_char,
) -> NsmStatus {
    guard(|| {
        let mode = if symmetric { GraphMode::Symmetric } else { GraphMode::NonSigma };
        let r = verify_envelope(n, g, vmax, mode);
        write_out(out, to_c(r.to_json()))?;
        Ok(match r.status {
            Status::Pass => NsmStatus::Ok,
            Status::Fail => NsmStatus::VerificationFailed,
            Status::Inconclusive => NsmStatus::Inconclusive,
        })
    })
}
