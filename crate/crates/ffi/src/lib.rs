//! C ABI for the `egn` library.
//!
//! Instances and profile lists are opaque heap handles released with their
//! `*_free` function. Every fallible call returns an [`EgnStatus`]; on failure
//! a message is kept per thread and read with [`egn_last_error_message`].
//! Profiles are passed as indices where bit `v - 1` is 1 when player `v`
//! cooperates.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use egn::equilibria::{count_equilibria, EnumerateOptions, Filter};
use egn::{classify_pure, enumerate_classified, io, Error, PureProfile, Verdict};

/// Opaque handle to a validated instance.
pub struct EgnInstance {
    inner: egn::EgnInstance,
}

/// Opaque list of `(profile index, verdict)` pairs.
pub struct EgnProfileList {
    rows: Vec<(u64, EgnVerdict)>,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EgnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    GuardExceeded = 5,
    Io = 6,
    Numerical = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EgnVerdict {
    StrictNash = 0,
    NashOnly = 1,
    NotNash = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EgnFilter {
    Sne = 0,
    Ne = 1,
    All = 2,
}

impl From<Verdict> for EgnVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::StrictNash => EgnVerdict::StrictNash,
            Verdict::NashOnly => EgnVerdict::NashOnly,
            Verdict::NotNash => EgnVerdict::NotNash,
        }
    }
}

struct Failure(EgnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } | Error::Json(_) | Error::Instance(_) => EgnStatus::Parse,
            Error::VertexOutOfRange { .. }
            | Error::SelfLoop(_)
            | Error::InvalidArgument(_)
            | Error::NotConnected { .. } => EgnStatus::InvalidArgument,
            Error::GuardExceeded { .. } => EgnStatus::GuardExceeded,
            Error::NonFinite { .. } | Error::ClampExceeded { .. } => EgnStatus::Numerical,
            Error::Io(_) => EgnStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn run(f: impl FnOnce() -> Result<(), Failure>) -> EgnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EgnStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            EgnStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(EgnStatus::NullPointer, format!("{what} is null"))
}

unsafe fn instance<'a>(inst: *const EgnInstance) -> Result<&'a egn::EgnInstance, Failure> {
    inst.as_ref().map(|h| &h.inner).ok_or_else(|| null("instance"))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(EgnStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Message for the last failed call on this thread, or null if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn egn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn egn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an instance from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn egn_instance_from_json(json: *const c_char, out: *mut *mut EgnInstance) -> EgnStatus {
    run(|| {
        let text = c_str(json, "json")?;
        let inner = io::parse_instance(text)?;
        write_out(out, Box::into_raw(Box::new(EgnInstance { inner })), "out")
    })
}

/// Loads an instance from a JSON file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn egn_instance_load(path: *const c_char, out: *mut *mut EgnInstance) -> EgnStatus {
    run(|| {
        let path = c_str(path, "path")?;
        let inner = io::load_instance(path)?;
        write_out(out, Box::into_raw(Box::new(EgnInstance { inner })), "out")
    })
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `inst` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn egn_instance_free(inst: *mut EgnInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn egn_instance_vertex_count(inst: *const EgnInstance) -> usize {
    inst.as_ref().map_or(0, |h| h.inner.n())
}

/// Classifies one pure profile. When `lambdas` is non-null it receives the
/// `λ_v` of every vertex and `lambdas_len` must be at least the vertex count.
///
/// # Safety
/// `inst` must be a live handle, `verdict` writable, and `lambdas` null or
/// valid for `lambdas_len` writes.
#[no_mangle]
pub unsafe extern "C" fn egn_classify(
    inst: *const EgnInstance,
    profile: u64,
    verdict: *mut EgnVerdict,
    lambdas: *mut f64,
    lambdas_len: usize,
) -> EgnStatus {
    run(|| {
        let inst = instance(inst)?;
        let p = PureProfile::from_index(inst.n(), profile)?;
        let c = classify_pure(inst, p)?;
        if !lambdas.is_null() {
            if lambdas_len < inst.n() {
                return Err(Failure(
                    EgnStatus::InvalidArgument,
                    format!("lambdas holds {lambdas_len} values, need {}", inst.n()),
                ));
            }
            let slots = std::slice::from_raw_parts_mut(lambdas, inst.n());
            for (slot, r) in slots.iter_mut().zip(&c.vertices) {
                *slot = r.lambda;
            }
        }
        write_out(verdict, c.verdict.into(), "verdict")
    })
}

/// Strict and total Nash counts over every pure profile.
///
/// # Safety
/// `inst` must be a live handle and both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn egn_count_equilibria(
    inst: *const EgnInstance,
    jobs: usize,
    sne: *mut u64,
    ne: *mut u64,
) -> EgnStatus {
    run(|| {
        let inst = instance(inst)?;
        if sne.is_null() || ne.is_null() {
            return Err(null("count output"));
        }
        let counts = count_equilibria(inst, jobs.max(1))?;
        write_out(sne, counts.sne as u64, "sne")?;
        write_out(ne, counts.ne as u64, "ne")
    })
}

/// Lists every profile passing `filter`, in ascending index order.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn egn_enumerate(
    inst: *const EgnInstance,
    filter: EgnFilter,
    prune: bool,
    jobs: usize,
    out: *mut *mut EgnProfileList,
) -> EgnStatus {
    run(|| {
        let inst = instance(inst)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let filter = match filter {
            EgnFilter::Sne => Filter::Sne,
            EgnFilter::Ne => Filter::Ne,
            EgnFilter::All => Filter::All,
        };
        let opts = EnumerateOptions::new(filter).prune(prune).jobs(jobs.max(1));
        let rows = enumerate_classified(inst, opts)?
            .into_iter()
            .map(|(p, c)| (p.index(), c.verdict.into()))
            .collect();
        write_out(out, Box::into_raw(Box::new(EgnProfileList { rows })), "out")
    })
}

/// Number of entries, or 0 for a null list.
///
/// # Safety
/// `list` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn egn_profile_list_len(list: *const EgnProfileList) -> usize {
    list.as_ref().map_or(0, |l| l.rows.len())
}

/// Reads entry `i`.
///
/// # Safety
/// `list` must be a live handle and both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn egn_profile_list_get(
    list: *const EgnProfileList,
    i: usize,
    profile: *mut u64,
    verdict: *mut EgnVerdict,
) -> EgnStatus {
    run(|| {
        let list = list.as_ref().ok_or_else(|| null("list"))?;
        let &(index, v) = list.rows.get(i).ok_or_else(|| {
            Failure(
                EgnStatus::InvalidArgument,
                format!("index {i} out of range for {} entries", list.rows.len()),
            )
        })?;
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        write_out(profile, index, "profile")?;
        write_out(verdict, v, "verdict")
    })
}

/// Releases a list. Null is ignored.
///
/// # Safety
/// `list` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn egn_profile_list_free(list: *mut EgnProfileList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}
