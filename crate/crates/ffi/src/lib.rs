// SPDX-License-Identifier: Apache-2.0
//! C ABI over `aig-orch`.
//!
//! Graphs live behind an opaque `AigHandle` created by `aig_orch_read_file`
//! or `aig_orch_parse` and released with `aig_orch_free`. Every fallible
//! call returns an `AigStatus`; the message of the last failure on the
//! calling thread is available from `aig_orch_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use aig_orch::cec::{self, CecResult, Mode};
use aig_orch::flow::{self, FlowOptions, FlowScript};
use aig_orch::{aiger, Aig, Error, PassStats};

/// An owned And-Inverter Graph.
pub struct AigHandle {
    aig: Aig,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AigStatus {
    Ok = 0,
    NullArgument = 1,
    Io = 2,
    Parse = 3,
    InvalidArgument = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AigCecVerdict {
    Equivalent = 0,
    Counterexample = 1,
    /// No difference found by random simulation.
    Unknown = 2,
}

/// Summary of a pass, policy or script run.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AigPassStats {
    pub nodes_before: usize,
    pub nodes_after: usize,
    pub depth_before: u32,
    pub depth_after: u32,
    pub valid_rw: usize,
    pub valid_rs: usize,
    pub valid_rf: usize,
    pub total_iterations: usize,
}

impl From<&PassStats> for AigPassStats {
    fn from(s: &PassStats) -> AigPassStats {
        AigPassStats {
            nodes_before: s.nodes_before,
            nodes_after: s.nodes_after,
            depth_before: s.depth_before,
            depth_after: s.depth_after,
            valid_rw: s.valid_rw,
            valid_rs: s.valid_rs,
            valid_rf: s.valid_rf,
            total_iterations: s.total_iterations,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> AigStatus {
    match e {
        Error::Io { .. } => AigStatus::Io,
        Error::MalformedHeader(_)
        | Error::MalformedBody { .. }
        | Error::FaninOrder { .. }
        | Error::Truncated(_)
        | Error::Unsupported(_) => AigStatus::Parse,
        Error::BadRecipe(_) | Error::TooManyInputs { .. } | Error::InterfaceMismatch(_) => {
            AigStatus::InvalidArgument
        }
        _ => AigStatus::Internal,
    }
}

fn fail(e: Error) -> AigStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> AigStatus) -> AigStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            AigStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, AigStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(AigStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        AigStatus::InvalidArgument
    })
}

unsafe fn handle_ref<'a>(h: *const AigHandle) -> Result<&'a AigHandle, AigStatus> {
    h.as_ref().ok_or_else(|| {
        set_error("null handle");
        AigStatus::NullArgument
    })
}

unsafe fn handle_mut<'a>(h: *mut AigHandle) -> Result<&'a mut AigHandle, AigStatus> {
    h.as_mut().ok_or_else(|| {
        set_error("null handle");
        AigStatus::NullArgument
    })
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

unsafe fn store(out: *mut *mut AigHandle, aig: Aig) -> AigStatus {
    *out = Box::into_raw(Box::new(AigHandle { aig }));
    AigStatus::Ok
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn aig_orch_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn aig_orch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Reads an AIGER file (ASCII or binary).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_read_file(
    path: *const c_char,
    out: *mut *mut AigHandle,
) -> AigStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return AigStatus::NullArgument;
        }
        let path = tri!(str_arg(path));
        match aiger::read_file(path) {
            Ok(g) => store(out, g),
            Err(e) => fail(e),
        }
    })
}

/// Parses AIGER data from memory.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_parse(
    data: *const u8,
    len: usize,
    out: *mut *mut AigHandle,
) -> AigStatus {
    guard(|| {
        if out.is_null() || (data.is_null() && len > 0) {
            set_error("null argument");
            return AigStatus::NullArgument;
        }
        let bytes = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(data, len)
        };
        match aiger::parse(bytes) {
            Ok(g) => store(out, g),
            Err(e) => fail(e),
        }
    })
}

/// Writes the graph; a `.aag` extension selects ASCII, anything else binary.
///
/// # Safety
/// `h` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_write_file(
    h: *const AigHandle,
    path: *const c_char,
) -> AigStatus {
    guard(|| {
        let h = tri!(handle_ref(h));
        let path = tri!(str_arg(path));
        match aiger::write_file(path, &h.aig) {
            Ok(()) => AigStatus::Ok,
            Err(e) => fail(e),
        }
    })
}

/// Serializes the graph as binary AIGER into `buf`. The required size is
/// always stored in `written`; `BufferTooSmall` is returned when `cap` is
/// not enough, so a first call with `cap = 0` queries the size.
///
/// # Safety
/// `h` must be a live handle, `buf` must have room for `cap` bytes and
/// `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_write_binary(
    h: *const AigHandle,
    buf: *mut u8,
    cap: usize,
    written: *mut usize,
) -> AigStatus {
    guard(|| {
        let h = tri!(handle_ref(h));
        if written.is_null() {
            set_error("null output pointer");
            return AigStatus::NullArgument;
        }
        let bytes = aiger::write_binary(&h.aig);
        *written = bytes.len();
        if bytes.len() > cap {
            set_error(format!("buffer of {cap} bytes, need {}", bytes.len()));
            return AigStatus::BufferTooSmall;
        }
        if buf.is_null() {
            set_error("null buffer");
            return AigStatus::NullArgument;
        }
        ptr::copy_nonoverlapping(bytes.as_ptr(), buf, bytes.len());
        AigStatus::Ok
    })
}

/// Copies a graph.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_clone(
    h: *const AigHandle,
    out: *mut *mut AigHandle,
) -> AigStatus {
    guard(|| {
        let h = tri!(handle_ref(h));
        if out.is_null() {
            set_error("null output pointer");
            return AigStatus::NullArgument;
        }
        store(out, h.aig.clone())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `h` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_free(h: *mut AigHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of AND nodes, 0 for NULL.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_num_ands(h: *const AigHandle) -> usize {
    h.as_ref().map_or(0, |h| h.aig.size())
}

/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_num_pis(h: *const AigHandle) -> usize {
    h.as_ref().map_or(0, |h| h.aig.num_pis())
}

/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_num_pos(h: *const AigHandle) -> usize {
    h.as_ref().map_or(0, |h| h.aig.num_pos())
}

/// Longest PI-to-PO path in AND nodes, 0 for NULL.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_depth(h: *const AigHandle) -> u32 {
    h.as_ref().map_or(0, |h| {
        let mut g = h.aig.clone();
        g.recompute_levels();
        g.depth()
    })
}

unsafe fn run_script(
    h: *mut AigHandle,
    script: Result<FlowScript, Error>,
    label: &str,
    stats: *mut AigPassStats,
) -> AigStatus {
    let h = tri!(handle_mut(h));
    let script = match script {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    match flow::run_flow(&h.aig, &script, &FlowOptions::default()) {
        Ok(res) => {
            if let Some(out) = stats.as_mut() {
                *out = AigPassStats::from(&PassStats::combine(h.aig.name(), label, &res.steps));
            }
            let name = h.aig.name().to_string();
            h.aig = res.aig;
            h.aig.set_name(name);
            AigStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Runs one pass or policy in place: `rw`, `rs`, `rf`, `b`, `o1`..`o6`,
/// `lgp`, their zero-cost forms (`rwz`, `z1`.., `lgpz`), optionally with a
/// window such as `rs -K 6`. `stats` may be NULL.
///
/// # Safety
/// `h` must be a live handle, `pass` a NUL-terminated string and `stats`
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_run_pass(
    h: *mut AigHandle,
    pass: *const c_char,
    stats: *mut AigPassStats,
) -> AigStatus {
    guard(|| {
        let pass = tri!(str_arg(pass));
        let script = flow::parse_script(pass).and_then(|s| {
            if s.steps.len() == 1 {
                Ok(s)
            } else {
                Err(Error::BadRecipe(format!("`{pass}` is not a single pass")))
            }
        });
        run_script(h, script, pass.trim(), stats)
    })
}

/// Runs a `;`-separated script or a built-in flow (`resyn`, `resyn3`,
/// `o-resyn`, `o-resyn3`, `lgp-resyn`, `lgp-resyn3`) in place.
///
/// # Safety
/// As for `aig_orch_run_pass`.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_run_flow(
    h: *mut AigHandle,
    script: *const c_char,
    stats: *mut AigPassStats,
) -> AigStatus {
    guard(|| {
        let text = tri!(str_arg(script));
        run_script(h, flow::parse_script(text), text.trim(), stats)
    })
}

/// Combinational equivalence by simulation. With `exhaustive` the check is
/// complete (at most 16 inputs); otherwise `patterns` seeded random
/// patterns are used, or the exhaustive check when the graphs are narrow
/// enough and `patterns` is 0.
///
/// # Safety
/// `a` and `b` must be live handles and `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn aig_orch_cec(
    a: *const AigHandle,
    b: *const AigHandle,
    exhaustive: bool,
    patterns: u64,
    seed: u64,
    verdict: *mut AigCecVerdict,
) -> AigStatus {
    guard(|| {
        let a = tri!(handle_ref(a));
        let b = tri!(handle_ref(b));
        if verdict.is_null() {
            set_error("null output pointer");
            return AigStatus::NullArgument;
        }
        let mode = if exhaustive {
            Mode::Exhaustive
        } else if patterns == 0 {
            Mode::Auto {
                patterns: cec::DEFAULT_PATTERNS,
                seed,
            }
        } else {
            Mode::Random {
                patterns: patterns as usize,
                seed,
            }
        };
        match cec::check(&a.aig, &b.aig, mode) {
            Ok(r) => {
                *verdict = match r {
                    CecResult::Equivalent => AigCecVerdict::Equivalent,
                    CecResult::Counterexample(_) => AigCecVerdict::Counterexample,
                    CecResult::Unknown { .. } => AigCecVerdict::Unknown,
                };
                AigStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
