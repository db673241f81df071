//! C interface to `ratmaps`.
//!
//! A session is created from script text and then queried with command
//! lines such as `"inverse F --strategy rees"`. Every function returns an
//! [`RmStatus`]. Output strings are allocated by the library and must be
//! released with [`rm_string_free`]. On failure, [`rm_last_error`] describes
//! what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ratmaps::script::{Outcome, Session, Status};

/// Result codes. The first four match the exit codes of the command-line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RmStatus {
    Ok = 0,
    /// Parse or validation error.
    Invalid = 1,
    /// A negative answer that prevents the command from finishing, such as
    /// inverting a map that is not birational.
    Negative = 2,
    StepLimit = 3,
    NullArgument = 4,
    BadUtf8 = 5,
    /// The library panicked; this is a bug.
    Internal = 6,
}

impl From<Status> for RmStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => RmStatus::Ok,
            Status::Invalid => RmStatus::Invalid,
            Status::Negative => RmStatus::Negative,
            Status::StepLimit => RmStatus::StepLimit,
        }
    }
}

/// Opaque handle to a parsed script.
pub struct RmSession {
    inner: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: RmStatus, msg: &str) -> RmStatus {
    set_error(msg);
    status
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, RmStatus> {
    if p.is_null() {
        return Err(fail(RmStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(RmStatus::BadUtf8, "argument is not valid UTF-8"))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn guarded(f: impl FnOnce() -> RmStatus) -> RmStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(RmStatus::Internal, "internal error"))
}

unsafe fn deliver(out: Outcome, out_text: *mut *mut c_char, err_text: *mut *mut c_char) -> RmStatus {
    let status = RmStatus::from(out.status);
    if status == RmStatus::Ok {
        set_error("");
    } else {
        set_error(out.stderr.trim_end());
    }
    if !out_text.is_null() {
        *out_text = to_c(out.stdout);
    }
    if !err_text.is_null() {
        *err_text = to_c(out.stderr);
    }
    status
}

/// Parses `script` and stores a new session in `*out`.
///
/// # Safety
/// `script` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rm_session_new(script: *const c_char, out: *mut *mut RmSession) -> RmStatus {
    guarded(|| {
        if out.is_null() {
            return fail(RmStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(script) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Session::parse(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RmSession { inner }));
                set_error("");
                RmStatus::Ok
            }
            Err(e) => fail(RmStatus::Invalid, &e.to_string()),
        }
    })
}

/// Releases a session. Null is ignored.
///
/// # Safety
/// `session` must come from [`rm_session_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rm_session_free(session: *mut RmSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Runs one command line against the session. The report and the
/// diagnostics are stored in `*out_text` and `*err_text`; either pointer may be
/// null when that text is not wanted.
///
/// # Safety
/// `session` must be live, `command` NUL-terminated, and the output
/// pointers valid or null.
#[no_mangle]
pub unsafe extern "C" fn rm_run_command(
    session: *const RmSession,
    command: *const c_char,
    out_text: *mut *mut c_char,
    err_text: *mut *mut c_char,
) -> RmStatus {
    guarded(|| {
        let Some(s) = session.as_ref() else {
            return fail(RmStatus::NullArgument, "null session");
        };
        match read_str(command) {
            Ok(line) => deliver(s.inner.run_line(line), out_text, err_text),
            Err(status) => status,
        }
    })
}

/// Runs the command statements of the script in order, stopping at the
/// first failure.
///
/// # Safety
/// As for [`rm_run_command`].
#[no_mangle]
pub unsafe extern "C" fn rm_run_script(
    session: *const RmSession,
    verbose: bool,
    out_text: *mut *mut c_char,
    err_text: *mut *mut c_char,
) -> RmStatus {
    guarded(|| {
        let Some(s) = session.as_ref() else {
            return fail(RmStatus::NullArgument, "null session");
        };
        deliver(s.inner.run_all(verbose), out_text, err_text)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
