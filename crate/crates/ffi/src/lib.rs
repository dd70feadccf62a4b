// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! C ABI over `mcskit`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free` function. Every fallible call returns an
//! [`McsStatus`] and, on failure, leaves a message retrievable through
//! [`mcs_last_error_message`] on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use mcskit::bench::compute_mcs;
use mcskit::{find_mps, Budget, EngineError, Format, Method, SetFamily, Topology};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidPair = 4,
    Timeout = 5,
    UniverseTooLarge = 6,
    IoError = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McsInputFormat {
    EdgeList = 0,
    Json = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McsMethod {
    Fast = 0,
    Shannon = 1,
    Combinatorial = 2,
}

impl From<McsMethod> for Method {
    fn from(m: McsMethod) -> Method {
        match m {
            McsMethod::Fast => Method::Fast,
            McsMethod::Shannon => Method::Shannon,
            McsMethod::Combinatorial => Method::Combinatorial,
        }
    }
}

/// A parsed network.
pub struct McsTopology {
    inner: Topology,
}

/// A family of element sets, stored as labels in canonical order.
pub struct McsFamily {
    sets: Vec<Vec<String>>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(McsStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> McsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => McsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            McsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(McsStatus::NullArgument, format!("`{what}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(McsStatus::InvalidUtf8, format!("`{what}` is not valid UTF-8")))
}

unsafe fn topo_arg<'a>(t: *const McsTopology) -> Result<&'a Topology, Fail> {
    t.as_ref()
        .map(|t| &t.inner)
        .ok_or_else(|| Fail(McsStatus::NullArgument, "`topology` is null".into()))
}

fn out_arg<T>(out: *mut *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(McsStatus::NullArgument, "`out` is null".into()))
    } else {
        Ok(())
    }
}

fn family_handle(t: &Topology, f: &SetFamily) -> *mut McsFamily {
    Box::into_raw(Box::new(McsFamily {
        sets: t.family_labels(f),
    }))
}

/// Parses a topology from NUL-terminated text.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mcs_topology_parse(
    text: *const c_char,
    format: McsInputFormat,
    out: *mut *mut McsTopology,
) -> McsStatus {
    guard(|| {
        out_arg(out)?;
        let text = str_arg(text, "text")?;
        let format = match format {
            McsInputFormat::EdgeList => Format::EdgeList,
            McsInputFormat::Json => Format::Json,
        };
        let t = Topology::parse(text.as_bytes(), format, "topology")
            .map_err(|e| Fail(McsStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(McsTopology { inner: t }));
        Ok(())
    })
}

/// Reads a topology file; the format follows the extension (`.json` or
/// edge list).
///
/// # Safety
/// `path` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mcs_topology_load(path: *const c_char, out: *mut *mut McsTopology) -> McsStatus {
    guard(|| {
        out_arg(out)?;
        let path = str_arg(path, "path")?;
        let t = Topology::from_path(std::path::Path::new(path)).map_err(|e| match e {
            mcskit::TopologyError::Io(_) => Fail(McsStatus::IoError, e.to_string()),
            _ => Fail(McsStatus::ParseError, e.to_string()),
        })?;
        *out = Box::into_raw(Box::new(McsTopology { inner: t }));
        Ok(())
    })
}

/// # Safety
/// `t` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn mcs_topology_free(t: *mut McsTopology) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mcs_topology_num_nodes(t: *const McsTopology) -> usize {
    t.as_ref().map_or(0, |t| t.inner.num_nodes())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mcs_topology_num_edges(t: *const McsTopology) -> usize {
    t.as_ref().map_or(0, |t| t.inner.num_edges())
}

/// Minimal path sets between `src` and `dst`, as path interiors.
///
/// # Safety
/// Pointers must be valid; `src` and `dst` must be C strings.
#[no_mangle]
pub unsafe extern "C" fn mcs_find_mps(
    t: *const McsTopology,
    src: *const c_char,
    dst: *const c_char,
    include_edges: bool,
    out: *mut *mut McsFamily,
) -> McsStatus {
    guard(|| {
        out_arg(out)?;
        let t = topo_arg(t)?;
        let (s, d) = resolve(t, src, dst)?;
        let r = find_mps(t, s, d, include_edges).map_err(|e| Fail(McsStatus::InvalidPair, e.to_string()))?;
        *out = family_handle(t, &r.interiors);
        Ok(())
    })
}

unsafe fn resolve(t: &Topology, src: *const c_char, dst: *const c_char) -> Result<(usize, usize), Fail> {
    let src = str_arg(src, "src")?;
    let dst = str_arg(dst, "dst")?;
    t.resolve_pair(src, dst)
        .map_err(|e| Fail(McsStatus::InvalidPair, e.to_string()))
}

/// Minimal cut sets between `src` and `dst`. A `timeout_ms` of 0 means no
/// limit.
///
/// # Safety
/// Pointers must be valid; `src` and `dst` must be C strings.
#[no_mangle]
pub unsafe extern "C" fn mcs_compute(
    t: *const McsTopology,
    src: *const c_char,
    dst: *const c_char,
    method: McsMethod,
    timeout_ms: u64,
    include_edges: bool,
    out: *mut *mut McsFamily,
) -> McsStatus {
    guard(|| {
        out_arg(out)?;
        let t = topo_arg(t)?;
        let (s, d) = resolve(t, src, dst)?;
        let budget = if timeout_ms == 0 {
            Budget::unlimited()
        } else {
            Budget::with_timeout(Duration::from_millis(timeout_ms))
        };
        let r = find_mps(t, s, d, include_edges).map_err(|e| Fail(McsStatus::InvalidPair, e.to_string()))?;
        let universe = t.pair_universe(s, d, include_edges);
        let f = compute_mcs(method.into(), &r.interiors, &universe, &budget).map_err(|e| match e {
            EngineError::Interrupted => Fail(McsStatus::Timeout, e.to_string()),
            EngineError::UniverseTooLarge(_) => Fail(McsStatus::UniverseTooLarge, e.to_string()),
        })?;
        *out = family_handle(t, &f);
        Ok(())
    })
}

/// Number of member sets, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mcs_family_len(f: *const McsFamily) -> usize {
    f.as_ref().map_or(0, |f| f.sets.len())
}

/// Size of member `index`, or 0 when out of range.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mcs_family_set_len(f: *const McsFamily, index: usize) -> usize {
    f.as_ref().and_then(|f| f.sets.get(index)).map_or(0, Vec::len)
}

/// The family as a JSON array of label arrays. Free with [`mcs_string_free`].
/// Returns null for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mcs_family_to_json(f: *const McsFamily) -> *mut c_char {
    let Some(f) = f.as_ref() else {
        return ptr::null_mut();
    };
    let json = serde_json::to_string(&f.sets).unwrap_or_default();
    CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `f` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn mcs_family_free(f: *mut McsFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn mcs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mcs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn mcs_status_name(status: McsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        McsStatus::Ok => c"ok",
        McsStatus::NullArgument => c"null argument",
        McsStatus::InvalidUtf8 => c"invalid utf-8",
        McsStatus::ParseError => c"parse error",
        McsStatus::InvalidPair => c"invalid pair",
        McsStatus::Timeout => c"timeout",
        McsStatus::UniverseTooLarge => c"universe too large",
        McsStatus::IoError => c"i/o error",
        McsStatus::Panic => c"panic",
    };
    s.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_names_are_distinct() {
        let all = [
            McsStatus::Ok,
            McsStatus::NullArgument,
            McsStatus::InvalidUtf8,
            McsStatus::ParseError,
            McsStatus::InvalidPair,
            McsStatus::Timeout,
            McsStatus::UniverseTooLarge,
            McsStatus::IoError,
            McsStatus::Panic,
        ];
        let names: std::collections::HashSet<_> = all
            .iter()
            .map(|&s| unsafe { CStr::from_ptr(mcs_status_name(s)) })
            .collect();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn guard_catches_panics() {
        assert_eq!(guard(|| panic!("boom")), McsStatus::Panic);
        assert!(!mcs_last_error_message().is_null());
        assert_eq!(guard(|| Ok(())), McsStatus::Ok);
        assert!(mcs_last_error_message().is_null());
    }
}
