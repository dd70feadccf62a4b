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

use std::ffi::{CStr, CString};
use std::ptr;

use mcskit_ffi::*;

const SAMPLE: &str = "S A\nS C\nA B\nA D\nC D\nD B\nD E\nE F\nB T\nF T\n";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(text: &str, format: McsInputFormat) -> *mut McsTopology {
    let text = c(text);
    let mut t = ptr::null_mut();
    let st = unsafe { mcs_topology_parse(text.as_ptr(), format, &mut t) };
    assert_eq!(st, McsStatus::Ok, "{}", last_error());
    t
}

fn last_error() -> String {
    let p = mcs_last_error_message();
    if p.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }
}

fn json(f: *const McsFamily) -> String {
    unsafe {
        let s = mcs_family_to_json(f);
        assert!(!s.is_null());
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        mcs_string_free(s);
        out
    }
}

fn compute(t: *const McsTopology, src: &str, dst: &str, m: McsMethod) -> (McsStatus, *mut McsFamily) {
    let (s, d) = (c(src), c(dst));
    let mut f = ptr::null_mut();
    let st = unsafe { mcs_compute(t, s.as_ptr(), d.as_ptr(), m, 0, false, &mut f) };
    (st, f)
}

#[test]
fn cut_sets_through_the_abi() {
    let t = parse(SAMPLE, McsInputFormat::EdgeList);
    unsafe {
        assert_eq!(mcs_topology_num_nodes(t), 8);
        assert_eq!(mcs_topology_num_edges(t), 10);
    }
    for m in [McsMethod::Fast, McsMethod::Shannon, McsMethod::Combinatorial] {
        let (st, f) = compute(t, "S", "T", m);
        assert_eq!(st, McsStatus::Ok);
        unsafe {
            assert_eq!(mcs_family_len(f), 5);
            assert_eq!(mcs_family_set_len(f, 0), 2);
            assert_eq!(mcs_family_set_len(f, 99), 0);
        }
        assert_eq!(json(f), r#"[["A","C"],["A","D"],["B","D"],["B","E"],["B","F"]]"#);
        unsafe { mcs_family_free(f) };
    }
    unsafe { mcs_topology_free(t) };
}

#[test]
fn path_sets_through_the_abi() {
    let t = parse(SAMPLE, McsInputFormat::EdgeList);
    let (s, d) = (c("S"), c("T"));
    let mut f = ptr::null_mut();
    let st = unsafe { mcs_find_mps(t, s.as_ptr(), d.as_ptr(), false, &mut f) };
    assert_eq!(st, McsStatus::Ok);
    assert_eq!(
        json(f),
        r#"[["A","B"],["B","C","D"],["A","D","E","F"],["C","D","E","F"]]"#
    );
    unsafe {
        mcs_family_free(f);
        mcs_topology_free(t);
    }
}

#[test]
fn json_input_and_degenerate_pairs() {
    let t = parse(
        r#"{"nodes":["X","Y","Z","W"],"edges":[["X","Y"],["Y","Z"]]}"#,
        McsInputFormat::Json,
    );
    let (st, f) = compute(t, "X", "Y", McsMethod::Fast);
    assert_eq!(st, McsStatus::Ok);
    assert_eq!(json(f), "[]");
    unsafe { mcs_family_free(f) };

    let (st, f) = compute(t, "X", "W", McsMethod::Fast);
    assert_eq!(st, McsStatus::Ok);
    assert_eq!(json(f), "[[]]");
    unsafe {
        mcs_family_free(f);
        mcs_topology_free(t);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut t = ptr::null_mut();
    let bad = c("A B C\n");
    let st = unsafe { mcs_topology_parse(bad.as_ptr(), McsInputFormat::EdgeList, &mut t) };
    assert_eq!(st, McsStatus::ParseError);
    assert!(t.is_null());
    assert!(last_error().contains("line 1"), "{}", last_error());

    let st = unsafe { mcs_topology_parse(ptr::null(), McsInputFormat::EdgeList, &mut t) };
    assert_eq!(st, McsStatus::NullArgument);

    let t = parse(SAMPLE, McsInputFormat::EdgeList);
    let (st, f) = compute(t, "S", "nope", McsMethod::Fast);
    assert_eq!(st, McsStatus::InvalidPair);
    assert!(f.is_null());
    assert!(!last_error().is_empty());

    let (st, _) = compute(t, "S", "S", McsMethod::Fast);
    assert_eq!(st, McsStatus::InvalidPair);

    let (st, f) = compute(t, "S", "T", McsMethod::Fast);
    assert_eq!(st, McsStatus::Ok);
    assert!(last_error().is_empty());

    let (s, d) = (c("S"), c("T"));
    let st = unsafe {
        mcs_compute(
            ptr::null(),
            s.as_ptr(),
            d.as_ptr(),
            McsMethod::Fast,
            0,
            false,
            &mut ptr::null_mut(),
        )
    };
    assert_eq!(st, McsStatus::NullArgument);
    let st = unsafe { mcs_compute(t, s.as_ptr(), d.as_ptr(), McsMethod::Fast, 0, false, ptr::null_mut()) };
    assert_eq!(st, McsStatus::NullArgument);

    let mut p = ptr::null_mut();
    let missing = c("/nonexistent/mcskit/topology.txt");
    assert_eq!(
        unsafe { mcs_topology_load(missing.as_ptr(), &mut p) },
        McsStatus::IoError
    );

    unsafe {
        mcs_family_free(f);
        mcs_topology_free(t);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        mcs_topology_free(ptr::null_mut());
        mcs_family_free(ptr::null_mut());
        mcs_string_free(ptr::null_mut());
        assert_eq!(mcs_family_len(ptr::null()), 0);
        assert_eq!(mcs_topology_num_nodes(ptr::null()), 0);
        assert!(mcs_family_to_json(ptr::null()).is_null());
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/mcskit.h")).unwrap();
    for name in [
        "mcs_topology_parse",
        "mcs_topology_load",
        "mcs_topology_free",
        "mcs_topology_num_nodes",
        "mcs_topology_num_edges",
        "mcs_find_mps",
        "mcs_compute",
        "mcs_family_len",
        "mcs_family_set_len",
        "mcs_family_to_json",
        "mcs_family_free",
        "mcs_string_free",
        "mcs_last_error_message",
        "mcs_status_name",
        "typedef struct McsTopology McsTopology",
        "typedef struct McsFamily McsFamily",
        "MCS_STATUS_TIMEOUT = 5",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
