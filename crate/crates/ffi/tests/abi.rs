use std::ffi::{c_char, CStr, CString};
use std::ptr;

use balgraph_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bg_last_error()) }
        .to_string_lossy()
        .into_owned()
}

const EX3: &str = "v x\nv v\nv w\nv y\ne e1 x v\ne e2 y v\ne e3 w x\ne e4 w y\ne e5 v w\n";

struct Fixture {
    graph: *mut BgGraph,
    group: *mut BgGroup,
}

impl Fixture {
    fn new(graph: &str, group: &str) -> Self {
        let mut g = ptr::null_mut();
        let mut a = ptr::null_mut();
        unsafe {
            assert_eq!(bg_graph_parse(c(graph).as_ptr(), &mut g), BgStatus::Ok);
            assert_eq!(bg_group_parse(c(group).as_ptr(), &mut a), BgStatus::Ok);
        }
        Self { graph: g, group: a }
    }

    fn labeling(&self, text: &str) -> *mut BgLabeling {
        let mut l = ptr::null_mut();
        let status = unsafe { bg_labeling_parse(self.graph, self.group, c(text).as_ptr(), &mut l) };
        assert_eq!(status, BgStatus::Ok, "{}", last_error());
        l
    }
}

impl Drop for Fixture {
    fn drop(&mut self) {
        unsafe {
            bg_graph_free(self.graph);
            bg_group_free(self.group);
        }
    }
}

#[test]
fn structure_and_counts() {
    let f = Fixture::new(EX3, "Z/2");
    let (mut p, mut q) = (0usize, 0usize);
    unsafe {
        assert_eq!(bg_graph_vertex_count(f.graph), 4);
        assert_eq!(bg_graph_edge_count(f.graph), 5);
        assert_eq!(
            bg_structure(f.graph, BgFamily::HR, &mut p, &mut q),
            BgStatus::Ok
        );
    }
    assert_eq!((p, q), (3, 0));
    for family in [
        BgFamily::HF,
        BgFamily::BF,
        BgFamily::WF,
        BgFamily::HR,
        BgFamily::BR,
        BgFamily::WR,
    ] {
        let (mut closed, mut counted) = (0u64, 0u64);
        unsafe {
            assert_eq!(
                bg_structure_cardinality(f.graph, f.group, family, &mut closed),
                BgStatus::Ok
            );
            assert_eq!(
                bg_exhaustive_count(f.graph, f.group, family, 0, &mut counted),
                BgStatus::Ok
            );
        }
        assert_eq!(closed, counted, "{family:?}");
    }
    let mut n = 0u64;
    let status = unsafe { bg_exhaustive_count(f.graph, f.group, BgFamily::WR, 10, &mut n) };
    assert_eq!(status, BgStatus::CapExceeded);
    assert!(last_error().contains("cap"));
}

#[test]
fn check_reports_witness() {
    let f = Fixture::new("e e v v\n", "Z/2");
    let l = f.labeling("e\t1\n");
    let mut balanced = -1;
    let mut witness: *mut c_char = ptr::null_mut();
    unsafe {
        assert_eq!(
            bg_check(f.graph, l, BgFamily::HF, &mut balanced, &mut witness),
            BgStatus::Ok
        );
        assert_eq!(balanced, 0);
        assert_eq!(CStr::from_ptr(witness).to_str().unwrap(), "v +e v = 1");
        bg_string_free(witness);
        // Vertex labels are missing.
        assert_eq!(
            bg_check(f.graph, l, BgFamily::WF, &mut balanced, ptr::null_mut()),
            BgStatus::Invalid
        );
        assert!(last_error().contains("unlabeled"));
        bg_labeling_free(l);
    }
}

#[test]
fn sample_round_trips_through_text() {
    let f = Fixture::new(EX3, "Z^2 x Z/4");
    for family in [
        BgFamily::HF,
        BgFamily::WF,
        BgFamily::HR,
        BgFamily::WR,
        BgFamily::BF,
        BgFamily::BR,
    ] {
        let mut l = ptr::null_mut();
        let mut text: *mut c_char = ptr::null_mut();
        let mut balanced = -1;
        unsafe {
            assert_eq!(bg_sample(f.graph, f.group, family, 5, &mut l), BgStatus::Ok);
            assert_eq!(bg_labeling_to_text(f.graph, l, &mut text), BgStatus::Ok);
            let again = f.labeling(CStr::from_ptr(text).to_str().unwrap());
            assert_eq!(
                bg_check(f.graph, again, family, &mut balanced, ptr::null_mut()),
                BgStatus::Ok
            );
            assert_eq!(balanced, 1, "{family:?}");
            bg_string_free(text);
            bg_labeling_free(l);
            bg_labeling_free(again);
        }
    }
}

#[test]
fn errors_are_reported() {
    let mut g = ptr::null_mut();
    let mut a = ptr::null_mut();
    let mut n = 0u64;
    unsafe {
        assert_eq!(bg_group_parse(c("Z/1").as_ptr(), &mut a), BgStatus::Parse);
        assert!(last_error().contains("below 2"));
        assert!(a.is_null());
        assert_eq!(bg_graph_parse(ptr::null(), &mut g), BgStatus::NullArgument);
        assert_eq!(
            bg_graph_parse(c("e a x\n").as_ptr(), &mut g),
            BgStatus::Parse
        );
        assert_eq!(bg_group_parse(c("Z x Z/3").as_ptr(), &mut a), BgStatus::Ok);
        assert_eq!(bg_group_cardinality(a, &mut n), BgStatus::Infinite);
        assert_eq!(
            bg_group_cardinality(a, ptr::null_mut()),
            BgStatus::NullArgument
        );
        bg_group_free(a);
        assert_eq!(
            bg_group_parse(c("Z/3 x Z/4").as_ptr(), &mut a),
            BgStatus::Ok
        );
        assert_eq!(bg_group_cardinality(a, &mut n), BgStatus::Ok);
        assert_eq!(n, 12);
        bg_group_free(a);
        bg_group_free(ptr::null_mut());
        bg_graph_free(ptr::null_mut());
        bg_labeling_free(ptr::null_mut());
        bg_string_free(ptr::null_mut());
    }
}

#[test]
fn labeling_for_another_graph_is_rejected() {
    let small = Fixture::new("e e v v\n", "Z/2");
    let big = Fixture::new(EX3, "Z/2");
    let l = small.labeling("e\t1\n");
    let mut text = ptr::null_mut();
    let mut balanced = 0;
    unsafe {
        assert_eq!(
            bg_labeling_to_text(big.graph, l, &mut text),
            BgStatus::Invalid
        );
        assert_eq!(
            bg_check(big.graph, l, BgFamily::HF, &mut balanced, ptr::null_mut()),
            BgStatus::Invalid
        );
        bg_labeling_free(l);
    }
}
