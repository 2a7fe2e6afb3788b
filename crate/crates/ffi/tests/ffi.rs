use std::ffi::{CStr, CString};
use std::ptr;

use egn_ffi::*;

const P3: &str = r#"{"graph": {"n": 3, "edges": [[1,2],[2,3]]}, "payoffs": {"default": [[2.1,0],[0,1]]}}"#;

fn load(json: &str) -> *mut EgnInstance {
    let text = CString::new(json).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { egn_instance_from_json(text.as_ptr(), &mut inst) },
        EgnStatus::Ok
    );
    assert!(!inst.is_null());
    inst
}

fn last_error() -> String {
    let msg = egn_last_error_message();
    assert!(!msg.is_null());
    unsafe { CStr::from_ptr(msg) }.to_str().unwrap().to_string()
}

#[test]
fn classify_through_handle() {
    let inst = load(P3);
    unsafe {
        assert_eq!(egn_instance_vertex_count(inst), 3);
        let mut verdict = EgnVerdict::NotNash;
        let mut lambdas = [0.0; 3];
        // "110": players 1 and 2 cooperate
        let status = egn_classify(inst, 0b011, &mut verdict, lambdas.as_mut_ptr(), lambdas.len());
        assert_eq!(status, EgnStatus::Ok);
        assert_eq!(verdict, EgnVerdict::NotNash);
        assert!((lambdas[0] + 2.1).abs() < 1e-12);
        assert!((lambdas[2] - 2.1).abs() < 1e-12);

        assert_eq!(
            egn_classify(inst, 0b111, &mut verdict, ptr::null_mut(), 0),
            EgnStatus::Ok
        );
        assert_eq!(verdict, EgnVerdict::StrictNash);

        let mut short = [0.0; 2];
        let status = egn_classify(inst, 0, &mut verdict, short.as_mut_ptr(), short.len());
        assert_eq!(status, EgnStatus::InvalidArgument);
        assert_eq!(
            egn_classify(inst, 8, &mut verdict, ptr::null_mut(), 0),
            EgnStatus::InvalidArgument
        );
        egn_instance_free(inst);
    }
}

#[test]
fn enumerate_and_count() {
    let path = CString::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/caterpillar.json")).unwrap();
    let mut inst = ptr::null_mut();
    unsafe {
        assert_eq!(egn_instance_load(path.as_ptr(), &mut inst), EgnStatus::Ok);
        let (mut sne, mut ne) = (0u64, 0u64);
        assert_eq!(egn_count_equilibria(inst, 1, &mut sne, &mut ne), EgnStatus::Ok);
        assert_eq!((sne, ne), (8, 8));

        let mut list = ptr::null_mut();
        assert_eq!(egn_enumerate(inst, EgnFilter::Sne, true, 1, &mut list), EgnStatus::Ok);
        assert_eq!(egn_profile_list_len(list), 8);
        let mut index = 0u64;
        let mut verdict = EgnVerdict::NotNash;
        assert_eq!(egn_profile_list_get(list, 7, &mut index, &mut verdict), EgnStatus::Ok);
        assert_eq!((index, verdict), ((1 << 18) - 1, EgnVerdict::StrictNash));
        assert_eq!(
            egn_profile_list_get(list, 8, &mut index, &mut verdict),
            EgnStatus::InvalidArgument
        );
        egn_profile_list_free(list);
        egn_instance_free(inst);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let mut inst = ptr::null_mut();
    unsafe {
        assert_eq!(egn_instance_from_json(ptr::null(), &mut inst), EgnStatus::NullPointer);
        assert!(last_error().contains("null"));

        let zero_based =
            CString::new(r#"{"graph": {"n": 2, "edges": [[0,1]]}, "payoffs": {"default": [[1,0],[0,1]]}}"#).unwrap();
        assert_eq!(egn_instance_from_json(zero_based.as_ptr(), &mut inst), EgnStatus::Parse);
        assert!(last_error().contains("out of range"));
        assert!(inst.is_null());

        let bad_utf8 = [0xffu8, 0xfe, 0];
        assert_eq!(
            egn_instance_from_json(bad_utf8.as_ptr().cast(), &mut inst),
            EgnStatus::InvalidUtf8
        );

        let missing = CString::new("/nonexistent/instance.json").unwrap();
        assert_eq!(egn_instance_load(missing.as_ptr(), &mut inst), EgnStatus::Io);

        let edges: Vec<String> = (1..31).map(|v| format!("[{v},{}]", v + 1)).collect();
        let big = load(&format!(
            r#"{{"graph": {{"n": 31, "edges": [{}]}}, "payoffs": {{"default": [[1,0],[0,1]]}}}}"#,
            edges.join(",")
        ));
        let mut list = ptr::null_mut();
        assert_eq!(
            egn_enumerate(big, EgnFilter::All, false, 1, &mut list),
            EgnStatus::GuardExceeded
        );
        assert!(list.is_null());
        egn_instance_free(big);

        let mut verdict = EgnVerdict::NotNash;
        assert_eq!(
            egn_classify(ptr::null(), 0, &mut verdict, ptr::null_mut(), 0),
            EgnStatus::NullPointer
        );
        assert_eq!(egn_instance_vertex_count(ptr::null()), 0);
        assert_eq!(egn_profile_list_len(ptr::null()), 0);
        egn_instance_free(ptr::null_mut());
        egn_profile_list_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(egn_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/egn.h")).unwrap();
    for item in [
        "typedef struct EgnInstance EgnInstance;",
        "typedef struct EgnProfileList EgnProfileList;",
        "EGN_STATUS_OK = 0",
        "EGN_STATUS_PANIC = 8",
        "EGN_VERDICT_STRICT_NASH = 0",
        "EGN_FILTER_ALL = 2",
        "egn_instance_from_json(const char *json, struct EgnInstance **out);",
        "egn_instance_load(",
        "void egn_instance_free(struct EgnInstance *inst);",
        "egn_classify(",
        "egn_count_equilibria(",
        "egn_enumerate(",
        "egn_profile_list_get(",
        "const char *egn_last_error_message(void);",
        "const char *egn_version(void);",
    ] {
        assert!(header.contains(item), "missing {item}");
    }
}
