use std::ffi::{CStr, CString};
use std::ptr;

use mustafin_ffi::*;

const LINE: &str = "d=2\nflag=1\nlattice diag=0,0\nlattice diag=1,0\n";

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    mustafin_string_free(s);
    out
}

#[test]
fn classify_through_handles() {
    unsafe {
        let text = CString::new(LINE).unwrap();
        let mut deg = ptr::null_mut();
        assert_eq!(mustafin_degeneration_new(text.as_ptr(), &mut deg), MustafinStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(mustafin_degeneration_fiber(deg, &mut s), MustafinStatus::Ok);
        assert_eq!(take(s), "p1_1_1*p2_1_2");

        let mut cls = ptr::null_mut();
        assert_eq!(mustafin_classify(deg, 0, &mut cls), MustafinStatus::Ok);
        let mut counts = MustafinCounts::default();
        assert_eq!(mustafin_classification_counts(cls, &mut counts), MustafinStatus::Ok);
        assert_eq!((counts.total, counts.primary, counts.unresolved), (2, 2, 0));
        assert_eq!(mustafin_classification_summary(cls, &mut s), MustafinStatus::Ok);
        assert!(take(s).starts_with("2 components"));
        assert_eq!(mustafin_classification_json(cls, &mut s), MustafinStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(json["components"].as_array().unwrap().len(), 2);
        mustafin_classification_free(cls);
        mustafin_degeneration_free(deg);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let bad = CString::new("d=2\nflag=1\nlattice diag=0,y\n").unwrap();
        let mut deg = ptr::null_mut();
        assert_eq!(mustafin_degeneration_new(bad.as_ptr(), &mut deg), MustafinStatus::ParseError);
        assert!(deg.is_null());
        let msg = CStr::from_ptr(mustafin_last_error()).to_str().unwrap();
        assert!(msg.contains("at 3"), "{msg}");

        let bad = CString::new("d=2\nflag=1\nlattice matrix=[[1,1],[1,1]]\n").unwrap();
        assert_eq!(mustafin_degeneration_new(bad.as_ptr(), &mut deg), MustafinStatus::InvalidInput);

        assert_eq!(mustafin_degeneration_new(ptr::null(), &mut deg), MustafinStatus::NullPointer);
        let mut s = ptr::null_mut();
        assert_eq!(mustafin_degeneration_fiber(ptr::null(), &mut s), MustafinStatus::NullPointer);
        mustafin_degeneration_free(ptr::null_mut());
        mustafin_string_free(ptr::null_mut());
    }
}
