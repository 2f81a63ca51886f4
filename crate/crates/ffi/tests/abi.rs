use std::ffi::{c_char, CStr, CString};
use std::ptr;

use bigrade_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    bg_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(bg_last_error()).to_str().unwrap().to_owned()
}

#[test]
fn catalog_handle_roundtrip() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(bg_aut_from_catalog(c("surface_g2:h_12").as_ptr(), &mut h), BgStatus::Ok);
        assert!(!h.is_null());

        let mut name = ptr::null_mut();
        assert_eq!(bg_aut_name(h, &mut name), BgStatus::Ok);
        assert_eq!(take(name), "h_12");

        let mut fixes = false;
        assert_eq!(bg_aut_fixes_boundary(h, &mut fixes), BgStatus::Ok);
        assert!(fixes);

        let mut inv = ptr::null_mut();
        assert_eq!(bg_aut_inverse(h, &mut inv), BgStatus::Ok);
        let mut id = ptr::null_mut();
        assert_eq!(bg_aut_compose(h, inv, &mut id), BgStatus::Ok);
        for w in ["x1", "y2^-1 x2", "x1 y1 x2 y2"] {
            let mut img = ptr::null_mut();
            assert_eq!(bg_aut_apply(id, c(w).as_ptr(), &mut img), BgStatus::Ok);
            assert_eq!(take(img), w);
        }

        let mut json = ptr::null_mut();
        let st = bg_tau_json(h, c("classical").as_ptr(), c("1").as_ptr(), 4, 8, 0, &mut json);
        assert_eq!(st, BgStatus::Ok, "{}", last_error());
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["wedge"], "a1^a2^b1");

        let mut json = ptr::null_mut();
        assert_eq!(bg_probe_json(h, 3, 6, 8, 0, &mut json), BgStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["verified"], serde_json::json!([[1, 0]]));

        bg_aut_free(id);
        bg_aut_free(inv);
        bg_aut_free(h);
    }
}

#[test]
fn scalar_helpers() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(bg_expand(c("x1^-1").as_ptr(), 3, 1, 1, &mut s), BgStatus::Ok);
        assert_eq!(take(s), "1 - X1 + X1^2 - X1^3");

        let mut s = ptr::null_mut();
        assert_eq!(bg_ordinal_sum(c("w*2+3").as_ptr(), c("w*1+4").as_ptr(), &mut s), BgStatus::Ok);
        assert_eq!(take(s), "w*3+7");

        let mut n = 0usize;
        assert_eq!(bg_lie_dim(2, 2, 2, 1, &mut n), BgStatus::Ok);
        assert_eq!(n, 8);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(bg_aut_from_catalog(ptr::null(), &mut h), BgStatus::Null);
        assert_eq!(bg_aut_from_catalog(c("h_12").as_ptr(), ptr::null_mut()), BgStatus::Null);
        assert_eq!(bg_aut_from_catalog(c("no_such").as_ptr(), &mut h), BgStatus::NotFound);
        assert!(last_error().contains("no_such"));
        assert!(h.is_null());

        let bad = [0xffu8, 0];
        assert_eq!(bg_aut_from_catalog(bad.as_ptr() as *const c_char, &mut h), BgStatus::Utf8);

        let mut s = ptr::null_mut();
        assert_eq!(bg_ordinal_sum(c("w+w*2").as_ptr(), c("1").as_ptr(), &mut s), BgStatus::Parse);
        assert_eq!(bg_aut_from_json(c("{").as_ptr(), &mut h), BgStatus::Parse);

        // a non-invertible table parses but is not an automorphism
        let json = r#"{"name":"bad","p":1,"q":1,"mode":"free","fwd":{"x1":"x1 x1"},"inv":{"x1":"x1"},"claims":{}}"#;
        assert_eq!(bg_aut_from_json(c(json).as_ptr(), &mut h), BgStatus::Math);

        assert_eq!(bg_aut_from_catalog(c("h_12").as_ptr(), &mut h), BgStatus::Ok);
        let st = bg_tau_json(h, c("double").as_ptr(), c("1,0").as_ptr(), 1, 8, 0, &mut s);
        assert_eq!(st, BgStatus::Math);
        let st = bg_tau_json(h, c("sideways").as_ptr(), c("1").as_ptr(), 4, 8, 0, &mut s);
        assert_eq!(st, BgStatus::Parse);
        assert_eq!(last_error(), "unknown kind \"sideways\"");
        bg_aut_free(h);
        bg_aut_free(ptr::null_mut());
        bg_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/bigrade.h");
    let dir = std::env::temp_dir().join(format!("bigrade-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ BgAut *h = 0; return bg_aut_from_catalog(\"h_12\", &h) == BG_STATUS_OK ? 0 : 1; }}\n"
        ),
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match std::process::Command::new(&cc).arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg(&src).status() {
        Ok(st) => assert!(st.success(), "header does not compile"),
        Err(e) => eprintln!("skipping header check, no C compiler: {e}"),
    }
    let _ = std::fs::remove_dir_all(&dir);
}
