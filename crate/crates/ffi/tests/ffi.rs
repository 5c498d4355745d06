use operad_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    operad_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(operad_last_error()).to_str().unwrap().to_string() }
}

#[test]
fn builtin_round_trip_through_text() {
    unsafe {
        let mut m = ptr::null_mut();
        let name = CString::new("H0SCdual").unwrap();
        assert_eq!(operad_model_builtin(name.as_ptr(), 4, &mut m), OPERAD_OK);
        assert_eq!(operad_model_generator_count(m), 4);
        let mut s = ptr::null_mut();
        assert_eq!(operad_model_emit(m, &mut s), OPERAD_OK);
        let text = take(s);
        assert!(text.contains("differential n11 ="));
        let src = CString::new(text).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(operad_model_parse(src.as_ptr(), &mut back), OPERAD_OK);
        let mut checked = 0;
        assert_eq!(operad_model_d2(back, 3, &mut checked), OPERAD_OK);
        assert!(checked > 0);
        let mut h = ptr::null_mut();
        assert_eq!(operad_model_homology_json(back, 3, &mut h), OPERAD_OK);
        let v: serde_json::Value = serde_json::from_str(&take(h)).unwrap();
        assert_eq!(v["(1,1;o)"], serde_json::json!({"-1": 1}));
        operad_model_free(back);
        operad_model_free(m);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(operad_model_builtin(ptr::null(), 0, &mut m), OPERAD_ERR_NULL);
        let bad = CString::new("Nope").unwrap();
        assert_eq!(operad_model_builtin(bad.as_ptr(), 0, &mut m), OPERAD_ERR_UNKNOWN_MODEL);
        assert!(last_error().contains("LP"));
        let src = CString::new("generator m (o,o) -> o\nrelation m(o1,o2\n").unwrap();
        assert_eq!(operad_model_parse(src.as_ptr(), &mut m), OPERAD_ERR_PARSE);
        assert!(last_error().starts_with("line 2, column"), "{}", last_error());
        let lp = CString::new("LP").unwrap();
        assert_eq!(operad_model_builtin(lp.as_ptr(), 0, &mut m), OPERAD_OK);
        assert_eq!(last_error(), "");
        assert_eq!(operad_model_d2(m, 3, ptr::null_mut()), OPERAD_ERR_COMPUTE);
        assert_eq!(operad_model_emit(m, ptr::null_mut()), OPERAD_ERR_NULL);
        operad_model_free(m);
        assert_eq!(operad_model_dims_json(ptr::null(), 3, &mut ptr::null_mut()), OPERAD_ERR_NULL);
    }
}

#[test]
fn verify_and_shlp() {
    unsafe {
        let only = CString::new("duality,gk").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(operad_verify_json(only.as_ptr(), &mut s), OPERAD_OK);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), 2);
        let corpus = operad_core::algebraside::sample_corpus(3);
        for (_, h, ok) in corpus.iter().take(6) {
            let src = CString::new(operad_core::algebraside::format_tensors(h)).unwrap();
            let want = if *ok { OPERAD_OK } else { OPERAD_CHECK_FAILED };
            assert_eq!(operad_shlp_check(src.as_ptr(), 3), want);
        }
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("liboperad_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library at {} or no C compiler", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("operad-ffi-smoke-{}", std::process::id()));
    let st = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
    let _ = std::fs::remove_file(exe);
}
