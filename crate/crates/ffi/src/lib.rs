//! C interface. Every call returns a status code; on failure `operad_last_error` describes it.
//! Strings returned through out-pointers are owned by the caller and released with
//! `operad_string_free`; models with `operad_model_free`.

use operad_core::algebraside::{parse_tensors, shlp_check};
use operad_core::dgcalc::extend_derivation;
use operad_core::presentation::{quotient_dims, Truncation};
use operad_core::specfile::{self, SpecFile};
use operad_core::{models, verify};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

pub const OPERAD_OK: i32 = 0;
pub const OPERAD_ERR_NULL: i32 = 1;
pub const OPERAD_ERR_UTF8: i32 = 2;
pub const OPERAD_ERR_UNKNOWN_MODEL: i32 = 3;
pub const OPERAD_ERR_PARSE: i32 = 4;
pub const OPERAD_ERR_COMPUTE: i32 = 5;
/// the computation ran and the property does not hold
pub const OPERAD_CHECK_FAILED: i32 = 6;
pub const OPERAD_ERR_PANIC: i32 = 7;

/// Opaque handle to a presentation, possibly with a differential.
pub struct OperadModel {
    spec: SpecFile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(i32, String);

fn guard(f: impl FnOnce() -> Result<i32, Fail>) -> i32 {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(code)) => code,
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into());
            set_error(&msg);
            OPERAD_ERR_PANIC
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(OPERAD_ERR_NULL, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(OPERAD_ERR_UTF8, e.to_string()))
}

unsafe fn model<'a>(m: *const OperadModel) -> Result<&'a OperadModel, Fail> {
    m.as_ref().ok_or(Fail(OPERAD_ERR_NULL, "null model".into()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<i32, Fail> {
    if out.is_null() {
        return Err(Fail(OPERAD_ERR_NULL, "null output pointer".into()));
    }
    *out = CString::new(s).map_err(|e| Fail(OPERAD_ERR_COMPUTE, e.to_string()))?.into_raw();
    Ok(OPERAD_OK)
}

unsafe fn put_model(out: *mut *mut OperadModel, spec: SpecFile) -> Result<i32, Fail> {
    if out.is_null() {
        return Err(Fail(OPERAD_ERR_NULL, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(OperadModel { spec }));
    Ok(OPERAD_OK)
}

/// Message for the last failed call on this thread; empty after a success. Valid until the next call.
#[no_mangle]
pub extern "C" fn operad_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn operad_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builtin model by name; dg models are generated with at most `inputs` inputs.
///
/// # Safety
/// `name` is a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn operad_model_builtin(name: *const c_char, inputs: usize, out: *mut *mut OperadModel) -> i32 {
    guard(|| {
        let name = text(name)?;
        let spec = match (models::builtin_dg(name, inputs), models::builtin(name)) {
            (Some((p, d)), _) => SpecFile::with_derivation(p, &d),
            (None, Some(p)) => SpecFile::new(p),
            (None, None) => return Err(Fail(OPERAD_ERR_UNKNOWN_MODEL, format!("unknown model `{}`; known: {}", name, models::BUILTIN_NAMES.join(", ")))),
        };
        put_model(out, spec)
    })
}

/// Model from spec-file text.
///
/// # Safety
/// `src` is a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn operad_model_parse(src: *const c_char, out: *mut *mut OperadModel) -> i32 {
    guard(|| {
        let spec = specfile::parse(text(src)?).map_err(|e| Fail(OPERAD_ERR_PARSE, e.to_string()))?;
        put_model(out, spec)
    })
}

/// # Safety
/// `m` comes from this library or is null.
#[no_mangle]
pub unsafe extern "C" fn operad_model_free(m: *mut OperadModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` is a live model handle.
#[no_mangle]
pub unsafe extern "C" fn operad_model_generator_count(m: *const OperadModel) -> usize {
    m.as_ref().map_or(0, |m| m.spec.pres.gens.gens.len())
}

/// Spec-file text of the model.
///
/// # Safety
/// `m` is a live model handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn operad_model_emit(m: *const OperadModel, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let s = specfile::emit(&model(m)?.spec).map_err(|e| Fail(OPERAD_ERR_COMPUTE, e))?;
        put_string(out, s)
    })
}

/// JSON object mapping signatures like "(2,1;o)" to quotient dimensions.
///
/// # Safety
/// `m` is a live model handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn operad_model_dims_json(m: *const OperadModel, inputs: usize, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let dims = quotient_dims(&model(m)?.spec.pres, inputs);
        let map: serde_json::Map<String, serde_json::Value> = dims.into_iter().map(|(s, d)| (s.to_string(), d.into())).collect();
        put_string(out, serde_json::Value::Object(map).to_string())
    })
}

fn dg(m: &OperadModel, inputs: usize) -> Result<operad_core::dgcalc::DgTruncation, Fail> {
    if !m.spec.is_dg() {
        return Err(Fail(OPERAD_ERR_COMPUTE, format!("{} has no differential", m.spec.pres.name)));
    }
    extend_derivation(Truncation::build(&m.spec.pres, inputs), m.spec.derivation()).map_err(|e| Fail(OPERAD_ERR_COMPUTE, e.to_string()))
}

/// Checks d^2 = 0 on all cells with at most `inputs` inputs. Returns `OPERAD_CHECK_FAILED` with
/// the offending tree in `operad_last_error` when it does not vanish.
///
/// # Safety
/// `m` is a live model handle; `checked` is null or valid.
#[no_mangle]
pub unsafe extern "C" fn operad_model_d2(m: *const OperadModel, inputs: usize, checked: *mut usize) -> i32 {
    guard(|| match dg(model(m)?, inputs)?.verify_d_squared() {
        Ok(n) => {
            if !checked.is_null() {
                *checked = n;
            }
            Ok(OPERAD_OK)
        }
        Err(e) => Err(Fail(OPERAD_CHECK_FAILED, e.to_string())),
    })
}

/// JSON object: signature -> {degree: dimension} of the homology.
///
/// # Safety
/// `m` is a live model handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn operad_model_homology_json(m: *const OperadModel, inputs: usize, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let h = dg(model(m)?, inputs)?.homology_dims();
        let map: serde_json::Map<String, serde_json::Value> = h
            .into_iter()
            .map(|(s, d)| (s.to_string(), serde_json::Value::Object(d.into_iter().filter(|(_, v)| *v > 0).map(|(k, v)| (k.to_string(), v.into())).collect())))
            .collect();
        put_string(out, serde_json::Value::Object(map).to_string())
    })
}

/// Checks a homotopy Leibniz pair given in the tensor text format on inputs with at most `n` symbols.
///
/// # Safety
/// `src` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn operad_shlp_check(src: *const c_char, n: usize) -> i32 {
    guard(|| {
        let h = parse_tensors(text(src)?).map_err(|e| Fail(OPERAD_ERR_PARSE, e.to_string()))?;
        let r = shlp_check(&h, n).map_err(|e| Fail(OPERAD_ERR_COMPUTE, e.to_string()))?;
        match r.relations.first() {
            None => Ok(OPERAD_OK),
            Some(v) => Err(Fail(OPERAD_CHECK_FAILED, format!("{} fails on {:?};{:?}", v.relation, v.closed, v.open))),
        }
    })
}

/// Runs the verification suite; `only` is null for every check or a comma-separated list of
/// names or ids. The JSON report is written to `out` even when checks fail.
///
/// # Safety
/// `only` is null or a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn operad_verify_json(only: *const c_char, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let sel = if only.is_null() { None } else { Some(vec![text(only)?.to_string()]) };
        let ids = verify::select(sel.as_deref()).map_err(|e| Fail(OPERAD_ERR_UNKNOWN_MODEL, e))?;
        let report = verify::run(&verify::VerifyConfig::default(), &ids);
        put_string(out, serde_json::to_string(&report).map_err(|e| Fail(OPERAD_ERR_COMPUTE, e.to_string()))?)?;
        if report.passed() {
            Ok(OPERAD_OK)
        } else {
            let failed: Vec<&str> = report.checks.iter().filter(|c| c.status == verify::Status::Fail).map(|c| c.name).collect();
            Err(Fail(OPERAD_CHECK_FAILED, format!("failed: {}", failed.join(", "))))
        }
    })
}

#[no_mangle]
pub extern "C" fn operad_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
