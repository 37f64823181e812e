//! C ABI for `lqn`.
//!
//! Networks and states are opaque handles created by this library and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`LqnStatus`]; on failure [`lqn_last_error_message`] describes the
//! error. Strings returned through `char **` out-parameters are owned by the
//! caller and must be released with [`lqn_string_free`].
//!
//! Indices passed across the boundary are 1-based, matching the file format.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lqn::designers::{design_cluster4, design_dicke2, design_ghz, design_w, preset_tritter, DickePreset, WForm};
use lqn::dot::{export_dot, DotRenderOptions, DotView};
use lqn::entanglement::{analyze, NumericSource, DEFAULT_RANK_TOL};
use lqn::graphs::enumerate_pms;
use lqn::io::{parse_network, report_to_json, serialize_network, serialize_state};
use lqn::model::{to_adjacency, to_bipartite};
use lqn::states::{compute_state, normalize, oracle_state};
use lqn::{ColorVector, Ket, LqnError, NetworkSpec, NoBunchState, Spin};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LqnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    NoPerfectMatching = 5,
    ZeroState = 6,
    TooLarge = 7,
    Internal = 8,
}

/// Opaque validated network.
pub struct LqnNetwork {
    spec: NetworkSpec,
}

/// Opaque normalized post-selected state.
pub struct LqnState {
    state: NoBunchState,
}

/// Network layout for [`lqn_design_w`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LqnWForm {
    Star = 0,
    Ring = 1,
}

/// Graph view for [`lqn_export_dot`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LqnDotView {
    Bipartite = 0,
    Directed = 1,
    PmDiagram = 2,
}

/// Amplitude source for the numerical part of [`lqn_analyze_json`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LqnNumeric {
    None = 0,
    Network = 1,
    Generic = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(LqnStatus, String);

impl From<LqnError> for Failure {
    fn from(e: LqnError) -> Self {
        let status = match e {
            LqnError::Parse { .. } => LqnStatus::Parse,
            LqnError::NoPerfectMatching => LqnStatus::NoPerfectMatching,
            LqnError::ZeroState => LqnStatus::ZeroState,
            LqnError::TooLarge { .. } => LqnStatus::TooLarge,
            _ => LqnStatus::Validation,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LqnStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic for [`lqn_last_error_message`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LqnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LqnStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(format!("internal error: {message}"));
            LqnStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(LqnStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn read_opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p, what).map(Some)
    }
}

unsafe fn network<'a>(p: *const LqnNetwork) -> Result<&'a NetworkSpec, Failure> {
    p.as_ref().map(|n| &n.spec).ok_or_else(|| null("network"))
}

unsafe fn state<'a>(p: *const LqnState) -> Result<&'a NoBunchState, Failure> {
    p.as_ref().map(|s| &s.state).ok_or_else(|| null("state"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_network(out: *mut *mut LqnNetwork, spec: NetworkSpec) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(LqnNetwork { spec })));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Failure(LqnStatus::Internal, "string contains nul".into()))?;
    out.write(c.into_raw());
    Ok(())
}

fn colors(text: Option<&str>) -> Result<Option<ColorVector>, Failure> {
    text.map(|t| {
        ColorVector::parse(t).ok_or_else(|| Failure(LqnStatus::Validation, format!("bad color vector {t:?}")))
    })
    .transpose()
}

/// Message for the last failed call on this thread, or NULL after a
/// successful call. Valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn lqn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lqn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a network from JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_network_from_json(json: *const c_char, out: *mut *mut LqnNetwork) -> LqnStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        put_network(out, parse_network(text)?)
    })
}

/// Releases a network. NULL is ignored.
///
/// # Safety
/// `network` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lqn_network_free(network: *mut LqnNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// Serializes a network to JSON.
///
/// # Safety
/// `network` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_network_to_json(network: *const LqnNetwork, out: *mut *mut c_char) -> LqnStatus {
    guard(|| put_string(out, serialize_network(self::network(network)?)))
}

/// Number of particles (and detectors).
///
/// # Safety
/// `network` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_network_n(network: *const LqnNetwork, out: *mut usize) -> LqnStatus {
    guard(|| put(out, self::network(network)?.n()))
}

/// GHZ-class ring. `colors` is a `u`/`d` string of length `n`, or NULL for
/// all up.
///
/// # Safety
/// `colors` must be NULL or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_design_ghz(n: usize, colors: *const c_char, out: *mut *mut LqnNetwork) -> LqnStatus {
    guard(|| {
        let cv = self::colors(read_opt_str(colors, "colors")?)?.unwrap_or_else(|| ColorVector::uniform(n, Spin::Up));
        put_network(out, design_ghz(n, &cv, None)?)
    })
}

/// W-class network. `colors` may be NULL.
///
/// # Safety
/// `colors` must be NULL or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_design_w(
    n: usize,
    form: LqnWForm,
    colors: *const c_char,
    out: *mut *mut LqnNetwork,
) -> LqnStatus {
    guard(|| {
        let cv = self::colors(read_opt_str(colors, "colors")?)?;
        let form = match form {
            LqnWForm::Star => WForm::Star,
            LqnWForm::Ring => WForm::Ring,
        };
        put_network(out, design_w(n, form, cv.as_ref())?)
    })
}

/// Dicke `D_2^N` network. `preset` is `"paper-n4"`, `"paper-n5"` or NULL for
/// flat rows.
///
/// # Safety
/// `preset` must be NULL or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_design_dicke2(n: usize, preset: *const c_char, out: *mut *mut LqnNetwork) -> LqnStatus {
    guard(|| {
        let preset = read_opt_str(preset, "preset")?.map(|p| p.parse::<DickePreset>()).transpose()?;
        put_network(out, design_dicke2(n, preset)?)
    })
}

/// Four-qubit cluster-state network.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_design_cluster4(out: *mut *mut LqnNetwork) -> LqnStatus {
    guard(|| put_network(out, design_cluster4()?))
}

/// Three-port tritter network.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_preset_tritter(out: *mut *mut LqnNetwork) -> LqnStatus {
    guard(|| put_network(out, preset_tritter()?))
}

/// Number of perfect matchings of the network graph.
///
/// # Safety
/// `network` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_count_perfect_matchings(network: *const LqnNetwork, out: *mut usize) -> LqnStatus {
    guard(|| {
        let spec = self::network(network)?;
        put(out, enumerate_pms(&to_bipartite(&to_adjacency(spec))).len())
    })
}

/// Assembles and normalizes the post-selected state.
///
/// # Safety
/// `network` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_compute_state(network: *const LqnNetwork, out: *mut *mut LqnState) -> LqnStatus {
    guard(|| {
        let state = normalize(&compute_state(self::network(network)?)?)?;
        put(out, Box::into_raw(Box::new(LqnState { state })))
    })
}

/// Releases a state. NULL is ignored.
///
/// # Safety
/// `state` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lqn_state_free(state: *mut LqnState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Serializes a state to JSON, terms sorted by ket.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_state_to_json(state: *const LqnState, out: *mut *mut c_char) -> LqnStatus {
    guard(|| put_string(out, serialize_state(self::state(state)?)))
}

/// Number of stored terms.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_state_num_terms(state: *const LqnState, out: *mut usize) -> LqnStatus {
    guard(|| put(out, self::state(state)?.len()))
}

/// Amplitude of `ket` (a `u`/`d` string); zero for kets not in the state.
///
/// # Safety
/// `state` must be a live handle; `ket` nul-terminated; `re` and `im`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_state_amplitude(
    state: *const LqnState,
    ket: *const c_char,
    re: *mut f64,
    im: *mut f64,
) -> LqnStatus {
    guard(|| {
        let s = self::state(state)?;
        let text = read_str(ket, "ket")?;
        let ket = Ket::parse(text)
            .filter(|k| k.len() == s.n())
            .ok_or_else(|| Failure(LqnStatus::Validation, format!("bad ket {text:?} for n = {}", s.n())))?;
        let amp = s.amplitude(&ket);
        put(re, amp.re)?;
        put(im, amp.im)
    })
}

/// Squared norm of the state before normalization.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_state_postselect_probability(state: *const LqnState, out: *mut f64) -> LqnStatus {
    guard(|| put(out, self::state(state)?.postselect_probability().unwrap_or(1.0)))
}

/// Largest difference between the assembled state and the brute-force
/// permutation sum.
///
/// # Safety
/// `network` must be a live handle; `max_diff` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_verify(network: *const LqnNetwork, max_diff: *mut f64) -> LqnStatus {
    guard(|| {
        let spec = self::network(network)?;
        let diff = compute_state(spec)?.max_abs_diff(&oracle_state(spec)?)?;
        put(max_diff, diff)
    })
}

/// Separability report as JSON. `seed` is used only with
/// `LQN_NUMERIC_GENERIC`.
///
/// # Safety
/// `network` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_analyze_json(
    network: *const LqnNetwork,
    numeric: LqnNumeric,
    seed: u64,
    out: *mut *mut c_char,
) -> LqnStatus {
    guard(|| {
        let source = match numeric {
            LqnNumeric::None => None,
            LqnNumeric::Network => Some(NumericSource::Network),
            LqnNumeric::Generic => Some(NumericSource::Generic { seed }),
        };
        let report = analyze(self::network(network)?, source, DEFAULT_RANK_TOL)?;
        put_string(out, format!("{:#}", report_to_json(&report)))
    })
}

/// DOT rendering of a graph view. `highlight_pm` is a 1-based matching
/// index, or 0 for none.
///
/// # Safety
/// `network` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lqn_export_dot(
    network: *const LqnNetwork,
    view: LqnDotView,
    show_weights: c_int,
    highlight_pm: usize,
    out: *mut *mut c_char,
) -> LqnStatus {
    guard(|| {
        let view = match view {
            LqnDotView::Bipartite => DotView::Bipartite,
            LqnDotView::Directed => DotView::Directed,
            LqnDotView::PmDiagram => DotView::PmDiagram,
        };
        let opts = DotRenderOptions {
            view,
            show_weights: show_weights != 0,
            highlight_pm: highlight_pm.checked_sub(1),
        };
        put_string(out, export_dot(self::network(network)?, &opts)?)
    })
}
