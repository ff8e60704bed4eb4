//! C ABI for `gqod`.
//!
//! Orders and terms cross the boundary as opaque handles. Every fallible
//! function returns a [`GqodStatus`]; on failure a message describing the
//! error is available from [`gqod_last_error`] on the same thread. Strings
//! returned by the library must be released with [`gqod_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use gqod::embedding::{forest_embed, tree_embed};
use gqod::labels::presets;
use gqod::rewrite::{play, render_trace, replay, GameConfig, Outcome, RandomStrategy};
use gqod::{load_order_spec, parse, CombinedOrder, Comparator, Level, Term};

/// Result of a library call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GqodStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The order specification could not be loaded, or a preset or index
    /// name is unknown.
    Order = 3,
    /// A term could not be parsed.
    Parse = 4,
    /// Two handles belong to different orders.
    OrderMismatch = 5,
    /// The embedding search rejected its input.
    Embed = 6,
    /// A game could not be played.
    Game = 7,
    /// A trace failed verification.
    Trace = 8,
    /// The library panicked; this is a bug.
    Internal = 9,
}

/// How a hydra game ended.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GqodOutcome {
    /// No move applies to the final hydra.
    Terminal = 0,
    StepLimit = 1,
    SizeLimit = 2,
    /// A player declined to move.
    Stopped = 3,
}

impl From<Outcome> for GqodOutcome {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Terminal => GqodOutcome::Terminal,
            Outcome::StepLimit => GqodOutcome::StepLimit,
            Outcome::SizeLimit => GqodOutcome::SizeLimit,
            Outcome::Stopped => GqodOutcome::Stopped,
        }
    }
}

/// A loaded label order.
pub struct GqodOrder {
    order: Arc<CombinedOrder>,
}

/// A term over a particular order.
pub struct GqodTerm {
    order: Arc<CombinedOrder>,
    term: Term,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(GqodStatus, String);

fn fail<T>(status: GqodStatus, message: impl ToString) -> Result<T, Failure> {
    Err(Failure(status, message.to_string()))
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, records its error, and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GqodStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GqodStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal error");
            GqodStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(GqodStatus::NullArgument, format!("{what} is null"));
    }
    match CStr::from_ptr(p).to_str() {
        Ok(s) => Ok(s),
        Err(_) => fail(GqodStatus::InvalidUtf8, format!("{what} is not valid UTF-8")),
    }
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    match p.as_ref() {
        Some(r) => Ok(r),
        None => fail(GqodStatus::NullArgument, format!("{what} is null")),
    }
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    match p.as_mut() {
        Some(r) => Ok(r),
        None => fail(GqodStatus::NullArgument, format!("{what} is null")),
    }
}

fn same_order(a: &GqodTerm, b: &GqodTerm) -> Result<(), Failure> {
    if Arc::ptr_eq(&a.order, &b.order) {
        Ok(())
    } else {
        fail(GqodStatus::OrderMismatch, "the terms belong to different orders")
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn new_order(order: CombinedOrder) -> *mut GqodOrder {
    Box::into_raw(Box::new(GqodOrder { order: Arc::new(order) }))
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn gqod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gqod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads an order from the text of an order specification.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gqod_order_load(spec: *const c_char, out: *mut *mut GqodOrder) -> GqodStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let spec = str_arg(spec, "spec")?;
        match load_order_spec(spec) {
            Ok(o) => {
                *out = new_order(o);
                Ok(())
            }
            Err(e) => fail(GqodStatus::Order, e),
        }
    })
}

/// Loads a built-in order: `hydra`, `two-chain`, `counterexample` or
/// `two-element`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gqod_order_preset(name: *const c_char, out: *mut *mut GqodOrder) -> GqodStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let spec = match str_arg(name, "name")? {
            "hydra" => presets::HYDRA,
            "two-chain" => presets::TWO_CHAIN,
            "counterexample" => presets::COUNTEREXAMPLE,
            "two-element" => presets::TWO_ELEMENT,
            other => return fail(GqodStatus::Order, format!("unknown preset {other:?}")),
        };
        let o = load_order_spec(spec).map_err(|e| Failure(GqodStatus::Internal, e.to_string()))?;
        *out = new_order(o);
        Ok(())
    })
}

/// Releases an order. Terms parsed over it stay valid. Null is ignored.
///
/// # Safety
/// `order` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gqod_order_free(order: *mut GqodOrder) {
    if !order.is_null() {
        drop(Box::from_raw(order));
    }
}

/// Parses a term over `order`.
///
/// # Safety
/// `order` must be a live handle, `text` a NUL-terminated string and `out`
/// a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gqod_term_parse(
    order: *const GqodOrder,
    text: *const c_char,
    out: *mut *mut GqodTerm,
) -> GqodStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let order = ref_arg(order, "order")?;
        let text = str_arg(text, "text")?;
        match parse(&order.order, text) {
            Ok(term) => {
                *out = Box::into_raw(Box::new(GqodTerm {
                    order: Arc::clone(&order.order),
                    term,
                }));
                Ok(())
            }
            Err(e) => fail(GqodStatus::Parse, e),
        }
    })
}

/// The canonical text of a term, to be released with [`gqod_string_free`].
/// Returns null if `term` is null.
///
/// # Safety
/// `term` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gqod_term_print(term: *const GqodTerm) -> *mut c_char {
    match term.as_ref() {
        Some(t) => into_c_string(t.term.display(&t.order).to_string()),
        None => ptr::null_mut(),
    }
}

/// Releases a term. Null is ignored.
///
/// # Safety
/// `term` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gqod_term_free(term: *mut GqodTerm) {
    if !term.is_null() {
        drop(Box::from_raw(term));
    }
}

/// Decides `a ≤ b` at the index named `index`; a null index means the
/// level above every index.
///
/// # Safety
/// `a` and `b` must be live handles, `index` null or a NUL-terminated
/// string, and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gqod_leq(
    a: *const GqodTerm,
    b: *const GqodTerm,
    index: *const c_char,
    out: *mut bool,
) -> GqodStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let (a, b) = (ref_arg(a, "a")?, ref_arg(b, "b")?);
        same_order(a, b)?;
        let level = if index.is_null() {
            Level::Infinity
        } else {
            let name = str_arg(index, "index")?;
            match a.order.lookup_index(name) {
                Some(i) => Level::At(i),
                None => return fail(GqodStatus::Order, format!("unknown index {name:?}")),
            }
        };
        *out = Comparator::new(&a.order).leq(level, &a.term, &b.term);
        Ok(())
    })
}

/// Decides whether `a` is strictly below `b` in the combined order `⋘`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gqod_lll(a: *const GqodTerm, b: *const GqodTerm, out: *mut bool) -> GqodStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let (a, b) = (ref_arg(a, "a")?, ref_arg(b, "b")?);
        same_order(a, b)?;
        *out = Comparator::new(&a.order).lll(&a.term, &b.term);
        Ok(())
    })
}

/// Decides whether `src` gap-embeds into `tgt`. Connected terms are
/// embedded as trees, anything else as forests.
///
/// # Safety
/// `src` and `tgt` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gqod_embeds(src: *const GqodTerm, tgt: *const GqodTerm, out: *mut bool) -> GqodStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let (s, t) = (ref_arg(src, "src")?, ref_arg(tgt, "tgt")?);
        same_order(s, t)?;
        let found = if s.term.is_connected() && t.term.is_connected() {
            tree_embed(&s.order, &s.term, &t.term).map(|w| w.is_some())
        } else {
            forest_embed(&s.order, &s.term, &t.term).map(|w| w.is_some())
        };
        match found {
            Ok(b) => {
                *out = b;
                Ok(())
            }
            Err(e) => fail(GqodStatus::Embed, e),
        }
    })
}

/// Plays a seeded random hydra game from `initial`, writing the outcome and
/// the trace text (release with [`gqod_string_free`]). Hitting a limit is
/// not an error; it is reported through `outcome`. `trace` may be null.
///
/// # Safety
/// `initial` must be a live handle, `outcome` a writable pointer and
/// `trace` null or a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gqod_hydra_play(
    initial: *const GqodTerm,
    seed: u64,
    limit_steps: usize,
    limit_size: usize,
    outcome: *mut GqodOutcome,
    trace: *mut *mut c_char,
) -> GqodStatus {
    guard(|| {
        let outcome = out_arg(outcome, "outcome")?;
        let t = ref_arg(initial, "initial")?;
        let config = GameConfig {
            limit_steps,
            limit_size,
            ..GameConfig::default()
        };
        let mut heracles = RandomStrategy::new(seed);
        let mut hydra = RandomStrategy::new(seed ^ 0x9e37_79b9_7f4a_7c15);
        let tr = match play(&t.order, &t.term, &mut heracles, &mut hydra, config, Some(seed)) {
            Ok(tr) => tr,
            Err(e) => return fail(GqodStatus::Game, e),
        };
        *outcome = tr.outcome.into();
        if let Some(slot) = trace.as_mut() {
            *slot = into_c_string(render_trace(&t.order, &tr));
        }
        Ok(())
    })
}

/// Re-verifies a recorded trace against `order`, writing the number of
/// steps it contains.
///
/// # Safety
/// `order` must be a live handle, `text` a NUL-terminated string and
/// `steps` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gqod_hydra_replay(
    order: *const GqodOrder,
    text: *const c_char,
    steps: *mut usize,
) -> GqodStatus {
    guard(|| {
        let steps = out_arg(steps, "steps")?;
        let order = ref_arg(order, "order")?;
        let text = str_arg(text, "text")?;
        match replay(&order.order, text) {
            Ok(rep) => {
                *steps = rep.trace.steps.len();
                Ok(())
            }
            Err(e) => fail(GqodStatus::Trace, e),
        }
    })
}
