//! C interface to the planner.
//!
//! Tasks and plans are opaque handles owned by the caller and released with
//! their `_free` function. Every fallible function returns an
//! [`LnpStatus`]; on failure a message is available from
//! [`lnp_last_error`] on the same thread until the next call into the
//! library. Strings returned as `char *` are released with
//! [`lnp_string_free`]; `const char *` results are borrowed from their
//! handle.
//!
//! Panics never cross the boundary; they are reported as
//! `LNP_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::time::Duration;

use lnp::model::{apply, check_applicable, State, Task};
use lnp::pddl::{load_task, parse_domain, parse_problem, LoadError};
use lnp::search::{format_plan, parse_plan, solve, validate, Limits, Outcome};
use lnp::successor::{Generator, GeneratorConfig, Strategy};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LnpStatus {
    Ok = 0,
    InvalidArgument = 1,
    IoError = 2,
    ParseError = 3,
    Unsolvable = 4,
    LimitReached = 5,
    GroundingCap = 6,
    InvalidPlan = 7,
    Panic = 8,
}

/// Values for [`LnpOptions::strategy`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LnpStrategy {
    Numeric = 0,
    Propositional = 1,
    Exhaustive = 2,
    Grounded = 3,
}

/// Generator and search settings. Zero means the default or no limit.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LnpOptions {
    /// One of the `LnpStrategy` values.
    pub strategy: i32,
    pub degree: u32,
    pub ground_cap: u64,
    pub time_limit_seconds: f64,
    pub node_cap: u64,
    pub memory_limit_bytes: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LnpSearchStats {
    pub expansions: u64,
    pub generated: u64,
    /// Candidates before the final applicability filter, summed over
    /// expansions.
    pub candidates: u64,
    pub applicable: u64,
    pub wall_time_seconds: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LnpCandidateCounts {
    pub candidates: u64,
    pub applicable: u64,
}

/// A parsed planning task.
pub struct LnpTask {
    task: Task,
}

/// A plan found by [`lnp_solve`].
pub struct LnpPlan {
    actions: Vec<CString>,
    text: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(LnpStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn fail<T>(status: LnpStatus, msg: impl Into<String>) -> FfiResult<T> {
    Err(Failure(status, msg.into()))
}

/// Runs `f`, recording its error message and turning panics into a status.
fn guard(f: impl FnOnce() -> FfiResult<LnpStatus>) -> LnpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("internal error: {msg}"));
            LnpStatus::Panic
        }
    }
}

unsafe fn arg_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return fail(LnpStatus::InvalidArgument, format!("{what} is null"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(LnpStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn arg_ref<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| Failure(LnpStatus::InvalidArgument, format!("{what} is null")))
}

fn to_cstring(s: String) -> CString {
    CString::new(s).expect("planner output has no nul bytes")
}

fn options(o: Option<&LnpOptions>) -> FfiResult<(GeneratorConfig, Limits)> {
    let o = o.copied().unwrap_or_else(|| lnp_options_default());
    let strategy = match o.strategy {
        0 => Strategy::Numeric,
        1 => Strategy::Propositional,
        2 => Strategy::Exhaustive,
        3 => Strategy::Grounded,
        s => return fail(LnpStatus::InvalidArgument, format!("unknown strategy {s}")),
    };
    let mut cfg = GeneratorConfig::with_strategy(strategy);
    if o.degree > 0 {
        cfg.degree = o.degree as usize;
    }
    if o.ground_cap > 0 {
        cfg.ground_cap = o.ground_cap as usize;
    }
    if o.time_limit_seconds.is_nan() || o.time_limit_seconds < 0.0 {
        return fail(LnpStatus::InvalidArgument, "time limit must be non-negative");
    }
    let limits = Limits {
        time: (o.time_limit_seconds > 0.0).then(|| Duration::from_secs_f64(o.time_limit_seconds.min(1e9))),
        memory: (o.memory_limit_bytes > 0).then_some(o.memory_limit_bytes as usize),
        nodes: (o.node_cap > 0).then_some(o.node_cap as usize),
    };
    Ok((cfg, limits))
}

fn generator(task: &Task, cfg: GeneratorConfig) -> FfiResult<Generator<'_>> {
    Generator::new(task, cfg).map_err(|e| Failure(LnpStatus::GroundingCap, e.to_string()))
}

unsafe fn store_task(out: *mut *mut LnpTask, task: Task) {
    *out = Box::into_raw(Box::new(LnpTask { task }));
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lnp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn lnp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lnp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn lnp_options_default() -> LnpOptions {
    LnpOptions {
        strategy: LnpStrategy::Numeric as i32,
        degree: 0,
        ground_cap: 0,
        time_limit_seconds: 0.0,
        node_cap: 0,
        memory_limit_bytes: 0,
    }
}

/// Reads a domain and a problem file.
///
/// # Safety
/// Paths must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lnp_task_load(
    domain_path: *const c_char,
    problem_path: *const c_char,
    out: *mut *mut LnpTask,
) -> LnpStatus {
    guard(|| {
        let d = arg_str(domain_path, "domain_path")?;
        let p = arg_str(problem_path, "problem_path")?;
        if out.is_null() {
            return fail(LnpStatus::InvalidArgument, "out is null");
        }
        match load_task(Path::new(d), Path::new(p)) {
            Ok(task) => {
                store_task(out, task);
                Ok(LnpStatus::Ok)
            }
            Err(e @ LoadError::Io { .. }) => fail(LnpStatus::IoError, e.to_string()),
            Err(e) => fail(LnpStatus::ParseError, e.to_string()),
        }
    })
}

/// Parses domain and problem text.
///
/// # Safety
/// Texts must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lnp_task_parse(
    domain_text: *const c_char,
    problem_text: *const c_char,
    out: *mut *mut LnpTask,
) -> LnpStatus {
    guard(|| {
        let d = arg_str(domain_text, "domain_text")?;
        let p = arg_str(problem_text, "problem_text")?;
        if out.is_null() {
            return fail(LnpStatus::InvalidArgument, "out is null");
        }
        let domain = parse_domain(d).map_err(|e| Failure(LnpStatus::ParseError, e.to_string()))?;
        let task = parse_problem(p, domain).map_err(|e| Failure(LnpStatus::ParseError, e.to_string()))?;
        store_task(out, task);
        Ok(LnpStatus::Ok)
    })
}

/// # Safety
/// `task` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lnp_task_free(task: *mut LnpTask) {
    if !task.is_null() {
        drop(Box::from_raw(task));
    }
}

/// # Safety
/// `task` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lnp_task_num_objects(task: *const LnpTask) -> usize {
    task.as_ref().map_or(0, |t| t.task.objects.len())
}

/// # Safety
/// `task` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lnp_task_num_schemas(task: *const LnpTask) -> usize {
    task.as_ref().map_or(0, |t| t.task.domain.schemas.len())
}

/// Searches for a shortest plan. On `LNP_STATUS_OK` `*out_plan` receives a
/// plan; otherwise it is set to null. `opts` and `out_stats` may be null.
///
/// # Safety
/// `task` must be a live handle, `out_plan` writable, `out_stats` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn lnp_solve(
    task: *const LnpTask,
    opts: *const LnpOptions,
    out_plan: *mut *mut LnpPlan,
    out_stats: *mut LnpSearchStats,
) -> LnpStatus {
    guard(|| {
        let t = &arg_ref(task, "task")?.task;
        if out_plan.is_null() {
            return fail(LnpStatus::InvalidArgument, "out_plan is null");
        }
        *out_plan = ptr::null_mut();
        let (cfg, limits) = options(opts.as_ref())?;
        let g = generator(t, cfg)?;
        let result = solve(t, &g, limits);
        if let Some(s) = out_stats.as_mut() {
            let totals = result.stats.totals();
            *s = LnpSearchStats {
                expansions: result.stats.expansions as u64,
                generated: result.stats.generated as u64,
                candidates: totals.candidates,
                applicable: totals.applicable,
                wall_time_seconds: result.stats.wall_time.as_secs_f64(),
            };
        }
        match result.outcome {
            Outcome::Plan(plan) => {
                let actions = plan.iter().map(|a| to_cstring(t.format_action(a))).collect();
                let text = to_cstring(format_plan(t, &plan));
                *out_plan = Box::into_raw(Box::new(LnpPlan { actions, text }));
                Ok(LnpStatus::Ok)
            }
            Outcome::Unsolvable => fail(LnpStatus::Unsolvable, "no plan exists"),
            Outcome::LimitReached(l) => fail(LnpStatus::LimitReached, format!("limit reached: {l}")),
        }
    })
}

/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lnp_plan_len(plan: *const LnpPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.actions.len())
}

/// Action `i` as `(name arg ...)`, or null if out of range. Borrowed from
/// the plan.
///
/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lnp_plan_action(plan: *const LnpPlan, i: usize) -> *const c_char {
    plan.as_ref().and_then(|p| p.actions.get(i)).map_or(ptr::null(), |c| c.as_ptr())
}

/// The whole plan in the text format accepted by [`lnp_validate`].
/// Borrowed from the plan.
///
/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lnp_plan_text(plan: *const LnpPlan) -> *const c_char {
    plan.as_ref().map_or(ptr::null(), |p| p.text.as_ptr())
}

/// # Safety
/// `plan` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lnp_plan_free(plan: *mut LnpPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

unsafe fn state_after(t: &Task, prefix: *const c_char) -> FfiResult<State> {
    let mut state = t.init.clone();
    if prefix.is_null() {
        return Ok(state);
    }
    let text = arg_str(prefix, "plan_prefix")?;
    let plan = parse_plan(t, text).map_err(|e| Failure(LnpStatus::ParseError, e.to_string()))?;
    for (i, a) in plan.iter().enumerate() {
        let schema = t.schema(a);
        check_applicable(&state, schema, &a.args)
            .map_err(|e| Failure(LnpStatus::InvalidPlan, format!("step {i}: {e}")))?;
        state = apply(&state, schema, &a.args);
    }
    Ok(state)
}

/// Applicable actions in the state reached by `plan_prefix` (the initial
/// state if null), one `(name arg ...)` per line. `*out_text` must be
/// released with [`lnp_string_free`]; `out_counts` may be null.
///
/// # Safety
/// `task` must be a live handle, `plan_prefix` null or a nul-terminated
/// string, `out_text` writable, `out_counts` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lnp_applicable(
    task: *const LnpTask,
    opts: *const LnpOptions,
    plan_prefix: *const c_char,
    out_text: *mut *mut c_char,
    out_counts: *mut LnpCandidateCounts,
) -> LnpStatus {
    guard(|| {
        let t = &arg_ref(task, "task")?.task;
        if out_text.is_null() {
            return fail(LnpStatus::InvalidArgument, "out_text is null");
        }
        let (cfg, _) = options(opts.as_ref())?;
        let state = state_after(t, plan_prefix)?;
        let g = generator(t, cfg)?;
        let (actions, report) = g.applicable(&state);
        let mut text = String::new();
        for a in &actions {
            text.push_str(&t.format_action(a));
            text.push('\n');
        }
        if let Some(c) = out_counts.as_mut() {
            *c = LnpCandidateCounts { candidates: report.candidates, applicable: report.applicable };
        }
        *out_text = to_cstring(text).into_raw();
        Ok(LnpStatus::Ok)
    })
}

/// Replays a plan. On success `*out_cost` (if not null) receives its unit
/// cost; an inapplicable step or an unreached goal gives
/// `LNP_STATUS_INVALID_PLAN`.
///
/// # Safety
/// `task` must be a live handle, `plan_text` a nul-terminated string,
/// `out_cost` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lnp_validate(
    task: *const LnpTask,
    plan_text: *const c_char,
    out_cost: *mut usize,
) -> LnpStatus {
    guard(|| {
        let t = &arg_ref(task, "task")?.task;
        let text = arg_str(plan_text, "plan_text")?;
        let plan = parse_plan(t, text).map_err(|e| Failure(LnpStatus::ParseError, e.to_string()))?;
        let cost = validate(t, &plan).map_err(|e| Failure(LnpStatus::InvalidPlan, e.to_string()))?;
        if let Some(c) = out_cost.as_mut() {
            *c = cost;
        }
        Ok(LnpStatus::Ok)
    })
}
