//! C ABI over `magcube`.
//!
//! Every fallible function returns a [`MagcubeStatus`]. On failure the
//! message is kept per thread and read with [`magcube_last_error`].
//! Strings handed out by this library must be released with
//! [`magcube_string_free`]; catalogs with [`magcube_catalog_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use magcube::enumeration::{
    count_colored, count_fixed, enumerate_colored, shapes_to_json, EnumOptions, Supply,
};
use magcube::magnet::field_vector;
use magcube::montecarlo::{export_stats, run_trials, TrialConfig};
use magcube::planner::{bfs_reachable, Model, PlanOptions, Workspace};
use magcube::{Budget, Catalog, Dim, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MagcubeStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    Integrity = 4,
    Infeasible = 5,
    Io = 6,
    Panic = 7,
}

/// Opaque cube catalog.
pub struct MagcubeCatalog {
    inner: Catalog,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagcubeFieldVector {
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> MagcubeStatus {
    match e {
        Error::BudgetExceeded(_) => MagcubeStatus::BudgetExceeded,
        Error::Integrity(_) => MagcubeStatus::Integrity,
        Error::Infeasible(_) => MagcubeStatus::Infeasible,
        Error::Io(_) => MagcubeStatus::Io,
        _ => MagcubeStatus::InvalidInput,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> MagcubeStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MagcubeStatus::Ok,
        Ok(Err(Fail::Null(name))) => {
            set_error(format!("{name} is null"));
            MagcubeStatus::NullArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            MagcubeStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::InvalidInput(format!("{name} is not UTF-8"))))
}

unsafe fn catalog_ref<'a>(p: *const MagcubeCatalog) -> Result<&'a Catalog, Fail> {
    p.as_ref().map(|c| &c.inner).ok_or(Fail::Null("catalog"))
}

unsafe fn write<T>(out: *mut T, value: T, name: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> Result<(), Fail> {
    let s = CString::new(value).map_err(|_| Error::Integrity("output contains a nul byte".into()))?;
    write(out, s.into_raw(), "out")
}

fn dim_of(dim: u32) -> Result<Dim, Fail> {
    u8::try_from(dim)
        .ok()
        .and_then(Dim::from_number)
        .ok_or_else(|| Fail::Lib(Error::InvalidInput(format!("dimension {dim} is not 2 or 3"))))
}

/// `max_nodes == 0` means no node limit.
fn options(workers: u32, max_nodes: u64) -> EnumOptions {
    let budget = if max_nodes == 0 { Budget::unlimited() } else { Budget::nodes(max_nodes) };
    EnumOptions::default().with_workers(workers.max(1) as usize).with_budget(budget)
}

fn narrow(count: u128) -> Result<u64, Fail> {
    u64::try_from(count).map_err(|_| Fail::Lib(Error::InvalidInput(format!("count {count} exceeds 64 bits"))))
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn magcube_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn magcube_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn magcube_catalog_default() -> *mut MagcubeCatalog {
    Box::into_raw(Box::new(MagcubeCatalog { inner: Catalog::default_catalog() }))
}

/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn magcube_catalog_from_json(
    json: *const c_char,
    out: *mut *mut MagcubeCatalog,
) -> MagcubeStatus {
    guard(|| {
        let inner = Catalog::from_json(text(json, "json")?)?;
        write(out, Box::into_raw(Box::new(MagcubeCatalog { inner })), "out")
    })
}

/// # Safety
/// `catalog` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn magcube_catalog_free(catalog: *mut MagcubeCatalog) {
    if !catalog.is_null() {
        drop(Box::from_raw(catalog));
    }
}

/// Number of cube types in the catalog, or 0 for null.
///
/// # Safety
/// `catalog` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn magcube_catalog_len(catalog: *const MagcubeCatalog) -> usize {
    catalog.as_ref().map_or(0, |c| c.inner.len())
}

/// Fixed polyominoes (`dim` 2) or polycubes (`dim` 3) of size `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn magcube_count_fixed(
    dim: u32,
    n: u32,
    workers: u32,
    max_nodes: u64,
    out: *mut u64,
) -> MagcubeStatus {
    guard(|| {
        let counts = count_fixed(dim_of(dim)?, n as usize, &options(workers, max_nodes))?;
        let last = counts.last().copied().unwrap_or(0);
        write(out, narrow(last)?, "out")
    })
}

/// Valid colored shapes of `n` cubes from `supply` (`"cyan=1,magenta=3"`).
///
/// # Safety
/// Pointers must be valid; `supply` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn magcube_count_colored(
    catalog: *const MagcubeCatalog,
    supply: *const c_char,
    n: u32,
    dim: u32,
    workers: u32,
    max_nodes: u64,
    out: *mut u64,
) -> MagcubeStatus {
    guard(|| {
        let catalog = catalog_ref(catalog)?;
        let supply = Supply::parse(text(supply, "supply")?)?;
        let count = count_colored(&supply, catalog, n as usize, dim_of(dim)?, &options(workers, max_nodes))?;
        write(out, narrow(count)?, "out")
    })
}

/// Shapes as the JSON list written by `magcube enumerate --format json`.
/// `dim == 0` picks 3 when any supplied type is non-planar, else 2.
///
/// # Safety
/// Pointers must be valid; `*out_json` is released with [`magcube_string_free`].
#[no_mangle]
pub unsafe extern "C" fn magcube_enumerate_json(
    catalog: *const MagcubeCatalog,
    supply: *const c_char,
    n: u32,
    dim: u32,
    workers: u32,
    max_nodes: u64,
    out_json: *mut *mut c_char,
) -> MagcubeStatus {
    guard(|| {
        let catalog = catalog_ref(catalog)?;
        let supply = Supply::parse(text(supply, "supply")?)?;
        let dim = if dim == 0 { supply.natural_dim(catalog)? } else { dim_of(dim)? };
        let shapes = enumerate_colored(&supply, catalog, n as usize, dim, &options(workers, max_nodes))?;
        write_string(out_json, shapes_to_json(&shapes))
    })
}

/// Reachable shapes and their shortest move sequences from a start given as
/// a JSON list of `{"x","y","color"}`.
///
/// # Safety
/// Pointers must be valid; `*out_json` is released with [`magcube_string_free`].
#[no_mangle]
pub unsafe extern "C" fn magcube_plan_json(
    catalog: *const MagcubeCatalog,
    width: u32,
    height: u32,
    start_json: *const c_char,
    max_nodes: u64,
    out_json: *mut *mut c_char,
) -> MagcubeStatus {
    guard(|| {
        let catalog = catalog_ref(catalog)?;
        let model = Model::new(catalog, Workspace::new(width, height)?);
        let initial = model.configuration_from_json(text(start_json, "start_json")?)?;
        let budget = if max_nodes == 0 { Budget::unlimited() } else { Budget::nodes(max_nodes) };
        let plan = bfs_reachable(&model, &initial, &PlanOptions { budget, ..Default::default() })?;
        write_string(out_json, plan.to_json())
    })
}

/// Monte Carlo reachability statistics in the `json` export format.
///
/// # Safety
/// Pointers must be valid; `*out_json` is released with [`magcube_string_free`].
#[no_mangle]
pub unsafe extern "C" fn magcube_monte_carlo_json(
    catalog: *const MagcubeCatalog,
    supply: *const c_char,
    width: u32,
    height: u32,
    trials: u32,
    restarts: u32,
    seed: u64,
    workers: u32,
    out_json: *mut *mut c_char,
) -> MagcubeStatus {
    guard(|| {
        let catalog = catalog_ref(catalog)?;
        let supply = Supply::parse(text(supply, "supply")?)?;
        let mut cfg = TrialConfig::new(supply, Workspace::new(width, height)?, trials, restarts, seed);
        cfg.workers = workers.max(1) as usize;
        let stats = run_trials(&cfg, catalog)?;
        write_string(out_json, export_stats(&stats, "json")?)
    })
}

/// Field of amplitude `amplitude` at elevation `alpha` and azimuth `theta`
/// (radians).
#[no_mangle]
pub extern "C" fn magcube_field_vector(amplitude: f64, alpha: f64, theta: f64) -> MagcubeFieldVector {
    let b = field_vector(amplitude, alpha, theta);
    MagcubeFieldVector { bx: b.bx, by: b.by, bz: b.bz }
}
