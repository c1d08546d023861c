//! C ABI for `periodic-law`.
//!
//! Every fallible function returns a [`PlStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! fetched with [`pl_last_error_message`]. Strings returned by the library
//! are owned by the caller and must be released with [`pl_string_free`];
//! handles are released with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use periodic_law::chemotopology::{
    agglomerative_cluster, branch_basis, distance_matrix, minimal_neighborhoods, select_cut,
    Dendrogram, FiniteSpace, Linkage, Metric, SetOperator,
};
use periodic_law::element_data::{parse_table, standardize, PropertyTable};
use periodic_law::patterns::pettifor_rank;
use periodic_law::sequences::{
    accumulated_elements, mills_weight, period_cardinality, weise_noble_gas, PeriodIndex,
};
use periodic_law::shell_orders::{aufbau_configuration, enumerate_shells, OrderParameter};
use periodic_law::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input was rejected; see the last error message.
    InvalidInput = 3,
    /// The result does not fit the output type.
    Overflow = 4,
    /// An internal invariant failed.
    Internal = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

/// A property table.
pub struct PlTable(PropertyTable);

/// A clustering tree.
pub struct PlDendrogram(Dendrogram);

/// A finite topological space on dendrogram leaves.
pub struct PlSpace(FiniteSpace);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Invariant(_) => PlStatus::Internal,
            _ => PlStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PlStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("panic in periodic-law".into());
            PlStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(PlStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `p` is null or points to a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(PlStatus::InvalidUtf8, e.to_string()))
}

/// # Safety
/// `p` is null or points to a NUL-terminated string.
unsafe fn optional_text<'a>(p: *const c_char) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p).map(Some)
    }
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure(PlStatus::Internal, e.to_string()))
}

/// # Safety
/// `p` is null or a handle from this library that has not been freed.
unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

fn period(n: u32) -> Result<PeriodIndex, Failure> {
    Ok(PeriodIndex::new(n)?)
}

fn fit(v: u128) -> Result<u64, Failure> {
    u64::try_from(v)
        .map_err(|_| Failure(PlStatus::Overflow, format!("{v} does not fit in 64 bits")))
}

fn comma_list(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect()
}

/// The message of the last failed call on this thread, as a new string the
/// caller frees with [`pl_string_free`]; null if there is none.
#[no_mangle]
pub extern "C" fn pl_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Number of elements in period `n`.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_period_cardinality(n: u32, out: *mut u64) -> PlStatus {
    guard(|| write(out, fit(period_cardinality(period(n)?))?))
}

/// Atomic number closing period `n`.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_accumulated_elements(n: u32, out: *mut u64) -> PlStatus {
    guard(|| write(out, fit(accumulated_elements(period(n)?))?))
}

/// Atomic number closing period `n`, from the closed form.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_weise_noble_gas(n: u32, out: *mut u64) -> PlStatus {
    guard(|| write(out, fit(weise_noble_gas(period(n)?)?)?))
}

/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_mills_weight(n: u32, t: u32, out: *mut f64) -> PlStatus {
    guard(|| write(out, mills_weight(n, t)?))
}

/// First `count` shells under `order` (`madelung`, `hydrogenic` or
/// `ray:K`), space-separated.
///
/// # Safety
/// `order` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_shells(
    order: *const c_char,
    count: usize,
    out: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let order: OrderParameter = text(order)?.parse()?;
        let shells: Vec<String> = enumerate_shells(order, count)
            .iter()
            .map(ToString::to_string)
            .collect();
        write(out, owned_string(shells.join(" "))?)
    })
}

/// Configuration of `z` electrons, e.g. `1s2 2s2 2p6`.
///
/// # Safety
/// `order` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_aufbau(
    z: u32,
    order: *const c_char,
    out: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let order: OrderParameter = text(order)?.parse()?;
        write(
            out,
            owned_string(aufbau_configuration(z, order)?.to_string())?,
        )
    })
}

/// 1-based position of `symbol` on the Pettifor scale.
///
/// # Safety
/// `symbol` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_pettifor_rank(symbol: *const c_char, out: *mut u32) -> PlStatus {
    guard(|| {
        let rank = pettifor_rank(text(symbol)?)?;
        write(out, rank as u32)
    })
}

/// The property table shipped with the library.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_table_bundled(out: *mut *mut PlTable) -> PlStatus {
    guard(|| {
        write(
            out,
            Box::into_raw(Box::new(PlTable(PropertyTable::bundled()))),
        )
    })
}

/// Parses a property table from CSV text.
///
/// # Safety
/// `csv` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_table_from_csv(csv: *const c_char, out: *mut *mut PlTable) -> PlStatus {
    guard(|| {
        let table = parse_table(text(csv)?)?;
        write(out, Box::into_raw(Box::new(PlTable(table))))
    })
}

/// Number of elements in the table; 0 for null.
///
/// # Safety
/// `table` is null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn pl_table_len(table: *const PlTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.elements().len())
}

/// The table as canonical CSV.
///
/// # Safety
/// `table` is a live table handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_table_to_csv(table: *const PlTable, out: *mut *mut c_char) -> PlStatus {
    guard(|| write(out, owned_string(handle(table)?.0.to_csv())?))
}

/// # Safety
/// `table` is null or a table handle, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn pl_table_free(table: *mut PlTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Clusters the table on standardized properties. `properties` is a
/// comma-separated list, or null for every property without missing values;
/// `metric` and `linkage` may be null for the defaults (euclidean, average).
///
/// # Safety
/// `table` is a live table handle; string arguments are null or
/// NUL-terminated; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_cluster(
    table: *const PlTable,
    properties: *const c_char,
    metric: *const c_char,
    linkage: *const c_char,
    out: *mut *mut PlDendrogram,
) -> PlStatus {
    guard(|| {
        let table = &handle(table)?.0;
        let complete = table.complete_properties();
        let names: Vec<&str> = match optional_text(properties)? {
            Some(list) => comma_list(list),
            None => complete.iter().map(String::as_str).collect(),
        };
        let metric: Metric = optional_text(metric)?
            .map(str::parse)
            .transpose()?
            .unwrap_or_default();
        let linkage: Linkage = optional_text(linkage)?
            .map(str::parse)
            .transpose()?
            .unwrap_or_default();
        let data = standardize(table, &names)?;
        let distances = distance_matrix(&data, metric)?;
        let tree = agglomerative_cluster(&distances.matrix, linkage)?;
        write(out, Box::into_raw(Box::new(PlDendrogram(tree))))
    })
}

/// Reads a tree written by [`pl_dendrogram_to_newick`].
///
/// # Safety
/// `newick` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_dendrogram_from_newick(
    newick: *const c_char,
    out: *mut *mut PlDendrogram,
) -> PlStatus {
    guard(|| {
        let tree = Dendrogram::from_newick(text(newick)?)?;
        write(out, Box::into_raw(Box::new(PlDendrogram(tree))))
    })
}

/// Number of leaves; 0 for null.
///
/// # Safety
/// `tree` is null or a live dendrogram handle.
#[no_mangle]
pub unsafe extern "C" fn pl_dendrogram_leaf_count(tree: *const PlDendrogram) -> usize {
    tree.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// `tree` is a live dendrogram handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_dendrogram_to_newick(
    tree: *const PlDendrogram,
    out: *mut *mut c_char,
) -> PlStatus {
    guard(|| write(out, owned_string(handle(tree)?.0.to_newick())?))
}

/// Height at which leaves `a` and `b` first share a cluster.
///
/// # Safety
/// `tree` is a live dendrogram handle; `a` and `b` are NUL-terminated;
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_dendrogram_cophenetic(
    tree: *const PlDendrogram,
    a: *const c_char,
    b: *const c_char,
    out: *mut f64,
) -> PlStatus {
    guard(|| write(out, handle(tree)?.0.cophenetic(text(a)?, text(b)?)?))
}

/// The cut maximizing the product of cluster populations, as JSON; the
/// cluster count is also written to `clusters` when it is not null.
///
/// # Safety
/// `tree` is a live dendrogram handle; `clusters` is null or valid for
/// writes; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_dendrogram_select_cut(
    tree: *const PlDendrogram,
    clusters: *mut usize,
    out: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let cut = select_cut(&handle(tree)?.0)?;
        let json =
            serde_json::to_string(&cut).map_err(|e| Failure(PlStatus::Internal, e.to_string()))?;
        if !clusters.is_null() {
            clusters.write(cut.clusters);
        }
        write(out, owned_string(json)?)
    })
}

/// # Safety
/// `tree` is null or a dendrogram handle, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn pl_dendrogram_free(tree: *mut PlDendrogram) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// The space generated by the leaf sets of the tree's internal nodes, plus
/// the singletons when `include_singletons` is set.
///
/// # Safety
/// `tree` is a live dendrogram handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_space_from_dendrogram(
    tree: *const PlDendrogram,
    include_singletons: bool,
    out: *mut *mut PlSpace,
) -> PlStatus {
    guard(|| {
        let space = minimal_neighborhoods(&branch_basis(&handle(tree)?.0, include_singletons));
        write(out, Box::into_raw(Box::new(PlSpace(space))))
    })
}

/// Applies `op` (`closure`, `interior`, `boundary` or `derived`) to the
/// comma-separated point list `members`; the result is comma-separated in
/// point order.
///
/// # Safety
/// `space` is a live space handle; `op` and `members` are NUL-terminated;
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pl_space_apply(
    space: *const PlSpace,
    op: *const c_char,
    members: *const c_char,
    out: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let space = &handle(space)?.0;
        let op: SetOperator = text(op)?.parse()?;
        let set = space.subset(&comma_list(text(members)?))?;
        let result = space.names(&space.apply(op, &set)?);
        write(out, owned_string(result.join(","))?)
    })
}

/// # Safety
/// `space` is null or a space handle, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn pl_space_free(space: *mut PlSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}
