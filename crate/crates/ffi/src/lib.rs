//! C ABI over the `biserial` library.
//!
//! Algebras and modules are opaque heap handles released with their `_free` function. Every
//! fallible call returns a [`BiserialStatus`]; on failure [`biserial_last_error`] describes the
//! cause. Strings returned through `char **` are owned by the caller and released with
//! [`biserial_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use biserial::homology::{certified_iso, default_trials, projdim, syzygy, IsoOutcome, PdOptions, Verdict};
use biserial::linalg::Field;
use biserial::paperlab::{verify, FamilyConfig, Status};
use biserial::presentation::{emit_presentation, family_from_spec, parse_presentation, Presentation};
use biserial::repcore::{parse_modules, Algebra, Representation};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiserialStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    /// Module and algebra handles over different presentations or fields.
    Mismatch = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiserialPdKind {
    /// The zero module.
    MinusInfinity = 0,
    Finite = 1,
    Infinite = 2,
    Inconclusive = 3,
}

/// A projective dimension verdict. `n` is set for `Finite`, `from` and `to` for `Infinite`,
/// `n` holds the cutoff for `Inconclusive`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BiserialPd {
    pub kind: BiserialPdKind,
    pub n: usize,
    pub from: usize,
    pub to: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiserialIso {
    Isomorphic = 0,
    NotIsomorphic = 1,
    /// No isomorphism found within the trial budget.
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiserialClaimStatus {
    Pass = 0,
    Fail = 1,
    Inconclusive = 2,
}

/// Parameters for [`biserial_verify`]; mirrors the CLI flags of the same names.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BiserialVerifyConfig {
    pub r: usize,
    pub m_max: usize,
    pub t_max: usize,
    pub seed: u64,
    pub cutoff: usize,
    pub samples: usize,
    pub max_dim: usize,
}

/// Opaque algebra handle.
pub struct BiserialAlgebra {
    algebra: Algebra,
}

/// Opaque module handle.
pub struct BiserialModule {
    module: Representation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(BiserialStatus, String);

type Res<T> = Result<T, Failure>;

fn fail(status: BiserialStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Res<()>) -> BiserialStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BiserialStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BiserialStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(fail(BiserialStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(BiserialStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| fail(BiserialStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Res<&'a mut T> {
    p.as_mut().ok_or_else(|| fail(BiserialStatus::NullPointer, format!("{what} is null")))
}

fn field_arg(s: &str) -> Res<Field> {
    s.parse().map_err(|e| fail(BiserialStatus::InvalidArgument, format!("field '{s}': {e}")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn new_algebra(p: &Presentation, field: Field) -> Res<*mut BiserialAlgebra> {
    let algebra = Algebra::new(p, field).map_err(|e| fail(BiserialStatus::InvalidArgument, e.to_string()))?;
    Ok(Box::into_raw(Box::new(BiserialAlgebra { algebra })))
}

fn same_algebra(alg: &Algebra, m: &Representation) -> Res<()> {
    if **alg.presentation() != **m.presentation() || alg.field() != m.field() {
        return Err(fail(BiserialStatus::Mismatch, "module is not over this algebra"));
    }
    Ok(())
}

/// Message for the last failed call on this thread; empty after a successful call. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn biserial_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn biserial_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a family member from `lambda:r=<r>,m=<m>` or `lambda1prime:r=<r>` over `field`
/// (`q` or `fp:<p>`).
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn biserial_algebra_from_spec(
    spec: *const c_char,
    field: *const c_char,
    out: *mut *mut BiserialAlgebra,
) -> BiserialStatus {
    guard(|| {
        let spec = str_arg(spec, "spec")?;
        let field = field_arg(str_arg(field, "field")?)?;
        let out = out_arg(out, "out")?;
        let p = family_from_spec(spec).map_err(|e| fail(BiserialStatus::InvalidArgument, e.to_string()))?;
        *out = new_algebra(&p, field)?;
        Ok(())
    })
}

/// Parses a presentation in the `.alg` text format.
///
/// # Safety
/// As for [`biserial_algebra_from_spec`].
#[no_mangle]
pub unsafe extern "C" fn biserial_algebra_parse(
    text: *const c_char,
    field: *const c_char,
    out: *mut *mut BiserialAlgebra,
) -> BiserialStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let field = field_arg(str_arg(field, "field")?)?;
        let out = out_arg(out, "out")?;
        let p = parse_presentation(text).map_err(|e| fail(BiserialStatus::Parse, e.to_string()))?;
        *out = new_algebra(&p, field)?;
        Ok(())
    })
}

/// # Safety
/// `alg` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn biserial_algebra_free(alg: *mut BiserialAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn biserial_algebra_vertex_count(alg: *const BiserialAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.algebra.presentation().vertex_count())
}

/// Dimension of the algebra; 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn biserial_algebra_dim(alg: *const BiserialAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.algebra.dim())
}

/// The presentation in the `.alg` text format.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn biserial_algebra_emit(alg: *const BiserialAlgebra, out: *mut *mut c_char) -> BiserialStatus {
    guard(|| {
        let alg = ref_arg(alg, "alg")?;
        let out = out_arg(out, "out")?;
        *out = to_c_string(emit_presentation(alg.algebra.presentation()));
        Ok(())
    })
}

/// Parses module-file text over `alg`; the algebra names in the text are ignored. With a null
/// `name` the text must define exactly one module.
///
/// # Safety
/// `alg` must be a live handle; strings null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn biserial_module_parse(
    alg: *const BiserialAlgebra,
    text: *const c_char,
    name: *const c_char,
    out: *mut *mut BiserialModule,
) -> BiserialStatus {
    guard(|| {
        let alg = ref_arg(alg, "alg")?;
        let text = str_arg(text, "text")?;
        let name = if name.is_null() { None } else { Some(str_arg(name, "name")?) };
        let out = out_arg(out, "out")?;
        let p: Presentation = (**alg.algebra.presentation()).clone();
        let mut resolve = |_: &str| -> Result<Presentation, String> { Ok(p.clone()) };
        let defs = parse_modules(text, alg.algebra.field(), &mut resolve)
            .map_err(|e| fail(BiserialStatus::Parse, e.to_string()))?;
        let def = match name {
            Some(n) => defs
                .into_iter()
                .find(|d| d.name == n)
                .ok_or_else(|| fail(BiserialStatus::InvalidArgument, format!("no module named '{n}'")))?,
            None if defs.len() == 1 => defs.into_iter().next().unwrap(),
            None => return Err(fail(BiserialStatus::InvalidArgument, format!("{} modules defined", defs.len()))),
        };
        *out = Box::into_raw(Box::new(BiserialModule { module: def.module }));
        Ok(())
    })
}

/// The indecomposable projective at `vertex`.
///
/// # Safety
/// As for [`biserial_module_parse`].
#[no_mangle]
pub unsafe extern "C" fn biserial_module_projective(
    alg: *const BiserialAlgebra,
    vertex: *const c_char,
    out: *mut *mut BiserialModule,
) -> BiserialStatus {
    guard(|| {
        let alg = ref_arg(alg, "alg")?;
        let vertex = str_arg(vertex, "vertex")?;
        let out = out_arg(out, "out")?;
        let module = alg
            .algebra
            .projective_named(vertex)
            .map_err(|e| fail(BiserialStatus::InvalidArgument, e.to_string()))?
            .clone();
        *out = Box::into_raw(Box::new(BiserialModule { module }));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn biserial_module_free(m: *mut BiserialModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Total dimension; 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn biserial_module_total_dim(m: *const BiserialModule) -> usize {
    m.as_ref().map_or(0, |m| m.module.total_dim())
}

/// Dimension at the named vertex.
///
/// # Safety
/// `m` must be a live handle; `vertex` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn biserial_module_dim_at(
    m: *const BiserialModule,
    vertex: *const c_char,
    out: *mut usize,
) -> BiserialStatus {
    guard(|| {
        let m = ref_arg(m, "module")?;
        let vertex = str_arg(vertex, "vertex")?;
        let out = out_arg(out, "out")?;
        let x = m
            .module
            .presentation()
            .vertex(vertex)
            .ok_or_else(|| fail(BiserialStatus::InvalidArgument, format!("unknown vertex '{vertex}'")))?;
        *out = m.module.dim_at(x);
        Ok(())
    })
}

/// The first syzygy of `m` over `alg`.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn biserial_module_syzygy(
    alg: *const BiserialAlgebra,
    m: *const BiserialModule,
    out: *mut *mut BiserialModule,
) -> BiserialStatus {
    guard(|| {
        let alg = ref_arg(alg, "alg")?;
        let m = ref_arg(m, "module")?;
        let out = out_arg(out, "out")?;
        same_algebra(&alg.algebra, &m.module)?;
        let module = syzygy(&alg.algebra, &m.module);
        *out = Box::into_raw(Box::new(BiserialModule { module }));
        Ok(())
    })
}

/// Projective dimension of `m`, examining syzygies up to `cutoff`.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn biserial_module_pd(
    alg: *const BiserialAlgebra,
    m: *const BiserialModule,
    cutoff: usize,
    seed: u64,
    out: *mut BiserialPd,
) -> BiserialStatus {
    guard(|| {
        let alg = ref_arg(alg, "alg")?;
        let m = ref_arg(m, "module")?;
        let out = out_arg(out, "out")?;
        same_algebra(&alg.algebra, &m.module)?;
        let opts = PdOptions { seed, ..PdOptions::new(&alg.algebra, cutoff) };
        let zero = BiserialPd { kind: BiserialPdKind::MinusInfinity, n: 0, from: 0, to: 0 };
        *out = match projdim(&alg.algebra, &m.module, &opts).verdict {
            Verdict::MinusInfinity => zero,
            Verdict::Finite { n } => BiserialPd { kind: BiserialPdKind::Finite, n, ..zero },
            Verdict::Infinite { from, to } => BiserialPd { kind: BiserialPdKind::Infinite, from, to, ..zero },
            Verdict::Inconclusive { cutoff } => BiserialPd { kind: BiserialPdKind::Inconclusive, n: cutoff, ..zero },
        };
        Ok(())
    })
}

/// Searches for a certified isomorphism `a → b`.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn biserial_module_iso(
    a: *const BiserialModule,
    b: *const BiserialModule,
    seed: u64,
    out: *mut BiserialIso,
) -> BiserialStatus {
    guard(|| {
        let a = ref_arg(a, "a")?;
        let b = ref_arg(b, "b")?;
        let out = out_arg(out, "out")?;
        if **a.module.presentation() != **b.module.presentation() || a.module.field() != b.module.field() {
            return Err(fail(BiserialStatus::Mismatch, "modules are over different algebras"));
        }
        *out = match certified_iso(&a.module, &b.module, default_trials(a.module.field()), seed) {
            IsoOutcome::Iso { .. } => BiserialIso::Isomorphic,
            IsoOutcome::NotIsomorphic(_) => BiserialIso::NotIsomorphic,
            IsoOutcome::NotFound { .. } => BiserialIso::Unknown,
        };
        Ok(())
    })
}

/// Defaults matching the CLI.
#[no_mangle]
pub extern "C" fn biserial_verify_config_default() -> BiserialVerifyConfig {
    let d = FamilyConfig::default();
    BiserialVerifyConfig {
        r: d.r,
        m_max: d.m_max,
        t_max: d.t_max,
        seed: d.seed,
        cutoff: d.cutoff,
        samples: d.samples,
        max_dim: d.max_dim,
    }
}

/// Runs one claim check. `report_json` (optional) receives the full report as JSON.
///
/// # Safety
/// `claim` and `field` must be NUL-terminated; `status` writable; `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn biserial_verify(
    claim: *const c_char,
    field: *const c_char,
    config: BiserialVerifyConfig,
    status: *mut BiserialClaimStatus,
    report_json: *mut *mut c_char,
) -> BiserialStatus {
    guard(|| {
        let claim = str_arg(claim, "claim")?;
        let field = field_arg(str_arg(field, "field")?)?;
        let status = out_arg(status, "status")?;
        let cfg = FamilyConfig {
            r: config.r,
            m_max: config.m_max,
            t_max: config.t_max,
            field,
            seed: config.seed,
            cutoff: config.cutoff,
            samples: config.samples,
            max_dim: config.max_dim,
        };
        let rep = verify(claim, &cfg).map_err(|e| fail(BiserialStatus::InvalidArgument, e))?;
        *status = match rep.status {
            Status::Pass => BiserialClaimStatus::Pass,
            Status::Fail => BiserialClaimStatus::Fail,
            Status::Inconclusive => BiserialClaimStatus::Inconclusive,
        };
        if !report_json.is_null() {
            let text = serde_json::to_string(&rep).map_err(|e| fail(BiserialStatus::Panic, e.to_string()))?;
            *report_json = to_c_string(text);
        }
        Ok(())
    })
}
