//! C ABI over the zml library: opaque handles, status codes, out-parameters.
//!
//! Conventions: every fallible call returns a [`ZmlStatus`] and writes its
//! results through out-pointers only on `ZML_STATUS_OK`. Handles returned by
//! `_new`, `zml_find_zeros` and `zml_zero_table_load` are owned by the
//! caller and must be released with the matching `_free`. Pure-arithmetic
//! helpers return NaN on invalid arguments instead of a status.

// `!(x > a)` validation guards reject NaN as well; `x <= a` would let it through
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::{c_char, CStr};
use std::path::Path;

use zml::error::Error;
use zml::sums;
use zml::zeros;
use zml::zeta;
use zml::{EvalConfig, ZeroTable};

/// Status code of every fallible C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZmlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    PoleAtOne = 3,
    RangeExceeded = 4,
    NearSingularity = 5,
    Unresolved = 6,
    MissedZero = 7,
    ShiftOutOfRange = 8,
    CutoffTooLarge = 9,
    DomainViolation = 10,
    AlphaOutOfRange = 11,
    IoError = 12,
    CacheFormat = 13,
}

fn status_of(e: &Error) -> ZmlStatus {
    match e {
        Error::PoleAtOne { .. } => ZmlStatus::PoleAtOne,
        Error::RangeExceeded { .. } => ZmlStatus::RangeExceeded,
        Error::NearSingularity { .. } => ZmlStatus::NearSingularity,
        Error::Unresolved { .. } => ZmlStatus::Unresolved,
        Error::MissedZero { .. } => ZmlStatus::MissedZero,
        Error::ShiftOutOfRange { .. } => ZmlStatus::ShiftOutOfRange,
        Error::CutoffTooLarge { .. } => ZmlStatus::CutoffTooLarge,
        Error::DomainViolation { .. } => ZmlStatus::DomainViolation,
        Error::AlphaOutOfRange { .. } => ZmlStatus::AlphaOutOfRange,
        Error::InvalidConfig { .. } => ZmlStatus::InvalidArgument,
        Error::CacheFormat { .. } => ZmlStatus::CacheFormat,
        Error::Io(_) => ZmlStatus::IoError,
    }
}

/// Short static description of a status code.
#[no_mangle]
pub extern "C" fn zml_status_str(status: ZmlStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        ZmlStatus::Ok => b"ok\0",
        ZmlStatus::NullPointer => b"null pointer\0",
        ZmlStatus::InvalidArgument => b"invalid argument\0",
        ZmlStatus::PoleAtOne => b"argument within guard radius of the pole at s = 1\0",
        ZmlStatus::RangeExceeded => b"height exceeds configured max_t\0",
        ZmlStatus::NearSingularity => b"zeta'/zeta too close to a zero or the pole\0",
        ZmlStatus::Unresolved => b"argument tracking unresolved\0",
        ZmlStatus::MissedZero => b"sign-change count cannot be reconciled\0",
        ZmlStatus::ShiftOutOfRange => b"shifted ordinate exceeds max_t\0",
        ZmlStatus::CutoffTooLarge => b"Dirichlet cutoff exceeds the memory guard\0",
        ZmlStatus::DomainViolation => b"operation hypothesis violated\0",
        ZmlStatus::AlphaOutOfRange => b"alpha outside the admissible range\0",
        ZmlStatus::IoError => b"i/o failure\0",
        ZmlStatus::CacheFormat => b"malformed zero-cache file\0",
    };
    s.as_ptr() as *const c_char
}

/// Opaque evaluation configuration handle.
pub struct ZmlConfig(EvalConfig);

/// Opaque zero-ordinate table handle.
pub struct ZmlZeroTable(ZeroTable);

/// Flat mean-square report.
#[repr(C)]
pub struct ZmlMeanSquare {
    pub sigma: f64,
    pub t: f64,
    pub t_max: f64,
    pub observed_s: f64,
    pub main_m: f64,
    pub rel_dev: f64,
    pub n_zeros: u64,
}

/// Flat double-sum decomposition.
#[repr(C)]
pub struct ZmlDoubleSum {
    pub a1: f64,
    pub a2_re: f64,
    pub a2_im: f64,
    pub a: f64,
    pub r_est: f64,
}

/// New configuration with the default accuracy contract.
#[no_mangle]
pub extern "C" fn zml_config_new() -> *mut ZmlConfig {
    Box::into_raw(Box::new(ZmlConfig(EvalConfig::default())))
}

/// Release a configuration handle. NULL is a no-op.
///
/// # Safety
/// `cfg` must be NULL or a pointer from [`zml_config_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zml_config_free(cfg: *mut ZmlConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// # Safety
/// `cfg` must be a live pointer from [`zml_config_new`].
#[no_mangle]
pub unsafe extern "C" fn zml_config_set_max_t(cfg: *mut ZmlConfig, max_t: f64) -> ZmlStatus {
    let Some(cfg) = cfg.as_mut() else {
        return ZmlStatus::NullPointer;
    };
    let candidate = EvalConfig {
        max_t,
        ..cfg.0.clone()
    };
    match candidate.validate() {
        Ok(()) => {
            cfg.0 = candidate;
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `cfg` must be a live pointer from [`zml_config_new`].
#[no_mangle]
pub unsafe extern "C" fn zml_config_set_target_abs_err(
    cfg: *mut ZmlConfig,
    target_abs_err: f64,
) -> ZmlStatus {
    let Some(cfg) = cfg.as_mut() else {
        return ZmlStatus::NullPointer;
    };
    let candidate = EvalConfig {
        target_abs_err,
        ..cfg.0.clone()
    };
    match candidate.validate() {
        Ok(()) => {
            cfg.0 = candidate;
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `cfg` must be a live pointer from [`zml_config_new`].
#[no_mangle]
pub unsafe extern "C" fn zml_config_max_t(cfg: *const ZmlConfig) -> f64 {
    match cfg.as_ref() {
        Some(c) => c.0.max_t,
        None => f64::NAN,
    }
}

unsafe fn write_complex(
    r: Result<zml::Complex64, Error>,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZmlStatus {
    if out_re.is_null() || out_im.is_null() {
        return ZmlStatus::NullPointer;
    }
    match r {
        Ok(z) => {
            *out_re = z.re;
            *out_im = z.im;
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// zeta(re + i im).
///
/// # Safety
/// `cfg` must be live; `out_re`, `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_zeta(
    cfg: *const ZmlConfig,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZmlStatus {
    let Some(cfg) = cfg.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    write_complex(
        zeta::zeta(zml::Complex64::new(re, im), &cfg.0),
        out_re,
        out_im,
    )
}

/// zeta'(s)/zeta(s).
///
/// # Safety
/// `cfg` must be live; `out_re`, `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_zeta_log_derivative(
    cfg: *const ZmlConfig,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZmlStatus {
    let Some(cfg) = cfg.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    write_complex(
        zeta::zeta_log_derivative(zml::Complex64::new(re, im), &cfg.0),
        out_re,
        out_im,
    )
}

/// Riemann-Siegel theta; total on the reals.
#[no_mangle]
pub extern "C" fn zml_riemann_siegel_theta(t: f64) -> f64 {
    zeta::riemann_siegel_theta(t)
}

/// Hardy Z(t).
///
/// # Safety
/// `cfg` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_hardy_z(cfg: *const ZmlConfig, t: f64, out: *mut f64) -> ZmlStatus {
    let Some(cfg) = cfg.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    if out.is_null() {
        return ZmlStatus::NullPointer;
    }
    match zeta::hardy_z(t, &cfg.0) {
        Ok(z) => {
            *out = z;
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// (T/2pi) log(T/2pi e); NaN for T <= 0.
#[no_mangle]
pub extern "C" fn zml_rvm_main_term(t_max: f64) -> f64 {
    if t_max > 0.0 {
        zeros::rvm_main_term(t_max)
    } else {
        f64::NAN
    }
}

/// Exact zero count N(T) by the argument principle.
///
/// # Safety
/// `cfg` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_count_zeros(
    cfg: *const ZmlConfig,
    t_max: f64,
    out: *mut u64,
) -> ZmlStatus {
    let Some(cfg) = cfg.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    if out.is_null() {
        return ZmlStatus::NullPointer;
    }
    match zeros::count_zeros(t_max, &cfg.0) {
        Ok(n) => {
            *out = n as u64;
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Localize every ordinate in (t_lo, t_hi]; on success `*out` owns the table.
///
/// # Safety
/// `cfg` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_find_zeros(
    cfg: *const ZmlConfig,
    t_lo: f64,
    t_hi: f64,
    out: *mut *mut ZmlZeroTable,
) -> ZmlStatus {
    let Some(cfg) = cfg.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    if out.is_null() {
        return ZmlStatus::NullPointer;
    }
    match zeros::find_zeros(t_lo, t_hi, &cfg.0) {
        Ok(table) => {
            *out = Box::into_raw(Box::new(ZmlZeroTable(table)));
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Release a table handle. NULL is a no-op.
///
/// # Safety
/// `table` must be NULL or an owned pointer not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zml_zero_table_free(table: *mut ZmlZeroTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `table` must be live.
#[no_mangle]
pub unsafe extern "C" fn zml_zero_table_len(table: *const ZmlZeroTable) -> u64 {
    match table.as_ref() {
        Some(t) => t.0.len() as u64,
        None => 0,
    }
}

/// # Safety
/// `table` must be live.
#[no_mangle]
pub unsafe extern "C" fn zml_zero_table_t_max(table: *const ZmlZeroTable) -> f64 {
    match table.as_ref() {
        Some(t) => t.0.t_max(),
        None => f64::NAN,
    }
}

/// Fetch the idx-th ordinate (ascending, 0-based).
///
/// # Safety
/// `table` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_zero_table_ordinate(
    table: *const ZmlZeroTable,
    idx: u64,
    out: *mut f64,
) -> ZmlStatus {
    let Some(t) = table.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    if out.is_null() {
        return ZmlStatus::NullPointer;
    }
    match t.0.ordinates().get(idx as usize) {
        Some(&g) => {
            *out = g;
            ZmlStatus::Ok
        }
        None => ZmlStatus::InvalidArgument,
    }
}

unsafe fn path_from(ptr: *const c_char) -> Option<&'static Path> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok().map(Path::new)
}

/// Persist the table in the plain-text cache format.
///
/// # Safety
/// `table` must be live; `path` must be a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn zml_zero_table_save(
    table: *const ZmlZeroTable,
    path: *const c_char,
) -> ZmlStatus {
    let Some(t) = table.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    let Some(path) = path_from(path) else {
        return ZmlStatus::NullPointer;
    };
    match zml::cache::write_zero_cache(path, &t.0) {
        Ok(()) => ZmlStatus::Ok,
        Err(e) => status_of(&e),
    }
}

/// Load a table from the plain-text cache format.
///
/// # Safety
/// `path` must be a NUL-terminated UTF-8 string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_zero_table_load(
    path: *const c_char,
    out: *mut *mut ZmlZeroTable,
) -> ZmlStatus {
    let Some(path) = path_from(path) else {
        return ZmlStatus::NullPointer;
    };
    if out.is_null() {
        return ZmlStatus::NullPointer;
    }
    match zml::cache::read_zero_cache(path) {
        Ok(table) => {
            *out = Box::into_raw(Box::new(ZmlZeroTable(table)));
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Lambda(n); NaN for n = 0.
#[no_mangle]
pub extern "C" fn zml_von_mangoldt(n: u64) -> f64 {
    if n >= 1 {
        zml::arith::von_mangoldt(n)
    } else {
        f64::NAN
    }
}

/// Lambda on the reals with a snap window; NaN outside x > 1, eps >= 0.
#[no_mangle]
pub extern "C" fn zml_von_mangoldt_real(x: f64, eps: f64) -> f64 {
    if x > 1.0 && eps >= 0.0 {
        zml::arith::von_mangoldt_real(x, eps)
    } else {
        f64::NAN
    }
}

/// Distance to the nearest other prime power; NaN for x <= 1.
#[no_mangle]
pub extern "C" fn zml_nearest_prime_power_distance(x: f64) -> f64 {
    if x > 1.0 {
        zml::arith::nearest_prime_power_distance(x)
    } else {
        f64::NAN
    }
}

/// Compensated sum of x^{i gamma} over the table.
///
/// # Safety
/// `table` must be live; `out_re`, `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_landau_sum(
    table: *const ZmlZeroTable,
    x: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZmlStatus {
    let Some(t) = table.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    if out_re.is_null() || out_im.is_null() {
        return ZmlStatus::NullPointer;
    }
    if !(x > 1.0) {
        return ZmlStatus::InvalidArgument;
    }
    let z = sums::landau_sum(x, &t.0);
    *out_re = z.re;
    *out_im = z.im;
    ZmlStatus::Ok
}

/// -(T/2pi) Lambda(x)/sqrt(x); NaN on invalid arguments.
#[no_mangle]
pub extern "C" fn zml_landau_main_term(x: f64, t_max: f64) -> f64 {
    if x > 1.0 && t_max > 0.0 {
        sums::landau_main_term(x, t_max)
    } else {
        f64::NAN
    }
}

/// Landau error envelope with constant c; NaN on invalid arguments.
#[no_mangle]
pub extern "C" fn zml_landau_error_envelope(x: f64, t_max: f64, c: f64) -> f64 {
    if x > 1.0 && t_max > 1.0 && c > 0.0 {
        sums::landau_error_envelope(x, t_max, c)
    } else {
        f64::NAN
    }
}

/// Discrete mean square of |zeta(sigma + i(t + gamma))|^2 with main term.
///
/// # Safety
/// `cfg` and `table` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_discrete_mean_square(
    cfg: *const ZmlConfig,
    table: *const ZmlZeroTable,
    sigma: f64,
    t: f64,
    out: *mut ZmlMeanSquare,
) -> ZmlStatus {
    let (Some(cfg), Some(tbl)) = (cfg.as_ref(), table.as_ref()) else {
        return ZmlStatus::NullPointer;
    };
    if out.is_null() {
        return ZmlStatus::NullPointer;
    }
    match sums::discrete_mean_square(sigma, t, &tbl.0, &cfg.0) {
        Ok(r) => {
            *out = ZmlMeanSquare {
                sigma: r.sigma,
                t: r.t,
                t_max: r.t_max,
                observed_s: r.observed_s,
                main_m: r.main_m,
                rel_dev: r.rel_dev,
                n_zeros: r.n_zeros as u64,
            };
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Two-term mean-square main term.
///
/// # Safety
/// `cfg` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_mean_square_main_term(
    cfg: *const ZmlConfig,
    sigma: f64,
    t: f64,
    t_max: f64,
    out: *mut f64,
) -> ZmlStatus {
    let Some(cfg) = cfg.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    if out.is_null() {
        return ZmlStatus::NullPointer;
    }
    if !(t_max > 0.0) {
        return ZmlStatus::InvalidArgument;
    }
    match sums::mean_square_main_term(sigma, t, t_max, &cfg.0) {
        Ok(m) => {
            *out = m;
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// A1 + 2 Re A2 decomposition with measured remainder.
///
/// # Safety
/// `cfg` and `table` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_dirichlet_double_sum(
    cfg: *const ZmlConfig,
    table: *const ZmlZeroTable,
    sigma: f64,
    t: f64,
    delta: f64,
    out: *mut ZmlDoubleSum,
) -> ZmlStatus {
    let (Some(cfg), Some(tbl)) = (cfg.as_ref(), table.as_ref()) else {
        return ZmlStatus::NullPointer;
    };
    if out.is_null() {
        return ZmlStatus::NullPointer;
    }
    match sums::dirichlet_double_sum(sigma, t, delta, &tbl.0, &cfg.0) {
        Ok(b) => {
            *out = ZmlDoubleSum {
                a1: b.a1,
                a2_re: b.a2.re,
                a2_im: b.a2.im,
                a: b.a,
                r_est: b.r_est,
            };
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Sum of |gamma + t|^{-2 lambda} and its ratio to T |T+t|^{-2 lambda} log T.
///
/// # Safety
/// `table` must be live; `out_sum`, `out_ratio` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_gamma_shift_partial_sum(
    table: *const ZmlZeroTable,
    t: f64,
    lambda: f64,
    out_sum: *mut f64,
    out_ratio: *mut f64,
) -> ZmlStatus {
    let Some(tbl) = table.as_ref() else {
        return ZmlStatus::NullPointer;
    };
    if out_sum.is_null() || out_ratio.is_null() {
        return ZmlStatus::NullPointer;
    }
    if !(tbl.0.t_max() > 1.0) {
        return ZmlStatus::InvalidArgument;
    }
    match sums::gamma_shift_partial_sum(t, lambda, &tbl.0) {
        Ok((sum, ratio)) => {
            *out_sum = sum;
            *out_ratio = ratio;
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Critical-line sinc-factor main term; NaN for t_max <= 1.
#[no_mangle]
pub extern "C" fn zml_critical_line_main_term(alpha: f64, t_max: f64) -> f64 {
    if t_max > 1.0 {
        sums::critical_line_main_term(alpha, t_max)
    } else {
        f64::NAN
    }
}

/// Critical-line shifted mean square against the sinc main term.
///
/// # Safety
/// `cfg` and `table` must be live; `out_observed`, `out_main` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_critical_line_shifted_meansq(
    cfg: *const ZmlConfig,
    table: *const ZmlZeroTable,
    alpha: f64,
    out_observed: *mut f64,
    out_main: *mut f64,
) -> ZmlStatus {
    let (Some(cfg), Some(tbl)) = (cfg.as_ref(), table.as_ref()) else {
        return ZmlStatus::NullPointer;
    };
    if out_observed.is_null() || out_main.is_null() {
        return ZmlStatus::NullPointer;
    }
    match sums::critical_line_shifted_meansq(alpha, &tbl.0, &cfg.0) {
        Ok((observed, main)) => {
            *out_observed = observed;
            *out_main = main;
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// observed_S / (T log T + |t|^eps).
///
/// # Safety
/// `cfg` and `table` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zml_uniform_bound_ratio(
    cfg: *const ZmlConfig,
    table: *const ZmlZeroTable,
    sigma: f64,
    t: f64,
    eps: f64,
    out: *mut f64,
) -> ZmlStatus {
    let (Some(cfg), Some(tbl)) = (cfg.as_ref(), table.as_ref()) else {
        return ZmlStatus::NullPointer;
    };
    if out.is_null() {
        return ZmlStatus::NullPointer;
    }
    if !(tbl.0.t_max() > 1.0) {
        return ZmlStatus::InvalidArgument;
    }
    match sums::uniform_bound_ratio(sigma, t, eps, &tbl.0, &cfg.0) {
        Ok(ratio) => {
            *out = ratio;
            ZmlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
