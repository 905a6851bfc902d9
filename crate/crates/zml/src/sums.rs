//! Discrete sums over zero ordinates and their explicit main terms: the
//! uniform Landau formula, the shifted discrete mean square with its
//! two-term asymptotic, the Dirichlet double-sum decomposition, the
//! shifted-ordinate partial-sum bound, and the critical-line comparison.
//!
//! Every O(.) in the underlying asymptotics has an unspecified constant, so
//! the envelope operations expose the constant as a parameter and the report
//! types publish ratios; the judgement of what is "small enough" lives in
//! the verification suite, not here.

use num_complex::Complex64;

use crate::arith::{nearest_prime_power_distance, von_mangoldt_real, von_mangoldt_snap_eps};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::kahan::{block_sum, block_sum_complex, try_block_sum, CompensatedSum};
use crate::zeros::ZeroTable;
use crate::zeta::{zeta, zeta_log_derivative};

use std::f64::consts::PI;

const SIGMA_MARGIN: f64 = 1e-3;
/// Memory guard on the Dirichlet cutoff (t_max + t)^delta.
const CUTOFF_GUARD: f64 = 1e6;

/// Observed vs predicted sum of x^{i gamma} for one (x, T).
#[derive(Debug, Clone, Copy)]
pub struct LandauReport {
    pub x: f64,
    pub t_max: f64,
    pub observed: Complex64,
    pub main_term: f64,
    pub envelope: f64,
    pub envelope_c: f64,
    /// |observed - main_term| / envelope
    pub ratio: f64,
}

/// Observed vs predicted discrete mean square for one (sigma, t, T).
#[derive(Debug, Clone, Copy)]
pub struct MeanSquareReport {
    pub sigma: f64,
    pub t: f64,
    pub t_max: f64,
    pub observed_s: f64,
    pub main_m: f64,
    /// |S - M| / max(|M|, 1)
    pub rel_dev: f64,
    pub n_zeros: usize,
    /// Dirichlet cutoff of the double-sum cross-check, when one was run.
    pub delta: Option<f64>,
}

/// The A = A1 + 2 Re A2 decomposition of the mean square, with the measured
/// remainder against the direct evaluation.
#[derive(Debug, Clone, Copy)]
pub struct DoubleSumBreakdown {
    pub a1: f64,
    pub a2: Complex64,
    pub a: f64,
    pub r_est: f64,
}

/// Compensated sum of x^{i gamma} = (cos(gamma log x), sin(gamma log x))
/// over the table.
pub fn landau_sum(x: f64, zeros: &ZeroTable) -> Complex64 {
    assert!(x > 1.0, "landau_sum requires x > 1");
    let log_x = x.ln();
    block_sum_complex(zeros.ordinates(), |&g| {
        let (sin, cos) = (g * log_x).sin_cos();
        Complex64::new(cos, sin)
    })
}

/// -(T/2pi) Lambda(x)/sqrt(x), with Lambda snapped to integers within the
/// default window.
pub fn landau_main_term(x: f64, t_max: f64) -> f64 {
    assert!(x > 1.0 && t_max > 0.0);
    -(t_max / (2.0 * PI)) * von_mangoldt_real(x, von_mangoldt_snap_eps(x)) / x.sqrt()
}

/// Three-part error envelope of the uniform Landau formula, scaled by C.
pub fn landau_error_envelope(x: f64, t_max: f64, c: f64) -> f64 {
    assert!(x > 1.0 && t_max > 1.0 && c > 0.0);
    let dist = nearest_prime_power_distance(x);
    let log_x = x.ln();
    c * (x.sqrt() * (2.0 * x * t_max).ln() * (3.0 * x).ln().ln()
        + (log_x / x.sqrt()) * t_max.min(x / dist)
        + ((2.0 * t_max).ln() / x.sqrt()) * t_max.min(1.0 / log_x))
}

/// Assemble observed sum, main term and envelope into one report.
pub fn landau_report(x: f64, zeros: &ZeroTable, envelope_c: f64) -> LandauReport {
    let observed = landau_sum(x, zeros);
    let main_term = landau_main_term(x, zeros.t_max());
    let envelope = landau_error_envelope(x, zeros.t_max(), envelope_c);
    LandauReport {
        x,
        t_max: zeros.t_max(),
        observed,
        main_term,
        envelope,
        envelope_c,
        ratio: (observed - main_term).norm() / envelope,
    }
}

fn require_sigma(sigma: f64) -> Result<()> {
    if sigma <= 0.5 + SIGMA_MARGIN {
        return Err(Error::DomainViolation {
            detail: format!("sigma = {sigma} must exceed 1/2 + 1e-3"),
        });
    }
    Ok(())
}

fn require_shift_in_range(t: f64, zeros: &ZeroTable, cfg: &EvalConfig) -> Result<()> {
    for &g in [zeros.ordinates().first(), zeros.ordinates().last()]
        .into_iter()
        .flatten()
    {
        if (t + g).abs() > cfg.max_t {
            return Err(Error::ShiftOutOfRange {
                shifted: (t + g).abs(),
                max_t: cfg.max_t,
            });
        }
    }
    Ok(())
}

/// Two-term main term: zeta(2 sigma) [ (T/2pi) log(T/2pi e)
///                                    + Re(zeta'/zeta(sigma + 1/2 + it)) T/pi ].
pub fn mean_square_main_term(sigma: f64, t: f64, t_max: f64, cfg: &EvalConfig) -> Result<f64> {
    require_sigma(sigma)?;
    assert!(t_max > 0.0);
    let z2s = zeta(Complex64::new(2.0 * sigma, 0.0), cfg)?.re;
    let ld = zeta_log_derivative(Complex64::new(sigma + 0.5, t), cfg)?;
    let two_pi = 2.0 * PI;
    Ok(
        z2s * (t_max / two_pi) * (t_max / (two_pi * std::f64::consts::E)).ln()
            + z2s * ld.re * (t_max / PI),
    )
}

/// Observed sum of |zeta(sigma + i(t + gamma))|^2 over the table, with its
/// main term and relative deviation.
pub fn discrete_mean_square(
    sigma: f64,
    t: f64,
    zeros: &ZeroTable,
    cfg: &EvalConfig,
) -> Result<MeanSquareReport> {
    require_sigma(sigma)?;
    require_shift_in_range(t, zeros, cfg)?;
    let observed_s = try_block_sum(zeros.ordinates(), |&g| {
        zeta(Complex64::new(sigma, t + g), cfg).map(|z| z.norm_sqr())
    })?;
    let main_m = mean_square_main_term(sigma, t, zeros.t_max(), cfg)?;
    Ok(MeanSquareReport {
        sigma,
        t,
        t_max: zeros.t_max(),
        observed_s,
        main_m,
        rel_dev: (observed_s - main_m).abs() / main_m.abs().max(1.0),
        n_zeros: zeros.len(),
        delta: None,
    })
}

/// The proof's rearrangement: A1 = sum over the diagonal n = m, A2 over
/// n < m with the phase (m/n)^{i(gamma+t)} computed from exact integer
/// logarithms, and the measured remainder R_est = |S - A|.
pub fn dirichlet_double_sum(
    sigma: f64,
    t: f64,
    delta: f64,
    zeros: &ZeroTable,
    cfg: &EvalConfig,
) -> Result<DoubleSumBreakdown> {
    require_sigma(sigma)?;
    if !(delta > 0.0 && delta <= 0.9) {
        return Err(Error::DomainViolation {
            detail: format!("delta = {delta} outside (0, 0.9]"),
        });
    }
    if let Some(&first) = zeros.ordinates().first() {
        if first + t <= 1.0 {
            return Err(Error::DomainViolation {
                detail: format!("t + gamma = {} <= 1 at the first ordinate", first + t),
            });
        }
    }
    let cutoff = (zeros.t_max() + t).max(0.0).powf(delta);
    if cutoff > CUTOFF_GUARD {
        return Err(Error::CutoffTooLarge { cutoff });
    }
    require_shift_in_range(t, zeros, cfg)?;
    let m_max = cutoff.floor() as usize;

    // shared tables of log n and n^{-sigma}; index 0 unused
    let mut log_n = vec![0.0f64; m_max + 1];
    let mut pow_n = vec![0.0f64; m_max + 1];
    for n in 1..=m_max {
        log_n[n] = (n as f64).ln();
        pow_n[n] = (n as f64).powf(-sigma);
    }

    let inner_cut = |g: f64| -> usize { ((g + t).powf(delta).floor() as usize).min(m_max) };

    let a1 = block_sum(zeros.ordinates(), |&g| {
        let m = inner_cut(g);
        let mut acc = CompensatedSum::new();
        for &p in &pow_n[1..=m] {
            acc.add(p * p);
        }
        acc.value()
    });

    let a2 = block_sum_complex(zeros.ordinates(), |&g| {
        let cut = inner_cut(g);
        let phase = g + t;
        let mut acc = crate::kahan::CompensatedComplexSum::new();
        for n in 1..cut {
            for m in (n + 1)..=cut {
                let (sin, cos) = (phase * (log_n[m] - log_n[n])).sin_cos();
                let w = pow_n[n] * pow_n[m];
                acc.add(Complex64::new(w * cos, w * sin));
            }
        }
        acc.value()
    });

    let a = a1 + 2.0 * a2.re;
    let observed = discrete_mean_square(sigma, t, zeros, cfg)?.observed_s;
    Ok(DoubleSumBreakdown {
        a1,
        a2,
        a,
        r_est: (observed - a).abs(),
    })
}

/// Sum of (gamma + t)^{-2 lambda} and its ratio to T |T+t|^{-2 lambda} log T.
/// The hypothesis "t > 0 or -t > T" keeps |gamma + t| bounded away from 0;
/// in the -t > T regime every gamma + t is negative and the power is taken
/// of the absolute value, as in the bound itself.
pub fn gamma_shift_partial_sum(t: f64, lambda: f64, zeros: &ZeroTable) -> Result<(f64, f64)> {
    if !(lambda > 0.0 && lambda < 0.5) {
        return Err(Error::DomainViolation {
            detail: format!("lambda = {lambda} outside (0, 1/2)"),
        });
    }
    let t_max = zeros.t_max();
    if !(t > 0.0 || -t > t_max) {
        return Err(Error::DomainViolation {
            detail: format!("need t > 0 or -t > T = {t_max}, got t = {t}"),
        });
    }
    let sum = block_sum(zeros.ordinates(), |&g| (g + t).abs().powf(-2.0 * lambda));
    let bound = t_max * (t_max + t).abs().powf(-2.0 * lambda) * t_max.ln();
    Ok((sum, sum / bound))
}

/// Main term of the critical-line shifted mean square,
/// (1 - (sin pi alpha / pi alpha)^2) (T/2pi) log^2 T, with the alpha = 0
/// limit of the sinc factor taken as 1. Pure arithmetic, defined for all
/// alpha.
pub fn critical_line_main_term(alpha: f64, t_max: f64) -> f64 {
    assert!(t_max > 1.0);
    let sinc = if alpha == 0.0 {
        1.0
    } else {
        (PI * alpha).sin() / (PI * alpha)
    };
    (1.0 - sinc * sinc) * (t_max / (2.0 * PI)) * t_max.ln() * t_max.ln()
}

/// Shifted mean square on the critical line: observed sum of
/// |zeta(1/2 + i(gamma + 2 pi alpha / log(T/2pi)))|^2 against the
/// sinc-factor main term. Alpha is restricted to the stated admissible
/// range |alpha| <= (1/4pi) log(T/2pi).
pub fn critical_line_shifted_meansq(
    alpha: f64,
    zeros: &ZeroTable,
    cfg: &EvalConfig,
) -> Result<(f64, f64)> {
    let t_max = zeros.t_max();
    if !(t_max > 2.0 * PI) {
        return Err(Error::DomainViolation {
            detail: format!("T = {t_max} too small for the shift scale log(T/2pi)"),
        });
    }
    let log_scale = (t_max / (2.0 * PI)).ln();
    let limit = log_scale / (4.0 * PI);
    if alpha.abs() > limit {
        return Err(Error::AlphaOutOfRange { alpha, limit });
    }
    let shift = 2.0 * PI * alpha / log_scale;
    require_shift_in_range(shift, zeros, cfg)?;
    let observed = try_block_sum(zeros.ordinates(), |&g| {
        zeta(Complex64::new(0.5, g + shift), cfg).map(|z| z.norm_sqr())
    })?;
    Ok((observed, critical_line_main_term(alpha, t_max)))
}

/// observed_S / (T log T + |t|^eps), the uniform-bound diagnostic ratio.
/// |t|^eps is taken as 0 at t = 0.
pub fn uniform_bound_ratio(
    sigma: f64,
    t: f64,
    eps: f64,
    zeros: &ZeroTable,
    cfg: &EvalConfig,
) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::DomainViolation {
            detail: format!("eps = {eps} outside (0, 1)"),
        });
    }
    let t_max = zeros.t_max();
    assert!(t_max > 1.0);
    let report = discrete_mean_square(sigma, t, zeros, cfg)?;
    let tail = if t == 0.0 { 0.0 } else { t.abs().powf(eps) };
    Ok(report.observed_s / (t_max * t_max.ln() + tail))
}
