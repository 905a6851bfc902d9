//! Counting and localizing the zero ordinates gamma in (0, T].
//!
//! Two independent routes are kept separate on purpose: `count_zeros` counts
//! through the argument principle (theta(T)/pi + 1 + S(T) with S tracked
//! along the broken line 2 -> 2+iT -> 1/2+iT), while `find_zeros` localizes
//! sign changes of the Hardy Z-function inside Gram intervals. The two must
//! agree exactly, and the test suite holds them to that.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::zeta::{hardy_z, riemann_siegel_theta, zeta};

use std::f64::consts::{FRAC_PI_2, PI};

/// Default localization half-width for ordinates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// First Gram point index used by the bracket grid (g_{-1} = 9.6669...).
const FIRST_GRAM_INDEX: i64 = -1;
/// Gram intervals are split into at most this many subintervals before the
/// search gives up (known Gram violations at desk scale are shallow).
const MAX_BRACKET_SUBDIVISION: usize = 64;
/// Recursion budget for adaptive argument tracking.
const ARG_DEPTH_LIMIT: u32 = 48;
/// No ordinate lies below this height.
const NO_ZEROS_BELOW: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalizationMethod {
    GramBisection,
}

/// Sorted table of zero ordinates in (0, t_max] with provenance metadata.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    t_max: f64,
    ordinates: Vec<f64>,
    tol: f64,
    method: LocalizationMethod,
    count_check: usize,
    z_residual_bound: f64,
}

impl ZeroTable {
    /// Assemble a table, enforcing the structural invariants.
    pub fn from_parts(
        t_max: f64,
        ordinates: Vec<f64>,
        tol: f64,
        method: LocalizationMethod,
        count_check: usize,
        z_residual_bound: f64,
    ) -> Result<Self> {
        if ordinates.len() != count_check {
            return Err(Error::MissedZero {
                lo: 0.0,
                hi: t_max,
                expected: count_check,
                found: ordinates.len(),
            });
        }
        for w in ordinates.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::DomainViolation {
                    detail: format!("ordinates not strictly increasing near {}", w[0]),
                });
            }
        }
        if let (Some(first), Some(last)) = (ordinates.first(), ordinates.last()) {
            if *first <= 0.0 || *last > t_max + tol {
                return Err(Error::DomainViolation {
                    detail: format!("ordinate outside (0, {t_max}]"),
                });
            }
        }
        Ok(ZeroTable {
            t_max,
            ordinates,
            tol,
            method,
            count_check,
            z_residual_bound,
        })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn method(&self) -> LocalizationMethod {
        self.method
    }

    pub fn count_check(&self) -> usize {
        self.count_check
    }

    /// Largest observed |Z(gamma)| over the stored ordinates; NaN for tables
    /// loaded from a cache, which does not persist residuals.
    pub fn z_residual_bound(&self) -> f64 {
        self.z_residual_bound
    }

    /// The sub-table of ordinates <= t. The count check is inherited by
    /// construction rather than recounted.
    pub fn truncated(&self, t: f64) -> ZeroTable {
        let cut = self.ordinates.partition_point(|&g| g <= t);
        ZeroTable {
            t_max: t,
            ordinates: self.ordinates[..cut].to_vec(),
            tol: self.tol,
            method: self.method,
            count_check: cut,
            z_residual_bound: self.z_residual_bound,
        }
    }
}

/// Riemann-von Mangoldt main term (T/2pi) log(T/(2pi e)).
pub fn rvm_main_term(t: f64) -> f64 {
    assert!(t > 0.0, "rvm_main_term requires T > 0");
    let two_pi = 2.0 * PI;
    t / two_pi * (t / (two_pi * std::f64::consts::E)).ln()
}

/// Adaptive continuous-argument increment of `f` over [a, b], given the
/// endpoint values. Subdivides until every increment is below pi/2, so no
/// winding can be missed.
fn arg_increment<F>(f: &F, a: f64, fa: Complex64, b: f64, fb: Complex64, depth: u32) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let d = (fb / fa).arg();
    if d.abs() < FRAC_PI_2 && d.is_finite() {
        return Ok(d);
    }
    if depth == 0 {
        return Err(Error::Unresolved { t: 0.5 * (a + b) });
    }
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    Ok(arg_increment(f, a, fa, m, fm, depth - 1)? + arg_increment(f, m, fm, b, fb, depth - 1)?)
}

/// Total argument variation of zeta along 2 -> 2+iT -> 1/2+iT, starting from
/// arg zeta(2) = 0.
fn arg_zeta_along_path(t: f64, cfg: &EvalConfig) -> Result<f64> {
    let mut total = 0.0;

    // vertical segment: steps of at most 2 keep increments well under pi/2
    // (the argument rate on Re(s) = 2 is bounded by |zeta'/zeta(2)| ~ 0.57)
    let f_v = |u: f64| zeta(Complex64::new(2.0, u), cfg);
    let n_v = (t / 2.0).ceil().max(1.0) as usize;
    let mut prev_u = 0.0;
    let mut prev_val = f_v(0.0)?;
    for i in 1..=n_v {
        let u = t * (i as f64) / (n_v as f64);
        let val = f_v(u)?;
        total += arg_increment(&f_v, prev_u, prev_val, u, val, ARG_DEPTH_LIMIT)?;
        prev_u = u;
        prev_val = val;
    }

    // horizontal segment from 2+iT to 1/2+iT
    let f_h = |x: f64| zeta(Complex64::new(x, t), cfg);
    let n_h = 8usize;
    let mut prev_x = 2.0;
    for i in 1..=n_h {
        let x = 2.0 - 1.5 * (i as f64) / (n_h as f64);
        let val = f_h(x)?;
        total += arg_increment(&f_h, prev_x, prev_val, x, val, ARG_DEPTH_LIMIT)?;
        prev_x = x;
        prev_val = val;
    }
    Ok(total)
}

fn count_zeros_once(t: f64, cfg: &EvalConfig) -> Result<usize> {
    let s_arg = arg_zeta_along_path(t, cfg)? / PI;
    let n_float = riemann_siegel_theta(t) / PI + 1.0 + s_arg;
    let n = n_float.round();
    if (n_float - n).abs() > 0.01 || n < 0.0 {
        // the count did not land on an integer: T collides with an ordinate
        // or the tracking lost precision
        return Err(Error::Unresolved { t });
    }
    Ok(n as usize)
}

/// Exact N(T) through the argument principle. T within 1e-6 of an ordinate is
/// nudged upward (keeping the ordinate counted, per the closed-at-T
/// convention) and retried.
pub fn count_zeros(t: f64, cfg: &EvalConfig) -> Result<usize> {
    cfg.validate()?;
    if t < NO_ZEROS_BELOW {
        return Err(Error::DomainViolation {
            detail: format!("count_zeros requires T >= 10, got {t}"),
        });
    }
    if t > cfg.max_t {
        return Err(Error::RangeExceeded {
            t,
            max_t: cfg.max_t,
        });
    }
    let mut last = Error::Unresolved { t };
    for attempt in 0..3u32 {
        let t_eff = t + 1e-6 * attempt as f64;
        match count_zeros_once(t_eff, cfg) {
            Ok(n) => return Ok(n),
            Err(Error::Unresolved { .. }) => last = Error::Unresolved { t },
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Gram point g_k: the solution of theta(g) = k pi, k >= -1. Newton on the
/// increasing convex branch of theta.
pub fn gram_point(k: i64) -> f64 {
    assert!(k >= FIRST_GRAM_INDEX, "gram_point requires k >= -1");
    let target = k as f64 * PI;
    let theta_deriv = |g: f64| 0.5 * (g / (2.0 * PI)).ln() - 1.0 / (48.0 * g * g);
    let mut g = 9.0;
    for _ in 0..64 {
        let r = riemann_siegel_theta(g) - target;
        if r.abs() <= 1e-11 * target.abs().max(1.0) {
            return g;
        }
        g = (g - r / theta_deriv(g)).max(7.0);
    }
    g
}

/// A Gram interval with its current subdivision of Z samples.
struct Bracket {
    samples: Vec<(f64, f64)>, // (t, Z(t)) including both endpoints
}

impl Bracket {
    fn subdivision(&self) -> usize {
        self.samples.len() - 1
    }

    /// Double the subdivision by inserting midpoints.
    fn refine(&mut self, cfg: &EvalConfig) -> Result<()> {
        let mut refined = Vec::with_capacity(self.samples.len() * 2 - 1);
        for w in self.samples.windows(2) {
            let m = 0.5 * (w[0].0 + w[1].0);
            refined.push(w[0]);
            refined.push((m, hardy_z(m, cfg)?));
        }
        refined.push(*self.samples.last().unwrap());
        self.samples = refined;
        Ok(())
    }

    fn sign_changes(&self) -> usize {
        self.samples
            .windows(2)
            .filter(|w| (w[0].1 < 0.0) != (w[1].1 < 0.0))
            .count()
    }

    fn sign_change_intervals(&self, out: &mut Vec<(f64, f64, f64, f64)>) {
        for w in self.samples.windows(2) {
            if (w[0].1 < 0.0) != (w[1].1 < 0.0) {
                out.push((w[0].0, w[0].1, w[1].0, w[1].1));
            }
        }
    }
}

fn bisect_sign_change(
    mut a: f64,
    mut za: f64,
    mut b: f64,
    cfg: &EvalConfig,
    half_width: f64,
) -> Result<(f64, f64)> {
    while b - a > 2.0 * half_width {
        let m = 0.5 * (a + b);
        let zm = hardy_z(m, cfg)?;
        if (zm < 0.0) != (za < 0.0) {
            b = m;
        } else {
            a = m;
            za = zm;
        }
    }
    let g = 0.5 * (a + b);
    let residual = hardy_z(g, cfg)?.abs();
    Ok((g, residual))
}

/// Localize every ordinate in (t_lo, t_hi]: Gram-interval brackets, refined
/// where Gram's law fails until the sign-change count matches the
/// argument-principle count, then bisection to half-width <= DEFAULT_TOL.
pub fn find_zeros(t_lo: f64, t_hi: f64, cfg: &EvalConfig) -> Result<ZeroTable> {
    cfg.validate()?;
    if !(0.0 <= t_lo && t_lo < t_hi && t_hi <= cfg.max_t) {
        return Err(Error::DomainViolation {
            detail: format!(
                "find_zeros requires 0 <= t_lo < t_hi <= {}, got ({t_lo}, {t_hi}]",
                cfg.max_t
            ),
        });
    }

    let count_at = |t: f64| -> Result<usize> {
        if t < NO_ZEROS_BELOW {
            Ok(0)
        } else {
            count_zeros(t, cfg)
        }
    };
    let expected = count_at(t_hi)? - count_at(t_lo)?;

    // bracket boundaries: t_lo, the Gram points strictly inside, t_hi
    let mut bounds = vec![t_lo];
    let g_first = gram_point(FIRST_GRAM_INDEX);
    let mut k = if t_lo < g_first {
        FIRST_GRAM_INDEX
    } else {
        // theta is monotone increasing at and beyond g_{-1}
        (riemann_siegel_theta(t_lo) / PI).floor() as i64 + 1
    };
    loop {
        let g = gram_point(k);
        if g >= t_hi - 1e-9 {
            break;
        }
        if g > t_lo + 1e-9 {
            bounds.push(g);
        }
        k += 1;
    }
    bounds.push(t_hi);

    let boundary_z: Vec<(f64, f64)> = bounds
        .par_iter()
        .map(|&t| hardy_z(t, cfg).map(|z| (t, z)))
        .collect::<Result<_>>()?;
    let mut brackets: Vec<Bracket> = boundary_z
        .windows(2)
        .map(|w| Bracket {
            samples: vec![w[0], w[1]],
        })
        .collect();

    // reconcile sign changes with the argument-principle count
    loop {
        let found: usize = brackets.iter().map(Bracket::sign_changes).sum();
        if found == expected {
            break;
        }
        if found > expected {
            return Err(Error::MissedZero {
                lo: t_lo,
                hi: t_hi,
                expected,
                found,
            });
        }
        // Gram's law failed somewhere: a hidden pair sits in a bracket with
        // an even sign-change count. Escalate those first, everything else
        // once they are exhausted.
        let escalate: Vec<usize> = {
            let even: Vec<usize> = brackets
                .iter()
                .enumerate()
                .filter(|(_, b)| {
                    b.sign_changes() % 2 == 0 && b.subdivision() < MAX_BRACKET_SUBDIVISION
                })
                .map(|(i, _)| i)
                .collect();
            if !even.is_empty() {
                even
            } else {
                brackets
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.subdivision() < MAX_BRACKET_SUBDIVISION)
                    .map(|(i, _)| i)
                    .collect()
            }
        };
        if escalate.is_empty() {
            let offending = brackets
                .iter()
                .find(|b| b.sign_changes() % 2 == 0)
                .map(|b| (b.samples[0].0, b.samples.last().unwrap().0))
                .unwrap_or((t_lo, t_hi));
            return Err(Error::MissedZero {
                lo: offending.0,
                hi: offending.1,
                expected,
                found,
            });
        }
        let mut slots: Vec<&mut Bracket> = brackets
            .iter_mut()
            .enumerate()
            .filter(|(i, _)| escalate.binary_search(i).is_ok())
            .map(|(_, b)| b)
            .collect();
        slots
            .par_iter_mut()
            .map(|b| b.refine(cfg))
            .collect::<Result<Vec<_>>>()?;
    }

    let mut intervals = Vec::with_capacity(expected);
    for b in &brackets {
        b.sign_change_intervals(&mut intervals);
    }

    // bisect to a quarter of the contract so that tables over nested ranges
    // agree to within tol per ordinate
    let half_width = DEFAULT_TOL / 4.0;
    let located: Vec<(f64, f64)> = intervals
        .par_iter()
        .map(|&(a, za, b, _)| bisect_sign_change(a, za, b, cfg, half_width))
        .collect::<Result<_>>()?;

    let mut residual_bound: f64 = 0.0;
    let mut ordinates = Vec::with_capacity(located.len());
    for (g, r) in located {
        residual_bound = residual_bound.max(r);
        ordinates.push(g.min(t_hi));
    }

    ZeroTable::from_parts(
        t_hi,
        ordinates,
        DEFAULT_TOL,
        LocalizationMethod::GramBisection,
        expected,
        residual_bound,
    )
}
