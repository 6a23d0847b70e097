//! Quadrature engines for integrals over (0, infinity).
//!
//! Two substitutions are provided. `integrate_log_axis` sets y = e^u and
//! applies the trapezoid rule on a uniform u-grid; it is spectrally accurate
//! for integrands decaying double-exponentially at both ends after the
//! substitution (cusp-form decay e^{-A/y} at 0 and e^{-By} at infinity).
//! `integrate_exp_sinh` sets y = exp(lambda sinh t) and handles integrands
//! with a regular (or mildly singular) left endpoint.
//!
//! Both refine the step until two successive halvings agree, and report the
//! last halving difference as the error estimate.

use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Absolute tolerance target.
    pub tol: f64,
    /// Relative tolerance floor; convergence uses max(tol, rel_tol * |I|).
    pub rel_tol: f64,
    /// Initial step in the transformed variable.
    pub h0: f64,
    /// Number of step halvings to attempt.
    pub max_level: u32,
    /// Cap on total integrand evaluations.
    pub max_evals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            tol: 1e-11,
            rel_tol: 5e-14,
            h0: 0.5,
            max_level: 10,
            max_evals: 4_000_000,
        }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: Complex64,
    pub abs_err: f64,
    pub evals: usize,
}

/// Trapezoid sum h * sum_j G(j h) over the whole real line, expanding
/// outward until terms fall below `peak * CUTOFF` for several consecutive
/// steps on each side.
fn line_sum<G: Fn(f64) -> Complex64>(
    g: &G,
    h: f64,
    evals: &mut usize,
    max_evals: usize,
) -> Result<Complex64> {
    const CUTOFF: f64 = 1e-19;
    const CONSECUTIVE: u32 = 4;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut peak: f64 = 0.0;

    let center = g(0.0);
    *evals += 1;
    sum += center;
    peak = peak.max(center.norm());

    for dir in [1.0f64, -1.0] {
        let mut below = 0u32;
        let mut j = 1u64;
        loop {
            if *evals >= max_evals {
                return Err(Error::Quadrature { achieved: f64::INFINITY, requested: 0.0 });
            }
            let t = dir * j as f64 * h;
            let v = g(t);
            *evals += 1;
            sum += v;
            let n = v.norm();
            if n > peak {
                peak = n;
                below = 0;
            } else if n <= peak * CUTOFF {
                below += 1;
                if below >= CONSECUTIVE {
                    break;
                }
            } else {
                below = 0;
            }
            j += 1;
        }
    }
    Ok(sum * h)
}

fn refine<G: Fn(f64) -> Complex64>(g: G, opt: &QuadOptions) -> Result<QuadOutcome> {
    let mut evals = 0usize;
    let mut h = opt.h0;
    let mut prev = line_sum(&g, h, &mut evals, opt.max_evals)?;
    let mut err = f64::INFINITY;
    for _ in 0..opt.max_level {
        h *= 0.5;
        let cur = line_sum(&g, h, &mut evals, opt.max_evals)?;
        err = (cur - prev).norm();
        prev = cur;
        let target = opt.tol.max(opt.rel_tol * cur.norm());
        if err <= 0.25 * target {
            return Ok(QuadOutcome { value: cur, abs_err: err, evals });
        }
    }
    // Accept a result that met the target without margin, otherwise fail.
    let target = opt.tol.max(opt.rel_tol * prev.norm());
    if err <= target {
        Ok(QuadOutcome { value: prev, abs_err: err, evals })
    } else {
        Err(Error::Quadrature { achieved: err, requested: target })
    }
}

/// Integral of f over (0, infinity) via y = e^u.
///
/// The integrand must decay at least double-exponentially in u at both ends
/// (after the substitution); cusp forms restricted to vertical rays do.
pub fn integrate_log_axis<F: Fn(f64) -> Complex64>(f: F, opt: &QuadOptions) -> Result<QuadOutcome> {
    refine(
        move |u| {
            let y = u.exp();
            let v = f(y);
            if v.re == 0.0 && v.im == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            v * y
        },
        opt,
    )
}

/// Integral of f over (0, infinity) via y = exp(lambda sinh t).
///
/// Tolerates algebraic behaviour y^alpha (alpha > -1) at the left endpoint
/// and requires exponential decay at infinity.
pub fn integrate_exp_sinh<F: Fn(f64) -> Complex64>(f: F, opt: &QuadOptions) -> Result<QuadOutcome> {
    const LAMBDA: f64 = std::f64::consts::FRAC_PI_2;
    refine(
        move |t| {
            let ln_y = LAMBDA * t.sinh();
            // beyond these bounds the weight or the integrand underflows
            if !(-700.0..=690.0).contains(&ln_y) {
                return Complex64::new(0.0, 0.0);
            }
            let y = ln_y.exp();
            let v = f(y);
            if v.re == 0.0 && v.im == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            v * y * LAMBDA * t.cosh()
        },
        opt,
    )
}
