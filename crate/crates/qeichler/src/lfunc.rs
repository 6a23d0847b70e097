//! Twisted L-values with analytic continuation, completed L-functions, and
//! the Fricke functional equation.
//!
//! The continuation route is a single entire integral: because the form
//! decays exponentially both at i infinity and at the rational anchor d/c,
//!
//!   I(s) = int_0^infinity f(d/c + iy) y^{s-1} dy
//!
//! converges for every s, and L_f(zeta_c^d; s) = (2 pi)^s I(s) / Gamma(s).
//! The quotient is taken through the reflection formula on Re(s) < 1/2, so
//! the zeros forced by the Gamma poles at the non-positive integers are
//! exact.

use crate::arith::ReducedRational;
use crate::error::{Error, Result};
use crate::forms::{self, CuspFormSpec};
use crate::quad::{integrate_exp_sinh, integrate_log_axis, QuadOptions};
use crate::specfun::{gamma, pow_principal_c, recip_gamma, sin_pi};
use num_complex::Complex64;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// How a twisted L-value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LMethod {
    DirectSeries,
    MellinIntegral,
}

/// A twisted L-value L_f(zeta_c^d; s).
#[derive(Debug, Clone, Copy)]
pub struct LValue {
    pub twist: ReducedRational,
    pub s: Complex64,
    pub value: Complex64,
    pub abs_err: f64,
    pub method: LMethod,
}

/// A completed L-value Lambda_g(s).
#[derive(Debug, Clone, Copy)]
pub struct CompletedLValue {
    pub s: Complex64,
    pub value: Complex64,
    pub abs_err: f64,
}

fn require_supported(spec: &CuspFormSpec) -> Result<()> {
    spec.validate()?;
    if spec.is_zero() {
        return Ok(());
    }
    match &spec.kind {
        forms::FormKind::EtaQuotient { .. } => Ok(()),
        forms::FormKind::UnaryTheta { .. } => {
            if spec.eta_alias().is_some() {
                Ok(())
            } else {
                Err(Error::UnsupportedForm(
                    "L-values need near-real evaluation; no eta alias for this theta".into(),
                ))
            }
        }
        forms::FormKind::Raw { .. } => Err(Error::UnsupportedForm(
            "L-values need near-real evaluation; raw forms carry no transformation law".into(),
        )),
    }
}

/// The entire integral I(s) = int_0^infinity f(d/c + iy) y^{s-1} dy.
fn mellin_integral(
    spec: &CuspFormSpec,
    twist: ReducedRational,
    s: Complex64,
    quad_tol: f64,
) -> Result<(Complex64, f64)> {
    let opt = QuadOptions { tol: quad_tol, rel_tol: 2e-13, h0: 0.5, max_level: 9, ..QuadOptions::default() };
    // y = e^u, y^{s-1} dy = e^{su} du
    let out = integrate_log_axis(
        |y| {
            let f = forms::evaluate_at_rational(spec, twist, y, 1e-16)
                .unwrap_or(Complex64::new(0.0, 0.0));
            if f.re == 0.0 && f.im == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            // multiply by y^{s-1}; the log-axis engine supplies the extra y
            f * pow_principal_c(Complex64::new(y, 0.0), s - 1.0)
        },
        &opt,
    )?;
    Ok((out.value, out.abs_err))
}

/// L_f(zeta_c^d; s) anywhere in C, by Mellin integration of the form along
/// the vertical ray at d/c.
pub fn l_twisted(
    spec: &CuspFormSpec,
    twist: ReducedRational,
    s: Complex64,
    tol: f64,
) -> Result<LValue> {
    require_supported(spec)?;
    if spec.is_zero() {
        return Ok(LValue { twist, s, value: Complex64::new(0.0, 0.0), abs_err: 0.0, method: LMethod::MellinIntegral });
    }
    // L = (2 pi)^s * I(s) / Gamma(s); the reciprocal through the reflection
    // formula for Re(s) < 1/2 so sin(pi s) vanishes exactly at -N_0
    let two_pi_s = pow_principal_c(Complex64::new(TWO_PI, 0.0), s);
    let rg = if s.re >= 0.5 {
        recip_gamma(s)
    } else {
        let g1ms = gamma(Complex64::new(1.0, 0.0) - s)?;
        let sp = sin_pi(s);
        crate::specfun::Estimate::new(
            g1ms.value * sp / std::f64::consts::PI,
            g1ms.abs_err * sp.norm() / std::f64::consts::PI,
        )
    };
    let factor = two_pi_s * rg.value;
    let quad_tol = if factor.norm() > 1e-300 { (0.5 * tol / factor.norm()).min(1.0) } else { 1.0 };
    let (integral, quad_err) = mellin_integral(spec, twist, s, quad_tol)?;
    let value = factor * integral;
    let abs_err = two_pi_s.norm() * (rg.value.norm() * quad_err + rg.abs_err * integral.norm())
        + value.norm() * 1e-13;
    Ok(LValue { twist, s, value, abs_err, method: LMethod::MellinIntegral })
}

/// The plain Dirichlet series sum a(n) e(n d/c) n^{-s}, absolutely convergent
/// for Re(s) > k/2 + 2 under the coefficient bound; the independent route
/// against the Mellin integral.
pub fn l_direct_series(
    spec: &CuspFormSpec,
    twist: ReducedRational,
    s: Complex64,
    tol: f64,
) -> Result<LValue> {
    spec.validate()?;
    if spec.is_zero() {
        return Ok(LValue { twist, s, value: Complex64::new(0.0, 0.0), abs_err: 0.0, method: LMethod::DirectSeries });
    }
    let sigma = s.re;
    let p = spec.weight.to_f64() / 2.0 + 1.0;
    if sigma <= p + 1.0 + 1e-9 {
        return Err(Error::Domain(format!(
            "direct series needs Re(s) > k/2 + 2 = {}, got {sigma}",
            p + 1.0
        )));
    }
    let (dn, dc) = (twist.numer(), twist.denom());
    let partial = |qe: &forms::QExpansion, from: usize, to: usize| -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for n in (from + 1)..=to {
            let a = qe.coeff(n);
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            let phase = forms::root_of_unity(
                ((n as i128 * dn as i128).rem_euclid(dc as i128)) as i64,
                dc,
            );
            sum += a * phase * pow_principal_c(Complex64::new(n as f64, 0.0), -s);
        }
        sum
    };
    // sum in doubling blocks until two consecutive blocks are negligible;
    // the terms decay like n^{p - sigma} with sigma - p > 1
    let mut m = 1024usize;
    let mut qe = forms::expand(spec, m)?;
    let mut sum = partial(&qe, 0, m);
    let mut small_blocks = 0u32;
    let last_block = loop {
        if m >= (1 << 22) {
            return Err(Error::Budget { needed: m * 2, cap: 1 << 22 });
        }
        qe = forms::expand(spec, 2 * m)?;
        let block = partial(&qe, m, 2 * m);
        sum += block;
        m *= 2;
        let size = block.norm();
        if size <= 0.25 * tol {
            small_blocks += 1;
            if small_blocks >= 2 {
                break size;
            }
        } else {
            small_blocks = 0;
        }
    };
    Ok(LValue {
        twist,
        s,
        value: sum,
        abs_err: 4.0 * last_block + sum.norm() * 1e-14,
        method: LMethod::DirectSeries,
    })
}

/// Report of |L(-m)| for m = 0..=m_max.
#[derive(Debug, Clone)]
pub struct VanishingReport {
    pub twist: ReducedRational,
    pub values: Vec<LValue>,
    pub max_abs: f64,
}

impl VanishingReport {
    pub fn pass(&self, threshold: f64) -> bool {
        self.max_abs <= threshold
    }
}

/// |L_f(zeta_c^d; -m)| for m = 0..=m_max; Lemma-vanishing verification.
pub fn l_vanishing_check(
    spec: &CuspFormSpec,
    twist: ReducedRational,
    m_max: u32,
    tol: f64,
) -> Result<VanishingReport> {
    let mut values = Vec::with_capacity(m_max as usize + 1);
    let mut max_abs: f64 = 0.0;
    for m in 0..=m_max {
        let lv = l_twisted(spec, twist, Complex64::new(-(m as f64), 0.0), tol)?;
        max_abs = max_abs.max(lv.value.norm());
        values.push(lv);
    }
    Ok(VanishingReport { twist, values, max_abs })
}

/// Completed L-function by the split integral
/// Lambda_g(s) = int_1^inf g|W_N(iv/sqrt N) v^{k-s-1} dv
///             + int_1^inf g(iv/sqrt N) v^{s-1} dv,
/// entire in s.
pub fn lambda_completed(
    spec: &CuspFormSpec,
    s: Complex64,
    level: u64,
    tol: f64,
) -> Result<CompletedLValue> {
    require_supported(spec)?;
    if spec.is_zero() {
        return Ok(CompletedLValue { s, value: Complex64::new(0.0, 0.0), abs_err: 0.0 });
    }
    let k = Complex64::new(spec.weight.to_f64(), 0.0);
    let image = forms::fricke_image(spec, level)?;
    let sqrt_n = (level as f64).sqrt();
    let origin = ReducedRational::zero();
    let piece = |form: &CuspFormSpec, expo: Complex64| -> Result<(Complex64, f64)> {
        let out = integrate_exp_sinh(
            |y| {
                let v = 1.0 + y;
                let f = forms::evaluate_at_rational(form, origin, v / sqrt_n, 1e-16)
                    .unwrap_or(Complex64::new(0.0, 0.0));
                if f.re == 0.0 && f.im == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                f * pow_principal_c(Complex64::new(v, 0.0), expo - 1.0)
            },
            &QuadOptions { tol: 0.25 * tol, rel_tol: 2e-13, ..QuadOptions::default() },
        )?;
        Ok((out.value, out.abs_err))
    };
    let (first, e1) = piece(&image, k - s)?;
    let (second, e2) = piece(spec, s)?;
    Ok(CompletedLValue { s, value: first + second, abs_err: e1 + e2 + (first + second).norm() * 1e-14 })
}

/// Functional-equation residuals |Lambda_g(s) - Lambda_{g|W_N}(k-s)| over a grid.
#[derive(Debug, Clone)]
pub struct FuncEqReport {
    pub residuals: Vec<(Complex64, f64)>,
    pub max_residual: f64,
}

impl FuncEqReport {
    pub fn pass(&self, threshold: f64) -> bool {
        self.max_residual <= threshold
    }
}

pub fn functional_equation_residual(
    spec: &CuspFormSpec,
    s_grid: &[Complex64],
    level: u64,
    tol: f64,
) -> Result<FuncEqReport> {
    let k = Complex64::new(spec.weight.to_f64(), 0.0);
    let image = if spec.is_zero() { spec.clone() } else { forms::fricke_image(spec, level)? };
    let mut residuals = Vec::with_capacity(s_grid.len());
    let mut max_residual: f64 = 0.0;
    for &s in s_grid {
        // left side: the split integral (entire route)
        let lhs = lambda_completed(spec, s, level, tol)?;
        // right side: the unsplit route Lambda(w) = N^{w/2} I(w) with
        // I(w) = int_0^inf g(iy) y^{w-1} dy on the Fricke image. For
        // Fricke-invariant forms the two split integrals coincide term by
        // term, so the comparison must cross routes to carry information.
        let rhs = if spec.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            let ks = k - s;
            let quad_tol = (0.25 * tol).min(1.0);
            let (integral, _) = mellin_integral(&image, ReducedRational::zero(), ks, quad_tol)?;
            pow_principal_c(Complex64::new(level as f64, 0.0), ks / 2.0) * integral
        };
        let r = (lhs.value - rhs).norm();
        max_residual = max_residual.max(r);
        residuals.push((s, r));
    }
    Ok(FuncEqReport { residuals, max_residual })
}

/// Samples of |L(x + it)| on a vertical line, with a fitted growth exponent.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub samples: Vec<(f64, f64)>,
    /// Least-squares slope of log |L| against log t; None when the values
    /// vanish identically.
    pub exponent: Option<f64>,
}

pub fn vertical_growth_probe(
    spec: &CuspFormSpec,
    twist: ReducedRational,
    x: f64,
    t_max: f64,
    n_samples: usize,
    tol: f64,
) -> Result<GrowthReport> {
    let mut samples = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let t = 1.0 + (t_max - 1.0) * i as f64 / (n_samples.max(2) - 1) as f64;
        let lv = l_twisted(spec, twist, Complex64::new(x, t), tol)?;
        samples.push((t, lv.value.norm()));
    }
    let finite: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(_, a)| a > 1e-300)
        .map(|(t, a)| (t.ln(), a.ln()))
        .collect();
    let exponent = if finite.len() >= 2 {
        Some(least_squares_slope(&finite))
    } else {
        None
    };
    Ok(GrowthReport { samples, exponent })
}

pub(crate) fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
