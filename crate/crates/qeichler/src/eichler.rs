//! The two Eichler integrals of a half-integral weight cusp form: the
//! holomorphic one on the upper half-plane (termwise antiderivative of the
//! q-series) and the non-holomorphic one on the lower half-plane (period
//! integral, equivalently an incomplete-Gamma series), together with their
//! asymptotic expansions at rational points.
//!
//! At a rational d/c the two expansions share coefficients up to the sign
//! pattern (-t)^n, and the coefficients are exact L-values:
//! beta(n) = (-1)^n / n! * L_f(zeta_c^d; k - 1 - n).

use crate::arith::ReducedRational;
use crate::error::{Error, Result};
use crate::forms::{self, CuspFormSpec};
use crate::lfunc::{self, LValue};
use crate::quad::{integrate_exp_sinh, QuadOptions};
use crate::specfun::{gamma, inc_gamma_upper_scaled};
use crate::tol;
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;
const TWO_PI: f64 = 2.0 * PI;

/// Hard cap on series terms for the incomplete-Gamma expansion of f*.
const FSTAR_SERIES_CAP: usize = 400_000;

/// The holomorphic Eichler integral sum a(n) n^{1-k} q^n at a general point
/// of the upper half-plane, certified to tol.
pub fn tilde_f(spec: &CuspFormSpec, tau: Complex64, tol: f64) -> Result<Complex64> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("tilde_f needs Im > 0, got {}", tau.im)));
    }
    spec.validate()?;
    if spec.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let one_minus_k = 1.0 - spec.weight.to_f64();
    let qe = certified(spec, tau.im, one_minus_k, tol)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, a) in qe.coeffs().iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let n = (i + 1) as f64;
        sum += a * n.powf(one_minus_k) * (Complex64::new(0.0, TWO_PI) * tau * n).exp();
    }
    Ok(sum)
}

/// tilde_f at tau = x + i t / (2 pi) for rational x, with exact
/// root-of-unity phases e(n x).
pub fn tilde_f_at(spec: &CuspFormSpec, x: ReducedRational, t: f64, tol: f64) -> Result<Complex64> {
    if t <= 0.0 {
        return Err(Error::Domain(format!("tilde_f_at needs t > 0, got {t}")));
    }
    spec.validate()?;
    if spec.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let one_minus_k = 1.0 - spec.weight.to_f64();
    let v = t / TWO_PI;
    let qe = certified(spec, v, one_minus_k, tol)?;
    let (p, q) = (x.numer(), x.denom());
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, a) in qe.coeffs().iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let n = (i + 1) as i64;
        let phase =
            forms::root_of_unity(((n as i128 * p as i128).rem_euclid(q as i128)) as i64, q);
        sum += a * phase * (n as f64).powf(one_minus_k) * (-(n as f64) * t).exp();
    }
    Ok(sum)
}

fn certified(
    spec: &CuspFormSpec,
    v: f64,
    extra_pow: f64,
    tol: f64,
) -> Result<forms::QExpansion> {
    let mut m = 64usize;
    loop {
        let qe = forms::expand(spec, m)?;
        if qe.tail_bound(v, extra_pow) <= 0.5 * tol {
            return Ok(qe);
        }
        if m >= (1 << 22) {
            return Err(Error::Budget { needed: 2 * m, cap: 1 << 22 });
        }
        m *= 2;
    }
}

/// The non-holomorphic Eichler integral on the lower half-plane by its
/// incomplete-Gamma series, at tau = x + i v with v < 0:
///
///   f*(tau) = Gamma(k-1)^{-1} sum a(n) n^{1-k} e^{2 pi i n tau} Gamma(k-1, 4 pi n |v|).
///
/// Each term is assembled from the scaled incomplete Gamma so that the
/// growing phase factor and the decaying Gamma never overflow separately.
pub fn f_star_series(spec: &CuspFormSpec, x: ReducedRational, v: f64, tol: f64) -> Result<Complex64> {
    if v >= 0.0 {
        return Err(Error::Domain(format!("f_star needs Im < 0, got {v}")));
    }
    spec.validate()?;
    if spec.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let k = spec.weight.to_f64();
    let av = -v;
    let gk1 = gamma(Complex64::new(k - 1.0, 0.0))?.value;
    // term bound: C n^{k/2+1} n^{1-k} e^{-2 pi n |v|} sup|G(k-1, 4 pi n |v|)|
    let g_sup = 10.0 * (1.0 + (4.0 * PI * av).powf((k - 2.0).min(0.0)));
    let needed_tol = tol * gk1.norm() / g_sup;
    let mut m = 64usize;
    let qe = loop {
        let qe = forms::expand(spec, m)?;
        if qe.tail_bound(av, 1.0 - k) <= 0.5 * needed_tol {
            break qe;
        }
        if m >= FSTAR_SERIES_CAP {
            return Err(Error::Budget { needed: 2 * m, cap: FSTAR_SERIES_CAP });
        }
        m *= 2;
    };
    let km1 = Complex64::new(k - 1.0, 0.0);
    let (p, q) = (x.numer(), x.denom());
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, a) in qe.coeffs().iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let n = (i + 1) as i64;
        let nf = n as f64;
        let phase =
            forms::root_of_unity(((n as i128 * p as i128).rem_euclid(q as i128)) as i64, q);
        // e^{2 pi i n tau} Gamma(k-1, 4 pi n |v|) = phase * e^{-2 pi n |v|} * G(k-1, 4 pi n |v|)
        let g = inc_gamma_upper_scaled(km1, 4.0 * PI * nf * av)?.value;
        sum += a * phase * nf.powf(1.0 - k) * (-TWO_PI * nf * av).exp() * g;
    }
    Ok(sum / gk1)
}

/// The same value by quadrature of the defining period integral along the
/// vertical ray from the reflected point:
///
///   f*(tau) = (-2 pi i)^{k-1} / Gamma(k-1) * int_{conj(tau)}^{i inf} f(w) (w - tau)^{k-2} dw.
pub fn f_star_integral(
    spec: &CuspFormSpec,
    x: ReducedRational,
    v: f64,
    tol: f64,
) -> Result<Complex64> {
    if v >= 0.0 {
        return Err(Error::Domain(format!("f_star needs Im < 0, got {v}")));
    }
    spec.validate()?;
    if spec.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let k = spec.weight.to_f64();
    let av = -v;
    let gk1 = gamma(Complex64::new(k - 1.0, 0.0))?.value;
    // (-2 pi i)^{k-1} i^{k-1} after pulling dw = i dy and (i(y+2|v|))^{k-2}
    // = i^{k-2} (y+2|v|)^{k-2} out of the integrand
    let pref = crate::arith::pow_principal(Complex64::new(0.0, -TWO_PI), k - 1.0)
        * Complex64::from_polar(1.0, PI * (k - 1.0) / 2.0)
        / gk1;
    let quad_tol = (0.5 * tol / pref.norm()).min(1.0);
    let out = integrate_exp_sinh(
        |y| {
            let f = forms::evaluate_at_rational_unrestricted(spec, x, av + y, 1e-16)
                .unwrap_or(Complex64::new(0.0, 0.0));
            if f.re == 0.0 && f.im == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            f * (y + 2.0 * av).powf(k - 2.0)
        },
        &QuadOptions { tol: quad_tol, rel_tol: 2e-13, ..QuadOptions::default() },
    )?;
    Ok(pref * out.value)
}

/// Asymptotic-expansion coefficients of the two Eichler integrals at d/c.
#[derive(Debug, Clone)]
pub struct AsymptoticExpansion {
    pub base: ReducedRational,
    /// Coefficients of t^n for tilde_f(d/c + it/2pi): (-1)^n/n! L(k-1-n).
    pub upper: Vec<Complex64>,
    /// Coefficients of t^n for f*(d/c - it/2pi): 1/n! L(k-1-n);
    /// equivalently the upper coefficients read against (-t)^n.
    pub lower: Vec<Complex64>,
    pub abs_errs: Vec<f64>,
    /// The L-values the coefficients came from.
    pub l_values: Vec<LValue>,
}

/// Exact expansion coefficients through order m-1 from the twisted L-values
/// at s = k-1, k-2, ..., capped at order 12 (the conditioning grows
/// factorially).
pub fn asymptotic_coeffs(
    spec: &CuspFormSpec,
    base: ReducedRational,
    m: usize,
    tol: f64,
) -> Result<AsymptoticExpansion> {
    if m > tol::MAX_EXPANSION_ORDER {
        return Err(Error::Domain(format!(
            "expansion order {m} exceeds the cap {}",
            tol::MAX_EXPANSION_ORDER
        )));
    }
    spec.validate()?;
    let k = spec.weight.to_f64();
    let mut upper = Vec::with_capacity(m);
    let mut lower = Vec::with_capacity(m);
    let mut abs_errs = Vec::with_capacity(m);
    let mut l_values = Vec::with_capacity(m);
    let mut factorial = 1.0f64;
    for n in 0..m {
        if n > 0 {
            factorial *= n as f64;
        }
        let s = Complex64::new(k - 1.0 - n as f64, 0.0);
        let lv = if spec.is_zero() {
            LValue {
                twist: base,
                s,
                value: Complex64::new(0.0, 0.0),
                abs_err: 0.0,
                method: lfunc::LMethod::MellinIntegral,
            }
        } else {
            lfunc::l_twisted(spec, base, s, tol)?
        };
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        upper.push(lv.value * sign / factorial);
        lower.push(lv.value / factorial);
        abs_errs.push(lv.abs_err / factorial);
        l_values.push(lv);
    }
    Ok(AsymptoticExpansion { base, upper, lower, abs_errs, l_values })
}

/// Residuals of the order-M truncations on both sides of the real line and
/// their fitted decay exponents.
#[derive(Debug, Clone)]
pub struct AgreementReport {
    pub base: ReducedRational,
    pub order: usize,
    pub t_grid: Vec<f64>,
    pub upper_residuals: Vec<f64>,
    pub lower_residuals: Vec<f64>,
    /// Fitted slope of log|R| vs log t; infinite when the residuals vanish.
    pub upper_exponent: f64,
    pub lower_exponent: f64,
}

impl AgreementReport {
    pub fn pass(&self) -> bool {
        let want = self.order as f64 - tol::EXPANSION_EXPONENT_SLACK;
        self.upper_exponent >= want && self.lower_exponent >= want
    }
}

/// Evaluate both Eichler integrals along t -> 0+ at d/c, subtract the
/// order-M models, and fit the decay exponents of the remainders.
pub fn expansion_agreement_check(
    spec: &CuspFormSpec,
    base: ReducedRational,
    t_grid: &[f64],
    m: usize,
    tol: f64,
) -> Result<AgreementReport> {
    if t_grid.len() < 2 || t_grid.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Domain("t grid must be decreasing with at least 2 points".into()));
    }
    let exp = asymptotic_coeffs(spec, base, m, (tol * 1e-2).max(1e-12))?;
    let mut upper_residuals = Vec::with_capacity(t_grid.len());
    let mut lower_residuals = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let up = tilde_f_at(spec, base, t, tol)?;
        let lo = f_star_series(spec, base, -t / TWO_PI, tol)?;
        let mut model_up = Complex64::new(0.0, 0.0);
        let mut model_lo = Complex64::new(0.0, 0.0);
        let mut tn = 1.0f64;
        for n in 0..m {
            model_up += exp.upper[n] * tn;
            model_lo += exp.lower[n] * tn;
            tn *= t;
        }
        upper_residuals.push((up - model_up).norm());
        lower_residuals.push((lo - model_lo).norm());
    }
    let fit = |rs: &[f64]| -> f64 {
        let pts: Vec<(f64, f64)> = t_grid
            .iter()
            .zip(rs)
            .filter(|&(_, &r)| r > 1e-14)
            .map(|(&t, &r)| (t.ln(), r.ln()))
            .collect();
        if pts.len() < 2 {
            f64::INFINITY
        } else {
            lfunc::least_squares_slope(&pts)
        }
    };
    let upper_exponent = fit(&upper_residuals);
    let lower_exponent = fit(&lower_residuals);
    Ok(AgreementReport {
        base,
        order: m,
        t_grid: t_grid.to_vec(),
        upper_residuals,
        lower_residuals,
        upper_exponent,
        lower_exponent,
    })
}

/// Polynomial extrapolation of samples (t_i, y_i) to t = 0 (Neville).
pub fn richardson_limit(ts: &[f64], ys: &[Complex64]) -> Complex64 {
    let mut tableau: Vec<Complex64> = ys.to_vec();
    let n = tableau.len();
    for level in 1..n {
        for i in 0..(n - level) {
            let t0 = ts[i];
            let t1 = ts[i + level];
            tableau[i] = (tableau[i + 1] * t0 - tableau[i] * t1) / (t0 - t1);
        }
    }
    tableau[0]
}

/// Least-squares-free exact fit of a degree-(n-1) polynomial through n
/// sample points; returns the coefficients (constant first).
pub fn fit_polynomial(ts: &[f64], ys: &[Complex64]) -> Vec<Complex64> {
    let n = ts.len();
    assert_eq!(n, ys.len());
    // Vandermonde solve by Gaussian elimination with partial pivoting
    let mut a = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n];
    for (i, &t) in ts.iter().enumerate() {
        let mut p = 1.0;
        for j in 0..n {
            a[i][j] = Complex64::new(p, 0.0);
            p *= t;
        }
        a[i][n] = ys[i];
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
            .unwrap();
        a.swap(col, piv);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            for j in col..=n {
                let above = a[col][j];
                a[row][j] -= f * above;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = a[row][n];
        for j in (row + 1)..n {
            acc -= a[row][j] * x[j];
        }
        x[row] = acc / a[row][row];
    }
    x
}
