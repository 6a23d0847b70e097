//! The quantum modular form Q_f on the rationals, its period-integral
//! cocycle, the modularity residual, cocycle smoothness scans, and the
//! finite evaluation of Kontsevich's strange function at roots of unity.
//!
//! Q_f(d/c) = L_f(zeta_c^d; k-1), and for gamma in Gamma_0(N)
//!
//!   Q(x) - chi(d) chi_{-4}(d) mu_{2-k}(gamma, x) Q(gamma x) = r_gamma(x),
//!
//! where mu_{2-k} is the weight-(2-k) slash multiplier, chi is the
//! Nebentypus of the form, and r_gamma is a period integral along the
//! vertical ray over gamma^{-1}(infinity) = -d/c, real-analytic away from
//! that point. At a real x the power (c x + d)^{-(2-k)} carries the branch
//! limiting from the lower half-plane, where the transformation law lives.

use crate::arith::{kronecker, slash_multiplier, GroupElement, ReducedRational};
use crate::error::{Error, Result};
use crate::forms::{self, root_of_unity, CuspFormSpec};
use crate::lfunc;
use crate::quad::{integrate_log_axis, QuadOptions};
use crate::specfun::gamma;
use crate::tol;
use num_complex::Complex64;
use num_rational::Ratio;

const PI: f64 = std::f64::consts::PI;
const TWO_PI: f64 = 2.0 * PI;

/// The value of the quantum modular form at a rational point.
#[derive(Debug, Clone, Copy)]
pub struct QuantumValue {
    pub point: ReducedRational,
    pub value: Complex64,
    pub abs_err: f64,
}

/// Q_f(d/c) = L_f(zeta_c^d; k-1).
pub fn q_value(spec: &CuspFormSpec, point: ReducedRational, tol: f64) -> Result<QuantumValue> {
    let s = Complex64::new(spec.weight.to_f64() - 1.0, 0.0);
    let lv = lfunc::l_twisted(spec, point, s, tol)?;
    Ok(QuantumValue { point, value: lv.value, abs_err: lv.abs_err })
}

/// A period-integral cocycle value with conditioning information.
#[derive(Debug, Clone, Copy)]
pub struct CocycleValue {
    pub value: Complex64,
    pub abs_err: f64,
    /// Set when x lies within the proximity threshold of the singularity;
    /// the quadrature conditioning degrades there.
    pub conditioning_warning: bool,
}

fn normalize(gamma: &GroupElement) -> GroupElement {
    if gamma.c < 0 || (gamma.c == 0 && gamma.d < 0) {
        gamma.neg()
    } else {
        *gamma
    }
}

/// r_gamma(x) = (-2 pi i)^{k-1} / Gamma(k-1) * int_{-d/c}^{i inf} f(w) (w-x)^{k-2} dw
/// for real x != -d/c; identically zero for translations.
pub fn cocycle_integral(
    spec: &CuspFormSpec,
    gamma: &GroupElement,
    x: f64,
    tol: f64,
) -> Result<CocycleValue> {
    spec.validate()?;
    let g = normalize(gamma);
    if !crate::arith::in_gamma0(&g, spec.level) {
        return Err(Error::Domain(format!(
            "gamma has c = {} not divisible by the level {}",
            g.c, spec.level
        )));
    }
    if g.c == 0 || spec.is_zero() {
        return Ok(CocycleValue { value: Complex64::new(0.0, 0.0), abs_err: 0.0, conditioning_warning: false });
    }
    let anchor = ReducedRational::new(-g.d, g.c)?;
    let offset = anchor.to_f64() - x;
    if offset.abs() < 1e-12 {
        return Err(Error::Domain(format!("x = {x} sits on the cocycle singularity {anchor}")));
    }
    let conditioning_warning = offset.abs() < tol::COCYCLE_PROXIMITY_WARNING;
    let k = spec.weight.to_f64();
    let gk1 = gamma_prefactor(k)?;
    let quad_tol = (0.5 * tol / gk1.norm()).min(1.0);
    // path w = -d/c + i y: dw = i dy folds into the (w - x)^{k-2} constant
    let out = integrate_log_axis(
        |y| {
            let f = forms::evaluate_at_rational(spec, anchor, y, 1e-16)
                .unwrap_or(Complex64::new(0.0, 0.0));
            if f.re == 0.0 && f.im == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let base = Complex64::new(offset, y);
            f * crate::arith::pow_principal(base, k - 2.0)
        },
        &QuadOptions { tol: quad_tol, rel_tol: 2e-13, ..QuadOptions::default() },
    )?;
    let value = gk1 * Complex64::new(0.0, 1.0) * out.value;
    Ok(CocycleValue {
        value,
        abs_err: gk1.norm() * out.abs_err + value.norm() * 1e-13,
        conditioning_warning,
    })
}

fn gamma_prefactor(k: f64) -> Result<Complex64> {
    let gk1 = gamma(Complex64::new(k - 1.0, 0.0))?.value;
    Ok(crate::arith::pow_principal(Complex64::new(0.0, -TWO_PI), k - 1.0) / gk1)
}

/// The weight-(2-k) slash multiplier at a real point, with the power branch
/// taken as the limit from the lower half-plane (arg -> -pi on the negative
/// axis). A negative-zero imaginary part encodes that limit exactly.
pub fn real_slash_multiplier(
    gamma: &GroupElement,
    x: ReducedRational,
    spec: &CuspFormSpec,
) -> Result<Complex64> {
    let g = normalize(gamma);
    let czd_exact = Ratio::new(
        g.c as i128 * x.numer() as i128 + g.d as i128 * x.denom() as i128,
        x.denom() as i128,
    );
    let czd = Complex64::new(*czd_exact.numer() as f64 / *czd_exact.denom() as f64, -0.0);
    slash_multiplier(&g, czd, spec.weight.two_minus())
}

/// All the pieces of the quantum-modularity relation at (gamma, x).
#[derive(Debug, Clone, Copy)]
pub struct ResidualReport {
    pub residual: Complex64,
    pub abs_err: f64,
    pub q_x: Complex64,
    pub q_gamma_x: Complex64,
    pub multiplier: Complex64,
    pub cocycle: Complex64,
}

/// Q(x) - chi(d) chi_{-4}(d) mu_{2-k}(gamma, x) Q(gamma x) - r_gamma(x).
pub fn modularity_residual(
    spec: &CuspFormSpec,
    gamma: &GroupElement,
    x: ReducedRational,
    tol: f64,
) -> Result<ResidualReport> {
    let g = normalize(gamma);
    if let Some(excl) = g.excluded_point() {
        if excl == x {
            return Err(Error::Domain(format!("x = {x} is the excluded point of gamma")));
        }
    }
    let gx = g.apply_rational(x)?;
    let q_x = q_value(spec, x, tol)?;
    let q_gx = q_value(spec, gx, tol)?;
    let mu = real_slash_multiplier(&g, x, spec)?;
    let chi = (kronecker(-4, g.d) * kronecker(spec.nebentypus, g.d)) as f64;
    let r = cocycle_integral(spec, &g, x.to_f64(), tol)?;
    let residual = q_x.value - chi * mu * q_gx.value - r.value;
    Ok(ResidualReport {
        residual,
        abs_err: q_x.abs_err + mu.norm() * q_gx.abs_err + r.abs_err,
        q_x: q_x.value,
        q_gamma_x: q_gx.value,
        multiplier: chi * mu,
        cocycle: r.value,
    })
}

/// Uniform samples of the cocycle over an interval, with finite-difference
/// derivative estimates up to order three.
#[derive(Debug, Clone)]
pub struct CocycleReport {
    pub gamma: GroupElement,
    pub excluded: Option<ReducedRational>,
    pub samples: Vec<(f64, Complex64)>,
    /// max |Delta^o f| / h^o over the grid, o = 1, 2, 3.
    pub derivative_estimates: [f64; 3],
}

pub fn cocycle_scan(
    spec: &CuspFormSpec,
    gamma: &GroupElement,
    interval: (f64, f64),
    n_samples: usize,
    tol: f64,
) -> Result<CocycleReport> {
    let (a, b) = interval;
    if !(a < b) || n_samples < 5 {
        return Err(Error::Domain("scan needs a < b and at least 5 samples".into()));
    }
    let g = normalize(gamma);
    let excluded = g.excluded_point();
    if let Some(e) = excluded {
        let ef = e.to_f64();
        if ef >= a - tol::SCAN_EXCLUSION_RADIUS && ef <= b + tol::SCAN_EXCLUSION_RADIUS {
            return Err(Error::Domain(format!(
                "interval [{a}, {b}] meets the exclusion ball around the singularity {e}"
            )));
        }
    }
    let h = (b - a) / (n_samples - 1) as f64;
    let mut samples = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let x = a + h * i as f64;
        let v = cocycle_integral(spec, &g, x, tol)?;
        samples.push((x, v.value));
    }
    // estimates[o-1] = max |Delta^o f| / h^o
    let mut derivative_estimates = [0.0f64; 3];
    let mut diff: Vec<Complex64> = samples.iter().map(|&(_, v)| v).collect();
    let mut hp = 1.0;
    for est in derivative_estimates.iter_mut() {
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        hp *= h;
        *est = diff.iter().map(|d| d.norm()).fold(0.0, f64::max) / hp;
    }
    Ok(CocycleReport { gamma: g, excluded, samples, derivative_estimates })
}

/// Decay constant A of the form along the vertical ray over x, in units of
/// the expansion variable t = 2 pi Im(tau): |f(x + it/2pi)| ~ e^{-A/t}.
///
/// For an eta quotient the leading theta term of each factor contributes
/// r pi^2 / (6 q^2 m), where q is the reduced denominator of m x. The
/// asymptotic expansions at x have coefficients growing like n! A^{-n}, so
/// extrapolation windows must shrink proportionally to A.
pub fn radial_decay_constant(spec: &CuspFormSpec, x: ReducedRational) -> Option<f64> {
    let factors: Vec<(u32, i32)> = match &spec.kind {
        forms::FormKind::EtaQuotient { factors, .. } => factors.clone(),
        forms::FormKind::UnaryTheta { .. } => match spec.eta_alias() {
            Some(alias) => return radial_decay_constant(&alias, x),
            None => return None,
        },
        forms::FormKind::Raw { .. } => return None,
    };
    let mut a = 0.0f64;
    for (m, r) in factors {
        if r <= 0 {
            continue;
        }
        let num = m as i64 * x.numer();
        let den = x.denom();
        let g = num_integer::Integer::gcd(&num, &den);
        let q = (den / g) as f64;
        a += r as f64 * PI * PI / (6.0 * q * q * m as f64);
    }
    Some(a)
}

/// The radial-limit route to Q(x): Richardson extrapolation of the
/// holomorphic Eichler integral along tau = x + it/2pi, t -> 0+, with the
/// geometric window sized from the decay constant.
pub fn q_radial_limit(spec: &CuspFormSpec, x: ReducedRational, tol: f64) -> Result<Complex64> {
    spec.validate()?;
    if spec.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let a = radial_decay_constant(spec, x).unwrap_or(0.2);
    let t0 = (a / 4.0).min(0.05);
    let nodes = 7usize;
    let mut ts = Vec::with_capacity(nodes);
    let mut ys = Vec::with_capacity(nodes);
    let mut t = t0;
    for _ in 0..nodes {
        ts.push(t);
        ys.push(crate::eichler::tilde_f_at(spec, x, t, tol)?);
        t *= 0.5;
    }
    Ok(crate::eichler::richardson_limit(&ts, &ys))
}

/// Kontsevich's strange function F(q) = sum_n (q; q)_n at the root of unity
/// q = e(a/b): the sum is finite because (q; q)_n vanishes once n >= b.
/// All phases are exact roots of unity; no truncation is involved.
pub fn strange_function(exponent: ReducedRational) -> Complex64 {
    let b = exponent.denom();
    let a = exponent.numer();
    let mut total = Complex64::new(1.0, 0.0); // n = 0 term: empty product
    let mut pochhammer = Complex64::new(1.0, 0.0);
    for n in 1..b {
        let zn = root_of_unity(((a as i128 * n as i128).rem_euclid(b as i128)) as i64, b);
        pochhammer *= Complex64::new(1.0, 0.0) - zn;
        total += pochhammer;
    }
    total
}
