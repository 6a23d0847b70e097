//! Cusp-form representations and their evaluation anywhere in the upper
//! half-plane.
//!
//! Supported families: eta quotients prod eta(m tau)^r (exact SL_2(Z)
//! transformation law through the Dedekind eta multiplier), unary theta
//! series (q-expansions always; near-real evaluation through their eta
//! aliases), and raw coefficient lists (upper region only).
//!
//! Near the real axis a form is evaluated by moving each eta argument to a
//! point of large imaginary part with the exact cusp-directed matrix
//! (a, b; q, -p), for which c z + d = i q delta is purely imaginary and free
//! of cancellation.

use crate::arith::{dedekind_sum, pow_principal, GroupElement, HalfInteger, ReducedRational};
use crate::error::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

const PI: f64 = std::f64::consts::PI;

/// Imaginary-part threshold above which the plain q-series is used.
pub const DIRECT_SERIES_MIN_IM: f64 = 0.5;

/// Hard cap on q-expansion length.
const MAX_TRUNCATION: usize = 1 << 22;

/// e(num/den) with exact values at quarter periods, so that roots of unity
/// like -1 and i carry no rounding at all.
pub fn root_of_unity(num: i64, den: i64) -> Complex64 {
    debug_assert!(den >= 1);
    let r = num.rem_euclid(den);
    let four_r = 4 * r;
    if four_r % den == 0 {
        match four_r / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            3 => Complex64::new(0.0, -1.0),
            _ => unreachable!(),
        }
    } else {
        Complex64::from_polar(1.0, 2.0 * PI * r as f64 / den as f64)
    }
}

/// What the form is, concretely.
#[derive(Debug, Clone, PartialEq)]
pub enum FormKind {
    /// scale * prod_i eta(m_i tau)^{r_i}
    EtaQuotient { factors: Vec<(u32, i32)>, scale: f64 },
    /// sum_{n >= 1} values[n mod modulus] * n^power * q^{n^2}
    UnaryTheta { modulus: u32, values: Vec<f64>, power: u8 },
    /// a finite list a(1), a(2), ... of Fourier coefficients
    Raw { coefficients: Vec<Complex64> },
}

/// Symbolic description of a half-integral weight cusp form.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspFormSpec {
    pub kind: FormKind,
    pub weight: HalfInteger,
    pub level: u64,
    pub cuspidal: bool,
    /// Nebentypus as a Kronecker top entry: chi(d) = kronecker(nebentypus, d).
    pub nebentypus: i64,
}

impl CuspFormSpec {
    /// eta(24 tau): weight 1/2, level 576, Nebentypus (12/.).
    pub fn eta24() -> Self {
        Self {
            kind: FormKind::EtaQuotient { factors: vec![(24, 1)], scale: 1.0 },
            weight: HalfInteger(1),
            level: 576,
            cuspidal: true,
            nebentypus: 12,
        }
    }

    /// eta(8 tau)^3: weight 3/2, level 64, trivial Nebentypus.
    pub fn eta8_cubed() -> Self {
        Self {
            kind: FormKind::EtaQuotient { factors: vec![(8, 3)], scale: 1.0 },
            weight: HalfInteger(3),
            level: 64,
            cuspidal: true,
            nebentypus: 1,
        }
    }

    /// The zero form (raw kind, no coefficients).
    pub fn zero(weight: HalfInteger, level: u64) -> Self {
        Self {
            kind: FormKind::Raw { coefficients: Vec::new() },
            weight,
            level,
            cuspidal: true,
            nebentypus: 1,
        }
    }

    /// A raw form from explicit coefficients a(1), a(2), ...
    pub fn raw(coefficients: Vec<Complex64>, weight: HalfInteger, level: u64) -> Self {
        Self { kind: FormKind::Raw { coefficients }, weight, level, cuspidal: true, nebentypus: 1 }
    }

    pub fn is_zero(&self) -> bool {
        match &self.kind {
            FormKind::Raw { coefficients } => {
                coefficients.iter().all(|c| c.re == 0.0 && c.im == 0.0)
            }
            FormKind::EtaQuotient { scale, .. } => *scale == 0.0,
            FormKind::UnaryTheta { values, .. } => values.iter().all(|v| *v == 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.weight.0 < 1 || self.weight.0 % 2 == 0 {
            return Err(Error::InvalidSpec(format!(
                "weight must lie in 1/2 + N_0, got {}",
                self.weight
            )));
        }
        if self.level % 4 != 0 || self.level == 0 {
            return Err(Error::InvalidSpec(format!("level must be in 4N, got {}", self.level)));
        }
        match &self.kind {
            FormKind::EtaQuotient { factors, .. } => {
                let r_sum: i64 = factors.iter().map(|&(_, r)| r as i64).sum();
                if r_sum != self.weight.0 as i64 {
                    return Err(Error::InvalidSpec(format!(
                        "eta-quotient weight mismatch: sum r_i = {r_sum}, expected 2k = {}",
                        self.weight.0
                    )));
                }
                let mut order24: i64 = 0;
                for &(m, r) in factors {
                    if m == 0 {
                        return Err(Error::InvalidSpec("eta multiplier m = 0".into()));
                    }
                    if self.level % m as u64 != 0 {
                        return Err(Error::InvalidSpec(format!(
                            "eta multiplier {m} does not divide the level {}",
                            self.level
                        )));
                    }
                    order24 += m as i64 * r as i64;
                }
                if order24 % 24 != 0 {
                    return Err(Error::InvalidSpec(format!(
                        "sum m_i r_i = {order24} is not divisible by 24; \
                         the q-expansion is not integral"
                    )));
                }
                if self.cuspidal && order24 < 24 {
                    return Err(Error::InvalidSpec(
                        "cuspidal certificate demanded but the form does not vanish at infinity"
                            .into(),
                    ));
                }
            }
            FormKind::UnaryTheta { modulus, values, power } => {
                if *modulus == 0 || values.len() != *modulus as usize {
                    return Err(Error::InvalidSpec(format!(
                        "unary theta needs values.len() == modulus, got {} vs {modulus}",
                        values.len()
                    )));
                }
                if *power > 1 {
                    return Err(Error::InvalidSpec(format!("theta power must be 0 or 1, got {power}")));
                }
                if self.weight.0 != 2 * *power as i32 + 1 {
                    return Err(Error::InvalidSpec(format!(
                        "theta weight must be power + 1/2, got {}",
                        self.weight
                    )));
                }
            }
            FormKind::Raw { .. } => {}
        }
        Ok(())
    }

    /// Interprets a unary theta as an eta quotient when one of the two
    /// canonical identities applies (the supported near-real family).
    pub fn eta_alias(&self) -> Option<CuspFormSpec> {
        let FormKind::UnaryTheta { modulus, values, power } = &self.kind else {
            return None;
        };
        let matches = |pattern: &[(usize, f64)]| {
            values.iter().enumerate().all(|(i, &v)| {
                let want = pattern.iter().find(|&&(j, _)| j == i).map_or(0.0, |&(_, w)| w);
                v == want
            })
        };
        // sum chi_12(n) q^{n^2} = eta(24 tau)
        if *modulus == 12 && *power == 0 && matches(&[(1, 1.0), (5, -1.0), (7, -1.0), (11, 1.0)]) {
            let mut alias = CuspFormSpec::eta24();
            alias.level = self.level;
            alias.nebentypus = self.nebentypus;
            return Some(alias);
        }
        // sum chi_{-4}(n) n q^{n^2} = eta(8 tau)^3
        if *modulus == 4 && *power == 1 && matches(&[(1, 1.0), (3, -1.0)]) {
            let mut alias = CuspFormSpec::eta8_cubed();
            alias.level = self.level;
            alias.nebentypus = self.nebentypus;
            return Some(alias);
        }
        None
    }

    /// Default Nebentypus top entry for an eta quotient: half the product
    /// of the multipliers raised to their exponents (verified against the
    /// canonical fixtures; override the field for exotic quotients).
    pub fn default_eta_nebentypus(factors: &[(u32, i32)]) -> i64 {
        let mut s: i128 = 1;
        for &(m, r) in factors {
            if r >= 0 {
                for _ in 0..r {
                    s = s.saturating_mul(m as i128);
                }
            }
        }
        let s = if s % 2 == 0 { s / 2 } else { s };
        s.clamp(i64::MIN as i128, i64::MAX as i128) as i64
    }
}

// ---------------------------------------------------------------------------
// file format

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<(u32, i32)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<(f64, f64)>>,
    weight: HalfInteger,
    level: u64,
    #[serde(default = "default_true")]
    cuspidal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    nebentypus: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<f64>,
}

fn default_true() -> bool {
    true
}

impl CuspFormSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidSpec(format!("{e} (line {}, column {})", e.line(), e.column())))?;
        let kind = match file.kind.as_str() {
            "eta_quotient" => {
                let factors = file
                    .factors
                    .ok_or_else(|| Error::InvalidSpec("eta_quotient needs \"factors\"".into()))?;
                FormKind::EtaQuotient { factors, scale: file.scale.unwrap_or(1.0) }
            }
            "unary_theta" => FormKind::UnaryTheta {
                modulus: file
                    .modulus
                    .ok_or_else(|| Error::InvalidSpec("unary_theta needs \"modulus\"".into()))?,
                values: file
                    .values
                    .ok_or_else(|| Error::InvalidSpec("unary_theta needs \"values\"".into()))?,
                power: file
                    .power
                    .ok_or_else(|| Error::InvalidSpec("unary_theta needs \"power\"".into()))?,
            },
            "raw" => FormKind::Raw {
                coefficients: file
                    .coefficients
                    .ok_or_else(|| Error::InvalidSpec("raw needs \"coefficients\"".into()))?
                    .into_iter()
                    .map(|(re, im)| Complex64::new(re, im))
                    .collect(),
            },
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown kind {other:?} (expected eta_quotient, unary_theta, or raw)"
                )))
            }
        };
        let nebentypus = file.nebentypus.unwrap_or(match &kind {
            FormKind::EtaQuotient { factors, .. } => Self::default_eta_nebentypus(factors),
            _ => 1,
        });
        let spec = CuspFormSpec { kind, weight: file.weight, level: file.level, cuspidal: file.cuspidal, nebentypus };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let mut file = SpecFile {
            kind: String::new(),
            factors: None,
            modulus: None,
            values: None,
            power: None,
            coefficients: None,
            weight: self.weight,
            level: self.level,
            cuspidal: self.cuspidal,
            nebentypus: Some(self.nebentypus),
            scale: None,
        };
        match &self.kind {
            FormKind::EtaQuotient { factors, scale } => {
                file.kind = "eta_quotient".into();
                file.factors = Some(factors.clone());
                if *scale != 1.0 {
                    file.scale = Some(*scale);
                }
            }
            FormKind::UnaryTheta { modulus, values, power } => {
                file.kind = "unary_theta".into();
                file.modulus = Some(*modulus);
                file.values = Some(values.clone());
                file.power = Some(*power);
            }
            FormKind::Raw { coefficients } => {
                file.kind = "raw".into();
                file.coefficients = Some(coefficients.iter().map(|c| (c.re, c.im)).collect());
            }
        }
        serde_json::to_string_pretty(&file).expect("spec serialization")
    }
}

// ---------------------------------------------------------------------------
// q-expansions

/// A truncated Fourier expansion with a tail-bound certificate
/// |a(n)| <= C n^{k/2 + 1} for n beyond the truncation.
#[derive(Debug, Clone)]
pub struct QExpansion {
    coeffs: Vec<Complex64>, // a(1), ..., a(M)
    tail_c: f64,
    weight: HalfInteger,
}

impl QExpansion {
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// a(n), 1-indexed; zero beyond the truncation.
    pub fn coeff(&self, n: usize) -> Complex64 {
        if n >= 1 && n <= self.coeffs.len() {
            self.coeffs[n - 1]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn tail_constant(&self) -> f64 {
        self.tail_c
    }

    /// Rigorous bound on sum_{n > M} |a(n)| n^{extra_pow} e^{-2 pi n v}.
    pub fn tail_bound(&self, v: f64, extra_pow: f64) -> f64 {
        if self.tail_c == 0.0 {
            return 0.0;
        }
        let m = self.coeffs.len() as f64;
        let p = (self.weight.to_f64() / 2.0 + 1.0 + extra_pow).max(0.0);
        let x = (-2.0 * PI * v).exp();
        let growth = x * (p / (m + 1.0)).exp();
        if growth >= 1.0 {
            return f64::INFINITY;
        }
        self.tail_c * (m + 1.0).powf(p) * x.powf(m + 1.0) / (1.0 - growth)
    }
}

fn fit_tail_constant(coeffs: &[Complex64], k: HalfInteger) -> f64 {
    let p = k.to_f64() / 2.0 + 1.0;
    let mut c: f64 = 0.0;
    for (i, a) in coeffs.iter().enumerate() {
        let n = (i + 1) as f64;
        c = c.max(a.norm() / n.powf(p));
    }
    10.0 * c
}

/// Expand a spec to M coefficients (exact integer arithmetic for eta
/// quotients, closed form for theta series, pass-through for raw lists).
pub fn expand(spec: &CuspFormSpec, m: usize) -> Result<QExpansion> {
    spec.validate()?;
    if m < 1 {
        return Err(Error::Domain(format!("truncation must be >= 1, got {m}")));
    }
    if m > MAX_TRUNCATION {
        return Err(Error::Budget { needed: m, cap: MAX_TRUNCATION });
    }
    if !spec.cuspidal {
        return Err(Error::InvalidSpec(
            "cuspidal certificate demanded but the spec is marked non-cuspidal".into(),
        ));
    }
    let coeffs: Vec<Complex64> = match &spec.kind {
        FormKind::EtaQuotient { factors, scale } => eta_quotient_coeffs(factors, m)?
            .into_iter()
            .map(|a| Complex64::new(a as f64 * scale, 0.0))
            .collect(),
        FormKind::UnaryTheta { modulus, values, power } => {
            let mut out = vec![Complex64::new(0.0, 0.0); m];
            let mut n = 1usize;
            while n * n <= m {
                let chi = values[n % *modulus as usize];
                let w = if *power == 1 { n as f64 } else { 1.0 };
                out[n * n - 1] = Complex64::new(chi * w, 0.0);
                n += 1;
            }
            out
        }
        FormKind::Raw { coefficients } => {
            let mut out = coefficients.clone();
            out.resize(m, Complex64::new(0.0, 0.0));
            out.truncate(m);
            out
        }
    };
    // a raw list covered in full is exact data: the tail is identically zero
    let tail_c = match &spec.kind {
        FormKind::Raw { coefficients } if m >= coefficients.len() => 0.0,
        _ => fit_tail_constant(&coeffs, spec.weight),
    };
    Ok(QExpansion { coeffs, tail_c, weight: spec.weight })
}

/// Exact integer coefficients a(1..=M) for unscaled eta quotients.
pub fn expand_exact(spec: &CuspFormSpec, m: usize) -> Result<Option<Vec<i128>>> {
    match &spec.kind {
        FormKind::EtaQuotient { factors, scale } if *scale == 1.0 => {
            Ok(Some(eta_quotient_coeffs(factors, m)?))
        }
        _ => Ok(None),
    }
}

fn eta_quotient_coeffs(factors: &[(u32, i32)], m: usize) -> Result<Vec<i128>> {
    let order24: i64 = factors.iter().map(|&(mm, r)| mm as i64 * r as i64).sum();
    let offset = (order24 / 24) as usize; // validated: positive multiple of 24
    let len = m + 1; // powers 0..=m of q
    let mut acc = vec![0i128; len];
    acc[0] = 1;
    for &(mult, r) in factors {
        let base = if r >= 0 {
            pentagonal_series(mult as usize, len)
        } else {
            partition_series(mult as usize, len)
        };
        let powed = series_pow(&base, r.unsigned_abs(), len);
        acc = series_mul(&acc, &powed, len);
    }
    // a(n) = [q^{n - offset}] acc for n >= offset
    let mut out = vec![0i128; m];
    for n in offset..=m {
        out[n - 1] = acc[n - offset];
    }
    Ok(out)
}

/// prod_{n>=1} (1 - q^{mn}) truncated to `len` coefficients.
fn pentagonal_series(m: usize, len: usize) -> Vec<i128> {
    let mut s = vec![0i128; len];
    s[0] = 1;
    let mut j: i64 = 1;
    loop {
        let g1 = (j * (3 * j - 1) / 2) as usize;
        let g2 = (j * (3 * j + 1) / 2) as usize;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let mut placed = false;
        for g in [g1, g2] {
            if g.checked_mul(m).map_or(false, |gm| gm < len) {
                s[g * m] += sign;
                placed = true;
            }
        }
        if !placed {
            break;
        }
        j += 1;
    }
    s
}

/// prod_{n>=1} (1 - q^{mn})^{-1} truncated to `len` coefficients
/// (Euler's pentagonal recurrence for the partition numbers).
fn partition_series(m: usize, len: usize) -> Vec<i128> {
    let inner = len / m + 1;
    let mut p = vec![0i128; inner];
    p[0] = 1;
    for n in 1..inner {
        let mut acc: i128 = 0;
        let mut j: i64 = 1;
        loop {
            let g1 = (j * (3 * j - 1) / 2) as usize;
            let g2 = (j * (3 * j + 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign: i128 = if j % 2 == 1 { 1 } else { -1 };
            acc += sign * p[n - g1];
            if g2 <= n {
                acc += sign * p[n - g2];
            }
            j += 1;
        }
        p[n] = acc;
    }
    let mut s = vec![0i128; len];
    for (n, &v) in p.iter().enumerate() {
        if n * m < len {
            s[n * m] = v;
        }
    }
    s
}

fn series_mul(a: &[i128], b: &[i128], len: usize) -> Vec<i128> {
    let mut out = vec![0i128; len];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if bj != 0 {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn series_pow(a: &[i128], e: u32, len: usize) -> Vec<i128> {
    let mut result = vec![0i128; len];
    result[0] = 1;
    let mut base = a.to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = series_mul(&result, &base, len);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base, len);
        }
    }
    result
}

// ---------------------------------------------------------------------------
// Dedekind eta evaluation

/// eta(z) by its lacunary theta series; adequate for any Im(z) > 0, with
/// cost ~ sqrt(1/Im z) terms.
pub(crate) fn eta_theta(z: Complex64) -> Complex64 {
    let im = z.im;
    debug_assert!(im > 0.0);
    let jmax = ((1.0 + 165.0 / im).sqrt() + 5.0) / 6.0;
    let jmax = jmax.ceil() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in -jmax..=jmax {
        let n6 = 6 * j + 1;
        let e = Complex64::new(0.0, PI / 12.0) * z * (n6 * n6) as f64;
        let term = e.exp();
        sum += if j % 2 == 0 { term } else { -term };
    }
    sum
}

/// eta(p/q + i im) with the root-of-unity phases computed exactly from the
/// integer residues p (6j+1)^2 mod 24q.
fn eta_theta_rational(p: i64, q: i64, im: f64) -> Complex64 {
    debug_assert!(im > 0.0 && q >= 1);
    let jmax = (((1.0 + 165.0 / im).sqrt() + 5.0) / 6.0).ceil() as i64;
    let den = 24i128 * q as i128;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in -jmax..=jmax {
        let n6 = (6 * j + 1) as i128;
        let r = (p as i128 * n6 * n6).rem_euclid(den);
        let phase = root_of_unity(r as i64, den as i64);
        let mag = (-PI * im * (n6 * n6) as f64 / 12.0).exp();
        let term = phase * mag;
        sum += if j % 2 == 0 { term } else { -term };
    }
    sum
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// eta(p/q + i delta) for a reduced rational p/q, exact transformation to a
/// point of imaginary part 1/(q^2 delta) when that is the larger of the two.
pub(crate) fn eta_at_rational(p: i64, q: i64, delta: f64) -> Result<Complex64> {
    if delta <= 0.0 {
        return Err(Error::Domain(format!("eta needs Im > 0, got {delta}")));
    }
    debug_assert!(q >= 1 && p.gcd(&q) == 1);
    if delta >= 1.0 / q as f64 {
        return Ok(eta_theta_rational(p, q, delta));
    }
    // gamma = (a, b; q, -p) with a p + b q = -1 sends p/q to the cusp at
    // infinity; c z + d = i q delta exactly.
    let (g, x, y) = egcd(p, q);
    debug_assert_eq!(g, 1);
    let a = -x;
    let _ = y; // b = -y is absorbed into the closed form below
    let im_red = 1.0 / (q as f64 * q as f64 * delta);
    let eta_red = eta_theta_rational(a, q, im_red);
    // Apostol: eta(gamma z) = eps(gamma) (-i (c z + d))^{1/2} eta(z),
    // eps(gamma) = exp(pi i ((a + d)/(12 c) + s(-d, c))), here d = -p.
    let s_pq = dedekind_sum(p, q).expect("coprime by construction");
    let mut phase: Ratio<i128> =
        Ratio::new((a - p) as i128, 12 * q as i128) + s_pq;
    // reduce mod 2 so the f64 conversion is exact to machine precision
    let two = Ratio::new(2i128, 1);
    phase -= (phase / two).floor() * two;
    let eps_angle = PI * (*phase.numer() as f64 / *phase.denom() as f64);
    let eps_gamma = Complex64::from_polar(1.0, eps_angle);
    let root = (q as f64 * delta).sqrt();
    Ok(eta_red / (eps_gamma * root))
}

/// eta(z) for arbitrary z in the upper half-plane.
pub(crate) fn eta(z: Complex64) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(Error::Domain(format!("eta needs Im > 0, got {}", z.im)));
    }
    if z.im >= 0.25 {
        return Ok(eta_theta(z));
    }
    let red = reduce(z)?;
    Ok(eta_theta(red.tau_reduced) / red.eta_multiplier)
}

/// Outcome of fundamental-domain reduction.
#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub gamma: GroupElement,
    pub tau_reduced: Complex64,
    /// eta(gamma tau) = eta_multiplier * eta(tau).
    pub eta_multiplier: Complex64,
}

/// Move tau into the standard fundamental domain |Re| <= 1/2, |tau| >= 1
/// and report the exact eta-multiplier data of the reducing matrix.
pub fn reduce(tau: Complex64) -> Result<ReductionResult> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("reduce needs Im > 0, got {}", tau.im)));
    }
    let mut z = tau;
    let mut g = GroupElement::identity();
    for _ in 0..100_000 {
        let n = z.re.round();
        if n != 0.0 {
            z = Complex64::new(z.re - n, z.im);
            g = GroupElement::translation(-(n as i64)).mul(&g);
        }
        if z.norm_sqr() < 1.0 - 1e-15 {
            z = -1.0 / z;
            g = GroupElement { a: 0, b: -1, c: 1, d: 0 }.mul(&g);
        } else {
            let eta_multiplier = eta_multiplier_for(&g, tau)?;
            return Ok(ReductionResult { gamma: g, tau_reduced: z, eta_multiplier });
        }
    }
    Err(Error::NonConvergence { what: "fundamental-domain reduction", achieved: f64::NAN })
}

/// The factor in eta(gamma tau) = factor * eta(tau), exact 24th-root data
/// through Dedekind sums.
fn eta_multiplier_for(g: &GroupElement, tau: Complex64) -> Result<Complex64> {
    let g = if g.c < 0 || (g.c == 0 && g.d < 0) { g.neg() } else { *g };
    if g.c == 0 {
        // (1, b; 0, 1): eta(z + b) = e^{pi i b / 12} eta(z)
        let r = (g.b).rem_euclid(24);
        return Ok(root_of_unity(r, 24));
    }
    let s = dedekind_sum(-g.d, g.c)?;
    let mut phase: Ratio<i128> = Ratio::new((g.a + g.d) as i128, 12 * g.c as i128) + s;
    let two = Ratio::new(2i128, 1);
    phase -= (phase / two).floor() * two;
    let eps_gamma =
        Complex64::from_polar(1.0, PI * (*phase.numer() as f64 / *phase.denom() as f64));
    let czd = g.c as f64 * tau + Complex64::new(g.d as f64, 0.0);
    Ok(eps_gamma * pow_principal(Complex64::new(0.0, -1.0) * czd, 0.5))
}

// ---------------------------------------------------------------------------
// form evaluation

/// f(tau) to within tol, by the direct q-series for Im(tau) above the
/// threshold and by the exact eta transformation law below it.
pub fn evaluate(spec: &CuspFormSpec, tau: Complex64, tol: f64) -> Result<Complex64> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("evaluate needs Im > 0, got {}", tau.im)));
    }
    if spec.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    match &spec.kind {
        FormKind::EtaQuotient { factors, scale } => {
            let mut out = Complex64::new(*scale, 0.0);
            for &(m, r) in factors {
                let v = eta(tau * m as f64)?;
                out *= powi(v, r);
            }
            Ok(out)
        }
        FormKind::UnaryTheta { .. } => {
            if tau.im >= DIRECT_SERIES_MIN_IM {
                q_series_value(spec, tau, tol)
            } else if let Some(alias) = spec.eta_alias() {
                evaluate(&alias, tau, tol)
            } else {
                Err(Error::UnsupportedForm(
                    "unary theta with no eta alias cannot be evaluated near the real axis".into(),
                ))
            }
        }
        FormKind::Raw { .. } => {
            if tau.im >= DIRECT_SERIES_MIN_IM {
                q_series_value(spec, tau, tol)
            } else {
                Err(Error::UnsupportedForm(
                    "raw coefficient lists carry no transformation law".into(),
                ))
            }
        }
    }
}

/// f(x + i y) for rational x, with exact root-of-unity phases throughout.
///
/// This is the precision-critical entry point used by every Mellin and
/// period integral, where the integration path is a vertical ray anchored
/// at a rational number.
pub fn evaluate_at_rational(
    spec: &CuspFormSpec,
    x: ReducedRational,
    y: f64,
    tol: f64,
) -> Result<Complex64> {
    if y <= 0.0 {
        return Err(Error::Domain(format!("evaluate needs Im > 0, got {y}")));
    }
    if spec.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    match &spec.kind {
        FormKind::EtaQuotient { factors, scale } => {
            let mut out = Complex64::new(*scale, 0.0);
            for &(m, r) in factors {
                // m x in lowest terms
                let num = m as i64 * x.numer();
                let q = x.denom();
                let g = num.gcd(&q);
                let v = eta_at_rational(num / g, q / g, m as f64 * y)?;
                out *= powi(v, r);
            }
            Ok(out)
        }
        FormKind::UnaryTheta { .. } => {
            if let Some(alias) = spec.eta_alias() {
                evaluate_at_rational(&alias, x, y, tol)
            } else if y >= DIRECT_SERIES_MIN_IM {
                q_series_value_rational(spec, x, y, tol)
            } else {
                Err(Error::UnsupportedForm(
                    "unary theta with no eta alias cannot be evaluated near the real axis".into(),
                ))
            }
        }
        FormKind::Raw { .. } => {
            if y >= DIRECT_SERIES_MIN_IM {
                q_series_value_rational(spec, x, y, tol)
            } else {
                Err(Error::UnsupportedForm(
                    "raw coefficient lists carry no transformation law".into(),
                ))
            }
        }
    }
}

/// Like `evaluate_at_rational`, but raw coefficient lists are summed as
/// exact Fourier polynomials at any height. Period integrals whose paths
/// stay at Im >= |v| use this; the public operation keeps the contract that
/// raw forms reject points below the series threshold.
pub(crate) fn evaluate_at_rational_unrestricted(
    spec: &CuspFormSpec,
    x: ReducedRational,
    y: f64,
    tol: f64,
) -> Result<Complex64> {
    match &spec.kind {
        FormKind::Raw { .. } if !spec.is_zero() => {
            if y <= 0.0 {
                return Err(Error::Domain(format!("evaluate needs Im > 0, got {y}")));
            }
            q_series_value_rational(spec, x, y, tol)
        }
        _ => evaluate_at_rational(spec, x, y, tol),
    }
}

fn powi(z: Complex64, e: i32) -> Complex64 {
    let mut out = Complex64::new(1.0, 0.0);
    let base = if e >= 0 { z } else { 1.0 / z };
    for _ in 0..e.unsigned_abs() {
        out *= base;
    }
    out
}

/// Pick a truncation for which the certified tail is below tol/2.
fn certified_expansion(spec: &CuspFormSpec, v: f64, extra_pow: f64, tol: f64) -> Result<QExpansion> {
    let mut m = 64usize;
    loop {
        let qe = expand(spec, m)?;
        if qe.tail_bound(v, extra_pow) <= 0.5 * tol {
            return Ok(qe);
        }
        if m >= MAX_TRUNCATION {
            return Err(Error::Budget { needed: 2 * m, cap: MAX_TRUNCATION });
        }
        m *= 2;
    }
}

fn q_series_value(spec: &CuspFormSpec, tau: Complex64, tol: f64) -> Result<Complex64> {
    let qe = certified_expansion(spec, tau.im, 0.0, tol)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, a) in qe.coeffs().iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let n = (i + 1) as f64;
        sum += a * (Complex64::new(0.0, 2.0 * PI) * tau * n).exp();
    }
    Ok(sum)
}

fn q_series_value_rational(
    spec: &CuspFormSpec,
    x: ReducedRational,
    y: f64,
    tol: f64,
) -> Result<Complex64> {
    let qe = certified_expansion(spec, y, 0.0, tol)?;
    let (p, q) = (x.numer(), x.denom());
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, a) in qe.coeffs().iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let n = (i + 1) as i64;
        let phase = root_of_unity(((n as i128 * p as i128).rem_euclid(q as i128)) as i64, q);
        sum += a * phase * (-2.0 * PI * n as f64 * y).exp();
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Fricke involution

/// The closed-form Fricke image of an eta quotient at level N:
/// factors (N/m_i, r_i) and a positive rescaling.
pub fn fricke_image(spec: &CuspFormSpec, n: u64) -> Result<CuspFormSpec> {
    if spec.is_zero() {
        return Ok(spec.clone());
    }
    match &spec.kind {
        FormKind::EtaQuotient { factors, scale } => {
            let k = spec.weight.to_f64();
            let mut ln_c = -(k / 2.0) * (n as f64).ln();
            let mut new_factors = Vec::with_capacity(factors.len());
            for &(m, r) in factors {
                if n % m as u64 != 0 {
                    return Err(Error::Domain(format!(
                        "Fricke image needs m | N for every factor, got m={m}, N={n}"
                    )));
                }
                let nm = (n / m as u64) as u32;
                ln_c += (r as f64 / 2.0) * (nm as f64).ln();
                new_factors.push((nm, r));
            }
            Ok(CuspFormSpec {
                kind: FormKind::EtaQuotient { factors: new_factors, scale: scale * ln_c.exp() },
                weight: spec.weight,
                level: spec.level,
                cuspidal: spec.cuspidal,
                nebentypus: spec.nebentypus.saturating_mul(n as i64),
            })
        }
        FormKind::UnaryTheta { .. } => match spec.eta_alias() {
            Some(alias) => fricke_image(&alias, n),
            None => Err(Error::UnsupportedForm(
                "Fricke image of a theta series without an eta alias".into(),
            )),
        },
        FormKind::Raw { .. } => Err(Error::UnsupportedForm(
            "Fricke image of a raw coefficient list".into(),
        )),
    }
}

/// (f |_k W_N)(tau) = (-i sqrt(N) tau)^{-k} f(-1/(N tau)), the direct route.
pub fn fricke_evaluate(spec: &CuspFormSpec, tau: Complex64, n: u64, tol: f64) -> Result<Complex64> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("Fricke evaluation needs Im > 0, got {}", tau.im)));
    }
    if spec.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let k = spec.weight.to_f64();
    let base = Complex64::new(0.0, -(n as f64).sqrt()) * tau;
    let image_point = -1.0 / (tau * n as f64);
    Ok(pow_principal(base, -k) * evaluate(spec, image_point, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Direct product oracle: q^{sum m r / 24} prod (1 - q^{mn})^r multiplied
    /// out term by term in f64, at a comfortable point.
    fn eta_product_oracle(z: Complex64, m: u32) -> Complex64 {
        let q = (Complex64::new(0.0, 2.0 * PI) * z * m as f64).exp();
        let mut prod = (Complex64::new(0.0, 2.0 * PI) * z * (m as f64 / 24.0)).exp();
        let mut qn = Complex64::new(1.0, 0.0);
        for _ in 1..200 {
            qn *= q;
            prod *= Complex64::new(1.0, 0.0) - qn;
        }
        prod
    }

    #[test]
    fn expand_eta24_pentagonal_pattern() {
        let spec = CuspFormSpec::eta24();
        let qe = expand(&spec, 60).unwrap();
        assert_eq!(qe.coeff(1), c(1.0, 0.0));
        assert_eq!(qe.coeff(25), c(-1.0, 0.0));
        assert_eq!(qe.coeff(49), c(-1.0, 0.0));
        assert_eq!(qe.coeff(4), c(0.0, 0.0));
        // oracle: multiply out the product directly over integers
        let exact = expand_exact(&spec, 150).unwrap().unwrap();
        let mut oracle = vec![0i128; 151];
        oracle[0] = 1;
        for n in 1..=6usize {
            // (1 - x^n) in the compressed variable x = q^24
            let mut next = oracle.clone();
            for i in 0..=150 {
                if i + 24 * n <= 150 {
                    next[i + 24 * n] -= oracle[i];
                }
            }
            oracle = next;
        }
        for nn in 1..=150usize {
            let want = if nn >= 1 { oracle[nn - 1] } else { 0 };
            assert_eq!(exact[nn - 1], want, "n={nn}");
        }
    }

    #[test]
    fn expand_eta8_cubed_values() {
        let spec = CuspFormSpec::eta8_cubed();
        let qe = expand(&spec, 30).unwrap();
        assert_eq!(qe.coeff(1), c(1.0, 0.0));
        assert_eq!(qe.coeff(9), c(-3.0, 0.0));
        assert_eq!(qe.coeff(25), c(5.0, 0.0));
        assert_eq!(qe.coeff(4), c(0.0, 0.0));
        // cube-of-pentagonal oracle over exact integers
        let pent = pentagonal_series(8, 31);
        let squared = series_mul(&pent, &pent, 31);
        let cubed = series_mul(&squared, &pent, 31);
        let exact = expand_exact(&spec, 30).unwrap().unwrap();
        for n in 1..=30usize {
            let want = if n >= 1 && n - 1 < 31 { cubed[n - 1] } else { 0 };
            assert_eq!(exact[n - 1], want, "n={n}");
        }
    }

    #[test]
    fn expand_zero_form() {
        let spec = CuspFormSpec::zero(HalfInteger(1), 4);
        let qe = expand(&spec, 20).unwrap();
        assert!(qe.coeffs().iter().all(|a| a.norm() == 0.0));
        assert_eq!(qe.tail_bound(0.1, 0.0), 0.0);
    }

    #[test]
    fn expand_rejects_non_cuspidal() {
        let mut spec = CuspFormSpec::eta24();
        spec.cuspidal = false;
        assert!(expand(&spec, 10).is_err());
    }

    #[test]
    fn unary_theta_matches_eta_alias_coefficients() {
        let theta24 = CuspFormSpec {
            kind: FormKind::UnaryTheta {
                modulus: 12,
                values: vec![0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0],
                power: 0,
            },
            weight: HalfInteger(1),
            level: 576,
            cuspidal: true,
            nebentypus: 12,
        };
        let a = expand(&theta24, 200).unwrap();
        let b = expand(&CuspFormSpec::eta24(), 200).unwrap();
        for n in 1..=200 {
            assert_eq!(a.coeff(n), b.coeff(n), "n={n}");
        }
        assert!(theta24.eta_alias().is_some());

        let theta8 = CuspFormSpec {
            kind: FormKind::UnaryTheta { modulus: 4, values: vec![0.0, 1.0, 0.0, -1.0], power: 1 },
            weight: HalfInteger(3),
            level: 64,
            cuspidal: true,
            nebentypus: 1,
        };
        let a = expand(&theta8, 200).unwrap();
        let b = expand(&CuspFormSpec::eta8_cubed(), 200).unwrap();
        for n in 1..=200 {
            assert_eq!(a.coeff(n), b.coeff(n), "n={n}");
        }
    }

    #[test]
    fn eta_theta_matches_product() {
        for &z in &[c(0.0, 1.0), c(0.3, 0.8), c(-0.45, 0.6)] {
            let a = eta_theta(z);
            let b = eta_product_oracle(z, 1);
            assert!((a - b).norm() < 1e-14, "z={z}");
        }
    }

    #[test]
    fn reduce_examples() {
        let r = reduce(c(0.0, 1.0)).unwrap();
        assert_eq!(r.gamma, GroupElement::identity());
        assert!((r.tau_reduced - c(0.0, 1.0)).norm() < 1e-15);

        let r = reduce(c(5.0, 1.0)).unwrap();
        assert_eq!(r.gamma, GroupElement::translation(-5));
        assert!((r.tau_reduced - c(0.0, 1.0)).norm() < 1e-15);

        let r = reduce(c(0.3, 0.001)).unwrap();
        assert!(r.tau_reduced.norm() >= 1.0 - 1e-12);
        assert!(r.tau_reduced.re.abs() <= 0.5 + 1e-12);
        // the reducing matrix really maps tau there
        let img = r.gamma.apply(c(0.3, 0.001));
        assert!((img - r.tau_reduced).norm() < 1e-9);
    }

    #[test]
    fn reduction_multiplier_transports_eta() {
        // eta(gamma tau) = multiplier * eta(tau) at points where both sides
        // are computable by the plain series
        for &tau in &[c(0.31, 0.77), c(-0.2, 0.35), c(0.48, 0.52)] {
            let r = reduce(tau).unwrap();
            let lhs = eta_theta(r.tau_reduced);
            let rhs = r.eta_multiplier * eta_theta(tau);
            assert!((lhs - rhs).norm() < 1e-13, "tau={tau}");
        }
    }

    #[test]
    fn eta_at_rational_consistency() {
        // cusp-anchored route vs generic reduction route vs direct series
        for &(p, q, delta) in &[(1i64, 3i64, 1e-4), (2, 5, 3e-3), (0, 1, 1e-5), (8, 1, 2.4e-3)] {
            let a = eta_at_rational(p, q, delta).unwrap();
            let b = eta(c(p as f64 / q as f64, delta)).unwrap();
            assert!(
                (a - b).norm() <= 1e-10 * a.norm().max(1e-30),
                "p/q={p}/{q} delta={delta}: {a} vs {b}"
            );
        }
        // and against the plain series at a moderate height
        let a = eta_at_rational(1, 3, 0.8).unwrap();
        let b = eta_theta(c(1.0 / 3.0, 0.8));
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn evaluate_eta24_at_i() {
        // dominated by the a(1) term e^{-2 pi}; tail certified
        let spec = CuspFormSpec::eta24();
        let v = evaluate(&spec, c(0.0, 1.0), 1e-30).unwrap();
        let lead = (-2.0 * PI).exp();
        assert!((v.re - lead).abs() < 1e-3 * lead);
        assert!(v.im.abs() < 1e-30);
        // independent summation with doubled truncation
        let qe = expand(&spec, 512).unwrap();
        let mut oracle = c(0.0, 0.0);
        for n in 1..=512usize {
            oracle += qe.coeff(n) * (-2.0 * PI * n as f64).exp();
        }
        assert!((v - oracle).norm() < 1e-18);
    }

    #[test]
    fn evaluate_eta24_near_real_two_routes() {
        // product route (exact cusp transformation) against the generic
        // reduce-loop route applied factor by factor
        let spec = CuspFormSpec::eta24();
        let tau = c(1.0 / 3.0, 1e-4);
        let v = evaluate(&spec, tau, 1e-12).unwrap();
        let w = evaluate_at_rational(&spec, ReducedRational::new(1, 3).unwrap(), 1e-4, 1e-12)
            .unwrap();
        assert!((v - w).norm() <= 1e-10 * v.norm().max(1e-30), "{v} vs {w}");
    }

    #[test]
    fn evaluate_zero_form_anywhere() {
        let spec = CuspFormSpec::zero(HalfInteger(3), 64);
        assert_eq!(evaluate(&spec, c(0.3, 0.001), 1e-12).unwrap(), c(0.0, 0.0));
        assert_eq!(
            evaluate_at_rational(&spec, ReducedRational::zero(), 1e-9, 1e-12).unwrap(),
            c(0.0, 0.0)
        );
    }

    #[test]
    fn raw_form_near_real_unsupported() {
        let spec = CuspFormSpec::raw(vec![c(1.0, 0.0)], HalfInteger(3), 64);
        assert!(evaluate(&spec, c(0.25, 0.01), 1e-10).is_err());
        assert!(evaluate(&spec, c(0.25, 0.9), 1e-10).is_ok());
    }

    #[test]
    fn fricke_fixed_point_and_two_routes() {
        // at tau = i/sqrt(N) the Fricke factor is exactly 1
        for spec in [CuspFormSpec::eta24(), CuspFormSpec::eta8_cubed()] {
            let n = spec.level;
            let tau = c(0.0, 1.0 / (n as f64).sqrt());
            let lhs = fricke_evaluate(&spec, tau, n, 1e-12).unwrap();
            let rhs = evaluate(&spec, tau, 1e-12).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        }
        // two-route agreement at tau = i
        for spec in [CuspFormSpec::eta24(), CuspFormSpec::eta8_cubed()] {
            let n = spec.level;
            let image = fricke_image(&spec, n).unwrap();
            // both fixtures are Fricke-invariant: the image spec is the form itself
            assert_eq!(image.kind, spec.kind);
            let tau = c(0.0, 1.0);
            let direct = fricke_evaluate(&spec, tau, n, 1e-14).unwrap();
            let closed = evaluate(&image, tau, 1e-14).unwrap();
            assert!(
                (direct - closed).norm() <= 1e-10 * closed.norm(),
                "{direct} vs {closed}"
            );
        }
        // zero form maps to zero
        let z = CuspFormSpec::zero(HalfInteger(1), 576);
        assert_eq!(fricke_evaluate(&z, c(0.3, 0.7), 576, 1e-10).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn tail_bounds_honest() {
        // halving the tolerance never moves the value by more than the old tolerance
        let spec = CuspFormSpec::eta8_cubed();
        for &(re, im) in &[(0.2, 0.6), (0.0, 0.9), (0.41, 1.7)] {
            let tau = c(re, im);
            let mut tol = 1e-6;
            let mut prev = evaluate(&spec, tau, tol).unwrap();
            for _ in 0..10 {
                tol *= 0.5;
                let cur = evaluate(&spec, tau, tol).unwrap();
                assert!((cur - prev).norm() <= 2.0 * tol, "tau={tau} tol={tol}");
                prev = cur;
            }
        }
    }

    #[test]
    fn spec_file_round_trip_and_diagnostics() {
        let text = r#"{ "kind": "eta_quotient", "factors": [[24,1]], "weight": "1/2", "level": 576 }"#;
        let spec = CuspFormSpec::from_json(text).unwrap();
        assert_eq!(spec, CuspFormSpec::eta24());
        let again = CuspFormSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(again, spec);

        // malformed: bad weight
        let bad = r#"{ "kind": "eta_quotient", "factors": [[24,1]], "weight": "1/3", "level": 576 }"#;
        let err = CuspFormSpec::from_json(bad).unwrap_err();
        assert!(err.to_string().contains("line"), "diagnostic missing: {err}");

        // malformed: unknown kind
        let bad = r#"{ "kind": "maass", "weight": "1/2", "level": 576 }"#;
        assert!(CuspFormSpec::from_json(bad).is_err());

        // invalid: weight/factor mismatch
        let bad = r#"{ "kind": "eta_quotient", "factors": [[24,2]], "weight": "1/2", "level": 576 }"#;
        assert!(CuspFormSpec::from_json(bad).is_err());
    }

    #[test]
    fn cuspidality_exponential_decay() {
        // |f(d/c + iy)| <= e^{-A/y} with a positive fitted A, at three
        // rationals per fixture
        for spec in [CuspFormSpec::eta24(), CuspFormSpec::eta8_cubed()] {
            for (p, q) in [(0i64, 1i64), (1, 2), (2, 3)] {
                let x = ReducedRational::new(p, q).unwrap();
                let ys = [0.02, 0.01, 0.005];
                let mut pts = Vec::new();
                for &y in &ys {
                    let v = evaluate_at_rational(&spec, x, y, 1e-16).unwrap();
                    assert!(v.norm() > 0.0);
                    pts.push((1.0 / y, v.norm().ln()));
                }
                // least-squares slope of ln|f| against 1/y is -A
                let n = pts.len() as f64;
                let sx: f64 = pts.iter().map(|p| p.0).sum();
                let sy: f64 = pts.iter().map(|p| p.1).sum();
                let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
                let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
                let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
                assert!(slope < 0.0, "no exponential decay at {x}: slope {slope}");
                let a = -slope;
                assert!(a > 1e-4, "fitted decay constant too small at {x}: {a}");
            }
        }
    }

    #[test]
    fn root_of_unity_exact_quarters() {
        assert_eq!(root_of_unity(0, 1), c(1.0, 0.0));
        assert_eq!(root_of_unity(1, 2), c(-1.0, 0.0));
        assert_eq!(root_of_unity(1, 4), c(0.0, 1.0));
        assert_eq!(root_of_unity(3, 4), c(0.0, -1.0));
        assert_eq!(root_of_unity(7, 4), c(0.0, -1.0));
        let z = root_of_unity(1, 3);
        assert!((z - c(-0.5, 0.75f64.sqrt())).norm() < 1e-15);
    }
}
