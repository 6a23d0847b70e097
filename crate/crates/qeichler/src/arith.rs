//! Exact integer and rational primitives: reduced rationals, the Kronecker
//! symbol, the theta-multiplier constant `eps_d`, 2x2 integer matrices with
//! congruence-subgroup membership, the half-integral weight automorphy
//! factor, and Dedekind sums in exact rational arithmetic.

use crate::error::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A rational number d/c in lowest terms, c >= 1, sign carried by the numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedRational {
    num: i64,
    den: i64,
}

impl ReducedRational {
    /// Reduce `num/den` to canonical form. Rejects `den == 0`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain(format!("zero denominator in {num}/{den}")));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Ok(Self { num: n, den: d })
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Parse "d/c" or a bare integer.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Domain(format!("bad numerator {n:?}: {e}")))?,
                d.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Domain(format!("bad denominator {d:?}: {e}")))?,
            ),
            None => (
                s.parse::<i64>()
                    .map_err(|e| Error::Domain(format!("bad rational {s:?}: {e}")))?,
                1,
            ),
        };
        Self::new(n, d)
    }

    /// Exact sum with an integer.
    pub fn add_int(&self, n: i64) -> Self {
        Self {
            num: self.num + n * self.den,
            den: self.den,
        }
    }
}

impl fmt::Display for ReducedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A half-integer stored as twice its value, so `HalfInteger(3)` is 3/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct HalfInteger(pub i32);

impl HalfInteger {
    pub fn from_halves(twice: i32) -> Self {
        Self(twice)
    }

    pub fn to_f64(&self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integral(&self) -> bool {
        self.0 % 2 == 0
    }

    /// 2 - k as a half-integer.
    pub fn two_minus(&self) -> Self {
        Self(4 - self.0)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl TryFrom<String> for HalfInteger {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i32 = n.trim().parse().map_err(|e| format!("bad weight {s:?}: {e}"))?;
            let d: i32 = d.trim().parse().map_err(|e| format!("bad weight {s:?}: {e}"))?;
            match d {
                1 => Ok(HalfInteger(2 * n)),
                2 => Ok(HalfInteger(n)),
                _ => Err(format!("weight denominator must be 1 or 2, got {d}")),
            }
        } else {
            let n: i32 = s.parse().map_err(|e| format!("bad weight {s:?}: {e}"))?;
            Ok(HalfInteger(2 * n))
        }
    }
}

impl From<HalfInteger> for String {
    fn from(h: HalfInteger) -> String {
        h.to_string()
    }
}

/// Kronecker symbol (a/n), total on all integer pairs.
///
/// Extends the Jacobi symbol to even and negative lower arguments in the
/// standard way, so that characters such as chi_{-4}(n) = (-4/n) and
/// chi_12(n) = (12/n) are computable for every n.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if n == -1 {
        // convention chosen so that complete multiplicativity in the top
        // argument holds on all of Z, including zero
        return match a.signum() {
            0 => 0,
            s => s,
        };
    }
    let mut a = a;
    let mut n = n;
    let mut result: i64 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // (a/2) factor for every power of two in n
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        if matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol for odd positive n
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n.rem_euclid(8), 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// eps_d = 1 for d = 1 (mod 4), i for d = 3 (mod 4). Rejects even d.
pub fn eps(d: i64) -> Result<Complex64> {
    if d % 2 == 0 {
        return Err(Error::Domain(format!("eps requires odd d, got {d}")));
    }
    Ok(match d.rem_euclid(4) {
        1 => Complex64::new(1.0, 0.0),
        3 => Complex64::new(0.0, 1.0),
        _ => unreachable!(),
    })
}

/// Principal power z^e with arg z in (-pi, pi].
pub fn pow_principal(z: Complex64, e: f64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return if e > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    Complex64::from_polar(z.norm().powf(e), e * z.arg())
}

/// An element of SL_2(Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GroupElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Domain(format!(
                "matrix ({a},{b};{c},{d}) has determinant {} != 1",
                a * d - b * c
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn translation(n: i64) -> Self {
        Self { a: 1, b: n, c: 0, d: 1 }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Moebius action on a point of C (away from the pole -d/c).
    pub fn apply(&self, tau: Complex64) -> Complex64 {
        let num = self.a as f64 * tau + Complex64::new(self.b as f64, 0.0);
        let den = self.c as f64 * tau + Complex64::new(self.d as f64, 0.0);
        num / den
    }

    /// Exact Moebius action on a rational; errors when x = -d/c.
    pub fn apply_rational(&self, x: ReducedRational) -> Result<ReducedRational> {
        let (p, q) = (x.numer() as i128, x.denom() as i128);
        let num = self.a as i128 * p + self.b as i128 * q;
        let den = self.c as i128 * p + self.d as i128 * q;
        if den == 0 {
            return Err(Error::Domain(format!("{x} is the pole of the Moebius map")));
        }
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        if n.abs() > i64::MAX as i128 || d > i64::MAX as i128 {
            return Err(Error::Domain("rational overflow in Moebius action".into()));
        }
        ReducedRational::new(n as i64, d as i64)
    }

    /// cusp gamma^{-1}(infinity) = -d/c; None for translations (c = 0).
    pub fn excluded_point(&self) -> Option<ReducedRational> {
        if self.c == 0 {
            None
        } else {
            Some(ReducedRational::new(-self.d, self.c).expect("c != 0"))
        }
    }
}

/// True iff N | c.
pub fn in_gamma0(g: &GroupElement, n: u64) -> bool {
    g.c.rem_euclid(n as i64) == 0
}

/// True iff N | c and a = d = 1 (mod N).
pub fn in_gamma1(g: &GroupElement, n: u64) -> bool {
    let n = n as i64;
    in_gamma0(g, n as u64) && g.a.rem_euclid(n) == 1 && g.d.rem_euclid(n) == 1
}

/// The full multiplier of the weight-k slash operator at the point tau.
#[derive(Debug, Clone, Copy)]
pub struct AutomorphyFactor {
    pub value: Complex64,
    pub weight: HalfInteger,
}

/// Multiplier and image point of the weight-k slash action of g at tau.
///
/// For integral k the multiplier is (c tau + d)^{-k}; for half-integral k it
/// is eps_d^{2k} (c/d) (c tau + d)^{-k} with the principal branch of the
/// power, and g must lie in Gamma_0(4).
pub fn automorphy(
    g: &GroupElement,
    tau: Complex64,
    k: HalfInteger,
    _level: u64,
) -> Result<(AutomorphyFactor, Complex64)> {
    let czd = g.c as f64 * tau + Complex64::new(g.d as f64, 0.0);
    let image = (g.a as f64 * tau + Complex64::new(g.b as f64, 0.0)) / czd;
    let value = slash_multiplier(g, czd, k)?;
    Ok((AutomorphyFactor { value, weight: k }, image))
}

/// eps_d^{2k} (c/d) (czd)^{-k} for half-integral k, (czd)^{-k} for integral k.
///
/// `czd` is the already-evaluated c*tau + d, so callers that know it exactly
/// (e.g. purely imaginary on cusp-anchored paths) avoid rounding.
pub fn slash_multiplier(g: &GroupElement, czd: Complex64, k: HalfInteger) -> Result<Complex64> {
    if k.is_integral() {
        return Ok(pow_principal(czd, -k.to_f64()));
    }
    // -gamma acts identically; normalize so the Jacobi symbol never sees
    // the degenerate bottom entries (0, -1)
    let (g, czd) = if g.c < 0 || (g.c == 0 && g.d < 0) { (g.neg(), -czd) } else { (*g, czd) };
    let g = &g;
    if g.c.rem_euclid(4) != 0 {
        return Err(Error::Domain(format!(
            "half-integral weight slash needs c = 0 (mod 4), got c = {}",
            g.c
        )));
    }
    let e = eps(g.d)?;
    // eps_d^{2k} with 2k odd: reduce the exponent mod 4 since eps^4 = 1
    let e2k = match (k.0).rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => e,
        2 => e * e,
        3 => e * e * e,
        _ => unreachable!(),
    };
    let jac = kronecker(g.c, g.d) as f64;
    if jac == 0.0 {
        return Err(Error::Domain(format!(
            "Jacobi symbol ({}/{}) vanishes; matrix not coprime",
            g.c, g.d
        )));
    }
    Ok(e2k * jac * pow_principal(czd, -k.to_f64()))
}

/// Dedekind sum s(h, q) = sum_{r=1}^{q-1} ((r/q))((hr/q)), exact.
///
/// Computed by the reciprocity recursion, which keeps denominators dividing
/// 12hq at every step; the direct sawtooth sum is kept as a test oracle.
pub fn dedekind_sum(h: i64, q: i64) -> Result<Ratio<i128>> {
    if q < 1 {
        return Err(Error::Domain(format!("dedekind_sum needs q >= 1, got {q}")));
    }
    if h.gcd(&q) != 1 {
        return Err(Error::Domain(format!("dedekind_sum needs gcd(h,q)=1, got ({h},{q})")));
    }
    let hm = (h as i128).rem_euclid(q as i128);
    Ok(dedekind_rec(hm, q as i128))
}

fn dedekind_rec(h: i128, q: i128) -> Ratio<i128> {
    // invariant: 0 <= h < q, gcd(h, q) = 1
    if h == 0 {
        return Ratio::new(0, 1); // only reachable with q = 1
    }
    // s(h,q) + s(q,h) = -1/4 + (h/q + q/h + 1/(hq))/12, and s(q,h) = s(q mod h, h)
    let rec = -Ratio::new(1, 4)
        + (Ratio::new(h, q) + Ratio::new(q, h) + Ratio::new(1, h * q)) / 12;
    rec - dedekind_rec(q.rem_euclid(h), h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    /// Legendre symbol by enumerating squares modulo an odd prime.
    fn legendre_by_squares(a: i64, p: i64) -> i64 {
        let r = a.rem_euclid(p);
        if r == 0 {
            return 0;
        }
        for x in 1..p {
            if (x * x).rem_euclid(p) == r {
                return 1;
            }
        }
        -1
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(1, 1), 1);
        // (2/3): 2 is not a square mod 3
        assert_eq!(legendre_by_squares(2, 3), -1);
        assert_eq!(kronecker(2, 3), -1);
        // (12/25) = (12/5)^2 = (-1)^2 = +1; the Legendre factors are the oracle
        let by_primes = legendre_by_squares(12, 5) * legendre_by_squares(12, 5);
        assert_eq!(by_primes, 1);
        assert_eq!(kronecker(12, 25), by_primes);
    }

    #[test]
    fn kronecker_matches_legendre_on_odd_primes() {
        for &p in &[3i64, 5, 7, 11, 13, 17, 19, 23] {
            for a in -30..30 {
                assert_eq!(kronecker(a, p), legendre_by_squares(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn kronecker_multiplicative_in_top() {
        for n in -50i64..=50 {
            for a in -50i64..=50 {
                for b in -50i64..=50 {
                    let lhs = kronecker(a, n) * kronecker(b, n);
                    let rhs = kronecker(a * b, n);
                    assert_eq!(lhs, rhs, "a={a} b={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn kronecker_multiplicative_in_bottom() {
        for a in -50i64..=50 {
            for m in -20i64..=20 {
                for n in -20i64..=20 {
                    // skip the corners where no self-consistent convention
                    // exists: bottom zero, and top zero against (-1)(-1)
                    if m == 0 || n == 0 || (a == 0 && m == -1 && n == -1) {
                        continue;
                    }
                    assert_eq!(
                        kronecker(a, m) * kronecker(a, n),
                        kronecker(a, m * n),
                        "a={a} m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn eps_examples() {
        assert_eq!(eps(1).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(eps(3).unwrap(), Complex64::new(0.0, 1.0));
        // -5 = 3 (mod 4)
        assert_eq!(eps(-5).unwrap(), Complex64::new(0.0, 1.0));
        assert!(eps(4).is_err());
    }

    #[test]
    fn eps_squared_is_chi_minus_four() {
        for d in (-99i64..=99).filter(|d| d % 2 != 0) {
            let e = eps(d).unwrap();
            let e2 = e * e;
            let chi = kronecker(-4, d) as f64;
            assert!((e2 - Complex64::new(chi, 0.0)).norm() < 1e-15, "d={d}");
        }
    }

    #[test]
    fn gamma0_gamma1_membership() {
        let id = GroupElement::identity();
        assert!(in_gamma0(&id, 4));
        assert!(in_gamma1(&id, 4));
        let g = GroupElement::new(1, 0, 4, 1).unwrap();
        assert!(in_gamma0(&g, 4));
        assert!(in_gamma1(&g, 4));
        let s = GroupElement::new(0, -1, 1, 0).unwrap();
        assert!(!in_gamma0(&s, 4));
        let h = GroupElement::new(3, 1, 8, 3).unwrap();
        assert!(in_gamma0(&h, 4));
        assert!(!in_gamma1(&h, 4));
    }

    #[test]
    fn automorphy_identity_and_translation() {
        let tau = Complex64::new(0.3, 1.2);
        let k = HalfInteger(1); // 1/2
        let (f, img) = automorphy(&GroupElement::identity(), tau, k, 4).unwrap();
        assert!((f.value - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((img - tau).norm() < 1e-15);

        let t = GroupElement::translation(1);
        let (f, img) = automorphy(&t, Complex64::new(0.0, 1.0), k, 4).unwrap();
        assert!((f.value - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((img - Complex64::new(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn automorphy_gamma0_4_example() {
        // g = (1,0;4,1), tau = i, k = 1/2: multiplier (1+4i)^{-1/2}, image i/(4i+1)
        let g = GroupElement::new(1, 0, 4, 1).unwrap();
        let tau = Complex64::new(0.0, 1.0);
        let (f, img) = automorphy(&g, tau, HalfInteger(1), 4).unwrap();
        let expected = pow_principal(Complex64::new(1.0, 4.0), -0.5);
        assert!((f.value - expected).norm() < 1e-15);
        let expected_img = tau / Complex64::new(1.0, 4.0);
        assert!((img - expected_img).norm() < 1e-15);
        // modulus invariant |value| = |c tau + d|^{-k}
        assert!((f.value.norm() - Complex64::new(1.0, 4.0).norm().powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn automorphy_rejects_half_integral_outside_gamma0_4() {
        let s = GroupElement::new(0, -1, 1, 0).unwrap();
        assert!(automorphy(&s, Complex64::new(0.0, 1.0), HalfInteger(1), 4).is_err());
        // integral weight is fine
        assert!(automorphy(&s, Complex64::new(0.0, 1.0), HalfInteger(4), 1).is_ok());
    }

    /// Direct sawtooth-sum definition, used as the oracle for the recursion.
    fn dedekind_direct(h: i64, q: i64) -> Ratio<i128> {
        let saw = |num: i128, den: i128| -> Ratio<i128> {
            let r = num.rem_euclid(den);
            if r == 0 {
                Ratio::zero()
            } else {
                Ratio::new(r, den) - Ratio::new(1, 2)
            }
        };
        let (h, q) = (h as i128, q as i128);
        let mut s = Ratio::zero();
        for r in 1..q {
            s += saw(r, q) * saw(h * r, q);
        }
        s
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(0, 1).unwrap(), Ratio::new(0, 1));
        assert_eq!(dedekind_sum(1, 2).unwrap(), Ratio::new(0, 1));
        assert_eq!(dedekind_sum(1, 3).unwrap(), Ratio::new(1, 18));
        assert!(dedekind_sum(2, 4).is_err());
    }

    #[test]
    fn dedekind_matches_direct_sum() {
        for q in 1i64..=40 {
            for h in 0..q.max(1) {
                if h.gcd(&q) != 1 {
                    continue;
                }
                assert_eq!(dedekind_sum(h, q).unwrap(), dedekind_direct(h, q), "h={h} q={q}");
            }
        }
    }

    #[test]
    fn dedekind_reciprocity_exact() {
        for q in 1i64..=40 {
            for h in 1..=40i64 {
                if h.gcd(&q) != 1 {
                    continue;
                }
                let lhs = dedekind_sum(h, q).unwrap() + dedekind_sum(q, h).unwrap();
                let (hh, qq) = (h as i128, q as i128);
                let rhs = -Ratio::new(1, 4)
                    + (Ratio::new(hh, qq) + Ratio::new(qq, hh) + Ratio::new(1, hh * qq)) / 12;
                assert_eq!(lhs, rhs, "h={h} q={q}");
            }
        }
    }

    #[test]
    fn reduced_rational_canonical() {
        let r = ReducedRational::new(6, -4).unwrap();
        assert_eq!((r.numer(), r.denom()), (-3, 2));
        assert_eq!(ReducedRational::parse("2/5").unwrap(), ReducedRational::new(2, 5).unwrap());
        assert_eq!(ReducedRational::parse("-3").unwrap(), ReducedRational::new(-3, 1).unwrap());
        assert!(ReducedRational::new(1, 0).is_err());
        assert!(ReducedRational::parse("1/0").is_err());
    }

    #[test]
    fn moebius_rational_exact() {
        let g = GroupElement::new(1, 0, 64, 1).unwrap();
        let x = ReducedRational::new(1, 1).unwrap();
        assert_eq!(g.apply_rational(x).unwrap(), ReducedRational::new(1, 65).unwrap());
        let pole = ReducedRational::new(-1, 64).unwrap();
        assert!(g.apply_rational(pole).is_err());
        assert_eq!(g.excluded_point().unwrap(), pole);
    }
}
