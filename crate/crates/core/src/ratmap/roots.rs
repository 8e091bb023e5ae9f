//! Exact roots over the Gaussian rationals.
//!
//! No numerical root finding: a root is reported only if it is `p/q` with
//! Gaussian integers `p | a₀`, `q | aₙ` of height at most [`ROOT_SEARCH_HEIGHT`];
//! whatever does not split that way is left as square-free factors.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::map::{RatMapError, RationalMap};
use super::poly::Poly;
use super::text::format_poly;
use crate::scalar::format_scalar;

type GaussRat = Complex<BigRational>;
type GaussInt = Complex<BigInt>;

pub const ROOT_SEARCH_HEIGHT: i64 = 64;

/// Critical points of a rational map on the sphere, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalReport {
    pub degree: usize,
    pub polynomial: Poly<GaussRat>,
    pub at_infinity: usize,
    pub roots: Vec<(GaussRat, usize)>,
    pub unresolved: Vec<(Poly<GaussRat>, usize)>,
}

impl CriticalReport {
    /// Always `2·deg − 2`.
    pub fn total(&self) -> usize {
        self.at_infinity
            + self.roots.iter().map(|(_, m)| m).sum::<usize>()
            + self
                .unresolved
                .iter()
                .map(|(f, m)| f.degree_or_zero() * m)
                .sum::<usize>()
    }
}

impl fmt::Display for CriticalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .roots
            .iter()
            .map(|(r, m)| format!("{} (x{m})", format_scalar(r)))
            .collect();
        if self.at_infinity > 0 {
            parts.push(format!("inf (x{})", self.at_infinity));
        }
        parts.extend(
            self.unresolved
                .iter()
                .map(|(p, m)| format!("roots of {} (x{m})", format_poly(p))),
        );
        write!(f, "{}", parts.join(", "))
    }
}

pub fn critical_points(r: &RationalMap<GaussRat>) -> Result<CriticalReport, RatMapError> {
    let polynomial = r.critical_point_polynomial()?.monic();
    let at_infinity = r.critical_multiplicity_at_infinity()?;
    let (roots, unresolved) = factor_roots(&polynomial);
    Ok(CriticalReport {
        degree: r.degree(),
        polynomial,
        at_infinity,
        roots,
        unresolved,
    })
}

/// Splits `p` into Gaussian rational roots with multiplicity and the
/// square-free leftovers that have none within the search height.
#[allow(clippy::type_complexity)]
pub fn factor_roots(p: &Poly<GaussRat>) -> (Vec<(GaussRat, usize)>, Vec<(Poly<GaussRat>, usize)>) {
    let mut roots = Vec::new();
    let mut unresolved = Vec::new();
    for (factor, mult) in p.square_free() {
        let mut rest = factor;
        for root in gaussian_rational_roots(&rest) {
            let linear = Poly::new(vec![-root.clone(), GaussRat::one()]);
            rest = rest.div_rem(&linear).0;
            roots.push((root, mult));
        }
        if rest.degree_or_zero() > 0 {
            unresolved.push((rest, mult));
        }
    }
    roots.sort_by(|(a, _), (b, _)| {
        (&a.re, &a.im)
            .partial_cmp(&(&b.re, &b.im))
            .expect("rationals are ordered")
    });
    (roots, unresolved)
}

/// Distinct Gaussian rational roots found by the divisor search.
pub fn gaussian_rational_roots(p: &Poly<GaussRat>) -> Vec<GaussRat> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut found = Vec::new();
    if deg == 0 {
        return found;
    }
    let coeffs = integral_coefficients(p);
    let low = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("non-zero polynomial");
    if low > 0 {
        found.push(GaussRat::zero());
    }
    if low == deg {
        return found;
    }
    let a0 = &coeffs[low];
    let an = &coeffs[deg];
    let box_ints = box_gaussian_integers(ROOT_SEARCH_HEIGHT);
    let numerators: Vec<&GaussInt> = box_ints.iter().filter(|g| divides(g, a0)).collect();
    // one denominator per associate class: re > 0, im ≥ 0
    let denominators: Vec<&GaussInt> = box_ints
        .iter()
        .filter(|g| g.re > BigInt::zero() && g.im >= BigInt::zero() && divides(g, an))
        .collect();
    let screen = FloatScreen::new(&coeffs[low..=deg]);
    for q in &denominators {
        for pn in &numerators {
            if !screen.may_vanish(pn, q) {
                continue;
            }
            let cand = gauss_quotient(pn, q);
            if !found.contains(&cand) && p.eval(&cand).is_zero() {
                found.push(cand);
            }
        }
    }
    found
}

/// Cheap rejection before exact evaluation: the Cauchy bound on root size and
/// a float residual far above its rounding error. Both only ever discard
/// non-roots; without finite float coefficients nothing is discarded.
struct FloatScreen {
    coeffs: Option<Vec<Complex<f64>>>,
    bound: f64,
}

impl FloatScreen {
    fn new(coeffs: &[GaussInt]) -> Self {
        let floats: Option<Vec<Complex<f64>>> = coeffs
            .iter()
            .map(|c| {
                let z = Complex::new(c.re.to_f64()?, c.im.to_f64()?);
                (z.re.is_finite() && z.im.is_finite()).then_some(z)
            })
            .collect();
        let bound = match &floats {
            Some(f) => {
                let lead = f.last().expect("non-empty").norm();
                1.0 + f[..f.len() - 1]
                    .iter()
                    .map(|c| c.norm() / lead)
                    .fold(0.0, f64::max)
            }
            None => f64::INFINITY,
        };
        FloatScreen {
            coeffs: floats,
            bound,
        }
    }

    fn may_vanish(&self, p: &GaussInt, q: &GaussInt) -> bool {
        let (Some(coeffs), Some(p), Some(q)) = (&self.coeffs, to_float(p), to_float(q)) else {
            return true;
        };
        let x = p / q;
        if x.norm() > self.bound * (1.0 + 1e-9) + 1e-9 {
            return false;
        }
        let mut value = Complex::new(0.0, 0.0);
        let mut scale = 0.0;
        for c in coeffs.iter().rev() {
            value = value * x + c;
            scale = scale * x.norm() + c.norm();
        }
        value.norm() <= 1e-8 * scale
    }
}

fn to_float(g: &GaussInt) -> Option<Complex<f64>> {
    Some(Complex::new(g.re.to_f64()?, g.im.to_f64()?))
}

/// Coefficients scaled by the lcm of all denominators.
fn integral_coefficients(p: &Poly<GaussRat>) -> Vec<GaussInt> {
    let lcm = p
        .coeffs()
        .iter()
        .flat_map(|c| [c.re.denom().clone(), c.im.denom().clone()])
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    p.coeffs()
        .iter()
        .map(|c| {
            let scale = |q: &BigRational| q.numer() * (&lcm / q.denom());
            Complex::new(scale(&c.re), scale(&c.im))
        })
        .collect()
}

fn box_gaussian_integers(h: i64) -> Vec<GaussInt> {
    let mut out = Vec::new();
    for re in -h..=h {
        for im in -h..=h {
            if re != 0 || im != 0 {
                out.push(Complex::new(BigInt::from(re), BigInt::from(im)));
            }
        }
    }
    out
}

/// `g | a` in `ℤ[i]`: `a·ḡ` is divisible by `N(g)` in both parts.
fn divides(g: &GaussInt, a: &GaussInt) -> bool {
    let norm = &g.re * &g.re + &g.im * &g.im;
    let prod = a * g.conj();
    prod.re.is_multiple_of(&norm) && prod.im.is_multiple_of(&norm)
}

fn gauss_quotient(p: &GaussInt, q: &GaussInt) -> GaussRat {
    let lift = |g: &GaussInt| {
        Complex::new(
            BigRational::from_integer(g.re.clone()),
            BigRational::from_integer(g.im.clone()),
        )
    };
    lift(p) / lift(q)
}
