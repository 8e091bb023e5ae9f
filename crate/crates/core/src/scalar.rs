//! Scalar traits shared by the algebraic and numeric layers.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

/// A field with exact or floating arithmetic. Exactness is what the rational
/// map layer relies on (gcds, equality of normal forms); floats satisfy the
/// bounds but only give approximate answers there.
pub trait Field:
    Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    /// `(Σ aₖ PᵏQⁿ⁻ᵏ, Σ bₖ PᵏQⁿ⁻ᵏ)` for `n = max(deg a, deg b)`, coefficients
    /// low to high. Exact fields override it to run over integers.
    fn compose_homogeneous(
        a: &[Self],
        b: &[Self],
        p: &[Self],
        q: &[Self],
    ) -> (Vec<Self>, Vec<Self>) {
        homogeneous_horner(a, b, p, q)
    }

    /// `xs / by` term by term.
    fn divide_all(xs: &[Self], by: &Self) -> Vec<Self> {
        let inv = Self::one() / by.clone();
        xs.iter().map(|x| x.clone() * inv.clone()).collect()
    }
}

impl Field for f32 {}
impl Field for f64 {}
impl Field for Complex<f32> {}
impl Field for Complex<f64> {}

impl Field for BigRational {
    fn compose_homogeneous(
        a: &[Self],
        b: &[Self],
        p: &[Self],
        q: &[Self],
    ) -> (Vec<Self>, Vec<Self>) {
        // scaling (a, b) or (p, q) by a constant does not change the quotient
        let outer = denominator_lcm(a.iter().chain(b));
        let inner = denominator_lcm(p.iter().chain(q));
        let lift = |xs: &[Self], s: &BigInt| -> Vec<BigInt> {
            xs.iter().map(|x| x.numer() * (s / x.denom())).collect()
        };
        let (num, den) = homogeneous_horner(
            &lift(a, &outer),
            &lift(b, &outer),
            &lift(p, &inner),
            &lift(q, &inner),
        );
        let back = |xs: Vec<BigInt>| xs.into_iter().map(BigRational::from_integer).collect();
        (back(num), back(den))
    }
}

impl Field for Complex<BigRational> {
    fn compose_homogeneous(
        a: &[Self],
        b: &[Self],
        p: &[Self],
        q: &[Self],
    ) -> (Vec<Self>, Vec<Self>) {
        let parts = |xs: &[Self]| {
            xs.iter()
                .flat_map(|c| [&c.re, &c.im])
                .cloned()
                .collect::<Vec<_>>()
        };
        let outer = denominator_lcm(parts(a).iter().chain(&parts(b)));
        let inner = denominator_lcm(parts(p).iter().chain(&parts(q)));
        let lift = |xs: &[Self], s: &BigInt| -> Vec<Complex<BigInt>> {
            xs.iter()
                .map(|c| {
                    Complex::new(
                        c.re.numer() * (s / c.re.denom()),
                        c.im.numer() * (s / c.im.denom()),
                    )
                })
                .collect()
        };
        let (num, den) = homogeneous_horner(
            &lift(a, &outer),
            &lift(b, &outer),
            &lift(p, &inner),
            &lift(q, &inner),
        );
        let back = |xs: Vec<Complex<BigInt>>| {
            xs.into_iter()
                .map(|c| {
                    Complex::new(
                        BigRational::from_integer(c.re),
                        BigRational::from_integer(c.im),
                    )
                })
                .collect()
        };
        (back(num), back(den))
    }

    /// Clears denominators and multiplies by the conjugate, so each part is
    /// reduced once instead of after every rational product.
    fn divide_all(xs: &[Self], by: &Self) -> Vec<Self> {
        let s = denominator_lcm(xs.iter().chain([by]).flat_map(|c| [&c.re, &c.im]));
        let int = |x: &BigRational| x.numer() * (&s / x.denom());
        let (a, b) = (int(&by.re), int(&by.im));
        let norm = &a * &a + &b * &b;
        xs.iter()
            .map(|x| {
                let (c, d) = (int(&x.re), int(&x.im));
                Complex::new(
                    BigRational::new(&c * &a + &d * &b, norm.clone()),
                    BigRational::new(&d * &a - &c * &b, norm.clone()),
                )
            })
            .collect()
    }
}

fn denominator_lcm<'a>(qs: impl Iterator<Item = &'a BigRational>) -> BigInt {
    qs.fold(BigInt::one(), |acc, q| {
        if q.denom().is_one() {
            acc
        } else {
            acc.lcm(q.denom())
        }
    })
}

/// Horner's scheme in homogeneous form over any commutative ring:
/// `accₙ = aₙ`, `accₖ = accₖ₊₁·P + aₖ·Qⁿ⁻ᵏ`. Only products with the small
/// polynomials `P` and `Q` occur.
pub(crate) fn homogeneous_horner<T>(a: &[T], b: &[T], p: &[T], q: &[T]) -> (Vec<T>, Vec<T>)
where
    T: Clone + Num,
{
    let n = a.len().max(b.len()).saturating_sub(1);
    let at = |xs: &[T], k: usize| xs.get(k).cloned().unwrap_or_else(T::zero);
    let mut num = vec![at(a, n)];
    let mut den = vec![at(b, n)];
    let mut q_pow = vec![T::one()];
    for k in (0..n).rev() {
        q_pow = ring_mul(&q_pow, q);
        num = ring_mul(&num, p);
        den = ring_mul(&den, p);
        add_scaled(&mut num, &at(a, k), &q_pow);
        add_scaled(&mut den, &at(b, k), &q_pow);
    }
    (num, den)
}

fn ring_mul<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Num,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let cur = std::mem::replace(&mut out[i + j], T::zero());
            out[i + j] = cur + x.clone() * y.clone();
        }
    }
    out
}

/// `acc += c·xs`, growing `acc` as needed.
fn add_scaled<T>(acc: &mut Vec<T>, c: &T, xs: &[T])
where
    T: Clone + Num,
{
    if c.is_zero() {
        return;
    }
    if acc.len() < xs.len() {
        acc.resize(xs.len(), T::zero());
    }
    for (slot, x) in acc.iter_mut().zip(xs) {
        let cur = std::mem::replace(slot, T::zero());
        *slot = cur + c.clone() * x.clone();
    }
}

/// Complex conjugation; the identity on real fields.
pub trait Conjugate {
    fn conjugate(&self) -> Self;
}

impl Conjugate for BigRational {
    fn conjugate(&self) -> Self {
        self.clone()
    }
}

impl Conjugate for f64 {
    fn conjugate(&self) -> Self {
        *self
    }
}

impl Conjugate for f32 {
    fn conjugate(&self) -> Self {
        *self
    }
}

impl<T: Clone + Num + Neg<Output = T>> Conjugate for Complex<T> {
    fn conjugate(&self) -> Self {
        self.conj()
    }
}

/// Exact scalars embedded in `ℚ(i)`: what the text syntax can spell.
pub trait ExactScalar: Field + Conjugate {
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self>;
    fn parts(&self) -> (BigRational, BigRational);
}

impl ExactScalar for BigRational {
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self> {
        im.is_zero().then_some(re)
    }

    fn parts(&self) -> (BigRational, BigRational) {
        (self.clone(), BigRational::zero())
    }
}

impl ExactScalar for Complex<BigRational> {
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self> {
        Some(Complex::new(re, im))
    }

    fn parts(&self) -> (BigRational, BigRational) {
        (self.re.clone(), self.im.clone())
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `a/b + (c/d) i`.
pub fn gauss(re: (i64, i64), im: (i64, i64)) -> Complex<BigRational> {
    Complex::new(rational(re.0, re.1), rational(im.0, im.1))
}

pub fn gauss_int(re: i64, im: i64) -> Complex<BigRational> {
    gauss((re, 1), (im, 1))
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Text of a scalar as a coefficient: `3/4`, `-2i`, `(1/2-3/4i)`.
pub(crate) fn format_scalar<K: ExactScalar>(c: &K) -> String {
    let (re, im) = c.parts();
    let unit = |q: &BigRational| {
        if q.is_one() {
            String::new()
        } else {
            format_rational(q)
        }
    };
    match (re.is_zero(), im.is_zero()) {
        (_, true) => format_rational(&re),
        (true, false) => {
            let sign = if im.is_negative() { "-" } else { "" };
            format!("{sign}{}i", unit(&im.abs()))
        }
        (false, false) => {
            let sign = if im.is_negative() { '-' } else { '+' };
            format!("({}{}{}i)", format_rational(&re), sign, unit(&im.abs()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_text() {
        assert_eq!(format_scalar(&gauss((3, 4), (0, 1))), "3/4");
        assert_eq!(format_scalar(&gauss((0, 1), (-2, 1))), "-2i");
        assert_eq!(format_scalar(&gauss((1, 2), (-3, 4))), "(1/2-3/4i)");
        assert_eq!(format_scalar(&rational(-6, 4)), "-3/2");
        assert_eq!(format_scalar(&gauss_int(0, -1)), "-i");
        assert_eq!(format_scalar(&gauss_int(2, 1)), "(2+i)");
    }

    #[test]
    fn conjugation() {
        assert_eq!(gauss_int(2, 5).conjugate(), gauss_int(2, -5));
        assert_eq!(rational(1, 3).conjugate(), rational(1, 3));
    }
}
