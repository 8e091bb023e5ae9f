use thiserror::Error;

use super::poly::Poly;
use crate::scalar::{Conjugate, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatMapError {
    #[error("0/0 is not a rational map")]
    Indeterminate,
    #[error("operation needs a non-constant map")]
    Constant,
    #[error("Möbius coefficients have zero determinant")]
    Singular,
    #[error("map of degree {0} is not a Möbius transformation")]
    NotMobius(usize),
}

/// A point of the Riemann sphere over `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point<K> {
    Finite(K),
    Infinity,
}

/// `num / den` in lowest terms with a monic denominator.
///
/// Constants are maps of degree 0; the constant `∞` is stored as `1 / 0`,
/// the only normal form with a vanishing denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMap<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RationalMap<K> {
    /// Reduces by the gcd and makes the denominator monic.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self, RatMapError> {
        if num.is_zero() && den.is_zero() {
            return Err(RatMapError::Indeterminate);
        }
        let g = Poly::gcd(&num, &den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        Ok(Self::from_coprime(num, den))
    }

    /// Normalizes the scale of an already coprime pair.
    pub(crate) fn from_coprime(num: Poly<K>, den: Poly<K>) -> Self {
        match den.leading() {
            None => RationalMap {
                num: Poly::one(),
                den: Poly::zero(),
            },
            Some(lead) => RationalMap {
                num: Poly::new(K::divide_all(num.coeffs(), lead)),
                den: Poly::new(K::divide_all(den.coeffs(), lead)),
            },
        }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RationalMap {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn identity() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn infinity() -> Self {
        RationalMap {
            num: Poly::one(),
            den: Poly::zero(),
        }
    }

    pub fn point(p: Point<K>) -> Self {
        match p {
            Point::Finite(c) => Self::constant(c),
            Point::Infinity => Self::infinity(),
        }
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn constant_value(&self) -> Option<Point<K>> {
        if !self.is_constant() {
            return None;
        }
        Some(if self.den.is_zero() {
            Point::Infinity
        } else {
            Point::Finite(self.num.coeff(0) / self.den.coeff(0))
        })
    }

    /// Value at a point of the sphere.
    pub fn eval(&self, p: &Point<K>) -> Point<K> {
        let (n, d) = match p {
            Point::Finite(x) => (self.num.eval(x), self.den.eval(x)),
            Point::Infinity => {
                let deg = self.degree();
                (self.num.coeff(deg), self.den.coeff(deg))
            }
        };
        if d.is_zero() {
            Point::Infinity
        } else {
            Point::Finite(n / d)
        }
    }

    /// `self ∘ inner`.
    ///
    /// Both maps are homogenized to their full degree, so that
    /// `N(P/Q)·Q^n = Σ aₖ PᵏQⁿ⁻ᵏ`. Homogeneous forms of coprime pairs have
    /// no common zero on the sphere, so the result is already in lowest terms
    /// and its degree is exactly `deg(self)·deg(inner)`.
    pub fn compose(&self, inner: &RationalMap<K>) -> RationalMap<K> {
        let n = self.degree();
        if n == 0 {
            return self.clone();
        }
        let (num, den) = K::compose_homogeneous(
            self.num.coeffs(),
            self.den.coeffs(),
            inner.num.coeffs(),
            inner.den.coeffs(),
        );
        Self::from_coprime(Poly::new(num), Poly::new(den))
    }

    /// Numerator of the derivative, `num′·den − num·den′`. Its roots with
    /// multiplicity are the finite critical points, poles included.
    pub fn critical_point_polynomial(&self) -> Result<Poly<K>, RatMapError> {
        if self.is_constant() {
            return Err(RatMapError::Constant);
        }
        Ok(&(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative()))
    }

    /// Multiplicity of `∞` as a critical point: `2·deg − 2` minus the finite count.
    pub fn critical_multiplicity_at_infinity(&self) -> Result<usize, RatMapError> {
        let finite = self.critical_point_polynomial()?.degree_or_zero();
        Ok(2 * self.degree() - 2 - finite)
    }
}

impl<K: Field + Conjugate> RationalMap<K> {
    /// Coefficientwise conjugate: `z ↦ conj(R(conj z))`.
    pub fn conjugate(&self) -> Self {
        RationalMap {
            num: self.num.conjugate(),
            den: self.den.conjugate(),
        }
    }
}

/// `(az + b)/(cz + d)` with `ad − bc ≠ 0`, scaled so that `c = 1`, or `d = 1` when `c = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mobius<K> {
    a: K,
    b: K,
    c: K,
    d: K,
}

impl<K: Field> Mobius<K> {
    pub fn new(a: K, b: K, c: K, d: K) -> Result<Self, RatMapError> {
        if (a.clone() * d.clone() - b.clone() * c.clone()).is_zero() {
            return Err(RatMapError::Singular);
        }
        let s = if c.is_zero() { d.clone() } else { c.clone() };
        let inv = K::one() / s;
        Ok(Mobius {
            a: a * inv.clone(),
            b: b * inv.clone(),
            c: c * inv.clone(),
            d: d * inv,
        })
    }

    pub fn identity() -> Self {
        Mobius {
            a: K::one(),
            b: K::zero(),
            c: K::zero(),
            d: K::one(),
        }
    }

    /// `z ↦ kz + t`.
    pub fn affine(k: K, t: K) -> Result<Self, RatMapError> {
        Self::new(k, t, K::zero(), K::one())
    }

    pub fn coefficients(&self) -> [&K; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn inverse(&self) -> Self {
        Self::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
        .expect("inverse of an invertible matrix")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Mobius<K>) -> Self {
        let m = |x: &K, y: &K, z: &K, w: &K| x.clone() * y.clone() + z.clone() * w.clone();
        Self::new(
            m(&self.a, &inner.a, &self.b, &inner.c),
            m(&self.a, &inner.b, &self.b, &inner.d),
            m(&self.c, &inner.a, &self.d, &inner.c),
            m(&self.c, &inner.b, &self.d, &inner.d),
        )
        .expect("product of invertible matrices")
    }

    pub fn to_map(&self) -> RationalMap<K> {
        RationalMap {
            num: Poly::new(vec![self.b.clone(), self.a.clone()]),
            den: Poly::new(vec![self.d.clone(), self.c.clone()]),
        }
    }

    pub fn from_map(r: &RationalMap<K>) -> Result<Self, RatMapError> {
        if r.degree() != 1 {
            return Err(RatMapError::NotMobius(r.degree()));
        }
        Self::new(
            r.num.coeff(1),
            r.num.coeff(0),
            r.den.coeff(1),
            r.den.coeff(0),
        )
    }

    pub fn apply(&self, p: &Point<K>) -> Point<K> {
        self.to_map().eval(p)
    }

    /// The unique Möbius map sending `0, 1, ∞` to the three given distinct points.
    pub fn through_points(
        at_zero: &Point<K>,
        at_one: &Point<K>,
        at_infinity: &Point<K>,
    ) -> Result<Self, RatMapError> {
        use Point::*;
        // z ↦ (z·(w₁ − w₀)·w∞ − w₀·(w₁ − w∞)) / (z·(w₁ − w₀) − (w₁ − w∞)) for finite points;
        // the infinite cases are its limits
        match (at_zero, at_one, at_infinity) {
            (Finite(w0), Finite(w1), Finite(wi)) => {
                let p = w1.clone() - w0.clone();
                let r = w1.clone() - wi.clone();
                Self::new(p.clone() * wi.clone(), -(w0.clone() * r.clone()), p, -r)
            }
            (Infinity, Finite(w1), Finite(wi)) => {
                Self::new(wi.clone(), w1.clone() - wi.clone(), K::one(), K::zero())
            }
            (Finite(w0), Infinity, Finite(wi)) => {
                Self::new(wi.clone(), -w0.clone(), K::one(), -K::one())
            }
            (Finite(w0), Finite(w1), Infinity) => {
                Self::new(w1.clone() - w0.clone(), w0.clone(), K::zero(), K::one())
            }
            _ => Err(RatMapError::Singular),
        }
    }
}

impl<K: Field + Conjugate> Mobius<K> {
    pub fn conjugate(&self) -> Self {
        Mobius {
            a: self.a.conjugate(),
            b: self.b.conjugate(),
            c: self.c.conjugate(),
            d: self.d.conjugate(),
        }
    }
}

impl<K: Field> From<Mobius<K>> for RationalMap<K> {
    fn from(m: Mobius<K>) -> Self {
        m.to_map()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, gauss_int};
    use num_complex::Complex;
    use num_rational::BigRational;
    use num_traits::One;

    type G = Complex<BigRational>;

    fn poly(coeffs: &[i64]) -> Poly<G> {
        Poly::new(coeffs.iter().map(|&c| gauss_int(c, 0)).collect())
    }

    fn map(num: &[i64], den: &[i64]) -> RationalMap<G> {
        RationalMap::new(poly(num), poly(den)).unwrap()
    }

    #[test]
    fn normalization_is_scale_free() {
        let a = map(&[2, 4], &[6, 0, 2]);
        let b = RationalMap::new(
            poly(&[2, 4]).scale(&gauss((3, 7), (1, 2))),
            poly(&[6, 0, 2]).scale(&gauss((3, 7), (1, 2))),
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(a.den().leading().is_some_and(One::is_one));
        assert_eq!(map(&[-1, 0, 1], &[1, 1]), map(&[-1, 1], &[1]));
        assert_eq!(
            RationalMap::new(Poly::<G>::zero(), Poly::zero()),
            Err(RatMapError::Indeterminate)
        );
    }

    #[test]
    fn composition_examples() {
        let sq = map(&[0, 0, 1], &[1]);
        let shift = map(&[1, 1], &[1]);
        assert_eq!(sq.compose(&shift), map(&[1, 2, 1], &[1]));
        let recip = map(&[1], &[0, 1]);
        assert_eq!(recip.compose(&recip), RationalMap::identity());
        let c = RationalMap::constant(gauss_int(3, -1));
        assert_eq!(c.compose(&sq), c);
        // cancellation case: (z²)∘(1/z) = 1/z²
        let r = sq.compose(&recip);
        assert_eq!(r, map(&[1], &[0, 0, 1]));
        assert_eq!(r.degree(), 2);
    }

    #[test]
    fn infinity_constant() {
        let recip = map(&[1], &[0, 1]);
        let zero = RationalMap::constant(gauss_int(0, 0));
        assert_eq!(recip.compose(&zero), RationalMap::infinity());
        assert_eq!(recip.compose(&RationalMap::infinity()), zero);
        let poly_map = map(&[1, 0, 3], &[1]);
        assert_eq!(
            poly_map.compose(&RationalMap::infinity()),
            RationalMap::infinity()
        );
        assert_eq!(
            map(&[1, 2], &[5, 4]).compose(&RationalMap::infinity()),
            RationalMap::constant(gauss((1, 2), (0, 1)))
        );
        assert_eq!(
            RationalMap::<G>::infinity().constant_value(),
            Some(Point::Infinity)
        );
    }

    #[test]
    fn critical_points_polynomial() {
        assert_eq!(
            map(&[0, 0, 1], &[1]).critical_point_polynomial().unwrap(),
            poly(&[0, 2])
        );
        // (z² + 1)/z
        assert_eq!(
            map(&[1, 0, 1], &[0, 1])
                .critical_point_polynomial()
                .unwrap(),
            poly(&[-1, 0, 1])
        );
        assert_eq!(
            map(&[0, 0, 1], &[1])
                .critical_multiplicity_at_infinity()
                .unwrap(),
            1
        );
        assert_eq!(
            map(&[1, 0, 1], &[0, 1])
                .critical_multiplicity_at_infinity()
                .unwrap(),
            0
        );
        assert_eq!(
            RationalMap::constant(gauss_int(1, 0)).critical_point_polynomial(),
            Err(RatMapError::Constant)
        );
    }

    #[test]
    fn mobius_group() {
        let h = Mobius::new(
            gauss_int(1, 1),
            gauss_int(2, 0),
            gauss_int(0, 1),
            gauss_int(3, 0),
        )
        .unwrap();
        let g = Mobius::affine(gauss_int(2, 0), gauss_int(-1, 0)).unwrap();
        assert_eq!(h.compose(&h.inverse()), Mobius::identity());
        assert_eq!(h.compose(&g).to_map(), h.to_map().compose(&g.to_map()));
        assert_eq!(Mobius::from_map(&h.to_map()).unwrap(), h);
        assert!(Mobius::new(
            gauss_int(1, 0),
            gauss_int(2, 0),
            gauss_int(2, 0),
            gauss_int(4, 0)
        )
        .is_err());
    }

    #[test]
    fn three_point_interpolation() {
        let h = Mobius::new(
            gauss_int(1, 1),
            gauss_int(2, 0),
            gauss_int(0, 1),
            gauss_int(3, 0),
        )
        .unwrap();
        let pts = [
            Point::Finite(gauss_int(0, 0)),
            Point::Finite(gauss_int(1, 0)),
            Point::Infinity,
        ];
        for m in [
            h.clone(),
            h.inverse(),
            Mobius::identity(),
            Mobius::affine(gauss_int(2, 0), gauss_int(1, 0)).unwrap(),
            Mobius::new(
                gauss_int(0, 0),
                gauss_int(1, 0),
                gauss_int(1, 0),
                gauss_int(0, 0),
            )
            .unwrap(),
            Mobius::new(
                gauss_int(0, 0),
                gauss_int(1, 0),
                gauss_int(1, 0),
                gauss_int(-1, 0),
            )
            .unwrap(),
        ] {
            let imgs: Vec<_> = pts.iter().map(|p| m.apply(p)).collect();
            assert_eq!(
                Mobius::through_points(&imgs[0], &imgs[1], &imgs[2]).unwrap(),
                m
            );
        }
    }
}
