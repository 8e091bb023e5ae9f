use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Conjugate, Field};

/// Dense univariate polynomial, coefficients from low to high degree, with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn monomial(c: K, power: usize) -> Self {
        let mut coeffs = vec![K::zero(); power];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub(crate) fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => Self::new(K::divide_all(&self.coeffs, lead)),
        }
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * K::from_usize(k).expect("small integer"))
                .collect(),
        )
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(inner(z))` by Horner's scheme.
    pub fn compose(&self, inner: &Poly<K>) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly<K>) -> (Poly<K>, Poly<K>) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = K::one() / divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Square-free decomposition `self = c · ∏ fᵢ^i` (Yun), returned as
    /// `(fᵢ, i)` with monic non-constant `fᵢ`. Characteristic zero only.
    pub fn square_free(&self) -> Vec<(Poly<K>, usize)> {
        let mut out = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Self::gcd(&f, &df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().is_some_and(|deg| deg > 0) {
            let a = Self::gcd(&b, &d);
            if a.degree().is_some_and(|deg| deg > 0) {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }
}

impl<K: Field + Conjugate> Poly<K> {
    /// Coefficientwise conjugation.
    pub fn conjugate(&self) -> Self {
        Self::new(self.coeffs.iter().map(Conjugate::conjugate).collect())
    }
}

impl<K: Field> Add for &Poly<K> {
    type Output = Poly<K>;

    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<K: Field> Sub for &Poly<K> {
    type Output = Poly<K>;

    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<K: Field> Mul for &Poly<K> {
    type Output = Poly<K>;

    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;

    fn neg(self) -> Poly<K> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<K: Field> One for Poly<K> {
    fn one() -> Self {
        Poly::constant(K::one())
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;

    fn mul(self, rhs: Poly<K>) -> Poly<K> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_rational::BigRational;

    fn q(coeffs: &[i64]) -> Poly<BigRational> {
        Poly::new(coeffs.iter().map(|&c| rational(c, 1)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(q(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(q(&[0, 0]).degree(), None);
        assert!(q(&[]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = q(&[1, 1]); // z + 1
        assert_eq!(&a * &a, q(&[1, 2, 1]));
        assert_eq!(a.pow(3), q(&[1, 3, 3, 1]));
        assert_eq!(q(&[0, 0, 1]).compose(&a), q(&[1, 2, 1]));
        assert_eq!(q(&[1, 0, 1]).derivative(), q(&[0, 2]));
        assert_eq!(q(&[1, 2, 3]).eval(&rational(2, 1)), rational(17, 1));
    }

    #[test]
    fn division_and_gcd() {
        let f = q(&[-1, 0, 1]); // z² − 1
        let g = q(&[1, 1]);
        let (quo, rem) = f.div_rem(&g);
        assert_eq!(quo, q(&[-1, 1]));
        assert!(rem.is_zero());
        let (quo, rem) = q(&[1, 0, 1]).div_rem(&q(&[0, 2]));
        assert_eq!(quo, Poly::new(vec![rational(0, 1), rational(1, 2)]));
        assert_eq!(rem, q(&[1]));
        assert_eq!(Poly::gcd(&f, &q(&[2, 2])), q(&[1, 1]));
        assert_eq!(Poly::gcd(&q(&[1, 0, 1]), &q(&[0, 1])), q(&[1]));
    }

    #[test]
    fn yun_decomposition() {
        // (z − 1)² (z + 2)³ z
        let f = &(&q(&[-1, 1]).pow(2) * &q(&[2, 1]).pow(3)) * &q(&[0, 1]);
        let parts = f.square_free();
        assert_eq!(
            parts,
            vec![(q(&[0, 1]), 1), (q(&[-1, 1]), 2), (q(&[2, 1]), 3)]
        );
    }
}
