//! Sandwich semigroups `g₁ ∗_f g₂ = g₁ ∘ f ∘ g₂` and their isomorphisms
//! `ρ(R) = h⁻¹ ∘ R ∘ g`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;

use super::map::{Mobius, Point, RatMapError, RationalMap};
use super::poly::Poly;
use crate::scalar::{Conjugate, ExactScalar, Field};

type GaussRat = Complex<BigRational>;

/// `g1 ∘ f ∘ g2`.
pub fn sandwich<K: Field>(
    g1: &RationalMap<K>,
    f: &RationalMap<K>,
    g2: &RationalMap<K>,
) -> RationalMap<K> {
    g1.compose(&f.compose(g2))
}

/// `h⁻¹ ∘ R ∘ g`.
pub fn rho<K: Field>(h: &Mobius<K>, g: &Mobius<K>, r: &RationalMap<K>) -> RationalMap<K> {
    h.inverse().to_map().compose(&r.compose(&g.to_map()))
}

/// The isomorphism `R ↦ h⁻¹ ∘ R^σ ∘ g` from `∗_{R₁}` to `∗_{R₂}`, where `σ` is
/// coefficientwise conjugation when the isomorphism reverses orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichIso<K> {
    pub h: Mobius<K>,
    pub g: Mobius<K>,
    pub reverses_orientation: bool,
}

impl<K: Field + Conjugate> SandwichIso<K> {
    pub fn new(h: Mobius<K>, g: Mobius<K>) -> Self {
        SandwichIso {
            h,
            g,
            reverses_orientation: false,
        }
    }

    pub fn reversing(h: Mobius<K>, g: Mobius<K>) -> Self {
        SandwichIso {
            h,
            g,
            reverses_orientation: true,
        }
    }

    fn twist(&self, r: &RationalMap<K>) -> RationalMap<K> {
        if self.reverses_orientation {
            r.conjugate()
        } else {
            r.clone()
        }
    }

    pub fn apply(&self, r: &RationalMap<K>) -> RationalMap<K> {
        rho(&self.h, &self.g, &self.twist(r))
    }

    /// `R₂ = g⁻¹ ∘ R₁^σ ∘ h`, the index making the isomorphism a homomorphism.
    pub fn target(&self, r1: &RationalMap<K>) -> RationalMap<K> {
        self.g
            .inverse()
            .to_map()
            .compose(&self.twist(r1).compose(&self.h.to_map()))
    }
}

/// Which identity a counterexample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `ρ(R ∗_{R₁} Q) = ρ(R) ∗_{R₂} ρ(Q)`
    Homomorphism,
    /// `deg(R ∘ R₁) = deg(ρ(R) ∘ R₂)`
    LeftDegree,
    /// `deg(R₁ ∘ Q) = deg(R₂ ∘ ρ(Q))`
    RightDegree,
    /// `ρ(R) = M ∘ R^σ ∘ M⁻¹ ∘ γ` with `γ = ρ(Id)` and `M` read off `ρ` on constants
    TheoremForm,
    /// `ρ(R) = M ∘ R^σ ∘ M⁻¹` when `ρ(Id) = Id`
    Corollary,
    /// `ρ(R₁) = R₂` when `ρ(Id) = Id`
    CorollaryIndex,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Homomorphism => "homomorphism",
            Identity::LeftDegree => "left-degree",
            Identity::RightDegree => "right-degree",
            Identity::TheoremForm => "theorem-form",
            Identity::Corollary => "corollary",
            Identity::CorollaryIndex => "corollary-index",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub identity: Identity,
    /// Index of the sample pair, `None` for per-instance checks.
    pub sample: Option<usize>,
    pub r: Option<String>,
    pub q: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "counterexample identity={}", self.identity)?;
        if let Some(k) = self.sample {
            write!(f, " sample={k}")?;
        }
        if let Some(r) = &self.r {
            write!(f, " R={r}")?;
        }
        if let Some(q) = &self.q {
            write!(f, " Q={q}")?;
        }
        write!(f, " lhs={} rhs={}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub samples: usize,
    pub r2: String,
    /// `ρ(Id) = Id`, so the corollary form was checked too.
    pub corollary_checked: bool,
    pub failures: Vec<Counterexample>,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SandwichReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            return write!(f, "all identities hold (n={})", self.samples);
        }
        write!(
            f,
            "{} identities failed (n={})",
            self.failures.len(),
            self.samples
        )?;
        for c in &self.failures {
            write!(f, "\n{c}")?;
        }
        Ok(())
    }
}

/// Checks exactly that `iso` is an isomorphism `∗_{R₁} → ∗_{R₂}` on every sample pair.
///
/// `R₂` defaults to [`SandwichIso::target`]; passing a different one is how
/// a tampered instance is exposed.
pub fn verify_sandwich_isomorphism<K: ExactScalar>(
    r1: &RationalMap<K>,
    iso: &SandwichIso<K>,
    r2_override: Option<&RationalMap<K>>,
    samples: &[(RationalMap<K>, RationalMap<K>)],
) -> Result<SandwichReport, RatMapError> {
    if r1.is_constant() {
        return Err(RatMapError::Constant);
    }
    let r2 = r2_override.cloned().unwrap_or_else(|| iso.target(r1));
    let gamma = iso.apply(&RationalMap::identity());
    let at = |c: Point<K>| {
        iso.apply(&RationalMap::point(c))
            .constant_value()
            .expect("isomorphisms keep constants constant")
    };
    let m = Mobius::through_points(
        &at(Point::Finite(K::zero())),
        &at(Point::Finite(K::one())),
        &at(Point::Infinity),
    )?;
    let m_inv = m.inverse().to_map();
    let m = m.to_map();
    let corollary = gamma == RationalMap::identity();
    let twist = |r: &RationalMap<K>| {
        if iso.reverses_orientation {
            r.conjugate()
        } else {
            r.clone()
        }
    };
    let theorem = |r: &RationalMap<K>| m.compose(&twist(r).compose(&m_inv.compose(&gamma)));

    let mut failures = Vec::new();
    if corollary {
        let lhs = iso.apply(r1);
        if lhs != r2 {
            failures.push(Counterexample {
                identity: Identity::CorollaryIndex,
                sample: None,
                r: None,
                q: None,
                lhs: lhs.to_string(),
                rhs: r2.to_string(),
            });
        }
    }

    let per_sample: Vec<Vec<Counterexample>> = samples
        .par_iter()
        .enumerate()
        .map(|(k, (r, q))| {
            let mut out = Vec::new();
            let mut fail = |identity, lhs: String, rhs: String| {
                out.push(Counterexample {
                    identity,
                    sample: Some(k),
                    r: Some(r.to_string()),
                    q: Some(q.to_string()),
                    lhs,
                    rhs,
                })
            };
            let rho_r = iso.apply(r);
            let rho_q = iso.apply(q);
            let lhs = iso.apply(&sandwich(r, r1, q));
            let rhs = sandwich(&rho_r, &r2, &rho_q);
            if lhs != rhs {
                fail(Identity::Homomorphism, lhs.to_string(), rhs.to_string());
            }
            let (a, b) = (r.compose(r1).degree(), rho_r.compose(&r2).degree());
            if a != b {
                fail(Identity::LeftDegree, a.to_string(), b.to_string());
            }
            let (a, b) = (r1.compose(q).degree(), r2.compose(&rho_q).degree());
            if a != b {
                fail(Identity::RightDegree, a.to_string(), b.to_string());
            }
            for (x, rho_x) in [(r, &rho_r), (q, &rho_q)] {
                let form = theorem(x);
                if &form != rho_x {
                    fail(Identity::TheoremForm, rho_x.to_string(), form.to_string());
                }
                if corollary {
                    let conj = m.compose(&twist(x).compose(&m_inv));
                    if &conj != rho_x {
                        fail(Identity::Corollary, rho_x.to_string(), conj.to_string());
                    }
                }
            }
            out
        })
        .collect();
    failures.extend(per_sample.into_iter().flatten());
    Ok(SandwichReport {
        samples: samples.len(),
        r2: r2.to_string(),
        corollary_checked: corollary,
        failures,
    })
}

/// `a/b + (c/d) i` with `|a|, |c| ≤ height` and `1 ≤ b, d ≤ height`.
pub fn random_gauss_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> GaussRat {
    let mut part = || {
        BigRational::new(
            BigInt::from(rng.gen_range(-height..=height)),
            BigInt::from(rng.gen_range(1..=height)),
        )
    };
    Complex::new(part(), part())
}

fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, height: i64) -> GaussRat {
    loop {
        let c = random_gauss_rational(rng, height);
        if c != GaussRat::new(
            BigRational::from_integer(0.into()),
            BigRational::from_integer(0.into()),
        ) {
            return c;
        }
    }
}

fn random_poly<R: Rng + ?Sized>(rng: &mut R, degree: usize, height: i64) -> Poly<GaussRat> {
    let mut coeffs: Vec<GaussRat> = (0..degree)
        .map(|_| random_gauss_rational(rng, height))
        .collect();
    coeffs.push(random_nonzero(rng, height));
    Poly::new(coeffs)
}

/// Random map with numerator and denominator degrees at most `max_degree`
/// (the reduced degree may be lower); roughly one in eight is constant.
pub fn random_map<R: Rng + ?Sized>(
    rng: &mut R,
    max_degree: usize,
    height: i64,
) -> RationalMap<GaussRat> {
    if rng.gen_ratio(1, 8) {
        return RationalMap::constant(random_gauss_rational(rng, height));
    }
    let dn = rng.gen_range(0..=max_degree);
    let dd = if dn == 0 {
        rng.gen_range(1..=max_degree.max(1))
    } else {
        rng.gen_range(0..=max_degree)
    };
    RationalMap::new(random_poly(rng, dn, height), random_poly(rng, dd, height))
        .expect("non-zero denominator")
}

/// Random non-constant map of degree at most `max_degree`.
pub fn random_nonconstant_map<R: Rng + ?Sized>(
    rng: &mut R,
    max_degree: usize,
    height: i64,
) -> RationalMap<GaussRat> {
    loop {
        let r = random_map(rng, max_degree, height);
        if !r.is_constant() {
            return r;
        }
    }
}

pub fn random_mobius<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Mobius<GaussRat> {
    loop {
        let mut c = || random_gauss_rational(rng, height);
        if let Ok(m) = Mobius::new(c(), c(), c(), c()) {
            return m;
        }
    }
}

pub fn random_sample_pairs<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    max_degree: usize,
    height: i64,
) -> Vec<(RationalMap<GaussRat>, RationalMap<GaussRat>)> {
    (0..count)
        .map(|_| {
            (
                random_map(rng, max_degree, height),
                random_map(rng, max_degree, height),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmap::text::parse_map;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(s: &str) -> RationalMap<GaussRat> {
        parse_map(s).unwrap()
    }

    fn mob(s: &str) -> Mobius<GaussRat> {
        Mobius::from_map(&m(s)).unwrap()
    }

    #[test]
    fn sandwich_examples() {
        assert_eq!(sandwich(&m("z+1"), &m("z^2"), &m("2z")), m("4z^2+1"));
        let f = m("(z^2 - i)/(3z + 1)");
        assert_eq!(
            sandwich(&RationalMap::identity(), &f, &RationalMap::identity()),
            f
        );
        let (a, b, c) = (m("z^2+1"), m("1/z"), m("2z - i"));
        assert_eq!(
            sandwich(&sandwich(&a, &f, &b), &f, &c),
            sandwich(&a, &f, &sandwich(&b, &f, &c))
        );
    }

    #[test]
    fn rho_examples() {
        let id = Mobius::identity();
        let r = m("(z^3 - 2)/(z + i)");
        assert_eq!(rho(&id, &id, &r), r);
        let two = mob("2z");
        assert_eq!(rho(&two, &two, &m("z^2")), m("2z^2"));
        assert!(rho(&mob("(z+1)/(z-2)"), &two, &m("5i")).is_constant());
    }

    #[test]
    fn identity_isomorphism_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let samples = random_sample_pairs(&mut rng, 50, 3, 8);
        let iso = SandwichIso::new(Mobius::identity(), Mobius::identity());
        let rep = verify_sandwich_isomorphism(&m("z^2"), &iso, None, &samples).unwrap();
        assert!(rep.holds(), "{rep}");
        assert!(rep.corollary_checked);
        assert_eq!(rep.to_string(), "all identities hold (n=50)");
    }

    #[test]
    fn constructive_direction() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let samples = random_sample_pairs(&mut rng, 12, 3, 8);
        let iso = SandwichIso::new(mob("z+1"), mob("2z"));
        let r1 = m("z^3+z");
        let rep = verify_sandwich_isomorphism(&r1, &iso, None, &samples).unwrap();
        assert!(rep.holds(), "{rep}");
        assert!(!rep.corollary_checked);
        assert_eq!(rep.r2, iso.target(&r1).to_string());
    }

    #[test]
    fn corollary_when_rho_fixes_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let samples = random_sample_pairs(&mut rng, 10, 3, 8);
        let f = mob("(2z - i)/(z + 3)");
        let iso = SandwichIso::new(f.clone(), f);
        let rep = verify_sandwich_isomorphism(&m("z^2 - 1"), &iso, None, &samples).unwrap();
        assert!(rep.corollary_checked);
        assert!(rep.holds(), "{rep}");
    }

    #[test]
    fn orientation_reversing() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let samples = random_sample_pairs(&mut rng, 10, 2, 8);
        let iso = SandwichIso::reversing(mob("z - i"), mob("(1+i)z"));
        let rep = verify_sandwich_isomorphism(&m("i z^2 + z"), &iso, None, &samples).unwrap();
        assert!(rep.holds(), "{rep}");
        let iso = SandwichIso::reversing(Mobius::identity(), Mobius::identity());
        let rep = verify_sandwich_isomorphism(&m("i z^2"), &iso, None, &samples).unwrap();
        assert!(rep.corollary_checked && rep.holds(), "{rep}");
    }

    #[test]
    fn tampered_target_is_caught() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let samples = random_sample_pairs(&mut rng, 5, 2, 8);
        let iso = SandwichIso::new(mob("z+1"), mob("2z"));
        let rep =
            verify_sandwich_isomorphism(&m("z^3+z"), &iso, Some(&m("z^3")), &samples).unwrap();
        assert!(!rep.holds());
        assert!(rep
            .to_string()
            .contains("counterexample identity=homomorphism"));
        assert!(verify_sandwich_isomorphism(&m("3"), &iso, None, &samples).is_err());
    }

    #[test]
    fn random_generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let r = random_map(&mut rng, 3, 8);
            assert!(r.degree() <= 3);
            let c = random_gauss_rational(&mut rng, 8);
            for part in [&c.re, &c.im] {
                assert!(part.numer().magnitude() <= &8u32.into());
                assert!(part.denom() <= &8.into());
            }
        }
        assert!(!random_nonconstant_map(&mut rng, 3, 8).is_constant());
    }
}
