//! Permutations of `{1..d}`.
//!
//! Composition is "left acts first": `a.compose(&b)` maps `i` to `b(a(i))`.
//! Every module in this crate uses that single convention. Points are 1-based
//! at the API boundary and 0-based internally.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {point} appears twice")]
    RepeatedPoint { point: usize },
    #[error("cycle notation: {0}")]
    Syntax(String),
}

/// A bijection of `{1..d}`, carrying its own degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        Ok(Self::identity_unchecked(degree))
    }

    pub(crate) fn identity_unchecked(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images: entry `i` is the image of point `i+1`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let d = images.len();
        if d == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; d];
        let mut out = Vec::with_capacity(d);
        for &p in images {
            if p == 0 || p > d {
                return Err(PermError::PointOutOfRange {
                    point: p,
                    degree: d,
                });
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(PermError::RepeatedPoint { point: p });
            }
            out.push((p - 1) as u32);
        }
        Ok(Perm { images: out })
    }

    /// Builds a permutation on `degree` points from disjoint 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut perm = Self::identity(degree)?;
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(PermError::RepeatedPoint { point: p });
                }
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                perm.images[p - 1] = (next - 1) as u32;
            }
        }
        Ok(perm)
    }

    /// Internal constructor from 0-based images; caller guarantees bijectivity.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(!images.is_empty());
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn at(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`: the result maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm { images: out }
    }

    /// `g⁻¹ · self · g` in the left-first convention, i.e. `self` relabeled by `g`.
    pub fn conjugate_by(&self, g: &Perm) -> Result<Perm, PermError> {
        Ok(g.inverse().compose(self)?.then(g))
    }

    /// Cycles in 1-based points, each starting at its least point, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut count = 0;
        for start in 0..d {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
            }
        }
        count
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect())
    }

    /// True iff `self` is one cycle through all points.
    pub fn is_full_cycle(&self) -> bool {
        self.num_cycles() == 1
    }

    pub fn is_transposition(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i != x as usize)
            .count()
            == 2
    }

    /// Parses cycle notation against a known degree. Accepts `id`, `id[d]` and `(1 2)(3 4 5)`.
    pub fn parse(s: &str, degree: usize) -> Result<Perm, PermError> {
        let (cycles, declared) = parse_cycle_notation(s)?;
        if let Some(d) = declared {
            if d != degree {
                return Err(PermError::DegreeMismatch {
                    left: d,
                    right: degree,
                });
            }
        }
        Perm::from_cycles(degree, &cycles)
    }
}

/// Sorted (descending) multiset of cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_cycles(&self) -> usize {
        self.0.len()
    }

    /// Pads with fixed points up to `degree`.
    pub fn padded(&self, degree: usize) -> CycleType {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat(1).take(degree.saturating_sub(self.degree())));
        CycleType::new(v)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

impl Mul for &Perm {
    type Output = Perm;

    /// Left-first product. Panics on degree mismatch; use [`Perm::compose`] for a checked version.
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
            .expect("degree mismatch in permutation product")
    }
}

/// Orbit of `start` under the group generated by `gens`, by breadth-first search.
pub fn orbit_closure(gens: &[Perm], start: usize) -> Result<BTreeSet<usize>, PermError> {
    let Some(first) = gens.first() else {
        return Ok(BTreeSet::from([start]));
    };
    let d = first.degree();
    if let Some(bad) = gens.iter().find(|g| g.degree() != d) {
        return Err(PermError::DegreeMismatch {
            left: d,
            right: bad.degree(),
        });
    }
    if start == 0 || start > d {
        return Err(PermError::PointOutOfRange {
            point: start,
            degree: d,
        });
    }
    let mut seen = vec![false; d];
    seen[start - 1] = true;
    let mut queue = vec![start - 1];
    let mut head = 0;
    while head < queue.len() {
        let p = queue[head];
        head += 1;
        for g in gens {
            let q = g.at(p);
            if !seen[q] {
                seen[q] = true;
                queue.push(q);
            }
        }
    }
    Ok(queue.into_iter().map(|p| p + 1).collect())
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id[{}]", self.degree());
        }
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm<{}>{}", self.degree(), self)
    }
}

/// Standalone parse: degree is taken from `id[d]` or else from the largest point mentioned.
impl FromStr for Perm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (cycles, declared) = parse_cycle_notation(s)?;
        let degree = match declared {
            Some(d) => d,
            None => cycles.iter().flatten().copied().max().unwrap_or(0),
        };
        Perm::from_cycles(degree, &cycles)
    }
}

fn parse_cycle_notation(s: &str) -> Result<(Vec<Vec<usize>>, Option<usize>), PermError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("id") {
        let rest = rest.trim();
        if rest.is_empty() {
            return Ok((Vec::new(), None));
        }
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| PermError::Syntax(format!("expected id[d], got {s:?}")))?;
        let d = inner
            .trim()
            .parse::<usize>()
            .map_err(|_| PermError::Syntax(format!("bad degree in {s:?}")))?;
        return Ok((Vec::new(), Some(d)));
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| PermError::Syntax(format!("expected '(' at {rest:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| PermError::Syntax(format!("unclosed cycle in {s:?}")))?;
        let cycle = body[..close]
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| PermError::Syntax(format!("bad point {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if cycle.is_empty() {
            return Err(PermError::Syntax("empty cycle".into()));
        }
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    Ok((cycles, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Perm {
        Perm::parse(s, d).unwrap()
    }

    #[test]
    fn compose_is_left_first() {
        // (1 2) then (2 3): 1→2→3, 2→1→1, 3→3→2
        let got = p("(1 2)", 3).compose(&p("(2 3)", 3)).unwrap();
        assert_eq!(got.images(), vec![3, 1, 2]);
        assert_eq!(got, p("(1 3 2)", 3));
    }

    #[test]
    fn identity_and_inverse_laws() {
        let s = p("(1 4 2)(3 5)", 5);
        let id = Perm::identity(5).unwrap();
        assert_eq!(id.compose(&s).unwrap(), s);
        assert_eq!(s.compose(&s.inverse()).unwrap(), id);
        assert_eq!(p("(1 2 3)", 3).inverse(), p("(1 3 2)", 3));
        assert_eq!(id.inverse(), id);
        let t = p("(2 5)", 6);
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn compose_rejects_mixed_degrees() {
        let err = p("(1 2)", 2).compose(&p("(1 2)", 3)).unwrap_err();
        assert_eq!(err, PermError::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p("(1 2)", 3).cycle_type().lengths(), &[2, 1]);
        assert_eq!(
            Perm::identity(4).unwrap().cycle_type().lengths(),
            &[1, 1, 1, 1]
        );
        assert_eq!(p("(1 2 3 4)", 4).cycle_type().lengths(), &[4]);
    }

    #[test]
    fn orbits() {
        let gens = [p("(1 2)", 3), p("(2 3)", 3)];
        assert_eq!(orbit_closure(&gens, 1).unwrap(), BTreeSet::from([1, 2, 3]));
        assert_eq!(orbit_closure(&[], 2).unwrap(), BTreeSet::from([2]));
        assert_eq!(
            orbit_closure(&[p("(1 2)", 3)], 3).unwrap(),
            BTreeSet::from([3])
        );
        assert!(orbit_closure(&[p("(1 2)", 3), p("(1 2)", 2)], 1).is_err());
        assert!(orbit_closure(&[p("(1 2)", 3)], 4).is_err());
    }

    #[test]
    fn notation_round_trip() {
        for (s, d) in [("(1 2)(3 4 5)", 5), ("id[4]", 4), ("(2 6 3)", 7)] {
            let perm = p(s, d);
            assert_eq!(perm.to_string(), s);
            assert_eq!(Perm::parse(&perm.to_string(), d).unwrap(), perm);
        }
        assert_eq!("id[3]".parse::<Perm>().unwrap(), Perm::identity(3).unwrap());
        assert_eq!("(1 3)".parse::<Perm>().unwrap().degree(), 3);
    }

    #[test]
    fn notation_errors() {
        assert!(Perm::parse("(1 2", 3).is_err());
        assert!(Perm::parse("(1 4)", 3).is_err());
        assert!(Perm::parse("(1 2)(2 3)", 3).is_err());
        assert!(Perm::parse("id[4]", 3).is_err());
        assert!(Perm::parse("(0 1)", 3).is_err());
        assert!(Perm::parse("()", 3).is_err());
    }
}
