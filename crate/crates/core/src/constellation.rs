//! Monodromy constellations of branched coverings of the sphere.
//!
//! A constellation of degree `d` is a tuple `(σ₁, …, σₖ)` of permutations of
//! `{1..d}`, one per branch point, whose left-first product is the identity
//! and which generates a transitive group. Identity entries carry no
//! branching and are dropped on construction.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::perm::{orbit_closure, CycleType, Perm, PermError};

/// First violated invariant of a constellation, in checking order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("branch entry {entry} has degree {found}, expected {expected}")]
    EntryDegree {
        entry: usize,
        found: usize,
        expected: usize,
    },
    #[error("target genus {0} is unsupported (only sphere targets)")]
    UnsupportedTargetGenus(u32),
    #[error("product of the tuple is {product}, not the identity")]
    ProductNotIdentity { product: Perm },
    #[error("not transitive: orbit of sheet 1 is {orbit:?}")]
    NotTransitive { orbit: BTreeSet<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstellationError {
    #[error("invalid constellation: {0}")]
    Invalid(#[from] Violation),
    #[error("Euler characteristic {0} does not give an integral nonnegative genus")]
    Parity(i64),
    #[error("degree {0} is too small (need at least 2)")]
    DegreeTooSmall(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Constellation {
    degree: usize,
    tuple: Vec<Perm>,
    target_genus: u32,
}

impl Constellation {
    /// Builds and validates a sphere-target constellation.
    pub fn new(degree: usize, tuple: Vec<Perm>) -> Result<Self, Violation> {
        Self::with_target_genus(degree, tuple, 0)
    }

    pub fn with_target_genus(
        degree: usize,
        tuple: Vec<Perm>,
        target_genus: u32,
    ) -> Result<Self, Violation> {
        let c = Self::unchecked(degree, tuple, target_genus);
        c.validate()?;
        Ok(c)
    }

    /// Builds without validation (identity entries are still stripped).
    pub fn unchecked(degree: usize, tuple: Vec<Perm>, target_genus: u32) -> Self {
        Constellation {
            degree,
            tuple: tuple.into_iter().filter(|p| !p.is_identity()).collect(),
            target_genus,
        }
    }

    /// Parses `(1 2)`-style entries against `degree`.
    pub fn from_notation(degree: usize, entries: &[&str]) -> Result<Self, ConstellationParseError> {
        let tuple = entries
            .iter()
            .map(|s| Perm::parse(s, degree))
            .collect::<Result<Vec<_>, _>>()
            .map_err(ConstellationParseError::Perm)?;
        Ok(Self::new(degree, tuple)?)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tuple(&self) -> &[Perm] {
        &self.tuple
    }

    pub fn len(&self) -> usize {
        self.tuple.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuple.is_empty()
    }

    pub fn target_genus(&self) -> u32 {
        self.target_genus
    }

    /// Left-first product of the tuple.
    pub fn product(&self) -> Perm {
        self.tuple
            .iter()
            .fold(Perm::identity_unchecked(self.degree.max(1)), |acc, s| {
                acc.then(s)
            })
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let d = self.degree;
        if d == 0 {
            return Err(Violation::ZeroDegree);
        }
        for (i, s) in self.tuple.iter().enumerate() {
            if s.degree() != d {
                return Err(Violation::EntryDegree {
                    entry: i + 1,
                    found: s.degree(),
                    expected: d,
                });
            }
        }
        if self.target_genus > 0 {
            return Err(Violation::UnsupportedTargetGenus(self.target_genus));
        }
        let product = self.product();
        if !product.is_identity() {
            return Err(Violation::ProductNotIdentity { product });
        }
        let orbit = if self.tuple.is_empty() {
            BTreeSet::from([1])
        } else {
            orbit_closure(&self.tuple, 1).expect("degrees checked above")
        };
        if orbit.len() != d {
            return Err(Violation::NotTransitive { orbit });
        }
        Ok(())
    }

    /// Total ramification `Σᵢ (d − #cycles(σᵢ))`.
    pub fn ramification(&self) -> usize {
        self.tuple
            .iter()
            .map(|s| self.degree - s.num_cycles())
            .sum()
    }

    /// Riemann–Hurwitz: `χ(source) = d·χ(target) − Σᵢ (d − #cycles(σᵢ))`.
    pub fn euler_characteristic(&self) -> Result<i64, ConstellationError> {
        self.validate()?;
        let chi_target = 2 - 2 * self.target_genus as i64;
        Ok(self.degree as i64 * chi_target - self.ramification() as i64)
    }

    pub fn genus(&self) -> Result<u32, ConstellationError> {
        let chi = self.euler_characteristic()?;
        if chi > 2 || chi % 2 != 0 {
            return Err(ConstellationError::Parity(chi));
        }
        Ok(((2 - chi) / 2) as u32)
    }

    /// Punctures of the source over the branch points (total cycle count).
    pub fn source_punctures(&self) -> usize {
        self.tuple.iter().map(Perm::num_cycles).sum()
    }

    pub fn passport(&self) -> Passport {
        Passport::new(self.tuple.iter().map(Perm::cycle_type).collect())
    }

    /// Exactly one entry is the fiber over ∞ (a `d`-cycle) and the other `d − 1`
    /// entries are transpositions.
    pub fn is_general_position_polynomial(&self) -> bool {
        if self.validate().is_err() || self.tuple.len() != self.degree || self.degree < 2 {
            return false;
        }
        (0..self.tuple.len()).any(|inf| {
            self.tuple[inf].is_full_cycle()
                && self
                    .tuple
                    .iter()
                    .enumerate()
                    .all(|(i, s)| i == inf || s.is_transposition())
        })
    }

    /// Index of the entry playing the fiber over ∞ for a polynomial constellation:
    /// the unique `d`-cycle, or when several entries are `d`-cycles, the last entry.
    pub fn infinity_index(&self) -> Option<usize> {
        let full: Vec<usize> = (0..self.tuple.len())
            .filter(|&i| self.tuple[i].is_full_cycle())
            .collect();
        match full.as_slice() {
            [] => None,
            [only] => Some(*only),
            _ if full.last() == Some(&(self.tuple.len() - 1)) => Some(self.tuple.len() - 1),
            _ => None,
        }
    }

    /// Relabels sheets: sheet `i` becomes `relabel(i)`.
    pub fn relabeled(&self, relabel: &Perm) -> Result<Constellation, PermError> {
        let tuple = self
            .tuple
            .iter()
            .map(|s| s.conjugate_by(relabel))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Constellation {
            degree: self.degree,
            tuple,
            target_genus: self.target_genus,
        })
    }

    pub(crate) fn from_valid_parts(degree: usize, tuple: Vec<Perm>) -> Self {
        let c = Self::unchecked(degree, tuple, 0);
        debug_assert_eq!(c.validate(), Ok(()));
        c
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Constellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        writeln!(f, "target_genus {}", self.target_genus)?;
        for s in &self.tuple {
            writeln!(f, "branch {s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Constellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Constellation{{d={}, [", self.degree)?;
        for (i, s) in self.tuple.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]}}")
    }
}

/// Multiset of cycle types, one per branch entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Passport(Vec<CycleType>);

impl Passport {
    pub fn new(mut types: Vec<CycleType>) -> Self {
        types.sort();
        Passport(types)
    }

    pub fn cycle_types(&self) -> &[CycleType] {
        &self.0
    }

    pub fn padded(&self, degree: usize) -> Passport {
        Passport::new(self.0.iter().map(|c| c.padded(degree)).collect())
    }

    /// Multiset union after padding both sides to `degree`.
    pub fn disjoint_union(&self, other: &Passport, degree: usize) -> Passport {
        let mut all = self.padded(degree).0;
        all.extend(other.padded(degree).0);
        Passport::new(all)
    }
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// `[(1 2), (2 3), …, (d−1 d), σ∞]` with `σ∞` closing the product to the identity.
pub fn generic_polynomial(d: usize) -> Result<Constellation, ConstellationError> {
    if d < 2 {
        return Err(ConstellationError::DegreeTooSmall(d));
    }
    let mut tuple: Vec<Perm> = (1..d)
        .map(|i| Perm::from_cycles(d, &[vec![i, i + 1]]).expect("in range"))
        .collect();
    let closing = tuple
        .iter()
        .fold(Perm::identity_unchecked(d), |acc, s| acc.then(s))
        .inverse();
    tuple.push(closing);
    Ok(Constellation::new(d, tuple)?)
}

/// The monodromy of `z^d`: `[c, c⁻¹]` with `c = (1 2 … d)`.
pub fn power_map(d: usize) -> Result<Constellation, ConstellationError> {
    if d < 2 {
        return Err(ConstellationError::DegreeTooSmall(d));
    }
    let c = Perm::from_cycles(d, &[(1..=d).collect()]).expect("in range");
    let inv = c.inverse();
    Ok(Constellation::new(d, vec![c, inv])?)
}

/// Random general-position polynomial: `d − 1` transpositions forming a random
/// spanning tree in random order, then the closing `d`-cycle.
pub fn random_generic_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
) -> Result<Constellation, ConstellationError> {
    if d < 2 {
        return Err(ConstellationError::DegreeTooSmall(d));
    }
    let mut order: Vec<usize> = (1..=d).collect();
    order.shuffle(rng);
    // attach each new vertex to a random earlier one
    let mut edges: Vec<Perm> = (1..d)
        .map(|k| {
            let parent = order[rng.gen_range(0..k)];
            Perm::from_cycles(d, &[vec![parent, order[k]]]).expect("distinct points")
        })
        .collect();
    edges.shuffle(rng);
    let closing = edges
        .iter()
        .fold(Perm::identity_unchecked(d), |acc, s| acc.then(s))
        .inverse();
    edges.push(closing);
    Ok(Constellation::new(d, edges)?)
}

/// Random valid constellation with `entries` non-identity entries, by rejection
/// sampling. `None` if no sample passed within `attempts` tries (some shapes,
/// like three entries in degree 2, do not exist at all).
pub fn random_constellation<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    entries: usize,
    attempts: usize,
) -> Option<Constellation> {
    if degree <= 1 {
        return (degree == 1 && entries == 0)
            .then(|| Constellation::from_valid_parts(1, Vec::new()));
    }
    if entries < 2 {
        return None;
    }
    for _ in 0..attempts {
        let mut tuple: Vec<Perm> = (0..entries - 1)
            .map(|_| {
                let mut v: Vec<u32> = (0..degree as u32).collect();
                v.shuffle(rng);
                Perm::from_raw(v)
            })
            .collect();
        let closing = tuple
            .iter()
            .fold(Perm::identity_unchecked(degree), |acc, s| acc.then(s))
            .inverse();
        tuple.push(closing);
        if tuple.iter().any(Perm::is_identity) {
            continue;
        }
        if let Ok(c) = Constellation::new(degree, tuple) {
            return Some(c);
        }
    }
    None
}

/// A labeled, possibly disconnected covering: one constellation per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringCollection {
    components: Vec<(String, Constellation)>,
}

impl CoveringCollection {
    pub fn new(components: Vec<(String, Constellation)>) -> Option<Self> {
        (!components.is_empty()).then_some(CoveringCollection { components })
    }

    pub fn components(&self) -> &[(String, Constellation)] {
        &self.components
    }

    /// Largest component degree, realized by at least one component.
    pub fn degree(&self) -> usize {
        self.components
            .iter()
            .map(|(_, c)| c.degree())
            .max()
            .expect("non-empty")
    }
}

// ---------------------------------------------------------------------------
// text format

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstellationParseError {
    #[error(transparent)]
    Perm(PermError),
    #[error(transparent)]
    Invalid(#[from] Violation),
    #[error("{0}")]
    Syntax(String),
}

/// A parse failure tied to a 1-based line of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub kind: ConstellationParseError,
}

/// One record of a constellation stream, unvalidated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRecord {
    pub label: Option<String>,
    pub line: usize,
    pub constellation: Constellation,
}

/// Parses a stream of records without validating them. `#` starts a comment;
/// each `degree` line opens a new record; an optional `label <name>` line may
/// precede it.
pub fn parse_raw_records(text: &str) -> Result<Vec<RawRecord>, FormatError> {
    struct Open {
        label: Option<String>,
        line: usize,
        degree: usize,
        genus: u32,
        tuple: Vec<Perm>,
        saw_branch: bool,
    }
    let syntax = |line: usize, msg: String| FormatError {
        line,
        kind: ConstellationParseError::Syntax(msg),
    };
    let mut out = Vec::new();
    let mut open: Option<Open> = None;
    let mut pending_label: Option<String> = None;
    let finish = |o: Open| RawRecord {
        label: o.label,
        line: o.line,
        constellation: Constellation::unchecked(o.degree, o.tuple, o.genus),
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(char::is_whitespace)
            .map(|(k, v)| (k, v.trim()))
            .unwrap_or((content, ""));
        match key {
            "label" => {
                if let Some(o) = open.take() {
                    out.push(finish(o));
                }
                if value.is_empty() {
                    return Err(syntax(line, "empty label".into()));
                }
                pending_label = Some(value.to_string());
            }
            "degree" => {
                if let Some(o) = open.take() {
                    out.push(finish(o));
                }
                let degree = value
                    .parse::<usize>()
                    .map_err(|_| syntax(line, format!("bad degree {value:?}")))?;
                open = Some(Open {
                    label: pending_label.take(),
                    line,
                    degree,
                    genus: 0,
                    tuple: Vec::new(),
                    saw_branch: false,
                });
            }
            "target_genus" => {
                let o = open
                    .as_mut()
                    .ok_or_else(|| syntax(line, "target_genus before degree".into()))?;
                if o.saw_branch {
                    return Err(syntax(line, "target_genus after branch lines".into()));
                }
                o.genus = value
                    .parse::<u32>()
                    .map_err(|_| syntax(line, format!("bad target genus {value:?}")))?;
            }
            "branch" => {
                let o = open
                    .as_mut()
                    .ok_or_else(|| syntax(line, "branch before degree".into()))?;
                if o.degree == 0 {
                    return Err(FormatError {
                        line,
                        kind: ConstellationParseError::Invalid(Violation::ZeroDegree),
                    });
                }
                let perm = Perm::parse(value, o.degree).map_err(|e| FormatError {
                    line,
                    kind: ConstellationParseError::Perm(e),
                })?;
                o.tuple.push(perm);
                o.saw_branch = true;
            }
            other => return Err(syntax(line, format!("unknown keyword {other:?}"))),
        }
    }
    if let Some(o) = open.take() {
        out.push(finish(o));
    }
    if pending_label.is_some() {
        return Err(syntax(
            text.lines().count(),
            "label without a record".into(),
        ));
    }
    Ok(out)
}

/// Parses and validates a stream of records.
pub fn parse_records(text: &str) -> Result<Vec<RawRecord>, FormatError> {
    let records = parse_raw_records(text)?;
    for r in &records {
        r.constellation.validate().map_err(|v| FormatError {
            line: r.line,
            kind: ConstellationParseError::Invalid(v),
        })?;
    }
    Ok(records)
}

impl FromStr for Constellation {
    type Err = FormatError;

    /// Parses exactly one validated record.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut records = parse_records(s)?;
        if records.len() != 1 {
            return Err(FormatError {
                line: 1,
                kind: ConstellationParseError::Syntax(format!(
                    "expected exactly one record, found {}",
                    records.len()
                )),
            });
        }
        Ok(records.pop().expect("one record").constellation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(d: usize, entries: &[&str]) -> Constellation {
        let tuple = entries.iter().map(|s| Perm::parse(s, d).unwrap()).collect();
        Constellation::unchecked(d, tuple, 0)
    }

    #[test]
    fn validation_reports_first_violation() {
        assert_eq!(c(2, &["(1 2)", "(1 2)"]).validate(), Ok(()));
        assert!(matches!(
            c(3, &["(1 2)", "(1 2)"]).validate(),
            Err(Violation::NotTransitive { .. })
        ));
        match c(3, &["(1 2)", "(2 3)"]).validate() {
            Err(Violation::ProductNotIdentity { product }) => {
                assert_eq!(product, Perm::parse("(1 3 2)", 3).unwrap())
            }
            other => panic!("unexpected {other:?}"),
        }
        let mixed = Constellation::unchecked(
            3,
            vec![
                Perm::parse("(1 2)", 2).unwrap(),
                Perm::parse("(1 2)", 3).unwrap(),
            ],
            0,
        );
        assert_eq!(
            mixed.validate(),
            Err(Violation::EntryDegree {
                entry: 1,
                found: 2,
                expected: 3
            })
        );
        let torus_target = Constellation::unchecked(2, vec![], 1);
        assert_eq!(
            torus_target.validate(),
            Err(Violation::UnsupportedTargetGenus(1))
        );
        assert_eq!(
            Constellation::unchecked(0, vec![], 0).validate(),
            Err(Violation::ZeroDegree)
        );
    }

    #[test]
    fn identity_entries_are_stripped() {
        let k = c(2, &["(1 2)", "id[2]", "(1 2)"]);
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn euler_and_genus() {
        let z2 = c(2, &["(1 2)", "(1 2)"]);
        assert_eq!(z2.euler_characteristic().unwrap(), 2);
        assert_eq!(z2.genus().unwrap(), 0);

        let g3 = generic_polynomial(3).unwrap();
        assert_eq!(g3.euler_characteristic().unwrap(), 2);
        assert_eq!(g3.genus().unwrap(), 0);

        let torus = c(2, &["(1 2)"; 4]);
        assert_eq!(torus.euler_characteristic().unwrap(), 0);
        assert_eq!(torus.genus().unwrap(), 1);

        assert!(c(3, &["(1 2)", "(2 3)"]).genus().is_err());
    }

    #[test]
    fn general_position_recognition() {
        assert!(generic_polynomial(3)
            .unwrap()
            .is_general_position_polynomial());
        assert!(!power_map(3).unwrap().is_general_position_polynomial());
        assert!(!c(4, &["(1 2)", "(1 2)", "(3 4)", "(3 4)"]).is_general_position_polynomial());
    }

    #[test]
    fn generic_polynomial_shapes() {
        assert_eq!(generic_polynomial(2).unwrap(), c(2, &["(1 2)", "(1 2)"]));
        // (1 2) then (2 3) is (1 3 2); its inverse is (1 2 3)
        assert_eq!(
            generic_polynomial(3).unwrap(),
            c(3, &["(1 2)", "(2 3)", "(1 2 3)"])
        );
        for d in 2..=10 {
            let g = generic_polynomial(d).unwrap();
            assert_eq!(g.validate(), Ok(()));
            assert!(g.is_general_position_polynomial());
            assert_eq!(
                g.tuple().iter().filter(|s| s.is_transposition()).count(),
                d - 1 + usize::from(d == 2)
            );
            assert_eq!(g.genus().unwrap(), 0);
        }
        assert_eq!(
            generic_polynomial(1),
            Err(ConstellationError::DegreeTooSmall(1))
        );
    }

    #[test]
    fn random_generators_produce_valid_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..=7 {
            let g = random_generic_polynomial(&mut rng, d).unwrap();
            assert!(g.is_general_position_polynomial());
            let r = random_constellation(&mut rng, d, 4, 10_000).unwrap();
            assert_eq!(r.validate(), Ok(()));
            assert_eq!(r.len(), 4);
        }
        assert!(random_constellation(&mut rng, 2, 3, 100).is_none());
    }

    #[test]
    fn infinity_index_conventions() {
        assert_eq!(generic_polynomial(4).unwrap().infinity_index(), Some(3));
        assert_eq!(generic_polynomial(2).unwrap().infinity_index(), Some(1));
        assert_eq!(power_map(3).unwrap().infinity_index(), Some(1));
        assert_eq!(
            c(3, &["(1 2 3)", "(1 2)", "(2 3)"]).infinity_index(),
            Some(0)
        );
        assert_eq!(c(2, &["(1 2)"; 4]).infinity_index(), Some(3));
        assert_eq!(
            c(4, &["(1 2)", "(1 2)", "(3 4)", "(3 4)"]).infinity_index(),
            None
        );
    }

    #[test]
    fn text_format_round_trip() {
        let g = generic_polynomial(4).unwrap();
        let text = g.to_text();
        assert!(text.starts_with("degree 4\ntarget_genus 0\nbranch (1 2)\n"));
        assert_eq!(text.parse::<Constellation>().unwrap(), g);
    }

    #[test]
    fn text_format_errors_carry_lines() {
        let err = "degree 3\ntarget_genus 0\nbranch (1 2)\nbranch (2 3)\n"
            .parse::<Constellation>()
            .unwrap_err();
        assert_eq!(err.line, 1);
        assert!(matches!(
            err.kind,
            ConstellationParseError::Invalid(Violation::ProductNotIdentity { .. })
        ));
        let err = "degree 3\nbranch (1 4)\n"
            .parse::<Constellation>()
            .unwrap_err();
        assert_eq!(err.line, 2);
        let err = "degree 2\nfoo\n".parse::<Constellation>().unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn streams_and_labels() {
        let text = "# two records\nlabel a\ndegree 2\nbranch (1 2)\nbranch (1 2)\n\ndegree 1\ntarget_genus 0\n";
        let recs = parse_records(text).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].label.as_deref(), Some("a"));
        assert_eq!(recs[1].constellation.degree(), 1);
        assert_eq!(recs[1].line, 7);
    }

    #[test]
    fn collection_degree() {
        let coll = CoveringCollection::new(vec![
            ("a".into(), generic_polynomial(3).unwrap()),
            ("b".into(), generic_polynomial(5).unwrap()),
        ])
        .unwrap();
        assert_eq!(coll.degree(), 5);
        assert!(CoveringCollection::new(vec![]).is_none());
    }
}
