//! Hurwitz equivalence of constellations.
//!
//! Two constellations over the sphere are Hurwitz equivalent when one can be
//! reached from the other by braid moves (homeomorphisms of the target moving
//! branch points around each other) and a simultaneous relabeling of sheets
//! (homeomorphisms of the source). Relabeling is quotiented out by
//! [`CanonicalForm`]; braid moves are explored by breadth-first search.
//!
//! Only topological equivalence is decided. Conformal equivalence is not
//! visible in monodromy data.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::constellation::{Constellation, CoveringCollection, Violation};
use crate::perm::Perm;
use crate::surgery::mirror;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("braid index {index} out of range 1..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("budget caps must be positive")]
    ZeroBudget,
    #[error("invalid constellation: {0}")]
    Invalid(#[from] Violation),
}

/// `(…, σᵢ, σᵢ₊₁, …) ↦ (…, σᵢσᵢ₊₁σᵢ⁻¹, σᵢ, …)` with 1-based `i`.
pub fn braid_move(c: &Constellation, i: usize) -> Result<Constellation, HurwitzError> {
    check_index(c, i)?;
    Ok(apply_move(c, i - 1, false))
}

/// Inverse of [`braid_move`]: `(…, σᵢ, σᵢ₊₁, …) ↦ (…, σᵢ₊₁, σᵢ₊₁⁻¹σᵢσᵢ₊₁, …)`.
pub fn braid_move_inverse(c: &Constellation, i: usize) -> Result<Constellation, HurwitzError> {
    check_index(c, i)?;
    Ok(apply_move(c, i - 1, true))
}

fn check_index(c: &Constellation, i: usize) -> Result<(), HurwitzError> {
    if i == 0 || i >= c.len() {
        return Err(HurwitzError::IndexOutOfRange {
            index: i,
            len: c.len(),
        });
    }
    Ok(())
}

fn apply_move(c: &Constellation, i: usize, inverse: bool) -> Constellation {
    let mut tuple = c.tuple().to_vec();
    let (a, b) = (&tuple[i], &tuple[i + 1]);
    // in the left-first convention x.then(y) is the product xy
    let (first, second) = if inverse {
        (b.clone(), b.inverse().then(a).then(b))
    } else {
        (a.then(b).then(&a.inverse()), a.clone())
    };
    tuple[i] = first;
    tuple[i + 1] = second;
    Constellation::unchecked(c.degree(), tuple, c.target_genus())
}

/// Least flattened tuple over all sheet relabelings.
///
/// For a transitive tuple a relabeling is pinned down by where it sends one
/// sheet, so it suffices to try the `d` breadth-first labelings started at
/// each sheet. Two constellations get equal forms iff they differ by a
/// relabeling; this holds at every degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    degree: u32,
    entries: u32,
    images: Vec<u32>,
}

impl CanonicalForm {
    pub fn of(c: &Constellation) -> CanonicalForm {
        let d = c.degree();
        let tuple = c.tuple();
        let mut best: Option<Vec<u32>> = None;
        let mut label = vec![u32::MAX; d];
        let mut order = Vec::with_capacity(d);
        let mut candidate = Vec::with_capacity(d * tuple.len());
        for start in 0..d {
            label.fill(u32::MAX);
            order.clear();
            label[start] = 0;
            order.push(start);
            let mut head = 0;
            while head < order.len() {
                let p = order[head];
                head += 1;
                for g in tuple {
                    let q = g.at(p);
                    if label[q] == u32::MAX {
                        label[q] = order.len() as u32;
                        order.push(q);
                    }
                }
            }
            debug_assert_eq!(order.len(), d, "canonical form needs a transitive tuple");
            candidate.clear();
            for g in tuple {
                candidate.extend(order.iter().map(|&p| label[g.at(p)]));
            }
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate.clone());
            }
        }
        CanonicalForm {
            degree: d as u32,
            entries: tuple.len() as u32,
            images: best.unwrap_or_default(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// The representative constellation this form spells out.
    pub fn to_constellation(&self) -> Constellation {
        let d = self.degree as usize;
        let tuple = self
            .images
            .chunks(d.max(1))
            .take(self.entries as usize)
            .map(|chunk| Perm::from_raw(chunk.to_vec()))
            .collect();
        Constellation::unchecked(d, tuple, 0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({:?})", self.to_constellation())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitBudget {
    max_states: usize,
    max_depth: Option<usize>,
}

impl OrbitBudget {
    pub fn new(max_states: usize, max_depth: Option<usize>) -> Result<Self, HurwitzError> {
        if max_states == 0 || max_depth == Some(0) {
            return Err(HurwitzError::ZeroBudget);
        }
        Ok(OrbitBudget {
            max_states,
            max_depth,
        })
    }

    pub fn max_states(&self) -> usize {
        self.max_states
    }

    pub fn max_depth(&self) -> Option<usize> {
        self.max_depth
    }
}

impl Default for OrbitBudget {
    fn default() -> Self {
        OrbitBudget {
            max_states: 1_000_000,
            max_depth: None,
        }
    }
}

/// Canonical forms reached from a starting constellation, in BFS order.
#[derive(Debug, Clone)]
pub struct Orbit {
    forms: Vec<CanonicalForm>,
    seen: HashSet<CanonicalForm>,
    exhausted: bool,
}

impl Orbit {
    pub fn forms(&self) -> &[CanonicalForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// False iff a budget cap stopped the search.
    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.seen.contains(form)
    }
}

fn neighbors(form: &CanonicalForm) -> Vec<CanonicalForm> {
    let c = form.to_constellation();
    let mut out = Vec::with_capacity(2 * c.len());
    for i in 0..c.len().saturating_sub(1) {
        out.push(CanonicalForm::of(&apply_move(&c, i, false)));
        out.push(CanonicalForm::of(&apply_move(&c, i, true)));
    }
    out
}

/// Level-synchronous BFS. Frontier expansion runs in parallel; insertion into
/// the seen-set happens sequentially in frontier order, so the result does not
/// depend on scheduling.
fn explore(
    start: &Constellation,
    budget: OrbitBudget,
    target: Option<&CanonicalForm>,
) -> (Orbit, bool) {
    let first = CanonicalForm::of(start);
    let mut orbit = Orbit {
        forms: vec![first.clone()],
        seen: HashSet::from([first.clone()]),
        exhausted: true,
    };
    if target == Some(&first) {
        return (orbit, true);
    }
    let mut frontier = vec![first];
    let mut depth = 0;
    while !frontier.is_empty() {
        let expanded: Vec<CanonicalForm> = frontier.par_iter().flat_map_iter(neighbors).collect();
        let depth_capped = budget.max_depth.is_some_and(|m| depth >= m);
        let mut next = Vec::new();
        for form in expanded {
            if orbit.seen.contains(&form) {
                continue;
            }
            if depth_capped || orbit.forms.len() >= budget.max_states {
                orbit.exhausted = false;
                return (orbit, false);
            }
            orbit.seen.insert(form.clone());
            orbit.forms.push(form.clone());
            if target == Some(&form) {
                return (orbit, true);
            }
            next.push(form);
        }
        frontier = next;
        depth += 1;
    }
    (orbit, false)
}

pub fn hurwitz_orbit(c: &Constellation, budget: OrbitBudget) -> Result<Orbit, HurwitzError> {
    c.validate()?;
    Ok(explore(c, budget, None).0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Decides whether `b` lies in the Hurwitz class of `a`. Degree and passport
/// mismatches are certified negatives since braid moves only permute cycle types.
pub fn same_hurwitz_class(
    a: &Constellation,
    b: &Constellation,
    budget: OrbitBudget,
) -> Result<Verdict, HurwitzError> {
    a.validate()?;
    b.validate()?;
    if a.degree() != b.degree() || a.passport() != b.passport() {
        return Ok(Verdict::No);
    }
    let target = CanonicalForm::of(b);
    let (orbit, found) = explore(a, budget, Some(&target));
    Ok(if found {
        Verdict::Yes
    } else if orbit.exhausted {
        Verdict::No
    } else {
        Verdict::Inconclusive
    })
}

/// The class contains an orientation-reversed copy of `c`.
pub fn is_symmetric(c: &Constellation, budget: OrbitBudget) -> Result<Verdict, HurwitzError> {
    let m = mirror(c).map_err(|e| match e {
        crate::surgery::SurgeryError::Invalid(v) => HurwitzError::Invalid(v),
        other => unreachable!("mirror only fails on invalid input: {other}"),
    })?;
    same_hurwitz_class(c, &m, budget)
}

/// Result of matching the components of two coverings class by class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionMatch {
    pub verdict: Verdict,
    /// `(label in a, label in b)` for every matched pair, in `a`'s order.
    pub pairs: Vec<(String, String)>,
}

/// Greedy component matching: each component of `a` takes the first unmatched
/// component of `b` certified to be in its class. The matching is reported but
/// is not canonical when several components share a class.
pub fn match_collections(
    a: &CoveringCollection,
    b: &CoveringCollection,
    budget: OrbitBudget,
) -> Result<CollectionMatch, HurwitzError> {
    let mut used = vec![false; b.components().len()];
    let mut pairs = Vec::new();
    let mut verdict = Verdict::Yes;
    if a.components().len() != b.components().len() {
        verdict = Verdict::No;
    }
    for (label_a, ca) in a.components() {
        let mut matched = false;
        let mut unsure = false;
        for (j, (label_b, cb)) in b.components().iter().enumerate() {
            if used[j] {
                continue;
            }
            match same_hurwitz_class(ca, cb, budget)? {
                Verdict::Yes => {
                    used[j] = true;
                    pairs.push((label_a.clone(), label_b.clone()));
                    matched = true;
                    break;
                }
                Verdict::Inconclusive => unsure = true,
                Verdict::No => {}
            }
        }
        if !matched {
            if unsure && verdict != Verdict::No {
                verdict = Verdict::Inconclusive;
            } else if !unsure {
                verdict = Verdict::No;
            }
        }
    }
    Ok(CollectionMatch { verdict, pairs })
}
