//! Building new coverings from old ones: connected sums, mirrors and formal matings.

use thiserror::Error;

use crate::constellation::{Constellation, ConstellationError, Passport, Violation};
use crate::perm::{CycleType, Perm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("invalid input: {0}")]
    Invalid(#[from] Violation),
    #[error("shared sheet {sheet} out of range 1..={degree}")]
    SheetOutOfRange { sheet: usize, degree: usize },
    #[error("an iterated sum needs at least two summands, got {0}")]
    TooFewSummands(usize),
    #[error("expected {expected} sum plans, got {found}")]
    PlanCount { expected: usize, found: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("no unique d-cycle entry to serve as the fiber over infinity")]
    NoInfinityEntry,
}

/// Which sheet of each summand is glued to the shared sheet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SheetChoice {
    pub left: usize,
    pub right: usize,
}

impl SheetChoice {
    /// Last sheet of the left summand, first sheet of the right.
    pub fn default_for(left_degree: usize) -> Self {
        SheetChoice {
            left: left_degree,
            right: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SumPlan<'a> {
    pub left: &'a Constellation,
    pub right: &'a Constellation,
    pub shared_sheet_left: usize,
    pub shared_sheet_right: usize,
}

impl<'a> SumPlan<'a> {
    pub fn new(left: &'a Constellation, right: &'a Constellation) -> Self {
        Self::with_choice(left, right, SheetChoice::default_for(left.degree()))
    }

    pub fn with_choice(
        left: &'a Constellation,
        right: &'a Constellation,
        choice: SheetChoice,
    ) -> Self {
        SumPlan {
            left,
            right,
            shared_sheet_left: choice.left,
            shared_sheet_right: choice.right,
        }
    }
}

/// One-sheet amalgam of the two sheet actions.
///
/// Left sheets go to `{1..n}` with the shared sheet moved to `n`; right sheets go
/// to `{n..n+m−1}` with its shared sheet moved to `n`. Each entry is extended by
/// fixed points on the other side, left tuple first.
pub fn connected_sum(plan: &SumPlan<'_>) -> Result<Constellation, SurgeryError> {
    let (left, right) = (plan.left, plan.right);
    left.validate()?;
    right.validate()?;
    let n = left.degree();
    let m = right.degree();
    for (sheet, degree) in [(plan.shared_sheet_left, n), (plan.shared_sheet_right, m)] {
        if sheet == 0 || sheet > degree {
            return Err(SurgeryError::SheetOutOfRange { sheet, degree });
        }
    }
    let total = n + m - 1;

    // 0-based relabelings into the amalgam
    let left_map: Vec<usize> = relabel_moving(n, plan.shared_sheet_left - 1, n - 1, 0);
    let right_map: Vec<usize> = relabel_moving(m, plan.shared_sheet_right - 1, 0, n - 1);

    let extend = |s: &Perm, map: &[usize]| {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &target) in map.iter().enumerate() {
            images[target] = map[s.at(i)] as u32;
        }
        Perm::from_raw(images)
    };
    let tuple = left
        .tuple()
        .iter()
        .map(|s| extend(s, &left_map))
        .chain(right.tuple().iter().map(|s| extend(s, &right_map)))
        .collect();
    Ok(Constellation::from_valid_parts(total, tuple))
}

/// Order-preserving relabeling of `0..len` into `offset..offset+len` that sends
/// `shared` to `offset + slot` and keeps the others in order around it.
fn relabel_moving(len: usize, shared: usize, slot: usize, offset: usize) -> Vec<usize> {
    let mut map = vec![0; len];
    let mut next = 0;
    for (i, m) in map.iter_mut().enumerate() {
        if i == shared {
            *m = offset + slot;
            continue;
        }
        if next == slot {
            next += 1;
        }
        *m = offset + next;
        next += 1;
    }
    map
}

/// Left fold of [`connected_sum`]. `choices` holds one entry per fold step,
/// or is empty for default choices throughout.
pub fn iterated_sum(
    summands: &[Constellation],
    choices: &[SheetChoice],
) -> Result<Constellation, SurgeryError> {
    if summands.len() < 2 {
        return Err(SurgeryError::TooFewSummands(summands.len()));
    }
    if !choices.is_empty() && choices.len() != summands.len() - 1 {
        return Err(SurgeryError::PlanCount {
            expected: summands.len() - 1,
            found: choices.len(),
        });
    }
    let mut acc = summands[0].clone();
    for (k, next) in summands[1..].iter().enumerate() {
        let choice = choices
            .get(k)
            .copied()
            .unwrap_or_else(|| SheetChoice::default_for(acc.degree()));
        acc = connected_sum(&SumPlan::with_choice(&acc, next, choice))?;
    }
    Ok(acc)
}

/// `Σ degᵢ − (k − 1)`.
pub fn iterated_sum_degree(degrees: &[usize]) -> usize {
    degrees.iter().sum::<usize>() + 1 - degrees.len()
}

/// Orientation reversal: tuple reversed, each entry inverted.
pub fn mirror(c: &Constellation) -> Result<Constellation, SurgeryError> {
    c.validate()?;
    let tuple = c.tuple().iter().rev().map(Perm::inverse).collect();
    Ok(Constellation::from_valid_parts(c.degree(), tuple))
}

/// Formal mating of two polynomial constellations of equal degree.
///
/// The finite entries of `p` are kept. Those of `q` are reversed and inverted
/// (orientation reversal), then relabeled: `q`'s sheets are read in order
/// around its fiber over ∞, reflected by position `i ↦ d+1−i`, and matched to
/// `p`'s sheets in order around `p`'s fiber over ∞. The two ∞ entries then
/// cancel and the equator carries no branching.
pub fn formal_mating(p: &Constellation, q: &Constellation) -> Result<Constellation, SurgeryError> {
    p.validate()?;
    q.validate()?;
    if p.degree() != q.degree() {
        return Err(SurgeryError::DegreeMismatch(p.degree(), q.degree()));
    }
    let d = p.degree();
    let p_inf = p.infinity_index().ok_or(SurgeryError::NoInfinityEntry)?;
    let q_inf = q.infinity_index().ok_or(SurgeryError::NoInfinityEntry)?;
    let sigma = &p.tuple()[p_inf];
    let tau = &q.tuple()[q_inf];

    // positions around ∞: p in the direction of σ∞, q in the direction of τ∞⁻¹
    let p_positions = walk(sigma, 0);
    let q_positions = walk(&tau.inverse(), 0);
    let mut relabel = vec![0u32; d];
    for i in 0..d {
        relabel[q_positions[i]] = p_positions[d - 1 - i] as u32;
    }
    let relabel = Perm::from_raw(relabel);

    // finite entries in cyclic order starting after ∞, so their product is (∞ entry)⁻¹
    let finite = |c: &Constellation, inf: usize| -> Vec<Perm> {
        let k = c.len();
        (1..k).map(|j| c.tuple()[(inf + j) % k].clone()).collect()
    };
    let mut tuple = finite(p, p_inf);
    tuple.extend(
        finite(q, q_inf)
            .iter()
            .rev()
            .map(|s| s.inverse().conjugate_by(&relabel).expect("same degree")),
    );
    let mated = Constellation::unchecked(d, tuple, 0);
    mated.validate()?;
    Ok(mated)
}

/// Passport of a mating predicted from its inputs: the finite cycle types of
/// both, the entries over ∞ dropped.
pub fn predicted_mating_passport(p: &Constellation, q: &Constellation) -> Option<Passport> {
    let finite = |c: &Constellation| -> Option<Vec<CycleType>> {
        let inf = c.infinity_index()?;
        Some(
            c.tuple()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != inf)
                .map(|(_, s)| s.cycle_type())
                .collect(),
        )
    };
    let mut types = finite(p)?;
    types.extend(finite(q)?);
    Some(Passport::new(types))
}

/// No branch value on the glued equator: `mated` carries exactly the finite
/// entries of `p` and `q`, with their cycle types.
pub fn equator_unbranched(p: &Constellation, q: &Constellation, mated: &Constellation) -> bool {
    mated.len() + 2 == p.len() + q.len()
        && predicted_mating_passport(p, q).is_some_and(|pp| pp == mated.passport())
}

fn walk(cycle: &Perm, start: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(cycle.degree());
    let mut x = start;
    for _ in 0..cycle.degree() {
        out.push(x);
        x = cycle.at(x);
    }
    out
}

/// Genus of a connected sum by Riemann–Hurwitz, next to the weighted formula
/// `m·genus(S) + n·genus(T)` (with `n = deg(left)`, `m = deg(right)`), which is
/// reported for comparison only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusLedger {
    pub left_degree: usize,
    pub right_degree: usize,
    pub left_genus: u32,
    pub right_genus: u32,
    pub left_chi: i64,
    pub right_chi: i64,
    pub sum_chi: i64,
    pub sum_genus: u32,
    pub weighted_formula: u64,
}

impl GenusLedger {
    pub fn euler_law_holds(&self) -> bool {
        self.sum_chi == self.left_chi + self.right_chi - 2
    }

    pub fn weighted_formula_agrees(&self) -> bool {
        self.weighted_formula == self.sum_genus as u64
    }
}

pub fn genus_ledger(
    left: &Constellation,
    right: &Constellation,
    sum: &Constellation,
) -> Result<GenusLedger, ConstellationError> {
    let left_genus = left.genus()?;
    let right_genus = right.genus()?;
    Ok(GenusLedger {
        left_degree: left.degree(),
        right_degree: right.degree(),
        left_genus,
        right_genus,
        left_chi: left.euler_characteristic()?,
        right_chi: right.euler_characteristic()?,
        sum_chi: sum.euler_characteristic()?,
        sum_genus: sum.genus()?,
        weighted_formula: right.degree() as u64 * left_genus as u64
            + left.degree() as u64 * right_genus as u64,
    })
}

/// Passport of the sum predicted from the summands: the padded multiset union.
pub fn predicted_sum_passport(left: &Constellation, right: &Constellation) -> Passport {
    let total = left.degree() + right.degree() - 1;
    left.passport().disjoint_union(&right.passport(), total)
}
