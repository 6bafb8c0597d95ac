//! Interval probabilities on binary events and the partial label vectors
//! they induce.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Slack allowed when checking `lower <= upper` and the `[0, 1]` range.
pub const INTERVAL_TOLERANCE: f64 = 1e-12;

/// Lower and upper probability of a binary event.
///
/// The complements `1 - upper` and `1 - lower` are computed once at
/// construction so that taking the dual twice returns the original value
/// bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbInterval {
    lower: f64,
    upper: f64,
    lower_dual: f64,
    upper_dual: f64,
}

impl ProbInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        let in_range =
            |v: f64| v.is_finite() && (-INTERVAL_TOLERANCE..=1.0 + INTERVAL_TOLERANCE).contains(&v);
        if !in_range(lower) || !in_range(upper) || lower > upper + INTERVAL_TOLERANCE {
            return Err(Error::InvalidInterval { lower, upper });
        }
        let lower = lower.clamp(0.0, 1.0);
        let upper = upper.clamp(0.0, 1.0).max(lower);
        Ok(ProbInterval {
            lower,
            upper,
            lower_dual: 1.0 - upper,
            upper_dual: 1.0 - lower,
        })
    }

    /// A degenerate interval `[p, p]`.
    pub fn precise(p: f64) -> Result<Self> {
        Self::new(p, p)
    }

    /// `[0, 1]`, total ignorance.
    pub fn vacuous() -> Self {
        ProbInterval {
            lower: 0.0,
            upper: 1.0,
            lower_dual: 0.0,
            upper_dual: 1.0,
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn is_precise(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lower <= p && p <= self.upper
    }

    /// True when `other` lies inside `self`, up to `slack` on each side.
    pub fn encloses(&self, other: &ProbInterval, slack: f64) -> bool {
        self.lower <= other.lower + slack && other.upper <= self.upper + slack
    }

    /// Interval of the complementary event: `[1 - upper, 1 - lower]`.
    pub fn dual(&self) -> ProbInterval {
        ProbInterval {
            lower: self.lower_dual,
            upper: self.upper_dual,
            lower_dual: self.lower,
            upper_dual: self.upper,
        }
    }
}

impl fmt::Display for ProbInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// Free function form of [`ProbInterval::dual`].
pub fn dual(interval: ProbInterval) -> ProbInterval {
    interval.dual()
}

/// Prediction for a single label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelState {
    Irrelevant,
    Relevant,
    Abstain,
}

impl LabelState {
    pub fn from_bool(value: bool) -> Self {
        if value {
            LabelState::Relevant
        } else {
            LabelState::Irrelevant
        }
    }

    /// `Some(value)` for a determined label, `None` for an abstention.
    pub fn value(self) -> Option<bool> {
        match self {
            LabelState::Relevant => Some(true),
            LabelState::Irrelevant => Some(false),
            LabelState::Abstain => None,
        }
    }

    pub fn is_abstain(self) -> bool {
        self == LabelState::Abstain
    }

    pub fn symbol(self) -> char {
        match self {
            LabelState::Relevant => '1',
            LabelState::Irrelevant => '0',
            LabelState::Abstain => '*',
        }
    }
}

/// Decision rule for the event `Y = 1` under 0/1 loss.
///
/// Relevant when the lower bound is above one half, irrelevant when the
/// upper bound is below it, abstain otherwise. With `precise_tie_to_one`, a
/// degenerate interval sitting exactly on one half resolves to relevant, as
/// the precise chain does with its `>= 0.5` rule.
pub fn decide(interval: ProbInterval, precise_tie_to_one: bool) -> LabelState {
    if interval.lower() > 0.5 {
        LabelState::Relevant
    } else if interval.upper() < 0.5 {
        LabelState::Irrelevant
    } else if precise_tie_to_one && interval.is_precise() {
        LabelState::Relevant
    } else {
        LabelState::Abstain
    }
}

/// A vector over `{0, 1, *}`, indexed by the dataset's label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialLabelVector {
    states: Vec<LabelState>,
}

impl PartialLabelVector {
    pub fn new(states: Vec<LabelState>) -> Self {
        PartialLabelVector { states }
    }

    pub fn all_abstain(m: usize) -> Self {
        PartialLabelVector {
            states: vec![LabelState::Abstain; m],
        }
    }

    pub fn from_bools(values: &[bool]) -> Self {
        PartialLabelVector {
            states: values.iter().copied().map(LabelState::from_bool).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[LabelState] {
        &self.states
    }

    pub fn get(&self, label: usize) -> Option<LabelState> {
        self.states.get(label).copied()
    }

    pub fn determined_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !self.states[i].is_abstain())
            .collect()
    }

    pub fn abstained_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.states[i].is_abstain())
            .collect()
    }

    pub fn abstain_count(&self) -> usize {
        self.states.iter().filter(|s| s.is_abstain()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.abstain_count() == 0
    }

    /// The complete vector when nothing was abstained on.
    pub fn to_bools(&self) -> Option<Vec<bool>> {
        self.states.iter().map(|s| s.value()).collect()
    }
}

impl fmt::Display for PartialLabelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, state) in self.states.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", state.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PartialLabelVector {
    type Err = Error;

    /// Parses the rendered form, e.g. `"0,*,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PartialLabelVector::new(Vec::new()));
        }
        s.split(',')
            .map(|tok| match tok.trim() {
                "0" => Ok(LabelState::Irrelevant),
                "1" => Ok(LabelState::Relevant),
                "*" => Ok(LabelState::Abstain),
                other => Err(Error::Config(format!("invalid label state {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PartialLabelVector::new)
    }
}

/// Chain positions split by how they were predicted so far.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndexSets {
    pub relevant: Vec<usize>,
    pub irrelevant: Vec<usize>,
    pub abstained: Vec<usize>,
}

impl IndexSets {
    pub fn record(&mut self, position: usize, state: LabelState) {
        match state {
            LabelState::Relevant => self.relevant.push(position),
            LabelState::Irrelevant => self.irrelevant.push(position),
            LabelState::Abstain => self.abstained.push(position),
        }
    }

    /// Determined positions with their values, in chain order.
    pub fn determined(&self) -> Vec<(usize, bool)> {
        let mut out: Vec<(usize, bool)> = self
            .relevant
            .iter()
            .map(|&k| (k, true))
            .chain(self.irrelevant.iter().map(|&k| (k, false)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether the three sets partition `0..j`.
    pub fn partitions(&self, j: usize) -> bool {
        let mut seen = vec![false; j];
        for &k in self
            .relevant
            .iter()
            .chain(&self.irrelevant)
            .chain(&self.abstained)
        {
            if k >= j || seen[k] {
                return false;
            }
            seen[k] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(l: f64, u: f64) -> ProbInterval {
        ProbInterval::new(l, u).unwrap()
    }

    #[test]
    fn decide_examples() {
        assert_eq!(decide(iv(0.55, 0.70), false), LabelState::Relevant);
        assert_eq!(decide(iv(0.20, 0.40), false), LabelState::Irrelevant);
        assert_eq!(decide(iv(0.10, 0.60), false), LabelState::Abstain);
    }

    #[test]
    fn precise_tie() {
        let half = iv(0.5, 0.5);
        assert_eq!(decide(half, false), LabelState::Abstain);
        assert_eq!(decide(half, true), LabelState::Relevant);
        // only degenerate intervals get the tie rule
        assert_eq!(decide(iv(0.5, 0.7), true), LabelState::Abstain);
    }

    #[test]
    fn dual_examples() {
        let d = iv(0.3, 0.7).dual();
        assert!((d.lower() - 0.3).abs() < 1e-15 && (d.upper() - 0.7).abs() < 1e-15);
        let d = iv(0.1, 0.6).dual();
        assert!((d.lower() - 0.4).abs() < 1e-15 && (d.upper() - 0.9).abs() < 1e-15);
        assert_eq!(iv(0.5, 0.5).dual(), iv(0.5, 0.5));
    }

    #[test]
    fn rejects_invalid() {
        assert!(ProbInterval::new(0.6, 0.4).is_err());
        assert!(ProbInterval::new(-0.1, 0.4).is_err());
        assert!(ProbInterval::new(0.1, 1.5).is_err());
        assert!(ProbInterval::new(f64::NAN, 0.4).is_err());
        // rounding slack is absorbed
        let i = ProbInterval::new(0.4 + 1e-13, 0.4).unwrap();
        assert!(i.lower() <= i.upper());
    }

    #[test]
    fn render_and_parse() {
        let v: PartialLabelVector = "0,*,1".parse().unwrap();
        assert_eq!(v.to_string(), "0,*,1");
        assert_eq!(v.determined_indices(), vec![0, 2]);
        assert_eq!(v.abstained_indices(), vec![1]);
        assert!("0,2".parse::<PartialLabelVector>().is_err());
    }

    #[test]
    fn index_sets_partition() {
        let mut sets = IndexSets::default();
        sets.record(0, LabelState::Abstain);
        sets.record(1, LabelState::Relevant);
        sets.record(2, LabelState::Irrelevant);
        assert!(sets.partitions(3));
        assert!(!sets.partitions(4));
        assert_eq!(sets.determined(), vec![(1, true), (2, false)]);
    }

    fn interval() -> impl Strategy<Value = ProbInterval> {
        (0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(a, b)| iv(a.min(b), a.max(b)))
    }

    proptest! {
        #[test]
        fn dual_is_an_involution(i in interval()) {
            prop_assert_eq!(i.dual().dual(), i);
        }

        #[test]
        fn dual_flips_decisions(i in interval()) {
            prop_assume!(i.lower() < i.upper());
            let flipped = match decide(i, false) {
                LabelState::Relevant => LabelState::Irrelevant,
                LabelState::Irrelevant => LabelState::Relevant,
                LabelState::Abstain => LabelState::Abstain,
            };
            prop_assert_eq!(decide(i.dual(), false), flipped);
        }

        #[test]
        fn lower_plus_dual_upper_is_one(i in interval()) {
            prop_assert_eq!(i.lower() + i.dual().upper(), 1.0);
        }

        #[test]
        fn precise_never_abstains_with_tie_rule(p in 0.0f64..=1.0) {
            prop_assert_ne!(decide(iv(p, p), true), LabelState::Abstain);
        }
    }
}
