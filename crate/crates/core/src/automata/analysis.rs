use std::fmt;

use super::Dfa;
use crate::error::{Error, Result};
use crate::semigroup::DEFAULT_CLOSURE_CAP;

/// Default largest alphabet for which every symbol subset is examined.
pub const DEFAULT_SIMON_CAP: usize = 16;

/// Result of the component check on a partially ordered minimal DFA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimonOutcome {
    Holds,
    NotPartiallyOrdered,
    /// Some restricted component has zero or several maximal states.
    Fails(SimonWitness),
    Skipped {
        reason: String,
    },
}

/// The lexicographically least failing symbol subset and one offending component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimonWitness {
    pub gamma: Vec<String>,
    pub component: Vec<usize>,
    pub maximal_states: Vec<usize>,
}

impl SimonOutcome {
    /// `Some(verdict)`, or `None` when the check was skipped.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            SimonOutcome::Holds => Some(true),
            SimonOutcome::NotPartiallyOrdered | SimonOutcome::Fails(_) => Some(false),
            SimonOutcome::Skipped { .. } => None,
        }
    }
}

impl fmt::Display for SimonOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimonOutcome::Holds => f.write_str("true"),
            SimonOutcome::NotPartiallyOrdered => f.write_str("false (not partially ordered)"),
            SimonOutcome::Fails(w) => write!(
                f,
                "false (gamma {{{}}}, component {{{}}}, maximal states {{{}}})",
                w.gamma.join(","),
                join_states(&w.component),
                join_states(&w.maximal_states)
            ),
            SimonOutcome::Skipped { reason } => write!(f, "skipped ({reason})"),
        }
    }
}

fn join_states(states: &[usize]) -> String {
    states.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl Dfa {
    /// Partial order plus, for every non-empty symbol subset `Γ`, exactly one
    /// maximal state in each component of the automaton restricted to `Γ`.
    /// A state is maximal when every letter of `Γ` fixes it.
    ///
    /// Meant for minimal DFAs. Subsets are visited in lexicographic order of
    /// their sorted symbol indices, so the reported witness is the least one.
    pub fn simon_check(&self, cap: usize) -> SimonOutcome {
        if !self.is_partially_ordered() {
            return SimonOutcome::NotPartiallyOrdered;
        }
        let k = self.k();
        if k > cap {
            return SimonOutcome::Skipped { reason: format!("alphabet has {k} symbols, cap is {cap}") };
        }
        // fixed_by[q] has bit a set when letter a fixes q
        let fixed_by: Vec<u64> = (0..self.n() as u32)
            .map(|q| (0..k).filter(|&a| self.step(q, a) == q).fold(0u64, |m, a| m | (1 << a)))
            .collect();
        let mut gamma = Vec::new();
        match self.first_failing_gamma(&fixed_by, &mut gamma, 0) {
            Some(witness) => SimonOutcome::Fails(witness),
            None => SimonOutcome::Holds,
        }
    }

    fn first_failing_gamma(&self, fixed_by: &[u64], gamma: &mut Vec<usize>, from: usize) -> Option<SimonWitness> {
        for a in from..self.k() {
            gamma.push(a);
            if let Some(w) = self.check_gamma(fixed_by, gamma) {
                return Some(w);
            }
            if let Some(w) = self.first_failing_gamma(fixed_by, gamma, a + 1) {
                return Some(w);
            }
            gamma.pop();
        }
        None
    }

    fn check_gamma(&self, fixed_by: &[u64], gamma: &[usize]) -> Option<SimonWitness> {
        let mask = gamma.iter().fold(0u64, |m, &a| m | (1 << a));
        let components = self.gamma_components(gamma).expect("non-empty, in range");
        for block in components.blocks() {
            let maximal: Vec<usize> = block.iter().copied().filter(|&q| fixed_by[q - 1] & mask == mask).collect();
            if maximal.len() != 1 {
                return Some(SimonWitness {
                    gamma: gamma.iter().map(|&a| self.alphabet[a].clone()).collect(),
                    component: block,
                    maximal_states: maximal,
                });
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub simon_cap: usize,
    pub closure_cap: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { simon_cap: DEFAULT_SIMON_CAP, closure_cap: DEFAULT_CLOSURE_CAP }
    }
}

/// Facts about the language of a DFA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub reachable_states: usize,
    pub quotient_complexity: usize,
    /// Size of the transition semigroup of the minimal DFA (non-empty words only).
    pub syntactic_complexity: usize,
    /// Size of that semigroup with the identity adjoined.
    pub monoid_size: usize,
    pub partially_ordered: bool,
    pub r_trivial: bool,
    pub l_trivial: bool,
    pub j_trivial: bool,
    pub h_trivial: bool,
    pub simon: SimonOutcome,
    /// A numbering of the minimal DFA's states under which every letter is
    /// non-decreasing, when one exists.
    pub non_decreasing_order: Option<Vec<usize>>,
}

/// Analyzes the language of `dfa`. Green's relations are evaluated on the
/// syntactic monoid; known equivalences between the computed facts are
/// cross-checked and a disagreement is reported as an invariant violation.
pub fn analyze(dfa: &Dfa, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let minimal = dfa.minimize();
    let semigroup = minimal.transition_semigroup_with_cap(options.closure_cap)?;
    let green = semigroup.green_triviality();
    let order = minimal.topological_order();
    let report = AnalysisReport {
        reachable_states: dfa.reachable_state_count(),
        quotient_complexity: minimal.n(),
        syntactic_complexity: semigroup.len(),
        monoid_size: semigroup.len() + usize::from(!semigroup.contains_identity()),
        partially_ordered: order.is_some(),
        r_trivial: green.r,
        l_trivial: green.l,
        j_trivial: green.j,
        h_trivial: green.h,
        simon: minimal.simon_check(options.simon_cap),
        non_decreasing_order: order,
    };
    report.check_consistency()?;
    Ok(report)
}

impl AnalysisReport {
    fn check_consistency(&self) -> Result<()> {
        if self.j_trivial && !(self.r_trivial && self.l_trivial) {
            return Err(Error::Invariant("J-trivial but not both R- and L-trivial".into()));
        }
        if self.r_trivial != self.partially_ordered {
            return Err(Error::Invariant(format!(
                "R-trivial = {} but partially ordered = {}",
                self.r_trivial, self.partially_ordered
            )));
        }
        if let Some(v) = self.simon.verdict() {
            if v != self.j_trivial {
                return Err(Error::Invariant(format!("component check says {v} but J-trivial = {}", self.j_trivial)));
            }
        }
        Ok(())
    }

    /// Tab-separated values in the order of [`AnalysisReport::TSV_COLUMNS`].
    pub fn to_tsv_row(&self) -> String {
        let simon = match self.simon.verdict() {
            Some(v) => v.to_string(),
            None => "skipped".to_string(),
        };
        [
            self.reachable_states.to_string(),
            self.quotient_complexity.to_string(),
            self.syntactic_complexity.to_string(),
            self.monoid_size.to_string(),
            self.partially_ordered.to_string(),
            self.r_trivial.to_string(),
            self.l_trivial.to_string(),
            self.j_trivial.to_string(),
            self.h_trivial.to_string(),
            simon,
        ]
        .join("\t")
    }

    pub const TSV_COLUMNS: [&'static str; 10] = [
        "reachable_states",
        "quotient_complexity",
        "syntactic_complexity",
        "monoid_size",
        "partially_ordered",
        "r_trivial",
        "l_trivial",
        "j_trivial",
        "h_trivial",
        "simon_component_ok",
    ];
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reachable_states: {}", self.reachable_states)?;
        writeln!(f, "quotient_complexity: {}", self.quotient_complexity)?;
        writeln!(f, "syntactic_complexity: {}", self.syntactic_complexity)?;
        writeln!(f, "monoid_size: {}", self.monoid_size)?;
        writeln!(f, "partially_ordered: {}", self.partially_ordered)?;
        writeln!(f, "r_trivial: {}", self.r_trivial)?;
        writeln!(f, "l_trivial: {}", self.l_trivial)?;
        writeln!(f, "j_trivial: {}", self.j_trivial)?;
        writeln!(f, "h_trivial: {}", self.h_trivial)?;
        writeln!(f, "simon_component_ok: {}", self.simon)?;
        match &self.non_decreasing_order {
            Some(order) => writeln!(f, "non_decreasing_order: {}", join_states(order)),
            None => writeln!(f, "non_decreasing_order: none"),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::transform::Transformation;

    fn t(images: &[usize]) -> Transformation {
        Transformation::from_images(images).unwrap()
    }

    fn two_maximal_states() -> Dfa {
        Dfa::from_transformations(
            &[("a".into(), t(&[2, 2, 4, 4])), ("b".into(), t(&[3, 2, 4, 4]))],
            1,
            &BTreeSet::from([4]),
        )
        .unwrap()
    }

    #[test]
    fn simon_witness_on_two_maximal_states() {
        let d = two_maximal_states();
        assert_eq!(d.minimize(), d);
        let outcome = d.simon_check(DEFAULT_SIMON_CAP);
        assert_eq!(
            outcome,
            SimonOutcome::Fails(SimonWitness {
                gamma: vec!["a".into(), "b".into()],
                component: vec![1, 2, 3, 4],
                maximal_states: vec![2, 4],
            })
        );
        assert_eq!(outcome.verdict(), Some(false));
        assert!(matches!(d.simon_check(1), SimonOutcome::Skipped { .. }));
    }

    #[test]
    fn simon_trivial_cases() {
        let one = Dfa::new(vec!["a".into()], vec![vec![1]], 1, &BTreeSet::new()).unwrap();
        assert_eq!(one.simon_check(DEFAULT_SIMON_CAP), SimonOutcome::Holds);
        let swap = Dfa::new(vec!["a".into()], vec![vec![2], vec![1]], 1, &BTreeSet::from([1])).unwrap();
        assert_eq!(swap.simon_check(DEFAULT_SIMON_CAP), SimonOutcome::NotPartiallyOrdered);
    }

    #[test]
    fn report_for_two_maximal_states() {
        let report = analyze(&two_maximal_states(), &AnalysisOptions::default()).unwrap();
        assert_eq!(report.quotient_complexity, 4);
        assert!(report.partially_ordered && report.r_trivial);
        assert!(!report.j_trivial);
        assert_eq!(report.non_decreasing_order, Some(vec![1, 2, 3, 4]));
        let text = report.to_string();
        assert!(text.contains("simon_component_ok: false (gamma {a,b}, component {1,2,3,4}, maximal states {2,4})"));
        assert_eq!(report.to_tsv_row().split('\t').count(), AnalysisReport::TSV_COLUMNS.len());
    }

    #[test]
    fn report_for_a_group_language() {
        let swap = Dfa::new(vec!["a".into()], vec![vec![2], vec![1]], 1, &BTreeSet::from([1])).unwrap();
        let report = analyze(&swap, &AnalysisOptions::default()).unwrap();
        assert_eq!(report.syntactic_complexity, 2);
        assert_eq!(report.monoid_size, 2);
        assert!(!report.r_trivial && !report.l_trivial && !report.j_trivial && !report.h_trivial);
        assert_eq!(report.non_decreasing_order, None);
    }
}
