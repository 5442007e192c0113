//! Axiom reports and the exhaustive law runner behind every checker.

use std::fmt;

use serde::Serialize;

/// One failed axiom together with the lexicographically first tuple of
/// element indices on which it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

/// Result of an exhaustive axiom check. Each axiom appears at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} at (", v.axiom)?;
            for (i, x) in v.witness.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A universally quantified law over a product of finite index domains.
pub(crate) struct Law<'a> {
    pub axiom: &'static str,
    pub domains: Vec<Vec<usize>>,
    pub holds: Box<dyn Fn(&[usize]) -> bool + 'a>,
}

impl<'a> Law<'a> {
    pub fn new(
        axiom: &'static str,
        domains: Vec<Vec<usize>>,
        holds: impl Fn(&[usize]) -> bool + 'a,
    ) -> Self {
        Law { axiom, domains, holds: Box::new(holds) }
    }

    /// Law quantified over `arity` elements of `0..n`.
    pub fn over(axiom: &'static str, n: usize, arity: usize, holds: impl Fn(&[usize]) -> bool + 'a) -> Self {
        Law::new(axiom, vec![(0..n).collect(); arity], holds)
    }

    /// Lexicographically first failing tuple.
    pub fn first_failure(&self) -> Option<Vec<usize>> {
        if self.domains.iter().any(Vec::is_empty) {
            return None;
        }
        let k = self.domains.len();
        let mut pos = vec![0usize; k];
        let mut tuple: Vec<usize> = self.domains.iter().map(|d| d[0]).collect();
        loop {
            if !(self.holds)(&tuple) {
                return Some(tuple);
            }
            // odometer, last coordinate fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                pos[i] += 1;
                if pos[i] < self.domains[i].len() {
                    tuple[i] = self.domains[i][pos[i]];
                    break;
                }
                pos[i] = 0;
                tuple[i] = self.domains[i][0];
            }
        }
    }
}

pub(crate) fn run_laws(laws: &[Law<'_>]) -> AxiomReport {
    let violations = laws
        .iter()
        .filter_map(|law| law.first_failure().map(|witness| Violation { axiom: law.axiom, witness }))
        .collect();
    AxiomReport { violations }
}

/// Re-evaluates a reported violation; `true` when the witness still fails.
#[cfg(test)]
pub(crate) fn refails(laws: &[Law<'_>], v: &Violation) -> bool {
    laws.iter().filter(|l| l.axiom == v.axiom).any(|l| !(l.holds)(&v.witness))
}
