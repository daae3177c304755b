//! Per-law verdicts shared by every checker.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Verdict for a single law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// First failing tuple in lexicographic order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    /// A consequence of the other laws; failure means an internal inconsistency.
    #[serde(default)]
    pub derived: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Ordered collection of verdicts for one subject.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub subject: String,
    pub checks: Vec<AxiomCheck>,
    /// Set when the subject is a truncation of an infinite object.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>) -> Self {
        AxiomReport { subject: subject.into(), checks: Vec::new(), bound: None }
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn record(&mut self, name: impl Into<String>, witness: Option<Vec<usize>>) {
        self.checks.push(AxiomCheck {
            name: name.into(),
            passed: witness.is_none(),
            witness,
            derived: false,
            note: None,
        });
    }

    pub fn record_derived(&mut self, name: impl Into<String>, witness: Option<Vec<usize>>) {
        self.record(name, witness);
        if let Some(c) = self.checks.last_mut() {
            c.derived = true;
        }
    }

    pub fn record_note(&mut self, name: impl Into<String>, passed: bool, note: impl Into<String>) {
        self.checks.push(AxiomCheck {
            name: name.into(),
            passed,
            witness: None,
            derived: false,
            note: Some(note.into()),
        });
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
        if self.bound.is_none() {
            self.bound = other.bound;
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// Failed laws that should have followed from passing ones.
    pub fn inconsistencies(&self) -> Vec<&AxiomCheck> {
        if self.checks.iter().filter(|c| !c.derived).all(|c| c.passed) {
            self.checks.iter().filter(|c| c.derived && !c.passed).collect()
        } else {
            Vec::new()
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.subject)?;
        if let Some(b) = self.bound {
            write!(f, " (truncated at bound {b})")?;
        }
        writeln!(f)?;
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "  {tag} {}", c.name)?;
            if c.derived {
                write!(f, " [derived]")?;
            }
            if let Some(w) = &c.witness {
                write!(f, " witness {w:?}")?;
            }
            if let Some(n) = &c.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// First `a` in `0..n` with `!ok(a)`.
pub fn first1(n: usize, ok: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find(|&a| !ok(a)).map(|a| vec![a])
}

/// First lexicographic pair failing `ok`; the outer index is split across workers.
pub fn first2(n: usize, ok: impl Fn(usize, usize) -> bool + Sync) -> Option<Vec<usize>> {
    (0..n)
        .into_par_iter()
        .find_map_first(|a| (0..n).find(|&b| !ok(a, b)).map(|b| vec![a, b]))
}

pub fn first3(n: usize, ok: impl Fn(usize, usize, usize) -> bool + Sync) -> Option<Vec<usize>> {
    (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            for c in 0..n {
                if !ok(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
        None
    })
}

/// First witness produced over `items`, in order.
pub fn first_failing<T: Sync>(
    items: &[T],
    witness: impl Fn(&T) -> Option<Vec<usize>> + Sync + Send,
) -> Option<Vec<usize>> {
    items.par_iter().find_map_first(witness)
}
