use serde::Serialize;

/// A named boolean fact about an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool) -> Self {
        Check {
            name: name.into(),
            holds,
        }
    }
}

/// One implication: if every hypothesis holds, the conclusion must.
/// Equivalences are clauses without hypotheses whose conclusion is the biconditional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub label: String,
    pub hypotheses: Vec<Check>,
    pub conclusion: Check,
}

impl Clause {
    pub fn new(label: impl Into<String>, hypotheses: Vec<Check>, conclusion: Check) -> Self {
        Clause {
            label: label.into(),
            hypotheses,
            conclusion,
        }
    }

    pub fn applies(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    /// All hypotheses hold but the conclusion does not.
    pub fn is_counterexample(&self) -> bool {
        self.applies() && !self.conclusion.holds
    }
}

/// The outcome of evaluating one result on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: &'static str,
    pub instance: String,
    /// Preconditions of the checker itself; when any fails the report is
    /// marked not applicable and carries no clauses.
    pub preconditions: Vec<Check>,
    pub not_applicable: Option<String>,
    pub clauses: Vec<Clause>,
    /// Set when some clause was evaluated in floating point.
    pub approximate: bool,
    pub notes: Vec<String>,
    pub violation: Option<String>,
}

impl TheoremReport {
    pub fn new(theorem: &'static str, instance: impl Into<String>) -> Self {
        TheoremReport {
            theorem,
            instance: instance.into(),
            preconditions: Vec::new(),
            not_applicable: None,
            clauses: Vec::new(),
            approximate: false,
            notes: Vec::new(),
            violation: None,
        }
    }

    pub fn precondition(&mut self, name: impl Into<String>, holds: bool) -> &mut Self {
        self.preconditions.push(Check::new(name, holds));
        self
    }

    pub fn preconditions_hold(&self) -> bool {
        self.preconditions.iter().all(|c| c.holds)
    }

    pub fn clause(&mut self, clause: Clause) -> &mut Self {
        self.clauses.push(clause);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    /// Marks the report not applicable with the names of the failed preconditions.
    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.not_applicable = Some(reason.into());
        self.clauses.clear();
        self.violation = None;
        self
    }

    // both arms carry the same report
    #[allow(clippy::result_large_err)]
    pub fn skip_on_failed_preconditions(self) -> Result<Self, Self> {
        if self.preconditions_hold() {
            return Ok(self);
        }
        let failed: Vec<&str> = self
            .preconditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.as_str())
            .collect();
        let reason = format!("preconditions fail: {}", failed.join("; "));
        Err(self.skip(reason))
    }

    /// Fills `violation` from the first counterexample clause.
    pub fn finish(mut self) -> Self {
        self.violation = self
            .clauses
            .iter()
            .find(|c| c.is_counterexample())
            .map(|c| {
                format!(
                    "{}: hypotheses hold but '{}' fails",
                    c.label, c.conclusion.name
                )
            });
        self
    }

    pub fn is_applicable(&self) -> bool {
        self.not_applicable.is_none()
    }

    pub fn is_violation(&self) -> bool {
        self.violation.is_some()
    }

    pub fn clause_by_label(&self, label: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.label == label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violation_detection() {
        let mut r = TheoremReport::new("demo", "x");
        r.clause(Clause::new(
            "a",
            vec![Check::new("h", false)],
            Check::new("c", false),
        ));
        r.clause(Clause::new(
            "b",
            vec![Check::new("h", true)],
            Check::new("c", true),
        ));
        let r = r.finish();
        assert!(!r.is_violation());

        let mut r = TheoremReport::new("demo", "x");
        r.clause(Clause::new(
            "a",
            vec![Check::new("h", true)],
            Check::new("c", false),
        ));
        let r = r.finish();
        assert!(r.violation.as_deref().unwrap().starts_with("a:"));
    }

    #[test]
    fn failed_preconditions_skip() {
        let mut r = TheoremReport::new("demo", "x");
        r.precondition("p", false);
        let r = r.skip_on_failed_preconditions().unwrap_err();
        assert_eq!(r.not_applicable.as_deref(), Some("preconditions fail: p"));
    }
}
