use std::fmt;

/// Outcome of one verification: a pass/fail flag plus human-readable
/// detail lines (the first failing item is always among them).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            details: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            details: vec![detail.into()],
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.details.push(detail.into());
        self
    }

    /// Records a failure; keeps the first failure as the leading detail.
    pub fn record_failure(&mut self, detail: impl Into<String>) {
        if self.passed {
            self.details.insert(0, detail.into());
        }
        self.passed = false;
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name
        )?;
        for d in &self.details {
            write!(f, "\n\t{d}")?;
        }
        Ok(())
    }
}
