//! Deterministic check reports.

/// Accumulates per-check verdicts; printing order is insertion order, so a
/// report is byte-identical for identical inputs.
pub struct Report {
    command: String,
    checks: Vec<(String, Verdict)>,
}

enum Verdict {
    Pass(Option<String>),
    Fail(String),
    Info(String),
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            checks: Vec::new(),
        }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push((name.into(), Verdict::Pass(None)));
    }

    pub fn pass_with(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks
            .push((name.into(), Verdict::Pass(Some(detail.into()))));
    }

    pub fn fail(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks
            .push((name.into(), Verdict::Fail(reason.into())));
    }

    pub fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks
            .push((name.into(), Verdict::Info(detail.into())));
    }

    /// Records a boolean check.
    pub fn verdict(&mut self, name: impl Into<String>, ok: bool, reason: impl Into<String>) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, reason);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .all(|(_, v)| !matches!(v, Verdict::Fail(_)))
    }

    pub fn print(&self) {
        println!("uniloc {}", self.command);
        for (name, verdict) in &self.checks {
            match verdict {
                Verdict::Pass(None) => println!("  {name}: pass"),
                Verdict::Pass(Some(d)) => println!("  {name}: pass ({d})"),
                Verdict::Fail(reason) => println!("  {name}: FAIL ({reason})"),
                Verdict::Info(d) => println!("  {name}: {d}"),
            }
        }
        println!(
            "overall: {}",
            if self.all_passed() { "pass" } else { "FAIL" }
        );
    }
}
