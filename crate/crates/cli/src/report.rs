//! The report every subcommand produces, in two renderings.
//!
//! Text: `key = value` lines under `[inputs]`, `[results]`, `[checks]` and
//! `[notices]` headers. Structured: one JSON object with the same fields in
//! the same order. Both are byte-stable for fixed inputs: entries keep
//! insertion order, integers are exact, reals use 17 significant digits.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Entry>,
    pub results: Vec<Entry>,
    pub checks: Vec<Check>,
    pub notices: Vec<String>,
    pub version: String,
}

/// Reals in reports and exports: 17 significant digits.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
            notices: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.push(Entry {
            key: key.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn result(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.results.push(Entry {
            key: key.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn check(&mut self, name: &str, passed: bool, measured: impl ToString) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            passed,
            measured: measured.to_string(),
        });
        self
    }

    pub fn notice(&mut self, text: impl Into<String>) -> &mut Self {
        self.notices.push(text.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command = {}", self.command);
        let _ = writeln!(out, "version = {}", self.version);
        let sections = [("inputs", &self.inputs), ("results", &self.results)];
        for (title, entries) in sections {
            if entries.is_empty() {
                continue;
            }
            let _ = writeln!(out, "[{title}]");
            for e in entries {
                let _ = writeln!(out, "{} = {}", e.key, e.value);
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "[checks]");
            for c in &self.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{status} {}: {}", c.name, c.measured);
            }
        }
        if !self.notices.is_empty() {
            let _ = writeln!(out, "[notices]");
            for n in &self.notices {
                let _ = writeln!(out, "{n}");
            }
        }
        let _ = writeln!(
            out,
            "status = {}",
            if self.passed() { "pass" } else { "fail" }
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = Report::new("classify 8 3");
        r.input("p", 8)
            .result("klein_bottle", "yes")
            .check("det", true, -1);
        let text = r.render(Format::Text);
        assert!(text.starts_with("command = classify 8 3\nversion = "));
        assert!(text
            .contains("[inputs]\np = 8\n[results]\nklein_bottle = yes\n[checks]\nPASS det: -1\n"));
        assert!(text.ends_with("status = pass\n"));
    }

    #[test]
    fn structured_is_json() {
        let mut r = Report::new("x");
        r.check("c", false, real(0.5));
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Structured)).unwrap();
        assert_eq!(v["checks"][0]["measured"], "5.0000000000000000e-1");
        assert!(!r.passed());
    }
}
