//! Command reports in aligned text or JSON.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::exact_linalg::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of one command: checks that decide the exit status, plus a body
/// rendered once as text lines and once as structured data.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub lines: Vec<String>,
    pub data: Value,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), checks: Vec::new(), lines: Vec::new(), data: Value::Object(Default::default()) }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), pass, detail: detail.into() });
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Adds a labelled matrix to the text body.
    pub fn matrix(&mut self, label: &str, m: &ExactMatrix) {
        self.lines.push(format!("{label}:"));
        for row in m.to_string().lines() {
            self.lines.push(format!("  {row}"));
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report data serializes");
        if let Value::Object(map) = &mut self.data {
            map.insert(key.to_string(), v);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => {
                let doc = serde_json::json!({
                    "command": self.command,
                    "pass": self.passed(),
                    "checks": self.checks,
                    "result": self.data,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("json");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self) -> String {
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        let mut out = format!("{}: {verdict} ({passed}/{} checks)\n", self.command, self.checks.len());
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.pass { "ok  " } else { "FAIL" };
            out.push_str(&format!("  {tag} {:<width$}  {}\n", c.name, c.detail));
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

/// `a+bi` with shortest round-trip decimals, parseable as a document entry.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", z.re, z.im.abs())
}

pub fn format_complex_vec(v: &[Complex64]) -> Vec<String> {
    v.iter().copied().map(format_complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::GaussianRational;

    #[test]
    fn complex_strings_parse_back() {
        for z in [Complex64::new(0.1, -2.5), Complex64::new(-1e-7, 3.0), Complex64::new(2.0, 0.0)] {
            let back: GaussianRational = format_complex(z).parse().unwrap();
            assert_eq!(back.to_complex64(), z);
        }
    }

    #[test]
    fn exit_code_follows_checks() {
        let mut r = Report::new("demo");
        r.check("a", true, "");
        assert_eq!(r.exit_code(), 0);
        r.check("b", false, "broken");
        assert_eq!(r.exit_code(), 1);
        assert!(r.render(Format::Text).starts_with("demo: FAIL (1/2 checks)"));
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["pass"], Value::Bool(false));
    }
}
