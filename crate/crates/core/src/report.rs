//! Machine-readable claim reports emitted by the reproduction commands.
//!
//! Reports are deterministic: claims are built in a fixed order and the JSON
//! serialization has a fixed field order, so identical inputs give identical
//! bytes. Wall-clock runtime is printed in the human summary only, never
//! serialized. All numeric payloads are integers or {num, den} pairs.

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize, Default)]
pub struct ReportInputs {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cubic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub slow: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub anchor: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: ReportInputs,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(command: &str, inputs: ReportInputs) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            claims: Vec::new(),
        }
    }

    /// Exact-equality claim.
    pub fn claim(&mut self, id: &str, anchor: &str, expected: Value, computed: Value) {
        let pass = expected == computed;
        self.claims.push(Claim {
            id: id.to_string(),
            anchor: anchor.to_string(),
            expected,
            computed,
            pass,
        });
    }

    /// Claim with an explicit pass verdict (set equality, thresholds,
    /// up-to-scalar comparisons computed by the caller).
    pub fn claim_with(&mut self, id: &str, anchor: &str, expected: Value, computed: Value, pass: bool) {
        self.claims.push(Claim {
            id: id.to_string(),
            anchor: anchor.to_string(),
            expected,
            computed,
            pass,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn human_summary(&self, runtime_ms: u128) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.command));
        for c in &self.claims {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "[{mark}] {}: computed {} (expected {}) -- {}\n",
                c.id,
                clip(&c.computed.to_string()),
                clip(&c.expected.to_string()),
                c.anchor
            ));
        }
        let passed = self.claims.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "{} / {} claims pass, {} ms\n",
            passed,
            self.claims.len(),
            runtime_ms
        ));
        out
    }
}

/// Long values are clipped in the human summary; the JSON keeps everything.
fn clip(s: &str) -> String {
    const LIMIT: usize = 160;
    if s.len() <= LIMIT {
        return s.to_string();
    }
    let mut cut = LIMIT;
    while !s.is_char_boundary(cut) {
        cut -= 1;
    }
    format!("{}... ({} bytes)", &s[..cut], s.len())
}

/// Exact rational as a {num, den} JSON object.
pub fn rational_value(q: &BigRational) -> Value {
    let num = q.numer().to_string();
    let den = q.denom().to_string();
    match (num.parse::<i64>(), den.parse::<i64>()) {
        (Ok(n), Ok(d)) => json!({"num": n, "den": d}),
        _ => json!({"num": num, "den": den}),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::big_ratio;

    #[test]
    fn deterministic_json() {
        let mut r = Report::new("demo", ReportInputs::default());
        r.claim("a", "x = 1", json!(1), json!(1));
        r.claim("b", "y = 2", json!(2), json!(3));
        assert!(!r.all_pass());
        let s1 = r.to_json();
        let s2 = r.to_json();
        assert_eq!(s1, s2);
        assert!(s1.contains("\"pass\": false"));
    }

    #[test]
    fn rational_encoding() {
        // serde_json orders object keys alphabetically
        assert_eq!(
            rational_value(&big_ratio(777, 4)).to_string(),
            r#"{"den":4,"num":777}"#
        );
    }
}
