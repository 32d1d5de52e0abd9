//! Verification reports: per-case records with deterministic ordering,
//! JSON (versioned schema) and CSV emission.

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub suite: String,
    pub family: String,
    pub rank: usize,
    pub cuts: String,
    pub case: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl Report {
    /// Assembles a report with cases sorted by their key (suite, family,
    /// rank, cuts, case), independent of completion order.
    pub fn assemble(seed: u64, timestamp: Option<String>, mut cases: Vec<CaseRecord>) -> Report {
        cases.sort_by(|a, b| {
            (&a.suite, &a.family, a.rank, &a.cuts, &a.case)
                .cmp(&(&b.suite, &b.family, b.rank, &b.cuts, &b.case))
        });
        let pass = cases.iter().filter(|c| c.pass).count();
        let fail = cases.len() - pass;
        Report {
            schema: 1,
            seed,
            timestamp,
            summary: Summary {
                pass,
                fail,
                total: cases.len(),
            },
            cases,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Report> {
        Ok(serde_json::from_str(s)?)
    }

    /// CSV with the documented header; one row per case.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("suite,family,rank,cuts,case,expected,computed,pass,runtime_ms\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                csv_field(&c.suite),
                csv_field(&c.family),
                c.rank,
                csv_field(&c.cuts),
                csv_field(&c.case),
                csv_field(&c.expected),
                csv_field(&c.computed),
                c.pass,
                c.runtime_ms
            ));
        }
        out
    }

    /// Plain text: one line per failing case plus a summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            if !c.pass {
                out.push_str(&format!(
                    "FAIL {} {}{} cuts={} {}: expected {}, computed {}\n",
                    c.suite, c.family, c.rank, c.cuts, c.case, c.expected, c.computed
                ));
            }
        }
        out.push_str(&format!(
            "{} cases, {} passed, {} failed\n",
            self.summary.total, self.summary.pass, self.summary.fail
        ));
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(suite: &str, case: &str, pass: bool) -> CaseRecord {
        CaseRecord {
            suite: suite.into(),
            family: "A".into(),
            rank: 2,
            cuts: "{1}".into(),
            case: case.into(),
            expected: "3".into(),
            computed: if pass { "3" } else { "4" }.into(),
            pass,
            runtime_ms: 0,
        }
    }

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::assemble(0, None, vec![]);
        let s = r.to_json().unwrap();
        let back = Report::from_json(&s).unwrap();
        assert_eq!(back.summary.total, 0);
    }

    #[test]
    fn roundtrip_and_ordering() {
        let r = Report::assemble(
            42,
            None,
            vec![
                case("b", "z", true),
                case("a", "y", false),
                case("a", "x", true),
            ],
        );
        assert_eq!(r.cases[0].case, "x");
        assert_eq!(r.summary.pass, 2);
        assert_eq!(r.summary.fail, 1);
        let back = Report::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_row_count() {
        let r = Report::assemble(0, None, vec![case("a", "x", true), case("a", "y", true)]);
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 3); // header + 2 rows
        assert!(csv.starts_with("suite,family,rank,cuts,case,expected,computed,pass,runtime_ms"));
    }
}
