use std::fmt::Write;

use serde::Deserialize;

use crate::config::Format;
use crate::suite::{CheckRecord, CheckReport};

pub fn report_json(r: &CheckReport) -> serde_json::Value {
    let checks: Vec<serde_json::Value> = r.checks.iter().map(|c| serde_json::to_value(c).expect("records serialize")).collect();
    serde_json::json!({
        "run_id": r.run_id,
        "config": r.config,
        "checks": checks,
        "summary": {"passed": r.passed(), "failed": r.failed()},
    })
}

fn markdown(r: &CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# su21 verification report\n");
    let _ = writeln!(s, "run `{}`, config `{}`\n", r.run_id, r.config);
    let _ = writeln!(s, "| id | anchor | status | ms | witness |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for c in &r.checks {
        let status = if c.witness.is_none() { "pass" } else { "fail" };
        let witness = c.witness.as_deref().unwrap_or("").replace('|', "\\|");
        let _ = writeln!(s, "| {} | {} | {} | {} | {} |", c.id, c.anchor, status, c.elapsed_ms, witness);
    }
    let _ = writeln!(s, "\npassed: {}, failed: {}", r.passed(), r.failed());
    s
}

/// Renders a report; JSON keys come out sorted.
pub fn emit_report(r: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(r)).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Markdown => markdown(r),
    }
}

/// Reads a JSON report back.
pub fn parse_report(text: &str) -> Result<CheckReport, serde_json::Error> {
    #[derive(Deserialize)]
    struct Doc {
        run_id: String,
        config: serde_json::Value,
        checks: Vec<CheckRecord>,
    }
    let d: Doc = serde_json::from_str(text)?;
    Ok(CheckReport { run_id: d.run_id, config: d.config, checks: d.checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::Status;

    fn record(status: Status, witness: Option<&str>) -> CheckRecord {
        CheckRecord {
            id: "x.y".into(),
            anchor: "calc".into(),
            status,
            witness: witness.map(String::from),
            elapsed_ms: 3,
            counts: Default::default(),
        }
    }

    #[test]
    fn empty_and_failing() {
        let mut r = CheckReport { run_id: "r".into(), config: serde_json::json!({}), checks: vec![] };
        let v = report_json(&r);
        assert_eq!(v["summary"], serde_json::json!({"passed": 0, "failed": 0}));
        r.checks.push(record(Status::Fail, Some("E1 F2 != 0")));
        let text = emit_report(&r, Format::Json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["checks"][0]["status"], "fail");
        assert_eq!(v["checks"][0]["witness"], "E1 F2 != 0");
        assert_eq!(parse_report(&text).unwrap(), r);
        assert!(emit_report(&r, Format::Markdown).contains("| x.y | calc | fail | 3 | E1 F2 != 0 |"));
    }
}
