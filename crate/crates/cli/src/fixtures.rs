use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use permbase::base::{base_probability, base_size_exact, reg_l_m, regular_suborbits, BaseMethod};
use permbase::constructions::Budgets;
use permbase::distinguishing::{
    count_tm, distinguishing_number, power_set_regular_orbits, x_regular_orbits,
};
use permbase::product::direct_base_two_witness;
use permbase::report::AnalysisReport;
use permbase::saxl::{saxl_report, saxl_summary, DEFAULT_SWEEP_BUDGET};
use permbase::{Error, Result};

use crate::commands::{fixture, product_type, wreath_counts, Output};

const BUNDLED: &str = include_str!("fixtures.json");

#[derive(Debug, Deserialize)]
pub struct Row {
    pub id: String,
    pub check: String,
    pub group: String,
    #[serde(default)]
    pub top: Option<String>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub pattern: Option<String>,
    pub expect: Value,
}

pub fn parse_manifest(text: &str) -> Result<Vec<Row>> {
    serde_json::from_str(text).map_err(|e| Error::MalformedFile(e.to_string()))
}

fn need<T: Clone>(v: &Option<T>, what: &str, id: &str) -> Result<T> {
    v.clone()
        .ok_or_else(|| Error::InvalidParameters(format!("row '{id}' needs '{what}'")))
}

/// Evaluates one row.
fn evaluate(row: &Row, budgets: &Budgets, node_budget: u64) -> Result<Value> {
    let id = &row.id;
    let g = || fixture(&row.group, budgets);
    let v = match row.check.as_str() {
        "r" => json!(regular_suborbits(&g()?.group)?.count),
        "r_socle" => {
            let f = g()?;
            let t = f
                .socle
                .ok_or_else(|| Error::InvalidParameters(format!("{} has no socle", row.group)))?;
            json!(regular_suborbits(&t)?.count)
        }
        "reg" => json!(reg_l_m(&g()?.group, need(&row.m, "m", id)?)?),
        "tm" => json!(count_tm(&g()?.group, need(&row.m, "m", id)?)?),
        "D" => json!(distinguishing_number(&g()?.group)?),
        "base_probability" => {
            let b = need(&row.m, "m", id)?;
            json!(base_probability(&g()?.group, b, budgets.max_order)?.p_exact.to_string())
        }
        "wreath_r_formula" | "wreath_r_brute" => {
            let (formula, brute) = wreath_counts(&row.group, &need(&row.top, "top", id)?, budgets)?;
            json!(if row.check == "wreath_r_formula" { formula } else { brute })
        }
        "b" => {
            let res = base_size_exact(&g()?.group, node_budget)?;
            if res.method != BaseMethod::Exact {
                return Err(Error::BudgetExhausted(format!("base size of {}", row.group)));
            }
            json!(res.b)
        }
        "prodtype_b" | "prodtype_tau" | "prodtype_witness" => {
            let top = need(&row.top, "top", id)?;
            let pattern = row.pattern.clone().unwrap_or_else(|| "diag".into());
            let pt = product_type(&row.group, &top, &pattern, budgets)?;
            match row.check.as_str() {
                "prodtype_tau" => json!(pt.tau),
                "prodtype_witness" => json!(direct_base_two_witness(&pt.group)?.is_some()),
                _ => {
                    let res = base_size_exact(&pt.group, node_budget)?;
                    if res.method != BaseMethod::Exact {
                        return Err(Error::BudgetExhausted(format!("base size of {id}")));
                    }
                    json!(res.b)
                }
            }
        }
        "power_set_regular" => json!(power_set_regular_orbits(&g()?.group)?.count),
        "x_regular" => json!(x_regular_orbits(&g()?.group)?.count),
        "valency" => json!(saxl_summary(&g()?.group)?.valency),
        "eulerian" => json!(saxl_summary(&g()?.group)?.eulerian),
        "star_star" | "diameter" => {
            let rep = saxl_report(&g()?.group, DEFAULT_SWEEP_BUDGET)?;
            if row.check == "diameter" {
                json!(rep.diameter)
            } else if rep.star_star == rep.star_star_double_coset {
                json!(rep.star_star)
            } else {
                json!("methods disagree")
            }
        }
        other => {
            return Err(Error::InvalidParameters(format!("unknown check '{other}' in row '{id}'")))
        }
    };
    Ok(v)
}

/// Runs every row of the manifest, bundled unless `path` is given.
pub fn verify(path: Option<&Path>, budgets: &Budgets, node_budget: u64) -> Result<Output> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => BUNDLED.to_string(),
    };
    let rows = parse_manifest(&text)?;
    let mut report = AnalysisReport::new("fixtures");
    let mut lines = Vec::new();
    let mut failures = 0;
    for row in &rows {
        let (got, pass) = match evaluate(row, budgets, node_budget) {
            Ok(v) => {
                let pass = v == row.expect;
                (v, pass)
            }
            Err(e) => (json!(format!("error: {e}")), false),
        };
        if !pass {
            failures += 1;
        }
        let status = if pass { "PASS" } else { "FAIL" };
        lines.push(format!("{status} {}: got {got}, expected {}", row.id, row.expect));
        report.record(
            &row.id,
            json!({"got": got, "expected": row.expect, "pass": pass}),
            &row.check,
        );
    }
    report.record("passed", rows.len() - failures, "count");
    report.record("failed", failures, "count");
    report.finish();
    lines.push(format!("{} of {} rows passed", rows.len() - failures, rows.len()));
    Ok(Output {
        report,
        text: Some(lines.join("\n") + "\n"),
        failed: failures > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_manifest_parses() {
        let rows = parse_manifest(BUNDLED).unwrap();
        assert!(rows.len() > 50);
        let mut ids: Vec<&str> = rows.iter().map(|r| r.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), rows.len());
    }
}
