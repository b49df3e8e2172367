//! Run reports: solved flag, time, expansions and the overapproximation
//! ratio (candidates per applicable action, aggregated over a run).

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::successor::{CandidateReport, Strategy};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub task: String,
    pub strategy: Strategy,
    pub solved: bool,
    /// `plan`, `unsolvable`, `time`, `memory`, `node cap` or `error`.
    pub outcome: String,
    pub plan_cost: Option<usize>,
    /// Seconds.
    pub wall_time: f64,
    pub expansions: usize,
    pub candidates: u64,
    pub applicable: u64,
    /// `candidates / applicable` rounded to two decimals; null without any
    /// applicable action.
    pub oa: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_expansion: Vec<CandidateReport>,
}

/// Ratio rounded to two decimals, or `None` when nothing was applicable.
pub fn overapproximation(candidates: u64, applicable: u64) -> Option<f64> {
    if applicable == 0 {
        return None;
    }
    Some((candidates as f64 / applicable as f64 * 100.0).round() / 100.0)
}

/// Run-level fields other than the candidate counts.
#[derive(Clone, Debug, PartialEq)]
pub struct RunInfo {
    pub task: String,
    pub strategy: Strategy,
    pub outcome: String,
    pub plan_cost: Option<usize>,
    pub wall_time: f64,
}

/// Sums per-expansion counts into a report.
pub fn aggregate(info: RunInfo, per_expansion: &[CandidateReport], keep_per_expansion: bool) -> RunReport {
    let mut total = CandidateReport::default();
    for r in per_expansion {
        total += *r;
    }
    RunReport {
        task: info.task,
        strategy: info.strategy,
        solved: info.plan_cost.is_some(),
        outcome: info.outcome,
        plan_cost: info.plan_cost,
        wall_time: info.wall_time,
        expansions: per_expansion.len(),
        candidates: total.candidates,
        applicable: total.applicable,
        oa: overapproximation(total.candidates, total.applicable),
        per_expansion: if keep_per_expansion { per_expansion.to_vec() } else { Vec::new() },
    }
}

pub fn write_jsonl<W: Write>(mut w: W, reports: &[RunReport]) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> io::Result<Vec<RunReport>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?);
    }
    Ok(out)
}

/// One CSV row per report, without per-expansion data.
pub fn to_csv(reports: &[RunReport]) -> String {
    let mut s = String::from("task,strategy,solved,outcome,plan_cost,wall_time,expansions,candidates,applicable,oa\n");
    for r in reports {
        let quoted =
            if r.task.contains([',', '"']) { format!("\"{}\"", r.task.replace('"', "\"\"")) } else { r.task.clone() };
        s.push_str(&format!(
            "{},{},{},{},{},{:.3},{},{},{},{}\n",
            quoted,
            r.strategy,
            r.solved,
            r.outcome,
            r.plan_cost.map(|c| c.to_string()).unwrap_or_default(),
            r.wall_time,
            r.expansions,
            r.candidates,
            r.applicable,
            r.oa.map(|o| format!("{o:.2}")).unwrap_or_default(),
        ));
    }
    s
}
