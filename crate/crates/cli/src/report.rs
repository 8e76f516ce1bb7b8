//! Report schema: pretty text to stdout, JSON to `--out`.

use crate::config::RunConfig;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultRow {
    pub name: String,
    pub verdict: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyRow {
    pub cite: String,
    pub printed: String,
    pub computed: String,
}

impl From<gslie::report::Discrepancy> for DiscrepancyRow {
    fn from(d: gslie::report::Discrepancy) -> Self {
        DiscrepancyRow {
            cite: d.cite,
            printed: d.printed,
            computed: d.computed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub results: Vec<ResultRow>,
    pub discrepancies: Vec<DiscrepancyRow>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Report {
        Report {
            command: command.to_string(),
            config: config.clone(),
            results: Vec::new(),
            discrepancies: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, verdict: impl Into<String>, detail: impl Into<String>) {
        self.results.push(ResultRow {
            name: name.into(),
            verdict: verdict.into(),
            detail: detail.into(),
        });
    }

    pub fn mark_mismatch(&mut self) {
        if self.status == Status::Ok {
            self.status = Status::Mismatch;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.command));
        let name_width = self
            .results
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(0)
            .min(48);
        for r in &self.results {
            out.push_str(&format!(
                "{:name_width$}  {:14}  {}\n",
                r.name, r.verdict, r.detail
            ));
        }
        if !self.discrepancies.is_empty() {
            out.push_str("\ncomputed-vs-printed discrepancies:\n");
            for d in &self.discrepancies {
                out.push_str(&format!(
                    "  [{}]\n    printed:  {}\n    computed: {}\n",
                    d.cite, d.printed, d.computed
                ));
            }
        }
        out.push_str(&format!(
            "\nstatus: {}\n",
            match self.status {
                Status::Ok => "ok",
                Status::Mismatch => "mismatch",
                Status::Error => "error",
            }
        ));
        out
    }
}
