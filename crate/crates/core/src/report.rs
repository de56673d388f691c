//! Self-describing CSV and JSON reports. The run configuration, including
//! the field, heads every report; identical configurations give identical bytes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub field: FieldSpec,
    pub e: u32,
    pub poly: Option<String>,
    pub degree_cap: Option<usize>,
    pub l: Option<usize>,
    pub k: Option<usize>,
    pub count_cap: u64,
    pub instances: Option<usize>,
    pub grid: Option<String>,
    pub seed: u64,
    pub format: Format,
    pub out: Option<String>,
}

#[derive(Serialize)]
struct JsonReport<'a, R: Serialize, S: Serialize> {
    config: &'a RunConfig,
    summary: &'a S,
    rows: &'a [R],
}

/// Renders `rows` under the configuration header, with a summary line.
pub fn render<R: Serialize, S: Serialize>(config: &RunConfig, summary: &S, rows: &[R]) -> Result<String> {
    let ser = |e: &dyn std::fmt::Display| Error::Internal(format!("report serialization: {e}"));
    match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&JsonReport { config, summary, rows }).map_err(|e| ser(&e))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str("# config: ");
            out.push_str(&serde_json::to_string(config).map_err(|e| ser(&e))?);
            out.push('\n');
            out.push_str("# summary: ");
            out.push_str(&serde_json::to_string(summary).map_err(|e| ser(&e))?);
            out.push('\n');
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| ser(&e))?;
            }
            let bytes = w.into_inner().map_err(|e| ser(&e))?;
            out.push_str(&String::from_utf8(bytes).map_err(|e| ser(&e))?);
            Ok(out)
        }
    }
}
