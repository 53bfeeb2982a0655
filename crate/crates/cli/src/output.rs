//! Report envelope and its JSON, CSV and text renderings. Output bytes depend
//! only on the configuration: records are sorted and no clock is read.

use calkit_core::report::{CheckRecord, Detail, Residual};
use serde::Serialize;

use crate::config::{Command, Format, RunConfig};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub version: &'static str,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl ReportEnvelope {
    pub fn new(config: RunConfig, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let pass = checks.iter().all(|c| c.pass);
        ReportEnvelope {
            version: TOOL_VERSION,
            config,
            checks,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub fn render(env: &ReportEnvelope, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(env).expect("envelope serializes");
            s.push('\n');
            s
        }
        Format::Csv if env.config.command == Command::Coherent => coefficient_csv(env),
        Format::Csv => check_csv(env),
        Format::Text => text(env),
    }
}

fn residual_string(r: &Residual) -> String {
    match r {
        Residual::Terms(t) => t.to_string(),
        Residual::Relative(v) => format!("{v:e}"),
    }
}

fn params_string(c: &CheckRecord) -> String {
    c.params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 fields")
}

fn check_csv(env: &ReportEnvelope) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "params", "residual", "tolerance", "pass", "negative_control"])
        .expect("in-memory write");
    for c in &env.checks {
        w.write_record([
            c.name.clone(),
            params_string(c),
            residual_string(&c.residual),
            residual_string(&c.tolerance),
            c.pass.to_string(),
            c.negative_control.to_string(),
        ])
        .expect("in-memory write");
    }
    finish(w)
}

const COEFF_COLUMNS: [&str; 9] = [
    "model",
    "N",
    "alpha",
    "lambda",
    "lambda1",
    "pair_coefficient",
    "m",
    "basis",
    "k2",
];

/// One row per `(n, cₙ)`; coefficients are exact `p/q` strings.
fn coefficient_csv(env: &ReportEnvelope) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = COEFF_COLUMNS.to_vec();
    header.extend(["n", "c_n"]);
    w.write_record(&header).expect("in-memory write");
    for c in env.checks.iter().filter(|c| c.name == "coherent_coefficients") {
        let Some(Detail::List(coeffs)) = c.details.get("c_n") else {
            continue;
        };
        for (n, cn) in coeffs.iter().enumerate() {
            let mut row: Vec<String> = COEFF_COLUMNS
                .iter()
                .map(|k| c.params.get(*k).cloned().unwrap_or_default())
                .collect();
            row.push(n.to_string());
            row.push(cn.clone());
            w.write_record(&row).expect("in-memory write");
        }
    }
    finish(w)
}

fn text(env: &ReportEnvelope) -> String {
    let mut s = format!("calkit {} {}\n", env.version, env.config.command.name());
    for c in &env.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        let control = if c.negative_control { " (negative control)" } else { "" };
        s.push_str(&format!(
            "{tag} {}{control} [{}] residual={} tolerance={}\n",
            c.name,
            params_string(c),
            residual_string(&c.residual),
            residual_string(&c.tolerance),
        ));
        for (k, v) in &c.details {
            s.push_str(&format!("    {k}: {v}\n"));
        }
    }
    let failed = env.failures().count();
    s.push_str(&format!(
        "{}: {} checks, {failed} failed\n",
        if env.pass { "PASS" } else { "FAIL" },
        env.checks.len()
    ));
    s
}
