//! Configuration, check registry and report assembly behind the
//! `parahoric` binary.

pub mod checks;
pub mod config;

pub use checks::{Check, Outcome, Status, CHECKS};
pub use config::{parse_config, render, ConfigError, Format, Suite, SuiteConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub check_id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.rows.iter().any(|r| r.status == Status::Fail)
    }

    /// Header plus one row per check; an empty report renders as nothing.
    pub fn to_tsv(&self) -> String {
        if self.rows.is_empty() {
            return String::new();
        }
        let mut s = String::from("check_id\tanchor\tstatus\twitness\n");
        for r in &self.rows {
            s.push_str(&format!("{}\t{}\t{}\t{}\n", r.check_id, r.anchor, r.status, clean(&r.witness)));
        }
        s
    }

    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| format!("{} {}: {}: {}\n", r.check_id, r.anchor, r.witness, r.status)).collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.to_tsv(),
            Format::Text => self.to_text(),
        }
    }
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

/// Runs the checks of the selected suites in check-id order.
pub fn run_suite(config: &SuiteConfig) -> Report {
    let rows = CHECKS
        .iter()
        .filter(|c| config.suites.contains(&c.suite))
        .map(|c| {
            let o = (c.run)(config);
            Row { check_id: c.id.into(), anchor: c.anchor.into(), status: o.status, witness: o.witness }
        })
        .collect();
    Report { rows }
}
