//! Report envelope and the text / CSV / JSON emitters.
//!
//! JSON key order is the struct field order below. Nothing run-dependent
//! (time, host, thread count) is written, so identical inputs give identical
//! bytes.

use std::fmt;

use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// Top-level object: `{version, command, params, entries, summary}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<P, E, S> {
    pub version: String,
    pub command: String,
    pub params: P,
    pub entries: Vec<E>,
    pub summary: S,
}

impl<P, E, S> Report<P, E, S> {
    pub fn new(command: &str, params: P, entries: Vec<E>, summary: S) -> Self {
        Self {
            version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            params,
            entries,
            summary,
        }
    }
}

/// Flat rendering of one entry.
pub trait Row {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

impl<P, E, S> Report<P, E, S>
where
    P: Serialize,
    E: Serialize + Row,
    S: Serialize + fmt::Display,
{
    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(E::header())?;
                for e in &self.entries {
                    w.write_record(e.cells())?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Text => {
                let header = E::header();
                let rows: Vec<Vec<String>> = self.entries.iter().map(Row::cells).collect();
                let widths: Vec<usize> = (0..header.len())
                    .map(|i| {
                        rows.iter()
                            .map(|r| r[i].len())
                            .chain([header[i].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: &[String]| -> String {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string()
                };
                let mut out = format!("# {} {}\n", self.command, self.version);
                let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
                out.push_str(&line(&header));
                out.push('\n');
                for r in &rows {
                    out.push_str(&line(r));
                    out.push('\n');
                }
                out.push_str(&format!("{}\n", self.summary));
                out
            }
        })
    }
}

pub(crate) fn triple(t: [u64; 3]) -> String {
    format!("{},{},{}", t[0], t[1], t[2])
}
