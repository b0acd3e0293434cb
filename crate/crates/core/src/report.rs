//! Deterministic run reports: a result table, verdicts, and the input digest.
//!
//! For identical inputs the rendered table is byte-identical; the elapsed
//! time is carried alongside but excluded from every serialized form.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input: String,
    pub input_digest: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip)]
    pub timing_ms: u128,
}

impl RunReport {
    pub fn new(command: impl Into<String>, input: impl Into<String>, input_bytes: &[u8]) -> Self {
        RunReport {
            command: command.into(),
            input: input.into(),
            input_digest: sha256_hex(input_bytes),
            headers: Vec::new(),
            rows: Vec::new(),
            verdicts: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn verdict(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            label: label.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Exit code contract: 0 when every verdict passes, 1 otherwise.
    /// Input errors never reach a report and exit with 2.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!(
            "input: {} (sha256 {})\n",
            self.input, self.input_digest
        ));
        if !self.rows.is_empty() {
            out.push('\n');
            let widths: Vec<usize> = (0..self.headers.len())
                .map(|c| {
                    self.rows
                        .iter()
                        .map(|r| r.get(c).map_or(0, |s| s.chars().count()))
                        .chain(std::iter::once(self.headers[c].chars().count()))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let fmt_row = |cells: &[String]| -> String {
                cells
                    .iter()
                    .enumerate()
                    .map(|(c, s)| format!("{:width$}", s, width = widths.get(c).copied().unwrap_or(0)))
                    .collect::<Vec<_>>()
                    .join(" | ")
            };
            out.push_str(&fmt_row(&self.headers));
            out.push('\n');
            out.push_str(
                &widths
                    .iter()
                    .map(|w| "-".repeat(*w))
                    .collect::<Vec<_>>()
                    .join("-+-"),
            );
            out.push('\n');
            for row in &self.rows {
                out.push_str(&fmt_row(row));
                out.push('\n');
            }
        }
        if !self.verdicts.is_empty() {
            out.push('\n');
            for v in &self.verdicts {
                let mark = if v.pass { "PASS" } else { "FAIL" };
                if v.detail.is_empty() {
                    out.push_str(&format!("{mark} {}\n", v.label));
                } else {
                    out.push_str(&format!("{mark} {}: {}\n", v.label, v.detail));
                }
            }
        }
        out
    }

    /// Comma-separated table with the same cells as the text rendering.
    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&csv_row(&self.headers));
        for row in &self.rows {
            out.push_str(&csv_row(row));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn csv_row(cells: &[String]) -> String {
    let escaped: Vec<String> = cells
        .iter()
        .map(|c| {
            if c.contains(',') || c.contains('"') || c.contains('\n') {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect();
    format!("{}\n", escaped.join(","))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn rendering_and_exit_codes() {
        let mut r = RunReport::new("check", "x.json", b"{}");
        r.headers = vec!["k".into(), "value".into()];
        r.rows.push(vec!["1".into(), "4".into()]);
        r.verdict("looks_good", true, "");
        assert_eq!(r.exit_code(), 0);
        let text = r.render_text();
        assert!(text.contains("PASS looks_good"));
        assert!(text.contains("k | value"));
        let csv = r.render_csv();
        assert_eq!(csv, "k,value\n1,4\n");
        r.verdict("broken", false, "detail");
        assert_eq!(r.exit_code(), 1);
    }
}
