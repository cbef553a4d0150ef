use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

use fourier_minors::TableRow;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// CSV and text renderings of the table.
pub fn table_alt(rows: &[TableRow]) -> (String, String) {
    let mut csv = String::from("p,q_new,q_zhang\n");
    for r in rows {
        csv.push_str(&format!("{},{},{}\n", r.p, r.q_new, r.q_zhang));
    }
    let lines: [(&str, Vec<String>); 3] = [
        ("p", rows.iter().map(|r| r.p.to_string()).collect()),
        ("q (new bound)", rows.iter().map(|r| r.q_new.to_string()).collect()),
        ("q (Zhang)", rows.iter().map(|r| r.q_zhang.to_string()).collect()),
    ];
    let widths: Vec<usize> = (0..rows.len()).map(|i| lines.iter().map(|(_, v)| v[i].len()).max().unwrap_or(0)).collect();
    let mut text = String::new();
    for (label, cells) in &lines {
        text.push_str(&format!("{label:<14}|"));
        for (c, w) in cells.iter().zip(&widths) {
            text.push_str(&format!(" {c:>w$}", w = *w));
        }
        text.push('\n');
        if *label == "p" {
            text.push_str(&format!("{}+{}\n", "-".repeat(14), "-".repeat(widths.iter().map(|w| w + 1).sum())));
        }
    }
    (csv, text)
}

pub fn emit(format: Format, envelope: &Value, alt: Option<&(String, String)>) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match (format, alt) {
        (Format::Csv, Some((csv, _))) => out.write_all(csv.as_bytes()),
        (Format::Text, Some((_, text))) => out.write_all(text.as_bytes()),
        (Format::Text, None) => writeln!(out, "{}", serde_json::to_string_pretty(envelope)?),
        _ => writeln!(out, "{}", serde_json::to_string(envelope)?),
    }
}
