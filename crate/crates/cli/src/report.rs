//! Text tables for classification reports. JSON is the persisted form;
//! the tables are for reading only.

use anyhow::Result;
use sdkit_core::frames::{ClassificationReport, LengthReport};

/// Table label of a lattice: the catalog index `i` of `L_{n,i}`, otherwise
/// the full name.
pub fn row_label(name: &str) -> &str {
    name.strip_prefix("L_{")
        .and_then(|r| r.strip_suffix('}'))
        .and_then(|r| r.split_once(','))
        .map_or(name, |(_, i)| i.trim())
}

/// One `i | N | #Aut` row per lattice, the orders of all its codes in
/// report order.
pub fn render_table(reports: &[ClassificationReport]) -> String {
    let rows: Vec<[String; 3]> = reports
        .iter()
        .map(|r| {
            let auts: Vec<&str> = r.codes.iter().map(|c| c.aut_order.as_str()).collect();
            [
                row_label(&r.lattice).to_string(),
                r.n.to_string(),
                auts.join(", "),
            ]
        })
        .collect();
    let wi = rows
        .iter()
        .map(|r| r[0].len())
        .chain([1])
        .max()
        .unwrap_or(1);
    let wn = rows
        .iter()
        .map(|r| r[1].len())
        .chain([1])
        .max()
        .unwrap_or(1);
    let mut s = format!("{:>wi$} | {:>wn$} | #Aut\n", "i", "N");
    for r in rows {
        s.push_str(&format!("{:>wi$} | {:>wn$} | {}\n", r[0], r[1], r[2]));
    }
    s
}

pub fn render_json(reports: &[ClassificationReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)? + "\n")
}

/// Lattice table followed by the mass check and the `T_i` values.
pub fn render_length(r: &LengthReport) -> String {
    let mut s = render_table(&r.lattices);
    s.push_str(&format!(
        "\nmass: {} (expected {}) {}\n",
        r.mass.total,
        r.mass.expected,
        if r.mass.pass { "PASS" } else { "FAIL" }
    ));
    for (i, t) in &r.t {
        s.push_str(&format!("T_{i} = {t}\n"));
    }
    s
}
