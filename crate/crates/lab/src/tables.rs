//! Regenerated table rows. Computed cells that disagree with the printed
//! table carry a trailing `!`.

use serde::{Deserialize, Serialize};

use tpp_core::catalog::CatalogEntry;
use tpp_core::classify::sqrt_display;

use crate::campaign::{BoundCheckResult, CampaignReport, Status};
use crate::rational_text;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!(
                "unknown format `{other}`; expected md, csv or json"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: String,
    pub group: String,
    pub structure: String,
    pub centre_order: String,
    pub sqrt_index: String,
    pub cd: String,
    pub rho0: String,
    pub status: String,
    pub notes: String,
}

const HEADERS: [&str; 9] = [
    "table",
    "group",
    "structure",
    "|Z(G)|",
    "sqrt|G:Z(G)|",
    "cd(G)",
    "rho0",
    "status",
    "notes",
];

fn flag(text: String, bad: bool) -> String {
    if bad {
        text + "!"
    } else {
        text
    }
}

pub fn table_row(entry: &CatalogEntry, result: &BoundCheckResult) -> TableRow {
    let declared = entry.declared.as_ref();
    let centre_order = match result.centre_order {
        Some(z) => flag(z.to_string(), declared.is_some_and(|d| d.centre_order != z)),
        None => "?".to_string(),
    };
    let sqrt_index = match result.centre_index {
        Some(m) => flag(
            sqrt_display(m),
            declared.is_some_and(|d| d.centre_index != m),
        ),
        None => "?".to_string(),
    };
    let cd_flagged = result
        .classification
        .as_ref()
        .is_some_and(|c| c.cd_discrepancy().is_some());
    let cd = match declared {
        Some(d) => flag(
            format!(
                "{{{}}}",
                d.cd.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            cd_flagged,
        ),
        None => "-".to_string(),
    };
    let rho0 = match (result.computed_rho0, result.budget_exhausted) {
        (Some(r), false) => flag(rational_text(r), declared.is_some_and(|d| d.rho0 != r)),
        (Some(r), true) => format!(">={}", rational_text(r)),
        (None, _) => "not searched".to_string(),
    };
    let mut notes: Vec<String> = result.discrepancies.clone();
    notes.extend(result.warnings.iter().cloned());
    if matches!(result.status, Status::Mismatch | Status::Violation) {
        if let Some([s, t, u]) = result.witnesses.first() {
            notes.push(format!("witness S={s:?} T={t:?} U={u:?}"));
        }
    }
    TableRow {
        table: entry
            .table
            .number()
            .map_or_else(|| "-".to_string(), |n| n.to_string()),
        group: entry.label.clone(),
        structure: entry.declared_structure.clone(),
        centre_order,
        sqrt_index,
        cd,
        rho0,
        status: result.status.label().to_string(),
        notes: notes.join("; "),
    }
}

pub fn table_rows(entries: &[&CatalogEntry], report: &CampaignReport) -> Vec<TableRow> {
    entries
        .iter()
        .zip(&report.groups)
        .map(|(e, r)| table_row(e, r))
        .collect()
}

pub fn render(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Markdown => render_markdown(rows),
        Format::Csv => render_csv(rows),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn render_markdown(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let head: Vec<String> = HEADERS[..8].iter().map(|h| md_cell(h)).collect();
    out.push_str(&format!("| {} |\n", head.join(" | ")));
    out.push_str(&format!("|{}\n", "---|".repeat(8)));
    let mut notes = Vec::new();
    for r in rows {
        let cells = [
            &r.table,
            &r.group,
            &r.structure,
            &r.centre_order,
            &r.sqrt_index,
            &r.cd,
            &r.rho0,
            &r.status,
        ];
        let cells: Vec<String> = cells.iter().map(|c| md_cell(c)).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
        if !r.notes.is_empty() {
            notes.push(format!("- {}: {}", r.group, r.notes));
        }
    }
    if !notes.is_empty() {
        out.push('\n');
        for n in notes {
            out.push_str(&n);
            out.push('\n');
        }
    }
    out
}

fn render_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADERS).expect("in-memory write");
    for r in rows {
        w.write_record([
            &r.table,
            &r.group,
            &r.structure,
            &r.centre_order,
            &r.sqrt_index,
            &r.cd,
            &r.rho0,
            &r.status,
            &r.notes,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn parse_csv(text: &str) -> Result<Vec<TableRow>, String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| e.to_string())?.clone();
    if headers.iter().ne(HEADERS) {
        return Err(format!("unexpected header row {headers:?}"));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            let f = |i: usize| rec.get(i).unwrap_or_default().to_string();
            Ok(TableRow {
                table: f(0),
                group: f(1),
                structure: f(2),
                centre_order: f(3),
                sqrt_index: f(4),
                cd: f(5),
                rho0: f(6),
                status: f(7),
                notes: f(8),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(notes: &str) -> TableRow {
        TableRow {
            table: "1".into(),
            group: "[32, 49]".into(),
            structure: "(C2 x C2 x C2) : (C2 x C2)".into(),
            centre_order: "2".into(),
            sqrt_index: "2√2!".into(),
            cd: "{1, 4}".into(),
            rho0: "2".into(),
            status: "PASS".into(),
            notes: notes.into(),
        }
    }

    #[test]
    fn csv_round_trips_with_quotes_and_commas() {
        let rows = vec![row(""), row("a, \"quoted\"; b")];
        let text = render(&rows, Format::Csv);
        assert_eq!(parse_csv(&text).unwrap(), rows);
    }

    #[test]
    fn markdown_escapes_pipes() {
        let text = render(&[row("")], Format::Markdown);
        assert!(text.starts_with("| table | group | structure | \\|Z(G)\\| |"));
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn format_names() {
        assert_eq!("md".parse::<Format>(), Ok(Format::Markdown));
        assert!("xml".parse::<Format>().is_err());
    }
}
