//! Text formats.
//!
//! Table file:
//! ```text
//! group-table v1
//! order N
//! <N lines of N space-separated indices>
//! labels            (optional)
//! <N lines, one label each>
//! ```
//!
//! Generator file:
//! ```text
//! perm-gens v1
//! degree D
//! <one generator per line: D space-separated images of 0..D-1>
//! ```

use std::fmt::Write as _;

use super::{validate_table, GroupError, GroupTable, PermutationGroup, DEFAULT_CLOSURE_CAP};

pub const TABLE_HEADER: &str = "group-table v1";
pub const GENS_HEADER: &str = "perm-gens v1";

fn parse_err(line: usize, reason: impl Into<String>) -> GroupError {
    GroupError::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_keyed(line_no: usize, line: Option<&str>, key: &str) -> Result<usize, GroupError> {
    let line = line.ok_or_else(|| parse_err(line_no, format!("missing `{key} N` line")))?;
    let rest = line
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| parse_err(line_no, format!("expected `{key} N`, found `{line}`")))?;
    rest.trim()
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad {key} `{rest}`")))
}

fn parse_row(line_no: usize, line: &str, expected: usize) -> Result<Vec<usize>, GroupError> {
    let row = line
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("bad index `{tok}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if row.len() != expected {
        return Err(parse_err(
            line_no,
            format!("expected {expected} entries, found {}", row.len()),
        ));
    }
    Ok(row)
}

/// Parses either a table file or a generator file into a validated group.
pub fn parse_group(text: &str) -> Result<GroupTable, GroupError> {
    match text.lines().next().map(str::trim_end) {
        Some(TABLE_HEADER) => parse_table(text),
        Some(GENS_HEADER) => parse_perm_gens(text)?.closure(DEFAULT_CLOSURE_CAP),
        Some(other) => Err(parse_err(1, format!("unknown header `{other}`"))),
        None => Err(parse_err(1, "empty input")),
    }
}

fn parse_table(text: &str) -> Result<GroupTable, GroupError> {
    let lines: Vec<&str> = text.lines().map(str::trim_end).collect();
    let n = parse_keyed(2, lines.get(1).copied(), "order")?;
    if n == 0 {
        return Err(parse_err(2, "order must be positive"));
    }
    let mut raw = Vec::with_capacity(n);
    for r in 0..n {
        let line_no = r + 3;
        let line = lines
            .get(line_no - 1)
            .ok_or_else(|| parse_err(line_no, "table truncated"))?;
        raw.push(parse_row(line_no, line, n)?);
    }
    let mut rest = lines[n + 2..]
        .iter()
        .enumerate()
        .map(|(i, l)| (i + n + 3, *l));
    let labels = match rest.next() {
        None => None,
        Some((_, "labels")) => {
            let labels: Vec<String> = rest.by_ref().take(n).map(|(_, l)| l.to_string()).collect();
            if labels.len() != n {
                return Err(parse_err(lines.len(), format!("expected {n} labels")));
            }
            Some(labels)
        }
        Some((_, "")) => None,
        Some((no, l)) => return Err(parse_err(no, format!("unexpected `{l}`"))),
    };
    if let Some((no, l)) = rest.find(|(_, l)| !l.is_empty()) {
        return Err(parse_err(no, format!("trailing content `{l}`")));
    }
    // labels follow their elements through identity normalization
    let e = (0..n).find(|&e| (0..n).all(|j| raw[e][j] == j && raw[j][e] == j));
    let group = validate_table(&raw)?;
    match (labels, e) {
        (Some(mut labels), Some(e)) => {
            labels.swap(0, e);
            group.with_labels(labels)
        }
        _ => Ok(group),
    }
}

pub fn parse_perm_gens(text: &str) -> Result<PermutationGroup, GroupError> {
    let lines: Vec<&str> = text.lines().map(str::trim_end).collect();
    if lines.first().copied() != Some(GENS_HEADER) {
        return Err(parse_err(1, format!("expected `{GENS_HEADER}`")));
    }
    let degree = parse_keyed(2, lines.get(1).copied(), "degree")?;
    let mut gens = Vec::new();
    for (i, line) in lines.iter().enumerate().skip(2) {
        if line.is_empty() {
            continue;
        }
        gens.push(parse_row(i + 1, line, degree)?);
    }
    PermutationGroup::new(degree, gens).map_err(|e| parse_err(lines.len(), e.to_string()))
}

/// Byte-deterministic table file (LF endings, single spaces).
pub fn serialize_group(g: &GroupTable) -> String {
    let mut out = String::new();
    writeln!(out, "{TABLE_HEADER}").unwrap();
    writeln!(out, "order {}", g.order()).unwrap();
    for x in g.elements() {
        let row: Vec<String> = g.row(x).iter().map(u32::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    if let Some(labels) = g.labels() {
        writeln!(out, "labels").unwrap();
        for l in labels {
            writeln!(out, "{l}").unwrap();
        }
    }
    out
}

pub fn serialize_perm_gens(perms: &PermutationGroup) -> String {
    let mut out = String::new();
    writeln!(out, "{GENS_HEADER}").unwrap();
    writeln!(out, "degree {}", perms.degree).unwrap();
    for g in &perms.generators {
        let row: Vec<String> = g.iter().map(usize::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_named, GroupRecipe};

    #[test]
    fn parse_c2() {
        let g = parse_group("group-table v1\norder 2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn round_trip_with_labels() {
        let g = construct_named(&GroupRecipe::Dihedral(8))
            .unwrap()
            .with_labels((0..8).map(|i| format!("g{i}")).collect())
            .unwrap();
        let text = serialize_group(&g);
        let back = parse_group(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(serialize_group(&back), text);
    }

    #[test]
    fn parse_normalizes_identity_and_labels() {
        let text = "group-table v1\norder 2\n1 0\n0 1\nlabels\nx\ne\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.labels().unwrap(), ["e", "x"]);
        assert_eq!(
            serialize_group(&g),
            "group-table v1\norder 2\n0 1\n1 0\nlabels\ne\nx\n"
        );
    }

    #[test]
    fn d8_from_generator_file() {
        let text = "perm-gens v1\ndegree 4\n1 2 3 0\n3 2 1 0\n";
        let perms = parse_perm_gens(text).unwrap();
        assert_eq!(perms.generators.len(), 2);
        assert_eq!(serialize_perm_gens(&perms), text);
        assert_eq!(parse_group(text).unwrap().order(), 8);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("nonsense\n", 1),
            ("group-table v1\norder x\n", 2),
            ("group-table v1\norder 2\n0 1\n", 4),
            ("group-table v1\norder 2\n0 1\n1 z\n", 4),
            ("group-table v1\norder 2\n0 1\n1 0 1\n", 4),
            ("group-table v1\norder 2\n0 1\n1 0\nextra\n", 5),
            ("perm-gens v1\ndegree 3\n0 1\n", 3),
        ];
        for (text, line) in cases {
            match parse_group(text) {
                Err(GroupError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        // structurally fine text, invalid group
        assert!(matches!(
            parse_group("group-table v1\norder 2\n0 1\n1 1\n"),
            Err(GroupError::NotLatinSquare { .. })
        ));
    }
}
