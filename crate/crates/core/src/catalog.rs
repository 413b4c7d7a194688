//! The groups of the reference tables: a versioned manifest of declared
//! columns, construction recipes and invariant fingerprints, plus a bundle
//! of exported permutation generators for groups with no constructive recipe.
//!
//! Manifest rows (after the `tpp-catalog v1` header; `#` starts a comment):
//! ```text
//! label | table | structure | recipe | |Z| | sqrt|G:Z| | cd | rho0 | fingerprint
//! ```
//! `table` is `1`, `2`, `3` or `x` (not a table row, declared columns `-`).
//! Recipes: `cyclic(n)`, `dihedral(n)`, `quaternion(n)`, `elementary(p, k)`,
//! `direct(r, ...)`, `central(r@i, r@j)`, `table(path)`, or `gens` for the
//! export-bundle entry with the same label.
//!
//! Export bundle: a `tpp-export v1` header, then blocks each opened by a
//! `label [a, b]` line and holding a generator or table file.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::group::{parse_group, GroupError, GroupRecipe, GroupTable, DEFAULT_CLOSURE_CAP};
use crate::structure::{StructureCache, StructureError};

pub const MANIFEST_HEADER: &str = "tpp-catalog v1";
pub const EXPORT_HEADER: &str = "tpp-export v1";

/// The shipped manifest and export bundle.
pub const SHIPPED_MANIFEST: &str = include_str!("../catalog/manifest.txt");
pub const SHIPPED_EXPORTS: &str = include_str!("../catalog/exports.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("{label}: no export entry for a `gens` recipe")]
    MissingExport { label: String },
    #[error("{label}: fingerprint mismatch in {field}: expected {expected}, got {got}")]
    FingerprintMismatch {
        label: String,
        field: &'static str,
        expected: String,
        got: String,
    },
    #[error("{label}: {source}")]
    Group { label: String, source: GroupError },
    #[error("{label}: {source}")]
    Structure {
        label: String,
        source: StructureError,
    },
    #[error("{0}")]
    Io(String),
}

fn parse_err(line: usize, reason: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        line,
        reason: reason.into(),
    }
}

/// Invariants used to recognise a group without an isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub centre_order: usize,
    pub commutator_order: usize,
    /// `None` for non-nilpotent groups.
    pub class: Option<usize>,
    pub frattini_order: usize,
    pub subgroups: usize,
    /// `(element order, count)`, ascending.
    pub orders: Vec<(usize, usize)>,
}

impl Fingerprint {
    pub fn of(g: &GroupTable, cache: &StructureCache) -> Self {
        Fingerprint {
            order: g.order(),
            centre_order: cache.center.len(),
            commutator_order: cache.commutator_subgroup.len(),
            class: cache.nilpotency_class.class(),
            frattini_order: cache.frattini.len(),
            subgroups: cache.lattice.len(),
            orders: g.order_histogram(),
        }
    }

    /// First differing field as `(field, expected, got)`.
    pub fn first_difference(&self, got: &Fingerprint) -> Option<(&'static str, String, String)> {
        let class = |c: Option<usize>| c.map_or("-".to_string(), |c| c.to_string());
        let fields = [
            ("order", self.order.to_string(), got.order.to_string()),
            (
                "z",
                self.centre_order.to_string(),
                got.centre_order.to_string(),
            ),
            (
                "dz",
                self.commutator_order.to_string(),
                got.commutator_order.to_string(),
            ),
            ("class", class(self.class), class(got.class)),
            (
                "phi",
                self.frattini_order.to_string(),
                got.frattini_order.to_string(),
            ),
            (
                "subgroups",
                self.subgroups.to_string(),
                got.subgroups.to_string(),
            ),
            (
                "orders",
                histogram_text(&self.orders),
                histogram_text(&got.orders),
            ),
        ];
        fields.into_iter().find(|(_, a, b)| a != b)
    }

    fn parse(line: usize, text: &str) -> Result<Self, CatalogError> {
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        for tok in text.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("bad fingerprint token `{tok}`")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| parse_err(line, format!("fingerprint lacks `{k}`")))
        };
        let num = |k: &str| -> Result<usize, CatalogError> {
            let v = get(k)?;
            v.parse()
                .map_err(|_| parse_err(line, format!("bad fingerprint {k} `{v}`")))
        };
        let class = match get("class")? {
            "-" => None,
            _ => Some(num("class")?),
        };
        let orders = get("orders")?
            .split(',')
            .map(|pair| {
                let (o, c) = pair.split_once(':')?;
                Some((o.parse().ok()?, c.parse().ok()?))
            })
            .collect::<Option<Vec<(usize, usize)>>>()
            .ok_or_else(|| parse_err(line, "bad order histogram"))?;
        Ok(Fingerprint {
            order: num("order")?,
            centre_order: num("z")?,
            commutator_order: num("dz")?,
            class,
            frattini_order: num("phi")?,
            subgroups: num("subgroups")?,
            orders,
        })
    }
}

fn histogram_text(h: &[(usize, usize)]) -> String {
    h.iter()
        .map(|(o, c)| format!("{o}:{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order={} z={} dz={} class={} phi={} subgroups={} orders={}",
            self.order,
            self.centre_order,
            self.commutator_order,
            self.class.map_or("-".to_string(), |c| c.to_string()),
            self.frattini_order,
            self.subgroups,
            histogram_text(&self.orders)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PaperTable {
    One,
    Two,
    Three,
    /// Catalogued for the property suites, not a table row.
    Extra,
}

impl PaperTable {
    pub fn number(self) -> Option<u8> {
        match self {
            PaperTable::One => Some(1),
            PaperTable::Two => Some(2),
            PaperTable::Three => Some(3),
            PaperTable::Extra => None,
        }
    }
}

/// Columns of a table row, as printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declared {
    pub centre_order: usize,
    /// `|G:Z(G)|`, the square of the printed root.
    pub centre_index: usize,
    /// The root as printed, e.g. `2√2`.
    pub sqrt_text: String,
    pub cd: Vec<usize>,
    pub rho0: Ratio<u64>,
}

/// How to obtain the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Recipe(GroupRecipe),
    Table(GroupTable),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    /// The `(order, id)` pair of the label.
    pub id: (usize, usize),
    pub table: PaperTable,
    pub declared_structure: String,
    pub recipe_text: String,
    pub source: Source,
    pub declared: Option<Declared>,
    pub fingerprint: Fingerprint,
}

impl CatalogEntry {
    pub fn declared_order(&self) -> usize {
        self.id.0
    }

    /// Built from a structural recipe rather than exported data.
    pub fn is_constructive(&self) -> bool {
        self.recipe_text != "gens"
    }
}

/// A catalog group with its computed structure.
#[derive(Debug, Clone)]
pub struct BuiltGroup {
    pub entry: CatalogEntry,
    pub group: GroupTable,
    pub structure: StructureCache,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

/// `[a, b]` with any spacing.
pub fn parse_label(text: &str) -> Option<(usize, usize)> {
    let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Canonical spelling `[a, b]`.
pub fn normalize_label(text: &str) -> Option<String> {
    parse_label(text).map(|(a, b)| format!("[{a}, {b}]"))
}

/// Splits an export bundle into labelled raw blocks.
fn export_blocks(text: &str) -> Result<Vec<(String, usize, String)>, CatalogError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        None => return Ok(Vec::new()),
        Some((_, l)) if l.trim_end() == EXPORT_HEADER => {}
        Some((_, l)) if l.trim().is_empty() && text.trim().is_empty() => return Ok(Vec::new()),
        Some((_, l)) => {
            return Err(parse_err(
                1,
                format!("expected `{EXPORT_HEADER}`, found `{l}`"),
            ))
        }
    }
    let mut blocks: Vec<(String, usize, String)> = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in lines {
        let line = line.trim_end();
        if let Some(rest) = line.strip_prefix("label ") {
            let label = normalize_label(rest)
                .ok_or_else(|| parse_err(i + 1, format!("bad label `{rest}`")))?;
            if !seen.insert(label.clone()) {
                return Err(CatalogError::DuplicateLabel(label));
            }
            blocks.push((label, i + 1, String::new()));
        } else if let Some((_, _, body)) = blocks.last_mut() {
            if !line.is_empty() {
                body.push_str(line);
                body.push('\n');
            }
        } else if !line.is_empty() {
            return Err(parse_err(i + 1, "content before the first label"));
        }
    }
    Ok(blocks)
}

/// Validated groups of an export bundle, in file order.
pub fn ingest_export(text: &str) -> Result<Vec<(String, GroupTable)>, CatalogError> {
    export_blocks(text)?
        .into_iter()
        .map(|(label, _, body)| {
            parse_group(&body)
                .map(|g| (label.clone(), g))
                .map_err(|source| CatalogError::Group { label, source })
        })
        .collect()
}

struct RecipeParser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> RecipeParser<'a> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<(), String> {
        self.skip_ws();
        if self.s[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(format!("expected `{c}` at offset {}", self.pos))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        rest[..len].to_string()
    }

    fn number(&mut self) -> Result<usize, String> {
        let w = self.word();
        w.parse()
            .map_err(|_| format!("expected a number, found `{w}`"))
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s[self.pos..].chars().next()
    }

    fn recipe(&mut self) -> Result<GroupRecipe, String> {
        let name = self.word();
        if name == "table" {
            self.eat('(')?;
            let rest = &self.s[self.pos..];
            let end = rest.find(')').ok_or("unterminated table path")?;
            let path = rest[..end].trim().to_string();
            self.pos += end + 1;
            return Ok(GroupRecipe::FromTableFile(path.into()));
        }
        self.eat('(')?;
        let r = match name.as_str() {
            "cyclic" => GroupRecipe::Cyclic(self.number()?),
            "dihedral" => GroupRecipe::Dihedral(self.number()?),
            "quaternion" => GroupRecipe::Quaternion(self.number()?),
            "elementary" => {
                let p = self.number()?;
                self.eat(',')?;
                let rank = self.number()? as u32;
                GroupRecipe::ElementaryAbelian { p, rank }
            }
            "direct" => {
                let mut factors = vec![self.recipe()?];
                while self.peek() == Some(',') {
                    self.eat(',')?;
                    factors.push(self.recipe()?);
                }
                GroupRecipe::DirectProduct(factors)
            }
            "central" => {
                let left = self.recipe()?;
                self.eat('@')?;
                let left_central = self.number()?;
                self.eat(',')?;
                let right = self.recipe()?;
                self.eat('@')?;
                let right_central = self.number()?;
                GroupRecipe::CentralProduct {
                    left: Box::new(left),
                    left_central,
                    right: Box::new(right),
                    right_central,
                }
            }
            other => return Err(format!("unknown recipe `{other}`")),
        };
        self.eat(')')?;
        Ok(r)
    }
}

/// Parses a recipe expression (anything but `gens`).
pub fn parse_recipe(text: &str) -> Result<GroupRecipe, String> {
    let mut p = RecipeParser { s: text, pos: 0 };
    let r = p.recipe()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(format!("trailing text `{}`", &text[p.pos..]));
    }
    Ok(r)
}

/// `k`, `√r` or `k√r` to `k²r`.
fn parse_sqrt(text: &str) -> Option<usize> {
    let (k, r) = match text.split_once('√') {
        None => (text, "1"),
        Some(("", r)) => ("1", r),
        Some((k, r)) => (k, r),
    };
    let k: usize = k.trim().parse().ok()?;
    let r: usize = r.trim().parse().ok()?;
    Some(k * k * r)
}

fn parse_rational(text: &str) -> Option<Ratio<u64>> {
    match text.split_once('/') {
        None => text.trim().parse().ok().map(Ratio::from_integer),
        Some((a, b)) => {
            let b: u64 = b.trim().parse().ok()?;
            (b != 0).then_some(())?;
            Some(Ratio::new(a.trim().parse().ok()?, b))
        }
    }
}

impl Catalog {
    /// The shipped catalog.
    pub fn shipped() -> Result<Self, CatalogError> {
        Self::parse(SHIPPED_MANIFEST, SHIPPED_EXPORTS, None)
    }

    /// Reads `manifest.txt` and `exports.txt` from a directory; relative
    /// `table(...)` paths resolve against it.
    pub fn from_dir(dir: &Path) -> Result<Self, CatalogError> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name))
                .map_err(|e| CatalogError::Io(format!("{}: {e}", dir.join(name).display())))
        };
        Self::parse(&read("manifest.txt")?, &read("exports.txt")?, Some(dir))
    }

    pub fn parse(manifest: &str, exports: &str, base: Option<&Path>) -> Result<Self, CatalogError> {
        let mut export_map: BTreeMap<String, (usize, String)> = export_blocks(exports)?
            .into_iter()
            .map(|(label, line, body)| (label, (line, body)))
            .collect();
        let mut lines = manifest.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim_end() == MANIFEST_HEADER => {}
            _ => return Err(parse_err(1, format!("expected `{MANIFEST_HEADER}`"))),
        }
        let mut entries = Vec::new();
        let mut seen = HashSet::new();
        for (i, line) in lines {
            let no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('|').map(str::trim).collect();
            if cols.len() != 9 {
                return Err(parse_err(
                    no,
                    format!("expected 9 columns, found {}", cols.len()),
                ));
            }
            let label = normalize_label(cols[0])
                .ok_or_else(|| parse_err(no, format!("bad label `{}`", cols[0])))?;
            if !seen.insert(label.clone()) {
                return Err(CatalogError::DuplicateLabel(label));
            }
            let id = parse_label(&label).expect("normalized");
            let table = match cols[1] {
                "1" => PaperTable::One,
                "2" => PaperTable::Two,
                "3" => PaperTable::Three,
                "x" => PaperTable::Extra,
                t => return Err(parse_err(no, format!("bad table `{t}`"))),
            };
            let recipe_text = cols[3].to_string();
            let source = if recipe_text == "gens" {
                let (_, body) =
                    export_map
                        .remove(&label)
                        .ok_or_else(|| CatalogError::MissingExport {
                            label: label.clone(),
                        })?;
                gens_source(&label, &body)?
            } else {
                let mut recipe = parse_recipe(&recipe_text).map_err(|e| parse_err(no, e))?;
                if let (GroupRecipe::FromTableFile(p), Some(base)) = (&mut recipe, base) {
                    if p.is_relative() {
                        *p = base.join(&*p);
                    }
                }
                Source::Recipe(recipe)
            };
            let declared = if table == PaperTable::Extra {
                None
            } else {
                let num = |k: usize| -> Result<usize, CatalogError> {
                    cols[k]
                        .parse()
                        .map_err(|_| parse_err(no, format!("bad number `{}`", cols[k])))
                };
                Some(Declared {
                    centre_order: num(4)?,
                    centre_index: parse_sqrt(cols[5])
                        .ok_or_else(|| parse_err(no, format!("bad root `{}`", cols[5])))?,
                    sqrt_text: cols[5].to_string(),
                    cd: cols[6]
                        .split(',')
                        .map(|x| x.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| parse_err(no, format!("bad cd `{}`", cols[6])))?,
                    rho0: parse_rational(cols[7])
                        .ok_or_else(|| parse_err(no, format!("bad rho0 `{}`", cols[7])))?,
                })
            };
            let fingerprint = Fingerprint::parse(no, cols[8])?;
            if fingerprint.order != id.0 {
                return Err(parse_err(no, "fingerprint order differs from the label"));
            }
            entries.push(CatalogEntry {
                label,
                id,
                table,
                declared_structure: cols[2].to_string(),
                recipe_text,
                source,
                declared,
                fingerprint,
            });
        }
        Ok(Catalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        let label = normalize_label(label)?;
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn table_rows(&self, table: PaperTable) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.table == table)
    }

    /// Builds the group and checks it against its fingerprint; a mismatch
    /// is an error.
    pub fn build(&self, label: &str) -> Result<BuiltGroup, CatalogError> {
        let entry = self
            .get(label)
            .ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))?;
        build_entry(entry)
    }
}

fn gens_source(label: &str, body: &str) -> Result<Source, CatalogError> {
    let wrap = |source| CatalogError::Group {
        label: label.to_string(),
        source,
    };
    if body.starts_with(crate::group::GENS_HEADER) {
        let perms = crate::group::parse_perm_gens(body).map_err(wrap)?;
        Ok(Source::Recipe(GroupRecipe::FromGenerators(perms)))
    } else {
        Ok(Source::Table(parse_group(body).map_err(wrap)?))
    }
}

pub fn build_entry(entry: &CatalogEntry) -> Result<BuiltGroup, CatalogError> {
    let label = entry.label.clone();
    let group = match &entry.source {
        Source::Recipe(GroupRecipe::FromGenerators(perms)) => perms.closure(DEFAULT_CLOSURE_CAP),
        Source::Recipe(r) => crate::group::construct_named(r),
        Source::Table(t) => Ok(t.clone()),
    }
    .map_err(|source| CatalogError::Group {
        label: label.clone(),
        source,
    })?;
    let structure = StructureCache::compute(&group).map_err(|source| CatalogError::Structure {
        label: label.clone(),
        source,
    })?;
    let got = Fingerprint::of(&group, &structure);
    if let Some((field, expected, got)) = entry.fingerprint.first_difference(&got) {
        return Err(CatalogError::FingerprintMismatch {
            label,
            field,
            expected,
            got,
        });
    }
    Ok(BuiltGroup {
        entry: entry.clone(),
        group,
        structure,
    })
}

/// Shorthand for building from the shipped catalog.
pub fn catalog_build(label: &str) -> Result<BuiltGroup, CatalogError> {
    Catalog::shipped()?.build(label)
}
