//! Finite groups as validated multiplication tables.
//!
//! Every [`GroupTable`] has its identity at index 0. Downstream code (bitsets,
//! lattice enumeration, triple search) relies on that: bit 0 of any subgroup
//! is the identity, and a set is trivial iff it is exactly `{0}`.

mod construct;
mod format;
mod quotient;

pub use construct::{
    central_product, construct_named, direct_product, GroupRecipe, PermutationGroup,
    DEFAULT_CLOSURE_CAP,
};
pub use format::{
    parse_group, parse_perm_gens, serialize_group, serialize_perm_gens, GENS_HEADER, TABLE_HEADER,
};
pub use quotient::{quotient_group, Quotient};

use thiserror::Error;

/// Largest order for which associativity is checked with the full `n^3` loop.
pub const DEFAULT_ASSOCIATIVITY_CAP: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("empty table")]
    Empty,
    #[error("entry {value} at ({row}, {col}) is outside [0, {order})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not a Latin square: {axis} {index} repeats an entry")]
    NotLatinSquare { axis: Axis, index: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("order {order} exceeds the associativity cap {cap}; build the group from a verified construction")]
    TooLargeToVerify { order: usize, cap: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("central product identification: {0}")]
    CentralSubgroupMismatch(String),
    #[error("generator closure exceeds {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("subgroup is not normal: conjugating {element} by {conjugator} leaves it")]
    NotNormal { conjugator: usize, element: usize },
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("i/o: {0}")]
    Io(String),
}

/// Immutable multiplication table of a finite group, identity at index 0.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// Result of [`GroupTable::element_arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementArithmetic {
    pub product: usize,
    pub inverse_of_g: usize,
    pub order_of_g: usize,
}

impl GroupTable {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g] as usize
    }

    /// `x^-1 g x`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let (mut acc, mut base, mut e) = (0, g, k);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn element_arithmetic(&self, g: usize, h: usize) -> ElementArithmetic {
        ElementArithmetic {
            product: self.mul(g, h),
            inverse_of_g: self.inv(g),
            order_of_g: self.element_order(g),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GroupError> {
        if labels.len() != self.order {
            return Err(GroupError::BadParams(format!(
                "{} labels for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn row(&self, g: usize) -> &[u32] {
        &self.table[g * self.order..(g + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|g| self.row(g).iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (g + 1..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Element-order histogram as sorted `(order, count)` pairs.
    pub fn order_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = std::collections::BTreeMap::new();
        for g in self.elements() {
            *hist.entry(self.element_order(g)).or_insert(0usize) += 1;
        }
        hist.into_iter().collect()
    }

    /// Builds a table from a construction already known to be a group.
    /// Structural axioms are still checked; associativity only up to the cap.
    pub(crate) fn from_construction(order: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        let rows: Vec<&[u32]> = table.chunks(order).collect();
        check_latin(order, |r, c| rows[r][c] as usize)?;
        if (0..order).any(|j| rows[0][j] as usize != j || rows[j][0] as usize != j) {
            return Err(GroupError::NoIdentity);
        }
        let group = GroupTable::assemble(order, table, None)?;
        if order <= DEFAULT_ASSOCIATIVITY_CAP {
            group.check_associative()?;
        }
        Ok(group)
    }

    fn assemble(
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let mut inverses = vec![0u32; order];
        for g in 0..order {
            let row = &table[g * order..(g + 1) * order];
            let h = row
                .iter()
                .position(|&x| x == 0)
                .ok_or(GroupError::NoInverse(g))?;
            if table[h * order + g] != 0 {
                return Err(GroupError::NoInverse(g));
            }
            inverses[g] = h as u32;
        }
        Ok(GroupTable {
            order,
            table,
            inverses,
            labels,
        })
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                let row_ij = self.row(ij);
                for k in 0..n {
                    if row_ij[k] as usize != self.mul(i, self.mul(j, k)) {
                        return Err(GroupError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_latin(n: usize, entry: impl Fn(usize, usize) -> usize) -> Result<(), GroupError> {
    let mut seen = vec![usize::MAX; n];
    for r in 0..n {
        for c in 0..n {
            let v = entry(r, c);
            if seen[v] == r {
                return Err(GroupError::NotLatinSquare {
                    axis: Axis::Row,
                    index: r,
                });
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..n {
        for r in 0..n {
            let v = entry(r, c);
            if seen[v] == c {
                return Err(GroupError::NotLatinSquare {
                    axis: Axis::Column,
                    index: c,
                });
            }
            seen[v] = c;
        }
    }
    Ok(())
}

/// Validates a raw square table with the default associativity cap.
pub fn validate_table(raw: &[Vec<usize>]) -> Result<GroupTable, GroupError> {
    validate_table_with_cap(raw, DEFAULT_ASSOCIATIVITY_CAP)
}

/// Validates a raw table and relabels it so the identity sits at index 0.
///
/// Witness indices in errors refer to the input's own indexing.
pub fn validate_table_with_cap(raw: &[Vec<usize>], cap: usize) -> Result<GroupTable, GroupError> {
    let n = raw.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    if n > cap {
        return Err(GroupError::TooLargeToVerify { order: n, cap });
    }
    for (r, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::NotSquare {
                row: r,
                len: row.len(),
                order: n,
            });
        }
        if let Some((c, &value)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(GroupError::EntryOutOfRange {
                row: r,
                col: c,
                value,
                order: n,
            });
        }
    }
    check_latin(n, |r, c| raw[r][c])?;
    let e = (0..n)
        .find(|&e| (0..n).all(|j| raw[e][j] == j && raw[j][e] == j))
        .ok_or(GroupError::NoIdentity)?;
    for g in 0..n {
        let h = raw[g]
            .iter()
            .position(|&x| x == e)
            .ok_or(GroupError::NoInverse(g))?;
        if raw[h][g] != e {
            return Err(GroupError::NoInverse(g));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = raw[i][j];
            for k in 0..n {
                if raw[ij][k] != raw[i][raw[j][k]] {
                    return Err(GroupError::NotAssociative(i, j, k));
                }
            }
        }
    }
    // swap e <-> 0
    let relabel = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[relabel(i) * n + relabel(j)] = relabel(raw[i][j]) as u32;
        }
    }
    GroupTable::assemble(n, table, None)
}
