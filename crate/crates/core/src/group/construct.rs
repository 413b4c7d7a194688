//! Named constructions: cyclic, dihedral, quaternion, elementary abelian,
//! direct and central products, and permutation-generator closure.

use std::collections::HashMap;
use std::path::PathBuf;

use super::{quotient_group, GroupError, GroupTable};
use crate::set::ElementSet;

/// Default limit on the size of a permutation-generator closure.
pub const DEFAULT_CLOSURE_CAP: usize = 2048;

/// Permutations on points `0..degree`, composed left to right:
/// `(g*h)(x) = h(g(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        for (k, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(GroupError::BadParams(format!(
                    "generator {k} has {} images, degree is {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::BadParams(format!(
                        "generator {k} is not a permutation of 0..{degree}"
                    )));
                }
            }
        }
        Ok(PermutationGroup { degree, generators })
    }

    /// Enumerates the generated group breadth-first from the identity and
    /// returns its table. Element indices follow the breadth-first order.
    pub fn closure(&self, cap: usize) -> Result<GroupTable, GroupError> {
        let d = self.degree;
        let gens: Vec<Vec<u32>> = self
            .generators
            .iter()
            .map(|g| g.iter().map(|&x| x as u32).collect())
            .collect();
        let mut elements: Vec<Vec<u32>> = vec![(0..d as u32).collect()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        // parent[j] = (i, k) with element j = element i * generator k
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        // right[i][k] = index of element i * generator k
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                let prod: Vec<u32> = elements[head].iter().map(|&x| g[x as usize]).collect();
                let next = match index.get(&prod) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::ClosureTooLarge { cap });
                        }
                        let j = elements.len();
                        index.insert(prod.clone(), j);
                        elements.push(prod);
                        parent.push((head, k));
                        j
                    }
                };
                row.push(next);
            }
            right.push(row);
            head += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            table[i * n] = i as u32;
            // indices are in breadth-first order, so parents come first
            for j in 1..n {
                let (p, k) = parent[j];
                table[i * n + j] = right[table[i * n + p] as usize][k] as u32;
            }
        }
        GroupTable::from_construction(n, table)
    }
}

/// A reproducible description of how to build a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupRecipe {
    /// `C_n`; element `k` is `x^k`.
    Cyclic(usize),
    /// Dihedral group of the given (even) order; element `i + n*j` is `r^i s^j`.
    Dihedral(usize),
    /// Dicyclic group of the given order `4m` (`Q_8` for order 8);
    /// element `i + 2m*j` is `a^i b^j`.
    Quaternion(usize),
    /// `(C_p)^rank`; element indices are base-`p` digit vectors.
    ElementaryAbelian {
        p: usize,
        rank: u32,
    },
    /// Left-nested direct product; `(g, h)` has index `g*|H| + h`.
    DirectProduct(Vec<GroupRecipe>),
    /// Central product amalgamating `<left_central>` with `<right_central>`,
    /// both central of the same prime order, via `left_central -> right_central`.
    CentralProduct {
        left: Box<GroupRecipe>,
        left_central: usize,
        right: Box<GroupRecipe>,
        right_central: usize,
    },
    FromGenerators(PermutationGroup),
    FromTableFile(PathBuf),
}

pub fn construct_named(recipe: &GroupRecipe) -> Result<GroupTable, GroupError> {
    match recipe {
        GroupRecipe::Cyclic(n) => cyclic(*n),
        GroupRecipe::Dihedral(order) => dihedral(*order),
        GroupRecipe::Quaternion(order) => dicyclic(*order),
        GroupRecipe::ElementaryAbelian { p, rank } => elementary_abelian(*p, *rank),
        GroupRecipe::DirectProduct(factors) => {
            let mut iter = factors.iter();
            let first = iter
                .next()
                .ok_or_else(|| GroupError::BadParams("direct product of no factors".into()))?;
            let mut acc = construct_named(first)?;
            for f in iter {
                acc = direct_product(&acc, &construct_named(f)?)?;
            }
            Ok(acc)
        }
        GroupRecipe::CentralProduct {
            left,
            left_central,
            right,
            right_central,
        } => central_product(
            &construct_named(left)?,
            *left_central,
            &construct_named(right)?,
            *right_central,
        ),
        GroupRecipe::FromGenerators(perms) => perms.closure(DEFAULT_CLOSURE_CAP),
        GroupRecipe::FromTableFile(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
            super::parse_group(&text)
        }
    }
}

fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<GroupTable, GroupError> {
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = f(i, j) as u32;
        }
    }
    GroupTable::from_construction(n, table)
}

fn cyclic(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParams("cyclic group of order 0".into()));
    }
    from_fn(n, |i, j| (i + j) % n)
}

fn dihedral(order: usize) -> Result<GroupTable, GroupError> {
    if order < 4 || order % 2 != 0 {
        return Err(GroupError::BadParams(format!(
            "dihedral order must be even and at least 4, got {order}"
        )));
    }
    let n = order / 2;
    from_fn(order, |x, y| {
        let (i, a) = (x % n, x / n);
        let (k, b) = (y % n, y / n);
        let rot = if a == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((a + b) % 2)
    })
}

fn dicyclic(order: usize) -> Result<GroupTable, GroupError> {
    if order < 8 || order % 4 != 0 {
        return Err(GroupError::BadParams(format!(
            "quaternion (dicyclic) order must be a multiple of 4 and at least 8, got {order}"
        )));
    }
    let m2 = order / 2; // order of a
    let m = m2 / 2;
    from_fn(order, |x, y| {
        let (i, a) = (x % m2, x / m2);
        let (k, c) = (y % m2, y / m2);
        match (a, c) {
            (0, _) => (i + k) % m2 + m2 * c,
            // a^i b a^k = a^(i-k) b
            (_, 0) => (i + m2 - k) % m2 + m2,
            // a^i b a^k b = a^(i-k) b^2 = a^(i-k+m)
            _ => (i + m2 - k + m) % m2,
        }
    })
}

fn elementary_abelian(p: usize, rank: u32) -> Result<GroupTable, GroupError> {
    if p < 2 || !is_prime(p) {
        return Err(GroupError::BadParams(format!("{p} is not prime")));
    }
    let n = p
        .checked_pow(rank)
        .ok_or_else(|| GroupError::BadParams("order overflows".into()))?;
    from_fn(n, |mut x, mut y| {
        let (mut out, mut place) = (0, 1);
        for _ in 0..rank {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    })
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `G x H` with `(g, h)` at index `g*|H| + h`.
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<GroupTable, GroupError> {
    let m = h.order();
    from_fn(g.order() * m, |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    })
}

/// Central product of `g` and `h` identifying `<zg>` with `<zh>` via `zg -> zh`.
pub fn central_product(
    g: &GroupTable,
    zg: usize,
    h: &GroupTable,
    zh: usize,
) -> Result<GroupTable, GroupError> {
    let check = |grp: &GroupTable, z: usize, side: &str| -> Result<usize, GroupError> {
        if z >= grp.order() {
            return Err(GroupError::CentralSubgroupMismatch(format!(
                "{side} element {z} out of range"
            )));
        }
        let ord = grp.element_order(z);
        if !is_prime(ord) {
            return Err(GroupError::CentralSubgroupMismatch(format!(
                "{side} element {z} has order {ord}, not prime"
            )));
        }
        if grp.elements().any(|x| grp.mul(x, z) != grp.mul(z, x)) {
            return Err(GroupError::CentralSubgroupMismatch(format!(
                "{side} element {z} is not central"
            )));
        }
        Ok(ord)
    };
    let p = check(g, zg, "left")?;
    let q = check(h, zh, "right")?;
    if p != q {
        return Err(GroupError::CentralSubgroupMismatch(format!(
            "central subgroups of orders {p} and {q}"
        )));
    }
    let prod = direct_product(g, h)?;
    let m = h.order();
    let zh_inv = h.inv(zh);
    let members = (0..p as u64).map(|k| g.pow(zg, k) * m + h.pow(zh_inv, k));
    let n = ElementSet::from_indices_subgroup_unchecked(prod.order(), members);
    Ok(quotient_group(&prod, &n)?.group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{center, commutator_subgroup};

    #[test]
    fn cyclic_eight_is_abelian() {
        let g = construct_named(&GroupRecipe::Cyclic(8)).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
    }

    #[test]
    fn dihedral_rotation_inverse() {
        let g = construct_named(&GroupRecipe::Dihedral(8)).unwrap();
        // rotation r = index 1, order 4
        assert_eq!(g.element_order(1), 4);
        assert_eq!(g.inv(1), g.pow(1, 3));
        // brute force: the unique x with r*x = 1
        let brute = g.elements().find(|&x| g.mul(1, x) == 0).unwrap();
        assert_eq!(brute, 3);
        assert!(!g.is_abelian());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let g = construct_named(&GroupRecipe::Quaternion(8)).unwrap();
        let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert_eq!(center(&g).len(), 2);
    }

    #[test]
    fn direct_product_order() {
        let g = construct_named(&GroupRecipe::DirectProduct(vec![
            GroupRecipe::Cyclic(3),
            GroupRecipe::Dihedral(8),
        ]))
        .unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(center(&g).len(), 6);
    }

    #[test]
    fn central_product_of_two_d8() {
        let d8 = GroupRecipe::Dihedral(8);
        let g = construct_named(&GroupRecipe::CentralProduct {
            left: Box::new(d8.clone()),
            left_central: 2,
            right: Box::new(d8),
            right_central: 2,
        })
        .unwrap();
        assert_eq!(g.order(), 32);
        assert_eq!(center(&g).len(), 2);
        assert_eq!(commutator_subgroup(&g).len(), 2);
    }

    #[test]
    fn central_product_rejects_bad_identification() {
        let d8 = GroupRecipe::Dihedral(8);
        let err = construct_named(&GroupRecipe::CentralProduct {
            left: Box::new(d8.clone()),
            left_central: 1, // r has order 4
            right: Box::new(d8.clone()),
            right_central: 2,
        })
        .unwrap_err();
        assert!(matches!(err, GroupError::CentralSubgroupMismatch(_)));
        let err = construct_named(&GroupRecipe::CentralProduct {
            left: Box::new(GroupRecipe::Cyclic(3)),
            left_central: 1,
            right: Box::new(d8),
            right_central: 2,
        })
        .unwrap_err();
        assert!(matches!(err, GroupError::CentralSubgroupMismatch(_)));
    }

    #[test]
    fn bad_params() {
        for r in [
            GroupRecipe::Dihedral(6 - 1),
            GroupRecipe::Dihedral(2),
            GroupRecipe::Quaternion(6),
            GroupRecipe::Cyclic(0),
            GroupRecipe::ElementaryAbelian { p: 4, rank: 2 },
            GroupRecipe::DirectProduct(vec![]),
        ] {
            assert!(
                matches!(construct_named(&r), Err(GroupError::BadParams(_))),
                "{r:?}"
            );
        }
    }

    #[test]
    fn permutation_closure_of_d8() {
        // square symmetries on corners 0..4
        let perms = PermutationGroup::new(4, vec![vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).unwrap();
        let g = perms.closure(DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(center(&g).len(), 2);
        assert!(matches!(
            perms.closure(5),
            Err(GroupError::ClosureTooLarge { cap: 5 })
        ));
        assert!(PermutationGroup::new(3, vec![vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn symmetric_three_from_generators() {
        let perms = PermutationGroup::new(3, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let g = perms.closure(DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(center(&g).len(), 1);
    }

    #[test]
    fn elementary_abelian_order() {
        let g = construct_named(&GroupRecipe::ElementaryAbelian { p: 3, rank: 3 }).unwrap();
        assert_eq!(g.order(), 27);
        assert!(g.elements().skip(1).all(|x| g.element_order(x) == 3));
    }
}
