use num_rational::Ratio;

use tpp_core::group::{construct_named, GroupRecipe, GroupTable};
use tpp_core::set::ElementSet;
use tpp_core::structure::{generated_subgroup, StructureCache};
use tpp_core::tpp::{
    check_definition, check_subgroups, classify_triple, quotient_triple, search_beta0,
    search_beta_subsets, SearchOptions, SubsetSearchOptions, TppTriple,
};

use GroupRecipe::*;

fn build(r: &GroupRecipe) -> GroupTable {
    construct_named(r).unwrap()
}

fn extraspecial_32() -> GroupTable {
    build(&CentralProduct {
        left: Box::new(Dihedral(8)),
        left_central: 2,
        right: Box::new(Dihedral(8)),
        right_central: 2,
    })
}

/// Largest basic triple passing the literal definition, by exhaustion.
fn beta_by_definition(g: &GroupTable) -> u64 {
    let n = g.order();
    let basic: Vec<ElementSet> = (0..1usize << (n - 1))
        .map(|m| ElementSet::from_indices(n, (0..n).filter(|&i| i == 0 || m >> (i - 1) & 1 == 1)))
        .collect();
    let mut best = 0;
    for a in &basic {
        for b in basic.iter().filter(|b| b.len() <= a.len()) {
            for c in basic.iter().filter(|c| c.len() <= b.len()) {
                let size = (a.len() * b.len() * c.len()) as u64;
                if size <= best {
                    continue;
                }
                let t = TppTriple::new(a.clone(), b.clone(), c.clone()).unwrap();
                if check_definition(g, &t) {
                    best = size;
                }
            }
        }
    }
    best
}

#[test]
fn subset_capacities_of_small_nonabelian_groups() {
    // S3, D8 and Q8 each admit a basic triple of size 8 and no larger
    for r in [Dihedral(6), Dihedral(8), Quaternion(8)] {
        let g = build(&r);
        let rep = search_beta_subsets(&g, &SubsetSearchOptions::default()).unwrap();
        assert_eq!(rep.beta, 8, "{r:?}");
        assert_eq!(rep.beta, beta_by_definition(&g), "{r:?}");
        assert_eq!(rep.rho, Ratio::new(8, g.order() as u64));
    }
}

#[test]
fn trivial_group_capacity() {
    let g = build(&Cyclic(1));
    let rep = search_beta_subsets(&g, &SubsetSearchOptions::default()).unwrap();
    assert_eq!(rep.beta, 1);
    let cache = StructureCache::compute(&g).unwrap();
    assert_eq!(
        search_beta0(&g, &cache.lattice, &SearchOptions::default()).beta0,
        1
    );
}

#[test]
fn subset_capacity_dominates_subgroup_capacity() {
    for r in [
        Cyclic(6),
        Dihedral(6),
        Dihedral(8),
        Quaternion(8),
        Dihedral(10),
    ] {
        let g = build(&r);
        let cache = StructureCache::compute(&g).unwrap();
        let beta0 = search_beta0(&g, &cache.lattice, &SearchOptions::default()).beta0;
        let beta = search_beta_subsets(&g, &SubsetSearchOptions::default())
            .unwrap()
            .beta;
        assert!(beta >= beta0, "{r:?}");
    }
}

#[test]
fn extraspecial_witness_is_proper_nontrivial_and_maximal() {
    let g = extraspecial_32();
    let cache = StructureCache::compute(&g).unwrap();
    let rep = search_beta0(&g, &cache.lattice, &SearchOptions::default());
    assert_eq!(rep.rho0, Ratio::from_integer(2));
    assert!(!rep.maximal_subgroup_triples.is_empty());
    for t in &rep.maximal_subgroup_triples {
        assert!(check_definition(&g, t));
        let flags = classify_triple(&g, t, &rep);
        assert!(flags.proper && !flags.trivial_size);
        assert_eq!(flags.maximal, Some(true));
    }
}

#[test]
fn dihedral_quotient_triple() {
    let g = build(&Dihedral(8));
    // r = 1, s = 4, r^2 = 2
    let s = generated_subgroup(&g, [1]);
    let t = generated_subgroup(&g, [4]);
    let u = ElementSet::trivial(&g);
    let triple = TppTriple::new(s, t, u).unwrap();
    assert!(check_subgroups(&g, &triple).unwrap());
    let n = generated_subgroup(&g, [2]);
    let (q, image) = quotient_triple(&g, &triple, &n).unwrap();
    assert_eq!(q.order(), 4);
    assert_eq!(image.parameters(), (2, 2, 1));
    assert!(check_subgroups(&q, &image).unwrap());
}
