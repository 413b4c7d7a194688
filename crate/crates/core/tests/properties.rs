use proptest::prelude::*;
use proptest::sample::select;

use tpp_core::group::{
    central_product, construct_named, direct_product, parse_group, quotient_group, serialize_group,
    GroupRecipe, GroupTable,
};
use tpp_core::set::ElementSet;
use tpp_core::structure::{
    all_subgroups, center, commutator_subgroup, is_closed, is_normal, nilpotency_class,
    StructureCache, DEFAULT_LATTICE_CAP,
};
use tpp_core::tpp::{
    check_definition, check_sets, check_subgroups, quotient_set, search_beta0, SearchOptions,
    TppTriple,
};

use GroupRecipe::*;

fn small_recipes() -> Vec<GroupRecipe> {
    let mut v: Vec<GroupRecipe> = (1..=16).map(Cyclic).collect();
    v.extend([6, 8, 10, 12, 14, 16].map(Dihedral));
    v.extend([8, 12, 16].map(Quaternion));
    v.extend((2..=4).map(|rank| ElementaryAbelian { p: 2, rank }));
    v.push(ElementaryAbelian { p: 3, rank: 2 });
    v.push(DirectProduct(vec![Cyclic(2), Cyclic(4)]));
    v.push(DirectProduct(vec![Cyclic(4), Cyclic(4)]));
    v.push(DirectProduct(vec![Cyclic(2), Dihedral(8)]));
    v.push(DirectProduct(vec![Cyclic(2), Quaternion(8)]));
    v.push(DirectProduct(vec![Cyclic(2), Dihedral(6)]));
    v.push(CentralProduct {
        left: Box::new(Dihedral(8)),
        left_central: 2,
        right: Box::new(Cyclic(4)),
        right_central: 2,
    });
    v
}

fn build(r: &GroupRecipe) -> GroupTable {
    construct_named(r).unwrap()
}

fn set_of(g: &GroupTable, members: &[usize]) -> ElementSet {
    let mut m = members.to_vec();
    if m.is_empty() {
        m.push(0);
    }
    ElementSet::from_indices(g.order(), m)
}

/// A group of order <= 16 with three non-empty random subsets.
fn subset_triple() -> impl Strategy<Value = (GroupRecipe, [Vec<bool>; 3])> {
    select(small_recipes()).prop_flat_map(|r| {
        let n = build(&r).order();
        let mask = proptest::collection::vec(proptest::bool::weighted(0.3), n);
        (Just(r), [mask.clone(), mask.clone(), mask])
    })
}

fn from_mask(g: &GroupTable, mask: &[bool], shift: usize) -> ElementSet {
    let members: Vec<usize> = (0..g.order()).filter(|&i| mask[i]).collect();
    if members.is_empty() {
        ElementSet::from_indices(g.order(), [shift % g.order()])
    } else {
        set_of(g, &members)
    }
}

fn random_triple(g: &GroupTable, masks: &[Vec<bool>; 3]) -> TppTriple {
    TppTriple::new(
        from_mask(g, &masks[0], 0),
        from_mask(g, &masks[1], 1),
        from_mask(g, &masks[2], 2),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn definition_and_set_form_agree((r, masks) in subset_triple()) {
        let g = build(&r);
        let t = random_triple(&g, &masks);
        prop_assert_eq!(check_definition(&g, &t), check_sets(&g, &t), "{:?} {:?}", r, t);
    }

    #[test]
    fn verdict_is_permutation_invariant((r, masks) in subset_triple()) {
        let g = build(&r);
        let t = random_triple(&g, &masks);
        let verdict = check_sets(&g, &t);
        for p in t.permutations() {
            prop_assert_eq!(check_definition(&g, &p), verdict);
        }
    }

    #[test]
    fn verdict_is_right_translation_invariant(
        (r, masks) in subset_triple(),
        which in 0usize..3,
        shift in any::<prop::sample::Index>(),
    ) {
        let g = build(&r);
        let t = random_triple(&g, &masks);
        let x = shift.index(g.order());
        let mut members = [t.s.clone(), t.t.clone(), t.u.clone()];
        members[which] = members[which].translate_right(&g, x);
        let [s, tt, u] = members;
        let moved = TppTriple::new(s, tt, u).unwrap();
        prop_assert_eq!(check_sets(&g, &moved), check_sets(&g, &t));
        prop_assert_eq!(check_definition(&g, &moved), check_definition(&g, &t));
    }

    #[test]
    fn quotient_set_contains_identity_and_is_inverse_closed((r, masks) in subset_triple()) {
        let g = build(&r);
        let x = from_mask(&g, &masks[0], 0);
        let q = quotient_set(&g, &x).unwrap();
        prop_assert!(q.contains(0));
        for y in q.iter() {
            prop_assert!(q.contains(g.inv(y)));
        }
    }

    #[test]
    fn subgroup_triples_agree_with_all_three_checks(
        r in select(small_recipes()),
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 3),
    ) {
        let g = build(&r);
        let lattice = all_subgroups(&g, DEFAULT_LATTICE_CAP).unwrap();
        let pick = |i: usize| lattice[picks[i].index(lattice.len())].clone();
        let t = TppTriple::new(pick(0), pick(1), pick(2)).unwrap();
        let by_subgroups = check_subgroups(&g, &t).unwrap();
        prop_assert_eq!(by_subgroups, check_sets(&g, &t));
        prop_assert_eq!(by_subgroups, check_definition(&g, &t));
    }

    #[test]
    fn serialization_round_trips(r in select(small_recipes())) {
        let g = build(&r);
        let text = serialize_group(&g);
        let back = parse_group(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_group(&back), text);
    }

    #[test]
    fn direct_product_orders_multiply(a in select(small_recipes()), b in select(small_recipes())) {
        let (g, h) = (build(&a), build(&b));
        prop_assume!(g.order() * h.order() <= 64);
        prop_assert_eq!(direct_product(&g, &h).unwrap().order(), g.order() * h.order());
    }

    #[test]
    fn quotient_projection_is_a_homomorphism_with_kernel_n(
        r in select(small_recipes()),
        pick in any::<prop::sample::Index>(),
    ) {
        let g = build(&r);
        let normal: Vec<ElementSet> = all_subgroups(&g, DEFAULT_LATTICE_CAP)
            .unwrap()
            .into_iter()
            .filter(|h| is_normal(&g, h))
            .collect();
        let n = &normal[pick.index(normal.len())];
        let q = quotient_group(&g, n).unwrap();
        prop_assert_eq!(q.group.order() * n.len(), g.order());
        for x in g.elements() {
            for y in g.elements() {
                prop_assert_eq!(
                    q.projection[g.mul(x, y)],
                    q.group.mul(q.projection[x], q.projection[y])
                );
            }
        }
        let kernel: Vec<usize> = g.elements().filter(|&x| q.projection[x] == 0).collect();
        prop_assert_eq!(kernel, n.to_vec());
    }

    #[test]
    fn class_two_groups_have_central_commutators(r in select(small_recipes())) {
        let g = build(&r);
        if nilpotency_class(&g).class() == Some(2) {
            let (d, z) = (commutator_subgroup(&g), center(&g));
            prop_assert!(d.len() > 1);
            prop_assert!(d.is_subset(&z));
            prop_assert!(z.len() < g.order());
        }
    }

    #[test]
    fn beta0_is_at_least_the_order(r in select(small_recipes())) {
        let g = build(&r);
        let cache = StructureCache::compute(&g).unwrap();
        let rep = search_beta0(&g, &cache.lattice, &SearchOptions::default());
        prop_assert!(rep.beta0 >= g.order() as u64);
        prop_assert_eq!(g.order() as u64 % *rep.rho0.denom(), 0);
        if g.is_abelian() {
            prop_assert_eq!(rep.beta0, g.order() as u64);
        }
    }
}

#[test]
fn central_products_over_order_p_centres() {
    let d8 = build(&Dihedral(8));
    let q8 = build(&Quaternion(8));
    let c4 = build(&Cyclic(4));
    for (g, zg, h, zh) in [
        (&d8, 2, &d8, 2),
        (&d8, 2, &q8, 2),
        (&q8, 2, &q8, 2),
        (&d8, 2, &c4, 2),
    ] {
        let p = g.element_order(zg);
        assert_eq!(
            central_product(g, zg, h, zh).unwrap().order(),
            g.order() * h.order() / p
        );
    }
}

#[test]
fn lattice_matches_subset_brute_force() {
    for r in small_recipes() {
        let g = build(&r);
        let n = g.order();
        let lattice = all_subgroups(&g, DEFAULT_LATTICE_CAP).unwrap();
        // subgroups contain the identity, so only masks over the other elements
        let mut brute = 0;
        for mask in 0u32..1 << (n - 1) {
            let x =
                ElementSet::from_indices(n, (0..n).filter(|&i| i == 0 || mask >> (i - 1) & 1 == 1));
            if is_closed(&g, &x) {
                brute += 1;
                assert!(
                    lattice.iter().any(|h| h.bits() == x.bits()),
                    "{r:?} missing {x:?}"
                );
            }
        }
        assert_eq!(lattice.len(), brute, "{r:?}");
    }
}
