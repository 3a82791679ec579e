use proptest::prelude::*;

use ssetkit_core::construct::product;
use ssetkit_core::group::FiniteGroup;
use ssetkit_core::gset::GSet;
use ssetkit_core::gspace::GSimplicialSet;
use ssetkit_core::hom::level_maps;
use ssetkit_core::homology::homology;
use ssetkit_core::localization::{compare_pi0, ho_localize, relative_poset_catalog};
use ssetkit_core::presentation::{concat, inverse, reduce};
use ssetkit_core::sgroup::FiniteSimplicialGroup;
use ssetkit_core::slice::{borel, monodromy_m};
use ssetkit_core::{Levels, LevelMap, SimplicialSet};

fn small_set(k: usize) -> SimplicialSet {
    match k % 5 {
        0 => SimplicialSet::point(),
        1 => SimplicialSet::standard(1),
        2 => SimplicialSet::standard(2),
        3 => SimplicialSet::circle(),
        _ => SimplicialSet::discrete(2),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_of_simplices(a in 0usize..3, b in 0usize..3) {
        let p = product(&SimplicialSet::standard(a), &SimplicialSet::standard(b), a + b).unwrap();
        p.set.check_identities().unwrap();
        // nondegenerate top simplices of Δ^a × Δ^b are the (a, b)-shuffles
        prop_assert_eq!(p.set.count(a + b), binomial(a + b, a));
        prop_assert_eq!(p.set.count(0), (a + 1) * (b + 1));
    }

    #[test]
    fn product_with_a_point_keeps_homology(k in 0usize..5) {
        let x = small_set(k);
        let p = product(&x, &SimplicialSet::point(), x.dim() + 1).unwrap();
        prop_assert_eq!(homology(&p.set, 2).unwrap(), homology(&x, 2).unwrap());
    }

    #[test]
    fn level_maps_form_a_category(a in 0usize..5, b in 0usize..5, c in 0usize..5) {
        let top = 2;
        let lv = |k: usize| Levels::delta(k % 3, top);
        let (x, y, z) = (lv(a), lv(b), lv(c));
        let all = |s: &Levels, t: &Levels| level_maps(s, t, &|_, _, _| true, u64::MAX).unwrap();
        let xy = all(&x, &y);
        let yz = all(&y, &z);
        // maps Δ^p -> Δ^q are monotone vertex maps
        prop_assert_eq!(xy.len(), binomial(a % 3 + b % 3 + 1, a % 3 + 1));
        for f in &xy {
            prop_assert_eq!(f.compose(&LevelMap::identity(&y)), f.clone());
            for g in &yz {
                let fg = f.compose(g);
                fg.check_simplicial(&x, &z).unwrap();
            }
        }
    }

    #[test]
    fn generated_groups_obey_lagrange(p in perm_strategy(4), q in perm_strategy(4)) {
        let g = FiniteGroup::from_permutations(4, &[p, q]).unwrap();
        prop_assert_eq!(24 % g.order(), 0);
        for h in g.subgroups() {
            prop_assert_eq!(g.order() % h.len(), 0);
            let (cosets, _) = g.left_cosets(&h);
            prop_assert_eq!(cosets.len() * h.len(), g.order());
        }
    }

    #[test]
    fn free_reduction(w in prop::collection::vec(prop::sample::select(vec![1i32, -1, 2, -2, 3, -3]), 0..12)) {
        let r = reduce(&w);
        prop_assert_eq!(reduce(&r), r.clone());
        prop_assert!(reduce(&concat(&w, &inverse(&w))).is_empty());
        prop_assert!(r.windows(2).all(|p| p[0] != -p[1]));
    }

    #[test]
    fn regular_gset_maps_pick_a_point(k in 0usize..4, s in 0usize..8) {
        let g = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3), FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(3))][k].clone();
        let subs = g.subgroups();
        let h = &subs[s % subs.len()];
        let t = GSet::cosets(&g, h);
        t.validate().unwrap();
        prop_assert_eq!(GSet::regular(&g).equivariant_maps(&t).len(), t.len());
        // End(G/H) has |N(H)/H| elements
        let mut sorted = h.clone();
        sorted.sort_unstable();
        let normalizer = g.elements().filter(|&x| {
            let mut c = g.conjugate_subgroup(h, x);
            c.sort_unstable();
            c == sorted
        }).count();
        prop_assert_eq!(t.equivariant_maps(&t).len(), normalizer / h.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn monodromy_undoes_borel(k in 0usize..3, s in 0usize..8) {
        let g = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)][k].clone();
        let subs = g.subgroups();
        let t = GSet::cosets(&g, &subs[s % subs.len()]);
        let b = borel(&GSimplicialSet::from_gset(&t, 2), 2).unwrap();
        let m = monodromy_m(&b.slice, &FiniteSimplicialGroup::constant(&g, 2), None, u64::MAX).unwrap();
        prop_assert!(m.is_exact());
        prop_assert!(m.vertex_gset().isomorphism_to(&t).is_some());
    }

    #[test]
    fn stabilized_localizations_match_hammocks(i in 0usize..1000) {
        let cat = relative_poset_catalog(3);
        let rc = &cat[i % cat.len()];
        let loc = ho_localize(rc, 2);
        let n = rc.category.object_count();
        for x in 0..n {
            for y in 0..n {
                let c = compare_pi0(rc, &loc, x, y).unwrap();
                prop_assert!(!c.stabilized || c.bijective);
            }
        }
    }
}
