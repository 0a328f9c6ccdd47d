mod common;

use std::collections::BTreeSet;

use indpro::defsets::{bundled, parse_structure, DefCategory, Definability};
use indpro::fincat::FinCategory;
use indpro::indpro::{compose_ind, count_pro, hom_ind, identity_ind, IndObject, ProObject};
use indpro::points::{induced_point_map_ind, points_ind, points_pro};
use indpro::sample::{candidate_sets, ind_point_codes, pro_point_codes, random_ind, random_pro};
use indpro::setval::filtered_colimit;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn bundled_cats() -> Vec<DefCategory> {
    vec![
        DefCategory::new(bundled::s1()),
        DefCategory::new(bundled::s2()),
        DefCategory::new(bundled::s3()),
    ]
}

/// A structure on up to four elements with one random binary relation
/// and possibly a unary one.
fn random_structure_text(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(1..=4);
    let names: Vec<String> = (0..n).map(|k| format!("e{k}")).collect();
    let mut text = format!("universe: {}\nrelations:\n", names.join(" "));
    let pairs: Vec<String> = (0..n * n)
        .filter(|_| rng.gen_bool(0.3))
        .map(|c| format!("({},{})", names[c / n], names[c % n]))
        .collect();
    text.push_str(&format!("  R/2: {}\n", pairs.join(" ")));
    if rng.gen_bool(0.5) {
        let singles: Vec<&str> = names.iter().filter(|_| rng.gen_bool(0.5)).map(String::as_str).collect();
        text.push_str(&format!("  P/1: {}\n", singles.join(" ")));
    }
    text
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn automorphisms_match_permutation_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = random_structure_text(&mut rng);
        let m = parse_structure(&text).unwrap();
        let oracle = brute_force_automorphisms(&m);
        prop_assert_eq!(Definability::new(m).aut().order(), oracle, "{}", text);
    }

    #[test]
    fn definable_sets_are_unions_of_orbits(seed in any::<u64>(), arity in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = Definability::new(parse_structure(&random_structure_text(&mut rng)).unwrap());
        let orbits = d.orbits(arity).unwrap();
        let sets = d.enumerate(arity).unwrap();
        prop_assert_eq!(sets.len(), 1usize << orbits.len());
        let distinct: BTreeSet<_> = sets.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), sets.len());
        for x in &sets {
            prop_assert_eq!(&d.set_by_id(&d.canonical_id(x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn filtered_colimit_matches_zigzag_closure(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_filtered_diagram(&mut rng, 4);
        let r = filtered_colimit(&d, None).unwrap();
        let c = d.index();
        let arrows: Vec<_> = (0..c.morphism_count()).map(|t| (c.dom(t), c.cod(t), d.map(t).to_vec())).collect();
        let got: Vec<Vec<usize>> = (0..d.sizes().len())
            .map(|i| (0..d.sizes()[i]).map(|x| r.class(i, x)).collect())
            .collect();
        prop_assert!(same_partition(&got, &zigzag_classes(d.sizes(), &arrows)));
    }

    #[test]
    fn hom_ind_counts_natural_transformations(seed in any::<u64>()) {
        let base = FinCategory::finite_sets(&[0, 1, 2, 3]).unwrap();
        let tables = finite_set_tables(&base);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_base_system(&mut rng, &base, &tables);
        let b = random_base_system(&mut rng, &base, &tables);
        let oracle = count_natural_transformations(&base, &ColimPresheaf::new(&base, &a), &ColimPresheaf::new(&base, &b));
        prop_assert_eq!(hom_ind(&base, &a, &b).unwrap().len(), oracle);
    }

    #[test]
    fn ind_composition_is_unital_and_associative(seed in any::<u64>()) {
        let base = FinCategory::finite_sets(&[0, 1, 2, 3]).unwrap();
        let tables = finite_set_tables(&base);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<_> = (0..3).map(|_| random_base_system(&mut rng, &base, &tables)).collect();
        let pick = |rng: &mut ChaCha8Rng, a: usize, b: usize| {
            let h = hom_ind(&base, &xs[a], &xs[b]).unwrap();
            (!h.is_empty()).then(|| h[rng.gen_range(0..h.len())].clone())
        };
        if let (Some(f), Some(g), Some(h)) = (pick(&mut rng, 0, 1), pick(&mut rng, 1, 2), pick(&mut rng, 2, 2)) {
            let gf = compose_ind(&base, &f, &g).unwrap();
            let hg = compose_ind(&base, &g, &h).unwrap();
            prop_assert_eq!(compose_ind(&base, &gf, &h).unwrap(), compose_ind(&base, &f, &hg).unwrap());
            prop_assert_eq!(compose_ind(&base, &identity_ind(&base, &xs[0]).unwrap(), &f).unwrap(), f.clone());
            prop_assert_eq!(compose_ind(&base, &f, &identity_ind(&base, &xs[1]).unwrap()).unwrap(), f);
        }
    }

    #[test]
    fn constant_pro_systems_recover_base_hom(x in 0usize..4, y in 0usize..4) {
        let base = FinCategory::finite_sets(&[0, 1, 2, 3]).unwrap();
        let a = ProObject::constant(&base, x);
        let b = ProObject::constant(&base, y);
        prop_assert_eq!(count_pro(&base, &a, &b).unwrap(), base.hom(x, y).len());
    }

    #[test]
    fn points_survive_cofinal_restriction(seed in any::<u64>(), s in 0usize..3) {
        let cats = bundled_cats();
        let cat = &cats[s];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sets = candidate_sets(cat).unwrap();
        let x = random_ind(cat, &mut rng, &sets).unwrap();
        let i0 = rng.gen_range(0..x.len());
        let r = x.index().cofinal_restriction(i0).unwrap();
        let sub = x.restrict(cat, &r.objects).unwrap();
        prop_assert_eq!(ind_point_codes(&sub), ind_point_codes(&x));
        prop_assert_eq!(points_ind(&sub).class_count(), points_ind(&x).class_count());

        let p = random_pro(cat, &mut rng, &sets).unwrap();
        let i0 = rng.gen_range(0..p.len());
        let r = p.index().cofinal_restriction(i0).unwrap();
        let sub = p.restrict(cat, &r.objects).unwrap();
        prop_assert_eq!(points_pro(&sub).unwrap().len(), points_pro(&p).unwrap().len());
        let meet = p.objects().iter().fold(p.object(0).clone(), |acc, l| acc.intersection(l));
        prop_assert_eq!(pro_point_codes(&sub).unwrap(), meet.members().to_vec());
    }

    #[test]
    fn distinct_ind_morphisms_move_points_differently(seed in any::<u64>(), s in 0usize..3) {
        let cats = bundled_cats();
        let cat = &cats[s];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sets = candidate_sets(cat).unwrap();
        let a = random_ind(cat, &mut rng, &sets).unwrap();
        let b = random_ind(cat, &mut rng, &sets).unwrap();
        let maps: Vec<_> = hom_ind(cat, &a, &b).unwrap().iter().map(|f| induced_point_map_ind(f).unwrap()).collect();
        let distinct: BTreeSet<_> = maps.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), maps.len());
    }
}

#[test]
fn natural_transformation_oracle_on_constant_systems() {
    let base = FinCategory::finite_sets(&[0, 1, 2, 3]).unwrap();
    for x in 0..4 {
        for y in 0..4 {
            let a = IndObject::constant(&base, x);
            let b = IndObject::constant(&base, y);
            let n = count_natural_transformations(&base, &ColimPresheaf::new(&base, &a), &ColimPresheaf::new(&base, &b));
            assert_eq!(n, base.hom(x, y).len(), "Hom({x}, {y})");
        }
    }
}

#[test]
fn zigzag_oracle_merges_through_spans() {
    // 0 <- 1 -> 2 pattern across three sets: a then b identify the ends
    let classes = zigzag_classes(&[2, 1, 2], &[(1, 0, vec![1]), (1, 2, vec![0])]);
    assert_eq!(classes[0][1], classes[2][0]);
    assert_ne!(classes[0][0], classes[2][1]);
}

#[test]
fn random_diagrams_are_filtering() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let d = random_filtered_diagram(&mut rng, 3);
        assert!(indpro::fincat::is_filtering(d.index()).is_ok());
    }
}
