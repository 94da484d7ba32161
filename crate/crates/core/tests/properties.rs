use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tait_morse::diagram_io::parse_pd;
use tait_morse::dimers_trees::{
    count_matchings_bruteforce, count_matchings_fkt, count_spanning_trees, enumerate_matchings, kasteleyn_orient,
    matching_to_tree, tree_to_matching,
};
use tait_morse::morse::{
    complex_from_diagram, complex_from_map, enumerate_morse, face_poset, knot_from_complex, matching_to_morse,
    validate_morse, MorseFunction,
};
use tait_morse::planar_map::{checkerboard, random_spherical_map, CombMap};
use tait_morse::tait_overlay::{
    balance, diagram_from_tait, overlay, star_candidates, tait_from_pd, Sign, SignedTaitGraph, TaitOptions,
};

fn random_signed(seed: u64, edges: usize) -> SignedTaitGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let map = random_spherical_map(&mut rng, edges);
    let signs = (0..edges).map(|_| if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative }).collect();
    SignedTaitGraph::new(map, signs).unwrap()
}

fn map_strategy() -> impl Strategy<Value = CombMap> {
    (any::<u64>(), 1usize..=12).prop_map(|(seed, e)| random_spherical_map(&mut ChaCha8Rng::seed_from_u64(seed), e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maps_are_spherical_and_self_dual_twice(m in map_strategy()) {
        prop_assert_eq!(m.euler_characteristic(), 2);
        prop_assert!(m.dual().dual().is_isomorphic(&m));
        prop_assert_eq!(m.dual().vertex_count(), m.face_count());
        let med = m.medial();
        prop_assert!(med.is_spherical());
        prop_assert!((0..med.vertex_count()).all(|v| med.degree(v) == 4));
        let c = checkerboard(&med).unwrap();
        prop_assert!(c.is_proper(&med));
        prop_assert_eq!(CombMap::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn diagram_round_trip(seed in any::<u64>(), edges in 1usize..=12) {
        let g = random_signed(seed, edges);
        let code = diagram_from_tait(&g);
        prop_assert_eq!(parse_pd(&code.to_string()).unwrap(), code.clone());
        let (u, _) = tait_from_pd(&code, TaitOptions::default()).unwrap();
        prop_assert!(u.map().is_isomorphic(&g.graph().medial()));
        let (d, signs) = complex_from_diagram(&code, g.sign(0)).unwrap();
        let back = SignedTaitGraph::new(d.map().clone(), signs).unwrap();
        prop_assert!(back.is_isomorphic(&g));
    }

    #[test]
    fn tree_counts_agree_with_matchings(seed in any::<u64>(), edges in 1usize..=10) {
        let g = random_signed(seed, edges);
        let trees = count_spanning_trees(g.graph());
        prop_assert_eq!(&count_spanning_trees(&g.graph().dual()), &trees);
        let code = diagram_from_tait(&g);
        let (_, pair) = tait_from_pd(&code, TaitOptions::default()).unwrap();
        let gh = overlay(&pair);
        prop_assert!(gh.all_faces_square());
        for s in star_candidates(&gh) {
            let b = balance(&gh, s).unwrap();
            prop_assert!(kasteleyn_orient(&b).bad_faces(&b).is_empty());
            prop_assert_eq!(&count_matchings_fkt(&b).unwrap(), &trees);
            prop_assert_eq!(&count_matchings_bruteforce(&b).unwrap(), &trees);
            prop_assert_eq!(&BigUint::from(enumerate_matchings(&b, None).len()), &trees);
        }
    }

    #[test]
    fn bijection_is_inverse(seed in any::<u64>(), edges in 1usize..=9) {
        let g = random_signed(seed, edges);
        let (_, pair) = tait_from_pd(&diagram_from_tait(&g), TaitOptions::default()).unwrap();
        let gh = overlay(&pair);
        for s in star_candidates(&gh) {
            let b = balance(&gh, s).unwrap();
            for m in enumerate_matchings(&b, None) {
                let (t, ts) = matching_to_tree(&b, &m).unwrap();
                prop_assert_eq!(t.edges.len() + ts.edges.len(), edges);
                prop_assert_eq!(tree_to_matching(&b, &t).unwrap(), m);
            }
        }
    }

    #[test]
    fn matchings_give_morse_functions(m in map_strategy()) {
        let d = complex_from_map(&m).unwrap();
        let code = knot_from_complex(&d, &vec![Sign::Positive; m.edge_count()]).unwrap();
        let (_, pair) = tait_from_pd(&code, TaitOptions::default()).unwrap();
        let gh = face_poset(&d);
        prop_assert!(gh.is_isomorphic(&overlay(&pair)));
        for s in star_candidates(&gh) {
            let b = balance(&gh, s).unwrap();
            let fs = enumerate_morse(&d, &b, None).unwrap();
            prop_assert_eq!(BigUint::from(fs.len()), count_spanning_trees(&m));
            for f in &fs {
                let r = validate_morse(&d, f);
                prop_assert!(r.valid);
                prop_assert_eq!(r.critical, vec![d.vertex_cell(s.v0), d.face_cell(s.f0)]);
            }
        }
    }

    #[test]
    fn monotone_relabeling_keeps_validity(m in map_strategy(), scale in 1i64..5, shift in -10i64..10) {
        let d = complex_from_map(&m).unwrap();
        let gh = face_poset(&d);
        let s = star_candidates(&gh)[0];
        let b = balance(&gh, s).unwrap();
        let mt = &enumerate_matchings(&b, Some(1))[0];
        let (_, f) = matching_to_morse(&d, &b, mt).unwrap();
        let g = MorseFunction { values: f.values.iter().map(|v| scale * v * v + shift).collect() };
        let r = validate_morse(&d, &g);
        prop_assert!(r.valid);
        prop_assert_eq!(r.critical.len(), 2);
    }

    #[test]
    fn coloring_swap_keeps_count(seed in any::<u64>(), edges in 1usize..=10) {
        let g = random_signed(seed, edges);
        let code = diagram_from_tait(&g);
        let count = |swap: bool| {
            let (_, pair) = tait_from_pd(&code, TaitOptions { swap_colors: swap, flip_signs: false }).unwrap();
            let gh = overlay(&pair);
            count_matchings_fkt(&balance(&gh, star_candidates(&gh)[0]).unwrap()).unwrap()
        };
        prop_assert_eq!(count(false), count(true));
    }
}
