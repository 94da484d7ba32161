//! Grow random spherical maps and check the matching/tree count on each.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tait_morse::dimers_trees::{count_matchings_fkt, count_spanning_trees};
use tait_morse::morse::{complex_from_map, enumerate_morse, face_poset};
use tait_morse::planar_map::random_spherical_map;
use tait_morse::tait_overlay::{balance, star_candidates};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for edges in 1..=10 {
        let m = random_spherical_map(&mut rng, edges);
        let d = complex_from_map(&m).unwrap();
        let gh = face_poset(&d);
        let g = balance(&gh, star_candidates(&gh)[0]).unwrap();
        println!(
            "E={edges:>2} V={} F={}  trees {}  matchings {}  Morse functions {}",
            m.vertex_count(),
            m.face_count(),
            count_spanning_trees(&m),
            count_matchings_fkt(&g).unwrap(),
            enumerate_morse(&d, &g, None).unwrap().len()
        );
    }
}
