//! Turn each perfect matching of the face poset into a discrete Morse
//! function and validate it.

use tait_morse::dimers_trees::enumerate_matchings;
use tait_morse::morse::{acyclic_check, complex_from_map, face_poset, matching_to_morse, validate_morse};
use tait_morse::planar_map::CombMap;
use tait_morse::tait_overlay::{balance, star_candidates};

fn main() {
    // two triangles glued along their boundary
    let triangle = CombMap::spherical(vec![5, 2, 1, 4, 3, 0]).unwrap();
    let d = complex_from_map(&triangle).unwrap();
    println!("cells per dimension: {:?}", d.counts());

    let gh = face_poset(&d);
    let star = star_candidates(&gh)[0];
    let g = balance(&gh, star).unwrap();
    println!("critical cells will be vertex {} and face {}", star.v0, star.f0);

    for m in enumerate_matchings(&g, None) {
        let (p, f) = matching_to_morse(&d, &g, &m).unwrap();
        let report = validate_morse(&d, &f);
        println!(
            "pairs {:?} acyclic {} values {:?} valid {} critical {:?}",
            p.pairs(),
            acyclic_check(&d, &p),
            f.values,
            report.valid,
            report.critical
        );
    }
}
