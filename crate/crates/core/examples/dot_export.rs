//! Write DOT renderings of the overlaid graph, the balanced graph and a
//! Hasse diagram to standard output.

use tait_morse::diagram_io::builtin_diagram;
use tait_morse::dimers_trees::enumerate_matchings;
use tait_morse::morse::{complex_from_map, face_poset, hasse_dot, matching_to_morse};
use tait_morse::tait_overlay::{balance, overlay, star_candidates, tait_from_pd, TaitOptions};

fn main() {
    let (_, pair) = tait_from_pd(&builtin_diagram("3_1").unwrap(), TaitOptions::default()).unwrap();
    let gh = overlay(&pair);
    let star = star_candidates(&gh)[0];
    print!("{}", gh.to_dot(Some(&star)));
    print!("{}", balance(&gh, star).unwrap().to_dot());

    let d = complex_from_map(pair.primal.graph()).unwrap();
    let poset = face_poset(&d);
    let g = balance(&poset, star_candidates(&poset)[0]).unwrap();
    let m = &enumerate_matchings(&g, Some(1))[0];
    let (p, _) = matching_to_morse(&d, &g, m).unwrap();
    print!("{}", hasse_dot(&d, &p));
}
