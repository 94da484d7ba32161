//! Walk the bijection between perfect matchings and spanning trees rooted
//! at the starred vertices.

use tait_morse::diagram_io::builtin_diagram;
use tait_morse::dimers_trees::{enumerate_matchings, matching_to_tree, tree_to_matching};
use tait_morse::tait_overlay::{balance, overlay, star_candidates, tait_from_pd, TaitOptions};

fn main() {
    let (_, pair) = tait_from_pd(&builtin_diagram("4_1").unwrap(), TaitOptions::default()).unwrap();
    let gh = overlay(&pair);
    let star = star_candidates(&gh)[0];
    let g = balance(&gh, star).unwrap();
    println!("root v0 = {} in G, f0 = {} in G*", star.v0, star.f0);

    for m in enumerate_matchings(&g, None) {
        let (t, ts) = matching_to_tree(&g, &m).unwrap();
        let back = tree_to_matching(&g, &t).unwrap();
        println!("matching {:?} -> T {:?}, T* {:?}, back: {}", m.edges(), t.edges, ts.edges, back == m);
    }
}
