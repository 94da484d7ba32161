//! Count perfect matchings of the balanced graph three ways and compare
//! with spanning trees of the Tait graph.

use std::time::Instant;

use tait_morse::diagram_io::{builtin_diagram, BUILTIN_NAMES};
use tait_morse::dimers_trees::{count_matchings_bruteforce, count_matchings_fkt, count_spanning_trees, enumerate_matchings};
use tait_morse::tait_overlay::{balance, overlay, star_candidates, tait_from_pd, TaitOptions};

fn main() {
    println!("{:>5} {:>9} {:>11} {:>5} {:>7} {:>8}", "knot", "enumerate", "brute force", "fkt", "trees G", "trees G*");
    for name in BUILTIN_NAMES {
        let t = Instant::now();
        let (_, pair) = tait_from_pd(&builtin_diagram(name).unwrap(), TaitOptions::default()).unwrap();
        let gh = overlay(&pair);
        let g = balance(&gh, star_candidates(&gh)[0]).unwrap();
        println!(
            "{name:>5} {:>9} {:>11} {:>5} {:>7} {:>8}   ({:?})",
            enumerate_matchings(&g, None).len(),
            count_matchings_bruteforce(&g).unwrap(),
            count_matchings_fkt(&g).unwrap(),
            count_spanning_trees(pair.primal.graph()),
            count_spanning_trees(pair.dual.graph()),
            t.elapsed()
        );
    }
}
