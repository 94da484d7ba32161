//! Signed Tait graphs of a diagram, their duality, and the way back to a
//! diagram.

use tait_morse::diagram_io::builtin_diagram;
use tait_morse::tait_overlay::{diagram_from_tait, tait_from_pd, TaitOptions};

fn main() {
    for name in ["kink", "3_1", "5_2"] {
        let (_, pair) = tait_from_pd(&builtin_diagram(name).unwrap(), TaitOptions::default()).unwrap();
        let (g, gs) = (pair.primal.graph(), pair.dual.graph());
        let signs: String = pair.primal.signs().iter().map(|s| s.to_string()).collect();
        println!("{name}: G has {} vertices, {} edges, signs {signs}", g.vertex_count(), g.edge_count());
        println!("      G* has {} vertices; dual(G) = G*: {}", gs.vertex_count(), g.dual().is_isomorphic(gs));

        let back = diagram_from_tait(&pair.primal);
        println!("      rebuilt diagram {back}");
    }

    let swapped = TaitOptions { swap_colors: true, ..Default::default() };
    let (_, pair) = tait_from_pd(&builtin_diagram("3_1").unwrap(), swapped).unwrap();
    println!("3_1 with colors swapped: G has {} vertices", pair.primal.graph().vertex_count());
}
