//! The overlaid Tait graph, its star candidates, and the balanced graph
//! left after deleting a starred pair.

use tait_morse::diagram_io::builtin_diagram;
use tait_morse::tait_overlay::{balance, overlay, star_candidates, tait_from_pd, GammaVertex, TaitOptions};

fn main() {
    let (_, pair) = tait_from_pd(&builtin_diagram("3_1").unwrap(), TaitOptions::default()).unwrap();
    let gh = overlay(&pair);
    println!(
        "overlaid: {} vertices ({} black), {} edges, {} faces, all squares: {}",
        gh.vertex_count(),
        gh.crossing_count(),
        gh.edge_count(),
        gh.face_count(),
        gh.all_faces_square()
    );

    let candidates = star_candidates(&gh);
    for (i, s) in candidates.iter().enumerate() {
        println!("  star {i}: v0={} f0={} on square {}", s.v0, s.f0, s.square);
    }

    let g = balance(&gh, candidates[0]).unwrap();
    println!("balanced: {} black, {} white, {} edges", g.black_count(), g.white_count(), g.edges().len());
    println!("bounded faces: {}", g.bounded_faces().len());
    let walk: Vec<String> = g
        .periphery()
        .iter()
        .map(|v| match v {
            GammaVertex::Black(b) => format!("b{b}"),
            GammaVertex::White(w) => format!("w{w}"),
        })
        .collect();
    println!("periphery: {}", walk.join(" "));
}
