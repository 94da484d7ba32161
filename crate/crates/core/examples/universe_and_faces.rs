//! Build the universe of a diagram and checkerboard-color its faces.

use tait_morse::diagram_io::builtin_diagram;
use tait_morse::planar_map::{checkerboard, map_from_pd};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "4_1".into());
    let u = map_from_pd(&builtin_diagram(&name).unwrap()).unwrap();
    let m = u.map();
    println!("{name}: V={} E={} F={} (chi = {})", m.vertex_count(), m.edge_count(), m.face_count(), m.euler_characteristic());

    let coloring = checkerboard(m).unwrap();
    for (i, face) in m.faces().iter().enumerate() {
        println!("  face {i} {:?} length {} darts {face:?}", coloring.color(i), face.len());
    }
    let (black, white) = coloring.class_sizes();
    println!("black faces {black}, white faces {white}");
}
