//! From a complex to a knot diagram and back.

use tait_morse::morse::{complex_from_diagram, complex_from_map, knot_from_complex};
use tait_morse::planar_map::CombMap;
use tait_morse::tait_overlay::Sign;

fn main() {
    let triangle = CombMap::spherical(vec![5, 2, 1, 4, 3, 0]).unwrap();
    let d = complex_from_map(&triangle).unwrap();

    for signs in [[Sign::Positive; 3], [Sign::Negative; 3], [Sign::Positive, Sign::Negative, Sign::Positive]] {
        let code = knot_from_complex(&d, &signs).unwrap();
        let (back, back_signs) = complex_from_diagram(&code, signs[0]).unwrap();
        let s: String = back_signs.iter().map(|s| s.to_string()).collect();
        println!("{code}  round trip isomorphic: {}  signs {s}", back.map().is_isomorphic(d.map()));
    }
}
