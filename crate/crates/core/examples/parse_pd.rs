//! Parse PD codes, print their canonical form, and show how bad input is
//! reported.

use tait_morse::diagram_io::{builtin_diagram, parse_pd, BUILTIN_NAMES};

fn main() {
    for name in BUILTIN_NAMES {
        let code = builtin_diagram(name).unwrap();
        println!("{name:>5}  {} crossings  {code}", code.crossing_count());
    }

    let messy = " PD[ X[1, 4, 2, 5], X[3,6,4,1],\n X[5,2,6,3] ] ";
    println!("\ncanonical: {}", parse_pd(messy).unwrap());

    for bad in ["PD[X[1,1,2]]", "PD[X[1,4,2,5],X[3,6,4,1]]", "PD[]"] {
        println!("{bad:<28} -> {}", parse_pd(bad).unwrap_err());
    }
}
