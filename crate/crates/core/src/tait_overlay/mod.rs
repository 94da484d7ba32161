//! Signed Tait graphs, the overlaid Tait graph and its balanced form.
//!
//! The Tait graph `G` of a checkerboard-colored universe has one vertex per
//! black face and one edge per crossing. Its darts are the black corners of
//! the universe: crossing `k` contributes edge `k`, whose dart `2k` sits in
//! the black corner at the lower slot. The dual Tait graph `G*` is built the
//! same way from the white corners, so it shares edge numbering with `G`.

mod balanced;
mod overlay;

pub use balanced::{balance, BalancedGraph, GammaEdge, GammaVertex};
pub use overlay::{face_poset_of_map, overlay, star_candidates, OverlaidGraph, StarPair, Vertex};

use serde::{Deserialize, Serialize};

use crate::diagram_io::PdCode;
use crate::error::{Error, Result};
use crate::planar_map::{checkerboard, map_from_pd, CombMap, FaceColor, FaceColoring, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

impl Sign {
    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn flip_if(self, flip: bool) -> Self {
        if flip {
            self.flipped()
        } else {
            self
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// Local picture of one crossing. Strand ends are numbered 0..4
/// counterclockwise; sector `k` lies between end `k` and end `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalCrossing {
    /// The two ends of the over-strand.
    pub over: [usize; 2],
    /// The two shaded (black) sectors.
    pub shaded: [usize; 2],
}

/// Positive when a counterclockwise quarter-turn of the over-strand sweeps
/// through the shaded sectors onto the under-strand.
pub fn sign_of_crossing(c: LocalCrossing) -> Result<Sign> {
    let opposite = |[a, b]: [usize; 2]| a < 4 && b < 4 && (a + 2) % 4 == b;
    if !opposite(c.shaded) {
        return Err(Error::SectorsNotOpposite(c.shaded));
    }
    if !opposite(c.over) {
        return Err(Error::Input(format!("over-strand ends {:?} are not opposite", c.over)));
    }
    // rotating end `o` counterclockwise sweeps sector `o`
    if c.shaded.contains(&c.over[0]) {
        Ok(Sign::Positive)
    } else {
        Ok(Sign::Negative)
    }
}

/// A plane graph with a sign on every edge, edge `k` standing for crossing
/// `crossing_of[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTaitGraph {
    graph: CombMap,
    signs: Vec<Sign>,
    crossing_of: Vec<usize>,
}

impl SignedTaitGraph {
    pub fn new(graph: CombMap, signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != graph.edge_count() {
            return Err(Error::SignCount { got: signs.len(), expected: graph.edge_count() });
        }
        if !graph.is_spherical() {
            return Err(Error::NonRealizable { euler: graph.euler_characteristic() });
        }
        let crossing_of = (0..signs.len()).collect();
        Ok(SignedTaitGraph { graph, signs, crossing_of })
    }

    /// All edges positive.
    pub fn positive(graph: CombMap) -> Result<Self> {
        let signs = vec![Sign::Positive; graph.edge_count()];
        Self::new(graph, signs)
    }

    pub fn graph(&self) -> &CombMap {
        &self.graph
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, edge: usize) -> Sign {
        self.signs[edge]
    }

    pub fn crossing_of(&self, edge: usize) -> usize {
        self.crossing_of[edge]
    }

    pub fn with_all_signs_flipped(&self) -> Self {
        SignedTaitGraph { signs: self.signs.iter().map(|s| s.flipped()).collect(), ..self.clone() }
    }

    /// Sign-preserving, orientation-preserving map isomorphism.
    pub fn is_isomorphic(&self, other: &SignedTaitGraph) -> bool {
        self.graph
            .isomorphism_with(&other.graph, |d, e| self.signs[d / 2] == other.signs[e / 2])
            .is_some()
    }
}

/// `G` and `G*` of one colored universe, with corner back-references.
#[derive(Debug, Clone)]
pub struct TaitPair {
    pub primal: SignedTaitGraph,
    pub dual: SignedTaitGraph,
    /// Universe dart whose clockwise corner hosts each primal dart.
    pub primal_corner: Vec<usize>,
    pub dual_corner: Vec<usize>,
    /// Slot (0..4) of each primal / dual dart's corner at its crossing.
    pub primal_slot: Vec<usize>,
    pub dual_slot: Vec<usize>,
    /// Universe face of each primal / dual vertex.
    pub primal_face: Vec<usize>,
    pub dual_face: Vec<usize>,
    /// Universe dart into whose corner `rotate(u)` points, per universe dart;
    /// used to order squares of the overlay by universe edge.
    universe_rotation: Vec<usize>,
}

/// Knobs for the diagram side of the pipeline.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TaitOptions {
    /// Call the class not containing the dart-0 face black.
    pub swap_colors: bool,
    /// Read every crossing with the opposite sign convention.
    pub flip_signs: bool,
}

/// Builds `G` on the black faces and `G*` on the white faces.
///
/// Corner `x` (just clockwise of universe dart `x`) lies in face `face_of(x)`.
/// Walking a face orbit goes clockwise around the face, so the
/// counterclockwise order of corners around a face is the reverse orbit.
pub fn tait_from_universe(u: &Universe, coloring: &FaceColoring, flip_signs: bool) -> Result<TaitPair> {
    let m = u.map();
    let n = u.crossing_count();
    let darts = m.dart_count();
    let mut primal_of = vec![usize::MAX; darts];
    let mut dual_of = vec![usize::MAX; darts];
    let mut primal_corner = vec![0; 2 * n];
    let mut dual_corner = vec![0; 2 * n];
    let mut primal_slot = vec![0; 2 * n];
    let mut dual_slot = vec![0; 2 * n];
    let mut signs = Vec::with_capacity(n);

    for (k, quad) in u.crossings().iter().enumerate() {
        let black: Vec<bool> = quad.iter().map(|&x| coloring.color(m.face_of(x)) == FaceColor::Black).collect();
        // sector j sits between slots j and j + 1, i.e. clockwise of slot j + 1
        let shaded: Vec<usize> = (0..4).filter(|&j| black[(j + 1) % 4]).collect();
        let shaded: [usize; 2] = shaded
            .try_into()
            .map_err(|_| Error::Invariant(format!("crossing {k} does not alternate colors")))?;
        let sign = sign_of_crossing(LocalCrossing { over: [1, 3], shaded })
            .map_err(|e| Error::Invariant(format!("crossing {k}: {e}")))?;
        signs.push(sign.flip_if(flip_signs));

        let j0 = if black[0] { 0 } else { 1 };
        let w0 = 1 - j0;
        for (half, slot) in [(0, j0), (1, j0 + 2)] {
            let d = 2 * k + half;
            primal_of[quad[slot]] = d;
            primal_corner[d] = quad[slot];
            primal_slot[d] = slot;
        }
        for (half, slot) in [(0, w0), (1, w0 + 2)] {
            let d = 2 * k + half;
            dual_of[quad[slot]] = d;
            dual_corner[d] = quad[slot];
            dual_slot[d] = slot;
        }
    }

    let rotation_for = |of: &[usize], corner: &[usize]| -> Vec<usize> {
        corner.iter().map(|&x| of[m.face_step_back(x)]).collect()
    };
    let primal_map = CombMap::spherical(rotation_for(&primal_of, &primal_corner))
        .map_err(|e| Error::Invariant(format!("Tait graph: {e}")))?;
    let dual_map = CombMap::spherical(rotation_for(&dual_of, &dual_corner))
        .map_err(|e| Error::Invariant(format!("dual Tait graph: {e}")))?;

    let faces_of = |g: &CombMap, corner: &[usize]| -> Vec<usize> {
        let mut f = vec![0; g.vertex_count()];
        for (d, &x) in corner.iter().enumerate() {
            f[g.vertex_of(d)] = m.face_of(x);
        }
        f
    };
    let primal_face = faces_of(&primal_map, &primal_corner);
    let dual_face = faces_of(&dual_map, &dual_corner);

    let dual_signs = signs.iter().map(|s| s.flipped()).collect();
    Ok(TaitPair {
        primal: SignedTaitGraph::new(primal_map, signs)?,
        dual: SignedTaitGraph::new(dual_map, dual_signs)?,
        primal_corner,
        dual_corner,
        primal_slot,
        dual_slot,
        primal_face,
        dual_face,
        universe_rotation: m.rotation().to_vec(),
    })
}

/// Universe, coloring and Tait graphs of a PD code in one step.
pub fn tait_from_pd(code: &PdCode, options: TaitOptions) -> Result<(Universe, TaitPair)> {
    let u = map_from_pd(code)?;
    let mut coloring = checkerboard(u.map())?;
    if options.swap_colors {
        coloring = coloring.swapped();
    }
    let pair = tait_from_universe(&u, &coloring, options.flip_signs)?;
    Ok((u, pair))
}

/// The diagram of a signed plane graph: its universe is the medial map and
/// each crossing is resolved so that it carries its edge's sign.
///
/// Crossing `k` of the result is edge `k` of `g`. Arc labels follow the
/// components of the link, so each arc runs from the outgoing end of one
/// crossing to the incoming end of the next. The vertices of `g` become the
/// black faces when crossing 0 is positive; otherwise they are the white ones.
pub fn diagram_from_tait(g: &SignedTaitGraph) -> PdCode {
    diagram_from_tait_with(g, false)
}

/// [`diagram_from_tait`] under the flipped sign convention.
pub fn diagram_from_tait_with(g: &SignedTaitGraph, flip_signs: bool) -> PdCode {
    let map = g.graph();
    let medial = map.medial();
    let quads = map.medial_crossings();
    let md = medial.dart_count();

    let mut label = vec![0u32; md / 2];
    let mut incoming = vec![false; md];
    let mut next = 1u32;
    for start in 0..md {
        let mut d = start;
        while label[d / 2] == 0 {
            label[d / 2] = next;
            next += 1;
            let arrive = d ^ 1;
            incoming[arrive] = true;
            d = medial.rotate(medial.rotate(arrive));
        }
    }

    let crossings = quads
        .iter()
        .enumerate()
        .map(|(k, quad)| {
            // positions 0 and 2 have the vertex regions of `g` on their right
            let under = match g.sign(k).flip_if(flip_signs) {
                Sign::Positive => [0, 2],
                Sign::Negative => [1, 3],
            };
            let start = *under
                .iter()
                .find(|&&i| incoming[quad[i]])
                .expect("each strand enters a crossing once");
            std::array::from_fn(|i| label[quad[(start + i) % 4] / 2])
        })
        .collect();
    PdCode::new(crossings).expect("medial arcs are used exactly twice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_io::{builtin_diagram, BUILTIN_NAMES};

    fn triangle() -> CombMap {
        CombMap::spherical(vec![5, 2, 1, 4, 3, 0]).unwrap()
    }

    fn dipole() -> CombMap {
        triangle().dual()
    }

    fn pair(name: &str) -> TaitPair {
        tait_from_pd(&builtin_diagram(name).unwrap(), TaitOptions::default()).unwrap().1
    }

    #[test]
    fn figure_one_pictures() {
        // ends counterclockwise from the lower-right: 0 = SE, 1 = NE, 2 = NW, 3 = SW.
        // Shaded regions are the top (sector 1) and bottom (sector 3).
        let shaded = [1, 3];
        // left picture: over-strand runs SW-NE
        assert_eq!(sign_of_crossing(LocalCrossing { over: [1, 3], shaded }).unwrap(), Sign::Positive);
        // right picture: over-strand runs SE-NW
        assert_eq!(sign_of_crossing(LocalCrossing { over: [0, 2], shaded }).unwrap(), Sign::Negative);
    }

    #[test]
    fn strand_exchange_flips_sign() {
        for over in [[0, 2], [1, 3]] {
            for shaded in [[0, 2], [1, 3]] {
                let s = sign_of_crossing(LocalCrossing { over, shaded }).unwrap();
                let other = [(over[0] + 1) % 4, (over[1] + 1) % 4];
                let t = sign_of_crossing(LocalCrossing { over: other, shaded }).unwrap();
                assert_eq!(s.flipped(), t);
            }
        }
    }

    #[test]
    fn non_opposite_sectors_rejected() {
        let err = sign_of_crossing(LocalCrossing { over: [1, 3], shaded: [0, 1] }).unwrap_err();
        assert_eq!(err, Error::SectorsNotOpposite([0, 1]));
    }

    #[test]
    fn trefoil_tait_graphs_are_triangle_and_dipole() {
        let p = pair("3_1");
        let shapes = [
            (p.primal.graph().vertex_count(), p.primal.graph().edge_count()),
            (p.dual.graph().vertex_count(), p.dual.graph().edge_count()),
        ];
        assert!(shapes == [(3, 3), (2, 3)] || shapes == [(2, 3), (3, 3)], "{shapes:?}");
        let (g, d) = if shapes[0].0 == 3 { (&p.primal, &p.dual) } else { (&p.dual, &p.primal) };
        assert!(g.graph().is_isomorphic(&triangle()));
        assert!(d.graph().is_isomorphic(&dipole()));
    }

    #[test]
    fn kink_tait_graphs() {
        let p = pair("kink");
        // dart 0's face has two corners at the crossing: G is a loop
        assert_eq!(p.primal.graph().vertex_count(), 1);
        assert!(p.primal.graph().is_loop(0));
        assert_eq!(p.dual.graph().vertex_count(), 2);
        let swapped =
            tait_from_pd(&builtin_diagram("kink").unwrap(), TaitOptions { swap_colors: true, ..Default::default() })
                .unwrap()
                .1;
        assert_eq!(swapped.primal.graph().vertex_count(), 2);
    }

    #[test]
    fn alternating_diagrams_have_uniform_signs() {
        for name in BUILTIN_NAMES {
            let p = pair(name);
            let first = p.primal.sign(0);
            assert!(p.primal.signs().iter().all(|&s| s == first), "{name}");
        }
    }

    #[test]
    fn crossing_zero_is_positive_under_default_coloring() {
        for name in BUILTIN_NAMES {
            assert_eq!(pair(name).primal.sign(0), Sign::Positive, "{name}");
        }
    }

    #[test]
    fn dual_tait_graph_is_plane_dual() {
        for name in BUILTIN_NAMES {
            let p = pair(name);
            assert!(p.primal.graph().dual().is_isomorphic(p.dual.graph()), "{name}");
            assert!(p.primal.signs().iter().zip(p.dual.signs()).all(|(a, b)| *a == b.flipped()));
        }
    }

    #[test]
    fn diagram_from_single_positive_edge_is_kink() {
        let g = SignedTaitGraph::positive(CombMap::spherical(vec![0, 1]).unwrap()).unwrap();
        let code = diagram_from_tait(&g);
        assert_eq!(code.crossing_count(), 1);
        let (u, p) = tait_from_pd(&code, TaitOptions::default()).unwrap();
        assert!(u.map().is_isomorphic(map_from_pd(&builtin_diagram("kink").unwrap()).unwrap().map()));
        assert!(p.primal.is_isomorphic(&g));
    }

    #[test]
    fn positive_triangle_gives_alternating_trefoil() {
        let g = SignedTaitGraph::positive(triangle()).unwrap();
        let code = diagram_from_tait(&g);
        let (u, p) = tait_from_pd(&code, TaitOptions::default()).unwrap();
        let trefoil = map_from_pd(&builtin_diagram("3_1").unwrap()).unwrap();
        assert!(u.map().is_isomorphic(trefoil.map()));
        assert!(p.primal.is_isomorphic(&g));
    }

    #[test]
    fn negative_graph_round_trips_with_swapped_colors() {
        let g = SignedTaitGraph::positive(triangle()).unwrap().with_all_signs_flipped();
        let code = diagram_from_tait(&g);
        let opts = TaitOptions { swap_colors: true, ..Default::default() };
        let (_, p) = tait_from_pd(&code, opts).unwrap();
        assert!(p.primal.is_isomorphic(&g));
    }

    #[test]
    fn builtin_round_trip_through_signed_graph() {
        for name in BUILTIN_NAMES {
            let code = builtin_diagram(name).unwrap();
            let (u, p) = tait_from_pd(&code, TaitOptions::default()).unwrap();
            let back = diagram_from_tait(&p.primal);
            let (u2, p2) = tait_from_pd(&back, TaitOptions::default()).unwrap();
            assert!(u.map().is_isomorphic(u2.map()), "{name}");
            assert!(p.primal.is_isomorphic(&p2.primal), "{name}");
        }
    }

    #[test]
    fn flip_convention_round_trip() {
        let g = SignedTaitGraph::positive(triangle()).unwrap();
        let code = diagram_from_tait_with(&g, true);
        let opts = TaitOptions { swap_colors: true, flip_signs: true };
        let (_, p) = tait_from_pd(&code, opts).unwrap();
        assert!(p.primal.is_isomorphic(&g));
    }

    #[test]
    fn sign_count_checked() {
        assert_eq!(
            SignedTaitGraph::new(triangle(), vec![Sign::Positive]).unwrap_err(),
            Error::SignCount { got: 1, expected: 3 }
        );
    }
}
