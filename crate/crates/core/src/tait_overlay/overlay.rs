use std::fmt::Write as _;

use serde::Serialize;

use super::TaitPair;
use crate::error::{Error, Result};
use crate::planar_map::CombMap;

/// A vertex of the overlaid graph.
///
/// Black vertices are crossings (edges of `G`, 1-cells of the complex).
/// White vertices are vertices of `G` (0-cells) or of `G*` (2-cells).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Vertex {
    Crossing(usize),
    Primal(usize),
    Dual(usize),
}

impl Vertex {
    pub fn is_black(self) -> bool {
        matches!(self, Vertex::Crossing(_))
    }
}

/// The overlay of `G` and `G*`: a bipartite quadrangulation of the sphere.
///
/// Edge `k < 2n` is the half-edge (dart) `k` of `G`; edge `2n + k` is dart
/// `k` of `G*`. Edge `k` has dart `2k` at its black end and `2k + 1` at its
/// white end. Vertices are indexed crossings first, then vertices of `G`,
/// then vertices of `G*`.
#[derive(Debug, Clone)]
pub struct OverlaidGraph {
    map: CombMap,
    crossings: usize,
    primal: CombMap,
    dual: CombMap,
    vertex_of_dart: Vec<usize>,
    square_order: Vec<usize>,
    white_origin: Option<Vec<usize>>,
}

impl OverlaidGraph {
    /// `black_orders[c]` lists the four edges at crossing `c` counterclockwise.
    fn assemble(primal: CombMap, dual: CombMap, black_orders: &[[usize; 4]]) -> Result<Self> {
        let n = black_orders.len();
        debug_assert_eq!(primal.edge_count(), n);
        debug_assert_eq!(dual.edge_count(), n);
        let half = 2 * n;
        let mut rotation = vec![0; 8 * n];
        for quad in black_orders {
            for i in 0..4 {
                rotation[2 * quad[i]] = 2 * quad[(i + 1) % 4];
            }
        }
        for k in 0..half {
            rotation[2 * k + 1] = 2 * primal.rotate(k) + 1;
            rotation[2 * (half + k) + 1] = 2 * (half + dual.rotate(k)) + 1;
        }
        let map = CombMap::spherical(rotation).map_err(|e| Error::Invariant(format!("overlaid graph: {e}")))?;

        let np = primal.vertex_count();
        let mut vertex_of_dart = vec![0; 8 * n];
        for k in 0..2 * half {
            vertex_of_dart[2 * k] = (k % half) / 2;
            vertex_of_dart[2 * k + 1] =
                if k < half { n + primal.vertex_of(k) } else { n + np + dual.vertex_of(k - half) };
        }
        let square_order = (0..map.face_count()).collect();
        Ok(OverlaidGraph { map, crossings: n, primal, dual, vertex_of_dart, square_order, white_origin: None })
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings
    }

    pub fn primal(&self) -> &CombMap {
        &self.primal
    }

    pub fn dual(&self) -> &CombMap {
        &self.dual
    }

    pub fn vertex_count(&self) -> usize {
        self.crossings + self.primal.vertex_count() + self.dual.vertex_count()
    }

    pub fn white_count(&self) -> usize {
        self.primal.vertex_count() + self.dual.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.map.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.map.face_count()
    }

    /// Index of the vertex at the tail of `dart`.
    pub fn vertex_index(&self, dart: usize) -> usize {
        self.vertex_of_dart[dart]
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        let n = self.crossings;
        let np = self.primal.vertex_count();
        if index < n {
            Vertex::Crossing(index)
        } else if index < n + np {
            Vertex::Primal(index - n)
        } else {
            Vertex::Dual(index - n - np)
        }
    }

    pub fn index_of(&self, v: Vertex) -> usize {
        match v {
            Vertex::Crossing(c) => c,
            Vertex::Primal(p) => self.crossings + p,
            Vertex::Dual(d) => self.crossings + self.primal.vertex_count() + d,
        }
    }

    /// Overlay edge carrying dart `d` of `G`.
    pub fn edge_of_primal_dart(&self, d: usize) -> usize {
        d
    }

    /// Overlay edge carrying dart `d` of `G*`.
    pub fn edge_of_dual_dart(&self, d: usize) -> usize {
        2 * self.crossings + d
    }

    /// `Ok(dart of G)` or `Err(dart of G*)` for an overlay edge.
    pub fn tait_dart(&self, edge: usize) -> std::result::Result<usize, usize> {
        let half = 2 * self.crossings;
        if edge < half {
            Ok(edge)
        } else {
            Err(edge - half)
        }
    }

    pub fn degree(&self, index: usize) -> usize {
        self.vertex_of_dart.iter().filter(|&&v| v == index).count()
    }

    pub fn all_faces_square(&self) -> bool {
        self.map.faces().iter().all(|f| f.len() == 4)
    }

    /// Faces in star-candidate order.
    pub fn square_order(&self) -> &[usize] {
        &self.square_order
    }

    /// Universe face of each white vertex, when built from a diagram.
    pub fn white_origin(&self) -> Option<&[usize]> {
        self.white_origin.as_deref()
    }

    /// Whether the vertex roles of two overlays line up under an
    /// orientation-preserving isomorphism.
    pub fn is_isomorphic(&self, other: &OverlaidGraph) -> bool {
        self.map
            .isomorphism_with(&other.map, |d, e| {
                let (a, b) = (self.vertex(self.vertex_of_dart[d]), other.vertex(other.vertex_of_dart[e]));
                std::mem::discriminant(&a) == std::mem::discriminant(&b)
            })
            .is_some()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<[usize; 3]> = (0..self.edge_count())
            .map(|k| [self.vertex_of_dart[2 * k], self.vertex_of_dart[2 * k + 1], k])
            .collect();
        let vertices: Vec<Vertex> = (0..self.vertex_count()).map(|i| self.vertex(i)).collect();
        serde_json::json!({
            "vertices": vertices,
            "edges": edges,
            "faces": self.map.faces(),
            "rotation": self.map.rotation(),
            "universe_face_of_white": self.white_origin,
        })
    }

    pub fn to_dot(&self, stars: Option<&StarPair>) -> String {
        let mut s = String::from("graph overlaid {\n");
        let starred = stars.map(|p| [self.index_of(Vertex::Primal(p.v0)), self.index_of(Vertex::Dual(p.f0))]);
        for i in 0..self.vertex_count() {
            let v = self.vertex(i);
            let (name, shape, fill) = match v {
                Vertex::Crossing(c) => (format!("x{c}"), "circle", "black"),
                Vertex::Primal(p) => (format!("v{p}"), "circle", "white"),
                Vertex::Dual(f) => (format!("f{f}"), "square", "white"),
            };
            let star = if starred.is_some_and(|st| st.contains(&i)) { ", xlabel=\"*\"" } else { "" };
            let _ = writeln!(s, "  n{i} [label=\"{name}\", shape={shape}, style=filled, fillcolor={fill}{star}];");
        }
        for k in 0..self.edge_count() {
            let _ = writeln!(s, "  n{} -- n{};", self.vertex_of_dart[2 * k], self.vertex_of_dart[2 * k + 1]);
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the overlaid graph from the two Tait graphs of a diagram. Around
/// each crossing the four half-edges follow the crossing's slot order; around
/// each white vertex they follow the Tait graph's rotation. Star candidates
/// are ordered by universe edge.
pub fn overlay(pair: &TaitPair) -> OverlaidGraph {
    let n = pair.primal.graph().edge_count();
    let half = 2 * n;
    let black_orders: Vec<[usize; 4]> = (0..n)
        .map(|c| {
            let mut by_slot = [usize::MAX; 4];
            for d in [2 * c, 2 * c + 1] {
                by_slot[pair.primal_slot[d]] = d;
                by_slot[pair.dual_slot[d]] = half + d;
            }
            by_slot
        })
        .collect();
    let mut gh = OverlaidGraph::assemble(pair.primal.graph().clone(), pair.dual.graph().clone(), &black_orders)
        .expect("overlay of a Tait pair is a spherical quadrangulation");

    // the square of universe edge e contains the overlay dart pointing into
    // the corner counterclockwise of universe dart 2e
    let mut edge_of_corner = vec![0; 2 * half];
    for d in 0..half {
        edge_of_corner[pair.primal_corner[d]] = d;
        edge_of_corner[pair.dual_corner[d]] = half + d;
    }
    let rot = &pair.universe_rotation;
    gh.square_order = (0..half).map(|e| gh.map.face_of(2 * edge_of_corner[rot[2 * e]])).collect();
    debug_assert!({
        let mut s = gh.square_order.clone();
        s.sort_unstable();
        s == (0..half).collect::<Vec<_>>()
    });

    let np = pair.primal.graph().vertex_count();
    let mut origin = pair.primal_face.clone();
    origin.extend(&pair.dual_face);
    debug_assert_eq!(origin.len(), np + pair.dual.graph().vertex_count());
    gh.white_origin = Some(origin);
    gh
}

/// The face poset of the complex whose 1-skeleton is `g`, drawn in the
/// plane: 1-cells are black, 0-cells and 2-cells white, incidences are
/// edges (with multiplicity). `G*` is `g.dual()`, whose darts coincide
/// with those of `g`.
pub fn face_poset_of_map(g: &CombMap) -> OverlaidGraph {
    let n = g.edge_count();
    let half = 2 * n;
    // around the midpoint of edge c (dart y = 2c pointing east): tail of y,
    // face right of y, head of y, face left of y
    let black_orders: Vec<[usize; 4]> =
        (0..n).map(|c| [2 * c, half + 2 * c, 2 * c + 1, half + 2 * c + 1]).collect();
    OverlaidGraph::assemble(g.clone(), g.dual(), &black_orders)
        .expect("face poset of a spherical map is a spherical quadrangulation")
}

/// The two starred white vertices: `v0` a vertex of `G`, `f0` a vertex of
/// `G*`, lying on the common square `square`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StarPair {
    pub v0: usize,
    pub f0: usize,
    pub square: usize,
}

/// One candidate per square face, in the overlay's square order.
pub fn star_candidates(gh: &OverlaidGraph) -> Vec<StarPair> {
    let faces = gh.map.faces();
    gh.square_order
        .iter()
        .map(|&f| {
            let mut v0 = None;
            let mut f0 = None;
            for &d in faces[f].iter().filter(|&&d| d % 2 == 1) {
                match gh.vertex(gh.vertex_of_dart[d]) {
                    Vertex::Primal(p) => v0 = Some(p),
                    Vertex::Dual(q) => f0 = Some(q),
                    Vertex::Crossing(_) => unreachable!("white-end darts sit at white vertices"),
                }
            }
            StarPair {
                v0: v0.expect("every square has a vertex of G"),
                f0: f0.expect("every square has a vertex of G*"),
                square: f,
            }
        })
        .collect()
}
