use std::fmt::Write as _;

use serde::Serialize;

use super::overlay::{star_candidates, OverlaidGraph, StarPair, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GammaVertex {
    Black(usize),
    White(usize),
}

/// Edge of the balanced graph; `hat_edge` is the overlay edge it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaEdge {
    pub black: usize,
    pub white: usize,
    pub hat_edge: usize,
}

/// The overlaid graph with the two starred white vertices deleted.
///
/// Black vertex `b` is crossing `b`. White vertices are the surviving white
/// vertices of the overlay in index order. Edges keep overlay order, so the
/// edges at a black vertex are listed in increasing id.
#[derive(Debug, Clone)]
pub struct BalancedGraph {
    overlaid: OverlaidGraph,
    star: StarPair,
    whites: Vec<usize>,
    edges: Vec<GammaEdge>,
    edge_of_hat: Vec<Option<usize>>,
    black_adj: Vec<Vec<usize>>,
    bounded_faces: Vec<Vec<(usize, bool)>>,
    periphery: Vec<GammaVertex>,
    black_on_periphery: Vec<bool>,
    white_on_periphery: Vec<bool>,
}

/// Deletes the starred pair. The pair must be one of [`star_candidates`];
/// non-adjacent critical pairs are rejected.
pub fn balance(gh: &OverlaidGraph, star: StarPair) -> Result<BalancedGraph> {
    if !star_candidates(gh).contains(&star) {
        return Err(Error::NotStarCandidate);
    }
    let n = gh.crossing_count();
    let starred = [gh.index_of(Vertex::Primal(star.v0)), gh.index_of(Vertex::Dual(star.f0))];

    let mut white_of_hat = vec![None; gh.vertex_count()];
    let mut whites = Vec::with_capacity(n);
    for i in n..gh.vertex_count() {
        if !starred.contains(&i) {
            white_of_hat[i] = Some(whites.len());
            whites.push(i);
        }
    }
    if whites.len() != n {
        return Err(Error::Invariant(format!("{} whites against {n} blacks", whites.len())));
    }

    let mut edges = Vec::new();
    let mut edge_of_hat = vec![None; gh.edge_count()];
    let mut black_adj = vec![Vec::new(); n];
    for k in 0..gh.edge_count() {
        if let Some(w) = white_of_hat[gh.vertex_index(2 * k + 1)] {
            let b = gh.vertex_index(2 * k);
            edge_of_hat[k] = Some(edges.len());
            black_adj[b].push(edges.len());
            edges.push(GammaEdge { black: b, white: w, hat_edge: k });
        }
    }

    let map = gh.map();
    let touches_star = |face: &[usize]| face.iter().any(|&d| starred.contains(&gh.vertex_index(d)));
    let faces = map.faces();
    let bounded_faces = faces
        .iter()
        .filter(|f| !touches_star(f))
        .map(|f| f.iter().map(|&d| (edge_of_hat[d / 2].expect("kept edge"), d % 2 == 0)).collect())
        .collect();

    // periphery: faces of the restricted rotation through darts whose
    // overlay face touches a star
    let kept = |d: usize| edge_of_hat[d / 2].is_some();
    let next_kept = |d: usize| {
        let mut e = map.rotate(d);
        while !kept(e) {
            e = map.rotate(e);
        }
        e
    };
    let mut outer_seen = vec![false; map.dart_count()];
    let mut periphery = Vec::new();
    let mut black_on_periphery = vec![false; n];
    let mut white_on_periphery = vec![false; n];
    let as_gamma = |d: usize| {
        let i = gh.vertex_index(d);
        if i < n {
            GammaVertex::Black(i)
        } else {
            GammaVertex::White(white_of_hat[i].expect("kept dart at a kept vertex"))
        }
    };
    for start in 0..map.dart_count() {
        if !kept(start) || outer_seen[start] || !touches_star(&faces[map.face_of(start)]) {
            continue;
        }
        let mut d = start;
        while !outer_seen[d] {
            outer_seen[d] = true;
            let v = as_gamma(d);
            match v {
                GammaVertex::Black(b) => black_on_periphery[b] = true,
                GammaVertex::White(w) => white_on_periphery[w] = true,
            }
            periphery.push(v);
            d = next_kept(d ^ 1);
        }
    }
    for (b, adj) in black_adj.iter().enumerate() {
        if adj.is_empty() {
            black_on_periphery[b] = true;
        }
    }
    for w in 0..n {
        if !edges.iter().any(|e| e.white == w) {
            white_on_periphery[w] = true;
        }
    }

    Ok(BalancedGraph {
        overlaid: gh.clone(),
        star,
        whites,
        edges,
        edge_of_hat,
        black_adj,
        bounded_faces,
        periphery,
        black_on_periphery,
        white_on_periphery,
    })
}

impl BalancedGraph {
    pub fn overlaid(&self) -> &OverlaidGraph {
        &self.overlaid
    }

    pub fn star(&self) -> StarPair {
        self.star
    }

    pub fn black_count(&self) -> usize {
        self.black_adj.len()
    }

    pub fn white_count(&self) -> usize {
        self.whites.len()
    }

    pub fn edges(&self) -> &[GammaEdge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> GammaEdge {
        self.edges[id]
    }

    /// Edge ids at black vertex `b`, increasing.
    pub fn black_edges(&self, b: usize) -> &[usize] {
        &self.black_adj[b]
    }

    /// Balanced-graph edge for an overlay edge, if it survived.
    pub fn edge_of_hat(&self, hat_edge: usize) -> Option<usize> {
        self.edge_of_hat[hat_edge]
    }

    /// What white vertex `w` is in the overlay.
    pub fn white_vertex(&self, w: usize) -> Vertex {
        self.overlaid.vertex(self.whites[w])
    }

    pub fn white_of(&self, v: Vertex) -> Option<usize> {
        let i = self.overlaid.index_of(v);
        self.whites.iter().position(|&x| x == i)
    }

    /// Bounded faces as `(edge, walked black-to-white)` lists. Each walk
    /// goes clockwise around its face.
    pub fn bounded_faces(&self) -> &[Vec<(usize, bool)>] {
        &self.bounded_faces
    }

    /// Boundary walk of the infinite face.
    pub fn periphery(&self) -> &[GammaVertex] {
        &self.periphery
    }

    pub fn is_on_periphery(&self, v: GammaVertex) -> bool {
        match v {
            GammaVertex::Black(b) => self.black_on_periphery[b],
            GammaVertex::White(w) => self.white_on_periphery[w],
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let whites: Vec<Vertex> = (0..self.white_count()).map(|w| self.white_vertex(w)).collect();
        serde_json::json!({
            "star": self.star,
            "blacks": self.black_count(),
            "whites": whites,
            "edges": self.edges.iter().enumerate()
                .map(|(i, e)| serde_json::json!({"id": i, "black": e.black, "white": e.white, "overlay_edge": e.hat_edge}))
                .collect::<Vec<_>>(),
            "periphery": self.periphery,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph balanced {\n");
        for b in 0..self.black_count() {
            let _ = writeln!(s, "  b{b} [shape=circle, style=filled, fillcolor=black, fontcolor=white];");
        }
        for w in 0..self.white_count() {
            let shape = match self.white_vertex(w) {
                Vertex::Dual(_) => "square",
                _ => "circle",
            };
            let _ = writeln!(s, "  w{w} [shape={shape}];");
        }
        for (i, e) in self.edges.iter().enumerate() {
            let _ = writeln!(s, "  b{} -- w{} [label=\"{i}\"];", e.black, e.white);
        }
        s.push_str("}\n");
        s
    }
}
