//! Cell complexes of the sphere and discrete Morse functions on them.
//!
//! A complex is given by its 1-skeleton as a spherical rotation system:
//! 0-cells are vertices, 1-cells edges, 2-cells faces. Cells get global ids,
//! 0-cells first, then 1-cells, then 2-cells.
//!
//! A perfect matching of the balanced face poset pairs every 1-cell with a
//! 0-cell or a 2-cell, leaving exactly the starred `v0` and `f0` unpaired.
//! [`matching_to_morse`] turns such a pairing into an integer function
//! whose paired cells share a value.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagram_io::PdCode;
use crate::dimers_trees::{enumerate_matchings, Matching};
use crate::error::{Error, Result};
use crate::planar_map::{CombMap, MapJson};
use crate::tait_overlay::{
    diagram_from_tait, face_poset_of_map, tait_from_pd, BalancedGraph, OverlaidGraph, Sign, SignedTaitGraph,
    TaitOptions,
};

/// A 2-complex of the sphere with incidences counted with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex2 {
    map: CombMap,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
}

/// Builds the complex whose 1-skeleton is `map`.
pub fn complex_from_map(map: &CombMap) -> Result<Complex2> {
    if !map.is_spherical() {
        return Err(Error::NonRealizable { euler: map.euler_characteristic() });
    }
    let (nv, ne, nf) = (map.vertex_count(), map.edge_count(), map.face_count());
    let mut facets = vec![Vec::new(); nv + ne + nf];
    for e in 0..ne {
        facets[nv + e] = vec![map.vertex_of(2 * e), map.vertex_of(2 * e + 1)];
    }
    for (f, darts) in map.faces().iter().enumerate() {
        facets[nv + ne + f] = darts.iter().map(|&d| nv + d / 2).collect();
    }
    let mut cofacets = vec![Vec::new(); facets.len()];
    for (c, fs) in facets.iter().enumerate() {
        for &s in fs {
            cofacets[s].push(c);
        }
    }
    Ok(Complex2 { map: map.clone(), facets, cofacets })
}

impl Complex2 {
    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn cell_count(&self) -> usize {
        self.facets.len()
    }

    /// Cells per dimension.
    pub fn counts(&self) -> [usize; 3] {
        [self.map.vertex_count(), self.map.edge_count(), self.map.face_count()]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let [v, e, f] = self.counts();
        v as i64 - e as i64 + f as i64
    }

    pub fn vertex_cell(&self, v: usize) -> usize {
        v
    }

    pub fn edge_cell(&self, e: usize) -> usize {
        self.map.vertex_count() + e
    }

    pub fn face_cell(&self, f: usize) -> usize {
        self.map.vertex_count() + self.map.edge_count() + f
    }

    pub fn dim(&self, cell: usize) -> usize {
        let [v, e, _] = self.counts();
        if cell < v {
            0
        } else if cell < v + e {
            1
        } else {
            2
        }
    }

    /// Index of `cell` among the cells of its dimension.
    pub fn local_index(&self, cell: usize) -> usize {
        let [v, e, _] = self.counts();
        match self.dim(cell) {
            0 => cell,
            1 => cell - v,
            _ => cell - v - e,
        }
    }

    /// Codimension-one faces of `cell`, repeated by multiplicity.
    pub fn facets(&self, cell: usize) -> &[usize] {
        &self.facets[cell]
    }

    pub fn cofacets(&self, cell: usize) -> &[usize] {
        &self.cofacets[cell]
    }
}

/// The face poset of `d` drawn in the plane.
pub fn face_poset(d: &Complex2) -> OverlaidGraph {
    face_poset_of_map(d.map())
}

/// A partial matching on the Hasse diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HassePairing {
    partner: Vec<Option<usize>>,
}

impl HassePairing {
    pub fn empty(d: &Complex2) -> Self {
        HassePairing { partner: vec![None; d.cell_count()] }
    }

    /// Pairs `(lower, upper)`; each must be an incidence one dimension apart,
    /// and no cell may appear twice.
    pub fn from_pairs(d: &Complex2, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut p = Self::empty(d);
        for &(lo, hi) in pairs {
            if hi >= d.cell_count() || !d.facets(hi).contains(&lo) {
                return Err(Error::Input(format!("cell {lo} is not a facet of cell {hi}")));
            }
            if p.partner[lo].is_some() || p.partner[hi].is_some() {
                return Err(Error::Input(format!("pair ({lo}, {hi}) reuses a cell")));
            }
            p.partner[lo] = Some(hi);
            p.partner[hi] = Some(lo);
        }
        Ok(p)
    }

    pub fn partner(&self, cell: usize) -> Option<usize> {
        self.partner[cell]
    }

    /// `(lower, upper)` pairs ordered by lower cell.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(c, &p)| p.filter(|&q| q > c).map(|q| (c, q)))
            .collect()
    }

    pub fn critical(&self) -> Vec<usize> {
        (0..self.partner.len()).filter(|&c| self.partner[c].is_none()).collect()
    }
}

/// Arcs of the Hasse diagram with paired relations reversed. An incidence
/// of multiplicity two contributes one reversed and one ordinary arc.
fn modified_arcs(d: &Complex2, p: &HassePairing) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); d.cell_count()];
    for hi in 0..d.cell_count() {
        let mut reversed = false;
        for &lo in d.facets(hi) {
            if !reversed && p.partner(lo) == Some(hi) {
                reversed = true;
                out[lo].push(hi);
            } else {
                out[hi].push(lo);
            }
        }
    }
    out
}

/// True iff the modified Hasse digraph has no directed cycle.
pub fn acyclic_check(d: &Complex2, p: &HassePairing) -> bool {
    let arcs = modified_arcs(d, p);
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; arcs.len()];
    for root in 0..arcs.len() {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&u) = arcs[v].get(*i) {
                *i += 1;
                match state[u] {
                    0 => {
                        state[u] = 1;
                        stack.push((u, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    true
}

/// Integer values on the cells of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MorseFunction {
    pub values: Vec<i64>,
}

impl MorseFunction {
    pub fn constant(d: &Complex2, value: i64) -> Self {
        MorseFunction { values: vec![value; d.cell_count()] }
    }

    pub fn value(&self, cell: usize) -> i64 {
        self.values[cell]
    }
}

/// How a cell sits with respect to a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    /// Paired with a cofacet.
    PairedUp,
    /// Paired with a facet.
    PairedDown,
    Critical,
    /// Breaks the local conditions.
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub cell: usize,
    pub dim: usize,
    pub value: i64,
    /// Facets (with multiplicity) whose value is at least the cell's.
    pub high_facets: usize,
    /// Cofacets (with multiplicity) whose value is at most the cell's.
    pub low_cofacets: usize,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorseReport {
    pub cells: Vec<CellReport>,
    pub valid: bool,
    pub critical: Vec<usize>,
}

/// Checks the local conditions: at most one facet at or above and at most
/// one cofacet at or below each cell, and never one of each.
pub fn validate_morse(d: &Complex2, f: &MorseFunction) -> MorseReport {
    assert_eq!(f.values.len(), d.cell_count(), "function must be total on the cells");
    let cells: Vec<CellReport> = (0..d.cell_count())
        .map(|c| {
            let v = f.value(c);
            let high_facets = d.facets(c).iter().filter(|&&s| f.value(s) >= v).count();
            let low_cofacets = d.cofacets(c).iter().filter(|&&t| f.value(t) <= v).count();
            let status = match (high_facets, low_cofacets) {
                (0, 0) => CellStatus::Critical,
                (0, 1) => CellStatus::PairedUp,
                (1, 0) => CellStatus::PairedDown,
                _ => CellStatus::Invalid,
            };
            CellReport { cell: c, dim: d.dim(c), value: v, high_facets, low_cofacets, status }
        })
        .collect();
    let valid = cells.iter().all(|r| r.status != CellStatus::Invalid);
    let critical = cells.iter().filter(|r| r.status == CellStatus::Critical).map(|r| r.cell).collect();
    MorseReport { cells, valid, critical }
}

/// The pairing a perfect matching induces on `d`. `g` must be balanced from
/// [`face_poset`] of `d`.
pub fn matching_to_pairing(d: &Complex2, g: &BalancedGraph, m: &Matching) -> Result<HassePairing> {
    let gh = g.overlaid();
    if gh.primal() != d.map() || *gh.dual() != d.map().dual() {
        return Err(Error::Input("balanced graph was not built from this complex".into()));
    }
    let m = Matching::new(g, m.edges().to_vec())?;
    let mut p = HassePairing::empty(d);
    for (c, &e) in m.edges().iter().enumerate() {
        let cell = d.edge_cell(c);
        let other = match gh.tait_dart(g.edge(e).hat_edge) {
            Ok(dart) => d.vertex_cell(d.map().vertex_of(dart)),
            Err(dart) => d.face_cell(d.map().face_of(dart)),
        };
        p.partner[cell] = Some(other);
        p.partner[other] = Some(cell);
    }
    Ok(p)
}

/// Values from a topological order of the modified Hasse digraph with each
/// pair merged into one node, sinks first. Paired cells share a value.
pub fn morse_from_pairing(d: &Complex2, p: &HassePairing) -> Result<MorseFunction> {
    let n = d.cell_count();
    let node = |c: usize| p.partner(c).map_or(c, |q| q.min(c));
    let mut preds = vec![Vec::new(); n];
    let mut out_deg = vec![0usize; n];
    for (v, arcs) in modified_arcs(d, p).iter().enumerate() {
        for &u in arcs {
            let (a, b) = (node(v), node(u));
            if a != b {
                out_deg[a] += 1;
                preds[b].push(a);
            } else if p.partner(v) != Some(u) {
                return Err(Error::Invariant(format!("cells {v} and {u} form a cycle")));
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&c| node(c) == c && out_deg[c] == 0).map(Reverse).collect();
    let mut level = vec![None; n];
    let mut next = 0i64;
    while let Some(Reverse(a)) = ready.pop() {
        level[a] = Some(next);
        next += 1;
        for &b in &preds[a] {
            out_deg[b] -= 1;
            if out_deg[b] == 0 {
                ready.push(Reverse(b));
            }
        }
    }
    let values = (0..n)
        .map(|c| level[node(c)].ok_or_else(|| Error::Invariant("modified Hasse digraph has a cycle".into())))
        .collect::<Result<_>>()?;
    Ok(MorseFunction { values })
}

/// Pairing and function of one perfect matching. The function is checked
/// before it is returned; a failure is an internal error.
pub fn matching_to_morse(d: &Complex2, g: &BalancedGraph, m: &Matching) -> Result<(HassePairing, MorseFunction)> {
    let p = matching_to_pairing(d, g, m)?;
    let f = morse_from_pairing(d, &p)?;
    let report = validate_morse(d, &f);
    let s = g.star();
    let expect = vec![d.vertex_cell(s.v0), d.face_cell(s.f0)];
    if !report.valid || report.critical != expect {
        return Err(Error::Invariant(format!(
            "matching gave critical cells {:?}, expected {expect:?}",
            report.critical
        )));
    }
    Ok((p, f))
}

/// One function per perfect matching, in matching enumeration order.
pub fn enumerate_morse(d: &Complex2, g: &BalancedGraph, limit: Option<usize>) -> Result<Vec<MorseFunction>> {
    enumerate_matchings(g, limit).iter().map(|m| matching_to_morse(d, g, m).map(|(_, f)| f)).collect()
}

/// The diagram whose Tait graph is the 1-skeleton of `d` with the given
/// edge signs.
pub fn knot_from_complex(d: &Complex2, signs: &[Sign]) -> Result<PdCode> {
    let g = SignedTaitGraph::new(d.map().clone(), signs.to_vec())?;
    Ok(diagram_from_tait(&g))
}

/// Inverse of [`knot_from_complex`]: the complex on the Tait graph whose
/// crossing 0 has the sign `sign0`.
pub fn complex_from_diagram(code: &PdCode, sign0: Sign) -> Result<(Complex2, Vec<Sign>)> {
    // under the default coloring crossing 0 always reads positive
    let opts = TaitOptions { swap_colors: sign0 == Sign::Negative, flip_signs: false };
    let (_, pair) = tait_from_pd(code, opts)?;
    Ok((complex_from_map(pair.primal.graph())?, pair.primal.signs().to_vec()))
}

/// Complex input file: a map dump, optionally with one sign (+1 or -1)
/// per edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub dart_count: usize,
    pub pairing: Vec<usize>,
    pub rotation: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
}

impl ComplexFile {
    pub fn from_complex(d: &Complex2, signs: Option<&[Sign]>) -> Self {
        let j = d.map().to_json();
        ComplexFile {
            dart_count: j.dart_count,
            pairing: j.pairing,
            rotation: j.rotation,
            signs: signs.map(|s| s.iter().map(|x| x.as_i8()).collect()),
        }
    }

    /// The complex and its signs (all positive when absent).
    pub fn load(&self) -> Result<(Complex2, Vec<Sign>)> {
        let json = MapJson {
            dart_count: self.dart_count,
            pairing: self.pairing.clone(),
            rotation: self.rotation.clone(),
            faces: None,
        };
        let d = complex_from_map(&CombMap::from_json(&json)?)?;
        let signs = match &self.signs {
            None => vec![Sign::Positive; d.counts()[1]],
            Some(s) => s
                .iter()
                .map(|&x| match x {
                    1 => Ok(Sign::Positive),
                    -1 => Ok(Sign::Negative),
                    _ => Err(Error::Input(format!("sign {x} is not +1 or -1"))),
                })
                .collect::<Result<_>>()?,
        };
        if signs.len() != d.counts()[1] {
            return Err(Error::SignCount { got: signs.len(), expected: d.counts()[1] });
        }
        Ok((d, signs))
    }
}

pub fn parse_complex(text: &str) -> Result<(Complex2, Vec<Sign>)> {
    serde_json::from_str::<ComplexFile>(text)?.load()
}

/// Per-cell records `{cell, dim, value, status}`.
pub fn morse_to_json(d: &Complex2, f: &MorseFunction) -> serde_json::Value {
    let report = validate_morse(d, f);
    serde_json::json!({
        "valid": report.valid,
        "critical": report.critical,
        "cells": report.cells.iter().map(|r| serde_json::json!({
            "cell": r.cell,
            "dim": r.dim,
            "value": r.value,
            "status": r.status,
        })).collect::<Vec<_>>(),
    })
}

/// Hasse diagram, arcs from each cell down to its facets; matched arcs are
/// reversed and drawn bold.
pub fn hasse_dot(d: &Complex2, p: &HassePairing) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
    let names = ["v", "e", "f"];
    for c in 0..d.cell_count() {
        let name = format!("{}{}", names[d.dim(c)], d.local_index(c));
        let extra = if p.partner(c).is_none() { ", peripheries=2" } else { "" };
        let _ = writeln!(s, "  c{c} [label=\"{name}\"{extra}];");
    }
    for (from, arcs) in modified_arcs(d, p).iter().enumerate() {
        for &to in arcs {
            let style = if p.partner(from) == Some(to) { " [color=red, penwidth=2]" } else { "" };
            let _ = writeln!(s, "  c{from} -> c{to}{style};");
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_io::builtin_diagram;
    use crate::tait_overlay::{balance, overlay, star_candidates};

    fn triangle() -> CombMap {
        CombMap::spherical(vec![5, 2, 1, 4, 3, 0]).unwrap()
    }

    fn balanced_from(d: &Complex2) -> Vec<BalancedGraph> {
        let gh = face_poset(d);
        star_candidates(&gh).into_iter().map(|s| balance(&gh, s).unwrap()).collect()
    }

    #[test]
    fn small_complexes() {
        let d = complex_from_map(&triangle()).unwrap();
        assert_eq!(d.counts(), [3, 3, 2]);
        assert_eq!(d.euler_characteristic(), 2);
        let seg = complex_from_map(&CombMap::spherical(vec![0, 1]).unwrap()).unwrap();
        assert_eq!(seg.counts(), [2, 1, 1]);
        // the one face of a segment sees its edge twice
        assert_eq!(seg.facets(seg.face_cell(0)), &[seg.edge_cell(0), seg.edge_cell(0)]);
    }

    #[test]
    fn kink_complex() {
        let (_, pair) = tait_from_pd(&builtin_diagram("kink").unwrap(), TaitOptions::default()).unwrap();
        let d = complex_from_map(pair.primal.graph()).unwrap();
        let gh = overlay(&pair);
        assert_eq!(d.counts(), [pair.primal.graph().vertex_count(), 1, pair.dual.graph().vertex_count()]);
        assert!(face_poset(&d).is_isomorphic(&gh));
        let g = &balanced_from(&d)[0];
        let fs = enumerate_morse(&d, g, None).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(validate_morse(&d, &fs[0]).critical.len(), 2);
    }

    #[test]
    fn double_triangle_functions() {
        let d = complex_from_map(&triangle()).unwrap();
        for g in balanced_from(&d) {
            let ms = enumerate_matchings(&g, None);
            assert_eq!(ms.len(), 3);
            let mut pairings = Vec::new();
            for m in &ms {
                let (p, f) = matching_to_morse(&d, &g, m).unwrap();
                assert!(acyclic_check(&d, &p));
                let s = g.star();
                assert_eq!(p.critical(), vec![d.vertex_cell(s.v0), d.face_cell(s.f0)]);
                let min = *f.values.iter().min().unwrap();
                assert_eq!(f.values.iter().filter(|&&v| v == min).count(), 1);
                assert_eq!(f.value(d.vertex_cell(s.v0)), min);
                pairings.push(p.pairs());
            }
            pairings.sort();
            pairings.dedup();
            assert_eq!(pairings.len(), 3);
        }
    }

    #[test]
    fn constant_function_is_invalid() {
        let d = complex_from_map(&triangle()).unwrap();
        let report = validate_morse(&d, &MorseFunction::constant(&d, 0));
        assert!(!report.valid);
        let e = d.edge_cell(0);
        assert_eq!(report.cells[e].high_facets, 2);
    }

    #[test]
    fn empty_pairing_is_acyclic() {
        let d = complex_from_map(&triangle()).unwrap();
        assert!(acyclic_check(&d, &HassePairing::empty(&d)));
    }

    #[test]
    fn closed_path_on_dipole_is_cyclic() {
        let d = complex_from_map(&triangle().dual()).unwrap();
        assert_eq!(d.counts(), [2, 3, 3]);
        // walk the edge/face incidence cycle, pairing each edge with the
        // next face
        let mut pairs = Vec::new();
        let mut face = d.face_cell(0);
        let mut edge = d.facets(face)[0];
        for _ in 0..3 {
            pairs.push((edge, face));
            edge = *d.facets(face).iter().find(|&&e| e != edge).unwrap();
            face = *d.cofacets(edge).iter().find(|&&f| f != face).unwrap();
        }
        let p = HassePairing::from_pairs(&d, &pairs).unwrap();
        assert!(!acyclic_check(&d, &p));
        assert!(morse_from_pairing(&d, &p).is_err());
    }

    #[test]
    fn pairing_checks_incidence() {
        let d = complex_from_map(&triangle()).unwrap();
        assert!(HassePairing::from_pairs(&d, &[(0, d.face_cell(0))]).is_err());
    }

    #[test]
    fn knot_from_double_triangle_is_trefoil() {
        let d = complex_from_map(&triangle()).unwrap();
        let code = knot_from_complex(&d, &[Sign::Positive; 3]).unwrap();
        let (u, pair) = tait_from_pd(&code, TaitOptions::default()).unwrap();
        let (u_ref, _) = tait_from_pd(&builtin_diagram("3_1").unwrap(), TaitOptions::default()).unwrap();
        assert!(u.map().is_isomorphic(u_ref.map()));
        assert!(pair.primal.signs().iter().all(|&s| s == Sign::Positive));
        let (back, _) = complex_from_diagram(&code, Sign::Positive).unwrap();
        assert!(back.map().is_isomorphic(d.map()));

        let gh = overlay(&pair);
        let [v, e, f] = d.counts();
        assert_eq!((pair.primal.graph().vertex_count(), gh.crossing_count(), pair.dual.graph().vertex_count()), (v, e, f));
    }

    #[test]
    fn negative_signs_give_mirror() {
        let d = complex_from_map(&triangle()).unwrap();
        let plus = knot_from_complex(&d, &[Sign::Positive; 3]).unwrap();
        let minus = knot_from_complex(&d, &[Sign::Negative; 3]).unwrap();
        let (u1, _) = tait_from_pd(&plus, TaitOptions::default()).unwrap();
        let (u2, _) = tait_from_pd(&minus, TaitOptions::default()).unwrap();
        assert!(u1.map().is_isomorphic(u2.map()));
        let (back, signs) = complex_from_diagram(&minus, Sign::Negative).unwrap();
        assert!(back.map().is_isomorphic(d.map()));
        assert!(signs.iter().all(|&s| s == Sign::Negative));
    }

    #[test]
    fn complex_file_round_trip() {
        let d = complex_from_map(&triangle()).unwrap();
        let signs = [Sign::Positive, Sign::Negative, Sign::Positive];
        let text = serde_json::to_string(&ComplexFile::from_complex(&d, Some(&signs))).unwrap();
        let (d2, s2) = parse_complex(&text).unwrap();
        assert_eq!(d2, d);
        assert_eq!(s2, signs);
        assert!(matches!(parse_complex("{\"dart_count\": 2}"), Err(Error::Input(_))));
    }

    #[test]
    fn json_statuses() {
        let d = complex_from_map(&triangle()).unwrap();
        let g = &balanced_from(&d)[0];
        let f = &enumerate_morse(&d, g, Some(1)).unwrap()[0];
        let j = morse_to_json(&d, f);
        let statuses: Vec<&str> = j["cells"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
        assert_eq!(statuses.iter().filter(|&&s| s == "critical").count(), 2);
        assert_eq!(statuses.iter().filter(|&&s| s == "paired-up").count(), 3);
        assert_eq!(statuses.iter().filter(|&&s| s == "paired-down").count(), 3);
    }
}
