//! Perfect matchings of the balanced graph, spanning trees of the Tait
//! graphs, and the bijection between them.
//!
//! Matchings are counted three ways: backtracking enumeration, an
//! exhaustive permanent expansion (small inputs only) and the Pfaffian
//! method on a Kasteleyn orientation. Spanning trees are counted with the
//! matrix-tree theorem. All arithmetic is exact.

pub mod det;

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::planar_map::CombMap;
use crate::tait_overlay::{BalancedGraph, Vertex};

/// Default cap on black vertices for [`count_matchings_bruteforce`].
pub const BRUTEFORCE_CAP: usize = 16;
/// Default cap on edges for [`enumerate_spanning_trees`].
pub const TREE_ENUMERATION_CAP: usize = 20;

/// A perfect matching, stored as the chosen edge at each black vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    /// Checks that `edges[b]` is an edge at black `b` and that every white
    /// vertex is covered exactly once.
    pub fn new(g: &BalancedGraph, edges: Vec<usize>) -> Result<Self> {
        if edges.len() != g.black_count() {
            return Err(Error::NotPerfect(format!("{} choices for {} blacks", edges.len(), g.black_count())));
        }
        let mut covered = vec![false; g.white_count()];
        for (b, &e) in edges.iter().enumerate() {
            if e >= g.edges().len() || g.edge(e).black != b {
                return Err(Error::NotPerfect(format!("edge {e} is not at black {b}")));
            }
            let w = g.edge(e).white;
            if covered[w] {
                return Err(Error::NotPerfect(format!("white {w} covered twice")));
            }
            covered[w] = true;
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn edge_at(&self, black: usize) -> usize {
        self.edges[black]
    }

    /// `[black, white, edge]` per black vertex.
    pub fn triples(&self, g: &BalancedGraph) -> Vec<[usize; 3]> {
        self.edges.iter().map(|&e| [g.edge(e).black, g.edge(e).white, e]).collect()
    }
}

/// All perfect matchings, lexicographic in the edge chosen at black 0, then
/// black 1, and so on. Stops after `limit` matchings when given.
pub fn enumerate_matchings(g: &BalancedGraph, limit: Option<usize>) -> Vec<Matching> {
    let n = g.black_count();
    let mut out = Vec::new();
    if limit == Some(0) || g.white_count() != n {
        return out;
    }
    let mut chosen = Vec::with_capacity(n);
    let mut used = vec![false; g.white_count()];
    let limit = limit.unwrap_or(usize::MAX);
    extend_matching(g, &mut chosen, &mut used, &mut out, limit);
    out
}

fn extend_matching(
    g: &BalancedGraph,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Matching>,
    limit: usize,
) -> bool {
    let b = chosen.len();
    if b == g.black_count() {
        out.push(Matching { edges: chosen.clone() });
        return out.len() < limit;
    }
    for &e in g.black_edges(b) {
        let w = g.edge(e).white;
        if used[w] {
            continue;
        }
        used[w] = true;
        chosen.push(e);
        let more = extend_matching(g, chosen, used, out, limit);
        chosen.pop();
        used[w] = false;
        if !more {
            return false;
        }
    }
    true
}

/// Number of perfect matchings by exhaustive expansion of the permanent.
pub fn count_matchings_bruteforce(g: &BalancedGraph) -> Result<BigUint> {
    count_matchings_bruteforce_with_cap(g, BRUTEFORCE_CAP)
}

pub fn count_matchings_bruteforce_with_cap(g: &BalancedGraph, cap: usize) -> Result<BigUint> {
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.black, e.white)).collect();
    permanent(g.black_count(), g.white_count(), &pairs, cap)
}

/// Permanent of the black-by-white multiplicity matrix given as an edge
/// list, by dynamic programming over subsets of whites.
pub fn permanent(blacks: usize, whites: usize, edges: &[(usize, usize)], cap: usize) -> Result<BigUint> {
    if blacks > cap {
        return Err(Error::CapExceeded { what: "black vertices", size: blacks, cap });
    }
    if blacks != whites {
        return Ok(BigUint::default());
    }
    let mut adj = vec![Vec::new(); blacks];
    for &(b, w) in edges {
        adj[b].push(w);
    }
    let mut ways = vec![BigUint::default(); 1 << whites];
    ways[0] = BigUint::from(1u8);
    for (b, nbrs) in adj.iter().enumerate() {
        let mut next = vec![BigUint::default(); 1 << whites];
        for mask in 0..ways.len() {
            if mask.count_ones() as usize != b || ways[mask] == BigUint::default() {
                continue;
            }
            for &w in nbrs {
                if mask & (1 << w) == 0 {
                    next[mask | (1 << w)] += &ways[mask];
                }
            }
        }
        ways = next;
    }
    Ok(ways.pop().expect("non-empty table"))
}

/// Direction of every edge of the balanced graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KasteleynOrientation {
    black_to_white: Vec<bool>,
}

impl KasteleynOrientation {
    pub fn points_black_to_white(&self, edge: usize) -> bool {
        self.black_to_white[edge]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.black_to_white
    }

    /// Clockwise-oriented edge count of each bounded face.
    pub fn clockwise_counts(&self, g: &BalancedGraph) -> Vec<usize> {
        g.bounded_faces()
            .iter()
            .map(|f| f.iter().filter(|&&(e, bw)| self.black_to_white[e] == bw).count())
            .collect()
    }

    /// Bounded faces with an even clockwise count.
    pub fn bad_faces(&self, g: &BalancedGraph) -> Vec<usize> {
        self.clockwise_counts(g)
            .iter()
            .enumerate()
            .filter(|&(_, c)| c % 2 == 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Orients a spanning forest black to white, then settles the remaining
/// edges one face at a time, always picking a face with a single unsettled
/// edge.
pub fn kasteleyn_orient(g: &BalancedGraph) -> KasteleynOrientation {
    let ne = g.edges().len();
    let n = g.black_count();
    let mut white_edges = vec![Vec::new(); g.white_count()];
    for (i, e) in g.edges().iter().enumerate() {
        white_edges[e.white].push(i);
    }
    let mut orient: Vec<Option<bool>> = vec![None; ne];

    // vertices: blacks 0..n, whites n..
    let mut seen = vec![false; n + g.white_count()];
    for root in 0..seen.len() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let incident = if v < n { g.black_edges(v) } else { &white_edges[v - n] };
            for &e in incident {
                let edge = g.edge(e);
                let u = if v < n { n + edge.white } else { edge.black };
                if !seen[u] {
                    seen[u] = true;
                    orient[e] = Some(true);
                    queue.push_back(u);
                }
            }
        }
    }

    let faces = g.bounded_faces();
    let mut settled = vec![false; faces.len()];
    loop {
        let mut progress = false;
        for (i, face) in faces.iter().enumerate() {
            if settled[i] {
                continue;
            }
            let open: Vec<usize> = face.iter().map(|&(e, _)| e).filter(|&e| orient[e].is_none()).collect();
            if open.len() > 1 {
                continue;
            }
            settled[i] = true;
            progress = true;
            if let [e] = open[..] {
                let cw = face.iter().filter(|&&(f, bw)| orient[f] == Some(bw)).count();
                let walked_bw = face.iter().find(|&&(f, _)| f == e).expect("edge on face").1;
                // make the total odd
                orient[e] = Some(if cw % 2 == 0 { walked_bw } else { !walked_bw });
            }
        }
        if !progress {
            break;
        }
    }
    KasteleynOrientation { black_to_white: orient.into_iter().map(|o| o.unwrap_or(true)).collect() }
}

/// Number of perfect matchings as `|det K|`, where `K` is the signed
/// black-by-white matrix of a Kasteleyn orientation.
pub fn count_matchings_fkt(g: &BalancedGraph) -> Result<BigUint> {
    let n = g.black_count();
    if g.white_count() != n {
        return Ok(BigUint::default());
    }
    let k = kasteleyn_orient(g);
    let bad = k.bad_faces(g);
    if !bad.is_empty() {
        return Err(Error::Invariant(format!("Kasteleyn condition fails on faces {bad:?}")));
    }
    let mut m = vec![vec![BigInt::default(); n]; n];
    for (i, e) in g.edges().iter().enumerate() {
        m[e.black][e.white] += if k.points_black_to_white(i) { 1 } else { -1 };
    }
    Ok(det::determinant(m).magnitude().clone())
}

/// Number of spanning trees by the matrix-tree theorem. Loops are ignored,
/// parallel edges counted separately.
pub fn count_spanning_trees(g: &CombMap) -> BigUint {
    let nv = g.vertex_count();
    let mut lap = vec![vec![BigInt::default(); nv]; nv];
    for e in (0..g.edge_count()).filter(|&e| !g.is_loop(e)) {
        let (u, v) = (g.vertex_of(2 * e), g.vertex_of(2 * e + 1));
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    let reduced: Vec<Vec<BigInt>> = lap.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    det::determinant(reduced).magnitude().clone()
}

/// A spanning tree as a sorted edge set, rooted for orientation purposes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpanningTree {
    pub edges: Vec<usize>,
    pub root: usize,
}

impl SpanningTree {
    pub fn new(g: &CombMap, mut edges: Vec<usize>, root: usize) -> Result<Self> {
        edges.sort_unstable();
        verify_spanning_tree(g, &edges)?;
        if root >= g.vertex_count() {
            return Err(Error::NotSpanningTree(format!("root {root} out of range")));
        }
        Ok(SpanningTree { edges, root })
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// Parent edge of each vertex when the tree hangs from its root.
    pub fn parent_edges(&self, g: &CombMap) -> Vec<Option<usize>> {
        let mut adj = vec![Vec::new(); g.vertex_count()];
        for &e in &self.edges {
            for d in [2 * e, 2 * e + 1] {
                adj[g.vertex_of(d)].push(d);
            }
        }
        let mut parent = vec![None; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        seen[self.root] = true;
        let mut queue = VecDeque::from([self.root]);
        while let Some(v) = queue.pop_front() {
            for &d in &adj[v] {
                let u = g.vertex_of(d ^ 1);
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(d / 2);
                    queue.push_back(u);
                }
            }
        }
        parent
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Checks that `edges` (distinct ids) form a spanning tree of `g`.
pub fn verify_spanning_tree(g: &CombMap, edges: &[usize]) -> Result<()> {
    let nv = g.vertex_count();
    if edges.len() + 1 != nv {
        return Err(Error::NotSpanningTree(format!("{} edges for {nv} vertices", edges.len())));
    }
    let mut uf = UnionFind::new(nv);
    for &e in edges {
        if e >= g.edge_count() {
            return Err(Error::NotSpanningTree(format!("edge {e} out of range")));
        }
        if g.is_loop(e) {
            return Err(Error::NotSpanningTree(format!("edge {e} is a loop")));
        }
        if !uf.union(g.vertex_of(2 * e), g.vertex_of(2 * e + 1)) {
            return Err(Error::NotSpanningTree(format!("edge {e} closes a cycle")));
        }
    }
    Ok(())
}

/// All spanning trees, in lexicographic order of their sorted edge lists.
pub fn enumerate_spanning_trees(g: &CombMap, root: usize, limit: Option<usize>) -> Result<Vec<SpanningTree>> {
    enumerate_spanning_trees_with_cap(g, root, limit, TREE_ENUMERATION_CAP)
}

pub fn enumerate_spanning_trees_with_cap(
    g: &CombMap,
    root: usize,
    limit: Option<usize>,
    cap: usize,
) -> Result<Vec<SpanningTree>> {
    if g.edge_count() > cap {
        return Err(Error::CapExceeded { what: "edges", size: g.edge_count(), cap });
    }
    let mut out = Vec::new();
    let limit = limit.unwrap_or(usize::MAX);
    if limit > 0 {
        let mut chosen = Vec::new();
        extend_tree(g, 0, &mut chosen, &UnionFind::new(g.vertex_count()), root, &mut out, limit);
    }
    Ok(out)
}

fn extend_tree(
    g: &CombMap,
    next: usize,
    chosen: &mut Vec<usize>,
    uf: &UnionFind,
    root: usize,
    out: &mut Vec<SpanningTree>,
    limit: usize,
) -> bool {
    let need = g.vertex_count() - 1 - chosen.len();
    if need == 0 {
        out.push(SpanningTree { edges: chosen.clone(), root });
        return out.len() < limit;
    }
    if g.edge_count() - next < need {
        return true;
    }
    let e = next;
    let mut with = UnionFind(uf.0.clone());
    if !g.is_loop(e) && with.union(g.vertex_of(2 * e), g.vertex_of(2 * e + 1)) {
        chosen.push(e);
        let more = extend_tree(g, next + 1, chosen, &with, root, out, limit);
        chosen.pop();
        if !more {
            return false;
        }
    }
    extend_tree(g, next + 1, chosen, uf, root, out, limit)
}

/// The tree pair of a perfect matching: `T` holds the crossings matched
/// into a vertex of `G`, `T*` the rest, read as edges of `G*`. Both are
/// checked to be spanning trees.
pub fn matching_to_tree(g: &BalancedGraph, m: &Matching) -> Result<(SpanningTree, SpanningTree)> {
    let m = Matching::new(g, m.edges.clone())?;
    let gh = g.overlaid();
    let mut primal = Vec::new();
    let mut dual = Vec::new();
    for (c, &e) in m.edges.iter().enumerate() {
        match gh.tait_dart(g.edge(e).hat_edge) {
            Ok(_) => primal.push(c),
            Err(_) => dual.push(c),
        }
    }
    let s = g.star();
    let t = SpanningTree::new(gh.primal(), primal, s.v0)
        .map_err(|e| Error::Invariant(format!("matching gave no spanning tree of G: {e}")))?;
    let ts = SpanningTree::new(gh.dual(), dual, s.f0)
        .map_err(|e| Error::Invariant(format!("matching gave no spanning tree of G*: {e}")))?;
    Ok((t, ts))
}

/// The perfect matching of a spanning tree of `G`: each vertex other than
/// `v0` takes the crossing of its parent edge, and likewise in the dual
/// tree of the complementary edges, hung from `f0`.
pub fn tree_to_matching(g: &BalancedGraph, t: &SpanningTree) -> Result<Matching> {
    let gh = g.overlaid();
    let s = g.star();
    verify_spanning_tree(gh.primal(), &t.edges)?;
    let t = SpanningTree { edges: t.edges.clone(), root: s.v0 };
    let complement: Vec<usize> = (0..gh.crossing_count()).filter(|&c| !t.contains(c)).collect();
    let ts = SpanningTree::new(gh.dual(), complement, s.f0)
        .map_err(|e| Error::Invariant(format!("complement is no spanning tree of G*: {e}")))?;

    let mut edges = vec![usize::MAX; gh.crossing_count()];
    let sides = [(gh.primal(), &t, true), (gh.dual(), &ts, false)];
    for (map, tree, is_primal) in sides {
        for (v, parent) in tree.parent_edges(map).into_iter().enumerate() {
            let Some(c) = parent else { continue };
            let d = [2 * c, 2 * c + 1]
                .into_iter()
                .find(|&d| map.vertex_of(d) == v)
                .expect("tree edge touches its child");
            let hat = if is_primal { gh.edge_of_primal_dart(d) } else { gh.edge_of_dual_dart(d) };
            let white = if is_primal { Vertex::Primal(v) } else { Vertex::Dual(v) };
            let e = g
                .edge_of_hat(hat)
                .ok_or_else(|| Error::Invariant(format!("{white:?} is starred but not a root")))?;
            edges[c] = e;
        }
    }
    Matching::new(g, edges).map_err(|e| Error::Invariant(format!("tree gave no perfect matching: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_io::{builtin_diagram, BUILTIN_NAMES};
    use crate::tait_overlay::{balance, overlay, star_candidates, tait_from_pd, TaitOptions};

    fn balanced_all(name: &str) -> Vec<BalancedGraph> {
        let (_, pair) = tait_from_pd(&builtin_diagram(name).unwrap(), TaitOptions::default()).unwrap();
        let gh = overlay(&pair);
        star_candidates(&gh).into_iter().map(|s| balance(&gh, s).unwrap()).collect()
    }

    fn triangle() -> CombMap {
        CombMap::spherical(vec![5, 2, 1, 4, 3, 0]).unwrap()
    }

    #[test]
    fn small_matching_counts() {
        for (name, want) in [("kink", 1usize), ("3_1", 3), ("4_1", 5)] {
            for g in balanced_all(name) {
                assert_eq!(enumerate_matchings(&g, None).len(), want, "{name}");
                assert_eq!(count_matchings_bruteforce(&g).unwrap(), BigUint::from(want));
                assert_eq!(count_matchings_fkt(&g).unwrap(), BigUint::from(want));
            }
        }
    }

    #[test]
    fn isolated_black_has_no_cover() {
        let p = permanent(2, 2, &[(0, 0), (0, 1)], BRUTEFORCE_CAP).unwrap();
        assert_eq!(p, BigUint::default());
        assert!(matches!(permanent(17, 17, &[], BRUTEFORCE_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn permanent_counts_parallel_edges() {
        // 2x2 all-ones with one doubled entry: 2*1 + 1*1
        let p = permanent(2, 2, &[(0, 0), (0, 0), (0, 1), (1, 0), (1, 1)], 4).unwrap();
        assert_eq!(p, BigUint::from(3u8));
    }

    #[test]
    fn enumeration_respects_limit_and_order() {
        let g = &balanced_all("4_1")[0];
        let all = enumerate_matchings(g, None);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(enumerate_matchings(g, Some(2)), all[..2].to_vec());
        assert!(enumerate_matchings(g, Some(0)).is_empty());
    }

    #[test]
    fn kasteleyn_orientation_is_valid_and_deterministic() {
        for name in BUILTIN_NAMES {
            for g in balanced_all(name) {
                let k = kasteleyn_orient(&g);
                assert!(k.bad_faces(&g).is_empty(), "{name}");
                assert_eq!(k, kasteleyn_orient(&g));
            }
        }
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(count_spanning_trees(&triangle()), BigUint::from(3u8));
        assert_eq!(count_spanning_trees(&triangle().dual()), BigUint::from(3u8));
        let loop_map = CombMap::spherical(vec![1, 0]).unwrap();
        assert_eq!(loop_map.vertex_count(), 1);
        assert_eq!(count_spanning_trees(&loop_map), BigUint::from(1u8));
    }

    #[test]
    fn triangle_trees_each_omit_one_edge() {
        let trees = enumerate_spanning_trees(&triangle(), 0, None).unwrap();
        let sets: Vec<Vec<usize>> = trees.into_iter().map(|t| t.edges).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn tree_cap() {
        let err = enumerate_spanning_trees_with_cap(&triangle(), 0, None, 2).unwrap_err();
        assert_eq!(err, Error::CapExceeded { what: "edges", size: 3, cap: 2 });
    }

    #[test]
    fn bijection_round_trips_on_trefoil() {
        for g in balanced_all("3_1") {
            let ms = enumerate_matchings(&g, None);
            let mut images = Vec::new();
            for m in &ms {
                let (t, ts) = matching_to_tree(&g, m).unwrap();
                assert_eq!(t.edges.len() + ts.edges.len(), 3);
                assert_eq!(&tree_to_matching(&g, &t).unwrap(), m);
                images.push(t.edges);
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len(), 3);
        }
    }

    #[test]
    fn kink_tree_pair() {
        let g = &balanced_all("kink")[0];
        let m = &enumerate_matchings(g, None)[0];
        let (t, ts) = matching_to_tree(g, m).unwrap();
        let total = t.edges.len() + ts.edges.len();
        assert_eq!(total, 1);
    }

    #[test]
    fn non_tree_rejected() {
        let g = &balanced_all("3_1")[0];
        let bad = SpanningTree { edges: vec![0, 1, 2], root: 0 };
        assert!(matches!(tree_to_matching(g, &bad), Err(Error::NotSpanningTree(_))));
    }
}
