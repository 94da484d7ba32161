//! Combinatorial maps (rotation systems) on the sphere.
//!
//! A map with `m` edges has `2m` darts. Dart `d` and `d ^ 1` are the two
//! halves of edge `d / 2`. The rotation sends a dart to its counterclockwise
//! successor around its vertex. Faces are the orbits of
//! `phi(d) = rotation(d ^ 1)`; walking along a face orbit keeps the face on
//! the right, so `face_of(d)` is the face just clockwise of `d` at its tail.
//!
//! All orbit numberings start from the lowest dart id, so vertex 0 and face 0
//! both contain dart 0.

use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagram_io::PdCode;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombMap {
    rotation: Vec<usize>,
    rotation_inv: Vec<usize>,
    vertex_of: Vec<usize>,
    face_of: Vec<usize>,
    vertex_count: usize,
    face_count: usize,
}

/// Labels each element of `0..n` with its orbit index under `step`, orbits
/// numbered by their smallest element.
fn orbit_labels(n: usize, step: impl Fn(usize) -> usize) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        while label[d] == usize::MAX {
            label[d] = count;
            d = step(d);
        }
        count += 1;
    }
    (label, count)
}

fn orbit_lists(n: usize, step: impl Fn(usize) -> usize, label: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); count];
    for start in 0..n {
        let l = label[start];
        if out[l].is_empty() {
            let mut d = start;
            loop {
                out[l].push(d);
                d = step(d);
                if d == start {
                    break;
                }
            }
        }
    }
    out
}

impl CombMap {
    /// Builds a map from its rotation permutation. The edge pairing is fixed
    /// to `d <-> d ^ 1`. Rejects empty, odd-sized, non-permutation and
    /// disconnected inputs; sphericity is a separate check.
    pub fn from_rotation(rotation: Vec<usize>) -> Result<Self> {
        let n = rotation.len();
        if n == 0 {
            return Err(Error::InvalidMap("no darts".into()));
        }
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidMap(format!("odd dart count {n}")));
        }
        let mut rotation_inv = vec![usize::MAX; n];
        for (d, &r) in rotation.iter().enumerate() {
            if r >= n || rotation_inv[r] != usize::MAX {
                return Err(Error::InvalidMap("rotation is not a permutation".into()));
            }
            rotation_inv[r] = d;
        }
        let (vertex_of, vertex_count) = orbit_labels(n, |d| rotation[d]);
        let (face_of, face_count) = orbit_labels(n, |d| rotation[d ^ 1]);
        let map = CombMap { rotation, rotation_inv, vertex_of, face_of, vertex_count, face_count };
        if !map.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(map)
    }

    /// Like [`CombMap::from_rotation`], additionally requiring `V - E + F = 2`.
    pub fn spherical(rotation: Vec<usize>) -> Result<Self> {
        let map = Self::from_rotation(rotation)?;
        if !map.is_spherical() {
            return Err(Error::NonRealizable { euler: map.euler_characteristic() });
        }
        Ok(map)
    }

    fn is_connected(&self) -> bool {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(d) = stack.pop() {
            for e in [self.rotation[d], d ^ 1] {
                if !seen[e] {
                    seen[e] = true;
                    reached += 1;
                    stack.push(e);
                }
            }
        }
        reached == n
    }

    pub fn dart_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.face_count as i64
    }

    pub fn is_spherical(&self) -> bool {
        self.euler_characteristic() == 2
    }

    /// Counterclockwise successor of `d` around its vertex.
    pub fn rotate(&self, d: usize) -> usize {
        self.rotation[d]
    }

    pub fn rotate_back(&self, d: usize) -> usize {
        self.rotation_inv[d]
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    /// Next dart along the face to the right of `d`.
    pub fn face_step(&self, d: usize) -> usize {
        self.rotation[d ^ 1]
    }

    pub fn face_step_back(&self, d: usize) -> usize {
        self.rotation_inv[d] ^ 1
    }

    /// Tail vertex of dart `d`.
    pub fn vertex_of(&self, d: usize) -> usize {
        self.vertex_of[d]
    }

    /// Face on the right of dart `d`.
    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        self.vertex_of[2 * edge] == self.vertex_of[2 * edge + 1]
    }

    /// Vertex orbits, each starting at its lowest dart.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        orbit_lists(self.dart_count(), |d| self.rotation[d], &self.vertex_of, self.vertex_count)
    }

    /// Face orbits, each starting at its lowest dart, listed by lowest dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        orbit_lists(self.dart_count(), |d| self.face_step(d), &self.face_of, self.face_count)
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.vertex_of.iter().filter(|&&v| v == vertex).count()
    }

    /// Plane dual: same darts and edges, vertices at the faces. The dual
    /// rotation walks each face counterclockwise, so `dual(dual(m))` is `m`
    /// relabeled by `d -> d ^ 1`.
    pub fn dual(&self) -> CombMap {
        let rotation = (0..self.dart_count()).map(|d| self.face_step_back(d)).collect();
        CombMap::from_rotation(rotation).expect("dual of a connected map is connected")
    }

    /// Medial map: one 4-valent vertex per edge, one edge per corner.
    ///
    /// Corner `x` (between dart `x` and its ccw successor) becomes medial edge
    /// `x` with darts `2x` (at the midpoint of `x`'s edge) and `2x + 1` (at
    /// the midpoint of the successor's edge). See [`medial_crossings`] for the
    /// rotation order around each medial vertex.
    ///
    /// [`medial_crossings`]: CombMap::medial_crossings
    pub fn medial(&self) -> CombMap {
        let n = self.dart_count();
        let mut rotation = vec![0; 2 * n];
        for quad in self.medial_crossings() {
            for i in 0..4 {
                rotation[quad[i]] = quad[(i + 1) % 4];
            }
        }
        CombMap::from_rotation(rotation).expect("medial of a connected map is connected")
    }

    /// Darts of the medial vertex of each edge `e`, counterclockwise. For
    /// `x = 2e` the order is: toward the corner cw of `x ^ 1`, toward the
    /// corner ccw of `x`, toward the corner cw of `x`, toward the corner ccw
    /// of `x ^ 1`. Positions 0 and 2 have the vertex regions of the original
    /// map on their right; positions 1 and 3 have its face regions.
    pub fn medial_crossings(&self) -> Vec<[usize; 4]> {
        // a(x): medial dart at mid(x) into the corner between x and rotate(x)
        // b(y): medial dart at mid(y) into the corner between rotate_back(y) and y
        let a = |x: usize| 2 * x;
        let b = |y: usize| 2 * self.rotation_inv[y] + 1;
        (0..self.edge_count())
            .map(|e| {
                let x = 2 * e;
                [b(x ^ 1), a(x), b(x), a(x ^ 1)]
            })
            .collect()
    }

    /// Orientation-preserving isomorphism onto `other`, as a dart bijection,
    /// subject to `compat(self_dart, other_dart)`.
    pub fn isomorphism_with(
        &self,
        other: &CombMap,
        compat: impl Fn(usize, usize) -> bool,
    ) -> Option<Vec<usize>> {
        if self.dart_count() != other.dart_count()
            || self.vertex_count != other.vertex_count
            || self.face_count != other.face_count
        {
            return None;
        }
        (0..other.dart_count()).find_map(|root| self.extend_from(other, root, &compat))
    }

    pub fn isomorphism(&self, other: &CombMap) -> Option<Vec<usize>> {
        self.isomorphism_with(other, |_, _| true)
    }

    pub fn is_isomorphic(&self, other: &CombMap) -> bool {
        self.isomorphism(other).is_some()
    }

    fn extend_from(
        &self,
        other: &CombMap,
        root: usize,
        compat: &impl Fn(usize, usize) -> bool,
    ) -> Option<Vec<usize>> {
        let n = self.dart_count();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        image[0] = root;
        used[root] = true;
        let mut stack = vec![0];
        while let Some(d) = stack.pop() {
            let e = image[d];
            if !compat(d, e) {
                return None;
            }
            for (nd, ne) in [(self.rotation[d], other.rotation[e]), (d ^ 1, e ^ 1)] {
                if image[nd] == usize::MAX {
                    if used[ne] {
                        return None;
                    }
                    image[nd] = ne;
                    used[ne] = true;
                    stack.push(nd);
                } else if image[nd] != ne {
                    return None;
                }
            }
        }
        Some(image)
    }

    pub fn to_json(&self) -> MapJson {
        MapJson {
            dart_count: self.dart_count(),
            pairing: (0..self.dart_count()).map(|d| d ^ 1).collect(),
            rotation: self.rotation.clone(),
            faces: Some(self.faces()),
        }
    }

    /// Reads `{dart_count, pairing, rotation}`; `faces` is ignored if present.
    /// The pairing must be `d <-> d ^ 1`.
    pub fn from_json(json: &MapJson) -> Result<Self> {
        if json.rotation.len() != json.dart_count || json.pairing.len() != json.dart_count {
            return Err(Error::InvalidMap("array lengths disagree with dart_count".into()));
        }
        if let Some(d) = (0..json.dart_count).find(|&d| json.pairing[d] != d ^ 1) {
            return Err(Error::InvalidMap(format!("pairing of dart {d} must be {}", d ^ 1)));
        }
        Self::from_rotation(json.rotation.clone())
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph map {\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(s, "  v{v};");
        }
        for e in 0..self.edge_count() {
            let _ = writeln!(
                s,
                "  v{} -- v{} [label=\"e{e}\"];",
                self.vertex_of[2 * e],
                self.vertex_of[2 * e + 1]
            );
        }
        for (i, f) in self.faces().iter().enumerate() {
            let _ = writeln!(s, "  // face {i}: darts {f:?}");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub dart_count: usize,
    pub pairing: Vec<usize>,
    pub rotation: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceColor {
    Black,
    White,
}

impl FaceColor {
    pub fn other(self) -> Self {
        match self {
            FaceColor::Black => FaceColor::White,
            FaceColor::White => FaceColor::Black,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceColoring {
    colors: Vec<FaceColor>,
}

impl FaceColoring {
    pub fn color(&self, face: usize) -> FaceColor {
        self.colors[face]
    }

    pub fn colors(&self) -> &[FaceColor] {
        &self.colors
    }

    pub fn swapped(&self) -> Self {
        FaceColoring { colors: self.colors.iter().map(|c| c.other()).collect() }
    }

    /// Sizes of the (black, white) classes.
    pub fn class_sizes(&self) -> (usize, usize) {
        let black = self.colors.iter().filter(|&&c| c == FaceColor::Black).count();
        (black, self.colors.len() - black)
    }

    /// True when the two sides of every edge differ.
    pub fn is_proper(&self, map: &CombMap) -> bool {
        (0..map.edge_count()).all(|e| self.colors[map.face_of(2 * e)] != self.colors[map.face_of(2 * e + 1)])
    }
}

/// Proper 2-coloring of the faces; the face right of dart 0 is black.
pub fn checkerboard(map: &CombMap) -> Result<FaceColoring> {
    let mut colors: Vec<Option<FaceColor>> = vec![None; map.face_count()];
    let mut adjacent = vec![Vec::new(); map.face_count()];
    for e in 0..map.edge_count() {
        let (f, g) = (map.face_of(2 * e), map.face_of(2 * e + 1));
        adjacent[f].push(g);
        adjacent[g].push(f);
    }
    let start = map.face_of(0);
    colors[start] = Some(FaceColor::Black);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let c = colors[f].expect("queued faces are colored");
        for &g in &adjacent[f] {
            match colors[g] {
                None => {
                    colors[g] = Some(c.other());
                    queue.push_back(g);
                }
                Some(cg) if cg == c => return Err(Error::NotCheckerboard),
                Some(_) => {}
            }
        }
    }
    let colors = colors.into_iter().map(|c| c.expect("face graph is connected")).collect();
    Ok(FaceColoring { colors })
}

/// A 4-valent spherical map with a distinguished starting dart at each
/// vertex. For universes built from PD codes, `crossings[k][j]` is the dart
/// at slot `j` of crossing `k`, so slots 0 and 2 are the under-strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    map: CombMap,
    crossings: Vec<[usize; 4]>,
}

impl Universe {
    /// Wraps a 4-valent spherical map; each vertex starts at its lowest dart.
    pub fn from_map(map: CombMap) -> Result<Self> {
        if !map.is_spherical() {
            return Err(Error::NonRealizable { euler: map.euler_characteristic() });
        }
        let mut crossings = Vec::with_capacity(map.vertex_count());
        for (v, orbit) in map.vertices().into_iter().enumerate() {
            let quad: [usize; 4] = orbit.try_into().map_err(|_| Error::NotFourValent { vertex: v })?;
            crossings.push(quad);
        }
        Ok(Universe { map, crossings })
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }
}

/// The universe (projection graph) of a diagram: crossings become 4-valent
/// vertices, arcs become edges. Edge `k` is the `k`-th distinct label in
/// reading order; its first occurrence gets dart `2k`.
pub fn map_from_pd(code: &PdCode) -> Result<Universe> {
    let n = code.crossing_count();
    let mut edge_of_label = std::collections::HashMap::new();
    let mut crossings = vec![[0usize; 4]; n];
    for (k, quad) in code.crossings().iter().enumerate() {
        for (j, label) in quad.iter().enumerate() {
            let next = edge_of_label.len();
            let dart = match edge_of_label.entry(*label) {
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert((next, false));
                    2 * next
                }
                std::collections::hash_map::Entry::Occupied(mut o) => {
                    let (e, seen_twice) = o.get_mut();
                    debug_assert!(!*seen_twice);
                    *seen_twice = true;
                    2 * *e + 1
                }
            };
            crossings[k][j] = dart;
        }
    }
    let mut rotation = vec![0; 4 * n];
    for quad in &crossings {
        for j in 0..4 {
            rotation[quad[j]] = quad[(j + 1) % 4];
        }
    }
    let map = CombMap::spherical(rotation)?;
    Ok(Universe { map, crossings })
}

/// Random spherical map with `edges` edges, grown from a single edge by
/// attaching pendant edges and by splitting faces with chords (loops and
/// multi-edges included).
pub fn random_spherical_map<R: Rng>(rng: &mut R, edges: usize) -> CombMap {
    assert!(edges >= 1);
    let mut rotation: Vec<usize> = vec![0, 1];
    while rotation.len() < 2 * edges {
        let map = CombMap::from_rotation(rotation.clone()).expect("growth keeps the map connected");
        let (a, b) = (rotation.len(), rotation.len() + 1);
        rotation.extend([a, b]);
        let x = rng.gen_range(0..a);
        if rng.gen_bool(0.4) {
            // pendant edge: a goes into the corner just clockwise of x, b is a new leaf
            let p = map.rotate_back(x);
            rotation[p] = a;
            rotation[a] = x;
            rotation[b] = b;
        } else {
            // chord between the corners cw of x and cw of y, both in face_of(x)
            let face: Vec<usize> = map.faces().swap_remove(map.face_of(x));
            let y = face[rng.gen_range(0..face.len())];
            let p = map.rotate_back(x);
            rotation[p] = a;
            rotation[a] = x;
            if y == x {
                rotation[a] = b;
                rotation[b] = x;
            } else {
                let q = rotation.iter().position(|&r| r == y).expect("rotation is a permutation");
                rotation[q] = b;
                rotation[b] = y;
            }
        }
    }
    CombMap::spherical(rotation).expect("growth preserves sphericity")
}
