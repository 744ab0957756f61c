//! Embedded planar graphs stored as rotation systems.
//!
//! A rotation system assigns to every vertex the cyclic order of its
//! neighbours. Faces are recovered by the traversal rule: from the dart
//! `u -> v` the next dart of the same face is `v -> w`, where `w` follows `u`
//! in the rotation at `v`. Every other module in the crate depends on this
//! convention, and golden files are written with it.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

mod canon;
mod planar_code;

pub use canon::{canonical_code, canonical_form, CanonicalCode};
pub use planar_code::{read_planar_code, write_planar_code, PlanarCodeError, PLANAR_CODE_HEADER};

/// Errors raised while building or validating an embedded graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} lists neighbour {neighbour}, which is out of range")]
    IndexOutOfRange { vertex: usize, neighbour: usize },
    #[error("vertex {u} lists {v} but {v} does not list {u} back")]
    NonSymmetric { u: usize, v: usize },
    #[error("loop or repeated edge at vertex {vertex} (neighbour {neighbour})")]
    LoopOrMultiEdge { vertex: usize, neighbour: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system is not a sphere embedding (n - e + f = {euler})")]
    NotSpherical { euler: i64 },
    #[error("graph has {n} vertices; a quadrangulation needs at least 4")]
    TooSmall { n: usize },
    #[error("face {walk:?} has length {}, expected 4", walk.len())]
    FaceLengthViolation { walk: Vec<usize> },
    #[error("face cycles are inconsistent: {0}")]
    BadFaces(String),
}

/// Connected simple graph with a sphere embedding given by a rotation system.
///
/// Darts are numbered vertex by vertex: the dart `v -> rotation[v][i]` has id
/// `offset[v] + i`.
#[derive(Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    rotation: Vec<Vec<usize>>,
    offset: Vec<usize>,
    tail: Vec<usize>,
    head: Vec<usize>,
    rev: Vec<usize>,
}

impl fmt::Debug for EmbeddedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EmbeddedGraph")
            .field("n", &self.n())
            .field("rotation", &self.rotation)
            .finish()
    }
}

/// Direction in which a rotation is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Reverse,
}

impl EmbeddedGraph {
    /// Builds the dart structure from per-vertex cyclic neighbour lists and
    /// checks symmetry, simplicity, connectivity and the Euler relation.
    pub fn new(rotation: Vec<Vec<usize>>) -> Result<Self, EmbedError> {
        let n = rotation.len();
        if n == 0 {
            return Err(EmbedError::Empty);
        }
        let mut offset = Vec::with_capacity(n + 1);
        let mut total = 0;
        for (v, nbrs) in rotation.iter().enumerate() {
            offset.push(total);
            total += nbrs.len();
            for (i, &w) in nbrs.iter().enumerate() {
                if w >= n {
                    return Err(EmbedError::IndexOutOfRange { vertex: v, neighbour: w });
                }
                if w == v || nbrs[..i].contains(&w) {
                    return Err(EmbedError::LoopOrMultiEdge { vertex: v, neighbour: w });
                }
            }
        }
        offset.push(total);

        let mut position: HashMap<(usize, usize), usize> = HashMap::with_capacity(total);
        let mut tail = Vec::with_capacity(total);
        let mut head = Vec::with_capacity(total);
        for (v, nbrs) in rotation.iter().enumerate() {
            for (i, &w) in nbrs.iter().enumerate() {
                position.insert((v, w), offset[v] + i);
                tail.push(v);
                head.push(w);
            }
        }
        let mut rev = vec![0; total];
        for d in 0..total {
            match position.get(&(head[d], tail[d])) {
                Some(&r) => rev[d] = r,
                None => return Err(EmbedError::NonSymmetric { u: tail[d], v: head[d] }),
            }
        }

        let g = EmbeddedGraph { rotation, offset, tail, head, rev };
        if !g.is_connected_without(&[]) {
            return Err(EmbedError::Disconnected);
        }
        let euler = g.n() as i64 - g.edge_count() as i64 + g.face_count() as i64;
        if euler != 2 {
            return Err(EmbedError::NotSpherical { euler });
        }
        Ok(g)
    }

    /// Builds an embedding from its list of face boundaries.
    ///
    /// Each face is a cyclic vertex sequence; orientations are made consistent
    /// automatically, so the cycles may be listed in either direction.
    pub fn from_face_cycles(n: usize, faces: &[Vec<usize>]) -> Result<Self, EmbedError> {
        let bad = |msg: String| Err(EmbedError::BadFaces(msg));
        for f in faces {
            if f.len() < 3 || f.iter().any(|&v| v >= n) {
                return bad(format!("face {f:?} is too short or out of range"));
            }
        }
        // undirected edge -> faces containing it
        let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                edge_faces.entry((a.min(b), a.max(b))).or_default().push(fi);
            }
        }
        if let Some((e, fs)) = edge_faces.iter().find(|(_, fs)| fs.len() != 2) {
            return bad(format!("edge {e:?} lies on {} face sides", fs.len()));
        }

        let directed = |f: &[usize], reversed: bool| -> Vec<(usize, usize)> {
            (0..f.len())
                .map(|i| {
                    let (a, b) = (f[i], f[(i + 1) % f.len()]);
                    if reversed { (b, a) } else { (a, b) }
                })
                .collect()
        };

        let mut flipped: Vec<Option<bool>> = vec![None; faces.len()];
        for start in 0..faces.len() {
            if flipped[start].is_some() {
                continue;
            }
            flipped[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(fi) = queue.pop_front() {
                let rev_fi = flipped[fi].unwrap();
                for (a, b) in directed(&faces[fi], rev_fi) {
                    for &fj in &edge_faces[&(a.min(b), a.max(b))] {
                        if fj == fi {
                            continue;
                        }
                        // fj must traverse the shared edge as b -> a
                        let fwd = directed(&faces[fj], false).contains(&(b, a));
                        let bwd = directed(&faces[fj], true).contains(&(b, a));
                        let want = match (fwd, bwd) {
                            (true, false) => false,
                            (false, true) => true,
                            _ => return bad(format!("face {:?} is ambiguous", faces[fj])),
                        };
                        match flipped[fj] {
                            None => {
                                flipped[fj] = Some(want);
                                queue.push_back(fj);
                            }
                            Some(have) if have != want => {
                                return bad("faces cannot be oriented consistently".into())
                            }
                            _ => {}
                        }
                    }
                }
            }
        }

        // For a face walk u -> v -> w, w follows u in the rotation at v.
        let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
        for (fi, f) in faces.iter().enumerate() {
            let walk: Vec<usize> = if flipped[fi].unwrap() {
                f.iter().rev().copied().collect()
            } else {
                f.clone()
            };
            let k = walk.len();
            for i in 0..k {
                let (u, v, w) = (walk[i], walk[(i + 1) % k], walk[(i + 2) % k]);
                if succ[v].insert(u, w).is_some() {
                    return bad(format!("corner {u}-{v} appears twice"));
                }
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, map) in succ.iter().enumerate() {
            let Some(&first) = map.keys().min() else {
                return bad(format!("vertex {v} lies on no face"));
            };
            let mut cyc = vec![first];
            let mut cur = map[&first];
            while cur != first {
                cyc.push(cur);
                cur = match map.get(&cur) {
                    Some(&w) => w,
                    None => return bad(format!("open corner sequence at vertex {v}")),
                };
                if cyc.len() > map.len() {
                    break;
                }
            }
            if cyc.len() != map.len() {
                return bad(format!("faces around vertex {v} do not form a single disc"));
            }
            rotation.push(cyc);
        }
        Self::new(rotation)
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.tail.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.tail.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotation[u].contains(&v)
    }

    /// Sorted list of undirected edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.dart_count())
            .filter(|&d| self.tail[d] < self.head[d])
            .map(|d| (self.tail[d], self.head[d]))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn min_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn dart(&self, u: usize, v: usize) -> Option<usize> {
        self.rotation[u].iter().position(|&w| w == v).map(|i| self.offset[u] + i)
    }

    pub fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    pub fn head(&self, d: usize) -> usize {
        self.head[d]
    }

    pub fn reverse(&self, d: usize) -> usize {
        self.rev[d]
    }

    /// Next dart around the tail of `d` in the given reading direction.
    pub fn turn(&self, d: usize, orientation: Orientation) -> usize {
        let v = self.tail[d];
        let deg = self.rotation[v].len();
        let i = d - self.offset[v];
        let j = match orientation {
            Orientation::Forward => (i + 1) % deg,
            Orientation::Reverse => (i + deg - 1) % deg,
        };
        self.offset[v] + j
    }

    /// The dart following `d` on its face.
    pub fn face_successor(&self, d: usize) -> usize {
        self.turn(self.rev[d], Orientation::Forward)
    }

    /// Neighbour of `v` that follows `u` in the rotation at `v`.
    pub fn succ_at(&self, v: usize, u: usize) -> Option<usize> {
        let rot = &self.rotation[v];
        rot.iter().position(|&w| w == u).map(|i| rot[(i + 1) % rot.len()])
    }

    /// Face id of every dart, plus the number of faces.
    pub fn dart_faces(&self) -> (Vec<usize>, usize) {
        let mut face = vec![usize::MAX; self.dart_count()];
        let mut count = 0;
        for start in 0..self.dart_count() {
            if face[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            loop {
                face[d] = count;
                d = self.face_successor(d);
                if d == start {
                    break;
                }
            }
            count += 1;
        }
        (face, count)
    }

    pub fn face_count(&self) -> usize {
        self.dart_faces().1
    }

    /// Face walks as cyclic vertex sequences (tail of each dart in order).
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for start in 0..self.dart_count() {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(self.tail[d]);
                d = self.face_successor(d);
            }
            out.push(walk);
        }
        out
    }

    /// The same map with every rotation reversed.
    pub fn mirror(&self) -> EmbeddedGraph {
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        EmbeddedGraph::new(rotation).expect("mirror of a valid map is valid")
    }

    /// Relabels vertices by `perm[old] = new`, keeping rotations.
    pub fn relabel(&self, perm: &[usize]) -> EmbeddedGraph {
        let mut rotation = vec![Vec::new(); self.n()];
        for (v, nbrs) in self.rotation.iter().enumerate() {
            rotation[perm[v]] = nbrs.iter().map(|&w| perm[w]).collect();
        }
        EmbeddedGraph::new(rotation).expect("relabelling preserves validity")
    }

    /// Connectivity of the graph with `removed` vertices deleted.
    pub fn is_connected_without(&self, removed: &[usize]) -> bool {
        let n = self.n();
        let mut gone = vec![false; n];
        for &r in removed {
            gone[r] = true;
        }
        let Some(start) = (0..n).find(|&v| !gone[v]) else {
            return true;
        };
        let mut seen = gone.clone();
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.rotation[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached + removed.len() == n
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n()];
        color[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.rotation[v] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
        Some(color)
    }
}

/// A validated quadrangulation of the sphere: every face has length 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadrangulation(EmbeddedGraph);

impl Quadrangulation {
    /// Checks `n >= 4` and that every face walk has length 4. The remaining
    /// quadrangulation invariants (`e = 2n - 4`, bipartite, minimum degree 2
    /// or 3) follow and are asserted in debug builds.
    pub fn new(g: EmbeddedGraph) -> Result<Self, EmbedError> {
        if g.n() < 4 {
            return Err(EmbedError::TooSmall { n: g.n() });
        }
        if let Some(walk) = g.faces().into_iter().find(|w| w.len() != 4) {
            return Err(EmbedError::FaceLengthViolation { walk });
        }
        debug_assert_eq!(g.edge_count(), 2 * g.n() - 4);
        debug_assert!(g.bipartition().is_some());
        debug_assert!(matches!(g.min_degree(), 2 | 3));
        Ok(Quadrangulation(g))
    }

    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self, EmbedError> {
        Self::new(EmbeddedGraph::new(rotation)?)
    }

    pub fn from_face_cycles(n: usize, faces: &[Vec<usize>]) -> Result<Self, EmbedError> {
        Self::new(EmbeddedGraph::from_face_cycles(n, faces)?)
    }

    pub fn embedded(&self) -> &EmbeddedGraph {
        &self.0
    }

    pub fn into_embedded(self) -> EmbeddedGraph {
        self.0
    }
}

impl Deref for Quadrangulation {
    type Target = EmbeddedGraph;

    fn deref(&self) -> &EmbeddedGraph {
        &self.0
    }
}

/// Alias for [`Quadrangulation::new`].
pub fn validate_quadrangulation(g: EmbeddedGraph) -> Result<Quadrangulation, EmbedError> {
    Quadrangulation::new(g)
}

/// Removes `removed` vertices from a rotation system and renumbers the
/// survivors in their original order. Returns the new rotation lists and
/// `origin[new] = old`.
pub fn delete_vertices(rotation: &[Vec<usize>], removed: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = rotation.len();
    let mut gone = vec![false; n];
    for &r in removed {
        gone[r] = true;
    }
    let mut new_index = vec![usize::MAX; n];
    let mut origin = Vec::with_capacity(n);
    for v in 0..n {
        if !gone[v] {
            new_index[v] = origin.len();
            origin.push(v);
        }
    }
    let rot = origin
        .iter()
        .map(|&v| {
            rotation[v]
                .iter()
                .filter(|&&w| !gone[w])
                .map(|&w| new_index[w])
                .collect()
        })
        .collect();
    (rot, origin)
}
