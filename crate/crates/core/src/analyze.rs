//! Structural predicates on quadrangulations: separating 4-cycles and their
//! sides, 3-connectivity, and the local picture around degree-3 vertices.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::embed::{canonical_code, delete_vertices, EmbeddedGraph, Quadrangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    WrongDegree { vertex: usize, degree: usize, expected: usize },
    #[error("local structure at vertex {vertex} is not a quadrangulation with minimum degree 3: {reason}")]
    StructureViolation { vertex: usize, reason: String },
    #[error("{0:?} is not a separating 4-cycle")]
    NotSeparating([usize; 4]),
}

/// Minimum degree; 2 or 3 for every quadrangulation.
pub fn min_degree(g: &Quadrangulation) -> usize {
    g.min_degree()
}

/// A 4-cycle that is not a face boundary, with the vertex sets on its two
/// sides. The smaller side is the interior; equal sides are ordered by the
/// canonical code of the part they span together with the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingCycle {
    pub cycle: [usize; 4],
    pub interior: Vec<usize>,
    pub exterior: Vec<usize>,
}

impl SeparatingCycle {
    pub fn interior_size(&self) -> usize {
        self.interior.len()
    }

    /// True if every vertex of `other` lies on this cycle or inside it.
    pub fn encloses(&self, other: &SeparatingCycle) -> bool {
        other.cycle.iter().all(|v| self.cycle.contains(v) || self.interior.contains(v))
    }
}

/// Rotates and reflects a 4-cycle so it starts at its least vertex and
/// continues towards the smaller of the two neighbours.
fn normalize_cycle(c: [usize; 4]) -> [usize; 4] {
    let i = (0..4).min_by_key(|&i| c[i]).unwrap();
    let fwd = [c[i], c[(i + 1) % 4], c[(i + 2) % 4], c[(i + 3) % 4]];
    if fwd[1] < fwd[3] {
        fwd
    } else {
        [fwd[0], fwd[3], fwd[2], fwd[1]]
    }
}

/// Every 4-cycle of the graph, normalised, in sorted order.
pub fn four_cycles(g: &EmbeddedGraph) -> Vec<[usize; 4]> {
    let mut out = BTreeSet::new();
    for a in 0..g.n() {
        let nb = g.neighbors(a);
        for (i, &b) in nb.iter().enumerate() {
            for &d in &nb[i + 1..] {
                for &c in g.neighbors(b) {
                    if c != a && c != d && g.has_edge(c, d) {
                        out.insert(normalize_cycle([a, b, c, d]));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Vertex sets on the two sides of a cycle in the embedding, found by
/// flooding faces without crossing cycle edges. `None` if `cycle` is not a
/// cycle of `g`.
fn cycle_sides(g: &EmbeddedGraph, cycle: &[usize; 4]) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut cut = Vec::with_capacity(8);
    for i in 0..4 {
        let (a, b) = (cycle[i], cycle[(i + 1) % 4]);
        cut.push(g.dart(a, b)?);
        cut.push(g.dart(b, a)?);
    }
    let (face, nfaces) = g.dart_faces();
    let mut adjacent = vec![Vec::new(); nfaces];
    for d in 0..g.dart_count() {
        if !cut.contains(&d) {
            adjacent[face[d]].push(face[g.reverse(d)]);
        }
    }
    let mut side = vec![false; nfaces];
    side[face[cut[0]]] = true;
    let mut queue = VecDeque::from([face[cut[0]]]);
    while let Some(f) = queue.pop_front() {
        for &h in &adjacent[f] {
            if !side[h] {
                side[h] = true;
                queue.push_back(h);
            }
        }
    }
    let mut on_side = vec![None; g.n()];
    for d in 0..g.dart_count() {
        let v = g.tail(d);
        if !cycle.contains(&v) {
            on_side[v] = Some(side[face[d]]);
        }
    }
    let a = (0..g.n()).filter(|&v| on_side[v] == Some(true)).collect();
    let b = (0..g.n()).filter(|&v| on_side[v] == Some(false)).collect();
    Some((a, b))
}

fn part_code(g: &EmbeddedGraph, removed: &[usize]) -> crate::embed::CanonicalCode {
    let (rot, _) = delete_vertices(g.rotation(), removed);
    canonical_code(&EmbeddedGraph::new(rot).expect("side of a cycle is connected"))
}

fn orient_sides(g: &EmbeddedGraph, cycle: [usize; 4], a: Vec<usize>, b: Vec<usize>) -> SeparatingCycle {
    let a_first = match a.len().cmp(&b.len()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => {
            // keeping side `a` means deleting side `b`
            let (ca, cb) = (part_code(g, &b), part_code(g, &a));
            ca < cb || (ca == cb && a[0] < b[0])
        }
    };
    let (interior, exterior) = if a_first { (a, b) } else { (b, a) };
    SeparatingCycle { cycle, interior, exterior }
}

fn as_separating(g: &EmbeddedGraph, cycle: [usize; 4]) -> Option<SeparatingCycle> {
    let (a, b) = cycle_sides(g, &cycle)?;
    if a.is_empty() || b.is_empty() {
        return None;
    }
    Some(orient_sides(g, cycle, a, b))
}

/// All 4-cycles that do not bound a face.
pub fn separating_four_cycles(g: &Quadrangulation) -> Vec<SeparatingCycle> {
    four_cycles(g).into_iter().filter_map(|c| as_separating(g, c)).collect()
}

/// Whether no set of at most two vertices disconnects the graph. Graphs on
/// four vertices or fewer are never 3-connected.
pub fn is_three_connected(g: &EmbeddedGraph) -> bool {
    let n = g.n();
    if n <= 3 {
        return false;
    }
    for u in 0..n {
        if !g.is_connected_without(&[u]) {
            return false;
        }
        for w in u + 1..n {
            if !g.is_connected_without(&[u, w]) {
                return false;
            }
        }
    }
    true
}

/// A separating 4-cycle enclosing no other one, with the fewest interior
/// vertices; ties go to the lexicographically least normalised cycle.
pub fn minimum_separating_cycle(g: &Quadrangulation) -> Option<SeparatingCycle> {
    let all = separating_four_cycles(g);
    all.iter()
        .filter(|c| !all.iter().any(|o| o.cycle != c.cycle && c.encloses(o)))
        .min_by(|x, y| x.interior_size().cmp(&y.interior_size()).then(x.cycle.cmp(&y.cycle)))
        .cloned()
}

/// The two quadrangulations obtained by deleting either side of a
/// separating 4-cycle. `origin[i]` maps part vertex `i` back to the input.
#[derive(Debug, Clone)]
pub struct CycleSplit {
    pub inner: Quadrangulation,
    pub inner_origin: Vec<usize>,
    pub outer: Quadrangulation,
    pub outer_origin: Vec<usize>,
    /// The cycle with its sides recomputed from the embedding.
    pub cycle: SeparatingCycle,
}

/// Splits `g` along `c`: `inner` keeps the cycle and its interior
/// (`x + 4` vertices), `outer` keeps the cycle and its exterior (`n - x`).
pub fn split_at_cycle(g: &Quadrangulation, c: &SeparatingCycle) -> Result<CycleSplit, AnalyzeError> {
    let not_sep = || AnalyzeError::NotSeparating(c.cycle);
    let (a, b) = cycle_sides(g, &c.cycle).ok_or_else(not_sep)?;
    if a.is_empty() || b.is_empty() {
        return Err(not_sep());
    }
    let mut a_sorted = a.clone();
    a_sorted.sort_unstable();
    // honour the caller's labelling of the sides
    let (interior, exterior) = if a_sorted == c.interior { (a, b) } else if a_sorted == c.exterior { (b, a) } else {
        let oriented = orient_sides(g, c.cycle, a, b);
        (oriented.interior, oriented.exterior)
    };
    let build = |removed: &[usize]| {
        let (rot, origin) = delete_vertices(g.rotation(), removed);
        let q = Quadrangulation::from_rotation(rot).expect("each side of a separating 4-cycle is a quadrangulation");
        (q, origin)
    };
    let (inner, inner_origin) = build(&exterior);
    let (outer, outer_origin) = build(&interior);
    Ok(CycleSplit {
        inner,
        inner_origin,
        outer,
        outer_origin,
        cycle: SeparatingCycle { cycle: c.cycle, interior, exterior },
    })
}

/// The neighbourhood of a degree-3 vertex `v`.
///
/// With `v`'s rotation read as `v1 v2 v3`, the three faces at `v` are
/// `v1 v v3 v4`, `v2 v v3 v5` and `v1 v v2 v6`. Deleting `v` leaves the
/// hexagon `v1 v4 v3 v5 v2 v6`, whose long diagonals are `e1 = v1 v5`,
/// `e2 = v2 v4` and `e3 = v3 v6`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degree3Profile {
    pub vertex: usize,
    /// `v1, v2, v3`
    pub neighbors: [usize; 3],
    /// `v4, v5, v6`
    pub opposite: [usize; 3],
    /// Presence of `e1, e2, e3` in the graph.
    pub present: [bool; 3],
    pub is_good: bool,
}

impl Degree3Profile {
    /// Endpoints of the diagonal `e_i` for `i` in `1..=3`.
    pub fn diagonal(&self, i: usize) -> (usize, usize) {
        let [v1, v2, v3] = self.neighbors;
        let [v4, v5, v6] = self.opposite;
        match i {
            1 => (v1, v5),
            2 => (v2, v4),
            3 => (v3, v6),
            _ => panic!("diagonal index {i} outside 1..=3"),
        }
    }

    /// Indices `i` whose diagonal is absent and available for surgery.
    pub fn available(&self) -> Vec<usize> {
        (1..=3).filter(|&i| !self.present[i - 1]).collect()
    }
}

/// Fourth vertex of the face through the corner `a -> v -> b`.
fn corner_opposite(g: &EmbeddedGraph, v: usize, a: usize) -> usize {
    let b = g.succ_at(v, a).expect("a is a neighbour of v");
    g.succ_at(b, v).expect("v is a neighbour of b")
}

pub fn degree3_profile(g: &Quadrangulation, v: usize) -> Result<Degree3Profile, AnalyzeError> {
    let degree = g.degree(v);
    if degree != 3 {
        return Err(AnalyzeError::WrongDegree { vertex: v, degree, expected: 3 });
    }
    let rot = g.neighbors(v);
    let (v1, v2, v3) = (rot[0], rot[1], rot[2]);
    let v6 = corner_opposite(g, v, v1);
    let v5 = corner_opposite(g, v, v2);
    let v4 = corner_opposite(g, v, v3);
    let violation = |reason: &str| AnalyzeError::StructureViolation { vertex: v, reason: reason.to_string() };
    if v4 == v5 || v5 == v6 || v4 == v6 {
        return Err(violation("opposite vertices coincide"));
    }
    let present = [g.has_edge(v1, v5), g.has_edge(v2, v4), g.has_edge(v3, v6)];
    if present.iter().filter(|&&p| p).count() > 1 {
        return Err(violation("more than one hexagon diagonal present"));
    }
    Ok(Degree3Profile {
        vertex: v,
        neighbors: [v1, v2, v3],
        opposite: [v4, v5, v6],
        present,
        is_good: !present.iter().any(|&p| p),
    })
}
