//! Reductions of a quadrangulation to smaller ones, and the distance
//! bookkeeping that goes with them.
//!
//! Every operation returns the new graph together with `origin`, where
//! `origin[i]` is the input vertex that output vertex `i` came from.
//! Survivors keep their relative order.

use serde::Serialize;
use thiserror::Error;

use crate::analyze::{AnalyzeError, Degree3Profile};
use crate::bounds::Rational;
use crate::embed::{delete_vertices, EmbedError, Quadrangulation};
use crate::metrics::{level_structure, DistanceMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    WrongDegree { vertex: usize, degree: usize, expected: usize },
    #[error("graph has {n} vertices, at least {min} are needed")]
    TooSmall { n: usize, min: usize },
    #[error("vertex {vertex} is not in the contractible configuration: {reason}")]
    WrongConfiguration { vertex: usize, reason: String },
    #[error("diagonal e{index} = {edge:?} is already an edge")]
    EdgePresent { index: usize, edge: (usize, usize) },
    #[error("vertex {0} is not a good vertex")]
    NotGood(usize),
    #[error("expected a graph on {expected} vertices, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
    #[error("surgery produced an invalid quadrangulation: {0}")]
    Invalid(#[from] EmbedError),
}

/// A surgery result with its vertex correspondence.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub graph: Quadrangulation,
    pub origin: Vec<usize>,
}

fn finish(rotation: Vec<Vec<usize>>, removed: &[usize]) -> Result<Reduced, SurgeryError> {
    let (rot, origin) = delete_vertices(&rotation, removed);
    let graph = Quadrangulation::from_rotation(rot)?;
    Ok(Reduced { graph, origin })
}

fn expect_degree(g: &Quadrangulation, v: usize, expected: usize) -> Result<(), SurgeryError> {
    let degree = g.degree(v);
    if degree != expected {
        return Err(SurgeryError::WrongDegree { vertex: v, degree, expected });
    }
    Ok(())
}

/// Deletes a degree-2 vertex; its two faces merge into one 4-face.
pub fn delete_degree2(g: &Quadrangulation, v: usize) -> Result<Reduced, SurgeryError> {
    expect_degree(g, v, 2)?;
    if g.n() < 5 {
        return Err(SurgeryError::TooSmall { n: g.n(), min: 5 });
    }
    finish(g.rotation().to_vec(), &[v])
}

/// The seven vertices around a contractible degree-2 vertex `v`:
/// `N(v) = {x1, x2}`, the faces `v x1 x3 x2` and `v x1 x4 x2`, and the faces
/// `x3 z1 x4 x1` and `x3 z2 x4 x2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ContractionSite {
    pub v: usize,
    pub x1: usize,
    pub x2: usize,
    pub x3: usize,
    pub x4: usize,
    pub z1: usize,
    pub z2: usize,
}

impl ContractionSite {
    pub fn special(&self) -> [usize; 7] {
        [self.v, self.x1, self.x2, self.x3, self.x4, self.z1, self.z2]
    }

    pub fn z_set(&self) -> [usize; 4] {
        [self.x3, self.x4, self.z1, self.z2]
    }
}

/// Checks the full configuration required by [`contract_to_x`].
pub fn contraction_site(g: &Quadrangulation, v: usize) -> Result<ContractionSite, SurgeryError> {
    expect_degree(g, v, 2)?;
    if g.n() < 7 {
        return Err(SurgeryError::TooSmall { n: g.n(), min: 7 });
    }
    let wrong = |reason: &str| SurgeryError::WrongConfiguration { vertex: v, reason: reason.to_string() };
    let levels = level_structure(g, &[v]).expect("vertex in range");
    if levels.levels.get(2).map_or(0, Vec::len) != 2 {
        return Err(wrong("second level does not have exactly two vertices"));
    }
    let (x1, x2) = (g.neighbors(v)[0], g.neighbors(v)[1]);
    // faces at v: x1 -> v -> x2 -> x3 and x2 -> v -> x1 -> x4
    let x3 = g.succ_at(x2, v).unwrap();
    let x4 = g.succ_at(x1, v).unwrap();
    if x3 == x4 {
        return Err(wrong("the two faces at v share their fourth vertex"));
    }
    if g.degree(x1) != 3 || g.degree(x2) != 3 {
        return Err(wrong("neighbours of v do not both have degree 3"));
    }
    // x1 has rotation (v, x4, x3) read from v; the face after x4 -> x1 -> x3
    let z_beyond = |x: usize, from: usize| -> usize {
        let to = g.succ_at(x, from).unwrap();
        g.succ_at(to, x).unwrap()
    };
    let z1 = z_beyond(x1, x4);
    let z2 = z_beyond(x2, x3);
    let site = ContractionSite { v, x1, x2, x3, x4, z1, z2 };
    let mut all = site.special();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(wrong("z1, z2 and the other five vertices are not distinct"));
    }
    let face_ok = |a: usize, b: usize, c: usize, d: usize| {
        g.faces().iter().any(|f| {
            let mut s = f.clone();
            s.sort_unstable();
            let mut t = vec![a, b, c, d];
            t.sort_unstable();
            s == t
        })
    };
    if !face_ok(x3, z1, x4, x1) || !face_ok(x3, z2, x4, x2) {
        return Err(wrong("cherries x3 z x4 do not close 4-faces with x1 and x2"));
    }
    Ok(site)
}

/// Contracts the path `x1 v x2` to a single vertex `x` (which keeps `v`'s
/// slot in `origin`). Output has `n - 2` vertices.
pub fn contract_to_x(g: &Quadrangulation, v: usize) -> Result<Reduced, SurgeryError> {
    let site = contraction_site(g, v)?;
    let ContractionSite { x1, x2, x3, x4, .. } = site;
    let mut rot = g.rotation().to_vec();
    for y in [x3, x4] {
        rot[y].retain(|&w| w != x2);
        for w in rot[y].iter_mut() {
            if *w == x1 {
                *w = v;
            }
        }
    }
    rot[v] = vec![x3, x4];
    finish(rot, &[x1, x2])
}

/// Deletes the degree-3 vertex of `profile` and adds the hexagon diagonal
/// `e_i`. Output has `n - 1` vertices.
pub fn good_vertex_surgery(g: &Quadrangulation, profile: &Degree3Profile, i: usize) -> Result<Reduced, SurgeryError> {
    let v = profile.vertex;
    expect_degree(g, v, 3)?;
    let (a, b) = profile.diagonal(i);
    if g.has_edge(a, b) {
        return Err(SurgeryError::EdgePresent { index: i, edge: (a, b) });
    }
    // At b the hexagon corner sits right after c, the neighbour of v that
    // precedes a in v's rotation.
    let j = profile.neighbors.iter().position(|&w| w == a).unwrap();
    let c = profile.neighbors[(j + 2) % 3];
    let mut rot = g.rotation().to_vec();
    for w in rot[a].iter_mut() {
        if *w == v {
            *w = b;
        }
    }
    let pos = rot[b].iter().position(|&w| w == c).unwrap();
    rot[b].insert(pos + 1, a);
    finish(rot, &[v])
}

/// Total decrease of pairwise distances among the survivors of a surgery
/// that removed `removed` from `g` and produced `reduced` (with survivors
/// in their original order).
pub fn dec(g: &Quadrangulation, reduced: &Quadrangulation, removed: usize) -> Result<i64, SurgeryError> {
    if reduced.n() + 1 != g.n() {
        return Err(SurgeryError::SizeMismatch { expected: g.n() - 1, actual: reduced.n() });
    }
    let before = DistanceMatrix::new(g);
    let after = DistanceMatrix::new(reduced);
    Ok(dec_with(&before, &after, removed))
}

pub(crate) fn dec_with(before: &DistanceMatrix, after: &DistanceMatrix, removed: usize) -> i64 {
    let old = |i: usize| if i < removed { i } else { i + 1 };
    let m = after.n();
    let mut total = 0i64;
    for i in 0..m {
        for j in i + 1..m {
            total += before.get(old(i), old(j)) as i64 - after.get(i, j) as i64;
        }
    }
    total
}

/// Smallest `dec` over the three surgeries at a good vertex; ties go to the
/// least index.
pub fn min_dec(g: &Quadrangulation, profile: &Degree3Profile) -> Result<(usize, i64), SurgeryError> {
    if !profile.is_good {
        return Err(SurgeryError::NotGood(profile.vertex));
    }
    let before = DistanceMatrix::new(g);
    let mut best: Option<(usize, i64)> = None;
    for i in 1..=3 {
        let out = good_vertex_surgery(g, profile, i)?;
        let d = dec_with(&before, &DistanceMatrix::new(&out.graph), profile.vertex);
        if best.is_none_or(|(_, b)| d < b) {
            best = Some((i, d));
        }
    }
    Ok(best.unwrap())
}

/// Whether a certificate asserts an inequality or an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Eq,
}

/// One checked inequality (or identity) instance from a reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryCertificate {
    pub operation: String,
    pub input_n: usize,
    pub output_n: usize,
    pub vertex: Option<usize>,
    /// Status values used on the right-hand side, by name.
    pub values: Vec<(String, i64)>,
    pub relation: Relation,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

impl SurgeryCertificate {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        operation: &str,
        input_n: usize,
        output_n: usize,
        vertex: Option<usize>,
        values: Vec<(String, i64)>,
        relation: Relation,
        lhs: Rational,
        rhs: Rational,
    ) -> Self {
        let pass = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        };
        SurgeryCertificate { operation: operation.to_string(), input_n, output_n, vertex, values, relation, lhs, rhs, pass }
    }
}
