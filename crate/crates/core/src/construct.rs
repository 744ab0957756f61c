//! The extremal ladder family `Q_n` and a few named fixtures.
//!
//! `Q_n` has a top path `t_0..t_{T-1}` with `T = floor(n/2)` and a bottom
//! path `b_0..b_{B-1}` with `B = ceil(n/2)`, joined by verticals `t_i b_i`
//! and diagonals `t_i b_{i+2}`. Vertex `t_i` is numbered `i` and `b_j` is
//! numbered `T + j`.
//!
//! Embedding: the ladder squares sit on one side of the outer boundary and
//! the diagonals are nested chords on the other side, so that consecutive
//! chords bound the 4-faces `t_i t_{i+1} b_{i+3} b_{i+2}`.

use thiserror::Error;

use crate::embed::{EmbedError, Quadrangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("Q_n needs n >= 4, got {0}")]
    TooSmall(usize),
    #[error("unknown fixture {0:?} (expected c4, pyramid5 or cube)")]
    UnknownFixture(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Layout of the ladder graph behind `Q_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderSpec {
    pub n: usize,
}

impl LadderSpec {
    pub fn top_count(&self) -> usize {
        self.n / 2
    }

    pub fn bottom_count(&self) -> usize {
        self.n.div_ceil(2)
    }

    pub fn top(&self, i: usize) -> usize {
        i
    }

    pub fn bottom(&self, j: usize) -> usize {
        self.top_count() + j
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let (t, b) = (self.top_count(), self.bottom_count());
        let mut out = Vec::new();
        out.extend((1..t).map(|i| (self.top(i - 1), self.top(i))));
        out.extend((1..b).map(|j| (self.bottom(j - 1), self.bottom(j))));
        out.extend((0..t).map(|i| (self.top(i), self.bottom(i))));
        out.extend((0..t).filter(|i| i + 2 < b).map(|i| (self.top(i), self.bottom(i + 2))));
        out
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        let (t, b) = (self.top_count(), self.bottom_count());
        let (tp, bt) = (|i| self.top(i), |j| self.bottom(j));
        let mut faces: Vec<Vec<usize>> =
            (0..t - 1).map(|i| vec![tp(i), tp(i + 1), bt(i + 1), bt(i)]).collect();
        if b < 3 {
            // n = 4: the square seen from both sides
            faces.push(vec![tp(0), tp(1), bt(1), bt(0)]);
            return faces;
        }
        faces.push(vec![tp(0), bt(2), bt(1), bt(0)]);
        let last = b - 3;
        for i in 0..last {
            faces.push(vec![tp(i), tp(i + 1), bt(i + 3), bt(i + 2)]);
        }
        if self.n.is_multiple_of(2) {
            faces.push(vec![tp(last), tp(last + 1), tp(last + 2), bt(last + 2)]);
        } else {
            faces.push(vec![tp(last), tp(last + 1), bt(last + 1), bt(last + 2)]);
        }
        faces
    }
}

/// Builds the extremal quadrangulation `Q_n`.
pub fn build_qn(n: usize) -> Result<Quadrangulation, ConstructError> {
    if n < 4 {
        return Err(ConstructError::TooSmall(n));
    }
    let spec = LadderSpec { n };
    Ok(Quadrangulation::from_face_cycles(n, &spec.faces())?)
}

pub const FIXTURE_NAMES: [&str; 3] = ["c4", "pyramid5", "cube"];

/// Small named quadrangulations.
///
/// * `c4` - the 4-cycle `0 1 2 3`.
/// * `pyramid5` - `c4` plus vertex 4 joined to 0 and 2.
/// * `cube` - vertices are 3-bit words, adjacent when they differ in one bit.
pub fn fixture(name: &str) -> Result<Quadrangulation, ConstructError> {
    let (n, faces): (usize, Vec<Vec<usize>>) = match name {
        "c4" => (4, vec![vec![0, 1, 2, 3], vec![0, 1, 2, 3]]),
        "pyramid5" => (5, vec![vec![0, 1, 2, 4], vec![0, 4, 2, 3], vec![0, 1, 2, 3]]),
        "cube" => (
            8,
            vec![
                vec![0, 1, 3, 2],
                vec![4, 5, 7, 6],
                vec![0, 1, 5, 4],
                vec![2, 3, 7, 6],
                vec![0, 2, 6, 4],
                vec![1, 3, 7, 5],
            ],
        ),
        other => return Err(ConstructError::UnknownFixture(other.to_string())),
    };
    Ok(Quadrangulation::from_face_cycles(n, &faces)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::conjectured_max;
    use crate::metrics::wiener_index;

    #[test]
    fn q4_is_c4() {
        let q = build_qn(4).unwrap();
        assert_eq!(q.n(), 4);
        assert_eq!(q.edge_count(), 4);
        assert!((0..4).all(|v| q.degree(v) == 2));
    }

    #[test]
    fn q6_edges_and_wiener() {
        let q = build_qn(6).unwrap();
        // t0 t1 t2 = 0 1 2, b0 b1 b2 = 3 4 5
        let expected = vec![(0, 1), (0, 3), (0, 5), (1, 2), (1, 4), (2, 5), (3, 4), (4, 5)];
        assert_eq!(q.edges(), expected);
        assert_eq!(wiener_index(&q), 23);
    }

    #[test]
    fn q8_is_extremal() {
        let q = build_qn(8).unwrap();
        assert_eq!(wiener_index(&q), conjectured_max(8).unwrap());
        assert_eq!(wiener_index(&q), 50);
    }

    #[test]
    fn ladder_edge_count() {
        for n in 4..60 {
            let spec = LadderSpec { n };
            assert_eq!(spec.edges().len(), 2 * n - 4);
            let mut built = build_qn(n).unwrap().edges();
            let mut listed: Vec<_> = spec.edges().into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
            built.sort_unstable();
            listed.sort_unstable();
            assert_eq!(built, listed);
        }
    }

    #[test]
    fn two_degree_two_ends_for_even_n() {
        for n in (6..40).step_by(2) {
            let q = build_qn(n).unwrap();
            assert_eq!((0..n).filter(|&v| q.degree(v) == 2).count(), 2, "n = {n}");
        }
    }

    #[test]
    fn fixtures() {
        let c4 = fixture("c4").unwrap();
        assert_eq!(wiener_index(&c4), 8);
        let cube = fixture("cube").unwrap();
        assert_eq!((cube.n(), wiener_index(&cube)), (8, 48));
        let p5 = fixture("pyramid5").unwrap();
        assert_eq!((p5.n(), p5.min_degree()), (5, 2));
        assert_eq!(fixture("k4"), Err(ConstructError::UnknownFixture("k4".into())));
        assert_eq!(build_qn(3), Err(ConstructError::TooSmall(3)));
    }
}
