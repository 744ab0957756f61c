//! Exact distance quantities: BFS levels, status and the Wiener index.

use std::collections::VecDeque;

use thiserror::Error;

use crate::embed::EmbeddedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("source set is empty")]
    EmptySource,
    #[error("source vertex {0} is out of range")]
    VertexOutOfRange(usize),
}

/// Distance from the nearest source to every vertex.
pub fn distances_from(g: &EmbeddedGraph, sources: &[usize]) -> Result<Vec<u32>, MetricsError> {
    if sources.is_empty() {
        return Err(MetricsError::EmptySource);
    }
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if s >= g.n() {
            return Err(MetricsError::VertexOutOfRange(s));
        }
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// Partition of the vertices by distance from a source set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStructure {
    pub sources: Vec<usize>,
    /// `levels[i]` holds the vertices at distance `i`, sorted.
    pub levels: Vec<Vec<usize>>,
}

impl LevelStructure {
    /// Index of the farthest nonempty level.
    pub fn terminal_index(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Levels `1..terminal`, the ones the status lemmas constrain.
    pub fn non_terminal(&self) -> &[Vec<usize>] {
        let t = self.terminal_index();
        if t == 0 {
            &[]
        } else {
            &self.levels[1..t]
        }
    }

    /// Sum over levels of `i * |level i|`.
    pub fn status(&self) -> i64 {
        self.levels.iter().enumerate().map(|(i, l)| (i * l.len()) as i64).sum()
    }

    /// Number of vertices outside the source set.
    pub fn outside(&self) -> usize {
        self.levels[1..].iter().map(Vec::len).sum()
    }
}

pub fn level_structure(g: &EmbeddedGraph, sources: &[usize]) -> Result<LevelStructure, MetricsError> {
    let dist = distances_from(g, sources)?;
    let depth = *dist.iter().max().unwrap() as usize;
    let mut levels = vec![Vec::new(); depth + 1];
    for (v, &d) in dist.iter().enumerate() {
        levels[d as usize].push(v);
    }
    let mut sources = sources.to_vec();
    sources.sort_unstable();
    sources.dedup();
    Ok(LevelStructure { sources, levels })
}

/// Status of a vertex set: the sum of distances from the set to all vertices.
pub fn status(g: &EmbeddedGraph, sources: &[usize]) -> Result<i64, MetricsError> {
    Ok(distances_from(g, sources)?.iter().map(|&d| d as i64).sum())
}

/// All-pairs distance table, one BFS per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(g: &EmbeddedGraph) -> Self {
        let n = g.n();
        let mut data = Vec::with_capacity(n * n);
        for v in 0..n {
            data.extend(distances_from(g, &[v]).expect("vertex in range"));
        }
        DistanceMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    /// Status of a single vertex.
    pub fn vertex_status(&self, v: usize) -> i64 {
        self.row(v).iter().map(|&d| d as i64).sum()
    }

    /// Distance from the nearest of `set` to `u`.
    pub fn to_set(&self, set: &[usize], u: usize) -> u32 {
        set.iter().map(|&s| self.get(s, u)).min().unwrap_or(u32::MAX)
    }

    pub fn wiener(&self) -> i64 {
        let total: i64 = (0..self.n).map(|v| self.vertex_status(v)).sum();
        total / 2
    }
}

/// Sum of the distances over all unordered vertex pairs.
pub fn wiener_index(g: &EmbeddedGraph) -> i64 {
    (0..g.n())
        .map(|v| status(g, &[v]).expect("vertex in range"))
        .sum::<i64>()
        / 2
}
