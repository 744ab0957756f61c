//! Exhaustive generation of simple quadrangulations of the sphere.
//!
//! Level `n + 1` is obtained from level `n` by two expansions, the inverses
//! of the reductions in [`crate::surgery`]:
//!
//! * face insertion: put a degree-2 vertex inside a face, joined to two
//!   opposite corners;
//! * edge replacement: delete an edge, leaving a hexagon, and add a degree-3
//!   vertex joined to alternate hexagon corners.
//!
//! Results are deduplicated by canonical code (reflections identified) and
//! emitted in code order. Completeness of these two moves is cross-checked
//! against a brute-force search for small `n` in the test suite; above that
//! range the output is complete relative to the generator only.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::construct::fixture;
use crate::embed::{canonical_form, CanonicalCode, EmbeddedGraph, Quadrangulation};
use crate::par::{self, Execution};

pub const DEFAULT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("no quadrangulation has {0} vertices (need n >= 4)")]
    TooSmall(usize),
    #[error("n = {n} exceeds the feasibility limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub limit: usize,
    pub execution: Execution,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { limit: DEFAULT_LIMIT, execution: Execution::default() }
    }
}

/// All quadrangulations on `n` vertices, canonically labelled and sorted by
/// canonical code.
#[derive(Debug, Clone)]
pub struct EnumerationRun {
    pub n: usize,
    pub codes: Vec<CanonicalCode>,
    pub instances: Vec<Quadrangulation>,
    /// Time spent producing this level from the previous one.
    pub elapsed: Duration,
}

impl EnumerationRun {
    pub fn count(&self) -> usize {
        self.instances.len()
    }
}

/// Every graph reachable from `q` by one face insertion or one edge
/// replacement. May contain isomorphic duplicates.
pub fn expansions(q: &Quadrangulation) -> Vec<Quadrangulation> {
    let mut out = Vec::new();
    let n = q.n();
    let push = |rot: Vec<Vec<usize>>, out: &mut Vec<Quadrangulation>| {
        if let Ok(g) = Quadrangulation::from_rotation(rot) {
            out.push(g);
        }
    };

    // face insertion
    for face in q.faces() {
        for k in 0..2 {
            // corners a, c opposite on the face walk d -> a -> b -> c -> d
            let (a, b, c, d) = (face[k], face[k + 1], face[(k + 2) % 4], face[(k + 3) % 4]);
            let mut rot = q.rotation().to_vec();
            insert_after(&mut rot[a], d, n);
            insert_after(&mut rot[c], b, n);
            rot.push(vec![a, c]);
            push(rot, &mut out);
        }
    }

    // edge replacement, once per dart
    for dart in 0..q.dart_count() {
        let (p, qv) = (q.tail(dart), q.head(dart));
        // faces p -> q -> b -> a and q -> p -> d -> c
        let b = q.succ_at(qv, p).unwrap();
        let a = q.succ_at(b, qv).unwrap();
        let d = q.succ_at(p, qv).unwrap();
        let c = q.succ_at(d, p).unwrap();
        let mut hex = [p, d, c, qv, b, a];
        hex.sort_unstable();
        if hex.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let mut rot = q.rotation().to_vec();
        for w in rot[p].iter_mut() {
            if *w == qv {
                *w = n;
            }
        }
        rot[qv].retain(|&w| w != p);
        insert_after(&mut rot[c], d, n);
        insert_after(&mut rot[b], qv, n);
        rot.push(vec![p, b, c]);
        push(rot, &mut out);
    }
    out
}

fn insert_after(list: &mut Vec<usize>, anchor: usize, new: usize) {
    let pos = list.iter().position(|&w| w == anchor).expect("anchor in rotation");
    list.insert(pos + 1, new);
}

fn canonical_level(graphs: Vec<(CanonicalCode, EmbeddedGraph)>) -> (Vec<CanonicalCode>, Vec<Quadrangulation>) {
    let unique: BTreeMap<CanonicalCode, EmbeddedGraph> = graphs.into_iter().collect();
    unique
        .into_iter()
        .map(|(code, g)| (code, Quadrangulation::new(g).expect("expansion output is validated")))
        .unzip()
}

fn next_level(parents: &[Quadrangulation], exec: Execution) -> (Vec<CanonicalCode>, Vec<Quadrangulation>) {
    let children: Vec<Vec<(CanonicalCode, EmbeddedGraph)>> = par::map(parents, exec, |p| {
        let mut local: BTreeMap<CanonicalCode, EmbeddedGraph> = BTreeMap::new();
        for child in expansions(p) {
            let (code, form) = canonical_form(&child);
            local.entry(code).or_insert(form);
        }
        local.into_iter().collect()
    });
    canonical_level(children.into_iter().flatten().collect())
}

/// Runs the generator for every `n` in `4..=n_max`.
pub fn enumerate_up_to(n_max: usize, opts: &EnumerateOptions) -> Result<Vec<EnumerationRun>, EnumerateError> {
    if n_max < 4 {
        return Err(EnumerateError::TooSmall(n_max));
    }
    if n_max > opts.limit {
        return Err(EnumerateError::LimitExceeded { n: n_max, limit: opts.limit });
    }
    let start = Instant::now();
    let c4 = fixture("c4").expect("built-in fixture");
    let (code, form) = canonical_form(&c4);
    let mut runs = vec![EnumerationRun {
        n: 4,
        codes: vec![code],
        instances: vec![Quadrangulation::new(form).unwrap()],
        elapsed: start.elapsed(),
    }];
    for n in 5..=n_max {
        let start = Instant::now();
        let (codes, instances) = next_level(&runs.last().unwrap().instances, opts.execution);
        runs.push(EnumerationRun { n, codes, instances, elapsed: start.elapsed() });
    }
    Ok(runs)
}

/// All quadrangulations on exactly `n` vertices up to isomorphism.
pub fn enumerate_quadrangulations(n: usize, opts: &EnumerateOptions) -> Result<EnumerationRun, EnumerateError> {
    if n < 4 {
        return Err(EnumerateError::TooSmall(n));
    }
    Ok(enumerate_up_to(n, opts)?.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::canonical_code;

    #[test]
    fn smallest_levels() {
        let runs = enumerate_up_to(6, &EnumerateOptions::default()).unwrap();
        let counts: Vec<usize> = runs.iter().map(EnumerationRun::count).collect();
        assert_eq!(counts, vec![1, 1, 2]);
        assert_eq!(runs[1].codes[0], canonical_code(&fixture("pyramid5").unwrap()));
    }

    #[test]
    fn out_of_range() {
        let opts = EnumerateOptions::default();
        assert_eq!(enumerate_quadrangulations(3, &opts).unwrap_err(), EnumerateError::TooSmall(3));
        assert_eq!(
            enumerate_quadrangulations(13, &opts).unwrap_err(),
            EnumerateError::LimitExceeded { n: 13, limit: 12 }
        );
    }

    #[test]
    fn cube_expansions_are_valid() {
        let cube = fixture("cube").unwrap();
        let ex = expansions(&cube);
        // 6 faces x 2 diagonals, 24 darts
        assert_eq!(ex.len(), 12 + 24);
        assert!(ex.iter().all(|g| g.n() == 9));
    }

    #[test]
    fn instances_are_canonical_forms() {
        let run = enumerate_quadrangulations(8, &EnumerateOptions::default()).unwrap();
        for (code, q) in run.codes.iter().zip(&run.instances) {
            let (c, form) = canonical_form(q);
            assert_eq!(&c, code);
            assert_eq!(&form, q.embedded());
        }
        assert!(run.codes.windows(2).all(|w| w[0] < w[1]));
    }
}
