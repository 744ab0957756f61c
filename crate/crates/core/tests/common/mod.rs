//! Slow, independent reference implementations for small graphs.
#![allow(dead_code)]

use std::collections::BTreeMap;

use quadwiener::embed::{canonical_code, CanonicalCode, EmbeddedGraph};

pub type Rotation = Vec<Vec<usize>>;

/// Face walks of a rotation system: from u -> v continue to v -> w, where
/// w follows u in the rotation at v.
pub fn trace_faces(rot: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen: Vec<Vec<bool>> = rot.iter().map(|l| vec![false; l.len()]).collect();
    let mut faces = Vec::new();
    for u in 0..rot.len() {
        for i in 0..rot[u].len() {
            if seen[u][i] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut j) = (u, i);
            while !seen[a][j] {
                seen[a][j] = true;
                walk.push(a);
                let b = rot[a][j];
                let k = rot[b].iter().position(|&x| x == a).unwrap();
                let k = (k + 1) % rot[b].len();
                a = b;
                j = k;
            }
            faces.push(walk);
        }
    }
    faces
}

fn connected(n: usize, adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Cyclic orders of `items` with the first element fixed.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    fn permute(rest: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>, head: usize) {
        if k == rest.len() {
            let mut v = vec![head];
            v.extend_from_slice(rest);
            out.push(v);
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, out, head);
            rest.swap(k, i);
        }
    }
    let mut out = Vec::new();
    let mut rest = items[1..].to_vec();
    permute(&mut rest, 0, &mut out, items[0]);
    out
}

/// Summary of one isomorphism class found by brute force.
pub struct OracleClass {
    pub labelled_count: usize,
    pub members: Vec<Rotation>,
}

/// All quadrangulations on `n` vertices, found without using the library's
/// generator: every bipartite graph with `2n - 4` edges, minimum degree 2
/// and parts `k <= n - k`, under every rotation system, kept when all faces
/// have length 4. Classes are keyed by canonical code; up to `keep` labelled
/// members are retained per class.
pub fn brute_force_quadrangulations(n: usize, keep: usize) -> BTreeMap<CanonicalCode, OracleClass> {
    let mut classes: BTreeMap<CanonicalCode, OracleClass> = BTreeMap::new();
    let e = 2 * n - 4;
    for k in 2..=n / 2 {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (k..n).map(move |b| (a, b))).collect();
        let m = pairs.len();
        if m < e {
            continue;
        }
        for mask in 0u64..(1u64 << m) {
            if mask.count_ones() as usize != e {
                continue;
            }
            let mut adj = vec![Vec::new(); n];
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
            if adj.iter().any(|l| l.len() < 2) || !connected(n, &adj) {
                continue;
            }
            let choices: Vec<Vec<Vec<usize>>> = adj.iter().map(|l| cyclic_orders(l)).collect();
            let mut idx = vec![0usize; n];
            loop {
                let rot: Rotation = (0..n).map(|v| choices[v][idx[v]].clone()).collect();
                let faces = trace_faces(&rot);
                if faces.len() == n - 2 && faces.iter().all(|f| f.len() == 4) {
                    let g = EmbeddedGraph::new(rot.clone()).expect("valid rotation system");
                    let class = classes
                        .entry(canonical_code(&g))
                        .or_insert_with(|| OracleClass { labelled_count: 0, members: Vec::new() });
                    class.labelled_count += 1;
                    if class.members.len() < keep {
                        class.members.push(rot);
                    }
                }
                // odometer
                let mut v = 0;
                while v < n {
                    idx[v] += 1;
                    if idx[v] < choices[v].len() {
                        break;
                    }
                    idx[v] = 0;
                    v += 1;
                }
                if v == n {
                    break;
                }
            }
        }
    }
    classes
}

fn rotations_match(a: &[usize], b: &[usize]) -> bool {
    let d = a.len();
    if d != b.len() {
        return false;
    }
    (0..d).any(|s| (0..d).all(|i| a[i] == b[(s + i) % d]))
}

/// Whether some vertex bijection carries the map `a` onto `b`, allowing a
/// global reflection. Plain backtracking over vertex images.
pub fn maps_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let adj_b: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| b[u].contains(&v)).collect()).collect();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn check(a: &[Vec<usize>], b: &[Vec<usize>], phi: &[usize]) -> bool {
        let image = |v: usize| -> Vec<usize> { a[v].iter().map(|&w| phi[w]).collect() };
        let forward = (0..a.len()).all(|v| rotations_match(&image(v), &b[phi[v]]));
        let backward = (0..a.len()).all(|v| {
            let mut r = image(v);
            r.reverse();
            rotations_match(&r, &b[phi[v]])
        });
        forward || backward
    }

    fn extend(
        v: usize,
        a: &[Vec<usize>],
        b: &[Vec<usize>],
        adj_b: &[Vec<bool>],
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if v == n {
            return check(a, b, phi);
        }
        for t in 0..n {
            if used[t] || a[v].len() != b[t].len() {
                continue;
            }
            // adjacency to already placed vertices must be preserved both ways
            let ok = (0..v).all(|u| a[v].contains(&u) == adj_b[t][phi[u]]);
            if !ok {
                continue;
            }
            phi[v] = t;
            used[t] = true;
            if extend(v + 1, a, b, adj_b, phi, used) {
                return true;
            }
            used[t] = false;
            phi[v] = usize::MAX;
        }
        false
    }

    extend(0, a, b, &adj_b, &mut phi, &mut used)
}

/// All-pairs distances by Floyd-Warshall over the edge set.
pub fn floyd_warshall(rot: &[Vec<usize>]) -> Vec<Vec<u32>> {
    let n = rot.len();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (u, list) in rot.iter().enumerate() {
        d[u][u] = 0;
        for &w in list {
            d[u][w] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn oracle_wiener(rot: &[Vec<usize>]) -> i64 {
    let d = floyd_warshall(rot);
    let n = rot.len();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| d[i][j] as i64).sum()
}

pub const GOLDEN_PC: &[u8] = include_bytes!("../data/golden100.pc");
pub const GOLDEN_TSV: &str = include_str!("../data/golden100.tsv");
