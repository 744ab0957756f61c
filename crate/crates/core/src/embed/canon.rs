use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{EmbeddedGraph, Orientation};

/// Isomorphism-invariant code of an embedded graph.
///
/// Two connected maps get the same code iff they are isomorphic, reflections
/// included. Codes sort first by vertex count.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

struct Traversal {
    code: Vec<u16>,
    /// vertices in label order
    order: Vec<usize>,
    /// dart each vertex's rotation is read from
    first: Vec<usize>,
}

/// BFS from `start`, labelling vertices in discovery order and emitting the
/// label sequence of every rotation (each list closed by 0). Returns `None`
/// as soon as the code becomes larger than `bound`.
fn traverse(g: &EmbeddedGraph, start: usize, orient: Orientation, bound: Option<&[u16]>) -> Option<Traversal> {
    let n = g.n();
    let mut label = vec![0u16; n];
    let mut first = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut code = Vec::with_capacity(g.dart_count() + n);
    let mut tight = bound.is_some();

    let root = g.tail(start);
    label[root] = 1;
    first[root] = start;
    order.push(root);
    let mut queue = VecDeque::from([root]);

    let emit = |code: &mut Vec<u16>, x: u16, tight: &mut bool| -> bool {
        if *tight {
            let b = bound.unwrap()[code.len()];
            match x.cmp(&b) {
                Ordering::Greater => return false,
                Ordering::Less => *tight = false,
                Ordering::Equal => {}
            }
        }
        code.push(x);
        true
    };

    while let Some(x) = queue.pop_front() {
        let mut d = first[x];
        for _ in 0..g.degree(x) {
            let y = g.head(d);
            if label[y] == 0 {
                order.push(y);
                label[y] = order.len() as u16;
                first[y] = g.reverse(d);
                queue.push_back(y);
            }
            if !emit(&mut code, label[y], &mut tight) {
                return None;
            }
            d = g.turn(d, orient);
        }
        if !emit(&mut code, 0, &mut tight) {
            return None;
        }
    }
    Some(Traversal { code, order, first })
}

fn best_traversal(g: &EmbeddedGraph) -> (Traversal, Orientation) {
    let mut best: Option<(Traversal, Orientation)> = None;
    for orient in [Orientation::Forward, Orientation::Reverse] {
        for d in 0..g.dart_count() {
            let bound = best.as_ref().map(|(t, _)| t.code.as_slice());
            if let Some(t) = traverse(g, d, orient, bound) {
                let better = match &best {
                    None => true,
                    Some((b, _)) => t.code < b.code,
                };
                if better {
                    best = Some((t, orient));
                }
            }
        }
    }
    if g.dart_count() == 0 {
        // single vertex
        let t = Traversal { code: vec![0], order: vec![0], first: vec![usize::MAX] };
        return (t, Orientation::Forward);
    }
    best.expect("at least one dart")
}

fn pack(n: usize, code: &[u16]) -> CanonicalCode {
    let mut bytes = Vec::with_capacity(2 * (code.len() + 1));
    bytes.extend_from_slice(&(n as u16).to_be_bytes());
    for &x in code {
        bytes.extend_from_slice(&x.to_be_bytes());
    }
    CanonicalCode(bytes)
}

/// Canonical code: the lexicographically least BFS code over every starting
/// dart and both orientations.
pub fn canonical_code(g: &EmbeddedGraph) -> CanonicalCode {
    let (t, _) = best_traversal(g);
    pack(g.n(), &t.code)
}

/// Canonical code together with the canonically relabelled map. Vertex `i`
/// of the returned graph is the vertex that received label `i + 1`, and its
/// rotation starts at the dart the traversal read it from.
pub fn canonical_form(g: &EmbeddedGraph) -> (CanonicalCode, EmbeddedGraph) {
    let (t, orient) = best_traversal(g);
    if g.dart_count() == 0 {
        return (pack(g.n(), &t.code), g.clone());
    }
    let mut new_label = vec![0; g.n()];
    for (i, &v) in t.order.iter().enumerate() {
        new_label[v] = i;
    }
    let rotation = t
        .order
        .iter()
        .map(|&v| {
            let mut d = t.first[v];
            (0..g.degree(v))
                .map(|_| {
                    let w = new_label[g.head(d)];
                    d = g.turn(d, orient);
                    w
                })
                .collect()
        })
        .collect();
    let relabelled = EmbeddedGraph::new(rotation).expect("canonical relabelling is valid");
    (pack(g.n(), &t.code), relabelled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> EmbeddedGraph {
        let faces = vec![
            vec![0, 1, 3, 2],
            vec![4, 5, 7, 6],
            vec![0, 1, 5, 4],
            vec![2, 3, 7, 6],
            vec![0, 2, 6, 4],
            vec![1, 3, 7, 5],
        ];
        EmbeddedGraph::from_face_cycles(8, &faces).unwrap()
    }

    #[test]
    fn relabelled_c4_same_code() {
        let a = EmbeddedGraph::new(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        let b = a.relabel(&[2, 0, 3, 1]);
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn different_sizes_differ() {
        let c4 = EmbeddedGraph::new(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        let p5 = EmbeddedGraph::from_face_cycles(5, &[vec![0, 1, 2, 4], vec![0, 4, 2, 3], vec![0, 1, 2, 3]])
            .unwrap();
        assert_ne!(canonical_code(&c4), canonical_code(&p5));
    }

    #[test]
    fn cube_equals_its_mirror() {
        let g = cube();
        assert_eq!(canonical_code(&g), canonical_code(&g.mirror()));
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        let g = cube().relabel(&[5, 3, 0, 7, 1, 6, 2, 4]);
        let (code, form) = canonical_form(&g);
        let (code2, form2) = canonical_form(&form);
        assert_eq!(code, code2);
        assert_eq!(form, form2);
        assert_eq!(form.faces().len(), 6);
    }
}
