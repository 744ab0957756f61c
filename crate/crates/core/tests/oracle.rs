mod common;

use std::collections::BTreeSet;

use common::{brute_force_quadrangulations, floyd_warshall, maps_isomorphic, oracle_wiener, trace_faces};
use quadwiener::embed::CanonicalCode;
use quadwiener::enumerate::{enumerate_up_to, EnumerateOptions};
use quadwiener::metrics::{wiener_index, DistanceMatrix};

#[test]
fn generator_matches_brute_force_up_to_8() {
    let runs = enumerate_up_to(8, &EnumerateOptions::default()).unwrap();
    for run in &runs {
        let oracle = brute_force_quadrangulations(run.n, 1);
        let generated: BTreeSet<&CanonicalCode> = run.codes.iter().collect();
        let brute: BTreeSet<&CanonicalCode> = oracle.keys().collect();
        assert_eq!(generated, brute, "n = {}", run.n);
    }
    assert_eq!(runs[0].count(), 1);
    assert_eq!(runs[1].count(), 1);
}

#[test]
fn equal_codes_iff_isomorphic() {
    for n in 4..=8 {
        let classes = brute_force_quadrangulations(n, 4);
        let reps: Vec<_> = classes.values().map(|c| &c.members[0]).collect();
        for class in classes.values() {
            for m in &class.members[1..] {
                assert!(maps_isomorphic(&class.members[0], m), "n = {n}: same code, no isomorphism");
            }
        }
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                assert!(!maps_isomorphic(reps[i], reps[j]), "n = {n}: different codes but isomorphic");
            }
        }
    }
}

#[test]
fn generated_instances_match_their_oracle_class() {
    let runs = enumerate_up_to(7, &EnumerateOptions::default()).unwrap();
    for run in &runs {
        let oracle = brute_force_quadrangulations(run.n, 1);
        for (code, q) in run.codes.iter().zip(&run.instances) {
            assert!(maps_isomorphic(q.rotation(), &oracle[code].members[0]));
        }
    }
}

#[test]
fn bfs_distances_match_floyd_warshall() {
    let runs = enumerate_up_to(8, &EnumerateOptions::default()).unwrap();
    for q in runs.iter().flat_map(|r| &r.instances) {
        let fw = floyd_warshall(q.rotation());
        let bfs = DistanceMatrix::new(q);
        for (u, row) in fw.iter().enumerate() {
            assert_eq!(bfs.row(u), row.as_slice());
        }
        assert_eq!(wiener_index(q), oracle_wiener(q.rotation()));
    }
}

#[test]
fn face_tracing_agrees() {
    let runs = enumerate_up_to(8, &EnumerateOptions::default()).unwrap();
    for q in runs.iter().flat_map(|r| &r.instances) {
        let mut ours = q.faces();
        let mut theirs = trace_faces(q.rotation());
        let norm = |f: &mut Vec<usize>| {
            let i = (0..f.len()).min_by_key(|&i| f[i]).unwrap();
            f.rotate_left(i);
        };
        ours.iter_mut().for_each(norm);
        theirs.iter_mut().for_each(norm);
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs);
    }
}
