#[path = "common/oracles.rs"]
mod oracles;

use num_traits::ToPrimitive;
use proptest::prelude::*;

use tvgraph::graph::{build_abstract_graph, max_clique};
use tvgraph::partition::{
    abstract_degree, abstract_diameter, abstract_edge_count, brute_force_edge_count, edge_count, enumerate_r_partitions, partition_distance,
    stirling2, stirling2_assoc, CountMethod,
};
use tvgraph::{Error, Partition};

fn labels(n: usize, r: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..r, n)
}

fn partition_of(labels: &[usize]) -> Partition {
    Partition::from_labels(labels).unwrap()
}

#[test]
fn stirling_matches_recurrence() {
    for n in 0..=16 {
        for r in 0..=n {
            assert_eq!(stirling2(n, r).to_u128().unwrap(), oracles::stirling2(n, r), "S({n},{r})");
        }
    }
    for n in 0..=9 {
        for r in 0..=n {
            let no_singletons = oracles::label_vectors(n, r)
                .iter()
                .filter(|l| oracles::parts_of(l).iter().all(|p| p.len() >= 2))
                .count();
            let expected = if n == 0 && r == 0 { 1 } else { no_singletons };
            assert_eq!(stirling2_assoc(n, r).to_usize().unwrap(), expected, "S2({n},{r})");
        }
    }
}

#[test]
fn enumeration_is_complete_and_canonical() {
    for n in 1..=9 {
        for r in 1..=n.min(if n == 9 { 4 } else { n }) {
            let got: Vec<Vec<usize>> = enumerate_r_partitions(n, r).unwrap().map(|p| p.labels()).collect();
            assert_eq!(got, oracles::label_vectors(n, r), "n={n} r={r}");
        }
    }
}

#[test]
fn edge_counts_match_move_count() {
    for n in 2..=9 {
        for r in 1..=n {
            let (count, method) = edge_count(n, r).unwrap();
            assert_eq!(count.to_u128().unwrap(), oracles::abstract_edges(n, r), "n={n} r={r}");
            let expected = if 2 * r <= n { CountMethod::ClosedForm } else { CountMethod::Enumeration };
            assert_eq!(method, expected);
        }
    }
}

#[test]
fn closed_form_is_half_the_degree_sum() {
    for n in 4..=9 {
        for r in 2..=n / 2 {
            let degree_sum: usize = enumerate_r_partitions(n, r).unwrap().map(|p| abstract_degree(&p)).sum();
            let closed = abstract_edge_count(n, r).unwrap().to_usize().unwrap();
            assert_eq!(2 * closed, degree_sum, "n={n} r={r}");
            assert_eq!(closed as u64, brute_force_edge_count(n, r).unwrap());
        }
    }
}

#[test]
fn abstract_clique_number_is_r_except_three_points() {
    for n in 3..=7 {
        for r in 2..n {
            let g = build_abstract_graph(n, r).unwrap();
            // The three 2-partitions of a 3-set are pairwise adjacent.
            let expected = if (n, r) == (3, 2) { 3 } else { r };
            assert_eq!(max_clique(&g.adjacency).len(), expected, "n={n} r={r}");
        }
    }
}

#[test]
fn closed_form_refuses_outside_its_range() {
    assert!(matches!(abstract_edge_count(5, 3), Err(Error::HypothesisViolated { n: 5, r: 3 })));
}

#[test]
fn abstract_graph_adjacency_is_distance_one() {
    for n in 2..=6 {
        for r in 1..=n {
            let g = build_abstract_graph(n, r).unwrap();
            for (i, p) in g.vertices.iter().enumerate() {
                assert_eq!(g.degree(i), abstract_degree(p));
                for (j, other) in g.vertices.iter().enumerate() {
                    let adjacent = g.adjacency[i].binary_search(&j).is_ok();
                    let d = oracles::move_distance(&p.labels(), &other.labels(), r);
                    assert_eq!(adjacent, d == 1, "{p} vs {other}");
                }
            }
        }
    }
}

#[test]
fn diameter_formula_matches_bfs() {
    for n in 1..=8 {
        for r in 1..=n {
            let g = build_abstract_graph(n, r).unwrap();
            let bfs = (0..g.vertex_count())
                .map(|s| g.distances_from(s).into_iter().map(Option::unwrap).max().unwrap())
                .max()
                .unwrap();
            assert_eq!(abstract_diameter(n, r).unwrap(), bfs, "n={n} r={r}");
        }
    }
}

#[test]
fn one_pair_partitions_form_the_kneser_complement() {
    // Partitions of [n] into n-1 parts are the 2-subsets; two are adjacent
    // exactly when the pairs overlap.
    for n in 3..=7 {
        let g = build_abstract_graph(n, n - 1).unwrap();
        let pair = |p: &Partition| p.parts().into_iter().find(|part| part.len() == 2).unwrap();
        for i in 0..g.vertex_count() {
            for j in 0..g.vertex_count() {
                if i == j {
                    continue;
                }
                let (a, b) = (pair(&g.vertices[i]), pair(&g.vertices[j]));
                let overlap = a.iter().any(|x| b.contains(x));
                assert_eq!(g.adjacency[i].binary_search(&j).is_ok(), overlap);
            }
        }
    }
}

#[test]
fn parse_and_display_round_trip() {
    let p: Partition = "0,1,1,0,2".parse().unwrap();
    assert_eq!(p.to_string(), "0,1,1,0,2");
    assert_eq!(p.num_parts(), 3);
    assert_eq!("0,2".parse::<Partition>().unwrap().to_string(), "0,1");
    assert!("0,x".parse::<Partition>().is_err());
    assert!("".parse::<Partition>().is_err());
}

proptest! {
    #[test]
    fn distance_is_a_metric(a in labels(7, 3), b in labels(7, 3), c in labels(7, 3)) {
        let (p, q, s) = (partition_of(&a), partition_of(&b), partition_of(&c));
        let pq = partition_distance(&p, &q).unwrap();
        prop_assert_eq!(pq, partition_distance(&q, &p).unwrap());
        prop_assert_eq!(partition_distance(&p, &p).unwrap(), 0);
        prop_assert_eq!(pq == 0, p == q);
        let ps = partition_distance(&p, &s).unwrap();
        let sq = partition_distance(&s, &q).unwrap();
        prop_assert!(pq <= ps + sq);
    }

    #[test]
    fn distance_matches_brute_force(a in labels(8, 4), b in labels(8, 4)) {
        let (p, q) = (partition_of(&a), partition_of(&b));
        let r = p.num_parts().max(q.num_parts());
        prop_assert_eq!(partition_distance(&p, &q).unwrap(), oracles::move_distance(&p.labels(), &q.labels(), r));
    }

    #[test]
    fn labels_are_canonical(a in labels(9, 4)) {
        let p = partition_of(&a);
        let relabeled: Vec<usize> = a.iter().map(|&l| 3 - l).collect();
        prop_assert_eq!(&partition_of(&relabeled), &p);
        prop_assert_eq!(p.labels()[0], 0);
    }

    #[test]
    fn neighbors_are_at_distance_one(a in labels(7, 3)) {
        let p = partition_of(&a);
        for q in p.neighbors() {
            prop_assert_eq!(q.num_parts(), p.num_parts());
            prop_assert_eq!(partition_distance(&p, &q).unwrap(), 1);
        }
        prop_assert_eq!(p.neighbors().len(), abstract_degree(&p));
    }
}
