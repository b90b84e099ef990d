//! Test graphs: every connected graph on few vertices up to isomorphism, and
//! seeded random graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::graph::Graph;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

/// One representative of each isomorphism class of connected graphs on
/// `1..=max_n` vertices, smallest edge mask first.
///
/// Each edge mask's orbit under all vertex permutations is marked as soon as
/// its first member is met, so the cost is one orbit sweep per class.
pub fn connected_graph_catalog(max_n: usize) -> Result<Vec<Graph>> {
    if max_n > 7 {
        return Err(invalid("the graph catalog is limited to 7 vertices"));
    }
    let mut catalog = Vec::new();
    for n in 1..=max_n {
        let edges = pairs(n);
        let slot = |u: usize, v: usize| edges.iter().position(|&e| e == (u.min(v), u.max(v))).expect("edge");
        let perms = permutations(n);
        // Image of each edge slot under each permutation.
        let moved: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| edges.iter().map(|&(u, v)| slot(p[u - 1], p[v - 1])).collect())
            .collect();
        let mut seen = vec![false; 1usize << edges.len()];
        for mask in 0..1usize << edges.len() {
            if seen[mask] {
                continue;
            }
            for image in &moved {
                let permuted = (0..edges.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(0, |acc, i| acc | 1 << image[i]);
                seen[permuted] = true;
            }
            let chosen: Vec<(usize, usize)> = (0..edges.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            let graph = Graph::from_edges(n, &chosen)?;
            if graph.is_connected() {
                catalog.push(graph);
            }
        }
    }
    Ok(catalog)
}

/// `count` random graphs with vertex counts in `min_n..=max_n`, each edge
/// present with probability `p`.
pub fn seeded_random_graphs(count: usize, min_n: usize, max_n: usize, p: f64, seed: u64) -> Result<Vec<Graph>> {
    if min_n == 0 || min_n > max_n {
        return Err(invalid(format!("bad vertex range {min_n}..={max_n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n..=max_n);
            let edges: Vec<(usize, usize)> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
            Graph::from_edges(n, &edges)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        let catalog = connected_graph_catalog(6).unwrap();
        let per_size: Vec<usize> = (1..=6)
            .map(|n| catalog.iter().filter(|g| g.vertex_count() == n).count())
            .collect();
        assert_eq!(per_size, vec![1, 1, 2, 6, 21, 112]);
        assert!(connected_graph_catalog(8).is_err());
    }

    #[test]
    fn random_graphs_are_reproducible() {
        let a = seeded_random_graphs(20, 3, 7, 0.5, 42).unwrap();
        let b = seeded_random_graphs(20, 3, 7, 0.5, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|g| (3..=7).contains(&g.vertex_count())));
        assert_ne!(a, seeded_random_graphs(20, 3, 7, 0.5, 43).unwrap());
    }
}
