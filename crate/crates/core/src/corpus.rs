//! Desk-scale corpora: connected multigraphs (loops and parallel edges
//! allowed) by edge count, and their cycle and bond matroids up to
//! isomorphism.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use rayon::prelude::*;

use crate::catalog::{cycle_matroid, Multigraph};
use crate::construct::single_extensions;
use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, Profile, Signature};
use crate::matroid::BinaryMatroid;
use crate::recognition::is_graphic;

/// Largest `max_edges` accepted by the corpus builders.
pub const MAX_CORPUS_EDGES: usize = 10;

/// Largest edge count run without a runtime warning.
pub const DEFAULT_MAX_EDGES: usize = 8;

/// Symmetric edge-multiplicity matrix; the diagonal counts loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Adjacency {
    n: usize,
    mult: Vec<u8>,
}

impl Adjacency {
    fn single_vertex() -> Self {
        Adjacency {
            n: 1,
            mult: vec![0],
        }
    }

    fn at(&self, u: usize, v: usize) -> u8 {
        self.mult[u * self.n + v]
    }

    fn add(&mut self, u: usize, v: usize) {
        self.mult[u * self.n + v] += 1;
        if u != v {
            self.mult[v * self.n + u] += 1;
        }
    }

    fn with_vertex(&self) -> Self {
        let n = self.n + 1;
        let mut mult = vec![0u8; n * n];
        for u in 0..self.n {
            for v in 0..self.n {
                mult[u * n + v] = self.at(u, v);
            }
        }
        Adjacency { n, mult }
    }

    /// Upper triangle (with diagonal) read row by row under `perm`.
    fn key_under(&self, perm: &[usize]) -> Vec<u8> {
        let mut key = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for i in 0..self.n {
            for j in i..self.n {
                key.push(self.at(perm[i], perm[j]));
            }
        }
        key
    }

    /// Colour refinement starting from (loops, degree).
    fn refined_colours(&self) -> Vec<usize> {
        let n = self.n;
        let initial: Vec<(u8, usize)> = (0..n)
            .map(|u| {
                let degree: usize = (0..n).map(|v| self.at(u, v) as usize).sum();
                (self.at(u, u), degree)
            })
            .collect();
        let mut colours = compress(&initial);
        loop {
            let signatures: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
                .map(|u| {
                    let mut nb: Vec<(usize, u8)> = (0..n)
                        .filter(|&v| v != u && self.at(u, v) > 0)
                        .map(|v| (colours[v], self.at(u, v)))
                        .collect();
                    nb.sort_unstable();
                    (colours[u], nb)
                })
                .collect();
            let next = compress(&signatures);
            let stable = next.iter().max() == colours.iter().max();
            colours = next;
            if stable {
                return colours;
            }
        }
    }

    /// Lexicographically least key over orderings that respect the refined
    /// colour classes; equal keys mean isomorphic graphs.
    fn canonical(&self) -> Self {
        let colours = self.refined_colours();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for c in 0..=colours.iter().copied().max().unwrap_or(0) {
            let cell: Vec<usize> = (0..self.n).filter(|&u| colours[u] == c).collect();
            if !cell.is_empty() {
                cells.push(cell);
            }
        }
        let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
        let orderings = cells
            .iter()
            .map(|cell| cell.iter().copied().permutations(cell.len()))
            .multi_cartesian_product();
        if cells.is_empty() {
            return self.clone();
        }
        for choice in orderings {
            let perm: Vec<usize> = choice.concat();
            let key = self.key_under(&perm);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, perm));
            }
        }
        let (_, perm) = best.expect("at least one ordering");
        let mut out = Adjacency {
            n: self.n,
            mult: vec![0; self.n * self.n],
        };
        for i in 0..self.n {
            for j in 0..self.n {
                out.mult[i * self.n + j] = self.at(perm[i], perm[j]);
            }
        }
        out
    }

    fn to_multigraph(&self, name: String) -> Multigraph {
        let mut g = Multigraph::new(name, self.n);
        let mut label = 0;
        for u in 0..self.n {
            for v in u..self.n {
                for _ in 0..self.at(u, v) {
                    label += 1;
                    g.add_edge(u, v, format!("e{label}"))
                        .expect("edges in range");
                }
            }
        }
        g
    }
}

/// Relabels values by their rank among the distinct values.
fn compress<T: Ord + Clone>(values: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = values.to_vec();
    distinct.sort();
    distinct.dedup();
    values
        .iter()
        .map(|v| distinct.binary_search(v).expect("value present"))
        .collect()
}

fn check_max_edges(max_edges: usize) -> Result<()> {
    if max_edges > MAX_CORPUS_EDGES {
        return Err(Error::Invalid(format!(
            "max_edges {max_edges} exceeds the supported corpus size {MAX_CORPUS_EDGES}"
        )));
    }
    Ok(())
}

/// Connected multigraphs up to graph isomorphism, grouped by edge count
/// `0..=max_edges`. Loops and parallel edges are included.
pub fn connected_multigraphs(max_edges: usize) -> Result<Vec<Vec<Multigraph>>> {
    check_max_edges(max_edges)?;
    let mut levels: Vec<Vec<Adjacency>> = vec![vec![Adjacency::single_vertex()]];
    for _ in 0..max_edges {
        let prev = levels.last().expect("nonempty");
        let children: Vec<Vec<Adjacency>> = prev
            .par_iter()
            .map(|g| {
                let mut out = Vec::new();
                for u in 0..g.n {
                    for v in u..g.n {
                        let mut h = g.clone();
                        h.add(u, v);
                        out.push(h.canonical());
                    }
                    let mut h = g.with_vertex();
                    h.add(u, g.n);
                    out.push(h.canonical());
                }
                out
            })
            .collect();
        let mut seen = HashSet::new();
        let mut level: Vec<Adjacency> = children
            .into_iter()
            .flatten()
            .filter(|g| seen.insert(g.clone()))
            .collect();
        level.sort_by(|a, b| (a.n, &a.mult).cmp(&(b.n, &b.mult)));
        levels.push(level);
    }
    Ok(levels
        .into_iter()
        .enumerate()
        .map(|(m, level)| {
            level
                .into_iter()
                .enumerate()
                .map(|(i, g)| g.to_multigraph(format!("G{m}_{i}")))
                .collect()
        })
        .collect())
}

/// Keeps one matroid per isomorphism class, preserving first occurrence.
pub fn dedupe_by_signature(items: Vec<BinaryMatroid>) -> Vec<BinaryMatroid> {
    let profiles: Vec<Profile> = items.par_iter().map(Profile::build).collect();
    let mut buckets: HashMap<Signature, Vec<usize>> = HashMap::new();
    let mut kept = Vec::new();
    for (i, p) in profiles.iter().enumerate() {
        let bucket = buckets.entry(p.signature().clone()).or_default();
        if bucket
            .iter()
            .all(|&j| find_isomorphism(p, &profiles[j]).is_none())
        {
            bucket.push(i);
            kept.push(i);
        }
    }
    let mut items: Vec<Option<BinaryMatroid>> = items.into_iter().map(Some).collect();
    kept.into_iter()
        .map(|i| items[i].take().expect("kept once"))
        .collect()
}

/// Cycle matroids of connected multigraphs with at most `max_edges` edges,
/// one per isomorphism class, ordered by size then enumeration order.
pub fn graphic_corpus(max_edges: usize) -> Result<Vec<BinaryMatroid>> {
    let graphs = connected_multigraphs(max_edges)?;
    let mut out = Vec::new();
    for level in graphs {
        let matroids: Vec<BinaryMatroid> = level
            .iter()
            .map(|g| cycle_matroid(g).with_name(format!("M({})", g.name)))
            .collect();
        out.extend(dedupe_by_signature(matroids));
    }
    Ok(out)
}

/// Bond matroids `M*(G)` of the same graphs, one per isomorphism class.
pub fn cographic_corpus(max_edges: usize) -> Result<Vec<BinaryMatroid>> {
    Ok(graphic_corpus(max_edges)?
        .into_iter()
        .map(|m| m.dual())
        .collect())
}

/// Graphic matroids grown by binary single-element extensions filtered to
/// graphic ones, one per isomorphism class. An independent route to the
/// same classes as [`graphic_corpus`].
pub fn graphic_corpus_by_extension(max_edges: usize) -> Result<Vec<BinaryMatroid>> {
    check_max_edges(max_edges)?;
    let empty = BinaryMatroid::from_columns(Vec::<String>::new(), 0, &[])?;
    let mut level = vec![empty];
    let mut out = level.clone();
    for _ in 0..max_edges {
        let candidates: Vec<BinaryMatroid> = level
            .par_iter()
            .map(|m| {
                single_extensions(m)
                    .map(|e| e.matroid)
                    .filter(|n| is_graphic(n).map(|v| v.holds).unwrap_or(false))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        level = dedupe_by_signature(candidates);
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(max_edges: usize) -> Vec<usize> {
        connected_multigraphs(max_edges)
            .unwrap()
            .iter()
            .map(Vec::len)
            .collect()
    }

    #[test]
    fn multigraph_counts_match_known_values() {
        // Connected multigraphs with loops allowed, by number of edges.
        assert_eq!(counts(8), vec![1, 2, 4, 11, 30, 95, 328, 1211, 4779]);
    }

    /// Canonical key by trying every vertex permutation.
    fn brute_key(a: &Adjacency) -> Vec<u8> {
        (0..a.n)
            .permutations(a.n)
            .map(|p| a.key_under(&p))
            .min()
            .unwrap()
    }

    #[test]
    fn counts_match_exhaustive_classification() {
        for m in 1..=4usize {
            let n = m + 1;
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
            let mut classes = HashSet::new();
            for choice in pairs.iter().combinations_with_replacement(m) {
                let used: HashSet<usize> = choice.iter().flat_map(|&&(u, v)| [u, v]).collect();
                let k = used.len();
                if used.iter().any(|&u| u >= k) {
                    continue;
                }
                let mut a = Adjacency {
                    n: k,
                    mult: vec![0; k * k],
                };
                for &&(u, v) in &choice {
                    a.add(u, v);
                }
                if a.to_multigraph("g".into()).is_connected() {
                    classes.insert((k, brute_key(&a)));
                }
            }
            assert_eq!(classes.len(), counts(m)[m], "edge count {m}");
        }
    }

    #[test]
    fn canonical_form_ignores_vertex_order() {
        let mut a = Adjacency::single_vertex()
            .with_vertex()
            .with_vertex()
            .with_vertex();
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 3), (0, 1)] {
            a.add(u, v);
        }
        let mut b = Adjacency::single_vertex()
            .with_vertex()
            .with_vertex()
            .with_vertex();
        for (u, v) in [(3, 2), (2, 1), (1, 0), (0, 0), (3, 2)] {
            b.add(u, v);
        }
        assert_eq!(a.canonical(), b.canonical());
        let mut c = b.clone();
        c.add(0, 3);
        assert_ne!(a.canonical(), c.canonical());
    }

    #[test]
    fn corpus_members_are_connected_and_graphic() {
        for level in connected_multigraphs(5).unwrap() {
            for g in level {
                assert!(g.is_connected());
                assert!(is_graphic(&cycle_matroid(&g)).unwrap().holds);
            }
        }
    }

    #[test]
    fn both_generators_agree() {
        let a = graphic_corpus(6).unwrap();
        let b = graphic_corpus_by_extension(6).unwrap();
        assert_eq!(a.len(), b.len());
        let merged = dedupe_by_signature(a.iter().chain(b.iter()).cloned().collect());
        assert_eq!(merged.len(), a.len());
    }

    #[test]
    fn rejects_oversized_corpus() {
        assert!(connected_multigraphs(MAX_CORPUS_EDGES + 1).is_err());
    }
}
