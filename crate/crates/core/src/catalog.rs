//! Multigraphs, cycle matroids, and the named objects used throughout.
//!
//! Names recognized by [`named`]:
//!
//! * `F7` (the Fano matroid) and `F7*`;
//! * `M(K5)`, `M*(K5)`, `M(K33)`, `M*(K33)`;
//! * `M(X)` and `M*(X)` for every catalog graph `X` in
//!   `F1`..`F7`, `G1`, `G2`, `Q1`..`Q9`, `F1*`;
//! * bare graph names `F1`..`F6`, `G1`, `G2`, `Q1`..`Q9` as shorthand for
//!   their cycle matroids. `F7` is not in this list: it always means Fano,
//!   and the graph is reached as `M(F7)`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::matroid::BinaryMatroid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: String,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// A labeled multigraph; loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub name: String,
    pub vertices: usize,
    pub edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(name: impl Into<String>, vertices: usize) -> Self {
        Multigraph {
            name: name.into(),
            vertices,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, label: impl Into<String>) -> Result<()> {
        let label = label.into();
        if u >= self.vertices || v >= self.vertices {
            return Err(Error::Invalid(format!(
                "edge `{label}` joins {u}-{v} but the graph has {} vertices",
                self.vertices
            )));
        }
        if self.edges.iter().any(|e| e.label == label) {
            return Err(Error::DuplicateLabel(label));
        }
        self.edges.push(Edge { u, v, label });
        Ok(())
    }

    /// Builds a graph from `(u, v)` pairs labeled `e1`, `e2`, ...
    pub fn from_pairs(
        name: impl Into<String>,
        vertices: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let mut g = Multigraph::new(name, vertices);
        for (k, &(u, v)) in pairs.iter().enumerate() {
            g.add_edge(u, v, format!("e{}", k + 1))?;
        }
        Ok(g)
    }

    /// Complete graph with edges labeled `u-v`.
    pub fn complete(n: usize) -> Self {
        let mut g = Multigraph::new(format!("K{n}"), n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v, format!("{u}-{v}"))
                    .expect("distinct labels");
            }
        }
        g
    }

    /// Complete bipartite graph; sides are `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Multigraph::new(format!("K{a}{b}"), a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v, format!("{u}-{v}"))
                    .expect("distinct labels");
            }
        }
        g
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertices;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Parses the graph text format: `name n_vertices`, then `label u v` per edge.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Multigraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let (ln, header) = lines
            .next()
            .ok_or_else(|| perr(1, "missing header line".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(perr(ln, "expected `name n_vertices`".into()));
        }
        let vertices: usize = fields[1]
            .parse()
            .map_err(|_| perr(ln, format!("bad vertex count `{}`", fields[1])))?;
        let mut g = Multigraph::new(fields[0], vertices);
        for (ln, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(perr(ln, "expected `label u v`".into()));
            }
            let endpoint = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| perr(ln, format!("bad vertex `{s}`")))
            };
            let (u, v) = (endpoint(f[1])?, endpoint(f[2])?);
            g.add_edge(u, v, f[0])
                .map_err(|e| perr(ln, e.to_string()))?;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.name, self.vertices);
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.label, e.u, e.v);
        }
        out
    }
}

/// Cycle matroid: column matroid of the vertex-edge incidence matrix.
pub fn cycle_matroid(g: &Multigraph) -> BinaryMatroid {
    assert!(g.vertices <= 64, "incidence rows are packed into one word");
    let columns: Vec<u64> = g
        .edges
        .iter()
        .map(|e| {
            if e.is_loop() {
                0
            } else {
                (1u64 << e.u) | (1u64 << e.v)
            }
        })
        .collect();
    let labels: Vec<String> = g.edges.iter().map(|e| e.label.clone()).collect();
    BinaryMatroid::from_columns(labels, g.vertices, &columns)
        .expect("graph edges have distinct labels")
        .with_name(format!("M({})", g.name))
}

pub fn load_graph(text: &str) -> Result<Multigraph> {
    Multigraph::parse(text)
}

pub fn save_graph(g: &Multigraph) -> String {
    g.to_text()
}

const GRAPH_FILES: &[(&str, &str)] = &[
    ("F1", include_str!("../data/graphs/f1.graph")),
    ("F2", include_str!("../data/graphs/f2.graph")),
    ("F3", include_str!("../data/graphs/f3.graph")),
    ("F4", include_str!("../data/graphs/f4.graph")),
    ("F5", include_str!("../data/graphs/f5.graph")),
    ("F6", include_str!("../data/graphs/f6.graph")),
    ("F7", include_str!("../data/graphs/f7.graph")),
    ("G1", include_str!("../data/graphs/g1.graph")),
    ("G2", include_str!("../data/graphs/g2.graph")),
    ("Q1", include_str!("../data/graphs/q1.graph")),
    ("Q2", include_str!("../data/graphs/q2.graph")),
    ("Q3", include_str!("../data/graphs/q3.graph")),
    ("Q4", include_str!("../data/graphs/q4.graph")),
    ("Q5", include_str!("../data/graphs/q5.graph")),
    ("Q6", include_str!("../data/graphs/q6.graph")),
    ("Q7", include_str!("../data/graphs/q7.graph")),
    ("Q8", include_str!("../data/graphs/q8.graph")),
    ("Q9", include_str!("../data/graphs/q9.graph")),
    ("F1*", include_str!("../data/graphs/f1star.graph")),
];

/// Names of the catalog graphs, in catalog order.
pub fn graph_names() -> impl Iterator<Item = &'static str> {
    GRAPH_FILES.iter().map(|(n, _)| *n).chain(["K5", "K33"])
}

/// A catalog graph by name (`F1`..`F7`, `G1`, `G2`, `Q1`..`Q9`, `F1*`, `K5`, `K33`).
pub fn graph(name: &str) -> Result<Multigraph> {
    match name {
        "K5" => return Ok(Multigraph::complete(5)),
        "K33" | "K3,3" => return Ok(Multigraph::complete_bipartite(3, 3)),
        _ => {}
    }
    let text = GRAPH_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    Multigraph::parse(text)
}

/// The Fano matroid from `[I3 | 110, 101, 011, 111]` (columns read top to bottom).
pub fn fano() -> BinaryMatroid {
    let m = Gf2Matrix::from_strs(7, &["1001101", "0101011", "0010111"]).expect("well-formed");
    BinaryMatroid::from_matrix(vec!["a", "b", "c", "d", "e", "f", "g"], &m)
        .expect("distinct labels")
        .with_name("F7")
}

struct Catalog {
    entries: Vec<(String, BinaryMatroid)>,
}

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut entries = Vec::new();
        let f7 = fano();
        entries.push(("F7*".to_string(), f7.dual().with_name("F7*")));
        entries.push(("F7".to_string(), f7));
        // Quotient graphs first and cycle matroids before bond matroids, so
        // that lookups by isomorphism report the most familiar name.
        let mut names: Vec<&str> = graph_names().collect();
        names.sort_by_key(|g| !g.starts_with('Q'));
        let mut duals = Vec::new();
        for key in names {
            let graph = graph(key).expect("bundled graph data parses");
            let m = cycle_matroid(&graph).with_name(format!("M({key})"));
            duals.push((
                format!("M*({key})"),
                m.dual().with_name(format!("M*({key})")),
            ));
            entries.push((format!("M({key})"), m));
        }
        entries.extend(duals);
        Catalog { entries }
    })
}

/// Every canonical catalog name, in a stable order.
pub fn index() -> Vec<&'static str> {
    catalog().entries.iter().map(|(n, _)| n.as_str()).collect()
}

fn canonical(name: &str) -> String {
    let name = name.replace("K3,3", "K33");
    match name.as_str() {
        "fano" | "Fano" => "F7".into(),
        "fano*" | "Fano*" => "F7*".into(),
        "K5" | "K33" | "F1*" => format!("M({name})"),
        "K5*" => "M*(K5)".into(),
        "K33*" => "M*(K33)".into(),
        _ => {
            let bare = ["F1", "F2", "F3", "F4", "F5", "F6", "G1", "G2"]
                .iter()
                .chain(["Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7", "Q8", "Q9"].iter())
                .any(|g| *g == name);
            if bare {
                format!("M({name})")
            } else {
                name
            }
        }
    }
}

/// Looks up a catalog matroid by name.
pub fn named(name: &str) -> Result<BinaryMatroid> {
    let key = canonical(name);
    catalog()
        .entries
        .iter()
        .find(|(n, _)| *n == key)
        .map(|(_, m)| m.clone())
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// The excluded minors for graphic matroids: F7*, M*(K33), F7, M*(K5).
pub fn graphic_excluded() -> Vec<BinaryMatroid> {
    ["F7*", "M*(K33)", "F7", "M*(K5)"]
        .iter()
        .map(|n| named(n).expect("catalog entry"))
        .collect()
}

/// The excluded minors for cographic matroids: F7, M(K5), F7*, M(K33).
pub fn cographic_excluded() -> Vec<BinaryMatroid> {
    ["F7", "M(K5)", "F7*", "M(K33)"]
        .iter()
        .map(|n| named(n).expect("catalog entry"))
        .collect()
}

/// Whether the named graph data carries distinct labels and in-range endpoints.
pub fn check_graph_data() -> Result<()> {
    for (name, text) in GRAPH_FILES {
        let g = Multigraph::parse(text)?;
        let labels: HashSet<&str> = g.edges.iter().map(|e| e.label.as_str()).collect();
        if labels.len() != g.edges.len() {
            return Err(Error::Invalid(format!(
                "graph {name} repeats an edge label"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::GroundSubset;

    /// Rank of an edge subset via union-find: |V| minus components of the spanning subgraph.
    fn forest_rank(g: &Multigraph, s: GroundSubset) -> usize {
        let mut parent: Vec<usize> = (0..g.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut rank = 0;
        for i in s.iter() {
            let e = &g.edges[i];
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn triangle() {
        let g = Multigraph::parse("triangle 3\ne1 0 1\ne2 1 2\ne3 2 0\n").unwrap();
        assert_eq!((g.vertices, g.edge_count()), (3, 3));
        let m = cycle_matroid(&g);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.circuits().unwrap(), vec![m.ground()]);
    }

    #[test]
    fn loops_and_duplicates() {
        let g = Multigraph::parse("l 1\ne1 0 0\n").unwrap();
        assert!(g.edges[0].is_loop());
        assert_eq!(cycle_matroid(&g).loops(), GroundSubset::from_indices([0]));
        let err = Multigraph::parse("d 2\ne1 0 1\ne1 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = Multigraph::parse("d 2\ne1 0 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn graph_text_round_trip() {
        for name in graph_names() {
            let g = graph(name).unwrap();
            let text = save_graph(&g);
            let back = load_graph(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(save_graph(&back), text);
        }
        check_graph_data().unwrap();
    }

    #[test]
    fn complete_graph_ranks() {
        let k5 = cycle_matroid(&Multigraph::complete(5));
        assert_eq!((k5.len(), k5.rank(), k5.dual().rank()), (10, 4, 6));
        let k33 = cycle_matroid(&Multigraph::complete_bipartite(3, 3));
        assert_eq!((k33.len(), k33.rank(), k33.dual().rank()), (9, 5, 4));
    }

    #[test]
    fn named_lookup() {
        let f7 = named("F7").unwrap();
        assert_eq!((f7.len(), f7.rank()), (7, 3));
        assert!(named("F7").unwrap().loops().is_empty());
        assert_eq!(named("K3,3").unwrap(), named("M(K33)").unwrap());
        assert_eq!(named("Q1").unwrap(), named("M(Q1)").unwrap());
        assert!(matches!(named("nope"), Err(Error::UnknownName(_))));
        for n in index() {
            assert_eq!(named(n).unwrap().name(), n);
        }
    }

    #[test]
    fn fano_columns_match_the_standard_matrix() {
        let cols = fano().columns().to_vec();
        assert_eq!(cols, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]);
    }

    #[test]
    fn figure_isomorphisms() {
        let f1 = named("F1").unwrap();
        assert!(f1.is_isomorphic(&named("Q1").unwrap()).unwrap().is_some());
        assert!(named("F2")
            .unwrap()
            .is_isomorphic(&named("Q2").unwrap())
            .unwrap()
            .is_some());
        assert!(f1
            .dual()
            .is_isomorphic(&named("M(F1*)").unwrap())
            .unwrap()
            .is_some());
    }

    #[test]
    fn cycle_matroid_matches_forest_oracle() {
        for name in graph_names() {
            let g = graph(name).unwrap();
            if g.edge_count() > 10 {
                continue;
            }
            let m = cycle_matroid(&g);
            assert_eq!(m.rank(), g.vertices - g.component_count());
            for mask in 0u64..(1 << g.edge_count()) {
                let s = GroundSubset::from_mask(mask);
                assert_eq!(m.subset_rank(s), forest_rank(&g, s), "{name} {mask:b}");
            }
        }
    }
}
