//! Small simple graphs, chromatic polynomials by deletion-contraction, and
//! sigma polynomials.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{to_falling, Poly};
use crate::umbra::umbral_eval;

/// Default limit on the vertex count accepted by [`chromatic_poly`].
pub const DEFAULT_MAX_VERTICES: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("graph has {vertices} vertices, above the deletion-contraction bound {max} (raise it with --max-vertices or UMBRAL_RZ_MAX_VERTICES)")]
    TooManyVertices { vertices: usize, max: usize },
    #[error("cannot parse graph: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// A simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Duplicate edges collapse; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::EndpointOutOfRange(u, v, vertex_count));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertex_count,
            edges: set,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            vertex_count: n,
            edges: BTreeSet::new(),
        }
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Parse(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Vertex 0 joined to every other vertex.
    pub fn star(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (0, i))).expect("valid star")
    }

    /// Uniform random recursive tree: vertex `i` attaches to a random
    /// earlier vertex.
    pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Self {
        Graph::new(n, (1..n).map(|i| (rng.gen_range(0..i), i))).expect("valid tree")
    }

    /// Erdős–Rényi graph with edge probability `p`.
    pub fn random<R: Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges).expect("valid random graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Presets `path:n`, `cycle:n`, `complete:n`, `star:n`, `empty:n`.
    pub fn from_preset(spec: &str) -> Result<Self, GraphError> {
        let (kind, n) = spec
            .split_once(':')
            .ok_or_else(|| GraphError::Parse(format!("not a preset: {spec:?}")))?;
        let n: usize = n
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad vertex count in {spec:?}")))?;
        match kind {
            "path" => Ok(Graph::path(n)),
            "cycle" => Graph::cycle(n),
            "complete" => Ok(complete_graph(n)),
            "star" => Ok(Graph::star(n)),
            "empty" => Ok(Graph::empty(n)),
            _ => Err(GraphError::Parse(format!("unknown preset {kind:?}"))),
        }
    }

    /// `{"vertices": n, "edges": [[u, v], ...]}`
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        Graph::new(file.vertices, file.edges.into_iter().map(|[u, v]| (u, v)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        })
        .expect("graph serializes")
    }
}

/// `K_r`; `K_0` has no vertices.
pub fn complete_graph(r: usize) -> Graph {
    Graph::new(r, (0..r).flat_map(|u| (u + 1..r).map(move |v| (u, v)))).expect("valid clique")
}

/// Vertices of `h` are renumbered after those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let offset = g.vertex_count;
    let mut edges = g.edges.clone();
    edges.extend(h.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
    Graph {
        vertex_count: g.vertex_count + h.vertex_count,
        edges,
    }
}

type EdgeList = Vec<(usize, usize)>;

/// Relabels vertices by (degree, sorted neighbour degrees) so that many
/// isomorphic subproblems share a memo entry. Equal keys always describe
/// isomorphic graphs; the converse is not guaranteed.
fn canonical_key(n: usize, edges: &[(usize, usize)]) -> (usize, EdgeList) {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let signature = |v: usize| {
        let mut nd: Vec<usize> = adj[v].iter().map(|&w| adj[w].len()).collect();
        nd.sort_unstable();
        (adj[v].len(), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_cached_key(|&v| signature(v));
    let mut label = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        label[old] = new;
    }
    let mut relabeled: EdgeList = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (label[u], label[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    relabeled.sort_unstable();
    (n, relabeled)
}

struct DeletionContraction {
    memo: HashMap<(usize, EdgeList), Poly>,
}

impl DeletionContraction {
    fn solve(&mut self, n: usize, edges: EdgeList) -> Poly {
        if edges.is_empty() {
            return Poly::x_pow(n);
        }
        if edges.len() == n * (n - 1) / 2 {
            return Poly::falling_factorial(n);
        }
        let key = canonical_key(n, &edges);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let hub = (0..n).max_by_key(|&v| (degree[v], std::cmp::Reverse(v))).expect("n > 0");
        let &(a, b) = edges
            .iter()
            .find(|&&(u, v)| u == hub || v == hub)
            .expect("hub has an edge");

        let deleted: EdgeList = edges.iter().copied().filter(|&e| e != (a, b)).collect();

        // Contract b into a, renumbering vertices above b.
        let relabel = |v: usize| {
            let v = if v == b { a } else { v };
            if v > b { v - 1 } else { v }
        };
        let mut contracted: EdgeList = edges
            .iter()
            .map(|&(u, v)| (relabel(u), relabel(v)))
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        contracted.sort_unstable();
        contracted.dedup();

        let result = &self.solve(n, deleted) - &self.solve(n - 1, contracted);
        self.memo.insert(key, result.clone());
        result
    }
}

/// Chromatic polynomial `P(G, λ)` with the default vertex bound.
pub fn chromatic_poly(g: &Graph) -> Result<Poly, GraphError> {
    chromatic_poly_bounded(g, DEFAULT_MAX_VERTICES)
}

/// Chromatic polynomial by deletion-contraction, memoized per call.
pub fn chromatic_poly_bounded(g: &Graph, max_vertices: usize) -> Result<Poly, GraphError> {
    if g.vertex_count > max_vertices {
        return Err(GraphError::TooManyVertices {
            vertices: g.vertex_count,
            max: max_vertices,
        });
    }
    let mut dc = DeletionContraction {
        memo: HashMap::new(),
    };
    Ok(dc.solve(g.vertex_count, g.edges.iter().copied().collect()))
}

/// `α_k(G)` from `P(G, λ) = sum_k α_k(G) (λ)_k`.
pub fn alpha_coeffs(g: &Graph) -> Result<Vec<BigInt>, GraphError> {
    alpha_from_chromatic(&chromatic_poly(g)?)
}

fn alpha_from_chromatic(p: &Poly) -> Result<Vec<BigInt>, GraphError> {
    to_falling(p)
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            if !c.is_integer() || c.is_negative() {
                return Err(GraphError::Inconsistent(format!("α_{k} = {c} is not a non-negative integer")));
            }
            Ok(c.to_integer())
        })
        .collect()
}

/// `sum_k α_k(G) x^k`, cross-checked against `U[P(G, ·)]`.
pub fn sigma_poly(g: &Graph) -> Result<Poly, GraphError> {
    sigma_poly_bounded(g, DEFAULT_MAX_VERTICES)
}

pub fn sigma_poly_bounded(g: &Graph, max_vertices: usize) -> Result<Poly, GraphError> {
    let chromatic = chromatic_poly_bounded(g, max_vertices)?;
    let sigma = Poly::from_bigints(alpha_from_chromatic(&chromatic)?);
    if sigma != umbral_eval(&chromatic) {
        return Err(GraphError::Inconsistent(
            "sigma polynomial disagrees with the umbral evaluation of the chromatic polynomial".into(),
        ));
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;
    use crate::umbra::bell_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    /// Exhaustive count of proper colourings with `lambda` colours.
    fn count_colorings(g: &Graph, lambda: usize) -> u64 {
        let n = g.vertex_count();
        let edges: Vec<_> = g.edges().collect();
        let mut colors = vec![0usize; n];
        let mut count = 0;
        let total = (lambda as u64).pow(n as u32);
        for mut code in 0..total {
            for c in colors.iter_mut() {
                *c = (code % lambda as u64) as usize;
                code /= lambda as u64;
            }
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                count += 1;
            }
        }
        count
    }

    /// Partitions of the vertex set into exactly `k` independent blocks.
    fn independent_partitions(g: &Graph) -> Vec<u64> {
        fn rec(g: &Graph, v: usize, blocks: &mut Vec<Vec<usize>>, out: &mut [u64]) {
            if v == g.vertex_count() {
                out[blocks.len()] += 1;
                return;
            }
            for i in 0..blocks.len() {
                if blocks[i].iter().all(|&w| !g.has_edge(v, w)) {
                    blocks[i].push(v);
                    rec(g, v + 1, blocks, out);
                    blocks[i].pop();
                }
            }
            blocks.push(vec![v]);
            rec(g, v + 1, blocks, out);
            blocks.pop();
        }
        let mut out = vec![0; g.vertex_count() + 1];
        rec(g, 0, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn construction_rules() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert!(matches!(Graph::new(2, [(0, 2)]), Err(GraphError::EndpointOutOfRange(..))));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]).unwrap().edge_count(), 1);
        assert_eq!(complete_graph(0).vertex_count(), 0);
        assert_eq!(complete_graph(1).edge_count(), 0);
        assert_eq!(complete_graph(4).edge_count(), 6);
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_poly(&complete_graph(3)).unwrap(), p(&[0, 2, -3, 1]));
        assert_eq!(chromatic_poly(&Graph::path(3)).unwrap(), &p(&[0, 1]) * &p(&[-1, 1]).pow(2));
        assert_eq!(chromatic_poly(&Graph::empty(2)).unwrap(), p(&[0, 0, 1]));
        assert_eq!(chromatic_poly(&Graph::empty(0)).unwrap(), Poly::one());
        let c4 = Graph::cycle(4).unwrap();
        // (λ-1)^4 + (λ-1)
        assert_eq!(chromatic_poly(&c4).unwrap(), &p(&[-1, 1]).pow(4) + &p(&[-1, 1]));
    }

    #[test]
    fn vertex_bound() {
        let g = Graph::path(15);
        assert!(matches!(chromatic_poly(&g), Err(GraphError::TooManyVertices { vertices: 15, max: 14 })));
        assert!(chromatic_poly_bounded(&g, 15).is_ok());
    }

    #[test]
    fn alpha_examples() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(alpha_coeffs(&Graph::path(3)).unwrap(), b(&[0, 0, 1, 1]));
        assert_eq!(alpha_coeffs(&complete_graph(5)).unwrap(), b(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(alpha_coeffs(&Graph::empty(2)).unwrap(), b(&[0, 1, 1]));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_poly(&Graph::path(3)).unwrap(), p(&[0, 0, 1, 1]));
        for n in 0..6 {
            assert_eq!(sigma_poly(&complete_graph(n)).unwrap(), Poly::x_pow(n));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8 {
            let expected = bell_poly(n - 1).mul_x_pow(1);
            assert_eq!(sigma_poly(&Graph::path(n)).unwrap(), expected);
            assert_eq!(sigma_poly(&Graph::star(n)).unwrap(), expected);
            assert_eq!(sigma_poly(&Graph::random_tree(n, &mut rng)).unwrap(), expected);
        }
    }

    #[test]
    fn union_examples() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(disjoint_union(&g, &Graph::empty(0)), g);
        let k2 = complete_graph(2);
        assert_eq!(
            chromatic_poly(&disjoint_union(&k2, &k2)).unwrap(),
            p(&[0, -1, 1]).pow(2)
        );
    }

    #[test]
    fn product_law_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let g = Graph::random(rng.gen_range(0..6), 0.5, &mut rng);
            let h = Graph::random(rng.gen_range(0..6), 0.5, &mut rng);
            let lhs = chromatic_poly(&disjoint_union(&g, &h)).unwrap();
            let rhs = &chromatic_poly(&g).unwrap() * &chromatic_poly(&h).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn matches_exhaustive_colouring_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..40 {
            let g = Graph::random(rng.gen_range(1..=7), 0.45, &mut rng);
            let poly = chromatic_poly(&g).unwrap();
            for lambda in 1..=4 {
                assert_eq!(poly.eval(&int(lambda as i64)), int(count_colorings(&g, lambda) as i64));
            }
            let alpha = alpha_coeffs(&g).unwrap();
            let brute = independent_partitions(&g);
            for (k, count) in brute.iter().enumerate() {
                let got = alpha.get(k).cloned().unwrap_or_default();
                assert_eq!(got, BigInt::from(*count), "α_{k} of {}", g.to_json());
            }
        }
    }

    #[test]
    fn json_and_presets() {
        let g = Graph::from_json(r#"{"vertices": 3, "edges": [[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(Graph::from_preset("complete:4").unwrap(), complete_graph(4));
        assert_eq!(Graph::from_preset("star:4").unwrap().edge_count(), 3);
        assert!(Graph::from_preset("cycle:2").is_err());
        assert!(Graph::from_preset("wheel:5").is_err());
        assert!(Graph::from_json(r#"{"vertices": 2, "edges": [[0,5]]}"#).is_err());
    }
}
