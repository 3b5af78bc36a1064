//! Brute-force oracles and seeded instance generators backing the
//! property-based acceptance suite.
//!
//! Every oracle takes its own walk over the graph (adjacency matrices and
//! search code private to this module), so agreement with the production
//! modules is meaningful. Range caps are hard errors.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classcheck;
use crate::graph::{write_dimacs, Graph};
use crate::ilp::CoveringIlp;
use crate::mis::MisFamily;
use crate::nd::{self, ClassKind, NdDecomposition, TypeGraph};

// ============================================================================
// Named fixtures
// ============================================================================

pub fn empty_graph(n: usize) -> Graph {
    Graph::from_edges(n, []).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))).unwrap()
}

pub fn cycle_graph(len: usize) -> Graph {
    assert!(len >= 3, "cycles need at least 3 vertices");
    Graph::from_edges(len, (0..len).map(|i| (i.min((i + 1) % len), i.max((i + 1) % len)))).unwrap()
}

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(move |u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

/// Complete split graph: a clique of size `a` completely joined to an
/// independent set of size `b`.
pub fn split_graph(a: usize, b: usize) -> Graph {
    let clique = (0..a).flat_map(|u| ((u + 1)..a).map(move |v| (u, v)));
    let join = (0..a).flat_map(move |u| (a..a + b).map(move |v| (u, v)));
    Graph::from_edges(a + b, clique.chain(join)).unwrap()
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen_graph() -> Graph {
    let outer = (0..5).map(|i| (i.min((i + 1) % 5), i.max((i + 1) % 5)));
    let inner = (0..5).map(|i| (5 + i.min((i + 2) % 5), 5 + i.max((i + 2) % 5)));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edges(10, outer.chain(inner).chain(spokes)).unwrap()
}

// ============================================================================
// Oracles
// ============================================================================

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle limited to {max} vertices, graph has {n}")]
    GraphTooLarge { n: usize, max: usize },
    #[error("oracle limited to {max} type vertices, type graph has {k}")]
    TypeGraphTooLarge { k: usize, max: usize },
    #[error("oracle limited to {max} columns, instance has {d}")]
    TooManyColumns { d: usize, max: usize },
    #[error("oracle limited to demands of {max}, instance has {b}")]
    DemandTooLarge { b: u64, max: u64 },
    #[error("residual-demand state space {states} exceeds {max}")]
    StateSpaceTooLarge { states: u128, max: u128 },
}

/// Exact chromatic number by branch-and-bound backtracking in saturation
/// order, with a greedy clique lower bound. Enforced to n <= 20 so the
/// oracle stays honest about its range.
pub fn oracle_chromatic(g: &Graph) -> Result<usize, OracleError> {
    const MAX_N: usize = 20;
    let n = g.vertex_count();
    if n > MAX_N {
        return Err(OracleError::GraphTooLarge { n, max: MAX_N });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut adj = vec![vec![false; n]; n];
    for v in 0..n {
        for &u in g.neighbors(v) {
            adj[v][u] = true;
        }
    }
    let degree: Vec<usize> = adj.iter().map(|row| row.iter().filter(|&&x| x).count()).collect();

    // Greedy clique on a degree-descending order: a lower bound.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(degree[v]));
    let mut clique: Vec<usize> = Vec::new();
    for &v in &order {
        if clique.iter().all(|&u| adj[u][v]) {
            clique.push(v);
        }
    }
    let lower = clique.len();

    // Greedy coloring in saturation order: an upper bound.
    let upper = {
        let mut colors = vec![0usize; n];
        for _ in 0..n {
            let v = pick_saturation_vertex(&adj, &colors, &degree).unwrap();
            let mut c = 1;
            while (0..n).any(|u| adj[v][u] && colors[u] == c) {
                c += 1;
            }
            colors[v] = c;
        }
        colors.iter().copied().max().unwrap()
    };
    if lower == upper {
        return Ok(lower);
    }

    struct Search<'a> {
        adj: &'a [Vec<bool>],
        degree: &'a [usize],
        colors: Vec<usize>,
        best: usize,
        lower: usize,
        n: usize,
    }

    impl Search<'_> {
        fn dfs(&mut self, colored: usize, used: usize) {
            if used >= self.best || self.best == self.lower {
                return;
            }
            if colored == self.n {
                self.best = used;
                return;
            }
            let v = pick_saturation_vertex(self.adj, &self.colors, self.degree).unwrap();
            let cap = (used + 1).min(self.best - 1);
            for c in 1..=cap {
                if (0..self.n).any(|u| self.adj[v][u] && self.colors[u] == c) {
                    continue;
                }
                self.colors[v] = c;
                self.dfs(colored + 1, used.max(c));
                self.colors[v] = 0;
            }
        }
    }

    let mut search = Search { adj: &adj, degree: &degree, colors: vec![0; n], best: upper, lower, n };
    search.dfs(0, 0);
    Ok(search.best)
}

/// Uncolored vertex with the most distinctly colored neighbors; ties by
/// degree, then by index. `None` when everything is colored.
fn pick_saturation_vertex(adj: &[Vec<bool>], colors: &[usize], degree: &[usize]) -> Option<usize> {
    let n = colors.len();
    let mut best: Option<(usize, usize, usize)> = None; // (saturation, degree, v)
    for v in 0..n {
        if colors[v] != 0 {
            continue;
        }
        let mut seen = vec![false; n + 1];
        let mut saturation = 0;
        for u in 0..n {
            if adj[v][u] && colors[u] != 0 && !seen[colors[u]] {
                seen[colors[u]] = true;
                saturation += 1;
            }
        }
        let candidate = (saturation, degree[v], v);
        let better = match best {
            None => true,
            Some((s, d, w)) => {
                saturation > s || (saturation == s && (degree[v] > d || (degree[v] == d && v < w)))
            }
        };
        if better {
            best = Some(candidate);
        }
    }
    best.map(|(_, _, v)| v)
}

/// Minimal nd-decomposition by the O(n^3) definition: direct pairwise
/// comparison of neighborhoods up to each other, then union-find.
pub fn oracle_nd(g: &Graph) -> Result<NdDecomposition, OracleError> {
    const MAX_N: usize = 200;
    let n = g.vertex_count();
    if n > MAX_N {
        return Err(OracleError::GraphTooLarge { n, max: MAX_N });
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let root = find(parent, parent[v]);
            parent[v] = root;
        }
        parent[v]
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let nu: Vec<usize> = g.neighbors(u).iter().copied().filter(|&x| x != v).collect();
            let nv: Vec<usize> = g.neighbors(v).iter().copied().filter(|&x| x != u).collect();
            if nu == nv {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n];
    for v in 0..n {
        let root = find(&mut parent, v);
        if index_of_root[root] == usize::MAX {
            index_of_root[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[index_of_root[root]].push(v);
    }
    let kinds: Vec<ClassKind> = classes
        .iter()
        .map(|class| {
            let clique = class
                .iter()
                .enumerate()
                .all(|(i, &u)| class[i + 1..].iter().all(|&v| g.has_edge(u, v)));
            if clique {
                ClassKind::Clique
            } else {
                let independent = class
                    .iter()
                    .enumerate()
                    .all(|(i, &u)| class[i + 1..].iter().all(|&v| !g.has_edge(u, v)));
                assert!(independent, "twin class neither clique nor independent");
                ClassKind::IndependentSet
            }
        })
        .collect();
    Ok(NdDecomposition::new(classes, kinds).expect("oracle classes are nonempty"))
}

/// Complete family of maximal independent sets by filtering all 2^k subsets
/// for independence (loops stripped) and maximality.
pub fn oracle_mis(t: &TypeGraph) -> Result<MisFamily, OracleError> {
    const MAX_K: usize = 16;
    let k = t.vertex_count();
    if k > MAX_K {
        return Err(OracleError::TypeGraphTooLarge { k, max: MAX_K });
    }
    let adj: Vec<u32> = (0..k)
        .map(|v| t.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    'subsets: for mask in 1u32..(1u32 << k) {
        for v in 0..k {
            if mask & (1 << v) != 0 && adj[v] & mask != 0 {
                continue 'subsets; // not independent
            }
        }
        for v in 0..k {
            if mask & (1 << v) == 0 && adj[v] & mask == 0 {
                continue 'subsets; // extendable by v, not maximal
            }
        }
        sets.push((0..k).filter(|&v| mask & (1 << v) != 0).collect());
    }
    sets.sort();
    Ok(MisFamily::from_sorted_sets(k, sets))
}

/// Exact covering optimum by exhaustive search over the residual-demand
/// state space: breadth-first layers count how many column applications are
/// needed to drive every demand to zero. Valid because columns are 0/1 and
/// the objective is all-ones.
pub fn oracle_ilp(p: &CoveringIlp) -> Result<u64, OracleError> {
    const MAX_D: usize = 12;
    const MAX_B: u64 = 8;
    const MAX_STATES: u128 = 1 << 24;
    let d = p.num_columns();
    if d > MAX_D {
        return Err(OracleError::TooManyColumns { d, max: MAX_D });
    }
    if let Some(&b) = p.rhs().iter().max() {
        if b > MAX_B {
            return Err(OracleError::DemandTooLarge { b, max: MAX_B });
        }
    }
    let r = p.num_rows();
    let radices: Vec<u64> = p.rhs().iter().map(|&b| b + 1).collect();
    let states: u128 = radices.iter().map(|&x| x as u128).product();
    if states > MAX_STATES {
        return Err(OracleError::StateSpaceTooLarge { states, max: MAX_STATES });
    }
    let mut strides = vec![1u64; r];
    for i in 1..r {
        strides[i] = strides[i - 1] * radices[i - 1];
    }
    let encode = |demand: &[u64]| -> usize {
        demand.iter().zip(&strides).map(|(&v, &s)| v * s).sum::<u64>() as usize
    };
    let start = encode(p.rhs());
    if start == 0 {
        return Ok(0);
    }
    let mut dist = vec![u32::MAX; states as usize];
    dist[start] = 0;
    let mut frontier = vec![start];
    let mut steps = 0u32;
    let mut demand = vec![0u64; r];
    while !frontier.is_empty() {
        steps += 1;
        let mut next = Vec::new();
        for &state in &frontier {
            // decode
            let mut rest = state as u64;
            for i in 0..r {
                demand[i] = rest % radices[i];
                rest /= radices[i];
            }
            for col in p.columns() {
                let mut reduced = demand.clone();
                for &i in col {
                    reduced[i] = reduced[i].saturating_sub(1);
                }
                let code = encode(&reduced);
                if dist[code] == u32::MAX {
                    if code == 0 {
                        return Ok(steps as u64);
                    }
                    dist[code] = steps;
                    next.push(code);
                }
            }
        }
        frontier = next;
    }
    unreachable!("validated instances are coverable");
}

// ============================================================================
// Generators
// ============================================================================

/// What to generate. Identical spec and seed produce byte-identical
/// instances: the generator draws from ChaCha8 seeded with the 64-bit seed,
/// edges are decided in lexicographic pair order by comparing the next
/// 53-bit uniform to the probability, and integer ranges are sampled as
/// `lo + next_u64() % (hi - lo + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorKind {
    /// Every pair independently an edge with probability `p`.
    RandomGnp { n: usize, p: f64 },
    /// Random twin-free type graph, blown up.
    BlowUpRandom {
        k_min: usize,
        k_max: usize,
        weight_min: usize,
        weight_max: usize,
        edge_prob: f64,
        loop_prob: f64,
        attempts: u32,
    },
    /// All-clique type graphs whose loop-stripped shape is itself
    /// (4K1, C4, C6)-free with an induced 7-cycle, blown up and certified by
    /// the class checker. A filtered heuristic, not a uniform sampler.
    ClassLike {
        k_min: usize,
        k_max: usize,
        weight_min: usize,
        weight_max: usize,
        attempts: u32,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("bad generator parameters: {0}")]
    BadParameters(String),
    #[error("no instance passed the filters within {attempts} attempts")]
    AttemptsExhausted { attempts: u32 },
}

#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub graph: Graph,
    /// Present for the blow-up based kinds.
    pub type_graph: Option<TypeGraph>,
}

fn chance(rng: &mut ChaCha8Rng, p: f64) -> bool {
    ((rng.next_u64() >> 11) as f64) * (1.0 / 9_007_199_254_740_992.0) < p
}

fn uniform(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    debug_assert!(lo <= hi);
    lo + (rng.next_u64() as usize) % (hi - lo + 1)
}

pub fn generate(spec: &GeneratorSpec) -> Result<GeneratedInstance, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GeneratorKind::RandomGnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenerateError::BadParameters(format!("p = {p} not in [0, 1]")));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if chance(&mut rng, p) {
                        edges.push((u, v));
                    }
                }
            }
            Ok(GeneratedInstance {
                graph: Graph::from_edges(n, edges).expect("generated edges are valid"),
                type_graph: None,
            })
        }
        GeneratorKind::BlowUpRandom {
            k_min,
            k_max,
            weight_min,
            weight_max,
            edge_prob,
            loop_prob,
            attempts,
        } => {
            check_ranges(k_min, k_max, weight_min, weight_max)?;
            for _ in 0..attempts {
                let k = uniform(&mut rng, k_min, k_max);
                let weights: Vec<usize> =
                    (0..k).map(|_| uniform(&mut rng, weight_min, weight_max)).collect();
                let loops: Vec<bool> = (0..k).map(|_| chance(&mut rng, loop_prob)).collect();
                let mut edges = Vec::new();
                for u in 0..k {
                    for v in (u + 1)..k {
                        if chance(&mut rng, edge_prob) {
                            edges.push((u, v));
                        }
                    }
                }
                let t = TypeGraph::new(weights, loops, edges).expect("generated type graph");
                if nd::has_twin_type_vertices(&t) {
                    continue;
                }
                let (graph, _) = nd::blow_up(&t);
                return Ok(GeneratedInstance { graph, type_graph: Some(t) });
            }
            Err(GenerateError::AttemptsExhausted { attempts })
        }
        GeneratorKind::ClassLike { k_min, k_max, weight_min, weight_max, attempts } => {
            check_ranges(k_min, k_max, weight_min, weight_max)?;
            if !(7..=13).contains(&k_min) || !(7..=13).contains(&k_max) {
                return Err(GenerateError::BadParameters(format!(
                    "class-like k range {k_min}..{k_max} must sit inside 7..13"
                )));
            }
            for _ in 0..attempts {
                let k = uniform(&mut rng, k_min, k_max);
                let Some(t) = sample_class_like_shape(&mut rng, k, weight_min, weight_max) else {
                    continue;
                };
                if nd::has_twin_type_vertices(&t) {
                    continue;
                }
                // The skeleton decides membership for all-clique blow-ups;
                // cheap to test before building the big graph.
                if !classcheck::check_class(&t.skeleton()).in_class() {
                    continue;
                }
                let (graph, _) = nd::blow_up(&t);
                // Certification on the emitted instance itself.
                if !classcheck::check_class(&graph).in_class() {
                    continue;
                }
                return Ok(GeneratedInstance { graph, type_graph: Some(t) });
            }
            Err(GenerateError::AttemptsExhausted { attempts })
        }
    }
}

fn check_ranges(
    k_min: usize,
    k_max: usize,
    weight_min: usize,
    weight_max: usize,
) -> Result<(), GenerateError> {
    if k_min == 0 || k_min > k_max {
        return Err(GenerateError::BadParameters(format!("bad k range {k_min}..{k_max}")));
    }
    if weight_min == 0 || weight_min > weight_max {
        return Err(GenerateError::BadParameters(format!(
            "bad weight range {weight_min}..{weight_max}"
        )));
    }
    Ok(())
}

/// One candidate all-clique shape: an induced 7-ring of classes plus up to
/// six extra classes drawn from a menu of ring attachments that tend to keep
/// the shape inside the class (one universal extra; extras seeing the closed
/// ring neighborhood of an anchor; extras missing two consecutive ring
/// vertices). Extras are pairwise adjacent. The caller still filters.
fn sample_class_like_shape(
    rng: &mut ChaCha8Rng,
    k: usize,
    weight_min: usize,
    weight_max: usize,
) -> Option<TypeGraph> {
    let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i.min((i + 1) % 7), i.max((i + 1) % 7))).collect();
    let mut used_universal = false;
    let mut used_anchors: Vec<usize> = Vec::new();
    for extra in 7..k {
        let choice = uniform(rng, 0, 2);
        let ring: Vec<usize> = if choice == 0 && !used_universal {
            used_universal = true;
            (0..7).collect()
        } else if choice <= 1 {
            // closed neighborhood of a fresh anchor
            let free: Vec<usize> = (0..7).filter(|a| !used_anchors.contains(a)).collect();
            if free.is_empty() {
                return None;
            }
            let anchor = free[uniform(rng, 0, free.len() - 1)];
            used_anchors.push(anchor);
            vec![(anchor + 6) % 7, anchor, (anchor + 1) % 7]
        } else {
            // ring minus two consecutive vertices
            let gap = uniform(rng, 0, 6);
            (0..7).filter(|&v| v != gap && v != (gap + 1) % 7).collect()
        };
        for v in ring {
            edges.push((v, extra));
        }
        for other in 7..extra {
            edges.push((other, extra));
        }
    }
    let weights: Vec<usize> = (0..k).map(|_| uniform(rng, weight_min, weight_max)).collect();
    Some(TypeGraph::new(weights, vec![true; k], edges).expect("shape edges are valid"))
}

/// Corpus manifest line: seed, kind token, parameters, SHA-256 of the
/// canonical DIMACS form.
pub fn manifest_line(spec: &GeneratorSpec, graph: &Graph) -> String {
    let digest = Sha256::digest(write_dimacs(graph).as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let params = match &spec.kind {
        GeneratorKind::RandomGnp { n, p } => format!("gnp n={n} p={p}"),
        GeneratorKind::BlowUpRandom {
            k_min,
            k_max,
            weight_min,
            weight_max,
            edge_prob,
            loop_prob,
            attempts,
        } => format!(
            "blowup k={k_min}..{k_max} w={weight_min}..{weight_max} edge-p={edge_prob} loop-p={loop_prob} attempts={attempts}"
        ),
        GeneratorKind::ClassLike { k_min, k_max, weight_min, weight_max, attempts } => format!(
            "class-like k={k_min}..{k_max} w={weight_min}..{weight_max} attempts={attempts}"
        ),
    };
    format!("{} {} {}", spec.seed, params, hex)
}
