//! Simple undirected graphs, DIMACS `.col` I/O, and detection of the four
//! fixed induced patterns (4K1, C4, C6, C7).

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

/// Simple undirected graph on the vertex set `0..n`.
///
/// Stored as sorted adjacency lists. Values are immutable after construction
/// and cheap to share between workers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    num_edges: usize,
}

/// Error raised when assembling a graph from an edge list.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphBuildError {
    #[error("edge ({u}, {v}) out of range for {n} vertices")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops are rejected.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphBuildError> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphBuildError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphBuildError::SelfLoop { v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut num_edges = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            num_edges += list.len();
        }
        Ok(Graph {
            n,
            adj,
            num_edges: num_edges / 2,
        })
    }

    /// Builds a graph directly from sorted, symmetric adjacency lists.
    /// Used by constructions that already produce canonical adjacency.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let mut num_edges = 0;
        for (v, list) in adj.iter().enumerate() {
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]), "unsorted adjacency");
            debug_assert!(list.iter().all(|&u| u < n && u != v));
            num_edges += list.len();
        }
        debug_assert_eq!(num_edges % 2, 0);
        Graph {
            n,
            adj,
            num_edges: num_edges / 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.num_edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Iterates over edges as pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }
}

// ============================================================================
// DIMACS `.col` format
// ============================================================================

/// Parse error for the DIMACS `.col` format; line numbers are 1-based.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: malformed problem header")]
    MalformedHeader { line: usize },
    #[error("line {line}: duplicate problem header")]
    DuplicateHeader { line: usize },
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: malformed edge line")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: self-loop `e {v} {v}`")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: unknown line type {token:?}")]
    UnknownLineType { line: usize, token: String },
    #[error("header declares {declared} edges but {found} edge lines follow")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// Parses a DIMACS `.col` graph: optional `c` comments, exactly one
/// `p edge <n> <m>` header, then `m` lines `e <u> <v>` with 1-based endpoints.
/// Duplicate edge lines and both orientations collapse to one edge.
pub fn parse_dimacs(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(first) = tokens.next() else {
            continue; // blank line
        };
        match first {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(DimacsError::DuplicateHeader { line });
                }
                let format = tokens.next();
                let n = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let m = tokens.next().and_then(|t| t.parse::<usize>().ok());
                match (format, n, m, tokens.next()) {
                    (Some("edge"), Some(n), Some(m), None) => header = Some((n, m)),
                    _ => return Err(DimacsError::MalformedHeader { line }),
                }
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(DimacsError::MissingHeader);
                };
                let u = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let v = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let (u, v) = match (u, v, tokens.next()) {
                    (Some(u), Some(v), None) => (u, v),
                    _ => return Err(DimacsError::MalformedEdge { line }),
                };
                for index in [u, v] {
                    if index == 0 || index > n {
                        return Err(DimacsError::VertexOutOfRange { line, index, n });
                    }
                }
                if u == v {
                    return Err(DimacsError::SelfLoop { line, v });
                }
                edges.push((u - 1, v - 1));
            }
            other => {
                return Err(DimacsError::UnknownLineType {
                    line,
                    token: other.to_string(),
                })
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(DimacsError::MissingHeader);
    };
    if edges.len() != m {
        return Err(DimacsError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, edges).expect("edges validated during parse"))
}

/// Writes the canonical DIMACS form: one `p edge` header, each edge once with
/// ascending endpoints, edge lines sorted by endpoint pair, LF endings.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

// ============================================================================
// Fixed patterns
// ============================================================================

/// The four fixed induced patterns the class checker cares about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// Four isolated vertices (independent set of size 4).
    FourK1,
    /// Induced 4-cycle.
    C4,
    /// Induced 6-cycle.
    C6,
    /// Induced 7-cycle.
    C7,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::FourK1, Pattern::C4, Pattern::C6, Pattern::C7];

    pub fn vertex_count(self) -> usize {
        match self {
            Pattern::FourK1 => 4,
            Pattern::C4 => 4,
            Pattern::C6 => 6,
            Pattern::C7 => 7,
        }
    }

    /// Edge set of the pattern over `0..vertex_count()`.
    pub fn edges(self) -> Vec<(usize, usize)> {
        match self {
            Pattern::FourK1 => Vec::new(),
            _ => {
                let len = self.vertex_count();
                (0..len).map(|i| (i.min((i + 1) % len), i.max((i + 1) % len))).collect()
            }
        }
    }

    /// Adjacency between two pattern vertices.
    pub fn adjacent(self, i: usize, j: usize) -> bool {
        match self {
            Pattern::FourK1 => false,
            _ => {
                let len = self.vertex_count();
                i != j && ((i + 1) % len == j || (j + 1) % len == i)
            }
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Pattern::FourK1 => "4k1",
            Pattern::C4 => "c4",
            Pattern::C6 => "c6",
            Pattern::C7 => "c7",
        }
    }
}

/// Checks whether `vertices` (distinct, in any order) induce a copy of the
/// pattern in `g`. Cycles are recognized as connected 2-regular subgraphs of
/// the right size, so the vertex order of a witness does not matter.
pub fn is_induced_copy(g: &Graph, vertices: &[usize], pattern: Pattern) -> bool {
    let t = pattern.vertex_count();
    if vertices.len() != t {
        return false;
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != t || sorted.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let induced_deg: Vec<usize> = sorted
        .iter()
        .map(|&v| sorted.iter().filter(|&&u| u != v && g.has_edge(u, v)).count())
        .collect();
    match pattern {
        Pattern::FourK1 => induced_deg.iter().all(|&d| d == 0),
        _ => {
            if induced_deg.iter().any(|&d| d != 2) {
                return false;
            }
            // 2-regular and connected on t vertices means a single t-cycle.
            let mut seen = vec![false; t];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut reached = 1;
            while let Some(i) = stack.pop() {
                for (j, &u) in sorted.iter().enumerate() {
                    if !seen[j] && g.has_edge(sorted[i], u) {
                        seen[j] = true;
                        reached += 1;
                        stack.push(j);
                    }
                }
            }
            reached == t
        }
    }
}

// ============================================================================
// Twin classes
// ============================================================================

/// Partition of the vertices into twin classes: two vertices share a class
/// iff their neighborhoods agree up to each other. Classes appear in order of
/// their minimum vertex; singletons are flagged as cliques.
pub(crate) struct TwinPartition {
    pub classes: Vec<Vec<usize>>,
    pub is_clique: Vec<bool>,
}

/// Groups vertices by open-neighborhood equality (false twins) and
/// closed-neighborhood equality (true twins). Hash grouping with exact key
/// comparison, so expected O(n + m) and collision-free.
pub(crate) fn twin_partition(g: &Graph) -> TwinPartition {
    let n = g.vertex_count();
    let mut by_open: HashMap<&[usize], usize> = HashMap::new();
    let mut by_closed: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut evidence: Vec<Option<bool>> = Vec::new();
    for v in 0..n {
        let open = g.neighbors(v);
        if let Some(&c) = by_open.get(open) {
            debug_assert_ne!(evidence[c], Some(true), "mixed twin class");
            classes[c].push(v);
            evidence[c] = Some(false);
            continue;
        }
        let mut closed = Vec::with_capacity(open.len() + 1);
        let pos = open.partition_point(|&u| u < v);
        closed.extend_from_slice(&open[..pos]);
        closed.push(v);
        closed.extend_from_slice(&open[pos..]);
        if let Some(&c) = by_closed.get(&closed) {
            debug_assert_ne!(evidence[c], Some(false), "mixed twin class");
            classes[c].push(v);
            evidence[c] = Some(true);
            continue;
        }
        let c = classes.len();
        classes.push(vec![v]);
        evidence.push(None);
        by_open.insert(open, c);
        by_closed.insert(closed, c);
    }
    // A single vertex is both a clique and an independent set; the clique
    // convention keeps type graphs canonical.
    let is_clique = evidence.iter().map(|e| e.unwrap_or(true)).collect();
    TwinPartition { classes, is_clique }
}

// ============================================================================
// Induced-pattern search
// ============================================================================

/// Searches `g` for an induced copy of `pattern` and returns a witness vertex
/// list in pattern order (cycle order for cycles), or `None`.
///
/// The search runs on the twin-class quotient: pattern vertices are assigned
/// to twin classes by backtracking over ordered partial maps with adjacency
/// consistency and class-capacity pruning, then a concrete witness is
/// materialized. Homogeneity makes the quotient search exact, and it keeps
/// blow-up style graphs (few classes, many vertices) fast.
pub fn contains_induced(g: &Graph, pattern: Pattern) -> Option<Vec<usize>> {
    let t = pattern.vertex_count();
    if g.vertex_count() < t {
        return None;
    }
    let tp = twin_partition(g);
    let k = tp.classes.len();
    let rep: Vec<usize> = tp.classes.iter().map(|c| c[0]).collect();
    let mut class_of = vec![0usize; g.vertex_count()];
    for (c, members) in tp.classes.iter().enumerate() {
        for &v in members {
            class_of[v] = c;
        }
    }
    // Classes adjacent to each class, via its representative (sorted, and
    // containing the class itself exactly when the class is a clique of
    // size >= 2).
    let neighbor_classes: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let mut list: Vec<usize> = g.neighbors(rep[c]).iter().map(|&u| class_of[u]).collect();
            list.sort_unstable();
            list.dedup();
            list
        })
        .collect();

    let mut assignment = vec![usize::MAX; t];
    let mut usage = vec![0usize; k];
    let found = match pattern {
        Pattern::FourK1 => {
            let ctx = IndepCtx { g, tp: &tp, rep: &rep, len: t };
            search_independent(&ctx, 0, 0, &mut assignment, &mut usage)
        }
        _ => {
            let ctx = CycleCtx {
                g,
                tp: &tp,
                rep: &rep,
                neighbor_classes: &neighbor_classes,
                pattern,
                len: t,
            };
            (0..k).any(|start| {
                assignment[0] = start;
                usage[start] = 1;
                let ok = search_cycle(&ctx, 1, &mut assignment, &mut usage);
                usage[start] = 0;
                ok
            })
        }
    };
    if !found {
        return None;
    }
    // Materialize: hand each class its first `count` vertices, in pattern
    // position order.
    let mut taken = vec![0usize; k];
    let mut witness = vec![0usize; t];
    for (pos, &c) in assignment.iter().enumerate() {
        witness[pos] = tp.classes[c][taken[c]];
        taken[c] += 1;
    }
    debug_assert!(is_induced_copy(g, &witness, pattern));
    Some(witness)
}

struct IndepCtx<'a> {
    g: &'a Graph,
    tp: &'a TwinPartition,
    rep: &'a [usize],
    len: usize,
}

/// Independent-set search (pattern 4K1): classes chosen in non-decreasing
/// order; reuse of a class requires an independent class with spare capacity.
fn search_independent(
    ctx: &IndepCtx<'_>,
    pos: usize,
    min_class: usize,
    assignment: &mut [usize],
    usage: &mut [usize],
) -> bool {
    if pos == ctx.len {
        return true;
    }
    let k = ctx.tp.classes.len();
    for c in min_class..k {
        if usage[c] > 0 && ctx.tp.is_clique[c] {
            continue;
        }
        if usage[c] >= ctx.tp.classes[c].len() {
            continue;
        }
        // Must be non-adjacent to every class already used.
        let compatible = assignment[..pos]
            .iter()
            .all(|&a| a == c || !ctx.g.has_edge(ctx.rep[a], ctx.rep[c]));
        if !compatible {
            continue;
        }
        assignment[pos] = c;
        usage[c] += 1;
        if search_independent(ctx, pos + 1, c, assignment, usage) {
            return true;
        }
        usage[c] -= 1;
    }
    false
}

struct CycleCtx<'a> {
    g: &'a Graph,
    tp: &'a TwinPartition,
    rep: &'a [usize],
    neighbor_classes: &'a [Vec<usize>],
    pattern: Pattern,
    len: usize,
}

/// Cycle search: position `i` must sit in a class adjacent to position
/// `i - 1`'s class, with every chord excluded. Rotation symmetry is broken by
/// requiring position 0 to use the minimum class, reflection symmetry by
/// ordering positions 1 and len-1.
fn search_cycle(ctx: &CycleCtx<'_>, pos: usize, assignment: &mut [usize], usage: &mut [usize]) -> bool {
    if pos == ctx.len {
        return true;
    }
    let start = assignment[0];
    let prev = assignment[pos - 1];
    for &c in &ctx.neighbor_classes[prev] {
        if c < start {
            continue;
        }
        if pos == ctx.len - 1 && c < assignment[1] {
            continue;
        }
        if usage[c] >= ctx.tp.classes[c].len() {
            continue;
        }
        let mut ok = true;
        for j in 0..pos {
            let required = ctx.pattern.adjacent(pos, j);
            let actual = if assignment[j] == c {
                ctx.tp.is_clique[c]
            } else {
                ctx.g.has_edge(ctx.rep[assignment[j]], ctx.rep[c])
            };
            if required != actual {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        assignment[pos] = c;
        usage[c] += 1;
        if search_cycle(ctx, pos + 1, assignment, usage) {
            return true;
        }
        usage[c] -= 1;
    }
    false
}
