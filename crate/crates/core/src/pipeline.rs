//! End-to-end coloring: decomposition, type graph, maximal-independent-set
//! family, covering program, and canonical coloring reconstruction.

use thiserror::Error;

use crate::graph::Graph;
use crate::ilp::{self, CoveringIlp, IlpError, IlpSolution, SolveOptions};
use crate::mis::{self, MisFamily};
use crate::nd::{self, ClassKind, DecompositionError, NdDecomposition, TypeGraph};

/// Largest neighborhood diversity the exact pipeline accepts. The family of
/// maximal independent sets is exponential in this parameter, so a guard
/// keeps accidental worst-case inputs from hanging.
pub const MAX_PIPELINE_ND: usize = 32;

/// Proper vertex coloring with colors `1..=num_colors`, every color used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex {vertex} has no color")]
    MissingColor { vertex: usize },
    #[error("vertex {vertex} colored {color}, colors are 1-based")]
    ZeroColor { vertex: usize, color: usize },
    #[error("vertex {vertex} assigned twice")]
    DuplicateVertex { vertex: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

impl Coloring {
    /// Wraps a complete color vector; entry `v` is the color of vertex `v`.
    pub fn from_vec(colors: Vec<usize>) -> Result<Self, ColoringError> {
        for (v, &c) in colors.iter().enumerate() {
            if c == 0 {
                return Err(ColoringError::ZeroColor { vertex: v, color: c });
            }
        }
        Ok(Coloring { colors })
    }

    /// Builds a coloring from `(vertex, color)` pairs covering `0..n`.
    pub fn from_assignments(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ColoringError> {
        let mut colors = vec![0usize; n];
        for (v, c) in pairs {
            if v >= n {
                return Err(ColoringError::VertexOutOfRange { vertex: v, n });
            }
            if colors[v] != 0 {
                return Err(ColoringError::DuplicateVertex { vertex: v });
            }
            if c == 0 {
                return Err(ColoringError::ZeroColor { vertex: v, color: c });
            }
            colors[v] = c;
        }
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::MissingColor { vertex: v });
        }
        Ok(Coloring { colors })
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    /// Number of colors, i.e. the largest color in use.
    pub fn num_colors(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("coloring covers {got} vertices, graph has {expected}")]
    VertexCountMismatch { expected: usize, got: usize },
    #[error("edge ({u}, {v}) is monochromatic with color {color}")]
    ImproperEdge { u: usize, v: usize, color: usize },
    #[error("color {color} of {num_colors} is unused")]
    UnusedColor { color: usize, num_colors: usize },
}

/// Checks that `c` is a proper coloring of `g` using every color in
/// `1..=num_colors`. Returns the violating edge or the unused color.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<(), VerifyError> {
    if c.vertex_count() != g.vertex_count() {
        return Err(VerifyError::VertexCountMismatch {
            expected: g.vertex_count(),
            got: c.vertex_count(),
        });
    }
    for (u, v) in g.edges() {
        if c.color(u) == c.color(v) {
            return Err(VerifyError::ImproperEdge { u, v, color: c.color(u) });
        }
    }
    let num = c.num_colors();
    let mut used = vec![false; num + 1];
    for &color in c.colors() {
        used[color] = true;
    }
    for color in 1..=num {
        if !used[color] {
            return Err(VerifyError::UnusedColor { color, num_colors: num });
        }
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Ilp(#[from] IlpError),
    #[error("solution under-covers row {row}: {covered} < {demand}")]
    SolutionInfeasible { row: usize, covered: u64, demand: u64 },
    #[error("solution has {got} entries for {expected} family members")]
    SolutionSizeMismatch { expected: usize, got: usize },
    #[error("color {color} repeats inside clique class {class}")]
    CliqueClassColorRepeat { class: usize, color: usize },
    #[error("independent class {class} uses more than one color")]
    IndependentClassMultiColored { class: usize },
    #[error("color {color} is unused; canonical colorings use 1..=num_colors")]
    ColorUnused { color: usize },
    #[error("no family member dominates the classes touched by color {color}")]
    NoDominatingSet { color: usize },
    #[error("neighborhood diversity {nd} exceeds the pipeline limit {limit}")]
    NdTooLarge { nd: usize, limit: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Demands per class: class size for cliques, 1 for independent classes.
fn demands(dec: &NdDecomposition) -> Vec<u64> {
    dec.classes()
        .iter()
        .zip(dec.kinds())
        .map(|(class, &kind)| match kind {
            ClassKind::Clique => class.len() as u64,
            ClassKind::IndependentSet => 1,
        })
        .collect()
}

/// Rebuilds a canonical coloring from a feasible covering solution.
///
/// Walks the family in order, repeating each member `x_I` times: the member
/// is filtered to the classes with outstanding demand, one uncolored vertex
/// is taken from each clique class and every vertex from each independent
/// class, and the batch receives the next color. Repetitions whose filter
/// comes out empty are pure overcover and consume no color, so the emitted
/// coloring stays surjective and `num_colors <= sum(x)` with equality at
/// optimal solutions.
pub fn reconstruct_coloring(
    g: &Graph,
    dec: &NdDecomposition,
    fam: &MisFamily,
    sol: &IlpSolution,
) -> Result<Coloring, PipelineError> {
    dec.class_assignment(g.vertex_count())?;
    if sol.x.len() != fam.len() {
        return Err(PipelineError::SolutionSizeMismatch {
            expected: fam.len(),
            got: sol.x.len(),
        });
    }
    // Contract check before any coloring is emitted.
    let b = demands(dec);
    let k = dec.class_count();
    let mut covered = vec![0u64; k];
    for (set, &mult) in fam.sets().iter().zip(&sol.x) {
        for &i in set {
            covered[i] += mult;
        }
    }
    for i in 0..k {
        if covered[i] < b[i] {
            return Err(PipelineError::SolutionInfeasible {
                row: i,
                covered: covered[i],
                demand: b[i],
            });
        }
    }

    let mut residual = b;
    let mut next_in_class = vec![0usize; k]; // per-clique-class cursor
    let mut colors = vec![0usize; g.vertex_count()];
    let mut color = 0usize;
    for (set, &mult) in fam.sets().iter().zip(&sol.x) {
        for _ in 0..mult {
            let active: Vec<usize> = set.iter().copied().filter(|&i| residual[i] >= 1).collect();
            if active.is_empty() {
                continue;
            }
            color += 1;
            for &i in &active {
                match dec.kind(i) {
                    ClassKind::Clique => {
                        let v = dec.class(i)[next_in_class[i]];
                        next_in_class[i] += 1;
                        colors[v] = color;
                        residual[i] -= 1;
                    }
                    ClassKind::IndependentSet => {
                        for &v in dec.class(i) {
                            colors[v] = color;
                        }
                        residual[i] = 0;
                    }
                }
            }
        }
    }
    debug_assert!(residual.iter().all(|&r| r == 0), "feasible solutions color everything");
    Ok(Coloring::from_vec(colors)?)
}

/// Everything the pipeline produces along the way, for inspection and the
/// CLI's dump flags.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub decomposition: NdDecomposition,
    pub type_graph: TypeGraph,
    pub family: MisFamily,
    pub program: CoveringIlp,
    pub solution: IlpSolution,
    pub coloring: Coloring,
}

/// Runs the full pipeline on a graph.
pub fn run_pipeline(g: &Graph, opts: &SolveOptions) -> Result<PipelineRun, PipelineError> {
    let dec = nd::compute_nd_decomposition(g);
    if dec.class_count() > MAX_PIPELINE_ND {
        return Err(PipelineError::NdTooLarge {
            nd: dec.class_count(),
            limit: MAX_PIPELINE_ND,
        });
    }
    let type_graph = nd::build_type_graph(g, &dec)?;
    finish_pipeline(g, dec, type_graph, opts)
}

/// Runs the pipeline with the type graph given on input: the graph is its
/// blow-up, which is returned alongside the run.
pub fn run_pipeline_from_type_graph(
    t: &TypeGraph,
    opts: &SolveOptions,
) -> Result<(Graph, PipelineRun), PipelineError> {
    if t.vertex_count() > MAX_PIPELINE_ND {
        return Err(PipelineError::NdTooLarge {
            nd: t.vertex_count(),
            limit: MAX_PIPELINE_ND,
        });
    }
    let (g, dec) = nd::blow_up(t);
    let run = finish_pipeline(&g, dec, t.clone(), opts)?;
    Ok((g, run))
}

fn finish_pipeline(
    g: &Graph,
    dec: NdDecomposition,
    type_graph: TypeGraph,
    opts: &SolveOptions,
) -> Result<PipelineRun, PipelineError> {
    let family = mis::enumerate_mis(&type_graph);
    let program = ilp::build_coloring_ilp(&type_graph, &family)?;
    let solution = ilp::solve_covering_ilp(&program, opts)?;
    let coloring = reconstruct_coloring(g, &dec, &family, &solution)?;
    Ok(PipelineRun {
        decomposition: dec,
        type_graph,
        family,
        program,
        solution,
        coloring,
    })
}

/// Exact chromatic number with an optimal canonical coloring as witness.
pub fn chromatic_number(g: &Graph) -> Result<(usize, Coloring), PipelineError> {
    chromatic_number_with(g, &SolveOptions::default())
}

pub fn chromatic_number_with(
    g: &Graph,
    opts: &SolveOptions,
) -> Result<(usize, Coloring), PipelineError> {
    let run = run_pipeline(g, opts)?;
    Ok((run.coloring.num_colors(), run.coloring))
}

/// Converse direction: reads a canonical coloring back into a feasible
/// covering solution with objective equal to the number of colors. Each color
/// class is mapped to the lexicographically smallest family member dominating
/// the classes it touches.
pub fn canonical_solution_from_coloring(
    g: &Graph,
    dec: &NdDecomposition,
    fam: &MisFamily,
    c: &Coloring,
) -> Result<Vec<u64>, PipelineError> {
    let assignment = dec.class_assignment(g.vertex_count())?;
    if c.vertex_count() != g.vertex_count() {
        return Err(PipelineError::Coloring(ColoringError::MissingColor {
            vertex: c.vertex_count(),
        }));
    }
    let num_colors = c.num_colors();
    // Canonicity: colors meet clique classes at most once, independent
    // classes are monochromatic, and every color is in use.
    let mut touched: Vec<Vec<usize>> = vec![Vec::new(); num_colors];
    for (i, class) in dec.classes().iter().enumerate() {
        match dec.kind(i) {
            ClassKind::Clique => {
                let mut seen = vec![false; num_colors + 1];
                for &v in class {
                    let color = c.color(v);
                    if seen[color] {
                        return Err(PipelineError::CliqueClassColorRepeat { class: i, color });
                    }
                    seen[color] = true;
                }
            }
            ClassKind::IndependentSet => {
                let first = c.color(class[0]);
                if class.iter().any(|&v| c.color(v) != first) {
                    return Err(PipelineError::IndependentClassMultiColored { class: i });
                }
            }
        }
    }
    for v in 0..g.vertex_count() {
        touched[c.color(v) - 1].push(assignment[v]);
    }
    let mut x = vec![0u64; fam.len()];
    for (idx, classes) in touched.into_iter().enumerate() {
        let color = idx + 1;
        if classes.is_empty() {
            return Err(PipelineError::ColorUnused { color });
        }
        let induced = mis::induces(classes);
        // Family sets are in lexicographic order, so the first dominating
        // member is the lexicographically smallest.
        let dominating = fam
            .sets()
            .iter()
            .position(|set| mis::dominates(set, &induced))
            .ok_or(PipelineError::NoDominatingSet { color })?;
        x[dominating] += 1;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mis::enumerate_mis;
    use crate::nd::{build_type_graph, compute_nd_decomposition};
    use crate::testkit::{
        complete_bipartite, complete_graph, cycle_graph, empty_graph, split_graph,
    };

    fn solved(g: &Graph) -> PipelineRun {
        run_pipeline(g, &SolveOptions::default()).unwrap()
    }

    #[test]
    fn k5_needs_five_colors_one_per_vertex() {
        let g = complete_graph(5);
        let run = solved(&g);
        assert_eq!(run.solution.x, vec![5]);
        assert_eq!(run.coloring.num_colors(), 5);
        let mut seen: Vec<usize> = run.coloring.colors().to_vec();
        seen.sort_unstable();
        assert_eq!(seen, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn c7_needs_three_colors() {
        let g = cycle_graph(7);
        let (chi, coloring) = chromatic_number(&g).unwrap();
        assert_eq!(chi, 3);
        verify_coloring(&g, &coloring).unwrap();
    }

    #[test]
    fn edgeless_graph_is_one_color() {
        let (chi, coloring) = chromatic_number(&empty_graph(4)).unwrap();
        assert_eq!(chi, 1);
        assert_eq!(coloring.colors(), &[1, 1, 1, 1]);
    }

    #[test]
    fn bipartite_with_edges_is_two_colors() {
        let (chi, _) = chromatic_number(&complete_bipartite(3, 3)).unwrap();
        assert_eq!(chi, 2);
    }

    #[test]
    fn null_graph_needs_no_colors() {
        let (chi, coloring) = chromatic_number(&empty_graph(0)).unwrap();
        assert_eq!(chi, 0);
        assert_eq!(coloring.vertex_count(), 0);
    }

    #[test]
    fn split_graph_reconstruction_trace() {
        // Classes: triangle {0,1,2} (clique), {3,4,5,6} (independent); the
        // family is [{0}, {1}] and the optimum x = [3, 1]. The loop colors
        // the triangle 1..3 in vertex order, then paints the whole
        // independent class with color 4.
        let g = split_graph(3, 4);
        let run = solved(&g);
        assert_eq!(run.solution.x, vec![3, 1]);
        assert_eq!(run.coloring.colors(), &[1, 2, 3, 4, 4, 4, 4]);
        verify_coloring(&g, &run.coloring).unwrap();
    }

    #[test]
    fn overcovered_solution_skips_empty_batches() {
        // K5's family is [{0}]; x = [7] overcovers by two. The two surplus
        // repetitions find no outstanding demand and consume no color.
        let g = complete_graph(5);
        let dec = compute_nd_decomposition(&g);
        let t = build_type_graph(&g, &dec).unwrap();
        let fam = enumerate_mis(&t);
        let sol = IlpSolution { x: vec![7], objective: 7, certified_lower_bound: 5 };
        let coloring = reconstruct_coloring(&g, &dec, &fam, &sol).unwrap();
        assert_eq!(coloring.num_colors(), 5);
        verify_coloring(&g, &coloring).unwrap();
    }

    #[test]
    fn infeasible_solution_rejected_before_coloring() {
        let g = complete_graph(5);
        let dec = compute_nd_decomposition(&g);
        let t = build_type_graph(&g, &dec).unwrap();
        let fam = enumerate_mis(&t);
        let sol = IlpSolution { x: vec![4], objective: 4, certified_lower_bound: 4 };
        assert_eq!(
            reconstruct_coloring(&g, &dec, &fam, &sol),
            Err(PipelineError::SolutionInfeasible { row: 0, covered: 4, demand: 5 })
        );
    }

    #[test]
    fn verify_rejects_monochromatic_edge() {
        let g = complete_graph(2);
        let c = Coloring::from_vec(vec![1, 1]).unwrap();
        assert_eq!(
            verify_coloring(&g, &c),
            Err(VerifyError::ImproperEdge { u: 0, v: 1, color: 1 })
        );
        let proper = Coloring::from_vec(vec![1, 2]).unwrap();
        verify_coloring(&g, &proper).unwrap();
    }

    #[test]
    fn verify_rejects_skipped_color() {
        let g = empty_graph(2);
        let c = Coloring::from_vec(vec![1, 3]).unwrap();
        assert_eq!(
            verify_coloring(&g, &c),
            Err(VerifyError::UnusedColor { color: 2, num_colors: 3 })
        );
    }

    #[test]
    fn pipeline_output_always_verifies() {
        for g in [cycle_graph(7), complete_graph(5), split_graph(3, 4), complete_bipartite(2, 5)] {
            let run = solved(&g);
            verify_coloring(&g, &run.coloring).unwrap();
        }
    }

    #[test]
    fn converse_direction_recovers_the_optimum() {
        for g in [cycle_graph(7), complete_graph(5), split_graph(3, 4)] {
            let run = solved(&g);
            let x = canonical_solution_from_coloring(&g, &run.decomposition, &run.family, &run.coloring)
                .unwrap();
            assert!(run.program.is_feasible(&x));
            let total: u64 = x.iter().sum();
            assert_eq!(total, run.solution.objective);
        }
    }

    #[test]
    fn converse_rejects_non_canonical_colorings() {
        // Proper 4-coloring of the split graph that splits the independent
        // class across two colors.
        let g = split_graph(3, 4);
        let run = solved(&g);
        let c = Coloring::from_vec(vec![1, 2, 3, 4, 4, 4, 2]).unwrap();
        assert_eq!(
            canonical_solution_from_coloring(&g, &run.decomposition, &run.family, &c),
            Err(PipelineError::IndependentClassMultiColored { class: 1 })
        );
        // And one that repeats a color inside the triangle.
        let c = Coloring::from_vec(vec![1, 1, 2, 3, 3, 3, 3]).unwrap();
        assert_eq!(
            canonical_solution_from_coloring(&g, &run.decomposition, &run.family, &c),
            Err(PipelineError::CliqueClassColorRepeat { class: 0, color: 1 })
        );
    }

    #[test]
    fn pipeline_from_type_graph_matches_blow_up() {
        let t = crate::nd::TypeGraph::new(vec![3, 4], vec![true, false], [(0, 1)]).unwrap();
        let (g, run) = run_pipeline_from_type_graph(&t, &SolveOptions::default()).unwrap();
        assert_eq!(g, split_graph(3, 4));
        assert_eq!(run.coloring.num_colors(), 4);
        let direct = solved(&g);
        assert_eq!(direct.coloring.num_colors(), 4);
    }

    #[test]
    fn solver_budget_propagates() {
        let g = cycle_graph(7);
        let err = chromatic_number_with(&g, &SolveOptions { node_budget: 0 }).unwrap_err();
        assert!(matches!(err, PipelineError::Ilp(IlpError::BudgetExceeded { .. })));
    }

    #[test]
    fn blow_up_instances_match_the_chromatic_oracle() {
        // Small blow-ups stay inside the oracle range (n <= 18 < 20).
        use crate::testkit::{generate, oracle_chromatic, GeneratorKind, GeneratorSpec};
        let mut checked = 0;
        let mut seed = 0u64;
        while checked < 60 {
            seed += 1;
            let inst = generate(&GeneratorSpec {
                kind: GeneratorKind::BlowUpRandom {
                    k_min: 1,
                    k_max: 5,
                    weight_min: 1,
                    weight_max: 4,
                    edge_prob: 0.5,
                    loop_prob: 0.5,
                    attempts: 1000,
                },
                seed,
            })
            .unwrap();
            if inst.graph.vertex_count() > 18 {
                continue;
            }
            let (chi, coloring) = chromatic_number(&inst.graph).unwrap();
            assert_eq!(chi, oracle_chromatic(&inst.graph).unwrap());
            verify_coloring(&inst.graph, &coloring).unwrap();
            checked += 1;
        }
    }

    #[test]
    fn pipeline_values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Graph>();
        assert_send_sync::<crate::nd::NdDecomposition>();
        assert_send_sync::<crate::nd::TypeGraph>();
        assert_send_sync::<crate::mis::MisFamily>();
        assert_send_sync::<crate::ilp::CoveringIlp>();
        assert_send_sync::<Coloring>();
        assert_send_sync::<PipelineRun>();
    }
}
