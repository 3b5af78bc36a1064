//! The covering integer program behind the coloring pipeline and an exact
//! solver for it.
//!
//! Rows correspond to type-graph vertices, columns to maximal independent
//! sets. A clique class of size `n_i` demands coverage `n_i`; an independent
//! class demands 1. The solver is branch-and-bound over the structural
//! variables with exact rational LP bounds, so reported optima are proven.

use std::fmt::Write as _;

use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::mis::MisFamily;
use crate::nd::TypeGraph;
use crate::simplex::{self, LpOutcome, LpProblem, LpRow, Rat, Sense};

/// Covering program `min 1.x : A x >= b, x >= 0 integral` with a 0/1 matrix.
/// Column `j` stores the sorted row indices it covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringIlp {
    num_rows: usize,
    columns: Vec<Vec<usize>>,
    rhs: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IlpError {
    #[error("column {column} references row {index}, but there are {rows} rows")]
    ColumnIndexOutOfRange { column: usize, index: usize, rows: usize },
    #[error("row {row} has demand {demand} but no column covers it")]
    UncoverableRow { row: usize, demand: u64 },
    #[error("family ground set has {family} elements, type graph has {type_graph}")]
    GroundSetMismatch { family: usize, type_graph: usize },
    #[error("node budget of {budget} exhausted after {explored} nodes")]
    BudgetExceeded { budget: u64, explored: u64 },
}

impl CoveringIlp {
    /// Assembles an instance from raw parts, validating indices and that
    /// every row with positive demand is coverable.
    pub fn new(num_rows: usize, columns: Vec<Vec<usize>>, rhs: Vec<u64>) -> Result<Self, IlpError> {
        assert_eq!(rhs.len(), num_rows, "rhs length mismatch");
        let mut columns = columns;
        for (j, col) in columns.iter_mut().enumerate() {
            col.sort_unstable();
            col.dedup();
            if let Some(&bad) = col.iter().find(|&&i| i >= num_rows) {
                return Err(IlpError::ColumnIndexOutOfRange {
                    column: j,
                    index: bad,
                    rows: num_rows,
                });
            }
        }
        let mut covered = vec![false; num_rows];
        for col in &columns {
            for &i in col {
                covered[i] = true;
            }
        }
        for i in 0..num_rows {
            if rhs[i] > 0 && !covered[i] {
                return Err(IlpError::UncoverableRow { row: i, demand: rhs[i] });
            }
        }
        Ok(CoveringIlp { num_rows, columns, rhs })
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn rhs(&self) -> &[u64] {
        &self.rhs
    }

    /// Largest absolute matrix entry; 1 for every covering instance.
    pub fn max_abs_coeff(&self) -> u64 {
        1
    }

    /// Columns covering each row, derived from the column-major storage.
    pub fn rows_to_columns(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.num_rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &i in col {
                rows[i].push(j);
            }
        }
        rows
    }

    /// Coverage each row receives under `x`.
    pub fn coverage(&self, x: &[u64]) -> Vec<u64> {
        let mut cover = vec![0u64; self.num_rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &i in col {
                cover[i] += x[j];
            }
        }
        cover
    }

    pub fn is_feasible(&self, x: &[u64]) -> bool {
        self.coverage(x).iter().zip(&self.rhs).all(|(c, b)| c >= b)
    }
}

/// Builds the coloring ILP from a type graph and its complete family of
/// maximal independent sets: minimize the number of colors, cover each clique
/// class `|P_i|` times and each independent class once. Column order matches
/// the family order.
pub fn build_coloring_ilp(t: &TypeGraph, fam: &MisFamily) -> Result<CoveringIlp, IlpError> {
    if fam.ground_size() != t.vertex_count() {
        return Err(IlpError::GroundSetMismatch {
            family: fam.ground_size(),
            type_graph: t.vertex_count(),
        });
    }
    let rhs: Vec<u64> = (0..t.vertex_count())
        .map(|i| if t.has_loop(i) { t.weight(i) as u64 } else { 1 })
        .collect();
    CoveringIlp::new(t.vertex_count(), fam.sets().to_vec(), rhs)
}

// ============================================================================
// Equality form
// ============================================================================

/// The instance rewritten with one surplus variable per row:
/// `sum_{I covering i} x_I - s_i = b_i`, `s_i >= 0`. Entries lie in
/// {-1, 0, 1}; surplus variables carry objective weight 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityFormIlp {
    num_rows: usize,
    num_structural: usize,
    columns: Vec<Vec<usize>>,
    rhs: Vec<u64>,
}

impl EqualityFormIlp {
    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    /// Total variable count: structural plus one surplus per row.
    pub fn num_variables(&self) -> usize {
        self.num_structural + self.num_rows
    }

    pub fn num_structural(&self) -> usize {
        self.num_structural
    }

    pub fn rhs(&self) -> &[u64] {
        &self.rhs
    }

    /// Matrix entry for row `i`, variable `j`.
    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        if j < self.num_structural {
            i64::from(self.columns[j].binary_search(&i).is_ok())
        } else if j - self.num_structural == i {
            -1
        } else {
            0
        }
    }

    pub fn objective_coeff(&self, j: usize) -> i64 {
        i64::from(j < self.num_structural)
    }

    pub fn max_abs_coeff(&self) -> u64 {
        1
    }

    /// Checks `A x = b` for a full assignment (structural then surplus).
    pub fn is_feasible(&self, x: &[u64]) -> bool {
        if x.len() != self.num_variables() {
            return false;
        }
        (0..self.num_rows).all(|i| {
            let mut sum: i128 = 0;
            for (j, &v) in x.iter().enumerate() {
                sum += i128::from(self.coeff(i, j)) * i128::from(v);
            }
            sum == i128::from(self.rhs[i])
        })
    }
}

/// Converts a covering instance to equality form by appending surplus
/// variables. Both forms have the same optimal objective.
pub fn to_equality_form(p: &CoveringIlp) -> EqualityFormIlp {
    EqualityFormIlp {
        num_rows: p.num_rows,
        num_structural: p.columns.len(),
        columns: p.columns.clone(),
        rhs: p.rhs.clone(),
    }
}

// ============================================================================
// Exact solve
// ============================================================================

/// An integral solution together with the proven matching lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpSolution {
    pub x: Vec<u64>,
    pub objective: u64,
    /// Lower bound established by the search; equals `objective` on success.
    pub certified_lower_bound: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Maximum number of branch-and-bound nodes (LP solves) before aborting
    /// with an explicit budget error.
    pub node_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { node_budget: 200_000 }
    }
}

/// Exact LP lower bound of the covering relaxation.
pub fn lp_relaxation_value(p: &CoveringIlp) -> Rat {
    let lp = covering_lp(p, &vec![0u64; p.num_columns()], &vec![None; p.num_columns()]);
    match simplex::solve_lp(&lp) {
        LpOutcome::Optimal(s) => s.objective,
        // x >= 0 with nonnegative costs can be neither unbounded nor, for a
        // coverable instance, infeasible.
        other => unreachable!("covering relaxation must have an optimum, got {other:?}"),
    }
}

/// Greedy multi-cover upper bound: repeatedly apply the column covering the
/// most rows with outstanding demand, in bulk.
pub fn greedy_cover(p: &CoveringIlp) -> Vec<u64> {
    let mut x = vec![0u64; p.num_columns()];
    let mut residual = p.rhs.clone();
    loop {
        let mut best: Option<(usize, usize)> = None; // (covered, column)
        for (j, col) in p.columns.iter().enumerate() {
            let covered = col.iter().filter(|&&i| residual[i] > 0).count();
            if covered > 0 && best.map_or(true, |(c, _)| covered > c) {
                best = Some((covered, j));
            }
        }
        let Some((_, j)) = best else { break };
        let bulk = p.columns[j]
            .iter()
            .filter(|&&i| residual[i] > 0)
            .map(|&i| residual[i])
            .min()
            .unwrap_or(1);
        x[j] += bulk;
        for &i in &p.columns[j] {
            residual[i] = residual[i].saturating_sub(bulk);
        }
    }
    x
}

pub fn greedy_cover_value(p: &CoveringIlp) -> u64 {
    greedy_cover(p).iter().sum()
}

/// Node LP: variables are shifted by the branching lower bounds
/// (`y_j = x_j - lo_j`), upper bounds appear as explicit rows.
fn covering_lp(p: &CoveringIlp, lo: &[u64], hi: &[Option<u64>]) -> LpProblem {
    let d = p.num_columns();
    let mut rows = Vec::new();
    let committed = p.coverage(lo);
    for i in 0..p.num_rows {
        if committed[i] >= p.rhs[i] {
            continue; // demand already met by committed lower bounds
        }
        let mut coeffs = vec![Rat::zero(); d];
        for (j, col) in p.columns.iter().enumerate() {
            if col.binary_search(&i).is_ok() {
                coeffs[j] = Rat::one();
            }
        }
        rows.push(LpRow {
            coeffs,
            sense: Sense::Ge,
            rhs: Rat::from_integer(u64_to_big(p.rhs[i] - committed[i])),
        });
    }
    for j in 0..d {
        if let Some(h) = hi[j] {
            let mut coeffs = vec![Rat::zero(); d];
            coeffs[j] = Rat::one();
            rows.push(LpRow {
                coeffs,
                sense: Sense::Le,
                rhs: Rat::from_integer(u64_to_big(h - lo[j])),
            });
        }
    }
    LpProblem { objective: vec![Rat::one(); d], rows }
}

fn u64_to_big(v: u64) -> num::BigInt {
    num::BigInt::from(v)
}

struct SearchState<'a> {
    problem: &'a CoveringIlp,
    budget: u64,
    explored: u64,
    incumbent: Vec<u64>,
    incumbent_value: u64,
}

/// Solves the covering ILP to proven integral optimality.
///
/// Branch-and-bound over the structural variables: the node bound is the
/// stronger of the exact LP value and the committed total plus the largest
/// outstanding demand; the incumbent is seeded by the greedy cover; branching
/// picks the column with the largest LP fractionality and explores the
/// rounded-up side first, which commits bulk amounts in one step and keeps
/// the node count independent of `max b`. Fully deterministic.
pub fn solve_covering_ilp(p: &CoveringIlp, opts: &SolveOptions) -> Result<IlpSolution, IlpError> {
    let d = p.num_columns();
    if p.rhs.iter().all(|&b| b == 0) {
        return Ok(IlpSolution { x: vec![0; d], objective: 0, certified_lower_bound: 0 });
    }
    let incumbent = greedy_cover(p);
    debug_assert!(p.is_feasible(&incumbent));
    let mut state = SearchState {
        problem: p,
        budget: opts.node_budget,
        explored: 0,
        incumbent_value: incumbent.iter().sum(),
        incumbent,
    };
    let mut lo = vec![0u64; d];
    let mut hi = vec![None; d];
    branch(&mut state, &mut lo, &mut hi)?;
    let objective = state.incumbent_value;
    Ok(IlpSolution {
        x: state.incumbent,
        objective,
        certified_lower_bound: objective,
    })
}

fn branch(
    state: &mut SearchState<'_>,
    lo: &mut Vec<u64>,
    hi: &mut Vec<Option<u64>>,
) -> Result<(), IlpError> {
    state.explored += 1;
    if state.explored > state.budget {
        return Err(IlpError::BudgetExceeded {
            budget: state.budget,
            explored: state.explored,
        });
    }
    let p = state.problem;
    let committed: u64 = lo.iter().sum();
    // Combinatorial bound: every unit of outstanding demand on a single row
    // needs its own column application.
    let coverage = p.coverage(lo);
    let max_deficit = (0..p.num_rows)
        .map(|i| p.rhs[i].saturating_sub(coverage[i]))
        .max()
        .unwrap_or(0);
    if committed + max_deficit >= state.incumbent_value {
        return Ok(());
    }

    let lp = covering_lp(p, lo, hi);
    let solution = match simplex::solve_lp(&lp) {
        LpOutcome::Optimal(s) => s,
        LpOutcome::Infeasible => return Ok(()), // upper bounds cut everything off
        LpOutcome::Unbounded => unreachable!("minimization with nonnegative costs"),
    };
    let total_lp = solution.objective + Rat::from_integer(u64_to_big(committed));
    let lower = total_lp.ceil().to_integer().to_u64().expect("bounds fit in u64");
    if lower >= state.incumbent_value {
        return Ok(());
    }

    // Pick the most fractional column; an integral LP is a new incumbent.
    let mut branch_col: Option<(usize, Rat)> = None;
    let mut best_frac = Rat::zero();
    for (j, y) in solution.values.iter().enumerate() {
        let frac = y.fract();
        if frac.is_zero() {
            continue;
        }
        let distance_to_half = (&frac - Rat::new(1.into(), 2.into())).abs();
        let score = Rat::new(1.into(), 2.into()) - distance_to_half;
        if branch_col.is_none() || score > best_frac {
            best_frac = score;
            branch_col = Some((j, y.clone()));
        }
    }

    let Some((j, y)) = branch_col else {
        // Integral LP optimum: lift by the committed lower bounds.
        let x: Vec<u64> = solution
            .values
            .iter()
            .zip(lo.iter())
            .map(|(y, &l)| y.to_integer().to_u64().expect("integral LP value") + l)
            .collect();
        let value: u64 = x.iter().sum();
        debug_assert!(p.is_feasible(&x));
        if value < state.incumbent_value {
            state.incumbent_value = value;
            state.incumbent = x;
        }
        return Ok(());
    };

    let total = &y + Rat::from_integer(u64_to_big(lo[j]));
    let up = total.ceil().to_integer().to_u64().expect("branch point fits u64");
    let down = total.floor().to_integer().to_u64().expect("branch point fits u64");

    // Rounded-up branch first: committing the bulk amount tends to reach
    // good incumbents quickly.
    let saved_lo = lo[j];
    if hi[j].map_or(true, |h| up <= h) {
        lo[j] = up;
        branch(state, lo, hi)?;
        lo[j] = saved_lo;
    }
    let saved_hi = hi[j];
    if down >= lo[j] {
        // The node LP respects hi[j], and the branch value is fractional, so
        // flooring it always tightens the bound.
        debug_assert!(saved_hi.map_or(true, |h| down < h));
        hi[j] = Some(down);
        branch(state, lo, hi)?;
        hi[j] = saved_hi;
    }
    Ok(())
}

// ============================================================================
// Instance dump
// ============================================================================

/// Line-oriented dump: `ilp <r> <d>` then one `row` line per row listing the
/// 1-based columns that cover it.
pub fn write_ilp(p: &CoveringIlp) -> String {
    let mut out = String::new();
    writeln!(out, "ilp {} {}", p.num_rows(), p.num_columns()).unwrap();
    let rows = p.rows_to_columns();
    for (i, cols) in rows.iter().enumerate() {
        let list: Vec<String> = cols.iter().map(|j| (j + 1).to_string()).collect();
        writeln!(out, "row {} >= {} : {}", i + 1, p.rhs[i], list.join(" ")).unwrap();
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IlpParseError {
    #[error("line {line}: malformed ilp line")]
    Malformed { line: usize },
    #[error("missing `ilp <r> <d>` header")]
    MissingHeader,
    #[error("line {line}: row index {index} out of range 1..={rows}")]
    RowOutOfRange { line: usize, index: usize, rows: usize },
    #[error("line {line}: column index {index} out of range 1..={columns}")]
    ColumnOutOfRange { line: usize, index: usize, columns: usize },
    #[error(transparent)]
    Build(#[from] IlpError),
}

/// Parses the dump format back into an instance.
pub fn parse_ilp(text: &str) -> Result<CoveringIlp, IlpParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut rhs: Vec<u64> = Vec::new();
    let mut columns: Vec<Vec<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        match first {
            "ilp" => {
                let r = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let d = tokens.next().and_then(|t| t.parse::<usize>().ok());
                match (r, d, tokens.next(), header) {
                    (Some(r), Some(d), None, None) => {
                        header = Some((r, d));
                        rhs = vec![0; r];
                        columns = vec![Vec::new(); d];
                    }
                    _ => return Err(IlpParseError::Malformed { line }),
                }
            }
            "row" => {
                let Some((r, d)) = header else {
                    return Err(IlpParseError::MissingHeader);
                };
                let index = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(IlpParseError::Malformed { line })?;
                if index == 0 || index > r {
                    return Err(IlpParseError::RowOutOfRange { line, index, rows: r });
                }
                if tokens.next() != Some(">=") {
                    return Err(IlpParseError::Malformed { line });
                }
                let demand = tokens
                    .next()
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or(IlpParseError::Malformed { line })?;
                if tokens.next() != Some(":") {
                    return Err(IlpParseError::Malformed { line });
                }
                rhs[index - 1] = demand;
                for tok in tokens {
                    let col = tok.parse::<usize>().map_err(|_| IlpParseError::Malformed { line })?;
                    if col == 0 || col > d {
                        return Err(IlpParseError::ColumnOutOfRange { line, index: col, columns: d });
                    }
                    columns[col - 1].push(index - 1);
                }
            }
            _ => return Err(IlpParseError::Malformed { line }),
        }
    }
    let Some((r, _)) = header else {
        return Err(IlpParseError::MissingHeader);
    };
    Ok(CoveringIlp::new(r, columns, rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mis::enumerate_mis;
    use crate::simplex::rat;
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    fn c7_type_graph() -> TypeGraph {
        TypeGraph::new(
            vec![1; 7],
            vec![true; 7],
            (0..7).map(|i| (i.min((i + 1) % 7), i.max((i + 1) % 7))),
        )
        .unwrap()
    }

    fn c7_instance() -> CoveringIlp {
        let t = c7_type_graph();
        build_coloring_ilp(&t, &enumerate_mis(&t)).unwrap()
    }

    fn split_instance() -> CoveringIlp {
        let t = TypeGraph::new(vec![3, 4], vec![true, false], [(0, 1)]).unwrap();
        build_coloring_ilp(&t, &enumerate_mis(&t)).unwrap()
    }

    #[test]
    fn k5_model_shape() {
        let t = TypeGraph::new(vec![5], vec![true], []).unwrap();
        let p = build_coloring_ilp(&t, &enumerate_mis(&t)).unwrap();
        assert_eq!(p.num_rows(), 1);
        assert_eq!(p.num_columns(), 1);
        assert_eq!(p.rhs(), &[5]);
    }

    #[test]
    fn c7_model_shape() {
        let p = c7_instance();
        assert_eq!(p.num_rows(), 7);
        assert_eq!(p.num_columns(), 7);
        assert_eq!(p.rhs(), &[1; 7]);
        assert!(p.columns().iter().all(|c| c.len() == 3));
        assert_eq!(p.max_abs_coeff(), 1);
    }

    #[test]
    fn split_model_demands() {
        let p = split_instance();
        assert_eq!(p.num_rows(), 2);
        // Loop-stripped edge between the two classes: the family is {0},{1}.
        assert_eq!(p.columns(), &[vec![0], vec![1]]);
        assert_eq!(p.rhs(), &[3, 1]);
    }

    #[test]
    fn k5_solution_forced() {
        let t = TypeGraph::new(vec![5], vec![true], []).unwrap();
        let p = build_coloring_ilp(&t, &enumerate_mis(&t)).unwrap();
        let s = solve_covering_ilp(&p, &SolveOptions::default()).unwrap();
        assert_eq!(s.x, vec![5]);
        assert_eq!(s.objective, 5);
        assert_eq!(s.certified_lower_bound, 5);
    }

    #[test]
    fn c7_optimum_is_three() {
        // Brute-force search over all x with sum <= 7 confirms 3.
        let s = solve_covering_ilp(&c7_instance(), &SolveOptions::default()).unwrap();
        assert_eq!(s.objective, 3);
    }

    #[test]
    fn split_optimum_is_sum_of_disjoint_demands() {
        let s = solve_covering_ilp(&split_instance(), &SolveOptions::default()).unwrap();
        assert_eq!(s.x, vec![3, 1]);
        assert_eq!(s.objective, 4);
    }

    #[test]
    fn lp_values_frozen() {
        assert_eq!(lp_relaxation_value(&c7_instance()), Rat::new(7.into(), 3.into()));
        assert_eq!(lp_relaxation_value(&split_instance()), rat(4));
    }

    #[test]
    fn equality_form_shapes() {
        let t = TypeGraph::new(vec![5], vec![true], []).unwrap();
        let p = build_coloring_ilp(&t, &enumerate_mis(&t)).unwrap();
        let eq = to_equality_form(&p);
        assert_eq!(eq.num_rows(), 1);
        assert_eq!(eq.num_variables(), 2);
        assert_eq!(eq.coeff(0, 0), 1);
        assert_eq!(eq.coeff(0, 1), -1);
        assert_eq!(eq.objective_coeff(0), 1);
        assert_eq!(eq.objective_coeff(1), 0);
        // x1 - s1 = 5: the forced optimum x=[5], s=[0].
        assert!(eq.is_feasible(&[5, 0]));
        assert!(!eq.is_feasible(&[4, 0]));

        let eq7 = to_equality_form(&c7_instance());
        assert_eq!(eq7.num_rows(), 7);
        assert_eq!(eq7.num_variables(), 14);
        assert_eq!(eq7.max_abs_coeff(), 1);
    }

    /// Independent equality-form optimum: enumerate structural assignments in
    /// a bounded box over the equality matrix, solving for the surplus values.
    fn equality_form_optimum(eq: &EqualityFormIlp, cap: u64) -> Option<u64> {
        let d = eq.num_structural();
        let mut x = vec![0u64; d];
        let mut best: Option<u64> = None;
        loop {
            // Solve row by row for the surplus; feasible iff all nonnegative.
            let mut full = x.clone();
            full.resize(eq.num_variables(), 0);
            let mut ok = true;
            for i in 0..eq.num_rows() {
                let sum: i128 = (0..d)
                    .map(|j| i128::from(eq.coeff(i, j)) * i128::from(x[j]))
                    .sum();
                let surplus = sum - i128::from(eq.rhs()[i]);
                if surplus < 0 {
                    ok = false;
                    break;
                }
                full[d + i] = surplus as u64;
            }
            if ok && eq.is_feasible(&full) {
                let value: u64 = x.iter().sum();
                best = Some(best.map_or(value, |b: u64| b.min(value)));
            }
            // Odometer step.
            let mut pos = 0;
            loop {
                if pos == d {
                    return best;
                }
                if x[pos] < cap {
                    x[pos] += 1;
                    break;
                }
                x[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn equality_and_covering_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let p = random_instance(&mut rng, 4, 6, 4);
            let covering = solve_covering_ilp(&p, &SolveOptions::default()).unwrap();
            let eq = to_equality_form(&p);
            let cap = p.rhs().iter().copied().max().unwrap_or(0);
            assert_eq!(equality_form_optimum(&eq, cap), Some(covering.objective));
        }
    }

    fn random_instance(rng: &mut ChaCha8Rng, max_r: usize, max_d: usize, max_b: u64) -> CoveringIlp {
        loop {
            let r = 1 + (rng.next_u64() as usize) % max_r;
            let d = 1 + (rng.next_u64() as usize) % max_d;
            let columns: Vec<Vec<usize>> = (0..d)
                .map(|_| (0..r).filter(|_| rng.next_u64() % 2 == 0).collect())
                .collect();
            let rhs: Vec<u64> = (0..r).map(|_| 1 + rng.next_u64() % max_b).collect();
            if let Ok(p) = CoveringIlp::new(r, columns, rhs) {
                return p;
            }
        }
    }

    #[test]
    fn exactness_against_exhaustive_search_small() {
        // The acceptance suite runs the full 300-instance comparison through
        // the testkit oracle; this is the in-module smoke version.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let p = random_instance(&mut rng, 4, 6, 4);
            let s = solve_covering_ilp(&p, &SolveOptions::default()).unwrap();
            assert!(p.is_feasible(&s.x));
            let oracle = crate::testkit::oracle_ilp(&p).unwrap();
            assert_eq!(s.objective, oracle);
            assert_eq!(s.certified_lower_bound, s.objective);
        }
    }

    #[test]
    fn lp_sandwich_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..40 {
            let p = random_instance(&mut rng, 5, 8, 5);
            let lp = lp_relaxation_value(&p);
            let s = solve_covering_ilp(&p, &SolveOptions::default()).unwrap();
            let greedy = greedy_cover_value(&p);
            assert!(lp <= rat(s.objective as i64));
            assert!(s.objective <= greedy);
        }
    }

    #[test]
    fn scaling_demands_is_subadditive_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..25 {
            let p = random_instance(&mut rng, 4, 6, 3);
            let base = solve_covering_ilp(&p, &SolveOptions::default()).unwrap().objective;
            let scale = 2 + rng.next_u64() % 4;
            let scaled = CoveringIlp::new(
                p.num_rows(),
                p.columns().to_vec(),
                p.rhs().iter().map(|&b| b * scale).collect(),
            )
            .unwrap();
            let scaled_opt = solve_covering_ilp(&scaled, &SolveOptions::default()).unwrap().objective;
            assert!(scaled_opt <= scale * base, "subadditivity violated");
            assert!(scaled_opt >= base, "monotonicity violated");

            // Bump one demand; the optimum never decreases.
            let mut bumped_rhs = p.rhs().to_vec();
            let idx = (rng.next_u64() as usize) % bumped_rhs.len();
            bumped_rhs[idx] += 1;
            let bumped = CoveringIlp::new(p.num_rows(), p.columns().to_vec(), bumped_rhs).unwrap();
            let bumped_opt = solve_covering_ilp(&bumped, &SolveOptions::default()).unwrap().objective;
            assert!(bumped_opt >= base);
        }
    }

    #[test]
    fn uncoverable_row_rejected() {
        let err = CoveringIlp::new(2, vec![vec![0]], vec![1, 1]).unwrap_err();
        assert_eq!(err, IlpError::UncoverableRow { row: 1, demand: 1 });
    }

    #[test]
    fn column_index_validated() {
        let err = CoveringIlp::new(2, vec![vec![0, 2]], vec![1, 0]).unwrap_err();
        assert_eq!(err, IlpError::ColumnIndexOutOfRange { column: 0, index: 2, rows: 2 });
    }

    #[test]
    fn budget_exhaustion_is_an_explicit_error() {
        // Uniform demand 50 on the odd-cycle instance has LP value 350/3, so
        // the root relaxation is fractional and at least one branch is
        // required, overrunning a budget of one node.
        let t = c7_type_graph();
        let p = CoveringIlp::new(7, enumerate_mis(&t).sets().to_vec(), vec![50; 7]).unwrap();
        let err = solve_covering_ilp(&p, &SolveOptions { node_budget: 1 }).unwrap_err();
        assert!(matches!(err, IlpError::BudgetExceeded { budget: 1, .. }));
    }

    #[test]
    fn large_demands_solve_exactly() {
        // chi(C7 blown up by w) = ceil(7w/3); the covering optimum matches.
        for w in [10u64, 1_000, 100_000] {
            let p = CoveringIlp::new(7, c7_instance().columns().to_vec(), vec![w; 7]).unwrap();
            let s = solve_covering_ilp(&p, &SolveOptions::default()).unwrap();
            assert_eq!(s.objective, (7 * w + 2) / 3);
        }
    }

    #[test]
    fn dump_round_trip() {
        let p = split_instance();
        let text = write_ilp(&p);
        assert_eq!(text, "ilp 2 2\nrow 1 >= 3 : 1\nrow 2 >= 1 : 2\n");
        assert_eq!(parse_ilp(&text).unwrap(), p);
    }

    #[test]
    fn dump_parse_errors() {
        assert!(matches!(parse_ilp(""), Err(IlpParseError::MissingHeader)));
        assert!(matches!(
            parse_ilp("ilp 1 1\nrow 2 >= 1 : 1"),
            Err(IlpParseError::RowOutOfRange { .. })
        ));
        assert!(matches!(
            parse_ilp("ilp 1 1\nrow 1 >= 1 : 9"),
            Err(IlpParseError::ColumnOutOfRange { .. })
        ));
    }
}
