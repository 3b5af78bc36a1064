//! Self-contained exact linear programming over rationals.
//!
//! Two-phase primal simplex with Bland's rule on a dense tableau. All
//! arithmetic is `BigRational`, so bounds and optimality decisions are never
//! subject to floating-point error. Problem sizes here are tiny (tens of rows,
//! at most a few thousand columns), so the dense tableau is the simple and
//! adequate choice.

use num::{BigRational, One, Signed, Zero};

pub type Rat = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

/// `minimize objective . x  subject to  rows, x >= 0`.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: Vec<Rat>,
    pub rows: Vec<LpRow>,
}

#[derive(Clone, Debug)]
pub struct LpRow {
    pub coeffs: Vec<Rat>,
    pub sense: Sense,
    pub rhs: Rat,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub objective: Rat,
    pub values: Vec<Rat>,
}

struct Tableau {
    /// rows x (num_cols + 1); last entry of each row is the rhs.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    num_cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.num_cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.rows[row][col].clone();
        debug_assert!(!factor.is_zero());
        for entry in self.rows[row].iter_mut() {
            *entry /= factor.clone();
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let scale = self.rows[i][col].clone();
            for j in 0..=self.num_cols {
                let delta = &scale * &self.rows[row][j];
                self.rows[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }
}

/// Solves the LP exactly. Deterministic: Bland's rule for both the entering
/// and the leaving variable, so cycling is impossible.
pub fn solve_lp(p: &LpProblem) -> LpOutcome {
    let num_vars = p.objective.len();
    let m = p.rows.len();
    for row in &p.rows {
        assert_eq!(row.coeffs.len(), num_vars, "row width mismatch");
    }
    if m == 0 {
        // x = 0 is optimal for any nonnegative objective; a negative
        // objective entry makes the problem unbounded.
        if p.objective.iter().any(|c| c.is_negative()) {
            return LpOutcome::Unbounded;
        }
        return LpOutcome::Optimal(LpSolution {
            objective: Rat::zero(),
            values: vec![Rat::zero(); num_vars],
        });
    }

    // Columns: structural | one slack per Ge/Le row | artificials. A slack
    // whose coefficient is +1 after sign normalization starts in the basis;
    // every other row gets an artificial variable.
    let num_slacks = p.rows.iter().filter(|r| r.sense != Sense::Eq).count();
    let total_before_artificials = num_vars + num_slacks;

    let mut normalized: Vec<(Vec<Rat>, Rat, Option<usize>)> = Vec::with_capacity(m);
    let mut next_slack = 0usize;
    let mut pending_artificial: Vec<usize> = Vec::new();
    for (i, row) in p.rows.iter().enumerate() {
        let mut t: Vec<Rat> = Vec::with_capacity(total_before_artificials);
        t.extend(row.coeffs.iter().cloned());
        t.resize(total_before_artificials, Rat::zero());
        let slack_col = if row.sense == Sense::Eq {
            None
        } else {
            let col = num_vars + next_slack;
            next_slack += 1;
            t[col] = if row.sense == Sense::Le { Rat::one() } else { -Rat::one() };
            Some(col)
        };
        let mut rhs = row.rhs.clone();
        if rhs.is_negative() {
            for entry in t.iter_mut() {
                *entry = -entry.clone();
            }
            rhs = -rhs;
        }
        let basic = match slack_col {
            Some(col) if t[col].is_positive() => Some(col),
            _ => {
                pending_artificial.push(i);
                None
            }
        };
        normalized.push((t, rhs, basic));
    }

    let num_artificials = pending_artificial.len();
    let num_cols = total_before_artificials + num_artificials;
    let artificial_cols: Vec<usize> =
        (total_before_artificials..num_cols).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis = vec![usize::MAX; m];
    for (i, (mut t, rhs, basic)) in normalized.into_iter().enumerate() {
        t.resize(num_cols, Rat::zero());
        if let Some(col) = basic {
            basis[i] = col;
        } else {
            let a = pending_artificial.iter().position(|&j| j == i).unwrap();
            let col = total_before_artificials + a;
            t[col] = Rat::one();
            basis[i] = col;
        }
        t.push(rhs);
        rows.push(t);
    }

    let mut tab = Tableau { rows, basis, num_cols };

    // Phase 1: minimize the sum of artificials.
    if num_artificials > 0 {
        let mut phase1 = vec![Rat::zero(); num_cols];
        for &col in &artificial_cols {
            phase1[col] = Rat::one();
        }
        if run_simplex(&mut tab, &phase1, |_| true) == RunOutcome::Unbounded {
            unreachable!("phase 1 objective is bounded below by zero");
        }
        let phase1_value: Rat = tab
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &col)| artificial_cols.contains(&col))
            .map(|(i, _)| tab.rhs(i).clone())
            .sum();
        if !phase1_value.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis; rows where that is
        // impossible are redundant and dropped.
        let is_artificial = |col: usize| col >= total_before_artificials;
        let mut i = 0;
        while i < tab.rows.len() {
            if is_artificial(tab.basis[i]) {
                let pivot_col = (0..total_before_artificials)
                    .find(|&j| !tab.rows[i][j].is_zero());
                match pivot_col {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    // Phase 2: the real objective, artificial columns barred from entering.
    let mut costs = vec![Rat::zero(); num_cols];
    costs[..num_vars].clone_from_slice(&p.objective);
    let allowed = |col: usize| col < total_before_artificials;
    if run_simplex(&mut tab, &costs, allowed) == RunOutcome::Unbounded {
        return LpOutcome::Unbounded;
    }

    let mut values = vec![Rat::zero(); num_vars];
    for (i, &col) in tab.basis.iter().enumerate() {
        if col < num_vars {
            values[col] = tab.rhs(i).clone();
        }
    }
    let objective = p
        .objective
        .iter()
        .zip(&values)
        .map(|(c, x)| c * x)
        .sum();
    LpOutcome::Optimal(LpSolution { objective, values })
}

#[derive(PartialEq, Eq)]
enum RunOutcome {
    Optimal,
    Unbounded,
}

/// Primal simplex iterations with Bland's rule. `allowed` filters the columns
/// eligible to enter the basis.
fn run_simplex(tab: &mut Tableau, costs: &[Rat], allowed: impl Fn(usize) -> bool) -> RunOutcome {
    loop {
        // Reduced cost of column j: c_j - sum_i c_basis(i) * T[i][j].
        // Scanning columns in index order implements Bland's entering rule.
        let mut entering = None;
        for j in 0..tab.num_cols {
            if !allowed(j) || tab.basis.contains(&j) {
                continue;
            }
            let mut reduced = costs[j].clone();
            for (i, &b) in tab.basis.iter().enumerate() {
                if !costs[b].is_zero() && !tab.rows[i][j].is_zero() {
                    reduced -= &costs[b] * &tab.rows[i][j];
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(col) = entering else {
            return RunOutcome::Optimal;
        };
        // Ratio test; ties broken by the smallest basis variable (Bland).
        let mut leaving: Option<(usize, Rat)> = None;
        for i in 0..tab.rows.len() {
            if !tab.rows[i][col].is_positive() {
                continue;
            }
            let ratio = tab.rhs(i) / &tab.rows[i][col];
            let better = match &leaving {
                None => true,
                Some((best_i, best)) => {
                    ratio < *best || (ratio == *best && tab.basis[i] < tab.basis[*best_i])
                }
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let Some((row, _)) = leaving else {
            return RunOutcome::Unbounded;
        };
        tab.pivot(row, col);
    }
}

/// Builds a rational from an integer, for terse call sites.
pub fn rat(value: i64) -> Rat {
    Rat::from_integer(value.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(coeffs: &[i64], sense: Sense, rhs: i64) -> LpRow {
        LpRow {
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
            sense,
            rhs: rat(rhs),
        }
    }

    fn optimal(p: &LpProblem) -> LpSolution {
        match solve_lp(p) {
            LpOutcome::Optimal(s) => s,
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn single_variable_cover() {
        // min x, x >= 5
        let p = LpProblem {
            objective: vec![rat(1)],
            rows: vec![row(&[1], Sense::Ge, 5)],
        };
        let s = optimal(&p);
        assert_eq!(s.objective, rat(5));
        assert_eq!(s.values, vec![rat(5)]);
    }

    #[test]
    fn le_and_eq_rows() {
        // min -x - y, x + y <= 4, x = 1  ->  x=1, y=3, objective -4
        let p = LpProblem {
            objective: vec![rat(-1), rat(-1)],
            rows: vec![row(&[1, 1], Sense::Le, 4), row(&[1, 0], Sense::Eq, 1)],
        };
        let s = optimal(&p);
        assert_eq!(s.objective, rat(-4));
        assert_eq!(s.values, vec![rat(1), rat(3)]);
    }

    #[test]
    fn infeasible_detected() {
        // x <= -1 with x >= 0
        let p = LpProblem {
            objective: vec![rat(1)],
            rows: vec![row(&[1], Sense::Le, -1)],
        };
        assert_eq!(solve_lp(&p), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        // min -x, x >= 1
        let p = LpProblem {
            objective: vec![rat(-1)],
            rows: vec![row(&[1], Sense::Ge, 1)],
        };
        assert_eq!(solve_lp(&p), LpOutcome::Unbounded);
    }

    #[test]
    fn odd_cycle_cover_has_fractional_optimum() {
        // Vertex cover demands of C7 by its 7 maximal independent sets:
        // the symmetric optimum assigns 1/3 to each column, value 7/3.
        let sets: [[usize; 3]; 7] = [
            [0, 2, 4],
            [0, 2, 5],
            [0, 3, 5],
            [1, 3, 5],
            [1, 3, 6],
            [1, 4, 6],
            [2, 4, 6],
        ];
        let rows = (0..7)
            .map(|v| {
                let coeffs = (0..7)
                    .map(|j| if sets[j].contains(&v) { rat(1) } else { rat(0) })
                    .collect();
                LpRow { coeffs, sense: Sense::Ge, rhs: rat(1) }
            })
            .collect();
        let p = LpProblem { objective: vec![rat(1); 7], rows };
        let s = optimal(&p);
        assert_eq!(s.objective, Rat::new(7.into(), 3.into()));
    }

    #[test]
    fn degenerate_rows_are_handled() {
        // Redundant equalities force artificials that cannot all leave the
        // basis; the redundant row is dropped.
        let p = LpProblem {
            objective: vec![rat(1), rat(1)],
            rows: vec![
                row(&[1, 1], Sense::Eq, 2),
                row(&[2, 2], Sense::Eq, 4),
                row(&[1, 0], Sense::Ge, 1),
            ],
        };
        let s = optimal(&p);
        assert_eq!(s.objective, rat(2));
    }

    #[test]
    fn zero_rows_zero_vars() {
        let p = LpProblem { objective: vec![], rows: vec![] };
        assert_eq!(
            solve_lp(&p),
            LpOutcome::Optimal(LpSolution { objective: rat(0), values: vec![] })
        );
    }
}
