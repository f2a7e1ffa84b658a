//! Exact linear programming for feasibility questions.
//!
//! The core is a revised primal simplex over `A x = b, x >= 0` with a dense
//! rational basis inverse and sparse columns. The entering column is the most
//! negative reduced cost while the objective strictly decreases, and Bland's
//! lowest-index rule during any run of degenerate pivots. Leaving ties go to the
//! lowest basic index. A Bland run cannot cycle and every other pivot strictly
//! improves the objective, so the method terminates without any tolerance.
//!
//! [`FeasibilityProblem::solve`] is the textbook Phase I: one artificial per
//! row that lacks a slack, minimize their sum. [`minimize_from_basis`] starts
//! from a caller-supplied feasible basis instead, which is how the deficit
//! search avoids most of Phase I.

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Equal,
    LessEqual,
}

/// Constraints `Σ_j a_ij x_j (= | <=) b_i` over variables `x >= 0`.
#[derive(Clone, Debug, Default)]
pub struct FeasibilityProblem {
    rhs: Vec<Rational>,
    kinds: Vec<RowKind>,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl FeasibilityProblem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_row(&mut self, kind: RowKind, rhs: Rational) -> usize {
        self.rhs.push(rhs);
        self.kinds.push(kind);
        self.rhs.len() - 1
    }

    /// Adds a variable with the given sparse column; returns its index.
    pub fn add_column(&mut self, entries: Vec<(usize, Rational)>) -> usize {
        debug_assert!(entries.iter().all(|(row, _)| *row < self.rhs.len()));
        self.columns.push(entries);
        self.columns.len() - 1
    }

    pub fn rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn columns(&self) -> usize {
        self.columns.len()
    }

    /// Exact check of a candidate point.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.columns.len() || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        let mut lhs = vec![Rational::zero(); self.rows()];
        for (col, value) in self.columns.iter().zip(x) {
            if value.is_zero() {
                continue;
            }
            for (row, coef) in col {
                lhs[*row] += coef * value;
            }
        }
        lhs.iter()
            .zip(&self.rhs)
            .zip(&self.kinds)
            .all(|((l, b), kind)| match kind {
                RowKind::Equal => l == b,
                RowKind::LessEqual => l <= b,
            })
    }

    /// Returns a basic feasible point, or `None` if the system is infeasible.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        let m = self.rows();
        let structural = self.columns();
        // Rows with negative right-hand side are negated so that b >= 0.
        let flip: Vec<bool> = self.rhs.iter().map(Rational::is_negative).collect();
        let mut columns: Vec<Vec<(usize, Rational)>> = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(row, c)| (*row, if flip[*row] { -c } else { c.clone() }))
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = self.rhs.iter().map(Rational::abs).collect();

        let mut basis = vec![usize::MAX; m];
        for (row, kind) in self.kinds.iter().enumerate() {
            if *kind == RowKind::LessEqual {
                let sign = if flip[row] { -1 } else { 1 };
                columns.push(vec![(row, Rational::from(sign))]);
                if sign == 1 {
                    basis[row] = columns.len() - 1;
                }
            }
        }
        let first_artificial = columns.len();
        for (row, slot) in basis.iter_mut().enumerate() {
            if *slot == usize::MAX {
                columns.push(vec![(row, Rational::one())]);
                *slot = columns.len() - 1;
            }
        }
        let costs: Vec<Rational> = (0..columns.len())
            .map(|j| {
                if j >= first_artificial {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let standard = StandardForm { columns, rhs };
        // Artificials that have left the basis never re-enter.
        let outcome = minimize_from_basis(
            &standard,
            &costs,
            basis,
            first_artificial,
            &Rational::zero(),
        );
        if !outcome.objective.is_zero() {
            return None;
        }
        let mut x = outcome.values;
        x.truncate(structural);
        Some(x)
    }
}

/// `A x = b` with sparse columns.
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub columns: Vec<Vec<(usize, Rational)>>,
    pub rhs: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    /// Value of every column at the final basis.
    pub values: Vec<Rational>,
    pub objective: Rational,
    pub pivots: usize,
}

/// Minimizes `costs · x` over `A x = b, x >= 0`, starting from `basis`.
///
/// `basis[r]` is the column basic in row `r`; those columns must form an
/// identity submatrix and `b >= 0`, so the start is feasible. Only columns
/// below `enterable` may enter. Stops as soon as the objective is at most
/// `target` or no column prices out.
pub fn minimize_from_basis(
    problem: &StandardForm,
    costs: &[Rational],
    basis: Vec<usize>,
    enterable: usize,
    target: &Rational,
) -> Outcome {
    let mut simplex = Revised::new(problem, costs, basis);
    debug_assert!(problem.rhs.iter().all(|b| !b.is_negative()));
    let mut pivots = 0;
    let mut degenerate = false;
    let mut objective = simplex.objective();
    while objective > *target {
        let y = simplex.multipliers();
        let rule = if degenerate {
            Rule::Bland
        } else {
            Rule::Dantzig
        };
        let Some(var) = simplex.entering(&y, enterable, rule) else {
            break;
        };
        let column = simplex.transformed_column(var);
        // With nonnegative costs the objective is bounded below by zero.
        let Some(row) = simplex.leaving(&column) else {
            break;
        };
        simplex.pivot(row, var, &column);
        pivots += 1;
        let next = simplex.objective();
        degenerate = next == objective;
        objective = next;
    }
    let mut values = vec![Rational::zero(); problem.columns.len()];
    for (&var, v) in simplex.basis.iter().zip(&simplex.values) {
        values[var] = v.clone();
    }
    Outcome {
        values,
        objective,
        pivots,
    }
}

/// Entering-variable rule. Dantzig's most negative reduced cost is used
/// while pivots make progress; Bland's rule takes over for as long as the
/// objective stalls, which rules out cycling.
#[derive(Clone, Copy)]
enum Rule {
    Dantzig,
    Bland,
}

struct Revised<'a> {
    m: usize,
    columns: &'a [Vec<(usize, Rational)>],
    costs: &'a [Rational],
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    basis_inverse: Vec<Vec<Rational>>,
    values: Vec<Rational>,
}

impl<'a> Revised<'a> {
    fn new(problem: &'a StandardForm, costs: &'a [Rational], basis: Vec<usize>) -> Self {
        let m = problem.rhs.len();
        assert_eq!(basis.len(), m, "one basic column per row");
        let mut is_basic = vec![false; problem.columns.len()];
        for (row, &b) in basis.iter().enumerate() {
            assert!(
                problem.columns[b] == [(row, Rational::one())],
                "starting basis must be an identity"
            );
            is_basic[b] = true;
        }
        let basis_inverse = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Revised {
            m,
            columns: &problem.columns,
            costs,
            basis,
            is_basic,
            basis_inverse,
            values: problem.rhs.clone(),
        }
    }

    fn objective(&self) -> Rational {
        self.basis
            .iter()
            .zip(&self.values)
            .filter(|(&var, _)| !self.costs[var].is_zero())
            .map(|(&var, v)| &self.costs[var] * v)
            .sum()
    }

    /// Simplex multipliers `c_B^T B^{-1}`.
    fn multipliers(&self) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.m];
        for (i, &var) in self.basis.iter().enumerate() {
            let c = &self.costs[var];
            if c.is_zero() {
                continue;
            }
            for (yj, bij) in y.iter_mut().zip(&self.basis_inverse[i]) {
                if !bij.is_zero() {
                    *yj += c * bij;
                }
            }
        }
        y
    }

    /// Reduced cost `c_j - y · A_j`.
    fn reduced_cost(&self, y: &[Rational], var: usize) -> Rational {
        let priced: Rational = self.columns[var]
            .iter()
            .filter(|(row, _)| !y[*row].is_zero())
            .map(|(row, c)| c * &y[*row])
            .sum();
        &self.costs[var] - priced
    }

    fn entering(&self, y: &[Rational], enterable: usize, rule: Rule) -> Option<usize> {
        let candidates = (0..enterable.min(self.columns.len())).filter(|&var| !self.is_basic[var]);
        match rule {
            Rule::Bland => candidates
                .into_iter()
                .find(|&var| self.reduced_cost(y, var).is_negative()),
            Rule::Dantzig => {
                let mut best: Option<(usize, Rational)> = None;
                for var in candidates {
                    let d = self.reduced_cost(y, var);
                    if d.is_negative() && best.as_ref().is_none_or(|(_, b)| d < *b) {
                        best = Some((var, d));
                    }
                }
                best.map(|(var, _)| var)
            }
        }
    }

    fn transformed_column(&self, var: usize) -> Vec<Rational> {
        self.basis_inverse
            .iter()
            .map(|row| {
                self.columns[var]
                    .iter()
                    .filter(|(r, _)| !row[*r].is_zero())
                    .map(|(r, c)| c * &row[*r])
                    .sum()
            })
            .collect()
    }

    fn leaving(&self, column: &[Rational]) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, u) in column.iter().enumerate() {
            if !u.is_positive() {
                continue;
            }
            let ratio = &self.values[i] / u;
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, var: usize, column: &[Rational]) {
        let pivot = column[row].clone();
        let pivot_row: Vec<Rational> = self.basis_inverse[row].iter().map(|v| v / &pivot).collect();
        let pivot_value = &self.values[row] / &pivot;
        let nonzero: Vec<usize> = (0..self.m).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, factor) in column.iter().enumerate() {
            if i == row || factor.is_zero() {
                continue;
            }
            for &j in &nonzero {
                let delta = factor * &pivot_row[j];
                self.basis_inverse[i][j] -= &delta;
            }
            let delta = factor * &pivot_value;
            self.values[i] -= &delta;
        }
        self.basis_inverse[row] = pivot_row;
        self.values[row] = pivot_value;
        self.is_basic[self.basis[row]] = false;
        self.is_basic[var] = true;
        self.basis[row] = var;
    }
}
