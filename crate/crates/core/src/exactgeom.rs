//! Exact distance geometry for simplices.
//!
//! A simplex is handled through its matrix of squared pairwise distances. All
//! decisions (nondegeneracy, circumcenter, hull membership, the circumradius
//! obstruction) are exact; floating point only appears in [`realize`].

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;

/// Symmetric matrix of exact squared distances with zero diagonal and strictly
/// positive off-diagonal entries.
///
/// A single point (`n == 1`) is representable so that products can carry
/// trivial factors; simplex operations require `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquaredDistanceMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SquaredDistanceMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedMatrix("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedMatrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend(row);
        }
        let matrix = SquaredDistanceMatrix { n, entries };
        matrix.validate()?;
        Ok(matrix)
    }

    /// Builds a matrix from the strict upper triangle given as a function of
    /// 0-based `(i, j)` with `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                entries[i * n + j] = v.clone();
                entries[j * n + i] = v;
            }
        }
        let matrix = SquaredDistanceMatrix { n, entries };
        matrix.validate()?;
        Ok(matrix)
    }

    pub fn point() -> Self {
        SquaredDistanceMatrix {
            n: 1,
            entries: vec![Rational::zero()],
        }
    }

    /// All `n` points pairwise at squared distance `side_sq`.
    pub fn regular(n: usize, side_sq: &Rational) -> Result<Self> {
        Self::from_fn(n, |_, _| side_sq.clone())
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::MalformedMatrix("empty matrix".into()));
        }
        for i in 0..n {
            if !self.get(i, i).is_zero() {
                return Err(Error::MalformedMatrix(format!(
                    "diagonal entry {} is nonzero",
                    i + 1
                )));
            }
            for j in i + 1..n {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::MalformedMatrix(format!(
                        "entries ({}, {}) and ({}, {}) differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if self.get(i, j).is_zero() {
                    return Err(Error::DuplicatePoints(i + 1, j + 1));
                }
                if self.get(i, j).is_negative() {
                    return Err(Error::MalformedMatrix(format!(
                        "entry ({}, {}) is negative",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Relabels vertices: entry `(i, j)` of the result is `(order[i], order[j])`
    /// of `self`. `order` must be a permutation or an injection into `0..n`.
    pub fn reindexed(&self, order: &[usize]) -> Result<Self> {
        Self::from_fn(order.len(), |i, j| self.get(order[i], order[j]).clone())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j)))
    }
}

/// Inner products of the edge vectors `p_{i+1} - p_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<Rational>>,
}

impl GramMatrix {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(&self.entries)
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircumcenterResult {
    pub lambdas: Vec<Rational>,
    /// Twice the squared circumradius.
    pub two_rho_sq: Rational,
}

impl CircumcenterResult {
    pub fn rho_sq(&self) -> Rational {
        &self.two_rho_sq / Rational::from(2)
    }

    /// Checks `Σλ = 1` and `Σ_j λ_j M_ij = 2ρ²` for every row, exactly.
    pub fn satisfies(&self, m: &SquaredDistanceMatrix) -> bool {
        if self.lambdas.len() != m.n() || !self.two_rho_sq.is_positive() {
            return false;
        }
        let total: Rational = self.lambdas.iter().sum();
        total == Rational::one()
            && (0..m.n()).all(|i| {
                let row: Rational = self
                    .lambdas
                    .iter()
                    .enumerate()
                    .map(|(j, l)| l * m.get(i, j))
                    .sum();
                row == self.two_rho_sq
            })
    }
}

/// Floating-point realization of a simplex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointCloud {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn sq_dist(&self, i: usize, j: usize) -> f64 {
        self.points[i]
            .iter()
            .zip(&self.points[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    /// Largest relative deviation of the pairwise squared distances from `m`.
    pub fn max_relative_error(&self, m: &SquaredDistanceMatrix) -> f64 {
        m.pairs()
            .map(|(i, j)| {
                let target = m.get(i, j).to_f64();
                (self.sq_dist(i, j) - target).abs() / target.abs()
            })
            .fold(0.0, f64::max)
    }

    /// Circumcenter of the first `dim + 1` points, by solving
    /// `2 (p_i - p_0) · x = |p_i|² - |p_0|²` in floating point.
    pub fn circumcenter(&self) -> Option<Vec<f64>> {
        let k = self.dim;
        if self.points.len() < k + 1 {
            return None;
        }
        let p0 = &self.points[0];
        let norm0: f64 = p0.iter().map(|x| x * x).sum();
        let a = DMatrix::from_fn(k, k, |i, j| 2.0 * (self.points[i + 1][j] - p0[j]));
        let b = DVector::from_fn(k, |i, _| {
            self.points[i + 1].iter().map(|x| x * x).sum::<f64>() - norm0
        });
        a.lu().solve(&b).map(|x| x.iter().copied().collect())
    }
}

/// `G_ij = (M_{1,i+1} + M_{1,j+1} - M_{i+1,j+1}) / 2`.
pub fn gram_from_sqdist(m: &SquaredDistanceMatrix) -> GramMatrix {
    let k = m.n() - 1;
    let half = Rational::new(1, 2);
    let entries = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (m.get(0, i + 1) + m.get(0, j + 1) - m.get(i + 1, j + 1)) * &half)
                .collect()
        })
        .collect();
    GramMatrix { entries }
}

pub fn is_nondegenerate_simplex(m: &SquaredDistanceMatrix) -> bool {
    m.n() >= 2 && gram_from_sqdist(m).is_positive_definite()
}

/// Squared diameter and every 0-based pair `(i, j)`, `i < j`, attaining it.
pub fn diameter_sq(m: &SquaredDistanceMatrix) -> (Rational, Vec<(usize, usize)>) {
    let mut best = Rational::zero();
    let mut pairs = Vec::new();
    for (i, j) in m.pairs() {
        let v = m.get(i, j);
        if *v > best {
            best = v.clone();
            pairs.clear();
        }
        if *v == best {
            pairs.push((i, j));
        }
    }
    (best, pairs)
}

/// Exact barycentric coordinates of the circumcenter together with `2ρ²`.
///
/// Solves `Σ_j λ_j M_ij = 2ρ²` for every `i` with `Σ λ = 1`.
pub fn circumcenter_barycentric(m: &SquaredDistanceMatrix) -> Result<CircumcenterResult> {
    let n = m.n();
    if n < 2 {
        return Err(Error::Degenerate);
    }
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row: Vec<Rational> = (0..n).map(|j| m.get(i, j).clone()).collect();
        row.push(Rational::from(-1));
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let mut last = vec![Rational::one(); n];
    last.push(Rational::zero());
    rows.push(last);
    rhs.push(Rational::one());

    let mut x = linalg::solve(&rows, &rhs)?;
    let two_rho_sq = x.pop().expect("n + 1 unknowns");
    Ok(CircumcenterResult {
        lambdas: x,
        two_rho_sq,
    })
}

/// Closed-hull membership: every barycentric coordinate is `>= 0`.
pub fn circumcenter_in_hull(c: &CircumcenterResult) -> bool {
    c.lambdas.iter().all(|l| !l.is_negative())
}

/// True when `2ρ² > D²`, which rules out diameter-Ramsey.
pub fn cf_obstruction(rho_sq: &Rational, diam_sq: &Rational) -> bool {
    rho_sq * Rational::from(2) > *diam_sq
}

/// Places the simplex in `R^{n-1}` from a Cholesky factor of its Gram matrix.
///
/// Vertex 1 sits at the origin, vertex 2 on the first axis, vertex 3 in the
/// first coordinate plane and so on, each with a positive last coordinate.
pub fn realize(m: &SquaredDistanceMatrix, tol: f64) -> Result<PointCloud> {
    let n = m.n();
    if !is_nondegenerate_simplex(m) {
        return Err(Error::Degenerate);
    }
    let k = n - 1;
    let gram = gram_from_sqdist(m);
    let g = DMatrix::from_fn(k, k, |i, j| gram.entries[i][j].to_f64());
    let chol = g.cholesky().ok_or(Error::ToleranceExceeded {
        error: f64::INFINITY,
        tol,
    })?;
    let l = chol.l();
    let mut points = vec![vec![0.0; k]];
    points.extend((0..k).map(|i| (0..k).map(|j| l[(i, j)]).collect()));
    let cloud = PointCloud { dim: k, points };
    let error = cloud.max_relative_error(m);
    if error.is_nan() || error > tol {
        return Err(Error::ToleranceExceeded { error, tol });
    }
    Ok(cloud)
}

/// Exact squared distances of rational points.
pub fn sqdist_from_points(points: &[Vec<Rational>]) -> Result<SquaredDistanceMatrix> {
    let Some(first) = points.first() else {
        return Err(Error::MalformedMatrix("no points".into()));
    };
    let dim = first.len();
    if let Some(bad) = points.iter().position(|p| p.len() != dim) {
        return Err(Error::MalformedMatrix(format!(
            "point {} has dimension {}, expected {dim}",
            bad + 1,
            points[bad].len()
        )));
    }
    SquaredDistanceMatrix::from_fn(points.len(), |i, j| {
        points[i]
            .iter()
            .zip(&points[j])
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .sum()
    })
}
