//! Deficit decompositions and product-of-regular-simplices embeddings.
//!
//! Fix a pair `(a, b)` attaining the diameter `D`. The deficits are
//! `δ_ij = D² - M_ij`. A decomposition assigns nonnegative masses `α_B` to
//! vertex subsets `B` with `|B| >= 2` and `{a, b} ⊄ B` so that, for every pair,
//! the masses of the subsets containing it add up to its deficit, and the total
//! mass is at most `D²`. The leftover `α₀ = D² - Σ α_B` is the reserve.
//!
//! Such a decomposition realizes the simplex inside a product of regular
//! simplices of diameter `D`: one factor on all `n` vertices with side² `α₀`,
//! and one factor per `B` with side² `α_B` in which the vertices of `B` are
//! collapsed to a single point.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactgeom::{diameter_sq, SquaredDistanceMatrix};
use crate::lp::{minimize_from_basis, StandardForm};
use crate::rational::Rational;

pub const DEFAULT_MAX_VERTICES: usize = 14;

/// Bitmasks cap the vertex count regardless of configuration.
pub const HARD_MAX_VERTICES: usize = 31;

/// Set of 0-based vertex indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        VertexSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn contains_pair(self, i: usize, j: usize) -> bool {
        self.contains(i) && self.contains(j)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// Size first, then lexicographic on the sorted index list.
    fn family_order(self) -> (usize, Vec<usize>) {
        (self.len(), self.indices().collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.indices().map(|i| i + 1).collect();
        write!(f, "{one_based:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficitProfile {
    n: usize,
    diameter_pair: (usize, usize),
    diam_sq: Rational,
    deficits: Vec<Rational>,
}

impl DeficitProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diameter_pair(&self) -> (usize, usize) {
        self.diameter_pair
    }

    pub fn diam_sq(&self) -> &Rational {
        &self.diam_sq
    }

    pub fn deficit(&self, i: usize, j: usize) -> &Rational {
        &self.deficits[i * self.n + j]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j)))
    }
}

/// Deficits relative to `pair`, which must attain the diameter.
pub fn deficit_profile(m: &SquaredDistanceMatrix, pair: (usize, usize)) -> Result<DeficitProfile> {
    let n = m.n();
    let (a, b) = pair;
    if a == b || a >= n || b >= n {
        return Err(Error::NotADiameterPair(a + 1, b + 1));
    }
    let (diam_sq, _) = diameter_sq(m);
    if *m.get(a, b) != diam_sq {
        return Err(Error::NotADiameterPair(a + 1, b + 1));
    }
    let mut deficits = vec![Rational::zero(); n * n];
    for (i, j) in m.pairs() {
        let d = &diam_sq - m.get(i, j);
        deficits[i * n + j] = d.clone();
        deficits[j * n + i] = d;
    }
    Ok(DeficitProfile {
        n,
        diameter_pair: (a.min(b), a.max(b)),
        diam_sq,
        deficits,
    })
}

/// `(Σ δ_ij <= D², Σ δ_ij)`: the criterion restricted to two-element subsets.
pub fn pairwise_criterion(p: &DeficitProfile) -> (bool, Rational) {
    let sum: Rational = p.pairs().map(|(i, j)| p.deficit(i, j)).sum();
    (sum <= p.diam_sq, sum)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    pub subsets: Vec<VertexSet>,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_MAX_VERTICES);
    if n > cap {
        return Err(Error::TooManyVertices { n, cap });
    }
    Ok(())
}

/// Every `B` with `|B| >= 2` that contains no zero-deficit pair (in particular
/// not the diameter pair), ordered by size then lexicographically.
pub fn admissible_subsets(p: &DeficitProfile, cap: usize) -> Result<SubsetFamily> {
    let n = p.n;
    check_cap(n, cap)?;
    let mut zero_partners = vec![0u32; n];
    for (i, j) in p.pairs() {
        if p.deficit(i, j).is_zero() {
            zero_partners[i] |= 1 << j;
            zero_partners[j] |= 1 << i;
        }
    }
    let (a, b) = p.diameter_pair;
    let mut subsets: Vec<VertexSet> = (0u32..(1 << n))
        .map(VertexSet)
        .filter(|s| s.len() >= 2 && !s.contains_pair(a, b))
        .filter(|s| s.indices().all(|i| zero_partners[i] & s.0 == 0))
        .collect();
    subsets.sort_by_cached_key(|s| s.family_order());
    Ok(SubsetFamily { subsets })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficitDecomposition {
    pub n: usize,
    /// Positive masses, in subset-family order.
    pub masses: Vec<(VertexSet, Rational)>,
    pub reserve: Rational,
    pub diameter_pair: (usize, usize),
    pub diam_sq: Rational,
}

impl DeficitDecomposition {
    pub fn total_mass(&self) -> Rational {
        self.masses.iter().map(|(_, a)| a).sum()
    }
}

/// Searches for a decomposition with exact simplex iterations.
///
/// Variables are the admissible subsets; there is one equality row per pair
/// with positive deficit. Pairs with zero deficit need no row because no
/// admissible subset contains them. The two-element subsets with `α_{ij} = δ_ij`
/// satisfy every row and form an identity basis, so only the mass bound
/// `Σ α_B <= D²` can be violated at the start. Phase I then drives its excess
/// down: total mass is minimized from that basis and the search stops as soon
/// as it reaches `D²`. If the minimum exceeds `D²` there is no decomposition.
pub fn find_decomposition(p: &DeficitProfile, cap: usize) -> Result<Option<DeficitDecomposition>> {
    let family = admissible_subsets(p, cap)?;
    let mut row_of = vec![usize::MAX; p.n * p.n];
    let mut rhs = Vec::new();
    for (i, j) in p.pairs() {
        let d = p.deficit(i, j);
        if d.is_positive() {
            row_of[i * p.n + j] = rhs.len();
            rhs.push(d.clone());
        }
    }
    let mut basis = vec![usize::MAX; rhs.len()];
    let columns: Vec<Vec<(usize, Rational)>> = family
        .subsets
        .iter()
        .enumerate()
        .map(|(col, s)| {
            let members: Vec<usize> = s.indices().collect();
            let mut entries = Vec::new();
            for (k, &i) in members.iter().enumerate() {
                for &j in &members[k + 1..] {
                    entries.push((row_of[i * p.n + j], Rational::one()));
                }
            }
            if let [(row, _)] = entries[..] {
                basis[row] = col;
            }
            entries
        })
        .collect();
    debug_assert!(basis.iter().all(|&b| b != usize::MAX));
    let costs = vec![Rational::one(); columns.len()];
    let problem = StandardForm { columns, rhs };
    let outcome = minimize_from_basis(&problem, &costs, basis, costs.len(), &p.diam_sq);
    if outcome.objective > p.diam_sq {
        return Ok(None);
    }
    let masses: Vec<(VertexSet, Rational)> = family
        .subsets
        .iter()
        .zip(outcome.values)
        .filter(|(_, a)| a.is_positive())
        .map(|(s, a)| (*s, a))
        .collect();
    Ok(Some(DeficitDecomposition {
        n: p.n,
        masses,
        reserve: &p.diam_sq - &outcome.objective,
        diameter_pair: p.diameter_pair,
        diam_sq: p.diam_sq.clone(),
    }))
}

/// Outcome of the search for one diameter pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub pair: (usize, usize),
    pub pairwise: (bool, Rational),
    pub decomposition: Option<DeficitDecomposition>,
}

/// Runs the search independently for every pair attaining the diameter.
pub fn decompose_all_pairs(m: &SquaredDistanceMatrix, cap: usize) -> Result<Vec<PairResult>> {
    check_cap(m.n(), cap)?;
    let (_, pairs) = diameter_sq(m);
    pairs
        .par_iter()
        .map(|&pair| {
            let profile = deficit_profile(m, pair)?;
            let decomposition = find_decomposition(&profile, cap)?;
            if let Some(d) = &decomposition {
                if !verify_decomposition(&profile, d) {
                    return Err(Error::Inconsistent(format!(
                        "solver certificate for pair ({}, {}) does not verify",
                        pair.0 + 1,
                        pair.1 + 1
                    )));
                }
            }
            Ok(PairResult {
                pair,
                pairwise: pairwise_criterion(&profile),
                decomposition,
            })
        })
        .collect()
}

/// Exact check of every defining condition of a decomposition.
pub fn verify_decomposition(p: &DeficitProfile, d: &DeficitDecomposition) -> bool {
    let n = p.n;
    let (a, b) = p.diameter_pair;
    if d.n != n || d.diameter_pair != p.diameter_pair || d.diam_sq != p.diam_sq {
        return false;
    }
    let members_ok = d.masses.iter().all(|(s, alpha)| {
        !alpha.is_negative()
            && s.len() >= 2
            && s.0.checked_shr(n as u32).unwrap_or(0) == 0
            && !s.contains_pair(a, b)
    });
    if !members_ok || d.reserve.is_negative() {
        return false;
    }
    let total = d.total_mass();
    if total > p.diam_sq || &total + &d.reserve != p.diam_sq {
        return false;
    }
    p.pairs().all(|(i, j)| {
        let covered: Rational = d
            .masses
            .iter()
            .filter(|(s, _)| s.contains_pair(i, j))
            .map(|(_, alpha)| alpha)
            .sum();
        covered == *p.deficit(i, j)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// `S₀` on all vertices (a single point when the reserve is zero).
    Reserve,
    /// `S_B`: the vertices of `B` share the point `u_B`.
    Collapse(VertexSet),
}

/// A vertex of a factor simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorVertex {
    /// `v_i` of the factor.
    Own(usize),
    /// The unique point of a trivial reserve factor.
    Single,
    /// `u_B`.
    Collapsed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub side_sq: Rational,
    pub vertices: Vec<FactorVertex>,
}

impl Factor {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn sqdist(&self) -> SquaredDistanceMatrix {
        if self.size() == 1 {
            SquaredDistanceMatrix::point()
        } else {
            SquaredDistanceMatrix::regular(self.size(), &self.side_sq).expect("positive side")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductEmbedding {
    pub factors: Vec<Factor>,
    /// `assignment[i][f]` indexes into `factors[f].vertices`: the coordinate of
    /// `q_i` in factor `f`.
    pub assignment: Vec<Vec<usize>>,
    pub derived_sqdist: SquaredDistanceMatrix,
}

impl ProductEmbedding {
    /// Squared diameter of the whole product.
    pub fn product_diam_sq(&self) -> Rational {
        self.factors
            .iter()
            .filter(|f| f.size() > 1)
            .map(|f| &f.side_sq)
            .sum()
    }

    /// Squared-distance matrix of every point of the product, with points
    /// indexed in mixed radix (first factor most significant).
    pub fn product_sqdist(&self) -> SquaredDistanceMatrix {
        self.factors
            .iter()
            .fold(SquaredDistanceMatrix::point(), |acc, f| {
                product_sqdist(&acc, &f.sqdist())
            })
    }

    /// Index of each `q_i` in [`Self::product_sqdist`].
    pub fn point_indices(&self) -> Vec<usize> {
        self.assignment
            .iter()
            .map(|coords| {
                coords
                    .iter()
                    .zip(&self.factors)
                    .fold(0, |acc, (&c, f)| acc * f.size() + c)
            })
            .collect()
    }

    /// Floating coordinates of `q_1, …, q_n`: each factor is realized as a
    /// regular simplex and the coordinates are concatenated.
    pub fn realize(&self, tol: f64) -> Result<crate::exactgeom::PointCloud> {
        let mut points = vec![Vec::new(); self.assignment.len()];
        for (f, factor) in self.factors.iter().enumerate() {
            if factor.size() == 1 {
                continue;
            }
            let cloud = crate::exactgeom::realize(&factor.sqdist(), tol)?;
            for (i, coords) in self.assignment.iter().enumerate() {
                points[i].extend_from_slice(&cloud.points[coords[f]]);
            }
        }
        let dim = points.first().map_or(0, Vec::len);
        let cloud = crate::exactgeom::PointCloud { dim, points };
        let error = cloud.max_relative_error(&self.derived_sqdist);
        if error > tol {
            return Err(Error::ToleranceExceeded { error, tol });
        }
        Ok(cloud)
    }
}

/// Builds the product embedding witnessed by a verified decomposition.
pub fn build_embedding(d: &DeficitDecomposition) -> ProductEmbedding {
    let n = d.n;
    let mut factors = Vec::with_capacity(d.masses.len() + 1);
    let mut assignment = vec![Vec::with_capacity(d.masses.len() + 1); n];

    if d.reserve.is_positive() {
        factors.push(Factor {
            kind: FactorKind::Reserve,
            side_sq: d.reserve.clone(),
            vertices: (0..n).map(FactorVertex::Own).collect(),
        });
        for (i, coords) in assignment.iter_mut().enumerate() {
            coords.push(i);
        }
    } else {
        factors.push(Factor {
            kind: FactorKind::Reserve,
            side_sq: Rational::zero(),
            vertices: vec![FactorVertex::Single],
        });
        for coords in assignment.iter_mut() {
            coords.push(0);
        }
    }

    for (set, alpha) in &d.masses {
        let outside: Vec<usize> = (0..n).filter(|&i| !set.contains(i)).collect();
        let mut vertices = vec![FactorVertex::Collapsed];
        vertices.extend(outside.iter().map(|&i| FactorVertex::Own(i)));
        for (i, coords) in assignment.iter_mut().enumerate() {
            let slot = if set.contains(i) {
                0
            } else {
                1 + outside
                    .iter()
                    .position(|&o| o == i)
                    .expect("outside vertex")
            };
            coords.push(slot);
        }
        factors.push(Factor {
            kind: FactorKind::Collapse(*set),
            side_sq: alpha.clone(),
            vertices,
        });
    }

    let derived_sqdist = SquaredDistanceMatrix::from_fn(n, |i, j| {
        factors
            .iter()
            .enumerate()
            .filter(|(f, _)| assignment[i][*f] != assignment[j][*f])
            .map(|(_, factor)| &factor.side_sq)
            .sum()
    })
    .expect("a verified decomposition separates every pair");

    ProductEmbedding {
        factors,
        assignment,
        derived_sqdist,
    }
}

/// Squared distances of the Cartesian product `X × Y`; point `(x, y)` gets
/// index `x * |Y| + y`.
pub fn product_sqdist(
    x: &SquaredDistanceMatrix,
    y: &SquaredDistanceMatrix,
) -> SquaredDistanceMatrix {
    let (nx, ny) = (x.n(), y.n());
    SquaredDistanceMatrix::from_fn(nx * ny, |a, b| {
        x.get(a / ny, b / ny) + y.get(a % ny, b % ny)
    })
    .expect("product of valid matrices is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::r;

    fn tetra_133() -> SquaredDistanceMatrix {
        SquaredDistanceMatrix::new(
            [[0, 7, 4, 7], [7, 0, 4, 4], [4, 4, 0, 4], [7, 4, 4, 0]]
                .iter()
                .map(|row| row.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn set(one_based: &[usize]) -> VertexSet {
        VertexSet::from_indices(one_based.iter().map(|i| i - 1))
    }

    fn tetra_certificate() -> DeficitDecomposition {
        DeficitDecomposition {
            n: 4,
            masses: vec![(set(&[1, 3]), r(3, 1)), (set(&[2, 3, 4]), r(3, 1))],
            reserve: r(1, 1),
            diameter_pair: (0, 1),
            diam_sq: r(7, 1),
        }
    }

    #[test]
    fn profile_of_tetrahedron() {
        let p = deficit_profile(&tetra_133(), (0, 1)).unwrap();
        assert_eq!(p.deficit(0, 2), &r(3, 1));
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(p.deficit(i, j), &r(3, 1));
        }
        assert!(p.deficit(0, 1).is_zero() && p.deficit(0, 3).is_zero());
        assert_eq!(
            deficit_profile(&tetra_133(), (0, 2)),
            Err(Error::NotADiameterPair(1, 3))
        );
    }

    #[test]
    fn regular_and_segment_profiles() {
        let reg = SquaredDistanceMatrix::regular(5, &r(2, 1)).unwrap();
        let p = deficit_profile(&reg, (2, 4)).unwrap();
        assert!(p.pairs().all(|(i, j)| p.deficit(i, j).is_zero()));
        assert_eq!(pairwise_criterion(&p), (true, r(0, 1)));
        assert!(admissible_subsets(&p, 14).unwrap().subsets.is_empty());
        let d = find_decomposition(&p, 14).unwrap().unwrap();
        assert!(d.masses.is_empty());
        assert_eq!(d.reserve, r(2, 1));

        let seg = SquaredDistanceMatrix::regular(2, &r(1, 1)).unwrap();
        let p = deficit_profile(&seg, (0, 1)).unwrap();
        assert!(p.deficit(0, 1).is_zero());
        assert!(admissible_subsets(&p, 14).unwrap().subsets.is_empty());
    }

    #[test]
    fn pairwise_examples() {
        let p = deficit_profile(&tetra_133(), (0, 1)).unwrap();
        assert_eq!(pairwise_criterion(&p), (false, r(12, 1)));
        let iso = SquaredDistanceMatrix::new(vec![
            vec![r(0, 1), r(1, 1), r(9, 10)],
            vec![r(1, 1), r(0, 1), r(9, 10)],
            vec![r(9, 10), r(9, 10), r(0, 1)],
        ])
        .unwrap();
        let p = deficit_profile(&iso, (0, 1)).unwrap();
        assert_eq!(pairwise_criterion(&p), (true, r(1, 5)));
    }

    #[test]
    fn admissible_family_of_tetrahedron() {
        let p = deficit_profile(&tetra_133(), (0, 1)).unwrap();
        let fam = admissible_subsets(&p, 14).unwrap();
        let expected: Vec<VertexSet> = [&[1, 3][..], &[2, 3], &[2, 4], &[3, 4], &[2, 3, 4]]
            .iter()
            .map(|s| set(s))
            .collect();
        assert_eq!(fam.subsets, expected);
    }

    #[test]
    fn vertex_cap() {
        let big = SquaredDistanceMatrix::regular(6, &r(1, 1)).unwrap();
        let p = deficit_profile(&big, (0, 1)).unwrap();
        assert_eq!(
            admissible_subsets(&p, 5),
            Err(Error::TooManyVertices { n: 6, cap: 5 })
        );
        assert!(find_decomposition(&p, 5).is_err());
    }

    #[test]
    fn tetrahedron_decomposition() {
        let p = deficit_profile(&tetra_133(), (0, 1)).unwrap();
        assert!(verify_decomposition(&p, &tetra_certificate()));
        let found = find_decomposition(&p, 14).unwrap().unwrap();
        assert!(verify_decomposition(&p, &found));
    }

    #[test]
    fn verification_rejects_broken_certificates() {
        let p = deficit_profile(&tetra_133(), (0, 1)).unwrap();
        let mut wrong_mass = tetra_certificate();
        wrong_mass.masses[0].1 = r(2, 1);
        wrong_mass.reserve = r(2, 1);
        assert!(!verify_decomposition(&p, &wrong_mass));

        let mut with_diameter = tetra_certificate();
        with_diameter.masses.push((set(&[1, 2]), r(0, 1)));
        assert!(!verify_decomposition(&p, &with_diameter));

        let mut bad_reserve = tetra_certificate();
        bad_reserve.reserve = r(2, 1);
        assert!(!verify_decomposition(&p, &bad_reserve));
    }

    #[test]
    fn pairwise_success_implies_feasible() {
        let iso = SquaredDistanceMatrix::new(vec![
            vec![r(0, 1), r(1, 1), r(9, 10)],
            vec![r(1, 1), r(0, 1), r(9, 10)],
            vec![r(9, 10), r(9, 10), r(0, 1)],
        ])
        .unwrap();
        let p = deficit_profile(&iso, (0, 1)).unwrap();
        let pairwise = DeficitDecomposition {
            n: 3,
            masses: vec![(set(&[1, 3]), r(1, 10)), (set(&[2, 3]), r(1, 10))],
            reserve: r(4, 5),
            diameter_pair: (0, 1),
            diam_sq: r(1, 1),
        };
        assert!(verify_decomposition(&p, &pairwise));
        assert!(find_decomposition(&p, 14).unwrap().is_some());
    }

    #[test]
    fn embedding_of_tetra_certificate() {
        let e = build_embedding(&tetra_certificate());
        let sizes: Vec<usize> = e.factors.iter().map(Factor::size).collect();
        let sides: Vec<Rational> = e.factors.iter().map(|f| f.side_sq.clone()).collect();
        assert_eq!(sizes, vec![4, 3, 2]);
        assert_eq!(sides, vec![r(1, 1), r(3, 1), r(3, 1)]);
        assert_eq!(e.derived_sqdist, tetra_133());
        assert_eq!(e.derived_sqdist.get(0, 1), &r(7, 1));
        assert_eq!(e.product_diam_sq(), r(7, 1));

        let product = e.product_sqdist();
        assert_eq!(product.n(), 24);
        let idx = e.point_indices();
        for (i, j) in tetra_133().pairs() {
            assert_eq!(product.get(idx[i], idx[j]), tetra_133().get(i, j));
        }
        assert_eq!(diameter_sq(&product).0, r(7, 1));

        let cloud = e.realize(1e-12).unwrap();
        assert!(cloud.max_relative_error(&tetra_133()) < 1e-12);
    }

    #[test]
    fn embedding_with_zero_reserve() {
        // triangle with D² = 2 and two sides of squared length 1: the pair
        // masses 1 + 1 use up the whole diameter.
        let m = SquaredDistanceMatrix::new(vec![
            vec![r(0, 1), r(2, 1), r(1, 1)],
            vec![r(2, 1), r(0, 1), r(1, 1)],
            vec![r(1, 1), r(1, 1), r(0, 1)],
        ])
        .unwrap();
        let p = deficit_profile(&m, (0, 1)).unwrap();
        let d = find_decomposition(&p, 14).unwrap().unwrap();
        assert!(d.reserve.is_zero());
        let e = build_embedding(&d);
        assert_eq!(e.factors[0].size(), 1);
        assert_eq!(e.derived_sqdist, m);
        assert_eq!(e.product_diam_sq(), r(2, 1));
    }

    #[test]
    fn regular_embedding_is_single_factor() {
        let reg = SquaredDistanceMatrix::regular(4, &r(5, 1)).unwrap();
        let p = deficit_profile(&reg, (0, 1)).unwrap();
        let e = build_embedding(&find_decomposition(&p, 14).unwrap().unwrap());
        assert_eq!(e.factors.len(), 1);
        assert_eq!(e.derived_sqdist, reg);
    }

    #[test]
    fn product_examples() {
        let seg = SquaredDistanceMatrix::regular(2, &r(1, 1)).unwrap();
        let sq = product_sqdist(&seg, &seg);
        let upper: Vec<Rational> = sq.pairs().map(|(i, j)| sq.get(i, j).clone()).collect();
        let expected: Vec<Rational> = [1, 1, 2, 2, 1, 1].iter().map(|&v| r(v, 1)).collect();
        assert_eq!(upper, expected);
        assert_eq!(product_sqdist(&seg, &SquaredDistanceMatrix::point()), seg);
        assert_eq!(product_sqdist(&SquaredDistanceMatrix::point(), &seg), seg);
    }

    #[test]
    fn all_pairs_reported() {
        let results = decompose_all_pairs(&tetra_133(), 14).unwrap();
        let pairs: Vec<(usize, usize)> = results.iter().map(|r| r.pair).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 3)]);
        assert!(results.iter().all(|r| r.decomposition.is_some()));
    }
}
