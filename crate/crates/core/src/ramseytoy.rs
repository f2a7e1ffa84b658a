//! Exhaustive Ramsey checks on tiny configurations.
//!
//! `R → (A)_q` holds when every `q`-coloring of the points of `R` contains a
//! monochromatic subset congruent to `A`. Congruence of point sets is decided
//! on squared-distance matrices, which determine a simplex up to isometry.

use rayon::prelude::*;
use serde::Serialize;

use crate::deficits::product_sqdist;
use crate::exactgeom::SquaredDistanceMatrix;
use crate::rational::Rational;

pub const DEFAULT_COLOR_CAP: u64 = 1 << 24;

/// Copies are tracked as bitmasks over the points of `R`.
const MAX_CONFIG_POINTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteConfig {
    pub sqdist: SquaredDistanceMatrix,
    pub label: String,
}

impl FiniteConfig {
    pub fn new(sqdist: SquaredDistanceMatrix, label: impl Into<String>) -> Self {
        FiniteConfig {
            sqdist,
            label: label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.sqdist.n()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `k + 1` points at mutual squared distance `side_sq`.
pub fn regular_simplex_config(k: usize, side_sq: &Rational) -> FiniteConfig {
    assert!(k >= 1, "k must be at least 1");
    let sqdist = SquaredDistanceMatrix::regular(k + 1, side_sq).expect("side_sq > 0");
    FiniteConfig::new(sqdist, format!("regular {k}-simplex, side² {side_sq}"))
}

/// Regular simplex on `qk + 1` vertices: some color class has `k + 1` of them.
pub fn pigeonhole_witness(k: usize, q: usize, side_sq: &Rational) -> FiniteConfig {
    assert!(k >= 1 && q >= 1, "k and q must be positive");
    let mut config = regular_simplex_config(q * k, side_sq);
    config.label = format!("pigeonhole witness for k = {k}, q = {q}: {}", config.label);
    config
}

pub fn product_config(a: &FiniteConfig, b: &FiniteConfig) -> FiniteConfig {
    FiniteConfig::new(
        product_sqdist(&a.sqdist, &b.sqdist),
        format!("({}) × ({})", a.label, b.label),
    )
}

/// Every injection `f` with `R(f(i), f(j)) = A(i, j)`, in lexicographic order
/// of the image tuple.
pub fn congruent_copies(r: &FiniteConfig, a: &SquaredDistanceMatrix) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if a.n() > r.len() {
        return out;
    }
    let mut image = Vec::with_capacity(a.n());
    let mut used = vec![false; r.len()];
    extend_copy(&r.sqdist, a, &mut image, &mut used, &mut out);
    out
}

fn extend_copy(
    r: &SquaredDistanceMatrix,
    a: &SquaredDistanceMatrix,
    image: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let k = image.len();
    if k == a.n() {
        out.push(image.clone());
        return;
    }
    for cand in 0..r.n() {
        if used[cand]
            || !image
                .iter()
                .enumerate()
                .all(|(i, &p)| r.get(p, cand) == a.get(i, k))
        {
            continue;
        }
        used[cand] = true;
        image.push(cand);
        extend_copy(r, a, image, used, out);
        image.pop();
        used[cand] = false;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ArrowStatus {
    Holds,
    Fails,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowVerdict {
    pub status: ArrowStatus,
    /// Color of each point (0-based colors), present iff the relation fails.
    pub witness_coloring: Option<Vec<usize>>,
    pub colorings_checked: u64,
}

/// Unordered copies of `A` in `R` as point bitmasks, deduplicated.
fn copy_masks(r: &FiniteConfig, a: &SquaredDistanceMatrix) -> Vec<u64> {
    let mut masks: Vec<u64> = congruent_copies(r, a)
        .into_iter()
        .map(|img| img.iter().fold(0u64, |m, &p| m | (1 << p)))
        .collect();
    masks.sort_unstable();
    masks.dedup();
    masks
}

/// True when some copy lies entirely inside one color class.
fn has_monochromatic_copy(coloring: &[usize], q: usize, copies: &[u64]) -> bool {
    let mut classes = vec![0u64; q];
    for (p, &c) in coloring.iter().enumerate() {
        classes[c] |= 1 << p;
    }
    copies.iter().any(|&copy| {
        let first = copy.trailing_zeros() as usize;
        copy & !classes[coloring[first]] == 0
    })
}

/// Coloring number `index` in lexicographic order with point 0 colored 0.
fn decode_coloring(mut index: u64, m: usize, q: usize) -> Vec<usize> {
    let mut coloring = vec![0; m];
    for slot in coloring[1..].iter_mut().rev() {
        *slot = (index % q as u64) as usize;
        index /= q as u64;
    }
    coloring
}

/// Re-checks a claimed failing coloring.
pub fn is_valid_witness(
    r: &FiniteConfig,
    a: &SquaredDistanceMatrix,
    q: usize,
    coloring: &[usize],
) -> bool {
    coloring.len() == r.len()
        && coloring.iter().all(|&c| c < q)
        && !has_monochromatic_copy(coloring, q, &copy_masks(r, a))
}

/// Decides `R → (A)_q` by enumerating colorings.
///
/// Point 0 is always colored 0, which loses nothing because renaming colors
/// preserves monochromatic copies. The search is split across threads; the
/// reported witness is the lexicographically least failing coloring either way.
/// When `q^|R|` exceeds `cap` the instance is reported infeasible.
pub fn arrow_check(
    r: &FiniteConfig,
    a: &SquaredDistanceMatrix,
    q: usize,
    cap: u64,
) -> ArrowVerdict {
    assert!(q >= 1, "at least one color");
    let m = r.len();
    let infeasible = ArrowVerdict {
        status: ArrowStatus::Infeasible,
        witness_coloring: None,
        colorings_checked: 0,
    };
    let full = u32::try_from(m)
        .ok()
        .and_then(|m| (q as u64).checked_pow(m));
    let Some(full) = full.filter(|&f| f <= cap && m <= MAX_CONFIG_POINTS) else {
        return infeasible;
    };
    let total = full / q as u64;
    let copies = copy_masks(r, a);
    let failing = (0..total)
        .into_par_iter()
        .find_first(|&idx| !has_monochromatic_copy(&decode_coloring(idx, m, q), q, &copies));
    match failing {
        Some(idx) => {
            let coloring = decode_coloring(idx, m, q);
            debug_assert!(is_valid_witness(r, a, q, &coloring));
            ArrowVerdict {
                status: ArrowStatus::Fails,
                witness_coloring: Some(coloring),
                colorings_checked: idx + 1,
            }
        }
        None => ArrowVerdict {
            status: ArrowStatus::Holds,
            witness_coloring: None,
            colorings_checked: total,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::r;

    fn square() -> FiniteConfig {
        let seg = regular_simplex_config(1, &r(1, 1));
        product_config(&seg, &seg)
    }

    #[test]
    fn constructors() {
        assert_eq!(regular_simplex_config(1, &r(1, 1)).len(), 2);
        assert_eq!(regular_simplex_config(2, &r(1, 1)).len(), 3);
        assert_eq!(pigeonhole_witness(2, 2, &r(1, 1)).len(), 5);
        assert_eq!(pigeonhole_witness(1, 2, &r(1, 1)).len(), 3);
        assert_eq!(pigeonhole_witness(1, 3, &r(1, 1)).len(), 4);
        let reg = regular_simplex_config(4, &r(2, 1));
        assert_eq!(crate::exactgeom::diameter_sq(&reg.sqdist).0, r(2, 1));
    }

    #[test]
    fn copies_of_triangle_in_tetrahedron() {
        let tet = regular_simplex_config(3, &r(1, 1));
        let tri = SquaredDistanceMatrix::regular(3, &r(1, 1)).unwrap();
        let copies = congruent_copies(&tet, &tri);
        assert_eq!(copies.len(), 24);
        assert_eq!(copy_masks(&tet, &tri).len(), 4);
        assert!(congruent_copies(&square(), &tri).is_empty());
    }

    #[test]
    fn copy_larger_than_config() {
        let tri = regular_simplex_config(2, &r(1, 1));
        let tet = SquaredDistanceMatrix::regular(4, &r(1, 1)).unwrap();
        assert!(congruent_copies(&tri, &tet).is_empty());
    }

    #[test]
    fn pigeonhole_holds() {
        for (k, q) in [(1, 2), (1, 3), (2, 2)] {
            let witness = pigeonhole_witness(k, q, &r(1, 1));
            let target = SquaredDistanceMatrix::regular(k + 1, &r(1, 1)).unwrap();
            let v = arrow_check(&witness, &target, q, DEFAULT_COLOR_CAP);
            assert_eq!(v.status, ArrowStatus::Holds, "k = {k}, q = {q}");
            assert_eq!(v.colorings_checked, (q as u64).pow((q * k) as u32));
        }
    }

    #[test]
    fn triangle_fails_with_two_colors() {
        let tri = regular_simplex_config(2, &r(1, 1));
        let v = arrow_check(&tri, &tri.sqdist, 2, DEFAULT_COLOR_CAP);
        assert_eq!(v.status, ArrowStatus::Fails);
        let w = v.witness_coloring.unwrap();
        assert_eq!(w, vec![0, 0, 1]);
        assert!(is_valid_witness(&tri, &tri.sqdist, 2, &w));
    }

    #[test]
    fn square_diagonal_fails() {
        let diag = SquaredDistanceMatrix::regular(2, &r(2, 1)).unwrap();
        let v = arrow_check(&square(), &diag, 2, DEFAULT_COLOR_CAP);
        assert_eq!(v.status, ArrowStatus::Fails);
        let w = v.witness_coloring.unwrap();
        // points (0,0),(0,1),(1,0),(1,1): diagonals {0,3} and {1,2}
        assert_ne!(w[0], w[3]);
        assert_ne!(w[1], w[2]);
    }

    #[test]
    fn cap_reports_infeasible() {
        let big = regular_simplex_config(9, &r(1, 1));
        let tri = SquaredDistanceMatrix::regular(3, &r(1, 1)).unwrap();
        let v = arrow_check(&big, &tri, 3, 1000);
        assert_eq!(v.status, ArrowStatus::Infeasible);
        assert!(v.witness_coloring.is_none());
    }

    #[test]
    fn single_color() {
        let tri = regular_simplex_config(2, &r(1, 1));
        let seg = SquaredDistanceMatrix::regular(2, &r(1, 1)).unwrap();
        assert_eq!(arrow_check(&tri, &seg, 1, 16).status, ArrowStatus::Holds);
    }
}
