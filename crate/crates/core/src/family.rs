//! The family `A_d(s, t, u)`.
//!
//! A `d`-simplex on vertices `1..=d+1` with squared edges
//!
//! * `s + t + u` between vertex 1 and vertices 2, 4, 5, …, d+1,
//! * `s + u` between vertices 1 and 3,
//! * `s + t` between any two of 2, 3, …, d+1.
//!
//! The masses `α_{1,3} = t`, `α_{2..d+1} = u` with reserve `s` decompose its
//! deficits, and its circumcenter has a closed form whose third barycentric
//! coordinate is negative once `(d - 2) t u > s (s + t + u)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::deficits::{
    build_embedding, deficit_profile, verify_decomposition, DeficitDecomposition, VertexSet,
};
use crate::error::{Error, Result};
use crate::exactgeom::{
    cf_obstruction, circumcenter_barycentric, circumcenter_in_hull, is_nondegenerate_simplex,
    SquaredDistanceMatrix,
};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    d: usize,
    s: Rational,
    t: Rational,
    u: Rational,
}

impl FamilyParams {
    pub fn new(d: usize, s: Rational, t: Rational, u: Rational) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParams(format!("d = {d}, need d >= 3")));
        }
        for (name, v) in [("s", &s), ("t", &t), ("u", &u)] {
            if !v.is_positive() {
                return Err(Error::InvalidParams(format!(
                    "{name} = {v}, need {name} > 0"
                )));
            }
        }
        Ok(FamilyParams { d, s, t, u })
    }

    /// Integer parameters; panics on invalid input.
    pub fn ints(d: usize, s: i64, t: i64, u: i64) -> Self {
        Self::new(d, s.into(), t.into(), u.into()).expect("valid family parameters")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }
}

pub fn family_sqdist(p: &FamilyParams) -> SquaredDistanceMatrix {
    let long = &p.s + &p.t + &p.u;
    let short_13 = &p.s + &p.u;
    let tail = &p.s + &p.t;
    SquaredDistanceMatrix::from_fn(p.d + 1, |i, j| match (i, j) {
        (0, 2) => short_13.clone(),
        (0, _) => long.clone(),
        _ => tail.clone(),
    })
    .expect("positive parameters give positive entries")
}

/// `Δ_d = (d+1)s² + 2d(st + su + tu)`.
pub fn delta_d(p: &FamilyParams) -> Rational {
    let d = Rational::from(p.d as i64);
    let (s, t, u) = (&p.s, &p.t, &p.u);
    (&d + Rational::one()) * s * s + Rational::from(2) * &d * (s * t + s * u + t * u)
}

pub fn family_barycentric_closed_form(p: &FamilyParams) -> Vec<Rational> {
    let d = Rational::from(p.d as i64);
    let (s, t, u) = (&p.s, &p.t, &p.u);
    let delta = delta_d(p);
    let first = (s + t) * (s + &d * u) / &delta;
    let shared = (s + Rational::from(2) * t) * (s + u) / &delta;
    let third = (s * s + s * t + s * u - (&d - Rational::from(2)) * t * u) / &delta;
    let mut lambdas = vec![shared; p.d + 1];
    lambdas[0] = first;
    lambdas[2] = third;
    lambdas
}

/// `(d - 2) t u > s (s + t + u)`.
pub fn outside_condition(p: &FamilyParams) -> bool {
    let d = Rational::from(p.d as i64);
    (d - Rational::from(2)) * &p.t * &p.u > &p.s * (&p.s + &p.t + &p.u)
}

pub fn canonical_decomposition(p: &FamilyParams) -> DeficitDecomposition {
    let n = p.d + 1;
    DeficitDecomposition {
        n,
        masses: vec![
            (VertexSet::from_indices([0, 2]), p.t.clone()),
            (VertexSet::from_indices(1..n), p.u.clone()),
        ],
        reserve: p.s.clone(),
        diameter_pair: (0, 1),
        diam_sq: &p.s + &p.t + &p.u,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyVerdict {
    /// Certified diameter-Ramsey with circumcenter outside the closed hull.
    ConjectureCounterexample,
    /// Certified diameter-Ramsey, circumcenter inside the hull.
    CriterionOnly,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub params: FamilyParams,
    pub sqdist: SquaredDistanceMatrix,
    pub closed_form_lambdas: Vec<Rational>,
    pub solver_lambdas: Vec<Rational>,
    pub two_rho_sq: Rational,
    pub delta_d: Rational,
    pub outside: bool,
    pub decomposition: DeficitDecomposition,
    pub decomposition_verified: bool,
    pub embedding_matches: bool,
    pub cf_obstructed: bool,
    pub verdict: FamilyVerdict,
}

pub fn counterexample_report(p: &FamilyParams) -> Result<FamilyReport> {
    let sqdist = family_sqdist(p);
    if !is_nondegenerate_simplex(&sqdist) {
        return Err(Error::Inconsistent("family matrix is degenerate".into()));
    }
    let closed_form_lambdas = family_barycentric_closed_form(p);
    let circ = circumcenter_barycentric(&sqdist)?;
    if let Some(i) =
        (0..closed_form_lambdas.len()).find(|&i| closed_form_lambdas[i] != circ.lambdas[i])
    {
        return Err(Error::ClosedFormMismatch(i + 1));
    }
    let outside = outside_condition(p);
    if outside == circumcenter_in_hull(&circ) {
        return Err(Error::Inconsistent(
            "outside condition disagrees with the sign of the third coordinate".into(),
        ));
    }
    let decomposition = canonical_decomposition(p);
    let profile = deficit_profile(&sqdist, (0, 1))?;
    let decomposition_verified = verify_decomposition(&profile, &decomposition);
    let embedding_matches =
        decomposition_verified && build_embedding(&decomposition).derived_sqdist == sqdist;
    let diam_sq = profile.diam_sq().clone();
    let cf_obstructed = cf_obstruction(&circ.rho_sq(), &diam_sq);
    if decomposition_verified && cf_obstructed {
        return Err(Error::Inconsistent(
            "certified simplex violates the circumradius bound".into(),
        ));
    }
    let verdict = match (decomposition_verified && embedding_matches, outside) {
        (true, true) => FamilyVerdict::ConjectureCounterexample,
        (true, false) => FamilyVerdict::CriterionOnly,
        (false, _) => FamilyVerdict::NotApplicable,
    };
    Ok(FamilyReport {
        params: p.clone(),
        sqdist,
        closed_form_lambdas,
        solver_lambdas: circ.lambdas,
        two_rho_sq: circ.two_rho_sq,
        delta_d: delta_d(p),
        outside,
        decomposition,
        decomposition_verified,
        embedding_matches,
        cf_obstructed,
        verdict,
    })
}

/// Grid points `(s, t, u)` whose report is a counterexample.
pub fn scan(d: usize, grid: &[(Rational, Rational, Rational)]) -> Result<Vec<FamilyParams>> {
    let reports: Vec<Result<Option<FamilyParams>>> = grid
        .par_iter()
        .map(|(s, t, u)| {
            let params = FamilyParams::new(d, s.clone(), t.clone(), u.clone())?;
            let report = counterexample_report(&params)?;
            Ok((report.verdict == FamilyVerdict::ConjectureCounterexample).then_some(params))
        })
        .collect();
    reports.into_iter().filter_map(Result::transpose).collect()
}

/// `{1, …, max}³` as rationals.
pub fn integer_grid(max: i64) -> Vec<(Rational, Rational, Rational)> {
    let mut grid = Vec::new();
    for s in 1..=max {
        for t in 1..=max {
            for u in 1..=max {
                grid.push((s.into(), t.into(), u.into()));
            }
        }
    }
    grid
}
