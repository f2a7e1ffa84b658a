//! JSON wire formats and report assembly.
//!
//! Rationals travel as `"p/q"` strings and vertex indices are 1-based. Output
//! objects are built through `serde_json::Value`, whose maps keep keys sorted,
//! so the emitted JSON is deterministic.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::deficits::{
    build_embedding, decompose_all_pairs, deficit_profile, pairwise_criterion,
    verify_decomposition, DeficitDecomposition, FactorKind, FactorVertex, PairResult,
    ProductEmbedding, VertexSet,
};
use crate::error::{Error, Result};
use crate::exactgeom::{
    cf_obstruction, circumcenter_barycentric, circumcenter_in_hull, diameter_sq,
    is_nondegenerate_simplex, sqdist_from_points, CircumcenterResult, SquaredDistanceMatrix,
};
use crate::family::{FamilyReport, FamilyVerdict};
use crate::ramseytoy::{pigeonhole_witness, product_config, regular_simplex_config, FiniteConfig};
use crate::rational::Rational;

/// A simplex given by rational coordinates or by its squared distances.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SimplexInput {
    Points(Vec<Vec<Rational>>),
    Sqdist(Vec<Vec<Rational>>),
}

impl SimplexInput {
    pub fn to_matrix(&self) -> Result<SquaredDistanceMatrix> {
        match self {
            SimplexInput::Points(points) => sqdist_from_points(points),
            SimplexInput::Sqdist(rows) => SquaredDistanceMatrix::new(rows.clone()),
        }
    }

    /// Parses and requires a nondegenerate simplex.
    pub fn to_simplex(&self) -> Result<SquaredDistanceMatrix> {
        let m = self.to_matrix()?;
        if !is_nondegenerate_simplex(&m) {
            return Err(Error::Degenerate);
        }
        Ok(m)
    }
}

/// Point configuration for the Ramsey checks. Besides explicit points or
/// distances it can name a regular simplex, a pigeonhole witness or a product.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ConfigInput {
    Points(Vec<Vec<Rational>>),
    Sqdist(Vec<Vec<Rational>>),
    RegularSimplex {
        k: usize,
        side_sq: Rational,
    },
    Pigeonhole {
        k: usize,
        q: usize,
        side_sq: Rational,
    },
    Product(Box<ConfigInput>, Box<ConfigInput>),
}

impl ConfigInput {
    pub fn to_config(&self) -> Result<FiniteConfig> {
        let positive = |side: &Rational| {
            if side.is_positive() {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "side_sq must be positive, got {side}"
                )))
            }
        };
        match self {
            ConfigInput::Points(points) => {
                Ok(FiniteConfig::new(sqdist_from_points(points)?, "points"))
            }
            ConfigInput::Sqdist(rows) => Ok(FiniteConfig::new(
                SquaredDistanceMatrix::new(rows.clone())?,
                "distance matrix",
            )),
            ConfigInput::RegularSimplex { k, side_sq } => {
                positive(side_sq)?;
                if *k == 0 {
                    return Err(Error::Parse("k must be at least 1".into()));
                }
                Ok(regular_simplex_config(*k, side_sq))
            }
            ConfigInput::Pigeonhole { k, q, side_sq } => {
                positive(side_sq)?;
                if *k == 0 || *q == 0 {
                    return Err(Error::Parse("k and q must be at least 1".into()));
                }
                Ok(pigeonhole_witness(*k, *q, side_sq))
            }
            ConfigInput::Product(a, b) => Ok(product_config(&a.to_config()?, &b.to_config()?)),
        }
    }
}

fn one_based(set: VertexSet) -> Vec<usize> {
    set.indices().map(|i| i + 1).collect()
}

fn pair_json(pair: (usize, usize)) -> [usize; 2] {
    [pair.0 + 1, pair.1 + 1]
}

fn matrix_json(m: &SquaredDistanceMatrix) -> Vec<Vec<Rational>> {
    m.rows()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassJson {
    #[serde(rename = "B")]
    pub subset: Vec<usize>,
    pub alpha: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub n: usize,
    pub diameter_pair: [usize; 2],
    pub diam_sq: Rational,
    pub masses: Vec<MassJson>,
    pub reserve: Rational,
}

impl From<&DeficitDecomposition> for DecompositionJson {
    fn from(d: &DeficitDecomposition) -> Self {
        DecompositionJson {
            n: d.n,
            diameter_pair: pair_json(d.diameter_pair),
            diam_sq: d.diam_sq.clone(),
            masses: d
                .masses
                .iter()
                .map(|(s, alpha)| MassJson {
                    subset: one_based(*s),
                    alpha: alpha.clone(),
                })
                .collect(),
            reserve: d.reserve.clone(),
        }
    }
}

impl DecompositionJson {
    pub fn to_decomposition(&self) -> Result<DeficitDecomposition> {
        let index = |i: usize| {
            if i == 0 || i > self.n || i > 32 {
                Err(Error::Parse(format!(
                    "vertex index {i} out of range 1..={}",
                    self.n
                )))
            } else {
                Ok(i - 1)
            }
        };
        let masses = self
            .masses
            .iter()
            .map(|m| {
                let indices = m
                    .subset
                    .iter()
                    .map(|&i| index(i))
                    .collect::<Result<Vec<_>>>()?;
                Ok((VertexSet::from_indices(indices), m.alpha.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let (a, b) = (index(self.diameter_pair[0])?, index(self.diameter_pair[1])?);
        Ok(DeficitDecomposition {
            n: self.n,
            masses,
            reserve: self.reserve.clone(),
            diameter_pair: (a.min(b), a.max(b)),
            diam_sq: self.diam_sq.clone(),
        })
    }
}

/// Checks a certificate against a simplex.
pub fn verify_certificate(m: &SquaredDistanceMatrix, cert: &DecompositionJson) -> Result<bool> {
    let d = cert.to_decomposition()?;
    if d.n != m.n() {
        return Ok(false);
    }
    let profile = match deficit_profile(m, d.diameter_pair) {
        Ok(p) => p,
        Err(Error::NotADiameterPair(..)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(verify_decomposition(&profile, &d))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    pub side_sq: Rational,
    pub vertices: Vec<String>,
}

fn vertex_label(v: FactorVertex) -> String {
    match v {
        FactorVertex::Own(i) => format!("v{}", i + 1),
        FactorVertex::Single => "o".into(),
        FactorVertex::Collapsed => "u".into(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingJson {
    pub factors: Vec<FactorJson>,
    /// `assignment[i][f]`: label of the vertex of factor `f` that `q_{i+1}` uses.
    pub assignment: Vec<Vec<String>>,
    pub derived_sqdist: Vec<Vec<Rational>>,
    pub product_diam_sq: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_relative_error: Option<f64>,
}

impl From<&ProductEmbedding> for EmbeddingJson {
    fn from(e: &ProductEmbedding) -> Self {
        let factors = e
            .factors
            .iter()
            .map(|f| FactorJson {
                kind: match f.kind {
                    FactorKind::Reserve => "reserve",
                    FactorKind::Collapse(_) => "collapse",
                },
                subset: match f.kind {
                    FactorKind::Reserve => None,
                    FactorKind::Collapse(s) => Some(one_based(s)),
                },
                side_sq: f.side_sq.clone(),
                vertices: f.vertices.iter().copied().map(vertex_label).collect(),
            })
            .collect();
        let assignment = e
            .assignment
            .iter()
            .map(|coords| {
                coords
                    .iter()
                    .zip(&e.factors)
                    .map(|(&c, f)| vertex_label(f.vertices[c]))
                    .collect()
            })
            .collect();
        EmbeddingJson {
            factors,
            assignment,
            derived_sqdist: matrix_json(&e.derived_sqdist),
            product_diam_sq: e.product_diam_sq(),
            coordinates: None,
            max_relative_error: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircumcenterJson {
    pub lambdas: Vec<Rational>,
    pub two_rho_sq: Rational,
    pub rho_sq: Rational,
}

impl From<&CircumcenterResult> for CircumcenterJson {
    fn from(c: &CircumcenterResult) -> Self {
        CircumcenterJson {
            lambdas: c.lambdas.clone(),
            two_rho_sq: c.two_rho_sq.clone(),
            rho_sq: c.rho_sq(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    DiameterRamsey,
    NotDiameterRamsey,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairwiseJson {
    pub holds: bool,
    pub sum: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairReportJson {
    pub diameter_pair: [usize; 2],
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<DecompositionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingSummary {
    /// `(side², vertex count)` per factor, reserve first.
    pub factors: Vec<(Rational, usize)>,
    pub product_diam_sq: Rational,
    pub reproduces_input: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub n: usize,
    pub diam_sq: Rational,
    pub diameter_pairs: Vec<[usize; 2]>,
    pub circumcenter: CircumcenterJson,
    pub in_hull: bool,
    pub cf_obstructed: bool,
    pub pairwise: PairwiseJson,
    pub decompositions: Vec<PairReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition_skipped: Option<String>,
    pub verdict: Verdict,
    pub reason: String,
}

/// Runs every test on a nondegenerate simplex.
pub fn check_simplex(m: &SquaredDistanceMatrix, cap: usize) -> Result<CheckReport> {
    if !is_nondegenerate_simplex(m) {
        return Err(Error::Degenerate);
    }
    let (diam_sq, pairs) = diameter_sq(m);
    let circ = circumcenter_barycentric(m)?;
    let in_hull = circumcenter_in_hull(&circ);
    let cf_obstructed = cf_obstruction(&circ.rho_sq(), &diam_sq);
    let profile = deficit_profile(m, pairs[0])?;
    let (holds, sum) = pairwise_criterion(&profile);

    let (results, skipped): (Vec<PairResult>, Option<String>) = match decompose_all_pairs(m, cap) {
        Ok(r) => (r, None),
        Err(e @ Error::TooManyVertices { .. }) => (Vec::new(), Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let decompositions: Vec<PairReportJson> = results
        .iter()
        .map(|r| {
            let embedding = r.decomposition.as_ref().map(|d| {
                let e = build_embedding(d);
                EmbeddingSummary {
                    factors: e
                        .factors
                        .iter()
                        .map(|f| (f.side_sq.clone(), f.size()))
                        .collect(),
                    product_diam_sq: e.product_diam_sq(),
                    reproduces_input: e.derived_sqdist == *m,
                }
            });
            PairReportJson {
                diameter_pair: pair_json(r.pair),
                feasible: r.decomposition.is_some(),
                certificate: r.decomposition.as_ref().map(DecompositionJson::from),
                embedding,
            }
        })
        .collect();

    let certified = decompositions
        .iter()
        .any(|d| d.feasible && d.embedding.as_ref().is_some_and(|e| e.reproduces_input));
    if certified && cf_obstructed {
        return Err(Error::Inconsistent(
            "a verified decomposition coexists with the circumradius obstruction".into(),
        ));
    }
    let (verdict, reason) = if certified {
        let how = if holds {
            "pairwise deficit criterion"
        } else {
            "higher-order deficit decomposition"
        };
        (Verdict::DiameterRamsey, how.to_string())
    } else if cf_obstructed {
        (
            Verdict::NotDiameterRamsey,
            "circumradius exceeds diameter / sqrt 2".to_string(),
        )
    } else {
        (
            Verdict::Unknown,
            "no decomposition and no circumradius obstruction".to_string(),
        )
    };
    Ok(CheckReport {
        n: m.n(),
        diam_sq,
        diameter_pairs: pairs.into_iter().map(pair_json).collect(),
        circumcenter: CircumcenterJson::from(&circ),
        in_hull,
        cf_obstructed,
        pairwise: PairwiseJson { holds, sum },
        decompositions,
        decomposition_skipped: skipped,
        verdict,
        reason,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyJson {
    pub d: usize,
    pub s: Rational,
    pub t: Rational,
    pub u: Rational,
    pub sqdist: Vec<Vec<Rational>>,
    pub closed_form_lambdas: Vec<Rational>,
    pub solver_lambdas: Vec<Rational>,
    pub lambda_3: Rational,
    pub two_rho_sq: Rational,
    pub delta_d: Rational,
    pub outside: bool,
    pub decomposition: DecompositionJson,
    pub decomposition_verified: bool,
    pub embedding_matches: bool,
    pub cf_obstructed: bool,
    pub verdict: FamilyVerdict,
}

impl From<&FamilyReport> for FamilyJson {
    fn from(r: &FamilyReport) -> Self {
        FamilyJson {
            d: r.params.d(),
            s: r.params.s().clone(),
            t: r.params.t().clone(),
            u: r.params.u().clone(),
            sqdist: matrix_json(&r.sqdist),
            closed_form_lambdas: r.closed_form_lambdas.clone(),
            solver_lambdas: r.solver_lambdas.clone(),
            lambda_3: r.solver_lambdas[2].clone(),
            two_rho_sq: r.two_rho_sq.clone(),
            delta_d: r.delta_d.clone(),
            outside: r.outside,
            decomposition: DecompositionJson::from(&r.decomposition),
            decomposition_verified: r.decomposition_verified,
            embedding_matches: r.embedding_matches,
            cf_obstructed: r.cf_obstructed,
            verdict: r.verdict,
        }
    }
}

/// Deterministic pretty JSON: keys sorted, no floats in exact fields.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string_pretty(&value).expect("values serialize")
}

fn tuple(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(Rational::to_string).collect();
    format!("({})", parts.join(", "))
}

fn masses_line(d: &DecompositionJson) -> String {
    let mut parts: Vec<String> = d
        .masses
        .iter()
        .map(|m| {
            let set: Vec<String> = m.subset.iter().map(usize::to_string).collect();
            format!("α{{{}}} = {}", set.join(","), m.alpha)
        })
        .collect();
    parts.push(format!("reserve α₀ = {}", d.reserve));
    parts.join(", ")
}

pub fn render_check(r: &CheckReport) -> String {
    let mut out = String::new();
    let pairs: Vec<String> = r
        .diameter_pairs
        .iter()
        .map(|[a, b]| format!("({a},{b})"))
        .collect();
    let _ = writeln!(
        out,
        "Simplex on {} vertices; squared diameter D² = {}, attained by {}.",
        r.n,
        r.diam_sq,
        pairs.join(", ")
    );
    let _ = writeln!(
        out,
        "Circumcenter in barycentric coordinates: {}; it lies {} the closed convex hull.",
        tuple(&r.circumcenter.lambdas),
        if r.in_hull { "inside" } else { "outside" }
    );
    let half = &r.diam_sq / Rational::from(2);
    if r.cf_obstructed {
        let _ = writeln!(
            out,
            "Squared circumradius ρ² = {} > D²/2 = {}: the circumradius obstruction applies.",
            r.circumcenter.rho_sq, half
        );
    } else {
        let _ = writeln!(
            out,
            "Squared circumradius ρ² = {} ≤ D²/2 = {}: no circumradius obstruction.",
            r.circumcenter.rho_sq, half
        );
    }
    let _ = writeln!(
        out,
        "Sum of pairwise deficits = {} {} D² = {}: the pairwise criterion {}.",
        r.pairwise.sum,
        if r.pairwise.holds { "≤" } else { ">" },
        r.diam_sq,
        if r.pairwise.holds {
            "applies"
        } else {
            "does not apply"
        }
    );
    if let Some(why) = &r.decomposition_skipped {
        let _ = writeln!(out, "Decomposition search skipped: {why}.");
    }
    for d in &r.decompositions {
        let [a, b] = d.diameter_pair;
        match (&d.certificate, &d.embedding) {
            (Some(cert), Some(e)) => {
                let factors: Vec<String> = e
                    .factors
                    .iter()
                    .map(|(side, size)| format!("{size} vertices, side² {side}"))
                    .collect();
                let _ = writeln!(
                    out,
                    "Diameter pair ({a},{b}): deficits decompose as {}.\n  Realized in a product of regular simplices [{}] of squared diameter {}.",
                    masses_line(cert),
                    factors.join("; "),
                    e.product_diam_sq
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    "Diameter pair ({a},{b}): no decomposition with total mass at most D²."
                );
            }
        }
    }
    let verdict = match r.verdict {
        Verdict::DiameterRamsey => "DIAMETER-RAMSEY",
        Verdict::NotDiameterRamsey => "NOT DIAMETER-RAMSEY",
        Verdict::Unknown => "UNKNOWN",
    };
    let _ = writeln!(out, "Verdict: {verdict} ({}).", r.reason);
    out
}

pub fn render_family(r: &FamilyJson) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "A_{}({}, {}, {}): squared diameter {}, Δ_d = {}.",
        r.d, r.s, r.t, r.u, r.decomposition.diam_sq, r.delta_d
    );
    let _ = writeln!(
        out,
        "Circumcenter (closed form = solver): {}.",
        tuple(&r.solver_lambdas)
    );
    let _ = writeln!(
        out,
        "λ₃ = {}; (d−2)tu {} s(s+t+u), so the circumcenter lies {} the hull.",
        r.lambda_3,
        if r.outside { ">" } else { "≤" },
        if r.outside { "outside" } else { "inside" }
    );
    let _ = writeln!(
        out,
        "Deficit decomposition {} ({}).",
        masses_line(&r.decomposition),
        if r.decomposition_verified {
            "verified"
        } else {
            "NOT verified"
        }
    );
    let _ = writeln!(
        out,
        "Circumradius obstruction: {}.",
        if r.cf_obstructed {
            "applies"
        } else {
            "does not apply"
        }
    );
    let verdict = match r.verdict {
        FamilyVerdict::ConjectureCounterexample => {
            "diameter-Ramsey with circumcenter outside the hull (counterexample)"
        }
        FamilyVerdict::CriterionOnly => "diameter-Ramsey, circumcenter inside the hull",
        FamilyVerdict::NotApplicable => "not certified",
    };
    let _ = writeln!(out, "Verdict: {verdict}.");
    out
}
