//! JSON input parsing and report serialization.
//!
//! Input files carry a generator set and an optional target vector:
//! `{"generators": [[1, 2], [0, "1/2"]], "target": [3, 3]}`. Coordinates are
//! integers or exact rational strings; anything else is rejected.
//!
//! Emitted reports are plain data structures with every coordinate rendered
//! as a rational string in lowest terms, so identical inputs always produce
//! byte-identical output. Cones and bases re-parse to equal in-memory
//! values.

use serde::{Deserialize, Serialize};

use crate::caratheodory::{Decomposition, DecompositionTerm, MinTerms};
use crate::chain::{
    CandidateFailure, GeneratorSet, RecombinationWitness, StabilizationCertificate,
};
use crate::cone::LocalCone;
use crate::dualchain::{DualChainReport, InclusionWitness, SliceCheck};
use crate::error::{ConstraintKind, Error, Result, ViolatedConstraint};
use crate::monoid::{GordanReport, HilbertBasis};
use crate::rat::{rat_from_str, rat_to_string, Rat};
use crate::vector::FsVector;

/// One coordinate of an input vector: a JSON integer or a rational string.
#[derive(Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Rational(String),
}

impl Coord {
    fn to_rat(&self) -> Result<Rat> {
        match self {
            Coord::Int(i) => Ok(crate::rat::rat_int(*i)),
            Coord::Rational(s) => rat_from_str(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    generators: Vec<Vec<Coord>>,
    #[serde(default)]
    target: Option<Vec<Coord>>,
}

/// A parsed input file.
#[derive(Debug)]
pub struct ParsedInput {
    pub generators: GeneratorSet,
    pub target: Option<FsVector>,
}

fn dense_from_coords(coords: &[Coord]) -> Result<FsVector> {
    let values = coords.iter().map(Coord::to_rat).collect::<Result<Vec<_>>>()?;
    Ok(FsVector::from_dense(&values))
}

/// Parses the generator-set schema. Malformed JSON is reported with line and
/// column; malformed coordinates with the offending text.
pub fn parse_input(text: &str) -> Result<ParsedInput> {
    let file: InputFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.generators.is_empty() {
        return Err(Error::Parse("input needs at least one generator".into()));
    }
    let gens = file
        .generators
        .iter()
        .map(|g| dense_from_coords(g))
        .collect::<Result<Vec<_>>>()?;
    let target = file.target.as_deref().map(dense_from_coords).transpose()?;
    Ok(ParsedInput { generators: GeneratorSet::new(gens), target })
}

/// Parses a bare JSON vector, as supplied by a command-line flag.
pub fn parse_vector(text: &str) -> Result<FsVector> {
    let coords: Vec<Coord> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    dense_from_coords(&coords)
}

/// Dense string rendering of a vector at a fixed length.
pub fn vector_json(v: &FsVector, n: usize) -> Vec<String> {
    v.to_strings(n)
}

/// Rebuilds a vector from its dense string rendering.
pub fn vector_from_json(coords: &[String]) -> Result<FsVector> {
    let values = coords.iter().map(|s| rat_from_str(s)).collect::<Result<Vec<_>>>()?;
    Ok(FsVector::from_dense(&values))
}

/// Serialized cone: dense string coordinates, all four representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub dim: usize,
    pub rays: Vec<Vec<String>>,
    pub lineality: Vec<Vec<String>>,
    pub ineqs: Vec<Vec<String>>,
    pub eqs: Vec<Vec<String>>,
}

pub fn cone_json(c: &LocalCone) -> ConeJson {
    let n = c.dim();
    let render = |vs: &[FsVector]| vs.iter().map(|v| vector_json(v, n)).collect();
    ConeJson {
        dim: n,
        rays: render(c.rays()),
        lineality: render(c.lineality()),
        ineqs: render(c.ineqs()),
        eqs: render(c.eqs()),
    }
}

/// Rebuilds the cone from the serialized generators (rays and lineality).
/// The constraint half of the serialization is recomputed, which makes the
/// round trip also a consistency check.
pub fn cone_from_json(j: &ConeJson) -> Result<LocalCone> {
    let mut gens = Vec::new();
    for r in &j.rays {
        gens.push(vector_from_json(r)?);
    }
    for l in &j.lineality {
        let v = vector_from_json(l)?;
        gens.push(v.neg());
        gens.push(v);
    }
    LocalCone::from_generators(&gens, j.dim)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ViolationJson {
    pub kind: String,
    pub normal: Vec<String>,
    pub value: String,
}

pub fn violation_json(v: &ViolatedConstraint) -> ViolationJson {
    ViolationJson {
        kind: match v.kind {
            ConstraintKind::Inequality => "inequality".into(),
            ConstraintKind::Equation => "equation".into(),
        },
        normal: vector_json(&v.normal, v.normal.width()),
        value: v.value.clone(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    pub vector: Vec<String>,
}

fn terms_json(terms: &[(FsVector, Rat)], n: usize) -> Vec<TermJson> {
    terms
        .iter()
        .map(|(v, c)| TermJson { coefficient: rat_to_string(c), vector: vector_json(v, n) })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RecombinationJson {
    pub generator: Vec<String>,
    pub ambient: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FailureJson {
    pub candidate: usize,
    pub generator: Vec<String>,
    pub violated: ViolationJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilityJson {
    pub r: usize,
    pub witnesses: Vec<RecombinationJson>,
    pub failures: Vec<FailureJson>,
}

fn recombination_json(w: &RecombinationWitness) -> RecombinationJson {
    RecombinationJson {
        generator: vector_json(&w.generator, w.ambient),
        ambient: w.ambient,
        terms: terms_json(&w.terms, w.ambient),
    }
}

fn failure_json(f: &CandidateFailure) -> FailureJson {
    FailureJson {
        candidate: f.candidate,
        generator: vector_json(&f.generator, f.generator.width()),
        violated: violation_json(&f.violated),
    }
}

pub fn stability_json(cert: &StabilizationCertificate) -> StabilityJson {
    StabilityJson {
        r: cert.index,
        witnesses: cert.witnesses.iter().map(recombination_json).collect(),
        failures: cert.failures.iter().map(failure_json).collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InclusionJson {
    pub vector: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SliceJson {
    pub n: usize,
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resource_error: Option<String>,
    pub padded: Vec<Vec<String>>,
    pub minimized: Vec<Vec<String>>,
    pub redundant: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<SliceWitnessesJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SliceWitnessesJson {
    pub dual_slice_in_orbit_hull: Vec<InclusionJson>,
    pub orbit_hull_in_dual_slice: Vec<InclusionJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualChainJson {
    pub r: usize,
    #[serde(rename = "F_r")]
    pub f_r: Vec<Vec<String>>,
    pub excluded_ray: Vec<String>,
    pub degenerate: bool,
    pub verified: Option<bool>,
    pub slices: Vec<SliceJson>,
    pub certificate: StabilityJson,
}

fn inclusion_json(w: &InclusionWitness, n: usize) -> InclusionJson {
    InclusionJson { vector: vector_json(&w.vector, n), terms: terms_json(&w.terms, n) }
}

fn slice_json(s: &SliceCheck) -> SliceJson {
    let n = s.n;
    let render = |vs: &[FsVector]| vs.iter().map(|v| vector_json(v, n)).collect();
    let witnesses = match (&s.forward, &s.backward) {
        (Some(f), Some(b)) => Some(SliceWitnessesJson {
            dual_slice_in_orbit_hull: f.iter().map(|w| inclusion_json(w, n)).collect(),
            orbit_hull_in_dual_slice: b.iter().map(|w| inclusion_json(w, n)).collect(),
        }),
        _ => None,
    };
    SliceJson {
        n,
        verified: s.holds,
        resource_error: s.resource_error.clone(),
        padded: render(&s.padded),
        minimized: render(&s.minimized),
        redundant: render(&s.redundant),
        witnesses,
    }
}

pub fn dual_chain_json(report: &DualChainReport) -> DualChainJson {
    let r = report.basis.index;
    DualChainJson {
        r,
        f_r: report.basis.basis.iter().map(|v| vector_json(v, r)).collect(),
        excluded_ray: vector_json(&report.basis.excluded, r),
        degenerate: report.basis.degenerate,
        verified: report.verified,
        slices: report.slices.iter().map(slice_json).collect(),
        certificate: stability_json(&report.certificate),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionTermJson {
    pub lambda: String,
    pub base_index: usize,
    pub generator: Vec<String>,
    pub image: Vec<String>,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub target: Vec<String>,
    pub ambient: usize,
    pub support_size: usize,
    pub terms: Vec<DecompositionTermJson>,
}

fn decomposition_term_json(t: &DecompositionTerm, ambient: usize) -> DecompositionTermJson {
    DecompositionTermJson {
        lambda: rat_to_string(&t.coefficient),
        base_index: t.base_index,
        generator: vector_json(&t.generator, ambient),
        image: vector_json(&t.image, ambient),
        perm: t.permutation.images().to_vec(),
    }
}

pub fn decomposition_json(d: &Decomposition) -> DecompositionJson {
    DecompositionJson {
        target: vector_json(&d.target, d.ambient),
        ambient: d.ambient,
        support_size: d.support_size,
        terms: d.terms.iter().map(|t| decomposition_term_json(t, d.ambient)).collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinTermsJson {
    pub target: Vec<String>,
    pub ambient: usize,
    pub minimum: usize,
    pub witness: Vec<DecompositionTermJson>,
    pub lp_calls: u64,
}

pub fn min_terms_json(m: &MinTerms) -> MinTermsJson {
    MinTermsJson {
        target: vector_json(&m.target, m.ambient),
        ambient: m.ambient,
        minimum: m.minimum,
        witness: m
            .witness
            .iter()
            .map(|t| {
                let degree = t.permutation.degree();
                decomposition_term_json(t, degree.max(m.ambient))
            })
            .collect(),
        lp_calls: m.lp_calls,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertJson {
    pub dim: usize,
    pub elements: Vec<Vec<String>>,
    pub max_norm: u64,
    pub cone: ConeJson,
}

pub fn hilbert_json(hb: &HilbertBasis) -> HilbertJson {
    HilbertJson {
        dim: hb.dim,
        elements: hb.elements.iter().map(|e| vector_json(e, hb.dim)).collect(),
        max_norm: hb.max_norm,
        cone: cone_json(&hb.cone),
    }
}

/// Rebuilds a Hilbert basis value from its serialization.
pub fn hilbert_from_json(j: &HilbertJson) -> Result<HilbertBasis> {
    let elements = j
        .elements
        .iter()
        .map(|e| vector_from_json(e))
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertBasis {
        dim: j.dim,
        elements,
        max_norm: j.max_norm,
        cone: cone_from_json(&j.cone)?,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GordanJson {
    pub r_cone: usize,
    pub r_hilbert: Option<usize>,
    pub support_bound: usize,
    pub norms: Vec<u64>,
    pub verdict: bool,
    pub window: usize,
    pub merge_ok: bool,
    pub merge_failures: Vec<Vec<String>>,
    pub bases: Vec<HilbertJson>,
}

pub fn gordan_json(g: &GordanReport) -> GordanJson {
    GordanJson {
        r_cone: g.r_cone,
        r_hilbert: g.r_hilbert,
        support_bound: g.support_bound,
        norms: g.norms.clone(),
        verdict: g.verdict,
        window: g.window,
        merge_ok: g.merge_ok,
        merge_failures: g
            .merge_failures
            .iter()
            .map(|v| vector_json(v, v.width()))
            .collect(),
        bases: g.bases.iter().map(hilbert_json).collect(),
    }
}
