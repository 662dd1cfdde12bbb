//! Group-spec files and the full analysis pipeline behind the command line.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::catalog::Instance;
use crate::ffield::{Elem, Field};
use crate::gaction::{group_closure, pseudo_reflections, triangularize, GroupElement, GroupError, GroupTable};
use crate::gbasis::{ideal_equal, CiVerdict, Colength, GroebnerBasis};
use crate::hilbert::{
    ci_generators_for, hilbert_ideal_bruteforce, invariants_of_degree, polynomiality_report, BruteForceOptions, GeneratorProvenance,
    HilbertError, HilbertIdealResult, HilbertOptions, Method, Polynomiality, ScanInfo,
};
use crate::linalg::Matrix;
use crate::mpoly::{MonomialOrder, Ring};
use crate::nakajima::{beta, find_sequence, is_nakajima_classic, verify_structure, Refutation, Verification};

pub use crate::gaction::DEFAULT_CLOSURE_CAP;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("syntax: {0}")]
    Syntax(String),
    #[error("bad field: {0}")]
    BadField(String),
    #[error("bad matrix: {0}")]
    BadMatrix(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_modulus: Option<Vec<u32>>,
}

/// A field element in a spec file: a coefficient list, or an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Scalar(i64),
    Coeffs(Vec<i64>),
}

/// The on-disk JSON layout of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    /// Row-major matrices, row `i` the image of `x_i`.
    pub generators: Vec<Vec<Vec<EntrySpec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<usize>>,
}

/// A validated spec.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub field: Field,
    pub variables: Vec<String>,
    pub labels: Vec<String>,
    pub generators: Vec<GroupElement>,
    pub sequence: Option<Vec<usize>>,
}

impl GroupSpec {
    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn ring(&self) -> Ring {
        Ring::with_names(self.field.clone(), self.variables.clone()).expect("names validated on parse")
    }

    pub fn to_file(&self) -> GroupSpecFile {
        let field = &self.field;
        let entry = |e: Elem| -> EntrySpec {
            if field.is_prime_field() {
                EntrySpec::Scalar(e.0 as i64)
            } else {
                EntrySpec::Coeffs(field.coeffs(e).into_iter().map(i64::from).collect())
            }
        };
        let default_vars = (1..=self.n()).all(|i| self.variables[i - 1] == format!("x{i}"));
        GroupSpecFile {
            name: Some(self.name.clone()),
            field: FieldSpec { p: field.characteristic() as u64, ext_modulus: field.modulus().map(|m| m.to_vec()) },
            n: self.n(),
            variables: (!default_vars).then(|| self.variables.clone()),
            generators: self
                .generators
                .iter()
                .map(|g| g.matrix().to_rows().into_iter().map(|r| r.into_iter().map(entry).collect()).collect())
                .collect(),
            labels: Some(self.labels.clone()),
            sequence: self.sequence.clone(),
        }
    }
}

impl From<&Instance> for GroupSpec {
    fn from(inst: &Instance) -> GroupSpec {
        GroupSpec {
            name: inst.name.clone(),
            field: inst.field.clone(),
            variables: inst.variables.clone(),
            labels: inst.labels.clone(),
            generators: inst.generators.clone(),
            sequence: inst.sequence.clone(),
        }
    }
}

pub fn parse_spec(path: &Path) -> Result<GroupSpec, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SpecError::Io { path: path.display().to_string(), reason: e.to_string() })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    let mut spec = parse_spec_str(&text)?;
    if spec.name.is_empty() {
        spec.name = name.unwrap_or_default();
    }
    Ok(spec)
}

pub fn parse_spec_str(text: &str) -> Result<GroupSpec, SpecError> {
    let file: GroupSpecFile = serde_json::from_str(text).map_err(|e| SpecError::Syntax(e.to_string()))?;
    validate(&file)
}

pub fn validate(file: &GroupSpecFile) -> Result<GroupSpec, SpecError> {
    let field = Field::new(file.field.p, file.field.ext_modulus.as_deref())
        .map_err(|e| SpecError::BadField(format!("field: {e}")))?;
    let n = file.n;
    if n == 0 {
        return Err(SpecError::BadMatrix("n: must be positive".into()));
    }
    let variables = match &file.variables {
        Some(v) if v.len() != n => {
            return Err(SpecError::Syntax(format!("variables: {} names for n = {n}", v.len())));
        }
        Some(v) => v.clone(),
        None => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    Ring::with_names(field.clone(), variables.clone()).map_err(|e| SpecError::Syntax(format!("variables: {e}")))?;
    if file.generators.is_empty() {
        return Err(SpecError::BadMatrix("generators: empty list".into()));
    }
    let mut generators = Vec::with_capacity(file.generators.len());
    for (gi, m) in file.generators.iter().enumerate() {
        if m.len() != n {
            return Err(SpecError::BadMatrix(format!("generators[{gi}]: {} rows, expected {n}", m.len())));
        }
        let mut rows = Vec::with_capacity(n);
        for (r, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(SpecError::BadMatrix(format!("generators[{gi}][{r}]: {} entries, expected {n}", row.len())));
            }
            let mut out = Vec::with_capacity(n);
            for (c, e) in row.iter().enumerate() {
                let v = match e {
                    EntrySpec::Scalar(v) => Ok(field.from_int(*v)),
                    EntrySpec::Coeffs(cs) if cs.len() <= field.degree() => field.from_coeffs(cs),
                    EntrySpec::Coeffs(cs) => {
                        Err(crate::ffield::FieldError::Parse(format!("{} coordinates over a degree {} field", cs.len(), field.degree())))
                    }
                };
                out.push(v.map_err(|err| SpecError::BadMatrix(format!("generators[{gi}][{r}][{c}]: {err}")))?);
            }
            rows.push(out);
        }
        let g = GroupElement::from_rows(&field, rows).map_err(|e| SpecError::BadMatrix(format!("generators[{gi}]: {e}")))?;
        generators.push(g);
    }
    let labels = match &file.labels {
        Some(l) if l.len() != generators.len() => {
            return Err(SpecError::Syntax(format!("labels: {} labels for {} generators", l.len(), generators.len())));
        }
        Some(l) => l.clone(),
        None => (1..=generators.len()).map(|i| format!("g{i}")).collect(),
    };
    Ok(GroupSpec { name: file.name.clone().unwrap_or_default(), field, variables, labels, generators, sequence: file.sequence.clone() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    #[default]
    Both,
    Constructive,
    Bruteforce,
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub method: MethodChoice,
    /// Verified instead of searched for; overrides a sequence in the spec.
    pub sequence: Option<Vec<usize>>,
    pub degree_bound: Option<u32>,
    pub verify: bool,
    pub closure_cap: usize,
    pub timing: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            method: MethodChoice::Both,
            sequence: None,
            degree_bound: None,
            verify: true,
            closure_cap: DEFAULT_CLOSURE_CAP,
            timing: false,
        }
    }
}

/// Field elements as coefficient lists.
pub type MatrixJson = Vec<Vec<Vec<u32>>>;

fn matrix_json(field: &Field, m: &Matrix) -> MatrixJson {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|e| field.coeffs(e)).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReport {
    pub p: u32,
    pub degree: usize,
    pub order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_modulus: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularizationReport {
    pub already_triangular: bool,
    /// Row `i` writes the working variable `i` in the input variables.
    pub basis_change: MatrixJson,
    pub generators: Vec<MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaEntry {
    pub label: String,
    pub beta: usize,
    /// 1-based indices of the variables the generator moves.
    pub moved: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoReflectionReport {
    pub count: usize,
    pub generated_order: usize,
    pub generated_by_pseudo_reflections: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceSource {
    Option,
    Spec,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub source: SequenceSource,
    pub sequence: Vec<usize>,
    /// `|P_k|`, identity included.
    pub block_sizes: Vec<usize>,
    /// `|G_k|`.
    pub chain_orders: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StructureOutcome {
    Found(StructureReport),
    Refuted { source: SequenceSource, refutation: Refutation },
    /// No sequence works in the working basis.
    NotFound { candidates_tried: usize },
    Invalid { reason: String },
}

impl StructureOutcome {
    pub fn report(&self) -> Option<&StructureReport> {
        match self {
            StructureOutcome::Found(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub method: Method,
    pub generators: Vec<String>,
    pub degrees: Vec<u32>,
    pub colength: Colength,
    pub complete_intersection: CiVerdict,
    pub polynomiality: Polynomiality,
    /// Saturates at `u64::MAX`.
    pub degree_product: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<GeneratorProvenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanInfo>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// The input lacks the structure a stage needs.
    Refusal,
    /// An internal consistency check failed.
    Assertion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StageOutcome<T> {
    Done(T),
    Skipped { reason: String },
    Failed { kind: FailureKind, error: String },
}

impl<T> StageOutcome<T> {
    pub fn done(&self) -> Option<&T> {
        match self {
            StageOutcome::Done(t) => Some(t),
            _ => None,
        }
    }

    pub fn failure(&self) -> Option<FailureKind> {
        match self {
            StageOutcome::Failed { kind, .. } => Some(*kind),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    /// Which result the fields below come from.
    pub source: Method,
    pub degrees: Vec<u32>,
    pub colength: Colength,
    pub complete_intersection: bool,
    pub polynomiality: Polynomiality,
    /// Constructive and brute-force ideals agree; absent unless both ran.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub methods_agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub name: String,
    pub field: FieldReport,
    pub n: usize,
    pub variables: Vec<String>,
    pub labels: Vec<String>,
    pub group_order: usize,
    pub triangularization: TriangularizationReport,
    pub beta: Vec<BetaEntry>,
    pub pseudo_reflections: PseudoReflectionReport,
    pub nakajima_classic: bool,
    pub structure: StructureOutcome,
    pub bruteforce: StageOutcome<IdealReport>,
    pub constructive: StageOutcome<IdealReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
    /// Wall-clock milliseconds per stage; only filled on request, since it
    /// would break byte-identical reports.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{stage}: {message}")]
pub struct AnalysisError {
    pub stage: String,
    pub kind: FailureKind,
    pub message: String,
}

impl AnalysisError {
    fn group(stage: &str, e: GroupError) -> AnalysisError {
        AnalysisError { stage: stage.into(), kind: FailureKind::Refusal, message: e.to_string() }
    }
}

fn hilbert_failure(e: &HilbertError) -> FailureKind {
    match e {
        HilbertError::StructureInvalid(_) | HilbertError::Group(_) | HilbertError::RingMismatch => FailureKind::Refusal,
        _ => FailureKind::Assertion,
    }
}

/// The group table after the triangularizing basis change, if any.
pub struct Prepared {
    pub group: GroupTable,
    pub ring: Ring,
    pub generators: Vec<GroupElement>,
    pub triangularization: TriangularizationReport,
}

/// Closes the generators and moves to a flag basis.
pub fn prepare(spec: &GroupSpec, closure_cap: usize) -> Result<Prepared, AnalysisError> {
    let field = &spec.field;
    let input = group_closure(&spec.generators, closure_cap).map_err(|e| AnalysisError::group("closure", e))?;
    let tri = triangularize(&spec.generators).map_err(|e| AnalysisError::group("triangularize", e))?;
    let group = if tri.is_identity() {
        input
    } else {
        group_closure(&tri.generators, closure_cap).map_err(|e| AnalysisError::group("closure", e))?
    };
    let triangularization = TriangularizationReport {
        already_triangular: tri.is_identity(),
        basis_change: matrix_json(field, &tri.basis_change),
        generators: tri.generators.iter().map(|g| matrix_json(field, g.matrix())).collect(),
    };
    Ok(Prepared { group, ring: spec.ring(), generators: tri.generators, triangularization })
}

pub fn ideal_report(group: &GroupTable, result: &HilbertIdealResult) -> Result<IdealReport, HilbertError> {
    let ring = group_ring(result, group);
    let gb = GroebnerBasis::new(&ring, &result.generators, MonomialOrder::DegRevLex)?;
    let poly = polynomiality_report(group, result)?;
    Ok(IdealReport {
        method: result.method,
        generators: result.generators.iter().map(|f| f.to_string()).collect(),
        degrees: result.degrees.clone(),
        colength: gb.colength(),
        complete_intersection: poly.complete_intersection,
        polynomiality: poly.verdict,
        degree_product: u64::try_from(poly.degree_product).unwrap_or(u64::MAX),
        provenance: result.provenance.clone(),
        scan: result.scan,
        checks: result.checks.clone(),
    })
}

fn group_ring(result: &HilbertIdealResult, group: &GroupTable) -> Ring {
    result
        .generators
        .first()
        .map(|f| f.ring().clone())
        .unwrap_or_else(|| Ring::new(group.field().clone(), group.dim()).unwrap())
}

/// Runs closure, triangularization, the β table, the sequence stage, both
/// Hilbert ideal computations and the verdicts. Stage refusals after the
/// closure are recorded in the report instead of aborting.
pub fn analyze(spec: &GroupSpec, options: &AnalyzeOptions) -> Result<AnalysisReport, AnalysisError> {
    let mut timing = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timing: &mut BTreeMap<String, f64>| {
        timing.insert(name.to_string(), clock.elapsed().as_secs_f64() * 1e3);
        clock = Instant::now();
    };
    let field = &spec.field;
    let prepared = prepare(spec, options.closure_cap)?;
    let group = &prepared.group;
    let ring = &prepared.ring;
    lap("closure", &mut timing);

    let beta_table = prepared
        .generators
        .iter()
        .zip(&spec.labels)
        .map(|(g, label)| {
            Ok(BetaEntry {
                label: label.clone(),
                beta: beta(g).map_err(|e| AnalysisError { stage: "beta".into(), kind: FailureKind::Assertion, message: e.to_string() })?,
                moved: g.moved_indices().into_iter().map(|i| i + 1).collect(),
            })
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    let pr = pseudo_reflections(group);
    let nakajima_classic = is_nakajima_classic(group)
        .map_err(|e| AnalysisError { stage: "nakajima".into(), kind: FailureKind::Assertion, message: e.to_string() })?;

    let requested = options.sequence.clone().map(|s| (SequenceSource::Option, s)).or_else(|| spec.sequence.clone().map(|s| (SequenceSource::Spec, s)));
    let (structure, verified) = match requested {
        Some((source, seq)) => match verify_structure(group, &seq) {
            Ok(Verification::Valid(s)) => (StructureOutcome::Found(structure_report(source, &s)), Some(s)),
            Ok(Verification::Refuted(refutation)) => (StructureOutcome::Refuted { source, refutation }, None),
            Err(e) => (StructureOutcome::Invalid { reason: e.to_string() }, None),
        },
        None => match find_sequence(group) {
            Ok(Some(s)) => (StructureOutcome::Found(structure_report(SequenceSource::Search, &s)), Some(s)),
            Ok(None) => {
                (StructureOutcome::NotFound { candidates_tried: crate::nakajima::candidate_sequences(group.dim()).len() }, None)
            }
            Err(e) => (StructureOutcome::Invalid { reason: e.to_string() }, None),
        },
    };
    lap("structure", &mut timing);

    let mut bf_result = None;
    let bruteforce = if options.method == MethodChoice::Constructive {
        StageOutcome::Skipped { reason: "not requested".into() }
    } else {
        let opts = BruteForceOptions { degree_bound: options.degree_bound, structure_verified: verified.is_some() };
        match hilbert_ideal_bruteforce(group, ring, &opts).and_then(|r| {
            let rep = ideal_report(group, &r)?;
            bf_result = Some(r);
            Ok(rep)
        }) {
            Ok(rep) => StageOutcome::Done(rep),
            Err(e) => StageOutcome::Failed { kind: hilbert_failure(&e), error: e.to_string() },
        }
    };
    lap("bruteforce", &mut timing);

    let mut ci_result = None;
    let constructive = if options.method == MethodChoice::Bruteforce {
        StageOutcome::Skipped { reason: "not requested".into() }
    } else {
        match &verified {
            None => StageOutcome::Failed {
                kind: FailureKind::Refusal,
                error: "no verified generalised Nakajima structure".into(),
            },
            Some(s) => match ci_generators_for(group, ring, s, &HilbertOptions { verify: options.verify }).and_then(|r| {
                let rep = ideal_report(group, &r)?;
                ci_result = Some(r);
                Ok(rep)
            }) {
                Ok(rep) => StageOutcome::Done(rep),
                Err(e) => StageOutcome::Failed { kind: hilbert_failure(&e), error: e.to_string() },
            },
        }
    };
    lap("constructive", &mut timing);

    let methods_agree = match (&ci_result, &bf_result) {
        (Some(c), Some(b)) => Some(ideal_equal(&c.generators, &b.generators).map_err(|e| AnalysisError {
            stage: "cross-check".into(),
            kind: FailureKind::Assertion,
            message: e.to_string(),
        })?),
        _ => None,
    };
    let summary = constructive.done().or(bruteforce.done()).map(|r| Summary {
        source: r.method,
        degrees: r.degrees.clone(),
        colength: r.colength,
        complete_intersection: r.complete_intersection.is_complete_intersection,
        polynomiality: r.polynomiality,
        methods_agree,
    });
    lap("verdicts", &mut timing);

    Ok(AnalysisReport {
        name: spec.name.clone(),
        field: FieldReport {
            p: field.characteristic(),
            degree: field.degree(),
            order: field.order(),
            ext_modulus: field.modulus().map(|m| m.to_vec()),
        },
        n: spec.n(),
        variables: spec.variables.clone(),
        labels: spec.labels.clone(),
        group_order: group.order(),
        triangularization: prepared.triangularization,
        beta: beta_table,
        pseudo_reflections: PseudoReflectionReport {
            count: pr.reflections.len(),
            generated_order: pr.generated_order,
            generated_by_pseudo_reflections: pr.generated_by_reflections,
        },
        nakajima_classic,
        structure,
        bruteforce,
        constructive,
        summary,
        timing_ms: options.timing.then_some(timing),
    })
}

fn structure_report(source: SequenceSource, s: &crate::nakajima::NakajimaStructure) -> StructureReport {
    StructureReport { source, sequence: s.sequence.clone(), block_sizes: s.block_sizes(), chain_orders: s.chain_orders() }
}

/// Basis of the invariants of one degree, in the input variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub name: String,
    pub group_order: usize,
    pub degree: u32,
    pub dimension: usize,
    pub basis: Vec<String>,
}

pub fn invariants_report(spec: &GroupSpec, degree: u32, closure_cap: usize) -> Result<InvariantsReport, AnalysisError> {
    let group = group_closure(&spec.generators, closure_cap).map_err(|e| AnalysisError::group("closure", e))?;
    let basis = invariants_of_degree(&group, &spec.ring(), degree)
        .map_err(|e| AnalysisError { stage: "invariants".into(), kind: hilbert_failure(&e), message: e.to_string() })?
        .basis;
    Ok(InvariantsReport {
        name: spec.name.clone(),
        group_order: group.order(),
        degree,
        dimension: basis.len(),
        basis: basis.iter().map(|f| f.to_string()).collect(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

/// The machine form laid out as indented `key: value` lines.
pub fn to_text<T: Serialize>(value: &T) -> String {
    render_text(&serde_json::to_value(value).expect("reports serialize"))
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<AnalysisReport, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        to_text(self)
    }

    /// Exit status for the command line: 4 when a check failed or the
    /// methods disagree, 2 when a requested computation was refused.
    pub fn exit_code(&self, method: MethodChoice) -> i32 {
        let stages = [&self.bruteforce, &self.constructive];
        if stages.iter().any(|s| s.failure() == Some(FailureKind::Assertion))
            || self.summary.as_ref().and_then(|s| s.methods_agree) == Some(false)
        {
            return 4;
        }
        let refused = |s: &StageOutcome<IdealReport>| s.failure() == Some(FailureKind::Refusal);
        let requested_refused = match method {
            MethodChoice::Both => refused(&self.bruteforce),
            MethodChoice::Constructive => refused(&self.constructive),
            MethodChoice::Bruteforce => refused(&self.bruteforce),
        };
        if requested_refused {
            2
        } else {
            0
        }
    }
}

/// Indented rendering of a JSON value: objects as `key: value`, arrays of
/// scalars inline, other arrays as `- ` items.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(is_flat),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if is_flat(v) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(v)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_into(v, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                if is_flat(v) {
                    out.push_str(&format!("{pad}- {}\n", inline(v)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_into(v, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}
