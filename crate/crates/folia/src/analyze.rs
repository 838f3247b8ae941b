//! Full analysis of a parsed algebra file, report rendering, and the corpus
//! runner.
//!
//! [`analyze`] composes the whole pipeline: Jacobi validation,
//! classification, ambient curvature, the foliation report when a vertical
//! subalgebra is declared, quotient geometry where it applies, and the
//! comparison against the expectations embedded in the file. Output is a
//! pure function of the file content.

use crate::curvature::{
    curvature_summary, quotient_metric_algebra, CurvatureError, CurvatureReport,
};
use crate::foliation::{
    make_split, Biinvariance, FoliationReport, HmEvidence, MetricSplit, SplitError, TheoremRow,
};
use crate::format::{format_linear_comb, AlgebraFile, ExpectValue, MetricSpec, ParseError};
use crate::lie::{ClassificationFlags, JacobiViolation, LieAlgebra, LieError};
use crate::linalg::{
    basis_vec, form_pair, orthogonalize_vectors, rint, LinalgError, Mat, Rat, Subspace,
};
use num::Zero;
use serde_json::{json, Value};
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use thiserror::Error;

/// Jacobi violations together with the labels needed to print them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub violations: Vec<JacobiViolation>,
    pub labels: Vec<String>,
}

impl fmt::Display for JacobiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} Jacobi violation(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(
                f,
                "  ({}, {}, {}): residual {}",
                self.labels[v.i],
                self.labels[v.j],
                self.labels[v.l],
                format_linear_comb(&v.residual, &self.labels)
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error("not a Lie algebra: {0}")]
    InvalidAlgebra(JacobiReport),
    #[error("the metric is not symmetric positive definite")]
    NotPositiveDefinite,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Foliation section of an analysis.
#[derive(Debug, Clone)]
pub struct FoliationAnalysis {
    pub split: MetricSplit,
    pub report: FoliationReport,
    pub biinvariance: Biinvariance,
    pub killing_diagonal: bool,
    pub killing_diagonal_entries: Vec<Rat>,
    pub theorems: Vec<TheoremRow>,
    pub trace_identity: bool,
}

/// Quotient section of an analysis.
///
/// `projected` is false when the vertical subalgebra is an ideal, in which
/// case this is the quotient Lie algebra with the metric inherited on the
/// horizontal complement. When the vertical subalgebra is not an ideal but
/// the foliation is Riemannian, the horizontal projection of the brackets
/// can still close into a Lie algebra; that structure is reported with
/// `projected = true`.
#[derive(Debug, Clone)]
pub struct QuotientAnalysis {
    pub projected: bool,
    pub algebra: LieAlgebra,
    pub weights: Vec<Rat>,
    pub curvature: CurvatureReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectationResult {
    pub key: String,
    pub expected: ExpectValue,
    pub actual: Option<ExpectValue>,
    pub ok: bool,
}

/// Everything the analyzer computes for one file.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub file: AlgebraFile,
    pub algebra: LieAlgebra,
    pub flags: ClassificationFlags,
    pub radical: Subspace,
    pub killing_signature: (usize, usize, usize),
    /// Curvature of the ambient metric algebra, in an orthogonal
    /// presentation of the declared metric.
    pub ambient_curvature: CurvatureReport,
    /// Labels and weights of that orthogonal presentation.
    pub ambient_labels: Vec<String>,
    pub foliation: Option<FoliationAnalysis>,
    pub quotient: Option<QuotientAnalysis>,
    pub expectation_results: Vec<ExpectationResult>,
}

/// Rewrites the metric algebra on a gram-orthogonal basis so curvature can
/// run on diagonal weights. Diagonal metrics pass through unchanged.
fn diagonal_presentation(
    algebra: &LieAlgebra,
    gram: &Mat,
) -> Result<(LieAlgebra, Vec<Rat>, Vec<String>), AnalyzeError> {
    let m = algebra.dim();
    let diagonal = (0..m).all(|i| (0..m).all(|j| i == j || gram.at(i, j).is_zero()));
    if diagonal {
        let weights = (0..m).map(|i| gram.at(i, i).clone()).collect();
        return Ok((algebra.clone(), weights, algebra.labels().to_vec()));
    }
    let standard: Vec<Vec<Rat>> = (0..m).map(|i| basis_vec(m, i)).collect();
    let basis = orthogonalize_vectors(&standard, gram)?;
    let labels: Vec<String> = basis
        .iter()
        .enumerate()
        .map(|(pos, v)| {
            let nonzero: Vec<usize> = v
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, _)| i)
                .collect();
            match nonzero.as_slice() {
                [i] if v[*i] == rint(1) => algebra.label(*i).to_string(),
                _ => format!("E{}", pos + 1),
            }
        })
        .collect();
    let weights = basis.iter().map(|b| form_pair(gram, b, b)).collect();
    let presented = algebra.restricted_to_basis(&basis, labels.clone())?;
    Ok((presented, weights, labels))
}

/// Runs the whole pipeline on a parsed file.
pub fn analyze(file: &AlgebraFile) -> Result<Analysis, AnalyzeError> {
    let algebra = file.algebra()?;
    let violations = algebra.validate_jacobi();
    if !violations.is_empty() {
        return Err(AnalyzeError::InvalidAlgebra(JacobiReport {
            violations,
            labels: file.labels.clone(),
        }));
    }
    let flags = algebra.classify()?;
    let radical = algebra.radical();
    let killing_signature = algebra.killing_form().signature()?;
    let gram = file.gram_matrix();
    if !gram.is_positive_definite() {
        return Err(AnalyzeError::NotPositiveDefinite);
    }
    let (presented, weights, ambient_labels) = diagonal_presentation(&algebra, &gram)?;
    let ambient_curvature = curvature_summary(&presented, &weights)?;

    let foliation = match file.vertical_subspace() {
        None => None,
        Some(vertical) => {
            let split = make_split(algebra.clone(), gram.clone(), vertical)?;
            let report = split.report();
            let biinvariance = split.biinvariant_restriction();
            let (killing_diagonal, killing_diagonal_entries) = split.killing_diagonal();
            let theorems = split.verify_theorems();
            let trace_identity = split.trace_identity_check();
            Some(FoliationAnalysis {
                split,
                report,
                biinvariance,
                killing_diagonal,
                killing_diagonal_entries,
                theorems,
                trace_identity,
            })
        }
    };

    let quotient = match &foliation {
        Some(f) if f.report.riemannian => {
            if f.report.normal {
                let (algebra, weights) = quotient_metric_algebra(&f.split)?;
                let curvature = curvature_summary(&algebra, &weights)?;
                Some(QuotientAnalysis {
                    projected: false,
                    algebra,
                    weights,
                    curvature,
                })
            } else {
                // Not an ideal: report the projected horizontal structure
                // when it happens to close into a Lie algebra.
                match f.split.horizontal_projection_algebra() {
                    Ok(algebra) => {
                        let weights = f.split.horizontal_weights().to_vec();
                        let curvature = curvature_summary(&algebra, &weights)?;
                        Some(QuotientAnalysis {
                            projected: true,
                            algebra,
                            weights,
                            curvature,
                        })
                    }
                    Err(_) => None,
                }
            }
        }
        _ => None,
    };

    let mut analysis = Analysis {
        file: file.clone(),
        algebra,
        flags,
        radical,
        killing_signature,
        ambient_curvature,
        ambient_labels,
        foliation,
        quotient,
        expectation_results: Vec::new(),
    };
    analysis.expectation_results = file
        .expectations
        .iter()
        .map(|(key, expected)| {
            let actual = analysis.expectation_actual(key);
            let ok = actual.as_ref() == Some(expected);
            ExpectationResult {
                key: key.clone(),
                expected: expected.clone(),
                actual,
                ok,
            }
        })
        .collect();
    Ok(analysis)
}

impl Analysis {
    /// The computed value behind an expectation key, when applicable.
    pub fn expectation_actual(&self, key: &str) -> Option<ExpectValue> {
        use ExpectValue::{Bool, Num};
        let report = self.foliation.as_ref().map(|f| &f.report);
        match key {
            "abelian" => Some(Bool(self.flags.is_abelian)),
            "nilpotent" => Some(Bool(self.flags.is_nilpotent)),
            "solvable" => Some(Bool(self.flags.is_solvable)),
            "semisimple" => Some(Bool(self.flags.is_semisimple)),
            "perfect" => Some(Bool(self.flags.is_perfect)),
            "radical_dim" => Some(Num(rint(self.flags.radical_dim as i64))),
            "flat" => Some(Bool(self.ambient_curvature.flat)),
            "constant_curvature" => self.ambient_curvature.constant_curvature.clone().map(Num),
            "conformal" => report.map(|r| Bool(r.conformal)),
            "riemannian" => report.map(|r| Bool(r.riemannian)),
            "minimal" => report.map(|r| Bool(r.minimal)),
            "totally_geodesic" => report.map(|r| Bool(r.totally_geodesic)),
            "normal" => report.map(|r| Bool(r.normal)),
            "horizontally_integrable" => report.map(|r| Bool(r.horizontally_integrable)),
            "produces_harmonic_morphisms" => report.map(|r| Bool(r.produces_harmonic_morphisms)),
            "biinvariant_restriction" => self
                .foliation
                .as_ref()
                .map(|f| Bool(f.biinvariance.biinvariant)),
            "killing_diagonal" => self.foliation.as_ref().map(|f| Bool(f.killing_diagonal)),
            "quotient_flat" => self.quotient.as_ref().map(|q| Bool(q.curvature.flat)),
            "quotient_constant_curvature" => self
                .quotient
                .as_ref()
                .and_then(|q| q.curvature.constant_curvature.clone().map(Num)),
            _ => None,
        }
    }

    pub fn expectations_ok(&self) -> bool {
        self.expectation_results.iter().all(|r| r.ok)
    }

    /// Claims with `applicable && !holds` on the declared split.
    pub fn theorem_counterexamples(&self) -> Vec<&'static str> {
        self.foliation
            .as_ref()
            .map(|f| {
                f.theorems
                    .iter()
                    .filter(|row| row.applicable && !row.holds)
                    .map(|row| row.claim)
                    .collect()
            })
            .unwrap_or_default()
    }

    fn labels(&self) -> &[String] {
        &self.file.labels
    }

    fn comb(&self, v: &[Rat]) -> String {
        format_linear_comb(v, self.labels())
    }

    /// Plain-text report. Deterministic for identical input.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let file = &self.file;
        out.push_str(&format!("algebra: {}\n", file.name));
        out.push_str(&format!("dim: {}\n", file.dim()));
        out.push_str(&format!("basis: {}\n", file.labels.join(" ")));
        for a in &file.annotations {
            out.push_str(&format!("annotation: {a}\n"));
        }
        out.push_str("jacobi: ok\n");
        let f = &self.flags;
        out.push_str(&format!(
            "classification: abelian={} nilpotent={} solvable={} semisimple={} perfect={}\n",
            f.is_abelian, f.is_nilpotent, f.is_solvable, f.is_semisimple, f.is_perfect
        ));
        out.push_str(&format!("radical: dim {}\n", f.radical_dim));
        for row in self.radical.basis_rows() {
            out.push_str(&format!("  radical basis: {}\n", self.comb(row)));
        }
        let (p, n, z) = self.killing_signature;
        out.push_str(&format!("killing signature: ({p}, {n}, {z})\n"));
        out.push_str(&self.render_curvature_text());
        if let Some(fol) = &self.foliation {
            let s = &fol.split;
            let r = &fol.report;
            out.push_str(&format!(
                "foliation: vertical = {} | horizontal = {}\n",
                s.vertical_labels().join(" "),
                s.horizontal_labels().join(" ")
            ));
            let dilation: Vec<String> = s
                .vertical_labels()
                .iter()
                .zip(&r.dilation)
                .map(|(l, v)| format!("{l}={v}"))
                .collect();
            out.push_str(&format!(
                "  conformal = {} (dilation: {})\n",
                r.conformal,
                dilation.join(" ")
            ));
            if let Some(v) = &r.conformal_vector {
                out.push_str(&format!("  conformal vector = {}\n", self.comb(v)));
            }
            out.push_str(&format!("  riemannian = {}\n", r.riemannian));
            out.push_str(&format!(
                "  minimal = {} (mean curvature = {})\n",
                r.minimal,
                self.comb(&r.mean_curvature)
            ));
            out.push_str(&format!("  totally_geodesic = {}\n", r.totally_geodesic));
            out.push_str(&format!("  normal = {}\n", r.normal));
            out.push_str(&format!(
                "  horizontally_integrable = {}\n",
                r.horizontally_integrable
            ));
            out.push_str(&format!(
                "  produces_harmonic_morphisms = {} ({})\n",
                r.produces_harmonic_morphisms,
                evidence_name(r.harmonic_morphism_evidence)
            ));
            out.push_str(&format!(
                "  biinvariant_restriction = {}{}\n",
                fol.biinvariance.biinvariant,
                match &fol.biinvariance.scalars {
                    Some(ls) => format!(
                        " (scalars: {})",
                        ls.iter()
                            .map(|l| l.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    None => String::new(),
                }
            ));
            out.push_str(&format!(
                "  killing_diagonal = {} (entries: {})\n",
                fol.killing_diagonal,
                fol.killing_diagonal_entries
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            out.push_str(&format!("  trace_identity = {}\n", fol.trace_identity));
            for w in self.witness_lines() {
                out.push_str(&format!("  witness {w}\n"));
            }
            out.push_str("theorems:\n");
            for row in &fol.theorems {
                out.push_str(&format!(
                    "  {}: applicable={} holds={}\n",
                    row.claim, row.applicable, row.holds
                ));
            }
        }
        if let Some(q) = &self.quotient {
            out.push_str(&format!(
                "quotient ({}): dim {} flat={} constant={}\n",
                if q.projected { "projected" } else { "ideal" },
                q.algebra.dim(),
                q.curvature.flat,
                match &q.curvature.constant_curvature {
                    Some(k) => k.to_string(),
                    None => "none".to_string(),
                }
            ));
            for (i, j, comb) in quotient_brackets(&q.algebra) {
                out.push_str(&format!(
                    "  [{},{}] = {}\n",
                    q.algebra.label(i),
                    q.algebra.label(j),
                    comb
                ));
            }
        }
        if !self.expectation_results.is_empty() {
            let mismatches: Vec<&ExpectationResult> =
                self.expectation_results.iter().filter(|r| !r.ok).collect();
            out.push_str(&format!(
                "expectations: {} checked, {} mismatch(es)\n",
                self.expectation_results.len(),
                mismatches.len()
            ));
            for r in mismatches {
                out.push_str(&format!(
                    "  expect {} = {}, computed {}\n",
                    r.key,
                    r.expected,
                    r.actual
                        .as_ref()
                        .map(|a| a.to_string())
                        .unwrap_or_else(|| "nothing".to_string())
                ));
            }
        }
        out
    }

    /// The ambient-curvature section of the text report.
    pub fn render_curvature_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "curvature: flat={} constant={}\n",
            self.ambient_curvature.flat,
            match &self.ambient_curvature.constant_curvature {
                Some(k) => k.to_string(),
                None => "none".to_string(),
            }
        ));
        for ((i, j), k) in &self.ambient_curvature.sectional {
            out.push_str(&format!(
                "  K({}, {}) = {}\n",
                self.ambient_labels[*i], self.ambient_labels[*j], k
            ));
        }
        out
    }

    fn witness_lines(&self) -> Vec<String> {
        let Some(fol) = &self.foliation else {
            return Vec::new();
        };
        let s = &fol.split;
        let w = &fol.report.witnesses;
        let h = |i: usize| s.horizontal_labels()[i].clone();
        let v = |a: usize| s.vertical_labels()[a].clone();
        let mut lines = Vec::new();
        if let Some((i, j)) = w.conformal {
            lines.push(format!("conformal: ({}, {})", h(i), h(j)));
        }
        if let Some((i, j)) = w.riemannian {
            lines.push(format!("riemannian: ({}, {})", h(i), h(j)));
        }
        if let Some(i) = w.minimal {
            lines.push(format!("minimal: {}", h(i)));
        }
        if let Some((i, a, b)) = w.totally_geodesic {
            lines.push(format!("totally_geodesic: ({}, {}, {})", h(i), v(a), v(b)));
        }
        if let Some((i, a, k)) = w.normal {
            lines.push(format!("normal: ({}, {}, {})", h(i), v(a), h(k)));
        }
        if let Some((i, j, g)) = w.horizontally_integrable {
            lines.push(format!(
                "horizontally_integrable: ({}, {}, {})",
                h(i),
                h(j),
                v(g)
            ));
        }
        lines
    }

    /// Structured report: a JSON tree with sorted keys, rationals rendered
    /// as strings. One canonical serialization per input.
    pub fn structured(&self) -> Value {
        let file = &self.file;
        let params: serde_json::Map<String, Value> = file
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
            .collect();
        let sectional: serde_json::Map<String, Value> = self
            .ambient_curvature
            .sectional
            .iter()
            .map(|((i, j), k)| {
                (
                    format!("{}^{}", self.ambient_labels[*i], self.ambient_labels[*j]),
                    Value::String(k.to_string()),
                )
            })
            .collect();
        let foliation = self.foliation.as_ref().map(|fol| {
            let s = &fol.split;
            let r = &fol.report;
            let dilation: serde_json::Map<String, Value> = s
                .vertical_labels()
                .iter()
                .zip(&r.dilation)
                .map(|(l, v)| (l.clone(), Value::String(v.to_string())))
                .collect();
            json!({
                "vertical_labels": s.vertical_labels(),
                "horizontal_labels": s.horizontal_labels(),
                "conformal": r.conformal,
                "dilation": dilation,
                "conformal_vector": r.conformal_vector.as_ref().map(|v| self.comb(v)),
                "riemannian": r.riemannian,
                "mean_curvature": self.comb(&r.mean_curvature),
                "minimal": r.minimal,
                "totally_geodesic": r.totally_geodesic,
                "normal": r.normal,
                "horizontally_integrable": r.horizontally_integrable,
                "produces_harmonic_morphisms": r.produces_harmonic_morphisms,
                "harmonic_morphism_evidence": evidence_name(r.harmonic_morphism_evidence),
                "biinvariant_restriction": fol.biinvariance.biinvariant,
                "biinvariant_scalars": fol.biinvariance.scalars.as_ref().map(|ls| {
                    ls.iter().map(|l| l.to_string()).collect::<Vec<_>>()
                }),
                "killing_diagonal": fol.killing_diagonal,
                "killing_diagonal_entries": fol
                    .killing_diagonal_entries
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>(),
                "trace_identity": fol.trace_identity,
                "witnesses": self.witness_lines(),
                "theorems": fol.theorems.iter().map(|row| json!({
                    "claim": row.claim,
                    "applicable": row.applicable,
                    "holds": row.holds,
                })).collect::<Vec<_>>(),
            })
        });
        let quotient = self.quotient.as_ref().map(|q| {
            let brackets: Vec<String> = quotient_brackets(&q.algebra)
                .into_iter()
                .map(|(i, j, comb)| {
                    format!("[{},{}] = {}", q.algebra.label(i), q.algebra.label(j), comb)
                })
                .collect();
            json!({
                "projected": q.projected,
                "dim": q.algebra.dim(),
                "labels": q.algebra.labels(),
                "weights": q.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "brackets": brackets,
                "flat": q.curvature.flat,
                "constant_curvature": q.curvature.constant_curvature.as_ref().map(|k| k.to_string()),
            })
        });
        json!({
            "algebra": {
                "name": file.name,
                "dim": file.dim(),
                "labels": file.labels,
                "params": params,
                "annotations": file.annotations,
            },
            "jacobi": { "valid": true },
            "classification": {
                "abelian": self.flags.is_abelian,
                "nilpotent": self.flags.is_nilpotent,
                "solvable": self.flags.is_solvable,
                "semisimple": self.flags.is_semisimple,
                "perfect": self.flags.is_perfect,
                "radical_dim": self.flags.radical_dim,
                "radical_basis": self
                    .radical
                    .basis_rows()
                    .iter()
                    .map(|r| self.comb(r))
                    .collect::<Vec<_>>(),
                "killing_signature": {
                    "positive": self.killing_signature.0,
                    "negative": self.killing_signature.1,
                    "zero": self.killing_signature.2,
                },
            },
            "curvature": {
                "flat": self.ambient_curvature.flat,
                "constant_curvature": self
                    .ambient_curvature
                    .constant_curvature
                    .as_ref()
                    .map(|k| k.to_string()),
                "sectional": sectional,
            },
            "foliation": foliation,
            "quotient": quotient,
            "expectations": self.expectation_results.iter().map(|r| json!({
                "key": r.key,
                "expected": r.expected.to_string(),
                "actual": r.actual.as_ref().map(|a| a.to_string()),
                "ok": r.ok,
            })).collect::<Vec<_>>(),
        })
    }

    /// The quotient re-serialized in the algebra file format. Requires the
    /// vertical subalgebra to be an ideal and the foliation Riemannian.
    pub fn quotient_file(&self) -> Result<AlgebraFile, CurvatureError> {
        let fol = self.foliation.as_ref().ok_or(CurvatureError::NotAnIdeal)?;
        let (algebra, weights) = quotient_metric_algebra(&fol.split)?;
        let orthonormal = weights.iter().all(|w| w == &rint(1));
        let metric = if orthonormal {
            MetricSpec::Orthonormal
        } else {
            MetricSpec::Gram(Mat::diagonal(&weights).rows().to_vec())
        };
        let brackets = quotient_bracket_entries(&algebra);
        Ok(AlgebraFile {
            name: format!("{}-quotient", self.file.name),
            labels: algebra.labels().to_vec(),
            params: Default::default(),
            brackets,
            metric,
            vertical: None,
            expectations: Default::default(),
            annotations: Vec::new(),
        })
    }
}

fn evidence_name(e: HmEvidence) -> &'static str {
    match e {
        HmEvidence::MinimalLeaves => "minimal-leaves",
        HmEvidence::ClosednessOnly => "closedness-only",
        HmEvidence::NotConformal => "not-conformal",
    }
}

fn quotient_bracket_entries(algebra: &LieAlgebra) -> Vec<crate::format::BracketEntry> {
    let mut out = Vec::new();
    for i in 0..algebra.dim() {
        for j in i + 1..algebra.dim() {
            let value = algebra.bracket_basis(i, j).to_vec();
            if !crate::linalg::vec_is_zero(&value) {
                out.push(crate::format::BracketEntry {
                    left: i,
                    right: j,
                    value,
                });
            }
        }
    }
    out
}

fn quotient_brackets(algebra: &LieAlgebra) -> Vec<(usize, usize, String)> {
    quotient_bracket_entries(algebra)
        .into_iter()
        .map(|b| {
            (
                b.left,
                b.right,
                format_linear_comb(&b.value, algebra.labels()),
            )
        })
        .collect()
}

/// Outcome of one corpus entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryOutcome {
    ParseFailed(String),
    InvalidInput(String),
    Analyzed {
        mismatches: Vec<String>,
        counterexamples: Vec<&'static str>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub file_name: String,
    pub algebra_name: String,
    pub non_blocking: bool,
    pub outcome: EntryOutcome,
}

impl CorpusEntry {
    pub fn ok(&self) -> bool {
        matches!(
            &self.outcome,
            EntryOutcome::Analyzed { mismatches, counterexamples }
                if mismatches.is_empty() && counterexamples.is_empty()
        )
    }
}

/// Aggregated result of a corpus run. `pass` ignores entries annotated as
/// non-blocking; `invalid_input` is true when a blocking entry failed to
/// parse or validate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusResult {
    pub entries: Vec<CorpusEntry>,
    pub pass: bool,
    pub invalid_input: bool,
}

impl CorpusResult {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if self.entries.is_empty() {
            out.push_str("warning: no .alg files found\n");
        }
        for e in &self.entries {
            let tag = if e.non_blocking {
                " [non-blocking]"
            } else {
                ""
            };
            match &e.outcome {
                EntryOutcome::ParseFailed(msg) => {
                    out.push_str(&format!("{}: PARSE ERROR{} {}\n", e.file_name, tag, msg));
                }
                EntryOutcome::InvalidInput(msg) => {
                    out.push_str(&format!("{}: INVALID{} {}\n", e.file_name, tag, msg));
                }
                EntryOutcome::Analyzed {
                    mismatches,
                    counterexamples,
                } if mismatches.is_empty() && counterexamples.is_empty() => {
                    out.push_str(&format!("{}: ok{}\n", e.file_name, tag));
                }
                EntryOutcome::Analyzed {
                    mismatches,
                    counterexamples,
                } => {
                    out.push_str(&format!("{}: FAIL{}\n", e.file_name, tag));
                    for m in mismatches {
                        out.push_str(&format!("  {m}\n"));
                    }
                    for c in counterexamples {
                        out.push_str(&format!("  counterexample: {c}\n"));
                    }
                }
            }
        }
        out.push_str(&format!(
            "corpus: {} entries, {}\n",
            self.entries.len(),
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn run_entry(path: &Path) -> CorpusEntry {
    let file_name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return CorpusEntry {
                file_name,
                algebra_name: String::new(),
                non_blocking: false,
                outcome: EntryOutcome::ParseFailed(e.to_string()),
            }
        }
    };
    let parsed = match crate::format::parse_algebra(&text) {
        Ok(p) => p,
        Err(e) => {
            return CorpusEntry {
                file_name,
                algebra_name: String::new(),
                non_blocking: false,
                outcome: EntryOutcome::ParseFailed(e.to_string()),
            }
        }
    };
    let non_blocking = parsed.is_non_blocking();
    let algebra_name = parsed.name.clone();
    match analyze(&parsed) {
        Err(e) => CorpusEntry {
            file_name,
            algebra_name,
            non_blocking,
            outcome: EntryOutcome::InvalidInput(e.to_string()),
        },
        Ok(analysis) => {
            let mismatches = analysis
                .expectation_results
                .iter()
                .filter(|r| !r.ok)
                .map(|r| {
                    format!(
                        "expect {} = {}, computed {}",
                        r.key,
                        r.expected,
                        r.actual
                            .as_ref()
                            .map(|a| a.to_string())
                            .unwrap_or_else(|| "nothing".to_string())
                    )
                })
                .collect();
            CorpusEntry {
                file_name,
                algebra_name,
                non_blocking,
                outcome: EntryOutcome::Analyzed {
                    mismatches,
                    counterexamples: analysis.theorem_counterexamples(),
                },
            }
        }
    }
}

/// Analyzes every `.alg` file in `dir` (non-recursive), compares
/// expectations and runs the theorem harness. Entries are processed with up
/// to `jobs` worker threads; output order is by file name regardless of
/// scheduling.
pub fn run_corpus(dir: &Path, jobs: usize) -> std::io::Result<CorpusResult> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "alg"))
        .collect();
    paths.sort();
    let jobs = jobs.max(1).min(paths.len().max(1));
    let results: Vec<CorpusEntry> = if jobs == 1 {
        paths.iter().map(|p| run_entry(p)).collect()
    } else {
        let slots: Mutex<Vec<Option<CorpusEntry>>> = Mutex::new(vec![None; paths.len()]);
        let next = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= paths.len() {
                        break;
                    }
                    let entry = run_entry(&paths[i]);
                    slots.lock().expect("poisoned")[i] = Some(entry);
                });
            }
        });
        slots
            .into_inner()
            .expect("poisoned")
            .into_iter()
            .map(|e| e.expect("every slot filled"))
            .collect()
    };
    let pass = results.iter().all(|e| e.non_blocking || e.ok());
    let invalid_input = results.iter().any(|e| {
        !e.non_blocking
            && matches!(
                e.outcome,
                EntryOutcome::ParseFailed(_) | EntryOutcome::InvalidInput(_)
            )
    });
    Ok(CorpusResult {
        entries: results,
        pass,
        invalid_input,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_algebra;

    const SU2_SPLIT: &str = "\
algebra \"su2-line\"
dim 4
basis A B C W
metric orthonormal
vertical A B C
bracket [A,B] = 2C
bracket [C,A] = 2B
bracket [B,C] = 2A
expect semisimple = false
expect radical_dim = 1
expect riemannian = true
expect totally_geodesic = true
expect normal = true
expect quotient_flat = true
";

    #[test]
    fn analyze_runs_the_full_pipeline() {
        let file = parse_algebra(SU2_SPLIT).unwrap();
        let analysis = analyze(&file).unwrap();
        assert!(!analysis.flags.is_semisimple);
        assert_eq!(analysis.flags.radical_dim, 1);
        let fol = analysis.foliation.as_ref().unwrap();
        assert!(fol.report.riemannian && fol.report.totally_geodesic);
        assert!(fol.trace_identity);
        let q = analysis.quotient.as_ref().unwrap();
        assert!(!q.projected);
        assert!(q.curvature.flat);
        assert!(analysis.expectations_ok());
        assert!(analysis.theorem_counterexamples().is_empty());
    }

    #[test]
    fn analyze_reports_jacobi_violations() {
        let text = "\
algebra \"broken\"
dim 3
basis X Y Z
bracket [X,Y] = 2Z + X
bracket [Z,X] = 2Y
bracket [Y,Z] = 2X
";
        let file = parse_algebra(text).unwrap();
        match analyze(&file) {
            Err(AnalyzeError::InvalidAlgebra(report)) => {
                assert!(!report.violations.is_empty());
                let rendered = report.to_string();
                assert!(rendered.contains("(X, Y, Z)"));
            }
            other => panic!("expected InvalidAlgebra, got {other:?}"),
        }
    }

    #[test]
    fn flipped_expectation_is_named() {
        let text = SU2_SPLIT.replace("expect riemannian = true", "expect riemannian = false");
        let file = parse_algebra(&text).unwrap();
        let analysis = analyze(&file).unwrap();
        assert!(!analysis.expectations_ok());
        let bad: Vec<_> = analysis
            .expectation_results
            .iter()
            .filter(|r| !r.ok)
            .collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].key, "riemannian");
    }

    #[test]
    fn rendering_is_deterministic() {
        let file = parse_algebra(SU2_SPLIT).unwrap();
        let a = analyze(&file).unwrap();
        let b = analyze(&file).unwrap();
        assert_eq!(a.render_text(), b.render_text());
        assert_eq!(
            serde_json::to_string_pretty(&a.structured()).unwrap(),
            serde_json::to_string_pretty(&b.structured()).unwrap()
        );
        assert!(a.render_text().contains("quotient (ideal): dim 1"));
    }

    #[test]
    fn quotient_file_round_trips() {
        let file = parse_algebra(SU2_SPLIT).unwrap();
        let analysis = analyze(&file).unwrap();
        let qfile = analysis.quotient_file().unwrap();
        let reparsed = parse_algebra(&qfile.to_text()).unwrap();
        assert_eq!(reparsed.algebra().unwrap(), qfile.algebra().unwrap());
        assert_eq!(reparsed.name, "su2-line-quotient");
    }

    #[test]
    fn non_positive_definite_metrics_are_rejected() {
        let text = "\
algebra \"bad-metric\"
dim 2
basis X Y
metric gram
1 2
2 1
";
        let file = parse_algebra(text).unwrap();
        assert_eq!(
            analyze(&file).unwrap_err(),
            AnalyzeError::NotPositiveDefinite
        );
    }

    #[test]
    fn non_diagonal_metrics_are_presented_on_an_orthogonal_basis() {
        let text = "\
algebra \"skew-metric\"
dim 2
basis X Y
metric gram
2 1
1 2
vertical X
";
        let file = parse_algebra(text).unwrap();
        let analysis = analyze(&file).unwrap();
        // Abelian, so flat in any metric; the second presentation label is
        // synthesized because the orthogonalized vector mixes X and Y.
        assert!(analysis.ambient_curvature.flat);
        assert_eq!(
            analysis.ambient_labels,
            vec!["X".to_string(), "E2".to_string()]
        );
        let fol = analysis.foliation.as_ref().unwrap();
        assert_eq!(fol.split.vertical_weights(), &[crate::linalg::rint(2)][..]);
        assert!(fol.report.riemannian);
        let q = analysis.quotient.as_ref().unwrap();
        assert!(q.curvature.flat);
        // Horizontal complement of X is spanned by X - 2Y, of squared
        // length 6 in this metric.
        assert_eq!(q.weights, vec![crate::linalg::rint(6)]);
    }

    #[test]
    fn corpus_runner_on_a_temporary_directory() {
        let dir = std::env::temp_dir().join(format!("folia-corpus-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        // Empty directory: pass with a warning.
        let result = run_corpus(&dir, 1).unwrap();
        assert!(result.pass && result.entries.is_empty());
        assert!(result.render_text().contains("warning"));

        std::fs::write(dir.join("good.alg"), SU2_SPLIT).unwrap();
        let flipped = SU2_SPLIT
            .replace("su2-line", "flipped")
            .replace("expect riemannian = true", "expect riemannian = false");
        std::fs::write(dir.join("flipped.alg"), flipped).unwrap();
        let result = run_corpus(&dir, 2).unwrap();
        assert!(!result.pass);
        assert!(!result.invalid_input);
        assert_eq!(result.entries.len(), 2);
        assert_eq!(result.entries[0].file_name, "flipped");
        assert!(!result.entries[0].ok());
        assert!(result.entries[1].ok());
        let text = result.render_text();
        assert!(text.contains("flipped: FAIL"));
        assert!(text.contains("expect riemannian = false, computed true"));

        // A non-blocking annotation downgrades the failure.
        let annotated = SU2_SPLIT
            .replace("su2-line", "annotated")
            .replace("expect riemannian = true", "expect riemannian = false")
            + "annotation paper-typo-adjusted\n";
        std::fs::write(dir.join("flipped.alg"), annotated).unwrap();
        let result = run_corpus(&dir, 1).unwrap();
        assert!(result.pass);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
