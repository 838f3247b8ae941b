//! Metric splits of a Lie algebra and the geometry of the left-invariant
//! foliation they generate.
//!
//! A [`MetricSplit`] fixes a positive-definite inner product on a Lie algebra
//! together with a vertical subalgebra. The orthogonal complement is the
//! horizontal space, and the bracket decomposes into five split tensors
//! (`c`, `x`, `y`, `rho`, `theta`). Everything else here is read off those
//! tensors: the two second fundamental forms, conformality and its dilation,
//! Riemannian-ness, the mean curvature vector, minimality, total geodesy,
//! normality, horizontal integrability, biinvariance of the restricted
//! metric, diagonality of the vertical Killing form, and a small harness of
//! implications between those flags.
//!
//! The adapted bases are produced by unnormalized Gram-Schmidt, so they are
//! orthogonal rather than orthonormal; every formula carries the diagonal
//! weights `w_i = g(b_i, b_i)` explicitly and reduces to the orthonormal
//! version when the Gram matrix is the identity.

use crate::lie::{killing_diagonal_entries, LieAlgebra, LieError};
use crate::linalg::{
    basis_vec, coords_in_basis, form_pair, orthogonalize_vectors, vec_add_scaled, vec_is_zero,
    zeros, LinalgError, Mat, Rat, Subspace,
};
use num::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("the metric is not symmetric positive definite")]
    NotPositiveDefinite,
    #[error("the vertical space is not a subalgebra")]
    NotASubalgebra,
    #[error("degenerate split: the vertical space must be proper and nonzero")]
    DegenerateSplit,
    #[error("argument is not a vertical vector")]
    NotVertical,
    #[error("argument is not a horizontal vector")]
    NotHorizontal,
    #[error("the foliation is not conformal")]
    NotConformal,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The five tensors of the bracket relations in an adapted basis
/// `{V_1..V_d, X_1..X_n}`:
///
/// - `[V_a, V_b] = sum_g c[a][b][g] V_g`
/// - `[X_i, V_a] = sum_g x[i][a][g] V_g + sum_k y[i][a][k] X_k`
/// - `[X_i, X_j] = sum_g theta[i][j][g] V_g + sum_k rho[i][j][k] X_k`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitTensors {
    pub c: Vec<Vec<Vec<Rat>>>,
    pub x: Vec<Vec<Vec<Rat>>>,
    pub y: Vec<Vec<Vec<Rat>>>,
    pub rho: Vec<Vec<Vec<Rat>>>,
    pub theta: Vec<Vec<Vec<Rat>>>,
}

/// Result of the conformality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conformality {
    pub conformal: bool,
    /// Dilation `rho(V_g)` per adapted vertical basis vector, evaluated
    /// against the first horizontal direction. Only meaningful as a dilation
    /// when the foliation is conformal.
    pub dilation: Vec<Rat>,
    /// The vertical vector `V` with `B^H = g (x) V`, present when conformal.
    pub conformal_vector: Option<Vec<Rat>>,
    /// Lexicographically smallest horizontal pair violating the test.
    pub witness: Option<(usize, usize)>,
}

/// How the harmonic-morphism verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HmEvidence {
    /// Vertical algebra is semisimple: minimal leaves decide the question.
    MinimalLeaves,
    /// Vertical algebra is not semisimple: only the closedness of the dual
    /// of the mean curvature vector is reported.
    ClosednessOnly,
    /// The foliation is not conformal, so no verdict applies.
    NotConformal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicMorphisms {
    pub produces: bool,
    pub evidence: HmEvidence,
    /// Whether `<mu, [E,F]> = 0` for all basis pairs.
    pub closed: bool,
    pub minimal: bool,
}

/// Biinvariance of the restricted metric on the vertical algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biinvariance {
    pub biinvariant: bool,
    /// When the vertical algebra is semisimple and the restriction is
    /// biinvariant, the scalars `L` with `g = -L * B` per detected
    /// Killing-orthogonal ideal (a single scalar when the whole vertical
    /// algebra is proportional).
    pub scalars: Option<Vec<Rat>>,
}

/// One implication checked by [`MetricSplit::verify_theorems`]. A row with
/// `applicable && !holds` is a counterexample and must never occur on a
/// valid input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremRow {
    pub claim: &'static str,
    pub applicable: bool,
    pub holds: bool,
}

pub const CLAIM_SEMISIMPLE_RIEMANNIAN: &str = "conformal+semisimple => riemannian";
pub const CLAIM_NORMAL_MINIMAL: &str = "conformal+semisimple+normal => riemannian+minimal";
pub const CLAIM_BIINVARIANT_TOTALLY_GEODESIC: &str =
    "conformal+semisimple+normal+biinvariant => totally-geodesic";
pub const CLAIM_KILLING_DIAGONAL_MINIMAL: &str = "conformal+normal+killing-diagonal => minimal";
pub const CLAIM_CODIM3_NOT_PERFECT_NORMAL: &str =
    "codim-3+conformal+semisimple+not-perfect => normal";

/// Lexicographically smallest violating index tuple per failed flag. Indices
/// refer to the adapted bases: `i, j, k` run over horizontal vectors and
/// `a, b, g` over vertical ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FoliationWitnesses {
    /// Horizontal pair `(i, j)` violating conformality.
    pub conformal: Option<(usize, usize)>,
    /// Horizontal pair `(i, j)` with `B^H(X_i, X_j) != 0`.
    pub riemannian: Option<(usize, usize)>,
    /// Horizontal index with a nonzero mean-curvature component.
    pub minimal: Option<usize>,
    /// Triple `(i, a, b)` with `x[i][a][b] w_b + x[i][b][a] w_a != 0`.
    pub totally_geodesic: Option<(usize, usize, usize)>,
    /// Triple `(i, a, k)` with `y[i][a][k] != 0`.
    pub normal: Option<(usize, usize, usize)>,
    /// Triple `(i, j, g)` with `theta[i][j][g] != 0`.
    pub horizontally_integrable: Option<(usize, usize, usize)>,
}

/// All boolean flags of a split, with exact rational witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoliationReport {
    pub conformal: bool,
    pub dilation: Vec<Rat>,
    pub conformal_vector: Option<Vec<Rat>>,
    pub riemannian: bool,
    pub mean_curvature: Vec<Rat>,
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub normal: bool,
    pub horizontally_integrable: bool,
    pub produces_harmonic_morphisms: bool,
    pub harmonic_morphism_evidence: HmEvidence,
    pub witnesses: FoliationWitnesses,
}

/// A Lie algebra with a positive-definite metric and a vertical subalgebra,
/// together with adapted orthogonal bases and the derived split tensors.
#[derive(Debug, Clone)]
pub struct MetricSplit {
    algebra: LieAlgebra,
    gram: Mat,
    vertical: Subspace,
    horizontal: Subspace,
    vertical_basis: Vec<Vec<Rat>>,
    horizontal_basis: Vec<Vec<Rat>>,
    vertical_weights: Vec<Rat>,
    horizontal_weights: Vec<Rat>,
    vertical_labels: Vec<String>,
    horizontal_labels: Vec<String>,
    vertical_algebra: LieAlgebra,
    tensors: SplitTensors,
}

/// Builds a [`MetricSplit`]; see [`MetricSplit::new`].
pub fn make_split(
    algebra: LieAlgebra,
    gram: Mat,
    vertical: Subspace,
) -> Result<MetricSplit, SplitError> {
    MetricSplit::new(algebra, gram, vertical)
}

impl MetricSplit {
    pub fn new(
        algebra: LieAlgebra,
        gram: Mat,
        vertical: Subspace,
    ) -> Result<MetricSplit, SplitError> {
        let m = algebra.dim();
        if gram.nrows() != m || gram.ncols() != m {
            return Err(SplitError::NotPositiveDefinite);
        }
        if !gram.is_positive_definite() {
            return Err(SplitError::NotPositiveDefinite);
        }
        if vertical.ambient_dim() != m {
            return Err(LieError::DimensionMismatch {
                expected: m,
                got: vertical.ambient_dim(),
            }
            .into());
        }
        if vertical.dim() == 0 || vertical.dim() == m {
            return Err(SplitError::DegenerateSplit);
        }
        if !algebra.is_subalgebra(&vertical)? {
            return Err(SplitError::NotASubalgebra);
        }
        // Horizontal complement: the gram-orthogonal kernel of v -> g(V, v).
        let horizontal = vertical.basis().mul(&gram).kernel();
        let vertical_basis = orthogonalize_vectors(vertical.basis_rows(), &gram)?;
        let horizontal_basis = orthogonalize_vectors(horizontal.basis_rows(), &gram)?;
        let weight = |b: &Vec<Rat>| form_pair(&gram, b, b);
        let vertical_weights: Vec<Rat> = vertical_basis.iter().map(weight).collect();
        let horizontal_weights: Vec<Rat> = horizontal_basis.iter().map(weight).collect();
        let vertical_labels = adapted_labels(&algebra, &vertical_basis, "V");
        let horizontal_labels = adapted_labels(&algebra, &horizontal_basis, "X");
        let vertical_algebra =
            algebra.restricted_to_basis(&vertical_basis, vertical_labels.clone())?;
        let tensors = compute_tensors(&algebra, &vertical_basis, &horizontal_basis)?;
        Ok(MetricSplit {
            algebra,
            gram,
            vertical,
            horizontal,
            vertical_basis,
            horizontal_basis,
            vertical_weights,
            horizontal_weights,
            vertical_labels,
            horizontal_labels,
            vertical_algebra,
            tensors,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn vertical(&self) -> &Subspace {
        &self.vertical
    }

    pub fn horizontal(&self) -> &Subspace {
        &self.horizontal
    }

    /// Leaf dimension `d`.
    pub fn vertical_dim(&self) -> usize {
        self.vertical_basis.len()
    }

    /// Codimension `n`.
    pub fn horizontal_dim(&self) -> usize {
        self.horizontal_basis.len()
    }

    pub fn vertical_basis(&self) -> &[Vec<Rat>] {
        &self.vertical_basis
    }

    pub fn horizontal_basis(&self) -> &[Vec<Rat>] {
        &self.horizontal_basis
    }

    pub fn vertical_weights(&self) -> &[Rat] {
        &self.vertical_weights
    }

    pub fn horizontal_weights(&self) -> &[Rat] {
        &self.horizontal_weights
    }

    pub fn vertical_labels(&self) -> &[String] {
        &self.vertical_labels
    }

    pub fn horizontal_labels(&self) -> &[String] {
        &self.horizontal_labels
    }

    /// The vertical subalgebra as a standalone Lie algebra in the adapted
    /// vertical basis.
    pub fn vertical_algebra(&self) -> &LieAlgebra {
        &self.vertical_algebra
    }

    pub fn split_tensors(&self) -> &SplitTensors {
        &self.tensors
    }

    /// `g(v, w)` in the ambient metric.
    pub fn pair(&self, v: &[Rat], w: &[Rat]) -> Rat {
        form_pair(&self.gram, v, w)
    }

    /// Rebuilds every adapted-basis bracket from the five split tensors and
    /// compares with the algebra's bracket. Exact by construction; exposed
    /// as a consistency check.
    pub fn tensors_reassemble_brackets(&self) -> bool {
        let d = self.vertical_dim();
        let n = self.horizontal_dim();
        let m = self.algebra.dim();
        let assemble = |vert: &[Rat], hor: &[Rat]| {
            let mut out = zeros(m);
            for (g, e) in vert.iter().enumerate() {
                vec_add_scaled(&mut out, e, &self.vertical_basis[g]);
            }
            for (k, e) in hor.iter().enumerate() {
                vec_add_scaled(&mut out, e, &self.horizontal_basis[k]);
            }
            out
        };
        for a in 0..d {
            for b in 0..d {
                let actual = self
                    .algebra
                    .bracket(&self.vertical_basis[a], &self.vertical_basis[b])
                    .expect("dimensions match");
                if assemble(&self.tensors.c[a][b], &zeros(n)) != actual {
                    return false;
                }
            }
        }
        for i in 0..n {
            for a in 0..d {
                let actual = self
                    .algebra
                    .bracket(&self.horizontal_basis[i], &self.vertical_basis[a])
                    .expect("dimensions match");
                if assemble(&self.tensors.x[i][a], &self.tensors.y[i][a]) != actual {
                    return false;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let actual = self
                    .algebra
                    .bracket(&self.horizontal_basis[i], &self.horizontal_basis[j])
                    .expect("dimensions match");
                if assemble(&self.tensors.theta[i][j], &self.tensors.rho[i][j]) != actual {
                    return false;
                }
            }
        }
        true
    }

    /// Second fundamental form of the vertical distribution:
    /// `B^V(v, w) = 1/2 sum_k (g([X_k,v],w) + g([X_k,w],v)) X_k / w_k`,
    /// a horizontal vector. Both arguments must be vertical.
    pub fn second_fundamental_form_vertical(
        &self,
        v: &[Rat],
        w: &[Rat],
    ) -> Result<Vec<Rat>, SplitError> {
        if !self.vertical.contains(v) || !self.vertical.contains(w) {
            return Err(SplitError::NotVertical);
        }
        let mut out = zeros(self.algebra.dim());
        for (k, xk) in self.horizontal_basis.iter().enumerate() {
            let a = self.pair(&self.algebra.bracket(xk, v)?, w);
            let b = self.pair(&self.algebra.bracket(xk, w)?, v);
            let coeff = (a + b) / (crate::linalg::rint(2) * &self.horizontal_weights[k]);
            if !coeff.is_zero() {
                vec_add_scaled(&mut out, &coeff, xk);
            }
        }
        Ok(out)
    }

    /// Second fundamental form of the horizontal distribution:
    /// `B^H(x, y) = 1/2 sum_g (g([V_g,x],y) + g([V_g,y],x)) V_g / w_g`,
    /// a vertical vector. Both arguments must be horizontal.
    pub fn second_fundamental_form_horizontal(
        &self,
        x: &[Rat],
        y: &[Rat],
    ) -> Result<Vec<Rat>, SplitError> {
        if !self.horizontal.contains(x) || !self.horizontal.contains(y) {
            return Err(SplitError::NotHorizontal);
        }
        let mut out = zeros(self.algebra.dim());
        for (g, vg) in self.vertical_basis.iter().enumerate() {
            let a = self.pair(&self.algebra.bracket(vg, x)?, y);
            let b = self.pair(&self.algebra.bracket(vg, y)?, x);
            let coeff = (a + b) / (crate::linalg::rint(2) * &self.vertical_weights[g]);
            if !coeff.is_zero() {
                vec_add_scaled(&mut out, &coeff, vg);
            }
        }
        Ok(out)
    }

    fn horizontal_sff_matrix(&self) -> Vec<Vec<Vec<Rat>>> {
        let n = self.horizontal_dim();
        let mut bh = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let value = self
                    .second_fundamental_form_horizontal(
                        &self.horizontal_basis[i],
                        &self.horizontal_basis[j],
                    )
                    .expect("adapted vectors are horizontal");
                bh[i][j] = value.clone();
                bh[j][i] = value;
            }
        }
        bh
    }

    /// Conformality test: `B^H(X_i, X_i)/w_i` equal across `i` and
    /// `B^H(X_i, X_j) = 0` for `i != j`. When conformal, also returns the
    /// vertical vector `V` with `B^H = g (x) V`.
    pub fn conformality(&self) -> Conformality {
        let n = self.horizontal_dim();
        let bh = self.horizontal_sff_matrix();
        let normalized: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                bh[i][i]
                    .iter()
                    .map(|e| e / &self.horizontal_weights[i])
                    .collect()
            })
            .collect();
        let mut witness = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                if !vec_is_zero(&bh[i][j]) || normalized[i] != normalized[j] {
                    witness = Some((i, j));
                    break 'outer;
                }
            }
        }
        let conformal = witness.is_none();
        let dilation: Vec<Rat> = (0..self.vertical_dim())
            .map(|g| {
                let bracket = self
                    .algebra
                    .bracket(&self.vertical_basis[g], &self.horizontal_basis[0])
                    .expect("dimensions match");
                crate::linalg::rint(2) * self.pair(&bracket, &self.horizontal_basis[0])
                    / &self.horizontal_weights[0]
            })
            .collect();
        let conformal_vector = conformal.then(|| normalized[0].clone());
        Conformality {
            conformal,
            dilation,
            conformal_vector,
            witness,
        }
    }

    fn riemannian_witness(&self) -> Option<(usize, usize)> {
        let n = self.horizontal_dim();
        let bh = self.horizontal_sff_matrix();
        for i in 0..n {
            for j in i..n {
                if !vec_is_zero(&bh[i][j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Whether the foliation is Riemannian, i.e. `B^H` vanishes identically
    /// (equivalently: conformal with zero dilation, equivalently the
    /// symmetrization `y[i][g][j] w_j + y[j][g][i] w_i` vanishes).
    pub fn is_riemannian(&self) -> bool {
        self.riemannian_witness().is_none()
    }

    /// The mean curvature vector `mu = sum_k (sum_a x[k][a][a]) X_k / w_k`,
    /// the metric trace of `B^V` without the customary `1/d` normalization.
    pub fn mean_curvature(&self) -> Vec<Rat> {
        let mut out = zeros(self.algebra.dim());
        for (k, xk) in self.horizontal_basis.iter().enumerate() {
            let mut diag = Rat::zero();
            for a in 0..self.vertical_dim() {
                diag += &self.tensors.x[k][a][a];
            }
            if !diag.is_zero() {
                let coeff = diag / &self.horizontal_weights[k];
                vec_add_scaled(&mut out, &coeff, xk);
            }
        }
        out
    }

    fn minimal_witness(&self) -> Option<usize> {
        (0..self.horizontal_dim()).find(|&k| {
            let mut diag = Rat::zero();
            for a in 0..self.vertical_dim() {
                diag += &self.tensors.x[k][a][a];
            }
            !diag.is_zero()
        })
    }

    /// Minimality: `sum_a x[i][a][a] = 0` for every horizontal `i`,
    /// equivalently a vanishing mean curvature vector.
    pub fn is_minimal(&self) -> bool {
        self.minimal_witness().is_none()
    }

    fn totally_geodesic_witness(&self) -> Option<(usize, usize, usize)> {
        let d = self.vertical_dim();
        for i in 0..self.horizontal_dim() {
            for a in 0..d {
                for b in a..d {
                    let s = &self.tensors.x[i][a][b] * &self.vertical_weights[b]
                        + &self.tensors.x[i][b][a] * &self.vertical_weights[a];
                    if !s.is_zero() {
                        return Some((i, a, b));
                    }
                }
            }
        }
        None
    }

    /// Total geodesy: `x[i][a][b] w_b + x[i][b][a] w_a = 0` for all triples,
    /// equivalently `B^V = 0`.
    pub fn is_totally_geodesic(&self) -> bool {
        self.totally_geodesic_witness().is_none()
    }

    fn normal_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.horizontal_dim();
        let d = self.vertical_dim();
        for i in 0..n {
            for a in 0..d {
                for k in 0..n {
                    if !self.tensors.y[i][a][k].is_zero() {
                        return Some((i, a, k));
                    }
                }
            }
        }
        None
    }

    /// Whether the vertical subalgebra is an ideal (`y = 0`).
    pub fn is_normal(&self) -> bool {
        let by_tensor = self.normal_witness().is_none();
        debug_assert_eq!(
            by_tensor,
            self.algebra
                .is_ideal(&self.vertical)
                .expect("ambient matches")
        );
        by_tensor
    }

    fn horizontally_integrable_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.horizontal_dim();
        let d = self.vertical_dim();
        for i in 0..n {
            for j in i + 1..n {
                for g in 0..d {
                    if !self.tensors.theta[i][j][g].is_zero() {
                        return Some((i, j, g));
                    }
                }
            }
        }
        None
    }

    /// Whether the horizontal distribution is integrable (`theta = 0`).
    pub fn is_horizontally_integrable(&self) -> bool {
        self.horizontally_integrable_witness().is_none()
    }

    fn vertical_semisimple(&self) -> bool {
        self.vertical_algebra.killing_form().rank() == self.vertical_dim()
    }

    /// Harmonic-morphism test. Requires a conformal foliation.
    ///
    /// Computes both the closedness of the dual of the mean curvature vector
    /// (`<mu, [E,F]> = 0` on all basis pairs) and minimality. For a
    /// semisimple vertical algebra the two agree and decide the question;
    /// otherwise only the closedness result is reported.
    pub fn produces_harmonic_morphisms(&self) -> Result<HarmonicMorphisms, SplitError> {
        if !self.conformality().conformal {
            return Err(SplitError::NotConformal);
        }
        let mu = self.mean_curvature();
        let minimal = vec_is_zero(&mu);
        let m = self.algebra.dim();
        let mut closed = true;
        'outer: for i in 0..m {
            for j in i + 1..m {
                if !self.pair(&mu, self.algebra.bracket_basis(i, j)).is_zero() {
                    closed = false;
                    break 'outer;
                }
            }
        }
        if self.vertical_semisimple() {
            debug_assert_eq!(closed, minimal);
            Ok(HarmonicMorphisms {
                produces: minimal,
                evidence: HmEvidence::MinimalLeaves,
                closed,
                minimal,
            })
        } else {
            Ok(HarmonicMorphisms {
                produces: closed,
                evidence: HmEvidence::ClosednessOnly,
                closed,
                minimal,
            })
        }
    }

    /// Ad-invariance of the restricted metric on the vertical algebra:
    /// `g([u,v],w) + g(v,[u,w]) = 0` for all vertical triples. When the
    /// vertical algebra is additionally semisimple, reports the scalars `L`
    /// with `g = -L * B` (per Killing-orthogonal ideal when the whole
    /// algebra is not proportional).
    pub fn biinvariant_restriction(&self) -> Biinvariance {
        let d = self.vertical_dim();
        let mut biinvariant = true;
        'outer: for u in &self.vertical_basis {
            for v in &self.vertical_basis {
                for w in &self.vertical_basis {
                    let uv = self.algebra.bracket(u, v).expect("dimensions match");
                    let uw = self.algebra.bracket(u, w).expect("dimensions match");
                    if !(self.pair(&uv, w) + self.pair(v, &uw)).is_zero() {
                        biinvariant = false;
                        break 'outer;
                    }
                }
            }
        }
        if !biinvariant || !self.vertical_semisimple() {
            return Biinvariance {
                biinvariant,
                scalars: None,
            };
        }
        let b = self.vertical_algebra.killing_form();
        let g = Mat::diagonal(&self.vertical_weights);
        if let Some(lambda) = proportional_negative(&g, &b) {
            return Biinvariance {
                biinvariant,
                scalars: Some(vec![lambda]),
            };
        }
        // Per-block fallback: components of the Killing adjacency graph that
        // are ideals of the vertical algebra, each proportional on its own.
        let mut scalars = Vec::new();
        for block in killing_blocks(&b) {
            let span = Subspace::span(
                d,
                &block.iter().map(|&i| basis_vec(d, i)).collect::<Vec<_>>(),
            );
            let ideal = self
                .vertical_algebra
                .is_ideal(&span)
                .expect("ambient matches");
            let restrict = |m: &Mat| {
                Mat::from_rows(
                    block
                        .iter()
                        .map(|&i| block.iter().map(|&j| m.at(i, j).clone()).collect())
                        .collect(),
                )
            };
            match proportional_negative(&restrict(&g), &restrict(&b)) {
                Some(lambda) if ideal => scalars.push(lambda),
                _ => {
                    return Biinvariance {
                        biinvariant,
                        scalars: None,
                    }
                }
            }
        }
        Biinvariance {
            biinvariant,
            scalars: Some(scalars),
        }
    }

    /// Diagonality of the Killing form of the standalone vertical algebra in
    /// the adapted vertical basis, with the diagonal entries. Nonzero
    /// diagonal entries with vanishing off-diagonal terms characterize the
    /// Cartan-Killing situation used by the minimality criterion.
    pub fn killing_diagonal(&self) -> (bool, Vec<Rat>) {
        killing_diagonal_entries(&self.vertical_algebra)
    }

    /// Verifies `trace(ad_{X_i}) = sum_g x[i][g][g] + sum_k rho[i][k][k]`
    /// for every horizontal basis vector. The identity is basis-independent,
    /// so this doubles as a consistency check of the split tensors.
    pub fn trace_identity_check(&self) -> bool {
        for (i, xi) in self.horizontal_basis.iter().enumerate() {
            let lhs = self
                .algebra
                .ad_matrix(xi)
                .expect("dimensions match")
                .trace();
            let mut rhs = Rat::zero();
            for g in 0..self.vertical_dim() {
                rhs += &self.tensors.x[i][g][g];
            }
            for k in 0..self.horizontal_dim() {
                rhs += &self.tensors.rho[i][k][k];
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// The horizontal projection of the horizontal brackets (the `rho`
    /// tensor) as a candidate Lie algebra on the horizontal labels.
    ///
    /// When the vertical space is an ideal this is the quotient algebra.
    /// Otherwise it is only the projected structure; the result is returned
    /// when it satisfies the Jacobi identity and rejected otherwise.
    pub fn horizontal_projection_algebra(&self) -> Result<LieAlgebra, LieError> {
        let algebra = LieAlgebra::from_structure_tensor(
            self.horizontal_labels.clone(),
            self.tensors.rho.clone(),
        )?;
        let violations = algebra.validate_jacobi();
        if !violations.is_empty() {
            return Err(LieError::InvalidAlgebra(violations.len()));
        }
        Ok(algebra)
    }

    /// Evaluates the implication harness on this split: for each claim,
    /// whether its hypotheses hold (`applicable`) and whether its conclusion
    /// holds (`holds`).
    pub fn verify_theorems(&self) -> Vec<TheoremRow> {
        let conformal = self.conformality().conformal;
        let riemannian = self.is_riemannian();
        let minimal = self.is_minimal();
        let totally_geodesic = self.is_totally_geodesic();
        let normal = self.is_normal();
        let semisimple = self.vertical_semisimple();
        let biinvariant = self.biinvariant_restriction().biinvariant;
        let (killing_diagonal, _) = self.killing_diagonal();
        let ambient_perfect = self.algebra.derived_subalgebra().dim() == self.algebra.dim();
        vec![
            TheoremRow {
                claim: CLAIM_SEMISIMPLE_RIEMANNIAN,
                applicable: conformal && semisimple,
                holds: riemannian,
            },
            TheoremRow {
                claim: CLAIM_NORMAL_MINIMAL,
                applicable: conformal && semisimple && normal,
                holds: riemannian && minimal,
            },
            TheoremRow {
                claim: CLAIM_BIINVARIANT_TOTALLY_GEODESIC,
                applicable: conformal && semisimple && normal && biinvariant,
                holds: totally_geodesic,
            },
            TheoremRow {
                claim: CLAIM_KILLING_DIAGONAL_MINIMAL,
                applicable: conformal && normal && killing_diagonal,
                holds: minimal,
            },
            TheoremRow {
                claim: CLAIM_CODIM3_NOT_PERFECT_NORMAL,
                applicable: self.horizontal_dim() == 3
                    && conformal
                    && semisimple
                    && !ambient_perfect,
                holds: normal,
            },
        ]
    }

    /// Full flag report with witnesses.
    pub fn report(&self) -> FoliationReport {
        let conformality = self.conformality();
        let riemannian_witness = self.riemannian_witness();
        let mean_curvature = self.mean_curvature();
        let minimal_witness = self.minimal_witness();
        let tg_witness = self.totally_geodesic_witness();
        let normal_witness = self.normal_witness();
        let hint_witness = self.horizontally_integrable_witness();
        let (produces, evidence) = match self.produces_harmonic_morphisms() {
            Ok(hm) => (hm.produces, hm.evidence),
            Err(_) => (false, HmEvidence::NotConformal),
        };
        FoliationReport {
            conformal: conformality.conformal,
            dilation: conformality.dilation.clone(),
            conformal_vector: conformality.conformal_vector.clone(),
            riemannian: riemannian_witness.is_none(),
            minimal: minimal_witness.is_none(),
            mean_curvature,
            totally_geodesic: tg_witness.is_none(),
            normal: normal_witness.is_none(),
            horizontally_integrable: hint_witness.is_none(),
            produces_harmonic_morphisms: produces,
            harmonic_morphism_evidence: evidence,
            witnesses: FoliationWitnesses {
                conformal: conformality.witness,
                riemannian: riemannian_witness,
                minimal: minimal_witness,
                totally_geodesic: tg_witness,
                normal: normal_witness,
                horizontally_integrable: hint_witness,
            },
        }
    }
}

/// Enumerates every proper nonzero span of basis-label subsets that is
/// closed under the bracket, and builds the split for each. This is the
/// search space of the corpus-wide theorem harness.
pub fn bracket_closed_subset_splits(
    algebra: &LieAlgebra,
    gram: &Mat,
) -> Result<Vec<MetricSplit>, SplitError> {
    let m = algebra.dim();
    assert!(m < 32, "subset enumeration is meant for small dimensions");
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) - 1 {
        let rows: Vec<Vec<Rat>> = (0..m)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| basis_vec(m, i))
            .collect();
        let span = Subspace::span(m, &rows);
        if algebra.is_subalgebra(&span)? {
            out.push(MetricSplit::new(algebra.clone(), gram.clone(), span)?);
        }
    }
    Ok(out)
}

fn compute_tensors(
    algebra: &LieAlgebra,
    vertical_basis: &[Vec<Rat>],
    horizontal_basis: &[Vec<Rat>],
) -> Result<SplitTensors, SplitError> {
    let d = vertical_basis.len();
    let n = horizontal_basis.len();
    let mut adapted = vertical_basis.to_vec();
    adapted.extend_from_slice(horizontal_basis);
    let coords = |w: &[Rat]| coords_in_basis(&adapted, w).expect("adapted basis spans the algebra");
    let mut c = vec![vec![zeros(d); d]; d];
    for a in 0..d {
        for b in 0..d {
            let co = coords(&algebra.bracket(&vertical_basis[a], &vertical_basis[b])?);
            debug_assert!(vec_is_zero(&co[d..]), "vertical space is a subalgebra");
            c[a][b] = co[..d].to_vec();
        }
    }
    let mut x = vec![vec![zeros(d); d]; n];
    let mut y = vec![vec![zeros(n); d]; n];
    for i in 0..n {
        for a in 0..d {
            let co = coords(&algebra.bracket(&horizontal_basis[i], &vertical_basis[a])?);
            x[i][a] = co[..d].to_vec();
            y[i][a] = co[d..].to_vec();
        }
    }
    let mut rho = vec![vec![zeros(n); n]; n];
    let mut theta = vec![vec![zeros(d); n]; n];
    for i in 0..n {
        for j in 0..n {
            let co = coords(&algebra.bracket(&horizontal_basis[i], &horizontal_basis[j])?);
            theta[i][j] = co[..d].to_vec();
            rho[i][j] = co[d..].to_vec();
        }
    }
    Ok(SplitTensors {
        c,
        x,
        y,
        rho,
        theta,
    })
}

/// Labels for an adapted basis: the original label when a vector is a
/// standard basis vector, a synthesized positional name otherwise.
fn adapted_labels(algebra: &LieAlgebra, basis: &[Vec<Rat>], prefix: &str) -> Vec<String> {
    basis
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
                [i] if v[*i] == crate::linalg::rint(1) => algebra.label(*i).to_string(),
                _ => format!("{prefix}{}", pos + 1),
            }
        })
        .collect()
}

/// Finds `L > 0` with `g = -L * b` entrywise, or `None`.
fn proportional_negative(g: &Mat, b: &Mat) -> Option<Rat> {
    let n = g.nrows();
    let mut lambda = None;
    for i in 0..n {
        for j in 0..n {
            if !b.at(i, j).is_zero() {
                lambda = Some(-(g.at(i, j) / b.at(i, j)));
                break;
            }
        }
        if lambda.is_some() {
            break;
        }
    }
    let lambda = lambda?;
    if !lambda.is_positive() {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            if g.at(i, j) != &(-(&lambda) * b.at(i, j)) {
                return None;
            }
        }
    }
    Some(lambda)
}

/// Connected components of indices under the relation `b[i][j] != 0`.
fn killing_blocks(b: &Mat) -> Vec<Vec<usize>> {
    let n = b.nrows();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut block = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            block.push(i);
            for j in 0..n {
                if !seen[j] && (!b.at(i, j).is_zero() || !b.at(j, i).is_zero()) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}
