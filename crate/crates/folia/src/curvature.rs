//! Levi-Civita connection and curvature of a left-invariant metric, from
//! structure constants and diagonal metric weights, plus the geometry of the
//! quotient by a vertical ideal.
//!
//! The connection is the closed form of the Koszul formula on an orthogonal
//! basis with weights `w_i = g(e_i, e_i)`:
//!
//! `2 w_k gamma[i][j][k] = w_k c[i][j][k] - w_i c[j][k][i] + w_j c[k][i][j]`
//!
//! and the curvature tensor is assembled as
//! `R(e_i,e_j)e_k = nabla_i nabla_j e_k - nabla_j nabla_i e_k - nabla_{[e_i,e_j]} e_k`.

use crate::foliation::MetricSplit;
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{vec_is_zero, zeros, Rat};
use num::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurvatureError {
    #[error("metric weights must be positive")]
    NonPositiveWeight,
    #[error("weight count does not match the dimension")]
    WeightCountMismatch,
    #[error("the foliation is not Riemannian")]
    NotRiemannian,
    #[error("the vertical space is not an ideal")]
    NotAnIdeal,
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Connection coefficients `nabla_{e_i} e_j = sum_k gamma[i][j][k] e_k` for
/// an orthogonal basis with diagonal metric weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionCoeffs {
    gamma: Vec<Vec<Vec<Rat>>>,
    weights: Vec<Rat>,
}

impl ConnectionCoeffs {
    pub fn at(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.gamma[i][j][k]
    }

    /// The coefficient vector of `nabla_{e_i} e_j`.
    pub fn nabla(&self, i: usize, j: usize) -> &[Rat] {
        &self.gamma[i][j]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

/// Levi-Civita connection from the Koszul closed form.
pub fn levi_civita(
    algebra: &LieAlgebra,
    weights: &[Rat],
) -> Result<ConnectionCoeffs, CurvatureError> {
    let m = algebra.dim();
    if weights.len() != m {
        return Err(CurvatureError::WeightCountMismatch);
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(CurvatureError::NonPositiveWeight);
    }
    let c = algebra.structure_tensor();
    let two = crate::linalg::rint(2);
    let mut gamma = vec![vec![zeros(m); m]; m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let num = &weights[k] * &c[i][j][k] - &weights[i] * &c[j][k][i]
                    + &weights[j] * &c[k][i][j];
                if !num.is_zero() {
                    gamma[i][j][k] = num / (&two * &weights[k]);
                }
            }
        }
    }
    Ok(ConnectionCoeffs {
        gamma,
        weights: weights.to_vec(),
    })
}

/// The full curvature tensor, stored as coefficients
/// `R(e_i,e_j)e_k = sum_l r[i][j][k][l] e_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiemannTensor {
    r: Vec<Vec<Vec<Vec<Rat>>>>,
    weights: Vec<Rat>,
}

impl RiemannTensor {
    pub fn at(&self, i: usize, j: usize, k: usize, l: usize) -> &Rat {
        &self.r[i][j][k][l]
    }

    /// The coefficient vector of `R(e_i,e_j)e_k`.
    pub fn apply(&self, i: usize, j: usize, k: usize) -> &[Rat] {
        &self.r[i][j][k]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.r
            .iter()
            .all(|p| p.iter().all(|q| q.iter().all(|v| vec_is_zero(v))))
    }

    /// `<R(e_i,e_j)e_k, e_l>` in the diagonal metric.
    pub fn pairing(&self, i: usize, j: usize, k: usize, l: usize) -> Rat {
        &self.r[i][j][k][l] * &self.weights[l]
    }
}

/// Curvature tensor of the connection.
pub fn riemann(algebra: &LieAlgebra, coeffs: &ConnectionCoeffs) -> RiemannTensor {
    let m = algebra.dim();
    let c = algebra.structure_tensor();
    let mut r = vec![vec![vec![zeros(m); m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let mut out = zeros(m);
                for l in 0..m {
                    // + gamma[j][k][l] * nabla_i e_l
                    let a = &coeffs.gamma[j][k][l];
                    if !a.is_zero() {
                        for (x, y) in out.iter_mut().zip(&coeffs.gamma[i][l]) {
                            *x += a * y;
                        }
                    }
                    // - gamma[i][k][l] * nabla_j e_l
                    let b = &coeffs.gamma[i][k][l];
                    if !b.is_zero() {
                        for (x, y) in out.iter_mut().zip(&coeffs.gamma[j][l]) {
                            *x -= b * y;
                        }
                    }
                    // - c[i][j][l] * nabla_l e_k
                    let d = &c[i][j][l];
                    if !d.is_zero() {
                        for (x, y) in out.iter_mut().zip(&coeffs.gamma[l][k]) {
                            *x -= d * y;
                        }
                    }
                }
                r[i][j][k] = out;
            }
        }
    }
    RiemannTensor {
        r,
        weights: coeffs.weights.clone(),
    }
}

/// Sectional curvature of the basis plane `(e_i, e_j)`:
/// `<R(e_i,e_j)e_j, e_i> / (w_i w_j)`.
pub fn sectional(tensor: &RiemannTensor, i: usize, j: usize) -> Rat {
    assert_ne!(i, j, "a plane needs two distinct directions");
    tensor.pairing(i, j, j, i) / (&tensor.weights[i] * &tensor.weights[j])
}

/// Sectional curvatures per basis plane, with exact flat and
/// constant-curvature detection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureReport {
    /// `((i, j), K(e_i, e_j))` for `i < j`.
    pub sectional: Vec<((usize, usize), Rat)>,
    /// Set when `R(X,Y)Z = k(<Y,Z>X - <X,Z>Y)` holds exactly on all basis
    /// triples; `Some(0)` exactly for flat metrics.
    pub constant_curvature: Option<Rat>,
    pub flat: bool,
}

/// Connection, curvature tensor and summary in one call.
pub fn curvature_summary(
    algebra: &LieAlgebra,
    weights: &[Rat],
) -> Result<CurvatureReport, CurvatureError> {
    let coeffs = levi_civita(algebra, weights)?;
    let tensor = riemann(algebra, &coeffs);
    let m = algebra.dim();
    let mut sectional_values = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            sectional_values.push(((i, j), sectional(&tensor, i, j)));
        }
    }
    let flat = tensor.is_zero();
    let candidate = if flat {
        Rat::zero()
    } else if m >= 2 {
        sectional_values[0].1.clone()
    } else {
        Rat::zero()
    };
    let constant = (0..m).all(|i| {
        (0..m).all(|j| {
            (0..m).all(|k| {
                let mut expected = zeros(m);
                if j == k {
                    expected[i] += &candidate * &weights[j];
                }
                if i == k {
                    expected[j] -= &candidate * &weights[i];
                }
                tensor.apply(i, j, k) == expected.as_slice()
            })
        })
    });
    Ok(CurvatureReport {
        sectional: sectional_values,
        constant_curvature: constant.then_some(candidate),
        flat,
    })
}

/// The quotient algebra of a Riemannian split by its vertical ideal,
/// together with the inherited diagonal metric weights on the horizontal
/// basis.
pub fn quotient_metric_algebra(
    split: &MetricSplit,
) -> Result<(LieAlgebra, Vec<Rat>), CurvatureError> {
    if !split.is_riemannian() {
        return Err(CurvatureError::NotRiemannian);
    }
    if !split.is_normal() {
        return Err(CurvatureError::NotAnIdeal);
    }
    let quotient = split.algebra().quotient_algebra(
        split.vertical(),
        split.horizontal_basis(),
        split.horizontal_labels().to_vec(),
    )?;
    Ok((quotient, split.horizontal_weights().to_vec()))
}

/// Curvature of the quotient space: builds the quotient algebra on the
/// horizontal complement and summarizes its curvature. Requires the
/// foliation to be Riemannian and the vertical space to be an ideal.
pub fn quotient_geometry(split: &MetricSplit) -> Result<CurvatureReport, CurvatureError> {
    let (quotient, weights) = quotient_metric_algebra(split)?;
    curvature_summary(&quotient, &weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_vec, rat, rint, Mat, Subspace};

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ones(n: usize) -> Vec<Rat> {
        vec![rint(1); n]
    }

    fn su2() -> LieAlgebra {
        LieAlgebra::from_bracket_table(
            labels(&["X", "Y", "Z"]),
            &[
                (0, 1, vec![rint(0), rint(0), rint(2)]),
                (0, 2, vec![rint(0), rint(-2), rint(0)]),
                (1, 2, vec![rint(2), rint(0), rint(0)]),
            ],
        )
        .unwrap()
    }

    /// Hyperbolic plane algebra [X,Y] = rho*Y.
    fn h2(rho: i64) -> LieAlgebra {
        LieAlgebra::from_bracket_table(labels(&["X", "Y"]), &[(0, 1, vec![rint(0), rint(rho)])])
            .unwrap()
    }

    fn check_connection_invariants(g: &LieAlgebra, coeffs: &ConnectionCoeffs) {
        let m = g.dim();
        let c = g.structure_tensor();
        let w = coeffs.weights();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    // Torsion-free and metric compatibility.
                    assert_eq!(coeffs.at(i, j, k) - coeffs.at(j, i, k), c[i][j][k].clone());
                    assert!((&w[k] * coeffs.at(i, j, k) + &w[j] * coeffs.at(i, k, j)).is_zero());
                }
            }
        }
    }

    #[test]
    fn abelian_connection_and_curvature_vanish() {
        let g = LieAlgebra::abelian(labels(&["X", "Y", "Z"]));
        let coeffs = levi_civita(&g, &ones(3)).unwrap();
        assert!(coeffs.gamma.iter().flatten().all(|v| vec_is_zero(v)));
        let report = curvature_summary(&g, &ones(3)).unwrap();
        assert!(report.flat);
        assert_eq!(report.constant_curvature, Some(rint(0)));
    }

    #[test]
    fn su2_biinvariant_connection_is_half_the_bracket() {
        let g = su2();
        let coeffs = levi_civita(&g, &ones(3)).unwrap();
        check_connection_invariants(&g, &coeffs);
        // nabla_X Y = Z = [X,Y]/2.
        assert_eq!(coeffs.nabla(0, 1), &[rint(0), rint(0), rint(1)][..]);
        for i in 0..3 {
            for j in 0..3 {
                let half_bracket: Vec<Rat> =
                    g.bracket_basis(i, j).iter().map(|e| e / rint(2)).collect();
                assert_eq!(coeffs.nabla(i, j), half_bracket.as_slice());
            }
        }
        let report = curvature_summary(&g, &ones(3)).unwrap();
        assert_eq!(report.constant_curvature, Some(rint(1)));
        assert!(!report.flat);
        // Biinvariant sectional curvature: |[X,Y]|^2 / 4 on orthonormal planes.
        for ((i, j), k) in &report.sectional {
            let b = g.bracket_basis(*i, *j);
            let norm_sq: Rat = b.iter().map(|e| e * e).sum();
            assert_eq!(k, &(norm_sq / rint(4)));
        }
    }

    #[test]
    fn hyperbolic_plane_connection_and_curvature() {
        for rho in [1i64, 2] {
            let g = h2(rho);
            let coeffs = levi_civita(&g, &ones(2)).unwrap();
            check_connection_invariants(&g, &coeffs);
            // nabla_X anything = 0, nabla_Y X = -rho*Y, nabla_Y Y = rho*X.
            assert!(vec_is_zero(coeffs.nabla(0, 0)));
            assert!(vec_is_zero(coeffs.nabla(0, 1)));
            assert_eq!(coeffs.nabla(1, 0), &[rint(0), rint(-rho)][..]);
            assert_eq!(coeffs.nabla(1, 1), &[rint(rho), rint(0)][..]);
            let report = curvature_summary(&g, &ones(2)).unwrap();
            assert_eq!(report.constant_curvature, Some(rint(-rho * rho)));
            assert_eq!(report.sectional, vec![((0, 1), rint(-rho * rho))]);
        }
    }

    #[test]
    fn weights_must_be_positive() {
        let g = su2();
        assert_eq!(
            levi_civita(&g, &[rint(1), rint(0), rint(1)]).unwrap_err(),
            CurvatureError::NonPositiveWeight
        );
        assert_eq!(
            levi_civita(&g, &[rint(1)]).unwrap_err(),
            CurvatureError::WeightCountMismatch
        );
    }

    #[test]
    fn riemann_symmetries_and_first_bianchi() {
        let g = su2();
        for weights in [ones(3), vec![rat(1, 2), rint(3), rat(7, 5)]] {
            let coeffs = levi_civita(&g, &weights).unwrap();
            check_connection_invariants(&g, &coeffs);
            let r = riemann(&g, &coeffs);
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        // First Bianchi identity.
                        let mut sum = zeros(3);
                        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                            for (x, y) in sum.iter_mut().zip(r.apply(a, b, c)) {
                                *x += y;
                            }
                        }
                        assert!(vec_is_zero(&sum));
                        for l in 0..3 {
                            assert_eq!(r.pairing(i, j, k, l), -r.pairing(j, i, k, l));
                            assert_eq!(r.pairing(i, j, k, l), r.pairing(k, l, i, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn biinvariant_metric_identities_survive_uniform_scaling() {
        // For an ad-invariant metric the connection stays half the bracket
        // and the sectional curvature is |[X,Y]|^2 / (4 |X|^2 |Y|^2). A
        // uniformly scaled metric on su(2) is still ad-invariant: scaling
        // by 3 turns the curvature-1 sphere into a curvature-1/3 one.
        let g = su2();
        let w = vec![rint(3); 3];
        let coeffs = levi_civita(&g, &w).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let half: Vec<Rat> = g.bracket_basis(i, j).iter().map(|e| e / rint(2)).collect();
                assert_eq!(coeffs.nabla(i, j), half.as_slice());
            }
        }
        let report = curvature_summary(&g, &w).unwrap();
        assert_eq!(report.constant_curvature, Some(rat(1, 3)));
        for ((i, j), k) in &report.sectional {
            let b = g.bracket_basis(*i, *j);
            let norm_sq: Rat = b.iter().map(|e| e * e * rint(3)).sum();
            assert_eq!(k, &(norm_sq / (rint(4) * rint(3) * rint(3))));
        }
    }

    #[test]
    fn quotient_geometry_requires_riemannian_and_an_ideal() {
        // Conformal non-Riemannian example: the check fires before the
        // ideal test.
        let g = LieAlgebra::from_bracket_table(
            labels(&["A", "B", "X", "Y"]),
            &[
                (0, 1, vec![rint(-2), rint(0), rint(0), rint(0)]),
                (1, 2, vec![rint(1), rint(0), rint(1), rint(1)]),
                (1, 3, vec![rint(0), rint(0), rint(-1), rint(1)]),
                (2, 3, vec![rint(1), rint(0), rint(0), rint(0)]),
            ],
        )
        .unwrap();
        let vertical = Subspace::span(4, &[basis_vec(4, 0), basis_vec(4, 1)]);
        let split = MetricSplit::new(g, Mat::identity(4), vertical).unwrap();
        assert_eq!(
            quotient_geometry(&split).unwrap_err(),
            CurvatureError::NotRiemannian
        );
    }

    #[test]
    fn quotient_of_a_central_direction() {
        // Heisenberg algebra [X,Y] = Z with vertical span{Z}: the quotient
        // is the flat abelian plane.
        let g = LieAlgebra::from_bracket_table(
            labels(&["X", "Y", "Z"]),
            &[(0, 1, vec![rint(0), rint(0), rint(1)])],
        )
        .unwrap();
        let vertical = Subspace::span(3, &[basis_vec(3, 2)]);
        let split = MetricSplit::new(g, Mat::identity(3), vertical).unwrap();
        assert!(split.is_riemannian() && split.is_normal());
        let report = quotient_geometry(&split).unwrap();
        assert!(report.flat);
        let (q, weights) = quotient_metric_algebra(&split).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(weights, ones(2));
        assert!(q.classify().unwrap().is_abelian);
    }
}
