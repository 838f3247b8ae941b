//! Lie algebra structure: brackets, Jacobi validation, the Killing form,
//! derived and lower central series, the radical, classification flags,
//! ideals and quotients.
//!
//! A [`LieAlgebra`] is a basis together with an antisymmetric structure
//! tensor `c`, where `[e_i, e_j] = sum_k c[i][j][k] e_k`. Antisymmetry is
//! enforced at construction. The Jacobi identity is diagnosed rather than
//! enforced, so a mistyped bracket table produces a report instead of a
//! refusal.

use crate::linalg::{
    basis_vec, coords_in_basis, vec_add_scaled, vec_is_zero, zeros, Mat, Rat, Subspace,
};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure tensor is not antisymmetric at ({i},{j},{k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("not a Lie algebra: {0} Jacobi violation(s)")]
    InvalidAlgebra(usize),
    #[error("the subspace is not an ideal")]
    NotAnIdeal,
    #[error("the given vectors are not a vector-space complement")]
    NotAComplement,
    #[error("the span of the given vectors is not closed under the bracket")]
    NotBracketClosed,
}

/// A violated Jacobi triple `(i, j, l)` with the exact residual of the
/// cyclic sum `[e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub residual: Vec<Rat>,
}

/// Boolean structure flags together with the dimension of the radical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationFlags {
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_solvable: bool,
    pub is_semisimple: bool,
    pub is_perfect: bool,
    pub radical_dim: usize,
}

/// A finite-dimensional Lie algebra given by labelled basis vectors and an
/// antisymmetric structure tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    c: Vec<Vec<Vec<Rat>>>,
}

impl LieAlgebra {
    /// Builds an algebra from a full structure tensor, checking antisymmetry.
    pub fn from_structure_tensor(
        labels: Vec<String>,
        c: Vec<Vec<Vec<Rat>>>,
    ) -> Result<LieAlgebra, LieError> {
        let m = labels.len();
        if c.len() != m
            || c.iter()
                .any(|p| p.len() != m || p.iter().any(|q| q.len() != m))
        {
            return Err(LieError::DimensionMismatch {
                expected: m,
                got: c.len(),
            });
        }
        for i in 0..m {
            for j in 0..=i {
                for k in 0..m {
                    if c[i][j][k] != -&c[j][i][k] {
                        return Err(LieError::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(LieAlgebra { labels, c })
    }

    /// Builds an algebra from bracket values for pairs `i < j`; the mirrored
    /// entries are filled in automatically. Unstated pairs are zero.
    pub fn from_bracket_table(
        labels: Vec<String>,
        entries: &[(usize, usize, Vec<Rat>)],
    ) -> Result<LieAlgebra, LieError> {
        let m = labels.len();
        let mut c = vec![vec![zeros(m); m]; m];
        for (i, j, value) in entries {
            let (i, j) = (*i, *j);
            if i >= m || j >= m || i == j {
                return Err(LieError::DimensionMismatch {
                    expected: m,
                    got: i.max(j) + 1,
                });
            }
            if value.len() != m {
                return Err(LieError::DimensionMismatch {
                    expected: m,
                    got: value.len(),
                });
            }
            c[i][j] = value.clone();
            c[j][i] = value.iter().map(|e| -e).collect();
        }
        LieAlgebra::from_structure_tensor(labels, c)
    }

    /// The abelian algebra on the given labels.
    pub fn abelian(labels: Vec<String>) -> LieAlgebra {
        let m = labels.len();
        LieAlgebra {
            labels,
            c: vec![vec![zeros(m); m]; m],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn structure_tensor(&self) -> &Vec<Vec<Vec<Rat>>> {
        &self.c
    }

    /// The bracket `[e_i, e_j]` of two basis vectors, as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rat] {
        &self.c[i][j]
    }

    /// Bilinear, antisymmetric bracket of two coefficient vectors.
    pub fn bracket(&self, v: &[Rat], w: &[Rat]) -> Result<Vec<Rat>, LieError> {
        let m = self.dim();
        for u in [v, w] {
            if u.len() != m {
                return Err(LieError::DimensionMismatch {
                    expected: m,
                    got: u.len(),
                });
            }
        }
        let mut out = zeros(m);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                let f = vi * wj;
                vec_add_scaled(&mut out, &f, &self.c[i][j]);
            }
        }
        Ok(out)
    }

    /// Matrix of `w -> [v, w]` in the basis of the algebra.
    pub fn ad_matrix(&self, v: &[Rat]) -> Result<Mat, LieError> {
        let m = self.dim();
        let mut out = Mat::zero(m, m);
        for j in 0..m {
            let col = self.bracket(v, &basis_vec(m, j))?;
            for (k, e) in col.into_iter().enumerate() {
                out.set(k, j, e);
            }
        }
        Ok(out)
    }

    /// Checks the Jacobi identity on all basis triples `i < j < l` and
    /// returns the violations with their exact residuals. Empty output means
    /// the structure tensor defines a Lie algebra.
    pub fn validate_jacobi(&self) -> Vec<JacobiViolation> {
        let m = self.dim();
        let mut violations = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for l in j + 1..m {
                    let mut residual = zeros(m);
                    for (a, b) in [(i, j), (j, l), (l, i)] {
                        let other = i + j + l - a - b;
                        let inner = &self.c[b][other];
                        for (k, e) in inner.iter().enumerate() {
                            if !e.is_zero() {
                                vec_add_scaled(&mut residual, e, &self.c[a][k]);
                            }
                        }
                    }
                    if !vec_is_zero(&residual) {
                        violations.push(JacobiViolation { i, j, l, residual });
                    }
                }
            }
        }
        violations
    }

    /// The Killing form `B[i][j] = trace(ad_{e_i} ad_{e_j})`.
    pub fn killing_form(&self) -> Mat {
        let m = self.dim();
        let mut b = Mat::zero(m, m);
        // trace(ad_i ad_j) = sum_{k,l} c[j][k][l] c[i][l][k]
        for i in 0..m {
            for j in 0..=i {
                let mut acc = Rat::zero();
                for k in 0..m {
                    for l in 0..m {
                        let a = &self.c[j][k][l];
                        if a.is_zero() {
                            continue;
                        }
                        let d = &self.c[i][l][k];
                        if !d.is_zero() {
                            acc += a * d;
                        }
                    }
                }
                b.set(i, j, acc.clone());
                b.set(j, i, acc);
            }
        }
        b
    }

    /// Span of all brackets `[a, b]` with `a` in `s` and `b` in `t`.
    pub fn bracket_of_subspaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for a in s.basis_rows() {
            for b in t.basis_rows() {
                vectors.push(self.bracket(a, b).expect("matching dimensions"));
            }
        }
        Subspace::span(self.dim(), &vectors)
    }

    /// The derived subalgebra `[g, g]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_of_subspaces(&full, &full)
    }

    /// Derived series starting at `[g, g]`, listed until it stabilizes. The
    /// algebra is solvable exactly when the last term is zero.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![self.derived_subalgebra()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_of_subspaces(last, last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Lower central series starting at `[g, g]`, listed until it stabilizes.
    /// The algebra is nilpotent exactly when the last term is zero.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut series = vec![self.derived_subalgebra()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_of_subspaces(&full, last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// The radical: the maximal solvable ideal, computed by Cartan's
    /// criterion as `{x : B(x, [g,g]) = 0}` with `B` the Killing form.
    pub fn radical(&self) -> Subspace {
        let derived = self.derived_subalgebra();
        if derived.dim() == 0 {
            return Subspace::full(self.dim());
        }
        let b = self.killing_form();
        let rad = derived.basis().mul(&b).kernel();
        debug_assert!(self.is_ideal(&rad).expect("ambient matches"));
        debug_assert!(self.subspace_is_solvable(&rad));
        rad
    }

    fn subspace_is_solvable(&self, s: &Subspace) -> bool {
        let mut current = s.clone();
        loop {
            let next = self.bracket_of_subspaces(&current, &current);
            if next.dim() == 0 {
                return true;
            }
            if next == current {
                return false;
            }
            current = next;
        }
    }

    /// Computes all classification flags. Requires a valid Lie algebra;
    /// returns [`LieError::InvalidAlgebra`] when the Jacobi identity fails.
    pub fn classify(&self) -> Result<ClassificationFlags, LieError> {
        let violations = self.validate_jacobi();
        if !violations.is_empty() {
            return Err(LieError::InvalidAlgebra(violations.len()));
        }
        let is_abelian = self.c.iter().all(|p| p.iter().all(|q| vec_is_zero(q)));
        let derived = self.derived_series();
        let is_solvable = derived.last().expect("nonempty").dim() == 0;
        let lower = self.lower_central_series();
        let is_nilpotent = lower.last().expect("nonempty").dim() == 0;
        let is_perfect = self.derived_subalgebra().dim() == self.dim();
        let is_semisimple = self.killing_form().rank() == self.dim();
        let radical_dim = self.radical().dim();
        // Cartan's criterion makes these routes agree; they are computed
        // independently and cross-checked by the test suite as well.
        debug_assert_eq!(is_semisimple, radical_dim == 0);
        debug_assert!(!is_semisimple || is_perfect);
        debug_assert!(!is_abelian || is_solvable);
        debug_assert!(!is_nilpotent || is_solvable);
        Ok(ClassificationFlags {
            is_abelian,
            is_nilpotent,
            is_solvable,
            is_semisimple,
            is_perfect,
            radical_dim,
        })
    }

    /// Whether `[s, s]` is contained in `s`.
    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool, LieError> {
        self.check_ambient(s)?;
        for a in s.basis_rows() {
            for b in s.basis_rows() {
                if !s.contains(&self.bracket(a, b)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `[g, s]` is contained in `s`.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool, LieError> {
        self.check_ambient(s)?;
        for i in 0..self.dim() {
            for b in s.basis_rows() {
                if !s.contains(&self.bracket(&basis_vec(self.dim(), i), b)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_ambient(&self, s: &Subspace) -> Result<(), LieError> {
        if s.ambient_dim() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                got: s.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Structure constants of a bracket-closed span, written in the given
    /// ordered basis. With a full basis this is a plain change of basis.
    pub fn restricted_to_basis(
        &self,
        basis: &[Vec<Rat>],
        labels: Vec<String>,
    ) -> Result<LieAlgebra, LieError> {
        let d = basis.len();
        if labels.len() != d {
            return Err(LieError::DimensionMismatch {
                expected: d,
                got: labels.len(),
            });
        }
        let mut c = vec![vec![zeros(d); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let w = self.bracket(&basis[i], &basis[j])?;
                let coords = coords_in_basis(basis, &w).ok_or(LieError::NotBracketClosed)?;
                c[i][j] = coords.clone();
                c[j][i] = coords.iter().map(|e| -e).collect();
            }
        }
        LieAlgebra::from_structure_tensor(labels, c)
    }

    /// Quotient by the ideal `k`, realized on the given ordered complement.
    ///
    /// The structure constants of the result are the complement components
    /// of brackets of complement vectors, so picking the horizontal basis of
    /// a metric split reproduces the projected horizontal constants exactly.
    pub fn quotient_algebra(
        &self,
        k: &Subspace,
        complement: &[Vec<Rat>],
        labels: Vec<String>,
    ) -> Result<LieAlgebra, LieError> {
        self.check_ambient(k)?;
        if !self.is_ideal(k)? {
            return Err(LieError::NotAnIdeal);
        }
        let n = complement.len();
        if k.dim() + n != self.dim() {
            return Err(LieError::NotAComplement);
        }
        let mut adapted = k.basis_rows().to_vec();
        adapted.extend_from_slice(complement);
        if Mat::from_rows(adapted.clone()).rank() != self.dim() {
            return Err(LieError::NotAComplement);
        }
        let mut c = vec![vec![zeros(n); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let w = self.bracket(&complement[i], &complement[j])?;
                let coords = coords_in_basis(&adapted, &w).expect("adapted basis spans");
                let tail = coords[k.dim()..].to_vec();
                c[i][j] = tail.clone();
                c[j][i] = tail.iter().map(|e| -e).collect();
            }
        }
        let quotient = LieAlgebra::from_structure_tensor(labels, c)?;
        let violations = quotient.validate_jacobi();
        if !violations.is_empty() {
            return Err(LieError::InvalidAlgebra(violations.len()));
        }
        Ok(quotient)
    }
}

/// Whether the Killing form of `k` is diagonal with nonzero entries in the
/// basis `k` is presented in. Returns the diagonal entries either way.
pub fn killing_diagonal_entries(k: &LieAlgebra) -> (bool, Vec<Rat>) {
    let b = k.killing_form();
    let d = k.dim();
    let mut diagonal = true;
    for i in 0..d {
        for j in 0..d {
            if i != j && !b.at(i, j).is_zero() {
                diagonal = false;
            }
        }
        if b.at(i, i).is_zero() {
            diagonal = false;
        }
    }
    let entries = (0..d).map(|i| b.at(i, i).clone()).collect();
    (diagonal, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rint};

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// su(2) with [X,Y]=2Z, [Z,X]=2Y, [Y,Z]=2X.
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

    /// sl(2,R) with [X,Y]=-2Z, [Z,X]=2Y, [Y,Z]=2X.
    fn sl2() -> LieAlgebra {
        LieAlgebra::from_bracket_table(
            labels(&["X", "Y", "Z"]),
            &[
                (0, 1, vec![rint(0), rint(0), rint(-2)]),
                (0, 2, vec![rint(0), rint(-2), rint(0)]),
                (1, 2, vec![rint(2), rint(0), rint(0)]),
            ],
        )
        .unwrap()
    }

    /// Four-dimensional solvable algebra on {A,B,X,Y} with [A,B]=-2A,
    /// [B,X]=A+X+Y, [B,Y]=-X+Y, [X,Y]=A.
    fn solvable4() -> LieAlgebra {
        LieAlgebra::from_bracket_table(
            labels(&["A", "B", "X", "Y"]),
            &[
                (0, 1, vec![rint(-2), rint(0), rint(0), rint(0)]),
                (1, 2, vec![rint(1), rint(0), rint(1), rint(1)]),
                (1, 3, vec![rint(0), rint(0), rint(-1), rint(1)]),
                (2, 3, vec![rint(1), rint(0), rint(0), rint(0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn su2_bracket_table() {
        let g = su2();
        let xy = g.bracket(&basis_vec(3, 0), &basis_vec(3, 1)).unwrap();
        assert_eq!(xy, vec![rint(0), rint(0), rint(2)]);
        // Antisymmetry on an arbitrary vector.
        let v = vec![rat(1, 2), rint(3), rat(-5, 7)];
        assert!(vec_is_zero(&g.bracket(&v, &v).unwrap()));
    }

    #[test]
    fn su2_ad_matrix() {
        let g = su2();
        let ad_x = g.ad_matrix(&basis_vec(3, 0)).unwrap();
        // ad_X: X -> 0, Y -> 2Z, Z -> -2Y.
        assert_eq!(
            ad_x.mul_vec(&basis_vec(3, 1)),
            vec![rint(0), rint(0), rint(2)]
        );
        assert_eq!(
            ad_x.mul_vec(&basis_vec(3, 2)),
            vec![rint(0), rint(-2), rint(0)]
        );
        assert!(vec_is_zero(&ad_x.mul_vec(&basis_vec(3, 0))));
    }

    #[test]
    fn abelian_ad_is_zero() {
        let g = LieAlgebra::abelian(labels(&["X", "Y", "Z"]));
        assert!(g.ad_matrix(&[rint(1), rint(2), rint(3)]).unwrap().is_zero());
    }

    #[test]
    fn jacobi_holds_for_su2_and_fails_when_corrupted() {
        assert!(su2().validate_jacobi().is_empty());
        assert!(LieAlgebra::abelian(labels(&["X", "Y", "Z"]))
            .validate_jacobi()
            .is_empty());
        // Corrupt [X,Y] from 2Z to 2Z + X.
        let bad = LieAlgebra::from_bracket_table(
            labels(&["X", "Y", "Z"]),
            &[
                (0, 1, vec![rint(1), rint(0), rint(2)]),
                (0, 2, vec![rint(0), rint(-2), rint(0)]),
                (1, 2, vec![rint(2), rint(0), rint(0)]),
            ],
        )
        .unwrap();
        let violations = bad.validate_jacobi();
        assert!(!violations.is_empty());
        assert!(violations.iter().any(|v| (v.i, v.j, v.l) == (0, 1, 2)));
        assert!(violations.iter().all(|v| !vec_is_zero(&v.residual)));
    }

    #[test]
    fn killing_forms_of_the_three_dimensional_simples() {
        // Independent oracle: build each ad matrix column by column from the
        // bracket table and trace the products by hand loops.
        let oracle = |g: &LieAlgebra| {
            let m = g.dim();
            let mut b = Mat::zero(m, m);
            for i in 0..m {
                for j in 0..m {
                    let adi = g.ad_matrix(&basis_vec(m, i)).unwrap();
                    let adj = g.ad_matrix(&basis_vec(m, j)).unwrap();
                    b.set(i, j, adi.mul(&adj).trace());
                }
            }
            b
        };
        let su2 = su2();
        let b = su2.killing_form();
        assert_eq!(b, Mat::diagonal(&[rint(-8), rint(-8), rint(-8)]));
        assert_eq!(b, oracle(&su2));

        let sl2 = sl2();
        let b = sl2.killing_form();
        assert_eq!(b, Mat::diagonal(&[rint(8), rint(8), rint(-8)]));
        assert_eq!(b, oracle(&sl2));
        assert_eq!(b.signature().unwrap(), (2, 1, 0));
        assert_eq!(b.rank(), 3);
    }

    #[test]
    fn abelian_killing_form_vanishes_and_kernel_is_everything() {
        let g = LieAlgebra::abelian(labels(&["X", "Y", "Z"]));
        let b = g.killing_form();
        assert!(b.is_zero());
        assert_eq!(b.kernel(), Subspace::full(3));
    }

    #[test]
    fn killing_ad_invariance_on_basis_triples() {
        for g in [su2(), sl2(), solvable4()] {
            let b = g.killing_form();
            let m = g.dim();
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        let xy = g.bracket(&basis_vec(m, x), &basis_vec(m, y)).unwrap();
                        let yz = g.bracket(&basis_vec(m, y), &basis_vec(m, z)).unwrap();
                        let lhs = crate::linalg::form_pair(&b, &xy, &basis_vec(m, z));
                        let rhs = crate::linalg::form_pair(&b, &basis_vec(m, x), &yz);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn derived_series_of_abelian_and_solvable4() {
        let g = LieAlgebra::abelian(labels(&["X", "Y", "Z"]));
        let series = g.derived_series();
        assert_eq!(series.len(), 1);
        assert_eq!(series[0].dim(), 0);

        let g = solvable4();
        let series = g.derived_series();
        // [g,g] = span{A, X, Y}: spanned by -2A, A+X+Y, -X+Y, A.
        let expected = Subspace::span(4, &[basis_vec(4, 0), basis_vec(4, 2), basis_vec(4, 3)]);
        assert_eq!(series[0], expected);
        assert_eq!(series[0].dim(), 3);
        assert_eq!(series.last().unwrap().dim(), 0);

        // su(2) is perfect: the series never shrinks.
        let series = su2().derived_series();
        assert_eq!(series[0].dim(), 3);
        assert_eq!(series.len(), 1);
    }

    #[test]
    fn series_are_monotone_and_stabilize_quickly() {
        for g in [su2(), sl2(), solvable4()] {
            for series in [g.derived_series(), g.lower_central_series()] {
                assert!(series.len() <= g.dim());
                for pair in series.windows(2) {
                    assert!(pair[0].contains_subspace(&pair[1]));
                    assert!(pair[0].dim() > pair[1].dim());
                }
            }
        }
    }

    #[test]
    fn radical_of_semisimple_is_trivial() {
        assert_eq!(su2().radical().dim(), 0);
        assert_eq!(sl2().radical().dim(), 0);
        assert_eq!(solvable4().radical().dim(), 4);
    }

    #[test]
    fn classification_flags() {
        let flags = LieAlgebra::abelian(labels(&["X", "Y", "Z"]))
            .classify()
            .unwrap();
        assert!(flags.is_abelian && flags.is_solvable && flags.is_nilpotent);
        assert!(!flags.is_semisimple && !flags.is_perfect);
        assert_eq!(flags.radical_dim, 3);

        let flags = su2().classify().unwrap();
        assert!(flags.is_semisimple && flags.is_perfect);
        assert!(!flags.is_solvable && !flags.is_nilpotent && !flags.is_abelian);
        assert_eq!(flags.radical_dim, 0);

        let flags = solvable4().classify().unwrap();
        assert!(flags.is_solvable && !flags.is_nilpotent && !flags.is_perfect);
    }

    #[test]
    fn classify_rejects_invalid_tables() {
        let bad = LieAlgebra::from_bracket_table(
            labels(&["X", "Y", "Z"]),
            &[
                (0, 1, vec![rint(1), rint(0), rint(2)]),
                (0, 2, vec![rint(0), rint(-2), rint(0)]),
                (1, 2, vec![rint(2), rint(0), rint(0)]),
            ],
        )
        .unwrap();
        assert!(matches!(bad.classify(), Err(LieError::InvalidAlgebra(_))));
    }

    #[test]
    fn subalgebra_and_ideal_tests() {
        let g = solvable4();
        // span{A} is an ideal; span{A,B} is a subalgebra but not an ideal.
        let a = Subspace::span(4, &[basis_vec(4, 0)]);
        assert!(g.is_subalgebra(&a).unwrap());
        assert!(g.is_ideal(&a).unwrap());
        let ab = Subspace::span(4, &[basis_vec(4, 0), basis_vec(4, 1)]);
        assert!(g.is_subalgebra(&ab).unwrap());
        assert!(!g.is_ideal(&ab).unwrap());
        assert!(g.is_ideal(&Subspace::full(4)).unwrap());
        // span{X,Y} is not a subalgebra: [X,Y] = A.
        let xy = Subspace::span(4, &[basis_vec(4, 2), basis_vec(4, 3)]);
        assert!(!g.is_subalgebra(&xy).unwrap());
    }

    #[test]
    fn quotient_by_the_derived_ideal_of_solvable4() {
        let g = solvable4();
        let k = Subspace::span(4, &[basis_vec(4, 0)]);
        let q = g
            .quotient_algebra(
                &k,
                &[basis_vec(4, 1), basis_vec(4, 2), basis_vec(4, 3)],
                labels(&["B", "X", "Y"]),
            )
            .unwrap();
        // [B,X] = X+Y, [B,Y] = -X+Y, [X,Y] = 0 after killing the A part.
        assert_eq!(q.bracket_basis(0, 1), &[rint(0), rint(1), rint(1)][..]);
        assert_eq!(q.bracket_basis(0, 2), &[rint(0), rint(-1), rint(1)][..]);
        assert!(vec_is_zero(q.bracket_basis(1, 2)));
        assert!(q.validate_jacobi().is_empty());
    }

    #[test]
    fn quotient_requires_an_ideal_and_a_complement() {
        let g = solvable4();
        let ab = Subspace::span(4, &[basis_vec(4, 0), basis_vec(4, 1)]);
        let err = g
            .quotient_algebra(
                &ab,
                &[basis_vec(4, 2), basis_vec(4, 3)],
                labels(&["X", "Y"]),
            )
            .unwrap_err();
        assert_eq!(err, LieError::NotAnIdeal);
        let a = Subspace::span(4, &[basis_vec(4, 0)]);
        let err = g
            .quotient_algebra(
                &a,
                &[basis_vec(4, 0), basis_vec(4, 2), basis_vec(4, 3)],
                labels(&["A", "X", "Y"]),
            )
            .unwrap_err();
        assert_eq!(err, LieError::NotAComplement);
    }

    #[test]
    fn restriction_to_a_skewed_basis_moves_the_killing_form() {
        // su(2) on the basis {X, X+Y, Z}: the Killing form picks up an
        // off-diagonal entry, so diagonality fails.
        let g = su2();
        let basis = vec![
            basis_vec(3, 0),
            vec![rint(1), rint(1), rint(0)],
            basis_vec(3, 2),
        ];
        let h = g
            .restricted_to_basis(&basis, labels(&["u", "v", "w"]))
            .unwrap();
        let (diag, entries) = killing_diagonal_entries(&h);
        assert!(!diag);
        assert_eq!(h.killing_form().at(0, 1), &rint(-8));
        assert_eq!(entries[0], rint(-8));
        let (diag, entries) = killing_diagonal_entries(&g);
        assert!(diag);
        assert_eq!(entries, vec![rint(-8), rint(-8), rint(-8)]);
    }

    #[test]
    fn restriction_requires_bracket_closure() {
        let g = solvable4();
        // span{X, Y} is not closed: [X,Y] = A.
        let err = g
            .restricted_to_basis(&[basis_vec(4, 2), basis_vec(4, 3)], labels(&["X", "Y"]))
            .unwrap_err();
        assert_eq!(err, LieError::NotBracketClosed);
    }
}
