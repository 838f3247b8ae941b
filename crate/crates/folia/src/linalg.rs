//! Exact rational vectors, matrices and subspaces.
//!
//! Every scalar in this crate is a [`Rat`], an arbitrary-precision rational
//! number. There are no tolerances anywhere: two values are equal exactly or
//! they are different. Subspaces are kept in reduced row-echelon form so that
//! equality of spans is structural equality.

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. Always stored reduced, with a positive denominator.
pub type Rat = BigRational;

/// Shorthand for the rational `n/d`.
///
/// ```
/// use folia::{rat, rint};
/// assert_eq!(rat(2, 4), rat(1, 2));
/// assert_eq!(rat(3, 1), rint(3));
/// ```
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The zero vector of length `n`.
pub fn zeros(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

/// The `i`-th standard basis vector of length `n`.
pub fn basis_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

/// `a += c * b`, elementwise.
pub fn vec_add_scaled(a: &mut [Rat], c: &Rat, b: &[Rat]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += c * y;
    }
}

/// Evaluates the bilinear form `form` on the pair `(v, w)`.
pub fn form_pair(form: &Mat, v: &[Rat], w: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            if !wj.is_zero() {
                acc += vi * form.at(i, j) * wj;
            }
        }
    }
    acc
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bilinear form is not symmetric")]
    NotSymmetric,
    #[error("degenerate form: isotropic vector encountered during orthogonalization")]
    DegenerateForm,
    #[error("matrix is not square")]
    NotSquare,
}

/// Dense matrix of exact rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: Vec<Vec<Rat>>,
    cols: usize,
}

impl Mat {
    /// Builds a matrix from its rows. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Mat {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat { rows, cols }
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rint(n)).collect())
                .collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows: vec![zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Rat]) -> Mat {
        let mut m = Mat::zero(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.rows[i][i] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rat) {
        self.rows[i][j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                t.rows[j][i] = e.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.nrows(), "inner dimensions differ");
        let mut out = Mat::zero(self.nrows(), other.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.cols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols() {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length differs from columns");
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Rat::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Rat {
        let n = self.nrows().min(self.cols);
        (0..n).map(|i| self.rows[i][i].clone()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows() == self.cols
            && (0..self.nrows()).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| vec_is_zero(r))
    }

    /// Reduced row-echelon form together with the pivot column indices.
    ///
    /// Pivot entries are normalized to one and their columns cleared, so the
    /// result is the canonical representative of the row span.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.rows.clone();
        let nr = self.nrows();
        let nc = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let Some(p) = (r..nr).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].clone().recip();
            for e in m[r].iter_mut() {
                if !e.is_zero() {
                    *e *= &inv;
                }
            }
            for i in 0..nr {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    let (head, tail) = m.split_at_mut(r.max(i));
                    let (row_i, row_r) = if i < r {
                        (&mut head[i], &tail[0])
                    } else {
                        (&mut tail[0], &head[r])
                    };
                    for (x, y) in row_i.iter_mut().zip(row_r.iter()) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Mat::from_rows(m), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{v : self * v = 0}`, canonicalized.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let nc = self.cols;
        let mut in_pivots = vec![false; nc];
        for &p in &pivots {
            in_pivots[p] = true;
        }
        let mut vectors = Vec::new();
        for f in (0..nc).filter(|&c| !in_pivots[c]) {
            let mut v = zeros(nc);
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(row, f).clone();
            }
            vectors.push(v);
        }
        Subspace::span(nc, &vectors)
    }

    /// One exact solution of `self * x = rhs`, or `None` when inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.nrows(), rhs.len(), "rhs length differs from rows");
        let mut aug = self.rows.clone();
        for (row, b) in aug.iter_mut().zip(rhs) {
            row.push(b.clone());
        }
        let (r, pivots) = Mat::from_rows(aug).rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = zeros(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by Gaussian elimination. Square matrices only.
    pub fn determinant(&self) -> Result<Rat, LinalgError> {
        if self.nrows() != self.cols {
            return Err(LinalgError::NotSquare);
        }
        let n = self.cols;
        let mut m = self.rows.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                m.swap(c, p);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].clone().recip();
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let sub = &f * &m[c][j];
                    m[i][j] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// Sylvester test: symmetric with all leading principal minors positive.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        for k in 1..=self.nrows() {
            let minor = Mat::from_rows(self.rows[..k].iter().map(|r| r[..k].to_vec()).collect());
            if !minor.determinant().expect("square").is_positive() {
                return false;
            }
        }
        true
    }

    /// Signature `(positive, negative, zero)` of a symmetric matrix, computed
    /// by exact congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize, usize), LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        let n = self.nrows();
        let mut m = self.rows.clone();
        let mut i = 0;
        while i < n {
            if m[i][i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(i, j);
                    for row in m.iter_mut() {
                        row.swap(i, j);
                    }
                } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                    // No nonzero diagonal left: fold column j into i, which
                    // makes m[i][i] = 2*m[i][j] != 0 in characteristic zero.
                    for k in 0..n {
                        let add = m[k][j].clone();
                        m[k][i] += add;
                    }
                    for k in 0..n {
                        let add = m[j][k].clone();
                        m[i][k] += add;
                    }
                } else {
                    i += 1;
                    continue;
                }
            }
            let pivot = m[i][i].clone();
            for j in i + 1..n {
                if m[j][i].is_zero() {
                    continue;
                }
                let f = &m[j][i] / &pivot;
                for k in 0..n {
                    let sub = &f * &m[i][k];
                    m[j][k] -= sub;
                }
                for k in 0..n {
                    let sub = &f * &m[k][i];
                    m[k][j] -= sub;
                }
            }
            i += 1;
        }
        let mut pos = 0;
        let mut neg = 0;
        let mut zero = 0;
        for (k, row) in m.iter().enumerate() {
            if row[k].is_positive() {
                pos += 1;
            } else if row[k].is_negative() {
                neg += 1;
            } else {
                zero += 1;
            }
        }
        Ok((pos, neg, zero))
    }
}

/// A linear subspace of `Q^n`, stored as a reduced row-echelon basis.
///
/// The stored basis is the canonical representative of the span, so two
/// subspaces are equal (via `==`) exactly when they describe the same span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    /// Span of the given vectors. Dependent vectors are allowed; the stored
    /// basis is the RREF of the input.
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Subspace {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient");
        }
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: Mat::zero(0, ambient),
            };
        }
        let (r, pivots) = Mat::from_rows(vectors.to_vec()).rref();
        let basis = if pivots.is_empty() {
            Mat::zero(0, ambient)
        } else {
            Mat::from_rows(r.rows()[..pivots.len()].to_vec())
        };
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace::span(ambient, &[])
    }

    pub fn full(ambient: usize) -> Subspace {
        let rows: Vec<_> = (0..ambient).map(|i| basis_vec(ambient, i)).collect();
        Subspace::span(ambient, &rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_rows(&self) -> &[Vec<Rat>] {
        self.basis.rows()
    }

    /// Exact membership test.
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient");
        let mut w = v.to_vec();
        for row in self.basis.rows() {
            let p = row.iter().position(|e| !e.is_zero()).expect("nonzero row");
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        vec_is_zero(&w)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_rows().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis_rows().to_vec();
        rows.extend_from_slice(other.basis_rows());
        Subspace::span(self.ambient, &rows)
    }
}

/// Expresses `v` in the given (independent) basis, or `None` when `v` is not
/// in the span.
pub fn coords_in_basis(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    if basis.is_empty() {
        return vec_is_zero(v).then(Vec::new);
    }
    let n = basis[0].len();
    let mut columns = Mat::zero(n, basis.len());
    for (c, b) in basis.iter().enumerate() {
        for (r, e) in b.iter().enumerate() {
            columns.set(r, c, e.clone());
        }
    }
    columns.solve(v)
}

/// Gram-Schmidt without normalization, against an arbitrary symmetric form.
///
/// Returns a basis of the same span whose vectors are pairwise orthogonal for
/// `form`. No square roots are taken, so the output vectors are orthogonal
/// but not unit. Fails with [`LinalgError::DegenerateForm`] when a nonzero
/// residual vector pairs to zero with itself (an isotropic vector), which
/// cannot happen for definite forms.
pub fn orthogonalize(vectors: &Subspace, form: &Mat) -> Result<Vec<Vec<Rat>>, LinalgError> {
    orthogonalize_vectors(vectors.basis_rows(), form)
}

/// [`orthogonalize`] on an explicit ordered list of vectors. Dependent input
/// vectors reduce to zero and are dropped.
pub fn orthogonalize_vectors(
    vectors: &[Vec<Rat>],
    form: &Mat,
) -> Result<Vec<Vec<Rat>>, LinalgError> {
    if !form.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let uv = form_pair(form, u, &w);
            if !uv.is_zero() {
                let uu = form_pair(form, u, u);
                let f = -(uv / uu);
                vec_add_scaled(&mut w, &f, u);
            }
        }
        if vec_is_zero(&w) {
            continue;
        }
        if form_pair(form, &w, &w).is_zero() {
            return Err(LinalgError::DegenerateForm);
        }
        out.push(w);
    }
    Ok(out)
}
