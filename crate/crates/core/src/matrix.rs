//! Dense exact matrices, the split form of a parameter array, ordered
//! eigenbases by exact elimination, and the matrix route to a_i and a*_i.
//!
//! The route here never touches the closed-form diagonal formulas in
//! [`crate::array`]; it is the independent check on them.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::array::{ensure_valid, ParameterArray};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, FieldError};

/// Environment variable that turns on the second-normalization recheck in
/// [`oracle_a`] for release builds.
pub const DEBUG_ORACLE_ENV: &str = "LPKIT_DEBUG_ORACLE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: FieldDescriptor,
    n: usize,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn zeros(field: FieldDescriptor, n: usize) -> Self {
        ExactMatrix { field, n, entries: vec![field.zero(); n * n] }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = ExactMatrix::zeros(field, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldDescriptor, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension(format!("row of length {} in a {n}x{n} matrix", row.len())));
            }
            for x in row {
                if x.descriptor() != field {
                    return Err(FieldError::DescriptorMismatch(field, x.descriptor()).into());
                }
                entries.push(x);
            }
        }
        Ok(ExactMatrix { field, n, entries })
    }

    /// Builds a matrix from rows of element strings.
    pub fn parse(field: FieldDescriptor, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|s| field.parse(s).map_err(Error::from)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        ExactMatrix::from_rows(field, rows)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &FieldElement {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: FieldElement) {
        self.entries[row * self.n + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<FieldElement>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> Vec<FieldElement> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    fn same_shape(&self, other: &ExactMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(FieldError::DescriptorMismatch(self.field, other.field).into());
        }
        if self.n != other.n {
            return Err(Error::Dimension(format!("{}x{} vs {}x{}", self.n, self.n, other.n, other.n)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(other)?;
        let n = self.n;
        let mut out = ExactMatrix::zeros(self.field, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field.zero();
                for k in 0..n {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `self − λI`
    pub fn shift(&self, lambda: &FieldElement) -> ExactMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.set(i, i, self.get(i, i) - lambda);
        }
        out
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        solve(self, &ExactMatrix::identity(self.field, self.n))
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for row in self.rows() {
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Row-reduces `m` in place to reduced echelon form, choosing as pivot the
/// first nonzero entry scanning downward. Returns the pivot columns.
fn row_reduce(m: &mut [Vec<FieldElement>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of the right kernel of `m`, one vector per free column.
pub fn kernel(m: &ExactMatrix) -> Vec<Vec<FieldElement>> {
    let n = m.n;
    let mut rows = m.rows();
    let pivots = row_reduce(&mut rows, n);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![m.field.zero(); n];
            v[free] = m.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[r][free];
            }
            v
        })
        .collect()
}

/// Solves `a · X = b` exactly, column by column.
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.same_shape(b)?;
    let n = a.n;
    let mut aug: Vec<Vec<FieldElement>> = a
        .rows()
        .into_iter()
        .zip(b.rows())
        .map(|(mut left, right)| {
            left.extend(right);
            left
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    let rows = aug.into_iter().map(|row| row[n..].to_vec()).collect();
    ExactMatrix::from_rows(a.field, rows)
}

/// How an eigenvector is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    FirstNonzero,
    LastNonzero,
}

/// Columns are the eigenvectors for `eigenvalues` in the given order, each
/// scaled so its first nonzero coordinate is 1.
pub fn eigenbasis_ordered(m: &ExactMatrix, eigenvalues: &[FieldElement]) -> Result<ExactMatrix> {
    eigenbasis_normalized(m, eigenvalues, Normalization::FirstNonzero)
}

pub fn eigenbasis_normalized(
    m: &ExactMatrix,
    eigenvalues: &[FieldElement],
    normalization: Normalization,
) -> Result<ExactMatrix> {
    let n = m.n;
    if eigenvalues.len() != n {
        return Err(Error::Dimension(format!("{} eigenvalues for a {n}x{n} matrix", eigenvalues.len())));
    }
    for (j, lambda) in eigenvalues.iter().enumerate() {
        if eigenvalues[..j].contains(lambda) {
            return Err(Error::RepeatedEigenvalue(lambda.to_string()));
        }
    }
    let mut p = ExactMatrix::zeros(m.field, n);
    for (j, lambda) in eigenvalues.iter().enumerate() {
        let basis = kernel(&m.shift(lambda));
        if basis.len() != 1 {
            return Err(Error::Eigenspace { eigenvalue: lambda.to_string(), dimension: basis.len() });
        }
        let v = &basis[0];
        let anchor = match normalization {
            Normalization::FirstNonzero => v.iter().find(|x| !x.is_zero()),
            Normalization::LastNonzero => v.iter().rev().find(|x| !x.is_zero()),
        }
        .expect("kernel vectors are nonzero")
        .clone();
        for (i, x) in v.iter().enumerate() {
            p.set(i, j, x / &anchor);
        }
    }
    Ok(p)
}

/// `P⁻¹ M P`
pub fn conjugate(m: &ExactMatrix, p: &ExactMatrix) -> Result<ExactMatrix> {
    solve(p, &m.mul(p)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TridiagonalProfile {
    pub diag: Vec<FieldElement>,
    pub sub: Vec<FieldElement>,
    pub sup: Vec<FieldElement>,
    pub irreducible: bool,
}

/// Splits a tridiagonal matrix into its three bands. Anything nonzero
/// off the bands is an error.
pub fn tridiagonal_profile(m: &ExactMatrix) -> Result<TridiagonalProfile> {
    let n = m.n;
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) > 1 && !m.get(i, j).is_zero() {
                return Err(Error::NotTridiagonal { row: i, col: j, value: m.get(i, j).to_string() });
            }
        }
    }
    let sub: Vec<FieldElement> = (1..n).map(|i| m.get(i, i - 1).clone()).collect();
    let sup: Vec<FieldElement> = (1..n).map(|i| m.get(i - 1, i).clone()).collect();
    let irreducible = sub.iter().chain(&sup).all(|x| !x.is_zero());
    Ok(TridiagonalProfile { diag: m.diagonal(), sub, sup, irreducible })
}

/// The split-form pair: A lower bidiagonal with diagonal θ and ones below,
/// A* upper bidiagonal with diagonal θ* and φ_1..φ_d above.
pub fn build_split_form(pa: &ParameterArray) -> Result<(ExactMatrix, ExactMatrix)> {
    ensure_valid(pa)?;
    let field = pa.field();
    let n = pa.d() + 1;
    let mut a = ExactMatrix::zeros(field, n);
    let mut a_star = ExactMatrix::zeros(field, n);
    for i in 0..n {
        a.set(i, i, pa.theta()[i].clone());
        a_star.set(i, i, pa.theta_star()[i].clone());
        if i >= 1 {
            a.set(i, i - 1, field.one());
            a_star.set(i - 1, i, pa.varphi_at(i).clone());
        }
    }
    Ok((a, a_star))
}

/// Every matrix on the way from the split form to the two tridiagonal
/// representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMatrices {
    #[serde(rename = "A")]
    pub a: ExactMatrix,
    #[serde(rename = "A_star")]
    pub a_star: ExactMatrix,
    /// Eigenbasis of A* ordered by θ*.
    #[serde(rename = "P_star")]
    pub p_star: ExactMatrix,
    /// A in the basis `p_star`.
    #[serde(rename = "T")]
    pub t: ExactMatrix,
    /// Eigenbasis of A ordered by θ.
    #[serde(rename = "P")]
    pub p: ExactMatrix,
    /// A* in the basis `p`.
    #[serde(rename = "T_star")]
    pub t_star: ExactMatrix,
}

pub fn oracle_matrices(pa: &ParameterArray) -> Result<OracleMatrices> {
    oracle_matrices_normalized(pa, Normalization::FirstNonzero)
}

fn oracle_matrices_normalized(pa: &ParameterArray, normalization: Normalization) -> Result<OracleMatrices> {
    let (a, a_star) = build_split_form(pa)?;
    let p_star = eigenbasis_normalized(&a_star, pa.theta_star(), normalization)?;
    let t = conjugate(&a, &p_star)?;
    let p = eigenbasis_normalized(&a, pa.theta(), normalization)?;
    let t_star = conjugate(&a_star, &p)?;
    Ok(OracleMatrices { a, a_star, p_star, t, p, t_star })
}

fn irreducible_diagonal(m: &ExactMatrix, name: &str) -> Result<Vec<FieldElement>> {
    let profile = tridiagonal_profile(m)?;
    if !profile.irreducible {
        return Err(Error::Violation(format!("{name} is tridiagonal but not irreducible")));
    }
    Ok(profile.diag)
}

fn recheck_enabled() -> bool {
    cfg!(debug_assertions) || std::env::var(DEBUG_ORACLE_ENV).is_ok_and(|v| v == "1")
}

/// a_i and a*_i as diagonal entries of the tridiagonal representations,
/// computed by exact elimination.
///
/// In debug builds, or with `LPKIT_DEBUG_ORACLE=1`, the diagonals are
/// recomputed with eigenvectors scaled by their last nonzero coordinate
/// and must not change.
pub fn oracle_a(pa: &ParameterArray) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    oracle_a_with(pa, recheck_enabled())
}

pub fn oracle_a_with(pa: &ParameterArray, recheck: bool) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let mats = oracle_matrices(pa)?;
    let a = irreducible_diagonal(&mats.t, "T")?;
    let a_star = irreducible_diagonal(&mats.t_star, "T*")?;
    if recheck {
        let alt = oracle_matrices_normalized(pa, Normalization::LastNonzero)?;
        if alt.t.diagonal() != a || alt.t_star.diagonal() != a_star {
            return Err(Error::Violation("diagonal entries depend on eigenvector scaling".into()));
        }
    }
    Ok((a, a_star))
}
