//! Dense complex matrices with an LU-based determinant and inverse.
//!
//! This is the independent side of every closed-form check: determinants and
//! inverses computed here never touch the sigma-product formulas.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative pivot threshold for [`lu_inverse`].
pub const SINGULAR_PIVOT_TOL: f64 = 1e-14;

/// Reference magnitudes below this switch residuals from relative to absolute.
pub const RELATIVE_FLOOR: f64 = 1e-10;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        let data = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        Self { n, data }
    }

    /// Fallible variant of [`CMatrix::from_fn`]; stops at the first error.
    pub fn try_from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize) -> Result<Complex64>,
    ) -> Result<Self> {
        assert!(n >= 1, "matrix dimension must be at least 1");
        let data = (0..n * n)
            .map(|idx| f(idx / n, idx % n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    /// Convenience constructor from real entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for v in self.row(i) {
                write!(f, "{:>12.5e}{:+.5e}i ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn check_same(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(())
}

/// Matrix product, i-k-j loop order.
pub fn mat_mul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_same(a, b)?;
    let n = a.n;
    let mut out = CMatrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[(i, k)];
            let brow = b.row(k);
            let orow = &mut out.data[i * n..(i + 1) * n];
            for (o, &bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

pub fn mat_sub(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_same(a, b)?;
    Ok(CMatrix {
        n: a.n,
        data: a.data.iter().zip(&b.data).map(|(x, y)| x - y).collect(),
    })
}

/// In-place LU factorization `P A = L U` with partial pivoting.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: CMatrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl LuFactors {
    pub fn factor(a: &CMatrix) -> Self {
        let n = a.n;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, pmag) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            if pmag == 0.0 {
                continue;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let ukj = lu[(k, j)];
                    lu[(i, j)] -= factor * ukj;
                }
            }
        }
        Self { lu, perm, swaps }
    }

    pub fn pivots(&self) -> Vec<Complex64> {
        self.lu.diag()
    }

    pub fn det(&self) -> Complex64 {
        let sign = if self.swaps % 2 == 0 { 1.0 } else { -1.0 };
        self.pivots()
            .into_iter()
            .fold(Complex64::new(sign, 0.0), |acc, p| acc * p)
    }

    /// Solves `A x = b` using the stored factors.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

/// Determinant via pivoted LU. Singular input yields zero.
pub fn lu_det(a: &CMatrix) -> Complex64 {
    LuFactors::factor(a).det()
}

/// Inverse via pivoted LU.
///
/// Fails with [`Error::SingularMatrix`] when a pivot falls below
/// `SINGULAR_PIVOT_TOL * ||a||_inf`.
pub fn lu_inverse(a: &CMatrix) -> Result<CMatrix> {
    let n = a.n;
    let lu = LuFactors::factor(a);
    let threshold = SINGULAR_PIVOT_TOL * a.norm_inf();
    for (step, p) in lu.pivots().iter().enumerate() {
        if !(p.norm() > threshold) {
            return Err(Error::SingularMatrix {
                step,
                pivot: p.norm(),
                threshold,
            });
        }
    }
    let mut inv = CMatrix::zeros(n);
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        e.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        e[j] = Complex64::new(1.0, 0.0);
        for (i, v) in lu.solve(&e).into_iter().enumerate() {
            inv[(i, j)] = v;
        }
    }
    Ok(inv)
}

/// `max_ij |a_ij - b_ij|`
pub fn max_abs_residual(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    check_same(a, b)?;
    Ok(a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// [`max_abs_residual`] divided by the largest entry of `b`, or left absolute
/// when that entry is below [`RELATIVE_FLOOR`].
pub fn rel_residual(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let abs = max_abs_residual(a, b)?;
    Ok(relative_to(abs, b.max_abs()))
}

pub(crate) fn relative_to(abs: f64, reference: f64) -> f64 {
    if reference < RELATIVE_FLOOR {
        abs
    } else {
        abs / reference
    }
}

/// Sparsity patterns accepted by [`structure_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    UnitUpper,
    UnitLower,
    Diagonal,
    Identity,
}

/// True iff entries outside the pattern are below `tol` in magnitude and, for
/// the unit patterns, diagonal entries are within `tol` of one.
pub fn structure_check(a: &CMatrix, kind: Structure, tol: f64) -> bool {
    structure_deviation(a, kind) < tol
}

/// Largest violation of the pattern, as used by [`structure_check`].
pub fn structure_deviation(a: &CMatrix, kind: Structure) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let mut worst: f64 = 0.0;
    for i in 0..a.n {
        for j in 0..a.n {
            let v = a[(i, j)];
            let dev = match kind {
                Structure::UnitUpper | Structure::UnitLower | Structure::Identity if i == j => {
                    (v - one).norm()
                }
                Structure::Diagonal if i == j => 0.0,
                Structure::UnitUpper if i < j => 0.0,
                Structure::UnitLower if i > j => 0.0,
                _ => v.norm(),
            };
            worst = worst.max(dev);
        }
    }
    worst
}
