//! Small dense linear algebra for desk-scale games.
//!
//! Everything here is direct and deterministic: Gaussian elimination with
//! partial pivoting, scaling-and-squaring matrix exponential, cyclic Jacobi
//! for symmetric spectra, and a characteristic-polynomial / Hessenberg-QR
//! pair for general spectra.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{check_len, Error, Result};

/// Row-major dense matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// All-zero `rows × cols` matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// `n × n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Matrix::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Build from nested rows. Fails when rows are ragged.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            check_len("matrix row", n_cols, row.as_ref().len())?;
            data.extend_from_slice(row.as_ref());
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    /// Build from a row-major slice.
    pub fn from_row_slice(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        check_len("matrix data", rows * cols, data.len())?;
        Ok(Matrix {
            rows,
            cols,
            data: data.to_vec(),
        })
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `true` when rows == cols.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rows as owned vectors, for serialization.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major backing storage.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Transpose.
    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len("matrix-vector product", self.cols, x.len())?;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Matrix product.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        check_len("matrix product", self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        check_len("matrix sum rows", self.rows, other.rows)?;
        check_len("matrix sum cols", self.cols, other.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Multiply every entry by `s`.
    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// Induced infinity norm (largest absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| a.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest `|a_ij - a_ji|`; infinite for non-square matrices.
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Replace each off-diagonal pair by its average.
    pub fn symmetrize(&mut self) {
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let avg = 0.5 * (self[(i, j)] + self[(j, i)]);
                self[(i, j)] = avg;
                self[(j, i)] = avg;
            }
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Relative pivot threshold: a pivot below `PIVOT_RTOL × max|a_ij|` is
/// treated as singular.
pub const PIVOT_RTOL: f64 = 1e-12;

/// Solve `a·x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::invalid("linear solve needs a square matrix"));
    }
    let n = a.rows();
    check_len("right-hand side", n, b.len())?;
    let threshold = PIVOT_RTOL * a.max_abs();
    let mut m = a.clone();
    let mut x = b.to_vec();

    for col in 0..n {
        let (piv_row, piv_abs) = (col..n)
            .map(|r| (r, m[(r, col)].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_abs <= threshold || piv_abs == 0.0 {
            return Err(Error::Singular {
                stage: col,
                pivot: piv_abs,
            });
        }
        if piv_row != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(piv_row, j)];
                m[(piv_row, j)] = tmp;
            }
            x.swap(col, piv_row);
        }
        let pivot = m[(col, col)];
        for r in (col + 1)..n {
            let factor = m[(r, col)] / pivot;
            if factor == 0.0 {
                continue;
            }
            m[(r, col)] = 0.0;
            for j in (col + 1)..n {
                m[(r, j)] -= factor * m[(col, j)];
            }
            x[r] -= factor * x[col];
        }
    }

    for i in (0..n).rev() {
        let tail: f64 = ((i + 1)..n).map(|j| m[(i, j)] * x[j]).sum();
        x[i] = (x[i] - tail) / m[(i, i)];
    }
    Ok(x)
}

const EXPM_TERMS: usize = 13;

/// Matrix exponential by scaling and squaring a 13-term Taylor series.
///
/// The scaling exponent `s` is the smallest with `‖a‖∞ / 2ˢ < 0.5`.
pub fn expm(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::invalid("matrix exponential needs a square matrix"));
    }
    let n = a.rows();
    let norm = a.norm_inf();
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm >= 0.5 {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let x = a.scale(libm::ldexp(1.0, -(squarings as i32)));

    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..EXPM_TERMS {
        term = term.matmul(&x)?.scale(1.0 / k as f64);
        sum = sum.add(&term)?;
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum)?;
    }
    Ok(sum)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending.
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::invalid("symmetric eigenvalues need a square matrix"));
    }
    let n = a.rows();
    let mut m = a.clone();
    m.symmetrize();
    let scale = libm::sqrt(m.as_slice().iter().map(|v| v * v).sum::<f64>());

    for _sweep in 0..100 {
        let off = libm::sqrt(
            (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| m[(i, j)] * m[(i, j)])
                .sum::<f64>(),
        );
        if off <= 1e-15 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Eigenvalues of a general real matrix.
///
/// Up to 4×4 the roots of the characteristic polynomial are taken; larger
/// matrices go through Hessenberg reduction and shifted QR.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::invalid("eigenvalues need a square matrix"));
    }
    if a.rows() <= 4 {
        Ok(polynomial_roots(&characteristic_polynomial(a)?))
    } else {
        hessenberg_qr(a)
    }
}

/// Coefficients `c₀..cₙ₋₁` of the monic characteristic polynomial
/// `zⁿ + cₙ₋₁zⁿ⁻¹ + … + c₀`, by Faddeev–LeVerrier.
pub fn characteristic_polynomial(a: &Matrix) -> Result<Vec<f64>> {
    let n = a.rows();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.matmul(&m)?;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        let am = a.matmul(&next)?;
        let trace: f64 = (0..n).map(|i| am[(i, i)]).sum();
        coeffs[n - k] = -trace / k as f64;
        m = next;
    }
    coeffs.truncate(n);
    Ok(coeffs)
}

/// Roots of the monic polynomial with lower coefficients `coeffs`
/// (Durand–Kerner iteration).
fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len();
    if n == 0 {
        return Vec::new();
    }
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(1.0, 0.0);
        for &c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    // Cauchy bound on root magnitude.
    let radius = 1.0 + coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();

    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step <= 1e-15 * radius {
            break;
        }
    }
    roots
}

fn hessenberg_qr(a: &Matrix) -> Result<Vec<Complex64>> {
    let n = a.rows();
    let mut h = a.clone();

    // Gaussian reduction to upper Hessenberg form with pivoting.
    for m in 1..n.saturating_sub(1) {
        let mut x: f64 = 0.0;
        let mut piv = m;
        for j in m..n {
            if h[(j, m - 1)].abs() > x.abs() {
                x = h[(j, m - 1)];
                piv = j;
            }
        }
        if piv != m {
            for j in (m - 1)..n {
                let t = h[(piv, j)];
                h[(piv, j)] = h[(m, j)];
                h[(m, j)] = t;
            }
            for j in 0..n {
                let t = h[(j, piv)];
                h[(j, piv)] = h[(j, m)];
                h[(j, m)] = t;
            }
        }
        if x != 0.0 {
            for i in (m + 1)..n {
                let mut y = h[(i, m - 1)];
                if y != 0.0 {
                    y /= x;
                    h[(i, m - 1)] = 0.0;
                    for j in m..n {
                        h[(i, j)] -= y * h[(m, j)];
                    }
                    for j in 0..n {
                        h[(j, m)] += y * h[(j, i)];
                    }
                }
            }
        }
    }

    let mut wr = vec![Complex64::new(0.0, 0.0); n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += h[(i, j)].abs();
        }
    }
    let eps = f64::EPSILON;
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    let (mut x, mut y, mut z, mut w);

    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l > 0 {
                let mut s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h[(l, l - 1)].abs() <= eps * s {
                    h[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = h[(nu, nu)];
            if l == nu {
                wr[nu] = Complex64::new(x + t, 0.0);
                nn -= 1;
            } else {
                y = h[(nu - 1, nu - 1)];
                w = h[(nu, nu - 1)] * h[(nu - 1, nu)];
                if l + 1 == nu {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = libm::sqrt(q.abs());
                    x += t;
                    if q >= 0.0 {
                        z = p + z.copysign(p);
                        wr[nu - 1] = Complex64::new(x + z, 0.0);
                        wr[nu] = Complex64::new(x + z, 0.0);
                        if z != 0.0 {
                            wr[nu] = Complex64::new(x - w / z, 0.0);
                        }
                    } else {
                        wr[nu] = Complex64::new(x + p, -z);
                        wr[nu - 1] = Complex64::new(x + p, z);
                    }
                    nn -= 2;
                } else {
                    if its == 60 {
                        return Err(Error::StabilityPrecondition(
                            "QR eigenvalue iteration did not converge".into(),
                        ));
                    }
                    if its == 10 || its == 20 {
                        t += x;
                        for i in 0..=nu {
                            h[(i, i)] -= x;
                        }
                        let s = h[(nu, nu - 1)].abs() + h[(nu - 1, nu - 2)].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    let mut m = nu - 2;
                    loop {
                        z = h[(m, m)];
                        r = x - z;
                        let s = y - z;
                        p = (r * s - w) / h[(m + 1, m)] + h[(m, m + 1)];
                        q = h[(m + 1, m + 1)] - z - r - s;
                        r = h[(m + 2, m + 1)];
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = h[(m, m - 1)].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs());
                        if u <= eps * v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in m..(nu - 1) {
                        h[(i + 2, i)] = 0.0;
                        if i != m {
                            h[(i + 2, i - 1)] = 0.0;
                        }
                    }
                    let mut k = m;
                    while k < nu {
                        if k != m {
                            p = h[(k, k - 1)];
                            q = h[(k + 1, k - 1)];
                            r = 0.0;
                            if k + 1 != nu {
                                r = h[(k + 2, k - 1)];
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = libm::sqrt(p * p + q * q + r * r).copysign(p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    h[(k, k - 1)] = -h[(k, k - 1)];
                                }
                            } else {
                                h[(k, k - 1)] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nu {
                                p = h[(k, j)] + q * h[(k + 1, j)];
                                if k + 1 != nu {
                                    p += r * h[(k + 2, j)];
                                    h[(k + 2, j)] -= p * z;
                                }
                                h[(k + 1, j)] -= p * y;
                                h[(k, j)] -= p * x;
                            }
                            let mmin = if nu < k + 3 { nu } else { k + 3 };
                            for i in l..=mmin {
                                p = x * h[(i, k)] + y * h[(i, k + 1)];
                                if k + 1 != nu {
                                    p += z * h[(i, k + 2)];
                                    h[(i, k + 2)] -= p * r;
                                }
                                h[(i, k + 1)] -= p * q;
                                h[(i, k)] -= p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if (l as isize) + 1 >= nn {
                break;
            }
        }
    }
    Ok(wr)
}
