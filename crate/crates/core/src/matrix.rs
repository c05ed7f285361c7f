//! Matrix value types and the elementary transforms every other module
//! consumes: diagonal lifting, Hadamard products, convex mixing, necessary
//! compatibility bounds and the positive-semidefiniteness screen.

use crate::{Error, Result, MAX_DIM};

/// Tolerance for symmetry and unit-diagonal validation. Entries passing
/// within this tolerance are snapped exactly so downstream linear programs
/// see an exact unit diagonal.
pub const VALIDATION_TOL: f64 = 1e-12;

/// Eigenvalue floor for the positive-semidefiniteness screen.
pub const PSD_EIGENVALUE_TOL: f64 = -1e-9;

/// Dense square matrix with entries in `[0,1]`, the raw candidate shape
/// before any tail-dependence validation.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareUnitMatrix {
    dim: usize,
    entries: Vec<f64>, // row-major
}

impl SquareUnitMatrix {
    /// Builds from rows, rejecting non-square shapes, dimensions outside
    /// `1..=MAX_DIM` and entries outside `[0,1]`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::BadParam("matrix must have at least one row".into()));
        }
        if dim > MAX_DIM {
            return Err(Error::DimTooLarge { dim, max: MAX_DIM });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimMismatch { left: dim, right: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) || v.is_nan() {
                    return Err(Error::OutOfRange { i, j, value: v });
                }
                entries.push(v);
            }
        }
        Ok(Self { dim, entries })
    }

    /// Builds entrywise from a function; the closure must return values in `[0,1]`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let rows: Vec<Vec<f64>> = (0..dim).map(|i| (0..dim).map(|j| f(i, j)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| self.entries[i * self.dim..(i + 1) * self.dim].to_vec()).collect()
    }

    /// Largest absolute entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { left: self.dim, right: other.dim });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub(crate) fn from_raw_unchecked(dim: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }
}

/// Symmetric matrix with exact unit diagonal: the shape of a candidate or
/// realized tail-dependence matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TailMatrix {
    base: SquareUnitMatrix,
}

impl TailMatrix {
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.base.entry(i, j)
    }

    pub fn as_square(&self) -> &SquareUnitMatrix {
        &self.base
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.base.rows()
    }

    /// Builds from the strict upper triangle, forcing exact symmetry and a
    /// unit diagonal. The closure must return values in `[0,1]`.
    pub fn from_offdiag_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadParam("matrix must have at least one row".into()));
        }
        if dim > MAX_DIM {
            return Err(Error::DimTooLarge { dim, max: MAX_DIM });
        }
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
            for j in (i + 1)..dim {
                let v = f(i, j);
                if !(0.0..=1.0).contains(&v) || v.is_nan() {
                    return Err(Error::OutOfRange { i, j, value: v });
                }
                entries[i * dim + j] = v;
                entries[j * dim + i] = v;
            }
        }
        Ok(Self { base: SquareUnitMatrix::from_raw_unchecked(dim, entries) })
    }
}

/// Validates a raw candidate as a tail-dependence matrix shape: symmetric
/// within tolerance, diagonal within tolerance of 1. On success mirror
/// entries are averaged and the diagonal snapped exactly to 1.
pub fn validate_tail_candidate(m: &SquareUnitMatrix) -> Result<TailMatrix> {
    let d = m.dim();
    for i in 0..d {
        for j in (i + 1)..d {
            let delta = (m.entry(i, j) - m.entry(j, i)).abs();
            if delta > VALIDATION_TOL {
                return Err(Error::NotSymmetric { i, j, delta });
            }
        }
    }
    for i in 0..d {
        let v = m.entry(i, i);
        if (v - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::BadDiagonal { i, value: v });
        }
    }
    TailMatrix::from_offdiag_fn(d, |i, j| {
        let avg = 0.5 * (m.entry(i, j) + m.entry(j, i));
        avg.clamp(0.0, 1.0)
    })
}

/// Sets every diagonal entry to 1, leaving off-diagonal entries unchanged.
pub fn lift_diag(m: &SquareUnitMatrix) -> SquareUnitMatrix {
    let d = m.dim();
    SquareUnitMatrix::from_fn(d, |i, j| if i == j { 1.0 } else { m.entry(i, j) })
        .expect("lifting preserves the [0,1] range")
}

/// Entrywise (Hadamard) product. Tail-dependence matrices are closed under
/// this operation.
pub fn hadamard(a: &TailMatrix, b: &TailMatrix) -> Result<TailMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch { left: a.dim(), right: b.dim() });
    }
    TailMatrix::from_offdiag_fn(a.dim(), |i, j| a.entry(i, j) * b.entry(i, j))
}

/// Convex combination `t*a + (1-t)*b`.
pub fn convex_mix(a: &TailMatrix, b: &TailMatrix, t: f64) -> Result<TailMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch { left: a.dim(), right: b.dim() });
    }
    if !(0.0..=1.0).contains(&t) || t.is_nan() {
        return Err(Error::BadWeight(t));
    }
    TailMatrix::from_offdiag_fn(a.dim(), |i, j| {
        (t * a.entry(i, j) + (1.0 - t) * b.entry(i, j)).clamp(0.0, 1.0)
    })
}

/// One entry violating the moment bounds that every expectation of a binary
/// outer product must satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsViolation {
    pub i: usize,
    pub j: usize,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Checks the necessary bounds
/// `max(b_ii + b_jj - 1, 0) <= b_ij <= min(b_ii, b_jj)` for every unordered
/// pair. An empty report means the necessary condition passes; it is not
/// sufficient for compatibility.
pub fn frechet_bernoulli_bounds_check(b: &SquareUnitMatrix) -> Vec<BoundsViolation> {
    let d = b.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let lower = (b.entry(i, i) + b.entry(j, j) - 1.0).max(0.0);
            let upper = b.entry(i, i).min(b.entry(j, j));
            let v = b.entry(i, j);
            if v < lower - VALIDATION_TOL || v > upper + VALIDATION_TOL {
                out.push(BoundsViolation { i, j, value: v, lower, upper });
            }
        }
    }
    out
}

/// Positive-semidefiniteness screen: `true` iff the smallest eigenvalue is
/// at least [`PSD_EIGENVALUE_TOL`]. A `false` result proves the matrix is
/// not a tail-dependence matrix; `true` is only necessary.
pub fn psd_necessary_check(m: &TailMatrix) -> bool {
    smallest_eigenvalue_symmetric(m.as_square()) >= PSD_EIGENVALUE_TOL
}

/// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
/// Dimensions are capped at `MAX_DIM`, where this converges in a handful of
/// sweeps to near machine precision.
pub(crate) fn smallest_eigenvalue_symmetric(m: &SquareUnitMatrix) -> f64 {
    let d = m.dim();
    let mut a: Vec<f64> = (0..d * d).map(|k| m.entry(k / d, k % d)).collect();
    if d == 1 {
        return a[0];
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                off += a[i * d + j] * a[i * d + j];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..d - 1 {
            for q in (p + 1)..d {
                let apq = a[p * d + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let akp = a[k * d + p];
                    let akq = a[k * d + q];
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for k in 0..d {
                    let apk = a[p * d + k];
                    let aqk = a[q * d + k];
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..d).map(|i| a[i * d + i]).fold(f64::INFINITY, f64::min)
}

/// Length-`d` vector over `{0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    bits: Vec<u8>,
}

impl BinaryVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::BadParam("binary vector must be non-empty".into()));
        }
        if bits.len() > MAX_DIM {
            return Err(Error::DimTooLarge { dim: bits.len(), max: MAX_DIM });
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::BadParam("binary vector components must be 0 or 1".into()));
        }
        Ok(Self { bits })
    }

    /// Decodes an integer into bits: bit `i` of `code` becomes component `i`.
    pub fn from_code(code: u32, dim: usize) -> Self {
        let bits = (0..dim).map(|i| ((code >> i) & 1) as u8).collect();
        Self { bits }
    }

    pub fn code(&self) -> u32 {
        self.bits
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i))
    }

    pub fn dim(&self) -> usize {
        self.bits.len()
    }

    pub fn is_set(&self, i: usize) -> bool {
        self.bits[i] == 1
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Standard basis vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut bits = vec![0u8; dim];
        bits[i] = 1;
        Self { bits }
    }

    /// Vector with 1s exactly at positions `i` and `j` (a single 1 if `i == j`).
    pub fn pair(dim: usize, i: usize, j: usize) -> Self {
        let mut bits = vec![0u8; dim];
        bits[i] = 1;
        bits[j] = 1;
        Self { bits }
    }
}

/// Nonnegative `d×m` matrix with row sums at most 1; the expectation of a
/// random binary matrix with mutually exclusive rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SubstochasticMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl SubstochasticMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::BadParam("substochastic matrix must have rows".into()));
        }
        if nrows > MAX_DIM {
            return Err(Error::DimTooLarge { dim: nrows, max: MAX_DIM });
        }
        let ncols = rows[0].len();
        if ncols == 0 {
            return Err(Error::BadParam("substochastic matrix must have columns".into()));
        }
        if ncols > MAX_DIM {
            return Err(Error::DimTooLarge { dim: ncols, max: MAX_DIM });
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimMismatch { left: ncols, right: row.len() });
            }
            let mut sum = 0.0;
            for (j, &v) in row.iter().enumerate() {
                if v < 0.0 || v.is_nan() {
                    return Err(Error::OutOfRange { i, j, value: v });
                }
                sum += v;
            }
            if sum > 1.0 + 1e-12 {
                return Err(Error::BadParam(format!(
                    "row {i} of a substochastic matrix sums to {sum} > 1"
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { rows: nrows, cols: ncols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, k: usize) -> f64 {
        self.entries[i * self.cols + k]
    }
}

// Named matrix families. These are shapes only; whether a given parameter
// yields a *compatible* matrix is decided by the solver.

/// Equicorrelation shape: 1 on the diagonal, `alpha` elsewhere.
pub fn equicorrelation_matrix(dim: usize, alpha: f64) -> Result<TailMatrix> {
    check_unit_param("alpha", alpha)?;
    TailMatrix::from_offdiag_fn(dim, |_, _| alpha)
}

/// Autoregressive shape: `alpha^|i-j|`.
pub fn ar1_matrix(dim: usize, alpha: f64) -> Result<TailMatrix> {
    check_unit_param("alpha", alpha)?;
    TailMatrix::from_offdiag_fn(dim, |i, j| alpha.powi((j as i32 - i as i32).abs()))
}

/// Moving-average shape: `alpha` on the first off-diagonals, 0 beyond.
pub fn ma1_matrix(dim: usize, alpha: f64) -> Result<TailMatrix> {
    check_unit_param("alpha", alpha)?;
    TailMatrix::from_offdiag_fn(dim, |i, j| if j - i == 1 { alpha } else { 0.0 })
}

/// One asset coupled to `d-1` mutually tail-independent assets: identity
/// block with `alpha` along the last row and column.
pub fn gamma_matrix(dim: usize, alpha: f64) -> Result<TailMatrix> {
    check_unit_param("alpha", alpha)?;
    TailMatrix::from_offdiag_fn(dim, |_, j| if j == dim - 1 { alpha } else { 0.0 })
}

fn check_unit_param(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) || v.is_nan() {
        return Err(Error::BadParam(format!("{name} = {v} must lie in [0,1]")));
    }
    Ok(())
}
