//! Finite distributions of binary vectors and of binary matrices with
//! mutually exclusive rows, their named constructions (independent margins,
//! product-window autoregression, overlapping-interval moving average,
//! partition coupling, substochastic routing) and exact moments computed by
//! support enumeration.

use std::collections::BTreeMap;

use crate::matrix::{BinaryVector, SquareUnitMatrix, SubstochasticMatrix};
use crate::{Error, Result, MAX_DIM};

/// Probability drift at or below this is silently renormalized; beyond it the
/// distribution is rejected.
pub const MASS_TOL: f64 = 1e-12;

/// Largest support we are willing to enumerate.
const MAX_SUPPORT: usize = 1 << MAX_DIM;

/// Finite probability mass function on `{0,1}^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliVectorDistribution {
    dim: usize,
    support: Vec<(BinaryVector, f64)>,
}

impl BernoulliVectorDistribution {
    /// Validates probabilities (nonnegative, total within [`MASS_TOL`] of 1,
    /// then renormalized), merges duplicate support vectors and sorts the
    /// support by integer code for reproducibility.
    pub fn new(dim: usize, support: Vec<(BinaryVector, f64)>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimTooLarge { dim, max: MAX_DIM });
        }
        if support.is_empty() {
            return Err(Error::BadParam("distribution support must be non-empty".into()));
        }
        let mut merged: BTreeMap<u32, f64> = BTreeMap::new();
        let mut total = 0.0;
        for (v, p) in &support {
            if v.dim() != dim {
                return Err(Error::DimMismatch { left: dim, right: v.dim() });
            }
            if *p < 0.0 || p.is_nan() {
                return Err(Error::BadParam(format!("negative probability {p}")));
            }
            total += *p;
            *merged.entry(v.code()).or_insert(0.0) += *p;
        }
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::BadProbabilityMass(total));
        }
        let support = merged
            .into_iter()
            .map(|(code, p)| (BinaryVector::from_code(code, dim), p / total))
            .collect();
        Ok(Self { dim, support })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &[(BinaryVector, f64)] {
        &self.support
    }

    /// Componentwise means `E[X_i]`.
    pub fn margins(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.dim];
        for (v, p) in &self.support {
            for i in 0..self.dim {
                if v.is_set(i) {
                    m[i] += p;
                }
            }
        }
        m
    }

    /// Exact expectation of the outer product, `B_ij = E[X_i X_j]`.
    pub fn moment_matrix(&self) -> MomentMatrix {
        let d = self.dim;
        let mut b = vec![0.0; d * d];
        for (v, p) in &self.support {
            let ones: Vec<usize> = (0..d).filter(|&i| v.is_set(i)).collect();
            for &i in &ones {
                for &j in &ones {
                    b[i * d + j] += p;
                }
            }
        }
        for x in &mut b {
            *x = x.clamp(0.0, 1.0);
        }
        let margin = (0..d).map(|i| b[i * d + i]).collect();
        MomentMatrix { base: SquareUnitMatrix::from_raw_unchecked(d, b), margin }
    }
}

/// Expectation of a binary outer product together with the first moments on
/// its diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrix {
    base: SquareUnitMatrix,
    margin: Vec<f64>,
}

impl MomentMatrix {
    pub fn base(&self) -> &SquareUnitMatrix {
        &self.base
    }

    pub fn margin(&self) -> &[f64] {
        &self.margin
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.base.entry(i, j)
    }
}

/// Independent components with the given margins; support enumerates all
/// `2^d` patterns with positive mass.
pub fn independent_x(margins: &[f64]) -> Result<BernoulliVectorDistribution> {
    let d = margins.len();
    if d == 0 || d > MAX_DIM {
        return Err(Error::DimTooLarge { dim: d, max: MAX_DIM });
    }
    for &p in margins {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::BadParam(format!("margin {p} must lie in [0,1]")));
        }
    }
    let mut support = Vec::new();
    for code in 0..(1u32 << d) {
        let mut prob = 1.0;
        for (i, &p) in margins.iter().enumerate() {
            prob *= if (code >> i) & 1 == 1 { p } else { 1.0 - p };
        }
        if prob > 0.0 {
            support.push((BinaryVector::from_code(code, d), prob));
        }
    }
    BernoulliVectorDistribution::new(d, support)
}

/// Independent components with equal margin `alpha`. The induced composite
/// copula model has an equicorrelation tail matrix with parameter `alpha`.
pub fn equicorrelation_x(dim: usize, alpha: f64) -> Result<BernoulliVectorDistribution> {
    if !(0.0..=1.0).contains(&alpha) || alpha.is_nan() {
        return Err(Error::BadParam(format!("equicorrelation requires alpha in [0,1], got {alpha}")));
    }
    independent_x(&vec![alpha; dim])
}

/// Moving products of `2d-1` independent Bernoulli(`alpha`) variables:
/// component `i` is the product of a length-`d` window starting at `i`.
/// Margins are `alpha^d` and the induced tail matrix is `alpha^|i-j|`.
/// Computed by enumeration over `{0,1}^{2d-1}`, so `d` is capped at 10.
pub fn ar1_x(dim: usize, alpha: f64) -> Result<BernoulliVectorDistribution> {
    if !(0.0..=1.0).contains(&alpha) || alpha.is_nan() {
        return Err(Error::BadParam(format!("ar1 requires alpha in [0,1], got {alpha}")));
    }
    if dim == 0 {
        return Err(Error::DimTooLarge { dim, max: 10 });
    }
    if dim > 10 {
        return Err(Error::DimTooLarge { dim, max: 10 });
    }
    let nz = 2 * dim - 1;
    let mut apow = vec![1.0; nz + 1];
    let mut bpow = vec![1.0; nz + 1];
    for k in 1..=nz {
        apow[k] = apow[k - 1] * alpha;
        bpow[k] = bpow[k - 1] * (1.0 - alpha);
    }
    let mut pmf: BTreeMap<u32, f64> = BTreeMap::new();
    for z in 0..(1u32 << nz) {
        let ones = z.count_ones() as usize;
        let prob = apow[ones] * bpow[nz - ones];
        if prob == 0.0 {
            continue;
        }
        let mut x = 0u32;
        for i in 0..dim {
            let window = ((1u32 << dim) - 1) << i;
            if z & window == window {
                x |= 1 << i;
            }
        }
        *pmf.entry(x).or_insert(0.0) += prob;
    }
    let support = pmf.into_iter().map(|(c, p)| (BinaryVector::from_code(c, dim), p)).collect();
    BernoulliVectorDistribution::new(dim, support)
}

/// Overlapping unit intervals spaced `1-alpha` apart on `[0,d]`, indicator
/// of a single uniform draw landing in each. Margins are `1/d`, adjacent
/// joint mass is `alpha/d`, and the induced tail matrix has `alpha` on the
/// first off-diagonals. Requires `alpha <= 1/2` so only neighbours overlap.
pub fn ma1_x(dim: usize, alpha: f64) -> Result<BernoulliVectorDistribution> {
    if !(0.0..=0.5).contains(&alpha) || alpha.is_nan() {
        return Err(Error::BadParam(format!("ma1 requires alpha in [0, 1/2], got {alpha}")));
    }
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::DimTooLarge { dim, max: MAX_DIM });
    }
    let d = dim as f64;
    let mut support: Vec<(BinaryVector, f64)> = Vec::new();
    // Pattern probabilities from the interval overlap geometry.
    for i in 0..dim {
        let left = if i > 0 { alpha } else { 0.0 };
        let right = if i + 1 < dim { alpha } else { 0.0 };
        let p = (1.0 - left - right) / d;
        if p > 0.0 {
            support.push((BinaryVector::unit(dim, i), p));
        }
    }
    for i in 0..dim.saturating_sub(1) {
        if alpha > 0.0 {
            support.push((BinaryVector::pair(dim, i, i + 1), alpha / d));
        }
    }
    let uncovered = (dim - 1) as f64 * alpha / d;
    if uncovered > 0.0 {
        support.push((BinaryVector::from_code(0, dim), uncovered));
    }
    if dim == 1 {
        // Single unit interval on [0,1]: the indicator is always 1.
        return BernoulliVectorDistribution::new(1, vec![(BinaryVector::unit(1, 0), 1.0)]);
    }
    BernoulliVectorDistribution::new(dim, support)
}

/// Binary `d×m` matrix value with row sums at most 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u8>, // row-major
}

impl BinaryMatrix {
    pub fn new(rows: usize, cols: usize, bits: Vec<u8>) -> Result<Self> {
        if rows == 0 || rows > MAX_DIM || cols == 0 || cols > MAX_DIM {
            return Err(Error::DimTooLarge { dim: rows.max(cols), max: MAX_DIM });
        }
        if bits.len() != rows * cols {
            return Err(Error::DimMismatch { left: rows * cols, right: bits.len() });
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::BadParam("binary matrix entries must be 0 or 1".into()));
        }
        let m = Self { rows, cols, bits };
        for i in 0..rows {
            if m.row_sum(i) > 1 {
                return Err(Error::BadParam(format!(
                    "row {i} has more than one set entry; rows must be mutually exclusive"
                )));
            }
        }
        Ok(m)
    }

    /// Matrix whose row `i` has its single 1 in `assignment[i]`, or no 1 at all.
    pub fn from_assignments(rows: usize, cols: usize, assignment: &[Option<usize>]) -> Result<Self> {
        let mut bits = vec![0u8; rows * cols];
        for (i, a) in assignment.iter().enumerate() {
            if let Some(k) = a {
                bits[i * cols + k] = 1;
            }
        }
        Self::new(rows, cols, bits)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, k: usize) -> u8 {
        self.bits[i * self.cols + k]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn row_sum(&self, i: usize) -> u8 {
        self.bits[i * self.cols..(i + 1) * self.cols].iter().sum()
    }

    /// Column of the single 1 in row `i`, if any.
    pub fn assignment(&self, i: usize) -> Option<usize> {
        (0..self.cols).find(|&k| self.entry(i, k) == 1)
    }
}

/// Finite pmf on binary `d×m` matrices with mutually exclusive rows. Row `i`
/// routes component `i` to at most one of `m` shared drivers.
#[derive(Debug, Clone, PartialEq)]
pub struct ExclusiveAssignmentDistribution {
    rows: usize,
    cols: usize,
    support: Vec<(BinaryMatrix, f64)>,
}

impl ExclusiveAssignmentDistribution {
    pub fn new(rows: usize, cols: usize, support: Vec<(BinaryMatrix, f64)>) -> Result<Self> {
        if rows == 0 || rows > MAX_DIM || cols == 0 || cols > MAX_DIM {
            return Err(Error::DimTooLarge { dim: rows.max(cols), max: MAX_DIM });
        }
        if support.is_empty() {
            return Err(Error::BadParam("distribution support must be non-empty".into()));
        }
        let mut total = 0.0;
        let mut merged: BTreeMap<BinaryMatrix, f64> = BTreeMap::new();
        for (m, p) in support {
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::DimMismatch { left: rows * cols, right: m.rows() * m.cols() });
            }
            if p < 0.0 || p.is_nan() {
                return Err(Error::BadParam(format!("negative probability {p}")));
            }
            total += p;
            *merged.entry(m).or_insert(0.0) += p;
        }
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::BadProbabilityMass(total));
        }
        let support = merged.into_iter().map(|(m, p)| (m, p / total)).collect();
        Ok(Self { rows, cols, support })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn support(&self) -> &[(BinaryMatrix, f64)] {
        &self.support
    }

    /// Entrywise mean `E[X]`, a substochastic matrix.
    pub fn mean(&self) -> Vec<Vec<f64>> {
        let mut q = vec![vec![0.0; self.cols]; self.rows];
        for (m, p) in &self.support {
            for i in 0..self.rows {
                for k in 0..self.cols {
                    if m.entry(i, k) == 1 {
                        q[i][k] += p;
                    }
                }
            }
        }
        q
    }

    /// Row sums collapsed to a binary vector distribution (valid because rows
    /// are mutually exclusive).
    pub fn collapse(&self) -> BernoulliVectorDistribution {
        let support = self
            .support
            .iter()
            .map(|(m, p)| {
                let bits = (0..self.rows).map(|i| m.row_sum(i)).collect();
                (BinaryVector::new(bits).expect("row sums are 0/1"), *p)
            })
            .collect();
        BernoulliVectorDistribution::new(self.rows, support).expect("mass preserved")
    }

    /// `E[X L X^T]` for a symmetric `m×m` matrix `L` given by an entry
    /// accessor, enumerated over the support. Returned row-major, `d×d`.
    pub fn expected_quadratic_form(&self, l: impl Fn(usize, usize) -> f64) -> Vec<Vec<f64>> {
        let d = self.rows;
        let mut out = vec![vec![0.0; d]; d];
        for (m, p) in &self.support {
            let assign: Vec<Option<usize>> = (0..d).map(|i| m.assignment(i)).collect();
            for i in 0..d {
                if let Some(k) = assign[i] {
                    for j in 0..d {
                        if let Some(h) = assign[j] {
                            out[i][j] += p * l(k, h);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Partition coupling: components `1..d-1` indicate disjoint events of mass
/// `alpha` and the last component is constant 1, packed as `d×1` matrices.
/// The lifted second moment is the gamma family shape with parameter `alpha`.
pub fn gamma_partition_x(dim: usize, alpha: f64) -> Result<ExclusiveAssignmentDistribution> {
    if dim < 2 {
        return Err(Error::BadParam("partition coupling requires d >= 2".into()));
    }
    if dim > MAX_DIM {
        return Err(Error::DimTooLarge { dim, max: MAX_DIM });
    }
    let bound = 1.0 / (dim - 1) as f64;
    if !(0.0..=1.0).contains(&alpha) || alpha.is_nan() || alpha > bound + 1e-15 {
        return Err(Error::BadParam(format!(
            "partition coupling requires alpha in [0, 1/(d-1)] = [0, {bound}], got {alpha}"
        )));
    }
    let mut support = Vec::with_capacity(dim);
    for i in 0..dim - 1 {
        let mut assignment = vec![None; dim];
        assignment[i] = Some(0);
        assignment[dim - 1] = Some(0);
        support.push((BinaryMatrix::from_assignments(dim, 1, &assignment)?, alpha));
    }
    let mut rest = vec![None; dim];
    rest[dim - 1] = Some(0);
    let rest_p = (1.0 - (dim - 1) as f64 * alpha).max(0.0);
    support.push((BinaryMatrix::from_assignments(dim, 1, &rest)?, rest_p));
    ExclusiveAssignmentDistribution::new(dim, 1, support)
}

/// Independent rows: row `i` places its single 1 in column `k` with
/// probability `q_ik` and stays empty with the residual probability. The mean
/// reproduces `q` exactly.
pub fn substochastic_x(q: &SubstochasticMatrix) -> Result<ExclusiveAssignmentDistribution> {
    let d = q.rows();
    let m = q.cols();
    // Options per row: (assignment, probability), zero-probability choices dropped.
    let mut row_options: Vec<Vec<(Option<usize>, f64)>> = Vec::with_capacity(d);
    let mut support_size = 1usize;
    for i in 0..d {
        let mut opts = Vec::new();
        let mut sum = 0.0;
        for k in 0..m {
            let p = q.entry(i, k);
            sum += p;
            if p > 0.0 {
                opts.push((Some(k), p));
            }
        }
        let none_p = 1.0 - sum;
        if none_p > 0.0 {
            opts.push((None, none_p));
        }
        if opts.is_empty() {
            return Err(Error::BadParam(format!("row {i} has no admissible assignment")));
        }
        support_size = support_size.saturating_mul(opts.len());
        if support_size > MAX_SUPPORT {
            return Err(Error::DimTooLarge { dim: support_size, max: MAX_SUPPORT });
        }
        row_options.push(opts);
    }
    let mut support = Vec::with_capacity(support_size);
    let mut assignment: Vec<Option<usize>> = vec![None; d];
    fn recurse(
        row: usize,
        prob: f64,
        row_options: &[Vec<(Option<usize>, f64)>],
        assignment: &mut Vec<Option<usize>>,
        d: usize,
        m: usize,
        out: &mut Vec<(BinaryMatrix, f64)>,
    ) {
        if row == d {
            out.push((
                BinaryMatrix::from_assignments(d, m, assignment).expect("assignments are exclusive"),
                prob,
            ));
            return;
        }
        for (a, p) in &row_options[row] {
            assignment[row] = *a;
            recurse(row + 1, prob * p, row_options, assignment, d, m, out);
        }
        assignment[row] = None;
    }
    recurse(0, 1.0, &row_options, &mut assignment, d, m, &mut support);
    ExclusiveAssignmentDistribution::new(d, m, support)
}

/// Embeds a vector distribution on the diagonal of `d×d` matrices, preserving
/// probabilities and support size.
pub fn diag_embed(w: &BernoulliVectorDistribution) -> ExclusiveAssignmentDistribution {
    let d = w.dim();
    let support = w
        .support()
        .iter()
        .map(|(v, p)| {
            let assignment: Vec<Option<usize>> =
                (0..d).map(|i| if v.is_set(i) { Some(i) } else { None }).collect();
            (BinaryMatrix::from_assignments(d, d, &assignment).expect("diagonal is exclusive"), *p)
        })
        .collect();
    ExclusiveAssignmentDistribution::new(d, d, support).expect("mass preserved")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{frechet_bernoulli_bounds_check, gamma_matrix, lift_diag};

    #[test]
    fn moment_of_constant_zero_is_zero_matrix() {
        let x = BernoulliVectorDistribution::new(
            3,
            vec![(BinaryVector::from_code(0, 3), 1.0)],
        )
        .unwrap();
        let b = x.moment_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b.entry(i, j), 0.0);
            }
        }
    }

    #[test]
    fn moment_of_independent_components() {
        let margins = [0.3, 0.6, 0.9];
        let x = independent_x(&margins).unwrap();
        let b = x.moment_matrix();
        for i in 0..3 {
            assert!((b.entry(i, i) - margins[i]).abs() < 1e-14);
            for j in 0..3 {
                if i != j {
                    assert!((b.entry(i, j) - margins[i] * margins[j]).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn two_decompositions_same_moment_matrix() {
        // Uniform mass on {(1,1,1),(1,0,0),(0,1,0),(0,0,1)} and uniform mass
        // on {(1,1,0),(1,0,1),(0,1,1),(0,0,0)} both average to the same
        // second-moment matrix.
        let a = BernoulliVectorDistribution::new(
            3,
            vec![
                (BinaryVector::new(vec![1, 1, 1]).unwrap(), 0.25),
                (BinaryVector::new(vec![1, 0, 0]).unwrap(), 0.25),
                (BinaryVector::new(vec![0, 1, 0]).unwrap(), 0.25),
                (BinaryVector::new(vec![0, 0, 1]).unwrap(), 0.25),
            ],
        )
        .unwrap();
        let b = BernoulliVectorDistribution::new(
            3,
            vec![
                (BinaryVector::new(vec![1, 1, 0]).unwrap(), 0.25),
                (BinaryVector::new(vec![1, 0, 1]).unwrap(), 0.25),
                (BinaryVector::new(vec![0, 1, 1]).unwrap(), 0.25),
                (BinaryVector::new(vec![0, 0, 0]).unwrap(), 0.25),
            ],
        )
        .unwrap();
        let want = |i: usize, j: usize| if i == j { 0.5 } else { 0.25 };
        for x in [&a, &b] {
            let m = x.moment_matrix();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((m.entry(i, j) - want(i, j)).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn equicorrelation_degenerate_and_generic() {
        let x0 = equicorrelation_x(3, 0.0).unwrap();
        assert_eq!(x0.support().len(), 1);
        assert_eq!(x0.support()[0].0.code(), 0);

        let x = equicorrelation_x(3, 0.5).unwrap();
        let b = x.moment_matrix();
        for i in 0..3 {
            assert!((b.entry(i, i) - 0.5).abs() < 1e-14);
            for j in 0..3 {
                if i != j {
                    assert!((b.entry(i, j) - 0.25).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn ar1_moments_match_window_overlap_powers() {
        let d = 3;
        let alpha = 0.6;
        let x = ar1_x(d, alpha).unwrap();
        let b = x.moment_matrix();
        for i in 0..d {
            for j in 0..d {
                let gap = (j as i32 - i as i32).unsigned_abs() as i32;
                let want = alpha.powi(gap + d as i32);
                assert!((b.entry(i, j) - want).abs() < 1e-13, "({i},{j})");
            }
        }
        for m in x.margins() {
            assert!((m - alpha.powi(d as i32)).abs() < 1e-13);
        }
    }

    #[test]
    fn ar1_degenerate_alpha_one() {
        let x = ar1_x(4, 1.0).unwrap();
        assert_eq!(x.support().len(), 1);
        assert_eq!(x.support()[0].0.count_ones(), 4);
    }

    #[test]
    fn ar1_rejects_large_dims() {
        assert!(matches!(ar1_x(11, 0.5), Err(Error::DimTooLarge { .. })));
    }

    #[test]
    fn ma1_exact_moments() {
        let x = ma1_x(3, 0.5).unwrap();
        let b = x.moment_matrix();
        let want = [
            [1.0 / 3.0, 1.0 / 6.0, 0.0],
            [1.0 / 6.0, 1.0 / 3.0, 1.0 / 6.0],
            [0.0, 1.0 / 6.0, 1.0 / 3.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!((b.entry(i, j) - want[i][j]).abs() < 1e-15, "({i},{j})");
            }
        }
        for m in x.margins() {
            assert!((m - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn ma1_zero_overlap_and_bad_param() {
        let x = ma1_x(4, 0.0).unwrap();
        let b = x.moment_matrix();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(b.entry(i, j), 0.0);
                }
            }
        }
        assert!(matches!(ma1_x(4, 0.6), Err(Error::BadParam(_))));
    }

    #[test]
    fn gamma_partition_moments_and_lift() {
        let d = 4;
        let alpha = 1.0 / 3.0;
        let x = gamma_partition_x(d, alpha).unwrap();
        assert_eq!(x.support().len(), d);
        let probs: Vec<f64> = x.support().iter().map(|(_, p)| *p).collect();
        let near = |a: f64, b: f64| (a - b).abs() < 1e-12;
        assert_eq!(probs.iter().filter(|&&p| near(p, alpha)).count(), 3);
        assert_eq!(probs.iter().filter(|&&p| near(p, 0.0)).count(), 1);

        let b = x.collapse().moment_matrix();
        for i in 0..d {
            for j in 0..d {
                let want = if i == j {
                    if i == d - 1 { 1.0 } else { alpha }
                } else if i == d - 1 || j == d - 1 {
                    alpha
                } else {
                    0.0
                };
                assert!((b.entry(i, j) - want).abs() < 1e-14, "({i},{j})");
            }
        }
        let lifted = lift_diag(b.base());
        let gamma = gamma_matrix(d, alpha).unwrap();
        assert!(lifted.max_abs_diff(gamma.as_square()).unwrap() < 1e-14);
    }

    #[test]
    fn gamma_partition_degenerate_and_bounds() {
        let x = gamma_partition_x(3, 0.0).unwrap();
        // Only the constant-last-component atom carries mass.
        let massive: Vec<_> = x.support().iter().filter(|(_, p)| *p > 0.0).collect();
        assert_eq!(massive.len(), 1);
        assert_eq!(massive[0].0.row_sum(2), 1);
        assert_eq!(massive[0].0.row_sum(0), 0);
        assert!(gamma_partition_x(3, 0.6).is_err());
    }

    #[test]
    fn gamma_partition_rows_mutually_exclusive() {
        let x = gamma_partition_x(5, 0.2).unwrap();
        for (m, _) in x.support() {
            let indicator_rows: u8 = (0..4).map(|i| m.row_sum(i)).sum();
            assert!(indicator_rows <= 1, "at most one partition event occurs");
            assert_eq!(m.row_sum(4), 1, "last row is constant 1");
        }
    }

    #[test]
    fn substochastic_two_rows_one_column() {
        let q = SubstochasticMatrix::from_rows(&[vec![0.3], vec![0.7]]).unwrap();
        let x = substochastic_x(&q).unwrap();
        assert_eq!(x.support().len(), 4);
        let mut probs: Vec<f64> = x.support().iter().map(|(_, p)| *p).collect();
        probs.sort_by(f64::total_cmp);
        let want = [0.09, 0.21, 0.21, 0.49];
        for (got, want) in probs.iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn substochastic_mean_reproduces_q() {
        let q = SubstochasticMatrix::from_rows(&[
            vec![0.2, 0.3],
            vec![0.5, 0.5],
            vec![0.0, 0.25],
        ])
        .unwrap();
        let x = substochastic_x(&q).unwrap();
        let mean = x.mean();
        for i in 0..3 {
            for k in 0..2 {
                assert!((mean[i][k] - q.entry(i, k)).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn substochastic_stochastic_rows_pin_one_per_row() {
        let q = SubstochasticMatrix::from_rows(&[vec![0.4, 0.6], vec![1.0, 0.0]]).unwrap();
        let x = substochastic_x(&q).unwrap();
        for (m, _) in x.support() {
            assert_eq!(m.row_sum(0), 1);
            assert_eq!(m.row_sum(1), 1);
        }
    }

    #[test]
    fn substochastic_zero_matrix_point_mass() {
        let q = SubstochasticMatrix::from_rows(&[vec![0.0], vec![0.0]]).unwrap();
        let x = substochastic_x(&q).unwrap();
        assert_eq!(x.support().len(), 1);
        assert_eq!(x.support()[0].1, 1.0);
        assert_eq!(x.support()[0].0.row_sum(0) + x.support()[0].0.row_sum(1), 0);
    }

    #[test]
    fn diag_embed_preserves_support() {
        let w = BernoulliVectorDistribution::new(
            2,
            vec![
                (BinaryVector::new(vec![1, 1]).unwrap(), 0.5),
                (BinaryVector::new(vec![0, 1]).unwrap(), 0.5),
            ],
        )
        .unwrap();
        let x = diag_embed(&w);
        assert_eq!(x.support().len(), 2);
        // Point mass at all-ones maps to the identity matrix.
        let ones = BernoulliVectorDistribution::new(
            2,
            vec![(BinaryVector::new(vec![1, 1]).unwrap(), 1.0)],
        )
        .unwrap();
        let id = diag_embed(&ones);
        assert_eq!(id.support().len(), 1);
        let m = &id.support()[0].0;
        assert_eq!(m.entry(0, 0), 1);
        assert_eq!(m.entry(1, 1), 1);
        assert_eq!(m.entry(0, 1), 0);
    }

    #[test]
    fn moment_matrices_respect_necessary_bounds() {
        for x in [
            independent_x(&[0.2, 0.8, 0.5]).unwrap(),
            ar1_x(4, 0.7).unwrap(),
            ma1_x(5, 0.4).unwrap(),
            equicorrelation_x(4, 0.9).unwrap(),
        ] {
            let report = frechet_bernoulli_bounds_check(x.moment_matrix().base());
            assert!(report.is_empty(), "{report:?}");
        }
    }

    #[test]
    fn probability_mass_rules() {
        let v = BinaryVector::new(vec![1, 0]).unwrap();
        let w = BinaryVector::new(vec![0, 1]).unwrap();
        // Small drift is renormalized.
        let x = BernoulliVectorDistribution::new(
            2,
            vec![(v.clone(), 0.5 + 4e-13), (w.clone(), 0.5)],
        )
        .unwrap();
        let total: f64 = x.support().iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-15);
        // Large drift is an error.
        assert!(matches!(
            BernoulliVectorDistribution::new(2, vec![(v.clone(), 0.6), (w.clone(), 0.5)]),
            Err(Error::BadProbabilityMass(_))
        ));
        // Duplicates merge.
        let y = BernoulliVectorDistribution::new(
            2,
            vec![(v.clone(), 0.25), (v, 0.25), (w, 0.5)],
        )
        .unwrap();
        assert_eq!(y.support().len(), 2);
    }
}
