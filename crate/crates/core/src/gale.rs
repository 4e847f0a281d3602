//! Fan matrices, weight matrices and ℤ-linear Gale duality.
//!
//! A fan matrix is an integer `n×(n+r)` matrix whose columns generate the
//! rays of a complete simplicial fan; a weight matrix is its Gale dual, an
//! `r×(n+r)` matrix whose columns span the effective cone in divisor-class
//! space. Weight matrices are normalized to the canonical positive row
//! echelon representative of their row lattice, so emitted forms are stable
//! and testable.

use crate::cones::{Cone, IntVec};
use crate::linalg::{
    det, gcd_of, is_zero_vec, kernel_saturated, primitive, row_lattice_basis, smith_invariants,
    Int, IntMat,
};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

/// A violated clause of the fan-matrix definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FViolation {
    /// (a) rank must equal the number of rows
    RankDeficient { rank: usize, expected: usize },
    /// (b) the columns must generate the whole space
    NotComplete,
    /// (c) zero column
    ZeroColumn { col: usize },
    /// (d) two columns are positive multiples of each other
    ProportionalColumns { col_a: usize, col_b: usize },
    /// requested dimension does not match the matrix shape
    WrongShape { rows: usize, expected: usize },
}

impl std::fmt::Display for FViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FViolation::RankDeficient { rank, expected } => {
                write!(f, "clause (a): rank {rank}, expected {expected}")
            }
            FViolation::NotComplete => write!(f, "clause (b): column cone is not the whole space"),
            FViolation::ZeroColumn { col } => write!(f, "clause (c): column {} is zero", col + 1),
            FViolation::ProportionalColumns { col_a, col_b } => write!(
                f,
                "clause (d): columns {} and {} are positive multiples",
                col_a + 1,
                col_b + 1
            ),
            FViolation::WrongShape { rows, expected } => {
                write!(f, "matrix has {rows} rows, expected {expected}")
            }
        }
    }
}

/// A violated clause of the weight-matrix definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WViolation {
    /// (a) rank must equal the number of rows
    RankDeficient { rank: usize, expected: usize },
    /// (b) the row lattice must be saturated
    Cotorsion { invariant_factor: String },
    /// (c) the row lattice must admit a nonnegative basis
    NotWPositive,
    /// (c) positivization gave up within the coefficient bound
    PositivizationBound { bound: u64 },
    /// (d) zero column
    ZeroColumn { col: usize },
    /// (e) the row lattice contains a standard basis vector
    UnitVector { col: usize },
    /// (f) the row lattice contains a two-coordinate mixed-sign vector
    MixedSignPair { col_a: usize, col_b: usize },
    WrongShape { rows: usize, expected: usize },
}

impl std::fmt::Display for WViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WViolation::RankDeficient { rank, expected } => {
                write!(f, "clause (a): rank {rank}, expected {expected}")
            }
            WViolation::Cotorsion { invariant_factor } => write!(
                f,
                "clause (b): row lattice has cotorsion (invariant factor {invariant_factor})"
            ),
            WViolation::NotWPositive => {
                write!(f, "clause (c): row lattice admits no nonnegative basis")
            }
            WViolation::PositivizationBound { bound } => write!(
                f,
                "clause (c): no nonnegative basis found within coefficient bound {bound}"
            ),
            WViolation::ZeroColumn { col } => write!(f, "clause (d): column {} is zero", col + 1),
            WViolation::UnitVector { col } => write!(
                f,
                "clause (e): row lattice contains the standard basis vector e_{}",
                col + 1
            ),
            WViolation::MixedSignPair { col_a, col_b } => write!(
                f,
                "clause (f): row lattice contains a mixed-sign vector supported on columns {} and {}",
                col_a + 1,
                col_b + 1
            ),
            WViolation::WrongShape { rows, expected } => {
                write!(f, "matrix has {rows} rows, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum GaleError {
    #[error("not a fan matrix: {}", format_list(.0))]
    InvalidF(Vec<FViolation>),
    #[error("not a weight matrix: {}", format_list(.0))]
    InvalidW(Vec<WViolation>),
    #[error("positive row echelon normalization failed: {0}")]
    Positivization(String),
    #[error("malformed matrix file: {0}")]
    Parse(String),
}

fn format_list<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Validated fan matrix: `n×(n+r)`, full rank, complete column cone,
/// no zero or positively-proportional columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMatrix {
    mat: IntMat,
    /// every column has coprime entries
    pub reduced: bool,
    /// the column lattice is all of ℤⁿ
    pub cf: bool,
}

impl FMatrix {
    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn r(&self) -> usize {
        self.mat.cols() - self.mat.rows()
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn columns(&self) -> Vec<IntVec> {
        self.mat.col_vecs()
    }
}

/// Validated weight matrix in positive row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WMatrix {
    mat: IntMat,
}

impl WMatrix {
    pub fn r(&self) -> usize {
        self.mat.rows()
    }

    pub fn n(&self) -> usize {
        self.mat.cols() - self.mat.rows()
    }

    pub fn num_cols(&self) -> usize {
        self.mat.cols()
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn columns(&self) -> Vec<IntVec> {
        self.mat.col_vecs()
    }

    /// The effective cone: the cone spanned by all columns.
    pub fn effective_cone(&self) -> Cone {
        Cone::from_generators(&self.columns(), self.r())
    }
}

/// Validate an integer matrix as a fan matrix of dimension `expect_n`.
pub fn validate_f(m: &IntMat, expect_n: usize) -> Result<FMatrix, Vec<FViolation>> {
    let mut violations = Vec::new();
    if m.rows() != expect_n || m.cols() <= m.rows() {
        violations.push(FViolation::WrongShape {
            rows: m.rows(),
            expected: expect_n,
        });
        return Err(violations);
    }
    let rank = m.rank();
    if rank != m.rows() {
        violations.push(FViolation::RankDeficient {
            rank,
            expected: m.rows(),
        });
    }
    let cols = m.col_vecs();
    for (j, c) in cols.iter().enumerate() {
        if is_zero_vec(c) {
            violations.push(FViolation::ZeroColumn { col: j });
        }
    }
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            if is_zero_vec(&cols[a]) || is_zero_vec(&cols[b]) {
                continue;
            }
            let pa = primitive(&cols[a]);
            let pb = primitive(&cols[b]);
            if pa == pb {
                violations.push(FViolation::ProportionalColumns { col_a: a, col_b: b });
            }
        }
    }
    // completeness: the dual of the column cone must be the zero cone
    if violations.is_empty() {
        let cone = Cone::from_generators(&cols, expect_n);
        if !(cone.is_full_dim() && cone.facet_normals().is_empty()) {
            violations.push(FViolation::NotComplete);
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    let reduced = cols.iter().all(|c| gcd_of(c).is_one());
    let inv = smith_invariants(m);
    let cf = inv.len() == m.rows() && inv.iter().all(|x| x.is_one());
    Ok(FMatrix {
        mat: m.clone(),
        reduced,
        cf,
    })
}

/// Validate an integer matrix as a weight matrix of rank `expect_r`.
///
/// Clauses (e) and (f) are checked exactly by projecting the row lattice to
/// each one- and two-column coordinate subspace.
pub fn validate_w(m: &IntMat, expect_r: usize) -> Result<WMatrix, Vec<WViolation>> {
    let mut violations = Vec::new();
    if m.rows() != expect_r || m.cols() <= m.rows() {
        violations.push(WViolation::WrongShape {
            rows: m.rows(),
            expected: expect_r,
        });
        return Err(violations);
    }
    let rank = m.rank();
    if rank != m.rows() {
        violations.push(WViolation::RankDeficient {
            rank,
            expected: m.rows(),
        });
    }
    for f in smith_invariants(m) {
        if !f.is_one() {
            violations.push(WViolation::Cotorsion {
                invariant_factor: f.to_string(),
            });
            break;
        }
    }
    for j in 0..m.cols() {
        if is_zero_vec(&m.col_vec(j)) {
            violations.push(WViolation::ZeroColumn { col: j });
        }
    }
    if rank == m.rows() {
        // a nonnegative full-rank matrix is its own nonnegative basis
        let already_nonneg =
            (0..m.rows()).all(|i| m.row(i).iter().all(|x| !x.is_negative()));
        if !already_nonneg {
            match positive_ref_bounded(m, DEFAULT_POSITIVIZE_BOUND) {
                Ok(_) => {}
                Err(PositivizeFailure::Impossible) => violations.push(WViolation::NotWPositive),
                Err(PositivizeFailure::BoundExceeded(b)) => {
                    violations.push(WViolation::PositivizationBound { bound: b })
                }
            }
        }
        // (e)/(f): lattice vectors supported on one or two coordinates
        for i in 0..m.cols() {
            if let Some(g) = single_support_generator(m, i) {
                if g.is_one() {
                    violations.push(WViolation::UnitVector { col: i });
                }
            }
        }
        for a in 0..m.cols() {
            for b in a + 1..m.cols() {
                if pair_support_has_mixed_sign(m, a, b) {
                    violations.push(WViolation::MixedSignPair { col_a: a, col_b: b });
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    Ok(WMatrix { mat: m.clone() })
}

/// Generator `g ≥ 0` of the lattice `{t : t·e_i ∈ L_r(m) supported on {i}}`,
/// or None when only the zero vector is supported there.
fn single_support_generator(m: &IntMat, i: usize) -> Option<Int> {
    let others = m.delete_cols(&[i]);
    let k = kernel_saturated(&others.transpose()); // x with x·(rows of m)=0 off column i
    if k.rows() == 0 {
        return None;
    }
    let col = m.col_vec(i);
    let vals: Vec<Int> = (0..k.rows())
        .map(|t| crate::linalg::dot(k.row(t), &col))
        .collect();
    let g = gcd_of(&vals);
    if g.is_zero() {
        None
    } else {
        Some(g)
    }
}

/// Does the row lattice contain a vector supported on columns {a, b} with
/// entries of opposite signs?
fn pair_support_has_mixed_sign(m: &IntMat, a: usize, b: usize) -> bool {
    let others = m.delete_cols(&[a, b]);
    let k = kernel_saturated(&others.transpose());
    if k.rows() == 0 {
        return false;
    }
    let ca = m.col_vec(a);
    let cb = m.col_vec(b);
    let pairs: Vec<(Int, Int)> = (0..k.rows())
        .map(|t| {
            (
                crate::linalg::dot(k.row(t), &ca),
                crate::linalg::dot(k.row(t), &cb),
            )
        })
        .filter(|(x, y)| !(x.is_zero() && y.is_zero()))
        .collect();
    match pairs.len() {
        0 => false,
        1 => {
            let (x, y) = &pairs[0];
            // rank-1: mixed sign iff the generator itself is mixed
            (x.is_positive() && y.is_negative()) || (x.is_negative() && y.is_positive())
        }
        _ => {
            // rank-2 sublattice of Z²: it always contains (N, -N) for some N>0
            true
        }
    }
}

pub const DEFAULT_POSITIVIZE_BOUND: u64 = 64;

enum PositivizeFailure {
    Impossible,
    BoundExceeded(u64),
}

/// Canonical positive row echelon representative of the row lattice of `m`.
///
/// Construction: Hermite normal form of the row lattice (an integer row
/// echelon form with positive pivots that never changes the lattice), then
/// each row made nonnegative by adding the least (breadth-first by total,
/// then lexicographic) nonnegative integer combination of the rows below it.
/// Fails explicitly when the lattice admits no nonnegative basis or the
/// search bound is exceeded.
pub fn positive_ref(m: &IntMat) -> Result<IntMat, GaleError> {
    positive_ref_with_bound(m, DEFAULT_POSITIVIZE_BOUND)
}

pub fn positive_ref_with_bound(m: &IntMat, bound: u64) -> Result<IntMat, GaleError> {
    positive_ref_bounded(m, bound).map_err(|e| match e {
        PositivizeFailure::Impossible => {
            GaleError::Positivization("row lattice admits no nonnegative basis".into())
        }
        PositivizeFailure::BoundExceeded(b) => GaleError::Positivization(format!(
            "no nonnegative combination found within coefficient bound {b}"
        )),
    })
}

fn positive_ref_bounded(m: &IntMat, bound: u64) -> Result<IntMat, PositivizeFailure> {
    let rows: Vec<IntVec> = row_lattice_basis(m).row_vecs();
    let k = rows.len();
    let mut out: Vec<IntVec> = vec![Vec::new(); k];
    for i in (0..k).rev() {
        let base = &rows[i];
        let lower = &rows[i + 1..];
        if base.iter().all(|x| !x.is_negative()) {
            out[i] = base.clone();
            continue;
        }
        // a negative entry in a column where every lower row vanishes can
        // never be repaired
        for (c, x) in base.iter().enumerate() {
            if x.is_negative() && lower.iter().all(|l| l[c].is_zero()) {
                return Err(PositivizeFailure::Impossible);
            }
        }
        let mut found = None;
        'sums: for total in 1..=bound.saturating_mul(lower.len() as u64) {
            for coeffs in compositions(total, lower.len(), bound) {
                let mut cand = base.clone();
                for (cf, l) in coeffs.iter().zip(lower) {
                    if *cf == 0 {
                        continue;
                    }
                    let c = Int::from(*cf);
                    for (x, y) in cand.iter_mut().zip(l) {
                        *x += &c * y;
                    }
                }
                if cand.iter().all(|x| !x.is_negative()) {
                    found = Some(cand);
                    break 'sums;
                }
            }
        }
        match found {
            Some(row) => out[i] = row,
            None => return Err(PositivizeFailure::BoundExceeded(bound)),
        }
    }
    Ok(IntMat::from_row_vecs(out))
}

/// All vectors of `parts` nonnegative integers with the given total, each
/// entry at most `bound`, in lexicographic order.
fn compositions(total: u64, parts: usize, bound: u64) -> Vec<Vec<u64>> {
    fn rec(total: u64, parts: usize, bound: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            if total <= bound {
                acc.push(total);
                out.push(acc.clone());
                acc.pop();
            }
            return;
        }
        for first in (0..=total.min(bound)).rev() {
            acc.push(first);
            rec(total - first, parts - 1, bound, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        return out;
    }
    let mut acc = Vec::new();
    rec(total, parts, bound, &mut acc, &mut out);
    out.sort();
    out
}

/// Gale dual of a fan matrix: the canonical positive REF basis of the
/// saturated integer kernel of `v`.
pub fn gale_dual_of_f(v: &FMatrix) -> Result<WMatrix, GaleError> {
    gale_dual_of_f_with_bound(v, DEFAULT_POSITIVIZE_BOUND)
}

pub fn gale_dual_of_f_with_bound(v: &FMatrix, bound: u64) -> Result<WMatrix, GaleError> {
    let k = kernel_saturated(v.matrix());
    let q = positive_ref_with_bound(&k, bound)?;
    validate_w(&q, v.r()).map_err(GaleError::InvalidW)
}

/// Gale dual of a weight matrix: the Hermite-form basis of the saturated
/// integer kernel of `q`. The `reduced` flag of the result records whether
/// every column came out primitive (it always does for weight matrices of
/// smooth varieties); exact duality `v·qᵀ = 0` is preserved unconditionally.
pub fn gale_dual_of_w(q: &WMatrix) -> Result<FMatrix, GaleError> {
    let k = kernel_saturated(q.matrix());
    let v = row_lattice_basis(&k);
    validate_f(&v, q.n()).map_err(GaleError::InvalidF)
}

/// Duality of complementary minors: |det V_I| = |det Q^I| for CF pairs.
pub fn minor_duality_holds(v: &FMatrix, q: &WMatrix) -> bool {
    let n = v.n();
    let total = v.n() + v.r();
    use itertools::Itertools;
    (0..total).combinations(n).all(|idx| {
        let vi = v.matrix().select_cols(&idx);
        let complement: Vec<usize> = (0..total).filter(|j| !idx.contains(j)).collect();
        let qi = q.matrix().select_cols(&complement);
        det(&vi).abs() == det(&qi).abs()
    })
}

/// Parse the matrix text format: first line `rows cols`, then `rows` lines
/// of whitespace-separated integers; `#` starts a comment line.
pub fn parse_matrix(text: &str) -> Result<IntMat, GaleError> {
    let mut lines = text
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| GaleError::Parse("empty file".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(GaleError::Parse(format!(
            "expected header `rows cols`, got `{header}`"
        )));
    }
    let rows: usize = dims[0]
        .parse()
        .map_err(|_| GaleError::Parse(format!("bad row count `{}`", dims[0])))?;
    let cols: usize = dims[1]
        .parse()
        .map_err(|_| GaleError::Parse(format!("bad column count `{}`", dims[1])))?;
    if rows == 0 || cols == 0 {
        return Err(GaleError::Parse("dimensions must be positive".into()));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| GaleError::Parse(format!("missing row {}", i + 1)))?;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != cols {
            return Err(GaleError::Parse(format!(
                "row {} has {} entries, expected {cols}",
                i + 1,
                entries.len()
            )));
        }
        for e in entries {
            let x: Int = e
                .parse()
                .map_err(|_| GaleError::Parse(format!("bad integer `{e}`")))?;
            data.push(x);
        }
    }
    if lines.next().is_some() {
        return Err(GaleError::Parse("trailing data after matrix rows".into()));
    }
    Ok(IntMat::new(rows, cols, data))
}

/// Serialize a matrix in the text format.
pub fn format_matrix(m: &IntMat) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Unimodular row operations sending `h` (a primitive vector) to the last
/// coordinate: returns `a` with last row `h`, so `a·Q` has bottom row `h·Q`.
pub fn row_transform_for_hyperplane(h: &IntVec) -> IntMat {
    crate::linalg::unimodular_with_last_row(h)
}

/// Row-HNF equality of row lattices.
pub fn same_row_lattice(a: &IntMat, b: &IntMat) -> bool {
    row_lattice_basis(a) == row_lattice_basis(b)
}

/// Check `v·qᵀ = 0`.
pub fn is_dual_pair(v: &IntMat, q: &IntMat) -> bool {
    v.mul(&q.transpose()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn validate_f_on_the_threefold_example() {
        let f = validate_f(&corpus::ex1_v(), 3).unwrap();
        assert!(f.reduced);
        assert!(f.cf);
    }

    #[test]
    fn validate_f_p2() {
        let m = IntMat::from_rows(&[vec![1, 0, -1], vec![0, 1, -1]]);
        let f = validate_f(&m, 2).unwrap();
        assert!(f.reduced && f.cf);
    }

    #[test]
    fn validate_f_rejects_scaled_duplicate_column() {
        let m = IntMat::from_rows(&[vec![1, 0, -1, 2], vec![0, 1, -1, 0]]);
        let errs = validate_f(&m, 2).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, FViolation::ProportionalColumns { col_a: 0, col_b: 3 })));
    }

    #[test]
    fn validate_f_rejects_non_complete() {
        let m = IntMat::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let errs = validate_f(&m, 2).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, FViolation::NotComplete)));
    }

    #[test]
    fn validate_w_on_the_counterexample() {
        assert!(validate_w(&corpus::cex4_q_raw(), 4).is_ok());
    }

    #[test]
    fn validate_w_p1() {
        let m = IntMat::from_rows(&[vec![1, 1]]);
        assert!(validate_w(&m, 1).is_ok());
    }

    #[test]
    fn validate_w_rejects_zero_column() {
        let m = IntMat::from_rows(&[vec![1, 1, 0]]);
        let errs = validate_w(&m, 1).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, WViolation::ZeroColumn { col: 2 })));
    }

    #[test]
    fn validate_w_rejects_unit_vector_in_lattice() {
        let m = IntMat::from_rows(&[vec![1, 0, 1], vec![0, 1, 0]]);
        let errs = validate_w(&m, 2).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, WViolation::UnitVector { col: 1 })));
    }

    #[test]
    fn validate_w_rejects_mixed_sign_pair() {
        // 2·(1,0,1) - (0,1,2) = (2,-1,0) is supported on two columns with
        // opposite signs
        let m = IntMat::from_rows(&[vec![1, 0, 1], vec![0, 1, 2]]);
        let errs = validate_w(&m, 2).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, WViolation::MixedSignPair { col_a: 0, col_b: 1 })));
    }

    #[test]
    fn gale_dual_of_the_threefold_fan_matrix() {
        let v = validate_f(&corpus::ex1_v(), 3).unwrap();
        let q = gale_dual_of_f(&v).unwrap();
        assert_eq!(q.matrix(), &corpus::ex1_q_raw());
    }

    #[test]
    fn gale_dual_of_p1xp1() {
        let m = IntMat::from_rows(&[vec![1, 0, -1, 0], vec![0, 1, 0, -1]]);
        let v = validate_f(&m, 2).unwrap();
        let q = gale_dual_of_f(&v).unwrap();
        assert_eq!(
            q.matrix(),
            &IntMat::from_rows(&[vec![1, 0, 1, 0], vec![0, 1, 0, 1]])
        );
    }

    #[test]
    fn gale_dual_of_the_counterexample_fan_matrix() {
        let v = validate_f(&corpus::cex4_v(), 4).unwrap();
        let q = gale_dual_of_f(&v).unwrap();
        assert_eq!(q.matrix(), &corpus::cex4_q_raw());
    }

    #[test]
    fn gale_dual_of_w_reproduces_fan_matrices() {
        let q = validate_w(&corpus::ex2_q_raw(), 3).unwrap();
        let v = gale_dual_of_w(&q).unwrap();
        assert_eq!(v.matrix(), &corpus::ex2_v());

        let q = validate_w(&corpus::cex4_q_raw(), 4).unwrap();
        let v = gale_dual_of_w(&q).unwrap();
        assert_eq!(v.matrix(), &corpus::cex4_v());
    }

    #[test]
    fn gale_dual_of_p1_weight_matrix() {
        let q = validate_w(&IntMat::from_rows(&[vec![1, 1]]), 1).unwrap();
        let v = gale_dual_of_w(&q).unwrap();
        assert_eq!(v.matrix(), &IntMat::from_rows(&[vec![1, -1]]));
    }

    #[test]
    fn qs_family_dual_has_expected_rank() {
        // the dual of
        // a 4×(7+s) weight matrix is (3+s)×(7+s) of full rank
        for s in 1..=3u64 {
            let q = corpus::qs_family(s);
            let v = gale_dual_of_w(&q).unwrap();
            assert_eq!(v.n(), 3 + s as usize);
            assert_eq!(v.matrix().rank(), 3 + s as usize);
        }
    }

    #[test]
    fn positive_ref_examples() {
        let m = IntMat::from_rows(&[vec![1, -1, 1, 0], vec![0, 1, 0, 1]]);
        let p = positive_ref(&m).unwrap();
        assert_eq!(p, IntMat::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 0, 1]]));
        assert!(same_row_lattice(&m, &p));

        // already canonical: fixed point
        assert_eq!(positive_ref(&p).unwrap(), p);

        for a in 0..4i64 {
            let h = IntMat::from_rows(&[vec![1, -a, 1, 0], vec![0, 1, 0, 1]]);
            let p = positive_ref(&h).unwrap();
            assert_eq!(
                p,
                IntMat::from_rows(&[vec![1, 0, 1, a], vec![0, 1, 0, 1]])
            );
            assert!(same_row_lattice(&h, &p));
        }
    }

    #[test]
    fn positive_ref_impossible() {
        let m = IntMat::from_rows(&[vec![1, -1]]);
        assert!(positive_ref(&m).is_err());
    }

    #[test]
    fn round_trip_row_lattices() {
        for v_raw in [corpus::ex1_v(), corpus::ex2_v(), corpus::cex4_v()] {
            let n = v_raw.rows();
            let v = validate_f(&v_raw, n).unwrap();
            let q = gale_dual_of_f(&v).unwrap();
            let v2 = gale_dual_of_w(&q).unwrap();
            assert!(same_row_lattice(v.matrix(), v2.matrix()));
            assert!(is_dual_pair(v.matrix(), q.matrix()));
        }
    }

    #[test]
    fn minor_duality_on_the_corpus() {
        for (v_raw, q_raw) in [
            (corpus::ex1_v(), corpus::ex1_q_raw()),
            (corpus::ex2_v(), corpus::ex2_q_raw()),
            (corpus::cex4_v(), corpus::cex4_q_raw()),
        ] {
            let n = v_raw.rows();
            let r = q_raw.rows();
            let v = validate_f(&v_raw, n).unwrap();
            let q = validate_w(&q_raw, r).unwrap();
            assert!(minor_duality_holds(&v, &q));
        }
    }

    #[test]
    fn matrix_text_round_trip() {
        let text = "# fan matrix\n3 6\n1 0 0 0 -1 1\n0 1 0 0 -1 1\n0 0 1 -1 -1 1\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m, corpus::ex1_v());
        let back = parse_matrix(&format_matrix(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2 2\n1 2\n3").is_err());
        assert!(parse_matrix("2 2\n1 2\n3 x").is_err());
        assert!(parse_matrix("1 2\n1 2\n3 4").is_err());
    }
}
