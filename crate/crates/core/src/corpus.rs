//! Bundled reference instances.
//!
//! Four worked examples ship with the crate and drive both the acceptance
//! tests and the `reproduce` CLI commands:
//!
//! * `ex1` — a smooth threefold of Picard rank 3 with two chambers (the
//!   two-point blow-up of ℙ³ and a double projective-bundle tower);
//! * `ex2` — a rank-3 fourfold whose movable cone carries three chambers,
//!   one of them reachable only through a flip;
//! * `cex4` — the rank-4 fourfold whose tenth chamber has a nef cone meeting
//!   the boundary of the effective cone only at the origin;
//! * `qs` — the one-parameter family generalizing `cex4` to dimension 3+s.
//!
//! All expected values here are frozen reference data; the test-suite
//! recomputes them from scratch and compares.

use crate::gale::{validate_f, validate_w, FMatrix, WMatrix};
use crate::linalg::IntMat;

// ---- ex1: rank 3, dimension 3, two chambers ----

pub fn ex1_v() -> IntMat {
    IntMat::from_rows(&[
        vec![1, 0, 0, 0, -1, 1],
        vec![0, 1, 0, 0, -1, 1],
        vec![0, 0, 1, -1, -1, 1],
    ])
}

pub fn ex1_q_raw() -> IntMat {
    IntMat::from_rows(&[
        vec![1, 1, 1, 0, 1, 0],
        vec![0, 0, 1, 1, 0, 0],
        vec![0, 0, 0, 0, 1, 1],
    ])
}

pub fn ex1_f() -> FMatrix {
    validate_f(&ex1_v(), 3).expect("bundled fan matrix is valid")
}

pub fn ex1_w() -> WMatrix {
    validate_w(&ex1_q_raw(), 3).expect("bundled weight matrix is valid")
}

/// Fan matrix after blowing down the divisor of column 4 of `ex1`.
pub fn ex1_contracted_v() -> IntMat {
    IntMat::from_rows(&[
        vec![1, 0, 0, -1, 1],
        vec![0, 1, 0, -1, 1],
        vec![0, 0, 1, -1, 1],
    ])
}

/// Weight matrix of the blow-down of `ex1` (one-point blow-up of ℙ³).
pub fn ex1_contracted_q() -> IntMat {
    IntMat::from_rows(&[vec![1, 1, 1, 1, 0], vec![0, 0, 0, 1, 1]])
}

// ---- ex2: rank 3, dimension 4, three chambers ----

pub fn ex2_q_raw() -> IntMat {
    IntMat::from_rows(&[
        vec![1, 1, 1, 0, 0, 1, 0],
        vec![0, 0, 1, 1, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 1],
    ])
}

pub fn ex2_v() -> IntMat {
    IntMat::from_rows(&[
        vec![1, 0, 0, 0, 0, -1, 1],
        vec![0, 1, 0, 0, 0, -1, 1],
        vec![0, 0, 1, 0, -1, -1, 1],
        vec![0, 0, 0, 1, -1, 0, 0],
    ])
}

pub fn ex2_w() -> WMatrix {
    validate_w(&ex2_q_raw(), 3).expect("bundled weight matrix is valid")
}

// ---- cex4: rank 4, dimension 4, ten chambers ----

pub fn cex4_v() -> IntMat {
    IntMat::from_rows(&[
        vec![1, 0, 0, -1, 0, 1, -1, 0],
        vec![0, 1, 0, 1, 0, 0, -1, 1],
        vec![0, 0, 1, 1, 0, -1, 0, 1],
        vec![0, 0, 0, 0, 1, -1, 1, 0],
    ])
}

pub fn cex4_q_raw() -> IntMat {
    IntMat::from_rows(&[
        vec![1, 0, 0, 1, 0, 1, 1, 0],
        vec![0, 1, 1, 0, 0, 1, 1, 0],
        vec![0, 0, 1, 1, 1, 2, 1, 0],
        vec![0, 0, 0, 0, 0, 1, 1, 1],
    ])
}

pub fn cex4_f() -> FMatrix {
    validate_f(&cex4_v(), 4).expect("bundled fan matrix is valid")
}

pub fn cex4_w() -> WMatrix {
    validate_w(&cex4_q_raw(), 4).expect("bundled weight matrix is valid")
}

/// The five interior generators appearing among the chamber rays.
pub fn cex4_w_vectors() -> [Vec<i64>; 5] {
    [
        vec![1, 1, 1, 0],
        vec![2, 1, 2, 1],
        vec![1, 2, 2, 1],
        vec![2, 2, 3, 1],
        vec![2, 2, 2, 1],
    ]
}

/// The ten chamber generator sets, each with its smoothness flag, indexed
/// γ₁..γ₁₀ in the reference order. Entries are column vectors of length 4.
pub fn cex4_chambers() -> Vec<(Vec<Vec<i64>>, bool)> {
    let q = |j: usize| -> Vec<i64> {
        let m = cex4_q_raw();
        (0..4).map(|i| i64::try_from(&m[(i, j - 1)]).unwrap()).collect()
    };
    let [w1, w2, w3, w4, w5] = cex4_w_vectors();
    vec![
        (vec![q(3), q(4), w1.clone(), w4.clone()], true),
        (vec![q(4), w1.clone(), w2.clone(), w4.clone()], true),
        (vec![q(3), w1.clone(), w3.clone(), w4.clone()], true),
        (vec![q(7), w2.clone(), w3.clone(), w5.clone()], false),
        (vec![q(3), q(4), q(6), w4.clone()], true),
        (vec![q(6), q(7), w2.clone(), w3.clone()], false),
        (vec![q(3), q(6), w3.clone(), w4.clone()], true),
        (vec![w1, w2.clone(), w3.clone(), w4.clone(), w5], true),
        (vec![q(4), q(6), w2.clone(), w4.clone()], true),
        (vec![q(6), w2, w3, w4], true),
    ]
}

/// Extremal rays of the movable cone: q₃, q₄, q₆, q₇, w₁.
pub fn cex4_mov_generators() -> Vec<Vec<i64>> {
    vec![
        vec![0, 1, 1, 0],
        vec![1, 0, 1, 0],
        vec![1, 1, 2, 1],
        vec![1, 1, 1, 1],
        vec![1, 1, 1, 0],
    ]
}

/// The 18 maximal cones of the fan of the tenth chamber (1-based indices).
pub fn cex4_sigma10() -> Vec<Vec<usize>> {
    vec![
        vec![2, 4, 5, 7],
        vec![4, 5, 7, 8],
        vec![3, 4, 7, 8],
        vec![3, 4, 6, 7],
        vec![2, 4, 6, 7],
        vec![3, 5, 7, 8],
        vec![2, 4, 5, 8],
        vec![1, 3, 5, 7],
        vec![2, 5, 6, 7],
        vec![3, 4, 6, 8],
        vec![2, 4, 6, 8],
        vec![1, 5, 6, 7],
        vec![1, 3, 6, 7],
        vec![1, 3, 5, 8],
        vec![1, 2, 5, 8],
        vec![1, 2, 5, 6],
        vec![1, 3, 6, 8],
        vec![1, 2, 6, 8],
    ]
}

/// Inverse of the generator matrix of the tenth chamber, columns ordered
/// (q₆, w₄, w₂, w₃); its rows generate the dual (Mori) cone.
pub fn cex4_g10_inverse_rows() -> [Vec<i64>; 4] {
    [
        vec![-1, -1, 1, 1],
        vec![0, 0, 1, -2],
        vec![1, 0, -1, 1],
        vec![0, 1, -1, 1],
    ]
}

/// The four relations spanning the extremal classes of the tenth chamber.
pub fn cex4_extremal_relations() -> [Vec<i64>; 4] {
    [
        vec![-1, -1, 0, 0, 1, 1, 0, 1],
        vec![0, 0, 1, 1, 1, 0, -1, -2],
        vec![1, 0, -1, 0, -1, 0, 1, 1],
        vec![0, 1, 0, -1, -1, 0, 1, 1],
    ]
}

/// Wall crossings of the canonical flip route, as (from, to, inward normal,
/// wall relation), with 1-based chamber numbers in the reference order.
pub fn cex4_wall_relations() -> [(usize, usize, Vec<i64>, Vec<i64>); 3] {
    [
        (10, 7, vec![1, 0, -1, 1], vec![1, 0, -1, 0, -1, 0, 1, 1]),
        (7, 3, vec![-1, -1, 1, 1], vec![-1, -1, 0, 0, 1, 1, 0, 1]),
        (3, 1, vec![0, 1, -1, 1], vec![0, 1, 0, -1, -1, 0, 1, 1]),
    ]
}

pub fn cex4_anticanonical() -> Vec<i64> {
    vec![4, 4, 6, 3]
}

/// Base weight matrix extracted from the first chamber along P = {6,7,8}.
pub fn cex4_base_q() -> IntMat {
    IntMat::from_rows(&[vec![1, 0, 0, 1, 0], vec![0, 1, 1, 0, 0], vec![0, 0, 1, 1, 1]])
}

/// Fan matrix of the base (the one-point blow-up of ℙ¹×ℙ¹).
pub fn cex4_base_v() -> IntMat {
    IntMat::from_rows(&[vec![1, 0, 0, -1, 1], vec![0, 1, -1, 0, 1]])
}

// ---- qs: the family generalizing cex4 ----

/// The 4×(7+s) weight matrix with the seventh column repeated `s` times.
pub fn qs_matrix(s: u64) -> IntMat {
    assert!(s >= 1, "family parameter must be positive");
    let fixed: [[i64; 6]; 4] = [
        [1, 0, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1],
        [0, 0, 1, 1, 1, 2],
        [0, 0, 0, 0, 0, 1],
    ];
    let mut rows = Vec::with_capacity(4);
    for (i, f) in fixed.iter().enumerate() {
        let mut row: Vec<i64> = f.to_vec();
        row.extend(std::iter::repeat_n(1, s as usize));
        row.push(if i == 3 { 1 } else { 0 });
        rows.push(row);
    }
    IntMat::from_rows(&rows)
}

pub fn qs_family(s: u64) -> WMatrix {
    validate_w(&qs_matrix(s), 4).expect("family member is a valid weight matrix")
}

// ---- small sanity anchors ----

/// Weight matrix of ℙⁿ: a single row of n+1 ones.
pub fn pn_q(n: usize) -> IntMat {
    IntMat::from_rows(&[vec![1; n + 1]])
}

pub fn p1xp1_q() -> IntMat {
    IntMat::from_rows(&[vec![1, 0, 1, 0], vec![0, 1, 0, 1]])
}

pub fn p1xp1_v() -> IntMat {
    IntMat::from_rows(&[vec![1, 0, -1, 0], vec![0, 1, 0, -1]])
}

/// Weight matrix of the Hirzebruch surface of parameter `a`.
pub fn hirzebruch_q(a: i64) -> IntMat {
    IntMat::from_rows(&[vec![1, 0, 1, a], vec![0, 1, 0, 1]])
}

/// Rank-2 normal form: `j1` leading columns (1,0), then the given entries
/// paired with 1, then trailing columns (0,1).
pub fn rank2_normal_form(j1: usize, mid: &[i64], trailing: usize) -> IntMat {
    assert!(j1 >= 2);
    let mut top = vec![1i64; j1];
    let mut bottom = vec![0i64; j1];
    for &m in mid {
        assert!(m >= 0);
        top.push(m);
        bottom.push(1);
    }
    top.extend(std::iter::repeat_n(0, trailing));
    bottom.extend(std::iter::repeat_n(1, trailing));
    IntMat::from_rows(&[top, bottom])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gale::is_dual_pair;

    #[test]
    fn bundled_pairs_are_dual() {
        assert!(is_dual_pair(&ex1_v(), &ex1_q_raw()));
        assert!(is_dual_pair(&ex2_v(), &ex2_q_raw()));
        assert!(is_dual_pair(&cex4_v(), &cex4_q_raw()));
        assert!(is_dual_pair(&ex1_contracted_v(), &ex1_contracted_q()));
        assert!(is_dual_pair(&cex4_base_v(), &cex4_base_q()));
    }

    #[test]
    fn qs_starts_at_the_counterexample() {
        assert_eq!(qs_matrix(1), cex4_q_raw());
        let q2 = qs_matrix(2);
        assert_eq!(q2.cols(), 9);
        assert_eq!(q2.col_vec(6), q2.col_vec(7));
    }

    #[test]
    fn anticanonical_matches_column_sum() {
        let q = cex4_q_raw();
        let ones = vec![crate::linalg::Int::from(1); 8];
        let k = q.mul_vec(&ones);
        let expected: Vec<crate::linalg::Int> = cex4_anticanonical()
            .iter()
            .map(|&x| crate::linalg::Int::from(x))
            .collect();
        assert_eq!(k, expected);
    }
}
