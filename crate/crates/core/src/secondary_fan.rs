//! The movable cone, chamber enumeration, bunches of cones and the
//! chamber ↔ projective fan correspondence.
//!
//! Chambers are computed by subdividing the region of interest along every
//! hyperplane spanned by `r−1` independent columns of the weight matrix and
//! then replacing each full-dimensional cell by the intersection of all
//! simplicial column cones containing it. Each chamber is certified on
//! construction: it must equal the intersection of its bunch.

use crate::cones::{share_facet, Cone, IntVec};
use crate::gale::{gale_dual_of_w, FMatrix, WMatrix};
use crate::linalg::{det, dot, kernel_saturated, primitive_signed, Int, IntMat};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FanError {
    #[error("chamber is not inside the movable cone")]
    NotMovable,
    #[error("fan is not projective: bunch intersection has dimension {0}")]
    NotProjective(usize),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// all chambers of the secondary fan (inside the effective cone)
    All,
    /// only chambers inside the movable cone
    Mov,
}

/// A maximal cell of the secondary fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub cone: Cone,
    /// r-subsets J (0-based, ascending) with det(Q_J) ≠ 0 and γ ⊆ ⟨Q_J⟩.
    pub bunch: Vec<Vec<usize>>,
    /// canonical identifier: sorted primitive generators in decimal
    pub id: String,
    pub region: Region,
}

impl Chamber {
    pub fn generators(&self) -> &[IntVec] {
        self.cone.rays()
    }
}

/// A complete simplicial fan sharing the rays of a fan matrix, recorded by
/// the column index sets of its maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub fan_matrix: FMatrix,
    /// n-subsets of column indices (0-based, each ascending, list sorted)
    pub maximal_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn n(&self) -> usize {
        self.fan_matrix.n()
    }

    /// |det V_I| over all maximal cones.
    pub fn cone_determinants(&self) -> Vec<Int> {
        self.maximal_cones
            .iter()
            .map(|i| det(&self.fan_matrix.matrix().select_cols(i)).abs())
            .collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.cone_determinants().iter().all(|d| d.is_one())
    }
}

/// The movable cone: intersection of all delete-one-column cones.
pub fn mov_cone(q: &WMatrix) -> Cone {
    let cols = q.columns();
    let r = q.r();
    let mut mov = Cone::full_space(r);
    for i in 0..cols.len() {
        let sub: Vec<IntVec> = cols
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, c)| c.clone())
            .collect();
        mov = mov.intersect(&Cone::from_generators(&sub, r));
    }
    mov
}

/// All full-dimensional simplicial column cones ⟨Q_J⟩, |J| = r, det ≠ 0.
fn simplicial_column_cones(q: &WMatrix) -> Vec<(Vec<usize>, Cone)> {
    let cols = q.columns();
    let r = q.r();
    (0..cols.len())
        .combinations(r)
        .filter_map(|j| {
            let m = q.matrix().select_cols(&j);
            if det(&m).is_zero() {
                return None;
            }
            let gens: Vec<IntVec> = j.iter().map(|&i| cols[i].clone()).collect();
            Some((j, Cone::from_generators(&gens, r)))
        })
        .collect()
}

/// Candidate wall hyperplanes: primitive sign-normalized normals of the
/// hyperplanes spanned by r−1 independent columns.
fn wall_normals(q: &WMatrix) -> Vec<IntVec> {
    let cols = q.columns();
    let r = q.r();
    if r == 1 {
        return Vec::new();
    }
    let mut walls = BTreeSet::new();
    for sub in (0..cols.len()).combinations(r - 1) {
        let m = IntMat::from_row_vecs(sub.iter().map(|&i| cols[i].clone()).collect());
        let ker = kernel_saturated(&m);
        if ker.rows() != 1 {
            continue;
        }
        walls.insert(primitive_signed(&ker.row_vec(0)));
    }
    walls.into_iter().collect()
}

/// Enumerate the chambers of the secondary fan of `q`.
///
/// The result is deterministic: duplicate-free and sorted by canonical id.
pub fn enumerate_chambers(q: &WMatrix, region: Region) -> Vec<Chamber> {
    let r = q.r();
    let eff = q.effective_cone();
    let base = match region {
        Region::Mov => mov_cone(q),
        Region::All => eff.clone(),
    };
    if base.dim() < r {
        return Vec::new();
    }
    // binary subdivision of the base region along every wall hyperplane
    let mut cells = vec![base];
    for w in wall_normals(q) {
        let neg: IntVec = w.iter().map(|x| -x).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            let plus = cell.cut_halfspace(&w);
            let minus = cell.cut_halfspace(&neg);
            let pf = plus.dim() == r;
            let mf = minus.dim() == r;
            if pf && mf {
                next.push(plus);
                next.push(minus);
            } else {
                next.push(cell);
            }
        }
        cells = next;
    }
    let jcones = simplicial_column_cones(q);
    let mut by_id: std::collections::BTreeMap<String, Chamber> = Default::default();
    for cell in cells {
        let cover: Vec<&(Vec<usize>, Cone)> = jcones
            .iter()
            .filter(|(_, c)| cell.rays().iter().all(|g| c.contains(g)))
            .collect();
        assert!(
            !cover.is_empty(),
            "arrangement cell not covered by any simplicial column cone"
        );
        let mut gamma = cover[0].1.clone();
        for (_, c) in cover.iter().skip(1) {
            gamma = gamma.intersect(c);
        }
        // the subdivision refines the secondary fan, so the cell sits inside
        // the intersection of its covering cones
        assert!(
            gamma.contains_cone(&cell),
            "cell escapes the intersection of its covering cones"
        );
        let id = gamma.id();
        let bunch: Vec<Vec<usize>> = cover.iter().map(|(j, _)| j.clone()).collect();
        if let Some(prev) = by_id.get(&id) {
            assert_eq!(
                prev.bunch, bunch,
                "two cells of one chamber disagree on its bunch"
            );
            continue;
        }
        by_id.insert(
            id.clone(),
            Chamber {
                cone: gamma,
                bunch,
                id,
                region,
            },
        );
    }
    let chambers: Vec<Chamber> = by_id.into_values().collect();
    // minimality certification: a chamber is a minimal intersection, so no
    // chamber may contain another
    for a in &chambers {
        for b in &chambers {
            assert!(
                a.id == b.id || !a.cone.contains_cone(&b.cone),
                "chamber {} contains chamber {}: not minimal",
                a.id,
                b.id
            );
        }
    }
    chambers
}

/// Find a chamber by canonical id or positional alias `g<k>`/`γ<k>` in the
/// sorted enumeration order (1-based).
pub fn find_chamber<'a>(chambers: &'a [Chamber], key: &str) -> Option<&'a Chamber> {
    if let Some(rest) = key.strip_prefix('g').or_else(|| key.strip_prefix('γ')) {
        if let Ok(k) = rest.parse::<usize>() {
            if k >= 1 && k <= chambers.len() {
                return Some(&chambers[k - 1]);
            }
        }
    }
    chambers.iter().find(|c| c.id == key)
}

/// The projective simplicial fan associated with a chamber: the maximal
/// cones are the complements of the bunch index sets.
pub fn fan_from_chamber(v: &FMatrix, q: &WMatrix, gamma: &Chamber) -> Result<Fan, FanError> {
    let total = v.n() + v.r();
    let mov = mov_cone(q);
    if !mov.contains_cone(&gamma.cone) {
        return Err(FanError::NotMovable);
    }
    let mut maximal: Vec<Vec<usize>> = gamma
        .bunch
        .iter()
        .map(|j| (0..total).filter(|i| !j.contains(i)).collect())
        .collect();
    maximal.sort();
    for i in &maximal {
        if det(&v.matrix().select_cols(i)).is_zero() {
            return Err(FanError::Consistency(format!(
                "maximal cone {:?} is degenerate",
                i.iter().map(|x| x + 1).collect::<Vec<_>>()
            )));
        }
    }
    let fan = Fan {
        fan_matrix: v.clone(),
        maximal_cones: maximal,
    };
    let report = verify_fan(v, &fan);
    if !report.simplicial || !report.complete {
        return Err(FanError::Consistency(
            "reconstructed fan fails verification".into(),
        ));
    }
    Ok(fan)
}

/// The chamber of a projective simplicial fan: the intersection of its
/// bunch of complementary column cones.
pub fn chamber_from_fan(_v: &FMatrix, q: &WMatrix, fan: &Fan) -> Result<Chamber, FanError> {
    let total = q.n() + q.r();
    let cols = q.columns();
    let r = q.r();
    let mut gamma = Cone::full_space(r);
    let mut bunch = Vec::new();
    for i in &fan.maximal_cones {
        let j: Vec<usize> = (0..total).filter(|x| !i.contains(x)).collect();
        let gens: Vec<IntVec> = j.iter().map(|&x| cols[x].clone()).collect();
        gamma = gamma.intersect(&Cone::from_generators(&gens, r));
        bunch.push(j);
    }
    if gamma.dim() != r {
        return Err(FanError::NotProjective(gamma.dim()));
    }
    bunch.sort();
    let id = gamma.id();
    Ok(Chamber {
        cone: gamma,
        bunch,
        id,
        region: Region::Mov,
    })
}

/// Smoothness of the variety attached to a chamber: every maximal cone of
/// its fan must be unimodular.
pub fn is_smooth_chamber(v: &FMatrix, q: &WMatrix, gamma: &Chamber) -> Result<bool, FanError> {
    Ok(fan_from_chamber(v, q, gamma)?.is_smooth())
}

#[derive(Debug, Clone, Serialize)]
pub struct FanReport {
    pub simplicial: bool,
    /// every facet of every maximal cone is shared by exactly two cones
    pub complete: bool,
    pub smooth: bool,
    pub cone_determinants: Vec<String>,
    pub unpaired_facets: usize,
}

/// Verify simpliciality and completeness (by facet pairing) of a fan given
/// by maximal-cone index sets.
pub fn verify_fan(v: &FMatrix, fan: &Fan) -> FanReport {
    let dets = fan.cone_determinants();
    let simplicial = dets.iter().all(|d| !d.is_zero());
    let n = v.n();
    let mut facet_count = std::collections::BTreeMap::new();
    for cone in &fan.maximal_cones {
        for drop in cone {
            let facet: Vec<usize> = cone.iter().copied().filter(|i| i != drop).collect();
            *facet_count.entry(facet).or_insert(0usize) += 1;
        }
    }
    let unpaired = facet_count.values().filter(|&&c| c != 2).count();
    let complete = simplicial && unpaired == 0 && !fan.maximal_cones.is_empty() && n >= 1;
    FanReport {
        simplicial,
        complete,
        smooth: dets.iter().all(|d| d.is_one()),
        cone_determinants: dets.iter().map(|d| d.to_string()).collect(),
        unpaired_facets: unpaired,
    }
}

/// JSON report for one chamber.
#[derive(Debug, Clone, Serialize)]
pub struct ChamberReport {
    pub id: String,
    /// positional alias in enumeration order, 1-based
    pub index: usize,
    pub generators: Vec<Vec<String>>,
    /// 1-based column index sets
    pub bunch: Vec<Vec<usize>>,
    pub smooth: Option<bool>,
    pub region: Region,
}

pub fn chamber_report(gamma: &Chamber, index: usize, smooth: Option<bool>) -> ChamberReport {
    ChamberReport {
        id: gamma.id.clone(),
        index,
        generators: gamma
            .generators()
            .iter()
            .map(|g| g.iter().map(|x| x.to_string()).collect())
            .collect(),
        bunch: gamma
            .bunch
            .iter()
            .map(|j| j.iter().map(|x| x + 1).collect())
            .collect(),
        smooth,
        region: gamma.region,
    }
}

/// Pairs of adjacent chambers (sharing a facet), as index pairs into the
/// chamber list, each with the common facet.
pub fn adjacency(chambers: &[Chamber]) -> Vec<(usize, usize, Cone)> {
    let mut out = Vec::new();
    for a in 0..chambers.len() {
        for b in a + 1..chambers.len() {
            if let Some(f) = share_facet(&chambers[a].cone, &chambers[b].cone) {
                out.push((a, b, f));
            }
        }
    }
    out
}

/// Exact interior sample points certify that chambers tile the region:
/// relint points of distinct chambers lie in exactly one chamber each,
/// midpoints across shared facets lie in both, and every chamber facet
/// either lies on the boundary of the region or is shared with a neighbor
/// (so the union has no holes).
pub fn chambers_tile(region: &Cone, chambers: &[Chamber]) -> bool {
    for (i, c) in chambers.iter().enumerate() {
        let p = c.cone.relint_point();
        if !c.cone.in_relint(&p) {
            return false;
        }
        for (j, other) in chambers.iter().enumerate() {
            if i != j && other.cone.in_relint(&p) {
                return false;
            }
        }
    }
    let pairs = adjacency(chambers);
    for (a, b, f) in &pairs {
        let m = f.relint_point();
        if !chambers[*a].cone.contains(&m) || !chambers[*b].cone.contains(&m) {
            return false;
        }
    }
    for (i, c) in chambers.iter().enumerate() {
        'facets: for facet in c.cone.facet_cones() {
            let p = facet.relint_point();
            // on the region boundary?
            if region
                .facet_normals()
                .iter()
                .any(|n| dot(n, &p).is_zero())
            {
                continue;
            }
            for (a, b, f) in &pairs {
                if (*a == i || *b == i) && f == &facet {
                    continue 'facets;
                }
            }
            return false;
        }
    }
    true
}

/// Smoothness computed on the dual side: |det Q^I| over the bunch.
pub fn is_smooth_by_weight_minors(q: &WMatrix, gamma: &Chamber) -> bool {
    gamma
        .bunch
        .iter()
        .all(|j| det(&q.matrix().select_cols(j)).abs().is_one())
}

/// Does the chamber meet the boundary of the effective cone only at 0?
pub fn is_interior_chamber(q: &WMatrix, gamma: &Chamber) -> bool {
    let eff = q.effective_cone();
    eff.facet_normals()
        .iter()
        .all(|h| gamma.cone.intersect_hyperplane(h).is_zero())
}

/// Membership of a class in a chamber, distinguishing interior from boundary.
pub fn class_position(gamma: &Chamber, x: &[Int]) -> ClassPosition {
    if gamma.cone.in_relint(x) {
        ClassPosition::Interior
    } else if gamma.cone.contains(x) {
        ClassPosition::Boundary
    } else {
        ClassPosition::Outside
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassPosition {
    Interior,
    Boundary,
    Outside,
}

pub use crate::gale::gale_dual_of_f;

/// Convenience: dual fan matrix of a weight matrix.
pub fn dual_fan_matrix(q: &WMatrix) -> Result<FMatrix, crate::gale::GaleError> {
    gale_dual_of_w(q)
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    dot(a, b)
}
