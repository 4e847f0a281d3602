//! Bordering taxonomy of chambers, contraction and flip analysis, and the
//! classification reports for low Picard rank.
//!
//! A chamber is bordering when it meets the boundary of the effective cone
//! in dimension at least one, maximally bordering when a whole facet of the
//! chamber lies on that boundary, and internally bordering when the meeting
//! locus sits inside a facet of the chamber whose normal separates two
//! extremal generators of the effective cone lying on the boundary
//! hyperplane. These three grades drive the decision tree: maximal bordering
//! yields a projectivized-bundle structure, internal bordering a divisorial
//! blow-down or a flip, and the absence of any bordering witness flags the
//! interior-nef phenomenon.

use crate::cones::{inward_normal, share_facet, Cone, IntVec};
use crate::gale::{
    gale_dual_of_f, gale_dual_of_w, positive_ref, validate_f, validate_w, FMatrix, GaleError,
    WMatrix,
};
use crate::linalg::{
    dot, is_zero_vec, primitive, rational_inverse, solve_exact, unimodular_with_last_row, Int,
    IntMat, Rat,
};
use crate::mori::{
    enumerate_primitive_collections, primitive_collection_report, MoriError, PrimitiveCollection,
    PrimitiveCollectionReport,
};
use crate::secondary_fan::{enumerate_chambers, Chamber, FanError, Region};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Mori(#[from] MoriError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Gale(#[from] GaleError),
    #[error("chamber is not smooth; classification requires a regular fan")]
    NotSmooth,
    #[error("chamber is not maximally bordering with respect to the given collection")]
    NotMaxbord,
    #[error("not a divisorial contraction: {count} columns pair negatively with the wall")]
    NotDivisorial { count: usize },
    #[error("chambers are not adjacent")]
    NotAdjacent,
    #[error("no path between the chambers")]
    Disconnected,
    #[error("extracted base is not a chamber of its weight matrix")]
    BaseChamberMissing,
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BorderingKind {
    NonBordering,
    Bordering,
    Intbord,
    Maxbord,
}

/// Status of one facet hyperplane of the effective cone against a chamber.
#[derive(Debug, Clone, Serialize)]
pub struct HyperplaneStatus {
    /// inward primitive facet normal of the effective cone
    pub normal: Vec<String>,
    /// dim(γ ∩ H)
    pub meet_dim: usize,
    pub maxbord: bool,
    pub intbord: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BorderingStatus {
    pub kind: BorderingKind,
    /// facet hyperplanes of the effective cone meeting γ nontrivially
    pub hyperplanes: Vec<HyperplaneStatus>,
    /// maximally bordering with respect to at least two distinct hyperplanes
    pub totally_maxbord: bool,
}

impl BorderingStatus {
    pub fn is_bordering(&self) -> bool {
        self.kind != BorderingKind::NonBordering
    }
}

/// Internal-bordering test for a boundary hyperplane `h` of the effective
/// cone: either the meeting locus is a whole facet of the chamber, or some
/// chamber facet hyperplane contains it and separates two extremal
/// generators of the effective cone lying on `h`.
fn intbord_with_respect_to(
    gamma: &Chamber,
    eff: &Cone,
    h: &IntVec,
    meet: &Cone,
    meet_dim: usize,
    r: usize,
) -> bool {
    if meet_dim == r - 1 {
        return true;
    }
    let on_h: Vec<&IntVec> = eff
        .rays()
        .iter()
        .filter(|q| dot(h, q).is_zero())
        .collect();
    for nprime in gamma.cone.facet_normals() {
        // γ∩H ⊆ γ∩H' is equivalent to H' vanishing on the meeting locus
        if !meet.rays().iter().all(|g| dot(nprime, g).is_zero()) {
            continue;
        }
        let pos = on_h.iter().any(|q| dot(nprime, q).is_positive());
        let neg = on_h.iter().any(|q| dot(nprime, q).is_negative());
        if pos && neg {
            return true;
        }
    }
    false
}

/// Classify how a chamber meets the boundary of the effective cone.
pub fn bordering_status(q: &WMatrix, gamma: &Chamber) -> BorderingStatus {
    let r = q.r();
    let eff = q.effective_cone();
    let mut hyperplanes = Vec::new();
    let mut maxbord_count = 0usize;
    let mut kind = BorderingKind::NonBordering;
    for h in eff.facet_normals() {
        let meet = gamma.cone.intersect_hyperplane(h);
        let meet_dim = meet.dim();
        if meet_dim == 0 {
            continue;
        }
        let maxbord = meet_dim == r - 1;
        let intbord = intbord_with_respect_to(gamma, &eff, h, &meet, meet_dim, r);
        if maxbord {
            maxbord_count += 1;
        }
        let this_kind = if maxbord {
            BorderingKind::Maxbord
        } else if intbord {
            BorderingKind::Intbord
        } else {
            BorderingKind::Bordering
        };
        kind = kind.max(this_kind);
        hyperplanes.push(HyperplaneStatus {
            normal: h.iter().map(|x| x.to_string()).collect(),
            meet_dim,
            maxbord,
            intbord,
        });
    }
    BorderingStatus {
        kind,
        hyperplanes,
        totally_maxbord: maxbord_count >= 2,
    }
}

/// A nef primitive collection whose support hyperplane borders the chamber.
#[derive(Debug, Clone)]
pub struct BorderingWitness {
    pub collection: PrimitiveCollection,
    /// primitive support normal, oriented nonnegatively on the effective cone
    pub support: IntVec,
    /// dim(γ ∩ H_P)
    pub meet_dim: usize,
}

/// All bordering witnesses of a chamber, sorted by support normal then by
/// collection indices (the first entry is the canonical witness).
pub fn bordering_witnesses(
    v: &FMatrix,
    q: &WMatrix,
    gamma: &Chamber,
) -> Result<Vec<BorderingWitness>, ClassifyError> {
    let eff = q.effective_cone();
    let facet_set: std::collections::BTreeSet<IntVec> =
        eff.facet_normals().iter().cloned().collect();
    let pcs = enumerate_primitive_collections(v, q, gamma)?;
    let mut out = Vec::new();
    for pc in pcs.into_iter().filter(|p| p.nef) {
        let support = primitive(&pc.class);
        if !facet_set.contains(&support) {
            continue;
        }
        let meet = gamma.cone.intersect_hyperplane(&support);
        let meet_dim = meet.dim();
        if meet_dim >= 1 {
            out.push(BorderingWitness {
                collection: pc,
                support,
                meet_dim,
            });
        }
    }
    out.sort_by(|a, b| {
        a.support
            .cmp(&b.support)
            .then(a.collection.indices.cmp(&b.collection.indices))
    });
    Ok(out)
}

/// The canonical bordering witness, or None (the interior-nef outcome).
pub fn find_bordering_witness(
    v: &FMatrix,
    q: &WMatrix,
    gamma: &Chamber,
) -> Result<Option<BorderingWitness>, ClassifyError> {
    Ok(bordering_witnesses(v, q, gamma)?.into_iter().next())
}

/// Base data extracted from a maximally bordering chamber: the fibration
/// base's fan and weight matrices and its nef chamber.
#[derive(Debug, Clone)]
pub struct PtbExtraction {
    pub base_v: FMatrix,
    pub base_q: WMatrix,
    pub base_chamber: Chamber,
    /// unimodular transform whose last row is the support normal
    pub transform: IntMat,
}

/// Extract the base of the projectivized-bundle structure attached to a
/// maximally bordering chamber: apply a unimodular row transform sending the
/// support hyperplane to the last coordinate, then delete the bottom row and
/// the collection's columns.
pub fn extract_ptb_base(
    v: &FMatrix,
    q: &WMatrix,
    gamma: &Chamber,
    pc: &PrimitiveCollection,
) -> Result<PtbExtraction, ClassifyError> {
    let r = q.r();
    debug_assert!(is_zero_vec(&v.matrix().mul_vec(&pc.relation)));
    let support = primitive(&pc.class);
    let meet = gamma.cone.intersect_hyperplane(&support);
    if !pc.nef || meet.dim() != r - 1 {
        return Err(ClassifyError::NotMaxbord);
    }
    let a = unimodular_with_last_row(&support);
    let tq = a.mul(q.matrix());
    for j in 0..tq.cols() {
        if tq[(r - 1, j)].is_negative() {
            return Err(ClassifyError::Consistency(
                "support row of the transformed weight matrix is not nonnegative".into(),
            ));
        }
    }
    let keep: Vec<usize> = (0..tq.cols()).filter(|j| !pc.indices.contains(j)).collect();
    let mut rows = Vec::with_capacity(r - 1);
    for i in 0..r - 1 {
        rows.push(
            keep.iter()
                .map(|&j| tq[(i, j)].clone())
                .collect::<Vec<Int>>(),
        );
    }
    let raw = IntMat::from_row_vecs(rows);
    let canonical = positive_ref(&raw)?;
    let base_q = validate_w(&canonical, r - 1).map_err(GaleError::InvalidW)?;
    let base_v = gale_dual_of_w(&base_q)?;
    // change of basis from the raw deleted matrix to the canonical
    // representative, applied to the chamber facet
    let u = change_of_basis(&raw, &canonical)?;
    let gens: Vec<IntVec> = meet
        .rays()
        .iter()
        .map(|g| {
            let tg = a.mul_vec(g);
            debug_assert!(tg[r - 1].is_zero());
            u.mul_vec(&tg[..r - 1])
        })
        .collect();
    let base_chamber = locate_chamber(&base_q, &gens)?;
    Ok(PtbExtraction {
        base_v,
        base_q,
        base_chamber,
        transform: a,
    })
}

/// `u` with `u·from = to` for two bases of the same row lattice.
fn change_of_basis(from: &IntMat, to: &IntMat) -> Result<IntMat, ClassifyError> {
    let k = from.rows();
    let ft = from.transpose();
    let mut rows = Vec::with_capacity(k);
    for i in 0..to.rows() {
        let b: Vec<Rat> = to.row(i).iter().map(|x| Rat::from(x.clone())).collect();
        let x = solve_exact(&ft, &b)
            .map_err(|e| ClassifyError::Consistency(format!("change of basis failed: {e}")))?;
        if !x.iter().all(|c| c.is_integer()) {
            return Err(ClassifyError::Consistency(
                "change of basis is not integral".into(),
            ));
        }
        rows.push(x.iter().map(|c| c.to_integer()).collect());
    }
    Ok(IntMat::from_row_vecs(rows))
}

/// Find the chamber of `q` spanned by the given generators.
fn locate_chamber(q: &WMatrix, gens: &[IntVec]) -> Result<Chamber, ClassifyError> {
    let cone = Cone::from_generators(gens, q.r());
    let chambers = enumerate_chambers(q, Region::Mov);
    chambers
        .into_iter()
        .find(|c| c.cone == cone)
        .ok_or(ClassifyError::BaseChamberMissing)
}

/// Result of blowing down the divisor singled out by a chamber facet.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub base_v: FMatrix,
    pub base_q: WMatrix,
    pub base_chamber: Chamber,
    /// 0-based column index of the contracted divisor
    pub contracted_index: usize,
    /// n'·Q for the inward facet normal n'
    pub wall_relation: IntVec,
}

/// Blow down along a facet hyperplane of the chamber with exactly one
/// negatively-paired column: delete that fan-matrix column and push the
/// chamber facet into the new class space.
pub fn contract_divisor(
    v: &FMatrix,
    q: &WMatrix,
    gamma: &Chamber,
    nprime: &IntVec,
) -> Result<Contraction, ClassifyError> {
    if !gamma
        .cone
        .facet_normals()
        .iter()
        .any(|n| n == nprime)
    {
        return Err(ClassifyError::Consistency(
            "normal is not an inward facet normal of the chamber".into(),
        ));
    }
    let rel: IntVec = q.columns().iter().map(|c| dot(nprime, c)).collect();
    let negatives: Vec<usize> = rel
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_negative())
        .map(|(j, _)| j)
        .collect();
    if negatives.len() != 1 {
        return Err(ClassifyError::NotDivisorial {
            count: negatives.len(),
        });
    }
    let j = negatives[0];
    let vm = v.matrix().delete_cols(&[j]);
    let base_v = validate_f(&vm, v.n()).map_err(GaleError::InvalidF)?;
    let base_q = gale_dual_of_f(&base_v)?;
    // pullback of base classes: column k of the base maps to q_k + c_k·q_j
    // with c_k = -rel_k/rel_j, which lands inside the facet hyperplane
    let r = q.r();
    let cols = q.columns();
    let keep: Vec<usize> = (0..cols.len()).filter(|&x| x != j).collect();
    let mut pushed = RatMatBuilder::new(r, keep.len());
    for (kk, &k) in keep.iter().enumerate() {
        let c = Rat::new(-rel[k].clone(), rel[j].clone());
        for (i, (xk, xj)) in cols[k].iter().zip(&cols[j]).enumerate() {
            let val = Rat::from(xk.clone()) + &c * Rat::from(xj.clone());
            pushed.set(i, kk, val);
        }
    }
    // express the pushed columns over the canonical base weight matrix to
    // get the pullback matrix m with m·base_q = pushed
    let m = pullback_matrix(&base_q, &pushed)?;
    let meet = gamma.cone.intersect_hyperplane(nprime);
    let gens: Vec<IntVec> = meet
        .rays()
        .iter()
        .map(|g| pullback_preimage(&m, g))
        .collect::<Result<_, _>>()?;
    let base_chamber = locate_chamber(&base_q, &gens)?;
    Ok(Contraction {
        base_v,
        base_q,
        base_chamber,
        contracted_index: j,
        wall_relation: rel,
    })
}

struct RatMatBuilder {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatBuilder {
    fn new(rows: usize, cols: usize) -> Self {
        RatMatBuilder {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }
    fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }
    fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

/// Solve `m·base_q = pushed` for the rational pullback matrix `m`
/// (r rows, r-1 columns).
fn pullback_matrix(base_q: &WMatrix, pushed: &RatMatBuilder) -> Result<Vec<Vec<Rat>>, ClassifyError> {
    let rprime = base_q.r();
    let qt = base_q.matrix().transpose(); // (n+r-1) × (r-1)
    let mut m = Vec::with_capacity(pushed.rows);
    for i in 0..pushed.rows {
        let b: Vec<Rat> = (0..pushed.cols).map(|k| pushed.get(i, k).clone()).collect();
        let x = solve_exact(&qt, &b).map_err(|e| {
            ClassifyError::Consistency(format!("pullback system inconsistent: {e}"))
        })?;
        debug_assert_eq!(x.len(), rprime);
        m.push(x);
    }
    Ok(m)
}

/// Solve `m·y = g` exactly and scale the result to a primitive integer vector.
fn pullback_preimage(m: &[Vec<Rat>], g: &[Int]) -> Result<IntVec, ClassifyError> {
    let rows = m.len();
    let cols = m[0].len();
    // clear denominators row by row into an integer system
    let mut int_rows = Vec::with_capacity(rows);
    let mut rhs = Vec::with_capacity(rows);
    for (i, row) in m.iter().enumerate() {
        let den = row
            .iter()
            .fold(Int::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        let r: Vec<Int> = row
            .iter()
            .map(|x| (x * Rat::from(den.clone())).to_integer())
            .collect();
        int_rows.push(r);
        rhs.push(Rat::from(&g[i] * &den));
    }
    let a = IntMat::from_row_vecs(int_rows);
    let _ = cols;
    let y = solve_exact(&a, &rhs)
        .map_err(|e| ClassifyError::Consistency(format!("facet preimage failed: {e}")))?;
    let den = y
        .iter()
        .fold(Int::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let iy: IntVec = y
        .iter()
        .map(|x| (x * Rat::from(den.clone())).to_integer())
        .collect();
    Ok(primitive(&iy))
}

/// One wall crossing between adjacent chambers.
#[derive(Debug, Clone, Serialize)]
pub struct WallCrossing {
    pub from: String,
    pub to: String,
    /// inward primitive normal with respect to `from`
    pub normal: Vec<String>,
    /// n·Q
    pub relation: Vec<String>,
    /// 1-based indices with negative relation entry: the locus contracted by
    /// the map into the `from` side
    pub contract_fwd: Vec<usize>,
    /// 1-based indices with positive relation entry
    pub contract_bwd: Vec<usize>,
}

pub fn wall_crossing(
    q: &WMatrix,
    from: &Chamber,
    to: &Chamber,
) -> Result<WallCrossing, ClassifyError> {
    let f = share_facet(&from.cone, &to.cone).ok_or(ClassifyError::NotAdjacent)?;
    let n = inward_normal(&from.cone, &f).ok_or(ClassifyError::NotAdjacent)?;
    Ok(wall_crossing_with_normal(q, from, to, &n))
}

fn wall_crossing_with_normal(
    q: &WMatrix,
    from: &Chamber,
    to: &Chamber,
    n: &IntVec,
) -> WallCrossing {
    let relation: IntVec = q.columns().iter().map(|c| dot(n, c)).collect();
    let contract_fwd = relation
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_negative())
        .map(|(j, _)| j + 1)
        .collect();
    let contract_bwd = relation
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_positive())
        .map(|(j, _)| j + 1)
        .collect();
    WallCrossing {
        from: from.id.clone(),
        to: to.id.clone(),
        normal: n.iter().map(|x| x.to_string()).collect(),
        relation: relation.iter().map(|x| x.to_string()).collect(),
        contract_fwd,
        contract_bwd,
    }
}

/// Shortest chain of wall crossings between two chambers of the movable
/// region. Breadth-first over the adjacency graph with neighbors visited in
/// canonical-id order; the lexicographically least id-sequence among the
/// shortest paths is returned.
pub fn flip_path(
    q: &WMatrix,
    chambers: &[Chamber],
    from: &Chamber,
    to: &Chamber,
) -> Result<Vec<WallCrossing>, ClassifyError> {
    let paths = shortest_paths(chambers, from, to)?;
    let best = paths.first().ok_or(ClassifyError::Disconnected)?;
    let mut out = Vec::new();
    for w in best.windows(2) {
        out.push(wall_crossing(q, &chambers[w[0]], &chambers[w[1]])?);
    }
    Ok(out)
}

/// All shortest paths (as index sequences into `chambers`), sorted by the
/// id-sequence; the first is the canonical route.
pub fn shortest_paths(
    chambers: &[Chamber],
    from: &Chamber,
    to: &Chamber,
) -> Result<Vec<Vec<usize>>, ClassifyError> {
    let idx_of = |c: &Chamber| chambers.iter().position(|x| x.id == c.id);
    let (s, t) = match (idx_of(from), idx_of(to)) {
        (Some(s), Some(t)) => (s, t),
        _ => return Err(ClassifyError::Disconnected),
    };
    if s == t {
        return Ok(vec![vec![s]]);
    }
    let k = chambers.len();
    let mut adj = vec![Vec::new(); k];
    for a in 0..k {
        for b in 0..k {
            if a != b && share_facet(&chambers[a].cone, &chambers[b].cone).is_some() {
                adj[a].push(b);
            }
        }
    }
    for nb in adj.iter_mut() {
        nb.sort_by(|&x, &y| chambers[x].id.cmp(&chambers[y].id));
    }
    // BFS layering
    let mut dist = vec![usize::MAX; k];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist[t] == usize::MAX {
        return Err(ClassifyError::Disconnected);
    }
    // collect all shortest paths by walking the BFS DAG
    let mut paths = Vec::new();
    let mut stack = vec![(s, vec![s])];
    while let Some((u, path)) = stack.pop() {
        if u == t {
            paths.push(path);
            continue;
        }
        for &w in &adj[u] {
            if dist[w] == dist[u] + 1 {
                let mut p = path.clone();
                p.push(w);
                stack.push((w, p));
            }
        }
    }
    paths.sort_by_key(|p| {
        p.iter()
            .map(|&i| chambers[i].id.clone())
            .collect::<Vec<_>>()
    });
    Ok(paths)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    ProjectiveSpace,
    PtbOverPm,
    DoublePtbTower,
    FibrationalContraction,
    FiberTypeNonfibration,
    ThreefoldCases567,
    CounterexampleInteriorNef,
    GenericBordering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    PtbExtraction,
    BlowDown,
    WallCrossing,
}

/// One step of the contraction chain, with the base pair it produces.
#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub kind: StepKind,
    /// support or facet normal driving the step
    pub normal: Vec<String>,
    /// 1-based contracted column for blow-downs
    pub contracted_index: Option<usize>,
    /// 1-based collection indices for bundle extractions
    pub collection: Option<Vec<usize>>,
    pub base_v: Option<Vec<Vec<String>>>,
    pub base_q: Option<Vec<Vec<String>>>,
    /// wall data for flip steps
    pub wall: Option<WallCrossing>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub r: usize,
    pub case_label: CaseLabel,
    /// threefold sub-case (5, 6 or 7) when n = 3 and r = 4
    pub threefold_case: Option<u8>,
    pub bordering: BorderingStatus,
    pub witness: Option<PrimitiveCollectionReport>,
    pub chain: Vec<ChainStep>,
    /// no nef class meets the boundary of the effective cone
    pub counterexample_interior_nef: bool,
}

fn matrix_strings(m: &IntMat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect()
}

/// Classify a smooth chamber per the rank ≤ 3 decision tree, its threefold
/// extension for n = 3, r = 4, and the generic bordering report otherwise.
pub fn classification_report(
    v: &FMatrix,
    q: &WMatrix,
    gamma: &Chamber,
) -> Result<ClassificationReport, ClassifyError> {
    let smooth = crate::secondary_fan::is_smooth_chamber(v, q, gamma)?;
    if !smooth {
        return Err(ClassifyError::NotSmooth);
    }
    let n = v.n();
    let r = q.r();
    let bordering = bordering_status(q, gamma);
    if r == 1 {
        return Ok(ClassificationReport {
            n,
            r,
            case_label: CaseLabel::ProjectiveSpace,
            threefold_case: None,
            bordering,
            witness: None,
            chain: Vec::new(),
            counterexample_interior_nef: false,
        });
    }
    let witnesses = bordering_witnesses(v, q, gamma)?;
    let witness_report = witnesses
        .first()
        .map(|w| primitive_collection_report(&w.collection));
    let full_analysis = r <= 3 || (n == 3 && r == 4);
    if witnesses.is_empty() {
        let interior = crate::secondary_fan::is_interior_chamber(q, gamma);
        return Ok(ClassificationReport {
            n,
            r,
            case_label: if interior {
                CaseLabel::CounterexampleInteriorNef
            } else {
                CaseLabel::GenericBordering
            },
            threefold_case: None,
            bordering,
            witness: None,
            chain: Vec::new(),
            counterexample_interior_nef: interior,
        });
    }
    if !full_analysis {
        return Ok(ClassificationReport {
            n,
            r,
            case_label: CaseLabel::GenericBordering,
            threefold_case: None,
            bordering,
            witness: witness_report,
            chain: Vec::new(),
            counterexample_interior_nef: false,
        });
    }

    // maximal bordering: projectivized-bundle structure over the extracted base
    if let Some(w) = witnesses.iter().find(|w| w.meet_dim == r - 1) {
        let ext = extract_ptb_base(v, q, gamma, &w.collection)?;
        let base_report = classification_report(&ext.base_v, &ext.base_q, &ext.base_chamber)?;
        let mut chain = vec![ChainStep {
            kind: StepKind::PtbExtraction,
            normal: w.support.iter().map(|x| x.to_string()).collect(),
            contracted_index: None,
            collection: Some(w.collection.indices.iter().map(|i| i + 1).collect()),
            base_v: Some(matrix_strings(ext.base_v.matrix())),
            base_q: Some(matrix_strings(ext.base_q.matrix())),
            wall: None,
        }];
        chain.extend(base_report.chain.clone());
        let (case_label, threefold_case) = if n == 3 && r == 4 {
            (CaseLabel::ThreefoldCases567, Some(5))
        } else if r == 2 {
            (CaseLabel::PtbOverPm, None)
        } else {
            (CaseLabel::DoublePtbTower, None)
        };
        return Ok(ClassificationReport {
            n,
            r,
            case_label,
            threefold_case,
            bordering,
            witness: Some(primitive_collection_report(&w.collection)),
            chain,
            counterexample_interior_nef: false,
        });
    }

    // internal bordering: look for a divisorial contraction through a facet
    // hyperplane containing the meeting locus
    for w in &witnesses {
        let meet = gamma.cone.intersect_hyperplane(&w.support);
        for nprime in gamma.cone.facet_normals() {
            if !meet.rays().iter().all(|g| dot(nprime, g).is_zero()) {
                continue;
            }
            match contract_divisor(v, q, gamma, nprime) {
                Ok(con) => {
                    let base_report =
                        classification_report(&con.base_v, &con.base_q, &con.base_chamber)?;
                    let mut chain = vec![ChainStep {
                        kind: StepKind::BlowDown,
                        normal: nprime.iter().map(|x| x.to_string()).collect(),
                        contracted_index: Some(con.contracted_index + 1),
                        collection: None,
                        base_v: Some(matrix_strings(con.base_v.matrix())),
                        base_q: Some(matrix_strings(con.base_q.matrix())),
                        wall: None,
                    }];
                    chain.extend(base_report.chain.clone());
                    let (case_label, threefold_case) = if n == 3 && r == 4 {
                        let sub = match base_report.case_label {
                            CaseLabel::DoublePtbTower => 6,
                            CaseLabel::FibrationalContraction => 7,
                            _ => {
                                return Err(ClassifyError::Consistency(format!(
                                    "unexpected base label {:?} for a threefold blow-down",
                                    base_report.case_label
                                )))
                            }
                        };
                        (CaseLabel::ThreefoldCases567, Some(sub))
                    } else {
                        (CaseLabel::FibrationalContraction, None)
                    };
                    return Ok(ClassificationReport {
                        n,
                        r,
                        case_label,
                        threefold_case,
                        bordering,
                        witness: Some(primitive_collection_report(&w.collection)),
                        chain,
                        counterexample_interior_nef: false,
                    });
                }
                Err(ClassifyError::NotDivisorial { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
    }

    // no divisorial contraction: fiber-type contraction through a flip
    if n <= 3 {
        return Err(ClassifyError::Consistency(
            "fiber-type non-fibration case reached with n ≤ 3".into(),
        ));
    }
    let w = &witnesses[0];
    let chain = flip_step_chain(v, q, gamma, w)?;
    Ok(ClassificationReport {
        n,
        r,
        case_label: CaseLabel::FiberTypeNonfibration,
        threefold_case: None,
        bordering,
        witness: Some(primitive_collection_report(&w.collection)),
        chain,
        counterexample_interior_nef: false,
    })
}

/// Record the small-contraction wall crossing attached to an internal
/// bordering witness without a divisorial route.
fn flip_step_chain(
    v: &FMatrix,
    q: &WMatrix,
    gamma: &Chamber,
    w: &BorderingWitness,
) -> Result<Vec<ChainStep>, ClassifyError> {
    let _ = v;
    let meet = gamma.cone.intersect_hyperplane(&w.support);
    let chambers = enumerate_chambers(q, Region::Mov);
    for nprime in gamma.cone.facet_normals() {
        if !meet.rays().iter().all(|g| dot(nprime, g).is_zero()) {
            continue;
        }
        // adjacent chamber across this internal wall, if any
        for other in &chambers {
            if other.id == gamma.id {
                continue;
            }
            if let Some(f) = share_facet(&gamma.cone, &other.cone) {
                let n = inward_normal(&gamma.cone, &f);
                if n.as_deref() == Some(nprime.as_slice()) {
                    let wall = wall_crossing_with_normal(q, gamma, other, nprime);
                    return Ok(vec![ChainStep {
                        kind: StepKind::WallCrossing,
                        normal: nprime.iter().map(|x| x.to_string()).collect(),
                        contracted_index: None,
                        collection: Some(w.collection.indices.iter().map(|i| i + 1).collect()),
                        base_v: None,
                        base_q: None,
                        wall: Some(wall),
                    }]);
                }
            }
        }
    }
    Err(ClassifyError::Consistency(
        "no internal wall found for the fiber-type case".into(),
    ))
}

/// Inward facet normals of a simplicial chamber from the inverse of its
/// generator matrix (cross-check utility).
pub fn simplicial_facet_normals(gamma: &Chamber) -> Option<Vec<IntVec>> {
    let rays = gamma.cone.rays();
    let r = gamma.cone.ambient_dim();
    if rays.len() != r {
        return None;
    }
    let g = IntMat::from_row_vecs(rays.to_vec()).transpose();
    let inv = rational_inverse(&g).ok()?;
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let den = (0..r)
            .map(|j| inv[(i, j)].denom().clone())
            .fold(Int::one(), num_integer::lcm);
        let row: IntVec = (0..r)
            .map(|j| (&inv[(i, j)] * Rat::from(den.clone())).to_integer())
            .collect();
        out.push(primitive(&row));
    }
    out.sort();
    Some(out)
}
