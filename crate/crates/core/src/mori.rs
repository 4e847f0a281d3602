//! Primitive collections and relations, numerical classes, support
//! hyperplanes, and Mori/Nef duality.
//!
//! A primitive collection of a simplicial fan is a minimal set of rays not
//! contained in a single cone. On the Gale-dual side it is recognized purely
//! by cone inclusions: `P` is primitive for the fan of a chamber γ iff
//! γ ⊄ ⟨Q^P⟩ while γ ⊆ ⟨Q^{P∖{i}}⟩ for every i ∈ P. Containment is monotone
//! under enlarging `P`, which the enumeration exploits apriori-style.

use crate::cones::{Cone, IntVec};
use crate::gale::{FMatrix, WMatrix};
use crate::linalg::{dot, solve_exact_int, Int, IntMat, Rat};
use crate::secondary_fan::{fan_from_chamber, Chamber, Fan, FanError};
use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MoriError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("vector lies in the relative interior of no fan cone")]
    NoContainingCone,
    #[error("relation vector is not in the row lattice of the weight matrix")]
    NotInRowLattice,
    #[error("Mori/Nef duality failed for chamber {0}")]
    DualityFailure(String),
}

/// A primitive collection enriched with its relation data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveCollection {
    /// 0-based ray indices, ascending
    pub indices: Vec<usize>,
    /// the integral relation r_ℤ(P) among the fan-matrix columns
    pub relation: Vec<Int>,
    /// least common denominator cleared from the rational relation
    pub scale: Int,
    /// ray indices of the cone containing the sum of the collection in its
    /// relative interior (empty when the sum is zero)
    pub sigma: Vec<usize>,
    /// positive rational coefficients attached to `sigma`
    pub coeffs: Vec<Rat>,
    /// the numerical class n_P with Qᵀ·n_P = r_ℤ(P)
    pub class: Vec<Int>,
    /// all relation entries nonnegative
    pub nef: bool,
}

impl PrimitiveCollection {
    pub fn support_hyperplane(&self) -> Hyperplane {
        Hyperplane::from_normal(&self.class)
    }
}

/// A hyperplane through the origin in class space, stored by a primitive
/// normal with the first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Hyperplane {
    pub normal: Vec<String>,
}

impl Hyperplane {
    pub fn from_normal(n: &[Int]) -> Hyperplane {
        let n = crate::linalg::primitive_signed(n);
        Hyperplane {
            normal: n.iter().map(|x| x.to_string()).collect(),
        }
    }

    pub fn normal_vec(&self) -> IntVec {
        self.normal
            .iter()
            .map(|s| s.parse().expect("stored normal entries are integers"))
            .collect()
    }
}

/// Is `gamma` contained in the cone spanned by the columns of `q` outside `s`?
fn chamber_in_complement_cone(q: &WMatrix, gamma: &Chamber, s: &[usize]) -> bool {
    let cols = q.columns();
    let gens: Vec<IntVec> = (0..cols.len())
        .filter(|j| !s.contains(j))
        .map(|j| cols[j].clone())
        .collect();
    let cone = Cone::from_generators(&gens, q.r());
    gamma.generators().iter().all(|g| cone.contains(g))
}

/// All primitive collections of the fan of `gamma`, by the cone-inclusion
/// criterion, enriched with relation data. Sorted by size then
/// lexicographically.
pub fn enumerate_primitive_collections(
    v: &FMatrix,
    q: &WMatrix,
    gamma: &Chamber,
) -> Result<Vec<PrimitiveCollection>, MoriError> {
    let fan = fan_from_chamber(v, q, gamma)?;
    let total = v.n() + v.r();
    let max_size = v.n() + 1;
    // frontier of sets S with γ ⊆ <Q^S>, grown one element at a time; a set
    // whose maximal proper subsets all lie in the previous frontier but which
    // itself fails containment is exactly a primitive collection
    let mut frontier: BTreeSet<Vec<usize>> = (0..total)
        .map(|i| vec![i])
        .filter(|s| chamber_in_complement_cone(q, gamma, s))
        .collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for size in 2..=max_size {
        if frontier.is_empty() {
            break;
        }
        let mut next = BTreeSet::new();
        let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in &frontier {
            for i in 0..total {
                if s.contains(&i) {
                    continue;
                }
                let mut c = s.clone();
                c.push(i);
                c.sort();
                candidates.insert(c);
            }
        }
        for c in candidates {
            let all_subsets_ok = (0..c.len()).all(|drop| {
                let sub: Vec<usize> = c
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != drop)
                    .map(|(_, &x)| x)
                    .collect();
                frontier.contains(&sub)
            });
            if !all_subsets_ok {
                continue;
            }
            if chamber_in_complement_cone(q, gamma, &c) {
                next.insert(c);
            } else {
                found.push(c);
            }
        }
        let _ = size;
        frontier = next;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    found
        .into_iter()
        .map(|p| primitive_relation(v, q, &fan, &p))
        .collect()
}

/// Primitive collections of a fan straight from the definition: `P` is not
/// contained in any maximal cone but every proper subset is. Used as the
/// independent oracle for the cone-inclusion criterion.
pub fn primitive_collections_brute_force(fan: &Fan) -> Vec<Vec<usize>> {
    let total = fan.fan_matrix.n() + fan.fan_matrix.r();
    let maximal: Vec<BTreeSet<usize>> = fan
        .maximal_cones
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    let mut out = Vec::new();
    for size in 2..=fan.n() + 1 {
        for p in (0..total).combinations(size) {
            let sp: BTreeSet<usize> = p.iter().copied().collect();
            if maximal.iter().any(|m| sp.is_subset(m)) {
                continue;
            }
            let every_proper_subset_in_a_cone = p.iter().all(|i| {
                let mut sub = sp.clone();
                sub.remove(i);
                maximal.iter().any(|m| sub.is_subset(m))
            });
            if every_proper_subset_in_a_cone {
                out.push(p);
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// The unique relation expressing the sum over `p` of the fan-matrix columns
/// inside the cone whose relative interior contains it.
pub fn primitive_relation(
    v: &FMatrix,
    q: &WMatrix,
    fan: &Fan,
    p: &[usize],
) -> Result<PrimitiveCollection, MoriError> {
    let n = v.n();
    let total = n + v.r();
    let cols = v.columns();
    let mut vp = vec![Int::zero(); n];
    for &j in p {
        for (a, b) in vp.iter_mut().zip(&cols[j]) {
            *a += b;
        }
    }
    let (sigma, coeffs) = if vp.iter().all(|x| x.is_zero()) {
        (Vec::new(), Vec::new())
    } else {
        let mut hit = None;
        for cone_idx in &fan.maximal_cones {
            let vi = v.matrix().select_cols(cone_idx);
            let Ok(c) = solve_exact_int(&vi, &vp) else {
                continue;
            };
            if c.iter().all(|x| !x.is_negative()) {
                let sigma: Vec<usize> = cone_idx
                    .iter()
                    .zip(&c)
                    .filter(|(_, x)| x.is_positive())
                    .map(|(&i, _)| i)
                    .collect();
                let coeffs: Vec<Rat> = c.into_iter().filter(|x| x.is_positive()).collect();
                hit = Some((sigma, coeffs));
                break;
            }
        }
        hit.ok_or(MoriError::NoContainingCone)?
    };
    // rational relation: +1 on P, -c on sigma (overlaps subtract)
    let mut b = vec![Rat::zero(); total];
    for &j in p {
        b[j] += Rat::one();
    }
    for (&j, c) in sigma.iter().zip(&coeffs) {
        b[j] -= c;
    }
    let l = b
        .iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let relation: Vec<Int> = b.iter().map(|x| (x * Rat::from(l.clone())).to_integer()).collect();
    let nef = relation.iter().all(|x| !x.is_negative());
    let class = numerical_class(q, &relation)?;
    Ok(PrimitiveCollection {
        indices: p.to_vec(),
        relation,
        scale: l,
        sigma,
        coeffs,
        class,
        nef,
    })
}

/// The unique `n` with `Qᵀ·n = rel`. Errors when `rel` is not in the row
/// lattice of `q`.
pub fn numerical_class(q: &WMatrix, rel: &[Int]) -> Result<IntVec, MoriError> {
    let qt = q.matrix().transpose();
    let x = solve_exact_int(&qt, rel).map_err(|_| MoriError::NotInRowLattice)?;
    if !x.iter().all(|c| c.is_integer()) {
        return Err(MoriError::NotInRowLattice);
    }
    Ok(x.iter().map(|c| c.to_integer()).collect())
}

/// The Mori cone: spanned by the numerical classes of all primitive
/// collections of the chamber's fan.
pub fn mori_cone(v: &FMatrix, q: &WMatrix, gamma: &Chamber) -> Result<Cone, MoriError> {
    let pcs = enumerate_primitive_collections(v, q, gamma)?;
    let gens: Vec<IntVec> = pcs.into_iter().map(|p| p.class).collect();
    Ok(Cone::from_generators(&gens, q.r()))
}

/// Mori/Nef duality: the dual of the Mori cone must be the chamber itself.
pub fn nef_cone_check(v: &FMatrix, q: &WMatrix, gamma: &Chamber) -> Result<bool, MoriError> {
    let mori = mori_cone(v, q, gamma)?;
    Ok(mori.dual() == gamma.cone)
}

/// The lemma that every bunch cone keeps a generator off the collection:
/// for a nef primitive collection `p`, no bunch index set is contained in `p`.
pub fn bunch_meets_complement(gamma: &Chamber, p: &[usize]) -> bool {
    gamma
        .bunch
        .iter()
        .all(|j| j.iter().any(|i| !p.contains(i)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NefPosition {
    Ample,
    NefNotAmple,
    Outside,
}

/// Position report for the anticanonical class.
#[derive(Debug, Clone, Serialize)]
pub struct AnticanonicalReport {
    pub class: Vec<String>,
    /// position relative to the chamber (nef cone)
    pub position: NefPosition,
    /// interior of the effective cone
    pub big: bool,
    pub nef: bool,
    pub ample: bool,
    /// nef and big but not ample
    pub weak_fano: bool,
}

/// The anticanonical class `Q·(1,…,1)ᵀ`.
pub fn anticanonical_class(q: &WMatrix) -> IntVec {
    let ones = vec![Int::one(); q.num_cols()];
    q.matrix().mul_vec(&ones)
}

pub fn anticanonical_report(q: &WMatrix, gamma: &Chamber) -> AnticanonicalReport {
    let k = anticanonical_class(q);
    let eff = q.effective_cone();
    let big = eff.in_relint(&k);
    let ample = gamma.cone.in_relint(&k);
    let nef = gamma.cone.contains(&k);
    let position = if ample {
        NefPosition::Ample
    } else if nef {
        NefPosition::NefNotAmple
    } else {
        NefPosition::Outside
    };
    AnticanonicalReport {
        class: k.iter().map(|x| x.to_string()).collect(),
        position,
        big,
        nef,
        ample,
        weak_fano: nef && big && !ample,
    }
}

/// JSON report for one primitive collection (1-based indices).
#[derive(Debug, Clone, Serialize)]
pub struct PrimitiveCollectionReport {
    pub indices: Vec<usize>,
    pub relation: Vec<String>,
    pub class: Vec<String>,
    pub support_normal: Vec<String>,
    pub nef: bool,
}

pub fn primitive_collection_report(pc: &PrimitiveCollection) -> PrimitiveCollectionReport {
    PrimitiveCollectionReport {
        indices: pc.indices.iter().map(|i| i + 1).collect(),
        relation: pc.relation.iter().map(|x| x.to_string()).collect(),
        class: pc.class.iter().map(|x| x.to_string()).collect(),
        support_normal: pc.support_hyperplane().normal,
        nef: pc.nef,
    }
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    dot(a, b)
}

/// Select the chamber's extremal relations: primitive collections whose
/// classes span extremal rays of the Mori cone.
pub fn extremal_relations(
    v: &FMatrix,
    q: &WMatrix,
    gamma: &Chamber,
) -> Result<Vec<PrimitiveCollection>, MoriError> {
    let pcs = enumerate_primitive_collections(v, q, gamma)?;
    let gens: Vec<IntVec> = pcs.iter().map(|p| p.class.clone()).collect();
    let mori = Cone::from_generators(&gens, q.r());
    let rays: BTreeSet<IntVec> = mori.rays().iter().cloned().collect();
    Ok(pcs
        .into_iter()
        .filter(|p| rays.contains(&crate::linalg::primitive(&p.class)))
        .collect())
}

#[allow(dead_code)]
fn select_cols(m: &IntMat, idx: &[usize]) -> IntMat {
    m.select_cols(idx)
}
