//! Exact rational polyhedral cones with double (generator + facet) descriptions.
//!
//! A cone is stored canonically: primitive extremal rays sorted
//! lexicographically and orthogonal to the lineality space, a Hermite-form
//! basis of the lineality lattice, irredundant primitive inward facet normals
//! lying in the linear span, and a Hermite-form basis of the span's equation
//! lattice. With this normalization `dual` is a constant-time swap of the two
//! descriptions.

use crate::linalg::{
    dot, is_zero_vec, kernel_saturated, neg, primitive, rational_inverse, row_lattice_basis, Int,
    IntMat, Rat,
};
use itertools::Itertools;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

pub type IntVec = Vec<Int>;

pub fn vec_from_i64(v: &[i64]) -> IntVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    rays: Vec<IntVec>,
    lin: Vec<IntVec>,
    facets: Vec<IntVec>,
    eqs: Vec<IntVec>,
}

impl std::fmt::Debug for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_vecs = |vs: &[IntVec]| {
            vs.iter()
                .map(|v| format!("({})", v.iter().map(|x| x.to_string()).join(",")))
                .join(" ")
        };
        write!(
            f,
            "Cone(dim {} in R^{}; rays {}; lin {}; facets {}; eqs {})",
            self.dim(),
            self.ambient,
            fmt_vecs(&self.rays),
            fmt_vecs(&self.lin),
            fmt_vecs(&self.facets),
            fmt_vecs(&self.eqs)
        )
    }
}

/// Extremal rays and lineality of `{x : ineqs·x ≥ 0, eqs·x = 0}`.
///
/// Rays are primitive, orthogonal to the lineality space, and sorted; the
/// lineality basis is in Hermite normal form. By cone duality this same
/// routine converts a generator description into a facet description:
/// the facets of `cone(R) + span(L)` are the rays of `{y : R·y ≥ 0, L·y = 0}`.
fn vrep_from_hrep(ineqs: &[IntVec], eqs: &[IntVec], ambient: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    // coordinates of the solution subspace of the equations
    let k = if eqs.is_empty() {
        IntMat::identity(ambient)
    } else {
        kernel_saturated(&IntMat::from_row_vecs(eqs.to_vec()))
    };
    let w = k.rows();
    if w == 0 {
        return (Vec::new(), Vec::new());
    }
    let back = |v: &[Int]| -> IntVec {
        let mut out = vec![Int::zero(); ambient];
        for (row, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(k.row(row)) {
                *o += c * e;
            }
        }
        out
    };
    let ineqs_w: BTreeSet<IntVec> = ineqs
        .iter()
        .map(|n| (0..w).map(|i| dot(k.row(i), n)).collect::<IntVec>())
        .filter(|n| !is_zero_vec(n))
        .map(|n| primitive(&n))
        .collect();
    let ineqs_w: Vec<IntVec> = ineqs_w.into_iter().collect();

    let lin_w = if ineqs_w.is_empty() {
        IntMat::identity(w)
    } else {
        kernel_saturated(&IntMat::from_row_vecs(ineqs_w.clone()))
    };
    if lin_w.rows() > 0 {
        // split off the lineality and redo the pointed part inside its
        // orthogonal complement
        let (rays_sub, lin_sub) = vrep_from_hrep(&ineqs_w, &lin_w.row_vecs(), w);
        debug_assert!(lin_sub.is_empty());
        let rays = rays_sub.iter().map(|r| back(r)).collect::<Vec<_>>();
        let lin: Vec<IntVec> = lin_w.row_vecs().iter().map(|l| back(l)).collect();
        let lin = row_lattice_basis(&IntMat::from_row_vecs(lin)).row_vecs();
        return (sort_rays(rays), lin);
    }

    // pointed case: every extremal ray is cut out by an active set of rank w-1
    let mut rays = BTreeSet::new();
    if w == 1 {
        for sign in [1i64, -1] {
            let v = vec![Int::from(sign)];
            if ineqs_w.iter().all(|n| !dot(n, &v).is_negative()) {
                rays.insert(back(&v));
            }
        }
    } else {
        for sub in (0..ineqs_w.len()).combinations(w - 1) {
            let m = IntMat::from_row_vecs(sub.iter().map(|&i| ineqs_w[i].clone()).collect());
            let ker = kernel_saturated(&m);
            if ker.rows() != 1 {
                continue;
            }
            let v = ker.row_vec(0);
            let mut pos = false;
            let mut neg_seen = false;
            for n in &ineqs_w {
                if pos && neg_seen {
                    break;
                }
                let d = dot(n, &v);
                if d.is_positive() {
                    pos = true;
                } else if d.is_negative() {
                    neg_seen = true;
                }
            }
            match (pos, neg_seen) {
                (true, false) => {
                    rays.insert(back(&v));
                }
                (false, true) => {
                    rays.insert(back(&neg(&v)));
                }
                _ => {}
            }
        }
    }
    (rays.into_iter().collect(), Vec::new())
}

fn sort_rays(mut rays: Vec<IntVec>) -> Vec<IntVec> {
    rays.sort();
    rays.dedup();
    rays
}

impl Cone {
    /// Cone generated by the given vectors (zero vectors ignored).
    pub fn from_generators(gens: &[IntVec], ambient: usize) -> Cone {
        let gens: Vec<IntVec> = gens
            .iter()
            .filter(|g| !is_zero_vec(g))
            .map(|g| primitive(g))
            .collect();
        if gens.is_empty() {
            return Cone::zero(ambient);
        }
        // fast path: exactly `ambient` independent generators
        if gens.len() == ambient && ambient > 0 {
            let m = IntMat::from_row_vecs(gens.clone()).transpose();
            if let Ok(inv) = rational_inverse(&m) {
                let facets: Vec<IntVec> = (0..ambient)
                    .map(|i| {
                        let den = (0..ambient)
                            .map(|j| inv[(i, j)].denom().clone())
                            .fold(Int::from(1), num_integer::lcm);
                        let row: Vec<Int> = (0..ambient)
                            .map(|j| (&inv[(i, j)] * Rat::from(den.clone())).to_integer())
                            .collect();
                        primitive(&row)
                    })
                    .sorted()
                    .collect();
                return Cone {
                    ambient,
                    rays: sort_rays(gens),
                    lin: Vec::new(),
                    facets,
                    eqs: Vec::new(),
                };
            }
        }
        let (facets0, eqs0) = vrep_from_hrep(&gens, &[], ambient);
        let (rays, lin) = vrep_from_hrep(&facets0, &eqs0, ambient);
        // re-derive the facet description from the canonical generators so
        // that both construction routes agree exactly
        let (facets, eqs) = vrep_from_hrep(&rays, &lin, ambient);
        Cone {
            ambient,
            rays,
            lin,
            facets,
            eqs,
        }
    }

    /// Cone `{x : normals·x ≥ 0}`.
    pub fn from_inequalities(normals: &[IntVec], ambient: usize) -> Cone {
        Cone::from_hrep(normals, &[], ambient)
    }

    /// Cone `{x : ineqs·x ≥ 0, eqs·x = 0}`.
    pub fn from_hrep(ineqs: &[IntVec], eqs: &[IntVec], ambient: usize) -> Cone {
        let (rays, lin) = vrep_from_hrep(ineqs, eqs, ambient);
        let (facets, eqs) = vrep_from_hrep(&rays, &lin, ambient);
        Cone {
            ambient,
            rays,
            lin,
            facets,
            eqs,
        }
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone {
            ambient,
            rays: Vec::new(),
            lin: Vec::new(),
            facets: Vec::new(),
            eqs: IntMat::identity(ambient).row_vecs(),
        }
    }

    pub fn full_space(ambient: usize) -> Cone {
        Cone {
            ambient,
            rays: Vec::new(),
            lin: IntMat::identity(ambient).row_vecs(),
            facets: Vec::new(),
            eqs: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient - self.eqs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_pointed(&self) -> bool {
        self.lin.is_empty()
    }

    pub fn is_full_dim(&self) -> bool {
        self.eqs.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    /// Primitive extremal rays, sorted lexicographically.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lin
    }

    /// Irredundant inward facet normals (within the linear span).
    pub fn facet_normals(&self) -> &[IntVec] {
        &self.facets
    }

    /// Equations cutting out the linear span.
    pub fn span_equations(&self) -> &[IntVec] {
        &self.eqs
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.eqs.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|n| !dot(n, x).is_negative())
    }

    /// Relative interior membership: strict on every facet, within the span.
    pub fn in_relint(&self, x: &[Int]) -> bool {
        self.eqs.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|n| dot(n, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other
                .lin
                .iter()
                .all(|l| self.contains(l) && self.contains(&neg(l)))
    }

    pub fn dual(&self) -> Cone {
        Cone {
            ambient: self.ambient,
            rays: self.facets.clone(),
            lin: self.eqs.clone(),
            facets: self.rays.clone(),
            eqs: self.lin.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient, other.ambient);
        let ineqs: Vec<IntVec> = self
            .facets
            .iter()
            .chain(other.facets.iter())
            .cloned()
            .collect();
        let eqs: Vec<IntVec> = self.eqs.iter().chain(other.eqs.iter()).cloned().collect();
        Cone::from_hrep(&ineqs, &eqs, self.ambient)
    }

    /// The cone cut by the extra inequality `n·x ≥ 0`.
    pub fn cut_halfspace(&self, n: &[Int]) -> Cone {
        let mut ineqs = self.facets.clone();
        ineqs.push(n.to_vec());
        Cone::from_hrep(&ineqs, &self.eqs, self.ambient)
    }

    /// The face cut out by the supporting hyperplane `n·x = 0`.
    /// `n` must be nonnegative on the cone.
    pub fn face_by_hyperplane(&self, n: &[Int]) -> Cone {
        debug_assert!(self.rays.iter().all(|r| !dot(n, r).is_negative()));
        self.intersect_hyperplane(n)
    }

    /// Intersection with the hyperplane `n·x = 0`.
    pub fn intersect_hyperplane(&self, n: &[Int]) -> Cone {
        let mut eqs = self.eqs.clone();
        eqs.push(n.to_vec());
        Cone::from_hrep(&self.facets, &eqs, self.ambient)
    }

    /// All faces of codimension one (within the span).
    pub fn facet_cones(&self) -> Vec<Cone> {
        self.facets
            .iter()
            .map(|n| self.face_by_hyperplane(n))
            .collect()
    }

    /// All faces of dimension `k`.
    pub fn faces(&self, k: usize) -> Vec<Cone> {
        let mut level: BTreeSet<Cone> = BTreeSet::new();
        level.insert(self.clone());
        let mut d = self.dim();
        while d > k && !level.is_empty() {
            let mut next = BTreeSet::new();
            for c in &level {
                for f in c.facet_cones() {
                    next.insert(f);
                }
            }
            level = next;
            d = d.saturating_sub(1);
        }
        level.into_iter().filter(|c| c.dim() == k).collect()
    }

    /// An interior point: the sum of the extremal rays.
    pub fn relint_point(&self) -> IntVec {
        let mut p = vec![Int::zero(); self.ambient];
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += ri;
            }
        }
        p
    }

    /// Canonical identifier: sorted primitive generators in decimal.
    pub fn id(&self) -> String {
        self.rays
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).join(","))
            .join(";")
    }
}

/// The minimal face of `cone` whose relative interior contains `x`,
/// assuming `cone.contains(x)`.
pub fn face_containing_in_relint(cone: &Cone, x: &[Int]) -> Cone {
    let active: Vec<IntVec> = cone
        .facets
        .iter()
        .filter(|n| dot(n, x).is_zero())
        .cloned()
        .collect();
    if active.is_empty() {
        return cone.clone();
    }
    let mut eqs = cone.eqs.clone();
    eqs.extend(active);
    Cone::from_hrep(&cone.facets, &eqs, cone.ambient)
}

/// The common facet of two adjacent full-dimensional cones, if any.
pub fn share_facet(a: &Cone, b: &Cone) -> Option<Cone> {
    let f = a.intersect(b);
    if f.dim() + 1 != a.dim() || a.dim() != b.dim() {
        return None;
    }
    let is_facet_of = |c: &Cone| {
        c.facet_normals()
            .iter()
            .any(|n| f.rays().iter().all(|r| dot(n, r).is_zero()))
    };
    if is_facet_of(a) && is_facet_of(b) {
        Some(f)
    } else {
        None
    }
}

/// Primitive normal of the hyperplane spanned by a facet `f` of `a`,
/// oriented inward with respect to `a`.
pub fn inward_normal(a: &Cone, f: &Cone) -> Option<IntVec> {
    a.facet_normals()
        .iter()
        .find(|n| f.rays().iter().all(|r| dot(n, r).is_zero()))
        .cloned()
}
