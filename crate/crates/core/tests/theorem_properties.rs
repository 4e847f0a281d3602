//! Structural consequences of the classification theorems, exercised on the
//! bundled instances and on randomized corpora.

use secfan::classify::{
    bordering_status, classification_report, wall_crossing, BorderingKind, CaseLabel,
};
use secfan::corpus;
use secfan::gale::gale_dual_of_w;
use secfan::mori::{bunch_meets_complement, enumerate_primitive_collections};
use secfan::search::{random_valid_instances, SearchParams};
use secfan::secondary_fan::{
    chambers_tile, enumerate_chambers, is_smooth_chamber, mov_cone, Region,
};

/// Every bordering smooth rank-3 chamber is internally or maximally
/// bordering; the intermediate configuration cannot survive regularity.
#[test]
fn smooth_rank3_bordering_chambers_are_intbord_or_maxbord() {
    let mut checked = 0usize;
    for n in 2..=5usize {
        for bound in [1u64, 2] {
            let params = SearchParams {
                n,
                r: 3,
                entry_bound: bound,
                max_candidates: 0,
                seed: 0x5EED + (n as u64) * 7 + bound,
            };
            for (q, v) in random_valid_instances(&params, 12) {
                for c in enumerate_chambers(&q, Region::Mov) {
                    if !is_smooth_chamber(&v, &q, &c).unwrap() {
                        continue;
                    }
                    let status = bordering_status(&q, &c);
                    if status.is_bordering() {
                        assert!(
                            matches!(status.kind, BorderingKind::Intbord | BorderingKind::Maxbord),
                            "smooth rank-3 chamber {} is bordering but neither intbord nor maxbord",
                            c.id
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 30, "suite exercised only {checked} chambers");
}

/// The classifier never labels a chamber as a fiber-type non-fibration when
/// the dimension is at most three.
#[test]
fn fiber_type_case_is_excluded_in_low_dimension() {
    for (n, r) in [(2usize, 2usize), (3, 2), (2, 3), (3, 3)] {
        for bound in [1u64, 2] {
            let params = SearchParams {
                n,
                r,
                entry_bound: bound,
                max_candidates: 0,
                seed: 0xFACE + (n * 10 + r) as u64 + bound,
            };
            for (q, v) in random_valid_instances(&params, 10) {
                for c in enumerate_chambers(&q, Region::Mov) {
                    if !is_smooth_chamber(&v, &q, &c).unwrap() {
                        continue;
                    }
                    let rep = classification_report(&v, &q, &c).unwrap();
                    assert_ne!(rep.case_label, CaseLabel::FiberTypeNonfibration);
                }
            }
        }
    }
}

/// For every nef primitive collection of every bundled chamber, every bunch
/// cone keeps at least one generator off the collection.
#[test]
fn bunch_cones_meet_the_complement_of_nef_collections() {
    let pairs = vec![
        (corpus::ex1_f(), corpus::ex1_w()),
        (gale_dual_of_w(&corpus::ex2_w()).unwrap(), corpus::ex2_w()),
        (corpus::cex4_f(), corpus::cex4_w()),
    ];
    for (v, q) in &pairs {
        for c in enumerate_chambers(q, Region::Mov) {
            let pcs = enumerate_primitive_collections(v, q, &c).unwrap();
            for p in pcs.iter().filter(|p| p.nef) {
                assert!(
                    bunch_meets_complement(&c, &p.indices),
                    "bunch of {} swallowed by collection {:?}",
                    c.id,
                    p.indices
                );
            }
        }
    }
}

/// Relation and class coherence on every bundled chamber: Qᵀ·n_P = r_ℤ(P)
/// and V·r_ℤ(P) = 0.
#[test]
fn relation_identities_hold_on_the_corpus() {
    let pairs = vec![
        (corpus::ex1_f(), corpus::ex1_w()),
        (gale_dual_of_w(&corpus::ex2_w()).unwrap(), corpus::ex2_w()),
        (corpus::cex4_f(), corpus::cex4_w()),
    ];
    for (v, q) in &pairs {
        for c in enumerate_chambers(q, Region::Mov) {
            for p in enumerate_primitive_collections(v, q, &c).unwrap() {
                let qt_n = q.matrix().transpose().mul_vec(&p.class);
                assert_eq!(qt_n, p.relation);
                let vr = v.matrix().mul_vec(&p.relation);
                assert!(vr.iter().all(num_traits::Zero::is_zero));
            }
        }
    }
}

/// Chambers of the movable region have disjoint interiors and meet along
/// shared facets (exact sample-point tiling check).
#[test]
fn chambers_tile_the_movable_region() {
    for q in [corpus::ex1_w(), corpus::ex2_w(), corpus::cex4_w()] {
        let chambers = enumerate_chambers(&q, Region::Mov);
        assert!(chambers_tile(&mov_cone(&q), &chambers));
    }
}

/// Reversing a wall crossing negates the normal and swaps the contracted
/// loci, across every adjacent pair of the bundled rank-4 example.
#[test]
fn wall_crossing_antisymmetry_everywhere() {
    let q = corpus::cex4_w();
    let chambers = enumerate_chambers(&q, Region::Mov);
    let mut pairs = 0usize;
    for a in &chambers {
        for b in &chambers {
            if a.id >= b.id {
                continue;
            }
            let (Ok(ab), Ok(ba)) = (wall_crossing(&q, a, b), wall_crossing(&q, b, a)) else {
                continue;
            };
            let neg: Vec<String> = ab
                .normal
                .iter()
                .map(|s| {
                    let x: i64 = s.parse().unwrap();
                    (-x).to_string()
                })
                .collect();
            assert_eq!(ba.normal, neg);
            assert_eq!(ab.contract_fwd, ba.contract_bwd);
            assert_eq!(ab.contract_bwd, ba.contract_fwd);
            pairs += 1;
        }
    }
    assert!(pairs >= 10, "expected a rich adjacency graph, got {pairs} pairs");
}
