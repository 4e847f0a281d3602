//! Executable reproduction of the bundled worked examples against their
//! frozen reference data. Each function returns the PASS lines on success
//! or a first-mismatch description.

use secfan::classify::{
    bordering_status, classification_report, contract_divisor, extract_ptb_base,
    find_bordering_witness, flip_path, wall_crossing, BorderingKind, CaseLabel,
};
use secfan::cones::{vec_from_i64, IntVec};
use secfan::corpus;
use secfan::gale::{gale_dual_of_f, gale_dual_of_w};
use secfan::mori::{anticanonical_report, extremal_relations, mori_cone, NefPosition};
use secfan::secondary_fan::{
    enumerate_chambers, fan_from_chamber, is_interior_chamber, is_smooth_chamber, mov_cone,
    Chamber, Region,
};
use std::collections::BTreeSet;

type Check = Result<Vec<String>, String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn gens_set(gens: &[Vec<i64>]) -> BTreeSet<IntVec> {
    gens.iter().map(|g| vec_from_i64(g)).collect()
}

fn by_gens<'a>(chambers: &'a [Chamber], gens: &[Vec<i64>]) -> Result<&'a Chamber, String> {
    let want = gens_set(gens);
    chambers
        .iter()
        .find(|c| {
            let got: BTreeSet<IntVec> = c.generators().iter().cloned().collect();
            got == want
        })
        .ok_or_else(|| format!("missing chamber with generators {gens:?}"))
}

pub fn ex1() -> Check {
    let mut lines = Vec::new();
    let v = corpus::ex1_f();
    let q = gale_dual_of_f(&v).map_err(|e| e.to_string())?;
    if q.matrix() != &corpus::ex1_q_raw() {
        return fail("dual of the fan matrix differs from the frozen weight matrix");
    }
    lines.push("gale dual matches".to_string());

    let chambers = enumerate_chambers(&q, Region::Mov);
    if chambers.len() != 2 {
        return fail(format!("expected 2 chambers, found {}", chambers.len()));
    }
    for c in &chambers {
        if !is_smooth_chamber(&v, &q, c).map_err(|e| e.to_string())? {
            return fail(format!("chamber {} is not smooth", c.id));
        }
    }
    lines.push("2 chambers, both smooth".to_string());

    let g1 = by_gens(&chambers, &[vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]])?;
    let g2 = by_gens(&chambers, &[vec![1, 1, 0], vec![1, 0, 1], vec![1, 1, 1]])?;
    let s1 = bordering_status(&q, g1);
    if s1.kind != BorderingKind::Maxbord || !s1.totally_maxbord {
        return fail("first chamber is not maxbord with respect to two hyperplanes");
    }
    let s2 = bordering_status(&q, g2);
    if s2.kind != BorderingKind::Intbord {
        return fail("second chamber is not intbord-without-maxbord");
    }
    lines.push("bordering statuses match".to_string());

    let con = contract_divisor(&v, &q, g2, &vec_from_i64(&[1, -1, 0])).map_err(|e| e.to_string())?;
    if con.base_v.matrix() != &corpus::ex1_contracted_v()
        || con.base_q.matrix() != &corpus::ex1_contracted_q()
    {
        return fail("blow-down pair differs from the frozen matrices");
    }
    lines.push("blow-down matrices match".to_string());

    let r1 = classification_report(&v, &q, g1).map_err(|e| e.to_string())?;
    if r1.case_label != CaseLabel::DoublePtbTower {
        return fail(format!("first chamber labeled {:?}", r1.case_label));
    }
    let r2 = classification_report(&v, &q, g2).map_err(|e| e.to_string())?;
    if r2.case_label != CaseLabel::FibrationalContraction
        || r2.chain.first().and_then(|s| s.contracted_index) != Some(4)
    {
        return fail(format!(
            "second chamber labeled {:?} with exceptional index {:?}",
            r2.case_label,
            r2.chain.first().and_then(|s| s.contracted_index)
        ));
    }
    lines.push("classification labels match (tower; blow-down of column 4)".to_string());
    Ok(lines)
}

pub fn ex2() -> Check {
    let mut lines = Vec::new();
    let q = corpus::ex2_w();
    let v = gale_dual_of_w(&q).map_err(|e| e.to_string())?;
    if v.matrix() != &corpus::ex2_v() {
        return fail("dual of the weight matrix differs from the frozen fan matrix");
    }
    lines.push("gale dual matches".to_string());

    let chambers = enumerate_chambers(&q, Region::Mov);
    if chambers.len() != 3 {
        return fail(format!("expected 3 chambers, found {}", chambers.len()));
    }
    let g1 = by_gens(&chambers, &[vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]])?;
    let g2 = by_gens(&chambers, &[vec![1, 1, 0], vec![1, 0, 1], vec![1, 1, 1]])?;
    let g3 = by_gens(&chambers, &[vec![0, 1, 0], vec![1, 1, 0], vec![1, 1, 1]])?;
    let s1 = bordering_status(&q, g1);
    let s3 = bordering_status(&q, g3);
    if !(s1.kind == BorderingKind::Maxbord && s1.totally_maxbord) {
        return fail("first chamber is not totally maxbord");
    }
    if !(s3.kind == BorderingKind::Maxbord && !s3.totally_maxbord) {
        return fail("third chamber is not (singly) maxbord");
    }
    lines.push("totally-maxbord and maxbord chambers match".to_string());

    let s2 = bordering_status(&q, g2);
    if !s2.is_bordering() || s2.hyperplanes.iter().any(|h| h.maxbord) {
        return fail("middle chamber must border without a maxbord hyperplane");
    }
    let meet = g2.cone.intersect_hyperplane(&vec_from_i64(&[0, 0, 1]));
    if meet.dim() != 1 || meet.rays() != [vec_from_i64(&[1, 1, 0])] {
        return fail("middle chamber must meet the third coordinate plane on the q3 ray");
    }
    lines.push("middle chamber borders on the q3 ray".to_string());
    Ok(lines)
}

pub fn cex4() -> Check {
    let mut lines = Vec::new();
    let v = corpus::cex4_f();
    let q = corpus::cex4_w();
    let chambers = enumerate_chambers(&q, Region::Mov);
    if chambers.len() != 10 {
        return fail(format!("expected 10 chambers, found {}", chambers.len()));
    }
    let reference = corpus::cex4_chambers();
    let mut smooth_count = 0;
    for (gens, smooth) in &reference {
        let c = by_gens(&chambers, gens)?;
        let got = is_smooth_chamber(&v, &q, c).map_err(|e| e.to_string())?;
        if got != *smooth {
            return fail(format!("smoothness flag of {} is {got}", c.id));
        }
        if got {
            smooth_count += 1;
        }
    }
    lines.push(format!("10 chambers / {smooth_count} smooth"));

    let mov = mov_cone(&q);
    if gens_set(&corpus::cex4_mov_generators())
        != mov.rays().iter().cloned().collect::<BTreeSet<_>>()
    {
        return fail("movable cone generators differ");
    }
    lines.push("movable cone matches".to_string());

    let g10 = by_gens(&chambers, &reference[9].0)?;
    let fan = fan_from_chamber(&v, &q, g10).map_err(|e| e.to_string())?;
    let mut want: Vec<Vec<usize>> = corpus::cex4_sigma10()
        .iter()
        .map(|c| {
            let mut s: Vec<usize> = c.iter().map(|x| x - 1).collect();
            s.sort();
            s
        })
        .collect();
    want.sort();
    if fan.maximal_cones != want {
        return fail("maximal cones of the tenth chamber differ");
    }
    lines.push("18 maximal cones match".to_string());

    if !is_interior_chamber(&q, g10) {
        return fail("tenth chamber must avoid the boundary of the effective cone");
    }
    if find_bordering_witness(&v, &q, g10)
        .map_err(|e| e.to_string())?
        .is_some()
    {
        return fail("tenth chamber must have no bordering witness");
    }
    lines.push("tenth chamber: interior nef cone, no bordering witness".to_string());

    let mori = mori_cone(&v, &q, g10).map_err(|e| e.to_string())?;
    let want_mori = secfan::cones::Cone::from_generators(
        &corpus::cex4_g10_inverse_rows()
            .iter()
            .map(|r| vec_from_i64(r))
            .collect::<Vec<_>>(),
        4,
    );
    if mori != want_mori {
        return fail("dual cone generators differ from the frozen inverse rows");
    }
    let ext = extremal_relations(&v, &q, g10).map_err(|e| e.to_string())?;
    let got_rel: BTreeSet<IntVec> = ext.iter().map(|p| p.relation.clone()).collect();
    if got_rel != gens_set(corpus::cex4_extremal_relations().as_ref()) {
        return fail("extremal relations differ");
    }
    lines.push("Mori cone and extremal relations match".to_string());

    let anti = anticanonical_report(&q, g10);
    if anti.class != ["4", "4", "6", "3"] || anti.position != NefPosition::NefNotAmple || !anti.big
    {
        return fail("anticanonical report differs (expected nef, big, non-ample)");
    }
    lines.push("anticanonical class (4,4,6,3): nef, big, non-ample".to_string());

    for (from_k, to_k, normal, relation) in corpus::cex4_wall_relations() {
        let from = by_gens(&chambers, &reference[from_k - 1].0)?;
        let to = by_gens(&chambers, &reference[to_k - 1].0)?;
        let wc = wall_crossing(&q, from, to).map_err(|e| e.to_string())?;
        let want_n: Vec<String> = normal.iter().map(|x| x.to_string()).collect();
        let want_r: Vec<String> = relation.iter().map(|x| x.to_string()).collect();
        if wc.normal != want_n || wc.relation != want_r {
            return fail(format!("wall relation {from_k}->{to_k} differs"));
        }
    }
    lines.push("three wall relations match".to_string());

    let g1 = by_gens(&chambers, &reference[0].0)?;
    let path = flip_path(&q, &chambers, g1, g10).map_err(|e| e.to_string())?;
    if path.len() != 3 {
        return fail(format!("flip path has length {}", path.len()));
    }
    lines.push("flip path of length 3".to_string());

    let w = find_bordering_witness(&v, &q, g1)
        .map_err(|e| e.to_string())?
        .ok_or("first chamber lost its witness")?;
    if w.collection.indices != vec![5, 6, 7] {
        return fail("witness collection of the first chamber differs");
    }
    let ext_base = extract_ptb_base(&v, &q, g1, &w.collection).map_err(|e| e.to_string())?;
    if ext_base.base_q.matrix() != &corpus::cex4_base_q()
        || ext_base.base_v.matrix() != &corpus::cex4_base_v()
    {
        return fail("extracted base pair differs from the frozen matrices");
    }
    lines.push("bundle base extraction matches".to_string());
    Ok(lines)
}

pub fn qs(s: u64) -> Check {
    if s == 0 {
        return fail("family parameter must be at least 1");
    }
    let mut lines = Vec::new();
    let q = corpus::qs_family(s);
    let v = gale_dual_of_w(&q).map_err(|e| e.to_string())?;
    lines.push(format!(
        "family member s={s}: weight matrix 4x{}, dual fan matrix {}x{}",
        q.num_cols(),
        v.n(),
        v.n() + v.r()
    ));
    let chambers = enumerate_chambers(&q, Region::Mov);
    if chambers.len() != 10 {
        return fail(format!("expected 10 chambers, found {}", chambers.len()));
    }
    let reference = corpus::cex4_chambers();
    for (gens, smooth) in &reference {
        let c = by_gens(&chambers, gens)?;
        if is_smooth_chamber(&v, &q, c).map_err(|e| e.to_string())? != *smooth {
            return fail(format!("smoothness pattern differs at {}", c.id));
        }
    }
    lines.push("10 chambers with the reference smoothness pattern".to_string());
    let g10 = by_gens(&chambers, &reference[9].0)?;
    if !is_interior_chamber(&q, g10) {
        return fail("tenth chamber must stay interior");
    }
    let anti = anticanonical_report(&q, g10);
    match (s, anti.position) {
        (1, NefPosition::NefNotAmple) => {
            lines.push("anticanonical class on the nef boundary (weak Fano)".to_string())
        }
        (1, p) => return fail(format!("anticanonical position {p:?} at s=1")),
        (_, NefPosition::Outside) => {
            lines.push("anticanonical class leaves the nef cone".to_string())
        }
        (_, p) => return fail(format!("anticanonical position {p:?} at s={s}")),
    }
    Ok(lines)
}
