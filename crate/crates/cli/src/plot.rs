//! Affine sections of the effective cone for display.
//!
//! Rays are cut with the hyperplane `Σxᵢ = 1`, which keeps every coordinate
//! rational; the combinatorics (which rays, which cells, adjacency) is what
//! the output asserts, not metric shape. SVG output is supported for rank 3;
//! rank 4 sections are emitted as exact 3-coordinate JSON only.

use secfan::cones::IntVec;
use secfan::gale::{FMatrix, WMatrix};
use secfan::linalg::{Int, Rat};
use secfan::secondary_fan::{mov_cone, Chamber};
use serde::Serialize;

#[derive(Serialize)]
pub struct SectionPoint {
    /// exact rational coordinates in the affine chart (first coordinate
    /// dropped: it is one minus the sum of the others)
    pub coords: Vec<String>,
}

#[derive(Serialize)]
pub struct SectionCell {
    pub id: String,
    pub index: usize,
    pub points: Vec<SectionPoint>,
    pub highlighted: bool,
}

#[derive(Serialize)]
pub struct Section {
    pub rank: usize,
    pub effective_rays: Vec<SectionPoint>,
    pub movable_rays: Vec<SectionPoint>,
    pub chambers: Vec<SectionCell>,
}

fn section_point(ray: &IntVec) -> Option<SectionPoint> {
    let total: Int = ray.iter().sum();
    if total == Int::from(0) {
        return None;
    }
    let coords = ray
        .iter()
        .skip(1)
        .map(|x| Rat::new(x.clone(), total.clone()).to_string())
        .collect();
    Some(SectionPoint { coords })
}

pub fn section_json(
    v: &FMatrix,
    q: &WMatrix,
    chambers: &[Chamber],
    highlight: Option<&str>,
) -> Result<Section, String> {
    let _ = v;
    let r = q.r();
    if r != 3 && r != 4 {
        return Err(format!("section output supports rank 3 or 4, got rank {r}"));
    }
    let eff = q.effective_cone();
    let mov = mov_cone(q);
    let to_points = |rays: &[IntVec]| -> Vec<SectionPoint> {
        rays.iter().filter_map(section_point).collect()
    };
    Ok(Section {
        rank: r,
        effective_rays: to_points(eff.rays()),
        movable_rays: to_points(mov.rays()),
        chambers: chambers
            .iter()
            .enumerate()
            .map(|(i, c)| SectionCell {
                id: c.id.clone(),
                index: i + 1,
                points: to_points(c.generators()),
                highlighted: Some(c.id.as_str()) == highlight,
            })
            .collect(),
    })
}

/// 2-d drawing coordinates for a rank-3 ray (floating point is used only at
/// the rendering boundary).
fn xy(ray: &IntVec) -> (f64, f64) {
    let total: f64 = ray.iter().map(int_f64).sum();
    let x2 = int_f64(&ray[1]) / total;
    let x3 = int_f64(&ray[2]) / total;
    // equilateral chart of the simplex
    (x2 + 0.5 * x3, 0.866 * x3)
}

fn int_f64(x: &Int) -> f64 {
    x.to_string().parse().unwrap_or(0.0)
}

fn polygon_path(mut points: Vec<(f64, f64)>) -> String {
    // order vertices around their centroid
    let cx = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
    let cy = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
    points.sort_by(|a, b| {
        let aa = (a.1 - cy).atan2(a.0 - cx);
        let bb = (b.1 - cy).atan2(b.0 - cx);
        aa.partial_cmp(&bb).unwrap()
    });
    points
        .iter()
        .enumerate()
        .map(|(i, (x, y))| {
            format!("{}{:.4},{:.4}", if i == 0 { "M" } else { "L" }, x, y)
        })
        .collect::<Vec<_>>()
        .join(" ")
        + " Z"
}

pub fn section_svg(q: &WMatrix, chambers: &[Chamber], highlight: Option<&str>) -> String {
    let eff = q.effective_cone();
    let mov = mov_cone(q);
    let scale = 400.0;
    let pad = 40.0;
    let tx = |p: (f64, f64)| -> (f64, f64) { (pad + p.0 * scale, pad + (1.0 - p.1) * scale) };
    let path_of = |rays: &[IntVec]| -> String {
        polygon_path(rays.iter().map(|r| tx(xy(r))).collect())
    };
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {} {}\">\n",
        scale + 2.0 * pad,
        scale + 2.0 * pad
    ));
    out.push_str(&format!(
        "  <path d=\"{}\" fill=\"#f4f4f4\" stroke=\"#888\" stroke-width=\"1\"/>\n",
        path_of(eff.rays())
    ));
    out.push_str(&format!(
        "  <path d=\"{}\" fill=\"#dde8ff\" stroke=\"#446\" stroke-width=\"1\"/>\n",
        path_of(mov.rays())
    ));
    for (i, c) in chambers.iter().enumerate() {
        let fill = if Some(c.id.as_str()) == highlight {
            "#ffd27f"
        } else {
            "#cfe8cf"
        };
        out.push_str(&format!(
            "  <path d=\"{}\" fill=\"{}\" fill-opacity=\"0.8\" stroke=\"#054\" stroke-width=\"0.8\"><title>g{} {}</title></path>\n",
            path_of(c.generators()),
            fill,
            i + 1,
            c.id
        ));
        // label at the centroid
        let pts: Vec<(f64, f64)> = c.generators().iter().map(|r| tx(xy(r))).collect();
        let cx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
        let cy = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
        out.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">g{}</text>\n",
            cx,
            cy,
            i + 1
        ));
    }
    for r in eff.rays() {
        let (x, y) = tx(xy(r));
        out.push_str(&format!(
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.5\" fill=\"#322\"/>\n"
        ));
    }
    out.push_str("</svg>");
    out
}
