//! SVG pictures of planar templates.

use std::fmt::Write;

use origami_core::arith::approximate;
use origami_core::error::{Error, Result};
use origami_core::polytope::Polytope;
use origami_core::template::OrigamiTemplate;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const EXPLODE_STEP: f64 = 0.08;
const COLORS: [&str; 6] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#b07aa1"];

/// Polytope vertex indices in boundary order.
fn boundary_cycle(p: &Polytope) -> Vec<usize> {
    let edges = p.edges();
    let mut cycle = vec![0];
    let mut prev = usize::MAX;
    loop {
        let cur = *cycle.last().unwrap();
        let next = edges
            .iter()
            .filter_map(|&(a, b)| match (a == cur, b == cur) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .find(|&w| w != prev);
        match next {
            Some(w) if w != cycle[0] => {
                prev = cur;
                cycle.push(w);
            }
            _ => break,
        }
    }
    cycle
}

fn xy(p: &Polytope, v: usize) -> (f64, f64) {
    let pt = &p.vertices()[v];
    (approximate(&pt[0]), approximate(&pt[1]))
}

/// Draws every polytope at its true coordinates with fold facets dashed.
/// With `explode`, vertex `k` of the template is shifted by `k` small steps
/// along the diagonal.
pub fn render_svg(t: &OrigamiTemplate, explode: bool) -> Result<String> {
    if t.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "rendering needs a planar template, this one has dimension {}",
            t.dim()
        )));
    }
    let shift = |k: usize| if explode { k as f64 * EXPLODE_STEP } else { 0.0 };
    let mut min = (f64::INFINITY, f64::INFINITY);
    let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (k, v) in t.vertices().iter().enumerate() {
        let p = &t.polytopes()[v.polytope].polytope;
        for i in 0..p.vertices().len() {
            let (x, y) = xy(p, i);
            min = (min.0.min(x + shift(k)), min.1.min(y + shift(k)));
            max = (max.0.max(x + shift(k)), max.1.max(y + shift(k)));
        }
    }
    let span = (max.0 - min.0).max(max.1 - min.1).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let map = |k: usize, (x, y): (f64, f64)| {
        (
            MARGIN + (x + shift(k) - min.0) * scale,
            SIZE - MARGIN - (y + shift(k) - min.1) * scale,
        )
    };

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    for (k, v) in t.vertices().iter().enumerate() {
        let p = &t.polytopes()[v.polytope].polytope;
        let points: Vec<String> = boundary_cycle(p)
            .into_iter()
            .map(|i| {
                let (x, y) = map(k, xy(p, i));
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let color = COLORS[k % COLORS.len()];
        writeln!(
            s,
            r#"  <polygon id="{}" points="{}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="2"/>"#,
            v.id,
            points.join(" ")
        )
        .unwrap();
    }
    for e in t.edges() {
        for side in 0..2 {
            let k = e.ends[side];
            let p = t.polytope_of(k);
            let facet = p.facet_vertices(e.facets[side]);
            let (x1, y1) = map(k, xy(p, facet[0]));
            let (x2, y2) = map(k, xy(p, facet[facet.len() - 1]));
            writeln!(
                s,
                r#"  <line class="fold" data-edge="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="3" stroke-dasharray="8,5"/>"#,
                e.id
            )
            .unwrap();
            if !explode {
                break;
            }
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
