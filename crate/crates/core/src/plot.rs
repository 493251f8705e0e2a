//! SVG pictures of rank 2 alcoves, colored by Shi variety component.
//!
//! The simple roots are placed in the plane using the Gram matrix read off the
//! Cartan matrix, so the angle between them is 120, 135 or 150 degrees. The
//! fundamental alcove has vertices `0` and `omega_i / e_i`, where
//! `theta_s^vee = sum e_i alpha_i^vee`, and `A_w = w(A_e)`.

use std::collections::HashMap;
use std::fmt::Write;

use crate::affine_weyl::{format_word, AffineElement};
use crate::error::{Error, Result};
use crate::shi_variety::{EnumerationOptions, ShiVariety};

const SCALE: f64 = 60.0;
const MARGIN: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct AlcovePolygon {
    /// Vertices in the plane, before scaling.
    pub vertices: Vec<(f64, f64)>,
    /// Index of the component in the sorted admitted list.
    pub component: usize,
    pub word: Vec<usize>,
}

/// Planar coordinates of the two simple roots.
fn embedding(variety: &ShiVariety) -> [(f64, f64); 2] {
    let rs = variety.root_system();
    let c = rs.cartan();
    let n0 = f64_of(rs.norm_sq(0));
    let n1 = f64_of(rs.norm_sq(1));
    // (alpha_0, alpha_1) = <alpha_0, alpha_1^vee> |alpha_1|^2 / 2
    let ip = c[1][0] as f64 * n1 / 2.0;
    let (l0, l1) = (n0.sqrt(), n1.sqrt());
    let cos = ip / (l0 * l1);
    let sin = (1.0 - cos * cos).sqrt();
    [(l0, 0.0), (l1 * cos, l1 * sin)]
}

fn f64_of(q: num_rational::Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// The fundamental alcove in simple-root coordinates.
fn fundamental_alcove(variety: &ShiVariety) -> Vec<[f64; 2]> {
    let rs = variety.root_system();
    let e = rs.coroot_coordinates(rs.highest_short_root_index());
    let mut out = vec![[0.0, 0.0]];
    for (i, w) in rs.fundamental_weights().iter().enumerate() {
        let s = e[i] as f64;
        out.push([f64_of(w[0]) / s, f64_of(w[1]) / s]);
    }
    out
}

fn act(w: &AffineElement, p: [f64; 2]) -> [f64; 2] {
    let m = w.finite.matrix();
    [
        m[0] as f64 * p[0] + m[1] as f64 * p[1] + w.translation[0] as f64,
        m[2] as f64 * p[0] + m[3] as f64 * p[1] + w.translation[1] as f64,
    ]
}

/// Alcoves of length at most `radius`, with their component index.
pub fn alcove_polygons(variety: &ShiVariety, radius: usize) -> Result<Vec<AlcovePolygon>> {
    let rank = variety.group().rank();
    if rank != 2 {
        return Err(Error::PlotRank(rank));
    }
    let table = variety.enumerate_admitted(EnumerationOptions::default())?;
    let index: HashMap<Vec<i64>, usize> = table
        .components
        .iter()
        .enumerate()
        .map(|(i, row)| (row.lambda.clone(), i))
        .collect();
    let [a0, a1] = embedding(variety);
    let base = fundamental_alcove(variety);
    variety
        .group()
        .ball(radius)
        .into_iter()
        .map(|b| {
            let lambda = variety.lambda_vector(&b.element);
            let component = *index
                .get(lambda.entries())
                .ok_or_else(|| Error::Invariant(format!("{lambda} missing from component table")))?;
            let vertices = base
                .iter()
                .map(|&p| {
                    let [x, y] = act(&b.element, p);
                    (x * a0.0 + y * a1.0, x * a0.1 + y * a1.1)
                })
                .collect();
            Ok(AlcovePolygon {
                vertices,
                component,
                word: b.word,
            })
        })
        .collect()
}

/// Evenly spaced hues, one per component.
pub fn palette(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| format!("hsl({},70%,62%)", 360 * i / count.max(1)))
        .collect()
}

/// SVG 1.1 document showing every alcove of length at most `radius`.
pub fn render_svg(variety: &ShiVariety, radius: usize) -> Result<String> {
    let polys = alcove_polygons(variety, radius)?;
    let colors = palette(variety.root_system().component_count() as usize);

    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in &polys {
        for &(x, y) in &p.vertices {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
    }
    let width = (max_x - min_x) * SCALE + 2.0 * MARGIN;
    let height = (max_y - min_y) * SCALE + 2.0 * MARGIN;
    // flip y so that the picture matches the usual orientation
    let tx = |x: f64| (x - min_x) * SCALE + MARGIN;
    let ty = |y: f64| (max_y - y) * SCALE + MARGIN;

    let mut out = String::new();
    let rank = variety.group().rank();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    writeln!(out, "  <title>Alcoves of type {} up to length {radius}</title>", variety.root_system().cartan_type()).unwrap();
    for p in &polys {
        let points: Vec<String> = p
            .vertices
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", tx(x), ty(y)))
            .collect();
        let stroke = if p.word.is_empty() { r#"stroke="black" stroke-width="2""# } else { r#"stroke="white" stroke-width="0.5""# };
        writeln!(
            out,
            r#"  <polygon points="{}" fill="{}" {stroke} data-component="{}" data-word="{}"/>"#,
            points.join(" "),
            colors[p.component],
            p.component,
            format_word(&p.word, rank),
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
