//! DOT, SVG and JSON renderings.

use std::f64::consts::PI;
use std::fmt::Write;

use serde_json::{json, Value};

use crate::anticyclic::Transforms;
use crate::error::Result;
use crate::matrix::IntMatrix;
use crate::noncrossing::{enumerate_ncp, enumerate_nct, NcPlant};
use crate::projective::projective_table;
use crate::tamari::PosetView;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of `Y_n`; arrows go from a tree to its lower covers.
pub fn hasse_dot(n: usize) -> Result<String> {
    let view = PosetView::shared(n)?;
    let mut out = format!("digraph tamari_{n} {{\n    rankdir=TB;\n    node [shape=box, fontname=\"monospace\"];\n");
    for (i, t) in view.elements().iter().enumerate() {
        writeln!(out, "    t{i} [label={}];", quote(&t.to_string())).unwrap();
    }
    for (hi, lo) in view.hasse_edges() {
        writeln!(out, "    t{hi} -> t{lo};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

fn matrix_rows(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

/// Order and Möbius matrices of `Y_n`, indexed by `elements`.
pub fn order_json(n: usize) -> Result<Value> {
    let view = PosetView::shared(n)?;
    Ok(json!({
        "n": n,
        "elements": view.elements(),
        "covers": view.hasse_edges(),
        "leq": matrix_rows(&view.zeta_matrix()),
        "mobius": matrix_rows(&view.mobius_matrix()),
    }))
}

/// `θ` or `τ` on `Dend(n)`, row-major, indexed by `elements`.
pub fn transform_json(n: usize, tau: bool) -> Result<Value> {
    let t = Transforms::shared(n)?;
    let m = if tau { t.tau()? } else { t.theta() };
    Ok(json!({
        "n": n,
        "transform": if tau { "tau" } else { "theta" },
        "elements": t.view().elements(),
        "matrix": matrix_rows(m),
    }))
}

pub fn projectives_json(n: usize) -> Result<Value> {
    Ok(json!({ "n": n, "projectives": projective_table(n)? }))
}

/// Noncrossing trees (or all plants) of degree `n`.
pub fn plants(n: usize, with_numerators: bool) -> Result<Vec<NcPlant>> {
    if with_numerators {
        enumerate_ncp(n)
    } else {
        enumerate_nct(n)
    }
}

pub fn plants_json(n: usize, list: &[NcPlant]) -> Value {
    json!({ "n": n, "count": list.len(), "plants": list })
}

// Corner `k` of the `(n+1)`-gon sits at angle `2πk/(n+1)`.
fn corner(n: usize, k: usize, radius: f64) -> (f64, f64) {
    let a = 2.0 * PI * k as f64 / (n + 1) as f64;
    (radius * a.cos(), -radius * a.sin())
}

/// Plants as DOT clusters with pinned positions, for `neato -n`.
pub fn plants_dot(list: &[NcPlant]) -> String {
    let mut out = String::from("graph plants {\n    node [shape=circle, width=0.25, fixedsize=true, fontsize=9];\n");
    for (idx, p) in list.iter().enumerate() {
        let n = p.degree();
        let dx = 160.0 * (idx % 6) as f64;
        let dy = 160.0 * (idx / 6) as f64;
        writeln!(
            out,
            "    subgraph cluster_{idx} {{\n        label={};",
            quote(&p.to_string())
        )
        .unwrap();
        for k in 0..=n {
            let (x, y) = corner(n, k, 60.0);
            writeln!(
                out,
                "        p{idx}_{k} [label=\"{k}\", pos=\"{:.2},{:.2}!\"];",
                x + dx,
                -(y + dy)
            )
            .unwrap();
        }
        for (u, v) in p.den_edges() {
            writeln!(out, "        p{idx}_{u} -- p{idx}_{v};").unwrap();
        }
        for (u, v) in p.num_edges() {
            writeln!(out, "        p{idx}_{u} -- p{idx}_{v} [style=dashed];").unwrap();
        }
        out.push_str("    }\n");
    }
    out.push_str("}\n");
    out
}

/// Plants drawn on a grid of polygons.
pub fn plants_svg(list: &[NcPlant]) -> String {
    const CELL: f64 = 140.0;
    const R: f64 = 50.0;
    let per_row = 6usize;
    let rows = list.len().div_ceil(per_row).max(1);
    let width = CELL * per_row.min(list.len().max(1)) as f64;
    let height = CELL * rows as f64;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    );
    for (idx, p) in list.iter().enumerate() {
        let n = p.degree();
        let cx = CELL * (idx % per_row) as f64 + CELL / 2.0;
        let cy = CELL * (idx / per_row) as f64 + CELL / 2.0;
        let at = |k: usize| {
            let (x, y) = corner(n, k, R);
            (cx + x, cy + y)
        };
        writeln!(out, "  <g><title>{p}</title>").unwrap();
        let outline: Vec<String> = (0..=n)
            .map(|k| {
                let (x, y) = at(k);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            out,
            "    <polygon points=\"{}\" fill=\"none\" stroke=\"#bbb\" stroke-width=\"0.5\"/>",
            outline.join(" ")
        )
        .unwrap();
        let mut line = |(u, v): (usize, usize), dashed: bool| {
            let ((x1, y1), (x2, y2)) = (at(u), at(v));
            let dash = if dashed { " stroke-dasharray=\"4,3\"" } else { "" };
            writeln!(
                out,
                "    <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"black\" stroke-width=\"1.5\"{dash}/>"
            )
            .unwrap();
        };
        for e in p.den_edges() {
            line(e, false);
        }
        for e in p.num_edges() {
            line(e, true);
        }
        for k in 0..=n {
            let (x, y) = at(k);
            writeln!(out, "    <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.5\"/>").unwrap();
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon() {
        let dot = hasse_dot(3).unwrap();
        assert_eq!(dot.matches("->").count(), 5);
        assert_eq!(dot.matches("label=").count(), 5);
    }

    #[test]
    fn order_header() {
        let v = order_json(2).unwrap();
        assert_eq!(v["elements"], json!(["((o o) o)", "(o (o o))"]));
        assert_eq!(v["leq"], json!([[1, 1], [0, 1]]));
        assert_eq!(v["mobius"], json!([[1, -1], [0, 1]]));
    }

    #[test]
    fn theta_two() {
        let v = transform_json(2, false).unwrap();
        assert_eq!(v["matrix"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn listings() {
        let nct = plants(3, false).unwrap();
        assert_eq!(plants_json(3, &nct)["plants"].as_array().unwrap().len(), 12);
        let ncp = plants(3, true).unwrap();
        let dot = plants_dot(&ncp);
        assert!(dot.contains("style=dashed"));
        let svg = plants_svg(&ncp);
        assert_eq!(svg.matches("<g>").count(), ncp.len());
        assert!(svg.contains("stroke-dasharray"));
    }
}
