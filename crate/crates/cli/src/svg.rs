//! Static SVG rendering of planar bodies: the hull polygon, the integer
//! lattice points of the bounding box, and exact fraction labels on the
//! vertices.

use khovanskii::error::{Error, Result};
use khovanskii::okounkov::Polytope;
use khovanskii::Rat;
use num_traits::ToPrimitive;

const SCALE: f64 = 80.0;
const MARGIN: f64 = 60.0;

fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Render a 2-dimensional polytope as a standalone SVG document.
pub fn render_polytope(p: &Polytope) -> Result<String> {
    if p.ambient_dim() != 2 {
        return Err(Error::UnsupportedDimension { dim: p.ambient_dim(), max: 2 });
    }
    let xs: Vec<f64> = p.vertices().iter().map(|v| to_f64(&v[0])).collect();
    let ys: Vec<f64> = p.vertices().iter().map(|v| to_f64(&v[1])).collect();
    let min_x = xs.iter().cloned().fold(f64::INFINITY, f64::min).floor() - 1.0;
    let max_x = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() + 1.0;
    let min_y = ys.iter().cloned().fold(f64::INFINITY, f64::min).floor() - 1.0;
    let max_y = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() + 1.0;

    let width = (max_x - min_x) * SCALE + 2.0 * MARGIN;
    let height = (max_y - min_y) * SCALE + 2.0 * MARGIN;
    let tx = |x: f64| MARGIN + (x - min_x) * SCALE;
    // SVG y grows downward.
    let ty = |y: f64| height - MARGIN - (y - min_y) * SCALE;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" \
         viewBox=\"0 0 {width:.1} {height:.1}\">\n"
    ));
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Integer lattice points of the bounding box.
    let mut gx = min_x;
    while gx <= max_x {
        let mut gy = min_y;
        while gy <= max_y {
            out.push_str(&format!(
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"#cc3333\"/>\n",
                tx(gx),
                ty(gy)
            ));
            gy += 1.0;
        }
        gx += 1.0;
    }

    // Hull polygon (vertices are already in cycle order for planar hulls).
    let polygon: Vec<String> = p
        .vertices()
        .iter()
        .map(|v| format!("{:.2},{:.2}", tx(to_f64(&v[0])), ty(to_f64(&v[1]))))
        .collect();
    out.push_str(&format!(
        "  <polygon points=\"{}\" fill=\"#f5e642\" fill-opacity=\"0.8\" \
         stroke=\"#2244cc\" stroke-width=\"2\"/>\n",
        polygon.join(" ")
    ));

    // Vertex markers and exact labels.
    for v in p.vertices() {
        let x = tx(to_f64(&v[0]));
        let y = ty(to_f64(&v[1]));
        out.push_str(&format!(
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3.5\" fill=\"#882222\"/>\n"
        ));
        out.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" font-family=\"monospace\" \
             fill=\"#222222\">({}, {})</text>\n",
            x + 6.0,
            y - 6.0,
            v[0],
            v[1]
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
