//! Deterministic SVG rendering of the floor projection: face circles,
//! singular points as crosses, and the fundamental parallelogram as a
//! dashed frame. Presentation only; six-decimal coordinates.

use bianchi_core::qfield::Disc;
use bianchi_core::swan::{fundamental_polygon, SwanResult};
use std::fmt::Write;

pub fn render_svg(result: &SwanResult, d: &Disc) -> String {
    let sqrt_d = (d.abs() as f64).sqrt();
    let poly = fundamental_polygon(d);
    let pts: Vec<(f64, f64)> = poly
        .iter()
        .map(|p| {
            (
                p.u.to_f64_lossy(),
                p.v.to_f64_lossy() * sqrt_d,
            )
        })
        .collect();
    let min_x = pts.iter().map(|p| p.0).fold(f64::MAX, f64::min) - 1.1;
    let max_x = pts.iter().map(|p| p.0).fold(f64::MIN, f64::max) + 1.1;
    let min_y = pts.iter().map(|p| p.1).fold(f64::MAX, f64::min) - 1.1;
    let max_y = pts.iter().map(|p| p.1).fold(f64::MIN, f64::max) + 1.1;
    let scale = 160.0;
    let w = (max_x - min_x) * scale;
    let h = (max_y - min_y) * scale;
    let tx = |x: f64| (x - min_x) * scale;
    let ty = |y: f64| (max_y - y) * scale;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">",
        w, h, w, h
    );
    let _ = writeln!(
        out,
        "<rect width=\"{:.0}\" height=\"{:.0}\" fill=\"white\"/>",
        w, h
    );
    // face circles, largest first so small discs draw on top
    let mut faces: Vec<_> = result.faces.iter().collect();
    faces.sort_by_key(|f| (f.hemi.norm_mu, f.hemi.sort_key().1));
    for f in faces {
        let (cx, cy) = f.hemi.center_f64(d);
        let r = (1.0 / f.hemi.norm_mu as f64).sqrt();
        let _ = writeln!(
            out,
            "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.7\"/>",
            tx(cx),
            ty(cy),
            r * scale
        );
    }
    // dashed parallelogram
    let path: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.6},{:.6}", tx(x), ty(y)))
        .collect();
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"none\" stroke=\"gray\" stroke-width=\"0.9\" stroke-dasharray=\"6 4\"/>",
        path.join(" ")
    );
    // singular points as crosses
    for z in &result.singular {
        let (u, v) = z.plane();
        let x = tx(u.to_f64_lossy());
        let y = ty(v.to_f64_lossy() * sqrt_d);
        let s = 4.0;
        let _ = writeln!(
            out,
            "<path d=\"M {:.6} {:.6} L {:.6} {:.6} M {:.6} {:.6} L {:.6} {:.6}\" stroke=\"red\" stroke-width=\"1.1\"/>",
            x - s,
            y - s,
            x + s,
            y + s,
            x - s,
            y + s,
            x + s,
            y - s
        );
    }
    out.push_str("</svg>\n");
    out
}

trait ToF64Lossy {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64Lossy for bianchi_core::exact::Rat {
    fn to_f64_lossy(&self) -> f64 {
        bianchi_core::exact::Surd::from_rat(self.clone()).to_f64()
    }
}
