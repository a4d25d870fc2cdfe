//! Deterministic SVG emitters for rank-2 data: weights as dots, region
//! boundaries as rays from their apexes, strict boundaries dashed.

use eqmorse::lattice::LatticeVector;
use eqmorse::morse::GammaRegion;
use num_traits::ToPrimitive;

const SCALE: f64 = 24.0;
const PAD: f64 = 40.0;

struct Canvas {
    min_x: f64,
    max_y: f64,
    body: String,
}

impl Canvas {
    fn new(points: &[(f64, f64)]) -> Canvas {
        let min_x = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_y = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        Canvas {
            min_x,
            max_y,
            body: String::new(),
        }
    }

    fn place(&self, p: (f64, f64)) -> (f64, f64) {
        (
            PAD + (p.0 - self.min_x) * SCALE,
            PAD + (self.max_y - p.1) * SCALE,
        )
    }

    fn dot(&mut self, p: (f64, f64), radius: f64, fill: &str) {
        let (x, y) = self.place(p);
        self.body.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{radius}\" fill=\"{fill}\"/>\n"
        ));
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), dashed: bool, stroke: &str) {
        let (x1, y1) = self.place(a);
        let (x2, y2) = self.place(b);
        let dash = if dashed { " stroke-dasharray=\"6 4\"" } else { "" };
        self.body.push_str(&format!(
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{stroke}\" stroke-width=\"1.5\"{dash}/>\n"
        ));
    }

    fn label(&mut self, p: (f64, f64), text: &str) {
        let (x, y) = self.place(p);
        self.body.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" font-family=\"monospace\">{}</text>\n",
            x + 6.0,
            y - 6.0,
            text
        ));
    }

    fn finish(self, width: f64, height: f64) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn coords(v: &LatticeVector) -> (f64, f64) {
    (
        v.0[0].to_f64().unwrap_or(0.0),
        v.0[1].to_f64().unwrap_or(0.0),
    )
}

/// Regions with their apexes dotted and generator rays drawn; extra marked
/// weights plotted on top.
pub fn render_regions(regions: &[GammaRegion], marked: &[(LatticeVector, String)]) -> String {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for r in regions {
        for a in &r.apexes {
            pts.push(coords(a));
        }
    }
    for (w, _) in marked {
        pts.push(coords(w));
    }
    if pts.is_empty() {
        pts.push((0.0, 0.0));
    }
    let span_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max)
        - pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let span_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max)
        - pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let mut canvas = Canvas::new(&pts);
    let ray_len = (span_x + span_y) * 0.5 + 4.0;
    for r in regions {
        for apex in &r.apexes {
            let a = coords(apex);
            canvas.dot(a, 4.0, "black");
            canvas.label(a, &r.owner.0);
            for (dir, strict) in &r.generators {
                let d = coords(dir);
                let norm = (d.0 * d.0 + d.1 * d.1).sqrt().max(1.0);
                let end = (a.0 + d.0 / norm * ray_len, a.1 + d.1 / norm * ray_len);
                canvas.line(a, end, *strict, "steelblue");
            }
        }
    }
    for (w, label) in marked {
        let p = coords(w);
        canvas.dot(p, 5.0, "crimson");
        canvas.label(p, label);
    }
    canvas.finish(
        2.0 * PAD + (span_x + 2.0 * ray_len) * SCALE,
        2.0 * PAD + (span_y + 2.0 * ray_len) * SCALE,
    )
}

/// Weights colored by an integer class (index coefficient or degree);
/// class < 0 renders hollow.
pub fn render_weights(rows: &[(LatticeVector, i64, String)]) -> String {
    let mut pts: Vec<(f64, f64)> = rows.iter().map(|(w, _, _)| coords(w)).collect();
    if pts.is_empty() {
        pts.push((0.0, 0.0));
    }
    let span_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max)
        - pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let span_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max)
        - pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let palette = ["black", "steelblue", "seagreen", "darkorange", "purple"];
    let mut canvas = Canvas::new(&pts);
    for (w, class, label) in rows {
        let p = coords(w);
        let color = if *class < 0 {
            "crimson"
        } else {
            palette[(*class as usize) % palette.len()]
        };
        canvas.dot(p, 4.0, color);
        if !label.is_empty() {
            canvas.label(p, label);
        }
    }
    canvas.finish(2.0 * PAD + span_x * SCALE, 2.0 * PAD + span_y * SCALE)
}
