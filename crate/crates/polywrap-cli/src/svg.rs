//! SVG rendering of wraps: edges drawn individually with doubled edges
//! offset, double-contact points highlighted, pockets shaded by level.

use std::collections::BTreeMap;

use polywrap::geom::PointSet;
use polywrap::pockets::{pocket_tree, PocketNode};
use polywrap::wrap::Wrap;

pub struct SvgOptions {
    pub size: u32,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { size: 800 }
    }
}

const LEVEL_FILLS: [&str; 5] = ["#c6dbef", "#9ecae1", "#6baed6", "#4292c6", "#2171b5"];

/// Render one wrap frame.
pub fn render_wrap(ps: &PointSet, wrap: &Wrap, opts: &SvgOptions) -> String {
    let (min_x, min_y, max_x, max_y) = bounds(ps);
    let margin = 0.05 * ((max_x - min_x).max(max_y - min_y).max(1.0));
    let w = max_x - min_x + 2.0 * margin;
    let h = max_y - min_y + 2.0 * margin;
    let scale = opts.size as f64 / w.max(h);
    let px = |x: f64| (x - min_x + margin) * scale;
    // flip y so the geometry reads with y upward
    let py = |y: f64| (max_y + margin - y) * scale;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
        (w * scale).ceil() as u64,
        (h * scale).ceil() as u64
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // pocket shading by level
    let tree = pocket_tree(wrap, ps);
    let mut stack: Vec<&PocketNode> = tree.root.children.iter().collect();
    while let Some(node) = stack.pop() {
        let fill = LEVEL_FILLS[(node.depth - 1).min(LEVEL_FILLS.len() - 1)];
        let mut pts_attr = String::new();
        for &i in &node.chain {
            let p = ps.point(i);
            pts_attr.push_str(&format!("{:.2},{:.2} ", px(p.x as f64), py(p.y as f64)));
        }
        out.push_str(&format!(
            "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.5\" stroke=\"none\"/>\n",
            pts_attr.trim_end(),
            fill
        ));
        stack.extend(node.children.iter());
    }

    // edges, with parallel offset per extra traversal of a doubled edge
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for pos in 0..wrap.len() {
        let (a, b) = wrap.edge(pos);
        let key = (a.min(b), a.max(b));
        let rank = *seen.entry(key).and_modify(|r| *r += 1).or_insert(0);
        let (pa, pb) = (ps.point(a), ps.point(b));
        let (x1, y1, x2, y2) = (
            px(pa.x as f64),
            py(pa.y as f64),
            px(pb.x as f64),
            py(pb.y as f64),
        );
        // perpendicular offset for repeated traversals
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let off = 3.0 * rank as f64;
        let (ox, oy) = (-dy / len * off, dx / len * off);
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n",
            x1 + ox,
            y1 + oy,
            x2 + ox,
            y2 + oy
        ));
    }

    // vertices; double contacts highlighted
    for (i, p) in ps.iter() {
        let doubled = wrap.occurrence_count(i) >= 2;
        let (r, fill) = if doubled { (5.0, "#d62728") } else { (3.0, "#111111") };
        out.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{}\" fill=\"{}\"/>\n",
            px(p.x as f64),
            py(p.y as f64),
            r,
            fill
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(ps: &PointSet) -> (f64, f64, f64, f64) {
    let xs: Vec<f64> = ps.points().iter().map(|p| p.x as f64).collect();
    let ys: Vec<f64> = ps.points().iter().map(|p| p.y as f64).collect();
    let min_x = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_x = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_y = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_y = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (min_x, min_y, max_x, max_y)
}
