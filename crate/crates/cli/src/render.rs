//! Static exports of the Newton diagram: a Wavefront OBJ triangle mesh and an
//! SVG drawing in the projection along `(1, 1, 1)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ndsig::{ExponentVector, NewtonPolyhedron};

/// Compact faces to draw, as vertex cycles. Faces through an added
/// completion vertex are left out when `hidden` lists those vertices.
pub fn visible_faces(np: &NewtonPolyhedron, hidden: &[ExponentVector]) -> Vec<Vec<ExponentVector>> {
    np.compact_facets()
        .map(|(i, _)| np.face_vertices(i))
        .filter(|f| !f.iter().any(|v| hidden.contains(v)))
        .collect()
}

fn shifted(v: &ExponentVector, shift: bool) -> [i64; 3] {
    let d = i64::from(shift);
    v.0.map(|c| i64::from(c) - d)
}

fn label(v: &ExponentVector, shift: bool) -> String {
    let [a, b, c] = shifted(v, shift);
    format!("({a},{b},{c})")
}

fn index_vertices(faces: &[Vec<ExponentVector>]) -> BTreeMap<ExponentVector, usize> {
    let mut idx = BTreeMap::new();
    for v in faces.iter().flatten() {
        let next = idx.len();
        idx.entry(*v).or_insert(next);
    }
    // renumber in sorted order so output does not depend on face order
    idx.keys()
        .copied()
        .collect::<Vec<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect()
}

/// Each face is fanned from its first vertex into triangles.
pub fn to_obj(faces: &[Vec<ExponentVector>], shift: bool) -> String {
    let idx = index_vertices(faces);
    let mut out = String::from("# Newton diagram, compact faces\n");
    if shift {
        out.push_str("# coordinates shifted by (-1,-1,-1)\n");
    }
    for v in idx.keys() {
        let [a, b, c] = shifted(v, shift);
        let _ = writeln!(out, "v {a} {b} {c} # {}", label(v, shift));
    }
    for (fi, face) in faces.iter().enumerate() {
        let _ = writeln!(out, "g face{fi}");
        for w in 1..face.len() - 1 {
            let [a, b, c] = [face[0], face[w], face[w + 1]].map(|v| idx[&v] + 1);
            let _ = writeln!(out, "f {a} {b} {c}");
        }
    }
    out
}

const PALETTE: [&str; 6] = [
    "#cfe3f7", "#f7dfcf", "#d8f0d2", "#efd5ef", "#f5f0c8", "#d5eeee",
];

/// Orthographic view looking down the diagonal: `x`, `y`, `z` axes point at
/// 210°, 330° and 90°.
pub fn to_svg(faces: &[Vec<ExponentVector>], shift: bool) -> String {
    const SCALE: f64 = 40.0;
    const MARGIN: f64 = 60.0;
    let project = |v: &ExponentVector| -> (f64, f64) {
        let [x, y, z] = shifted(v, shift).map(|c| c as f64);
        let c30 = 3f64.sqrt() / 2.0;
        ((y - x) * c30 * SCALE, (z - (x + y) / 2.0) * -SCALE)
    };
    let idx = index_vertices(faces);
    let pts: Vec<(f64, f64)> = idx.keys().map(project).collect();
    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let (w, h) = (max_x - min_x + 2.0 * MARGIN, max_y - min_y + 2.0 * MARGIN);
    let at = |v: &ExponentVector| {
        let (x, y) = project(v);
        (x - min_x + MARGIN, y - min_y + MARGIN)
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    out.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    out.push('\n');
    for (fi, face) in faces.iter().enumerate() {
        let points: Vec<String> = face
            .iter()
            .map(|v| {
                let (x, y) = at(v);
                format!("{x:.1},{y:.1}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{}" stroke="black" stroke-width="1.5"/>"#,
            points.join(" "),
            PALETTE[fi % PALETTE.len()]
        );
    }
    for v in idx.keys() {
        let (x, y) = at(v);
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="11">{}</text>"#,
            x + 5.0,
            y - 5.0,
            label(v, shift)
        );
    }
    out.push_str("</svg>\n");
    out
}
