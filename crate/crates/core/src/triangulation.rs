//! Elementary lattice triangulations of compact facets.

use crate::exponent::ExponentVector;
use crate::hull::NewtonPolyhedron;

pub type LatticeTriangle = [ExponentVector; 3];

/// Triangulates a compact facet using every lattice point of the facet as a
/// vertex, so each triangle is elementary (its only lattice points are its
/// corners). Non-compact facets give an empty list.
///
/// The polygon is fanned from its first vertex, then the remaining lattice
/// points are inserted one at a time, splitting the triangle (or the one or
/// two triangles sharing the edge) that contains them.
pub fn elementary_triangulate(np: &NewtonPolyhedron, facet: usize) -> Vec<LatticeTriangle> {
    let f = &np.facets()[facet];
    if !f.compact {
        return Vec::new();
    }
    let n = f.normal.0;
    let k = (0..3).max_by_key(|&i| n[i]).unwrap();
    let (pi, pj) = ((k + 1) % 3, (k + 2) % 3);
    let proj = |p: &ExponentVector| (i64::from(p.0[pi]), i64::from(p.0[pj]));

    let corners = np.face_vertices(facet);
    let (boundary, interior) = np.facet_lattice_points(facet);
    let mut points: Vec<ExponentVector> = corners.clone();
    let extra: Vec<ExponentVector> = boundary
        .into_iter()
        .chain(interior)
        .filter(|p| !corners.contains(p))
        .collect();
    points.extend(extra.iter().copied());
    let xy: Vec<(i64, i64)> = points.iter().map(proj).collect();

    let orient = |a: usize, b: usize, c: usize| -> i64 {
        let (ax, ay) = xy[a];
        let (bx, by) = xy[b];
        let (cx, cy) = xy[c];
        (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    };

    // Triangles are stored counterclockwise in the projection.
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for w in 1..corners.len() - 1 {
        let t = [0, w, w + 1];
        if orient(t[0], t[1], t[2]) > 0 {
            tris.push(t);
        } else {
            tris.push([t[0], t[2], t[1]]);
        }
    }

    for p in corners.len()..points.len() {
        let mut on_edges: Vec<(usize, usize)> = Vec::new();
        let mut inside = None;
        for (ti, t) in tris.iter().enumerate() {
            let o = [
                orient(t[0], t[1], p),
                orient(t[1], t[2], p),
                orient(t[2], t[0], p),
            ];
            if o.iter().any(|&s| s < 0) {
                continue;
            }
            match o.iter().position(|&s| s == 0) {
                None => {
                    inside = Some(ti);
                    break;
                }
                Some(e) => on_edges.push((ti, e)),
            }
        }
        if let Some(ti) = inside {
            let [a, b, c] = tris[ti];
            tris[ti] = [a, b, p];
            tris.push([b, c, p]);
            tris.push([c, a, p]);
            continue;
        }
        debug_assert!(
            !on_edges.is_empty() && on_edges.len() <= 2,
            "lattice point must lie in the facet"
        );
        for (ti, e) in on_edges {
            let t = tris[ti];
            let (a, b, c) = (t[e], t[(e + 1) % 3], t[(e + 2) % 3]);
            tris[ti] = [a, p, c];
            tris.push([p, b, c]);
        }
    }

    tris.into_iter()
        .map(|[a, b, c]| [points[a], points[b], points[c]])
        .collect()
}
