//! Brute-force oracles shared by the oracle tests and the acceptance run.

use std::collections::BTreeSet;

use ndsig::{
    build_polyhedron, convenient_completion, elementary_triangulate, enumerate_not_above, families,
    ExponentVector, Support,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type I3 = [i64; 3];

pub fn sub(a: I3, b: I3) -> I3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn cross(a: I3, b: I3) -> I3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot(a: I3, b: I3) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn rank(vs: &[I3]) -> usize {
    if vs.iter().all(|v| *v == [0, 0, 0]) {
        return 0;
    }
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            let c = cross(*a, *b);
            if c != [0, 0, 0] {
                return if vs.iter().any(|v| dot(c, *v) != 0) {
                    3
                } else {
                    2
                };
            }
        }
    }
    1
}

/// Facets of `Conv(S) + R³≥0` from every plane through three generators,
/// where generators are the points and the unit recession directions.
pub fn brute_facets(s: &Support) -> BTreeSet<(I3, i64)> {
    let pts: Vec<I3> = s.iter().map(|p| p.0.map(i64::from)).collect();
    let units: [I3; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut spans: Vec<I3> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = sub(pts[j], pts[i]);
            for k in j + 1..pts.len() {
                spans.push(cross(d, sub(pts[k], pts[i])));
            }
            for u in units {
                spans.push(cross(d, u));
            }
        }
    }
    spans.extend([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    let mut out = BTreeSet::new();
    for mut n in spans {
        if n == [0, 0, 0] {
            continue;
        }
        if n.iter().any(|&c| c < 0) {
            n = n.map(|c| -c);
        }
        if n.iter().any(|&c| c < 0) {
            continue;
        }
        let g = gcd(gcd(n[0], n[1]), n[2]);
        n = n.map(|c| c / g);
        let offset = pts.iter().map(|&p| dot(n, p)).min().unwrap();
        let touching: Vec<I3> = pts
            .iter()
            .copied()
            .filter(|&p| dot(n, p) == offset)
            .collect();
        let mut dirs: Vec<I3> = touching.iter().map(|&p| sub(p, touching[0])).collect();
        dirs.extend(units.iter().copied().filter(|&u| dot(n, u) == 0));
        if rank(&dirs) == 2 {
            out.insert((n, offset));
        }
    }
    out
}

fn random_convenient_support(rng: &mut ChaCha8Rng, max_points: usize, max_coord: u32) -> Support {
    let mut pts: Vec<ExponentVector> = (0..3)
        .map(|axis| {
            let mut e = [0u32; 3];
            e[axis] = rng.random_range(1..=max_coord);
            ExponentVector(e)
        })
        .collect();
    let extra = rng.random_range(0..=max_points - 3);
    while pts.len() < 3 + extra {
        let p = ExponentVector::new(
            rng.random_range(0..=max_coord),
            rng.random_range(0..=max_coord),
            rng.random_range(0..=max_coord),
        );
        if p.degree() > 0 {
            pts.push(p);
        }
    }
    Support::new(pts).unwrap()
}

pub fn oracle_supports() -> Vec<Support> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<Support> = (0..400)
        .map(|_| random_convenient_support(&mut rng, 8, 8))
        .collect();
    v.push(families::tpqr(3, 4, 5));
    v.push(convenient_completion(&families::example1(false), 13).unwrap());
    v.push(convenient_completion(&families::t_family(2, true), 28).unwrap());
    v
}

pub fn check_hull(s: &Support) -> Result<(), String> {
    let np = build_polyhedron(s).map_err(|e| e.to_string())?;
    let got: BTreeSet<(I3, i64)> = np.facets().iter().map(|f| (f.normal.0, f.offset)).collect();
    let want = brute_facets(s);
    if got != want {
        return Err(format!("facets of {s}: got {got:?}, oracle {want:?}"));
    }
    if let Some(f) = np
        .facets()
        .iter()
        .find(|f| f.compact != f.normal.is_positive())
    {
        return Err(format!(
            "facet {:?} of {s} has the wrong compactness",
            f.normal
        ));
    }
    for v in np.vertices() {
        let on = np.facets().iter().filter(|f| f.slack(v) == 0).count();
        if on < 3 {
            return Err(format!("vertex {v} of {s} lies on {on} facets"));
        }
    }
    Ok(())
}

/// Scans the intercept box point by point against the oracle facets.
pub fn check_classification(s: &Support) -> Result<(), String> {
    let np = build_polyhedron(s).map_err(|e| e.to_string())?;
    let facets = brute_facets(s);
    let cp = enumerate_not_above(&np);
    let [ix, iy, iz] = np.intercepts();
    let (mut below, mut interior, mut skeleton) = (Vec::new(), Vec::new(), Vec::new());
    for x in 1..=ix {
        for y in 1..=iy {
            for z in 1..=iz {
                let p = [x, y, z].map(i64::from);
                let e = ExponentVector::new(x, y, z);
                let slacks: Vec<(I3, i64)> =
                    facets.iter().map(|&(n, o)| (n, dot(n, p) - o)).collect();
                if slacks.iter().any(|&(_, s)| s < 0) {
                    below.push(e);
                    continue;
                }
                let eq: Vec<I3> = slacks
                    .iter()
                    .filter(|(_, s)| *s == 0)
                    .map(|(n, _)| *n)
                    .collect();
                if !eq.iter().any(|n| n.iter().all(|&c| c > 0)) {
                    continue;
                }
                if eq.len() == 1 {
                    interior.push(e);
                } else {
                    skeleton.push(e);
                }
            }
        }
    }
    let sorted = |v: &[ExponentVector]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    for (name, got, want) in [
        ("below", &cp.below, &below),
        ("face interior", &cp.on_face_interior, &interior),
        ("skeleton", &cp.on_skeleton, &skeleton),
    ] {
        if sorted(got) != *want {
            return Err(format!("{name} points of {s} differ from the box scan"));
        }
    }
    Ok(())
}

pub fn check_pick(s: &Support) -> Result<(), String> {
    let np = build_polyhedron(s).map_err(|e| e.to_string())?;
    for (i, f) in np.compact_facets() {
        let tris = elementary_triangulate(&np, i);
        if tris.len() as i64 != np.pick_count(i) {
            return Err(format!(
                "facet {:?} of {s}: {} triangles, Pick count {}",
                f.normal,
                tris.len(),
                np.pick_count(i)
            ));
        }
        for t in &tris {
            let [a, b, c] = t.map(|v| v.0.map(i64::from));
            let area = cross(sub(b, a), sub(c, a));
            if area != f.normal.0 && area != f.normal.0.map(|x| -x) {
                return Err(format!("triangle {t:?} of {s} is not elementary"));
            }
        }
    }
    Ok(())
}
