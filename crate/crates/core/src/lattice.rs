//! Normalized volumes under the Newton diagram and the positive lattice points
//! that are not above it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{ivec, ExponentVector};
use crate::hull::{Facet, NewtonPolyhedron, PointClass};

/// Volumes under the diagram, each scaled by `d!` so that they are integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeData {
    pub six_vol3: i64,
    pub two_vol2_xy: i64,
    pub two_vol2_yz: i64,
    pub two_vol2_xz: i64,
    pub vol1_x: i64,
    pub vol1_y: i64,
    pub vol1_z: i64,
}

impl VolumeData {
    pub fn two_vol2(&self) -> i64 {
        self.two_vol2_xy + self.two_vol2_yz + self.two_vol2_xz
    }

    pub fn vol1(&self) -> i64 {
        self.vol1_x + self.vol1_y + self.vol1_z
    }

    /// Kouchnirenko's Newton number `3!V₃ - 2!V₂ + V₁ - 1`.
    pub fn newton_number(&self) -> i64 {
        self.six_vol3 - self.two_vol2() + self.vol1() - 1
    }
}

impl std::ops::Add for VolumeData {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            six_vol3: self.six_vol3 + o.six_vol3,
            two_vol2_xy: self.two_vol2_xy + o.two_vol2_xy,
            two_vol2_yz: self.two_vol2_yz + o.two_vol2_yz,
            two_vol2_xz: self.two_vol2_xz + o.two_vol2_xz,
            vol1_x: self.vol1_x + o.vol1_x,
            vol1_y: self.vol1_y + o.vol1_y,
            vol1_z: self.vol1_z + o.vol1_z,
        }
    }
}

/// Positive lattice points that are not above the diagram, by class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedPoints {
    pub below: Vec<ExponentVector>,
    pub on_face_interior: Vec<ExponentVector>,
    pub on_skeleton: Vec<ExponentVector>,
}

impl ClassifiedPoints {
    pub fn on_count(&self) -> usize {
        self.on_face_interior.len() + self.on_skeleton.len()
    }
}

/// The region under the diagram is star-shaped from the origin, so its
/// volume is the sum of the cones over the compact facets; each facet is
/// fanned from its first vertex. In the coordinate planes the same is done
/// with the compact edges.
pub fn volumes(np: &NewtonPolyhedron) -> Result<VolumeData> {
    if np.intercepts().contains(&0) {
        return Err(Error::NotConvenient);
    }
    let mut six_vol3: i128 = 0;
    for (i, _) in np.compact_facets() {
        let verts: Vec<[i64; 3]> = np.face_vertices(i).iter().map(|v| v.to_i64()).collect();
        for w in 1..verts.len() - 1 {
            six_vol3 += ivec::det(verts[0], verts[w], verts[w + 1]).abs();
        }
    }

    // two_vol2 for the plane spanned by axes (i, j), i.e. the third coordinate is zero.
    let plane = |i: usize, j: usize| -> i64 {
        let zero = 3 - i - j;
        np.edges()
            .iter()
            .map(|&(a, b)| (np.vertices()[a], np.vertices()[b]))
            .filter(|(a, b)| a.0[zero] == 0 && b.0[zero] == 0)
            .map(|(a, b)| {
                let (a, b) = (a.to_i64(), b.to_i64());
                (a[i] * b[j] - a[j] * b[i]).abs()
            })
            .sum()
    };

    let [ix, iy, iz] = np.intercepts().map(i64::from);
    Ok(VolumeData {
        six_vol3: i64::try_from(six_vol3).expect("volume fits in i64"),
        two_vol2_xy: plane(0, 1),
        two_vol2_yz: plane(1, 2),
        two_vol2_xz: plane(0, 2),
        vol1_x: ix,
        vol1_y: iy,
        vol1_z: iz,
    })
}

/// Scans `Z³_{>0}` column by column. Every point not above the diagram has
/// each coordinate below the matching axis intercept, so the box
/// `[1, ix-1] × [1, iy-1]` of `(x, y)` columns is exhaustive. In a column the
/// compact facets (all with positive `z` coefficient) give the lowest `z`
/// inside `Γ₊`; smaller `z` is below, that `z` is classified, larger `z`
/// is strictly above.
pub fn enumerate_not_above(np: &NewtonPolyhedron) -> ClassifiedPoints {
    let [ix, iy, _] = np.intercepts();
    let compact: Vec<_> = np.compact_facets().map(|(_, f)| f.clone()).collect();

    let columns: Vec<ClassifiedPoints> = (1..ix)
        .into_par_iter()
        .map(|x| {
            let mut out = ClassifiedPoints::default();
            for y in 1..iy {
                let z_req = lowest_z(&compact, x, y).max(1);
                for z in 1..z_req {
                    out.below.push(ExponentVector::new(x, y, z as u32));
                }
                let p = ExponentVector::new(x, y, z_req as u32);
                match np.classify_point(&p) {
                    PointClass::Below => out.below.push(p),
                    PointClass::OnTwoFaceInterior(_) => out.on_face_interior.push(p),
                    PointClass::OnSkeleton => out.on_skeleton.push(p),
                    PointClass::Above => {}
                }
            }
            out
        })
        .collect();

    let mut merged = ClassifiedPoints::default();
    for c in columns {
        merged.below.extend(c.below);
        merged.on_face_interior.extend(c.on_face_interior);
        merged.on_skeleton.extend(c.on_skeleton);
    }
    merged
}

/// Smallest `z ≥ 0` with `(x, y, z) ∈ Γ₊`, given the compact facets.
pub(crate) fn lowest_z(compact: &[Facet], x: u32, y: u32) -> i64 {
    compact
        .iter()
        .map(|f| {
            let [a, b, c] = f.normal.0;
            div_ceil(f.offset - a * i64::from(x) - b * i64::from(y), c)
        })
        .fold(0, i64::max)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::build_polyhedron;
    use crate::support::Support;

    fn np(s: &[[u32; 3]]) -> NewtonPolyhedron {
        build_polyhedron(&Support::from_triples(s)).unwrap()
    }

    #[test]
    fn a1_volumes() {
        let v = volumes(&np(&[[2, 0, 0], [0, 2, 0], [0, 0, 2]])).unwrap();
        assert_eq!(v.six_vol3, 8);
        assert_eq!((v.two_vol2_xy, v.two_vol2_yz, v.two_vol2_xz), (4, 4, 4));
        assert_eq!((v.vol1_x, v.vol1_y, v.vol1_z), (2, 2, 2));
        assert_eq!(v.newton_number(), 1);
    }

    #[test]
    fn smooth_volumes() {
        let v = volumes(&np(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        assert_eq!(v.six_vol3, 1);
        assert_eq!(v.two_vol2(), 3);
        assert_eq!(v.vol1(), 3);
        assert_eq!(v.newton_number(), 0);
    }

    #[test]
    fn tpqr_newton_number() {
        for (p, q, r) in [(3, 3, 3), (4, 5, 6), (3, 7, 12)] {
            let v = volumes(&np(&[[1, 1, 1], [p, 0, 0], [0, q, 0], [0, 0, r]])).unwrap();
            assert_eq!(v.newton_number(), i64::from(p + q + r) - 1);
        }
    }

    #[test]
    fn tpqr_has_only_the_centre() {
        let cp = enumerate_not_above(&np(&[[1, 1, 1], [5, 0, 0], [0, 6, 0], [0, 0, 7]]));
        assert!(cp.below.is_empty());
        assert!(cp.on_face_interior.is_empty());
        assert_eq!(cp.on_skeleton, vec![ExponentVector::new(1, 1, 1)]);
    }

    #[test]
    fn a1_has_no_positive_points() {
        let cp = enumerate_not_above(&np(&[[2, 0, 0], [0, 2, 0], [0, 0, 2]]));
        assert_eq!(cp, ClassifiedPoints::default());
    }

    #[test]
    fn diagonal_counts() {
        // x^3 + y^3 + z^3: (1,1,1) is in the interior of the only facet.
        let cp = enumerate_not_above(&np(&[[3, 0, 0], [0, 3, 0], [0, 0, 3]]));
        assert!(cp.below.is_empty());
        assert_eq!(cp.on_face_interior, vec![ExponentVector::new(1, 1, 1)]);
    }

    #[test]
    fn ceil_division() {
        assert_eq!(div_ceil(7, 2), 4);
        assert_eq!(div_ceil(6, 2), 3);
        assert_eq!(div_ceil(-3, 2), -1);
        assert_eq!(div_ceil(0, 5), 0);
    }
}
