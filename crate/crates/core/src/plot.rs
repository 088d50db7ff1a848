//! Plot data: polygon outlines (CSV), polyhedral boundaries (OBJ) and probe
//! trace overlays (CSV). Every number is written exactly.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};
use crate::geometry::Polytope;
use crate::json::format_rational;
use crate::reconstruct::TraceStep;

fn centroid(points: &[&RatVector]) -> RatVector {
    let d = points[0].dim();
    let count = Rational::from_integer(points.len().into());
    RatVector(
        (0..d)
            .map(|c| points.iter().map(|p| p.0[c].clone()).sum::<Rational>() / &count)
            .collect(),
    )
}

/// Counterclockwise angular order around `center` in the plane, starting at angle 0.
fn ccw_cmp_2d(a: &RatVector, b: &RatVector, center: &RatVector) -> Ordering {
    let (ax, ay) = (&a.0[0] - &center.0[0], &a.0[1] - &center.0[1]);
    let (bx, by) = (&b.0[0] - &center.0[0], &b.0[1] - &center.0[1]);
    let half = |x: &Rational, y: &Rational| -> u8 {
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(&ax, &ay).cmp(&half(&bx, &by)).then_with(|| {
        let cross = &ax * &by - &ay * &bx;
        Rational::zero().cmp(&cross)
    })
}

fn cross3(a: &[Rational], b: &[Rational]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot3(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Counterclockwise order of coplanar points seen from the tip of `normal`.
fn ccw_cmp_3d(a: &RatVector, b: &RatVector, center: &RatVector, reference: &[Rational], normal: &[Rational]) -> Ordering {
    let va = (a - center).0;
    let vb = (b - center).0;
    let half = |v: &[Rational]| -> u8 {
        let s = dot3(normal, &cross3(reference, v));
        let t = dot3(reference, v);
        if s.is_positive() || (s.is_zero() && t.is_positive()) {
            0
        } else {
            1
        }
    };
    half(&va).cmp(&half(&vb)).then_with(|| {
        let s = dot3(normal, &cross3(&va, &vb));
        Rational::zero().cmp(&s)
    })
}

fn row(v: &RatVector) -> String {
    v.0.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

/// Boundary of a planar polytope, counterclockwise and closed (first vertex repeated).
pub fn polygon_csv(p: &Polytope) -> Result<String> {
    if p.dim() != 2 {
        return Err(Error::Precondition(format!("polygon CSV needs d = 2, got d = {}", p.dim())));
    }
    let mut verts: Vec<&RatVector> = p.vertices().iter().collect();
    if p.is_full_dimensional() {
        let c = centroid(&verts);
        verts.sort_by(|a, b| ccw_cmp_2d(a, b, &c));
    }
    let mut out = String::new();
    for v in verts.iter().chain(verts.first()) {
        out.push_str(&row(v));
        out.push('\n');
    }
    Ok(out)
}

/// Boundary mesh of a full-dimensional polytope in `R^3`; faces are
/// counterclockwise seen from outside, indices 1-based.
pub fn obj_mesh(p: &Polytope) -> Result<String> {
    if p.dim() != 3 {
        return Err(Error::Precondition(format!("OBJ mesh needs d = 3, got d = {}", p.dim())));
    }
    let mut out = String::new();
    for v in p.vertices() {
        out.push_str("v ");
        out.push_str(&v.0.iter().map(format_rational).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    if !p.is_full_dimensional() {
        return Ok(out);
    }
    for f in p.facets() {
        let normal: Vec<Rational> = f.normal.to_rational().0;
        let mut idx: Vec<usize> = (0..p.vertices().len()).filter(|&i| f.is_tight(&p.vertices()[i])).collect();
        let pts: Vec<&RatVector> = idx.iter().map(|&i| &p.vertices()[i]).collect();
        let c = centroid(&pts);
        let reference = (pts[0] - &c).0;
        idx.sort_by(|&a, &b| ccw_cmp_3d(&p.vertices()[a], &p.vertices()[b], &c, &reference, &normal));
        out.push('f');
        for i in idx {
            out.push_str(&format!(" {}", i + 1));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Overlay rows `n, λ_n, N(x_n), gap` for a traced ray.
pub fn trace_csv(steps: &[TraceStep]) -> String {
    let mut out = String::from("n,lambda,value,gap\n");
    for s in steps {
        let lambda = s.probe.lambda_n.as_ref().map(format_rational).unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", s.probe.n, lambda, s.probe.value, format_rational(&s.gap)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_outline_is_closed_and_ccw() {
        let sq = Polytope::from_ints(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        let csv = polygon_csv(&sq).unwrap();
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows, vec!["1,1", "-1,1", "-1,-1", "1,-1", "1,1"]);
    }

    #[test]
    fn octahedron_mesh() {
        let oct = Polytope::from_ints(&[
            &[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1],
        ])
        .unwrap();
        let obj = obj_mesh(&oct).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 6);
        let faces: Vec<&str> = obj.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(faces.len(), 8);
        // Each face is a triangle oriented outward: (b - a) × (c - a) · normal > 0.
        for (f, facet) in faces.iter().zip(oct.facets()) {
            let ids: Vec<usize> = f[2..].split(' ').map(|s| s.parse::<usize>().unwrap() - 1).collect();
            assert_eq!(ids.len(), 3);
            let v = |i: usize| oct.vertices()[ids[i]].clone();
            let e1 = (&v(1) - &v(0)).0;
            let e2 = (&v(2) - &v(0)).0;
            assert!(dot3(&cross3(&e1, &e2), &facet.normal.to_rational().0).is_positive());
        }
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let seg = Polytope::from_ints(&[&[1, 0, 0], &[-1, 0, 0]]).unwrap();
        assert!(polygon_csv(&seg).is_err());
        let sq = Polytope::from_ints(&[&[1, 1], &[-1, -1]]).unwrap();
        assert!(obj_mesh(&sq).is_err());
    }
}
