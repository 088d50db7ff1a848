//! Exact convex polytopes in low dimension.
//!
//! A [`Polytope`] carries both a V-representation (canonical, sorted, no
//! redundant points) and an H-representation (primitive integer normals).
//! Polytopes that are not full-dimensional also carry a basis of the
//! direction space of their affine hull; their facets are inequalities valid
//! within that affine hull, with normals lying in the direction space.
//!
//! The hull is built by beneath-beyond insertion in the coordinates of the
//! affine hull, with every orientation decided exactly.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    primitive, primitive_direction, rat_from_int, Integer, LatticeVector, RatVector, Rational,
};
use crate::linalg::{self, Row};

/// The inequality `⟨normal, y⟩ ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: Rational,
}

impl Facet {
    pub fn value_at(&self, y: &RatVector) -> Rational {
        y.dot_lattice(&self.normal).expect("facet and point share the ambient dimension")
    }

    pub fn contains(&self, y: &RatVector) -> bool {
        self.value_at(y) <= self.offset
    }

    pub fn is_tight(&self, y: &RatVector) -> bool {
        self.value_at(y) == self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RatVector>,
    facets: Vec<Facet>,
    // Reduced row echelon basis of the direction space of the affine hull.
    span: Vec<RatVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportResult {
    pub value: Rational,
    pub argmax_vertices: Vec<usize>,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn span(&self) -> &[RatVector] {
        &self.span
    }

    pub fn affine_dim(&self) -> usize {
        self.span.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(RatVector::is_integral)
    }

    /// The vertices as lattice points, if they are all integral.
    pub fn integer_vertices(&self) -> Option<Vec<LatticeVector>> {
        self.vertices.iter().map(RatVector::to_lattice).collect()
    }

    /// Primitive integer basis of the orthogonal complement of the direction space.
    pub fn complement_directions(&self) -> Vec<LatticeVector> {
        let rows: Vec<Row> = self.span.iter().map(|r| r.0.clone()).collect();
        linalg::nullspace(&rows, self.dim)
            .iter()
            .map(|w| primitive_direction(w).expect("nullspace vectors are nonzero"))
            .collect()
    }

    /// The equalities `⟨w, y⟩ = c` cutting out the affine hull, one per complement direction.
    pub fn flat_equalities(&self) -> Vec<(LatticeVector, Rational)> {
        let base = &self.vertices[0];
        self.complement_directions()
            .into_iter()
            .map(|w| {
                let c = base.dot_lattice(&w).expect("same dimension");
                (w, c)
            })
            .collect()
    }

    /// Membership via the H-representation.
    pub fn contains(&self, y: &RatVector) -> bool {
        y.dim() == self.dim
            && self.facets.iter().all(|f| f.contains(y))
            && self
                .flat_equalities()
                .iter()
                .all(|(w, c)| &y.dot_lattice(w).expect("same dimension") == c)
    }

    /// The polytope with the given integer vertices, convenience for tests and examples.
    pub fn from_lattice_points(points: &[LatticeVector]) -> Result<Self> {
        convex_hull(&points.iter().map(LatticeVector::to_rational).collect::<Vec<_>>())
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        convex_hull(&points.iter().map(|p| RatVector::from_ints(p)).collect::<Vec<_>>())
    }

    pub fn vertex_index(&self, v: &RatVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }
}

fn dot_int(normal: &[Integer], p: &[Rational]) -> Rational {
    normal
        .iter()
        .zip(p)
        .fold(Rational::zero(), |acc, (n, x)| acc + rat_from_int(n) * x)
}

#[derive(Clone, Debug)]
struct WorkFacet {
    normal: Vec<Integer>,
    offset: Rational,
    verts: Vec<usize>,
}

impl WorkFacet {
    fn side(&self, p: &[Rational]) -> std::cmp::Ordering {
        dot_int(&self.normal, p).cmp(&self.offset)
    }
}

/// Hyperplane through `k` affinely independent points of `Q^k`, oriented so
/// that `interior` lies strictly beneath it.
fn oriented_hyperplane(points: &[&Row], interior: &Row) -> (Vec<Integer>, Rational) {
    let k = interior.len();
    let first = points[0];
    let diffs: Vec<Row> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let ns = linalg::nullspace(&diffs, k);
    debug_assert_eq!(ns.len(), 1, "points must span a hyperplane");
    let mut normal = primitive_direction(&ns[0]).expect("nonzero normal").0;
    let mut offset = dot_int(&normal, first);
    if dot_int(&normal, interior) > offset {
        normal.iter_mut().for_each(|c| *c = -c.clone());
        offset = -offset;
    }
    (normal, offset)
}

/// Greedily picks affinely independent members of `candidates` until `want` are chosen.
fn independent_subset(points: &[Row], candidates: &[usize], want: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::with_capacity(want);
    for &i in candidates {
        if chosen.len() == want {
            break;
        }
        let mut trial: Vec<&Row> = chosen.iter().map(|&j| &points[j]).collect();
        trial.push(&points[i]);
        if linalg::affine_dim(&trial) == trial.len() as isize - 1 {
            chosen.push(i);
        }
    }
    chosen
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Beneath-beyond hull of distinct points affinely spanning `Q^k`, `k ≥ 1`.
/// Returns the vertex indices and the facets.
fn hull_full(points: &[Row], k: usize) -> (Vec<usize>, Vec<WorkFacet>) {
    let all: Vec<usize> = (0..points.len()).collect();
    let simplex = independent_subset(points, &all, k + 1);
    assert_eq!(simplex.len(), k + 1, "points must affinely span the space");

    let count = Rational::from_integer(Integer::from(k + 1));
    let interior: Row = (0..k)
        .map(|c| simplex.iter().map(|&i| points[i][c].clone()).sum::<Rational>() / &count)
        .collect();

    let mut facets: Vec<WorkFacet> = simplex
        .iter()
        .map(|&skip| {
            let mut verts: Vec<usize> = simplex.iter().copied().filter(|&i| i != skip).collect();
            verts.sort_unstable();
            let refs: Vec<&Row> = verts.iter().map(|&i| &points[i]).collect();
            let (normal, offset) = oriented_hyperplane(&refs, &interior);
            WorkFacet { normal, offset, verts }
        })
        .collect();
    let mut alive: Vec<usize> = simplex.clone();
    alive.sort_unstable();

    let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
    for p in (0..points.len()).filter(|i| !in_simplex.contains(i)) {
        let sides: Vec<_> = facets.iter().map(|f| f.side(&points[p])).collect();
        if !sides.contains(&std::cmp::Ordering::Greater) {
            continue;
        }

        let mut new_planes: BTreeSet<(Vec<Integer>, Rational)> = BTreeSet::new();
        for (fi, f) in facets.iter().enumerate() {
            if sides[fi] != std::cmp::Ordering::Greater {
                continue;
            }
            for (gi, g) in facets.iter().enumerate() {
                if sides[gi] != std::cmp::Ordering::Less {
                    continue;
                }
                let ridge = intersect_sorted(&f.verts, &g.verts);
                let refs: Vec<&Row> = ridge.iter().map(|&i| &points[i]).collect();
                if linalg::affine_dim(&refs) != k as isize - 2 {
                    continue;
                }
                let mut basis = independent_subset(points, &ridge, k - 1);
                basis.push(p);
                let refs: Vec<&Row> = basis.iter().map(|&i| &points[i]).collect();
                new_planes.insert(oriented_hyperplane(&refs, &interior));
            }
        }

        let mut kept: Vec<WorkFacet> = facets
            .into_iter()
            .zip(&sides)
            .filter(|(_, s)| **s != std::cmp::Ordering::Greater)
            .map(|(f, _)| f)
            .collect();
        for (normal, offset) in new_planes {
            if !kept.iter().any(|f| f.normal == normal && f.offset == offset) {
                kept.push(WorkFacet { normal, offset, verts: Vec::new() });
            }
        }

        let mut candidates = alive.clone();
        candidates.push(p);
        candidates.sort_unstable();
        for f in kept.iter_mut() {
            f.verts = candidates
                .iter()
                .copied()
                .filter(|&i| f.side(&points[i]) == std::cmp::Ordering::Equal)
                .collect();
        }
        alive = candidates
            .into_iter()
            .filter(|&i| {
                let normals: Vec<Row> = kept
                    .iter()
                    .filter(|f| f.verts.binary_search(&i).is_ok())
                    .map(|f| f.normal.iter().map(rat_from_int).collect())
                    .collect();
                linalg::rank(&normals, k) == k
            })
            .collect();
        for f in kept.iter_mut() {
            f.verts.retain(|i| alive.binary_search(i).is_ok());
        }
        facets = kept;
    }
    (alive, facets)
}

/// Canonical convex hull of a nonempty point set.
///
/// Detects the affine dimension, builds the hull inside the affine hull and
/// expresses every facet with a primitive integer normal in the direction space.
pub fn convex_hull(points: &[RatVector]) -> Result<Polytope> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let dim = first.dim();
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
    }
    let pts: Vec<RatVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let base = &pts[0];
    let diffs: Vec<Row> = pts[1..].iter().map(|p| (p - base).0).collect();
    let (span_rows, pivots) = linalg::rref(&diffs, dim);
    let k = pivots.len();
    let span: Vec<RatVector> = span_rows.iter().cloned().map(RatVector).collect();

    if k == 0 {
        return Ok(Polytope { dim, vertices: vec![base.clone()], facets: Vec::new(), span });
    }

    let projected: Vec<Row> = pts
        .iter()
        .map(|p| pivots.iter().map(|&c| p.0[c].clone()).collect())
        .collect();
    let (alive, work) = hull_full(&projected, k);

    let vertices: Vec<RatVector> = alive.iter().map(|&i| pts[i].clone()).collect();
    let mut facets: Vec<Facet> = work
        .iter()
        .map(|f| {
            let mut embedded = vec![Rational::zero(); dim];
            for (&c, n) in pivots.iter().zip(&f.normal) {
                embedded[c] = rat_from_int(n);
            }
            if k < dim {
                embedded = linalg::project_onto_rows(&span_rows, &embedded);
            }
            let normal = primitive_direction(&embedded).expect("facet normal is nonzero on the span");
            let offset = pts[f.verts[0]].dot_lattice(&normal).expect("same dimension");
            Facet { normal, offset }
        })
        .collect();
    facets.sort();
    facets.dedup();
    Ok(Polytope { dim, vertices, facets, span })
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Maximum of `⟨x, ·⟩` over the polytope and every vertex attaining it.
pub fn support(p: &Polytope, x: &RatVector) -> Result<SupportResult> {
    check_dim(p.dim, x.dim())?;
    let values: Vec<Rational> = p.vertices.iter().map(|v| v.dot(x)).collect::<Result<_>>()?;
    let value = values.iter().max().expect("polytopes are nonempty").clone();
    let argmax_vertices = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == value)
        .map(|(i, _)| i)
        .collect();
    Ok(SupportResult { value, argmax_vertices })
}

/// Support value at a lattice direction.
pub fn support_value(p: &Polytope, x: &LatticeVector) -> Result<Rational> {
    check_dim(p.dim, x.dim())?;
    Ok(p.vertices
        .iter()
        .map(|v| v.dot_lattice(x).expect("same dimension"))
        .max()
        .expect("polytopes are nonempty"))
}

/// `{ x : ⟨x, y⟩ ≤ 1 for all y ∈ P }`, for full-dimensional `P` with `0` in its interior.
pub fn polar(p: &Polytope) -> Result<Polytope> {
    if !p.is_full_dimensional() {
        return Err(Error::PolarUndefined(format!(
            "polytope has affine dimension {} in R^{}",
            p.affine_dim(),
            p.dim
        )));
    }
    if p.facets.iter().any(|f| !f.offset.is_positive()) {
        return Err(Error::PolarUndefined("origin is not in the interior".into()));
    }
    let points: Vec<RatVector> = p
        .facets
        .iter()
        .map(|f| {
            let inv = Rational::from_integer(1.into()) / &f.offset;
            f.normal.to_rational().scale(&inv)
        })
        .collect();
    convex_hull(&points)
}

/// Hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    check_dim(p.dim, q.dim)?;
    let sums: Vec<RatVector> = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| a + b))
        .collect();
    convex_hull(&sums)
}

/// An integer direction maximised over `P` at vertex `index` only.
///
/// Built as the sum of the primitive normals of the facets through the
/// vertex; the strict separation is checked against every other vertex.
pub fn exposure_witness(p: &Polytope, index: usize) -> Result<LatticeVector> {
    let v = p.vertices.get(index).ok_or(Error::VertexIndex { index, count: p.vertices.len() })?;
    if p.affine_dim() == 0 {
        return Err(Error::NothingToSeparate);
    }
    let sum = p
        .facets
        .iter()
        .filter(|f| f.is_tight(v))
        .fold(LatticeVector::zeros(p.dim), |acc, f| &acc + &f.normal);
    let u = primitive(&sum)?;
    let top = v.dot_lattice(&u)?;
    for (j, w) in p.vertices.iter().enumerate() {
        if j != index && w.dot_lattice(&u)? >= top {
            return Err(Error::Precondition(format!("{u} does not expose vertex {v}")));
        }
    }
    Ok(u)
}

/// Indices of the exposed points; for a polytope, every vertex.
pub fn exposed_points(p: &Polytope) -> Vec<usize> {
    if p.vertices.len() == 1 {
        return vec![0];
    }
    (0..p.vertices.len()).filter(|&i| exposure_witness(p, i).is_ok()).collect()
}

/// Equality of canonical vertex lists.
pub fn equal(p: &Polytope, q: &Polytope) -> bool {
    p.dim == q.dim && p.vertices == q.vertices
}

/// An integer direction on which the support functions of `P` and `Q` differ,
/// or `None` when the polytopes are equal.
///
/// Complete: if `P ≠ Q`, some point of one violates an inequality of the
/// other's H-representation, and that inequality's normal separates them.
pub fn separating_direction(p: &Polytope, q: &Polytope) -> Result<Option<LatticeVector>> {
    check_dim(p.dim, q.dim)?;
    let mut candidates: BTreeSet<LatticeVector> = BTreeSet::new();
    for poly in [p, q] {
        candidates.extend(poly.facets.iter().map(|f| f.normal.clone()));
        for w in poly.complement_directions() {
            candidates.insert(-&w);
            candidates.insert(w);
        }
    }
    for u in candidates {
        if support_value(p, &u)? != support_value(q, &u)? {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn square() -> Polytope {
        Polytope::from_ints(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap()
    }

    fn cross() -> Polytope {
        Polytope::from_ints(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap()
    }

    fn facet(n: &[i64], off: i64) -> Facet {
        Facet { normal: LatticeVector::from_ints(n), offset: rat(off, 1) }
    }

    #[test]
    fn square_hull_discards_interior_point() {
        let p = Polytope::from_ints(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1], &[0, 0]]).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(p.is_full_dimensional());
        assert_eq!(
            p.facets(),
            &[facet(&[-1, 0], 1), facet(&[0, -1], 1), facet(&[0, 1], 1), facet(&[1, 0], 1)]
        );
    }

    #[test]
    fn segment_is_one_dimensional() {
        let p = Polytope::from_ints(&[&[1, 0], &[-1, 0]]).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.facets(), &[facet(&[-1, 0], 1), facet(&[1, 0], 1)]);
        assert_eq!(p.complement_directions(), vec![LatticeVector::from_ints(&[0, 1])]);
    }

    #[test]
    fn single_point() {
        let p = Polytope::from_ints(&[&[0, 0]]).unwrap();
        assert_eq!(p.affine_dim(), 0);
        assert!(p.facets().is_empty());
        assert_eq!(exposed_points(&p), vec![0]);
        assert_eq!(exposure_witness(&p, 0), Err(Error::NothingToSeparate));
    }

    #[test]
    fn slanted_segment_facets_live_in_the_span() {
        let p = Polytope::from_ints(&[&[1, 2, 0], &[-1, -2, 0], &[0, 0, 0]]).unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.facets(), &[facet(&[-1, -2, 0], 5), facet(&[1, 2, 0], 5)]);
    }

    #[test]
    fn coplanar_points_in_3d() {
        // A parallelogram in the plane x + y + z = 2, plus an edge midpoint.
        let p = Polytope::from_ints(&[
            &[2, 0, 0],
            &[0, 2, 0],
            &[2, 2, -2],
            &[0, 0, 2],
            &[1, 0, 1],
        ])
        .unwrap();
        assert_eq!(p.affine_dim(), 2);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        for v in p.vertices() {
            assert!(p.contains(v));
        }
        assert!(!p.contains(&RatVector::from_ints(&[1, 1, 1])));
    }

    #[test]
    fn support_examples() {
        let s = square();
        let r = support(&s, &RatVector::from_ints(&[3, 4])).unwrap();
        assert_eq!(r.value, rat(7, 1));
        assert_eq!(r.argmax_vertices.len(), 1);
        assert_eq!(s.vertices()[r.argmax_vertices[0]], RatVector::from_ints(&[1, 1]));
        let r = support(&s, &RatVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(r.value, rat(1, 1));
        let hit: Vec<_> = r.argmax_vertices.iter().map(|&i| s.vertices()[i].clone()).collect();
        assert_eq!(hit, vec![RatVector::from_ints(&[1, -1]), RatVector::from_ints(&[1, 1])]);
        let r = support(&s, &RatVector::zeros(2)).unwrap();
        assert_eq!(r.argmax_vertices, vec![0, 1, 2, 3]);
        assert!(support(&s, &RatVector::zeros(3)).is_err());
    }

    #[test]
    fn polar_of_square_and_cross() {
        assert!(equal(&polar(&square()).unwrap(), &cross()));
        assert!(equal(&polar(&cross()).unwrap(), &square()));
        let seg = Polytope::from_ints(&[&[1, 0], &[-1, 0]]).unwrap();
        assert!(matches!(polar(&seg), Err(Error::PolarUndefined(_))));
        let off_center = Polytope::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(polar(&off_center), Err(Error::PolarUndefined(_))));
    }

    #[test]
    fn minkowski_examples() {
        let origin = Polytope::from_ints(&[&[0, 0]]).unwrap();
        assert!(equal(&minkowski_sum(&square(), &origin).unwrap(), &square()));
        let oct = minkowski_sum(&square(), &cross()).unwrap();
        let expected = Polytope::from_ints(&[
            &[2, 1], &[2, -1], &[-2, 1], &[-2, -1], &[1, 2], &[1, -2], &[-1, 2], &[-1, -2],
        ])
        .unwrap();
        assert_eq!(oct.vertices().len(), 8);
        assert!(equal(&oct, &expected));
        let a = Polytope::from_ints(&[&[1, 0], &[-1, 0]]).unwrap();
        let b = Polytope::from_ints(&[&[0, 1], &[0, -1]]).unwrap();
        assert!(equal(&minkowski_sum(&a, &b).unwrap(), &square()));
    }

    #[test]
    fn exposure_witness_examples() {
        let s = square();
        let i = s.vertex_index(&RatVector::from_ints(&[1, 1])).unwrap();
        assert_eq!(exposure_witness(&s, i).unwrap(), LatticeVector::from_ints(&[1, 1]));
        let c = cross();
        let i = c.vertex_index(&RatVector::from_ints(&[1, 0])).unwrap();
        let u = exposure_witness(&c, i).unwrap();
        assert!(c.vertices().iter().enumerate().all(|(j, w)| {
            j == i || w.dot_lattice(&u).unwrap() < c.vertices()[i].dot_lattice(&u).unwrap()
        }));
        let seg = Polytope::from_ints(&[&[1, 0], &[-1, 0]]).unwrap();
        let i = seg.vertex_index(&RatVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(exposure_witness(&seg, i).unwrap(), LatticeVector::from_ints(&[1, 0]));
        assert_eq!(exposed_points(&seg), vec![0, 1]);
        assert_eq!(exposed_points(&s), vec![0, 1, 2, 3]);
    }

    #[test]
    fn equality_examples() {
        let with_center =
            Polytope::from_ints(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1], &[0, 0]]).unwrap();
        assert!(equal(&square(), &with_center));
        assert!(!equal(&square(), &cross()));
        let o = Polytope::from_ints(&[&[0, 0]]).unwrap();
        assert!(equal(&o, &o.clone()));
    }

    #[test]
    fn separating_direction_finds_mismatch() {
        let u = separating_direction(&square(), &cross()).unwrap().unwrap();
        assert_ne!(support_value(&square(), &u).unwrap(), support_value(&cross(), &u).unwrap());
        assert_eq!(separating_direction(&square(), &square()).unwrap(), None);
        let seg = Polytope::from_ints(&[&[1, 0], &[-1, 0]]).unwrap();
        let thin = Polytope::from_ints(&[&[1, 0], &[-1, 0], &[0, 1]]).unwrap();
        assert!(separating_direction(&seg, &thin).unwrap().is_some());
    }

    #[test]
    fn rational_vertices_get_integer_normals() {
        let p = convex_hull(&[
            RatVector(vec![rat(1, 2), rat(0, 1)]),
            RatVector(vec![rat(0, 1), rat(1, 3)]),
            RatVector(vec![rat(-1, 2), rat(-1, 3)]),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 3);
        for f in p.facets() {
            assert_eq!(primitive(&f.normal).unwrap(), f.normal);
            assert_eq!(p.vertices().iter().filter(|v| f.is_tight(v)).count(), 2);
        }
    }
}
