//! Delzant polytopes in H-representation with exact vertex and face data.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    hyperplane_lattice, lattice_determinant, primitive, rat_int, solve, unimodular_inverse,
    LatticeVector, Matrix, Rational, RationalPoint,
};
use crate::error::{Error, Result};

/// The closed halfspace `{x : <normal, x> <= offset}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    normal: LatticeVector,
    offset: Rational,
}

impl HalfSpace {
    /// Builds a halfspace, dividing normal and offset by the normal's content.
    pub fn new(normal: LatticeVector, offset: Rational) -> Result<Self> {
        let content = normal.content();
        let normal = primitive(&normal)?;
        Ok(HalfSpace {
            normal,
            offset: offset / rat_int(&content),
        })
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Result<Self> {
        HalfSpace::new(LatticeVector::from_i64(normal), Rational::from_integer(offset.into()))
    }

    pub fn normal(&self) -> &LatticeVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn slack(&self, p: &RationalPoint) -> Rational {
        &self.offset - self.normal.dot_point(p)
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        !self.slack(p).is_negative()
    }

    pub fn is_tight(&self, p: &RationalPoint) -> bool {
        self.slack(p).is_zero()
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, x> <= {}", self.normal, crate::arith::format_rational(&self.offset))
    }
}

/// A nonempty face of a polytope, identified by its maximal active set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    /// Halfspaces whose hyperplanes contain the face.
    pub active: Vec<usize>,
    /// Indices into the owner's vertex list.
    pub vertices: Vec<usize>,
    pub dim: usize,
}

impl Face {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.vertices.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn meets(&self, other: &Face) -> bool {
        self.vertices.iter().any(|v| other.contains_vertex(*v))
    }
}

/// A bounded, full-dimensional polytope with no redundant halfspace.
///
/// Vertices are computed once at construction and kept in lexicographic
/// order. Halfspace order is preserved, and facet `i` is halfspace `i`.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    vertices: Vec<RationalPoint>,
    /// Sorted tight halfspaces per vertex.
    incidence: Vec<Vec<usize>>,
    /// Sorted vertex indices per facet.
    facet_vertices: Vec<Vec<usize>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.halfspaces == other.halfspaces
    }
}

impl Eq for Polytope {}

impl Polytope {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        for h in &halfspaces {
            if h.normal.dim() != dim {
                return Err(Error::DimensionError {
                    expected: dim,
                    got: h.normal.dim(),
                });
            }
        }
        if dim == 0 {
            if !halfspaces.is_empty() {
                return Err(Error::NotDelzant(
                    "a 0-dimensional polytope has no facets".into(),
                ));
            }
            return Ok(Polytope {
                dim,
                halfspaces,
                vertices: vec![RationalPoint::origin(0)],
                incidence: vec![Vec::new()],
                facet_vertices: Vec::new(),
            });
        }
        for (i, h) in halfspaces.iter().enumerate() {
            if let Some(j) = halfspaces[..i].iter().position(|g| g.normal == h.normal) {
                return Err(Error::NotDelzant(format!(
                    "halfspaces {j} and {i} share the normal {}",
                    h.normal
                )));
            }
        }
        check_bounded(dim, &halfspaces)?;

        let vertices = enumerate_vertices(dim, &halfspaces);
        if vertices.is_empty() {
            return Err(Error::NotDelzant("polytope is empty".into()));
        }
        if affine_rank(&vertices.iter().collect::<Vec<_>>()) != dim {
            return Err(Error::NotDelzant("polytope is not full-dimensional".into()));
        }
        let incidence: Vec<Vec<usize>> = vertices
            .iter()
            .map(|v| {
                (0..halfspaces.len())
                    .filter(|&i| halfspaces[i].is_tight(v))
                    .collect()
            })
            .collect();
        let facet_vertices: Vec<Vec<usize>> = (0..halfspaces.len())
            .map(|i| {
                (0..vertices.len())
                    .filter(|&v| incidence[v].contains(&i))
                    .collect()
            })
            .collect();
        for (i, fv) in facet_vertices.iter().enumerate() {
            let pts: Vec<&RationalPoint> = fv.iter().map(|&v| &vertices[v]).collect();
            if pts.is_empty() || affine_rank(&pts) + 1 != dim {
                return Err(Error::NotDelzant(format!(
                    "halfspace {i} ({}) does not support a facet",
                    halfspaces[i]
                )));
            }
        }
        Ok(Polytope {
            dim,
            halfspaces,
            vertices,
            incidence,
            facet_vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn num_facets(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn vertex_index(&self, p: &RationalPoint) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    /// Tight halfspaces at vertex `v`.
    pub fn incidence(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn facet_vertices(&self, f: usize) -> &[usize] {
        &self.facet_vertices[f]
    }

    pub fn facet_points(&self, f: usize) -> BTreeSet<&RationalPoint> {
        self.facet_vertices[f].iter().map(|&v| &self.vertices[v]).collect()
    }

    pub fn check_facet(&self, f: usize) -> Result<()> {
        if f < self.halfspaces.len() {
            Ok(())
        } else {
            Err(Error::FaceMismatch(format!(
                "facet index {f} out of range (polytope has {} facets)",
                self.halfspaces.len()
            )))
        }
    }

    /// Smallest face containing the given vertices.
    pub fn face_hull(&self, vertex_ids: &[usize]) -> Face {
        let active: Vec<usize> = (0..self.halfspaces.len())
            .filter(|i| vertex_ids.iter().all(|&v| self.incidence[v].contains(i)))
            .collect();
        self.face_of_active_unchecked(active)
    }

    fn face_of_active_unchecked(&self, active: Vec<usize>) -> Face {
        let vertices: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| active.iter().all(|i| self.incidence[v].contains(i)))
            .collect();
        let active: Vec<usize> = (0..self.halfspaces.len())
            .filter(|i| vertices.iter().all(|&v| self.incidence[v].contains(i)))
            .collect();
        let pts: Vec<&RationalPoint> = vertices.iter().map(|&v| &self.vertices[v]).collect();
        let dim = affine_rank(&pts);
        Face {
            active,
            vertices,
            dim,
        }
    }

    /// The face cut out by the given facets, or `None` if they do not meet.
    pub fn face_of(&self, facets: &[usize]) -> Option<Face> {
        let vertices: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| facets.iter().all(|i| self.incidence[v].contains(i)))
            .collect();
        if vertices.is_empty() {
            return None;
        }
        Some(self.face_hull(&vertices))
    }

    pub fn facet(&self, f: usize) -> Result<Face> {
        self.check_facet(f)?;
        Ok(self.face_hull(&self.facet_vertices[f]))
    }

    pub fn whole(&self) -> Face {
        Face {
            active: Vec::new(),
            vertices: (0..self.vertices.len()).collect(),
            dim: self.dim,
        }
    }

    pub fn vertex_face(&self, v: usize) -> Face {
        self.face_hull(&[v])
    }

    /// Intersection of two faces, `None` when empty.
    pub fn meet(&self, a: &Face, b: &Face) -> Option<Face> {
        let common: Vec<usize> = a
            .vertices
            .iter()
            .copied()
            .filter(|v| b.contains_vertex(*v))
            .collect();
        if common.is_empty() {
            None
        } else {
            Some(self.face_hull(&common))
        }
    }

    /// Every nonempty face, the polytope itself included, sorted by
    /// decreasing dimension and then by active set.
    pub fn faces(&self) -> Vec<Face> {
        let mut all: BTreeSet<Face> = BTreeSet::new();
        all.insert(self.whole());
        let mut frontier: Vec<Face> = (0..self.num_facets())
            .map(|f| self.face_hull(&self.facet_vertices[f]))
            .collect();
        let facets = frontier.clone();
        while let Some(face) = frontier.pop() {
            if !all.insert(face.clone()) {
                continue;
            }
            for facet in &facets {
                if let Some(m) = self.meet(&face, facet) {
                    if !all.contains(&m) {
                        frontier.push(m);
                    }
                }
            }
        }
        let mut out: Vec<Face> = all.into_iter().collect();
        out.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.active.cmp(&b.active)));
        out
    }

    /// Pairs of vertex indices spanning a 1-dimensional face.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertices.len() {
            for w in u + 1..self.vertices.len() {
                let f = self.face_hull(&[u, w]);
                if f.dim == 1 && f.vertices.len() == 2 {
                    out.push((u, w));
                }
            }
        }
        out
    }

    /// Vertices adjacent to `v` along 1-dimensional faces.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&w| w != v)
            .filter(|&w| {
                let f = self.face_hull(&[v, w]);
                f.dim == 1 && f.vertices.len() == 2
            })
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.incidence.iter().all(|inc| inc.len() == self.dim)
    }

    /// At every vertex the primitive edge directions form a lattice basis.
    pub fn is_smooth(&self) -> Result<bool> {
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        for v in 0..self.vertices.len() {
            let dirs = self.edge_directions(v)?;
            if lattice_determinant(&dirs)?.abs() != BigInt::one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_delzant(&self) -> bool {
        self.is_simple() && self.is_smooth().unwrap_or(false)
    }

    /// Primitive directions of the edges leaving vertex `v`.
    pub fn edge_directions(&self, v: usize) -> Result<Vec<LatticeVector>> {
        self.neighbors(v)
            .into_iter()
            .map(|w| self.vertices[w].sub(&self.vertices[v]).lattice_direction())
            .collect()
    }

    /// Facets whose closed facet intersects `face`.
    pub fn faces_meeting(&self, face: &Face) -> Result<BTreeSet<usize>> {
        self.check_face(face)?;
        Ok((0..self.num_facets())
            .filter(|&f| self.facet_vertices[f].iter().any(|v| face.contains_vertex(*v)))
            .collect())
    }

    pub fn check_face(&self, face: &Face) -> Result<()> {
        let foreign = face.vertices.is_empty()
            || face.vertices.iter().any(|&v| v >= self.vertices.len())
            || face.active.iter().any(|&i| i >= self.num_facets())
            || self.face_hull(&face.vertices) != *face;
        if foreign {
            return Err(Error::FaceMismatch(format!(
                "face with active set {:?} is not a face of this polytope",
                face.active
            )));
        }
        Ok(())
    }

    /// Halfspaces supporting the facets that meet facet `f`.
    pub fn halfspaces_near_facet(&self, f: usize) -> Result<BTreeSet<&HalfSpace>> {
        let facet = self.facet(f)?;
        Ok(self
            .faces_meeting(&facet)?
            .into_iter()
            .map(|i| &self.halfspaces[i])
            .collect())
    }

    /// Image under `x -> U x + t` with `U` unimodular. Halfspace order is kept.
    pub fn transform(&self, u: &[Vec<BigInt>], t: &[BigInt]) -> Result<Polytope> {
        let n = self.dim;
        if u.len() != n || t.len() != n {
            return Err(Error::DimensionError {
                expected: n,
                got: u.len().max(t.len()),
            });
        }
        let inv = unimodular_inverse(u)?;
        let hs = self
            .halfspaces
            .iter()
            .map(|h| {
                let normal: Vec<BigInt> = (0..n)
                    .map(|j| (0..n).map(|i| &inv[i][j] * &h.normal[i]).sum())
                    .collect();
                let normal = LatticeVector(normal);
                let shift: BigInt = normal.dot(&LatticeVector(t.to_vec()));
                HalfSpace::new(normal, &h.offset + rat_int(&shift))
            })
            .collect::<Result<Vec<_>>>()?;
        Polytope::new(n, hs)
    }

    pub fn translate(&self, t: &RationalPoint) -> Result<Polytope> {
        let hs = self
            .halfspaces
            .iter()
            .map(|h| HalfSpace::new(h.normal.clone(), &h.offset + h.normal.dot_point(t)))
            .collect::<Result<Vec<_>>>()?;
        Polytope::new(self.dim, hs)
    }

    /// Facet `f` as a polytope of dimension `dim - 1` in lattice coordinates
    /// of its affine span. The span lattice basis is in Hermite normal form
    /// and the result is translated until its lexicographically smallest
    /// vertex is the origin.
    pub fn facet_polytope(&self, f: usize) -> Result<Polytope> {
        self.check_facet(f)?;
        let h = &self.halfspaces[f];
        let (w, basis) = hyperplane_lattice(&h.normal)?;
        let c = &h.offset;
        let facet = self.facet(f)?;
        let mut hs = Vec::new();
        for g in 0..self.num_facets() {
            if g == f {
                continue;
            }
            let ridge = match self.meet(&facet, &self.facet(g)?) {
                Some(r) => r,
                None => continue,
            };
            if ridge.dim + 2 != self.dim {
                continue;
            }
            let gh = &self.halfspaces[g];
            let normal = LatticeVector(basis.iter().map(|b| b.dot(&gh.normal)).collect());
            let offset = &gh.offset - c * rat_int(&gh.normal.dot(&w));
            hs.push(HalfSpace::new(normal, offset)?);
        }
        let raw = Polytope::new(self.dim - 1, hs)?;
        let origin = raw.vertices[0].clone();
        let back = RationalPoint(origin.0.iter().map(|x| -x).collect());
        raw.translate(&back)
    }
}

/// Vertices by exhaustive solving of every `dim`-subset of hyperplanes.
fn enumerate_vertices(dim: usize, halfspaces: &[HalfSpace]) -> Vec<RationalPoint> {
    let mut found: BTreeSet<RationalPoint> = BTreeSet::new();
    for subset in Subsets::new(halfspaces.len(), dim) {
        let a: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| halfspaces[i].normal.iter().map(rat_int).collect())
            .collect();
        let b: Vec<Rational> = subset.iter().map(|&i| halfspaces[i].offset.clone()).collect();
        if let Some(x) = solve(&a, &b) {
            let p = RationalPoint(x);
            if halfspaces.iter().all(|h| h.contains(&p)) {
                found.insert(p);
            }
        }
    }
    found.into_iter().collect()
}

/// The recession cone `{d : <a_i, d> <= 0}` is trivial. Its extreme rays
/// would lie on `dim - 1` independent hyperplanes, so those are all tried.
fn check_bounded(dim: usize, halfspaces: &[HalfSpace]) -> Result<()> {
    let normals: Vec<Vec<Rational>> = halfspaces
        .iter()
        .map(|h| h.normal.iter().map(rat_int).collect())
        .collect();
    let full = Matrix::from_rows(dim, normals.clone())?;
    if full.rank() < dim {
        return Err(Error::NotDelzant("polytope is unbounded".into()));
    }
    for subset in Subsets::new(halfspaces.len(), dim - 1) {
        let m = Matrix::from_rows(dim, subset.iter().map(|&i| normals[i].clone()).collect())?;
        let kernel = m.kernel_basis();
        if kernel.len() != 1 {
            continue;
        }
        let d = &kernel[0];
        for sign in [1i64, -1] {
            let s = Rational::from_integer(sign.into());
            let escapes = normals.iter().all(|a| {
                let dot: Rational = a.iter().zip(d).map(|(x, y)| x * y).sum();
                !(dot * &s).is_positive()
            });
            if escapes {
                return Err(Error::NotDelzant("polytope is unbounded".into()));
            }
        }
    }
    Ok(())
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_rank(points: &[&RationalPoint]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let n = first.dim();
    let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| p.sub(first).0).collect();
    Matrix::from_rows(n, rows).map(|m| m.rank()).unwrap_or(0)
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

/// A polytope known to be Delzant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantPolytope(Polytope);

impl DelzantPolytope {
    pub fn new(p: Polytope) -> Result<Self> {
        if !p.is_simple() {
            return Err(Error::NotDelzant("polytope is not simple".into()));
        }
        if !p.is_smooth()? {
            return Err(Error::NotDelzant("polytope is not smooth".into()));
        }
        Ok(DelzantPolytope(p))
    }

    pub fn from_halfspaces(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        DelzantPolytope::new(Polytope::new(dim, halfspaces)?)
    }

    pub fn polytope(&self) -> &Polytope {
        &self.0
    }

    pub fn into_polytope(self) -> Polytope {
        self.0
    }
}

impl Deref for DelzantPolytope {
    type Target = Polytope;
    fn deref(&self) -> &Polytope {
        &self.0
    }
}

pub fn enumerate_polytope_vertices(p: &Polytope) -> &[RationalPoint] {
    p.vertices()
}

/// Local agreement of two polytopes along a shared facet: the facets are
/// equal as point sets and the facets meeting them are cut out by the same
/// halfspaces.
pub fn agree_near_facet(p1: &Polytope, f1: usize, p2: &Polytope, f2: usize) -> Result<bool> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionError {
            expected: p1.dim(),
            got: p2.dim(),
        });
    }
    p1.check_facet(f1)?;
    p2.check_facet(f2)?;
    if p1.facet_points(f1) != p2.facet_points(f2) {
        return Ok(false);
    }
    Ok(p1.halfspaces_near_facet(f1)? == p2.halfspaces_near_facet(f2)?)
}

/// Convenience constructor used throughout tests and the corpus generator.
pub fn polytope_from_i64(dim: usize, rows: &[(&[i64], i64)]) -> Result<Polytope> {
    let hs = rows
        .iter()
        .map(|(a, b)| HalfSpace::from_i64(a, *b))
        .collect::<Result<Vec<_>>>()?;
    Polytope::new(dim, hs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn triangle() -> Polytope {
        polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]).unwrap()
    }

    fn square() -> Polytope {
        polytope_from_i64(2, &[(&[0, -1], 0), (&[-1, 0], 0), (&[1, 0], 1), (&[0, 1], 1)]).unwrap()
    }

    fn trapezoid(top: i64, slant: i64) -> Polytope {
        polytope_from_i64(
            2,
            &[(&[-1, 0], 0), (&[0, -1], 0), (&[0, 1], top), (&[1, 1], slant)],
        )
        .unwrap()
    }

    fn pts(v: &[&[i64]]) -> Vec<RationalPoint> {
        let mut out: Vec<RationalPoint> = v.iter().map(|p| RationalPoint::from_i64(p)).collect();
        out.sort();
        out
    }

    #[test]
    fn vertices_of_triangle_interval_trapezoid() {
        assert_eq!(triangle().vertices(), pts(&[&[0, 0], &[1, 0], &[0, 1]]).as_slice());
        let interval = polytope_from_i64(1, &[(&[-1], 0), (&[1], 1)]).unwrap();
        assert_eq!(interval.vertices(), pts(&[&[0], &[1]]).as_slice());
        assert_eq!(
            trapezoid(1, 2).vertices(),
            pts(&[&[0, 0], &[2, 0], &[0, 1], &[1, 1]]).as_slice()
        );
    }

    #[test]
    fn unbounded_empty_redundant_rejected() {
        let open = polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0)]);
        assert!(matches!(open, Err(Error::NotDelzant(_))));
        let strip = polytope_from_i64(2, &[(&[-1, 0], 0), (&[1, 0], 1), (&[0, -1], 0), (&[1, 1], 3)]);
        // bounded: x in [0,1], y >= 0, x + y <= 3
        assert!(strip.is_ok());
        let wedge = polytope_from_i64(2, &[(&[1, -1], 0), (&[-1, -1], 0)]);
        assert!(matches!(wedge, Err(Error::NotDelzant(_))));
        let empty = polytope_from_i64(1, &[(&[-1], 0), (&[1], -1)]);
        assert!(matches!(empty, Err(Error::NotDelzant(_))));
        let redundant = polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1), (&[1, 0], 5)]);
        assert!(matches!(redundant, Err(Error::NotDelzant(_))));
        let flat = polytope_from_i64(1, &[(&[-1], 0), (&[1], 0)]);
        assert!(matches!(flat, Err(Error::NotDelzant(_))));
    }

    #[test]
    fn normals_are_made_primitive() {
        let h = HalfSpace::from_i64(&[2, 4], 3).unwrap();
        assert_eq!(h.normal(), &LatticeVector::from_i64(&[1, 2]));
        assert_eq!(h.offset(), &crate::arith::rat(3, 2));
    }

    #[test]
    fn simplicity() {
        assert!(square().is_simple());
        assert!(triangle().is_simple());
        // Square pyramid: base [0,2]^2 at z = 0, apex (1,1,1).
        let pyramid = polytope_from_i64(
            3,
            &[
                (&[0, 0, -1], 0),
                (&[0, -1, 1], 0),
                (&[-1, 0, 1], 0),
                (&[1, 0, 1], 2),
                (&[0, 1, 1], 2),
            ],
        )
        .unwrap();
        assert!(!pyramid.is_simple());
        let apex = pyramid.vertex_index(&RationalPoint::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(pyramid.incidence(apex).len(), 4);
        assert_eq!(pyramid.is_smooth(), Err(Error::NotSimple));
    }

    #[test]
    fn smoothness() {
        assert_eq!(triangle().is_smooth(), Ok(true));
        let tall = polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[2, 1], 2)]).unwrap();
        assert_eq!(tall.vertices(), pts(&[&[0, 0], &[1, 0], &[0, 2]]).as_slice());
        assert_eq!(tall.is_smooth(), Ok(false));
        let cube = polytope_from_i64(
            3,
            &[
                (&[-1, 0, 0], 0),
                (&[0, -1, 0], 0),
                (&[0, 0, -1], 0),
                (&[1, 0, 0], 1),
                (&[0, 1, 0], 1),
                (&[0, 0, 1], 1),
            ],
        )
        .unwrap();
        assert_eq!(cube.is_smooth(), Ok(true));
        assert!(trapezoid(1, 2).is_delzant());
    }

    #[test]
    fn faces_meeting_examples() {
        let sq = square();
        let bottom = sq.facet(0).unwrap();
        assert_eq!(sq.faces_meeting(&bottom).unwrap(), BTreeSet::from([0, 1, 2]));
        let t = triangle();
        let origin = t.vertex_face(t.vertex_index(&RationalPoint::from_i64(&[0, 0])).unwrap());
        assert_eq!(t.faces_meeting(&origin).unwrap(), BTreeSet::from([0, 1]));
        let tr = trapezoid(1, 2);
        let slant = tr.facet(3).unwrap();
        assert_eq!(tr.faces_meeting(&slant).unwrap(), BTreeSet::from([1, 2, 3]));

        let foreign = Face { active: vec![0, 2], vertices: vec![0], dim: 0 };
        assert!(matches!(sq.faces_meeting(&foreign), Err(Error::FaceMismatch(_))));
    }

    #[test]
    fn agreement_examples() {
        let t = triangle();
        assert_eq!(agree_near_facet(&t, 2, &t, 2), Ok(true));
        assert_eq!(agree_near_facet(&t, 1, &square(), 0), Ok(false));
        // Moving the far-away left facet keeps agreement.
        let a = trapezoid(1, 2);
        let b = polytope_from_i64(
            2,
            &[(&[-1, 0], 1), (&[0, -1], 0), (&[0, 1], 1), (&[1, 1], 2)],
        )
        .unwrap();
        assert_eq!(agree_near_facet(&a, 3, &b, 3), Ok(true));
        // Shares the slant segment (1,1)-(2,0) but is cut by y <= x instead of y <= 1 near it.
        let d = polytope_from_i64(2, &[(&[0, -1], 0), (&[-1, 1], 0), (&[1, 1], 2)]).unwrap();
        assert_eq!(d.facet_points(2), a.facet_points(3));
        assert_eq!(agree_near_facet(&a, 3, &d, 2), Ok(false));
        assert!(matches!(
            agree_near_facet(&t, 0, &polytope_from_i64(1, &[(&[-1], 0), (&[1], 1)]).unwrap(), 0),
            Err(Error::DimensionError { .. })
        ));
    }

    #[test]
    fn polygon_euler_relation() {
        for p in [triangle(), square(), trapezoid(1, 2)] {
            assert_eq!(p.vertices().len(), p.num_facets());
            assert_eq!(p.edges().len(), p.num_facets());
        }
    }

    #[test]
    fn square_face_lattice() {
        let faces = square().faces();
        assert_eq!(faces.len(), 1 + 4 + 4);
        assert_eq!(faces[0].dim, 2);
        assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 4);
    }

    #[test]
    fn facet_polytope_of_hypotenuse_is_unit_interval() {
        let b = triangle().facet_polytope(2).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.vertices(), pts(&[&[0], &[1]]).as_slice());
        let point = polytope_from_i64(1, &[(&[-1], 0), (&[1], 1)]).unwrap().facet_polytope(1).unwrap();
        assert_eq!(point.dim(), 0);
        assert_eq!(point.vertices().len(), 1);
    }

    #[test]
    fn transform_preserves_smoothness_and_facet_order() {
        let u = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let t = vec![int(3), int(-1)];
        let tr = trapezoid(1, 2);
        let img = tr.transform(&u, &t).unwrap();
        assert!(img.is_delzant());
        assert!(img.vertices().contains(&RationalPoint::from_i64(&[3, -1])));
        let bottom: BTreeSet<_> = img.facet_points(1).into_iter().cloned().collect();
        assert!(bottom.contains(&RationalPoint::from_i64(&[7, 1])));
    }
}
