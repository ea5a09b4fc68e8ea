//! The orbit space `M/T`: polytopes glued along their fold facets.
//!
//! Faces are never stored as global point sets. Each face is a list of
//! pieces `(template vertex, face of that vertex's polytope)`. Distinct
//! polytopes may occupy the same region of `R^n` and are identified only
//! through fold facets. A face is a connected component of a
//! nonempty intersection of facets of `M/T`, or `M/T` itself.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::arith::RationalPoint;
use crate::error::{Error, Result};
use crate::polytope::Face;
use crate::template::{OrigamiTemplate, TemplateGraph, UnionFind};

/// A facet of `M/T`: a class of non-fold polytope facets identified across
/// fold facets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GluedFacet {
    /// Sorted `(template vertex, facet index)` pairs.
    pub members: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitFace {
    pub dim: usize,
    /// Sorted `(template vertex, polytope face)` pieces; no piece contains
    /// another piece at the same vertex.
    pub pieces: Vec<(usize, Face)>,
    /// Indices of the glued facets containing this face. Empty for the top.
    pub facets: Vec<usize>,
}

impl OrbitFace {
    pub fn is_top(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.pieces.iter().map(|(v, _)| *v).collect()
    }

    /// Every piece of `self` lies in a piece of `other` at the same vertex.
    pub fn is_contained_in(&self, other: &OrbitFace) -> bool {
        self.pieces.iter().all(|(v, a)| {
            other
                .pieces
                .iter()
                .any(|(w, b)| w == v && a.is_subface_of(b))
        })
    }
}

/// All faces of `M/T`, the top face first, then by decreasing dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePoset {
    pub facets: Vec<GluedFacet>,
    pub faces: Vec<OrbitFace>,
}

impl FacePoset {
    pub fn top(&self) -> &OrbitFace {
        &self.faces[0]
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &OrbitFace> {
        self.faces.iter().filter(move |f| f.dim == d)
    }

    /// Covering pairs `(smaller, larger)` of the inclusion order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.faces.len();
        let below = |i: usize, j: usize| i != j && self.faces[i].is_contained_in(&self.faces[j]);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Hasse diagram in DOT.
    pub fn to_dot(&self, t: &OrigamiTemplate) -> String {
        let mut s = String::from("digraph face_poset {\n  rankdir=BT;\n");
        for (i, f) in self.faces.iter().enumerate() {
            let label = if f.is_top() {
                format!("M/T (dim {})", f.dim)
            } else {
                let members: Vec<String> = f
                    .pieces
                    .iter()
                    .map(|(v, face)| format!("{}{:?}", t.vertices()[*v].id, face.active))
                    .collect();
                format!("dim {}: {}", f.dim, members.join(" "))
            };
            let _ = writeln!(s, "  f{i} [label=\"{label}\"];");
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  f{a} -> f{b};");
        }
        s.push_str("}\n");
        s
    }
}

fn points(t: &OrigamiTemplate, v: usize, vertex_ids: &[usize]) -> BTreeSet<RationalPoint> {
    let p = t.polytope_of(v);
    vertex_ids.iter().map(|&i| p.vertices()[i].clone()).collect()
}

/// Points of `face` (at vertex `v`) lying on fold facet `f` of `Ψ_V(v)`.
fn on_fold(t: &OrigamiTemplate, v: usize, face: &Face, f: usize) -> BTreeSet<RationalPoint> {
    let fold = t.polytope_of(v).facet_vertices(f);
    let common: Vec<usize> = face
        .vertices
        .iter()
        .copied()
        .filter(|x| fold.contains(x))
        .collect();
    points(t, v, &common)
}

/// Pieces at `u` and `w` touch through some edge joining `u` and `w`.
fn glued_through_fold(t: &OrigamiTemplate, u: usize, a: &Face, w: usize, b: &Face) -> bool {
    t.edges().iter().any(|e| {
        let sides: &[(usize, usize)] = if e.ends == [u, w] {
            &[(0, 1)]
        } else if e.ends == [w, u] {
            &[(1, 0)]
        } else {
            &[]
        };
        sides.iter().any(|&(su, sw)| {
            let pa = on_fold(t, u, a, e.facets[su]);
            let pb = on_fold(t, w, b, e.facets[sw]);
            !pa.is_disjoint(&pb)
        })
    })
}

/// Non-fold facets, joined whenever an edge's fold facet cuts them in the
/// same nonempty set.
pub fn glued_facets(t: &OrigamiTemplate) -> Vec<GluedFacet> {
    let mut items: Vec<(usize, usize)> = Vec::new();
    for v in 0..t.num_vertices() {
        let folds: BTreeSet<usize> = t.fold_facets_at(v).into_iter().map(|(_, f)| f).collect();
        for f in 0..t.polytope_of(v).num_facets() {
            if !folds.contains(&f) {
                items.push((v, f));
            }
        }
    }
    let index: BTreeMap<(usize, usize), usize> =
        items.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut uf = UnionFind::new(items.len());
    for e in t.edges() {
        let [u, w] = e.ends;
        let [fu, fw] = e.facets;
        let (pu, pw) = (t.polytope_of(u), t.polytope_of(w));
        for &(x, fx) in items.iter().filter(|(x, _)| *x == u) {
            let cut_u = on_fold(t, u, &pu.facet(fx).expect("facet"), fu);
            if cut_u.is_empty() {
                continue;
            }
            for &(y, fy) in items.iter().filter(|(y, _)| *y == w) {
                let cut_w = on_fold(t, w, &pw.facet(fy).expect("facet"), fw);
                if cut_u == cut_w {
                    uf.union(index[&(x, fx)], index[&(y, fy)]);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, &item) in items.iter().enumerate() {
        classes.entry(uf.find(i)).or_default().push(item);
    }
    let mut out: Vec<GluedFacet> = classes
        .into_values()
        .map(|mut members| {
            members.sort();
            GluedFacet { members }
        })
        .collect();
    out.sort();
    out
}

/// Drops duplicate pieces and pieces dominated by another piece at the
/// same vertex.
fn normalize(mut pieces: Vec<(usize, Face)>) -> Vec<(usize, Face)> {
    pieces.sort();
    pieces.dedup();
    let keep: Vec<bool> = (0..pieces.len())
        .map(|i| {
            !pieces.iter().enumerate().any(|(j, (w, b))| {
                j != i && *w == pieces[i].0 && pieces[i].1.is_subface_of(b) && pieces[i].1 != *b
            })
        })
        .collect();
    pieces
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

/// Connected components of a piece set.
fn components(t: &OrigamiTemplate, pieces: &[(usize, Face)]) -> Vec<Vec<(usize, Face)>> {
    let n = pieces.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let (u, a) = &pieces[i];
            let (w, b) = &pieces[j];
            let touch = (u == w && a.meets(b)) || glued_through_fold(t, *u, a, *w, b);
            if touch {
                uf.union(i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(usize, Face)>> = BTreeMap::new();
    for (i, p) in pieces.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(p.clone());
    }
    groups.into_values().collect()
}

fn intersect(t: &OrigamiTemplate, x: &[(usize, Face)], y: &[(usize, Face)]) -> Vec<(usize, Face)> {
    let mut out = Vec::new();
    for (v, a) in x {
        for (w, b) in y {
            if v == w {
                if let Some(m) = t.polytope_of(*v).meet(a, b) {
                    out.push((*v, m));
                }
            }
        }
    }
    normalize(out)
}

fn facet_pieces(t: &OrigamiTemplate, g: &GluedFacet) -> Vec<(usize, Face)> {
    normalize(
        g.members
            .iter()
            .map(|&(v, f)| (v, t.polytope_of(v).facet(f).expect("facet in range")))
            .collect(),
    )
}

/// The face poset of `M/T`, closed under intersection.
pub fn face_poset(t: &OrigamiTemplate) -> Result<FacePoset> {
    let facets = glued_facets(t);
    let facet_sets: Vec<Vec<(usize, Face)>> = facets.iter().map(|g| facet_pieces(t, g)).collect();

    let mut seen: BTreeSet<Vec<(usize, Face)>> = BTreeSet::new();
    let mut queue: Vec<Vec<(usize, Face)>> = Vec::new();
    for set in &facet_sets {
        for comp in components(t, set) {
            if seen.insert(comp.clone()) {
                queue.push(comp);
            }
        }
    }
    while let Some(x) = queue.pop() {
        for g in &facet_sets {
            let meet = intersect(t, &x, g);
            if meet.is_empty() {
                continue;
            }
            for comp in components(t, &meet) {
                if seen.insert(comp.clone()) {
                    queue.push(comp);
                }
            }
        }
    }

    let top_pieces: Vec<(usize, Face)> = (0..t.num_vertices())
        .map(|v| (v, t.polytope_of(v).whole()))
        .collect();
    let mut faces = vec![OrbitFace {
        dim: t.dim(),
        pieces: top_pieces,
        facets: Vec::new(),
    }];
    let mut rest: Vec<OrbitFace> = seen
        .into_iter()
        .map(|pieces| {
            let dim = pieces.iter().map(|(_, f)| f.dim).max().unwrap_or(0);
            let candidate = OrbitFace {
                dim,
                pieces,
                facets: Vec::new(),
            };
            let containing: Vec<usize> = facet_sets
                .iter()
                .enumerate()
                .filter(|(_, set)| {
                    candidate
                        .pieces
                        .iter()
                        .all(|(v, a)| set.iter().any(|(w, b)| w == v && a.is_subface_of(b)))
                })
                .map(|(k, _)| k)
                .collect();
            OrbitFace {
                facets: containing,
                ..candidate
            }
        })
        .collect();
    rest.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.pieces.cmp(&b.pieces)));
    faces.extend(rest);

    let poset = FacePoset { facets, faces };
    for f in &poset.faces {
        let g = face_subgraph(t, f)?;
        if !g.is_connected() {
            return Err(Error::InternalConsistency(format!(
                "face of dimension {} has a disconnected subgraph",
                f.dim
            )));
        }
    }
    Ok(poset)
}

/// Subgraph of the template graph on the vertices whose polytope meets the
/// face, with the edges whose fold facet meets it.
pub fn face_subgraph(t: &OrigamiTemplate, face: &OrbitFace) -> Result<TemplateGraph> {
    for (v, piece) in &face.pieces {
        if *v >= t.num_vertices() {
            return Err(Error::FaceMismatch(format!("vertex index {v} out of range")));
        }
        t.polytope_of(*v).check_face(piece)?;
    }
    let verts: Vec<usize> = face.vertices().into_iter().collect();
    let local: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for e in t.edges() {
        let [u, w] = e.ends;
        let (Some(&iu), Some(&iw)) = (local.get(&u), local.get(&w)) else {
            continue;
        };
        let meets = face.pieces.iter().filter(|(v, _)| *v == u).any(|(_, a)| {
            let pa = on_fold(t, u, a, e.facets[0]);
            face.pieces
                .iter()
                .filter(|(v, _)| *v == w)
                .any(|(_, b)| !pa.is_disjoint(&on_fold(t, w, b, e.facets[1])))
        });
        if meets {
            edges.push((e.id.clone(), [iu, iw]));
        }
    }
    Ok(TemplateGraph {
        vertices: verts.iter().map(|&v| t.vertices()[v].id.clone()).collect(),
        edges,
    })
}

/// Every face subgraph, the top included, is a tree.
pub fn is_face_acyclic(t: &OrigamiTemplate) -> Result<bool> {
    let poset = face_poset(t)?;
    for f in &poset.faces {
        if !face_subgraph(t, f)?.is_tree() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{polytope_from_i64, Polytope};
    use crate::template::TemplateBuilder;

    fn triangle() -> Polytope {
        polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]).unwrap()
    }

    fn trapezoid() -> Polytope {
        polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[0, 1], 1), (&[1, 1], 2)]).unwrap()
    }

    fn double(p: Polytope, f: usize) -> OrigamiTemplate {
        let mut b = TemplateBuilder::new(p.dim());
        let i = b.polytope("P", p);
        let u = b.vertex("a", i);
        let v = b.vertex("b", i);
        b.edge("fold", u, v, f, f);
        b.build().unwrap()
    }

    fn single(p: Polytope) -> OrigamiTemplate {
        let mut b = TemplateBuilder::new(p.dim());
        let i = b.polytope("P", p);
        b.vertex("a", i);
        b.build().unwrap()
    }

    fn torus() -> OrigamiTemplate {
        let mut b = TemplateBuilder::new(1);
        let i = b.polytope("I", polytope_from_i64(1, &[(&[-1], 0), (&[1], 1)]).unwrap());
        let u = b.vertex("u", i);
        let v = b.vertex("v", i);
        b.edge("top", u, v, 1, 1).edge("bottom", u, v, 0, 0);
        b.build().unwrap()
    }

    #[test]
    fn glued_facets_examples() {
        let s4 = glued_facets(&double(triangle(), 2));
        assert_eq!(
            s4,
            vec![
                GluedFacet { members: vec![(0, 0), (1, 0)] },
                GluedFacet { members: vec![(0, 1), (1, 1)] },
            ]
        );
        let sq = polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        assert_eq!(glued_facets(&single(sq)).len(), 4);
        let hirz = glued_facets(&double(trapezoid(), 3));
        assert_eq!(
            hirz,
            vec![
                GluedFacet { members: vec![(0, 0)] },
                GluedFacet { members: vec![(0, 1), (1, 1)] },
                GluedFacet { members: vec![(0, 2), (1, 2)] },
                GluedFacet { members: vec![(1, 0)] },
            ]
        );
    }

    #[test]
    fn square_poset_is_its_face_lattice() {
        let sq = polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        let poset = face_poset(&single(sq.clone())).unwrap();
        let mut ours: Vec<Face> = poset.faces.iter().map(|f| f.pieces[0].1.clone()).collect();
        let mut theirs = sq.faces();
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs);
    }

    #[test]
    fn s4_poset() {
        let t = double(triangle(), 2);
        let poset = face_poset(&t).unwrap();
        let dims: Vec<usize> = poset.faces.iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![2, 1, 1, 0, 0]);
        // The two legs meet at the two right-angle corners, one per triangle.
        for f in poset.faces_of_dim(0) {
            assert_eq!(f.pieces.len(), 1);
            assert_eq!(f.facets, vec![0, 1]);
        }
        assert_eq!(poset.covers().len(), 2 + 4);
    }

    #[test]
    fn torus_poset_has_only_the_top() {
        let poset = face_poset(&torus()).unwrap();
        assert_eq!(poset.faces.len(), 1);
        assert!(poset.top().is_top());
    }

    #[test]
    fn face_subgraphs() {
        let t = double(triangle(), 2);
        let poset = face_poset(&t).unwrap();
        assert_eq!(face_subgraph(&t, poset.top()).unwrap(), t.graph());
        let leg = face_subgraph(&t, &poset.faces[1]).unwrap();
        assert_eq!(leg.num_vertices(), 2);
        assert_eq!(leg.num_edges(), 1);

        let h = double(trapezoid(), 3);
        let hp = face_poset(&h).unwrap();
        let left = hp
            .faces
            .iter()
            .find(|f| f.pieces.len() == 1 && f.pieces[0].0 == 0 && f.dim == 1)
            .unwrap();
        let g = face_subgraph(&h, left).unwrap();
        assert_eq!(g.vertices, vec!["a".to_string()]);
        assert_eq!(g.num_edges(), 0);

        let foreign = OrbitFace {
            dim: 0,
            pieces: vec![(5, t.polytope_of(0).vertex_face(0))],
            facets: vec![0],
        };
        assert!(matches!(face_subgraph(&t, &foreign), Err(Error::FaceMismatch(_))));
    }

    #[test]
    fn face_acyclicity() {
        assert_eq!(is_face_acyclic(&double(triangle(), 2)), Ok(true));
        assert_eq!(is_face_acyclic(&torus()), Ok(false));
        assert_eq!(is_face_acyclic(&double(trapezoid(), 3)), Ok(true));
    }

    #[test]
    fn dot_lists_every_face() {
        let t = double(triangle(), 2);
        let dot = face_poset(&t).unwrap().to_dot(&t);
        assert!(dot.starts_with("digraph face_poset {"));
        assert_eq!(dot.matches("[label=").count(), 5);
    }
}
