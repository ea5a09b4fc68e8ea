//! GKM moment graphs of toric origami manifolds.
//!
//! Fixed points are polytope vertices off every fold facet. Edges are chains
//! of polytope 1-faces: a chain that reaches a fold facet crosses to the
//! neighbouring polytope and continues along the unique 1-face there that
//! leaves the fold. Such edges are called folded.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arith::{LatticeVector, RationalPoint};
use crate::error::{Error, Result};
use crate::template::{is_acyclic, is_coorientable, require_valid, OrigamiTemplate};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FixedPoint {
    /// Template vertex index.
    pub vertex: usize,
    /// Index into the vertex's polytope vertex list.
    pub polytope_vertex: usize,
    pub point: RationalPoint,
    /// Stable identifier `<template vertex id>@<point>`.
    pub id: String,
}

impl FixedPoint {
    /// A fixed point with no template behind it, for abstract moment graphs.
    pub fn synthetic(index: usize, dim: usize) -> Self {
        FixedPoint {
            vertex: index,
            polytope_vertex: 0,
            point: RationalPoint::origin(dim),
            id: format!("p{index}"),
        }
    }
}

/// One polytope 1-face traversed by a GKM edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainSegment {
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
}

impl ChainSegment {
    fn reversed(&self) -> ChainSegment {
        ChainSegment {
            vertex: self.vertex,
            from: self.to,
            to: self.from,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmEdge {
    /// Indices into the fixed point list.
    pub ends: [usize; 2],
    /// Primitive, lexicographically positive.
    pub weight: LatticeVector,
    pub chain: Vec<ChainSegment>,
}

impl GkmEdge {
    pub fn is_folded(&self) -> bool {
        self.chain.len() > 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentGraph {
    pub dim: usize,
    pub fixed_points: Vec<FixedPoint>,
    pub edges: Vec<GkmEdge>,
}

impl MomentGraph {
    /// An abstract moment graph on `num_points` synthetic fixed points.
    /// Weights are made primitive and lexicographically positive.
    pub fn from_weights(
        dim: usize,
        num_points: usize,
        edges: Vec<(usize, usize, LatticeVector)>,
    ) -> Result<Self> {
        let edges = edges
            .into_iter()
            .map(|(p, q, w)| {
                if p >= num_points || q >= num_points {
                    return Err(Error::ShapeError(format!(
                        "edge ({p}, {q}) on {num_points} fixed points"
                    )));
                }
                if w.dim() != dim {
                    return Err(Error::DimensionError {
                        expected: dim,
                        got: w.dim(),
                    });
                }
                Ok(GkmEdge {
                    ends: [p, q],
                    weight: crate::arith::primitive(&w)?.sign_normalized(),
                    chain: Vec::new(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentGraph {
            dim,
            fixed_points: (0..num_points).map(|i| FixedPoint::synthetic(i, dim)).collect(),
            edges,
        })
    }

    pub fn num_folded(&self) -> usize {
        self.edges.iter().filter(|e| e.is_folded()).count()
    }

    /// Edges incident to fixed point `p`.
    pub fn incident(&self, p: usize) -> Vec<&GkmEdge> {
        self.edges.iter().filter(|e| e.ends.contains(&p)).collect()
    }
}

/// Polytope vertices lying on no fold facet of their template vertex.
pub fn fixed_points(t: &OrigamiTemplate) -> Result<Vec<FixedPoint>> {
    if !is_coorientable(t) {
        return Err(Error::Unsupported(
            "fixed points of templates with loop edges".into(),
        ));
    }
    let mut out = Vec::new();
    for v in 0..t.num_vertices() {
        let p = t.polytope_of(v);
        let folds = t.fold_facets_at(v);
        for (i, point) in p.vertices().iter().enumerate() {
            if folds.iter().any(|&(_, f)| p.facet_vertices(f).contains(&i)) {
                continue;
            }
            out.push(FixedPoint {
                vertex: v,
                polytope_vertex: i,
                point: point.clone(),
                id: format!("{}@{}", t.vertices()[v].id, point),
            });
        }
    }
    Ok(out)
}

/// The GKM graph of an acyclic coörientable template.
pub fn moment_graph(t: &OrigamiTemplate) -> Result<MomentGraph> {
    require_valid(t)?;
    if !is_coorientable(t) {
        return Err(Error::Unsupported(
            "moment graph of a template with loop edges".into(),
        ));
    }
    let fps = fixed_points(t)?;
    if fps.is_empty() {
        return Err(Error::NoFixedPoints);
    }
    if !is_acyclic(t) {
        return Err(Error::Unsupported(
            "moment graph of a non-acyclic template".into(),
        ));
    }
    let lookup: BTreeMap<(usize, usize), usize> = fps
        .iter()
        .enumerate()
        .map(|(i, f)| ((f.vertex, f.polytope_vertex), i))
        .collect();
    let segment_budget: usize = (0..t.num_vertices())
        .map(|v| t.polytope_of(v).edges().len())
        .sum();

    // canonical chain -> (edge, times discovered)
    let mut found: BTreeMap<Vec<ChainSegment>, (GkmEdge, usize)> = BTreeMap::new();
    for (start, fp) in fps.iter().enumerate() {
        let p = t.polytope_of(fp.vertex);
        for next in p.neighbors(fp.polytope_vertex) {
            let (chain, weight, end) =
                trace(t, &lookup, fp.vertex, fp.polytope_vertex, next, segment_budget)?;
            let reversed: Vec<ChainSegment> = chain.iter().rev().map(ChainSegment::reversed).collect();
            let (key, ends) = if chain <= reversed {
                (chain, [start, end])
            } else {
                (reversed, [end, start])
            };
            found
                .entry(key.clone())
                .or_insert_with(|| {
                    (
                        GkmEdge {
                            ends,
                            weight,
                            chain: key,
                        },
                        0,
                    )
                })
                .1 += 1;
        }
    }
    let mut edges = Vec::with_capacity(found.len());
    for (_, (edge, count)) in found {
        if count != 2 {
            return Err(Error::InternalConsistency(format!(
                "GKM edge {:?} traced {count} times instead of once from each end",
                edge.ends
            )));
        }
        edges.push(edge);
    }
    edges.sort_by(|a, b| {
        let ka = (a.ends[0].min(a.ends[1]), a.ends[0].max(a.ends[1]));
        let kb = (b.ends[0].min(b.ends[1]), b.ends[0].max(b.ends[1]));
        ka.cmp(&kb)
            .then_with(|| b.weight.cmp(&a.weight))
            .then_with(|| a.chain.cmp(&b.chain))
    });
    Ok(MomentGraph {
        dim: t.dim(),
        fixed_points: fps,
        edges,
    })
}

/// Follows a chain from fixed point `(vertex, from)` through polytope vertex
/// `to` until another fixed point is reached.
fn trace(
    t: &OrigamiTemplate,
    lookup: &BTreeMap<(usize, usize), usize>,
    vertex: usize,
    from: usize,
    to: usize,
    budget: usize,
) -> Result<(Vec<ChainSegment>, LatticeVector, usize)> {
    let p = t.polytope_of(vertex);
    let weight = p.vertices()[to]
        .sub(&p.vertices()[from])
        .lattice_direction()?
        .sign_normalized();
    let mut chain = vec![ChainSegment { vertex, from, to }];
    let (mut v, mut at) = (vertex, to);
    loop {
        if let Some(&end) = lookup.get(&(v, at)) {
            return Ok((chain, weight, end));
        }
        if chain.len() > budget {
            return Err(Error::InternalConsistency("GKM chain does not terminate".into()));
        }
        let pv = t.polytope_of(v);
        let crossing: Vec<(usize, usize)> = t
            .fold_facets_at(v)
            .into_iter()
            .filter(|&(_, f)| pv.facet_vertices(f).contains(&at))
            .collect();
        let [(e, _)] = crossing[..] else {
            return Err(Error::InternalConsistency(format!(
                "chain vertex lies on {} fold facets",
                crossing.len()
            )));
        };
        let edge = &t.edges()[e];
        let u = edge.other(v);
        let fold = edge.facet_at(u);
        let pu = t.polytope_of(u);
        let point = &pv.vertices()[at];
        let x = pu.vertex_index(point).ok_or_else(|| {
            Error::InternalConsistency(format!("fold vertex {point} missing across the fold"))
        })?;
        let leaving: Vec<usize> = pu
            .neighbors(x)
            .into_iter()
            .filter(|y| !pu.facet_vertices(fold).contains(y))
            .collect();
        let [y] = leaving[..] else {
            return Err(Error::InternalConsistency(format!(
                "{} 1-faces leave the fold at {point}",
                leaving.len()
            )));
        };
        let dir = pu.vertices()[y].sub(point).lattice_direction()?.sign_normalized();
        if dir != weight {
            return Err(Error::InternalConsistency(format!(
                "chain direction changes from {weight} to {dir} across a fold"
            )));
        }
        chain.push(ChainSegment {
            vertex: u,
            from: x,
            to: y,
        });
        v = u;
        at = y;
    }
}

/// DOT rendering; folded edges are dashed and every edge is labeled with its weight.
pub fn export_dot(g: &MomentGraph) -> String {
    let mut s = String::from("graph moment_graph {\n");
    for (i, fp) in g.fixed_points.iter().enumerate() {
        let _ = writeln!(s, "  p{i} [label=\"{}\"];", fp.id);
    }
    for e in &g.edges {
        let style = if e.is_folded() { ", style=dashed" } else { "" };
        let _ = writeln!(
            s,
            "  p{} -- p{} [label=\"{}\"{style}];",
            e.ends[0], e.ends[1], e.weight
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::lattice_determinant;
    use crate::polytope::{polytope_from_i64, Polytope};
    use crate::template::TemplateBuilder;
    use num_traits::Signed;

    fn double(p: Polytope, f: usize) -> OrigamiTemplate {
        let mut b = TemplateBuilder::new(p.dim());
        let i = b.polytope("P", p);
        let u = b.vertex("N", i);
        let v = b.vertex("S", i);
        b.edge("fold", u, v, f, f);
        b.build().unwrap()
    }

    fn triangle() -> Polytope {
        polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]).unwrap()
    }

    fn trapezoid() -> Polytope {
        polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[0, 1], 1), (&[1, 1], 2)]).unwrap()
    }

    #[test]
    fn s4_graph() {
        let t = double(triangle(), 2);
        let fps = fixed_points(&t).unwrap();
        assert_eq!(fps.len(), 2);
        assert!(fps.iter().all(|f| f.point == RationalPoint::from_i64(&[0, 0])));
        let g = moment_graph(&t).unwrap();
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.num_folded(), 2);
        let weights: Vec<_> = g.edges.iter().map(|e| e.weight.clone()).collect();
        assert_eq!(weights, vec![LatticeVector::from_i64(&[1, 0]), LatticeVector::from_i64(&[0, 1])]);
        for e in &g.edges {
            assert_eq!(e.chain.len(), 2);
            let mut ends = e.ends;
            ends.sort();
            assert_eq!(ends, [0, 1]);
        }
    }

    #[test]
    fn hirzebruch_graph() {
        let g = moment_graph(&double(trapezoid(), 3)).unwrap();
        assert_eq!(g.fixed_points.len(), 4);
        assert_eq!(g.edges.len(), 4);
        assert_eq!(g.num_folded(), 2);
        for e in &g.edges {
            let expected = if e.is_folded() { [1, 0] } else { [0, 1] };
            assert_eq!(e.weight, LatticeVector::from_i64(&expected));
        }
    }

    #[test]
    fn single_polytope_gives_the_edge_graph() {
        let mut b = TemplateBuilder::new(2);
        let i = b.polytope("T", triangle());
        b.vertex("a", i);
        let g = moment_graph(&b.build().unwrap()).unwrap();
        assert_eq!(g.fixed_points.len(), 3);
        assert_eq!(g.edges.len(), 3);
        assert_eq!(g.num_folded(), 0);
        let mut weights: Vec<String> = g.edges.iter().map(|e| e.weight.to_string()).collect();
        weights.sort();
        assert_eq!(weights, vec!["(0,1)", "(1,-1)", "(1,0)"]);
    }

    #[test]
    fn weights_at_each_fixed_point_form_a_basis() {
        for t in [double(triangle(), 2), double(trapezoid(), 3)] {
            let g = moment_graph(&t).unwrap();
            for p in 0..g.fixed_points.len() {
                let inc = g.incident(p);
                assert_eq!(inc.len(), 2);
                let rows: Vec<_> = inc.iter().map(|e| e.weight.clone()).collect();
                assert!(lattice_determinant(&rows).unwrap().abs() == 1.into());
            }
        }
    }

    #[test]
    fn torus_has_no_fixed_points() {
        let mut b = TemplateBuilder::new(1);
        let i = b.polytope("I", polytope_from_i64(1, &[(&[-1], 0), (&[1], 1)]).unwrap());
        let u = b.vertex("u", i);
        let v = b.vertex("v", i);
        b.edge("top", u, v, 1, 1).edge("bottom", u, v, 0, 0);
        let torus = b.build().unwrap();
        assert!(fixed_points(&torus).unwrap().is_empty());
        assert_eq!(moment_graph(&torus), Err(Error::NoFixedPoints));
    }

    #[test]
    fn dot_output() {
        let g = moment_graph(&double(triangle(), 2)).unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot.matches("style=dashed").count(), 2);
        assert!(dot.contains("label=\"(1,0)\""));
        assert!(dot.contains("label=\"(0,1)\""));
        let empty = MomentGraph::from_weights(2, 0, vec![]).unwrap();
        assert_eq!(export_dot(&empty), "graph moment_graph {\n}\n");
        let h = export_dot(&moment_graph(&double(trapezoid(), 3)).unwrap());
        assert_eq!(h.matches(" -- ").count(), 4);
        assert_eq!(h.matches("style=dashed").count(), 2);
    }
}
