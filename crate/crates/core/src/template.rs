//! Origami templates: a graph with a Delzant polytope on every vertex and a
//! shared fold facet on every edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::polytope::{agree_near_facet, DelzantPolytope, Polytope};

/// A multigraph with string identifiers. Loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateGraph {
    pub vertices: Vec<String>,
    /// `(id, [end, end])` with ends indexing `vertices`.
    pub edges: Vec<(String, [usize; 2])>,
}

impl TemplateGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Loops count twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|(_, [a, b])| (*a == v) as usize + (*b == v) as usize)
            .sum()
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|(_, [a, b])| a == b)
    }

    /// Connected components as sorted vertex lists, in order of smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for (_, [a, b]) in &self.edges {
            uf.union(*a, *b);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertices.len() {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// No cycle of any length; loops and parallel edges are cycles.
    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.vertices.len());
        self.edges.iter().all(|(_, [a, b])| uf.union(*a, *b))
    }

    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty() && self.is_forest() && self.is_connected()
    }

    /// Two-colorable. A loop is an odd cycle.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertices.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (_, [a, b]) in &self.edges {
            adj[*a].push(*b);
            adj[*b].push(*a);
        }
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for &w in &adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false when `a` and `b` were already joined. Smaller root wins.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeDef {
    pub id: String,
    pub polytope: Polytope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateVertex {
    pub id: String,
    /// Index into the template's polytope definitions.
    pub polytope: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateEdge {
    pub id: String,
    pub ends: [usize; 2],
    /// Facet index of the fold facet in each end's polytope.
    pub facets: [usize; 2],
}

impl TemplateEdge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// The end opposite to `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    /// Facet index on the side of `v`.
    pub fn facet_at(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.facets[0]
        } else {
            self.facets[1]
        }
    }
}

/// An origami template. Structural well-formedness (resolving references,
/// facet ranges, connectivity) is checked on construction; the geometric
/// conditions are checked by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrigamiTemplate {
    dim: usize,
    polytopes: Vec<PolytopeDef>,
    vertices: Vec<TemplateVertex>,
    edges: Vec<TemplateEdge>,
}

impl OrigamiTemplate {
    pub fn new(
        dim: usize,
        polytopes: Vec<PolytopeDef>,
        vertices: Vec<TemplateVertex>,
        edges: Vec<TemplateEdge>,
    ) -> Result<Self> {
        let malformed = |m: String| Err(Error::MalformedTemplate(m));
        check_unique("polytope", polytopes.iter().map(|p| p.id.as_str()))?;
        check_unique("vertex", vertices.iter().map(|v| v.id.as_str()))?;
        check_unique("edge", edges.iter().map(|e| e.id.as_str()))?;
        if vertices.is_empty() {
            return malformed("template graph has no vertices".into());
        }
        for p in &polytopes {
            if p.polytope.dim() != dim {
                return malformed(format!(
                    "polytope `{}` has dimension {}, template has dimension {dim}",
                    p.id,
                    p.polytope.dim()
                ));
            }
        }
        for v in &vertices {
            if v.polytope >= polytopes.len() {
                return malformed(format!("vertex `{}` references a missing polytope", v.id));
            }
        }
        for e in &edges {
            for side in 0..2 {
                let Some(v) = vertices.get(e.ends[side]) else {
                    return malformed(format!("edge `{}` references a missing vertex", e.id));
                };
                let p = &polytopes[v.polytope].polytope;
                if e.facets[side] >= p.num_facets() {
                    return malformed(format!(
                        "edge `{}`: facet index {} out of range for polytope `{}` ({} facets)",
                        e.id,
                        e.facets[side],
                        polytopes[v.polytope].id,
                        p.num_facets()
                    ));
                }
            }
        }
        let t = OrigamiTemplate {
            dim,
            polytopes,
            vertices,
            edges,
        };
        let comps = t.graph().components();
        if comps.len() > 1 {
            let hint: Vec<String> = comps
                .iter()
                .map(|c| {
                    let ids: Vec<&str> = c.iter().map(|&v| t.vertices[v].id.as_str()).collect();
                    format!("{{{}}}", ids.join(", "))
                })
                .collect();
            return malformed(format!(
                "template graph is disconnected: components {}",
                hint.join(" ")
            ));
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn polytopes(&self) -> &[PolytopeDef] {
        &self.polytopes
    }

    pub fn vertices(&self) -> &[TemplateVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[TemplateEdge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// `Ψ_V(v)`.
    pub fn polytope_of(&self, v: usize) -> &Polytope {
        &self.polytopes[self.vertices[v].polytope].polytope
    }

    pub fn graph(&self) -> TemplateGraph {
        TemplateGraph {
            vertices: self.vertices.iter().map(|v| v.id.clone()).collect(),
            edges: self.edges.iter().map(|e| (e.id.clone(), e.ends)).collect(),
        }
    }

    /// Edges incident to `v`; a loop is listed once.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].ends.contains(&v))
            .collect()
    }

    /// Fold facets of `Ψ_V(v)` paired with their edges.
    pub fn fold_facets_at(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e in self.incident_edges(v) {
            let edge = &self.edges[e];
            out.push((e, edge.facet_at(v)));
            if edge.is_loop() && edge.facets[1] != edge.facets[0] {
                out.push((e, edge.facets[1]));
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph().degree(v)
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Applies `x -> U x + t` to every polytope. Facet indices are preserved.
    pub fn transform(&self, u: &[Vec<num_bigint::BigInt>], t: &[num_bigint::BigInt]) -> Result<Self> {
        let polytopes = self
            .polytopes
            .iter()
            .map(|p| {
                Ok(PolytopeDef {
                    id: p.id.clone(),
                    polytope: p.polytope.transform(u, t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        OrigamiTemplate::new(self.dim, polytopes, self.vertices.clone(), self.edges.clone())
    }

    /// Renames vertices and edges; the maps must be injective.
    pub fn relabel(
        &self,
        vertex_id: impl Fn(&str) -> String,
        edge_id: impl Fn(&str) -> String,
    ) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| TemplateVertex {
                id: vertex_id(&v.id),
                polytope: v.polytope,
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| TemplateEdge {
                id: edge_id(&e.id),
                ..e.clone()
            })
            .collect();
        OrigamiTemplate::new(self.dim, self.polytopes.clone(), vertices, edges)
    }
}

fn check_unique<'a>(what: &str, ids: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::MalformedTemplate(format!("duplicate {what} id `{id}`")));
        }
    }
    Ok(())
}

/// Incremental construction of templates in code.
#[derive(Debug, Clone, Default)]
pub struct TemplateBuilder {
    dim: usize,
    polytopes: Vec<PolytopeDef>,
    vertices: Vec<TemplateVertex>,
    edges: Vec<TemplateEdge>,
}

impl TemplateBuilder {
    pub fn new(dim: usize) -> Self {
        TemplateBuilder {
            dim,
            ..Default::default()
        }
    }

    /// Registers a polytope, reusing an existing definition when equal.
    pub fn polytope(&mut self, id: &str, p: Polytope) -> usize {
        if let Some(i) = self.polytopes.iter().position(|d| d.polytope == p) {
            return i;
        }
        self.polytopes.push(PolytopeDef {
            id: id.to_string(),
            polytope: p,
        });
        self.polytopes.len() - 1
    }

    pub fn vertex(&mut self, id: &str, polytope: usize) -> usize {
        self.vertices.push(TemplateVertex {
            id: id.to_string(),
            polytope,
        });
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, id: &str, u: usize, v: usize, fu: usize, fv: usize) -> &mut Self {
        self.edges.push(TemplateEdge {
            id: id.to_string(),
            ends: [u, v],
            facets: [fu, fv],
        });
        self
    }

    pub fn build(self) -> Result<OrigamiTemplate> {
        OrigamiTemplate::new(self.dim, self.polytopes, self.vertices, self.edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeCheck {
    pub id: String,
    pub delzant: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCheck {
    pub id: String,
    pub condition_one: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCheck {
    pub id: String,
    pub condition_two: bool,
    pub detail: Option<String>,
}

/// Itemized outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub polytopes: Vec<PolytopeCheck>,
    pub edges: Vec<EdgeCheck>,
    pub vertices: Vec<VertexCheck>,
    pub acyclic: bool,
    pub coorientable: bool,
    /// `None` for non-coörientable templates.
    pub orientable: Option<bool>,
}

impl ValidationReport {
    /// The first failing check as an error, or `Ok` when valid.
    pub fn into_result(&self) -> Result<()> {
        if let Some(p) = self.polytopes.iter().find(|p| !p.delzant) {
            return Err(Error::NotDelzant(format!(
                "polytope `{}`: {}",
                p.id,
                p.detail.as_deref().unwrap_or("not Delzant")
            )));
        }
        if let Some(e) = self.edges.iter().find(|e| !e.condition_one) {
            return Err(Error::ConditionOneViolation(format!(
                "edge `{}`: {}",
                e.id,
                e.detail.as_deref().unwrap_or("")
            )));
        }
        if let Some(v) = self.vertices.iter().find(|v| !v.condition_two) {
            return Err(Error::ConditionTwoViolation(format!(
                "vertex `{}`: {}",
                v.id,
                v.detail.as_deref().unwrap_or("")
            )));
        }
        Ok(())
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", if self.valid { "valid" } else { "invalid" })?;
        for p in &self.polytopes {
            write!(f, "polytope {}: delzant {}", p.id, mark(p.delzant))?;
            match &p.detail {
                Some(d) => writeln!(f, " ({d})")?,
                None => writeln!(f)?,
            }
        }
        for e in &self.edges {
            write!(f, "edge {}: condition (1) {}", e.id, mark(e.condition_one))?;
            match &e.detail {
                Some(d) => writeln!(f, " ({d})")?,
                None => writeln!(f)?,
            }
        }
        for v in &self.vertices {
            write!(f, "vertex {}: condition (2) {}", v.id, mark(v.condition_two))?;
            match &v.detail {
                Some(d) => writeln!(f, " ({d})")?,
                None => writeln!(f)?,
            }
        }
        writeln!(f, "acyclic: {}", self.acyclic)?;
        writeln!(f, "coorientable: {}", self.coorientable)?;
        match self.orientable {
            Some(o) => writeln!(f, "orientable: {o}"),
            None => writeln!(f, "orientable: unsupported (loop edge)"),
        }
    }
}

/// Checks every polytope for the Delzant property, every edge for
/// condition (1) and every vertex for condition (2).
pub fn validate(t: &OrigamiTemplate) -> ValidationReport {
    let polytopes: Vec<PolytopeCheck> = t
        .polytopes
        .iter()
        .map(|d| {
            let p = &d.polytope;
            let (delzant, detail) = if !p.is_simple() {
                (false, Some("not simple".to_string()))
            } else if !p.is_smooth().unwrap_or(false) {
                (false, Some("not smooth".to_string()))
            } else {
                (true, None)
            };
            PolytopeCheck {
                id: d.id.clone(),
                delzant,
                detail,
            }
        })
        .collect();

    let edges: Vec<EdgeCheck> = t
        .edges
        .iter()
        .map(|e| {
            let (pu, pv) = (t.polytope_of(e.ends[0]), t.polytope_of(e.ends[1]));
            let (fu, fv) = (e.facets[0], e.facets[1]);
            let (ok, detail) = if pu.facet_points(fu) != pv.facet_points(fv) {
                (false, Some(format!("facets {fu} and {fv} are not equal as sets")))
            } else if !agree_near_facet(pu, fu, pv, fv).unwrap_or(false) {
                (false, Some("polytopes do not agree near the fold facet".to_string()))
            } else {
                (true, None)
            };
            EdgeCheck {
                id: e.id.clone(),
                condition_one: ok,
                detail,
            }
        })
        .collect();

    let vertices: Vec<VertexCheck> = (0..t.vertices.len())
        .map(|v| {
            let p = t.polytope_of(v);
            let folds: Vec<(usize, usize)> = t
                .incident_edges(v)
                .into_iter()
                .map(|e| (e, t.edges[e].facet_at(v)))
                .collect();
            let mut detail = None;
            'outer: for (i, &(e, fe)) in folds.iter().enumerate() {
                for &(g, fg) in &folds[i + 1..] {
                    let meet = p
                        .facet_vertices(fe)
                        .iter()
                        .any(|x| p.facet_vertices(fg).contains(x));
                    if meet {
                        detail = Some(format!(
                            "fold facets of edges `{}` and `{}` intersect",
                            t.edges[e].id, t.edges[g].id
                        ));
                        break 'outer;
                    }
                }
            }
            VertexCheck {
                id: t.vertices[v].id.clone(),
                condition_two: detail.is_none(),
                detail,
            }
        })
        .collect();

    let valid = polytopes.iter().all(|p| p.delzant)
        && edges.iter().all(|e| e.condition_one)
        && vertices.iter().all(|v| v.condition_two);
    let coorientable = is_coorientable(t);
    ValidationReport {
        valid,
        polytopes,
        edges,
        vertices,
        acyclic: is_acyclic(t),
        coorientable,
        orientable: coorientable.then(|| t.graph().is_bipartite()),
    }
}

/// Validates and converts the first failure into an error.
pub fn require_valid(t: &OrigamiTemplate) -> Result<()> {
    validate(t).into_result()
}

/// The template graph is a tree.
pub fn is_acyclic(t: &OrigamiTemplate) -> bool {
    t.graph().is_tree()
}

/// No loop edges.
pub fn is_coorientable(t: &OrigamiTemplate) -> bool {
    !t.graph().has_loop()
}

/// No odd cycles. Only defined for coörientable templates.
pub fn is_orientable(t: &OrigamiTemplate) -> Result<bool> {
    if !is_coorientable(t) {
        return Err(Error::Unsupported(
            "orientability of templates with loop edges".into(),
        ));
    }
    Ok(t.graph().is_bipartite())
}

/// The pieces produced by cutting a template along the fold facet of a leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    /// The leaf polytope.
    pub c_minus: DelzantPolytope,
    /// The template with the leaf and its edge removed.
    pub c_plus: OrigamiTemplate,
    /// The fold facet as a polytope of one dimension less.
    pub b: DelzantPolytope,
    pub leaf_id: String,
    pub leaf_polytope_id: String,
    pub edge_id: String,
    /// Vertex of `c_plus` the leaf was attached to.
    pub anchor_id: String,
    pub anchor_facet: usize,
    pub leaf_facet: usize,
    /// Whether the leaf was the first end of the removed edge.
    pub leaf_first: bool,
}

impl CutResult {
    /// Glues the leaf back with its original identifiers.
    pub fn reglue(&self) -> Result<OrigamiTemplate> {
        blow_up(
            &self.c_plus,
            &self.c_minus,
            &self.anchor_id,
            self.anchor_facet,
            self.leaf_facet,
            Ids {
                vertex: self.leaf_id.clone(),
                edge: self.edge_id.clone(),
                polytope: self.leaf_polytope_id.clone(),
                leaf_first: self.leaf_first,
            },
        )
    }
}

/// Removes leaf vertex `leaf` and its edge.
pub fn cut_leaf(t: &OrigamiTemplate, leaf: &str) -> Result<CutResult> {
    require_valid(t)?;
    if !is_acyclic(t) {
        return Err(Error::Unsupported("cutting a non-acyclic template".into()));
    }
    let v = t
        .vertex_index(leaf)
        .ok_or_else(|| Error::MalformedTemplate(format!("no vertex `{leaf}`")))?;
    let degree = t.degree(v);
    if degree != 1 {
        return Err(Error::NotALeaf {
            vertex: leaf.to_string(),
            degree,
        });
    }
    let e = t.incident_edges(v)[0];
    let edge = &t.edges[e];
    let anchor = edge.other(v);
    let leaf_facet = edge.facet_at(v);
    let anchor_facet = edge.facet_at(anchor);
    let leaf_poly = t.polytope_of(v).clone();

    // Drop the leaf, its edge, and its polytope definition if nothing else uses it.
    let keep_poly: Vec<usize> = (0..t.polytopes.len())
        .filter(|&p| {
            t.vertices
                .iter()
                .enumerate()
                .any(|(u, tv)| u != v && tv.polytope == p)
        })
        .collect();
    let poly_map: BTreeMap<usize, usize> =
        keep_poly.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let vert_map = |u: usize| if u > v { u - 1 } else { u };
    let polytopes = keep_poly.iter().map(|&p| t.polytopes[p].clone()).collect();
    let vertices = t
        .vertices
        .iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, tv)| TemplateVertex {
            id: tv.id.clone(),
            polytope: poly_map[&tv.polytope],
        })
        .collect();
    let edges = t
        .edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != e)
        .map(|(_, te)| TemplateEdge {
            id: te.id.clone(),
            ends: [vert_map(te.ends[0]), vert_map(te.ends[1])],
            facets: te.facets,
        })
        .collect();
    let c_plus = OrigamiTemplate::new(t.dim, polytopes, vertices, edges)?;
    let b = DelzantPolytope::new(leaf_poly.facet_polytope(leaf_facet)?)?;
    Ok(CutResult {
        c_minus: DelzantPolytope::new(leaf_poly)?,
        c_plus,
        b,
        leaf_id: leaf.to_string(),
        leaf_polytope_id: t.polytopes[t.vertices[v].polytope].id.clone(),
        edge_id: edge.id.clone(),
        anchor_id: t.vertices[anchor].id.clone(),
        anchor_facet,
        leaf_facet,
        leaf_first: edge.ends[0] == v,
    })
}

struct Ids {
    vertex: String,
    edge: String,
    polytope: String,
    leaf_first: bool,
}

fn fresh_id(prefix: &str, used: impl Fn(&str) -> bool) -> String {
    (0..)
        .map(|k| format!("{prefix}{k}"))
        .find(|id| !used(id))
        .unwrap()
}

/// Attaches polytope `p` to vertex `v` of `t` along facet `f_t` of `Ψ_V(v)`
/// and facet `f_p` of `p`. New identifiers are generated.
pub fn radial_blow_up(
    t: &OrigamiTemplate,
    p: &DelzantPolytope,
    v: &str,
    f_t: usize,
    f_p: usize,
) -> Result<OrigamiTemplate> {
    let ids = Ids {
        vertex: fresh_id("v", |id| t.vertex_index(id).is_some()),
        edge: fresh_id("e", |id| t.edges.iter().any(|e| e.id == id)),
        polytope: fresh_id("P", |id| t.polytopes.iter().any(|d| d.id == id)),
        leaf_first: false,
    };
    blow_up(t, p, v, f_t, f_p, ids)
}

fn blow_up(
    t: &OrigamiTemplate,
    p: &DelzantPolytope,
    v: &str,
    f_t: usize,
    f_p: usize,
    ids: Ids,
) -> Result<OrigamiTemplate> {
    let anchor = t
        .vertex_index(v)
        .ok_or_else(|| Error::MalformedTemplate(format!("no vertex `{v}`")))?;
    let host = t.polytope_of(anchor);
    host.check_facet(f_t)?;
    p.check_facet(f_p)?;
    if !agree_near_facet(host, f_t, p, f_p)? {
        return Err(Error::ConditionOneViolation(format!(
            "facet {f_t} of `{v}` and facet {f_p} of the new polytope do not agree"
        )));
    }
    for (e, f) in t.fold_facets_at(anchor) {
        if host.facet_vertices(f).iter().any(|x| host.facet_vertices(f_t).contains(x)) {
            return Err(Error::ConditionTwoViolation(format!(
                "facet {f_t} of `{v}` meets the fold facet of edge `{}`",
                t.edges[e].id
            )));
        }
    }
    let mut polytopes = t.polytopes.clone();
    let pidx = match polytopes.iter().position(|d| d.polytope == **p) {
        Some(i) => i,
        None => {
            polytopes.push(PolytopeDef {
                id: ids.polytope,
                polytope: p.polytope().clone(),
            });
            polytopes.len() - 1
        }
    };
    let mut vertices = t.vertices.clone();
    vertices.push(TemplateVertex {
        id: ids.vertex,
        polytope: pidx,
    });
    let new = vertices.len() - 1;
    let mut edges = t.edges.clone();
    edges.push(if ids.leaf_first {
        TemplateEdge {
            id: ids.edge,
            ends: [new, anchor],
            facets: [f_p, f_t],
        }
    } else {
        TemplateEdge {
            id: ids.edge,
            ends: [anchor, new],
            facets: [f_t, f_p],
        }
    });
    let out = OrigamiTemplate::new(t.dim, polytopes, vertices, edges)?;
    require_valid(&out)?;
    Ok(out)
}

/// Graph isomorphism respecting `Ψ_V` (equal polytopes) and `Ψ_E` (facet
/// indices at each end). Identifiers are ignored.
pub fn is_isomorphic(a: &OrigamiTemplate, b: &OrigamiTemplate) -> bool {
    if a.dim != b.dim || a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() {
        return false;
    }
    let n = a.num_vertices();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let target = edge_signature(b, &|x| x);
    extend_isomorphism(a, b, 0, &mut map, &mut used, &target)
}

type EdgeSig = Vec<(usize, usize, usize, usize)>;

fn edge_signature(t: &OrigamiTemplate, f: &dyn Fn(usize) -> usize) -> EdgeSig {
    let mut sig: EdgeSig = t
        .edges
        .iter()
        .map(|e| {
            let (u, v) = (f(e.ends[0]), f(e.ends[1]));
            if (u, e.facets[0]) <= (v, e.facets[1]) {
                (u, e.facets[0], v, e.facets[1])
            } else {
                (v, e.facets[1], u, e.facets[0])
            }
        })
        .collect();
    sig.sort();
    sig
}

fn extend_isomorphism(
    a: &OrigamiTemplate,
    b: &OrigamiTemplate,
    next: usize,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    target: &EdgeSig,
) -> bool {
    if next == map.len() {
        let m = map.clone();
        return edge_signature(a, &|x| m[x].unwrap()) == *target;
    }
    for cand in 0..map.len() {
        if used[cand]
            || a.polytope_of(next) != b.polytope_of(cand)
            || a.degree(next) != b.degree(cand)
        {
            continue;
        }
        map[next] = Some(cand);
        used[cand] = true;
        if extend_isomorphism(a, b, next + 1, map, used, target) {
            return true;
        }
        map[next] = None;
        used[cand] = false;
    }
    false
}
