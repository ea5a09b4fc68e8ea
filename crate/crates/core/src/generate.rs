//! Random inputs for property tests.
//!
//! Tree templates grow by doubling: a new vertex is attached to an existing
//! one along a facet that avoids the folds already present there, and its
//! polytope is a copy of the neighbour's with the facets away from the new
//! fold pushed outward at random.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::{int, LatticeVector};
use crate::gkm::MomentGraph;
use crate::polytope::{polytope_from_i64, HalfSpace, Polytope};
use crate::template::{validate, OrigamiTemplate, TemplateBuilder};

fn trapezoid(a: i64, b: i64, k: i64) -> Polytope {
    polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[0, 1], b), (&[1, k], a)]).unwrap()
}

fn hexagon(s: i64) -> Polytope {
    polytope_from_i64(
        2,
        &[
            (&[-1, 0], 0),
            (&[-1, -1], -1),
            (&[0, -1], 0),
            (&[1, 0], s + 1),
            (&[1, 1], 2 * s + 1),
            (&[0, 1], s + 1),
        ],
    )
    .unwrap()
}

/// An axis-aligned box `[0, sizes_0] × ... × [0, sizes_{n-1}]`, facets
/// ordered low then high per axis.
pub fn lattice_box(sizes: &[i64]) -> Polytope {
    let n = sizes.len();
    let mut rows = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        let mut lo = vec![0; n];
        lo[i] = -1;
        let mut hi = vec![0; n];
        hi[i] = 1;
        rows.push((lo, 0));
        rows.push((hi, s));
    }
    let refs: Vec<(&[i64], i64)> = rows.iter().map(|(v, o)| (v.as_slice(), *o)).collect();
    polytope_from_i64(n, &refs).unwrap()
}

/// The standard simplex scaled by `s`.
pub fn simplex(n: usize, s: i64) -> Polytope {
    let mut rows: Vec<(Vec<i64>, i64)> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = -1;
            (v, 0)
        })
        .collect();
    rows.push((vec![1; n], s));
    let refs: Vec<(&[i64], i64)> = rows.iter().map(|(v, o)| (v.as_slice(), *o)).collect();
    polytope_from_i64(n, &refs).unwrap()
}

fn prism(s: i64, h: i64) -> Polytope {
    polytope_from_i64(
        3,
        &[(&[-1, 0, 0], 0), (&[0, -1, 0], 0), (&[1, 1, 0], s), (&[0, 0, -1], 0), (&[0, 0, 1], h)],
    )
    .unwrap()
}

/// A random Delzant polytope of dimension `dim` in `1..=3`.
pub fn random_base<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Polytope {
    let s = rng.gen_range(1..=3);
    let t = rng.gen_range(1..=3);
    match dim {
        1 => lattice_box(&[s]),
        2 => match rng.gen_range(0..4) {
            0 => lattice_box(&[s, t]),
            1 => simplex(2, s),
            2 => {
                let k = rng.gen_range(0..=2);
                trapezoid(k * t + s, t, k)
            }
            _ => hexagon(s),
        },
        3 => match rng.gen_range(0..3) {
            0 => lattice_box(&[s, t, rng.gen_range(1..=2)]),
            1 => simplex(3, s),
            _ => prism(s, t),
        },
        _ => panic!("random_base supports dimensions 1 to 3"),
    }
}

fn disjoint(p: &Polytope, f: usize, g: usize) -> bool {
    let a = p.facet_vertices(f);
    p.facet_vertices(g).iter().all(|v| !a.contains(v))
}

/// Facets of `p` that meet no facet in `used`.
fn free_facets(p: &Polytope, used: &[usize]) -> Vec<usize> {
    (0..p.num_facets())
        .filter(|f| used.iter().all(|&g| g != *f && disjoint(p, *f, g)))
        .collect()
}

/// A copy of `p` with facets disjoint from `f` pushed outward, falling back
/// to `p` itself whenever the result is not Delzant.
fn perturb<R: Rng + ?Sized>(rng: &mut R, p: &Polytope, f: usize) -> Polytope {
    let hs: Vec<HalfSpace> = p
        .halfspaces()
        .iter()
        .enumerate()
        .map(|(g, h)| {
            if g != f && disjoint(p, f, g) && rng.gen_bool(0.5) {
                let shift = rng.gen_range(1..=2);
                HalfSpace::new(h.normal().clone(), h.offset() + crate::arith::rat(shift, 1)).unwrap()
            } else {
                h.clone()
            }
        })
        .collect();
    match Polytope::new(p.dim(), hs) {
        Ok(q) if q.is_delzant() && q.num_facets() == p.num_facets() => q,
        _ => p.clone(),
    }
}

struct Growth {
    dim: usize,
    polytopes: Vec<Polytope>,
    vertex_polytope: Vec<usize>,
    used: Vec<Vec<usize>>,
    edges: Vec<(usize, usize, usize)>,
}

impl Growth {
    fn new(dim: usize) -> Self {
        Growth {
            dim,
            polytopes: Vec::new(),
            vertex_polytope: Vec::new(),
            used: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn add_vertex(&mut self, p: Polytope) -> usize {
        let i = match self.polytopes.iter().position(|q| *q == p) {
            Some(i) => i,
            None => {
                self.polytopes.push(p);
                self.polytopes.len() - 1
            }
        };
        self.vertex_polytope.push(i);
        self.used.push(Vec::new());
        self.vertex_polytope.len() - 1
    }

    fn polytope(&self, v: usize) -> &Polytope {
        &self.polytopes[self.vertex_polytope[v]]
    }

    fn add_edge(&mut self, u: usize, v: usize, f: usize) {
        self.used[u].push(f);
        self.used[v].push(f);
        self.edges.push((u, v, f));
    }

    /// Attaches a new leaf somewhere, returning false if no facet is free.
    fn attach_leaf<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        let mut options = Vec::new();
        for v in 0..self.vertex_polytope.len() {
            for f in free_facets(self.polytope(v), &self.used[v]) {
                options.push((v, f));
            }
        }
        let Some(&(v, f)) = options.choose(rng) else {
            return false;
        };
        let q = perturb(rng, self.polytope(v), f);
        let w = self.add_vertex(q);
        self.add_edge(v, w, f);
        true
    }

    fn build(&self) -> OrigamiTemplate {
        let mut b = TemplateBuilder::new(self.dim);
        let ids: Vec<usize> = self
            .polytopes
            .iter()
            .enumerate()
            .map(|(i, p)| b.polytope(&format!("P{i}"), p.clone()))
            .collect();
        for (v, &p) in self.vertex_polytope.iter().enumerate() {
            b.vertex(&format!("v{v}"), ids[p]);
        }
        for (k, &(u, v, f)) in self.edges.iter().enumerate() {
            b.edge(&format!("e{k}"), u, v, f, f);
        }
        b.build().expect("generated templates are well formed")
    }
}

/// A random valid tree template with at most `max_vertices` vertices.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_vertices: usize) -> OrigamiTemplate {
    loop {
        let mut g = Growth::new(dim);
        g.add_vertex(random_base(rng, dim));
        let target = rng.gen_range(1..=max_vertices.max(1));
        while g.vertex_polytope.len() < target && g.attach_leaf(rng) {}
        let t = g.build();
        if validate(&t).valid {
            return t;
        }
    }
}

/// A random valid template whose graph contains one cycle of length `len`
/// (at least 2), with up to `extra_leaves` trees hanging off it.
///
/// Even cycles use boxes folded alternately along the two facets of the
/// first axis; odd cycles use hexagons folded along three disjoint facets.
pub fn random_cycle<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    len: usize,
    extra_leaves: usize,
) -> OrigamiTemplate {
    assert!(len >= 2, "a cycle needs at least two vertices");
    loop {
        let mut g = Growth::new(dim);
        let (base, colors): (Polytope, Vec<usize>) = if len % 2 == 0 {
            let sizes: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=3)).collect();
            (lattice_box(&sizes), (0..len).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect())
        } else {
            assert_eq!(dim, 2, "odd cycles are generated in dimension 2");
            let mut colors = Vec::with_capacity(len);
            for i in 0..len {
                let choices: Vec<usize> = [0, 2, 4]
                    .into_iter()
                    .filter(|&c| i == 0 || c != colors[i - 1])
                    .filter(|&c| i + 1 != len || c != colors[0])
                    .collect();
                colors.push(*choices.choose(rng).unwrap());
            }
            (hexagon(rng.gen_range(1..=2)), colors)
        };
        for _ in 0..len {
            g.add_vertex(base.clone());
        }
        for (i, &c) in colors.iter().enumerate() {
            g.add_edge(i, (i + 1) % len, c);
        }
        for _ in 0..rng.gen_range(0..=extra_leaves) {
            g.attach_leaf(rng);
        }
        let t = g.build();
        if validate(&t).valid {
            return t;
        }
    }
}

/// An abstract moment graph with random primitive weights. Parallel edges
/// are allowed.
pub fn random_moment_graph<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_points: usize,
    max_edges: usize,
) -> MomentGraph {
    let points = rng.gen_range(1..=max_points.max(1));
    let mut edges = Vec::new();
    if points > 1 {
        for _ in 0..rng.gen_range(0..=max_edges) {
            let p = rng.gen_range(0..points);
            let mut q = rng.gen_range(0..points - 1);
            if q >= p {
                q += 1;
            }
            let w = loop {
                let w = LatticeVector((0..dim).map(|_| int(rng.gen_range(-3..=3))).collect());
                if !w.is_zero() {
                    break w;
                }
            };
            edges.push((p, q, w));
        }
    }
    MomentGraph::from_weights(dim, points, edges).expect("weights are nonzero")
}

/// A random bounded lattice polygon, smooth or not. About half are Delzant
/// shapes moved by a random shear and translation.
pub fn random_polygon<R: Rng + ?Sized>(rng: &mut R) -> Polytope {
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(-2..=2);
        let mut u = vec![vec![int(1), int(k)], vec![int(0), int(1)]];
        if rng.gen_bool(0.5) {
            u.swap(0, 1);
        }
        let t = vec![int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3))];
        return random_base(rng, 2).transform(&u, &t).expect("shears are unimodular");
    }
    const NORMALS: [[i64; 2]; 12] = [
        [1, 0],
        [0, 1],
        [-1, 0],
        [0, -1],
        [1, 1],
        [-1, -1],
        [1, -1],
        [-1, 1],
        [1, 2],
        [2, 1],
        [-1, -2],
        [-2, 1],
    ];
    loop {
        let k = rng.gen_range(3..=6);
        let mut normals = NORMALS.to_vec();
        normals.shuffle(rng);
        normals.truncate(k);
        let rows: Vec<([i64; 2], i64)> = normals.iter().map(|n| (*n, rng.gen_range(1..=4))).collect();
        let refs: Vec<(&[i64], i64)> = rows.iter().map(|(n, o)| (n.as_slice(), *o)).collect();
        if let Ok(p) = polytope_from_i64(2, &refs) {
            return p;
        }
    }
}
