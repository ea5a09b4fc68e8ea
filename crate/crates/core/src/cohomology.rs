//! Graded dimensions of the GKM ring of a moment graph.
//!
//! A degree-`d` class is a tuple `(f_p)` of homogeneous polynomials of degree
//! `d`, one per fixed point, with `α_e | f_p − f_q` for every edge. The space
//! of such tuples is the kernel of the map sending `(f_p)` to the residues of
//! `f_p − f_q` modulo `α_e`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::arith::{binomial, rat_int, LatticeVector, Matrix, Rational};
use crate::error::{Error, Result};
use crate::gkm::MomentGraph;
use crate::poly::{monomials, GradedPolySpace, Monomial, Polynomial};

/// A degree-`d` tuple of polynomials indexed by fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTuple {
    pub degree: u32,
    pub coefficients: Vec<Vec<Rational>>,
}

impl ClassTuple {
    pub fn from_polynomials(nvars: usize, degree: u32, polys: &[Polynomial]) -> Result<Self> {
        let space = GradedPolySpace::new(nvars, degree);
        let coefficients = polys
            .iter()
            .map(|p| {
                if p.nvars() != nvars {
                    return Err(Error::ShapeError(format!(
                        "polynomial in {} variables, expected {nvars}",
                        p.nvars()
                    )));
                }
                space.coefficients(p)
            })
            .collect::<Result<_>>()?;
        Ok(ClassTuple {
            degree,
            coefficients,
        })
    }

    pub fn polynomials(&self, nvars: usize) -> Vec<Polynomial> {
        let space = GradedPolySpace::new(nvars, self.degree);
        self.coefficients.iter().map(|c| space.polynomial(c)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction(pub Vec<usize>);

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(d, h)| format!("h{d}={h}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Even Betti numbers `b_0, b_2, ..., b_{2n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector(pub Vec<u64>);

impl BettiVector {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(k, b)| format!("b{}={b}", 2 * k)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Outcome of a divisibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Every edge divides; one quotient per edge in graph order.
    Member { quotients: Vec<Polynomial> },
    /// The first edge whose weight does not divide the difference.
    Violation { edge: usize, remainder: Polynomial },
}

impl Membership {
    pub fn holds(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Images of the degree-`d` monomials in the residue space of `α`.
///
/// With `i` the first nonzero index of `α`, the substitution
/// `x_i ↦ −Σ_{j≠i} α_j x_j`, `x_j ↦ α_i x_j` kills exactly the multiples of
/// `α` up to the unit `α_i^d`. Returns one row per residue monomial.
fn residue_rows(alpha: &LatticeVector, space: &GradedPolySpace) -> Vec<Vec<Rational>> {
    let n = space.nvars;
    let Some(lead) = alpha.iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let lead_coef = rat_int(&alpha[lead]);
    let images: Vec<Polynomial> = (0..n)
        .map(|j| {
            if j == lead {
                let mut p = Polynomial::zero(n);
                for (k, c) in alpha.iter().enumerate() {
                    if k != lead {
                        p = p.sub(&Polynomial::var(n, k).scale(&rat_int(c)));
                    }
                }
                p
            } else {
                Polynomial::var(n, j).scale(&lead_coef)
            }
        })
        .collect();
    let targets: BTreeMap<Monomial, usize> = monomials(n, space.degree)
        .into_iter()
        .filter(|m| m[lead] == 0)
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows = vec![vec![Rational::zero(); space.dim()]; targets.len()];
    for (col, m) in space.basis.iter().enumerate() {
        let image = m
            .iter()
            .zip(&images)
            .fold(Polynomial::one(n), |acc, (&e, x)| acc.mul(&x.pow(e)));
        for (mono, c) in image.terms() {
            rows[targets[mono]][col] = c.clone();
        }
    }
    rows
}

fn constraint_matrix(g: &MomentGraph, space: &GradedPolySpace) -> Matrix {
    let width = space.dim();
    let mut m = Matrix::new(g.fixed_points.len() * width);
    let mut cache: BTreeMap<&LatticeVector, Vec<Vec<Rational>>> = BTreeMap::new();
    for e in &g.edges {
        let rows = cache
            .entry(&e.weight)
            .or_insert_with(|| residue_rows(&e.weight, space));
        let [p, q] = e.ends;
        if p == q {
            continue;
        }
        for r in rows.iter() {
            let mut row = vec![Rational::zero(); m.num_cols()];
            for (k, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    row[p * width + k] = c.clone();
                    row[q * width + k] = -c.clone();
                }
            }
            m.push_row(row);
        }
    }
    m
}

/// Dimension over the rationals of the degree-`d` part of the GKM ring.
pub fn gkm_dimension(g: &MomentGraph, d: u32) -> usize {
    let space = GradedPolySpace::new(g.dim, d);
    let m = constraint_matrix(g, &space);
    m.num_cols() - m.rank()
}

/// A basis of the degree-`d` solution space, as flattened coefficient vectors.
pub fn gkm_basis(g: &MomentGraph, d: u32) -> Vec<ClassTuple> {
    let space = GradedPolySpace::new(g.dim, d);
    let width = space.dim();
    let m = constraint_matrix(g, &space);
    m.kernel_basis()
        .into_iter()
        .map(|v| ClassTuple {
            degree: d,
            coefficients: if width == 0 {
                vec![Vec::new(); g.fixed_points.len()]
            } else {
                v.chunks(width).map(|c| c.to_vec()).collect()
            },
        })
        .collect()
}

pub fn hilbert_function(g: &MomentGraph, max_degree: u32) -> HilbertFunction {
    HilbertFunction((0..=max_degree).map(|d| gkm_dimension(g, d)).collect())
}

/// Betti numbers from the Hilbert function by formal division by `(1 − s)^{−n}`.
pub fn betti_from_hilbert(h: &HilbertFunction, n: usize, num_fixed: usize) -> Result<BettiVector> {
    if h.0.len() < n + 1 {
        return Err(Error::ShapeError(format!(
            "need h_0..h_{n}, got {} values",
            h.0.len()
        )));
    }
    let mut b: Vec<i64> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut v = h.0[d] as i64;
        for (j, bj) in b.iter().enumerate() {
            let c = if n == 0 { 0 } else { binomial(d - j + n - 1, n - 1) };
            v -= bj * c as i64;
        }
        if v < 0 {
            return Err(Error::FreenessViolation(format!("b{} = {v} is negative", 2 * d)));
        }
        b.push(v);
    }
    let total: i64 = b.iter().sum();
    if total != num_fixed as i64 {
        return Err(Error::FreenessViolation(format!(
            "Betti numbers sum to {total}, expected {num_fixed} fixed points"
        )));
    }
    Ok(BettiVector(b.into_iter().map(|v| v as u64).collect()))
}

pub fn betti_numbers(g: &MomentGraph, n: usize) -> Result<BettiVector> {
    if n != g.dim {
        return Err(Error::DimensionError {
            expected: g.dim,
            got: n,
        });
    }
    let h = hilbert_function(g, n as u32);
    betti_from_hilbert(&h, n, g.fixed_points.len())
}

pub fn check_membership(g: &MomentGraph, c: &ClassTuple) -> Result<Membership> {
    let width = GradedPolySpace::new(g.dim, c.degree).dim();
    if c.coefficients.len() != g.fixed_points.len() {
        return Err(Error::ShapeError(format!(
            "{} polynomials for {} fixed points",
            c.coefficients.len(),
            g.fixed_points.len()
        )));
    }
    if let Some(v) = c.coefficients.iter().find(|v| v.len() != width) {
        return Err(Error::ShapeError(format!(
            "coefficient vector of length {}, expected {width}",
            v.len()
        )));
    }
    let polys = c.polynomials(g.dim);
    let mut quotients = Vec::with_capacity(g.edges.len());
    for (i, e) in g.edges.iter().enumerate() {
        let diff = polys[e.ends[0]].sub(&polys[e.ends[1]]);
        let (q, r) = diff.div_linear(&e.weight)?;
        if !r.is_zero() {
            return Ok(Membership::Violation { edge: i, remainder: r });
        }
        quotients.push(q);
    }
    Ok(Membership::Member { quotients })
}

/// Degrees of a rational module basis, as `(degree, count)` with nonzero counts.
pub fn generator_degrees(g: &MomentGraph, max_degree: u32) -> Vec<(u32, usize)> {
    let n = g.dim;
    let mut out = Vec::new();
    let mut previous: Vec<ClassTuple> = Vec::new();
    for d in 0..=max_degree {
        let basis = gkm_basis(g, d);
        let space = GradedPolySpace::new(n, d);
        let mut span = Matrix::new(g.fixed_points.len() * space.dim());
        for t in &previous {
            for k in 0..n {
                let x = Polynomial::var(n, k);
                let mut row = Vec::with_capacity(span.num_cols());
                for p in t.polynomials(n) {
                    row.extend(space.coefficients(&p.mul(&x)).expect("degree is d"));
                }
                span.push_row(row);
            }
        }
        let count = basis.len() - span.rank();
        if count > 0 {
            out.push((d, count));
        }
        previous = basis;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::gkm::moment_graph;
    use crate::polytope::{polytope_from_i64, Polytope};
    use crate::template::{OrigamiTemplate, TemplateBuilder};

    fn double(p: Polytope, f: usize) -> OrigamiTemplate {
        let mut b = TemplateBuilder::new(p.dim());
        let i = b.polytope("P", p);
        let u = b.vertex("N", i);
        let v = b.vertex("S", i);
        b.edge("fold", u, v, f, f);
        b.build().unwrap()
    }

    fn simplex(n: usize) -> Polytope {
        let mut hs: Vec<(Vec<i64>, i64)> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = -1;
                (v, 0)
            })
            .collect();
        hs.push((vec![1; n], 1));
        let refs: Vec<(&[i64], i64)> = hs.iter().map(|(v, o)| (v.as_slice(), *o)).collect();
        polytope_from_i64(n, &refs).unwrap()
    }

    fn sphere(n: usize) -> MomentGraph {
        moment_graph(&double(simplex(n), n)).unwrap()
    }

    fn single(p: Polytope) -> MomentGraph {
        let mut b = TemplateBuilder::new(p.dim());
        let i = b.polytope("P", p);
        b.vertex("v", i);
        moment_graph(&b.build().unwrap()).unwrap()
    }

    #[test]
    fn s4_dimensions() {
        let g = sphere(2);
        assert_eq!(gkm_dimension(&g, 0), 1);
        assert_eq!(gkm_dimension(&g, 1), 2);
        assert_eq!(gkm_dimension(&g, 2), 4);
        assert_eq!(hilbert_function(&g, 3), HilbertFunction(vec![1, 2, 4, 6]));
    }

    #[test]
    fn edgeless_graph_is_unconstrained() {
        let g = MomentGraph::from_weights(2, 3, Vec::new()).unwrap();
        for d in 0..4 {
            assert_eq!(gkm_dimension(&g, d), 3 * (d as usize + 1));
        }
        let point = MomentGraph::from_weights(0, 1, Vec::new()).unwrap();
        assert_eq!(hilbert_function(&point, 0), HilbertFunction(vec![1]));
        assert_eq!(betti_numbers(&point, 0).unwrap(), BettiVector(vec![1]));
    }

    #[test]
    fn sphere_betti_numbers() {
        for n in 1..=3 {
            let mut expected = vec![0; n + 1];
            expected[0] = 1;
            expected[n] = 1;
            assert_eq!(betti_numbers(&sphere(n), n).unwrap(), BettiVector(expected));
        }
        assert_eq!(betti_numbers(&sphere(2), 2).unwrap().to_string(), "b0=1 b2=0 b4=1");
    }

    #[test]
    fn projective_plane() {
        let g = single(simplex(2));
        assert_eq!(hilbert_function(&g, 2), HilbertFunction(vec![1, 3, 6]));
        assert_eq!(betti_numbers(&g, 2).unwrap(), BettiVector(vec![1, 1, 1]));
        assert_eq!(generator_degrees(&g, 2), vec![(0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn hirzebruch_betti() {
        let trapezoid =
            polytope_from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[0, 1], 1), (&[1, 1], 2)]).unwrap();
        let g = moment_graph(&double(trapezoid, 3)).unwrap();
        assert_eq!(betti_numbers(&g, 2).unwrap(), BettiVector(vec![1, 2, 1]));
        assert_eq!(generator_degrees(&g, 2), vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn sphere_generators() {
        assert_eq!(generator_degrees(&sphere(2), 2), vec![(0, 1), (2, 1)]);
        assert_eq!(generator_degrees(&sphere(3), 3), vec![(0, 1), (3, 1)]);
    }

    #[test]
    fn s4_membership() {
        let g = sphere(2);
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        let pi = ClassTuple::from_polynomials(2, 2, &[x1.mul(&x2), Polynomial::zero(2)]).unwrap();
        match check_membership(&g, &pi).unwrap() {
            Membership::Member { quotients } => assert_eq!(quotients, vec![x2.clone(), x1.clone()]),
            other => panic!("{other:?}"),
        }
        let one = ClassTuple::from_polynomials(2, 0, &[Polynomial::one(2), Polynomial::one(2)]).unwrap();
        assert!(check_membership(&g, &one).unwrap().holds());
        let bad = ClassTuple::from_polynomials(2, 1, &[x1.clone(), Polynomial::zero(2)]).unwrap();
        match check_membership(&g, &bad).unwrap() {
            Membership::Violation { edge, .. } => {
                assert_eq!(g.edges[edge].weight, LatticeVector::from_i64(&[0, 1]))
            }
            other => panic!("{other:?}"),
        }
        let short = ClassTuple {
            degree: 1,
            coefficients: vec![vec![rat(1, 1), rat(0, 1)]],
        };
        assert!(matches!(check_membership(&g, &short), Err(Error::ShapeError(_))));
    }

    #[test]
    fn basis_vectors_are_members() {
        let g = sphere(2);
        for d in 0..4 {
            for t in gkm_basis(&g, d) {
                assert!(check_membership(&g, &t).unwrap().holds());
            }
        }
    }

    #[test]
    fn negative_extraction_is_reported() {
        let h = HilbertFunction(vec![1, 1, 1]);
        assert!(matches!(betti_from_hilbert(&h, 2, 3), Err(Error::FreenessViolation(_))));
        let h = HilbertFunction(vec![1, 2, 3]);
        assert!(matches!(betti_from_hilbert(&h, 2, 5), Err(Error::FreenessViolation(_))));
    }
}
