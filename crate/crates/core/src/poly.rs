//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials are exponent vectors. Within one degree the basis order is
//! lexicographic with `x1 > x2 > ... > xn`, so `x1^d` comes first.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, rat_int, LatticeVector, Rational};
use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

/// All monomials of total degree `d` in `n` variables, `x1^d` first.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Homogeneous polynomials of one degree with their monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPolySpace {
    pub nvars: usize,
    pub degree: u32,
    pub basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl GradedPolySpace {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let basis = monomials(nvars, degree);
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        GradedPolySpace {
            nvars,
            degree,
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn coefficients(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (m, c) in &p.terms {
            let i = self.index_of(m).ok_or_else(|| {
                Error::ShapeError(format!("monomial {m:?} is not of degree {}", self.degree))
            })?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn polynomial(&self, coeffs: &[Rational]) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for (m, c) in self.basis.iter().zip(coeffs) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Polynomial::zero(nvars);
        p.add_term(m, Rational::one());
        p
    }

    pub fn monomial(exponents: &[u32], c: Rational) -> Self {
        let mut p = Polynomial::zero(exponents.len());
        p.add_term(exponents.to_vec(), c);
        p
    }

    /// `sum_i w_i x_i`.
    pub fn linear_form(w: &LatticeVector) -> Self {
        let n = w.dim();
        let mut p = Polynomial::zero(n);
        for (i, c) in w.iter().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            p.add_term(m, rat_int(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Total degree if homogeneous; `None` for zero or mixed degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Division by a nonzero linear form: returns `(quotient, remainder)`
    /// with `self = quotient * divisor + remainder` and no remainder term
    /// divisible by the divisor's lexicographically leading variable.
    pub fn div_linear(&self, divisor: &LatticeVector) -> Result<(Polynomial, Polynomial)> {
        let lead = divisor
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::DegenerateInput("division by the zero form".into()))?;
        let lead_coef = rat_int(&divisor[lead]);
        let d = Polynomial::linear_form(divisor);
        let mut rest = self.clone();
        let mut quotient = Polynomial::zero(self.nvars);
        let mut remainder = Polynomial::zero(self.nvars);
        // The last key in exponent-vector order is the lex-leading monomial.
        while let Some((m, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if m[lead] == 0 {
                rest.terms.remove(&m);
                remainder.add_term(m, c);
                continue;
            }
            let mut qm = m.clone();
            qm[lead] -= 1;
            let q = Polynomial::monomial(&qm, c / &lead_coef);
            rest = rest.sub(&q.mul(&d));
            quotient = quotient.add(&q);
        }
        Ok((quotient, remainder))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{e}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial, rat};

    #[test]
    fn monomial_counts_and_order() {
        for n in 1..4 {
            for d in 0..5 {
                assert_eq!(monomials(n, d).len(), binomial(n - 1 + d as usize, n - 1));
            }
        }
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(0, 0), vec![Vec::<u32>::new()]);
        assert!(monomials(0, 1).is_empty());
    }

    #[test]
    fn division_by_linear_forms() {
        let x1x2 = Polynomial::monomial(&[1, 1], rat(1, 1));
        let (q, r) = x1x2.div_linear(&LatticeVector::from_i64(&[1, 0])).unwrap();
        assert_eq!(q, Polynomial::var(2, 1));
        assert!(r.is_zero());
        let (_, r) = Polynomial::var(2, 0).div_linear(&LatticeVector::from_i64(&[0, 1])).unwrap();
        assert_eq!(r, Polynomial::var(2, 0));

        // (x1 - x2)(2 x1 + x2) = 2x1^2 - x1 x2 - x2^2
        let w = LatticeVector::from_i64(&[1, -1]);
        let g = Polynomial::linear_form(&LatticeVector::from_i64(&[2, 1]));
        let f = Polynomial::linear_form(&w).mul(&g);
        let (q, r) = f.div_linear(&w).unwrap();
        assert_eq!(q, g);
        assert!(r.is_zero());
        assert_eq!(f.to_string(), "2*x1^2 - x1*x2 - x2^2");
    }

    #[test]
    fn coefficient_roundtrip() {
        let space = GradedPolySpace::new(3, 2);
        let p = Polynomial::var(3, 0).mul(&Polynomial::var(3, 2)).scale(&rat(-3, 2));
        let c = space.coefficients(&p).unwrap();
        assert_eq!(space.polynomial(&c), p);
        assert!(space.coefficients(&Polynomial::var(3, 0)).is_err());
    }
}
