//! Coefficient rings for fixed-locus arithmetic.
//!
//! Fixed-locus elements are polynomials in divisor generators with
//! coefficients either *symbolic* in the equivariant parameters
//! ([`LambdaPoly`]: polynomials in lambda_1..lambda_N over the base ring)
//! or *specialized* (plain base-ring elements after evaluating the
//! parameters at certified rationals). The [`RingCoeff`] trait lets the
//! normal-form machinery work identically in both modes.

use std::collections::BTreeMap;

use num::Zero;

use crate::base::{BaseElt, GradedBaseRing};
use crate::rational::{rational_string, Q};

/// Operations a coefficient ring must support; the base ring is passed as
/// context since coefficients do not carry it.
pub trait RingCoeff: Clone + PartialEq + std::fmt::Debug {
    fn zero(base: &GradedBaseRing, n_lambda: usize) -> Self;
    fn is_zero(&self, base: &GradedBaseRing) -> bool;
    fn add(&self, other: &Self, base: &GradedBaseRing) -> Self;
    fn neg(&self, base: &GradedBaseRing) -> Self;
    fn mul(&self, other: &Self, base: &GradedBaseRing) -> Self;
    fn scale(&self, q: &Q, base: &GradedBaseRing) -> Self;
    /// Embed a base-ring element as a coefficient.
    fn from_base(e: BaseElt, n_lambda: usize) -> Self;

    fn sub(&self, other: &Self, base: &GradedBaseRing) -> Self {
        self.add(&other.neg(base), base)
    }
}

/// Specialized mode: coefficients are base-ring elements.
impl RingCoeff for BaseElt {
    fn zero(base: &GradedBaseRing, _n: usize) -> Self {
        base.zero()
    }
    fn is_zero(&self, base: &GradedBaseRing) -> bool {
        base.is_zero_elt(self)
    }
    fn add(&self, other: &Self, base: &GradedBaseRing) -> Self {
        base.add(self, other)
    }
    fn neg(&self, base: &GradedBaseRing) -> Self {
        base.neg(self)
    }
    fn mul(&self, other: &Self, base: &GradedBaseRing) -> Self {
        base.mul(self, other)
    }
    fn scale(&self, q: &Q, base: &GradedBaseRing) -> Self {
        base.scale(self, q)
    }
    fn from_base(e: BaseElt, _n: usize) -> Self {
        e
    }
}

/// Symbolic mode: a polynomial in the equivariant parameters with base-ring
/// coefficients. Keys are dense exponent vectors of length N.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaPoly {
    pub terms: BTreeMap<Vec<u16>, BaseElt>,
    pub n_lambda: usize,
}

impl LambdaPoly {
    pub fn lambda(i: usize, n: usize, base: &GradedBaseRing) -> Self {
        let mut exp = vec![0u16; n];
        exp[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, base.one());
        LambdaPoly { terms, n_lambda: n }
    }

    fn insert_add(&mut self, exp: Vec<u16>, val: BaseElt, base: &GradedBaseRing) {
        let entry = self.terms.entry(exp.clone()).or_insert_with(|| base.zero());
        *entry = base.add(entry, &val);
        if base.is_zero_elt(entry) {
            self.terms.remove(&exp);
        }
    }

    /// Evaluate at rational parameter values, landing in the base ring.
    pub fn eval(&self, lambda: &[Q], base: &GradedBaseRing) -> BaseElt {
        let mut out = base.zero();
        for (exp, val) in &self.terms {
            let mut factor = Q::from_integer(1.into());
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    factor *= &lambda[i];
                }
            }
            if !factor.is_zero() {
                out = base.add(&out, &base.scale(val, &factor));
            }
        }
        out
    }

    /// Total degree in the parameters.
    pub fn lambda_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self, base: &GradedBaseRing) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (exp, val) in &self.terms {
            let mut mono = String::new();
            for (i, &e) in exp.iter().enumerate() {
                if e == 1 {
                    mono.push_str(&format!("L{}", i + 1));
                } else if e > 1 {
                    mono.push_str(&format!("L{}^{}", i + 1, e));
                }
            }
            let coeff: Vec<String> = val
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(|(k, q)| {
                    if base.basis[k].name == "1" {
                        rational_string(q)
                    } else {
                        format!("{}*{}", rational_string(q), base.basis[k].name)
                    }
                })
                .collect();
            let c = coeff.join("+");
            if mono.is_empty() {
                parts.push(c);
            } else if c == "1" {
                parts.push(mono);
            } else {
                parts.push(format!("({c})*{mono}"));
            }
        }
        parts.join(" + ")
    }
}

impl RingCoeff for LambdaPoly {
    fn zero(_base: &GradedBaseRing, n: usize) -> Self {
        LambdaPoly {
            terms: BTreeMap::new(),
            n_lambda: n,
        }
    }
    fn is_zero(&self, _base: &GradedBaseRing) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self, base: &GradedBaseRing) -> Self {
        let mut out = self.clone();
        for (exp, val) in &other.terms {
            out.insert_add(exp.clone(), val.clone(), base);
        }
        out
    }
    fn neg(&self, base: &GradedBaseRing) -> Self {
        LambdaPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), base.neg(v)))
                .collect(),
            n_lambda: self.n_lambda,
        }
    }
    fn mul(&self, other: &Self, base: &GradedBaseRing) -> Self {
        let mut out = Self::zero(base, self.n_lambda);
        for (ea, va) in &self.terms {
            for (eb, vb) in &other.terms {
                let exp: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let val = base.mul(va, vb);
                if !base.is_zero_elt(&val) {
                    out.insert_add(exp, val, base);
                }
            }
        }
        out
    }
    fn scale(&self, q: &Q, base: &GradedBaseRing) -> Self {
        if q.is_zero() {
            return Self::zero(base, self.n_lambda);
        }
        LambdaPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), base.scale(v, q)))
                .collect(),
            n_lambda: self.n_lambda,
        }
    }
    fn from_base(e: BaseElt, n: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !e.iter().all(|q| q.is_zero()) {
            terms.insert(vec![0u16; n], e);
        }
        LambdaPoly { terms, n_lambda: n }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::base_projective;
    use crate::rational::q_from;

    #[test]
    fn lambda_poly_arithmetic_and_eval() {
        let p1 = base_projective(1);
        let n = 2;
        let l1 = LambdaPoly::lambda(0, n, &p1);
        let l2 = LambdaPoly::lambda(1, n, &p1);
        let h = LambdaPoly::from_base(p1.class("h").unwrap(), n);
        // (L1 - L2 + h)^2 over P^1: h^2 = 0
        let s = l1.sub(&l2, &p1).add(&h, &p1);
        let sq = s.mul(&s, &p1);
        let vals = [q_from(3), q_from(1)];
        let got = sq.eval(&vals, &p1);
        // (2 + h)^2 = 4 + 4h
        let expect = p1.add(&p1.scalar(q_from(4)), &p1.scale(&p1.class("h").unwrap(), &q_from(4)));
        assert_eq!(got, expect);
        assert_eq!(sq.lambda_degree(), 2);
    }
}
