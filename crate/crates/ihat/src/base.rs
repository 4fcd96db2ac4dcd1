//! Finite-dimensional exact models of even cohomology rings, and vector
//! bundles presented by Chern classes.
//!
//! A [`GradedBaseRing`] is a commutative graded Q-algebra given by a finite
//! monomial basis (degrees stored as half-degrees, since everything in this
//! crate lives in even degree) and an exact multiplication table. Elements
//! ([`BaseElt`]) are dense coefficient vectors over that basis; all products
//! above the top degree vanish.
//!
//! A [`BundleData`] is a bundle known only through its rank and Chern
//! classes. Chern roots are never materialized: the carrier of every
//! root-symmetric formula is the monic polynomial
//! `R_V(w) = w^r + c_1 w^{r-1} + ... + c_r`
//! ([`chern_poly`]), its inverse power series ([`segre_classes`]) and the
//! Newton-identity power sums ([`chern_character`]).

use std::sync::Arc;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, parse_rational, q_from, Q};

/// One basis class of the ring, with its complex (half) degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisClass {
    pub name: String,
    pub half_degree: usize,
}

/// A graded commutative Q-algebra with finite monomial basis. Index 0 is
/// always the unit.
#[derive(Debug)]
pub struct GradedBaseRing {
    pub basis: Vec<BasisClass>,
    /// `mult[i][j]` = coefficients of `basis[i] * basis[j]`.
    mult: Vec<Vec<Vec<Q>>>,
    /// Top half-degree (complex dimension of the underlying space).
    pub top: usize,
}

/// Dense element of a [`GradedBaseRing`].
pub type BaseElt = Vec<Q>;

impl GradedBaseRing {
    fn new(basis: Vec<BasisClass>, mult: Vec<Vec<Vec<Q>>>, top: usize) -> Result<Self> {
        let ring = GradedBaseRing { basis, mult, top };
        ring.check()?;
        Ok(ring)
    }

    fn check(&self) -> Result<()> {
        let dim = self.basis.len();
        if dim == 0 || self.basis[0].half_degree != 0 {
            return Err(Error::input("ring basis must start with the unit in degree 0"));
        }
        if self.mult.len() != dim || self.mult.iter().any(|r| r.len() != dim) {
            return Err(Error::input("multiplication table shape mismatch"));
        }
        for i in 0..dim {
            for j in 0..dim {
                if self.mult[i][j].len() != dim {
                    return Err(Error::input("multiplication table entry of wrong length"));
                }
                // unit row/column
                if i == 0 {
                    let mut expect = vec![Q::zero(); dim];
                    expect[j] = Q::one();
                    if self.mult[i][j] != expect {
                        return Err(Error::input("basis element 0 must act as the unit"));
                    }
                }
                // commutativity (even degrees only)
                if self.mult[i][j] != self.mult[j][i] {
                    return Err(Error::input("multiplication table is not commutative"));
                }
                // degree additivity
                let d = self.basis[i].half_degree + self.basis[j].half_degree;
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() && self.basis[k].half_degree != d {
                        return Err(Error::input(format!(
                            "product {}*{} has a component off degree {}",
                            self.basis[i].name, self.basis[j].name, d
                        )));
                    }
                }
            }
        }
        // associativity on all basis triples (the rings here are small
        // enough to check every one)
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let lhs = self.mul(&self.mult[i][j], &self.unit_vec(k));
                    let rhs = self.mul(&self.unit_vec(i), &self.mult[j][k]);
                    if lhs != rhs {
                        return Err(Error::input(format!(
                            "multiplication not associative at basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn unit_vec(&self, k: usize) -> BaseElt {
        let mut v = vec![Q::zero(); self.basis.len()];
        v[k] = Q::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> BaseElt {
        vec![Q::zero(); self.basis.len()]
    }

    pub fn one(&self) -> BaseElt {
        self.unit_vec(0)
    }

    pub fn scalar(&self, q: Q) -> BaseElt {
        let mut v = self.zero();
        v[0] = q;
        v
    }

    /// Locate a basis class by name.
    pub fn class(&self, name: &str) -> Option<BaseElt> {
        self.basis
            .iter()
            .position(|b| b.name == name)
            .map(|i| self.unit_vec(i))
    }

    pub fn add(&self, a: &BaseElt, b: &BaseElt) -> BaseElt {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &BaseElt, b: &BaseElt) -> BaseElt {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &BaseElt) -> BaseElt {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &BaseElt, q: &Q) -> BaseElt {
        a.iter().map(|x| x * q).collect()
    }

    pub fn mul(&self, a: &BaseElt, b: &BaseElt) -> BaseElt {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += c * &xy;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero_elt(&self, a: &BaseElt) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Component of `a` in half-degree `d`.
    pub fn homogeneous_part(&self, a: &BaseElt, d: usize) -> BaseElt {
        let mut out = self.zero();
        for (k, x) in a.iter().enumerate() {
            if self.basis[k].half_degree == d {
                out[k] = x.clone();
            }
        }
        out
    }

    /// The degree-0 (scalar) coefficient of `a`.
    pub fn scalar_part(&self, a: &BaseElt) -> Q {
        a[0].clone()
    }

    /// True if `a` has zero scalar part, i.e. lies in the nilpotent ideal of
    /// positive-degree classes.
    pub fn is_nilpotent_elt(&self, a: &BaseElt) -> bool {
        a[0].is_zero()
    }

    /// Inverse of an element with non-zero scalar part, by the finite
    /// geometric series in its nilpotent part.
    pub fn invert(&self, a: &BaseElt) -> Result<BaseElt> {
        let s = self.scalar_part(a);
        if s.is_zero() {
            return Err(Error::pole_collision(
                "attempt to invert a ring element with zero scalar part".to_string(),
            ));
        }
        let sinv = Q::one() / s;
        // a = s(1 + n), n nilpotent; 1/a = (1/s) sum_j (-n)^j
        let mut n = self.scale(a, &sinv);
        n[0] -= Q::one();
        let mut out = self.one();
        let mut pow = self.one();
        let mut negative = false;
        for _ in 0..=self.top {
            pow = self.mul(&pow, &n);
            if self.is_zero_elt(&pow) {
                break;
            }
            negative = !negative;
            out = if negative {
                self.sub(&out, &pow)
            } else {
                self.add(&out, &pow)
            };
        }
        Ok(self.scale(&out, &sinv))
    }
}

/// The one-dimensional ring of a point.
pub fn base_point() -> Arc<GradedBaseRing> {
    let basis = vec![BasisClass {
        name: "1".to_string(),
        half_degree: 0,
    }];
    let mult = vec![vec![vec![Q::one()]]];
    Arc::new(GradedBaseRing::new(basis, mult, 0).expect("point ring is valid"))
}

/// The ring `Q[h]/(h^{m+1})` of m-dimensional projective space.
pub fn base_projective(m: usize) -> Arc<GradedBaseRing> {
    let dim = m + 1;
    let basis: Vec<BasisClass> = (0..dim)
        .map(|i| BasisClass {
            name: if i == 0 {
                "1".to_string()
            } else if i == 1 {
                "h".to_string()
            } else {
                format!("h^{i}")
            },
            half_degree: i,
        })
        .collect();
    let mut mult = vec![vec![vec![Q::zero(); dim]; dim]; dim];
    for (i, row) in mult.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            if i + j < dim {
                entry[i + j] = Q::one();
            }
        }
    }
    Arc::new(GradedBaseRing::new(basis, mult, m).expect("projective ring is valid"))
}

/// Tensor product of two base rings with bidegree addition.
pub fn base_product(r1: &GradedBaseRing, r2: &GradedBaseRing) -> Arc<GradedBaseRing> {
    let d1 = r1.dim();
    let d2 = r2.dim();
    let dim = d1 * d2;
    let idx = |i: usize, j: usize| i * d2 + j;
    let mut basis = Vec::with_capacity(dim);
    for i in 0..d1 {
        for j in 0..d2 {
            let name = match (i == 0, j == 0) {
                (true, true) => "1".to_string(),
                (false, true) => r1.basis[i].name.clone(),
                (true, false) => format!("{}'", r2.basis[j].name),
                (false, false) => format!("{}*{}'", r1.basis[i].name, r2.basis[j].name),
            };
            basis.push(BasisClass {
                name,
                half_degree: r1.basis[i].half_degree + r2.basis[j].half_degree,
            });
        }
    }
    let mut mult = vec![vec![vec![Q::zero(); dim]; dim]; dim];
    for i1 in 0..d1 {
        for j1 in 0..d2 {
            for i2 in 0..d1 {
                for j2 in 0..d2 {
                    let p1 = &r1.mult[i1][i2];
                    let p2 = &r2.mult[j1][j2];
                    let entry = &mut mult[idx(i1, j1)][idx(i2, j2)];
                    for (k1, c1) in p1.iter().enumerate() {
                        if c1.is_zero() {
                            continue;
                        }
                        for (k2, c2) in p2.iter().enumerate() {
                            if !c2.is_zero() {
                                entry[idx(k1, k2)] += c1 * c2;
                            }
                        }
                    }
                }
            }
        }
    }
    Arc::new(
        GradedBaseRing::new(basis, mult, r1.top + r2.top).expect("product ring is valid"),
    )
}

/// JSON form of a base ring: a builtin by name or a custom table.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum BaseRingDoc {
    /// `"point"`
    Builtin(String),
    /// `{"projective": 2}` or `{"product": [spec, spec]}`
    Projective {
        projective: usize,
    },
    Product {
        product: Vec<BaseRingDoc>,
    },
    Custom {
        basis: Vec<(String, usize)>,
        /// `mult[i][j]` = coefficient map, e.g. `{"h^2": "1"}`
        mult: Vec<Vec<std::collections::BTreeMap<String, String>>>,
    },
}

/// Build a base ring from its JSON description.
pub fn base_from_doc(doc: &BaseRingDoc) -> Result<Arc<GradedBaseRing>> {
    match doc {
        BaseRingDoc::Builtin(name) if name == "point" => Ok(base_point()),
        BaseRingDoc::Builtin(name) => Err(Error::input(format!("unknown base ring {name:?}"))),
        BaseRingDoc::Projective { projective } => Ok(base_projective(*projective)),
        BaseRingDoc::Product { product } => {
            if product.len() != 2 {
                return Err(Error::input("product base ring takes exactly two factors"));
            }
            let a = base_from_doc(&product[0])?;
            let b = base_from_doc(&product[1])?;
            Ok(base_product(&a, &b))
        }
        BaseRingDoc::Custom { basis, mult } => {
            let classes: Vec<BasisClass> = basis
                .iter()
                .map(|(name, hd)| BasisClass {
                    name: name.clone(),
                    half_degree: *hd,
                })
                .collect();
            let top = classes.iter().map(|b| b.half_degree).max().unwrap_or(0);
            let dim = classes.len();
            let mut table = vec![vec![vec![Q::zero(); dim]; dim]; dim];
            for (i, row) in mult.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    for (name, val) in entry {
                        let k = classes
                            .iter()
                            .position(|b| &b.name == name)
                            .ok_or_else(|| Error::input(format!("unknown basis class {name:?}")))?;
                        table[i][j][k] = parse_rational(val)?;
                    }
                }
            }
            Ok(Arc::new(GradedBaseRing::new(classes, table, top)?))
        }
    }
}

/// A vector bundle known through rank and Chern classes `c_1..c_r`
/// (each `c_j` homogeneous of half-degree j; classes above the top degree
/// must be zero and are rejected otherwise).
#[derive(Clone, Debug)]
pub struct BundleData {
    pub name: String,
    pub rank: usize,
    pub chern: Vec<BaseElt>,
}

impl BundleData {
    pub fn new(name: impl Into<String>, rank: usize, chern: Vec<BaseElt>, ring: &GradedBaseRing) -> Result<Self> {
        if rank == 0 {
            return Err(Error::input("bundle rank must be positive"));
        }
        if chern.len() != rank {
            return Err(Error::input(format!(
                "expected {} Chern classes, got {}",
                rank,
                chern.len()
            )));
        }
        for (j, c) in chern.iter().enumerate() {
            let d = j + 1;
            if c.len() != ring.dim() {
                return Err(Error::input("Chern class has wrong basis length"));
            }
            let hom = ring.homogeneous_part(c, d);
            if &hom != c {
                return Err(Error::input(format!(
                    "Chern class c_{d} is not homogeneous of half-degree {d}"
                )));
            }
        }
        Ok(BundleData {
            name: name.into(),
            rank,
            chern,
        })
    }

    /// Trivial bundle of the given rank.
    pub fn trivial(rank: usize, ring: &GradedBaseRing) -> Self {
        BundleData {
            name: format!("O^{rank}"),
            rank,
            chern: vec![ring.zero(); rank],
        }
    }

    /// Line bundle with the given first Chern class.
    pub fn line(name: impl Into<String>, c1: BaseElt) -> Self {
        BundleData {
            name: name.into(),
            rank: 1,
            chern: vec![c1],
        }
    }

    /// Direct sum, via the Whitney product of total Chern classes.
    pub fn direct_sum(&self, other: &BundleData, ring: &GradedBaseRing) -> BundleData {
        let rank = self.rank + other.rank;
        let mut total = vec![ring.zero(); rank + 1];
        total[0] = ring.one();
        for j in 0..=rank {
            let mut acc = ring.zero();
            for a in 0..=j {
                let b = j - a;
                let ca = if a == 0 {
                    ring.one()
                } else if a <= self.rank {
                    self.chern[a - 1].clone()
                } else {
                    continue;
                };
                let cb = if b == 0 {
                    ring.one()
                } else if b <= other.rank {
                    other.chern[b - 1].clone()
                } else {
                    continue;
                };
                acc = ring.add(&acc, &ring.mul(&ca, &cb));
            }
            total[j] = acc;
        }
        BundleData {
            name: format!("{}+{}", self.name, other.name),
            rank,
            chern: total[1..=rank].to_vec(),
        }
    }
}

/// Coefficients `[1, c_1, ..., c_r]` of the monic polynomial
/// `R_V(w) = w^r + c_1 w^{r-1} + ... + c_r`.
pub fn chern_poly(v: &BundleData, ring: &GradedBaseRing) -> Vec<BaseElt> {
    let mut coeffs = Vec::with_capacity(v.rank + 1);
    coeffs.push(ring.one());
    coeffs.extend(v.chern.iter().cloned());
    coeffs
}

/// Segre classes `s_0..s_{n_max}`: the inverse of the total Chern class as
/// a power series, `(sum s_i t^i)(sum c_j t^j) = 1`.
pub fn segre_classes(v: &BundleData, n_max: usize, ring: &GradedBaseRing) -> Vec<BaseElt> {
    let mut s: Vec<BaseElt> = Vec::with_capacity(n_max + 1);
    s.push(ring.one());
    for i in 1..=n_max {
        let mut acc = ring.zero();
        for j in 1..=i.min(v.rank) {
            acc = ring.add(&acc, &ring.mul(&v.chern[j - 1], &s[i - j]));
        }
        s.push(ring.neg(&acc));
    }
    debug_assert!({
        // generating identity to order n_max
        (0..=n_max).all(|k| {
            let mut conv = ring.zero();
            for j in 0..=k.min(v.rank) {
                let c = if j == 0 { ring.one() } else { v.chern[j - 1].clone() };
                conv = ring.add(&conv, &ring.mul(&c, &s[k - j]));
            }
            if k == 0 {
                conv == ring.one()
            } else {
                ring.is_zero_elt(&conv)
            }
        })
    });
    s
}

/// Chern character components `ch_0..ch_{l_max}`, from Newton's identities
/// applied to the Chern classes as elementary symmetric functions.
pub fn chern_character(v: &BundleData, l_max: usize, ring: &GradedBaseRing) -> Vec<BaseElt> {
    let e = |j: usize| -> BaseElt {
        if j == 0 {
            ring.one()
        } else if j <= v.rank {
            v.chern[j - 1].clone()
        } else {
            ring.zero()
        }
    };
    // power sums p_l = sum_{i=1}^{l-1} (-1)^{i-1} e_i p_{l-i} + (-1)^{l-1} l e_l
    let mut p: Vec<BaseElt> = vec![ring.zero()]; // p_0 unused
    for l in 1..=l_max {
        let mut acc = ring.zero();
        for i in 1..l {
            let term = ring.mul(&e(i), &p[l - i]);
            if i % 2 == 1 {
                acc = ring.add(&acc, &term);
            } else {
                acc = ring.sub(&acc, &term);
            }
        }
        let last = ring.scale(&e(l), &q_from(l as i64));
        if l % 2 == 1 {
            acc = ring.add(&acc, &last);
        } else {
            acc = ring.sub(&acc, &last);
        }
        p.push(acc);
    }
    let mut ch = Vec::with_capacity(l_max + 1);
    ch.push(ring.scalar(q_from(v.rank as i64)));
    for l in 1..=l_max {
        ch.push(ring.scale(&p[l], &(Q::one() / factorial(l))));
    }
    ch
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_ratio;

    #[test]
    fn projective_truncation() {
        let p2 = base_projective(2);
        let h = p2.class("h").unwrap();
        let h2 = p2.mul(&h, &h);
        assert_eq!(h2, p2.class("h^2").unwrap());
        assert!(p2.is_zero_elt(&p2.mul(&h, &h2)));
        // projective(0) is the point ring
        assert_eq!(base_projective(0).dim(), 1);
    }

    #[test]
    fn product_ring_bidegrees() {
        let p1 = base_projective(1);
        let ring = base_product(&p1, &p1);
        let h1 = ring.class("h").unwrap();
        let h2 = ring.class("h'").unwrap();
        let m = ring.mul(&h1, &h2);
        assert_eq!(m, ring.class("h*h'").unwrap());
        assert!(ring.is_zero_elt(&ring.mul(&h1, &h1)));
        assert_eq!(ring.top, 2);
    }

    #[test]
    fn chern_poly_examples() {
        let p2 = base_projective(2);
        let h = p2.class("h").unwrap();
        // trivial line bundle: R(w) = w
        let triv = BundleData::trivial(1, &p2);
        assert_eq!(chern_poly(&triv, &p2), vec![p2.one(), p2.zero()]);
        // O(-1): R(w) = w - h
        let om1 = BundleData::line("O(-1)", p2.neg(&h));
        assert_eq!(chern_poly(&om1, &p2), vec![p2.one(), p2.neg(&h)]);
        // cotangent-twist example: rank 2, c1 = -h, c2 = h^2
        let h2 = p2.mul(&h, &h);
        let v = BundleData::new("V", 2, vec![p2.neg(&h), h2.clone()], &p2).unwrap();
        assert_eq!(chern_poly(&v, &p2), vec![p2.one(), p2.neg(&h), h2]);
    }

    #[test]
    fn segre_examples() {
        let p2 = base_projective(2);
        let h = p2.class("h").unwrap();
        let h2 = p2.mul(&h, &h);
        // trivial rank-r: s_i = 0 for i >= 1
        let triv = BundleData::trivial(3, &p2);
        let s = segre_classes(&triv, 4, &p2);
        assert!(s[1..].iter().all(|x| p2.is_zero_elt(x)));
        // O(-1): s_1 = h, s_2 = h^2
        let om1 = BundleData::line("O(-1)", p2.neg(&h));
        let s = segre_classes(&om1, 2, &p2);
        assert_eq!(s[1], h);
        assert_eq!(s[2], h2);
        // rank 2, c1=-h, c2=h^2: s_1 = h, s_2 = 0
        let v = BundleData::new("V", 2, vec![p2.neg(&h), h2], &p2).unwrap();
        let s = segre_classes(&v, 2, &p2);
        assert_eq!(s[1], h);
        assert!(p2.is_zero_elt(&s[2]));
    }

    #[test]
    fn chern_character_examples() {
        let p2 = base_projective(2);
        let h = p2.class("h").unwrap();
        // trivial rank-r: ch = r
        let triv = BundleData::trivial(2, &p2);
        let ch = chern_character(&triv, 2, &p2);
        assert_eq!(ch[0], p2.scalar(q_from(2)));
        assert!(p2.is_zero_elt(&ch[1]) && p2.is_zero_elt(&ch[2]));
        // O(-1): ch = 1 - h + h^2/2
        let om1 = BundleData::line("O(-1)", p2.neg(&h));
        let ch = chern_character(&om1, 2, &p2);
        assert_eq!(ch[1], p2.neg(&h));
        assert_eq!(ch[2], p2.scale(&p2.mul(&h, &h), &q_ratio(1, 2)));
        // rank 2: ch_2 = (c1^2 - 2 c2)/2
        let c1 = p2.neg(&h);
        let c2 = p2.mul(&h, &h);
        let v = BundleData::new("V", 2, vec![c1.clone(), c2.clone()], &p2).unwrap();
        let ch = chern_character(&v, 2, &p2);
        let expect = p2.scale(
            &p2.sub(&p2.mul(&c1, &c1), &p2.scale(&c2, &q_from(2))),
            &q_ratio(1, 2),
        );
        assert_eq!(ch[2], expect);
    }

    #[test]
    fn chern_character_additive_on_sums() {
        let p2 = base_projective(2);
        let h = p2.class("h").unwrap();
        let a = BundleData::line("O(-1)", p2.neg(&h));
        let b = BundleData::line("O(-2)", p2.scale(&h, &q_from(-2)));
        let sum = a.direct_sum(&b, &p2);
        let ch_sum = chern_character(&sum, 2, &p2);
        let ch_a = chern_character(&a, 2, &p2);
        let ch_b = chern_character(&b, 2, &p2);
        for l in 0..=2 {
            assert_eq!(ch_sum[l], p2.add(&ch_a[l], &ch_b[l]));
        }
    }

    #[test]
    fn segre_chern_duality_on_corpus() {
        let p2 = base_projective(2);
        let h = p2.class("h").unwrap();
        let bundles = vec![
            BundleData::trivial(2, &p2),
            BundleData::line("O(-1)", p2.neg(&h)),
            BundleData::new("V", 2, vec![p2.neg(&h), p2.mul(&h, &h)], &p2).unwrap(),
        ];
        for v in &bundles {
            let s = segre_classes(v, 6, &p2);
            for k in 1..=6usize {
                let mut conv = p2.zero();
                for j in 0..=k.min(v.rank) {
                    let c = if j == 0 { p2.one() } else { v.chern[j - 1].clone() };
                    conv = p2.add(&conv, &p2.mul(&c, &s[k - j]));
                }
                assert!(p2.is_zero_elt(&conv));
            }
        }
    }

    #[test]
    fn ring_inversion() {
        let p2 = base_projective(2);
        let h = p2.class("h").unwrap();
        // (1 - h)^{-1} = 1 + h + h^2
        let a = p2.sub(&p2.one(), &h);
        let inv = p2.invert(&a).unwrap();
        let prod = p2.mul(&a, &inv);
        assert_eq!(prod, p2.one());
        assert!(p2.invert(&h).is_err());
    }
}
