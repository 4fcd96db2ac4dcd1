//! Scalar equivariant classes: exact linear forms in the torus parameters.
//!
//! An [`EquivariantScalar`] is a Q-linear combination of the parameters
//! lambda_1, ..., lambda_N plus a rational constant. These appear as the
//! scalar parts of restricted divisor classes and as the localization
//! weights attached to adjacent fixed-point pairs.

use std::fmt;

use num::{One, Zero};

use crate::rational::{rational_string, Q};

/// Exact linear form `const + sum_i coeffs[i] * lambda_i` in canonical form
/// (a fixed-length dense coefficient vector; zero terms are just zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantScalar {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl EquivariantScalar {
    pub fn zero(n: usize) -> Self {
        EquivariantScalar {
            coeffs: vec![Q::zero(); n],
            constant: Q::zero(),
        }
    }

    /// The single parameter `lambda_i` (0-based index) among `n`.
    pub fn lambda(i: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[i] = Q::one();
        s
    }

    pub fn constant(c: Q, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.constant = c;
        s
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True if the form has no constant term (a pure lambda-form).
    pub fn is_pure(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        EquivariantScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn neg(&self) -> Self {
        EquivariantScalar {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            constant: -self.constant.clone(),
        }
    }

    pub fn scale(&self, q: &Q) -> Self {
        EquivariantScalar {
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
            constant: &self.constant * q,
        }
    }

    /// Evaluate at concrete rational parameter values.
    pub fn eval(&self, lambda: &[Q]) -> Q {
        let mut acc = self.constant.clone();
        for (c, l) in self.coeffs.iter().zip(lambda) {
            acc += c * l;
        }
        acc
    }
}

impl fmt::Display for EquivariantScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = rational_string(c);
            if first {
                if cs == "1" {
                    write!(f, "L{}", i + 1)?;
                } else if cs == "-1" {
                    write!(f, "-L{}", i + 1)?;
                } else {
                    write!(f, "{}*L{}", cs, i + 1)?;
                }
                first = false;
            } else if cs.starts_with('-') {
                if cs == "-1" {
                    write!(f, " - L{}", i + 1)?;
                } else {
                    write!(f, " - {}*L{}", &cs[1..], i + 1)?;
                }
            } else if cs == "1" {
                write!(f, " + L{}", i + 1)?;
            } else {
                write!(f, " + {}*L{}", cs, i + 1)?;
            }
        }
        if !self.constant.is_zero() || first {
            let cs = rational_string(&self.constant);
            if first {
                write!(f, "{cs}")?;
            } else if cs.starts_with('-') {
                write!(f, " - {}", &cs[1..])?;
            } else {
                write!(f, " + {cs}")?;
            }
        }
        Ok(())
    }
}
