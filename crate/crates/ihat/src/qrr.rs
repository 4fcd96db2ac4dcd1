//! The quantum Riemann-Roch series and its supporting identities.
//!
//! Provides:
//! - [`qrr_delta`]: the truncated exponential series `Delta_{(V, e~^±)}`
//!   built from Chern characters, Bernoulli weights and inverse powers of a
//!   single equivariant weight
//! - [`novikov_regrade`]: the exact Novikov re-grading `Q^d -> Q^d chi^{-m(d)}`
//!   realized as an operation on series coefficients
//! - [`LogLaurentSeries`] and [`check_g_telescoping`]: the telescoping
//!   identity `(G(L+kz) - G(L))/z = sum_{c=1}^k log(L+cz)` for the Bernoulli
//!   tail function `G`, expanded exactly to a chosen z-order
//!
//! The series `Delta` lives in (base ring) tensor `Q[chi^{-1}][z,z^{-1}]`;
//! it is stored as a map from `(z power, chi^{-1} power)` to base-ring
//! elements. Only finitely many negative z powers occur because every
//! negative power carries a nilpotent coefficient.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::base::{chern_character, BaseElt, BundleData, GradedBaseRing};
use crate::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::rational::{factorial, q_from, Q};

/// Sign selector for the pair of inverse-Euler-type twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistSign {
    Plus,
    Minus,
}

/// Truncated series in `z` and `chi^{-1}` with base-ring coefficients.
/// Keys are `(z_power, chi_inverse_power)`; `z_order` is the inclusive
/// truncation order in `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSeries {
    pub terms: BTreeMap<(i64, u32), BaseElt>,
    pub z_order: i64,
}

impl DeltaSeries {
    fn zero(z_order: i64) -> Self {
        DeltaSeries {
            terms: BTreeMap::new(),
            z_order,
        }
    }

    fn one(ring: &GradedBaseRing, z_order: i64) -> Self {
        let mut s = Self::zero(z_order);
        s.terms.insert((0, 0), ring.one());
        s
    }

    fn insert_add(&mut self, key: (i64, u32), val: BaseElt, ring: &GradedBaseRing) {
        if key.0 > self.z_order {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(|| ring.zero());
        *entry = ring.add(entry, &val);
        if ring.is_zero_elt(entry) {
            self.terms.remove(&key);
        }
    }

    fn mul(&self, other: &Self, ring: &GradedBaseRing) -> Self {
        let mut out = Self::zero(self.z_order);
        for ((za, ca), va) in &self.terms {
            for ((zb, cb), vb) in &other.terms {
                let key = (za + zb, ca + cb);
                if key.0 > self.z_order {
                    continue;
                }
                out.insert_add(key, ring.mul(va, vb), ring);
            }
        }
        out
    }

    fn is_one(&self, ring: &GradedBaseRing) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|v| *v == ring.one())
                .unwrap_or(false)
    }

    /// Coefficient at a given `(z, chi^{-1})` bidegree (zero if absent).
    pub fn coefficient(&self, z_pow: i64, chi_pow: u32, ring: &GradedBaseRing) -> BaseElt {
        self.terms
            .get(&(z_pow, chi_pow))
            .cloned()
            .unwrap_or_else(|| ring.zero())
    }
}

/// `s_k^±(chi)` carries `±(-1)^{k-1}(k-1)!` on `chi^{-k}` for `k > 0` and
/// vanishes for `k = 0` (and, inside the Delta sum, for `k = -1`).
fn s_coeff(sign: TwistSign, k: i64) -> Q {
    if k <= 0 {
        return Q::zero();
    }
    let mut c = factorial((k - 1) as usize);
    if (k - 1) % 2 == 1 {
        c = -c;
    }
    match sign {
        TwistSign::Plus => c,
        TwistSign::Minus => -c,
    }
}

/// The quantum Riemann-Roch series for a bundle and a single non-zero
/// equivariant weight `chi`, truncated at `z_order`:
/// `exp( sum_{l,m>=0} s^±_{l+m-1} * B_m/m! * ch_l(V) * z^{m-1} )`.
///
/// The caller certifies `chi != 0`; inside the series `chi` appears only
/// through its formal inverse, so this function needs no value for it.
pub fn qrr_delta(
    v: &BundleData,
    sign: TwistSign,
    z_order: i64,
    ring: &GradedBaseRing,
    chi_is_zero: bool,
) -> Result<DeltaSeries> {
    if chi_is_zero {
        return Err(Error::input("the twist weight chi must be non-zero"));
    }
    if z_order < 0 {
        return Err(Error::input("z_order must be non-negative"));
    }
    let ch = chern_character(v, ring.top, ring);
    let b = bernoulli((z_order + 2) as usize);

    // log Delta, split into its scalar part (l = 0, z powers >= 1) and its
    // nilpotent part (l >= 1, z powers >= -1).
    let mut log_scalar = DeltaSeries::zero(z_order);
    let mut log_nilp = DeltaSeries::zero(z_order);
    for l in 0..=ring.top {
        if ring.is_zero_elt(&ch[l]) {
            continue;
        }
        for m in 0..=(z_order + 1) as usize {
            let k = l as i64 + m as i64 - 1;
            let s = s_coeff(sign, k);
            if s.is_zero() || b[m].is_zero() {
                continue;
            }
            let zp = m as i64 - 1;
            if zp > z_order {
                continue;
            }
            let coeff = s * &b[m] / factorial(m);
            let val = ring.scale(&ch[l], &coeff);
            if l == 0 {
                debug_assert!(zp >= 1);
                log_scalar.insert_add((zp, k as u32), val, ring);
            } else {
                debug_assert!(zp >= -1);
                log_nilp.insert_add((zp, k as u32), val, ring);
            }
        }
    }

    // exp of the scalar part: z-valuation >= 1, so powers terminate at z_order.
    let mut exp_scalar = DeltaSeries::one(ring, z_order);
    let mut pow = DeltaSeries::one(ring, z_order);
    for j in 1..=z_order.max(0) as usize {
        pow = pow.mul(&log_scalar, ring);
        if pow.terms.is_empty() {
            break;
        }
        let inv = Q::one() / factorial(j);
        let mut term = DeltaSeries::zero(z_order);
        for (key, val) in &pow.terms {
            term.insert_add(*key, ring.scale(val, &inv), ring);
        }
        for (key, val) in term.terms {
            exp_scalar.insert_add(key, val, ring);
        }
    }

    // exp of the nilpotent part: terminates because coefficients have
    // positive base degree.
    let mut exp_nilp = DeltaSeries::one(ring, z_order);
    let mut pow = DeltaSeries::one(ring, z_order);
    for j in 1..=ring.top.max(1) {
        pow = pow.mul(&log_nilp, ring);
        if pow.terms.is_empty() {
            break;
        }
        let inv = Q::one() / factorial(j);
        for (key, val) in &pow.terms {
            exp_nilp.insert_add(*key, ring.scale(val, &inv), ring);
        }
    }

    Ok(exp_scalar.mul(&exp_nilp, ring))
}

/// Check `Delta^+ * Delta^- = 1` to the truncation order.
pub fn check_delta_inverse_pair(
    v: &BundleData,
    z_order: i64,
    ring: &GradedBaseRing,
) -> Result<bool> {
    let plus = qrr_delta(v, TwistSign::Plus, z_order, ring, false)?;
    let minus = qrr_delta(v, TwistSign::Minus, z_order, ring, false)?;
    Ok(plus.mul(&minus, ring).is_one(ring))
}

/// Exact Novikov re-grading: multiply the coefficient of every curve class
/// `d` by `scalar^{-m(d)}`, where `m` is an integer-valued function of the
/// class (a first-Chern pairing in practice). Generic over the coefficient
/// type so series modules can reuse it.
pub fn novikov_regrade<C, F, G>(
    terms: &mut BTreeMap<Vec<i64>, C>,
    pairing: F,
    mut scale_by: G,
    scalar: &Q,
) -> Result<()>
where
    F: Fn(&[i64]) -> i64,
    G: FnMut(&mut C, &Q),
{
    if scalar.is_zero() {
        return Err(Error::input("regrading weight must be non-zero"));
    }
    for (class, coeff) in terms.iter_mut() {
        let m = pairing(class);
        if m == 0 {
            continue;
        }
        let factor = power_q(scalar, -m);
        scale_by(coeff, &factor);
    }
    Ok(())
}

fn power_q(q: &Q, e: i64) -> Q {
    let mut acc = Q::one();
    for _ in 0..e.unsigned_abs() {
        acc *= q;
    }
    if e < 0 {
        Q::one() / acc
    } else {
        acc
    }
}

/// Truncated series in `z` whose coefficients are Laurent polynomials in a
/// single weight `L` together with a formal symbol `log L`. Keys are
/// `(log-power, z-power, L-power)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogLaurentSeries {
    pub terms: BTreeMap<(u32, i64, i64), Q>,
    pub z_order: i64,
}

impl LogLaurentSeries {
    pub fn zero(z_order: i64) -> Self {
        LogLaurentSeries {
            terms: BTreeMap::new(),
            z_order,
        }
    }

    pub fn term(log_pow: u32, z_pow: i64, l_pow: i64, c: Q, z_order: i64) -> Self {
        let mut s = Self::zero(z_order);
        s.add_term(log_pow, z_pow, l_pow, c);
        s
    }

    pub fn add_term(&mut self, log_pow: u32, z_pow: i64, l_pow: i64, c: Q) {
        if z_pow > self.z_order || c.is_zero() {
            return;
        }
        let e = self.terms.entry((log_pow, z_pow, l_pow)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(log_pow, z_pow, l_pow));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, v) in &other.terms {
            out.add_term(k.0, k.1, k.2, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, v) in &other.terms {
            out.add_term(k.0, k.1, k.2, -v.clone());
        }
        out
    }

    pub fn scale(&self, q: &Q) -> Self {
        let mut out = Self::zero(self.z_order);
        for (&k, v) in &self.terms {
            out.add_term(k.0, k.1, k.2, v * q);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.z_order);
        for (&(la, za, pa), va) in &self.terms {
            for (&(lb, zb, pb), vb) in &other.terms {
                out.add_term(la + lb, za + zb, pa + pb, va * vb);
            }
        }
        out
    }

    /// Divide by z (shift all z-powers down by one).
    pub fn shift_z(&self, by: i64, new_order: i64) -> Self {
        let mut out = Self::zero(new_order);
        for (&(l, z, p), v) in &self.terms {
            out.add_term(l, z + by, p, v.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `log(L + kz) = log L + sum_{j>=1} (-1)^{j-1} (k z / L)^j / j`, truncated.
fn log_shifted(k: i64, z_order: i64) -> LogLaurentSeries {
    let mut s = LogLaurentSeries::term(1, 0, 0, Q::one(), z_order);
    if k != 0 {
        for j in 1..=z_order.max(0) {
            let mut c = power_q(&q_from(k), j) / q_from(j);
            if (j - 1) % 2 == 1 {
                c = -c;
            }
            s.add_term(0, j, -j, c);
        }
    }
    s
}

/// `(L + kz)^e` for integer exponent `e` (negative allowed), truncated:
/// `L^e sum_j C(e, j) (k z / L)^j`.
fn power_shifted(k: i64, e: i64, z_order: i64) -> LogLaurentSeries {
    let mut s = LogLaurentSeries::zero(z_order);
    let e_q = q_from(e);
    for j in 0..=z_order.max(0) {
        let c = crate::rational::binomial_rational(&e_q, j as usize) * power_q(&q_from(k), j);
        s.add_term(0, j, e - j, c);
        if e >= 0 && j >= e {
            break; // polynomial case terminates
        }
    }
    s
}

/// The Bernoulli tail function `G(L) = L log L - L + (z/2) log L
/// + sum_{m>=2} B_m/(m(m-1)) z^m L^{1-m}`, with `L` shifted to `L + kz`
/// and everything truncated at `z_order`.
fn g_function(k: i64, z_order: i64) -> LogLaurentSeries {
    let b = bernoulli((z_order + 1).max(2) as usize);
    let log = log_shifted(k, z_order);
    // (L + kz) as a series
    let mut linear = LogLaurentSeries::term(0, 0, 1, Q::one(), z_order);
    linear.add_term(0, 1, 0, q_from(k));
    let mut g = linear.mul(&log);
    g = g.sub(&linear);
    let half_z = LogLaurentSeries::term(0, 1, 0, crate::rational::q_ratio(1, 2), z_order);
    g = g.add(&half_z.mul(&log));
    for m in 2..=z_order.max(0) as usize {
        if b[m].is_zero() {
            continue;
        }
        let c = &b[m] / (q_from(m as i64) * q_from((m - 1) as i64));
        let tail = power_shifted(k, 1 - m as i64, z_order - m as i64);
        for (&(l, z, p), v) in &tail.terms {
            g.add_term(l, z + m as i64, p, v * &c);
        }
    }
    g
}

/// Verify `(G(L + kz) - G(L))/z = k log L + sum_{c=1}^{k} log(1 + c z/L)`
/// exactly to order `z_order`. Returns the difference (zero on success) so
/// callers can print a witness.
pub fn check_g_telescoping(k: i64, z_order: i64) -> Result<bool> {
    if k < 0 {
        return Err(Error::input("k must be non-negative"));
    }
    if k == 0 {
        return Ok(true); // both sides vanish identically
    }
    // Work one order higher so the division by z is exact to z_order.
    let inner = z_order + 1;
    let lhs = g_function(k, inner).sub(&g_function(0, inner)).shift_z(-1, z_order);
    let mut rhs = LogLaurentSeries::zero(z_order);
    for c in 1..=k {
        rhs = rhs.add(&log_shifted(c, z_order));
    }
    Ok(lhs.sub(&rhs).is_zero())
}
