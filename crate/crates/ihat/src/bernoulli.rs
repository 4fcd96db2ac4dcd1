//! Exact Bernoulli numbers in the `x/(e^x - 1)` convention
//! (so `B_1 = -1/2`).

use num::{One, Zero};

use crate::rational::{binomial_rational, q_from, Q};

/// `B_0..B_{m_max}` as exact rationals, from the recurrence
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0` for `m >= 1` with `B_0 = 1`.
pub fn bernoulli(m_max: usize) -> Vec<Q> {
    let mut b = Vec::with_capacity(m_max + 1);
    b.push(Q::one());
    for m in 1..=m_max {
        let mut acc = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += binomial_rational(&q_from((m + 1) as i64), j) * bj;
        }
        let denom = binomial_rational(&q_from((m + 1) as i64), m);
        b.push(-acc / denom);
    }
    b
}
