//! Exact linear-programming feasibility over the rationals.
//!
//! The only question this module answers is cone membership: does a target
//! vector lie in the non-negative span of a given set of generators? It is
//! decided by a phase-1 simplex with Bland's rule, entirely in exact
//! rational arithmetic, so the answer is a certificate-grade yes/no with no
//! tolerance anywhere.

use num::{One, Signed, Zero};

use crate::rational::Q;

/// Decide whether `target` lies in `{ sum_i x_i * gens[i] : x_i >= 0 }`.
///
/// Generators and target live in `Q^dim`. Empty generator lists are allowed
/// (the cone is then `{0}`).
pub fn in_cone(gens: &[Vec<Q>], target: &[Q]) -> bool {
    let dim = target.len();
    if gens.iter().any(|g| g.len() != dim) {
        // Caller bug; treat mismatched generators as absent.
        return target.iter().all(|t| t.is_zero());
    }
    // Phase-1 simplex: minimize sum of artificials subject to
    //   sum_i x_i gens[i] + a = target (rows flipped so rhs >= 0).
    let n = gens.len();
    // tableau rows: dim constraint rows, columns: n structural + dim artificial + rhs
    let cols = n + dim + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(dim);
    for r in 0..dim {
        let flip = target[r].is_negative();
        let mut row: Vec<Q> = Vec::with_capacity(cols);
        for g in gens {
            row.push(if flip { -g[r].clone() } else { g[r].clone() });
        }
        for j in 0..dim {
            row.push(if j == r { Q::one() } else { Q::zero() });
        }
        row.push(if flip { -target[r].clone() } else { target[r].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + dim).collect();

    // Objective: sum of artificial variables, expressed through the basis.
    // reduced cost of column j: c_j - sum over rows of c_basis * row, with
    // c = 1 on artificials, 0 on structurals.
    let obj_coeff = |j: usize| -> Q {
        if j >= n {
            Q::one()
        } else {
            Q::zero()
        }
    };

    loop {
        // Reduced costs under Bland's rule: pick smallest entering index with
        // negative reduced cost.
        let mut entering = None;
        'cols: for j in 0..n + dim {
            if basis.contains(&j) {
                continue;
            }
            let mut red = obj_coeff(j);
            for (r, &b) in basis.iter().enumerate() {
                if !obj_coeff(b).is_zero() {
                    red -= &t[r][j] * obj_coeff(b);
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break 'cols;
            }
        }
        let Some(e) = entering else { break };
        // Ratio test, Bland tie-break on smallest basis index.
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..dim {
            if t[r][e].is_positive() {
                let ratio = &t[r][cols - 1] / &t[r][e];
                match &leave {
                    None => leave = Some((r, ratio)),
                    Some((lr, lv)) => {
                        if ratio < *lv || (ratio == *lv && basis[r] < basis[*lr]) {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
        }
        let Some((lr, _)) = leave else {
            // Unbounded phase-1 cannot happen (objective bounded below by 0),
            // but guard anyway.
            break;
        };
        // Pivot.
        let piv = t[lr][e].clone();
        for c in 0..cols {
            t[lr][c] = &t[lr][c] / &piv;
        }
        for r in 0..dim {
            if r != lr && !t[r][e].is_zero() {
                let f = t[r][e].clone();
                for c in 0..cols {
                    let s = &t[lr][c] * &f;
                    t[r][c] = &t[r][c] - &s;
                }
            }
        }
        basis[lr] = e;
    }

    // Feasible iff the artificial part of the objective is zero.
    let mut obj = Q::zero();
    for (r, &b) in basis.iter().enumerate() {
        if b >= n {
            obj += &t[r][cols - 1];
        }
    }
    obj.is_zero()
}

/// Integer-vector convenience wrapper for [`in_cone`].
pub fn in_cone_int(gens: &[Vec<i64>], target: &[Q]) -> bool {
    let qgens: Vec<Vec<Q>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| crate::rational::q_from(x)).collect())
        .collect();
    in_cone(&qgens, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_from, q_ratio};

    #[test]
    fn one_dimensional_cones() {
        // omega = 1 in cone(1, -1): yes.
        assert!(in_cone_int(&[vec![1], vec![-1]], &[q_from(1)]));
        // omega = 1 in cone(-1): no.
        assert!(!in_cone_int(&[vec![-1]], &[q_from(1)]));
        // omega = 1 in cone(2): yes (x = 1/2).
        assert!(in_cone_int(&[vec![2]], &[q_from(1)]));
        // zero target is in every cone, including the empty one.
        assert!(in_cone_int(&[], &[q_from(0)]));
        assert!(!in_cone_int(&[], &[q_from(1)]));
    }

    #[test]
    fn two_dimensional_cones() {
        // (1,1) in cone((1,0),(0,1)): yes.
        assert!(in_cone_int(&[vec![1, 0], vec![0, 1]], &[q_from(1), q_from(1)]));
        // (1,1) in cone((0,1),(-1,1)): needs a*(0,1)+b*(-1,1) = (1,1): -b=1, no.
        assert!(!in_cone_int(&[vec![0, 1], vec![-1, 1]], &[q_from(1), q_from(1)]));
        // boundary: (1,0) in cone((1,0),(0,1)): yes.
        assert!(in_cone_int(&[vec![1, 0], vec![0, 1]], &[q_from(1), q_from(0)]));
        // rational target
        assert!(in_cone_int(&[vec![1, 0], vec![1, 1]], &[q_ratio(3, 2), q_ratio(1, 2)]));
    }

    #[test]
    fn brute_force_cross_check_small_cones() {
        // Exhaustive grid of small rational targets against a brute-force
        // two-generator decision: target in cone(g1,g2) iff we can solve the
        // 2x2 system with nonnegative coefficients (det != 0 case).
        let g1 = [q_from(1), q_from(0)];
        let g2 = [q_from(-1), q_from(1)];
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                let t = [q_from(a), q_from(b)];
                // explicit solve: x*g1 + y*g2 = t => y = b, x = a + b
                let expect = b >= 0 && a + b >= 0;
                assert_eq!(
                    in_cone(&[g1.to_vec(), g2.to_vec()], &t),
                    expect,
                    "target ({a},{b})"
                );
            }
        }
    }
}
