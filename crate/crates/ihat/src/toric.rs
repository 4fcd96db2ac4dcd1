//! Smooth toric GIT data and its combinatorial invariants.
//!
//! Provides:
//! - [`ToricData`]: lattice rank, integer weight vectors, stability vector
//! - [`validate_smooth_toric_data`]: the two smoothness conditions, with
//!   witnesses and a degeneracy flag for boundary stability vectors
//! - [`compute_anticones`]: subsets whose weight vectors span the stability
//!   vector non-negatively
//! - [`FixedPointAtlas`]: minimal anti-cones with exact dual bases, the
//!   adjacency graph with curve classes and localization weights
//! - [`enumerate_leff`]: lattice points of the extended effective cone up to
//!   a degree cutoff, with an exact positivity certificate for the degree
//!   functional
//!
//! Everything is deterministic: subsets, fixed points and adjacency records
//! are emitted in lexicographic order of index sets.

use std::collections::BTreeSet;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::equivariant::EquivariantScalar;
use crate::error::{Error, Result};
use crate::intlin::{columns_generate_lattice, det, invert, lattice_index};
use crate::lp::in_cone_int;
use crate::rational::{parse_rational, q_from, rational_string, Q};

/// GIT input data: `rank` is the lattice rank K, `weights[i]` is the i-th
/// integer weight vector D_i in Z^K (N of them), `stability` is a rational
/// vector in Q^K.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricData {
    pub rank: usize,
    pub weights: Vec<Vec<i64>>,
    pub stability: Vec<Q>,
}

/// JSON form of [`ToricData`]: `{ "K": 2, "D": [[1,0],...], "omega": ["1","1"] }`
/// with rationals as exact strings.
#[derive(Serialize, Deserialize)]
pub struct ToricDataDoc {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "D")]
    pub d: Vec<Vec<i64>>,
    pub omega: Vec<String>,
}

impl ToricData {
    pub fn new(rank: usize, weights: Vec<Vec<i64>>, stability: Vec<Q>) -> Result<Self> {
        let data = ToricData {
            rank,
            weights,
            stability,
        };
        data.check_shape()?;
        Ok(data)
    }

    pub fn from_doc(doc: &ToricDataDoc) -> Result<Self> {
        let stability = doc
            .omega
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        ToricData::new(doc.k, doc.d.clone(), stability)
    }

    pub fn to_doc(&self) -> ToricDataDoc {
        ToricDataDoc {
            k: self.rank,
            d: self.weights.clone(),
            omega: self.stability.iter().map(rational_string).collect(),
        }
    }

    /// Number of weight vectors N.
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// The pairing `D_i(ell)` of the i-th weight vector with a lattice vector.
    pub fn pairing(&self, i: usize, ell: &[i64]) -> i64 {
        self.weights[i]
            .iter()
            .zip(ell)
            .map(|(a, b)| a * b)
            .sum()
    }

    fn check_shape(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::input("lattice rank K must be >= 1"));
        }
        if self.n() < self.rank {
            return Err(Error::input(format!(
                "need at least K = {} weight vectors, got {}",
                self.rank,
                self.n()
            )));
        }
        for (i, w) in self.weights.iter().enumerate() {
            if w.len() != self.rank {
                return Err(Error::input(format!(
                    "weight vector {} has length {}, expected {}",
                    i + 1,
                    w.len(),
                    self.rank
                )));
            }
        }
        if self.stability.len() != self.rank {
            return Err(Error::input(format!(
                "stability vector has length {}, expected {}",
                self.stability.len(),
                self.rank
            )));
        }
        Ok(())
    }
}

/// A subset of `{1,..,N}` (stored 0-based, sorted) whose weight vectors span
/// the stability vector non-negatively.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Anticone {
    pub indices: Vec<usize>,
}

impl Anticone {
    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// Render an index set 1-based, e.g. `{1,3}`.
pub fn index_set_string(indices: &[usize]) -> String {
    let inner: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Outcome of smoothness validation. `pass` reflects the two conditions
/// plus the degeneracy policy; all violations are listed with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub violations: Vec<String>,
    /// Set when the stability vector lies on a cone boundary (or is zero).
    /// Such data is accepted only when explicitly allowed.
    pub degenerate: Option<String>,
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    // Lexicographic on index sets: iterate bitmasks sorted by their sets.
    let mut all: Vec<Vec<usize>> = (0..(1usize << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    all.sort();
    all.into_iter()
}

fn rank_of(weights: &[Vec<i64>]) -> usize {
    if weights.is_empty() {
        return 0;
    }
    let rows = weights[0].len();
    let mat: Vec<Vec<i64>> = (0..rows)
        .map(|r| weights.iter().map(|w| w[r]).collect())
        .collect();
    let h = crate::intlin::hermite_normal_form(&mat);
    let mut rank = 0;
    let cols = h[0].len();
    let mut col = 0;
    for row in 0..rows {
        while col < cols && h[row][col].is_zero() {
            col += 1;
        }
        if col < cols {
            rank += 1;
            col += 1;
        }
    }
    rank
}

/// Check Definition-level smoothness: (1) the stability vector lies in the
/// cone of all weight vectors, (2) every anti-cone's weight vectors generate
/// the full lattice over Z. Boundary stability vectors are flagged as
/// degenerate and rejected unless `allow_degenerate` is set.
pub fn validate_smooth_toric_data(data: &ToricData, allow_degenerate: bool) -> Result<ValidationReport> {
    data.check_shape()?;
    let mut violations = Vec::new();

    // Condition (1): stability in the cone of all weight vectors.
    if !in_cone_int(&data.weights, &data.stability) {
        violations.push(
            "condition (1): stability vector is not in the non-negative span of the weight vectors"
                .to_string(),
        );
    }

    // Degeneracy: stability inside the cone of a rank-deficient subset.
    let mut degenerate = None;
    for s in subsets(data.n()) {
        let ws: Vec<Vec<i64>> = s.iter().map(|&i| data.weights[i].clone()).collect();
        if rank_of(&ws) < data.rank && in_cone_int(&ws, &data.stability) {
            degenerate = Some(format!(
                "stability vector lies in the cone of the rank-deficient subset {}",
                index_set_string(&s)
            ));
            break;
        }
    }

    // Condition (2): every anti-cone generates the lattice. Under the
    // degenerate override, anti-cones smaller than the rank (which exist
    // only for boundary stability vectors and can never generate) are
    // skipped.
    for ac in compute_anticones(data)? {
        if allow_degenerate && degenerate.is_some() && ac.indices.len() < data.rank {
            continue;
        }
        let cols: Vec<Vec<i64>> = ac.indices.iter().map(|&i| data.weights[i].clone()).collect();
        let mat: Vec<Vec<i64>> = (0..data.rank)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        if !columns_generate_lattice(&mat) {
            let detail = match lattice_index(&mat) {
                Some(ix) => format!("sublattice of index {ix}"),
                None => "a sublattice of lower rank".to_string(),
            };
            violations.push(format!(
                "condition (2): anti-cone {} spans {} rather than the full lattice",
                index_set_string(&ac.indices),
                detail
            ));
            break; // first violated anti-cone is the witness
        }
    }

    // Degeneracy: stability inside the cone of a rank-deficient subset.
    let mut degenerate = None;
    for s in subsets(data.n()) {
        let ws: Vec<Vec<i64>> = s.iter().map(|&i| data.weights[i].clone()).collect();
        if rank_of(&ws) < data.rank && in_cone_int(&ws, &data.stability) {
            degenerate = Some(format!(
                "stability vector lies in the cone of the rank-deficient subset {}",
                index_set_string(&s)
            ));
            break;
        }
    }

    let pass = violations.is_empty() && (degenerate.is_none() || allow_degenerate);
    Ok(ValidationReport {
        pass,
        violations,
        degenerate,
    })
}

/// All anti-cones, in lexicographic order of index sets. Upward closure
/// (a superset of an anti-cone is an anti-cone) is asserted.
pub fn compute_anticones(data: &ToricData) -> Result<Vec<Anticone>> {
    data.check_shape()?;
    let mut out = Vec::new();
    for s in subsets(data.n()) {
        let ws: Vec<Vec<i64>> = s.iter().map(|&i| data.weights[i].clone()).collect();
        if in_cone_int(&ws, &data.stability) {
            out.push(Anticone { indices: s });
        }
    }
    // upward closure
    let set: BTreeSet<&Vec<usize>> = out.iter().map(|a| &a.indices).collect();
    for a in &out {
        for extra in 0..data.n() {
            if !a.contains(extra) {
                let mut sup = a.indices.clone();
                sup.push(extra);
                sup.sort_unstable();
                debug_assert!(set.contains(&sup), "anti-cones not upward closed");
            }
        }
    }
    Ok(out)
}

/// A minimal anti-cone: K indices whose weight vectors form a Z-basis,
/// together with the exact dual basis. `dual_basis[j]` is the column vector
/// dual to `weights[indices[j]]` (integer entries since the basis is
/// unimodular).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub indices: Vec<usize>,
    pub dual_basis: Vec<Vec<i64>>,
}

impl FixedPoint {
    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// The dual-basis column attached to member index `i` (which must be in
    /// the anti-cone).
    pub fn dual_column(&self, i: usize) -> &[i64] {
        let j = self.indices.binary_search(&i).expect("index not in fixed point");
        &self.dual_basis[j]
    }
}

/// All torus-fixed points: size-K anti-cones with unimodular weight bases,
/// dual bases computed exactly. Errors if a size-K anti-cone fails the
/// determinant condition (the validator would have reported it).
pub fn fixed_points(data: &ToricData) -> Result<Vec<FixedPoint>> {
    let mut out = Vec::new();
    for ac in compute_anticones(data)? {
        if ac.indices.len() != data.rank {
            continue;
        }
        // Rows of M are the weight vectors of the anti-cone.
        let m: Vec<Vec<Q>> = ac
            .indices
            .iter()
            .map(|&i| data.weights[i].iter().map(|&x| q_from(x)).collect())
            .collect();
        let d = det(&m);
        if !(d == q_from(1) || d == q_from(-1)) {
            return Err(Error::validation(format!(
                "minimal anti-cone {} has determinant {}, expected +1 or -1",
                index_set_string(&ac.indices),
                rational_string(&d)
            )));
        }
        // Columns of M^{-1} are the dual basis vectors: row_i(M) . col_j(M^{-1}) = delta_ij.
        let inv = invert(&m)?;
        let mut dual = Vec::with_capacity(data.rank);
        for j in 0..data.rank {
            let mut col = Vec::with_capacity(data.rank);
            for row in inv.iter() {
                let q = &row[j];
                debug_assert!(q.denom().is_one(), "unimodular inverse must be integral");
                col.push(q.numer().try_into().map_err(|_| {
                    Error::internal("dual basis entry exceeds i64".to_string())
                })?);
            }
            dual.push(col);
        }
        out.push(FixedPoint {
            indices: ac.indices,
            dual_basis: dual,
        });
    }
    Ok(out)
}

/// One directed adjacency: `beta` differs from `alpha` by swapping
/// `enter_index` (in alpha only) for `exit_index` (in beta only).
/// `curve_class` is the class of the connecting orbit and `weight` its
/// scalar localization weight.
#[derive(Clone, Debug)]
pub struct AdjacencyRecord {
    pub alpha: usize,
    pub beta: usize,
    /// The unique element of beta \ alpha.
    pub exit_index: usize,
    /// The unique element of alpha \ beta.
    pub enter_index: usize,
    pub curve_class: Vec<i64>,
    pub weight: EquivariantScalar,
}

/// Combinatorial atlas: validated data, its fixed points and the full
/// adjacency graph, in deterministic order.
#[derive(Clone, Debug)]
pub struct FixedPointAtlas {
    pub data: ToricData,
    pub fixed_points: Vec<FixedPoint>,
    /// `adjacency[a]` lists records with `alpha == a`, sorted by beta.
    pub adjacency: Vec<Vec<AdjacencyRecord>>,
}

impl FixedPointAtlas {
    /// Build the atlas. The data must already pass validation.
    pub fn new(data: ToricData) -> Result<Self> {
        let fps = fixed_points(&data)?;
        if fps.is_empty() {
            return Err(Error::validation(
                "no minimal anti-cones; data does not describe a fixed-point atlas".to_string(),
            ));
        }
        let mut adjacency = Vec::with_capacity(fps.len());
        for a in 0..fps.len() {
            adjacency.push(adjacency_records(&data, &fps, a)?);
        }
        Ok(FixedPointAtlas {
            data,
            fixed_points: fps,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.data.n()
    }

    pub fn rank(&self) -> usize {
        self.data.rank
    }

    /// Locate a fixed point by its (sorted, 0-based) index set.
    pub fn fixed_point_index(&self, indices: &[usize]) -> Option<usize> {
        self.fixed_points.iter().position(|f| f.indices == indices)
    }

    /// The scalar localization weight of the restricted divisor class:
    /// for i in alpha this is 0; otherwise
    /// `-lambda_i + sum_{j in alpha} D_i(dual_j) * lambda_j`.
    pub fn restriction_weight(&self, alpha: usize, i: usize) -> EquivariantScalar {
        let n = self.n();
        let fp = &self.fixed_points[alpha];
        if fp.contains(i) {
            return EquivariantScalar::zero(n);
        }
        let mut w = EquivariantScalar::lambda(i, n).neg();
        for (j_pos, &j) in fp.indices.iter().enumerate() {
            let c = self.data.pairing(i, &fp.dual_basis[j_pos]);
            if c != 0 {
                w = w.add(&EquivariantScalar::lambda(j, n).scale(&q_from(c)));
            }
        }
        w
    }
}

/// Adjacency records for one fixed point, sorted by the other endpoint.
/// Asserts the two dual-basis formulas for the curve class agree and that
/// the weights of the two directions are opposite.
pub fn adjacency_records(
    data: &ToricData,
    fps: &[FixedPoint],
    alpha: usize,
) -> Result<Vec<AdjacencyRecord>> {
    let fa = &fps[alpha];
    let mut out = Vec::new();
    for (b, fb) in fps.iter().enumerate() {
        let diff: Vec<usize> = fb
            .indices
            .iter()
            .copied()
            .filter(|i| !fa.contains(*i))
            .collect();
        if diff.len() != 1 {
            continue;
        }
        let exit_index = diff[0]; // beta \ alpha
        let enter: Vec<usize> = fa
            .indices
            .iter()
            .copied()
            .filter(|i| !fb.contains(*i))
            .collect();
        debug_assert_eq!(enter.len(), 1);
        let enter_index = enter[0]; // alpha \ beta

        let d_from_alpha = fa.dual_column(enter_index).to_vec();
        let d_from_beta = fb.dual_column(exit_index).to_vec();
        if d_from_alpha != d_from_beta {
            return Err(Error::internal(format!(
                "curve class mismatch between dual bases of {} and {}",
                index_set_string(&fa.indices),
                index_set_string(&fb.indices)
            )));
        }

        // weight = -lambda_{exit} + sum_{j in alpha} D_exit(dual_j) lambda_j
        let n = data.n();
        let mut weight = EquivariantScalar::lambda(exit_index, n).neg();
        for (j_pos, &j) in fa.indices.iter().enumerate() {
            let c = data.pairing(exit_index, &fa.dual_basis[j_pos]);
            if c != 0 {
                weight = weight.add(&EquivariantScalar::lambda(j, n).scale(&q_from(c)));
            }
        }

        out.push(AdjacencyRecord {
            alpha,
            beta: b,
            exit_index,
            enter_index,
            curve_class: d_from_alpha,
            weight,
        });
    }
    Ok(out)
}

/// Membership in the extended effective cone: some anti-cone pairs
/// non-negatively with `ell`. For validated (non-degenerate) data it is
/// enough to scan minimal anti-cones, since every anti-cone contains one and
/// shrinking the index set enlarges the orthant.
pub fn leff_contains(fps: &[FixedPoint], data: &ToricData, ell: &[i64]) -> bool {
    fps.iter().any(|fp| {
        fp.indices
            .iter()
            .all(|&i| data.pairing(i, ell) >= 0)
    })
}

/// Degree of a lattice vector under a rational functional.
pub fn functional_degree(functional: &[Q], ell: &[i64]) -> Q {
    let mut acc = Q::zero();
    for (f, &x) in functional.iter().zip(ell) {
        acc += f * q_from(x);
    }
    acc
}

/// Enumerate all lattice points of the extended effective cone with degree
/// at most `cutoff` under `functional`, sorted; `0` is always included.
///
/// The functional must satisfy `functional(ell) >= 1` on every nonzero cone
/// point. This is certified exactly on the extreme rays of each minimal
/// anti-cone's orthant (the dual basis columns — each orthant is simplicial,
/// so these are the extreme rays, and every lattice point of the orthant is
/// a non-negative integer combination of them).
pub fn enumerate_leff(
    data: &ToricData,
    fps: &[FixedPoint],
    functional: &[Q],
    cutoff: i64,
) -> Result<Vec<Vec<i64>>> {
    if functional.len() != data.rank {
        return Err(Error::input(format!(
            "degree functional has length {}, expected {}",
            functional.len(),
            data.rank
        )));
    }
    // Positivity certificate on extreme rays.
    for fp in fps {
        for (j, ray) in fp.dual_basis.iter().enumerate() {
            let deg = functional_degree(functional, ray);
            if deg < Q::one() {
                return Err(Error::precondition(format!(
                    "degree functional takes value {} < 1 on extreme ray {:?} (dual to index {}) of the orthant at {}",
                    rational_string(&deg),
                    ray,
                    fp.indices[j] + 1,
                    index_set_string(&fp.indices)
                )));
            }
        }
    }
    let cutoff_q = q_from(cutoff);
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    found.insert(vec![0; data.rank]);
    if cutoff >= 0 {
        for fp in fps {
            // Enumerate n in Z_{>=0}^K with sum n_j * deg(ray_j) <= cutoff.
            let degs: Vec<Q> = fp
                .dual_basis
                .iter()
                .map(|r| functional_degree(functional, r))
                .collect();
            let mut counts = vec![0i64; data.rank];
            enumerate_orthant(
                &mut counts,
                0,
                &Q::zero(),
                &degs,
                &cutoff_q,
                &fp.dual_basis,
                data.rank,
                &mut found,
            );
        }
    }
    Ok(found.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
fn enumerate_orthant(
    counts: &mut Vec<i64>,
    pos: usize,
    acc_deg: &Q,
    degs: &[Q],
    cutoff: &Q,
    rays: &[Vec<i64>],
    rank: usize,
    found: &mut BTreeSet<Vec<i64>>,
) {
    if pos == rank {
        let mut ell = vec![0i64; rank];
        for (j, &c) in counts.iter().enumerate() {
            for (k, e) in ell.iter_mut().enumerate() {
                *e += c * rays[j][k];
            }
        }
        found.insert(ell);
        return;
    }
    let mut n = 0i64;
    loop {
        let deg = acc_deg + &degs[pos] * q_from(n);
        if deg > *cutoff {
            break;
        }
        counts[pos] = n;
        enumerate_orthant(counts, pos + 1, &deg, degs, cutoff, rays, rank, found);
        n += 1;
    }
    counts[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_ratio;

    pub fn p1_data() -> ToricData {
        ToricData::new(1, vec![vec![1], vec![1]], vec![q_from(1)]).unwrap()
    }

    pub fn p2_data() -> ToricData {
        ToricData::new(1, vec![vec![1], vec![1], vec![1]], vec![q_from(1)]).unwrap()
    }

    pub fn f1_data() -> ToricData {
        ToricData::new(
            2,
            vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![-1, 1]],
            vec![q_from(1), q_from(1)],
        )
        .unwrap()
    }

    pub fn p1xp1_data() -> ToricData {
        ToricData::new(
            2,
            vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
            vec![q_from(1), q_from(1)],
        )
        .unwrap()
    }

    #[test]
    fn validation_examples() {
        // P^2: passes.
        let rep = validate_smooth_toric_data(&p2_data(), false).unwrap();
        assert!(rep.pass, "{rep:?}");

        // D = (1,-1): overall pass; {2} is simply not an anti-cone.
        let d = ToricData::new(1, vec![vec![1], vec![-1]], vec![q_from(1)]).unwrap();
        let rep = validate_smooth_toric_data(&d, false).unwrap();
        assert!(rep.pass, "{rep:?}");
        let acs = compute_anticones(&d).unwrap();
        assert!(acs.iter().all(|a| a.indices != vec![1]));

        // D = (2,2): anti-cone {1} spans 2Z.
        let d = ToricData::new(1, vec![vec![2], vec![2]], vec![q_from(1)]).unwrap();
        let rep = validate_smooth_toric_data(&d, false).unwrap();
        assert!(!rep.pass);
        assert!(rep.violations.iter().any(|v| v.contains("index 2")), "{rep:?}");

        // omega = 0: degenerate, accepted only with the override.
        let d = ToricData::new(1, vec![vec![1], vec![1]], vec![q_from(0)]).unwrap();
        let rep = validate_smooth_toric_data(&d, false).unwrap();
        assert!(!rep.pass && rep.degenerate.is_some());
        let rep = validate_smooth_toric_data(&d, true).unwrap();
        assert!(rep.pass && rep.degenerate.is_some());

        // malformed input is an input error, not a validation failure
        assert!(ToricData::new(1, vec![vec![1, 2]], vec![q_from(1)]).is_err());
    }

    #[test]
    fn anticones_p2_all_subsets() {
        let acs = compute_anticones(&p2_data()).unwrap();
        assert_eq!(acs.len(), 7); // all nonempty subsets of {1,2,3}
    }

    #[test]
    fn anticones_f1_characterization() {
        let acs = compute_anticones(&f1_data()).unwrap();
        // exactly the subsets meeting {1,2} and {3,4}
        for s in subsets(4) {
            let has_fiber = s.contains(&0) || s.contains(&1);
            let has_base = s.contains(&2) || s.contains(&3);
            let is_ac = acs.iter().any(|a| a.indices == s);
            assert_eq!(is_ac, has_fiber && has_base, "subset {s:?}");
        }
    }

    #[test]
    fn fixed_points_examples() {
        let fps = fixed_points(&p2_data()).unwrap();
        let sets: Vec<Vec<usize>> = fps.iter().map(|f| f.indices.clone()).collect();
        assert_eq!(sets, vec![vec![0], vec![1], vec![2]]);
        assert!(fps.iter().all(|f| f.dual_basis == vec![vec![1]]));

        let fps = fixed_points(&f1_data()).unwrap();
        let sets: Vec<Vec<usize>> = fps.iter().map(|f| f.indices.clone()).collect();
        assert_eq!(sets, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);

        let fps = fixed_points(&p1xp1_data()).unwrap();
        assert_eq!(fps.len(), 4);
    }

    #[test]
    fn adjacency_p2_and_p1() {
        let atlas = FixedPointAtlas::new(p2_data()).unwrap();
        // alpha = {1}: beta in {2},{3}; for beta = {2}: exit 2, d = (1), weight L1 - L2.
        let recs = &atlas.adjacency[0];
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].exit_index, 1);
        assert_eq!(recs[0].curve_class, vec![1]);
        assert_eq!(recs[0].weight.to_string(), "L1 - L2");

        let atlas = FixedPointAtlas::new(p1_data()).unwrap();
        let recs = &atlas.adjacency[0];
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].curve_class, vec![1]);
        assert_eq!(recs[0].weight.to_string(), "L1 - L2");
    }

    #[test]
    fn adjacency_antisymmetry_and_dual_consistency() {
        for data in [p1_data(), p2_data(), f1_data(), p1xp1_data()] {
            let atlas = FixedPointAtlas::new(data.clone()).unwrap();
            // dual-basis consistency: D_i(dual_j) = delta_ij on every fixed point
            for fp in &atlas.fixed_points {
                for (ip, &i) in fp.indices.iter().enumerate() {
                    for (jp, _) in fp.indices.iter().enumerate() {
                        let expect = if ip == jp { 1 } else { 0 };
                        assert_eq!(data.pairing(i, &fp.dual_basis[jp]), expect);
                    }
                }
            }
            // antisymmetry of weights
            for recs in &atlas.adjacency {
                for r in recs {
                    let back = atlas.adjacency[r.beta]
                        .iter()
                        .find(|s| s.beta == r.alpha)
                        .unwrap();
                    assert!(r.weight.add(&back.weight).is_zero());
                    assert_eq!(r.curve_class, back.curve_class);
                }
            }
        }
    }

    #[test]
    fn f1_adjacency_structure() {
        let atlas = FixedPointAtlas::new(f1_data()).unwrap();
        let a13 = atlas.fixed_point_index(&[0, 2]).unwrap();
        let betas: Vec<Vec<usize>> = atlas.adjacency[a13]
            .iter()
            .map(|r| atlas.fixed_points[r.beta].indices.clone())
            .collect();
        assert_eq!(betas, vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn leff_p1_and_cutoff_zero() {
        let data = p1_data();
        let fps = fixed_points(&data).unwrap();
        let ells = enumerate_leff(&data, &fps, &[q_from(1)], 5).unwrap();
        assert_eq!(ells, (0..=5).map(|n| vec![n]).collect::<Vec<_>>());
        let ells = enumerate_leff(&data, &fps, &[q_from(1)], 0).unwrap();
        assert_eq!(ells, vec![vec![0]]);
    }

    #[test]
    fn leff_f1_membership_and_enumeration() {
        let data = f1_data();
        let fps = fixed_points(&data).unwrap();
        // (-1,1) is not in the cone: no anti-cone pairs non-negatively.
        assert!(!leff_contains(&fps, &data, &[-1, 1]));
        assert!(leff_contains(&fps, &data, &[1, 0]));
        assert!(leff_contains(&fps, &data, &[0, 1]));
        assert!(leff_contains(&fps, &data, &[1, 1]));

        let f = [q_from(1), q_from(2)];
        let ells = enumerate_leff(&data, &fps, &f, 3).unwrap();
        assert!(ells.contains(&vec![1, 0]));
        assert!(ells.contains(&vec![0, 1]));
        assert!(ells.contains(&vec![1, 1]));
        assert!(!ells.contains(&vec![-1, 1]));

        // Brute-force cross-check over a bounding box: enumeration equals
        // { ell in box : member and degree <= cutoff }.
        let mut brute = BTreeSet::new();
        for x in -8..=8i64 {
            for y in -8..=8i64 {
                let ell = vec![x, y];
                if leff_contains(&fps, &data, &ell)
                    && functional_degree(&f, &ell) <= q_from(3)
                {
                    brute.insert(ell);
                }
            }
        }
        assert_eq!(ells.iter().cloned().collect::<BTreeSet<_>>(), brute);
    }

    #[test]
    fn leff_rejects_bad_functional() {
        let data = f1_data();
        let fps = fixed_points(&data).unwrap();
        // On the orthant at {1,4} the ray (1,1) gets degree 1 - 1/2*... make
        // the second coordinate negative enough to violate positivity.
        let err = enumerate_leff(&data, &fps, &[q_from(1), q_ratio(-1, 2)], 3).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("extreme ray"), "{msg}");
    }

    #[test]
    fn enumeration_closed_under_membership() {
        for data in [p1_data(), p2_data(), f1_data(), p1xp1_data()] {
            let fps = fixed_points(&data).unwrap();
            let f = vec![q_from(1); data.rank];
            let ells = enumerate_leff(&data, &fps, &f, 4).unwrap();
            for ell in &ells {
                assert!(leff_contains(&fps, &data, ell));
            }
        }
    }
}
