//! Second-moment bookkeeping on weight-two subspaces: exact `S²` moments of
//! weight multisets and the non-negative integer linear system they give
//! for the multiplicities of conformal-weight-two modules.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::{qi, Q};
use crate::repdata::{
    affine_dominant_multiplicities, dominant_weight_system, AlgebraSpec, ModuleLabel,
};
use crate::rootsys::RootSystem;
use crate::{Error, Result};

/// `S²_{V₂}(z) = (32808 − 2 dim V₁)⟨z,z⟩` in a holomorphic theory of
/// central charge 24.
pub const WEIGHT_TWO_MOMENT: i64 = 32808;
pub const DIM_V2: i64 = 196884;

/// A Cartan vector given per component in rational Dynkin labels.
pub type CartanVector = Vec<Vec<Q>>;

/// `Σ_μ m_μ (μ|z)²` over the full weight multiset whose dominant part is
/// `dominant`.
pub fn s2_moment_component(rs: &RootSystem, dominant: &BTreeMap<Vec<i64>, u64>, z: &[Q]) -> Q {
    if z.iter().all(|x| x.is_zero()) {
        return Q::zero();
    }
    dominant
        .iter()
        .map(|(mu, &m)| {
            let s: Q = rs
                .weyl_orbit(mu)
                .iter()
                .map(|nu| {
                    let p = rs.inner_qi(z, nu);
                    p * p
                })
                .sum();
            qi(m as i64) * s
        })
        .sum()
}

/// `⟨z,z⟩ = Σ k_i (z_i|z_i)`.
pub fn level_norm(spec: &AlgebraSpec, z: &CartanVector) -> Q {
    spec.components
        .iter()
        .zip(z)
        .map(|(c, zi)| qi(c.level) * c.rs.inner(zi, zi))
        .sum()
}

/// `(dim, S²)` of a tensor product from per-factor pairs: weights add and
/// the first moments of Weyl-invariant multisets vanish, so the cross
/// terms drop out.
fn tensor_moment(parts: &[(Q, Q)]) -> (Q, Q) {
    parts.iter().fold((qi(1), Q::zero()), |(d, s), &(d2, s2)| {
        (d * d2, s * d2 + d * s2)
    })
}

/// `(dim, S²(z))` of the top level of a tensor-product module.
pub fn top_moment(spec: &AlgebraSpec, m: &ModuleLabel, z: &CartanVector) -> (Q, Q) {
    let parts: Vec<(Q, Q)> = spec
        .components
        .iter()
        .zip(&m.0)
        .zip(z)
        .map(|((c, l), zi)| {
            let ws = dominant_weight_system(&c.rs, l);
            (
                qi(c.weyl_dim(l) as i64),
                s2_moment_component(&c.rs, &ws, zi),
            )
        })
        .collect();
    tensor_moment(&parts)
}

/// `(dim, S²(z))` of the depth-`depth` subspace of the vacuum module.
pub fn vacuum_moment(spec: &AlgebraSpec, z: &CartanVector, depth: usize) -> Result<(Q, Q)> {
    let mut acc: Vec<(Q, Q)> = vec![(Q::zero(), Q::zero()); depth + 1];
    acc[0] = (qi(1), Q::zero());
    for (c, zi) in spec.components.iter().zip(z) {
        let layers = affine_dominant_multiplicities(c, &vec![0; c.rank()], depth)?;
        let local: Vec<(Q, Q)> = layers
            .iter()
            .map(|layer| {
                let d: u64 = layer.iter().map(|(mu, m)| m * c.rs.orbit_size(mu)).sum();
                (qi(d as i64), s2_moment_component(&c.rs, layer, zi))
            })
            .collect();
        acc = (0..=depth)
            .map(|n| {
                (0..=n).fold((Q::zero(), Q::zero()), |(d, s), i| {
                    let (d1, s1) = acc[i];
                    let (d2, s2) = local[n - i];
                    (d + d1 * d2, s + s1 * d2 + d1 * s2)
                })
            })
            .collect();
    }
    Ok(acc[depth])
}

/// The probe supported on one component at its long simple root of
/// largest index.
pub fn long_simple_root_probe(spec: &AlgebraSpec, component: usize) -> CartanVector {
    spec.components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i != component {
                return vec![Q::zero(); c.rank()];
            }
            let long = (0..c.rank())
                .rev()
                .find(|&j| c.rs.root_norms[j] == *c.rs.root_norms.iter().max().unwrap())
                .unwrap();
            c.rs.cartan[long].iter().map(|&x| qi(x)).collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemRow {
    pub name: String,
    pub coeffs: Vec<Q>,
    pub rhs: Q,
}

#[derive(Debug, Clone)]
pub struct MultiplicitySystem {
    pub spec: AlgebraSpec,
    pub candidates: Vec<ModuleLabel>,
    pub probes: Vec<CartanVector>,
    /// The dimension row first, then one row per probe.
    pub rows: Vec<SystemRow>,
    pub vacuum_dim_v2: Q,
}

/// Sets up the equations on the multiplicities of the conformal-weight-two
/// modules `candidates` in a holomorphic extension of `spec`.  Modules of
/// conformal weight at least 3 do not reach the weight-two subspace.
pub fn weight_two_system(
    spec: &AlgebraSpec,
    candidates: &[ModuleLabel],
    probes: &[CartanVector],
) -> Result<MultiplicitySystem> {
    for m in candidates {
        spec.check(m)?;
        if spec.conformal_weight(m) != qi(2) {
            return Err(Error::Domain(format!(
                "{m} does not have conformal weight 2"
            )));
        }
    }
    let zero: CartanVector = spec
        .components
        .iter()
        .map(|c| vec![Q::zero(); c.rank()])
        .collect();
    let (vac_dim, _) = vacuum_moment(spec, &zero, 2)?;
    let mut rows = vec![SystemRow {
        name: "dim V2".into(),
        coeffs: candidates
            .iter()
            .map(|m| top_moment(spec, m, &zero).0)
            .collect(),
        rhs: qi(DIM_V2) - vac_dim,
    }];
    let dim_v1 = spec.dim() as i64;
    for z in probes {
        let (_, vac_s2) = vacuum_moment(spec, z, 2)?;
        let total = qi(WEIGHT_TWO_MOMENT - 2 * dim_v1) * level_norm(spec, z);
        rows.push(SystemRow {
            name: format!("S2 at {}", fmt_cartan(z)),
            coeffs: candidates
                .iter()
                .map(|m| top_moment(spec, m, z).1)
                .collect(),
            rhs: total - vac_s2,
        });
    }
    Ok(MultiplicitySystem {
        spec: spec.clone(),
        candidates: candidates.to_vec(),
        probes: probes.to_vec(),
        rows,
        vacuum_dim_v2: vac_dim,
    })
}

pub fn fmt_cartan(z: &CartanVector) -> String {
    z.iter()
        .map(|c| {
            let xs: Vec<String> = c.iter().map(crate::rational::fmt_q).collect();
            format!("[{}]", xs.join(","))
        })
        .collect::<Vec<_>>()
        .join("x")
}

/// Every non-negative integer solution of the system.  All coefficients are
/// non-negative, so the running right-hand sides prune the search.
pub fn solve_multiplicities(sys: &MultiplicitySystem) -> Result<Vec<Vec<u64>>> {
    let n = sys.candidates.len();
    if sys
        .rows
        .iter()
        .any(|r| r.coeffs.iter().any(|c| *c < Q::zero()))
    {
        return Err(Error::Domain(
            "negative coefficient in multiplicity system".into(),
        ));
    }
    if n > 0 && (0..n).any(|j| sys.rows.iter().all(|r| r.coeffs[j].is_zero())) {
        return Err(Error::Domain("unbounded multiplicity".into()));
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; n];
    let rhs: Vec<Q> = sys.rows.iter().map(|r| r.rhs).collect();
    search(sys, 0, &rhs, &mut cur, &mut out);
    Ok(out)
}

fn search(
    sys: &MultiplicitySystem,
    j: usize,
    rhs: &[Q],
    cur: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if rhs.iter().any(|r| *r < Q::zero()) {
        return;
    }
    if j == cur.len() {
        if rhs.iter().all(|r| r.is_zero()) {
            out.push(cur.clone());
        }
        return;
    }
    // A row with no weight left on the remaining unknowns must already balance.
    for (r, row) in rhs.iter().zip(&sys.rows) {
        if !r.is_zero() && row.coeffs[j..].iter().all(|c| c.is_zero()) {
            return;
        }
    }
    let bound = sys
        .rows
        .iter()
        .zip(rhs)
        .filter(|(row, _)| !row.coeffs[j].is_zero())
        .map(|(row, r)| (r / row.coeffs[j]).floor().to_integer())
        .min()
        .unwrap_or(0)
        .max(0) as u64;
    for m in 0..=bound {
        cur[j] = m;
        let next: Vec<Q> = rhs
            .iter()
            .zip(&sys.rows)
            .map(|(r, row)| r - row.coeffs[j] * qi(m as i64))
            .collect();
        search(sys, j + 1, &next, cur, out);
    }
    cur[j] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repdata::weight_system;

    #[test]
    fn orbit_moment_matches_invariant_form() {
        for (t, mu) in [
            ("C3", vec![1, 0, 2]),
            ("G2", vec![1, 1]),
            ("A3", vec![2, 0, 1]),
        ] {
            let rs = RootSystem::parse(t).unwrap();
            let z: Vec<Q> = rs.cartan[0].iter().map(|&x| qi(x)).collect();
            let orbit = rs.weyl_orbit(&mu);
            let direct: Q = orbit
                .iter()
                .map(|nu| {
                    let p = rs.inner_qi(&z, nu);
                    p * p
                })
                .sum();
            let formula = qi(orbit.len() as i64) * rs.inner(&z, &z) * rs.inner_i(&mu, &mu)
                / qi(rs.rank() as i64);
            assert_eq!(direct, formula, "{t}");
        }
    }

    #[test]
    fn adjoint_moment_is_twice_dual_coxeter() {
        let rs = RootSystem::parse("D4").unwrap();
        let ws = dominant_weight_system(&rs, &rs.theta);
        let z: Vec<Q> = rs.cartan[1].iter().map(|&x| qi(x)).collect();
        let s2 = s2_moment_component(&rs, &ws, &z);
        assert_eq!(s2, qi(2 * rs.dual_coxeter) * rs.inner(&z, &z));
        assert_eq!(weight_system(&rs, &[0, 1, 0, 0]).total(), 28);
    }

    #[test]
    fn vacuum_depth_one_is_adjoint() {
        let spec = AlgebraSpec::parse("A1_1+G2_2").unwrap();
        let z = long_simple_root_probe(&spec, 0);
        let (d, s) = vacuum_moment(&spec, &z, 1).unwrap();
        assert_eq!(d, qi(17));
        // roots ±α of A1 give 2·(α|α)² = 8
        assert_eq!(s, qi(8));
    }

    #[test]
    fn single_candidate_system() {
        let spec = AlgebraSpec::parse("A1_1").unwrap();
        let sys = MultiplicitySystem {
            spec: spec.clone(),
            candidates: vec![spec.vacuum()],
            probes: vec![],
            rows: vec![SystemRow {
                name: "dim".into(),
                coeffs: vec![qi(7)],
                rhs: qi(7),
            }],
            vacuum_dim_v2: Q::zero(),
        };
        assert_eq!(solve_multiplicities(&sys).unwrap(), vec![vec![1]]);
    }
}
