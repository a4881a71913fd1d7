//! Low-depth weight multiplicities of integrable affine modules via the
//! affine Freudenthal recursion.
//!
//! A weight at depth `n` with finite part `μ` is `λ̂ − nδ + (μ − λ)`.  The
//! positive affine roots are `β + mδ` (real, multiplicity one, `m ≥ 1` or
//! `m = 0, β > 0`) and `mδ` (imaginary, multiplicity equal to the rank).

use std::collections::BTreeMap;

use super::freudenthal::{dominant_below, rho_norm};
use super::{AlgebraSpec, Component, ModuleLabel};
use crate::{Error, Result};

pub const MAX_DEPTH: usize = 4;

type Layer = BTreeMap<Vec<i64>, u64>;

/// Dominant weight multiplicities of `L(k, λ)` at depths `0..=depth`.
pub fn affine_dominant_multiplicities(
    comp: &Component,
    lambda: &[i64],
    depth: usize,
) -> Result<Vec<Layer>> {
    if depth > MAX_DEPTH {
        return Err(Error::DepthTooLarge(depth));
    }
    let rs = &comp.rs;
    let d = rs.gram_scale as i128;
    let k = comp.level as i128;
    let kappa = comp.kappa() as i128;
    let rank = rs.rank() as i128;
    let top = rho_norm(rs, lambda) as i128;
    let roots = rs.all_roots_dynkin();
    let mut layers: Vec<Layer> = Vec::with_capacity(depth + 1);

    let lookup = |layers: &[Layer], cur: &Layer, n: usize, at: usize, nu: &[i64]| -> i128 {
        let dom = rs.dominant(nu).0;
        let layer = if at == n { cur } else { &layers[at] };
        layer.get(&dom).copied().unwrap_or(0) as i128
    };

    for n in 0..=depth {
        let shifted: Vec<i64> = lambda
            .iter()
            .zip(&rs.theta)
            .map(|(l, t)| l + n as i64 * t)
            .collect();
        let mut cands = dominant_below(rs, &shifted);
        cands.sort_by_key(|mu| std::cmp::Reverse(rho_norm(rs, mu)));
        let mut cur: Layer = BTreeMap::new();
        for mu in &cands {
            if n == 0 && mu.as_slice() == lambda {
                cur.insert(mu.clone(), 1);
                continue;
            }
            let lhs = top - rho_norm(rs, mu) as i128 + 2 * n as i128 * kappa * d;
            let mut rhs: i128 = 0;
            for b in &rs.positive_roots_dynkin {
                let mut nu = mu.clone();
                loop {
                    for (x, y) in nu.iter_mut().zip(b) {
                        *x += y;
                    }
                    let m = lookup(&layers, &cur, n, n, &nu);
                    if m == 0 {
                        break;
                    }
                    rhs += 2 * m * rs.inner_scaled(&nu, b) as i128;
                }
            }
            for m in 1..=n {
                for b in &roots {
                    let mut nu = mu.clone();
                    let mut j = 1;
                    while j * m <= n {
                        for (x, y) in nu.iter_mut().zip(b) {
                            *x += y;
                        }
                        let mult = lookup(&layers, &cur, n, n - j * m, &nu);
                        rhs += 2 * mult * (rs.inner_scaled(&nu, b) as i128 + d * k * m as i128);
                        j += 1;
                    }
                }
                let mut j = 1;
                while j * m <= n {
                    let mult = lookup(&layers, &cur, n, n - j * m, mu);
                    rhs += 2 * rank * mult * d * k * m as i128;
                    j += 1;
                }
            }
            if lhs <= 0 {
                assert_eq!(
                    rhs, 0,
                    "non-weight {mu:?} at depth {n} received multiplicity"
                );
                continue;
            }
            assert_eq!(
                rhs % lhs,
                0,
                "affine Freudenthal quotient not integral at {mu:?}, depth {n}"
            );
            let m = rhs / lhs;
            assert!(m >= 0);
            if m > 0 {
                cur.insert(mu.clone(), m as u64);
            }
        }
        layers.push(cur);
    }
    Ok(layers)
}

/// Dimensions of the depth-`0..=depth` subspaces of one simple component.
pub fn graded_dim_component(comp: &Component, lambda: &[i64], depth: usize) -> Result<Vec<u128>> {
    let layers = affine_dominant_multiplicities(comp, lambda, depth)?;
    Ok(layers
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|(mu, m)| *m as u128 * comp.rs.orbit_size(mu) as u128)
                .sum()
        })
        .collect())
}

/// Graded dimensions of a tensor-product module at depths `0..=depth`.
pub fn graded_dim(spec: &AlgebraSpec, m: &ModuleLabel, depth: usize) -> Result<Vec<u128>> {
    spec.check(m)?;
    let mut acc = vec![0u128; depth + 1];
    acc[0] = 1;
    for (c, l) in spec.components.iter().zip(&m.0) {
        let g = graded_dim_component(c, l, depth)?;
        acc = convolve(&acc, &g);
    }
    Ok(acc)
}

pub(crate) fn convolve(a: &[u128], b: &[u128]) -> Vec<u128> {
    (0..a.len())
        .map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum())
        .collect()
}
