//! Irreducible modules of cyclic simple current extensions.
//!
//! A simple current `J` of the base algebra generates a cyclic group `D`
//! acting on base labels by fusion.  Each `D`-orbit with stabilizer `D_W`
//! carries `|D_W|` inequivalent extension modules, and it is untwisted when
//! all conformal weights in the orbit agree modulo 1.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::modular::Modular;
use crate::rational::Q;
use crate::repdata::{AlgebraSpec, ModuleLabel};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct ExtensionSpec {
    pub modular: Modular,
    pub generator: usize,
    /// Label indices of `J^0, J^1, …, J^{n-1}`.
    pub group: Vec<usize>,
    /// Permutation of label indices by fusion with `J`.
    pub action: Vec<usize>,
}

impl ExtensionSpec {
    pub fn base(&self) -> &AlgebraSpec {
        &self.modular.spec
    }

    pub fn order(&self) -> usize {
        self.group.len()
    }

    pub fn group_labels(&self) -> Vec<ModuleLabel> {
        self.group.iter().map(|&i| self.modular.label(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionModule {
    /// Base labels in the orbit, starting from the smallest label index.
    pub orbit: Vec<ModuleLabel>,
    pub orbit_indices: Vec<usize>,
    pub stabilizer_order: usize,
    pub character_index: usize,
    pub conformal_weight: Q,
    pub untwisted: bool,
    pub qdim_ext: f64,
}

/// Builds the extension generated by the simple current `generator`.
pub fn build_extension(base: &AlgebraSpec, generator: &ModuleLabel) -> Result<ExtensionSpec> {
    let modular = Modular::new(base)?;
    let j = modular.index_of(generator)?;
    let action = modular.current_action(j)?;
    let vac = 0;
    let mut group = vec![vac];
    let mut cur = action[vac];
    while cur != vac {
        group.push(cur);
        cur = action[cur];
    }
    for &g in &group {
        let h = modular.h(g);
        if !h.is_integer() {
            return Err(Error::NotVoaExtension(format!(
                "{} has conformal weight {h}",
                modular.label(g)
            )));
        }
    }
    Ok(ExtensionSpec {
        modular,
        generator: j,
        group,
        action,
    })
}

/// Orbits of the label set under the generator, each listed from its
/// smallest index, in order of that index.
pub fn orbits(ext: &ExtensionSpec) -> Vec<Vec<usize>> {
    let n = ext.modular.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orb = vec![start];
        seen[start] = true;
        let mut cur = ext.action[start];
        while cur != start {
            seen[cur] = true;
            orb.push(cur);
            cur = ext.action[cur];
        }
        out.push(orb);
    }
    out
}

pub fn classify_extension_modules(
    ext: &ExtensionSpec,
    untwisted_only: bool,
) -> Vec<ExtensionModule> {
    let m = &ext.modular;
    let order = ext.order();
    let mut out = Vec::new();
    for orb in orbits(ext) {
        let hs: Vec<Q> = orb.iter().map(|&i| m.h(i)).collect();
        let untwisted = hs.iter().all(|h| (h - hs[0]).is_integer());
        if untwisted_only && !untwisted {
            continue;
        }
        let stabilizer_order = order / orb.len();
        let conformal_weight = *hs.iter().min().unwrap();
        let qdim_ext = orb.iter().map(|&i| m.qdim(i)).sum::<f64>() / order as f64;
        let labels: Vec<ModuleLabel> = orb.iter().map(|&i| m.label(i)).collect();
        for character_index in 0..stabilizer_order {
            out.push(ExtensionModule {
                orbit: labels.clone(),
                orbit_indices: orb.clone(),
                stabilizer_order,
                character_index,
                conformal_weight,
                untwisted,
                qdim_ext,
            });
        }
    }
    out
}

/// Decomposition of an untwisted extension module over the base algebra;
/// in the cyclic case every orbit member occurs once.
pub fn extension_branching(x: &ExtensionModule) -> Result<Vec<(ModuleLabel, u64)>> {
    if !x.untwisted {
        return Err(Error::Domain(
            "branching is only defined for untwisted modules".into(),
        ));
    }
    Ok(x.orbit.iter().map(|l| (l.clone(), 1)).collect())
}

/// Orbit-partition check: the orbits cover every base label exactly once
/// and `|orbit| · |D_W| = |D|` for each.
pub fn partition_holds(ext: &ExtensionSpec) -> bool {
    let orbs = orbits(ext);
    let total: usize = orbs.iter().map(|o| o.len()).sum();
    let distinct: BTreeSet<usize> = orbs.iter().flatten().copied().collect();
    total == ext.modular.len()
        && distinct.len() == total
        && orbs.iter().all(|o| ext.order().is_multiple_of(o.len()))
}

/// Untwisted modules whose conformal weight is an integer at least 2.
pub fn integral_weight_at_least_two(mods: &[ExtensionModule]) -> Vec<&ExtensionModule> {
    mods.iter()
        .filter(|x| {
            x.untwisted
                && x.conformal_weight.is_integer()
                && x.conformal_weight >= Q::from_integer(2)
        })
        .collect()
}

/// Extension-level contragredient: the orbit containing the duals.
pub fn contragredient_orbit(ext: &ExtensionSpec, x: &ExtensionModule) -> Vec<usize> {
    let mut dual: Vec<usize> = x
        .orbit_indices
        .iter()
        .map(|&i| ext.modular.contragredient(i))
        .collect();
    dual.sort();
    dual
}

pub fn is_vacuum_module(x: &ExtensionModule) -> bool {
    x.conformal_weight.is_zero() && x.orbit_indices.contains(&0)
}
