//! Bookkeeping for `ℤ₂`-orbifolds of holomorphic VOAs of central charge 24
//! by inner automorphisms: the dimension formula, the Schellekens identity,
//! the twisted-weight certificate, weight-two multiplicity systems and
//! quantum-dimension partition checks.

pub mod multiplicity;
pub mod quadratic;

use num_traits::Zero;

use crate::innerauto::{
    fixed_subalgebra, pairing, sigma_order, twisted_conformal_weight, TwistVector,
};
use crate::modular::qdim_sine;
use crate::rational::{fmt_q, parse_q, qi, Q};
use crate::repdata::{graded_dim_component, AlgebraSpec, Component, ModuleLabel};
use crate::scext::ExtensionModule;
use crate::{Error, Result};

pub use multiplicity::{solve_multiplicities, weight_two_system, MultiplicitySystem};
pub use quadratic::{qdim_partition_check, QuadraticNumber};

const TABLE6: &str = include_str!("../../data/table6.tsv");
const MIRROR_PAIRS: &str = include_str!("../../data/mirror_pairs.tsv");
const CENSUS_TABLES: [&str; 5] = [
    include_str!("../../data/census_C4_10.tsv"),
    include_str!("../../data/census_D7_3.tsv"),
    include_str!("../../data/census_C7_2.tsv"),
    include_str!("../../data/census_D5_4.tsv"),
    include_str!("../../data/census_E6_4.tsv"),
];

fn data_lines(s: &str) -> impl Iterator<Item = Vec<&str>> {
    s.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.split('\t').collect())
}

fn field<'a>(cells: &[&'a str], i: usize) -> Result<&'a str> {
    cells
        .get(i)
        .copied()
        .ok_or_else(|| Error::Parse(format!("missing column {i} in {cells:?}")))
}

fn parse_int<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

/// `3a − b − c + 24` with `a = dim V₁^g`, `b = dim V(g)_{1/2}`, `c = dim V₁`.
pub fn orbifold_dim_v1(dim_fixed_v1: i64, dim_twisted_half: i64, dim_v1: i64) -> i64 {
    3 * dim_fixed_v1 - dim_twisted_half - dim_v1 + 24
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdealCheck {
    pub ideal: String,
    pub ratio: Q,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchellekensReport {
    pub target: Q,
    pub ideals: Vec<IdealCheck>,
    pub dims_match: bool,
}

impl SchellekensReport {
    pub fn holds(&self) -> bool {
        self.dims_match && self.ideals.iter().all(|i| i.holds)
    }
}

/// Checks `h∨/k = (dim V₁ − 24)/24` on every simple ideal and that the
/// ideals exhaust `dim V₁`.
pub fn schellekens_check(spec: &AlgebraSpec, dim_v1: usize) -> SchellekensReport {
    let target = Q::new(dim_v1 as i64 - 24, 24);
    let ideals = spec
        .components
        .iter()
        .zip(spec.dual_coxeter_over_level())
        .map(|(c, ratio)| IdealCheck {
            ideal: c.to_string(),
            ratio,
            holds: ratio == target,
        })
        .collect();
    SchellekensReport {
        target,
        ideals,
        dims_match: spec.dim() == dim_v1,
    }
}

/// Labels with integral conformal weight at least 2, in label order.
pub fn integral_census(spec: &AlgebraSpec) -> Vec<ModuleLabel> {
    spec.level_weights()
        .into_iter()
        .filter(|m| {
            let h = spec.conformal_weight(m);
            h.is_integer() && h >= qi(2)
        })
        .collect()
}

/// Labels of conformal weight exactly `h`.
pub fn labels_of_weight(spec: &AlgebraSpec, h: Q) -> Vec<ModuleLabel> {
    spec.level_weights()
        .into_iter()
        .filter(|m| spec.conformal_weight(m) == h)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusRow {
    pub label: ModuleLabel,
    pub conformal_weight: Q,
    pub pairing: Q,
    pub twisted_cw: Q,
}

pub fn census_rows(spec: &AlgebraSpec, u: &TwistVector) -> Result<Vec<CensusRow>> {
    integral_census(spec)
        .into_iter()
        .map(|m| {
            Ok(CensusRow {
                conformal_weight: spec.conformal_weight(&m),
                pairing: pairing(spec, u, &m),
                twisted_cw: twisted_conformal_weight(spec, &m, u)?,
                label: m,
            })
        })
        .collect()
}

/// The bundled published census for `spec`, if one is available.
pub fn published_census(spec: &AlgebraSpec) -> Result<Option<Vec<CensusRow>>> {
    let name = spec.to_string();
    for table in CENSUS_TABLES {
        let head = table.lines().next().unwrap_or_default();
        if head.trim_start_matches('#').trim() != name {
            continue;
        }
        let rows = data_lines(table)
            .map(|c| {
                Ok(CensusRow {
                    label: spec.parse_label(field(&c, 0)?)?,
                    conformal_weight: parse_q(field(&c, 1)?)?,
                    pairing: parse_q(field(&c, 2)?)?,
                    twisted_cw: parse_q(field(&c, 3)?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Some(rows));
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionI {
    pub order: u64,
    pub min_twisted_cw: Q,
    pub certified: bool,
    pub failures: Vec<String>,
}

/// Twisted conformal weights over the vacuum and `candidates` must lie in
/// `(1/2)ℤ_{>0}` with `σ_u` of order 2; a minimum of at least 1 certifies
/// that the twisted module has no weight-½ space.
pub fn condition_i_certificate(
    spec: &AlgebraSpec,
    u: &TwistVector,
    candidates: &[ModuleLabel],
) -> Result<ConditionI> {
    let mut modules = vec![spec.vacuum()];
    modules.extend(candidates.iter().cloned());
    let order = sigma_order(spec, u, &modules);
    let mut failures = Vec::new();
    if order != 2 {
        failures.push(format!("sigma_u has order {order}"));
    }
    let mut min = None::<Q>;
    for m in &modules {
        let t = twisted_conformal_weight(spec, m, u)?;
        if t <= Q::zero() || !(t * qi(2)).is_integer() {
            failures.push(format!("{m}: twisted conformal weight {}", fmt_q(&t)));
        }
        min = Some(min.map_or(t, |x: Q| x.min(t)));
    }
    let min_twisted_cw = min.unwrap_or_else(Q::zero);
    if min_twisted_cw < qi(1) {
        failures.push(format!(
            "minimum twisted conformal weight {} is below 1",
            fmt_q(&min_twisted_cw)
        ));
    }
    Ok(ConditionI {
        order,
        min_twisted_cw,
        certified: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbifoldReport {
    pub spec: AlgebraSpec,
    pub u: TwistVector,
    pub twist_norm: Q,
    pub fixed: String,
    pub dim_v1: i64,
    pub dim_fixed_v1: i64,
    /// Certified zero when every twisted conformal weight is at least 1.
    pub dim_twisted_half: Option<i64>,
    pub condition_i: ConditionI,
    pub dim_tilde_v1: Option<i64>,
}

pub fn orbifold_report(spec: &AlgebraSpec, u: &TwistVector) -> Result<OrbifoldReport> {
    let fixed = fixed_subalgebra(spec, u)?;
    let cond = condition_i_certificate(spec, u, &integral_census(spec))?;
    let dim_v1 = spec.dim() as i64;
    let dim_fixed_v1 = fixed.dim as i64;
    let dim_twisted_half = cond.certified.then_some(0);
    Ok(OrbifoldReport {
        spec: spec.clone(),
        u: u.clone(),
        twist_norm: crate::innerauto::twist_norm(spec, u),
        fixed: fixed.to_string(),
        dim_v1,
        dim_fixed_v1,
        dim_tilde_v1: dim_twisted_half.map(|b| orbifold_dim_v1(dim_fixed_v1, b, dim_v1)),
        dim_twisted_half,
        condition_i: cond,
    })
}

/// One published row of the orbifold table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table6Case {
    pub spec: AlgebraSpec,
    pub dim_v1: usize,
    pub u: TwistVector,
    pub twist_norm: Q,
    pub fixed: String,
    pub fixed_dim: usize,
    pub orbifold_type: AlgebraSpec,
    pub orbifold_dim: i64,
}

pub fn table6_cases() -> Result<Vec<Table6Case>> {
    data_lines(TABLE6)
        .map(|c| {
            Ok(Table6Case {
                spec: AlgebraSpec::parse(field(&c, 0)?)?,
                dim_v1: parse_int(field(&c, 1)?)?,
                u: TwistVector::parse(field(&c, 2)?)?,
                twist_norm: parse_q(field(&c, 3)?)?,
                fixed: field(&c, 4)?.to_string(),
                fixed_dim: parse_int(field(&c, 5)?)?,
                orbifold_type: AlgebraSpec::parse(field(&c, 6)?)?,
                orbifold_dim: parse_int(field(&c, 7)?)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorPair {
    pub a: Vec<i64>,
    pub psi: Vec<i64>,
    pub conformal_weight: Q,
    pub dim1: u128,
}

pub fn mirror_pairs() -> Result<Vec<MirrorPair>> {
    let vec = |s: &str| ModuleLabel::parse(s).map(|m| m.0.into_iter().next().unwrap_or_default());
    data_lines(MIRROR_PAIRS)
        .map(|c| {
            Ok(MirrorPair {
                a: vec(field(&c, 0)?)?,
                psi: vec(field(&c, 1)?)?,
                conformal_weight: parse_q(field(&c, 2)?)?,
                dim1: parse_int(field(&c, 3)?)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorRow {
    pub pair: MirrorPair,
    pub qdim_a: f64,
    pub qdim_psi: f64,
    pub conformal_weight: Q,
    pub dim1: u128,
}

impl MirrorRow {
    pub fn qdim_ok(&self) -> bool {
        (self.qdim_a - self.qdim_psi).abs() < crate::modular::QDIM_TOL * self.qdim_a.max(1.0)
    }

    pub fn cw_ok(&self) -> bool {
        self.conformal_weight == self.pair.conformal_weight
    }

    pub fn dim1_ok(&self) -> bool {
        self.dim1 == self.pair.dim1
    }

    pub fn passes(&self) -> bool {
        self.qdim_ok() && self.cw_ok() && self.dim1_ok()
    }
}

/// Dimension of the conformal-weight-one subspace of `L(k, λ)`.
pub fn weight_one_dim(comp: &Component, lambda: &[i64]) -> Result<u128> {
    let h = comp.conformal_weight(lambda);
    if !h.is_integer() || h > qi(1) {
        return Ok(0);
    }
    let depth = (qi(1) - h).to_integer() as usize;
    Ok(graded_dim_component(comp, lambda, depth)?[depth])
}

/// Checks the quantum dimension, conformal weight and weight-one dimension
/// columns of mirror pairs between `A3_8` and `A7_4`.
pub fn mirror_consistency(pairs: &[MirrorPair]) -> Result<Vec<MirrorRow>> {
    let left = AlgebraSpec::parse("A3_8")?.components.remove(0);
    let right = AlgebraSpec::parse("A7_4")?.components.remove(0);
    pairs
        .iter()
        .map(|p| {
            for (c, l) in [(&left, &p.a), (&right, &p.psi)] {
                if l.len() != c.rank() || !c.is_admissible(l) {
                    return Err(Error::NotAdmissible {
                        weight: format!("{l:?}"),
                        level: c.level,
                    });
                }
            }
            Ok(MirrorRow {
                pair: p.clone(),
                qdim_a: qdim_sine(&left, &p.a),
                qdim_psi: qdim_sine(&right, &p.psi),
                conformal_weight: left.conformal_weight(&p.a),
                dim1: weight_one_dim(&left, &p.a)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    pub squares: Vec<QuadraticNumber>,
    pub total: QuadraticNumber,
    pub balanced: bool,
}

/// Recognizes the squared quantum dimensions of extension modules in
/// `ℚ(√d)` and runs the exact balanced-partition test on them.
pub fn qdim_square_partition(mods: &[ExtensionModule], d: i64) -> Result<PartitionReport> {
    let squares = mods
        .iter()
        .map(|m| {
            let x = m.qdim_ext * m.qdim_ext;
            QuadraticNumber::recognize(x, d, 4, 1000, 1e-7 * x.max(1.0))
                .ok_or_else(|| Error::Numerical(format!("qdim² {x} not recognized in Q(√{d})")))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = squares
        .iter()
        .fold(QuadraticNumber::rational(Q::zero(), d), |s, &v| s + v);
    let balanced = qdim_partition_check(&squares)?;
    Ok(PartitionReport {
        squares,
        total,
        balanced,
    })
}
