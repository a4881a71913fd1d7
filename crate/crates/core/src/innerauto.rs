//! Inner automorphisms `σ_u = exp(−2πi u₍₀₎)` attached to a rational Cartan
//! vector `u`, their fixed-point subalgebras and the conformal weights of
//! the associated twisted modules.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::rational::{fmt_q, parse_q, qi, Q};
use crate::repdata::{dominant_weight_system, parse_bracket_list, AlgebraSpec, ModuleLabel};
use crate::rootsys::CartanType;
use crate::{Error, Result};

/// Per-component rational Dynkin labels, rendered `[0,1/2]x[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistVector(pub Vec<Vec<Q>>);

impl TwistVector {
    pub fn parse(s: &str) -> Result<Self> {
        parse_bracket_list(s)?
            .into_iter()
            .map(|p| p.iter().map(|x| parse_q(x)).collect())
            .collect::<Result<Vec<_>>>()
            .map(TwistVector)
    }

    pub fn zero(spec: &AlgebraSpec) -> Self {
        TwistVector(
            spec.components
                .iter()
                .map(|c| vec![Q::zero(); c.rank()])
                .collect(),
        )
    }

    pub fn check(&self, spec: &AlgebraSpec) -> Result<()> {
        if self.0.len() != spec.len() {
            return Err(Error::DimensionMismatch {
                expected: spec.len(),
                got: self.0.len(),
            });
        }
        for (c, u) in spec.components.iter().zip(&self.0) {
            if u.len() != c.rank() {
                return Err(Error::DimensionMismatch {
                    expected: c.rank(),
                    got: u.len(),
                });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero())
    }
}

impl fmt::Display for TwistVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|c| {
                let xs: Vec<String> = c.iter().map(fmt_q).collect();
                format!("[{}]", xs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// `⟨u|u⟩ = Σ k_i (u_i|u_i)`.
pub fn twist_norm(spec: &AlgebraSpec, u: &TwistVector) -> Q {
    spec.components
        .iter()
        .zip(&u.0)
        .map(|(c, ui)| qi(c.level) * c.rs.inner(ui, ui))
        .sum()
}

/// `(u|Λ) = Σ (u_i|λ_i)`, without level factors.
pub fn pairing(spec: &AlgebraSpec, u: &TwistVector, m: &ModuleLabel) -> Q {
    spec.components
        .iter()
        .zip(&u.0)
        .zip(&m.0)
        .map(|((c, ui), li)| c.rs.inner_qi(ui, li))
        .sum()
}

/// Smallest `n` with every `(u|α_i)` and every `(u|λ)` in `(1/n)ℤ`.
pub fn sigma_order(spec: &AlgebraSpec, u: &TwistVector, modules: &[ModuleLabel]) -> u64 {
    let mut n: i64 = 1;
    for (c, ui) in spec.components.iter().zip(&u.0) {
        for row in &c.rs.cartan {
            n = n.lcm(c.rs.inner_qi(ui, row).denom());
        }
    }
    for m in modules {
        n = n.lcm(pairing(spec, u, m).denom());
    }
    n as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSubalgebra {
    pub simple_parts: Vec<(CartanType, i64)>,
    pub u1_count: usize,
    pub dim: usize,
}

impl fmt::Display for FixedSubalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .simple_parts
            .iter()
            .map(|(t, k)| format!("{t}_{k}"))
            .collect();
        match self.u1_count {
            0 => {}
            1 => parts.push("U1".into()),
            n => parts.push(format!("U1^{n}")),
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Fixed points of `σ_u` on the weight-one Lie algebra: the roots with
/// `(u|α) ∈ ℤ` together with the Cartan subalgebra.
pub fn fixed_subalgebra(spec: &AlgebraSpec, u: &TwistVector) -> Result<FixedSubalgebra> {
    u.check(spec)?;
    let mut parts = Vec::new();
    let mut roots_total = 0;
    for (c, ui) in spec.components.iter().zip(&u.0) {
        let roots: Vec<Vec<i64>> =
            c.rs.all_roots_dynkin()
                .into_iter()
                .filter(|r| c.rs.inner_qi(ui, r).is_integer())
                .collect();
        roots_total += roots.len();
        for comp in c.rs.classify_subsystem(&roots)? {
            let k = qi(2 * c.level) / comp.long_norm;
            if !k.is_integer() {
                return Err(Error::Domain(format!(
                    "non-integral level {k} for fixed component {}",
                    comp.ctype
                )));
            }
            parts.push((comp.ctype, k.to_integer()));
        }
    }
    parts.sort_by(|(t1, k1), (t2, k2)| {
        t1.family
            .cmp(&t2.family)
            .then(t2.rank.cmp(&t1.rank))
            .then(k2.cmp(k1))
    });
    let rank = spec.total_rank();
    let simple_rank: usize = parts.iter().map(|(t, _)| t.rank).sum();
    Ok(FixedSubalgebra {
        simple_parts: parts,
        u1_count: rank - simple_rank,
        dim: roots_total + rank,
    })
}

/// Checks `(u|α) ≥ −1` for every root of every component.
pub fn check_twist_hypothesis(spec: &AlgebraSpec, u: &TwistVector) -> Result<()> {
    u.check(spec)?;
    for (c, ui) in spec.components.iter().zip(&u.0) {
        for r in c.rs.all_roots_dynkin() {
            let v = c.rs.inner_qi(ui, &r);
            if v < qi(-1) {
                return Err(Error::TwistHypothesis {
                    root: format!("{r:?} in {c}"),
                    value: fmt_q(&v),
                });
            }
        }
    }
    Ok(())
}

/// `min{(u|μ) : μ ∈ Π(λ)}` over the Freudenthal weight system; on each
/// dominant weight the orbit minimum is `−(dom(−u)|μ)`.
pub fn min_pairing_over_weights(spec: &AlgebraSpec, u: &TwistVector, m: &ModuleLabel) -> Q {
    spec.components
        .iter()
        .zip(&u.0)
        .zip(&m.0)
        .map(|((c, ui), li)| {
            let neg: Vec<Q> = ui.iter().map(|x| -x).collect();
            let v = c.rs.dominant(&neg).0;
            dominant_weight_system(&c.rs, li)
                .keys()
                .map(|mu| -c.rs.inner_qi(&v, mu))
                .min()
                .unwrap()
        })
        .sum()
}

/// Lowest conformal weight of the `σ_u`-twisted module obtained from `m`.
pub fn twisted_conformal_weight(spec: &AlgebraSpec, m: &ModuleLabel, u: &TwistVector) -> Result<Q> {
    spec.check(m)?;
    check_twist_hypothesis(spec, u)?;
    Ok(spec.conformal_weight(m)
        + min_pairing_over_weights(spec, u, m)
        + twist_norm(spec, u) / qi(2))
}

/// Weight of a vector of weight `μ` after the twist: `μ_i + k_i u_i`.
pub fn twisted_weight_shift(spec: &AlgebraSpec, mu: &[Vec<Q>], u: &TwistVector) -> Vec<Vec<Q>> {
    spec.components
        .iter()
        .zip(mu)
        .zip(&u.0)
        .map(|((c, m), ui)| m.iter().zip(ui).map(|(a, b)| a + qi(c.level) * b).collect())
        .collect()
}

/// Lowest weight `w₀λ` of each component.
pub fn lowest_weight(spec: &AlgebraSpec, m: &ModuleLabel) -> Vec<Vec<i64>> {
    spec.components
        .iter()
        .zip(&m.0)
        .map(|(c, l)| c.rs.dual_weight(l).iter().map(|x| -x).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwistReport {
    pub module: ModuleLabel,
    pub conformal_weight: Q,
    pub pairing: Q,
    pub twisted_cw: Q,
}

pub fn twist_report(
    spec: &AlgebraSpec,
    u: &TwistVector,
    modules: &[ModuleLabel],
) -> Result<Vec<TwistReport>> {
    check_twist_hypothesis(spec, u)?;
    modules
        .iter()
        .map(|m| {
            Ok(TwistReport {
                module: m.clone(),
                conformal_weight: spec.conformal_weight(m),
                pairing: pairing(spec, u, m),
                twisted_cw: twisted_conformal_weight(spec, m, u)?,
            })
        })
        .collect()
}
