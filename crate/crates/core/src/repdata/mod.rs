//! Integrable highest-weight modules of affine algebras at positive level.

mod affine;
mod freudenthal;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::rational::{qi, Q};
use crate::rootsys::{CartanType, RootSystem};
use crate::{Error, Result};

pub use affine::{affine_dominant_multiplicities, graded_dim, graded_dim_component, MAX_DEPTH};
pub use freudenthal::{dominant_weight_system, weight_system, WeightSystem};

/// One simple summand `X_{n,k}`.
#[derive(Debug, Clone)]
pub struct Component {
    pub rs: Arc<RootSystem>,
    pub level: i64,
}

impl PartialEq for Component {
    fn eq(&self, o: &Self) -> bool {
        self.rs.ctype == o.rs.ctype && self.level == o.level
    }
}

impl Eq for Component {}

impl Component {
    pub fn new(ct: CartanType, level: i64) -> Result<Self> {
        if level < 1 {
            return Err(Error::Parse(format!("level must be positive, got {level}")));
        }
        Ok(Component {
            rs: Arc::new(RootSystem::new(ct.family, ct.rank)?),
            level,
        })
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// `k + h∨`.
    pub fn kappa(&self) -> i64 {
        self.level + self.rs.dual_coxeter
    }

    pub fn is_admissible(&self, lambda: &[i64]) -> bool {
        lambda.len() == self.rank()
            && lambda.iter().all(|&x| x >= 0)
            && self.rs.level_of(lambda) <= self.level
    }

    /// All level-k dominant integral weights, lexicographic in Dynkin labels.
    pub fn level_weights(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        fn rec(c: &Component, i: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            let a = c.rs.comarks[i];
            for x in 0..=budget / a {
                cur[i] = x;
                rec(c, i + 1, budget - x * a, cur, out);
            }
            cur[i] = 0;
        }
        rec(self, 0, self.level, &mut cur, &mut out);
        out
    }

    pub fn conformal_weight(&self, lambda: &[i64]) -> Q {
        let rs = &self.rs;
        let two_rho: Vec<i64> = lambda.iter().map(|x| x + 2).collect();
        rs.inner_i(lambda, &two_rho) / qi(2 * self.kappa())
    }

    pub fn weyl_dim(&self, lambda: &[i64]) -> u128 {
        weyl_dim(&self.rs, lambda)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.rs.ctype, self.level)
    }
}

/// Weyl dimension formula `Π_{α>0} (λ+ρ|α)/(ρ|α)`.
pub fn weyl_dim(rs: &RootSystem, lambda: &[i64]) -> u128 {
    let lr: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for a in &rs.positive_roots_dynkin {
        let x = rs.inner_scaled(&lr, a);
        let y = rs.inner_scaled(&rs.rho, a);
        num *= x as u128;
        den *= y as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    assert_eq!(den, 1, "Weyl dimension is not integral");
    num
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Ordered list of simple summands with levels, e.g. `D7_3+A3_1+G2_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub components: Vec<Component>,
}

impl AlgebraSpec {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parse("empty algebra".into()));
        }
        Ok(AlgebraSpec { components })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let comps = s
            .split('+')
            .map(|part| {
                let part = part.trim();
                let (t, k) = part
                    .split_once('_')
                    .ok_or_else(|| Error::Parse(format!("expected TYPE_LEVEL, got '{part}'")))?;
                let k: i64 = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad level in '{part}'")))?;
                Component::new(CartanType::parse(t)?, k)
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraSpec::new(comps)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank()).sum()
    }

    pub fn dim(&self) -> usize {
        self.components.iter().map(|c| c.rs.dim()).sum()
    }

    pub fn vacuum(&self) -> ModuleLabel {
        ModuleLabel(self.components.iter().map(|c| vec![0; c.rank()]).collect())
    }

    pub fn check(&self, m: &ModuleLabel) -> Result<()> {
        if m.0.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: m.0.len(),
            });
        }
        for (c, l) in self.components.iter().zip(&m.0) {
            if l.len() != c.rank() {
                return Err(Error::DimensionMismatch {
                    expected: c.rank(),
                    got: l.len(),
                });
            }
            if !c.is_admissible(l) {
                return Err(Error::NotAdmissible {
                    weight: format!("{l:?}"),
                    level: c.level,
                });
            }
        }
        Ok(())
    }

    pub fn parse_label(&self, s: &str) -> Result<ModuleLabel> {
        let m = ModuleLabel::parse(s)?;
        self.check(&m)?;
        Ok(m)
    }

    /// Every module label, lexicographic component by component.
    pub fn level_weights(&self) -> Vec<ModuleLabel> {
        let per: Vec<Vec<Vec<i64>>> = self.components.iter().map(|c| c.level_weights()).collect();
        let mut out = vec![Vec::new()];
        for options in &per {
            let mut next = Vec::with_capacity(out.len() * options.len());
            for prefix in &out {
                for o in options {
                    let mut p: Vec<Vec<i64>> = prefix.clone();
                    p.push(o.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(ModuleLabel).collect()
    }

    pub fn conformal_weight(&self, m: &ModuleLabel) -> Q {
        self.components
            .iter()
            .zip(&m.0)
            .map(|(c, l)| c.conformal_weight(l))
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn weyl_dim(&self, m: &ModuleLabel) -> u128 {
        self.components
            .iter()
            .zip(&m.0)
            .map(|(c, l)| c.weyl_dim(l))
            .product()
    }

    pub fn contragredient(&self, m: &ModuleLabel) -> ModuleLabel {
        ModuleLabel(
            self.components
                .iter()
                .zip(&m.0)
                .map(|(c, l)| c.rs.dual_weight(l))
                .collect(),
        )
    }

    /// `h∨/k` for every summand, the ratio entering the Schellekens identity.
    pub fn dual_coxeter_over_level(&self) -> Vec<Q> {
        self.components
            .iter()
            .map(|c| Q::new(c.rs.dual_coxeter, c.level))
            .collect()
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Per-component Dynkin labels, rendered `[1,0,0,1]x[0,0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleLabel(pub Vec<Vec<i64>>);

impl ModuleLabel {
    pub fn parse(s: &str) -> Result<Self> {
        let parts = parse_bracket_list(s)?;
        parts
            .into_iter()
            .map(|p| {
                p.iter()
                    .map(|x| {
                        x.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad integer '{x}' in '{s}'")))
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()
            .map(ModuleLabel)
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.iter().flatten().all(|&x| x == 0)
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|c| {
                let xs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("[{}]", xs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Splits `[a,b]x[c]` into `[["a","b"],["c"]]`.
pub fn parse_bracket_list(s: &str) -> Result<Vec<Vec<String>>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty label".into()));
    }
    s.split('x')
        .map(|part| {
            let p = part.trim();
            let inner = p
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("expected [..] in '{p}'")))?;
            if inner.trim().is_empty() {
                return Ok(Vec::new());
            }
            Ok(inner.split(',').map(|x| x.trim().to_string()).collect())
        })
        .collect()
}
