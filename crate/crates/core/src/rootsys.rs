//! Finite irreducible root systems with long roots of squared length 2.
//!
//! Simple roots are indexed as in Humphreys §11.4 (Bourbaki for the
//! exceptional types).  Weights are handled in the fundamental-weight basis
//! (Dynkin labels); roots additionally carry simple-root coefficients.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::ops::{Mul, Sub};

use num_traits::{One, Zero};

use crate::rational::{invert, lcm_all, q, qi, Q};
use crate::{Error, Result};

pub type WeightVec = Vec<Q>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Simple type `X_n` without a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidRootSystem {
                family: family.letter(),
                rank,
                reason: "rank out of range for this family",
            })
        }
    }

    /// Parses `A4`, `D7`, `G2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::Parse(format!("unknown family in '{s}'")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in '{s}'")))?;
        CartanType::new(fam, rank)
    }

    pub fn weyl_order(self) -> u64 {
        weyl_order(self.family, self.rank)
    }

    pub fn num_positive_roots(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    pub fn dim(self) -> usize {
        2 * self.num_positive_roots() + self.rank
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Order of the Weyl group from the classical product formulas.
pub fn weyl_order(family: Family, rank: usize) -> u64 {
    let n = rank;
    match family {
        Family::A => factorial(n + 1),
        Family::B | Family::C => (1u64 << n) * factorial(n),
        Family::D => (1u64 << (n - 1)) * factorial(n),
        Family::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Family::F => 1152,
        Family::G => 12,
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub ctype: CartanType,
    /// Simple roots in the standard orthogonal model; the form on that model
    /// is the Euclidean one multiplied by `form_scale`.
    pub simple_roots: Vec<Vec<Q>>,
    pub form_scale: Q,
    /// Fundamental weights in the same orthogonal coordinates.
    pub fundamental_weights: Vec<Vec<Q>>,
    /// `cartan[i][j] = 2(α_i|α_j)/(α_j|α_j)`.
    pub cartan: Vec<Vec<i64>>,
    /// `(α_i|α_i)`.
    pub root_norms: Vec<Q>,
    /// Gram matrix of the fundamental weights, `gram[i][j] = (Λ_i|Λ_j)`.
    pub gram: Vec<Vec<Q>>,
    /// `gram_scale * gram` is integral.
    pub gram_scale: i64,
    pub gram_int: Vec<Vec<i64>>,
    /// Positive roots as simple-root coefficients, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// The same roots in Dynkin labels.
    pub positive_roots_dynkin: Vec<Vec<i64>>,
    pub rho: Vec<i64>,
    pub theta: Vec<i64>,
    /// Coefficients of θ in simple roots.
    pub marks: Vec<i64>,
    /// `(Λ_i|θ)`; a weight has level `Σ λ_i comarks_i`.
    pub comarks: Vec<i64>,
    pub dual_coxeter: i64,
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

fn orthogonal_model(ct: CartanType) -> (Vec<Vec<Q>>, Q) {
    let n = ct.rank;
    let diff = |dim: usize, i: usize, j: usize| -> Vec<Q> {
        let mut v = unit(dim, i);
        v[j] = -Q::one();
        v
    };
    match ct.family {
        Family::A => ((0..n).map(|i| diff(n + 1, i, i + 1)).collect(), Q::one()),
        Family::B => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(unit(n, n - 1));
            (s, Q::one())
        }
        Family::C => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![Q::zero(); n];
            last[n - 1] = qi(2);
            s.push(last);
            (s, q(1, 2))
        }
        Family::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![Q::zero(); n];
            last[n - 2] = Q::one();
            last[n - 1] = Q::one();
            s.push(last);
            (s, Q::one())
        }
        Family::E => {
            let h = q(1, 2);
            let mut a1 = vec![-h; 8];
            a1[0] = h;
            a1[7] = h;
            let mut a2 = vec![Q::zero(); 8];
            a2[0] = Q::one();
            a2[1] = Q::one();
            let mut s = vec![a1, a2];
            s.extend((0..6).map(|i| diff(8, i + 1, i)));
            s.truncate(n);
            (s, Q::one())
        }
        Family::F => {
            let h = q(1, 2);
            (
                vec![
                    diff(4, 1, 2),
                    diff(4, 2, 3),
                    unit(4, 3),
                    vec![h, -h, -h, -h],
                ],
                Q::one(),
            )
        }
        Family::G => (
            vec![
                vec![Q::one(), -Q::one(), Q::zero()],
                vec![qi(-2), Q::one(), Q::one()],
            ],
            q(1, 3),
        ),
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ct = CartanType::new(family, rank)?;
        let (simple_roots, form_scale) = orthogonal_model(ct);
        let n = rank;
        let b: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| form_scale * dot(&simple_roots[i], &simple_roots[j]))
                    .collect()
            })
            .collect();
        let root_norms: Vec<Q> = (0..n).map(|i| b[i][i]).collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = qi(2) * b[i][j] / b[j][j];
                        assert!(v.is_integer(), "non-integral Cartan entry");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let aq: Vec<Vec<Q>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect();
        let ainv = invert(&aq).expect("Cartan matrix is invertible");
        let gram: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| ainv[j][i] * root_norms[i] / qi(2)).collect())
            .collect();
        let gram_scale = lcm_all(gram.iter().flatten().map(|x| *x.denom()));
        let gram_int = gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x * qi(gram_scale)).to_integer())
                    .collect()
            })
            .collect();
        let dim = simple_roots[0].len();
        let fundamental_weights = (0..n)
            .map(|i| {
                let mut v = vec![Q::zero(); dim];
                for (k, a) in simple_roots.iter().enumerate() {
                    for (x, y) in v.iter_mut().zip(a) {
                        *x += ainv[i][k] * y;
                    }
                }
                v
            })
            .collect();

        let positive_roots = positive_roots_by_strings(&cartan);
        let to_dynkin = |c: &Vec<i64>| -> Vec<i64> {
            (0..n)
                .map(|j| (0..n).map(|i| c[i] * cartan[i][j]).sum())
                .collect()
        };
        let positive_roots_dynkin: Vec<Vec<i64>> = positive_roots.iter().map(to_dynkin).collect();
        let hi = positive_roots
            .iter()
            .enumerate()
            .max_by_key(|(_, c)| c.iter().sum::<i64>())
            .map(|(i, _)| i)
            .unwrap();
        let marks = positive_roots[hi].clone();
        let theta = positive_roots_dynkin[hi].clone();
        let comarks: Vec<i64> = (0..n)
            .map(|i| {
                let v = qi(marks[i]) * root_norms[i] / qi(2);
                assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        let dual_coxeter = comarks.iter().sum::<i64>() + 1;
        let rs = RootSystem {
            ctype: ct,
            simple_roots,
            form_scale,
            fundamental_weights,
            cartan,
            root_norms,
            gram,
            gram_scale,
            gram_int,
            positive_roots,
            positive_roots_dynkin,
            rho: vec![1; n],
            theta,
            marks,
            comarks,
            dual_coxeter,
        };
        debug_assert_eq!(rs.inner_i(&rs.theta, &rs.theta), qi(2));
        Ok(rs)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let ct = CartanType::parse(s)?;
        RootSystem::new(ct.family, ct.rank)
    }

    pub fn family(&self) -> Family {
        self.ctype.family
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank
    }

    pub fn dim(&self) -> usize {
        self.ctype.dim()
    }

    pub fn weyl_order(&self) -> u64 {
        self.ctype.weyl_order()
    }

    /// `(x|y)` for weights in Dynkin labels.
    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                s += x[i] * self.gram[i][j] * y[j];
            }
        }
        s
    }

    pub fn inner_i(&self, x: &[i64], y: &[i64]) -> Q {
        Q::new(self.inner_scaled(x, y), self.gram_scale)
    }

    /// `gram_scale · (x|y)` for integral weights.
    pub fn inner_scaled(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.gram_int[i];
            for (j, &yj) in y.iter().enumerate() {
                s += xi * row[j] * yj;
            }
        }
        s
    }

    /// `(x|y)` with `x` rational and `y` integral.
    pub fn inner_qi(&self, x: &[Q], y: &[i64]) -> Q {
        let yq: Vec<Q> = y.iter().map(|&v| qi(v)).collect();
        self.inner(x, &yq)
    }

    pub fn level_of(&self, lambda: &[i64]) -> i64 {
        lambda.iter().zip(&self.comarks).map(|(a, b)| a * b).sum()
    }

    /// Dynkin labels of the root with simple-root coefficients `c`.
    pub fn root_to_dynkin(&self, c: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).map(|i| c[i] * self.cartan[i][j]).sum())
            .collect()
    }

    /// All roots (positive then negative) in Dynkin labels.
    pub fn all_roots_dynkin(&self) -> Vec<Vec<i64>> {
        let mut v = self.positive_roots_dynkin.clone();
        v.extend(
            self.positive_roots_dynkin
                .iter()
                .map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()),
        );
        v
    }

    /// Simple reflection `s_i` on Dynkin labels.
    pub fn reflect<T>(&self, v: &mut [T], i: usize)
    where
        T: Copy + Sub<Output = T> + Mul<i64, Output = T>,
    {
        let vi = v[i];
        for (vj, &a) in v.iter_mut().zip(&self.cartan[i]) {
            if a != 0 {
                *vj = *vj - vi * a;
            }
        }
    }

    /// Dominant representative of the Weyl orbit, with the number of simple
    /// reflections used (its parity is the sign of the Weyl element).
    pub fn dominant<T>(&self, v: &[T]) -> (Vec<T>, usize)
    where
        T: Copy + Zero + PartialOrd + Sub<Output = T> + Mul<i64, Output = T>,
    {
        let mut w = v.to_vec();
        let mut steps = 0;
        while let Some(i) = w.iter().position(|x| *x < T::zero()) {
            self.reflect(&mut w, i);
            steps += 1;
        }
        (w, steps)
    }

    /// `-w₀λ`, the highest weight of the dual representation.
    pub fn dual_weight(&self, lambda: &[i64]) -> Vec<i64> {
        let neg: Vec<i64> = lambda.iter().map(|x| -x).collect();
        self.dominant(&neg).0
    }

    /// Full Weyl orbit by reflection closure.
    pub fn weyl_orbit<T>(&self, v: &[T]) -> Vec<Vec<T>>
    where
        T: Copy + Eq + Hash + Ord + Zero + Sub<Output = T> + Mul<i64, Output = T>,
    {
        let start = self.dominant(v).0;
        let mut seen: HashSet<Vec<T>> = HashSet::new();
        seen.insert(start.clone());
        let mut out = vec![start.clone()];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for i in 0..self.rank() {
                if x[i] > T::zero() {
                    let mut y = x.clone();
                    self.reflect(&mut y, i);
                    if seen.insert(y.clone()) {
                        out.push(y.clone());
                        stack.push(y);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Order of the stabilizer of a dominant weight (a parabolic subgroup).
    pub fn stabilizer_order<T: Zero + PartialEq>(&self, dominant: &[T]) -> u64 {
        let idx: Vec<usize> = (0..self.rank())
            .filter(|&i| dominant[i] == T::zero())
            .collect();
        if idx.is_empty() {
            return 1;
        }
        let sub: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        let norms: Vec<Q> = idx.iter().map(|&i| self.root_norms[i]).collect();
        identify_components(&sub, &norms)
            .iter()
            .map(|c| c.ctype.weyl_order())
            .product()
    }

    pub fn orbit_size<T: Zero + PartialEq>(&self, dominant: &[T]) -> u64 {
        self.weyl_order() / self.stabilizer_order(dominant)
    }

    /// Irreducible components of the root subsystem spanned by `roots`
    /// (Dynkin labels, closed under negation).
    pub fn classify_subsystem(&self, roots: &[Vec<i64>]) -> Result<Vec<SubsystemComponent>> {
        let set: HashSet<&Vec<i64>> = roots.iter().collect();
        let norm: HashMap<&Vec<i64>, i64> =
            roots.iter().map(|r| (r, self.inner_scaled(r, r))).collect();
        for b in roots {
            let bb = norm[b];
            if bb <= 0 {
                return Err(Error::NotASubsystem("zero vector in root set".into()));
            }
            for g in roots {
                let gb = self.inner_scaled(g, b);
                if (2 * gb) % bb != 0 {
                    return Err(Error::NotASubsystem(format!(
                        "non-integral pairing of {g:?} with {b:?}"
                    )));
                }
                let c = 2 * gb / bb;
                let refl: Vec<i64> = g.iter().zip(b).map(|(x, y)| x - c * y).collect();
                if !set.contains(&refl) {
                    return Err(Error::NotASubsystem(format!(
                        "reflection of {g:?} in {b:?} leaves the set"
                    )));
                }
            }
        }
        let rho = &self.rho;
        let positive: Vec<&Vec<i64>> = roots
            .iter()
            .filter(|r| self.inner_scaled(r, rho) > 0)
            .collect();
        let pos_set: HashSet<&Vec<i64>> = positive.iter().copied().collect();
        let simple: Vec<Vec<i64>> = positive
            .iter()
            .filter(|&&r| {
                !positive.iter().any(|&a| {
                    let d: Vec<i64> = r.iter().zip(a).map(|(x, y)| x - y).collect();
                    pos_set.contains(&d)
                })
            })
            .map(|&r| r.clone())
            .collect();
        let m = simple.len();
        let a: Vec<Vec<i64>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        2 * self.inner_scaled(&simple[i], &simple[j])
                            / self.inner_scaled(&simple[j], &simple[j])
                    })
                    .collect()
            })
            .collect();
        let norms: Vec<Q> = simple.iter().map(|s| self.inner_i(s, s)).collect();
        let mut comps: Vec<SubsystemComponent> = identify_components(&a, &norms)
            .into_iter()
            .map(|c| {
                let simple_roots: Vec<Vec<i64>> =
                    c.nodes.iter().map(|&i| simple[i].clone()).collect();
                let long_norm = c.nodes.iter().map(|&i| norms[i]).max().unwrap();
                SubsystemComponent {
                    ctype: c.ctype,
                    simple_roots,
                    long_norm,
                }
            })
            .collect();
        comps.sort_by(|x, y| {
            x.ctype
                .family
                .cmp(&y.ctype.family)
                .then(y.ctype.rank.cmp(&x.ctype.rank))
        });
        Ok(comps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsystemComponent {
    pub ctype: CartanType,
    pub simple_roots: Vec<Vec<i64>>,
    /// Squared length of the longest root of the component in the ambient form.
    pub long_norm: Q,
}

#[derive(Debug, Clone)]
pub struct DiagramComponent {
    pub ctype: CartanType,
    pub nodes: Vec<usize>,
}

/// Splits a Cartan matrix into connected components and names each one.
/// `norms` are the squared lengths of the simple roots.
pub fn identify_components(a: &[Vec<i64>], norms: &[Q]) -> Vec<DiagramComponent> {
    let m = a.len();
    let mut comp = vec![usize::MAX; m];
    let mut out = Vec::new();
    for s in 0..m {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut nodes = vec![s];
        comp[s] = id;
        let mut k = 0;
        while k < nodes.len() {
            let u = nodes[k];
            for v in 0..m {
                if v != u && a[u][v] != 0 && comp[v] == usize::MAX {
                    comp[v] = id;
                    nodes.push(v);
                }
            }
            k += 1;
        }
        nodes.sort();
        let ctype = name_connected(a, norms, &nodes);
        out.push(DiagramComponent { ctype, nodes });
    }
    out
}

fn name_connected(a: &[Vec<i64>], norms: &[Q], nodes: &[usize]) -> CartanType {
    let r = nodes.len();
    let mk = |f, n| CartanType { family: f, rank: n };
    if r == 1 {
        return mk(Family::A, 1);
    }
    let bond = |u: usize, v: usize| a[u][v] * a[v][u];
    let nbrs = |u: usize| -> Vec<usize> {
        nodes
            .iter()
            .copied()
            .filter(|&v| v != u && a[u][v] != 0)
            .collect()
    };
    let mut double = None;
    for &u in nodes {
        for &v in nodes {
            if u < v {
                match bond(u, v) {
                    3 => return mk(Family::G, 2),
                    2 => double = Some((u, v)),
                    _ => {}
                }
            }
        }
    }
    if let Some((u, v)) = double {
        if r == 2 {
            return mk(Family::C, 2);
        }
        let leaf = [u, v].into_iter().find(|&x| nbrs(x).len() == 1);
        return match leaf {
            None => mk(Family::F, 4),
            Some(x) => {
                let other = if x == u { v } else { u };
                if norms[x] < norms[other] {
                    mk(Family::B, r)
                } else {
                    mk(Family::C, r)
                }
            }
        };
    }
    let branch = nodes.iter().copied().find(|&u| nbrs(u).len() == 3);
    let Some(b) = branch else {
        return mk(Family::A, r);
    };
    let mut arms: Vec<usize> = nbrs(b)
        .into_iter()
        .map(|start| {
            let (mut prev, mut cur, mut len) = (b, start, 1);
            loop {
                let next: Vec<usize> = nbrs(cur).into_iter().filter(|&x| x != prev).collect();
                if next.is_empty() {
                    break len;
                }
                prev = cur;
                cur = next[0];
                len += 1;
            }
        })
        .collect();
    arms.sort();
    match (arms[0], arms[1]) {
        (1, 1) => mk(Family::D, r),
        (1, 2) => mk(Family::E, r),
        _ => panic!("Cartan matrix is not of finite type"),
    }
}

/// Positive roots by the root-string algorithm, returned in simple-root
/// coefficients sorted by height then lexicographically.
fn positive_roots_by_strings(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut set: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * a[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if set.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if set.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort_by(|x, y| {
        x.iter()
            .sum::<i64>()
            .cmp(&y.iter().sum::<i64>())
            .then_with(|| x.cmp(y))
    });
    roots
}
