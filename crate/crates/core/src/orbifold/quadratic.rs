//! Exact arithmetic in a real quadratic field `ℚ(√d)` and the balanced
//! subset-sum test used on squared quantum dimensions.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::{fmt_q, qi, to_f64, Q};
use crate::{Error, Result};

/// `a + b√d` with `d > 1` square-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    pub a: Q,
    pub b: Q,
    pub d: i64,
}

impl QuadraticNumber {
    pub fn new(a: Q, b: Q, d: i64) -> Self {
        assert!(d > 1, "radicand must exceed 1");
        QuadraticNumber { a, b, d }
    }

    pub fn rational(a: Q, d: i64) -> Self {
        Self::new(a, Q::zero(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign decided exactly by comparing `a²` with `b²d`.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        let lhs = self.a * self.a;
        let rhs = self.b * self.b * qi(self.d);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * (self.d as f64).sqrt()
    }

    /// Finds `a + b√d` within `tol` of `x` with `a, b` of denominator at
    /// most `max_den`, scanning numerators of `b` upward to
    /// `max_coeff · max_den`.
    pub fn recognize(x: f64, d: i64, max_den: i64, max_coeff: i64, tol: f64) -> Option<Self> {
        let root = (d as f64).sqrt();
        for bn in 0..=max_coeff * max_den {
            for den in 1..=max_den {
                for b in [Q::new(bn, den), Q::new(-bn, den)] {
                    if *b.denom() != den && bn != 0 {
                        continue;
                    }
                    let rest = x - to_f64(&b) * root;
                    let a = Q::new((rest * den as f64).round() as i64, den);
                    let cand = Self::new(a, b, d);
                    if (cand.to_f64() - x).abs() < tol {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    pub fn half(&self) -> Self {
        Self::new(self.a / qi(2), self.b / qi(2), self.d)
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.d, o.d, "mixed quadratic fields");
    }
}

fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for QuadraticNumber {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.same_field(&o);
        Self::new(self.a + o.a, self.b + o.b, self.d)
    }
}

impl Sub for QuadraticNumber {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for QuadraticNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, self.d)
    }
}

impl Mul for QuadraticNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.same_field(&o);
        Self::new(
            self.a * o.a + self.b * o.b * qi(self.d),
            self.a * o.b + self.b * o.a,
            self.d,
        )
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        if self.d != o.d {
            return None;
        }
        Some((*self - *o).signum().cmp(&0))
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surd = |b: &Q| {
            if *b == qi(1) {
                format!("√{}", self.d)
            } else {
                format!("{}√{}", fmt_q(b), self.d)
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_q(&self.a)),
            (true, false) => write!(f, "{}", surd(&self.b)),
            (false, false) if self.b.is_negative() => {
                write!(f, "{}-{}", fmt_q(&self.a), surd(&-self.b))
            }
            (false, false) => write!(f, "{}+{}", fmt_q(&self.a), surd(&self.b)),
        }
    }
}

pub const MAX_PARTITION_VALUES: usize = 30;

fn subset_sums<T: Copy>(xs: &[T], zero: T, add: impl Fn(T, T) -> T) -> Vec<(T, u32)> {
    let mut out = vec![(zero, 0u32)];
    for (i, &x) in xs.iter().enumerate() {
        let n = out.len();
        for j in 0..n {
            let (s, m) = out[j];
            out.push((add(s, x), m | (1 << i)));
        }
    }
    out
}

/// Whether some subset of `values` sums to exactly half the total.  With
/// positive values such a subset is automatically nonempty and proper.
pub fn qdim_partition_check(values: &[QuadraticNumber]) -> Result<bool> {
    if values.len() > MAX_PARTITION_VALUES {
        return Err(Error::TooLarge(format!(
            "{} values exceed the subset-sum limit {MAX_PARTITION_VALUES}",
            values.len()
        )));
    }
    let Some(first) = values.first() else {
        return Ok(false);
    };
    if values.iter().any(|v| v.signum() <= 0) {
        return Err(Error::Domain("partition values must be positive".into()));
    }
    let zero = QuadraticNumber::rational(Q::zero(), first.d);
    let target = values.iter().fold(zero, |s, &v| s + v).half();
    let (lo, hi) = values.split_at(values.len() / 2);
    let left: HashSet<QuadraticNumber> = subset_sums(lo, zero, |a, b| a + b)
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    Ok(subset_sums(hi, zero, |a, b| a + b)
        .into_iter()
        .any(|(s, _)| left.contains(&(target - s))))
}

/// Floating-point variant: a subset within `tol` of half the total.
pub fn partition_check_numeric(values: &[f64], tol: f64) -> Result<bool> {
    if values.len() > MAX_PARTITION_VALUES {
        return Err(Error::TooLarge(format!(
            "{} values exceed the subset-sum limit {MAX_PARTITION_VALUES}",
            values.len()
        )));
    }
    let target = values.iter().sum::<f64>() / 2.0;
    Ok(subset_sums(values, 0.0, |a, b| a + b)
        .iter()
        .any(|(s, _)| (s - target).abs() < tol))
}
