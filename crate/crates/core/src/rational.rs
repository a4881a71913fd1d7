//! Small exact-arithmetic helpers shared across modules.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Renders `p/q` in lowest terms, or `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: i64 = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
        let d: i64 = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        Ok(Q::new(n, d))
    } else {
        s.parse::<i64>()
            .map(Q::from_integer)
            .map_err(|_| Error::Parse(format!("bad rational '{s}'")))
    }
}

pub fn to_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn lcm_all<I: IntoIterator<Item = i64>>(it: I) -> i64 {
    it.into_iter().fold(1i64, |acc, d| acc.lcm(&d.abs().max(1)))
}

/// Exact inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Exact determinant of a square rational matrix.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(col, piv);
            d = -d;
        }
        let p = a[col][col];
        d *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if f.is_zero() {
                continue;
            }
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                *x -= f * y;
            }
        }
    }
    d
}
