//! Double-double arithmetic (about 32 significant digits), enough for the
//! extended-precision recompute of S-matrix sums.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

const FRAC_PI_4: DD = DD {
    hi: std::f64::consts::FRAC_PI_4,
    lo: 3.061_616_997_868_383e-17,
};

const FRAC_1_SQRT_2: DD = DD {
    hi: std::f64::consts::FRAC_1_SQRT_2,
    lo: -4.833_646_656_726_457e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    /// Exact ratio of two integers, correctly rounded to double-double.
    pub fn from_ratio(num: i64, den: i64) -> DD {
        DD::from_i64(num) / DD::from_i64(den)
    }

    pub fn from_i64(x: i64) -> DD {
        let hi = x as f64;
        let lo = (x - hi as i64) as f64;
        DD { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn sqrt(self) -> DD {
        if self.hi <= 0.0 {
            return DD::ZERO;
        }
        let y = DD::from_f64(self.hi.sqrt());
        let r = self - y * y;
        y + r / (y * DD::from_f64(2.0))
    }

    pub fn scale(self, k: f64) -> DD {
        self * DD::from_f64(k)
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, b: DD) -> DD {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, b: DD) -> DD {
        self + (-b)
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, b: DD) -> DD {
        let q1 = self.hi / b.hi;
        let r = self - b * DD::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * DD::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        DD { hi: h, lo: l } + DD::from_f64(q3)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, b: DD) -> DD {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

/// Taylor series for `sin x, cos x` with `|x| ≤ π/4`.
fn sin_cos_small(x: DD) -> (DD, DD) {
    let x2 = x * x;
    let mut term = x;
    let mut s = x;
    let mut k = 1.0;
    while term.hi.abs() > 1e-36 {
        term = -(term * x2) / DD::from_f64((k + 1.0) * (k + 2.0));
        s = s + term;
        k += 2.0;
    }
    let mut term = DD::ONE;
    let mut c = DD::ONE;
    let mut k = 0.0;
    while term.hi.abs() > 1e-36 {
        term = -(term * x2) / DD::from_f64((k + 1.0) * (k + 2.0));
        c = c + term;
        k += 2.0;
    }
    (s, c)
}

/// `(cos, sin)` of `2π·num/den`, with the reduction to the first octant done
/// in exact integer arithmetic.
pub fn cos_sin_2pi_frac(num: i64, den: i64) -> (DD, DD) {
    let r = num.rem_euclid(den) as i128;
    let den128 = den as i128;
    let eight = 8 * r;
    let q = (eight / den128) as i64;
    let rem = (eight - q as i128 * den128) as i64;
    let phi = FRAC_PI_4 * DD::from_ratio(rem, den);
    let (s, c) = sin_cos_small(phi);
    rotate_by_octants(c, s, q)
}

fn rotate_by_octants(c: DD, s: DD, q: i64) -> (DD, DD) {
    let (mut c, mut s) = (c, s);
    if q % 2 == 1 {
        let h = FRAC_1_SQRT_2;
        (c, s) = ((c - s) * h, (c + s) * h);
    }
    for _ in 0..(q / 2) {
        (c, s) = (-s, c);
    }
    (c, s)
}

/// `(cos, sin)` of `2π·num/den` in double precision via the same reduction.
pub fn cos_sin_2pi_frac_f64(num: i64, den: i64) -> (f64, f64) {
    let r = num.rem_euclid(den) as i128;
    let den128 = den as i128;
    let eight = 8 * r;
    let q = (eight / den128) as i64;
    let rem = (eight - q as i128 * den128) as f64;
    let phi = std::f64::consts::FRAC_PI_4 * rem / den as f64;
    let (s, c) = phi.sin_cos();
    let (mut c, mut s) = (c, s);
    if q % 2 == 1 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        (c, s) = ((c - s) * h, (c + s) * h);
    }
    for _ in 0..(q / 2) {
        (c, s) = (-s, c);
    }
    (c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_more_precise_than_f64() {
        let third = DD::from_ratio(1, 3);
        let back = third * DD::from_f64(3.0) - DD::ONE;
        assert!(back.to_f64().abs() < 1e-31);
        let two = DD::from_f64(2.0).sqrt();
        assert!((two * two - DD::from_f64(2.0)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn trig_matches_std_and_identity() {
        for den in [7i64, 12, 60, 97] {
            for num in 0..den {
                let (c, s) = cos_sin_2pi_frac(num, den);
                let t = 2.0 * std::f64::consts::PI * num as f64 / den as f64;
                assert!((c.to_f64() - t.cos()).abs() < 1e-15);
                assert!((s.to_f64() - t.sin()).abs() < 1e-15);
                let one = c * c + s * s - DD::ONE;
                assert!(one.to_f64().abs() < 1e-29, "{num}/{den}");
                let (cf, sf) = cos_sin_2pi_frac_f64(num, den);
                assert!((cf - t.cos()).abs() < 1e-15 && (sf - t.sin()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn known_values() {
        let (c, s) = cos_sin_2pi_frac(1, 12);
        let half_sqrt3 = DD::from_f64(3.0).sqrt().scale(0.5);
        assert!((c - half_sqrt3).to_f64().abs() < 1e-30);
        assert!((s - DD::from_f64(0.5)).to_f64().abs() < 1e-30);
    }
}
