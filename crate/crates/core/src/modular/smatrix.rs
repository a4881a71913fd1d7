//! Kac–Peterson S-matrix by the alternating Weyl-group sum.
//!
//! For each row `λ` the orbit of the regular weight `λ+ρ` is streamed by a
//! depth-first walk in which every orbit point has a unique parent (reflect
//! in the smallest simple root with a negative label).  Pairings with all
//! columns `μ+ρ` are updated incrementally and accumulated as exact integer
//! counts per phase residue modulo `D·κ`, so only the final sum of roots of
//! unity is done in floating point.

use ndarray::Array2;
use num_complex::Complex64;

use super::ddouble::{cos_sin_2pi_frac, cos_sin_2pi_frac_f64, DD};
use crate::rational::{det, qi, to_f64, Q};
use crate::repdata::Component;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Double,
    Extended,
}

/// Signed counts of Weyl elements per phase residue, one table per column.
struct PhaseCounts {
    modulus: i64,
    counts: Vec<i64>,
}

struct Walk<'a> {
    cartan: &'a [Vec<i64>],
    rank: usize,
    cols: usize,
    /// Pairings lie in `[-offset, offset]`; `width = 2·offset + 1`.
    offset: i64,
    width: usize,
    step: &'a [i64],
    xs: Vec<i64>,
    ps: Vec<i64>,
    counts: &'a mut [i64],
    visited: u64,
}

impl Walk<'_> {
    fn visit(&mut self, depth: usize) {
        let (r, nc, w) = (self.rank, self.cols, self.width);
        let sign = if depth.is_multiple_of(2) { 1 } else { -1 };
        self.visited += 1;
        let pbase = depth * nc;
        for b in 0..nc {
            let p = (self.ps[pbase + b] + self.offset) as usize;
            self.counts[b * w + p] += sign;
        }
        let xbase = depth * r;
        for i in 0..r {
            let xi = self.xs[xbase + i];
            if xi <= 0 {
                continue;
            }
            let row = &self.cartan[i];
            let ok = (0..i).all(|j| self.xs[xbase + j] - xi * row[j] > 0);
            if !ok {
                continue;
            }
            let nbase = (depth + 1) * r;
            if self.xs.len() < nbase + r {
                self.xs.resize(nbase + r, 0);
                self.ps.resize((depth + 2) * nc, 0);
            }
            for j in 0..r {
                self.xs[nbase + j] = self.xs[xbase + j] - xi * row[j];
            }
            let npbase = (depth + 1) * nc;
            for b in 0..nc {
                self.ps[npbase + b] = self.ps[pbase + b] - xi * self.step[i * nc + b];
            }
            self.visit(depth + 1);
        }
    }
}

fn row_counts(comp: &Component, lambda: &[i64], cols: &[Vec<i64>]) -> PhaseCounts {
    let rs = &comp.rs;
    let r = rs.rank();
    let modulus = rs.gram_scale * comp.kappa();
    let nu: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let colr: Vec<Vec<i64>> = cols
        .iter()
        .map(|mu| mu.iter().map(|x| x + 1).collect())
        .collect();
    let mut step = vec![0i64; r * cols.len()];
    for i in 0..r {
        for (b, mr) in colr.iter().enumerate() {
            step[i * cols.len() + b] = rs.inner_scaled(&rs.cartan[i], mr);
        }
    }
    let ps: Vec<i64> = colr.iter().map(|mr| rs.inner_scaled(&nu, mr)).collect();
    let nn = rs.inner_scaled(&nu, &nu) as f64;
    let mm = colr
        .iter()
        .map(|mr| rs.inner_scaled(mr, mr))
        .max()
        .unwrap_or(0) as f64;
    let offset = (nn * mm).sqrt().ceil() as i64 + 1;
    let width = (2 * offset + 1) as usize;
    let mut raw = vec![0i64; cols.len() * width];
    let mut walk = Walk {
        cartan: &rs.cartan,
        rank: r,
        cols: cols.len(),
        offset,
        width,
        step: &step,
        xs: nu,
        ps,
        counts: &mut raw,
        visited: 0,
    };
    walk.visit(0);
    assert_eq!(
        walk.visited,
        rs.weyl_order(),
        "orbit walk missed Weyl elements"
    );
    let m = modulus as usize;
    let mut counts = vec![0i64; cols.len() * m];
    for (b, chunk) in raw.chunks(width).enumerate() {
        for (p, &c) in chunk.iter().enumerate() {
            if c != 0 {
                let res = (p as i64 - offset).rem_euclid(modulus) as usize;
                counts[b * m + res] += c;
            }
        }
    }
    PhaseCounts { modulus, counts }
}

/// The prefactor is `i^{|Δ+|} (κ^r |P/Q∨|)^{-1/2}`; returns the power of `i`
/// mod 4 and `κ^r |P/Q∨|`.
fn prefactor_parts(comp: &Component) -> (usize, Q) {
    let rs = &comp.rs;
    let r = rs.rank();
    let coroot_gram: Vec<Vec<Q>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let aij = qi(rs.cartan[i][j]) * rs.root_norms[j] / qi(2);
                    qi(4) * aij / (rs.root_norms[i] * rs.root_norms[j])
                })
                .collect()
        })
        .collect();
    let index = det(&coroot_gram);
    let kr = qi(comp.kappa()).pow(r as i32);
    (rs.positive_roots.len() % 4, kr * index)
}

fn times_i_power(z: Complex64, p: usize) -> Complex64 {
    match p % 4 {
        0 => z,
        1 => Complex64::new(-z.im, z.re),
        2 => -z,
        _ => Complex64::new(z.im, -z.re),
    }
}

fn sum_double(counts: &[i64], modulus: i64) -> Complex64 {
    let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
    for (res, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (cs, sn) = cos_sin_2pi_frac_f64(res as i64, modulus);
        re.add(c as f64 * cs);
        im.add(-(c as f64) * sn);
    }
    Complex64::new(re.value(), im.value())
}

fn sum_extended(counts: &[i64], modulus: i64) -> (DD, DD) {
    let (mut re, mut im) = (DD::ZERO, DD::ZERO);
    for (res, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (cs, sn) = cos_sin_2pi_frac(res as i64, modulus);
        let cd = DD::from_i64(c);
        re = re + cd * cs;
        im = im - cd * sn;
    }
    (re, im)
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Full symmetric S-matrix on `labels`.  `progress` receives `(row, rows)`.
pub fn compute_s(
    comp: &Component,
    labels: &[Vec<i64>],
    precision: Precision,
    progress: &mut dyn FnMut(usize, usize),
) -> Array2<Complex64> {
    let n = labels.len();
    let (ipow, norm2) = prefactor_parts(comp);
    let scale_f = 1.0 / to_f64(&norm2).sqrt();
    let scale_dd = DD::ONE / DD::from_ratio(*norm2.numer(), *norm2.denom()).sqrt();
    let mut s = Array2::<Complex64>::zeros((n, n));
    for a in 0..n {
        progress(a, n);
        let cols = &labels[a..];
        let pc = row_counts(comp, &labels[a], cols);
        let m = pc.modulus as usize;
        for (off, chunk) in pc.counts.chunks(m).enumerate() {
            let z = match precision {
                Precision::Double => sum_double(chunk, pc.modulus) * scale_f,
                Precision::Extended => {
                    let (re, im) = sum_extended(chunk, pc.modulus);
                    Complex64::new((re * scale_dd).to_f64(), (im * scale_dd).to_f64())
                }
            };
            let z = times_i_power(z, ipow);
            s[[a, a + off]] = z;
            s[[a + off, a]] = z;
        }
    }
    progress(n, n);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repdata::AlgebraSpec;

    fn comp(s: &str) -> Component {
        AlgebraSpec::parse(s).unwrap().components.remove(0)
    }

    #[test]
    fn rank_one_closed_form() {
        for k in 1..=6 {
            let c = comp(&format!("A1_{k}"));
            let labels = c.level_weights();
            for prec in [Precision::Double, Precision::Extended] {
                let s = compute_s(&c, &labels, prec, &mut |_, _| {});
                let kk = (k + 2) as f64;
                for m in 0..labels.len() {
                    for n in 0..labels.len() {
                        let want = (2.0 / kk).sqrt()
                            * (std::f64::consts::PI * ((m + 1) * (n + 1)) as f64 / kk).sin();
                        assert!((s[[m, n]].re - want).abs() < 1e-13);
                        assert!(s[[m, n]].im.abs() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn walk_visits_whole_group() {
        for s in ["A3_1", "B3_1", "G2_1", "D4_1", "F4_1"] {
            let c = comp(s);
            let pc = row_counts(&c, &vec![0; c.rank()], &[vec![0; c.rank()]]);
            assert_eq!(pc.counts.iter().sum::<i64>(), 0, "{s}");
        }
    }
}
