//! Modular data of affine VOAs: S-matrix, conformal weights, quantum
//! dimensions, Verlinde fusion and simple currents.

pub mod ddouble;
mod smatrix;
mod tensor;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use ndarray::{Array2, Axis};
use num_complex::Complex64;

use crate::rational::Q;
use crate::repdata::Component;
use crate::{Error, Result};

pub use smatrix::{compute_s, Precision};
pub use tensor::Modular;

pub const UNITARITY_TOL: f64 = 1e-8;
pub const FUSION_TOL: f64 = 1e-6;
pub const QDIM_TOL: f64 = 1e-8;
const REALITY_TOL: f64 = 1e-12;

/// How the S-matrix precision is chosen; `VOA_PRECISION` overrides `Auto`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrecisionPolicy {
    Auto,
    Double,
    Extended,
}

impl PrecisionPolicy {
    pub fn from_env() -> Self {
        match std::env::var("VOA_PRECISION").ok().as_deref() {
            Some("double") => PrecisionPolicy::Double,
            Some("extended") => PrecisionPolicy::Extended,
            _ => PrecisionPolicy::Auto,
        }
    }
}

type Reporter = fn(&str, usize, usize);

static REPORTER: OnceLock<Reporter> = OnceLock::new();

/// Installs a callback receiving `(algebra, row, rows)` during S-matrix builds.
pub fn set_progress_reporter(f: Reporter) {
    let _ = REPORTER.set(f);
}

/// Modular data of one simple affine VOA `L(k, 0)`.
#[derive(Debug, Clone)]
pub struct ModularData {
    pub comp: Component,
    pub labels: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    pub s: Array2<Complex64>,
    pub h: Vec<Q>,
    /// Quantum dimensions from the sine product.
    pub qdims: Vec<f64>,
    pub dual: Vec<usize>,
    pub precision: Precision,
    pub unitarity_residual: f64,
}

/// Residuals measured on a freshly computed S-matrix.
#[derive(Debug, Clone, Copy)]
pub struct Checks {
    pub unitarity: f64,
    pub charge_conjugation: f64,
    pub symmetry: f64,
    /// Relative difference between S-ratio and sine-product quantum dimensions.
    pub qdim_agreement: f64,
    pub min_vacuum_row: f64,
}

impl Checks {
    fn worst(&self) -> f64 {
        self.unitarity
            .max(self.charge_conjugation)
            .max(self.symmetry)
            .max(self.qdim_agreement)
    }
}

pub(crate) fn complex_matmul(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    if a.iter().chain(b.iter()).all(|z| z.im == 0.0) {
        return a
            .mapv(|z| z.re)
            .dot(&b.mapv(|z| z.re))
            .mapv(|x| Complex64::new(x, 0.0));
    }
    let ar = a.mapv(|z| z.re);
    let ai = a.mapv(|z| z.im);
    let br = b.mapv(|z| z.re);
    let bi = b.mapv(|z| z.im);
    let re = ar.dot(&br) - ai.dot(&bi);
    let im = ar.dot(&bi) + ai.dot(&br);
    let mut out = Array2::<Complex64>::zeros(re.raw_dim());
    ndarray::Zip::from(&mut out)
        .and(&re)
        .and(&im)
        .for_each(|o, &r, &i| *o = Complex64::new(r, i));
    out
}

impl ModularData {
    pub fn build(comp: &Component, policy: PrecisionPolicy) -> Result<Self> {
        let labels = comp.level_weights();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let h = labels.iter().map(|l| comp.conformal_weight(l)).collect();
        let qdims = labels.iter().map(|l| qdim_sine(comp, l)).collect();
        let dual: Vec<usize> = {
            let idx: HashMap<&Vec<i64>, usize> =
                labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
            labels
                .iter()
                .map(|l| idx[&comp.rs.dual_weight(l)])
                .collect()
        };
        let mut md = ModularData {
            comp: comp.clone(),
            labels,
            index,
            s: Array2::zeros((0, 0)),
            h,
            qdims,
            dual,
            precision: Precision::Double,
            unitarity_residual: f64::NAN,
        };
        let first = match policy {
            PrecisionPolicy::Extended => Precision::Extended,
            _ => Precision::Double,
        };
        md.compute(first);
        let mut checks = md.checks();
        if checks.worst() > UNITARITY_TOL && policy == PrecisionPolicy::Auto {
            md.compute(Precision::Extended);
            checks = md.checks();
        }
        if checks.worst() > UNITARITY_TOL || checks.min_vacuum_row <= 0.0 {
            return Err(Error::Numerical(format!(
                "S-matrix of {comp} fails validation: {checks:?}"
            )));
        }
        md.unitarity_residual = checks.unitarity;
        Ok(md)
    }

    fn compute(&mut self, precision: Precision) {
        let name = self.comp.to_string();
        let mut report = |row: usize, rows: usize| {
            if let Some(f) = REPORTER.get() {
                f(&name, row, rows);
            }
        };
        self.s = compute_s(&self.comp, &self.labels, precision, &mut report);
        // With every label self-dual, S̄ = SC = S, so S is real.
        let self_dual = self.dual.iter().enumerate().all(|(i, &d)| i == d);
        if self_dual && self.s.iter().all(|z| z.im.abs() < REALITY_TOL) {
            self.s.mapv_inplace(|z| Complex64::new(z.re, 0.0));
        }
        self.precision = precision;
    }

    /// Measures unitarity, `S² = C`, symmetry and the agreement of S-ratio
    /// quantum dimensions with the sine product.
    pub fn checks(&self) -> Checks {
        let n = self.labels.len();
        let s = &self.s;
        let sdag = s.t().mapv(|z| z.conj());
        let ssd = complex_matmul(s, &sdag);
        let ss = complex_matmul(s, s);
        let mut unitarity: f64 = 0.0;
        let mut cc: f64 = 0.0;
        let mut symmetry: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let id = if a == b { 1.0 } else { 0.0 };
                unitarity = unitarity.max((ssd[[a, b]] - id).norm());
                let c = if self.dual[a] == b { 1.0 } else { 0.0 };
                cc = cc.max((ss[[a, b]] - c).norm());
                symmetry = symmetry.max((s[[a, b]] - s[[b, a]]).norm());
            }
        }
        let s00 = s[[0, 0]].re;
        let mut qdim_agreement: f64 = 0.0;
        let mut min_vacuum_row = f64::INFINITY;
        for b in 0..n {
            let z = s[[0, b]];
            min_vacuum_row = min_vacuum_row.min(z.re);
            qdim_agreement = qdim_agreement
                .max(z.im.abs())
                .max((z.re / s00 - self.qdims[b]).abs() / self.qdims[b].max(1.0));
        }
        Checks {
            unitarity,
            charge_conjugation: cc,
            symmetry,
            qdim_agreement,
            min_vacuum_row,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, lambda: &[i64]) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    pub fn qdim_ratio(&self, i: usize) -> f64 {
        self.s[[0, i]].re / self.s[[0, 0]].re
    }

    /// Raw Verlinde sums `N_ij^k` before rounding.
    pub fn verlinde_raw(&self, i: usize, j: usize) -> Vec<Complex64> {
        let n = self.len();
        let w: Vec<Complex64> = (0..n)
            .map(|m| self.s[[i, m]] * self.s[[j, m]] / self.s[[0, m]])
            .collect();
        (0..n)
            .map(|k| (0..n).map(|m| w[m] * self.s[[k, m]].conj()).sum())
            .collect()
    }

    /// Recomputes the S-matrix in extended precision, if the policy allows.
    fn escalated(&self) -> Option<ModularData> {
        if self.precision == Precision::Extended
            || PrecisionPolicy::from_env() != PrecisionPolicy::Auto
        {
            return None;
        }
        let mut md = self.clone();
        md.compute(Precision::Extended);
        Some(md)
    }

    /// Fusion product `i ⊠ j` as `(label index, coefficient)` pairs.
    pub fn fusion(&self, i: usize, j: usize) -> Result<Vec<(usize, u64)>> {
        self.fusion_once(i, j).or_else(|e| match self.escalated() {
            Some(md) => md.fusion_once(i, j),
            None => Err(e),
        })
    }

    fn fusion_once(&self, i: usize, j: usize) -> Result<Vec<(usize, u64)>> {
        let raw = self.verlinde_raw(i, j);
        round_coefficients(&raw).map(|v| {
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| *c > 0)
                .map(|(k, c)| (k, c as u64))
                .collect()
        })
    }

    /// `N[j][k] = N_{ij}^k` for all `j, k`, with the largest pre-rounding residual.
    pub fn fusion_matrix(&self, i: usize) -> Result<(Array2<i64>, f64)> {
        self.fusion_matrix_once(i)
            .or_else(|e| match self.escalated() {
                Some(md) => md.fusion_matrix_once(i),
                None => Err(e),
            })
    }

    fn fusion_matrix_once(&self, i: usize) -> Result<(Array2<i64>, f64)> {
        let n = self.len();
        let mut scaled = self.s.clone();
        for (m, mut col) in scaled.axis_iter_mut(Axis(1)).enumerate() {
            let d = self.s[[i, m]] / self.s[[0, m]];
            col.mapv_inplace(|z| z * d);
        }
        let sdag = self.s.t().mapv(|z| z.conj());
        let raw = complex_matmul(&scaled, &sdag);
        let mut out = Array2::<i64>::zeros((n, n));
        let mut worst: f64 = 0.0;
        for ((jk, z), o) in raw.indexed_iter().zip(out.iter_mut()) {
            let r = z.re.round();
            let res = (z.re - r).abs().max(z.im.abs());
            worst = worst.max(res);
            if res >= FUSION_TOL || r < 0.0 {
                return Err(Error::Numerical(format!(
                    "Verlinde sum at {:?} is {z}, not a non-negative integer",
                    (i, jk.0, jk.1)
                )));
            }
            *o = r as i64;
        }
        Ok((out, worst))
    }

    pub fn simple_currents(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (self.qdims[i] - 1.0).abs() < QDIM_TOL)
            .collect()
    }

    /// Permutation `λ ↦ J ⊠ λ` for a simple current `J`.
    pub fn current_action(&self, j: usize) -> Result<Vec<usize>> {
        if (self.qdims[j] - 1.0).abs() >= QDIM_TOL {
            return Err(Error::NotSimpleCurrent(format!("{:?}", self.labels[j])));
        }
        (0..self.len())
            .map(|l| {
                let f = self.fusion(j, l)?;
                match f.as_slice() {
                    [(k, 1)] => Ok(*k),
                    _ => Err(Error::Numerical(format!(
                        "fusion of current {:?} with {:?} is not a single module",
                        self.labels[j], self.labels[l]
                    ))),
                }
            })
            .collect()
    }
}

fn round_coefficients(raw: &[Complex64]) -> Result<Vec<i64>> {
    raw.iter()
        .map(|z| {
            let r = z.re.round();
            if (z.re - r).abs() >= FUSION_TOL || z.im.abs() >= FUSION_TOL || r < 0.0 {
                Err(Error::Numerical(format!(
                    "Verlinde sum {z} is not a non-negative integer"
                )))
            } else {
                Ok(r as i64)
            }
        })
        .collect()
}

/// Quantum dimension by the sine product over positive roots.
pub fn qdim_sine(comp: &Component, lambda: &[i64]) -> f64 {
    let rs = &comp.rs;
    let lr: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let den = (rs.gram_scale * comp.kappa()) as f64;
    let mut p = 1.0;
    for a in &rs.positive_roots_dynkin {
        let x = rs.inner_scaled(&lr, a) as f64;
        let y = rs.inner_scaled(&rs.rho, a) as f64;
        p *= (std::f64::consts::PI * x / den).sin() / (std::f64::consts::PI * y / den).sin();
    }
    p
}

static CACHE: OnceLock<Mutex<HashMap<String, Arc<ModularData>>>> = OnceLock::new();

/// Cached modular data for a simple component under the environment policy.
pub fn modular_data(comp: &Component) -> Result<Arc<ModularData>> {
    let policy = PrecisionPolicy::from_env();
    let key = format!("{comp}:{policy:?}");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(md) = cache.lock().unwrap().get(&key) {
        return Ok(md.clone());
    }
    let md = Arc::new(ModularData::build(comp, policy)?);
    cache.lock().unwrap().insert(key, md.clone());
    Ok(md)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repdata::AlgebraSpec;

    fn comp(s: &str) -> Component {
        AlgebraSpec::parse(s).unwrap().components.remove(0)
    }

    #[test]
    fn a4_level5_qdim() {
        let md = modular_data(&comp("A4_5")).unwrap();
        let i = md.index_of(&[1, 0, 0, 1]).unwrap();
        let want = 5.0 + 2.0 * 5f64.sqrt();
        assert!((md.qdims[i] - want).abs() < 1e-8);
        assert!((md.qdim_ratio(i) - want).abs() < 1e-8);
        assert!(md.unitarity_residual < 1e-10);
    }

    #[test]
    fn g2_level1_fusion() {
        let md = modular_data(&comp("G2_1")).unwrap();
        let l = md.index_of(&[1, 0]).unwrap();
        assert_eq!(md.fusion(l, l).unwrap(), vec![(0, 1), (l, 1)]);
        assert_eq!(md.fusion(0, l).unwrap(), vec![(l, 1)]);
    }

    #[test]
    fn a1_level1_fusion() {
        let md = modular_data(&comp("A1_1")).unwrap();
        assert_eq!(md.fusion(1, 1).unwrap(), vec![(0, 1)]);
        assert_eq!(md.simple_currents(), vec![0, 1]);
    }

    #[test]
    fn extended_agrees_with_double() {
        let c = comp("B3_2");
        let d = ModularData::build(&c, PrecisionPolicy::Double).unwrap();
        let e = ModularData::build(&c, PrecisionPolicy::Extended).unwrap();
        assert_eq!(e.precision, Precision::Extended);
        let diff = (&d.s - &e.s).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-13, "{diff}");
    }

    #[test]
    fn fusion_matrix_matches_pointwise() {
        let md = modular_data(&comp("A2_3")).unwrap();
        for i in 0..md.len() {
            let (m, res) = md.fusion_matrix(i).unwrap();
            assert!(res < 1e-9);
            for j in 0..md.len() {
                let f = md.fusion(i, j).unwrap();
                for k in 0..md.len() {
                    let c = f.iter().find(|(x, _)| *x == k).map(|x| x.1).unwrap_or(0);
                    assert_eq!(m[[j, k]] as u64, c);
                }
            }
        }
    }
}
