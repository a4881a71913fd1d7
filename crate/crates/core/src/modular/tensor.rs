//! Modular data of tensor products, formed componentwise without ever
//! materialising the Kronecker product of S-matrices.

use std::sync::Arc;

use num_complex::Complex64;

use super::{modular_data, ModularData, QDIM_TOL};
use crate::rational::Q;
use crate::repdata::{AlgebraSpec, ModuleLabel};
use crate::{Error, Result};

/// Labels are indexed in mixed radix, first component most significant,
/// which is the lexicographic order of [`AlgebraSpec::level_weights`].
#[derive(Debug, Clone)]
pub struct Modular {
    pub spec: AlgebraSpec,
    pub parts: Vec<Arc<ModularData>>,
    radices: Vec<usize>,
}

impl Modular {
    pub fn new(spec: &AlgebraSpec) -> Result<Self> {
        let parts = spec
            .components
            .iter()
            .map(modular_data)
            .collect::<Result<Vec<_>>>()?;
        let radices = parts.iter().map(|p| p.len()).collect();
        Ok(Modular {
            spec: spec.clone(),
            parts,
            radices,
        })
    }

    pub fn len(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut d = vec![0; self.radices.len()];
        for (slot, &r) in d.iter_mut().zip(&self.radices).rev() {
            *slot = idx % r;
            idx /= r;
        }
        d
    }

    pub fn compose(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&d, &r)| acc * r + d)
    }

    pub fn label(&self, idx: usize) -> ModuleLabel {
        ModuleLabel(
            self.digits(idx)
                .iter()
                .zip(&self.parts)
                .map(|(&d, p)| p.labels[d].clone())
                .collect(),
        )
    }

    pub fn labels(&self) -> Vec<ModuleLabel> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, m: &ModuleLabel) -> Result<usize> {
        self.spec.check(m)?;
        let digits =
            m.0.iter()
                .zip(&self.parts)
                .map(|(l, p)| {
                    p.index_of(l)
                        .ok_or_else(|| Error::Domain(format!("unknown label {l:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
        Ok(self.compose(&digits))
    }

    pub fn s(&self, a: usize, b: usize) -> Complex64 {
        self.digits(a)
            .iter()
            .zip(self.digits(b))
            .zip(&self.parts)
            .map(|((&x, y), p)| p.s[[x, y]])
            .product()
    }

    pub fn h(&self, a: usize) -> Q {
        self.digits(a)
            .iter()
            .zip(&self.parts)
            .map(|(&d, p)| p.h[d])
            .sum()
    }

    /// Sine-product quantum dimension.
    pub fn qdim(&self, a: usize) -> f64 {
        self.digits(a)
            .iter()
            .zip(&self.parts)
            .map(|(&d, p)| p.qdims[d])
            .product()
    }

    /// Quantum dimension as the vacuum-row ratio of S.
    pub fn qdim_ratio(&self, a: usize) -> f64 {
        self.digits(a)
            .iter()
            .zip(&self.parts)
            .map(|(&d, p)| p.qdim_ratio(d))
            .product()
    }

    pub fn contragredient(&self, a: usize) -> usize {
        let d: Vec<usize> = self
            .digits(a)
            .iter()
            .zip(&self.parts)
            .map(|(&d, p)| p.dual[d])
            .collect();
        self.compose(&d)
    }

    pub fn fusion(&self, a: usize, b: usize) -> Result<Vec<(usize, u64)>> {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut acc: Vec<(Vec<usize>, u64)> = vec![(Vec::new(), 1)];
        for ((p, &x), &y) in self.parts.iter().zip(&da).zip(&db) {
            let f = p.fusion(x, y)?;
            let mut next = Vec::with_capacity(acc.len() * f.len());
            for (prefix, c) in &acc {
                for &(k, n) in &f {
                    let mut v = prefix.clone();
                    v.push(k);
                    next.push((v, c * n));
                }
            }
            acc = next;
        }
        let mut out: Vec<(usize, u64)> = acc
            .into_iter()
            .map(|(d, c)| (self.compose(&d), c))
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn simple_currents(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (self.qdim(i) - 1.0).abs() < QDIM_TOL)
            .collect()
    }

    /// Permutation of all labels by fusion with the simple current `j`.
    pub fn current_action(&self, j: usize) -> Result<Vec<usize>> {
        let dj = self.digits(j);
        let perms = self
            .parts
            .iter()
            .zip(&dj)
            .map(|(p, &x)| p.current_action(x))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::NotSimpleCurrent(self.label(j).to_string()))?;
        Ok((0..self.len())
            .map(|i| {
                let d: Vec<usize> = self
                    .digits(i)
                    .iter()
                    .zip(&perms)
                    .map(|(&x, p)| p[x])
                    .collect();
                self.compose(&d)
            })
            .collect())
    }
}
