use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::rootsys::RootSystem;

/// Weights of a finite-dimensional irreducible module with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    pub weights: BTreeMap<Vec<i64>, u64>,
}

impl WeightSystem {
    pub fn total(&self) -> u128 {
        self.weights.values().map(|&m| m as u128).sum()
    }

    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.weights.get(mu).copied().unwrap_or(0)
    }
}

/// Dominant weights `μ ≤ top`, reached by subtracting positive roots while
/// staying dominant.
pub(crate) fn dominant_below(rs: &RootSystem, top: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(top.to_vec());
    let mut queue = VecDeque::from([top.to_vec()]);
    let mut out = Vec::new();
    while let Some(mu) = queue.pop_front() {
        for a in &rs.positive_roots_dynkin {
            let nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x - y).collect();
            if nu.iter().all(|&x| x >= 0) && seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
        out.push(mu);
    }
    out
}

pub(crate) fn rho_norm(rs: &RootSystem, mu: &[i64]) -> i64 {
    let v: Vec<i64> = mu.iter().map(|x| x + 1).collect();
    rs.inner_scaled(&v, &v)
}

/// Dominant part of the weight system via Freudenthal's recursion.
pub fn dominant_weight_system(rs: &RootSystem, lambda: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let mut cands = dominant_below(rs, lambda);
    cands.sort_by_key(|mu| std::cmp::Reverse(rho_norm(rs, mu)));
    let top = rho_norm(rs, lambda);
    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    mult.insert(lambda.to_vec(), 1);
    for mu in &cands {
        if mu.as_slice() == lambda {
            continue;
        }
        let denom = top - rho_norm(rs, mu);
        assert!(denom > 0, "Freudenthal denominator vanished at {mu:?}");
        let mut num: i128 = 0;
        for a in &rs.positive_roots_dynkin {
            let mut nu = mu.clone();
            loop {
                for (x, y) in nu.iter_mut().zip(a) {
                    *x += y;
                }
                let m = mult.get(&rs.dominant(&nu).0).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                num += 2 * m as i128 * rs.inner_scaled(&nu, a) as i128;
            }
        }
        assert_eq!(
            num % denom as i128,
            0,
            "Freudenthal quotient not integral at {mu:?}"
        );
        let m = (num / denom as i128) as i64;
        assert!(
            m > 0,
            "dominant weight {mu:?} below {lambda:?} has multiplicity {m}"
        );
        mult.insert(mu.clone(), m);
    }
    mult.into_iter().map(|(k, v)| (k, v as u64)).collect()
}

/// Full weight system, expanding each dominant weight to its Weyl orbit.
pub fn weight_system(rs: &RootSystem, lambda: &[i64]) -> WeightSystem {
    let dom = dominant_weight_system(rs, lambda);
    let mut weights = BTreeMap::new();
    for (mu, m) in dom {
        for w in rs.weyl_orbit(&mu) {
            weights.insert(w, m);
        }
    }
    WeightSystem { weights }
}
