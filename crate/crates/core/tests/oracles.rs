//! Checks against closed-form formulas written out independently of the
//! library's root-system code.

use std::f64::consts::PI;

use num_traits::Zero;
use voa_core::modular::{modular_data, qdim_sine, Modular};
use voa_core::orbifold::integral_census;
use voa_core::rational::{q, qi, Q};
use voa_core::repdata::{AlgebraSpec, ModuleLabel};

/// Fundamental weights and `ρ` in an orthonormal-type model, with the bilinear
/// form scaled so long roots have norm 2.
struct Model {
    fund: Vec<Vec<Q>>,
    rho: Vec<Q>,
    scale: Q,
    dual_coxeter: i64,
}

impl Model {
    fn weight(&self, l: &[i64]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.rho.len()];
        for (c, f) in l.iter().zip(&self.fund) {
            for (x, y) in v.iter_mut().zip(f) {
                *x += qi(*c) * y;
            }
        }
        v
    }

    fn form(&self, a: &[Q], b: &[Q]) -> Q {
        self.scale * a.iter().zip(b).map(|(x, y)| x * y).sum::<Q>()
    }

    fn conformal_weight(&self, l: &[i64], level: i64) -> Q {
        let w = self.weight(l);
        let w2: Vec<Q> = w
            .iter()
            .zip(&self.rho)
            .map(|(a, r)| a + qi(2) * r)
            .collect();
        self.form(&w, &w2) / qi(2 * (level + self.dual_coxeter))
    }
}

fn model(t: &str) -> Model {
    let n: usize = t[1..].parse().unwrap();
    let prefix = |i: usize, len: usize| -> Vec<Q> {
        (0..len)
            .map(|j| if j < i { qi(1) } else { Q::zero() })
            .collect()
    };
    match &t[..1] {
        // e_1..e_{n+1} modulo the all-ones vector, realised by projecting.
        "A" => {
            let m = n + 1;
            let fund = (1..=n)
                .map(|i| {
                    (0..m)
                        .map(|j| if j < i { qi(1) } else { Q::zero() } - q(i as i64, m as i64))
                        .collect()
                })
                .collect();
            let rho = (0..m).map(|j| q(n as i64, 2) - qi(j as i64)).collect();
            Model {
                fund,
                rho,
                scale: qi(1),
                dual_coxeter: m as i64,
            }
        }
        "C" => Model {
            fund: (1..=n).map(|i| prefix(i, n)).collect(),
            rho: (0..n).map(|j| qi((n - j) as i64)).collect(),
            scale: q(1, 2),
            dual_coxeter: n as i64 + 1,
        },
        "D" => {
            let mut fund: Vec<Vec<Q>> = (1..=n - 2).map(|i| prefix(i, n)).collect();
            let mut spin = vec![q(1, 2); n];
            spin[n - 1] = q(-1, 2);
            fund.push(spin);
            fund.push(vec![q(1, 2); n]);
            Model {
                fund,
                rho: (0..n).map(|j| qi((n - 1 - j) as i64)).collect(),
                scale: qi(1),
                dual_coxeter: 2 * n as i64 - 2,
            }
        }
        // G2 in the plane x+y+z = 0, short root α1 = e1 - e2, long α2 = -2e1 + e2 + e3.
        "G" => Model {
            fund: vec![vec![Q::zero(), qi(-1), qi(1)], vec![qi(-1), qi(-1), qi(2)]],
            rho: vec![qi(-1), qi(-2), qi(3)],
            scale: q(1, 3),
            dual_coxeter: 4,
        },
        _ => panic!("no model for {t}"),
    }
}

fn check_census(spec: &str) -> usize {
    let s = AlgebraSpec::parse(spec).unwrap();
    let parts: Vec<(Model, i64)> = spec
        .split('+')
        .map(|p| {
            let (t, k) = p.split_once('_').unwrap();
            (model(t), k.parse().unwrap())
        })
        .collect();
    let mut count = 0;
    for l in s.level_weights() {
        let h: Q = parts
            .iter()
            .zip(&l.0)
            .map(|((m, k), x)| m.conformal_weight(x, *k))
            .sum();
        assert_eq!(h, s.conformal_weight(&l), "{spec} {l}");
        if h.is_integer() && h >= qi(2) {
            count += 1;
        }
    }
    assert_eq!(count, integral_census(&s).len());
    count
}

#[test]
fn model_spot_values() {
    assert_eq!(model("A1").conformal_weight(&[1], 2), q(3, 16));
    assert_eq!(model("C2").conformal_weight(&[1, 0], 3), q(5, 24));
    assert_eq!(
        model("A5").conformal_weight(&[1, 0, 0, 0, 0], 6),
        q(35, 144)
    );
    assert_eq!(model("G2").conformal_weight(&[1, 0], 1), q(2, 5));
    assert_eq!(
        model("D7").conformal_weight(&[1, 0, 0, 0, 0, 0, 0], 3),
        q(13, 30)
    );
}

#[test]
fn integral_census_counts() {
    assert_eq!(check_census("C4_10"), 46);
    assert_eq!(check_census("D7_3+A3_1+G2_1"), 23);
    assert_eq!(check_census("C7_2+A3_1"), 11);
    assert_eq!(check_census("A5_6+C2_3+A1_2"), 229);
}

fn su2_fusion(k: i64, a: i64, b: i64, c: i64) -> u64 {
    let ok = c >= (a - b).abs() && c <= (a + b).min(2 * k - a - b) && (a + b + c) % 2 == 0;
    ok as u64
}

#[test]
fn su2_modular_data() {
    for k in 1..=8 {
        let spec = AlgebraSpec::parse(&format!("A1_{k}")).unwrap();
        let md = modular_data(&spec.components[0]).unwrap();
        let n = (k + 2) as f64;
        for a in 0..=k {
            let ia = md.index_of(&[a]).unwrap();
            let qd = ((a + 1) as f64 * PI / n).sin() / (PI / n).sin();
            assert!((md.qdims[ia] - qd).abs() < 1e-12);
            assert!((qdim_sine(&spec.components[0], &[a]) - qd).abs() < 1e-12);
            for b in 0..=k {
                let ib = md.index_of(&[b]).unwrap();
                let s = (2.0 / n).sqrt() * ((a + 1) as f64 * (b + 1) as f64 * PI / n).sin();
                assert!((md.s[[ia, ib]].re - s).abs() < 1e-12 && md.s[[ia, ib]].im.abs() < 1e-12);
                let fused = md.fusion(ia, ib).unwrap();
                for c in 0..=k {
                    let ic = md.index_of(&[c]).unwrap();
                    let n_abc = fused.iter().find(|(i, _)| *i == ic).map_or(0, |(_, m)| *m);
                    assert_eq!(n_abc, su2_fusion(k, a, b, c), "k={k} {a}x{b}->{c}");
                }
            }
        }
    }
}

#[test]
fn su3_level_one_is_z3() {
    let spec = AlgebraSpec::parse("A2_1").unwrap();
    let m = Modular::new(&spec).unwrap();
    let l = |s: &str| m.index_of(&ModuleLabel::parse(s).unwrap()).unwrap();
    assert_eq!(
        m.fusion(l("[1,0]"), l("[1,0]")).unwrap(),
        vec![(l("[0,1]"), 1)]
    );
    assert_eq!(
        m.fusion(l("[1,0]"), l("[0,1]")).unwrap(),
        vec![(l("[0,0]"), 1)]
    );
    assert_eq!(m.h(l("[1,0]")), q(1, 3));
}
