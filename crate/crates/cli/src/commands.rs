//! One function per subcommand, each returning the table it prints.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use voa_core::innerauto::{
    fixed_subalgebra, sigma_order, twist_norm, twist_report as core_twist_report, TwistVector,
};
use voa_core::modular::{qdim_sine, Modular};
use voa_core::orbifold::multiplicity::long_simple_root_probe;
use voa_core::orbifold::{
    census_rows, integral_census, labels_of_weight, mirror_consistency, mirror_pairs,
    orbifold_report, published_census, qdim_square_partition, solve_multiplicities, table6_cases,
    weight_two_system,
};
use voa_core::rational::qi;
use voa_core::repdata::{AlgebraSpec, ModuleLabel};
use voa_core::scext::{build_extension, classify_extension_modules};

use crate::table::{dec, rat, Format, Table};

const MAX_SMATRIX_LABELS: usize = 2000;

fn spec(s: &str) -> Result<AlgebraSpec> {
    AlgebraSpec::parse(s).with_context(|| format!("algebra {s:?}"))
}

fn label(spec: &AlgebraSpec, s: &str) -> Result<ModuleLabel> {
    spec.parse_label(s)
        .with_context(|| format!("label {s:?} for {spec}"))
}

fn complex(z: Complex64) -> String {
    if z.im == 0.0 {
        dec(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", dec(z.re), dec(-z.im))
    } else {
        format!("{}+{}i", dec(z.re), dec(z.im))
    }
}

fn bundled_twist(s: &AlgebraSpec) -> Result<TwistVector> {
    table6_cases()?
        .into_iter()
        .find(|c| c.spec == *s)
        .map(|c| c.u)
        .with_context(|| format!("no bundled twist for {s}; pass --u"))
}

pub fn smatrix(s: &str) -> Result<Table> {
    let s = spec(s)?;
    let m = Modular::new(&s)?;
    if m.len() > MAX_SMATRIX_LABELS {
        bail!(
            "{} has {} modules; the limit is {MAX_SMATRIX_LABELS}",
            s,
            m.len()
        );
    }
    let labels = m.labels();
    let mut cols = vec!["label".to_string()];
    cols.extend(labels.iter().map(|l| l.to_string()));
    let mut t = Table {
        columns: cols,
        rows: Vec::new(),
    };
    for (a, l) in labels.iter().enumerate() {
        let mut row = vec![l.to_string()];
        row.extend((0..m.len()).map(|b| complex(m.s(a, b))));
        t.push(row);
    }
    Ok(t)
}

pub fn fusion(s: &str, a: &str, b: &str) -> Result<Table> {
    let s = spec(s)?;
    let (a, b) = (label(&s, a)?, label(&s, b)?);
    let m = Modular::new(&s)?;
    let mut t = Table::new(&["label", "multiplicity"]);
    for (k, n) in m.fusion(m.index_of(&a)?, m.index_of(&b)?)? {
        t.push(vec![m.label(k).to_string(), n.to_string()]);
    }
    Ok(t)
}

pub fn qdim(s: &str, l: &str) -> Result<String> {
    let s = spec(s)?;
    let l = label(&s, l)?;
    Ok(dec(module_qdim(&s, &l)))
}

fn module_qdim(s: &AlgebraSpec, l: &ModuleLabel) -> f64 {
    s.components
        .iter()
        .zip(&l.0)
        .map(|(c, x)| qdim_sine(c, x))
        .product()
}

pub fn modules(s: &str, integral: bool) -> Result<Table> {
    let s = spec(s)?;
    let labels = if integral {
        integral_census(&s)
    } else {
        s.level_weights()
    };
    let mut t = Table::new(&["label", "conformal weight", "dimension", "qdim"]);
    for l in labels {
        t.push(vec![
            l.to_string(),
            rat(&s.conformal_weight(&l)),
            s.weyl_dim(&l).to_string(),
            dec(module_qdim(&s, &l)),
        ]);
    }
    Ok(t)
}

pub fn ext_classify(base: &str, generator: &str, untwisted_only: bool) -> Result<Table> {
    let s = spec(base)?;
    let g = label(&s, generator)?;
    let ext = build_extension(&s, &g)?;
    let mut t = Table::new(&[
        "branching",
        "stabilizer",
        "lift",
        "untwisted",
        "conformal weight",
        "qdim",
        "qdim^2",
    ]);
    for m in classify_extension_modules(&ext, untwisted_only) {
        let branching: Vec<String> = m.orbit.iter().map(|l| l.to_string()).collect();
        t.push(vec![
            branching.join(" "),
            m.stabilizer_order.to_string(),
            m.character_index.to_string(),
            m.untwisted.to_string(),
            rat(&m.conformal_weight),
            dec(m.qdim_ext),
            dec(m.qdim_ext * m.qdim_ext),
        ]);
    }
    Ok(t)
}

pub fn twist_report(s: &str, u: &str, labels: &[String]) -> Result<Table> {
    let s = spec(s)?;
    let u = TwistVector::parse(u)?;
    u.check(&s)?;
    let mods = if labels.is_empty() {
        integral_census(&s)
    } else {
        labels.iter().map(|l| label(&s, l)).collect::<Result<_>>()?
    };
    let mut t = Table::new(&[
        "label",
        "conformal weight",
        "(u|L)",
        "twisted conformal weight",
    ]);
    for r in core_twist_report(&s, &u, &mods)? {
        t.push(vec![
            r.module.to_string(),
            rat(&r.conformal_weight),
            rat(&r.pairing),
            rat(&r.twisted_cw),
        ]);
    }
    Ok(t)
}

pub fn twist_fixed(s: &str, u: &str) -> Result<Table> {
    let s = spec(s)?;
    let u = TwistVector::parse(u)?;
    u.check(&s)?;
    let fixed = fixed_subalgebra(&s, &u)?;
    let mut mods = vec![s.vacuum()];
    mods.extend(integral_census(&s));
    let mut t = Table::new(&[
        "algebra",
        "u",
        "<u|u>",
        "order",
        "fixed subalgebra",
        "fixed dim",
    ]);
    t.push(vec![
        s.to_string(),
        u.to_string(),
        rat(&twist_norm(&s, &u)),
        sigma_order(&s, &u, &mods).to_string(),
        fixed.to_string(),
        fixed.dim.to_string(),
    ]);
    Ok(t)
}

pub fn table6() -> Result<Table> {
    let mut t = Table::new(&[
        "V1",
        "dim V1",
        "u",
        "<u|u>",
        "fixed subalgebra",
        "fixed dim",
        "condition (I)",
        "min twisted weight",
        "orbifold V1",
        "orbifold dim V1",
    ]);
    for c in table6_cases()? {
        let r = orbifold_report(&c.spec, &c.u)?;
        t.push(vec![
            c.spec.to_string(),
            r.dim_v1.to_string(),
            c.u.to_string(),
            rat(&r.twist_norm),
            r.fixed,
            r.dim_fixed_v1.to_string(),
            if r.condition_i.certified {
                "certified"
            } else {
                "fails"
            }
            .to_string(),
            rat(&r.condition_i.min_twisted_cw),
            c.orbifold_type.to_string(),
            r.dim_tilde_v1
                .map_or_else(|| "?".to_string(), |d| d.to_string()),
        ]);
    }
    Ok(t)
}

pub fn census(s: &str, u: Option<&str>, compare: bool) -> Result<Table> {
    let s = spec(s)?;
    let u = match u {
        Some(u) => TwistVector::parse(u)?,
        None => bundled_twist(&s)?,
    };
    u.check(&s)?;
    let rows = census_rows(&s, &u)?;
    let mut cols = vec![
        "label",
        "conformal weight",
        "(u|L)",
        "twisted conformal weight",
    ];
    if !compare {
        let mut t = Table::new(&cols);
        for r in rows {
            t.push(vec![
                r.label.to_string(),
                rat(&r.conformal_weight),
                rat(&r.pairing),
                rat(&r.twisted_cw),
            ]);
        }
        return Ok(t);
    }
    let published = published_census(&s)?.with_context(|| format!("no published table for {s}"))?;
    cols.extend(["published (u|L)", "published twisted weight", "match"]);
    let mut t = Table::new(&cols);
    for r in rows {
        let p = published.iter().find(|p| p.label == r.label);
        let cell =
            |f: &dyn Fn(&voa_core::orbifold::CensusRow) -> String| p.map_or("-".to_string(), f);
        t.push(vec![
            r.label.to_string(),
            rat(&r.conformal_weight),
            rat(&r.pairing),
            rat(&r.twisted_cw),
            cell(&|p| rat(&p.pairing)),
            cell(&|p| rat(&p.twisted_cw)),
            p.is_some_and(|p| *p == r).to_string(),
        ]);
    }
    Ok(t)
}

pub fn multiplicities(s: &str) -> Result<Table> {
    let s = spec(s)?;
    let candidates = labels_of_weight(&s, qi(2));
    let probes: Vec<_> = (0..s.len())
        .map(|i| long_simple_root_probe(&s, i))
        .collect();
    let sys = weight_two_system(&s, &candidates, &probes)?;
    let sols = solve_multiplicities(&sys)?;
    if sols.is_empty() {
        bail!("the weight-two system for {s} has no non-negative integer solution");
    }
    let mut cols: Vec<String> = vec!["label".into()];
    cols.extend(sys.rows.iter().map(|r| r.name.clone()));
    cols.extend((1..=sols.len()).map(|i| {
        if sols.len() == 1 {
            "multiplicity".to_string()
        } else {
            format!("multiplicity {i}")
        }
    }));
    let mut t = Table {
        columns: cols,
        rows: Vec::new(),
    };
    let mut rhs = vec!["total".to_string()];
    rhs.extend(sys.rows.iter().map(|r| rat(&r.rhs)));
    rhs.extend(sols.iter().map(|_| "-".to_string()));
    for (j, c) in candidates.iter().enumerate() {
        let mut row = vec![c.to_string()];
        row.extend(sys.rows.iter().map(|r| rat(&r.coeffs[j])));
        row.extend(sols.iter().map(|m| m[j].to_string()));
        t.push(row);
    }
    t.push(rhs);
    Ok(t)
}

pub fn mirror_check() -> Result<(Table, bool)> {
    let rows = mirror_consistency(&mirror_pairs()?)?;
    let mut t = Table::new(&[
        "A3_8 label",
        "A7_4 label",
        "qdim A3_8",
        "qdim A7_4",
        "conformal weight",
        "weight-one dim",
        "pass",
    ]);
    let fmt = |v: &[i64]| ModuleLabel(vec![v.to_vec()]).to_string();
    let mut ok = true;
    for r in rows {
        ok &= r.passes();
        t.push(vec![
            fmt(&r.pair.a),
            fmt(&r.pair.psi),
            dec(r.qdim_a),
            dec(r.qdim_psi),
            rat(&r.conformal_weight),
            r.dim1.to_string(),
            r.passes().to_string(),
        ]);
    }
    Ok((t, ok))
}

pub fn partition(base: &str, generator: &str, field: i64) -> Result<Table> {
    let s = spec(base)?;
    let g = label(&s, generator)?;
    if field < 2 {
        bail!("field radicand must be at least 2");
    }
    let ext = build_extension(&s, &g)?;
    let mods = classify_extension_modules(&ext, true);
    let report = qdim_square_partition(&mods, field)?;
    let mut t = Table::new(&["module", "qdim^2"]);
    for (m, q2) in mods.iter().zip(&report.squares) {
        t.push(vec![
            format!("{}#{}", m.orbit[0], m.character_index),
            q2.to_string(),
        ]);
    }
    t.push(vec!["total".into(), report.total.to_string()]);
    t.push(vec![
        "balanced partition".into(),
        report.balanced.to_string(),
    ]);
    Ok(t)
}

/// Every reference table, keyed by file stem.
pub fn golden_tables() -> Result<Vec<(String, Table)>> {
    let mut out = vec![("table6".to_string(), table6()?)];
    for c in table6_cases()? {
        out.push((
            format!("census_{}", c.spec),
            census(&c.spec.to_string(), None, false)?,
        ));
    }
    out.push(("multiplicities".into(), multiplicities("C5_3+G2_2+A1_1")?));
    out.push(("mirror".into(), mirror_check()?.0));
    out.push(("partition_A4_5".into(), partition("A4_5", "[5,0,0,0]", 5)?));
    for (base, generator) in [
        ("E6_3", "[3,0,0,0,0,0]"),
        ("A4_5", "[5,0,0,0]"),
        ("C5_3+A1_1", "[0,0,0,0,3]x[1]"),
        ("A7_4", "[0,4,0,0,0,0,0]"),
    ] {
        eprintln!("extension of {base}");
        out.push((format!("ext_{base}"), ext_classify(base, generator, true)?));
    }
    Ok(out)
}

pub fn write_golden(dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let ext = match format {
        Format::Tsv => "tsv",
        Format::Json => "json",
    };
    let mut written = Vec::new();
    for (stem, t) in golden_tables()? {
        let path = dir.join(format!("{stem}.{ext}"));
        std::fs::write(&path, t.render(format))
            .with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}
