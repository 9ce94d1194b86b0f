use std::fmt::Write as _;

use anyhow::{bail, Result};
use serde_json::json;

use repknit_core::ar_knit::{ARKind, ARWindow};
use repknit_core::gamma_hat::{build_gamma_hat, LevelRange};
use repknit_core::hom::HomEngine;
use repknit_core::module_class::module_label;
use repknit_core::orbits::{bijection_table, degeneration_order, enumerate_modules, module_to_pair};
use repknit_core::projectivization::{graded_basis_dims, presentation, SigmaSet};
use repknit_core::qchar::{module_of_monomial, monomial_of_module, LaurentMonomial};
use repknit_core::repetitive::{build_repetitive_presentation, RepRelation};
use repknit_core::selfcheck::selfcheck;

use crate::job::Job;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Dot,
}

/// One output file: a default name (the stem is the key into `outputs`)
/// and its contents.
pub struct Artifact {
    pub name: String,
    pub content: String,
}

pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    pub passed: bool,
}

fn one(name: &str, content: String) -> Outcome {
    Outcome { artifacts: vec![Artifact { name: name.to_string(), content }], passed: true }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, f: Format) -> anyhow::Error {
    anyhow::anyhow!("{cmd}: format {f:?} is not supported")
}

pub fn describe(job: &Job, format: Format) -> Result<Outcome> {
    let q = &job.q;
    let (lo, hi) = job.degrees();
    let pres = build_repetitive_presentation(q, lo..=hi);
    let levels = job.config.window.map_or(LevelRange::new(-2, 2), |(a, b)| LevelRange::new(a, b));
    let g = build_gamma_hat(q, &job.xi, levels);
    let rel = |r: &RepRelation| -> String {
        let path = |p: &[repknit_core::repetitive::RepVertex]| p.iter().map(|x| x.label(q)).collect::<Vec<_>>().join(">");
        match r {
            RepRelation::Zero(p) => path(p),
            RepRelation::Commutation(a, b) => format!("{} - {}", path(a), path(b)),
        }
    };
    match format {
        Format::Tsv => {
            let mut out = String::new();
            let _ = writeln!(out, "quiver\t{}", q.dynkin_type());
            let _ = writeln!(out, "vertices\t{}", q.names().join(" "));
            let arrows: Vec<String> = q.arrows().iter().map(|&(s, t)| format!("{}>{}", q.name(s), q.name(t))).collect();
            let _ = writeln!(out, "arrows\t{}", arrows.join(" "));
            let heights: Vec<String> = (0..q.len()).map(|i| format!("{}:{}", q.name(i), job.xi.get(i))).collect();
            let _ = writeln!(out, "height\t{}", heights.join(" "));
            let _ = writeln!(out, "gamma_hat_levels\t{}..={}", levels.min, levels.max);
            let _ = writeln!(out, "gamma_hat_slots\t{}", g.slots.len());
            let _ = writeln!(out, "gamma_hat_arrows\t{}", g.arrows.len());
            let _ = writeln!(out, "gamma_hat_relations\t{}", g.relations.len());
            let _ = writeln!(out, "repetitive_degrees\t{lo}..={hi}");
            let _ = writeln!(out, "repetitive_vertices\t{}", pres.vertices.len());
            let _ = writeln!(out, "repetitive_arrows\t{}", pres.arrows.len());
            for r in &pres.relations {
                let _ = writeln!(out, "relation\t{}", rel(r));
            }
            Ok(one("describe.tsv", out))
        }
        Format::Json => {
            let v = json!({
                "quiver": repknit_core::config::QuiverSpec::of(q, &job.xi),
                "gamma_hat": {"levels": [levels.min, levels.max], "slots": g.slots.len(), "arrows": g.arrows.len(), "relations": g.relations.len()},
                "repetitive": {
                    "degrees": [lo, hi],
                    "vertices": pres.vertices.iter().map(|x| x.label(q)).collect::<Vec<_>>(),
                    "arrows": pres.arrows.iter().map(|a| format!("{}>{}", a.source.label(q), a.target.label(q))).collect::<Vec<_>>(),
                    "relations": pres.relations.iter().map(rel).collect::<Vec<_>>(),
                },
            });
            Ok(one("describe.json", json_text(&v)))
        }
        Format::Dot => Err(unsupported("describe", format)),
    }
}

pub fn knit(w: &ARWindow, format: Format) -> Result<Outcome> {
    match format {
        Format::Dot => Ok(one("knit.dot", w.to_dot())),
        Format::Json => Ok(one("knit.json", json_text(&w.to_json()))),
        Format::Tsv => {
            let q = w.quiver();
            let mut out = String::from("id\tslot\tkind\tdim\n");
            for v in w.vertices() {
                let kind = match v.kind {
                    ARKind::Stable => "stable".to_string(),
                    ARKind::Projective(x) => format!("P_{}", x.label(q)),
                };
                let _ = writeln!(out, "{}\t{}\t{}\t{}", v.id, w.slot_label(v.slot), kind, v.dim.display(q));
            }
            Ok(one("knit.tsv", out))
        }
    }
}

pub fn orbits(job: &Job, w: &ARWindow, format: Format) -> Result<Outcome> {
    let e = HomEngine::new(w);
    let classes = enumerate_modules(&e, &job.dim()?)?;
    let q = w.quiver();
    let pairs = classes.iter().map(|c| module_to_pair(&e, c)).collect::<repknit_core::Result<Vec<_>>>()?;
    match format {
        Format::Tsv => {
            let mut out = String::from("class\tV\tW\tmonomial\n");
            for (c, p) in classes.iter().zip(&pairs) {
                let side = |m: &std::collections::BTreeMap<repknit_core::gamma_hat::Slot, i64>| {
                    let parts: Vec<String> = m.iter().map(|(s, k)| format!("{}:{k}", w.slot_label(*s))).collect();
                    if parts.is_empty() { "0".to_string() } else { parts.join(" ") }
                };
                let m = monomial_of_module(&e, c)?;
                let _ = writeln!(out, "{}\t{}\t{}\t{}", c.label(w), side(&p.v), side(&p.w), m.display(q));
            }
            Ok(one("orbits.tsv", out))
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> =
                classes.iter().zip(&pairs).map(|(c, p)| json!({"class": c.label(w), "pair": p.to_json(q)})).collect();
            Ok(one("orbits.json", json_text(&json!({ "classes": rows }))))
        }
        Format::Dot => Err(unsupported("orbits", format)),
    }
}

pub fn bijection(job: &Job, w: &ARWindow, format: Format) -> Result<Outcome> {
    let e = HomEngine::new(w);
    let t = bijection_table(&e, &job.dim()?)?;
    match format {
        Format::Tsv => Ok(one("bijection-table.tsv", t.to_tsv(w))),
        Format::Json => {
            let v = json!({
                "rows": t.rows.iter().map(|s| w.slot_label(*s)).collect::<Vec<_>>(),
                "columns": t.columns.iter().map(|c| c.label(w)).collect::<Vec<_>>(),
                "values": t.values,
            });
            Ok(one("bijection-table.json", json_text(&v)))
        }
        Format::Dot => Err(unsupported("bijection-table", format)),
    }
}

pub fn poset(job: &Job, w: &ARWindow, format: Format) -> Result<Outcome> {
    let e = HomEngine::new(w);
    let classes = enumerate_modules(&e, &job.dim()?)?;
    let p = degeneration_order(&e, &classes)?;
    match format {
        Format::Dot => Ok(one("poset.dot", p.to_dot(w))),
        Format::Tsv => {
            let mut out = String::from("class");
            for c in &p.classes {
                let _ = write!(out, "\t{}", c.label(w));
            }
            out.push('\n');
            for (a, c) in p.classes.iter().enumerate() {
                out.push_str(&c.label(w));
                for b in 0..p.classes.len() {
                    let _ = write!(out, "\t{}", u8::from(p.le[a][b]));
                }
                out.push('\n');
            }
            Ok(one("poset.tsv", out))
        }
        Format::Json => {
            let v = json!({
                "classes": p.classes.iter().map(|c| c.label(w)).collect::<Vec<_>>(),
                "covers": p.hasse(),
            });
            Ok(one("poset.json", json_text(&v)))
        }
    }
}

/// Class to monomial when `class` is set, monomial to class when
/// `monomial` is set; both when both are.
pub fn monomial(job: &Job, w: &ARWindow, format: Format) -> Result<Outcome> {
    if format != Format::Json {
        return Err(unsupported("monomial", format));
    }
    let e = HomEngine::new(w);
    let q = w.quiver();
    let mut artifacts = Vec::new();
    if !job.config.class.is_empty() {
        let m = monomial_of_module(&e, &job.class()?)?;
        artifacts.push(Artifact { name: "monomial.json".into(), content: json_text(&m.to_json(q)) });
    }
    if let Some(text) = &job.config.monomial {
        let m = LaurentMonomial::parse(q, text)?;
        let c = module_of_monomial(&e, &m)?;
        let summands: serde_json::Map<String, serde_json::Value> =
            c.summands().map(|(s, k)| (w.slot_label(s), json!(k))).collect();
        let v = json!({"class": c.label(w), "summands": summands});
        artifacts.push(Artifact { name: "class.json".into(), content: json_text(&v) });
    }
    if artifacts.is_empty() {
        bail!("monomial: config sets neither `class` nor `monomial`");
    }
    Ok(Outcome { artifacts, passed: true })
}

pub fn sigma_algebra(job: &Job, format: Format) -> Result<Outcome> {
    let q = &job.q;
    let sigma = SigmaSet::new(q, &job.xi, job.sigma()?)?;
    if sigma.is_empty() {
        bail!("sigma-algebra: config field `sigma` is empty");
    }
    let table = graded_basis_dims(q, &job.xi, &sigma, None)?;
    let pres = presentation(q, &job.xi, &sigma);
    match format {
        Format::Tsv => Ok(Outcome {
            artifacts: vec![
                Artifact { name: "sigma-algebra.tsv".into(), content: table.to_tsv(q) },
                Artifact { name: "presentation.txt".into(), content: pres.to_text(q) },
            ],
            passed: true,
        }),
        Format::Json => {
            let v = json!({
                "vertices": pres.vertices.len(),
                "arrows": pres.arrows.len(),
                "relation_dims": pres.relation_dims,
                "relations": pres.quadratic_relations.iter().map(|r| pres.relation_string(r)).collect::<Vec<_>>(),
                "total_dim": table.total_dim(),
            });
            Ok(one("sigma-algebra.json", json_text(&v)))
        }
        Format::Dot => Err(unsupported("sigma-algebra", format)),
    }
}

/// Hom dimensions between the vertices at least one margin inside the window.
pub fn hom(w: &ARWindow, format: Format) -> Result<Outcome> {
    let e = HomEngine::new(w);
    let ids: Vec<usize> = w.vertices().iter().filter(|v| w.is_interior(v.slot)).map(|v| v.id).collect();
    let label = |id: usize| format!("{} {}", w.slot_label(w.vertex(id).slot), module_label(w, id));
    let mut rows = Vec::with_capacity(ids.len());
    for &a in &ids {
        rows.push(ids.iter().map(|&b| e.hom_dim(a, b)).collect::<repknit_core::Result<Vec<i64>>>()?);
    }
    match format {
        Format::Tsv => {
            let mut out = String::from("from\\to");
            for &b in &ids {
                let _ = write!(out, "\t{}", label(b));
            }
            out.push('\n');
            for (&a, row) in ids.iter().zip(&rows) {
                out.push_str(&label(a));
                for v in row {
                    let _ = write!(out, "\t{v}");
                }
                out.push('\n');
            }
            Ok(one("hom.tsv", out))
        }
        Format::Json => {
            let v = json!({"modules": ids.iter().map(|&id| label(id)).collect::<Vec<_>>(), "hom": rows});
            Ok(one("hom.json", json_text(&v)))
        }
        Format::Dot => Err(unsupported("hom", format)),
    }
}

pub fn run_selfcheck(job: &Job, seed: u64, format: Format) -> Result<Outcome> {
    let report = selfcheck(&job.q, &job.xi, job.degrees(), seed)?;
    let artifact = match format {
        Format::Tsv => Artifact { name: "selfcheck.txt".into(), content: report.to_text() },
        Format::Json => Artifact { name: "selfcheck.json".into(), content: json_text(&report.to_json()) },
        Format::Dot => return Err(unsupported("selfcheck", format)),
    };
    Ok(Outcome { artifacts: vec![artifact], passed: report.ok() })
}
