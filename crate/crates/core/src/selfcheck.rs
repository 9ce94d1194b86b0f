//! Invariant suite run by the `selfcheck` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::ar_knit::{default_margin, window_for_degrees, ARWindow, VertexId};
use crate::error::Result;
use crate::hom::{add_to, HomEngine, RSplitElement};
use crate::oracle::cross_check;
use crate::projectivization::verify_repetitive_iso;
use crate::quiver::{DynkinQuiver, HeightFunction};
use crate::repetitive::{build_repetitive_presentation, DimVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SelfcheckReport {
    pub quiver: String,
    pub degrees: (i64, i64),
    pub seed: u64,
    pub checks: Vec<CheckLine>,
}

impl SelfcheckReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("selfcheck {} degrees {}..={} seed {}\n", self.quiver, self.degrees.0, self.degrees.1, self.seed);
        for c in &self.checks {
            out.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "quiver": self.quiver,
            "degrees": [self.degrees.0, self.degrees.1],
            "seed": self.seed,
            "ok": self.ok(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

fn line(name: &str, passed: bool, detail: String) -> CheckLine {
    CheckLine { name: name.to_string(), passed, detail }
}

/// Stable vertices in every run of `h` consecutive interior levels.
pub fn stable_count_check(w: &ARWindow) -> CheckLine {
    let q = w.quiver();
    let h = q.coxeter_number();
    let roots = q.positive_roots().len();
    let r = w.range();
    let (lo, hi) = (r.min + w.margin(), r.max - w.margin());
    let mut bad = Vec::new();
    let mut runs = 0;
    for start in lo..=hi - h + 1 {
        let n = w.stable_ids().filter(|&id| (start..start + h).contains(&w.vertex(id).slot.level)).count();
        runs += 1;
        if n != roots {
            bad.push(format!("levels {start}..{}: {n}", start + h));
        }
    }
    let passed = bad.is_empty() && runs > 0;
    let detail = if passed { format!("{roots} per {h} levels over {runs} runs") } else { format!("expected {roots}; {}", bad.join(", ")) };
    line("stable vertices per period", passed, detail)
}

pub fn mesh_additivity_check(w: &ARWindow) -> CheckLine {
    let bad: Vec<String> = w
        .meshes()
        .iter()
        .filter(|m| {
            let mid = m.middles.iter().fold(DimVector::zero(), |acc, &e| acc.plus(&w.vertex(e).dim));
            w.vertex(m.start).dim.plus(&w.vertex(m.end).dim) != mid
        })
        .map(|m| w.label(m.end))
        .collect();
    let n = w.meshes().len();
    line("mesh additivity", bad.is_empty() && n > 0, if bad.is_empty() { format!("{n} meshes") } else { bad.join(", ") })
}

fn interior(w: &ARWindow) -> Vec<VertexId> {
    w.vertices().iter().filter(|v| w.is_interior(v.slot)).map(|v| v.id).collect()
}

/// `h([L], r_M) = δ_{LM}` on interior vertices.
pub fn pairing_check(e: &HomEngine<'_>) -> Result<CheckLine> {
    let w = e.window();
    let ids = interior(w);
    let mut bad = Vec::new();
    for &m in &ids {
        let r = e.r_element(m)?;
        for &l in &ids {
            if e.h(&RSplitElement::from([(l, 1)]), &r)? != i64::from(l == m) {
                bad.push(format!("({}, {})", w.label(l), w.label(m)));
            }
        }
    }
    let n = ids.len();
    Ok(line("pairing with r-basis", bad.is_empty() && n > 0, if bad.is_empty() { format!("{n}x{n} identity") } else { bad.join(", ") }))
}

/// `x = Σ_M h(x, r_M) [M]` for `samples` random elements on interior vertices.
pub fn reconstruction_check<R: Rng + ?Sized>(e: &HomEngine<'_>, rng: &mut R, samples: usize) -> Result<CheckLine> {
    let w = e.window();
    let ids = interior(w);
    let rs: Vec<(VertexId, RSplitElement)> = w.vertices().iter().filter_map(|v| e.r_element(v.id).ok().map(|r| (v.id, r))).collect();
    let mut failures = 0;
    for _ in 0..samples {
        let mut x = RSplitElement::new();
        for _ in 0..rng.gen_range(1..=4) {
            add_to(&mut x, *ids.choose(rng).expect("interior vertices"), rng.gen_range(-3..=3));
        }
        let mut back = RSplitElement::new();
        for (m, r) in &rs {
            add_to(&mut back, *m, e.h(&x, r)?);
        }
        if back != x {
            failures += 1;
        }
    }
    Ok(line(
        "Grothendieck reconstruction",
        failures == 0 && !ids.is_empty(),
        format!("{} of {samples} elements reconstructed", samples - failures),
    ))
}

/// Runs every check on a window holding the projectives of degrees
/// `degrees.0..degrees.1`; randomness comes from `seed` alone.
pub fn selfcheck(q: &DynkinQuiver, xi: &HeightFunction, degrees: (i64, i64), seed: u64) -> Result<SelfcheckReport> {
    let (lo, hi) = degrees;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = window_for_degrees(q, xi, 0, lo, hi, default_margin(q))?;
    let e = HomEngine::new(&w);
    let pres = build_repetitive_presentation(q, lo..=hi);
    let mut checks = vec![stable_count_check(&w), mesh_additivity_check(&w)];

    let oracle = cross_check(&w, &pres, &mut rng)?;
    checks.push(line(
        "oracle hom dimensions",
        oracle.hom_mismatches.is_empty() && oracle.pairs_checked > 0,
        if oracle.hom_mismatches.is_empty() {
            format!("{} modules, {} pairs", oracle.modules, oracle.pairs_checked)
        } else {
            oracle.hom_mismatches.join("; ")
        },
    ));
    checks.push(line(
        "oracle syzygies",
        oracle.omega_mismatches.is_empty(),
        if oracle.omega_mismatches.is_empty() { "omega and omega_inv agree".into() } else { oracle.omega_mismatches.join("; ") },
    ));
    checks.push(pairing_check(&e)?);
    checks.push(reconstruction_check(&e, &mut rng, 100)?);

    let iso = verify_repetitive_iso(&w)?;
    checks.push(line(
        "corner algebra matches repetitive algebra",
        iso.ok() && iso.pairs_checked > 0,
        if iso.ok() { format!("{} pairs", iso.pairs_checked) } else { iso.mismatches.join("; ") },
    ));
    Ok(SelfcheckReport { quiver: q.dynkin_type().to_string(), degrees, seed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DynkinType;

    #[test]
    fn a2_passes_and_is_deterministic() {
        let q = DynkinQuiver::standard(DynkinType::A(2));
        let xi = HeightFunction::canonical(&q);
        let a = selfcheck(&q, &xi, (-1, 2), 5).unwrap();
        assert!(a.ok(), "{}", a.to_text());
        assert_eq!(a.checks.len(), 7);
        let b = selfcheck(&q, &xi, (-1, 2), 5).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn stable_counts_on_a3() {
        let q = DynkinQuiver::standard(DynkinType::A(3));
        let xi = HeightFunction::canonical(&q);
        let w = window_for_degrees(&q, &xi, 0, 0, 1, default_margin(&q)).unwrap();
        let c = stable_count_check(&w);
        assert!(c.passed, "{}", c.detail);
    }
}
