//! Isomorphism classes of a fixed dimension vector, dominant pairs `(V, W)`,
//! the bijection between them, and the degeneration order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::json;

use crate::ar_knit::{ARKind, ARWindow, VertexId};
use crate::error::{Error, Result};
use crate::gamma_hat::{Slot, SlotKind};
use crate::hom::HomEngine;
use crate::module_class::ModuleClass;
use crate::quiver::{DynkinQuiver, HeightFunction};
use crate::repetitive::{DimVector, RepVertex};

pub use crate::module_class::module_label;

/// Graded dimensions: `v` on stable slots, `w` on projective slots. Zero
/// entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantPair {
    pub v: BTreeMap<Slot, i64>,
    pub w: BTreeMap<Slot, i64>,
}

fn get(m: &BTreeMap<Slot, i64>, s: Slot) -> i64 {
    m.get(&s).copied().unwrap_or(0)
}

fn put(m: &mut BTreeMap<Slot, i64>, s: Slot, k: i64) {
    if k == 0 {
        m.remove(&s);
    } else {
        m.insert(s, k);
    }
}

impl DominantPair {
    pub fn new(v: BTreeMap<Slot, i64>, w: BTreeMap<Slot, i64>) -> Self {
        let mut p = DominantPair::default();
        for (s, k) in v {
            put(&mut p.v, s, k);
        }
        for (s, k) in w {
            put(&mut p.w, s, k);
        }
        p
    }

    pub fn v_at(&self, s: Slot) -> i64 {
        get(&self.v, s)
    }

    pub fn w_at(&self, s: Slot) -> i64 {
        get(&self.w, s)
    }

    /// `W(i,n) − V(i,n+1) − V(i,n−1) + Σ_{j∼i} V(j,n)` at a projective slot.
    pub fn defect(&self, q: &DynkinQuiver, at: Slot) -> i64 {
        let Slot { column: i, level: n } = at;
        let mut d = self.w_at(at) - self.v_at(Slot::new(i, n + 1)) - self.v_at(Slot::new(i, n - 1));
        for &j in q.neighbors(i) {
            d += self.v_at(Slot::new(j, n));
        }
        d
    }

    /// Projective slots whose defect can be nonzero.
    pub fn relevant_projective_slots(&self, q: &DynkinQuiver, xi: &HeightFunction) -> BTreeSet<Slot> {
        let mut out: BTreeSet<Slot> = self.w.keys().copied().collect();
        for &Slot { column: i, level: n } in self.v.keys() {
            out.insert(Slot::new(i, n + 1));
            out.insert(Slot::new(i, n - 1));
            for &j in q.neighbors(i) {
                out.insert(Slot::new(j, n));
            }
        }
        out.retain(|s| s.kind(xi) == SlotKind::Projective);
        out
    }

    pub fn to_json(&self, q: &DynkinQuiver) -> serde_json::Value {
        let side = |m: &BTreeMap<Slot, i64>| -> serde_json::Map<String, serde_json::Value> {
            m.iter().map(|(s, k)| (s.display(q).to_string(), json!(k))).collect()
        };
        json!({ "V": side(&self.v), "W": side(&self.w) })
    }
}

pub fn check_dominance(q: &DynkinQuiver, xi: &HeightFunction, p: &DominantPair) -> bool {
    p.v.keys().all(|s| s.kind(xi) == SlotKind::Stable)
        && p.w.keys().all(|s| s.kind(xi) == SlotKind::Projective)
        && p.v.values().chain(p.w.values()).all(|&k| k >= 0)
        && p.relevant_projective_slots(q, xi).iter().all(|&s| p.defect(q, s) >= 0)
}

/// `W^d`: `d_x` at `ψ(P_x)`.
pub fn w_of_dim(w: &ARWindow, d: &DimVector) -> Result<BTreeMap<Slot, i64>> {
    let mut out = BTreeMap::new();
    for (x, k) in d.entries() {
        put(&mut out, w.psi_of_projective(x)?, k);
    }
    Ok(out)
}

/// Every dominant pair with the given `W`. `V` vanishes outside the levels
/// strictly between the lowest and highest `W`-slots; going down level by
/// level, the inequality at the projective slot directly above bounds each
/// entry of `V`.
pub fn enumerate_dominant_pairs(q: &DynkinQuiver, xi: &HeightFunction, w: &BTreeMap<Slot, i64>) -> Vec<DominantPair> {
    let base = DominantPair::new(BTreeMap::new(), w.clone());
    let (Some(lo), Some(hi)) = (w.keys().map(|s| s.level).min(), w.keys().map(|s| s.level).max()) else {
        return vec![base];
    };
    let slots: Vec<Slot> = ((lo + 1)..hi)
        .rev()
        .flat_map(|n| (0..q.len()).map(move |i| Slot::new(i, n)))
        .filter(|s| s.kind(xi) == SlotKind::Stable)
        .collect();
    let mut out = Vec::new();
    fn go(q: &DynkinQuiver, xi: &HeightFunction, slots: &[Slot], k: usize, p: &mut DominantPair, out: &mut Vec<DominantPair>) {
        if k == slots.len() {
            if check_dominance(q, xi, p) {
                out.push(p.clone());
            }
            return;
        }
        let s = slots[k];
        let above = Slot::new(s.column, s.level + 1);
        // defect at the slot above, with V(s) still zero
        let bound = p.defect(q, above);
        for value in 0..=bound.max(-1) {
            put(&mut p.v, s, value);
            go(q, xi, slots, k + 1, p, out);
        }
        put(&mut p.v, s, 0);
    }
    let mut p = base;
    go(q, xi, &slots, 0, &mut p, &mut out);
    out.sort();
    out
}

/// All classes of modules of dimension vector `d` built from window
/// indecomposables. Completeness needs every `P_x`, `x` in the support of
/// `d`, inside the window with its whole Hom support: any indecomposable
/// `L` with `L_x ≠ 0` has `Hom(P_x, L) ≠ 0`.
pub fn enumerate_modules(e: &HomEngine<'_>, d: &DimVector) -> Result<Vec<ModuleClass>> {
    if d.is_zero() {
        return Ok(vec![ModuleClass::zero()]);
    }
    if !d.is_nonnegative() {
        return Err(Error::Inconsistent(format!("negative dimension vector {}", d.display(e.window().quiver()))));
    }
    let w = e.window();
    for x in d.support() {
        let p = w.projectives().get(&x).copied().ok_or_else(|| Error::WindowTooSmall {
            module: "orbits_strata",
            detail: format!("P_{} is not in the window", x.label(w.quiver())),
        })?;
        e.certified_row(p)?;
    }
    let candidates: Vec<VertexId> =
        w.vertices().iter().filter(|v| v.dim.le(d) && v.dim.is_nonnegative()).map(|v| v.id).collect();
    let mut last_cover: BTreeMap<RepVertex, usize> = BTreeMap::new();
    for (k, &id) in candidates.iter().enumerate() {
        for x in w.vertex(id).dim.support() {
            last_cover.insert(x, k);
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<(VertexId, i64)> = Vec::new();
    search(w, &candidates, &last_cover, 0, d.clone(), &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn search(
    w: &ARWindow,
    candidates: &[VertexId],
    last_cover: &BTreeMap<RepVertex, usize>,
    k: usize,
    rest: DimVector,
    chosen: &mut Vec<(VertexId, i64)>,
    out: &mut Vec<ModuleClass>,
) {
    if rest.is_zero() {
        out.push(ModuleClass::from_summands(chosen.iter().map(|&(id, m)| (w.vertex(id).slot, m))));
        return;
    }
    if k == candidates.len() || rest.support().any(|x| last_cover.get(&x).is_none_or(|&l| l < k)) {
        return;
    }
    let dim = &w.vertex(candidates[k]).dim;
    let most = dim.entries().map(|(x, c)| rest.get(x) / c).min().unwrap_or(0);
    for m in (0..=most).rev() {
        if m > 0 {
            chosen.push((candidates[k], m));
        }
        search(w, candidates, last_cover, k + 1, rest.minus(&dim.scaled(m)), chosen, out);
        if m > 0 {
            chosen.pop();
        }
    }
}

/// `V(ψM) = dim proj(M, N)` for stable `M`, `W(ψP_x) = d_x`.
pub fn module_to_pair(e: &HomEngine<'_>, n: &ModuleClass) -> Result<DominantPair> {
    let w = e.window();
    let d = n.dim(w)?;
    let lambda = e.expand_in_r_basis_local(n)?;
    let mut v = BTreeMap::new();
    for (&l, &k) in &lambda {
        // the coefficient of r_L is dim proj(ΩL, N)
        let m = e.omega(l)?;
        put(&mut v, w.vertex(m).slot, k);
    }
    Ok(DominantPair::new(v, w_of_dim(w, &d)?))
}

/// Inverse of [`module_to_pair`]: the stable summand `Ω⁻¹` of the vertex at
/// `(i, n−1)` occurs with multiplicity the defect at `(i, n)`; projective
/// summands make up the remaining dimension vector.
pub fn pair_to_module(e: &HomEngine<'_>, p: &DominantPair) -> Result<ModuleClass> {
    let w = e.window();
    let q = w.quiver();
    let xi = w.height();
    let mut d = DimVector::zero();
    for (&s, &k) in &p.w {
        let projective = w.at(s).and_then(|id| match w.vertex(id).kind {
            ARKind::Projective(x) => Some(x),
            ARKind::Stable => None,
        });
        match projective {
            Some(x) => d.add_at(x, k),
            None if !w.range().contains(s.level) => {
                return Err(Error::WindowTooSmall { module: "orbits_strata", detail: format!("W-slot {} outside the window", w.slot_label(s)) })
            }
            None => return Err(Error::WSupportNotProjective { slot: w.slot_label(s) }),
        }
    }
    let mut module = ModuleClass::zero();
    for s in p.relevant_projective_slots(q, xi) {
        let b = p.defect(q, s);
        if b < 0 {
            return Err(Error::NotDominant { slot: w.slot_label(s), defect: b });
        }
        if b == 0 {
            continue;
        }
        let below = Slot::new(s.column, s.level - 1);
        let base = w.at(below).ok_or_else(|| Error::WindowTooSmall {
            module: "orbits_strata",
            detail: format!("no vertex at {}", w.slot_label(below)),
        })?;
        module.add(w.vertex(e.omega_inv(base)?).slot, b);
    }
    let mut rest = d.minus(&module.dim(w)?);
    // Peel projectives: the first vertex of the residual in (degree,
    // topological) order is the top of a projective summand.
    let rank: Vec<usize> = {
        let order = q.topological_order();
        let mut r = vec![0; q.len()];
        for (k, &v) in order.iter().enumerate() {
            r[v] = k;
        }
        r
    };
    while let Some(x) = rest.support().min_by_key(|x| (x.degree, rank[x.base])) {
        let k = rest.get(x);
        if k < 0 {
            return Err(Error::Inconsistent(format!(
                "stable part exceeds W at {}",
                x.label(q)
            )));
        }
        let p_slot = w.psi_of_projective(x)?;
        module.add(p_slot, k);
        rest = rest.minus(&w.vertex(w.at(p_slot).expect("projective placed")).dim.scaled(k));
    }
    Ok(module)
}

/// Degeneration order on classes of one dimension vector. `le[a][b]` holds
/// when `b` lies in the orbit closure of `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataPoset {
    pub classes: Vec<ModuleClass>,
    pub le: Vec<Vec<bool>>,
}

impl StrataPoset {
    /// Covering relations `(a, b)` with `a < b`.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.classes.len();
        let lt = |a: usize, b: usize| a != b && self.le[a][b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn maxima(&self) -> Vec<usize> {
        let n = self.classes.len();
        (0..n).filter(|&a| (0..n).all(|b| !self.le[a][b] || self.le[b][a])).collect()
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.classes.len();
        (0..n).all(|a| self.le[a][a])
            && (0..n).all(|a| (0..n).all(|b| a == b || !(self.le[a][b] && self.le[b][a])))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(self.le[a][b] && self.le[b][c]) || self.le[a][c])))
    }

    pub fn to_dot(&self, w: &ARWindow) -> String {
        let mut out = String::from("digraph strata {\n  rankdir=BT;\n");
        for (k, c) in self.classes.iter().enumerate() {
            let _ = writeln!(out, "  c{k} [label=\"{}\"];", c.label(w));
        }
        for (a, b) in self.hasse() {
            let _ = writeln!(out, "  c{a} -> c{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Both criteria are computed and must agree: `hom(M, a) ≤ hom(M, b)` for
/// every window indecomposable `M`, and `V(a) ≥ V(b)` componentwise.
pub fn degeneration_order(e: &HomEngine<'_>, classes: &[ModuleClass]) -> Result<StrataPoset> {
    let w = e.window();
    let n = classes.len();
    if let Some(first) = classes.first() {
        let d = first.dim(w)?;
        for c in classes {
            if c.dim(w)? != d {
                return Err(Error::Inconsistent("classes of different dimension vectors".into()));
            }
        }
    }
    let mut homs: Vec<Vec<i64>> = Vec::with_capacity(n);
    for c in classes {
        let mut col = vec![0i64; w.vertices().len()];
        for (id, k) in c.vertices(w)? {
            let column = e.column(id)?;
            for (t, &h) in col.iter_mut().zip(column) {
                *t += k * h;
            }
        }
        homs.push(col);
    }
    let pairs: Vec<DominantPair> = classes.iter().map(|c| module_to_pair(e, c)).collect::<Result<_>>()?;
    let mut le = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            let by_hom = homs[a].iter().zip(&homs[b]).all(|(x, y)| x <= y);
            let slots: BTreeSet<Slot> = pairs[a].v.keys().chain(pairs[b].v.keys()).copied().collect();
            let by_v = slots.iter().all(|&s| pairs[a].v_at(s) >= pairs[b].v_at(s));
            if by_hom != by_v {
                return Err(Error::Inconsistent(format!(
                    "Hom and V criteria disagree on {} vs {}",
                    classes[a].label(w),
                    classes[b].label(w)
                )));
            }
            le[a][b] = by_hom;
        }
    }
    Ok(StrataPoset { classes: classes.to_vec(), le })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub modules: usize,
    pub pairs: usize,
    pub roundtrip: bool,
    pub problems: Vec<String>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.modules == self.pairs && self.roundtrip && self.problems.is_empty()
    }
}

/// Compares the classes of dimension vector `d` with the dominant pairs of
/// `W = W^d`, both ways.
pub fn verify_bijection(e: &HomEngine<'_>, d: &DimVector) -> Result<BijectionReport> {
    let w = e.window();
    let q = w.quiver();
    let modules = enumerate_modules(e, d)?;
    let wd = w_of_dim(w, d)?;
    let pairs = enumerate_dominant_pairs(q, w.height(), &wd);
    let mut problems = Vec::new();
    let mut images = BTreeSet::new();
    let mut roundtrip = true;
    for m in &modules {
        let p = module_to_pair(e, m)?;
        if !check_dominance(q, w.height(), &p) {
            problems.push(format!("{} maps to a pair that is not dominant", m.label(w)));
        }
        if p.w != wd {
            problems.push(format!("{} maps to a pair with the wrong W", m.label(w)));
        }
        if pair_to_module(e, &p)? != *m {
            roundtrip = false;
            problems.push(format!("roundtrip fails on {}", m.label(w)));
        }
        if !images.insert(p) {
            problems.push(format!("{} shares its pair with another class", m.label(w)));
        }
    }
    for p in &pairs {
        if !images.contains(p) {
            let back = pair_to_module(e, p).map(|m| m.label(w)).unwrap_or_else(|err| err.to_string());
            problems.push(format!("dominant pair {} is not the image of a class ({back})", p.to_json(q)));
        }
    }
    Ok(BijectionReport { modules: modules.len(), pairs: pairs.len(), roundtrip, problems })
}

/// Rows are stable slots, columns are classes; entry `V(slot)` of the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionTable {
    pub rows: Vec<Slot>,
    pub columns: Vec<ModuleClass>,
    pub values: Vec<Vec<i64>>,
}

impl BijectionTable {
    pub fn to_tsv(&self, w: &ARWindow) -> String {
        let mut out = String::from("slot");
        for c in &self.columns {
            out.push('\t');
            out.push_str(&c.label(w));
        }
        out.push('\n');
        for (r, s) in self.rows.iter().enumerate() {
            out.push_str(&w.slot_label(*s));
            for v in &self.values[r] {
                let _ = write!(out, "\t{v}");
            }
            out.push('\n');
        }
        out
    }
}

/// The table of `V`-values of every class of dimension vector `d`. Rows are
/// the slots where some class has nonzero `V`, from the top level down.
/// Columns run from the most summands to the fewest; ties are broken by the
/// column of `V`-values read from the top row, larger first.
pub fn bijection_table(e: &HomEngine<'_>, d: &DimVector) -> Result<BijectionTable> {
    let classes = enumerate_modules(e, d)?;
    let pairs: Vec<DominantPair> = classes.iter().map(|c| module_to_pair(e, c)).collect::<Result<_>>()?;
    let mut rows: Vec<Slot> = pairs.iter().flat_map(|p| p.v.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    rows.sort_by(|a, b| b.level.cmp(&a.level).then(a.column.cmp(&b.column)));
    let mut cols: Vec<(ModuleClass, Vec<i64>)> = classes
        .into_iter()
        .zip(&pairs)
        .map(|(c, p)| (c, rows.iter().map(|&s| p.v_at(s)).collect()))
        .collect();
    cols.sort_by(|(a, va), (b, vb)| b.summand_count().cmp(&a.summand_count()).then_with(|| vb.cmp(va)).then_with(|| a.cmp(b)));
    let values = (0..rows.len()).map(|r| cols.iter().map(|(_, v)| v[r]).collect()).collect();
    Ok(BijectionTable { rows, columns: cols.into_iter().map(|(c, _)| c).collect(), values })
}
