//! Knitting a finite window of the AR quiver of `mod Â`, placed on `Γ̂`
//! through the embedding `ψ`.
//!
//! Conventions: an AR arrow `M -> N` goes up one level (`ψ` reverses arrows,
//! `Γ̂` arrows go down). The mesh ending at a stable vertex `M = (i, n+1)`
//! starts at `τM = (i, n-1)` and has middles `(j, n)` for `j ∼ i`, plus the
//! projective at `(i, n)` when there is one.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde_json::json;

use crate::error::{Error, Result};
use crate::gamma_hat::{LevelRange, Slot, SlotKind};
use crate::quiver::{DynkinQuiver, HeightFunction};
use crate::repetitive::{projective_dim_vector, DimVector, RepVertex};

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ARKind {
    Stable,
    Projective(RepVertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ARVertex {
    pub id: VertexId,
    pub slot: Slot,
    pub kind: ARKind,
    pub dim: DimVector,
}

impl ARVertex {
    pub fn is_projective(&self) -> bool {
        matches!(self.kind, ARKind::Projective(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mesh {
    pub end: VertexId,
    pub start: VertexId,
    pub middles: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnitOptions {
    pub range: LevelRange,
    pub margin: i64,
    /// Even shift added to every seed level.
    pub anchor_shift: i64,
}

/// Levels of slack kept free of Hom supports and `Ω`-images: twice the Coxeter number.
pub fn default_margin(q: &DynkinQuiver) -> i64 {
    2 * q.coxeter_number()
}

/// The embedded `kQ`-projectives: `P_i` of `kQ` sits at `(i, ξ_i)` with
/// dimension vector one at `j[0]` for every path `i -> j`.
pub fn seed_section(q: &DynkinQuiver, xi: &HeightFunction) -> Vec<(Slot, DimVector)> {
    (0..q.len())
        .map(|i| {
            let dim = DimVector::from_entries((0..q.len()).filter(|&j| q.has_path(i, j)).map(|j| (RepVertex::new(j, 0), 1)));
            (Slot::new(i, xi.get(i)), dim)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ARWindow {
    q: DynkinQuiver,
    xi: HeightFunction,
    options: KnitOptions,
    vertices: Vec<ARVertex>,
    by_slot: BTreeMap<Slot, VertexId>,
    meshes: Vec<Mesh>,
    mesh_by_end: HashMap<VertexId, usize>,
    projectives: BTreeMap<RepVertex, VertexId>,
    stable_by_dim: HashMap<DimVector, Vec<VertexId>>,
}

fn slot_name(q: &DynkinQuiver, s: Slot) -> String {
    s.display(q).to_string()
}

/// Projectives `P_x` with `dim P_x − e_x = d` (`rad P_x`) or, with
/// `socle = true`, `dim P_x − e_{soc} = d` (`P_x / soc P_x`).
fn matching_projectives(q: &DynkinQuiver, d: &DimVector, socle: bool) -> Vec<RepVertex> {
    let Some((lo, hi)) = d.degree_range() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for m in lo - 1..=hi + 1 {
        for i in 0..q.len() {
            let x = RepVertex::new(i, m);
            let p = projective_dim_vector(q, x);
            let removed = if socle { x.shifted(1) } else { x };
            if p.minus(&DimVector::unit(removed)) == *d {
                out.push(x);
            }
        }
    }
    out
}

struct Knitter<'a> {
    q: &'a DynkinQuiver,
    dims: BTreeMap<Slot, DimVector>,
    projectives: BTreeMap<Slot, RepVertex>,
}

impl Knitter<'_> {
    fn failure(&self, slot: Slot, detail: String) -> Error {
        Error::KnitFailure { slot: slot_name(self.q, slot), detail }
    }

    fn neighbor_sum(&self, column: usize, level: i64) -> DimVector {
        let mut sum = DimVector::zero();
        for &j in self.q.neighbors(column) {
            if let Some(d) = self.dims.get(&Slot::new(j, level)) {
                sum = sum.plus(d);
            }
        }
        sum
    }

    fn insert_projective(&mut self, at: Slot, candidates: &[RepVertex]) -> Result<Option<DimVector>> {
        match candidates {
            [] => Ok(None),
            [x] => {
                self.projectives.insert(at, *x);
                Ok(Some(projective_dim_vector(self.q, *x)))
            }
            [x, y, ..] => Err(Error::AmbiguousProjectiveInsertion {
                slot: slot_name(self.q, at),
                first: x.label(self.q),
                second: y.label(self.q),
            }),
        }
    }

    fn store(&mut self, slot: Slot, d: DimVector) -> Result<()> {
        if !d.is_nonnegative() || d.is_zero() {
            return Err(self.failure(slot, format!("dimension vector {}", d.display(self.q))));
        }
        self.dims.insert(slot, d);
        Ok(())
    }
}

impl ARWindow {
    /// Knits every slot of `options.range`, starting from the seed section
    /// and proceeding up (by `τ⁻¹`) and down (by `τ`).
    pub fn knit(q: &DynkinQuiver, xi: &HeightFunction, options: KnitOptions) -> Result<ARWindow> {
        xi.validate(q)?;
        if options.anchor_shift % 2 != 0 {
            return Err(Error::Inconsistent(format!("anchor shift {} must be even", options.anchor_shift)));
        }
        let range = options.range;
        let seeds: Vec<(Slot, DimVector)> = seed_section(q, xi)
            .into_iter()
            .map(|(s, d)| (s.shifted(options.anchor_shift), d))
            .collect();
        let seed_lo = seeds.iter().map(|(s, _)| s.level).min().expect("quiver has a vertex");
        let seed_hi = seeds.iter().map(|(s, _)| s.level).max().expect("quiver has a vertex");
        if range.min > seed_lo - options.margin || range.max < seed_hi + options.margin {
            return Err(Error::WindowTooSmall {
                module: "ar_knit",
                detail: format!(
                    "range {range} must contain the seed section {}:{} with margin {}",
                    seed_lo, seed_hi, options.margin
                ),
            });
        }
        let seed_level: Vec<i64> = seeds.iter().map(|(s, _)| s.level).collect();
        let mut k = Knitter { q, dims: seeds.into_iter().collect(), projectives: BTreeMap::new() };
        let stable = |i: usize, n: i64| Slot::new(i, n).kind(xi) == SlotKind::Stable;

        // Upwards: M = (i, n) from τM = (i, n-2) and middles at n-1.
        for n in seed_lo + 1..=range.max {
            for (i, &seed) in seed_level.iter().enumerate() {
                if n <= seed || !stable(i, n) {
                    continue;
                }
                let start = k.dims[&Slot::new(i, n - 2)].clone();
                let p_slot = Slot::new(i, n - 1);
                let candidates = matching_projectives(q, &start, false);
                let p = k.insert_projective(p_slot, &candidates)?;
                let mut d = k.neighbor_sum(i, n - 1).minus(&start);
                if let Some(p) = p {
                    d = d.plus(&p);
                }
                k.store(Slot::new(i, n), d)?;
            }
        }
        // Downwards: τM = (i, n) from M = (i, n+2) and middles at n+1.
        for n in (range.min..seed_hi).rev() {
            for (i, &seed) in seed_level.iter().enumerate() {
                if n >= seed || !stable(i, n) {
                    continue;
                }
                let end = k.dims[&Slot::new(i, n + 2)].clone();
                let p_slot = Slot::new(i, n + 1);
                let p = if let Some(&x) = k.projectives.get(&p_slot) {
                    Some(projective_dim_vector(q, x))
                } else {
                    let candidates = matching_projectives(q, &end, true);
                    k.insert_projective(p_slot, &candidates)?
                };
                let mut d = k.neighbor_sum(i, n + 1).minus(&end);
                if let Some(p) = p {
                    d = d.plus(&p);
                }
                k.store(Slot::new(i, n), d)?;
            }
        }
        // Projective slots on the window edge whose mesh is cut off.
        for i in 0..q.len() {
            for (n, below, socle) in [(range.max, range.max - 1, false), (range.min, range.min + 1, true)] {
                let at = Slot::new(i, n);
                if stable(i, n) || k.projectives.contains_key(&at) {
                    continue;
                }
                if let Some(d) = k.dims.get(&Slot::new(i, below)).cloned() {
                    let candidates = matching_projectives(q, &d, socle);
                    k.insert_projective(at, &candidates)?;
                }
            }
        }
        // Every inserted projective must sit between its radical and its
        // quotient by the socle.
        for (&at, &x) in &k.projectives {
            let p = projective_dim_vector(q, x);
            if let Some(r) = k.dims.get(&Slot::new(at.column, at.level - 1)) {
                if p.minus(&DimVector::unit(x)) != *r {
                    return Err(k.failure(at, format!("{} is not the radical of P_{}", r.display(q), x.label(q))));
                }
            }
            if let Some(t) = k.dims.get(&Slot::new(at.column, at.level + 1)) {
                if p.minus(&DimVector::unit(x.shifted(1))) != *t {
                    return Err(k.failure(at, format!("{} is not P_{} modulo its socle", t.display(q), x.label(q))));
                }
            }
        }

        Ok(Self::assemble(q, xi, options, k))
    }

    fn assemble(q: &DynkinQuiver, xi: &HeightFunction, options: KnitOptions, k: Knitter<'_>) -> ARWindow {
        let range = options.range;
        let mut vertices = Vec::new();
        let mut by_slot = BTreeMap::new();
        let mut projectives = BTreeMap::new();
        let mut stable_by_dim: HashMap<DimVector, Vec<VertexId>> = HashMap::new();
        for n in range.levels() {
            for i in 0..q.len() {
                let slot = Slot::new(i, n);
                let (kind, dim) = if let Some(d) = k.dims.get(&slot) {
                    (ARKind::Stable, d.clone())
                } else if let Some(&x) = k.projectives.get(&slot) {
                    (ARKind::Projective(x), projective_dim_vector(q, x))
                } else {
                    continue;
                };
                let id = vertices.len();
                match kind {
                    ARKind::Stable => stable_by_dim.entry(dim.clone()).or_default().push(id),
                    ARKind::Projective(x) => {
                        projectives.insert(x, id);
                    }
                }
                by_slot.insert(slot, id);
                vertices.push(ARVertex { id, slot, kind, dim });
            }
        }
        let mut meshes = Vec::new();
        let mut mesh_by_end = HashMap::new();
        for v in vertices.iter().filter(|v| !v.is_projective()) {
            let Slot { column: i, level: n } = v.slot;
            let Some(&start) = by_slot.get(&Slot::new(i, n - 2)) else {
                continue;
            };
            let mut middles: Vec<VertexId> =
                q.neighbors(i).iter().filter_map(|&j| by_slot.get(&Slot::new(j, n - 1)).copied()).collect();
            if let Some(&p) = by_slot.get(&Slot::new(i, n - 1)) {
                middles.push(p);
            }
            mesh_by_end.insert(v.id, meshes.len());
            meshes.push(Mesh { end: v.id, start, middles });
        }
        ARWindow {
            q: q.clone(),
            xi: xi.clone(),
            options,
            vertices,
            by_slot,
            meshes,
            mesh_by_end,
            projectives,
            stable_by_dim,
        }
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        &self.q
    }

    pub fn height(&self) -> &HeightFunction {
        &self.xi
    }

    pub fn options(&self) -> KnitOptions {
        self.options
    }

    pub fn range(&self) -> LevelRange {
        self.options.range
    }

    pub fn margin(&self) -> i64 {
        self.options.margin
    }

    pub fn anchor_shift(&self) -> i64 {
        self.options.anchor_shift
    }

    pub fn vertices(&self) -> &[ARVertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> &ARVertex {
        &self.vertices[id]
    }

    pub fn meshes(&self) -> &[Mesh] {
        &self.meshes
    }

    pub fn mesh_ending_at(&self, id: VertexId) -> Option<&Mesh> {
        self.mesh_by_end.get(&id).map(|&k| &self.meshes[k])
    }

    pub fn at(&self, slot: Slot) -> Option<VertexId> {
        self.by_slot.get(&slot).copied()
    }

    pub fn stable_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().filter(|v| !v.is_projective()).map(|v| v.id)
    }

    pub fn projective_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.projectives.values().copied()
    }

    pub fn projectives(&self) -> &BTreeMap<RepVertex, VertexId> {
        &self.projectives
    }

    /// Whether `slot` lies at least `margin` levels inside the window.
    pub fn is_interior(&self, slot: Slot) -> bool {
        let r = self.range();
        r.min + self.margin() <= slot.level && slot.level <= r.max - self.margin()
    }

    fn too_small(&self, detail: String) -> Error {
        Error::WindowTooSmall { module: "ar_knit", detail }
    }

    pub fn slot_label(&self, slot: Slot) -> String {
        slot_name(&self.q, slot)
    }

    /// Human-readable name of a vertex: its slot, and `P_x` for projectives.
    pub fn label(&self, id: VertexId) -> String {
        let v = &self.vertices[id];
        match v.kind {
            ARKind::Stable => self.slot_label(v.slot),
            ARKind::Projective(x) => format!("P_{}", x.label(&self.q)),
        }
    }

    pub fn psi_of_projective(&self, x: RepVertex) -> Result<Slot> {
        self.projectives
            .get(&x)
            .map(|&id| self.vertices[id].slot)
            .ok_or_else(|| self.too_small(format!("P_{} is not in range {}", x.label(&self.q), self.range())))
    }

    pub fn psi_inv(&self, slot: Slot) -> Result<VertexId> {
        if !self.range().contains(slot.level) {
            return Err(self.too_small(format!("slot {} outside range {}", self.slot_label(slot), self.range())));
        }
        self.at(slot).ok_or_else(|| Error::UnknownVertex { module: "ar_knit", what: self.slot_label(slot) })
    }

    fn stable_at(&self, slot: Slot, what: &str) -> Result<VertexId> {
        match self.at(slot) {
            Some(id) if !self.vertices[id].is_projective() => Ok(id),
            _ => Err(self.too_small(format!("{what} lands on {}, outside range {}", self.slot_label(slot), self.range()))),
        }
    }

    fn require_stable(&self, id: VertexId) -> Result<Slot> {
        let v = &self.vertices[id];
        if v.is_projective() {
            return Err(Error::UnknownVertex { module: "ar_knit", what: format!("stable vertex at {}", self.label(id)) });
        }
        Ok(v.slot)
    }

    pub fn tau(&self, id: VertexId) -> Result<VertexId> {
        let s = self.require_stable(id)?;
        self.stable_at(s.shifted(-2), "tau")
    }

    pub fn tau_inv(&self, id: VertexId) -> Result<VertexId> {
        let s = self.require_stable(id)?;
        self.stable_at(s.shifted(2), "tau_inv")
    }

    /// The unique stable vertex with dimension vector `d`.
    pub fn stable_with_dim(&self, d: &DimVector) -> Result<VertexId> {
        match self.stable_by_dim.get(d).map(Vec::as_slice) {
            Some([id]) => Ok(*id),
            Some(ids) => Err(Error::AmbiguousIdentification { dim: d.display(&self.q).to_string(), count: ids.len() }),
            None => Err(self.too_small(format!("no stable vertex with dimension vector {}", d.display(&self.q)))),
        }
    }

    /// Stable vertices whose dimension vector is `d`, possibly none.
    pub fn stable_candidates(&self, d: &DimVector) -> &[VertexId] {
        self.stable_by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The simple module at `x`, if it lies in the window.
    pub fn simple(&self, x: RepVertex) -> Result<VertexId> {
        self.stable_with_dim(&DimVector::unit(x))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ar {\n  rankdir=BT;\n");
        for v in &self.vertices {
            let shape = if v.is_projective() { "box" } else { "ellipse" };
            let _ = writeln!(
                out,
                "  v{} [shape={shape}, label=\"{}\\n{}\"];",
                v.id,
                self.label(v.id),
                v.dim.display(&self.q)
            );
        }
        for m in &self.meshes {
            for &mid in &m.middles {
                let _ = writeln!(out, "  v{} -> v{};", m.start, mid);
                let _ = writeln!(out, "  v{} -> v{};", mid, m.end);
            }
            let _ = writeln!(out, "  v{} -> v{} [style=dashed, constraint=false];", m.end, m.start);
        }
        for level in self.range().levels() {
            let ids: Vec<String> = (0..self.q.len())
                .filter_map(|i| self.at(Slot::new(i, level)))
                .map(|id| format!("v{id}"))
                .collect();
            if !ids.is_empty() {
                let _ = writeln!(out, "  {{ rank=same; {} }}", ids.join("; "));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .map(|v| {
                let dim: serde_json::Map<String, serde_json::Value> =
                    v.dim.entries().map(|(x, k)| (x.label(&self.q), json!(k))).collect();
                let mut obj = json!({
                    "id": v.id,
                    "column": self.q.name(v.slot.column),
                    "level": v.slot.level,
                    "kind": if v.is_projective() { "projective" } else { "stable" },
                    "dim": dim,
                });
                if let ARKind::Projective(x) = v.kind {
                    obj["projective_of"] = json!(x.label(&self.q));
                }
                obj
            })
            .collect();
        json!({
            "range": [self.range().min, self.range().max],
            "margin": self.margin(),
            "anchor_shift": self.anchor_shift(),
            "vertices": vertices,
        })
    }
}

/// Level offset between `P_{x}` and `P_{x[+1]}`: raising the degree by one
/// moves `ψ(P)` down `2(h-1)` levels in the same column.
pub fn degree_period(q: &DynkinQuiver) -> i64 {
    2 * (q.coxeter_number() - 1)
}

/// A window around the seed section that also contains `target`. The target
/// is padded by two margins: Hom supports reach up to one margin beyond a
/// vertex, and certification needs another margin of zeros past that.
pub fn window_options(q: &DynkinQuiver, xi: &HeightFunction, anchor_shift: i64, target: LevelRange, margin: i64) -> KnitOptions {
    let lo = (0..q.len()).map(|i| xi.get(i)).min().unwrap_or(0) + anchor_shift;
    let hi = (0..q.len()).map(|i| xi.get(i)).max().unwrap_or(0) + anchor_shift;
    let seeds = LevelRange::new(lo - margin, hi + margin);
    let range = if target.is_empty() {
        seeds
    } else {
        seeds.union(&LevelRange::new(target.min - 2 * margin, target.max + 2 * margin))
    };
    KnitOptions { range, margin, anchor_shift }
}

/// Levels spanned by `ψ(P_{i[m]})` for `m` in `[m_lo, m_hi]`.
pub fn levels_of_degrees(q: &DynkinQuiver, xi: &HeightFunction, anchor_shift: i64, m_lo: i64, m_hi: i64) -> Result<LevelRange> {
    let period = degree_period(q);
    let margin = default_margin(q);
    let base = ARWindow::knit(q, xi, window_options(q, xi, anchor_shift, LevelRange::new(1, 0), margin + period))?;
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for i in 0..q.len() {
        let s = base.psi_of_projective(RepVertex::new(i, 0))?;
        lo = lo.min(s.level);
        hi = hi.max(s.level);
    }
    Ok(LevelRange::new(lo - period * m_hi, hi - period * m_lo))
}

/// Knits a window holding every projective of degree `m_lo..=m_hi` together
/// with `margin` levels of slack around them.
pub fn window_for_degrees(q: &DynkinQuiver, xi: &HeightFunction, anchor_shift: i64, m_lo: i64, m_hi: i64, margin: i64) -> Result<ARWindow> {
    let target = levels_of_degrees(q, xi, anchor_shift, m_lo, m_hi)?;
    ARWindow::knit(q, xi, window_options(q, xi, anchor_shift, target, margin))
}

/// Even anchor shifts `s` with `|s| ≤ radius` for which every slot in `slots`
/// is the image of a projective.
pub fn find_anchor_shifts(q: &DynkinQuiver, xi: &HeightFunction, slots: &[Slot], radius: i64) -> Result<Vec<i64>> {
    if slots.is_empty() {
        return Ok(vec![0]);
    }
    let lo = slots.iter().map(|s| s.level).min().expect("nonempty");
    let hi = slots.iter().map(|s| s.level).max().expect("nonempty");
    let margin = default_margin(q);
    let window = ARWindow::knit(q, xi, window_options(q, xi, 0, LevelRange::new(lo - radius, hi + radius), margin))?;
    let mut out = Vec::new();
    let mut s = -radius - radius.rem_euclid(2);
    while s <= radius {
        let fits = slots.iter().all(|slot| {
            window.at(slot.shifted(-s)).is_some_and(|id| window.vertex(id).is_projective())
        });
        if fits {
            out.push(s);
        }
        s += 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DynkinType;

    fn a2() -> (DynkinQuiver, HeightFunction) {
        (DynkinQuiver::standard(DynkinType::A(2)), HeightFunction(vec![1, 0]))
    }

    fn a4() -> (DynkinQuiver, HeightFunction) {
        let q = DynkinQuiver::new(DynkinType::A(4), &["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("1", "4")]).unwrap();
        (q, HeightFunction(vec![2, 1, 0, 1]))
    }

    fn knit_around(q: &DynkinQuiver, xi: &HeightFunction, extra: i64) -> ARWindow {
        let margin = default_margin(q);
        ARWindow::knit(q, xi, window_options(q, xi, 0, LevelRange::new(-extra, extra), margin)).unwrap()
    }

    fn dim(q: &DynkinQuiver, entries: &[&str]) -> DimVector {
        DimVector::from_entries(entries.iter().map(|s| (RepVertex::parse(q, s).unwrap(), 1)))
    }

    #[test]
    fn seeds() {
        let (q, xi) = a2();
        let s = seed_section(&q, &xi);
        assert_eq!(s[0], (Slot::new(0, 1), dim(&q, &["1[0]", "2[0]"])));
        assert_eq!(s[1], (Slot::new(1, 0), dim(&q, &["2[0]"])));
        let (q, xi) = a4();
        let s = seed_section(&q, &xi);
        assert_eq!(s[0], (Slot::new(0, 2), dim(&q, &["1[0]", "2[0]", "3[0]", "4[0]"])));
        let q = DynkinQuiver::standard(DynkinType::A(1));
        let s = seed_section(&q, &HeightFunction(vec![0]));
        assert_eq!(s, vec![(Slot::new(0, 0), dim(&q, &["1[0]"]))]);
    }

    #[test]
    fn a2_hand_knitted_projectives() {
        let (q, xi) = a2();
        let w = knit_around(&q, &xi, 8);
        let p = |s: &str| w.psi_of_projective(RepVertex::parse(&q, s).unwrap()).unwrap();
        assert_eq!(p("1[0]"), Slot::new(0, 0));
        assert_eq!(p("2[-1]"), Slot::new(0, 2));
        assert_eq!(p("1[-1]"), Slot::new(0, 4));
        assert_eq!(p("2[0]"), Slot::new(0, -2));
    }

    #[test]
    fn meshes_are_additive_and_projectives_sit_in_one_mesh() {
        for (q, xi) in [a2(), a4(), (DynkinQuiver::standard(DynkinType::D(4)), HeightFunction::canonical(&DynkinQuiver::standard(DynkinType::D(4))))] {
            let w = knit_around(&q, &xi, 10);
            let mut proj_uses: HashMap<VertexId, usize> = HashMap::new();
            for m in w.meshes() {
                let mut sum = DimVector::zero();
                for &e in &m.middles {
                    sum = sum.plus(&w.vertex(e).dim);
                    if w.vertex(e).is_projective() {
                        *proj_uses.entry(e).or_default() += 1;
                    }
                }
                assert_eq!(w.vertex(m.start).dim.plus(&w.vertex(m.end).dim), sum);
                assert!(m.middles.iter().filter(|&&e| w.vertex(e).is_projective()).count() <= 1);
            }
            for id in w.projective_ids() {
                let s = w.vertex(id).slot;
                if w.range().contains(s.level - 1) && w.range().contains(s.level + 1) {
                    assert_eq!(proj_uses.get(&id), Some(&1), "{}", w.label(id));
                }
            }
        }
    }

    #[test]
    fn per_period_counts() {
        let cases = [
            (DynkinQuiver::standard(DynkinType::A(2)), 3),
            (a4().0, 10),
            (DynkinQuiver::standard(DynkinType::D(4)), 12),
            (DynkinQuiver::standard(DynkinType::E(6)), 36),
        ];
        for (q, roots) in cases {
            let xi = HeightFunction::canonical(&q);
            assert_eq!(q.positive_roots().len(), roots);
            let h = q.coxeter_number();
            let w = knit_around(&q, &xi, 3 * h);
            let stable_in = |lo: i64, len: i64| {
                w.stable_ids().filter(|&id| (lo..lo + len).contains(&w.vertex(id).slot.level)).count()
            };
            let proj_in = |lo: i64, len: i64| {
                w.projective_ids().filter(|&id| (lo..lo + len).contains(&w.vertex(id).slot.level)).count()
            };
            for lo in -h..h {
                assert_eq!(stable_in(lo, h), roots);
                assert_eq!(proj_in(lo, degree_period(&q)), q.len());
            }
        }
    }

    #[test]
    fn kq_modules_appear_once_each() {
        // Stable vertices supported in degree 0 alone are the kQ-modules;
        // their dimension vectors are exactly the positive roots.
        for q in [DynkinQuiver::standard(DynkinType::A(3)), a4().0, DynkinQuiver::standard(DynkinType::D(5))] {
            let xi = HeightFunction::canonical(&q);
            let w = knit_around(&q, &xi, 3 * q.coxeter_number());
            let mut found: Vec<Vec<i64>> = w
                .stable_ids()
                .map(|id| &w.vertex(id).dim)
                .filter(|d| d.support().all(|x| x.degree == 0))
                .map(|d| (0..q.len()).map(|i| d.get(RepVertex::new(i, 0))).collect())
                .collect();
            found.sort();
            let mut roots = q.positive_roots();
            roots.sort();
            assert_eq!(found, roots);
        }
    }

    #[test]
    fn tau_roundtrip_and_geometry() {
        let (q, xi) = a4();
        let w = knit_around(&q, &xi, 10);
        for id in w.stable_ids().filter(|&id| w.is_interior(w.vertex(id).slot)) {
            let t = w.tau(id).unwrap();
            assert_eq!(w.tau_inv(t).unwrap(), id);
            assert_eq!(w.vertex(t).slot, w.vertex(id).slot.shifted(-2));
        }
        let top = w.stable_ids().max_by_key(|&id| w.vertex(id).slot.level).unwrap();
        assert!(matches!(w.tau_inv(top), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn degree_shift_moves_projectives_by_one_period() {
        for q in [a4().0, DynkinQuiver::standard(DynkinType::D(4))] {
            let xi = HeightFunction::canonical(&q);
            let w = knit_around(&q, &xi, 4 * q.coxeter_number());
            let mut checked = 0;
            for (&x, &id) in w.projectives() {
                if let Ok(s) = w.psi_of_projective(x.shifted(1)) {
                    assert_eq!(s, w.vertex(id).slot.shifted(-degree_period(&q)));
                    checked += 1;
                }
            }
            assert!(checked >= q.len());
        }
    }

    #[test]
    fn stable_dims_shift_with_degree() {
        // shifting every dimension vector by one degree is again a vertex
        let (q, xi) = a4();
        let w = knit_around(&q, &xi, 20);
        for id in w.stable_ids().filter(|&id| w.is_interior(w.vertex(id).slot)) {
            let v = w.vertex(id);
            let shifted = w.stable_with_dim(&v.dim.shifted(1)).unwrap();
            assert_eq!(w.vertex(shifted).slot, v.slot.shifted(-degree_period(&q)));
        }
    }

    #[test]
    fn psi_roundtrip() {
        let (q, xi) = a4();
        let w = knit_around(&q, &xi, 10);
        for &x in w.projectives().keys() {
            let id = w.psi_inv(w.psi_of_projective(x).unwrap()).unwrap();
            assert_eq!(w.vertex(id).kind, ARKind::Projective(x));
            assert_eq!(w.vertex(id).slot.kind(&xi), SlotKind::Projective);
        }
        for v in w.vertices() {
            let expected = if v.is_projective() { SlotKind::Projective } else { SlotKind::Stable };
            assert_eq!(v.slot.kind(&xi), expected);
        }
    }

    #[test]
    fn small_window_is_rejected() {
        let (q, xi) = a2();
        let opts = KnitOptions { range: LevelRange::new(0, 1), margin: 2, anchor_shift: 0 };
        assert!(matches!(ARWindow::knit(&q, &xi, opts), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn a4_example_slots_are_projective_images() {
        // heights with ξ_3 odd so that (3, 8) is a projective slot
        let (q, _) = a4();
        let xi = HeightFunction(vec![3, 2, 1, 2]);
        let slots = [Slot::new(2, 8), Slot::new(0, 4), Slot::new(2, 0)];
        let shifts = find_anchor_shifts(&q, &xi, &slots, 12).unwrap();
        assert!(!shifts.is_empty());
        let period = degree_period(&q);
        for &s in &shifts {
            assert_eq!((s - shifts[0]).rem_euclid(period), 0);
        }
        let s = *shifts.iter().find(|&&s| {
            let w = ARWindow::knit(&q, &xi, window_options(&q, &xi, s, LevelRange::new(0, 8), default_margin(&q))).unwrap();
            w.psi_of_projective(RepVertex::parse(&q, "4[0]").unwrap()) == Ok(Slot::new(2, 8))
        })
        .expect("some shift puts P_4[0] at (3,8)");
        let w = ARWindow::knit(&q, &xi, window_options(&q, &xi, s, LevelRange::new(0, 8), default_margin(&q))).unwrap();
        let p = |x: &str| w.psi_of_projective(RepVertex::parse(&q, x).unwrap()).unwrap();
        assert_eq!(p("1[1]"), Slot::new(0, 4));
        assert_eq!(p("4[1]"), Slot::new(2, 0));
    }

    #[test]
    fn exports() {
        let (q, xi) = a2();
        let w = knit_around(&q, &xi, 2);
        let dot = w.to_dot();
        assert!(dot.starts_with("digraph ar {"));
        assert!(dot.contains("shape=box"));
        let js = w.to_json();
        assert_eq!(js["vertices"].as_array().unwrap().len(), w.vertices().len());
    }
}
