//! Isomorphism classes of `Â`-modules as multisets of indecomposables,
//! keyed by the slot of each summand.

use std::collections::BTreeMap;

use crate::ar_knit::{ARKind, ARWindow, VertexId};
use crate::error::{Error, Result};
use crate::gamma_hat::Slot;
use crate::repetitive::DimVector;

/// Canonical order is lexicographic on the sorted summand slots.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleClass {
    summands: BTreeMap<Slot, i64>,
}

impl ModuleClass {
    pub fn zero() -> Self {
        ModuleClass::default()
    }

    pub fn single(slot: Slot) -> Self {
        let mut m = ModuleClass::zero();
        m.add(slot, 1);
        m
    }

    pub fn from_summands<I: IntoIterator<Item = (Slot, i64)>>(items: I) -> Self {
        let mut m = ModuleClass::zero();
        for (s, k) in items {
            m.add(s, k);
        }
        m
    }

    /// Adds `k` copies of the indecomposable at `slot`; multiplicities never go negative.
    pub fn add(&mut self, slot: Slot, k: i64) {
        let v = self.summands.get(&slot).copied().unwrap_or(0) + k;
        assert!(v >= 0, "negative multiplicity");
        if v == 0 {
            self.summands.remove(&slot);
        } else {
            self.summands.insert(slot, v);
        }
    }

    pub fn direct_sum(&self, other: &ModuleClass) -> ModuleClass {
        let mut m = self.clone();
        for (&s, &k) in &other.summands {
            m.add(s, k);
        }
        m
    }

    pub fn multiplicity(&self, slot: Slot) -> i64 {
        self.summands.get(&slot).copied().unwrap_or(0)
    }

    pub fn summands(&self) -> impl Iterator<Item = (Slot, i64)> + '_ {
        self.summands.iter().map(|(&s, &k)| (s, k))
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summand_count(&self) -> i64 {
        self.summands.values().sum()
    }

    /// Window vertices of the summands, with multiplicities.
    pub fn vertices(&self, w: &ARWindow) -> Result<Vec<(VertexId, i64)>> {
        self.summands
            .iter()
            .map(|(&s, &k)| {
                w.at(s)
                    .map(|id| (id, k))
                    .ok_or_else(|| Error::WindowTooSmall { module: "orbits_strata", detail: format!("no vertex at {}", w.slot_label(s)) })
            })
            .collect()
    }

    pub fn dim(&self, w: &ARWindow) -> Result<DimVector> {
        let mut d = DimVector::zero();
        for (id, k) in self.vertices(w)? {
            d = d.plus(&w.vertex(id).dim.scaled(k));
        }
        Ok(d)
    }

    pub fn without_projectives(&self, w: &ARWindow) -> Result<ModuleClass> {
        let mut m = ModuleClass::zero();
        for (id, k) in self.vertices(w)? {
            if !w.vertex(id).is_projective() {
                m.add(w.vertex(id).slot, k);
            }
        }
        Ok(m)
    }

    pub fn is_projective_free(&self, w: &ARWindow) -> Result<bool> {
        Ok(self.vertices(w)?.iter().all(|&(id, _)| !w.vertex(id).is_projective()))
    }

    /// Names summands by their dimension vectors, projectives as `P_x`,
    /// listed in order of dimension vector.
    pub fn label(&self, w: &ARWindow) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<(Option<DimVector>, String)> = self
            .summands
            .iter()
            .map(|(&s, &k)| {
                let (dim, name) = match w.at(s) {
                    Some(id) => (Some(w.vertex(id).dim.clone()), module_label(w, id)),
                    None => (None, w.slot_label(s)),
                };
                (dim, if k == 1 { name } else { format!("{k}*{name}") })
            })
            .collect();
        parts.sort();
        parts.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(" + ")
    }
}

/// `P_x` for projectives, otherwise the support of the dimension vector in brackets.
pub fn module_label(w: &ARWindow, id: VertexId) -> String {
    let v = w.vertex(id);
    match v.kind {
        ARKind::Projective(x) => format!("P_{}", x.label(w.quiver())),
        ARKind::Stable => {
            let parts: Vec<String> = v
                .dim
                .entries()
                .map(|(x, k)| if k == 1 { x.label(w.quiver()) } else { format!("{k}*{}", x.label(w.quiver())) })
                .collect();
            format!("[{}]", parts.join(" "))
        }
    }
}
