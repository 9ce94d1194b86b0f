//! The quivers `Q̂ ⊂ Γ̂` over a finite level window, with their
//! preprojective-type relations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quiver::{DynkinQuiver, HeightFunction};

/// A vertex `(i, n)` of `Γ̂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub column: usize,
    pub level: i64,
}

impl Slot {
    pub fn new(column: usize, level: i64) -> Self {
        Slot { column, level }
    }

    pub fn kind(&self, xi: &HeightFunction) -> SlotKind {
        if (self.level - xi.get(self.column)).rem_euclid(2) == 0 {
            SlotKind::Stable
        } else {
            SlotKind::Projective
        }
    }

    pub fn shifted(&self, by: i64) -> Slot {
        Slot { column: self.column, level: self.level + by }
    }

    /// Parses `(name,level)`.
    pub fn parse(q: &DynkinQuiver, s: &str) -> crate::error::Result<Slot> {
        let bad = |message: String| crate::error::Error::Parse { field: s.to_string(), message };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| bad("expected a slot of the form (name,level)".into()))?;
        let (name, level) = inner.rsplit_once(',').ok_or_else(|| bad("expected a slot of the form (name,level)".into()))?;
        let column = q.index_of(name.trim()).ok_or_else(|| bad(format!("unknown vertex `{}`", name.trim())))?;
        let level = level.trim().parse().map_err(|_| bad(format!("bad level `{}`", level.trim())))?;
        Ok(Slot { column, level })
    }

    pub fn display<'a>(&self, q: &'a DynkinQuiver) -> SlotDisplay<'a> {
        SlotDisplay { slot: *self, q }
    }
}

pub struct SlotDisplay<'a> {
    slot: Slot,
    q: &'a DynkinQuiver,
}

impl fmt::Display for SlotDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q.name(self.slot.column), self.slot.level)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotKind {
    /// A vertex of `Q̂`, carrying a `V`-space.
    Stable,
    /// A vertex of `Γ̂ \ Q̂`, carrying a `W`-space.
    Projective,
}

/// Inclusive range of levels; empty when `min > max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRange {
    pub min: i64,
    pub max: i64,
}

impl LevelRange {
    pub fn new(min: i64, max: i64) -> Self {
        LevelRange { min, max }
    }

    pub fn is_empty(&self) -> bool {
        self.min > self.max
    }

    pub fn contains(&self, level: i64) -> bool {
        self.min <= level && level <= self.max
    }

    pub fn levels(&self) -> impl DoubleEndedIterator<Item = i64> {
        self.min..=self.max
    }

    pub fn union(&self, other: &LevelRange) -> LevelRange {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        LevelRange::new(self.min.min(other.min), self.max.max(other.max))
    }
}

impl fmt::Display for LevelRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.min, self.max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaArrowKind {
    /// `(c, n): (i, n) -> (j, n-1)` for an arrow `c: i -> j` of `Q` (index into `Q`'s arrows).
    Forward(usize),
    /// `(c̄, n): (j, n) -> (i, n-1)` for an arrow `c: i -> j`.
    Backward(usize),
    /// `a: (i, n+1) -> (i, n)` out of a projective slot.
    A,
    /// `b: (i, n) -> (i, n-1)` out of a stable slot.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaArrow {
    pub kind: GammaArrowKind,
    pub source: Slot,
    pub target: Slot,
}

/// A length-two path in `Γ̂`, written as its three vertices.
pub type LengthTwoPath = [Slot; 3];

/// The relation at a stable slot `(i, n)`:
/// `a b + Σ_{c: i→j} (c̄)(c) − Σ_{c: j→i} (c)(c̄) = 0`, all terms `(i,n) → (i,n−2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshRelation {
    pub at: Slot,
    pub terms: Vec<(i64, LengthTwoPath)>,
}

/// Every arrow of `Γ̂` between two slots `from -> to`, if one exists.
/// Arrows of `Γ̂` are never parallel, so a path is determined by its vertices.
pub fn arrow_between(q: &DynkinQuiver, xi: &HeightFunction, from: Slot, to: Slot) -> Option<GammaArrowKind> {
    if to.level != from.level - 1 {
        return None;
    }
    let stable = from.kind(xi) == SlotKind::Stable;
    if from.column == to.column {
        return Some(if stable { GammaArrowKind::B } else { GammaArrowKind::A });
    }
    if !stable {
        return None;
    }
    q.arrows().iter().enumerate().find_map(|(idx, &(s, t))| {
        if s == from.column && t == to.column {
            Some(GammaArrowKind::Forward(idx))
        } else if t == from.column && s == to.column {
            Some(GammaArrowKind::Backward(idx))
        } else {
            None
        }
    })
}

/// Arrows of `Γ̂` leaving `from`, with no window restriction.
pub fn arrows_from(q: &DynkinQuiver, xi: &HeightFunction, from: Slot) -> Vec<GammaArrow> {
    let mut out = Vec::new();
    let below = from.level - 1;
    let mut push = |kind, column| {
        out.push(GammaArrow { kind, source: from, target: Slot::new(column, below) });
    };
    match from.kind(xi) {
        SlotKind::Projective => push(GammaArrowKind::A, from.column),
        SlotKind::Stable => {
            push(GammaArrowKind::B, from.column);
            for (idx, &(s, t)) in q.arrows().iter().enumerate() {
                if s == from.column {
                    push(GammaArrowKind::Forward(idx), t);
                } else if t == from.column {
                    push(GammaArrowKind::Backward(idx), s);
                }
            }
        }
    }
    out
}

/// The relation at a stable slot, without window restriction.
pub fn mesh_relation(q: &DynkinQuiver, at: Slot) -> MeshRelation {
    let i = at.column;
    let n = at.level;
    let mut terms = vec![(1, [at, Slot::new(i, n - 1), Slot::new(i, n - 2)])];
    for &(s, t) in q.arrows() {
        if s == i {
            terms.push((1, [at, Slot::new(t, n - 1), Slot::new(i, n - 2)]));
        } else if t == i {
            terms.push((-1, [at, Slot::new(s, n - 1), Slot::new(i, n - 2)]));
        }
    }
    MeshRelation { at, terms }
}

/// Sign of an arrow under the vertex-preserving automorphism that turns the
/// relations above into mesh relations. `a` and `b` are fixed; `(c, n)` and
/// `(c̄, n+1)` change sign unless `n ≡ 0, 1 (mod 4)`.
pub fn twist_sign(kind: GammaArrowKind, from: Slot, to: Slot) -> i64 {
    let n = match kind {
        GammaArrowKind::A | GammaArrowKind::B => return 1,
        GammaArrowKind::Forward(_) => from.level,
        GammaArrowKind::Backward(_) => to.level,
    };
    if matches!(n.rem_euclid(4), 0 | 1) {
        1
    } else {
        -1
    }
}

/// `Γ̂` restricted to a level window.
#[derive(Debug, Clone)]
pub struct GammaHatWindow {
    pub range: LevelRange,
    pub slots: Vec<Slot>,
    pub arrows: Vec<GammaArrow>,
    pub relations: Vec<MeshRelation>,
}

impl GammaHatWindow {
    pub fn stable_slots(&self, xi: &HeightFunction) -> impl Iterator<Item = &Slot> + '_ {
        let xi = xi.clone();
        self.slots.iter().filter(move |s| s.kind(&xi) == SlotKind::Stable)
    }
}

/// All slots with level in `range`, every arrow with both ends in the window,
/// and one relation per stable slot whose relation lies inside the window.
pub fn build_gamma_hat(q: &DynkinQuiver, xi: &HeightFunction, range: LevelRange) -> GammaHatWindow {
    let mut slots = Vec::new();
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    for level in range.levels().rev() {
        for column in 0..q.len() {
            let slot = Slot::new(column, level);
            slots.push(slot);
            arrows.extend(arrows_from(q, xi, slot).into_iter().filter(|a| range.contains(a.target.level)));
            if slot.kind(xi) == SlotKind::Stable && range.contains(level - 2) {
                relations.push(mesh_relation(q, slot));
            }
        }
    }
    GammaHatWindow { range, slots, arrows, relations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DynkinType;

    #[test]
    fn a2_window_counts() {
        let q = DynkinQuiver::standard(DynkinType::A(2));
        let xi = HeightFunction(vec![1, 0]);
        let w = build_gamma_hat(&q, &xi, LevelRange::new(-1, 2));
        assert_eq!(w.slots.len(), 8);
        // stable slots: (1,-1), (1,1), (2,0), (2,2); interior ones are (1,1) and (2,2)
        let at: Vec<Slot> = w.relations.iter().map(|r| r.at).collect();
        assert_eq!(at, vec![Slot::new(1, 2), Slot::new(0, 1)]);
        assert_eq!(w.stable_slots(&xi).count(), 4);
    }

    #[test]
    fn empty_range_gives_empty_window() {
        let q = DynkinQuiver::standard(DynkinType::A(3));
        let xi = HeightFunction::canonical(&q);
        let w = build_gamma_hat(&q, &xi, LevelRange::new(3, 2));
        assert!(w.slots.is_empty() && w.arrows.is_empty() && w.relations.is_empty());
    }

    #[test]
    fn a4_picture_pattern() {
        // vertices 1,2,3,4 with 1->2->3, 1->4; heights (2,1,0,1)
        let q = DynkinQuiver::new(
            DynkinType::A(4),
            &["1", "2", "3", "4"],
            &[("1", "2"), ("2", "3"), ("1", "4")],
        )
        .unwrap();
        let xi = HeightFunction(vec![2, 1, 0, 1]);
        let w = build_gamma_hat(&q, &xi, LevelRange::new(-1, 2));
        // V at (3,2),(1,2),(2,1),(4,1),(3,0),(1,0),(2,-1),(4,-1)
        let stable: Vec<(String, i64)> = w
            .stable_slots(&xi)
            .map(|s| (q.name(s.column).to_string(), s.level))
            .collect();
        for (name, level) in [("3", 2), ("1", 2), ("2", 1), ("4", 1), ("3", 0), ("1", 0), ("2", -1), ("4", -1)] {
            assert!(stable.contains(&(name.to_string(), level)), "{name},{level}");
        }
        assert_eq!(stable.len(), 8);
        // V(1,2) has arrows to W(1,1), V(2,1), V(4,1)
        let from_12: Vec<Slot> = w.arrows.iter().filter(|a| a.source == Slot::new(0, 2)).map(|a| a.target).collect();
        assert_eq!(from_12.len(), 3);
        // W(2,2) only to V(2,1)
        let from_w22: Vec<_> = w.arrows.iter().filter(|a| a.source == Slot::new(1, 2)).collect();
        assert_eq!(from_w22.len(), 1);
        assert_eq!(from_w22[0].kind, GammaArrowKind::A);
        // stable-to-stable arrows connect stable slots only; a/b alternate kinds
        for a in &w.arrows {
            match a.kind {
                GammaArrowKind::Forward(_) | GammaArrowKind::Backward(_) => {
                    assert_eq!(a.source.kind(&xi), SlotKind::Stable);
                    assert_eq!(a.target.kind(&xi), SlotKind::Stable);
                }
                _ => assert_ne!(a.source.kind(&xi), a.target.kind(&xi)),
            }
        }
    }

    #[test]
    fn relation_count_matches_interior_stable_slots() {
        let q = DynkinQuiver::standard(DynkinType::D(5));
        let xi = HeightFunction::canonical(&q);
        let range = LevelRange::new(-3, 6);
        let w = build_gamma_hat(&q, &xi, range);
        let interior = w.stable_slots(&xi).filter(|s| s.level - 2 >= range.min).count();
        assert_eq!(w.relations.len(), interior);
    }
}
