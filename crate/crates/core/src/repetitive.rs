//! The quiver `Q^repet` of the repetitive algebra `Â`, its presentation by
//! zero and commutation relations, and dimension vectors of `Â`-modules.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::quiver::{DynkinQuiver, QPath};

/// The vertex `i[m]` of `Q^repet`. Ordered by degree first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepVertex {
    pub degree: i64,
    pub base: usize,
}

impl RepVertex {
    pub fn new(base: usize, degree: i64) -> Self {
        RepVertex { degree, base }
    }

    pub fn shifted(&self, by: i64) -> Self {
        RepVertex { degree: self.degree + by, base: self.base }
    }

    /// Parses `name[m]`.
    pub fn parse(q: &DynkinQuiver, s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            field: s.to_string(),
            message: "expected a vertex of the form name[degree]".into(),
        };
        let s = s.trim();
        let open = s.rfind('[').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        let degree: i64 = inner.trim().parse().map_err(|_| bad())?;
        let name = &s[..open];
        let base = q.index_of(name).ok_or_else(|| Error::Parse {
            field: s.to_string(),
            message: format!("unknown vertex `{name}`"),
        })?;
        Ok(RepVertex { degree, base })
    }

    pub fn label(&self, q: &DynkinQuiver) -> String {
        format!("{}[{}]", q.name(self.base), self.degree)
    }
}

/// A finitely supported integer function on the vertices of `Q^repet`.
/// Zero entries are never stored. Intermediate results may be negative;
/// dimension vectors of modules are the nonnegative ones.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(BTreeMap<RepVertex, i64>);

impl DimVector {
    pub fn zero() -> Self {
        DimVector(BTreeMap::new())
    }

    pub fn unit(x: RepVertex) -> Self {
        let mut d = DimVector::zero();
        d.set(x, 1);
        d
    }

    pub fn from_entries<I: IntoIterator<Item = (RepVertex, i64)>>(entries: I) -> Self {
        let mut d = DimVector::zero();
        for (x, k) in entries {
            d.add_at(x, k);
        }
        d
    }

    pub fn get(&self, x: RepVertex) -> i64 {
        self.0.get(&x).copied().unwrap_or(0)
    }

    pub fn set(&mut self, x: RepVertex, k: i64) {
        if k == 0 {
            self.0.remove(&x);
        } else {
            self.0.insert(x, k);
        }
    }

    pub fn add_at(&mut self, x: RepVertex, k: i64) {
        let v = self.get(x) + k;
        self.set(x, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (RepVertex, i64)> + '_ {
        self.0.iter().map(|(&x, &k)| (x, k))
    }

    pub fn support(&self) -> impl Iterator<Item = RepVertex> + '_ {
        self.0.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|&k| k >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    /// `self ≤ other` entrywise.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().all(|(x, &k)| k <= other.get(*x))
    }

    pub fn plus(&self, other: &DimVector) -> DimVector {
        let mut d = self.clone();
        for (x, k) in other.entries() {
            d.add_at(x, k);
        }
        d
    }

    pub fn minus(&self, other: &DimVector) -> DimVector {
        self.plus(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> DimVector {
        if k == 0 {
            return DimVector::zero();
        }
        DimVector(self.0.iter().map(|(&x, &v)| (x, v * k)).collect())
    }

    pub fn shifted(&self, by: i64) -> DimVector {
        DimVector(self.0.iter().map(|(x, &v)| (x.shifted(by), v)).collect())
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.0.keys().map(|x| x.degree).min()?;
        let hi = self.0.keys().map(|x| x.degree).max()?;
        Some((lo, hi))
    }

    pub fn display<'a>(&'a self, q: &'a DynkinQuiver) -> DimDisplay<'a> {
        DimDisplay { d: self, q }
    }
}

pub struct DimDisplay<'a> {
    d: &'a DimVector,
    q: &'a DynkinQuiver,
}

impl fmt::Display for DimDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (x, k)) in self.d.entries().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", x.label(self.q), k)?;
        }
        write!(f, "}}")
    }
}

/// Dimension vector of the indecomposable projective `P_{i[m]}`: one at `j[m]`
/// for each path `i -> j` and one at `j[m+1]` for each path `j -> i`.
pub fn projective_dim_vector(q: &DynkinQuiver, x: RepVertex) -> DimVector {
    let mut d = DimVector::zero();
    for j in 0..q.len() {
        if q.has_path(x.base, j) {
            d.add_at(RepVertex::new(j, x.degree), 1);
        }
        if q.has_path(j, x.base) {
            d.add_at(RepVertex::new(j, x.degree + 1), 1);
        }
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepArrowKind {
    /// Copy of the arrow `Q.arrows()[k]` in one degree.
    Ordinary(usize),
    /// `w*: j[m] -> i[m+1]` for the maximal path `Q.maximal_paths()[k]: i -> j`.
    Connecting(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepArrow {
    pub kind: RepArrowKind,
    pub source: RepVertex,
    pub target: RepVertex,
}

/// A path of `Q^repet` as its vertex sequence (the quiver has no parallel arrows).
pub type RepPath = Vec<RepVertex>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepRelation {
    Zero(RepPath),
    /// `+first − second = 0`.
    Commutation(RepPath, RepPath),
}

impl RepRelation {
    /// Signed terms of the relation.
    pub fn terms(&self) -> Vec<(i64, &RepPath)> {
        match self {
            RepRelation::Zero(p) => vec![(1, p)],
            RepRelation::Commutation(p, q) => vec![(1, p), (-1, q)],
        }
    }
}

#[derive(Debug, Clone)]
pub struct RepetitivePresentation {
    pub degrees: RangeInclusive<i64>,
    pub vertices: Vec<RepVertex>,
    pub arrows: Vec<RepArrow>,
    pub relations: Vec<RepRelation>,
    /// Paths that survive in `Â`: subpaths of full paths inside the window.
    pub nonzero_paths: BTreeSet<RepPath>,
}

/// Vertex sequence of the full path through `k` of the maximal path `w`,
/// starting at `k[n]` and ending at `k[n+1]`.
fn full_path(w: &QPath, k: usize, n: i64) -> RepPath {
    let pos = w.position(k).expect("k lies on w");
    let mut seq: RepPath = w.0[pos..].iter().map(|&v| RepVertex::new(v, n)).collect();
    seq.extend(w.0[..=pos].iter().map(|&v| RepVertex::new(v, n + 1)));
    seq
}

fn arrow_of(q: &DynkinQuiver, maximal: &[QPath], s: RepVertex, t: RepVertex) -> Option<RepArrowKind> {
    if s.degree == t.degree {
        q.arrows()
            .iter()
            .position(|&(a, b)| a == s.base && b == t.base)
            .map(RepArrowKind::Ordinary)
    } else if t.degree == s.degree + 1 {
        maximal
            .iter()
            .position(|w| w.target() == s.base && w.source() == t.base)
            .map(RepArrowKind::Connecting)
    } else {
        None
    }
}

impl RepetitivePresentation {
    pub fn arrow_kind(&self, q: &DynkinQuiver, s: RepVertex, t: RepVertex) -> Option<RepArrowKind> {
        arrow_of(q, &q.maximal_paths(), s, t)
    }

    pub fn is_nonzero(&self, p: &[RepVertex]) -> bool {
        self.nonzero_paths.contains(p)
    }
}

/// Builds the presentation of `Â` restricted to the degrees in `degrees`.
pub fn build_repetitive_presentation(q: &DynkinQuiver, degrees: RangeInclusive<i64>) -> RepetitivePresentation {
    let maximal = q.maximal_paths();
    let (lo, hi) = (*degrees.start(), *degrees.end());
    let in_window = |x: &RepVertex| lo <= x.degree && x.degree <= hi;

    let mut vertices = Vec::new();
    for m in lo..=hi {
        for i in q.topological_order() {
            vertices.push(RepVertex::new(i, m));
        }
    }

    let mut arrows = Vec::new();
    for m in lo..=hi {
        for (k, &(s, t)) in q.arrows().iter().enumerate() {
            arrows.push(RepArrow {
                kind: RepArrowKind::Ordinary(k),
                source: RepVertex::new(s, m),
                target: RepVertex::new(t, m),
            });
        }
        if m < hi {
            for (k, w) in maximal.iter().enumerate() {
                arrows.push(RepArrow {
                    kind: RepArrowKind::Connecting(k),
                    source: RepVertex::new(w.target(), m),
                    target: RepVertex::new(w.source(), m + 1),
                });
            }
        }
    }

    // Nonzero paths of positive length: contiguous subpaths of full paths.
    let mut nonzero: BTreeSet<RepPath> = BTreeSet::new();
    for m in lo..=hi {
        for w in &maximal {
            for a in 0..w.0.len() {
                for b in a + 1..w.0.len() {
                    nonzero.insert(w.0[a..=b].iter().map(|&v| RepVertex::new(v, m)).collect());
                }
            }
        }
    }
    for n in lo..hi {
        for w in &maximal {
            for &k in &w.0 {
                let full = full_path(w, k, n);
                for a in 0..full.len() {
                    for b in a + 1..full.len() {
                        nonzero.insert(full[a..=b].to_vec());
                    }
                }
            }
        }
    }

    let mut out_arrows: BTreeMap<RepVertex, Vec<RepVertex>> = BTreeMap::new();
    for a in &arrows {
        out_arrows.entry(a.source).or_default().push(a.target);
    }

    let mut relations = Vec::new();

    let mut parallel: BTreeMap<(RepVertex, RepVertex), Vec<&RepPath>> = BTreeMap::new();
    for p in &nonzero {
        parallel.entry((p[0], *p.last().expect("nonempty"))).or_default().push(p);
    }
    let alternatives = |p: &[RepVertex]| -> Vec<&RepPath> {
        parallel.get(&(p[0], p[p.len() - 1])).map(|v| v.iter().copied().filter(|r| r[..] != *p).collect()).unwrap_or_default()
    };
    let has_zero_proper_subpath = |p: &[RepVertex]| !nonzero.contains(&p[1..]) || !nonzero.contains(&p[..p.len() - 1]);

    // Minimal zero paths: every proper subpath survives but the path does not.
    // A minimal zero path that equals, through a commutation, a path already
    // killed by a shorter zero path is left out.
    for p in &nonzero {
        let last = *p.last().expect("paths have a vertex");
        for &next in out_arrows.get(&last).map(Vec::as_slice).unwrap_or(&[]) {
            let mut ext = p.clone();
            ext.push(next);
            if nonzero.contains(&ext) || !nonzero.contains(&ext[1..]) {
                continue;
            }
            let via_prefix = alternatives(p).into_iter().any(|alt| {
                let mut e = alt.clone();
                e.push(next);
                has_zero_proper_subpath(&e)
            });
            let via_suffix = alternatives(&ext[1..]).into_iter().any(|alt| {
                let mut e = vec![ext[0]];
                e.extend_from_slice(alt);
                has_zero_proper_subpath(&e)
            });
            if !via_prefix && !via_suffix && ext.iter().all(in_window) {
                relations.push(RepRelation::Zero(ext));
            }
        }
    }

    // Commutation relations between parallel surviving paths that share
    // neither their first nor their last arrow.
    for paths in parallel.values() {
        let mut component: Vec<usize> = (0..paths.len()).collect();
        fn find(c: &mut [usize], i: usize) -> usize {
            if c[i] != i {
                let r = find(c, c[i]);
                c[i] = r;
            }
            c[i]
        }
        for a in 0..paths.len() {
            for b in a + 1..paths.len() {
                let (p, r) = (paths[a], paths[b]);
                let shares_first = p[1] == r[1];
                let shares_last = p[p.len() - 2] == r[r.len() - 2];
                let (ca, cb) = (find(&mut component, a), find(&mut component, b));
                if shares_first || shares_last || ca == cb {
                    continue;
                }
                component[ca] = cb;
                relations.push(RepRelation::Commutation(p.clone(), r.clone()));
            }
        }
    }

    RepetitivePresentation { degrees, vertices, arrows, relations, nonzero_paths: nonzero }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DynkinType;

    fn a4() -> DynkinQuiver {
        DynkinQuiver::new(DynkinType::A(4), &["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("1", "4")]).unwrap()
    }

    fn d4() -> DynkinQuiver {
        DynkinQuiver::new(DynkinType::D(4), &["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("2", "4")]).unwrap()
    }

    fn v(q: &DynkinQuiver, s: &str) -> RepVertex {
        RepVertex::parse(q, s).unwrap()
    }

    fn path(q: &DynkinQuiver, s: &[&str]) -> RepPath {
        s.iter().map(|x| v(q, x)).collect()
    }

    /// Relations living in the single degree step 0 -> 1, labelled by vertex sequences.
    fn relations_over_step(q: &DynkinQuiver) -> (Vec<RepPath>, Vec<(RepPath, RepPath)>) {
        let pres = build_repetitive_presentation(q, 0..=1);
        let mut zeros = Vec::new();
        let mut comms = Vec::new();
        for r in pres.relations {
            match r {
                RepRelation::Zero(p) => zeros.push(p),
                RepRelation::Commutation(p, r) => comms.push((p, r)),
            }
        }
        (zeros, comms)
    }

    #[test]
    fn a4_relations() {
        let q = a4();
        let (zeros, comms) = relations_over_step(&q);
        // c(ba)* : 3[0] -> 1[1] -> 4[1]
        assert!(zeros.contains(&path(&q, &["3[0]", "1[1]", "4[1]"])));
        // a c* : 4[0] -> 1[1] -> 2[1]
        assert!(zeros.contains(&path(&q, &["4[0]", "1[1]", "2[1]"])));
        // b a (ba)* b : 2[0] -> 3[0] -> 1[1] -> 2[1] -> 3[1]
        assert!(zeros.contains(&path(&q, &["2[0]", "3[0]", "1[1]", "2[1]", "3[1]"])));
        assert_eq!(zeros.len(), 3, "{:?}", zeros);
        // (ba)* b a = c* c
        assert_eq!(comms.len(), 1);
        let (p, r) = &comms[0];
        let mut pair = [p.clone(), r.clone()];
        pair.sort();
        assert_eq!(pair[0], path(&q, &["1[0]", "2[0]", "3[0]", "1[1]"]));
        assert_eq!(pair[1], path(&q, &["1[0]", "4[0]", "1[1]"]));
    }

    #[test]
    fn d4_relations() {
        let q = d4();
        let (zeros, comms) = relations_over_step(&q);
        // ca(ba)*, ba(ca)*, a(ca)*ca, a(ba)*ba
        assert!(zeros.contains(&path(&q, &["3[0]", "1[1]", "2[1]", "4[1]"])));
        assert!(zeros.contains(&path(&q, &["4[0]", "1[1]", "2[1]", "3[1]"])));
        assert!(zeros.contains(&path(&q, &["1[0]", "2[0]", "3[0]", "1[1]", "2[1]"])));
        assert!(zeros.contains(&path(&q, &["1[0]", "2[0]", "4[0]", "1[1]", "2[1]"])));
        assert_eq!(zeros.len(), 4);
        assert_eq!(comms.len(), 1);
        let (p, r) = &comms[0];
        let mut pair = [p.clone(), r.clone()];
        pair.sort();
        assert_eq!(pair[0], path(&q, &["2[0]", "3[0]", "1[1]"]));
        assert_eq!(pair[1], path(&q, &["2[0]", "4[0]", "1[1]"]));
    }

    #[test]
    fn a2_is_linear_with_length_three_zero() {
        let q = DynkinQuiver::standard(DynkinType::A(2));
        let pres = build_repetitive_presentation(&q, -1..=2);
        for r in &pres.relations {
            match r {
                RepRelation::Zero(p) => assert_eq!(p.len(), 4),
                RepRelation::Commutation(..) => panic!("A2 has no commutation relation"),
            }
        }
        // the Z-line 1[-1] 2[-1] 1[0] 2[0] ... has one zero relation per
        // length-3 window inside the range
        assert_eq!(pres.relations.len(), 8 - 3);
    }

    #[test]
    fn projective_dims() {
        let q = DynkinQuiver::standard(DynkinType::A(2));
        let p1 = projective_dim_vector(&q, v(&q, "1[0]"));
        assert_eq!(p1, DimVector::from_entries([(v(&q, "1[0]"), 1), (v(&q, "2[0]"), 1), (v(&q, "1[1]"), 1)]));
        let p2 = projective_dim_vector(&q, v(&q, "2[0]"));
        assert_eq!(p2, DimVector::from_entries([(v(&q, "2[0]"), 1), (v(&q, "1[1]"), 1), (v(&q, "2[1]"), 1)]));
        let q = a4();
        let p = projective_dim_vector(&q, v(&q, "1[0]"));
        let support: Vec<String> = p.support().map(|x| x.label(&q)).collect();
        assert_eq!(support, ["1[0]", "2[0]", "3[0]", "4[0]", "1[1]"]);
        assert!(p.entries().all(|(_, k)| k == 1));
    }

    #[test]
    fn projective_total_counts_paths_both_ways() {
        for ty in [DynkinType::A(5), DynkinType::D(5), DynkinType::E(6)] {
            let q = DynkinQuiver::standard(ty);
            for i in 0..q.len() {
                let p = projective_dim_vector(&q, RepVertex::new(i, 3));
                assert_eq!(p.total() as usize, q.paths_from(i) + q.paths_into(i));
            }
        }
    }

    #[test]
    fn projective_is_spanned_by_surviving_paths() {
        // dim e_y Â e_x equals the number of surviving paths x -> y (trivial included)
        let q = d4();
        let pres = build_repetitive_presentation(&q, -1..=2);
        let x = RepVertex::new(1, 0);
        let p = projective_dim_vector(&q, x);
        for y in &pres.vertices {
            let reached = *y == x || pres.nonzero_paths.iter().any(|r| r[0] == x && r.last() == Some(y));
            assert_eq!(p.get(*y), i64::from(reached), "{}", y.label(&q));
        }
    }

    #[test]
    fn parse_and_display() {
        let q = a4();
        assert_eq!(v(&q, "4[-2]"), RepVertex::new(3, -2));
        assert!(RepVertex::parse(&q, "7[0]").is_err());
        assert!(RepVertex::parse(&q, "1[x]").is_err());
        let d = DimVector::from_entries([(v(&q, "1[1]"), 2), (v(&q, "4[0]"), 1)]);
        assert_eq!(d.display(&q).to_string(), "{4[0]:1, 1[1]:2}");
    }
}
