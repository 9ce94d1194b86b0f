//! Dynkin quivers, height functions and root combinatorics.
//!
//! Vertices carry user-facing string ids and are mapped to dense indices
//! `0..n` in insertion order. All other modules work with the dense indices.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidQuiver(format!("unknown Dynkin type `{s}`"));
        let (letter, rank) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let rank: usize = rank.parse().map_err(|_| bad())?;
        let ty = match letter {
            "A" | "a" if rank >= 1 => DynkinType::A(rank),
            "D" | "d" if rank >= 4 => DynkinType::D(rank),
            "E" | "e" if (6..=8).contains(&rank) => DynkinType::E(rank),
            _ => return Err(bad()),
        };
        Ok(ty)
    }

    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    pub fn coxeter_number(self) -> i64 {
        match self {
            DynkinType::A(n) => n as i64 + 1,
            DynkinType::D(n) => 2 * n as i64 - 2,
            DynkinType::E(6) => 12,
            DynkinType::E(7) => 18,
            DynkinType::E(_) => 30,
        }
    }

    /// `rank * h / 2`, the number of positive roots.
    pub fn positive_root_count(self) -> usize {
        self.rank() * self.coxeter_number() as usize / 2
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// A path in `Q`, stored as its vertex sequence (source first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPath(pub Vec<usize>);

impl QPath {
    pub fn source(&self) -> usize {
        self.0[0]
    }

    pub fn target(&self) -> usize {
        *self.0.last().expect("paths are nonempty")
    }

    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }
}

/// An orientation of a simply-laced Dynkin diagram.
#[derive(Debug, Clone)]
pub struct DynkinQuiver {
    dynkin_type: DynkinType,
    names: Vec<String>,
    index: HashMap<String, usize>,
    arrows: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    /// `reach[i][j]`: there is a path `i -> j` (trivial paths included).
    reach: Vec<Vec<bool>>,
}

impl DynkinQuiver {
    pub fn new<S: AsRef<str>>(
        dynkin_type: DynkinType,
        vertices: &[S],
        arrows: &[(S, S)],
    ) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{name}`")));
            }
        }
        if names.len() != dynkin_type.rank() {
            return Err(Error::InvalidQuiver(format!(
                "type {dynkin_type} needs {} vertices, got {}",
                dynkin_type.rank(),
                names.len()
            )));
        }
        let mut resolved = Vec::with_capacity(arrows.len());
        for (s, t) in arrows {
            let lookup = |v: &S| {
                index.get(v.as_ref()).copied().ok_or_else(|| {
                    Error::InvalidQuiver(format!("arrow mentions unknown vertex `{}`", v.as_ref()))
                })
            };
            let (s, t) = (lookup(s)?, lookup(t)?);
            if s == t {
                return Err(Error::InvalidQuiver(format!("loop at `{}`", names[s])));
            }
            resolved.push((s, t));
        }
        Self::from_indices(dynkin_type, names, resolved)
    }

    fn from_indices(
        dynkin_type: DynkinType,
        names: Vec<String>,
        arrows: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = names.len();
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        if arrows.len() + 1 != n {
            return Err(Error::InvalidQuiver(format!(
                "a Dynkin tree on {n} vertices has {} edges, got {}",
                n - 1,
                arrows.len()
            )));
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(s, t) in &arrows {
            if neighbors[s].contains(&t) {
                return Err(Error::InvalidQuiver(format!(
                    "multiple edges between `{}` and `{}`",
                    names[s], names[t]
                )));
            }
            neighbors[s].push(t);
            neighbors[t].push(s);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        // connected + n-1 edges => tree
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidQuiver("underlying graph is not connected".into()));
        }
        check_shape(dynkin_type, &neighbors)?;

        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![i];
            row[i] = true;
            while let Some(v) = stack.pop() {
                for &(s, t) in &arrows {
                    if s == v && !row[t] {
                        row[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        Ok(DynkinQuiver { dynkin_type, names, index, arrows, neighbors, reach })
    }

    /// The quiver of the given type with Bourbaki vertex numbering `1..=n`
    /// and every edge oriented from the smaller to the larger label.
    pub fn standard(dynkin_type: DynkinType) -> Self {
        let n = dynkin_type.rank();
        let edges: Vec<(usize, usize)> = match dynkin_type {
            DynkinType::A(_) => (1..n).map(|i| (i, i + 1)).collect(),
            DynkinType::D(_) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            DynkinType::E(_) => {
                let mut e = vec![(1, 3), (2, 4), (3, 4)];
                e.extend((4..n).map(|i| (i, i + 1)));
                e
            }
        };
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = edges.into_iter().map(|(s, t)| (s - 1, t - 1)).collect();
        Self::from_indices(dynkin_type, names, arrows).expect("standard quivers are valid")
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.dynkin_type
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn coxeter_number(&self) -> i64 {
        self.dynkin_type.coxeter_number()
    }

    pub fn has_path(&self, from: usize, to: usize) -> bool {
        self.reach[from][to]
    }

    /// The unique path `from -> to`, if any.
    pub fn path(&self, from: usize, to: usize) -> Option<QPath> {
        if !self.has_path(from, to) {
            return None;
        }
        let mut seq = vec![from];
        let mut v = from;
        while v != to {
            v = self
                .arrows
                .iter()
                .find(|&&(s, t)| s == v && self.reach[t][to])
                .map(|&(_, t)| t)
                .expect("reachability implies a next arrow");
            seq.push(v);
        }
        Some(QPath(seq))
    }

    /// Number of paths leaving (resp. entering) `i`, trivial path included.
    pub fn paths_from(&self, i: usize) -> usize {
        self.reach[i].iter().filter(|&&r| r).count()
    }

    pub fn paths_into(&self, i: usize) -> usize {
        self.reach.iter().filter(|row| row[i]).count()
    }

    /// Vertices in an order compatible with the arrows (sources first).
    pub fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.paths_from(v)));
        // paths_from strictly decreases along arrows in a tree quiver
        order
    }

    /// Paths that extend by no arrow on either side. For `A1` this is the
    /// trivial path at the unique vertex.
    pub fn maximal_paths(&self) -> Vec<QPath> {
        let n = self.len();
        let is_source = |v: usize| self.arrows.iter().all(|&(_, t)| t != v);
        let is_sink = |v: usize| self.arrows.iter().all(|&(s, _)| s != v);
        let mut out = Vec::new();
        for i in (0..n).filter(|&v| is_source(v)) {
            for j in (0..n).filter(|&v| is_sink(v)) {
                if let Some(p) = self.path(i, j) {
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    /// Positive roots, enumerated by closing the simple roots under simple
    /// reflections. Independent of the Coxeter number formula.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        positive_roots_of_graph(&self.neighbors)
    }
}

/// Positive roots of a simply-laced graph given by adjacency lists.
/// Stops with `None` semantics at `cap` roots to stay finite on non-Dynkin input.
pub fn positive_roots_of_graph(neighbors: &[Vec<usize>]) -> Vec<Vec<i64>> {
    const CAP: usize = 10_000;
    let n = neighbors.len();
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            // (beta, alpha_i) with Cartan form 2 on the diagonal, -1 on edges
            let pairing = 2 * beta[i] - neighbors[i].iter().map(|&j| beta[j]).sum::<i64>();
            if pairing == 0 {
                continue;
            }
            let mut next = beta.clone();
            next[i] -= pairing;
            if next.iter().all(|&c| c >= 0) && next.iter().any(|&c| c > 0) && seen.insert(next.clone()) {
                if seen.len() > CAP {
                    break;
                }
                queue.push_back(next);
            }
        }
    }
    let mut roots: Vec<_> = seen.into_iter().collect();
    roots.sort();
    roots
}

fn check_shape(ty: DynkinType, neighbors: &[Vec<usize>]) -> Result<()> {
    let degrees: Vec<usize> = neighbors.iter().map(Vec::len).collect();
    let branch: Vec<usize> = (0..degrees.len()).filter(|&v| degrees[v] >= 3).collect();
    let mismatch = |what: &str| Err(Error::InvalidQuiver(format!("graph is not of type {ty}: {what}")));
    match ty {
        DynkinType::A(_) => {
            if !branch.is_empty() {
                return mismatch("type A has no branch vertex");
            }
            Ok(())
        }
        DynkinType::D(n) | DynkinType::E(n) => {
            if branch.len() != 1 || degrees[branch[0]] != 3 {
                return mismatch("expected exactly one trivalent vertex");
            }
            let b = branch[0];
            let mut arms: Vec<usize> = neighbors[b]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (b, start, 1);
                    loop {
                        let next: Vec<usize> =
                            neighbors[cur].iter().copied().filter(|&w| w != prev).collect();
                        match next.as_slice() {
                            [w] => {
                                prev = cur;
                                cur = *w;
                                len += 1;
                            }
                            _ => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            let expected = match ty {
                DynkinType::D(_) => vec![1, 1, n - 3],
                _ => vec![1, 2, n - 4],
            };
            let mut expected = expected;
            expected.sort_unstable();
            if arms != expected {
                return mismatch(&format!("arm lengths {arms:?}, expected {expected:?}"));
            }
            Ok(())
        }
    }
}

/// Integer labels with `xi[t] = xi[s] - 1` on every arrow `s -> t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightFunction(pub Vec<i64>);

impl HeightFunction {
    pub fn validate(&self, q: &DynkinQuiver) -> Result<()> {
        if self.0.len() != q.len() {
            return Err(Error::InvalidQuiver(format!(
                "height function has {} values for {} vertices",
                self.0.len(),
                q.len()
            )));
        }
        for &(s, t) in q.arrows() {
            if self.0[t] != self.0[s] - 1 {
                return Err(Error::HeightMismatch {
                    source_vertex: q.name(s).to_string(),
                    target: q.name(t).to_string(),
                });
            }
        }
        Ok(())
    }

    /// The height function with minimum value 0.
    pub fn canonical(q: &DynkinQuiver) -> Self {
        let mut xi = vec![None; q.len()];
        xi[0] = Some(0i64);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            let hv = xi[v].expect("queued vertices are labelled");
            for &(s, t) in q.arrows() {
                let (other, h) = if s == v { (t, hv - 1) } else if t == v { (s, hv + 1) } else { continue };
                if xi[other].is_none() {
                    xi[other] = Some(h);
                    queue.push_back(other);
                }
            }
        }
        let raw: Vec<i64> = xi.into_iter().map(|h| h.expect("tree is connected")).collect();
        let min = raw.iter().copied().min().unwrap_or(0);
        HeightFunction(raw.into_iter().map(|h| h - min).collect())
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn shifted(&self, by: i64) -> Self {
        HeightFunction(self.0.iter().map(|h| h + by).collect())
    }
}

/// `validate_height_function` as a free function.
pub fn validate_height_function(q: &DynkinQuiver, xi: &HeightFunction) -> Result<()> {
    xi.validate(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a4_example() -> DynkinQuiver {
        DynkinQuiver::new(
            DynkinType::A(4),
            &["1", "2", "3", "4"],
            &[("1", "2"), ("2", "3"), ("1", "4")],
        )
        .unwrap()
    }

    #[test]
    fn height_functions_from_examples() {
        let a2 = DynkinQuiver::standard(DynkinType::A(2));
        assert!(HeightFunction(vec![1, 0]).validate(&a2).is_ok());
        assert!(matches!(
            HeightFunction(vec![0, 0]).validate(&a2),
            Err(Error::HeightMismatch { .. })
        ));
        assert!(HeightFunction(vec![2, 1, 0, 1]).validate(&a4_example()).is_ok());
        assert_eq!(HeightFunction::canonical(&a4_example()), HeightFunction(vec![2, 1, 0, 1]));
    }

    #[test]
    fn maximal_paths_of_examples() {
        let a2 = DynkinQuiver::standard(DynkinType::A(2));
        assert_eq!(a2.maximal_paths(), vec![QPath(vec![0, 1])]);
        let a4 = a4_example();
        assert_eq!(a4.maximal_paths(), vec![QPath(vec![0, 1, 2]), QPath(vec![0, 3])]);
        let d4 = DynkinQuiver::new(
            DynkinType::D(4),
            &["1", "2", "3", "4"],
            &[("1", "2"), ("2", "3"), ("2", "4")],
        )
        .unwrap();
        assert_eq!(d4.maximal_paths(), vec![QPath(vec![0, 1, 2]), QPath(vec![0, 1, 3])]);
        let a1 = DynkinQuiver::standard(DynkinType::A(1));
        assert_eq!(a1.maximal_paths(), vec![QPath(vec![0])]);
    }

    #[test]
    fn every_arrow_lies_on_a_maximal_path() {
        for ty in [DynkinType::A(5), DynkinType::D(6), DynkinType::E(6), DynkinType::E(8)] {
            let q = DynkinQuiver::standard(ty);
            let maximal = q.maximal_paths();
            for &(s, t) in q.arrows() {
                assert!(maximal.iter().any(|p| p.0.windows(2).any(|w| w == [s, t])));
            }
        }
    }

    #[test]
    fn root_counts_match_coxeter_numbers() {
        for ty in [
            DynkinType::A(1),
            DynkinType::A(2),
            DynkinType::A(4),
            DynkinType::D(4),
            DynkinType::D(5),
            DynkinType::E(6),
            DynkinType::E(7),
            DynkinType::E(8),
        ] {
            let q = DynkinQuiver::standard(ty);
            assert_eq!(q.positive_roots().len(), ty.positive_root_count(), "{ty}");
        }
    }

    #[test]
    fn shape_checks() {
        assert!(DynkinType::parse("B3").is_err());
        assert!(DynkinType::parse("E9").is_err());
        assert_eq!(DynkinType::parse("D5").unwrap(), DynkinType::D(5));
        // a path of length 3 is not D4
        let bad = DynkinQuiver::new(
            DynkinType::D(4),
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d")],
        );
        assert!(bad.is_err());
        // E6 with Bourbaki labels
        let e6 = DynkinQuiver::new(
            DynkinType::E(6),
            &["1", "2", "3", "4", "5", "6"],
            &[("1", "3"), ("3", "4"), ("2", "4"), ("4", "5"), ("5", "6")],
        );
        assert!(e6.is_ok());
    }
}
