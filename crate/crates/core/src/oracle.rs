//! Explicit representations of `Â` with exact rational matrices. Used to
//! cross-check the combinatorial Hom and syzygy computations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;
use rand::Rng;

use crate::ar_knit::{ARWindow, VertexId};
use crate::error::{Error, Result};
use crate::hom::HomEngine;
use crate::linalg::{q, Matrix, Subspace, Q};
use crate::quiver::DynkinQuiver;
use crate::repetitive::{DimVector, RepPath, RepRelation, RepVertex, RepetitivePresentation};

/// Arrow matrices are `dim(target) × dim(source)`; missing arrows act as zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExplicitRep {
    dims: BTreeMap<RepVertex, usize>,
    maps: BTreeMap<(RepVertex, RepVertex), Matrix>,
}

/// A morphism as one matrix per vertex.
pub type RepMorphism = BTreeMap<RepVertex, Matrix>;

impl ExplicitRep {
    pub fn dim(&self, x: RepVertex) -> usize {
        self.dims.get(&x).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector::from_entries(self.dims.iter().map(|(&x, &k)| (x, k as i64)))
    }

    pub fn map(&self, s: RepVertex, t: RepVertex) -> Matrix {
        self.maps.get(&(s, t)).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(t), self.dim(s)))
    }

    fn arrow_keys(&self) -> impl Iterator<Item = (RepVertex, RepVertex)> + '_ {
        self.maps.keys().copied()
    }

    fn set_dim(&mut self, x: RepVertex, k: usize) {
        if k > 0 {
            self.dims.insert(x, k);
        }
    }

    fn set_map(&mut self, s: RepVertex, t: RepVertex, m: Matrix) {
        if self.dim(s) > 0 && self.dim(t) > 0 && !m.is_zero() {
            self.maps.insert((s, t), m);
        }
    }

    /// The matrix of a path, `dim(end) × dim(start)`.
    pub fn path_map(&self, p: &[RepVertex]) -> Matrix {
        let mut m = Matrix::identity(self.dim(p[0]));
        for w in p.windows(2) {
            m = self.map(w[0], w[1]).mul(&m);
        }
        m
    }

    /// Checks that every map is an arrow of `pres` and that the relations hold.
    pub fn check_relations(&self, pres: &RepetitivePresentation) -> Result<()> {
        let arrows: BTreeSet<(RepVertex, RepVertex)> = pres.arrows.iter().map(|a| (a.source, a.target)).collect();
        if let Some(&(s, t)) = self.maps.keys().find(|k| !arrows.contains(k)) {
            return Err(Error::Oracle(format!("map {s:?} -> {t:?} is not an arrow")));
        }
        for rel in &pres.relations {
            let terms = rel.terms();
            let (s, t) = (terms[0].1[0], *terms[0].1.last().expect("nonempty"));
            let mut acc = Matrix::zeros(self.dim(t), self.dim(s));
            for (sign, p) in terms {
                let m = self.path_map(p);
                acc = if sign > 0 { acc.add(&m) } else { acc.sub(&m) };
            }
            if !acc.is_zero() {
                return Err(Error::Oracle(format!("relation {rel:?} fails")));
            }
        }
        Ok(())
    }

    pub fn direct_sum(parts: &[&ExplicitRep]) -> ExplicitRep {
        let mut out = ExplicitRep::default();
        let mut offsets: Vec<BTreeMap<RepVertex, usize>> = Vec::new();
        for r in parts {
            let mut off = BTreeMap::new();
            for (&x, &k) in &r.dims {
                let cur = out.dims.entry(x).or_insert(0);
                off.insert(x, *cur);
                *cur += k;
            }
            offsets.push(off);
        }
        let keys: BTreeSet<(RepVertex, RepVertex)> = parts.iter().flat_map(|r| r.arrow_keys()).collect();
        for (s, t) in keys {
            let mut m = Matrix::zeros(out.dim(t), out.dim(s));
            for (r, off) in parts.iter().zip(&offsets) {
                let Some(block) = r.maps.get(&(s, t)) else { continue };
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        m[(off[&t] + i, off[&s] + j)] = block[(i, j)].clone();
                    }
                }
            }
            out.set_map(s, t, m);
        }
        out
    }
}

/// A representation of `Q` with `maps[k]` on the arrow `Q.arrows()[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KqRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

/// The `kQ`-module `X` placed in degree `m`; connecting arrows act as zero.
pub fn embed_kq_module(q: &DynkinQuiver, x: &KqRep, m: i64) -> ExplicitRep {
    let mut out = ExplicitRep::default();
    for (i, &k) in x.dims.iter().enumerate() {
        out.set_dim(RepVertex::new(i, m), k);
    }
    for (&(s, t), a) in q.arrows().iter().zip(&x.maps) {
        out.set_map(RepVertex::new(s, m), RepVertex::new(t, m), a.clone());
    }
    out
}

fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| q(rng.gen_range(-3..=3))).collect()).collect(), cols)
}

/// A generic representation of dimension `root`, redrawn until its
/// endomorphism ring is one-dimensional.
pub fn random_kq_indecomposable<R: Rng + ?Sized>(q: &DynkinQuiver, root: &[i64], rng: &mut R, attempts: usize) -> Result<KqRep> {
    let dims: Vec<usize> = root.iter().map(|&k| usize::try_from(k).expect("nonnegative root")).collect();
    for _ in 0..attempts {
        let maps = q.arrows().iter().map(|&(s, t)| random_matrix(rng, dims[t], dims[s])).collect();
        let x = KqRep { dims: dims.clone(), maps };
        let e = embed_kq_module(q, &x, 0);
        if hom_space(&e, &e) == 1 {
            return Ok(x);
        }
    }
    Err(Error::Oracle(format!("no indecomposable of dimension {root:?} after {attempts} draws")))
}

/// One indecomposable per positive root.
pub fn kq_indecomposables<R: Rng + ?Sized>(q: &DynkinQuiver, rng: &mut R) -> Result<Vec<KqRep>> {
    q.positive_roots().iter().map(|r| random_kq_indecomposable(q, r, rng, 16)).collect()
}

/// Basis of `Hom(a, b)` from the intertwining equations `b_α f_s = f_t a_α`.
pub fn hom_basis(a: &ExplicitRep, b: &ExplicitRep) -> Vec<RepMorphism> {
    let mut offsets: BTreeMap<RepVertex, usize> = BTreeMap::new();
    let mut n = 0;
    for (&x, &da) in &a.dims {
        let db = b.dim(x);
        if db > 0 {
            offsets.insert(x, n);
            n += da * db;
        }
    }
    let keys: BTreeSet<(RepVertex, RepVertex)> = a.arrow_keys().chain(b.arrow_keys()).collect();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (s, t) in keys {
        let (ma, mb) = (a.map(s, t), b.map(s, t));
        let (das, dat) = (a.dim(s), a.dim(t));
        for i in 0..b.dim(t) {
            for j in 0..das {
                let mut row = vec![Q::zero(); n];
                if let Some(&os) = offsets.get(&s) {
                    for k in 0..b.dim(s) {
                        row[os + k * das + j] += &mb[(i, k)];
                    }
                }
                if let Some(&ot) = offsets.get(&t) {
                    for l in 0..dat {
                        row[ot + i * dat + l] -= &ma[(l, j)];
                    }
                }
                rows.push(row);
            }
        }
    }
    let null = Matrix::from_rows(rows, n).nullspace();
    null.column_vectors()
        .into_iter()
        .map(|v| {
            offsets
                .iter()
                .map(|(&x, &o)| {
                    let (da, db) = (a.dim(x), b.dim(x));
                    let block = (0..db).map(|i| v[o + i * da..o + (i + 1) * da].to_vec()).collect();
                    (x, Matrix::from_rows(block, da))
                })
                .collect()
        })
        .collect()
}

pub fn hom_space(a: &ExplicitRep, b: &ExplicitRep) -> usize {
    hom_basis(a, b).len()
}

/// `P_x` together with a representative path for each basis vector.
#[derive(Debug, Clone)]
pub struct ExplicitProjective {
    pub rep: ExplicitRep,
    pub paths: BTreeMap<RepVertex, Vec<RepPath>>,
}

fn find(parent: &mut BTreeMap<RepPath, RepPath>, p: &RepPath) -> RepPath {
    let up = parent[p].clone();
    if up == *p {
        return up;
    }
    let root = find(parent, &up);
    parent.insert(p.clone(), root.clone());
    root
}

/// `P_x = Â e_x` with a basis of path classes: nonzero paths from `x`,
/// identified along commutation relations.
pub fn explicit_projective(pres: &RepetitivePresentation, x: RepVertex) -> Result<ExplicitProjective> {
    if !(*pres.degrees.start() <= x.degree && x.degree < *pres.degrees.end()) {
        return Err(Error::WindowTooSmall { module: "oracle", detail: format!("P at {x:?} needs degrees {}..={}", x.degree, x.degree + 1) });
    }
    let from_x: Vec<RepPath> = pres.nonzero_paths.iter().filter(|p| p[0] == x).cloned().collect();
    let mut parent: BTreeMap<RepPath, RepPath> = from_x.iter().map(|p| (p.clone(), p.clone())).collect();
    let swaps: Vec<(&RepPath, &RepPath)> = pres
        .relations
        .iter()
        .filter_map(|r| match r {
            RepRelation::Commutation(a, b) => Some((a, b)),
            RepRelation::Zero(_) => None,
        })
        .collect();
    for p in &from_x {
        for &(a, b) in &swaps {
            for (u, v) in [(a, b), (b, a)] {
                for start in 0..p.len() {
                    if p.len() - start < u.len() || p[start..start + u.len()] != u[..] {
                        continue;
                    }
                    let mut r = p[..start].to_vec();
                    r.extend_from_slice(v);
                    r.extend_from_slice(&p[start + u.len()..]);
                    if !parent.contains_key(&r) {
                        return Err(Error::Oracle(format!("path {p:?} rewrites to a zero path")));
                    }
                    let (ra, rb) = (find(&mut parent, p), find(&mut parent, &r));
                    parent.insert(ra, rb);
                }
            }
        }
    }
    let mut paths: BTreeMap<RepVertex, Vec<RepPath>> = BTreeMap::new();
    paths.entry(x).or_default().push(vec![x]);
    let mut class_of: BTreeMap<RepPath, (RepVertex, usize)> = BTreeMap::new();
    for p in &from_x {
        let root = find(&mut parent, p);
        if let Some(&c) = class_of.get(&root) {
            class_of.insert(p.clone(), c);
            continue;
        }
        let end = *p.last().expect("nonempty");
        let list = paths.entry(end).or_default();
        let c = (end, list.len());
        list.push(root.clone());
        class_of.insert(root, c);
        class_of.insert(p.clone(), c);
    }
    class_of.insert(vec![x], (x, 0));

    let mut rep = ExplicitRep::default();
    for (&y, list) in &paths {
        rep.set_dim(y, list.len());
    }
    for a in &pres.arrows {
        let (s, t) = (a.source, a.target);
        let (ds, dt) = (rep.dim(s), rep.dim(t));
        if ds == 0 || dt == 0 {
            continue;
        }
        let mut m = Matrix::zeros(dt, ds);
        for (j, p) in paths[&s].iter().enumerate() {
            let mut ext = p.clone();
            ext.push(t);
            if let Some(&(_, i)) = class_of.get(&ext) {
                m[(i, j)] = q(1);
            }
        }
        rep.set_map(s, t, m);
    }
    Ok(ExplicitProjective { rep, paths })
}

/// Matrix of `P_y → R` sending `e_y` to `v`, at vertex `z`.
fn cover_block(p: &ExplicitProjective, r: &ExplicitRep, v: &Matrix, z: RepVertex) -> Matrix {
    let list = p.paths.get(&z).map(Vec::as_slice).unwrap_or(&[]);
    let mut m = Matrix::zeros(r.dim(z), list.len());
    for (j, path) in list.iter().enumerate() {
        let col = r.path_map(path).mul(v);
        for i in 0..r.dim(z) {
            m[(i, j)] = col[(i, 0)].clone();
        }
    }
    m
}

pub fn top_dims(r: &ExplicitRep) -> BTreeMap<RepVertex, usize> {
    let mut out = BTreeMap::new();
    for (&y, &d) in &r.dims {
        let mut s = Subspace::new(d);
        for (src, t) in r.arrow_keys() {
            if t == y {
                for c in r.map(src, t).column_vectors() {
                    s.insert(&c);
                }
            }
        }
        if d > s.rank() {
            out.insert(y, d - s.rank());
        }
    }
    out
}

pub fn socle_dims(r: &ExplicitRep) -> BTreeMap<RepVertex, usize> {
    let mut out = BTreeMap::new();
    for (&y, &d) in &r.dims {
        let outgoing: Vec<Matrix> = r.arrow_keys().filter(|&(s, _)| s == y).map(|(s, t)| r.map(s, t)).collect();
        let k = if outgoing.is_empty() { d } else { Matrix::vstack(&outgoing, d).nullspace().cols() };
        if k > 0 {
            out.insert(y, k);
        }
    }
    out
}

/// Restriction of `p` to the subspaces spanned by the columns of `basis`.
fn subrep(p: &ExplicitRep, basis: &BTreeMap<RepVertex, Matrix>) -> Result<ExplicitRep> {
    let mut out = ExplicitRep::default();
    for (&x, b) in basis {
        out.set_dim(x, b.cols());
    }
    for (s, t) in p.arrow_keys() {
        let (Some(bs), Some(bt)) = (basis.get(&s), basis.get(&t)) else { continue };
        if bs.cols() == 0 || bt.cols() == 0 {
            continue;
        }
        let c = bt.solve(&p.map(s, t).mul(bs)).ok_or_else(|| Error::Oracle("kernel is not a subrepresentation".into()))?;
        out.set_map(s, t, c);
    }
    Ok(out)
}

/// The syzygy: kernel of a generic projective cover, redrawn when the
/// random cover fails to be surjective.
pub fn syzygy<R: Rng + ?Sized>(pres: &RepetitivePresentation, r: &ExplicitRep, rng: &mut R, attempts: usize) -> Result<ExplicitRep> {
    let mut covers = Vec::new();
    for (y, k) in top_dims(r) {
        let p = explicit_projective(pres, y)?;
        covers.extend(std::iter::repeat_n(p, k));
    }
    let parts: Vec<&ExplicitRep> = covers.iter().map(|c| &c.rep).collect();
    let total = ExplicitRep::direct_sum(&parts);
    'attempt: for _ in 0..attempts {
        let gens: Vec<Matrix> = covers.iter().map(|c| random_matrix(rng, r.dim(first_vertex(c)), 1)).collect();
        let mut kernel = BTreeMap::new();
        let support: BTreeSet<RepVertex> = total.dims.keys().chain(r.dims.keys()).copied().collect();
        for z in support {
            let blocks: Vec<Matrix> = covers.iter().zip(&gens).map(|(c, v)| cover_block(c, r, v, z)).collect();
            let f = hcat(&blocks, r.dim(z));
            if f.rank() != r.dim(z) {
                continue 'attempt;
            }
            kernel.insert(z, f.nullspace());
        }
        return subrep(&total, &kernel);
    }
    Err(Error::CoverNotSurjective { attempts })
}

fn first_vertex(p: &ExplicitProjective) -> RepVertex {
    p.paths.iter().find(|(_, l)| l.iter().any(|path| path.len() == 1)).map(|(&x, _)| x).expect("top vertex")
}

fn hcat(blocks: &[Matrix], rows: usize) -> Matrix {
    let t: Vec<Matrix> = blocks.iter().map(Matrix::transpose).collect();
    Matrix::vstack(&t, rows).transpose()
}

/// The cosyzygy: cokernel of a generic injective envelope into projectives,
/// using that `P_{i[m]}` has socle `S_{i[m+1]}`.
pub fn cosyzygy<R: Rng + ?Sized>(pres: &RepetitivePresentation, r: &ExplicitRep, rng: &mut R, attempts: usize) -> Result<ExplicitRep> {
    let mut targets = Vec::new();
    for (y, k) in socle_dims(r) {
        let p = explicit_projective(pres, y.shifted(-1))?;
        let basis = hom_basis(r, &p.rep);
        for _ in 0..k {
            targets.push((p.rep.clone(), basis.clone()));
        }
    }
    let parts: Vec<&ExplicitRep> = targets.iter().map(|(p, _)| p).collect();
    let total = ExplicitRep::direct_sum(&parts);
    'attempt: for _ in 0..attempts {
        let chosen: Vec<RepMorphism> = targets.iter().map(|(p, basis)| random_combination(rng, r, p, basis)).collect();
        let mut images = BTreeMap::new();
        for (&z, &dz) in &r.dims {
            let blocks: Vec<Matrix> =
                chosen.iter().zip(&targets).map(|(f, (p, _))| f.get(&z).cloned().unwrap_or_else(|| Matrix::zeros(p.dim(z), dz))).collect();
            let f = Matrix::vstack(&blocks, dz);
            if f.rank() != dz {
                continue 'attempt;
            }
            images.insert(z, f);
        }
        return Ok(quotient(&total, &images));
    }
    Err(Error::EnvelopeNotInjective { attempts })
}

fn random_combination<R: Rng + ?Sized>(rng: &mut R, a: &ExplicitRep, b: &ExplicitRep, basis: &[RepMorphism]) -> RepMorphism {
    let mut out: RepMorphism = a.dims.iter().filter(|(x, _)| b.dim(**x) > 0).map(|(&x, &d)| (x, Matrix::zeros(b.dim(x), d))).collect();
    for f in basis {
        let c = q(rng.gen_range(-3..=3));
        for (x, m) in f {
            let acc = out.get_mut(x).expect("vertex of both");
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    acc[(i, j)] += &c * &m[(i, j)];
                }
            }
        }
    }
    out
}

/// `p` modulo the column spans in `images`.
fn quotient(p: &ExplicitRep, images: &BTreeMap<RepVertex, Matrix>) -> ExplicitRep {
    let mut spaces: BTreeMap<RepVertex, (Subspace, Vec<usize>)> = BTreeMap::new();
    for (&x, &d) in &p.dims {
        let mut s = Subspace::new(d);
        if let Some(m) = images.get(&x) {
            for c in m.column_vectors() {
                s.insert(&c);
            }
        }
        let free: Vec<usize> = (0..d).filter(|c| !s.pivots().contains(c)).collect();
        spaces.insert(x, (s, free));
    }
    let mut out = ExplicitRep::default();
    for (&x, (_, free)) in &spaces {
        out.set_dim(x, free.len());
    }
    for (s, t) in p.arrow_keys() {
        let (fs, (st, ft)) = (&spaces[&s].1, &spaces[&t]);
        let a = p.map(s, t);
        let mut m = Matrix::zeros(ft.len(), fs.len());
        for (j, &c) in fs.iter().enumerate() {
            let col: Vec<Q> = (0..a.rows()).map(|i| a[(i, c)].clone()).collect();
            let red = st.reduce(&col);
            for (i, &k) in ft.iter().enumerate() {
                m[(i, j)] = red[k].clone();
            }
        }
        out.set_map(s, t, m);
    }
    out
}

/// Explicit modules for window vertices reachable from embedded `kQ`
/// indecomposables by syzygies and cosyzygies inside `pres`, plus every
/// projective of the presentation. Each is matched to its vertex by
/// dimension vector.
pub fn explicit_window_modules<R: Rng + ?Sized>(
    w: &ARWindow,
    pres: &RepetitivePresentation,
    rng: &mut R,
) -> Result<BTreeMap<VertexId, ExplicitRep>> {
    let q = w.quiver();
    let (lo, hi) = (*pres.degrees.start(), *pres.degrees.end());
    let fits = |d: &DimVector| d.degree_range().is_some_and(|(a, b)| lo <= a && b <= hi);
    let mut found: BTreeMap<VertexId, ExplicitRep> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let kq = kq_indecomposables(q, rng)?;
    for m in lo..=hi {
        for x in &kq {
            let r = embed_kq_module(q, x, m);
            let id = w.stable_with_dim(&r.dim_vector())?;
            if found.insert(id, r).is_none() {
                queue.push_back(id);
            }
        }
    }
    while let Some(id) = queue.pop_front() {
        let r = found[&id].clone();
        let Some((a, b)) = r.dim_vector().degree_range() else { continue };
        let mut next = Vec::new();
        if b < hi {
            next.push(syzygy(pres, &r, rng, 16)?);
        }
        if a > lo {
            next.push(cosyzygy(pres, &r, rng, 16)?);
        }
        for s in next {
            let d = s.dim_vector();
            if !fits(&d) {
                continue;
            }
            let sid = w.stable_with_dim(&d)?;
            if let std::collections::btree_map::Entry::Vacant(e) = found.entry(sid) {
                e.insert(s);
                queue.push_back(sid);
            }
        }
    }
    for m in lo..hi {
        for i in 0..q.len() {
            let x = RepVertex::new(i, m);
            let slot = w.psi_of_projective(x)?;
            let id = w.at(slot).expect("projective vertex");
            found.insert(id, explicit_projective(pres, x)?.rep);
        }
    }
    Ok(found)
}

/// Result of comparing oracle Hom dimensions with the engine.
#[derive(Debug, Clone, Default)]
pub struct OracleReport {
    pub modules: usize,
    pub pairs_checked: usize,
    pub hom_mismatches: Vec<String>,
    pub omega_mismatches: Vec<String>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.hom_mismatches.is_empty() && self.omega_mismatches.is_empty()
    }
}

/// Compares `hom_dim` and `omega`/`omega_inv` with the explicit computation
/// on every module of [`explicit_window_modules`].
pub fn cross_check<R: Rng + ?Sized>(w: &ARWindow, pres: &RepetitivePresentation, rng: &mut R) -> Result<OracleReport> {
    let engine = HomEngine::new(w);
    let mods = explicit_window_modules(w, pres, rng)?;
    let mut report = OracleReport { modules: mods.len(), ..Default::default() };
    let q = w.quiver();
    let name = |id: VertexId| crate::module_class::module_label(w, id);
    for (&a, ra) in &mods {
        for (&b, rb) in &mods {
            let expected = engine.hom_dim(a, b)?;
            let got = hom_space(ra, rb) as i64;
            report.pairs_checked += 1;
            if expected != got {
                report.hom_mismatches.push(format!("Hom({}, {}): engine {expected}, oracle {got}", name(a), name(b)));
            }
        }
    }
    let (lo, hi) = (*pres.degrees.start(), *pres.degrees.end());
    for (&a, ra) in &mods {
        if w.vertex(a).is_projective() {
            continue;
        }
        let Some((da, db)) = ra.dim_vector().degree_range() else { continue };
        if db < hi {
            let s = syzygy(pres, ra, rng, 16)?.dim_vector();
            if let Ok(id) = engine.omega(a) {
                if w.vertex(id).dim != s {
                    report.omega_mismatches.push(format!("omega {}: engine {}, oracle {}", name(a), w.vertex(id).dim.display(q), s.display(q)));
                }
            }
        }
        if da > lo {
            let s = cosyzygy(pres, ra, rng, 16)?.dim_vector();
            if let Ok(id) = engine.omega_inv(a) {
                if w.vertex(id).dim != s {
                    report.omega_mismatches.push(format!("omega_inv {}: engine {}, oracle {}", name(a), w.vertex(id).dim.display(q), s.display(q)));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar_knit::{default_margin, window_for_degrees};
    use crate::quiver::{DynkinType, HeightFunction};
    use crate::repetitive::{build_repetitive_presentation, projective_dim_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn quivers() -> Vec<DynkinQuiver> {
        vec![
            DynkinQuiver::standard(DynkinType::A(2)),
            DynkinQuiver::standard(DynkinType::A(3)),
            DynkinQuiver::standard(DynkinType::D(4)),
        ]
    }

    #[test]
    fn a2_projective() {
        let q = DynkinQuiver::standard(DynkinType::A(2));
        let pres = build_repetitive_presentation(&q, -1..=2);
        let x = RepVertex::parse(&q, "1[0]").unwrap();
        let p = explicit_projective(&pres, x).unwrap().rep;
        assert_eq!(p.total_dim(), 3);
        assert_eq!(p.maps.len(), 2);
        for m in p.maps.values() {
            assert_eq!(*m, Matrix::from_i64(&[&[1]]));
        }
        p.check_relations(&pres).unwrap();
        let soc: Vec<_> = socle_dims(&p).into_iter().collect();
        assert_eq!(soc, vec![(x.shifted(1), 1)]);
        let top: Vec<_> = top_dims(&p).into_iter().collect();
        assert_eq!(top, vec![(x, 1)]);
        assert!(matches!(explicit_projective(&pres, x.shifted(2)), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn projectives_match_dimension_vectors() {
        for q in quivers() {
            let pres = build_repetitive_presentation(&q, -1..=2);
            for i in 0..q.len() {
                let x = RepVertex::new(i, 0);
                let p = explicit_projective(&pres, x).unwrap().rep;
                assert_eq!(p.dim_vector(), projective_dim_vector(&q, x));
                p.check_relations(&pres).unwrap();
                assert_eq!(hom_space(&p, &p), 1);
            }
        }
    }

    #[test]
    fn kq_indecomposables_are_bricks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in quivers() {
            let xs = kq_indecomposables(&q, &mut rng).unwrap();
            assert_eq!(xs.len(), q.positive_roots().len());
            let pres = build_repetitive_presentation(&q, 0..=0);
            for x in &xs {
                embed_kq_module(&q, x, 0).check_relations(&pres).unwrap();
            }
        }
    }

    #[test]
    fn syzygy_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = DynkinQuiver::standard(DynkinType::D(4));
        let pres = build_repetitive_presentation(&q, -1..=2);
        for x in kq_indecomposables(&q, &mut rng).unwrap() {
            let r = embed_kq_module(&q, &x, 0);
            let s = syzygy(&pres, &r, &mut rng, 16).unwrap();
            s.check_relations(&pres).unwrap();
            let back = cosyzygy(&pres, &s, &mut rng, 16).unwrap();
            back.check_relations(&pres).unwrap();
            assert_eq!(back.dim_vector(), r.dim_vector());
            assert_eq!(hom_space(&back, &back), 1);
        }
    }

    #[test]
    fn agrees_with_engine() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in quivers() {
            let xi = HeightFunction::canonical(&q);
            let w = window_for_degrees(&q, &xi, 0, -1, 2, default_margin(&q)).unwrap();
            let pres = build_repetitive_presentation(&q, -1..=2);
            let report = cross_check(&w, &pres, &mut rng).unwrap();
            assert!(report.ok(), "{:?}", report);
            assert!(report.pairs_checked >= 100, "{}", report.pairs_checked);
            let mods = explicit_window_modules(&w, &pres, &mut rng).unwrap();
            let inside = w
                .vertices()
                .iter()
                .filter(|v| v.dim.degree_range().is_some_and(|(a, b)| -1 <= a && b <= 2))
                .count();
            assert_eq!(mods.len(), inside);
        }
    }
}
