//! Finite sets `Σ` of projective-parity slots: the convex hull `Γ̂_Σ`, the
//! graded dimensions of `e_Σ Λ_Σ e_Σ`, its arrows and low-degree relations.
//!
//! Paths of `Γ̂` drop one level per arrow, so the paths `x -> y` all have
//! length `level(x) − level(y)` and each pair of slots carries one degree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ar_knit::{degree_period, ARKind, ARWindow};
use crate::error::{Error, Result};
use crate::gamma_hat::{arrow_between, arrows_from, mesh_relation, twist_sign, GammaArrow, MeshRelation, Slot, SlotKind};
use crate::linalg::{primitive_integer_vector, q, Matrix, Subspace, Q};
use crate::quiver::{DynkinQuiver, HeightFunction};
use crate::repetitive::{projective_dim_vector, RepVertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSet(BTreeSet<Slot>);

impl SigmaSet {
    pub fn new<I: IntoIterator<Item = Slot>>(q: &DynkinQuiver, xi: &HeightFunction, slots: I) -> Result<Self> {
        let set: BTreeSet<Slot> = slots.into_iter().collect();
        for s in &set {
            if s.column >= q.len() {
                return Err(Error::UnknownVertex { module: "projectivization", what: format!("column {}", s.column) });
            }
            if s.kind(xi) != SlotKind::Projective {
                return Err(Error::WSupportNotProjective { slot: s.display(q).to_string() });
            }
        }
        Ok(SigmaSet(set))
    }

    pub fn slots(&self) -> &BTreeSet<Slot> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// From the top level down, left to right.
    pub fn ordered(&self) -> Vec<Slot> {
        let mut v: Vec<Slot> = self.0.iter().copied().collect();
        v.sort_by(|a, b| b.level.cmp(&a.level).then(a.column.cmp(&b.column)));
        v
    }
}

/// Full subquiver of `Γ̂` on the slots lying on a path between two slots of `Σ`.
#[derive(Debug, Clone)]
pub struct Hull {
    pub slots: BTreeSet<Slot>,
    pub arrows: Vec<GammaArrow>,
    /// Relations with both ends in the hull; paths between hull slots stay
    /// in the hull, so these generate `R ∩ CΓ̂_Σ`.
    pub relations: Vec<MeshRelation>,
}

fn predecessors(q: &DynkinQuiver, xi: &HeightFunction, s: Slot) -> Vec<Slot> {
    let mut cands = vec![Slot::new(s.column, s.level + 1)];
    cands.extend(q.neighbors(s.column).iter().map(|&j| Slot::new(j, s.level + 1)));
    cands.into_iter().filter(|&p| arrow_between(q, xi, p, s).is_some()).collect()
}

pub fn convex_hull(q: &DynkinQuiver, xi: &HeightFunction, sigma: &SigmaSet) -> Hull {
    hull_inner(q, xi, sigma, false)
}

/// The hull with every projective-parity slot outside `Σ` removed, as in
/// `Λ / ⟨e_w : w ∉ Σ⟩`; relation terms through removed slots vanish.
pub fn reduced_hull(q: &DynkinQuiver, xi: &HeightFunction, sigma: &SigmaSet) -> Hull {
    hull_inner(q, xi, sigma, true)
}

fn hull_inner(q: &DynkinQuiver, xi: &HeightFunction, sigma: &SigmaSet, reduced: bool) -> Hull {
    let Some(lo) = sigma.slots().iter().map(|s| s.level).min() else {
        return Hull { slots: BTreeSet::new(), arrows: Vec::new(), relations: Vec::new() };
    };
    let hi = sigma.slots().iter().map(|s| s.level).max().unwrap_or(lo);
    let mut below: BTreeSet<Slot> = sigma.slots().clone();
    let mut stack: Vec<Slot> = below.iter().copied().collect();
    while let Some(s) = stack.pop() {
        for a in arrows_from(q, xi, s) {
            if a.target.level >= lo && below.insert(a.target) {
                stack.push(a.target);
            }
        }
    }
    let mut above: BTreeSet<Slot> = sigma.slots().clone();
    let mut stack: Vec<Slot> = above.iter().copied().collect();
    while let Some(s) = stack.pop() {
        for p in predecessors(q, xi, s) {
            if p.level <= hi && above.insert(p) {
                stack.push(p);
            }
        }
    }
    let slots: BTreeSet<Slot> = below
        .intersection(&above)
        .copied()
        .filter(|s| !reduced || s.kind(xi) == SlotKind::Stable || sigma.slots().contains(s))
        .collect();
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    for &s in &slots {
        arrows.extend(arrows_from(q, xi, s).into_iter().filter(|a| slots.contains(&a.target)));
        if s.kind(xi) == SlotKind::Stable && slots.contains(&Slot::new(s.column, s.level - 2)) {
            let mut r = mesh_relation(q, s);
            if reduced {
                r.terms.retain(|(_, p)| slots.contains(&p[1]));
            }
            debug_assert!(r.terms.iter().all(|(_, p)| p.iter().all(|v| slots.contains(v))));
            relations.push(r);
        }
    }
    Hull { slots, arrows, relations }
}

/// `e_x Λ_Σ` as a representation of the hull: a space at each slot below
/// `x`, one matrix per arrow, and for each basis vector a path `x -> z`
/// whose class it is.
#[derive(Debug, Clone)]
struct RowRep {
    spaces: BTreeMap<Slot, Vec<Vec<Slot>>>,
    maps: HashMap<(Slot, Slot), Matrix>,
}

impl RowRep {
    fn dim(&self, z: Slot) -> usize {
        self.spaces.get(&z).map_or(0, Vec::len)
    }

    fn unit(&self, z: Slot, k: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim(z)];
        v[k] = q(1);
        v
    }

    /// Right multiplication by the path `p`, starting at `p[0]`.
    fn along(&self, v: &[Q], p: &[Slot]) -> Vec<Q> {
        let mut v = v.to_vec();
        for e in p.windows(2) {
            let Some(m) = self.maps.get(&(e[0], e[1])) else { return Vec::new() };
            v = apply(m, &v);
        }
        v
    }
}

fn apply(m: &Matrix, v: &[Q]) -> Vec<Q> {
    (0..m.rows()).map(|r| m.row(r).iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b)).collect()
}

/// `Λ_Σ = CΓ̂_Σ / R_Σ`, optionally with every relation term multiplied by the
/// sign twist of its two arrows.
pub struct LambdaSigma<'a> {
    q: &'a DynkinQuiver,
    xi: &'a HeightFunction,
    hull: Hull,
    twisted: bool,
    /// Rows are built this many levels below their source, all levels if `None`.
    depth: Option<i64>,
    rows: std::cell::RefCell<BTreeMap<Slot, std::rc::Rc<RowRep>>>,
}

impl<'a> LambdaSigma<'a> {
    pub fn new(q: &'a DynkinQuiver, xi: &'a HeightFunction, sigma: &SigmaSet, twisted: bool) -> Self {
        LambdaSigma { q, xi, hull: convex_hull(q, xi, sigma), twisted, depth: None, rows: Default::default() }
    }

    /// Over [`reduced_hull`].
    pub fn reduced(q: &'a DynkinQuiver, xi: &'a HeightFunction, sigma: &SigmaSet, twisted: bool) -> Self {
        LambdaSigma { q, xi, hull: reduced_hull(q, xi, sigma), twisted, depth: None, rows: Default::default() }
    }

    pub fn hull(&self) -> &Hull {
        &self.hull
    }

    pub fn with_depth(mut self, depth: i64) -> Self {
        self.depth = Some(depth);
        self.rows.borrow_mut().clear();
        self
    }

    fn sign(&self, p: &[Slot; 3]) -> i64 {
        if !self.twisted {
            return 1;
        }
        p.windows(2)
            .map(|e| twist_sign(arrow_between(self.q, self.xi, e[0], e[1]).expect("relation arrow"), e[0], e[1]))
            .product()
    }

    /// Builds `e_x Λ_Σ` level by level: the space at `z` is the sum of the
    /// spaces one level up, one copy per arrow into `z`, modulo the
    /// relations ending at `z`.
    fn row(&self, x: Slot) -> std::rc::Rc<RowRep> {
        if let Some(r) = self.rows.borrow().get(&x) {
            return r.clone();
        }
        let mut rep = RowRep { spaces: BTreeMap::new(), maps: HashMap::new() };
        if self.hull.slots.contains(&x) {
            rep.spaces.insert(x, vec![vec![x]]);
            let relations: HashMap<Slot, &MeshRelation> =
                self.hull.relations.iter().map(|r| (Slot::new(r.at.column, r.at.level - 2), r)).collect();
            let mut incoming: BTreeMap<Slot, Vec<Slot>> = BTreeMap::new();
            for a in &self.hull.arrows {
                incoming.entry(a.target).or_default().push(a.source);
            }
            let floor = self.depth.map_or(i64::MIN, |d| x.level - d);
            let mut below: Vec<Slot> = self.hull.slots.iter().copied().filter(|z| z.level < x.level && z.level >= floor).collect();
            below.sort_by(|a, b| b.level.cmp(&a.level).then(a.column.cmp(&b.column)));
            for z in below {
                let sources: Vec<(Slot, usize)> = incoming
                    .get(&z)
                    .map(|v| v.iter().map(|&s| (s, rep.dim(s))).filter(|&(_, d)| d > 0).collect())
                    .unwrap_or_default();
                let width: usize = sources.iter().map(|&(_, d)| d).sum();
                if width == 0 {
                    continue;
                }
                let mut offset = HashMap::new();
                let mut o = 0;
                for &(s, d) in &sources {
                    offset.insert(s, o);
                    o += d;
                }
                let mut rels = Subspace::new(width);
                if let Some(r) = relations.get(&z) {
                    for k in 0..rep.dim(r.at) {
                        let u = rep.unit(r.at, k);
                        let mut vec = vec![Q::zero(); width];
                        for (c, term) in &r.terms {
                            let mid = term[1];
                            let Some(&off) = offset.get(&mid) else { continue };
                            let image = rep.along(&u, &term[..2]);
                            let c = q(c * self.sign(term));
                            for (j, y) in image.iter().enumerate() {
                                vec[off + j] += &c * y;
                            }
                        }
                        rels.insert(&vec);
                    }
                }
                let free: Vec<usize> = (0..width).filter(|c| !rels.pivots().contains(c)).collect();
                if free.is_empty() {
                    continue;
                }
                let mut basis = Vec::with_capacity(free.len());
                for &f in &free {
                    let (s, _) = sources.iter().copied().find(|&(s, d)| offset[&s] <= f && f < offset[&s] + d).expect("column owner");
                    let mut path = rep.spaces[&s][f - offset[&s]].clone();
                    path.push(z);
                    basis.push(path);
                }
                for &(s, d) in &sources {
                    let mut m = Matrix::zeros(free.len(), d);
                    for k in 0..d {
                        let mut e = vec![Q::zero(); width];
                        e[offset[&s] + k] = q(1);
                        let r = rels.reduce(&e);
                        for (row, &f) in free.iter().enumerate() {
                            m[(row, k)] = r[f].clone();
                        }
                    }
                    rep.maps.insert((s, z), m);
                }
                rep.spaces.insert(z, basis);
            }
        }
        let r = std::rc::Rc::new(rep);
        self.rows.borrow_mut().insert(x, r.clone());
        r
    }

    /// `dim e_x Λ_Σ e_y`, spanned by paths `x -> y`.
    pub fn dim(&self, x: Slot, y: Slot) -> usize {
        if let Some(d) = self.depth {
            assert!(x.level - y.level <= d, "pair beyond the row depth");
        }
        self.row(x).dim(y)
    }

    /// Product of `a ∈ e_x Λ e_y` and `b ∈ e_y Λ e_t`, in the basis of `e_x Λ e_t`.
    fn mul(&self, x: Slot, y: Slot, t: Slot, a: &[Q], b: &[Q]) -> Vec<Q> {
        let rx = self.row(x);
        let ry = self.row(y);
        let mut out = vec![Q::zero(); rx.dim(t)];
        for (k, c) in b.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = rx.along(a, &ry.spaces[&t][k]);
            for (o, v) in out.iter_mut().zip(img) {
                *o += c * v;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasisTable {
    /// `(x, y) -> degree -> dim e_x Λ_Σ e_y` in that degree, nonzero entries only.
    pub entries: BTreeMap<(Slot, Slot), BTreeMap<usize, usize>>,
}

impl GradedBasisTable {
    pub fn total(&self, x: Slot, y: Slot) -> usize {
        self.entries.get(&(x, y)).map_or(0, |m| m.values().sum())
    }

    pub fn total_dim(&self) -> usize {
        self.entries.values().flat_map(|m| m.values()).sum()
    }

    pub fn degree_total(&self, degree: usize) -> usize {
        self.entries.values().filter_map(|m| m.get(&degree)).sum()
    }

    pub fn to_tsv(&self, q: &DynkinQuiver) -> String {
        let mut out = String::from("from\tto\tdegree\tdim\n");
        for ((x, y), m) in &self.entries {
            for (d, k) in m {
                let _ = writeln!(out, "{}\t{}\t{d}\t{k}", x.display(q), y.display(q));
            }
        }
        out
    }
}

/// Default path-length cap: the number of hull vertices.
pub fn default_cap(q: &DynkinQuiver, xi: &HeightFunction, sigma: &SigmaSet) -> usize {
    convex_hull(q, xi, sigma).slots.len()
}

pub fn graded_basis_dims(q: &DynkinQuiver, xi: &HeightFunction, sigma: &SigmaSet, cap: Option<usize>) -> Result<GradedBasisTable> {
    let lambda = LambdaSigma::new(q, xi, sigma, false);
    table_of(&lambda, q, sigma, cap.unwrap_or(lambda.hull.slots.len()))
}

fn table_of(lambda: &LambdaSigma<'_>, q: &DynkinQuiver, sigma: &SigmaSet, cap: usize) -> Result<GradedBasisTable> {
    let mut entries = BTreeMap::new();
    for &x in sigma.slots() {
        for &y in sigma.slots() {
            if x.level < y.level {
                continue;
            }
            let degree = (x.level - y.level) as usize;
            let dim = lambda.dim(x, y);
            if dim == 0 {
                continue;
            }
            if degree > cap {
                return Err(Error::CapExceeded { cap, from: x.display(q).to_string(), to: y.display(q).to_string() });
            }
            entries.insert((x, y), BTreeMap::from([(degree, dim)]));
        }
    }
    Ok(GradedBasisTable { entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationArrow {
    pub from: Slot,
    pub to: Slot,
    /// A path of `Γ̂_Σ` representing the arrow.
    pub path: Vec<Slot>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationRelation {
    /// Primitive integer combination of arrow paths, first coefficient positive.
    pub terms: Vec<(BigInt, Vec<usize>)>,
}

/// Arrows (a basis of `rad / rad²` lifted to paths) and relation-space
/// dimensions per path length in the arrows.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub vertices: Vec<Slot>,
    pub arrows: Vec<PresentationArrow>,
    pub relation_dims: BTreeMap<usize, usize>,
    pub quadratic_relations: Vec<PresentationRelation>,
}

impl Presentation {
    pub fn arrow_count(&self, from: Slot, to: Slot) -> usize {
        self.arrows.iter().filter(|a| a.from == from && a.to == to).count()
    }

    fn vertex_number(&self, s: Slot) -> usize {
        self.vertices.iter().position(|&v| v == s).expect("presentation vertex") + 1
    }

    pub fn arrow_name(&self, k: usize) -> String {
        let a = &self.arrows[k];
        let parallel: Vec<usize> = (0..self.arrows.len()).filter(|&j| self.arrows[j].from == a.from && self.arrows[j].to == a.to).collect();
        let base = format!("{}>{}", self.vertex_number(a.from), self.vertex_number(a.to));
        if parallel.len() > 1 {
            format!("{base}#{}", parallel.iter().position(|&j| j == k).unwrap_or(0) + 1)
        } else {
            base
        }
    }

    /// A composite of arrows as its vertex numbers, e.g. `1>3>6`.
    pub fn word(&self, arrows: &[usize]) -> String {
        let mut s = self.vertex_number(self.arrows[arrows[0]].from).to_string();
        for &k in arrows {
            let _ = write!(s, ">{}", self.vertex_number(self.arrows[k].to));
        }
        s
    }

    pub fn relation_string(&self, r: &PresentationRelation) -> String {
        let mut out = String::new();
        for (k, (c, w)) in r.terms.iter().enumerate() {
            let sign = if c < &BigInt::zero() { "-" } else if k > 0 { "+" } else { "" };
            let mag = if c < &BigInt::zero() { -c.clone() } else { c.clone() };
            let sep = if k > 0 { " " } else { "" };
            let coeff = if mag == BigInt::from(1) { String::new() } else { format!("{mag}*") };
            let _ = write!(out, "{sep}{sign}{}{coeff}[{}]", if k > 0 { " " } else { "" }, self.word(w));
        }
        out
    }

    pub fn to_text(&self, q: &DynkinQuiver) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vertices\t{}", self.vertices.len());
        for (k, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  {}\t{}", k + 1, v.display(q));
        }
        let _ = writeln!(out, "arrows\t{}", self.arrows.len());
        for k in 0..self.arrows.len() {
            let _ = writeln!(out, "  {}\tlength {}", self.arrow_name(k), self.arrows[k].path.len() - 1);
        }
        for (d, k) in &self.relation_dims {
            let _ = writeln!(out, "relations in degree {d}\t{k}");
        }
        for r in &self.quadratic_relations {
            let _ = writeln!(out, "  {}", self.relation_string(r));
        }
        out
    }
}

pub fn presentation(q: &DynkinQuiver, xi: &HeightFunction, sigma: &SigmaSet) -> Presentation {
    let lambda = LambdaSigma::new(q, xi, sigma, false);
    let vertices = sigma.ordered();
    let mut arrows = Vec::new();
    let mut elements: Vec<Vec<Q>> = Vec::new();
    for &x in &vertices {
        let rx = lambda.row(x);
        for &y in &vertices {
            if x.level <= y.level || rx.dim(y) == 0 {
                continue;
            }
            // rad² at y: everything factoring through a slot of Σ strictly between
            let mut rad2 = Subspace::new(rx.dim(y));
            for &z in &vertices {
                if z == x || z.level <= y.level || rx.dim(z) == 0 {
                    continue;
                }
                let rz = lambda.row(z);
                for k in 0..rz.dim(y) {
                    for j in 0..rx.dim(z) {
                        rad2.insert(&lambda.mul(x, z, y, &rx.unit(z, j), &rz.unit(y, k)));
                    }
                }
            }
            for k in 0..rx.dim(y) {
                let e = rx.unit(y, k);
                if rad2.insert(&e) {
                    arrows.push(PresentationArrow { from: x, to: y, path: rx.spaces[&y][k].clone() });
                    elements.push(e);
                }
            }
        }
    }
    let mut pres = Presentation { vertices, arrows, relation_dims: BTreeMap::new(), quadratic_relations: Vec::new() };
    // words of `length` arrows with their values in Λ
    let mut words: Vec<(Vec<usize>, Vec<Q>)> = elements.into_iter().enumerate().map(|(k, e)| (vec![k], e)).collect();
    let mut length = 1;
    loop {
        let mut next = Vec::new();
        for (w, val) in &words {
            let from = pres.arrows[w[0]].from;
            let mid = pres.arrows[*w.last().expect("nonempty")].to;
            for k in 0..pres.arrows.len() {
                let a = &pres.arrows[k];
                if a.from != mid {
                    continue;
                }
                let rm = lambda.row(mid);
                let b = rm.unit(a.to, rm.spaces[&a.to].iter().position(|p| *p == a.path).expect("arrow basis path"));
                let mut n = w.clone();
                n.push(k);
                next.push((n, lambda.mul(from, mid, a.to, val, &b)));
            }
        }
        words = next;
        length += 1;
        if words.is_empty() {
            break;
        }
        let mut groups: BTreeMap<(Slot, Slot), Vec<usize>> = BTreeMap::new();
        for (k, (w, _)) in words.iter().enumerate() {
            groups.entry((pres.arrows[w[0]].from, pres.arrows[*w.last().expect("nonempty")].to)).or_default().push(k);
        }
        let mut total = 0;
        for ((x, y), ks) in groups {
            let dim = lambda.dim(x, y);
            let m = Matrix::from_rows(ks.iter().map(|&k| words[k].1.clone()).collect(), dim).transpose();
            let kernel = m.nullspace();
            total += kernel.cols();
            if length == 2 {
                for v in kernel.column_vectors() {
                    let ints = primitive_integer_vector(&v);
                    let terms = ints.into_iter().zip(&ks).filter(|(c, _)| !c.is_zero()).map(|(c, &k)| (c, words[k].0.clone())).collect();
                    pres.quadratic_relations.push(PresentationRelation { terms });
                }
            }
        }
        pres.relation_dims.insert(length, total);
    }
    pres
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<String>,
}

impl IsoReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn window_projectives(w: &ARWindow) -> Vec<(RepVertex, Slot)> {
    w.vertices()
        .iter()
        .filter_map(|v| match v.kind {
            ARKind::Projective(x) => Some((x, v.slot)),
            ARKind::Stable => None,
        })
        .collect()
}

fn compare_with_a_hat(w: &ARWindow, reduced: bool, twisted: bool, depth: i64, report: &mut IsoReport) -> Result<()> {
    let q = w.quiver();
    let xi = w.height();
    let projectives = window_projectives(w);
    let sigma = SigmaSet::new(q, xi, projectives.iter().map(|&(_, s)| s))?;
    let lambda = if reduced { LambdaSigma::reduced(q, xi, &sigma, twisted) } else { LambdaSigma::new(q, xi, &sigma, twisted) };
    let lambda = lambda.with_depth(depth);
    for &(a, x) in &projectives {
        let pa = projective_dim_vector(q, a);
        for &(b, y) in &projectives {
            if x.level - y.level > depth {
                continue;
            }
            let got = lambda.dim(x, y) as i64;
            let want = pa.get(b);
            report.pairs_checked += 1;
            if got != want {
                report.mismatches.push(format!(
                    "{}e_{} Λ e_{}: {got} vs P_{} at {}: {want}",
                    if twisted { "twisted " } else { "" },
                    x.display(q),
                    y.display(q),
                    a.label(q),
                    b.label(q)
                ));
            }
        }
    }
    Ok(())
}

/// With `Σ = ψ(proj)`, compares `dim e_{ψP_a} Λ e_{ψP_b}` against the
/// multiplicity of `b` in `P_a` (paths of `A` and dual paths of `DA`), for
/// the relations as given and after the sign twist. Pairs more than two
/// degree periods apart, where `Â` vanishes, are skipped.
///
/// Only some projective-parity slots carry projectives. `Λ` is taken over
/// the [`reduced_hull`], so frozen slots outside `Σ` play no part; see
/// [`literal_discrepancies`] for what they add.
pub fn verify_repetitive_iso(w: &ARWindow) -> Result<IsoReport> {
    let mut report = IsoReport { pairs_checked: 0, mismatches: Vec::new() };
    let depth = 2 * degree_period(w.quiver());
    for twisted in [false, true] {
        compare_with_a_hat(w, true, twisted, depth, &mut report)?;
    }
    Ok(report)
}

/// The same comparison over the literal hull, which keeps the frozen slots
/// outside `Σ`, for pairs at most `depth` levels apart. Outside type `A_2`
/// these dimensions grow exponentially with `depth`.
pub fn literal_discrepancies(w: &ARWindow, depth: i64) -> Result<IsoReport> {
    let mut report = IsoReport { pairs_checked: 0, mismatches: Vec::new() };
    compare_with_a_hat(w, false, false, depth, &mut report)?;
    Ok(report)
}
