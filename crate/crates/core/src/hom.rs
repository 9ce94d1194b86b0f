//! Hom dimensions in `mod Â` from the mesh recursion, and the split
//! Grothendieck group basis `{r_M}`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::ar_knit::{ARWindow, VertexId};
use crate::error::{Error, Result};
use crate::gamma_hat::Slot;
use crate::module_class::ModuleClass;
use crate::repetitive::{projective_dim_vector, DimVector, RepVertex};

/// Finite integer combination of classes `[M]` of window indecomposables.
pub type RSplitElement = BTreeMap<VertexId, i64>;

pub fn add_to(x: &mut RSplitElement, id: VertexId, k: i64) {
    let v = x.get(&id).copied().unwrap_or(0) + k;
    if v == 0 {
        x.remove(&id);
    } else {
        x.insert(id, v);
    }
}

/// Hom tables over a knitted window. Rows `hom(M, −)` and columns
/// `hom(−, Y)` are computed on demand and cached; the engine is `Sync`.
pub struct HomEngine<'a> {
    w: &'a ARWindow,
    rows: Vec<OnceLock<Result<Vec<i64>>>>,
    cols: Vec<OnceLock<Result<Vec<i64>>>>,
}

impl<'a> HomEngine<'a> {
    pub fn new(w: &'a ARWindow) -> Self {
        let n = w.vertices().len();
        HomEngine {
            w,
            rows: (0..n).map(|_| OnceLock::new()).collect(),
            cols: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn window(&self) -> &'a ARWindow {
        self.w
    }

    fn too_small(&self, detail: String) -> Error {
        Error::WindowTooSmall { module: "hom_engine", detail }
    }

    fn lookup(&self, s: Slot) -> Option<VertexId> {
        self.w.at(s)
    }

    /// `hom(M, −)` for every window vertex. Values are exact wherever they
    /// are defined: the recursion only looks at levels between `M` and its
    /// argument, and `Hom(M, N) = 0` below the level of `M`.
    pub fn row(&self, m: VertexId) -> Result<&[i64]> {
        match self.rows[m].get_or_init(|| self.compute_row(m)) {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    /// `hom(−, Y)` for every window vertex.
    pub fn column(&self, y: VertexId) -> Result<&[i64]> {
        match self.cols[y].get_or_init(|| self.compute_column(y)) {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    fn compute_row(&self, m: VertexId) -> Result<Vec<i64>> {
        let w = self.w;
        let n = w.vertices().len();
        let mut f = vec![0i64; n];
        let get = |f: &[i64], s: Slot| self.lookup(s).map_or(0, |id| f[id]);
        // vertices are stored by ascending level
        for id in m..n {
            let v = w.vertex(id);
            let Slot { column: i, level } = v.slot;
            let delta = i64::from(id == m);
            let value = if v.is_projective() {
                get(&f, Slot::new(i, level - 1)) + delta
            } else {
                let mut sum = get(&f, Slot::new(i, level - 1));
                for &j in w.quiver().neighbors(i) {
                    sum += get(&f, Slot::new(j, level - 1));
                }
                sum - get(&f, Slot::new(i, level - 2)) + delta
            };
            if value < 0 {
                return Err(Error::Inconsistent(format!(
                    "hom recursion from {} is negative at {}",
                    w.label(m),
                    w.label(id)
                )));
            }
            f[id] = value;
        }
        Ok(f)
    }

    fn compute_column(&self, y: VertexId) -> Result<Vec<i64>> {
        let w = self.w;
        let n = w.vertices().len();
        let mut g = vec![0i64; n];
        let get = |g: &[i64], s: Slot| self.lookup(s).map_or(0, |id| g[id]);
        for id in (0..=y).rev() {
            let v = w.vertex(id);
            let Slot { column: i, level } = v.slot;
            let delta = i64::from(id == y);
            let value = if v.is_projective() {
                get(&g, Slot::new(i, level + 1)) + delta
            } else {
                let mut sum = get(&g, Slot::new(i, level + 1));
                for &j in w.quiver().neighbors(i) {
                    sum += get(&g, Slot::new(j, level + 1));
                }
                sum - get(&g, Slot::new(i, level + 2)) + delta
            };
            if value < 0 {
                return Err(Error::Inconsistent(format!(
                    "hom recursion into {} is negative at {}",
                    w.label(y),
                    w.label(id)
                )));
            }
            g[id] = value;
        }
        Ok(g)
    }

    /// The row of `M`, certified to vanish on the top margin so that its
    /// support lies inside the window.
    pub fn certified_row(&self, m: VertexId) -> Result<&[i64]> {
        let w = self.w;
        let f = self.row(m)?;
        let top = w.range().max - w.margin();
        if let Some(v) = w.vertices().iter().find(|v| v.slot.level > top && f[v.id] != 0) {
            return Err(self.too_small(format!("hom({}, -) reaches {} inside the top margin", w.label(m), w.label(v.id))));
        }
        Ok(f)
    }

    /// The column of `Y`, certified to vanish on the bottom margin.
    pub fn certified_column(&self, y: VertexId) -> Result<&[i64]> {
        let w = self.w;
        let g = self.column(y)?;
        let bottom = w.range().min + w.margin();
        if let Some(v) = w.vertices().iter().find(|v| v.slot.level < bottom && g[v.id] != 0) {
            return Err(self.too_small(format!("hom(-, {}) reaches {} inside the bottom margin", w.label(y), w.label(v.id))));
        }
        Ok(g)
    }

    /// `dim Hom(M, N)`.
    pub fn hom_dim(&self, m: VertexId, n: VertexId) -> Result<i64> {
        Ok(self.row(m)?[n])
    }

    pub fn hom_module(&self, m: &ModuleClass, n: &ModuleClass) -> Result<i64> {
        let ms = m.vertices(self.w)?;
        let ns = n.vertices(self.w)?;
        let mut total = 0i64;
        for &(a, ka) in &ms {
            for &(b, kb) in &ns {
                let h = self.hom_dim(a, b)?;
                total = ka
                    .checked_mul(kb)
                    .and_then(|k| k.checked_mul(h))
                    .and_then(|k| total.checked_add(k))
                    .ok_or(Error::Overflow("hom_module"))?;
            }
        }
        Ok(total)
    }

    /// `h(x, y) = Σ x_L y_M dim Hom(L, M)`.
    pub fn h(&self, x: &RSplitElement, y: &RSplitElement) -> Result<i64> {
        let mut total = 0i64;
        for (&a, &ka) in x {
            for (&b, &kb) in y {
                total += ka * kb * self.hom_dim(a, b)?;
            }
        }
        Ok(total)
    }

    pub fn simple(&self, x: RepVertex) -> Result<VertexId> {
        self.w.simple(x)
    }

    /// Multiplicities of the simples in the top of `L`: `dim Hom(L, S_x)`.
    pub fn top(&self, l: VertexId) -> Result<DimVector> {
        let mut t = DimVector::zero();
        for x in self.w.vertex(l).dim.support() {
            t.add_at(x, self.hom_dim(l, self.simple(x)?)?);
        }
        Ok(t)
    }

    /// Multiplicities of the simples in the socle of `L`: `dim Hom(S_x, L)`.
    pub fn socle(&self, l: VertexId) -> Result<DimVector> {
        let mut s = DimVector::zero();
        for x in self.w.vertex(l).dim.support() {
            s.add_at(x, self.hom_dim(self.simple(x)?, l)?);
        }
        Ok(s)
    }

    fn require_stable(&self, v: VertexId, op: &str) -> Result<()> {
        if self.w.vertex(v).is_projective() {
            return Err(Error::UnknownVertex { module: "ar_knit", what: format!("{op} of projective {}", self.w.label(v)) });
        }
        Ok(())
    }

    /// Dimension vector of the projective cover of a module with top `top`.
    pub fn cover_dim(&self, top: &DimVector) -> DimVector {
        let q = self.w.quiver();
        top.entries().fold(DimVector::zero(), |acc, (x, k)| acc.plus(&projective_dim_vector(q, x).scaled(k)))
    }

    /// Dimension vector of the injective envelope of a module with socle `soc`;
    /// the envelope of `S_{i[m+1]}` is `P_{i[m]}`.
    pub fn envelope_dim(&self, soc: &DimVector) -> DimVector {
        let q = self.w.quiver();
        soc.entries().fold(DimVector::zero(), |acc, (x, k)| acc.plus(&projective_dim_vector(q, x.shifted(-1)).scaled(k)))
    }

    /// The syzygy `ΩL`: kernel of the projective cover.
    pub fn omega(&self, l: VertexId) -> Result<VertexId> {
        self.require_stable(l, "omega")?;
        let d = self.cover_dim(&self.top(l)?).minus(&self.w.vertex(l).dim);
        self.w.stable_with_dim(&d)
    }

    /// The cosyzygy `Ω⁻¹L`: cokernel of the injective envelope.
    pub fn omega_inv(&self, l: VertexId) -> Result<VertexId> {
        self.require_stable(l, "omega_inv")?;
        let d = self.envelope_dim(&self.socle(l)?).minus(&self.w.vertex(l).dim);
        self.w.stable_with_dim(&d)
    }

    /// `r_M = [M] − [E_M] + [τM]` for stable `M`, `[P] − [rad P]` for projective `P`.
    pub fn r_element(&self, m: VertexId) -> Result<RSplitElement> {
        let w = self.w;
        let v = w.vertex(m);
        let Slot { column: i, level } = v.slot;
        let missing = |s: Slot| self.too_small(format!("r-element of {} needs {}", w.label(m), w.slot_label(s)));
        let mut r = RSplitElement::new();
        add_to(&mut r, m, 1);
        if v.is_projective() {
            let s = Slot::new(i, level - 1);
            let rad = self.lookup(s).ok_or_else(|| missing(s))?;
            add_to(&mut r, rad, -1);
            return Ok(r);
        }
        let tau_slot = Slot::new(i, level - 2);
        let tau = self.lookup(tau_slot).ok_or_else(|| missing(tau_slot))?;
        add_to(&mut r, tau, 1);
        if let Some(p) = self.lookup(Slot::new(i, level - 1)) {
            add_to(&mut r, p, -1);
        }
        for &j in w.quiver().neighbors(i) {
            let s = Slot::new(j, level - 1);
            add_to(&mut r, self.lookup(s).ok_or_else(|| missing(s))?, -1);
        }
        Ok(r)
    }

    /// `dim proj(M, N)`: morphisms `M -> N` factoring through a projective.
    /// For stable `M` this is `Σ_x top(Ω⁻¹M)_x d_x − hom(Ω⁻¹M, N)`.
    pub fn proj_dim(&self, m: VertexId, n: &ModuleClass) -> Result<i64> {
        let w = self.w;
        if w.vertex(m).is_projective() {
            return self.hom_module(&ModuleClass::single(w.vertex(m).slot), n);
        }
        let shifted = self.omega_inv(m)?;
        self.lambda(shifted, n)
    }

    /// `h([L], −[N] + Σ_x d_x [S_x]) = Σ_x d_x hom(L, S_x) − hom(L, N)`.
    fn lambda(&self, l: VertexId, n: &ModuleClass) -> Result<i64> {
        let d = n.dim(self.w)?;
        let top = self.top(l)?;
        let through_cover: i64 = top.entries().map(|(x, k)| k * d.get(x)).sum();
        Ok(through_cover - self.hom_module(&ModuleClass::single(self.w.vertex(l).slot), n)?)
    }

    /// Coefficients `λ_L` with `−[N] + Σ_x d_x [S_x] = Σ λ_L r_L`; only
    /// stable `L` can carry a nonzero coefficient. Keys are the stable
    /// vertices where `λ` is nonzero.
    pub fn expand_in_r_basis(&self, n: &ModuleClass) -> Result<BTreeMap<VertexId, i64>> {
        let w = self.w;
        let d = n.dim(w)?;
        let mut targets: Vec<(VertexId, i64)> = n.vertices(w)?.into_iter().map(|(id, k)| (id, -k)).collect();
        for (x, k) in d.entries() {
            targets.push((self.simple(x)?, k));
        }
        let mut out = BTreeMap::new();
        for l in w.stable_ids() {
            let mut lam = 0i64;
            for &(t, k) in &targets {
                lam += k * self.hom_dim(l, t)?;
            }
            if lam != 0 {
                out.insert(l, lam);
            }
        }
        self.certify_interior(&out, "r-expansion")?;
        Ok(out)
    }

    /// Coefficients can only sit at or below the summands and simples used,
    /// all of which are in the window, so only the bottom margin needs checking.
    fn certify_interior(&self, coeffs: &BTreeMap<VertexId, i64>, what: &str) -> Result<()> {
        let bottom = self.w.range().min + self.w.margin();
        match coeffs.keys().find(|&&l| self.w.vertex(l).slot.level < bottom) {
            Some(&l) => Err(self.too_small(format!("{what} reaches {} inside the margin", self.w.label(l)))),
            None => Ok(()),
        }
    }

    /// Same coefficients as [`Self::expand_in_r_basis`], read off the
    /// columns of the summands of `N` and of the simples.
    pub fn expand_in_r_basis_local(&self, n: &ModuleClass) -> Result<BTreeMap<VertexId, i64>> {
        let w = self.w;
        let d = n.dim(w)?;
        let mut cols: Vec<(&[i64], i64)> = Vec::new();
        for (id, k) in n.vertices(w)? {
            cols.push((self.column(id)?, -k));
        }
        for (x, k) in d.entries() {
            cols.push((self.column(self.simple(x)?)?, k));
        }
        let mut out = BTreeMap::new();
        for l in w.stable_ids() {
            let lam: i64 = cols.iter().map(|(c, k)| k * c[l]).sum();
            if lam != 0 {
                out.insert(l, lam);
            }
        }
        self.certify_interior(&out, "r-expansion")?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar_knit::{default_margin, window_options};
    use crate::gamma_hat::LevelRange;
    use crate::quiver::{DynkinQuiver, DynkinType, HeightFunction};

    fn window(q: &DynkinQuiver, extra: i64) -> ARWindow {
        let xi = HeightFunction::canonical(q);
        ARWindow::knit(q, &xi, window_options(q, &xi, 0, LevelRange::new(-extra, extra), default_margin(q))).unwrap()
    }

    fn a4() -> DynkinQuiver {
        DynkinQuiver::new(DynkinType::A(4), &["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("1", "4")]).unwrap()
    }

    fn interior(w: &ARWindow) -> Vec<VertexId> {
        w.vertices().iter().filter(|v| w.is_interior(v.slot)).map(|v| v.id).collect()
    }

    #[test]
    fn rows_and_columns_agree() {
        for q in [DynkinQuiver::standard(DynkinType::A(2)), a4(), DynkinQuiver::standard(DynkinType::D(4))] {
            let w = window(&q, 2 * q.coxeter_number());
            let e = HomEngine::new(&w);
            let ids = interior(&w);
            assert!(!ids.is_empty());
            for &m in &ids {
                let row = e.row(m).unwrap();
                for &n in &ids {
                    assert_eq!(row[n], e.column(n).unwrap()[m], "{} {}", w.label(m), w.label(n));
                }
            }
        }
    }

    #[test]
    fn endomorphisms_and_projective_sources() {
        let q = a4();
        let w = window(&q, 20);
        let e = HomEngine::new(&w);
        let ids = interior(&w);
        for &m in &ids {
            assert_eq!(e.hom_dim(m, m).unwrap(), 1);
        }
        for id in w.projective_ids().filter(|id| ids.contains(id)) {
            let x = match w.vertex(id).kind {
                crate::ar_knit::ARKind::Projective(x) => x,
                _ => unreachable!(),
            };
            for &n in &ids {
                assert_eq!(e.hom_dim(id, n).unwrap(), w.vertex(n).dim.get(x));
            }
        }
    }

    #[test]
    fn omega_of_simple_is_radical() {
        let q = a4();
        let w = window(&q, 20);
        let e = HomEngine::new(&w);
        for (&x, &p) in w.projectives() {
            if !w.is_interior(w.vertex(p).slot) {
                continue;
            }
            let s = e.simple(x).unwrap();
            let om = e.omega(s).unwrap();
            assert_eq!(w.vertex(om).dim, projective_dim_vector(&q, x).minus(&DimVector::unit(x)));
        }
    }

    #[test]
    fn omega_roundtrip() {
        for q in [DynkinQuiver::standard(DynkinType::A(3)), DynkinQuiver::standard(DynkinType::D(4))] {
            let w = window(&q, 3 * q.coxeter_number());
            let e = HomEngine::new(&w);
            let mut checked = 0;
            for id in w.stable_ids().filter(|&id| w.is_interior(w.vertex(id).slot)) {
                let (Ok(o), Ok(oi)) = (e.omega(id), e.omega_inv(id)) else { continue };
                assert_eq!(e.omega_inv(o).unwrap(), id);
                assert_eq!(e.omega(oi).unwrap(), id);
                checked += 1;
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn pairing_with_r_elements_is_identity() {
        let q = a4();
        let w = window(&q, 20);
        let e = HomEngine::new(&w);
        let ids = interior(&w);
        for &m in &ids {
            let r = e.r_element(m).unwrap();
            for &l in &ids {
                let x = RSplitElement::from([(l, 1)]);
                assert_eq!(e.h(&x, &r).unwrap(), i64::from(l == m), "{} {}", w.label(l), w.label(m));
            }
        }
    }

    #[test]
    fn semisimple_has_zero_expansion() {
        let q = a4();
        let w = window(&q, 20);
        let e = HomEngine::new(&w);
        let n = ModuleClass::from_summands(
            ["1[0]", "2[0]", "4[1]"].iter().map(|s| (w.vertex(e.simple(RepVertex::parse(&q, s).unwrap()).unwrap()).slot, 1)),
        );
        assert!(e.expand_in_r_basis(&n).unwrap().is_empty());
        for m in w.stable_ids().filter(|&id| w.is_interior(w.vertex(id).slot)) {
            if let Ok(v) = e.proj_dim(m, &n) {
                assert_eq!(v, 0);
            }
        }
    }

    #[test]
    fn expansions_agree() {
        let q = DynkinQuiver::standard(DynkinType::A(3));
        let w = window(&q, 16);
        let e = HomEngine::new(&w);
        for id in w.vertices().iter().filter(|v| v.slot.level.abs() <= 8).map(|v| v.id) {
            let n = ModuleClass::single(w.vertex(id).slot);
            let full = e.expand_in_r_basis(&n).unwrap();
            assert_eq!(full, e.expand_in_r_basis_local(&n).unwrap());
            assert!(full.values().all(|&k| k > 0));
        }
    }

    #[test]
    fn margins_are_certified() {
        let q = DynkinQuiver::standard(DynkinType::A(2));
        let w = window(&q, 6);
        let e = HomEngine::new(&w);
        let top = w.vertices().iter().rev().find(|v| !v.is_projective()).unwrap().id;
        assert!(matches!(e.certified_row(top), Err(Error::WindowTooSmall { .. })));
        let bottom = w.stable_ids().next().unwrap();
        assert!(matches!(e.certified_column(bottom), Err(Error::WindowTooSmall { .. })));
        assert_eq!(e.hom_dim(top, bottom).unwrap(), 0);
        let low = w.stable_ids().find(|&id| w.vertex(id).dim.total() > 1).unwrap();
        assert!(matches!(e.expand_in_r_basis(&ModuleClass::single(w.vertex(low).slot)), Err(Error::WindowTooSmall { .. })));
    }
}
