//! Laurent monomials in the variables `Y_{i,n}`, the monomials `A_{i,n}`,
//! and the parametrization `N ↦ m_N` of module classes.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::gamma_hat::{Slot, SlotKind};
use crate::hom::HomEngine;
use crate::module_class::ModuleClass;
use crate::orbits::{degeneration_order, enumerate_modules, module_to_pair, w_of_dim, DominantPair};
use crate::quiver::DynkinQuiver;
use crate::repetitive::DimVector;

/// `Y_{i,n}` is keyed by the slot `(i,n)`. Zero exponents are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentMonomial {
    exponents: BTreeMap<Slot, i64>,
}

impl LaurentMonomial {
    pub fn one() -> Self {
        LaurentMonomial::default()
    }

    pub fn var(s: Slot) -> Self {
        LaurentMonomial::from_exponents([(s, 1)])
    }

    pub fn from_exponents<I: IntoIterator<Item = (Slot, i64)>>(items: I) -> Self {
        let mut m = LaurentMonomial::one();
        for (s, k) in items {
            m.mul_var(s, k);
        }
        m
    }

    pub fn mul_var(&mut self, s: Slot, k: i64) {
        let e = self.exponent(s) + k;
        if e == 0 {
            self.exponents.remove(&s);
        } else {
            self.exponents.insert(s, e);
        }
    }

    pub fn exponent(&self, s: Slot) -> i64 {
        self.exponents.get(&s).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Slot, i64)> + '_ {
        self.exponents.iter().map(|(&s, &k)| (s, k))
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.exponents.values().all(|&k| k >= 0)
    }

    /// Total degree.
    pub fn degree(&self) -> i64 {
        self.exponents.values().sum()
    }

    pub fn mul(&self, other: &LaurentMonomial) -> LaurentMonomial {
        let mut m = self.clone();
        for (s, k) in other.exponents() {
            m.mul_var(s, k);
        }
        m
    }

    pub fn pow(&self, k: i64) -> LaurentMonomial {
        LaurentMonomial::from_exponents(self.exponents().map(|(s, e)| (s, e * k)))
    }

    pub fn is_single_variable(&self) -> bool {
        self.exponents.len() == 1 && self.degree() == 1
    }

    pub fn display<'a>(&'a self, q: &'a DynkinQuiver) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, q }
    }

    fn var_name(q: &DynkinQuiver, s: Slot) -> String {
        format!("Y[{},{}]", q.name(s.column), s.level)
    }

    pub fn to_json(&self, q: &DynkinQuiver) -> serde_json::Value {
        let ex: serde_json::Map<String, serde_json::Value> =
            self.exponents().map(|(s, k)| (Self::var_name(q, s), json!(k))).collect();
        json!({ "exponents": ex })
    }

    /// Parses `1` or a space separated product like `Y[1,0] Y[2,1]^-1`.
    pub fn parse(q: &DynkinQuiver, text: &str) -> Result<LaurentMonomial> {
        let bad = |msg: String| Error::Parse { field: "monomial".into(), message: msg };
        let mut m = LaurentMonomial::one();
        let text = text.trim();
        if text == "1" {
            return Ok(m);
        }
        for factor in text.split_whitespace() {
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (v, e.parse::<i64>().map_err(|_| bad(format!("bad exponent in {factor}")))?),
                None => (factor, 1),
            };
            let inner = var
                .strip_prefix("Y[")
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| bad(format!("expected Y[i,n], got {var}")))?;
            let (name, level) = inner.split_once(',').ok_or_else(|| bad(format!("expected Y[i,n], got {var}")))?;
            let column = q.index_of(name.trim()).ok_or_else(|| bad(format!("unknown vertex {name}")))?;
            let level = level.trim().parse::<i64>().map_err(|_| bad(format!("bad level in {var}")))?;
            m.mul_var(Slot::new(column, level), exp);
        }
        Ok(m)
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a LaurentMonomial,
    q: &'a DynkinQuiver,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        for (k, (s, e)) in self.m.exponents().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", LaurentMonomial::var_name(self.q, s))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `A_{i,n} = Y_{i,n−1} Y_{i,n+1} Π_{j∼i} Y_{j,n}^{-1}`.
pub fn a_monomial(q: &DynkinQuiver, s: Slot) -> LaurentMonomial {
    let mut m = LaurentMonomial::one();
    m.mul_var(Slot::new(s.column, s.level - 1), 1);
    m.mul_var(Slot::new(s.column, s.level + 1), 1);
    for &j in q.neighbors(s.column) {
        m.mul_var(Slot::new(j, s.level), -1);
    }
    m
}

/// `Y^W Π A_{i,n}^{-V(i,n)}`.
pub fn pair_to_monomial(q: &DynkinQuiver, p: &DominantPair) -> LaurentMonomial {
    let mut m = LaurentMonomial::from_exponents(p.w.iter().map(|(&s, &k)| (s, k)));
    for (&s, &k) in &p.v {
        m = m.mul(&a_monomial(q, s).pow(-k));
    }
    m
}

/// `m_N`: the exponent of `Y_{i,n}` is the multiplicity in `N` of
/// `Ω⁻¹τ` of the stable vertex at `(i,n+1)`, which sits at `(i,n−1)`.
pub fn monomial_of_module(e: &HomEngine<'_>, n: &ModuleClass) -> Result<LaurentMonomial> {
    let w = e.window();
    let xi = w.height();
    let m = pair_to_monomial(w.quiver(), &module_to_pair(e, n)?);
    for (s, k) in m.exponents() {
        if s.kind(xi) != SlotKind::Projective || k < 0 {
            return Err(Error::Inconsistent(format!("m_N has exponent {k} at {}", w.slot_label(s))));
        }
    }
    Ok(m)
}

/// The projective-free class with monomial `m`.
pub fn module_of_monomial(e: &HomEngine<'_>, m: &LaurentMonomial) -> Result<ModuleClass> {
    let w = e.window();
    let xi = w.height();
    let mut n = ModuleClass::zero();
    for (s, k) in m.exponents() {
        if s.kind(xi) != SlotKind::Projective {
            return Err(Error::UnknownVertex { module: "qchar", what: format!("Y at stable slot {}", w.slot_label(s)) });
        }
        if k < 0 {
            return Err(Error::MonomialNotDominant { slot: w.slot_label(s), exponent: k });
        }
        let below = Slot::new(s.column, s.level - 1);
        let base = w.at(below).ok_or_else(|| Error::WindowTooSmall {
            module: "qchar",
            detail: format!("no vertex at {}", w.slot_label(below)),
        })?;
        n.add(w.vertex(e.omega_inv(base)?).slot, k);
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionCandidate {
    pub monomial: LaurentMonomial,
    pub class: ModuleClass,
    /// `V″` with `m = m′ A^{V″}`.
    pub v_shift: BTreeMap<Slot, i64>,
    /// `N` lies in the orbit closure of `N′` by the Hom criterion.
    pub in_closure: bool,
}

/// The dominant monomials `m = m′ A^{V″}`, `V″ ≥ 0`, among the classes of
/// dimension vector `d`, each with its class `N` and whether `N` lies in
/// the orbit closure of `N′`. `N′` is the class of `d` with monomial `m′`;
/// without `d` it is the projective-free class of `m′`.
pub fn composition_candidates(e: &HomEngine<'_>, m_prime: &LaurentMonomial, d: Option<&DimVector>) -> Result<Vec<CompositionCandidate>> {
    let w = e.window();
    let q = w.quiver();
    let base = module_of_monomial(e, m_prime)?;
    let d = match d {
        Some(d) => d.clone(),
        None => base.dim(w)?,
    };
    let classes = enumerate_modules(e, &d)?;
    let pairs: Vec<DominantPair> = classes.iter().map(|c| module_to_pair(e, c)).collect::<Result<_>>()?;
    let monomials: Vec<LaurentMonomial> = pairs.iter().map(|p| pair_to_monomial(q, p)).collect();
    let me = monomials.iter().position(|m| m == m_prime).ok_or_else(|| {
        Error::Inconsistent(format!("no class of dimension {} has monomial {}", d.display(q), m_prime.display(q)))
    })?;
    let poset = degeneration_order(e, &classes)?;
    let w_d = w_of_dim(w, &d)?;
    let mut out = Vec::new();
    for (k, p) in pairs.iter().enumerate() {
        debug_assert_eq!(p.w, w_d);
        let mut shift = BTreeMap::new();
        for s in pairs[me].v.keys().chain(p.v.keys()) {
            let x = pairs[me].v_at(*s) - p.v_at(*s);
            if x != 0 {
                shift.insert(*s, x);
            }
        }
        if shift.values().any(|&x| x < 0) {
            continue;
        }
        out.push(CompositionCandidate {
            monomial: monomials[k].clone(),
            class: classes[k].clone(),
            v_shift: shift,
            in_closure: poset.le[me][k],
        });
    }
    out.sort_by(|a, b| a.v_shift.values().sum::<i64>().cmp(&b.v_shift.values().sum::<i64>()).then_with(|| a.monomial.cmp(&b.monomial)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar_knit::{default_margin, window_options, ARWindow};
    use crate::gamma_hat::LevelRange;
    use crate::quiver::{DynkinType, HeightFunction};
    use crate::repetitive::RepVertex;

    fn a2() -> DynkinQuiver {
        DynkinQuiver::standard(DynkinType::A(2))
    }

    #[test]
    fn a_monomials() {
        let q = a2();
        let a = a_monomial(&q, Slot::new(0, 1));
        assert_eq!(a.display(&q).to_string(), "Y[1,0] Y[1,2] Y[2,1]^-1");
        let q4 = DynkinQuiver::new(DynkinType::A(4), &["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("1", "4")]).unwrap();
        let a = a_monomial(&q4, Slot::new(0, 5));
        assert_eq!(a.exponents().filter(|&(_, k)| k < 0).count(), 2);
        for i in 0..4 {
            assert_eq!(a_monomial(&q4, Slot::new(i, 3)).degree(), 2 - q4.neighbors(i).len() as i64);
        }
    }

    #[test]
    fn parse_roundtrip_and_json() {
        let q = a2();
        let m = LaurentMonomial::parse(&q, "Y[2,1]^-1 Y[1,0]  Y[1,2]").unwrap();
        assert_eq!(m, a_monomial(&q, Slot::new(0, 1)));
        assert_eq!(LaurentMonomial::parse(&q, &m.display(&q).to_string()).unwrap(), m);
        assert_eq!(m.to_json(&q)["exponents"]["Y[2,1]"], -1);
        assert!(LaurentMonomial::parse(&q, "1").unwrap().is_one());
        assert!(LaurentMonomial::parse(&q, "Y[7,1]").is_err());
    }

    #[test]
    fn v_zero_gives_y_w() {
        let q = a2();
        let p = DominantPair::new(BTreeMap::new(), [(Slot::new(0, 0), 2), (Slot::new(1, 3), 1)].into());
        let m = pair_to_monomial(&q, &p);
        assert_eq!(m, LaurentMonomial::from_exponents([(Slot::new(0, 0), 2), (Slot::new(1, 3), 1)]));
    }

    fn a4_window() -> (DynkinQuiver, HeightFunction) {
        let q = DynkinQuiver::new(DynkinType::A(4), &["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("1", "4")]).unwrap();
        (q, HeightFunction(vec![3, 2, 1, 2]))
    }

    #[test]
    fn parametrization_on_a4() {
        let (q, xi) = a4_window();
        let w = ARWindow::knit(&q, &xi, window_options(&q, &xi, 10, LevelRange::new(0, 8), default_margin(&q))).unwrap();
        let e = HomEngine::new(&w);
        let d = DimVector::from_entries(["4[0]", "1[1]", "4[1]"].iter().map(|s| (RepVertex::parse(&q, s).unwrap(), 1)));
        let classes = enumerate_modules(&e, &d).unwrap();
        for c in &classes {
            let m = monomial_of_module(&e, c).unwrap();
            let p = module_to_pair(&e, c).unwrap();
            for (s, k) in m.exponents() {
                assert_eq!(k, p.defect(&q, s));
            }
            let free = c.without_projectives(&w).unwrap();
            assert_eq!(module_of_monomial(&e, &m).unwrap(), free);
            assert_eq!(monomial_of_module(&e, &free).unwrap(), m);
        }
        let generic = classes.iter().find(|c| c.summand_count() == 1).unwrap();
        assert!(monomial_of_module(&e, generic).unwrap().is_one());
        let cands = composition_candidates(&e, &LaurentMonomial::one(), Some(&d)).unwrap();
        assert_eq!(cands.len(), 4);
        assert!(cands.iter().all(|c| c.in_closure && c.monomial.is_dominant()));
        assert!(cands[0].v_shift.is_empty());
        let semisimple = classes.iter().find(|c| c.summand_count() == 3).unwrap();
        let ms = monomial_of_module(&e, semisimple).unwrap();
        let only = composition_candidates(&e, &ms, None).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!(&only[0].class, semisimple);
    }

    #[test]
    fn indecomposables_are_single_variables() {
        let (q, xi) = a4_window();
        let w = ARWindow::knit(&q, &xi, window_options(&q, &xi, 10, LevelRange::new(0, 8), default_margin(&q))).unwrap();
        let e = HomEngine::new(&w);
        for v in w.vertices() {
            if v.slot.level < 0 || v.slot.level > 8 {
                continue;
            }
            let m = monomial_of_module(&e, &ModuleClass::single(v.slot)).unwrap();
            assert_eq!(m.is_single_variable(), !v.is_projective(), "{}", w.label(v.id));
            assert!(m.is_one() == v.is_projective());
        }
        let bad = LaurentMonomial::from_exponents([(Slot::new(0, 4), -1)]);
        assert!(matches!(module_of_monomial(&e, &bad), Err(Error::MonomialNotDominant { .. })));
    }
}
