use proptest::prelude::*;

use repknit_core::ar_knit::{default_margin, window_options, ARWindow};
use repknit_core::config::load_quiver;
use repknit_core::gamma_hat::LevelRange;
use repknit_core::hom::HomEngine;
use repknit_core::module_class::ModuleClass;
use repknit_core::orbits::{module_to_pair, pair_to_module};
use repknit_core::qchar::{module_of_monomial, monomial_of_module, LaurentMonomial};

const A4: &str = r#"{"type": "A4", "vertices": ["1", "2", "3", "4"],
  "arrows": [["1", "2"], ["2", "3"], ["1", "4"]], "height": {"1": 3, "2": 2, "3": 1, "4": 2}}"#;

fn window() -> ARWindow {
    let (q, xi) = load_quiver(A4).unwrap();
    ARWindow::knit(&q, &xi, window_options(&q, &xi, 10, LevelRange::new(-12, 20), default_margin(&q))).unwrap()
}

fn class_strategy(n: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..n, 1i64..=2), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pair_and_module_are_inverse(picks in class_strategy(64)) {
        let w = window();
        let e = HomEngine::new(&w);
        let mid: Vec<_> = w.vertices().iter().filter(|v| (0..=8).contains(&v.slot.level)).map(|v| v.slot).collect();
        let c = ModuleClass::from_summands(picks.iter().map(|&(k, m)| (mid[k % mid.len()], m)));
        let pair = module_to_pair(&e, &c).unwrap();
        prop_assert_eq!(pair_to_module(&e, &pair).unwrap(), c.clone());

        let m = monomial_of_module(&e, &c).unwrap();
        prop_assert_eq!(module_of_monomial(&e, &m).unwrap(), c.without_projectives(&w).unwrap());
        let text = m.display(w.quiver()).to_string();
        prop_assert_eq!(LaurentMonomial::parse(w.quiver(), &text).unwrap(), m);
    }
}

#[test]
fn zero_module_has_trivial_pair_and_monomial() {
    let w = window();
    let e = HomEngine::new(&w);
    let zero = ModuleClass::from_summands([]);
    let pair = module_to_pair(&e, &zero).unwrap();
    assert!(pair.v.values().all(|&x| x == 0));
    assert!(monomial_of_module(&e, &zero).unwrap().is_one());
}
