//! Randomized invariants over small products of basic factors.

use std::sync::OnceLock;

use gradiv::catalog::{division_property, small_products, tensor_of};
use gradiv::dsl::{format_expr, parse_expr};
use gradiv::equivalence::equivalent;
use gradiv::normalize::{apply_rule, expand, normalize, RuleId};
use gradiv::{Factor, IdentityKind, Presentation, QuatUnit, UnitMonomial};
use proptest::prelude::*;

fn corpus() -> &'static [Vec<Factor>] {
    static C: OnceLock<Vec<Vec<Factor>>> = OnceLock::new();
    C.get_or_init(|| small_products(3, 32))
}

fn product() -> impl Strategy<Value = Vec<Factor>> {
    (0..corpus().len()).prop_map(|i| corpus()[i].clone())
}

/// A unit monomial from (degree index, scalar, identity unit).
fn monomial(p: &Presentation, (g, c, u): (usize, u32, usize)) -> UnitMonomial {
    let elems: Vec<_> = p.group().elements().collect();
    let deg = p.monomial_of_degree(&elems[g % elems.len()]);
    let unit = match p.kind() {
        IdentityKind::OneDim => p.identity_monomial(),
        IdentityKind::CentralJ | IdentityKind::NoncentralJ => {
            if u % 2 == 0 { p.identity_monomial() } else { p.j_unit().unwrap() }
        }
        IdentityKind::Quaternion => match u % 4 {
            0 => p.identity_monomial(),
            1 => p.quat_unit(QuatUnit::I).unwrap(),
            2 => p.quat_unit(QuatUnit::J).unwrap(),
            _ => p.quat_unit(QuatUnit::K).unwrap(),
        },
    };
    p.mul(&p.scalar(c % p.root_order()), &p.mul(&unit, &deg))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn text_round_trips(f in product()) {
        let text = format_expr(&f);
        prop_assert_eq!(parse_expr(&text).unwrap(), f);
    }

    #[test]
    fn normal_form_ignores_factor_order(f in product().prop_flat_map(|f| Just(f).prop_shuffle()), i in 0..corpus().len()) {
        let base = &corpus()[i];
        let mut shuffled = base.clone();
        shuffled.reverse();
        prop_assert_eq!(normalize(base).unwrap(), normalize(&shuffled).unwrap());
        let mut sorted = f.clone();
        gradiv::normalize::sort_factors(&mut sorted);
        prop_assert_eq!(normalize(&f).unwrap(), normalize(&sorted).unwrap());
    }

    #[test]
    fn expansion_is_a_section(f in product()) {
        let cf = normalize(&f).unwrap();
        let back = expand(&cf);
        prop_assert_eq!(normalize(&back).unwrap(), cf.clone());
        prop_assert_eq!(tensor_of(&back).unwrap().dimension(), tensor_of(&f).unwrap().dimension());
    }

    #[test]
    fn multiplication_is_associative(f in product(), a in any::<(usize, u32, usize)>(), b in any::<(usize, u32, usize)>(), c in any::<(usize, u32, usize)>()) {
        let p = tensor_of(&f).unwrap();
        let (x, y, z) = (monomial(&p, a), monomial(&p, b), monomial(&p, c));
        prop_assert!(p.is_valid_monomial(&x));
        prop_assert_eq!(p.mul(&p.mul(&x, &y), &z), p.mul(&x, &p.mul(&y, &z)));
        prop_assert_eq!(p.degree(&p.mul(&x, &y)), p.group().add(&p.degree(&x), &p.degree(&y)));
    }

    #[test]
    fn products_are_division_gradings(f in product()) {
        prop_assert!(division_property(&tensor_of(&f).unwrap()));
    }

    #[test]
    fn rule_applications_preserve_the_class(f in product()) {
        let cf = normalize(&f).unwrap();
        let dim = tensor_of(&f).unwrap().dimension();
        for rule in RuleId::all() {
            if let Some(app) = apply_rule(&f, rule).unwrap() {
                prop_assert_eq!(tensor_of(&app.factors).unwrap().dimension(), dim);
                prop_assert_eq!(normalize(&app.factors).unwrap(), cf.clone(), "{}", rule.name());
            }
        }
    }

    #[test]
    fn verdicts_are_reflexive_and_symmetric(f in product(), g in product()) {
        prop_assert!(equivalent(&f, &f).unwrap().is_equivalent());
        let fg = equivalent(&f, &g).unwrap();
        let gf = equivalent(&g, &f).unwrap();
        prop_assert_eq!(fg.exit_code(), gf.exit_code());
        prop_assert_eq!(fg.is_equivalent(), normalize(&f).unwrap() == normalize(&g).unwrap());
    }
}
