//! Round-trip tests for the span ↔ profunctor correspondence at all three
//! dimensions.

use double_kernel::finset::{FinFn, FinSet};
use double_kernel::fixtures::*;
use double_kernel::model::modulation::{check_modulation, identity_modulation};
use double_kernel::model::transform::{check_transformation, identity_transformation};
use double_kernel::model::check_lax;
use double_kernel::unitalize::*;

#[test]
fn functor_roundtrips_on_fixture_models() {
    let mut models = vec![closure_monad_poset2(), identity_monad(&poset2())];
    for (_, c) in category_corpus() {
        models.push(span_model_from_category(&c));
    }
    for n in [1, 2, 4] {
        models.push(zmod_monoid_model(n));
    }
    models.push(group_pseudomonoid_model(0, 0, 0));
    for m in &models {
        let r = roundtrip_report(m);
        assert!(r.passed(), "{} model: {r}", m.theory.name);
    }
}

#[test]
fn unitalized_unit_theory_model_is_the_category_itself() {
    let c = poset2();
    let m = span_model_from_category(&c);
    let h = unitalize_functor(&m).unwrap();
    assert_eq!(h.ob["x"], c);
    assert!(h.unitary);
    assert!(check_lax(&h).passed());
}

#[test]
fn discrete_model_unitalizes_to_discrete_category() {
    let d = double_kernel::catprof::discrete_category(&FinSet::new(3));
    let m = span_model_from_category(&d);
    let h = unitalize_functor(&m).unwrap();
    assert_eq!(h.ob["x"], d);
    // the counit recovers the underlying set
    let back = counit_functor(&h).unwrap();
    assert_eq!(back.ob["x"], FinSet::new(3));
}

#[test]
fn transformation_roundtrips() {
    // identity transformation on the closure monad
    let m = closure_monad_poset2();
    let t = identity_transformation(&m).unwrap();
    let up = unitalize_transformation(&t).unwrap();
    let r = check_transformation(&up);
    assert!(r.passed(), "unitalized identity map: {r}");
    let down = whisker_transformation(&up).unwrap();
    assert_eq!(down, t);

    // a non-identity functor between unit-theory models
    let c = poset2();
    let mc = span_model_from_category(&c);
    let u = double_kernel::catprof::CatFn {
        src: c.clone(),
        tgt: c.clone(),
        ob_map: FinFn::make(FinSet::new(2), FinSet::new(2), vec![1, 1]).unwrap(),
        hom_map: FinFn::make(FinSet::new(3), FinSet::new(3), vec![1, 1, 1]).unwrap(),
    };
    let t = transformation_from_functor(&mc, &mc, &u);
    let up = unitalize_transformation(&t).unwrap();
    assert!(check_transformation(&up).passed());
    assert_eq!(whisker_transformation(&up).unwrap(), t);

    // the cartesian mod-2 reduction
    let t = mod2_reduction_map();
    let up = unitalize_transformation(&t).unwrap();
    let r = check_transformation(&up);
    assert!(r.passed(), "unitalized mod2 map: {r}");
    assert!(up.cartesian);
    assert_eq!(whisker_transformation(&up).unwrap(), t);
}

#[test]
fn unitalize_preserves_composition_of_maps() {
    let c = poset2();
    let mc = span_model_from_category(&c);
    let u = double_kernel::catprof::CatFn {
        src: c.clone(),
        tgt: c.clone(),
        ob_map: FinFn::make(FinSet::new(2), FinSet::new(2), vec![1, 1]).unwrap(),
        hom_map: FinFn::make(FinSet::new(3), FinSet::new(3), vec![1, 1, 1]).unwrap(),
    };
    let t = transformation_from_functor(&mc, &mc, &u);
    let tt = double_kernel::model::transform::compose_transformations(&t, &t).unwrap();
    let lhs = unitalize_transformation(&tt).unwrap();
    let rhs = double_kernel::model::transform::compose_transformations(
        &unitalize_transformation(&t).unwrap(),
        &unitalize_transformation(&t).unwrap(),
    )
    .unwrap();
    assert_eq!(lhs.obj_comp, rhs.obj_comp);
    assert_eq!(lhs.pro_comp, rhs.pro_comp);
    assert_eq!(lhs.nat_comp, rhs.nat_comp);
}

#[test]
fn modulation_roundtrips() {
    // identity modulation on the identity map of the closure monad
    let m = closure_monad_poset2();
    let t = identity_transformation(&m).unwrap();
    let mu = identity_modulation(&t).unwrap();
    let up = unitalize_modulation(&mu).unwrap();
    let r = check_modulation(&up);
    assert!(r.passed(), "unitalized identity modulation: {r}");
    let down = whisker_modulation(&up).unwrap();
    assert_eq!(down, mu);

    // a non-trivial natural transformation on ℤ/2
    let c = cyclic_monoid(2);
    let mc = span_model_from_category(&c);
    let t = identity_transformation(&mc).unwrap();
    let mu = modulation_from_components(
        &t,
        &t,
        FinFn::make(FinSet::new(1), FinSet::new(2), vec![1]).unwrap(),
    );
    assert!(check_modulation(&mu).passed());
    let up = unitalize_modulation(&mu).unwrap();
    assert!(check_modulation(&up).passed());
    assert_eq!(whisker_modulation(&up).unwrap(), mu);
}
