//! Integration tests for the model, map and modulation checkers on the
//! fixture corpus.

use double_kernel::fixtures::*;
use double_kernel::model::modulation::{
    check_modulation, check_modulation_products, identity_modulation,
};
use double_kernel::model::transform::{check_transformation, identity_transformation};
use double_kernel::model::{check_cartesian, check_lax};
use double_kernel::finset::FinFn;
use double_kernel::finset::FinSet;

#[test]
fn unit_theory_models_recognize_categories() {
    for (name, c) in category_corpus() {
        let m = span_model_from_category(&c);
        let r = check_lax(&m);
        assert!(r.passed(), "{name}: {r}");
        // extraction round-trips
        assert_eq!(category_from_span_model(&m), c, "{name}");
    }
}

#[test]
fn broken_category_fails_check_lax() {
    let mut c = cyclic_monoid(3);
    let idx = double_kernel::span::hcomp_index(&c.hom, &c.hom, 1, 2).unwrap();
    let mut map = c.comp.map.clone();
    map[idx] = 1;
    c.comp = FinFn::make(c.comp.dom.clone(), c.comp.cod.clone(), map).unwrap();
    let m = span_model_from_category(&c);
    let r = check_lax(&m);
    assert!(!r.passed());
    assert!(r.entries.iter().any(|e| e.law == "lax/laxator-assoc"));
}

#[test]
fn closure_monad_passes() {
    let m = closure_monad_poset2();
    let r = check_lax(&m);
    assert!(r.passed(), "{r}");
}

#[test]
fn identity_monad_passes() {
    let m = identity_monad(&poset2());
    assert!(check_lax(&m).passed());
    let m = identity_monad(&cyclic_monoid(2));
    assert!(check_lax(&m).passed());
}

#[test]
fn perturbed_monad_fails_with_one_entry_each() {
    // three single-law perturbations, each producing exactly one entry
    let base = closure_monad_poset2();
    let three = FinSet::new(3);
    // (1) break the unit cell at one element
    let mut m1 = base.clone();
    let mut eta = m1.cells["eta"].clone();
    eta.mid = FinFn::make(three.clone(), three.clone(), vec![0, 1, 2]).unwrap();
    m1.cells.insert("eta".into(), eta);
    let r1 = check_lax(&m1);
    assert_eq!(r1.entries.len(), 1, "{r1}");
    // (2) break the multiplication cell at one element
    let mut m2 = base.clone();
    let mut mu = m2.cells["mu"].clone();
    mu.mid = FinFn::make(three.clone(), three.clone(), vec![1, 1, 0]).unwrap();
    m2.cells.insert("mu".into(), mu);
    let r2 = check_lax(&m2);
    assert_eq!(r2.entries.len(), 1, "{r2}");
    // (3) break the endofunctor's hom action at one element
    let mut m3 = base.clone();
    let mut act = m3.arr_act["t"].clone();
    act.mid = FinFn::make(three.clone(), three.clone(), vec![1, 1, 0]).unwrap();
    m3.arr_act.insert("t".into(), act);
    let r3 = check_lax(&m3);
    assert_eq!(r3.entries.len(), 1, "{r3}");
}

#[test]
fn monoid_models_pass_lax_and_cartesian() {
    for n in [1, 2, 3, 4] {
        let m = zmod_monoid_model(n);
        let r = check_lax(&m);
        assert!(r.passed(), "zmod{n}: {r}");
        let r = check_cartesian(&m);
        assert!(r.passed(), "zmod{n} cartesian: {r}");
    }
}

#[test]
fn wrong_size_product_word_fails_cartesian() {
    let mut m = zmod_monoid_model(2);
    let x2 = double_kernel::theory::ObNf(vec!["x".into(), "x".into()]);
    let w = double_kernel::theory::Word::empty(x2);
    // send x² to a wrong-size identity span
    let bad = double_kernel::span::id_pro(&FinSet::new(3));
    m.words.insert(w, bad.clone());
    let r = check_cartesian(&m);
    assert!(!r.passed());
    assert!(r.entries.iter().any(|e| e.law == "cartesian/Phi"));
}

#[test]
fn identity_transformations_pass() {
    let m = span_model_from_category(&poset2());
    let t = identity_transformation(&m).unwrap();
    let r = check_transformation(&t);
    assert!(r.passed(), "{r}");
    let m = closure_monad_poset2();
    let t = identity_transformation(&m).unwrap();
    let r = check_transformation(&t);
    assert!(r.passed(), "{r}");
    let m = zmod_monoid_model(2);
    let mut t = identity_transformation(&m).unwrap();
    t.cartesian = true;
    let r = check_transformation(&t);
    assert!(r.passed(), "{r}");
}

#[test]
fn functors_are_unit_theory_maps() {
    // a monotone map as a functor poset2 → poset2
    let c = poset2();
    let m = span_model_from_category(&c);
    let u = double_kernel::catprof::CatFn {
        src: c.clone(),
        tgt: c.clone(),
        ob_map: FinFn::make(FinSet::new(2), FinSet::new(2), vec![1, 1]).unwrap(),
        hom_map: FinFn::make(FinSet::new(3), FinSet::new(3), vec![1, 1, 1]).unwrap(),
    };
    assert!(u.validate().passed());
    let t = transformation_from_functor(&m, &m, &u);
    let r = check_transformation(&t);
    assert!(r.passed(), "{r}");
}

#[test]
fn mod2_reduction_passes_cartesian_map_checks() {
    let t = mod2_reduction_map();
    let r = check_transformation(&t);
    assert!(r.passed(), "{r}");
}

#[test]
fn perturbed_mod2_reduction_fails() {
    let mut t = mod2_reduction_map();
    t.obj_comp.insert(
        "x".into(),
        FinFn::make(FinSet::new(4), FinSet::new(2), vec![0, 1, 0, 0]).unwrap(),
    );
    let r = check_transformation(&t);
    assert!(!r.passed());
}

#[test]
fn identity_modulations_pass() {
    let m = span_model_from_category(&poset2());
    let t = identity_transformation(&m).unwrap();
    let mu = identity_modulation(&t).unwrap();
    let r = check_modulation(&mu);
    assert!(r.passed(), "{r}");

    let m = zmod_monoid_model(2);
    let mut t = identity_transformation(&m).unwrap();
    t.cartesian = true;
    let mu = identity_modulation(&t).unwrap();
    let r = check_modulation(&mu);
    assert!(r.passed(), "{r}");
    let r = check_modulation_products(&mu);
    assert!(r.passed(), "{r}");
}

#[test]
fn natural_transformations_are_unit_theory_modulations() {
    // on ℤ/2: two natural transformations id ⇒ id given by the two elements
    let c = cyclic_monoid(2);
    let m = span_model_from_category(&c);
    let t = identity_transformation(&m).unwrap();
    for g in 0..2usize {
        let mu = modulation_from_components(
            &t,
            &t,
            FinFn::make(FinSet::new(1), FinSet::new(2), vec![g]).unwrap(),
        );
        let r = check_modulation(&mu);
        assert!(r.passed(), "component {g}: {r}");
    }
}

#[test]
fn broken_modulation_component_fails_products() {
    let m = zmod_monoid_model(2);
    let mut t = identity_transformation(&m).unwrap();
    t.cartesian = true;
    let mut mu = identity_modulation(&t).unwrap();
    // deliberately break the derived component at x·x by storing a wrong one
    let x2 = double_kernel::theory::ObNf(vec!["x".into(), "x".into()]);
    let idp4 = double_kernel::span::id_pro(&FinSet::new(4));
    let mut cell = double_kernel::span::id_cell_on_pro(&idp4);
    cell.mid = FinFn::make(FinSet::new(4), FinSet::new(4), vec![0, 1, 3, 2]).unwrap();
    mu.comp.insert(x2, cell);
    let r = check_modulation_products(&mu);
    assert!(!r.passed());
    assert!(r.entries.iter().any(|e| e.law == "modprod/object"));
}

#[test]
fn pseudomonoid_models_pass() {
    for n in [1, 2, 3] {
        let m = monoid_pseudomonoid_model(n, 0, move |a, b| (a + b) % n);
        let r = check_lax(&m);
        assert!(r.passed(), "zmod{n} pseudomonoid: {r}");
        let r = check_cartesian(&m);
        assert!(r.passed(), "zmod{n} pseudomonoid cartesian: {r}");
    }
}

#[test]
fn weak_coherence_cells_obey_pentagon_only_when_trivial() {
    // the one-object ℤ/2 category: only the zero associator satisfies the
    // pentagon and triangle, although every choice is a valid cell
    let good = group_pseudomonoid_model(0, 0, 0);
    let r = check_lax(&good);
    assert!(r.passed(), "{r}");
    assert!(check_cartesian(&good).passed());

    let bad = group_pseudomonoid_model(1, 0, 0);
    let r = check_lax(&bad);
    assert!(!r.passed());
    // exactly the pentagon (equation 6) and the triangle (equation 7) fail
    let laws: Vec<&str> = r.entries.iter().map(|e| e.instance.as_str()).collect();
    assert!(laws.contains(&"equation 6"), "{laws:?}");
    assert!(laws.contains(&"equation 7"), "{laws:?}");
    assert_eq!(r.entries.len(), 2, "{r}");

    // a twisted unitor breaks the unit coherence but nothing else
    let bad = group_pseudomonoid_model(0, 1, 0);
    let r = check_lax(&bad);
    assert!(!r.passed());
    assert_eq!(r.entries.len(), 1, "{r}");
    assert!(r.entries[0].instance == "equation 7", "{r}");
}
