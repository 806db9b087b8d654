//! Small concrete categories and related data used as test fixtures and as
//! sample inputs for the command-line tool.

use crate::catprof::{CatFn, CatObj, ProfObj};
use crate::finset::{FinFn, FinSet};
use crate::span::{hcomp_pairs, hcomp_pro, SpanPro};

/// Builds a category object from explicit morphism tables.
///
/// `homs[k] = (src, tgt)`, `ids[o]` is the identity at object `o`, and
/// `compose(f, g)` returns the composite of a composable pair in diagrammatic
/// order.
pub fn category_from_tables(
    n_ob: usize,
    homs: &[(usize, usize)],
    ids: &[usize],
    compose: impl Fn(usize, usize) -> usize,
) -> CatObj {
    let ob = FinSet::new(n_ob);
    let hom = SpanPro::from_tables(
        n_ob,
        n_ob,
        homs.iter().map(|h| h.0).collect(),
        homs.iter().map(|h| h.1).collect(),
    )
    .expect("hom tables");
    let unit = FinFn::make(ob.clone(), hom.apex.clone(), ids.to_vec()).expect("unit table");
    let hh = hcomp_pro(&hom, &hom).expect("hom composes");
    let pairs = hcomp_pairs(&hom, &hom);
    let comp = FinFn::make(
        hh.apex,
        hom.apex.clone(),
        pairs.iter().map(|&(f, g)| compose(f, g)).collect(),
    )
    .expect("comp table");
    CatObj { ob, hom, unit, comp }
}

/// The poset `2 = {0 ≤ 1}`: morphisms `id0, id1, u: 0 → 1`.
pub fn poset2() -> CatObj {
    category_from_tables(2, &[(0, 0), (1, 1), (0, 1)], &[0, 1], |f, g| {
        match (f, g) {
            (0, 0) => 0,
            (1, 1) => 1,
            (0, 2) | (2, 1) => 2,
            _ => unreachable!("not composable"),
        }
    })
}

/// The cyclic group `ℤ/n` as a one-object category.
pub fn cyclic_monoid(n: usize) -> CatObj {
    category_from_tables(
        1,
        &vec![(0, 0); n],
        &[0],
        |f, g| (f + g) % n,
    )
}

/// The walking parallel pair: two objects, two parallel non-identity arrows.
pub fn parallel_pair() -> CatObj {
    category_from_tables(2, &[(0, 0), (1, 1), (0, 1), (0, 1)], &[0, 1], |f, g| {
        match (f, g) {
            (0, 0) => 0,
            (1, 1) => 1,
            (0, 2) | (2, 1) => 2,
            (0, 3) | (3, 1) => 3,
            _ => unreachable!("not composable"),
        }
    })
}

/// The walking arrow viewed as a 3-object chain truncated to 2: alias of
/// `poset2` with a label for readability in fixtures.
pub fn walking_arrow_category() -> CatObj {
    poset2()
}

/// A three-object chain poset `0 ≤ 1 ≤ 2` (6 morphisms).
pub fn poset3() -> CatObj {
    let homs = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)];
    category_from_tables(3, &homs, &[0, 1, 2], |f, g| match (f, g) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (0, 3) | (3, 1) => 3,
        (1, 4) | (4, 2) => 4,
        (0, 5) | (5, 2) => 5,
        (3, 4) => 5,
        _ => unreachable!("not composable"),
    })
}

/// The corpus of small categories used by recognition and law suites.
pub fn category_corpus() -> Vec<(&'static str, CatObj)> {
    vec![
        ("terminal", crate::catprof::discrete_category(&FinSet::new(1))),
        ("empty", crate::catprof::discrete_category(&FinSet::new(0))),
        ("discrete2", crate::catprof::discrete_category(&FinSet::new(2))),
        ("poset2", poset2()),
        ("zmod2", cyclic_monoid(2)),
        ("zmod3", cyclic_monoid(3)),
        ("parallel_pair", parallel_pair()),
        ("poset3", poset3()),
    ]
}

/// A profunctor between two finite categories given by its het tables.
///
/// `lact(f, e)` and `ract(e, g)` must be defined on exactly the composable
/// pairs.
pub fn profunctor_from_tables(
    srccat: &CatObj,
    tgtcat: &CatObj,
    het: SpanPro,
    lact: impl Fn(usize, usize) -> usize,
    ract: impl Fn(usize, usize) -> usize,
) -> ProfObj {
    let lp = hcomp_pro(&srccat.hom, &het).expect("lact domain");
    let rp = hcomp_pro(&het, &tgtcat.hom).expect("ract domain");
    let lpairs = hcomp_pairs(&srccat.hom, &het);
    let rpairs = hcomp_pairs(&het, &tgtcat.hom);
    ProfObj {
        srccat: srccat.clone(),
        tgtcat: tgtcat.clone(),
        het: het.clone(),
        lact: FinFn::make(
            lp.apex,
            het.apex.clone(),
            lpairs.iter().map(|&(f, e)| lact(f, e)).collect(),
        )
        .expect("lact table"),
        ract: FinFn::make(
            rp.apex,
            het.apex.clone(),
            rpairs.iter().map(|&(e, g)| ract(e, g)).collect(),
        )
        .expect("ract table"),
    }
}

// ---------------------------------------------------------------------------
// model fixtures

use crate::model::transform::{Flavor, TransData};
use crate::model::LaxModel;
use crate::theory::builtin::builtin;
use crate::theory::{ObNf, Word};
use crate::universe::{SpanUniverse, Universe};

/// The span-valued model of the unit theory determined by a finite category.
pub fn span_model_from_category(c: &CatObj) -> LaxModel<SpanUniverse> {
    let theory = builtin("categories").expect("builtin");
    let mut m: LaxModel<SpanUniverse> = LaxModel::new(theory).expect("closure");
    let x = ObNf::sort("x");
    let e = Word::empty(x.clone());
    m.ob.insert("x".into(), c.ob.clone());
    m.words.insert(e.clone(), c.hom.clone());
    let hh = hcomp_pro(&c.hom, &c.hom).expect("hom composes");
    m.laxators.insert(
        (e.clone(), e.clone()),
        crate::span::SpanCell {
            top: hh,
            bot: c.hom.clone(),
            left: FinFn::identity(c.ob.clone()),
            right: FinFn::identity(c.ob.clone()),
            mid: c.comp.clone(),
        },
    );
    m.unitors.insert(
        x,
        crate::span::SpanCell {
            top: crate::span::id_pro(&c.ob),
            bot: c.hom.clone(),
            left: FinFn::identity(c.ob.clone()),
            right: FinFn::identity(c.ob.clone()),
            mid: c.unit.clone(),
        },
    );
    m.unitary = crate::model::unitary_data(&m);
    m
}

/// Extracts the category back out of a unit-theory model.
pub fn category_from_span_model(m: &LaxModel<SpanUniverse>) -> CatObj {
    let x = ObNf::sort("x");
    let e = Word::empty(x.clone());
    CatObj {
        ob: m.ob["x"].clone(),
        hom: m.words[&e].clone(),
        unit: m.unitors[&x].mid.clone(),
        comp: m.laxators[&(e.clone(), e)].mid.clone(),
    }
}

/// A span-valued model of the monad theory: a category with an endofunctor
/// and unit/multiplication tables.
pub fn monad_model(
    c: &CatObj,
    t0: FinFn,
    t_act: FinFn,
    eta_mid: FinFn,
    mu_mid: FinFn,
) -> LaxModel<SpanUniverse> {
    let mut m = span_model_from_category(c);
    m.theory = builtin("monads").expect("builtin");
    m.closure = m.theory.laxator_closure().expect("closure");
    let mk = |left: FinFn, right: FinFn, mid: FinFn| crate::span::SpanCell {
        top: c.hom.clone(),
        bot: c.hom.clone(),
        left,
        right,
        mid,
    };
    m.arr.insert("t".into(), t0.clone());
    m.arr_act.insert("t".into(), mk(t0.clone(), t0.clone(), t_act));
    let tt = t0.then(&t0).expect("endo composes");
    m.cells.insert("eta".into(), mk(FinFn::identity(c.ob.clone()), t0, eta_mid));
    m.cells.insert("mu".into(), mk(tt, m.arr["t"].clone(), mu_mid));
    m
}

/// The closure-operator monad "constantly top" on the poset `2`.
pub fn closure_monad_poset2() -> LaxModel<SpanUniverse> {
    let c = poset2();
    let two = FinSet::new(2);
    let three = FinSet::new(3);
    monad_model(
        &c,
        FinFn::make(two.clone(), two.clone(), vec![1, 1]).unwrap(),
        FinFn::make(three.clone(), three.clone(), vec![1, 1, 1]).unwrap(),
        FinFn::make(three.clone(), three.clone(), vec![2, 1, 2]).unwrap(),
        FinFn::make(three.clone(), three.clone(), vec![1, 1, 1]).unwrap(),
    )
}

/// The identity monad on any finite category.
pub fn identity_monad(c: &CatObj) -> LaxModel<SpanUniverse> {
    monad_model(
        c,
        FinFn::identity(c.ob.clone()),
        FinFn::identity(c.hom.apex.clone()),
        FinFn::identity(c.hom.apex.clone()),
        FinFn::identity(c.hom.apex.clone()),
    )
}

/// A discrete strict monoidal category, i.e. a finite monoid, as a model of
/// the monoid theory. `mult(a, b)` is the monoid operation and `unit` its
/// neutral element.
pub fn monoid_model(
    n: usize,
    unit: usize,
    mult: impl Fn(usize, usize) -> usize,
) -> LaxModel<SpanUniverse> {
    let theory = builtin("monoids").expect("builtin");
    let mut m: LaxModel<SpanUniverse> = LaxModel::new(theory).expect("closure");
    m.ob.insert("x".into(), FinSet::new(n));
    // identity hom spans at every closure object, with identity unitors and
    // unitor-style laxators
    for d in m.closure.objects.clone() {
        let size = n.pow(d.arity() as u32);
        let ob = FinSet::new(size);
        let idp = crate::span::id_pro(&ob);
        m.words.insert(Word::empty(d.clone()), idp.clone());
        m.unitors.insert(d.clone(), crate::span::id_cell_on_pro(&idp));
    }
    for (u, v) in m.closure.splits.clone() {
        let val = m.words.get(&u).expect("split parts are closure words").clone();
        m.laxators
            .insert((u, v), crate::span::left_unitor(&val).expect("identity span unitor"));
    }
    let x2 = FinSet::new(n * n);
    let ot = FinFn::make(
        x2.clone(),
        FinSet::new(n),
        (0..n * n).map(|k| mult(k / n, k % n)).collect(),
    )
    .expect("multiplication table");
    let i = FinFn::make(FinSet::new(1), FinSet::new(n), vec![unit]).expect("unit element");
    m.arr_act.insert("otimes".into(), crate::span::id_cell_on_arrow(&ot));
    m.arr_act.insert("i".into(), crate::span::id_cell_on_arrow(&i));
    m.arr.insert("otimes".into(), ot);
    m.arr.insert("i".into(), i);
    m.unitary = true;
    m.cartesian = true;
    m
}

/// `ℤ/n` as a discrete strict monoidal category.
pub fn zmod_monoid_model(n: usize) -> LaxModel<SpanUniverse> {
    monoid_model(n, 0, move |a, b| (a + b) % n)
}

/// A transformation between unit-theory models given by a functor between
/// the underlying categories.
pub fn transformation_from_functor(
    src: &LaxModel<SpanUniverse>,
    tgt: &LaxModel<SpanUniverse>,
    u: &CatFn,
) -> TransData<SpanUniverse> {
    let x = ObNf::sort("x");
    let e = Word::empty(x);
    let cell = crate::span::SpanCell {
        top: src.words[&e].clone(),
        bot: tgt.words[&e].clone(),
        left: u.ob_map.clone(),
        right: u.ob_map.clone(),
        mid: u.hom_map.clone(),
    };
    TransData {
        src: src.clone(),
        tgt: tgt.clone(),
        obj_comp: [("x".to_string(), u.ob_map.clone())].into(),
        pro_comp: [(e, cell)].into(),
        nat_comp: Default::default(),
        flavor: Flavor::Strict,
        cartesian: false,
    }
}

/// A modulation between two unit-theory transformations given by the
/// component table of a natural transformation.
pub fn modulation_from_components(
    a: &TransData<SpanUniverse>,
    b: &TransData<SpanUniverse>,
    components: FinFn,
) -> crate::model::modulation::ModulationData<SpanUniverse> {
    let x = ObNf::sort("x");
    let e = Word::empty(x.clone());
    let cell = crate::span::SpanCell {
        top: crate::span::id_pro(&a.src.ob["x"]),
        bot: a.tgt.words[&e].clone(),
        left: a.obj_comp["x"].clone(),
        right: b.obj_comp["x"].clone(),
        mid: components,
    };
    crate::model::modulation::ModulationData {
        src_map: a.clone(),
        tgt_map: b.clone(),
        comp: [(x, cell)].into(),
    }
}

/// A strict transformation: object and proarrow components are supplied, and
/// every naturality comparison is the strict form.
pub fn strict_transformation<U: Universe>(
    src: &LaxModel<U>,
    tgt: &LaxModel<U>,
    obj_comp: std::collections::BTreeMap<String, U::Arr>,
    pro_comp: std::collections::BTreeMap<Word, U::Cell>,
    cartesian: bool,
) -> Result<TransData<U>, crate::KernelError> {
    let mut t = TransData {
        src: src.clone(),
        tgt: tgt.clone(),
        obj_comp,
        pro_comp,
        nat_comp: Default::default(),
        flavor: Flavor::Strict,
        cartesian,
    };
    for g in src.theory.arr_gens.clone() {
        let nf = src.theory.arr_nf(&crate::theory::agen(&g.name))?;
        let cell = t.strict_nat(&nf)?;
        t.nat_comp.insert(g.name, cell);
    }
    Ok(t)
}

/// The mod-2 reduction `ℤ/4 → ℤ/2` as a strict (hence lax) monoidal functor
/// between the discrete monoidal models.
pub fn mod2_reduction_map() -> TransData<SpanUniverse> {
    let m4 = zmod_monoid_model(4);
    let m2 = zmod_monoid_model(2);
    let r = FinFn::make(FinSet::new(4), FinSet::new(2), vec![0, 1, 0, 1]).unwrap();
    let mut pro_comp = std::collections::BTreeMap::new();
    for d in m4.closure.objects.clone() {
        let w = Word::empty(d.clone());
        // componentwise reduction on the product power
        let k = d.arity();
        let mut map = r.clone();
        if k == 0 {
            map = FinFn::identity(FinSet::new(1));
        }
        for _ in 1..k {
            map = crate::finset::product_fn(&map, &r);
        }
        pro_comp.insert(
            w.clone(),
            crate::span::SpanCell {
                top: m4.words[&w].clone(),
                bot: m2.words[&w].clone(),
                left: map.clone(),
                right: map.clone(),
                mid: map,
            },
        );
    }
    strict_transformation(
        &m4,
        &m2,
        [("x".to_string(), r)].into(),
        pro_comp,
        true,
    )
    .expect("strict squares commute")
}

/// A finite monoid as a model of the pseudomonoid theory, with identity
/// coherence cells (a strict monoidal category seen as a weak one).
pub fn monoid_pseudomonoid_model(
    n: usize,
    unit: usize,
    mult: impl Fn(usize, usize) -> usize,
) -> LaxModel<SpanUniverse> {
    let mut m = monoid_model(n, unit, mult);
    m.theory = builtin("pseudomonoids").expect("builtin");
    m.closure = m.theory.laxator_closure().expect("closure");
    // top up the word table for objects that only occur in this presentation
    for d in m.closure.objects.clone() {
        let w = Word::empty(d.clone());
        if m.words.contains_key(&w) {
            continue;
        }
        let size = n.pow(d.arity() as u32);
        let idp = crate::span::id_pro(&FinSet::new(size));
        m.words.insert(w, idp.clone());
        m.unitors.insert(d, crate::span::id_cell_on_pro(&idp));
    }
    for (u, v) in m.closure.splits.clone() {
        if m.laxators.contains_key(&(u.clone(), v.clone())) {
            continue;
        }
        let val = m.words.get(&u).expect("split parts are closure words").clone();
        m.laxators
            .insert((u, v), crate::span::left_unitor(&val).expect("identity span unitor"));
    }
    // coherence cells are identities on the evaluated boundary arrows
    for g in m.theory.cell_gens.clone() {
        let b = m
            .theory
            .typecheck_expr(&crate::theory::cgen(&g.name))
            .expect("builtin typechecks");
        let left = m.arr_val(&b.lsrc).expect("arrow evaluates");
        let top = m.words.get(&b.top).expect("closure word").clone();
        let bot = m.words.get(&b.bot).expect("closure word").clone();
        m.cells.insert(
            g.name.clone(),
            crate::span::SpanCell { top, bot, left: left.clone(), right: left.clone(), mid: left },
        );
    }
    m
}

/// The one-object category with morphism group `ℤ/2`, as a pseudomonoid
/// model whose coherence cells are the natural transformations with the
/// given components (`0` or `1`). Only the all-zero choice satisfies the
/// pentagon and triangle.
pub fn group_pseudomonoid_model(alpha: usize, lam: usize, rho: usize) -> LaxModel<SpanUniverse> {
    let theory = builtin("pseudomonoids").expect("builtin");
    let mut m: LaxModel<SpanUniverse> = LaxModel::new(theory).expect("closure");
    let one = FinSet::new(1);
    m.ob.insert("x".into(), one.clone());
    // hom at x^k is the k-fold product of the 2-element group span
    let hom_at = |k: u32| -> SpanPro {
        let apex = FinSet::new(2usize.pow(k));
        SpanPro {
            src: one.clone(),
            tgt: one.clone(),
            apex: apex.clone(),
            left: FinFn::bang(apex.clone()),
            right: FinFn::bang(apex),
        }
    };
    let parity_sum = |k: u32, x: usize, y: usize| -> usize {
        // componentwise sum in (ℤ/2)^k of canonical encodings
        let mut out = 0;
        for b in 0..k {
            let shift = 2usize.pow(k - 1 - b);
            let (xb, yb) = (x / shift % 2, y / shift % 2);
            out += ((xb + yb) % 2) * shift;
        }
        out
    };
    for d in m.closure.objects.clone() {
        let k = d.arity() as u32;
        let h = hom_at(k);
        m.words.insert(Word::empty(d.clone()), h.clone());
        let unit_mid = FinFn::make(one.clone(), h.apex.clone(), vec![0]).unwrap();
        m.unitors.insert(
            d.clone(),
            SpanPro::make(one.clone(), one.clone(), one.clone(), FinFn::identity(one.clone()), FinFn::identity(one.clone()))
                .map(|idp| crate::span::SpanCell {
                    top: idp,
                    bot: h.clone(),
                    left: FinFn::identity(one.clone()),
                    right: FinFn::identity(one.clone()),
                    mid: unit_mid.clone(),
                })
                .unwrap(),
        );
    }
    for (u, v) in m.closure.splits.clone() {
        let k = u.src().arity() as u32;
        let h = m.words.get(&u).unwrap().clone();
        let hh = hcomp_pro(&h, &h).unwrap();
        let pairs = crate::span::hcomp_pairs(&h, &h);
        let mid = FinFn::make(
            hh.apex.clone(),
            h.apex.clone(),
            pairs.iter().map(|&(a, b)| parity_sum(k, a, b)).collect(),
        )
        .unwrap();
        m.laxators.insert(
            (u, v),
            crate::span::SpanCell {
                top: hh,
                bot: h,
                left: FinFn::identity(one.clone()),
                right: FinFn::identity(one.clone()),
                mid,
            },
        );
    }
    let trivial = FinFn::identity(one.clone());
    m.arr.insert("otimes".into(), trivial.clone());
    m.arr.insert("i".into(), trivial.clone());
    // hom action of the tensor: sum of the two components
    let h2 = m.words.get(&Word::empty(ObNf(vec!["x".into(), "x".into()]))).unwrap().clone();
    let h1 = m.words.get(&Word::empty(ObNf::sort("x"))).unwrap().clone();
    m.arr_act.insert(
        "otimes".into(),
        crate::span::SpanCell {
            top: h2,
            bot: h1.clone(),
            left: trivial.clone(),
            right: trivial.clone(),
            mid: FinFn::make(FinSet::new(4), FinSet::new(2), vec![0, 1, 1, 0]).unwrap(),
        },
    );
    let h0 = m.words.get(&Word::empty(ObNf::unit())).unwrap().clone();
    m.arr_act.insert(
        "i".into(),
        crate::span::SpanCell {
            top: h0,
            bot: h1.clone(),
            left: FinFn::bang(one.clone()),
            right: FinFn::bang(one.clone()),
            mid: FinFn::make(one.clone(), FinSet::new(2), vec![0]).unwrap(),
        },
    );
    // coherence cells: natural transformations with the given components
    let mut put = |name: &str, k: u32, component: usize| {
        let top = m.words.get(&Word::empty(ObNf(vec!["x".into(); k as usize]))).unwrap().clone();
        let b = m.theory.typecheck_expr(&crate::theory::cgen(name)).unwrap();
        let left = m.arr_val(&b.lsrc).unwrap();
        let right = m.arr_val(&b.rtgt).unwrap();
        let mid = FinFn::make(
            top.apex.clone(),
            FinSet::new(2),
            (0..top.apex.size)
                .map(|w| ((0..k).map(|bit| w / 2usize.pow(k - 1 - bit) % 2).sum::<usize>() + component) % 2)
                .collect(),
        )
        .unwrap();
        m.cells.insert(
            name.into(),
            crate::span::SpanCell { top, bot: h1.clone(), left, right, mid },
        );
    };
    put("alpha", 3, alpha);
    put("alpha_inv", 3, alpha);
    put("lambda", 1, lam);
    put("lambda_inv", 1, lam);
    put("rho", 1, rho);
    put("rho_inv", 1, rho);
    m.cartesian = true;
    m
}

/// A profunctor between finite categories as a module between the
/// corresponding unit-theory models.
pub fn module_from_profunctor(
    p: &ProfObj,
) -> crate::vdc::ModuleData<SpanUniverse> {
    let src = span_model_from_category(&p.srccat);
    let tgt = span_model_from_category(&p.tgtcat);
    let x = ObNf::sort("x");
    let e = Word::empty(x.clone());
    let lp = hcomp_pro(&p.srccat.hom, &p.het).expect("acts");
    let rp = hcomp_pro(&p.het, &p.tgtcat.hom).expect("acts");
    let mk = |top: crate::span::SpanPro, mid: FinFn| crate::span::SpanCell {
        top,
        bot: p.het.clone(),
        left: FinFn::identity(p.srccat.ob.clone()),
        right: FinFn::identity(p.tgtcat.ob.clone()),
        mid,
    };
    crate::vdc::ModuleData {
        src,
        tgt,
        pro_values: [(e.clone(), p.het.clone())].into(),
        cell_values: Default::default(),
        lact: [((e.clone(), e.clone()), mk(lp, p.lact.clone()))].into(),
        ract: [((e.clone(), e.clone()), mk(rp, p.ract.clone()))].into(),
    }
}

/// The monoidal profunctor whose het set is the graph of the mod-2
/// reduction `ℤ/4 → ℤ/2`, as a module between the discrete monoidal models.
pub fn mod2_graph_module() -> crate::vdc::ModuleData<SpanUniverse> {
    let m4 = zmod_monoid_model(4);
    let m2 = zmod_monoid_model(2);
    // heteromorphisms at x^k: graphs of the componentwise reduction
    let r = |b: usize| b % 2;
    let het_at = |k: u32| -> crate::span::SpanPro {
        let n = 4usize.pow(k);
        let left = (0..n)
            .map(|b| {
                // componentwise reduction of the canonical encoding
                let mut digits = Vec::new();
                let mut x = b;
                for _ in 0..k {
                    digits.push(x % 4);
                    x /= 4;
                }
                digits.reverse();
                digits.iter().fold(0, |acc, &d| acc * 2 + r(d))
            })
            .collect();
        crate::span::SpanPro::from_tables(2usize.pow(k), n, left, (0..n).collect()).unwrap()
    };
    let mut pro_values = std::collections::BTreeMap::new();
    let mut lact = std::collections::BTreeMap::new();
    let mut ract = std::collections::BTreeMap::new();
    for d in m4.closure.objects.clone() {
        let k = d.arity() as u32;
        let w = Word::empty(d.clone());
        let het = het_at(k);
        // the discrete categories act trivially through their identities
        let lp = hcomp_pro(&m2.words[&w], &het).unwrap();
        let lpairs = crate::span::hcomp_pairs(&m2.words[&w], &het);
        lact.insert(
            (w.clone(), w.clone()),
            crate::span::SpanCell {
                top: lp,
                bot: het.clone(),
                left: FinFn::identity(FinSet::new(2usize.pow(k))),
                right: FinFn::identity(FinSet::new(4usize.pow(k))),
                mid: FinFn::make(
                    FinSet::new(lpairs.len()),
                    het.apex.clone(),
                    lpairs.iter().map(|&(_, e)| e).collect(),
                )
                .unwrap(),
            },
        );
        let rp = hcomp_pro(&het, &m4.words[&w]).unwrap();
        let rpairs = crate::span::hcomp_pairs(&het, &m4.words[&w]);
        ract.insert(
            (w.clone(), w.clone()),
            crate::span::SpanCell {
                top: rp,
                bot: het.clone(),
                left: FinFn::identity(FinSet::new(2usize.pow(k))),
                right: FinFn::identity(FinSet::new(4usize.pow(k))),
                mid: FinFn::make(
                    FinSet::new(rpairs.len()),
                    het.apex.clone(),
                    rpairs.iter().map(|&(e, _)| e).collect(),
                )
                .unwrap(),
            },
        );
        pro_values.insert(w, het);
    }
    // the tensor acts componentwise on heteromorphisms
    let mut cell_values = std::collections::BTreeMap::new();
    let x2 = ObNf(vec!["x".into(), "x".into()]);
    let het2 = pro_values[&Word::empty(x2)].clone();
    let het1 = pro_values[&Word::empty(ObNf::sort("x"))].clone();
    cell_values.insert(
        "id[otimes]".into(),
        crate::span::SpanCell {
            top: het2.clone(),
            bot: het1.clone(),
            left: m2.arr["otimes"].clone(),
            right: m4.arr["otimes"].clone(),
            mid: FinFn::make(
                het2.apex.clone(),
                het1.apex.clone(),
                (0..16).map(|k| (k / 4 + k % 4) % 4).collect(),
            )
            .unwrap(),
        },
    );
    let het0 = pro_values[&Word::empty(ObNf::unit())].clone();
    cell_values.insert(
        "id[i]".into(),
        crate::span::SpanCell {
            top: het0,
            bot: het1,
            left: m2.arr["i"].clone(),
            right: m4.arr["i"].clone(),
            mid: FinFn::make(FinSet::new(1), FinSet::new(4), vec![0]).unwrap(),
        },
    );
    crate::vdc::ModuleData { src: m2, tgt: m4, pro_values, cell_values, lact, ract }
}
