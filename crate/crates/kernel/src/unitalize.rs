//! The three-level correspondence between span-valued lax models and unitary
//! profunctor-valued models: functors, maps and 2-cells translate back and
//! forth with bit-exact round trips.

use crate::catprof::{CatFn, CatObj, ProfCell, ProfObj};
use crate::error::KernelError;
use crate::finset::coequalizer_factor;
use crate::model::modulation::ModulationData;
use crate::model::transform::TransData;
use crate::model::{check_lax, LaxModel};
use crate::report::Report;
use crate::span::SpanCell;
use crate::theory::{ArrNf, ObNf, Word};
use crate::universe::{ProfUniverse, SpanUniverse, Universe};

type SpanModel = LaxModel<SpanUniverse>;
type ProfModel = LaxModel<ProfUniverse>;

/// A span-valued model together with its unitary profunctor-valued form.
#[derive(Clone, Debug)]
pub struct UnitalizationPair {
    pub span_side: SpanModel,
    pub prof_side: ProfModel,
    /// Which direction produced which side.
    pub witness: &'static str,
}

/// The category object a span-valued model induces at an object term: the
/// carrier with the unit-word span as homs, the unitor as identities and the
/// unit-split laxator as composition.
pub fn category_at(f: &SpanModel, d: &ObNf) -> Result<CatObj, KernelError> {
    let e = Word::empty(d.clone());
    Ok(CatObj {
        ob: f.ob_val(d)?,
        hom: f.word_val(&e)?.clone(),
        unit: f.unitor(d)?.mid.clone(),
        comp: f.laxator(&e, &e)?.mid.clone(),
    })
}

/// The functor a span-valued model induces at a normalized arrow.
pub fn functor_at(f: &SpanModel, nf: &ArrNf) -> Result<CatFn, KernelError> {
    Ok(CatFn {
        src: category_at(f, &nf.dom)?,
        tgt: category_at(f, &nf.cod)?,
        ob_map: f.arr_val(nf)?,
        hom_map: f.act_nf(nf)?.mid,
    })
}

/// The profunctor a span-valued model induces at a closure word: the word
/// value with the unit-split laxators as actions.
pub fn profunctor_at(f: &SpanModel, w: &Word) -> Result<ProfObj, KernelError> {
    let es = Word::empty(w.src().clone());
    let et = Word::empty(w.tgt().clone());
    Ok(ProfObj {
        srccat: category_at(f, w.src())?,
        tgtcat: category_at(f, w.tgt())?,
        het: f.word_val(w)?.clone(),
        lact: f.laxator(&es, w)?.mid.clone(),
        ract: f.laxator(w, &et)?.mid.clone(),
    })
}

/// Unitalizes a span-valued lax model into a unitary profunctor-valued one.
pub fn unitalize_functor(f: &SpanModel) -> Result<ProfModel, KernelError> {
    let lax = check_lax(f);
    if !lax.passed() {
        return Err(KernelError::NotLax(format!(
            "{} violation(s), first: {}",
            lax.entries.len(),
            lax.entries[0].law
        )));
    }
    let mut h: ProfModel = LaxModel::new(f.theory.clone())?;
    for g in &f.theory.ob_gens {
        h.ob.insert(g.clone(), category_at(f, &ObNf::sort(g))?);
    }
    for g in &f.theory.arr_gens {
        let nf = f.theory.arr_nf(&crate::theory::agen(&g.name))?;
        let fun = functor_at(f, &nf)?;
        h.arr_act.insert(g.name.clone(), ProfUniverse::id_cell_arr(&fun));
        h.arr.insert(g.name.clone(), fun);
    }
    for w in &f.closure.words {
        h.words.insert(w.clone(), profunctor_at(f, w)?);
    }
    for g in &f.theory.cell_gens {
        let b = f.theory.typecheck_expr(&crate::theory::cgen(&g.name))?;
        let cell = f.cell_gen_val(&g.name)?;
        h.cells.insert(
            g.name.clone(),
            ProfCell {
                top: profunctor_at(f, &b.top)?,
                bot: profunctor_at(f, &b.bot)?,
                srcfn: functor_at(f, &b.lsrc)?,
                tgtfn: functor_at(f, &b.rtgt)?,
                mid: cell.mid.clone(),
            },
        );
    }
    for (u, v) in &f.closure.splits {
        let (hu, hv) = (profunctor_at(f, u)?, profunctor_at(f, v)?);
        let (comp, coeq) = crate::catprof::prof_compose(&hu, &hv)?;
        let uv = u.concat(v)?;
        // the span-side laxator coequalizes the middle actions; factor it
        let mid = coequalizer_factor(&coeq.mid, &f.laxator(u, v)?.mid)?;
        h.laxators.insert(
            (u.clone(), v.clone()),
            ProfCell {
                top: comp,
                bot: profunctor_at(f, &uv)?,
                srcfn: CatFn::identity(&hu.srccat),
                tgtfn: CatFn::identity(&hv.tgtcat),
                mid,
            },
        );
    }
    for d in &f.closure.objects {
        let unit = profunctor_at(f, &Word::empty(d.clone()))?;
        h.unitors.insert(d.clone(), ProfCell::identity(&unit));
    }
    h.unitary = true;
    h.cartesian = f.cartesian;
    Ok(h)
}

/// Strips a unitary profunctor-valued model back to its span-valued form.
pub fn counit_functor(h: &ProfModel) -> Result<SpanModel, KernelError> {
    if !h.unitary {
        return Err(KernelError::NotUnitary("counit requires a unitary model".into()));
    }
    let mut f: SpanModel = LaxModel::new(h.theory.clone())?;
    for g in &h.theory.ob_gens {
        f.ob.insert(g.clone(), h.ob_gen_val(g)?.ob.clone());
    }
    for g in &h.theory.arr_gens {
        let fun = h.arr_gen_val(&g.name)?;
        f.arr.insert(g.name.clone(), fun.ob_map.clone());
        let dom = h.theory.ob_nf(&g.dom)?;
        let cod = h.theory.ob_nf(&g.cod)?;
        f.arr_act.insert(
            g.name.clone(),
            SpanCell {
                top: h.word_val(&Word::empty(dom))?.het.clone(),
                bot: h.word_val(&Word::empty(cod))?.het.clone(),
                left: fun.ob_map.clone(),
                right: fun.ob_map.clone(),
                mid: fun.hom_map.clone(),
            },
        );
    }
    for w in &h.closure.words {
        f.words.insert(w.clone(), h.word_val(w)?.het.clone());
    }
    for g in &h.theory.cell_gens {
        let cell = h.cell_gen_val(&g.name)?;
        f.cells.insert(g.name.clone(), cell.as_span_cell());
    }
    for (u, v) in &h.closure.splits {
        let (hu, hv) = (h.word_val(u)?, h.word_val(v)?);
        let (_, coeq) = crate::catprof::prof_compose(hu, hv)?;
        let lax = h.laxator(u, v)?;
        let uv = u.concat(v)?;
        let top = crate::span::hcomp_pro(&hu.het, &hv.het)?;
        f.laxators.insert(
            (u.clone(), v.clone()),
            SpanCell {
                top,
                bot: h.word_val(&uv)?.het.clone(),
                left: crate::finset::FinFn::identity(hu.het.src.clone()),
                right: crate::finset::FinFn::identity(hv.het.tgt.clone()),
                mid: coeq.mid.then(&lax.mid)?,
            },
        );
    }
    for d in &h.closure.objects {
        let unit = h.word_val(&Word::empty(d.clone()))?;
        f.unitors.insert(
            d.clone(),
            SpanCell {
                top: crate::span::id_pro(&unit.srccat.ob),
                bot: unit.het.clone(),
                left: crate::finset::FinFn::identity(unit.srccat.ob.clone()),
                right: crate::finset::FinFn::identity(unit.srccat.ob.clone()),
                mid: unit.srccat.unit.clone(),
            },
        );
    }
    // the span-valued side is unitary exactly when its unit-word data is
    // identity data; recompute the flag rather than forgetting it
    f.unitary = crate::model::unitary_data(&f);
    f.cartesian = h.cartesian;
    Ok(f)
}

/// Unitalizes a transformation of span-valued models.
pub fn unitalize_transformation(
    a: &TransData<SpanUniverse>,
) -> Result<TransData<ProfUniverse>, KernelError> {
    let src = unitalize_functor(&a.src)?;
    let tgt = unitalize_functor(&a.tgt)?;
    let mut obj_comp = std::collections::BTreeMap::new();
    for g in &a.src.theory.ob_gens {
        let d = ObNf::sort(g);
        let e = Word::empty(d.clone());
        obj_comp.insert(
            g.clone(),
            CatFn {
                src: category_at(&a.src, &d)?,
                tgt: category_at(&a.tgt, &d)?,
                ob_map: a.obj_at(&d)?,
                hom_map: a.pro_at(&e)?.mid.clone(),
            },
        );
    }
    let funct_at = |d: &ObNf| -> Result<CatFn, KernelError> {
        Ok(CatFn {
            src: category_at(&a.src, d)?,
            tgt: category_at(&a.tgt, d)?,
            ob_map: a.obj_at(d)?,
            hom_map: a.pro_at(&Word::empty(d.clone()))?.mid.clone(),
        })
    };
    let mut pro_comp = std::collections::BTreeMap::new();
    for w in &a.src.closure.words {
        pro_comp.insert(
            w.clone(),
            ProfCell {
                top: profunctor_at(&a.src, w)?,
                bot: profunctor_at(&a.tgt, w)?,
                srcfn: funct_at(w.src())?,
                tgtfn: funct_at(w.tgt())?,
                mid: a.pro_at(w)?.mid.clone(),
            },
        );
    }
    let mut nat_comp = std::collections::BTreeMap::new();
    for g in &a.src.theory.arr_gens {
        let nf = a.src.theory.arr_nf(&crate::theory::agen(&g.name))?;
        let (ex, ey) = (Word::empty(nf.dom.clone()), Word::empty(nf.cod.clone()));
        // the span-level composite: the unit-word component followed by the
        // target's hom action of the arrow, paired with the naturality
        // comparison, collapsed by the target laxator
        let col1 = crate::span::vcomp_cell(a.pro_at(&ex)?, &a.tgt.act_nf(&nf)?)?;
        let af = a.nat_comp.get(&g.name).ok_or_else(|| {
            KernelError::MissingAssignment(format!("naturality comparison at `{}`", g.name))
        })?;
        let step = crate::span::hcomp_cell(&col1, af)?;
        let collapsed = crate::span::vcomp_cell(&step, a.tgt.laxator(&ey, &ey)?)?;
        let pre = crate::span::right_unitor(a.src.word_val(&ex)?)?.invert()?;
        let bar = crate::span::vcomp_cell(&pre, &collapsed)?;
        nat_comp.insert(
            g.name.clone(),
            ProfCell {
                top: profunctor_at(&a.src, &ex)?,
                bot: profunctor_at(&a.tgt, &ey)?,
                srcfn: funct_at(&nf.dom)?.then(&functor_at(&a.tgt, &nf)?)?,
                tgtfn: functor_at(&a.src, &nf)?.then(&funct_at(&nf.cod)?)?,
                mid: bar.mid,
            },
        );
    }
    Ok(TransData {
        src,
        tgt,
        obj_comp,
        pro_comp,
        nat_comp,
        flavor: a.flavor,
        cartesian: a.cartesian,
    })
}

/// Whiskers a transformation of unitary profunctor-valued models back down
/// to the span-valued side.
pub fn whisker_transformation(
    h: &TransData<ProfUniverse>,
) -> Result<TransData<SpanUniverse>, KernelError> {
    let src = counit_functor(&h.src)?;
    let tgt = counit_functor(&h.tgt)?;
    let mut obj_comp = std::collections::BTreeMap::new();
    for g in &h.src.theory.ob_gens {
        obj_comp.insert(
            g.clone(),
            h.obj_comp
                .get(g)
                .ok_or_else(|| KernelError::MissingAssignment(format!("component at `{g}`")))?
                .ob_map
                .clone(),
        );
    }
    let mut pro_comp = std::collections::BTreeMap::new();
    for w in &h.src.closure.words {
        pro_comp.insert(w.clone(), h.pro_at(w)?.as_span_cell());
    }
    let mut nat_comp = std::collections::BTreeMap::new();
    for g in &h.src.theory.arr_gens {
        let nf = h.src.theory.arr_nf(&crate::theory::agen(&g.name))?;
        let dom = nf.dom.clone();
        // precompose the comparison with the unit cell of the source hom
        let unit_cell = {
            let hx = h.src.word_val(&Word::empty(dom.clone()))?;
            SpanCell {
                top: crate::span::id_pro(&hx.srccat.ob),
                bot: hx.het.clone(),
                left: crate::finset::FinFn::identity(hx.srccat.ob.clone()),
                right: crate::finset::FinFn::identity(hx.srccat.ob.clone()),
                mid: hx.srccat.unit.clone(),
            }
        };
        let af = h.nat_comp.get(&g.name).ok_or_else(|| {
            KernelError::MissingAssignment(format!("naturality comparison at `{}`", g.name))
        })?;
        nat_comp.insert(
            g.name.clone(),
            crate::span::vcomp_cell(&unit_cell, &af.as_span_cell())?,
        );
    }
    Ok(TransData {
        src,
        tgt,
        obj_comp,
        pro_comp,
        nat_comp,
        flavor: h.flavor,
        cartesian: h.cartesian,
    })
}

/// Unitalizes a modulation.
pub fn unitalize_modulation(
    m: &ModulationData<SpanUniverse>,
) -> Result<ModulationData<ProfUniverse>, KernelError> {
    let src_map = unitalize_transformation(&m.src_map)?;
    let tgt_map = unitalize_transformation(&m.tgt_map)?;
    let mut comp = std::collections::BTreeMap::new();
    for g in &m.src_map.src.theory.ob_gens {
        let d = ObNf::sort(g);
        let e = Word::empty(d.clone());
        let derived = m.derived_component(&e)?;
        comp.insert(
            d.clone(),
            ProfCell {
                top: profunctor_at(&m.src_map.src, &e)?,
                bot: profunctor_at(&m.src_map.tgt, &e)?,
                srcfn: src_map.obj_comp.get(g).unwrap().clone(),
                tgtfn: tgt_map.obj_comp.get(g).unwrap().clone(),
                mid: derived.mid,
            },
        );
    }
    Ok(ModulationData { src_map, tgt_map, comp })
}

/// Whiskers a modulation of unitary profunctor-valued maps back down.
pub fn whisker_modulation(
    n: &ModulationData<ProfUniverse>,
) -> Result<ModulationData<SpanUniverse>, KernelError> {
    let src_map = whisker_transformation(&n.src_map)?;
    let tgt_map = whisker_transformation(&n.tgt_map)?;
    let mut comp = std::collections::BTreeMap::new();
    for g in &n.src_map.src.theory.ob_gens {
        let d = ObNf::sort(g);
        let hx = n.src_map.src.word_val(&Word::empty(d.clone()))?;
        let unit_cell = SpanCell {
            top: crate::span::id_pro(&hx.srccat.ob),
            bot: hx.het.clone(),
            left: crate::finset::FinFn::identity(hx.srccat.ob.clone()),
            right: crate::finset::FinFn::identity(hx.srccat.ob.clone()),
            mid: hx.srccat.unit.clone(),
        };
        let c = n.comp_at(&d)?;
        comp.insert(d, crate::span::vcomp_cell(&unit_cell, &c.as_span_cell())?);
    }
    Ok(ModulationData { src_map, tgt_map, comp })
}

/// Verifies that the two directions compose to the identity at all three
/// dimensions on the supplied data, and that flags are preserved.
pub fn roundtrip_report(f: &SpanModel) -> Report {
    crate::stack::with_big_stack(|| roundtrip_report_inner(f))
}

fn roundtrip_report_inner(f: &SpanModel) -> Report {
    let start = std::time::Instant::now();
    let mut r = Report::new();
    match unitalize_functor(f) {
        Err(e) => r.check("roundtrip/unitalize", "model", false, &e.to_string()),
        Ok(h) => {
            let lax = check_lax(&h);
            r.check(
                "roundtrip/prof-lax",
                "unitalized model",
                lax.passed(),
                &format!("{} violation(s)", lax.entries.len()),
            );
            r.check(
                "roundtrip/flags",
                "cartesian flag",
                h.cartesian == f.cartesian && h.unitary,
                "flags not preserved",
            );
            match counit_functor(&h) {
                Err(e) => r.check("roundtrip/counit", "model", false, &e.to_string()),
                Ok(back) => {
                    r.check(
                        "roundtrip/functor",
                        "counit ∘ unitalize",
                        back == *f,
                        "round trip is not the identity on the model tables",
                    );
                    match unitalize_functor(&back) {
                        Err(e) => r.check("roundtrip/again", "model", false, &e.to_string()),
                        Ok(h2) => r.check(
                            "roundtrip/functor-up",
                            "unitalize ∘ counit",
                            h2 == h,
                            "round trip is not the identity on the unitary side",
                        ),
                    }
                }
            }
        }
    }
    r.timing_ms = start.elapsed().as_millis();
    r
}
