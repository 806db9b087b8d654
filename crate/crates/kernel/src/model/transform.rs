//! Maps of models: lax natural transformations with their axiom checker,
//! flavors (lax, oplax, pseudo, strict, cartesian), composition and
//! identities.

use super::LaxModel;
use crate::error::KernelError;
use crate::report::Report;
use crate::theory::{ArrNf, ObNf, Tm, Word};
use crate::universe::Universe;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Lax,
    Oplax,
    Pseudo,
    Strict,
}

/// The data of a transformation between two models of the same theory:
/// object components per object generator, proarrow components per closure
/// word, and naturality comparisons per arrow generator.
#[derive(Clone, Debug, PartialEq)]
pub struct TransData<U: Universe> {
    pub src: LaxModel<U>,
    pub tgt: LaxModel<U>,
    pub obj_comp: BTreeMap<String, U::Arr>,
    pub pro_comp: BTreeMap<Word, U::Cell>,
    pub nat_comp: BTreeMap<String, U::Cell>,
    pub flavor: Flavor,
    pub cartesian: bool,
}

impl<U: Universe> TransData<U> {
    /// Component at an object term: stored on generators, the canonical
    /// product on product terms, the identity on the unit term.
    pub fn obj_at(&self, o: &ObNf) -> Result<U::Arr, KernelError> {
        match o.0.split_first() {
            None => Ok(U::id_arr(&U::terminal())),
            Some((head, rest)) => {
                let mut acc = self
                    .obj_comp
                    .get(head)
                    .cloned()
                    .ok_or_else(|| KernelError::MissingAssignment(format!("component at `{head}`")))?;
                for s in rest {
                    let next = self.obj_comp.get(s).cloned().ok_or_else(|| {
                        KernelError::MissingAssignment(format!("component at `{s}`"))
                    })?;
                    acc = prod_arr::<U>(&acc, &next)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn pro_at(&self, w: &Word) -> Result<&U::Cell, KernelError> {
        self.pro_comp
            .get(w)
            .ok_or_else(|| KernelError::MissingAssignment(format!("component at word `{w}`")))
    }

    /// The strict-form naturality comparison at an arrow whose naturality
    /// square commutes: the external identity on the diagonal followed by
    /// the target unitor.
    pub fn strict_nat(&self, f: &ArrNf) -> Result<U::Cell, KernelError> {
        let lhs = U::comp_arr(&self.obj_at(&f.dom)?, &self.tgt.arr_val(f)?)?;
        let rhs = U::comp_arr(&self.src.arr_val(f)?, &self.obj_at(&f.cod)?)?;
        if lhs != rhs {
            return Err(KernelError::TypeError(format!(
                "naturality square does not commute strictly at {f:?}"
            )));
        }
        U::vcomp(&U::id_cell_arr(&lhs), self.tgt.unitor(&f.cod)?)
    }

    /// Pastes naturality comparisons along a composite `f · g`.
    fn paste_nat(
        &self,
        cf: &U::Cell,
        f_val: &U::Arr,
        cg: &U::Cell,
        g_act: &U::Cell,
        cod: &ObNf,
    ) -> Result<U::Cell, KernelError> {
        // left column: α_f then the target's hom action of g
        let col1 = U::vcomp(cf, g_act)?;
        // right column: the external identity on F f then α_g
        let col2 = U::vcomp(&U::id_cell_arr(f_val), cg)?;
        let step = U::hcomp(&col1, &col2)?;
        let ez = Word::empty(cod.clone());
        let collapsed = U::vcomp(&step, self.tgt.laxator(&ez, &ez)?)?;
        let top = U::id_pro(&U::arr_dom(f_val));
        U::vcomp(&U::invert(&U::lunitor(&top)?)?, &collapsed)
    }

    fn nat_tm(&self, dom: &ObNf, t: &Tm) -> Result<U::Cell, KernelError> {
        match t {
            Tm::Var(i) => {
                // projections (and identities) are strictly natural
                let nf = ArrNf {
                    dom: dom.clone(),
                    cod: ObNf(vec![dom.0[*i].clone()]),
                    terms: vec![Tm::Var(*i)],
                };
                self.strict_nat(&nf)
            }
            Tm::App { gen, args, out } => {
                let g = self
                    .src
                    .theory
                    .arr_gen(gen)
                    .ok_or_else(|| KernelError::TypeError(format!("unknown arrow `{gen}`")))?;
                let gdom = self.src.theory.ob_nf(&g.dom)?;
                let gcod = self.src.theory.ob_nf(&g.cod)?;
                let tup_nf = ArrNf { dom: dom.clone(), cod: gdom.clone(), terms: args.clone() };
                let ctup = self.nat_tuple(dom, args, &gdom)?;
                let cgen = self
                    .nat_comp
                    .get(gen)
                    .ok_or_else(|| {
                        KernelError::MissingAssignment(format!("naturality comparison at `{gen}`"))
                    })?
                    .clone();
                let gact = self.tgt.act_nf(&self.gen_nf(gen)?)?;
                let mut cell =
                    self.paste_nat(&ctup, &self.src.arr_val(&tup_nf)?, &cgen, &gact, &gcod)?;
                if gcod.arity() != 1 {
                    // project the codomain coordinate
                    let proj = crate::theory::ArrNf {
                        dom: gcod.clone(),
                        cod: ObNf(vec![gcod.0[*out].clone()]),
                        terms: vec![Tm::Var(*out)],
                    };
                    let cproj = self.strict_nat(&proj)?;
                    let upto = ArrNf {
                        dom: dom.clone(),
                        cod: gcod.clone(),
                        terms: vec![Tm::App { gen: gen.clone(), args: args.clone(), out: 0 }],
                    };
                    // value of the composite up to the generator (all outputs)
                    let gval = {
                        let tupv = self.src.arr_val(&tup_nf)?;
                        U::comp_arr(&tupv, self.src.arr_gen_val(gen)?)?
                    };
                    let _ = upto;
                    let pact = self.tgt_proj_act(&gcod, *out)?;
                    cell = self.paste_nat(&cell, &gval, &cproj, &pact, &proj.cod)?;
                }
                Ok(cell)
            }
        }
    }

    fn gen_nf(&self, gen: &str) -> Result<ArrNf, KernelError> {
        self.src.theory.arr_nf(&crate::theory::agen(gen))
    }

    fn tgt_proj_act(&self, d: &ObNf, i: usize) -> Result<U::Cell, KernelError> {
        let nf = ArrNf {
            dom: d.clone(),
            cod: ObNf(vec![d.0[i].clone()]),
            terms: vec![Tm::Var(i)],
        };
        self.tgt.act_nf(&nf)
    }

    fn nat_tuple(&self, dom: &ObNf, terms: &[Tm], cod: &ObNf) -> Result<U::Cell, KernelError> {
        let _ = cod;
        match terms.split_first() {
            None => {
                // the bang arrow is strictly natural
                self.strict_nat(&ArrNf { dom: dom.clone(), cod: ObNf::unit(), terms: vec![] })
            }
            Some((first, rest)) => {
                let mut acc = self.nat_tm(dom, first)?;
                for t in rest {
                    // pairing of comparisons lands in the canonical product
                    acc = U::pair_cells(&acc, &self.nat_tm(dom, t)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// The naturality comparison at an arbitrary normalized arrow, derived
    /// from the stored comparisons at generators by pasting.
    pub fn nat_at(&self, f: &ArrNf) -> Result<U::Cell, KernelError> {
        self.nat_tuple(&f.dom, &f.terms, &f.cod)
    }
}

/// Product of two arrows over canonical products, expressed with pairing
/// and projections.
fn prod_arr<U: Universe>(f: &U::Arr, g: &U::Arr) -> Result<U::Arr, KernelError> {
    let (p1, p2) = U::proj_arrs(&U::arr_dom(f), &U::arr_dom(g));
    U::pair_arr(&U::comp_arr(&p1, f)?, &U::comp_arr(&p2, g)?)
}

/// The identity transformation on a model.
pub fn identity_transformation<U: Universe>(
    model: &LaxModel<U>,
) -> Result<TransData<U>, KernelError> {
    let mut obj_comp = BTreeMap::new();
    for g in &model.theory.ob_gens {
        obj_comp.insert(g.clone(), U::id_arr(model.ob_gen_val(g)?));
    }
    let mut pro_comp = BTreeMap::new();
    for w in &model.closure.words {
        pro_comp.insert(w.clone(), U::id_cell_pro(model.word_val(w)?));
    }
    let mut nat_comp = BTreeMap::new();
    for g in &model.theory.arr_gens {
        let cod = model.theory.ob_nf(&g.cod)?;
        let cell = U::vcomp(
            &U::id_cell_arr(model.arr_gen_val(&g.name)?),
            model.unitor(&cod)?,
        )?;
        nat_comp.insert(g.name.clone(), cell);
    }
    Ok(TransData {
        src: model.clone(),
        tgt: model.clone(),
        obj_comp,
        pro_comp,
        nat_comp,
        flavor: Flavor::Strict,
        cartesian: model.cartesian,
    })
}

/// Composite of transformations, with the composite naturality comparisons
/// built by the five-cell pasting.
pub fn compose_transformations<U: Universe>(
    a: &TransData<U>,
    b: &TransData<U>,
) -> Result<TransData<U>, KernelError> {
    if a.tgt != b.src {
        return Err(KernelError::BoundaryMismatch(
            "compose_transformations: middle model differs".into(),
        ));
    }
    let mut obj_comp = BTreeMap::new();
    for g in &a.src.theory.ob_gens {
        let f = a.obj_comp.get(g).ok_or_else(|| {
            KernelError::MissingAssignment(format!("component at `{g}`"))
        })?;
        let s = b.obj_comp.get(g).ok_or_else(|| {
            KernelError::MissingAssignment(format!("component at `{g}`"))
        })?;
        obj_comp.insert(g.clone(), U::comp_arr(f, s)?);
    }
    let mut pro_comp = BTreeMap::new();
    for w in &a.src.closure.words {
        pro_comp.insert(w.clone(), U::vcomp(a.pro_at(w)?, b.pro_at(w)?)?);
    }
    let mut nat_comp = BTreeMap::new();
    for g in &a.src.theory.arr_gens {
        let nf = a.src.theory.arr_nf(&crate::theory::agen(&g.name))?;
        let cod = a.src.theory.ob_nf(&g.cod)?;
        let ey = Word::empty(cod.clone());
        let af = a.nat_comp.get(&g.name).unwrap();
        let bf = b.nat_comp.get(&g.name).unwrap();
        // left column: the external identity on α_x then β_f
        let ax = a.obj_at(&nf.dom)?;
        let col1 = U::vcomp(&U::id_cell_arr(&ax), bf)?;
        // right column: α_f then β at the codomain unit word
        let col2 = U::vcomp(af, b.pro_at(&ey)?)?;
        let step = U::hcomp(&col1, &col2)?;
        let collapsed = U::vcomp(&step, b.tgt.laxator(&ey, &ey)?)?;
        let top = U::id_pro(&U::arr_dom(&ax));
        nat_comp.insert(
            g.name.clone(),
            U::vcomp(&U::invert(&U::lunitor(&top)?)?, &collapsed)?,
        );
    }
    let flavor = match (a.flavor, b.flavor) {
        (Flavor::Strict, Flavor::Strict) => Flavor::Strict,
        (Flavor::Pseudo | Flavor::Strict, Flavor::Pseudo | Flavor::Strict) => Flavor::Pseudo,
        (Flavor::Oplax, _) | (_, Flavor::Oplax) => Flavor::Oplax,
        _ => Flavor::Lax,
    };
    Ok(TransData {
        src: a.src.clone(),
        tgt: b.tgt.clone(),
        obj_comp,
        pro_comp,
        nat_comp,
        flavor,
        cartesian: a.cartesian && b.cartesian,
    })
}

/// Verifies all transformation axioms instance-by-instance over the closure,
/// plus the flavor-specific conditions.
pub fn check_transformation<U: Universe>(t: &TransData<U>) -> Report {
    crate::stack::with_big_stack(|| check_transformation_outer(t))
}

fn check_transformation_outer<U: Universe>(t: &TransData<U>) -> Report {
    let start = std::time::Instant::now();
    let mut r = Report::new();
    if t.flavor == Flavor::Oplax {
        r.check(
            "map/oplax",
            "flavor",
            false,
            "check oplax maps through the horizontal flip adapter (see `oplax` module)",
        );
        return r;
    }
    if let Err(e) = check_transformation_inner(t, &mut r) {
        r.check("map/internal", "evaluation", false, &e.to_string());
    }
    r.timing_ms = start.elapsed().as_millis();
    r
}

fn check_transformation_inner<U: Universe>(
    t: &TransData<U>,
    r: &mut Report,
) -> Result<(), KernelError> {
    let theory = &t.src.theory;
    if t.tgt.theory != *theory {
        r.check("map/theories", "theories", false, "source and target theories differ");
        return Ok(());
    }
    // boundary shapes of the stored data
    for g in &theory.ob_gens {
        let c = t.obj_comp.get(g).ok_or_else(|| {
            KernelError::MissingAssignment(format!("component at `{g}`"))
        })?;
        r.check(
            "map/obj-boundary",
            &format!("object `{g}`"),
            U::arr_dom(c) == *t.src.ob_gen_val(g)? && U::arr_cod(c) == *t.tgt.ob_gen_val(g)?,
            "component endpoints differ from the model values",
        );
    }
    for w in &t.src.closure.words {
        let c = t.pro_at(w)?;
        let ok = U::cell_top(c) == *t.src.word_val(w)?
            && U::cell_bot(c) == *t.tgt.word_val(w)?
            && U::cell_left(c) == t.obj_at(w.src())?
            && U::cell_right(c) == t.obj_at(w.tgt())?;
        r.check("map/pro-boundary", &format!("word `{w}`"), ok, "component frame");
        let mut vc = U::validate_cell(c);
        for e in &mut vc.entries {
            e.instance = format!("component at `{w}`: {}", e.instance);
        }
        r.merge(vc);
    }
    for g in &theory.arr_gens {
        let c = t.nat_comp.get(&g.name).ok_or_else(|| {
            KernelError::MissingAssignment(format!("naturality comparison at `{}`", g.name))
        })?;
        let nf = theory.arr_nf(&crate::theory::agen(&g.name))?;
        let top = U::id_pro(&t.src.ob_val(&nf.dom)?);
        let bot = t.tgt.word_val(&Word::empty(nf.cod.clone()))?;
        let left = U::comp_arr(&t.obj_at(&nf.dom)?, &t.tgt.arr_val(&nf)?)?;
        let right = U::comp_arr(&t.src.arr_val(&nf)?, &t.obj_at(&nf.cod)?)?;
        let ok = U::cell_top(c) == top
            && U::cell_bot(c) == *bot
            && U::cell_left(c) == left
            && U::cell_right(c) == right;
        r.check("map/nat-boundary", &format!("arrow `{}`", g.name), ok, "comparison frame");
        let mut vc = U::validate_cell(c);
        for e in &mut vc.entries {
            e.instance = format!("comparison at `{}`: {}", g.name, e.instance);
        }
        r.merge(vc);
    }
    if !r.passed() {
        return Ok(());
    }
    // (1) naturality with respect to every atomic cell
    for a in t.src.atomic_cells()? {
        let fval = t.src.ct_eval(&atomic_expr(&a.name))?;
        let gval = t.tgt.ct_eval(&atomic_expr(&a.name))?;
        let (u, v) = (&a.boundary.top, &a.boundary.bot);
        let ew = Word::empty(v.src().clone());
        let ez = Word::empty(v.tgt().clone());
        let lhs = {
            let col2 = U::vcomp(&fval, t.pro_at(v)?)?;
            let step = U::hcomp(&t.nat_at(&a.boundary.lsrc)?, &col2)?;
            let collapsed = U::vcomp(&step, t.tgt.laxator(&ew, v)?)?;
            U::vcomp(&U::invert(&U::lunitor(t.src.word_val(u)?)?)?, &collapsed)?
        };
        let rhs = {
            let col1 = U::vcomp(t.pro_at(u)?, &gval)?;
            let step = U::hcomp(&col1, &t.nat_at(&a.boundary.rtgt)?)?;
            let collapsed = U::vcomp(&step, t.tgt.laxator(v, &ez)?)?;
            U::vcomp(&U::invert(&U::runitor(t.src.word_val(u)?)?)?, &collapsed)?
        };
        r.check_eq("map/cell-nat", &format!("cell `{}`", a.name), &lhs, &rhs);
    }
    // (2) external functoriality over every split, and units
    for (u, v) in &t.src.closure.splits {
        let uv = u.concat(v)?;
        let lhs = U::vcomp(&U::hcomp(t.pro_at(u)?, t.pro_at(v)?)?, t.tgt.laxator(u, v)?)?;
        let rhs = U::vcomp(t.src.laxator(u, v)?, t.pro_at(&uv)?)?;
        r.check_eq("map/external", &format!("split ({u}, {v})"), &lhs, &rhs);
    }
    for x in &t.src.closure.objects {
        let e = Word::empty(x.clone());
        let lhs = U::vcomp(t.src.unitor(x)?, t.pro_at(&e)?)?;
        let rhs = U::vcomp(&U::id_cell_arr(&t.obj_at(x)?), t.tgt.unitor(x)?)?;
        r.check_eq("map/unit", &format!("object {x}"), &lhs, &rhs);
    }
    // (3) the derived comparisons respect the arrow equations
    for (i, (lhs, rhs)) in theory.arr_equations.iter().enumerate() {
        let (a, b) = (theory.arr_nf(lhs)?, theory.arr_nf(rhs)?);
        r.check_eq(
            "map/nat-functorial",
            &format!("arrow equation {i}"),
            &t.nat_at(&a)?,
            &t.nat_at(&b)?,
        );
    }
    // (4) flavor-specific conditions
    if t.flavor == Flavor::Strict || t.cartesian {
        for g in &theory.arr_gens {
            let nf = theory.arr_nf(&crate::theory::agen(&g.name))?;
            if t.flavor == Flavor::Strict {
                let lhs = U::comp_arr(&t.obj_at(&nf.dom)?, &t.tgt.arr_val(&nf)?)?;
                let rhs = U::comp_arr(&t.src.arr_val(&nf)?, &t.obj_at(&nf.cod)?)?;
                r.check_eq("map/strict-square", &format!("arrow `{}`", g.name), &lhs, &rhs);
                if lhs == rhs {
                    r.check_eq(
                        "map/strict-form",
                        &format!("arrow `{}`", g.name),
                        t.nat_comp.get(&g.name).unwrap(),
                        &t.strict_nat(&nf)?,
                    );
                }
            }
        }
    }
    if t.flavor == Flavor::Pseudo || t.flavor == Flavor::Strict {
        for g in &theory.arr_gens {
            check_pseudo_inverse(t, &g.name, r)?;
        }
    }
    if t.cartesian {
        check_cartesian_map(t, r)?;
    }
    Ok(())
}

pub(crate) fn atomic_expr(name: &str) -> crate::theory::CellExpr {
    if let Some(rest) = name.strip_prefix("id[") {
        crate::theory::cida(crate::theory::agen(rest.trim_end_matches(']')))
    } else {
        crate::theory::cgen(name)
    }
}

/// Solves for the inverse naturality comparison at `gen` by bounded search
/// and verifies the two inverse equations; the solution must be unique.
fn check_pseudo_inverse<U: Universe>(
    t: &TransData<U>,
    gen: &str,
    r: &mut Report,
) -> Result<(), KernelError> {
    let nf = t.src.theory.arr_nf(&crate::theory::agen(gen))?;
    let ey = Word::empty(nf.cod.clone());
    let af = t.nat_comp.get(gen).unwrap();
    let top = U::id_pro(&t.src.ob_val(&nf.dom)?);
    let bot = t.tgt.word_val(&ey)?;
    let left = U::comp_arr(&t.src.arr_val(&nf)?, &t.obj_at(&nf.cod)?)?;
    let right = U::comp_arr(&t.obj_at(&nf.dom)?, &t.tgt.arr_val(&nf)?)?;
    let lax = t.tgt.laxator(&ey, &ey)?;
    let pre = U::invert(&U::lunitor(&top)?)?;
    let gy = t.tgt.unitor(&nf.cod)?;
    let mut found = Vec::new();
    for cand in U::enumerate_cells(&top, bot, &left, &right) {
        let one = U::vcomp(&pre, &U::vcomp(&U::hcomp(af, &cand)?, lax)?)?;
        let one_rhs = U::vcomp(&U::id_cell_arr(&right), gy)?;
        let two = U::vcomp(&pre, &U::vcomp(&U::hcomp(&cand, af)?, lax)?)?;
        let two_rhs = U::vcomp(&U::id_cell_arr(&left), gy)?;
        if one == one_rhs && two == two_rhs {
            found.push(cand);
        }
    }
    match found.len() {
        0 => r.check(
            "map/pseudo-inverse",
            &format!("arrow `{gen}`"),
            false,
            "no inverse comparison cell exists",
        ),
        1 => {}
        n => r.check(
            "map/pseudo-unique",
            &format!("arrow `{gen}`"),
            false,
            &format!("{n} inverse candidates found"),
        ),
    }
    Ok(())
}

/// Computes the unique pseudo inverse comparison at an arrow generator.
pub fn pseudo_inverse<U: Universe>(
    t: &TransData<U>,
    gen: &str,
) -> Result<U::Cell, KernelError> {
    let nf = t.src.theory.arr_nf(&crate::theory::agen(gen))?;
    let ey = Word::empty(nf.cod.clone());
    let af = t.nat_comp.get(gen).ok_or_else(|| {
        KernelError::MissingAssignment(format!("naturality comparison at `{gen}`"))
    })?;
    let top = U::id_pro(&t.src.ob_val(&nf.dom)?);
    let bot = t.tgt.word_val(&ey)?;
    let left = U::comp_arr(&t.src.arr_val(&nf)?, &t.obj_at(&nf.cod)?)?;
    let right = U::comp_arr(&t.obj_at(&nf.dom)?, &t.tgt.arr_val(&nf)?)?;
    let lax = t.tgt.laxator(&ey, &ey)?;
    let pre = U::invert(&U::lunitor(&top)?)?;
    let gy = t.tgt.unitor(&nf.cod)?;
    for cand in U::enumerate_cells(&top, bot, &left, &right) {
        let one = U::vcomp(&pre, &U::vcomp(&U::hcomp(af, &cand)?, lax)?)?;
        let one_rhs = U::vcomp(&U::id_cell_arr(&right), gy)?;
        let two = U::vcomp(&pre, &U::vcomp(&U::hcomp(&cand, af)?, lax)?)?;
        let two_rhs = U::vcomp(&U::id_cell_arr(&left), gy)?;
        if one == one_rhs && two == two_rhs {
            return Ok(cand);
        }
    }
    Err(KernelError::NoPseudoInverse(gen.into()))
}

/// The product-determination law for naturality comparisons of cartesian
/// transformations: the comparison at `f × f'` is the instance paired from
/// the comparisons at `f` and `f'`.
fn check_cartesian_map<U: Universe>(t: &TransData<U>, r: &mut Report) -> Result<(), KernelError> {
    let theory = &t.src.theory;
    // strict naturality with respect to projections out of occurring products
    for d in &t.src.closure.objects {
        if d.arity() < 2 {
            continue;
        }
        for i in 0..d.arity() {
            let nf = ArrNf {
                dom: d.clone(),
                cod: ObNf(vec![d.0[i].clone()]),
                terms: vec![Tm::Var(i)],
            };
            let lhs = U::comp_arr(&t.obj_at(d)?, &t.tgt.arr_val(&nf)?)?;
            let rhs = U::comp_arr(&t.src.arr_val(&nf)?, &t.obj_at(&nf.cod)?)?;
            r.check_eq(
                "map/cartesian-proj",
                &format!("projection {i} of {d}"),
                &lhs,
                &rhs,
            );
        }
    }
    // determination at products of arrow generators
    for f in &theory.arr_gens {
        for f2 in &theory.arr_gens {
            let (nf, nf2) = (
                theory.arr_nf(&crate::theory::agen(&f.name))?,
                theory.arr_nf(&crate::theory::agen(&f2.name))?,
            );
            let dom = nf.dom.concat(&nf2.dom);
            let cod = nf.cod.concat(&nf2.cod);
            if !t.src.closure.objects.contains(&dom) || !t.src.closure.objects.contains(&cod) {
                continue;
            }
            let mut terms: Vec<Tm> = Vec::new();
            for out in 0..nf.cod.arity() {
                terms.push(Tm::App {
                    gen: f.name.clone(),
                    args: (0..nf.dom.arity()).map(Tm::Var).collect(),
                    out,
                });
            }
            for out in 0..nf2.cod.arity() {
                terms.push(Tm::App {
                    gen: f2.name.clone(),
                    args: (nf.dom.arity()..dom.arity()).map(Tm::Var).collect(),
                    out,
                });
            }
            let prod_nf = ArrNf { dom: dom.clone(), cod, terms };
            let lhs = t.nat_at(&prod_nf)?;
            // product of the two comparisons, conjugated onto the canonical
            // identity proarrow of the product object
            let xv = t.src.ob_val(&nf.dom)?;
            let yv = t.src.ob_val(&nf2.dom)?;
            let rhs = U::vcomp(
                &U::compare_id(&xv, &yv)?,
                &U::prod_cells(
                    t.nat_comp.get(&f.name).unwrap(),
                    t.nat_comp.get(&f2.name).unwrap(),
                )?,
            )?;
            r.check_eq(
                "map/cartesian-nat-prod",
                &format!("arrows `{}` × `{}`", f.name, f2.name),
                &lhs,
                &rhs,
            );
        }
    }
    Ok(())
}
