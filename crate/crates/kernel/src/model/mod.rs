//! Lax models of a presented theory, their evaluator, and the exhaustive
//! law checkers for laxness and product preservation.

pub mod modulation;
pub mod transform;

use crate::error::KernelError;
use crate::report::Report;
use crate::theory::{
    triple_splits, ArrNf, Boundary, CellExpr, LaxClosure, ObNf, TheoryPresentation, Tm, Word,
};
use crate::universe::Universe;
use std::collections::BTreeMap;

/// Generator assignments of a lax model: values for object, arrow and cell
/// generators; proarrow values for every closure word; laxators for every
/// adjacent splitting; unitors for every closure object. The hom action of
/// every arrow generator (the value on its external identity cell) is stored
/// in `arr_act`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxModel<U: Universe> {
    pub theory: TheoryPresentation,
    pub closure: LaxClosure,
    pub ob: BTreeMap<String, U::Ob>,
    pub arr: BTreeMap<String, U::Arr>,
    pub arr_act: BTreeMap<String, U::Cell>,
    pub words: BTreeMap<Word, U::Pro>,
    pub cells: BTreeMap<String, U::Cell>,
    pub laxators: BTreeMap<(Word, Word), U::Cell>,
    pub unitors: BTreeMap<ObNf, U::Cell>,
    pub unitary: bool,
    pub cartesian: bool,
}

/// An atomic cell of the presented theory: a cell generator, or the external
/// identity cell of an arrow generator.
#[derive(Clone, Debug)]
pub struct AtomicCell {
    pub name: String,
    pub boundary: Boundary,
}

impl<U: Universe> LaxModel<U> {
    pub fn new(theory: TheoryPresentation) -> Result<Self, KernelError> {
        let closure = theory.laxator_closure()?;
        Ok(LaxModel {
            theory,
            closure,
            ob: BTreeMap::new(),
            arr: BTreeMap::new(),
            arr_act: BTreeMap::new(),
            words: BTreeMap::new(),
            cells: BTreeMap::new(),
            laxators: BTreeMap::new(),
            unitors: BTreeMap::new(),
            unitary: false,
            cartesian: false,
        })
    }

    // -- lookups ---------------------------------------------------------

    pub fn ob_gen_val(&self, name: &str) -> Result<&U::Ob, KernelError> {
        self.ob
            .get(name)
            .ok_or_else(|| KernelError::MissingAssignment(format!("object `{name}`")))
    }

    pub fn arr_gen_val(&self, name: &str) -> Result<&U::Arr, KernelError> {
        self.arr
            .get(name)
            .ok_or_else(|| KernelError::MissingAssignment(format!("arrow `{name}`")))
    }

    pub fn word_val(&self, w: &Word) -> Result<&U::Pro, KernelError> {
        self.words
            .get(w)
            .ok_or_else(|| KernelError::MissingAssignment(format!("word `{w}`")))
    }

    pub fn cell_gen_val(&self, name: &str) -> Result<&U::Cell, KernelError> {
        self.cells
            .get(name)
            .ok_or_else(|| KernelError::MissingAssignment(format!("cell `{name}`")))
    }

    pub fn laxator(&self, u: &Word, v: &Word) -> Result<&U::Cell, KernelError> {
        self.laxators
            .get(&(u.clone(), v.clone()))
            .ok_or_else(|| KernelError::MissingAssignment(format!("laxator ({u}, {v})")))
    }

    pub fn unitor(&self, x: &ObNf) -> Result<&U::Cell, KernelError> {
        self.unitors
            .get(x)
            .ok_or_else(|| KernelError::MissingAssignment(format!("unitor at {x}")))
    }

    // -- object and arrow evaluation --------------------------------------

    /// Value of a normalized object term: the canonical left-fold product of
    /// the generator values.
    pub fn ob_val(&self, o: &ObNf) -> Result<U::Ob, KernelError> {
        match o.0.split_first() {
            None => Ok(U::terminal()),
            Some((head, rest)) => {
                let mut acc = self.ob_gen_val(head)?.clone();
                for s in rest {
                    acc = U::prod_ob(&acc, self.ob_gen_val(s)?);
                }
                Ok(acc)
            }
        }
    }

    /// Canonical projection arrow selecting coordinate `i` of `o`.
    fn proj_arr_at(&self, o: &ObNf, i: usize) -> Result<U::Arr, KernelError> {
        let k = o.arity();
        assert!(i < k);
        if k == 1 {
            return Ok(U::id_arr(&self.ob_val(o)?));
        }
        let front = ObNf(o.0[..k - 1].to_vec());
        let last = ObNf(o.0[k - 1..].to_vec());
        let (p1, p2) = U::proj_arrs(&self.ob_val(&front)?, &self.ob_val(&last)?);
        if i == k - 1 {
            Ok(p2)
        } else {
            U::comp_arr(&p1, &self.proj_arr_at(&front, i)?)
        }
    }

    fn tm_val(&self, dom: &ObNf, t: &Tm) -> Result<U::Arr, KernelError> {
        match t {
            Tm::Var(i) => self.proj_arr_at(dom, *i),
            Tm::App { gen, args, out } => {
                let g = self
                    .theory
                    .arr_gen(gen)
                    .ok_or_else(|| KernelError::TypeError(format!("unknown arrow `{gen}`")))?;
                let gdom = self.theory.ob_nf(&g.dom)?;
                let gcod = self.theory.ob_nf(&g.cod)?;
                let tup = self.tuple_val(dom, args, &gdom)?;
                let mut val = U::comp_arr(&tup, self.arr_gen_val(gen)?)?;
                if gcod.arity() != 1 {
                    val = U::comp_arr(&val, &self.proj_arr_at(&gcod, *out)?)?;
                }
                Ok(val)
            }
        }
    }

    /// Left-fold pairing of component values into the canonical product.
    fn tuple_val(&self, dom: &ObNf, terms: &[Tm], cod: &ObNf) -> Result<U::Arr, KernelError> {
        assert_eq!(terms.len(), cod.arity());
        match terms.split_first() {
            None => Ok(U::bang_arr(&self.ob_val(dom)?)),
            Some((first, rest)) => {
                let mut acc = self.tm_val(dom, first)?;
                for t in rest {
                    acc = U::pair_arr(&acc, &self.tm_val(dom, t)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// Value of a normalized arrow.
    pub fn arr_val(&self, f: &ArrNf) -> Result<U::Arr, KernelError> {
        self.tuple_val(&f.dom, &f.terms, &f.cod)
    }

    // -- proarrow word evaluation -----------------------------------------

    /// The `⊙`-fold of the per-atom values of a word; the empty word is the
    /// identity proarrow.
    pub fn split_val(&self, w: &Word) -> Result<U::Pro, KernelError> {
        if w.is_empty() {
            return Ok(U::id_pro(&self.ob_val(w.src())?));
        }
        let mut acc = self.word_val(&w.subword(0, 1))?.clone();
        for i in 1..w.len() {
            acc = U::hcomp_pro(&acc, self.word_val(&w.subword(i, i + 1))?)?;
        }
        Ok(acc)
    }

    /// The canonical collapse `split(w) ⇒ F(w)` built from the unitor (empty
    /// word) or a left fold of laxators.
    pub fn collapse(&self, w: &Word) -> Result<U::Cell, KernelError> {
        if w.is_empty() {
            return Ok(self.unitor(w.src())?.clone());
        }
        let mut acc = U::id_cell_pro(self.word_val(&w.subword(0, 1))?);
        for i in 1..w.len() {
            let atom = w.subword(i, i + 1);
            let step = U::hcomp(&acc, &U::id_cell_pro(self.word_val(&atom)?))?;
            acc = U::vcomp(&step, self.laxator(&w.subword(0, i), &atom)?)?;
        }
        Ok(acc)
    }

    /// Canonical iso `split(u ++ v) ⇒ split(u) ⊙ split(v)` from associators
    /// and unitors.
    fn refold(&self, u: &Word, v: &Word) -> Result<U::Cell, KernelError> {
        let su = self.split_val(u)?;
        let sv = self.split_val(v)?;
        if v.is_empty() {
            return U::invert(&U::runitor(&su)?);
        }
        if u.is_empty() {
            return U::invert(&U::lunitor(&sv)?);
        }
        if v.len() == 1 {
            return Ok(U::id_cell_pro(&U::hcomp_pro(&su, &sv)?));
        }
        let front = v.subword(0, v.len() - 1);
        let last = v.subword(v.len() - 1, v.len());
        let lastv = self.word_val(&last)?;
        let step = U::hcomp(&self.refold(u, &front)?, &U::id_cell_pro(lastv))?;
        let assoc = U::associator(&su, &self.split_val(&front)?, lastv)?;
        U::vcomp(&step, &assoc)
    }

    // -- hom actions -------------------------------------------------------

    /// The projection `F(ε_d) ⇒ F(ε_{d_i})` on hom values; requires the
    /// stored word values at product objects to be the canonical products.
    fn hom_proj(&self, d: &ObNf, i: usize) -> Result<U::Cell, KernelError> {
        let k = d.arity();
        assert!(i < k);
        let val = self.word_val(&Word::empty(d.clone()))?;
        if k == 1 {
            return Ok(U::id_cell_pro(val));
        }
        let front = ObNf(d.0[..k - 1].to_vec());
        let last = ObNf(d.0[k - 1..].to_vec());
        let fval = self.word_val(&Word::empty(front.clone()))?;
        let lval = self.word_val(&Word::empty(last))?;
        if *val != U::prod_pro(fval, lval) {
            return Err(KernelError::TypeError(format!(
                "hom value at {d} is not the canonical product of its factors"
            )));
        }
        let (p1, p2) = U::proj_cells(fval, lval);
        if i == k - 1 {
            Ok(p2)
        } else {
            U::vcomp(&p1, &self.hom_proj(&front, i)?)
        }
    }

    fn act_tm(&self, dom: &ObNf, t: &Tm) -> Result<U::Cell, KernelError> {
        match t {
            Tm::Var(i) => self.hom_proj(dom, *i),
            Tm::App { gen, args, out } => {
                let g = self
                    .theory
                    .arr_gen(gen)
                    .ok_or_else(|| KernelError::TypeError(format!("unknown arrow `{gen}`")))?;
                let gdom = self.theory.ob_nf(&g.dom)?;
                let gcod = self.theory.ob_nf(&g.cod)?;
                let tup = self.act_tuple(dom, args, &gdom)?;
                let act = self.arr_act.get(gen).ok_or_else(|| {
                    KernelError::MissingAssignment(format!("hom action of arrow `{gen}`"))
                })?;
                let mut val = U::vcomp(&tup, act)?;
                if gcod.arity() != 1 {
                    val = U::vcomp(&val, &self.hom_proj(&gcod, *out)?)?;
                }
                Ok(val)
            }
        }
    }

    fn act_tuple(&self, dom: &ObNf, terms: &[Tm], cod: &ObNf) -> Result<U::Cell, KernelError> {
        assert_eq!(terms.len(), cod.arity());
        let dval = self.word_val(&Word::empty(dom.clone()))?;
        match terms.split_first() {
            None => {
                let target = self.word_val(&Word::empty(ObNf::unit()))?;
                if *target != U::id_pro(&U::terminal()) {
                    return Err(KernelError::TypeError(
                        "hom value at the unit object is not the identity proarrow".into(),
                    ));
                }
                Ok(U::bang_cell(dval))
            }
            Some((first, rest)) => {
                let mut acc = self.act_tm(dom, first)?;
                for t in rest {
                    acc = U::pair_cells(&acc, &self.act_tm(dom, t)?)?;
                }
                // the accumulated bottom is the canonical product; it must
                // agree with the stored hom value at the codomain
                let stored = self.word_val(&Word::empty(cod.clone()))?;
                if U::cell_bot(&acc) != *stored {
                    return Err(KernelError::TypeError(format!(
                        "hom value at {cod} is not the canonical product of its factors"
                    )));
                }
                Ok(acc)
            }
        }
    }

    /// The hom action `F(ε_dom) ⇒ F(ε_cod)` of a normalized arrow (the model
    /// value on its external identity cell).
    pub fn act_nf(&self, f: &ArrNf) -> Result<U::Cell, KernelError> {
        self.act_tuple(&f.dom, &f.terms, &f.cod)
    }

    // -- cell expression evaluation ----------------------------------------

    /// Evaluation with collapsed boundaries: a cell `F(top) ⇒ F(bot)`.
    /// Fails on pastings that horizontally compose under a vertical
    /// composition, which have no collapsed-top value.
    pub fn ct_eval(&self, e: &CellExpr) -> Result<U::Cell, KernelError> {
        match e {
            CellExpr::Gen(n) => Ok(self.cell_gen_val(n)?.clone()),
            CellExpr::IdcArrow(f) => self.act_nf(&self.theory.arr_nf(f)?),
            CellExpr::IdcPro(m) => Ok(U::id_cell_pro(self.word_val(&self.theory.pro_nf(m)?)?)),
            CellExpr::Vcomp(a, b) => U::vcomp(&self.ct_eval(a)?, &self.ct_eval(b)?),
            CellExpr::Hcomp(_, _) => Err(KernelError::NonLaxEvaluable(
                "horizontal composite has no collapsed-top value".into(),
            )),
            CellExpr::Pairc(a, b) => {
                let cell = U::pair_cells(&self.ct_eval(a)?, &self.ct_eval(b)?)?;
                let bot = self.theory.typecheck_expr(e)?.bot;
                if let Ok(stored) = self.word_val(&bot) {
                    if U::cell_bot(&cell) != *stored {
                        return Err(KernelError::TypeError(format!(
                            "pairing lands outside the stored value of `{bot}`"
                        )));
                    }
                }
                Ok(cell)
            }
            CellExpr::Projc1(m, m2) | CellExpr::Projc2(m, m2) => {
                let u = self.theory.pro_nf(m)?;
                let v = self.theory.pro_nf(m2)?;
                let (uval, vval) = (self.word_val(&u)?, self.word_val(&v)?);
                let top = crate::theory::prod_words(&u, &v);
                if *self.word_val(&top)? != U::prod_pro(uval, vval) {
                    return Err(KernelError::TypeError(format!(
                        "product word `{top}` is not stored canonically"
                    )));
                }
                let (p1, p2) = U::proj_cells(uval, vval);
                Ok(if matches!(e, CellExpr::Projc1(..)) { p1 } else { p2 })
            }
        }
    }

    /// Evaluation with fully split top: a cell `split(top) ⇒ F(bot)`, with
    /// laxators and unitors inserted canonically.
    pub fn split_eval(&self, e: &CellExpr) -> Result<U::Cell, KernelError> {
        match e {
            CellExpr::Vcomp(a, b) => U::vcomp(&self.split_eval(a)?, &self.ct_eval(b)?),
            CellExpr::Hcomp(a, b) => {
                let ba = self.theory.typecheck_expr(a)?;
                let bb = self.theory.typecheck_expr(b)?;
                let pre = self.refold(&ba.top, &bb.top)?;
                let step = U::hcomp(&self.split_eval(a)?, &self.split_eval(b)?)?;
                let post = self.laxator(&ba.bot, &bb.bot)?;
                U::vcomp(&U::vcomp(&pre, &step)?, post)
            }
            other => {
                let top = self.theory.typecheck_expr(other)?.top;
                U::vcomp(&self.collapse(&top)?, &self.ct_eval(other)?)
            }
        }
    }

    /// Evaluates both sides of an equation in a common form.
    pub fn eval_equation(
        &self,
        lhs: &CellExpr,
        rhs: &CellExpr,
    ) -> Result<(U::Cell, U::Cell), KernelError> {
        match (self.ct_eval(lhs), self.ct_eval(rhs)) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            (Err(KernelError::NonLaxEvaluable(_)), _) | (_, Err(KernelError::NonLaxEvaluable(_))) => {
                Ok((self.split_eval(lhs)?, self.split_eval(rhs)?))
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }

    // -- atomic cells ------------------------------------------------------

    /// Cell generators plus the external identity cells of arrow generators,
    /// with their boundaries.
    pub fn atomic_cells(&self) -> Result<Vec<AtomicCell>, KernelError> {
        let mut out = Vec::new();
        for g in &self.theory.cell_gens {
            let boundary = self.theory.typecheck_expr(&CellExpr::Gen(g.name.clone()))?;
            out.push(AtomicCell { name: g.name.clone(), boundary });
        }
        for g in &self.theory.arr_gens {
            let nf = self.theory.arr_nf(&crate::theory::agen(&g.name))?;
            out.push(AtomicCell {
                name: format!("id[{}]", g.name),
                boundary: Boundary {
                    top: Word::empty(nf.dom.clone()),
                    bot: Word::empty(nf.cod.clone()),
                    lsrc: nf.clone(),
                    rtgt: nf,
                },
            });
        }
        Ok(out)
    }

    fn atomic_val(&self, a: &AtomicCell) -> Result<U::Cell, KernelError> {
        if let Some(rest) = a.name.strip_prefix("id[") {
            let gen = rest.trim_end_matches(']');
            self.arr_act
                .get(gen)
                .cloned()
                .ok_or_else(|| KernelError::MissingAssignment(format!("hom action of `{gen}`")))
        } else {
            Ok(self.cell_gen_val(&a.name)?.clone())
        }
    }
}

/// Whether the unit-word data of a model is identity data, i.e. whether the
/// model is unitary. Constructors derive the flag from this predicate so
/// that translations can restore it canonically.
pub fn unitary_data<U: Universe>(m: &LaxModel<U>) -> bool {
    m.closure.objects.iter().all(|d| {
        let e = Word::empty(d.clone());
        match (m.words.get(&e), m.unitors.get(d), m.ob_val(d)) {
            (Some(w), Some(u), Ok(ob)) => {
                *w == U::id_pro(&ob) && *u == U::id_cell_pro(w)
            }
            _ => false,
        }
    })
}

// ---------------------------------------------------------------------------
// the lax checker

/// Verifies every lax-functor law instance expressible within the closure:
/// well-formedness of all assignments, naturality of unitors, equivariance
/// (laxator naturality against atomic cells), laxator associativity, unit
/// laws, and every equation of the theory.
pub fn check_lax<U: Universe>(model: &LaxModel<U>) -> Report {
    crate::stack::with_big_stack(|| check_lax_inner(model))
}

fn check_lax_inner<U: Universe>(model: &LaxModel<U>) -> Report {
    let start = std::time::Instant::now();
    let mut r = Report::new();
    if let Err(e) = check_structure(model, &mut r) {
        r.check("lax/structure", "assignments", false, &e.to_string());
        r.timing_ms = start.elapsed().as_millis();
        return r;
    }
    if !r.passed() {
        // boundary problems make law instances meaningless
        r.timing_ms = start.elapsed().as_millis();
        return r;
    }
    if let Err(e) = check_laws(model, &mut r) {
        r.check("lax/internal", "law evaluation", false, &e.to_string());
    }
    r.timing_ms = start.elapsed().as_millis();
    r
}

fn check_structure<U: Universe>(
    model: &LaxModel<U>,
    r: &mut Report,
) -> Result<(), KernelError> {
    let t = &model.theory;
    for g in &t.ob_gens {
        model.ob_gen_val(g)?;
    }
    for g in &t.arr_gens {
        let f = model.arr_gen_val(&g.name)?;
        let dom = model.ob_val(&t.ob_nf(&g.dom)?)?;
        let cod = model.ob_val(&t.ob_nf(&g.cod)?)?;
        r.check(
            "model/arrow-boundary",
            &format!("arrow `{}`", g.name),
            U::arr_dom(f) == dom && U::arr_cod(f) == cod,
            "arrow value endpoints differ from the object values",
        );
    }
    for w in &model.closure.words {
        let v = model.word_val(w)?;
        let src = model.ob_val(w.src())?;
        let tgt = model.ob_val(w.tgt())?;
        r.check(
            "model/word-feet",
            &format!("word `{w}`"),
            U::pro_src(v) == src && U::pro_tgt(v) == tgt,
            "proarrow value feet differ from the object values",
        );
        let mut vp = U::validate_pro(v);
        for e in &mut vp.entries {
            e.instance = format!("word `{w}`: {}", e.instance);
        }
        r.merge(vp);
    }
    let framed = |name: &str,
                      cell: &U::Cell,
                      top: &U::Pro,
                      bot: &U::Pro,
                      left: &U::Arr,
                      right: &U::Arr,
                      r: &mut Report| {
        r.check(
            "model/cell-frame",
            name,
            U::cell_top(cell) == *top
                && U::cell_bot(cell) == *bot
                && U::cell_left(cell) == *left
                && U::cell_right(cell) == *right,
            "stored cell frame differs from its declared boundary",
        );
        let mut vc = U::validate_cell(cell);
        for e in &mut vc.entries {
            e.instance = format!("{name}: {}", e.instance);
        }
        r.merge(vc);
    };
    for g in &t.cell_gens {
        let cell = model.cell_gen_val(&g.name)?;
        let b = t.typecheck_expr(&CellExpr::Gen(g.name.clone()))?;
        framed(
            &format!("cell `{}`", g.name),
            cell,
            model.word_val(&b.top)?,
            model.word_val(&b.bot)?,
            &model.arr_val(&b.lsrc)?,
            &model.arr_val(&b.rtgt)?,
            r,
        );
    }
    for g in &t.arr_gens {
        let act = model
            .arr_act
            .get(&g.name)
            .ok_or_else(|| KernelError::MissingAssignment(format!("hom action of `{}`", g.name)))?;
        let dom = t.ob_nf(&g.dom)?;
        let cod = t.ob_nf(&g.cod)?;
        let f = model.arr_gen_val(&g.name)?;
        framed(
            &format!("hom action `{}`", g.name),
            act,
            model.word_val(&Word::empty(dom))?,
            model.word_val(&Word::empty(cod))?,
            f,
            f,
            r,
        );
    }
    for (u, v) in &model.closure.splits {
        let lax = model.laxator(u, v)?;
        let uv = u.concat(v)?;
        let top = U::hcomp_pro(model.word_val(u)?, model.word_val(v)?)?;
        let x = U::id_arr(&model.ob_val(u.src())?);
        let y = U::id_arr(&model.ob_val(v.tgt())?);
        framed(
            &format!("laxator ({u}, {v})"),
            lax,
            &top,
            model.word_val(&uv)?,
            &x,
            &y,
            r,
        );
    }
    for x in &model.closure.objects {
        let unitor = model.unitor(x)?;
        let id = U::id_pro(&model.ob_val(x)?);
        let e = U::id_arr(&model.ob_val(x)?);
        framed(
            &format!("unitor at {x}"),
            unitor,
            &id,
            model.word_val(&Word::empty(x.clone()))?,
            &e,
            &e,
            r,
        );
        if model.unitary {
            r.check(
                "model/unitary",
                &format!("unitor at {x}"),
                *model.word_val(&Word::empty(x.clone()))? == id && *unitor == U::id_cell_pro(&id),
                "unitary flag set but the unitor is not an identity",
            );
        }
    }
    Ok(())
}

fn check_laws<U: Universe>(model: &LaxModel<U>, r: &mut Report) -> Result<(), KernelError> {
    let t = &model.theory;
    // naturality of unitors against arrow generators
    for g in &t.arr_gens {
        let dom = t.ob_nf(&g.dom)?;
        let cod = t.ob_nf(&g.cod)?;
        let lhs = U::vcomp(model.unitor(&dom)?, model.arr_act.get(&g.name).unwrap())?;
        let rhs = U::vcomp(
            &U::id_cell_arr(model.arr_gen_val(&g.name)?),
            model.unitor(&cod)?,
        )?;
        r.check_eq("lax/unitor-nat", &format!("arrow `{}`", g.name), &lhs, &rhs);
    }
    // laxator naturality (equivariance) against every atomic cell
    for a in model.atomic_cells()? {
        let val = model.atomic_val(&a)?;
        let (u, v) = (&a.boundary.top, &a.boundary.bot);
        // pair (γ, id over the right boundary)
        {
            let act = model.act_nf(&a.boundary.rtgt)?;
            let eu = Word::empty(u.tgt().clone());
            let ev = Word::empty(v.tgt().clone());
            let lhs = U::vcomp(&U::hcomp(&val, &act)?, model.laxator(v, &ev)?)?;
            let rhs = U::vcomp(model.laxator(u, &eu)?, &val)?;
            r.check_eq("lax/laxator-nat", &format!("({}, id-right)", a.name), &lhs, &rhs);
        }
        // pair (id over the left boundary, γ)
        {
            let act = model.act_nf(&a.boundary.lsrc)?;
            let eu = Word::empty(u.src().clone());
            let ev = Word::empty(v.src().clone());
            let lhs = U::vcomp(&U::hcomp(&act, &val)?, model.laxator(&ev, v)?)?;
            let rhs = U::vcomp(model.laxator(&eu, u)?, &val)?;
            r.check_eq("lax/laxator-nat", &format!("(id-left, {})", a.name), &lhs, &rhs);
        }
    }
    // laxator associativity on every triple split
    for w in &model.closure.words {
        for (u, v, z) in triple_splits(w) {
            let uv = u.concat(&v)?;
            let vz = v.concat(&z)?;
            let (fu, fv, fz) = (model.word_val(&u)?, model.word_val(&v)?, model.word_val(&z)?);
            let lhs = U::vcomp(
                &U::hcomp(model.laxator(&u, &v)?, &U::id_cell_pro(fz))?,
                model.laxator(&uv, &z)?,
            )?;
            let rhs = U::vcomp(
                &U::vcomp(
                    &U::associator(fu, fv, fz)?,
                    &U::hcomp(&U::id_cell_pro(fu), model.laxator(&v, &z)?)?,
                )?,
                model.laxator(&u, &vz)?,
            )?;
            r.check_eq(
                "lax/laxator-assoc",
                &format!("split ({u} | {v} | {z})"),
                &lhs,
                &rhs,
            );
        }
    }
    // unit laws against unitors
    for w in &model.closure.words {
        let fw = model.word_val(w)?;
        let es = Word::empty(w.src().clone());
        let lhs = U::vcomp(
            &U::hcomp(model.unitor(w.src())?, &U::id_cell_pro(fw))?,
            model.laxator(&es, w)?,
        )?;
        r.check_eq("lax/unit-left", &format!("word `{w}`"), &lhs, &U::lunitor(fw)?);
        let et = Word::empty(w.tgt().clone());
        let rhs = U::vcomp(
            &U::hcomp(&U::id_cell_pro(fw), model.unitor(w.tgt())?)?,
            model.laxator(w, &et)?,
        )?;
        r.check_eq("lax/unit-right", &format!("word `{w}`"), &rhs, &U::runitor(fw)?);
    }
    // arrow equations: both the object values and the hom actions must agree
    for (i, (lhs, rhs)) in t.arr_equations.iter().enumerate() {
        let (a, b) = (t.arr_nf(lhs)?, t.arr_nf(rhs)?);
        r.check_eq(
            "lax/arr-eq",
            &format!("arrow equation {i} (values)"),
            &model.arr_val(&a)?,
            &model.arr_val(&b)?,
        );
        r.check_eq(
            "lax/arr-eq",
            &format!("arrow equation {i} (hom actions)"),
            &model.act_nf(&a)?,
            &model.act_nf(&b)?,
        );
    }
    // cell equations
    for (i, (lhs, rhs)) in t.equations.iter().enumerate() {
        let (a, b) = model.eval_equation(lhs, rhs)?;
        r.check_eq("lax/cell-eq", &format!("equation {i}"), &a, &b);
    }
    Ok(())
}

/// Verifies product preservation: stored hom values at product objects are
/// the canonical products and the unit object is sent to the identity
/// proarrow, and the laxators and unitors at product objects are determined
/// by the products of the factors.
pub fn check_cartesian<U: Universe>(model: &LaxModel<U>) -> Report {
    crate::stack::with_big_stack(|| check_cartesian_outer(model))
}

fn check_cartesian_outer<U: Universe>(model: &LaxModel<U>) -> Report {
    let start = std::time::Instant::now();
    let mut r = Report::new();
    if !model.theory.cartesian {
        r.check("cartesian/theory", "theory flags", false, "theory is not flagged cartesian");
        return r;
    }
    if let Err(e) = check_cartesian_inner(model, &mut r) {
        r.check("cartesian/internal", "evaluation", false, &e.to_string());
    }
    r.timing_ms = start.elapsed().as_millis();
    r
}

fn check_cartesian_inner<U: Universe>(
    model: &LaxModel<U>,
    r: &mut Report,
) -> Result<(), KernelError> {
    for d in &model.closure.objects {
        let stored = model.word_val(&Word::empty(d.clone()))?;
        match d.arity() {
            0 => {
                // φ: the unit object value is the one-point identity
                r.check(
                    "cartesian/phi",
                    "unit object",
                    *stored == U::id_pro(&U::terminal()),
                    "hom value at the unit object is not the terminal identity proarrow",
                );
            }
            1 => {}
            k => {
                // Φ: the comparison onto the product of factors is invertible;
                // with canonical choices this is equality on the nose
                let front = ObNf(d.0[..k - 1].to_vec());
                let last = ObNf(d.0[k - 1..].to_vec());
                let fv = model.word_val(&Word::empty(front.clone()))?;
                let lv = model.word_val(&Word::empty(last.clone()))?;
                r.check(
                    "cartesian/Phi",
                    &format!("object {d}"),
                    *stored == U::prod_pro(fv, lv),
                    "hom value at a product object is not the canonical product",
                );
                if *stored != U::prod_pro(fv, lv) {
                    continue;
                }
                // laxator determination: the composition laxator at the
                // product object is the product of the factors' laxators,
                // conjugated by the canonical interchange comparison
                let ed = Word::empty(d.clone());
                let (ef, el) = (Word::empty(front.clone()), Word::empty(last.clone()));
                let lhs = model.laxator(&ed, &ed)?;
                let cmp = U::compare_compose(fv, lv, fv, lv)?;
                let rhs = U::vcomp(
                    &cmp,
                    &U::prod_cells(model.laxator(&ef, &ef)?, model.laxator(&el, &el)?)?,
                )?;
                r.check_eq("cartesian/laxator-prod", &format!("object {d}"), lhs, &rhs);
                // unitor determination
                let xv = model.ob_val(&front)?;
                let yv = model.ob_val(&last)?;
                let lhs = model.unitor(d)?;
                let rhs = U::vcomp(
                    &U::compare_id(&xv, &yv)?,
                    &U::prod_cells(model.unitor(&front)?, model.unitor(&last)?)?,
                )?;
                r.check_eq("cartesian/unitor-prod", &format!("object {d}"), lhs, &rhs);
            }
        }
    }
    Ok(())
}
