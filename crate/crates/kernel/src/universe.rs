//! The semantic universe a model takes values in: objects, arrows, proarrows
//! and cells together with products, restrictions and local coequalizers.
//! Implemented by the span target and the profunctor target so that all
//! checkers are written once.

use crate::catprof::{
    self, product_category, product_profunctor, prof_compose, CatFn, CatObj,
    ProfCell, ProfObj,
};
use crate::error::KernelError;
use crate::finset::{self, FinFn, FinSet};
use crate::report::Report;
use crate::span::{self, SpanCell, SpanPro};
use std::fmt::Debug;

pub trait Universe: Clone + PartialEq + std::fmt::Debug {
    // values cross checker-thread boundaries
    type Ob: Clone + PartialEq + Debug + Send + Sync;
    type Arr: Clone + PartialEq + Debug + Send + Sync;
    type Pro: Clone + PartialEq + Debug + Send + Sync;
    type Cell: Clone + PartialEq + Debug + Send + Sync;

    const NAME: &'static str;

    fn arr_dom(f: &Self::Arr) -> Self::Ob;
    fn arr_cod(f: &Self::Arr) -> Self::Ob;
    fn pro_src(m: &Self::Pro) -> Self::Ob;
    fn pro_tgt(m: &Self::Pro) -> Self::Ob;
    fn cell_top(c: &Self::Cell) -> Self::Pro;
    fn cell_bot(c: &Self::Cell) -> Self::Pro;
    fn cell_left(c: &Self::Cell) -> Self::Arr;
    fn cell_right(c: &Self::Cell) -> Self::Arr;

    fn id_arr(x: &Self::Ob) -> Self::Arr;
    fn comp_arr(f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr, KernelError>;
    fn id_pro(x: &Self::Ob) -> Self::Pro;
    fn hcomp_pro(m: &Self::Pro, n: &Self::Pro) -> Result<Self::Pro, KernelError>;
    fn id_cell_pro(m: &Self::Pro) -> Self::Cell;
    fn id_cell_arr(f: &Self::Arr) -> Self::Cell;
    fn vcomp(a: &Self::Cell, b: &Self::Cell) -> Result<Self::Cell, KernelError>;
    fn hcomp(a: &Self::Cell, b: &Self::Cell) -> Result<Self::Cell, KernelError>;
    /// `id_src ⊙ m ⇒ m`.
    fn lunitor(m: &Self::Pro) -> Result<Self::Cell, KernelError>;
    /// `m ⊙ id_tgt ⇒ m`.
    fn runitor(m: &Self::Pro) -> Result<Self::Cell, KernelError>;
    /// `(m ⊙ n) ⊙ p ⇒ m ⊙ (n ⊙ p)`.
    fn associator(
        m: &Self::Pro,
        n: &Self::Pro,
        p: &Self::Pro,
    ) -> Result<Self::Cell, KernelError>;
    fn invert(c: &Self::Cell) -> Result<Self::Cell, KernelError>;
    fn is_invertible(c: &Self::Cell) -> bool;

    fn terminal() -> Self::Ob;
    fn prod_ob(x: &Self::Ob, y: &Self::Ob) -> Self::Ob;
    fn proj_arrs(x: &Self::Ob, y: &Self::Ob) -> (Self::Arr, Self::Arr);
    fn pair_arr(f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr, KernelError>;
    fn bang_arr(x: &Self::Ob) -> Self::Arr;
    fn prod_pro(m: &Self::Pro, n: &Self::Pro) -> Self::Pro;
    fn proj_cells(m: &Self::Pro, n: &Self::Pro) -> (Self::Cell, Self::Cell);
    fn pair_cells(a: &Self::Cell, b: &Self::Cell) -> Result<Self::Cell, KernelError>;
    /// The unique cell `m ⇒ id_terminal` over the terminal maps.
    fn bang_cell(m: &Self::Pro) -> Self::Cell;

    /// Restriction of `n` along `(f, g)` with its cartesian cell.
    fn restriction(
        n: &Self::Pro,
        f: &Self::Arr,
        g: &Self::Arr,
    ) -> Result<(Self::Pro, Self::Cell), KernelError>;
    /// Unique factorization of `a` through a restriction cell.
    fn factor_restriction(
        a: &Self::Cell,
        res: &Self::Cell,
        h: &Self::Arr,
        k: &Self::Arr,
    ) -> Result<Self::Cell, KernelError>;

    /// Coequalizer of parallel globular cells, as the quotienting cell.
    fn local_coeq(a: &Self::Cell, b: &Self::Cell) -> Result<Self::Cell, KernelError>;
    /// Factors a globular cell with the same top through the quotient.
    fn coeq_factor(q: &Self::Cell, c: &Self::Cell) -> Result<Self::Cell, KernelError>;

    /// All cells with the given boundary, for bounded uniqueness searches.
    fn enumerate_cells(
        top: &Self::Pro,
        bot: &Self::Pro,
        left: &Self::Arr,
        right: &Self::Arr,
    ) -> Vec<Self::Cell>;

    /// Structural validity of a proarrow value (trivial for spans).
    fn validate_pro(m: &Self::Pro) -> Report;
    /// Structural validity of a cell value, with per-element entries.
    fn validate_cell(c: &Self::Cell) -> Report;

    /// Product of two cells as a cell between product proarrows.
    fn prod_cells(a: &Self::Cell, b: &Self::Cell) -> Result<Self::Cell, KernelError> {
        let (p1, p2) = Self::proj_cells(&Self::cell_top(a), &Self::cell_top(b));
        Self::pair_cells(&Self::vcomp(&p1, a)?, &Self::vcomp(&p2, b)?)
    }

    /// The canonical interchange comparison
    /// `(m × m') ⊙ (n × n') ⇒ (m ⊙ n) × (m' ⊙ n')`.
    fn compare_compose(
        m: &Self::Pro,
        m2: &Self::Pro,
        n: &Self::Pro,
        n2: &Self::Pro,
    ) -> Result<Self::Cell, KernelError> {
        let (pm, pm2) = Self::proj_cells(m, m2);
        let (pn, pn2) = Self::proj_cells(n, n2);
        Self::pair_cells(&Self::hcomp(&pm, &pn)?, &Self::hcomp(&pm2, &pn2)?)
    }

    /// The canonical comparison `id_{x×x'} ⇒ id_x × id_x'`.
    fn compare_id(x: &Self::Ob, y: &Self::Ob) -> Result<Self::Cell, KernelError> {
        let (p1, p2) = Self::proj_arrs(x, y);
        Self::pair_cells(&Self::id_cell_arr(&p1), &Self::id_cell_arr(&p2))
    }
}

/// The span target: finite sets, functions, spans and span cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanUniverse;

impl Universe for SpanUniverse {
    type Ob = FinSet;
    type Arr = FinFn;
    type Pro = SpanPro;
    type Cell = SpanCell;

    const NAME: &'static str = "span";

    fn arr_dom(f: &FinFn) -> FinSet {
        f.dom.clone()
    }
    fn arr_cod(f: &FinFn) -> FinSet {
        f.cod.clone()
    }
    fn pro_src(m: &SpanPro) -> FinSet {
        m.src.clone()
    }
    fn pro_tgt(m: &SpanPro) -> FinSet {
        m.tgt.clone()
    }
    fn cell_top(c: &SpanCell) -> SpanPro {
        c.top.clone()
    }
    fn cell_bot(c: &SpanCell) -> SpanPro {
        c.bot.clone()
    }
    fn cell_left(c: &SpanCell) -> FinFn {
        c.left.clone()
    }
    fn cell_right(c: &SpanCell) -> FinFn {
        c.right.clone()
    }

    fn id_arr(x: &FinSet) -> FinFn {
        FinFn::identity(x.clone())
    }
    fn comp_arr(f: &FinFn, g: &FinFn) -> Result<FinFn, KernelError> {
        f.then(g)
    }
    fn id_pro(x: &FinSet) -> SpanPro {
        span::id_pro(x)
    }
    fn hcomp_pro(m: &SpanPro, n: &SpanPro) -> Result<SpanPro, KernelError> {
        span::hcomp_pro(m, n)
    }
    fn id_cell_pro(m: &SpanPro) -> SpanCell {
        span::id_cell_on_pro(m)
    }
    fn id_cell_arr(f: &FinFn) -> SpanCell {
        span::id_cell_on_arrow(f)
    }
    fn vcomp(a: &SpanCell, b: &SpanCell) -> Result<SpanCell, KernelError> {
        span::vcomp_cell(a, b)
    }
    fn hcomp(a: &SpanCell, b: &SpanCell) -> Result<SpanCell, KernelError> {
        span::hcomp_cell(a, b)
    }
    fn lunitor(m: &SpanPro) -> Result<SpanCell, KernelError> {
        span::left_unitor(m)
    }
    fn runitor(m: &SpanPro) -> Result<SpanCell, KernelError> {
        span::right_unitor(m)
    }
    fn associator(m: &SpanPro, n: &SpanPro, p: &SpanPro) -> Result<SpanCell, KernelError> {
        span::associator(m, n, p)
    }
    fn invert(c: &SpanCell) -> Result<SpanCell, KernelError> {
        c.invert()
    }
    fn is_invertible(c: &SpanCell) -> bool {
        c.is_invertible()
    }

    fn terminal() -> FinSet {
        FinSet::new(1)
    }
    fn prod_ob(x: &FinSet, y: &FinSet) -> FinSet {
        finset::product(x, y).0
    }
    fn proj_arrs(x: &FinSet, y: &FinSet) -> (FinFn, FinFn) {
        let (_, p1, p2) = finset::product(x, y);
        (p1, p2)
    }
    fn pair_arr(f: &FinFn, g: &FinFn) -> Result<FinFn, KernelError> {
        finset::pairing(f, g)
    }
    fn bang_arr(x: &FinSet) -> FinFn {
        FinFn::bang(x.clone())
    }
    fn prod_pro(m: &SpanPro, n: &SpanPro) -> SpanPro {
        span::product_pro(m, n)
    }
    fn proj_cells(m: &SpanPro, n: &SpanPro) -> (SpanCell, SpanCell) {
        span::proj_cells(m, n)
    }
    fn pair_cells(a: &SpanCell, b: &SpanCell) -> Result<SpanCell, KernelError> {
        span::pair_cells(a, b)
    }
    fn bang_cell(m: &SpanPro) -> SpanCell {
        SpanCell {
            top: m.clone(),
            bot: span::id_pro(&FinSet::new(1)),
            left: FinFn::bang(m.src.clone()),
            right: FinFn::bang(m.tgt.clone()),
            mid: FinFn::bang(m.apex.clone()),
        }
    }

    fn restriction(
        n: &SpanPro,
        f: &FinFn,
        g: &FinFn,
    ) -> Result<(SpanPro, SpanCell), KernelError> {
        span::restriction(n, f, g)
    }
    fn factor_restriction(
        a: &SpanCell,
        res: &SpanCell,
        h: &FinFn,
        k: &FinFn,
    ) -> Result<SpanCell, KernelError> {
        span::factor_through_restriction(a, res, h, k)
    }

    fn local_coeq(a: &SpanCell, b: &SpanCell) -> Result<SpanCell, KernelError> {
        span::local_coequalizer(a, b)
    }
    fn coeq_factor(q: &SpanCell, c: &SpanCell) -> Result<SpanCell, KernelError> {
        span::factor_through_coequalizer(q, c)
    }

    fn enumerate_cells(
        top: &SpanPro,
        bot: &SpanPro,
        left: &FinFn,
        right: &FinFn,
    ) -> Vec<SpanCell> {
        let mut out = Vec::new();
        for mid in finset::all_functions(&top.apex, &bot.apex) {
            let c = SpanCell {
                top: top.clone(),
                bot: bot.clone(),
                left: left.clone(),
                right: right.clone(),
                mid,
            };
            if c.validate().is_ok() {
                out.push(c);
            }
        }
        out
    }

    fn validate_pro(_m: &SpanPro) -> Report {
        Report::new()
    }

    fn validate_cell(c: &SpanCell) -> Report {
        let mut r = Report::new();
        if c.left.dom != c.top.src
            || c.left.cod != c.bot.src
            || c.right.dom != c.top.tgt
            || c.right.cod != c.bot.tgt
            || c.mid.dom != c.top.apex
            || c.mid.cod != c.bot.apex
        {
            r.check("cell/frame", "boundary shapes", false, "cell frame mismatch");
            return r;
        }
        for e in c.boundary_violations() {
            r.check(
                "cell/boundary",
                &format!("apex element {e}"),
                false,
                "boundary squares do not commute at this element",
            );
        }
        r
    }
}

/// The profunctor target: finite categories, functors, profunctors and
/// equivariant cells, with composition by coequalizer and chosen units given
/// by hom-profunctors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfUniverse;

fn hom_unchecked(c: &CatObj) -> ProfObj {
    ProfObj {
        srccat: c.clone(),
        tgtcat: c.clone(),
        het: c.hom.clone(),
        lact: c.comp.clone(),
        ract: c.comp.clone(),
    }
}

impl Universe for ProfUniverse {
    type Ob = CatObj;
    type Arr = CatFn;
    type Pro = ProfObj;
    type Cell = ProfCell;

    const NAME: &'static str = "prof";

    fn arr_dom(f: &CatFn) -> CatObj {
        f.src.clone()
    }
    fn arr_cod(f: &CatFn) -> CatObj {
        f.tgt.clone()
    }
    fn pro_src(m: &ProfObj) -> CatObj {
        m.srccat.clone()
    }
    fn pro_tgt(m: &ProfObj) -> CatObj {
        m.tgtcat.clone()
    }
    fn cell_top(c: &ProfCell) -> ProfObj {
        c.top.clone()
    }
    fn cell_bot(c: &ProfCell) -> ProfObj {
        c.bot.clone()
    }
    fn cell_left(c: &ProfCell) -> CatFn {
        c.srcfn.clone()
    }
    fn cell_right(c: &ProfCell) -> CatFn {
        c.tgtfn.clone()
    }

    fn id_arr(x: &CatObj) -> CatFn {
        CatFn::identity(x)
    }
    fn comp_arr(f: &CatFn, g: &CatFn) -> Result<CatFn, KernelError> {
        f.then(g)
    }
    fn id_pro(x: &CatObj) -> ProfObj {
        hom_unchecked(x)
    }
    fn hcomp_pro(m: &ProfObj, n: &ProfObj) -> Result<ProfObj, KernelError> {
        Ok(prof_compose(m, n)?.0)
    }
    fn id_cell_pro(m: &ProfObj) -> ProfCell {
        ProfCell::identity(m)
    }
    fn id_cell_arr(f: &CatFn) -> ProfCell {
        ProfCell {
            top: hom_unchecked(&f.src),
            bot: hom_unchecked(&f.tgt),
            srcfn: f.clone(),
            tgtfn: f.clone(),
            mid: f.hom_map.clone(),
        }
    }
    fn vcomp(a: &ProfCell, b: &ProfCell) -> Result<ProfCell, KernelError> {
        a.vcomp(b)
    }
    fn hcomp(a: &ProfCell, b: &ProfCell) -> Result<ProfCell, KernelError> {
        catprof::prof_cell_compose(a, b)
    }
    fn lunitor(m: &ProfObj) -> Result<ProfCell, KernelError> {
        let unit = hom_unchecked(&m.srccat);
        let (comp, coeq) = prof_compose(&unit, m)?;
        let reps = finset::coequalizer_reps(&coeq.mid);
        let pairs = span::hcomp_pairs(&unit.het, &m.het);
        let mut map = Vec::with_capacity(comp.het.apex.size);
        for &t in &reps {
            let (h, e) = pairs[t];
            map.push(m.act_left(h, e).expect("acts"));
        }
        Ok(ProfCell {
            top: comp.clone(),
            bot: m.clone(),
            srcfn: CatFn::identity(&m.srccat),
            tgtfn: CatFn::identity(&m.tgtcat),
            mid: FinFn::make(comp.het.apex.clone(), m.het.apex.clone(), map)?,
        })
    }
    fn runitor(m: &ProfObj) -> Result<ProfCell, KernelError> {
        let unit = hom_unchecked(&m.tgtcat);
        let (comp, coeq) = prof_compose(m, &unit)?;
        let reps = finset::coequalizer_reps(&coeq.mid);
        let pairs = span::hcomp_pairs(&m.het, &unit.het);
        let mut map = Vec::with_capacity(comp.het.apex.size);
        for &t in &reps {
            let (e, h) = pairs[t];
            map.push(m.act_right(e, h).expect("acts"));
        }
        Ok(ProfCell {
            top: comp.clone(),
            bot: m.clone(),
            srcfn: CatFn::identity(&m.srccat),
            tgtfn: CatFn::identity(&m.tgtcat),
            mid: FinFn::make(comp.het.apex.clone(), m.het.apex.clone(), map)?,
        })
    }
    fn associator(m: &ProfObj, n: &ProfObj, p: &ProfObj) -> Result<ProfCell, KernelError> {
        let (mn, qmn) = prof_compose(m, n)?;
        let (np, qnp) = prof_compose(n, p)?;
        let (lhs, ql) = prof_compose(&mn, p)?;
        let (rhs, qr) = prof_compose(m, &np)?;
        let lreps = finset::coequalizer_reps(&ql.mid);
        let mnreps = finset::coequalizer_reps(&qmn.mid);
        let lpairs = span::hcomp_pairs(&mn.het, &p.het);
        let mnpairs = span::hcomp_pairs(&m.het, &n.het);
        let _nppairs = span::hcomp_pairs(&n.het, &p.het);
        let _rpairs = span::hcomp_pairs(&m.het, &np.het);
        let mut map = Vec::with_capacity(lhs.het.apex.size);
        for &t in &lreps {
            let (mn_i, pe) = lpairs[t];
            let (me, ne) = mnpairs[mnreps[mn_i]];
            let np_raw = span::hcomp_index(&n.het, &p.het, ne, pe)
                .ok_or_else(|| KernelError::BoundaryMismatch("prof associator".into()))?;
            let np_cls = qnp.mid.map[np_raw];
            let r_raw = span::hcomp_index(&m.het, &np.het, me, np_cls)
                .ok_or_else(|| KernelError::BoundaryMismatch("prof associator".into()))?;
            map.push(qr.mid.map[r_raw]);
        }
        Ok(ProfCell {
            top: lhs.clone(),
            bot: rhs.clone(),
            srcfn: CatFn::identity(&m.srccat),
            tgtfn: CatFn::identity(&p.tgtcat),
            mid: FinFn::make(lhs.het.apex.clone(), rhs.het.apex.clone(), map)?,
        })
    }
    fn invert(c: &ProfCell) -> Result<ProfCell, KernelError> {
        if !Self::is_invertible(c) {
            return Err(KernelError::NotInvertible);
        }
        Ok(ProfCell {
            top: c.bot.clone(),
            bot: c.top.clone(),
            srcfn: CatFn {
                src: c.srcfn.tgt.clone(),
                tgt: c.srcfn.src.clone(),
                ob_map: c.srcfn.ob_map.inverse()?,
                hom_map: c.srcfn.hom_map.inverse()?,
            },
            tgtfn: CatFn {
                src: c.tgtfn.tgt.clone(),
                tgt: c.tgtfn.src.clone(),
                ob_map: c.tgtfn.ob_map.inverse()?,
                hom_map: c.tgtfn.hom_map.inverse()?,
            },
            mid: c.mid.inverse()?,
        })
    }
    fn is_invertible(c: &ProfCell) -> bool {
        c.mid.is_bijection()
            && c.srcfn.ob_map.is_bijection()
            && c.srcfn.hom_map.is_bijection()
            && c.tgtfn.ob_map.is_bijection()
            && c.tgtfn.hom_map.is_bijection()
    }

    fn terminal() -> CatObj {
        catprof::discrete_category(&FinSet::new(1))
    }
    fn prod_ob(x: &CatObj, y: &CatObj) -> CatObj {
        product_category(x, y)
    }
    fn proj_arrs(x: &CatObj, y: &CatObj) -> (CatFn, CatFn) {
        let p = product_category(x, y);
        let (_, o1, o2) = finset::product(&x.ob, &y.ob);
        let (_, h1, h2) = finset::product(&x.hom.apex, &y.hom.apex);
        (
            CatFn { src: p.clone(), tgt: x.clone(), ob_map: o1, hom_map: h1 },
            CatFn { src: p, tgt: y.clone(), ob_map: o2, hom_map: h2 },
        )
    }
    fn pair_arr(f: &CatFn, g: &CatFn) -> Result<CatFn, KernelError> {
        catprof::pair_catfn(f, g)
    }
    fn bang_arr(x: &CatObj) -> CatFn {
        CatFn {
            src: x.clone(),
            tgt: Self::terminal(),
            ob_map: FinFn::bang(x.ob.clone()),
            hom_map: FinFn::bang(x.hom.apex.clone()),
        }
    }
    fn prod_pro(m: &ProfObj, n: &ProfObj) -> ProfObj {
        product_profunctor(m, n)
    }
    fn proj_cells(m: &ProfObj, n: &ProfObj) -> (ProfCell, ProfCell) {
        let p = product_profunctor(m, n);
        let (f1, f2) = Self::proj_arrs(&m.srccat, &n.srccat);
        let (g1, g2) = Self::proj_arrs(&m.tgtcat, &n.tgtcat);
        let (_, h1, h2) = finset::product(&m.het.apex, &n.het.apex);
        (
            ProfCell { top: p.clone(), bot: m.clone(), srcfn: f1, tgtfn: g1, mid: h1 },
            ProfCell { top: p, bot: n.clone(), srcfn: f2, tgtfn: g2, mid: h2 },
        )
    }
    fn pair_cells(a: &ProfCell, b: &ProfCell) -> Result<ProfCell, KernelError> {
        if a.top != b.top {
            return Err(KernelError::BoundaryMismatch("pair_cells: tops differ".into()));
        }
        Ok(ProfCell {
            top: a.top.clone(),
            bot: product_profunctor(&a.bot, &b.bot),
            srcfn: catprof::pair_catfn(&a.srcfn, &b.srcfn)?,
            tgtfn: catprof::pair_catfn(&a.tgtfn, &b.tgtfn)?,
            mid: finset::pairing(&a.mid, &b.mid)?,
        })
    }
    fn bang_cell(m: &ProfObj) -> ProfCell {
        let t = Self::terminal();
        ProfCell {
            top: m.clone(),
            bot: hom_unchecked(&t),
            srcfn: Self::bang_arr(&m.srccat),
            tgtfn: Self::bang_arr(&m.tgtcat),
            mid: FinFn::bang(m.het.apex.clone()),
        }
    }

    fn restriction(
        n: &ProfObj,
        f: &CatFn,
        g: &CatFn,
    ) -> Result<(ProfObj, ProfCell), KernelError> {
        if f.tgt != n.srccat || g.tgt != n.tgtcat {
            return Err(KernelError::BoundaryMismatch("prof restriction: feet".into()));
        }
        let (het, rcell) = span::restriction(&n.het, &f.ob_map, &g.ob_map)?;
        let triples = span::restriction_triples(&n.het, &f.ob_map, &g.ob_map);
        let lookup = |a: usize, c: usize, b: usize| -> Result<usize, KernelError> {
            triples
                .iter()
                .position(|&t| t == (a, c, b))
                .ok_or_else(|| KernelError::BoundaryMismatch("prof restriction lookup".into()))
        };
        let lp = span::hcomp_pro(&f.src.hom, &het)?;
        let lpairs = span::hcomp_pairs(&f.src.hom, &het);
        let mut lact = Vec::with_capacity(lpairs.len());
        for &(u, t) in &lpairs {
            let (a, c, b) = triples[t];
            let _ = a;
            let acted = n
                .act_left(f.hom_map.map[u], c)
                .ok_or_else(|| KernelError::BoundaryMismatch("prof restriction lact".into()))?;
            lact.push(lookup(f.src.src(u), acted, b)?);
        }
        let rp = span::hcomp_pro(&het, &g.src.hom)?;
        let rpairs = span::hcomp_pairs(&het, &g.src.hom);
        let mut ract = Vec::with_capacity(rpairs.len());
        for &(t, v) in &rpairs {
            let (a, c, b) = triples[t];
            let _ = b;
            let acted = n
                .act_right(c, g.hom_map.map[v])
                .ok_or_else(|| KernelError::BoundaryMismatch("prof restriction ract".into()))?;
            ract.push(lookup(a, acted, g.src.tgt(v))?);
        }
        let restricted = ProfObj {
            srccat: f.src.clone(),
            tgtcat: g.src.clone(),
            het: het.clone(),
            lact: FinFn::make(lp.apex, het.apex.clone(), lact)?,
            ract: FinFn::make(rp.apex, het.apex, ract)?,
        };
        let cell = ProfCell {
            top: restricted.clone(),
            bot: n.clone(),
            srcfn: f.clone(),
            tgtfn: g.clone(),
            mid: rcell.mid,
        };
        Ok((restricted, cell))
    }
    fn factor_restriction(
        a: &ProfCell,
        res: &ProfCell,
        h: &CatFn,
        k: &CatFn,
    ) -> Result<ProfCell, KernelError> {
        let span_res = SpanCell {
            top: res.top.het.clone(),
            bot: res.bot.het.clone(),
            left: res.srcfn.ob_map.clone(),
            right: res.tgtfn.ob_map.clone(),
            mid: res.mid.clone(),
        };
        let fac =
            span::factor_through_restriction(&a.as_span_cell(), &span_res, &h.ob_map, &k.ob_map)?;
        Ok(ProfCell {
            top: a.top.clone(),
            bot: res.top.clone(),
            srcfn: h.clone(),
            tgtfn: k.clone(),
            mid: fac.mid,
        })
    }

    fn local_coeq(a: &ProfCell, b: &ProfCell) -> Result<ProfCell, KernelError> {
        if a.srcfn != b.srcfn || a.tgtfn != b.tgtfn || a.top != b.top || a.bot != b.bot {
            return Err(KernelError::BoundaryMismatch("prof local_coeq: boundaries".into()));
        }
        let q = span::local_coequalizer(&a.as_span_cell(), &b.as_span_cell())?;
        let reps = finset::coequalizer_reps(&q.mid);
        let n = &a.bot;
        // transport the actions to the quotient through representatives
        let lp = span::hcomp_pro(&n.srccat.hom, &q.bot)?;
        let lpairs = span::hcomp_pairs(&n.srccat.hom, &q.bot);
        let mut lact = Vec::with_capacity(lpairs.len());
        for &(f, t) in &lpairs {
            let e = reps[t];
            lact.push(q.mid.map[n.act_left(f, e).ok_or_else(|| {
                KernelError::NotEquivariant("quotient does not respect the left action".into())
            })?]);
        }
        let rp = span::hcomp_pro(&q.bot, &n.tgtcat.hom)?;
        let rpairs = span::hcomp_pairs(&q.bot, &n.tgtcat.hom);
        let mut ract = Vec::with_capacity(rpairs.len());
        for &(t, g) in &rpairs {
            let e = reps[t];
            ract.push(q.mid.map[n.act_right(e, g).ok_or_else(|| {
                KernelError::NotEquivariant("quotient does not respect the right action".into())
            })?]);
        }
        let quotient = ProfObj {
            srccat: n.srccat.clone(),
            tgtcat: n.tgtcat.clone(),
            het: q.bot.clone(),
            lact: FinFn::make(lp.apex, q.bot.apex.clone(), lact)?,
            ract: FinFn::make(rp.apex, q.bot.apex.clone(), ract)?,
        };
        Ok(ProfCell {
            top: n.clone(),
            bot: quotient,
            srcfn: CatFn::identity(&n.srccat),
            tgtfn: CatFn::identity(&n.tgtcat),
            mid: q.mid,
        })
    }
    fn coeq_factor(q: &ProfCell, c: &ProfCell) -> Result<ProfCell, KernelError> {
        if q.top != c.top {
            return Err(KernelError::BoundaryMismatch("prof coeq_factor: tops".into()));
        }
        let mid = finset::coequalizer_factor(&q.mid, &c.mid)?;
        Ok(ProfCell {
            top: q.bot.clone(),
            bot: c.bot.clone(),
            srcfn: c.srcfn.clone(),
            tgtfn: c.tgtfn.clone(),
            mid,
        })
    }

    fn enumerate_cells(
        top: &ProfObj,
        bot: &ProfObj,
        left: &CatFn,
        right: &CatFn,
    ) -> Vec<ProfCell> {
        let mut out = Vec::new();
        for mid in finset::all_functions(&top.het.apex, &bot.het.apex) {
            let c = ProfCell {
                top: top.clone(),
                bot: bot.clone(),
                srcfn: left.clone(),
                tgtfn: right.clone(),
                mid,
            };
            if c.validate().passed() {
                out.push(c);
            }
        }
        out
    }

    fn validate_pro(m: &ProfObj) -> Report {
        m.validate()
    }

    fn validate_cell(c: &ProfCell) -> Report {
        c.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::poset2;

    #[test]
    fn prof_unitors_are_invertible() {
        let h = hom_unchecked(&poset2());
        let l = ProfUniverse::lunitor(&h).unwrap();
        assert!(l.mid.is_bijection());
        assert!(l.validate().passed());
        let r = ProfUniverse::runitor(&h).unwrap();
        assert!(r.mid.is_bijection());
    }

    #[test]
    fn prof_associator_is_invertible() {
        let h = hom_unchecked(&poset2());
        let a = ProfUniverse::associator(&h, &h, &h).unwrap();
        assert!(a.mid.is_bijection());
        assert!(a.validate().passed());
    }

    #[test]
    fn prof_restriction_matches_elementwise_oracle() {
        // restrict the hom profunctor of poset2 along the inclusion of the
        // discrete two-object category
        let p = poset2();
        let d = catprof::discrete_category(&FinSet::new(2));
        let incl = CatFn {
            src: d.clone(),
            tgt: p.clone(),
            ob_map: FinFn::identity(FinSet::new(2)),
            hom_map: FinFn::make(FinSet::new(2), FinSet::new(3), vec![0, 1]).unwrap(),
        };
        assert!(incl.validate().passed());
        let h = hom_unchecked(&p);
        let (r, cell) = ProfUniverse::restriction(&h, &incl, &ProfUniverse::id_arr(&p)).unwrap();
        // oracle: elements are triples (a, f, b) with a = src f, b = tgt f
        let mut count = 0;
        for a in 0..2 {
            for f in 0..3usize {
                for b in 0..2 {
                    if p.src(f) == a && p.tgt(f) == b {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(r.het.apex.size, count);
        assert!(r.validate().passed());
        assert!(cell.validate().passed());
    }

    #[test]
    fn span_compare_cells_invertible() {
        let m = SpanPro::from_tables(2, 2, vec![0, 1], vec![1, 1]).unwrap();
        let n = SpanPro::from_tables(2, 2, vec![1, 0], vec![0, 1]).unwrap();
        let c = SpanUniverse::compare_compose(&m, &m, &n, &n).unwrap();
        assert!(SpanUniverse::is_invertible(&c));
    }
}
