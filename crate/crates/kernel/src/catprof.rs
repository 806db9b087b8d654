//! Category objects and profunctor objects inside the double category of
//! spans — concretely, finite categories and profunctors — together with the
//! bimodule calculus: composition by coequalizer, products, and the
//! object-forgetting counit.

use crate::error::KernelError;
use crate::finset::{pair_index, pairing, product, FinFn, FinSet};
use crate::report::Report;
use crate::span::{
    self, hcomp_index, hcomp_pairs, hcomp_pro, id_pro, local_coequalizer, product_pro, SpanCell,
    SpanPro,
};
use serde::{Deserialize, Serialize};

/// A category object: a span monoid `hom: ob ⇸ ob` with unit and composition
/// tables. Composition is stored totally on the apex of `hom ⊙ hom`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatObj {
    pub ob: FinSet,
    pub hom: SpanPro,
    /// `υ`: identity-assigning map `ob → hom.apex`.
    pub unit: FinFn,
    /// `μ`: composition `(hom ⊙ hom).apex → hom.apex`.
    pub comp: FinFn,
}

impl CatObj {
    /// Source object of a morphism.
    pub fn src(&self, f: usize) -> usize {
        self.hom.left.map[f]
    }

    /// Target object of a morphism.
    pub fn tgt(&self, f: usize) -> usize {
        self.hom.right.map[f]
    }

    /// Composite of a composable pair, in diagrammatic order.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        hcomp_index(&self.hom, &self.hom, f, g).map(|k| self.comp.map[k])
    }

    pub fn identity(&self, o: usize) -> usize {
        self.unit.map[o]
    }

    /// All composable pairs `(f, g)` in canonical order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        hcomp_pairs(&self.hom, &self.hom)
    }
}

/// The discrete category on a finite set.
pub fn discrete_category(x: &FinSet) -> CatObj {
    let hom = id_pro(x);
    let hh = hcomp_pro(&hom, &hom).expect("identity spans compose");
    let pairs = hcomp_pairs(&hom, &hom);
    let comp = FinFn::make(
        hh.apex.clone(),
        hom.apex.clone(),
        pairs.iter().map(|&(a, _)| a).collect(),
    )
    .expect("diagonal collapse");
    CatObj { ob: x.clone(), hom, unit: FinFn::identity(x.clone()), comp }
}

/// Checks every category axiom by exhaustive enumeration.
pub fn validate_category(c: &CatObj) -> Report {
    let start = std::time::Instant::now();
    let mut report = Report::new();
    if c.hom.src != c.ob || c.hom.tgt != c.ob {
        report.check("cat/hom-feet", "hom span", false, "hom feet differ from ob");
        return report;
    }
    if c.unit.dom != c.ob || c.unit.cod != c.hom.apex {
        report.check("cat/unit-shape", "unit table", false, "unit table shape");
        return report;
    }
    let hh = hcomp_pro(&c.hom, &c.hom).expect("hom composes with itself");
    if c.comp.dom != hh.apex || c.comp.cod != c.hom.apex {
        report.check("cat/comp-shape", "comp table", false, "comp table shape");
        return report;
    }
    // unit is globular: both legs of unit(o) are o
    for o in 0..c.ob.size {
        let e = c.unit.map[o];
        report.check(
            "cat/unit-legs",
            &format!("object {o}"),
            c.src(e) == o && c.tgt(e) == o,
            &format!("unit({o}) = {e} has legs ({}, {})", c.src(e), c.tgt(e)),
        );
    }
    // comp is globular: legs of f·g are (src f, tgt g)
    let pairs = c.composable_pairs();
    for (k, &(f, g)) in pairs.iter().enumerate() {
        let h = c.comp.map[k];
        report.check(
            "cat/comp-legs",
            &format!("pair ({f},{g})"),
            c.src(h) == c.src(f) && c.tgt(h) == c.tgt(g),
            &format!("composite {h} has legs ({}, {})", c.src(h), c.tgt(h)),
        );
    }
    // unit laws
    for f in 0..c.hom.apex.size {
        let l = c.identity(c.src(f));
        let r = c.identity(c.tgt(f));
        if let Some(lf) = c.compose(l, f) {
            report.check_eq("cat/left-unit", &format!("morphism {f}"), &lf, &f);
        }
        if let Some(fr) = c.compose(f, r) {
            report.check_eq("cat/right-unit", &format!("morphism {f}"), &fr, &f);
        }
    }
    // associativity
    for f in 0..c.hom.apex.size {
        for g in 0..c.hom.apex.size {
            if c.tgt(f) != c.src(g) {
                continue;
            }
            for h in 0..c.hom.apex.size {
                if c.tgt(g) != c.src(h) {
                    continue;
                }
                let lhs = c.compose(c.compose(f, g).unwrap(), h).unwrap();
                let rhs = c.compose(f, c.compose(g, h).unwrap()).unwrap();
                report.check_eq("cat/assoc", &format!("triple ({f},{g},{h})"), &lhs, &rhs);
            }
        }
    }
    report.timing_ms = start.elapsed().as_millis();
    report
}

/// A functor between category objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatFn {
    pub src: CatObj,
    pub tgt: CatObj,
    pub ob_map: FinFn,
    pub hom_map: FinFn,
}

impl CatFn {
    pub fn identity(c: &CatObj) -> CatFn {
        CatFn {
            src: c.clone(),
            tgt: c.clone(),
            ob_map: FinFn::identity(c.ob.clone()),
            hom_map: FinFn::identity(c.hom.apex.clone()),
        }
    }

    pub fn then(&self, other: &CatFn) -> Result<CatFn, KernelError> {
        if self.tgt != other.src {
            return Err(KernelError::BoundaryMismatch("CatFn::then".into()));
        }
        Ok(CatFn {
            src: self.src.clone(),
            tgt: other.tgt.clone(),
            ob_map: self.ob_map.then(&other.ob_map)?,
            hom_map: self.hom_map.then(&other.hom_map)?,
        })
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let (s, t) = (&self.src, &self.tgt);
        for f in 0..s.hom.apex.size {
            let ff = self.hom_map.map[f];
            report.check(
                "catfn/legs",
                &format!("morphism {f}"),
                t.src(ff) == self.ob_map.map[s.src(f)] && t.tgt(ff) == self.ob_map.map[s.tgt(f)],
                &format!("image {ff}"),
            );
        }
        for o in 0..s.ob.size {
            let lhs = self.hom_map.map[s.identity(o)];
            let rhs = t.identity(self.ob_map.map[o]);
            report.check_eq("catfn/unit", &format!("object {o}"), &lhs, &rhs);
        }
        for &(f, g) in &s.composable_pairs() {
            let lhs = self.hom_map.map[s.compose(f, g).unwrap()];
            let rhs = t
                .compose(self.hom_map.map[f], self.hom_map.map[g])
                .expect("functor image composable");
            report.check_eq("catfn/comp", &format!("pair ({f},{g})"), &lhs, &rhs);
        }
        report
    }
}

/// A profunctor object: a span `het` between the object parts of two
/// categories, with left and right action tables stored totally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfObj {
    pub srccat: CatObj,
    pub tgtcat: CatObj,
    pub het: SpanPro,
    /// `λ`: `(srccat.hom ⊙ het).apex → het.apex`.
    pub lact: FinFn,
    /// `ρ`: `(het ⊙ tgtcat.hom).apex → het.apex`.
    pub ract: FinFn,
}

impl ProfObj {
    pub fn act_left(&self, f: usize, e: usize) -> Option<usize> {
        hcomp_index(&self.srccat.hom, &self.het, f, e).map(|k| self.lact.map[k])
    }

    pub fn act_right(&self, e: usize, g: usize) -> Option<usize> {
        hcomp_index(&self.het, &self.tgtcat.hom, e, g).map(|k| self.ract.map[k])
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let (a, b) = (&self.srccat, &self.tgtcat);
        if self.het.src != a.ob || self.het.tgt != b.ob {
            report.check("prof/feet", "het span", false, "het feet differ from categories");
            return report;
        }
        // action cells are globular: legs are preserved
        for f in 0..a.hom.apex.size {
            for e in 0..self.het.apex.size {
                if a.tgt(f) != self.het.left.map[e] {
                    continue;
                }
                let fe = self.act_left(f, e).unwrap();
                report.check(
                    "prof/lact-legs",
                    &format!("({f},{e})"),
                    self.het.left.map[fe] == a.src(f) && self.het.right.map[fe] == self.het.right.map[e],
                    &format!("λ({f},{e}) = {fe}"),
                );
                // unit action is the identity
                if f == a.identity(a.tgt(f)) {
                    report.check_eq("prof/lact-unit", &format!("element {e}"), &fe, &e);
                }
            }
        }
        for e in 0..self.het.apex.size {
            for g in 0..b.hom.apex.size {
                if self.het.right.map[e] != b.src(g) {
                    continue;
                }
                let eg = self.act_right(e, g).unwrap();
                report.check(
                    "prof/ract-legs",
                    &format!("({e},{g})"),
                    self.het.left.map[eg] == self.het.left.map[e] && self.het.right.map[eg] == b.tgt(g),
                    &format!("ρ({e},{g}) = {eg}"),
                );
                if g == b.identity(b.src(g)) {
                    report.check_eq("prof/ract-unit", &format!("element {e}"), &eg, &e);
                }
            }
        }
        // associativity of each action and middle compatibility
        for e in 0..self.het.apex.size {
            for f in 0..a.hom.apex.size {
                if a.tgt(f) != self.het.left.map[e] {
                    continue;
                }
                for f2 in 0..a.hom.apex.size {
                    if a.tgt(f2) != a.src(f) {
                        continue;
                    }
                    let lhs = self.act_left(a.compose(f2, f).unwrap(), e).unwrap();
                    let rhs = self.act_left(f2, self.act_left(f, e).unwrap()).unwrap();
                    report.check_eq("prof/lact-assoc", &format!("({f2},{f},{e})"), &lhs, &rhs);
                }
                for g in 0..b.hom.apex.size {
                    if self.het.right.map[e] != b.src(g) {
                        continue;
                    }
                    let lhs = self.act_right(self.act_left(f, e).unwrap(), g).unwrap();
                    let rhs = self.act_left(f, self.act_right(e, g).unwrap()).unwrap();
                    report.check_eq("prof/middle", &format!("({f},{e},{g})"), &lhs, &rhs);
                }
            }
            for g in 0..b.hom.apex.size {
                if self.het.right.map[e] != b.src(g) {
                    continue;
                }
                for g2 in 0..b.hom.apex.size {
                    if b.tgt(g) != b.src(g2) {
                        continue;
                    }
                    let lhs = self.act_right(e, b.compose(g, g2).unwrap()).unwrap();
                    let rhs = self.act_right(self.act_right(e, g).unwrap(), g2).unwrap();
                    report.check_eq("prof/ract-assoc", &format!("({e},{g},{g2})"), &lhs, &rhs);
                }
            }
        }
        report
    }
}

/// The hom-profunctor of a category: `het = hom` with both actions given by
/// composition. This is the chosen identity proarrow on `c`.
pub fn hom_profunctor(c: &CatObj) -> Result<ProfObj, KernelError> {
    let v = validate_category(c);
    if !v.passed() {
        return Err(KernelError::InvalidCategory(format!(
            "{} violation(s), first: {}",
            v.entries.len(),
            v.entries[0].law
        )));
    }
    Ok(ProfObj {
        srccat: c.clone(),
        tgtcat: c.clone(),
        het: c.hom.clone(),
        lact: c.comp.clone(),
        ract: c.comp.clone(),
    })
}

/// A map of profunctors: a span cell whose boundary functions extend to
/// functors and whose middle map is equivariant for both actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfCell {
    pub top: ProfObj,
    pub bot: ProfObj,
    pub srcfn: CatFn,
    pub tgtfn: CatFn,
    pub mid: FinFn,
}

impl ProfCell {
    pub fn identity(p: &ProfObj) -> ProfCell {
        ProfCell {
            top: p.clone(),
            bot: p.clone(),
            srcfn: CatFn::identity(&p.srccat),
            tgtfn: CatFn::identity(&p.tgtcat),
            mid: FinFn::identity(p.het.apex.clone()),
        }
    }

    /// The underlying span cell.
    pub fn as_span_cell(&self) -> SpanCell {
        SpanCell {
            top: self.top.het.clone(),
            bot: self.bot.het.clone(),
            left: self.srcfn.ob_map.clone(),
            right: self.tgtfn.ob_map.clone(),
            mid: self.mid.clone(),
        }
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        if let Err(e) = self.as_span_cell().validate() {
            report.check("profcell/square", "underlying cell", false, &e.to_string());
            return report;
        }
        // equivariance on both sides
        let (t, b) = (&self.top, &self.bot);
        for f in 0..t.srccat.hom.apex.size {
            for e in 0..t.het.apex.size {
                if t.srccat.tgt(f) != t.het.left.map[e] {
                    continue;
                }
                let lhs = self.mid.map[t.act_left(f, e).unwrap()];
                let rhs = b
                    .act_left(self.srcfn.hom_map.map[f], self.mid.map[e])
                    .expect("image pair acts");
                report.check_eq("profcell/lequi", &format!("({f},{e})"), &lhs, &rhs);
            }
        }
        for e in 0..t.het.apex.size {
            for g in 0..t.tgtcat.hom.apex.size {
                if t.het.right.map[e] != t.tgtcat.src(g) {
                    continue;
                }
                let lhs = self.mid.map[t.act_right(e, g).unwrap()];
                let rhs = b
                    .act_right(self.mid.map[e], self.tgtfn.hom_map.map[g])
                    .expect("image pair acts");
                report.check_eq("profcell/requi", &format!("({e},{g})"), &lhs, &rhs);
            }
        }
        report
    }

    pub fn vcomp(&self, other: &ProfCell) -> Result<ProfCell, KernelError> {
        if self.bot != other.top {
            return Err(KernelError::BoundaryMismatch("ProfCell::vcomp".into()));
        }
        Ok(ProfCell {
            top: self.top.clone(),
            bot: other.bot.clone(),
            srcfn: self.srcfn.then(&other.srcfn)?,
            tgtfn: self.tgtfn.then(&other.tgtfn)?,
            mid: self.mid.then(&other.mid)?,
        })
    }
}

/// Composite of two profunctors by coequalizing the middle actions, together
/// with the quotienting cell out of `P.het ⊙ Q.het`.
pub fn prof_compose(p: &ProfObj, q: &ProfObj) -> Result<(ProfObj, SpanCell), KernelError> {
    if p.tgtcat != q.srccat {
        return Err(KernelError::BoundaryMismatch("prof_compose: middle category".into()));
    }
    let b = &p.tgtcat;
    let w2 = hcomp_pro(&p.het, &q.het)?;
    let ph = hcomp_pro(&p.het, &b.hom)?;
    let w3 = hcomp_pro(&ph, &q.het)?;
    let outer = hcomp_pairs(&ph, &q.het);
    let inner = hcomp_pairs(&p.het, &b.hom);
    // (ρ ⊙ 1) and (1 ⊙ λ) as parallel globular cells w3 ⇒ w2
    let mut rmap = Vec::with_capacity(outer.len());
    let mut lmap = Vec::with_capacity(outer.len());
    for &(ph_idx, qe) in &outer {
        let (pe, h) = inner[ph_idx];
        let r = p.act_right(pe, h).expect("composable by construction");
        rmap.push(
            hcomp_index(&p.het, &q.het, r, qe)
                .ok_or_else(|| KernelError::BoundaryMismatch("prof_compose: ρ⊙1".into()))?,
        );
        let l = q.act_left(h, qe).expect("composable by construction");
        lmap.push(
            hcomp_index(&p.het, &q.het, pe, l)
                .ok_or_else(|| KernelError::BoundaryMismatch("prof_compose: 1⊙λ".into()))?,
        );
    }
    let ids = FinFn::identity(w2.src.clone());
    let idt = FinFn::identity(w2.tgt.clone());
    let rcell = SpanCell::make(
        w3.clone(),
        w2.clone(),
        ids.clone(),
        idt.clone(),
        FinFn::make(w3.apex.clone(), w2.apex.clone(), rmap)?,
    )?;
    let lcell = SpanCell::make(
        w3,
        w2.clone(),
        ids,
        idt,
        FinFn::make(w3_apex_of(&rcell), w2.apex.clone(), lmap)?,
    )?;
    let coeq = local_coequalizer(&rcell, &lcell)?;
    let het = coeq.bot.clone();
    let reps = crate::finset::coequalizer_reps(&coeq.mid);
    // induced actions through canonical representatives
    let lpairs = hcomp_pairs(&p.srccat.hom, &het);
    let mut lact = Vec::with_capacity(lpairs.len());
    for &(f, t) in &lpairs {
        let (pe, qe) = hcomp_pairs(&p.het, &q.het)[reps[t]];
        let fpe = p.act_left(f, pe).expect("acts");
        let idx = hcomp_index(&p.het, &q.het, fpe, qe)
            .ok_or_else(|| KernelError::BoundaryMismatch("prof_compose: induced λ".into()))?;
        lact.push(coeq.mid.map[idx]);
    }
    let rpairs = hcomp_pairs(&het, &q.tgtcat.hom);
    let mut ract = Vec::with_capacity(rpairs.len());
    for &(t, g) in &rpairs {
        let (pe, qe) = hcomp_pairs(&p.het, &q.het)[reps[t]];
        let qeg = q.act_right(qe, g).expect("acts");
        let idx = hcomp_index(&p.het, &q.het, pe, qeg)
            .ok_or_else(|| KernelError::BoundaryMismatch("prof_compose: induced ρ".into()))?;
        ract.push(coeq.mid.map[idx]);
    }
    let lp = hcomp_pro(&p.srccat.hom, &het)?;
    let rp = hcomp_pro(&het, &q.tgtcat.hom)?;
    let composite = ProfObj {
        srccat: p.srccat.clone(),
        tgtcat: q.tgtcat.clone(),
        het,
        lact: FinFn::make(lp.apex.clone(), coeq.bot.apex.clone(), lact)?,
        ract: FinFn::make(rp.apex.clone(), coeq.bot.apex.clone(), ract)?,
    };
    Ok((composite, coeq))
}

fn w3_apex_of(rcell: &SpanCell) -> FinSet {
    rcell.top.apex.clone()
}

/// External composition of profunctor cells: the unique cell through the
/// composition coequalizers, computed by restriction-and-factorization.
pub fn prof_cell_compose(a: &ProfCell, b: &ProfCell) -> Result<ProfCell, KernelError> {
    if a.tgtfn != b.srcfn {
        return Err(KernelError::BoundaryMismatch("prof_cell_compose: shared functor".into()));
    }
    let (top, tq) = prof_compose(&a.top, &b.top)?;
    let (bot, bq) = prof_compose(&a.bot, &b.bot)?;
    // pointwise composite on het pairs, then factored through the quotient
    let ab = span::hcomp_cell(&a.as_span_cell(), &b.as_span_cell())?;
    let pushed = span::vcomp_cell(&ab, &bq)?;
    // pushed coequalizes the top quotient: factor through it
    let mid = crate::finset::coequalizer_factor(&tq.mid, &pushed.mid)?;
    let cell = ProfCell {
        top,
        bot,
        srcfn: a.srcfn.clone(),
        tgtfn: b.tgtfn.clone(),
        mid,
    };
    let v = cell.validate();
    if !v.passed() {
        return Err(KernelError::NotEquivariant(format!(
            "prof_cell_compose output: {}",
            v.entries[0].law
        )));
    }
    Ok(cell)
}

/// Componentwise product of category objects.
pub fn product_category(c: &CatObj, c2: &CatObj) -> CatObj {
    let (ob, _, _) = product(&c.ob, &c2.ob);
    let hom = product_pro(&c.hom, &c2.hom);
    let unit = {
        let mut map = Vec::with_capacity(ob.size);
        for o in 0..c.ob.size {
            for o2 in 0..c2.ob.size {
                map.push(pair_index(c.unit.map[o], c2.unit.map[o2], c2.hom.apex.size));
            }
        }
        FinFn::make(ob.clone(), hom.apex.clone(), map).expect("unit table")
    };
    let hh = hcomp_pro(&hom, &hom).expect("hom composes");
    let pairs = hcomp_pairs(&hom, &hom);
    let mut comp = Vec::with_capacity(pairs.len());
    for &(fg, fg2) in &pairs {
        let (f, f2) = decode_pair(fg, c2.hom.apex.size);
        let (g, g2) = decode_pair(fg2, c2.hom.apex.size);
        let h = c.compose(f, g).expect("componentwise composable");
        let h2 = c2.compose(f2, g2).expect("componentwise composable");
        comp.push(pair_index(h, h2, c2.hom.apex.size));
    }
    CatObj {
        ob,
        hom: hom.clone(),
        unit,
        comp: FinFn::make(hh.apex, hom.apex, comp).expect("comp table"),
    }
}

fn decode_pair(k: usize, ysize: usize) -> (usize, usize) {
    (k / ysize, k % ysize)
}

/// Componentwise product of profunctor objects.
pub fn product_profunctor(p: &ProfObj, p2: &ProfObj) -> ProfObj {
    let srccat = product_category(&p.srccat, &p2.srccat);
    let tgtcat = product_category(&p.tgtcat, &p2.tgtcat);
    let het = product_pro(&p.het, &p2.het);
    let lpairs = hcomp_pairs(&srccat.hom, &het);
    let mut lact = Vec::with_capacity(lpairs.len());
    for &(ff2, ee2) in &lpairs {
        let (f, f2) = decode_pair(ff2, p2.srccat.hom.apex.size);
        let (e, e2) = decode_pair(ee2, p2.het.apex.size);
        lact.push(pair_index(
            p.act_left(f, e).expect("acts"),
            p2.act_left(f2, e2).expect("acts"),
            p2.het.apex.size,
        ));
    }
    let rpairs = hcomp_pairs(&het, &tgtcat.hom);
    let mut ract = Vec::with_capacity(rpairs.len());
    for &(ee2, gg2) in &rpairs {
        let (e, e2) = decode_pair(ee2, p2.het.apex.size);
        let (g, g2) = decode_pair(gg2, p2.tgtcat.hom.apex.size);
        ract.push(pair_index(
            p.act_right(e, g).expect("acts"),
            p2.act_right(e2, g2).expect("acts"),
            p2.het.apex.size,
        ));
    }
    let lp = hcomp_pro(&srccat.hom, &het).expect("left action domain");
    let rp = hcomp_pro(&het, &tgtcat.hom).expect("right action domain");
    ProfObj {
        srccat,
        tgtcat,
        het: het.clone(),
        lact: FinFn::make(lp.apex, het.apex.clone(), lact).expect("lact table"),
        ract: FinFn::make(rp.apex, het.apex, ract).expect("ract table"),
    }
}

/// Product of functors between the product categories.
pub fn product_catfn(f: &CatFn, f2: &CatFn) -> CatFn {
    CatFn {
        src: product_category(&f.src, &f2.src),
        tgt: product_category(&f.tgt, &f2.tgt),
        ob_map: crate::finset::product_fn(&f.ob_map, &f2.ob_map),
        hom_map: crate::finset::product_fn(&f.hom_map, &f2.hom_map),
    }
}

/// Pairing of functors with common source.
pub fn pair_catfn(f: &CatFn, g: &CatFn) -> Result<CatFn, KernelError> {
    if f.src != g.src {
        return Err(KernelError::BoundaryMismatch("pair_catfn: sources".into()));
    }
    Ok(CatFn {
        src: f.src.clone(),
        tgt: product_category(&f.tgt, &g.tgt),
        ob_map: pairing(&f.ob_map, &g.ob_map)?,
        hom_map: pairing(&f.hom_map, &g.hom_map)?,
    })
}

/// The object part of the forgetful counit on categories.
pub fn ob_counit(c: &CatObj) -> FinSet {
    c.ob.clone()
}

/// The underlying span of a profunctor.
pub fn ob_counit_pro(p: &ProfObj) -> SpanPro {
    p.het.clone()
}

#[cfg(test)]
pub mod fixtures {
    use super::*;

    /// The poset `2 = {0 ≤ 1}` as a 3-morphism category.
    pub fn poset2() -> CatObj {
        crate::fixtures::poset2()
    }

    /// `ℤ/n` as a one-object category.
    pub fn zmod(n: usize) -> CatObj {
        crate::fixtures::cyclic_monoid(n)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{poset2, zmod};
    use super::*;

    #[test]
    fn discrete_cases() {
        let t = discrete_category(&FinSet::new(1));
        assert!(validate_category(&t).passed());
        let e = discrete_category(&FinSet::new(0));
        assert!(validate_category(&e).passed());
        assert_eq!(ob_counit(&discrete_category(&FinSet::new(4))).size, 4);
    }

    #[test]
    fn validate_category_cases() {
        assert!(validate_category(&poset2()).passed());
        assert!(validate_category(&zmod(2)).passed());
        // perturb ℤ/3 composition to break associativity
        let mut broken = zmod(3);
        // comp table of the one-object category is the group table
        let idx = crate::span::hcomp_index(&broken.hom, &broken.hom, 1, 2).unwrap();
        let mut map = broken.comp.map.clone();
        map[idx] = 1; // 1·2 := 1 instead of 0
        broken.comp = FinFn::make(broken.comp.dom.clone(), broken.comp.cod.clone(), map).unwrap();
        let rep = validate_category(&broken);
        assert!(!rep.passed());
        assert!(rep.entries.iter().any(|e| e.law == "cat/assoc"));
    }

    #[test]
    fn hom_profunctor_cases() {
        let d = discrete_category(&FinSet::new(3));
        let h = hom_profunctor(&d).unwrap();
        assert_eq!(h.het, id_pro(&FinSet::new(3)));
        let h = hom_profunctor(&poset2()).unwrap();
        assert_eq!(h.het.apex.size, 3);
        assert!(h.validate().passed());
    }

    #[test]
    fn prof_compose_discrete_is_span_composition() {
        let a = discrete_category(&FinSet::new(2));
        let b = discrete_category(&FinSet::new(2));
        let c = discrete_category(&FinSet::new(2));
        let mk = |src: &CatObj, tgt: &CatObj, l: Vec<usize>, r: Vec<usize>| {
            let het = SpanPro::from_tables(src.ob.size, tgt.ob.size, l, r).unwrap();
            let lp = hcomp_pro(&src.hom, &het).unwrap();
            let rp = hcomp_pro(&het, &tgt.hom).unwrap();
            let lpairs = hcomp_pairs(&src.hom, &het);
            let rpairs = hcomp_pairs(&het, &tgt.hom);
            ProfObj {
                srccat: src.clone(),
                tgtcat: tgt.clone(),
                het: het.clone(),
                lact: FinFn::make(lp.apex, het.apex.clone(), lpairs.iter().map(|&(_, e)| e).collect()).unwrap(),
                ract: FinFn::make(rp.apex, het.apex.clone(), rpairs.iter().map(|&(e, _)| e).collect()).unwrap(),
            }
        };
        let p = mk(&a, &b, vec![0, 1], vec![1, 0]);
        let q = mk(&b, &c, vec![1, 0], vec![0, 1]);
        let (pq, _) = prof_compose(&p, &q).unwrap();
        let direct = hcomp_pro(&p.het, &q.het).unwrap();
        assert_eq!(pq.het.apex.size, direct.apex.size);
        assert!(pq.validate().passed());
    }

    /// Oracle: orbits of composable pairs modulo the middle action.
    fn orbit_count(p: &ProfObj, q: &ProfObj) -> usize {
        let pairs = hcomp_pairs(&p.het, &q.het);
        let n = pairs.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            r
        }
        let b = &p.tgtcat;
        for pe in 0..p.het.apex.size {
            for h in 0..b.hom.apex.size {
                for qe in 0..q.het.apex.size {
                    // triple (pe, h, qe): relate (pe·h, qe) ~ (pe, h·qe)
                    if p.het.right.map[pe] != b.src(h) || b.tgt(h) != q.het.left.map[qe] {
                        continue;
                    }
                    let l = p.act_right(pe, h).unwrap();
                    let r = q.act_left(h, qe).unwrap();
                    let j = pairs.iter().position(|&x| x == (l, qe)).unwrap();
                    let k = pairs.iter().position(|&x| x == (pe, r)).unwrap();
                    let (rj, rk) = (find(&mut parent, j), find(&mut parent, k));
                    if rj != rk {
                        parent[rj.max(rk)] = rj.min(rk);
                    }
                }
            }
        }
        let mut roots = std::collections::BTreeSet::new();
        for i in 0..n {
            roots.insert(find(&mut parent, i));
        }
        roots.len()
    }

    #[test]
    fn hom_tensor_hom_is_hom_for_poset2() {
        let h = hom_profunctor(&poset2()).unwrap();
        let (hh, _) = prof_compose(&h, &h).unwrap();
        assert_eq!(hh.het.apex.size, 3);
        assert_eq!(orbit_count(&h, &h), 3);
        assert!(hh.validate().passed());
    }

    #[test]
    fn empty_het_composes_to_empty() {
        let a = poset2();
        let empty = ProfObj {
            srccat: a.clone(),
            tgtcat: a.clone(),
            het: SpanPro::from_tables(2, 2, vec![], vec![]).unwrap(),
            lact: FinFn::make(FinSet::new(0), FinSet::new(0), vec![]).unwrap(),
            ract: FinFn::make(FinSet::new(0), FinSet::new(0), vec![]).unwrap(),
        };
        let h = hom_profunctor(&a).unwrap();
        let (c, _) = prof_compose(&empty, &h).unwrap();
        assert_eq!(c.het.apex.size, 0);
    }

    #[test]
    fn product_category_cases() {
        let p = product_category(&poset2(), &zmod(2));
        assert!(validate_category(&p).passed());
        assert_eq!(p.ob.size, 2);
        assert_eq!(p.hom.apex.size, 6);
        // product with the terminal category has the same counts
        let t = discrete_category(&FinSet::new(1));
        let pt = product_category(&poset2(), &t);
        assert_eq!(pt.ob.size, 2);
        assert_eq!(pt.hom.apex.size, 3);
        // hom of a product is the product of homs
        let hp = hom_profunctor(&p).unwrap();
        let hprod = product_profunctor(
            &hom_profunctor(&poset2()).unwrap(),
            &hom_profunctor(&zmod(2)).unwrap(),
        );
        assert_eq!(hp, hprod);
    }

    #[test]
    fn prof_cell_compose_cases() {
        let h = hom_profunctor(&poset2()).unwrap();
        let idc = ProfCell::identity(&h);
        let c = prof_cell_compose(&idc, &idc).unwrap();
        let (hh, _) = prof_compose(&h, &h).unwrap();
        assert_eq!(c.top, hh);
        assert!(c.mid.is_identity());
    }
}
