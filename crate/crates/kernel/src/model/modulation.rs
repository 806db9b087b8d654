//! 2-cells between maps of models: modulations bounded by identity modules,
//! their axiom checker, derived components, and the 2-category operations.

use super::transform::TransData;
use crate::error::KernelError;
use crate::report::Report;
use crate::theory::{ObNf, Word};
use crate::universe::Universe;
use std::collections::BTreeMap;

/// A modulation between two parallel transformations: one component cell per
/// object generator (components at product terms are derived, never stored,
/// unless explicitly overridden for testing).
#[derive(Clone, Debug, PartialEq)]
pub struct ModulationData<U: Universe> {
    pub src_map: TransData<U>,
    pub tgt_map: TransData<U>,
    pub comp: BTreeMap<ObNf, U::Cell>,
}

impl<U: Universe> ModulationData<U> {
    fn models(&self) -> (&super::LaxModel<U>, &super::LaxModel<U>) {
        (&self.src_map.src, &self.src_map.tgt)
    }

    /// Component at an object term: stored if present, otherwise derived as
    /// the canonical pairing at product terms and the unitor at the unit.
    pub fn comp_at(&self, o: &ObNf) -> Result<U::Cell, KernelError> {
        if let Some(c) = self.comp.get(o) {
            return Ok(c.clone());
        }
        let (_, g) = self.models();
        match o.arity() {
            0 => Ok(g.unitor(o)?.clone()),
            1 => Err(KernelError::MissingAssignment(format!("modulation component at {o}"))),
            k => {
                let front = ObNf(o.0[..k - 1].to_vec());
                let last = ObNf(o.0[k - 1..].to_vec());
                let (f, _) = self.models();
                let xv = f.ob_val(&front)?;
                let yv = f.ob_val(&last)?;
                U::vcomp(
                    &U::compare_id(&xv, &yv)?,
                    &U::prod_cells(&self.comp_at(&front)?, &self.comp_at(&last)?)?,
                )
            }
        }
    }

    /// Derived component at a proarrow word, using the left form of the
    /// equivariance equation.
    pub fn derived_component(&self, w: &Word) -> Result<U::Cell, KernelError> {
        let (f, g) = self.models();
        let mu = self.comp_at(w.src())?;
        let beta_w = self.tgt_map.pro_at(w)?;
        let ex = Word::empty(w.src().clone());
        let step = U::hcomp(&mu, beta_w)?;
        let collapsed = U::vcomp(&step, g.laxator(&ex, w)?)?;
        U::vcomp(&U::invert(&U::lunitor(f.word_val(w)?)?)?, &collapsed)
    }

    /// The right form of the same component, for the equivariance check.
    fn derived_component_right(&self, w: &Word) -> Result<U::Cell, KernelError> {
        let (f, g) = self.models();
        let mu = self.comp_at(w.tgt())?;
        let alpha_w = self.src_map.pro_at(w)?;
        let ey = Word::empty(w.tgt().clone());
        let step = U::hcomp(alpha_w, &mu)?;
        let collapsed = U::vcomp(&step, g.laxator(w, &ey)?)?;
        U::vcomp(&U::invert(&U::runitor(f.word_val(w)?)?)?, &collapsed)
    }
}

/// Verifies the modulation axioms: component boundaries, the equivariance
/// equation for every closure word, naturality for every atomic cell, and
/// the recovery of components from the one at the identity word.
pub fn check_modulation<U: Universe>(m: &ModulationData<U>) -> Report {
    crate::stack::with_big_stack(|| check_modulation_outer(m))
}

fn check_modulation_outer<U: Universe>(m: &ModulationData<U>) -> Report {
    let start = std::time::Instant::now();
    let mut r = Report::new();
    if let Err(e) = check_modulation_inner(m, &mut r) {
        r.check("mod/internal", "evaluation", false, &e.to_string());
    }
    r.timing_ms = start.elapsed().as_millis();
    r
}

fn check_modulation_inner<U: Universe>(
    m: &ModulationData<U>,
    r: &mut Report,
) -> Result<(), KernelError> {
    let (f, g) = m.models();
    if m.src_map.src != m.tgt_map.src || m.src_map.tgt != m.tgt_map.tgt {
        r.check("mod/parallel", "boundary maps", false, "maps are not parallel");
        return Ok(());
    }
    // component boundaries
    for gen in &f.theory.ob_gens {
        let o = ObNf::sort(gen);
        let c = m.comp_at(&o)?;
        let ok = U::cell_top(&c) == U::id_pro(f.ob_gen_val(gen)?)
            && U::cell_bot(&c) == *g.word_val(&Word::empty(o.clone()))?
            && U::cell_left(&c) == m.src_map.obj_at(&o)?
            && U::cell_right(&c) == m.tgt_map.obj_at(&o)?;
        r.check("mod/boundary", &format!("component at `{gen}`"), ok, "component frame");
        let mut vc = U::validate_cell(&c);
        for e in &mut vc.entries {
            e.instance = format!("component at `{gen}`: {}", e.instance);
        }
        r.merge(vc);
    }
    if !r.passed() {
        return Ok(());
    }
    // equivariance at every closure word
    for w in &f.closure.words {
        r.check_eq(
            "mod/equivariance",
            &format!("word `{w}`"),
            &m.derived_component(w)?,
            &m.derived_component_right(w)?,
        );
    }
    // naturality at every atomic cell
    for a in f.atomic_cells()? {
        let fval = f.ct_eval(&super::transform::atomic_expr(&a.name))?;
        let gval = g.ct_eval(&super::transform::atomic_expr(&a.name))?;
        let (u, v) = (&a.boundary.top, &a.boundary.bot);
        let ew = Word::empty(v.src().clone());
        let ez = Word::empty(v.tgt().clone());
        let top = U::id_pro(&f.ob_val(u.src())?);
        let lhs = {
            let col2 = U::vcomp(&fval, &m.derived_component(v)?)?;
            let step = U::hcomp(&m.src_map.nat_at(&a.boundary.lsrc)?, &col2)?;
            let collapsed = U::vcomp(&step, g.laxator(&ew, v)?)?;
            U::vcomp(&U::invert(&U::lunitor(f.word_val(u)?)?)?, &collapsed)?
        };
        let _ = top;
        let rhs = {
            let col1 = U::vcomp(&m.derived_component(u)?, &gval)?;
            let step = U::hcomp(&col1, &m.tgt_map.nat_at(&a.boundary.rtgt)?)?;
            let collapsed = U::vcomp(&step, g.laxator(v, &ez)?)?;
            U::vcomp(&U::invert(&U::runitor(f.word_val(u)?)?)?, &collapsed)?
        };
        r.check_eq("mod/naturality", &format!("cell `{}`", a.name), &lhs, &rhs);
    }
    // recovery of the object component from the identity-word component
    for gen in &f.theory.ob_gens {
        let o = ObNf::sort(gen);
        let e = Word::empty(o.clone());
        let lhs = m.comp_at(&o)?;
        let rhs = U::vcomp(f.unitor(&o)?, &m.derived_component(&e)?)?;
        r.check_eq("mod/recover-id", &format!("object `{gen}`"), &lhs, &rhs);
    }
    Ok(())
}

/// Recovers the object-component table from the identity-word components.
pub fn recover_from_id<U: Universe>(
    m: &ModulationData<U>,
) -> Result<BTreeMap<ObNf, U::Cell>, KernelError> {
    let (f, _) = m.models();
    let mut out = BTreeMap::new();
    for gen in &f.theory.ob_gens {
        let o = ObNf::sort(gen);
        let e = Word::empty(o.clone());
        out.insert(o.clone(), U::vcomp(f.unitor(&o)?, &m.derived_component(&e)?)?);
    }
    Ok(out)
}

/// The identity modulation on a transformation.
pub fn identity_modulation<U: Universe>(
    a: &TransData<U>,
) -> Result<ModulationData<U>, KernelError> {
    let mut comp = BTreeMap::new();
    for gen in &a.src.theory.ob_gens {
        let o = ObNf::sort(gen);
        let cell = U::vcomp(&U::id_cell_arr(&a.obj_at(&o)?), a.tgt.unitor(&o)?)?;
        comp.insert(o, cell);
    }
    Ok(ModulationData { src_map: a.clone(), tgt_map: a.clone(), comp })
}

/// Vertical composite of modulations `μ: α ⇛ β` and `ν: β ⇛ γ`.
pub fn vcomp_modulation<U: Universe>(
    m: &ModulationData<U>,
    n: &ModulationData<U>,
) -> Result<ModulationData<U>, KernelError> {
    if m.tgt_map != n.src_map {
        return Err(KernelError::BoundaryMismatch("vcomp_modulation: middle map".into()));
    }
    let (f, g) = m.models();
    let _ = f;
    let mut comp = BTreeMap::new();
    for gen in &m.src_map.src.theory.ob_gens {
        let o = ObNf::sort(gen);
        let e = Word::empty(o.clone());
        let step = U::hcomp(&m.comp_at(&o)?, &n.comp_at(&o)?)?;
        let collapsed = U::vcomp(&step, g.laxator(&e, &e)?)?;
        let top = U::id_pro(m.src_map.src.ob_gen_val(gen)?);
        comp.insert(o, U::vcomp(&U::invert(&U::lunitor(&top)?)?, &collapsed)?);
    }
    Ok(ModulationData { src_map: m.src_map.clone(), tgt_map: n.tgt_map.clone(), comp })
}

/// Horizontal composite of modulations `μ: α ⇛ β : F ⇒ G` and
/// `ν: γ ⇛ δ : G ⇒ H`, with components stacked through the derived
/// identity-word component of `ν`.
pub fn hcomp_modulation<U: Universe>(
    m: &ModulationData<U>,
    n: &ModulationData<U>,
) -> Result<ModulationData<U>, KernelError> {
    if m.src_map.tgt != n.src_map.src {
        return Err(KernelError::BoundaryMismatch("hcomp_modulation: middle model".into()));
    }
    let mut comp = BTreeMap::new();
    for gen in &m.src_map.src.theory.ob_gens {
        let o = ObNf::sort(gen);
        let e = Word::empty(o.clone());
        comp.insert(o.clone(), U::vcomp(&m.comp_at(&o)?, &n.derived_component(&e)?)?);
    }
    Ok(ModulationData {
        src_map: super::transform::compose_transformations(&m.src_map, &n.src_map)?,
        tgt_map: super::transform::compose_transformations(&m.tgt_map, &n.tgt_map)?,
        comp,
    })
}

/// The product-preservation equations for modulation components at the
/// product terms occurring in the presentation.
pub fn check_modulation_products<U: Universe>(m: &ModulationData<U>) -> Report {
    crate::stack::with_big_stack(|| check_modulation_products_outer(m))
}

fn check_modulation_products_outer<U: Universe>(m: &ModulationData<U>) -> Report {
    let start = std::time::Instant::now();
    let mut r = Report::new();
    if let Err(e) = check_products_inner(m, &mut r) {
        r.check("modprod/internal", "evaluation", false, &e.to_string());
    }
    r.timing_ms = start.elapsed().as_millis();
    r
}

fn check_products_inner<U: Universe>(
    m: &ModulationData<U>,
    r: &mut Report,
) -> Result<(), KernelError> {
    let (f, _) = m.models();
    if !f.theory.cartesian {
        return Ok(()); // vacuous for non-cartesian theories
    }
    let mut any = false;
    for d in &f.closure.objects {
        if d.arity() < 2 {
            continue;
        }
        any = true;
        let k = d.arity();
        let front = ObNf(d.0[..k - 1].to_vec());
        let last = ObNf(d.0[k - 1..].to_vec());
        let lhs = m.comp_at(d)?;
        let xv = f.ob_val(&front)?;
        let yv = f.ob_val(&last)?;
        let rhs = U::vcomp(
            &U::compare_id(&xv, &yv)?,
            &U::prod_cells(&m.comp_at(&front)?, &m.comp_at(&last)?)?,
        )?;
        r.check_eq("modprod/object", &format!("object {d}"), &lhs, &rhs);
        // the corresponding proarrow-level equation at the unit words
        let ed = Word::empty(d.clone());
        let (ef, el) = (Word::empty(front.clone()), Word::empty(last.clone()));
        let dl = m.derived_component(&ed)?;
        let dr = {
            let fv = f.word_val(&ef)?;
            let lv = f.word_val(&el)?;
            if U::prod_pro(fv, lv) != *f.word_val(&ed)? {
                r.check(
                    "modprod/word",
                    &format!("word `{ed}`"),
                    false,
                    "source hom value is not the canonical product",
                );
                continue;
            }
            U::prod_cells(&m.derived_component(&ef)?, &m.derived_component(&el)?)?
        };
        r.check_eq("modprod/word", &format!("word `{ed}`"), &dl, &dr);
    }
    if !any {
        // nothing to check: vacuously passes
    }
    Ok(())
}
