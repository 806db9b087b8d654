//! Finitely presented double theories: a typed term language for objects,
//! arrows, proarrows and cells, presentations by generators and equations,
//! and the word-set closure that makes lax-model checking finite.

pub mod builtin;
pub mod parse;
pub mod tabular;

use crate::error::KernelError;
use std::collections::BTreeSet;
use std::fmt;

/// Object terms: generators, the unit object, binary products.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ObTerm {
    Gen(String),
    Unit,
    Prod(Box<ObTerm>, Box<ObTerm>),
}

/// Arrow terms of a cartesian theory. Projections and bang carry their
/// object annotations so that typechecking is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArrTerm {
    Gen(String),
    Id(ObTerm),
    Comp(Box<ArrTerm>, Box<ArrTerm>),
    Proj1(ObTerm, ObTerm),
    Proj2(ObTerm, ObTerm),
    Pair(Box<ArrTerm>, Box<ArrTerm>),
    Bang(ObTerm),
}

/// Proarrow terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProTerm {
    Gen(String),
    Idp(ObTerm),
    Hcomp(Box<ProTerm>, Box<ProTerm>),
    Prodp(Box<ProTerm>, Box<ProTerm>),
}

/// Cell (pasting) expressions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CellExpr {
    Gen(String),
    IdcArrow(ArrTerm),
    IdcPro(ProTerm),
    Vcomp(Box<CellExpr>, Box<CellExpr>),
    Hcomp(Box<CellExpr>, Box<CellExpr>),
    Pairc(Box<CellExpr>, Box<CellExpr>),
    Projc1(ProTerm, ProTerm),
    Projc2(ProTerm, ProTerm),
}

// -- constructors kept short for building presentations in code --

pub fn ob(name: &str) -> ObTerm {
    ObTerm::Gen(name.into())
}

pub fn oprod(a: ObTerm, b: ObTerm) -> ObTerm {
    ObTerm::Prod(Box::new(a), Box::new(b))
}

pub fn agen(name: &str) -> ArrTerm {
    ArrTerm::Gen(name.into())
}

pub fn aid(o: ObTerm) -> ArrTerm {
    ArrTerm::Id(o)
}

pub fn acomp(f: ArrTerm, g: ArrTerm) -> ArrTerm {
    ArrTerm::Comp(Box::new(f), Box::new(g))
}

pub fn apair(f: ArrTerm, g: ArrTerm) -> ArrTerm {
    ArrTerm::Pair(Box::new(f), Box::new(g))
}

/// The arrow product `f × g` expressed through pairing and projections.
pub fn aprod(f: ArrTerm, g: ArrTerm, fdom: ObTerm, gdom: ObTerm) -> ArrTerm {
    apair(
        acomp(ArrTerm::Proj1(fdom.clone(), gdom.clone()), f),
        acomp(ArrTerm::Proj2(fdom, gdom), g),
    )
}

pub fn pidp(o: ObTerm) -> ProTerm {
    ProTerm::Idp(o)
}

pub fn cgen(name: &str) -> CellExpr {
    CellExpr::Gen(name.into())
}

pub fn cida(f: ArrTerm) -> CellExpr {
    CellExpr::IdcArrow(f)
}

pub fn cvcomp(a: CellExpr, b: CellExpr) -> CellExpr {
    CellExpr::Vcomp(Box::new(a), Box::new(b))
}

pub fn chcomp(a: CellExpr, b: CellExpr) -> CellExpr {
    CellExpr::Hcomp(Box::new(a), Box::new(b))
}

pub fn cpairc(a: CellExpr, b: CellExpr) -> CellExpr {
    CellExpr::Pairc(Box::new(a), Box::new(b))
}

// ---------------------------------------------------------------------------
// normal forms

/// Normalized object term: a flattened list of object-generator sorts. The
/// unit object is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ObNf(pub Vec<String>);

impl ObNf {
    pub fn unit() -> ObNf {
        ObNf(Vec::new())
    }

    pub fn sort(name: &str) -> ObNf {
        ObNf(vec![name.to_string()])
    }

    pub fn concat(&self, other: &ObNf) -> ObNf {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ObNf(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for ObNf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.0.join("*"))
        }
    }
}

/// A component term of a normalized arrow: a variable selecting a coordinate
/// of the domain, or a generator applied to argument terms (projecting out
/// one coordinate of the generator's codomain).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tm {
    Var(usize),
    App { gen: String, args: Vec<Tm>, out: usize },
}

impl Tm {
    fn subst(&self, args: &[Tm]) -> Tm {
        match self {
            Tm::Var(i) => args[*i].clone(),
            Tm::App { gen, args: inner, out } => Tm::App {
                gen: gen.clone(),
                args: inner.iter().map(|t| t.subst(args)).collect(),
                out: *out,
            },
        }
    }
}

/// Normalized arrow: a tuple of component terms over a flattened domain.
/// Two arrow terms denote the same arrow of the free cartesian theory iff
/// their normal forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArrNf {
    pub dom: ObNf,
    pub cod: ObNf,
    pub terms: Vec<Tm>,
}

impl ArrNf {
    pub fn identity(o: &ObNf) -> ArrNf {
        ArrNf {
            dom: o.clone(),
            cod: o.clone(),
            terms: (0..o.arity()).map(Tm::Var).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod
            && self.terms.iter().enumerate().all(|(i, t)| matches!(t, Tm::Var(j) if *j == i))
    }

    /// Diagrammatic composition by substitution.
    pub fn then(&self, g: &ArrNf) -> Result<ArrNf, KernelError> {
        if self.cod != g.dom {
            return Err(KernelError::TypeError(format!(
                "arrow composition: cod {} vs dom {}",
                self.cod, g.dom
            )));
        }
        Ok(ArrNf {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            terms: g.terms.iter().map(|t| t.subst(&self.terms)).collect(),
        })
    }
}

/// One letter of a proarrow word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProAtom {
    Gen(String),
    /// Product of two (possibly composite) words, kept as an atom.
    Prod(Box<Word>, Box<Word>),
}

/// A normalized proarrow: a composable word of atoms with its object
/// boundaries. The empty word at `x` is the identity proarrow on `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Word {
    /// `bounds.len() == atoms.len() + 1`.
    pub bounds: Vec<ObNf>,
    pub atoms: Vec<ProAtom>,
}

impl Word {
    pub fn empty(at: ObNf) -> Word {
        Word { bounds: vec![at], atoms: Vec::new() }
    }

    pub fn src(&self) -> &ObNf {
        self.bounds.first().expect("nonempty bounds")
    }

    pub fn tgt(&self) -> &ObNf {
        self.bounds.last().expect("nonempty bounds")
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word, KernelError> {
        if self.tgt() != other.src() {
            return Err(KernelError::TypeError(format!(
                "word composition: tgt {} vs src {}",
                self.tgt(),
                other.src()
            )));
        }
        let mut bounds = self.bounds.clone();
        bounds.extend(other.bounds.iter().skip(1).cloned());
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Ok(Word { bounds, atoms })
    }

    /// Contiguous subword from atom `i` (inclusive) to `j` (exclusive).
    pub fn subword(&self, i: usize, j: usize) -> Word {
        Word {
            bounds: self.bounds[i..=j].to_vec(),
            atoms: self.atoms[i..j].to_vec(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "eps({})", self.src());
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|a| match a {
                ProAtom::Gen(n) => n.clone(),
                ProAtom::Prod(u, v) => format!("prod({u};{v})"),
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Boundary of a typechecked cell expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub top: Word,
    pub bot: Word,
    pub lsrc: ArrNf,
    pub rtgt: ArrNf,
}

// ---------------------------------------------------------------------------
// presentations

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrGen {
    pub name: String,
    pub dom: ObTerm,
    pub cod: ObTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProGen {
    pub name: String,
    pub src: ObTerm,
    pub tgt: ObTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellGen {
    pub name: String,
    pub top: ProTerm,
    pub bot: ProTerm,
    pub lsrc: ArrTerm,
    pub rtgt: ArrTerm,
}

/// A finitely presented double theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryPresentation {
    pub name: String,
    pub ob_gens: Vec<String>,
    pub arr_gens: Vec<ArrGen>,
    pub pro_gens: Vec<ProGen>,
    pub cell_gens: Vec<CellGen>,
    /// Equations between parallel cell expressions.
    pub equations: Vec<(CellExpr, CellExpr)>,
    /// Equations between parallel arrow terms.
    pub arr_equations: Vec<(ArrTerm, ArrTerm)>,
    pub horizontally_trivial: bool,
    pub cartesian: bool,
}

/// The finite word set a lax model must assign values on: every proarrow
/// word reachable from the presentation, closed under contiguous subwords,
/// together with all adjacent splittings of each word.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaxClosure {
    pub words: BTreeSet<Word>,
    pub splits: BTreeSet<(Word, Word)>,
    /// All object terms with an empty word in the closure.
    pub objects: BTreeSet<ObNf>,
}

impl TheoryPresentation {
    pub fn arr_gen(&self, name: &str) -> Option<&ArrGen> {
        self.arr_gens.iter().find(|g| g.name == name)
    }

    pub fn pro_gen(&self, name: &str) -> Option<&ProGen> {
        self.pro_gens.iter().find(|g| g.name == name)
    }

    pub fn cell_gen(&self, name: &str) -> Option<&CellGen> {
        self.cell_gens.iter().find(|g| g.name == name)
    }

    /// Normalizes an object term, checking that all generators exist.
    pub fn ob_nf(&self, t: &ObTerm) -> Result<ObNf, KernelError> {
        match t {
            ObTerm::Gen(n) => {
                if self.ob_gens.iter().any(|g| g == n) {
                    Ok(ObNf::sort(n))
                } else {
                    Err(KernelError::TypeError(format!("unknown object generator `{n}`")))
                }
            }
            ObTerm::Unit => Ok(ObNf::unit()),
            ObTerm::Prod(a, b) => Ok(self.ob_nf(a)?.concat(&self.ob_nf(b)?)),
        }
    }

    /// Normalizes an arrow term to its tuple-of-terms form.
    pub fn arr_nf(&self, t: &ArrTerm) -> Result<ArrNf, KernelError> {
        match t {
            ArrTerm::Gen(n) => {
                let g = self
                    .arr_gen(n)
                    .ok_or_else(|| KernelError::TypeError(format!("unknown arrow generator `{n}`")))?;
                let dom = self.ob_nf(&g.dom)?;
                let cod = self.ob_nf(&g.cod)?;
                let args: Vec<Tm> = (0..dom.arity()).map(Tm::Var).collect();
                let terms = (0..cod.arity())
                    .map(|out| Tm::App { gen: n.clone(), args: args.clone(), out })
                    .collect();
                Ok(ArrNf { dom, cod, terms })
            }
            ArrTerm::Id(o) => Ok(ArrNf::identity(&self.ob_nf(o)?)),
            ArrTerm::Comp(f, g) => self.arr_nf(f)?.then(&self.arr_nf(g)?),
            ArrTerm::Proj1(a, b) => {
                let (a, b) = (self.ob_nf(a)?, self.ob_nf(b)?);
                let dom = a.concat(&b);
                let terms = (0..a.arity()).map(Tm::Var).collect();
                Ok(ArrNf { dom, cod: a, terms })
            }
            ArrTerm::Proj2(a, b) => {
                let (a, b) = (self.ob_nf(a)?, self.ob_nf(b)?);
                let dom = a.concat(&b);
                let terms = (a.arity()..a.arity() + b.arity()).map(Tm::Var).collect();
                Ok(ArrNf { dom, cod: b, terms })
            }
            ArrTerm::Pair(f, g) => {
                let (f, g) = (self.arr_nf(f)?, self.arr_nf(g)?);
                if f.dom != g.dom {
                    return Err(KernelError::TypeError(format!(
                        "pair: domains {} vs {}",
                        f.dom, g.dom
                    )));
                }
                let mut terms = f.terms.clone();
                terms.extend(g.terms.iter().cloned());
                Ok(ArrNf { dom: f.dom, cod: f.cod.concat(&g.cod), terms })
            }
            ArrTerm::Bang(o) => Ok(ArrNf {
                dom: self.ob_nf(o)?,
                cod: ObNf::unit(),
                terms: Vec::new(),
            }),
        }
    }

    /// Normalizes a proarrow term to a word. The theory is strict, so
    /// identity proarrows vanish and composition flattens.
    pub fn pro_nf(&self, t: &ProTerm) -> Result<Word, KernelError> {
        match t {
            ProTerm::Gen(n) => {
                let g = self
                    .pro_gen(n)
                    .ok_or_else(|| KernelError::TypeError(format!("unknown proarrow generator `{n}`")))?;
                let src = self.ob_nf(&g.src)?;
                let tgt = self.ob_nf(&g.tgt)?;
                Ok(Word { bounds: vec![src, tgt], atoms: vec![ProAtom::Gen(n.clone())] })
            }
            ProTerm::Idp(o) => Ok(Word::empty(self.ob_nf(o)?)),
            ProTerm::Hcomp(u, v) => self.pro_nf(u)?.concat(&self.pro_nf(v)?),
            ProTerm::Prodp(u, v) => {
                let (u, v) = (self.pro_nf(u)?, self.pro_nf(v)?);
                if u.is_empty() && v.is_empty() {
                    Ok(Word::empty(u.src().concat(v.src())))
                } else {
                    let src = u.src().concat(v.src());
                    let tgt = u.tgt().concat(v.tgt());
                    Ok(Word {
                        bounds: vec![src, tgt],
                        atoms: vec![ProAtom::Prod(Box::new(u), Box::new(v))],
                    })
                }
            }
        }
    }

    /// Typechecks a cell expression and returns its boundary.
    pub fn typecheck_expr(&self, e: &CellExpr) -> Result<Boundary, KernelError> {
        match e {
            CellExpr::Gen(n) => {
                let g = self
                    .cell_gen(n)
                    .ok_or_else(|| KernelError::TypeError(format!("unknown cell generator `{n}`")))?;
                let top = self.pro_nf(&g.top)?;
                let bot = self.pro_nf(&g.bot)?;
                let lsrc = self.arr_nf(&g.lsrc)?;
                let rtgt = self.arr_nf(&g.rtgt)?;
                if lsrc.dom != *top.src()
                    || lsrc.cod != *bot.src()
                    || rtgt.dom != *top.tgt()
                    || rtgt.cod != *bot.tgt()
                {
                    return Err(KernelError::TypeError(format!(
                        "cell generator `{n}`: boundary arrows do not frame the boundary words"
                    )));
                }
                Ok(Boundary { top, bot, lsrc, rtgt })
            }
            CellExpr::IdcArrow(f) => {
                let nf = self.arr_nf(f)?;
                Ok(Boundary {
                    top: Word::empty(nf.dom.clone()),
                    bot: Word::empty(nf.cod.clone()),
                    lsrc: nf.clone(),
                    rtgt: nf,
                })
            }
            CellExpr::IdcPro(m) => {
                let w = self.pro_nf(m)?;
                Ok(Boundary {
                    lsrc: ArrNf::identity(w.src()),
                    rtgt: ArrNf::identity(w.tgt()),
                    bot: w.clone(),
                    top: w,
                })
            }
            CellExpr::Vcomp(a, b) => {
                let (a, b) = (self.typecheck_expr(a)?, self.typecheck_expr(b)?);
                if a.bot != b.top {
                    return Err(KernelError::TypeError(format!(
                        "vcomp: middle words {} vs {}",
                        a.bot, b.top
                    )));
                }
                Ok(Boundary {
                    top: a.top,
                    bot: b.bot,
                    lsrc: a.lsrc.then(&b.lsrc)?,
                    rtgt: a.rtgt.then(&b.rtgt)?,
                })
            }
            CellExpr::Hcomp(a, b) => {
                let (a, b) = (self.typecheck_expr(a)?, self.typecheck_expr(b)?);
                if a.rtgt != b.lsrc {
                    return Err(KernelError::TypeError(
                        "hcomp: shared boundary arrow differs".into(),
                    ));
                }
                Ok(Boundary {
                    top: a.top.concat(&b.top)?,
                    bot: a.bot.concat(&b.bot)?,
                    lsrc: a.lsrc,
                    rtgt: b.rtgt,
                })
            }
            CellExpr::Pairc(a, b) => {
                let (a, b) = (self.typecheck_expr(a)?, self.typecheck_expr(b)?);
                if a.top != b.top {
                    return Err(KernelError::TypeError("pairc: tops differ".into()));
                }
                let bot = prod_words(&a.bot, &b.bot);
                let lsrc = pair_nf(&a.lsrc, &b.lsrc)?;
                let rtgt = pair_nf(&a.rtgt, &b.rtgt)?;
                Ok(Boundary { top: a.top, bot, lsrc, rtgt })
            }
            CellExpr::Projc1(m, m2) => {
                let (u, v) = (self.pro_nf(m)?, self.pro_nf(m2)?);
                let top = prod_words(&u, &v);
                let lsrc = proj_nf(u.src(), v.src(), true);
                let rtgt = proj_nf(u.tgt(), v.tgt(), true);
                Ok(Boundary { top, bot: u, lsrc, rtgt })
            }
            CellExpr::Projc2(m, m2) => {
                let (u, v) = (self.pro_nf(m)?, self.pro_nf(m2)?);
                let top = prod_words(&u, &v);
                let lsrc = proj_nf(u.src(), v.src(), false);
                let rtgt = proj_nf(u.tgt(), v.tgt(), false);
                Ok(Boundary { top, bot: v, lsrc, rtgt })
            }
        }
    }

    /// Typechecks the whole presentation.
    pub fn validate(&self) -> Result<(), KernelError> {
        if self.horizontally_trivial && !self.pro_gens.is_empty() {
            return Err(KernelError::TypeError(
                "horizontally_trivial flag with proarrow generators".into(),
            ));
        }
        for g in &self.arr_gens {
            self.ob_nf(&g.dom)?;
            self.ob_nf(&g.cod)?;
        }
        for g in &self.pro_gens {
            self.ob_nf(&g.src)?;
            self.ob_nf(&g.tgt)?;
        }
        for g in &self.cell_gens {
            self.typecheck_expr(&CellExpr::Gen(g.name.clone()))?;
        }
        for (i, (lhs, rhs)) in self.equations.iter().enumerate() {
            let (a, b) = (self.typecheck_expr(lhs)?, self.typecheck_expr(rhs)?);
            if a != b {
                return Err(KernelError::TypeError(format!(
                    "equation {i}: boundaries differ ({} ⇒ {} vs {} ⇒ {})",
                    a.top, a.bot, b.top, b.bot
                )));
            }
        }
        for (i, (lhs, rhs)) in self.arr_equations.iter().enumerate() {
            let (a, b) = (self.arr_nf(lhs)?, self.arr_nf(rhs)?);
            if a.dom != b.dom || a.cod != b.cod {
                return Err(KernelError::TypeError(format!(
                    "arrow equation {i}: boundaries differ"
                )));
            }
        }
        Ok(())
    }

    /// All object terms appearing anywhere in the presentation, normalized,
    /// closed under subterms.
    fn occurring_objects(&self) -> BTreeSet<ObNf> {
        let mut out = BTreeSet::new();
        let add_ob = |t: &ObTerm, out: &mut BTreeSet<ObNf>| {
            let mut stack = vec![t.clone()];
            while let Some(s) = stack.pop() {
                if let Ok(nf) = self.ob_nf(&s) {
                    out.insert(nf);
                }
                if let ObTerm::Prod(a, b) = s {
                    stack.push(*a);
                    stack.push(*b);
                }
            }
        };
        for g in &self.ob_gens {
            out.insert(ObNf::sort(g));
        }
        for g in &self.arr_gens {
            add_ob(&g.dom, &mut out);
            add_ob(&g.cod, &mut out);
        }
        for g in &self.pro_gens {
            add_ob(&g.src, &mut out);
            add_ob(&g.tgt, &mut out);
        }
        let mut words = Vec::new();
        for g in &self.cell_gens {
            words.push(g.top.clone());
            words.push(g.bot.clone());
            for t in arr_obterms(&g.lsrc).into_iter().chain(arr_obterms(&g.rtgt)) {
                add_ob(&t, &mut out);
            }
        }
        let mut exprs: Vec<&CellExpr> = Vec::new();
        for (l, r) in &self.equations {
            exprs.push(l);
            exprs.push(r);
        }
        for e in exprs {
            collect_expr_proterms(e, &mut words);
            for f in collect_expr_arrterms(e) {
                for t in arr_obterms(&f) {
                    add_ob(&t, &mut out);
                }
            }
        }
        for (l, r) in &self.arr_equations {
            for t in arr_obterms(l).into_iter().chain(arr_obterms(r)) {
                add_ob(&t, &mut out);
            }
        }
        for w in &words {
            if let Ok(nf) = self.pro_nf(w) {
                for b in nf.bounds {
                    out.insert(b);
                }
            }
        }
        out
    }

    /// Computes the laxator closure of the presentation.
    pub fn laxator_closure(&self) -> Result<LaxClosure, KernelError> {
        self.validate()?;
        let mut words: BTreeSet<Word> = BTreeSet::new();
        // every proarrow term occurring in cell boundaries or equations
        let mut proterms: Vec<ProTerm> = Vec::new();
        for g in &self.cell_gens {
            proterms.push(g.top.clone());
            proterms.push(g.bot.clone());
        }
        for (l, r) in &self.equations {
            collect_expr_proterms(l, &mut proterms);
            collect_expr_proterms(r, &mut proterms);
        }
        for p in &proterms {
            words.insert(self.pro_nf(p)?);
        }
        // plus the single-atom words of every proarrow generator
        for g in &self.pro_gens {
            words.insert(self.pro_nf(&ProTerm::Gen(g.name.clone()))?);
        }
        // plus the empty word at every occurring object
        let objects = self.occurring_objects();
        for o in &objects {
            words.insert(Word::empty(o.clone()));
        }
        // close under contiguous subwords
        let mut all: BTreeSet<Word> = BTreeSet::new();
        for w in &words {
            for i in 0..=w.len() {
                for j in i..=w.len() {
                    all.insert(w.subword(i, j));
                }
            }
        }
        // empty words at every bound of every word
        let bounds: Vec<ObNf> = all.iter().flat_map(|w| w.bounds.clone()).collect();
        for b in bounds {
            all.insert(Word::empty(b));
        }
        let mut splits = BTreeSet::new();
        for w in &all {
            for i in 0..=w.len() {
                let u = w.subword(0, i);
                let v = w.subword(i, w.len());
                splits.insert((u, v));
            }
        }
        let objects = all
            .iter()
            .filter(|w| w.is_empty())
            .map(|w| w.src().clone())
            .collect();
        Ok(LaxClosure { words: all, splits, objects })
    }
}

/// Product of two words as a word: pointwise when both are empty, otherwise a
/// single product atom.
pub fn prod_words(u: &Word, v: &Word) -> Word {
    if u.is_empty() && v.is_empty() {
        Word::empty(u.src().concat(v.src()))
    } else {
        Word {
            bounds: vec![u.src().concat(v.src()), u.tgt().concat(v.tgt())],
            atoms: vec![ProAtom::Prod(Box::new(u.clone()), Box::new(v.clone()))],
        }
    }
}

/// Pairing of normalized arrows with a common domain.
pub fn pair_nf(f: &ArrNf, g: &ArrNf) -> Result<ArrNf, KernelError> {
    if f.dom != g.dom {
        return Err(KernelError::TypeError("pairing: domains differ".into()));
    }
    let mut terms = f.terms.clone();
    terms.extend(g.terms.iter().cloned());
    Ok(ArrNf { dom: f.dom.clone(), cod: f.cod.concat(&g.cod), terms })
}

/// Normalized projection out of `a ++ b`.
pub fn proj_nf(a: &ObNf, b: &ObNf, first: bool) -> ArrNf {
    let dom = a.concat(b);
    if first {
        ArrNf { dom, cod: a.clone(), terms: (0..a.arity()).map(Tm::Var).collect() }
    } else {
        ArrNf {
            dom,
            cod: b.clone(),
            terms: (a.arity()..a.arity() + b.arity()).map(Tm::Var).collect(),
        }
    }
}

fn collect_expr_proterms(e: &CellExpr, out: &mut Vec<ProTerm>) {
    match e {
        CellExpr::Gen(_) => {}
        CellExpr::IdcArrow(_) => {}
        CellExpr::IdcPro(m) => out.push(m.clone()),
        CellExpr::Vcomp(a, b) | CellExpr::Hcomp(a, b) | CellExpr::Pairc(a, b) => {
            collect_expr_proterms(a, out);
            collect_expr_proterms(b, out);
        }
        CellExpr::Projc1(m, m2) | CellExpr::Projc2(m, m2) => {
            out.push(m.clone());
            out.push(m2.clone());
        }
    }
}

fn collect_expr_arrterms(e: &CellExpr) -> Vec<ArrTerm> {
    match e {
        CellExpr::Gen(_) | CellExpr::IdcPro(_) | CellExpr::Projc1(..) | CellExpr::Projc2(..) => {
            Vec::new()
        }
        CellExpr::IdcArrow(f) => vec![f.clone()],
        CellExpr::Vcomp(a, b) | CellExpr::Hcomp(a, b) | CellExpr::Pairc(a, b) => {
            let mut v = collect_expr_arrterms(a);
            v.extend(collect_expr_arrterms(b));
            v
        }
    }
}

fn arr_obterms(t: &ArrTerm) -> Vec<ObTerm> {
    match t {
        ArrTerm::Gen(_) => Vec::new(),
        ArrTerm::Id(o) | ArrTerm::Bang(o) => vec![o.clone()],
        ArrTerm::Proj1(a, b) | ArrTerm::Proj2(a, b) => {
            vec![a.clone(), b.clone(), oprod(a.clone(), b.clone())]
        }
        ArrTerm::Comp(f, g) | ArrTerm::Pair(f, g) => {
            let mut v = arr_obterms(f);
            v.extend(arr_obterms(g));
            v
        }
    }
}

/// All decompositions of `w` as `u ++ v ++ z` with every part possibly empty.
pub fn triple_splits(w: &Word) -> Vec<(Word, Word, Word)> {
    let mut out = Vec::new();
    for i in 0..=w.len() {
        for j in i..=w.len() {
            out.push((w.subword(0, i), w.subword(i, j), w.subword(j, w.len())));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::builtin::builtin;
    use super::*;

    #[test]
    fn builtin_presentations_typecheck() {
        for name in super::builtin::BUILTIN_NAMES {
            let t = builtin(name).unwrap();
            t.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            let c = t.laxator_closure().unwrap();
            assert!(!c.words.is_empty());
        }
        assert!(matches!(builtin("nonsense"), Err(KernelError::UnknownTheory(_))));
    }

    #[test]
    fn closure_for_horizontally_trivial_theories_is_empty_words() {
        let t = builtin("categories").unwrap();
        let c = t.laxator_closure().unwrap();
        assert!(c.words.iter().all(|w| w.is_empty()));
        assert_eq!(c.words.len(), 1);
        // the empty word splits only as (ε, ε)
        assert_eq!(c.splits.len(), 1);
    }

    #[test]
    fn closure_with_pro_generator() {
        let t = TheoryPresentation {
            name: "test".into(),
            ob_gens: vec!["x".into()],
            arr_gens: vec![],
            pro_gens: vec![ProGen { name: "p".into(), src: ob("x"), tgt: ob("x") }],
            cell_gens: vec![CellGen {
                name: "c".into(),
                top: ProTerm::Hcomp(
                    Box::new(ProTerm::Gen("p".into())),
                    Box::new(ProTerm::Gen("p".into())),
                ),
                bot: ProTerm::Gen("p".into()),
                lsrc: aid(ob("x")),
                rtgt: aid(ob("x")),
            }],
            equations: vec![],
            arr_equations: vec![],
            horizontally_trivial: false,
            cartesian: false,
        };
        let c = t.laxator_closure().unwrap();
        // words: ε, p, p.p
        assert_eq!(c.words.len(), 3);
        let p = t.pro_nf(&ProTerm::Gen("p".into())).unwrap();
        let pp = p.concat(&p).unwrap();
        assert!(c.words.contains(&pp));
        assert!(c.splits.contains(&(p.clone(), p.clone())));
        // idempotent
        let c2 = t.laxator_closure().unwrap();
        assert_eq!(c.words, c2.words);
    }

    #[test]
    fn monads_has_three_equations() {
        let t = builtin("monads").unwrap();
        assert_eq!(t.equations.len(), 3);
        assert_eq!(t.cell_gens.len(), 2);
        assert_eq!(t.arr_gens.len(), 1);
    }

    #[test]
    fn mismatched_equation_boundary_is_type_error() {
        let mut t = builtin("monads").unwrap();
        t.equations.push((cgen("eta"), cgen("mu")));
        assert!(matches!(t.validate(), Err(KernelError::TypeError(_))));
    }

    #[test]
    fn arrow_normal_forms_identify_cartesian_equal_terms() {
        let t = builtin("monoids").unwrap();
        let x = ob("x");
        // (f ; id) = f
        let f = agen("otimes");
        let lhs = t.arr_nf(&acomp(f.clone(), aid(x.clone()))).unwrap();
        let rhs = t.arr_nf(&f).unwrap();
        assert_eq!(lhs, rhs);
        // pair(proj1, proj2) = id
        let p = t
            .arr_nf(&apair(
                ArrTerm::Proj1(x.clone(), x.clone()),
                ArrTerm::Proj2(x.clone(), x.clone()),
            ))
            .unwrap();
        assert!(p.is_identity());
        // pentagon-style exchange: u1·(1×T) = u2·(T×1) as x⁴ → x² arrows
        let x2 = oprod(x.clone(), x.clone());
        let u1 = apair(
            acomp(ArrTerm::Proj1(x2.clone(), x2.clone()), f.clone()),
            ArrTerm::Proj2(x2.clone(), x2.clone()),
        );
        let u2 = apair(
            ArrTerm::Proj1(x2.clone(), x2.clone()),
            acomp(ArrTerm::Proj2(x2.clone(), x2.clone()), f.clone()),
        );
        let lhs = t
            .arr_nf(&acomp(u1, aprod(aid(x.clone()), f.clone(), x.clone(), x2.clone())))
            .unwrap();
        let rhs = t
            .arr_nf(&acomp(u2, aprod(f.clone(), aid(x.clone()), x2.clone(), x.clone())))
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
