//! Textual syntax for theories: terms are S-expressions, theory files are
//! JSON documents with S-expression strings for the terms.

use super::*;
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// S-expressions

#[derive(Clone, Debug, PartialEq, Eq)]
enum Sexp {
    Sym(String),
    List(Vec<Sexp>),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: &str) -> KernelError {
        KernelError::ParseError { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.src[self.pos..].chars().next()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn parse(&mut self) -> Result<Sexp, KernelError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => return Err(self.err("unclosed parenthesis")),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items));
                        }
                        Some(_) => items.push(self.parse()?),
                    }
                }
            }
            Some(')') => Err(self.err("unexpected `)`")),
            Some(_) => {
                let mut sym = String::new();
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' {
                        break;
                    }
                    sym.push(c);
                    self.bump();
                }
                Ok(Sexp::Sym(sym))
            }
        }
    }
}

fn parse_sexp(src: &str) -> Result<Sexp, KernelError> {
    let mut lex = Lexer::new(src);
    let s = lex.parse()?;
    lex.skip_ws();
    if lex.peek().is_some() {
        return Err(lex.err("trailing input after term"));
    }
    Ok(s)
}

fn head<'a>(s: &'a Sexp, what: &str) -> Result<(&'a str, &'a [Sexp]), KernelError> {
    match s {
        Sexp::Sym(name) => Ok((name.as_str(), &[])),
        Sexp::List(items) => match items.split_first() {
            Some((Sexp::Sym(h), rest)) => Ok((h.as_str(), rest)),
            _ => Err(KernelError::ParseError {
                line: 0,
                col: 0,
                msg: format!("expected a {what} term"),
            }),
        },
    }
}

fn arity_err(what: &str, head: &str, want: usize, got: usize) -> KernelError {
    KernelError::ParseError {
        line: 0,
        col: 0,
        msg: format!("{what} `{head}` expects {want} argument(s), got {got}"),
    }
}

fn ob_of(s: &Sexp) -> Result<ObTerm, KernelError> {
    let (h, args) = head(s, "object")?;
    match (h, args.len()) {
        ("unit", 0) => Ok(ObTerm::Unit),
        ("gen", 1) => Ok(ObTerm::Gen(sym_of(&args[0])?)),
        ("prod", 2) => Ok(oprod(ob_of(&args[0])?, ob_of(&args[1])?)),
        (name, 0) => Ok(ObTerm::Gen(name.into())),
        (h, n) => Err(arity_err("object", h, 2, n)),
    }
}

fn sym_of(s: &Sexp) -> Result<String, KernelError> {
    match s {
        Sexp::Sym(x) => Ok(x.clone()),
        _ => Err(KernelError::ParseError { line: 0, col: 0, msg: "expected a name".into() }),
    }
}

fn arr_of(s: &Sexp) -> Result<ArrTerm, KernelError> {
    let (h, args) = head(s, "arrow")?;
    match (h, args.len()) {
        ("gen", 1) => Ok(ArrTerm::Gen(sym_of(&args[0])?)),
        ("id", 1) => Ok(ArrTerm::Id(ob_of(&args[0])?)),
        ("comp", 2) => Ok(acomp(arr_of(&args[0])?, arr_of(&args[1])?)),
        ("proj1", 2) => Ok(ArrTerm::Proj1(ob_of(&args[0])?, ob_of(&args[1])?)),
        ("proj2", 2) => Ok(ArrTerm::Proj2(ob_of(&args[0])?, ob_of(&args[1])?)),
        ("pair", 2) => Ok(apair(arr_of(&args[0])?, arr_of(&args[1])?)),
        ("bang", 1) => Ok(ArrTerm::Bang(ob_of(&args[0])?)),
        (name, 0) => Ok(ArrTerm::Gen(name.into())),
        (h, n) => Err(arity_err("arrow", h, 2, n)),
    }
}

fn pro_of(s: &Sexp) -> Result<ProTerm, KernelError> {
    let (h, args) = head(s, "proarrow")?;
    match (h, args.len()) {
        ("gen", 1) => Ok(ProTerm::Gen(sym_of(&args[0])?)),
        ("idp", 1) => Ok(ProTerm::Idp(ob_of(&args[0])?)),
        ("hcomp", 2) => Ok(ProTerm::Hcomp(
            Box::new(pro_of(&args[0])?),
            Box::new(pro_of(&args[1])?),
        )),
        ("prodp", 2) => Ok(ProTerm::Prodp(
            Box::new(pro_of(&args[0])?),
            Box::new(pro_of(&args[1])?),
        )),
        (name, 0) => Ok(ProTerm::Gen(name.into())),
        (h, n) => Err(arity_err("proarrow", h, 2, n)),
    }
}

fn cell_of(s: &Sexp) -> Result<CellExpr, KernelError> {
    let (h, args) = head(s, "cell")?;
    match (h, args.len()) {
        ("gen", 1) => Ok(CellExpr::Gen(sym_of(&args[0])?)),
        ("idca", 1) => Ok(CellExpr::IdcArrow(arr_of(&args[0])?)),
        ("idcp", 1) => Ok(CellExpr::IdcPro(pro_of(&args[0])?)),
        ("vcomp", 2) => Ok(cvcomp(cell_of(&args[0])?, cell_of(&args[1])?)),
        ("hcomp", 2) => Ok(chcomp(cell_of(&args[0])?, cell_of(&args[1])?)),
        ("pairc", 2) => Ok(cpairc(cell_of(&args[0])?, cell_of(&args[1])?)),
        ("projc1", 2) => Ok(CellExpr::Projc1(pro_of(&args[0])?, pro_of(&args[1])?)),
        ("projc2", 2) => Ok(CellExpr::Projc2(pro_of(&args[0])?, pro_of(&args[1])?)),
        (name, 0) => Ok(CellExpr::Gen(name.into())),
        (h, n) => Err(arity_err("cell", h, 2, n)),
    }
}

pub fn parse_ob(src: &str) -> Result<ObTerm, KernelError> {
    ob_of(&parse_sexp(src)?)
}

pub fn parse_arr(src: &str) -> Result<ArrTerm, KernelError> {
    arr_of(&parse_sexp(src)?)
}

pub fn parse_pro(src: &str) -> Result<ProTerm, KernelError> {
    pro_of(&parse_sexp(src)?)
}

pub fn parse_cell(src: &str) -> Result<CellExpr, KernelError> {
    cell_of(&parse_sexp(src)?)
}

// ---------------------------------------------------------------------------
// canonical printers

pub fn print_ob(t: &ObTerm) -> String {
    match t {
        ObTerm::Gen(n) => format!("(gen {n})"),
        ObTerm::Unit => "unit".into(),
        ObTerm::Prod(a, b) => format!("(prod {} {})", print_ob(a), print_ob(b)),
    }
}

pub fn print_arr(t: &ArrTerm) -> String {
    match t {
        ArrTerm::Gen(n) => format!("(gen {n})"),
        ArrTerm::Id(o) => format!("(id {})", print_ob(o)),
        ArrTerm::Comp(f, g) => format!("(comp {} {})", print_arr(f), print_arr(g)),
        ArrTerm::Proj1(a, b) => format!("(proj1 {} {})", print_ob(a), print_ob(b)),
        ArrTerm::Proj2(a, b) => format!("(proj2 {} {})", print_ob(a), print_ob(b)),
        ArrTerm::Pair(f, g) => format!("(pair {} {})", print_arr(f), print_arr(g)),
        ArrTerm::Bang(o) => format!("(bang {})", print_ob(o)),
    }
}

pub fn print_pro(t: &ProTerm) -> String {
    match t {
        ProTerm::Gen(n) => format!("(gen {n})"),
        ProTerm::Idp(o) => format!("(idp {})", print_ob(o)),
        ProTerm::Hcomp(a, b) => format!("(hcomp {} {})", print_pro(a), print_pro(b)),
        ProTerm::Prodp(a, b) => format!("(prodp {} {})", print_pro(a), print_pro(b)),
    }
}

pub fn print_cell(t: &CellExpr) -> String {
    match t {
        CellExpr::Gen(n) => format!("(gen {n})"),
        CellExpr::IdcArrow(f) => format!("(idca {})", print_arr(f)),
        CellExpr::IdcPro(m) => format!("(idcp {})", print_pro(m)),
        CellExpr::Vcomp(a, b) => format!("(vcomp {} {})", print_cell(a), print_cell(b)),
        CellExpr::Hcomp(a, b) => format!("(hcomp {} {})", print_cell(a), print_cell(b)),
        CellExpr::Pairc(a, b) => format!("(pairc {} {})", print_cell(a), print_cell(b)),
        CellExpr::Projc1(a, b) => format!("(projc1 {} {})", print_pro(a), print_pro(b)),
        CellExpr::Projc2(a, b) => format!("(projc2 {} {})", print_pro(a), print_pro(b)),
    }
}

// ---------------------------------------------------------------------------
// theory files

#[derive(Serialize, Deserialize)]
struct TheoryFile {
    format: String,
    kind: String,
    #[serde(default)]
    name: String,
    #[serde(default)]
    objects: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowEntry>,
    #[serde(default)]
    proarrows: Vec<ProEntry>,
    #[serde(default)]
    cells: Vec<CellEntry>,
    #[serde(default)]
    equations: Vec<[String; 2]>,
    #[serde(default)]
    arrow_equations: Vec<[String; 2]>,
    #[serde(default)]
    horizontally_trivial: bool,
    #[serde(default)]
    cartesian: bool,
}

#[derive(Serialize, Deserialize)]
struct ArrowEntry {
    name: String,
    dom: String,
    cod: String,
}

#[derive(Serialize, Deserialize)]
struct ProEntry {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
struct CellEntry {
    name: String,
    top: String,
    bot: String,
    lsrc: String,
    rtgt: String,
}

/// Parses and typechecks a theory from its JSON text form.
pub fn parse_theory(text: &str) -> Result<TheoryPresentation, KernelError> {
    let file: TheoryFile = serde_json::from_str(text).map_err(|e| KernelError::ParseError {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    if file.format != "dk-1" {
        return Err(KernelError::InvalidFile(format!(
            "unsupported format `{}` (expected dk-1)",
            file.format
        )));
    }
    if file.kind != "theory" {
        return Err(KernelError::InvalidFile(format!("expected kind `theory`, got `{}`", file.kind)));
    }
    let t = TheoryPresentation {
        name: file.name,
        ob_gens: file.objects,
        arr_gens: file
            .arrows
            .iter()
            .map(|a| {
                Ok(ArrGen { name: a.name.clone(), dom: parse_ob(&a.dom)?, cod: parse_ob(&a.cod)? })
            })
            .collect::<Result<_, KernelError>>()?,
        pro_gens: file
            .proarrows
            .iter()
            .map(|p| {
                Ok(ProGen { name: p.name.clone(), src: parse_ob(&p.src)?, tgt: parse_ob(&p.tgt)? })
            })
            .collect::<Result<_, KernelError>>()?,
        cell_gens: file
            .cells
            .iter()
            .map(|c| {
                Ok(CellGen {
                    name: c.name.clone(),
                    top: parse_pro(&c.top)?,
                    bot: parse_pro(&c.bot)?,
                    lsrc: parse_arr(&c.lsrc)?,
                    rtgt: parse_arr(&c.rtgt)?,
                })
            })
            .collect::<Result<_, KernelError>>()?,
        equations: file
            .equations
            .iter()
            .map(|[l, r]| Ok((parse_cell(l)?, parse_cell(r)?)))
            .collect::<Result<_, KernelError>>()?,
        arr_equations: file
            .arrow_equations
            .iter()
            .map(|[l, r]| Ok((parse_arr(l)?, parse_arr(r)?)))
            .collect::<Result<_, KernelError>>()?,
        horizontally_trivial: file.horizontally_trivial,
        cartesian: file.cartesian,
    };
    t.validate()?;
    Ok(t)
}

/// Serializes a presentation to its canonical JSON text form.
pub fn print_theory(t: &TheoryPresentation) -> String {
    let file = TheoryFile {
        format: "dk-1".into(),
        kind: "theory".into(),
        name: t.name.clone(),
        objects: t.ob_gens.clone(),
        arrows: t
            .arr_gens
            .iter()
            .map(|a| ArrowEntry {
                name: a.name.clone(),
                dom: print_ob(&a.dom),
                cod: print_ob(&a.cod),
            })
            .collect(),
        proarrows: t
            .pro_gens
            .iter()
            .map(|p| ProEntry { name: p.name.clone(), src: print_ob(&p.src), tgt: print_ob(&p.tgt) })
            .collect(),
        cells: t
            .cell_gens
            .iter()
            .map(|c| CellEntry {
                name: c.name.clone(),
                top: print_pro(&c.top),
                bot: print_pro(&c.bot),
                lsrc: print_arr(&c.lsrc),
                rtgt: print_arr(&c.rtgt),
            })
            .collect(),
        equations: t
            .equations
            .iter()
            .map(|(l, r)| [print_cell(l), print_cell(r)])
            .collect(),
        arrow_equations: t
            .arr_equations
            .iter()
            .map(|(l, r)| [print_arr(l), print_arr(r)])
            .collect(),
        horizontally_trivial: t.horizontally_trivial,
        cartesian: t.cartesian,
    };
    serde_json::to_string_pretty(&file).expect("theory serializes")
}

#[cfg(test)]
mod tests {
    use super::super::builtin::{builtin, BUILTIN_NAMES};
    use super::*;

    #[test]
    fn sexp_roundtrip() {
        let src = "(comp (pair (gen otimes) (id (gen x))) (gen otimes))";
        let t = parse_arr(src).unwrap();
        assert_eq!(print_arr(&t), src);
        assert_eq!(parse_arr(&print_arr(&t)).unwrap(), t);
    }

    #[test]
    fn bare_symbols_are_generators() {
        assert_eq!(parse_ob("x").unwrap(), ob("x"));
        assert_eq!(parse_arr("t").unwrap(), agen("t"));
    }

    #[test]
    fn parse_errors_are_positioned() {
        match parse_arr("(comp (gen f)") {
            Err(KernelError::ParseError { line, col, .. }) => {
                assert_eq!(line, 1);
                assert!(col > 1);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn theory_files_roundtrip() {
        for name in BUILTIN_NAMES {
            let t = builtin(name).unwrap();
            let text = print_theory(&t);
            let back = parse_theory(&text).unwrap();
            assert_eq!(back, t, "{name} should round-trip");
        }
    }

    #[test]
    fn unit_theory_source() {
        let text = r#"{
            "format": "dk-1", "kind": "theory", "name": "categories",
            "objects": ["x"], "horizontally_trivial": true
        }"#;
        let t = parse_theory(text).unwrap();
        assert_eq!(t.ob_gens.len(), 1);
        assert!(t.equations.is_empty());
    }

    #[test]
    fn malformed_json_is_positioned_error() {
        assert!(matches!(
            parse_theory("{ not json"),
            Err(KernelError::ParseError { .. })
        ));
    }
}
