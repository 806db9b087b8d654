//! The builtin theory presentations.

use super::*;

pub const BUILTIN_NAMES: [&str; 5] =
    ["categories", "walking_arrow", "monads", "monoids", "pseudomonoids"];

/// Returns a builtin presentation by name.
pub fn builtin(name: &str) -> Result<TheoryPresentation, KernelError> {
    match name {
        "categories" => Ok(categories()),
        "walking_arrow" => Ok(walking_arrow()),
        "monads" => Ok(monads()),
        "monoids" => Ok(monoids()),
        "pseudomonoids" => Ok(pseudomonoids()),
        other => Err(KernelError::UnknownTheory(other.into())),
    }
}

/// The unit theory: one object generator and nothing else. Its lax models
/// are exactly small categories.
pub fn categories() -> TheoryPresentation {
    TheoryPresentation {
        name: "categories".into(),
        ob_gens: vec!["x".into()],
        arr_gens: vec![],
        pro_gens: vec![],
        cell_gens: vec![],
        equations: vec![],
        arr_equations: vec![],
        horizontally_trivial: true,
        cartesian: false,
    }
}

/// Two objects and one generating arrow between them; models are functors.
pub fn walking_arrow() -> TheoryPresentation {
    TheoryPresentation {
        name: "walking_arrow".into(),
        ob_gens: vec!["a".into(), "b".into()],
        arr_gens: vec![ArrGen { name: "f".into(), dom: ob("a"), cod: ob("b") }],
        pro_gens: vec![],
        cell_gens: vec![],
        equations: vec![],
        arr_equations: vec![],
        horizontally_trivial: true,
        cartesian: false,
    }
}

/// One object, a generating arrow `t: x → x`, and unit/multiplication cells
/// subject to the monad laws.
pub fn monads() -> TheoryPresentation {
    let x = ob("x");
    let t = agen("t");
    let tt = acomp(t.clone(), t.clone());
    let eta = CellGen {
        name: "eta".into(),
        top: pidp(x.clone()),
        bot: pidp(x.clone()),
        lsrc: aid(x.clone()),
        rtgt: t.clone(),
    };
    let mu = CellGen {
        name: "mu".into(),
        top: pidp(x.clone()),
        bot: pidp(x.clone()),
        lsrc: tt.clone(),
        rtgt: t.clone(),
    };
    // whiskering on either side of the generating arrow
    let eta_t = cvcomp(cida(t.clone()), cgen("eta")); // t ⇒ t·t, component η_{T a}
    let t_eta = cvcomp(cgen("eta"), cida(t.clone())); // t ⇒ t·t, component T(η_a)
    let mu_t = cvcomp(cida(t.clone()), cgen("mu")); // t·t·t ⇒ t·t, component μ_{T a}
    let t_mu = cvcomp(cgen("mu"), cida(t.clone())); // t·t·t ⇒ t·t, component T(μ_a)
    TheoryPresentation {
        name: "monads".into(),
        ob_gens: vec!["x".into()],
        arr_gens: vec![ArrGen { name: "t".into(), dom: x.clone(), cod: x.clone() }],
        pro_gens: vec![],
        cell_gens: vec![eta, mu],
        equations: vec![
            // unit conditions
            (chcomp(eta_t, cgen("mu")), cida(t.clone())),
            (chcomp(t_eta, cgen("mu")), cida(t.clone())),
            // multiplication condition
            (chcomp(mu_t, cgen("mu")), chcomp(t_mu, cgen("mu"))),
        ],
        arr_equations: vec![],
        horizontally_trivial: true,
        cartesian: false,
    }
}

/// A single object with strictly associative and unital multiplication;
/// models are strict monoidal categories.
pub fn monoids() -> TheoryPresentation {
    let x = ob("x");
    let x2 = oprod(x.clone(), x.clone());
    let ot = agen("otimes");
    let unit_into = acomp(ArrTerm::Bang(x.clone()), agen("i"));
    TheoryPresentation {
        name: "monoids".into(),
        ob_gens: vec!["x".into()],
        arr_gens: vec![
            ArrGen { name: "otimes".into(), dom: x2.clone(), cod: x.clone() },
            ArrGen { name: "i".into(), dom: ObTerm::Unit, cod: x.clone() },
        ],
        pro_gens: vec![],
        cell_gens: vec![],
        equations: vec![],
        arr_equations: vec![
            // associativity
            (
                acomp(aprod(ot.clone(), aid(x.clone()), x2.clone(), x.clone()), ot.clone()),
                acomp(aprod(aid(x.clone()), ot.clone(), x.clone(), x2.clone()), ot.clone()),
            ),
            // left and right units
            (
                acomp(apair(unit_into.clone(), aid(x.clone())), ot.clone()),
                aid(x.clone()),
            ),
            (
                acomp(apair(aid(x.clone()), unit_into), ot.clone()),
                aid(x.clone()),
            ),
        ],
        horizontally_trivial: true,
        cartesian: true,
    }
}

/// Product of two cells bounded by identity proarrows, expressed through
/// projections and pairing.
fn cell_prod(c1: CellExpr, c2: CellExpr, d1: ObTerm, d2: ObTerm) -> CellExpr {
    cpairc(
        cvcomp(cida(ArrTerm::Proj1(d1.clone(), d2.clone())), c1),
        cvcomp(cida(ArrTerm::Proj2(d1, d2)), c2),
    )
}

/// One object with a weakly associative and unital multiplication: the
/// invertible associator and unitors satisfy the pentagon and triangle.
/// Models are (not necessarily strict) monoidal categories.
pub fn pseudomonoids() -> TheoryPresentation {
    let x = ob("x");
    let x2 = oprod(x.clone(), x.clone());
    let x3 = oprod(x2.clone(), x.clone());
    let ot = agen("otimes");
    let unit_into = |dom: ObTerm| acomp(ArrTerm::Bang(dom), agen("i"));
    // the two bracketed multiplications x³ → x
    let assoc_l = acomp(aprod(ot.clone(), aid(x.clone()), x2.clone(), x.clone()), ot.clone());
    let assoc_r = acomp(aprod(aid(x.clone()), ot.clone(), x.clone(), x2.clone()), ot.clone());
    let lam_src = acomp(apair(unit_into(x.clone()), aid(x.clone())), ot.clone());
    let rho_src = acomp(apair(aid(x.clone()), unit_into(x.clone())), ot.clone());
    let mk_cell = |name: &str, lsrc: &ArrTerm, rtgt: &ArrTerm, at: &ObTerm| CellGen {
        name: name.into(),
        top: pidp(at.clone()),
        bot: pidp(x.clone()),
        lsrc: lsrc.clone(),
        rtgt: rtgt.clone(),
    };
    let cell_gens = vec![
        mk_cell("alpha", &assoc_l, &assoc_r, &x3),
        mk_cell("alpha_inv", &assoc_r, &assoc_l, &x3),
        mk_cell("lambda", &lam_src, &aid(x.clone()), &x),
        mk_cell("lambda_inv", &aid(x.clone()), &lam_src, &x),
        mk_cell("rho", &rho_src, &aid(x.clone()), &x),
        mk_cell("rho_inv", &aid(x.clone()), &rho_src, &x),
    ];
    let mut equations = vec![
        (chcomp(cgen("alpha"), cgen("alpha_inv")), cida(assoc_l.clone())),
        (chcomp(cgen("alpha_inv"), cgen("alpha")), cida(assoc_r.clone())),
        (chcomp(cgen("lambda"), cgen("lambda_inv")), cida(lam_src.clone())),
        (chcomp(cgen("lambda_inv"), cgen("lambda")), cida(aid(x.clone()))),
        (chcomp(cgen("rho"), cgen("rho_inv")), cida(rho_src.clone())),
        (chcomp(cgen("rho_inv"), cgen("rho")), cida(aid(x.clone()))),
    ];
    // pentagon at x⁴
    let p1 = |a: &ObTerm, b: &ObTerm| ArrTerm::Proj1(a.clone(), b.clone());
    let p2 = |a: &ObTerm, b: &ObTerm| ArrTerm::Proj2(a.clone(), b.clone());
    // substitutions x⁴ → x³ (writing x⁴ as x² × x²)
    let u_first = apair(acomp(p1(&x2, &x2), ot.clone()), p2(&x2, &x2)); // (w⊗x, y, z)
    let u_last = apair(p1(&x2, &x2), acomp(p2(&x2, &x2), ot.clone())); // (w, x, y⊗z)
    let u_mid = {
        // (w, x⊗y, z)
        let a = p1(&x, &x3); // first coordinate
        let rest = p2(&x, &x3); // last three
        apair(
            apair(a, acomp(rest.clone(), acomp(p1(&x2, &x), ot.clone()))),
            acomp(rest, p2(&x2, &x)),
        )
    };
    let e1 = cvcomp(
        cell_prod(cgen("alpha"), cida(aid(x.clone())), x3.clone(), x.clone()),
        cida(ot.clone()),
    );
    let e2 = cvcomp(cida(u_mid), cgen("alpha"));
    let e3 = cvcomp(
        cell_prod(cida(aid(x.clone())), cgen("alpha"), x.clone(), x3.clone()),
        cida(ot.clone()),
    );
    let e4 = cvcomp(cida(u_first), cgen("alpha"));
    let e5 = cvcomp(cida(u_last), cgen("alpha"));
    equations.push((chcomp(chcomp(e1, e2), e3), chcomp(e4, e5)));
    // triangle at x²
    let u_tri = apair(
        apair(p1(&x, &x), acomp(ArrTerm::Bang(x2.clone()), agen("i"))),
        p2(&x, &x),
    ); // (w, I, x)
    let lam_whisk = cvcomp(
        cell_prod(cida(aid(x.clone())), cgen("lambda"), x.clone(), x.clone()),
        cida(ot.clone()),
    );
    let rho_whisk = cvcomp(
        cell_prod(cgen("rho"), cida(aid(x.clone())), x.clone(), x.clone()),
        cida(ot.clone()),
    );
    equations.push((
        chcomp(cvcomp(cida(u_tri), cgen("alpha")), lam_whisk),
        rho_whisk,
    ));
    TheoryPresentation {
        name: "pseudomonoids".into(),
        ob_gens: vec!["x".into()],
        arr_gens: vec![
            ArrGen { name: "otimes".into(), dom: x2, cod: x.clone() },
            ArrGen { name: "i".into(), dom: ObTerm::Unit, cod: x },
        ],
        pro_gens: vec![],
        cell_gens,
        equations,
        arr_equations: vec![],
        horizontally_trivial: true,
        cartesian: true,
    }
}
