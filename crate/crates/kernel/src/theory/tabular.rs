//! Fully tabulated finite strict double categories, with an exhaustive law
//! validator. Small theories such as the terminal double category and the
//! walking arrow can be given this way and converted to presentations.

use super::{ArrGen, ObTerm, TheoryPresentation};
use crate::error::KernelError;
use crate::report::Report;

/// Raw tables of a finite strict double category. Composition tables are
/// indexed by both operands and must be defined exactly on composable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabularDbl {
    pub n_ob: usize,
    pub arr_dom: Vec<usize>,
    pub arr_cod: Vec<usize>,
    pub arr_id: Vec<usize>,
    pub arr_comp: Vec<Vec<Option<usize>>>,
    pub pro_src: Vec<usize>,
    pub pro_tgt: Vec<usize>,
    pub pro_id: Vec<usize>,
    pub pro_comp: Vec<Vec<Option<usize>>>,
    pub cell_top: Vec<usize>,
    pub cell_bot: Vec<usize>,
    pub cell_left: Vec<usize>,
    pub cell_right: Vec<usize>,
    pub cell_id_pro: Vec<usize>,
    pub cell_id_arr: Vec<usize>,
    pub cell_vcomp: Vec<Vec<Option<usize>>>,
    pub cell_hcomp: Vec<Vec<Option<usize>>>,
}

impl TabularDbl {
    pub fn n_arr(&self) -> usize {
        self.arr_dom.len()
    }

    pub fn n_pro(&self) -> usize {
        self.pro_src.len()
    }

    pub fn n_cell(&self) -> usize {
        self.cell_top.len()
    }
}

/// Validates the tables as a strict double category; all violated law
/// instances are listed in the report.
pub fn make_tabular(t: &TabularDbl) -> Report {
    let mut r = Report::new();
    // vertical category of arrows
    for f in 0..t.n_arr() {
        for g in 0..t.n_arr() {
            let defined = t.arr_comp[f][g].is_some();
            let composable = t.arr_cod[f] == t.arr_dom[g];
            r.check(
                "tab/arr-comp-domain",
                &format!("arrows ({f},{g})"),
                defined == composable,
                "composition defined exactly on composable pairs",
            );
            if let Some(h) = t.arr_comp[f][g] {
                r.check(
                    "tab/arr-comp-bounds",
                    &format!("arrows ({f},{g})"),
                    t.arr_dom[h] == t.arr_dom[f] && t.arr_cod[h] == t.arr_cod[g],
                    "composite boundaries",
                );
            }
        }
    }
    for o in 0..t.n_ob {
        let e = t.arr_id[o];
        r.check(
            "tab/arr-id",
            &format!("object {o}"),
            t.arr_dom[e] == o && t.arr_cod[e] == o,
            "identity arrow endpoints",
        );
    }
    for f in 0..t.n_arr() {
        let (l, rr) = (t.arr_id[t.arr_dom[f]], t.arr_id[t.arr_cod[f]]);
        r.check(
            "tab/arr-unit",
            &format!("arrow {f}"),
            t.arr_comp[l][f] == Some(f) && t.arr_comp[f][rr] == Some(f),
            "unit laws",
        );
        for g in 0..t.n_arr() {
            for h in 0..t.n_arr() {
                if let (Some(fg), Some(gh)) = (t.arr_comp[f][g], t.arr_comp[g][h]) {
                    r.check_eq(
                        "tab/arr-assoc",
                        &format!("arrows ({f},{g},{h})"),
                        &t.arr_comp[fg][h],
                        &t.arr_comp[f][gh],
                    );
                }
            }
        }
    }
    // horizontal monoid of proarrows (strict)
    for m in 0..t.n_pro() {
        let (l, rr) = (t.pro_id[t.pro_src[m]], t.pro_id[t.pro_tgt[m]]);
        r.check(
            "tab/pro-unit",
            &format!("proarrow {m}"),
            t.pro_comp[l][m] == Some(m) && t.pro_comp[m][rr] == Some(m),
            "strict unit laws",
        );
        for n in 0..t.n_pro() {
            let defined = t.pro_comp[m][n].is_some();
            let composable = t.pro_tgt[m] == t.pro_src[n];
            r.check(
                "tab/pro-comp-domain",
                &format!("proarrows ({m},{n})"),
                defined == composable,
                "composition defined exactly on composable pairs",
            );
            for p in 0..t.n_pro() {
                if let (Some(mn), Some(np)) = (t.pro_comp[m][n], t.pro_comp[n][p]) {
                    r.check_eq(
                        "tab/pro-assoc",
                        &format!("proarrows ({m},{n},{p})"),
                        &t.pro_comp[mn][p],
                        &t.pro_comp[m][np],
                    );
                }
            }
        }
    }
    // cell boundaries and identities
    for c in 0..t.n_cell() {
        r.check(
            "tab/cell-frame",
            &format!("cell {c}"),
            t.arr_dom[t.cell_left[c]] == t.pro_src[t.cell_top[c]]
                && t.arr_cod[t.cell_left[c]] == t.pro_src[t.cell_bot[c]]
                && t.arr_dom[t.cell_right[c]] == t.pro_tgt[t.cell_top[c]]
                && t.arr_cod[t.cell_right[c]] == t.pro_tgt[t.cell_bot[c]],
            "cell frame",
        );
    }
    for m in 0..t.n_pro() {
        let c = t.cell_id_pro[m];
        r.check(
            "tab/cell-id-pro",
            &format!("proarrow {m}"),
            t.cell_top[c] == m
                && t.cell_bot[c] == m
                && t.cell_left[c] == t.arr_id[t.pro_src[m]]
                && t.cell_right[c] == t.arr_id[t.pro_tgt[m]],
            "identity cell frame",
        );
    }
    for f in 0..t.n_arr() {
        let c = t.cell_id_arr[f];
        r.check(
            "tab/cell-id-arr",
            &format!("arrow {f}"),
            t.cell_top[c] == t.pro_id[t.arr_dom[f]]
                && t.cell_bot[c] == t.pro_id[t.arr_cod[f]]
                && t.cell_left[c] == f
                && t.cell_right[c] == f,
            "external identity frame",
        );
    }
    for o in 0..t.n_ob {
        r.check_eq(
            "tab/id-coherence",
            &format!("object {o}"),
            &t.cell_id_arr[t.arr_id[o]],
            &t.cell_id_pro[t.pro_id[o]],
        );
    }
    // vertical category of cells
    for a in 0..t.n_cell() {
        for b in 0..t.n_cell() {
            let defined = t.cell_vcomp[a][b].is_some();
            let composable = t.cell_bot[a] == t.cell_top[b]
                && t.arr_comp[t.cell_left[a]][t.cell_left[b]].is_some();
            r.check(
                "tab/vcomp-domain",
                &format!("cells ({a},{b})"),
                defined == composable,
                "vertical composition domain",
            );
            if let Some(ab) = t.cell_vcomp[a][b] {
                r.check(
                    "tab/vcomp-bounds",
                    &format!("cells ({a},{b})"),
                    t.cell_top[ab] == t.cell_top[a]
                        && t.cell_bot[ab] == t.cell_bot[b]
                        && Some(t.cell_left[ab]) == t.arr_comp[t.cell_left[a]][t.cell_left[b]]
                        && Some(t.cell_right[ab]) == t.arr_comp[t.cell_right[a]][t.cell_right[b]],
                    "vertical composite boundaries",
                );
            }
            // horizontal composition
            let hdefined = t.cell_hcomp[a][b].is_some();
            let hcomposable = t.cell_right[a] == t.cell_left[b];
            r.check(
                "tab/hcomp-domain",
                &format!("cells ({a},{b})"),
                hdefined == hcomposable,
                "horizontal composition domain",
            );
            if let Some(ab) = t.cell_hcomp[a][b] {
                r.check(
                    "tab/hcomp-bounds",
                    &format!("cells ({a},{b})"),
                    Some(t.cell_top[ab]) == t.pro_comp[t.cell_top[a]][t.cell_top[b]]
                        && Some(t.cell_bot[ab]) == t.pro_comp[t.cell_bot[a]][t.cell_bot[b]]
                        && t.cell_left[ab] == t.cell_left[a]
                        && t.cell_right[ab] == t.cell_right[b],
                    "horizontal composite boundaries",
                );
            }
        }
    }
    for a in 0..t.n_cell() {
        // units
        let (it, ib) = (t.cell_id_pro[t.cell_top[a]], t.cell_id_pro[t.cell_bot[a]]);
        r.check(
            "tab/vcomp-unit",
            &format!("cell {a}"),
            t.cell_vcomp[it][a] == Some(a) && t.cell_vcomp[a][ib] == Some(a),
            "vertical unit laws",
        );
        let (il, ir) = (t.cell_id_arr[t.cell_left[a]], t.cell_id_arr[t.cell_right[a]]);
        r.check(
            "tab/hcomp-unit",
            &format!("cell {a}"),
            t.cell_hcomp[il][a] == Some(a) && t.cell_hcomp[a][ir] == Some(a),
            "horizontal unit laws",
        );
        for b in 0..t.n_cell() {
            for c in 0..t.n_cell() {
                if let (Some(ab), Some(bc)) = (t.cell_vcomp[a][b], t.cell_vcomp[b][c]) {
                    r.check_eq(
                        "tab/vcomp-assoc",
                        &format!("cells ({a},{b},{c})"),
                        &t.cell_vcomp[ab][c],
                        &t.cell_vcomp[a][bc],
                    );
                }
                if let (Some(ab), Some(bc)) = (t.cell_hcomp[a][b], t.cell_hcomp[b][c]) {
                    r.check_eq(
                        "tab/hcomp-assoc",
                        &format!("cells ({a},{b},{c})"),
                        &t.cell_hcomp[ab][c],
                        &t.cell_hcomp[a][bc],
                    );
                }
            }
        }
    }
    // functoriality of identities and interchange
    for f in 0..t.n_arr() {
        for g in 0..t.n_arr() {
            if let Some(fg) = t.arr_comp[f][g] {
                r.check_eq(
                    "tab/id-vcomp",
                    &format!("arrows ({f},{g})"),
                    &t.cell_vcomp[t.cell_id_arr[f]][t.cell_id_arr[g]],
                    &Some(t.cell_id_arr[fg]),
                );
            }
        }
    }
    for m in 0..t.n_pro() {
        for n in 0..t.n_pro() {
            if let Some(mn) = t.pro_comp[m][n] {
                r.check_eq(
                    "tab/id-hcomp",
                    &format!("proarrows ({m},{n})"),
                    &t.cell_hcomp[t.cell_id_pro[m]][t.cell_id_pro[n]],
                    &Some(t.cell_id_pro[mn]),
                );
            }
        }
    }
    for a in 0..t.n_cell() {
        for b in 0..t.n_cell() {
            for a2 in 0..t.n_cell() {
                for b2 in 0..t.n_cell() {
                    let left = t.cell_hcomp[a][b]
                        .and_then(|ab| t.cell_hcomp[a2][b2].and_then(|ab2| t.cell_vcomp[ab][ab2]));
                    let right = t.cell_vcomp[a][a2]
                        .and_then(|aa| t.cell_vcomp[b][b2].and_then(|bb| t.cell_hcomp[aa][bb]));
                    if left.is_some() && right.is_some() {
                        r.check_eq(
                            "tab/interchange",
                            &format!("cells ({a},{b};{a2},{b2})"),
                            &left,
                            &right,
                        );
                    }
                }
            }
        }
    }
    r
}

/// The terminal double category.
pub fn terminal_dbl() -> TabularDbl {
    TabularDbl {
        n_ob: 1,
        arr_dom: vec![0],
        arr_cod: vec![0],
        arr_id: vec![0],
        arr_comp: vec![vec![Some(0)]],
        pro_src: vec![0],
        pro_tgt: vec![0],
        pro_id: vec![0],
        pro_comp: vec![vec![Some(0)]],
        cell_top: vec![0],
        cell_bot: vec![0],
        cell_left: vec![0],
        cell_right: vec![0],
        cell_id_pro: vec![0],
        cell_id_arr: vec![0],
        cell_vcomp: vec![vec![Some(0)]],
        cell_hcomp: vec![vec![Some(0)]],
    }
}

/// The walking arrow: objects 0, 1, one non-identity arrow, only identity
/// proarrows, and only external identity cells.
pub fn walking_arrow_tabular() -> TabularDbl {
    // arrows: 0 = 1_a, 1 = 1_b, 2 = f: a → b
    let arr_comp = vec![
        vec![Some(0), None, Some(2)],
        vec![None, Some(1), None],
        vec![None, Some(2), None],
    ];
    // cells mirror arrows: cell i = id of arrow i
    let cell_vcomp = arr_comp.clone();
    // horizontal composition of external identity cells shares middle arrows
    let mut cell_hcomp = vec![vec![None; 3]; 3];
    for (a, row) in cell_hcomp.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            if a == b {
                *slot = Some(a);
            }
        }
    }
    TabularDbl {
        n_ob: 2,
        arr_dom: vec![0, 1, 0],
        arr_cod: vec![0, 1, 1],
        arr_id: vec![0, 1],
        arr_comp,
        pro_src: vec![0, 1],
        pro_tgt: vec![0, 1],
        pro_id: vec![0, 1],
        pro_comp: vec![vec![Some(0), None], vec![None, Some(1)]],
        cell_top: vec![0, 1, 0],
        cell_bot: vec![0, 1, 1],
        cell_left: vec![0, 1, 2],
        cell_right: vec![0, 1, 2],
        cell_id_pro: vec![0, 1],
        cell_id_arr: vec![0, 1, 2],
        cell_vcomp,
        cell_hcomp,
    }
}

impl TabularDbl {
    /// Converts to a presentation when the double category is horizontally
    /// trivial and all cells are external identities; exact in that case.
    pub fn to_presentation(&self, name: &str) -> Result<TheoryPresentation, KernelError> {
        let trivial_pros = (0..self.n_pro()).all(|m| self.pro_id.contains(&m));
        let trivial_cells = (0..self.n_cell()).all(|c| self.cell_id_arr.contains(&c));
        if !trivial_pros || !trivial_cells {
            return Err(KernelError::NotHorizontallyTrivial);
        }
        let ob_name = |o: usize| format!("o{o}");
        let arr_name = |f: usize| format!("a{f}");
        let mut arr_gens = Vec::new();
        for f in 0..self.n_arr() {
            if self.arr_id.contains(&f) {
                continue;
            }
            arr_gens.push(ArrGen {
                name: arr_name(f),
                dom: ObTerm::Gen(ob_name(self.arr_dom[f])),
                cod: ObTerm::Gen(ob_name(self.arr_cod[f])),
            });
        }
        let as_term = |f: usize| -> super::ArrTerm {
            if self.arr_id.contains(&f) {
                super::aid(ObTerm::Gen(ob_name(self.arr_dom[f])))
            } else {
                super::agen(&arr_name(f))
            }
        };
        let mut arr_equations = Vec::new();
        for f in 0..self.n_arr() {
            for g in 0..self.n_arr() {
                if self.arr_id.contains(&f) || self.arr_id.contains(&g) {
                    continue;
                }
                if let Some(h) = self.arr_comp[f][g] {
                    arr_equations.push((super::acomp(as_term(f), as_term(g)), as_term(h)));
                }
            }
        }
        let t = TheoryPresentation {
            name: name.into(),
            ob_gens: (0..self.n_ob).map(ob_name).collect(),
            arr_gens,
            pro_gens: vec![],
            cell_gens: vec![],
            equations: vec![],
            arr_equations,
            horizontally_trivial: true,
            cartesian: false,
        };
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_passes() {
        assert!(make_tabular(&terminal_dbl()).passed());
    }

    #[test]
    fn walking_arrow_passes_and_presents() {
        let t = walking_arrow_tabular();
        assert!(make_tabular(&t).passed());
        let p = t.to_presentation("walking_arrow_tab").unwrap();
        assert_eq!(p.arr_gens.len(), 1);
        assert_eq!(p.ob_gens.len(), 2);
    }

    #[test]
    fn broken_interchange_is_reported() {
        // perturb the walking arrow: make id_f ⊙ id_f compose to the wrong cell
        let mut t = walking_arrow_tabular();
        t.cell_hcomp[2][2] = Some(0);
        let r = make_tabular(&t);
        assert!(!r.passed());
        assert!(r
            .entries
            .iter()
            .any(|e| e.law == "tab/hcomp-bounds" || e.law == "tab/hcomp-unit"));
    }
}
