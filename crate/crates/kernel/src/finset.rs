//! Finite sets, functions between them, and the limits/colimits the rest of
//! the kernel is built from: products, pullbacks and coequalizers.
//!
//! Elements are positional: the set of size `n` has elements `0..n`. All
//! chosen (co)limits use a fixed canonical element order so that downstream
//! comparisons can be bit-exact.

use crate::error::KernelError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finite set. Identity is by cardinality only; the optional label is
/// carried for reporting and ignored by `Eq`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FinSet {
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}
impl Eq for FinSet {}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size, label: None }
    }

    pub fn labeled(size: usize, label: impl Into<String>) -> Self {
        FinSet { size, label: Some(label.into()) }
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.size
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{}[{}]", l, self.size),
            None => write!(f, "[{}]", self.size),
        }
    }
}

/// A total function between finite sets, tabulated on every element of the
/// domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinFn {
    pub dom: FinSet,
    pub cod: FinSet,
    pub map: Vec<usize>,
}

impl FinFn {
    /// Validates and builds a function value.
    pub fn make(dom: FinSet, cod: FinSet, map: Vec<usize>) -> Result<FinFn, KernelError> {
        if map.len() != dom.size {
            return Err(KernelError::LengthMismatch { expected: dom.size, found: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= cod.size) {
            return Err(KernelError::OutOfRange { value: bad, bound: cod.size });
        }
        Ok(FinFn { dom, cod, map })
    }

    pub fn identity(set: FinSet) -> FinFn {
        let map = (0..set.size).collect();
        FinFn { dom: set.clone(), cod: set, map }
    }

    pub fn is_identity(&self) -> bool {
        self.dom.size == self.cod.size && self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_bijection(&self) -> bool {
        if self.dom.size != self.cod.size {
            return false;
        }
        let mut seen = vec![false; self.cod.size];
        for &v in &self.map {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Result<FinFn, KernelError> {
        if !self.is_bijection() {
            return Err(KernelError::NotInvertible);
        }
        let mut map = vec![0; self.cod.size];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Ok(FinFn { dom: self.cod.clone(), cod: self.dom.clone(), map })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// Composition in diagrammatic order: `(f.then(g))(i) = g(f(i))`.
    pub fn then(&self, g: &FinFn) -> Result<FinFn, KernelError> {
        if self.cod != g.dom {
            return Err(KernelError::BoundaryMismatch(format!(
                "compose_fn: cod {} vs dom {}",
                self.cod, g.dom
            )));
        }
        let map = self.map.iter().map(|&i| g.map[i]).collect();
        Ok(FinFn { dom: self.dom.clone(), cod: g.cod.clone(), map })
    }

    /// The unique map into the one-point set.
    pub fn bang(dom: FinSet) -> FinFn {
        let map = vec![0; dom.size];
        FinFn { dom, cod: FinSet::new(1), map }
    }

    /// Constant function when the codomain is inhabited.
    pub fn constant(dom: FinSet, cod: FinSet, value: usize) -> Result<FinFn, KernelError> {
        let map = vec![value; dom.size];
        FinFn::make(dom, cod, map)
    }
}

impl fmt::Display for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{} {:?}", self.dom, self.cod, self.map)
    }
}

/// Canonical product: `P.size = x.size * y.size`, encoding `k = i*y.size + j`.
pub fn product(x: &FinSet, y: &FinSet) -> (FinSet, FinFn, FinFn) {
    let p = FinSet::new(x.size * y.size);
    let mut m1 = Vec::with_capacity(p.size);
    let mut m2 = Vec::with_capacity(p.size);
    for i in 0..x.size {
        for j in 0..y.size {
            m1.push(i);
            m2.push(j);
        }
    }
    let p1 = FinFn { dom: p.clone(), cod: x.clone(), map: m1 };
    let p2 = FinFn { dom: p.clone(), cod: y.clone(), map: m2 };
    (p, p1, p2)
}

/// Index of the pair `(i, j)` in the canonical product with second factor of
/// size `ysize`.
pub fn pair_index(i: usize, j: usize, ysize: usize) -> usize {
    i * ysize + j
}

/// The pairing `⟨f, g⟩` into the canonical product of the codomains.
pub fn pairing(f: &FinFn, g: &FinFn) -> Result<FinFn, KernelError> {
    if f.dom != g.dom {
        return Err(KernelError::BoundaryMismatch(format!(
            "pairing: dom {} vs {}",
            f.dom, g.dom
        )));
    }
    let (p, _, _) = product(&f.cod, &g.cod);
    let map = f
        .map
        .iter()
        .zip(&g.map)
        .map(|(&a, &b)| pair_index(a, b, g.cod.size))
        .collect();
    Ok(FinFn { dom: f.dom.clone(), cod: p, map })
}

/// Product of functions, `f × g` on canonical products.
pub fn product_fn(f: &FinFn, g: &FinFn) -> FinFn {
    let (dp, d1, d2) = product(&f.dom, &g.dom);
    let (cp, _, _) = product(&f.cod, &g.cod);
    let map = (0..dp.size)
        .map(|k| pair_index(f.map[d1.map[k]], g.map[d2.map[k]], g.cod.size))
        .collect();
    FinFn { dom: dp, cod: cp, map }
}

/// Canonical pullback of a cospan `f: X → Z ← Y : g`.
///
/// The apex enumerates the pairs `(i, j)` with `f(i) = g(j)` in lexicographic
/// order of `(i, j)`.
pub fn pullback(f: &FinFn, g: &FinFn) -> Result<(FinSet, FinFn, FinFn), KernelError> {
    if f.cod != g.cod {
        return Err(KernelError::BoundaryMismatch(format!(
            "pullback: cods {} vs {}",
            f.cod, g.cod
        )));
    }
    let mut m1 = Vec::new();
    let mut m2 = Vec::new();
    for i in 0..f.dom.size {
        for j in 0..g.dom.size {
            if f.map[i] == g.map[j] {
                m1.push(i);
                m2.push(j);
            }
        }
    }
    let p = FinSet::new(m1.len());
    let p1 = FinFn { dom: p.clone(), cod: f.dom.clone(), map: m1 };
    let p2 = FinFn { dom: p.clone(), cod: g.dom.clone(), map: m2 };
    Ok((p, p1, p2))
}

/// Given a cone `(h1, h2)` over the cospan `(f, g)`, the unique mediating map
/// into the canonical pullback.
pub fn pullback_mediate(
    f: &FinFn,
    g: &FinFn,
    h1: &FinFn,
    h2: &FinFn,
) -> Result<FinFn, KernelError> {
    let (p, p1, p2) = pullback(f, g)?;
    if h1.dom != h2.dom || h1.cod != f.dom || h2.cod != g.dom {
        return Err(KernelError::BoundaryMismatch("pullback_mediate: cone legs".into()));
    }
    // index pairs of the apex for lookup
    let mut map = Vec::with_capacity(h1.dom.size);
    for e in 0..h1.dom.size {
        let (a, b) = (h1.map[e], h2.map[e]);
        if f.map[a] != g.map[b] {
            return Err(KernelError::BoundaryMismatch(format!(
                "pullback_mediate: not a cone at element {e}"
            )));
        }
        let idx = (0..p.size)
            .find(|&k| p1.map[k] == a && p2.map[k] == b)
            .expect("pair present in canonical pullback");
        map.push(idx);
    }
    Ok(FinFn { dom: h1.dom.clone(), cod: p, map })
}

/// Union-find over `0..n`, used to form quotient sets.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as representative so class order is canonical
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

/// Canonical coequalizer of a parallel pair `f, g: W ⇉ X`.
///
/// `Q` is the quotient of `X` by the equivalence relation generated by
/// `f(i) ~ g(i)`; classes are numbered in increasing order of their least
/// representative and `q` is the quotient map.
pub fn coequalizer(f: &FinFn, g: &FinFn) -> Result<(FinSet, FinFn), KernelError> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(KernelError::BoundaryMismatch("coequalizer: parallel pair".into()));
    }
    let n = f.cod.size;
    let mut uf = UnionFind::new(n);
    for i in 0..f.dom.size {
        uf.union(f.map[i], g.map[i]);
    }
    let mut class_of = vec![usize::MAX; n];
    let mut count = 0;
    let mut map = Vec::with_capacity(n);
    for x in 0..n {
        let r = uf.find(x);
        if class_of[r] == usize::MAX {
            class_of[r] = count;
            count += 1;
        }
        map.push(class_of[r]);
    }
    let q = FinSet::new(count);
    Ok((q.clone(), FinFn { dom: f.cod.clone(), cod: q, map }))
}

/// Least representative of each coequalizer class, indexed by class.
pub fn coequalizer_reps(q: &FinFn) -> Vec<usize> {
    let mut reps = vec![usize::MAX; q.cod.size];
    for (x, &c) in q.map.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = x;
        }
    }
    reps
}

/// Factors `h` through the coequalizer map `q` (i.e. finds the unique `k`
/// with `q.then(k) = h`), failing if `h` is not constant on classes.
pub fn coequalizer_factor(q: &FinFn, h: &FinFn) -> Result<FinFn, KernelError> {
    if h.dom != q.dom {
        return Err(KernelError::BoundaryMismatch("coequalizer_factor: domains".into()));
    }
    let mut map = vec![usize::MAX; q.cod.size];
    for x in 0..q.dom.size {
        let c = q.map[x];
        if map[c] == usize::MAX {
            map[c] = h.map[x];
        } else if map[c] != h.map[x] {
            return Err(KernelError::NotEquivariant(format!(
                "map does not respect quotient classes at element {x}"
            )));
        }
    }
    Ok(FinFn { dom: q.cod.clone(), cod: h.cod.clone(), map })
}

/// All functions `dom → cod`, in lexicographic order of their value tables.
pub fn all_functions(dom: &FinSet, cod: &FinSet) -> Vec<FinFn> {
    let mut out = Vec::new();
    if dom.size == 0 {
        out.push(FinFn { dom: dom.clone(), cod: cod.clone(), map: vec![] });
        return out;
    }
    if cod.size == 0 {
        return out; // no maps from an inhabited set into the empty set
    }
    let mut cur = vec![0usize; dom.size];
    loop {
        out.push(FinFn { dom: dom.clone(), cod: cod.clone(), map: cur.clone() });
        let mut k = dom.size;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < cod.size {
                break;
            }
            cur[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize) -> FinSet {
        FinSet::new(n)
    }

    #[test]
    fn make_fn_validates() {
        assert_eq!(FinFn::make(set(2), set(2), vec![0, 1]).unwrap(), FinFn::identity(set(2)));
        let t = FinFn::make(set(3), set(1), vec![0, 0, 0]).unwrap();
        assert_eq!(t, FinFn::bang(set(3)));
        assert!(matches!(
            FinFn::make(set(2), set(2), vec![0, 2]),
            Err(KernelError::OutOfRange { .. })
        ));
        assert!(matches!(
            FinFn::make(set(2), set(2), vec![0]),
            Err(KernelError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn compose_cases() {
        let swap = FinFn::make(set(2), set(2), vec![1, 0]).unwrap();
        assert!(swap.then(&swap).unwrap().is_identity());
        let g = FinFn::make(set(2), set(3), vec![2, 0]).unwrap();
        assert_eq!(FinFn::identity(set(2)).then(&g).unwrap(), g);
        let f = FinFn::make(set(3), set(2), vec![0, 1, 0]).unwrap();
        let h = FinFn::make(set(2), set(2), vec![1, 1]).unwrap();
        assert_eq!(f.then(&h).unwrap().map, vec![1, 1, 1]);
    }

    #[test]
    fn product_cases() {
        let (p, p1, p2) = product(&set(2), &set(3));
        assert_eq!(p.size, 6);
        assert_eq!(pairing(&p1, &p2).unwrap(), FinFn::identity(p.clone()));
        let (z, _, _) = product(&set(0), &set(5));
        assert_eq!(z.size, 0);
    }

    #[test]
    fn pullback_cases() {
        // over the terminal set the pullback is the product
        let f = FinFn::bang(set(2));
        let g = FinFn::bang(set(3));
        let (p, _, _) = pullback(&f, &g).unwrap();
        assert_eq!(p.size, 6);

        // along an identity the pullback is the domain
        let f = FinFn::make(set(3), set(2), vec![0, 1, 0]).unwrap();
        let (p, p1, _) = pullback(&f, &FinFn::identity(set(2))).unwrap();
        assert_eq!(p.size, 3);
        assert!(p1.is_identity());

        // frozen from enumerating pairs (i,j) with f(i) = g(j)
        let g = FinFn::make(set(2), set(2), vec![1, 1]).unwrap();
        let (p, p1, p2) = pullback(&f, &g).unwrap();
        assert_eq!(p.size, 2);
        assert_eq!((p1.map.clone(), p2.map.clone()), (vec![1, 1], vec![0, 1]));
    }

    #[test]
    fn coequalizer_cases() {
        let f = FinFn::make(set(2), set(3), vec![0, 1]).unwrap();
        assert_eq!(coequalizer(&f, &f).unwrap().0.size, 3);
        let g = FinFn::make(set(2), set(3), vec![1, 2]).unwrap();
        assert_eq!(coequalizer(&f, &g).unwrap().0.size, 1);
        let e = FinFn::make(set(0), set(3), vec![]).unwrap();
        let (q, qm) = coequalizer(&e, &e).unwrap();
        assert_eq!(q.size, 3);
        assert!(qm.is_identity());
    }

    /// Independent oracle: connected components of the undirected graph on
    /// `cod` with one edge `{f(i), g(i)}` per domain element.
    fn component_count(f: &FinFn, g: &FinFn) -> usize {
        let n = f.cod.size;
        let mut adj = vec![Vec::new(); n];
        for i in 0..f.dom.size {
            adj[f.map[i]].push(g.map[i]);
            adj[g.map[i]].push(f.map[i]);
        }
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    fn arb_parallel_pair() -> impl Strategy<Value = (FinFn, FinFn)> {
        (0usize..5, 1usize..5).prop_flat_map(|(d, c)| {
            (
                proptest::collection::vec(0..c, d),
                proptest::collection::vec(0..c, d),
            )
                .prop_map(move |(mf, mg)| {
                    (
                        FinFn::make(set(d), set(c), mf).unwrap(),
                        FinFn::make(set(d), set(c), mg).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn coequalizer_matches_component_oracle((f, g) in arb_parallel_pair()) {
            let (q, _) = coequalizer(&f, &g).unwrap();
            prop_assert_eq!(q.size, component_count(&f, &g));
        }

        #[test]
        fn coequalizer_universal_property((f, g) in arb_parallel_pair()) {
            let (_, q) = coequalizer(&f, &g).unwrap();
            prop_assert_eq!(f.then(&q).unwrap(), g.then(&q).unwrap());
            // any other coequalizing map factors uniquely
            let h = q.then(&FinFn::bang(q.cod.clone())).unwrap();
            let k = coequalizer_factor(&q, &h).unwrap();
            prop_assert_eq!(q.then(&k).unwrap(), h);
        }
    }

    #[test]
    fn compose_associative_unital_exhaustive() {
        for a in 0..4usize {
            for b in 0..4usize {
                for f in all_functions(&set(a), &set(b)) {
                    assert_eq!(FinFn::identity(set(a)).then(&f).unwrap(), f);
                    assert_eq!(f.then(&FinFn::identity(set(b))).unwrap(), f);
                    for c in 0..3usize {
                        for g in all_functions(&set(b), &set(c)) {
                            for d in 0..3usize {
                                for h in all_functions(&set(c), &set(d)) {
                                    let lhs = f.then(&g).unwrap().then(&h).unwrap();
                                    let rhs = f.then(&g.then(&h).unwrap()).unwrap();
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_projections_exhaustive() {
        for a in 0..3usize {
            for b in 0..4usize {
                for c in 0..3usize {
                    let (_, p1, p2) = product(&set(b), &set(c));
                    for f in all_functions(&set(a), &set(b)) {
                        for g in all_functions(&set(a), &set(c)) {
                            let pr = pairing(&f, &g).unwrap();
                            assert_eq!(pr.then(&p1).unwrap(), f);
                            assert_eq!(pr.then(&p2).unwrap(), g);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_universal_property_small() {
        // exhaustive over a fixed cospan, cones with apex size <= 4
        let f = FinFn::make(set(3), set(2), vec![0, 1, 0]).unwrap();
        let g = FinFn::make(set(2), set(2), vec![1, 1]).unwrap();
        let (p, p1, p2) = pullback(&f, &g).unwrap();
        for apex in 0..5usize {
            for h1 in all_functions(&set(apex), &f.dom) {
                for h2 in all_functions(&set(apex), &g.dom) {
                    let is_cone = h1.then(&f).unwrap() == h2.then(&g).unwrap();
                    if !is_cone {
                        continue;
                    }
                    let m = pullback_mediate(&f, &g, &h1, &h2).unwrap();
                    assert_eq!(m.then(&p1).unwrap(), h1);
                    assert_eq!(m.then(&p2).unwrap(), h2);
                    // uniqueness: any map with the same projections equals m
                    for other in all_functions(&set(apex), &p) {
                        if other.then(&p1).unwrap() == h1 && other.then(&p2).unwrap() == h2 {
                            assert_eq!(other, m);
                        }
                    }
                }
            }
        }
    }
}
