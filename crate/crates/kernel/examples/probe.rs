use double_kernel::fixtures::*;
use double_kernel::theory::{ObNf, Word};

fn main() {
    let m = mod2_graph_module();
    // replicate the check phases to find the failing construction
    for a in m.src.atomic_cells().unwrap() {
        println!("atomic {}", a.name);
        let lsrc = &a.boundary.lsrc;
        let rtgt = &a.boundary.rtgt;
        match m.act_nf(lsrc) {
            Ok(_) => println!("  act lsrc ok"),
            Err(e) => println!("  act lsrc ERR {e}"),
        }
        match m.act_nf(rtgt) {
            Ok(_) => println!("  act rtgt ok"),
            Err(e) => println!("  act rtgt ERR {e}"),
        }
    }
    for (i, (l, r)) in m.src.theory.arr_equations.iter().enumerate() {
        let a = m.src.theory.arr_nf(l).unwrap();
        let b = m.src.theory.arr_nf(r).unwrap();
        match (m.act_nf(&a), m.act_nf(&b)) {
            (Ok(x), Ok(y)) => println!("arr-eq {i}: {}", x == y),
            (x, y) => println!("arr-eq {i}: ERR {:?} {:?}", x.is_err(), y.is_err()),
        }
    }
    // unit laws block
    for w in m.src.closure.words.clone() {
        let _ = w;
    }
    let x2 = ObNf(vec!["x".into(), "x".into()]);
    let e2 = Word::empty(x2);
    println!("value x2 src {} tgt {}", m.pro_values[&e2].src, m.pro_values[&e2].tgt);
}
