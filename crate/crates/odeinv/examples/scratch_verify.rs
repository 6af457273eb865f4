fn main() {
    let t = std::time::Instant::now();
    let rep = odeinv::lie::verify_commutator_table().unwrap();
    println!("pairs: {}, nonzero expected: {}, mismatches: {}", rep.pairs_checked, rep.nonzero_expected, rep.mismatches.len());
    for m in rep.mismatches.iter().take(12) {
        println!("  [e{},e{}] coord {}: computed {} vs expected {}", m.i, m.j, m.coordinate, m.computed, m.expected);
    }
    println!("table time: {:?}", t.elapsed());

    let t = std::time::Instant::now();
    let chain = odeinv::lie::verify_solvable_chain().unwrap();
    println!("chain ok: {} (g1 abelian: {}, closure: {})", chain.ok(), chain.g1_abelian, chain.closure_ok);
    for (k, ok, w) in &chain.inclusions {
        if !ok { println!("  level {k}: {w:?}"); }
    }
    println!("chain time: {:?}", t.elapsed());

    let t = std::time::Instant::now();
    let ann = odeinv::lie::verify_gamma_annihilation().unwrap();
    println!("gamma annihilation: {} results, ok: {}", ann.results.len(), ann.ok());
    for f in ann.failures().iter().take(10) { println!("  FAIL {} beta_{}", f.0, f.1); }
    let ann = odeinv::lie::verify_alpha_annihilation().unwrap();
    println!("alpha annihilation: {} results, ok: {}", ann.results.len(), ann.ok());
    for f in ann.failures().iter().take(10) { println!("  FAIL {} alpha_{}", f.0, f.1); }
    let ann = odeinv::lie::verify_gamma_cut_annihilation().unwrap();
    println!("gamma-cut annihilation: {} results, ok: {}", ann.results.len(), ann.ok());
    for f in ann.failures().iter().take(10) { println!("  FAIL {} gamma_{}", f.0, f.1); }
    println!("annihilation time: {:?}", t.elapsed());

    let t = std::time::Instant::now();
    let (n, fails) = odeinv::lie::verify_jacobi(200, 0xbeef).unwrap();
    println!("jacobi: {} triples, {} failures", n, fails.len());
    println!("jacobi time: {:?}", t.elapsed());
}
