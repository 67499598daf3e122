//! Out-rewiring and in-rewiring applied simultaneously to B(2,3). The
//! result keeps the spectrum but loses the unique-walk equation A^3 = J;
//! instead it satisfies A^4 = 2J, and its diameter is still 3.

use cospectra::{
    char_poly, check_reachability_equation, cospectral, de_bruijn, double_modify, isomorphic,
    Modification, ReachabilityKind, Side,
};

fn main() {
    let b = de_bruijn(2, 3);

    // out side: redistribute the out-arcs of X = {100, 101}
    let out_mod = Modification::new(
        b.clone(),
        &[4, 5],
        &[(4, 1), (5, 3)],
        &[(4, 3), (5, 1)],
        Side::Out,
    )
    .unwrap();

    // in side, on the disjoint block X' = {010, 110}: redistribute the
    // arcs arriving from {001, 011}
    let in_mod = Modification::new(
        b.clone(),
        &[2, 6],
        &[(1, 2), (3, 6)],
        &[(1, 6), (3, 2)],
        Side::In,
    )
    .unwrap();

    assert!(out_mod.validate().all());
    assert!(in_mod.validate().all());

    let bstar = double_modify(&b, &out_mod, &in_mod).unwrap();
    println!("doubly rewired B(2,3):");
    for u in 0..bstar.n() {
        let outs: Vec<String> = bstar
            .out_neighbors(u)
            .iter()
            .map(|&v| bstar.vertex_name(v))
            .collect();
        println!("  {} -> {}", bstar.vertex_name(u), outs.join(", "));
    }

    println!("\ncospectral with B(2,3): {}", cospectral(&b, &bstar));
    println!("charpoly: {}", char_poly(&bstar.adjacency_matrix()));
    println!("isomorphic to B(2,3): {}", isomorphic(&b, &bstar).unwrap());

    // the unique-walk equation breaks, but doubles one step later
    let upp3 = check_reachability_equation(&bstar, 3, ReachabilityKind::Upp);
    let two_j4 = check_reachability_equation(&bstar, 4, ReachabilityKind::Scaled(2));
    println!("A^3 = J:  {upp3}");
    println!("A^4 = 2J: {two_j4}");
    assert!(!upp3 && two_j4);

    println!("diameter: {} (host: {})", bstar.diameter().unwrap(), b.diameter().unwrap());
}
