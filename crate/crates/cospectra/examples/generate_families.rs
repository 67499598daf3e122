//! Builds De Bruijn and Kautz digraphs and shows the structure that makes
//! them useful: sequence-shift arcs, line-digraph iteration, and the exact
//! walk equations they satisfy.

use cospectra::{check_reachability_equation, de_bruijn, kautz, ReachabilityKind};

fn main() {
    let b = de_bruijn(2, 3);
    println!("B(2,3): {} vertices, {} arcs, diameter {}", b.n(), b.arc_count(), b.diameter().unwrap());
    for u in 0..b.n() {
        let outs: Vec<String> = b.out_neighbors(u).iter().map(|&v| b.vertex_name(v)).collect();
        println!("  {} -> {}", b.vertex_name(u), outs.join(", "));
    }

    // every De Bruijn digraph is the line digraph of the previous one
    let lifted = de_bruijn(2, 2).line_digraph().unwrap();
    assert_eq!(lifted, b);
    println!("L(B(2,2)) = B(2,3): {}", lifted == b);

    // exactly one walk of length 3 between every ordered pair
    println!(
        "A^3 = J on B(2,3): {}",
        check_reachability_equation(&b, 3, ReachabilityKind::Upp)
    );

    let k = kautz(2, 3);
    println!("\nK(2,3): {} vertices, {} arcs, diameter {}", k.n(), k.arc_count(), k.diameter().unwrap());
    for u in 0..k.n() {
        let outs: Vec<String> = k.out_neighbors(u).iter().map(|&v| k.vertex_name(v)).collect();
        println!("  {} -> {}", k.vertex_name(u), outs.join(", "));
    }
    println!(
        "A^3 + A^2 = J on K(2,3): {}",
        check_reachability_equation(&k, 3, ReachabilityKind::Kautz)
    );
    assert_eq!(kautz(2, 2).line_digraph().unwrap(), k);

    // both are line digraphs themselves, which is what the rewiring needs
    println!("\nB(2,3) passes the line-digraph test: {}", b.is_line_digraph());
    println!("K(2,3) passes the line-digraph test: {}", k.is_line_digraph());
}
