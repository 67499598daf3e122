//! Seeded random rewirings as a stress test of the theory: every valid
//! in-degree-preserving rewiring must keep the characteristic polynomial,
//! satisfy the polynomial identity A'A = A'A', and drift the diameter by at
//! most one in either direction.

use cospectra::{
    char_poly, cospectral, de_bruijn, kautz, random_modification, verify_polynomial_identity,
    zero_multiplicity,
};

fn main() {
    for (name, host) in [
        ("B(2,3)", de_bruijn(2, 3)),
        ("B(2,4)", de_bruijn(2, 4)),
        ("K(2,3)", kautz(2, 3)),
    ] {
        let host_diam = host.diameter().unwrap();
        let mut changed = 0usize;
        let mut diameters = std::collections::BTreeMap::<usize, usize>::new();
        let samples = 60;
        for seed in 0..samples {
            let m = random_modification(&host, seed, true).expect("hosts have rewirable blocks");
            let report = m.validate();
            assert!(report.all(), "seed {seed}: {report}");
            let g = m.apply().unwrap();

            assert!(cospectral(&host, &g), "seed {seed} changed the spectrum");
            assert!(verify_polynomial_identity(&host, &g, 4));
            let r = m.x().len();
            assert!(zero_multiplicity(&char_poly(&g.adjacency_matrix())) >= r - 1);

            let diam = g.diameter().unwrap();
            assert!(host_diam.abs_diff(diam) <= 1, "seed {seed} moved diameter to {diam}");
            *diameters.entry(diam).or_default() += 1;
            if !m.removed().is_empty() {
                changed += 1;
            }
        }
        println!(
            "{name}: {samples} seeded rewirings, {changed} non-trivial, diameters {:?} (host {})",
            diameters, host_diam
        );
    }
    println!("every rewiring kept the spectrum and the polynomial identity");
}
