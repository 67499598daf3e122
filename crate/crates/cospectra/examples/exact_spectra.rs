//! Characteristic polynomials over exact integers for a ladder of family
//! members. De Bruijn digraphs have the extreme spectrum {0^(n-1), d^1};
//! Kautz digraphs add an eigenvalue -1 with multiplicity d. No floating
//! point is involved, so every printed coefficient is exact.

use cospectra::{
    char_poly, de_bruijn, integer_spectrum, kautz, spectrum_to_json, zero_multiplicity,
};

fn main() {
    println!("De Bruijn spectra (always {{0^(n-1), d^1}}):");
    for (d, ell) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let g = de_bruijn(d, ell);
        let p = char_poly(&g.adjacency_matrix());
        println!("  B({d},{ell}) n={:>3}: {}  {}", g.n(), integer_spectrum(&p), p);
    }

    println!("\nKautz spectra (always {{(-1)^d, 0^(n-d-1), d^1}}):");
    for (d, ell) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let g = kautz(d, ell);
        let p = char_poly(&g.adjacency_matrix());
        println!("  K({d},{ell}) n={:>3}: {}", g.n(), integer_spectrum(&p));
    }

    // the zero eigenvalue multiplicity certifies how much of the spectrum
    // a rewiring is forced to keep: it is at least |X| - 1 after any valid
    // in-degree-preserving rewiring of a block X
    let b = de_bruijn(2, 4);
    let p = char_poly(&b.adjacency_matrix());
    println!("\nB(2,4) zero multiplicity: {}", zero_multiplicity(&p));

    // machine-readable form, exact at any coefficient size
    println!("\nspectrum document for B(2,3):");
    println!("{}", spectrum_to_json(&char_poly(&de_bruijn(2, 3).adjacency_matrix())));
}
