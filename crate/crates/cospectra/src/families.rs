//! De Bruijn and Kautz digraph constructors.
//!
//! Vertices are words in lexicographic order and arcs follow the shift rule:
//! `x1 x2 .. xl` is adjacent to `x2 .. xl k`. Both families are d-regular
//! and d^ell (resp. (d+1) d^(ell-1)) vertices strong.

use std::collections::BTreeMap;

use crate::digraph::{Digraph, VertexWord};

const MAX_ORDER: usize = 1 << 20;

/// De Bruijn digraph B(d, ell): all words of length `ell` over `{0..d-1}`.
pub fn de_bruijn(d: usize, ell: usize) -> Digraph {
    assert!(d >= 1 && ell >= 1, "degree and word length must be positive");
    let n = d
        .checked_pow(ell as u32)
        .filter(|&n| n <= MAX_ORDER)
        .expect("de Bruijn digraph too large");
    let mut arcs = Vec::with_capacity(n * d);
    for u in 0..n {
        for k in 0..d {
            arcs.push((u, (u * d + k) % n));
        }
    }
    let labels = (0..n)
        .map(|mut u| {
            let mut sym = vec![0u8; ell];
            for s in sym.iter_mut().rev() {
                *s = (u % d) as u8;
                u /= d;
            }
            VertexWord::new(sym, d as u8).unwrap()
        })
        .collect();
    Digraph::new(n, &arcs)
        .and_then(|g| g.with_labels(labels))
        .expect("de Bruijn construction is well-formed")
}

/// Kautz digraph K(d, ell): words of length `ell` over `{0..d}` with no two
/// consecutive symbols equal.
pub fn kautz(d: usize, ell: usize) -> Digraph {
    assert!(d >= 1 && ell >= 1, "degree and word length must be positive");
    let n = (d + 1)
        .checked_mul(d.pow(ell as u32 - 1))
        .filter(|&n| n <= MAX_ORDER)
        .expect("Kautz digraph too large");
    // words in lexicographic order
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..ell {
        let mut next = Vec::new();
        for w in &words {
            for s in 0..=d as u8 {
                if w.last() != Some(&s) {
                    let mut w = w.clone();
                    w.push(s);
                    next.push(w);
                }
            }
        }
        words = next;
    }
    assert_eq!(words.len(), n);
    let index: BTreeMap<&[u8], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let mut arcs = Vec::with_capacity(n * d);
    for (u, w) in words.iter().enumerate() {
        let mut shifted = w[1..].to_vec();
        shifted.push(0);
        for s in 0..=d as u8 {
            if s != w[ell - 1] {
                *shifted.last_mut().unwrap() = s;
                arcs.push((u, index[shifted.as_slice()]));
            }
        }
    }
    let labels = words
        .into_iter()
        .map(|w| VertexWord::new(w, d as u8 + 1).unwrap())
        .collect();
    Digraph::new(n, &arcs)
        .and_then(|g| g.with_labels(labels))
        .expect("Kautz construction is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{char_poly, check_reachability_equation, ReachabilityKind};
    use num_bigint::BigInt;
    use num_traits::Zero;

    #[test]
    fn smallest_de_bruijn_is_complete_with_loops() {
        let g = de_bruijn(2, 1);
        assert_eq!(g.arcs(), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(g.vertex_name(0), "0");
    }

    #[test]
    fn de_bruijn_2_3_shift_adjacency() {
        let g = de_bruijn(2, 3);
        assert_eq!(g.n(), 8);
        assert_eq!(g.regular_degree(), Some(2));
        let expected: [&[usize]; 8] = [
            &[0, 1],
            &[2, 3],
            &[4, 5],
            &[6, 7],
            &[0, 1],
            &[2, 3],
            &[4, 5],
            &[6, 7],
        ];
        for (u, exp) in expected.iter().enumerate() {
            assert_eq!(g.out_neighbors(u), *exp);
        }
        let names: Vec<String> = (0..8).map(|u| g.vertex_name(u)).collect();
        assert_eq!(
            names,
            vec!["000", "001", "010", "011", "100", "101", "110", "111"]
        );
    }

    #[test]
    fn kautz_words_skip_repeats() {
        let g = kautz(2, 3);
        assert_eq!(g.n(), 12);
        assert_eq!(g.regular_degree(), Some(2));
        let names: Vec<String> = (0..12).map(|u| g.vertex_name(u)).collect();
        assert_eq!(
            names,
            vec!["010", "012", "020", "021", "101", "102", "120", "121", "201", "202", "210", "212"]
        );
        for (u, v) in g.arcs() {
            let (wu, wv) = (g.label(u).unwrap(), g.label(v).unwrap());
            assert_eq!(&wu.symbols()[1..], &wv.symbols()[..2]);
            assert!(wv.symbols().windows(2).all(|p| p[0] != p[1]));
        }
        // K(d,1) is the complete digraph without loops on d+1 vertices
        let k1 = kautz(2, 1);
        assert_eq!(k1.n(), 3);
        assert_eq!(k1.arc_count(), 6);
        assert!(!k1.has_arc(0, 0));
    }

    #[test]
    fn line_digraph_steps_up_both_families() {
        assert_eq!(de_bruijn(2, 2).line_digraph().unwrap(), de_bruijn(2, 3));
        assert_eq!(kautz(2, 2).line_digraph().unwrap(), kautz(2, 3));
        assert_eq!(de_bruijn(3, 2).line_digraph().unwrap(), de_bruijn(3, 3));
    }

    #[test]
    fn reachability_equations_hold() {
        for ell in 1..=4 {
            assert!(check_reachability_equation(
                &de_bruijn(2, ell),
                ell,
                ReachabilityKind::Upp
            ));
        }
        for ell in 1..=3 {
            assert!(check_reachability_equation(
                &kautz(2, ell),
                ell,
                ReachabilityKind::Kautz
            ));
        }
        assert!(check_reachability_equation(
            &de_bruijn(3, 2),
            2,
            ReachabilityKind::Upp
        ));
    }

    #[test]
    fn de_bruijn_char_poly_collapses() {
        // x^(N-1) (x - d) for B(d, ell) with N = d^ell
        for ell in 1..=4 {
            let g = de_bruijn(2, ell);
            let p = char_poly(&g.adjacency_matrix());
            let n = g.n();
            assert!(p.coeffs()[..n - 1].iter().all(Zero::is_zero));
            assert_eq!(*p.coeff(n - 1), BigInt::from(-2));
            assert_eq!(*p.coeff(n), BigInt::from(1));
        }
    }

    #[test]
    fn diameters_match_word_length() {
        assert_eq!(de_bruijn(2, 3).diameter().unwrap(), 3);
        assert_eq!(de_bruijn(2, 4).diameter().unwrap(), 4);
        assert_eq!(kautz(2, 3).diameter().unwrap(), 3);
        assert!(de_bruijn(2, 3).is_line_digraph());
        assert!(kautz(2, 3).is_line_digraph());
    }
}
