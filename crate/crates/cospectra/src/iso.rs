//! Exact digraph isomorphism and canonical forms for small digraphs.
//!
//! Two independent routes are provided on purpose: [`isomorphic`] decides by
//! color-refined backtracking over explicit bijections, while
//! [`canonical_form`] minimizes the adjacency bit string over an
//! individualization-refinement tree. Vertex labels are ignored; isomorphism
//! here is purely structural.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::digraph::{CycleCensus, Digraph};

/// Hard scale limit: adjacency rows are single machine words.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("digraph has {n} vertices; isomorphism routines support at most {MAX_VERTICES}")]
    TooLarge { n: usize },
}

fn check_size(g: &Digraph) -> Result<(), IsoError> {
    if g.n() > MAX_VERTICES {
        return Err(IsoError::TooLarge { n: g.n() });
    }
    Ok(())
}

fn out_rows(g: &Digraph) -> Vec<u64> {
    (0..g.n())
        .map(|u| {
            g.out_neighbors(u)
                .iter()
                .fold(0u64, |acc, &v| acc | 1 << v)
        })
        .collect()
}

fn in_rows(g: &Digraph) -> Vec<u64> {
    (0..g.n())
        .map(|u| g.in_neighbors(u).iter().fold(0u64, |acc, &v| acc | 1 << v))
        .collect()
}

// own color, sorted out-neighbor colors, sorted in-neighbor colors
type Signature = (u32, Vec<u32>, Vec<u32>);

// One round of signature re-ranking across any number of graphs sharing a
// color space. Returns the number of distinct colors afterwards.
fn rerank(graphs: &[(&[u64], &[u64])], colorings: &mut [Vec<u32>]) -> usize {
    let mut sigs: Vec<Vec<Signature>> = Vec::with_capacity(colorings.len());
    for ((rows_out, rows_in), colors) in graphs.iter().zip(colorings.iter()) {
        let n = colors.len();
        let sig_of = |mask: u64| -> Vec<u32> {
            let mut s: Vec<u32> = (0..n).filter(|&w| mask >> w & 1 == 1).map(|w| colors[w]).collect();
            s.sort_unstable();
            s
        };
        sigs.push(
            (0..n)
                .map(|v| (colors[v], sig_of(rows_out[v]), sig_of(rows_in[v])))
                .collect(),
        );
    }
    let mut all: Vec<&Signature> = sigs.iter().flatten().collect();
    all.sort();
    all.dedup();
    for (sig_list, colors) in sigs.iter().zip(colorings.iter_mut()) {
        for (v, sig) in sig_list.iter().enumerate() {
            colors[v] = all.binary_search(&sig).unwrap() as u32;
        }
    }
    all.len()
}

// Iterate re-ranking to a fixed point (the partition can only refine, so the
// color count is strictly increasing until stable).
fn refine(graphs: &[(&[u64], &[u64])], colorings: &mut [Vec<u32>]) {
    let mut count = 0;
    loop {
        let next = rerank(graphs, colorings);
        if next == count {
            return;
        }
        count = next;
    }
}

/// Relabeling-invariant certificate: two digraphs get equal certificates
/// exactly when they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    cert: Vec<u8>,
    arcs: Vec<(usize, usize)>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn certificate(&self) -> &[u8] {
        &self.cert
    }

    pub fn certificate_hex(&self) -> String {
        self.cert.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Arc list of the canonical representative, in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Rebuilds the canonical representative (unlabeled).
    pub fn digraph(&self) -> Digraph {
        Digraph::new(self.n, &self.arcs).expect("canonical arcs are well-formed")
    }
}

// Certificate bytes for a complete ordering: 4 length bytes, then the
// adjacency bits row-major in position space, most significant bit first.
fn cert_bytes(n: usize, rows_out: &[u64], order: &[usize]) -> Vec<u8> {
    let mut bytes = Vec::with_capacity(4 + n * n / 8 + 1);
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    let mut acc: u8 = 0;
    let mut filled = 0;
    for &u in order {
        for &v in order {
            acc = acc << 1 | (rows_out[u] >> v & 1) as u8;
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    bytes
}

fn search_min(
    rows_out: &[u64],
    rows_in: &[u64],
    colors: &[u32],
    best: &mut Option<(Vec<u8>, Vec<usize>)>,
) {
    let n = colors.len();
    // first color class with more than one vertex, by color value
    let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    if let Some((_, cell)) = cells.iter().find(|(_, vs)| vs.len() > 1) {
        for &v in cell {
            // individualize v: it precedes its cell mates, invariantly
            let mut child: Vec<u32> = colors.iter().map(|&c| c * 2 + 1).collect();
            child[v] -= 1;
            let mut colorings = [child];
            refine(&[(rows_out, rows_in)], &mut colorings);
            search_min(rows_out, rows_in, &colorings[0], best);
        }
        return;
    }
    // discrete coloring: order vertices by color rank
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colors[v]);
    let bytes = cert_bytes(n, rows_out, &order);
    if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
        *best = Some((bytes, order));
    }
}

/// Canonical form via individualization-refinement: the lexicographically
/// smallest adjacency bit string over all orderings compatible with the
/// stable coloring.
pub fn canonical_form(g: &Digraph) -> Result<CanonicalForm, IsoError> {
    check_size(g)?;
    let n = g.n();
    let rows_out = out_rows(g);
    let rows_in = in_rows(g);
    let mut colorings = [vec![0u32; n]];
    refine(&[(&rows_out, &rows_in)], &mut colorings);
    let mut best = None;
    search_min(&rows_out, &rows_in, &colorings[0], &mut best);
    let (cert, order) = best.expect("search always reaches a leaf");
    let mut arcs = Vec::with_capacity(g.arc_count());
    for (p, &u) in order.iter().enumerate() {
        for (q, &v) in order.iter().enumerate() {
            if rows_out[u] >> v & 1 == 1 {
                arcs.push((p, q));
            }
        }
    }
    arcs.sort_unstable();
    Ok(CanonicalForm { n, cert, arcs })
}

/// Exact isomorphism by backtracking over jointly color-refined classes.
/// Independent of [`canonical_form`] so the two can cross-check each other.
pub fn isomorphic(g1: &Digraph, g2: &Digraph) -> Result<bool, IsoError> {
    check_size(g1)?;
    check_size(g2)?;
    if g1.n() != g2.n() || g1.arc_count() != g2.arc_count() {
        return Ok(false);
    }
    let n = g1.n();
    let (out1, in1) = (out_rows(g1), in_rows(g1));
    let (out2, in2) = (out_rows(g2), in_rows(g2));
    let mut colorings = [vec![0u32; n], vec![0u32; n]];
    refine(
        &[(&out1, &in1), (&out2, &in2)],
        &mut colorings,
    );
    let [colors1, colors2] = colorings;
    let mut hist1: Vec<u32> = colors1.clone();
    let mut hist2: Vec<u32> = colors2.clone();
    hist1.sort_unstable();
    hist2.sort_unstable();
    if hist1 != hist2 {
        return Ok(false);
    }
    // most constrained vertices first
    let mut class_size = BTreeMap::new();
    for &c in &colors1 {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&colors1[v]], colors1[v], v));

    struct State<'a> {
        out1: &'a [u64],
        in1: &'a [u64],
        out2: &'a [u64],
        in2: &'a [u64],
        colors1: &'a [u32],
        colors2: &'a [u32],
        order: &'a [usize],
        mapping: Vec<Option<usize>>,
        used: u64,
    }

    fn extend(s: &mut State, depth: usize) -> bool {
        if depth == s.order.len() {
            return true;
        }
        let u = s.order[depth];
        for w in 0..s.order.len() {
            if s.used >> w & 1 == 1 || s.colors2[w] != s.colors1[u] {
                continue;
            }
            if (s.out1[u] >> u & 1) != (s.out2[w] >> w & 1) {
                continue;
            }
            let consistent = s.order[..depth].iter().all(|&p| {
                let q = s.mapping[p].unwrap();
                (s.out1[u] >> p & 1) == (s.out2[w] >> q & 1)
                    && (s.in1[u] >> p & 1) == (s.in2[w] >> q & 1)
            });
            if !consistent {
                continue;
            }
            s.mapping[u] = Some(w);
            s.used |= 1 << w;
            if extend(s, depth + 1) {
                return true;
            }
            s.mapping[u] = None;
            s.used &= !(1 << w);
        }
        false
    }

    let mut state = State {
        out1: &out1,
        in1: &in1,
        out2: &out2,
        in2: &in2,
        colors1: &colors1,
        colors2: &colors2,
        order: &order,
        mapping: vec![None; n],
        used: 0,
    };
    Ok(extend(&mut state, 0))
}

/// Cheap necessary conditions for isomorphism: a sorted per-vertex profile
/// and the census of short cycles. Equal vectors do not imply isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVector {
    /// (in-degree, out-degree, loop, closed 2-walks, closed 3-walks) per
    /// vertex, sorted, so the vector is relabeling-invariant.
    pub vertex_profile: Vec<VertexInvariant>,
    /// Simple cycle counts up to length min(n, 6).
    pub cycle_census: CycleCensus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexInvariant {
    pub in_degree: usize,
    pub out_degree: usize,
    pub has_loop: bool,
    pub closed_walks_2: usize,
    pub closed_walks_3: usize,
}

pub fn invariant_vector(g: &Digraph) -> InvariantVector {
    let n = g.n();
    let intersect = |a: &[usize], b: &[usize]| -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    };
    let mut vertex_profile: Vec<VertexInvariant> = (0..n)
        .map(|u| VertexInvariant {
            in_degree: g.in_degree(u),
            out_degree: g.out_degree(u),
            has_loop: g.has_arc(u, u),
            closed_walks_2: intersect(g.out_neighbors(u), g.in_neighbors(u)),
            closed_walks_3: g
                .out_neighbors(u)
                .iter()
                .map(|&w| intersect(g.out_neighbors(w), g.in_neighbors(u)))
                .sum(),
        })
        .collect();
    vertex_profile.sort();
    InvariantVector {
        vertex_profile,
        cycle_census: g.cycle_census(n.min(6)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{de_bruijn, kautz};
    use crate::modify::{de_bruijn_permutation_modify, PermutationFamily};
    use crate::spectral::cospectral;
    use crate::digraph::VertexWord;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn modified_b23() -> Digraph {
        de_bruijn_permutation_modify(
            2,
            3,
            &VertexWord::parse("10").unwrap(),
            &PermutationFamily::parse("01;10").unwrap(),
        )
        .unwrap()
    }

    fn relabel(g: &Digraph, seed: u64) -> Digraph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let arcs: Vec<(usize, usize)> = g.arcs().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Digraph::new(g.n(), &arcs).unwrap()
    }

    #[test]
    fn modified_de_bruijn_is_not_isomorphic_to_the_original() {
        let b = de_bruijn(2, 3);
        let bp = modified_b23();
        assert!(!isomorphic(&b, &bp).unwrap());
        assert!(cospectral(&b, &bp));
    }

    #[test]
    fn relabelings_are_isomorphic() {
        for (i, g) in [de_bruijn(2, 3), kautz(2, 3), modified_b23()].iter().enumerate() {
            for seed in 0..5u64 {
                let h = relabel(g, seed + 100 * i as u64);
                assert!(isomorphic(g, &h).unwrap());
                assert!(isomorphic(&h, g).unwrap());
                assert_eq!(canonical_form(g).unwrap().certificate(), canonical_form(&h).unwrap().certificate());
            }
        }
    }

    #[test]
    fn the_three_cospectral_mates_are_pairwise_distinct() {
        let b = de_bruijn(2, 3);
        let bp = modified_b23();
        let bpp = bp.converse();
        assert!(!isomorphic(&bp, &bpp).unwrap());
        assert!(!isomorphic(&b, &bpp).unwrap());
        let certs: std::collections::BTreeSet<Vec<u8>> = [&b, &bp, &bpp]
            .iter()
            .map(|g| canonical_form(g).unwrap().certificate().to_vec())
            .collect();
        assert_eq!(certs.len(), 3);
    }

    #[test]
    fn canonical_representative_is_isomorphic_to_the_input() {
        for g in [de_bruijn(2, 3), kautz(2, 2), modified_b23()] {
            let cf = canonical_form(&g).unwrap();
            let rep = cf.digraph();
            assert!(isomorphic(&g, &rep).unwrap());
            assert_eq!(canonical_form(&rep).unwrap().certificate(), cf.certificate());
        }
    }

    #[test]
    fn certificate_equality_matches_isomorphic_on_fixture_pairs() {
        let graphs = [
            de_bruijn(2, 2),
            de_bruijn(2, 3),
            modified_b23(),
            modified_b23().converse(),
            kautz(2, 2),
            relabel(&de_bruijn(2, 3), 9),
        ];
        for a in &graphs {
            for b in &graphs {
                let same_cert = canonical_form(a).unwrap().certificate()
                    == canonical_form(b).unwrap().certificate();
                assert_eq!(same_cert, isomorphic(a, b).unwrap());
            }
        }
    }

    #[test]
    fn isomorphism_is_transitive_on_relabel_chains() {
        let g = modified_b23();
        let h1 = relabel(&g, 1);
        let h2 = relabel(&h1, 2);
        assert!(isomorphic(&g, &h1).unwrap());
        assert!(isomorphic(&h1, &h2).unwrap());
        assert!(isomorphic(&g, &h2).unwrap());
    }

    #[test]
    fn size_guard_rejects_large_digraphs() {
        let arcs: Vec<(usize, usize)> = (0..65).map(|i| (i, (i + 1) % 65)).collect();
        let big = Digraph::new(65, &arcs).unwrap();
        assert_eq!(isomorphic(&big, &big), Err(IsoError::TooLarge { n: 65 }));
        assert_eq!(canonical_form(&big).unwrap_err(), IsoError::TooLarge { n: 65 });
    }

    #[test]
    fn invariants_separate_the_flagship_pair_by_cycles() {
        let b = invariant_vector(&de_bruijn(2, 3));
        let bp = invariant_vector(&modified_b23());
        assert_eq!(b.cycle_census.count(5), 2);
        assert_eq!(bp.cycle_census.count(5), 3);
        assert_ne!(b, bp);
    }

    #[test]
    fn invariants_on_a_vertex_transitive_cycle_are_uniform() {
        let arcs: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        let c7 = Digraph::new(7, &arcs).unwrap();
        let iv = invariant_vector(&c7);
        assert!(iv.vertex_profile.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(iv.cycle_census.total(), 0); // the 7-cycle is above the bound
        let arcs: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let c5 = Digraph::new(5, &arcs).unwrap();
        assert_eq!(invariant_vector(&c5).cycle_census.count(5), 1);
    }

    #[test]
    fn equal_invariants_do_not_imply_isomorphism() {
        // one 14-cycle vs two 7-cycles: every invariant agrees (all cycles
        // are longer than the census bound), yet they are not isomorphic
        let c14 =
            Digraph::new(14, &(0..14).map(|i| (i, (i + 1) % 14)).collect::<Vec<_>>()).unwrap();
        let arcs: Vec<(usize, usize)> = (0..7)
            .map(|i| (i, (i + 1) % 7))
            .chain((0..7).map(|i| (7 + i, 7 + (i + 1) % 7)))
            .collect();
        let c77 = Digraph::new(14, &arcs).unwrap();
        assert_eq!(invariant_vector(&c14), invariant_vector(&c77));
        assert!(!isomorphic(&c14, &c77).unwrap());
    }
}
