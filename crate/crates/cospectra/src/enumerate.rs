//! Exhaustive searches over small digraph spaces.
//!
//! [`enumerate_upp`] lists, up to isomorphism, all d-out-regular digraphs on
//! d^ell vertices in which every ordered vertex pair is joined by exactly one
//! walk of length ell (equivalently A^ell = J). [`perm_sweep`] walks the
//! whole family of permutation-driven De Bruijn rewirings for one prefix and
//! groups the results into isomorphism classes.

use itertools::Itertools;

use thiserror::Error;

use crate::digraph::{Digraph, VertexWord};
use crate::iso::{canonical_form, isomorphic, CanonicalForm, IsoError, MAX_VERTICES};
use crate::modify::{de_bruijn_permutation_modify, ModifyError, PermutationFamily};
use crate::families::de_bruijn;
use crate::spectral::{char_poly, check_reachability_equation, ReachabilityKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("search space too large: {0}")]
    UnsupportedScale(String),
    #[error("search spec has mode {found:?}, expected {expected:?}")]
    WrongMode {
        expected: SearchMode,
        found: SearchMode,
    },
    #[error(transparent)]
    Modify(#[from] ModifyError),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Full search over all out-regular 0/1 matrices with A^ell = J.
    UppFull,
    /// Sweep of permutation-driven rewirings of one De Bruijn digraph.
    PermSweep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    d: usize,
    ell: usize,
    n: usize,
    mode: SearchMode,
}

impl SearchSpec {
    pub fn upp_full(d: usize, ell: usize) -> SearchSpec {
        assert!(d >= 1 && ell >= 1);
        SearchSpec {
            d,
            ell,
            n: d.pow(ell as u32),
            mode: SearchMode::UppFull,
        }
    }

    pub fn perm_sweep(d: usize, ell: usize) -> SearchSpec {
        assert!(d >= 1 && ell >= 1);
        SearchSpec {
            d,
            ell,
            n: d.pow(ell as u32),
            mode: SearchMode::PermSweep,
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }
}

struct Ctx {
    n: usize,
    d: usize,
    ell: usize,
    subsets: Vec<u64>,
    first_rows: Vec<u64>,
}

impl Ctx {
    fn new(d: usize, ell: usize) -> Ctx {
        let n = d.pow(ell as u32);
        let subsets: Vec<u64> = (0..n)
            .combinations(d)
            .map(|c| c.iter().fold(0u64, |acc, &v| acc | 1 << v))
            .collect();
        // Vertex 0 can always be relabeled so its out-set is {0..d-1} (when
        // it carries a loop) or {1..d} (when it does not), so restricting the
        // first row to these two masks loses no isomorphism class.
        let first_rows: Vec<u64> = [
            (0..d).fold(0u64, |acc, v| acc | 1 << v),
            (1..=d).fold(0u64, |acc, v| acc | 1 << v),
        ]
        .into_iter()
        .filter(|m| subsets.contains(m))
        .dedup()
        .collect();
        Ctx {
            n,
            d,
            ell,
            subsets,
            first_rows,
        }
    }

    // Counts length-ell walks from u that stay on vertices whose rows are
    // already fixed; complete walks survive any extension, so a pair seeing
    // two of them can never reach A^ell = J.
    fn walks_from(&self, rows: &[u64], u: usize, counts: &mut [u8]) -> bool {
        fn dfs(rows: &[u64], ell: usize, v: usize, depth: usize, counts: &mut [u8]) -> bool {
            if depth == ell {
                counts[v] += 1;
                return counts[v] <= 1;
            }
            if v >= rows.len() {
                return true;
            }
            let mut m = rows[v];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                if !dfs(rows, ell, w, depth + 1, counts) {
                    return false;
                }
            }
            true
        }
        counts.fill(0);
        dfs(rows, self.ell, u, 0, counts)
    }

    fn partial_ok(&self, rows: &[u64], counts: &mut [u8]) -> bool {
        (0..rows.len()).all(|u| self.walks_from(rows, u, counts))
    }

    fn complete_ok(&self, rows: &[u64], counts: &mut [u8]) -> bool {
        (0..self.n).all(|u| {
            self.walks_from(rows, u, counts) && counts.iter().all(|&c| c == 1)
        })
    }

    fn admissible(&self, k: usize, mask: u64, colsum: &[usize], trace: usize) -> bool {
        if trace + (mask >> k & 1) as usize > self.d {
            return false;
        }
        for (v, &s) in colsum.iter().enumerate() {
            let c = s + (mask >> v & 1) as usize;
            // column v must end at sum d and the remaining rows add at most 1 each
            if c > self.d || self.d - c > self.n - 1 - k {
                return false;
            }
        }
        true
    }

    fn extend(
        &self,
        rows: &mut Vec<u64>,
        colsum: &mut [usize],
        trace: &mut usize,
        counts: &mut [u8],
        out: &mut Vec<Vec<u64>>,
    ) {
        let k = rows.len();
        if k == self.n {
            if self.complete_ok(rows, counts) {
                out.push(rows.clone());
            }
            return;
        }
        let candidates: &[u64] = if k == 0 {
            &self.first_rows
        } else {
            &self.subsets
        };
        for &mask in candidates {
            if !self.admissible(k, mask, colsum, *trace) {
                continue;
            }
            rows.push(mask);
            *trace += (mask >> k & 1) as usize;
            for (v, c) in colsum.iter_mut().enumerate() {
                *c += (mask >> v & 1) as usize;
            }
            if self.partial_ok(rows, counts) {
                self.extend(rows, colsum, trace, counts, out);
            }
            rows.pop();
            *trace -= (mask >> k & 1) as usize;
            for (v, c) in colsum.iter_mut().enumerate() {
                *c -= (mask >> v & 1) as usize;
            }
        }
    }
}

fn solution_digraph(n: usize, rows: &[u64]) -> Digraph {
    let mut arcs = Vec::new();
    for (u, &mask) in rows.iter().enumerate() {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            arcs.push((u, v));
        }
    }
    Digraph::new(n, &arcs).expect("search rows are well-formed")
}

fn dedup_classes(n: usize, solutions: &[Vec<u64>]) -> Result<Vec<CanonicalForm>, EnumerateError> {
    let mut classes: std::collections::BTreeMap<Vec<u8>, CanonicalForm> =
        std::collections::BTreeMap::new();
    for rows in solutions {
        let cf = canonical_form(&solution_digraph(n, rows))?;
        classes.entry(cf.certificate().to_vec()).or_insert(cf);
    }
    let reps: Vec<CanonicalForm> = classes.into_values().collect();
    // cross-check the certificate route against the backtracking route
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            assert!(
                !isomorphic(&reps[i].digraph(), &reps[j].digraph())?,
                "distinct certificates must mean non-isomorphic digraphs"
            );
        }
    }
    Ok(reps)
}

fn check_upp_scale(spec: &SearchSpec) -> Result<(), EnumerateError> {
    if spec.mode != SearchMode::UppFull {
        return Err(EnumerateError::WrongMode {
            expected: SearchMode::UppFull,
            found: spec.mode,
        });
    }
    if spec.d != 2 || spec.ell > 3 {
        return Err(EnumerateError::UnsupportedScale(format!(
            "full search supports d = 2 and ell <= 3, got d = {}, ell = {}",
            spec.d, spec.ell
        )));
    }
    Ok(())
}

/// All isomorphism classes with A^ell = J at the given degree and order,
/// sorted by certificate. Exhaustive over out-regular 0/1 matrices; first-row
/// symmetry reduction is the only search-space cut.
pub fn enumerate_upp(spec: &SearchSpec) -> Result<Vec<CanonicalForm>, EnumerateError> {
    enumerate_upp_jobs(spec, 1)
}

/// Same search split across `jobs` threads at the first two rows. The result
/// is identical for every `jobs` value.
pub fn enumerate_upp_jobs(
    spec: &SearchSpec,
    jobs: usize,
) -> Result<Vec<CanonicalForm>, EnumerateError> {
    check_upp_scale(spec)?;
    let ctx = Ctx::new(spec.d, spec.ell);
    let n = ctx.n;
    let jobs = jobs.max(1);

    // stubs: admissible (row 0, row 1) prefixes
    let mut stubs: Vec<Vec<u64>> = Vec::new();
    {
        let mut rows = Vec::new();
        let mut colsum = vec![0usize; n];
        let mut trace = 0usize;
        let mut counts = vec![0u8; n];
        for &m0 in &ctx.first_rows {
            if !ctx.admissible(0, m0, &colsum, trace) {
                continue;
            }
            rows.push(m0);
            trace += (m0 & 1) as usize;
            for (v, c) in colsum.iter_mut().enumerate() {
                *c += (m0 >> v & 1) as usize;
            }
            if ctx.partial_ok(&rows, &mut counts) {
                if n == 1 {
                    stubs.push(rows.clone());
                } else {
                    for &m1 in &ctx.subsets {
                        if !ctx.admissible(1, m1, &colsum, trace) {
                            continue;
                        }
                        rows.push(m1);
                        if ctx.partial_ok(&rows, &mut counts) {
                            stubs.push(rows.clone());
                        }
                        rows.pop();
                    }
                }
            }
            rows.pop();
            trace -= (m0 & 1) as usize;
            for (v, c) in colsum.iter_mut().enumerate() {
                *c -= (m0 >> v & 1) as usize;
            }
        }
    }

    let run_stub = |stub: &Vec<u64>| -> Vec<Vec<u64>> {
        let mut rows = stub.clone();
        let mut colsum = vec![0usize; n];
        let mut trace = 0usize;
        for (k, &mask) in rows.iter().enumerate() {
            trace += (mask >> k & 1) as usize;
            for (v, c) in colsum.iter_mut().enumerate() {
                *c += (mask >> v & 1) as usize;
            }
        }
        let mut counts = vec![0u8; n];
        let mut out = Vec::new();
        if rows.len() == n {
            if ctx.complete_ok(&rows, &mut counts) {
                out.push(rows.clone());
            }
        } else {
            ctx.extend(&mut rows, &mut colsum, &mut trace, &mut counts, &mut out);
        }
        out
    };

    let solutions: Vec<Vec<u64>> = if jobs == 1 {
        stubs.iter().flat_map(&run_stub).collect()
    } else {
        let mut per_stub: Vec<Vec<Vec<u64>>> = vec![Vec::new(); stubs.len()];
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for t in 0..jobs {
                let stubs = &stubs;
                let run_stub = &run_stub;
                handles.push(scope.spawn(move || {
                    let mut mine: Vec<(usize, Vec<Vec<u64>>)> = Vec::new();
                    for (i, stub) in stubs.iter().enumerate() {
                        if i % jobs == t {
                            mine.push((i, run_stub(stub)));
                        }
                    }
                    mine
                }));
            }
            for handle in handles {
                for (i, sols) in handle.join().expect("search worker panicked") {
                    per_stub[i] = sols;
                }
            }
        });
        per_stub.into_iter().flatten().collect()
    };

    dedup_classes(n, &solutions)
}

/// One isomorphism class seen during a permutation sweep.
#[derive(Debug, Clone)]
pub struct PermSweepClass {
    pub canonical: CanonicalForm,
    /// First family (in lexicographic sweep order) landing in this class.
    pub representative: PermutationFamily,
    pub members: usize,
    pub isomorphic_to_host: bool,
}

#[derive(Debug, Clone)]
pub struct PermSweepReport {
    pub d: usize,
    pub ell: usize,
    pub prefix: VertexWord,
    pub families: usize,
    pub all_cospectral_with_host: bool,
    pub all_satisfy_reachability: bool,
    pub classes: Vec<PermSweepClass>,
}

/// Applies every family of d permutations to the out-arcs of the De Bruijn
/// block selected by `prefix` and groups the (d!)^d results up to
/// isomorphism, checking cospectrality and A^ell = J along the way.
pub fn perm_sweep(
    d: usize,
    ell: usize,
    prefix: &VertexWord,
) -> Result<PermSweepReport, EnumerateError> {
    let n = d.checked_pow(ell as u32).filter(|&n| n <= MAX_VERTICES);
    if d > 3 || ell > 4 || n.is_none() {
        return Err(EnumerateError::UnsupportedScale(format!(
            "permutation sweep supports d <= 3, ell <= 4, d^ell <= {MAX_VERTICES}, \
             got d = {d}, ell = {ell}"
        )));
    }
    let host = de_bruijn(d, ell);
    let host_poly = char_poly(&host.adjacency_matrix());
    let perms: Vec<Vec<u8>> = (0..d as u8).permutations(d).collect();
    let mut all_cospectral = true;
    let mut all_reachable = true;
    let mut families = 0usize;
    let mut classes: std::collections::BTreeMap<Vec<u8>, PermSweepClass> =
        std::collections::BTreeMap::new();
    for alphas in std::iter::repeat_n(perms, d).multi_cartesian_product() {
        let family = PermutationFamily::new(alphas)?;
        let g = de_bruijn_permutation_modify(d, ell, prefix, &family)?;
        families += 1;
        all_cospectral &= char_poly(&g.adjacency_matrix()) == host_poly;
        all_reachable &= check_reachability_equation(&g, ell, ReachabilityKind::Upp);
        let cf = canonical_form(&g)?;
        match classes.entry(cf.certificate().to_vec()) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                let iso_host = isomorphic(&g, &host)?;
                slot.insert(PermSweepClass {
                    canonical: cf,
                    representative: family,
                    members: 1,
                    isomorphic_to_host: iso_host,
                });
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                slot.get_mut().members += 1;
            }
        }
    }
    Ok(PermSweepReport {
        d,
        ell,
        prefix: prefix.clone(),
        families,
        all_cospectral_with_host: all_cospectral,
        all_satisfy_reachability: all_reachable,
        classes: classes.into_values().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_search_finds_the_complete_digraph_with_loops() {
        let classes = enumerate_upp(&SearchSpec::upp_full(2, 1)).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].arcs(), &[(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn order_four_search_finds_exactly_the_de_bruijn_class() {
        let classes = enumerate_upp(&SearchSpec::upp_full(2, 2)).unwrap();
        assert_eq!(classes.len(), 1);
        let b = de_bruijn(2, 2);
        assert!(isomorphic(&classes[0].digraph(), &b).unwrap());
        assert_eq!(
            classes[0].certificate(),
            canonical_form(&b).unwrap().certificate()
        );
    }

    #[test]
    fn job_count_does_not_change_the_result() {
        let spec = SearchSpec::upp_full(2, 2);
        let one = enumerate_upp_jobs(&spec, 1).unwrap();
        let three = enumerate_upp_jobs(&spec, 3).unwrap();
        let eight = enumerate_upp_jobs(&spec, 8).unwrap();
        assert_eq!(one, three);
        assert_eq!(one, eight);
    }

    #[test]
    fn scale_guards_reject_out_of_range_searches() {
        assert!(matches!(
            enumerate_upp(&SearchSpec::upp_full(3, 2)),
            Err(EnumerateError::UnsupportedScale(_))
        ));
        assert!(matches!(
            enumerate_upp(&SearchSpec::upp_full(2, 4)),
            Err(EnumerateError::UnsupportedScale(_))
        ));
        assert!(matches!(
            enumerate_upp(&SearchSpec::perm_sweep(2, 3)),
            Err(EnumerateError::WrongMode { .. })
        ));
        let word = VertexWord::parse("101").unwrap();
        assert!(matches!(
            perm_sweep(4, 2, &word),
            Err(EnumerateError::UnsupportedScale(_))
        ));
        assert!(matches!(
            perm_sweep(3, 4, &word),
            Err(EnumerateError::UnsupportedScale(_))
        ));
    }

    #[test]
    fn sweep_over_the_flagship_block_yields_two_classes() {
        let prefix = VertexWord::parse("10").unwrap();
        let report = perm_sweep(2, 3, &prefix).unwrap();
        assert_eq!(report.families, 4);
        assert!(report.all_cospectral_with_host);
        assert!(report.all_satisfy_reachability);
        assert_eq!(report.classes.len(), 2);
        let host_class = report
            .classes
            .iter()
            .find(|c| c.isomorphic_to_host)
            .expect("the identity family reproduces the host");
        assert_eq!(host_class.members, 2);
        let other = report.classes.iter().find(|c| !c.isomorphic_to_host).unwrap();
        assert_eq!(other.members, 2);
        // the non-host class is the rewired digraph from the worked example
        let modified = de_bruijn_permutation_modify(
            2,
            3,
            &prefix,
            &PermutationFamily::parse("01;10").unwrap(),
        )
        .unwrap();
        assert_eq!(
            other.canonical.certificate(),
            canonical_form(&modified).unwrap().certificate()
        );
    }

    #[test]
    fn sweep_rejects_constant_prefixes() {
        let prefix = VertexWord::parse("11").unwrap();
        assert!(matches!(
            perm_sweep(2, 3, &prefix),
            Err(EnumerateError::Modify(ModifyError::ConstantPrefix))
        ));
    }
}
