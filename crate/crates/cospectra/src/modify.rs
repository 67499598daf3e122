//! Arc rewirings on locally-line vertex sets.
//!
//! A set X of at least two vertices sharing one common in-neighborhood Y may
//! have its out-arcs into Z = out(X) replaced by any arc set that keeps the
//! Y-to-X overlap arcs fixed and covers every row of X and column of Z. Such
//! rewirings preserve walk counts from outside X exactly and lengthen walks
//! from X by at most one; when they also preserve in-degree counts on Z the
//! result is cospectral with the host. The same machinery runs mirrored on
//! out-neighborhood-sharing sets via [`converse_modify`], and both sides
//! combine in [`double_modify`].

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::{Digraph, DigraphError, VertexWord};
use crate::families::de_bruijn;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModifyError {
    #[error("vertices {0:?} do not all share one common {1}-neighborhood (or fewer than 2 vertices)")]
    NotALocalLineSet(Vec<usize>, &'static str),
    #[error("arc ({}, {}) leaves the rewirable block", .0.0, .0.1)]
    SetMismatch((usize, usize)),
    #[error("removed arc ({}, {}) is not present in the host", .0.0, .0.1)]
    RemovedArcMissing((usize, usize)),
    #[error("added arc ({}, {}) is already present and not removed", .0.0, .0.1)]
    AddedArcExists((usize, usize)),
    #[error("modification fails validation: {0}")]
    InvalidModification(ValidationReport),
    #[error("prefix symbols are all equal, which would force loop changes")]
    ConstantPrefix,
    #[error("image {0:?} is not a permutation of 0..d")]
    NotAPermutation(Vec<u8>),
    #[error("cannot parse permutation family from {0:?}")]
    BadPermutationFormat(String),
    #[error("expected {expected} permutations, got {got}")]
    PermutationCountMismatch { expected: usize, got: usize },
    #[error("prefix must have length {expected}")]
    PrefixLengthMismatch { expected: usize },
    #[error("permutation rewiring needs d >= 2 and ell >= 2")]
    DegenerateParameters,
    #[error("the two rewirings disagree on arc ({}, {})", .0.0, .0.1)]
    OverlapConflict((usize, usize)),
    #[error("modification host differs from the target digraph")]
    HostMismatch,
    #[error("expected a modification with side = {expected:?}")]
    WrongSide { expected: Side },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// Which neighborhood the members of X share, and hence which arcs move.
///
/// `Out`: X shares in-neighborhoods and its out-arcs are rewired. `In` is the
/// mirror image: X shares out-neighborhoods and the arcs *into* X are rewired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Out,
    In,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Out => Side::In,
            Side::In => Side::Out,
        }
    }
}

/// A vertex set X (|X| >= 2) whose members share a common neighborhood.
///
/// For the out side, `y` is the shared in-neighborhood and `z` the union of
/// out-neighborhoods; for the in side the roles mirror (`y` is the shared
/// out-neighborhood, `z` the union of in-neighborhoods). All lists sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalLineSet {
    x: Vec<usize>,
    y: Vec<usize>,
    z: Vec<usize>,
}

impl LocalLineSet {
    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn y(&self) -> &[usize] {
        &self.y
    }

    pub fn z(&self) -> &[usize] {
        &self.z
    }

    pub fn r(&self) -> usize {
        self.x.len()
    }
}

fn local_line_set_for(g: &Digraph, x: &[usize], side: Side) -> Result<LocalLineSet, ModifyError> {
    let mut xs: Vec<usize> = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let bad = || {
        ModifyError::NotALocalLineSet(
            xs.clone(),
            match side {
                Side::Out => "in",
                Side::In => "out",
            },
        )
    };
    if xs.len() < 2 || *xs.last().unwrap() >= g.n() {
        return Err(bad());
    }
    let shared = |v: usize| -> &[usize] {
        match side {
            Side::Out => g.in_neighbors(v),
            Side::In => g.out_neighbors(v),
        }
    };
    let y = shared(xs[0]).to_vec();
    if xs.iter().any(|&v| shared(v) != y.as_slice()) {
        return Err(bad());
    }
    let mut z: Vec<usize> = xs
        .iter()
        .flat_map(|&v| match side {
            Side::Out => g.out_neighbors(v),
            Side::In => g.in_neighbors(v),
        })
        .copied()
        .collect();
    z.sort_unstable();
    z.dedup();
    Ok(LocalLineSet { x: xs, y, z })
}

/// Every maximal vertex class of size >= 2 sharing one in-neighborhood,
/// ordered by smallest member.
pub fn find_local_line_sets(g: &Digraph) -> Vec<LocalLineSet> {
    let mut classes: std::collections::BTreeMap<&[usize], Vec<usize>> = Default::default();
    for v in 0..g.n() {
        classes.entry(g.in_neighbors(v)).or_default().push(v);
    }
    let mut sets: Vec<LocalLineSet> = classes
        .into_iter()
        .filter(|(_, x)| x.len() >= 2)
        .map(|(y, x)| {
            let mut z: Vec<usize> = x
                .iter()
                .flat_map(|&v| g.out_neighbors(v))
                .copied()
                .collect();
            z.sort_unstable();
            z.dedup();
            LocalLineSet {
                x,
                y: y.to_vec(),
                z,
            }
        })
        .collect();
    sets.sort_by_key(|s| s.x[0]);
    sets
}

/// Outcome of checking a [`Modification`] against the rewiring conditions.
///
/// `loops_preserved` and `covering` gate `apply`; the other two are
/// informational. For in-side plans every flag reads mirrored (in particular
/// `indegree_preserved` then reports out-degree counts of the Z side).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    /// Arcs between X-and-Y overlap and X-and-Z overlap are untouched; this
    /// covers loops at X in particular.
    pub loops_preserved: bool,
    /// Every vertex of X keeps some rewired arc and every vertex of Z keeps
    /// some arc from X.
    pub covering: bool,
    /// Every vertex of Z ends with as many arcs from X as it started with
    /// (count, not identity; the flagship rewirings move arcs between X
    /// members while keeping counts).
    pub indegree_preserved: bool,
    /// The rewired digraph is strongly connected.
    pub strongly_connected_result: bool,
}

impl ValidationReport {
    /// The two conditions `apply` requires.
    pub fn passes(&self) -> bool {
        self.loops_preserved && self.covering
    }

    pub fn all(&self) -> bool {
        self.passes() && self.indegree_preserved && self.strongly_connected_result
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "loops_preserved={} covering={} indegree_preserved={} strongly_connected_result={}",
            self.loops_preserved, self.covering, self.indegree_preserved, self.strongly_connected_result
        )
    }
}

/// A planned arc rewiring on one locally-line set of a host digraph.
///
/// `removed` and `added` are explicit arc lists oriented as host arcs: from X
/// into Z for [`Side::Out`] plans, from Z into X for [`Side::In`] plans. An
/// arc present in both lists is removed and re-added, i.e. kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modification {
    host: Digraph,
    lls: LocalLineSet,
    removed: Vec<(usize, usize)>,
    added: Vec<(usize, usize)>,
    side: Side,
}

impl Modification {
    pub fn new(
        host: Digraph,
        x: &[usize],
        removed: &[(usize, usize)],
        added: &[(usize, usize)],
        side: Side,
    ) -> Result<Self, ModifyError> {
        let lls = local_line_set_for(&host, x, side)?;
        let in_block = |&(u, v): &(usize, usize)| -> bool {
            let (tail, head) = match side {
                Side::Out => (&lls.x, &lls.z),
                Side::In => (&lls.z, &lls.x),
            };
            tail.binary_search(&u).is_ok() && head.binary_search(&v).is_ok()
        };
        let mut removed: Vec<(usize, usize)> = removed.to_vec();
        removed.sort_unstable();
        removed.dedup();
        let mut added: Vec<(usize, usize)> = added.to_vec();
        added.sort_unstable();
        added.dedup();
        for arc in removed.iter().chain(&added) {
            if !in_block(arc) {
                return Err(ModifyError::SetMismatch(*arc));
            }
        }
        for &(u, v) in &removed {
            if !host.has_arc(u, v) {
                return Err(ModifyError::RemovedArcMissing((u, v)));
            }
        }
        for &arc in &added {
            if host.has_arc(arc.0, arc.1) && removed.binary_search(&arc).is_err() {
                return Err(ModifyError::AddedArcExists(arc));
            }
        }
        Ok(Modification {
            host,
            lls,
            removed,
            added,
            side,
        })
    }

    pub fn host(&self) -> &Digraph {
        &self.host
    }

    pub fn local_line_set(&self) -> &LocalLineSet {
        &self.lls
    }

    pub fn x(&self) -> &[usize] {
        &self.lls.x
    }

    pub fn removed(&self) -> &[(usize, usize)] {
        &self.removed
    }

    pub fn added(&self) -> &[(usize, usize)] {
        &self.added
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// The same plan expressed on the converse host, with every arc reversed
    /// and the side flipped. Mirroring twice gives the plan back.
    pub fn mirrored(&self) -> Modification {
        let rev = |arcs: &[(usize, usize)]| {
            let mut out: Vec<(usize, usize)> = arcs.iter().map(|&(u, v)| (v, u)).collect();
            out.sort_unstable();
            out
        };
        Modification {
            host: self.host.converse(),
            lls: self.lls.clone(),
            removed: rev(&self.removed),
            added: rev(&self.added),
            side: self.side.flip(),
        }
    }

    // final arc pattern from X into Z (out-side orientation)
    fn out_pattern(&self) -> BTreeSet<(usize, usize)> {
        debug_assert_eq!(self.side, Side::Out);
        let mut pattern: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &x in &self.lls.x {
            for &z in self.host.out_neighbors(x) {
                pattern.insert((x, z));
            }
        }
        for arc in &self.removed {
            pattern.remove(arc);
        }
        pattern.extend(self.added.iter().copied());
        pattern
    }

    fn validate_out(&self) -> ValidationReport {
        let (x, y, z) = (&self.lls.x, &self.lls.y, &self.lls.z);
        let pattern = self.out_pattern();

        // overlap arcs (X cap Y) x (X cap Z) must be exactly as in the host
        let x_and_y: Vec<usize> = x
            .iter()
            .copied()
            .filter(|v| y.binary_search(v).is_ok())
            .collect();
        let x_and_z: Vec<usize> = x
            .iter()
            .copied()
            .filter(|v| z.binary_search(v).is_ok())
            .collect();
        let loops_preserved = x_and_y.iter().all(|&a| {
            x_and_z
                .iter()
                .all(|&b| pattern.contains(&(a, b)) == self.host.has_arc(a, b))
        });

        let covering = x
            .iter()
            .all(|&xv| z.iter().any(|&zv| pattern.contains(&(xv, zv))))
            && z.iter()
                .all(|&zv| x.iter().any(|&xv| pattern.contains(&(xv, zv))));

        let indegree_preserved = z.iter().all(|&zv| {
            let before = x.iter().filter(|&&xv| self.host.has_arc(xv, zv)).count();
            let after = x.iter().filter(|&&xv| pattern.contains(&(xv, zv))).count();
            before == after
        });

        let strongly_connected_result = self
            .result_digraph()
            .map(|g| g.is_strongly_connected())
            .unwrap_or(false);

        ValidationReport {
            loops_preserved,
            covering,
            indegree_preserved,
            strongly_connected_result,
        }
    }

    /// Checks the rewiring conditions; never fails, only reports.
    pub fn validate(&self) -> ValidationReport {
        match self.side {
            Side::Out => self.validate_out(),
            Side::In => self.mirrored().validate_out(),
        }
    }

    // Arc edit on the host, independent of side; constructor checks make
    // this infallible in practice.
    fn result_digraph(&self) -> Result<Digraph, DigraphError> {
        let removed: BTreeSet<(usize, usize)> = self.removed.iter().copied().collect();
        let mut arcs: Vec<(usize, usize)> = self
            .host
            .arcs()
            .into_iter()
            .filter(|a| !removed.contains(a))
            .collect();
        arcs.extend(self.added.iter().copied());
        arcs.sort_unstable();
        arcs.dedup();
        let g = Digraph::new(self.host.n(), &arcs)?;
        match self.host.labels() {
            Some(labels) => g.with_labels(labels.to_vec()),
            None => Ok(g),
        }
    }

    /// Executes the rewiring. The overlap and covering conditions must hold;
    /// the returned digraph keeps the host's labels.
    pub fn apply(&self) -> Result<Digraph, ModifyError> {
        let report = self.validate();
        if !report.passes() {
            return Err(ModifyError::InvalidModification(report));
        }
        Ok(self.result_digraph()?)
    }
}

/// Runs an in-side plan by the definitional route: mirror the plan onto the
/// converse host, apply there, and take the converse of the result. Agrees
/// with `m.apply()` arc for arc.
pub fn converse_modify(m: &Modification) -> Result<Digraph, ModifyError> {
    if m.side != Side::In {
        return Err(ModifyError::WrongSide { expected: Side::In });
    }
    Ok(m.mirrored().apply()?.converse())
}

/// Applies an out-side and an in-side rewiring of the same host together.
/// The result stays cospectral with the host when both plans preserve degree
/// counts, but need not keep host-only properties like unique walk counts.
pub fn double_modify(
    g: &Digraph,
    out_mod: &Modification,
    in_mod: &Modification,
) -> Result<Digraph, ModifyError> {
    if out_mod.side != Side::Out {
        return Err(ModifyError::WrongSide { expected: Side::Out });
    }
    if in_mod.side != Side::In {
        return Err(ModifyError::WrongSide { expected: Side::In });
    }
    if out_mod.host != *g || in_mod.host != *g {
        return Err(ModifyError::HostMismatch);
    }
    for m in [out_mod, in_mod] {
        let report = m.validate();
        if !report.passes() {
            return Err(ModifyError::InvalidModification(report));
        }
    }
    // arcs touched by both plans must end in the same state
    let final_state = |m: &Modification, arc: &(usize, usize)| m.added.binary_search(arc).is_ok();
    let touched = |m: &Modification| -> BTreeSet<(usize, usize)> {
        m.removed.iter().chain(&m.added).copied().collect()
    };
    let t_out = touched(out_mod);
    for arc in touched(in_mod).intersection(&t_out) {
        if final_state(out_mod, arc) != final_state(in_mod, arc) {
            return Err(ModifyError::OverlapConflict(*arc));
        }
    }
    let removed: BTreeSet<(usize, usize)> = out_mod
        .removed
        .iter()
        .chain(&in_mod.removed)
        .copied()
        .collect();
    let mut arcs: Vec<(usize, usize)> = g
        .arcs()
        .into_iter()
        .filter(|a| !removed.contains(a))
        .collect();
    arcs.extend(out_mod.added.iter().copied());
    arcs.extend(in_mod.added.iter().copied());
    arcs.sort_unstable();
    arcs.dedup();
    let result = Digraph::new(g.n(), &arcs)?;
    Ok(match g.labels() {
        Some(labels) => result.with_labels(labels.to_vec())?,
        None => result,
    })
}

/// A family of d permutations of `{0..d-1}`, one per trailing symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationFamily {
    alphas: Vec<Vec<u8>>,
}

impl PermutationFamily {
    pub fn new(alphas: Vec<Vec<u8>>) -> Result<Self, ModifyError> {
        let d = alphas.len();
        for alpha in &alphas {
            let mut sorted = alpha.clone();
            sorted.sort_unstable();
            if alpha.len() != d || sorted.iter().enumerate().any(|(i, &s)| s != i as u8) {
                return Err(ModifyError::NotAPermutation(alpha.clone()));
            }
        }
        Ok(PermutationFamily { alphas })
    }

    pub fn identity(d: usize) -> Self {
        let id: Vec<u8> = (0..d as u8).collect();
        PermutationFamily {
            alphas: vec![id; d],
        }
    }

    /// Parses semicolon-separated image strings, e.g. `"01;10"` for the
    /// identity followed by the transposition.
    pub fn parse(s: &str) -> Result<Self, ModifyError> {
        let mut alphas = Vec::new();
        for part in s.split(';') {
            let mut alpha = Vec::new();
            for c in part.chars() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| ModifyError::BadPermutationFormat(s.to_string()))?;
                alpha.push(d as u8);
            }
            alphas.push(alpha);
        }
        PermutationFamily::new(alphas)
    }

    pub fn d(&self) -> usize {
        self.alphas.len()
    }

    pub fn alpha(&self, j: usize) -> &[u8] {
        &self.alphas[j]
    }

    pub fn apply(&self, j: usize, k: usize) -> usize {
        self.alphas[j][k] as usize
    }
}

impl fmt::Display for PermutationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .alphas
            .iter()
            .map(|a| a.iter().map(|s| s.to_string()).collect::<String>())
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Builds the rewiring plan on B(d, ell) that redirects the out-arcs of
/// X = {prefix k : k in 0..d}: the word `x1..x(l-1) k` is sent to
/// `x2..x(l-1) alpha_j(k) j` for each j, instead of the shift targets.
pub fn de_bruijn_permutation_plan(
    d: usize,
    ell: usize,
    prefix: &VertexWord,
    perms: &PermutationFamily,
) -> Result<Modification, ModifyError> {
    if d < 2 || ell < 2 {
        return Err(ModifyError::DegenerateParameters);
    }
    if perms.d() != d {
        return Err(ModifyError::PermutationCountMismatch {
            expected: d,
            got: perms.d(),
        });
    }
    if prefix.len() != ell - 1 {
        return Err(ModifyError::PrefixLengthMismatch { expected: ell - 1 });
    }
    if let Some(&sym) = prefix.symbols().iter().find(|&&s| s as usize >= d) {
        return Err(DigraphError::SymbolOutOfRange {
            sym,
            alphabet: d as u8,
        }
        .into());
    }
    if prefix.is_constant() {
        return Err(ModifyError::ConstantPrefix);
    }
    let host = de_bruijn(d, ell);
    let p = prefix
        .symbols()
        .iter()
        .fold(0usize, |acc, &s| acc * d + s as usize);
    // suffix value of x2..x(l-1); for ell = 2 the suffix is empty
    let s = p % d.pow(ell as u32 - 2);
    let x: Vec<usize> = (0..d).map(|k| p * d + k).collect();
    let mut removed = Vec::new();
    let mut added = Vec::new();
    for (k, &xk) in x.iter().enumerate() {
        let old: BTreeSet<usize> = host.out_neighbors(xk).iter().copied().collect();
        let new: BTreeSet<usize> = (0..d)
            .map(|j| s * d * d + perms.apply(j, k) * d + j)
            .collect();
        removed.extend(old.difference(&new).map(|&v| (xk, v)));
        added.extend(new.difference(&old).map(|&v| (xk, v)));
    }
    Modification::new(host, &x, &removed, &added, Side::Out)
}

/// Plans and applies the permutation rewiring in one step.
pub fn de_bruijn_permutation_modify(
    d: usize,
    ell: usize,
    prefix: &VertexWord,
    perms: &PermutationFamily,
) -> Result<Digraph, ModifyError> {
    de_bruijn_permutation_plan(d, ell, prefix, perms)?.apply()
}

const REJECTION_CAP: usize = 10_000;

/// Samples a valid out-side modification of `g`: picks a locally-line set
/// uniformly, then rejection-samples an arc pattern satisfying the overlap
/// and covering conditions, with column counts matching the host when
/// `preserve_in_degrees` is set. Deterministic in `seed`; `None` when `g`
/// has no locally-line set or the cap of 10000 attempts is exhausted.
pub fn random_modification(
    g: &Digraph,
    seed: u64,
    preserve_in_degrees: bool,
) -> Option<Modification> {
    let sets = find_local_line_sets(g);
    if sets.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..REJECTION_CAP {
        let lls = &sets[rng.gen_range(0..sets.len())];
        let (x, z) = (lls.x(), lls.z());
        let mut pattern: BTreeSet<(usize, usize)> = BTreeSet::new();
        if preserve_in_degrees {
            for &zv in z {
                let count = x.iter().filter(|&&xv| g.has_arc(xv, zv)).count();
                let mut pool = x.to_vec();
                for i in 0..count {
                    let j = rng.gen_range(i..pool.len());
                    pool.swap(i, j);
                    pattern.insert((pool[i], zv));
                }
            }
        } else {
            for &xv in x {
                for &zv in z {
                    if rng.gen_bool(0.5) {
                        pattern.insert((xv, zv));
                    }
                }
            }
        }
        // overlap arcs are forced to match the host
        for &a in x.iter().filter(|v| lls.y().binary_search(v).is_ok()) {
            for &b in x.iter().filter(|v| z.binary_search(v).is_ok()) {
                if pattern.contains(&(a, b)) != g.has_arc(a, b) {
                    continue 'attempt;
                }
            }
        }
        // covering on rows and columns
        if x.iter().any(|&xv| !z.iter().any(|&zv| pattern.contains(&(xv, zv)))) {
            continue;
        }
        if z.iter().any(|&zv| !x.iter().any(|&xv| pattern.contains(&(xv, zv)))) {
            continue;
        }
        let mut removed = Vec::new();
        let mut added = Vec::new();
        for &xv in x {
            for &zv in g.out_neighbors(xv) {
                if !pattern.contains(&(xv, zv)) {
                    removed.push((xv, zv));
                }
            }
        }
        for &(xv, zv) in &pattern {
            if !g.has_arc(xv, zv) {
                added.push((xv, zv));
            }
        }
        let m = Modification::new(g.clone(), x, &removed, &added, Side::Out)
            .expect("sampled pattern stays within the rewirable block");
        return Some(m);
    }
    None
}
