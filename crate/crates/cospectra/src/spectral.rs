//! Exact integer spectral computations: characteristic polynomials, integer
//! spectra, cospectrality, and the all-ones-matrix reachability equations.
//!
//! Everything is arbitrary-precision; cospectrality is decided by coefficient
//! equality and never by floating point.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::matrix::IntMatrix;

/// Monic integer polynomial stored as coefficients `c0..cn` (low to high).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Wraps a coefficient list `c0..cn`; the leading coefficient must be 1.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(
            coeffs.last().map(One::is_one).unwrap_or(false),
            "characteristic polynomial must be monic"
        );
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if !mag.is_one() || k == 0 {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integer eigenvalues with algebraic multiplicities, plus the monic factor
/// that has no integer roots (constant 1 when the polynomial splits).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSpectrum {
    pairs: Vec<(BigInt, usize)>,
    residual: CharPoly,
}

impl IntSpectrum {
    /// Eigenvalue/multiplicity pairs in increasing eigenvalue order.
    pub fn pairs(&self) -> &[(BigInt, usize)] {
        &self.pairs
    }

    pub fn multiplicity(&self, lambda: &BigInt) -> usize {
        self.pairs
            .iter()
            .find(|(l, _)| l == lambda)
            .map_or(0, |(_, m)| *m)
    }

    pub fn residual(&self) -> &CharPoly {
        &self.residual
    }

    /// True iff the polynomial factors completely over the integers.
    pub fn splits(&self) -> bool {
        self.residual.degree() == 0
    }
}

impl fmt::Display for IntSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(l, m)| format!("{l}^{m}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))?;
        if !self.splits() {
            write!(f, " with residual factor {}", self.residual)?;
        }
        Ok(())
    }
}

/// det(xI - A) by the Faddeev-LeVerrier recurrence. Every interior division
/// by k is exact over the integers.
pub fn char_poly(a: &IntMatrix) -> CharPoly {
    let n = a.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zero(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        m = a.mul(&m);
        let c = coeffs[n - k + 1].clone();
        for i in 0..n {
            let v = m.get(i, i) + &c;
            m.set(i, i, v);
        }
        let t = a.mul(&m).trace();
        let div = BigInt::from(k);
        debug_assert!((&t % &div).is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[n - k] = -t / div;
    }
    CharPoly { coeffs }
}

/// Identical characteristic polynomials (hence equal order, too).
pub fn cospectral(g1: &Digraph, g2: &Digraph) -> bool {
    g1.n() == g2.n()
        && char_poly(&g1.adjacency_matrix()) == char_poly(&g2.adjacency_matrix())
}

/// Number of trailing zero coefficients, i.e. the multiplicity of the
/// eigenvalue 0.
pub fn zero_multiplicity(p: &CharPoly) -> usize {
    p.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

// Quotient of a monic polynomial by (x - t) when the remainder is zero.
fn divide_by_root(coeffs: &[BigInt], t: &BigInt) -> Option<Vec<BigInt>> {
    let k = coeffs.len() - 1;
    let mut quot = vec![BigInt::zero(); k];
    let mut carry = coeffs[k].clone();
    for i in (0..k).rev() {
        quot[i] = carry.clone();
        carry = &coeffs[i] + t * carry;
    }
    carry.is_zero().then_some(quot)
}

// Trial division is capped: integer roots need |t| <= 1 + max|c_i| (Cauchy
// bound), far below the cap for any adjacency polynomial this crate builds.
const DIVISOR_TRIAL_CAP: u64 = 1 << 20;

fn root_candidates(coeffs: &[BigInt]) -> Vec<BigInt> {
    let constant = coeffs[0].abs();
    let cauchy = coeffs
        .iter()
        .take(coeffs.len() - 1)
        .map(Signed::abs)
        .max()
        .unwrap_or_default()
        + 1;
    let mut divisors = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= constant && d.to_u64().is_some_and(|v| v <= DIVISOR_TRIAL_CAP) {
        if (&constant % &d).is_zero() {
            divisors.push(d.clone());
            divisors.push(&constant / &d);
        }
        d += 1;
    }
    let mut out: Vec<BigInt> = divisors
        .into_iter()
        .filter(|d| *d <= cauchy)
        .flat_map(|d| [-&d, d])
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Extracts every integer root with its multiplicity via rational-root
/// candidates and exact synthetic division; what remains is the residual.
pub fn integer_spectrum(p: &CharPoly) -> IntSpectrum {
    let mut pairs = Vec::new();
    let m = zero_multiplicity(p);
    let mut rest: Vec<BigInt> = p.coeffs[m..].to_vec();
    if m > 0 {
        pairs.push((BigInt::zero(), m));
    }
    if rest.len() > 1 {
        for t in root_candidates(&rest) {
            if t.is_zero() {
                continue;
            }
            let mut mult = 0;
            while let Some(q) = divide_by_root(&rest, &t) {
                rest = q;
                mult += 1;
                if rest.len() == 1 {
                    break;
                }
            }
            if mult > 0 {
                pairs.push((t, mult));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    IntSpectrum {
        pairs,
        residual: CharPoly::from_coeffs(rest),
    }
}

/// Right-hand sides for the walk-count matrix equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReachabilityKind {
    /// A^ell = J: exactly one walk of length ell between any ordered pair.
    Upp,
    /// A^ell + A^(ell-1) = J: exactly one walk of length ell or ell-1.
    Kautz,
    /// A^ell = c J.
    Scaled(u64),
}

/// Checks the chosen matrix equation exactly. `ell` must be positive.
pub fn check_reachability_equation(g: &Digraph, ell: usize, kind: ReachabilityKind) -> bool {
    assert!(ell >= 1, "reachability exponent must be positive");
    let a = g.adjacency_matrix();
    match kind {
        ReachabilityKind::Upp => a.pow(ell).is_constant(&BigInt::one()),
        ReachabilityKind::Kautz => a
            .pow(ell)
            .add(&a.pow(ell - 1))
            .is_constant(&BigInt::one()),
        ReachabilityKind::Scaled(c) => a.pow(ell).is_constant(&BigInt::from(c)),
    }
}

fn eval_matrix_poly(coeffs: &[i64], a: &IntMatrix) -> IntMatrix {
    let n = a.n();
    let mut acc = IntMatrix::zero(n);
    for c in coeffs.iter().rev() {
        acc = a.mul(&acc);
        for i in 0..n {
            let v = acc.get(i, i) + BigInt::from(*c);
            acc.set(i, i, v);
        }
    }
    acc
}

/// Checks A'A = A'A' exactly, and the consequence A'q(A) = A'q(A') for one
/// random integer polynomial q per degree up to `q_degree` (fixed seed, so
/// the check is deterministic).
pub fn verify_polynomial_identity(g: &Digraph, g_mod: &Digraph, q_degree: usize) -> bool {
    if g.n() != g_mod.n() {
        return false;
    }
    let a = g.adjacency_matrix();
    let ap = g_mod.adjacency_matrix();
    if ap.mul(&a) != ap.mul(&ap) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c05_9ec7);
    for deg in 1..=q_degree {
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
        if ap.mul(&eval_matrix_poly(&coeffs, &a)) != ap.mul(&eval_matrix_poly(&coeffs, &ap)) {
            return false;
        }
    }
    true
}
