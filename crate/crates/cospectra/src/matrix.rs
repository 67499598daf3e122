//! Square matrices used by the spectral and walk-counting routines.
//!
//! [`IntMatrix`] stores arbitrary-precision integers so that characteristic
//! polynomials and high matrix powers are exact; [`BitMatrix`] is a packed
//! boolean matrix for reachability ("is there a walk") questions where only
//! zero/nonzero matters.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense square matrix with `BigInt` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// The all-ones matrix J.
    pub fn ones(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::one(); n * n],
        }
    }

    /// Builds a matrix from rows of machine integers. Panics if the rows are
    /// not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = IntMatrix::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has length {} in a {n}x{n} matrix", row.len());
            for (j, v) in row.iter().enumerate() {
                m.data[i * n + j] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix { n: self.n, data }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        IntMatrix { n: self.n, data }
    }

    pub fn pow(&self, k: usize) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// True iff every entry equals `c`.
    pub fn is_constant(&self, c: &BigInt) -> bool {
        self.data.iter().all(|a| a == c)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<String> = self.data.iter().map(|v| v.to_string()).collect();
        let width = strings.iter().map(|s| s.len()).max().unwrap_or(1);
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", strings[i * self.n + j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix(n={})\n{}", self.n, self)
    }
}

/// Packed boolean square matrix; rows are bit vectors in 64-bit blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = i * self.words + j / 64;
        if v {
            self.rows[w] |= 1 << (j % 64);
        } else {
            self.rows[w] &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn rows_equal(&self, i: usize, j: usize) -> bool {
        self.row(i) == self.row(j)
    }

    pub fn rows_disjoint(&self, i: usize, j: usize) -> bool {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .all(|(a, b)| a & b == 0)
    }

    pub fn row_is_empty(&self, i: usize) -> bool {
        self.row(i).iter().all(|w| *w == 0)
    }

    /// Boolean matrix product: entry (i,j) is true iff some k has
    /// self(i,k) and other(k,j).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let words = self.words;
        let mut out = BitMatrix::new(n);
        for i in 0..n {
            for k in 0..n {
                if self.get(i, k) {
                    let (dst, src) = (i * words, k * words);
                    for w in 0..words {
                        out.rows[dst + w] |= other.rows[src + w];
                    }
                }
            }
        }
        out
    }

    pub fn or_assign(&mut self, other: &BitMatrix) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            *a |= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix(n={})", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
