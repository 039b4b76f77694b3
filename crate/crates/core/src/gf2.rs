//! Dense linear algebra over GF(2) on bit-packed rows.
//!
//! A row is a single `u64`; bit `j` holds the entry in column `j`. Every
//! workload in this crate stays far below 64 columns, so one word per row is
//! enough and elimination reduces to XOR on words.

use std::fmt;

use crate::error::{Error, Result};

/// Widest matrix supported by the one-word row layout.
pub const MAX_COLS: usize = 64;

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A fixed-length vector over GF(2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    bits: u64,
}

impl BitVector {
    /// Builds a vector from its low `len` bits. Bits above `len` are rejected.
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len > MAX_COLS {
            return Err(Error::TooManyColumns(len));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::Dimension {
                expected: len,
                found: 64 - bits.leading_zeros() as usize,
            });
        }
        Ok(BitVector { len, bits })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_COLS);
        BitVector { len, bits: 0 }
    }

    pub fn from_bools(entries: &[bool]) -> Result<Self> {
        if entries.len() > MAX_COLS {
            return Err(Error::TooManyColumns(entries.len()));
        }
        let bits = entries
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        Ok(BitVector {
            len: entries.len(),
            bits,
        })
    }

    /// Parses a string of `0`/`1` characters; character `i` is entry `i`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Invalid(format!("`{other}` is not a 0/1 digit"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bools(&entries)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.bits >> i) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A dense 0/1 matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n_cols: usize,
    rows: Vec<u64>,
}

/// Reduced row-echelon form with zero rows removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Gf2Matrix,
    pub pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn new(n_cols: usize, rows: Vec<u64>) -> Result<Self> {
        if n_cols > MAX_COLS {
            return Err(Error::TooManyColumns(n_cols));
        }
        let mask = low_mask(n_cols);
        if let Some(bad) = rows.iter().find(|&&r| r & !mask != 0) {
            return Err(Error::Dimension {
                expected: n_cols,
                found: 64 - bad.leading_zeros() as usize,
            });
        }
        Ok(Gf2Matrix { n_cols, rows })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        assert!(n_cols <= MAX_COLS);
        Gf2Matrix {
            n_cols,
            rows: vec![0; n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_COLS);
        Gf2Matrix {
            n_cols: n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    /// Builds a matrix from rows written as `0`/`1` strings of equal length.
    pub fn from_strs(n_cols: usize, rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|s| {
                let v = BitVector::parse(s)?;
                if v.len() != n_cols {
                    return Err(Error::Dimension {
                        expected: n_cols,
                        found: v.len(),
                    });
                }
                Ok(v.bits())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_cols, rows)
    }

    /// Builds a matrix whose column `j` has the bits of `columns[j]` (bit `i` is row `i`).
    pub fn from_columns(n_rows: usize, columns: &[u64]) -> Result<Self> {
        if columns.len() > MAX_COLS {
            return Err(Error::TooManyColumns(columns.len()));
        }
        let mut rows = vec![0u64; n_rows];
        for (j, &c) in columns.iter().enumerate() {
            if c & !low_mask(n_rows) != 0 {
                return Err(Error::Dimension {
                    expected: n_rows,
                    found: 64 - c.leading_zeros() as usize,
                });
            }
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= ((c >> i) & 1) << j;
            }
        }
        Ok(Gf2Matrix {
            n_cols: columns.len(),
            rows,
        })
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector {
            len: self.n_cols,
            bits: self.rows[i],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    /// Column `j` packed with row `i` at bit `i`. Requires at most 64 rows.
    pub fn column(&self, j: usize) -> u64 {
        debug_assert!(self.rows.len() <= 64);
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &r)| acc | (((r >> j) & 1) << i))
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.n_cols).map(|j| self.column(j)).collect()
    }

    /// Appends a row; the row must fit in `n_cols` bits.
    pub fn push_row(&mut self, row: &BitVector) -> Result<()> {
        if row.len() != self.n_cols {
            return Err(Error::Dimension {
                expected: self.n_cols,
                found: row.len(),
            });
        }
        self.rows.push(row.bits());
        Ok(())
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Gf2Matrix {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &j)| acc | (((r >> j) & 1) << k))
            })
            .collect();
        Gf2Matrix {
            n_cols: cols.len(),
            rows,
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        assert!(self.n_rows() <= MAX_COLS);
        Gf2Matrix {
            n_cols: self.n_rows(),
            rows: self.columns(),
        }
    }

    pub fn rank(&self) -> usize {
        row_basis(&self.rows).len()
    }

    /// Reduced row-echelon form; pivots are increasing and one per returned row.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.n_cols {
            let bit = 1u64 << col;
            let Some(p) = (r..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Rref {
            matrix: Gf2Matrix {
                n_cols: self.n_cols,
                rows,
            },
            pivots,
        }
    }

    pub fn in_row_space(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.n_cols {
            return Err(Error::Dimension {
                expected: self.n_cols,
                found: v.len(),
            });
        }
        Ok(reduce(&row_basis(&self.rows), v.bits()) == 0)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix {}x{} [", self.n_rows(), self.n_cols)?;
        for (i, _) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        f.write_str("]")
    }
}

/// Echelon basis of the span of `vectors`, each entry keyed by its lowest set bit.
pub(crate) fn row_basis(vectors: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::with_capacity(vectors.len().min(64));
    for &v in vectors {
        let r = reduce(&basis, v);
        if r != 0 {
            basis.push(r);
        }
    }
    basis
}

/// Reduces `v` against an echelon basis built by [`row_basis`].
#[inline]
pub(crate) fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        let low = b & b.wrapping_neg();
        if v & low != 0 {
            v ^= b;
        }
    }
    v
}

/// Rank of the span of the given packed vectors.
#[inline]
pub fn span_rank<I: IntoIterator<Item = u64>>(vectors: I) -> usize {
    let mut basis = [0u64; 64];
    let mut n = 0;
    for v in vectors {
        let mut v = v;
        for &b in &basis[..n] {
            let low = b & b.wrapping_neg();
            if v & low != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            basis[n] = v;
            n += 1;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Gf2Matrix {
        Gf2Matrix::from_strs(7, &["1001101", "0101011", "0010111"]).unwrap()
    }

    /// Rank by checking every subset of rows for a vanishing sum.
    fn brute_rank(m: &Gf2Matrix) -> usize {
        let n = m.n_rows();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let k = mask.count_ones() as usize;
            if k <= best {
                continue;
            }
            let sel: Vec<u64> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| m.rows()[i])
                .collect();
            let independent = (1u32..(1 << sel.len())).all(|sub| {
                (0..sel.len())
                    .filter(|i| sub >> i & 1 == 1)
                    .fold(0, |acc, i| acc ^ sel[i])
                    != 0
            });
            if independent {
                best = k;
            }
        }
        best
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::zeros(0, 0).rank(), 0);
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(fano().rank(), 3);
        assert_eq!(Gf2Matrix::zeros(4, 0).rank(), 0);
    }

    #[test]
    fn rref_examples() {
        let m = Gf2Matrix::from_strs(2, &["11", "11"]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix, Gf2Matrix::from_strs(2, &["11"]).unwrap());
        assert_eq!(r.pivots, vec![0]);

        let id = Gf2Matrix::identity(5);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2, 3, 4]);

        // Fano with rows permuted and mixed: [I | D] comes back.
        let mixed = Gf2Matrix::from_strs(7, &["0010111", "1100110", "0101011"]).unwrap();
        let r = mixed.rref();
        assert_eq!(r.matrix.n_rows(), 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.matrix, fano());
    }

    #[test]
    fn row_space_membership() {
        let f = fano();
        assert!(f.in_row_space(&BitVector::zeros(7)).unwrap());
        let id = Gf2Matrix::identity(2);
        assert!(id.in_row_space(&BitVector::parse("11").unwrap()).unwrap());

        // All 8 combinations of the Fano rows: the all-ones vector is not among them.
        let combos: Vec<u64> = (0u32..8)
            .map(|s| {
                (0..3)
                    .filter(|i| s >> i & 1 == 1)
                    .fold(0, |a, i| a ^ f.rows()[i])
            })
            .collect();
        let ones = BitVector::parse("1111111").unwrap();
        assert_eq!(
            f.in_row_space(&ones).unwrap(),
            combos.contains(&ones.bits())
        );
        assert!(!f.in_row_space(&ones).unwrap());

        assert!(matches!(
            f.in_row_space(&BitVector::zeros(6)),
            Err(Error::Dimension {
                expected: 7,
                found: 6
            })
        ));
    }

    #[test]
    fn rejects_out_of_range_bits() {
        assert!(Gf2Matrix::new(3, vec![0b1000]).is_err());
        assert!(BitVector::new(2, 0b100).is_err());
        assert!(Gf2Matrix::new(65, vec![]).is_err());
    }

    #[test]
    fn columns_round_trip() {
        let f = fano();
        let back = Gf2Matrix::from_columns(3, &f.columns()).unwrap();
        assert_eq!(back, f);
        assert_eq!(f.transpose().transpose(), f);
        assert_eq!(f.select_columns(&[3, 4]).columns(), vec![0b011, 0b101]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = Gf2Matrix> {
            (0usize..=10, 0usize..=12).prop_flat_map(|(r, c)| {
                proptest::collection::vec(0u64..(1u64 << c), r)
                    .prop_map(move |rows| Gf2Matrix::new(c, rows).unwrap())
            })
        }

        proptest! {
            #[test]
            fn rank_matches_brute_force(m in matrix()) {
                prop_assert_eq!(m.rank(), brute_rank(&m));
            }

            #[test]
            fn rref_preserves_rank(m in matrix()) {
                let r = m.rref();
                prop_assert_eq!(r.matrix.rank(), m.rank());
                prop_assert_eq!(r.matrix.n_rows(), m.rank());
                prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
                for (i, &p) in r.pivots.iter().enumerate() {
                    prop_assert_eq!(r.matrix.column(p), 1u64 << i);
                }
            }

            #[test]
            fn membership_matches_rank(m in matrix(), v in any::<u64>()) {
                let v = BitVector::new(m.n_cols(), v & low_mask(m.n_cols())).unwrap();
                let mut bigger = m.clone();
                bigger.push_row(&v).unwrap();
                prop_assert_eq!(m.in_row_space(&v).unwrap(), bigger.rank() == m.rank());
            }
        }
    }
}
