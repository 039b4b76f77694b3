//! Binary matroids as column matroids of GF(2) matrices.
//!
//! Elements are identified by column index; labels ride along and are
//! preserved by every minor operation. The stored representation is always
//! the reduced row-echelon form of a full-row-rank matrix, so two matroids
//! built by the same sequence of operations have identical representations.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2::{self, low_mask, BitVector, Gf2Matrix};

/// Default cap on ground-set size for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// Environment variable overriding [`DEFAULT_ENUMERATION_BOUND`].
pub const BOUND_ENV: &str = "MATLIFT_MAX_GROUNDSET";

/// Ground-set bound used by circuit enumeration and everything built on it.
pub fn enumeration_bound() -> usize {
    static BOUND: OnceLock<usize> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var(BOUND_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&b: &usize| b <= gf2::MAX_COLS)
            .unwrap_or(DEFAULT_ENUMERATION_BOUND)
    })
}

pub(crate) fn check_bound(size: usize) -> Result<()> {
    let bound = enumeration_bound();
    if size > bound {
        Err(Error::GroundSetTooLarge { size, bound })
    } else {
        Ok(())
    }
}

/// A set of elements of one matroid, stored as a mask over column indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroundSubset(u64);

impl GroundSubset {
    pub const EMPTY: GroundSubset = GroundSubset(0);

    pub fn from_mask(mask: u64) -> Self {
        GroundSubset(mask)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        GroundSubset(indices.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    pub fn union(self, other: GroundSubset) -> Self {
        GroundSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: GroundSubset) -> Self {
        GroundSubset(self.0 & other.0)
    }

    pub fn difference(self, other: GroundSubset) -> Self {
        GroundSubset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GroundSubset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Element indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary matroid: labels plus a full-row-rank representation in RREF.
#[derive(Clone)]
pub struct BinaryMatroid {
    name: String,
    labels: Vec<String>,
    rep: Gf2Matrix,
    cols: Vec<u64>,
}

impl PartialEq for BinaryMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.rep == other.rep
    }
}

impl Eq for BinaryMatroid {}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryMatroid")
            .field("name", &self.name)
            .field("rank", &self.rank())
            .field("labels", &self.labels)
            .field("rep", &self.rep)
            .finish()
    }
}

impl BinaryMatroid {
    /// Column matroid of `m` with the given element labels.
    pub fn from_matrix<S: Into<String>>(labels: Vec<S>, m: &Gf2Matrix) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != m.n_cols() {
            return Err(Error::LabelCount {
                labels: labels.len(),
                columns: m.n_cols(),
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if m.n_rows() > 64 {
            // Drop dependent rows before packing columns into words.
            let r = m.rref().matrix;
            return Ok(Self::standardized("M".into(), labels, &r));
        }
        Ok(Self::standardized("M".into(), labels, m))
    }

    /// Builds from columns packed with row `i` at bit `i`.
    pub fn from_columns<S: Into<String>>(
        labels: Vec<S>,
        n_rows: usize,
        columns: &[u64],
    ) -> Result<Self> {
        let m = Gf2Matrix::from_columns(n_rows, columns)?;
        Self::from_matrix(labels, &m)
    }

    fn standardized(name: String, labels: Vec<String>, m: &Gf2Matrix) -> Self {
        let rep = m.rref().matrix;
        let cols = rep.columns();
        BinaryMatroid {
            name,
            labels,
            rep,
            cols,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rep.n_rows()
    }

    pub fn corank(&self) -> usize {
        self.len() - self.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Standardized representation (RREF, full row rank).
    pub fn rep(&self) -> &Gf2Matrix {
        &self.rep
    }

    /// Columns of the representation, row `i` at bit `i`.
    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn ground(&self) -> GroundSubset {
        GroundSubset(low_mask(self.len()))
    }

    /// Resolves element names to a subset of this matroid.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<GroundSubset> {
        names.iter().try_fold(GroundSubset::EMPTY, |acc, n| {
            let n = n.as_ref();
            self.index_of(n)
                .map(|i| acc.union(GroundSubset::from_indices([i])))
                .ok_or_else(|| Error::UnknownElement(n.to_string()))
        })
    }

    pub fn subset_labels(&self, s: GroundSubset) -> Vec<&str> {
        s.iter().map(|i| self.labels[i].as_str()).collect()
    }

    fn check_subset(&self, s: GroundSubset) {
        assert!(
            s.is_subset(self.ground()),
            "subset {s:?} is not contained in a ground set of size {}",
            self.len()
        );
    }

    /// Rank of the columns indexed by `s`.
    pub fn subset_rank(&self, s: GroundSubset) -> usize {
        self.check_subset(s);
        gf2::span_rank(s.iter().map(|i| self.cols[i]))
    }

    /// Rank of the named elements.
    pub fn rank_of<S: AsRef<str>>(&self, names: &[S]) -> Result<usize> {
        Ok(self.subset_rank(self.subset(names)?))
    }

    pub fn is_independent(&self, s: GroundSubset) -> bool {
        self.subset_rank(s) == s.len()
    }

    /// Whether deleting `s` keeps the rank.
    pub fn is_coindependent(&self, s: GroundSubset) -> bool {
        self.subset_rank(self.ground().difference(s)) == self.rank()
    }

    pub fn delete(&self, s: GroundSubset) -> BinaryMatroid {
        self.check_subset(s);
        let keep: Vec<usize> = self.ground().difference(s).iter().collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let m = self.rep.select_columns(&keep);
        Self::standardized(self.name.clone(), labels, &m)
    }

    /// Contracts `s`: each non-loop element is pivoted to a unit column whose
    /// row and column are then dropped. Loops in `s` are simply removed.
    pub fn contract(&self, s: GroundSubset) -> BinaryMatroid {
        self.check_subset(s);
        let mut rows = self.rep.rows().to_vec();
        for j in s.iter() {
            let bit = 1u64 << j;
            if let Some(p) = rows.iter().position(|&r| r & bit != 0) {
                let pivot = rows.swap_remove(p);
                for r in rows.iter_mut() {
                    if *r & bit != 0 {
                        *r ^= pivot;
                    }
                }
            }
        }
        let keep: Vec<usize> = self.ground().difference(s).iter().collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let m = Gf2Matrix::new(self.len(), rows)
            .expect("rows stay within the column count")
            .select_columns(&keep);
        Self::standardized(self.name.clone(), labels, &m)
    }

    /// Minor `M \ deleted / contracted`.
    pub fn minor(&self, deleted: GroundSubset, contracted: GroundSubset) -> BinaryMatroid {
        assert!(deleted.intersection(contracted).is_empty());
        // Contract first, then translate the deletion into the contracted indices.
        let c = self.contract(contracted);
        let remaining: Vec<usize> = self.ground().difference(contracted).iter().collect();
        let del = GroundSubset::from_indices(
            remaining
                .iter()
                .enumerate()
                .filter(|(_, &old)| deleted.contains(old))
                .map(|(new, _)| new),
        );
        c.delete(del)
    }

    /// Dual via the standard form: `[I_r | D]` dualizes to `[D^T | I_{n-r}]`,
    /// laid back out in the original column order.
    pub fn dual(&self) -> BinaryMatroid {
        let pivots = self.rep.rref().pivots;
        let mut pivot_row = vec![usize::MAX; self.len()];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_row[p] = i;
        }
        let rows: Vec<u64> = (0..self.len())
            .filter(|&j| pivot_row[j] == usize::MAX)
            .map(|j| {
                let col = self.cols[j];
                pivots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (col >> i) & 1 == 1)
                    .fold(1u64 << j, |acc, (_, &p)| acc | (1u64 << p))
            })
            .collect();
        let m = Gf2Matrix::new(self.len(), rows).expect("dual rows fit the ground set");
        Self::standardized(dual_name(&self.name), self.labels.clone(), &m)
    }

    pub fn loops(&self) -> GroundSubset {
        GroundSubset::from_indices((0..self.len()).filter(|&i| self.cols[i] == 0))
    }

    pub fn coloops(&self) -> GroundSubset {
        let r = self.rank();
        let all = self.ground();
        GroundSubset::from_indices((0..self.len()).filter(|&i| {
            self.subset_rank(all.difference(GroundSubset::from_indices([i]))) + 1 == r
        }))
    }

    /// Adds a column with the given entries (one per row) under a new label.
    pub fn with_column(
        &self,
        label: impl Into<String>,
        column: &BitVector,
    ) -> Result<BinaryMatroid> {
        if column.len() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                found: column.len(),
            });
        }
        let label = label.into();
        if self.index_of(&label).is_some() {
            return Err(Error::DuplicateLabel(label));
        }
        if self.len() >= gf2::MAX_COLS {
            return Err(Error::TooManyColumns(self.len() + 1));
        }
        let mut cols = self.cols.clone();
        cols.push(column.bits());
        let mut labels = self.labels.clone();
        labels.push(label);
        let m = Gf2Matrix::from_columns(self.rank(), &cols)?;
        Ok(Self::standardized(self.name.clone(), labels, &m))
    }

    /// Adds a coloop: a new row that is zero except in the new column.
    pub fn with_coloop(&self, label: impl Into<String>) -> Result<BinaryMatroid> {
        let label = label.into();
        if self.index_of(&label).is_some() {
            return Err(Error::DuplicateLabel(label));
        }
        if self.len() >= gf2::MAX_COLS {
            return Err(Error::TooManyColumns(self.len() + 1));
        }
        let n = self.len() + 1;
        let mut rows = self.rep.rows().to_vec();
        rows.push(1u64 << self.len());
        let mut labels = self.labels.clone();
        labels.push(label);
        let m = Gf2Matrix::new(n, rows)?;
        Ok(Self::standardized(self.name.clone(), labels, &m))
    }

    /// Renames elements; the relabeling must keep labels distinct.
    pub fn relabeled<S: Into<String>>(&self, labels: Vec<S>) -> Result<BinaryMatroid> {
        let m = BinaryMatroid::from_matrix(labels, &self.rep)?;
        Ok(m.with_name(self.name.clone()))
    }

    /// Reorders columns: element `k` of the result is element `order[k]` here.
    pub fn permuted(&self, order: &[usize]) -> BinaryMatroid {
        assert_eq!(order.len(), self.len());
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        let m = self.rep.select_columns(order);
        Self::standardized(self.name.clone(), labels, &m)
    }

    /// First label of the form `z1`, `z2`, ... not already in use, skipping `taken`.
    pub fn fresh_label(&self, taken: &[String]) -> String {
        (1..)
            .map(|k| format!("z{k}"))
            .find(|l| self.index_of(l).is_none() && !taken.contains(l))
            .expect("infinitely many candidates")
    }

    /// All circuits, sorted by size then by mask.
    ///
    /// Walks the cycle space (null space of the representation) in Gray-code
    /// order; a nonzero cycle is a circuit exactly when its support has
    /// nullity one.
    pub fn circuits(&self) -> Result<Vec<GroundSubset>> {
        check_bound(self.len())?;
        Ok(self.circuit_masks().into_iter().map(GroundSubset).collect())
    }

    pub(crate) fn circuit_masks(&self) -> Vec<u64> {
        let basis = self.cycle_basis();
        let mut out = Vec::new();
        let mut v = 0u64;
        for step in 1u64..(1u64 << basis.len()) {
            v ^= basis[step.trailing_zeros() as usize];
            let size = v.count_ones() as usize;
            if gf2::span_rank(GroundSubset(v).iter().map(|i| self.cols[i])) + 1 == size {
                out.push(v);
            }
        }
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    /// Basis of the null space, one vector per non-pivot column.
    fn cycle_basis(&self) -> Vec<u64> {
        let pivots = self.rep.rref().pivots;
        let mut is_pivot = vec![false; self.len()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.len())
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let col = self.cols[j];
                pivots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (col >> i) & 1 == 1)
                    .fold(1u64 << j, |acc, (_, &p)| acc | (1u64 << p))
            })
            .collect()
    }

    pub fn cocircuits(&self) -> Result<Vec<GroundSubset>> {
        self.dual().circuits()
    }

    /// Cocircuits of odd size.
    pub fn odd_cocircuits(&self) -> Result<Vec<GroundSubset>> {
        Ok(self
            .cocircuits()?
            .into_iter()
            .filter(|c| c.len() % 2 == 1)
            .collect())
    }

    /// Eulerian test for binary matroids: every cocircuit has even size.
    pub fn is_eulerian(&self) -> Result<bool> {
        Ok(self.cocircuits()?.iter().all(|c| c.len() % 2 == 0))
    }

    /// Partitions the ground set into disjoint circuits, if possible.
    pub fn circuit_partition(&self) -> Result<Option<Vec<GroundSubset>>> {
        let circuits = self.circuit_masks();
        check_bound(self.len())?;
        let all = self.ground().mask();
        let mut chosen = Vec::new();
        fn search(covered: u64, all: u64, circuits: &[u64], chosen: &mut Vec<u64>) -> bool {
            if covered == all {
                return true;
            }
            let first = (!covered & all).trailing_zeros();
            for &c in circuits {
                if (c >> first) & 1 == 1 && c & covered == 0 {
                    chosen.push(c);
                    if search(covered | c, all, circuits, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        if search(0, all, &circuits, &mut chosen) {
            Ok(Some(chosen.into_iter().map(GroundSubset).collect()))
        } else {
            Ok(None)
        }
    }

    /// Serializes to the matroid text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.name, self.rank(), self.len());
        out.push_str(&self.labels.join(" "));
        out.push('\n');
        for i in 0..self.rank() {
            out.push_str(&self.rep.row(i).to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the matroid text format: `name rank n`, then labels, then `rank` rows.
    pub fn parse(text: &str) -> Result<BinaryMatroid> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let (ln, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header line".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(ln, "expected `name rank n_elements`".into()));
        }
        let rank: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(ln, format!("bad rank `{}`", fields[1])))?;
        let n: usize = fields[2]
            .parse()
            .map_err(|_| parse_err(ln, format!("bad element count `{}`", fields[2])))?;
        let (ln, label_line) = lines.next().unwrap_or((2, ""));
        let labels: Vec<String> = label_line.split_whitespace().map(String::from).collect();
        if labels.len() != n {
            return Err(parse_err(
                ln,
                format!("expected {n} labels, found {}", labels.len()),
            ));
        }
        let mut rows = Vec::with_capacity(rank);
        for _ in 0..rank {
            let (ln, row) = lines
                .next()
                .ok_or_else(|| parse_err(ln + rows.len() + 1, "missing matrix row".into()))?;
            let v = BitVector::parse(row).map_err(|e| parse_err(ln, e.to_string()))?;
            if v.len() != n {
                return Err(parse_err(
                    ln,
                    format!("row has {} entries, expected {n}", v.len()),
                ));
            }
            rows.push(v.bits());
        }
        if let Some((ln, extra)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(parse_err(ln, format!("unexpected trailing line `{extra}`")));
        }
        let m = Gf2Matrix::new(n, rows).map_err(|e| parse_err(1, e.to_string()))?;
        let matroid =
            BinaryMatroid::from_matrix(labels, &m).map_err(|e| parse_err(2, e.to_string()))?;
        Ok(matroid.with_name(fields[0]))
    }
}

fn dual_name(name: &str) -> String {
    if let Some(base) = name.strip_suffix('*') {
        return base.to_string();
    }
    if let Some(rest) = name.strip_prefix("M*(") {
        return format!("M({rest}");
    }
    if let Some(rest) = name.strip_prefix("M(") {
        return format!("M*({rest}");
    }
    format!("{name}*")
}
