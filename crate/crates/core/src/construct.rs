//! Splitting, elementary lifts, single-element extensions, elementary
//! quotients, and bounded coextensions.

use std::fmt;

use crate::catalog;
use crate::error::Result;
use crate::gf2::{BitVector, Gf2Matrix};
use crate::iso::{dedupe_isomorphic, find_isomorphism, Profile};
use crate::matroid::{check_bound, BinaryMatroid, GroundSubset};
use crate::recognition;

/// Indicator row of `s` over the ground set of `m`.
fn indicator(m: &BinaryMatroid, s: GroundSubset) -> BitVector {
    BitVector::new(m.len(), s.mask()).expect("subset lies in the ground set")
}

/// The splitting matroid `M_S`: the representation with the indicator row
/// of `s` appended. The ground set is unchanged.
pub fn split(m: &BinaryMatroid, s: GroundSubset) -> BinaryMatroid {
    assert!(s.is_subset(m.ground()));
    let mut a = m.rep().clone();
    a.push_row(&indicator(m, s)).expect("row length matches");
    BinaryMatroid::from_matrix(m.labels().to_vec(), &a)
        .expect("labels already validated")
        .with_name(m.name().to_string())
}

/// Splitting by element names.
pub fn split_labels<S: AsRef<str>>(m: &BinaryMatroid, names: &[S]) -> Result<BinaryMatroid> {
    Ok(split(m, m.subset(names)?))
}

/// The auxiliary matroid realizing `split(m, s)` as an elementary lift: the
/// split matrix plus a fresh column that is 1 only in the appended row.
/// Contracting the fresh element gives back `m`; deleting it gives `split(m, s)`.
pub fn lift_coextension(m: &BinaryMatroid, s: GroundSubset) -> Result<BinaryMatroid> {
    let label = m.fresh_label(&[]);
    let n = m.len();
    let mut rows: Vec<u64> = m.rep().rows().to_vec();
    rows.push(s.mask() | (1u64 << n));
    let a = Gf2Matrix::new(n + 1, rows)?;
    let mut labels = m.labels().to_vec();
    labels.push(label);
    Ok(BinaryMatroid::from_matrix(labels, &a)?.with_name(m.name().to_string()))
}

/// Every splitting of `m`, one per subset of the ground set (empty set first).
pub fn elementary_lifts(
    m: &BinaryMatroid,
) -> impl Iterator<Item = (GroundSubset, BinaryMatroid)> + '_ {
    assert!(m.len() < 64);
    (0u64..(1u64 << m.len())).map(move |mask| {
        let s = GroundSubset::from_mask(mask);
        (s, split(m, s))
    })
}

/// How a single-element extension was formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionColumn {
    /// A new column over the existing rows (zero gives a loop).
    Vector(BitVector),
    /// A new row and a unit column: the new element is a coloop.
    Coloop,
}

impl ExtensionColumn {
    pub fn is_loop_or_coloop(&self) -> bool {
        match self {
            ExtensionColumn::Vector(v) => v.is_zero(),
            ExtensionColumn::Coloop => true,
        }
    }
}

impl fmt::Display for ExtensionColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionColumn::Vector(v) if v.is_empty() => f.write_str("()"),
            ExtensionColumn::Vector(v) => write!(f, "{v}"),
            ExtensionColumn::Coloop => f.write_str("coloop"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub column: ExtensionColumn,
    /// Label of the added element.
    pub element: String,
    pub matroid: BinaryMatroid,
}

/// Iterator over the `2^r + 1` single-element extensions of a rank-`r` matroid:
/// one per column vector (in increasing bit order, zero first), then the coloop.
pub struct SingleExtensions<'a> {
    base: &'a BinaryMatroid,
    label: String,
    next: u64,
    done: bool,
}

impl Iterator for SingleExtensions<'_> {
    type Item = Extension;

    fn next(&mut self) -> Option<Extension> {
        if self.done {
            return None;
        }
        let r = self.base.rank();
        if self.next < (1u64 << r) {
            let v = BitVector::new(r, self.next).expect("fits in rank bits");
            self.next += 1;
            let matroid = self
                .base
                .with_column(self.label.clone(), &v)
                .expect("fresh label and matching length");
            return Some(Extension {
                column: ExtensionColumn::Vector(v),
                element: self.label.clone(),
                matroid,
            });
        }
        self.done = true;
        let matroid = self
            .base
            .with_coloop(self.label.clone())
            .expect("fresh label");
        Some(Extension {
            column: ExtensionColumn::Coloop,
            element: self.label.clone(),
            matroid,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        if self.done {
            return (0, Some(0));
        }
        let left = (1usize << self.base.rank()) - self.next as usize + 1;
        (left, Some(left))
    }
}

/// The single extension of `m` by `column`, with the usual fresh label.
pub fn extension_by(m: &BinaryMatroid, column: &ExtensionColumn) -> Result<Extension> {
    let element = m.fresh_label(&[]);
    let matroid = match column {
        ExtensionColumn::Vector(v) => m.with_column(element.clone(), v)?,
        ExtensionColumn::Coloop => m.with_coloop(element.clone())?,
    };
    Ok(Extension {
        column: *column,
        element,
        matroid,
    })
}

/// The elementary quotient `N / a` for the extension `N` of `m` by `column`.
pub fn quotient_by(m: &BinaryMatroid, column: &ExtensionColumn) -> Result<BinaryMatroid> {
    let ext = extension_by(m, column)?;
    let a = ext
        .matroid
        .index_of(&ext.element)
        .expect("extension element present");
    Ok(ext.matroid.contract(GroundSubset::from_indices([a])))
}

pub fn single_extensions(m: &BinaryMatroid) -> SingleExtensions<'_> {
    assert!(m.rank() < 64 && m.len() < 64);
    SingleExtensions {
        base: m,
        label: m.fresh_label(&[]),
        next: 0,
        done: false,
    }
}

/// One elementary quotient `N / a` of a matroid, with `N \ a` the matroid itself.
#[derive(Clone, Debug)]
pub struct QuotientRecord {
    pub extension_column: ExtensionColumn,
    pub quotient: BinaryMatroid,
    pub is_graphic: bool,
    pub catalog_match: Option<String>,
}

impl QuotientRecord {
    fn from_extension(ext: Extension) -> QuotientRecord {
        let a = ext
            .matroid
            .index_of(&ext.element)
            .expect("extension element present");
        let quotient = ext.matroid.contract(GroundSubset::from_indices([a]));
        let is_graphic = recognition::is_graphic(&quotient)
            .expect("quotients stay within the enumeration bound")
            .holds;
        let catalog_match = catalog_match(&quotient);
        QuotientRecord {
            extension_column: ext.column,
            quotient,
            is_graphic,
            catalog_match,
        }
    }

    /// Whether the quotient has neither an F7 nor an F7* minor.
    pub fn avoids_fano_minors(&self) -> Result<bool> {
        for name in ["F7", "F7*"] {
            let f = catalog::named(name)?;
            if recognition::has_minor(&self.quotient, &f)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Name of the first catalog matroid isomorphic to `m`, if any.
pub fn catalog_match(m: &BinaryMatroid) -> Option<String> {
    let p = Profile::build(m);
    catalog::index().into_iter().find_map(|name| {
        let c = catalog::named(name).ok()?;
        if c.len() != m.len() || c.rank() != m.rank() {
            return None;
        }
        find_isomorphism(&p, &Profile::light(&c)).map(|_| name.to_string())
    })
}

/// Every elementary quotient, one per single-element extension, in
/// extension order. Graphic verdicts are computed eagerly.
pub fn elementary_quotients(m: &BinaryMatroid) -> impl Iterator<Item = QuotientRecord> + '_ {
    single_extensions(m).map(QuotientRecord::from_extension)
}

/// Elementary quotients with one representative per isomorphism class.
pub fn distinct_quotients(m: &BinaryMatroid) -> Vec<QuotientRecord> {
    dedupe_isomorphic(elementary_quotients(m).collect(), |r| &r.quotient)
}

/// All matroids `P` on `E(m)` plus `n` fresh elements with `P / fresh = m`,
/// built as duals of iterated single extensions of the dual.
pub fn coextensions(m: &BinaryMatroid, n: usize, dedupe: bool) -> Result<Vec<BinaryMatroid>> {
    check_bound(m.len() + n)?;
    let duals = extensions(&m.dual(), n, dedupe)?;
    Ok(duals
        .into_iter()
        .map(|p| p.dual().with_name(m.name().to_string()))
        .collect())
}

/// All matroids `P` on `E(m)` plus `n` fresh elements with `P \ fresh = m`.
pub fn extensions(m: &BinaryMatroid, n: usize, dedupe: bool) -> Result<Vec<BinaryMatroid>> {
    check_bound(m.len() + n)?;
    let mut level = vec![m.clone()];
    for _ in 0..n {
        let next: Vec<BinaryMatroid> = level
            .iter()
            .flat_map(|p| single_extensions(p).map(|e| e.matroid))
            .collect();
        level = if dedupe {
            dedupe_isomorphic(next, |p| p)
        } else {
            next
        };
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;

    fn same_ranks(a: &BinaryMatroid, b: &BinaryMatroid) -> bool {
        a.len() == b.len()
            && (0u64..(1 << a.len())).all(|s| {
                let s = GroundSubset::from_mask(s);
                a.subset_rank(s) == b.subset_rank(s)
            })
    }

    #[test]
    fn split_examples() {
        let f7 = named("F7").unwrap();
        assert_eq!(split(&f7, GroundSubset::EMPTY), f7);

        let coloop = BinaryMatroid::from_matrix(vec!["a"], &Gf2Matrix::identity(1)).unwrap();
        assert_eq!(split(&coloop, coloop.ground()), coloop);
    }

    #[test]
    fn split_rank_rule() {
        let m = named("M(F1)").unwrap();
        for (s, n) in elementary_lifts(&m) {
            let in_space = m.rep().in_row_space(&indicator(&m, s)).unwrap();
            assert_eq!(n.rank(), m.rank() + usize::from(!in_space));
            assert_eq!(n == m, in_space);
        }
    }

    #[test]
    fn some_three_element_split_of_f1_is_not_graphic() {
        let m = named("M(F1)").unwrap();
        let found = itertools::Itertools::combinations(0..m.len(), 3).any(|c| {
            let n = split(&m, GroundSubset::from_indices(c));
            !recognition::is_graphic(&n).unwrap().holds
        });
        assert!(found);
    }

    #[test]
    fn lifts_of_a_loop() {
        let lp = BinaryMatroid::from_matrix(vec!["a"], &Gf2Matrix::zeros(0, 1)).unwrap();
        let lifts: Vec<_> = elementary_lifts(&lp).collect();
        assert_eq!(lifts.len(), 2);
        assert_eq!(lifts[0].1, lp);
        assert_eq!(lifts[1].1.coloops(), lifts[1].1.ground());
    }

    #[test]
    fn lifts_of_fano() {
        let f7 = named("F7").unwrap();
        let mut count = 0;
        for (s, n) in elementary_lifts(&f7) {
            count += 1;
            assert!(n.rank() - f7.rank() <= 1);
            let q = lift_coextension(&f7, s).unwrap();
            let z = GroundSubset::from_indices([7]);
            assert!(same_ranks(&q.contract(z), &f7));
            assert!(same_ranks(&q.delete(z), &n));
        }
        assert_eq!(count, 128);
    }

    #[test]
    fn extension_counts() {
        let empty =
            BinaryMatroid::from_matrix(Vec::<String>::new(), &Gf2Matrix::zeros(0, 0)).unwrap();
        let exts: Vec<_> = single_extensions(&empty).collect();
        assert_eq!(exts.len(), 2);
        assert_eq!(exts[0].matroid.loops().len(), 1);
        assert_eq!(exts[1].matroid.coloops().len(), 1);

        let f7 = named("F7").unwrap();
        let exts: Vec<_> = single_extensions(&f7).collect();
        assert_eq!(exts.len(), 9);
        for e in &exts {
            assert_eq!(e.element, "z1");
            let z = e.matroid.subset(&["z1"]).unwrap();
            assert_eq!(e.matroid.delete(z).labels(), f7.labels());
            assert!(same_ranks(&e.matroid.delete(z), &f7));
        }
    }

    #[test]
    fn quotient_rank_law() {
        for name in ["F7", "F7*", "M*(K33)"] {
            let m = named(name).unwrap();
            for q in elementary_quotients(&m) {
                assert_eq!(q.quotient.labels(), m.labels());
                let expected = if q.extension_column.is_loop_or_coloop() {
                    m.rank()
                } else {
                    m.rank() - 1
                };
                assert_eq!(q.quotient.rank(), expected, "{name} {}", q.extension_column);
                if q.extension_column.is_loop_or_coloop() {
                    assert_eq!(q.quotient, m);
                }
            }
        }
    }

    #[test]
    fn quotients_do_not_depend_on_the_chosen_basis() {
        // Re-derive each quotient from a representation with rows mixed; the
        // extension column transforms along with the rows.
        let m = named("F7*").unwrap();
        let r = m.rank();
        // Row operation: row0 += row1, row2 += row3.
        let mix = |v: u64| v ^ ((v >> 1) & 1) ^ (((v >> 3) & 1) << 2);
        let rows = m.rep().rows();
        let mixed_rows = vec![rows[0] ^ rows[1], rows[1], rows[2] ^ rows[3], rows[3]];
        let mixed = Gf2Matrix::new(m.len(), mixed_rows).unwrap();
        for v in 1u64..(1 << r) {
            let col = BitVector::new(r, v).unwrap();
            let direct = m.with_column("z1", &col).unwrap();
            let a = direct.subset(&["z1"]).unwrap();
            let q1 = direct.contract(a);

            let mut cols = mixed.columns();
            cols.push(mix(v));
            let mut labels = m.labels().to_vec();
            labels.push("z1".into());
            let other = BinaryMatroid::from_columns(labels, r, &cols).unwrap();
            let q2 = other.contract(a);
            assert!(same_ranks(&q1, &q2));
        }
    }

    #[test]
    fn coextension_examples() {
        let k4 = crate::catalog::cycle_matroid(&crate::catalog::Multigraph::complete(4));
        assert_eq!(coextensions(&k4, 0, false).unwrap(), vec![k4.clone()]);
        let all = coextensions(&k4, 1, false).unwrap();
        assert_eq!(all.len(), (1 << k4.corank()) + 1);
        for p in &all {
            let z = p.subset(&["z1"]).unwrap();
            assert!(same_ranks(&p.contract(z), &k4));
        }
        // Classes of coextensions are duals of classes of extensions of the dual.
        let co = coextensions(&k4, 1, true).unwrap();
        let ext = extensions(&k4.dual(), 1, true).unwrap();
        assert_eq!(co.len(), ext.len());
        for p in &co {
            assert!(ext
                .iter()
                .any(|e| e.is_isomorphic(&p.dual()).unwrap().is_some()));
        }
    }

    #[test]
    fn coextension_size_bound() {
        let k5 = named("M(K5)").unwrap();
        assert!(coextensions(&k5, 11, false).is_err());
    }

    #[test]
    fn lift_quotient_adjunction() {
        let m = named("M(Q3)").unwrap();
        let mp = Profile::build(&m);
        for (s, n) in elementary_lifts(&m) {
            let nontrivial = n.rank() == m.rank() + 1;
            let found = elementary_quotients(&n)
                .filter(|q| !q.extension_column.is_loop_or_coloop())
                .any(|q| find_isomorphism(&mp, &Profile::light(&q.quotient)).is_some());
            // When the split is trivial, M is still a (loop/coloop) quotient of itself only.
            if nontrivial {
                assert!(found, "{s:?}");
            }
        }
    }
}
