//! Minor containment with witnesses, graphicness and cographicness by
//! excluded minors, and `C_k` membership by exhaustive splitting.

use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use rayon::prelude::*;

use crate::catalog;
use crate::construct::split;
use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, Profile};
use crate::matroid::{check_bound, BinaryMatroid, GroundSubset};

/// Certificate that `host \ deleted / contracted` is isomorphic to a target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorWitness {
    pub deleted: Vec<String>,
    pub contracted: Vec<String>,
}

impl MinorWitness {
    pub fn empty() -> Self {
        MinorWitness {
            deleted: Vec::new(),
            contracted: Vec::new(),
        }
    }

    /// Replays the witness on `host`.
    pub fn apply(&self, host: &BinaryMatroid) -> Result<BinaryMatroid> {
        let d = host.subset(&self.deleted)?;
        let c = host.subset(&self.contracted)?;
        if !d.intersection(c).is_empty() {
            return Err(Error::Invalid("deleted and contracted sets overlap".into()));
        }
        Ok(host.minor(d, c))
    }

    /// Replays the witness and checks the result against `target`.
    pub fn certifies(&self, host: &BinaryMatroid, target: &BinaryMatroid) -> Result<bool> {
        let minor = self.apply(host)?;
        Ok(minor.is_isomorphic(target)?.is_some())
    }
}

impl fmt::Display for MinorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "\\{{{}}} /{{{}}}",
            self.deleted.join(","),
            self.contracted.join(",")
        )
    }
}

/// A fixed minor to search for, with its circuit profile computed once.
pub struct MinorTarget {
    matroid: BinaryMatroid,
    profile: Profile,
}

impl MinorTarget {
    pub fn new(target: &BinaryMatroid) -> Result<MinorTarget> {
        Ok(MinorTarget {
            profile: Profile::new(target)?,
            matroid: target.clone(),
        })
    }

    pub fn matroid(&self) -> &BinaryMatroid {
        &self.matroid
    }

    /// First witness in the normal form: the contracted set is independent of
    /// size `r(M) - r(T)`, the deleted set is coindependent in the contraction
    /// and has size `r*(M) - r*(T)`. Contracted sets are tried in
    /// lexicographic order, then deleted sets likewise.
    pub fn find_in(&self, host: &BinaryMatroid) -> Result<Option<MinorWitness>> {
        check_bound(host.len())?;
        let t = &self.matroid;
        if t.len() > host.len() || t.rank() > host.rank() || t.corank() > host.corank() {
            return Ok(None);
        }
        let n_contract = host.rank() - t.rank();
        let n_delete = host.corank() - t.corank();
        for contract in (0..host.len()).combinations(n_contract) {
            let c = GroundSubset::from_indices(contract.iter().copied());
            if !host.is_independent(c) {
                continue;
            }
            let reduced = host.contract(c);
            let remaining: Vec<usize> = host.ground().difference(c).iter().collect();
            for delete in (0..reduced.len()).combinations(n_delete) {
                let d = GroundSubset::from_indices(delete.iter().copied());
                if !reduced.is_coindependent(d) {
                    continue;
                }
                let minor = reduced.delete(d);
                if find_isomorphism(&self.profile, &Profile::light(&minor)).is_some() {
                    return Ok(Some(MinorWitness {
                        deleted: delete
                            .iter()
                            .map(|&i| host.label(remaining[i]).to_string())
                            .collect(),
                        contracted: contract
                            .iter()
                            .map(|&i| host.label(i).to_string())
                            .collect(),
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// A minor of `m` isomorphic to `target`, with the witness that produces it.
pub fn has_minor(m: &BinaryMatroid, target: &BinaryMatroid) -> Result<Option<MinorWitness>> {
    MinorTarget::new(target)?.find_in(m)
}

/// Outcome of an excluded-minor test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// When the property fails: the excluded minor found and its witness.
    pub obstruction: Option<Obstruction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub minor: String,
    pub witness: MinorWitness,
}

fn graphic_targets() -> &'static [MinorTarget] {
    static TARGETS: OnceLock<Vec<MinorTarget>> = OnceLock::new();
    TARGETS.get_or_init(|| {
        catalog::graphic_excluded()
            .iter()
            .map(|m| MinorTarget::new(m).expect("excluded minors are small"))
            .collect()
    })
}

fn cographic_targets() -> &'static [MinorTarget] {
    static TARGETS: OnceLock<Vec<MinorTarget>> = OnceLock::new();
    TARGETS.get_or_init(|| {
        catalog::cographic_excluded()
            .iter()
            .map(|m| MinorTarget::new(m).expect("excluded minors are small"))
            .collect()
    })
}

fn excluded_minor_test(m: &BinaryMatroid, targets: &[MinorTarget]) -> Result<Verdict> {
    check_bound(m.len())?;
    for t in targets {
        if let Some(witness) = t.find_in(m)? {
            return Ok(Verdict {
                holds: false,
                obstruction: Some(Obstruction {
                    minor: t.matroid().name().to_string(),
                    witness,
                }),
            });
        }
    }
    Ok(Verdict {
        holds: true,
        obstruction: None,
    })
}

/// Graphic iff there is no F7*, M*(K33), F7, or M*(K5) minor.
pub fn is_graphic(m: &BinaryMatroid) -> Result<Verdict> {
    excluded_minor_test(m, graphic_targets())
}

/// Cographic iff there is no F7, M(K5), F7*, or M(K33) minor.
pub fn is_cographic(m: &BinaryMatroid) -> Result<Verdict> {
    excluded_minor_test(m, cographic_targets())
}

/// Result of checking every `k`-element splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    /// The lexicographically first `S` whose splitting is not graphic.
    Witness {
        set: Vec<String>,
        obstruction: Obstruction,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// First `k`-subset (lexicographic) whose splitting is non-graphic, without
/// the cographic precondition of [`class_ck`].
pub fn first_nongraphic_split(m: &BinaryMatroid, k: usize) -> Result<Membership> {
    if k > m.len() {
        return Err(Error::SubsetTooLarge { k, size: m.len() });
    }
    check_bound(m.len())?;
    let subsets: Vec<Vec<usize>> = (0..m.len()).combinations(k).collect();
    let found = subsets
        .par_iter()
        .map(|s| {
            let s = GroundSubset::from_indices(s.iter().copied());
            is_graphic(&split(m, s)).map(|v| (s, v))
        })
        .find_first(|r| matches!(r, Ok((_, v)) if !v.holds) || r.is_err());
    match found {
        None => Ok(Membership::Member),
        Some(Err(e)) => Err(e),
        Some(Ok((s, v))) => Ok(Membership::Witness {
            set: m.subset_labels(s).into_iter().map(String::from).collect(),
            obstruction: v
                .obstruction
                .expect("non-graphic verdicts carry an obstruction"),
        }),
    }
}

/// Membership of a cographic matroid in `C_k`: every `k`-element splitting is graphic.
pub fn class_ck(m: &BinaryMatroid, k: usize) -> Result<Membership> {
    if k > m.len() {
        return Err(Error::SubsetTooLarge { k, size: m.len() });
    }
    if !is_cographic(m)?.holds {
        return Err(Error::NotCographic(m.name().to_string()));
    }
    first_nongraphic_split(m, k)
}

/// Whether `m` is outside `C_k` while each single-element deletion and
/// contraction that is cographic lies inside it.
pub fn is_minimal_excluded(m: &BinaryMatroid, k: usize) -> Result<bool> {
    if class_ck(m, k)?.is_member() {
        return Ok(false);
    }
    for minor in single_element_minors(m) {
        if minor.len() < k || !is_cographic(&minor)?.holds {
            continue;
        }
        if !first_nongraphic_split(&minor, k)?.is_member() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `M \ e` and `M / e` for every element, deletions first.
pub fn single_element_minors(m: &BinaryMatroid) -> Vec<BinaryMatroid> {
    let singles = || (0..m.len()).map(|i| GroundSubset::from_indices([i]));
    singles()
        .map(|e| m.delete(e))
        .chain(singles().map(|e| m.contract(e)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;
    use crate::matroid::BinaryMatroid;

    /// Tries every pair of disjoint deletion/contraction sets.
    fn brute_has_minor(m: &BinaryMatroid, t: &BinaryMatroid) -> bool {
        let n = m.len();
        let k = n - t.len().min(n);
        if t.len() > n {
            return false;
        }
        for removed in (0..n).combinations(k) {
            for split_mask in 0u64..(1 << k) {
                let c = GroundSubset::from_indices(
                    removed
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| split_mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                );
                let d = GroundSubset::from_indices(removed.iter().copied()).difference(c);
                if m.minor(d, c).is_isomorphic(t).unwrap().is_some() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn minor_examples() {
        let f7 = named("F7").unwrap();
        assert_eq!(has_minor(&f7, &f7).unwrap(), Some(MinorWitness::empty()));
        assert_eq!(has_minor(&f7, &named("F7*").unwrap()).unwrap(), None);
        let host = named("M*(K5)").unwrap();
        let q1 = named("M(Q1)").unwrap();
        let w = has_minor(&host, &q1)
            .unwrap()
            .expect("M(Q1) is a minor of M*(K5)");
        assert!(w.certifies(&host, &q1).unwrap());
    }

    #[test]
    fn recognition_examples() {
        let f7 = named("F7").unwrap();
        let v = is_graphic(&f7).unwrap();
        assert!(!v.holds);
        assert!(is_graphic(&named("M(K5)").unwrap()).unwrap().holds);
        assert!(!is_graphic(&named("M*(K5)").unwrap()).unwrap().holds);
        assert!(is_cographic(&named("M*(K5)").unwrap()).unwrap().holds);
        assert!(!is_cographic(&named("M(K5)").unwrap()).unwrap().holds);
        assert!(!is_cographic(&f7).unwrap().holds);
        let o = v.obstruction.unwrap();
        assert!(o.witness.certifies(&f7, &named(&o.minor).unwrap()).unwrap());
    }

    #[test]
    fn class_ck_preconditions() {
        let k5 = named("M(K5)").unwrap();
        assert!(matches!(class_ck(&k5, 1), Err(Error::NotCographic(_))));
        let q3 = named("M(Q3)").unwrap();
        assert!(matches!(
            class_ck(&q3, 8),
            Err(Error::SubsetTooLarge { .. })
        ));
    }

    #[test]
    fn m_star_k5_is_in_c1() {
        assert!(class_ck(&named("M*(K5)").unwrap(), 1).unwrap().is_member());
    }

    #[test]
    fn g1_is_outside_c2() {
        let g1 = named("M(G1)").unwrap();
        let res = class_ck(&g1, 2).unwrap();
        match res {
            Membership::Witness { set, obstruction } => {
                assert_eq!(set.len(), 2);
                let s = split(&g1, g1.subset(&set).unwrap());
                assert!(obstruction
                    .witness
                    .certifies(&s, &named(&obstruction.minor).unwrap())
                    .unwrap());
            }
            Membership::Member => panic!("M(G1) should have a non-graphic 2-splitting"),
        }
        assert!(is_minimal_excluded(&g1, 2).unwrap());
    }

    #[test]
    fn members_are_not_minimal_excluded() {
        let m = named("M*(K5)").unwrap();
        assert!(!is_minimal_excluded(&m, 1).unwrap());
    }

    #[test]
    fn witness_replay_detects_tampering() {
        let host = named("M*(K33)").unwrap();
        let t = crate::catalog::cycle_matroid(&crate::catalog::Multigraph::complete(4));
        let mut w = has_minor(&host, &t).unwrap().unwrap();
        assert!(w.certifies(&host, &t).unwrap());
        if let Some(x) = w.contracted.pop() {
            w.deleted.push(x);
            assert!(!w.certifies(&host, &t).unwrap());
        }
    }

    mod props {
        use super::*;
        use crate::gf2::Gf2Matrix;
        use proptest::prelude::*;

        fn small(max_n: usize, max_r: usize) -> impl Strategy<Value = BinaryMatroid> {
            (0usize..=max_n, 0usize..=max_r).prop_flat_map(|(n, r)| {
                proptest::collection::vec(any::<u64>(), r).prop_map(move |rows| {
                    let mask = if n == 0 { 0 } else { (1u64 << n) - 1 };
                    let m =
                        Gf2Matrix::new(n, rows.into_iter().map(|x| x & mask).collect()).unwrap();
                    BinaryMatroid::from_matrix((0..n).map(|i| format!("e{i}")).collect(), &m)
                        .unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn normal_form_search_matches_brute_force(m in small(8, 5), t in small(5, 3)) {
                let fast = has_minor(&m, &t).unwrap();
                prop_assert_eq!(fast.is_some(), brute_has_minor(&m, &t));
                if let Some(w) = fast {
                    prop_assert!(w.certifies(&m, &t).unwrap());
                }
            }

            #[test]
            fn graphic_iff_dual_cographic(m in small(8, 5)) {
                prop_assert_eq!(is_graphic(&m).unwrap().holds, is_cographic(&m.dual()).unwrap().holds);
            }
        }
    }
}
