//! Matroid isomorphism by invariant-guided backtracking.
//!
//! Each element gets an invariant (loop, coloop, histogram of the sizes of
//! circuits through it). A bijection is grown element by element, only
//! between elements with equal invariants, and every circuit whose elements
//! are all mapped must land on a circuit of the other matroid. A complete
//! bijection mapping circuits onto circuits is an isomorphism.

use std::collections::HashSet;

use crate::error::Result;
use crate::matroid::{check_bound, BinaryMatroid};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementInvariant {
    pub is_loop: bool,
    pub is_coloop: bool,
    /// `sizes[k]` counts the circuits of size `k` containing the element.
    pub sizes: Vec<u32>,
}

/// Isomorphism-invariant summary, usable as a hash key when bucketing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub n: usize,
    pub rank: usize,
    pub histogram: Vec<u32>,
    pub elements: Vec<ElementInvariant>,
}

/// Precomputed circuit data for one matroid.
#[derive(Clone, Debug)]
pub struct Profile {
    circuits: Vec<u64>,
    circuit_set: HashSet<u64>,
    invariants: Vec<ElementInvariant>,
    signature: Signature,
    /// Search order and per-step circuit checks; only needed on the source side.
    plan: Option<SearchPlan>,
}

#[derive(Clone, Debug)]
struct SearchPlan {
    order: Vec<usize>,
    closing: Vec<Vec<u64>>,
}

impl Profile {
    pub fn new(m: &BinaryMatroid) -> Result<Profile> {
        check_bound(m.len())?;
        Ok(Self::build(m))
    }

    /// Profile with a search plan, for use as the source of a search.
    pub(crate) fn build(m: &BinaryMatroid) -> Profile {
        let mut p = Self::light(m);
        p.plan = Some(p.plan());
        p
    }

    /// Profile without a search plan; enough for signatures and as a search target.
    pub(crate) fn light(m: &BinaryMatroid) -> Profile {
        let n = m.len();
        let circuits = m.circuit_masks();
        let mut histogram = vec![0u32; n + 1];
        let mut sizes = vec![vec![0u32; n + 1]; n];
        for &c in &circuits {
            let k = c.count_ones() as usize;
            histogram[k] += 1;
            let mut rest = c;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                sizes[i][k] += 1;
            }
        }
        let invariants: Vec<ElementInvariant> = sizes
            .into_iter()
            .map(|s| ElementInvariant {
                is_loop: s.get(1).copied().unwrap_or(0) > 0,
                is_coloop: s.iter().all(|&x| x == 0),
                sizes: s,
            })
            .collect();
        let mut elements = invariants.clone();
        elements.sort();
        Profile {
            circuit_set: circuits.iter().copied().collect(),
            circuits,
            plan: None,
            invariants,
            signature: Signature {
                n,
                rank: m.rank(),
                histogram,
                elements,
            },
        }
    }

    fn plan(&self) -> SearchPlan {
        let n = self.invariants.len();
        let class_size: Vec<u32> = self
            .invariants
            .iter()
            .map(|inv| self.invariants.iter().filter(|o| *o == inv).count() as u32)
            .collect();
        let order = search_order(&self.circuits, &class_size);
        let mut position = vec![0usize; n];
        for (k, &e) in order.iter().enumerate() {
            position[e] = k;
        }
        // Circuits are checked when their last element (in search order) is placed.
        let mut closing: Vec<Vec<u64>> = vec![Vec::new(); n];
        for &c in &self.circuits {
            let last = bits(c)
                .map(|i| position[i])
                .max()
                .expect("circuits are nonempty");
            closing[last].push(c);
        }
        SearchPlan { order, closing }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn circuits(&self) -> &[u64] {
        &self.circuits
    }
}

/// A bijection between ground sets: element `i` maps to `map[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<usize>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Self {
        Isomorphism {
            map: (0..n).collect(),
        }
    }

    /// Label pairs `(a, b)` with `a` in the source and `b` in the target.
    pub fn label_pairs(&self, from: &BinaryMatroid, to: &BinaryMatroid) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(i, &j)| (from.label(i).to_string(), to.label(j).to_string()))
            .collect()
    }

    /// Checks the bijection directly: same sizes, and circuits map onto circuits.
    pub fn certifies(&self, from: &BinaryMatroid, to: &BinaryMatroid) -> bool {
        if from.len() != to.len() || self.map.len() != from.len() {
            return false;
        }
        let mut seen = vec![false; to.len()];
        for &j in &self.map {
            if j >= to.len() || std::mem::replace(&mut seen[j], true) {
                return false;
            }
        }
        let target: HashSet<u64> = to.circuit_masks().into_iter().collect();
        let source = from.circuit_masks();
        source.len() == target.len()
            && source
                .iter()
                .all(|&c| target.contains(&image(c, &self.map)))
    }
}

#[inline]
fn image(mask: u64, map: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1u64 << map[i];
    }
    out
}

/// Searches for an isomorphism from the matroid of `a` to the matroid of `b`.
pub fn find_isomorphism(a: &Profile, b: &Profile) -> Option<Isomorphism> {
    if a.signature != b.signature {
        return None;
    }
    let n = a.signature.n;
    if n == 0 {
        return Some(Isomorphism::identity(0));
    }
    let candidates: Vec<u64> = a
        .invariants
        .iter()
        .map(|inv| {
            b.invariants
                .iter()
                .enumerate()
                .filter(|(_, other)| *other == inv)
                .fold(0u64, |m, (j, _)| m | (1u64 << j))
        })
        .collect();

    let computed;
    let plan = match &a.plan {
        Some(p) => p,
        None => {
            computed = a.plan();
            &computed
        }
    };
    let mut map = vec![usize::MAX; n];
    if extend(
        0,
        &plan.order,
        &candidates,
        &plan.closing,
        &b.circuit_set,
        &mut map,
        0,
    ) {
        Some(Isomorphism { map })
    } else {
        None
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Rarest element first, then whichever closes the most circuits.
fn search_order(circuits: &[u64], class_size: &[u32]) -> Vec<usize> {
    let n = class_size.len();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&e| placed >> e & 1 == 0)
            .max_by_key(|&e| {
                let bit = 1u64 << e;
                let (mut closes, mut touches) = (0usize, 0usize);
                for &c in circuits {
                    if c & bit != 0 {
                        let others = c & !bit;
                        if others & !placed == 0 {
                            closes += 1;
                        }
                        if others & placed != 0 {
                            touches += 1;
                        }
                    }
                }
                (
                    closes,
                    touches,
                    std::cmp::Reverse(class_size[e]),
                    std::cmp::Reverse(e),
                )
            })
            .expect("an unplaced element remains");
        placed |= 1u64 << best;
        order.push(best);
    }
    order
}

fn extend(
    k: usize,
    order: &[usize],
    candidates: &[u64],
    closing: &[Vec<u64>],
    target: &HashSet<u64>,
    map: &mut [usize],
    used: u64,
) -> bool {
    if k == order.len() {
        return true;
    }
    let e = order[k];
    let mut options = candidates[e] & !used;
    while options != 0 {
        let f = options.trailing_zeros() as usize;
        options &= options - 1;
        map[e] = f;
        if closing[k].iter().all(|&c| target.contains(&image(c, map)))
            && extend(
                k + 1,
                order,
                candidates,
                closing,
                target,
                map,
                used | (1u64 << f),
            )
        {
            return true;
        }
    }
    map[e] = usize::MAX;
    false
}

impl BinaryMatroid {
    /// An isomorphism onto `other`, if one exists.
    pub fn is_isomorphic(&self, other: &BinaryMatroid) -> Result<Option<Isomorphism>> {
        if self.len() != other.len() || self.rank() != other.rank() {
            return Ok(None);
        }
        let a = Profile::new(self)?;
        check_bound(other.len())?;
        let b = Profile::light(other);
        Ok(find_isomorphism(&a, &b))
    }
}

/// Keeps the first item of every isomorphism class, preserving input order.
pub fn dedupe_isomorphic<T, F>(items: Vec<T>, matroid: F) -> Vec<T>
where
    F: Fn(&T) -> &BinaryMatroid,
{
    let mut kept: Vec<(T, Profile)> = Vec::new();
    for item in items {
        let p = Profile::build(matroid(&item));
        if !kept.iter().any(|(_, q)| find_isomorphism(&p, q).is_some()) {
            kept.push((item, p));
        }
    }
    kept.into_iter().map(|(t, _)| t).collect()
}
