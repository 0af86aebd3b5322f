//! `(k, r)`-cover-free families.
//!
//! A family `F_1, ..., F_d` of subsets of `{1, ..., n}` is `(k, r)`-cover-free
//! when no intersection of `k` members is contained in the union of `r` other
//! members. Member indices (`K`, `L`) and ground elements are 1-based
//! throughout the public API and the text format.

mod familyfile;
mod search;

pub use familyfile::{parse_family, write_family};
pub use search::{min_ground_size, GroundSize};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An ordered family of subsets of `{1, ..., ground_size}`. Members may
/// repeat or be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground_size: usize,
    sets: Vec<FixedBitSet>,
}

impl SetFamily {
    /// Builds a family from 1-based element lists.
    pub fn new<S: AsRef<[usize]>>(ground_size: usize, sets: &[S]) -> Result<Self> {
        let mut family = Self {
            ground_size,
            sets: Vec::with_capacity(sets.len()),
        };
        for (idx, set) in sets.iter().enumerate() {
            let mut bits = FixedBitSet::with_capacity(ground_size);
            for &e in set.as_ref() {
                if e == 0 || e > ground_size {
                    return Err(Error::Parameter(format!(
                        "set {} has element {e} outside 1..={ground_size}",
                        idx + 1
                    )));
                }
                bits.insert(e - 1);
            }
            family.sets.push(bits);
        }
        Ok(family)
    }

    pub(crate) fn from_bitsets(ground_size: usize, sets: Vec<FixedBitSet>) -> Self {
        debug_assert!(sets.iter().all(|s| s.len() == ground_size));
        Self { ground_size, sets }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Number of members `d`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Sorted 1-based elements of member `index` (0-based position).
    pub fn elements(&self, index: usize) -> Vec<usize> {
        self.sets[index].ones().map(|e| e + 1).collect()
    }

    pub fn member(&self, index: usize) -> &FixedBitSet {
        &self.sets[index]
    }

    /// `∩_{i∈K} F_i`, with `K` 1-based.
    pub fn intersection_of(&self, members: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.ground_size);
        acc.insert_range(..);
        for &i in members {
            acc.intersect_with(&self.sets[i - 1]);
        }
        acc
    }

    /// `∪_{j∈L} F_j`, with `L` 1-based.
    pub fn union_of(&self, members: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.ground_size);
        for &j in members {
            acc.union_with(&self.sets[j - 1]);
        }
        acc
    }
}

/// A pair `(K, L)` of disjoint member index sets with
/// `∩_{i∈K} F_i ⊆ ∪_{j∈L} F_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    #[serde(rename = "K")]
    pub intersected: Vec<usize>,
    #[serde(rename = "L")]
    pub covering: Vec<usize>,
}

impl CoverWitness {
    /// Re-checks the containment directly on the family.
    pub fn certifies(&self, family: &SetFamily) -> bool {
        let in_range = |v: &[usize]| v.iter().all(|&i| i >= 1 && i <= family.len());
        if !in_range(&self.intersected) || !in_range(&self.covering) {
            return false;
        }
        if self.intersected.iter().any(|i| self.covering.contains(i)) {
            return false;
        }
        family
            .intersection_of(&self.intersected)
            .is_subset(&family.union_of(&self.covering))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CoverFreeVerdict {
    CoverFree,
    Violation { witness: CoverWitness },
}

impl CoverFreeVerdict {
    pub fn is_cover_free(&self) -> bool {
        matches!(self, CoverFreeVerdict::CoverFree)
    }

    pub fn witness(&self) -> Option<&CoverWitness> {
        match self {
            CoverFreeVerdict::CoverFree => None,
            CoverFreeVerdict::Violation { witness } => Some(witness),
        }
    }
}

fn check_kr(k: usize, r: usize, d: usize) -> Result<()> {
    if k == 0 || r == 0 {
        return Err(Error::Parameter(format!("need k >= 1 and r >= 1, got k={k}, r={r}")));
    }
    if k + r > d {
        return Err(Error::Parameter(format!(
            "k + r = {} exceeds the family size {d}",
            k + r
        )));
    }
    Ok(())
}

/// Decides whether `family` is `(k, r)`-cover-free.
///
/// `K` runs over the `k`-subsets in lexicographic order. For each, the
/// intersection is covered by a depth-limited branching on its smallest
/// uncovered element; a cover with fewer than `r` sets is padded with the
/// smallest unused indices, since enlarging `L` keeps the containment.
pub fn verify_cover_free(family: &SetFamily, k: usize, r: usize) -> Result<CoverFreeVerdict> {
    let d = family.len();
    check_kr(k, r, d)?;
    for k_set in (0..d).combinations(k) {
        let mut core = family.sets[k_set[0]].clone();
        for &i in &k_set[1..] {
            core.intersect_with(&family.sets[i]);
        }
        let mut excluded = vec![false; d];
        for &i in &k_set {
            excluded[i] = true;
        }
        let mut chosen = Vec::with_capacity(r);
        if cover(family, &core, &mut excluded, &mut chosen, r) {
            let mut covering = chosen;
            for (j, ex) in excluded.iter_mut().enumerate() {
                if covering.len() == r {
                    break;
                }
                if !*ex {
                    *ex = true;
                    covering.push(j);
                }
            }
            covering.sort_unstable();
            return Ok(CoverFreeVerdict::Violation {
                witness: CoverWitness {
                    intersected: k_set.iter().map(|i| i + 1).collect(),
                    covering: covering.iter().map(|j| j + 1).collect(),
                },
            });
        }
    }
    Ok(CoverFreeVerdict::CoverFree)
}

/// Tries to cover `target` with at most `left` sets not marked `excluded`;
/// on success `chosen` holds them (and they are marked).
fn cover(
    family: &SetFamily,
    target: &FixedBitSet,
    excluded: &mut [bool],
    chosen: &mut Vec<usize>,
    left: usize,
) -> bool {
    let Some(e) = target.minimum() else {
        return true;
    };
    if left == 0 {
        return false;
    }
    for j in 0..family.len() {
        if excluded[j] || !family.sets[j].contains(e) {
            continue;
        }
        excluded[j] = true;
        chosen.push(j);
        let mut rest = target.clone();
        rest.difference_with(&family.sets[j]);
        if cover(family, &rest, excluded, chosen, left - 1) {
            return true;
        }
        chosen.pop();
        excluded[j] = false;
    }
    false
}

/// Michel–Scott: `C(k, s+t, d) >= min{d^k, s (k+t)^k} / (2 k^k)` for
/// positive integers with `d >= k + t`.
pub fn michel_scott_bound(k: usize, s: usize, t: usize, d: usize) -> Result<f64> {
    if k == 0 || s == 0 || t == 0 || d == 0 {
        return Err(Error::Parameter("k, s, t, d must be positive".into()));
    }
    if d < k + t {
        return Err(Error::Validity(format!("d >= k + t fails: {d} < {}", k + t)));
    }
    let k_i = k as i32;
    let kk = (k as f64).powi(k_i);
    let first = (d as f64).powi(k_i);
    let second = s as f64 * ((k + t) as f64).powi(k_i);
    Ok(first.min(second) / (2.0 * kk))
}

/// Splits `l` into `s = ceil((l+1)/(k+1))` and `t = floor((k l - 1)/(k+1))`,
/// which always sum to `l`. Fails when `t < 1`.
pub fn split_st(l: usize, k: usize) -> Result<(usize, usize)> {
    if l == 0 || k == 0 {
        return Err(Error::Parameter("l and k must be positive".into()));
    }
    let s = (l + 1).div_ceil(k + 1);
    let t = (k * l - 1) / (k + 1);
    if t < 1 {
        return Err(Error::Validity(format!(
            "t = floor((k*l - 1)/(k + 1)) = 0 for l={l}, k={k}; need k*l >= k + 2"
        )));
    }
    Ok((s, t))
}
