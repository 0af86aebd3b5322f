//! Exact `C(k, r, d)` for tiny parameters.
//!
//! For `n = 1, 2, ...` a backtracking search looks for `d` subsets of `[n]`
//! forming a `(k, r)`-cover-free family. Families are searched in a canonical
//! form: write the family as a `d x n` incidence matrix with element 1 as the
//! leading column. Sorting the rows decreasingly and then the columns
//! decreasingly (both lexicographically) never decreases the row-major
//! reading of the matrix and strictly increases it whenever something moves,
//! so alternating the two sorts terminates in a matrix whose rows and columns
//! are both sorted. Neither permutation changes cover-freeness, so it is
//! enough to search matrices with strictly decreasing rows (repeated members
//! are never cover-free) and non-increasing columns.
//!
//! Partial families are pruned with conditions every sub-family of a
//! `(k, r)`-cover-free family must satisfy: no intersection of `k' <= k`
//! members lies in the union of `min(r, s - k')` other members.

use itertools::Itertools;

use super::SetFamily;
use crate::{Error, Result};

const MAX_MEMBERS: usize = 20;
const MAX_GROUND: usize = 63;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroundSize {
    /// `C(k, r, d)` together with a cover-free family attaining it.
    Exact { value: usize, family: SetFamily },
    /// The budget ran out: every ground size below `lo` was proven
    /// impossible and a family on `hi` elements is known.
    Bracket { lo: usize, hi: usize },
}

/// Smallest ground-set size admitting a `d`-member `(k, r)`-cover-free
/// family. Exhausting `node_budget` yields a bracket, never a guess.
pub fn min_ground_size(k: usize, r: usize, d: usize, node_budget: u64) -> Result<GroundSize> {
    super::check_kr(k, r, d)?;
    if d > MAX_MEMBERS {
        return Err(Error::Parameter(format!(
            "exact search supports at most {MAX_MEMBERS} members, got d={d}"
        )));
    }
    let known = k_subset_family(k, d);
    let hi = known.ground_size();
    let checks = PruneTable::new(k, r, d);
    let mut nodes = 0u64;
    for n in 1..hi {
        if n > MAX_GROUND {
            return Ok(GroundSize::Bracket { lo: n, hi });
        }
        let mut search = FixedGround {
            n,
            d,
            checks: &checks,
            rows: Vec::with_capacity(d),
            nodes: &mut nodes,
            budget: node_budget,
        };
        let tied = (1u64 << (n - 1)) - 1;
        match search.extend(tied, 1u64 << n) {
            Some(true) => {
                let sets: Vec<Vec<usize>> = search.rows.iter().map(|&m| row_elements(m, n)).collect();
                return Ok(GroundSize::Exact {
                    value: n,
                    family: SetFamily::new(n, &sets)?,
                });
            }
            Some(false) => {}
            None => return Ok(GroundSize::Bracket { lo: n, hi }),
        }
    }
    Ok(GroundSize::Exact {
        value: hi,
        family: known,
    })
}

/// `F_i = { S ∈ ([d] choose k) : i ∈ S }`: the intersection over `K` is
/// `{K}`, which no member indexed outside `K` contains. Ground size
/// `C(d, k)`.
pub(crate) fn k_subset_family(k: usize, d: usize) -> SetFamily {
    let subsets: Vec<Vec<usize>> = (0..d).combinations(k).collect();
    let sets: Vec<Vec<usize>> = (0..d)
        .map(|i| subsets.iter().positions(|s| s.contains(&i)).map(|p| p + 1).collect())
        .collect();
    SetFamily::new(subsets.len(), &sets).expect("elements in range")
}

/// Element 1 is the most significant of the `n` bits.
fn row_elements(mask: u64, n: usize) -> Vec<usize> {
    (1..=n).filter(|&e| mask >> (n - e) & 1 == 1).collect()
}

/// For each family size `s`, the `(K', L')` row-index masks that involve the
/// newest row `s - 1`.
struct PruneTable {
    by_size: Vec<Vec<(u32, u32)>>,
}

impl PruneTable {
    fn new(k: usize, r: usize, d: usize) -> Self {
        let mut by_size = vec![Vec::new(); d + 1];
        for (s, checks) in by_size.iter_mut().enumerate().skip(2) {
            let newest = s - 1;
            for kp in 1..=k.min(s - 1) {
                let lp = r.min(s - kp);
                for kset in (0..s).combinations(kp) {
                    let kmask = to_mask(&kset);
                    let rest: Vec<usize> = (0..s).filter(|i| !kset.contains(i)).collect();
                    for lset in rest.into_iter().combinations(lp) {
                        let lmask = to_mask(&lset);
                        if (kmask | lmask) >> newest & 1 == 1 {
                            checks.push((kmask, lmask));
                        }
                    }
                }
            }
        }
        Self { by_size }
    }
}

fn to_mask(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

struct FixedGround<'a> {
    n: usize,
    d: usize,
    checks: &'a PruneTable,
    rows: Vec<u64>,
    nodes: &'a mut u64,
    budget: u64,
}

impl FixedGround<'_> {
    /// `tied` marks adjacent column pairs equal on all rows so far (bit `q`
    /// for the columns at bits `q + 1` and `q`). `None` means the budget ran
    /// out.
    fn extend(&mut self, tied: u64, below: u64) -> Option<bool> {
        let s = self.rows.len();
        if s == self.d {
            return Some(true);
        }
        let still_needed = (self.d - s) as u64;
        let mut m = below - 1;
        while m >= still_needed {
            *self.nodes += 1;
            if *self.nodes > self.budget {
                return None;
            }
            // column q+1 must not be smaller than column q
            if tied & m & !(m >> 1) == 0 {
                self.rows.push(m);
                if self.consistent() {
                    let next_tied = tied & !((m >> 1) & !m);
                    match self.extend(next_tied, m) {
                        Some(true) => return Some(true),
                        None => return None,
                        Some(false) => {}
                    }
                }
                self.rows.pop();
            }
            m -= 1;
        }
        Some(false)
    }

    fn consistent(&self) -> bool {
        let full = (1u64 << self.n) - 1;
        self.checks.by_size[self.rows.len()].iter().all(|&(kmask, lmask)| {
            let mut inter = full;
            let mut union = 0u64;
            for (i, &row) in self.rows.iter().enumerate() {
                if kmask >> i & 1 == 1 {
                    inter &= row;
                } else if lmask >> i & 1 == 1 {
                    union |= row;
                }
            }
            inter & !union != 0
        })
    }
}
