//! From point sets to cover-free families.
//!
//! Boxes with `k` sides `(0,u)`, `l` sides `(u,1)` and the rest `(0,1)` all
//! have volume `u^k (1-u)^l`. If `X` meets every one of them, then the sets
//! `F_j = { x ∈ X : x_j < u }` form a `(k, l)`-cover-free family: a point in
//! the box for `(K, L)` lies in every `F_i`, `i ∈ K`, and in no `F_j`,
//! `j ∈ L`. Choosing `u = (4 eps)^{1/k}` and `l = floor(1/u)` makes every such
//! box larger than `eps`, so any set of dispersion at most `eps` needs at
//! least `C(k, l, d)` points.
//!
//! The second half of the module holds the slab maps used by the rescaling
//! inequality `N(eps, d) >= b N(b eps, d)`.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cff::{verify_cover_free, CoverFreeVerdict, CoverWitness, SetFamily};
use crate::geometry::{AxisBox, PointSet};
use crate::{Error, Result};

/// Parameters `(d, k, l, u)` of the box family `B(d, k, l, u)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxFamilyParams {
    pub d: usize,
    pub k: usize,
    pub l: usize,
    pub u: f64,
    /// The `eps` the parameters were derived from, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
}

impl BoxFamilyParams {
    /// Directly supplied `(d, k, l, u)`; needs `k, l >= 1`, `k + l <= d` and
    /// `0 < u < 1`.
    pub fn new(d: usize, k: usize, l: usize, u: f64) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::Parameter(format!("need k, l >= 1, got k={k}, l={l}")));
        }
        if k + l > d {
            return Err(Error::Validity(format!("k + l <= d fails: {} > {d}", k + l)));
        }
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Validity(format!("0 < u < 1 fails: u = {u}")));
        }
        Ok(Self { d, k, l, u, eps: None })
    }

    /// Volume shared by every box of the family.
    pub fn box_volume(&self) -> f64 {
        self.u.powi(self.k as i32) * (1.0 - self.u).powi(self.l as i32)
    }

    /// `C(d, k) * C(d - k, l)`.
    pub fn family_size(&self) -> u128 {
        binomial(self.d, self.k) * binomial(self.d - self.k, self.l)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `u = (4 eps)^{1/k}`, `l = floor(1/u)`, valid for
/// `0 < eps < 2^{-k-2}` and `d >= k + l`.
pub fn reduction_params(eps: f64, k: usize, d: usize) -> Result<BoxFamilyParams> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let eps_max = 2f64.powi(-(k as i32) - 2);
    if !(eps > 0.0 && eps < eps_max) {
        return Err(Error::Validity(format!(
            "eps in (0, 2^(-k-2)) fails: eps = {eps}, 2^(-{}) = {eps_max}",
            k + 2
        )));
    }
    let u = (4.0 * eps).powf(1.0 / k as f64);
    let l = (1.0 / u).floor() as usize;
    if d < k + l {
        return Err(Error::Validity(format!(
            "d >= k + floor((4 eps)^(-1/k)) fails: {d} < {k} + {l}"
        )));
    }
    Ok(BoxFamilyParams {
        d,
        k,
        l,
        u,
        eps: Some(eps),
    })
}

/// Index sets `K` (sides `(0,u)`) and `L` (sides `(u,1)`), 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxSpec {
    #[serde(rename = "K")]
    pub low: Vec<usize>,
    #[serde(rename = "L")]
    pub high: Vec<usize>,
}

impl BoxSpec {
    pub fn as_cover_witness(&self) -> CoverWitness {
        CoverWitness {
            intersected: self.low.clone(),
            covering: self.high.clone(),
        }
    }
}

pub fn to_box(spec: &BoxSpec, params: &BoxFamilyParams) -> Result<AxisBox> {
    if spec.low.len() != params.k || spec.high.len() != params.l {
        return Err(Error::Parameter(format!(
            "box spec has |K|={}, |L|={}; expected {} and {}",
            spec.low.len(),
            spec.high.len(),
            params.k,
            params.l
        )));
    }
    let mut lower = vec![0.0; params.d];
    let mut upper = vec![1.0; params.d];
    let mut used = vec![false; params.d];
    for (&i, is_low) in spec
        .low
        .iter()
        .map(|i| (i, true))
        .chain(spec.high.iter().map(|j| (j, false)))
    {
        if i == 0 || i > params.d || used[i - 1] {
            return Err(Error::Parameter(format!(
                "box spec index {i} is out of range or repeated"
            )));
        }
        used[i - 1] = true;
        if is_low {
            upper[i - 1] = params.u;
        } else {
            lower[i - 1] = params.u;
        }
    }
    AxisBox::new(lower, upper)
}

/// Every `(K, L)` once, `K` lexicographic over `[d]`, then `L`
/// lexicographic over `[d] \ K`. Lazy: the family is usually huge.
pub fn enumerate_box_family(params: &BoxFamilyParams) -> impl Iterator<Item = BoxSpec> + '_ {
    (1..=params.d).combinations(params.k).flat_map(move |low| {
        let rest: Vec<usize> = (1..=params.d).filter(|i| !low.contains(i)).collect();
        rest.into_iter()
            .combinations(params.l)
            .map(move |high| BoxSpec { low: low.clone(), high })
    })
}

/// `F_j = { m : x_m has j-th coordinate < u }` for `j = 1..d`, over the
/// ground set of point positions `1..|X|` (duplicates stay distinct).
pub fn extract_family(points: &PointSet, u: f64) -> SetFamily {
    let n = points.len();
    let sets = (0..points.dim())
        .map(|j| {
            let mut set = FixedBitSet::with_capacity(n);
            for (m, p) in points.iter().enumerate() {
                if p[j] < u {
                    set.insert(m);
                }
            }
            set
        })
        .collect();
    SetFamily::from_bitsets(n, sets)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum HitVerdict {
    AllHit,
    Unhit { spec: BoxSpec },
}

/// Checks that every box of `B(d, k, l, u)` contains a point of `X`;
/// otherwise returns the lexicographically first empty one.
pub fn hits_all_boxes(points: &PointSet, params: &BoxFamilyParams) -> Result<HitVerdict> {
    if points.dim() != params.d {
        return Err(Error::DimensionMismatch {
            expected: params.d,
            actual: points.dim(),
        });
    }
    let u = params.u;
    // Only points in the open cube can be inside any box of the family.
    let interior: Vec<&[f64]> = points
        .iter()
        .filter(|p| p.iter().all(|&c| 0.0 < c && c < 1.0))
        .collect();
    for spec in enumerate_box_family(params) {
        let hit = interior
            .iter()
            .any(|p| spec.low.iter().all(|&i| p[i - 1] < u) && spec.high.iter().all(|&j| p[j - 1] > u));
        if !hit {
            return Ok(HitVerdict::Unhit { spec });
        }
    }
    Ok(HitVerdict::AllHit)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaDirection {
    /// Every box was hit, so the extracted family must be cover-free.
    Forward,
    /// Some box was missed; the family is not forced to be cover-free.
    Contrapositive,
    /// Empty point set: nothing to check.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReductionWitness {
    Box(BoxSpec),
    Cover(CoverWitness),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub params: BoxFamilyParams,
    /// `cover-free`, `violation` (forward direction), `unhit` or `vacuous`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ReductionWitness>,
    pub lemma_direction: LemmaDirection,
    /// Contrapositive only: whether the unhit `(K, L)` is itself a cover
    /// violation of the extracted family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unhit_is_violation: Option<bool>,
    /// False only if the forward implication failed.
    pub consistent: bool,
}

/// Derives the parameters from `eps` and runs [`reduction_consistency_with_params`].
pub fn reduction_consistency(points: &PointSet, eps: f64, k: usize) -> Result<ReductionReport> {
    let params = reduction_params(eps, k, points.dim())?;
    reduction_consistency_with_params(points, &params)
}

/// Exercises the hitting lemma on `X` for the given box family.
pub fn reduction_consistency_with_params(points: &PointSet, params: &BoxFamilyParams) -> Result<ReductionReport> {
    let hit = hits_all_boxes(points, params)?;
    let family = extract_family(points, params.u);
    let report = |verdict: &str, witness, lemma_direction, unhit_is_violation, consistent| ReductionReport {
        params: params.clone(),
        verdict: verdict.to_string(),
        witness,
        lemma_direction,
        unhit_is_violation,
        consistent,
    };
    Ok(match hit {
        HitVerdict::Unhit { spec } if points.is_empty() => report(
            "vacuous",
            Some(ReductionWitness::Box(spec)),
            LemmaDirection::Vacuous,
            None,
            true,
        ),
        HitVerdict::Unhit { spec } => {
            let is_violation = spec.as_cover_witness().certifies(&family);
            report(
                "unhit",
                Some(ReductionWitness::Box(spec)),
                LemmaDirection::Contrapositive,
                Some(is_violation),
                true,
            )
        }
        HitVerdict::AllHit => match verify_cover_free(&family, params.k, params.l)? {
            CoverFreeVerdict::CoverFree => report("cover-free", None, LemmaDirection::Forward, None, true),
            CoverFreeVerdict::Violation { witness } => report(
                "violation",
                Some(ReductionWitness::Cover(witness)),
                LemmaDirection::Forward,
                None,
                false,
            ),
        },
    })
}

/// `(x_1, ..., x_d) -> (b x_1, x_2, ..., x_d)` on
/// `(0, 1/b) x (0,1)^{d-1}`.
pub fn stretch_map(x: &[f64], b: usize) -> Result<Vec<f64>> {
    let bf = b as f64;
    let in_domain =
        b >= 1 && !x.is_empty() && x[0] > 0.0 && bf * x[0] < 1.0 && x[1..].iter().all(|&c| 0.0 < c && c < 1.0);
    if !in_domain {
        return Err(Error::Domain(x.to_vec()));
    }
    let mut out = x.to_vec();
    out[0] *= bf;
    Ok(out)
}

/// Image of a box lying in the closure of the first slab.
pub fn stretch_box(bx: &AxisBox, b: usize) -> Result<AxisBox> {
    let bf = b as f64;
    if b == 0 || bf * bx.upper()[0] > 1.0 {
        return Err(Error::Domain(bx.upper().to_vec()));
    }
    let mut lower = bx.lower().to_vec();
    let mut upper = bx.upper().to_vec();
    lower[0] *= bf;
    upper[0] *= bf;
    AxisBox::new(lower, upper)
}

/// Slab `i ∈ 1..=b` with `(i-1)/b < x_1 < i/b`. A point on a slab boundary
/// goes to `floor(b x_1) + 1`, capped at `b`.
pub fn partition_index(x: &[f64], b: usize) -> usize {
    assert!(b >= 1);
    let i = (b as f64 * x[0]).floor() as usize + 1;
    i.min(b)
}
