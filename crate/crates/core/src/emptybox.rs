//! Largest empty open box, i.e. the dispersion of a point set.
//!
//! Every empty open box can be grown until each face either lies on the cube
//! boundary or touches a point that sits strictly inside the box's other
//! sides. A box of maximum volume cannot be grown at all, so its faces lie on
//! the candidate grid `{0, 1} ∪ {coordinates of X}`. The exact search walks
//! that grid one dimension at a time and only tries faces at coordinates of
//! points still inside the intervals chosen so far.

use std::cmp::Ordering;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::geometry::{generate_points, AxisBox, GeneratorKind, PointSet};
use crate::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// `disp(X)` together with a box attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionResult {
    #[serde(rename = "dispersion")]
    pub value: f64,
    #[serde(rename = "box")]
    pub witness: AxisBox,
    /// Search nodes visited. Diagnostic only, not part of any determinism
    /// guarantee.
    #[serde(rename = "nodes")]
    pub node_count: u64,
}

/// Per-dimension sorted, deduplicated `{0, 1} ∪ {x_i : x ∈ X}`.
pub fn candidate_grid(points: &PointSet) -> Vec<Vec<f64>> {
    (0..points.dim())
        .map(|i| {
            let mut axis: Vec<f64> = points.iter().map(|p| p[i]).collect();
            axis.push(0.0);
            axis.push(1.0);
            axis.sort_by(f64::total_cmp);
            axis.dedup();
            axis
        })
        .collect()
}

pub fn largest_empty_box(points: &PointSet) -> Result<DispersionResult> {
    largest_empty_box_with_budget(points, DEFAULT_NODE_BUDGET)
}

/// Exact dispersion. Among boxes of equal volume the one with the
/// lexicographically smallest `(lower, upper)` is returned.
pub fn largest_empty_box_with_budget(points: &PointSet, budget: u64) -> Result<DispersionResult> {
    let dim = points.dim();
    let mut search = Search {
        points,
        budget,
        nodes: 0,
        best_value: 0.0,
        best_lower: vec![0.0; dim],
        best_upper: vec![1.0; dim],
        lower: vec![0.0; dim],
        upper: vec![1.0; dim],
    };
    search.seed_with_last_axis_gap();
    let all: Vec<usize> = (0..points.len()).collect();
    search.descend(0, &all, 1.0)?;
    Ok(search.snapshot())
}

struct Search<'a> {
    points: &'a PointSet,
    budget: u64,
    nodes: u64,
    best_value: f64,
    best_lower: Vec<f64>,
    best_upper: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Search<'_> {
    fn snapshot(&self) -> DispersionResult {
        let witness = AxisBox::new(self.best_lower.clone(), self.best_upper.clone())
            .expect("search only records nonempty boxes inside the cube");
        debug_assert_eq!(witness.volume(), self.best_value);
        DispersionResult {
            value: self.best_value,
            witness,
            node_count: self.nodes,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted {
                budget: self.budget,
                best: Box::new(self.snapshot()),
            });
        }
        Ok(())
    }

    /// `(0,1)^{d-1}` times the widest gap of the last coordinate. Always
    /// empty, so it is a valid starting incumbent for pruning.
    fn seed_with_last_axis_gap(&mut self) {
        let last = self.points.dim() - 1;
        let coords: Vec<f64> = self.points.iter().map(|p| p[last]).collect();
        let (a, b) = widest_gap(coords);
        self.lower[last] = a;
        self.upper[last] = b;
        self.offer(b - a);
        self.lower[last] = 0.0;
        self.upper[last] = 1.0;
    }

    fn offer(&mut self, value: f64) {
        let better = match value.total_cmp(&self.best_value) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => lex_cmp(&self.lower, &self.best_lower)
                .then_with(|| lex_cmp(&self.upper, &self.best_upper))
                .is_lt(),
        };
        if better {
            self.best_value = value;
            self.best_lower.copy_from_slice(&self.lower);
            self.best_upper.copy_from_slice(&self.upper);
        }
    }

    /// `active` holds the points strictly inside the intervals fixed for
    /// dimensions `< axis`; `partial` is the product of those side lengths.
    fn descend(&mut self, axis: usize, active: &[usize], partial: f64) -> Result<()> {
        let dim = self.points.dim();
        if active.is_empty() {
            // Nothing left to avoid: the remaining sides are (0,1).
            self.tick()?;
            for i in axis..dim {
                self.lower[i] = 0.0;
                self.upper[i] = 1.0;
            }
            self.offer(partial);
            return Ok(());
        }
        let coords = active.iter().map(|&m| self.points.point(m)[axis]);
        if axis + 1 == dim {
            self.tick()?;
            let mut sorted: Vec<f64> = coords.collect();
            sorted.push(0.0);
            sorted.push(1.0);
            sorted.sort_by(f64::total_cmp);
            for w in sorted.windows(2) {
                let (a, b) = (w[0], w[1]);
                if a < b && partial * (b - a) >= self.best_value {
                    self.lower[axis] = a;
                    self.upper[axis] = b;
                    self.offer(partial * (b - a));
                }
            }
            return Ok(());
        }

        let mut faces: Vec<f64> = coords.collect();
        faces.push(0.0);
        faces.push(1.0);
        faces.sort_by(f64::total_cmp);
        faces.dedup();
        let mut inside = Vec::with_capacity(active.len());
        for (ia, &a) in faces.iter().enumerate() {
            // Undecided sides can contribute at most a factor of 1.
            if partial * (1.0 - a) < self.best_value {
                break;
            }
            for &b in faces[ia + 1..].iter().rev() {
                let side = partial * (b - a);
                if side < self.best_value {
                    break;
                }
                self.tick()?;
                inside.clear();
                inside.extend(active.iter().copied().filter(|&m| {
                    let x = self.points.point(m)[axis];
                    a < x && x < b
                }));
                self.lower[axis] = a;
                self.upper[axis] = b;
                let next = std::mem::take(&mut inside);
                self.descend(axis + 1, &next, side)?;
                inside = next;
            }
        }
        Ok(())
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Widest gap between consecutive values of `coords ∪ {0, 1}`; the first
/// one wins ties.
fn widest_gap(mut coords: Vec<f64>) -> (f64, f64) {
    coords.push(0.0);
    coords.push(1.0);
    coords.sort_by(f64::total_cmp);
    let mut best = (0.0, 0.0);
    for w in coords.windows(2) {
        if w[1] - w[0] > best.1 - best.0 {
            best = (w[0], w[1]);
        }
    }
    best
}

/// Randomized lower estimate of `disp(X)`: each trial shrinks a random box
/// around a random center until it is empty, then grows it one side at a
/// time (in random order) until it is inclusion-maximal.
pub fn sampled_empty_box_lower(points: &PointSet, trials: usize, seed: u64) -> f64 {
    let dim = points.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: f64 = 0.0;
    let mut order: Vec<usize> = (0..dim).collect();
    let mut cut_dims = Vec::with_capacity(dim);
    'trial: for _ in 0..trials.max(1) {
        let center: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
        let mut lower: Vec<f64> = center.iter().map(|&c| c * rng.random::<f64>()).collect();
        let mut upper: Vec<f64> = center
            .iter()
            .map(|&c| c + (1.0 - c) * (1.0 - rng.random::<f64>()))
            .collect();

        for p in points.iter() {
            let inside = p.iter().zip(lower.iter().zip(&upper)).all(|(x, (a, b))| a < x && x < b);
            if !inside {
                continue;
            }
            cut_dims.clear();
            cut_dims.extend((0..dim).filter(|&i| p[i] != center[i]));
            let Some(&i) = cut_dims.choose(&mut rng) else {
                continue 'trial;
            };
            if p[i] < center[i] {
                lower[i] = p[i];
            } else {
                upper[i] = p[i];
            }
        }

        order.shuffle(&mut rng);
        for &i in &order {
            let mut a = 0.0f64;
            let mut b = 1.0f64;
            for p in points.iter() {
                let blocks = (0..dim).filter(|&j| j != i).all(|j| lower[j] < p[j] && p[j] < upper[j]);
                if !blocks {
                    continue;
                }
                if p[i] <= lower[i] {
                    a = a.max(p[i]);
                } else {
                    debug_assert!(p[i] >= upper[i]);
                    b = b.min(p[i]);
                }
            }
            lower[i] = a;
            upper[i] = b;
        }
        let volume = lower.iter().zip(&upper).fold(1.0, |acc, (a, b)| acc * (b - a));
        best = best.max(volume);
    }
    best
}

/// Local-search parameters for [`min_dispersion_search`].
const INITIAL_STEP: f64 = 0.1;
const STEP_DECAY: f64 = 0.95;
const ROUNDS_PER_RESTART: usize = 200;

/// Multistart local search for an `n`-point set of small dispersion. The
/// returned value is the exact dispersion of the returned set, hence an upper
/// bound on `disp*(n, d)`.
///
/// Restart 0 starts from a structured layout (equispaced points for `d = 1`,
/// otherwise the first `n` points of the smallest centered grid with at least
/// `n` points); the other restarts start from uniform random points. Each
/// round moves one random point by a Gaussian step and keeps the move only if
/// the dispersion drops; otherwise the step shrinks.
pub fn min_dispersion_search(n: usize, dim: usize, restarts: usize, seed: u64) -> Result<(PointSet, f64)> {
    let empty = PointSet::empty(dim)?;
    if n == 0 {
        return Ok((empty, 1.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(PointSet, f64)> = None;
    for restart in 0..restarts.max(1) {
        let mut current = if restart == 0 {
            structured_start(n, dim)?
        } else {
            generate_points(GeneratorKind::UniformRandom, n, dim, 0, rng.random())?
        };
        let mut value = largest_empty_box(&current)?.value;
        let mut step = INITIAL_STEP;
        let mut moved = vec![0.0; dim];
        for _ in 0..ROUNDS_PER_RESTART {
            let idx = rng.random_range(0..n);
            let noise = Normal::new(0.0, step).expect("positive step");
            let old = current.point(idx).to_vec();
            for (m, &c) in moved.iter_mut().zip(&old) {
                *m = (c + noise.sample(&mut rng)).clamp(0.0, 1.0);
            }
            current.set_point(idx, &moved);
            let candidate = largest_empty_box(&current)?.value;
            if candidate < value {
                value = candidate;
            } else {
                current.set_point(idx, &old);
                step *= STEP_DECAY;
            }
        }
        if best.as_ref().is_none_or(|(_, v)| value < *v) {
            best = Some((current, value));
        }
    }
    Ok(best.expect("at least one restart"))
}

fn structured_start(n: usize, dim: usize) -> Result<PointSet> {
    if dim == 1 {
        return generate_points(GeneratorKind::Equispaced1d, n, 1, 0, 0);
    }
    let mut m = 1usize;
    while m.pow(dim as u32) < n {
        m += 1;
    }
    let grid = generate_points(GeneratorKind::CenteredGrid, 0, dim, m, 0)?;
    PointSet::new(dim, &grid.iter().take(n).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, pts: &[&[f64]]) -> PointSet {
        PointSet::new(dim, pts).unwrap()
    }

    #[test]
    fn grid_examples() {
        assert_eq!(
            candidate_grid(&PointSet::empty(2).unwrap()),
            vec![vec![0.0, 1.0], vec![0.0, 1.0]]
        );
        assert_eq!(
            candidate_grid(&set(2, &[&[0.5, 0.5]])),
            vec![vec![0.0, 0.5, 1.0], vec![0.0, 0.5, 1.0]]
        );
        assert_eq!(
            candidate_grid(&set(2, &[&[0.25, 0.5], &[0.25, 0.75]])),
            vec![vec![0.0, 0.25, 1.0], vec![0.0, 0.5, 0.75, 1.0]]
        );
    }

    #[test]
    fn empty_set_has_dispersion_one() {
        for d in 1..5 {
            let r = largest_empty_box(&PointSet::empty(d).unwrap()).unwrap();
            assert_eq!(r.value, 1.0);
            assert_eq!(r.witness, AxisBox::unit(d));
        }
    }

    #[test]
    fn center_point() {
        let r = largest_empty_box(&set(2, &[&[0.5, 0.5]])).unwrap();
        assert_eq!(r.value, 0.5);
        // lexicographically smallest of the four half-cube witnesses
        assert_eq!(r.witness.lower(), &[0.0, 0.0]);
        assert_eq!(r.witness.upper(), &[0.5, 1.0]);
    }

    #[test]
    fn two_diagonal_points() {
        let x = set(2, &[&[1.0 / 3.0, 2.0 / 3.0], &[2.0 / 3.0, 1.0 / 3.0]]);
        let r = largest_empty_box(&x).unwrap();
        assert!((r.value - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(r.value, r.witness.volume());
        assert!(r.witness.avoids_all(&x).unwrap());
    }

    #[test]
    fn equispaced_three() {
        let x = generate_points(GeneratorKind::Equispaced1d, 3, 1, 0, 0).unwrap();
        assert_eq!(largest_empty_box(&x).unwrap().value, 0.25);
    }

    #[test]
    fn budget_exhaustion_reports_best_so_far() {
        let x = generate_points(GeneratorKind::UniformRandom, 30, 3, 0, 1).unwrap();
        match largest_empty_box_with_budget(&x, 5) {
            Err(Error::BudgetExhausted { budget, best }) => {
                assert_eq!(budget, 5);
                assert!(best.witness.avoids_all(&x).unwrap());
                let exact = largest_empty_box(&x).unwrap().value;
                assert!(best.value <= exact);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn json_shape() {
        let r = largest_empty_box(&set(1, &[&[0.5]])).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["dispersion"], 0.5);
        assert_eq!(v["box"]["lower"][0], 0.0);
        assert_eq!(v["box"]["upper"][0], 0.5);
        assert!(v["nodes"].is_u64());
    }

    #[test]
    fn sampler_examples() {
        assert_eq!(sampled_empty_box_lower(&PointSet::empty(3).unwrap(), 1, 0), 1.0);
        let x = set(2, &[&[0.5, 0.5]]);
        let a = sampled_empty_box_lower(&x, 1000, 42);
        assert!(a <= 0.5 && a > 0.0);
        assert_eq!(a, sampled_empty_box_lower(&x, 1000, 42));
    }

    #[test]
    fn local_search_examples() {
        let (pts, v) = min_dispersion_search(0, 2, 3, 0).unwrap();
        assert!(pts.is_empty());
        assert_eq!(v, 1.0);

        let (pts, v) = min_dispersion_search(1, 2, 3, 0).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((0.5..=0.5 + 1e-6).contains(&v), "{v}");

        let (_, v) = min_dispersion_search(3, 1, 3, 0).unwrap();
        assert!((v - 0.25).abs() <= 1e-6, "{v}");
    }

    #[test]
    fn local_search_is_deterministic_and_sound() {
        let (pts, v) = min_dispersion_search(6, 2, 2, 9).unwrap();
        let (pts2, v2) = min_dispersion_search(6, 2, 2, 9).unwrap();
        assert_eq!((&pts, v), (&pts2, v2));
        assert_eq!(largest_empty_box(&pts).unwrap().value, v);
        // a single point cannot do better than 1/2, six points not better than 1/7
        assert!(v >= 1.0 / 7.0);
    }
}
