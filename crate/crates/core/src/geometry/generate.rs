use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PointSet;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// i.i.d. uniform coordinates drawn from `ChaCha8Rng::seed_from_u64(seed)`.
    UniformRandom,
    /// `{ i / (n+1) : i = 1..n }` on the unit interval.
    Equispaced1d,
    /// The `m^d` points with coordinates `(2j - 1) / (2m)`.
    CenteredGrid,
    /// Points `1..=n` of the Halton sequence in the first `d` prime bases.
    VanDerCorput,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::UniformRandom,
        GeneratorKind::Equispaced1d,
        GeneratorKind::CenteredGrid,
        GeneratorKind::VanDerCorput,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::UniformRandom => "uniform-random",
            GeneratorKind::Equispaced1d => "equispaced-1d",
            GeneratorKind::CenteredGrid => "centered-grid",
            GeneratorKind::VanDerCorput => "van-der-corput",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown generator kind '{s}'")))
    }
}

/// Deterministic point-set generator. `n` is ignored by `CenteredGrid`, `m`
/// and `seed` are ignored by every kind that does not use them.
pub fn generate_points(kind: GeneratorKind, n: usize, dim: usize, m: usize, seed: u64) -> Result<PointSet> {
    let mut set = PointSet::empty(dim)?;
    match kind {
        GeneratorKind::UniformRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut p = vec![0.0; dim];
            for _ in 0..n {
                p.iter_mut().for_each(|c| *c = rng.random::<f64>());
                set.push(&p)?;
            }
        }
        GeneratorKind::Equispaced1d => {
            if dim != 1 {
                return Err(Error::Parameter(format!("equispaced-1d requires dim 1, got {dim}")));
            }
            let denom = (n + 1) as f64;
            for i in 1..=n {
                set.push(&[i as f64 / denom])?;
            }
        }
        GeneratorKind::CenteredGrid => {
            if m == 0 {
                return Err(Error::Parameter("centered-grid requires m >= 1".into()));
            }
            let axis: Vec<f64> = (1..=m).map(|j| (2 * j - 1) as f64 / (2 * m) as f64).collect();
            for p in (0..dim).map(|_| axis.iter().copied()).multi_cartesian_product() {
                set.push(&p)?;
            }
        }
        GeneratorKind::VanDerCorput => {
            let bases = first_primes(dim);
            let mut p = vec![0.0; dim];
            for i in 1..=n as u64 {
                for (c, &b) in p.iter_mut().zip(&bases) {
                    *c = radical_inverse(i, b);
                }
                set.push(&p)?;
            }
        }
    }
    Ok(set)
}

/// Reflects the base-`base` digits of `index` about the radix point.
///
/// Numerator and denominator are accumulated as integers so the result is
/// the correctly rounded value of the exact fraction while both fit in 53
/// bits.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    assert!(base >= 2);
    let mut num: u128 = 0;
    let mut den: u128 = 1;
    while index > 0 {
        num = num * base as u128 + (index % base) as u128;
        den *= base as u128;
        index /= base;
    }
    num as f64 / den as f64
}

pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p))
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equispaced() {
        let set = generate_points(GeneratorKind::Equispaced1d, 3, 1, 0, 0).unwrap();
        assert_eq!(set.to_vecs(), vec![vec![0.25], vec![0.5], vec![0.75]]);
        assert!(generate_points(GeneratorKind::Equispaced1d, 3, 2, 0, 0).is_err());
    }

    #[test]
    fn centered_grid() {
        let set = generate_points(GeneratorKind::CenteredGrid, 0, 2, 2, 0).unwrap();
        assert_eq!(
            set.to_vecs(),
            vec![vec![0.25, 0.25], vec![0.25, 0.75], vec![0.75, 0.25], vec![0.75, 0.75]]
        );
        assert!(generate_points(GeneratorKind::CenteredGrid, 0, 2, 0, 0).is_err());
    }

    #[test]
    fn uniform_is_deterministic() {
        let a = generate_points(GeneratorKind::UniformRandom, 5, 2, 0, 7).unwrap();
        let b = generate_points(GeneratorKind::UniformRandom, 5, 2, 0, 7).unwrap();
        let c = generate_points(GeneratorKind::UniformRandom, 5, 2, 0, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn halton_prefix() {
        let set = generate_points(GeneratorKind::VanDerCorput, 4, 2, 0, 0).unwrap();
        assert_eq!(
            set.to_vecs(),
            vec![
                vec![0.5, 1.0 / 3.0],
                vec![0.25, 2.0 / 3.0],
                vec![0.75, 1.0 / 9.0],
                vec![0.125, 4.0 / 9.0]
            ]
        );
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in GeneratorKind::ALL {
            assert_eq!(kind.name().parse::<GeneratorKind>().unwrap(), kind);
        }
        assert!("sobol".parse::<GeneratorKind>().is_err());
    }
}
