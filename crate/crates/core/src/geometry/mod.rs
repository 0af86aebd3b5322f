//! Points in `[0,1]^d` and open axis-parallel boxes.
//!
//! Boxes are open: a point on a face of a box is not inside it. All
//! comparisons are exact, because every box the library builds has its faces
//! on point coordinates or on the cube boundary.

mod generate;
mod pointfile;

pub use generate::{first_primes, generate_points, radical_inverse, GeneratorKind};
pub use pointfile::{format_coord, parse_point_set, write_point_set};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite multiset of points in `[0,1]^d`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parameter("dimension must be at least 1".into()));
        }
        Ok(Self {
            dim,
            coords: Vec::new(),
        })
    }

    pub fn new<P: AsRef<[f64]>>(dim: usize, points: &[P]) -> Result<Self> {
        let mut set = Self::empty(dim)?;
        for p in points {
            set.push(p.as_ref())?;
        }
        Ok(set)
    }

    /// Appends a point, checking its length and that every coordinate lies
    /// in `[0,1]`.
    pub fn push(&mut self, point: &[f64]) -> Result<()> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: point.len(),
            });
        }
        if let Some(c) = point.iter().find(|c| !(0.0..=1.0).contains(*c)) {
            return Err(Error::Parameter(format!("coordinate {c} is outside [0,1]")));
        }
        self.coords.extend_from_slice(point);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points, counting duplicates.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, index: usize) -> &[f64] {
        &self.coords[index * self.dim..(index + 1) * self.dim]
    }

    /// Overwrites a point in place. Used by the local search; the new
    /// coordinates must already be in `[0,1]`.
    pub(crate) fn set_point(&mut self, index: usize, point: &[f64]) {
        debug_assert_eq!(point.len(), self.dim);
        debug_assert!(point.iter().all(|c| (0.0..=1.0).contains(c)));
        self.coords[index * self.dim..(index + 1) * self.dim].copy_from_slice(point);
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }
}

/// An open box `(a_1,b_1) x ... x (a_d,b_d)` inside the unit cube with
/// `0 <= a_i < b_i <= 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBox")]
pub struct AxisBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Deserialize)]
struct RawBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TryFrom<RawBox> for AxisBox {
    type Error = Error;

    fn try_from(raw: RawBox) -> Result<Self> {
        AxisBox::new(raw.lower, raw.upper)
    }
}

impl AxisBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::MalformedBox("box has no sides".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        for (i, (&a, &b)) in lower.iter().zip(&upper).enumerate() {
            if !(0.0 <= a && a < b && b <= 1.0) {
                return Err(Error::MalformedBox(format!(
                    "side {i} is ({a}, {b}); need 0 <= a < b <= 1"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The full open cube `(0,1)^d`.
    pub fn unit(dim: usize) -> Self {
        assert!(dim > 0);
        Self {
            lower: vec![0.0; dim],
            upper: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Product of the side lengths, multiplied in coordinate order.
    pub fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .fold(1.0, |acc, (a, b)| acc * (b - a))
    }

    /// Strict containment: `a_i < x_i < b_i` for every `i`.
    pub fn contains(&self, point: &[f64]) -> Result<bool> {
        self.check_dim(point.len())?;
        Ok(self.contains_unchecked(point))
    }

    pub(crate) fn contains_unchecked(&self, point: &[f64]) -> bool {
        point
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (a, b))| a < x && x < b)
    }

    /// True iff no point of `points` lies inside the box.
    pub fn avoids_all(&self, points: &PointSet) -> Result<bool> {
        self.check_dim(points.dim())?;
        Ok(!points.iter().any(|p| self.contains_unchecked(p)))
    }

    fn check_dim(&self, actual: usize) -> Result<()> {
        if actual != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(lower: &[f64], upper: &[f64]) -> AxisBox {
        AxisBox::new(lower.to_vec(), upper.to_vec()).unwrap()
    }

    #[test]
    fn volumes() {
        assert_eq!(AxisBox::unit(3).volume(), 1.0);
        assert_eq!(boxed(&[0.0, 0.0], &[0.5, 0.5]).volume(), 0.25);
        let b = boxed(&[0.0, 0.25, 0.25], &[0.25, 1.0, 1.0]);
        assert_eq!(b.volume(), 0.140625);
    }

    #[test]
    fn malformed_boxes_are_rejected() {
        assert!(matches!(
            AxisBox::new(vec![0.5], vec![0.5]),
            Err(Error::MalformedBox(_))
        ));
        assert!(matches!(
            AxisBox::new(vec![-0.1], vec![0.5]),
            Err(Error::MalformedBox(_))
        ));
        assert!(matches!(
            AxisBox::new(vec![0.1], vec![1.5]),
            Err(Error::MalformedBox(_))
        ));
        assert!(AxisBox::new(vec![], vec![]).is_err());
        assert!(matches!(
            AxisBox::new(vec![0.0], vec![1.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn containment_is_strict() {
        assert!(AxisBox::unit(2).contains(&[0.5, 0.5]).unwrap());
        let b = boxed(&[0.0, 0.0], &[0.5, 0.5]);
        assert!(!b.contains(&[0.5, 0.1]).unwrap());
        let b = boxed(&[0.5, 0.0], &[1.0, 0.5]);
        assert!(b.contains(&[0.8, 0.2]).unwrap());
        assert!(matches!(b.contains(&[0.8]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn avoidance() {
        let empty = PointSet::empty(2).unwrap();
        assert!(AxisBox::unit(2).avoids_all(&empty).unwrap());
        let center = PointSet::new(2, &[[0.5, 0.5]]).unwrap();
        assert!(!AxisBox::unit(2).avoids_all(&center).unwrap());
        assert!(boxed(&[0.0, 0.0], &[1.0, 0.5]).avoids_all(&center).unwrap());
        let line = PointSet::new(1, &[[0.5]]).unwrap();
        assert!(AxisBox::unit(2).avoids_all(&line).is_err());
    }

    #[test]
    fn point_set_validation() {
        assert!(PointSet::empty(0).is_err());
        assert!(PointSet::new(2, &[[0.5, 1.5]]).is_err());
        assert!(PointSet::new(2, &[[0.5, f64::NAN]]).is_err());
        assert!(PointSet::new(2, &[vec![0.5]]).is_err());
        let dup = PointSet::new(1, &[[0.5], [0.5]]).unwrap();
        assert_eq!(dup.len(), 2);
    }

    #[test]
    fn box_json_validates_on_load() {
        let b: AxisBox = serde_json::from_str(r#"{"lower":[0.0],"upper":[0.5]}"#).unwrap();
        assert_eq!(b.volume(), 0.5);
        assert!(serde_json::from_str::<AxisBox>(r#"{"lower":[0.6],"upper":[0.5]}"#).is_err());
    }
}
