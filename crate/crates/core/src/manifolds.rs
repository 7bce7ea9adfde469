//! The catalog of generating manifolds: the point, spheres, and connected
//! sums of sphere products `S^a × S^b`. These are exactly the closed
//! connected orientable manifolds the surgery planners attach, and their
//! integral homology is free and palindromic.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};

/// A formal closed connected orientable manifold from the catalog.
///
/// Connected-sum summands are sphere products `S^a × S^b` with
/// `1 ≤ a ≤ b` and `a + b` equal to the manifold dimension; the summand
/// list is kept sorted so plan equality is decidable. Dimension 1 only
/// contains the sphere (a connected sum of circles is a circle).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratingManifold {
    Point,
    Sphere {
        dim: usize,
    },
    ConnectedSum {
        dim: usize,
        summands: Vec<(usize, usize)>,
    },
}

impl GeneratingManifold {
    pub fn point() -> Self {
        Self::Point
    }

    pub fn sphere(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidManifold(
                "the 0-sphere is disconnected; use the point instead".into(),
            ));
        }
        Ok(Self::Sphere { dim })
    }

    /// Connected sum of sphere products; pairs are normalized to
    /// `(min, max)` and the list is sorted.
    pub fn connected_sum(dim: usize, summands: Vec<(usize, usize)>) -> Result<Self> {
        let mut normalized: Vec<(usize, usize)> = summands
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        normalized.sort_unstable();
        let m = Self::ConnectedSum {
            dim,
            summands: normalized,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Point => 0,
            Self::Sphere { dim } => *dim,
            Self::ConnectedSum { dim, .. } => *dim,
        }
    }

    /// Check the catalog invariants, naming the violated one.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Point => Ok(()),
            Self::Sphere { dim } => {
                if *dim == 0 {
                    Err(Error::InvalidManifold(
                        "sphere dimension must be at least 1".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            Self::ConnectedSum { dim, summands } => {
                if *dim < 2 {
                    return Err(Error::InvalidManifold(format!(
                        "connected sum needs dimension at least 2, got {dim}"
                    )));
                }
                if summands.is_empty() {
                    return Err(Error::InvalidManifold(
                        "connected sum needs at least one sphere-product summand".into(),
                    ));
                }
                for &(a, b) in summands {
                    if a == 0 || b == 0 {
                        return Err(Error::InvalidManifold(format!(
                            "sphere-product factor S^{a} x S^{b} has a zero-dimensional factor"
                        )));
                    }
                    if a > b {
                        return Err(Error::InvalidManifold(format!(
                            "summand ({a}, {b}) is not in canonical (min, max) order"
                        )));
                    }
                    if a + b != *dim {
                        return Err(Error::InvalidManifold(format!(
                            "summand S^{a} x S^{b} has dimension {}, expected {dim}",
                            a + b
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// Betti numbers in degrees `0..=dim`.
    ///
    /// `b_0 = b_dim = 1`; in between, each summand `S^a × S^b` contributes
    /// one class in degree `a` and one in degree `b` (two in the middle
    /// degree when `a = b`), by the Künneth ranks of a sphere product and
    /// the connected-sum rule for closed orientable manifolds.
    pub fn betti(&self) -> Vec<usize> {
        match self {
            Self::Point => vec![1],
            Self::Sphere { dim } => {
                let mut b = vec![0; dim + 1];
                b[0] = 1;
                b[*dim] = 1;
                b
            }
            Self::ConnectedSum { dim, summands } => {
                let mut b = vec![0; dim + 1];
                b[0] = 1;
                b[*dim] = 1;
                for &(x, y) in summands {
                    b[x] += 1;
                    b[y] += 1;
                }
                b
            }
        }
    }

    /// Integral homology in degrees `0..=dim`; free in every degree.
    pub fn homology(&self) -> Vec<FgAbelianGroup> {
        self.betti().into_iter().map(FgAbelianGroup::free).collect()
    }
}

impl fmt::Display for GeneratingManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Point => write!(f, "point"),
            Self::Sphere { dim } => write!(f, "S^{dim}"),
            Self::ConnectedSum { summands, .. } => {
                let parts: Vec<String> = summands
                    .iter()
                    .map(|(a, b)| format!("S^{a} x S^{b}"))
                    .collect();
                write!(f, "{}", parts.join(" # "))
            }
        }
    }
}

pub fn validate_manifold(m: &GeneratingManifold) -> Result<()> {
    m.validate()
}

pub fn homology_of_manifold(m: &GeneratingManifold) -> Result<Vec<FgAbelianGroup>> {
    m.validate()?;
    Ok(m.homology())
}

#[derive(Serialize, Deserialize)]
struct ManifoldRepr {
    dim: usize,
    summands: Vec<(usize, usize)>,
}

impl Serialize for GeneratingManifold {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let summands = match self {
            Self::ConnectedSum { summands, .. } => summands.clone(),
            _ => Vec::new(),
        };
        ManifoldRepr {
            dim: self.dim(),
            summands,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GeneratingManifold {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = ManifoldRepr::deserialize(de)?;
        let m = if repr.summands.is_empty() {
            if repr.dim == 0 {
                GeneratingManifold::Point
            } else {
                GeneratingManifold::Sphere { dim: repr.dim }
            }
        } else {
            return GeneratingManifold::connected_sum(repr.dim, repr.summands)
                .map_err(D::Error::custom);
        };
        m.validate().map_err(D::Error::custom)?;
        Ok(m)
    }
}
