//! Finitely generated abelian groups in canonical invariant-factor form,
//! and graded (degree-indexed) collections of them.
//!
//! A group is `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | d_2 | … | d_k` and
//! every `d_i ≥ 2`. The chain is the canonical form, so structural equality
//! decides isomorphism.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Serialize torsion coefficients as plain JSON integers of arbitrary size.
mod torsion_json {
    use super::*;
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(
        values: &[BigUint],
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(values.len()))?;
        for v in values {
            let n =
                serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&n)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<BigUint>, D::Error> {
        let numbers = Vec::<serde_json::Number>::deserialize(de)?;
        numbers
            .iter()
            .map(|n| {
                BigUint::from_str(&n.to_string()).map_err(|_| {
                    D::Error::custom(format!(
                        "torsion coefficient {n} is not a nonnegative integer"
                    ))
                })
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    rank: usize,
    #[serde(with = "torsion_json")]
    torsion: Vec<BigUint>,
}

/// A finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<BigUint>,
}

impl FgAbelianGroup {
    /// The zero group.
    pub fn zero() -> Self {
        Self {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    /// `Z^rank`.
    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Build a group from a free rank and cyclic orders; the orders are
    /// canonicalized into an invariant-factor chain.
    pub fn new<I>(rank: usize, torsion_coefficients: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<BigUint>,
    {
        let coefficients: Vec<BigUint> = torsion_coefficients.into_iter().map(Into::into).collect();
        Ok(Self {
            rank,
            torsion: canonicalize_torsion(&coefficients)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Direct sum: ranks add, torsion merges and re-canonicalizes.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut coefficients = self.torsion.clone();
        coefficients.extend_from_slice(&other.torsion);
        let torsion =
            canonicalize_torsion(&coefficients).expect("canonical torsion entries are >= 2");
        Self {
            rank: self.rank + other.rank,
            torsion,
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GroupRepr {
            rank: self.rank,
            torsion: self.torsion.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(de)?;
        FgAbelianGroup::new(repr.rank, repr.torsion).map_err(D::Error::custom)
    }
}

/// Invariant-factor chain of `⊕ Z/c` over the given orders.
///
/// Works by a pairwise gcd/lcm sweep: replacing `(a, b)` with
/// `(gcd(a, b), lcm(a, b))` sorts the multiset of p-adic valuations for
/// every prime at once, so after the selection sweep position `i` divides
/// every later position. No factorization of the coefficients is needed,
/// and the result is independent of the input order. Unit factors arising
/// from coprime pairs are dropped.
pub fn canonicalize_torsion(coefficients: &[BigUint]) -> Result<Vec<BigUint>> {
    let two = BigUint::from(2u32);
    let mut chain: Vec<BigUint> = Vec::with_capacity(coefficients.len());
    for c in coefficients {
        if *c < two {
            return Err(Error::TorsionCoefficient(c.clone()));
        }
        chain.push(c.clone());
    }
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            if (&chain[j] % &chain[i]).is_zero() {
                continue;
            }
            let g = chain[i].gcd(&chain[j]);
            let l = &chain[i] / &g * &chain[j];
            chain[i] = g;
            chain[j] = l;
        }
    }
    chain.retain(|d| !d.is_one());
    Ok(chain)
}

/// A list of groups indexed by degree `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    groups: Vec<FgAbelianGroup>,
}

impl GradedGroup {
    /// All-zero groups up to degree `n`.
    pub fn zero(n: usize) -> Self {
        Self {
            groups: vec![FgAbelianGroup::zero(); n + 1],
        }
    }

    pub fn from_groups(groups: Vec<FgAbelianGroup>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::EmptyGraded);
        }
        Ok(Self { groups })
    }

    /// Graded group with the given free ranks and no torsion.
    pub fn from_ranks(ranks: &[usize]) -> Result<Self> {
        Self::from_groups(ranks.iter().map(|&r| FgAbelianGroup::free(r)).collect())
    }

    /// Top degree `n`; the list has `n + 1` entries.
    pub fn top_degree(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn degree(&self, i: usize) -> &FgAbelianGroup {
        &self.groups[i]
    }

    pub fn groups(&self) -> &[FgAbelianGroup] {
        &self.groups
    }

    pub fn set_degree(&mut self, i: usize, group: FgAbelianGroup) {
        self.groups[i] = group;
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(FgAbelianGroup::rank).collect()
    }

    /// Degrees carrying a torsion summand.
    pub fn torsion_degrees(&self) -> Vec<usize> {
        self.groups
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_free())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(FgAbelianGroup::is_zero)
    }

    /// Degreewise direct sum of two gradings over the same degree range.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.top_degree() != other.top_degree() {
            return Err(Error::DegreeMismatch {
                expected: self.top_degree(),
                actual: other.top_degree(),
            });
        }
        let groups = self
            .groups
            .iter()
            .zip(&other.groups)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(Self { groups })
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Add `B` into `A` with the degree-0 entry of `B` landing at degree
/// `shift`: result degree `i` is `A_i ⊕ B_{i−shift}`.
pub fn graded_sum_shift(a: &GradedGroup, b: &GradedGroup, shift: usize) -> Result<GradedGroup> {
    let n = a.top_degree();
    if shift + b.top_degree() > n {
        return Err(Error::ShiftOverflow {
            shift,
            top: b.top_degree(),
            n,
        });
    }
    let mut out = a.clone();
    for (i, g) in b.groups.iter().enumerate() {
        out.groups[shift + i] = out.groups[shift + i].direct_sum(g);
    }
    Ok(out)
}

/// Free-function spelling of [`FgAbelianGroup::direct_sum`].
pub fn direct_sum(g: &FgAbelianGroup, h: &FgAbelianGroup) -> FgAbelianGroup {
    g.direct_sum(h)
}

#[derive(Serialize, Deserialize)]
struct GradedRepr {
    n: usize,
    groups: Vec<FgAbelianGroup>,
}

impl Serialize for GradedGroup {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GradedRepr {
            n: self.top_degree(),
            groups: self.groups.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GradedGroup {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = GradedRepr::deserialize(de)?;
        if repr.groups.len() != repr.n + 1 {
            return Err(D::Error::custom(
                Error::GradedLength {
                    n: repr.n,
                    len: repr.groups.len(),
                }
                .to_string(),
            ));
        }
        GradedGroup::from_groups(repr.groups).map_err(D::Error::custom)
    }
}
