//! Weight quadruples `(k1, k2, c1, c2)` and the nine interpolation regions of
//! the `(c1, c2)` plane.
//!
//! A region is determined by six Boolean conditions, all using `<=`:
//!
//! | name | condition                  |
//! |------|----------------------------|
//! | A1   | `c2 - c1 <= k1 + k2 - 4`   |
//! | A2   | `c1 - c2 <= k1 + k2 - 4`   |
//! | A3   | `c1 + c2 <= k1 + k2 - 2`   |
//! | B1   | `c2 - c1 <= k1 - k2`       |
//! | B2   | `c1 - c2 <= k1 - k2`       |
//! | B3   | `c1 + c2 <= k1 - k2 + 2`   |
//!
//! Lattice points on a boundary line fall on the `<=` side. In particular the
//! line `c1 + c2 = k1 - k2 + 2` belongs to region `f`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightsError {
    #[error("range violation: {0}")]
    RangeViolation(String),
    #[error("parity violation: c1 + c2 = {c} but k1 + k2 = {k}")]
    ParityViolation { k: i64, c: i64 },
    #[error("unknown region label {0:?}")]
    UnknownRegion(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weights {
    pub k1: i64,
    pub k2: i64,
    pub c1: i64,
    pub c2: i64,
}

impl Weights {
    pub fn new(k1: i64, k2: i64, c1: i64, c2: i64) -> Result<Self, WeightsError> {
        if k2 < 2 || k1 < k2 {
            return Err(WeightsError::RangeViolation(format!("need k1 >= k2 >= 2, got ({k1}, {k2})")));
        }
        if c1 < 1 || c2 < 1 {
            return Err(WeightsError::RangeViolation(format!("need c1, c2 >= 1, got ({c1}, {c2})")));
        }
        if (k1 + k2 - c1 - c2).rem_euclid(2) != 0 {
            return Err(WeightsError::ParityViolation { k: k1 + k2, c: c1 + c2 });
        }
        Ok(Weights { k1, k2, c1, c2 })
    }

    /// `(k1 + k2 + c1 + c2 - 6) / 2`.
    pub fn w(&self) -> i64 {
        (self.k1 + self.k2 + self.c1 + self.c2 - 6) / 2
    }

    /// `(k1 - k2 - c1 - c2 + 2) / 2`; nonnegative exactly in region `f`.
    pub fn hodge_t(&self) -> i64 {
        (self.k1 - self.k2 - self.c1 - self.c2 + 2) / 2
    }

    /// `floor((k1 - k2 + 2) / 2)`.
    pub fn r(&self) -> i64 {
        (self.k1 - self.k2 + 2).div_euclid(2)
    }

    pub fn mirror(&self) -> Self {
        Weights { c1: self.c2, c2: self.c1, ..*self }
    }

    pub fn signature(&self) -> Signature {
        let (k1, k2, c1, c2) = (self.k1, self.k2, self.c1, self.c2);
        Signature([
            c2 - c1 <= k1 + k2 - 4,
            c1 - c2 <= k1 + k2 - 4,
            c1 + c2 <= k1 + k2 - 2,
            c2 - c1 <= k1 - k2,
            c1 - c2 <= k1 - k2,
            c1 + c2 <= k1 - k2 + 2,
        ])
    }

    pub fn classify(&self) -> Region {
        classify(self)
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.k1, self.k2, self.c1, self.c2)
    }
}

/// The six conditions `[A1, A2, A3, B1, B2, B3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature(pub [bool; 6]);

impl Signature {
    pub fn region(&self) -> Option<Region> {
        Region::ALL.into_iter().find(|r| r.signature() == *self)
    }

    /// Number of conditions on which two signatures disagree.
    pub fn distance(&self, other: &Signature) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    A,
    APrime,
    B,
    BPrime,
    C,
    D,
    DPrime,
    E,
    F,
}

impl Region {
    /// Report order.
    pub const ALL: [Region; 9] = [
        Region::A,
        Region::APrime,
        Region::B,
        Region::BPrime,
        Region::C,
        Region::D,
        Region::DPrime,
        Region::E,
        Region::F,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Region::A => "a",
            Region::APrime => "a'",
            Region::B => "b",
            Region::BPrime => "b'",
            Region::C => "c",
            Region::D => "d",
            Region::DPrime => "d'",
            Region::E => "e",
            Region::F => "f",
        }
    }

    pub fn signature(&self) -> Signature {
        const T: bool = true;
        const F: bool = false;
        Signature(match self {
            Region::A => [F, T, F, F, T, F],
            Region::B => [T, T, F, F, T, F],
            Region::C => [T, T, F, T, T, F],
            Region::D => [T, T, T, F, T, F],
            Region::E => [T, T, T, T, T, F],
            Region::F => [T, T, T, T, T, T],
            Region::APrime => [T, F, F, T, F, F],
            Region::BPrime => [T, T, F, T, F, F],
            Region::DPrime => [T, T, T, T, F, F],
        })
    }

    /// The image under `c1 <-> c2`.
    pub fn mirror(&self) -> Region {
        match self {
            Region::A => Region::APrime,
            Region::APrime => Region::A,
            Region::B => Region::BPrime,
            Region::BPrime => Region::B,
            Region::D => Region::DPrime,
            Region::DPrime => Region::D,
            r => *r,
        }
    }

    /// Archimedean root number.
    pub fn sign_infinity(&self) -> i8 {
        match self {
            Region::B | Region::BPrime | Region::E => -1,
            _ => 1,
        }
    }

    /// The parabolic triple for `(GSp4, GL2, GL2)` as printed for the
    /// unprimed rows; primed rows swap the two `GL2` slots.
    pub fn parabolic(&self) -> ParabolicTriple {
        use Parabolic::*;
        let t = |a, b, c| ParabolicTriple([a, b, c]);
        match self {
            Region::A => t(Whole, Whole, Borel),
            Region::B => t(Siegel, Borel, Borel),
            Region::C => t(Klingen, Borel, Borel),
            Region::D => t(Siegel, Whole, Borel),
            Region::E => t(Borel, Borel, Borel),
            Region::F => t(Klingen, Whole, Whole),
            primed => primed.mirror().parabolic().swap_gl2(),
        }
    }

    pub fn is_primed(&self) -> bool {
        matches!(self, Region::APrime | Region::BPrime | Region::DPrime)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Region {
    type Err = WeightsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Region::ALL
            .into_iter()
            .find(|r| r.label() == s.trim())
            .ok_or_else(|| WeightsError::UnknownRegion(s.to_string()))
    }
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parabolic {
    Borel,
    Siegel,
    Klingen,
    /// The whole group (no refinement needed).
    Whole,
}

impl Parabolic {
    pub fn symbol(&self) -> &'static str {
        match self {
            Parabolic::Borel => "B",
            Parabolic::Siegel => "Sieg",
            Parabolic::Klingen => "Kl",
            Parabolic::Whole => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParabolicTriple(pub [Parabolic; 3]);

impl ParabolicTriple {
    pub fn swap_gl2(&self) -> Self {
        let [g, a, b] = self.0;
        ParabolicTriple([g, b, a])
    }
}

impl fmt::Display for ParabolicTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({}, {}, {})", a.symbol(), b.symbol(), c.symbol())
    }
}

impl Serialize for ParabolicTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn classify(weights: &Weights) -> Region {
    let sig = weights.signature();
    sig.region()
        .unwrap_or_else(|| panic!("signature {:?} of {weights} matches no region", sig.0))
}

/// Validate and classify in one step.
pub fn classify_quadruple(k1: i64, k2: i64, c1: i64, c2: i64) -> Result<Region, WeightsError> {
    Ok(Weights::new(k1, k2, c1, c2)?.classify())
}

pub fn sign_infinity(region: Region) -> i8 {
    region.sign_infinity()
}

pub fn hodge_t(weights: &Weights) -> i64 {
    weights.hodge_t()
}

/// Pairs of regions sharing an edge of the figure, unprimed side first.
pub const EDGES: [(Region, Region); 10] = [
    (Region::A, Region::B),
    (Region::B, Region::C),
    (Region::B, Region::D),
    (Region::C, Region::E),
    (Region::D, Region::E),
    (Region::E, Region::F),
    (Region::APrime, Region::BPrime),
    (Region::BPrime, Region::C),
    (Region::BPrime, Region::DPrime),
    (Region::DPrime, Region::E),
];

/// Two regions are adjacent when they are separated by a single boundary
/// line, i.e. their signatures differ in exactly one condition.
pub fn adjacency(r1: Region, r2: Region) -> bool {
    r1.signature().distance(&r2.signature()) == 1
}

/// Side of the scan box used for emptiness checks and representatives. Every
/// nonempty region has a lattice point with both coordinates at most this.
pub fn scan_bound(k1: i64, k2: i64) -> i64 {
    k1 + k2 + 2
}

/// Parity-valid weights in `[1, cmax]^2` for fixed `(k1, k2)`, row by row.
pub fn lattice(k1: i64, k2: i64, cmax: i64) -> impl Iterator<Item = Weights> {
    (1..=cmax).flat_map(move |c2| {
        (1..=cmax).filter_map(move |c1| Weights::new(k1, k2, c1, c2).ok())
    })
}

/// The first member of `region` in the scan box, scanning `c1 + c2`
/// upward and then `c1`.
pub fn region_representative(region: Region, k1: i64, k2: i64) -> Option<Weights> {
    let cmax = scan_bound(k1, k2);
    (2..=2 * cmax)
        .flat_map(|s| (1..s).map(move |c1| (c1, s - c1)))
        .filter(|&(c1, c2)| c1 <= cmax && c2 <= cmax)
        .filter_map(|(c1, c2)| Weights::new(k1, k2, c1, c2).ok())
        .find(|w| w.classify() == region)
}

pub fn region_is_empty(region: Region, k1: i64, k2: i64) -> bool {
    region_representative(region, k1, k2).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify_quadruple(3, 3, 2, 2).unwrap(), Region::E);
        assert_eq!(classify_quadruple(8, 4, 2, 2).unwrap(), Region::F);
        assert_eq!(classify_quadruple(4, 4, 20, 2).unwrap(), Region::APrime);
        assert_eq!(classify_quadruple(4, 4, 2, 20).unwrap(), Region::A);
        assert!(matches!(classify_quadruple(4, 4, 2, 3), Err(WeightsError::ParityViolation { .. })));
        assert!(matches!(classify_quadruple(4, 5, 2, 3), Err(WeightsError::RangeViolation(_))));
        assert!(matches!(classify_quadruple(4, 4, 0, 2), Err(WeightsError::RangeViolation(_))));
    }

    #[test]
    fn t_examples() {
        assert_eq!(Weights::new(8, 4, 2, 2).unwrap().hodge_t(), 1);
        assert_eq!(Weights::new(3, 3, 2, 2).unwrap().hodge_t(), -1);
        assert_eq!(Weights::new(6, 4, 4, 2).unwrap().hodge_t(), -1);
    }

    #[test]
    fn signs() {
        assert_eq!(sign_infinity(Region::E), -1);
        assert_eq!(sign_infinity(Region::F), 1);
        assert_eq!(sign_infinity(Region::APrime), 1);
    }

    #[test]
    fn adjacency_examples() {
        assert!(adjacency(Region::E, Region::C));
        assert!(adjacency(Region::E, Region::F));
        assert!(!adjacency(Region::A, Region::F));
        let mut count = 0;
        for r in Region::ALL {
            for s in Region::ALL {
                if adjacency(r, s) {
                    count += 1;
                    assert!(EDGES.contains(&(r, s)) || EDGES.contains(&(s, r)));
                }
            }
        }
        assert_eq!(count, 2 * EDGES.len());
    }

    #[test]
    fn emptiness_examples() {
        assert!(region_is_empty(Region::E, 3, 2));
        assert!(!region_is_empty(Region::E, 3, 3));
        assert!(!region_is_empty(Region::F, 3, 2));
        assert_eq!(region_representative(Region::F, 3, 2), Some(Weights::new(3, 2, 1, 2).unwrap()));
    }

    #[test]
    fn primed_parabolics() {
        assert_eq!(Region::DPrime.parabolic().to_string(), "(Sieg, B, -)");
        assert_eq!(Region::APrime.parabolic().to_string(), "(-, B, -)");
    }
}
