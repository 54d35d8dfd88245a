//! Family descriptors, root numbers and definiteness, the expected object in
//! each region, the reciprocity edges, and the rendered report.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::characters::{CharacterError, CharacterRecord, DirichletCharacter, TwistClasses};
use crate::figure;
use crate::hecke_data::{GSp4HeckeParams, GSp4Record, HeckeError};
use crate::panchishkin::{quotient_for_regions, regenerate_table1, GradedTriple, PanchishkinError, Table1};
use crate::weights_regions::{region_representative, scan_bound, Region, Weights, EDGES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("chi_Pi * chi_G1 * chi_G2 is not trivial (conductor {0})")]
    CentralCharacterViolation(u64),
    #[error("p = {p} divides the tame level {level}")]
    PDividesLevel { p: u64, level: u64 },
    #[error("epsilon at {prime} must be +1: {reason}")]
    ForcedSignViolation { prime: u64, reason: &'static str },
    #[error("epsilon at {0} must be +1 or -1")]
    BadSign(u64),
    #[error("local data at {prime}: {reason}")]
    BadLocalData { prime: u64, reason: String },
    #[error("character modulus {modulus} does not divide the level {level}")]
    CharacterLevel { modulus: u64, level: u64 },
    #[error("weights must satisfy k1 >= k2 >= 2, got ({0}, {1})")]
    BadWeights(i64, i64),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Panchishkin(#[from] PanchishkinError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Species {
    Unramified,
    PrincipalSeries,
    Special,
    Supercuspidal,
}

/// Local data at a bad prime `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalComponentDescriptor {
    pub prime: u64,
    pub pi: Species,
    pub sigma1: Species,
    pub sigma2: Species,
    pub epsilon: i8,
    /// Opaque name for the chosen test vector translation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
}

impl LocalComponentDescriptor {
    fn validate(&self, n: u64, n1: u64, n2: u64) -> Result<(), AtlasError> {
        let l = self.prime;
        if !arith::is_prime(l) {
            return Err(AtlasError::NotPrime(l));
        }
        if self.epsilon != 1 && self.epsilon != -1 {
            return Err(AtlasError::BadSign(l));
        }
        for (species, level, name) in [(self.pi, n, "Pi"), (self.sigma1, n1, "Sigma1"), (self.sigma2, n2, "Sigma2")] {
            if level % l != 0 && species != Species::Unramified {
                return Err(AtlasError::BadLocalData {
                    prime: l,
                    reason: format!("{name} is ramified but {l} does not divide its level {level}"),
                });
            }
        }
        if self.epsilon == -1 {
            let forced = if self.pi == Species::Unramified {
                Some("Pi is unramified")
            } else if arith::gcd(n1, n2) % l != 0 {
                Some("l does not divide gcd(N1, N2)")
            } else if self.sigma1 == Species::PrincipalSeries || self.sigma2 == Species::PrincipalSeries {
                Some("a GL2 factor is a principal series")
            } else {
                None
            };
            if let Some(reason) = forced {
                return Err(AtlasError::ForcedSignViolation { prime: l, reason });
            }
        }
        Ok(())
    }
}

/// Input file for `atlas`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u64,
    pub k1: i64,
    pub k2: i64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "N1")]
    pub n1: u64,
    #[serde(rename = "N2")]
    pub n2: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_pi: Option<CharacterRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_g1: Option<CharacterRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_g2: Option<CharacterRecord>,
    /// `[c1bar, c2bar, cbar]` in `Z/(p-1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_classes: Option<[u64; 3]>,
    #[serde(default)]
    pub local: Vec<LocalComponentDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gsp4: Option<GSp4Record>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub record: FamilyRecord,
    pub chi: [DirichletCharacter; 3],
    pub classes: Option<TwistClasses>,
    pub gsp4: Option<GSp4HeckeParams>,
}

impl FamilyDescriptor {
    pub fn new(record: FamilyRecord) -> Result<Self, AtlasError> {
        let r = &record;
        if !arith::is_prime(r.p) {
            return Err(AtlasError::NotPrime(r.p));
        }
        if r.k2 < 2 || r.k1 < r.k2 {
            return Err(AtlasError::BadWeights(r.k1, r.k2));
        }
        for level in [r.n, r.n1, r.n2] {
            if level == 0 || level % r.p == 0 {
                return Err(AtlasError::PDividesLevel { p: r.p, level });
            }
        }
        let load = |c: &Option<CharacterRecord>, level: u64| -> Result<DirichletCharacter, AtlasError> {
            let chi = match c {
                Some(c) => DirichletCharacter::from_record(c)?,
                None => DirichletCharacter::trivial(1)?,
            };
            if level % chi.conductor() != 0 {
                return Err(AtlasError::CharacterLevel { modulus: chi.conductor(), level });
            }
            Ok(chi)
        };
        let chi = [load(&r.chi_pi, r.n)?, load(&r.chi_g1, r.n1)?, load(&r.chi_g2, r.n2)?];
        let product = chi[0].mul(&chi[1]).mul(&chi[2]).primitive();
        if !product.is_trivial() {
            return Err(AtlasError::CentralCharacterViolation(product.conductor()));
        }
        let mut seen = BTreeSet::new();
        for l in &r.local {
            if !seen.insert(l.prime) {
                return Err(AtlasError::BadLocalData { prime: l.prime, reason: "listed twice".into() });
            }
            if l.prime == r.p {
                return Err(AtlasError::BadLocalData { prime: l.prime, reason: "p is not a bad prime".into() });
            }
            l.validate(r.n, r.n1, r.n2)?;
        }
        let classes = match r.twist_classes {
            Some([a, b, c]) => Some(TwistClasses::new(r.p, a, b, c)?),
            None => None,
        };
        let gsp4 = match &r.gsp4 {
            Some(g) => {
                let h = GSp4HeckeParams::from_record(g)?;
                if (h.p, h.k1, h.k2) != (r.p, r.k1, r.k2) {
                    return Err(AtlasError::BadLocalData {
                        prime: r.p,
                        reason: "Hecke data disagree with (p, k1, k2)".into(),
                    });
                }
                Some(h)
            }
            None => None,
        };
        Ok(FamilyDescriptor { record, chi, classes, gsp4 })
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let rec: FamilyRecord = serde_json::from_str(s).map_err(|e| e.to_string())?;
        Self::new(rec).map_err(|e| e.to_string())
    }

    /// Primes with `epsilon = -1`, in increasing order.
    pub fn minus_primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.record.local.iter().filter(|l| l.epsilon == -1).map(|l| l.prime).collect();
        v.sort();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Definiteness {
    Split,
    Indefinite,
    Definite,
}

pub fn definiteness(fd: &FamilyDescriptor) -> Definiteness {
    match fd.minus_primes().len() {
        0 => Definiteness::Split,
        n if n % 2 == 0 => Definiteness::Indefinite,
        _ => Definiteness::Definite,
    }
}

fn finite_sign(fd: &FamilyDescriptor) -> i8 {
    if fd.minus_primes().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn global_sign(fd: &FamilyDescriptor, region: Region) -> i8 {
    region.sign_infinity() * finite_sign(fd)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectedObject {
    PadicLFunction,
    CycleFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Constructed,
    Forthcoming,
    Feasible,
    Open,
}

pub fn expected_object(fd: &FamilyDescriptor, region: Region) -> (ExpectedObject, Status) {
    use Region::*;
    let object = if global_sign(fd, region) == 1 { ExpectedObject::PadicLFunction } else { ExpectedObject::CycleFamily };
    let status = match (definiteness(fd), region) {
        (Definiteness::Definite, E) => Status::Feasible,
        (Definiteness::Definite, _) => Status::Open,
        (_, F) | (_, E) => Status::Constructed,
        (_, C) => Status::Forthcoming,
        _ => Status::Open,
    };
    (object, status)
}

pub fn expected_objects(fd: &FamilyDescriptor) -> Vec<(Region, ExpectedObject, Status)> {
    Region::ALL
        .iter()
        .map(|&r| {
            let (o, s) = expected_object(fd, r);
            (r, o, s)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReciprocityEdge {
    pub minus: Region,
    pub plus: Region,
    pub triple: GradedTriple,
}

/// Adjacent pairs with opposite signs, from the minus side to the plus
/// side, labelled by the graded piece separating them. Pairs involving an
/// empty region are skipped.
pub fn reciprocity_edges(fd: &FamilyDescriptor) -> Result<Vec<ReciprocityEdge>, AtlasError> {
    let (k1, k2) = (fd.record.k1, fd.record.k2);
    let mut out = Vec::new();
    for (r1, r2) in EDGES {
        let (s1, s2) = (global_sign(fd, r1), global_sign(fd, r2));
        if s1 == s2 {
            continue;
        }
        let (minus, plus) = if s1 == -1 { (r1, r2) } else { (r2, r1) };
        if region_representative(minus, k1, k2).is_none() || region_representative(plus, k1, k2).is_none() {
            continue;
        }
        let triple = quotient_for_regions(minus, plus, k1, k2)?;
        out.push(ReciprocityEdge { minus, plus, triple });
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionEntry {
    pub region: Region,
    pub empty: bool,
    pub representative: Option<Weights>,
    pub sign_infinity: i8,
    pub global_sign: i8,
    pub parabolic: String,
    pub object: ExpectedObject,
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
pub struct Atlas {
    pub name: Option<String>,
    pub p: u64,
    pub k1: i64,
    pub k2: i64,
    pub definiteness: Definiteness,
    pub minus_primes: Vec<u64>,
    pub local: Vec<LocalComponentDescriptor>,
    pub hecke: Option<HeckeSummary>,
    pub regions: Vec<RegionEntry>,
    pub edges: Vec<ReciprocityEdge>,
    pub table1: Table1,
    pub figure: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HeckeSummary {
    pub borel_ordinary: bool,
    pub klingen_ordinary: bool,
    pub siegel_ordinary: bool,
}

pub fn build_atlas(fd: &FamilyDescriptor) -> Result<Atlas, AtlasError> {
    let (k1, k2) = (fd.record.k1, fd.record.k2);
    let regions = Region::ALL
        .iter()
        .map(|&r| {
            let rep = region_representative(r, k1, k2);
            let (object, status) = expected_object(fd, r);
            RegionEntry {
                region: r,
                empty: rep.is_none(),
                representative: rep,
                sign_infinity: r.sign_infinity(),
                global_sign: global_sign(fd, r),
                parabolic: r.parabolic().to_string(),
                object,
                status,
            }
        })
        .collect();
    let mut local = fd.record.local.clone();
    local.sort_by_key(|l| l.prime);
    Ok(Atlas {
        name: fd.record.name.clone(),
        p: fd.record.p,
        k1,
        k2,
        definiteness: definiteness(fd),
        minus_primes: fd.minus_primes(),
        local,
        hecke: fd.gsp4.as_ref().map(|h| HeckeSummary {
            borel_ordinary: h.is_borel_ordinary(),
            klingen_ordinary: h.is_klingen_ordinary(),
            siegel_ordinary: h.is_siegel_ordinary(),
        }),
        regions,
        edges: reciprocity_edges(fd)?,
        table1: regenerate_table1(k1, k2),
        figure: figure::ascii(k1, k2, scan_bound(k1, k2)).lines().map(String::from).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Svg,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s}; expected json, svg or text")),
        }
    }
}

fn object_name(o: ExpectedObject) -> &'static str {
    match o {
        ExpectedObject::PadicLFunction => "p-adic L-function",
        ExpectedObject::CycleFamily => "cycle family",
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Constructed => "constructed",
        Status::Forthcoming => "forthcoming",
        Status::Feasible => "feasible",
        Status::Open => "open",
    }
}

fn sign(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

fn summary_lines(a: &Atlas) -> Vec<String> {
    let mut lines = Vec::new();
    if let Some(n) = &a.name {
        lines.push(format!("family: {n}"));
    }
    lines.push(format!("p = {}, (k1, k2) = ({}, {})", a.p, a.k1, a.k2));
    let minus: Vec<String> = a.minus_primes.iter().map(|l| l.to_string()).collect();
    lines.push(format!("definiteness: {:?} (epsilon = -1 at [{}])", a.definiteness, minus.join(", ")).to_lowercase());
    if let Some(h) = &a.hecke {
        lines.push(format!(
            "Hecke data: Borel {}, Klingen {}, Siegel {}",
            h.borel_ordinary, h.klingen_ordinary, h.siegel_ordinary
        ));
    }
    lines.push(String::new());
    lines.push("region  sign  P               expected".into());
    for r in &a.regions {
        let what = if r.empty {
            "(empty)".to_string()
        } else {
            format!("{} ({})", object_name(r.object), status_name(r.status))
        };
        lines.push(format!("{:<7} {:<5} {:<15} {}", r.region.label(), sign(r.global_sign), r.parabolic, what));
    }
    lines.push(String::new());
    lines.push("reciprocity edges (minus -> plus: graded piece)".into());
    for e in &a.edges {
        lines.push(format!("{} -> {}: {}", e.minus, e.plus, e.triple));
    }
    lines.push(String::new());
    if a.table1.diffs.is_empty() {
        lines.push("table 1: no differences".into());
    } else {
        lines.push(format!("table 1: {} differences", a.table1.diffs.len()));
        lines.extend(a.table1.diffs.iter().cloned());
    }
    lines
}

pub fn render_atlas(fd: &FamilyDescriptor, format: Format) -> Result<String, AtlasError> {
    let a = build_atlas(fd)?;
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&a).expect("serializable");
            s.push('\n');
            s
        }
        Format::Svg => figure::svg_with_panel(a.k1, a.k2, &summary_lines(&a)),
        Format::Text => {
            let mut s = String::new();
            for l in summary_lines(&a) {
                writeln!(s, "{l}").unwrap();
            }
            writeln!(s).unwrap();
            for l in &a.figure {
                writeln!(s, "{l}").unwrap();
            }
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split() -> FamilyDescriptor {
        FamilyDescriptor::new(FamilyRecord {
            name: None,
            p: 5,
            k1: 6,
            k2: 4,
            n: 1,
            n1: 1,
            n2: 1,
            chi_pi: None,
            chi_g1: None,
            chi_g2: None,
            twist_classes: None,
            local: vec![],
            gsp4: None,
        })
        .unwrap()
    }

    #[test]
    fn split_signs_and_edges() {
        let fd = split();
        assert_eq!(definiteness(&fd), Definiteness::Split);
        for r in Region::ALL {
            assert_eq!(global_sign(&fd, r), r.sign_infinity());
        }
        let edges = reciprocity_edges(&fd).unwrap();
        let find = |m, p| edges.iter().find(|e| e.minus == m && e.plus == p).map(|e| e.triple);
        assert_eq!(find(Region::E, Region::F), Some(GradedTriple([1, 1, 1])));
        assert_eq!(find(Region::E, Region::C), Some(GradedTriple([3, 0, 0])));
    }

    #[test]
    fn forced_plus_one() {
        let mut rec = split().record;
        rec.n = 7;
        rec.local = vec![LocalComponentDescriptor {
            prime: 7,
            pi: Species::Special,
            sigma1: Species::Unramified,
            sigma2: Species::Unramified,
            epsilon: -1,
            gamma: None,
        }];
        assert!(matches!(FamilyDescriptor::new(rec), Err(AtlasError::ForcedSignViolation { prime: 7, .. })));
    }
}
