//! The sixteen Frobenius eigenvalues `xi = param_i * gl1_j * gl2_k` of the
//! tensor product, the eight that contribute to the Euler factor in each
//! region, and the rank-one graded pieces separating adjacent regions.
//!
//! For Borel-ordinary data the valuation of `xi` is `n_i + m_j + l_k` with
//! `n = (0, k2-2, k1-1, k1+k2-3)`, `m = (0, c1-1)`, `l = (0, c2-1)`, and `xi`
//! contributes when this is at most `w`. Labels pair off as
//! `(i, j, k) <-> (3-i, 1-j, 1-k)` with valuations summing to `2w + 1`, so
//! exactly one of each pair contributes.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::weights_regions::{
    adjacency, region_representative, Parabolic, ParabolicTriple, Region, Weights,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PanchishkinError {
    #[error("regions {0} and {1} are not adjacent")]
    NotAdjacent(Region, Region),
    #[error("weights {weights} lie in region {actual}, not {claimed}")]
    WrongRegion { weights: Weights, claimed: Region, actual: Region },
    #[error("weights must share (k1, k2): {0} vs {1}")]
    WeightMismatch(Weights, Weights),
    #[error("set difference has {0} elements, expected 1")]
    NotRankOne(usize),
    #[error("Hodge numbers collide when k2 = 2")]
    HodgeCollision,
    #[error("region {0} is empty for (k1, k2) = ({1}, {2})")]
    EmptyRegion(Region, i64, i64),
    #[error("contributing set is not a union of filtration steps")]
    NotAFlag,
}

/// `(i, j, k)`: `i` indexes `(alpha, beta, gamma, delta)`, `j` and `k` index
/// `(a, b)` for the two `GL2` factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstituentLabel {
    pub i: u8,
    pub j: u8,
    pub k: u8,
}

const GSP_NAMES: [&str; 4] = ["alpha", "beta", "gamma", "delta"];

impl ConstituentLabel {
    pub fn new(i: u8, j: u8, k: u8) -> Self {
        assert!(i < 4 && j < 2 && k < 2);
        ConstituentLabel { i, j, k }
    }

    /// All sixteen labels, `i` slowest and `k` fastest.
    pub fn all() -> impl Iterator<Item = ConstituentLabel> {
        (0..16u8).map(ConstituentLabel::from_index)
    }

    pub fn index(&self) -> usize {
        (self.i * 4 + self.j * 2 + self.k) as usize
    }

    pub fn from_index(n: u8) -> Self {
        ConstituentLabel { i: n / 4, j: (n / 2) % 2, k: n % 2 }
    }

    pub fn partner(&self) -> Self {
        ConstituentLabel { i: 3 - self.i, j: 1 - self.j, k: 1 - self.k }
    }

    /// The same eigenvalue with the two `GL2` factors interchanged.
    pub fn swap_gl2(&self) -> Self {
        ConstituentLabel { i: self.i, j: self.k, k: self.j }
    }

    /// `Gr^{3-i} (x) Gr^{1-j} (x) Gr^{1-k}`.
    pub fn graded_triple(&self) -> GradedTriple {
        GradedTriple([3 - self.i, 1 - self.j, 1 - self.k])
    }

    pub fn from_triple(t: GradedTriple) -> Self {
        let [s0, s1, s2] = t.0;
        ConstituentLabel::new(3 - s0, 1 - s1, 1 - s2)
    }

    pub fn name(&self) -> String {
        format!(
            "{}.{}1.{}2",
            GSP_NAMES[self.i as usize],
            ["a", "b"][self.j as usize],
            ["a", "b"][self.k as usize]
        )
    }
}

impl fmt::Display for ConstituentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A set of labels as a 16-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LabelSet(pub u16);

impl LabelSet {
    pub fn contains(&self, l: ConstituentLabel) -> bool {
        self.0 >> l.index() & 1 == 1
    }

    pub fn insert(&mut self, l: ConstituentLabel) {
        self.0 |= 1 << l.index();
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn difference(&self, other: &LabelSet) -> LabelSet {
        LabelSet(self.0 & !other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ConstituentLabel> + '_ {
        ConstituentLabel::all().filter(move |l| self.contains(*l))
    }

    /// Exactly one label from each complementary pair.
    pub fn is_panchishkin(&self) -> bool {
        self.len() == 8 && ConstituentLabel::all().all(|l| self.contains(l) != self.contains(l.partner()))
    }

    /// The `alpha`/`beta` block in table order.
    pub fn alpha_beta_block(&self) -> [bool; 8] {
        let mut out = [false; 8];
        for (n, slot) in out.iter_mut().enumerate() {
            *slot = self.contains(ConstituentLabel::from_index(n as u8));
        }
        out
    }

    pub fn swap_gl2(&self) -> LabelSet {
        let mut out = LabelSet::default();
        for l in self.iter() {
            out.insert(l.swap_gl2());
        }
        out
    }
}

fn gsp_valuations(w: &Weights) -> [i64; 4] {
    [0, w.k2 - 2, w.k1 - 1, w.k1 + w.k2 - 3]
}

/// `n_i + m_j + l_k`.
pub fn constituent_valuation(label: ConstituentLabel, weights: &Weights) -> i64 {
    let n = gsp_valuations(weights)[label.i as usize];
    let m = [0, weights.c1 - 1][label.j as usize];
    let l = [0, weights.c2 - 1][label.k as usize];
    n + m + l
}

/// Labels whose eigenvalue has valuation at most `w`.
pub fn contributing_set(weights: &Weights) -> LabelSet {
    let w = weights.w();
    let mut s = LabelSet::default();
    for l in ConstituentLabel::all() {
        if constituent_valuation(l, weights) <= w {
            s.insert(l);
        }
    }
    s
}

/// Hodge numbers of the three factors and the twist `1 + w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeProfile {
    pub gsp4_numbers: [i64; 4],
    pub gl2_numbers: [[i64; 2]; 2],
    pub twist: i64,
}

impl HodgeProfile {
    /// Requires `k2 >= 3`, so that the four `GSp4` numbers are distinct.
    pub fn new(weights: &Weights) -> Result<Self, PanchishkinError> {
        if weights.k2 == 2 {
            return Err(PanchishkinError::HodgeCollision);
        }
        Ok(HodgeProfile {
            gsp4_numbers: gsp_valuations(weights),
            gl2_numbers: [[0, weights.c1 - 1], [0, weights.c2 - 1]],
            twist: 1 + weights.w(),
        })
    }

    /// Hodge number of the constituent after the twist.
    pub fn hodge_number(&self, label: ConstituentLabel) -> i64 {
        self.gsp4_numbers[label.i as usize]
            + self.gl2_numbers[0][label.j as usize]
            + self.gl2_numbers[1][label.k as usize]
            - self.twist
    }
}

/// `(s0, s1, s2)` naming `Gr^{s0} (x) Gr^{s1} (x) Gr^{s2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedTriple(pub [u8; 3]);

impl GradedTriple {
    /// `(3 - s0, 1 - s1, 1 - s2)`.
    pub fn complement(&self) -> Self {
        let [a, b, c] = self.0;
        GradedTriple([3 - a, 1 - b, 1 - c])
    }
}

impl fmt::Display for GradedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a}, {b}, {c})")
    }
}

/// The single label contributing for `hearts` but not for `spades`, as a
/// graded triple.
pub fn panchishkin_quotient(
    hearts: Region,
    spades: Region,
    weights_hearts: &Weights,
    weights_spades: &Weights,
) -> Result<GradedTriple, PanchishkinError> {
    if !adjacency(hearts, spades) {
        return Err(PanchishkinError::NotAdjacent(hearts, spades));
    }
    for (w, claimed) in [(weights_hearts, hearts), (weights_spades, spades)] {
        let actual = w.classify();
        if actual != claimed {
            return Err(PanchishkinError::WrongRegion { weights: *w, claimed, actual });
        }
    }
    if (weights_hearts.k1, weights_hearts.k2) != (weights_spades.k1, weights_spades.k2) {
        return Err(PanchishkinError::WeightMismatch(*weights_hearts, *weights_spades));
    }
    let diff = contributing_set(weights_hearts).difference(&contributing_set(weights_spades));
    if diff.len() != 1 {
        return Err(PanchishkinError::NotRankOne(diff.len()));
    }
    let label = diff.iter().next().expect("one element");
    Ok(label.graded_triple())
}

/// `panchishkin_quotient` on the first lattice point of each region.
pub fn quotient_for_regions(hearts: Region, spades: Region, k1: i64, k2: i64) -> Result<GradedTriple, PanchishkinError> {
    let wh = region_representative(hearts, k1, k2).ok_or(PanchishkinError::EmptyRegion(hearts, k1, k2))?;
    let ws = region_representative(spades, k1, k2).ok_or(PanchishkinError::EmptyRegion(spades, k1, k2))?;
    panchishkin_quotient(hearts, spades, &wh, &ws)
}

/// Interchanging the two regions complements the triple.
pub fn swap_symmetry(triple: GradedTriple) -> GradedTriple {
    triple.complement()
}

/// The printed parabolic column.
pub fn parabolic_of_region(region: Region) -> ParabolicTriple {
    region.parabolic()
}

/// Read off the parabolic needed to cut out a contributing set: for each
/// factor, the filtration steps at which some fibre of the set stops.
pub fn derive_parabolic(set: LabelSet) -> Result<ParabolicTriple, PanchishkinError> {
    let mut gsp_steps = [false; 5];
    for j in 0..2 {
        for k in 0..2 {
            let fibre: Vec<bool> = (0..4).map(|i| set.contains(ConstituentLabel::new(i, j, k))).collect();
            gsp_steps[prefix_length(&fibre)?] = true;
        }
    }
    let mut gl_steps = [[false; 3]; 2];
    for i in 0..4 {
        for other in 0..2 {
            let f1: Vec<bool> = (0..2).map(|j| set.contains(ConstituentLabel::new(i, j, other))).collect();
            gl_steps[0][prefix_length(&f1)?] = true;
            let f2: Vec<bool> = (0..2).map(|k| set.contains(ConstituentLabel::new(i, other, k))).collect();
            gl_steps[1][prefix_length(&f2)?] = true;
        }
    }
    let gsp = match (gsp_steps[1], gsp_steps[2], gsp_steps[3]) {
        (false, false, false) => Parabolic::Whole,
        (false, true, false) => Parabolic::Klingen,
        (_, false, _) => Parabolic::Siegel,
        _ => Parabolic::Borel,
    };
    let gl = |s: [bool; 3]| if s[1] { Parabolic::Borel } else { Parabolic::Whole };
    Ok(ParabolicTriple([gsp, gl(gl_steps[0]), gl(gl_steps[1])]))
}

/// Length of a fibre that must be an initial segment `[true.., false..]`.
fn prefix_length(fibre: &[bool]) -> Result<usize, PanchishkinError> {
    let n = fibre.iter().take_while(|&&b| b).count();
    if fibre[n..].iter().any(|&b| b) {
        return Err(PanchishkinError::NotAFlag);
    }
    Ok(n)
}

/// The six printed rows: the `alpha`/`beta` block in table order and the
/// parabolic column.
pub const PRINTED_TABLE: [(Region, &str, [Parabolic; 3]); 6] = {
    use Parabolic::*;
    [
        (Region::A, "YNYNYNYN", [Whole, Whole, Borel]),
        (Region::B, "YYYNYNYN", [Siegel, Borel, Borel]),
        (Region::C, "YYYNYYYN", [Klingen, Borel, Borel]),
        (Region::D, "YYYYYNYN", [Siegel, Whole, Borel]),
        (Region::E, "YYYYYYYN", [Borel, Borel, Borel]),
        (Region::F, "YYYYYYYY", [Klingen, Whole, Whole]),
    ]
};

/// Expected `alpha`/`beta` block and parabolic for any region; primed rows
/// come from the printed rows by exchanging the two `GL2` factors.
pub fn printed_row(region: Region) -> ([bool; 8], ParabolicTriple) {
    let base = if region.is_primed() { region.mirror() } else { region };
    let (_, pattern, par) = PRINTED_TABLE.iter().find(|(r, _, _)| *r == base).expect("unprimed row");
    let mut set = LabelSet::default();
    for (n, ch) in pattern.chars().enumerate() {
        if ch == 'Y' {
            set.insert(ConstituentLabel::from_index(n as u8));
        }
    }
    let par = ParabolicTriple(*par);
    if region.is_primed() {
        (set.swap_gl2().alpha_beta_block(), par.swap_gl2())
    } else {
        (set.alpha_beta_block(), par)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub region: Region,
    pub representative: Option<Weights>,
    /// Full sixteen-column membership in label order.
    pub full: Option<String>,
    pub alpha_beta: Option<String>,
    pub parabolic: Option<String>,
    pub printed_alpha_beta: String,
    pub printed_parabolic: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1 {
    pub k1: i64,
    pub k2: i64,
    pub rows: Vec<Table1Row>,
    pub diffs: Vec<String>,
}

fn marks(bits: impl IntoIterator<Item = bool>) -> String {
    bits.into_iter().map(|b| if b { 'Y' } else { 'N' }).collect()
}

/// Recompute every row from representative weights at `(k1, k2)` and compare
/// with the printed table. Empty regions are reported without a diff.
pub fn regenerate_table1(k1: i64, k2: i64) -> Table1 {
    let mut rows = Vec::new();
    let mut diffs = Vec::new();
    for region in Region::ALL {
        let (printed_ab, printed_par) = printed_row(region);
        let rep = region_representative(region, k1, k2);
        let mut row = Table1Row {
            region,
            representative: rep,
            full: None,
            alpha_beta: None,
            parabolic: None,
            printed_alpha_beta: marks(printed_ab),
            printed_parabolic: printed_par.to_string(),
        };
        if let Some(w) = rep {
            let set = contributing_set(&w);
            let ab = set.alpha_beta_block();
            row.full = Some(marks(ConstituentLabel::all().map(|l| set.contains(l))));
            row.alpha_beta = Some(marks(ab));
            if ab != printed_ab {
                diffs.push(format!("{region}: computed {} printed {}", marks(ab), marks(printed_ab)));
            }
            match derive_parabolic(set) {
                Ok(par) => {
                    row.parabolic = Some(par.to_string());
                    if par != printed_par {
                        diffs.push(format!("{region}: derived parabolic {par} printed {printed_par}"));
                    }
                }
                Err(e) => diffs.push(format!("{region}: {e}")),
            }
        }
        rows.push(row);
    }
    Table1 { k1, k2, rows, diffs }
}

/// Reference weights used when no `(k1, k2)` is given.
pub const REFERENCE_K: (i64, i64) = (6, 4);

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k1: i64, k2: i64, c1: i64, c2: i64) -> Weights {
        Weights::new(k1, k2, c1, c2).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let wt = w(8, 4, 2, 2);
        assert_eq!(constituent_valuation(ConstituentLabel::new(0, 0, 0), &wt), 0);
        assert_eq!(constituent_valuation(ConstituentLabel::new(1, 1, 1), &wt), 4);
        for l in ConstituentLabel::all() {
            assert_eq!(
                constituent_valuation(l, &wt) + constituent_valuation(l.partner(), &wt),
                2 * wt.w() + 1
            );
        }
    }

    #[test]
    fn contributing_examples() {
        let f = contributing_set(&w(8, 4, 2, 2));
        assert_eq!(f.alpha_beta_block(), [true; 8]);
        let e = contributing_set(&w(3, 3, 2, 2));
        assert_eq!(marks(e.alpha_beta_block()), "YYYYYYYN");
        assert!(e.contains(ConstituentLabel::new(2, 0, 0)));
        let a = contributing_set(&w(4, 4, 2, 20));
        assert_eq!(marks(a.alpha_beta_block()), "YNYNYNYN");
    }

    #[test]
    fn quotient_examples() {
        let (k1, k2) = (3, 3);
        assert_eq!(quotient_for_regions(Region::E, Region::F, k1, k2).unwrap(), GradedTriple([1, 1, 1]));
        assert_eq!(quotient_for_regions(Region::E, Region::C, k1, k2).unwrap(), GradedTriple([3, 0, 0]));
        assert_eq!(quotient_for_regions(Region::E, Region::D, k1, k2).unwrap(), GradedTriple([2, 1, 0]));
        assert_eq!(quotient_for_regions(Region::F, Region::E, k1, k2).unwrap(), GradedTriple([2, 0, 0]));
        assert_eq!(quotient_for_regions(Region::C, Region::E, k1, k2).unwrap(), GradedTriple([0, 1, 1]));
        assert!(matches!(
            quotient_for_regions(Region::A, Region::F, 6, 4),
            Err(PanchishkinError::NotAdjacent(..))
        ));
    }

    #[test]
    fn hodge_profile() {
        assert_eq!(HodgeProfile::new(&w(5, 2, 1, 2)), Err(PanchishkinError::HodgeCollision));
        let wt = w(6, 4, 3, 3);
        let hp = HodgeProfile::new(&wt).unwrap();
        let s = contributing_set(&wt);
        for l in ConstituentLabel::all() {
            assert_eq!(s.contains(l), hp.hodge_number(l) <= -1);
        }
    }

    #[test]
    fn table_regenerates() {
        let t = regenerate_table1(REFERENCE_K.0, REFERENCE_K.1);
        assert!(t.diffs.is_empty(), "{:?}", t.diffs);
        assert_eq!(parabolic_of_region(Region::DPrime).to_string(), "(Sieg, B, -)");
    }
}
