//! Biquadratic extensions as planes in K/℘(K): break classification,
//! Hasse-Herbrand conversion, lower ramification filtrations, conductors
//! and canonical formal degrees.
//!
//! A plane W ⊂ K/℘(K) meets the filtration (V_n) in one of three shapes:
//!
//! * case 1 — W contains the unramified line; single positive break t,
//!   upper breaks (−1, t);
//! * case 2.1 — W avoids the line and jumps all at once; single break t
//!   (impossible over F₂);
//! * case 2.2 — W avoids the line and jumps twice, at odd t₁ < t₂.
//!
//! Two conductor evaluations ship side by side: the closed forms per case,
//! and a direct evaluation of the weighted sum
//! α = Σ_{i≥0} dim(𝔤/𝔤^{G_i}) / [G₀:G_i] over the lower filtration with
//! 𝔤 = 𝔰𝔬₃ (dim 3, a half-turn fixes a line, the full Klein group fixes
//! nothing). The two disagree in case 2.2 and both are always reported;
//! formal degrees default to the closed form.

use std::collections::BTreeMap;

use num::rational::Ratio;
use num::{BigInt, BigRational, One};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2f::FieldCtx;
use crate::wpquot::{filtration_dim, filtration_dim_rank_one, vn_basis, CosetLevel, WpCoset};

/// Hard cap on the F₂-dimension of the space enumerations walk.
pub const ENUMERATION_BUDGET: u64 = 24;

/// A 2-dimensional F₂-subspace of K/℘(K), identified by its three nonzero
/// elements so that equality means equality of spans.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneDescriptor {
    triple: [WpCoset; 3],
}

impl PlaneDescriptor {
    pub fn new(u: WpCoset, v: WpCoset) -> Result<Self> {
        if u.is_zero() || v.is_zero() || u == v {
            return Err(Error::DegeneratePlane(format!(
                "basis {{{u}, {v}}} does not span a plane"
            )));
        }
        let w = u.add(&v);
        let mut triple = [u, v, w];
        triple.sort();
        Ok(PlaneDescriptor { triple })
    }

    /// The three nonzero elements in canonical order.
    pub fn elements(&self) -> &[WpCoset; 3] {
        &self.triple
    }

    /// A canonical basis: the two smallest nonzero elements.
    pub fn basis(&self) -> (&WpCoset, &WpCoset) {
        (&self.triple[0], &self.triple[1])
    }
}

impl std::fmt::Display for PlaneDescriptor {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "span{{{}, {}}}", self.triple[0], self.triple[1])
    }
}

/// Break structure of a plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BreakData {
    /// Contains the unramified line; one positive break.
    Case1 { t: u64 },
    /// Avoids the line, single jump of codimension 2.
    Case21 { t: u64 },
    /// Avoids the line, two jumps at t1 < t2.
    Case22 { t1: u64, t2: u64 },
}

impl BreakData {
    pub fn case1(t: u64) -> Self {
        assert!(t % 2 == 1, "break {t} must be odd");
        BreakData::Case1 { t }
    }

    pub fn case21(t: u64) -> Self {
        assert!(t % 2 == 1, "break {t} must be odd");
        BreakData::Case21 { t }
    }

    pub fn case22(t1: u64, t2: u64) -> Self {
        assert!(t1 % 2 == 1 && t2 % 2 == 1, "breaks {t1},{t2} must be odd");
        assert!(t1 < t2, "case 2.2 needs strictly increasing breaks");
        BreakData::Case22 { t1, t2 }
    }

    pub fn case_label(&self) -> &'static str {
        match self {
            BreakData::Case1 { .. } => "1",
            BreakData::Case21 { .. } => "2.1",
            BreakData::Case22 { .. } => "2.2",
        }
    }

    /// The positive breaks as reported in census output.
    pub fn positive_breaks(&self) -> Vec<u64> {
        match *self {
            BreakData::Case1 { t } | BreakData::Case21 { t } => vec![t],
            BreakData::Case22 { t1, t2 } => vec![t1, t2],
        }
    }
}

/// Classifies a plane by the coset levels of its three nonzero elements.
pub fn classify_plane(plane: &PlaneDescriptor) -> BreakData {
    let levels: Vec<CosetLevel> = plane.elements().iter().map(|u| u.level()).collect();
    let mut ramified: Vec<u64> = Vec::new();
    let mut saw_unramified = false;
    for level in levels {
        match level {
            CosetLevel::Zero => unreachable!("plane elements are nonzero"),
            CosetLevel::Unramified => saw_unramified = true,
            CosetLevel::Ramified(t) => ramified.push(t),
        }
    }
    if saw_unramified {
        // the other two differ by the unramified coset, so breaks agree
        assert_eq!(ramified[0], ramified[1]);
        return BreakData::case1(ramified[0]);
    }
    ramified.sort_unstable();
    let [b1, b2, b3]: [u64; 3] = ramified.try_into().unwrap();
    assert_eq!(b2, b3, "at most one break can be smaller than the rest");
    if b1 == b2 {
        BreakData::case21(b1)
    } else {
        BreakData::case22(b1, b2)
    }
}

/// Upper-numbering ramification breaks.
pub fn upper_breaks(bd: &BreakData) -> Vec<i64> {
    match *bd {
        BreakData::Case1 { t } => vec![-1, t as i64],
        BreakData::Case21 { t } => vec![t as i64],
        BreakData::Case22 { t1, t2 } => vec![t1 as i64, t2 as i64],
    }
}

/// Jump table for ψ: pairs (upper break, index of G^u in G⁰ beyond it).
fn psi_slope_table(bd: &BreakData) -> Vec<(i64, i64)> {
    match *bd {
        BreakData::Case1 { t } => vec![(t as i64, 2)],
        BreakData::Case21 { t } => vec![(t as i64, 4)],
        BreakData::Case22 { t1, t2 } => vec![(t1 as i64, 2), (t2 as i64, 4)],
    }
}

/// The Hasse-Herbrand function ψ(u) = ∫₀ᵘ (G⁰:G^v) dv, piecewise linear
/// with slope 1 up to the first positive upper break. Exact rationals.
pub fn hasse_herbrand_psi(bd: &BreakData, u: Ratio<i64>) -> Ratio<i64> {
    assert!(u >= Ratio::from_integer(0), "ψ is defined for u ≥ 0");
    let mut acc = Ratio::from_integer(0);
    let mut pos = Ratio::from_integer(0);
    let mut slope = Ratio::from_integer(1);
    for (b, next_slope) in psi_slope_table(bd) {
        let b = Ratio::from_integer(b);
        if u <= b {
            return acc + slope * (u - pos);
        }
        acc += slope * (b - pos);
        pos = b;
        slope = Ratio::from_integer(next_slope);
    }
    acc + slope * (u - pos)
}

/// Subgroups of the Klein four-group that occur in the filtrations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GaloisSubgroup {
    V4,
    C2,
    Triv,
}

impl GaloisSubgroup {
    pub fn order(self) -> u64 {
        match self {
            GaloisSubgroup::V4 => 4,
            GaloisSubgroup::C2 => 2,
            GaloisSubgroup::Triv => 1,
        }
    }

    /// dim(𝔤/𝔤^H) for 𝔤 = 𝔰𝔬₃: the full group fixes nothing, a
    /// half-turn fixes its axis, the trivial group fixes everything.
    pub fn moved_dim(self) -> u64 {
        match self {
            GaloisSubgroup::V4 => 3,
            GaloisSubgroup::C2 => 2,
            GaloisSubgroup::Triv => 0,
        }
    }
}

/// A lower-numbering ramification filtration as contiguous segments
/// covering the indices i ≥ −1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamFiltration {
    segments: Vec<Segment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub lo: i64,
    /// `None` marks the final segment extending to infinity.
    pub hi: Option<i64>,
    pub group: GaloisSubgroup,
}

impl RamFiltration {
    /// Builds from segments, dropping empty ones (lo > hi). Segments must
    /// then be contiguous from −1, with weakly shrinking groups ending in
    /// an infinite trivial tail.
    pub fn from_segments(segments: Vec<Segment>) -> Self {
        let segments: Vec<Segment> = segments
            .into_iter()
            .filter(|s| s.hi.is_none_or(|hi| s.lo <= hi))
            .collect();
        assert!(!segments.is_empty());
        assert_eq!(segments[0].lo, -1, "filtration starts at index -1");
        for w in segments.windows(2) {
            assert_eq!(
                w[0].hi.expect("only the last segment is infinite") + 1,
                w[1].lo,
                "segments must be contiguous"
            );
            assert!(
                w[0].group.order() >= w[1].group.order(),
                "groups must shrink"
            );
        }
        let last = segments.last().unwrap();
        assert!(last.hi.is_none(), "last segment extends to infinity");
        assert_eq!(last.group, GaloisSubgroup::Triv);
        RamFiltration { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// The full Galois group G₋₁.
    pub fn galois_group(&self) -> GaloisSubgroup {
        self.segments[0].group
    }

    pub fn group_at(&self, i: i64) -> GaloisSubgroup {
        for s in &self.segments {
            if i >= s.lo && s.hi.is_none_or(|hi| i <= hi) {
                return s.group;
            }
        }
        GaloisSubgroup::Triv
    }

    /// Indices i with G_i ≠ G_{i+1}.
    pub fn breaks(&self) -> Vec<i64> {
        self.segments.iter().filter_map(|s| s.hi).collect()
    }
}

/// The lower filtration of each case:
///
/// * case 1: G₋₁ = V₄, G₀ = … = G_t = C₂;
/// * case 2.1: G₋₁ = … = G_t = V₄;
/// * case 2.2: G₋₁ = … = G_{t₁} = V₄, then C₂ through 2t₂ − t₁.
pub fn lower_filtration(bd: &BreakData) -> RamFiltration {
    use GaloisSubgroup::*;
    let seg = |lo, hi, group| Segment { lo, hi, group };
    match *bd {
        BreakData::Case1 { t } => {
            let t = t as i64;
            RamFiltration::from_segments(vec![
                seg(-1, Some(-1), V4),
                seg(0, Some(t), C2),
                seg(t + 1, None, Triv),
            ])
        }
        BreakData::Case21 { t } => {
            let t = t as i64;
            RamFiltration::from_segments(vec![seg(-1, Some(t), V4), seg(t + 1, None, Triv)])
        }
        BreakData::Case22 { t1, t2 } => case22_filtration(t1 as i64, t2 as i64),
    }
}

/// The case 2.2 filtration shape with explicit lower breaks t₁ and
/// 2t₂ − t₁; tolerates the degenerate t₁ = t₂ where the middle collapses.
pub fn case22_filtration(t1: i64, t2: i64) -> RamFiltration {
    use GaloisSubgroup::*;
    assert!((1..=t2).contains(&t1), "breaks must satisfy 1 <= t1 <= t2");
    RamFiltration::from_segments(vec![
        Segment {
            lo: -1,
            hi: Some(t1),
            group: V4,
        },
        Segment {
            lo: t1 + 1,
            hi: Some(2 * t2 - t1),
            group: C2,
        },
        Segment {
            lo: 2 * t2 - t1 + 1,
            hi: None,
            group: Triv,
        },
    ])
}

/// Closed-form conductor per case.
pub fn conductor_paper(bd: &BreakData) -> u64 {
    match *bd {
        BreakData::Case1 { t } => 2 * (1 + t),
        BreakData::Case21 { t } => 3 * (t + 1),
        BreakData::Case22 { t1, t2 } => 3 + 3 * t1 + 2 * t2,
    }
}

/// Direct evaluation of α = Σ_{i≥0} dim(𝔤/𝔤^{G_i}) / [G₀:G_i] over the
/// filtration. Agrees with [`conductor_paper`] in cases 1 and 2.1; in case
/// 2.2 it yields 3 + t₁ + 2t₂ against the closed form's 3 + 3t₁ + 2t₂.
pub fn conductor_from_filtration(filt: &RamFiltration) -> Ratio<i64> {
    let g0 = filt.group_at(0);
    let mut acc = Ratio::from_integer(0);
    for s in filt.segments() {
        if s.group == GaloisSubgroup::Triv {
            continue;
        }
        let lo = s.lo.max(0);
        let hi = s.hi.expect("non-trivial segments are finite");
        if lo > hi {
            continue;
        }
        let count = hi - lo + 1;
        let index = (g0.order() / s.group.order()) as i64;
        acc += Ratio::new(count * s.group.moved_dim() as i64, index);
    }
    acc
}

/// Which conductor feeds the degree formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConductorSource {
    #[default]
    Paper,
    Filtration,
}

/// Magnitude base for ε: the closed forms use 2^{α/2}; q^{α/2} is
/// selectable for exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EpsilonBase {
    #[default]
    Two,
    Q,
}

/// 2^e as an exact rational, for any sign of e.
pub fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// If r = 2^e, returns e.
pub fn log2_exact(r: &BigRational) -> Option<i64> {
    let (numer, denom) = (r.numer(), r.denom());
    let bit_count = |n: &BigInt| -> Option<i64> {
        let (sign, bytes) = n.to_bytes_le();
        if sign != num::bigint::Sign::Plus {
            return None;
        }
        let ones: u32 = bytes.iter().map(|b| b.count_ones()).sum();
        if ones != 1 {
            return None;
        }
        Some((n.bits() - 1) as i64)
    };
    if denom.is_one() {
        bit_count(numer)
    } else if numer.is_one() {
        Some(-bit_count(denom)?)
    } else {
        None
    }
}

/// Canonical formal degree of each constituent of the packet attached to a
/// plane with the given breaks:
/// deg = (1/4)·(2/q)·|ε| with |ε| = base^{α/2}.
///
/// With the defaults this is 2^{α/2 − f − 1}, an integer power of 2.
pub fn formal_degree(
    bd: &BreakData,
    ctx: &FieldCtx,
    source: ConductorSource,
    base: EpsilonBase,
) -> Result<BigRational> {
    let alpha: Ratio<i64> = match source {
        ConductorSource::Paper => Ratio::from_integer(conductor_paper(bd) as i64),
        ConductorSource::Filtration => conductor_from_filtration(&lower_filtration(bd)),
    };
    let half = alpha / Ratio::from_integer(2);
    let exponent = match base {
        EpsilonBase::Two => half,
        EpsilonBase::Q => half * Ratio::from_integer(ctx.f() as i64),
    };
    if !exponent.is_integer() {
        return Err(Error::NonIntegralExponent(format!(
            "|ε| = base^{exponent} is not a power of 2"
        )));
    }
    Ok(pow2(exponent.to_integer() - ctx.f() as i64 - 1))
}

/// Formal degree with the default options (closed-form conductor, base 2).
pub fn formal_degree_default(bd: &BreakData, ctx: &FieldCtx) -> BigRational {
    formal_degree(bd, ctx, ConductorSource::Paper, EpsilonBase::Two)
        .expect("default conductors are even")
}

/// Number of planes in a d-dimensional F₂-space:
/// (2^d − 1)(2^{d−1} − 1)/3.
pub fn gaussian_plane_count(d: u64) -> u64 {
    if d < 2 {
        return 0;
    }
    ((1u64 << d) - 1) * ((1u64 << (d - 1)) - 1) / 3
}

fn check_budget(ctx: &FieldCtx, nmax: u64) -> Result<u64> {
    let d = filtration_dim(ctx, nmax);
    if d > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "V_{nmax} has dimension {d} > {ENUMERATION_BUDGET}"
        )));
    }
    Ok(d)
}

/// XOR-combination of basis cosets selected by mask bits.
fn span_element(basis: &[WpCoset], mask: u64) -> WpCoset {
    let mut acc = WpCoset::zero();
    for (i, b) in basis.iter().enumerate() {
        if mask >> i & 1 == 1 {
            acc = acc.add(b);
        }
    }
    acc
}

/// All planes of V_nmax, each exactly once, ordered lexicographically on
/// the sorted triple of nonzero elements in basis coordinates (a₀ is the
/// lowest bit, then the basis order of [`vn_basis`]).
pub fn enumerate_planes(
    ctx: &FieldCtx,
    nmax: u64,
) -> Result<impl Iterator<Item = PlaneDescriptor> + '_> {
    let d = check_budget(ctx, nmax)?;
    let basis = vn_basis(ctx, nmax);
    let total = 1u64 << d;
    Ok((1..total).flat_map(move |u| {
        let basis = basis.clone();
        (u + 1..total).filter(move |&v| (u ^ v) > v).map(move |v| {
            PlaneDescriptor::new(span_element(&basis, u), span_element(&basis, v))
                .expect("masks are independent")
        })
    }))
}

/// Coset level in basis coordinates: bit 0 is a₀, bit 1 + (m-1)/2·f + j is
/// g^j·x^{−m}.
fn mask_level(levels: &[u64], mask: u64) -> CosetLevel {
    debug_assert!(mask != 0);
    let mut best = 0u64;
    for (i, &m) in levels.iter().enumerate() {
        if mask >> i & 1 == 1 && m > best {
            best = m;
        }
    }
    if best == 0 {
        CosetLevel::Unramified
    } else {
        CosetLevel::Ramified(best)
    }
}

/// Classifies every plane of V_nmax and tallies by break data, walking the
/// basis-coordinate bit space directly.
pub fn count_by_breaks(ctx: &FieldCtx, nmax: u64) -> Result<BTreeMap<BreakData, u64>> {
    let d = check_budget(ctx, nmax)?;
    let basis = vn_basis(ctx, nmax);
    let levels: Vec<u64> = basis.iter().map(|b| b.min_level()).collect();
    let total = 1u64 << d;
    let mut tally: BTreeMap<BreakData, u64> = BTreeMap::new();
    for u in 1..total {
        for v in u + 1..total {
            let w = u ^ v;
            if w <= v {
                continue;
            }
            let mut ramified: Vec<u64> = Vec::with_capacity(3);
            let mut unramified = false;
            for mask in [u, v, w] {
                match mask_level(&levels, mask) {
                    CosetLevel::Unramified => unramified = true,
                    CosetLevel::Ramified(t) => ramified.push(t),
                    CosetLevel::Zero => unreachable!(),
                }
            }
            let bd = if unramified {
                debug_assert_eq!(ramified[0], ramified[1]);
                BreakData::case1(ramified[0])
            } else {
                ramified.sort_unstable();
                if ramified[0] == ramified[1] {
                    BreakData::case21(ramified[0])
                } else {
                    BreakData::case22(ramified[0], ramified[1])
                }
            };
            *tally.entry(bd).or_insert(0) += 1;
        }
    }
    debug_assert_eq!(
        tally.values().sum::<u64>(),
        gaussian_plane_count(d),
        "every plane classified exactly once"
    );
    Ok(tally)
}

/// Field identification in census output.
#[derive(Debug, Clone, Serialize)]
pub struct FieldInfo {
    pub f: u32,
    pub modulus: String,
}

impl FieldInfo {
    pub fn of(ctx: &FieldCtx) -> Self {
        let mut buf = String::new();
        for j in (0..=ctx.f()).rev() {
            if ctx.modulus() >> j & 1 == 1 {
                if !buf.is_empty() {
                    buf.push('+');
                }
                match j {
                    0 => buf.push('1'),
                    1 => buf.push('g'),
                    _ => buf.push_str(&format!("g^{j}")),
                }
            }
        }
        FieldInfo {
            f: ctx.f(),
            modulus: buf,
        }
    }
}

/// One line of the census: a break pattern with its plane count and
/// invariants.
#[derive(Debug, Clone, Serialize)]
pub struct CensusTally {
    pub case: String,
    pub breaks: Vec<u64>,
    pub count: u64,
    pub conductor_paper: u64,
    pub conductor_filtration: i64,
    /// Decimal string; exact fraction like "1/4" when not integral.
    pub formal_degree: String,
}

/// Census of all planes of V_nmax. Key order is fixed for golden output.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub field: FieldInfo,
    pub nmax: u64,
    pub dim: u64,
    pub dim_paper_eq2: u64,
    pub total_planes: u64,
    pub tallies: Vec<CensusTally>,
}

/// Renders an exact rational as "n" or "n/d".
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn census(ctx: &FieldCtx, nmax: u64) -> Result<CensusReport> {
    let d = check_budget(ctx, nmax)?;
    let tallies = count_by_breaks(ctx, nmax)?;
    let entries = tallies
        .into_iter()
        .map(|(bd, count)| {
            let filt = conductor_from_filtration(&lower_filtration(&bd));
            debug_assert!(filt.is_integer());
            CensusTally {
                case: bd.case_label().to_string(),
                breaks: bd.positive_breaks(),
                count,
                conductor_paper: conductor_paper(&bd),
                conductor_filtration: filt.to_integer(),
                formal_degree: rational_string(&formal_degree_default(&bd, ctx)),
            }
        })
        .collect();
    Ok(CensusReport {
        field: FieldInfo::of(ctx),
        nmax,
        dim: d,
        dim_paper_eq2: filtration_dim_rank_one(nmax),
        total_planes: gaussian_plane_count(d),
        tallies: entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentSeries;
    use crate::wpquot::reduce_mod_wp;

    fn k(f: u32) -> FieldCtx {
        FieldCtx::new(f).unwrap()
    }

    fn coset(ctx: &FieldCtx, text: &str) -> WpCoset {
        reduce_mod_wp(ctx, &LaurentSeries::parse(ctx, text).unwrap()).unwrap()
    }

    fn plane(ctx: &FieldCtx, a: &str, b: &str) -> PlaneDescriptor {
        PlaneDescriptor::new(coset(ctx, a), coset(ctx, b)).unwrap()
    }

    #[test]
    fn classify_known_planes() {
        let k1 = k(1);
        assert_eq!(
            classify_plane(&plane(&k1, "a0", "x^-1")),
            BreakData::case1(1)
        );
        let k2 = k(2);
        assert_eq!(
            classify_plane(&plane(&k2, "x^-1", "g*x^-1")),
            BreakData::case21(1)
        );
        assert_eq!(
            classify_plane(&plane(&k1, "x^-1", "x^-3")),
            BreakData::case22(1, 3)
        );
    }

    #[test]
    fn degenerate_planes_rejected() {
        let k1 = k(1);
        let u = coset(&k1, "x^-1");
        assert!(matches!(
            PlaneDescriptor::new(u.clone(), u.clone()),
            Err(Error::DegeneratePlane(_))
        ));
        assert!(matches!(
            PlaneDescriptor::new(WpCoset::zero(), u),
            Err(Error::DegeneratePlane(_))
        ));
    }

    #[test]
    fn classification_is_basis_independent() {
        let k2 = k(2);
        let cosets = [coset(&k2, "x^-3"), coset(&k2, "g*x^-1 + a0")];
        let sum = cosets[0].add(&cosets[1]);
        let all = [cosets[0].clone(), cosets[1].clone(), sum];
        let mut seen_bd = None;
        let mut seen_plane = None;
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let p = PlaneDescriptor::new(all[i].clone(), all[j].clone()).unwrap();
                let bd = classify_plane(&p);
                if let Some(prev) = &seen_bd {
                    assert_eq!(*prev, bd);
                    assert_eq!(seen_plane.as_ref(), Some(&p));
                } else {
                    seen_bd = Some(bd);
                    seen_plane = Some(p);
                }
            }
        }
    }

    #[test]
    fn upper_break_lists() {
        assert_eq!(upper_breaks(&BreakData::case1(3)), vec![-1, 3]);
        assert_eq!(upper_breaks(&BreakData::case21(1)), vec![1]);
        assert_eq!(upper_breaks(&BreakData::case22(1, 5)), vec![1, 5]);
    }

    #[test]
    fn psi_examples() {
        let r = Ratio::from_integer;
        for t in [1i64, 3, 5, 7, 9] {
            assert_eq!(hasse_herbrand_psi(&BreakData::case1(t as u64), r(t)), r(t));
            assert_eq!(hasse_herbrand_psi(&BreakData::case21(t as u64), r(t)), r(t));
        }
        // ψ(t₂) = 2t₂ − t₁
        for t1 in (1i64..=9).step_by(2) {
            for t2 in ((t1 + 2)..=9).step_by(2) {
                let bd = BreakData::case22(t1 as u64, t2 as u64);
                assert_eq!(hasse_herbrand_psi(&bd, r(t2)), r(2 * t2 - t1));
            }
        }
        // interior slope: ψ(2) = 1 + 2·1 = 3 for breaks (1,3)
        let bd = BreakData::case22(1, 3);
        assert_eq!(hasse_herbrand_psi(&bd, r(2)), r(3));
        assert_eq!(hasse_herbrand_psi(&bd, Ratio::new(3, 2)), Ratio::new(2, 1));
        assert_eq!(hasse_herbrand_psi(&bd, r(0)), r(0));
    }

    #[test]
    fn psi_strictly_increasing() {
        let bd = BreakData::case22(3, 7);
        let mut prev = Ratio::from_integer(-1);
        for n in 0..40 {
            let u = Ratio::new(n, 3);
            let v = hasse_herbrand_psi(&bd, u);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn lower_filtration_shapes() {
        use GaloisSubgroup::*;
        let f1 = lower_filtration(&BreakData::case1(1));
        assert_eq!(f1.group_at(-1), V4);
        assert_eq!(f1.group_at(0), C2);
        assert_eq!(f1.group_at(1), C2);
        assert_eq!(f1.group_at(2), Triv);

        let f21 = lower_filtration(&BreakData::case21(3));
        assert_eq!(f21.group_at(-1), V4);
        assert_eq!(f21.group_at(3), V4);
        assert_eq!(f21.group_at(4), Triv);

        let f22 = lower_filtration(&BreakData::case22(1, 3));
        assert_eq!(f22.group_at(1), V4);
        assert_eq!(f22.group_at(2), C2);
        assert_eq!(f22.group_at(5), C2);
        assert_eq!(f22.group_at(6), Triv);
    }

    #[test]
    fn lower_breaks_are_psi_of_upper_breaks() {
        let r = Ratio::from_integer;
        let mut cases: Vec<BreakData> = Vec::new();
        for t in (1..=9).step_by(2) {
            cases.push(BreakData::case1(t));
            cases.push(BreakData::case21(t));
            for t2 in ((t + 2)..=9).step_by(2) {
                cases.push(BreakData::case22(t, t2));
            }
        }
        for bd in cases {
            let lower: Vec<i64> = lower_filtration(&bd).breaks();
            let expect: Vec<i64> = upper_breaks(&bd)
                .into_iter()
                .map(|u| {
                    if u < 0 {
                        u // ψ is the identity on [−1, 0]
                    } else {
                        hasse_herbrand_psi(&bd, r(u)).to_integer()
                    }
                })
                .collect();
            assert_eq!(lower, expect, "case {bd:?}");
        }
    }

    #[test]
    fn conductor_agreement_cases_1_and_21() {
        for t in (1..=9).step_by(2) {
            let c1 = BreakData::case1(t);
            assert_eq!(
                conductor_from_filtration(&lower_filtration(&c1)),
                Ratio::from_integer(conductor_paper(&c1) as i64)
            );
            assert_eq!(conductor_paper(&c1), 2 * (t + 1));

            let c21 = BreakData::case21(t);
            assert_eq!(
                conductor_from_filtration(&lower_filtration(&c21)),
                Ratio::from_integer(conductor_paper(&c21) as i64)
            );
            assert_eq!(conductor_paper(&c21), 3 * (t + 1));
        }
    }

    #[test]
    fn conductor_case22_discrepancy() {
        // closed form 3 + 3t₁ + 2t₂ versus direct sum 3 + t₁ + 2t₂:
        // the difference is exactly 2t₁.
        for t1 in (1..=9u64).step_by(2) {
            for t2 in ((t1 + 2)..=9).step_by(2) {
                let bd = BreakData::case22(t1, t2);
                let paper = conductor_paper(&bd);
                let direct = conductor_from_filtration(&lower_filtration(&bd));
                assert_eq!(direct, Ratio::from_integer((3 + t1 + 2 * t2) as i64));
                assert_eq!(paper as i64 - direct.to_integer(), 2 * t1 as i64);
            }
        }
        let bd = BreakData::case22(1, 3);
        assert_eq!(conductor_paper(&bd), 12);
        assert_eq!(
            conductor_from_filtration(&lower_filtration(&bd)),
            Ratio::from_integer(10)
        );
    }

    #[test]
    fn degenerate_case22_matches_case21() {
        // evaluator sanity: collapsing t₁ = t₂ = t gives the case 2.1 sum
        for t in (1i64..=9).step_by(2) {
            let collapsed = case22_filtration(t, t);
            let case21 = lower_filtration(&BreakData::case21(t as u64));
            assert_eq!(
                conductor_from_filtration(&collapsed),
                conductor_from_filtration(&case21)
            );
        }
    }

    #[test]
    fn formal_degree_closed_forms() {
        for f in 1..=3u32 {
            let ctx = k(f);
            for t in (1..=9u64).step_by(2) {
                let d1 = formal_degree_default(&BreakData::case1(t), &ctx);
                assert_eq!(d1, pow2(t as i64 - f as i64));

                let d21 = formal_degree_default(&BreakData::case21(t), &ctx);
                assert_eq!(d21, pow2(3 * (1 + t as i64) / 2 - f as i64 - 1));

                for t2 in ((t + 2)..=9).step_by(2) {
                    let d22 = formal_degree_default(&BreakData::case22(t, t2), &ctx);
                    assert_eq!(d22, pow2(3 * (1 + t as i64) / 2 + t2 as i64 - f as i64 - 1));
                }
            }
        }
    }

    #[test]
    fn formal_degree_known_values() {
        // t = f = 1 → 1
        assert_eq!(
            formal_degree_default(&BreakData::case1(1), &k(1)),
            BigRational::one()
        );
        // t = 5, f = 2 → 8
        assert_eq!(formal_degree_default(&BreakData::case1(5), &k(2)), pow2(3));
        // case 2.2 (1,3), f = 1 → 16, cross-checked against (1/2q)·2^{α/2}
        let d = formal_degree_default(&BreakData::case22(1, 3), &k(1));
        assert_eq!(d, pow2(4));
        let alpha = conductor_paper(&BreakData::case22(1, 3));
        assert_eq!(alpha, 12);
        assert_eq!(
            d,
            pow2(alpha as i64 / 2) / BigRational::from_integer(4.into())
        );
    }

    #[test]
    fn formal_degree_variants() {
        let ctx = k(2);
        let bd = BreakData::case1(3);
        // filtration conductor agrees in case 1
        assert_eq!(
            formal_degree(&bd, &ctx, ConductorSource::Filtration, EpsilonBase::Two).unwrap(),
            formal_degree_default(&bd, &ctx)
        );
        // base q doubles the exponent at f = 2
        let dq = formal_degree(&bd, &ctx, ConductorSource::Paper, EpsilonBase::Q).unwrap();
        assert_eq!(dq, pow2(2 * 4 - 2 - 1));
    }

    #[test]
    fn log2_exact_recognizes_powers() {
        assert_eq!(log2_exact(&pow2(5)), Some(5));
        assert_eq!(log2_exact(&pow2(0)), Some(0));
        assert_eq!(log2_exact(&pow2(-3)), Some(-3));
        assert_eq!(log2_exact(&BigRational::from_integer(3.into())), None);
    }

    #[test]
    fn plane_counts_match_gaussian_binomial() {
        let k1 = k(1);
        assert_eq!(enumerate_planes(&k1, 1).unwrap().count(), 1);
        assert_eq!(enumerate_planes(&k1, 3).unwrap().count(), 7);
        let k2 = k(2);
        assert_eq!(enumerate_planes(&k2, 1).unwrap().count(), 7);
        for (f, nmax) in [(1u32, 5u64), (2, 3), (3, 1)] {
            let ctx = k(f);
            let d = filtration_dim(&ctx, nmax);
            assert_eq!(
                enumerate_planes(&ctx, nmax).unwrap().count() as u64,
                gaussian_plane_count(d)
            );
        }
    }

    #[test]
    fn enumeration_yields_distinct_planes_deterministically() {
        let ctx = k(2);
        let planes: Vec<PlaneDescriptor> = enumerate_planes(&ctx, 3).unwrap().collect();
        let set: std::collections::HashSet<_> = planes.iter().cloned().collect();
        assert_eq!(planes.len(), set.len());
        let again: Vec<PlaneDescriptor> = enumerate_planes(&ctx, 3).unwrap().collect();
        assert_eq!(planes, again);
    }

    #[test]
    fn tallies_match_descriptor_classification() {
        // the bit-space tally agrees with classifying each descriptor
        for (f, nmax) in [(1u32, 5u64), (2, 3)] {
            let ctx = k(f);
            let fast = count_by_breaks(&ctx, nmax).unwrap();
            let mut slow: BTreeMap<BreakData, u64> = BTreeMap::new();
            for p in enumerate_planes(&ctx, nmax).unwrap() {
                *slow.entry(classify_plane(&p)).or_insert(0) += 1;
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn counting_example_q_minus_one() {
        for f in 1..=3u32 {
            let ctx = k(f);
            let tally = count_by_breaks(&ctx, 1).unwrap();
            let q = ctx.order();
            assert_eq!(tally.get(&BreakData::case1(1)), Some(&(q - 1)));
        }
    }

    #[test]
    fn case21_vacuous_over_f2() {
        let ctx = k(1);
        let tally = count_by_breaks(&ctx, 5).unwrap();
        assert!(tally
            .keys()
            .all(|bd| !matches!(bd, BreakData::Case21 { .. })));
    }

    #[test]
    fn all_breaks_odd_over_exhaustive_enumeration() {
        for (f, nmax) in [(1u32, 5u64), (2, 5)] {
            let ctx = k(f);
            for bd in count_by_breaks(&ctx, nmax).unwrap().keys() {
                for b in bd.positive_breaks() {
                    assert!(b % 2 == 1, "even break {b} in {bd:?}");
                }
            }
        }
    }

    #[test]
    fn budget_guard() {
        let ctx = k(3);
        // dim = 1 + 3·8 = 25 > 24
        assert!(matches!(
            enumerate_planes(&ctx, 15).map(|_| ()),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            count_by_breaks(&ctx, 15),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn field_info_modulus_round_trips() {
        for f in 1..=16u32 {
            let ctx = k(f);
            let info = FieldInfo::of(&ctx);
            assert_eq!(
                crate::parse::parse_modulus(&info.modulus).unwrap(),
                ctx.modulus()
            );
        }
    }

    #[test]
    fn census_shape() {
        let ctx = k(2);
        let report = census(&ctx, 1).unwrap();
        assert_eq!(report.dim, 3);
        assert_eq!(report.dim_paper_eq2, 2);
        assert_eq!(report.total_planes, 7);
        assert_eq!(report.field.modulus, "g^2+g+1");
        let sum: u64 = report.tallies.iter().map(|t| t.count).sum();
        assert_eq!(sum, 7);
        // every degree is a power of two
        for t in &report.tallies {
            assert!(!t.formal_degree.is_empty());
        }
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with("{\"field\":{\"f\":2,"));
    }
}
