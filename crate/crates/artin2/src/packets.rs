//! Label-level model of L-packets, enhanced parameters, the extended
//! quotient of the second kind, and the component structure of the
//! tempered dual.
//!
//! Representations are opaque labels; packets, fibers and parameter sets
//! are finite label sets related by explicit bijections. Fiber positions on
//! a component are the symbolic W-fixed points ±1 of the circle with
//! z ↦ z⁻¹ folding, never floating point. A quadratic character is
//! normalized to take the value −1 on the uniformizer, which pins its
//! packet to the +1 fiber of its component and the packet of the
//! unramified twist to −1.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2f::FieldCtx;
use crate::ramify::{
    census, classify_plane, enumerate_planes, formal_degree_default, gaussian_plane_count,
    CensusTally, FieldInfo, PlaneDescriptor,
};
use crate::wpquot::{vn_basis, WpCoset};

/// A point of the Bernstein spectrum for the principal series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BernsteinPoint {
    /// The component of the trivial character.
    Trivial,
    /// The component of a (ramified-part-)quadratic character χ_a, a ≠ 0.
    Quadratic(WpCoset),
    /// A character with χ² ≠ 1, identified only by an opaque tag.
    Nonquadratic(String),
}

impl BernsteinPoint {
    pub fn quadratic(coset: WpCoset) -> Result<Self> {
        if coset.is_zero() {
            return Err(Error::ZeroCoset);
        }
        Ok(BernsteinPoint::Quadratic(coset))
    }
}

/// Langlands parameter kinds occurring in this dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamKind {
    /// The principal parameter φ₀ (Steinberg); trivial component group.
    Principal,
    /// The parameter φ₁ with trivial image; trivial component group.
    TrivialParam,
    /// The parameter of a quadratic extension; component group Z/2.
    Quadratic(WpCoset),
    /// The discrete parameter of a biquadratic extension; component group
    /// the Klein four-group.
    Biquadratic(PlaneDescriptor),
}

/// An irreducible character of the component group S_φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enhancement {
    Triv,
    Rho,
    /// One of the four characters of the Klein four-group.
    Four(u8, u8),
}

impl Enhancement {
    fn label(&self) -> String {
        match self {
            Enhancement::Triv => "triv".into(),
            Enhancement::Rho => "rho".into(),
            Enhancement::Four(i, j) => format!("({i},{j})"),
        }
    }

    /// The four characters of the Klein four-group, in a fixed order.
    pub fn four_labels() -> [Enhancement; 4] {
        [
            Enhancement::Four(0, 0),
            Enhancement::Four(0, 1),
            Enhancement::Four(1, 0),
            Enhancement::Four(1, 1),
        ]
    }
}

/// An enhanced parameter φ(ρ): a parameter with a character of S_φ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnhancedParam {
    parameter: ParamKind,
    enhancement: Enhancement,
}

impl EnhancedParam {
    /// Validates the enhancement against the parameter's component group:
    /// φ₀ and φ₁ only carry triv, quadratic parameters carry triv or rho,
    /// biquadratic parameters carry the four Klein characters.
    pub fn new(parameter: ParamKind, enhancement: Enhancement) -> Result<Self> {
        let valid = match (&parameter, &enhancement) {
            (ParamKind::Principal | ParamKind::TrivialParam, Enhancement::Triv) => true,
            (ParamKind::Quadratic(_), Enhancement::Triv | Enhancement::Rho) => true,
            (ParamKind::Biquadratic(_), Enhancement::Four(i, j)) => *i <= 1 && *j <= 1,
            _ => false,
        };
        if !valid {
            return Err(Error::InvalidEnhancement(format!(
                "{} is not a character of the component group of {parameter:?}",
                enhancement.label()
            )));
        }
        Ok(EnhancedParam {
            parameter,
            enhancement,
        })
    }

    pub fn label(&self) -> String {
        match &self.parameter {
            ParamKind::Principal => format!("phi0({})", self.enhancement.label()),
            ParamKind::TrivialParam => format!("phi1({})", self.enhancement.label()),
            ParamKind::Quadratic(a) => format!("phi[{a}]({})", self.enhancement.label()),
            ParamKind::Biquadratic(w) => format!("phi[{w}]{}", self.enhancement.label()),
        }
    }
}

/// An L-packet (or a point's constituent set) with optional formal degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketDescriptor {
    pub constituents: Vec<String>,
    pub degrees: Option<Vec<BigRational>>,
    pub origin: PacketOrigin,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PacketOrigin {
    Bernstein(BernsteinPoint),
    Plane(PlaneDescriptor),
}

/// The 2-element principal-series packet of a nonzero coset.
pub fn principal_packet(a: &WpCoset) -> Result<PacketDescriptor> {
    if a.is_zero() {
        return Err(Error::ZeroCoset);
    }
    Ok(PacketDescriptor {
        constituents: vec![format!("pi[{a}]+"), format!("pi[{a}]-")],
        degrees: None,
        origin: PacketOrigin::Bernstein(BernsteinPoint::Quadratic(a.clone())),
    })
}

/// The 4-element supercuspidal packet of a plane; all constituents share
/// the canonical formal degree of the plane's break data.
pub fn supercuspidal_packet(w: &PlaneDescriptor, ctx: &FieldCtx) -> PacketDescriptor {
    let bd = classify_plane(w);
    let degree = formal_degree_default(&bd, ctx);
    let constituents = Enhancement::four_labels()
        .iter()
        .map(|e| {
            EnhancedParam::new(ParamKind::Biquadratic(w.clone()), *e)
                .expect("four labels fit the Klein group")
                .label()
                .replace("phi", "pi")
        })
        .collect();
    PacketDescriptor {
        constituents,
        degrees: Some(vec![degree; 4]),
        origin: PacketOrigin::Plane(w.clone()),
    }
}

/// Symbolic position of a W-fixed point on the folded circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberPosition {
    PlusOne,
    MinusOne,
}

impl FiberPosition {
    fn label(self) -> &'static str {
        match self {
            FiberPosition::PlusOne => "+1",
            FiberPosition::MinusOne => "-1",
        }
    }
}

/// Underlying space of one component of the tempered dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// A full circle with trivial isotropy everywhere.
    FreeCircle,
    /// The circle folded by z ↦ z⁻¹: an arc with doubled endpoints.
    FoldedArc,
}

/// A doubled endpoint of a folded arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPoint {
    pub position: FiberPosition,
    pub fiber: Vec<String>,
    /// Set when this point carries the topologically isolated Steinberg.
    pub isolated: bool,
    /// Temperedness of each fiber element, aligned with `fiber`.
    pub tempered: Vec<bool>,
    /// The name the component diagram attaches to the point.
    pub diagram_label: String,
}

/// Combinatorial shape of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentShape {
    pub topology: Topology,
    pub special_points: Vec<SpecialPoint>,
}

/// The extended quotient (T//W)₂ of the circle by z ↦ z⁻¹: a folded arc
/// with a double point over each of the two fixed points ±1.
pub fn extended_quotient_circle() -> ComponentShape {
    let point = |position: FiberPosition| SpecialPoint {
        fiber: vec![
            format!("({}, triv)", position.label()),
            format!("({}, rho)", position.label()),
        ],
        position,
        isolated: false,
        tempered: vec![true, true],
        diagram_label: format!("z={}", position.label()),
    };
    ComponentShape {
        topology: Topology::FoldedArc,
        special_points: vec![
            point(FiberPosition::PlusOne),
            point(FiberPosition::MinusOne),
        ],
    }
}

/// The commutative triangle of bijections at a Bernstein point: extended
/// quotient points, irreducible constituents, enhanced parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub eq_points: Vec<String>,
    pub irreps: Vec<String>,
    pub params: Vec<String>,
    pub eq_to_irrep: Vec<(String, String)>,
    pub eq_to_param: Vec<(String, String)>,
    pub irrep_to_param: Vec<(String, String)>,
}

impl Triangle {
    fn from_aligned(eq_points: Vec<String>, irreps: Vec<String>, params: Vec<String>) -> Self {
        let pair = |xs: &[String], ys: &[String]| {
            xs.iter()
                .cloned()
                .zip(ys.iter().cloned())
                .collect::<Vec<_>>()
        };
        Triangle {
            eq_to_irrep: pair(&eq_points, &irreps),
            eq_to_param: pair(&eq_points, &params),
            irrep_to_param: pair(&irreps, &params),
            eq_points,
            irreps,
            params,
        }
    }

    /// Checks that following eq → irrep → param equals eq → param.
    pub fn commutes(&self) -> bool {
        self.eq_to_irrep.iter().all(|(e, i)| {
            let via = self
                .irrep_to_param
                .iter()
                .find(|(i2, _)| i2 == i)
                .map(|(_, p)| p);
            let direct = self
                .eq_to_param
                .iter()
                .find(|(e2, _)| e2 == e)
                .map(|(_, p)| p);
            via.is_some() && via == direct
        })
    }
}

/// Builds the triangle at a Bernstein point.
///
/// * quadratic χ_a: two points (χ(x̟) = −1 under the normalization), the
///   packet π_a^±, the enhanced parameters φ_a(triv), φ_a(rho);
/// * trivial: the points (+1, triv), (+1, rho), the constituents {1, St},
///   the parameters φ₁(triv), φ₀(triv) — Steinberg pairs with φ₀ and rho;
/// * nonquadratic: singletons.
pub fn triangle(s: &BernsteinPoint) -> Triangle {
    match s {
        BernsteinPoint::Quadratic(a) => {
            assert!(!a.is_zero(), "Bernstein quadratic coset is nonzero");
            let params = vec![
                EnhancedParam::new(ParamKind::Quadratic(a.clone()), Enhancement::Triv)
                    .unwrap()
                    .label(),
                EnhancedParam::new(ParamKind::Quadratic(a.clone()), Enhancement::Rho)
                    .unwrap()
                    .label(),
            ];
            Triangle::from_aligned(
                vec!["(-1, triv)".into(), "(-1, rho)".into()],
                vec![format!("pi[{a}]+"), format!("pi[{a}]-")],
                params,
            )
        }
        BernsteinPoint::Trivial => {
            let params = vec![
                EnhancedParam::new(ParamKind::TrivialParam, Enhancement::Triv)
                    .unwrap()
                    .label(),
                EnhancedParam::new(ParamKind::Principal, Enhancement::Triv)
                    .unwrap()
                    .label(),
            ];
            Triangle::from_aligned(
                vec!["(+1, triv)".into(), "(+1, rho)".into()],
                vec!["1".into(), "St".into()],
                params,
            )
        }
        BernsteinPoint::Nonquadratic(tag) => Triangle::from_aligned(
            vec!["(z, triv)".into()],
            vec![format!("pi[{tag}]")],
            vec![format!("phi[{tag}](triv)")],
        ),
    }
}

/// The component of the tempered dual over a Bernstein point.
///
/// * nonquadratic: a free circle, no special points;
/// * quadratic χ_a: a folded arc with the packet of a over +1 and the
///   packet of a + a₀ (the unramified twist) over −1;
/// * trivial: a folded arc with {St, 1} over +1 (St isolated, 1 not
///   tempered) and the packet of a₀ over −1.
///
/// The coset a₀ itself names the unramified twist of the trivial
/// character, so its component is the trivial one.
pub fn component_of(s: &BernsteinPoint) -> ComponentShape {
    match s {
        BernsteinPoint::Nonquadratic(_) => ComponentShape {
            topology: Topology::FreeCircle,
            special_points: vec![],
        },
        BernsteinPoint::Quadratic(a) if *a == WpCoset::unramified() => {
            component_of(&BernsteinPoint::Trivial)
        }
        BernsteinPoint::Quadratic(a) => {
            let twist = a.add(&WpCoset::unramified());
            ComponentShape {
                topology: Topology::FoldedArc,
                special_points: vec![
                    SpecialPoint {
                        position: FiberPosition::PlusOne,
                        fiber: vec![format!("pi[{a}]+"), format!("pi[{a}]-")],
                        isolated: false,
                        tempered: vec![true, true],
                        diagram_label: format!("pi[{a}]"),
                    },
                    SpecialPoint {
                        position: FiberPosition::MinusOne,
                        fiber: vec![format!("pi[{twist}]+"), format!("pi[{twist}]-")],
                        isolated: false,
                        tempered: vec![true, true],
                        diagram_label: format!("pi[{twist}]"),
                    },
                ],
            }
        }
        BernsteinPoint::Trivial => {
            let eps = WpCoset::unramified();
            ComponentShape {
                topology: Topology::FoldedArc,
                special_points: vec![
                    SpecialPoint {
                        position: FiberPosition::PlusOne,
                        fiber: vec!["St".into(), "1".into()],
                        isolated: true,
                        tempered: vec![true, false],
                        diagram_label: "pi_1".into(),
                    },
                    SpecialPoint {
                        position: FiberPosition::MinusOne,
                        fiber: vec![format!("pi[{eps}]+"), format!("pi[{eps}]-")],
                        isolated: false,
                        tempered: vec![true, true],
                        diagram_label: format!("pi[{eps}]"),
                    },
                ],
            }
        }
    }
}

/// Census counts for the spectrum truncated at break nmax.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub field: FieldInfo,
    pub nmax: u64,
    pub dim: u64,
    pub quadratic_cosets: u64,
    pub principal_arcs: u64,
    pub double_points: u64,
    pub supercuspidal_isolated_points: u64,
    pub tallies: Vec<CensusTally>,
}

/// The truncated tempered-dual census: arcs, supercuspidal packets and the
/// derived counts.
#[derive(Debug, Clone)]
pub struct SpectrumCensus {
    pub field: FieldInfo,
    pub nmax: u64,
    pub dim: u64,
    /// Arc 0 is the trivial component; the rest are quadratic components
    /// ordered by their +1 coset.
    pub arcs: Vec<ComponentShape>,
    pub sc_packets: Vec<PacketDescriptor>,
    pub tallies: Vec<CensusTally>,
}

/// Assembles the spectrum truncated to cosets of V_nmax.
pub fn spectrum_census(ctx: &FieldCtx, nmax: u64) -> Result<SpectrumCensus> {
    let base = census(ctx, nmax)?;
    let d = base.dim;

    // nonzero cosets of V_nmax, paired under the unramified twist a ↦ a+a₀
    let basis = vn_basis(ctx, nmax);
    let mut cosets: BTreeSet<WpCoset> = BTreeSet::new();
    for mask in 1u64..(1 << d) {
        let mut acc = WpCoset::zero();
        for (i, b) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = acc.add(b);
            }
        }
        cosets.insert(acc);
    }
    debug_assert_eq!(cosets.len() as u64, (1 << d) - 1);

    let unramified = WpCoset::unramified();
    let mut arcs = vec![component_of(&BernsteinPoint::Trivial)];
    let mut seen: BTreeSet<WpCoset> = BTreeSet::new();
    for a in &cosets {
        if *a == unramified || seen.contains(a) {
            continue;
        }
        let twist = a.add(&unramified);
        let rep = if *a < twist { a.clone() } else { twist.clone() };
        seen.insert(a.clone());
        seen.insert(twist);
        arcs.push(component_of(&BernsteinPoint::Quadratic(rep)));
    }

    let sc_packets: Vec<PacketDescriptor> = enumerate_planes(ctx, nmax)?
        .map(|w| supercuspidal_packet(&w, ctx))
        .collect();

    Ok(SpectrumCensus {
        field: base.field,
        nmax,
        dim: d,
        arcs,
        sc_packets,
        tallies: base.tallies,
    })
}

impl SpectrumCensus {
    pub fn report(&self) -> SpectrumReport {
        let d = self.dim;
        SpectrumReport {
            field: self.field.clone(),
            nmax: self.nmax,
            dim: d,
            quadratic_cosets: (1 << d) - 1,
            principal_arcs: 1 + ((1u64 << d) - 2) / 2,
            double_points: (1 << d) - 1,
            supercuspidal_isolated_points: 4 * gaussian_plane_count(d),
            tallies: self.tallies.clone(),
        }
    }
}

/// Renders the census as a deterministic DOT graph: one node chain per
/// arc, doubled nodes for packets, the Steinberg node alone flagged
/// isolated, and four standalone nodes per supercuspidal packet. The
/// non-tempered trivial representation stays in the picture attached by a
/// dashed edge.
pub fn render_spectrum(census: &SpectrumCensus) -> String {
    let mut dot = String::new();
    let _ = writeln!(dot, "graph tempered_dual {{");
    let _ = writeln!(
        dot,
        "  label=\"f={} nmax={} dim={}\";",
        census.field.f, census.nmax, census.dim
    );
    let _ = writeln!(dot, "  node [shape=circle];");
    for (i, arc) in census.arcs.iter().enumerate() {
        let _ = writeln!(dot, "  subgraph arc_{i} {{");
        match arc.topology {
            Topology::FreeCircle => {
                let _ = writeln!(dot, "    \"arc{i}.o\" [label=\"T\", shape=doublecircle];");
            }
            Topology::FoldedArc => {
                let _ = writeln!(dot, "    \"arc{i}.mid\" [label=\"\", shape=point];");
                for p in &arc.special_points {
                    let side = match p.position {
                        FiberPosition::PlusOne => "plus",
                        FiberPosition::MinusOne => "minus",
                    };
                    for (j, name) in p.fiber.iter().enumerate() {
                        let id = format!("arc{i}.{side}.{j}");
                        let mut attrs = format!("label=\"{name}\"");
                        let is_isolated = p.isolated && p.tempered[j];
                        if is_isolated {
                            attrs.push_str(", isolated=\"true\", color=red");
                        }
                        if !p.tempered[j] {
                            attrs.push_str(", tempered=\"false\", style=dashed");
                        }
                        let _ = writeln!(dot, "    \"{id}\" [{attrs}];");
                        if !is_isolated {
                            let style = if p.tempered[j] { "" } else { " [style=dashed]" };
                            let _ = writeln!(dot, "    \"arc{i}.mid\" -- \"{id}\"{style};");
                        }
                    }
                }
            }
        }
        let _ = writeln!(dot, "  }}");
    }
    for (k, packet) in census.sc_packets.iter().enumerate() {
        let _ = writeln!(dot, "  subgraph packet_{k} {{");
        let degrees = packet.degrees.as_ref();
        for (j, name) in packet.constituents.iter().enumerate() {
            let deg = degrees
                .map(|ds| crate::ramify::rational_string(&ds[j]))
                .unwrap_or_default();
            let _ = writeln!(
                dot,
                "    \"sc{k}.{j}\" [label=\"{name}\", degree=\"{deg}\"];"
            );
        }
        let _ = writeln!(dot, "  }}");
    }
    let _ = writeln!(dot, "}}");
    dot
}
