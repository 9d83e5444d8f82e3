//! Canonical JSON reports. Every number is an exact string, keys are sorted.

use serde::{Deserialize, Serialize};

use crate::arith::{rat_str, Int, Rat};
use crate::atlas::{
    enumerate_walls, locate_chamber, wall_order_key, walls_exist, BoundaryEnd, ChamberSide, Codim, NoWallReason,
    Wall, WallExistence, Window,
};
use crate::charge::{StabilityPoint, WallGeometry};
use crate::cones::{
    boundary_rays, exceptional_data, hilbert_birational, markman_classify, movable_rays, nef_rays, trichotomy,
    ConeRay, HilbertWitness, MovableKind, MovableSide, RayClass, RayKind, TrichotomyCertificate,
};
use crate::error::{Error, Result};
use crate::lattice::{MukaiVector, SurfaceLattice};
use crate::sym2::{stabilizer_generator, Stabilizer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasReport {
    pub certificates: Certificates,
    pub chambers: Option<Chambers>,
    pub cones: Option<Cones>,
    pub input: InputEcho,
    pub walls: Option<Vec<WallEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub bound: Option<String>,
    pub n: String,
    pub v: String,
    pub window: Option<WindowEcho>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEcho {
    pub s_hi: String,
    pub s_lo: String,
    pub t2_hi: String,
    pub t2_lo: String,
}

impl WindowEcho {
    pub fn from_window(w: &Window) -> Self {
        WindowEcho { s_hi: rat_str(&w.s_hi), s_lo: rat_str(&w.s_lo), t2_hi: rat_str(&w.t2_hi), t2_lo: rat_str(&w.t2_lo) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geometry {
    /// "line", "circle" or "empty"
    pub kind: String,
    pub center: Option<String>,
    pub radius2: Option<String>,
    pub s0: Option<String>,
}

impl Geometry {
    fn of(g: &WallGeometry) -> Self {
        match g {
            WallGeometry::Line { s0 } => {
                Geometry { kind: "line".into(), center: None, radius2: None, s0: Some(rat_str(s0)) }
            }
            WallGeometry::Circle { center, radius2 } => Geometry {
                kind: "circle".into(),
                center: Some(rat_str(center)),
                radius2: Some(rat_str(radius2)),
                s0: None,
            },
            WallGeometry::Empty => Geometry { kind: "empty".into(), center: None, radius2: None, s0: None },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallEntry {
    pub codim: String,
    /// the isotropic classes of the decomposition, if any
    pub codim_classes: Vec<String>,
    pub geometry: Geometry,
    pub pqr: [String; 3],
    pub witnesses: Vec<String>,
}

impl WallEntry {
    fn of(w: &Wall) -> Self {
        let codim_classes = match &w.codim {
            Codim::Codim0 { v1, v2 } => vec![v1.to_string(), v2.to_string()],
            Codim::Codim1 { v1 } => vec![v1.to_string()],
            Codim::Higher => vec![],
        };
        WallEntry {
            codim: w.codim.tag().into(),
            codim_classes,
            geometry: Geometry::of(&w.geometry),
            pqr: w.pqr.0.clone().map(|x| x.to_string()),
            witnesses: w.witnesses.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chambers {
    /// walls in the window as "(P,Q,R)", ordered along the ray space from s₋ to s₊
    pub order: Vec<String>,
    pub probe: String,
    /// "(P,Q,R)" of the bounding wall or "boundary:lower"/"boundary:upper"
    pub left: Option<String>,
    pub right: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayEntry {
    pub class: String,
    pub kind: String,
    pub lambda: Option<String>,
}

impl RayEntry {
    fn of(r: &ConeRay) -> Self {
        let class = match &r.class {
            RayClass::Rational(m) => m.to_string(),
            RayClass::Quadratic(e) => {
                format!("({})", e.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            }
        };
        let kind = match r.kind {
            RayKind::WallRay => "wall",
            RayKind::BoundaryRay => "boundary",
        };
        RayEntry { class, kind: kind.into(), lambda: r.lambda.as_ref().map(ToString::to_string) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovableEntry {
    pub kind: String,
    pub ray: RayEntry,
    pub u: Option<String>,
}

impl MovableEntry {
    fn of(m: &MovableSide) -> Self {
        let kind = match m.kind {
            MovableKind::IsotropicPairing1 => "isotropic_pairing_1",
            MovableKind::IsotropicPairing2 => "isotropic_pairing_2",
            MovableKind::PositiveConeBoundary => "positive_cone_boundary",
        };
        MovableEntry { kind: kind.into(), ray: RayEntry::of(&m.ray), u: m.u.as_ref().map(ToString::to_string) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrichotomyEntry {
    pub case: String,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cones {
    pub boundary: Option<[RayEntry; 2]>,
    /// per-section failures; the other fields are still filled where possible
    pub errors: Vec<String>,
    pub lagrangian: Option<bool>,
    pub movable: Option<[MovableEntry; 2]>,
    pub nef: Option<[RayEntry; 2]>,
    pub probe: Option<String>,
    pub s_minus: Option<String>,
    pub s_plus: Option<String>,
    pub trichotomy: Option<TrichotomyEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertEntry {
    pub answer: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkmanEntry {
    pub case: String,
    pub class: String,
    pub div: String,
    pub rho: String,
    pub rs: [String; 2],
    pub sigma: String,
    pub spe: bool,
    /// the isotropic u the class was derived from, if any
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerEntry {
    pub epsilon: Option<String>,
    pub fixed_points: Option<[String; 2]>,
    pub generator: Option<String>,
    /// g·v, which must equal v
    pub image_of_v: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Certificates {
    pub hilbert_birational: Option<HilbertEntry>,
    pub markman: Option<Vec<MarkmanEntry>>,
    pub stabilizer: Option<StabilizerEntry>,
    pub walls_exist: Option<String>,
}

impl AtlasReport {
    pub fn new(n: &Int, v: &MukaiVector, window: Option<&Window>, bound: Option<&Int>) -> Self {
        AtlasReport {
            certificates: Certificates::default(),
            chambers: None,
            cones: None,
            input: InputEcho {
                bound: bound.map(ToString::to_string),
                n: n.to_string(),
                v: v.to_string(),
                window: window.map(WindowEcho::from_window),
            },
            walls: None,
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json's Value map is ordered by key
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn existence_str(e: &WallExistence) -> String {
    match e {
        WallExistence::NoWallCertified(NoWallReason::PairingGcd { g }) => format!("NoWallCertified(pairing gcd {g})"),
        WallExistence::NoWallCertified(NoWallReason::FundamentalDomain) => {
            "NoWallCertified(fundamental domain)".into()
        }
        WallExistence::WallFound(w) => format!("WallFound{w}"),
        WallExistence::UndecidedUpTo(b) => format!("UndecidedUpTo({b})"),
    }
}

fn side_str(s: &ChamberSide) -> String {
    match s {
        ChamberSide::Wall(w) => w.pqr.to_string(),
        ChamberSide::Boundary(BoundaryEnd::Lower) => "boundary:lower".into(),
        ChamberSide::Boundary(BoundaryEnd::Upper) => "boundary:upper".into(),
    }
}

/// (s, t²), or if that lies on a wall the first of s + w/2³, s + w/2⁴, ...
/// that does not.
pub fn default_probe(l: &SurfaceLattice, v: &MukaiVector, s: Rat, t2: Rat, width: &Rat) -> Result<StabilityPoint> {
    let mut step = width / Rat::from_integer(8.into());
    let mut cand = s.clone();
    for _ in 0..32 {
        let p = StabilityPoint::rank_one(cand.clone(), t2.clone());
        match locate_chamber(l, v, &p) {
            Err(Error::OnWall { .. }) => {}
            Err(e) => return Err(e),
            Ok(_) => return Ok(p),
        }
        cand = &s + &step;
        step /= Rat::from_integer(2.into());
    }
    Ok(StabilityPoint::rank_one(s, t2))
}

/// Walls in the window, their codimension tags, the chamber of a probe
/// point and the existence certificate. Returns whether existence stayed
/// undecided.
pub fn fill_walls(
    rep: &mut AtlasReport,
    l: &SurfaceLattice,
    v: &MukaiVector,
    win: &Window,
    probe: Option<&StabilityPoint>,
    bound: Option<&Int>,
) -> Result<bool> {
    let mut walls = enumerate_walls(l, v, win)?;
    walls.sort_by(|a, b| a.pqr.cmp(&b.pqr));
    let existence = walls_exist(l, v, bound)?;
    rep.certificates.walls_exist = Some(existence_str(&existence));
    let mut keyed = walls.iter().map(|w| Ok((wall_order_key(l, v, w)?, w.pqr.to_string()))).collect::<Result<Vec<_>>>()?;
    keyed.sort();
    let p = match probe {
        Some(p) => p.clone(),
        None => {
            let (s, t2) = win.center();
            default_probe(l, v, s, t2, &(&win.s_hi - &win.s_lo))?
        }
    };
    let (left, right, error) = match locate_chamber(l, v, &p) {
        Ok(ch) => (Some(side_str(&ch.left)), Some(side_str(&ch.right)), None),
        Err(e @ Error::OnWall { .. }) => (None, None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    rep.chambers = Some(Chambers { order: keyed.into_iter().map(|k| k.1).collect(), probe: p.to_string(), left, right, error });
    rep.walls = Some(walls.iter().map(WallEntry::of).collect());
    Ok(matches!(existence, WallExistence::UndecidedUpTo(_)))
}

fn certificate_str(c: &TrichotomyCertificate) -> String {
    match c {
        TrichotomyCertificate::Isotropic { u } => format!("isotropic class {u}"),
        TrichotomyCertificate::PairingGcd { g } => format!("pairing gcd {g}"),
        TrichotomyCertificate::NonRepresentation => "no representation of 1 or 2".into(),
    }
}

/// s±, boundary rays, trichotomy, movable and nef rays at the probe, and
/// the Hilbert criterion. Failures of single sections are recorded in
/// `cones.errors`.
pub fn fill_cones(rep: &mut AtlasReport, l: &SurfaceLattice, v: &MukaiVector, probe: &StabilityPoint) {
    let mut c = Cones {
        boundary: None,
        errors: vec![],
        lagrangian: None,
        movable: None,
        nef: None,
        probe: Some(probe.to_string()),
        s_minus: None,
        s_plus: None,
        trichotomy: None,
    };
    let mut errors = Vec::new();
    match boundary_rays(l, v) {
        Ok(b) => {
            c.s_minus = Some(b.s_minus.to_string());
            c.s_plus = Some(b.s_plus.to_string());
            c.lagrangian = Some(b.rational);
            c.boundary = Some([RayEntry::of(&b.lower), RayEntry::of(&b.upper)]);
        }
        Err(e) => errors.push(section_error("boundary", e)),
    }
    match trichotomy(l, v) {
        Ok(t) => {
            c.trichotomy = Some(TrichotomyEntry { case: t.case.to_string(), certificate: certificate_str(&t.certificate) })
        }
        Err(e) => errors.push(section_error("trichotomy", e)),
    }
    match movable_rays(l, v, probe) {
        Ok(m) => c.movable = Some([MovableEntry::of(&m.lower), MovableEntry::of(&m.upper)]),
        Err(e) => errors.push(section_error("movable", e)),
    }
    match nef_rays(l, v, probe) {
        Ok((a, b)) => c.nef = Some([RayEntry::of(&a), RayEntry::of(&b)]),
        Err(e) => errors.push(section_error("nef", e)),
    }
    match hilbert_birational(l, v) {
        Ok(h) => {
            let witness = h.witness.map(|w| match w {
                HilbertWitness::Form { x, y, value } => format!("x={x}, y={y}, value={value}"),
                HilbertWitness::Isotropic(u) => format!("isotropic class {u}"),
            });
            rep.certificates.hilbert_birational = Some(HilbertEntry { answer: h.answer, witness });
        }
        Err(e) => errors.push(section_error("hilbert_birational", e)),
    }
    c.errors = errors;
    rep.cones = Some(c);
}

fn section_error(section: &str, e: Error) -> String {
    format!("{section}: {e}")
}

pub fn fill_stabilizer(rep: &mut AtlasReport, l: &SurfaceLattice, v: &MukaiVector) -> Result<()> {
    let entry = match stabilizer_generator(l, v)? {
        Stabilizer::Infinite(g) => StabilizerEntry {
            epsilon: Some(g.epsilon().to_string()),
            fixed_points: g.fixed_points().map(|(a, b)| [a.to_string(), b.to_string()]),
            generator: Some(g.to_string()),
            image_of_v: Some(crate::sym2::act_on_mukai(l, v, &g)?.to_string()),
        },
        Stabilizer::Finite => StabilizerEntry { epsilon: None, fixed_points: None, generator: None, image_of_v: None },
    };
    rep.certificates.stabilizer = Some(entry);
    Ok(())
}

/// Markman invariants of the supplied classes, or when none are given of
/// the classes d_u for the smallest u in 𝔉I₁ and 𝔉I₂.
pub fn fill_markman(rep: &mut AtlasReport, l: &SurfaceLattice, v: &MukaiVector, classes: &[MukaiVector]) -> Result<()> {
    let mut pairs: Vec<(MukaiVector, Option<MukaiVector>)> = classes.iter().map(|e| (e.clone(), None)).collect();
    if classes.is_empty() {
        for k in [1u32, 2] {
            let found = crate::cones::isotropic_with_pairing(l, v, k, &Int::from(crate::cones::DEFAULT_CLASS_BOUND))?;
            if let Some(u) = found.classes.iter().min_by_key(|u| crate::atlas::witness_key(&u.triple().unwrap())) {
                pairs.push((exceptional_data(l, v, u)?.d_u, Some(u.clone())));
            }
        }
    }
    let mut out = Vec::new();
    for (e, src) in pairs {
        let m = markman_classify(l, &e, v)?;
        out.push(MarkmanEntry {
            case: m.case.tag().into(),
            class: e.to_string(),
            div: m.div.to_string(),
            rho: m.rho.to_string(),
            rs: [m.rs.0.to_string(), m.rs.1.to_string()],
            sigma: m.sigma.to_string(),
            spe: m.spe,
            source: src.map(|u| u.to_string()),
        });
    }
    rep.certificates.markman = Some(out);
    Ok(())
}
