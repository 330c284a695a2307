//! Pants decompositions, markings, Fenchel-Nielsen points and curve systems.
//!
//! Curves are indexed by [`CurveId`], a position in the decomposition's
//! curve list. Internal curves carry a length and a twist; boundary curves
//! carry only a length. Curve systems are stored per pants curve as an
//! intersection number, an integer twist offset and, for curves disjoint from
//! the pants curve, a count of parallel core copies.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("surface of genus {genus} with {punctures} punctures and {boundary} boundary components is not hyperbolic")]
    NotHyperbolic {
        genus: u32,
        punctures: u32,
        boundary: u32,
    },
    #[error("expected {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("curve {0} does not exist")]
    UnknownCurve(usize),
    #[error("duplicate curve name {0:?}")]
    DuplicateCurve(String),
    #[error("pants end {end} refers to curve {curve:?} with the wrong kind or side")]
    BadEnd { end: String, curve: String },
    #[error("curve {curve:?} must appear {expected}, found {found} pants ends")]
    DanglingEnd {
        curve: String,
        expected: &'static str,
        found: usize,
    },
    #[error("pants graph is disconnected")]
    Disconnected,
    #[error("seam matching for curve {0:?} is missing")]
    MissingSeam(String),
    #[error("seam matching for curve {0:?} given more than once")]
    DuplicateSeam(String),
    #[error("seam matching for curve {0:?} is not a bijection")]
    SeamNotBijective(String),
    #[error("seam matching given for boundary curve {0:?}")]
    SeamOnBoundary(String),
    #[error("invalid length {value} for curve {curve:?}")]
    InvalidLength { curve: String, value: f64 },
    #[error("invalid twist {value} for curve {curve:?}")]
    InvalidTwist { curve: String, value: f64 },
    #[error("curve {0:?} is a boundary curve and cannot be twisted or pinched")]
    BoundaryCurve(String),
    #[error("arc endpoints in pants {0:?} do not pair up (odd total intersection)")]
    Parity(String),
    #[error("curve system entry for {curve:?} is inconsistent: {reason}")]
    InconsistentEntry { curve: String, reason: &'static str },
    #[error("curve system does not cross {0:?}; its twist is undefined")]
    TwistUndefined(String),
}

/// Topological type of a connected surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub punctures: u32,
    pub boundary: u32,
}

impl SurfaceSpec {
    pub fn new(genus: u32, punctures: u32, boundary: u32) -> Result<Self, SurfaceError> {
        let spec = Self {
            genus,
            punctures,
            boundary,
        };
        if spec.euler_characteristic() >= 0 {
            return Err(SurfaceError::NotHyperbolic {
                genus,
                punctures,
                boundary,
            });
        }
        Ok(spec)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64 - self.boundary as i64
    }

    /// Number of internal curves in any pants decomposition, `3g − 3 + p + b`.
    pub fn internal_curve_count(&self) -> usize {
        (3 * self.genus as i64 - 3 + self.punctures as i64 + self.boundary as i64) as usize
    }

    pub fn pants_count(&self) -> usize {
        (-self.euler_characteristic()) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveId(pub usize);

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Internal,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsCurve {
    pub name: String,
    pub kind: CurveKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Plus,
    Minus,
}

/// One of the three ends of a pair of pants. Boundary curves are attached
/// with [`Side::Plus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PantsEnd {
    Curve { curve: CurveId, side: Side },
    Puncture,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pants {
    pub name: String,
    pub ends: [PantsEnd; 3],
}

/// A validated pants decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct PantsDecomposition {
    curves: Vec<PantsCurve>,
    pants: Vec<Pants>,
    // (pants index, end index) for the plus and minus side of each curve
    attachments: Vec<[Option<(usize, usize)>; 2]>,
}

impl PantsDecomposition {
    pub fn new(curves: Vec<PantsCurve>, pants: Vec<Pants>) -> Result<Self, SurfaceError> {
        let mut seen = BTreeSet::new();
        for c in &curves {
            if !seen.insert(c.name.as_str()) {
                return Err(SurfaceError::DuplicateCurve(c.name.clone()));
            }
        }
        let mut attachments = vec![[None, None]; curves.len()];
        let mut counts = vec![[0usize; 2]; curves.len()];
        for (pi, p) in pants.iter().enumerate() {
            for (ei, end) in p.ends.iter().enumerate() {
                if let PantsEnd::Curve { curve, side } = *end {
                    let c = curves
                        .get(curve.0)
                        .ok_or(SurfaceError::UnknownCurve(curve.0))?;
                    if c.kind == CurveKind::Boundary && side == Side::Minus {
                        return Err(SurfaceError::BadEnd {
                            end: format!("{}[{}]", p.name, ei),
                            curve: c.name.clone(),
                        });
                    }
                    let s = side as usize;
                    counts[curve.0][s] += 1;
                    attachments[curve.0][s] = Some((pi, ei));
                }
            }
        }
        for (c, n) in curves.iter().zip(&counts) {
            let ok = match c.kind {
                CurveKind::Internal => n[0] == 1 && n[1] == 1,
                CurveKind::Boundary => n[0] == 1 && n[1] == 0,
            };
            if !ok {
                return Err(SurfaceError::DanglingEnd {
                    curve: c.name.clone(),
                    expected: match c.kind {
                        CurveKind::Internal => "once on each side",
                        CurveKind::Boundary => "exactly once",
                    },
                    found: n[0] + n[1],
                });
            }
        }
        Ok(Self {
            curves,
            pants,
            attachments,
        })
    }

    pub fn curves(&self) -> &[PantsCurve] {
        &self.curves
    }

    pub fn pants(&self) -> &[Pants] {
        &self.pants
    }

    pub fn curve(&self, id: CurveId) -> Result<&PantsCurve, SurfaceError> {
        self.curves.get(id.0).ok_or(SurfaceError::UnknownCurve(id.0))
    }

    pub fn curve_ids(&self) -> impl Iterator<Item = CurveId> + '_ {
        (0..self.curves.len()).map(CurveId)
    }

    pub fn internal_curves(&self) -> impl Iterator<Item = CurveId> + '_ {
        self.curve_ids()
            .filter(|&id| self.curves[id.0].kind == CurveKind::Internal)
    }

    pub fn find_curve(&self, name: &str) -> Option<CurveId> {
        self.curves.iter().position(|c| c.name == name).map(CurveId)
    }

    /// Pants containing the given side of a curve.
    pub fn attachment(&self, id: CurveId, side: Side) -> Option<(usize, usize)> {
        self.attachments.get(id.0).and_then(|a| a[side as usize])
    }

    /// The two pants glued along an internal curve (possibly equal).
    pub fn adjacent_pants(&self, id: CurveId) -> Option<(usize, usize)> {
        match self.attachments.get(id.0)? {
            [Some((a, _)), Some((b, _))] => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn puncture_count(&self) -> usize {
        self.pants
            .iter()
            .flat_map(|p| p.ends.iter())
            .filter(|e| matches!(e, PantsEnd::Puncture))
            .count()
    }

    /// Connected components of the pants graph after cutting along `cut`.
    /// Components are listed by increasing smallest pants index.
    pub fn components_without(&self, cut: &BTreeSet<CurveId>) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.pants.len()).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for id in self.internal_curves() {
            if cut.contains(&id) {
                continue;
            }
            if let Some((a, b)) = self.adjacent_pants(id) {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.pants.len()];
        for p in 0..self.pants.len() {
            let r = root(&mut parent, p);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(p);
        }
        groups
    }
}

/// Pairing of seam endpoints across an internal curve: the seam endpoint
/// `k` on the plus side continues as endpoint `pairing[k]` on the minus side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeamMatching {
    pub pairing: [usize; 2],
}

/// A pants decomposition together with seam data.
#[derive(Debug, Clone, PartialEq)]
pub struct Marking {
    spec: Option<SurfaceSpec>,
    euler_characteristic: i64,
    decomposition: PantsDecomposition,
    seams: Vec<Option<SeamMatching>>,
}

/// Validates a decomposition and its seams against a surface type.
pub fn build_marking(
    spec: SurfaceSpec,
    decomposition: PantsDecomposition,
    seams: &[(CurveId, SeamMatching)],
) -> Result<Marking, SurfaceError> {
    let internal = decomposition.internal_curves().count();
    let boundary = decomposition.curves().len() - internal;
    let checks = [
        ("internal curves", spec.internal_curve_count(), internal),
        ("boundary curves", spec.boundary as usize, boundary),
        ("pants", spec.pants_count(), decomposition.pants().len()),
        ("punctures", spec.punctures as usize, decomposition.puncture_count()),
    ];
    for (what, expected, found) in checks {
        if expected != found {
            return Err(SurfaceError::CountMismatch {
                what,
                expected,
                found,
            });
        }
    }
    if decomposition.components_without(&BTreeSet::new()).len() != 1 {
        return Err(SurfaceError::Disconnected);
    }
    let seams = validate_seams(&decomposition, seams)?;
    Ok(Marking {
        spec: Some(spec),
        euler_characteristic: spec.euler_characteristic(),
        decomposition,
        seams,
    })
}

fn validate_seams(
    decomposition: &PantsDecomposition,
    seams: &[(CurveId, SeamMatching)],
) -> Result<Vec<Option<SeamMatching>>, SurfaceError> {
    let mut out = vec![None; decomposition.curves().len()];
    for (id, m) in seams {
        let c = decomposition.curve(*id)?;
        if c.kind == CurveKind::Boundary {
            return Err(SurfaceError::SeamOnBoundary(c.name.clone()));
        }
        let [a, b] = m.pairing;
        if a > 1 || b > 1 || a == b {
            return Err(SurfaceError::SeamNotBijective(c.name.clone()));
        }
        if out[id.0].replace(*m).is_some() {
            return Err(SurfaceError::DuplicateSeam(c.name.clone()));
        }
    }
    for id in decomposition.internal_curves() {
        if out[id.0].is_none() {
            return Err(SurfaceError::MissingSeam(
                decomposition.curves()[id.0].name.clone(),
            ));
        }
    }
    Ok(out)
}

impl Marking {
    /// Surface type, absent for disconnected noded surfaces.
    pub fn spec(&self) -> Option<SurfaceSpec> {
        self.spec
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler_characteristic
    }

    pub fn decomposition(&self) -> &PantsDecomposition {
        &self.decomposition
    }

    pub fn seam(&self, id: CurveId) -> Option<SeamMatching> {
        self.seams.get(id.0).copied().flatten()
    }

    pub fn curve_count(&self) -> usize {
        self.decomposition.curves().len()
    }

    pub fn curve_name(&self, id: CurveId) -> &str {
        &self.decomposition.curves()[id.0].name
    }

    pub fn is_internal(&self, id: CurveId) -> Result<bool, SurfaceError> {
        Ok(self.decomposition.curve(id)?.kind == CurveKind::Internal)
    }

    /// The marking of the noded surface obtained by pinching `gamma`: each
    /// pinched curve becomes a pair of punctures. Returns the new marking and
    /// the original id of every surviving curve, in order.
    pub fn pinch(&self, gamma: &BTreeSet<CurveId>) -> Result<(Marking, Vec<CurveId>), SurfaceError> {
        for &id in gamma {
            if !self.is_internal(id)? {
                return Err(SurfaceError::BoundaryCurve(self.curve_name(id).to_owned()));
            }
        }
        let kept: Vec<CurveId> = self
            .decomposition
            .curve_ids()
            .filter(|id| !gamma.contains(id))
            .collect();
        let mut renumber = vec![None; self.curve_count()];
        for (new, old) in kept.iter().enumerate() {
            renumber[old.0] = Some(CurveId(new));
        }
        let curves = kept
            .iter()
            .map(|id| self.decomposition.curves()[id.0].clone())
            .collect();
        let pants = self
            .decomposition
            .pants()
            .iter()
            .map(|p| Pants {
                name: p.name.clone(),
                ends: p.ends.map(|e| match e {
                    PantsEnd::Curve { curve, side } => match renumber[curve.0] {
                        Some(id) => PantsEnd::Curve { curve: id, side },
                        None => PantsEnd::Puncture,
                    },
                    PantsEnd::Puncture => PantsEnd::Puncture,
                }),
            })
            .collect();
        let decomposition = PantsDecomposition::new(curves, pants)?;
        let seams = kept.iter().map(|id| self.seams[id.0]).collect();
        let connected = decomposition.components_without(&BTreeSet::new()).len() == 1;
        let spec = self.spec.and_then(|s| {
            let punctures = s.punctures + 2 * gamma.len() as u32;
            let twice_genus =
                2 - self.euler_characteristic - punctures as i64 - s.boundary as i64;
            (connected && twice_genus >= 0 && twice_genus % 2 == 0).then_some(SurfaceSpec {
                genus: (twice_genus / 2) as u32,
                punctures,
                boundary: s.boundary,
            })
        });
        Ok((
            Marking {
                spec,
                euler_characteristic: self.euler_characteristic,
                decomposition,
                seams,
            },
            kept,
        ))
    }
}

/// A Fenchel-Nielsen twist `s` split as `turns + frac` with `frac ∈ [0, 1)`.
///
/// Dehn twists change `turns` only, so integer shifts are exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twist {
    turns: i64,
    frac: f64,
}

impl Twist {
    pub const ZERO: Twist = Twist { turns: 0, frac: 0.0 };

    pub fn from_f64(s: f64) -> Option<Self> {
        if !s.is_finite() || s.abs() >= 9.0e15 {
            return None;
        }
        let turns = s.floor();
        Some(Self {
            turns: turns as i64,
            frac: s - turns,
        })
    }

    pub fn value(&self) -> f64 {
        self.turns as f64 + self.frac
    }

    pub fn turns(&self) -> i64 {
        self.turns
    }

    pub fn frac(&self) -> f64 {
        self.frac
    }

    pub fn shifted(self, power: i64) -> Self {
        Self {
            turns: self.turns + power,
            frac: self.frac,
        }
    }

    /// `self − other`, exact whenever the fractional parts agree.
    pub fn difference(&self, other: &Twist) -> f64 {
        (self.turns - other.turns) as f64 + (self.frac - other.frac)
    }
}

/// A point of Teichmüller space in Fenchel-Nielsen coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct FNPoint {
    lengths: Vec<f64>,
    twists: Vec<Twist>,
}

impl FNPoint {
    /// `twists` are dimensionless fractions of the curve length; boundary
    /// curves must have twist zero.
    pub fn new(marking: &Marking, lengths: Vec<f64>, twists: Vec<f64>) -> Result<Self, SurfaceError> {
        let n = marking.curve_count();
        for (what, found) in [("lengths", lengths.len()), ("twists", twists.len())] {
            if found != n {
                return Err(SurfaceError::CountMismatch {
                    what,
                    expected: n,
                    found,
                });
            }
        }
        let mut tw = Vec::with_capacity(n);
        for (i, (&l, &s)) in lengths.iter().zip(&twists).enumerate() {
            let name = || marking.curve_name(CurveId(i)).to_owned();
            if !(l > 0.0 && l.is_finite()) {
                return Err(SurfaceError::InvalidLength {
                    curve: name(),
                    value: l,
                });
            }
            let internal = marking.is_internal(CurveId(i))?;
            let t = Twist::from_f64(s)
                .filter(|_| internal || s == 0.0)
                .ok_or_else(|| SurfaceError::InvalidTwist {
                    curve: name(),
                    value: s,
                })?;
            tw.push(t);
        }
        Ok(Self { lengths, twists: tw })
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn twists(&self) -> &[Twist] {
        &self.twists
    }

    pub fn length(&self, id: CurveId) -> Result<f64, SurfaceError> {
        self.lengths
            .get(id.0)
            .copied()
            .ok_or(SurfaceError::UnknownCurve(id.0))
    }

    pub fn twist(&self, id: CurveId) -> Result<Twist, SurfaceError> {
        self.twists
            .get(id.0)
            .copied()
            .ok_or(SurfaceError::UnknownCurve(id.0))
    }

    /// Builds a point from already validated parts; used when deleting or
    /// re-inserting coordinates.
    pub(crate) fn from_parts(lengths: Vec<f64>, twists: Vec<Twist>) -> Self {
        Self { lengths, twists }
    }

    /// Replaces the length of a curve, keeping everything else.
    pub fn with_length(&self, id: CurveId, length: f64) -> Result<Self, SurfaceError> {
        self.length(id)?;
        if !(length > 0.0 && length.is_finite()) {
            return Err(SurfaceError::InvalidLength {
                curve: id.to_string(),
                value: length,
            });
        }
        let mut out = self.clone();
        out.lengths[id.0] = length;
        Ok(out)
    }
}

/// Applies `power` Dehn twists about internal curve `j`: `s_j ↦ s_j + power`.
pub fn fn_dehn_twist(
    marking: &Marking,
    sigma: &FNPoint,
    j: CurveId,
    power: i64,
) -> Result<FNPoint, SurfaceError> {
    if !marking.is_internal(j)? {
        return Err(SurfaceError::BoundaryCurve(marking.curve_name(j).to_owned()));
    }
    let mut out = sigma.clone();
    out.twists[j.0] = sigma.twist(j)?.shifted(power);
    Ok(out)
}

/// Coordinates of a curve system relative to one pants curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CurveEntry {
    pub intersection: u64,
    pub twist_offset: i64,
    pub core_copies: u64,
}

impl CurveEntry {
    pub fn crossing(intersection: u64, twist_offset: i64) -> Self {
        Self {
            intersection,
            twist_offset,
            core_copies: 0,
        }
    }

    pub fn core(copies: u64) -> Self {
        Self {
            intersection: 0,
            twist_offset: 0,
            core_copies: copies,
        }
    }
}

/// A multicurve in intersection/twist coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSystem {
    entries: Vec<CurveEntry>,
}

impl CurveSystem {
    pub fn new(marking: &Marking, entries: Vec<CurveEntry>) -> Result<Self, SurfaceError> {
        let d = marking.decomposition();
        if entries.len() != d.curves().len() {
            return Err(SurfaceError::CountMismatch {
                what: "curve system entries",
                expected: d.curves().len(),
                found: entries.len(),
            });
        }
        for (c, e) in d.curves().iter().zip(&entries) {
            let bad = |reason| SurfaceError::InconsistentEntry {
                curve: c.name.clone(),
                reason,
            };
            if e.intersection > 0 && e.core_copies > 0 {
                return Err(bad("core copies given for a crossed curve"));
            }
            if e.intersection == 0 && e.twist_offset != 0 {
                return Err(bad("twist offset given for an uncrossed curve"));
            }
            if c.kind == CurveKind::Boundary && e.intersection > 0 {
                return Err(bad("arcs ending on the boundary are not representable"));
            }
        }
        for p in d.pants() {
            let total: u64 = p
                .ends
                .iter()
                .map(|e| match e {
                    PantsEnd::Curve { curve, .. } => entries[curve.0].intersection,
                    PantsEnd::Puncture => 0,
                })
                .sum();
            if !total.is_multiple_of(2) {
                return Err(SurfaceError::Parity(p.name.clone()));
            }
        }
        Ok(Self { entries })
    }

    /// The empty curve system.
    pub fn empty(marking: &Marking) -> Self {
        Self {
            entries: vec![CurveEntry::default(); marking.curve_count()],
        }
    }

    pub fn entries(&self) -> &[CurveEntry] {
        &self.entries
    }

    pub fn entry(&self, j: CurveId) -> Result<CurveEntry, SurfaceError> {
        self.entries
            .get(j.0)
            .copied()
            .ok_or(SurfaceError::UnknownCurve(j.0))
    }

    pub fn is_empty(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.intersection == 0 && e.core_copies == 0)
    }

    /// The curve system with every intersection and core count multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|e| CurveEntry {
                    intersection: e.intersection * k,
                    twist_offset: if k == 0 { 0 } else { e.twist_offset },
                    core_copies: e.core_copies * k,
                })
                .collect(),
        }
    }
}

pub fn intersection_number(beta: &CurveSystem, j: CurveId) -> Result<u64, SurfaceError> {
    Ok(beta.entry(j)?.intersection)
}

/// Applies `power` Dehn twists about `j` to a curve system. The offset moves
/// by `power` regardless of how many strands cross `j`; curves disjoint from
/// `j` are unchanged.
pub fn curve_dehn_twist(beta: &CurveSystem, j: CurveId, power: i64) -> Result<CurveSystem, SurfaceError> {
    let e = beta.entry(j)?;
    let mut out = beta.clone();
    if e.intersection > 0 {
        out.entries[j.0].twist_offset += power;
    }
    Ok(out)
}

/// Twist estimate `b_j + s_j(σ)` of a curve system about a pants curve it crosses.
pub fn estimated_twist(
    marking: &Marking,
    beta: &CurveSystem,
    sigma: &FNPoint,
    j: CurveId,
) -> Result<Twist, SurfaceError> {
    let e = beta.entry(j)?;
    if e.intersection == 0 {
        return Err(SurfaceError::TwistUndefined(marking.curve_name(j).to_owned()));
    }
    Ok(sigma.twist(j)?.shifted(e.twist_offset))
}

/// Standard decompositions used in examples and tests.
pub mod standard {
    use super::*;

    fn internal(name: &str) -> PantsCurve {
        PantsCurve {
            name: name.to_owned(),
            kind: CurveKind::Internal,
        }
    }

    fn end(curve: usize, side: Side) -> PantsEnd {
        PantsEnd::Curve {
            curve: CurveId(curve),
            side,
        }
    }

    fn identity_seams(n: usize) -> Vec<(CurveId, SeamMatching)> {
        (0..n)
            .map(|i| (CurveId(i), SeamMatching { pairing: [0, 1] }))
            .collect()
    }

    /// Genus two cut along three non-separating curves into two pants glued
    /// along all three cuffs.
    pub fn genus_two() -> Marking {
        let curves = vec![internal("g1"), internal("g2"), internal("g3")];
        let pants = vec![
            Pants {
                name: "P1".into(),
                ends: [end(0, Side::Plus), end(1, Side::Plus), end(2, Side::Plus)],
            },
            Pants {
                name: "P2".into(),
                ends: [end(0, Side::Minus), end(1, Side::Minus), end(2, Side::Minus)],
            },
        ];
        let d = PantsDecomposition::new(curves, pants).expect("genus two decomposition");
        build_marking(SurfaceSpec::new(2, 0, 0).unwrap(), d, &identity_seams(3))
            .expect("genus two marking")
    }

    /// The once-punctured torus: one pants glued to itself.
    pub fn punctured_torus() -> Marking {
        let curves = vec![internal("g1")];
        let pants = vec![Pants {
            name: "P1".into(),
            ends: [end(0, Side::Plus), end(0, Side::Minus), PantsEnd::Puncture],
        }];
        let d = PantsDecomposition::new(curves, pants).expect("punctured torus decomposition");
        build_marking(SurfaceSpec::new(1, 1, 0).unwrap(), d, &identity_seams(1))
            .expect("punctured torus marking")
    }
}
