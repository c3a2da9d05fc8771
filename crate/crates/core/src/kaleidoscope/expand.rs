//! Unfolding a wedge into the full arrangement.
//!
//! The `2m` images of the wedge are numbered `0..2m` counter-clockwise around
//! the apex; wedge `w` lies between rays `w` and `w + 1` (mod `2m`), and rays
//! `i` and `i + m` together form mirror line `i`. Even wedges are direct
//! copies of the folded wedge, odd wedges mirror images, so even rays carry
//! the folded bottom side and odd rays the top side.
//!
//! Every folded beam segment appears once in every wedge. Segment `s` of a
//! beam with events `e_1..e_T` runs from `e_s` to `e_{s+1}` (segment 0 starts
//! at the ideal point of the bottom ray). Crossing a ray moves to the
//! neighbouring wedge and the next segment; crossing the ray at `e_T` moves to
//! the neighbour's copy of the same segment, which is the retrace. Walking
//! these gluings from one ideal end to the other traces one pseudoline.
//!
//! Inside a wedge two segments cross exactly when their endpoints interleave
//! on the boundary cycle
//! `apex -> bottom ray outward -> bottom ideal -> top ideal -> top ray inward -> apex`.
//! No coordinates are involved anywhere.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use thiserror::Error;

use super::wedge::{Side, WedgeSpec};
use crate::incidence::{CurveId, IncidenceStructure, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineLabel {
    Mirror(u32),
    BeamCopy { beam: String, copy: u32 },
    LineAtInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Apex,
    Bounce { ray: u32, side: Side, rank: u32 },
    Crossing { wedge: u32 },
    Ideal { mirror: u32 },
}

/// Symmetry class of a curve, used for per-class degree bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineClass {
    /// Mirrors whose ray `i` carries the given folded side.
    Mirror(Side),
    Infinity,
    Beam(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("beam `{beam}` crosses itself (segments {first} and {second})")]
    SelfCrossingBeam {
        beam: String,
        first: usize,
        second: usize,
    },
    #[error("beam `{beam}` does not close through a single ideal point")]
    NonClosingBeam { beam: String },
    #[error("unfolded arrangement is not a pseudoline arrangement: {0}")]
    ValidationFailed(ValidationReport),
}

/// One segment of a folded beam placed in a specific wedge image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathStep {
    pub wedge: u32,
    pub segment: usize,
    /// True when the segment is traversed from `e_{s+1}` back to `e_s`.
    pub reversed: bool,
}

/// The unfolded route of one beam copy, ideal end to ideal end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeamPath {
    pub curve: CurveId,
    pub beam: usize,
    pub steps: Vec<PathStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedArrangement {
    pub structure: IncidenceStructure,
    pub line_labels: Vec<LineLabel>,
    pub vertex_labels: Vec<VertexLabel>,
    pub paths: Vec<BeamPath>,
    m: u32,
}

impl ExpandedArrangement {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn apex_degree(&self) -> usize {
        let apex = self
            .vertex_labels
            .iter()
            .position(|l| *l == VertexLabel::Apex)
            .expect("expansion always emits the apex");
        self.structure.vertices()[apex].len()
    }

    pub fn class_of(&self, curve: CurveId) -> LineClass {
        match &self.line_labels[curve as usize] {
            LineLabel::Mirror(i) => LineClass::Mirror(side_of_ray(*i)),
            LineLabel::LineAtInfinity => LineClass::Infinity,
            LineLabel::BeamCopy { beam, .. } => LineClass::Beam(beam.clone()),
        }
    }

    /// Largest curve degree within each symmetry class.
    pub fn class_max_degrees(&self) -> BTreeMap<LineClass, usize> {
        let mut out = BTreeMap::new();
        for (id, d) in self.structure.curve_degrees().into_iter().enumerate() {
            let slot = out.entry(self.class_of(id as CurveId)).or_insert(0);
            *slot = (*slot).max(d);
        }
        out
    }

    pub fn copies_of(&self, beam: &str) -> usize {
        self.line_labels
            .iter()
            .filter(|l| matches!(l, LineLabel::BeamCopy { beam: b, .. } if b == beam))
            .count()
    }
}

/// Folded side carried by ray `ray`.
pub fn side_of_ray(ray: u32) -> Side {
    if ray.is_multiple_of(2) {
        Side::Bottom
    } else {
        Side::Top
    }
}

/// Ray of wedge `wedge` that carries the folded `side`.
pub fn ray_of(m: u32, wedge: u32, side: Side) -> u32 {
    let rays = 2 * m;
    match (wedge.is_multiple_of(2), side) {
        (true, Side::Bottom) | (false, Side::Top) => wedge,
        (true, Side::Top) | (false, Side::Bottom) => (wedge + 1) % rays,
    }
}

/// The wedge on the other side of `ray` from `wedge`.
pub fn across(m: u32, wedge: u32, ray: u32) -> u32 {
    let rays = 2 * m;
    if ray == wedge {
        (wedge + rays - 1) % rays
    } else {
        (wedge + 1) % rays
    }
}

/// Position of a segment endpoint on the wedge boundary cycle, cut at the apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum BoundaryPos {
    BottomRay(Reverse<u32>),
    BottomIdeal,
    TopRay(u32),
}

impl BoundaryPos {
    fn of(side: Side, rank: u32) -> Self {
        match side {
            Side::Bottom => BoundaryPos::BottomRay(Reverse(rank)),
            Side::Top => BoundaryPos::TopRay(rank),
        }
    }
}

/// Chords `(a, b)` and `(c, d)` cross iff their endpoints alternate.
fn interleave(a: BoundaryPos, b: BoundaryPos, c: BoundaryPos, d: BoundaryPos) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let inside = |x: BoundaryPos| lo < x && x < hi;
    inside(c) != inside(d)
}

struct Segment {
    beam: usize,
    index: usize,
    start: BoundaryPos,
    end: BoundaryPos,
}

fn folded_segments(w: &WedgeSpec) -> Vec<Segment> {
    let mut out = Vec::new();
    for (beam, spec) in w.beams().iter().enumerate() {
        for (index, e) in spec.events.iter().enumerate() {
            let start = if index == 0 {
                BoundaryPos::BottomIdeal
            } else {
                let p = spec.events[index - 1];
                BoundaryPos::of(p.side, p.rank)
            };
            out.push(Segment {
                beam,
                index,
                start,
                end: BoundaryPos::of(e.side, e.rank),
            });
        }
    }
    out
}

/// `(beam, segment)` of a folded segment.
type SegmentRef = (usize, usize);

/// Pairs of folded segments (from different beams) that cross inside every wedge.
fn crossing_pairs(w: &WedgeSpec) -> Result<Vec<(SegmentRef, SegmentRef)>, ExpandError> {
    let segments = folded_segments(w);
    let mut pairs = Vec::new();
    for (i, a) in segments.iter().enumerate() {
        for b in &segments[i + 1..] {
            if !interleave(a.start, a.end, b.start, b.end) {
                continue;
            }
            if a.beam == b.beam {
                return Err(ExpandError::SelfCrossingBeam {
                    beam: w.beams()[a.beam].name.clone(),
                    first: a.index,
                    second: b.index,
                });
            }
            pairs.push(((a.beam, a.index), (b.beam, b.index)));
        }
    }
    Ok(pairs)
}

/// Unfolds `w` into its full arrangement and validates it as a 1-curve
/// combinatorics.
pub fn expand(w: &WedgeSpec) -> Result<ExpandedArrangement, ExpandError> {
    let m = w.m();
    let wedges = 2 * m;
    let crossings = crossing_pairs(w)?;

    let mut line_labels: Vec<LineLabel> = (0..m).map(LineLabel::Mirror).collect();
    line_labels.push(LineLabel::LineAtInfinity);
    let infinity = m as CurveId;

    // owner[beam][wedge * T + segment] = curve id
    let mut owner: Vec<Vec<CurveId>> = Vec::new();
    let mut paths = Vec::new();

    for (beam, spec) in w.beams().iter().enumerate() {
        let events = &spec.events;
        let t = events.len();
        let atom = |wedge: u32, s: usize| wedge as usize * t + s;
        let mut owned = vec![CurveId::MAX; wedges as usize * t];
        let mut copy = 0u32;

        for start in 0..wedges {
            if owned[atom(start, 0)] != CurveId::MAX {
                continue;
            }
            let curve = line_labels.len() as CurveId;
            let mut steps = Vec::new();
            let (mut wedge, mut s, mut reversed) = (start, 0usize, false);
            loop {
                if owned[atom(wedge, s)] != CurveId::MAX {
                    // walked back into an atom already claimed
                    return Err(ExpandError::NonClosingBeam {
                        beam: spec.name.clone(),
                    });
                }
                owned[atom(wedge, s)] = curve;
                steps.push(PathStep {
                    wedge,
                    segment: s,
                    reversed,
                });
                if !reversed {
                    // leave through e_{s+1}
                    let next = across(m, wedge, ray_of(m, wedge, events[s].side));
                    if s + 1 < t {
                        (wedge, s) = (next, s + 1);
                    } else {
                        (wedge, reversed) = (next, true);
                    }
                } else if s == 0 {
                    break;
                } else {
                    // leave through e_s
                    wedge = across(m, wedge, ray_of(m, wedge, events[s - 1].side));
                    s -= 1;
                }
            }

            let first = ray_of(m, start, Side::Bottom);
            let last = ray_of(m, wedge, Side::Bottom);
            if first % m != last % m || first == last {
                return Err(ExpandError::NonClosingBeam {
                    beam: spec.name.clone(),
                });
            }
            line_labels.push(LineLabel::BeamCopy {
                beam: spec.name.clone(),
                copy,
            });
            paths.push(BeamPath { curve, beam, steps });
            copy += 1;
        }
        if owned.contains(&CurveId::MAX) {
            return Err(ExpandError::NonClosingBeam {
                beam: spec.name.clone(),
            });
        }
        owner.push(owned);
    }

    let owner_of = |beam: usize, wedge: u32, s: usize| -> CurveId {
        owner[beam][wedge as usize * w.beams()[beam].events.len() + s]
    };

    let mut vertices: Vec<Vec<CurveId>> = Vec::new();
    let mut vertex_labels = Vec::new();

    vertices.push((0..m).collect());
    vertex_labels.push(VertexLabel::Apex);

    let mut bounces: BTreeMap<(u32, u32), Vec<CurveId>> = BTreeMap::new();
    let mut ideals: BTreeMap<u32, Vec<CurveId>> = BTreeMap::new();
    for (beam, spec) in w.beams().iter().enumerate() {
        for wedge in 0..wedges {
            for (s, e) in spec.events.iter().enumerate() {
                let curve = owner_of(beam, wedge, s);
                let ray = ray_of(m, wedge, e.side);
                bounces.entry((ray, e.rank)).or_default().push(curve);
                if s == 0 {
                    let mirror = ray_of(m, wedge, Side::Bottom) % m;
                    ideals.entry(mirror).or_default().push(curve);
                }
            }
        }
    }
    for ((ray, rank), mut curves) in bounces {
        curves.push(ray % m);
        curves.sort_unstable();
        curves.dedup();
        vertices.push(curves);
        vertex_labels.push(VertexLabel::Bounce {
            ray,
            side: side_of_ray(ray),
            rank,
        });
    }
    for mirror in 0..m {
        let mut curves = ideals.remove(&mirror).unwrap_or_default();
        curves.extend([infinity, mirror]);
        curves.sort_unstable();
        curves.dedup();
        vertices.push(curves);
        vertex_labels.push(VertexLabel::Ideal { mirror });
    }
    for wedge in 0..wedges {
        for &((b1, s1), (b2, s2)) in &crossings {
            vertices.push(vec![owner_of(b1, wedge, s1), owner_of(b2, wedge, s2)]);
            vertex_labels.push(VertexLabel::Crossing { wedge });
        }
    }

    let n = line_labels.len();
    let structure = IncidenceStructure::new(1, n, vertices)
        .expect("vertex sets are built from distinct in-range ids");
    let report = structure.validate();
    if !report.valid() {
        return Err(ExpandError::ValidationFailed(report));
    }

    Ok(ExpandedArrangement {
        structure,
        line_labels,
        vertex_labels,
        paths,
        m,
    })
}
