//! Wedge descriptions and the `.wedge` text format.
//!
//! A wedge is the fundamental domain of a dihedrally symmetric arrangement:
//! the region between two mirror rays meeting at angle `pi/m`. Each beam is
//! described by the bounce points it visits, counted from infinity. A bounce
//! point is a `(side, rank)` key, rank 1 being the point on that side
//! farthest from the apex. Equal keys in different beams are the same point.
//!
//! ```text
//! wedge 1
//! m 8
//! beam red T2 B3 T3 B4
//! beam blue T1 B1 T2 B2
//! ```

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Top,
    Bottom,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::Top => 'T',
            Side::Bottom => 'B',
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
        }
    }
}

/// A beam meeting one of the wedge's mirror rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BounceEvent {
    pub side: Side,
    /// Position along the ray, 1 = farthest from the apex.
    pub rank: u32,
}

impl BounceEvent {
    pub fn new(side: Side, rank: u32) -> Self {
        Self { side, rank }
    }
}

impl fmt::Display for BounceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.letter(), self.rank)
    }
}

/// The folded path of one beam. The last event is the terminating bounce,
/// after which the beam retraces its path back out to infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BeamSpec {
    pub name: String,
    pub events: Vec<BounceEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedgeError {
    #[error("dihedral order must be at least 2, got {0}")]
    OrderTooSmall(u32),
    #[error("beam `{0}` has no bounce events")]
    EmptyBeam(String),
    #[error("beam `{0}` must start on the top side")]
    FirstEventNotTop(String),
    #[error("beam `{beam}` does not alternate sides at event {index}")]
    NotAlternating { beam: String, index: usize },
    #[error("beam `{0}` uses rank 0; ranks start at 1")]
    ZeroRank(String),
    #[error("beam `{beam}` visits {event} twice")]
    RepeatedBounce { beam: String, event: BounceEvent },
    #[error("beam name `{0}` is used twice")]
    DuplicateBeamName(String),
    #[error("beam name `{0}` is not a single word")]
    BadBeamName(String),
}

/// A wedge of angle `pi/m` plus its beams.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeSpec {
    m: u32,
    beams: Vec<BeamSpec>,
}

impl WedgeSpec {
    pub fn new(m: u32, beams: Vec<BeamSpec>) -> Result<Self, WedgeError> {
        if m < 2 {
            return Err(WedgeError::OrderTooSmall(m));
        }
        let mut names = BTreeSet::new();
        for beam in &beams {
            if beam.name.is_empty() || beam.name.chars().any(char::is_whitespace) {
                return Err(WedgeError::BadBeamName(beam.name.clone()));
            }
            if !names.insert(beam.name.as_str()) {
                return Err(WedgeError::DuplicateBeamName(beam.name.clone()));
            }
            let Some(first) = beam.events.first() else {
                return Err(WedgeError::EmptyBeam(beam.name.clone()));
            };
            if first.side != Side::Top {
                return Err(WedgeError::FirstEventNotTop(beam.name.clone()));
            }
            for (index, pair) in beam.events.windows(2).enumerate() {
                if pair[0].side == pair[1].side {
                    return Err(WedgeError::NotAlternating {
                        beam: beam.name.clone(),
                        index: index + 1,
                    });
                }
            }
            let mut seen = BTreeSet::new();
            for &event in &beam.events {
                if event.rank == 0 {
                    return Err(WedgeError::ZeroRank(beam.name.clone()));
                }
                if !seen.insert(event) {
                    return Err(WedgeError::RepeatedBounce {
                        beam: beam.name.clone(),
                        event,
                    });
                }
            }
        }
        Ok(Self { m, beams })
    }

    /// Dihedral order; the wedge angle is `pi/m`.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn beams(&self) -> &[BeamSpec] {
        &self.beams
    }

    /// Distinct bounce keys on one side, sorted by rank.
    pub fn keys_on(&self, side: Side) -> Vec<u32> {
        let ranks: BTreeSet<u32> = self
            .beams
            .iter()
            .flat_map(|b| &b.events)
            .filter(|e| e.side == side)
            .map(|e| e.rank)
            .collect();
        ranks.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct WedgeParseError {
    pub line: usize,
    pub kind: WedgeParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedgeParseErrorKind {
    #[error("input ended before the header was complete")]
    MissingHeader,
    #[error("expected `{0}` header")]
    BadHeader(&'static str),
    #[error("unsupported wedge format version `{0}`")]
    UnsupportedVersion(String),
    #[error("bad token `{0}`")]
    BadToken(String),
    #[error("unexpected record `{0}`")]
    UnexpectedRecord(String),
    #[error(transparent)]
    Invalid(#[from] WedgeError),
}

fn parse_event(token: &str) -> Option<BounceEvent> {
    let mut chars = token.chars();
    let side = match chars.next()? {
        'T' => Side::Top,
        'B' => Side::Bottom,
        _ => return None,
    };
    let rank = chars.as_str().parse().ok()?;
    Some(BounceEvent { side, rank })
}

pub fn parse_wedge(text: &str) -> Result<WedgeSpec, WedgeParseError> {
    let mut records = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let end = text.lines().count().max(1);
    let missing = WedgeParseError {
        line: end,
        kind: WedgeParseErrorKind::MissingHeader,
    };

    let (line, record) = records.next().ok_or(missing.clone())?;
    match record.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["wedge", "1"] => {}
        ["wedge", v] => {
            return Err(WedgeParseError {
                line,
                kind: WedgeParseErrorKind::UnsupportedVersion(v.to_string()),
            })
        }
        _ => {
            return Err(WedgeParseError {
                line,
                kind: WedgeParseErrorKind::BadHeader("wedge"),
            })
        }
    }

    let (line, record) = records.next().ok_or(missing)?;
    let m = match record.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["m", value] => value.parse::<u32>().map_err(|_| WedgeParseError {
            line,
            kind: WedgeParseErrorKind::BadToken(value.to_string()),
        })?,
        _ => {
            return Err(WedgeParseError {
                line,
                kind: WedgeParseErrorKind::BadHeader("m"),
            })
        }
    };

    let mut beams = Vec::new();
    let mut last_line = line;
    for (line, record) in records {
        last_line = line;
        let mut parts = record.split_whitespace();
        if parts.next() != Some("beam") {
            return Err(WedgeParseError {
                line,
                kind: WedgeParseErrorKind::UnexpectedRecord(record.to_string()),
            });
        }
        let name = parts.next().ok_or(WedgeParseError {
            line,
            kind: WedgeParseErrorKind::UnexpectedRecord(record.to_string()),
        })?;
        let events = parts
            .map(|t| {
                parse_event(t).ok_or_else(|| WedgeParseError {
                    line,
                    kind: WedgeParseErrorKind::BadToken(t.to_string()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        beams.push(BeamSpec {
            name: name.to_string(),
            events,
        });
    }

    WedgeSpec::new(m, beams).map_err(|e| WedgeParseError {
        line: last_line,
        kind: e.into(),
    })
}

/// Canonical text: beams in stored order, single spaces, trailing newline.
pub fn serialize_wedge(w: &WedgeSpec) -> String {
    let mut out = format!("wedge 1\nm {}\n", w.m);
    for beam in &w.beams {
        let _ = write!(out, "beam {}", beam.name);
        for e in &beam.events {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let text = "wedge 1\nm 8\nbeam red T2 B3 T3 B4\nbeam blue T1 B1 T2 B2\n";
        let w = parse_wedge(text).unwrap();
        assert_eq!(w.m(), 8);
        assert_eq!(w.beams()[1].events[2], BounceEvent::new(Side::Top, 2));
        assert_eq!(serialize_wedge(&w), text);
        assert_eq!(w.keys_on(Side::Top), vec![1, 2, 3]);
    }

    #[test]
    fn invariants_are_enforced() {
        let beam = |events: &[(Side, u32)]| BeamSpec {
            name: "x".into(),
            events: events
                .iter()
                .map(|&(s, r)| BounceEvent::new(s, r))
                .collect(),
        };
        use Side::*;
        assert_eq!(WedgeSpec::new(1, vec![]), Err(WedgeError::OrderTooSmall(1)));
        assert!(matches!(
            WedgeSpec::new(4, vec![beam(&[])]),
            Err(WedgeError::EmptyBeam(_))
        ));
        assert!(matches!(
            WedgeSpec::new(4, vec![beam(&[(Bottom, 1)])]),
            Err(WedgeError::FirstEventNotTop(_))
        ));
        assert!(matches!(
            WedgeSpec::new(4, vec![beam(&[(Top, 1), (Top, 2)])]),
            Err(WedgeError::NotAlternating { index: 1, .. })
        ));
        assert!(matches!(
            WedgeSpec::new(4, vec![beam(&[(Top, 1), (Bottom, 1), (Top, 1)])]),
            Err(WedgeError::RepeatedBounce { .. })
        ));
        assert!(matches!(
            WedgeSpec::new(4, vec![beam(&[(Top, 0)])]),
            Err(WedgeError::ZeroRank(_))
        ));
        assert!(matches!(
            WedgeSpec::new(4, vec![beam(&[(Top, 1)]), beam(&[(Top, 2)])]),
            Err(WedgeError::DuplicateBeamName(_))
        ));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_wedge("wedge 1\nm 4\nbeam a T1 X2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.kind, WedgeParseErrorKind::BadToken("X2".into()));
        let e = parse_wedge("wedge 2\n").unwrap_err();
        assert!(matches!(e.kind, WedgeParseErrorKind::UnsupportedVersion(_)));
        let e = parse_wedge("wedge 1\n").unwrap_err();
        assert_eq!(e.kind, WedgeParseErrorKind::MissingHeader);
        let e = parse_wedge("wedge 1\nm 1\n").unwrap_err();
        assert!(matches!(
            e.kind,
            WedgeParseErrorKind::Invalid(WedgeError::OrderTooSmall(1))
        ));
    }
}
