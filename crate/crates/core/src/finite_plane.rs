//! Line arrangements in the projective plane over a prime field.
//!
//! Points and lines are both represented by homogeneous triples scaled so
//! that the last nonzero coordinate is 1, listed in lexicographic order. A
//! point lies on a line when their dot product vanishes mod `p`.

use thiserror::Error;

use crate::incidence::{CurveId, IncidenceStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("line {0} is selected twice")]
    DuplicateLineId(usize),
    #[error("line {id} does not exist; the plane has {count} lines")]
    UnknownLineId { id: usize, count: usize },
    #[error("at least two distinct lines are required")]
    TooFewLines,
    #[error("cannot sample {requested} lines from a plane with {available}")]
    SampleTooLarge { requested: usize, available: usize },
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePlane {
    p: u32,
    points: Vec<[u32; 3]>,
    lines: Vec<[u32; 3]>,
    /// Point indices on each line, increasing.
    line_points: Vec<Vec<usize>>,
}

/// Canonical representatives of the 1-dimensional subspaces of `F_p^3`.
fn canonical_triples(p: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity((p * p + p + 1) as usize);
    out.push([1, 0, 0]);
    for x in 0..p {
        out.push([x, 1, 0]);
    }
    for x in 0..p {
        for y in 0..p {
            out.push([x, y, 1]);
        }
    }
    out.sort_unstable();
    out
}

/// Builds the projective plane over the field with `p` elements.
pub fn pg2(p: u32) -> Result<ProjectivePlane, PlaneError> {
    if !is_prime(p) {
        return Err(PlaneError::NotPrime(p));
    }
    let points = canonical_triples(p);
    let lines = points.clone();
    let p64 = p as u64;
    let line_points = lines
        .iter()
        .map(|l| {
            points
                .iter()
                .enumerate()
                .filter(|(_, x)| {
                    let dot: u64 = l
                        .iter()
                        .zip(x.iter())
                        .map(|(&a, &b)| a as u64 * b as u64)
                        .sum();
                    dot.is_multiple_of(p64)
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(ProjectivePlane {
        p,
        points,
        lines,
        line_points,
    })
}

impl ProjectivePlane {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn points(&self) -> &[[u32; 3]] {
        &self.points
    }

    pub fn lines(&self) -> &[[u32; 3]] {
        &self.lines
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn points_on(&self, line: usize) -> &[usize] {
        &self.line_points[line]
    }

    /// The arrangement formed by the chosen lines; curve `i` is `line_ids[i]`.
    ///
    /// With `dedupe` set, repeated ids are dropped (first occurrence kept)
    /// instead of rejected.
    pub fn structure_from_lines(
        &self,
        line_ids: &[usize],
        dedupe: bool,
    ) -> Result<IncidenceStructure, PlaneError> {
        let count = self.line_count();
        let mut chosen: Vec<usize> = Vec::with_capacity(line_ids.len());
        let mut used = vec![false; count];
        for &id in line_ids {
            if id >= count {
                return Err(PlaneError::UnknownLineId { id, count });
            }
            if used[id] {
                if dedupe {
                    continue;
                }
                return Err(PlaneError::DuplicateLineId(id));
            }
            used[id] = true;
            chosen.push(id);
        }
        if chosen.len() < 2 {
            return Err(PlaneError::TooFewLines);
        }

        let mut through: Vec<Vec<CurveId>> = vec![Vec::new(); self.points.len()];
        for (curve, &line) in chosen.iter().enumerate() {
            for &point in &self.line_points[line] {
                through[point].push(curve as CurveId);
            }
        }
        let vertices = through.into_iter().filter(|c| c.len() >= 2).collect();
        Ok(IncidenceStructure::new(1, chosen.len(), vertices).expect("curve ids are distinct"))
    }

    /// `n` distinct line ids, sorted, drawn with [`SplitMix64`] from `seed`.
    pub fn sample_lines(&self, n: usize, seed: u64) -> Result<Vec<usize>, PlaneError> {
        let count = self.line_count();
        if n > count {
            return Err(PlaneError::SampleTooLarge {
                requested: n,
                available: count,
            });
        }
        let mut ids: Vec<usize> = (0..count).collect();
        let mut rng = SplitMix64::new(seed);
        // partial Fisher-Yates: position i takes a uniform pick from i..count
        for i in 0..n {
            let j = i + rng.below((count - i) as u64) as usize;
            ids.swap(i, j);
        }
        let mut picked = ids[..n].to_vec();
        picked.sort_unstable();
        Ok(picked)
    }
}

/// SplitMix64 generator.
///
/// State transition: `state += 0x9E3779B97F4A7C15`; the output is `state`
/// passed through `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`,
/// `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`, `z ^ (z >> 31)` (wrapping
/// arithmetic). [`below`](Self::below) maps an output `x` to `0..bound` as
/// the high 64 bits of the 128-bit product `x * bound`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}
