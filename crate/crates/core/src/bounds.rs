//! Exact audits of the incidence inequalities satisfied by every α-curve
//! combinatorics.
//!
//! Nothing here is asymptotic: each audit evaluates one concrete integer
//! inequality on one concrete structure and reports both sides of it.
//! Comparisons are done on integers or on [`Ratio`]s, never on floats.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::Ratio;
use thiserror::Error;

use crate::incidence::{choose2, CurveId, IncidenceStructure, Stats};

/// Default cap on the number of vertex subsets examined by a coverage search.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("searching {needed} vertex subsets exceeds the budget of {budget}")]
    SizeLimitExceeded { needed: u128, budget: u64 },
    #[error("structure is not a valid curve combinatorics")]
    InvalidStructure,
    #[error("gamma must lie in [0, 1), got {0}")]
    GammaOutOfRange(Ratio<u64>),
    #[error("fraction must lie in (0, 1], got {0}")]
    FractionOutOfRange(Ratio<u64>),
}

/// Both sides of an audited comparison, printed as `lhs/rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Margin {
    pub lhs: u128,
    pub rhs: u128,
}

impl fmt::Display for Margin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.lhs, self.rhs)
    }
}

/// One machine-readable check outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
    pub margin: Margin,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds { "holds" } else { "fails" };
        write!(f, "CHECK {} {} {}", self.name, verdict, self.margin)
    }
}

// ---------------------------------------------------------------------------
// t_k bounds

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm3Row {
    pub k: usize,
    pub tk: usize,
    /// `alpha * C(n,2) / C(k,2)`.
    pub bound1: Ratio<u64>,
    pub holds1: bool,
    /// Whether `k >= alpha * ceil(sqrt(2n))`.
    pub bound2_applicable: bool,
    /// `2 * alpha * n / k`.
    pub bound2: Ratio<u64>,
    /// Strict `t_k < bound2`; vacuously true when not applicable.
    pub holds2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm3Report {
    pub alpha: u32,
    pub n: usize,
    /// `alpha * ceil(sqrt(2n))`, the smallest k the second bound covers.
    pub threshold: usize,
    pub rows: Vec<Thm3Row>,
}

impl Thm3Report {
    pub fn part1_holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds1)
    }

    pub fn part2_holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds2)
    }

    /// Tightest `t_k * C(k,2)` against `alpha * C(n,2)`.
    pub fn part1_margin(&self) -> Margin {
        let lhs = self
            .rows
            .iter()
            .map(|r| r.tk as u128 * choose2(r.k) as u128)
            .max()
            .unwrap_or(0);
        Margin {
            lhs,
            rhs: self.alpha as u128 * choose2(self.n) as u128,
        }
    }

    /// Tightest `t_k * k` against `2 * alpha * n` over applicable k.
    pub fn part2_margin(&self) -> Margin {
        let lhs = self
            .rows
            .iter()
            .filter(|r| r.bound2_applicable)
            .map(|r| (r.tk * r.k) as u128)
            .max()
            .unwrap_or(0);
        Margin {
            lhs,
            rhs: 2 * self.alpha as u128 * self.n as u128,
        }
    }

    pub fn checks(&self) -> Vec<Check> {
        vec![
            Check {
                name: "thm3.part1",
                holds: self.part1_holds(),
                margin: self.part1_margin(),
            },
            Check {
                name: "thm3.part2",
                holds: self.part2_holds(),
                margin: self.part2_margin(),
            },
        ]
    }
}

fn ceil_sqrt(x: u64) -> u64 {
    let s = x.sqrt();
    if s * s == x {
        s
    } else {
        s + 1
    }
}

/// Checks `t_k <= alpha*C(n,2)/C(k,2)` for `2 <= k <= n` and
/// `t_k < 2*alpha*n/k` for `k >= alpha*ceil(sqrt(2n))`.
pub fn audit_theorem3(stats: &Stats) -> Thm3Report {
    let n = stats.n();
    let alpha = stats.alpha as u64;
    let threshold = (alpha * ceil_sqrt(2 * n as u64)) as usize;
    let pairs = alpha * choose2(n);

    let rows = (2..=n.max(2))
        .filter(|&k| k <= n)
        .map(|k| {
            let tk = stats.t(k);
            let bound1 = Ratio::new(pairs, choose2(k));
            let bound2 = Ratio::new(2 * alpha * n as u64, k as u64);
            let bound2_applicable = k >= threshold;
            let t = Ratio::from_integer(tk as u64);
            Thm3Row {
                k,
                tk,
                holds1: t <= bound1,
                bound1,
                bound2_applicable,
                holds2: !bound2_applicable || t < bound2,
                bound2,
            }
        })
        .collect();

    Thm3Report {
        alpha: stats.alpha,
        n,
        threshold,
        rows,
    }
}

// ---------------------------------------------------------------------------
// pair identity

/// `sum_d l_d == C(n,2)`, reported as `sum/C(n,2)`.
pub fn audit_pair_identity(stats: &Stats) -> Check {
    let sum: usize = stats.ld.values().sum();
    let expected = choose2(stats.n());
    Check {
        name: "pairs",
        holds: sum as u64 == expected,
        margin: Margin {
            lhs: sum as u128,
            rhs: expected as u128,
        },
    }
}

// ---------------------------------------------------------------------------
// coverage search shared by the Dirac audit and the dichotomy report

/// Largest number of curves through all members of some `alpha`-subset of
/// vertices, with the lexicographically least subset attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coverage {
    pub size: usize,
    /// Vertex indices, increasing.
    pub witness: Vec<usize>,
}

fn binomial_saturating(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Searches every `alpha`-subset of vertices, in lexicographic order.
pub fn max_coverage(s: &IncidenceStructure, budget: u64) -> Result<Coverage, AuditError> {
    let alpha = s.alpha() as usize;
    let vertices = s.vertices();
    let needed = binomial_saturating(vertices.len() as u128, alpha as u128);
    if needed > budget as u128 {
        return Err(AuditError::SizeLimitExceeded { needed, budget });
    }
    if alpha > vertices.len() {
        return Ok(Coverage {
            size: 0,
            witness: Vec::new(),
        });
    }
    if alpha == 1 {
        let mut best = Coverage {
            size: 0,
            witness: vec![0],
        };
        for (i, v) in vertices.iter().enumerate() {
            if v.len() > best.size {
                best = Coverage {
                    size: v.len(),
                    witness: vec![i],
                };
            }
        }
        return Ok(best);
    }

    let words = s.curve_count().div_ceil(64);
    let sets: Vec<Vec<u64>> = vertices
        .iter()
        .map(|v| {
            let mut bits = vec![0u64; words];
            for &id in v {
                bits[id as usize / 64] |= 1 << (id % 64);
            }
            bits
        })
        .collect();

    let mut best = Coverage {
        size: 0,
        witness: (0..alpha).collect(),
    };
    let full = vec![u64::MAX; words];
    let mut chosen = Vec::with_capacity(alpha);
    search_subsets(&sets, alpha, 0, &full, &mut chosen, &mut best);
    Ok(best)
}

fn search_subsets(
    sets: &[Vec<u64>],
    alpha: usize,
    start: usize,
    current: &[u64],
    chosen: &mut Vec<usize>,
    best: &mut Coverage,
) {
    if chosen.len() == alpha {
        let size = current.iter().map(|w| w.count_ones() as usize).sum();
        if size > best.size {
            *best = Coverage {
                size,
                witness: chosen.clone(),
            };
        }
        return;
    }
    let remaining = alpha - chosen.len();
    for i in start..=sets.len() - remaining {
        let next: Vec<u64> = current.iter().zip(&sets[i]).map(|(a, b)| a & b).collect();
        chosen.push(i);
        search_subsets(sets, alpha, i + 1, &next, chosen, best);
        chosen.pop();
    }
}

// ---------------------------------------------------------------------------
// Dirac-type proof steps

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiracAuditReport {
    pub alpha: u32,
    pub n: usize,
    /// Maximum curve degree.
    pub g: usize,
    /// Maximum number of curves through every member of an `alpha`-subset of vertices.
    pub h: usize,
    /// No `alpha`-subset of vertices lies on every curve.
    pub hypothesis_holds: bool,
    pub witness_subset: Vec<usize>,
    pub g_ge_h: bool,
    /// `C(g, alpha) * h >= n - 1`.
    pub binom_ineq_holds: bool,
    /// `C(g, alpha) * h`, saturating.
    pub binom_lhs: u128,
}

impl DiracAuditReport {
    /// True when the hypothesis is violated or both proof steps hold.
    pub fn passes(&self) -> bool {
        !self.hypothesis_holds || (self.g_ge_h && self.binom_ineq_holds)
    }

    /// Empty when the hypothesis does not hold.
    pub fn checks(&self) -> Vec<Check> {
        if !self.hypothesis_holds {
            return Vec::new();
        }
        vec![
            Check {
                name: "dirac.g_ge_h",
                holds: self.g_ge_h,
                margin: Margin {
                    lhs: self.g as u128,
                    rhs: self.h as u128,
                },
            },
            Check {
                name: "dirac.binomial",
                holds: self.binom_ineq_holds,
                margin: Margin {
                    lhs: self.binom_lhs,
                    rhs: self.n.saturating_sub(1) as u128,
                },
            },
        ]
    }
}

/// Evaluates `g >= h` and `C(g,alpha)*h >= n-1` on a valid structure.
pub fn audit_dirac(s: &IncidenceStructure, budget: u64) -> Result<DiracAuditReport, AuditError> {
    if !s.validate().valid() {
        return Err(AuditError::InvalidStructure);
    }
    let n = s.curve_count();
    let g = s.curve_degrees().into_iter().max().unwrap_or(0);
    let coverage = max_coverage(s, budget)?;
    let h = coverage.size;
    let binom_lhs = binomial_saturating(g as u128, s.alpha() as u128).saturating_mul(h as u128);
    Ok(DiracAuditReport {
        alpha: s.alpha(),
        n,
        g,
        h,
        hypothesis_holds: h < n,
        witness_subset: coverage.witness,
        g_ge_h: g >= h,
        binom_ineq_holds: binom_lhs >= n.saturating_sub(1) as u128,
        binom_lhs,
    })
}

// ---------------------------------------------------------------------------
// dyadic window sums of l_d

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicProfileParams {
    pub gamma: Ratio<u64>,
    pub v: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicWindow {
    /// `2^v * floor(n^gamma)`.
    pub lower: u128,
    /// `floor(n / 2^v)`.
    pub upper: u128,
    /// `sum l_d` for `d < lower`.
    pub below: u64,
    /// `sum l_d` for `lower <= d <= upper`.
    pub inside: u64,
    /// `sum l_d` for every remaining `d`.
    pub above: u64,
    pub empty: bool,
}

impl DyadicWindow {
    pub fn total(&self) -> u64 {
        self.below + self.inside + self.above
    }
}

/// `floor(n^(a/b))` by an exact integer root of `n^a`.
pub fn floor_rational_power(n: u64, gamma: Ratio<u64>) -> u128 {
    let (a, b) = (*gamma.numer(), *gamma.denom());
    let root = BigUint::from(n).pow(a as u32).nth_root(b as u32);
    u128::try_from(root).unwrap_or(u128::MAX)
}

pub fn dyadic_profile(
    stats: &Stats,
    params: DyadicProfileParams,
) -> Result<DyadicWindow, AuditError> {
    if params.gamma >= Ratio::from_integer(1) {
        return Err(AuditError::GammaOutOfRange(params.gamma));
    }
    let n = stats.n() as u64;
    let scale = 1u128.checked_shl(params.v).unwrap_or(u128::MAX);
    let lower = floor_rational_power(n, params.gamma).saturating_mul(scale);
    let upper = if params.v >= 64 {
        0
    } else {
        (n >> params.v) as u128
    };

    let mut window = DyadicWindow {
        lower,
        upper,
        below: 0,
        inside: 0,
        above: 0,
        empty: lower > upper,
    };
    for (&d, &count) in &stats.ld {
        let d = d as u128;
        let count = count as u64;
        if d < lower {
            window.below += count;
        } else if d <= upper {
            window.inside += count;
        } else {
            window.above += count;
        }
    }
    Ok(window)
}

// ---------------------------------------------------------------------------
// dichotomy

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    /// Exactly `alpha` vertices, each on every curve.
    IsCompletePencil,
    /// Some `alpha`-subset of vertices lies on at least the requested fraction of curves.
    LargeCoverage { witness: Vec<usize>, covered: usize },
    /// Vertex count, and its ratio to `n`.
    ManyVertices {
        vertex_count: usize,
        ratio: Ratio<u64>,
    },
}

/// Every branch that holds, in the order above. `ManyVertices` is always
/// present last since it just reports the vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyReport {
    pub fraction: Ratio<u64>,
    pub branches: Vec<Branch>,
}

impl DichotomyReport {
    pub fn primary(&self) -> &Branch {
        &self.branches[0]
    }
}

pub fn dichotomy_report(
    s: &IncidenceStructure,
    fraction: Ratio<u64>,
    budget: u64,
) -> Result<DichotomyReport, AuditError> {
    if fraction <= Ratio::from_integer(0) || fraction > Ratio::from_integer(1) {
        return Err(AuditError::FractionOutOfRange(fraction));
    }
    if !s.validate().valid() {
        return Err(AuditError::InvalidStructure);
    }
    let n = s.curve_count();
    let mut branches = Vec::new();

    let complete =
        s.vertex_count() == s.alpha() as usize && s.vertices().iter().all(|v| v.len() == n);
    if complete {
        branches.push(Branch::IsCompletePencil);
    }

    let coverage = max_coverage(s, budget)?;
    if coverage.size as u128 * *fraction.denom() as u128 >= *fraction.numer() as u128 * n as u128 {
        branches.push(Branch::LargeCoverage {
            witness: coverage.witness,
            covered: coverage.size,
        });
    }

    branches.push(Branch::ManyVertices {
        vertex_count: s.vertex_count(),
        ratio: Ratio::new(s.vertex_count() as u64, n as u64),
    });
    Ok(DichotomyReport { fraction, branches })
}

/// Curves common to every vertex in `subset`.
pub fn common_curves(s: &IncidenceStructure, subset: &[usize]) -> Vec<CurveId> {
    let mut iter = subset.iter().map(|&i| &s.vertices()[i]);
    let Some(first) = iter.next() else {
        return Vec::new();
    };
    let mut common = first.clone();
    for v in iter {
        common.retain(|id| v.binary_search(id).is_ok());
    }
    common
}
