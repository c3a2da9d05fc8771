//! α-curve incidence structures.
//!
//! An [`IncidenceStructure`] records `n` abstract curves (ids `0..n`) and a
//! list of vertices, each vertex being the set of curves through it. The
//! structure is an α-curve combinatorics when every pair of curves shares
//! exactly `alpha` vertices and the curve/vertex membership graph is
//! connected. Arrangement vertices are intersection points, so vertices of
//! size below two are rejected by [`IncidenceStructure::validate`].

use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

/// Dense curve identifier in `0..n`.
pub type CurveId = u32;

/// Errors raised while assembling a structure from raw vertex lists.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("alpha must be at least 1")]
    ZeroAlpha,
    #[error("vertex {vertex} names curve {id} but the structure has {n} curves")]
    IdOutOfRange {
        vertex: usize,
        id: CurveId,
        n: usize,
    },
    #[error("vertex {vertex} lists curve {id} twice")]
    DuplicateId { vertex: usize, id: CurveId },
}

/// Curves plus vertices; immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceStructure {
    alpha: u32,
    n: usize,
    vertices: Vec<Vec<CurveId>>,
}

impl IncidenceStructure {
    /// Builds a structure, sorting the ids inside each vertex.
    ///
    /// Only syntactic checks happen here (ids in range, no repeated id in a
    /// vertex). Axiom checks live in [`validate`](Self::validate) so that
    /// broken inputs can still be inspected and reported on.
    pub fn new(alpha: u32, n: usize, vertices: Vec<Vec<CurveId>>) -> Result<Self, StructureError> {
        if alpha == 0 {
            return Err(StructureError::ZeroAlpha);
        }
        let mut vertices = vertices;
        for (index, vertex) in vertices.iter_mut().enumerate() {
            vertex.sort_unstable();
            if let Some(&id) = vertex.iter().find(|&&id| id as usize >= n) {
                return Err(StructureError::IdOutOfRange {
                    vertex: index,
                    id,
                    n,
                });
            }
            if let Some(pair) = vertex.windows(2).find(|w| w[0] == w[1]) {
                return Err(StructureError::DuplicateId {
                    vertex: index,
                    id: pair[0],
                });
            }
        }
        Ok(Self { alpha, n, vertices })
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// Number of curves, `n`.
    pub fn curve_count(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices in construction order; ids inside each vertex are sorted.
    pub fn vertices(&self) -> &[Vec<CurveId>] {
        &self.vertices
    }

    /// Same structure with vertices sorted lexicographically.
    pub fn canonical(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.sort();
        Self {
            alpha: self.alpha,
            n: self.n,
            vertices,
        }
    }

    /// Number of vertices on each curve.
    pub fn curve_degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0usize; self.n];
        for &id in self.vertices.iter().flatten() {
            degrees[id as usize] += 1;
        }
        degrees
    }

    /// Checks every axiom and lists each violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        for (index, vertex) in self.vertices.iter().enumerate() {
            if vertex.len() < 2 {
                violations.push(Violation::SmallVertex { index });
            }
        }

        let degrees = self.curve_degrees();
        for (id, &d) in degrees.iter().enumerate() {
            if d == 0 {
                violations.push(Violation::UnusedCurve { id: id as CurveId });
            }
        }

        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]).then(a.cmp(&b)));
        for w in order.windows(2) {
            if self.vertices[w[0]] == self.vertices[w[1]] {
                violations.push(Violation::DuplicateVertex {
                    first: w[0].min(w[1]),
                    second: w[0].max(w[1]),
                });
            }
        }

        let pairs = PairTable::new(self.n);
        let mut counts = vec![0u32; pairs.len()];
        for vertex in &self.vertices {
            for (i, &a) in vertex.iter().enumerate() {
                for &b in &vertex[i + 1..] {
                    counts[pairs.index(a, b)] += 1;
                }
            }
        }
        for (a, b, index) in pairs.iter() {
            if counts[index] != self.alpha {
                violations.push(Violation::PairMultiplicity {
                    pair: (a, b),
                    observed: counts[index],
                });
            }
        }

        let components = self.component_count();
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }

        ValidationReport { violations }
    }

    /// Components of the bipartite curve/vertex membership graph.
    pub fn component_count(&self) -> usize {
        let total = self.n + self.vertices.len();
        if total == 0 {
            return 0;
        }
        let mut uf = UnionFind::<usize>::new(total);
        for (index, vertex) in self.vertices.iter().enumerate() {
            for &id in vertex {
                uf.union(id as usize, self.n + index);
            }
        }
        let mut roots = uf.into_labeling();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Exact statistics; refuses structures that fail validation.
    pub fn stats(&self) -> Result<Stats, StatsError> {
        let report = self.validate();
        if !report.valid() {
            return Err(StatsError::Invalid(report));
        }

        let curve_degrees = self.curve_degrees();
        let vertex_degrees: Vec<usize> = self.vertices.iter().map(Vec::len).collect();
        let r = curve_degrees.iter().copied().max().unwrap_or(0);

        let mut tk = BTreeMap::new();
        for &k in &vertex_degrees {
            *tk.entry(k).or_insert(0) += 1;
        }

        // l_d: for each pair, the smallest degree among its common vertices.
        let pairs = PairTable::new(self.n);
        let mut min_degree = vec![usize::MAX; pairs.len()];
        for vertex in &self.vertices {
            let d = vertex.len();
            for (i, &a) in vertex.iter().enumerate() {
                for &b in &vertex[i + 1..] {
                    let slot = &mut min_degree[pairs.index(a, b)];
                    *slot = (*slot).min(d);
                }
            }
        }
        let mut ld = BTreeMap::new();
        for d in min_degree {
            *ld.entry(d).or_insert(0) += 1;
        }

        Ok(Stats {
            alpha: self.alpha,
            tk,
            r,
            curve_degrees,
            vertex_degrees,
            ld,
        })
    }
}

/// Free-function form of [`IncidenceStructure::validate`].
pub fn validate(s: &IncidenceStructure) -> ValidationReport {
    s.validate()
}

/// Free-function form of [`IncidenceStructure::stats`].
pub fn compute_stats(s: &IncidenceStructure) -> Result<Stats, StatsError> {
    s.stats()
}

/// One broken axiom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    /// The pair shares `observed` vertices instead of `alpha`.
    PairMultiplicity {
        pair: (CurveId, CurveId),
        observed: u32,
    },
    /// Two vertex records (by index) carry the same curve set.
    DuplicateVertex { first: usize, second: usize },
    /// The membership graph splits into this many components.
    Disconnected { components: usize },
    /// Vertex with fewer than two curves.
    SmallVertex { index: usize },
    /// Curve lying on no vertex.
    UnusedCurve { id: CurveId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PairMultiplicity { pair, observed } => write!(
                f,
                "pair ({}, {}) shares {} vertices",
                pair.0, pair.1, observed
            ),
            Violation::DuplicateVertex { first, second } => {
                write!(f, "vertices {first} and {second} are identical")
            }
            Violation::Disconnected { components } => {
                write!(f, "membership graph has {components} components")
            }
            Violation::SmallVertex { index } => {
                write!(f, "vertex {index} has fewer than two curves")
            }
            Violation::UnusedCurve { id } => write!(f, "curve {id} lies on no vertex"),
        }
    }
}

/// Outcome of [`IncidenceStructure::validate`]. Valid exactly when no
/// violation was recorded.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid() {
            return write!(f, "valid");
        }
        write!(f, "invalid ({} violations)", self.violations.len())?;
        for v in self.violations.iter().take(8) {
            write!(f, "; {v}")?;
        }
        if self.violations.len() > 8 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("structure is not a valid curve combinatorics: {0}")]
    Invalid(ValidationReport),
}

/// Exact integer statistics of a valid structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub alpha: u32,
    /// `t_k`: number of vertices of degree exactly `k`.
    pub tk: BTreeMap<usize, usize>,
    /// `r`: largest number of vertices on a single curve.
    pub r: usize,
    pub curve_degrees: Vec<usize>,
    pub vertex_degrees: Vec<usize>,
    /// `l_d`: number of curve pairs whose common vertices have minimum degree `d`.
    pub ld: BTreeMap<usize, usize>,
}

impl Stats {
    /// Number of curves.
    pub fn n(&self) -> usize {
        self.curve_degrees.len()
    }

    pub fn t(&self, k: usize) -> usize {
        self.tk.get(&k).copied().unwrap_or(0)
    }

    /// Vertices of degree at least `k`.
    pub fn tail(&self, k: usize) -> usize {
        self.tk.range(k..).map(|(_, &c)| c).sum()
    }
}

/// `C(n, 2)` for the counts used throughout.
pub fn choose2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Maps unordered pairs `a < b` of `0..n` to a dense triangular index.
#[derive(Debug, Clone, Copy)]
struct PairTable {
    n: usize,
}

impl PairTable {
    fn new(n: usize) -> Self {
        Self { n }
    }

    fn len(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    fn index(&self, a: CurveId, b: CurveId) -> usize {
        let (a, b) = (a as usize, b as usize);
        debug_assert!(a < b && b < self.n);
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    fn iter(&self) -> impl Iterator<Item = (CurveId, CurveId, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
            .enumerate()
            .map(|(i, (a, b))| (a as CurveId, b as CurveId, i))
    }
}
