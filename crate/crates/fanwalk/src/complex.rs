//! Abstract symmetric simplicial complexes of the n-sphere.
//!
//! A [`SymmetricComplex`] stores the maximal simplices explicitly together
//! with a fixed-point-free vertex involution (the antipodal map). Lower
//! faces are derived on demand and memoized per dimension, since carrier
//! lookup and the oracle query membership repeatedly.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a vertex, dense in `0..vertex_count`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A simplex identified by its strictly increasing vertex list.
///
/// No orientation data is stored; none of the algorithms in this crate
/// need it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

impl Simplex {
    /// Builds a simplex from any vertex iterator; sorts and rejects
    /// duplicates.
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Result<Self, ComplexError> {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        vs.sort_unstable();
        if vs.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex { simplex: vs });
        }
        Ok(Self { vertices: vs })
    }

    /// Convenience constructor from raw ids; panics on duplicates.
    /// Intended for literals in tests and generators.
    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        Self::new(ids.into_iter().map(VertexId)).expect("valid simplex literal")
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// True when `other` is a face of `self` (vertex subset).
    pub fn has_face(&self, other: &Simplex) -> bool {
        other.vertices.iter().all(|v| self.contains(*v))
    }

    /// All k-dimensional faces, i.e. the (k+1)-subsets of the vertex set.
    pub fn faces(&self, k: usize) -> Result<Vec<Simplex>, ComplexError> {
        if k > self.dim() {
            return Err(ComplexError::FaceDimensionOutOfRange { k, dim: self.dim() });
        }
        Ok(self
            .vertices
            .iter()
            .copied()
            .combinations(k + 1)
            .map(|vs| Simplex { vertices: vs })
            .collect())
    }

    /// The facets (codimension-1 faces); empty for a vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.dim() == 0 {
            return Vec::new();
        }
        self.faces(self.dim() - 1).expect("dim >= 1")
    }

    /// The facet obtained by deleting the vertex at `position`.
    pub fn remove_vertex_at(&self, position: usize) -> Simplex {
        let mut vs = self.vertices.clone();
        vs.remove(position);
        Simplex { vertices: vs }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v.0)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Members of `pool` that have `sigma` as a facet.
///
/// Callers are expected to pass a pool of simplices one dimension above
/// `sigma`; anything else is filtered out rather than rejected.
pub fn cofacets<'a, I>(sigma: &Simplex, pool: I) -> Vec<Simplex>
where
    I: IntoIterator<Item = &'a Simplex>,
{
    pool.into_iter()
        .filter(|tau| tau.dim() == sigma.dim() + 1 && tau.has_face(sigma))
        .cloned()
        .collect()
}

/// Per-dimension sets of all simplices appearing as faces of the maximal
/// simplices. Derived lazily by [`SymmetricComplex::closure`].
#[derive(Debug)]
pub struct Closure {
    by_dim: Vec<BTreeSet<Simplex>>,
}

impl Closure {
    pub fn of_dim(&self, d: usize) -> &BTreeSet<Simplex> {
        &self.by_dim[d]
    }

    pub fn contains(&self, sigma: &Simplex) -> bool {
        sigma.dim() < self.by_dim.len() && self.by_dim[sigma.dim()].contains(sigma)
    }

    /// All simplices, dimension by dimension.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flat_map(|s| s.iter())
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(|s| s.len()).sum()
    }
}

/// A triangulation of `S^n` together with a vertex involution.
///
/// Construction performs only structural checks (dense ids, dimensions,
/// table lengths); the semantic invariants — free involution, antipodal
/// closure, pseudo-manifold facets, coordinate symmetry — are reported by
/// [`SymmetricComplex::validate_symmetry`] so that broken inputs can be
/// diagnosed rather than refused outright.
pub struct SymmetricComplex {
    n: usize,
    antipode: Vec<VertexId>,
    maximal: Vec<Simplex>,
    coords: Option<Vec<Vec<f64>>>,
    closure: OnceLock<Closure>,
}

impl SymmetricComplex {
    pub fn new(
        n: usize,
        antipode: Vec<VertexId>,
        maximal: Vec<Simplex>,
        coords: Option<Vec<Vec<f64>>>,
    ) -> Result<Self, ComplexError> {
        let v = antipode.len();
        if maximal.is_empty() {
            return Err(ComplexError::NoMaximalSimplices);
        }
        for w in &antipode {
            if w.index() >= v {
                return Err(ComplexError::VertexOutOfRange {
                    vertex: *w,
                    count: v,
                });
            }
        }
        for sigma in &maximal {
            if sigma.dim() != n {
                return Err(ComplexError::MaximalDimensionMismatch {
                    simplex: sigma.clone(),
                    expected: n,
                });
            }
            for vtx in sigma.vertices() {
                if vtx.index() >= v {
                    return Err(ComplexError::VertexOutOfRange {
                        vertex: *vtx,
                        count: v,
                    });
                }
            }
        }
        if let Some(cs) = &coords {
            if cs.len() != v {
                return Err(ComplexError::CoordsCountMismatch {
                    expected: v,
                    actual: cs.len(),
                });
            }
            for (i, c) in cs.iter().enumerate() {
                if c.len() != n + 1 {
                    return Err(ComplexError::CoordsLengthMismatch {
                        vertex: VertexId(i as u32),
                        expected: n + 1,
                        actual: c.len(),
                    });
                }
            }
        }
        let mut maximal = maximal;
        maximal.sort_unstable();
        maximal.dedup();
        Ok(Self {
            n,
            antipode,
            maximal,
            coords,
            closure: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.antipode.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.antipode.len() as u32).map(VertexId)
    }

    /// Maximal simplices in sorted order.
    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.maximal
    }

    pub fn antipode(&self, v: VertexId) -> VertexId {
        self.antipode[v.index()]
    }

    /// Vertex-wise antipodal image, re-sorted.
    pub fn antipode_simplex(&self, sigma: &Simplex) -> Simplex {
        Simplex::new(sigma.vertices().iter().map(|v| self.antipode(*v)))
            .expect("involution preserves distinctness")
    }

    pub fn coords(&self, v: VertexId) -> Option<&[f64]> {
        self.coords.as_ref().map(|cs| cs[v.index()].as_slice())
    }

    pub fn has_coords(&self) -> bool {
        self.coords.is_some()
    }

    /// One representative per antipodal orbit: the vertex whose id is
    /// smaller than its antipode's. Fixed points (invalid, but storable)
    /// are included so validators can see them.
    pub fn representatives(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|v| *v <= self.antipode(*v))
            .collect()
    }

    /// The memoized face closure of the maximal simplices.
    pub fn closure(&self) -> &Closure {
        self.closure.get_or_init(|| {
            let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); self.n + 1];
            for tau in &self.maximal {
                for (k, bucket) in by_dim.iter_mut().enumerate() {
                    for f in tau.faces(k).expect("k <= n") {
                        bucket.insert(f);
                    }
                }
            }
            Closure { by_dim }
        })
    }

    /// Checks every semantic invariant and reports findings.
    ///
    /// Simplices that contain an antipodal vertex pair, and simplices equal
    /// to their own antipodal image, are legal in the data model but matter
    /// downstream (they force complementary edges under any anti-symmetric
    /// labeling), so they are surfaced as advisory flags, not violations.
    pub fn validate_symmetry(&self) -> SymmetryReport {
        let mut report = SymmetryReport::default();
        for v in self.vertices() {
            let w = self.antipode(v);
            if w == v {
                report
                    .violations
                    .push(SymmetryViolation::FixedPoint { vertex: v });
            } else if self.antipode(w) != v {
                report
                    .violations
                    .push(SymmetryViolation::NotInvolution { vertex: v });
            }
        }
        let top: BTreeSet<&Simplex> = self.maximal.iter().collect();
        for sigma in &self.maximal {
            let image = self.antipode_simplex(sigma);
            if !top.contains(&image) {
                report
                    .violations
                    .push(SymmetryViolation::MissingAntipodalSimplex {
                        simplex: sigma.clone(),
                    });
            }
        }
        if self.n >= 1 {
            let mut facet_count: HashMap<Simplex, usize> = HashMap::new();
            for sigma in &self.maximal {
                for f in sigma.facets() {
                    *facet_count.entry(f).or_insert(0) += 1;
                }
            }
            let mut bad: Vec<(Simplex, usize)> =
                facet_count.into_iter().filter(|(_, c)| *c != 2).collect();
            bad.sort();
            for (face, count) in bad {
                report
                    .violations
                    .push(SymmetryViolation::NonManifoldFacet { face, count });
            }
        }
        if let Some(cs) = &self.coords {
            for v in self.vertices() {
                let c = &cs[v.index()];
                let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > 1e-9 {
                    report
                        .violations
                        .push(SymmetryViolation::NotUnitNorm { vertex: v, norm });
                }
                let a = &cs[self.antipode(v).index()];
                if c.iter().zip(a).any(|(x, y)| (x + y).abs() > 1e-9) {
                    report
                        .violations
                        .push(SymmetryViolation::CoordsNotNegated { vertex: v });
                }
            }
        }
        for sigma in self.closure().iter() {
            if sigma
                .vertices()
                .iter()
                .any(|v| *v < self.antipode(*v) && sigma.contains(self.antipode(*v)))
            {
                report.simplices_with_antipodal_pair.push(sigma.clone());
            }
            if sigma.dim() >= 1 && self.antipode_simplex(sigma) == *sigma {
                report.self_antipodal_simplices.push(sigma.clone());
            }
        }
        report
    }
}

impl fmt::Debug for SymmetricComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricComplex")
            .field("n", &self.n)
            .field("vertices", &self.vertex_count())
            .field("maximal", &self.maximal.len())
            .field("coords", &self.coords.is_some())
            .finish()
    }
}

/// Outcome of [`SymmetricComplex::validate_symmetry`].
#[derive(Debug, Default)]
pub struct SymmetryReport {
    pub violations: Vec<SymmetryViolation>,
    /// Closure simplices containing a pair `{v, -v}`.
    pub simplices_with_antipodal_pair: Vec<Simplex>,
    /// Closure simplices equal to their own antipodal image.
    pub self_antipodal_simplices: Vec<Simplex>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_antipodal_pairs(&self) -> bool {
        !self.simplices_with_antipodal_pair.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SymmetryViolation {
    FixedPoint { vertex: VertexId },
    NotInvolution { vertex: VertexId },
    MissingAntipodalSimplex { simplex: Simplex },
    NonManifoldFacet { face: Simplex, count: usize },
    NotUnitNorm { vertex: VertexId, norm: f64 },
    CoordsNotNegated { vertex: VertexId },
}

impl fmt::Display for SymmetryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FixedPoint { vertex } => write!(f, "antipode fixes vertex {vertex}"),
            Self::NotInvolution { vertex } => {
                write!(f, "antipode is not an involution at vertex {vertex}")
            }
            Self::MissingAntipodalSimplex { simplex } => {
                write!(f, "antipodal image of {simplex} is not a maximal simplex")
            }
            Self::NonManifoldFacet { face, count } => {
                write!(
                    f,
                    "facet {face} lies in {count} maximal simplices, expected 2"
                )
            }
            Self::NotUnitNorm { vertex, norm } => {
                write!(f, "coordinates of {vertex} have norm {norm}, expected 1")
            }
            Self::CoordsNotNegated { vertex } => {
                write!(f, "coords(antipode({vertex})) != -coords({vertex})")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,
    #[error("duplicate vertex in simplex {simplex:?}")]
    DuplicateVertex { simplex: Vec<VertexId> },
    #[error("face dimension {k} out of range for a {dim}-simplex")]
    FaceDimensionOutOfRange { k: usize, dim: usize },
    #[error("no maximal simplices")]
    NoMaximalSimplices,
    #[error("vertex {vertex} out of range (complex has {count} vertices)")]
    VertexOutOfRange { vertex: VertexId, count: usize },
    #[error("maximal simplex {simplex} has dimension {}, expected {expected}", simplex.dim())]
    MaximalDimensionMismatch { simplex: Simplex, expected: usize },
    #[error("coordinate table has {actual} entries for {expected} vertices")]
    CoordsCountMismatch { expected: usize, actual: usize },
    #[error("coordinates of {vertex} have {actual} components, expected {expected}")]
    CoordsLengthMismatch {
        vertex: VertexId,
        expected: usize,
        actual: usize,
    },
}
