//! Built-in aligned symmetric triangulations.
//!
//! Three constructions: the octahedral subdivision of `S^n` (vertices
//! `±e_1 … ±e_{n+1}`), symmetry- and alignment-preserving barycentric
//! refinement, and a 4-vertex triangulation of `S^2` that is
//! combinatorially the boundary of a 3-simplex — aligned with a flag yet
//! not a refinement of the octahedral subdivision.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{ComplexError, Simplex, SymmetricComplex, VertexId};
use crate::flag::{FlagStructureError, HemisphereFlag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Octahedral,
    PaperTetra,
}

/// What to generate: a base triangulation plus a number of barycentric
/// refinements. The tetra example is two-dimensional by construction.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub refinements: usize,
}

pub fn generate(spec: GeneratorSpec) -> Result<(SymmetricComplex, HemisphereFlag), GenError> {
    let (mut complex, mut flag) = match spec.kind {
        GeneratorKind::Octahedral => octahedral(spec.n)?,
        GeneratorKind::PaperTetra => {
            if spec.n != 2 {
                return Err(GenError::TetraDimension { n: spec.n });
            }
            paper_tetra()
        }
    };
    for _ in 0..spec.refinements {
        let (c, f) = barycentric(&complex, &flag)?;
        complex = c;
        flag = f;
    }
    Ok((complex, flag))
}

/// The octahedral subdivision of `S^n`: vertices `±e_i` (ids `0..=n` for
/// the positive axes, `n+1..=2n+1` for their antipodes), one maximal
/// simplex per sign pattern, and the flag whose `H_d` consists of the
/// d-simplices on `{x_{d+1} >= 0, x_j = 0 for j > d+1}`, so `H_0 = e_1`.
pub fn octahedral(n: usize) -> Result<(SymmetricComplex, HemisphereFlag), GenError> {
    if n < 1 {
        return Err(GenError::DimensionTooSmall { n });
    }
    let axes = n + 1;
    let positive = |axis: usize| VertexId(axis as u32);
    let negative = |axis: usize| VertexId((axes + axis) as u32);

    let antipode: Vec<VertexId> = (0..axes)
        .map(negative)
        .chain((0..axes).map(positive))
        .collect();
    let mut coords = vec![vec![0.0; axes]; 2 * axes];
    for axis in 0..axes {
        coords[positive(axis).index()][axis] = 1.0;
        coords[negative(axis).index()][axis] = -1.0;
    }

    let mut maximal = Vec::with_capacity(1 << axes);
    for pattern in 0u32..(1 << axes) {
        let vs = (0..axes).map(|axis| {
            if pattern & (1 << axis) == 0 {
                positive(axis)
            } else {
                negative(axis)
            }
        });
        maximal.push(Simplex::new(vs)?);
    }

    let mut levels = Vec::with_capacity(axes);
    for d in 0..axes {
        let mut level = Vec::with_capacity(1 << d);
        for pattern in 0u32..(1 << d) {
            let vs = (0..d)
                .map(|axis| {
                    if pattern & (1 << axis) == 0 {
                        positive(axis)
                    } else {
                        negative(axis)
                    }
                })
                .chain([positive(d)]);
            level.push(Simplex::new(vs)?);
        }
        levels.push(level);
    }

    let complex = SymmetricComplex::new(n, antipode, maximal, Some(coords))?;
    let flag = HemisphereFlag::new(levels)?;
    Ok((complex, flag))
}

/// The 4-vertex triangulation of `S^2` with vertices `(±1,0,0), (0,±1,0)`
/// and all four triangles: combinatorially the boundary of a 3-simplex.
/// Its two diagonal edges each contain an antipodal vertex pair, so any
/// anti-symmetric labeling has complementary edges there.
///
/// Flag: `H_2` holds the two upper (`z >= 0`) faces, `H_1` the equator arc
/// from `(1,0,0)` through `(0,1,0)` to `(-1,0,0)`, `H_0` the vertex
/// `(1,0,0)`.
pub fn paper_tetra() -> (SymmetricComplex, HemisphereFlag) {
    let coords = vec![
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![-1.0, 0.0, 0.0],
        vec![0.0, -1.0, 0.0],
    ];
    let antipode = vec![VertexId(2), VertexId(3), VertexId(0), VertexId(1)];
    let maximal = vec![
        Simplex::from_ids([0, 1, 2]),
        Simplex::from_ids([0, 1, 3]),
        Simplex::from_ids([0, 2, 3]),
        Simplex::from_ids([1, 2, 3]),
    ];
    let levels = vec![
        vec![Simplex::from_ids([0])],
        vec![Simplex::from_ids([0, 1]), Simplex::from_ids([1, 2])],
        vec![Simplex::from_ids([0, 1, 3]), Simplex::from_ids([1, 2, 3])],
    ];
    let complex = SymmetricComplex::new(2, antipode, maximal, Some(coords))
        .expect("tetra generator is structurally valid");
    let flag = HemisphereFlag::new(levels).expect("tetra flag is structurally valid");
    (complex, flag)
}

/// Barycentric refinement preserving symmetry and alignment.
///
/// One new vertex per closure simplex (ids by lexicographic order of the
/// parent vertex lists, so traces are reproducible), maximal simplices from
/// chains of strictly nested faces, `antipode(bary(σ)) = bary(-σ)`, and the
/// refined `H_d` consisting of the chains that stay inside the closure of
/// the old `H_d`. Coordinates, when present, are renormalized centroids.
///
/// Fails when some closure simplex equals its own antipodal image: the
/// refined involution would fix that barycenter.
pub fn barycentric(
    complex: &SymmetricComplex,
    flag: &HemisphereFlag,
) -> Result<(SymmetricComplex, HemisphereFlag), GenError> {
    let parents: Vec<Simplex> = complex.closure().iter().cloned().collect();
    let mut id_of: HashMap<&Simplex, VertexId> = HashMap::with_capacity(parents.len());
    for (i, sigma) in parents.iter().enumerate() {
        id_of.insert(sigma, VertexId(i as u32));
    }

    let mut antipode = Vec::with_capacity(parents.len());
    for sigma in &parents {
        let image = complex.antipode_simplex(sigma);
        if image == *sigma {
            return Err(GenError::SelfAntipodalSimplex {
                simplex: sigma.clone(),
            });
        }
        antipode.push(id_of[&image]);
    }

    let coords = if complex.has_coords() {
        let mut cs = Vec::with_capacity(parents.len());
        for sigma in &parents {
            let mut centroid = vec![0.0; complex.n() + 1];
            for v in sigma.vertices() {
                for (c, x) in centroid
                    .iter_mut()
                    .zip(complex.coords(*v).expect("has coords"))
                {
                    *c += x;
                }
            }
            let norm = centroid.iter().map(|x| x * x).sum::<f64>().sqrt();
            // Centroids of simplices on a sphere never hit the origin:
            // that would need antipodal vertices in one simplex, and then
            // a degenerate flat simplex; guard anyway.
            if norm == 0.0 {
                return Err(GenError::DegenerateCentroid {
                    simplex: sigma.clone(),
                });
            }
            for c in centroid.iter_mut() {
                *c /= norm;
            }
            cs.push(centroid);
        }
        Some(cs)
    } else {
        None
    };

    let chain_simplices = |top: &Simplex| -> Vec<Simplex> {
        chains_below(top)
            .into_iter()
            .map(|chain| {
                Simplex::new(chain.iter().map(|s| id_of[s]))
                    .expect("chain members are distinct simplices")
            })
            .collect()
    };

    let mut maximal = Vec::new();
    for top in complex.maximal_simplices() {
        maximal.extend(chain_simplices(top));
    }

    let mut levels = Vec::with_capacity(flag.n() + 1);
    for level in flag.levels() {
        let mut refined = Vec::new();
        for top in level {
            refined.extend(chain_simplices(top));
        }
        levels.push(refined);
    }

    let refined = SymmetricComplex::new(complex.n(), antipode, maximal, coords)?;
    let refined_flag = HemisphereFlag::new(levels)?;
    Ok((refined, refined_flag))
}

/// All chains `σ_0 ⊊ … ⊊ σ_k = top` of faces with dimensions `0..=k`.
fn chains_below(top: &Simplex) -> Vec<Vec<Simplex>> {
    if top.dim() == 0 {
        return vec![vec![top.clone()]];
    }
    let mut out = Vec::new();
    for facet in top.facets() {
        for mut chain in chains_below(&facet) {
            chain.push(top.clone());
            out.push(chain);
        }
    }
    out
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("octahedral subdivision needs n >= 1, got {n}")]
    DimensionTooSmall { n: usize },
    #[error("the tetra example is a triangulation of S^2, got n = {n}")]
    TetraDimension { n: usize },
    #[error("cannot refine: simplex {simplex} is its own antipodal image, the refined involution would have a fixed vertex")]
    SelfAntipodalSimplex { simplex: Simplex },
    #[error("degenerate centroid for {simplex}")]
    DegenerateCentroid { simplex: Simplex },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    FlagStructure(#[from] FlagStructureError),
}
