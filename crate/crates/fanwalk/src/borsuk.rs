//! Approximate zero finder for odd maps on the sphere.
//!
//! Sampling an odd map `f: S^n -> R^n` at the vertices induces an
//! anti-symmetric labeling (strongest coordinate, signed); running the
//! Tucker walk yields an edge `{u, w}` whose labels sum to zero, which
//! pins `f_i(u)` and `f_i(w)` to opposite signs while each is the largest
//! coordinate of its vector. Hence
//! `‖f(u)‖_∞ = |f_i(u)| <= |f_i(u) - f_i(w)| <= L·‖u - w‖_∞`
//! for any Lipschitz bound `L` of `f`, and the residual at `u` shrinks
//! with the mesh.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{SymmetricComplex, VertexId};
use crate::flag::HemisphereFlag;
use crate::generators::{self, GenError};
use crate::labeling::{induced_labeling, LabelError};
use crate::pathfinder::{Mode, PathTrace, Termination, WalkError, Walker};

/// The odd map to solve: a linear map `x -> A·x` (odd by construction)
/// with `A` an `m x (n+1)` matrix, or raw samples per antipodal
/// representative.
#[derive(Clone, Debug)]
pub enum OddMap {
    Linear(LinearMap),
    Table(HashMap<VertexId, Vec<f64>>),
}

/// Row-major dense matrix for the linear form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearMap {
    pub rows: Vec<Vec<f64>>,
}

impl LinearMap {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, BorsukError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(BorsukError::EmptyMatrix);
        }
        let width = rows[0].len();
        if rows.iter().any(|r| r.len() != width) {
            return Err(BorsukError::RaggedMatrix);
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(BorsukError::NonFiniteEntry);
        }
        Ok(Self { rows })
    }

    pub fn output_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn input_dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Induced infinity norm: the maximum absolute row sum. A Lipschitz
    /// constant of the map in the infinity norms.
    pub fn inf_norm(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// A located approximate zero: the complementary edge, the sample point,
/// and the residual with its a-priori bound (absent for table maps, whose
/// Lipschitz constant is unknown).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BorsukWitness {
    pub edge: (VertexId, VertexId),
    pub labels: (i32, i32),
    pub point: Vec<f64>,
    pub antipodal_point: Vec<f64>,
    pub residual: f64,
    pub bound: Option<f64>,
    pub refinements: usize,
    pub path_length: usize,
}

/// Refines, samples, induces the labeling, and walks in Tucker mode.
///
/// The witness is reported at the endpoint `u` of the complementary edge
/// whose label is positive. Zero sample vectors abort with the offending
/// vertex; silent perturbation would make runs irreproducible.
pub fn solve(
    complex: &SymmetricComplex,
    flag: &HemisphereFlag,
    map: &OddMap,
    refinements: usize,
) -> Result<BorsukWitness, BorsukError> {
    if !complex.has_coords() {
        return Err(BorsukError::MissingCoordinates);
    }
    if let OddMap::Linear(linear) = map {
        if linear.output_dim() != complex.n() {
            return Err(BorsukError::OutputDimension {
                rows: linear.output_dim(),
                n: complex.n(),
            });
        }
        if linear.input_dim() != complex.n() + 1 {
            return Err(BorsukError::InputDimension {
                cols: linear.input_dim(),
                n: complex.n(),
            });
        }
    }

    let mut refined: Option<(SymmetricComplex, HemisphereFlag)> = None;
    for _ in 0..refinements {
        refined = Some(match &refined {
            Some((c, f)) => generators::barycentric(c, f)?,
            None => generators::barycentric(complex, flag)?,
        });
    }
    let (complex, flag) = match &refined {
        Some((c, f)) => (c, f),
        None => (complex, flag),
    };

    let samples = sample(complex, map)?;
    let labeling = induced_labeling(complex, &samples)?;
    let walker = Walker::new(complex, flag, &labeling, Mode::Tucker)?;
    let trace = walker.run()?;
    witness_from_trace(complex, map, &samples, &trace, refinements)
}

fn sample(
    complex: &SymmetricComplex,
    map: &OddMap,
) -> Result<HashMap<VertexId, Vec<f64>>, BorsukError> {
    match map {
        OddMap::Linear(linear) => {
            let mut samples = HashMap::new();
            for v in complex.representatives() {
                let x = complex.coords(v).expect("coords checked by solve");
                samples.insert(v, linear.apply(x));
            }
            Ok(samples)
        }
        OddMap::Table(table) => {
            for v in complex.representatives() {
                if !table.contains_key(&v) && !table.contains_key(&complex.antipode(v)) {
                    return Err(BorsukError::Label(LabelError::MissingSample { vertex: v }));
                }
            }
            Ok(table.clone())
        }
    }
}

/// The odd extension of the sampled values: `f(-v) = -f(v)`.
fn sample_at(
    complex: &SymmetricComplex,
    samples: &HashMap<VertexId, Vec<f64>>,
    v: VertexId,
) -> Vec<f64> {
    if let Some(f) = samples.get(&v) {
        return f.clone();
    }
    samples[&complex.antipode(v)].iter().map(|x| -x).collect()
}

fn witness_from_trace(
    complex: &SymmetricComplex,
    map: &OddMap,
    samples: &HashMap<VertexId, Vec<f64>>,
    trace: &PathTrace,
    refinements: usize,
) -> Result<BorsukWitness, BorsukError> {
    debug_assert_eq!(trace.termination, Termination::ComplementaryEdge);
    let (a, b) = trace
        .witness
        .complementary_pair
        .ok_or(BorsukError::NoComplementaryPair)?;
    let label_of = |v: VertexId| -> i32 {
        let pos = trace
            .witness
            .simplex
            .vertices()
            .iter()
            .position(|w| *w == v)
            .expect("pair vertices lie in the witness simplex");
        trace.witness.labels[pos]
    };
    // Report at the positively labeled endpoint.
    let (u, w) = if label_of(a) > 0 { (a, b) } else { (b, a) };
    let fu = sample_at(complex, samples, u);
    let residual = fu.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let cu = complex.coords(u).expect("coords present").to_vec();
    let cw = complex.coords(w).expect("coords present").to_vec();
    let bound = match map {
        OddMap::Linear(linear) => {
            let edge_inf = cu
                .iter()
                .zip(&cw)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            Some(linear.inf_norm() * edge_inf)
        }
        OddMap::Table(_) => None,
    };
    Ok(BorsukWitness {
        edge: (u, w),
        labels: (label_of(u), label_of(w)),
        point: cu,
        antipodal_point: cw,
        residual,
        bound,
        refinements,
        path_length: trace.nodes.len(),
    })
}

/// Longest closure edge of a coordinatized complex, in the infinity norm.
pub fn max_edge_length_inf(complex: &SymmetricComplex) -> f64 {
    let mut best: f64 = 0.0;
    for edge in complex.closure().of_dim(1) {
        let a = complex.coords(edge.vertices()[0]).expect("coords present");
        let b = complex.coords(edge.vertices()[1]).expect("coords present");
        let len = a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        best = best.max(len);
    }
    best
}

/// Longest closure edge in the Euclidean norm.
pub fn max_edge_length_euclidean(complex: &SymmetricComplex) -> f64 {
    let mut best: f64 = 0.0;
    for edge in complex.closure().of_dim(1) {
        let a = complex.coords(edge.vertices()[0]).expect("coords present");
        let b = complex.coords(edge.vertices()[1]).expect("coords present");
        let len = a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        best = best.max(len);
    }
    best
}

#[derive(Debug, Error)]
pub enum BorsukError {
    #[error("matrix must be nonempty")]
    EmptyMatrix,
    #[error("matrix rows have unequal lengths")]
    RaggedMatrix,
    #[error("matrix contains a non-finite entry")]
    NonFiniteEntry,
    #[error("matrix has {rows} rows; expected n = {n}")]
    OutputDimension { rows: usize, n: usize },
    #[error("matrix has {cols} columns; expected n+1 = {}", n + 1)]
    InputDimension { cols: usize, n: usize },
    #[error("complex has no coordinates; the solver needs them to sample the map")]
    MissingCoordinates,
    #[error("tucker walk ended without a complementary pair")]
    NoComplementaryPair,
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Gen(#[from] GenError),
}
