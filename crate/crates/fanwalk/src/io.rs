//! JSON interchange formats.
//!
//! One document bundles a complex with its flag; labelings, traces, oracle
//! reports, sample tables, and witnesses are separate files. Keys are
//! emitted in sorted order and simplex lists sorted, so regenerating a
//! file yields identical bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::borsuk::BorsukWitness;
use crate::complex::{ComplexError, Simplex, SymmetricComplex, VertexId};
use crate::flag::{Carrier, FlagStructureError, HemisphereFlag};
use crate::labeling::{LabelError, Labeling, Sign};
use crate::oracle::OracleReport;
use crate::pathfinder::{Node, PathTrace, Termination, Witness};

#[derive(Debug, Serialize, Deserialize)]
struct VertexDoc {
    id: u32,
    antipode: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<f64>>,
}

/// On-disk form of a complex + flag bundle.
#[derive(Debug, Serialize, Deserialize)]
pub struct ComplexDoc {
    n: usize,
    vertices: Vec<VertexDoc>,
    maximal_simplices: Vec<Vec<u32>>,
    flag: BTreeMap<String, Vec<Vec<u32>>>,
}

impl ComplexDoc {
    pub fn encode(complex: &SymmetricComplex, flag: &HemisphereFlag) -> Self {
        let vertices = complex
            .vertices()
            .map(|v| VertexDoc {
                id: v.0,
                antipode: complex.antipode(v).0,
                coords: complex.coords(v).map(|c| c.to_vec()),
            })
            .collect();
        let maximal_simplices = complex
            .maximal_simplices()
            .iter()
            .map(simplex_to_ids)
            .collect();
        let mut flag_doc = BTreeMap::new();
        for (d, level) in flag.levels().iter().enumerate() {
            flag_doc.insert(d.to_string(), level.iter().map(simplex_to_ids).collect());
        }
        ComplexDoc {
            n: complex.n(),
            vertices: vertices_sorted(vertices),
            maximal_simplices,
            flag: flag_doc,
        }
    }

    pub fn decode(self) -> Result<(SymmetricComplex, HemisphereFlag), LoadError> {
        let count = self.vertices.len();
        let mut antipode = vec![None; count];
        let mut coords = Vec::new();
        let mut any_coords = false;
        for v in &self.vertices {
            if v.coords.is_some() {
                any_coords = true;
            }
        }
        for v in &self.vertices {
            let idx = v.id as usize;
            if idx >= count {
                return Err(LoadError::IdsNotDense { id: v.id, count });
            }
            if antipode[idx].is_some() {
                return Err(LoadError::DuplicateVertexId { id: v.id });
            }
            antipode[idx] = Some(VertexId(v.antipode));
            if any_coords && v.coords.is_none() {
                return Err(LoadError::MissingCoords { id: v.id });
            }
        }
        if any_coords {
            coords = vec![Vec::new(); count];
            for v in &self.vertices {
                let c = v.coords.clone().expect("checked above");
                let norm: f64 = c.iter().map(|x| x * x).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > 1e-9 {
                    return Err(LoadError::CoordsNotUnit { id: v.id, norm });
                }
                coords[v.id as usize] = c;
            }
        }
        let antipode: Vec<VertexId> = antipode
            .into_iter()
            .enumerate()
            .map(|(i, a)| {
                a.ok_or(LoadError::IdsNotDense {
                    id: i as u32,
                    count,
                })
            })
            .collect::<Result<_, _>>()?;
        let maximal = self
            .maximal_simplices
            .iter()
            .map(|ids| ids_to_simplex(ids))
            .collect::<Result<Vec<_>, _>>()?;
        let complex =
            SymmetricComplex::new(self.n, antipode, maximal, any_coords.then_some(coords))?;

        let mut levels = Vec::with_capacity(self.n + 1);
        for d in 0..=self.n {
            let level = self
                .flag
                .get(&d.to_string())
                .ok_or(LoadError::MissingFlagLevel { level: d })?;
            levels.push(
                level
                    .iter()
                    .map(|ids| ids_to_simplex(ids))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        let flag = HemisphereFlag::new(levels)?;
        Ok((complex, flag))
    }
}

fn vertices_sorted(mut vs: Vec<VertexDoc>) -> Vec<VertexDoc> {
    vs.sort_by_key(|v| v.id);
    vs
}

fn simplex_to_ids(sigma: &Simplex) -> Vec<u32> {
    sigma.vertices().iter().map(|v| v.0).collect()
}

fn ids_to_simplex(ids: &[u32]) -> Result<Simplex, LoadError> {
    Ok(Simplex::new(ids.iter().map(|i| VertexId(*i)))?)
}

/// On-disk labeling: `m` plus a map from vertex id to label. Only one
/// representative per antipodal pair is required; the loader mirrors the
/// rest and cross-checks pairs that are given twice.
#[derive(Debug, Serialize, Deserialize)]
pub struct LabelingDoc {
    m: u32,
    labels: BTreeMap<String, i32>,
}

impl LabelingDoc {
    pub fn encode(labeling: &Labeling) -> Self {
        let labels = (0..labeling.vertex_count() as u32)
            .map(|v| (v.to_string(), labeling.label(VertexId(v))))
            .collect();
        LabelingDoc {
            m: labeling.m(),
            labels,
        }
    }

    pub fn decode(self, complex: &SymmetricComplex) -> Result<Labeling, LoadError> {
        let count = complex.vertex_count();
        let mut labels = vec![0i32; count];
        let mut given = vec![false; count];
        for (key, label) in &self.labels {
            let id: u32 = key
                .parse()
                .map_err(|_| LoadError::BadVertexKey { key: key.clone() })?;
            if id as usize >= count {
                return Err(LoadError::IdsNotDense { id, count });
            }
            labels[id as usize] = *label;
            given[id as usize] = true;
        }
        for v in complex.vertices() {
            let w = complex.antipode(v);
            match (given[v.index()], given[w.index()]) {
                (true, true) => {
                    if labels[v.index()] + labels[w.index()] != 0 {
                        return Err(LoadError::AntisymmetryConflict {
                            vertex: v.0,
                            antipode: w.0,
                        });
                    }
                }
                (true, false) => {
                    labels[w.index()] = -labels[v.index()];
                    given[w.index()] = true;
                }
                (false, true) => {
                    labels[v.index()] = -labels[w.index()];
                    given[v.index()] = true;
                }
                (false, false) => return Err(LoadError::MissingLabel { id: v.0 }),
            }
        }
        Ok(Labeling::new(self.m, labels)?)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CarrierDoc {
    dim: usize,
    sign: i8,
}

impl From<Carrier> for CarrierDoc {
    fn from(c: Carrier) -> Self {
        CarrierDoc {
            dim: c.dim,
            sign: c.sign.as_i8(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeDoc {
    simplex: Vec<u32>,
    labels: Vec<i32>,
    carrier: CarrierDoc,
    #[serde(rename = "type")]
    node_type: u8,
}

#[derive(Debug, Serialize, Deserialize)]
struct WitnessDoc {
    simplex: Vec<u32>,
    labels: Vec<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complementary_pair: Option<(u32, u32)>,
}

/// On-disk form of a walk trace.
#[derive(Debug, Serialize, Deserialize)]
pub struct TraceDoc {
    trace: Vec<NodeDoc>,
    termination: Termination,
    witness: WitnessDoc,
}

impl TraceDoc {
    pub fn encode(trace: &PathTrace, labeling: &Labeling) -> Self {
        let nodes = trace
            .nodes
            .iter()
            .map(|node| NodeDoc {
                simplex: simplex_to_ids(&node.simplex),
                labels: labeling.of_simplex(&node.simplex),
                carrier: node.carrier.into(),
                node_type: node.node_type.code(),
            })
            .collect();
        TraceDoc {
            trace: nodes,
            termination: trace.termination,
            witness: WitnessDoc {
                simplex: simplex_to_ids(&trace.witness.simplex),
                labels: trace.witness.labels.clone(),
                complementary_pair: trace.witness.complementary_pair.map(|(a, b)| (a.0, b.0)),
            },
        }
    }
}

/// Summary form of an oracle report; the full node/edge/path lists are
/// included only on request.
#[derive(Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    pub positive_alternating: usize,
    pub negative_alternating: usize,
    pub node_count: usize,
    pub edge_count: usize,
    pub endpoint_count: usize,
    pub path_count: usize,
    pub cycle_count: usize,
    pub endpoints: Vec<Vec<u32>>,
    pub claim_violations: Vec<String>,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(Vec<u32>, Vec<u32>)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<Vec<Vec<u32>>>>,
}

impl ReportDoc {
    pub fn encode(report: &OracleReport, checks: BTreeMap<String, bool>, full: bool) -> Self {
        ReportDoc {
            positive_alternating: report.positive_alternating,
            negative_alternating: report.negative_alternating,
            node_count: report.nodes.len(),
            edge_count: report.edges.len(),
            endpoint_count: report.endpoint_count,
            path_count: report.paths.len(),
            cycle_count: report.cycles.len(),
            endpoints: report.endpoints().into_iter().map(simplex_to_ids).collect(),
            claim_violations: report.violations.clone(),
            checks,
            edges: full.then(|| {
                report
                    .edges
                    .iter()
                    .map(|(a, b)| (simplex_to_ids(a), simplex_to_ids(b)))
                    .collect()
            }),
            paths: full.then(|| {
                report
                    .paths
                    .iter()
                    .map(|p| p.iter().map(simplex_to_ids).collect())
                    .collect()
            }),
        }
    }
}

/// On-disk sample table for externally evaluated odd maps.
#[derive(Debug, Serialize, Deserialize)]
pub struct SampleTableDoc {
    pub samples: BTreeMap<String, Vec<f64>>,
}

impl SampleTableDoc {
    pub fn decode(self) -> Result<std::collections::HashMap<VertexId, Vec<f64>>, LoadError> {
        let mut out = std::collections::HashMap::new();
        for (key, value) in self.samples {
            let id: u32 = key
                .parse()
                .map_err(|_| LoadError::BadVertexKey { key: key.clone() })?;
            out.insert(VertexId(id), value);
        }
        Ok(out)
    }
}

/// On-disk form of a Borsuk witness.
#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessFileDoc {
    pub edge: (u32, u32),
    pub labels: (i32, i32),
    pub point: Vec<f64>,
    pub antipodal_point: Vec<f64>,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    pub refinements: usize,
    pub path_length: usize,
}

impl WitnessFileDoc {
    pub fn encode(w: &BorsukWitness) -> Self {
        WitnessFileDoc {
            edge: (w.edge.0 .0, w.edge.1 .0),
            labels: w.labels,
            point: w.point.clone(),
            antipodal_point: w.antipodal_point.clone(),
            residual: w.residual,
            bound: w.bound,
            refinements: w.refinements,
            path_length: w.path_length,
        }
    }
}

pub fn to_json_string<T: Serialize>(doc: &T) -> Result<String, LoadError> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<(), LoadError> {
    fs::write(path, to_json_string(doc)?)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, LoadError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn save_complex(
    path: &Path,
    complex: &SymmetricComplex,
    flag: &HemisphereFlag,
) -> Result<(), LoadError> {
    write_json(path, &ComplexDoc::encode(complex, flag))
}

pub fn load_complex(path: &Path) -> Result<(SymmetricComplex, HemisphereFlag), LoadError> {
    read_json::<ComplexDoc>(path)?.decode()
}

pub fn save_labeling(path: &Path, labeling: &Labeling) -> Result<(), LoadError> {
    write_json(path, &LabelingDoc::encode(labeling))
}

pub fn load_labeling(path: &Path, complex: &SymmetricComplex) -> Result<Labeling, LoadError> {
    read_json::<LabelingDoc>(path)?.decode(complex)
}

// Re-exported for trace consumers that want typed nodes back. Decoding a
// trace is only needed by tooling; the solver always regenerates traces.
pub use self::trace_decode::decode_trace;

mod trace_decode {
    use super::*;
    use crate::labeling::classify;

    /// Rehydrates a trace document against its complex and labeling.
    pub fn decode_trace(doc: &TraceDoc, labeling: &Labeling) -> Result<PathTrace, LoadError> {
        let mut nodes = Vec::with_capacity(doc.trace.len());
        for nd in &doc.trace {
            let simplex = ids_to_simplex(&nd.simplex)?;
            let class = classify(&labeling.of_simplex(&simplex))?;
            let node_type = match nd.node_type {
                1 => crate::pathfinder::NodeType::AlternatingLower,
                2 => crate::pathfinder::NodeType::AlmostAlternating,
                3 => crate::pathfinder::NodeType::AlternatingFull,
                other => return Err(LoadError::BadNodeType { value: other }),
            };
            let sign = Sign::from_i8(nd.carrier.sign).ok_or(LoadError::BadSign {
                value: nd.carrier.sign,
            })?;
            nodes.push(Node {
                simplex,
                carrier: Carrier {
                    dim: nd.carrier.dim,
                    sign,
                },
                class,
                node_type,
            });
        }
        let simplex = ids_to_simplex(&doc.witness.simplex)?;
        Ok(PathTrace {
            nodes,
            termination: doc.termination,
            witness: Witness {
                simplex,
                labels: doc.witness.labels.clone(),
                complementary_pair: doc
                    .witness
                    .complementary_pair
                    .map(|(a, b)| (VertexId(a), VertexId(b))),
            },
        })
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("vertex id {id} outside dense range 0..{count}")]
    IdsNotDense { id: u32, count: usize },
    #[error("vertex id {id} appears twice")]
    DuplicateVertexId { id: u32 },
    #[error("vertex {id} lacks coordinates while others have them")]
    MissingCoords { id: u32 },
    #[error("coordinates of vertex {id} have norm {norm}; unit norm within 1e-9 required")]
    CoordsNotUnit { id: u32, norm: f64 },
    #[error("flag level {level} missing from document")]
    MissingFlagLevel { level: usize },
    #[error("label map key {key:?} is not a vertex id")]
    BadVertexKey { key: String },
    #[error("labels of vertices {vertex} and {antipode} both given but do not sum to zero")]
    AntisymmetryConflict { vertex: u32, antipode: u32 },
    #[error("no label for vertex {id} or its antipode")]
    MissingLabel { id: u32 },
    #[error("node type {value} is not 1, 2, or 3")]
    BadNodeType { value: u8 },
    #[error("sign {value} is not +1 or -1")]
    BadSign { value: i8 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    FlagStructure(#[from] FlagStructureError),
    #[error(transparent)]
    Label(#[from] LabelError),
}
