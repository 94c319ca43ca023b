//! The constructive path walk.
//!
//! Nodes of the implicit graph G are simplices carried by some hemisphere
//! `(d, s)` that are (1) agreeable alternating (d-1)-simplices,
//! (2) agreeable almost-alternating d-simplices, or (3) alternating
//! d-simplices of either sign. Two nodes are adjacent when one is a facet
//! of the other, the intersection is alternating, and the sign of the
//! carrier of the union matches the sign of the intersection. Every node
//! has degree 1 or 2, so following the unique continuation from the vertex
//! `H_0` traces a path; its far endpoint is the object being searched for.
//!
//! G is never materialized here; neighbors are computed on demand from the
//! flag incidences, so a walk touches only the simplices along its path.
//! Full enumeration lives in the `oracle` module.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Simplex, SymmetricComplex, VertexId};
use crate::flag::{Carrier, CarrierError, FlagIndex, HemisphereFlag};
use crate::labeling::{validate_labeling, Labeling, SimplexClass, SimplexKind};

/// Solver hypotheses: `Fan` requires an anti-symmetric labeling with no
/// complementary edge and stops at an alternating top simplex; `Tucker`
/// allows complementary edges and stops at an almost-alternating simplex
/// containing one (or at an alternating top simplex, possible when the
/// label bound exceeds the dimension).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Fan,
    Tucker,
}

/// Qualification of a node simplex relative to its carrier `(d, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeType {
    /// Agreeable alternating (d-1)-simplex.
    AlternatingLower = 1,
    /// Agreeable almost-alternating d-simplex.
    AlmostAlternating = 2,
    /// Alternating d-simplex, either sign.
    AlternatingFull = 3,
}

impl NodeType {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// A simplex qualified as a node of G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub simplex: Simplex,
    pub carrier: Carrier,
    pub class: SimplexClass,
    pub node_type: NodeType,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [type {} @ {}]",
            self.simplex,
            self.node_type.code(),
            self.carrier
        )
    }
}

/// How a walk ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    /// Fan endpoint: an alternating top-dimensional simplex.
    AlternatingN,
    /// Tucker endpoint: an almost-alternating simplex containing an edge
    /// whose labels sum to zero.
    ComplementaryEdge,
    /// The walk reached `-H_0`: impossible on valid instances, surfaced as
    /// a structural anomaly.
    AntipodalStart,
}

/// Terminal simplex of a walk; for complementary-edge terminations also
/// the zero-sum vertex pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub simplex: Simplex,
    pub labels: Vec<i32>,
    pub complementary_pair: Option<(VertexId, VertexId)>,
}

/// The ordered walk from `{H_0}`, its termination, and the witness.
///
/// `nodes` is empty exactly for the Tucker short-circuit on complexes
/// where some simplex contains an antipodal vertex pair: anti-symmetry
/// already makes that pair a complementary edge, no walk needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathTrace {
    pub nodes: Vec<Node>,
    pub termination: Termination,
    pub witness: Witness,
}

/// A validated instance ready to walk: complex + flag + labeling + mode.
pub struct Walker<'a> {
    index: FlagIndex<'a>,
    labeling: &'a Labeling,
    mode: Mode,
}

impl<'a> Walker<'a> {
    /// Validates the instance for `mode` and builds the flag index.
    ///
    /// Both modes require a structurally valid symmetric complex, a valid
    /// flag, and an anti-symmetric labeling of matching size. Fan mode
    /// additionally rejects complementary edges anywhere in the closure
    /// (which also covers simplices with antipodal vertex pairs) and label
    /// bounds `m <= n`, which the parity theorem makes contradictory.
    pub fn new(
        complex: &'a SymmetricComplex,
        flag: &'a HemisphereFlag,
        labeling: &'a Labeling,
        mode: Mode,
    ) -> Result<Self, WalkError> {
        if labeling.vertex_count() != complex.vertex_count() {
            return Err(WalkError::LabelCountMismatch {
                labels: labeling.vertex_count(),
                vertices: complex.vertex_count(),
            });
        }
        let symmetry = complex.validate_symmetry();
        if !symmetry.passed() {
            return Err(WalkError::InvalidComplex {
                first: symmetry.violations[0].to_string(),
                count: symmetry.violations.len(),
            });
        }
        let flag_report = crate::flag::validate_flag(complex, flag);
        if !flag_report.passed() {
            return Err(WalkError::InvalidFlag {
                first: flag_report.violations[0].to_string(),
                count: flag_report.violations.len(),
            });
        }
        let labels = validate_labeling(complex, labeling, mode == Mode::Fan);
        if !labels.antisymmetric() {
            let (v, w) = labels.antisymmetry_violations[0];
            return Err(WalkError::NotAntisymmetric {
                vertex: v,
                antipode: w,
            });
        }
        if mode == Mode::Fan {
            // The parity theorem forces m >= n+1 whenever the other
            // hypotheses hold, so smaller bounds are rejected up front.
            if (labeling.m() as usize) < complex.n() + 1 {
                return Err(WalkError::LabelBoundTooSmall {
                    m: labeling.m(),
                    n: complex.n(),
                });
            }
            if !labels.complementary_edges.is_empty() {
                return Err(WalkError::ComplementaryEdges {
                    edges: labels.complementary_edges,
                });
            }
        }
        Ok(Self {
            index: FlagIndex::new(complex, flag),
            labeling,
            mode,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn complex(&self) -> &'a SymmetricComplex {
        self.index.complex()
    }

    pub fn flag(&self) -> &'a HemisphereFlag {
        self.index.flag()
    }

    pub fn labeling(&self) -> &'a Labeling {
        self.labeling
    }

    /// Decides whether `sigma` is a node of G.
    ///
    /// In Tucker mode an almost-alternating d-simplex containing a
    /// complementary edge also qualifies when one of its alternating
    /// facets matches the carrier sign; such nodes have degree 1 and are
    /// exactly the Tucker endpoints.
    pub fn is_node(&self, sigma: &Simplex) -> Result<Option<Node>, WalkError> {
        let carrier = self.index.carrier(sigma)?;
        let class = self.labeling.classify_simplex(sigma);
        let node_type = self.qualify(sigma, carrier, &class);
        Ok(node_type.map(|node_type| Node {
            simplex: sigma.clone(),
            carrier,
            class,
            node_type,
        }))
    }

    fn qualify(&self, sigma: &Simplex, carrier: Carrier, class: &SimplexClass) -> Option<NodeType> {
        let dim = sigma.dim();
        match class.kind {
            SimplexKind::Alternating => {
                if dim == carrier.dim {
                    Some(NodeType::AlternatingFull)
                } else if dim + 1 == carrier.dim && class.sign == Some(carrier.sign) {
                    Some(NodeType::AlternatingLower)
                } else {
                    None
                }
            }
            SimplexKind::AlmostAlternating if dim == carrier.dim => {
                if class.has_complementary_edge && self.mode != Mode::Tucker {
                    return None;
                }
                class
                    .facets_with_sign(carrier.sign)
                    .next()
                    .map(|_| NodeType::AlmostAlternating)
            }
            _ => None,
        }
    }

    /// The 1 or 2 neighbors of a node, in deterministic order.
    pub fn neighbors(&self, node: &Node) -> Result<Vec<Node>, WalkError> {
        let d = node.carrier.dim;
        let s = node.carrier.sign;
        let mut out = Vec::with_capacity(2);
        match node.node_type {
            NodeType::AlternatingLower => {
                // Interior (d-1)-face of the carrier hemisphere: its two
                // cofacets in the level list are both nodes.
                let cofacets = self.index.level_cofacets(d, s, &node.simplex);
                if cofacets.len() != 2 {
                    return Err(WalkError::BadLevelIncidence {
                        simplex: node.simplex.clone(),
                        level: d,
                        found: cofacets.len(),
                        expected: 2,
                    });
                }
                for tau in cofacets {
                    out.push(self.expect_node(&tau)?);
                }
            }
            NodeType::AlmostAlternating => {
                // Alternating facets whose sign matches the carrier: two
                // without a complementary edge, one with.
                for facet in node.class.facets_with_sign(s) {
                    let rho = node.simplex.remove_vertex_at(facet.remove);
                    out.push(self.expect_node(&rho)?);
                }
                if out.is_empty() {
                    return Err(WalkError::NotANode {
                        simplex: node.simplex.clone(),
                    });
                }
                out.sort_by(|a, b| a.simplex.cmp(&b.simplex));
                out.dedup_by(|a, b| a.simplex == b.simplex);
            }
            NodeType::AlternatingFull => {
                // Downward: the unique alternating facet whose sign equals
                // the carrier sign (drop the largest magnitude to keep the
                // sign, the smallest to flip it).
                if d > 0 {
                    let facet = node.class.facets_with_sign(s).next().ok_or_else(|| {
                        WalkError::NotANode {
                            simplex: node.simplex.clone(),
                        }
                    })?;
                    let rho = node.simplex.remove_vertex_at(facet.remove);
                    out.push(self.expect_node(&rho)?);
                }
                // Upward: of the two cofacets in H_{d+1} and -H_{d+1}, the
                // one on the side named by the simplex's own sign.
                if d < self.index.flag().n() {
                    let side = node.class.sign.expect("alternating simplices are signed");
                    let cofacets = self.index.level_cofacets(d + 1, side, &node.simplex);
                    if cofacets.len() != 1 {
                        return Err(WalkError::BadLevelIncidence {
                            simplex: node.simplex.clone(),
                            level: d + 1,
                            found: cofacets.len(),
                            expected: 1,
                        });
                    }
                    out.push(self.expect_node(&cofacets[0])?);
                }
            }
        }
        Ok(out)
    }

    fn expect_node(&self, sigma: &Simplex) -> Result<Node, WalkError> {
        self.is_node(sigma)?.ok_or_else(|| WalkError::NotANode {
            simplex: sigma.clone(),
        })
    }

    /// Walks from `{H_0}` to the far endpoint of its path.
    ///
    /// In Tucker mode, instances where some simplex contains an antipodal
    /// vertex pair short-circuit: anti-symmetry makes that pair a
    /// complementary edge, returned with an empty trace.
    pub fn run(&self) -> Result<PathTrace, WalkError> {
        if self.mode == Mode::Tucker {
            if let Some(edge) = self.antipodal_pair_edge() {
                let labels = self.labeling.of_simplex(&edge);
                let pair = (edge.vertices()[0], edge.vertices()[1]);
                return Ok(PathTrace {
                    nodes: Vec::new(),
                    termination: Termination::ComplementaryEdge,
                    witness: Witness {
                        simplex: edge,
                        labels,
                        complementary_pair: Some(pair),
                    },
                });
            }
        }

        let start = self.expect_node(self.index.flag().base())?;
        let mut visited: HashSet<Simplex> = HashSet::new();
        visited.insert(start.simplex.clone());
        let mut nodes = vec![start];
        let mut previous: Option<Simplex> = None;
        let budget = self.complex().closure().total() + 1;

        for _ in 0..budget {
            let current = nodes.last().expect("nonempty");
            let nbrs = self.neighbors(current)?;
            let next = match (&previous, nbrs.len()) {
                (None, 1) => Some(nbrs.into_iter().next().expect("len 1")),
                (Some(prev), 1) => {
                    if nbrs[0].simplex == *prev {
                        None
                    } else {
                        // A degree-1 node reached from elsewhere: broken
                        // adjacency symmetry.
                        return Err(WalkError::AsymmetricAdjacency {
                            from: prev.clone(),
                            at: current.simplex.clone(),
                        });
                    }
                }
                (Some(prev), 2) => {
                    if nbrs.iter().filter(|c| c.simplex == *prev).count() != 1 {
                        return Err(WalkError::AsymmetricAdjacency {
                            from: prev.clone(),
                            at: current.simplex.clone(),
                        });
                    }
                    nbrs.into_iter().find(|c| c.simplex != *prev)
                }
                (None, _) | (_, 0) => {
                    return Err(WalkError::BadDegree {
                        simplex: current.simplex.clone(),
                        degree: nbrs.len(),
                    })
                }
                (_, k) => {
                    return Err(WalkError::BadDegree {
                        simplex: current.simplex.clone(),
                        degree: k,
                    })
                }
            };
            let Some(next) = next else {
                return self.finish(nodes);
            };
            if !visited.insert(next.simplex.clone()) {
                return Err(WalkError::CycleDetected {
                    simplex: next.simplex.clone(),
                });
            }
            previous = Some(nodes.last().expect("nonempty").simplex.clone());
            nodes.push(next);
        }
        Err(WalkError::BudgetExceeded { steps: budget })
    }

    /// Classifies the endpoint the walk stopped at.
    fn finish(&self, nodes: Vec<Node>) -> Result<PathTrace, WalkError> {
        let terminal = nodes.last().expect("nonempty walk");
        let simplex = terminal.simplex.clone();
        let labels = self.labeling.of_simplex(&simplex);
        if terminal.carrier.dim == 0 {
            // The walk enters a pole only at -H_0: re-entering H_0 would
            // trip cycle detection first.
            return Err(WalkError::AntipodalStart {
                trace: Box::new(PathTrace {
                    nodes,
                    termination: Termination::AntipodalStart,
                    witness: Witness {
                        simplex,
                        labels,
                        complementary_pair: None,
                    },
                }),
            });
        }
        let termination = if terminal.class.kind == SimplexKind::Alternating
            && simplex.dim() == self.complex().n()
        {
            Termination::AlternatingN
        } else if terminal.class.has_complementary_edge {
            Termination::ComplementaryEdge
        } else {
            return Err(WalkError::BadEndpoint { simplex });
        };
        let complementary_pair = match termination {
            Termination::ComplementaryEdge => Some(
                find_zero_sum_pair(&simplex, &labels)
                    .expect("complementary edge flag implies a zero-sum pair"),
            ),
            _ => None,
        };
        Ok(PathTrace {
            nodes,
            termination,
            witness: Witness {
                simplex,
                labels,
                complementary_pair,
            },
        })
    }

    /// Lexicographically smallest closure edge joining antipodal vertices.
    fn antipodal_pair_edge(&self) -> Option<Simplex> {
        let complex = self.complex();
        if complex.n() < 1 {
            return None;
        }
        complex
            .closure()
            .of_dim(1)
            .iter()
            .find(|e| complex.antipode(e.vertices()[0]) == e.vertices()[1])
            .cloned()
    }

    /// Vertex-wise antipodal image of a trace: a valid walk from `-H_0`
    /// ending at the opposite-sign witness. Applying it twice returns the
    /// original trace.
    pub fn trace_antipode(&self, trace: &PathTrace) -> Result<PathTrace, WalkError> {
        let complex = self.complex();
        let mut nodes = Vec::with_capacity(trace.nodes.len());
        for node in &trace.nodes {
            let image = complex.antipode_simplex(&node.simplex);
            let mapped = self.expect_node(&image)?;
            debug_assert_eq!(mapped.carrier, node.carrier.flip());
            nodes.push(mapped);
        }
        let simplex = complex.antipode_simplex(&trace.witness.simplex);
        let labels = self.labeling.of_simplex(&simplex);
        let complementary_pair = trace
            .witness
            .complementary_pair
            .map(|(u, w)| order_pair(complex.antipode(u), complex.antipode(w)));
        Ok(PathTrace {
            nodes,
            termination: trace.termination,
            witness: Witness {
                simplex,
                labels,
                complementary_pair,
            },
        })
    }
}

fn order_pair(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The zero-sum vertex pair inside a simplex, in vertex-id order.
pub fn find_zero_sum_pair(sigma: &Simplex, labels: &[i32]) -> Option<(VertexId, VertexId)> {
    let vs = sigma.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if labels[i] + labels[j] == 0 {
                return Some((vs[i], vs[j]));
            }
        }
    }
    None
}

#[derive(Debug, Error)]
pub enum WalkError {
    #[error("labeling covers {labels} vertices, complex has {vertices}")]
    LabelCountMismatch { labels: usize, vertices: usize },
    #[error("complex fails symmetry validation ({count} violations; first: {first})")]
    InvalidComplex { first: String, count: usize },
    #[error("flag fails validation ({count} violations; first: {first})")]
    InvalidFlag { first: String, count: usize },
    #[error("labels at {vertex} and {antipode} do not sum to zero")]
    NotAntisymmetric {
        vertex: VertexId,
        antipode: VertexId,
    },
    #[error("complementary edges present ({} of them; first: {})", edges.len(), edges[0])]
    ComplementaryEdges { edges: Vec<Simplex> },
    #[error("label bound m = {m} is too small: no-complementary-edge labelings of S^{n} require m >= {}", n + 1)]
    LabelBoundTooSmall { m: u32, n: usize },
    #[error(transparent)]
    Carrier(#[from] CarrierError),
    #[error(
        "simplex {simplex} was expected to be a node of G but is not; the instance is inconsistent"
    )]
    NotANode { simplex: Simplex },
    #[error("{simplex} lies in {found} members of the level-{level} list, expected {expected}; the flag is invalid")]
    BadLevelIncidence {
        simplex: Simplex,
        level: usize,
        found: usize,
        expected: usize,
    },
    #[error("node {simplex} has degree {degree}, expected 1 or 2")]
    BadDegree { simplex: Simplex, degree: usize },
    #[error("adjacency is not symmetric between {from} and {at}")]
    AsymmetricAdjacency { from: Simplex, at: Simplex },
    #[error("walk revisited node {simplex}; the instance is inconsistent")]
    CycleDetected { simplex: Simplex },
    #[error("walk reached the antipodal pole -H_0")]
    AntipodalStart { trace: Box<PathTrace> },
    #[error("walk ended at {simplex}, which is no legitimate endpoint")]
    BadEndpoint { simplex: Simplex },
    #[error("walk exceeded {steps} steps without terminating")]
    BudgetExceeded { steps: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::labeling::{Labeling, Sign};

    fn simplex(ids: &[u32]) -> Simplex {
        Simplex::from_ids(ids.iter().copied())
    }

    /// Octahedral S^1 with labels(±e1) = ±1, labels(±e2) = ±2.
    fn circle_fan() -> (SymmetricComplex, HemisphereFlag, Labeling) {
        let (complex, flag) = generators::octahedral(1).unwrap();
        let labeling = Labeling::new(2, vec![1, 2, -1, -2]).unwrap();
        (complex, flag, labeling)
    }

    #[test]
    fn is_node_circle_examples() {
        let (complex, flag, labeling) = circle_fan();
        let walker = Walker::new(&complex, &flag, &labeling, Mode::Fan).unwrap();

        let pole = walker.is_node(&simplex(&[0])).unwrap().unwrap();
        assert_eq!(pole.node_type, NodeType::AlternatingFull);
        assert_eq!(
            pole.carrier,
            Carrier {
                dim: 0,
                sign: Sign::Pos
            }
        );

        let upper = walker.is_node(&simplex(&[0, 1])).unwrap().unwrap();
        assert_eq!(upper.node_type, NodeType::AlmostAlternating);
        assert_eq!(
            upper.carrier,
            Carrier {
                dim: 1,
                sign: Sign::Pos
            }
        );
        assert_eq!(upper.class.sign, Some(Sign::Pos));

        let alternating = walker.is_node(&simplex(&[1, 2])).unwrap().unwrap();
        assert_eq!(alternating.node_type, NodeType::AlternatingFull);
        assert_eq!(
            alternating.carrier,
            Carrier {
                dim: 1,
                sign: Sign::Pos
            }
        );
        assert_eq!(alternating.class.sign, Some(Sign::Neg));

        // {-e1,-e2} is carried by -H_1 with sign -, agreeable
        let lower = walker.is_node(&simplex(&[2, 3])).unwrap().unwrap();
        assert_eq!(lower.node_type, NodeType::AlmostAlternating);
        assert_eq!(
            lower.carrier,
            Carrier {
                dim: 1,
                sign: Sign::Neg
            }
        );
    }

    #[test]
    fn neighbors_circle_examples() {
        let (complex, flag, labeling) = circle_fan();
        let walker = Walker::new(&complex, &flag, &labeling, Mode::Fan).unwrap();
        let node = |ids: &[u32]| walker.is_node(&simplex(ids)).unwrap().unwrap();
        let simplices =
            |nodes: Vec<Node>| -> Vec<Simplex> { nodes.into_iter().map(|n| n.simplex).collect() };

        assert_eq!(
            simplices(walker.neighbors(&node(&[0])).unwrap()),
            vec![simplex(&[0, 1])]
        );
        assert_eq!(
            simplices(walker.neighbors(&node(&[0, 1])).unwrap()),
            vec![simplex(&[0]), simplex(&[1])]
        );
        assert_eq!(
            simplices(walker.neighbors(&node(&[1])).unwrap()),
            vec![simplex(&[0, 1]), simplex(&[1, 2])]
        );
        assert_eq!(
            simplices(walker.neighbors(&node(&[1, 2])).unwrap()),
            vec![simplex(&[1])]
        );
    }

    #[test]
    fn neighbor_symmetry_on_circle() {
        let (complex, flag, labeling) = circle_fan();
        let walker = Walker::new(&complex, &flag, &labeling, Mode::Fan).unwrap();
        for sigma in complex.closure().iter() {
            if let Some(node) = walker.is_node(sigma).unwrap() {
                for nbr in walker.neighbors(&node).unwrap() {
                    let back = walker.neighbors(&nbr).unwrap();
                    assert!(back.iter().any(|b| b.simplex == *sigma));
                }
            }
        }
    }

    #[test]
    fn fan_walk_on_circle() {
        let (complex, flag, labeling) = circle_fan();
        let walker = Walker::new(&complex, &flag, &labeling, Mode::Fan).unwrap();
        let trace = walker.run().unwrap();
        let path: Vec<Simplex> = trace.nodes.iter().map(|n| n.simplex.clone()).collect();
        assert_eq!(
            path,
            vec![
                simplex(&[0]),
                simplex(&[0, 1]),
                simplex(&[1]),
                simplex(&[1, 2])
            ]
        );
        assert_eq!(trace.termination, Termination::AlternatingN);
        assert_eq!(trace.witness.labels, vec![2, -1]);
    }

    #[test]
    fn tucker_walk_on_circle_m1() {
        let (complex, flag) = generators::octahedral(1).unwrap();
        let labeling = Labeling::new(1, vec![1, 1, -1, -1]).unwrap();
        let walker = Walker::new(&complex, &flag, &labeling, Mode::Tucker).unwrap();
        let trace = walker.run().unwrap();
        let path: Vec<Simplex> = trace.nodes.iter().map(|n| n.simplex.clone()).collect();
        assert_eq!(
            path,
            vec![
                simplex(&[0]),
                simplex(&[0, 1]),
                simplex(&[1]),
                simplex(&[1, 2])
            ]
        );
        assert_eq!(trace.termination, Termination::ComplementaryEdge);
        assert_eq!(trace.witness.labels, vec![1, -1]);
        assert_eq!(
            trace.witness.complementary_pair,
            Some((VertexId(1), VertexId(2)))
        );
    }

    #[test]
    fn fan_walk_on_sphere_terminates_at_alternating_triangle() {
        let (complex, flag) = generators::octahedral(2).unwrap();
        let labeling = Labeling::new(3, vec![1, 2, 3, -1, -2, -3]).unwrap();
        let walker = Walker::new(&complex, &flag, &labeling, Mode::Fan).unwrap();
        let trace = walker.run().unwrap();
        assert_eq!(trace.termination, Termination::AlternatingN);
        // The walk lands on the negative alternating triangle {-e1,e2,-e3};
        // its antipode {e1,-e2,e3} is the positive witness.
        assert_eq!(trace.witness.simplex, simplex(&[1, 3, 5]));
        assert_eq!(
            complex.antipode_simplex(&trace.witness.simplex),
            simplex(&[0, 2, 4])
        );
        let start: Vec<Simplex> = trace
            .nodes
            .iter()
            .take(4)
            .map(|n| n.simplex.clone())
            .collect();
        assert_eq!(
            start,
            vec![
                simplex(&[0]),
                simplex(&[0, 1]),
                simplex(&[1]),
                simplex(&[1, 3])
            ]
        );
    }

    #[test]
    fn trace_antipode_is_involutive_and_starts_at_other_pole() {
        let (complex, flag, labeling) = circle_fan();
        let walker = Walker::new(&complex, &flag, &labeling, Mode::Fan).unwrap();
        let trace = walker.run().unwrap();
        let mirrored = walker.trace_antipode(&trace).unwrap();
        assert_eq!(mirrored.nodes[0].simplex, simplex(&[2]));
        assert_eq!(mirrored.witness.simplex, simplex(&[0, 3]));
        assert_eq!(mirrored.witness.labels, vec![1, -2]);
        assert_eq!(
            mirrored
                .witness
                .labels
                .iter()
                .map(|l| l.unsigned_abs())
                .min(),
            Some(1)
        );
        let back = walker.trace_antipode(&mirrored).unwrap();
        assert_eq!(back, trace);
    }

    #[test]
    fn tetra_short_circuits_in_tucker_mode() {
        let (complex, flag) = generators::paper_tetra();
        let labeling = Labeling::new(2, vec![1, 2, -1, -2]).unwrap();
        let walker = Walker::new(&complex, &flag, &labeling, Mode::Tucker).unwrap();
        let trace = walker.run().unwrap();
        assert!(trace.nodes.is_empty());
        assert_eq!(trace.termination, Termination::ComplementaryEdge);
        assert_eq!(trace.witness.simplex, simplex(&[0, 2]));
        assert_eq!(trace.witness.labels, vec![1, -1]);
        let mirrored = walker.trace_antipode(&trace).unwrap();
        assert!(mirrored.nodes.is_empty());
        assert_eq!(mirrored.witness.simplex, simplex(&[0, 2]));
    }

    #[test]
    fn fan_mode_rejects_small_label_bound() {
        let (complex, flag) = generators::octahedral(2).unwrap();
        let labeling = Labeling::new(2, vec![1, 2, 1, -1, -2, -1]).unwrap();
        assert!(matches!(
            Walker::new(&complex, &flag, &labeling, Mode::Fan),
            Err(WalkError::ComplementaryEdges { .. }) | Err(WalkError::LabelBoundTooSmall { .. })
        ));
    }

    #[test]
    fn fan_mode_rejects_complementary_edges() {
        let (complex, flag) = generators::octahedral(1).unwrap();
        // labels 1 and -1 on adjacent vertices
        let labeling = Labeling::new(2, vec![1, -1, -1, 1]).unwrap();
        match Walker::new(&complex, &flag, &labeling, Mode::Fan) {
            Err(WalkError::ComplementaryEdges { edges }) => {
                assert!(edges.contains(&simplex(&[0, 1])));
            }
            Err(other) => panic!("expected complementary-edge rejection, got {other:?}"),
            Ok(_) => panic!("expected complementary-edge rejection, got a walker"),
        }
    }

    #[test]
    fn fan_mode_rejects_non_antisymmetric_labels() {
        let (complex, flag) = generators::octahedral(1).unwrap();
        let labeling = Labeling::new(2, vec![1, 2, 1, -2]).unwrap();
        assert!(matches!(
            Walker::new(&complex, &flag, &labeling, Mode::Fan),
            Err(WalkError::NotAntisymmetric { .. })
        ));
    }

    #[test]
    fn tucker_mode_accepts_any_bound_and_finds_zero_sum_edge() {
        // m = n+1 with a labeling that still has a complementary edge:
        // Tucker mode must walk to some zero-sum witness.
        let (complex, flag) = generators::octahedral(1).unwrap();
        let labeling = Labeling::new(2, vec![1, -1, -1, 1]).unwrap();
        let walker = Walker::new(&complex, &flag, &labeling, Mode::Tucker).unwrap();
        let trace = walker.run().unwrap();
        assert_eq!(trace.termination, Termination::ComplementaryEdge);
        let (u, w) = trace.witness.complementary_pair.unwrap();
        assert_eq!(labeling.label(u) + labeling.label(w), 0);
    }
}
