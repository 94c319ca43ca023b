//! Brute-force ground truth for the path walk.
//!
//! The oracle enumerates the whole closure once, applies the node predicate
//! to every simplex, materializes the graph G, and re-derives the claims
//! the walk relies on: every degree is 1 or 2, adjacency is symmetric, the
//! degree-1 set is exactly the poles plus the mode's endpoints, path
//! endpoints number a multiple of four, and the path family is closed under
//! the antipodal involution with no self-paired path.
//!
//! Never used inside the walk; this is the verification side of the pair.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SymmetricComplex};
use crate::flag::HemisphereFlag;
use crate::labeling::{Labeling, Sign, SimplexKind};
use crate::pathfinder::{Mode, Node, NodeType, PathTrace, WalkError, Walker};

/// Exact counts of alternating n-simplices by sign, over the maximal
/// simplices.
pub fn count_alternating(complex: &SymmetricComplex, labeling: &Labeling) -> (usize, usize) {
    let mut positive = 0;
    let mut negative = 0;
    for sigma in complex.maximal_simplices() {
        let class = labeling.classify_simplex(sigma);
        if class.kind == SimplexKind::Alternating {
            match class.sign.expect("alternating simplices are signed") {
                Sign::Pos => positive += 1,
                Sign::Neg => negative += 1,
            }
        }
    }
    (positive, negative)
}

/// Exact counts, by carrier sign, of agreeable almost-alternating
/// simplices that contain a complementary edge: the Tucker endpoints.
/// Both counts are odd on valid instances with label bound `m = n`.
pub fn count_tucker_endpoints(
    complex: &SymmetricComplex,
    flag: &HemisphereFlag,
    labeling: &Labeling,
) -> Result<(usize, usize), WalkError> {
    let walker = Walker::new(complex, flag, labeling, Mode::Tucker)?;
    let mut positive = 0;
    let mut negative = 0;
    for sigma in complex.closure().iter() {
        if let Some(node) = walker.is_node(sigma)? {
            if node.node_type == NodeType::AlmostAlternating && node.class.has_complementary_edge {
                match node.carrier.sign {
                    Sign::Pos => positive += 1,
                    Sign::Neg => negative += 1,
                }
            }
        }
    }
    Ok((positive, negative))
}

/// The fully materialized graph G with its path decomposition.
#[derive(Debug)]
pub struct OracleReport {
    /// Alternating n-simplex counts by sign.
    pub positive_alternating: usize,
    pub negative_alternating: usize,
    /// Every node, keyed by simplex.
    pub nodes: BTreeMap<Simplex, Node>,
    /// Symmetric edge set, stored with endpoints in sorted order.
    pub edges: BTreeSet<(Simplex, Simplex)>,
    pub degrees: BTreeMap<Simplex, usize>,
    /// Maximal paths, each oriented from its lexicographically smaller
    /// endpoint.
    pub paths: Vec<Vec<Simplex>>,
    /// Cyclic components, if any; rotated to start at their smallest node.
    pub cycles: Vec<Vec<Simplex>>,
    pub endpoint_count: usize,
    /// Claims of the degree analysis that failed to hold.
    pub violations: Vec<String>,
}

impl OracleReport {
    /// Simplices of degree 1.
    pub fn endpoints(&self) -> Vec<&Simplex> {
        self.degrees
            .iter()
            .filter(|(_, d)| **d == 1)
            .map(|(s, _)| s)
            .collect()
    }

    /// The decomposed path having `endpoint` as one of its ends, oriented
    /// to start there.
    pub fn path_from(&self, endpoint: &Simplex) -> Option<Vec<Simplex>> {
        for path in &self.paths {
            if path.first() == Some(endpoint) {
                return Some(path.clone());
            }
            if path.last() == Some(endpoint) {
                return Some(path.iter().rev().cloned().collect());
            }
        }
        None
    }
}

/// Scans every closure simplex, assembles G, and decomposes it into paths
/// and cycles. Degree violations and adjacency asymmetries are recorded in
/// the report rather than returned as errors; hard failures (carrier
/// breakdowns, invalid instances) abort.
pub fn build_graph(
    complex: &SymmetricComplex,
    flag: &HemisphereFlag,
    labeling: &Labeling,
    mode: Mode,
) -> Result<OracleReport, WalkError> {
    let walker = Walker::new(complex, flag, labeling, mode)?;
    let (positive_alternating, negative_alternating) = count_alternating(complex, labeling);

    let mut nodes: BTreeMap<Simplex, Node> = BTreeMap::new();
    for sigma in complex.closure().iter() {
        if let Some(node) = walker.is_node(sigma)? {
            nodes.insert(sigma.clone(), node);
        }
    }

    let mut violations = Vec::new();
    let mut edges: BTreeSet<(Simplex, Simplex)> = BTreeSet::new();
    let mut adjacency: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
    for (sigma, node) in &nodes {
        let nbrs = walker.neighbors(node)?;
        if nbrs.is_empty() || nbrs.len() > 2 {
            violations.push(format!("node {sigma} has degree {}", nbrs.len()));
        }
        for nbr in &nbrs {
            if !nodes.contains_key(&nbr.simplex) {
                violations.push(format!(
                    "neighbor {} of {sigma} is not itself a node",
                    nbr.simplex
                ));
            }
            let key = if *sigma <= nbr.simplex {
                (sigma.clone(), nbr.simplex.clone())
            } else {
                (nbr.simplex.clone(), sigma.clone())
            };
            edges.insert(key);
        }
        adjacency.insert(sigma.clone(), nbrs.into_iter().map(|n| n.simplex).collect());
    }

    // Adjacency must be symmetric; rebuild neighbor lists from the edge
    // set so the decomposition below cannot be fooled by a one-sided edge.
    for (a, b) in &edges {
        let forward = adjacency.get(a).is_some_and(|ns| ns.contains(b));
        let backward = adjacency.get(b).is_some_and(|ns| ns.contains(a));
        if !forward || !backward {
            violations.push(format!("edge {a} -- {b} is not symmetric"));
        }
    }
    let mut degrees: BTreeMap<Simplex, usize> = BTreeMap::new();
    let mut neighbor_map: BTreeMap<&Simplex, Vec<&Simplex>> = BTreeMap::new();
    for sigma in nodes.keys() {
        degrees.insert(sigma.clone(), 0);
        neighbor_map.insert(sigma, Vec::new());
    }
    for (a, b) in &edges {
        *degrees.get_mut(a).expect("edge endpoint is a node") += 1;
        *degrees.get_mut(b).expect("edge endpoint is a node") += 1;
        neighbor_map.get_mut(a).expect("node").push(b);
        neighbor_map.get_mut(b).expect("node").push(a);
    }

    let endpoint_count = degrees.values().filter(|d| **d == 1).count();
    let (paths, cycles) = decompose(&nodes, &neighbor_map, &degrees);

    Ok(OracleReport {
        positive_alternating,
        negative_alternating,
        nodes,
        edges,
        degrees,
        paths,
        cycles,
        endpoint_count,
        violations,
    })
}

/// Splits G into maximal paths (from degree-1 nodes) and leftover cycles.
/// Paths are oriented from their lexicographically smaller endpoint;
/// cycles start at their smallest node and step toward its smaller
/// neighbor, so reports are deterministic.
fn decompose(
    nodes: &BTreeMap<Simplex, Node>,
    neighbor_map: &BTreeMap<&Simplex, Vec<&Simplex>>,
    degrees: &BTreeMap<Simplex, usize>,
) -> (Vec<Vec<Simplex>>, Vec<Vec<Simplex>>) {
    let mut visited: BTreeSet<&Simplex> = BTreeSet::new();
    let mut paths = Vec::new();
    // Iterating the BTreeMap visits endpoints in lexicographic order, so
    // each path is first discovered from its smaller endpoint.
    for (start, degree) in degrees {
        if *degree != 1 || visited.contains(start) {
            continue;
        }
        let mut path = vec![start];
        visited.insert(start);
        let mut current = start;
        loop {
            let next = neighbor_map[current]
                .iter()
                .copied()
                .find(|n| !visited.contains(*n));
            match next {
                Some(n) => {
                    visited.insert(n);
                    path.push(n);
                    current = n;
                }
                None => break,
            }
        }
        paths.push(path.into_iter().cloned().collect());
    }
    let mut cycles = Vec::new();
    for start in nodes.keys() {
        if visited.contains(start) {
            continue;
        }
        let mut cycle = vec![start];
        visited.insert(start);
        let mut current = start;
        loop {
            let next = neighbor_map[current]
                .iter()
                .copied()
                .filter(|n| !visited.contains(*n))
                .min();
            match next {
                Some(n) => {
                    visited.insert(n);
                    cycle.push(n);
                    current = n;
                }
                None => break,
            }
        }
        cycles.push(cycle.into_iter().cloned().collect());
    }
    (paths, cycles)
}

/// True when `trace` equals the decomposed path that starts at the trace's
/// own start node (for walks, the vertex `H_0`), node for node. Traces
/// from the Tucker short-circuit are empty and never match.
pub fn verify_path(report: &OracleReport, trace: &PathTrace) -> bool {
    let Some(first) = trace.nodes.first() else {
        return false;
    };
    let Some(path) = report.path_from(&first.simplex) else {
        return false;
    };
    path.len() == trace.nodes.len() && path.iter().zip(&trace.nodes).all(|(s, n)| *s == n.simplex)
}
