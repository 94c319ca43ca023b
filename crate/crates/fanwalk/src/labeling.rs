//! Anti-symmetric labelings and simplex classification.
//!
//! Labels are nonzero integers in `{±1, …, ±m}`; antipodal vertices carry
//! labels that sum to zero. [`classify`] decides whether a label multiset is
//! alternating (distinct magnitudes, signs alternating in magnitude order),
//! almost-alternating (some single vertex removal leaves an alternating
//! facet), or neither, and records which removals work, the sign, and
//! whether a complementary pair (two labels summing to zero) is present.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Simplex, SymmetricComplex, VertexId};

/// Sign of a label or simplex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn of(value: i32) -> Option<Sign> {
        match value {
            0 => None,
            v if v > 0 => Some(Sign::Pos),
            _ => Some(Sign::Neg),
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl fmt::Debug for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Coarse kind of a labeled simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexKind {
    Alternating,
    AlmostAlternating,
    Other,
}

/// A vertex removal (by position) that leaves an alternating facet, with
/// that facet's sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AltFacet {
    pub remove: usize,
    pub sign: Sign,
}

/// Full classification of a label multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexClass {
    pub kind: SimplexKind,
    /// Sign of an alternating simplex, or the common sign of the
    /// alternating facets of an almost-alternating one. `None` when the
    /// facets disagree (only possible for a bare complementary edge) or for
    /// kind `Other`.
    pub sign: Option<Sign>,
    /// Removals yielding alternating facets, ascending by position.
    pub alternating_facets: Vec<AltFacet>,
    pub has_complementary_edge: bool,
}

impl SimplexClass {
    pub fn is_alternating(&self) -> bool {
        self.kind == SimplexKind::Alternating
    }

    pub fn is_almost_alternating(&self) -> bool {
        self.kind == SimplexKind::AlmostAlternating
    }

    /// Facets whose sign matches `sign`.
    pub fn facets_with_sign(&self, sign: Sign) -> impl Iterator<Item = &AltFacet> {
        self.alternating_facets
            .iter()
            .filter(move |f| f.sign == sign)
    }
}

/// True when the labels have distinct magnitudes and alternate in sign
/// when sorted by increasing magnitude. Returns the sign of the smallest
/// magnitude on success.
fn alternating_sign(labels: &[i32]) -> Option<Sign> {
    let mut sorted: Vec<i32> = labels.to_vec();
    sorted.sort_unstable_by_key(|l| l.unsigned_abs());
    for w in sorted.windows(2) {
        if w[0].unsigned_abs() == w[1].unsigned_abs() {
            return None;
        }
        if (w[0] > 0) == (w[1] > 0) {
            return None;
        }
    }
    Sign::of(sorted[0])
}

/// Classifies the labels of one simplex. Positions in the result refer to
/// positions in `labels`, so facets with duplicate labels stay distinct.
///
/// A single nonzero label is always alternating with its own sign.
pub fn classify(labels: &[i32]) -> Result<SimplexClass, LabelError> {
    if labels.is_empty() {
        return Err(LabelError::EmptyLabelSet);
    }
    if let Some(pos) = labels.iter().position(|l| *l == 0) {
        return Err(LabelError::ZeroLabel { position: pos });
    }
    let has_complementary_edge = labels
        .iter()
        .enumerate()
        .any(|(i, a)| labels[i + 1..].iter().any(|b| a + b == 0));

    if let Some(sign) = alternating_sign(labels) {
        // The only removals that keep the alternation are the extremes:
        // dropping the largest magnitude keeps the sign, dropping the
        // smallest flips it.
        let mut facets = Vec::new();
        if labels.len() >= 2 {
            let min_pos = (0..labels.len())
                .min_by_key(|i| labels[*i].unsigned_abs())
                .expect("nonempty");
            let max_pos = (0..labels.len())
                .max_by_key(|i| labels[*i].unsigned_abs())
                .expect("nonempty");
            facets.push(AltFacet {
                remove: min_pos,
                sign: sign.flip(),
            });
            facets.push(AltFacet {
                remove: max_pos,
                sign,
            });
            facets.sort_by_key(|f| f.remove);
        }
        return Ok(SimplexClass {
            kind: SimplexKind::Alternating,
            sign: Some(sign),
            alternating_facets: facets,
            has_complementary_edge,
        });
    }

    let mut facets = Vec::new();
    for remove in 0..labels.len() {
        let rest: Vec<i32> = labels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != remove)
            .map(|(_, l)| *l)
            .collect();
        if rest.is_empty() {
            continue;
        }
        if let Some(sign) = alternating_sign(&rest) {
            facets.push(AltFacet { remove, sign });
        }
    }
    if facets.is_empty() {
        return Ok(SimplexClass {
            kind: SimplexKind::Other,
            sign: None,
            alternating_facets: facets,
            has_complementary_edge,
        });
    }
    let first = facets[0].sign;
    let sign = facets.iter().all(|f| f.sign == first).then_some(first);
    Ok(SimplexClass {
        kind: SimplexKind::AlmostAlternating,
        sign,
        alternating_facets: facets,
        has_complementary_edge,
    })
}

/// An anti-symmetric vertex labeling with magnitudes bounded by `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    m: u32,
    labels: Vec<i32>,
}

impl Labeling {
    /// `labels[v]` is the label of vertex `v`. Anti-symmetry is checked
    /// against a complex by [`validate_labeling`], not here.
    pub fn new(m: u32, labels: Vec<i32>) -> Result<Self, LabelError> {
        if m == 0 {
            return Err(LabelError::BoundZero);
        }
        for (i, l) in labels.iter().enumerate() {
            if *l == 0 {
                return Err(LabelError::ZeroLabel { position: i });
            }
            if l.unsigned_abs() > m {
                return Err(LabelError::OutOfBound {
                    vertex: VertexId(i as u32),
                    label: *l,
                    m,
                });
            }
        }
        Ok(Self { m, labels })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: VertexId) -> i32 {
        self.labels[v.index()]
    }

    /// Labels of a simplex, in vertex-id order.
    pub fn of_simplex(&self, sigma: &Simplex) -> Vec<i32> {
        sigma.vertices().iter().map(|v| self.label(*v)).collect()
    }

    pub fn classify_simplex(&self, sigma: &Simplex) -> SimplexClass {
        classify(&self.of_simplex(sigma)).expect("labeling has no zero labels")
    }
}

/// Outcome of [`validate_labeling`].
#[derive(Debug, Default)]
pub struct LabelingReport {
    /// Vertex pairs whose labels do not sum to zero.
    pub antisymmetry_violations: Vec<(VertexId, VertexId)>,
    /// Closure edges whose endpoint labels sum to zero; only populated when
    /// the check was requested.
    pub complementary_edges: Vec<Simplex>,
    pub complementary_checked: bool,
}

impl LabelingReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_violations.is_empty()
            && (!self.complementary_checked || self.complementary_edges.is_empty())
    }

    pub fn antisymmetric(&self) -> bool {
        self.antisymmetry_violations.is_empty()
    }
}

/// Checks anti-symmetry and, when `forbid_complementary`, scans every edge
/// of the closure for zero label sums.
pub fn validate_labeling(
    complex: &SymmetricComplex,
    labeling: &Labeling,
    forbid_complementary: bool,
) -> LabelingReport {
    let mut report = LabelingReport {
        complementary_checked: forbid_complementary,
        ..LabelingReport::default()
    };
    for v in complex.vertices() {
        let w = complex.antipode(v);
        if v < w && labeling.label(v) + labeling.label(w) != 0 {
            report.antisymmetry_violations.push((v, w));
        }
    }
    if forbid_complementary && complex.n() >= 1 {
        for edge in complex.closure().of_dim(1) {
            let ls = labeling.of_simplex(edge);
            if ls[0] + ls[1] == 0 {
                report.complementary_edges.push(edge.clone());
            }
        }
    }
    report
}

/// Draws one label per antipodal pair uniformly from `{±1, …, ±m}` and
/// mirrors it by negation. With `forbid_complementary`, whole labelings are
/// rejection-sampled until the closure has no complementary edge, up to
/// [`REJECTION_CAP`] attempts.
pub fn random_labeling(
    complex: &SymmetricComplex,
    m: u32,
    seed: u64,
    forbid_complementary: bool,
) -> Result<Labeling, LabelError> {
    if m == 0 {
        return Err(LabelError::BoundZero);
    }
    if forbid_complementary {
        let symmetry = complex.validate_symmetry();
        if symmetry.has_antipodal_pairs() {
            return Err(LabelError::ForcedComplementaryEdge {
                simplex: symmetry.simplices_with_antipodal_pair[0].clone(),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REJECTION_CAP {
        let labeling = draw_uniform(complex, m, &mut rng)?;
        if !forbid_complementary
            || validate_labeling(complex, &labeling, true)
                .complementary_edges
                .is_empty()
        {
            return Ok(labeling);
        }
    }
    Err(LabelError::RetryCapExhausted {
        attempts: REJECTION_CAP,
    })
}

pub const REJECTION_CAP: usize = 1000;

fn draw_uniform(
    complex: &SymmetricComplex,
    m: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Labeling, LabelError> {
    let mut labels = vec![0i32; complex.vertex_count()];
    for v in complex.representatives() {
        let magnitude = rng.gen_range(1..=m) as i32;
        let label = if rng.gen::<bool>() {
            magnitude
        } else {
            -magnitude
        };
        labels[v.index()] = label;
        labels[complex.antipode(v).index()] = -label;
    }
    Labeling::new(m, labels)
}

/// Samples an anti-symmetric labeling with no complementary edge.
///
/// Whole-labeling rejection degenerates on subdivided complexes (nearly
/// every draw has some zero-sum edge), so this sampler labels one antipodal
/// pair at a time, always picking the currently most-constrained pair and a
/// uniformly random admissible label, restarting on dead ends.
pub fn random_fan_labeling(
    complex: &SymmetricComplex,
    m: u32,
    seed: u64,
) -> Result<Labeling, LabelError> {
    if m == 0 {
        return Err(LabelError::BoundZero);
    }
    let symmetry = complex.validate_symmetry();
    if symmetry.has_antipodal_pairs() {
        return Err(LabelError::ForcedComplementaryEdge {
            simplex: symmetry.simplices_with_antipodal_pair[0].clone(),
        });
    }
    // Neighbor lists over the closure's edge graph.
    let vcount = complex.vertex_count();
    let mut neighbors: Vec<Vec<VertexId>> = vec![Vec::new(); vcount];
    if complex.n() >= 1 {
        for edge in complex.closure().of_dim(1) {
            let [a, b] = [edge.vertices()[0], edge.vertices()[1]];
            neighbors[a.index()].push(b);
            neighbors[b.index()].push(a);
        }
    }
    let reps = complex.representatives();
    let all_values: Vec<i32> = (1..=m as i32).flat_map(|k| [k, -k]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..GREEDY_RESTART_CAP {
        let mut labels = vec![0i32; vcount];
        let mut remaining: Vec<VertexId> = reps.clone();
        remaining.shuffle(&mut rng);
        while !remaining.is_empty() {
            // Most-constrained pair first: fewest admissible labels left.
            let (slot, admissible) = {
                let mut best: Option<(usize, Vec<i32>)> = None;
                for (i, v) in remaining.iter().enumerate() {
                    let adm = admissible_labels(&all_values, &neighbors, &labels, complex, *v);
                    let better = match &best {
                        None => true,
                        Some((_, b)) => adm.len() < b.len(),
                    };
                    if better {
                        let empty = adm.is_empty();
                        best = Some((i, adm));
                        if empty {
                            break;
                        }
                    }
                }
                best.expect("remaining is nonempty")
            };
            if admissible.is_empty() {
                continue 'attempt;
            }
            let v = remaining.swap_remove(slot);
            let label = *admissible.choose(&mut rng).expect("nonempty");
            labels[v.index()] = label;
            labels[complex.antipode(v).index()] = -label;
        }
        let labeling = Labeling::new(m, labels)?;
        debug_assert!(validate_labeling(complex, &labeling, true).passed());
        return Ok(labeling);
    }
    Err(LabelError::RetryCapExhausted {
        attempts: GREEDY_RESTART_CAP,
    })
}

pub const GREEDY_RESTART_CAP: usize = 200;

fn admissible_labels(
    all_values: &[i32],
    neighbors: &[Vec<VertexId>],
    labels: &[i32],
    complex: &SymmetricComplex,
    v: VertexId,
) -> Vec<i32> {
    // label(v) must avoid -label(u) for labeled neighbors u of v, and
    // label(u) for labeled neighbors u of -v (so that -label(v) is safe).
    let mut out: Vec<i32> = all_values.to_vec();
    for u in &neighbors[v.index()] {
        let l = labels[u.index()];
        if l != 0 {
            out.retain(|c| *c != -l);
        }
    }
    for u in &neighbors[complex.antipode(v).index()] {
        let l = labels[u.index()];
        if l != 0 {
            out.retain(|c| *c != l);
        }
    }
    out
}

/// Labels each vertex by the strongest coordinate of an odd map sampled at
/// one representative per antipodal pair: `label(v) = sign(f_i(v)) * i`
/// with `i` the smallest 1-based index maximizing `|f_i(v)|`.
pub fn induced_labeling(
    complex: &SymmetricComplex,
    samples: &HashMap<VertexId, Vec<f64>>,
) -> Result<Labeling, LabelError> {
    let mut dim_out: Option<usize> = None;
    let mut labels = vec![0i32; complex.vertex_count()];
    for v in complex.representatives() {
        let w = complex.antipode(v);
        let (vertex, flip) = if samples.contains_key(&v) {
            (v, false)
        } else if samples.contains_key(&w) {
            (w, true)
        } else {
            return Err(LabelError::MissingSample { vertex: v });
        };
        let f = &samples[&vertex];
        match dim_out {
            None => dim_out = Some(f.len()),
            Some(d) if d != f.len() => {
                return Err(LabelError::SampleLengthMismatch {
                    vertex,
                    expected: d,
                    actual: f.len(),
                })
            }
            _ => {}
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, x) in f.iter().enumerate() {
            if best.is_none_or(|(_, b)| x.abs() > b) {
                best = Some((i, x.abs()));
            }
        }
        let (i, magnitude) = best.ok_or(LabelError::EmptySample { vertex })?;
        if magnitude == 0.0 {
            return Err(LabelError::DegenerateSample { vertex });
        }
        let mut label = if f[i] > 0.0 {
            (i + 1) as i32
        } else {
            -((i + 1) as i32)
        };
        if flip {
            label = -label;
        }
        labels[v.index()] = label;
        labels[w.index()] = -label;
    }
    let m = dim_out.ok_or(LabelError::NoSamples)? as u32;
    Labeling::new(m, labels)
}

#[derive(Debug, Error)]
pub enum LabelError {
    #[error("label bound m must be at least 1")]
    BoundZero,
    #[error("empty label set")]
    EmptyLabelSet,
    #[error("zero label at position {position}")]
    ZeroLabel { position: usize },
    #[error("label {label} of vertex {vertex} exceeds bound m={m}")]
    OutOfBound {
        vertex: VertexId,
        label: i32,
        m: u32,
    },
    #[error("gave up after {attempts} rejection attempts")]
    RetryCapExhausted { attempts: usize },
    #[error("simplex {simplex} contains an antipodal vertex pair, so every anti-symmetric labeling has a complementary edge")]
    ForcedComplementaryEdge { simplex: Simplex },
    #[error("no sample for vertex {vertex} or its antipode")]
    MissingSample { vertex: VertexId },
    #[error("sample at {vertex} has {actual} components, expected {expected}")]
    SampleLengthMismatch {
        vertex: VertexId,
        expected: usize,
        actual: usize,
    },
    #[error("empty sample vector at {vertex}")]
    EmptySample { vertex: VertexId },
    #[error("map sample at vertex {vertex} is the zero vector")]
    DegenerateSample { vertex: VertexId },
    #[error("no samples provided")]
    NoSamples,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn class(labels: &[i32]) -> SimplexClass {
        classify(labels).unwrap()
    }

    #[test]
    fn classify_alternating_negative() {
        let c = class(&[3, -5, -2, 9]);
        assert_eq!(c.kind, SimplexKind::Alternating);
        assert_eq!(c.sign, Some(Sign::Neg));
        assert!(!c.has_complementary_edge);
    }

    #[test]
    fn classify_repeated_magnitude_with_complementary_edge() {
        // {-2, 2, -5}: not alternating (magnitudes repeat), but removing
        // the -2 leaves the alternating {2, -5}; the zero-sum pair is
        // flagged.
        let c = class(&[-2, 2, -5]);
        assert_eq!(c.kind, SimplexKind::AlmostAlternating);
        assert!(c.has_complementary_edge);
        assert_eq!(
            c.alternating_facets,
            vec![AltFacet {
                remove: 0,
                sign: Sign::Pos
            }]
        );
        assert_eq!(c.sign, Some(Sign::Pos));
    }

    #[test]
    fn classify_almost_alternating_two_facets() {
        let c = class(&[-2, 3, 4, -5]);
        assert_eq!(c.kind, SimplexKind::AlmostAlternating);
        assert_eq!(c.sign, Some(Sign::Neg));
        assert!(!c.has_complementary_edge);
        assert_eq!(
            c.alternating_facets,
            vec![
                AltFacet {
                    remove: 1,
                    sign: Sign::Neg
                },
                AltFacet {
                    remove: 2,
                    sign: Sign::Neg
                }
            ]
        );
    }

    #[test]
    fn classify_duplicate_labels_give_two_facets() {
        let c = class(&[-2, 3, 3, -5]);
        assert_eq!(c.kind, SimplexKind::AlmostAlternating);
        assert_eq!(c.sign, Some(Sign::Neg));
        assert_eq!(
            c.alternating_facets,
            vec![
                AltFacet {
                    remove: 1,
                    sign: Sign::Neg
                },
                AltFacet {
                    remove: 2,
                    sign: Sign::Neg
                }
            ]
        );
    }

    #[test]
    fn classify_complementary_edge_single_facet() {
        let c = class(&[-2, 2, 3, -5]);
        assert_eq!(c.kind, SimplexKind::AlmostAlternating);
        assert!(c.has_complementary_edge);
        assert_eq!(
            c.alternating_facets,
            vec![AltFacet {
                remove: 1,
                sign: Sign::Neg
            }]
        );
        assert_eq!(c.sign, Some(Sign::Neg));
    }

    #[test]
    fn classify_two_same_sign_labels() {
        let c = class(&[1, 2]);
        assert_eq!(c.kind, SimplexKind::AlmostAlternating);
        assert_eq!(c.sign, Some(Sign::Pos));
        assert_eq!(c.alternating_facets.len(), 2);
    }

    #[test]
    fn classify_single_label_and_zero() {
        let c = class(&[-7]);
        assert_eq!(c.kind, SimplexKind::Alternating);
        assert_eq!(c.sign, Some(Sign::Neg));
        assert!(c.alternating_facets.is_empty());
        assert!(matches!(
            classify(&[3, 0]),
            Err(LabelError::ZeroLabel { position: 1 })
        ));
    }

    #[test]
    fn classify_bare_complementary_edge_has_ambiguous_sign() {
        let c = class(&[1, -1]);
        assert_eq!(c.kind, SimplexKind::AlmostAlternating);
        assert_eq!(c.sign, None);
        assert!(c.has_complementary_edge);
        assert_eq!(c.alternating_facets.len(), 2);
    }

    #[test]
    fn classify_other_kind() {
        // {k, k, -k} has no alternating facet at all
        let c = class(&[2, 2, -2]);
        assert_eq!(c.kind, SimplexKind::Other);
        assert!(c.has_complementary_edge);
        assert!(c.alternating_facets.is_empty());
        assert_eq!(c.sign, None);
    }

    #[test]
    fn alternating_extreme_removals() {
        let c = class(&[1, -2, 3, -4]);
        assert_eq!(c.kind, SimplexKind::Alternating);
        assert_eq!(c.sign, Some(Sign::Pos));
        assert_eq!(
            c.alternating_facets,
            vec![
                AltFacet {
                    remove: 0,
                    sign: Sign::Neg
                },
                AltFacet {
                    remove: 3,
                    sign: Sign::Pos
                }
            ]
        );
    }

    #[test]
    fn validate_labeling_octahedral_axis_labels() {
        for n in 1..=3 {
            let (complex, _) = generators::octahedral(n).unwrap();
            let labeling = axis_labeling(&complex);
            let report = validate_labeling(&complex, &labeling, true);
            assert!(report.passed());
        }
    }

    /// labels(±e_i) = ±i
    fn axis_labeling(complex: &SymmetricComplex) -> Labeling {
        let pairs = complex.vertex_count() / 2;
        let mut labels = vec![0i32; complex.vertex_count()];
        for i in 0..pairs {
            labels[i] = (i + 1) as i32;
            labels[i + pairs] = -((i + 1) as i32);
        }
        Labeling::new(pairs as u32, labels).unwrap()
    }

    #[test]
    fn validate_labeling_tetra_reports_forced_complementary_edges() {
        let (complex, _) = generators::paper_tetra();
        let labeling = Labeling::new(2, vec![1, 2, -1, -2]).unwrap();
        let report = validate_labeling(&complex, &labeling, true);
        assert!(report.antisymmetric());
        assert_eq!(
            report.complementary_edges,
            vec![Simplex::from_ids([0, 2]), Simplex::from_ids([1, 3])]
        );
    }

    #[test]
    fn validate_labeling_rejects_symmetric_labels() {
        let (complex, _) = generators::octahedral(1).unwrap();
        let labeling = Labeling::new(2, vec![1, 2, 1, 2]).unwrap();
        let report = validate_labeling(&complex, &labeling, false);
        assert_eq!(report.antisymmetry_violations.len(), 2);
    }

    #[test]
    fn random_labeling_is_deterministic_and_antisymmetric() {
        let (complex, _) = generators::octahedral(2).unwrap();
        let a = random_labeling(&complex, 3, 42, true).unwrap();
        let b = random_labeling(&complex, 3, 42, true).unwrap();
        assert_eq!(a, b);
        assert!(validate_labeling(&complex, &a, true).passed());
        let c = random_labeling(&complex, 3, 43, false).unwrap();
        assert!(validate_labeling(&complex, &c, false).antisymmetric());
    }

    #[test]
    fn random_labeling_rejects_forced_complementary_instances() {
        let (complex, _) = generators::paper_tetra();
        assert!(matches!(
            random_labeling(&complex, 2, 1, true),
            Err(LabelError::ForcedComplementaryEdge { .. })
        ));
    }

    #[test]
    fn random_fan_labeling_handles_subdivided_complexes() {
        let (complex, flag) = generators::octahedral(2).unwrap();
        let (complex, _) = generators::barycentric(&complex, &flag).unwrap();
        for seed in 0..5 {
            let labeling = random_fan_labeling(&complex, 3, seed).unwrap();
            assert!(validate_labeling(&complex, &labeling, true).passed());
        }
    }

    #[test]
    fn induced_labeling_follows_argmax_rule() {
        let (complex, _) = generators::octahedral(1).unwrap();
        let mut samples = HashMap::new();
        samples.insert(VertexId(0), vec![0.5, -0.9]);
        samples.insert(VertexId(1), vec![0.7, 0.7]);
        let labeling = induced_labeling(&complex, &samples).unwrap();
        assert_eq!(labeling.label(VertexId(0)), -2);
        // tie-break picks the smallest index
        assert_eq!(labeling.label(VertexId(1)), 1);
        assert_eq!(labeling.label(VertexId(2)), 2);
        assert_eq!(labeling.label(VertexId(3)), -1);
    }

    #[test]
    fn induced_labeling_identity_map_degenerates_at_pole() {
        let (complex, _) = generators::octahedral(2).unwrap();
        let mut samples = HashMap::new();
        for v in complex.representatives() {
            let c = complex.coords(v).unwrap();
            samples.insert(v, vec![c[0], c[1]]);
        }
        match induced_labeling(&complex, &samples) {
            Err(LabelError::DegenerateSample { vertex }) => assert_eq!(vertex, VertexId(2)),
            other => panic!("expected degenerate sample, got {other:?}"),
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn label_vec() -> impl Strategy<Value = Vec<i32>> {
            proptest::collection::vec((1i32..=9, proptest::bool::ANY), 1..=6).prop_map(|v| {
                v.into_iter()
                    .map(|(k, neg)| if neg { -k } else { k })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn classify_is_order_invariant(labels in label_vec(), seed in 0u64..1000) {
                let base = classify(&labels).unwrap();
                let mut shuffled = labels.clone();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                shuffled.shuffle(&mut rng);
                let other = classify(&shuffled).unwrap();
                prop_assert_eq!(base.kind, other.kind);
                prop_assert_eq!(base.sign, other.sign);
                prop_assert_eq!(base.has_complementary_edge, other.has_complementary_edge);
                prop_assert_eq!(base.alternating_facets.len(), other.alternating_facets.len());
            }

            #[test]
            fn classify_antipodal_flip(labels in label_vec()) {
                let base = classify(&labels).unwrap();
                let negated: Vec<i32> = labels.iter().map(|l| -l).collect();
                let flipped = classify(&negated).unwrap();
                prop_assert_eq!(base.kind, flipped.kind);
                prop_assert_eq!(base.sign.map(Sign::flip), flipped.sign);
                prop_assert_eq!(base.alternating_facets.len(), flipped.alternating_facets.len());
                prop_assert_eq!(base.has_complementary_edge, flipped.has_complementary_edge);
            }

            #[test]
            fn almost_alternating_without_pair_has_two_equal_facets(labels in label_vec()) {
                let c = classify(&labels).unwrap();
                if c.kind == SimplexKind::AlmostAlternating && !c.has_complementary_edge {
                    prop_assert_eq!(c.alternating_facets.len(), 2);
                    prop_assert_eq!(c.alternating_facets[0].sign, c.alternating_facets[1].sign);
                    prop_assert!(c.sign.is_some());
                }
            }

            #[test]
            fn alternating_extremes_control_sign(labels in label_vec()) {
                let c = classify(&labels).unwrap();
                if c.kind == SimplexKind::Alternating && labels.len() >= 2 {
                    let sign = c.sign.unwrap();
                    let min_pos = (0..labels.len()).min_by_key(|i| labels[*i].unsigned_abs()).unwrap();
                    let max_pos = (0..labels.len()).max_by_key(|i| labels[*i].unsigned_abs()).unwrap();
                    let drop_max = c.alternating_facets.iter().find(|f| f.remove == max_pos).unwrap();
                    let drop_min = c.alternating_facets.iter().find(|f| f.remove == min_pos).unwrap();
                    prop_assert_eq!(drop_max.sign, sign);
                    prop_assert_eq!(drop_min.sign, sign.flip());
                }
            }
        }
    }
}
