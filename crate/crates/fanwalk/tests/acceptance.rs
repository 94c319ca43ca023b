//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `--nocapture` to see them). Criteria 1-5 share a
//! single instance battery, computed once.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fanwalk::borsuk::{self, LinearMap, OddMap};
use fanwalk::complex::{Simplex, SymmetricComplex};
use fanwalk::flag::{validate_flag, HemisphereFlag};
use fanwalk::generators;
use fanwalk::labeling::{
    classify, random_fan_labeling, random_labeling, Labeling, Sign, SimplexKind,
};
use fanwalk::oracle::{self, OracleReport};
use fanwalk::pathfinder::{Mode, PathTrace, Termination, Walker};

const LABELINGS_PER_CONFIG: usize = 100;

/// Everything criteria 1-5 need from one Fan instance.
struct InstanceSummary {
    config: (usize, usize, u32),
    seed: u64,
    positive: usize,
    negative: usize,
    terminated_alternating_top: bool,
    terminal_in_enumeration: bool,
    walk_matches_decomposition: bool,
    degrees_within_bound: bool,
    degree_one_set_exact: bool,
    endpoint_count: usize,
    paths_paired_without_fixed_path: bool,
    antipodal_trace_is_other_pole_path: bool,
}

/// Alternating top simplices, recomputed directly from the labels.
fn alternating_top(complex: &SymmetricComplex, labeling: &Labeling) -> BTreeSet<Simplex> {
    complex
        .maximal_simplices()
        .iter()
        .filter(|s| labeling.classify_simplex(s).kind == SimplexKind::Alternating)
        .cloned()
        .collect()
}

fn summarize(
    complex: &SymmetricComplex,
    flag: &HemisphereFlag,
    labeling: &Labeling,
    config: (usize, usize, u32),
    seed: u64,
) -> InstanceSummary {
    let (positive, negative) = oracle::count_alternating(complex, labeling);
    let walker = Walker::new(complex, flag, labeling, Mode::Fan).expect("valid fan instance");
    let trace = walker.run().expect("fan walk terminates");
    let report = oracle::build_graph(complex, flag, labeling, Mode::Fan).expect("oracle runs");

    let enumeration = alternating_top(complex, labeling);
    let terminated_alternating_top = trace.termination == Termination::AlternatingN;
    let terminal_in_enumeration = enumeration.contains(&trace.witness.simplex);
    let walk_matches_decomposition = oracle::verify_path(&report, &trace);

    let degrees_within_bound =
        report.violations.is_empty() && report.degrees.values().all(|d| *d == 1 || *d == 2);
    let mut expected_degree_one: BTreeSet<Simplex> = enumeration.clone();
    expected_degree_one.insert(flag.base().clone());
    expected_degree_one.insert(complex.antipode_simplex(flag.base()));
    let actual_degree_one: BTreeSet<Simplex> = report.endpoints().into_iter().cloned().collect();
    let degree_one_set_exact = actual_degree_one == expected_degree_one;

    let paths_paired_without_fixed_path = paths_antipodally_paired(complex, &report);
    let antipodal_trace_is_other_pole_path =
        antipodal_trace_matches_other_pole(complex, flag, &walker, &report, &trace);

    InstanceSummary {
        config,
        seed,
        positive,
        negative,
        terminated_alternating_top,
        terminal_in_enumeration,
        walk_matches_decomposition,
        degrees_within_bound,
        degree_one_set_exact,
        endpoint_count: report.endpoint_count,
        paths_paired_without_fixed_path,
        antipodal_trace_is_other_pole_path,
    }
}

fn paths_antipodally_paired(complex: &SymmetricComplex, report: &OracleReport) -> bool {
    report.paths.iter().all(|path| {
        let own: BTreeSet<&Simplex> = path.iter().collect();
        let image: BTreeSet<Simplex> = path.iter().map(|s| complex.antipode_simplex(s)).collect();
        let image_refs: BTreeSet<&Simplex> = image.iter().collect();
        own != image_refs
            && report
                .paths
                .iter()
                .any(|other| other.iter().collect::<BTreeSet<_>>() == image_refs)
    })
}

fn antipodal_trace_matches_other_pole(
    complex: &SymmetricComplex,
    flag: &HemisphereFlag,
    walker: &Walker,
    report: &OracleReport,
    trace: &PathTrace,
) -> bool {
    let mirrored = match walker.trace_antipode(trace) {
        Ok(t) => t,
        Err(_) => return false,
    };
    let other_pole = complex.antipode_simplex(flag.base());
    match report.path_from(&other_pole) {
        Some(path) => {
            path.len() == mirrored.nodes.len()
                && path
                    .iter()
                    .zip(&mirrored.nodes)
                    .all(|(s, n)| *s == n.simplex)
        }
        None => false,
    }
}

/// 12 configurations x 100 valid Fan labelings each.
static FAN_BATTERY: LazyLock<Vec<InstanceSummary>> = LazyLock::new(|| {
    let mut out = Vec::new();
    for n in 1..=3usize {
        for refinements in 0..=1usize {
            let (complex, flag) = generators::generate(generators::GeneratorSpec {
                kind: generators::GeneratorKind::Octahedral,
                n,
                refinements,
            })
            .expect("octahedral generator");
            for m in [n as u32 + 1, n as u32 + 2] {
                let mut produced = 0;
                let mut seed = (n as u64) * 1_000_000 + (refinements as u64) * 10_000 + m as u64;
                let mut draws = 0;
                while produced < LABELINGS_PER_CONFIG {
                    draws += 1;
                    assert!(
                        draws <= LABELINGS_PER_CONFIG * 3,
                        "sampler kept failing for n={n} ref={refinements} m={m}"
                    );
                    seed += 1;
                    let Ok(labeling) = random_fan_labeling(&complex, m, seed) else {
                        continue;
                    };
                    out.push(summarize(
                        &complex,
                        &flag,
                        &labeling,
                        (n, refinements, m),
                        seed,
                    ));
                    produced += 1;
                }
            }
        }
    }
    out
});

fn battery() -> &'static [InstanceSummary] {
    &FAN_BATTERY
}

#[test]
fn criterion_1_fan_parity() {
    let battery = battery();
    assert_eq!(battery.len(), 12 * LABELINGS_PER_CONFIG);
    for inst in battery {
        assert_eq!(
            inst.positive % 2,
            1,
            "positive count even for config {:?} seed {}",
            inst.config,
            inst.seed
        );
        assert_eq!(
            inst.positive, inst.negative,
            "sign counts differ for config {:?} seed {}",
            inst.config, inst.seed
        );
    }
    println!(
        "criterion 1 (fan parity: odd positive count, equal negative) PASS on {} instances",
        battery.len()
    );
}

#[test]
fn criterion_2_constructive_agreement() {
    for inst in battery() {
        assert!(
            inst.terminated_alternating_top,
            "walk did not end at an alternating top simplex: {:?} seed {}",
            inst.config, inst.seed
        );
        assert!(
            inst.terminal_in_enumeration,
            "terminal simplex missing from enumeration: {:?} seed {}",
            inst.config, inst.seed
        );
        assert!(
            inst.walk_matches_decomposition,
            "walk is not a decomposed path: {:?} seed {}",
            inst.config, inst.seed
        );
    }
    println!(
        "criterion 2 (constructive agreement with the enumeration) PASS on {} instances",
        battery().len()
    );
}

#[test]
fn criterion_3_degree_theorem() {
    for inst in battery() {
        assert!(
            inst.degrees_within_bound,
            "degree out of range: {:?} seed {}",
            inst.config, inst.seed
        );
        assert!(
            inst.degree_one_set_exact,
            "degree-1 set differs from poles + alternating top simplices: {:?} seed {}",
            inst.config, inst.seed
        );
    }
    println!(
        "criterion 3 (degree 1 or 2; endpoints are poles plus alternating top) PASS on {} instances",
        battery().len()
    );
}

#[test]
fn criterion_4_endpoint_parity() {
    for inst in battery() {
        assert_eq!(
            inst.endpoint_count % 4,
            0,
            "endpoint count not a multiple of four: {:?} seed {}",
            inst.config,
            inst.seed
        );
    }
    println!(
        "criterion 4 (endpoint count multiple of four) PASS on {} instances",
        battery().len()
    );
}

#[test]
fn criterion_5_antipodal_pairing() {
    for inst in battery() {
        assert!(
            inst.paths_paired_without_fixed_path,
            "path family not involution-paired: {:?} seed {}",
            inst.config, inst.seed
        );
        assert!(
            inst.antipodal_trace_is_other_pole_path,
            "antipodal trace differs from the other pole's path: {:?} seed {}",
            inst.config, inst.seed
        );
    }
    println!(
        "criterion 5 (antipodally paired paths, mirrored pole trace) PASS on {} instances",
        battery().len()
    );
}

#[test]
fn criterion_6_tucker_witness() {
    let mut instances = 0;
    for n in 1..=3usize {
        let (complex, flag) = generators::octahedral(n).unwrap();
        let m = n as u32;
        for i in 0..LABELINGS_PER_CONFIG {
            let seed = (n as u64) << 32 | i as u64;
            let labeling = random_labeling(&complex, m, seed, false).unwrap();
            let walker = Walker::new(&complex, &flag, &labeling, Mode::Tucker).unwrap();
            let trace = walker.run().unwrap();
            assert_eq!(
                trace.termination,
                Termination::ComplementaryEdge,
                "n={n} seed={seed}"
            );
            let (u, w) = trace.witness.complementary_pair.expect("pair reported");
            assert_eq!(
                labeling.label(u) + labeling.label(w),
                0,
                "witness labels do not sum to zero: n={n} seed={seed}"
            );
            let (pos, neg) = oracle::count_tucker_endpoints(&complex, &flag, &labeling).unwrap();
            assert_eq!(
                pos % 2,
                1,
                "positive endpoint count even: n={n} seed={seed}"
            );
            assert_eq!(
                neg % 2,
                1,
                "negative endpoint count even: n={n} seed={seed}"
            );
            assert_eq!(pos, neg, "endpoint counts differ: n={n} seed={seed}");
            instances += 1;
        }
    }
    println!("criterion 6 (tucker witness and odd endpoint counts) PASS on {instances} instances");
}

#[test]
fn criterion_7_tetra_example() {
    let (complex, flag) = generators::paper_tetra();
    let symmetry = complex.validate_symmetry();
    assert!(symmetry.passed(), "{:?}", symmetry.violations);
    let flag_report = validate_flag(&complex, &flag);
    assert!(flag_report.passed(), "{:?}", flag_report.violations);

    // all anti-symmetric labelings over {±1, ±2}: 4 x 4 choices for the
    // two representative pairs
    let mut checked = 0;
    for a in [1i32, -1, 2, -2] {
        for b in [1i32, -1, 2, -2] {
            let labeling = Labeling::new(2, vec![a, b, -a, -b]).unwrap();
            let walker = Walker::new(&complex, &flag, &labeling, Mode::Tucker).unwrap();
            let trace = walker.run().unwrap();
            assert!(
                trace.nodes.is_empty(),
                "short-circuit expected for ({a},{b})"
            );
            assert_eq!(trace.termination, Termination::ComplementaryEdge);
            let (u, w) = trace.witness.complementary_pair.expect("pair");
            assert_eq!(
                complex.antipode(u),
                w,
                "witness must join antipodal vertices"
            );
            assert_eq!(labeling.label(u) + labeling.label(w), 0);
            checked += 1;
        }
    }
    println!(
        "criterion 7 (tetra example: validators pass, {checked} labelings short-circuit) PASS"
    );
}

#[test]
fn criterion_8_canonical_count() {
    let (complex, flag) = generators::octahedral(2).unwrap();
    let labeling = Labeling::new(3, vec![1, 2, 3, -1, -2, -3]).unwrap();

    // Independent enumeration of all 8 triangles: labels (±1, ±2, ±3)
    // alternate exactly when consecutive magnitudes carry opposite signs.
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for s1 in [1i32, -1] {
        for s2 in [1i32, -1] {
            for s3 in [1i32, -1] {
                let ids = [
                    if s1 > 0 { 0u32 } else { 3 },
                    if s2 > 0 { 1 } else { 4 },
                    if s3 > 0 { 2 } else { 5 },
                ];
                let alternating = s1 * s2 < 0 && s2 * s3 < 0;
                if alternating {
                    if s1 > 0 {
                        positive.push(Simplex::from_ids(ids));
                    } else {
                        negative.push(Simplex::from_ids(ids));
                    }
                }
            }
        }
    }
    assert_eq!(positive.len(), 1);
    assert_eq!(negative.len(), 1);
    assert_eq!(positive[0], Simplex::from_ids([0, 2, 4])); // {e1, -e2, e3}

    assert_eq!(oracle::count_alternating(&complex, &labeling), (1, 1));

    let walker = Walker::new(&complex, &flag, &labeling, Mode::Fan).unwrap();
    let trace = walker.run().unwrap();
    assert_eq!(trace.termination, Termination::AlternatingN);
    let terminal = trace.witness.simplex.clone();
    assert!(
        terminal == positive[0] || terminal == negative[0],
        "walk must end on one of the two alternating triangles"
    );
    // the walk lands on the negative triangle; its antipode is the unique
    // positive one
    let positive_witness = if terminal == positive[0] {
        terminal.clone()
    } else {
        complex.antipode_simplex(&terminal)
    };
    assert_eq!(positive_witness, Simplex::from_ids([0, 2, 4]));
    println!(
        "criterion 8 (canonical octahedral instance: counts (1,1), positive witness {{e1,-e2,e3}}) PASS"
    );
}

#[test]
fn criterion_9_borsuk_residual_bound() {
    let (complex, flag) = generators::octahedral(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let mut runs = 0;
    for _map_index in 0..20 {
        let rows: Vec<Vec<f64>> = (0..2)
            .map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let linear = LinearMap::new(rows).unwrap();
        for refinements in 0..=2usize {
            let witness = borsuk::solve(
                &complex,
                &flag,
                &OddMap::Linear(linear.clone()),
                refinements,
            )
            .unwrap();
            // recompute the refined mesh to bound the witness edge length
            let (mut c, mut f) = generators::octahedral(2).unwrap();
            for _ in 0..refinements {
                let (cc, ff) = generators::barycentric(&c, &f).unwrap();
                c = cc;
                f = ff;
            }
            let mesh_bound = linear.inf_norm() * borsuk::max_edge_length_inf(&c);
            assert!(
                witness.residual <= mesh_bound,
                "residual {} exceeds mesh bound {mesh_bound} at refinement {refinements}",
                witness.residual
            );
            let edge_bound = witness.bound.expect("linear maps carry a bound");
            assert!(witness.residual <= edge_bound);
            runs += 1;
        }
    }
    // degenerate samples must error cleanly, naming the vertex
    let degenerate =
        OddMap::Linear(LinearMap::new(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap());
    match borsuk::solve(&complex, &flag, &degenerate, 0) {
        Err(fanwalk::borsuk::BorsukError::Label(
            fanwalk::labeling::LabelError::DegenerateSample { .. },
        )) => {}
        other => panic!("expected degenerate-sample error, got {other:?}"),
    }
    println!("criterion 9 (borsuk residual within mesh bound) PASS on {runs} runs");
}

#[test]
fn criterion_10_classifier_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut checked = 0;
    for _ in 0..10_000 {
        let size = rng.gen_range(1..=6);
        let labels: Vec<i32> = (0..size)
            .map(|_| {
                let magnitude = rng.gen_range(1..=9);
                if rng.gen::<bool>() {
                    magnitude
                } else {
                    -magnitude
                }
            })
            .collect();
        let negated: Vec<i32> = labels.iter().map(|l| -l).collect();
        let base = classify(&labels).unwrap();
        let flipped = classify(&negated).unwrap();
        assert_eq!(base.kind, flipped.kind, "labels {labels:?}");
        assert_eq!(base.sign.map(Sign::flip), flipped.sign, "labels {labels:?}");
        assert_eq!(
            base.alternating_facets.len(),
            flipped.alternating_facets.len(),
            "labels {labels:?}"
        );
        assert_eq!(
            base.has_complementary_edge, flipped.has_complementary_edge,
            "labels {labels:?}"
        );
        if base.kind == SimplexKind::AlmostAlternating && !base.has_complementary_edge {
            assert_eq!(base.alternating_facets.len(), 2, "labels {labels:?}");
            assert_eq!(
                base.alternating_facets[0].sign, base.alternating_facets[1].sign,
                "labels {labels:?}"
            );
        }
        checked += 1;
    }
    println!("criterion 10 (classifier flip and facet properties) PASS on {checked} multisets");
}
