//! Structural invariants of the materialized graph across random
//! instances: the decomposition covers every node exactly once, cyclic
//! components (which do occur) are uniformly degree 2, and in tucker mode
//! the degree-1 census matches pole + endpoint counts exactly.

use std::collections::BTreeSet;

use fanwalk::complex::Simplex;
use fanwalk::generators;
use fanwalk::labeling::{random_fan_labeling, random_labeling};
use fanwalk::oracle::{self, OracleReport};
use fanwalk::pathfinder::Mode;

fn assert_decomposition_covers(report: &OracleReport) {
    let mut seen: BTreeSet<&Simplex> = BTreeSet::new();
    let mut listed = 0;
    for chain in report.paths.iter().chain(&report.cycles) {
        for sigma in chain {
            assert!(seen.insert(sigma), "{sigma} appears twice in the decomposition");
            listed += 1;
        }
    }
    assert_eq!(listed, report.nodes.len(), "decomposition misses nodes");
    for cycle in &report.cycles {
        assert!(cycle.len() >= 3, "cycle too short: {cycle:?}");
        for sigma in cycle {
            assert_eq!(report.degrees[sigma], 2, "cycle node {sigma} not degree 2");
        }
    }
}

#[test]
fn decomposition_covers_all_nodes_in_fan_mode() {
    let mut cycles_seen = 0;
    for n in 1..=3usize {
        for refinements in 0..=1usize {
            let (complex, flag) = generators::generate(generators::GeneratorSpec {
                kind: generators::GeneratorKind::Octahedral,
                n,
                refinements,
            })
            .unwrap();
            for seed in 0..20u64 {
                let labeling = random_fan_labeling(&complex, n as u32 + 2, seed).unwrap();
                let report = oracle::build_graph(&complex, &flag, &labeling, Mode::Fan).unwrap();
                assert!(report.violations.is_empty());
                assert_decomposition_covers(&report);
                cycles_seen += report.cycles.len();
            }
        }
    }
    // cyclic components are a normal occurrence, not an error
    assert!(cycles_seen > 0, "expected at least one cyclic component in 120 draws");
}

#[test]
fn tucker_degree_one_census_matches_endpoint_counts() {
    for n in 1..=3usize {
        let (complex, flag) = generators::octahedral(n).unwrap();
        for seed in 0..25u64 {
            let labeling = random_labeling(&complex, n as u32, seed, false).unwrap();
            let report = oracle::build_graph(&complex, &flag, &labeling, Mode::Tucker).unwrap();
            assert_decomposition_covers(&report);
            let (pos, neg) = oracle::count_tucker_endpoints(&complex, &flag, &labeling).unwrap();
            let alternating_top = report.positive_alternating + report.negative_alternating;
            // with m = n there is no room for alternating top simplices
            assert_eq!(alternating_top, 0, "n={n} seed={seed}");
            assert_eq!(
                report.endpoint_count,
                2 + pos + neg,
                "degree-1 nodes must be the two poles plus the tucker endpoints: n={n} seed={seed}"
            );
        }
    }
}
