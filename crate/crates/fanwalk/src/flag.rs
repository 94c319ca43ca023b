//! Flags of hemispheres and carrier lookup.
//!
//! A flag stores, for each dimension `d`, the list of d-simplices making up
//! the positive hemisphere `H_d`; the negative side is always derived
//! through the antipodal involution, which makes antipodal equivariance of
//! carriers true by construction. The carrier of a simplex is the minimal
//! `(d, sign)` whose hemisphere closure contains it.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Simplex, SymmetricComplex};
use crate::labeling::Sign;

/// The minimal hemisphere containing a simplex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Carrier {
    pub dim: usize,
    pub sign: Sign,
}

impl Carrier {
    pub fn flip(self) -> Carrier {
        Carrier {
            dim: self.dim,
            sign: self.sign.flip(),
        }
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dim, self.sign)
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Positive hemispheres `H_0 ⊂ … ⊂ H_n`, each given by its list of
/// top-dimensional simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HemisphereFlag {
    levels: Vec<Vec<Simplex>>,
}

impl HemisphereFlag {
    /// `levels[d]` lists the d-simplices of `H_d`. Lists are sorted and
    /// deduplicated; dimension mismatches and an empty or non-singleton
    /// `H_0` are rejected here, everything deeper is left to
    /// [`validate_flag`].
    pub fn new(levels: Vec<Vec<Simplex>>) -> Result<Self, FlagStructureError> {
        if levels.is_empty() {
            return Err(FlagStructureError::Empty);
        }
        if levels[0].len() != 1 {
            return Err(FlagStructureError::BaseNotSingleton {
                count: levels[0].len(),
            });
        }
        let mut levels = levels;
        for (d, level) in levels.iter_mut().enumerate() {
            for sigma in level.iter() {
                if sigma.dim() != d {
                    return Err(FlagStructureError::DimensionMismatch {
                        level: d,
                        simplex: sigma.clone(),
                    });
                }
            }
            level.sort_unstable();
            level.dedup();
        }
        Ok(Self { levels })
    }

    /// Top dimension of the flag (`n` for a flag over `S^n`).
    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, d: usize) -> &[Simplex] {
        &self.levels[d]
    }

    pub fn levels(&self) -> &[Vec<Simplex>] {
        &self.levels
    }

    /// The vertex `H_0`.
    pub fn base(&self) -> &Simplex {
        &self.levels[0][0]
    }
}

#[derive(Debug, Error)]
pub enum FlagStructureError {
    #[error("a flag needs at least one level")]
    Empty,
    #[error("level 0 must hold exactly one vertex, found {count}")]
    BaseNotSingleton { count: usize },
    #[error("simplex {simplex} in level {level} has the wrong dimension")]
    DimensionMismatch { level: usize, simplex: Simplex },
}

/// Outcome of [`validate_flag`].
#[derive(Debug, Default)]
pub struct FlagReport {
    pub violations: Vec<FlagViolation>,
    /// Set when the complex contains self-antipodal simplices, in which
    /// case the vertex-wise involution cannot tile the sphere by `H_n` and
    /// `-H_n` and the top-cover check degrades to a cardinality check.
    pub top_cover_degraded: bool,
}

impl FlagReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlagViolation {
    /// Flag has `k+1` levels over a complex of dimension `n != k`.
    LevelCountMismatch { levels: usize, n: usize },
    /// A listed simplex is not a face of any maximal simplex.
    NotInComplex { level: usize, simplex: Simplex },
    /// A (d-1)-face of the level-d list lies in 3 or more of its members.
    OverusedInteriorFace {
        level: usize,
        face: Simplex,
        count: usize,
    },
    /// Faces incident to exactly one member of level d differ from
    /// `H_{d-1} ∪ -H_{d-1}`.
    BoundaryMismatch {
        level: usize,
        missing: Vec<Simplex>,
        extra: Vec<Simplex>,
    },
    /// `H_n ∪ -H_n` misses a maximal simplex.
    TopCoverIncomplete { missing: Vec<Simplex> },
    /// `H_n` and `-H_n` share a maximal simplex.
    TopOverlap { shared: Vec<Simplex> },
    /// Degraded top check: `|H_n|` must be half the maximal simplices.
    TopHalfCountMismatch { listed: usize, maximal: usize },
}

impl fmt::Display for FlagViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LevelCountMismatch { levels, n } => {
                write!(f, "flag has {levels} levels for a complex of dimension {n}")
            }
            Self::NotInComplex { level, simplex } => {
                write!(
                    f,
                    "level {level}: {simplex} is not a simplex of the complex"
                )
            }
            Self::OverusedInteriorFace { level, face, count } => {
                write!(
                    f,
                    "level {level}: face {face} lies in {count} members, expected at most 2"
                )
            }
            Self::BoundaryMismatch {
                level,
                missing,
                extra,
            } => write!(
                f,
                "level {level}: boundary mismatch, missing {missing:?}, extra {extra:?}"
            ),
            Self::TopCoverIncomplete { missing } => {
                write!(
                    f,
                    "H_n and -H_n do not cover the maximal simplices, missing {missing:?}"
                )
            }
            Self::TopOverlap { shared } => {
                write!(f, "H_n and -H_n overlap in {shared:?}")
            }
            Self::TopHalfCountMismatch { listed, maximal } => write!(
                f,
                "H_n lists {listed} simplices, expected half of {maximal} maximal simplices"
            ),
        }
    }
}

/// Checks the hemisphere-flag invariants level by level.
///
/// For `d >= 1`: every listed simplex must belong to the complex, every
/// interior (d-1)-face must be shared by exactly two members, and the faces
/// incident to exactly one member must be precisely
/// `H_{d-1} ∪ -H_{d-1}`. At the top, `H_n ∪ -H_n` must be a disjoint cover
/// of the maximal simplices; on complexes with self-antipodal simplices the
/// involution provably cannot achieve that, so only `|H_n| = |K_n|/2` is
/// required there and the report notes the degradation.
pub fn validate_flag(complex: &SymmetricComplex, flag: &HemisphereFlag) -> FlagReport {
    let mut report = FlagReport::default();
    let n = complex.n();
    if flag.n() != n {
        report.violations.push(FlagViolation::LevelCountMismatch {
            levels: flag.n() + 1,
            n,
        });
        return report;
    }
    let closure = complex.closure();
    for (d, level) in flag.levels().iter().enumerate() {
        for sigma in level {
            if !closure.contains(sigma) {
                report.violations.push(FlagViolation::NotInComplex {
                    level: d,
                    simplex: sigma.clone(),
                });
            }
        }
    }
    for d in 1..=n {
        let mut incidence: HashMap<Simplex, usize> = HashMap::new();
        for sigma in flag.level(d) {
            for face in sigma.facets() {
                *incidence.entry(face).or_insert(0) += 1;
            }
        }
        let mut boundary: BTreeSet<Simplex> = BTreeSet::new();
        let mut entries: Vec<(&Simplex, usize)> = incidence.iter().map(|(s, c)| (s, *c)).collect();
        entries.sort();
        for (face, count) in entries {
            match count {
                1 => {
                    boundary.insert(face.clone());
                }
                2 => {}
                c => report.violations.push(FlagViolation::OverusedInteriorFace {
                    level: d,
                    face: face.clone(),
                    count: c,
                }),
            }
        }
        let mut expected: BTreeSet<Simplex> = BTreeSet::new();
        for sigma in flag.level(d - 1) {
            expected.insert(sigma.clone());
            expected.insert(complex.antipode_simplex(sigma));
        }
        if boundary != expected {
            let missing: Vec<Simplex> = expected.difference(&boundary).cloned().collect();
            let extra: Vec<Simplex> = boundary.difference(&expected).cloned().collect();
            report.violations.push(FlagViolation::BoundaryMismatch {
                level: d,
                missing,
                extra,
            });
        }
    }

    let top: BTreeSet<Simplex> = flag.level(n).iter().cloned().collect();
    let top_antipodal: BTreeSet<Simplex> =
        top.iter().map(|s| complex.antipode_simplex(s)).collect();
    let maximal: BTreeSet<Simplex> = complex.maximal_simplices().iter().cloned().collect();
    let symmetry = complex.validate_symmetry();
    if symmetry.self_antipodal_simplices.is_empty() {
        let missing: Vec<Simplex> = maximal
            .iter()
            .filter(|s| !top.contains(s) && !top_antipodal.contains(s))
            .cloned()
            .collect();
        if !missing.is_empty() {
            report
                .violations
                .push(FlagViolation::TopCoverIncomplete { missing });
        }
        let shared: Vec<Simplex> = top.intersection(&top_antipodal).cloned().collect();
        if !shared.is_empty() {
            report.violations.push(FlagViolation::TopOverlap { shared });
        }
    } else {
        report.top_cover_degraded = true;
        if top.len() * 2 != maximal.len() {
            report.violations.push(FlagViolation::TopHalfCountMismatch {
                listed: top.len(),
                maximal: maximal.len(),
            });
        }
    }
    report
}

/// Precomputed closure sets and facet incidences of a flag, shared by
/// carrier lookup, the path walk, and the oracle.
///
/// Only positive hemispheres are indexed; a query against `-H_d` is the
/// antipodal image of a query against `H_d`.
pub struct FlagIndex<'a> {
    complex: &'a SymmetricComplex,
    flag: &'a HemisphereFlag,
    /// `closures[d]` holds every face (all dimensions) of `H_d`'s members.
    closures: Vec<HashSet<Simplex>>,
    /// `facet_members[d]` maps a (d-1)-simplex to the members of `H_d`
    /// having it as a facet.
    facet_members: Vec<HashMap<Simplex, Vec<Simplex>>>,
}

impl<'a> FlagIndex<'a> {
    pub fn new(complex: &'a SymmetricComplex, flag: &'a HemisphereFlag) -> Self {
        let mut closures = Vec::with_capacity(flag.n() + 1);
        let mut facet_members = Vec::with_capacity(flag.n() + 1);
        for (d, level) in flag.levels().iter().enumerate() {
            let mut closure: HashSet<Simplex> = HashSet::new();
            let mut members: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
            for sigma in level {
                for k in 0..=d {
                    for face in sigma.faces(k).expect("k <= dim") {
                        closure.insert(face);
                    }
                }
                for face in sigma.facets() {
                    members.entry(face).or_default().push(sigma.clone());
                }
            }
            closures.push(closure);
            facet_members.push(members);
        }
        Self {
            complex,
            flag,
            closures,
            facet_members,
        }
    }

    pub fn complex(&self) -> &'a SymmetricComplex {
        self.complex
    }

    pub fn flag(&self) -> &'a HemisphereFlag {
        self.flag
    }

    fn in_side(&self, d: usize, sign: Sign, sigma: &Simplex) -> bool {
        match sign {
            Sign::Pos => self.closures[d].contains(sigma),
            Sign::Neg => self.closures[d].contains(&self.complex.antipode_simplex(sigma)),
        }
    }

    /// The minimal `(d, sign)` such that `sigma` lies in the closure of
    /// `H_d` (positive) or `-H_d` (negative). The scan starts at
    /// `d = dim(sigma)` since no smaller hemisphere can contain it.
    pub fn carrier(&self, sigma: &Simplex) -> Result<Carrier, CarrierError> {
        for d in sigma.dim()..=self.flag.n() {
            let pos = self.in_side(d, Sign::Pos, sigma);
            let neg = self.in_side(d, Sign::Neg, sigma);
            match (pos, neg) {
                (true, true) => {
                    return Err(CarrierError::Ambiguous {
                        simplex: sigma.clone(),
                        dim: d,
                    })
                }
                (true, false) => {
                    return Ok(Carrier {
                        dim: d,
                        sign: Sign::Pos,
                    })
                }
                (false, true) => {
                    return Ok(Carrier {
                        dim: d,
                        sign: Sign::Neg,
                    })
                }
                (false, false) => {}
            }
        }
        Err(CarrierError::NoCarrier {
            simplex: sigma.clone(),
        })
    }

    /// Members of the signed level-d list having `sigma` as a facet,
    /// sorted. `sigma` must be a (d-1)-simplex.
    pub fn level_cofacets(&self, d: usize, sign: Sign, sigma: &Simplex) -> Vec<Simplex> {
        let mut out = match sign {
            Sign::Pos => self.facet_members[d]
                .get(sigma)
                .cloned()
                .unwrap_or_default(),
            Sign::Neg => self.facet_members[d]
                .get(&self.complex.antipode_simplex(sigma))
                .map(|v| v.iter().map(|t| self.complex.antipode_simplex(t)).collect())
                .unwrap_or_default(),
        };
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CarrierError {
    #[error("simplex {simplex} lies in no hemisphere closure; the flag is misaligned")]
    NoCarrier { simplex: Simplex },
    #[error("simplex {simplex} lies in both H_{dim} and -H_{dim} at the minimal level; the flag is invalid")]
    Ambiguous { simplex: Simplex, dim: usize },
}
