//! Isomorphism of the contact-homology algebras of two Boothby-Wang contact
//! structures on the same level.
//!
//! For a common level `d` and canonical divisibilities `dk`, `dk'` the
//! algebras are isomorphic exactly when
//!
//! * `d >= 1` and `dk, dk' <= 3`, or
//! * `d = 0` and `dk = dk'`, or
//! * `d >= 4` and `dk = dk' >= 4`.
//!
//! A negative answer comes with a distinguishing residue class (or the pair
//! of lowest degrees at level zero); a positive one can be turned into an
//! explicit truncated map `q_{k,i} -> z_1^alpha q'_{psi(k,i)}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, DegreeSpectrum, GeneratorDegree, GeneratorIndex, QbStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsomorphismError {
    #[error("canonical divisibility {dk} is inconsistent with level {d}")]
    InconsistentDivisibility { d: u64, dk: u64 },
    #[error("spectra are not comparable: {0}")]
    IncomparableSpectra(&'static str),
    #[error("no witness exists: the algebras are not isomorphic")]
    NotIsomorphic,
    #[error("internal inconsistency: residue class {b} has generators on one side only")]
    OneSidedClass { b: u64 },
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
}

type Result<T> = std::result::Result<T, IsomorphismError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Isomorphic,
    NotIsomorphic,
}

/// Which clause of the criterion decided the comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionCase {
    /// `d >= 1`, both divisibilities at most 3.
    SmallDivisibilities,
    /// `d = 0`, equal divisibilities.
    LevelZeroEqual,
    /// `d >= 4`, equal divisibilities at least 4.
    LargeEqual,
    /// `d = 0`, different divisibilities.
    LevelZeroDifferent,
    /// `d >= 4`, different divisibilities, at least one of them at least 4.
    LargeDifferent,
    /// The two structures are on different levels; no common grading.
    LevelsDiffer,
    /// The total spaces are not diffeomorphic.
    NotDiffeomorphic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distinguisher {
    ResidueClass {
        b: u64,
        status: QbStatus,
        status_prime: QbStatus,
    },
    LowestDegrees {
        lowest: i64,
        lowest_prime: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTriple {
    pub source: GeneratorIndex,
    pub alpha: i64,
    pub target: GeneratorIndex,
}

/// Restriction of a degree-preserving generator bijection to `k <= k_max`.
/// Generators whose partner lies beyond the truncation are listed as deferred.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub triples: Vec<WitnessTriple>,
    pub deferred_source: Vec<GeneratorIndex>,
    pub deferred_target: Vec<GeneratorIndex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismReport {
    pub level: u64,
    pub dk: u64,
    pub dk_prime: u64,
    pub decision: Decision,
    pub case: DecisionCase,
    pub witness: Option<Witness>,
    pub distinguisher: Option<Distinguisher>,
}

impl IsomorphismReport {
    pub fn is_isomorphic(&self) -> bool {
        self.decision == Decision::Isomorphic
    }

    /// Report for two structures that cannot be compared on a common level.
    pub fn incomparable(case: DecisionCase, dk: u64, dk_prime: u64) -> Self {
        IsomorphismReport {
            level: 0,
            dk,
            dk_prime,
            decision: Decision::NotIsomorphic,
            case,
            witness: None,
            distinguisher: None,
        }
    }
}

// only 0 divides 0
fn divides(a: u64, b: u64) -> bool {
    if a == 0 {
        b == 0
    } else {
        b % a == 0
    }
}

/// `dk` is admissible at level `d` when `dk | d` (any `dk` at level 0).
pub fn consistent(d: u64, dk: u64) -> bool {
    d == 0 || (dk != 0 && divides(dk, d))
}

/// Residue class separating `dk` and `dk'` at level `d >= 4`: with
/// `small < large`, `b = 2` if `small <= 3`, else `b = small - 1`.
pub fn distinguishing_class(dk: u64, dk_prime: u64) -> u64 {
    let small = dk.min(dk_prime);
    if small <= 3 {
        2
    } else {
        small - 1
    }
}

pub fn decide(d: u64, dk: u64, dk_prime: u64) -> Result<IsomorphismReport> {
    for x in [dk, dk_prime] {
        if !consistent(d, x) {
            return Err(IsomorphismError::InconsistentDivisibility { d, dk: x });
        }
    }
    let mut report = IsomorphismReport {
        level: d,
        dk,
        dk_prime,
        decision: Decision::Isomorphic,
        case: DecisionCase::SmallDivisibilities,
        witness: None,
        distinguisher: None,
    };
    if d == 0 {
        if dk == dk_prime {
            report.case = DecisionCase::LevelZeroEqual;
        } else {
            report.decision = Decision::NotIsomorphic;
            report.case = DecisionCase::LevelZeroDifferent;
            report.distinguisher = Some(Distinguisher::LowestDegrees {
                lowest: lowest_degree(dk)?,
                lowest_prime: lowest_degree(dk_prime)?,
            });
        }
    } else if dk <= 3 && dk_prime <= 3 {
        report.case = DecisionCase::SmallDivisibilities;
    } else if dk == dk_prime {
        report.case = DecisionCase::LargeEqual;
    } else {
        let b = distinguishing_class(dk, dk_prime);
        report.decision = Decision::NotIsomorphic;
        report.case = DecisionCase::LargeDifferent;
        report.distinguisher = Some(Distinguisher::ResidueClass {
            b,
            status: algebra::qb_status(b, d, dk)?,
            status_prime: algebra::qb_status(b, d, dk_prime)?,
        });
    }
    Ok(report)
}

// at level zero delta = dk, and the lowest generator q_{1,0} has degree -2 + 2 dk
fn lowest_degree(dk: u64) -> Result<i64> {
    let dk = i64::try_from(dk).map_err(|_| algebra::AlgebraError::Overflow)?;
    dk.checked_mul(2)
        .and_then(|x| x.checked_sub(2))
        .ok_or(IsomorphismError::Algebra(algebra::AlgebraError::Overflow))
}

/// Decide, and if isomorphic, pair generators of the two spectra.
///
/// At level zero the pairing is the identity. Otherwise both generator lists
/// are split by residue class, sorted by `(degree, k, i)` and zipped; each pair
/// gets `alpha = (deg' - deg) / 2d` so that `deg = -2d alpha + deg'`.
pub fn build_witness(spec: &DegreeSpectrum, spec_prime: &DegreeSpectrum) -> Result<IsomorphismReport> {
    if spec.level != spec_prime.level {
        return Err(IsomorphismError::IncomparableSpectra("levels differ"));
    }
    if spec.a != spec_prime.a {
        return Err(IsomorphismError::IncomparableSpectra("second Betti numbers differ"));
    }
    if spec.k_max != spec_prime.k_max {
        return Err(IsomorphismError::IncomparableSpectra("truncation bounds differ"));
    }
    let d = spec.level;
    let mut report = decide(d, spec.dk(), spec_prime.dk())?;
    if !report.is_isomorphic() {
        return Err(IsomorphismError::NotIsomorphic);
    }

    if d == 0 {
        let triples = spec
            .q_degrees
            .iter()
            .zip(&spec_prime.q_degrees)
            .map(|(g, h)| {
                if g.index != h.index || g.degree != h.degree {
                    return Err(IsomorphismError::IncomparableSpectra(
                        "level-zero spectra do not agree degree by degree",
                    ));
                }
                Ok(WitnessTriple {
                    source: g.index,
                    alpha: 0,
                    target: h.index,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        report.witness = Some(Witness {
            triples,
            deferred_source: Vec::new(),
            deferred_target: Vec::new(),
        });
        return Ok(report);
    }

    let source = group_by_class(&spec.q_degrees, d);
    let target = group_by_class(&spec_prime.q_degrees, d);
    let mut witness = Witness {
        triples: Vec::new(),
        deferred_source: Vec::new(),
        deferred_target: Vec::new(),
    };
    let two_d = 2 * d as i64;
    for b in 0..d {
        let empty = Vec::new();
        let lhs = source.get(&b).unwrap_or(&empty);
        let rhs = target.get(&b).unwrap_or(&empty);
        if lhs.is_empty() != rhs.is_empty() {
            // truncation can hide a class on one side; only a closed-form mismatch is an error
            let status = algebra::qb_status(b, d, spec.dk())?;
            let status_prime = algebra::qb_status(b, d, spec_prime.dk())?;
            if status != status_prime {
                return Err(IsomorphismError::OneSidedClass { b });
            }
        }
        for (g, h) in lhs.iter().zip(rhs.iter()) {
            let diff = h.degree - g.degree;
            debug_assert_eq!(diff % two_d, 0);
            witness.triples.push(WitnessTriple {
                source: g.index,
                alpha: diff / two_d,
                target: h.index,
            });
        }
        let paired = lhs.len().min(rhs.len());
        witness.deferred_source.extend(lhs[paired..].iter().map(|g| g.index));
        witness.deferred_target.extend(rhs[paired..].iter().map(|g| g.index));
    }
    witness.triples.sort_by_key(|t| t.source);
    witness.deferred_source.sort();
    witness.deferred_target.sort();
    report.witness = Some(witness);
    Ok(report)
}

fn group_by_class(degrees: &[GeneratorDegree], d: u64) -> BTreeMap<u64, Vec<GeneratorDegree>> {
    let mut classes: BTreeMap<u64, Vec<GeneratorDegree>> = BTreeMap::new();
    for g in degrees {
        classes
            .entry(algebra::residue_class(g.degree, d))
            .or_default()
            .push(*g);
    }
    for list in classes.values_mut() {
        list.sort_by_key(|g| (g.degree, g.index.k, g.index.i));
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn distinguisher_b(r: &IsomorphismReport) -> u64 {
        match r.distinguisher {
            Some(Distinguisher::ResidueClass { b, .. }) => b,
            ref other => panic!("unexpected distinguisher {other:?}"),
        }
    }

    #[test]
    fn decision_examples() {
        let r = decide(12, 2, 3).unwrap();
        assert_eq!(r.decision, Decision::Isomorphic);
        assert_eq!(r.case, DecisionCase::SmallDivisibilities);

        let r = decide(0, 2, 3).unwrap();
        assert_eq!(r.decision, Decision::NotIsomorphic);
        assert_eq!(
            r.distinguisher,
            Some(Distinguisher::LowestDegrees { lowest: 2, lowest_prime: 4 })
        );

        let r = decide(8, 4, 8).unwrap();
        assert_eq!(r.case, DecisionCase::LargeDifferent);
        assert_eq!(distinguisher_b(&r), 3);

        let r = decide(4, 4, 2).unwrap();
        assert_eq!(distinguisher_b(&r), 2);
        assert_eq!(
            r.distinguisher,
            Some(Distinguisher::ResidueClass {
                b: 2,
                status: QbStatus::Empty,
                status_prime: QbStatus::Infinite
            })
        );
    }

    #[test]
    fn inconsistent_inputs_rejected() {
        assert_eq!(
            decide(8, 3, 4),
            Err(IsomorphismError::InconsistentDivisibility { d: 8, dk: 3 })
        );
        assert_eq!(
            decide(8, 0, 4),
            Err(IsomorphismError::InconsistentDivisibility { d: 8, dk: 0 })
        );
        assert!(decide(0, 0, 7).is_ok());
    }

    fn check_witness(r: &IsomorphismReport, s: &DegreeSpectrum, t: &DegreeSpectrum) {
        let w = r.witness.as_ref().unwrap();
        let deg = |sp: &DegreeSpectrum, idx: GeneratorIndex| {
            sp.q_degrees.iter().find(|g| g.index == idx).unwrap().degree
        };
        let mut seen = HashSet::new();
        for tr in &w.triples {
            assert_eq!(
                deg(s, tr.source),
                -2 * s.level as i64 * tr.alpha + deg(t, tr.target)
            );
            assert!(seen.insert(tr.target));
        }
    }

    #[test]
    fn identical_spectra_give_identity() {
        let s = DegreeSpectrum::new(6, 2, 4, 20).unwrap();
        let r = build_witness(&s, &s).unwrap();
        let w = r.witness.as_ref().unwrap();
        assert!(w.triples.iter().all(|t| t.alpha == 0 && t.source == t.target));
        assert_eq!(w.triples.len(), s.q_degrees.len());
        assert!(w.deferred_source.is_empty());
    }

    #[test]
    fn level_twelve_witness() {
        let s = DegreeSpectrum::new(12, 3, 5, 50).unwrap();
        let t = DegreeSpectrum::new(12, 9, 5, 50).unwrap();
        let r = build_witness(&s, &t).unwrap();
        check_witness(&r, &s, &t);
        let w = r.witness.as_ref().unwrap();
        let first = w
            .triples
            .iter()
            .find(|tr| tr.source == GeneratorIndex::new(1, 0))
            .unwrap();
        let target_degree = t.q_degrees.iter().find(|g| g.index == first.target).unwrap().degree;
        assert_eq!(algebra::residue_class(target_degree, 12), 2);
    }

    #[test]
    fn level_zero_witness_is_identity() {
        let s = DegreeSpectrum::new(0, 5, 3, 10).unwrap();
        let r = build_witness(&s, &s.clone()).unwrap();
        assert_eq!(s.lowest_degree(), Some(8));
        let w = r.witness.unwrap();
        assert!(w.triples.iter().all(|t| t.alpha == 0 && t.source == t.target));
    }

    #[test]
    fn witness_refused_when_not_isomorphic() {
        let s = DegreeSpectrum::new(8, 4, 3, 10).unwrap();
        let t = DegreeSpectrum::new(8, 0, 3, 10).unwrap();
        assert_eq!(build_witness(&s, &t), Err(IsomorphismError::NotIsomorphic));
        let u = DegreeSpectrum::new(6, 2, 3, 10).unwrap();
        assert!(matches!(
            build_witness(&s, &u),
            Err(IsomorphismError::IncomparableSpectra(_))
        ));
    }

    #[test]
    fn small_truncation_defers_instead_of_failing() {
        // k_max = 1 cannot populate every infinite class at level 24
        let s = DegreeSpectrum::new(24, 1, 2, 1).unwrap();
        let t = DegreeSpectrum::new(24, 5, 2, 1).unwrap();
        let r = build_witness(&s, &t).unwrap();
        check_witness(&r, &s, &t);
        let w = r.witness.unwrap();
        assert_eq!(w.triples.len() + w.deferred_source.len(), s.q_degrees.len());
    }
}
