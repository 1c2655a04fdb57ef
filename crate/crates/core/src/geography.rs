//! Symplectic 4-manifolds with known canonical-class divisibility, and the
//! counts of inequivalent contact structures they certify on a given level.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, Covector, LatticeError};
use crate::manifolds::{barden_name, ValidatedDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeographyError {
    #[error("level d = {0} must be at least 4")]
    LevelTooSmall(u64),
    #[error("N'(d) needs an even level, got {0}")]
    OddLevel(u64),
    #[error("b2 = {0} must be at least 2")]
    B2TooSmall(u32),
    #[error("multiple m must be positive")]
    ZeroMultiple,
    #[error("canonical class is zero: no positive level is realizable this way")]
    ZeroCanonicalClass,
    #[error("catalog entry {index} ({family}) violates its family invariants: {reason}")]
    InvalidEntry {
        index: usize,
        family: String,
        reason: String,
    },
    #[error("realized level {computed} disagrees with expected {expected}")]
    RealizationMismatch { expected: u64, computed: u64 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

type Result<T> = std::result::Result<T, GeographyError>;

/// Largest `m` for which the built-in catalog lists a homotopy elliptic surface.
pub const BUILTIN_MAX_M: u32 = 100;

/// Number of divisors of `d` that are at least 4.
pub fn count_n(d: u64) -> Result<u64> {
    if d < 4 {
        return Err(GeographyError::LevelTooSmall(d));
    }
    Ok(divisors(d).filter(|&k| k >= 4).count() as u64)
}

/// Number of odd divisors of `d` that are at least 4, for even `d`.
pub fn count_n_prime(d: u64) -> Result<u64> {
    if d < 4 {
        return Err(GeographyError::LevelTooSmall(d));
    }
    if d % 2 == 1 {
        return Err(GeographyError::OddLevel(d));
    }
    Ok(divisors(d).filter(|&k| k >= 4 && k % 2 == 1).count() as u64)
}

fn divisors(d: u64) -> impl Iterator<Item = u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= d {
        if d % k == 0 {
            small.push(k);
            if k * k != d {
                large.push(d / k);
            }
        }
        k += 1;
    }
    small.into_iter().chain(large.into_iter().rev())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    HomotopyElliptic,
    Dolgachev,
    #[serde(untagged)]
    Other(String),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::HomotopyElliptic => f.write_str("HomotopyElliptic"),
            Family::Dolgachev => f.write_str("Dolgachev"),
            Family::Other(name) => f.write_str(name),
        }
    }
}

/// Which canonical divisibilities a family realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisibilityConstraint {
    Any,
    Odd,
}

impl DivisibilityConstraint {
    pub fn admits(self, k: u64) -> bool {
        k >= 1
            && match self {
                DivisibilityConstraint::Any => true,
                DivisibilityConstraint::Odd => k % 2 == 1,
            }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    /// Holomorphic Euler characteristic for homotopy elliptic surfaces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeographyEntry {
    pub family: Family,
    #[serde(default)]
    pub params: FamilyParams,
    pub b2: u32,
    pub b2_plus: u32,
    #[serde(rename = "dK_constraint")]
    pub dk_constraint: DivisibilityConstraint,
}

impl GeographyEntry {
    /// Homotopy elliptic surface with `chi_h = m`: `b2 = 12m - 2`,
    /// `b2+ = 2m - 1`, any divisibility for even `m`, odd ones for odd `m`.
    pub fn homotopy_elliptic(m: u32) -> Self {
        GeographyEntry {
            family: Family::HomotopyElliptic,
            params: FamilyParams { m: Some(m) },
            b2: 12 * m - 2,
            b2_plus: 2 * m - 1,
            dk_constraint: if m % 2 == 0 {
                DivisibilityConstraint::Any
            } else {
                DivisibilityConstraint::Odd
            },
        }
    }

    pub fn dolgachev() -> Self {
        GeographyEntry {
            family: Family::Dolgachev,
            params: FamilyParams::default(),
            b2: 10,
            b2_plus: 1,
            dk_constraint: DivisibilityConstraint::Odd,
        }
    }

    pub fn realizes(&self, k: u64) -> bool {
        self.dk_constraint.admits(k)
    }

    fn check(&self) -> std::result::Result<(), String> {
        if self.b2_plus == 0 || self.b2_plus > self.b2 {
            return Err(format!("b2_plus {} outside 1..={}", self.b2_plus, self.b2));
        }
        if self.b2_plus % 2 == 0 {
            return Err(format!("b2_plus {} is even", self.b2_plus));
        }
        match self.family {
            Family::HomotopyElliptic => {
                let m = self.params.m.ok_or("missing parameter m")?;
                if m == 0 {
                    return Err("m must be positive".into());
                }
                if self.b2 != 12 * m - 2 || self.b2_plus != 2 * m - 1 {
                    return Err(format!("expected b2 = {}, b2_plus = {}", 12 * m - 2, 2 * m - 1));
                }
                if m % 2 == 1 && self.dk_constraint != DivisibilityConstraint::Odd {
                    return Err("odd m only realizes odd divisibility".into());
                }
            }
            Family::Dolgachev => {
                if self.b2 != 10 || self.b2_plus != 1 {
                    return Err("expected b2 = 10, b2_plus = 1".into());
                }
                if self.dk_constraint != DivisibilityConstraint::Odd {
                    return Err("only odd divisibility is realized".into());
                }
            }
            Family::Other(_) => {}
        }
        Ok(())
    }
}

/// An immutable list of geography entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Catalog {
    entries: Vec<GeographyEntry>,
}

impl Catalog {
    pub fn new(entries: Vec<GeographyEntry>) -> Result<Self> {
        for (index, e) in entries.iter().enumerate() {
            e.check().map_err(|reason| GeographyError::InvalidEntry {
                index,
                family: e.family.to_string(),
                reason,
            })?;
        }
        Ok(Catalog { entries })
    }

    /// Dolgachev surfaces and homotopy elliptic surfaces for `m <= BUILTIN_MAX_M`.
    pub fn builtin() -> Self {
        let mut entries = vec![GeographyEntry::dolgachev()];
        entries.extend((1..=BUILTIN_MAX_M).map(GeographyEntry::homotopy_elliptic));
        Catalog { entries }
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, CatalogLoadError> {
        let entries: Vec<GeographyEntry> = serde_json::from_str(text)?;
        Ok(Catalog::new(entries)?)
    }

    pub fn entries(&self) -> &[GeographyEntry] {
        &self.entries
    }

    /// Entries with `b2 = r` whose canonical class can have divisibility `k`.
    pub fn realizable(&self, r: u32, k: u64) -> Vec<GeographyEntry> {
        self.entries
            .iter()
            .filter(|e| e.b2 == r && e.realizes(k))
            .cloned()
            .collect()
    }

    /// Certified lower bound for `Q(r, d)`: the divisors `k >= 4` of `d`
    /// realized by some catalog entry with `b2 = r`.
    pub fn q_lower_bound(&self, r: u32, d: u64) -> Result<(u64, Vec<Realization>)> {
        check_range(r, d)?;
        let realizations: Vec<Realization> = divisors(d)
            .filter(|&k| k >= 4)
            .filter_map(|k| {
                let entries = self.realizable(r, k);
                (!entries.is_empty()).then_some(Realization { k, entries })
            })
            .collect();
        Ok((realizations.len() as u64, realizations))
    }

    pub fn contact_count_report(&self, r: u32, d: u64) -> Result<CountReport> {
        let (lower_bound, realizations) = self.q_lower_bound(r, d)?;
        let upper = q_upper_bound(r, d)?;
        let spin = d % 2 == 0;
        let best_upper = upper.refined.unwrap_or(upper.n_bound);
        Ok(CountReport {
            manifold_name: barden_name(r - 1, spin),
            b2_x: r - 1,
            spin,
            level: d,
            lower_bound,
            upper_bound_n: upper.n_bound,
            upper_bound_refined: upper.refined,
            exact: lower_bound == best_upper,
            realizations,
        })
    }
}

#[derive(Debug, Error)]
pub enum CatalogLoadError {
    #[error("malformed catalog: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Geography(#[from] GeographyError),
}

fn check_range(r: u32, d: u64) -> Result<()> {
    if r < 2 {
        return Err(GeographyError::B2TooSmall(r));
    }
    if d < 4 {
        return Err(GeographyError::LevelTooSmall(d));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub k: u64,
    pub entries: Vec<GeographyEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBounds {
    pub n_bound: u64,
    pub refined: Option<u64>,
}

/// `Q(r, d) <= N(d)`, and `Q(r, d) <= N'(d)` when `d` is even and
/// `r` is not `2 mod 4` (no spin symplectic 4-manifold has such `b2`).
pub fn q_upper_bound(r: u32, d: u64) -> Result<UpperBounds> {
    check_range(r, d)?;
    let refined = if d % 2 == 0 && r % 4 != 2 {
        Some(count_n_prime(d)?)
    } else {
        None
    };
    Ok(UpperBounds {
        n_bound: count_n(d)?,
        refined,
    })
}

/// Lower and upper bounds on the number of inequivalent contact structures on
/// level `d` of the 5-manifold with `b2 = r - 1` and the matching spin type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub manifold_name: String,
    pub b2_x: u32,
    pub spin: bool,
    pub level: u64,
    pub lower_bound: u64,
    pub upper_bound_n: u64,
    pub upper_bound_refined: Option<u64>,
    /// Lower bound meets the best upper bound, so `Q(r, d)` is known exactly.
    pub exact: bool,
    pub realizations: Vec<Realization>,
}

/// A symplectic class realizing level `m * dK` on the same base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizedLevel {
    /// Adapted basis in which `K = dK * (1, 0, ..., 0)`.
    pub basis: lattice::AdaptedBasis,
    pub omega_adapted: Covector,
    pub omega: Covector,
    pub level: u64,
    pub hypothesis: String,
}

/// New integral indivisible symplectic class `(1, m, 0, ..., 0)` in a basis
/// adapted to the canonical class. The resulting level `m * dK` is checked
/// against an independent quotient-divisibility computation.
///
/// Minimality and `b2+ > 1` (or the Dolgachev exception) are assumed, not
/// checked; the assumption is recorded in the result.
pub fn realize_level(desc: &ValidatedDescriptor, m: u64) -> Result<RealizedLevel> {
    if m == 0 {
        return Err(GeographyError::ZeroMultiple);
    }
    let c1 = desc.c1();
    let k = lattice::divisibility(c1);
    if k == 0 {
        return Err(GeographyError::ZeroCanonicalClass);
    }
    if c1.rank() < 2 {
        return Err(GeographyError::B2TooSmall(c1.rank() as u32));
    }
    let k_signed = i64::try_from(k).map_err(|_| LatticeError::Overflow("divisibility"))?;
    let m_signed = i64::try_from(m).map_err(|_| LatticeError::Overflow("multiple"))?;
    let canonical = c1.scaled(-1)?;
    let primitive = canonical
        .divided_by(k_signed)
        .expect("divisibility divides every entry");
    let basis = lattice::complete_to_basis(&primitive)?;

    let mut coords = vec![0; c1.rank()];
    coords[0] = 1;
    coords[1] = m_signed;
    let omega_adapted = Covector::new(coords)?;
    let omega = basis.covector_from_adapted(&omega_adapted)?;
    let expected = m
        .checked_mul(k)
        .ok_or(LatticeError::Overflow("level"))?;

    let c1_adapted = basis.covector_to_adapted(c1)?;
    for computed in [
        lattice::quotient_divisibility(&c1_adapted, &omega_adapted)?,
        lattice::quotient_divisibility(c1, &omega)?,
    ] {
        if computed != expected {
            return Err(GeographyError::RealizationMismatch { expected, computed });
        }
    }
    let hypothesis = if desc.b2_plus() > 1 {
        "minimal base with b2+ > 1 assumed"
    } else {
        "b2+ = 1: canonical class assumed represented by disjoint square-zero tori (Dolgachev-type base)"
    };
    Ok(RealizedLevel {
        basis,
        omega_adapted,
        omega,
        level: expected,
        hypothesis: hypothesis.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::SymplecticFourManifoldDescriptor;

    fn brute_divisors(d: u64) -> Vec<u64> {
        (1..=d).filter(|k| d % k == 0).collect()
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_n(12).unwrap(), 3);
        assert_eq!(count_n(5).unwrap(), 1);
        assert_eq!(count_n(4).unwrap(), 1);
        assert_eq!(count_n_prime(20).unwrap(), 1);
        assert_eq!(count_n_prime(12).unwrap(), 0);
        assert_eq!(count_n_prime(60).unwrap(), 2);
        assert_eq!(count_n(3), Err(GeographyError::LevelTooSmall(3)));
        assert_eq!(count_n_prime(15), Err(GeographyError::OddLevel(15)));
    }

    #[test]
    fn counts_match_enumeration() {
        for d in 4..=2000u64 {
            let divs = brute_divisors(d);
            assert_eq!(count_n(d).unwrap(), divs.iter().filter(|&&k| k >= 4).count() as u64);
            if d % 2 == 0 {
                assert_eq!(
                    count_n_prime(d).unwrap(),
                    divs.iter().filter(|&&k| k >= 4 && k % 2 == 1).count() as u64
                );
            }
        }
    }

    #[test]
    fn realizable_examples() {
        let cat = Catalog::builtin();
        let e = cat.realizable(10, 5);
        assert_eq!(e.len(), 2);
        assert!(e.contains(&GeographyEntry::dolgachev()));
        assert!(e.contains(&GeographyEntry::homotopy_elliptic(1)));
        assert_eq!(cat.realizable(22, 4), vec![GeographyEntry::homotopy_elliptic(2)]);
        assert!(cat.realizable(11, 3).is_empty());
        assert!(cat.realizable(10, 4).is_empty());
    }

    #[test]
    fn q_bounds_examples() {
        let cat = Catalog::builtin();
        assert_eq!(cat.q_lower_bound(10, 15).unwrap().0, 2);
        assert_eq!(cat.q_lower_bound(22, 12).unwrap().0, 3);
        assert_eq!(cat.q_lower_bound(10, 12).unwrap().0, 0);
        assert_eq!(q_upper_bound(21, 12).unwrap(), UpperBounds { n_bound: 3, refined: Some(0) });
        assert_eq!(q_upper_bound(22, 12).unwrap(), UpperBounds { n_bound: 3, refined: None });
        assert_eq!(q_upper_bound(9, 7).unwrap(), UpperBounds { n_bound: 1, refined: None });
        assert_eq!(q_upper_bound(1, 7), Err(GeographyError::B2TooSmall(1)));
    }

    #[test]
    fn count_report_examples() {
        let cat = Catalog::builtin();
        let r = cat.contact_count_report(10, 5).unwrap();
        assert_eq!(r.manifold_name, "#8 S²×S³ # S²×̃S³");
        assert_eq!(r.lower_bound, 1);
        assert!(r.exact);
        let r = cat.contact_count_report(22, 4).unwrap();
        assert_eq!(r.manifold_name, "#21 S²×S³");
        assert_eq!(r.lower_bound, 1);
        let r = cat.contact_count_report(10, 4).unwrap();
        assert_eq!(r.lower_bound, 0);
        assert!(!r.exact);
    }

    #[test]
    fn catalog_validation() {
        let mut bad = GeographyEntry::homotopy_elliptic(3);
        bad.dk_constraint = DivisibilityConstraint::Any;
        assert!(matches!(
            Catalog::new(vec![bad]),
            Err(GeographyError::InvalidEntry { index: 0, .. })
        ));
        let mut bad = GeographyEntry::homotopy_elliptic(2);
        bad.b2 = 23;
        assert!(Catalog::new(vec![bad]).is_err());
        assert!(Catalog::new(Catalog::builtin().entries().to_vec()).is_ok());
    }

    #[test]
    fn catalog_json_round_trip() {
        let text = r#"[
            {"family": "Dolgachev", "b2": 10, "b2_plus": 1, "dK_constraint": "odd"},
            {"family": "HomotopyElliptic", "params": {"m": 2}, "b2": 22, "b2_plus": 3, "dK_constraint": "any"},
            {"family": "Knot surgery", "b2": 22, "b2_plus": 3, "dK_constraint": "odd"}
        ]"#;
        let cat = Catalog::from_json(text).unwrap();
        assert_eq!(cat.entries()[2].family, Family::Other("Knot surgery".into()));
        let again = Catalog::from_json(&serde_json::to_string(&cat).unwrap()).unwrap();
        assert_eq!(again, cat);
        assert!(Catalog::from_json("{").is_err());
    }

    fn descriptor(c1: &[i64], omega: &[i64], b2_plus: u32) -> ValidatedDescriptor {
        SymplecticFourManifoldDescriptor {
            name: "t".into(),
            b2: c1.len() as u32,
            b2_plus,
            c1: Covector::new(c1.to_vec()).unwrap(),
            omega: Covector::new(omega.to_vec()).unwrap(),
            spin: c1.iter().all(|x| x % 2 == 0),
        }
        .validate()
        .unwrap()
    }

    #[test]
    fn realize_level_examples() {
        let d = descriptor(&[2, 0, 0], &[1, 1, 0], 1);
        assert_eq!(realize_level(&d, 3).unwrap().level, 6);
        assert_eq!(realize_level(&d, 1).unwrap().level, 2);

        // a base where c1 is not already adapted
        let d = descriptor(&[6, -9, 15, 0], &[1, 0, 0, 0], 3);
        for m in 1..=10 {
            let r = realize_level(&d, m).unwrap();
            assert_eq!(r.level, 3 * m);
            assert_eq!(lattice::divisibility(&r.omega), 1);
        }
    }

    #[test]
    fn realize_level_errors() {
        let d = descriptor(&[0, 0], &[1, 0], 1);
        assert_eq!(realize_level(&d, 2), Err(GeographyError::ZeroCanonicalClass));
        let d = descriptor(&[2, 0], &[1, 0], 1);
        assert_eq!(realize_level(&d, 0), Err(GeographyError::ZeroMultiple));
        let d = descriptor(&[3], &[1], 1);
        assert_eq!(realize_level(&d, 2), Err(GeographyError::B2TooSmall(1)));
    }
}
