//! Generator degrees of the contact-homology algebra of a Boothby-Wang
//! fibration, and the residue classes of those degrees modulo `2d`.
//!
//! The algebra is polynomial in generators `q_{k,i}` (`k >= 1`,
//! `0 <= i <= a`, `a = b2(M) + 1`) over Laurent polynomials in `z_1..z_N`.
//! Only the degrees are modelled; the isomorphism criteria work entirely on
//! this data.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::gcd;
use crate::manifolds::FiveManifoldContact;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator index i = {i} out of range 0..={max}")]
    IndexOutOfRange { i: u32, max: u32 },
    #[error("generator index k must be positive")]
    ZeroK,
    #[error("level must be positive for residue classes")]
    ZeroLevel,
    #[error("residue class b = {b} out of range 0..{d}")]
    ResidueOutOfRange { b: u64, d: u64 },
    #[error("canonical divisibility {dk} does not divide level {d}")]
    DivisibilityMismatch { d: u64, dk: u64 },
    #[error("truncation bound k_max must be positive")]
    ZeroTruncation,
    #[error("integer overflow in degree computation")]
    Overflow,
}

type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorIndex {
    pub k: u64,
    pub i: u32,
}

impl GeneratorIndex {
    pub fn new(k: u64, i: u32) -> Self {
        GeneratorIndex { k, i }
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q[{},{}]", self.k, self.i)
    }
}

pub fn deg_delta_i(i: u32, b2m: u32) -> Result<i64> {
    match i {
        0 => Ok(0),
        i if i <= b2m => Ok(2),
        i if i == b2m + 1 => Ok(4),
        i => Err(AlgebraError::IndexOutOfRange { i, max: b2m + 1 }),
    }
}

/// `deg(q_{k,i}) = deg(Delta_i) - 2 + 2 delta k`.
pub fn deg_q(index: GeneratorIndex, delta: i64, b2m: u32) -> Result<i64> {
    if index.k == 0 {
        return Err(AlgebraError::ZeroK);
    }
    let base = deg_delta_i(index.i, b2m)?;
    let k = i64::try_from(index.k).map_err(|_| AlgebraError::Overflow)?;
    delta
        .checked_mul(k)
        .and_then(|x| x.checked_mul(2))
        .and_then(|x| x.checked_add(base - 2))
        .ok_or(AlgebraError::Overflow)
}

/// Whether the set of generators with degree `2b mod 2d` is empty or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QbStatus {
    Empty,
    Infinite,
}

impl fmt::Display for QbStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QbStatus::Empty => "empty",
            QbStatus::Infinite => "infinite",
        })
    }
}

fn check_level(d: u64, dk: u64) -> Result<()> {
    if d == 0 {
        return Err(AlgebraError::ZeroLevel);
    }
    if dk == 0 || d % dk != 0 {
        return Err(AlgebraError::DivisibilityMismatch { d, dk });
    }
    Ok(())
}

/// Closed form: infinite iff `dk` divides one of `b - 1`, `b`, `b + 1`.
pub fn qb_status(b: u64, d: u64, dk: u64) -> Result<QbStatus> {
    check_level(d, dk)?;
    if b >= d {
        return Err(AlgebraError::ResidueOutOfRange { b, d });
    }
    let b = b as i128;
    let dk = dk as i128;
    let hit = (-1..=1).any(|eps| (b + eps).rem_euclid(dk) == 0);
    Ok(if hit { QbStatus::Infinite } else { QbStatus::Empty })
}

/// `b` with `deg = 2b mod 2d`, for even `deg`.
pub fn residue_class(degree: i64, d: u64) -> u64 {
    ((degree / 2) as i128).rem_euclid(d as i128) as u64
}

/// Enumerates every `(k, i)` with `k <= k_max` whose degree is `2b mod 2d`,
/// in lexicographic order. Used as an oracle for [`qb_status`].
pub fn qb_members_bruteforce(
    b: u64,
    d: u64,
    delta: i64,
    b2m: u32,
    k_max: u64,
) -> Result<Vec<GeneratorIndex>> {
    if d == 0 {
        return Err(AlgebraError::ZeroLevel);
    }
    if b >= d {
        return Err(AlgebraError::ResidueOutOfRange { b, d });
    }
    if k_max == 0 {
        return Err(AlgebraError::ZeroTruncation);
    }
    let modulus = 2 * d as i128;
    let mut members = Vec::new();
    for k in 1..=k_max {
        for i in 0..=b2m + 1 {
            let index = GeneratorIndex::new(k, i);
            let deg = deg_q(index, delta, b2m)? as i128;
            if (deg - 2 * b as i128).rem_euclid(modulus) == 0 {
                members.push(index);
            }
        }
    }
    Ok(members)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClassTable {
    pub level: u64,
    pub dk: u64,
    pub status: Vec<QbStatus>,
}

impl ResidueClassTable {
    pub fn empty_classes(&self) -> Vec<u64> {
        self.status
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == QbStatus::Empty)
            .map(|(b, _)| b as u64)
            .collect()
    }
}

pub fn residue_table(d: u64, dk: u64) -> Result<ResidueClassTable> {
    check_level(d, dk)?;
    let status = (0..d)
        .map(|b| qb_status(b, d, dk))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidueClassTable { level: d, dk, status })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDegree {
    pub index: GeneratorIndex,
    pub degree: i64,
}

/// Generator degrees truncated at `k <= k_max`, in a basis of `H_2(X)` with
/// `c1(B_1) = level` and `c1(B_n) = 0` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSpectrum {
    pub level: u64,
    pub delta: u64,
    pub a: u32,
    pub k_max: u64,
    pub q_degrees: Vec<GeneratorDegree>,
    pub z_degrees: Vec<i64>,
}

impl DegreeSpectrum {
    pub fn new(level: u64, delta: u64, b2m: u32, k_max: u64) -> Result<Self> {
        if k_max == 0 {
            return Err(AlgebraError::ZeroTruncation);
        }
        let delta_signed = i64::try_from(delta).map_err(|_| AlgebraError::Overflow)?;
        let mut q_degrees = Vec::with_capacity(k_max as usize * (b2m as usize + 2));
        for k in 1..=k_max {
            for i in 0..=b2m + 1 {
                let index = GeneratorIndex::new(k, i);
                q_degrees.push(GeneratorDegree {
                    index,
                    degree: deg_q(index, delta_signed, b2m)?,
                });
            }
        }
        let z_count = b2m.saturating_sub(1) as usize;
        let mut z_degrees = vec![0; z_count];
        if let Some(first) = z_degrees.first_mut() {
            let level = i64::try_from(level).map_err(|_| AlgebraError::Overflow)?;
            *first = level.checked_mul(-2).ok_or(AlgebraError::Overflow)?;
        }
        Ok(DegreeSpectrum {
            level,
            delta,
            a: b2m + 1,
            k_max,
            q_degrees,
            z_degrees,
        })
    }

    pub fn b2_base(&self) -> u32 {
        self.a - 1
    }

    /// `gcd(delta, level)`, the divisibility of the canonical class.
    pub fn dk(&self) -> u64 {
        gcd(self.delta, self.level)
    }

    pub fn lowest_degree(&self) -> Option<i64> {
        self.q_degrees.iter().map(|g| g.degree).min()
    }

    pub fn residue_table(&self) -> Option<ResidueClassTable> {
        if self.level == 0 {
            return None;
        }
        residue_table(self.level, self.dk()).ok()
    }
}

pub fn spectrum(x: &FiveManifoldContact, k_max: u64) -> Result<DegreeSpectrum> {
    DegreeSpectrum::new(x.level, x.delta, x.b2_base(), k_max)
}
