//! Symplectic 4-manifold descriptors and the Boothby-Wang 5-manifolds over them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, Covector, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("b2 must be positive")]
    NonPositiveB2,
    #[error("{field} has length {found}, expected b2 = {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("omega divisible: divisibility {0}, expected 1")]
    OmegaDivisible(u64),
    #[error("spin/parity clash: spin = {spin} but c1 {parity}")]
    SpinParityClash { spin: bool, parity: &'static str },
    #[error("b2_plus = {b2_plus} out of range 1..={b2}")]
    B2PlusOutOfRange { b2_plus: u32, b2: u32 },
    #[error("b2_plus = {0} is even")]
    B2PlusEven(u32),
}

impl ValidationError {
    /// Stable identifier used in machine-readable error lines.
    pub fn code(&self) -> &'static str {
        match self {
            ValidationError::NonPositiveB2 => "b2_nonpositive",
            ValidationError::LengthMismatch { .. } => "length_mismatch",
            ValidationError::OmegaDivisible(_) => "omega_divisible",
            ValidationError::SpinParityClash { .. } => "spin_parity_clash",
            ValidationError::B2PlusOutOfRange { .. } => "b2_plus_out_of_range",
            ValidationError::B2PlusEven(_) => "b2_plus_even",
        }
    }
}

/// Second-cohomology data of a closed simply-connected symplectic 4-manifold
/// `M` with integral symplectic class, in a fixed basis of `H_2(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticFourManifoldDescriptor {
    pub name: String,
    pub b2: u32,
    pub b2_plus: u32,
    /// Values of the first Chern class on the basis.
    pub c1: Covector,
    /// Integral lift of the symplectic class.
    pub omega: Covector,
    pub spin: bool,
}

impl SymplecticFourManifoldDescriptor {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn validate(self) -> Result<ValidatedDescriptor, ValidationError> {
        if self.b2 == 0 {
            return Err(ValidationError::NonPositiveB2);
        }
        let expected = self.b2 as usize;
        for (field, len) in [("c1", self.c1.rank()), ("omega", self.omega.rank())] {
            if len != expected {
                return Err(ValidationError::LengthMismatch {
                    field,
                    expected,
                    found: len,
                });
            }
        }
        let g = lattice::divisibility(&self.omega);
        if g != 1 {
            return Err(ValidationError::OmegaDivisible(g));
        }
        if self.b2_plus == 0 || self.b2_plus > self.b2 {
            return Err(ValidationError::B2PlusOutOfRange {
                b2_plus: self.b2_plus,
                b2: self.b2,
            });
        }
        if self.b2_plus % 2 == 0 {
            return Err(ValidationError::B2PlusEven(self.b2_plus));
        }
        // c1 reduces to w2 mod 2, so spin holds exactly when c1 is even
        let c1_even = self.c1.as_slice().iter().all(|x| x % 2 == 0);
        if self.spin != c1_even {
            let parity = if c1_even { "is even" } else { "has an odd entry" };
            return Err(ValidationError::SpinParityClash {
                spin: self.spin,
                parity,
            });
        }
        Ok(ValidatedDescriptor(self))
    }
}

/// A descriptor that passed [`SymplecticFourManifoldDescriptor::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ValidatedDescriptor(SymplecticFourManifoldDescriptor);

impl ValidatedDescriptor {
    pub fn descriptor(&self) -> &SymplecticFourManifoldDescriptor {
        &self.0
    }

    pub fn into_inner(self) -> SymplecticFourManifoldDescriptor {
        self.0
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn b2(&self) -> u32 {
        self.0.b2
    }

    pub fn b2_plus(&self) -> u32 {
        self.0.b2_plus
    }

    pub fn c1(&self) -> &Covector {
        &self.0.c1
    }

    pub fn omega(&self) -> &Covector {
        &self.0.omega
    }

    pub fn spin(&self) -> bool {
        self.0.spin
    }

    /// Divisibility of the canonical class `K = -c1`.
    pub fn canonical_divisibility(&self) -> u64 {
        lattice::divisibility(&self.0.c1)
    }
}

/// The Boothby-Wang total space `X` over `M` together with its contact structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiveManifoldContact {
    pub b2_x: u32,
    pub spin_x: bool,
    /// Divisibility of `c1(xi)` in `H^2(X)`.
    pub level: u64,
    /// Canonical representative of `c1(A_0)` for a class with `omega(A_0) = 1`.
    pub delta: u64,
    /// Divisibility of the canonical class of the base.
    pub dk: u64,
    pub barden_name: String,
}

impl FiveManifoldContact {
    pub fn b2_base(&self) -> u32 {
        self.b2_x + 1
    }
}

/// Connected-sum name of the simply-connected 5-manifold with torsion-free
/// homology, `b2(X) = b2_x`, spin or not.
pub fn barden_name(b2_x: u32, spin: bool) -> String {
    match (spin, b2_x) {
        (true, 0) => "S⁵".to_string(),
        (true, n) => format!("#{n} S²×S³"),
        (false, 0 | 1) => "S²×̃S³".to_string(),
        (false, n) => format!("#{} S²×S³ # S²×̃S³", n - 1),
    }
}

/// Reduce `c1(A_0)` to the representative stored in [`FiveManifoldContact::delta`]:
/// `raw mod level` in `[0, level)` for positive level, `|raw|` at level zero.
pub fn canonical_delta(raw: i64, level: u64) -> u64 {
    if level == 0 {
        raw.unsigned_abs()
    } else {
        (raw as i128).rem_euclid(level as i128) as u64
    }
}

pub fn boothby_wang(m: &ValidatedDescriptor) -> Result<FiveManifoldContact, LatticeError> {
    let c1 = m.c1();
    let omega = m.omega();
    let level = lattice::quotient_divisibility(c1, omega)?;
    let a0 = lattice::solve_unit(omega)?;
    let delta = canonical_delta(c1.eval(&a0)?, level);
    let zero = Covector::new(vec![0; c1.rank()])?;
    // w2(X) is the pullback of w2(M) = c1 mod 2, whose kernel mod 2 is spanned by omega
    let spin_x = c1.congruent_mod2(&zero) || c1.congruent_mod2(omega);
    let b2_x = m.b2() - 1;
    Ok(FiveManifoldContact {
        b2_x,
        spin_x,
        level,
        delta,
        dk: m.canonical_divisibility(),
        barden_name: barden_name(b2_x, spin_x),
    })
}

pub fn diffeomorphic(x: &FiveManifoldContact, y: &FiveManifoldContact) -> bool {
    x.b2_x == y.b2_x && x.level % 2 == y.level % 2
}

pub fn almost_contact_equivalent(x: &FiveManifoldContact, y: &FiveManifoldContact) -> bool {
    diffeomorphic(x, y) && x.level == y.level
}
