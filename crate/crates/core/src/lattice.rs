//! Exact linear algebra on finitely generated free abelian groups.
//!
//! Vectors are elements of `Z^n` written in a fixed basis, covectors are
//! integer functionals on the same group. All arithmetic is checked: an
//! intermediate value that does not fit is reported as
//! [`LatticeError::Overflow`] and never wraps.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector must have rank at least 1")]
    Empty,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("functional not indivisible (divisibility {0})")]
    NotIndivisible(u64),
    #[error("functional is zero")]
    ZeroFunctional,
    #[error("no class evaluates to 1 (divisibility {0})")]
    NoUnitSolution(u64),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("quotient divisibility routes disagree: kernel gcd {kernel}, minor gcd {minors}")]
    RouteMismatch { kernel: u64, minors: u64 },
}

pub type Result<T> = std::result::Result<T, LatticeError>;

macro_rules! int_coords {
    ($name:ident) => {
        impl $name {
            pub fn new(coords: Vec<i64>) -> Result<Self> {
                if coords.is_empty() {
                    return Err(LatticeError::Empty);
                }
                Ok(Self(coords))
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn as_slice(&self) -> &[i64] {
                &self.0
            }

            pub fn into_inner(self) -> Vec<i64> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }

            /// `e_index` scaled by `scale`, in rank `rank`.
            pub fn basis(rank: usize, index: usize, scale: i64) -> Result<Self> {
                let mut coords = vec![0; rank];
                *coords.get_mut(index).ok_or(LatticeError::Empty)? = scale;
                Self::new(coords)
            }

            pub fn scaled(&self, factor: i64) -> Result<Self> {
                self.0
                    .iter()
                    .map(|&x| x.checked_mul(factor).ok_or(LatticeError::Overflow("scale")))
                    .collect::<Result<Vec<_>>>()
                    .map(Self)
            }

            /// Exact division of every entry; `None` if some entry is not a multiple.
            pub fn divided_by(&self, divisor: i64) -> Option<Self> {
                if divisor == 0 || self.0.iter().any(|&x| x % divisor != 0) {
                    return None;
                }
                Some(Self(self.0.iter().map(|&x| x / divisor).collect()))
            }

            pub fn checked_sub_scaled(&self, other: &Self, factor: i64) -> Result<Self> {
                check_rank(self.rank(), other.rank())?;
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(&a, &b)| {
                        b.checked_mul(factor)
                            .and_then(|p| a.checked_sub(p))
                            .ok_or(LatticeError::Overflow("sub_scaled"))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Self)
            }
        }

        impl Index<usize> for $name {
            type Output = i64;

            fn index(&self, index: usize) -> &i64 {
                &self.0[index]
            }
        }

        impl TryFrom<Vec<i64>> for $name {
            type Error = LatticeError;

            fn try_from(coords: Vec<i64>) -> Result<Self> {
                Self::new(coords)
            }
        }

        impl From<$name> for Vec<i64> {
            fn from(v: $name) -> Vec<i64> {
                v.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (n, x) in self.0.iter().enumerate() {
                    if n > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    };
}

/// An element of `Z^n` in the chosen basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntVector(Vec<i64>);

/// An integer functional on `Z^n`, given by its values on the basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Covector(Vec<i64>);

int_coords!(IntVector);
int_coords!(Covector);

impl Covector {
    pub fn eval(&self, v: &IntVector) -> Result<i64> {
        check_rank(self.rank(), v.rank())?;
        let mut acc: i64 = 0;
        for (&a, &x) in self.0.iter().zip(&v.0) {
            acc = a
                .checked_mul(x)
                .and_then(|p| acc.checked_add(p))
                .ok_or(LatticeError::Overflow("eval"))?;
        }
        Ok(acc)
    }

    /// True if `self - other` has only even entries.
    pub fn congruent_mod2(&self, other: &Covector) -> bool {
        self.rank() == other.rank()
            && self.0.iter().zip(&other.0).all(|(a, b)| (a - b) % 2 == 0)
    }
}

fn check_rank(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(LatticeError::RankMismatch { left, right });
    }
    Ok(())
}

/// Nonnegative gcd with `gcd(0, 0) = 0`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest `d` with `c = d * c'` for an integer covector `c'`; zero iff `c = 0`.
pub fn divisibility(c: &Covector) -> u64 {
    c.0.iter().fold(0, |g, &x| gcd(g, x.unsigned_abs()))
}

/// A unimodular change of basis. Row `i` of `matrix` is the new basis vector
/// `e_i` written in the old basis; `matrix * inverse` is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptedBasis {
    pub matrix: Vec<Vec<i64>>,
    pub inverse: Vec<Vec<i64>>,
}

impl AdaptedBasis {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn vector(&self, i: usize) -> IntVector {
        IntVector(self.matrix[i].clone())
    }

    /// Values of `c` on the new basis vectors.
    pub fn covector_to_adapted(&self, c: &Covector) -> Result<Covector> {
        check_rank(self.rank(), c.rank())?;
        mat_vec(&self.matrix, &c.0, false).map(Covector)
    }

    /// Inverse of [`Self::covector_to_adapted`].
    pub fn covector_from_adapted(&self, c: &Covector) -> Result<Covector> {
        check_rank(self.rank(), c.rank())?;
        mat_vec(&self.inverse, &c.0, false).map(Covector)
    }

    /// Old coordinates of the vector whose new coordinates are `x`.
    pub fn vector_from_adapted(&self, x: &IntVector) -> Result<IntVector> {
        check_rank(self.rank(), x.rank())?;
        mat_vec(&self.matrix, &x.0, true).map(IntVector)
    }
}

fn mat_vec(m: &[Vec<i64>], v: &[i64], transposed: bool) -> Result<Vec<i64>> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let mut acc: i64 = 0;
            for (j, &x) in v.iter().enumerate() {
                let entry = if transposed { m[j][i] } else { m[i][j] };
                acc = entry
                    .checked_mul(x)
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(LatticeError::Overflow("change of basis"))?;
            }
            Ok(acc)
        })
        .collect()
}

/// Column reduction of a single row vector `alpha` by unimodular column
/// operations, tracking the transform `U` and its inverse, until
/// `alpha * U = (g, 0, ..., 0)` with `g = divisibility(alpha)`.
struct ColumnReduction {
    values: Vec<i128>,
    // columns of U
    columns: Vec<Vec<i128>>,
    // rows of U^{-1}
    inverse_rows: Vec<Vec<i128>>,
}

impl ColumnReduction {
    fn run(alpha: &Covector) -> Result<Self> {
        let n = alpha.rank();
        let identity = |i: usize| {
            let mut row = vec![0i128; n];
            row[i] = 1;
            row
        };
        let mut r = ColumnReduction {
            values: alpha.0.iter().map(|&x| x as i128).collect(),
            columns: (0..n).map(identity).collect(),
            inverse_rows: (0..n).map(identity).collect(),
        };
        loop {
            let pivot = (0..n)
                .filter(|&j| r.values[j] != 0)
                .min_by_key(|&j| r.values[j].unsigned_abs());
            let Some(p) = pivot else { break };
            let mut changed = false;
            for j in 0..n {
                if j == p || r.values[j] == 0 {
                    continue;
                }
                let q = r.values[j] / r.values[p];
                if q != 0 {
                    r.subtract_column(j, p, q)?;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(p) = (0..n).find(|&j| r.values[j] != 0) {
            r.swap(0, p);
            if r.values[0] < 0 {
                r.negate(0);
            }
        }
        Ok(r)
    }

    // column j -= q * column p; U^{-1} row p += q * row j
    fn subtract_column(&mut self, j: usize, p: usize, q: i128) -> Result<()> {
        let ovf = || LatticeError::Overflow("column reduction");
        self.values[j] = q
            .checked_mul(self.values[p])
            .and_then(|t| self.values[j].checked_sub(t))
            .ok_or_else(ovf)?;
        for k in 0..self.columns.len() {
            let t = q.checked_mul(self.columns[p][k]).ok_or_else(ovf)?;
            self.columns[j][k] = self.columns[j][k].checked_sub(t).ok_or_else(ovf)?;
            let s = q.checked_mul(self.inverse_rows[j][k]).ok_or_else(ovf)?;
            self.inverse_rows[p][k] = self.inverse_rows[p][k].checked_add(s).ok_or_else(ovf)?;
        }
        Ok(())
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.values.swap(a, b);
        self.columns.swap(a, b);
        self.inverse_rows.swap(a, b);
    }

    fn negate(&mut self, a: usize) {
        self.values[a] = -self.values[a];
        for x in self.columns[a].iter_mut() {
            *x = -*x;
        }
        for x in self.inverse_rows[a].iter_mut() {
            *x = -*x;
        }
    }

    fn column(&self, j: usize) -> Result<Vec<i64>> {
        narrow(&self.columns[j])
    }
}

fn narrow(v: &[i128]) -> Result<Vec<i64>> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| LatticeError::Overflow("narrowing to i64")))
        .collect()
}

/// Basis `e_1, ..., e_n` with `alpha(e_1) = 1` and `alpha(e_i) = 0` for `i > 1`.
pub fn complete_to_basis(alpha: &Covector) -> Result<AdaptedBasis> {
    let g = divisibility(alpha);
    if g != 1 {
        return Err(LatticeError::NotIndivisible(g));
    }
    let r = ColumnReduction::run(alpha)?;
    let n = alpha.rank();
    let matrix = (0..n).map(|j| r.column(j)).collect::<Result<Vec<_>>>()?;
    let rows = r
        .inverse_rows
        .iter()
        .map(|row| narrow(row))
        .collect::<Result<Vec<_>>>()?;
    // inverse of U^T is (U^{-1})^T
    let inverse = (0..n).map(|i| (0..n).map(|j| rows[j][i]).collect()).collect();
    Ok(AdaptedBasis { matrix, inverse })
}

/// A basis of the sublattice `{x : alpha(x) = 0}`.
pub fn kernel_basis(alpha: &Covector) -> Result<Vec<IntVector>> {
    if alpha.is_zero() {
        return Err(LatticeError::ZeroFunctional);
    }
    let r = ColumnReduction::run(alpha)?;
    (1..alpha.rank())
        .map(|j| r.column(j).map(IntVector))
        .collect()
}

/// Some `x` with `w(x) = 1`.
pub fn solve_unit(w: &Covector) -> Result<IntVector> {
    let g = divisibility(w);
    if g != 1 {
        return Err(LatticeError::NoUnitSolution(g));
    }
    let r = ColumnReduction::run(w)?;
    r.column(0).map(IntVector)
}

fn require_indivisible(w: &Covector) -> Result<()> {
    match divisibility(w) {
        1 => Ok(()),
        g => Err(LatticeError::NotIndivisible(g)),
    }
}

/// Divisibility of the image of `c` in `Z^n / Z w`, as the gcd of the values
/// of `c` on a basis of `ker w`.
pub fn quotient_divisibility_by_kernel(c: &Covector, w: &Covector) -> Result<u64> {
    check_rank(c.rank(), w.rank())?;
    require_indivisible(w)?;
    let mut g = 0;
    for v in kernel_basis(w)? {
        g = gcd(g, c.eval(&v)?.unsigned_abs());
    }
    Ok(g)
}

/// Same quantity as the gcd of the 2x2 minors `c_i w_j - c_j w_i`, i.e. the
/// content of `c ^ w`, which is invariant under unimodular changes of basis.
pub fn quotient_divisibility_by_minors(c: &Covector, w: &Covector) -> Result<u64> {
    check_rank(c.rank(), w.rank())?;
    require_indivisible(w)?;
    let n = c.rank();
    let mut g: u128 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let minor = c[i] as i128 * w[j] as i128 - c[j] as i128 * w[i] as i128;
            g = gcd_u128(g, minor.unsigned_abs());
        }
    }
    u64::try_from(g).map_err(|_| LatticeError::Overflow("minor gcd"))
}

/// Maximal `d` with `c = d R + gamma w`; zero when `c` is a multiple of `w`
/// or the rank is 1. Both routes are computed and must agree.
pub fn quotient_divisibility(c: &Covector, w: &Covector) -> Result<u64> {
    let kernel = quotient_divisibility_by_kernel(c, w)?;
    let minors = quotient_divisibility_by_minors(c, w)?;
    if kernel != minors {
        return Err(LatticeError::RouteMismatch { kernel, minors });
    }
    Ok(kernel)
}
