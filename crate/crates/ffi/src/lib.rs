//! C ABI over `bwcontact`.
//!
//! Conventions:
//! - every fallible function returns a [`BwStatus`] and writes its result
//!   through an out pointer, which is left untouched on failure;
//! - the message for the most recent failure on the calling thread is
//!   available from [`bw_last_error_message`];
//! - handles and strings returned here are owned by the caller and released
//!   with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};

use bwcontact::algebra::{self, AlgebraError};
use bwcontact::cli;
use bwcontact::geography::{self, Catalog};
use bwcontact::isomorphism::{self, Decision, Distinguisher};
use bwcontact::lattice::{self, Covector, LatticeError};
use bwcontact::manifolds::{self, FiveManifoldContact, SymplecticFourManifoldDescriptor, ValidatedDescriptor};
use bwcontact::report::{self, Document, FORMAT_VERSION};
use bwcontact::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    MalformedJson = 3,
    InvalidDescriptor = 4,
    InvalidArgument = 5,
    Overflow = 6,
    Internal = 7,
}

/// Opaque validated descriptor of a symplectic 4-manifold.
pub struct BwDescriptor(ValidatedDescriptor);

/// Opaque Boothby-Wang total space with its contact invariants.
pub struct BwContact(FiveManifoldContact);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BwContactInfo {
    pub b2_x: u32,
    pub spin: bool,
    pub level: u64,
    pub delta: u64,
    pub dk: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BwDecision {
    pub isomorphic: bool,
    /// Residue class with mismatched status, or -1.
    pub distinguisher_b: i64,
    /// Lowest generator degrees at level 0 when they differ; zero otherwise.
    pub lowest: i64,
    pub lowest_prime: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: BwStatus, msg: impl AsRef<str>) -> BwStatus {
    set_error(msg.as_ref());
    status
}

fn status_of(e: &Error) -> BwStatus {
    match e {
        Error::Validation(_) => BwStatus::InvalidDescriptor,
        Error::Descriptor { .. } => BwStatus::MalformedJson,
        Error::Lattice(LatticeError::Overflow(_)) | Error::Algebra(AlgebraError::Overflow) => {
            BwStatus::Overflow
        }
        Error::Lattice(_) | Error::Algebra(_) | Error::Isomorphism(_) | Error::Geography(_) | Error::Usage(_) => {
            BwStatus::InvalidArgument
        }
        _ => BwStatus::Internal,
    }
}

fn from_error(e: impl Into<Error>) -> BwStatus {
    let e = e.into();
    fail(status_of(&e), format!("{}: {e}", e.code()))
}

/// Runs `f`, turning panics into [`BwStatus::Internal`].
fn guard(f: impl FnOnce() -> BwStatus) -> BwStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == BwStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(BwStatus::Internal, "internal error"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, BwStatus> {
    if s.is_null() {
        return Err(fail(BwStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(BwStatus::InvalidUtf8, "string is not valid UTF-8"))
}

unsafe fn read_covector(data: *const i64, len: usize) -> Result<Covector, BwStatus> {
    if data.is_null() {
        return Err(fail(BwStatus::NullPointer, "null coefficient array"));
    }
    Covector::new(std::slice::from_raw_parts(data, len).to_vec()).map_err(from_error)
}

unsafe fn write<T>(out: *mut T, value: T) -> BwStatus {
    if out.is_null() {
        return fail(BwStatus::NullPointer, "null out pointer");
    }
    out.write(value);
    BwStatus::Ok
}

unsafe fn write_box<T>(out: *mut *mut T, value: T) -> BwStatus {
    if out.is_null() {
        return fail(BwStatus::NullPointer, "null out pointer");
    }
    write(out, Box::into_raw(Box::new(value)))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> BwStatus {
    match CString::new(s) {
        Ok(c) => write(out, c.into_raw()),
        Err(_) => fail(BwStatus::Internal, "string contains NUL"),
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse and validate a descriptor in the JSON interchange format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_descriptor_from_json(json: *const c_char, out: *mut *mut BwDescriptor) -> BwStatus {
    guard(|| {
        let text = tri!(read_str(json));
        let desc = tri!(SymplecticFourManifoldDescriptor::from_json(text)
            .map_err(|e| fail(BwStatus::MalformedJson, format!("malformed_descriptor: {e}"))));
        let validated = tri!(desc.validate().map_err(from_error));
        write_box(out, BwDescriptor(validated))
    })
}

/// Build and validate a descriptor from coefficient arrays of length `b2`.
///
/// # Safety
/// `name` must be NUL-terminated; `c1` and `omega` must point to `b2` values.
#[no_mangle]
pub unsafe extern "C" fn bw_descriptor_new(
    name: *const c_char,
    b2: u32,
    b2_plus: u32,
    c1: *const i64,
    omega: *const i64,
    spin: bool,
    out: *mut *mut BwDescriptor,
) -> BwStatus {
    guard(|| {
        let name = tri!(read_str(name)).to_string();
        let c1 = tri!(read_covector(c1, b2 as usize));
        let omega = tri!(read_covector(omega, b2 as usize));
        let desc = SymplecticFourManifoldDescriptor {
            name,
            b2,
            b2_plus,
            c1,
            omega,
            spin,
        };
        let validated = tri!(desc.validate().map_err(from_error));
        write_box(out, BwDescriptor(validated))
    })
}

/// # Safety
/// `desc` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bw_descriptor_free(desc: *mut BwDescriptor) {
    if !desc.is_null() {
        drop(Box::from_raw(desc));
    }
}

/// Compute the total space and contact invariants of a descriptor.
///
/// # Safety
/// `desc` must be a live descriptor handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_classify(desc: *const BwDescriptor, out: *mut *mut BwContact) -> BwStatus {
    guard(|| {
        let Some(desc) = desc.as_ref() else {
            return fail(BwStatus::NullPointer, "null descriptor");
        };
        let x = tri!(manifolds::boothby_wang(&desc.0).map_err(from_error));
        write_box(out, BwContact(x))
    })
}

/// # Safety
/// `contact` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bw_contact_free(contact: *mut BwContact) {
    if !contact.is_null() {
        drop(Box::from_raw(contact));
    }
}

/// # Safety
/// `contact` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_contact_info(contact: *const BwContact, out: *mut BwContactInfo) -> BwStatus {
    guard(|| {
        let Some(c) = contact.as_ref() else {
            return fail(BwStatus::NullPointer, "null contact handle");
        };
        let x = &c.0;
        write(
            out,
            BwContactInfo {
                b2_x: x.b2_x,
                spin: x.spin_x,
                level: x.level,
                delta: x.delta,
                dk: x.dk,
            },
        )
    })
}

/// Diffeomorphism type of the total space, e.g. `#21 S²×S³`. Free with
/// [`bw_string_free`].
///
/// # Safety
/// `contact` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_contact_manifold_name(contact: *const BwContact, out: *mut *mut c_char) -> BwStatus {
    guard(|| {
        let Some(c) = contact.as_ref() else {
            return fail(BwStatus::NullPointer, "null contact handle");
        };
        write_string(out, c.0.barden_name.clone())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Decide whether contact homology distinguishes two structures at level `d`
/// with canonical divisibilities `dk` and `dk_prime`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_decide(d: u64, dk: u64, dk_prime: u64, out: *mut BwDecision) -> BwStatus {
    guard(|| {
        let r = tri!(isomorphism::decide(d, dk, dk_prime).map_err(from_error));
        let mut decision = BwDecision {
            isomorphic: r.decision == Decision::Isomorphic,
            distinguisher_b: -1,
            lowest: 0,
            lowest_prime: 0,
        };
        match r.distinguisher {
            Some(Distinguisher::ResidueClass { b, .. }) => decision.distinguisher_b = b as i64,
            Some(Distinguisher::LowestDegrees { lowest, lowest_prime }) => {
                decision.lowest = lowest;
                decision.lowest_prime = lowest_prime;
            }
            None => {}
        }
        write(out, decision)
    })
}

/// Full comparison report as JSON, the same document `bwcontact compare
/// --format json` prints. Free with [`bw_string_free`].
///
/// # Safety
/// `first` and `second` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_compare_json(
    first: *const BwDescriptor,
    second: *const BwDescriptor,
    k_max: u64,
    out: *mut *mut c_char,
) -> BwStatus {
    guard(|| {
        let (Some(a), Some(b)) = (first.as_ref(), second.as_ref()) else {
            return fail(BwStatus::NullPointer, "null descriptor");
        };
        if k_max == 0 {
            return fail(BwStatus::InvalidArgument, "k_max must be positive");
        }
        let classify = |d: &BwDescriptor| bwcontact::classify(d.0.descriptor().clone());
        let a = tri!(classify(a).map_err(from_error));
        let b = tri!(classify(b).map_err(from_error));
        let report = tri!(cli::compare(a, b, k_max).map_err(from_error));
        write_string(out, Document::Compare(report).to_json())
    })
}

/// Degree spectrum and residue table as JSON. Free with [`bw_string_free`].
///
/// # Safety
/// `desc` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_spectrum_json(desc: *const BwDescriptor, k_max: u64, out: *mut *mut c_char) -> BwStatus {
    guard(|| {
        let Some(desc) = desc.as_ref() else {
            return fail(BwStatus::NullPointer, "null descriptor");
        };
        if k_max == 0 {
            return fail(BwStatus::InvalidArgument, "k_max must be positive");
        }
        let x = tri!(manifolds::boothby_wang(&desc.0).map_err(from_error));
        let spectrum = tri!(algebra::spectrum(&x, k_max).map_err(from_error));
        let residue_table = match x.level {
            0 => None,
            d => Some(tri!(algebra::residue_table(d, x.dk).map_err(from_error))),
        };
        let doc = Document::Spectrum(report::SpectrumOutput {
            format_version: FORMAT_VERSION,
            name: desc.0.name().to_string(),
            manifold: x,
            spectrum,
            residue_table,
        });
        write_string(out, doc.to_json())
    })
}

/// Counting report for base Betti number `b2` and level `level` against the
/// built-in catalog, as JSON. Free with [`bw_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_count_report_json(b2: u32, level: u64, out: *mut *mut c_char) -> BwStatus {
    guard(|| {
        let report = tri!(Catalog::builtin().contact_count_report(b2, level).map_err(from_error));
        let doc = Document::Counts(report::CountsOutput {
            format_version: FORMAT_VERSION,
            report,
        });
        write_string(out, doc.to_json())
    })
}

/// Number of divisors `k >= 4` of `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_count_n(d: u64, out: *mut u64) -> BwStatus {
    guard(|| write(out, tri!(geography::count_n(d).map_err(from_error))))
}

/// Number of odd divisors `k >= 4` of `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_count_n_prime(d: u64, out: *mut u64) -> BwStatus {
    guard(|| write(out, tri!(geography::count_n_prime(d).map_err(from_error))))
}

/// gcd of the entries of `c`.
///
/// # Safety
/// `c` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_divisibility(c: *const i64, len: usize, out: *mut u64) -> BwStatus {
    guard(|| {
        let c = tri!(read_covector(c, len));
        write(out, lattice::divisibility(&c))
    })
}

/// Divisibility of `c` in the quotient by the indivisible class `w`.
///
/// # Safety
/// `c` and `w` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bw_quotient_divisibility(
    c: *const i64,
    w: *const i64,
    len: usize,
    out: *mut u64,
) -> BwStatus {
    guard(|| {
        let c = tri!(read_covector(c, len));
        let w = tri!(read_covector(w, len));
        write(out, tri!(lattice::quotient_divisibility(&c, &w).map_err(from_error)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(
            status_of(&Error::Lattice(LatticeError::NotIndivisible(2))),
            BwStatus::InvalidArgument
        );
        assert_eq!(
            status_of(&Error::Validation(manifolds::ValidationError::NonPositiveB2)),
            BwStatus::InvalidDescriptor
        );
        assert_eq!(status_of(&Error::SelftestFailed(1)), BwStatus::Internal);
    }

    #[test]
    fn panics_become_internal_errors() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, BwStatus::Internal);
        let msg = unsafe { CStr::from_ptr(bw_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "internal error");
    }

}
