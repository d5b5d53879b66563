//! C ABI for `numsemi`.
//!
//! Generator sets and invariant bundles cross the boundary as opaque handles
//! that the caller frees with the matching `*_free` function. Every fallible
//! call returns a [`NumsemiStatus`]; outputs are written through pointers
//! only on success. Variable-length results are copied into caller buffers:
//! when the buffer is too small the call returns
//! `NUMSEMI_STATUS_BUFFER_TOO_SMALL` and stores the required length in
//! `*written`.
//!
//! The header `include/numsemi.h` is regenerated by the build script.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use numsemi::harness::theoretical_bounds;
use numsemi::sumset::run_coverage_experiment;
use numsemi::{
    apery_set, frobenius, invariants, is_prime, sample_bounded, sample_unconstrained, wilf_check, ErConfig, Error,
    GeneratorSet, SemigroupInvariants,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumsemiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidGenerator = 2,
    NotCofinite = 3,
    NotAMember = 4,
    InvalidArgument = 5,
    BufferTooSmall = 6,
    IterationCap = 7,
    InvariantViolation = 8,
    Panic = 9,
}

impl From<Error> for NumsemiStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGenerator => NumsemiStatus::InvalidGenerator,
            Error::NotCofinite { .. } => NumsemiStatus::NotCofinite,
            Error::NotAMember { .. } => NumsemiStatus::NotAMember,
            Error::IterationCap { .. } => NumsemiStatus::IterationCap,
            Error::InvariantViolation(_) => NumsemiStatus::InvariantViolation,
            _ => NumsemiStatus::InvalidArgument,
        }
    }
}

/// Opaque generator set.
pub struct NumsemiGenerators(GeneratorSet);

/// Opaque invariant bundle.
pub struct NumsemiInvariants(SemigroupInvariants);

/// Closed-form bounds at one probability.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NumsemiBounds {
    pub p: f64,
    pub e_lower: f64,
    pub e_upper: f64,
    pub g_lower: f64,
    pub g_upper: f64,
    pub frobenius_lower: f64,
    pub frobenius_upper: f64,
    pub f_of_p: f64,
    pub u_of_p: f64,
    pub frobenius_square_bound: f64,
}

fn guard(f: impl FnOnce() -> Result<(), NumsemiStatus>) -> NumsemiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NumsemiStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => NumsemiStatus::Panic,
    }
}

unsafe fn copy_out(src: &[u64], buf: *mut u64, cap: usize, written: *mut usize) -> Result<(), NumsemiStatus> {
    if written.is_null() {
        return Err(NumsemiStatus::NullPointer);
    }
    *written = src.len();
    if src.len() > cap {
        return Err(NumsemiStatus::BufferTooSmall);
    }
    if !src.is_empty() {
        if buf.is_null() {
            return Err(NumsemiStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, NumsemiStatus> {
    p.as_ref().ok_or(NumsemiStatus::NullPointer)
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn numsemi_status_message(status: NumsemiStatus) -> *const c_char {
    let s: &'static std::ffi::CStr = match status {
        NumsemiStatus::Ok => c"ok",
        NumsemiStatus::NullPointer => c"null pointer argument",
        NumsemiStatus::InvalidGenerator => c"generators must be positive",
        NumsemiStatus::NotCofinite => c"generator set is not cofinite (gcd != 1 or empty)",
        NumsemiStatus::NotAMember => c"modulus is not an element of the semigroup",
        NumsemiStatus::InvalidArgument => c"invalid argument",
        NumsemiStatus::BufferTooSmall => c"output buffer too small",
        NumsemiStatus::IterationCap => c"sampler iteration cap reached",
        NumsemiStatus::InvariantViolation => c"internal invariant violated",
        NumsemiStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Builds a canonical generator set from `len` values (sorted, deduplicated).
///
/// # Safety
/// `values` must point to `len` readable `uint64_t` (may be NULL when `len`
/// is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_generators_new(
    values: *const u64,
    len: usize,
    out: *mut *mut NumsemiGenerators,
) -> NumsemiStatus {
    guard(|| {
        if out.is_null() || (values.is_null() && len > 0) {
            return Err(NumsemiStatus::NullPointer);
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(values, len) };
        let gens = GeneratorSet::new(slice.iter().copied())?;
        *out = Box::into_raw(Box::new(NumsemiGenerators(gens)));
        Ok(())
    })
}

/// # Safety
/// `gens` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn numsemi_generators_free(gens: *mut NumsemiGenerators) {
    if !gens.is_null() {
        drop(Box::from_raw(gens));
    }
}

/// Number of generators; 0 for NULL.
///
/// # Safety
/// `gens` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn numsemi_generators_len(gens: *const NumsemiGenerators) -> usize {
    gens.as_ref().map_or(0, |g| g.0.len())
}

/// gcd of the generators (0 for the empty set or NULL).
///
/// # Safety
/// `gens` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn numsemi_generators_gcd(gens: *const NumsemiGenerators) -> u64 {
    gens.as_ref().map_or(0, |g| g.0.gcd())
}

/// Copies the sorted generators into `buf`.
///
/// # Safety
/// `gens` must be a live handle, `buf` writable for `cap` values, `written`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_generators_copy(
    gens: *const NumsemiGenerators,
    buf: *mut u64,
    cap: usize,
    written: *mut usize,
) -> NumsemiStatus {
    guard(|| copy_out(handle(gens)?.0.elements(), buf, cap, written))
}

/// Frobenius number; −1 when the semigroup is all of ℕ.
///
/// # Safety
/// `gens` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_frobenius(gens: *const NumsemiGenerators, out: *mut i64) -> NumsemiStatus {
    guard(|| {
        let g = handle(gens)?;
        if out.is_null() {
            return Err(NumsemiStatus::NullPointer);
        }
        *out = frobenius(&g.0)?;
        Ok(())
    })
}

/// Apéry table of `m`: entry `i` is the least element congruent to `i`
/// modulo `m`. Needs `m` entries of room.
///
/// # Safety
/// `gens` must be a live handle, `buf` writable for `cap` values, `written`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_apery_set(
    gens: *const NumsemiGenerators,
    m: u64,
    buf: *mut u64,
    cap: usize,
    written: *mut usize,
) -> NumsemiStatus {
    guard(|| {
        let table = apery_set(&handle(gens)?.0, m)?;
        copy_out(table.entries(), buf, cap, written)
    })
}

/// Computes Frobenius number, genus and minimal generators together.
///
/// # Safety
/// `gens` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_invariants_new(
    gens: *const NumsemiGenerators,
    out: *mut *mut NumsemiInvariants,
) -> NumsemiStatus {
    guard(|| {
        let g = handle(gens)?;
        if out.is_null() {
            return Err(NumsemiStatus::NullPointer);
        }
        *out = Box::into_raw(Box::new(NumsemiInvariants(invariants(&g.0)?)));
        Ok(())
    })
}

/// # Safety
/// `inv` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn numsemi_invariants_free(inv: *mut NumsemiInvariants) {
    if !inv.is_null() {
        drop(Box::from_raw(inv));
    }
}

/// # Safety
/// `inv` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn numsemi_invariants_frobenius(inv: *const NumsemiInvariants) -> i64 {
    (*inv).0.frobenius
}

/// # Safety
/// `inv` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn numsemi_invariants_genus(inv: *const NumsemiInvariants) -> u64 {
    (*inv).0.genus
}

/// # Safety
/// `inv` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn numsemi_invariants_embedding_dimension(inv: *const NumsemiInvariants) -> usize {
    (*inv).0.embedding_dimension
}

/// Whether Wilf's inequality holds (true for ℕ by convention).
///
/// # Safety
/// `inv` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn numsemi_invariants_wilf_holds(inv: *const NumsemiInvariants) -> bool {
    wilf_check(&(*inv).0).holds
}

/// # Safety
/// `inv` must be a live handle, `buf` writable for `cap` values, `written`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_invariants_minimal_generators(
    inv: *const NumsemiInvariants,
    buf: *mut u64,
    cap: usize,
    written: *mut usize,
) -> NumsemiStatus {
    guard(|| copy_out(handle(inv)?.0.minimal_generators.elements(), buf, cap, written))
}

/// One draw from the bounded model on `{1, …, bound}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_sample_bounded(
    p: f64,
    bound: u64,
    seed: u64,
    trial: u64,
    out: *mut *mut NumsemiGenerators,
) -> NumsemiStatus {
    guard(|| {
        if out.is_null() {
            return Err(NumsemiStatus::NullPointer);
        }
        let gens = sample_bounded(&ErConfig::new(p, bound, seed)?, trial);
        *out = Box::into_raw(Box::new(NumsemiGenerators(gens)));
        Ok(())
    })
}

/// One draw from the unconstrained model; `stop_index` may be NULL.
///
/// # Safety
/// `out` must be writable; `stop_index` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_sample_unconstrained(
    p: f64,
    seed: u64,
    trial: u64,
    out: *mut *mut NumsemiGenerators,
    stop_index: *mut u64,
) -> NumsemiStatus {
    guard(|| {
        if out.is_null() {
            return Err(NumsemiStatus::NullPointer);
        }
        let trace = sample_unconstrained(p, seed, trial)?;
        if !stop_index.is_null() {
            *stop_index = trace.stop_index;
        }
        *out = Box::into_raw(Box::new(NumsemiGenerators(trace.gens)));
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_theoretical_bounds(p: f64, out: *mut NumsemiBounds) -> NumsemiStatus {
    guard(|| {
        if out.is_null() {
            return Err(NumsemiStatus::NullPointer);
        }
        let b = theoretical_bounds(p)?;
        *out = NumsemiBounds {
            p: b.p,
            e_lower: b.e_lower,
            e_upper: b.e_upper,
            g_lower: b.g_lower,
            g_upper: b.g_upper,
            frobenius_lower: b.frobenius_lower,
            frobenius_upper: b.frobenius_upper,
            f_of_p: b.f_of_p,
            u_of_p: b.u_of_p,
            frobenius_square_bound: b.frobenius_square_bound,
        };
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn numsemi_is_prime(n: u64) -> bool {
    is_prime(n)
}

/// Runs `trials` coverage trials at `(q, b)`; writes the failure count and
/// the closed-form failure bound. `bound` may be NULL.
///
/// # Safety
/// `failures` must be writable; `bound` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn numsemi_coverage_experiment(
    q: u64,
    b: f64,
    trials: u64,
    seed: u64,
    failures: *mut u64,
    bound: *mut f64,
) -> NumsemiStatus {
    guard(|| {
        if failures.is_null() {
            return Err(NumsemiStatus::NullPointer);
        }
        let exp = run_coverage_experiment(q, b, trials, seed)?;
        *failures = exp.failures;
        if !bound.is_null() {
            *bound = exp.bound;
        }
        Ok(())
    })
}
