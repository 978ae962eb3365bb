//! C ABI over the `shannon` crate.
//!
//! Every fallible function returns a [`ShannonStatus`] and writes results
//! through out-pointers. On failure a description is available from
//! [`shannon_last_error_message`] on the same thread.
//!
//! Channels and codes are opaque handles created by the `*_new*` functions
//! and released with the matching `*_free`.
//!
//! Codewords cross the boundary as `uint64_t`: symbol `k` of the word is bit
//! `k` (least significant bit first), matching the textual form where the
//! first character is symbol 0.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shannon::capacity::{blahut_arimoto, bsc_capacity, SolverOptions};
use shannon::channel::Channel;
use shannon::coding::{
    exact_block_correct_probability, min_distance_decode, random_code, repetition_code, BlockCode,
    Codeword,
};
use shannon::experiment::estimate_correct_probability;
use shannon::prob::{binary_entropy, entropy, Distribution, LogBase};
use shannon::{Error, ErrorClass};

/// Result of every fallible call. Values 2–4 coincide with the exit codes of
/// the `shannon` command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShannonStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotConverged = 3,
    BudgetExceeded = 4,
    Panic = 5,
}

/// Opaque discrete memoryless channel.
pub struct ShannonChannel(Channel);

/// Opaque binary block code.
pub struct ShannonCode(BlockCode);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(ShannonStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.class() {
            ErrorClass::Validation => ShannonStatus::InvalidArgument,
            ErrorClass::Budget => ShannonStatus::BudgetExceeded,
        };
        Failure(status, format!("{}: {e}", e.kind()))
    }
}

fn null(what: &str) -> Failure {
    Failure(ShannonStatus::NullPointer, format!("{what} is NULL"))
}

fn guard<F>(f: F) -> ShannonStatus
where
    F: FnOnce() -> Result<ShannonStatus, Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            ShannonStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` must be NULL or point to `len` readable values.
unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

/// # Safety
/// `out` must be NULL or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Boxes `value` into a new handle, checking `out` first so nothing leaks.
///
/// # Safety
/// `out` must be NULL or valid for a write of a pointer.
unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

/// # Safety
/// `handle` must be NULL or a live handle from this library.
unsafe fn borrow<'a, T>(handle: *const T, what: &str) -> Result<&'a T, Failure> {
    handle.as_ref().ok_or_else(|| null(what))
}

/// Message describing the most recent failure on the calling thread, or NULL.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn shannon_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status value; `"unknown"` for values outside the enum.
#[no_mangle]
pub extern "C" fn shannon_status_name(status: c_int) -> *const c_char {
    let name: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null_pointer\0",
        2 => b"invalid_argument\0",
        3 => b"not_converged\0",
        4 => b"budget_exceeded\0",
        5 => b"panic\0",
        _ => b"unknown\0",
    };
    name.as_ptr().cast()
}

/// Entropy of the `len` probabilities at `probs` in logarithm base `base`.
///
/// # Safety
/// `probs` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_entropy(
    probs: *const f64,
    len: usize,
    base: f64,
    out: *mut f64,
) -> ShannonStatus {
    guard(|| {
        let probs = slice(probs, len, "probs")?;
        let d = Distribution::new(probs.to_vec())?;
        write(out, entropy(&d, LogBase::new(base)?), "out")?;
        Ok(ShannonStatus::Ok)
    })
}

/// The Shannon function `H2(p)` in bits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_binary_entropy(p: f64, out: *mut f64) -> ShannonStatus {
    guard(|| {
        write(out, binary_entropy(p)?, "out")?;
        Ok(ShannonStatus::Ok)
    })
}

/// Capacity `1 - H2(p)` of the binary symmetric channel, in base `base`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_bsc_capacity(p: f64, base: f64, out: *mut f64) -> ShannonStatus {
    guard(|| {
        write(out, bsc_capacity(p, LogBase::new(base)?)?, "out")?;
        Ok(ShannonStatus::Ok)
    })
}

/// Creates a channel from a row-major `inputs x outputs` matrix of forward
/// probabilities.
///
/// # Safety
/// `forward` must point to `inputs * outputs` readable doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_channel_new(
    forward: *const f64,
    inputs: usize,
    outputs: usize,
    out: *mut *mut ShannonChannel,
) -> ShannonStatus {
    guard(|| {
        let cells = inputs
            .checked_mul(outputs)
            .ok_or_else(|| Failure(ShannonStatus::InvalidArgument, "matrix too large".into()))?;
        let data = slice(forward, cells, "forward")?;
        let rows = if outputs == 0 {
            vec![Vec::new(); inputs]
        } else {
            data.chunks_exact(outputs).map(<[f64]>::to_vec).collect()
        };
        let channel = Channel::new(rows)?;
        emit(out, ShannonChannel(channel))?;
        Ok(ShannonStatus::Ok)
    })
}

/// Creates a binary symmetric channel with crossover probability `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_channel_new_bsc(
    p: f64,
    out: *mut *mut ShannonChannel,
) -> ShannonStatus {
    guard(|| {
        let channel = Channel::bsc(p)?;
        emit(out, ShannonChannel(channel))?;
        Ok(ShannonStatus::Ok)
    })
}

/// Releases a channel. NULL is ignored.
///
/// # Safety
/// `channel` must be NULL or a handle from `shannon_channel_new*` that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn shannon_channel_free(channel: *mut ShannonChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

/// Number of input and output symbols.
///
/// # Safety
/// `channel` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_channel_shape(
    channel: *const ShannonChannel,
    inputs: *mut usize,
    outputs: *mut usize,
) -> ShannonStatus {
    guard(|| {
        let ch = &borrow(channel, "channel")?.0;
        write(inputs, ch.inputs(), "inputs")?;
        write(outputs, ch.outputs(), "outputs")?;
        Ok(ShannonStatus::Ok)
    })
}

/// Mutual information `H(R) - H(R|S)` for the input distribution `input`.
///
/// # Safety
/// `channel` must be a live handle; `input` must point to `len` readable
/// doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_channel_mutual_information(
    channel: *const ShannonChannel,
    input: *const f64,
    len: usize,
    base: f64,
    out: *mut f64,
) -> ShannonStatus {
    guard(|| {
        let ch = &borrow(channel, "channel")?.0;
        let input = Distribution::new(slice(input, len, "input")?.to_vec())?;
        write(
            out,
            ch.mutual_information(&input, LogBase::new(base)?)?,
            "out",
        )?;
        Ok(ShannonStatus::Ok)
    })
}

/// Channel capacity by Blahut–Arimoto.
///
/// Writes the capacity, the maximizing input distribution (into
/// `optimal_input`, which must hold `inputs` doubles) and the iteration count.
/// `optimal_input` and `iterations` may be NULL. Returns
/// `SHANNON_STATUS_NOT_CONVERGED` with the best iterate when `max_iterations`
/// is reached first.
///
/// # Safety
/// `channel` must be a live handle; non-NULL out-pointers must be writable
/// for the stated sizes.
#[no_mangle]
pub unsafe extern "C" fn shannon_channel_capacity(
    channel: *const ShannonChannel,
    tolerance: f64,
    max_iterations: usize,
    base: f64,
    capacity: *mut f64,
    optimal_input: *mut f64,
    iterations: *mut usize,
) -> ShannonStatus {
    guard(|| {
        let ch = &borrow(channel, "channel")?.0;
        let options = SolverOptions {
            tolerance,
            max_iterations,
            base: LogBase::new(base)?,
        };
        let result = blahut_arimoto(ch, options)?;
        write(capacity, result.capacity, "capacity")?;
        if !optimal_input.is_null() {
            let probs = result.optimal_input.probs();
            ptr::copy_nonoverlapping(probs.as_ptr(), optimal_input, probs.len());
        }
        if !iterations.is_null() {
            iterations.write(result.iterations);
        }
        if result.converged {
            Ok(ShannonStatus::Ok)
        } else {
            Err(Failure(
                ShannonStatus::NotConverged,
                "NotConverged: iteration limit reached before tolerance".into(),
            ))
        }
    })
}

/// Creates a code from `count` codewords of `length` symbols each.
///
/// # Safety
/// `words` must point to `count` readable `uint64_t`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_code_new(
    words: *const u64,
    count: usize,
    length: u32,
    out: *mut *mut ShannonCode,
) -> ShannonStatus {
    guard(|| {
        let words = slice(words, count, "words")?
            .iter()
            .map(|&w| Codeword::new(w, length))
            .collect::<Result<Vec<_>, _>>()?;
        emit(out, ShannonCode(BlockCode::new(words)?))?;
        Ok(ShannonStatus::Ok)
    })
}

/// Creates the repetition code `{0^n, 1^n}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_code_new_repetition(
    length: u32,
    out: *mut *mut ShannonCode,
) -> ShannonStatus {
    guard(|| {
        emit(out, ShannonCode(repetition_code(length)?))?;
        Ok(ShannonStatus::Ok)
    })
}

/// Creates a code of `count` distinct uniformly random words of `length`
/// symbols, determined by `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_code_new_random(
    length: u32,
    count: u64,
    seed: u64,
    out: *mut *mut ShannonCode,
) -> ShannonStatus {
    guard(|| {
        emit(out, ShannonCode(random_code(length, count, seed)?))?;
        Ok(ShannonStatus::Ok)
    })
}

/// Releases a code. NULL is ignored.
///
/// # Safety
/// `code` must be NULL or a handle from `shannon_code_new*` that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn shannon_code_free(code: *mut ShannonCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Block length and number of codewords.
///
/// # Safety
/// `code` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_code_shape(
    code: *const ShannonCode,
    length: *mut u32,
    count: *mut usize,
) -> ShannonStatus {
    guard(|| {
        let code = &borrow(code, "code")?.0;
        write(length, code.length(), "length")?;
        write(count, code.size(), "count")?;
        Ok(ShannonStatus::Ok)
    })
}

/// Nearest-codeword decoding. Writes the codeword index (lowest on ties) and
/// its Hamming distance to `received`; `distance` may be NULL.
///
/// # Safety
/// `code` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_code_decode(
    code: *const ShannonCode,
    received: u64,
    index: *mut usize,
    distance: *mut u32,
) -> ShannonStatus {
    guard(|| {
        let code = &borrow(code, "code")?.0;
        let received = Codeword::new(received, code.length())?;
        let i = min_distance_decode(code, &received)?;
        write(index, i, "index")?;
        if !distance.is_null() {
            distance.write((code.codeword(i).bits() ^ received.bits()).count_ones());
        }
        Ok(ShannonStatus::Ok)
    })
}

/// Exact probability of correct nearest-codeword decoding over a BSC with
/// crossover `p`, codewords equiprobable.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_code_exact_correct_probability(
    code: *const ShannonCode,
    p: f64,
    out: *mut f64,
) -> ShannonStatus {
    guard(|| {
        let code = &borrow(code, "code")?.0;
        write(out, exact_block_correct_probability(code, p)?, "out")?;
        Ok(ShannonStatus::Ok)
    })
}

/// Monte Carlo estimate of the correct-decoding probability and its
/// binomial standard error; `standard_error` may be NULL.
///
/// # Safety
/// `code` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn shannon_code_estimate_correct_probability(
    code: *const ShannonCode,
    p: f64,
    trials: u64,
    seed: u64,
    estimate: *mut f64,
    standard_error: *mut f64,
) -> ShannonStatus {
    guard(|| {
        let code = &borrow(code, "code")?.0;
        let e = estimate_correct_probability(code, p, trials, seed)?;
        write(estimate, e.estimate, "estimate")?;
        if !standard_error.is_null() {
            standard_error.write(e.standard_error);
        }
        Ok(ShannonStatus::Ok)
    })
}
