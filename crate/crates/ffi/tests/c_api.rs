use std::ffi::CStr;
use std::ptr;

use shannon_ffi::*;

fn last_error() -> String {
    let p = shannon_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn scalar_functions() {
    let mut out = 0.0;
    unsafe {
        assert_eq!(
            shannon_entropy([0.5, 0.25, 0.25].as_ptr(), 3, 2.0, &mut out),
            ShannonStatus::Ok
        );
        assert_eq!(out, 1.5);
        assert_eq!(shannon_binary_entropy(0.5, &mut out), ShannonStatus::Ok);
        assert!((out - 1.0).abs() < 1e-12);
        assert_eq!(shannon_bsc_capacity(0.1, 2.0, &mut out), ShannonStatus::Ok);
        assert!((out - 0.531_004_406_410_718_8).abs() < 1e-12);
    }
}

#[test]
fn validation_errors_set_message() {
    let mut out = 0.0;
    unsafe {
        let status = shannon_entropy([0.3, 0.3].as_ptr(), 2, 2.0, &mut out);
        assert_eq!(status, ShannonStatus::InvalidArgument);
        assert!(last_error().starts_with("NotNormalized"));
        assert_eq!(
            shannon_binary_entropy(1.5, &mut out),
            ShannonStatus::InvalidArgument
        );
        assert!(last_error().starts_with("DomainError"));
        assert_eq!(
            shannon_entropy(ptr::null(), 2, 2.0, &mut out),
            ShannonStatus::NullPointer
        );
        assert_eq!(
            shannon_binary_entropy(0.5, ptr::null_mut()),
            ShannonStatus::NullPointer
        );
        assert_eq!(
            shannon_entropy([1.0].as_ptr(), 1, 1.0, &mut out),
            ShannonStatus::InvalidArgument
        );
    }
}

#[test]
fn status_names() {
    let name = |s| {
        unsafe { CStr::from_ptr(shannon_status_name(s)) }
            .to_str()
            .unwrap()
    };
    assert_eq!(name(ShannonStatus::Ok as i32), "ok");
    assert_eq!(name(ShannonStatus::NotConverged as i32), "not_converged");
    assert_eq!(
        name(ShannonStatus::BudgetExceeded as i32),
        "budget_exceeded"
    );
    assert_eq!(name(99), "unknown");
}

#[test]
fn channel_handles() {
    unsafe {
        let mut ch = ptr::null_mut();
        let bec = [0.7, 0.0, 0.3, 0.0, 0.7, 0.3];
        assert_eq!(
            shannon_channel_new(bec.as_ptr(), 2, 3, &mut ch),
            ShannonStatus::Ok
        );
        let (mut m, mut n) = (0, 0);
        assert_eq!(shannon_channel_shape(ch, &mut m, &mut n), ShannonStatus::Ok);
        assert_eq!((m, n), (2, 3));

        let (mut cap, mut input, mut iters) = (0.0, [0.0; 2], 0usize);
        let status = shannon_channel_capacity(
            ch,
            1e-9,
            10_000,
            2.0,
            &mut cap,
            input.as_mut_ptr(),
            &mut iters,
        );
        assert_eq!(status, ShannonStatus::Ok);
        assert!((cap - 0.7).abs() < 1e-5);
        assert!((input[0] - 0.5).abs() < 1e-4);

        let mut mi = 0.0;
        let status = shannon_channel_mutual_information(ch, [0.5, 0.5].as_ptr(), 2, 2.0, &mut mi);
        assert_eq!(status, ShannonStatus::Ok);
        assert!((mi - 0.7).abs() < 1e-12);
        let status = shannon_channel_mutual_information(ch, [1.0].as_ptr(), 1, 2.0, &mut mi);
        assert_eq!(status, ShannonStatus::InvalidArgument);
        assert!(last_error().starts_with("DimensionMismatch"));
        shannon_channel_free(ch);

        let mut bad = ptr::null_mut();
        let status = shannon_channel_new([0.5, 0.6].as_ptr(), 1, 2, &mut bad);
        assert_eq!(status, ShannonStatus::InvalidArgument);
        assert!(bad.is_null());
        assert_eq!(
            shannon_channel_new(bec.as_ptr(), 2, 3, ptr::null_mut()),
            ShannonStatus::NullPointer
        );
        shannon_channel_free(ptr::null_mut());
    }
}

#[test]
fn capacity_reports_non_convergence() {
    unsafe {
        let mut ch = ptr::null_mut();
        let z = [1.0, 0.0, 0.5, 0.5];
        assert_eq!(
            shannon_channel_new(z.as_ptr(), 2, 2, &mut ch),
            ShannonStatus::Ok
        );
        let mut cap = 0.0;
        let status = shannon_channel_capacity(
            ch,
            1e-15,
            2,
            2.0,
            &mut cap,
            ptr::null_mut(),
            ptr::null_mut(),
        );
        assert_eq!(status, ShannonStatus::NotConverged);
        assert!(cap > 0.3);
        shannon_channel_free(ch);

        let mut bsc = ptr::null_mut();
        assert_eq!(shannon_channel_new_bsc(0.1, &mut bsc), ShannonStatus::Ok);
        let status = shannon_channel_capacity(
            bsc,
            1e-9,
            100,
            2.0,
            &mut cap,
            ptr::null_mut(),
            ptr::null_mut(),
        );
        assert_eq!(status, ShannonStatus::Ok);
        assert!((cap - 0.531_004_406_410_718_8).abs() < 1e-6);
        shannon_channel_free(bsc);
    }
}

#[test]
fn code_handles() {
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(shannon_code_new_repetition(3, &mut rep), ShannonStatus::Ok);
        let mut pd = 0.0;
        assert_eq!(
            shannon_code_exact_correct_probability(rep, 0.1, &mut pd),
            ShannonStatus::Ok
        );
        assert!((pd - 0.972).abs() < 1e-12);

        // "101" is bits 0 and 2
        let (mut index, mut distance) = (9usize, 9u32);
        assert_eq!(
            shannon_code_decode(rep, 0b101, &mut index, &mut distance),
            ShannonStatus::Ok
        );
        assert_eq!((index, distance), (1, 1));
        assert_eq!(
            shannon_code_decode(rep, 0b1000, &mut index, &mut distance),
            ShannonStatus::InvalidArgument
        );

        let (mut est, mut se) = (0.0, 0.0);
        let status =
            shannon_code_estimate_correct_probability(rep, 0.1, 100_000, 1, &mut est, &mut se);
        assert_eq!(status, ShannonStatus::Ok);
        assert!((est - 0.972).abs() <= 4.0 * se);
        shannon_code_free(rep);

        let mut code = ptr::null_mut();
        assert_eq!(
            shannon_code_new([0b00, 0b11].as_ptr(), 2, 2, &mut code),
            ShannonStatus::Ok
        );
        let (mut len, mut count) = (0u32, 0usize);
        assert_eq!(
            shannon_code_shape(code, &mut len, &mut count),
            ShannonStatus::Ok
        );
        assert_eq!((len, count), (2, 2));
        shannon_code_free(code);

        let mut dup = ptr::null_mut();
        assert_eq!(
            shannon_code_new([1, 1].as_ptr(), 2, 2, &mut dup),
            ShannonStatus::InvalidArgument
        );
        assert!(last_error().starts_with("InvalidCode"));

        let mut random = ptr::null_mut();
        assert_eq!(
            shannon_code_new_random(3, 9, 0, &mut random),
            ShannonStatus::InvalidArgument
        );
        assert!(last_error().starts_with("TooMany"));
        assert_eq!(
            shannon_code_new_random(30, 4, 0, &mut random),
            ShannonStatus::Ok
        );
        let status = shannon_code_exact_correct_probability(random, 0.1, &mut pd);
        assert_eq!(status, ShannonStatus::BudgetExceeded);
        assert!(last_error().starts_with("TooLarge"));
        shannon_code_free(random);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/shannon.h");
    for symbol in [
        "shannon_last_error_message",
        "shannon_status_name",
        "shannon_entropy",
        "shannon_binary_entropy",
        "shannon_bsc_capacity",
        "shannon_channel_new",
        "shannon_channel_new_bsc",
        "shannon_channel_free",
        "shannon_channel_shape",
        "shannon_channel_mutual_information",
        "shannon_channel_capacity",
        "shannon_code_new",
        "shannon_code_new_repetition",
        "shannon_code_new_random",
        "shannon_code_free",
        "shannon_code_shape",
        "shannon_code_decode",
        "shannon_code_exact_correct_probability",
        "shannon_code_estimate_correct_probability",
    ] {
        assert!(
            header.contains(&format!("{symbol}(")),
            "{symbol} missing from header"
        );
    }
    assert!(header.contains("typedef struct ShannonChannel ShannonChannel;"));
    assert!(header.contains("SHANNON_STATUS_NOT_CONVERGED = 3"));
}
