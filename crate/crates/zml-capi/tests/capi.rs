//! Exercise the C ABI through the exported symbols: handle lifecycle,
//! status codes, out-parameter results, parity with the core crate.

use std::ffi::CString;

use zml_capi::*;

#[test]
fn config_lifecycle_and_setters() {
    unsafe {
        let cfg = zml_config_new();
        assert!(!cfg.is_null());
        assert_eq!(zml_config_max_t(cfg), 10_000.0);
        assert_eq!(zml_config_set_max_t(cfg, 5000.0), ZmlStatus::Ok);
        assert_eq!(zml_config_max_t(cfg), 5000.0);
        assert_eq!(zml_config_set_max_t(cfg, -1.0), ZmlStatus::InvalidArgument);
        assert_eq!(zml_config_max_t(cfg), 5000.0);
        assert_eq!(
            zml_config_set_target_abs_err(cfg, 0.0),
            ZmlStatus::InvalidArgument
        );
        zml_config_free(cfg);
        zml_config_free(std::ptr::null_mut());
    }
}

#[test]
fn zeta_values_and_error_codes() {
    unsafe {
        let cfg = zml_config_new();
        let (mut re, mut im) = (0.0f64, 0.0f64);
        assert_eq!(zml_zeta(cfg, 2.0, 0.0, &mut re, &mut im), ZmlStatus::Ok);
        assert!((re - std::f64::consts::PI.powi(2) / 6.0).abs() <= 1e-12);
        assert!(im.abs() <= 1e-14);

        assert_eq!(
            zml_zeta(cfg, 1.0, 0.0, &mut re, &mut im),
            ZmlStatus::PoleAtOne
        );
        assert_eq!(
            zml_zeta(cfg, 2.0, 20_000.0, &mut re, &mut im),
            ZmlStatus::RangeExceeded
        );
        assert_eq!(
            zml_zeta(std::ptr::null(), 2.0, 0.0, &mut re, &mut im),
            ZmlStatus::NullPointer
        );
        assert_eq!(
            zml_zeta(cfg, 2.0, 0.0, std::ptr::null_mut(), &mut im),
            ZmlStatus::NullPointer
        );

        assert_eq!(
            zml_zeta_log_derivative(cfg, 2.0, 0.0, &mut re, &mut im),
            ZmlStatus::Ok
        );
        assert!((re - -0.5699609930945328).abs() <= 1e-9);
        assert_eq!(
            zml_zeta_log_derivative(cfg, 0.5, 14.134725141734694, &mut re, &mut im),
            ZmlStatus::NearSingularity
        );
        zml_config_free(cfg);
    }
}

#[test]
fn theta_and_arithmetic_helpers() {
    assert!((zml_riemann_siegel_theta(10.0) - -3.0670743962898953).abs() <= 1e-10);
    assert_eq!(
        zml_riemann_siegel_theta(-25.0),
        -zml_riemann_siegel_theta(25.0)
    );
    assert_eq!(zml_von_mangoldt(8), 2.0f64.ln());
    assert_eq!(zml_von_mangoldt(12), 0.0);
    assert!(zml_von_mangoldt(0).is_nan());
    assert_eq!(zml_von_mangoldt_real(3.0000000001, 1e-6), 3.0f64.ln());
    assert!(zml_von_mangoldt_real(0.5, 0.0).is_nan());
    assert_eq!(zml_nearest_prime_power_distance(4.0), 1.0);
    assert!(zml_nearest_prime_power_distance(1.0).is_nan());
    assert!(zml_rvm_main_term(-3.0).is_nan());
    assert!((zml_rvm_main_term(100.0) - 28.127).abs() < 1e-3);
    assert!(zml_landau_main_term(0.1, 100.0).is_nan());
    assert!(zml_landau_error_envelope(2.0, 0.5, 1.0).is_nan());
}

#[test]
fn zero_table_lifecycle_save_load() {
    unsafe {
        let cfg = zml_config_new();
        let mut table: *mut ZmlZeroTable = std::ptr::null_mut();
        assert_eq!(zml_find_zeros(cfg, 0.0, 30.0, &mut table), ZmlStatus::Ok);
        assert_eq!(zml_zero_table_len(table), 3);
        assert_eq!(zml_zero_table_t_max(table), 30.0);

        let mut g = 0.0f64;
        assert_eq!(zml_zero_table_ordinate(table, 0, &mut g), ZmlStatus::Ok);
        assert!((g - 14.134725141734694).abs() <= 1e-8);
        assert_eq!(
            zml_zero_table_ordinate(table, 3, &mut g),
            ZmlStatus::InvalidArgument
        );

        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("z.txt").to_str().unwrap().to_owned()).unwrap();
        assert_eq!(zml_zero_table_save(table, path.as_ptr()), ZmlStatus::Ok);

        let mut loaded: *mut ZmlZeroTable = std::ptr::null_mut();
        assert_eq!(
            zml_zero_table_load(path.as_ptr(), &mut loaded),
            ZmlStatus::Ok
        );
        assert_eq!(zml_zero_table_len(loaded), 3);

        let missing = CString::new("/nonexistent/nope.txt").unwrap();
        let mut nothing: *mut ZmlZeroTable = std::ptr::null_mut();
        assert_eq!(
            zml_zero_table_load(missing.as_ptr(), &mut nothing),
            ZmlStatus::IoError
        );

        // bad count
        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "# t_max=30 tol=1e-9 count=5\n14.13\n").unwrap();
        let bad_c = CString::new(bad.to_str().unwrap().to_owned()).unwrap();
        assert_eq!(
            zml_zero_table_load(bad_c.as_ptr(), &mut nothing),
            ZmlStatus::CacheFormat
        );

        zml_zero_table_free(loaded);
        zml_zero_table_free(table);
        zml_zero_table_free(std::ptr::null_mut());
        zml_config_free(cfg);
    }
}

#[test]
fn count_zeros_matches_core() {
    unsafe {
        let cfg = zml_config_new();
        let mut n = 0u64;
        assert_eq!(zml_count_zeros(cfg, 100.0, &mut n), ZmlStatus::Ok);
        assert_eq!(n, 29);
        assert_eq!(
            zml_count_zeros(cfg, 5.0, &mut n),
            ZmlStatus::DomainViolation
        );
        zml_config_free(cfg);
    }
}

#[test]
fn sums_parity_with_core_crate() {
    unsafe {
        let cfg = zml_config_new();
        let mut table: *mut ZmlZeroTable = std::ptr::null_mut();
        assert_eq!(zml_find_zeros(cfg, 0.0, 100.0, &mut table), ZmlStatus::Ok);

        let core_cfg = zml::EvalConfig::default();
        let core_table = zml::zeros::find_zeros(0.0, 100.0, &core_cfg).unwrap();

        let (mut re, mut im) = (0.0f64, 0.0f64);
        assert_eq!(zml_landau_sum(table, 2.0, &mut re, &mut im), ZmlStatus::Ok);
        let want = zml::sums::landau_sum(2.0, &core_table);
        assert_eq!(re.to_bits(), want.re.to_bits());
        assert_eq!(im.to_bits(), want.im.to_bits());
        assert_eq!(
            zml_landau_sum(table, 0.9, &mut re, &mut im),
            ZmlStatus::InvalidArgument
        );

        let mut ms = ZmlMeanSquare {
            sigma: 0.0,
            t: 0.0,
            t_max: 0.0,
            observed_s: 0.0,
            main_m: 0.0,
            rel_dev: 0.0,
            n_zeros: 0,
        };
        assert_eq!(
            zml_discrete_mean_square(cfg, table, 1.5, 0.0, &mut ms),
            ZmlStatus::Ok
        );
        let want = zml::sums::discrete_mean_square(1.5, 0.0, &core_table, &core_cfg).unwrap();
        assert_eq!(ms.observed_s.to_bits(), want.observed_s.to_bits());
        assert_eq!(ms.n_zeros, 29);
        assert_eq!(
            zml_discrete_mean_square(cfg, table, 0.5, 0.0, &mut ms),
            ZmlStatus::DomainViolation
        );

        let mut ds = ZmlDoubleSum {
            a1: 0.0,
            a2_re: 0.0,
            a2_im: 0.0,
            a: 0.0,
            r_est: 0.0,
        };
        assert_eq!(
            zml_dirichlet_double_sum(cfg, table, 1.5, 0.0, 0.5, &mut ds),
            ZmlStatus::Ok
        );
        assert_eq!(ds.a, ds.a1 + 2.0 * ds.a2_re);

        let (mut sum, mut ratio) = (0.0f64, 0.0f64);
        assert_eq!(
            zml_gamma_shift_partial_sum(table, 1.0, 0.25, &mut sum, &mut ratio),
            ZmlStatus::Ok
        );
        assert!(sum > 0.0 && ratio > 0.0);
        assert_eq!(
            zml_gamma_shift_partial_sum(table, -50.0, 0.25, &mut sum, &mut ratio),
            ZmlStatus::DomainViolation
        );

        let (mut obs, mut main) = (0.0f64, 0.0f64);
        assert_eq!(
            zml_critical_line_shifted_meansq(cfg, table, 0.0, &mut obs, &mut main),
            ZmlStatus::Ok
        );
        assert_eq!(main, 0.0);
        assert!(obs <= 1e-8 * 29.0);
        assert_eq!(
            zml_critical_line_shifted_meansq(cfg, table, 2.0, &mut obs, &mut main),
            ZmlStatus::AlphaOutOfRange
        );

        let mut r = 0.0f64;
        assert_eq!(
            zml_uniform_bound_ratio(cfg, table, 0.75, 0.0, 0.5, &mut r),
            ZmlStatus::Ok
        );
        assert!(r.is_finite() && r > 0.0);

        let mut m = 0.0f64;
        assert_eq!(
            zml_mean_square_main_term(cfg, 0.75, 0.0, 1000.0, &mut m),
            ZmlStatus::Ok
        );
        assert!((m - -1190.5356).abs() < 1e-3);

        zml_zero_table_free(table);
        zml_config_free(cfg);
    }
}

#[test]
fn status_strings_are_readable() {
    unsafe {
        let s = std::ffi::CStr::from_ptr(zml_status_str(ZmlStatus::Ok));
        assert_eq!(s.to_str().unwrap(), "ok");
        let s = std::ffi::CStr::from_ptr(zml_status_str(ZmlStatus::MissedZero));
        assert!(s.to_str().unwrap().contains("sign-change"));
    }
}

#[test]
fn generated_header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/zml.h"))
        .expect("build.rs generates include/zml.h");
    for decl in [
        "#ifndef ZML_H",
        "typedef struct ZmlConfig ZmlConfig;",
        "typedef struct ZmlZeroTable ZmlZeroTable;",
        "ZML_STATUS_OK",
        "zml_find_zeros",
        "zml_discrete_mean_square",
        "zml_zero_table_save",
        "struct ZmlMeanSquare",
    ] {
        assert!(header.contains(decl), "header missing: {decl}");
    }
}
