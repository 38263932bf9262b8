use ofdm_papr::experiment::{
    run_comparison, run_experiment, ExperimentConfig, ExperimentResult, Method, ThresholdGrid,
};
use ofdm_papr::modulation::{random_frame, ModulationScheme};
use ofdm_papr::report::{write_result, write_to_path, JsonRecord, OutputFormat};
use ofdm_papr::stats::CcdfCurve;
use ofdm_papr::stream::{trial_stream, Purpose};
use ofdm_papr::Error;

fn config(method: Method) -> ExperimentConfig {
    ExperimentConfig {
        method,
        trials: 300,
        oversample: 4,
        master_seed: 42,
        ..ExperimentConfig::default()
    }
}

fn csv(result: &ExperimentResult) -> Vec<u8> {
    let mut buf = Vec::new();
    write_result(result, OutputFormat::Csv, &mut buf).unwrap();
    buf
}

#[test]
fn same_seed_same_bytes() {
    for method in [Method::None, Method::Slm, Method::Pts] {
        let a = run_experiment(&config(method)).unwrap();
        let b = run_experiment(&config(method)).unwrap();
        assert_eq!(a.samples_db, b.samples_db);
        assert_eq!(a.side_info, b.side_info);
        assert_eq!(csv(&a), csv(&b));
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let run_with = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_experiment(&config(Method::Slm)).unwrap())
    };
    let one = run_with(1);
    let four = run_with(4);
    assert_eq!(one.samples_db, four.samples_db);
    assert_eq!(one.side_info, four.side_info);
}

#[test]
fn trial_prefix_is_stable() {
    // Trial t depends only on (seed, t), so a longer run extends a shorter one.
    let short = run_experiment(&ExperimentConfig {
        trials: 50,
        ..config(Method::Slm)
    })
    .unwrap();
    let long = run_experiment(&config(Method::Slm)).unwrap();
    assert_eq!(short.samples_db[..], long.samples_db[..50]);
}

#[test]
fn impulse_frame_found_by_seed_search() {
    let seed = (0u64..)
        .find(|&s| {
            let mut rng = trial_stream(s, 0, Purpose::FrameBits);
            let frame = random_frame(4, ModulationScheme::Qpsk, &mut rng).unwrap();
            frame.symbols().iter().all(|x| x.re == 1.0 && x.im == 0.0)
        })
        .unwrap();
    let result = run_experiment(&ExperimentConfig {
        n_subcarriers: 4,
        oversample: 1,
        trials: 1,
        master_seed: seed,
        pts_blocks: 2,
        ..ExperimentConfig::default()
    })
    .unwrap();
    assert!((result.samples_db[0] - 6.020599913279624).abs() < 1e-9);
}

#[test]
fn slm_shifts_ccdf_down() {
    let base = ExperimentConfig {
        oversample: 1,
        trials: 100_000,
        master_seed: 2026,
        ..ExperimentConfig::default()
    };
    let none = run_experiment(&base).unwrap();
    let slm = run_experiment(&ExperimentConfig {
        method: Method::Slm,
        slm_branches: 4,
        ..base
    })
    .unwrap();
    for ((z, p_none), p_slm) in none.empirical.points().zip(&slm.empirical.probabilities) {
        if p_none >= 1e-2 {
            assert!(*p_slm <= p_none, "{z} dB: {p_slm} > {p_none}");
        }
    }
}

#[test]
fn comparison_methods_share_frames() {
    let base = config(Method::None);
    let specs = ["none", "slm:4", "pts:4:2"].map(|s| s.parse().unwrap());
    let results = run_comparison(&base, &specs).unwrap();
    let plain = &results[0].samples_db;
    for r in &results[1..] {
        assert!(
            r.samples_db.iter().zip(plain).all(|(a, b)| a <= b),
            "{}",
            r.config.label()
        );
    }
    assert!(results[2].side_info.iter().all(|&i| i < 16));
}

fn fixture(analytic: Option<Vec<f64>>) -> ExperimentResult {
    let curve = |p: Vec<f64>, count| CcdfCurve {
        thresholds_db: vec![6.0, 9.0],
        probabilities: p,
        sample_count: count,
    };
    ExperimentResult {
        config: ExperimentConfig {
            trials: 2,
            thresholds: ThresholdGrid {
                lo_db: 6.0,
                hi_db: 9.0,
                step_db: 3.0,
            },
            ..ExperimentConfig::default()
        },
        empirical: curve(vec![0.5, 0.01], 2),
        analytic: analytic.map(|a| curve(a, 0)),
        samples_db: vec![5.5, 7.25],
        side_info: vec![0, 0],
        elapsed_seconds: 0.125,
    }
}

#[test]
fn csv_layout() {
    let text = String::from_utf8(csv(&fixture(None))).unwrap();
    assert_eq!(text, "papr_db,ccdf\n6.000000,0.500000\n9.000000,0.010000\n");
    let text = String::from_utf8(csv(&fixture(Some(vec![0.75, 1e-7])))).unwrap();
    assert_eq!(
        text,
        "papr_db,ccdf,analytic_ccdf\n6.000000,0.500000,0.750000\n9.000000,0.010000,0.000000\n"
    );
}

#[test]
fn json_layout_and_round_trip() {
    let mut buf = Vec::new();
    write_result(&fixture(None), OutputFormat::Json, &mut buf).unwrap();
    let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    let obj = value.as_object().unwrap();
    assert!(!obj.contains_key("analytic_ccdf"));
    for key in [
        "config",
        "thresholds_db",
        "ccdf",
        "samples_db",
        "seed",
        "trials",
        "elapsed_seconds",
    ] {
        assert!(obj.contains_key(key), "missing {key}");
    }

    let real = run_experiment(&ExperimentConfig {
        analytic: true,
        ..config(Method::Slm)
    })
    .unwrap();
    let mut buf = Vec::new();
    write_result(&real, OutputFormat::Json, &mut buf).unwrap();
    let parsed: JsonRecord = serde_json::from_slice(&buf).unwrap();
    assert_eq!(parsed.thresholds_db, real.empirical.thresholds_db);
    assert_eq!(parsed.ccdf, real.empirical.probabilities);
    assert_eq!(parsed.analytic_ccdf.unwrap(), real.analytic.unwrap().probabilities);
    assert_eq!(parsed.samples_db, real.samples_db);
    assert_eq!(parsed.config, real.config);
}

#[test]
fn write_failure_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    match write_to_path(&[fixture(None)], OutputFormat::Csv, &path) {
        Err(Error::Io { path: p, .. }) => assert_eq!(p, path),
        other => panic!("expected I/O error, got {other:?}"),
    }
}
