//! Acceptance suite: every criterion the toolkit must meet, one test and one
//! printed pass/fail line per criterion (run with `--nocapture` to see them).
//!
//! Randomized sweeps are seeded from `CMK_SEED` (default 0).

use cmk_core::causaloid::{
    composite_info, inclusion_report, outcome_set, procedure_set, scale_data, scale_region,
    CompositeRegion, Datum, DatumStore, RegionScope, SpaceSets, SpaceTag,
};
use cmk_core::eta::{beta_from, dt_between, QGStrength};
use cmk_core::measures::{
    classical_capacity, qg_measure, CMatrix, Channel, ConditionalJointPmf, CqEnsemble,
    DensityMatrix, KrausChannel, MeasureId, MeasureSelection, QuantumContext, RegionBinding,
    ScenarioProbability, StochasticMatrix,
};
use cmk_core::minkowski::{
    boost, classify, interval_squared, Boost, Event, SeparationClass, SpeedOfLight,
};
use cmk_core::scenario::{lightline_counterpart, plan_flags, Scenario};
use nalgebra::Complex;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::time::{Duration, Instant};

fn criterion<F>(number: u8, description: &str, body: F)
where
    F: FnOnce() + std::panic::UnwindSafe,
{
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("ACCEPTANCE {number:02} PASS - {description}"),
        Err(panic) => {
            println!("ACCEPTANCE {number:02} FAIL - {description}");
            std::panic::resume_unwind(panic);
        }
    }
}

fn rng() -> ChaCha8Rng {
    let seed = std::env::var("CMK_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    ChaCha8Rng::seed_from_u64(seed)
}

fn symbols(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random strictly positive normalized joint table.
fn random_table(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    let mut table: Vec<Vec<f64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(0.01..1.0)).collect())
        .collect();
    let sum: f64 = table.iter().flatten().sum();
    for row in &mut table {
        for v in row {
            *v /= sum;
        }
    }
    table
}

struct RandomScenario {
    probability: ScenarioProbability,
    strength: QGStrength,
}

/// Random QG-tagged scenario: outcome alphabets up to 4, settings up to 3,
/// strength drawn from [0, 0.99].
fn random_scenario(rng: &mut ChaCha8Rng) -> RandomScenario {
    let na = rng.random_range(2..=4);
    let nb = rng.random_range(2..=4);
    let sa = rng.random_range(1..=3);
    let sb = rng.random_range(1..=3);
    let a_settings = symbols("sa", sa);
    let b_settings = symbols("sb", sb);
    let tables = a_settings
        .iter()
        .flat_map(|a| b_settings.iter().map(move |b| (a.clone(), b.clone())))
        .map(|(a, b)| (a, b, random_table(rng, na, nb)))
        .collect();
    let pmf = ConditionalJointPmf::new(
        symbols("a", na),
        symbols("b", nb),
        a_settings,
        b_settings,
        tables,
    )
    .unwrap();
    let selection = MeasureSelection {
        a_setting: pmf.a_settings()[rng.random_range(0..sa)].clone(),
        b_setting: pmf.b_settings()[rng.random_range(0..sb)].clone(),
        a_outcome: pmf.a_outcomes()[rng.random_range(0..na)].clone(),
    };
    let probability = ScenarioProbability::new(
        pmf,
        RegionBinding {
            a_coord: rng.random_range(-10.0..10.0),
            b_coord: rng.random_range(-10.0..10.0),
        },
        SpaceTag::Qg,
        selection,
        None,
    )
    .unwrap();
    RandomScenario {
        probability,
        strength: QGStrength::from_beta(rng.random_range(0.0..0.99)).unwrap(),
    }
}

fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m / Complex::new(tr, 0.0)).unwrap()
}

/// Random Kraus channel: QR of a stacked random matrix gives operators with
/// an exact completeness relation.
fn random_kraus_channel(rng: &mut ChaCha8Rng, dim: usize, n_kraus: usize) -> KrausChannel {
    let stacked = CMatrix::from_fn(n_kraus * dim, dim, |_, _| {
        Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let q = stacked.qr().q();
    let kraus: Vec<CMatrix> = (0..n_kraus)
        .map(|i| q.rows(i * dim, dim).into_owned())
        .collect();
    KrausChannel::new(kraus).unwrap()
}

fn random_ensemble(rng: &mut ChaCha8Rng, dim: usize) -> CqEnsemble {
    let n_states = rng.random_range(2..=4);
    let mut priors: Vec<f64> = (0..n_states).map(|_| rng.random_range(0.1..1.0)).collect();
    let sum: f64 = priors.iter().sum();
    priors.iter_mut().for_each(|v| *v /= sum);
    let states = (0..n_states).map(|_| random_state(rng, dim)).collect();
    CqEnsemble::new(priors, states).unwrap()
}

// ---------------------------------------------------------------------------

#[test]
fn acceptance_01_entropy_equivalence() {
    criterion(
        1,
        "entropy of B agrees across representations on 100 random scenarios (<= 1e-15, < 1 s)",
        || {
            let mut rng = rng();
            let ctx = QuantumContext::default();
            let start = Instant::now();
            for _ in 0..100 {
                let sc = random_scenario(&mut rng);
                let pair =
                    qg_measure(&sc.probability, &sc.strength, MeasureId::Entropy, &ctx).unwrap();
                assert!(
                    pair.abs_diff() <= 1e-15,
                    "entropy pair diverged: {} vs {}",
                    pair.qg_value,
                    pair.s_value
                );
            }
            let elapsed = start.elapsed();
            assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
        },
    );
}

#[test]
fn acceptance_02_correlation_measure_equivalence() {
    criterion(
        2,
        "mutual/coherent information, Holevo, and capacities agree across representations (< 10 s)",
        || {
            let mut rng = rng();
            let start = Instant::now();

            // classical suite: 100 random scenarios
            let ctx = QuantumContext::default();
            for _ in 0..100 {
                let sc = random_scenario(&mut rng);
                for id in [MeasureId::MutualInformation, MeasureId::CoherentInformation] {
                    let pair = qg_measure(&sc.probability, &sc.strength, id, &ctx).unwrap();
                    assert!(pair.abs_diff() <= 1e-12, "{id} diverged");
                }
            }

            // quantum suite: 20 ensemble/channel scenarios, dim <= 8
            for i in 0..20 {
                let sc = random_scenario(&mut rng);
                let dim = rng.random_range(2..=8);
                let ensemble = random_ensemble(&mut rng, dim);
                let channel = if i % 2 == 0 {
                    Channel::identity(dim).unwrap()
                } else {
                    let n_kraus = rng.random_range(1..=3);
                    Channel::Quantum(random_kraus_channel(&mut rng, dim, n_kraus))
                };
                let ctx = QuantumContext {
                    ensemble: Some(ensemble),
                    channel: Some(channel),
                    solver_tol: Some(1e-4),
                    solver_max_iter: Some(2_000_000),
                };
                let pair =
                    qg_measure(&sc.probability, &sc.strength, MeasureId::Holevo, &ctx).unwrap();
                assert!(pair.abs_diff() <= 1e-12, "holevo diverged");
                let pair = qg_measure(
                    &sc.probability,
                    &sc.strength,
                    MeasureId::HolevoCapacity,
                    &ctx,
                )
                .unwrap();
                assert!(pair.abs_diff() <= 1e-9, "holevo capacity diverged");

                // classical capacity over a random stochastic channel
                let n_in = rng.random_range(2..=4);
                let n_out = rng.random_range(2..=4);
                let rows: Vec<Vec<f64>> = (0..n_in)
                    .map(|_| {
                        let mut row: Vec<f64> =
                            (0..n_out).map(|_| rng.random_range(0.05..1.0)).collect();
                        let sum: f64 = row.iter().sum();
                        row.iter_mut().for_each(|v| *v /= sum);
                        row
                    })
                    .collect();
                let ctx = QuantumContext {
                    ensemble: None,
                    channel: Some(Channel::Classical(StochasticMatrix::new(rows).unwrap())),
                    solver_tol: Some(1e-4),
                    solver_max_iter: Some(2_000_000),
                };
                let pair = qg_measure(
                    &sc.probability,
                    &sc.strength,
                    MeasureId::ClassicalCapacity,
                    &ctx,
                )
                .unwrap();
                assert!(pair.abs_diff() <= 1e-9, "classical capacity diverged");
            }

            let elapsed = start.elapsed();
            assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
        },
    );
}

#[test]
fn acceptance_03_distance_curve_reproduction() {
    criterion(
        3,
        "emitted distance curves are lines through the origin with slope eta(beta) (<= 1e-9)",
        || {
            let betas = [0.25, 0.5, 0.75, 0.9];
            let expected = [
                1.0327955589886445,
                1.1547005383792515,
                1.5118578920369089,
                2.2941573387056176,
            ];
            let csv = cmk_core::scenario::emit_fig3_curves(&betas, (0.0, 10.0), 101).unwrap();
            let text = String::from_utf8(csv).unwrap();
            let rows: Vec<Vec<f64>> = text
                .lines()
                .skip(1)
                .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
                .collect();
            assert_eq!(rows.len(), 101);

            for (col, (&beta, &eta)) in betas.iter().zip(&expected).enumerate() {
                let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
                let ys: Vec<f64> = rows.iter().map(|r| r[col + 1]).collect();
                let n = xs.len() as f64;
                let mean_x = xs.iter().sum::<f64>() / n;
                let mean_y = ys.iter().sum::<f64>() / n;
                let sxy: f64 = xs
                    .iter()
                    .zip(&ys)
                    .map(|(x, y)| (x - mean_x) * (y - mean_y))
                    .sum();
                let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
                let slope = sxy / sxx;
                let intercept = mean_y - slope * mean_x;
                assert!(
                    (slope - eta).abs() <= 1e-9,
                    "beta {beta}: slope {slope} vs eta {eta}"
                );
                assert!(
                    intercept.abs() <= 1e-9,
                    "beta {beta}: intercept {intercept}"
                );
            }

            // the reference curve is the identity, bit for bit
            let csv = cmk_core::scenario::emit_fig3_curves(&[0.0], (0.0, 10.0), 101).unwrap();
            for line in String::from_utf8(csv).unwrap().lines().skip(1) {
                let mut cells = line.split(',');
                let dx_prime = cells.next().unwrap();
                let dx = cells.next().unwrap();
                assert_eq!(dx_prime, dx);
            }
        },
    );
}

#[test]
fn acceptance_04_interval_invariance() {
    criterion(
        4,
        "10^4 random boosts preserve the interval to 1e-9 relative (< 1 s)",
        || {
            let mut rng = rng();
            let c = SpeedOfLight::natural();
            let start = Instant::now();
            for _ in 0..10_000 {
                let e1 = Event::one_d(
                    rng.random_range(-1.0e3..1.0e3),
                    rng.random_range(-1.0e3..1.0e3),
                )
                .unwrap();
                let e2 = Event::one_d(
                    rng.random_range(-1.0e3..1.0e3),
                    rng.random_range(-1.0e3..1.0e3),
                )
                .unwrap();
                let b = Boost::from_ratio(rng.random_range(-0.99..0.99)).unwrap();
                let s2 = interval_squared(&e1, &e2, c).unwrap();
                let s2_boosted =
                    interval_squared(&boost(&e1, &b, c).unwrap(), &boost(&e2, &b, c).unwrap(), c)
                        .unwrap();
                assert!(
                    (s2_boosted - s2).abs() <= 1e-9 * s2.abs().max(1.0),
                    "{s2} vs {s2_boosted}"
                );
            }
            let elapsed = start.elapsed();
            assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
        },
    );
}

#[test]
fn acceptance_05_classification_oracle() {
    criterion(
        5,
        "classification matches the exact-rational interval sign on the full integer grid",
        || {
            let c = SpeedOfLight::natural();
            let zero = Ratio::new(0i64, 1);
            let mut disagreements = 0u64;
            for x1 in -20i64..=20 {
                for ct1 in -20i64..=20 {
                    for x2 in -20i64..=20 {
                        for ct2 in -20i64..=20 {
                            let e1 = Event::one_d(x1 as f64, ct1 as f64).unwrap();
                            let e2 = Event::one_d(x2 as f64, ct2 as f64).unwrap();
                            let got = classify(&e1, &e2, c, 0.0).unwrap().class;
                            let dt = Ratio::new(ct1 - ct2, 1);
                            let dx = Ratio::new(x1 - x2, 1);
                            let s2 = dt * dt - dx * dx;
                            let expected = match s2.cmp(&zero) {
                                std::cmp::Ordering::Greater => SeparationClass::TimeLike,
                                std::cmp::Ordering::Equal => SeparationClass::LightLike,
                                std::cmp::Ordering::Less => SeparationClass::SpaceLike,
                            };
                            if got != expected {
                                disagreements += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(disagreements, 0);
        },
    );
}

#[test]
fn acceptance_06_strength_recovery_round_trip() {
    criterion(
        6,
        "beta recovered from (dt, dx') round trips within 1e-12 on 10^3 samples",
        || {
            let mut rng = rng();
            let c = SpeedOfLight::natural();
            for _ in 0..1000 {
                let beta = rng.random_range(0.0..0.99);
                let dx_prime = rng.random_range(1e-3..1.0e3);
                let s = QGStrength::from_beta(beta).unwrap();
                let dt = dt_between(&s, dx_prime, c);
                let recovered = beta_from(dt, dx_prime, c).unwrap();
                assert!(
                    (recovered - beta).abs() <= 1e-12,
                    "{recovered} vs {beta} at dx' {dx_prime}"
                );
            }
        },
    );
}

#[test]
fn acceptance_07_capacity_oracle() {
    criterion(
        7,
        "solver capacity of the binary symmetric family matches 1 - h(p) within 1e-6",
        || {
            let h2 = |p: f64| {
                if p == 0.0 || p == 1.0 {
                    0.0
                } else {
                    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
                }
            };
            for p in [0.0, 0.05, 0.1, 0.25, 0.5] {
                let ch = StochasticMatrix::binary_symmetric(p).unwrap();
                let result = classical_capacity(&ch, 1e-9, 100_000).unwrap();
                assert!(result.converged, "p = {p} did not converge");
                let expected = 1.0 - h2(p);
                assert!(
                    (result.bits - expected).abs() <= 1e-6,
                    "p = {p}: {} vs {expected}",
                    result.bits
                );
            }
        },
    );
}

/// Build the (Y, F, R) sets of one space from a scenario's party data.
fn space_sets(
    store: &DatumStore,
    coords: &[f64],
    tag: SpaceTag,
    selected: &[String],
    alphabet: &[String],
) -> SpaceSets {
    let comp = CompositeRegion::from_coords(coords, tag).unwrap();
    let scope = RegionScope::Composite(comp.clone());
    SpaceSets::new(
        &outcome_set(&scope, store, selected, alphabet).unwrap(),
        &procedure_set(&scope, store),
        &composite_info(&comp, store),
    )
}

#[test]
fn acceptance_08_inclusion_chains() {
    criterion(
        8,
        "outcome/procedure/info chains hold in both spaces; at eta = 1 every cross link holds",
        || {
            let mut rng = rng();
            for round in 0..100 {
                let sc = random_scenario(&mut rng);
                let pmf = sc.probability.pmf();
                let binding = sc.probability.binding();

                let mut store = DatumStore::new();
                for (coord, settings, outcomes) in [
                    (binding.a_coord, pmf.a_settings(), pmf.a_outcomes()),
                    (binding.b_coord, pmf.b_settings(), pmf.b_outcomes()),
                ] {
                    for s in settings {
                        for o in outcomes {
                            store.insert(Datum::new(coord, s.clone(), o.clone()));
                        }
                    }
                }
                let mut alphabet: Vec<String> = pmf.a_settings().to_vec();
                for s in pmf.b_settings() {
                    if !alphabet.contains(s) {
                        alphabet.push(s.clone());
                    }
                }
                let selection = sc.probability.selection();
                let mut selected = vec![selection.a_setting.clone()];
                if !selected.contains(&selection.b_setting) {
                    selected.push(selection.b_setting.clone());
                }

                let coords = [binding.a_coord, binding.b_coord];
                let eta = if round == 0 { 1.0 } else { sc.strength.eta() };

                let qg = space_sets(&store, &coords, SpaceTag::Qg, &selected, &alphabet);
                let scaled_store = scale_data(&store, eta).unwrap();
                let scaled_comp = scale_region(
                    &CompositeRegion::from_coords(&coords, SpaceTag::Qg).unwrap(),
                    eta,
                )
                .unwrap();
                let scaled_coords: Vec<f64> =
                    scaled_comp.coords().map(|c| c.into_inner()).collect();
                let s = space_sets(
                    &scaled_store,
                    &scaled_coords,
                    SpaceTag::S,
                    &selected,
                    &alphabet,
                );

                let report = inclusion_report(&qg, &s);
                assert!(
                    report.within_space_chains_hold(),
                    "within-space chain broke: {report:?}"
                );
                if eta == 1.0 {
                    assert!(report.all_hold(), "eta = 1 cross links broke: {report:?}");
                }
            }
        },
    );
}

fn random_qg_scenario_json(rng: &mut ChaCha8Rng) -> String {
    let beta = rng.random_range(0.0..0.99);
    let xa: f64 = rng.random_range(0.1..10.0);
    let xb: f64 = rng.random_range(-10.0..-0.1);
    format!(
        r#"{{
            "beta": {beta},
            "events": [
                {{"id": "O", "role": "coordinator", "x_prime": 0.0}},
                {{"id": "A", "role": "a", "x_prime": {xa}}},
                {{"id": "B", "role": "b", "x_prime": {xb}}}
            ],
            "alphabets": {{"a": ["0", "1"], "b": ["0", "1"]}},
            "settings": {{"a": ["phi"], "b": ["phi"]}},
            "pmf": [
                {{"a_setting": "phi", "b_setting": "phi", "table": [[0.4, 0.1], [0.1, 0.4]]}}
            ],
            "measures": ["entropy"]
        }}"#
    )
}

#[test]
fn acceptance_09_flag_semantics() {
    criterion(
        9,
        "QG scenarios have zero connected flags; lightline counterparts connect both with gradient 1",
        || {
            let mut rng = rng();
            let mut scenarios: Vec<Scenario> = (0..25)
                .map(|_| Scenario::parse(random_qg_scenario_json(&mut rng).as_bytes()).unwrap())
                .collect();
            for name in [
                "correlated_bits.json",
                "qubit_ensemble.json",
                "bsc_channel.json",
                "dephasing_kraus.json",
            ] {
                let bytes = std::fs::read(scenario_path(name)).unwrap();
                scenarios.push(Scenario::parse(&bytes).unwrap());
            }
            for sc in &scenarios {
                let qg_plan = plan_flags(sc).unwrap();
                assert_eq!(qg_plan.connected_count(), 0, "QG flags connected");
                assert!(qg_plan.flags.iter().all(|f| !f.emitted));

                let lifted = lightline_counterpart(sc).unwrap();
                let s_plan = plan_flags(&lifted).unwrap();
                assert_eq!(s_plan.flags.len(), 2);
                assert_eq!(s_plan.connected_count(), 2, "lightline flags disconnected");
                for flag in &s_plan.flags {
                    assert_eq!(flag.gradient, Some(1.0));
                    assert!(flag.emitted);
                }
            }
        },
    );
}

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run_cmk(args: &[&str]) -> Vec<u8> {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_cmk"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "cmk {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

#[test]
fn acceptance_10_cli_determinism() {
    criterion(
        10,
        "two runs per shipped scenario produce byte-identical report, CSV, and SVG output",
        || {
            let qg_scenarios = [
                "correlated_bits.json",
                "qubit_ensemble.json",
                "bsc_channel.json",
                "dephasing_kraus.json",
            ];
            let all_scenarios = [
                "correlated_bits.json",
                "qubit_ensemble.json",
                "bsc_channel.json",
                "dephasing_kraus.json",
                "lightline_flags.json",
            ];

            for name in all_scenarios {
                let path = scenario_path(name);
                let path = path.to_str().unwrap();
                for subcommand in ["transform", "flags", "diagram"] {
                    let a = run_cmk(&[subcommand, "--scenario", path]);
                    let b = run_cmk(&[subcommand, "--scenario", path]);
                    assert_eq!(a, b, "{subcommand} differs on {name}");
                    assert!(!a.is_empty());
                }
            }
            for name in qg_scenarios {
                let path = scenario_path(name);
                let path = path.to_str().unwrap();
                for subcommand in ["equivalence", "measure"] {
                    let a = run_cmk(&[subcommand, "--scenario", path]);
                    let b = run_cmk(&[subcommand, "--scenario", path]);
                    assert_eq!(a, b, "{subcommand} differs on {name}");
                }
            }
            let a = run_cmk(&["fig3"]);
            let b = run_cmk(&["fig3"]);
            assert_eq!(a, b, "fig3 output differs");
        },
    );
}
