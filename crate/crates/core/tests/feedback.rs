use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swld::codec::{feedback_run, FeedbackDecoder, FeedbackSession};
use swld::correlation::{CorrelationModel, WindowPolicy};
use swld::crc::CrcSpec;
use swld::gf::{Field, Symbol};
use swld::listdecode::{gs_radius, GsConfig};
use swld::planner::{plan_feedback, plan_feedback_runtime, Family};
use swld::rscode::RsCode;

#[test]
fn incremental_syndromes_match_one_shot_for_every_rung_pair() {
    let field = Field::new(8).unwrap();
    let sched = plan_feedback(256, 255, 0.34, 1e-3, Family::Rs, WindowPolicy::Fixed { l: 3, h: 171 }).unwrap();
    let codes: Vec<RsCode> = sched.rungs.iter().map(|r| RsCode::new(field.clone(), r.k).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    for _ in 0..100 {
        let x: Vec<Symbol> = (0..255).map(|_| rng.gen_range(0..256)).collect();
        let mut s = FeedbackSession::new(sched.clone(), field.clone(), CrcSpec::default_for(&field)).unwrap();
        let mut prev = codes[0].syndrome(&x).unwrap();
        let first = s.encode_step(&x).unwrap();
        assert_eq!(first.syndrome, prev);
        for code in &codes[1..] {
            let inc = s.encode_step(&x).unwrap();
            assert_eq!(inc.k, code.k());
            prev.extend(inc.syndrome);
            assert_eq!(prev, code.syndrome(&x).unwrap());
        }
    }
}

#[test]
fn gf16_runs_stop_at_the_first_sufficient_rung() {
    let field = Field::new(4).unwrap();
    let crc = CrcSpec::default_for(&field);
    let sched = plan_feedback_runtime(16, 15, 0.2, 1e-3, WindowPolicy::Fixed { l: 0, h: 13 }, 1).unwrap();
    let cfg = GsConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let (mut runs, mut wrong) = (0, 0);
    for e in 0..=13 {
        let expected = sched.rungs.iter().position(|r| gs_radius(15, r.k, 1).unwrap() >= e).unwrap();
        for _ in 0..20 {
            let x: Vec<Symbol> = (0..15).map(|_| rng.gen_range(0..16)).collect();
            let y = swld::correlation::add_exact_errors(&x, e, 16, &mut rng);
            let run = feedback_run(&x, &y, &sched, &cfg, &crc).unwrap();
            let rounds = run.transcript.len();
            runs += 1;
            match run.outcome.recovered.as_deref() {
                // x is out of reach of every earlier rung.
                Some(r) if r == &x[..] => assert_eq!(rounds - 1, expected),
                // A two-symbol checksum over GF(16) collides now and then.
                Some(_) => wrong += 1,
                // Reaching the right rung can still fail on an ambiguous checksum.
                None => assert!(rounds > expected),
            }
        }
    }
    assert!(wrong * 20 < runs, "{wrong} wrong of {runs}");
}

#[test]
fn mean_rate_tracks_runtime_schedule() {
    let field = Field::new(8).unwrap();
    let crc = CrcSpec::default_for(&field);
    let cfg = GsConfig::default();
    let sched = plan_feedback_runtime(256, 255, 0.34, 1e-3, WindowPolicy::EqualSplit, cfg.multiplicity).unwrap();
    let decoder = FeedbackDecoder::new(sched.clone(), crc).unwrap();
    let model = CorrelationModel::new(field, 0.34, 402).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(403);
    let trials = 2000;
    let mut total = 0.0;
    for _ in 0..trials {
        let x: Vec<Symbol> = (0..255).map(|_| rng.gen_range(0..256)).collect();
        let (y, _) = model.sample_side_info_with(&x, &mut rng);
        total += decoder.run(&x, &y, &cfg).unwrap().realized_rate();
    }
    let mean = total / trials as f64;
    assert!((mean - sched.expected_rate_with_crc).abs() < 0.01, "mean {mean} vs {}", sched.expected_rate_with_crc);
}
