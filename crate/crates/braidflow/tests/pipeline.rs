//! End-to-end pipeline checks across modules: braid words realized as
//! Hamiltonians, flowed, and extracted back; invariance of the reading under
//! projection and closure choices; functoriality under concatenation; and
//! determinism of the reports.

use braidflow::braid::{braid_type, BraidWord, Closure, ExtractParams};
use braidflow::flow::IntegrateParams;
use braidflow::geometry::{standard_layout, LinkLayout};
use braidflow::hamiltonian::hofer_norm;
use braidflow::rational::{rat_int, rat_to_f64};
use braidflow::stability::{realize_braid, run_stability, ExperimentConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn extract(word: &BraidWord, layout: &LinkLayout) -> BraidWord {
    let h = realize_braid(word, layout).expect("realizable word");
    braid_type(
        &h,
        layout,
        &ExtractParams::default(),
        &IntegrateParams::default(),
    )
    .expect("extraction succeeds")
    .word
}

/// Every word over the given strand count with length up to `max_len`.
fn all_words(strands: usize, max_len: usize) -> Vec<BraidWord> {
    let letters: Vec<i64> = (1..strands as i64).flat_map(|g| [g, -g]).collect();
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v.clone());
                out.push(v);
            }
        }
        frontier = next;
    }
    out.into_iter()
        .map(|w| BraidWord::from_letters(strands, w).unwrap())
        .collect()
}

#[test]
fn realize_then_extract_round_trips() {
    for k in [2usize, 3] {
        let layout = standard_layout(k, &rat_int(0)).unwrap();
        for word in all_words(k, 2) {
            let read = extract(&word, &layout);
            assert!(
                read.equal(&word).unwrap(),
                "k={k}: realized {:?} read back {:?}",
                word.letters,
                read.letters
            );
        }
    }
}

#[test]
fn realize_then_extract_round_trips_random_longer_words() {
    let layout = standard_layout(3, &rat_int(0)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..24 {
        let len = rng.gen_range(3..=4usize);
        let letters: Vec<i64> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..3i64);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let word = BraidWord::from_letters(3, letters).unwrap();
        let read = extract(&word, &layout);
        assert!(
            read.equal(&word).unwrap(),
            "realized {:?} read back {:?}",
            word.letters,
            read.letters
        );
    }
}

#[test]
fn extraction_respects_concatenation() {
    let layout = standard_layout(3, &rat_int(0)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..8 {
        let mut part = || -> BraidWord {
            let len = rng.gen_range(0..=2usize);
            let letters = (0..len)
                .map(|_| {
                    let g = rng.gen_range(1..3i64);
                    if rng.gen_bool(0.5) {
                        g
                    } else {
                        -g
                    }
                })
                .collect();
            BraidWord::from_letters(3, letters).unwrap()
        };
        let (u, v) = (part(), part());
        let uv = u.compose(&v).unwrap();
        let read = extract(&uv, &layout);
        assert!(
            read.equal(&uv).unwrap(),
            "concatenation {:?}*{:?} read back {:?}",
            u.letters,
            v.letters,
            read.letters
        );
    }
}

#[test]
fn reading_is_invariant_under_projection_and_closure() {
    let layout = standard_layout(3, &rat_int(0)).unwrap();
    let word = BraidWord::from_letters(3, vec![1, -2]).unwrap();
    let h = realize_braid(&word, &layout).unwrap();
    let ip = IntegrateParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..4 {
        let angle = rng.gen_range(0.0..std::f64::consts::PI);
        for closure in [Closure::ShorterArc, Closure::Ccw, Closure::Cw] {
            let xp = ExtractParams {
                projection_angle: angle,
                closure,
                ..Default::default()
            };
            let bt = braid_type(&h, &layout, &xp, &ip).unwrap();
            assert!(
                bt.word.equal(&word).unwrap(),
                "angle {angle:.3}, {closure:?}: read {:?}",
                bt.word.letters
            );
        }
    }
}

#[test]
fn realized_distance_upper_bounds_dominate_the_lower_bound() {
    let layout = standard_layout(2, &rat_int(0)).unwrap();
    let thr = braidflow::geometry::stability_threshold(&layout).unwrap();
    let pairs = [
        (vec![1], vec![]),
        (vec![1, 1], vec![1]),
        (vec![-1], vec![1]),
    ];
    for (a, b) in pairs {
        let (u, v) = (
            BraidWord::from_letters(2, a).unwrap(),
            BraidWord::from_letters(2, b).unwrap(),
        );
        assert!(!u.equal(&v).unwrap());
        let (hu, hv) = (
            realize_braid(&u, &layout).unwrap(),
            realize_braid(&v, &layout).unwrap(),
        );
        let diff = hu - hv;
        let est = hofer_norm(&diff, &Default::default()).unwrap();
        assert!(
            est.upper >= rat_to_f64(&thr.threshold),
            "upper {} under threshold {}",
            est.upper,
            rat_to_f64(&thr.threshold)
        );
    }
}

#[test]
fn reports_are_deterministic() {
    let cfg = ExperimentConfig {
        k: 2,
        eta: "0".into(),
        trials: 2,
        seed: 99,
        include_above_threshold: false,
    };
    let a = run_stability(&cfg).unwrap().to_json();
    let b = run_stability(&cfg).unwrap().to_json();
    assert_eq!(
        a, b,
        "same config and seed must give byte-identical reports"
    );

    let layout = standard_layout(2, &rat_int(0)).unwrap();
    let word = BraidWord::from_letters(2, vec![1]).unwrap();
    let h = realize_braid(&word, &layout).unwrap();
    let (xp, ip) = (ExtractParams::default(), IntegrateParams::default());
    let x = braid_type(&h, &layout, &xp, &ip).unwrap();
    let y = braid_type(&h, &layout, &xp, &ip).unwrap();
    assert_eq!(x.word.letters, y.word.letters);
    assert_eq!(x.normal.to_json(), y.normal.to_json());
}
