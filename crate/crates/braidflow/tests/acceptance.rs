//! Acceptance gate: one test per release criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`) and enforcing a wall-clock
//! cap. Every criterion checks library output against an oracle computed
//! independently inside this file (exhaustive search, closed forms, or
//! bounded rewriting), never against the library's own machinery.

use braidflow::braid::perm::{left_divides, Perm};
use braidflow::braid::{braid_type, BraidWord, Closure, ExtractParams, NormalForm};
use braidflow::floer::{
    random_complex, theorem_skeleton_check, Arrow, FilteredComplex, FilteredMorphism, Generator,
    MorphismEntry, RandomComplexParams,
};
use braidflow::flow::{integrate, IntegrateParams};
use braidflow::geometry::{lambda_gap, stability_threshold, standard_layout};
use braidflow::hamiltonian::{
    eval, hofer_norm, radial_bump, rotation, swap_pair, swap_rotation, Expr, HoferParams,
};
use braidflow::rational::{parse_rat, rat, rat_int, rat_to_f64, Rat};
use braidflow::stability::{
    braid_distance_lower_bound, hofer_distance_upper, realize_braid, run_stability,
    ExperimentConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// Runs one criterion, prints its verdict line, and turns any failure or
/// overtime into a test failure.
fn criterion(n: u32, name: &str, cap: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let verdict = match &result {
        Ok(()) if elapsed <= cap => "PASS",
        _ => "FAIL",
    };
    println!(
        "criterion {n} ({name}): {verdict} in {:.2}s (cap {:.0}s)",
        elapsed.as_secs_f64(),
        cap.as_secs_f64()
    );
    if let Err(e) = result {
        panic!("criterion {n} ({name}): {e}");
    }
    assert!(
        elapsed <= cap,
        "criterion {n} ({name}): overtime {elapsed:?} > {cap:?}"
    );
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

#[test]
fn criterion_1_threshold_arithmetic() {
    criterion(1, "threshold arithmetic", Duration::from_secs(1), || {
        let t2 = stability_threshold(&standard_layout(2, &rat_int(0)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(t2.lambda_gap == rat(1, 6), "k=2 gap {:?}", t2.lambda_gap);
        ensure!(
            t2.epsilon_link == rat(1, 1800),
            "k=2 eps {:?}",
            t2.epsilon_link
        );
        ensure!(
            t2.threshold == rat(1, 3600),
            "k=2 threshold {:?}",
            t2.threshold
        );

        let eta = parse_rat("1/16").map_err(|e| e.to_string())?;
        let t3 = stability_threshold(&standard_layout(3, &eta).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(t3.lambda_gap == rat(1, 32), "k=3 gap {:?}", t3.lambda_gap);
        ensure!(
            t3.threshold == rat(1, 28800),
            "k=3 threshold {:?}",
            t3.threshold
        );
        Ok(())
    });
}

/// Exact minimum positive value of `sum a_i n_i / q` over integer
/// coefficients `|a_i| <= bound`, by meet-in-the-middle enumeration.
/// Independent of the library's gcd-based formula.
fn bounded_min_positive(numerators: &[i64], q: i64, bound: i64) -> Rat {
    let (left, right) = numerators.split_at(numerators.len() / 2);
    let sums = |part: &[i64]| -> Vec<i64> {
        let mut acc = vec![0i64];
        for &n in part {
            let mut next = Vec::with_capacity(acc.len() * (2 * bound as usize + 1));
            for a in -bound..=bound {
                for &s in &acc {
                    next.push(s + a * n);
                }
            }
            next.sort_unstable();
            next.dedup();
            acc = next;
        }
        acc
    };
    let ls = sums(left);
    let rs = sums(right);
    let mut best: Option<i64> = None;
    for &s in &ls {
        // Smallest r with s + r > 0.
        let idx = rs.partition_point(|&r| s + r <= 0);
        if idx < rs.len() {
            let v = s + rs[idx];
            if best.is_none_or(|b| v < b) {
                best = Some(v);
            }
        }
    }
    Rat::new(
        best.expect("coefficients reach a positive value").into(),
        (2 * q).into(),
    )
}

#[test]
fn criterion_2_gap_oracle_equivalence() {
    criterion(
        2,
        "area-gap oracle equivalence",
        Duration::from_secs(30),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6a70);
            for case in 0..120 {
                let q = rng.gen_range(2..=64i64);
                let m = rng.gen_range(2..=6usize);
                let numerators: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=12i64)).collect();
                let areas: Vec<Rat> = numerators.iter().map(|&n| rat(n, q)).collect();
                let got = lambda_gap(&areas).map_err(|e| e.to_string())?;
                let want = bounded_min_positive(&numerators, q, 12);
                ensure!(
                    got == want,
                    "case {case}: areas {numerators:?}/{q}: library {got:?} vs oracle {want:?}"
                );
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_3_braid_extraction() {
    criterion(
        3,
        "braid extraction invariance",
        Duration::from_secs(60),
        || {
            let layout = standard_layout(2, &rat_int(0)).map_err(|e| e.to_string())?;
            let ip = IntegrateParams::default();
            let half = swap_pair(&layout, 0, 1).map_err(|e| e.to_string())?.expr;
            let full = swap_rotation(&layout, 0, 1, std::f64::consts::TAU)
                .map_err(|e| e.to_string())?
                .expr;
            let sigma1 = BraidWord::from_letters(2, vec![1]).map_err(|e| e.to_string())?;
            let sigma1_sq = BraidWord::from_letters(2, vec![1, 1]).map_err(|e| e.to_string())?;
            let empty = BraidWord::identity(2);

            let mut rng = ChaCha8Rng::seed_from_u64(0xb4a1d);
            let angles: Vec<f64> = (0..8)
                .map(|_| rng.gen_range(0.0..std::f64::consts::PI))
                .collect();
            let closures = [Closure::ShorterArc, Closure::Ccw, Closure::Cw];
            for &angle in &angles {
                for &closure in &closures {
                    let xp = ExtractParams {
                        projection_angle: angle,
                        closure,
                        ..Default::default()
                    };
                    for (name, field, expect) in [
                        ("half twist", &half, &sigma1),
                        ("full twist", &full, &sigma1_sq),
                        ("identity", &Expr::zero(), &empty),
                    ] {
                        let bt = braid_type(field, &layout, &xp, &ip)
                            .map_err(|e| format!("{name} @ {angle:.3}/{closure:?}: {e}"))?;
                        ensure!(
                            bt.word.equal(expect).map_err(|e| e.to_string())?,
                            "{name} @ {angle:.3}/{closure:?}: read {:?}",
                            bt.word.letters
                        );
                        if name == "identity" {
                            ensure!(
                                bt.word.letters.is_empty(),
                                "identity read a nonempty word {:?}",
                                bt.word.letters
                            );
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

/// All length-preserving rewrites of a positive word: adjacent-generator
/// triples `aba -> bab` and far commutations `ab -> ba`. Two positive words
/// are equal in the braid group exactly when connected by these moves, so
/// the closure decides equality for positive words.
fn positive_class(word: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = vec![word.to_vec()];
    seen.insert(word.to_vec());
    while let Some(w) = queue.pop() {
        for p in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[p], w[p + 1]);
            if (a - b).abs() >= 2 {
                let mut next = w.clone();
                next.swap(p, p + 1);
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
            if p + 2 < w.len() && (a - b).abs() == 1 && w[p + 2] == a {
                let mut next = w.clone();
                next[p] = b;
                next[p + 1] = a;
                next[p + 2] = b;
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
    }
    seen
}

#[test]
fn criterion_4_word_problem() {
    criterion(
        4,
        "word-problem soundness",
        Duration::from_secs(120),
        || {
            // Defining relations on every strand count up to 5.
            for k in 2..=5usize {
                for a in 1..k as i64 {
                    for b in 1..k as i64 {
                        let (lhs, rhs) = if (a - b).abs() == 1 {
                            (vec![a, b, a], vec![b, a, b])
                        } else if (a - b).abs() >= 2 {
                            (vec![a, b], vec![b, a])
                        } else {
                            continue;
                        };
                        let u = BraidWord::from_letters(k, lhs).map_err(|e| e.to_string())?;
                        let v = BraidWord::from_letters(k, rhs).map_err(|e| e.to_string())?;
                        ensure!(
                            u.equal(&v).map_err(|e| e.to_string())?,
                            "relation {a},{b} on {k} strands judged unequal"
                        );
                    }
                }
            }

            let mut rng = ChaCha8Rng::seed_from_u64(0x40d);
            let random_word = |rng: &mut ChaCha8Rng, k: usize, len: usize| -> Vec<i64> {
                (0..len)
                    .map(|_| {
                        let g = rng.gen_range(1..k as i64);
                        if rng.gen_bool(0.5) {
                            g
                        } else {
                            -g
                        }
                    })
                    .collect()
            };

            // 500 equal pairs built by inserting a relator substring.
            for case in 0..500 {
                let k = rng.gen_range(2..=4usize);
                let len = rng.gen_range(0..=10usize);
                let base = random_word(&mut rng, k, len);
                let g = rng.gen_range(1..k as i64);
                let relator: Vec<i64> = match rng.gen_range(0..3u8) {
                    0 => vec![g, -g],
                    1 if k >= 3 => {
                        let a = rng.gen_range(1..(k as i64 - 1));
                        vec![a, a + 1, a, -(a + 1), -a, -(a + 1)]
                    }
                    _ if k == 4 => vec![1, 3, -1, -3],
                    _ => vec![-g, g],
                };
                let at = rng.gen_range(0..=base.len());
                let mut inserted = base.clone();
                inserted.splice(at..at, relator);
                let u = BraidWord::from_letters(k, base).map_err(|e| e.to_string())?;
                let v = BraidWord::from_letters(k, inserted).map_err(|e| e.to_string())?;
                ensure!(
                    u.equal(&v).map_err(|e| e.to_string())?,
                    "case {case}: relator insertion judged unequal"
                );
            }

            // 500 unequal pairs, certified either by the exponent sum (a group
            // homomorphism to the integers) or, for same-length positive words,
            // by exhausting the rewrite class.
            let mut distinguished = 0usize;
            let mut guard = 0usize;
            while distinguished < 500 {
                guard += 1;
                ensure!(guard < 20_000, "pair generation stalled at {distinguished}");
                let k = rng.gen_range(2..=4usize);
                if rng.gen_bool(0.6) {
                    let (lu, lv) = (rng.gen_range(0..=10), rng.gen_range(0..=10));
                    let u = random_word(&mut rng, k, lu);
                    let v = random_word(&mut rng, k, lv);
                    let (u, v) = (
                        BraidWord::from_letters(k, u).map_err(|e| e.to_string())?,
                        BraidWord::from_letters(k, v).map_err(|e| e.to_string())?,
                    );
                    if u.writhe() == v.writhe() {
                        continue;
                    }
                    ensure!(
                        !u.equal(&v).map_err(|e| e.to_string())?,
                        "distinct exponent sums judged equal: {:?} vs {:?}",
                        u.letters,
                        v.letters
                    );
                } else {
                    let len = rng.gen_range(3..=8usize);
                    let u: Vec<i64> = (0..len).map(|_| rng.gen_range(1..k as i64)).collect();
                    let v: Vec<i64> = (0..len).map(|_| rng.gen_range(1..k as i64)).collect();
                    let class = positive_class(&u);
                    let same = class.contains(&v);
                    let (uw, vw) = (
                        BraidWord::from_letters(k, u.clone()).map_err(|e| e.to_string())?,
                        BraidWord::from_letters(k, v.clone()).map_err(|e| e.to_string())?,
                    );
                    let judged = uw.equal(&vw).map_err(|e| e.to_string())?;
                    ensure!(
                    judged == same,
                    "positive words {u:?} vs {v:?}: rewrite class says {same}, library {judged}"
                );
                    if !same {
                        distinguished += 1;
                    }
                }
            }

            // Divisibility against the inversion-set oracle, exhaustively for
            // every pair of permutations on up to 5 points, plus the descent
            // formulas for the one-generator divisors on each side.
            fn all_perms(k: usize) -> Vec<Perm> {
                let mut out = Vec::new();
                let mut items: Vec<usize> = (0..k).collect();
                fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Perm>) {
                    if left.is_empty() {
                        out.push(Perm(cur.clone()));
                        return;
                    }
                    for i in 0..left.len() {
                        let v = left.remove(i);
                        cur.push(v);
                        rec(cur, left, out);
                        cur.pop();
                        left.insert(i, v);
                    }
                }
                rec(&mut Vec::new(), &mut items, &mut out);
                out
            }
            fn inversions(p: &Perm) -> BTreeSet<(usize, usize)> {
                let v = &p.0;
                let mut inv = BTreeSet::new();
                for i in 0..v.len() {
                    for j in i + 1..v.len() {
                        if v[i] > v[j] {
                            inv.insert((i, j));
                        }
                    }
                }
                inv
            }
            for k in 2..=5usize {
                let perms = all_perms(k);
                for a in &perms {
                    let ia = inversions(a);
                    for b in &perms {
                        let oracle = ia.is_subset(&inversions(b));
                        ensure!(
                            left_divides(a, b) == oracle,
                            "divisibility mismatch at k={k}: {:?} | {:?}",
                            a.0,
                            b.0
                        );
                    }
                }
                for p in &perms {
                    let starts: Vec<usize> = (0..k - 1)
                        .filter(|&i| {
                            inversions(&Perm::transposition(k, i)).is_subset(&inversions(p))
                        })
                        .collect();
                    ensure!(
                        p.left_descents() == starts,
                        "start-set formula fails at {:?}",
                        p.0
                    );
                    let pinv = p.inverse();
                    let finishes: Vec<usize> = (0..k - 1)
                        .filter(|&i| {
                            inversions(&Perm::transposition(k, i)).is_subset(&inversions(&pinv))
                        })
                        .collect();
                    ensure!(
                        p.right_descents() == finishes,
                        "finish-set formula fails at {:?}",
                        p.0
                    );
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_5_stability_experiment() {
    criterion(5, "stability experiment", Duration::from_secs(300), || {
        for (k, seed) in [(2usize, 2026u64), (3, 2027)] {
            let report = run_stability(&ExperimentConfig {
                k,
                eta: "0".into(),
                trials: 20,
                seed,
                include_above_threshold: true,
            })
            .map_err(|e| e.to_string())?;
            ensure!(
                report.trials.len() == 20,
                "k={k}: ran {} trials",
                report.trials.len()
            );
            for t in &report.trials {
                ensure!(
                    t.below_threshold,
                    "k={k} trial {}: certified upper {} not below threshold",
                    t.index,
                    t.hofer_upper
                );
                ensure!(t.preserved, "k={k} trial {}: link not preserved", t.index);
                ensure!(
                    t.braid_unchanged,
                    "k={k} trial {}: braid type moved",
                    t.index
                );
            }
            ensure!(report.all_passed, "k={k}: verdict false");
        }
        Ok(())
    });
}

#[test]
fn criterion_6_distance_corollary() {
    criterion(
        6,
        "pseudometric corollary",
        Duration::from_secs(300),
        || {
            let layout = standard_layout(3, &rat_int(0)).map_err(|e| e.to_string())?;
            let thr = stability_threshold(&layout).map_err(|e| e.to_string())?;
            let hp = HoferParams::default();
            let mut rng = ChaCha8Rng::seed_from_u64(0xc0_5011);
            let mut checked = 0usize;
            while checked < 20 {
                let word = |rng: &mut ChaCha8Rng| -> Result<BraidWord, String> {
                    let len = rng.gen_range(0..=3usize);
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
                    BraidWord::from_letters(3, letters).map_err(|e| e.to_string())
                };
                let (u, v) = (word(&mut rng)?, word(&mut rng)?);
                let (nu, nv) = (NormalForm::of(&u), NormalForm::of(&v));
                if nu == nv {
                    continue;
                }
                let bound = braid_distance_lower_bound(&nu, &nv, &thr);
                ensure!(
                    bound == thr.threshold,
                    "distinct pair bound {bound:?} differs from threshold {:?}",
                    thr.threshold
                );
                let (hu, hv) = (
                    realize_braid(&u, &layout).map_err(|e| e.to_string())?,
                    realize_braid(&v, &layout).map_err(|e| e.to_string())?,
                );
                let upper = hofer_distance_upper(&hu, &hv, &hp).map_err(|e| e.to_string())?;
                ensure!(
                    upper >= rat_to_f64(&bound),
                    "realized upper {upper} under the lower bound {}",
                    rat_to_f64(&bound)
                );
                checked += 1;
            }
            // Equal braid types give the trivial bound.
            let w = BraidWord::from_letters(3, vec![1, 2]).map_err(|e| e.to_string())?;
            let z = braid_distance_lower_bound(&NormalForm::of(&w), &NormalForm::of(&w), &thr);
            ensure!(z == rat_int(0), "equal pair bound {z:?} nonzero");
            Ok(())
        },
    );
}

#[test]
fn criterion_7_hofer_accuracy() {
    criterion(
        7,
        "certified Hofer accuracy",
        Duration::from_secs(30),
        || {
            let hp = HoferParams::default();
            // Time-independent bumps: the oscillation is exactly the amplitude.
            for (delta, center, inner, outer) in [
                (0.5, (0.0, 0.0), 0.2, 0.5),
                (0.8, (0.15, -0.1), 0.1, 0.4),
                (0.25, (-0.3, 0.2), 0.15, 0.35),
            ] {
                let bump = radial_bump(center, delta, inner, outer).map_err(|e| e.to_string())?;
                let est = hofer_norm(&bump, &hp).map_err(|e| e.to_string())?;
                ensure!(
                    est.lower <= delta && delta <= est.upper,
                    "bump {delta}: interval [{}, {}] misses the true norm",
                    est.lower,
                    est.upper
                );
                ensure!(
                    est.upper - est.lower < 1e-3,
                    "bump {delta}: width {} too wide",
                    est.upper - est.lower
                );

                // Sinusoidal modulation integrates |sin| to 2/pi.
                let modulated =
                    (Expr::constant(std::f64::consts::TAU) * Expr::T).sin_of() * bump.clone();
                let truth = delta * 2.0 / std::f64::consts::PI;
                let est = hofer_norm(&modulated, &hp).map_err(|e| e.to_string())?;
                ensure!(
                    est.lower <= truth && truth <= est.upper,
                    "modulated {delta}: interval [{}, {}] misses {truth}",
                    est.lower,
                    est.upper
                );
                ensure!(
                    est.upper - est.lower < 1e-3,
                    "modulated {delta}: width {} too wide",
                    est.upper - est.lower
                );
            }
            // The zero Hamiltonian reports the exact point interval.
            let z = hofer_norm(&Expr::zero(), &hp).map_err(|e| e.to_string())?;
            ensure!(
                z.lower == 0.0 && z.upper == 0.0,
                "zero norm [{}, {}]",
                z.lower,
                z.upper
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_8_filtered_algebra() {
    criterion(8, "filtered-algebra suite", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa15eb4a);
        for case in 0..200u64 {
            let params = RandomComplexParams {
                pieces: rng.gen_range(1..=5),
                mixed_layers: true,
                denom: 64,
            };
            let (c, stats) = random_complex(case.wrapping_mul(0x9e37) ^ 0xf1a7, &params);
            ensure!(c.dim() <= 40, "case {case}: {} generators", c.dim());
            let rep = c.validate();
            ensure!(rep.ok, "case {case}: invalid: {:?}", rep.violations);
            ensure!(rep.dd_zero, "case {case}: total square nonzero");
            ensure!(rep.d00_squared_zero, "case {case}: (0,0) square nonzero");
            ensure!(
                rep.mixed_10_zero && rep.mixed_01_zero,
                "case {case}: mixed identity fails"
            );
            ensure!(
                c.homology00() == stats.h00,
                "case {case}: homology {} vs constructed {}",
                c.homology00(),
                stats.h00
            );

            // Window subadditivity across a random middle cut; bounds sit on
            // the half-grid so they never touch the spectrum.
            let a = rat(-1, 128);
            let b = rat(2 * rng.gen_range(0..200i64) + 1, 128);
            let cc = rat(1001, 128);
            let (hac, hab, hbc) = (
                c.window(&a, &cc).map_err(|e| e.to_string())?.homology00(),
                c.window(&a, &b).map_err(|e| e.to_string())?.homology00(),
                c.window(&b, &cc).map_err(|e| e.to_string())?.homology00(),
            );
            ensure!(hac <= hab + hbc, "case {case}: {hac} > {hab} + {hbc}");

            // Split injection into the complex plus a far-away acyclic pair:
            // the round trip is the identity, so the skeleton check must
            // certify injectivity of the inclusion.
            if case % 10 == 0 {
                let mut generators = c.generators.clone();
                let mut arrows = c.arrows.clone();
                let lo = generators.len();
                generators.push(Generator {
                    name: "pad_lo".into(),
                    action: rat_int(-5),
                });
                generators.push(Generator {
                    name: "pad_hi".into(),
                    action: rat(-49, 10),
                });
                arrows.push(Arrow {
                    src: lo + 1,
                    dst: lo,
                    label: (0, 0),
                });
                let padded = FilteredComplex::new(generators, arrows).map_err(|e| e.to_string())?;
                let incl = FilteredMorphism {
                    shift: rat_int(0),
                    entries: (0..c.dim())
                        .map(|i| MorphismEntry {
                            src: i,
                            dst: i,
                            label: (0, 0),
                        })
                        .collect(),
                };
                let proj = FilteredMorphism {
                    shift: rat_int(0),
                    entries: (0..c.dim())
                        .map(|i| MorphismEntry {
                            src: i,
                            dst: i,
                            label: (0, 0),
                        })
                        .collect(),
                };
                let rep = theorem_skeleton_check(
                    &c,
                    &padded,
                    &incl,
                    &proj,
                    &rat(-1, 128),
                    &rat(1001, 128),
                );
                ensure!(
                    rep.f_valid && rep.g_valid,
                    "case {case}: morphisms rejected"
                );
                ensure!(
                    rep.composed_is_canonical,
                    "case {case}: round trip not identity"
                );
                ensure!(
                    rep.f_injective && rep.implication_holds,
                    "case {case}: injectivity not certified"
                );
            }
        }

        // The separate layer identities are not redundant: two canceling
        // cross-layer paths square to zero in total while both layer
        // identities fail, and validate must say so.
        let cross = FilteredComplex::new(
            vec![
                Generator {
                    name: "z".into(),
                    action: rat_int(0),
                },
                Generator {
                    name: "y".into(),
                    action: rat_int(1),
                },
                Generator {
                    name: "v".into(),
                    action: rat_int(1),
                },
                Generator {
                    name: "x".into(),
                    action: rat_int(2),
                },
            ],
            vec![
                Arrow {
                    src: 3,
                    dst: 1,
                    label: (0, 0),
                },
                Arrow {
                    src: 3,
                    dst: 2,
                    label: (1, 0),
                },
                Arrow {
                    src: 1,
                    dst: 0,
                    label: (0, 0),
                },
                Arrow {
                    src: 2,
                    dst: 0,
                    label: (0, 0),
                },
            ],
        )
        .map_err(|e| e.to_string())?;
        let rep = cross.validate();
        ensure!(
            rep.dd_zero && !rep.d00_squared_zero && !rep.mixed_10_zero && !rep.ok,
            "cross-layer counterexample not flagged: {rep:?}"
        );
        Ok(())
    });
}

#[test]
fn criterion_9_flow_gates() {
    criterion(9, "flow quality gates", Duration::from_secs(30), || {
        let ip = IntegrateParams::default();
        let center = (0.1, -0.2);
        let angle = 1.9f64;
        let field = rotation(center, angle, 0.2, 0.35).map_err(|e| e.to_string())?;

        // Rigid-zone endpoint against the closed-form rotation.
        let (dx, dy) = (0.12, 0.03);
        let start = (center.0 + dx, center.1 + dy);
        let traj = integrate(&field, start, 0.0, 1.0, &ip).map_err(|e| e.to_string())?;
        let want = (
            center.0 + dx * angle.cos() - dy * angle.sin(),
            center.1 + dx * angle.sin() + dy * angle.cos(),
        );
        let (ex, ey) = traj.end();
        let err = ((ex - want.0).powi(2) + (ey - want.1).powi(2)).sqrt();
        ensure!(err < 1e-8, "rotation endpoint error {err:e}");

        // Autonomous energy conservation along a taper-zone trajectory.
        let start = (center.0 + 0.27, center.1);
        let traj = integrate(&field, start, 0.0, 1.0, &ip).map_err(|e| e.to_string())?;
        let h0 = eval(&field, 0.0, start.0, start.1).map_err(|e| e.to_string())?;
        let mut drift = 0.0f64;
        for step in 0..=200 {
            let t = step as f64 / 200.0;
            let (x, y) = traj.sample(t);
            let h = eval(&field, t, x, y).map_err(|e| e.to_string())?;
            drift = drift.max((h - h0).abs());
        }
        ensure!(drift < 1e-7, "energy drift {drift:e}");

        // Area preservation of a genuinely sheared region: flow a polygon
        // approximating a triangle that straddles the taper annulus and
        // compare shoelace areas. The image edges spiral across the shear
        // layer, so the polygon needs a fine chord length: the chord error
        // shrinks as 1/n^2 and dominates the integrator tolerance.
        let tri = [(0.28, -0.18), (0.52, -0.05), (0.38, 0.12)];
        let n = 16_000usize;
        let mut before = Vec::with_capacity(n);
        for i in 0..n {
            let t = 3.0 * i as f64 / n as f64;
            let seg = (t as usize).min(2);
            let s = t - seg as f64;
            let (p, q) = (tri[seg], tri[(seg + 1) % 3]);
            before.push((p.0 + s * (q.0 - p.0), p.1 + s * (q.1 - p.1)));
        }
        let shoelace = |pts: &[(f64, f64)]| -> f64 {
            let mut a = 0.0;
            for i in 0..pts.len() {
                let (x0, y0) = pts[i];
                let (x1, y1) = pts[(i + 1) % pts.len()];
                a += x0 * y1 - x1 * y0;
            }
            a / 2.0
        };
        let area0 = shoelace(&before);
        let after: Result<Vec<(f64, f64)>, String> = before
            .iter()
            .map(|&p| {
                integrate(&field, p, 0.0, 1.0, &ip)
                    .map(|t| t.end())
                    .map_err(|e| e.to_string())
            })
            .collect();
        let area1 = shoelace(&after?);
        let rel = ((area1 - area0) / area0).abs();
        ensure!(
            rel < 1e-5,
            "area drift {rel:e} (before {area0}, after {area1})"
        );
        Ok(())
    });
}
