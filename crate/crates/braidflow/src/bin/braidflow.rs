//! Command-line front end. Every subcommand is a thin wrapper over the
//! library and prints JSON. Exit codes: 0 on success, 1 when a check ran and
//! came back negative (inadmissible link, preservation failure, stability
//! violation, invalid complex), 2 on usage or input errors.

use braidflow::braid::{braid_type, render, BraidWord, ExtractParams};
use braidflow::floer::{theorem_skeleton_check, FilteredComplex, FilteredMorphism};
use braidflow::flow::{export_csv, integrate, link_preservation, IntegrateParams};
use braidflow::geometry::{check_admissible, stability_threshold, standard_layout, LinkLayout};
use braidflow::hamiltonian::{hofer_norm, parse, HoferParams};
use braidflow::rational::{fmt_rat, parse_rat, rat_to_f64};
use braidflow::stability::{run_stability, run_sweep, ExperimentConfig};
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "braidflow",
    version,
    about = "Braid types of link-preserving disk maps"
)]
struct Cli {
    /// Rayon worker threads (defaults to the core count).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Admissibility, area gap, and stability threshold of a link.
    Link {
        /// Number of link circles in the standard row layout.
        #[arg(long)]
        k: Option<usize>,
        /// Admissibility parameter, a rational like 1/16.
        #[arg(long, default_value = "0")]
        eta: String,
        /// Load a layout JSON file instead of building the standard one.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Certified two-sided Hofer norm of a Hamiltonian expression.
    Hofer {
        /// Expression text, or @path to read it from a file.
        #[arg(long)]
        hamiltonian: String,
        #[arg(long, default_value_t = 65)]
        t_nodes: usize,
        #[arg(long, default_value_t = 96)]
        grid: usize,
        #[arg(long, default_value_t = 14)]
        refine: usize,
    },
    /// Integrate the Hamiltonian flow; with --k, check link preservation.
    Flow {
        /// Expression text, or @path to read it from a file.
        #[arg(long)]
        hamiltonian: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "0")]
        eta: String,
        /// Start point for single-trajectory mode.
        #[arg(long, requires = "y")]
        x: Option<f64>,
        #[arg(long, requires = "x")]
        y: Option<f64>,
        /// Write sampled trajectories as CSV (strand,t,x,y).
        #[arg(long)]
        dump_trajectories: Option<PathBuf>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Braid type of the time-1 map relative to the standard link.
    Braid {
        /// Expression text, or @path to read it from a file.
        #[arg(long)]
        hamiltonian: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "0")]
        eta: String,
        /// Write braid.svg and strands.svg here.
        #[arg(long)]
        svg_dir: Option<PathBuf>,
    },
    /// Validate a filtered complex, compute window homology, or run the
    /// skeleton check on a morphism pair.
    Algebra {
        /// JSON file: a complex, {"complex": ...}, or
        /// {"skeleton": {"a", "b", "f", "g", "window": [lo, hi]}}.
        #[arg(long)]
        config: PathBuf,
        /// Open window lower bound, an exact rational like -1/2 or 0.25.
        #[arg(long, requires = "b")]
        a: Option<String>,
        /// Open window upper bound.
        #[arg(long, requires = "a")]
        b: Option<String>,
    },
    /// Run the braid-stability experiment or the half-turn sweep.
    Stability {
        /// Experiment config JSON; flags below override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        eta: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Sweep mode: number of half turns to scan instead of the experiment.
        #[arg(long)]
        sweep: Option<u32>,
    },
    /// Draw a braid word as an SVG diagram.
    Render {
        /// Letters as a comma list, e.g. "1,-2,1".
        #[arg(long, requires = "strands")]
        word: Option<String>,
        #[arg(long)]
        strands: Option<usize>,
        /// Braid word JSON file ({"strands": .., "letters": [..]}).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        svg_dir: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let out = cli.out.clone();
    let code = match run(cli.cmd, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Box<dyn std::error::Error>> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            // A reader that stops early (e.g. `| head`) closes the pipe; treat
            // that as a normal end of output rather than an error.
            if let Err(e) = writeln!(stdout, "{text}") {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    std::process::exit(0);
                }
                return Err(e.into());
            }
        }
    }
    Ok(())
}

/// `--hamiltonian` takes inline expression text, or `@path` to read a file.
fn hamiltonian_text(arg: &str) -> Result<String, Box<dyn std::error::Error>> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(arg.to_string()),
    }
}

fn run(cmd: Cmd, out: &Option<PathBuf>) -> Result<i32, Box<dyn std::error::Error>> {
    match cmd {
        Cmd::Link { k, eta, config } => {
            let layout = match (&config, k) {
                (Some(path), _) => {
                    let v: serde_json::Value =
                        serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    LinkLayout::from_json(&v)?
                }
                (None, Some(k)) => standard_layout(k, &parse_rat(&eta)?)?,
                (None, None) => return Err("need --k or --config".into()),
            };
            let adm = check_admissible(&layout)?;
            let threshold = if adm.admissible {
                let t = stability_threshold(&layout)?;
                serde_json::json!({
                    "lambda_gap": fmt_rat(&t.lambda_gap),
                    "epsilon_link": fmt_rat(&t.epsilon_link),
                    "threshold": fmt_rat(&t.threshold),
                    "threshold_value": rat_to_f64(&t.threshold),
                })
            } else {
                serde_json::Value::Null
            };
            let doc = serde_json::json!({
                "layout": layout.to_json(),
                "admissible": adm.admissible,
                "lambda": adm.lambda.as_ref().map(fmt_rat),
                "surjective_setting": adm.surjective_setting,
                "failures": adm.failures,
                "threshold": threshold,
            });
            emit(&serde_json::to_string_pretty(&doc)?, out)?;
            Ok(if adm.admissible { 0 } else { 1 })
        }

        Cmd::Hofer {
            hamiltonian,
            t_nodes,
            grid,
            refine,
        } => {
            let expr = parse(&hamiltonian_text(&hamiltonian)?)?;
            let est = hofer_norm(
                &expr,
                &HoferParams {
                    t_nodes,
                    grid,
                    refine,
                },
            )?;
            emit(
                &serde_json::to_string_pretty(&serde_json::json!({
                    "lower": est.lower,
                    "upper": est.upper,
                }))?,
                out,
            )?;
            Ok(0)
        }

        Cmd::Flow {
            hamiltonian,
            k,
            eta,
            x,
            y,
            dump_trajectories,
            samples,
        } => {
            let expr = parse(&hamiltonian_text(&hamiltonian)?)?;
            let ip = IntegrateParams::default();
            if let Some(k) = k {
                let layout = standard_layout(k, &parse_rat(&eta)?)?;
                let report = link_preservation(&expr, &layout, 24, 1e-6, &ip)?;
                if let Some(path) = dump_trajectories {
                    let trajs: Result<Vec<_>, _> = (0..layout.k)
                        .map(|i| integrate(&expr, layout.base_point(i), 0.0, 1.0, &ip))
                        .collect();
                    export_csv(std::fs::File::create(path)?, &trajs?, samples)?;
                }
                emit(&serde_json::to_string_pretty(&report)?, out)?;
                Ok(if report.preserved { 0 } else { 1 })
            } else if let (Some(x), Some(y)) = (x, y) {
                let traj = integrate(&expr, (x, y), 0.0, 1.0, &ip)?;
                if let Some(path) = dump_trajectories {
                    export_csv(std::fs::File::create(path)?, &[traj.clone()], samples)?;
                }
                emit(
                    &serde_json::to_string_pretty(&serde_json::json!({
                        "start": [x, y],
                        "end": [traj.end().0, traj.end().1],
                        "accepted_steps": traj.naccept,
                        "rejected_steps": traj.nreject,
                        "field_evaluations": traj.nfev,
                    }))?,
                    out,
                )?;
                Ok(0)
            } else {
                Err("need --k for a preservation check or --x/--y for a trajectory".into())
            }
        }

        Cmd::Braid {
            hamiltonian,
            k,
            eta,
            svg_dir,
        } => {
            let expr = parse(&hamiltonian_text(&hamiltonian)?)?;
            let layout = standard_layout(k, &parse_rat(&eta)?)?;
            let xp = ExtractParams::default();
            let ip = IntegrateParams::default();
            match braid_type(&expr, &layout, &xp, &ip) {
                Ok(bt) => {
                    if let Some(dir) = svg_dir {
                        std::fs::create_dir_all(&dir)?;
                        std::fs::write(dir.join("braid.svg"), render::braid_svg(&bt.word))?;
                        let trajs: Result<Vec<_>, _> = (0..layout.k)
                            .map(|i| integrate(&expr, layout.base_point(i), 0.0, 1.0, &ip))
                            .collect();
                        let trajs = trajs?;
                        let paths: Vec<_> =
                            trajs.iter().map(|tr| move |t: f64| tr.sample(t)).collect();
                        std::fs::write(
                            dir.join("strands.svg"),
                            render::trajectories_svg(&layout, &paths, 512),
                        )?;
                    }
                    let doc = serde_json::json!({
                        "word": { "strands": bt.word.strands, "letters": bt.word.letters },
                        "normal_form": serde_json::from_str::<serde_json::Value>(
                            &bt.normal.to_json()
                        )?,
                        "permutation": bt.circle_permutation,
                        "min_separation": bt.min_separation,
                    });
                    emit(&serde_json::to_string_pretty(&doc)?, out)?;
                    Ok(0)
                }
                Err(braidflow::braid::BraidError::NotPreserved { max_residual }) => {
                    emit(
                        &serde_json::to_string_pretty(&serde_json::json!({
                            "preserved": false,
                            "max_residual": max_residual,
                        }))?,
                        out,
                    )?;
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }

        Cmd::Algebra { config, a, b } => {
            let text = std::fs::read_to_string(&config)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            let bounds = match (&a, &b) {
                (Some(a), Some(b)) => Some((parse_rat(a)?, parse_rat(b)?)),
                _ => None,
            };
            if let Some(sk) = value.get("skeleton") {
                let ca = FilteredComplex::from_json_value(&sk["a"])?;
                let cb = FilteredComplex::from_json_value(&sk["b"])?;
                let f = FilteredMorphism::from_json_value(&sk["f"], &ca, &cb)?;
                let g = FilteredMorphism::from_json_value(&sk["g"], &cb, &ca)?;
                let (lo, hi) = match bounds {
                    Some(w) => w,
                    None => {
                        let w = sk
                            .get("window")
                            .and_then(|w| w.as_array())
                            .filter(|w| w.len() == 2)
                            .ok_or("skeleton needs --a/--b or a `window` pair")?;
                        let bound = |i: usize| -> Result<_, Box<dyn std::error::Error>> {
                            let s = w[i]
                                .as_str()
                                .ok_or("window entries must be rational strings")?;
                            Ok(parse_rat(s)?)
                        };
                        (bound(0)?, bound(1)?)
                    }
                };
                let report = theorem_skeleton_check(&ca, &cb, &f, &g, &lo, &hi);
                let ok = report.shapes_ok
                    && report.f_valid
                    && report.g_valid
                    && report.implication_holds;
                emit(&serde_json::to_string_pretty(&report)?, out)?;
                return Ok(if ok { 0 } else { 1 });
            }
            let complex_value = value.get("complex").unwrap_or(&value);
            match FilteredComplex::from_json_value(complex_value) {
                Ok(full) => {
                    let complex = match &bounds {
                        Some((lo, hi)) => full.window(lo, hi)?,
                        None => full,
                    };
                    let report = complex.validate();
                    if !report.ok {
                        emit(
                            &serde_json::to_string_pretty(&serde_json::json!({
                                "valid": false,
                                "violations": report.violations,
                            }))?,
                            out,
                        )?;
                        return Ok(1);
                    }
                    let doc = serde_json::json!({
                        "valid": true,
                        "dim": complex.dim(),
                        "homology00": complex.homology00(),
                        "homology_total": complex.homology_total(),
                        "spectrum_gap": complex.spectrum_gap().map(|g| fmt_rat(&g)),
                    });
                    emit(&serde_json::to_string_pretty(&doc)?, out)?;
                    Ok(0)
                }
                Err(e) => {
                    emit(
                        &serde_json::to_string_pretty(&serde_json::json!({
                            "valid": false,
                            "error": e.to_string(),
                        }))?,
                        out,
                    )?;
                    Ok(1)
                }
            }
        }

        Cmd::Stability {
            config,
            k,
            eta,
            trials,
            seed,
            sweep,
        } => {
            let mut cfg = match config {
                Some(path) => ExperimentConfig::from_json(&std::fs::read_to_string(path)?)?,
                None => ExperimentConfig {
                    k: k.ok_or("need --config or --k")?,
                    eta: "0".into(),
                    trials: 9,
                    seed: 0,
                    include_above_threshold: true,
                },
            };
            if let Some(k) = k {
                cfg.k = k;
            }
            if let Some(eta) = eta {
                cfg.eta = eta;
            }
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(m) = sweep {
                let report = run_sweep(cfg.k, &parse_rat(&cfg.eta)?, m)?;
                emit(&report.to_json(), out)?;
                return Ok(if report.all_respected { 0 } else { 1 });
            }
            let report = run_stability(&cfg)?;
            emit(&report.to_json(), out)?;
            Ok(if report.all_passed { 0 } else { 1 })
        }

        Cmd::Render {
            word,
            strands,
            config,
            svg_dir,
        } => {
            let braid = match (word, config) {
                (Some(list), _) => {
                    let letters = if list.trim().is_empty() {
                        Vec::new()
                    } else {
                        list.split(',')
                            .map(|s| s.trim().parse::<i64>())
                            .collect::<Result<Vec<_>, _>>()?
                    };
                    BraidWord::from_letters(strands.ok_or("need --strands with --word")?, letters)?
                }
                (None, Some(path)) => BraidWord::from_json(&std::fs::read_to_string(path)?)?,
                (None, None) => return Err("need --word or --config".into()),
            };
            let svg = render::braid_svg(&braid);
            match (svg_dir, out) {
                (Some(dir), _) => {
                    std::fs::create_dir_all(&dir)?;
                    let path = dir.join("braid.svg");
                    std::fs::write(&path, svg)?;
                    println!("{}", path.display());
                }
                (None, Some(path)) => std::fs::write(path, svg)?,
                (None, None) => println!("{svg}"),
            }
            Ok(0)
        }
    }
}
