//! Exact link geometry and the braid-stability threshold.
//!
//! Builds the standard row layouts of `k` disjoint circles in the unit disk,
//! prints their exact rational data, and derives the Hofer-distance threshold
//! below which no perturbation can change the braid type: the minimal
//! positive gap of the area spectrum, divided by 300, divided by `k`.
//!
//! Run with: cargo run --example link_constants

use braidflow::geometry::{check_admissible, stability_threshold, standard_layout};
use braidflow::rational::{fmt_rat, parse_rat, rat_to_f64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (k, eta_text) in [(2, "0"), (3, "0"), (3, "1/16"), (5, "1/100")] {
        let eta = parse_rat(eta_text)?;
        let layout = standard_layout(k, &eta)?;
        println!("standard layout: k = {k}, eta = {eta_text}");
        for (i, c) in layout.circles.iter().enumerate() {
            println!(
                "  circle {i}: center ({}, {}), radius {}",
                fmt_rat(&c.center.0),
                fmt_rat(&c.center.1),
                fmt_rat(&c.radius),
            );
        }
        // Area bookkeeping is exact: k circle areas plus the complement of
        // the disk on the ambient unit-area sphere.
        let areas: Vec<String> = layout.areas.iter().map(fmt_rat).collect();
        println!("  areas (k circles + complement): {}", areas.join(", "));

        let adm = check_admissible(&layout)?;
        println!(
            "  admissible: {} (common circle area lambda = {})",
            adm.admissible,
            adm.lambda
                .as_ref()
                .map(fmt_rat)
                .unwrap_or_else(|| "-".into()),
        );

        let thr = stability_threshold(&layout)?;
        println!("  area-spectrum gap : {}", fmt_rat(&thr.lambda_gap));
        println!(
            "  epsilon(link)     : {} (gap / 300)",
            fmt_rat(&thr.epsilon_link)
        );
        println!(
            "  braid threshold   : {} = {:.3e} (epsilon / k)",
            fmt_rat(&thr.threshold),
            rat_to_f64(&thr.threshold),
        );
        println!();
    }

    // The threshold scales with the spectrum gap, so shrinking eta tightens
    // the spacing of the areas and the certified stability radius with it.
    println!("threshold as eta varies on k = 3:");
    for eta_text in ["0", "1/16", "1/32", "1/64"] {
        let layout = standard_layout(3, &parse_rat(eta_text)?)?;
        let thr = stability_threshold(&layout)?;
        println!(
            "  eta = {:>5}: threshold {}",
            eta_text,
            fmt_rat(&thr.threshold)
        );
    }
    Ok(())
}
