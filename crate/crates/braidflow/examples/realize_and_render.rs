//! Building a Hamiltonian with a prescribed braid type, reading it back,
//! and rendering the evidence as SVG.
//!
//! `realize_braid` runs one gated half-turn of adjacent circle slots per
//! letter in disjoint time windows, producing a single smooth time-dependent
//! Hamiltonian whose time-1 map has exactly the requested braid type. The
//! renderer draws both the abstract crossing diagram and the actual strand
//! trajectories in the disk.
//!
//! Run with: cargo run --example realize_and_render

use braidflow::braid::{braid_type, render, BraidWord, ExtractParams};
use braidflow::flow::{integrate, IntegrateParams};
use braidflow::geometry::standard_layout;
use braidflow::rational::rat_int;
use braidflow::stability::realize_braid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let layout = standard_layout(3, &rat_int(0))?;
    let word = BraidWord::from_letters(3, vec![1, -2, 1])?;
    println!("target braid word: {:?}", word.letters);

    let field = realize_braid(&word, &layout)?;
    let bt = braid_type(
        &field,
        &layout,
        &ExtractParams::default(),
        &IntegrateParams::default(),
    )?;
    println!("read back from the flow: {:?}", bt.word.letters);
    println!("same group element: {}", bt.word.equal(&word)?);
    println!("circles permuted: {:?}", bt.circle_permutation);

    // The abstract diagram of the word that was read.
    let out = std::env::temp_dir();
    let braid_path = out.join("braid.svg");
    std::fs::write(&braid_path, render::braid_svg(&bt.word))?;
    println!("wrote crossing diagram to {}", braid_path.display());

    // The actual marked-point trajectories in the disk.
    let ip = IntegrateParams::default();
    let trajs: Vec<_> = (0..layout.k)
        .map(|i| integrate(&field, layout.base_point(i), 0.0, 1.0, &ip))
        .collect::<Result<_, _>>()?;
    let paths: Vec<_> = trajs.iter().map(|tr| move |t: f64| tr.sample(t)).collect();
    let strands_path = out.join("strands.svg");
    std::fs::write(
        &strands_path,
        render::trajectories_svg(&layout, &paths, 512),
    )?;
    println!("wrote strand trajectories to {}", strands_path.display());
    Ok(())
}
