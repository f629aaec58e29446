//! Braid words, the solved word problem, and Garside left normal forms.
//!
//! Words multiply by concatenation and invert by reversing with flipped
//! signs. Equality of group elements is decided through the left normal
//! form: a power of the half twist followed by left-weighted permutation
//! factors, a complete invariant of the element.
//!
//! Run with: cargo run --example garside

use braidflow::braid::{BraidWord, NormalForm};

fn show(label: &str, w: &BraidWord) {
    let nf = NormalForm::of(w);
    let factors: Vec<String> = nf.factors.iter().map(|p| format!("{:?}", p.0)).collect();
    println!(
        "{label:<22} {:?}\n{:<22}   inf {} | {} factor(s): {}",
        w.letters,
        "",
        nf.inf,
        nf.canonical_length(),
        if factors.is_empty() {
            "-".into()
        } else {
            factors.join(" ")
        },
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The defining relations hold on the nose.
    let aba = BraidWord::from_letters(3, vec![1, 2, 1])?;
    let bab = BraidWord::from_letters(3, vec![2, 1, 2])?;
    println!("braid relation 121 = 212: {}", aba.equal(&bab)?);

    let far = BraidWord::from_letters(4, vec![1, 3])?;
    let raf = BraidWord::from_letters(4, vec![3, 1])?;
    println!("far commutation 13 = 31: {}", far.equal(&raf)?);

    // Words that merely look different from words that are different.
    let u = BraidWord::from_letters(3, vec![1, 2, -1])?;
    let v = BraidWord::from_letters(3, vec![-2, 1, 2])?;
    println!("conjugates 12(-1) = (-2)12: {}", u.equal(&v)?);
    let w = BraidWord::from_letters(3, vec![1, -2])?;
    let x = BraidWord::from_letters(3, vec![-2, 1])?;
    println!(
        "but 1(-2) = (-2)1 is {} (adjacent letters do not commute)",
        w.equal(&x)?
    );
    println!();

    // Left normal forms: half-twist power in front, then left-weighted
    // permutation factors (printed in one-line notation).
    show("half twist", &BraidWord::half_twist(3));
    show("generator", &BraidWord::from_letters(3, vec![1])?);
    show("inverse generator", &BraidWord::from_letters(3, vec![-1])?);
    show("121 (= half twist)", &aba);
    show(
        "mixed word",
        &BraidWord::from_letters(3, vec![1, 2, -1, 2, 2])?,
    );
    println!();

    // Group operations: composition, inverse, free reduction, writhe.
    let composed = u.compose(&u.inverse())?;
    println!("u * u^-1 letters    {:?}", composed.letters);
    println!("  freely reduced    {:?}", composed.free_reduce().letters);
    println!("  trivial           {}", composed.is_trivial());
    let braided = aba.compose(&bab)?;
    println!(
        "121 * 212: writhe {} permutation {:?}",
        braided.writhe(),
        braided.permutation().0
    );

    // Writhe and permutation are invariants; the normal form decides even
    // when both agree.
    let full_twist = BraidWord::half_twist(3).compose(&BraidWord::half_twist(3))?;
    println!(
        "full twist: writhe {}, permutation {:?}, trivial {}",
        full_twist.writhe(),
        full_twist.permutation().0,
        full_twist.is_trivial(),
    );
    Ok(())
}
