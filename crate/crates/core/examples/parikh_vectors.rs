//! Letter-count vectors of words.
//!
//! cargo run --example parikh_vectors

use parikh_kit::parikh::{parikh_add, parikh_of_word};
use parikh_kit::Alphabet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = Alphabet::from_chars("abc");
    let u = parikh_of_word(&["a", "b", "a"], &sigma)?;
    let v = parikh_of_word(&["c", "a"], &sigma)?;
    let uv = parikh_of_word(&["a", "b", "a", "c", "a"], &sigma)?;
    println!("ψ(aba) = {u}, ψ(ca) = {v}, ψ(abaca) = {uv}");
    assert_eq!(parikh_add(&u, &v)?, uv);

    // words over other alphabets are rejected rather than miscounted
    let other = Alphabet::from_chars("xy");
    let w = parikh_of_word(&["x"], &other)?;
    println!(
        "adding vectors over different alphabets: {:?}",
        parikh_add(&u, &w).err()
    );
    println!("unknown letter: {:?}", parikh_of_word(&["z"], &sigma).err());
    Ok(())
}
