//! Linear and semilinear sets: membership with witnesses, union, linear
//! images, simplification.
//!
//! cargo run --example semilinear_sets

use parikh_kit::{LinearMap, LinearSet, NVector, SemilinearSet};

fn v(c: &[u64]) -> NVector {
    NVector::new(c.to_vec())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (1,0) + ⟨(1,1), (0,2)⟩
    let l = LinearSet::new(v(&[1, 0]), vec![v(&[1, 1]), v(&[0, 2])])?;
    for target in [v(&[3, 4]), v(&[3, 3]), v(&[0, 0])] {
        match l.member(&target)? {
            Some(lambda) => println!("{target} = base + {lambda:?} · periods"),
            None => println!("{target} is not a member"),
        }
    }

    // a* ∪ a(aa)* collapses: the second is inside the first
    let a_star = LinearSet::new(v(&[0]), vec![v(&[1])])?;
    let odd = LinearSet::new(v(&[1]), vec![v(&[2])])?;
    let s = SemilinearSet::new(1, vec![a_star, odd])?;
    println!(
        "\n{} components before simplify, {} after",
        s.components().len(),
        s.simplify().components().len()
    );

    // image under (x, y) ↦ x + y
    let sum = LinearMap::new(vec![vec![1, 1]])?;
    let img = SemilinearSet::from_linear(l).image(&sum)?;
    let members: Vec<String> = img
        .enumerate_members(9)
        .iter()
        .map(|m| m.to_string())
        .collect();
    println!("sums of members, up to 9: {}", members.join(" "));
    Ok(())
}
