//! Closed-form embedding between chains and two-leg trees, at sizes far
//! beyond anything that could be materialized, cross-checked on small ones.

use num_bigint::BigUint;
use weak_tree::embedding::inf_embeds;
use weak_tree::families::{desc_size, expand, family_embeds, TreeDescriptor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let huge = BigUint::from(1u8) << 200u32;
    let a = TreeDescriptor::two_leg(1u32, huge.clone(), huge.clone())?;
    let b = TreeDescriptor::two_leg(2u32, huge.clone() + 1u32, huge.clone())?;
    let c = TreeDescriptor::Chain(huge.clone() * 3u32);
    println!("|a| = {}", desc_size(&a));
    println!("a into b: {}", family_embeds(&a, &b)?);
    println!("b into a: {}", family_embeds(&b, &a)?);
    println!("a into c: {}", family_embeds(&a, &c)?);
    println!(
        "chain:{} into a: {}",
        huge,
        family_embeds(&TreeDescriptor::Chain(huge.clone()), &a)?
    );

    let small: Vec<TreeDescriptor> = [
        "chain:4",
        "twoleg:1:2:1",
        "twoleg:2:2:2",
        "twoleg:1:3:3",
        "explicit:(()()())",
    ]
    .iter()
    .map(|s| s.parse())
    .collect::<Result<_, _>>()?;
    let mut agree = 0;
    for x in &small {
        for y in &small {
            let explicit = inf_embeds(&expand(x, 64)?, &expand(y, 64)?);
            assert_eq!(family_embeds(x, y)?, explicit);
            agree += 1;
        }
    }
    println!("{agree} small pairs agree with the explicit check");
    Ok(())
}
