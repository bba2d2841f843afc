//! Shift, uncross, halving and the Dyck path bijection.

use arcact::maps::{dyck_from_nonnesting, halve, nonnesting_from_dyck, shift, uncross, uncross_b, unshift};
use arcact::{Ground, GroupSpec, LabeledSetPartition, Result};

fn main() -> Result<()> {
    let unlabeled = GroupSpec::unlabeled();
    let lambda = LabeledSetPartition::parse_text(Ground::a(4), unlabeled.clone(), "{1,3}{2,4}")?;
    let shifted = shift(&lambda)?;
    println!("shift({lambda}) = {shifted}, back: {}", unshift(&shifted)?);

    let nonnesting = LabeledSetPartition::parse_text(Ground::a(5), unlabeled.clone(), "{1,3,5}{2,4}")?;
    let path = dyck_from_nonnesting(&nonnesting)?;
    println!("{nonnesting} is nonnesting; its Dyck path is {path}; back: {}", nonnesting_from_dyck(&path)?);
    println!("uncross({nonnesting}) = {}", uncross(&nonnesting));

    let signed = LabeledSetPartition::parse_text(Ground::b(2), unlabeled, "{-2,1}{-1,2}{0}")?;
    println!("uncross_B({signed}) = {}", uncross_b(&signed)?);
    println!("halve({signed}) = {}", halve(&signed)?);
    Ok(())
}
