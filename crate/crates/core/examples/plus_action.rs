//! The additive action of linear partitions, by arcs and by rook matrices.

use arcact::action::{plus, plus_involution, plus_via_matrix};
use arcact::enumerate::{enumerate, Family, FamilySpec};
use arcact::{Ground, GroupSpec, LabeledSetPartition, Result};

fn main() -> Result<()> {
    let z3 = GroupSpec::cyclic(3);
    let lambda = LabeledSetPartition::parse_text(Ground::a(4), z3.clone(), "{1,3}{2,4} (1,3)=1 (2,4)=2")?;
    println!("lambda = {lambda}");
    for alpha in enumerate(&FamilySpec::single(Family::L, 4, z3.clone())?).take(6) {
        let by_arcs = plus(&alpha, &lambda)?;
        assert_eq!(by_arcs, plus_via_matrix(&alpha, &lambda)?);
        println!("  {alpha:<32} + lambda = {by_arcs}");
    }

    let unlabeled = LabeledSetPartition::parse_text(Ground::a(5), GroupSpec::unlabeled(), "{1,2,4}{3}{5}")?;
    let plus_once = plus_involution(&unlabeled)?;
    println!("\n{unlabeled} -> plus involution -> {plus_once} -> {}", plus_involution(&plus_once)?);
    Ok(())
}
