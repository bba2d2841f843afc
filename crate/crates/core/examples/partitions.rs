//! Building, printing and classifying labeled set partitions.

use arcact::{Ground, GroupSpec, LabeledSetPartition, Result};

fn main() -> Result<()> {
    let z3 = GroupSpec::cyclic(3);
    let lambda =
        LabeledSetPartition::parse_text(Ground::a(7), z3.clone(), "{1,3,4,7}{2,6}{5} (1,3)=1 (3,4)=2 (4,7)=1 (2,6)=2")?;

    println!("text:       {}", lambda.to_text());
    println!("blocks:     {:?}", lambda.blocks());
    println!("arcs:       {} ({} cover arcs)", lambda.arc_count(), lambda.cover_count());
    println!("singletons: {}", lambda.singleton_count());
    println!("json:       {}", serde_json::to_string(&lambda.to_json()).expect("serializable"));
    println!("flags:      {:?}", lambda.classify());
    println!("\n{}", lambda.render_ascii());

    let rook = lambda.to_rook();
    println!("rook matrix entries: {:?}", rook.entries.keys().collect::<Vec<_>>());
    let back = LabeledSetPartition::from_rook(Ground::a(7), z3, &rook)?;
    assert_eq!(back, lambda);

    let signed = LabeledSetPartition::parse_text(Ground::b(2), GroupSpec::unlabeled(), "{-2,1}{-1,2}{0}")?;
    println!("type B partition {signed} is type symmetric: {}", signed.classify().type_symmetric);
    println!("its negation: {}", signed.negate()?);
    Ok(())
}
