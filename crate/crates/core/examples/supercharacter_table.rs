//! A supercharacter table and the counts read off it.

use arcact::superchar::{count_report, product_rule_report, supercharacter_table, SubgroupSpec};
use arcact::Result;

fn main() -> Result<()> {
    let table = supercharacter_table(SubgroupSpec::a(3, 3)?, 1_000_000)?;
    let doc = table.to_json()?;
    println!("{} of order {}", doc.group, doc.order);
    for row in &doc.rows {
        println!("  {:<28} degree {:<3} norm {:<3} {}", row.index_text, row.degree, row.norm, row.values.join(" | "));
    }
    let counts = count_report(&table)?;
    println!(
        "distinct {} (expected {}), irreducible {} (expected {}), product rule holds: {}",
        counts.num_distinct,
        counts.expected_distinct,
        counts.num_irreducible,
        counts.expected_irreducible,
        product_rule_report(&table)?.passed()
    );

    let type_b = count_report(&supercharacter_table(SubgroupSpec::b(2, 3)?, 1_000_000)?)?;
    println!(
        "{}: distinct {}, irreducible {}, passed {}",
        type_b.group,
        type_b.num_distinct,
        type_b.num_irreducible,
        type_b.passed()
    );
    Ok(())
}
