//! Counting and listing the partition families.

use arcact::enumerate::{count, count_by, enumerate, Family, FamilySpec, Labeling, Statistic};
use arcact::{GroupSpec, Result};

fn main() -> Result<()> {
    println!("unlabeled counts for n = 0..=6");
    for family in [Family::Pi, Family::Nc, Family::Nn, Family::PB, Family::PD, Family::NcTildeB, Family::NcTildeD] {
        let groups = match family.labeling() {
            Labeling::Unlabeled => vec![],
            _ => vec![GroupSpec::unlabeled()],
        };
        let counts: Vec<u64> =
            (0..=6).map(|n| FamilySpec::new(family, n, groups.clone()).map(|s| count(&s))).collect::<Result<_>>()?;
        println!("  {:<12} {counts:?}", family.name());
    }

    let spec = FamilySpec::single(Family::Nc, 4, GroupSpec::cyclic(3))?;
    println!("\n{spec}: {} members; by number of arcs {:?}", count(&spec), count_by(&spec, Statistic::Arcs));

    let pair = FamilySpec::pair(Family::PiAb, 3, GroupSpec::cyclic(2), GroupSpec::cyclic(3))?;
    println!("\nmembers of {pair}:");
    for member in enumerate(&pair) {
        println!("  {member}");
    }
    Ok(())
}
