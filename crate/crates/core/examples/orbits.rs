//! Orbits of two-group families under the linear group.

use arcact::action::{orbit_decomposition, summarize, two_group_families};
use arcact::enumerate::FamilySpec;
use arcact::identities::default_pairs;
use arcact::Result;

fn main() -> Result<()> {
    for family in two_group_families() {
        for (a, b) in default_pairs().into_iter().take(2) {
            let spec = FamilySpec::pair(family, 3, a, b)?;
            let reports = orbit_decomposition(&spec, false)?;
            let summary = summarize(&reports);
            let one_regular_each = reports.iter().all(|r| r.two_regular_count == 1);
            println!(
                "{spec:<28} orbits {:>3}, members {:>4}, sizes {:?}, one 2-regular member each: {one_regular_each}",
                summary.orbits, summary.members, summary.size_histogram
            );
        }
    }
    Ok(())
}
