//! Comparing a computed sequence with a b-file.
//!
//! Uses a local b-file holding the Dowling numbers; with `ARCACT_OEIS_DIR`
//! pointing at downloaded b-files, `oeis_check` reads those instead.

use arcact::oeis::{compare, known_references, oeis_check, parse_bfile, CheckedSequence, OeisRef};
use arcact::poly::PolyFamily;
use arcact::Result;

const DOWLING: &str = "# Dowling numbers\n0 1\n1 2\n2 6\n3 24\n4 116\n5 648\n6 4088\n";

fn main() -> Result<()> {
    let reference = OeisRef { id: "A007405".into(), source: "inline".into(), values: parse_bfile(DOWLING)? };
    let bell_b = CheckedSequence::Family(PolyFamily::BellB);
    let good = compare(bell_b, &reference, 0, 6);
    println!("Bell_B(1) against A007405: matched {} over {} terms", good.matched, good.compared);
    let shifted = compare(bell_b, &reference, 1, 6);
    println!("with offset 1: first mismatch {:?}", shifted.mismatch);

    println!("\nknown matches:");
    for k in known_references() {
        match oeis_check(&k.sequence.name(), k.oeis_id, k.offset, 12) {
            Ok(report) => println!("  {:<18} {} matched {}", k.sequence.name(), k.oeis_id, report.matched),
            Err(e) => println!("  {:<18} {} skipped: {e}", k.sequence.name(), k.oeis_id),
        }
    }
    Ok(())
}
