//! Running registry checks, one at a time and all together.

use arcact::identities::{registry, run, run_all, Mode, Params, Profile};
use arcact::Result;

fn main() -> Result<()> {
    println!("{} registry entries", registry().len());
    for result in run("riordan", None, Profile::Desk, &Params::default())? {
        println!("{} [{}] {} -> {:?}", result.id, result.mode, result.range, result.status);
    }
    let params = Params { n_max: Some(4), ..Default::default() };
    for result in run("orbit-main", Some(Mode::Structural), Profile::Desk, &params)? {
        println!("{} [{}] {} -> {:?}", result.id, result.mode, result.range, result.status);
    }
    let report = run_all(Profile::Quick, &[], None)?;
    println!("quick profile: {} passed, {} failed", report.passed, report.failed);
    Ok(())
}
