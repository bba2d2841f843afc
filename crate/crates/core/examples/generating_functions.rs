//! Family polynomials, their closed forms and their values at one.

use arcact::poly::{by_route, enumeration_limit, family, sequence_prefix, PolyFamily, Route};

fn main() {
    for f in PolyFamily::all() {
        let values: Vec<String> = sequence_prefix(f, 8).iter().map(|v| v.to_string()).collect();
        println!("{:<10} at 1: {}", f.name(), values.join(", "));
    }
    let n = 4;
    println!("\nBell_B_{n}(x, y) = {}", family(PolyFamily::BellB, n));
    for f in [PolyFamily::BellB, PolyFamily::CatD, PolyFamily::MB] {
        let limit = enumeration_limit(f).min(5);
        let agree = (0..=limit).all(|n| by_route(f, n, Route::Closed) == by_route(f, n, Route::Enumerated));
        println!("{:<6} closed form equals enumeration for n <= {limit}: {agree}", f.name());
    }
}
