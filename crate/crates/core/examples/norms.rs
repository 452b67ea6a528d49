//! Certified norm enclosures on the three scales, including a divergent one.

use cesaro_spaces::norms::{ces_norm, d_norm, lp_norm};
use cesaro_spaces::sequence::SymbolicSequence;

fn main() -> cesaro_spaces::Result<()> {
    let harmonic = SymbolicSequence::power_log(1.0, 0.0)?;
    let e = lp_norm(&harmonic, 2.0, 1_000_000)?;
    println!("‖(1/n)‖_2      ∈ [{:.10}, {:.10}]  ({:?})", e.lo, e.hi, e.method);

    let e1 = SymbolicSequence::basis(1)?;
    let e = ces_norm(&e1, 2.0, 1_000_000)?;
    println!("‖e_1‖_ces(2)   ∈ [{:.10}, {:.10}]  width {:.1e}", e.lo, e.hi, e.width());

    let e = d_norm(&SymbolicSequence::basis(4)?, 2.0, 100)?;
    println!("‖e_4‖_d(2)     = {}", e.lo);

    let slow = SymbolicSequence::power_log(0.5, 0.0)?;
    let e = lp_norm(&slow, 2.0, 10_000)?;
    println!("‖n^-1/2‖_2     ≥ {:.4}, {:?}", e.lo, e.method);
    if let Some(cert) = &e.certificate {
        println!("  certificate: {}", serde_json::to_string(cert).expect("serializable"));
    }
    Ok(())
}
