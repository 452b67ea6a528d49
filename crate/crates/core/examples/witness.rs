//! The catalog of separating examples and one fully built witness.

use cesaro_spaces::witness::{build_witness, list_claims};

fn main() -> cesaro_spaces::Result<()> {
    for claim in list_claims() {
        println!("{:28} {}", claim.id, claim.statement);
    }
    let w = build_witness("d-plus-proper", Some(2.0), Some(3.0))?;
    println!("\nwitness sequence: {}", serde_json::to_string(&w.sequence).expect("serializable"));
    for a in &w.assertions {
        println!("  {:?} in {}: expected {:?}, got {:?}", a.subject, a.space, a.expected, a.verdict.status);
    }
    for e in &w.numeric_evidence {
        println!("  {} ∈ [{:.4}, {:.4}]", e.quantity, e.enclosure.lo, e.enclosure.hi);
    }
    Ok(())
}
