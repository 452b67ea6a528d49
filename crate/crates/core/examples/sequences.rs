//! Building symbolic sequences, evaluating terms and truncating them.

use cesaro_spaces::sequence::SymbolicSequence;

fn main() -> cesaro_spaces::Result<()> {
    let families = [
        SymbolicSequence::power_log(0.5, 1.0)?,
        SymbolicSequence::spike(-0.5, 0.0)?,
        SymbolicSequence::basis(3)?,
        serde_json::from_str(r#"{"family":"finite","values":[1,-2,0.5]}"#).expect("valid JSON"),
    ];
    for x in &families {
        let terms: Vec<f64> = (1..=8).map(|n| x.evaluate(n)).collect::<Result<_, _>>()?;
        println!("{}", serde_json::to_string(x).expect("serializable"));
        println!("  x_1..x_8 = {terms:.4?}");
        println!("  nonincreasing from n = {:?}", x.tail_monotone_index());
    }
    // invalid parameters are rejected at construction
    println!("power_log(-1, 0): {}", SymbolicSequence::power_log(-1.0, 0.0).unwrap_err());
    Ok(())
}
