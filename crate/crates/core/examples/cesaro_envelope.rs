//! The Cesàro mean C|x|, its iterate, and the decreasing envelope x̂.

use cesaro_spaces::cesaro::{certified_tail_sup, cesaro_iterate, envelope, envelope_symbolic};
use cesaro_spaces::sequence::SymbolicSequence;

fn main() -> cesaro_spaces::Result<()> {
    let e1 = SymbolicSequence::basis(1)?;
    let view = e1.truncate(5)?;
    println!("C e_1   = {:.4?}", cesaro_iterate(&view, 1)?.terms);
    println!("C² e_1  = {:.4?}", cesaro_iterate(&view, 2)?.terms);

    let x = SymbolicSequence::spike(-1.0, 0.0)?;
    let n = 16;
    let tail = certified_tail_sup(&x, n as u64)?;
    println!("x̂ of spike(-1, 0), first {n} terms: {:?}", envelope(&x.truncate(n)?, tail)?.terms);
    println!("closed form: {}", serde_json::to_string(&envelope_symbolic(&x)?).expect("serializable"));
    Ok(())
}
