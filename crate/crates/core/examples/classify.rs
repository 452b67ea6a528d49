//! Membership verdicts at exact, plus and minus grades, for x and for its Cesàro images.

use cesaro_spaces::classify::{cesaro_class, classify, Subject};
use cesaro_spaces::sequence::SymbolicSequence;
use cesaro_spaces::space::SpaceSpec;

fn main() -> cesaro_spaces::Result<()> {
    let x = SymbolicSequence::power_log(0.5, 0.0)?;
    println!("class of C|x|: {}", serde_json::to_string(&cesaro_class(&x)).expect("serializable"));
    for space in ["ell:2", "ell:2+", "ell:2-", "ces:1.5", "d:inf-"] {
        let spec: SpaceSpec = space.parse()?;
        let v = classify(&x, Subject::Sequence, spec)?;
        println!("x ∈ {space:8} {:?}  ({})", v.status, v.certificate);
    }

    // C|x| can land in a space that x itself misses
    let spike = SymbolicSequence::spike(0.25, 0.0)?;
    let spec: SpaceSpec = "ell:2-".parse()?;
    for subject in [Subject::Sequence, Subject::CesaroImage { times: 1 }, Subject::CesaroImage { times: 2 }] {
        println!("{subject:?} ∈ ell:2-: {:?}", classify(&spike, subject, spec)?.status);
    }
    Ok(())
}
