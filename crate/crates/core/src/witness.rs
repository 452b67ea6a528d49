//! Explicit elements separating the spaces.
//!
//! Every properness or failure statement in the catalog is backed by one
//! family. Building a witness reclassifies each assertion and attaches norm
//! enclosures that corroborate it numerically; any disagreement is an error.

use serde::{Deserialize, Serialize};

use crate::classify::{classify, Status, Subject, Verdict};
use crate::error::{Error, Result};
use crate::norms::{ces_norm, d_norm, lp_norm, NormEnclosure, NormMethod};
use crate::sequence::SymbolicSequence;
use crate::space::{Grade, Scale, SpaceSpec};

/// Prefix length for the numeric evidence.
pub const EVIDENCE_N: u64 = 1 << 14;
/// Exponents closer than this to the critical one get no numeric evidence.
pub const EVIDENCE_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Domain {
    /// `p < q`.
    Strict { p_from_one: bool, q_inf: bool },
    /// `p <= q`.
    Weak { p_from_one: bool, q_inf: bool },
    /// One exponent.
    Single { p_from_one: bool, p_inf: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClaimInfo {
    pub id: &'static str,
    pub statement: &'static str,
    #[serde(skip)]
    domain: Domain,
}

const fn strict(p_from_one: bool, q_inf: bool) -> Domain {
    Domain::Strict { p_from_one, q_inf }
}

const fn weak(p_from_one: bool, q_inf: bool) -> Domain {
    Domain::Weak { p_from_one, q_inf }
}

const fn single(p_from_one: bool, p_inf: bool) -> Domain {
    Domain::Single { p_from_one, p_inf }
}

macro_rules! claim {
    ($id:literal, $st:literal, $dom:expr) => {
        ClaimInfo { id: $id, statement: $st, domain: $dom }
    };
}

static CATALOG: [ClaimInfo; 19] = [
    claim!("ellp-proper-in-ellq", "ℓ_p ⊊ ℓ_q for 1 < p < q < ∞", strict(false, false)),
    claim!("ces-proper", "ces(p) ⊊ ces(q) for 1 < p < q < ∞", strict(false, false)),
    claim!("d-proper", "d(p) ⊊ d(q) for 1 < p < q < ∞", strict(false, false)),
    claim!("ell-proper-in-ces", "ℓ_p ⊊ ces(q) for 1 < p ≤ q < ∞", weak(false, false)),
    claim!("d-proper-in-ell", "d(p) ⊊ ℓ_q for 1 < p ≤ q < ∞", weak(false, false)),
    claim!("d-proper-in-ces", "d(p) ⊊ ces(q) for 1 < p ≤ q < ∞", weak(false, false)),
    claim!("ellplus-proper-in-cesplus", "ℓ_{p+} ⊊ ces(q+) for 1 ≤ p ≤ q < ∞", weak(true, false)),
    claim!("ellminus-proper-in-cesminus", "ℓ_{p-} ⊊ ces(q-) for 1 < p ≤ q ≤ ∞", weak(false, true)),
    claim!("ellminus-proper", "ℓ_{p-} ⊊ ℓ_{q-} for 1 < p < q ≤ ∞", strict(false, true)),
    claim!("cesminus-proper", "ces(p-) ⊊ ces(q-) for 1 < p < q ≤ ∞", strict(false, true)),
    claim!("d-plus-proper", "d(p+) ⊊ d(q+) for 1 ≤ p < q < ∞", strict(true, false)),
    claim!("d-minus-proper", "d(p-) ⊊ d(q-) for 1 < p < q ≤ ∞", strict(false, true)),
    claim!("dplus-proper-chain", "d(p+) ⊊ ℓ_{q+} for 1 ≤ p ≤ q < ∞", weak(true, false)),
    claim!("dminus-proper-chain", "d(p-) ⊊ ℓ_{q-} for 1 < p ≤ q ≤ ∞", weak(false, true)),
    claim!("d-into-dminus-proper", "d(p) ⊊ d(q-) for 1 < p < q ≤ ∞", strict(false, true)),
    claim!(
        "bennett-fails-ellplus",
        "some x ∉ ℓ_{p+} has C|x| ∈ ℓ_{p+}, for 1 ≤ p < ∞",
        single(true, false)
    ),
    claim!(
        "bennett-fails-ellminus",
        "some x ∉ ℓ_{p-} has C|x| ∈ ℓ_{p-}, for 1 < p ≤ ∞",
        single(false, true)
    ),
    claim!("bennett-fails-dplus", "some x ∉ d(p+) has C|x| ∈ d(p+), for 1 ≤ p < ∞", single(true, false)),
    claim!("bennett-fails-dminus", "some x ∉ d(p-) has C|x| ∈ d(p-), for 1 < p ≤ ∞", single(false, true)),
];

impl ClaimInfo {
    /// Parameter choices spanning each domain, edges included.
    pub fn sample_params(&self) -> Vec<(f64, Option<f64>)> {
        let inf = f64::INFINITY;
        match self.domain {
            Domain::Strict { p_from_one, q_inf } => {
                let mut v = vec![(1.2, Some(1.5)), (2.0, Some(3.0)), (3.0, Some(8.0))];
                if p_from_one {
                    v.push((1.0, Some(2.0)));
                }
                if q_inf {
                    v.push((1.5, Some(inf)));
                }
                v
            }
            Domain::Weak { p_from_one, q_inf } => {
                let mut v = vec![(1.5, Some(1.5)), (2.0, Some(3.0)), (4.0, Some(4.0)), (1.1, Some(6.0))];
                if p_from_one {
                    v.push((1.0, Some(1.0)));
                }
                if q_inf {
                    v.push((2.0, Some(inf)));
                }
                v
            }
            Domain::Single { p_from_one, p_inf } => {
                let mut v = vec![(1.5, None), (2.0, None), (5.0, None)];
                if p_from_one {
                    v.push((1.0, None));
                }
                if p_inf {
                    v.push((inf, None));
                }
                v
            }
        }
    }
}

/// The full catalog in a fixed order.
pub fn list_claims() -> &'static [ClaimInfo] {
    &CATALOG
}

fn normalize(key: &str) -> String {
    key.chars().filter(|c| c.is_alphanumeric()).flat_map(char::to_lowercase).collect()
}

/// Looks a claim up, ignoring case, hyphens and underscores.
pub fn find_claim(key: &str) -> Result<&'static ClaimInfo> {
    let k = normalize(key);
    CATALOG.iter().find(|c| normalize(c.id) == k).ok_or_else(|| Error::UnknownClaim(key.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub subject: Subject,
    pub space: SpaceSpec,
    pub expected: Status,
    pub verdict: Verdict,
}

/// A norm enclosure supporting one assertion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// Index into `assertions`.
    pub assertion: usize,
    /// The norm that was enclosed, e.g. `‖x‖_ces(2.5)`.
    pub quantity: String,
    pub exponent: f64,
    pub enclosure: NormEnclosure,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessParams {
    pub p: f64,
    #[serde(with = "crate::float_json")]
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessResult {
    pub claim: String,
    pub statement: String,
    pub params: WitnessParams,
    pub sequence: SymbolicSequence,
    pub assertions: Vec<Assertion>,
    pub numeric_evidence: Vec<Evidence>,
}

fn resolve_params(info: &ClaimInfo, p: Option<f64>, q: Option<f64>) -> Result<WitnessParams> {
    let p = p.unwrap_or(2.0);
    let out = |why: &str| Error::ParamsOutOfDomain(format!("{}: {why} (p = {p}, q = {q:?})", info.id));
    if p.is_nan() || q.is_some_and(f64::is_nan) {
        return Err(out("exponents must be numbers"));
    }
    let lower_ok = |p_from_one: bool| if p_from_one { p >= 1.0 } else { p > 1.0 };
    match info.domain {
        Domain::Single { p_from_one, p_inf } => {
            if q.is_some() {
                return Err(out("takes a single exponent p"));
            }
            if !lower_ok(p_from_one) || (p.is_infinite() && !p_inf) {
                return Err(out("p outside its range"));
            }
            Ok(WitnessParams { p, q: p })
        }
        Domain::Strict { p_from_one, q_inf } | Domain::Weak { p_from_one, q_inf } => {
            let is_strict = matches!(info.domain, Domain::Strict { .. });
            let q = q.unwrap_or(if is_strict { p + 1.0 } else { p });
            if !lower_ok(p_from_one) || !p.is_finite() {
                return Err(out("p outside its range"));
            }
            if q.is_infinite() && !q_inf {
                return Err(out("q must be finite"));
            }
            if if is_strict { p >= q } else { p > q } {
                return Err(out(if is_strict { "needs p < q" } else { "needs p <= q" }));
            }
            Ok(WitnessParams { p, q })
        }
    }
}

/// An exponent strictly between `p` and `q`, or `p + 1` when `q = ∞`.
fn between(p: f64, q: f64) -> f64 {
    if q.is_infinite() {
        p + 1.0
    } else {
        0.5 * (p + q)
    }
}

/// Spike with `ces`-critical exponent `2q / (q + 1) < q`; `γ = 1/2` when `q = ∞`.
fn ces_spike(q: f64) -> Result<SymbolicSequence> {
    let gamma = if q.is_infinite() { 0.5 } else { 0.5 * (1.0 - 1.0 / q) };
    SymbolicSequence::spike(gamma, 0.0)
}

/// Spike with `ℓ`-critical exponent `max(1, q/2)` that lies in no `d` space.
fn flat_spike(q: f64) -> Result<SymbolicSequence> {
    let delta = if q.is_infinite() { 1.0 } else { 2.0 / q };
    SymbolicSequence::spike(0.0, delta)
}

fn power(r: f64) -> Result<SymbolicSequence> {
    SymbolicSequence::power_log(1.0 / r, 0.0)
}

type Plan = (SymbolicSequence, Vec<(Subject, SpaceSpec, Status)>);

fn plan(id: &str, WitnessParams { p, q }: WitnessParams) -> Result<Plan> {
    use Scale::{Ces, Ell, D};
    use Status::{In, Out};
    let x = Subject::Sequence;
    let cx = Subject::CesaroImage { times: 1 };
    let ex = |s, v| SpaceSpec::exact(s, v);
    let pl = |s, v| SpaceSpec::plus(s, v);
    let mi = |s, v| SpaceSpec::minus(s, v);
    Ok(match id {
        "ellp-proper-in-ellq" | "ces-proper" | "d-proper" => {
            let s = match id {
                "ellp-proper-in-ellq" => Ell,
                "ces-proper" => Ces,
                _ => D,
            };
            (power(between(p, q))?, vec![(x, ex(s, q)?, In), (x, ex(s, p)?, Out)])
        }
        "ell-proper-in-ces" => (ces_spike(q)?, vec![(x, ex(Ces, q)?, In), (x, ex(Ell, p)?, Out), (x, ex(Ell, q)?, Out)]),
        "d-proper-in-ell" | "d-proper-in-ces" => {
            let target = if id == "d-proper-in-ell" { Ell } else { Ces };
            let mut asserts = vec![(x, ex(target, q)?, In), (x, ex(D, p)?, Out), (x, ex(D, q)?, Out)];
            asserts.push((x, ex(D, 2.0 * q)?, Out));
            asserts.push((x, mi(D, f64::INFINITY)?, Out));
            (flat_spike(q)?, asserts)
        }
        "ellplus-proper-in-cesplus" => {
            let seq = if q == 1.0 { SymbolicSequence::spike(0.0, 0.0)? } else { ces_spike(q)? };
            (seq, vec![(x, pl(Ces, q)?, In), (x, pl(Ell, p)?, Out)])
        }
        "ellminus-proper-in-cesminus" => (ces_spike(q)?, vec![(x, mi(Ces, q)?, In), (x, mi(Ell, p)?, Out)]),
        "ellminus-proper" | "cesminus-proper" | "d-minus-proper" => {
            let s = match id {
                "ellminus-proper" => Ell,
                "cesminus-proper" => Ces,
                _ => D,
            };
            (power(between(p, q))?, vec![(x, mi(s, q)?, In), (x, mi(s, p)?, Out)])
        }
        "d-plus-proper" => (power(between(p, q))?, vec![(x, pl(D, q)?, In), (x, pl(D, p)?, Out)]),
        "dplus-proper-chain" => (flat_spike(q)?, vec![(x, pl(Ell, q)?, In), (x, pl(D, p)?, Out)]),
        "dminus-proper-chain" => (flat_spike(q)?, vec![(x, mi(Ell, q)?, In), (x, mi(D, p)?, Out)]),
        "d-into-dminus-proper" => (power(between(p, q))?, vec![(x, mi(D, q)?, In), (x, ex(D, p)?, Out)]),
        "bennett-fails-ellplus" => {
            let seq = if p == 1.0 { SymbolicSequence::spike(0.0, 0.0)? } else { ces_spike(p)? };
            (seq, vec![(x, pl(Ces, p)?, In), (x, pl(Ell, p)?, Out), (cx, pl(Ell, p)?, In)])
        }
        "bennett-fails-ellminus" => {
            (ces_spike(p)?, vec![(x, mi(Ces, p)?, In), (x, mi(Ell, p)?, Out), (cx, mi(Ell, p)?, In)])
        }
        "bennett-fails-dplus" => {
            (flat_spike(p)?, vec![(x, pl(Ell, p)?, In), (x, pl(D, p)?, Out), (cx, pl(D, p)?, In)])
        }
        "bennett-fails-dminus" => {
            (flat_spike(p)?, vec![(x, mi(Ell, p)?, In), (x, mi(D, p)?, Out), (cx, mi(D, p)?, In)])
        }
        other => return Err(Error::UnknownClaim(other.to_string())),
    })
}

/// Exponent at which a norm can corroborate the verdict, if one is safely
/// away from the critical exponent.
fn evidence_exponent(grade: Grade, crit: f64, member: bool) -> Option<f64> {
    let m = EVIDENCE_MARGIN;
    let far = |e: f64| e.is_finite() && e >= 1.0 && (crit.is_infinite() || (e - crit).abs() > m);
    let e = match (grade, member) {
        (Grade::Exact(p), _) => p,
        (Grade::Plus(p), true) => p + 0.5,
        (Grade::Plus(p), false) => between(p, crit),
        (Grade::Minus(p), true) => between(crit, p),
        (Grade::Minus(p), false) if p.is_infinite() => 4.0,
        (Grade::Minus(p), false) => 0.5 * (1.0 + p),
    };
    (far(e) && e > 1.0).then_some(e)
}

/// The enclosure that bounds the subject on the scale at exponent `e`.
///
/// `‖C|x|‖_ℓ(e)` is `‖x‖_ces(e)` by definition, and `C` maps `ces(e)` into
/// `d(e)`, so the same enclosure controls `C|x|` on the `d` scale.
fn measure(seq: &SymbolicSequence, subject: Subject, scale: Scale, e: f64) -> Result<Option<(String, NormEnclosure)>> {
    Ok(match (subject, scale) {
        (Subject::Sequence, Scale::Ell) => Some((format!("‖x‖_ℓ({e})"), lp_norm(seq, e, EVIDENCE_N)?)),
        (Subject::Sequence, Scale::Ces) => Some((format!("‖x‖_ces({e})"), ces_norm(seq, e, EVIDENCE_N)?)),
        (Subject::Sequence, Scale::D) => Some((format!("‖x‖_d({e})"), d_norm(seq, e, EVIDENCE_N)?)),
        (Subject::CesaroImage { times: 1 }, Scale::Ell | Scale::D) => {
            Some((format!("‖x‖_ces({e})"), ces_norm(seq, e, EVIDENCE_N)?))
        }
        _ => None,
    })
}

/// Builds and checks the witness for `claim`.
///
/// `p` defaults to 2. A missing `q` defaults to `p` where the claim allows
/// `p = q` and to `p + 1` otherwise.
pub fn build_witness(claim: &str, p: Option<f64>, q: Option<f64>) -> Result<WitnessResult> {
    let info = find_claim(claim)?;
    let params = resolve_params(info, p, q)?;
    let (sequence, planned) = plan(info.id, params)?;

    let mut assertions = Vec::with_capacity(planned.len());
    let mut numeric_evidence = Vec::new();
    for (subject, space, expected) in planned {
        let verdict = classify(&sequence, subject, space)?;
        if verdict.status != expected {
            return Err(Error::WitnessMismatch(format!(
                "{}: expected {expected:?} for {subject:?} in {space}, classified {:?} ({})",
                info.id, verdict.status, verdict.certificate
            )));
        }
        let crit = verdict.profile.map(|p| p.crit);
        if let Some(e) = crit.and_then(|c| evidence_exponent(space.grade, c, expected == Status::In)) {
            if let Some((quantity, enclosure)) = measure(&sequence, subject, space.scale, e)? {
                let agrees = match expected {
                    Status::In => enclosure.is_finite(),
                    _ => enclosure.method == NormMethod::DivergentLowerBound,
                };
                if !agrees {
                    return Err(Error::WitnessMismatch(format!(
                        "{}: {quantity} = [{}, {}] contradicts {expected:?} in {space}",
                        info.id, enclosure.lo, enclosure.hi
                    )));
                }
                numeric_evidence.push(Evidence { assertion: assertions.len(), quantity, exponent: e, enclosure });
            }
        }
        assertions.push(Assertion { subject, space, expected, verdict });
    }
    Ok(WitnessResult {
        claim: info.id.to_string(),
        statement: info.statement.to_string(),
        params,
        sequence,
        assertions,
        numeric_evidence,
    })
}
