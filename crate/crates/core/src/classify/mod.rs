//! Symbolic membership classification.
//!
//! Each family gets a [`MembershipProfile`] per base scale: the critical
//! exponent and whether the family belongs to the space at that exponent.
//! The profile decides membership at every grade. Images `C|x|` and `C²|x|`
//! are classified through [`AsymptoticClass`], the `Θ`-shape of the averages.

mod shape;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::SymbolicSequence;
use crate::space::{Grade, Scale, SpaceSpec};

pub use shape::{cmp_exponent, Shape, EXPONENT_TOL};

/// `Θ(n^-a L(n)^-b LL(n)^-c)` with `LL(n) = 1 + ln L(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AsymptoticClass {
    Theta { a: f64, b: f64, c: f64 },
    /// The identically zero sequence.
    Zero,
    /// Needs an iterated logarithm deeper than `LL`.
    NotRepresentable,
}

impl AsymptoticClass {
    pub const fn theta(a: f64, b: f64, c: f64) -> Self {
        Self::Theta { a, b, c }
    }

    /// The class of `C y` for `y` in this class.
    pub fn cesaro(self) -> Self {
        use std::cmp::Ordering::*;
        let Self::Theta { a, b, c } = self else { return self };
        match (cmp_exponent(a, 1.0), cmp_exponent(b, 1.0), cmp_exponent(c, 1.0)) {
            (Less, _, _) => self,
            (Greater, _, _) => Self::theta(1.0, 0.0, 0.0),
            (Equal, Less, _) => Self::theta(1.0, b - 1.0, c),
            (Equal, Greater, _) => Self::theta(1.0, 0.0, 0.0),
            (Equal, Equal, Less) => Self::theta(1.0, 0.0, c - 1.0),
            (Equal, Equal, Greater) => Self::theta(1.0, 0.0, 0.0),
            (Equal, Equal, Equal) => Self::NotRepresentable,
        }
    }

    fn shape(self) -> Result<Shape> {
        match self {
            Self::Theta { a, b, c } => Ok(Shape::Power { a, b, c }),
            Self::Zero => Ok(Shape::Always),
            Self::NotRepresentable => {
                Err(Error::Unsupported("asymptotic class needs a triple logarithm".into()))
            }
        }
    }
}

/// The asymptotic class of `C|x|`.
pub fn cesaro_class(seq: &SymbolicSequence) -> AsymptoticClass {
    use std::cmp::Ordering::*;
    match *seq {
        _ if seq.is_zero() => AsymptoticClass::Zero,
        SymbolicSequence::UnitBasis { .. } | SymbolicSequence::FiniteSupport { .. } => AsymptoticClass::theta(1.0, 0.0, 0.0),
        SymbolicSequence::PowerLog { a, b } => AsymptoticClass::theta(a, b, 0.0).cesaro(),
        SymbolicSequence::LacunarySpike { gamma, delta } => {
            if gamma > 0.0 {
                // P_J ≍ h_J, so C_n ≍ 2^(J(γ-1)) J^-δ on the block of n
                AsymptoticClass::theta(1.0 - gamma, delta, 0.0)
            } else if gamma < 0.0 {
                AsymptoticClass::theta(1.0, 0.0, 0.0)
            } else {
                // P_J = Σ_{j <= J} j^-δ
                match cmp_exponent(delta, 1.0) {
                    Less => AsymptoticClass::theta(1.0, delta - 1.0, 0.0),
                    Equal => AsymptoticClass::theta(1.0, 0.0, -1.0),
                    Greater => AsymptoticClass::theta(1.0, 0.0, 0.0),
                }
            }
        }
    }
}

/// Critical exponent and attainment for one base scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipProfile {
    pub scale: Scale,
    #[serde(with = "crate::float_json")]
    pub crit: f64,
    pub attained: bool,
}

impl MembershipProfile {
    fn from_shape(scale: Scale, shape: Shape) -> Result<Self> {
        let (crit, attained) = shape.critical()?;
        Ok(Self { scale, crit, attained })
    }

    /// Membership at a grade, by the critical-exponent rule.
    pub fn member(&self, grade: Grade) -> bool {
        use std::cmp::Ordering::*;
        match grade {
            Grade::Exact(p) => match cmp_exponent(self.crit, p) {
                Less => true,
                Equal => self.attained,
                Greater => false,
            },
            Grade::Plus(p) => cmp_exponent(self.crit, p) != std::cmp::Ordering::Greater,
            Grade::Minus(p) => {
                if p.is_infinite() {
                    self.crit.is_finite()
                } else {
                    cmp_exponent(self.crit, p) == Less
                }
            }
        }
    }
}

fn ell_shape(seq: &SymbolicSequence) -> Shape {
    match *seq {
        SymbolicSequence::PowerLog { a, b } => Shape::Power { a, b, c: 0.0 },
        SymbolicSequence::LacunarySpike { gamma, delta } => Shape::Dyadic { k0: 0.0, k1: gamma, mu: delta },
        SymbolicSequence::UnitBasis { .. } | SymbolicSequence::FiniteSupport { .. } => Shape::Always,
    }
}

fn d_shape(seq: &SymbolicSequence) -> Shape {
    match *seq {
        // x̂ = x from the monotone index on; a = 0 families are not summable anyway
        SymbolicSequence::PowerLog { a, b } => Shape::Power { a, b, c: 0.0 },
        // x̂ is h_j on the 2^(j-1) indices of block j
        SymbolicSequence::LacunarySpike { gamma, delta } if gamma <= 0.0 => {
            Shape::Dyadic { k0: 1.0, k1: gamma, mu: delta }
        }
        SymbolicSequence::LacunarySpike { .. } => Shape::Never,
        SymbolicSequence::UnitBasis { .. } | SymbolicSequence::FiniteSupport { .. } => Shape::Always,
    }
}

pub fn ell_profile(seq: &SymbolicSequence) -> Result<MembershipProfile> {
    MembershipProfile::from_shape(Scale::Ell, ell_shape(seq))
}

pub fn ces_profile(seq: &SymbolicSequence) -> Result<MembershipProfile> {
    MembershipProfile::from_shape(Scale::Ces, cesaro_class(seq).shape()?)
}

pub fn d_profile(seq: &SymbolicSequence) -> Result<MembershipProfile> {
    MembershipProfile::from_shape(Scale::D, d_shape(seq))
}

pub fn profile(seq: &SymbolicSequence, scale: Scale) -> Result<MembershipProfile> {
    match scale {
        Scale::Ell => ell_profile(seq),
        Scale::Ces => ces_profile(seq),
        Scale::D => d_profile(seq),
    }
}

/// What a verdict is about: `x` itself or one of its Cesàro images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Sequence,
    /// `C|x|` (`times = 1`) or `C²|x|` (`times = 2`).
    CesaroImage { times: u8 },
}

impl Subject {
    fn describe(self) -> &'static str {
        match self {
            Subject::Sequence => "x",
            Subject::CesaroImage { times: 1 } => "C|x|",
            Subject::CesaroImage { .. } => "C²|x|",
        }
    }
}

/// Profile of `C^times |x|` on a scale.
///
/// `C|x|` has class `K = cesaro_class(x)`; its `ces` membership is that of
/// `C K`. Classes are monotone up to constants, so the envelope of a class
/// member is `Θ` of the class itself and the `d` scale agrees with `ℓ`.
pub fn image_profile(seq: &SymbolicSequence, times: u8, scale: Scale) -> Result<MembershipProfile> {
    if !(1..=2).contains(&times) {
        return Err(Error::InvalidParameter(format!("Cesàro image supports 1 or 2 applications, got {times}")));
    }
    let mut class = cesaro_class(seq);
    for _ in 1..times {
        class = class.cesaro();
    }
    if scale == Scale::Ces {
        class = class.cesaro();
    }
    MembershipProfile::from_shape(scale, class.shape()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    In,
    Out,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub space: SpaceSpec,
    pub subject: Subject,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<MembershipProfile>,
    pub certificate: String,
}

impl Verdict {
    fn decide(profile: Result<MembershipProfile>, spec: SpaceSpec, subject: Subject) -> Self {
        let profile = match profile {
            Ok(p) => p,
            Err(e) => {
                return Self { status: Status::Unsupported, space: spec, subject, profile: None, certificate: e.to_string() }
            }
        };
        let member = profile.member(spec.grade);
        let crit = if profile.crit.is_finite() { format!("{}", profile.crit) } else { "∞".into() };
        let rule = match spec.grade {
            Grade::Exact(_) => "exact grade: in iff crit < p, or crit = p and attained",
            Grade::Plus(_) => "p+ grade: in iff crit <= p",
            Grade::Minus(_) => "p- grade: in iff crit < p",
        };
        let certificate = format!(
            "{} on the {} scale has crit {crit} ({}attained); {rule}",
            subject.describe(),
            spec.scale.key(),
            if profile.attained { "" } else { "not " }
        );
        Self {
            status: if member { Status::In } else { Status::Out },
            space: spec,
            subject,
            profile: Some(profile),
            certificate,
        }
    }

    pub fn is_in(&self) -> bool {
        self.status == Status::In
    }
}

/// Is `x` in the space?
pub fn membership(seq: &SymbolicSequence, spec: SpaceSpec) -> Verdict {
    Verdict::decide(profile(seq, spec.scale), spec, Subject::Sequence)
}

/// Is `C^times |x|` in the space?
pub fn image_membership(seq: &SymbolicSequence, times: u8, spec: SpaceSpec) -> Result<Verdict> {
    if !(1..=2).contains(&times) {
        return Err(Error::InvalidParameter(format!("Cesàro image supports 1 or 2 applications, got {times}")));
    }
    Ok(Verdict::decide(image_profile(seq, times, spec.scale), spec, Subject::CesaroImage { times }))
}

/// Verdict for any subject.
pub fn classify(seq: &SymbolicSequence, subject: Subject, spec: SpaceSpec) -> Result<Verdict> {
    match subject {
        Subject::Sequence => Ok(membership(seq, spec)),
        Subject::CesaroImage { times } => image_membership(seq, times, spec),
    }
}
