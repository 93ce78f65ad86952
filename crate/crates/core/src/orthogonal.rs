//! Exact arithmetic in O(2), piecewise-affine paths in O(2), and the
//! Klein four-subgroup of SO(3).
//!
//! Angles are stored as exact rationals in units of pi, so `Angle(1/2)` is
//! the quarter turn. Every path the crate builds has an angle that is affine
//! in the parameter on each piece, which makes winding degrees exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// A rotation angle, as a multiple of pi, reduced to `[0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational64);

impl Angle {
    pub const ZERO: Angle = Angle(Rational64::new_raw(0, 1));
    pub const HALF_TURN: Angle = Angle(Rational64::new_raw(1, 1));

    pub fn new(turns_of_pi: Rational64) -> Self {
        let two = Rational64::from_integer(2);
        let reduced = turns_of_pi - two * (turns_of_pi / two).floor();
        Angle(reduced)
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(Rational64::new(numer, denom))
    }

    /// The representative in `[0, 2)`.
    pub fn value(self) -> Rational64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    /// Angle in radians, for floating-point cross-checks only.
    pub fn to_radians(self) -> f64 {
        (*self.0.numer() as f64 / *self.0.denom() as f64) * std::f64::consts::PI
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::new(self.0 + rhs.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle::new(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::new(-self.0)
    }
}

impl Mul<i64> for Angle {
    type Output = Angle;
    fn mul(self, n: i64) -> Angle {
        Angle::new(self.0 * Rational64::from_integer(n))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else if self.0.is_one() {
            write!(f, "pi")
        } else if self.0.denom() == &1 {
            write!(f, "{}pi", self.0.numer())
        } else {
            write!(f, "{}pi/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// An element of O(2): the rotation `R_angle`, or `R_angle * A` when
/// `reflect` is set, where `A = diag(1, -1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct O2Element {
    pub angle: Angle,
    pub reflect: bool,
}

impl O2Element {
    pub const IDENTITY: O2Element = O2Element {
        angle: Angle::ZERO,
        reflect: false,
    };

    /// The reflection `A = diag(1, -1)`.
    pub const A: O2Element = O2Element {
        angle: Angle::ZERO,
        reflect: true,
    };

    pub fn rotation(angle: Angle) -> Self {
        O2Element {
            angle,
            reflect: false,
        }
    }

    /// `R_angle * A`.
    pub fn reflection(angle: Angle) -> Self {
        O2Element {
            angle,
            reflect: true,
        }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn in_so2(self) -> bool {
        !self.reflect
    }

    pub fn inverse(self) -> Self {
        if self.reflect {
            self
        } else {
            Self::rotation(-self.angle)
        }
    }

    pub fn pow(self, n: i64) -> Self {
        if self.reflect {
            if n.is_even() {
                Self::IDENTITY
            } else {
                self
            }
        } else {
            Self::rotation(self.angle * n)
        }
    }

    pub fn commutes_with(self, other: O2Element) -> bool {
        self * other == other * self
    }
}

impl Mul for O2Element {
    type Output = O2Element;

    fn mul(self, rhs: O2Element) -> O2Element {
        // A R_b = R_{-b} A
        let angle = if self.reflect {
            self.angle - rhs.angle
        } else {
            self.angle + rhs.angle
        };
        O2Element {
            angle,
            reflect: self.reflect ^ rhs.reflect,
        }
    }
}

impl fmt::Display for O2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.angle.is_zero(), self.reflect) {
            (true, false) => write!(f, "I"),
            (true, true) => write!(f, "A"),
            (false, false) => write!(f, "R({})", self.angle),
            (false, true) => write!(f, "R({})A", self.angle),
        }
    }
}

pub fn o2_mul(a: O2Element, b: O2Element) -> O2Element {
    a * b
}

pub fn o2_pow(a: O2Element, n: i64) -> O2Element {
    a.pow(n)
}

pub fn commutes(a: O2Element, b: O2Element) -> bool {
    a.commutes_with(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path needs at least one segment")]
    Empty,
    #[error("segment domains do not partition [0, 1]")]
    BadPartition,
    #[error("path is discontinuous at t = {0}")]
    Discontinuous(Rational64),
    #[error("parameter {0} lies outside [0, 1]")]
    OutOfDomain(Rational64),
    #[error(
        "cannot join paths: {end} at the end of the first, {start} at the start of the second"
    )]
    JoinMismatch { end: O2Element, start: O2Element },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("path is not closed: starts at {start}, ends at {end}")]
    NotALoop { start: O2Element, end: O2Element },
    #[error("path leaves SO(2)")]
    NotInSO2,
}

/// One affine piece `t -> R_{(slope t + offset) pi}` (times `A` if `reflect`)
/// over `[start, end]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub start: Rational64,
    pub end: Rational64,
    pub slope: Rational64,
    pub offset: Rational64,
    pub reflect: bool,
}

impl Segment {
    fn normalized(mut self) -> Self {
        self.offset = Angle::new(self.offset).value();
        self
    }

    pub fn value_at(&self, t: Rational64) -> O2Element {
        O2Element {
            angle: Angle::new(self.slope * t + self.offset),
            reflect: self.reflect,
        }
    }

    /// Same values, reparameterized linearly onto `[start, end]`.
    fn rescaled(&self, start: Rational64, end: Rational64) -> Segment {
        let stretch = (self.end - self.start) / (end - start);
        Segment {
            start,
            end,
            slope: self.slope * stretch,
            offset: self.slope * (self.start - start * stretch) + self.offset,
            reflect: self.reflect,
        }
        .normalized()
    }

    fn restricted(&self, start: Rational64, end: Rational64) -> Segment {
        Segment {
            start,
            end,
            ..self.clone()
        }
    }

    /// Pointwise product of two pieces over the same domain.
    fn times(&self, rhs: &Segment) -> Segment {
        debug_assert_eq!((self.start, self.end), (rhs.start, rhs.end));
        let sign = if self.reflect {
            -Rational64::one()
        } else {
            Rational64::one()
        };
        Segment {
            start: self.start,
            end: self.end,
            slope: self.slope + sign * rhs.slope,
            offset: self.offset + sign * rhs.offset,
            reflect: self.reflect ^ rhs.reflect,
        }
        .normalized()
    }

    fn power(&self, n: i64) -> Segment {
        if self.reflect {
            if n.is_even() {
                Segment {
                    slope: Rational64::zero(),
                    offset: Rational64::zero(),
                    reflect: false,
                    ..self.clone()
                }
            } else {
                self.clone()
            }
        } else {
            let n = Rational64::from_integer(n);
            Segment {
                slope: self.slope * n,
                offset: self.offset * n,
                ..self.clone()
            }
            .normalized()
        }
    }
}

/// A continuous path `[0, 1] -> O(2)` made of affine-angle pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct O2Path {
    segments: Vec<Segment>,
}

impl O2Path {
    pub fn new(segments: Vec<Segment>) -> Result<Self, PathError> {
        let first = segments.first().ok_or(PathError::Empty)?;
        let last = segments.last().ok_or(PathError::Empty)?;
        if !first.start.is_zero() || !last.end.is_one() {
            return Err(PathError::BadPartition);
        }
        for seg in &segments {
            if seg.start >= seg.end {
                return Err(PathError::BadPartition);
            }
        }
        for pair in segments.windows(2) {
            if pair[0].end != pair[1].start {
                return Err(PathError::BadPartition);
            }
            let t = pair[0].end;
            if pair[0].value_at(t) != pair[1].value_at(t) {
                return Err(PathError::Discontinuous(t));
            }
        }
        Ok(O2Path {
            segments: segments.into_iter().map(Segment::normalized).collect(),
        })
    }

    /// `t -> R_{(slope t + offset) pi}` (times `A` if `reflect`) on all of `[0, 1]`.
    pub fn affine(slope: Rational64, offset: Rational64, reflect: bool) -> Self {
        O2Path {
            segments: vec![Segment {
                start: Rational64::zero(),
                end: Rational64::one(),
                slope,
                offset,
                reflect,
            }
            .normalized()],
        }
    }

    pub fn constant(value: O2Element) -> Self {
        Self::affine(Rational64::zero(), value.angle.value(), value.reflect)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn value_at(&self, t: Rational64) -> Result<O2Element, PathError> {
        if t < Rational64::zero() || t > Rational64::one() {
            return Err(PathError::OutOfDomain(t));
        }
        let seg = self
            .segments
            .iter()
            .find(|s| s.start <= t && t <= s.end)
            .expect("segments cover [0, 1]");
        Ok(seg.value_at(t))
    }

    pub fn start_value(&self) -> O2Element {
        let s = &self.segments[0];
        s.value_at(s.start)
    }

    pub fn end_value(&self) -> O2Element {
        let s = self.segments.last().expect("nonempty");
        s.value_at(s.end)
    }

    pub fn is_loop(&self) -> bool {
        self.start_value() == self.end_value()
    }

    pub fn lies_in_so2(&self) -> bool {
        self.segments.iter().all(|s| !s.reflect)
    }

    pub fn lies_in_reflection_coset(&self) -> bool {
        self.segments.iter().all(|s| s.reflect)
    }

    fn breakpoints(&self) -> Vec<Rational64> {
        let mut points = vec![Rational64::zero()];
        points.extend(self.segments.iter().map(|s| s.end));
        points
    }

    fn refined(&self, points: &[Rational64]) -> Vec<Segment> {
        points
            .windows(2)
            .map(|w| {
                let seg = self
                    .segments
                    .iter()
                    .find(|s| s.start <= w[0] && w[1] <= s.end)
                    .expect("refinement of own breakpoints");
                seg.restricted(w[0], w[1])
            })
            .collect()
    }

    /// `t -> self(t) * rhs(t)`.
    pub fn pointwise_mul(&self, rhs: &O2Path) -> O2Path {
        let mut points = self.breakpoints();
        points.extend(rhs.breakpoints());
        points.sort();
        points.dedup();
        let left = self.refined(&points);
        let right = rhs.refined(&points);
        O2Path {
            segments: left.iter().zip(&right).map(|(a, b)| a.times(b)).collect(),
        }
    }

    /// `t -> self(t)^n`.
    pub fn pointwise_pow(&self, n: i64) -> O2Path {
        O2Path {
            segments: self.segments.iter().map(|s| s.power(n)).collect(),
        }
    }

    pub fn right_mul(&self, g: O2Element) -> O2Path {
        self.pointwise_mul(&O2Path::constant(g))
    }

    /// `t -> self(1 - t)`.
    pub fn reversed(&self) -> O2Path {
        let one = Rational64::one();
        O2Path {
            segments: self
                .segments
                .iter()
                .rev()
                .map(|s| {
                    Segment {
                        start: one - s.end,
                        end: one - s.start,
                        slope: -s.slope,
                        offset: s.slope + s.offset,
                        reflect: s.reflect,
                    }
                    .normalized()
                })
                .collect(),
        }
    }

    /// Runs `self` on `[0, 1/2]` and then `next` on `[1/2, 1]`.
    pub fn concat(&self, next: &O2Path) -> Result<O2Path, PathError> {
        if self.end_value() != next.start_value() {
            return Err(PathError::JoinMismatch {
                end: self.end_value(),
                start: next.start_value(),
            });
        }
        let half = Rational64::new(1, 2);
        let squeeze =
            |s: &Segment, lo: Rational64| s.rescaled(lo + s.start * half, lo + s.end * half);
        let mut segments: Vec<Segment> = self
            .segments
            .iter()
            .map(|s| squeeze(s, Rational64::zero()))
            .collect();
        segments.extend(next.segments.iter().map(|s| squeeze(s, half)));
        Ok(O2Path { segments })
    }
}

impl fmt::Display for O2Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(
                f,
                "[{}, {}]: R(({})t + {}){}",
                s.start,
                s.end,
                s.slope,
                s.offset,
                if s.reflect { "A" } else { "" }
            )?;
        }
        Ok(())
    }
}

/// Winding degree of a loop in SO(2).
///
/// Normalized so that `theta -> R_{2 theta}`, `theta` in `[0, pi]`, has degree 1:
/// the result is the total angle swept, in units of pi, divided by two.
/// The return type admits half-integers; a closed loop always gives an integer.
pub fn loop_degree(path: &O2Path) -> Result<Rational64, DegreeError> {
    if !path.lies_in_so2() {
        return Err(DegreeError::NotInSO2);
    }
    if !path.is_loop() {
        return Err(DegreeError::NotALoop {
            start: path.start_value(),
            end: path.end_value(),
        });
    }
    let swept: Rational64 = path
        .segments
        .iter()
        .map(|s| s.slope * (s.end - s.start))
        .sum();
    Ok(swept / Rational64::from_integer(2))
}

/// An element of the Klein four-group `{I, c1, c2, c3}` inside SO(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum D4Element {
    I,
    C1,
    C2,
    C3,
}

impl D4Element {
    pub const ALL: [D4Element; 4] = [D4Element::I, D4Element::C1, D4Element::C2, D4Element::C3];

    fn bits(self) -> u8 {
        self as u8
    }

    fn from_bits(bits: u8) -> Self {
        Self::ALL[bits as usize & 3]
    }

    pub fn is_identity(self) -> bool {
        self == D4Element::I
    }
}

impl Mul for D4Element {
    type Output = D4Element;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: D4Element) -> D4Element {
        // c1 = 01, c2 = 10, c3 = 11: the group is (Z/2)^2 under xor
        D4Element::from_bits(self.bits() ^ rhs.bits())
    }
}

impl fmt::Display for D4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            D4Element::I => "I",
            D4Element::C1 => "c1",
            D4Element::C2 => "c2",
            D4Element::C3 => "c3",
        };
        f.write_str(s)
    }
}

pub fn d4_mul(a: D4Element, b: D4Element) -> D4Element {
    a * b
}

/// Denominator-2 check used by callers who need an integral degree.
pub fn as_integer(degree: Rational64) -> Option<i64> {
    degree.is_integer().then(|| degree.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn rot(n: i64, d: i64) -> O2Element {
        O2Element::rotation(Angle::from_ratio(n, d))
    }

    fn refl(n: i64, d: i64) -> O2Element {
        O2Element::reflection(Angle::from_ratio(n, d))
    }

    #[test]
    fn angle_normalizes_into_half_open_interval() {
        assert_eq!(Angle::from_ratio(-1, 3).value(), r(5, 3));
        assert_eq!(Angle::from_ratio(2, 1).value(), r(0, 1));
        assert_eq!(Angle::from_ratio(7, 2).value(), r(3, 2));
        assert_eq!(Angle::from_ratio(-4, 1), Angle::ZERO);
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(O2Element::A * O2Element::A, O2Element::IDENTITY);
        assert_eq!(rot(1, 2) * rot(1, 2), rot(1, 1));
        // A R_{k theta} A = R_{-k theta}
        assert_eq!(O2Element::A * rot(1, 3) * O2Element::A, rot(5, 3));
        assert_eq!(rot(1, 3) * refl(1, 4), refl(7, 12));
        assert_eq!(refl(1, 3) * rot(1, 4), refl(1, 12));
        assert_eq!(refl(1, 3) * refl(1, 4), rot(1, 12));
    }

    #[test]
    fn powers_of_reflections() {
        let x = refl(1, 3);
        assert_eq!(x.pow(2), O2Element::IDENTITY);
        assert_eq!(x.pow(3), x);
        assert_eq!(x.pow(-1), x);
        assert_eq!(x.pow(0), O2Element::IDENTITY);
        assert_eq!(rot(2, 7).pow(0), O2Element::IDENTITY);
        assert_eq!(rot(1, 3).pow(-2), rot(4, 3));
    }

    #[test]
    fn commutation_cases() {
        assert!(commutes(rot(1, 5), rot(3, 7)));
        assert!(commutes(rot(1, 1), O2Element::A));
        assert!(!commutes(rot(1, 2), O2Element::A));
        // two reflections commute iff their angles differ by a multiple of pi
        assert!(commutes(refl(1, 2), refl(3, 2)));
        assert!(!commutes(refl(0, 1), refl(1, 2)));
    }

    #[test]
    fn d4_table() {
        use D4Element::*;
        assert_eq!(C1 * C2, C3);
        assert_eq!(C1 * C3, C2);
        assert_eq!(C2 * C3, C1);
        assert_eq!(C1 * C1, I);
        assert_eq!(I * C2, C2);
    }

    #[test]
    fn path_rejects_gaps_and_jumps() {
        let seg = |a: Rational64, b: Rational64, slope: Rational64| Segment {
            start: a,
            end: b,
            slope,
            offset: r(0, 1),
            reflect: false,
        };
        assert_eq!(O2Path::new(vec![]), Err(PathError::Empty));
        assert_eq!(
            O2Path::new(vec![seg(r(0, 1), r(1, 2), r(1, 1))]),
            Err(PathError::BadPartition)
        );
        assert_eq!(
            O2Path::new(vec![
                seg(r(0, 1), r(1, 2), r(1, 1)),
                seg(r(1, 2), r(1, 1), r(0, 1))
            ]),
            Err(PathError::Discontinuous(r(1, 2)))
        );
        assert!(O2Path::new(vec![
            seg(r(0, 1), r(1, 2), r(4, 1)),
            seg(r(1, 2), r(1, 1), r(0, 1))
        ])
        .is_ok());
    }

    #[test]
    fn degree_examples() {
        let constant = O2Path::constant(O2Element::IDENTITY);
        assert_eq!(loop_degree(&constant), Ok(r(0, 1)));
        let generator = O2Path::affine(r(2, 1), r(0, 1), false);
        assert_eq!(loop_degree(&generator), Ok(r(1, 1)));
        let four = O2Path::affine(r(4, 1), r(0, 1), false);
        assert_eq!(loop_degree(&four), Ok(r(2, 1)));
    }

    #[test]
    fn degree_errors() {
        let open = O2Path::affine(r(1, 1), r(0, 1), false);
        assert!(matches!(
            loop_degree(&open),
            Err(DegreeError::NotALoop { .. })
        ));
        let reflected = O2Path::constant(O2Element::A);
        assert_eq!(loop_degree(&reflected), Err(DegreeError::NotInSO2));
    }

    #[test]
    fn concat_and_reverse() {
        let up = O2Path::affine(r(1, 1), r(0, 1), false);
        let back = up.reversed();
        assert_eq!(back.start_value(), rot(1, 1));
        assert_eq!(back.end_value(), O2Element::IDENTITY);
        let there_and_back = up.concat(&back).unwrap();
        assert_eq!(loop_degree(&there_and_back), Ok(r(0, 1)));
        assert_eq!(there_and_back.value_at(r(1, 4)).unwrap(), rot(1, 2));
        assert!(matches!(
            up.concat(&up),
            Err(PathError::JoinMismatch { .. })
        ));
    }

    #[test]
    fn pointwise_product_merges_breakpoints() {
        let a = O2Path::new(vec![
            Segment {
                start: r(0, 1),
                end: r(1, 3),
                slope: r(3, 1),
                offset: r(0, 1),
                reflect: false,
            },
            Segment {
                start: r(1, 3),
                end: r(1, 1),
                slope: r(0, 1),
                offset: r(1, 1),
                reflect: false,
            },
        ])
        .unwrap();
        let b = O2Path::affine(r(1, 1), r(0, 1), true);
        let ab = a.pointwise_mul(&b);
        assert_eq!(ab.segments().len(), 2);
        for t in [r(0, 1), r(1, 6), r(1, 3), r(1, 2), r(1, 1)] {
            assert_eq!(
                ab.value_at(t).unwrap(),
                a.value_at(t).unwrap() * b.value_at(t).unwrap()
            );
        }
    }
}
