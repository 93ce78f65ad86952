//! Commutative O(2)-cocycles on the fixed three-set cover of the two-sphere.
//!
//! The cover has a left hemisphere `C1` and two eastern quarters `C2`
//! (north) and `C3` (south). Each pairwise intersection is an arc
//! parameterized by `t` in `[0, 1]`; the two triple points sit at `t = 0`
//! and `t = 1`.

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::orthogonal::{as_integer, loop_degree, DegreeError, O2Element, O2Path};

/// Index pairs of the three transition maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Overlap {
    #[serde(rename = "12")]
    Alpha12,
    #[serde(rename = "13")]
    Alpha13,
    #[serde(rename = "23")]
    Alpha23,
}

/// The two points shared by all three sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TriplePoint {
    #[serde(rename = "t=0")]
    Start,
    #[serde(rename = "t=1")]
    End,
}

impl TriplePoint {
    pub const BOTH: [TriplePoint; 2] = [TriplePoint::Start, TriplePoint::End];

    pub fn parameter(self) -> Rational64 {
        match self {
            TriplePoint::Start => Rational64::zero(),
            TriplePoint::End => Rational64::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommCocycle {
    pub alpha12: O2Path,
    pub alpha13: O2Path,
    pub alpha23: O2Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ValidationFailure {
    /// `alpha12 * alpha23 != alpha13` at a triple point.
    CocycleCondition {
        point: TriplePoint,
        product: O2Element,
        alpha13: O2Element,
    },
    Commutativity {
        point: TriplePoint,
        left: Overlap,
        right: Overlap,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn cocycle_failures(&self) -> usize {
        self.failures
            .iter()
            .filter(|f| matches!(f, ValidationFailure::CocycleCondition { .. }))
            .count()
    }

    pub fn commutativity_failures(&self) -> usize {
        self.failures
            .iter()
            .filter(|f| matches!(f, ValidationFailure::Commutativity { .. }))
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("cocycle fails validation: {0:?}")]
    InvalidCocycle(ValidationReport),
    #[error("clutching loop visits both components of O(2)")]
    MixedComponents,
    #[error("clutching loop has non-integral degree {0}")]
    NonIntegralDegree(Rational64),
    #[error(transparent)]
    Degree(#[from] DegreeError),
}

/// Invariant pair of a TC structure on a bundle over the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TCInvariant {
    pub deg_plus: i64,
    pub deg_minus: i64,
    pub a2: u8,
}

impl TCInvariant {
    pub const ZERO: TCInvariant = TCInvariant {
        deg_plus: 0,
        deg_minus: 0,
        a2: 0,
    };

    pub fn new(deg_plus: i64, deg_minus: i64) -> Self {
        TCInvariant {
            deg_plus,
            deg_minus,
            a2: (deg_plus + deg_minus).rem_euclid(2) as u8,
        }
    }
}

impl CommCocycle {
    pub fn new(alpha12: O2Path, alpha13: O2Path, alpha23: O2Path) -> Self {
        CommCocycle {
            alpha12,
            alpha13,
            alpha23,
        }
    }

    pub fn identity() -> Self {
        let id = O2Path::constant(O2Element::IDENTITY);
        CommCocycle::new(id.clone(), id.clone(), id)
    }

    pub fn path(&self, which: Overlap) -> &O2Path {
        match which {
            Overlap::Alpha12 => &self.alpha12,
            Overlap::Alpha13 => &self.alpha13,
            Overlap::Alpha23 => &self.alpha23,
        }
    }

    fn value(&self, which: Overlap, point: TriplePoint) -> O2Element {
        self.path(which)
            .value_at(point.parameter())
            .expect("triple points lie in [0, 1]")
    }
}

/// `alpha12 = R_{k t pi}`, `alpha23 = A`, `alpha13 = R_{k t pi} A`.
pub fn standard_cocycle(k: i64) -> CommCocycle {
    let k = Rational64::from_integer(k);
    CommCocycle::new(
        O2Path::affine(k, Rational64::zero(), false),
        O2Path::affine(k, Rational64::zero(), true),
        O2Path::constant(O2Element::A),
    )
}

/// `alpha12 = R_{2 m t pi}` with the other two maps constant at `I`; an
/// SO(2)-cocycle whose clutched bundle has degree `m`.
pub fn oriented_cocycle(m: i64) -> CommCocycle {
    let id = O2Path::constant(O2Element::IDENTITY);
    CommCocycle::new(
        O2Path::affine(Rational64::from_integer(2 * m), Rational64::zero(), false),
        id.clone(),
        id,
    )
}

pub fn validate(c: &CommCocycle) -> ValidationReport {
    let mut failures = Vec::new();
    for point in TriplePoint::BOTH {
        let a12 = c.value(Overlap::Alpha12, point);
        let a13 = c.value(Overlap::Alpha13, point);
        let a23 = c.value(Overlap::Alpha23, point);
        if a12 * a23 != a13 {
            failures.push(ValidationFailure::CocycleCondition {
                point,
                product: a12 * a23,
                alpha13: a13,
            });
        }
        // distinct arcs meet only at the triple points
        let pairs = [
            (Overlap::Alpha12, a12, Overlap::Alpha13, a13),
            (Overlap::Alpha12, a12, Overlap::Alpha23, a23),
            (Overlap::Alpha13, a13, Overlap::Alpha23, a23),
        ];
        for (left, x, right, y) in pairs {
            if !x.commutes_with(y) {
                failures.push(ValidationFailure::Commutativity { point, left, right });
            }
        }
    }
    ValidationReport { failures }
}

/// Pointwise `n`-th power of every transition map.
pub fn power_cocycle(c: &CommCocycle, n: i64) -> CommCocycle {
    CommCocycle::new(
        c.alpha12.pointwise_pow(n),
        c.alpha13.pointwise_pow(n),
        c.alpha23.pointwise_pow(n),
    )
}

/// Upper arc `alpha12 * alpha23` on `[0, 1/2]`, then `alpha13` traversed
/// backwards on `[1/2, 1]`.
pub fn clutching_function(c: &CommCocycle) -> Result<O2Path, CocycleError> {
    let report = validate(c);
    if !report.is_valid() {
        return Err(CocycleError::InvalidCocycle(report));
    }
    let upper = c.alpha12.pointwise_mul(&c.alpha23);
    let lower = c.alpha13.reversed();
    Ok(upper
        .concat(&lower)
        .expect("cocycle condition makes the arcs meet"))
}

/// Class in `pi_1(O(2))` of a clutching loop, an integer.
pub fn bundle_class(clutch: &O2Path) -> Result<i64, CocycleError> {
    let degree = if clutch.lies_in_so2() {
        loop_degree(clutch)?
    } else if clutch.lies_in_reflection_coset() {
        loop_degree(&clutch.right_mul(O2Element::A))?
    } else {
        return Err(CocycleError::MixedComponents);
    };
    as_integer(degree).ok_or(CocycleError::NonIntegralDegree(degree))
}

pub fn tc_invariant(c: &CommCocycle) -> Result<TCInvariant, CocycleError> {
    let deg_plus = bundle_class(&clutching_function(c)?)?;
    let deg_minus = bundle_class(&clutching_function(&power_cocycle(c, -1))?)?;
    Ok(TCInvariant::new(deg_plus, deg_minus))
}

pub fn tc_sum(x: TCInvariant, y: TCInvariant) -> TCInvariant {
    TCInvariant::new(x.deg_plus + y.deg_plus, x.deg_minus + y.deg_minus)
}

/// Closed form for the clutched degree of the `n`-th power of the standard
/// cocycle of index `k`.
pub fn expected_power_degree(k: i64, n: i64) -> i64 {
    if n % 2 == 0 {
        n * k / 2
    } else {
        (n - 1) * k / 2
    }
}

/// Fixture breaking both conditions: `alpha23 = R_{pi/2} A`, `alpha12 = R_{t pi}`,
/// `alpha13 = A`.
pub fn broken_fixture() -> CommCocycle {
    let half = Rational64::new(1, 2);
    CommCocycle::new(
        O2Path::affine(Rational64::one(), Rational64::zero(), false),
        O2Path::constant(O2Element::A),
        O2Path::affine(Rational64::zero(), half, true),
    )
}

/// Fixture whose cocycle condition holds but whose values at `t = 1` fail
/// to commute.
pub fn noncommuting_fixture() -> CommCocycle {
    let half = Rational64::new(1, 2);
    CommCocycle::new(
        O2Path::affine(half, Rational64::zero(), false),
        O2Path::affine(half, Rational64::zero(), true),
        O2Path::constant(O2Element::A),
    )
}

/// Fixture whose values commute but which fails the cocycle condition.
pub fn noncocycle_fixture(k: i64) -> CommCocycle {
    let mut c = standard_cocycle(k);
    c.alpha13 = O2Path::constant(O2Element::IDENTITY);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonal::Angle;

    #[test]
    fn standard_cocycles_validate() {
        for k in -10..=10 {
            assert!(validate(&standard_cocycle(k)).is_valid(), "k = {k}");
        }
        assert!(validate(&CommCocycle::identity()).is_valid());
    }

    #[test]
    fn standard_cocycle_values() {
        let c = standard_cocycle(1);
        let end = c.alpha13.value_at(Rational64::one()).unwrap();
        assert_eq!(end, O2Element::reflection(Angle::HALF_TURN));
        assert!(end.commutes_with(O2Element::A));
        let c2 = standard_cocycle(2);
        assert_eq!(
            c2.alpha12.value_at(Rational64::one()).unwrap(),
            O2Element::IDENTITY
        );
        let c0 = standard_cocycle(0);
        assert_eq!(c0.alpha13, O2Path::constant(O2Element::A));
    }

    #[test]
    fn fixtures_fail_as_designed() {
        let both = validate(&broken_fixture());
        assert!(both.cocycle_failures() > 0);
        assert!(both.commutativity_failures() > 0);
        let comm = validate(&noncommuting_fixture());
        assert_eq!(comm.cocycle_failures(), 0);
        assert!(comm.commutativity_failures() > 0);
        let cocycle = validate(&noncocycle_fixture(1));
        assert!(cocycle.cocycle_failures() > 0);
        assert_eq!(cocycle.commutativity_failures(), 0);
    }

    #[test]
    fn squares_of_standard() {
        let c = power_cocycle(&standard_cocycle(3), 2);
        assert_eq!(c.alpha23, O2Path::constant(O2Element::IDENTITY));
        assert_eq!(c.alpha13, O2Path::constant(O2Element::IDENTITY));
        assert_eq!(
            c.alpha12,
            O2Path::affine(Rational64::from_integer(6), Rational64::zero(), false)
        );
        assert_eq!(
            power_cocycle(&standard_cocycle(3), 0),
            CommCocycle::identity()
        );
    }

    #[test]
    fn clutching_shapes() {
        let loop_ = clutching_function(&standard_cocycle(2)).unwrap();
        assert!(loop_.lies_in_reflection_coset());
        let id = clutching_function(&CommCocycle::identity()).unwrap();
        assert_eq!(bundle_class(&id), Ok(0));
        let sq = clutching_function(&power_cocycle(&standard_cocycle(1), 2)).unwrap();
        assert!(sq.lies_in_so2());
        assert_eq!(
            sq.value_at(Rational64::new(3, 4)).unwrap(),
            O2Element::IDENTITY
        );
        assert!(matches!(
            clutching_function(&broken_fixture()),
            Err(CocycleError::InvalidCocycle(_))
        ));
    }

    #[test]
    fn degree_formula_small_range() {
        for k in -4..=4 {
            for n in -4..=4 {
                let c = power_cocycle(&standard_cocycle(k), n);
                let class = bundle_class(&clutching_function(&c).unwrap()).unwrap();
                assert_eq!(class, expected_power_degree(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn invariants() {
        for k in -5..=5 {
            let inv = tc_invariant(&standard_cocycle(k)).unwrap();
            assert_eq!(inv, TCInvariant::new(0, -k));
            assert_eq!(inv.a2 as i64, k.rem_euclid(2));
        }
        assert_eq!(
            tc_invariant(&CommCocycle::identity()),
            Ok(TCInvariant::ZERO)
        );
        for m in -3..=3 {
            assert_eq!(
                tc_invariant(&oriented_cocycle(m)),
                Ok(TCInvariant::new(m, -m))
            );
        }
    }

    #[test]
    fn oriented_cocycle_is_a_square() {
        for m in -3..=3 {
            let sq = power_cocycle(&standard_cocycle(m), 2);
            assert_eq!(tc_invariant(&sq), tc_invariant(&oriented_cocycle(m)));
        }
    }

    #[test]
    fn sum_of_invariants() {
        let f = TCInvariant::new(0, -2);
        let g = TCInvariant::new(3, -3);
        assert_eq!(tc_sum(f, g), TCInvariant::new(3, -5));
        assert_eq!(tc_sum(f, TCInvariant::ZERO), f);
    }
}
