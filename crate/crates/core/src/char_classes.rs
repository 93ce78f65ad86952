//! Mod-2 characteristic classes: the cohomology of `B_com O(2)` through a
//! degree cap, its inversion pullback, Steenrod squares, the class `a2`,
//! tensor-product formulas checked by the splitting principle, and a small
//! calculus of `(w1, w2, twisted w2)` data for bundles with a TC structure.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cocycle::TCInvariant;
use crate::f2::{rule, F2Algebra, F2Class, F2Error, Monomial, RingMap, Terms};

pub const DEFAULT_CAP: u32 = 6;

const BCOM_GENS: [(&str, u32); 4] = [("w1", 1), ("w2", 2), ("rbar", 2), ("s", 3)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharClassError {
    #[error("degree cap {0} is below 4")]
    CapTooSmall(u32),
    #[error(transparent)]
    Algebra(#[from] F2Error),
    #[error("identity fails: left side {lhs}, right side {rhs}")]
    IdentityFails { lhs: String, rhs: String },
    #[error("tensor product of ranks {0} and {1} is not supported")]
    UnsupportedTensor(u32, u32),
    #[error("algebra has no unique top-degree class")]
    NoTopClass,
}

pub fn bcom_o2_algebra(cap: u32) -> Result<Arc<F2Algebra>, CharClassError> {
    if cap < 4 {
        return Err(CharClassError::CapTooSmall(cap));
    }
    let rules = ["w1*rbar", "rbar^2", "rbar*s", "s^2"]
        .iter()
        .map(|lhs| rule(&BCOM_GENS, lhs, "0"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Arc::new(F2Algebra::new(
        "H*(BcomO(2))",
        &BCOM_GENS,
        rules,
        cap,
    )?))
}

/// `F2[u, v]`, the cohomology of `BO(1)^2`.
pub fn bo1_squared_algebra(cap: u32) -> Arc<F2Algebra> {
    Arc::new(F2Algebra::polynomial(
        "H*(BO(1)^2)",
        &[("u", 1), ("v", 1)],
        cap,
    ))
}

/// `F2[e]` with `e` in degree 2, the cohomology of `BSO(2)`.
pub fn bso2_algebra(cap: u32) -> Arc<F2Algebra> {
    Arc::new(F2Algebra::polynomial("H*(BSO(2))", &[("e", 2)], cap))
}

pub fn phi_inv_pullback(cap: u32) -> Result<RingMap, CharClassError> {
    let a = bcom_o2_algebra(cap)?;
    Ok(RingMap::from_strings(
        &a,
        &a,
        &[
            ("w1", "w1"),
            ("w2", "w2 + rbar"),
            ("rbar", "rbar"),
            ("s", "s"),
        ],
    )?)
}

pub fn k_star(cap: u32) -> Result<RingMap, CharClassError> {
    let a = bcom_o2_algebra(cap)?;
    let t = bo1_squared_algebra(cap);
    Ok(RingMap::from_strings(
        &a,
        &t,
        &[("w1", "u + v"), ("w2", "u*v")],
    )?)
}

/// Restriction to `BSO(2)`: `w2 -> e`, `rbar -> 2e = 0`.
pub fn j_star(cap: u32) -> Result<RingMap, CharClassError> {
    let a = bcom_o2_algebra(cap)?;
    let t = bso2_algebra(cap);
    Ok(RingMap::from_strings(&a, &t, &[("w2", "e")])?)
}

/// `w2 + (phi^-1)*(w2)`.
pub fn a2_class(cap: u32) -> Result<F2Class, CharClassError> {
    let phi = phi_inv_pullback(cap)?;
    let w2 = F2Class::generator(phi.source(), "w2")?;
    Ok(&w2 + &phi.apply(&w2))
}

/// A total Steenrod square, fixed by its values on generators and
/// extended multiplicatively.
#[derive(Clone, Debug)]
pub struct TotalSquare {
    algebra: Arc<F2Algebra>,
    images: Vec<F2Class>,
}

impl TotalSquare {
    pub fn new(algebra: &Arc<F2Algebra>, images: &[(&str, &str)]) -> Result<Self, CharClassError> {
        let mut imgs = Vec::with_capacity(algebra.ngens());
        for name in algebra.generator_names() {
            let text = images
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, t)| *t)
                .ok_or_else(|| F2Error::UnknownGenerator(name.clone()))?;
            imgs.push(F2Class::parse(algebra, text)?);
        }
        Ok(TotalSquare {
            algebra: Arc::clone(algebra),
            images: imgs,
        })
    }

    pub fn bcom_o2(algebra: &Arc<F2Algebra>) -> Result<Self, CharClassError> {
        Self::new(
            algebra,
            &[
                ("w1", "w1 + w1^2"),
                ("w2", "w2 + w1*w2 + w2^2"),
                ("rbar", "rbar"),
                ("s", "s + w2*rbar + w1^2*s"),
            ],
        )
    }

    /// `Sq(x) = x + x^2` on every generator; right for degree-one
    /// generators and for a mod-2 Euler class.
    pub fn additive_on(algebra: &Arc<F2Algebra>) -> Result<Self, CharClassError> {
        let texts: Vec<(String, String)> = algebra
            .generator_names()
            .iter()
            .map(|n| (n.clone(), format!("{n} + {n}^2")))
            .collect();
        let pairs: Vec<(&str, &str)> = texts
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        Self::new(algebra, &pairs)
    }

    pub fn algebra(&self) -> &Arc<F2Algebra> {
        &self.algebra
    }

    fn monomial_raw(&self, m: &Monomial) -> Terms {
        let mut acc: Terms = Terms::from([Monomial::one(self.algebra.ngens())]);
        for (img, &e) in self.images.iter().zip(&m.0) {
            for _ in 0..e {
                let mut next = Terms::new();
                for a in &acc {
                    for b in img.terms() {
                        for t in self.algebra.reduce_raw(&a.times(b)) {
                            if !next.remove(&t) {
                                next.insert(t);
                            }
                        }
                    }
                }
                acc = next;
            }
        }
        acc
    }

    fn apply_raw(&self, x: &F2Class) -> Terms {
        let mut out = Terms::new();
        for m in x.terms() {
            for t in self.monomial_raw(m) {
                if !out.remove(&t) {
                    out.insert(t);
                }
            }
        }
        out
    }

    /// Total square, dropping terms above the cap.
    pub fn apply(&self, x: &F2Class) -> F2Class {
        F2Class::from_terms(&self.algebra, &self.apply_raw(x))
    }

    /// Total square, failing if any surviving term lies above the cap.
    pub fn apply_strict(&self, x: &F2Class) -> Result<F2Class, CharClassError> {
        let raw = self.apply_raw(x);
        let cap = self.algebra.cap();
        if let Some(degree) = raw
            .iter()
            .map(|m| self.algebra.degree(m))
            .find(|&d| d > cap)
        {
            return Err(F2Error::DegreeOverflow { degree, cap }.into());
        }
        Ok(F2Class::from_terms(&self.algebra, &raw))
    }

    /// `Sq^i` of a homogeneous class of degree `d`.
    pub fn sq(&self, i: u32, x: &F2Class, d: u32) -> F2Class {
        self.apply(x).component(d + i)
    }
}

pub fn steenrod_sq(x: &F2Class) -> Result<F2Class, CharClassError> {
    TotalSquare::bcom_o2(x.algebra())?.apply_strict(x)
}

/// The two tensor-product formulas, plus a corrected line-bundle formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplittingCase {
    /// Two rank-2 bundles.
    EtimesF,
    /// Rank 2 times a line bundle, right side `w1(E)^2 + w1(L)^2 + w2(E)`.
    EtimesL,
    /// Rank 2 times a line bundle, right side `w2(E) + w1(E)w1(L) + w1(L)^2`.
    EtimesLSplitting,
}

/// `F2[x1, x2, y1, y2, z]` with Chern-root style variables.
pub fn splitting_algebra() -> Arc<F2Algebra> {
    Arc::new(F2Algebra::polynomial(
        "F2[x1,x2,y1,y2,z]",
        &[("x1", 1), ("x2", 1), ("y1", 1), ("y2", 1), ("z", 1)],
        4,
    ))
}

/// Second elementary symmetric function.
pub fn e2(roots: &[F2Class]) -> F2Class {
    let alg = roots[0].algebra();
    let mut acc = F2Class::zero(alg);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            acc = &acc + &(&roots[i] * &roots[j]);
        }
    }
    acc
}

/// Both sides of a tensor-product formula in the splitting ring.
pub fn splitting_sides(case: SplittingCase) -> (F2Class, F2Class) {
    let alg = splitting_algebra();
    let g = |n: &str| F2Class::generator(&alg, n).expect("generator exists");
    let (x1, x2, y1, y2, z) = (g("x1"), g("x2"), g("y1"), g("y2"), g("z"));
    let w1e = &x1 + &x2;
    let w2e = &x1 * &x2;
    match case {
        SplittingCase::EtimesF => {
            let roots = [&x1 + &y1, &x1 + &y2, &x2 + &y1, &x2 + &y2];
            let w1f = &y1 + &y2;
            let rhs = &(&(&w1e * &w1e) + &(&w1e * &w1f)) + &(&w1f * &w1f);
            (e2(&roots), rhs)
        }
        SplittingCase::EtimesL => {
            let lhs = e2(&[&x1 + &z, &x2 + &z]);
            let rhs = &(&(&w1e * &w1e) + &(&z * &z)) + &w2e;
            (lhs, rhs)
        }
        SplittingCase::EtimesLSplitting => {
            let lhs = e2(&[&x1 + &z, &x2 + &z]);
            let rhs = &(&w2e + &(&w1e * &z)) + &(&z * &z);
            (lhs, rhs)
        }
    }
}

pub fn splitting_oracle_w2_tensor(case: SplittingCase) -> Result<F2Class, CharClassError> {
    let (lhs, rhs) = splitting_sides(case);
    if lhs == rhs {
        Ok(lhs)
    } else {
        Err(CharClassError::IdentityFails {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }
}

/// Endomorphism of the splitting ring sending each named variable to the
/// given polynomial and fixing the rest.
pub fn substitution(images: &[(&str, &str)]) -> Result<RingMap, CharClassError> {
    let alg = splitting_algebra();
    let mut all: Vec<(&str, &str)> = Vec::new();
    for name in ["x1", "x2", "y1", "y2", "z"] {
        let text = images
            .iter()
            .find(|(n, _)| *n == name)
            .map_or(name, |(_, t)| *t);
        all.push((name, text));
    }
    Ok(RingMap::from_strings(&alg, &alg, &all)?)
}

/// `w1, w2` of an honest bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwClasses {
    pub rank: u32,
    pub w1: F2Class,
    pub w2: F2Class,
}

impl SwClasses {
    pub fn total(&self) -> F2Class {
        let one = F2Class::one(self.w1.algebra());
        &(&one + &self.w1) + &self.w2
    }

    pub fn direct_sum(&self, other: &SwClasses) -> SwClasses {
        SwClasses {
            rank: self.rank + other.rank,
            w1: &self.w1 + &other.w1,
            w2: &(&self.w2 + &(&self.w1 * &other.w1)) + &other.w2,
        }
    }

    /// Supports rank `r` times rank 1 and rank 2 times rank 2.
    pub fn tensor(&self, other: &SwClasses) -> Result<SwClasses, CharClassError> {
        match (self.rank, other.rank) {
            (_, 1) => Ok(self.tensor_line(other)),
            (1, _) => Ok(other.tensor_line(self)),
            (2, 2) => {
                let (a, b) = (&self.w1, &other.w1);
                Ok(SwClasses {
                    rank: 4,
                    w1: F2Class::zero(a.algebra()),
                    w2: &(&(a * a) + &(a * b)) + &(b * b),
                })
            }
            (r, s) => Err(CharClassError::UnsupportedTensor(r, s)),
        }
    }

    fn tensor_line(&self, line: &SwClasses) -> SwClasses {
        let r = self.rank;
        let l = &line.w1;
        let odd = |n: u32| n % 2 == 1;
        let zero = F2Class::zero(l.algebra());
        let pick = |flag: bool, c: F2Class| if flag { c } else { zero.clone() };
        SwClasses {
            rank: r,
            w1: &self.w1 + &pick(odd(r), l.clone()),
            w2: &(&self.w2 + &pick(odd(r.saturating_sub(1)), &self.w1 * l))
                + &pick(odd(r * r.saturating_sub(1) / 2), l * l),
        }
    }
}

/// A bundle with a TC structure, seen through `w1`, `w2`, and `w2` of the
/// bundle underlying its `phi^-1` twist. The twist does not change `w1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TcBundleData {
    pub rank: u32,
    pub w1: F2Class,
    pub w2: F2Class,
    pub twisted_w2: F2Class,
}

impl TcBundleData {
    fn underlying(&self) -> SwClasses {
        SwClasses {
            rank: self.rank,
            w1: self.w1.clone(),
            w2: self.w2.clone(),
        }
    }

    fn twisted(&self) -> SwClasses {
        SwClasses {
            rank: self.rank,
            w1: self.w1.clone(),
            w2: self.twisted_w2.clone(),
        }
    }

    fn from_pair(under: SwClasses, twist: SwClasses) -> Self {
        debug_assert_eq!(under.w1, twist.w1);
        TcBundleData {
            rank: under.rank,
            w1: under.w1,
            w2: under.w2,
            twisted_w2: twist.w2,
        }
    }

    /// Trivial bundle with the null structure.
    pub fn trivial(algebra: &Arc<F2Algebra>, rank: u32) -> Self {
        let zero = F2Class::zero(algebra);
        TcBundleData {
            rank,
            w1: zero.clone(),
            w2: zero.clone(),
            twisted_w2: zero,
        }
    }

    /// Line bundle with its standard structure.
    pub fn standard_line(w1: &F2Class) -> Self {
        let zero = F2Class::zero(w1.algebra());
        TcBundleData {
            rank: 1,
            w1: w1.clone(),
            w2: zero.clone(),
            twisted_w2: zero,
        }
    }

    /// An algebraic structure on a bundle: the twist changes nothing.
    pub fn algebraic(classes: &SwClasses) -> Self {
        Self::from_pair(classes.clone(), classes.clone())
    }

    /// Pullback along a degree-one collapse to the sphere of a rank-2
    /// structure with the given clutching invariant.
    pub fn from_sphere_invariant(
        algebra: &Arc<F2Algebra>,
        inv: TCInvariant,
    ) -> Result<Self, CharClassError> {
        let top = algebra.top_monomial().ok_or(CharClassError::NoTopClass)?;
        let y = F2Class::from_monomial(algebra, &top);
        let zero = F2Class::zero(algebra);
        let mod2 = |d: i64| {
            if d.rem_euclid(2) == 1 {
                y.clone()
            } else {
                zero.clone()
            }
        };
        Ok(TcBundleData {
            rank: 2,
            w1: zero.clone(),
            w2: mod2(inv.deg_plus),
            twisted_w2: mod2(inv.deg_minus),
        })
    }

    pub fn direct_sum(&self, other: &TcBundleData) -> TcBundleData {
        Self::from_pair(
            self.underlying().direct_sum(&other.underlying()),
            self.twisted().direct_sum(&other.twisted()),
        )
    }

    /// The twist of a tensor product is the tensor product of the twists.
    pub fn tensor(&self, other: &TcBundleData) -> Result<TcBundleData, CharClassError> {
        Ok(Self::from_pair(
            self.underlying().tensor(&other.underlying())?,
            self.twisted().tensor(&other.twisted())?,
        ))
    }

    pub fn total_sw(&self) -> F2Class {
        self.underlying().total()
    }

    pub fn a2(&self) -> Result<u8, CharClassError> {
        a2_of_tc_bundle(self)
    }
}

/// Top-degree coefficient of `w2 + twisted w2`.
pub fn a2_of_tc_bundle(b: &TcBundleData) -> Result<u8, CharClassError> {
    let alg = b.w2.algebra();
    let top = alg.top_monomial().ok_or(CharClassError::NoTopClass)?;
    Ok((&b.w2 + &b.twisted_w2).contains(&top) as u8)
}

/// Invariants of a stable class: total Stiefel-Whitney class and `a2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableInvariants {
    pub total_sw: F2Class,
    pub a2: u8,
}

impl StableInvariants {
    pub fn zero(algebra: &Arc<F2Algebra>) -> Self {
        StableInvariants {
            total_sw: F2Class::one(algebra),
            a2: 0,
        }
    }

    pub fn of(b: &TcBundleData) -> Result<Self, CharClassError> {
        Ok(StableInvariants {
            total_sw: b.total_sw(),
            a2: b.a2()?,
        })
    }

    pub fn plus(&self, other: &StableInvariants) -> Self {
        StableInvariants {
            total_sw: &self.total_sw * &other.total_sw,
            a2: self.a2 ^ other.a2,
        }
    }

    pub fn minus(&self, other: &StableInvariants) -> Self {
        StableInvariants {
            total_sw: &self.total_sw * &unit_inverse(&other.total_sw),
            a2: self.a2 ^ other.a2,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a2 == 0 && self.total_sw == F2Class::one(self.total_sw.algebra())
    }
}

/// Inverse of `1 + n` with `n` of positive degree: `sum n^k`.
pub fn unit_inverse(x: &F2Class) -> F2Class {
    let alg = x.algebra();
    let one = F2Class::one(alg);
    let n = x + &one;
    let mut acc = one.clone();
    let mut power = one;
    for _ in 0..alg.cap() {
        power = &power * &n;
        acc = &acc + &power;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(a: &Arc<F2Algebra>, s: &str) -> F2Class {
        F2Class::parse(a, s).unwrap()
    }

    #[test]
    fn bcom_basis() {
        let a = bcom_o2_algebra(6).unwrap();
        assert_eq!(a.dimension_in_degree(2), 3);
        let dims: Vec<usize> = (0..=6).map(|d| a.dimension_in_degree(d)).collect();
        assert_eq!(dims, vec![1, 1, 3, 3, 5, 5, 7]);
        assert!(cls(&a, "w1*rbar").is_zero());
        assert!(cls(&a, "rbar^2").is_zero());
        assert_eq!(
            bcom_o2_algebra(3).unwrap_err(),
            CharClassError::CapTooSmall(3)
        );
    }

    #[test]
    fn inversion_examples() {
        let phi = phi_inv_pullback(6).unwrap();
        let a = phi.source().clone();
        assert_eq!(phi.apply(&cls(&a, "w2")), cls(&a, "w2 + rbar"));
        assert_eq!(phi.apply(&cls(&a, "w1*w2")), cls(&a, "w1*w2"));
        let twice = phi.then(&phi).unwrap();
        for m in a.basis() {
            let x = F2Class::from_monomial(&a, m);
            assert_eq!(twice.apply(&x), x);
        }
        assert!(phi.is_multiplicative_on_basis());
    }

    #[test]
    fn restriction_maps() {
        let k = k_star(6).unwrap();
        let a = k.source().clone();
        let t = k.target().clone();
        assert_eq!(k.apply(&cls(&a, "w2")), cls(&t, "u*v"));
        assert!(k.apply(&cls(&a, "rbar")).is_zero());
        let composite = phi_inv_pullback(6).unwrap().then(&k).unwrap();
        for g in ["w1", "w2", "rbar", "s"] {
            assert_eq!(
                composite.image_of_generator(g).unwrap(),
                k.image_of_generator(g).unwrap()
            );
        }
        let a2 = a2_class(6).unwrap();
        assert_eq!(a2, cls(&a, "rbar"));
        assert!(k.apply(&a2).is_zero());
        assert!(j_star(6).unwrap().apply(&a2).is_zero());
    }

    #[test]
    fn squares() {
        let a = bcom_o2_algebra(6).unwrap();
        assert_eq!(steenrod_sq(&cls(&a, "rbar")).unwrap(), cls(&a, "rbar"));
        assert_eq!(
            steenrod_sq(&cls(&a, "s")).unwrap(),
            cls(&a, "s + w2*rbar + w1^2*s")
        );
        assert_eq!(steenrod_sq(&cls(&a, "1")).unwrap(), cls(&a, "1"));
        assert!(matches!(
            steenrod_sq(&cls(&a, "w2^3")),
            Err(CharClassError::Algebra(F2Error::DegreeOverflow { .. }))
        ));
        let sq = TotalSquare::bcom_o2(&a).unwrap();
        let s = cls(&a, "s");
        assert!(sq.sq(1, &sq.sq(1, &s, 3), 4).is_zero());
        assert_eq!(sq.sq(1, &sq.sq(2, &s, 3), 5), sq.sq(3, &s, 3));
        assert_eq!(sq.sq(1, &s, 3), cls(&a, "w2*rbar"));
    }

    #[test]
    fn tensor_formulas() {
        assert!(splitting_oracle_w2_tensor(SplittingCase::EtimesF).is_ok());
        assert!(matches!(
            splitting_oracle_w2_tensor(SplittingCase::EtimesL),
            Err(CharClassError::IdentityFails { .. })
        ));
        assert!(splitting_oracle_w2_tensor(SplittingCase::EtimesLSplitting).is_ok());
    }

    #[test]
    fn inverse_of_units() {
        let a = bcom_o2_algebra(6).unwrap();
        let x = cls(&a, "1 + w1 + w2");
        assert_eq!(&x * &unit_inverse(&x), cls(&a, "1"));
    }
}
