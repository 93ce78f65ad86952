//! Truncated commutative algebras over the two-element field, presented by
//! generators and monomial rewrite rules.
//!
//! A rule rewrites a monomial to a sum of monomials of the same degree
//! (possibly the empty sum). The algebra keeps only monomials of degree at
//! most `cap`; everything above is the zero ideal of the truncation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("rule {index} is not degree-preserving")]
    InhomogeneousRule { index: usize },
    #[error("rewriting is not confluent at {0}")]
    NotConfluent(String),
    #[error("classes belong to different algebras")]
    AlgebraMismatch,
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("image of generator `{name}` has wrong degree (expected {expected})")]
    DegreeMismatch { name: String, expected: u32 },
    #[error("relation `{0}` does not map to zero")]
    RelationViolation(String),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("target truncation degree {target_cap} exceeds source truncation degree {source_cap}")]
    CapMismatch { source_cap: u32, target_cap: u32 },
    #[error("result has a term of degree {degree} above the truncation degree {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },
}

/// Exponent vector, one entry per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, assuming divisibility.
    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }
}

/// Sum over F2: a set of monomials.
pub type Terms = BTreeSet<Monomial>;

fn toggle(terms: &mut Terms, m: Monomial) {
    if !terms.remove(&m) {
        terms.insert(m);
    }
}

fn add_terms(into: &mut Terms, from: Terms) {
    for m in from {
        toggle(into, m);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: Terms,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Algebra {
    name: String,
    names: Vec<String>,
    degrees: Vec<u32>,
    rules: Vec<Rule>,
    cap: u32,
    basis: Vec<Monomial>,
}

impl F2Algebra {
    /// Builds the algebra and checks homogeneity and confluence of the rules
    /// on every monomial through `cap`.
    pub fn new(
        name: impl Into<String>,
        generators: &[(&str, u32)],
        rules: Vec<Rule>,
        cap: u32,
    ) -> Result<Self, F2Error> {
        let names: Vec<String> = generators.iter().map(|(n, _)| n.to_string()).collect();
        let degrees: Vec<u32> = generators.iter().map(|&(_, d)| d).collect();
        let mut alg = F2Algebra {
            name: name.into(),
            names,
            degrees,
            rules,
            cap,
            basis: Vec::new(),
        };
        for (index, rule) in alg.rules.iter().enumerate() {
            let d = alg.degree(&rule.lhs);
            if rule.rhs.iter().any(|m| alg.degree(m) != d) {
                return Err(F2Error::InhomogeneousRule { index });
            }
        }
        let all = alg.monomials_through(cap);
        alg.check_confluence(&all)?;
        let mut basis: Vec<Monomial> = all.into_iter().filter(|m| alg.is_irreducible(m)).collect();
        basis.sort_by(|a, b| alg.display_order(a, b));
        alg.basis = basis;
        Ok(alg)
    }

    /// Free polynomial algebra truncated at `cap`.
    pub fn polynomial(name: impl Into<String>, generators: &[(&str, u32)], cap: u32) -> Self {
        Self::new(name, generators, Vec::new(), cap).expect("no rules, nothing to check")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize, F2Error> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| F2Error::UnknownGenerator(name.to_string()))
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.degrees).map(|(e, d)| e * d).sum()
    }

    /// Basis monomials ordered by degree.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_in_degree(&self, d: u32) -> Vec<Monomial> {
        self.basis
            .iter()
            .filter(|m| self.degree(m) == d)
            .cloned()
            .collect()
    }

    pub fn dimension_in_degree(&self, d: u32) -> usize {
        self.basis.iter().filter(|m| self.degree(m) == d).count()
    }

    fn display_order(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| b.cmp(a))
    }

    fn monomials_through(&self, cap: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.ngens()];
        self.extend_monomials(0, 0, cap, &mut current, &mut out);
        out
    }

    fn extend_monomials(
        &self,
        gen: usize,
        degree: u32,
        cap: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if gen == self.ngens() {
            out.push(Monomial(current.clone()));
            return;
        }
        let step = self.degrees[gen];
        let mut e = 0;
        loop {
            let d = degree + e * step;
            if d > cap {
                break;
            }
            current[gen] = e;
            self.extend_monomials(gen + 1, d, cap, current, out);
            if step == 0 {
                break;
            }
            e += 1;
        }
        current[gen] = 0;
    }

    fn is_irreducible(&self, m: &Monomial) -> bool {
        !self.rules.iter().any(|r| r.lhs.divides(m))
    }

    fn apply_rule(&self, rule: &Rule, m: &Monomial) -> Terms {
        let rest = m.quotient(&rule.lhs);
        rule.rhs.iter().map(|r| r.times(&rest)).collect()
    }

    /// Normal form without truncation.
    pub fn reduce_raw(&self, m: &Monomial) -> Terms {
        match self.rules.iter().find(|r| r.lhs.divides(m)) {
            None => BTreeSet::from([m.clone()]),
            Some(rule) => {
                let mut out = Terms::new();
                for t in self.apply_rule(rule, m) {
                    add_terms(&mut out, self.reduce_raw(&t));
                }
                out
            }
        }
    }

    pub fn reduce_terms_raw(&self, terms: &Terms) -> Terms {
        let mut out = Terms::new();
        for m in terms {
            add_terms(&mut out, self.reduce_raw(m));
        }
        out
    }

    fn truncate(&self, terms: Terms) -> Terms {
        terms
            .into_iter()
            .filter(|m| self.degree(m) <= self.cap)
            .collect()
    }

    pub fn normal_form(&self, m: &Monomial) -> Terms {
        if self.degree(m) > self.cap {
            return Terms::new();
        }
        self.truncate(self.reduce_raw(m))
    }

    fn check_confluence(&self, monomials: &[Monomial]) -> Result<(), F2Error> {
        for m in monomials {
            let reference = self.reduce_raw(m);
            for rule in self.rules.iter().filter(|r| r.lhs.divides(m)) {
                let another = self.reduce_terms_raw(&self.apply_rule(rule, m));
                if another != reference {
                    return Err(F2Error::NotConfluent(self.monomial_string(m)));
                }
            }
        }
        Ok(())
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> =
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], e)
                    }
                })
                .collect();
        parts.join("*")
    }

    pub fn terms_string(&self, terms: &Terms) -> String {
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut ts: Vec<&Monomial> = terms.iter().collect();
        ts.sort_by(|a, b| self.display_order(a, b));
        ts.into_iter()
            .map(|m| self.monomial_string(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses `w1^2*w2 + s`, `1`, `0`; juxtaposition is not multiplication.
    pub fn parse_terms(&self, text: &str) -> Result<Terms, F2Error> {
        let mut out = Terms::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(F2Error::Parse(text.to_string()));
            }
            if term == "0" {
                continue;
            }
            let mut m = Monomial::one(self.ngens());
            if term != "1" {
                for factor in term.split('*') {
                    let factor = factor.trim();
                    let (base, exp) = match factor.split_once('^') {
                        Some((b, e)) => (
                            b.trim(),
                            e.trim()
                                .parse::<u32>()
                                .map_err(|_| F2Error::Parse(text.to_string()))?,
                        ),
                        None => (factor, 1),
                    };
                    let i = self.generator_index(base)?;
                    m.0[i] += exp;
                }
            }
            toggle(&mut out, m);
        }
        Ok(out)
    }

    /// The unique basis monomial of top degree, if there is exactly one.
    pub fn top_monomial(&self) -> Option<Monomial> {
        let top = self.basis_in_degree(self.cap);
        (top.len() == 1).then(|| top[0].clone())
    }
}

/// An element of an [`F2Algebra`], stored in normal form.
#[derive(Clone, Debug)]
pub struct F2Class {
    algebra: Arc<F2Algebra>,
    terms: Terms,
}

impl PartialEq for F2Class {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
    }
}

impl Eq for F2Class {}

impl F2Class {
    pub fn zero(algebra: &Arc<F2Algebra>) -> Self {
        F2Class {
            algebra: Arc::clone(algebra),
            terms: Terms::new(),
        }
    }

    pub fn one(algebra: &Arc<F2Algebra>) -> Self {
        Self::from_monomial(algebra, &Monomial::one(algebra.ngens()))
    }

    pub fn from_monomial(algebra: &Arc<F2Algebra>, m: &Monomial) -> Self {
        F2Class {
            algebra: Arc::clone(algebra),
            terms: algebra.normal_form(m),
        }
    }

    pub fn from_terms(algebra: &Arc<F2Algebra>, terms: &Terms) -> Self {
        let mut out = Terms::new();
        for m in terms {
            add_terms(&mut out, algebra.normal_form(m));
        }
        F2Class {
            algebra: Arc::clone(algebra),
            terms: out,
        }
    }

    pub fn generator(algebra: &Arc<F2Algebra>, name: &str) -> Result<Self, F2Error> {
        let i = algebra.generator_index(name)?;
        Ok(Self::from_monomial(
            algebra,
            &Monomial::generator(algebra.ngens(), i),
        ))
    }

    pub fn parse(algebra: &Arc<F2Algebra>, text: &str) -> Result<Self, F2Error> {
        Ok(Self::from_terms(algebra, &algebra.parse_terms(text)?))
    }

    pub fn algebra(&self) -> &Arc<F2Algebra> {
        &self.algebra
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    fn same_algebra(&self, other: &F2Class) -> Result<(), F2Error> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(F2Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &F2Class) -> Result<F2Class, F2Error> {
        self.same_algebra(other)?;
        let mut terms = self.terms.clone();
        add_terms(&mut terms, other.terms.clone());
        Ok(F2Class {
            algebra: Arc::clone(&self.algebra),
            terms,
        })
    }

    /// Product reduced by the rules but not truncated.
    pub fn mul_raw(&self, other: &F2Class) -> Result<Terms, F2Error> {
        self.same_algebra(other)?;
        let mut out = Terms::new();
        for a in &self.terms {
            for b in &other.terms {
                add_terms(&mut out, self.algebra.reduce_raw(&a.times(b)));
            }
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &F2Class) -> Result<F2Class, F2Error> {
        let raw = self.mul_raw(other)?;
        Ok(F2Class {
            algebra: Arc::clone(&self.algebra),
            terms: self.algebra.truncate(raw),
        })
    }

    pub fn pow(&self, n: u32) -> F2Class {
        (0..n).fold(F2Class::one(&self.algebra), |acc, _| &acc * self)
    }

    /// Degree-`d` component.
    pub fn component(&self, d: u32) -> F2Class {
        F2Class {
            algebra: Arc::clone(&self.algebra),
            terms: self
                .terms
                .iter()
                .filter(|m| self.algebra.degree(m) == d)
                .cloned()
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|m| self.algebra.degree(m)).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.iter().all(|m| self.algebra.degree(m) == d)
    }
}

impl std::ops::Add for &F2Class {
    type Output = F2Class;
    fn add(self, rhs: &F2Class) -> F2Class {
        self.try_add(rhs).expect("classes in one algebra")
    }
}

impl std::ops::Mul for &F2Class {
    type Output = F2Class;
    fn mul(self, rhs: &F2Class) -> F2Class {
        self.try_mul(rhs).expect("classes in one algebra")
    }
}

impl fmt::Display for F2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algebra.terms_string(&self.terms))
    }
}

impl Serialize for F2Class {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A graded ring homomorphism given by generator images.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<F2Algebra>,
    target: Arc<F2Algebra>,
    images: Vec<F2Class>,
}

impl RingMap {
    pub fn new(
        source: &Arc<F2Algebra>,
        target: &Arc<F2Algebra>,
        images: Vec<F2Class>,
    ) -> Result<Self, F2Error> {
        if images.len() != source.ngens() {
            return Err(F2Error::ImageCount {
                expected: source.ngens(),
                got: images.len(),
            });
        }
        if target.cap() > source.cap() {
            return Err(F2Error::CapMismatch {
                source_cap: source.cap(),
                target_cap: target.cap(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            let expected = source.generator_degrees()[i];
            if img.algebra() != target || !img.is_homogeneous_of(expected) {
                return Err(F2Error::DegreeMismatch {
                    name: source.generator_names()[i].clone(),
                    expected,
                });
            }
        }
        let map = RingMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        };
        for rule in source.rules() {
            let lhs = map.image_of_monomial(&rule.lhs);
            let rhs = rule.rhs.iter().fold(F2Class::zero(target), |acc, m| {
                &acc + &map.image_of_monomial(m)
            });
            if lhs != rhs {
                return Err(F2Error::RelationViolation(
                    source.monomial_string(&rule.lhs),
                ));
            }
        }
        Ok(map)
    }

    /// Builds a map from `name -> image text` pairs; unnamed generators go to 0.
    pub fn from_strings(
        source: &Arc<F2Algebra>,
        target: &Arc<F2Algebra>,
        images: &[(&str, &str)],
    ) -> Result<Self, F2Error> {
        let mut imgs = vec![F2Class::zero(target); source.ngens()];
        for (name, text) in images {
            imgs[source.generator_index(name)?] = F2Class::parse(target, text)?;
        }
        Self::new(source, target, imgs)
    }

    pub fn source(&self) -> &Arc<F2Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<F2Algebra> {
        &self.target
    }

    fn image_of_monomial(&self, m: &Monomial) -> F2Class {
        m.0.iter()
            .zip(&self.images)
            .fold(F2Class::one(&self.target), |acc, (&e, img)| {
                &acc * &img.pow(e)
            })
    }

    pub fn apply(&self, x: &F2Class) -> F2Class {
        x.terms()
            .iter()
            .fold(F2Class::zero(&self.target), |acc, m| {
                &acc + &self.image_of_monomial(m)
            })
    }

    pub fn image_of_generator(&self, name: &str) -> Result<&F2Class, F2Error> {
        Ok(&self.images[self.source.generator_index(name)?])
    }

    /// `other` after `self`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap, F2Error> {
        let images = self.images.iter().map(|x| other.apply(x)).collect();
        RingMap::new(&self.source, &other.target, images)
    }

    /// Checks `f(xy) = f(x) f(y)` on every pair of basis monomials.
    pub fn is_multiplicative_on_basis(&self) -> bool {
        let basis: Vec<F2Class> = self
            .source
            .basis()
            .iter()
            .map(|m| F2Class::from_monomial(&self.source, m))
            .collect();
        basis.iter().all(|x| {
            basis
                .iter()
                .all(|y| self.apply(&(x * y)) == &self.apply(x) * &self.apply(y))
        })
    }
}

/// Convenience: a rule `lhs -> rhs` written as strings.
pub fn rule(generators: &[(&str, u32)], lhs: &str, rhs: &str) -> Result<Rule, F2Error> {
    let scratch = F2Algebra {
        name: String::new(),
        names: generators.iter().map(|(n, _)| n.to_string()).collect(),
        degrees: generators.iter().map(|&(_, d)| d).collect(),
        rules: Vec::new(),
        cap: 0,
        basis: Vec::new(),
    };
    let lhs_terms = scratch.parse_terms(lhs)?;
    let lhs = match lhs_terms.into_iter().collect::<Vec<_>>().as_slice() {
        [m] => m.clone(),
        _ => return Err(F2Error::Parse(lhs.to_string())),
    };
    Ok(Rule {
        lhs,
        rhs: scratch.parse_terms(rhs)?,
    })
}

/// Index of every basis monomial, for callers building coefficient vectors.
pub fn basis_index(alg: &F2Algebra) -> HashMap<Monomial, usize> {
    alg.basis()
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const GENS: [(&str, u32); 2] = [("x", 1), ("y", 1)];

    fn exterior_like() -> Arc<F2Algebra> {
        let rules = vec![
            rule(&GENS, "x^2", "0").unwrap(),
            rule(&GENS, "y^2", "x*y").unwrap(),
        ];
        Arc::new(F2Algebra::new("test", &GENS, rules, 4).unwrap())
    }

    #[test]
    fn basis_and_products() {
        let a = exterior_like();
        assert_eq!(a.dimension_in_degree(0), 1);
        assert_eq!(a.dimension_in_degree(1), 2);
        assert_eq!(a.dimension_in_degree(2), 1);
        assert_eq!(a.dimension_in_degree(3), 0);
        let y = F2Class::generator(&a, "y").unwrap();
        assert_eq!((&y * &y).to_string(), "x*y");
        assert!((&y * &(&y * &y)).is_zero());
    }

    #[test]
    fn parse_round_trip() {
        let a = Arc::new(F2Algebra::polynomial("p", &GENS, 4));
        let c = F2Class::parse(&a, "x^2*y + y + y + x").unwrap();
        assert_eq!(c.to_string(), "x + x^2*y");
        assert_eq!(F2Class::parse(&a, "0").unwrap(), F2Class::zero(&a));
        assert!(F2Class::parse(&a, "q").is_err());
        assert!(F2Class::parse(&a, "x + ").is_err());
    }

    #[test]
    fn truncation_drops_high_degrees() {
        let a = Arc::new(F2Algebra::polynomial("p", &GENS, 2));
        let x = F2Class::generator(&a, "x").unwrap();
        assert!(x.pow(3).is_zero());
        assert_eq!(x.mul_raw(&x.pow(2)).unwrap().len(), 1);
    }

    #[test]
    fn non_confluent_rules_rejected() {
        // x^2*y goes to 0 or to y^3
        let rules = vec![
            rule(&GENS, "x^2", "0").unwrap(),
            rule(&GENS, "x*y", "y^2").unwrap(),
        ];
        let err = F2Algebra::new("bad", &GENS, rules, 3).unwrap_err();
        assert!(matches!(err, F2Error::NotConfluent(_)));
    }

    #[test]
    fn inhomogeneous_rule_rejected() {
        let rules = vec![rule(&GENS, "x^2", "y").unwrap()];
        assert_eq!(
            F2Algebra::new("bad", &GENS, rules, 3).unwrap_err(),
            F2Error::InhomogeneousRule { index: 0 }
        );
    }

    #[test]
    fn ring_map_checks_relations() {
        let a = exterior_like();
        let p = Arc::new(F2Algebra::polynomial("p", &GENS, 4));
        assert!(matches!(
            RingMap::from_strings(&a, &p, &[("x", "x"), ("y", "y")]),
            Err(F2Error::RelationViolation(_))
        ));
        let ok = RingMap::from_strings(&a, &p, &[("y", "y")]);
        assert!(matches!(ok, Err(F2Error::RelationViolation(_))));
        let zero = RingMap::from_strings(&a, &p, &[]).unwrap();
        assert!(zero.is_multiplicative_on_basis());
    }
}
