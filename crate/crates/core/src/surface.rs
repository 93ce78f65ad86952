//! Mod-2 cohomology of closed surfaces, its unit group, and the real
//! K-theory ring presentation read off through total Stiefel-Whitney classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{FiniteAbelianGroup, GroupError};
use crate::char_classes::{CharClassError, StableInvariants, SwClasses, TcBundleData};
use crate::cocycle::{oriented_cocycle, standard_cocycle, tc_invariant, CocycleError};
use crate::f2::{rule, F2Algebra, F2Class, F2Error, Monomial, RingMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SurfaceKind {
    Sphere,
    Orientable(u32),
    NonOrientable(u32),
}

impl SurfaceKind {
    /// First mod-2 Betti number.
    pub fn b1(self) -> usize {
        match self {
            SurfaceKind::Sphere => 0,
            SurfaceKind::Orientable(g) => 2 * g as usize,
            SurfaceKind::NonOrientable(n) => n as usize,
        }
    }

    pub fn slug(self) -> String {
        match self {
            SurfaceKind::Sphere => "sphere".to_string(),
            SurfaceKind::Orientable(g) => format!("genus_{g}"),
            SurfaceKind::NonOrientable(n) => format!("rp_{n}"),
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Sphere => f.write_str("sphere"),
            SurfaceKind::Orientable(g) => write!(f, "genus:{g}"),
            SurfaceKind::NonOrientable(n) => write!(f, "rp:{n}"),
        }
    }
}

impl FromStr for SurfaceKind {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SurfaceError::BadSelector(s.to_string());
        if s == "sphere" {
            return Ok(SurfaceKind::Sphere);
        }
        let (kind, count) = s.split_once(':').ok_or_else(bad)?;
        let count: u32 = count.parse().map_err(|_| bad())?;
        if count == 0 {
            return Err(bad());
        }
        match kind {
            "genus" => Ok(SurfaceKind::Orientable(count)),
            "rp" => Ok(SurfaceKind::NonOrientable(count)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("surface selector `{0}` is not sphere, genus:<g> or rp:<n>")]
    BadSelector(String),
    #[error(transparent)]
    Algebra(#[from] F2Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    CharClass(#[from] CharClassError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error("class {0} is not a unit")]
    NotAUnit(String),
    #[error("unit {0} is not in the subgroup generated by the additive generators")]
    DiscreteLogFailure(String),
    #[error("{check}: {invariant} differs, {lhs} against {rhs}")]
    MismatchError {
        check: String,
        invariant: String,
        lhs: String,
        rhs: String,
    },
}

/// Cohomology ring of a surface with the cup pairing on degree one.
#[derive(Clone, Debug)]
pub struct SurfaceAlgebra {
    kind: SurfaceKind,
    algebra: Arc<F2Algebra>,
    degree_one: Vec<Monomial>,
    top: Monomial,
    /// `form[i][j]` is the top coefficient of `x_i x_j`.
    form: Vec<Vec<u8>>,
}

fn orientable_algebra(g: u32) -> Result<Arc<F2Algebra>, F2Error> {
    let mut names: Vec<String> = (1..=g).map(|i| format!("a{i}")).collect();
    names.extend((1..=g).map(|i| format!("b{i}")));
    names.push("y2".to_string());
    let gens: Vec<(&str, u32)> = names
        .iter()
        .map(|n| (n.as_str(), if n == "y2" { 2 } else { 1 }))
        .collect();
    let mut rules = Vec::new();
    for i in 1..=g {
        for j in i..=g {
            let sq = |x: &str| {
                if i == j {
                    format!("{x}{i}^2")
                } else {
                    format!("{x}{i}*{x}{j}")
                }
            };
            rules.push(rule(&gens, &sq("a"), "0")?);
            rules.push(rule(&gens, &sq("b"), "0")?);
        }
        for k in 1..=g {
            let rhs = if i == k { "y2" } else { "0" };
            rules.push(rule(&gens, &format!("a{i}*b{k}"), rhs)?);
        }
        rules.push(rule(&gens, &format!("a{i}*y2"), "0")?);
        rules.push(rule(&gens, &format!("b{i}*y2"), "0")?);
    }
    rules.push(rule(&gens, "y2^2", "0")?);
    Ok(Arc::new(F2Algebra::new(
        format!("H*(Sigma_{g})"),
        &gens,
        rules,
        2,
    )?))
}

fn nonorientable_algebra(n: u32) -> Result<Arc<F2Algebra>, F2Error> {
    let mut names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    names.push("y2".to_string());
    let gens: Vec<(&str, u32)> = names
        .iter()
        .map(|s| (s.as_str(), if s == "y2" { 2 } else { 1 }))
        .collect();
    let mut rules = Vec::new();
    for i in 1..=n {
        rules.push(rule(&gens, &format!("a{i}^2"), "y2")?);
        for k in i + 1..=n {
            rules.push(rule(&gens, &format!("a{i}*a{k}"), "0")?);
        }
        rules.push(rule(&gens, &format!("a{i}*y2"), "0")?);
    }
    rules.push(rule(&gens, "y2^2", "0")?);
    Ok(Arc::new(F2Algebra::new(
        format!("H*(P_{n})"),
        &gens,
        rules,
        2,
    )?))
}

fn sphere_algebra() -> Result<Arc<F2Algebra>, F2Error> {
    let gens = [("y2", 2)];
    let rules = vec![rule(&gens, "y2^2", "0")?];
    Ok(Arc::new(F2Algebra::new("H*(S^2)", &gens, rules, 2)?))
}

pub fn surface_algebra(kind: SurfaceKind) -> Result<SurfaceAlgebra, SurfaceError> {
    let algebra = match kind {
        SurfaceKind::Sphere => sphere_algebra()?,
        SurfaceKind::Orientable(g) => orientable_algebra(g)?,
        SurfaceKind::NonOrientable(n) => nonorientable_algebra(n)?,
    };
    let degree_one = algebra.basis_in_degree(1);
    let top = algebra.top_monomial().ok_or(CharClassError::NoTopClass)?;
    let form = degree_one
        .iter()
        .map(|x| {
            degree_one
                .iter()
                .map(|y| algebra.normal_form(&x.times(y)).contains(&top) as u8)
                .collect()
        })
        .collect();
    Ok(SurfaceAlgebra {
        kind,
        algebra,
        degree_one,
        top,
        form,
    })
}

impl SurfaceAlgebra {
    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn algebra(&self) -> &Arc<F2Algebra> {
        &self.algebra
    }

    pub fn b1(&self) -> usize {
        self.degree_one.len()
    }

    pub fn generator(&self, name: &str) -> Result<F2Class, SurfaceError> {
        Ok(F2Class::generator(&self.algebra, name)?)
    }

    pub fn top_class(&self) -> F2Class {
        F2Class::from_monomial(&self.algebra, &self.top)
    }

    /// Names of the degree-one generators, in basis order.
    pub fn degree_one_names(&self) -> Vec<String> {
        self.degree_one
            .iter()
            .map(|m| self.algebra.monomial_string(m))
            .collect()
    }

    pub fn unit_to_class(&self, u: &UnitElement) -> F2Class {
        let mut c = F2Class::one(&self.algebra);
        for (bit, m) in u.x1.iter().zip(&self.degree_one) {
            if *bit == 1 {
                c = &c + &F2Class::from_monomial(&self.algebra, m);
            }
        }
        if u.x2 == 1 {
            c = &c + &self.top_class();
        }
        c
    }

    pub fn class_to_unit(&self, c: &F2Class) -> Result<UnitElement, SurfaceError> {
        let one = Monomial::one(self.algebra.ngens());
        if !c.contains(&one) {
            return Err(SurfaceError::NotAUnit(c.to_string()));
        }
        Ok(UnitElement {
            x1: self
                .degree_one
                .iter()
                .map(|m| c.contains(m) as u8)
                .collect(),
            x2: c.contains(&self.top) as u8,
        })
    }

    pub fn unit_one(&self) -> UnitElement {
        UnitElement {
            x1: vec![0; self.b1()],
            x2: 0,
        }
    }

    pub fn unit_mul(&self, a: &UnitElement, b: &UnitElement) -> UnitElement {
        let mut cross = 0u8;
        for (i, &ai) in a.x1.iter().enumerate() {
            for (j, &bj) in b.x1.iter().enumerate() {
                cross ^= ai & bj & self.form[i][j];
            }
        }
        UnitElement {
            x1: a.x1.iter().zip(&b.x1).map(|(x, y)| x ^ y).collect(),
            x2: a.x2 ^ b.x2 ^ cross,
        }
    }

    /// `(1 + x + y)^-1 = 1 + x + y + x^2`.
    pub fn unit_inverse(&self, a: &UnitElement) -> UnitElement {
        let mut square = 0u8;
        for (i, &ai) in a.x1.iter().enumerate() {
            for (j, &aj) in a.x1.iter().enumerate() {
                square ^= ai & aj & self.form[i][j];
            }
        }
        UnitElement {
            x1: a.x1.clone(),
            x2: a.x2 ^ square,
        }
    }

    pub fn unit_pow(&self, a: &UnitElement, n: i64) -> UnitElement {
        let base = if n < 0 {
            self.unit_inverse(a)
        } else {
            a.clone()
        };
        (0..n.unsigned_abs()).fold(self.unit_one(), |acc, _| self.unit_mul(&acc, &base))
    }

    pub fn all_units(&self) -> Vec<UnitElement> {
        let n = self.b1();
        (0u64..1 << (n + 1))
            .map(|bits| UnitElement {
                x1: (0..n).map(|i| ((bits >> i) & 1) as u8).collect(),
                x2: ((bits >> n) & 1) as u8,
            })
            .collect()
    }

    /// Total class of a formal sum of bundles.
    pub fn total_sw(&self, terms: &[(VirtualTerm, i64)]) -> Result<UnitElement, SurfaceError> {
        let mut acc = self.unit_one();
        for (term, mult) in terms {
            let w = match term {
                VirtualTerm::Line(w1) => {
                    self.class_to_unit(&(&F2Class::one(&self.algebra) + w1))?
                }
                VirtualTerm::PulledBackE1 => {
                    self.class_to_unit(&(&F2Class::one(&self.algebra) + &self.top_class()))?
                }
                VirtualTerm::Trivial(_) => self.unit_one(),
            };
            acc = self.unit_mul(&acc, &self.unit_pow(&w, *mult));
        }
        Ok(acc)
    }
}

/// `1 + x1 + x2` in the ungraded cohomology ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnitElement {
    pub x1: Vec<u8>,
    pub x2: u8,
}

/// Summands of a virtual bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VirtualTerm {
    /// Line bundle with the given first class.
    Line(F2Class),
    /// Pullback of the degree-one oriented plane bundle on the sphere.
    PulledBackE1,
    Trivial(u32),
}

pub fn units_group(alg: &SurfaceAlgebra) -> Result<FiniteAbelianGroup<UnitElement>, SurfaceError> {
    Ok(FiniteAbelianGroup::from_operation(
        alg.all_units(),
        &alg.unit_one(),
        |a, b| alg.unit_mul(a, b),
    )?)
}

/// Integer polynomial in ring generators; keys are sorted index multisets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Relation {
    pub terms: BTreeMap<Vec<usize>, i64>,
}

impl Relation {
    pub fn new(terms: &[(Vec<usize>, i64)]) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            let mut m = m.clone();
            m.sort_unstable();
            *map.entry(m).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        Relation { terms: map }
    }

    fn ordered_terms(&self) -> Vec<(&Vec<usize>, i64)> {
        let mut ts: Vec<(&Vec<usize>, i64)> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        ts.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        ts
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn text(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (k, (m, c)) in self.ordered_terms().into_iter().enumerate() {
            let monomial = monomial_text(m, names);
            let magnitude = c.unsigned_abs();
            let body = if magnitude == 1 {
                monomial
            } else {
                format!("{magnitude}*{monomial}")
            };
            match (k, c < 0) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }
}

fn monomial_text(m: &[usize], names: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        let e = j - i;
        parts.push(if e == 1 {
            names[m[i]].clone()
        } else {
            format!("{}^{}", names[m[i]], e)
        });
        i = j;
    }
    parts.join("*")
}

/// Generators, their additive orders, and relations of a commutative ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingPresentation {
    pub generators: Vec<String>,
    pub additive_orders: Vec<u64>,
    pub relations: Vec<Relation>,
}

impl RingPresentation {
    /// Reduced coefficients, fixed signs, duplicates removed, sorted by text.
    pub fn normalized(&self) -> RingPresentation {
        let orders = &self.additive_orders;
        let mut seen = BTreeMap::new();
        for rel in &self.relations {
            let rel = normalize_relation(rel, orders);
            if !rel.is_zero() {
                seen.insert(rel.text(&self.generators), rel);
            }
        }
        RingPresentation {
            generators: self.generators.clone(),
            additive_orders: self.additive_orders.clone(),
            relations: seen.into_values().collect(),
        }
    }

    pub fn relation_texts(&self) -> Vec<String> {
        let mut texts: Vec<String> = self
            .relations
            .iter()
            .map(|r| r.text(&self.generators))
            .collect();
        texts.sort();
        texts
    }

    pub fn canonical_text(&self) -> String {
        let n = self.normalized();
        let mut out = format!("generators: {}\nrelations:\n", n.generators.join(", "));
        for t in n.relation_texts() {
            out.push_str(&t);
            out.push('\n');
        }
        out
    }
}

fn is_order_relation(rel: &Relation) -> bool {
    rel.terms.len() == 1 && rel.terms.keys().all(|m| m.len() == 1)
}

/// Representative in `(-m/2, m/2]`.
fn balanced(c: i64, m: i64) -> i64 {
    if m == 0 {
        return c;
    }
    let r = c.mod_floor(&m);
    if 2 * r > m {
        r - m
    } else {
        r
    }
}

fn normalize_relation(rel: &Relation, orders: &[u64]) -> Relation {
    if is_order_relation(rel) {
        let terms: Vec<(Vec<usize>, i64)> = rel
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.abs()))
            .collect();
        return Relation::new(&terms);
    }
    let modulus = |m: &Vec<usize>| m.iter().fold(0i64, |g, &i| g.gcd(&(orders[i] as i64)));
    let reduce = |terms: Vec<(Vec<usize>, i64)>| -> Relation {
        let reduced: Vec<(Vec<usize>, i64)> = terms
            .into_iter()
            .map(|(m, c)| {
                let md = modulus(&m);
                (m, balanced(c, md))
            })
            .collect();
        Relation::new(&reduced)
    };
    let once = reduce(rel.terms.iter().map(|(m, &c)| (m.clone(), c)).collect());
    match once.ordered_terms().first() {
        Some((_, c)) if *c < 0 => {
            reduce(once.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect())
        }
        _ => once,
    }
}

/// Additive generator: a ring-generator monomial with its unit.
#[derive(Clone, Debug)]
struct AdditiveGenerator {
    monomial: Vec<usize>,
    unit: usize,
}

/// Ring generators of reduced real K-theory with their bundle data.
fn ring_generators(alg: &SurfaceAlgebra) -> Result<Vec<(String, SwClasses)>, SurfaceError> {
    let a = alg.algebra();
    match alg.kind() {
        SurfaceKind::Sphere => {
            let inv = tc_invariant(&oriented_cocycle(1))?;
            let data = TcBundleData::from_sphere_invariant(a, inv)?;
            Ok(vec![(
                "e1".to_string(),
                SwClasses {
                    rank: 2,
                    w1: data.w1,
                    w2: data.w2,
                },
            )])
        }
        _ => alg
            .degree_one_names()
            .into_iter()
            .map(|n| {
                let w1 = alg.generator(&n)?;
                Ok((
                    format!("l_{n}"),
                    SwClasses {
                        rank: 1,
                        w1,
                        w2: F2Class::zero(a),
                    },
                ))
            })
            .collect(),
    }
}

/// Unit of `(B - eps^r)(B' - eps^r')`.
fn product_unit(
    alg: &SurfaceAlgebra,
    x: &SwClasses,
    y: &SwClasses,
) -> Result<UnitElement, SurfaceError> {
    let w = |c: &SwClasses| alg.class_to_unit(&c.total());
    let tensor = w(&x.tensor(y)?)?;
    let wx = alg.unit_pow(&w(x)?, -(y.rank as i64));
    let wy = alg.unit_pow(&w(y)?, -(x.rank as i64));
    Ok(alg.unit_mul(&alg.unit_mul(&tensor, &wx), &wy))
}

/// Derives a presentation from unit-group computations.
pub fn ko_presentation(kind: SurfaceKind) -> Result<RingPresentation, SurfaceError> {
    let alg = surface_algebra(kind)?;
    let group = units_group(&alg)?;
    let ring = ring_generators(&alg)?;
    let names: Vec<String> = ring.iter().map(|(n, _)| n.clone()).collect();
    let unit_index = |u: &UnitElement| group.index_of(u).expect("every unit is enumerated");

    let mut additive: Vec<AdditiveGenerator> = Vec::new();
    for (i, (_, classes)) in ring.iter().enumerate() {
        additive.push(AdditiveGenerator {
            monomial: vec![i],
            unit: unit_index(&alg.class_to_unit(&classes.total())?),
        });
    }

    let mut products: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..ring.len() {
        for j in i..ring.len() {
            let u = product_unit(&alg, &ring[i].1, &ring[j].1)?;
            products.insert((i, j), unit_index(&u));
        }
    }

    // extend by products until the units are spanned
    let span = |gens: &[AdditiveGenerator]| {
        group
            .generated_subgroup(&gens.iter().map(|g| g.unit).collect::<Vec<_>>())
            .len()
    };
    for (&(i, j), &u) in &products {
        if span(&additive) == group.order() {
            break;
        }
        let units: Vec<usize> = additive.iter().map(|g| g.unit).collect();
        if !group.generated_subgroup(&units).contains(&u) {
            additive.push(AdditiveGenerator {
                monomial: vec![i, j],
                unit: u,
            });
        }
    }

    // drop generators spanned by the others, extras first
    let mut k = additive.len();
    while k > 0 {
        k -= 1;
        let others: Vec<usize> = additive
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != k)
            .map(|(_, g)| g.unit)
            .collect();
        if group
            .generated_subgroup(&others)
            .contains(&additive[k].unit)
            && additive[k].monomial.len() > 1
        {
            additive.remove(k);
        }
    }

    let ring_orders: Vec<u64> = (0..ring.len())
        .map(|i| group.element_order(additive[i].unit))
        .collect();
    let mut relations: Vec<Relation> = Vec::new();
    for g in &additive {
        relations.push(Relation::new(&[(
            g.monomial.clone(),
            group.element_order(g.unit) as i64,
        )]));
    }

    let gen_units: Vec<usize> = additive.iter().map(|g| g.unit).collect();
    let mut equal_to_extra: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for (&(i, j), &u) in &products {
        let product = vec![i, j];
        if u == group.identity() {
            relations.push(Relation::new(&[(product, 1)]));
            continue;
        }
        let singles: Vec<(usize, u64)> = gen_units
            .iter()
            .enumerate()
            .filter_map(|(k, &g)| {
                (1..group.element_order(g))
                    .find(|&c| group.pow(g, c) == u)
                    .map(|c| (k, c))
            })
            .collect();
        if !singles.is_empty() {
            for (k, c) in singles {
                let target = &additive[k];
                if target.monomial.len() > 1 && c == 1 {
                    equal_to_extra.entry(k).or_default().push(product.clone());
                } else {
                    relations.push(Relation::new(&[
                        (product.clone(), 1),
                        (target.monomial.clone(), -(c as i64)),
                    ]));
                }
            }
            continue;
        }
        let coeffs = group.discrete_log(u, &gen_units).ok_or_else(|| {
            SurfaceError::DiscreteLogFailure(alg.unit_to_class(&group.elements()[u]).to_string())
        })?;
        let mut terms = vec![(product, 1)];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c != 0 {
                terms.push((additive[k].monomial.clone(), -(c as i64)));
            }
        }
        relations.push(Relation::new(&terms));
    }
    // products equal to one extra generator are pairwise equal
    for monomials in equal_to_extra.values() {
        for a in 0..monomials.len() {
            for b in a + 1..monomials.len() {
                relations.push(Relation::new(&[
                    (monomials[a].clone(), 1),
                    (monomials[b].clone(), -1),
                ]));
            }
        }
    }

    Ok(RingPresentation {
        generators: names,
        additive_orders: ring_orders,
        relations,
    }
    .normalized())
}

/// The closed-form families, expanded for a given surface.
pub fn reference_presentation(kind: SurfaceKind) -> RingPresentation {
    match kind {
        SurfaceKind::Sphere => RingPresentation {
            generators: vec!["e1".to_string()],
            additive_orders: vec![2],
            relations: vec![
                Relation::new(&[(vec![0], 2)]),
                Relation::new(&[(vec![0, 0], 1)]),
            ],
        }
        .normalized(),
        SurfaceKind::Orientable(g) => {
            let g = g as usize;
            let mut generators: Vec<String> = (1..=g).map(|i| format!("l_a{i}")).collect();
            generators.extend((1..=g).map(|i| format!("l_b{i}")));
            let a = |i: usize| i - 1;
            let b = |i: usize| g + i - 1;
            let mut rels = Vec::new();
            for i in 1..=g {
                rels.push(Relation::new(&[(vec![a(i)], 2)]));
                rels.push(Relation::new(&[(vec![b(i)], 2)]));
            }
            for i in 1..=g {
                for j in i..=g {
                    rels.push(Relation::new(&[(vec![a(i), a(j)], 1)]));
                    rels.push(Relation::new(&[(vec![b(i), b(j)], 1)]));
                    if i < j {
                        rels.push(Relation::new(&[
                            (vec![a(i), b(i)], 1),
                            (vec![a(j), b(j)], 1),
                        ]));
                    }
                }
                for k in (1..=g).filter(|&k| k != i) {
                    rels.push(Relation::new(&[(vec![a(i), b(k)], 1)]));
                }
            }
            RingPresentation {
                generators,
                additive_orders: vec![2; 2 * g],
                relations: rels,
            }
            .normalized()
        }
        SurfaceKind::NonOrientable(n) => {
            let n = n as usize;
            let generators: Vec<String> = (1..=n).map(|i| format!("l_a{i}")).collect();
            let mut rels = Vec::new();
            for i in 0..n {
                rels.push(Relation::new(&[(vec![i], 4)]));
                for j in 0..n {
                    rels.push(Relation::new(&[(vec![i, i], 1), (vec![j], -2)]));
                }
                for k in (0..n).filter(|&k| k != i) {
                    rels.push(Relation::new(&[(vec![i, k], 1)]));
                }
            }
            RingPresentation {
                generators,
                additive_orders: vec![4; n],
                relations: rels,
            }
            .normalized()
        }
    }
}

/// One comparison of stable invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub name: String,
    pub lhs: StableInvariants,
    pub rhs: StableInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KocomReport {
    pub surface: SurfaceKind,
    /// All products vanish on a suspension; no computation is made.
    pub by_suspension: bool,
    pub checks: Vec<ProductCheck>,
}

fn compare(
    name: String,
    lhs: StableInvariants,
    rhs: StableInvariants,
) -> Result<ProductCheck, SurfaceError> {
    if lhs.total_sw != rhs.total_sw {
        return Err(SurfaceError::MismatchError {
            check: name,
            invariant: "total Stiefel-Whitney class".to_string(),
            lhs: lhs.total_sw.to_string(),
            rhs: rhs.total_sw.to_string(),
        });
    }
    if lhs.a2 != rhs.a2 {
        return Err(SurfaceError::MismatchError {
            check: name,
            invariant: "a2".to_string(),
            lhs: lhs.a2.to_string(),
            rhs: rhs.a2.to_string(),
        });
    }
    Ok(ProductCheck { name, lhs, rhs })
}

/// Invariants of `(E - eps^2)^2` for a rank-2 structure `E`.
fn square_of_reduced(e: &TcBundleData) -> Result<StableInvariants, SurfaceError> {
    let alg = e.w1.algebra();
    let ee = StableInvariants::of(&e.tensor(e)?)?;
    let single = StableInvariants::of(e)?;
    let trivial = StableInvariants::of(&TcBundleData::trivial(alg, 4))?;
    Ok(ee.minus(&single).minus(&single).plus(&trivial))
}

/// Checks that products with the non-standard class vanish.
pub fn verify_kocom_products(kind: SurfaceKind) -> Result<KocomReport, SurfaceError> {
    if kind == SurfaceKind::Sphere {
        return Ok(KocomReport {
            surface: kind,
            by_suspension: true,
            checks: Vec::new(),
        });
    }
    let alg = surface_algebra(kind)?;
    let a = alg.algebra();
    let f1 = tc_invariant(&standard_cocycle(1))?;
    let e = TcBundleData::from_sphere_invariant(a, f1)?;
    let zero = StableInvariants::zero(a);
    let mut checks = Vec::new();

    // y^2 on the sphere, pulled back along the collapse map
    let sphere = surface_algebra(SurfaceKind::Sphere)?;
    let e_sphere = TcBundleData::from_sphere_invariant(sphere.algebra(), f1)?;
    let collapse =
        RingMap::from_strings(sphere.algebra(), a, &[("y2", &a.monomial_string(&alg.top))])?;
    let on_sphere = square_of_reduced(&e_sphere)?;
    let pulled = StableInvariants {
        total_sw: collapse.apply(&on_sphere.total_sw),
        a2: on_sphere.a2,
    };
    checks.push(compare(
        "y^2 pulled back from the sphere".to_string(),
        pulled,
        zero.clone(),
    )?);
    checks.push(compare(
        "y^2 on the surface".to_string(),
        square_of_reduced(&e)?,
        zero,
    )?);

    let mut lines: Vec<(String, F2Class)> = alg
        .degree_one_names()
        .into_iter()
        .map(|n| {
            let c = alg.generator(&n)?;
            Ok((format!("L_{n}"), c))
        })
        .collect::<Result<_, SurfaceError>>()?;
    lines.push(("eps^1".to_string(), F2Class::zero(a)));
    for (name, w1) in lines {
        let l = TcBundleData::standard_line(&w1);
        let lhs = StableInvariants::of(&e.tensor(&l)?)?;
        let rhs = StableInvariants::of(&l.direct_sum(&l).direct_sum(&e))?;
        checks.push(compare(format!("y*({name} - eps^1)"), lhs, rhs)?);
    }
    Ok(KocomReport {
        surface: kind,
        by_suspension: false,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;

    #[test]
    fn selectors() {
        assert_eq!("sphere".parse::<SurfaceKind>(), Ok(SurfaceKind::Sphere));
        assert_eq!(
            "genus:3".parse::<SurfaceKind>(),
            Ok(SurfaceKind::Orientable(3))
        );
        assert_eq!(
            "rp:2".parse::<SurfaceKind>(),
            Ok(SurfaceKind::NonOrientable(2))
        );
        assert!("rp:0".parse::<SurfaceKind>().is_err());
        assert!("torus".parse::<SurfaceKind>().is_err());
    }

    #[test]
    fn algebra_products() {
        let t = surface_algebra(SurfaceKind::Orientable(1)).unwrap();
        let a = t.algebra();
        assert_eq!(F2Class::parse(a, "a1*b1").unwrap(), t.top_class());
        assert!(F2Class::parse(a, "a1^2").unwrap().is_zero());
        let p = surface_algebra(SurfaceKind::NonOrientable(2)).unwrap();
        let a = p.algebra();
        assert_eq!(F2Class::parse(a, "a1^2").unwrap(), p.top_class());
        assert_eq!(F2Class::parse(a, "a2^2").unwrap(), p.top_class());
        assert!(F2Class::parse(a, "a1*a2").unwrap().is_zero());
        let s = surface_algebra(SurfaceKind::Sphere).unwrap();
        assert_eq!(s.algebra().basis().len(), 2);
    }

    #[test]
    fn unit_groups_small() {
        let t = surface_algebra(SurfaceKind::Orientable(1)).unwrap();
        assert_eq!(
            units_group(&t).unwrap().structure(),
            AbelianGroup::new(0, &[2, 2, 2])
        );
        let p = surface_algebra(SurfaceKind::NonOrientable(1)).unwrap();
        assert_eq!(
            units_group(&p).unwrap().structure(),
            AbelianGroup::cyclic(4)
        );
        let s = surface_algebra(SurfaceKind::Sphere).unwrap();
        assert_eq!(
            units_group(&s).unwrap().structure(),
            AbelianGroup::cyclic(2)
        );
    }

    #[test]
    fn unit_inverse_matches_product() {
        let p = surface_algebra(SurfaceKind::NonOrientable(3)).unwrap();
        for u in p.all_units() {
            assert_eq!(p.unit_mul(&u, &p.unit_inverse(&u)), p.unit_one());
        }
    }

    #[test]
    fn total_classes() {
        let t = surface_algebra(SurfaceKind::Orientable(2)).unwrap();
        let a1 = t.generator("a1").unwrap();
        let w = t.total_sw(&[(VirtualTerm::Line(a1.clone()), 1)]).unwrap();
        assert_eq!(t.unit_to_class(&w).to_string(), "1 + a1");
        let w = t
            .total_sw(&[
                (VirtualTerm::PulledBackE1, 1),
                (VirtualTerm::Line(a1.clone()), 1),
            ])
            .unwrap();
        assert_eq!(t.unit_to_class(&w).to_string(), "1 + a1 + y2");
        let w = t
            .total_sw(&[
                (VirtualTerm::Line(a1.clone()), 1),
                (VirtualTerm::Line(a1), -1),
            ])
            .unwrap();
        assert_eq!(w, t.unit_one());
    }

    #[test]
    fn presentations_small() {
        for kind in [
            SurfaceKind::Sphere,
            SurfaceKind::Orientable(1),
            SurfaceKind::Orientable(2),
            SurfaceKind::NonOrientable(1),
            SurfaceKind::NonOrientable(2),
        ] {
            assert_eq!(
                ko_presentation(kind).unwrap().canonical_text(),
                reference_presentation(kind).canonical_text(),
                "{kind}"
            );
        }
    }

    #[test]
    fn relation_text() {
        let names = vec!["x".to_string(), "y".to_string()];
        let r = Relation::new(&[(vec![0, 0], 1), (vec![1], -2)]);
        assert_eq!(r.text(&names), "x^2 - 2*y");
        let r = Relation::new(&[(vec![1, 0], 1), (vec![0, 1], 1)]);
        assert_eq!(r.text(&names), "2*x*y");
    }

    #[test]
    fn products_vanish() {
        for kind in [SurfaceKind::Orientable(1), SurfaceKind::NonOrientable(1)] {
            let report = verify_kocom_products(kind).unwrap();
            assert!(!report.by_suspension);
            assert!(report.checks.len() >= 3);
        }
        assert!(
            verify_kocom_products(SurfaceKind::Sphere)
                .unwrap()
                .by_suspension
        );
    }
}
