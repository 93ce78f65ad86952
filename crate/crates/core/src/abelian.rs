//! Finitely generated abelian groups by invariant factors, and finite
//! abelian groups given by a multiplication table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// `Z^free + Z/d_1 + ... + Z/d_k` with `d_i | d_{i+1}` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<u64>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors from prime-power cyclic orders.
fn invariant_factors_from_primary(primary: &BTreeMap<u64, Vec<u32>>) -> Vec<u64> {
    let len = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (&p, exps) in primary {
        let mut exps = exps.clone();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        // largest powers go to the last factors
        for (i, e) in exps.into_iter().enumerate() {
            factors[len - 1 - i] *= p.pow(e);
        }
    }
    factors.retain(|&d| d > 1);
    factors
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// Any list of cyclic orders; entries 0 and 1 are ignored.
    pub fn new(free_rank: usize, cyclic_orders: &[u64]) -> Self {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in cyclic_orders.iter().filter(|&&d| d > 1) {
            for (p, e) in factorize(d) {
                primary.entry(p).or_default().push(e);
            }
        }
        AbelianGroup {
            free_rank,
            invariant_factors: invariant_factors_from_primary(&primary),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, &[order])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.invariant_factors.clone();
        orders.extend_from_slice(&other.invariant_factors);
        AbelianGroup::new(self.free_rank + other.free_rank, &orders)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("product of elements {0} and {1} is not in the element list")]
    NotClosed(usize, usize),
    #[error("elements {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("identity is not in the element list")]
    MissingIdentity,
    #[error("duplicate element at index {0}")]
    Duplicate(usize),
}

/// A finite abelian group stored as an element list plus a full
/// multiplication table on indices.
#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl<T: Clone + Eq + Hash> FiniteAbelianGroup<T> {
    pub fn from_operation(
        elements: Vec<T>,
        identity: &T,
        op: impl Fn(&T, &T) -> T,
    ) -> Result<Self, GroupError> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(GroupError::Duplicate(i));
            }
        }
        let identity = *index.get(identity).ok_or(GroupError::MissingIdentity)?;
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = op(&elements[i], &elements[j]);
                table[i][j] = *index.get(&prod).ok_or(GroupError::NotClosed(i, j))?;
            }
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &x) in row.iter().enumerate().skip(i + 1) {
                if x != table[j][i] {
                    return Err(GroupError::NotAbelian(i, j));
                }
            }
        }
        Ok(FiniteAbelianGroup {
            elements,
            index,
            table,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// `a^n` for `n >= 0`.
    pub fn pow(&self, a: usize, n: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..n {
            acc = self.table[acc][a];
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut acc = a;
        let mut k = 1;
        while acc != self.identity {
            acc = self.table[acc][a];
            k += 1;
        }
        k
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n)
                .all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    /// Number of elements of each order.
    pub fn order_statistics(&self) -> BTreeMap<u64, usize> {
        let mut stats = BTreeMap::new();
        for a in 0..self.order() {
            *stats.entry(self.element_order(a)).or_insert(0) += 1;
        }
        stats
    }

    /// Invariant factors from counts of elements killed by each prime power.
    pub fn structure(&self) -> AbelianGroup {
        let orders: Vec<u64> = (0..self.order()).map(|a| self.element_order(a)).collect();
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (p, top) in factorize(self.order() as u64) {
            // sizes of the p^k-torsion subgroups, k = 0..=top
            let sizes: Vec<u64> = (0..=top)
                .map(|k| {
                    let q = p.pow(k);
                    orders.iter().filter(|&&o| q % o == 0).count() as u64
                })
                .collect();
            // cyclic factors of order >= p^k: log_p(sizes[k] / sizes[k-1])
            let at_least: Vec<u32> = (1..=top as usize)
                .map(|k| ilog(sizes[k] / sizes[k - 1], p))
                .collect();
            for k in 0..at_least.len() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..at_least[k] - next {
                    primary.entry(p).or_default().push(k as u32 + 1);
                }
            }
        }
        AbelianGroup {
            free_rank: 0,
            invariant_factors: invariant_factors_from_primary(&primary),
        }
    }

    /// Exhaustive search for `target = prod g_i^{c_i}` with `0 <= c_i < ord(g_i)`,
    /// lexicographically least coefficient vector first.
    pub fn discrete_log(&self, target: usize, generators: &[usize]) -> Option<Vec<u64>> {
        let bounds: Vec<u64> = generators.iter().map(|&g| self.element_order(g)).collect();
        let mut coeffs = vec![0u64; generators.len()];
        loop {
            let value = generators
                .iter()
                .zip(&coeffs)
                .fold(self.identity, |acc, (&g, &c)| self.mul(acc, self.pow(g, c)));
            if value == target {
                return Some(coeffs);
            }
            // odometer with the last coordinate fastest
            let mut pos = generators.len();
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                coeffs[pos] += 1;
                if coeffs[pos] < bounds[pos] {
                    break;
                }
                coeffs[pos] = 0;
            }
        }
    }

    /// Indices of the subgroup generated by `generators`.
    pub fn generated_subgroup(&self, generators: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}
