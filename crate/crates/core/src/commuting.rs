//! Components of commuting tuples in SO(3), modeled by tuples in the Klein
//! four-group up to relabeling of its three involutions, and the chain
//! complex of their free abelian groups.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::AbelianGroup;
use crate::orthogonal::D4Element;
use crate::smith::{smith_homology, IntChainComplex, IntMatrix, SmithError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct D4Tuple(pub Vec<D4Element>);

impl D4Tuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[D4Element] {
        &self.0
    }

    /// Applies a permutation of `{c1, c2, c3}`; `perm[i]` is the image of `c_{i+1}`.
    pub fn relabel(&self, perm: &[D4Element; 3]) -> D4Tuple {
        D4Tuple(self.0.iter().map(|&x| relabel_element(x, perm)).collect())
    }
}

impl fmt::Display for D4Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn relabel_element(x: D4Element, perm: &[D4Element; 3]) -> D4Element {
    match x {
        D4Element::I => D4Element::I,
        D4Element::C1 => perm[0],
        D4Element::C2 => perm[1],
        D4Element::C3 => perm[2],
    }
}

/// All six permutations of `{c1, c2, c3}`.
pub fn relabelings() -> [[D4Element; 3]; 6] {
    use D4Element::*;
    [
        [C1, C2, C3],
        [C1, C3, C2],
        [C2, C1, C3],
        [C2, C3, C1],
        [C3, C1, C2],
        [C3, C2, C1],
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ComponentLabel {
    IdentityComponent,
    ExoticComponent(D4Tuple),
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::IdentityComponent => f.write_str("1"),
            ComponentLabel::ExoticComponent(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("face index {index} out of range for a tuple of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("boundary requested in degree 0")]
    DegreeZero,
    #[error(transparent)]
    Smith(#[from] SmithError),
}

pub fn classify_component(t: &D4Tuple) -> ComponentLabel {
    let nontrivial: BTreeSet<D4Element> =
        t.0.iter().copied().filter(|x| !x.is_identity()).collect();
    if nontrivial.len() <= 1 {
        return ComponentLabel::IdentityComponent;
    }
    let canonical = relabelings()
        .iter()
        .map(|p| t.relabel(p))
        .min()
        .expect("six relabelings");
    ComponentLabel::ExoticComponent(canonical)
}

/// All of `D4^n` in lexicographic order.
pub fn all_tuples(n: usize) -> Vec<D4Tuple> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<D4Element>| {
                D4Element::ALL.into_iter().map(move |x| {
                    let mut t = prefix.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(D4Tuple).collect()
}

/// Distinct component labels in level `n`, identity component first.
pub fn enumerate_components(n: usize) -> Vec<ComponentLabel> {
    let labels: BTreeSet<ComponentLabel> = all_tuples(n).iter().map(classify_component).collect();
    labels.into_iter().collect()
}

pub fn face_map(i: usize, t: &D4Tuple) -> Result<D4Tuple, ComplexError> {
    let n = t.len();
    if i > n || n == 0 {
        return Err(ComplexError::IndexOutOfRange { index: i, len: n });
    }
    let e = &t.0;
    let out = if i == 0 {
        e[1..].to_vec()
    } else if i == n {
        e[..n - 1].to_vec()
    } else {
        let mut v = e[..i - 1].to_vec();
        v.push(e[i - 1] * e[i]);
        v.extend_from_slice(&e[i + 1..]);
        v
    };
    Ok(D4Tuple(out))
}

/// Representative tuple of a label at level `n`.
pub fn representative(label: &ComponentLabel, n: usize) -> D4Tuple {
    match label {
        ComponentLabel::IdentityComponent => D4Tuple(vec![D4Element::I; n]),
        ComponentLabel::ExoticComponent(t) => t.clone(),
    }
}

/// Matrix of `d_n`: rows are level-`n-1` components, columns level-`n`.
pub fn boundary_matrix(n: usize) -> Result<IntMatrix, ComplexError> {
    if n == 0 {
        return Err(ComplexError::DegreeZero);
    }
    let sources = enumerate_components(n);
    let targets = enumerate_components(n - 1);
    let mut m = IntMatrix::zeros(targets.len(), sources.len());
    for (col, label) in sources.iter().enumerate() {
        let rep = representative(label, n);
        for i in 0..=n {
            let image = classify_component(&face_map(i, &rep)?);
            let row = targets
                .iter()
                .position(|t| *t == image)
                .expect("faces land in enumerated components");
            m.add_to(row, col, if i % 2 == 0 { 1 } else { -1 });
        }
    }
    Ok(m)
}

/// The complex of free abelian groups on components through level `top`.
pub fn tuple_complex(top: usize) -> Result<IntChainComplex, ComplexError> {
    let ranks: Vec<usize> = (0..=top).map(|n| enumerate_components(n).len()).collect();
    let boundaries = (1..=top)
        .map(boundary_matrix)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntChainComplex::new(ranks, boundaries)?)
}

/// `H_1(SO(3); Z)`, a fixed input.
pub fn h1_so3() -> AbelianGroup {
    AbelianGroup::cyclic(2)
}

pub fn e2_20() -> Result<AbelianGroup, ComplexError> {
    Ok(smith_homology(&tuple_complex(3)?, 2)?)
}

pub fn h2_bcom_so3() -> Result<AbelianGroup, ComplexError> {
    Ok(e2_20()?.direct_sum(&h1_so3()))
}

/// One row of the face table for a level-3 exotic component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceRow {
    pub source: D4Tuple,
    pub faces: Vec<ComponentLabel>,
}

/// Face images for every exotic component at level 3, indexed by `d_0..d_3`.
pub fn face_table() -> Result<Vec<FaceRow>, ComplexError> {
    enumerate_components(3)
        .into_iter()
        .filter_map(|label| match label {
            ComponentLabel::ExoticComponent(t) => Some(t),
            ComponentLabel::IdentityComponent => None,
        })
        .map(|t| {
            let faces = (0..=3)
                .map(|i| face_map(i, &t).map(|f| classify_component(&f)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FaceRow { source: t, faces })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use D4Element::*;

    fn tup(v: &[D4Element]) -> D4Tuple {
        D4Tuple(v.to_vec())
    }

    fn exotic(v: &[D4Element]) -> ComponentLabel {
        ComponentLabel::ExoticComponent(tup(v))
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_component(&tup(&[I, C2])),
            ComponentLabel::IdentityComponent
        );
        assert_eq!(
            classify_component(&tup(&[C1, C2, C2])),
            exotic(&[C1, C2, C2])
        );
        assert_eq!(
            classify_component(&tup(&[C3, C3, C3])),
            ComponentLabel::IdentityComponent
        );
        assert_eq!(classify_component(&tup(&[C3, C1])), exotic(&[C1, C2]));
    }

    #[test]
    fn component_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_components(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 8, 36]);
        assert_eq!(
            enumerate_components(3)[0],
            ComponentLabel::IdentityComponent
        );
    }

    #[test]
    fn faces() {
        let t = tup(&[C1, C2, C2]);
        assert_eq!(face_map(0, &t).unwrap(), tup(&[C2, C2]));
        assert_eq!(face_map(1, &t).unwrap(), tup(&[C3, C2]));
        assert_eq!(face_map(2, &t).unwrap(), tup(&[C1, I]));
        assert_eq!(face_map(3, &t).unwrap(), tup(&[C1, C2]));
        assert_eq!(
            face_map(4, &t),
            Err(ComplexError::IndexOutOfRange { index: 4, len: 3 })
        );
    }

    #[test]
    fn low_boundaries() {
        assert_eq!(boundary_matrix(1).unwrap().to_rows(), vec![vec![0]]);
        assert_eq!(boundary_matrix(2).unwrap().to_rows(), vec![vec![1, 1]]);
        let d3 = boundary_matrix(3).unwrap();
        assert_eq!((d3.rows(), d3.cols()), (2, 8));
        for p in 2..=4 {
            let lower = boundary_matrix(p - 1).unwrap();
            let upper = boundary_matrix(p).unwrap();
            assert!(lower.mul(&upper).unwrap().is_zero(), "p = {p}");
        }
    }

    #[test]
    fn homology_in_degree_two() {
        assert_eq!(e2_20().unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(h2_bcom_so3().unwrap(), AbelianGroup::new(0, &[2, 2]));
    }
}
