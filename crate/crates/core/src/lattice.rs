//! The partial order on idempotents: `e ≤ f` iff `ef = e` (equivalently
//! `e ∈ U_f(A)`), with suprema, infima and completeness of finite posets.

use rayon::prelude::*;

use crate::algebra::{Element, JordanAlgebra};
use crate::field::Field;
use crate::verdict::Bound;

/// Up to this many idempotents every subset is checked for a sup and an inf.
pub const SUBSET_CHECK_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdemLattice<F: Field> {
    elements: Vec<Element<F>>,
    /// `leq[i][j]` iff `elements[i] ≤ elements[j]`.
    leq: Vec<Vec<bool>>,
    top: Option<usize>,
    bottom: Option<usize>,
    /// A subset (as indices) lacking a sup or inf, first in the search order.
    gap: Option<(Vec<usize>, Bound)>,
}

impl<F: Field> IdemLattice<F> {
    /// `elements` must be idempotents of `a`; the order is computed from products.
    pub fn new(a: &JordanAlgebra<F>, elements: Vec<Element<F>>) -> Self {
        let n = elements.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| a.mul(&elements[i], &elements[j]) == elements[i]).collect())
            .collect();
        let mut lattice = IdemLattice {
            elements,
            leq,
            top: None,
            bottom: None,
            gap: None,
        };
        lattice.top = lattice.inf(&[]);
        lattice.bottom = lattice.sup(&[]);
        lattice.gap = lattice.find_gap();
        lattice
    }

    pub fn elements(&self) -> &[Element<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn is_complete(&self) -> bool {
        self.gap.is_none()
    }

    /// First subset without a sup or inf, as elements.
    pub fn gap(&self) -> Option<(Vec<Element<F>>, Bound)> {
        self.gap
            .as_ref()
            .map(|(s, b)| (s.iter().map(|&i| self.elements[i].clone()).collect(), *b))
    }

    pub fn index_of(&self, e: &Element<F>) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    /// Reflexive, antisymmetric and transitive.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| self.leq[i][i])
            && (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
            && (0..n).all(|i| {
                (0..n).all(|j| !self.leq[i][j] || (0..n).all(|k| !self.leq[j][k] || self.leq[i][k]))
            })
    }

    fn upper_bounds(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| subset.iter().all(|&s| self.leq[s][u]))
            .collect()
    }

    fn lower_bounds(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&l| subset.iter().all(|&s| self.leq[l][s]))
            .collect()
    }

    fn least_of(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&u| set.iter().all(|&v| self.leq[u][v]))
    }

    fn greatest_of(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&u| set.iter().all(|&v| self.leq[v][u]))
    }

    pub fn sup(&self, subset: &[usize]) -> Option<usize> {
        self.least_of(&self.upper_bounds(subset))
    }

    pub fn inf(&self, subset: &[usize]) -> Option<usize> {
        self.greatest_of(&self.lower_bounds(subset))
    }

    fn find_gap(&self) -> Option<(Vec<usize>, Bound)> {
        let n = self.len();
        if n <= SUBSET_CHECK_LIMIT {
            self.find_gap_all_subsets()
        } else {
            self.find_gap_pairwise()
        }
    }

    fn find_gap_pairwise(&self) -> Option<(Vec<usize>, Bound)> {
        let n = self.len();
        // A finite poset with a bottom and all pairwise joins is a complete
        // lattice; meets and the top are checked as well for the witness.
        if self.bottom.is_none() {
            return Some((Vec::new(), Bound::Sup));
        }
        if self.top.is_none() {
            return Some((Vec::new(), Bound::Inf));
        }
        (0..n)
            .into_par_iter()
            .map(|i| {
                ((i + 1)..n).find_map(|j| {
                    if self.sup(&[i, j]).is_none() {
                        Some((vec![i, j], Bound::Sup))
                    } else if self.inf(&[i, j]).is_none() {
                        Some((vec![i, j], Bound::Inf))
                    } else {
                        None
                    }
                })
            })
            .find_map_first(|x| x)
    }

    fn find_gap_all_subsets(&self) -> Option<(Vec<usize>, Bound)> {
        let n = self.len();
        let mask_of = |row: &dyn Fn(usize) -> bool| (0..n).filter(|&j| row(j)).fold(0u32, |m, j| m | 1 << j);
        let up: Vec<u32> = (0..n).map(|i| mask_of(&|j| self.leq[i][j])).collect();
        let down: Vec<u32> = (0..n).map(|i| mask_of(&|j| self.leq[j][i])).collect();
        let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let has_least = |bounds: u32| (0..n).any(|u| bounds & (1 << u) != 0 && bounds & !up[u] == 0);
        let has_greatest = |bounds: u32| (0..n).any(|u| bounds & (1 << u) != 0 && bounds & !down[u] == 0);
        (0..=all as u64).into_par_iter().find_map_first(|subset| {
            let subset = subset as u32;
            let members = || (0..n).filter(|&i| subset & (1 << i) != 0).collect::<Vec<_>>();
            let uppers = members().iter().fold(all, |m, &i| m & up[i]);
            if !has_least(uppers) {
                return Some((members(), Bound::Sup));
            }
            let lowers = members().iter().fold(all, |m, &i| m & down[i]);
            if !has_greatest(lowers) {
                return Some((members(), Bound::Inf));
            }
            None
        })
    }
}
