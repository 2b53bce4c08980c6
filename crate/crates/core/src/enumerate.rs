//! Exhaustive enumeration of algebras over small prime fields.
//!
//! Elements are indexed by their coordinates read as base-`p` digits with
//! coordinate 0 most significant, so index order is lexicographic coordinate
//! order. Every "first witness" in the crate is the minimum under this order.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::algebra::{Element, JordanAlgebra};
use crate::field::Field;
use crate::linalg::Subspace;
use crate::Error;

/// `p^dim` elements of an algebra over F_p, addressed by index.
#[derive(Clone, Debug)]
pub struct ElementSpace<F: Field> {
    field: F,
    dim: usize,
    p: u64,
    len: usize,
}

impl<F: Field> ElementSpace<F> {
    pub fn new(a: &JordanAlgebra<F>, budget: u64) -> Result<Self, Error> {
        Self::for_dim(a.field(), a.dim(), budget)
    }

    pub fn for_dim(field: &F, dim: usize, budget: u64) -> Result<Self, Error> {
        let p = field.order().ok_or(Error::InfiniteField)?;
        let too_large = Error::TooLarge { p, dim, budget };
        let len = p.checked_pow(dim as u32).ok_or(too_large)?;
        if len > budget {
            return Err(Error::TooLarge { p, dim, budget });
        }
        Ok(ElementSpace {
            field: field.clone(),
            dim,
            p,
            len: len as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn element(&self, mut index: usize) -> Element<F> {
        let mut coords = vec![self.field.zero(); self.dim];
        for c in coords.iter_mut().rev() {
            *c = self.field.nth(index as u64 % self.p);
            index /= self.p as usize;
        }
        Element::new(coords)
    }

    pub fn index_of(&self, x: &[F::Elem]) -> usize {
        x.iter()
            .fold(0u64, |acc, c| acc * self.p + self.field.position(c)) as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = Element<F>> + '_ {
        (0..self.len).map(|i| self.element(i))
    }
}

/// All elements of A, in lexicographic order.
pub fn enumerate_elements<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> Result<Vec<Element<F>>, Error> {
    Ok(ElementSpace::new(a, budget)?.iter().collect())
}

/// Squares, square roots and idempotents of an exhaustively enumerable algebra.
#[derive(Clone, Debug)]
pub struct Enumerated<'a, F: Field> {
    algebra: &'a JordanAlgebra<F>,
    space: ElementSpace<F>,
    /// Index of `x²` for every element index `x`.
    square_of: Vec<u32>,
    /// Distinct squares as element indices, increasing.
    squares: Vec<u32>,
    /// Position of an element in `squares`, or `u32::MAX`.
    square_pos: Vec<u32>,
    /// Lexicographically first square root of each square.
    first_root: Vec<u32>,
    idempotents: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl<'a, F: Field> Enumerated<'a, F> {
    pub fn new(algebra: &'a JordanAlgebra<F>, budget: u64) -> Result<Self, Error> {
        let space = ElementSpace::new(algebra, budget)?;
        let square_of: Vec<u32> = (0..space.len())
            .into_par_iter()
            .map(|i| {
                let x = space.element(i);
                space.index_of(algebra.square(&x).coords()) as u32
            })
            .collect();
        let mut square_pos = vec![NONE; space.len()];
        let mut first_root_of = vec![NONE; space.len()];
        for (i, &s) in square_of.iter().enumerate() {
            if first_root_of[s as usize] == NONE {
                first_root_of[s as usize] = i as u32;
            }
        }
        let squares: Vec<u32> = (0..space.len() as u32)
            .filter(|&s| first_root_of[s as usize] != NONE)
            .collect();
        for (pos, &s) in squares.iter().enumerate() {
            square_pos[s as usize] = pos as u32;
        }
        let first_root = squares.iter().map(|&s| first_root_of[s as usize]).collect();
        let idempotents = (0..space.len() as u32)
            .filter(|&i| square_of[i as usize] == i)
            .collect();
        Ok(Enumerated {
            algebra,
            space,
            square_of,
            squares,
            square_pos,
            first_root,
            idempotents,
        })
    }

    pub fn algebra(&self) -> &'a JordanAlgebra<F> {
        self.algebra
    }

    pub fn space(&self) -> &ElementSpace<F> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn element(&self, i: usize) -> Element<F> {
        self.space.element(i)
    }

    pub fn index_of(&self, x: &Element<F>) -> usize {
        self.space.index_of(x.coords())
    }

    pub fn square_index(&self, i: usize) -> usize {
        self.square_of[i] as usize
    }

    /// Element indices of the distinct squares, increasing.
    pub fn squares(&self) -> &[u32] {
        &self.squares
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn is_square(&self, i: usize) -> bool {
        self.square_pos[i] != NONE
    }

    /// Lexicographically first `b` with `b² = x`.
    pub fn square_root(&self, i: usize) -> Option<usize> {
        match self.square_pos[i] {
            NONE => None,
            pos => Some(self.first_root[pos as usize] as usize),
        }
    }

    pub fn idempotents(&self) -> &[u32] {
        &self.idempotents
    }

    pub fn idempotent_elements(&self) -> Vec<Element<F>> {
        self.idempotents.iter().map(|&i| self.element(i as usize)).collect()
    }

    pub fn empty_square_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.squares.len())
    }

    /// The squares lying in `v`, as a bitset over square positions.
    pub fn squares_in(&self, v: &Subspace<F>) -> FixedBitSet {
        let mut set = self.empty_square_set();
        let p = self.space.p as f64;
        let span_size = p.powi(v.dim() as i32);
        if span_size <= self.squares.len() as f64 {
            for x in v.vectors() {
                let pos = self.square_pos[self.space.index_of(&x)];
                if pos != NONE {
                    set.insert(pos as usize);
                }
            }
        } else if v.is_full() {
            set.insert_range(..);
        } else {
            for (pos, &s) in self.squares.iter().enumerate() {
                if v.contains(self.space.element(s as usize).coords()) {
                    set.insert(pos);
                }
            }
        }
        set
    }

    /// Elements of a square-position bitset, as element indices.
    pub fn square_elements(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones().map(|pos| self.squares[pos] as usize).collect()
    }

    /// Every element of `v` as a bitset over all element indices.
    pub fn elements_in(&self, v: &Subspace<F>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for x in v.vectors() {
            set.insert(self.space.index_of(&x));
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{example2, full_matrix_jordan, hermitian_matrix_algebra, nonunital_nil};
    use crate::field::{PrimeField, Rationals};
    use crate::DEFAULT_BUDGET;

    #[test]
    fn counts() {
        let f3 = PrimeField::new(3).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(enumerate_elements(&example2(f3), DEFAULT_BUDGET).unwrap().len(), 9);
        assert_eq!(enumerate_elements(&full_matrix_jordan(2, f3).unwrap(), DEFAULT_BUDGET).unwrap().len(), 81);
        assert_eq!(
            enumerate_elements(&hermitian_matrix_algebra(2, 1, f5).unwrap(), DEFAULT_BUDGET).unwrap().len(),
            125
        );
    }

    #[test]
    fn too_large_and_infinite() {
        let f3 = PrimeField::new(3).unwrap();
        assert!(matches!(
            ElementSpace::new(&full_matrix_jordan(3, f3).unwrap(), 1000),
            Err(Error::TooLarge { p: 3, dim: 9, budget: 1000 })
        ));
        assert!(matches!(ElementSpace::new(&example2(Rationals), DEFAULT_BUDGET), Err(Error::InfiniteField)));
    }

    #[test]
    fn lexicographic_order_round_trips() {
        let f3 = PrimeField::new(3).unwrap();
        let a = example2(f3);
        let space = ElementSpace::new(&a, DEFAULT_BUDGET).unwrap();
        let all: Vec<_> = space.iter().collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (i, x) in all.iter().enumerate() {
            assert_eq!(space.index_of(x.coords()), i);
        }
    }

    #[test]
    fn e2_squares_over_f3() {
        let f3 = PrimeField::new(3).unwrap();
        let a = example2(f3);
        let en = Enumerated::new(&a, DEFAULT_BUDGET).unwrap();
        let squares: Vec<_> = en.squares().iter().map(|&s| en.element(s as usize)).collect();
        let expect = vec![
            a.element_from_ints(&[0, 0]),
            a.element_from_ints(&[1, 0]),
            a.element_from_ints(&[1, 1]),
            a.element_from_ints(&[1, 2]),
        ];
        assert_eq!(squares, expect);
        let idem: Vec<_> = en.idempotent_elements();
        assert_eq!(idem, vec![a.zero(), a.unit().unwrap().clone()]);
    }

    #[test]
    fn nu_has_only_zero_square() {
        let f3 = PrimeField::new(3).unwrap();
        let a = nonunital_nil(2, f3).unwrap();
        let en = Enumerated::new(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(en.square_count(), 1);
        assert_eq!(en.idempotents(), &[0]);
    }

    #[test]
    fn squares_in_matches_direct_membership() {
        let f3 = PrimeField::new(3).unwrap();
        let a = full_matrix_jordan(2, f3).unwrap();
        let en = Enumerated::new(&a, DEFAULT_BUDGET).unwrap();
        for i in [0usize, 1, 4, 13, 40, 80] {
            let k = crate::linalg::kernel(&a.u_op(&en.element(i)));
            let fast = en.squares_in(&k);
            for (pos, &s) in en.squares().iter().enumerate() {
                assert_eq!(fast.contains(pos), k.contains(en.element(s as usize).coords()));
            }
        }
    }
}
