//! Deciders for the RJ, BJ, Rickart and Baer properties and for
//! (quadratic) non-degeneracy.
//!
//! Over a small prime field everything goes through [`Analysis`], which
//! enumerates the algebra once and groups elements by `ker U_x`. Two
//! subspaces meet `A²` in the same set iff they contain the same squares, so
//! every set equality reduces to comparing bitsets over square positions.
//!
//! Over ℚ (or beyond the budget) the deciders run symbolically: they never
//! guess, and report `Unknown` when the sound arguments run out.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::algebra::{squares_span, Element, JordanAlgebra};
use crate::annihilators::{complement_u_op, idempotents};
use crate::enumerate::Enumerated;
use crate::field::Field;
use crate::lattice::IdemLattice;
use crate::linalg::{image, kernel, Subspace};
use crate::quadratic::{Preimage, QuadraticMap};
use crate::verdict::{ClassReport, Mode, Property, Verdict, Witness};
use crate::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ModeChoice {
    /// Exhaustive when the field is finite and `p^dim` fits the budget.
    #[default]
    Auto,
    Exhaustive,
    Symbolic,
}

#[derive(Clone, Debug)]
pub struct Settings<F: Field> {
    pub budget: u64,
    pub mode: ModeChoice,
    /// Extra elements examined by the symbolic RJ check.
    pub probes: Vec<Element<F>>,
}

impl<F: Field> Settings<F> {
    pub fn new(budget: u64) -> Self {
        Settings {
            budget,
            mode: ModeChoice::Auto,
            probes: Vec::new(),
        }
    }

    pub fn with_mode(mut self, mode: ModeChoice) -> Self {
        self.mode = mode;
        self
    }
}

struct KernelClass<F: Field> {
    kernel: Subspace<F>,
    /// Lexicographically first element with this kernel.
    first: u32,
    /// Squares in the kernel.
    squares: FixedBitSet,
}

/// Enumerated data shared by the exhaustive deciders.
pub struct Analysis<'a, F: Field> {
    en: Enumerated<'a, F>,
    kernel_of: Vec<u32>,
    classes: Vec<KernelClass<F>>,
    /// `U_e(A)` for each idempotent, in the order of `en.idempotents()`.
    inner: Vec<Subspace<F>>,
    /// First idempotent (by position) with a given square signature.
    by_squares: HashMap<FixedBitSet, usize>,
}

impl<'a, F: Field> Analysis<'a, F> {
    pub fn new(a: &'a JordanAlgebra<F>, budget: u64) -> Result<Self, Error> {
        let en = Enumerated::new(a, budget)?;
        let kernels: Vec<Subspace<F>> = (0..en.len())
            .into_par_iter()
            .map(|i| kernel(&a.u_op(&en.element(i))))
            .collect();
        let mut ids: HashMap<&Subspace<F>, u32> = HashMap::new();
        let mut firsts = Vec::new();
        let kernel_of: Vec<u32> = kernels
            .iter()
            .enumerate()
            .map(|(i, k)| {
                *ids.entry(k).or_insert_with(|| {
                    firsts.push(i as u32);
                    firsts.len() as u32 - 1
                })
            })
            .collect();
        let classes: Vec<KernelClass<F>> = firsts
            .par_iter()
            .map(|&first| {
                let kernel = kernels[first as usize].clone();
                let squares = en.squares_in(&kernel);
                KernelClass { kernel, first, squares }
            })
            .collect();
        let inner: Vec<Subspace<F>> = en
            .idempotents()
            .par_iter()
            .map(|&e| image(&a.u_op(&en.element(e as usize))))
            .collect();
        let inner_squares: Vec<FixedBitSet> = inner.par_iter().map(|v| en.squares_in(v)).collect();
        let mut by_squares = HashMap::new();
        for (pos, sig) in inner_squares.iter().enumerate() {
            by_squares.entry(sig.clone()).or_insert(pos);
        }
        Ok(Analysis {
            en,
            kernel_of,
            classes,
            inner,
            by_squares,
        })
    }

    pub fn algebra(&self) -> &'a JordanAlgebra<F> {
        self.en.algebra()
    }

    pub fn enumerated(&self) -> &Enumerated<'a, F> {
        &self.en
    }

    fn report(&self, property: Property, method: &str, verdict: Verdict<F>) -> ClassReport<F> {
        ClassReport::new(property, method, self.algebra().field().desc(), Mode::Exhaustive, verdict)
    }

    fn idem(&self, pos: usize) -> Element<F> {
        self.en.element(self.en.idempotents()[pos] as usize)
    }

    pub fn idempotent_elements(&self) -> Vec<Element<F>> {
        self.en.idempotent_elements()
    }

    /// Number of distinct kernels `ker U_x`.
    pub fn kernel_class_count(&self) -> usize {
        self.classes.len()
    }

    /// `ker U_x` for an element index.
    pub fn kernel(&self, x: usize) -> &Subspace<F> {
        &self.classes[self.kernel_of[x] as usize].kernel
    }

    /// The idempotent `e` with `⊥{x} ∩ A² = U_e(A) ∩ A²`, first in element order.
    pub fn rj_idempotent(&self, x: &Element<F>) -> Option<Element<F>> {
        let class = &self.classes[self.kernel_of[self.en.index_of(x)] as usize];
        self.by_squares.get(&class.squares).map(|&pos| self.idem(pos))
    }

    pub fn rj(&self) -> ClassReport<F> {
        let matched: Vec<Option<usize>> = self
            .classes
            .par_iter()
            .map(|c| self.by_squares.get(&c.squares).copied())
            .collect();
        // Classes are numbered by first occurrence, so the first unmatched
        // class holds the lexicographically first failing element.
        if let Some(c) = matched.iter().position(Option::is_none) {
            let x = self.en.element(self.classes[c].first as usize);
            return self.report(
                Property::Rj,
                "exhaustive",
                Verdict::fails(Witness::NoIdempotentForElement { x }),
            );
        }
        let mut report = self.report(Property::Rj, "exhaustive", Verdict::holds());
        report.idempotent_map = (0..self.en.len())
            .map(|i| {
                let pos = matched[self.kernel_of[i] as usize].expect("all classes matched");
                (self.en.element(i), self.idem(pos))
            })
            .collect();
        report
    }

    /// Closure of `{⊥{x} ∩ A²}` under intersection, with each member checked.
    pub fn bj_direct(&self) -> ClassReport<F> {
        let gens: Vec<(&FixedBitSet, u32)> = self.classes.iter().map(|c| (&c.squares, c.first)).collect();
        let verdict = closure_check(&gens, |sig| self.by_squares.contains_key(sig), |subset| {
            Witness::NoIdempotentForSubset {
                subset: subset.iter().map(|&i| self.en.element(i as usize)).collect(),
            }
        });
        let holds = verdict.0.is_holds();
        let mut report = self.report(Property::Bj, "direct", verdict.0);
        if holds {
            report.notes.push(format!(
                "{} distinct kernels, {} distinct intersections with the squares",
                self.classes.len(),
                verdict.1
            ));
        }
        report
    }

    pub fn lattice(&self) -> IdemLattice<F> {
        IdemLattice::new(self.algebra(), self.idempotent_elements())
    }

    /// BJ as RJ plus completeness of the idempotent lattice.
    pub fn bj_via_lattice(&self) -> ClassReport<F> {
        let rj = self.rj();
        if rj.verdict.is_fails() {
            let mut report = self.report(Property::Bj, "lattice", rj.verdict);
            report.notes.push("the RJ condition already fails".into());
            return report;
        }
        let lattice = self.lattice();
        let verdict = match lattice.gap() {
            None => Verdict::holds(),
            Some((subset, missing)) => Verdict::fails(Witness::LatticeIncomplete { subset, missing }),
        };
        let mut report = self.report(Property::Bj, "lattice", verdict);
        report
            .notes
            .push(format!("{} idempotents", lattice.len()));
        report
    }

    /// `{x}^⊥` as a bitset over element indices: `a` belongs iff `x ∈ ker U_a`.
    fn right_annihilator_set(&self, square_pos: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.en.len());
        for (a, &c) in self.kernel_of.iter().enumerate() {
            if self.classes[c as usize].squares.contains(square_pos) {
                set.insert(a);
            }
        }
        set
    }

    fn inner_element_sets(&self) -> HashMap<FixedBitSet, usize> {
        let sets: Vec<FixedBitSet> = self.inner.par_iter().map(|v| self.en.elements_in(v)).collect();
        let mut map = HashMap::new();
        for (pos, s) in sets.into_iter().enumerate() {
            map.entry(s).or_insert(pos);
        }
        map
    }

    fn root_of(&self, square: u32) -> Element<F> {
        let root = self.en.square_root(square as usize).expect("square has a root");
        self.en.element(root)
    }

    pub fn rickart(&self) -> ClassReport<F> {
        let targets = self.inner_element_sets();
        let failing = (0..self.en.square_count())
            .into_par_iter()
            .find_first(|&pos| !targets.contains_key(&self.right_annihilator_set(pos)));
        let verdict = match failing {
            None => Verdict::holds(),
            Some(pos) => {
                let s = self.en.squares()[pos];
                Verdict::fails(Witness::NoIdempotentForRightAnnihilator {
                    x: self.en.element(s as usize),
                    root: self.root_of(s),
                })
            }
        };
        self.report(Property::RickartJordan, "exhaustive", verdict)
    }

    pub fn baer(&self) -> ClassReport<F> {
        let targets = self.inner_element_sets();
        let sets: Vec<FixedBitSet> = (0..self.en.square_count())
            .into_par_iter()
            .map(|pos| self.right_annihilator_set(pos))
            .collect();
        let gens: Vec<(&FixedBitSet, u32)> = sets.iter().zip(self.en.squares()).map(|(s, &x)| (s, x)).collect();
        let (verdict, members) = closure_check(&gens, |s| targets.contains_key(s), |subset| {
            Witness::NoIdempotentForRightSubset {
                subset: subset.iter().map(|&i| self.en.element(i as usize)).collect(),
                roots: subset.iter().map(|&i| self.root_of(i)).collect(),
            }
        });
        let holds = verdict.is_holds();
        let mut report = self.report(Property::BaerJordan, "exhaustive", verdict);
        if holds {
            report
                .notes
                .push(format!("{members} distinct right annihilators of subsets of squares"));
        }
        report
    }

    fn is_trivial_index(&self, z: usize) -> bool {
        self.en.square_index(z) == 0 && self.classes[self.kernel_of[z] as usize].kernel.is_full()
    }

    /// Every trivial element (including 0), in element order.
    pub fn trivial_elements(&self) -> Vec<Element<F>> {
        (0..self.en.len())
            .filter(|&z| self.is_trivial_index(z))
            .map(|z| self.en.element(z))
            .collect()
    }

    pub fn nondeg(&self) -> ClassReport<F> {
        let z = (1..self.en.len()).into_par_iter().find_first(|&z| self.is_trivial_index(z));
        let verdict = match z {
            None => Verdict::holds(),
            Some(z) => Verdict::fails(Witness::TrivialElement { z: self.en.element(z) }),
        };
        self.report(Property::Nondegenerate, "exhaustive", verdict)
    }

    pub fn quad_nondeg(&self) -> ClassReport<F> {
        let b = (0..self.en.len()).into_par_iter().find_first(|&b| {
            let s = self.en.square_index(b);
            s != 0 && self.is_trivial_index(s)
        });
        let verdict = match b {
            None => Verdict::holds(),
            Some(b) => Verdict::fails(Witness::TrivialSquare {
                b: self.en.element(b),
                square: self.en.element(self.en.square_index(b)),
            }),
        };
        self.report(Property::QuadraticNondegenerate, "exhaustive", verdict)
    }

    pub fn nil_sqrt(&self) -> ClassReport<F> {
        let a = self.algebra();
        let nilpotent: Vec<bool> = self
            .en
            .squares()
            .par_iter()
            .map(|&s| s != 0 && a.is_nilpotent(&self.en.element(s as usize)))
            .collect();
        let b = (0..self.en.len()).into_par_iter().find_first(|&b| {
            let s = self.en.square_index(b);
            self.en.is_square(s) && nilpotent[self.square_position(s)]
        });
        let verdict = match b {
            None => Verdict::holds(),
            Some(b) => Verdict::fails(Witness::NilpotentSquare {
                b: self.en.element(b),
                square: self.en.element(self.en.square_index(b)),
            }),
        };
        self.report(Property::NoNilpotentWithSquareRoot, "exhaustive", verdict)
    }

    fn square_position(&self, s: usize) -> usize {
        self.en.squares().binary_search(&(s as u32)).expect("is a square")
    }

    pub fn check(&self, property: Property) -> ClassReport<F> {
        match property {
            Property::Rj => self.rj(),
            Property::Bj => self.bj_direct(),
            Property::RickartJordan => self.rickart(),
            Property::BaerJordan => self.baer(),
            Property::Nondegenerate => self.nondeg(),
            Property::QuadraticNondegenerate => self.quad_nondeg(),
            Property::NoNilpotentWithSquareRoot => self.nil_sqrt(),
        }
    }

    /// Squares in `U_{1−e}(A)` for an idempotent `e` (hull formula if non-unital).
    fn complement_squares(&self, e: &Element<F>) -> FixedBitSet {
        self.en.squares_in(&image(&complement_u_op(self.algebra(), e)))
    }

    /// `ker U_e ∩ A² = U_{1−e}(A) ∩ A²`.
    pub fn complement_identity(&self, e: &Element<F>) -> bool {
        let class = &self.classes[self.kernel_of[self.en.index_of(e)] as usize];
        class.squares == self.complement_squares(e)
    }

    /// Idempotents `e` for which [`Self::complement_identity`] fails.
    pub fn complement_identity_failures(&self) -> Vec<Element<F>> {
        self.idempotent_elements()
            .into_par_iter()
            .filter(|e| !self.complement_identity(e))
            .collect()
    }

    /// Whether `e·a = a` for every square `a`.
    pub fn acts_as_identity_on_squares(&self, e: &Element<F>) -> bool {
        let a = self.algebra();
        self.en.squares().par_iter().all(|&s| {
            let x = self.en.element(s as usize);
            a.mul(e, &x) == x
        })
    }

    /// Distinct idempotents with equal inner ideals `U_e(A) = U_f(A)`.
    pub fn inner_ideal_collision(&self) -> Option<(Element<F>, Element<F>)> {
        let mut seen: HashMap<&Subspace<F>, usize> = HashMap::new();
        for (pos, v) in self.inner.iter().enumerate() {
            if let Some(&prev) = seen.get(v) {
                return Some((self.idem(prev), self.idem(pos)));
            }
            seen.insert(v, pos);
        }
        None
    }

    /// Distinct idempotents with equal `U_e(A) ∩ A²`. Never found: `e` lies in
    /// its own set, and `e ∈ U_f(A)`, `f ∈ U_e(A)` force `e = f`.
    pub fn square_signature_collision(&self) -> Option<(Element<F>, Element<F>)> {
        if self.by_squares.len() == self.inner.len() {
            return None;
        }
        let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
        for (pos, v) in self.inner.iter().enumerate() {
            let sig = self.en.squares_in(v);
            if let Some(&prev) = seen.get(&sig) {
                return Some((self.idem(prev), self.idem(pos)));
            }
            seen.insert(sig, pos);
        }
        None
    }

    /// Supremum of idempotents by the annihilator recipe: the idempotent `e`
    /// with `⊥{e_i} ∩ A² = U_{1−e}(A) ∩ A²`, first in element order.
    pub fn sup_by_annihilator(&self, subset: &[Element<F>]) -> Option<Element<F>> {
        let mut target = self.en.empty_square_set();
        target.insert_range(..);
        for e in subset {
            target.intersect_with(&self.classes[self.kernel_of[self.en.index_of(e)] as usize].squares);
        }
        self.idempotent_elements()
            .into_iter()
            .find(|e| self.complement_squares(e) == target)
    }

    /// Squares of `x ∈ v` as elements.
    pub fn squares_in(&self, v: &Subspace<F>) -> Vec<Element<F>> {
        self.en
            .square_elements(&self.en.squares_in(v))
            .into_iter()
            .map(|i| self.en.element(i))
            .collect()
    }
}

/// Intersection closure over generator bitsets. Singletons are tested first
/// so that a failing element is reported as a one-element subset. Returns the
/// verdict and the number of distinct members visited.
fn closure_check<F: Field>(
    gens: &[(&FixedBitSet, u32)],
    matches: impl Fn(&FixedBitSet) -> bool + Sync,
    witness: impl Fn(&[u32]) -> Witness<Element<F>>,
) -> (Verdict<F>, usize) {
    let failing = gens.par_iter().position_first(|(sig, _)| !matches(sig));
    if let Some(i) = failing {
        return (Verdict::fails(witness(&[gens[i].1])), 0);
    }
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut members: Vec<(FixedBitSet, Vec<u32>)> = Vec::new();
    let mut distinct_gens: Vec<(&FixedBitSet, u32)> = Vec::new();
    for &(sig, x) in gens {
        if seen.insert(sig.clone()) {
            members.push((sig.clone(), vec![x]));
            distinct_gens.push((sig, x));
        }
    }
    let mut next = 0;
    while next < members.len() {
        let (base, subset) = members[next].clone();
        for &(sig, x) in &distinct_gens {
            let mut meet = base.clone();
            meet.intersect_with(sig);
            if seen.contains(&meet) {
                continue;
            }
            let mut grown = subset.clone();
            grown.push(x);
            if !matches(&meet) {
                return (Verdict::fails(witness(&grown)), seen.len());
            }
            seen.insert(meet.clone());
            members.push((meet, grown));
        }
        next += 1;
    }
    (Verdict::holds(), seen.len())
}

fn resolve<'a, F: Field>(a: &'a JordanAlgebra<F>, settings: &Settings<F>) -> Result<Option<Analysis<'a, F>>, Error> {
    match settings.mode {
        ModeChoice::Symbolic => Ok(None),
        ModeChoice::Exhaustive => Analysis::new(a, settings.budget).map(Some),
        ModeChoice::Auto => match Analysis::new(a, settings.budget) {
            Ok(an) => Ok(Some(an)),
            Err(Error::TooLarge { .. }) | Err(Error::InfiniteField) => Ok(None),
            Err(e) => Err(e),
        },
    }
}

pub fn check<F: Field>(a: &JordanAlgebra<F>, property: Property, settings: &Settings<F>) -> Result<ClassReport<F>, Error> {
    Ok(match resolve(a, settings)? {
        Some(an) => an.check(property),
        None => symbolic_check(a, property, settings),
    })
}

pub fn rj_check<F: Field>(a: &JordanAlgebra<F>, settings: &Settings<F>) -> Result<ClassReport<F>, Error> {
    check(a, Property::Rj, settings)
}

pub fn bj_check_direct<F: Field>(a: &JordanAlgebra<F>, settings: &Settings<F>) -> Result<ClassReport<F>, Error> {
    check(a, Property::Bj, settings)
}

pub fn bj_check_via_lattice<F: Field>(a: &JordanAlgebra<F>, settings: &Settings<F>) -> Result<ClassReport<F>, Error> {
    Ok(match resolve(a, settings)? {
        Some(an) => an.bj_via_lattice(),
        None => symbolic_check(a, Property::Bj, settings),
    })
}

pub fn rickart_check<F: Field>(a: &JordanAlgebra<F>, settings: &Settings<F>) -> Result<ClassReport<F>, Error> {
    check(a, Property::RickartJordan, settings)
}

pub fn baer_check<F: Field>(a: &JordanAlgebra<F>, settings: &Settings<F>) -> Result<ClassReport<F>, Error> {
    check(a, Property::BaerJordan, settings)
}

pub fn nondeg_check<F: Field>(a: &JordanAlgebra<F>, settings: &Settings<F>) -> Result<ClassReport<F>, Error> {
    check(a, Property::Nondegenerate, settings)
}

pub fn quad_nondeg_check<F: Field>(a: &JordanAlgebra<F>, settings: &Settings<F>) -> Result<ClassReport<F>, Error> {
    check(a, Property::QuadraticNondegenerate, settings)
}

pub fn nil_sqrt_check<F: Field>(a: &JordanAlgebra<F>, settings: &Settings<F>) -> Result<ClassReport<F>, Error> {
    check(a, Property::NoNilpotentWithSquareRoot, settings)
}

/// Squares that a cheap search can exhibit: `b²` for basis vectors, pairwise
/// sums and differences.
fn sample_squares<F: Field>(a: &JordanAlgebra<F>) -> Vec<(Element<F>, Element<F>)> {
    let mut roots = Vec::new();
    for i in 0..a.dim() {
        roots.push(a.basis(i));
        for j in (i + 1)..a.dim() {
            roots.push(a.add(&a.basis(i), &a.basis(j)));
            roots.push(a.sub(&a.basis(i), &a.basis(j)));
        }
    }
    if let Some(u) = a.unit() {
        let extra: Vec<_> = (0..a.dim()).map(|i| a.add(u, &a.basis(i))).collect();
        roots.extend(extra);
    }
    roots.into_iter().map(|b| (a.square(&b), b)).collect()
}

fn symbolic_report<F: Field>(a: &JordanAlgebra<F>, property: Property, method: &str, verdict: Verdict<F>) -> ClassReport<F> {
    ClassReport::new(property, method, a.field().desc(), Mode::Symbolic, verdict)
}

fn symbolic_check<F: Field>(a: &JordanAlgebra<F>, property: Property, settings: &Settings<F>) -> ClassReport<F> {
    match property {
        Property::Rj | Property::Bj => symbolic_rj(a, property, settings),
        Property::RickartJordan | Property::BaerJordan => symbolic_report(
            a,
            property,
            "symbolic",
            Verdict::unknown("right annihilators are not subspaces and need exhaustive enumeration"),
        ),
        Property::Nondegenerate => symbolic_nondeg(a),
        Property::QuadraticNondegenerate => symbolic_quad_nondeg(a),
        Property::NoNilpotentWithSquareRoot => symbolic_nil_sqrt(a, settings),
    }
}

/// Outcome of the symbolic RJ condition at one element.
enum ProbeResult<F: Field> {
    Certified(Element<F>),
    Refuted,
    Open,
}

/// Sound checks of `⊥{x} ∩ A² = U_e(A) ∩ A²` at a single `x`:
///
/// - equal intersections with the span of all squares certify `e`;
/// - if `⊥{x}` meets that span in `{0}`, `e = 0` works;
/// - in a unital algebra with `x² = 0` the unit is a square in `⊥{x}`, which
///   forces `e = 1`, so any square outside `⊥{x}` refutes the condition.
fn probe_rj<F: Field>(
    a: &JordanAlgebra<F>,
    x: &Element<F>,
    span: &Subspace<F>,
    candidates: &[(Element<F>, Subspace<F>)],
    samples: &[(Element<F>, Element<F>)],
) -> ProbeResult<F> {
    let k = kernel(&a.u_op(x));
    let k_span = k.intersect(span).expect("same ambient");
    if k_span.is_zero() {
        return ProbeResult::Certified(a.zero());
    }
    if let Some((e, _)) = candidates.iter().find(|(_, v)| *v == k_span) {
        return ProbeResult::Certified(e.clone());
    }
    if a.unit().is_some() && a.is_zero(&a.square(x)) && samples.iter().any(|(s, _)| !k.contains(s.coords())) {
        return ProbeResult::Refuted;
    }
    ProbeResult::Open
}

fn symbolic_rj<F: Field>(a: &JordanAlgebra<F>, property: Property, settings: &Settings<F>) -> ClassReport<F> {
    let span = squares_span(a);
    let idem = idempotents(a, settings.budget);
    let candidates: Vec<(Element<F>, Subspace<F>)> = idem
        .elements
        .iter()
        .map(|e| (e.clone(), a.inner_ideal(e).intersect(&span).expect("same ambient")))
        .collect();
    let samples = sample_squares(a);
    let mut probes = vec![a.zero()];
    if let Some(u) = a.unit() {
        probes.push(u.clone());
    }
    for i in 0..a.dim() {
        probes.push(a.basis(i));
    }
    if let Some(u) = a.unit() {
        probes.extend((0..a.dim()).map(|i| a.sub(u, &a.basis(i))));
    }
    probes.extend(settings.probes.iter().cloned());
    let mut seen = HashSet::new();
    probes.retain(|p| seen.insert(p.clone()));

    let mut map = Vec::new();
    let mut open = 0;
    for x in &probes {
        match probe_rj(a, x, &span, &candidates, &samples) {
            ProbeResult::Certified(e) => map.push((x.clone(), e)),
            ProbeResult::Refuted => {
                let witness = if property == Property::Rj {
                    Witness::NoIdempotentForElement { x: x.clone() }
                } else {
                    Witness::NoIdempotentForSubset { subset: vec![x.clone()] }
                };
                let mut report = symbolic_report(a, property, "probes", Verdict::fails(witness));
                report.notes.push(
                    "x² = 0 puts the unit in ⊥{x}, forcing e = 1, but a square lies outside ⊥{x}".into(),
                );
                return report;
            }
            ProbeResult::Open => open += 1,
        }
    }
    let reason = format!(
        "the squares of an infinite field algebra are not enumerable; {} of {} probe elements certified",
        map.len(),
        probes.len()
    );
    let mut report = symbolic_report(a, property, "probes", Verdict::unknown(reason));
    if open > 0 {
        report
            .notes
            .push(format!("{open} probes matched none of {} known idempotents", candidates.len()));
    }
    if !idem.complete {
        report.notes.push("idempotents found by bounded search; the list may be incomplete".into());
    }
    if property == Property::Rj {
        report.idempotent_map = map;
    }
    report
}

fn is_trivial<F: Field>(a: &JordanAlgebra<F>, z: &Element<F>) -> bool {
    a.is_zero(&a.square(z)) && a.u_op(z).is_zero()
}

/// Nonzero elements of `w` worth testing: basis vectors and pairwise sums.
fn sample_vectors<F: Field>(a: &JordanAlgebra<F>, w: &Subspace<F>) -> Vec<Element<F>> {
    let basis: Vec<Element<F>> = w.basis().iter().map(|b| Element::new(b.clone())).collect();
    let mut out = basis.clone();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            out.push(a.add(&basis[i], &basis[j]));
            out.push(a.sub(&basis[i], &basis[j]));
        }
    }
    out
}

fn symbolic_nondeg<F: Field>(a: &JordanAlgebra<F>) -> ClassReport<F> {
    let (region, exact) = match QuadraticMap::triviality(a).zero_set(&a.full_space()) {
        Preimage::Exact(w) => (w, true),
        Preimage::Bounded(w) => (w, false),
        Preimage::Empty => (a.zero_space(), true),
    };
    let verdict = if region.is_zero() {
        Verdict::holds().with_reason("sign analysis confines trivial elements to {0}")
    } else if exact {
        let z = Element::new(region.basis()[0].clone());
        Verdict::fails(Witness::TrivialElement { z })
    } else if let Some(z) = sample_vectors(a, &region).into_iter().find(|z| is_trivial(a, z)) {
        Verdict::fails(Witness::TrivialElement { z })
    } else {
        Verdict::unknown(format!(
            "trivial elements confined to a subspace of dimension {} but none found",
            region.dim()
        ))
    };
    symbolic_report(a, Property::Nondegenerate, "sign-analysis", verdict)
}

fn symbolic_quad_nondeg<F: Field>(a: &JordanAlgebra<F>) -> ClassReport<F> {
    let (trivial, exact) = match QuadraticMap::triviality(a).zero_set(&a.full_space()) {
        Preimage::Exact(w) => (w, true),
        Preimage::Bounded(w) => (w, false),
        Preimage::Empty => (a.zero_space(), true),
    };
    let report = |v| symbolic_report(a, Property::QuadraticNondegenerate, "sign-analysis", v);
    if trivial.is_zero() {
        return report(Verdict::holds().with_reason("sign analysis confines trivial elements to {0}"));
    }
    // Elements b with b² in the trivial region: the zero set of the squaring
    // map composed with functionals vanishing on that region.
    let squaring = QuadraticMap::squaring(a);
    let functionals: Vec<Vec<F::Elem>> = trivial.annihilator().basis().to_vec();
    let roots_region = match squaring.compose_rows(&functionals).zero_set(&a.full_space()) {
        Preimage::Exact(w) | Preimage::Bounded(w) => w,
        Preimage::Empty => a.zero_space(),
    };
    let squares_vanish = roots_region.basis().iter().all(|b| {
        roots_region
            .basis()
            .iter()
            .all(|c| {
                let s = a.add(&Element::new(b.clone()), &Element::new(c.clone()));
                a.is_zero(&a.square(&s))
            })
    });
    if squares_vanish {
        return report(Verdict::holds().with_reason(
            "every b whose square lies in the trivial region has b² = 0 (polarized check on a basis)",
        ));
    }
    for b in sample_vectors(a, &roots_region) {
        let s = a.square(&b);
        if !a.is_zero(&s) && (if exact { trivial.contains(s.coords()) } else { false } || is_trivial(a, &s)) {
            return report(Verdict::fails(Witness::TrivialSquare { b, square: s }));
        }
    }
    report(Verdict::unknown(format!(
        "square roots of trivial elements confined to a subspace of dimension {} but none found",
        roots_region.dim()
    )))
}

fn symbolic_nil_sqrt<F: Field>(a: &JordanAlgebra<F>, settings: &Settings<F>) -> ClassReport<F> {
    let mut roots: Vec<Element<F>> = sample_squares(a).into_iter().map(|(_, b)| b).collect();
    roots.extend(settings.probes.iter().cloned());
    let found = roots.into_iter().find_map(|b| {
        let s = a.square(&b);
        (!a.is_zero(&s) && a.is_nilpotent(&s)).then_some((b, s))
    });
    let verdict = match found {
        Some((b, square)) => Verdict::fails(Witness::NilpotentSquare { b, square }),
        None => Verdict::unknown("no nilpotent square found by bounded search"),
    };
    symbolic_report(a, Property::NoNilpotentWithSquareRoot, "search", verdict)
}

/// Re-checks a witness from scratch, without the kernel-class machinery.
/// Witnesses that quantify over all idempotents or squares need enumeration
/// unless the symbolic refutation argument applies.
pub fn verify_witness<F: Field>(
    a: &JordanAlgebra<F>,
    witness: &Witness<Element<F>>,
    budget: u64,
) -> Result<bool, Error> {
    for x in witness_elements(witness) {
        if x.len() != a.dim() {
            return Err(Error::AlgebraMismatch(format!(
                "witness element has {} coordinates, algebra has dimension {}",
                x.len(),
                a.dim()
            )));
        }
    }
    Ok(match witness {
        Witness::SquareRoot { v, root } => a.square(root) == *v,
        Witness::TrivialElement { z } => !a.is_zero(z) && is_trivial(a, z),
        Witness::TrivialSquare { b, square } => a.square(b) == *square && !a.is_zero(square) && is_trivial(a, square),
        Witness::NilpotentSquare { b, square } => {
            a.square(b) == *square && !a.is_zero(square) && a.is_nilpotent(square)
        }
        Witness::NoIdempotentForElement { x } => no_idempotent_for_left(a, std::slice::from_ref(x), budget)?,
        Witness::NoIdempotentForSubset { subset } => no_idempotent_for_left(a, subset, budget)?,
        Witness::NoIdempotentForRightAnnihilator { x, root } => {
            a.square(root) == *x && no_idempotent_for_right(a, std::slice::from_ref(x), budget)?
        }
        Witness::NoIdempotentForRightSubset { subset, roots } => {
            subset.len() == roots.len()
                && subset.iter().zip(roots).all(|(x, r)| a.square(r) == *x)
                && no_idempotent_for_right(a, subset, budget)?
        }
        Witness::LatticeIncomplete { subset, missing } => {
            let all = naive_elements(a, budget)?;
            let idem: Vec<Element<F>> = all.into_iter().filter(|e| a.is_idempotent(e)).collect();
            if !subset.iter().all(|e| idem.contains(e)) {
                return Ok(false);
            }
            let leq = |e: &Element<F>, g: &Element<F>| a.mul(e, g) == *e;
            let bounds: Vec<&Element<F>> = idem
                .iter()
                .filter(|b| match missing {
                    crate::verdict::Bound::Sup => subset.iter().all(|s| leq(s, b)),
                    crate::verdict::Bound::Inf => subset.iter().all(|s| leq(b, s)),
                })
                .collect();
            !bounds.iter().any(|b| {
                bounds.iter().all(|c| match missing {
                    crate::verdict::Bound::Sup => leq(b, c),
                    crate::verdict::Bound::Inf => leq(c, b),
                })
            })
        }
    })
}

fn witness_elements<F: Field>(w: &Witness<Element<F>>) -> Vec<&Element<F>> {
    match w {
        Witness::NoIdempotentForElement { x } | Witness::TrivialElement { z: x } => vec![x],
        Witness::NoIdempotentForSubset { subset } | Witness::LatticeIncomplete { subset, .. } => subset.iter().collect(),
        Witness::NoIdempotentForRightAnnihilator { x, root } => vec![x, root],
        Witness::NoIdempotentForRightSubset { subset, roots } => subset.iter().chain(roots).collect(),
        Witness::TrivialSquare { b, square } | Witness::NilpotentSquare { b, square } => vec![b, square],
        Witness::SquareRoot { v, root } => vec![v, root],
    }
}

fn naive_elements<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> Result<Vec<Element<F>>, Error> {
    crate::enumerate::enumerate_elements(a, budget)
}

/// No idempotent `e` has `⊥S ∩ A² = U_e(A) ∩ A²`, checked element by element.
fn no_idempotent_for_left<F: Field>(a: &JordanAlgebra<F>, s: &[Element<F>], budget: u64) -> Result<bool, Error> {
    let f = a.field();
    let all = match naive_elements(a, budget) {
        Ok(all) => all,
        Err(Error::InfiniteField) | Err(Error::TooLarge { .. }) => {
            // Symbolic refutation: a single x with x² = 0 in a unital algebra.
            let [x] = s else { return Ok(false) };
            let k = kernel(&a.u_op(x));
            return Ok(a.unit().is_some()
                && a.is_zero(&a.square(x))
                && sample_squares(a).iter().any(|(sq, _)| !k.contains(sq.coords())));
        }
        Err(e) => return Err(e),
    };
    let mut squares: Vec<Element<F>> = all.iter().map(|b| a.square(b)).collect();
    squares.sort();
    squares.dedup();
    let ops: Vec<_> = s.iter().map(|x| a.u_op(x)).collect();
    let in_left = |v: &Element<F>| ops.iter().all(|u| u.apply(v.coords()).iter().all(|c| f.is_zero(c)));
    let left: Vec<bool> = squares.iter().map(in_left).collect();
    Ok(all.iter().filter(|e| a.is_idempotent(e)).all(|e| {
        let inner = a.inner_ideal(e);
        squares
            .iter()
            .zip(&left)
            .any(|(sq, &l)| l != inner.contains(sq.coords()))
    }))
}

/// No idempotent `e` has `S^⊥ = U_e(A)`, checked element by element.
fn no_idempotent_for_right<F: Field>(a: &JordanAlgebra<F>, s: &[Element<F>], budget: u64) -> Result<bool, Error> {
    let all = naive_elements(a, budget)?;
    let right: Vec<bool> = all
        .iter()
        .map(|b| s.iter().all(|x| a.is_zero(&a.u_apply(b, x))))
        .collect();
    Ok(all.iter().filter(|e| a.is_idempotent(e)).all(|e| {
        let inner = a.inner_ideal(e);
        all.iter().zip(&right).any(|(b, &r)| r != inner.contains(b.coords()))
    }))
}

/// Re-checks each `(x, e)` pair of an RJ report by direct set comparison.
pub fn verify_idempotent_map<F: Field>(a: &JordanAlgebra<F>, map: &[(Element<F>, Element<F>)], budget: u64) -> Result<bool, Error> {
    let all = naive_elements(a, budget)?;
    let mut squares: Vec<Element<F>> = all.iter().map(|b| a.square(b)).collect();
    squares.sort();
    squares.dedup();
    Ok(map.par_iter().all(|(x, e)| {
        let u = a.u_op(x);
        let inner = a.inner_ideal(e);
        a.is_idempotent(e)
            && squares.iter().all(|sq| {
                let in_left = u.apply(sq.coords()).iter().all(|c| a.field().is_zero(c));
                in_left == inner.contains(sq.coords())
            })
    }))
}
