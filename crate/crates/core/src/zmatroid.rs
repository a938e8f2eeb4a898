//! Realized matroids over `Z`.
//!
//! A [`Realization`] is a presentation `M(∅) = Z^D / relations` together with
//! generators `z_1, …, z_n`. For a subset `A` of the ground set,
//! `M(A) = M(∅) / (z_i : i ∈ A) ≅ Z^d(A) × G_A`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::intlin::{cokernel_structure, smith_normal_form, IntLinError, IntMatrix, Lattice, QuotientStructure};
use crate::poly::BivariatePoly;

/// Subsets are stored as `u64` bitsets.
pub const MAX_GROUND_SET: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("vector {index} of the {what} has length {got}, expected {expected}")]
    VectorLength { what: &'static str, index: usize, expected: usize, got: usize },
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_GROUND_SET}")]
    TooManyGenerators(usize),
    #[error("M(∅) has torsion (m(∅) = {0}); reduce with modulo_initial_torsion first")]
    TorsionInInitial(BigInt),
    #[error("generator index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error(transparent)]
    Lattice(#[from] IntLinError),
}

/// A subset of the ground set `{0, …, n-1}`; printed 1-based as `{1,2}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Subset {
        Subset(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    /// Members in increasing order (0-based).
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// All subsets of an `n`-element ground set by increasing size, then by
/// bitset value.
pub fn subsets_in_order(n: usize) -> Vec<Subset> {
    let mut all: Vec<Subset> = (0..1u64 << n).map(Subset).collect();
    all.sort_by_key(|s| (s.len(), s.0));
    all
}

/// Data attached to one subset `A` of the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetProfile {
    pub subset: Subset,
    pub structure: QuotientStructure,
    /// `d(A)`, the free rank of `M(A)`.
    pub d: usize,
    /// `cork(A) = d(∅) - d(A)`, the rank of `A` in the rational matroid.
    pub cork: usize,
    /// `m(A) = #G_A`.
    pub multiplicity: BigInt,
    pub independent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    ambient_rank: usize,
    relations: Lattice,
    generators: Vec<Vec<BigInt>>,
    initial: QuotientStructure,
}

impl Realization {
    pub fn new(
        ambient_rank: usize,
        relations: &[Vec<BigInt>],
        generators: Vec<Vec<BigInt>>,
    ) -> Result<Self, RealizationError> {
        for (index, v) in relations.iter().enumerate() {
            if v.len() != ambient_rank {
                return Err(RealizationError::VectorLength {
                    what: "relations",
                    index,
                    expected: ambient_rank,
                    got: v.len(),
                });
            }
        }
        let relations = Lattice::from_vectors(ambient_rank, relations)?;
        Self::with_relation_lattice(relations, generators)
    }

    pub fn with_relation_lattice(relations: Lattice, generators: Vec<Vec<BigInt>>) -> Result<Self, RealizationError> {
        let ambient_rank = relations.ambient_dim();
        if generators.len() > MAX_GROUND_SET {
            return Err(RealizationError::TooManyGenerators(generators.len()));
        }
        for (index, v) in generators.iter().enumerate() {
            if v.len() != ambient_rank {
                return Err(RealizationError::VectorLength {
                    what: "generators",
                    index,
                    expected: ambient_rank,
                    got: v.len(),
                });
            }
        }
        let initial = cokernel_structure(&IntMatrix::zeros(ambient_rank, 0), &relations)?;
        Ok(Realization { ambient_rank, relations, generators, initial })
    }

    /// Small-integer convenience constructor.
    pub fn from_i64(ambient_rank: usize, relations: &[&[i64]], generators: &[&[i64]]) -> Result<Self, RealizationError> {
        let conv = |vs: &[&[i64]]| -> Vec<Vec<BigInt>> {
            vs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        Self::new(ambient_rank, &conv(relations), conv(generators))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn ground_set_size(&self) -> usize {
        self.generators.len()
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.generators.len())
    }

    /// Structure of `M(∅)`.
    pub fn initial_structure(&self) -> &QuotientStructure {
        &self.initial
    }

    pub fn initial_multiplicity(&self) -> BigInt {
        self.initial.multiplicity()
    }

    /// `relations + span(z_i : i ∈ A)`
    pub fn subset_lattice(&self, a: Subset) -> Lattice {
        let vs: Vec<Vec<BigInt>> = a.indices().map(|i| self.generators[i].clone()).collect();
        self.relations.extend(&vs).expect("generator lengths validated")
    }

    pub fn structure(&self, a: Subset) -> QuotientStructure {
        let cols: Vec<Vec<BigInt>> = a.indices().map(|i| self.generators[i].clone()).collect();
        let m = IntMatrix::from_columns(self.ambient_rank, &cols).expect("generator lengths validated");
        cokernel_structure(&m, &self.relations).expect("generator lengths validated")
    }

    pub fn profile(&self, a: Subset) -> SubsetProfile {
        let structure = self.structure(a);
        let d = structure.free_rank;
        let cork = self.initial.free_rank - d;
        SubsetProfile {
            subset: a,
            d,
            cork,
            multiplicity: structure.multiplicity(),
            independent: cork == a.len(),
            structure,
        }
    }

    /// Profiles of every subset, in [`subsets_in_order`] order.
    pub fn profiles(&self) -> Vec<SubsetProfile> {
        subsets_in_order(self.ground_set_size()).into_iter().map(|a| self.profile(a)).collect()
    }

    /// Rank of the matroid: `cork([n])`.
    pub fn rank(&self) -> usize {
        self.profile(self.ground_set()).cork
    }

    /// `M([n])` has no free summand.
    pub fn is_essential(&self) -> bool {
        self.structure(self.ground_set()).free_rank == 0
    }

    /// `T_M(x, y) = Σ_A m(A) (x-1)^(r - cork A) (y-1)^(#A - cork A)`.
    pub fn arithmetic_tutte(&self) -> BivariatePoly {
        let profiles = self.profiles();
        let r = profiles.last().map_or(0, |p| p.cork);
        tutte_from_profiles(&profiles, r)
    }

    /// Removes generator `index`; the remaining generators keep their order.
    pub fn delete(&self, index: usize) -> Result<Realization, RealizationError> {
        if index >= self.generators.len() {
            return Err(RealizationError::IndexOutOfRange { index, n: self.generators.len() });
        }
        let mut generators = self.generators.clone();
        generators.remove(index);
        Self::with_relation_lattice(self.relations.clone(), generators)
    }

    /// Realization of `M'(A) = M(A) / G_∅`.
    ///
    /// Coordinates are changed along the Smith form of the relation lattice
    /// and the torsion coordinates dropped, so the result has ambient rank
    /// `d(∅)` and no relations.
    pub fn modulo_initial_torsion(&self) -> Realization {
        if self.relations.is_zero() {
            return self.clone();
        }
        let snf = smith_normal_form(self.relations.basis());
        let k = snf.rank();
        let generators = self
            .generators
            .iter()
            .map(|z| snf.v.left_mul_vec(z)[k..].to_vec())
            .collect();
        Realization::with_relation_lattice(Lattice::zero(self.ambient_rank - k), generators)
            .expect("projected vectors have the free rank as length")
    }

    /// Gale-type dual: `Z^n` modulo the row space of the generator matrix,
    /// generated by the images of the standard basis vectors.
    ///
    /// Requires `M(∅)` to be free; nontrivial but saturated relations are
    /// first projected away.
    pub fn dual(&self) -> Result<Realization, RealizationError> {
        if !self.initial.is_free() {
            return Err(RealizationError::TorsionInInitial(self.initial_multiplicity()));
        }
        let free = self.modulo_initial_torsion();
        let n = free.generators.len();
        let rows: Vec<Vec<BigInt>> = (0..free.ambient_rank)
            .map(|j| free.generators.iter().map(|z| z[j].clone()).collect())
            .collect();
        let generators = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
            .collect();
        Realization::new(n, &rows, generators)
    }

    /// Pairs `([M(A)], [M*(E∖A)])` for every subset `A`.
    pub fn grothendieck_class(&self) -> Result<GrothendieckClass, RealizationError> {
        let dual = self.dual()?;
        let n = self.ground_set_size();
        let pairs = subsets_in_order(n)
            .into_iter()
            .map(|a| (self.structure(a), dual.structure(a.complement(n))))
            .collect();
        Ok(GrothendieckClass { pairs })
    }
}

pub(crate) fn tutte_from_profiles(profiles: &[SubsetProfile], r: usize) -> BivariatePoly {
    let xm1 = &BivariatePoly::x() - &BivariatePoly::one();
    let ym1 = &BivariatePoly::y() - &BivariatePoly::one();
    let mut acc = BivariatePoly::zero();
    for p in profiles {
        let term = &xm1.pow((r - p.cork) as u32) * &ym1.pow((p.subset.len() - p.cork) as u32);
        acc = &acc + &term.scale(&p.multiplicity);
    }
    acc
}

/// The Grothendieck–Tutte class as a multiset of isomorphism-class pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckClass {
    pub pairs: Vec<(QuotientStructure, QuotientStructure)>,
}

impl GrothendieckClass {
    /// Evaluates the class to a polynomial in `x` and `y`.
    ///
    /// A pair `(Z^a × G, Z^b × G')` maps to `#G (x-1)^(a - a_min) (y-1)^b`,
    /// where `a_min` is the smallest free rank among first components
    /// (the rank of the projective summand `Z^d([n])`). The torsion of
    /// `M(A)` and `M*(E∖A)` are dual groups, so each pair contributes its
    /// multiplicity once.
    pub fn evaluate(&self) -> BivariatePoly {
        let a_min = self.pairs.iter().map(|(a, _)| a.free_rank).min().unwrap_or(0);
        let xm1 = &BivariatePoly::x() - &BivariatePoly::one();
        let ym1 = &BivariatePoly::y() - &BivariatePoly::one();
        let mut acc = BivariatePoly::zero();
        for (a, b) in &self.pairs {
            let term = &xm1.pow((a.free_rank - a_min) as u32) * &ym1.pow(b.free_rank as u32);
            acc = &acc + &term.scale(&a.multiplicity());
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Rank-generating sum `Σ_{B ⊆ X, cork(B) = cork(X)} (y-1)^(#B - cork B)`
/// of the rational matroid restricted to `X`, as a polynomial in `y`.
pub fn ordinary_tutte_at_x_one(r: &Realization, x: Subset) -> BivariatePoly {
    let full = r.profile(x).cork;
    let ym1 = &BivariatePoly::y() - &BivariatePoly::one();
    let mut acc = BivariatePoly::zero();
    let mut b = x.0;
    loop {
        let s = Subset(b);
        let p = r.profile(s);
        if p.cork == full {
            acc = &acc + &ym1.pow((s.len() - p.cork) as u32);
        }
        if b == 0 {
            break;
        }
        b = (b - 1) & x.0;
    }
    acc
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.ambient_rank)?;
        if !self.relations.is_zero() {
            write!(f, " / {}", self.relations)?;
        }
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|z| format!("({})", z.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, " with generators [{}]", gens.join(", "))
    }
}

/// `m(A)` summed over bases: `T_M(1, 1)`.
pub fn basis_multiplicity_sum(r: &Realization) -> BigInt {
    let profiles = r.profiles();
    let rank = profiles.last().map_or(0, |p| p.cork);
    profiles
        .iter()
        .filter(|p| p.independent && p.cork == rank)
        .map(|p| p.multiplicity.clone())
        .fold(BigInt::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::QuotientStructure;

    fn m1() -> Realization {
        Realization::from_i64(2, &[], &[&[2, 0], &[0, 1]]).unwrap()
    }
    fn m2() -> Realization {
        Realization::from_i64(2, &[], &[&[1, 1], &[1, -1]]).unwrap()
    }
    fn m3() -> Realization {
        Realization::from_i64(2, &[], &[&[1, 1], &[1, -1], &[1, 0]]).unwrap()
    }
    fn tutte(s: &[((u32, u32), i64)]) -> BivariatePoly {
        BivariatePoly::from_terms(s.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn subset_order_and_display() {
        let order: Vec<u64> = subsets_in_order(3).iter().map(|s| s.0).collect();
        assert_eq!(order, vec![0, 1, 2, 4, 3, 5, 6, 7]);
        assert_eq!(Subset(0b101).to_string(), "{1,3}");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }

    #[test]
    fn profile_examples() {
        let p = m1().profile(Subset::from_indices([0]));
        assert_eq!(p.structure, QuotientStructure { free_rank: 1, torsion: vec![2.into()] });
        assert_eq!(p.multiplicity, BigInt::from(2));
        let p = m2().profile(Subset::from_indices([0, 1]));
        assert_eq!((p.d, p.multiplicity.clone()), (0, BigInt::from(2)));
        let p = m3().profile(Subset::EMPTY);
        assert_eq!(p.structure, QuotientStructure::free(2));
        assert!(p.independent);
    }

    #[test]
    fn rank_and_essential() {
        assert_eq!(m1().rank(), 2);
        assert_eq!(m3().rank(), 2);
        let empty = Realization::from_i64(2, &[], &[]).unwrap();
        assert_eq!(empty.rank(), 0);
        assert!(m1().is_essential());
        assert!(!Realization::from_i64(2, &[], &[&[1, 0]]).unwrap().is_essential());
        assert!(Realization::from_i64(0, &[], &[]).unwrap().is_essential());
    }

    #[test]
    fn golden_tutte() {
        assert_eq!(m1().arithmetic_tutte(), tutte(&[((2, 0), 1), ((1, 0), 1)]));
        assert_eq!(m2().arithmetic_tutte(), tutte(&[((2, 0), 1), ((0, 0), 1)]));
        assert_eq!(
            m3().arithmetic_tutte(),
            tutte(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1), ((0, 0), 1)])
        );
        assert_eq!(m3().arithmetic_tutte().to_string(), "x^2 + x + y + 1");
    }

    #[test]
    fn dual_of_m3() {
        let d = m3().dual().unwrap();
        assert_eq!(d.initial_structure(), &QuotientStructure::free(1));
        assert_eq!(d.structure(Subset::from_indices([2])).torsion, vec![BigInt::from(2)]);
        assert!(d.structure(Subset::from_indices([0])).is_trivial());
        assert!(d.structure(Subset::from_indices([1])).is_trivial());
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert!(d.structure(Subset::from_indices(pair)).is_trivial());
        }
        assert_eq!(
            d.arithmetic_tutte(),
            tutte(&[((0, 2), 1), ((0, 1), 1), ((1, 0), 1), ((0, 0), 1)])
        );
        assert_eq!(d.dual().unwrap().arithmetic_tutte(), m3().arithmetic_tutte());
    }

    #[test]
    fn dual_rejects_torsion() {
        let r = Realization::from_i64(1, &[&[2]], &[&[1]]).unwrap();
        assert!(matches!(r.dual(), Err(RealizationError::TorsionInInitial(_))));
        // saturated relations are fine
        let r = Realization::from_i64(2, &[&[1, 0]], &[&[0, 2]]).unwrap();
        assert_eq!(r.dual().unwrap().arithmetic_tutte(), r.arithmetic_tutte().swap_xy());
    }

    #[test]
    fn modulo_torsion_examples() {
        assert_eq!(m3().modulo_initial_torsion(), m3());
        let r = Realization::from_i64(2, &[&[0, 2]], &[&[1, 0]]).unwrap();
        let q = r.modulo_initial_torsion();
        assert_eq!(q.ambient_rank(), 1);
        assert_eq!(q.generators(), &[vec![BigInt::from(1)]]);
        assert_eq!(q.initial_structure(), &QuotientStructure::free(1));
    }

    #[test]
    fn grothendieck_examples() {
        let c = m3().grothendieck_class().unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(c.pairs[0], (QuotientStructure::free(2), QuotientStructure::free(0)));
        // {1,2} is the fifth subset in canonical order
        let z2 = QuotientStructure { free_rank: 0, torsion: vec![2.into()] };
        assert_eq!(c.pairs[4], (z2.clone(), z2));
        assert_eq!(c.evaluate(), m3().arithmetic_tutte());
        assert_eq!(m2().grothendieck_class().unwrap().evaluate(), m2().arithmetic_tutte());

        let empty = Realization::from_i64(2, &[], &[]).unwrap();
        let c = empty.grothendieck_class().unwrap();
        assert_eq!(c.pairs, vec![(QuotientStructure::free(2), QuotientStructure::free(0))]);
        // projective summand Z^2 is factored out: rank 0 matroid
        assert_eq!(c.evaluate(), BivariatePoly::one());
        assert_eq!(c.evaluate(), empty.arithmetic_tutte());
    }

    #[test]
    fn basis_sum_is_tutte_at_one_one() {
        // M3: bases {1,2},{1,3},{2,3} with multiplicities 2,1,1
        assert_eq!(basis_multiplicity_sum(&m3()), BigInt::from(4));
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(matches!(
            Realization::from_i64(2, &[], &[&[1, 0], &[1]]),
            Err(RealizationError::VectorLength { index: 1, .. })
        ));
        assert!(matches!(
            Realization::from_i64(2, &[&[1]], &[]),
            Err(RealizationError::VectorLength { what: "relations", .. })
        ));
    }
}
