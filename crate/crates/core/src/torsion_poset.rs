//! The poset of torsions of a realized Z-matroid.
//!
//! Elements are pairs `(A, ℓ)` with `A` independent and `ℓ` a character of
//! the torsion group `G_A = S_A / (relations + L_A)`, where `S_A` is the
//! saturation of `relations + L_A`. Characters are stored as `Q/Z` values on
//! the canonical basis of `S_A`. `(A ∪ b, h)` covers `(A, ℓ)` when `h`
//! restricted to `S_A ⊆ S_{A∪b}` equals `ℓ`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::intlin::{saturate, smith_normal_form, IntMatrix, Lattice};
use crate::poly::{BivariatePoly, LaurentPoly};
use crate::poset::{Poset, PosetError};
use crate::zmatroid::{ordinary_tutte_at_x_one, subsets_in_order, Realization, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("subset {0} is not independent")]
    Dependent(Subset),
    #[error("index {index} is not in subset {subset}")]
    NotInSubset { subset: Subset, index: usize },
    #[error("character does not vanish on the lattice it is defined modulo")]
    NotACharacter,
    #[error("character has {got} values but its domain has rank {expected}")]
    ValueCount { expected: usize, got: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Reduces a rational number into `[0, 1)`.
pub fn reduce_mod_one(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// A homomorphism `S / K -> Q/Z`, given by its values on the canonical
/// basis of the saturated lattice `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    domain: Lattice,
    values: Vec<BigRational>,
}

impl Character {
    /// Builds a character on `domain` and checks that it vanishes on `kernel`.
    pub fn new(domain: Lattice, values: Vec<BigRational>, kernel: &Lattice) -> Result<Self, TorsionError> {
        if values.len() != domain.rank() {
            return Err(TorsionError::ValueCount { expected: domain.rank(), got: values.len() });
        }
        let ch = Character { domain, values: values.iter().map(reduce_mod_one).collect() };
        for v in kernel.basis_vectors() {
            if !ch.evaluate(&v).is_some_and(|x| x.is_zero()) {
                return Err(TorsionError::NotACharacter);
            }
        }
        Ok(ch)
    }

    pub fn trivial(domain: Lattice) -> Self {
        let values = vec![BigRational::zero(); domain.rank()];
        Character { domain, values }
    }

    pub fn domain(&self) -> &Lattice {
        &self.domain
    }

    /// Values in `[0, 1)` on the canonical basis of the domain.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Value in `[0, 1)` on a vector of the domain, `None` if `v ∉ domain`.
    pub fn evaluate(&self, v: &[BigInt]) -> Option<BigRational> {
        let coords = self.domain.integer_coordinates(v)?;
        let sum = coords
            .iter()
            .zip(&self.values)
            .fold(BigRational::zero(), |acc, (c, x)| acc + x * BigRational::from_integer(c.clone()));
        Some(reduce_mod_one(&sum))
    }

    /// Values printed as reduced fractions `p/q`.
    pub fn value_strings(&self) -> Vec<String> {
        self.values.iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value_strings().join(","))
    }
}

/// One element `(A, ℓ)` of the poset of torsions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosetElement {
    pub subset: Subset,
    pub character: Character,
}

impl PosetElement {
    pub fn rank(&self) -> usize {
        self.subset.len()
    }
}

impl fmt::Display for PosetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.subset, self.character)
    }
}

/// `S_A`, the saturation of `relations + L_A`.
pub fn saturated_lattice(r: &Realization, a: Subset) -> Lattice {
    saturate(&r.subset_lattice(a))
}

/// All characters of `G_A`, sorted by their values.
pub fn enumerate_characters(r: &Realization, a: Subset) -> Result<Vec<Character>, TorsionError> {
    if !r.profile(a).independent {
        return Err(TorsionError::Dependent(a));
    }
    Ok(characters_of_quotient(&r.subset_lattice(a)))
}

/// Characters of `saturate(kernel) / kernel`.
pub(crate) fn characters_of_quotient(kernel: &Lattice) -> Vec<Character> {
    let domain = saturate(kernel);
    let k = domain.rank();
    if k == 0 {
        return vec![Character::trivial(domain)];
    }
    // kernel generators in coordinates of the domain basis: a full-rank k×k matrix
    let coords: Vec<Vec<BigInt>> = kernel
        .basis_vectors()
        .iter()
        .map(|v| domain.integer_coordinates(v).expect("kernel lies in its saturation"))
        .collect();
    let n = IntMatrix::from_rows(k, &coords).expect("rows have k coordinates");
    let snf = smith_normal_form(&n);
    debug_assert_eq!(snf.rank(), k);
    // U N V = D, so c = V (a_i / d_i) satisfies N c ∈ Z^k
    let d = &snf.invariants;
    let total: usize = d.iter().map(|x| usize::try_from(x).expect("group order fits in memory")).product();
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; k];
    for _ in 0..total {
        let scaled: Vec<BigRational> = digits
            .iter()
            .zip(d)
            .map(|(&a, di)| BigRational::new(BigInt::from(a), di.clone()))
            .collect();
        let values = (0..k)
            .map(|i| {
                (0..k).fold(BigRational::zero(), |acc, j| {
                    acc + BigRational::from_integer(snf.v[(i, j)].clone()) * &scaled[j]
                })
            })
            .map(|q| reduce_mod_one(&q))
            .collect();
        out.push(Character { domain: domain.clone(), values });
        for (digit, di) in digits.iter_mut().zip(d).rev() {
            *digit += 1;
            if BigInt::from(*digit) < *di {
                break;
            }
            *digit = 0;
        }
    }
    out.sort_by(|a, b| a.values.cmp(&b.values));
    out
}

/// Restriction of the character of `from` to `S_{A ∖ b}`.
pub fn restrict_character(r: &Realization, from: &PosetElement, drop: usize) -> Result<Character, TorsionError> {
    if !from.subset.contains(drop) {
        return Err(TorsionError::NotInSubset { subset: from.subset, index: drop });
    }
    let target = saturated_lattice(r, from.subset.without(drop));
    let values = target
        .basis_vectors()
        .iter()
        .map(|v| from.character.evaluate(v).expect("S_A is contained in S_(A∪b)"))
        .collect();
    Ok(Character { domain: target, values })
}

/// `Gr(M)` together with its element data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPoset {
    elements: Vec<PosetElement>,
    poset: Poset,
}

impl TorsionPoset {
    /// Assembles a poset from explicit elements and `(child, parent)` covers.
    pub fn from_parts(elements: Vec<PosetElement>, covers: Vec<(usize, usize)>) -> Result<Self, TorsionError> {
        let ranks = elements.iter().map(PosetElement::rank).collect();
        let poset = Poset::new(ranks, covers)?;
        Ok(TorsionPoset { elements, poset })
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &PosetElement {
        &self.elements[id]
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        self.poset.covers()
    }

    /// Rank-zero elements `(∅, c)`.
    pub fn bottoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].subset.is_empty()).collect()
    }

    /// Index of `(∅, e)`.
    pub fn trivial_bottom(&self) -> Option<usize> {
        self.bottoms().into_iter().find(|&i| self.elements[i].character.is_trivial())
    }

    pub fn find(&self, subset: Subset, character: &Character) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.subset == subset && &e.character == character)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.poset.components()
    }

    pub fn meet(&self, a: usize, b: usize) -> Result<usize, PosetError> {
        self.poset.meet(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> Vec<usize> {
        self.poset.join(a, b)
    }

    /// Elements `>= e`, as a sub-poset with the index mapping.
    pub fn link(&self, e: usize) -> (Poset, Vec<usize>) {
        self.poset.link(e)
    }

    /// Every lower interval `[bottom, (A, h)]` maps bijectively onto the
    /// subsets of `A` via `(B, ℓ) ↦ B`.
    pub fn lower_intervals_match_subsets(&self) -> bool {
        (0..self.len()).all(|x| {
            let top = self.elements[x].subset;
            let subsets: Vec<Subset> = self.poset.down_set(x).map(|y| self.elements[y].subset).collect();
            let distinct: BTreeSet<u64> = subsets.iter().map(|s| s.0).collect();
            subsets.iter().all(|s| s.is_subset_of(top))
                && distinct.len() == subsets.len()
                && subsets.len() == 1usize << top.len()
        })
    }
}

/// Builds `Gr(M)`. Elements are ordered by rank, subset bitset and then
/// character values; covers are found by restricting every element along
/// every droppable index.
pub fn build_poset(r: &Realization) -> TorsionPoset {
    let mut elements = Vec::new();
    for a in subsets_in_order(r.ground_set_size()) {
        if !r.profile(a).independent {
            continue;
        }
        for character in characters_of_quotient(&r.subset_lattice(a)) {
            elements.push(PosetElement { subset: a, character });
        }
    }
    let lookup: std::collections::HashMap<&PosetElement, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut covers = Vec::new();
    for (parent, e) in elements.iter().enumerate() {
        for b in e.subset.indices() {
            let character = restrict_character(r, e, b).expect("b is in the subset");
            let child = PosetElement { subset: e.subset.without(b), character };
            let &child_id = lookup.get(&child).expect("restriction lands on an element of rank one less");
            covers.push((child_id, parent));
        }
    }
    TorsionPoset::from_parts(elements, covers).expect("covers drop exactly one index")
}

/// Distinct characters of the full-rank saturated lattice arising from
/// elements `(A, ℓ)` with `A` a basis: the zero-dimensional layers.
pub fn rank_zero_points(r: &Realization) -> Vec<Character> {
    let profiles = r.profiles();
    let rank = profiles.last().map_or(0, |p| p.cork);
    let mut points: Vec<Character> = Vec::new();
    for p in profiles.iter().filter(|p| p.independent && p.cork == rank) {
        for ch in characters_of_quotient(&r.subset_lattice(p.subset)) {
            if !points.contains(&ch) {
                points.push(ch);
            }
        }
    }
    points.sort_by(|a, b| a.values.cmp(&b.values));
    points
}

#[derive(Clone, Debug)]
pub struct PointDecomposition {
    /// `T_M(1, y)`, with `y` written as `t`.
    pub tutte_at_x_one: LaurentPoly,
    /// Each point, the generators vanishing on it, and the ordinary
    /// `T(1, y)` of that sublist.
    pub points: Vec<(Character, Subset, LaurentPoly)>,
    pub sum: LaurentPoly,
    pub holds: bool,
}

/// Checks `T_M(1, y) = Σ_φ T_{M_φ}(1, y)` over the zero-dimensional points
/// `φ`, where `M_φ` is the rational matroid on `{ j : φ(z_j) = 0 }`.
pub fn verify_point_decomposition(r: &Realization) -> PointDecomposition {
    let one = LaurentPoly::one();
    let y = LaurentPoly::t();
    let tutte_at_x_one = r.arithmetic_tutte().substitute_xy(&one, &y);
    let mut points = Vec::new();
    let mut sum = LaurentPoly::zero();
    for phi in rank_zero_points(r) {
        let vanishing = Subset::from_indices((0..r.ground_set_size()).filter(|&j| {
            phi.evaluate(&r.generators()[j]).is_some_and(|v| v.is_zero())
        }));
        let local: BivariatePoly = ordinary_tutte_at_x_one(r, vanishing);
        let local = local.substitute_xy(&one, &y);
        sum = &sum + &local;
        points.push((phi, vanishing, local));
    }
    let holds = sum == tutte_at_x_one;
    PointDecomposition { tutte_at_x_one, points, sum, holds }
}

/// Reduced fraction helper used by tests and serializers.
pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `1/2`-style rendering of an integer vector's character value; `None` if
/// the vector is outside the domain.
pub fn format_value(ch: &Character, v: &[BigInt]) -> Option<String> {
    ch.evaluate(v).map(|q| {
        if q.denom().is_one() {
            q.numer().to_string()
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }
    })
}
