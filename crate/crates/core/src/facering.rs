//! f- and h-vectors, the face ideal, and Hilbert series of the face ring of a
//! simplicial poset and of the face module of a realization.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{normalize_series, HilbertSeries, LaurentPoly, SeriesError, UnivariatePoly};
use crate::poset::{Poset, PosetError, SimplicialCheck};
use crate::torsion_poset::build_poset;
use crate::zmatroid::{Realization, RealizationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceRingError {
    #[error("component is not simplicial: interval [{bottom}, {top}] is not boolean")]
    NotSimplicial { bottom: usize, top: usize },
    #[error("chain sum is not of the form h(t) / (1 - t)^r")]
    ChainSumNotExact,
    #[error("h-vector series {h_series} disagrees with chain enumeration {chain_series}")]
    OracleMismatch { h_series: String, chain_series: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `(f_{-1}, f_0, ..., f_{r-1})`, where `f_{i-1}` counts elements of rank `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector(pub Vec<BigInt>);

impl FVector {
    pub fn from_i64(entries: &[i64]) -> Self {
        FVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    /// `r`, one less than the number of entries.
    pub fn rank(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }
}

/// `(h_0, ..., h_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HVector(pub Vec<BigInt>);

impl HVector {
    pub fn from_i64(entries: &[i64]) -> Self {
        HVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|h| h.sign() != num_bigint::Sign::Minus)
    }

    /// `Σ h_i t^(r-i)`.
    pub fn reversed_polynomial(&self) -> UnivariatePoly {
        UnivariatePoly::new(self.0.iter().rev().cloned().collect())
    }
}

fn write_vector(f: &mut fmt::Formatter<'_>, v: &[BigInt]) -> fmt::Result {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    write!(f, "({})", parts.join(","))
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vector(f, &self.0)
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vector(f, &self.0)
    }
}

/// Element counts per rank of one component.
pub fn f_vector(p: &Poset, component: &[usize]) -> FVector {
    FVector(p.rank_counts(component).into_iter().map(BigInt::from).collect())
}

/// Solves `Σ f_{i-1} (t-1)^(r-i) = Σ h_i t^(r-i)`.
pub fn h_from_f(f: &FVector) -> HVector {
    let r = f.rank();
    let t_minus_one = UnivariatePoly::from_i64(&[-1, 1]);
    let mut acc = UnivariatePoly::zero();
    for (i, fi) in f.0.iter().enumerate() {
        acc = &acc + &t_minus_one.pow((r - i) as u32).scale(fi);
    }
    HVector((0..=r).map(|i| acc.coeff(r - i)).collect())
}

/// Inverse of [`h_from_f`]: substitutes `t = s + 1` and reads off powers of `s`.
pub fn f_from_h(h: &HVector) -> FVector {
    let r = h.rank();
    let s_plus_one = UnivariatePoly::from_i64(&[1, 1]);
    let mut acc = UnivariatePoly::zero();
    for (i, hi) in h.0.iter().enumerate() {
        acc = &acc + &s_plus_one.pow((r - i) as u32).scale(hi);
    }
    FVector((0..=r).map(|i| acc.coeff(r - i)).collect())
}

/// `(h_0 + h_1 t + ... + h_r t^r) / (1 - t)^r` in canonical form.
pub fn hilbert_from_h(h: &HVector) -> HilbertSeries {
    HilbertSeries::new(UnivariatePoly::new(h.0.clone()), h.rank())
}

fn require_simplicial(p: &Poset, component: &[usize]) -> Result<usize, FaceRingError> {
    match p.check_simplicial(component)? {
        SimplicialCheck::Simplicial => Ok(p.bottom_of(component)?),
        SimplicialCheck::NotSimplicial { bottom, top } => Err(FaceRingError::NotSimplicial { bottom, top }),
    }
}

/// `Π_{j=lo..=hi} (1 - t^j)`, empty product `1`.
fn one_minus_powers(lo: usize, hi: usize) -> UnivariatePoly {
    (lo.max(1)..=hi).fold(UnivariatePoly::one(), |acc, j| &acc * &UnivariatePoly::one_minus_t_pow(j))
}

/// Hilbert series of the face ring by counting its monomial basis: a sum
/// over chains `bottom < σ_1 < ... < σ_k` of `Π t^rk(σ_i) / (1 - t^rk(σ_i))`.
pub fn hilbert_via_chains(p: &Poset, component: &[usize]) -> Result<HilbertSeries, FaceRingError> {
    let bottom = require_simplicial(p, component)?;
    let base = p.rank(bottom);
    let rel = |x: usize| p.rank(x) - base;
    let r = component.iter().map(|&x| rel(x)).max().unwrap_or(0);

    let mut order: Vec<usize> = component.iter().copied().filter(|&x| x != bottom).collect();
    order.sort_by_key(|&x| (rel(x), x));
    // num[x] / Π_{j<=rk x}(1 - t^j) is the sum over chains ending at x
    let mut num: Vec<Option<UnivariatePoly>> = vec![None; p.len()];
    for &x in &order {
        let k = rel(x);
        let mut inner = one_minus_powers(1, k - 1);
        for y in p.down_set(x) {
            if y == x || y == bottom {
                continue;
            }
            let ny = num[y].as_ref().expect("lower elements come first");
            inner = &inner + &(ny * &one_minus_powers(rel(y) + 1, k - 1));
        }
        num[x] = Some(&UnivariatePoly::monomial(1, k) * &inner);
    }
    let mut total = one_minus_powers(1, r);
    for &x in &order {
        let nx = num[x].as_ref().expect("filled above");
        total = &total + &(nx * &one_minus_powers(rel(x) + 1, r));
    }
    // Π_{k=1..r}(1 - t^k) = (1 - t)^r Π_{k=2..r} [k]_t
    let mut reduced = total;
    for k in 2..=r {
        let q_k = UnivariatePoly::new(vec![BigInt::from(1); k]);
        reduced = reduced.div_exact(&q_k).ok_or(FaceRingError::ChainSumNotExact)?;
    }
    Ok(normalize_series(&LaurentPoly::from_poly(&reduced), r)?)
}

/// One generator of the face ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceRelation {
    /// `x_bottom - 1`
    Bottom(usize),
    /// `x_σ x_τ - x_{σ∧τ} (Σ_{γ ∈ σ∨τ} x_γ)`; the meet factor is `None` when
    /// it is the bottom (where `x = 1`) or when the join is empty.
    Product { sigma: usize, tau: usize, meet: Option<usize>, join: Vec<usize> },
}

impl fmt::Display for FaceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceRelation::Bottom(b) => write!(f, "x{b} - 1"),
            FaceRelation::Product { sigma, tau, meet, join } => {
                write!(f, "x{sigma}*x{tau}")?;
                if join.is_empty() {
                    return Ok(());
                }
                let sum: Vec<String> = join.iter().map(|g| format!("x{g}")).collect();
                let sum = if sum.len() == 1 { sum[0].clone() } else { format!("({})", sum.join(" + ")) };
                match meet {
                    Some(m) => write!(f, " - x{m}*{sum}"),
                    None => write!(f, " - {sum}"),
                }
            }
        }
    }
}

/// Variables `(element id, degree)` and generators of the face ideal of one
/// simplicial component. Comparable pairs give tautologies and are omitted;
/// every incomparable pair contributes one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceIdealPresentation {
    pub variables: Vec<(usize, usize)>,
    pub generators: Vec<FaceRelation>,
}

impl FaceIdealPresentation {
    /// Plain-text form: a `variables` block with `x<id> <degree>` lines and a
    /// `generators` block with one polynomial per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("variables\n");
        for (id, deg) in &self.variables {
            out.push_str(&format!("x{id} {deg}\n"));
        }
        out.push_str("generators\n");
        for g in &self.generators {
            out.push_str(&format!("{g}\n"));
        }
        out
    }
}

pub fn face_ideal(p: &Poset, component: &[usize]) -> Result<FaceIdealPresentation, FaceRingError> {
    let bottom = require_simplicial(p, component)?;
    let base = p.rank(bottom);
    let mut ids = component.to_vec();
    ids.sort_unstable();
    let variables = ids.iter().map(|&x| (x, p.rank(x) - base)).collect();
    let mut generators = vec![FaceRelation::Bottom(bottom)];
    for (i, &sigma) in ids.iter().enumerate() {
        for &tau in &ids[i + 1..] {
            if p.comparable(sigma, tau) {
                continue;
            }
            let mut join = p.join(sigma, tau);
            join.sort_unstable();
            let meet = if join.is_empty() {
                None
            } else {
                // a common upper bound makes the lower interval boolean, so the meet is unique
                Some(p.meet(sigma, tau)?).filter(|&m| m != bottom)
            };
            generators.push(FaceRelation::Product { sigma, tau, meet, join });
        }
    }
    Ok(FaceIdealPresentation { variables, generators })
}

/// Hilbert series of the face ring of one component via its h-vector,
/// checked against chain enumeration.
pub fn component_hilbert(p: &Poset, component: &[usize]) -> Result<HilbertSeries, FaceRingError> {
    let via_chains = hilbert_via_chains(p, component)?;
    let via_h = hilbert_from_h(&h_from_f(&f_vector(p, component)));
    if via_chains != via_h {
        return Err(FaceRingError::OracleMismatch {
            h_series: via_h.to_string(),
            chain_series: via_chains.to_string(),
        });
    }
    Ok(via_h)
}

/// `m(∅)` copies of the face ring of one component of `Gr(M')`, where `M'`
/// is the realization modulo its initial torsion.
pub fn face_module_hilbert(r: &Realization) -> Result<HilbertSeries, FaceRingError> {
    let reduced = r.modulo_initial_torsion();
    let gr = build_poset(&reduced);
    let bottom = gr.trivial_bottom().expect("the trivial character always exists");
    let component: Vec<usize> = gr
        .components()
        .into_iter()
        .find(|c| c.contains(&bottom))
        .expect("every element lies in a component");
    Ok(component_hilbert(gr.poset(), &component)?.scale(&r.initial_multiplicity()))
}

/// `t^r T_M(1/t, 1) / (1 - t)^r` in canonical form.
pub fn tutte_side(r: &Realization) -> Result<HilbertSeries, FaceRingError> {
    let rank = r.rank();
    let sub = r.arithmetic_tutte().substitute_xy(&LaurentPoly::t_inv(), &LaurentPoly::one());
    Ok(normalize_series(&sub.shift(rank as i64), rank)?)
}

/// `t^r T_{M*}(1, 1/t) / (1 - t)^r`, computed from the explicit dual.
pub fn tutte_side_via_dual(r: &Realization) -> Result<HilbertSeries, FaceRingError> {
    let rank = r.rank();
    let dual = r.dual()?;
    let sub = dual.arithmetic_tutte().substitute_xy(&LaurentPoly::one(), &LaurentPoly::t_inv());
    Ok(normalize_series(&sub.shift(rank as i64), rank)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTheoremReport {
    pub face_module: HilbertSeries,
    pub tutte: HilbertSeries,
    /// Present when `M(∅)` is free, so the dual realization exists.
    pub tutte_via_dual: Option<HilbertSeries>,
    pub holds: bool,
}

impl fmt::Display for MainTheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "face module {} ; tutte {}", self.face_module, self.tutte)?;
        if let Some(d) = &self.tutte_via_dual {
            write!(f, " ; dual {d}")?;
        }
        Ok(())
    }
}

/// Compares the face module series with `t^r T_M(1/t, 1) / (1 - t)^r` and,
/// when the dual exists, with `t^r T_{M*}(1, 1/t) / (1 - t)^r`.
pub fn verify_main_theorem(r: &Realization) -> Result<MainTheoremReport, FaceRingError> {
    let face_module = face_module_hilbert(r)?;
    let tutte = tutte_side(r)?;
    let tutte_via_dual = if r.initial_structure().is_free() { Some(tutte_side_via_dual(r)?) } else { None };
    let holds = face_module == tutte && tutte_via_dual.as_ref().is_none_or(|d| *d == tutte);
    Ok(MainTheoremReport { face_module, tutte, tutte_via_dual, holds })
}
