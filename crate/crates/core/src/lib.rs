//! Exact arithmetic for realized Z-matroids: the arithmetic Tutte
//! polynomial, Gale duality, the poset of torsions and its face module.

pub mod export;
pub mod facering;
pub mod intlin;
pub mod io;
pub mod poly;
pub mod poset;
pub mod torsion_poset;
pub mod verify;
pub mod zmatroid;

pub use facering::{face_module_hilbert, verify_main_theorem, FVector, HVector, MainTheoremReport};
pub use intlin::{hermite_normal_form, smith_normal_form, IntMatrix, Lattice, QuotientStructure};
pub use io::{parse_realization, InputError, RealizationFile};
pub use poly::{BivariatePoly, HilbertSeries, LaurentPoly, UnivariatePoly};
pub use poset::{Poset, PosetError, SimplicialCheck};
pub use torsion_poset::{build_poset, Character, PosetElement, TorsionPoset};
pub use verify::{verify_realization, VerificationReport, VerifyOptions};
pub use zmatroid::{Realization, RealizationError, Subset};
