//! Local models and dimension bookkeeping for Prym–Hitchin loci on
//! double covers of curves.
//!
//! A curve `X` with an involution maps to its quotient `Y`, and Higgs
//! bundles on `X` that interact with the involution sweep out
//! distinguished loci inside the Hitchin fibration. This crate works out
//! the picture in exact arithmetic, one chart at a time:
//!
//! - [`algebra`] — rationals, polynomial germs in a chart coordinate,
//!   bivariate germs, and polynomial matrices, with exact
//!   characteristic-polynomial, Pfaffian, square-root, and gcd kernels;
//! - [`cover`] — cover combinatorics `(g_Y, n)` and equivariant section
//!   counts for either linearization at the ramification points;
//! - [`spectral`] — germs of spectral curves: coefficient parity,
//!   fiber smoothness with certified witnesses, fixed points of the
//!   lifted involution, membership in the distinguished coefficient
//!   spaces, and genus ledgers for the associated covers;
//! - [`higgs`] — symmetric, alternating, and typed equivariance
//!   structures on local Higgs fields, the parity they force on the
//!   Hitchin components, Pfaffian certificates, and vanishing orders;
//! - [`moduli`] — the dimension dictionary for every locus in play,
//!   invariant-type combinatorics, two-torsion orbit counts, the
//!   component oracle, and sweeps that check the dimension identities
//!   against each other across parameter grids;
//! - [`samplers`] — seeded generators feeding the property suites.
//!
//! All computation is exact over the rationals; nothing here floats.
//! Wherever two routes to the same quantity exist (determinant versus
//! Pfaffian square, closed genus formula versus Hurwitz count, dimension
//! formulas against each other) the crate computes both and compares.

pub mod algebra;
pub mod cover;
pub mod higgs;
pub mod moduli;
pub mod samplers;
pub mod spectral;
