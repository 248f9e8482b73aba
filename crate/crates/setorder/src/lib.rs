//! Exact scalarization and set order relations for polyhedral set
//! optimization.
//!
//! Everything here runs over arbitrary-precision rationals: cones and sets
//! are polyhedral data, scalarization values are computed by exact linear
//! programming, and order relations between sets (and between finite
//! unions of sets) are decided with certificates rather than tolerances.
//! On top of that sits a small robustness layer for optimization under
//! uncertainty, where feasibility and minimality of decisions are checked
//! across finitely many scenarios.
//!
//! The crate splits into:
//!
//! * [`numeric`]: rationals, vectors, and the extended real line;
//! * [`cones`]: polyhedral ordering cones in facet and generator form;
//! * [`sets`]: polyhedral sets, finite families, and exact 2-d geometry;
//! * [`lp`]: certified exact simplex;
//! * [`scalarize`]: directional scalarization of points, sets, and pairs;
//! * [`relations`]: set order relations and their scalar characterizations;
//! * [`usop`]: robust feasibility and minimality under uncertainty;
//! * [`oracle`]: slow independent re-computations used for verification;
//! * [`papersuite`]: named worked examples wired into the CLI;
//! * [`schema`] and [`cli`]: JSON formats and the command-line front end.

pub mod numeric;

pub(crate) mod linalg;

pub mod cones;
pub mod lp;
pub mod sets;
