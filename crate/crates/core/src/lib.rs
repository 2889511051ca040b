//! Certificates for largeness of subsets of the positive integers.
//!
//! Sets are described by [`SetExpr`] values and evaluated either pointwise
//! ([`setcalc::member`]) or in bulk on a finite window ([`setcalc::window`]).
//! Expressions built only from finite sets and residue classes have an
//! eventually periodic normal form, and on that tier the certifiers in
//! [`certify`] decide syndeticity, thickness and piecewise syndeticity
//! exactly. Everything else is checked on windows and the verdict says so.
//!
//! ```
//! use lsc::{certify, SetExpr, Verdict};
//!
//! let odd_multiples_of_three = SetExpr::inter([SetExpr::residue(0, 3)?, SetExpr::residue(1, 2)?]);
//! let verdict = certify::syndetic_gap(&odd_multiples_of_three, 1000)?;
//! assert!(matches!(verdict, Verdict::Certified(_)));
//! # Ok::<(), lsc::Error>(())
//! ```

pub mod certify;
pub mod cli;
pub mod constructions;
pub mod dsl;
mod error;
pub mod schedule;
pub mod setcalc;
pub mod symbolic;
pub mod window;

pub use certify::{Certificate, SearchConfig, Verdict};
pub use error::{Error, Result};
pub use schedule::{LengthMap, ScheduleSpec, SeparatedLayout, Spacing};
pub use setcalc::{PeriodicForm, ReturnSpec, SetExpr};
pub use symbolic::{IndexBase, Word, WordSpec};
pub use window::{Interval, Window};
