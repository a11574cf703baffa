//! Anchored voting on the probability simplex: report menus and
//! nearest-report voting, the anchor transform and its menu-side equivalent,
//! level-set measures under report densities, win-probability bounds from
//! binomial tails, exact winner distributions, and the welfare effect of
//! anchoring.
//!
//! Entry points by task:
//! - menus and voting: [`simplex::ReportMenu`], [`simplex::nearest_report`],
//!   [`simplex::anchor_menu`]
//! - report densities and cell measures: [`density::DensityModel`],
//!   [`density::level_set_measure_auto`]
//! - win-probability bounds: [`bounds::rule_bounds`],
//!   [`bounds::tightening_report`]
//! - winner distributions and welfare: [`welfare::outcome_distribution`],
//!   [`welfare::expected_delta_sw`]
//! - invariant battery: [`checks::run_all`]

pub mod bounds;
pub mod checks;
pub mod density;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod rules;
pub mod simplex;
pub mod welfare;

pub use error::{Error, Result};
pub use simplex::{AnchorParams, MenuKind, ReportMenu, SimplexPoint};
