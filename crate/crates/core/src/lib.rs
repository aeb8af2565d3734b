//! Link budgets for communications relayed by reconfigurable smart surfaces
//! (RSS) mounted on buildings, UAVs, high-altitude platforms (HAPS) and LEO
//! satellites.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: collinear placement geometry, reflector counts and optimal
//!   placements.
//! * [`reflection`]: closed-form received power under the specular and
//!   scattering paradigms, plus a per-reflector summation oracle.
//! * [`channel`]: standards-derived path-loss models with shadowing.
//! * [`metrics`]: received power, noise, rate, outage and coverage radius.
//! * [`scenario`]: the JSON scenario format.
//! * [`budget`]: evaluates a scenario end to end.
//! * [`sweep`] and [`figures`]: parameter sweeps and CSV output.

pub mod budget;
pub mod channel;
pub mod cli;
pub mod error;
pub mod figures;
pub mod geometry;
pub mod metrics;
pub mod reflection;
pub mod scenario;
pub mod sweep;
pub mod units;

pub use budget::{evaluate, BudgetReport, EvalOptions};
pub use error::{Error, Result};
pub use metrics::{Feasibility, LinkBudgetResult};
pub use scenario::{load_scenario, Scenario};
