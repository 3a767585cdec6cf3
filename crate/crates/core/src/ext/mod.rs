//! Ext over the Steenrod algebra: minimal resolutions, the cobar oracle,
//! checkpoints, and the isotropic regradings.

pub mod checkpoint;
pub mod cobar;
pub mod regrade;
pub mod resolution;

pub use checkpoint::CHECKPOINT_HEADER;
pub use cobar::cobar_ext;
pub use regrade::{crho_chart, ext_from_crho, trigraded_ext_g, vanishing_check};
pub use resolution::{label_position, minimal_resolution, Budget, Generator, Resolution};
