//! Data files shipped with the crate. They are inputs and regression
//! references only; Ext itself is always recomputed.

/// Literature Adams differentials through stem 20.
pub const ADAMS_DIFFERENTIALS_FILE: &str = "adams_differentials.txt";
pub const ADAMS_DIFFERENTIALS: &str = include_str!("../data/adams_differentials.txt");

/// Ext chart for `s <= 12`, `t <= 32`, kept to catch regressions in the
/// resolution.
pub const GOLDEN_EXT_FILE: &str = "ext_s12_t32.tsv";
pub const GOLDEN_EXT: &str = include_str!("../data/ext_s12_t32.tsv");

/// Window of [`GOLDEN_EXT`].
pub const GOLDEN_MAX_S: u32 = 12;
pub const GOLDEN_MAX_T: u32 = 32;

/// Bundled contents by file name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        ADAMS_DIFFERENTIALS_FILE => Some(ADAMS_DIFFERENTIALS),
        GOLDEN_EXT_FILE => Some(GOLDEN_EXT),
        _ => None,
    }
}
