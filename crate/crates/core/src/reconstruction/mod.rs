//! Recovering a curve with modulus from its L-data: counts by character
//! inversion, points by the unique degree-one divisor criterion, and the
//! twist explaining a group correspondence.

pub mod canonical;
pub mod bundle;
pub mod counts;
pub mod matching;
pub mod twist;

pub use canonical::{verify_canonical_maps, CanonicalReport, CanonicalMap};
pub use bundle::{
    build_bundle, class_from_codes, psi_class_map, psi_index_table, BundleLevel, BundleView,
    Correspondence, LBundle, PsiLevel, Twist, BUNDLE_FORMAT,
};
pub use counts::{detect_points, invert_counts, CountTable};
pub use matching::{check_lfun_matching, LevelMatch, MatchReport};
pub use twist::{frobenius_range, search_twist, TwistOutcome, TwistWitness};
