//! The β=1 construction: expanders, walk products and their embedding.

mod embed;
mod expander;
mod heuristic;
mod params;
mod walk;

pub use embed::{embed_beta1, embed_beta1_with, Beta1Options, GAP_A, GAP_B, GAP_EPSILON};
pub(crate) use embed::{closed_form_bounds, gap_for, params_from_report, walks_within};
pub use expander::{
    ramanujan_bound, random_regular_expander, transition_spectrum, ExpanderCertificate,
    LAMBDA_TOLERANCE,
};
pub use heuristic::degree_one_heuristic;
pub use params::{
    alon_interval, choose_k, choose_params_beta1, gap_ratio, gap_record, layered_is_bound,
    low_interval_bound, Beta1Params, GapRatio, KWindow, LayeredBound,
};
pub(crate) use walk::good_walk_product;
pub use walk::{enumerate_walks, walk_count, walk_product, WalkProduct, DEFAULT_WALK_CAP};
