//! Reusable constructive lemmas: the factor-group lift, grid and abelian
//! path builders, the standard alteration, connected sums and their ladders,
//! and the two classical lifting lemmas. Every operation that returns a word
//! re-verifies it before returning.

pub mod abelian;
pub mod alteration;
pub mod connsum;
pub mod double_edge;
pub mod durnberger;
pub mod fgl;
pub mod grid;
pub mod normal_easy;
pub mod usual;

pub use abelian::{abelian_ham_cycle, abelian_ham_path, path_with_product};
pub use alteration::{standard_alteration, AlterVariant, AlterationSpec};
pub use connsum::{connected_sum, EdgePick, Ladder};
pub use double_edge::double_edge;
pub use durnberger::durnberger_commuting;
pub use fgl::{fgl_lift, lift_best};
pub use grid::{grid_ham_cycle, grid_ham_path};
pub use normal_easy::normal_easy;
pub use usual::{usual_conn_sum, usual_conn_sum_cor, BarCtx};
