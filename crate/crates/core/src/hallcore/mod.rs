//! The Ringel–Hall algebra of a quiver over `F_q` and its counting oracles.

mod counting;
mod element;

pub use counting::{
    ext_middle_count, ext_middle_counts, gamma_count, gamma_table, hall_number, hall_numbers, hom_dim,
    riedtmann_value, subrepresentations,
};
pub use element::{extended_multiply, rh_multiply, HallElement};
