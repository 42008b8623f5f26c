//! The Iwahori-Hecke algebra, its Kazhdan-Lusztig basis and structure
//! constants.

mod algebra;
mod cache;
mod htable;
mod kl;

pub use algebra::{HeckeAlgebra, HeckeElement};
pub use cache::{CachedTables, CACHE_FORMAT};
pub use htable::{left_c_table, HTable};
pub use kl::{KlStep, KlTable};
