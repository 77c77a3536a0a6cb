//! Shuffle algebras of the curve: symmetric classes on `C^d` with the
//! kernel-weighted symmetrized product.

mod element;
mod genus;
mod kernel;
mod pointwise;
mod product;
mod rn;

pub use element::{ShuffleElement, ShuffleElementJson};
pub use genus::{bracket, generator, verify_genus_relation, GeneratorConvention, GenusRelationReport};
pub use kernel::{block_pairs, cumulative, kernel_block, Kernel, KernelFn};
pub use pointwise::{specialize, ProductTree};
pub use product::{shuffle_integrand, shuffle_product, shuffles, subsets, symmetrize};
pub use rn::{rn_factor, rn_inverse, rn_map};

#[cfg(test)]
mod tests;
