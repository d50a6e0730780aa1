//! Free points of projective space over finite-field extensions.
//!
//! A point `P` of `P^n(F_{q^m})`, `m = C(n+d, n)`, is *free* when it lies on
//! no degree-`d` hypersurface defined over `F_q`; equivalently the `m`
//! monomial values at `P` are linearly independent over `F_q`. This crate
//! provides the arithmetic needed to decide that (field towers, forms,
//! elimination), searches for free points, exhaustive reducibility censuses
//! of hypersurfaces, the maximal all-reducible / all-irreducible linear
//! systems, and an exact checker for the inequalities bounding the
//! proportion of geometrically reducible hypersurfaces.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats, the CLI
//! and thread-level parallelism live in the `freepoint` companion crate.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod factor;
pub mod field;
pub mod forms;
pub mod linalg;
pub mod linsys;
pub mod orbit;
pub mod poly;
pub mod rng;
pub mod search;
pub mod table;
pub mod tower;

pub use error::{Error, Result};
pub use field::FiniteField;
pub use forms::{Form, MonomialIndex, ParamSet, ProjectivePoint};
pub use table::SmallField;
pub use tower::{FieldElement, FieldTower, LevelView};

/// Exact binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    use num_traits::One;
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient that must fit a machine word.
pub fn binomial_usize(n: usize, k: usize) -> Result<usize> {
    use num_traits::ToPrimitive;
    binomial(n as u64, k as u64)
        .to_usize()
        .ok_or(Error::RangeError("binomial coefficient exceeds usize"))
}
