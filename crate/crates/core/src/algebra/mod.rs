//! Exact commutative algebra over Q: polynomials, monomial orders,
//! Buchberger, and the ideal operations built on it.

pub mod factor;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod order;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod ring;

pub use factor::{factor, gcd, Factorization};
pub use groebner::{buchberger, is_groebner_basis, leading_monomial, leading_term, normal_form};
pub use ideal::{
    dimension, eliminate, eliminate_to_subring, ideal_equal_radical, intersect,
    multigraded_hilbert, radical_contains, saturate, saturate_by_variable_ideal, saturate_var,
    Ideal,
};
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use rational::Rational;
pub use ring::{Monomial, PolyRing, RingRef, VarTag, Variable};
