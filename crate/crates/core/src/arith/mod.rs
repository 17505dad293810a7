//! Exact arithmetic: ℚ, ℚ(√d), 𝔽_p, 𝔽_{p²} and polynomials over them.

pub mod finite_field;
pub mod poly;
pub mod quadratic;
pub mod rational;
pub mod roots;

pub use finite_field::{Fp, Fp2};
pub use poly::UniPoly;
pub use quadratic::QuadExtElem;
pub use rational::{height, int, is_square, parse_rational, rat, squarefree_part};
pub use roots::rational_roots;
