//! Exact arithmetic: rationals, polynomials, binary forms, real roots on ℙ¹(ℝ).

pub mod form;
pub mod poly;
pub mod rational;
pub mod roots;

pub use form::{gcd_squarefree, BinForm};
pub use poly::{IntPoly, Poly, SturmChain};
pub use rational::{format_rational, int, parse_rational, rat, simplest_between, Rational};
pub use roots::{
    cmp_circle, isolate_real_roots, sign_at, valuation_at, AlgebraicPoint, ArcSpan, CircleOrder,
    CirclePoint,
};
