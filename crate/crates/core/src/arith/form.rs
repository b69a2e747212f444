//! Homogeneous binary forms `Σ c_i u^i v^(d-i)` with rational coefficients.
//!
//! The affine chart is `v = 1` (variable `u`), the chart at infinity is
//! `u = 1` (variable `w = v/u`). The point `(1:0)` is a root of a form iff
//! `v` divides it.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::{format_rational, Rational};
use crate::error::ArithError;

/// Binary form of fixed degree `d`; entry `i` of `coeffs` multiplies `u^i v^(d-i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinForm {
    coeffs: Vec<Rational>,
}

impl BinForm {
    /// `coeffs.len()` must be `d + 1 ≥ 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a form of degree d has d+1 coefficients");
        BinForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinForm::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinForm { coeffs: vec![Rational::zero(); degree + 1] }
    }

    /// `c · v^degree`
    pub fn constant(c: Rational, degree: usize) -> Self {
        let mut f = BinForm::zero(degree);
        f.coeffs[0] = c;
        f
    }

    /// `u^i v^(d-i)`
    pub fn monomial(i: usize, degree: usize) -> Self {
        let mut f = BinForm::zero(degree);
        f.coeffs[i] = Rational::one();
        f
    }

    /// `u - a v`
    pub fn linear(a: &Rational) -> Self {
        BinForm::new(vec![-a.clone(), Rational::one()])
    }

    /// Homogenizes an affine polynomial to the given degree.
    pub fn from_affine(p: &Poly, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        for (i, c) in p.coeffs().iter().enumerate() {
            assert!(i <= degree, "affine degree exceeds form degree");
            coeffs[i] = c.clone();
        }
        BinForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Dehomogenization at `v = 1`.
    pub fn affine(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// Dehomogenization at `u = 1`, as a polynomial in `w = v/u`.
    pub fn infinity_chart(&self) -> Poly {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Exponent of `v` dividing the form (valuation at `(1:0)`); `None` for zero.
    pub fn v_exponent(&self) -> Option<usize> {
        self.affine().degree().map(|a| self.degree() - a)
    }

    /// Value at `(u, v)`.
    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        let d = self.degree();
        let mut upow = vec![Rational::one(); d + 1];
        let mut vpow = vec![Rational::one(); d + 1];
        for i in 1..=d {
            upow[i] = &upow[i - 1] * u;
            vpow[i] = &vpow[i - 1] * v;
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &upow[i] * &vpow[d - i])
            .sum()
    }

    /// `form_arith(add)`: degrees must agree.
    pub fn add(&self, other: &BinForm) -> Result<BinForm, ArithError> {
        if self.degree() != other.degree() {
            return Err(ArithError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(BinForm::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &BinForm) -> Result<BinForm, ArithError> {
        self.add(&other.neg())
    }

    /// `form_arith(mul)`: degree of the product is the sum of degrees.
    pub fn mul(&self, other: &BinForm) -> BinForm {
        let mut out = vec![Rational::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinForm { coeffs: out }
    }

    pub fn neg(&self) -> BinForm {
        BinForm { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, s: &Rational) -> BinForm {
        BinForm { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn pow(&self, n: u32) -> BinForm {
        let mut acc = BinForm::constant(Rational::one(), 0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d` if `d` divides `self` as forms.
    pub fn div_exact(&self, d: &BinForm) -> Option<BinForm> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return (self.degree() >= d.degree()).then(|| BinForm::zero(self.degree() - d.degree()));
        }
        if self.degree() < d.degree() || self.v_exponent()? < d.v_exponent()? {
            return None;
        }
        let q = self.affine().div_exact(&d.affine())?;
        Some(BinForm::from_affine(&q, self.degree() - d.degree()))
    }

    /// Monic-affine gcd of two forms (as forms); zero only if both are zero.
    pub fn gcd(&self, other: &BinForm) -> BinForm {
        match (self.v_exponent(), other.v_exponent()) {
            (None, None) => BinForm::zero(0),
            (None, Some(_)) => other.normalized_monic(),
            (Some(_), None) => self.normalized_monic(),
            (Some(ea), Some(eb)) => {
                let g = self.affine().gcd(&other.affine());
                let e = ea.min(eb);
                BinForm::from_affine(&g, g.degree().unwrap() + e)
            }
        }
    }

    /// Same form scaled so that its highest nonzero `u`-coefficient is 1.
    pub fn normalized_monic(&self) -> BinForm {
        match self.affine().lead() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Derivative with respect to `u` in the affine chart, kept as a form of
    /// degree `d - 1`.
    pub fn du(&self) -> BinForm {
        if self.degree() == 0 {
            return BinForm::zero(0);
        }
        BinForm::from_affine(&self.affine().derivative(), self.degree() - 1)
    }

    /// Positive integer multiple with content 1 (`None` for zero).
    pub fn primitive_integer(&self) -> Option<BinForm> {
        if self.is_zero() {
            return None;
        }
        let ip = super::poly::IntPoly::from_poly(&self.affine());
        Some(BinForm::from_affine(&ip.to_poly(), self.degree()))
    }
}

/// `gcd_squarefree`: returns `(gcd(f, ∂f), squarefree part)` as forms, with
/// `f = gcd · squarefree` up to a rational scalar.
pub fn gcd_squarefree(f: &BinForm) -> Result<(BinForm, BinForm), ArithError> {
    let e = f.v_exponent().ok_or(ArithError::ZeroForm)?;
    let a = f.affine();
    let (g, s) = a.squarefree();
    let gdeg = g.degree().unwrap() + e.saturating_sub(1);
    let sdeg = s.degree().unwrap() + usize::from(e > 0);
    Ok((BinForm::from_affine(&g, gdeg), BinForm::from_affine(&s, sdeg)))
}

impl fmt::Debug for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinForm({self})")
    }
}

impl fmt::Display for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match (i, d - i) {
                (0, 0) => String::new(),
                (a, b) => {
                    let part = |s: &str, e: usize| match e {
                        0 => String::new(),
                        1 => s.to_string(),
                        e => format!("{s}^{e}"),
                    };
                    format!("{}{}", part("u", a), part("v", b))
                }
            };
            let mag = c.abs();
            let coef = if mag.is_one() && !mono.is_empty() {
                String::new()
            } else {
                format_rational(&mag)
            };
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sep}{coef}{mono}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: &[i64]) -> BinForm {
        BinForm::from_ints(c)
    }

    #[test]
    fn arithmetic_examples() {
        // (u+v) + (u-v) = 2u
        assert_eq!(f(&[1, 1]).add(&f(&[-1, 1])).unwrap(), f(&[0, 2]));
        // u * v = uv
        assert_eq!(f(&[0, 1]).mul(&f(&[1, 0])), f(&[0, 1, 0]));
        // (u^2 - v^2)(u^2 + v^2) = u^4 - v^4
        assert_eq!(f(&[-1, 0, 1]).mul(&f(&[1, 0, 1])), f(&[-1, 0, 0, 0, 1]));
        assert_eq!(
            f(&[1, 1]).add(&f(&[1, 0, 1])),
            Err(ArithError::DegreeMismatch(1, 2))
        );
    }

    #[test]
    fn squarefree_examples() {
        // (u - v)^2
        let (g, s) = gcd_squarefree(&f(&[1, -2, 1])).unwrap();
        assert_eq!(g, f(&[-1, 1]));
        assert_eq!(s, f(&[-1, 1]));
        // u^6 v^6
        let mut c = vec![0; 13];
        c[6] = 1;
        let (g, s) = gcd_squarefree(&f(&c)).unwrap();
        assert_eq!(s, f(&[0, 1, 0]));
        assert_eq!(g.degree(), 10);
        assert_eq!(gcd_squarefree(&BinForm::zero(3)), Err(ArithError::ZeroForm));
    }

    #[test]
    fn squarefree_of_distinct_roots_is_itself() {
        // u^6 - 14u^4v^2 + 49u^2v^4 - 36v^6 = (u²-v²)(u²-4v²)(u²-9v²)
        let p = f(&[-36, 0, 49, 0, -14, 0, 1]);
        // oracle: Euclid on f, f' over Q reaches a nonzero constant
        let a = p.affine();
        let mut x = a.clone();
        let mut y = a.derivative();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        assert_eq!(x.degree(), Some(0));
        let (g, s) = gcd_squarefree(&p).unwrap();
        assert_eq!(g.degree(), 0);
        assert_eq!(s, p);
    }

    #[test]
    fn display_and_charts() {
        let p = f(&[-3, 0, 0, 0, 0]);
        assert_eq!(p.to_string(), "-3v^4");
        assert_eq!(f(&[0, 0, 1, 0, 0]).v_exponent(), Some(2));
        assert_eq!(f(&[1, 0, 0, 2]).infinity_chart(), Poly::from_ints(&[2, 0, 0, 1]));
        assert_eq!(f(&[2, -1, 1]).to_string(), "u^2 - uv + 2v^2");
    }

    #[test]
    fn form_gcd_and_division() {
        let a = f(&[0, 0, 1, 0, 0]).mul(&f(&[-1, 1])); // u^2 v^2 (u - v)
        let b = f(&[0, 1, 0, 0]).mul(&f(&[-1, 1])); // u v^2 (u - v)
        let g = a.gcd(&b);
        assert_eq!(g, f(&[0, -1, 1, 0, 0])); // u v^2 (u - v)
        assert_eq!(a.div_exact(&g).unwrap(), f(&[0, 1]));
        assert!(f(&[1, 0, 1]).div_exact(&f(&[0, 1])).is_none());
    }
}
