//! Dense univariate polynomials over ℚ and primitive integer polynomials.
//!
//! `Poly` is the general-purpose type. `IntPoly` is the content-free integer
//! image used wherever coefficient growth matters (gcd, Sturm chains,
//! sign evaluation at rationals). Every conversion to `IntPoly` scales by a
//! *positive* factor, so signs of values are preserved.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Polynomial with rational coefficients, ascending powers, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `x - c`
    pub fn linear_root(c: &Rational) -> Self {
        Poly::new(vec![-c.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of `x = 0` as a root.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for i in (dd..n).rev() {
            let c = &rem[i] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// `Some(q)` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        IntPoly::from_poly(self)
            .gcd(&IntPoly::from_poly(other))
            .to_poly()
            .monic()
    }

    /// Squarefree part (monic), together with `gcd(f, f')`.
    pub fn squarefree(&self) -> (Poly, Poly) {
        assert!(!self.is_zero(), "squarefree part of zero");
        let g = self.gcd(&self.derivative());
        let s = self.div_exact(&g).expect("gcd divides").monic();
        (g, s)
    }

    /// Yun's squarefree decomposition: `self = c · Π_i parts[i]^(i+1)`.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        assert!(!self.is_zero());
        let mut out = Vec::new();
        if self.degree() == Some(0) {
            return out;
        }
        let d = self.derivative();
        let a = self.gcd(&d);
        let mut b = self.div_exact(&a).unwrap();
        let mut c = d.div_exact(&a).unwrap();
        let mut dd = &c - &b.derivative();
        loop {
            let g = b.gcd(&dd);
            out.push(g.clone());
            b = b.div_exact(&g).unwrap();
            if b.degree() == Some(0) {
                break;
            }
            c = dd.div_exact(&g).unwrap();
            dd = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Integer polynomial, ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Clears denominators and removes the content, scaling by a positive factor.
    pub fn from_poly(p: &Poly) -> Self {
        let l = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        IntPoly::new(ints).primitive()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Positive gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the positive content; sign unchanged.
    pub fn primitive(self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self;
        }
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| c / &g).collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Sign of `p(n/d)` for `d > 0`, computed as the sign of `d^deg · p(n/d)`.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // Horner in n with compensating powers of d
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Sign as `x → +∞` (`positive = true`) or `x → -∞`.
    pub fn sign_at_infinity(&self, positive: bool) -> i8 {
        let Some(deg) = self.degree() else { return 0 };
        let s = if self.lead().unwrap().is_positive() { 1 } else { -1 };
        if positive || deg % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// Remainder of `self` by `d` after multiplying `self` by a positive
    /// power of `|lead(d)|`; the result is made primitive.
    pub fn positive_pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let ld = d.lead().unwrap().clone();
        let lda = ld.abs();
        let mut r = self.coeffs.clone();
        let sgn = if ld.is_positive() { BigInt::one() } else { -BigInt::one() };
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            if c.is_zero() {
                r.pop();
                continue;
            }
            // r <- |ld|·r - sgn(ld)·c·x^(top-dd)·d
            for x in r.iter_mut() {
                *x *= &lda;
            }
            let f = &c * &sgn;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[top - dd + j] -= &f * dc;
            }
            debug_assert!(r[top].is_zero());
            r.pop();
            let tmp = IntPoly::new(std::mem::take(&mut r)).primitive();
            r = tmp.coeffs;
        }
        IntPoly::new(r).primitive()
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        while !b.is_zero() {
            let r = a.positive_pseudo_rem(&b);
            a = b;
            b = r;
        }
        let a = a.primitive();
        if a.lead().is_some_and(|l| l.is_negative()) {
            IntPoly::new(a.coeffs.into_iter().map(|c| -c).collect())
        } else {
            a
        }
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> BigInt {
        let l = self.lead().expect("nonzero").abs();
        let m = self.coeffs.iter().map(|c| c.abs()).max().unwrap();
        m.div_ceil(&l) + 1
    }
}

/// Sturm chain of a squarefree polynomial, normalized by positive contents.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of zero");
        let mut chain = vec![p.clone()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            let r = chain[n - 2].positive_pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(IntPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
        }
        SturmChain { chain }
    }

    pub fn base(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct roots in `(a, b]`; `a` must not be a root.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        // V is right-continuous at a root, so a root at `a` is never counted
        let at_b = usize::from(self.base().sign_at(b) == 0);
        self.variations_at(a) - self.variations_at(b) - at_b
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}
