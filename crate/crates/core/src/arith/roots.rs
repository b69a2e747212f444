//! Exact points of ℙ¹(ℝ), real root isolation, and sign / valuation queries.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::form::BinForm;
use super::poly::{IntPoly, Poly, SturmChain};
use super::rational::{format_rational, midpoint, simplest_between, Rational};
use crate::error::ArithError;

/// An irrational real number given by a squarefree defining form without
/// rational roots and an open isolating interval `(lo, hi)`.
///
/// The defining polynomial takes nonzero values of opposite signs at `lo` and `hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicPoint {
    defining: BinForm,
    poly: IntPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicPoint {
    pub fn defining(&self) -> &BinForm {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        let m = midpoint(&self.lo, &self.hi);
        let sm = self.poly.sign_at(&m);
        debug_assert!(sm != 0, "irrational root hit a rational midpoint");
        if sm == self.poly.sign_at(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    /// Refines until the interval is narrower than `width`.
    pub fn refine_to(&mut self, width: &Rational) {
        while &(&self.hi - &self.lo) >= width {
            self.refine();
        }
    }

    /// Floating-point approximation, for display only.
    pub fn approx(&self) -> f64 {
        let mut a = self.clone();
        a.refine_to(&Rational::new(1.into(), (1u64 << 50).into()));
        to_f64(&midpoint(&a.lo, &a.hi))
    }
}

fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// A point of ℙ¹(ℝ): `(x : 1)` with `x` rational or algebraic, or `(1 : 0)`.
///
/// Equality is structural; use [`CirclePoint::same_point`] to compare values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CirclePoint {
    Finite(Rational),
    Algebraic(AlgebraicPoint),
    Infinity,
}

impl CirclePoint {
    /// Builds the point of `defining` isolated in `(lo, hi)`, returning a
    /// `Finite` point when that root is rational.
    pub fn from_isolating_interval(
        defining: &BinForm,
        lo: &Rational,
        hi: &Rational,
    ) -> Result<CirclePoint, ArithError> {
        if lo >= hi {
            return Err(ArithError::BadInterval);
        }
        let roots = isolate_real_roots(defining)?;
        let mut inside = roots.points.into_iter().filter(|c| match c {
            CirclePoint::Finite(r) => lo < r && r < hi,
            CirclePoint::Algebraic(a) => {
                let mut a = a.clone();
                loop {
                    if &a.hi <= lo || &a.lo >= hi {
                        break false;
                    }
                    if &a.lo >= lo && &a.hi <= hi {
                        break true;
                    }
                    a.refine();
                }
            }
            CirclePoint::Infinity => false,
        });
        match (inside.next(), inside.next()) {
            (Some(mut c), None) => {
                if let CirclePoint::Algebraic(a) = &mut c {
                    while &a.lo < lo || &a.hi > hi {
                        a.refine();
                    }
                }
                Ok(c)
            }
            _ => Err(ArithError::BadInterval),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CirclePoint::Infinity)
    }

    /// Lower end of the isolating data (`None` at infinity).
    pub fn lower(&self) -> Option<&Rational> {
        match self {
            CirclePoint::Finite(r) => Some(r),
            CirclePoint::Algebraic(a) => Some(&a.lo),
            CirclePoint::Infinity => None,
        }
    }

    pub fn upper(&self) -> Option<&Rational> {
        match self {
            CirclePoint::Finite(r) => Some(r),
            CirclePoint::Algebraic(a) => Some(&a.hi),
            CirclePoint::Infinity => None,
        }
    }

    pub fn refine(&mut self) {
        if let CirclePoint::Algebraic(a) = self {
            a.refine();
        }
    }

    /// Value equality.
    pub fn same_point(&self, other: &CirclePoint) -> bool {
        cmp_circle(self, other) == Ordering::Equal
    }

    /// A squarefree form vanishing at this point (degree 1 for rationals
    /// and for `∞`).
    pub fn defining_form(&self) -> BinForm {
        match self {
            CirclePoint::Finite(r) => BinForm::linear(r),
            CirclePoint::Algebraic(a) => a.defining.clone(),
            CirclePoint::Infinity => BinForm::from_ints(&[1, 0]),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            CirclePoint::Finite(r) => to_f64(r),
            CirclePoint::Algebraic(a) => a.approx(),
            CirclePoint::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CirclePoint::Finite(r) => write!(f, "{}", format_rational(r)),
            CirclePoint::Algebraic(a) => write!(
                f,
                "root of {} in ({}, {})",
                a.defining,
                format_rational(&a.lo),
                format_rational(&a.hi)
            ),
            CirclePoint::Infinity => write!(f, "∞"),
        }
    }
}

/// Order on ℙ¹(ℝ) cut open at `∞`: reals ascending, `∞` last.
pub fn cmp_circle(a: &CirclePoint, b: &CirclePoint) -> Ordering {
    use CirclePoint::*;
    match (a, b) {
        (Infinity, Infinity) => Ordering::Equal,
        (Infinity, _) => Ordering::Greater,
        (_, Infinity) => Ordering::Less,
        (Finite(x), Finite(y)) => x.cmp(y),
        (Finite(x), Algebraic(p)) => cmp_rational_algebraic(x, p),
        (Algebraic(p), Finite(x)) => cmp_rational_algebraic(x, p).reverse(),
        (Algebraic(p), Algebraic(q)) => cmp_algebraic(p, q),
    }
}

fn cmp_rational_algebraic(x: &Rational, p: &AlgebraicPoint) -> Ordering {
    let mut p = p.clone();
    loop {
        if x <= &p.lo {
            return Ordering::Less;
        }
        if x >= &p.hi {
            return Ordering::Greater;
        }
        p.refine();
    }
}

fn cmp_algebraic(p: &AlgebraicPoint, q: &AlgebraicPoint) -> Ordering {
    if p.hi <= q.lo {
        return Ordering::Less;
    }
    if q.hi <= p.lo {
        return Ordering::Greater;
    }
    // overlapping intervals: equal iff the common factor has a root in the
    // intersection, which is then the root of both
    let g = p.poly.gcd(&q.poly);
    if g.degree().unwrap_or(0) >= 1 {
        let lo = (&p.lo).max(&q.lo).clone();
        let hi = (&p.hi).min(&q.hi).clone();
        let chain = SturmChain::new(&g);
        if chain.count_open(&lo, &hi) > 0 {
            return Ordering::Equal;
        }
    }
    let (mut p, mut q) = (p.clone(), q.clone());
    loop {
        p.refine();
        q.refine();
        if p.hi <= q.lo {
            return Ordering::Less;
        }
        if q.hi <= p.lo {
            return Ordering::Greater;
        }
    }
}

/// Distinct points of ℙ¹(ℝ) in circle order with pairwise disjoint
/// isolating intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleOrder {
    points: Vec<CirclePoint>,
}

/// One arc between consecutive points of a [`CircleOrder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSpan {
    /// Index of the starting point.
    pub start: usize,
    /// Index of the end point (wraps around).
    pub end: usize,
    /// Rational interior sample.
    pub sample: Rational,
    /// Whether the arc passes through `∞` in its interior.
    pub through_infinity: bool,
}

impl CircleOrder {
    /// Sorts, removes duplicates and separates isolating intervals.
    pub fn from_points(points: Vec<CirclePoint>) -> Self {
        let mut points = points;
        points.sort_by(cmp_circle);
        points.dedup_by(|a, b| a.same_point(b));
        let mut order = CircleOrder { points };
        order.separate();
        order
    }

    fn separate(&mut self) {
        for i in 1..self.points.len() {
            let (left, right) = self.points.split_at_mut(i);
            let a = left.last_mut().unwrap();
            let b = &mut right[0];
            loop {
                match (a.upper(), b.lower()) {
                    (Some(x), Some(y)) if x < y => break,
                    (_, None) => break,
                    _ => {}
                }
                a.refine();
                b.refine();
            }
        }
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains_infinity(&self) -> bool {
        self.points.last().is_some_and(|p| p.is_infinity())
    }

    /// Position of a point equal to `c`, if any.
    pub fn position(&self, c: &CirclePoint) -> Option<usize> {
        self.points.iter().position(|p| p.same_point(c))
    }

    /// The arcs between consecutive points, in circle order. Arc `i` starts at
    /// point `i`. Empty when there are no points.
    pub fn arcs(&self) -> Vec<ArcSpan> {
        let n = self.points.len();
        let finite: Vec<&CirclePoint> = self.points.iter().filter(|p| !p.is_infinity()).collect();
        (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                let (a, b) = (&self.points[i], &self.points[j]);
                let wraps = j <= i;
                let (sample, through_infinity) = match (a, b) {
                    (CirclePoint::Infinity, CirclePoint::Infinity) => (Rational::zero(), false),
                    (_, CirclePoint::Infinity) => {
                        (simplest_between(a.upper().unwrap(), None), false)
                    }
                    (CirclePoint::Infinity, _) => {
                        (-simplest_between(&-b.lower().unwrap(), None), false)
                    }
                    _ if wraps => {
                        // through ∞ (no point at ∞ in the order)
                        let last = finite.last().unwrap();
                        (simplest_between(last.upper().unwrap(), None), true)
                    }
                    _ => (
                        simplest_between(a.upper().unwrap(), Some(b.lower().unwrap())),
                        false,
                    ),
                };
                ArcSpan { start: i, end: j, sample, through_infinity }
            })
            .collect()
    }
}

/// All distinct real roots of `f` on ℙ¹(ℝ), rational ones as `Finite`.
pub fn isolate_real_roots(f: &BinForm) -> Result<CircleOrder, ArithError> {
    let e = f.v_exponent().ok_or(ArithError::ZeroForm)?;
    let a = f.affine();
    let mut points = Vec::new();
    if a.degree().unwrap() >= 1 {
        let (_, sqf) = a.squarefree();
        let ip = IntPoly::from_poly(&sqf);
        let chain = SturmChain::new(&ip);
        let b = Rational::from_integer(ip.root_bound());
        let mut found = Vec::new();
        bisect(&chain, -b.clone(), b, &mut found);

        let lead = ip.lead().unwrap().abs();
        let width = Rational::new(1.into(), &lead * &lead);
        let mut rational_roots = Vec::new();
        let mut pending = Vec::new();
        for slot in found {
            match slot {
                Slot::Exact(r) => {
                    rational_roots.push(r.clone());
                    pending.push(Slot::Exact(r));
                }
                Slot::Interval(mut lo, mut hi) => {
                    // a rational root of a primitive integer polynomial has
                    // denominator dividing the leading coefficient
                    let mut exact = None;
                    let (mut slo, mut shi) = (ip.sign_at(&lo), ip.sign_at(&hi));
                    while &hi - &lo >= width {
                        let m = midpoint(&lo, &hi);
                        let sm = ip.sign_at(&m);
                        if sm == 0 {
                            exact = Some(m);
                            break;
                        }
                        // with both ends off the curve a sign change locates the root
                        let left = if slo != 0 && shi != 0 { sm != slo } else { chain.count_open(&lo, &m) == 1 };
                        if left {
                            hi = m;
                            shi = sm;
                        } else {
                            lo = m;
                            slo = sm;
                        }
                    }
                    if exact.is_none() {
                        let s = simplest_between(&lo, Some(&hi));
                        if ip.sign_at(&s) == 0 {
                            exact = Some(s);
                        }
                    }
                    match exact {
                        Some(r) => {
                            rational_roots.push(r.clone());
                            pending.push(Slot::Exact(r));
                        }
                        None => pending.push(Slot::Interval(lo, hi)),
                    }
                }
            }
        }

        let mut irr = sqf.clone();
        for r in &rational_roots {
            irr = irr.div_exact(&Poly::linear_root(r)).expect("rational root divides");
        }
        let irr_poly = IntPoly::from_poly(&irr);
        let defining = BinForm::from_affine(&irr_poly.to_poly(), irr.degree().unwrap());
        for slot in pending {
            points.push(match slot {
                Slot::Exact(r) => CirclePoint::Finite(r),
                Slot::Interval(lo, hi) => CirclePoint::Algebraic(AlgebraicPoint {
                    defining: defining.clone(),
                    poly: irr_poly.clone(),
                    lo,
                    hi,
                }),
            });
        }
    }
    if e > 0 {
        points.push(CirclePoint::Infinity);
    }
    let mut order = CircleOrder { points };
    order.separate();
    Ok(order)
}

enum Slot {
    Exact(Rational),
    Interval(Rational, Rational),
}

fn bisect(chain: &SturmChain, lo: Rational, hi: Rational, out: &mut Vec<Slot>) {
    match chain.count_open(&lo, &hi) {
        0 => {}
        1 => out.push(Slot::Interval(lo, hi)),
        _ => {
            let m = midpoint(&lo, &hi);
            bisect(chain, lo, m.clone(), out);
            if chain.base().sign_at(&m) == 0 {
                out.push(Slot::Exact(m.clone()));
            }
            bisect(chain, m, hi, out);
        }
    }
}

/// Sign of `g` at `c`, using the representative `(x, 1)` for finite points
/// and `(1, 0)` at infinity.
pub fn sign_at(g: &BinForm, c: &CirclePoint) -> i8 {
    match c {
        CirclePoint::Infinity => super::rational::sign(&g.coeffs()[g.degree()]),
        CirclePoint::Finite(r) => IntPoly::from_poly(&g.affine()).sign_at(r),
        CirclePoint::Algebraic(p) => sign_at_algebraic(&g.affine(), p),
    }
}

fn sign_at_algebraic(a: &Poly, p: &AlgebraicPoint) -> i8 {
    if a.is_zero() {
        return 0;
    }
    let ia = IntPoly::from_poly(a);
    let h = ia.gcd(&p.poly);
    if h.degree().unwrap_or(0) >= 1 && h.sign_at(&p.lo) * h.sign_at(&p.hi) < 0 {
        return 0;
    }
    let sqf = IntPoly::from_poly(&a.squarefree().1);
    if sqf.degree() == Some(0) {
        return ia.sign_at(&p.lo);
    }
    let chain = SturmChain::new(&sqf);
    let mut p = p.clone();
    while chain.count_open(&p.lo, &p.hi) > 0 {
        p.refine();
    }
    ia.sign_at(&midpoint(&p.lo, &p.hi))
}

/// Multiplicity of `c` as a root of `g`.
pub fn valuation_at(g: &BinForm, c: &CirclePoint) -> Result<u32, ArithError> {
    let e = g.v_exponent().ok_or(ArithError::ZeroForm)?;
    match c {
        CirclePoint::Infinity => Ok(e as u32),
        CirclePoint::Finite(r) => {
            let lin = Poly::linear_root(r);
            let mut a = g.affine();
            let mut v = 0;
            while let Some(q) = a.div_exact(&lin) {
                a = q;
                v += 1;
            }
            Ok(v)
        }
        CirclePoint::Algebraic(p) => {
            // gcd(a, defining) is squarefree, so dividing it out lowers every
            // multiplicity it meets by one
            let mut a = g.affine();
            let mut v = 0;
            loop {
                let h = IntPoly::from_poly(&a).gcd(&p.poly);
                if h.degree().unwrap_or(0) == 0 || h.sign_at(&p.lo) * h.sign_at(&p.hi) >= 0 {
                    return Ok(v);
                }
                a = a.div_exact(&h.to_poly()).expect("gcd divides");
                v += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn f(c: &[i64]) -> BinForm {
        BinForm::from_ints(c)
    }

    fn sqrt2() -> CirclePoint {
        CirclePoint::from_isolating_interval(&f(&[-2, 0, 1]), &int(1), &int(2)).unwrap()
    }

    #[test]
    fn isolation_examples() {
        assert!(isolate_real_roots(&f(&[1, 0, 1])).unwrap().is_empty());
        let o = isolate_real_roots(&f(&[0, -1, 1, 0])).unwrap(); // uv(u - v)
        assert_eq!(
            o.points(),
            &[CirclePoint::Finite(int(0)), CirclePoint::Finite(int(1)), CirclePoint::Infinity]
        );
        let o = isolate_real_roots(&f(&[-36, 0, 49, 0, -14, 0, 1])).unwrap();
        let want: Vec<_> = [-3, -2, -1, 1, 2, 3].iter().map(|&x| CirclePoint::Finite(int(x))).collect();
        assert_eq!(o.points(), &want[..]);
        assert_eq!(isolate_real_roots(&BinForm::zero(2)), Err(ArithError::ZeroForm));
    }

    #[test]
    fn isolation_mixed_rational_and_irrational() {
        // (u² - 2v²)(2u - 3v)(u + v)² v
        let g = f(&[-2, 0, 1]).mul(&f(&[-3, 2])).mul(&f(&[1, 1]).pow(2)).mul(&f(&[1, 0]));
        let o = isolate_real_roots(&g).unwrap();
        assert_eq!(o.len(), 5);
        let approx: Vec<f64> = o.points().iter().map(|p| p.approx()).collect();
        let want = [-(2f64.sqrt()), -1.0, 2f64.sqrt(), 1.5, f64::INFINITY];
        for (a, w) in approx.iter().zip(want) {
            assert!(a == &w || (a - w).abs() < 1e-9, "{a} vs {w}");
        }
        assert_eq!(o.points()[1], CirclePoint::Finite(int(-1)));
        assert_eq!(o.points()[3], CirclePoint::Finite(rat(3, 2)));
        assert!(matches!(o.points()[2], CirclePoint::Algebraic(_)));
    }

    #[test]
    fn sign_examples() {
        let pos = f(&[1, 0, 1]);
        for c in [CirclePoint::Finite(rat(-7, 3)), sqrt2(), CirclePoint::Infinity] {
            assert_eq!(sign_at(&pos, &c), 1);
        }
        assert_eq!(sign_at(&f(&[0, 1]), &sqrt2()), 1);
        let g = f(&[-34, 0, 49, 0, -14, 0, 1]);
        assert_eq!(g.eval(&int(1), &int(1)), int(2));
        assert_eq!(sign_at(&g, &CirclePoint::Finite(int(1))), 1);
        assert_eq!(sign_at(&f(&[-2, 0, 1]), &sqrt2()), 0);
        // u - 3/2 v is negative at √2 ≈ 1.414
        assert_eq!(sign_at(&f(&[-3, 2]), &sqrt2()), -1);
    }

    #[test]
    fn valuation_examples() {
        let g = f(&[-1, 1]).pow(3).mul(&f(&[1, 1]));
        assert_eq!(valuation_at(&g, &CirclePoint::Finite(int(1))).unwrap(), 3);
        let mut c = vec![0; 6];
        c[2] = 1; // u² v³
        assert_eq!(valuation_at(&f(&c), &CirclePoint::Infinity).unwrap(), 3);
        let mut c = vec![0; 13];
        c[6] = 31;
        assert_eq!(valuation_at(&f(&c), &CirclePoint::Finite(int(0))).unwrap(), 6);
        let h = f(&[-2, 0, 1]).pow(2).mul(&f(&[1, 1]));
        assert_eq!(valuation_at(&h, &sqrt2()).unwrap(), 2);
        assert_eq!(valuation_at(&BinForm::zero(1), &sqrt2()), Err(ArithError::ZeroForm));
    }

    #[test]
    fn algebraic_comparison() {
        let a = sqrt2();
        let b = CirclePoint::from_isolating_interval(&f(&[-2, 0, 1]).mul(&f(&[-5, 1])), &rat(1, 1), &rat(3, 2)).unwrap();
        assert!(a.same_point(&b));
        let c = CirclePoint::from_isolating_interval(&f(&[-3, 0, 1]), &int(1), &int(2)).unwrap();
        assert_eq!(cmp_circle(&a, &c), Ordering::Less);
        assert_eq!(cmp_circle(&CirclePoint::Finite(rat(17, 12)), &a), Ordering::Greater);
        assert!(CirclePoint::from_isolating_interval(&f(&[-2, 0, 1]), &int(-2), &int(2)).is_err());
        // rational roots come back as Finite
        let r = CirclePoint::from_isolating_interval(&f(&[-1, 2]), &int(0), &int(1)).unwrap();
        assert_eq!(r, CirclePoint::Finite(rat(1, 2)));
    }

    #[test]
    fn arcs_and_samples() {
        let o = isolate_real_roots(&f(&[0, -1, 1, 0])).unwrap(); // 0, 1, ∞
        let arcs = o.arcs();
        let samples: Vec<Rational> = arcs.iter().map(|a| a.sample.clone()).collect();
        assert_eq!(samples, vec![rat(1, 2), int(2), int(-1)]);
        let o = isolate_real_roots(&f(&[-4, 0, 1])).unwrap(); // ±2
        let arcs = o.arcs();
        assert_eq!(arcs[0].sample, int(0));
        assert_eq!(arcs[1].sample, int(3));
        assert!(arcs[1].through_infinity);
    }
}
