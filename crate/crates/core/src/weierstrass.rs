//! Weierstrass data `y² = x³ + p x + q` over ℙ¹ and Kodaira fiber types.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    cmp_circle, isolate_real_roots, rational::int, BinForm, CirclePoint, IntPoly, Poly, Rational,
};
use crate::error::{NonMinimalWitness, WeierstrassError};

/// Weierstrass data of a surface with `χ(O_X) = k`: `p` of degree `4k`,
/// `q` of degree `6k`, minimal at every point and with `Δ ≢ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassTriple {
    k: u32,
    p: BinForm,
    q: BinForm,
}

impl WeierstrassTriple {
    /// Checks degrees, `Δ ≢ 0` and minimality.
    pub fn validate(k: u32, p: BinForm, q: BinForm) -> Result<Self, WeierstrassError> {
        if k == 0 {
            return Err(WeierstrassError::InvalidK);
        }
        let k_ = k as usize;
        if p.degree() != 4 * k_ {
            return Err(WeierstrassError::DegreeMismatch { which: "p", expected: 4 * k_, got: p.degree() });
        }
        if q.degree() != 6 * k_ {
            return Err(WeierstrassError::DegreeMismatch { which: "q", expected: 6 * k_, got: q.degree() });
        }
        let t = WeierstrassTriple { k, p, q };
        if t.discriminant().is_zero() {
            return Err(WeierstrassError::DeltaIdenticallyZero);
        }
        if let Some(w) = t.non_minimal_witness() {
            return Err(WeierstrassError::NonMinimal(w));
        }
        Ok(t)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p(&self) -> &BinForm {
        &self.p
    }

    pub fn q(&self) -> &BinForm {
        &self.q
    }

    /// `Δ = 4p³ + 27q²`, a form of degree `12k`.
    pub fn discriminant(&self) -> BinForm {
        let a = self.p.pow(3).scale(&int(4));
        let b = self.q.pow(2).scale(&int(27));
        a.add(&b).expect("degrees 12k")
    }

    fn non_minimal_witness(&self) -> Option<NonMinimalWitness> {
        // ∞: v-exponents; a zero form has infinite valuation
        let vp = self.p.v_exponent().unwrap_or(usize::MAX);
        let vq = self.q.v_exponent().unwrap_or(usize::MAX);
        let at_infinity = vp >= 4 && vq >= 6;

        // affine chart: gcd of p, ..., p''' and q, ..., q^(5)
        let mut g = Poly::zero();
        let mut d = self.p.affine();
        for _ in 0..4 {
            g = g.gcd(&d);
            d = d.derivative();
        }
        let mut d = self.q.affine();
        for _ in 0..6 {
            g = g.gcd(&d);
            d = d.derivative();
        }
        if g.degree().unwrap_or(0) >= 1 {
            let form = BinForm::from_affine(&g, g.degree().unwrap());
            let roots = isolate_real_roots(&form).expect("nonzero");
            let pick = roots
                .points()
                .iter()
                .find(|c| matches!(c, CirclePoint::Finite(_)))
                .or_else(|| roots.points().first());
            return Some(match pick {
                Some(c) => NonMinimalWitness::Point(c.clone()),
                None => NonMinimalWitness::Factor(form),
            });
        }
        at_infinity.then_some(NonMinimalWitness::Point(CirclePoint::Infinity))
    }

    /// Both j-invariant ratios, each reduced by its gcd.
    pub fn j_invariant(&self) -> JInvariant {
        let four_p3 = self.p.pow(3).scale(&int(4));
        let p3_over_q2 = if self.q.is_zero() {
            None
        } else {
            Some(reduce_ratio(&four_p3, &self.q.pow(2).scale(&int(27))))
        };
        let standard = reduce_ratio(&four_p3.scale(&int(1728)), &self.discriminant());
        JInvariant { p3_over_q2, standard }
    }

    /// `(λ⁴p, λ⁶q)`.
    pub fn rescale(&self, lambda: &Rational) -> Result<Self, WeierstrassError> {
        if lambda.is_zero() {
            return Err(WeierstrassError::ZeroScale);
        }
        let l2 = lambda * lambda;
        Ok(self.scale_by_mu(&l2))
    }

    /// `(μ²p, μ³q)` for `μ = λ² > 0`.
    fn scale_by_mu(&self, mu: &Rational) -> Self {
        let mu2 = mu * mu;
        let mu3 = &mu2 * mu;
        WeierstrassTriple { k: self.k, p: self.p.scale(&mu2), q: self.q.scale(&mu3) }
    }

    /// Canonical representative over positive `λ²`: integer coefficients and
    /// no prime `ρ` with `ρ² | content(p)` and `ρ³ | content(q)`.
    ///
    /// Primes are found by trial division up to `NORMALIZE_TRIAL_BOUND`;
    /// a leftover cofactor is tried as a single divisor.
    pub fn normalize(&self) -> Self {
        let den = self
            .p
            .coeffs()
            .iter()
            .chain(self.q.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut t = self.scale_by_mu(&Rational::from_integer(den));
        loop {
            let cp = content(&t.p);
            let cq = content(&t.q);
            let shared = if cp.is_zero() { cq.clone() } else if cq.is_zero() { cp.clone() } else { cp.gcd(&cq) };
            let divides = |r: &BigInt| {
                let r2 = r * r;
                let r3 = &r2 * r;
                (cp.is_zero() || (&cp % &r2).is_zero()) && (cq.is_zero() || (&cq % &r3).is_zero())
            };
            let mut found = None;
            let mut rest = shared.clone();
            let mut r = BigInt::from(2);
            while &r * &r <= rest && r <= BigInt::from(NORMALIZE_TRIAL_BOUND) {
                if (&rest % &r).is_zero() {
                    if divides(&r) {
                        found = Some(r.clone());
                        break;
                    }
                    while (&rest % &r).is_zero() {
                        rest /= &r;
                    }
                }
                r += 1;
            }
            if found.is_none() && rest > BigInt::one() && divides(&rest) {
                found = Some(rest);
            }
            match found {
                Some(r) => t = t.scale_by_mu(&Rational::new(BigInt::one(), r)),
                None => return t,
            }
        }
    }

    /// Sign-preserving `(p, -q)`.
    pub fn twisted(&self) -> Self {
        WeierstrassTriple { k: self.k, p: self.p.clone(), q: self.q.neg() }
    }
}

/// Upper limit for trial division in [`WeierstrassTriple::normalize`].
pub const NORMALIZE_TRIAL_BOUND: u64 = 100_000;

fn content(f: &BinForm) -> BigInt {
    IntPoly::new(f.coeffs().iter().map(|c| c.numer().clone()).collect()).content()
}

/// `num / den` with the gcd removed and `den` scaled to have affine leading
/// coefficient 1.
fn reduce_ratio(num: &BinForm, den: &BinForm) -> (BinForm, BinForm) {
    let g = num.gcd(den);
    let n = num.div_exact(&g).expect("gcd divides");
    let d = den.div_exact(&g).expect("gcd divides");
    let s = d.affine().lead().expect("nonzero denominator").recip();
    (n.scale(&s), d.scale(&s))
}

/// The two j-invariant conventions as reduced ratios `(numerator, denominator)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JInvariant {
    /// `4p³ : 27q²`; `None` when `q ≡ 0` (flagged: the ratio has no finite value).
    pub p3_over_q2: Option<(BinForm, BinForm)>,
    /// `1728·4p³ : Δ`.
    pub standard: (BinForm, BinForm),
}

impl JInvariant {
    /// Value of the standard j when it is constant.
    pub fn standard_constant(&self) -> Option<Rational> {
        let (n, d) = &self.standard;
        (d.degree() == 0).then(|| &n.coeffs()[0] / &d.coeffs()[0])
    }

    pub fn p3_over_q2_constant(&self) -> Option<Rational> {
        let (n, d) = self.p3_over_q2.as_ref()?;
        (d.degree() == 0).then(|| &n.coeffs()[0] / &d.coeffs()[0])
    }
}

/// Kodaira symbol of a singular fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn euler_number(&self) -> u32 {
        match self {
            KodairaType::I(n) => *n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Type read from the valuations of `p`, `q`, `Δ` at a point (`None`
    /// stands for an identically zero form). Returns `None` for smooth
    /// fibers and for valuations outside the minimal table.
    pub fn from_valuations(vp: Option<u32>, vq: Option<u32>, vd: u32) -> Option<KodairaType> {
        let at_least = |v: Option<u32>, n: u32| v.map_or(true, |v| v >= n);
        if vd == 0 {
            return None;
        }
        Some(match (vp, vq) {
            (Some(0), _) => KodairaType::I(vd),
            (_, Some(1)) => KodairaType::II,
            (Some(1), _) => KodairaType::III,
            (_, Some(2)) => KodairaType::IV,
            (Some(2), _) | (_, Some(3)) if at_least(vp, 2) && at_least(vq, 3) => {
                if vd < 6 {
                    return None;
                }
                KodairaType::IStar(vd - 6)
            }
            (_, Some(4)) => KodairaType::IVStar,
            (Some(3), _) => KodairaType::IIIStar,
            (_, Some(5)) => KodairaType::IIStar,
            _ => return None,
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

/// Location of a singular fiber: a real point, or a set of non-real
/// conjugate pairs sharing the same valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberLocation {
    Point(CirclePoint),
    /// `factor` is squarefree, its non-real roots come in `pairs` conjugate pairs.
    ConjugatePairs { factor: BinForm, pairs: u32 },
}

/// Valuations and type of one singular fiber (or one group of conjugate fibers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub location: FiberLocation,
    /// `None` when `p ≡ 0`.
    pub v_p: Option<u32>,
    /// `None` when `q ≡ 0`.
    pub v_q: Option<u32>,
    pub v_delta: u32,
    pub kodaira: KodairaType,
    pub is_real: bool,
}

impl FiberReport {
    /// Number of fibers this report stands for.
    pub fn multiplicity(&self) -> u32 {
        match &self.location {
            FiberLocation::Point(_) => 1,
            FiberLocation::ConjugatePairs { pairs, .. } => 2 * pairs,
        }
    }

    pub fn euler_contribution(&self) -> u32 {
        self.multiplicity() * self.kodaira.euler_number()
    }
}

/// Complex invariants determined by `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub k: u32,
    pub chi_top: u32,
    pub h11: u32,
    pub b2: u32,
}

impl SurfaceInvariants {
    pub fn for_k(k: u32) -> Self {
        SurfaceInvariants { k, chi_top: 12 * k, h11: 10 * k, b2: 12 * k - 2 }
    }
}

/// Output of [`classify_fibers`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberClassification {
    /// Real fibers in circle order, then conjugate groups.
    pub fibers: Vec<FiberReport>,
    pub invariants: SurfaceInvariants,
}

impl FiberClassification {
    pub fn real_fibers(&self) -> impl Iterator<Item = (&CirclePoint, &FiberReport)> {
        self.fibers.iter().filter_map(|f| match &f.location {
            FiberLocation::Point(c) => Some((c, f)),
            _ => None,
        })
    }

    pub fn euler_sum(&self) -> u32 {
        self.fibers.iter().map(FiberReport::euler_contribution).sum()
    }
}

/// Splits a squarefree polynomial by the valuation of `f` at its roots.
fn split_by_valuation(a: &Poly, f: &Poly) -> Vec<(Option<u32>, Poly)> {
    if f.is_zero() {
        return vec![(None, a.clone())];
    }
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut d = f.clone();
    let mut j = 0;
    while rest.degree().unwrap_or(0) >= 1 {
        let g = rest.gcd(&d);
        let piece = rest.div_exact(&g).expect("gcd divides");
        if piece.degree().unwrap_or(0) >= 1 {
            out.push((Some(j), piece));
        }
        rest = g;
        d = d.derivative();
        j += 1;
    }
    out
}

/// Kodaira classification of every singular fiber, with `Σ e = 12k` checked.
pub fn classify_fibers(t: &WeierstrassTriple) -> Result<FiberClassification, WeierstrassError> {
    let delta = t.discriminant();
    let mut real = Vec::new();
    let mut groups = Vec::new();
    let bad = |c: String| WeierstrassError::Inconsistent(format!("valuations outside the Kodaira table at {c}"));

    let vd_inf = delta.v_exponent().expect("nonzero") as u32;
    if vd_inf > 0 {
        let vp = t.p.v_exponent().map(|v| v as u32);
        let vq = t.q.v_exponent().map(|v| v as u32);
        let kodaira = KodairaType::from_valuations(vp, vq, vd_inf).ok_or_else(|| bad("∞".into()))?;
        real.push(FiberReport {
            location: FiberLocation::Point(CirclePoint::Infinity),
            v_p: vp,
            v_q: vq,
            v_delta: vd_inf,
            kodaira,
            is_real: true,
        });
    }

    let pa = t.p.affine();
    let qa = t.q.affine();
    for (i, part) in delta.affine().squarefree_decomposition().iter().enumerate() {
        if part.degree().unwrap_or(0) == 0 {
            continue;
        }
        let vd = i as u32 + 1;
        for (vp, a) in split_by_valuation(part, &pa) {
            for (vq, b) in split_by_valuation(&a, &qa) {
                let deg = b.degree().unwrap();
                let form = BinForm::from_affine(&b, deg);
                let kodaira = KodairaType::from_valuations(vp, vq, vd).ok_or_else(|| bad(format!("roots of {form}")))?;
                let roots = isolate_real_roots(&form).expect("nonzero");
                for c in roots.points() {
                    real.push(FiberReport {
                        location: FiberLocation::Point(c.clone()),
                        v_p: vp,
                        v_q: vq,
                        v_delta: vd,
                        kodaira,
                        is_real: true,
                    });
                }
                let pairs = (deg - roots.len()) / 2;
                if pairs > 0 {
                    groups.push(FiberReport {
                        location: FiberLocation::ConjugatePairs { factor: form, pairs: pairs as u32 },
                        v_p: vp,
                        v_q: vq,
                        v_delta: vd,
                        kodaira,
                        is_real: false,
                    });
                }
            }
        }
    }

    real.sort_by(|a, b| match (&a.location, &b.location) {
        (FiberLocation::Point(x), FiberLocation::Point(y)) => cmp_circle(x, y),
        _ => Ordering::Equal,
    });
    groups.sort_by(|a, b| {
        (a.v_delta, a.v_p, a.v_q, a.kodaira).cmp(&(b.v_delta, b.v_p, b.v_q, b.kodaira))
    });
    let mut fibers = real;
    fibers.extend(groups);
    let out = FiberClassification { fibers, invariants: SurfaceInvariants::for_k(t.k) };
    let sum = out.euler_sum();
    if sum != 12 * t.k {
        return Err(WeierstrassError::Inconsistent(format!(
            "Euler numbers sum to {sum}, expected {}",
            12 * t.k
        )));
    }
    Ok(out)
}

/// Every real root of `Δ` (including ∞) is simple.
pub fn is_real_generic(t: &WeierstrassTriple) -> bool {
    let delta = t.discriminant();
    if delta.v_exponent().expect("nonzero") > 1 {
        return false;
    }
    let (g, _) = delta.affine().squarefree();
    if g.degree().unwrap_or(0) == 0 {
        return true;
    }
    isolate_real_roots(&BinForm::from_affine(&g, g.degree().unwrap()))
        .expect("nonzero")
        .is_empty()
}

/// Sign of the first nonzero coefficient of a form (0 for the zero form).
pub fn leading_sign(f: &BinForm) -> i8 {
    f.coeffs()
        .iter()
        .find(|c| !c.is_zero())
        .map_or(0, |c| if c.is_positive() { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn f(c: &[i64]) -> BinForm {
        BinForm::from_ints(c)
    }

    fn mono(i: usize, d: usize, c: i64) -> BinForm {
        BinForm::monomial(i, d).scale(&int(c))
    }

    pub(crate) fn w1() -> WeierstrassTriple {
        let h = f(&[-1, 0, 1]).mul(&f(&[-4, 0, 1])).mul(&f(&[-9, 0, 1]));
        let q = h.add(&mono(0, 6, 2)).unwrap();
        WeierstrassTriple::validate(1, mono(0, 4, -3), q).unwrap()
    }

    #[test]
    fn validation_examples() {
        let t = WeierstrassTriple::validate(1, mono(2, 4, 1), mono(3, 6, 1)).unwrap();
        assert_eq!(t.discriminant(), mono(6, 12, 31));
        let e = WeierstrassTriple::validate(1, mono(4, 4, 1), mono(6, 6, 1)).unwrap_err();
        assert_eq!(e, WeierstrassError::NonMinimal(NonMinimalWitness::Point(CirclePoint::Finite(int(0)))));
        assert_eq!(e.to_string(), "non-minimal Weierstrass data at u=0 (v(p) >= 4 and v(q) >= 6)");
        assert_eq!(
            WeierstrassTriple::validate(1, BinForm::zero(4), BinForm::zero(6)),
            Err(WeierstrassError::DeltaIdenticallyZero)
        );
        // p = 0, q = v^6 fails at ∞
        assert_eq!(
            WeierstrassTriple::validate(1, BinForm::zero(4), mono(0, 6, 1)),
            Err(WeierstrassError::NonMinimal(NonMinimalWitness::Point(CirclePoint::Infinity)))
        );
        assert!(matches!(
            WeierstrassTriple::validate(1, mono(0, 5, 1), mono(0, 6, 1)),
            Err(WeierstrassError::DegreeMismatch { which: "p", .. })
        ));
        // common factor (u² + v²)^6 in q and ^4 in p has no real point
        let c = f(&[1, 0, 1]);
        let e = WeierstrassTriple::validate(2, c.pow(4), c.pow(6)).unwrap_err();
        assert!(matches!(e, WeierstrassError::NonMinimal(NonMinimalWitness::Factor(_))));
    }

    #[test]
    fn non_minimality_matches_common_factor() {
        // (u^a v^(4-a), u^b v^(6-b)): valuations (a, b) at 0 and (4-a, 6-b) at ∞
        for a in 0..=4usize {
            for b in 0..=6usize {
                let r = WeierstrassTriple::validate(1, mono(a, 4, 1), mono(b, 6, 1));
                let expect_bad = (a >= 4 && b >= 6) || (a == 0 && b == 0);
                assert_eq!(matches!(r, Err(WeierstrassError::NonMinimal(_))), expect_bad, "{a} {b}");
                assert!(r.is_ok() || expect_bad);
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        let t = w1();
        let h = f(&[-1, 0, 1]).mul(&f(&[-4, 0, 1])).mul(&f(&[-9, 0, 1]));
        let want = h.mul(&h.add(&mono(0, 6, 4)).unwrap()).scale(&int(27));
        assert_eq!(t.discriminant(), want);
    }

    #[test]
    fn j_examples() {
        let t = WeierstrassTriple::validate(1, BinForm::zero(4), f(&[1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(t.j_invariant().p3_over_q2_constant(), Some(int(0)));
        let t = WeierstrassTriple::validate(1, f(&[1, 0, 0, 0, 1]), BinForm::zero(6)).unwrap();
        let j = t.j_invariant();
        assert_eq!(j.p3_over_q2, None);
        assert_eq!(j.standard_constant(), Some(int(1728)));
        let t = WeierstrassTriple::validate(1, mono(2, 4, 1), mono(3, 6, 1)).unwrap();
        assert_eq!(t.j_invariant().p3_over_q2_constant(), Some(rat(4, 27)));
    }

    #[test]
    fn rescale_and_normalize() {
        let t = WeierstrassTriple::validate(1, mono(0, 4, 1), mono(0, 6, 1).add(&mono(6, 6, 1)).unwrap()).unwrap();
        assert_eq!(t.rescale(&int(1)).unwrap(), t);
        assert_eq!(t.rescale(&int(-1)).unwrap(), t);
        let s = t.rescale(&int(2)).unwrap();
        assert_eq!(s.p(), &mono(0, 4, 16));
        assert_eq!(s.q(), &mono(0, 6, 64).add(&mono(6, 6, 64)).unwrap());
        assert_eq!(s.normalize(), t);
        assert_eq!(t.rescale(&int(0)), Err(WeierstrassError::ZeroScale));

        let half = t.rescale(&rat(1, 3)).unwrap().rescale(&rat(5, 7)).unwrap();
        let n = half.normalize();
        assert_eq!(n, t);
        assert_eq!(n.normalize(), n);
        assert_ne!(t.twisted().normalize(), t.normalize());
        // q with content 1/2 clears to integers
        let u = WeierstrassTriple::validate(1, mono(0, 4, 1).scale(&rat(1, 2)), mono(0, 6, 1).add(&mono(6, 6, 1)).unwrap().scale(&rat(1, 2))).unwrap();
        let n = u.normalize();
        assert!(n.p().coeffs().iter().chain(n.q().coeffs()).all(|c| c.is_integer()));
        assert_eq!(n.normalize(), n);
    }

    #[test]
    fn kodaira_table() {
        use KodairaType::*;
        let cases = [
            (Some(0), Some(0), 3, Some(I(3))),
            (Some(1), Some(1), 2, Some(II)),
            (None, Some(1), 2, Some(II)),
            (Some(1), Some(2), 3, Some(III)),
            (Some(1), None, 3, Some(III)),
            (Some(2), Some(2), 4, Some(IV)),
            (Some(2), Some(3), 6, Some(IStar(0))),
            (Some(2), Some(4), 6, Some(IStar(0))),
            (Some(3), Some(3), 6, Some(IStar(0))),
            (Some(2), Some(3), 8, Some(IStar(2))),
            (Some(2), None, 6, Some(IStar(0))),
            (None, Some(3), 6, Some(IStar(0))),
            (Some(3), Some(4), 8, Some(IVStar)),
            (Some(3), Some(5), 9, Some(IIIStar)),
            (Some(4), Some(5), 10, Some(IIStar)),
            (None, Some(5), 10, Some(IIStar)),
            (Some(4), Some(6), 12, None),
            (Some(0), Some(0), 0, None),
        ];
        for (vp, vq, vd, want) in cases {
            assert_eq!(KodairaType::from_valuations(vp, vq, vd), want, "{vp:?} {vq:?} {vd}");
        }
        assert_eq!(IStar(3).euler_number(), 9);
        assert_eq!(IStar(0).to_string(), "I0*");
    }

    #[test]
    fn classify_examples() {
        let t = WeierstrassTriple::validate(1, mono(2, 4, 1), mono(3, 6, 1)).unwrap();
        let c = classify_fibers(&t).unwrap();
        assert_eq!(c.fibers.len(), 2);
        for fr in &c.fibers {
            assert_eq!((fr.v_p, fr.v_q, fr.v_delta), (Some(2), Some(3), 6));
            assert_eq!(fr.kodaira, KodairaType::IStar(0));
        }
        assert_eq!(c.fibers[0].location, FiberLocation::Point(CirclePoint::Finite(int(0))));
        assert_eq!(c.fibers[1].location, FiberLocation::Point(CirclePoint::Infinity));

        let t = WeierstrassTriple::validate(1, mono(0, 4, -3), mono(1, 6, 1)).unwrap();
        let c = classify_fibers(&t).unwrap();
        let got: Vec<_> = c.fibers.iter().map(|f| (f.location.clone(), f.kodaira)).collect();
        assert_eq!(
            got,
            vec![
                (FiberLocation::Point(CirclePoint::Finite(int(-2))), KodairaType::I(1)),
                (FiberLocation::Point(CirclePoint::Finite(int(2))), KodairaType::I(1)),
                (FiberLocation::Point(CirclePoint::Infinity), KodairaType::IIStar),
            ]
        );
        assert_eq!((c.fibers[2].v_p, c.fibers[2].v_q, c.fibers[2].v_delta), (Some(4), Some(5), 10));

        let t = WeierstrassTriple::validate(1, BinForm::zero(4), f(&[1, 0, 0, 0, 0, 0, 1])).unwrap();
        let c = classify_fibers(&t).unwrap();
        assert_eq!(c.fibers.len(), 1);
        let fr = &c.fibers[0];
        assert!(matches!(fr.location, FiberLocation::ConjugatePairs { pairs: 3, .. }));
        assert_eq!((fr.v_p, fr.v_q, fr.v_delta, fr.kodaira), (None, Some(1), 2, KodairaType::II));
        assert_eq!(c.euler_sum(), 12);
        assert_eq!(c.invariants, SurfaceInvariants { k: 1, chi_top: 12, h11: 10, b2: 10 });
    }

    #[test]
    fn w1_fibers() {
        let c = classify_fibers(&w1()).unwrap();
        assert_eq!(c.fibers.len(), 12);
        assert!(c.fibers.iter().all(|f| f.kodaira == KodairaType::I(1) && f.is_real));
        assert!(is_real_generic(&w1()));
        let t = WeierstrassTriple::validate(1, mono(2, 4, 1), mono(3, 6, 1)).unwrap();
        assert!(!is_real_generic(&t));
    }
}
