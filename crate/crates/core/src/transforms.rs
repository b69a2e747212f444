//! The twist `(p, q) ↦ (p, -q)` and the I₀*-transformation.

use std::cmp::Ordering;

use crate::arith::{cmp_circle, format_rational, BinForm, CirclePoint, Rational};
use crate::error::{TopologyError, TransformError};
use crate::topology::real_type_of_nodal;
use crate::weierstrass::{classify_fibers, FiberLocation, FiberReport, KodairaType, WeierstrassTriple};

/// `(p, -q)`: the same complex surface with the other real structure.
pub fn twist(t: &WeierstrassTriple) -> WeierstrassTriple {
    t.twisted()
}

/// The two points `a < b` at which an I₀*-transformation inserts I₀* fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct I0StarParams {
    a: Rational,
    b: Rational,
}

impl I0StarParams {
    /// Orders the pair; rejects `a = b`.
    pub fn new(a: Rational, b: Rational) -> Result<Self, TransformError> {
        match a.cmp(&b) {
            Ordering::Less => Ok(I0StarParams { a, b }),
            Ordering::Greater => Ok(I0StarParams { a: b, b: a }),
            Ordering::Equal => Err(TransformError::InvalidParams(format!(
                "a = b = {}",
                format_rational(&a)
            ))),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `(u - a v)(u - b v)`
    pub fn quadratic(&self) -> BinForm {
        BinForm::linear(&self.a).mul(&BinForm::linear(&self.b))
    }

    /// Neither point may be a zero of `p`, `q` or `Δ`.
    pub fn check(&self, t: &WeierstrassTriple) -> Result<(), TransformError> {
        let delta = t.discriminant();
        for x in [&self.a, &self.b] {
            for (name, f) in [("p", t.p()), ("q", t.q()), ("the discriminant", &delta)] {
                if f.affine().eval(x) == Rational::from_integer(0.into()) {
                    return Err(TransformError::InvalidParams(format!(
                        "{} is a zero of {name}",
                        format_rational(x)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether `c` lies in the open interval `(a, b)`.
    pub fn contains(&self, c: &CirclePoint) -> bool {
        cmp_circle(&CirclePoint::Finite(self.a.clone()), c) == Ordering::Less
            && cmp_circle(c, &CirclePoint::Finite(self.b.clone())) == Ordering::Less
    }
}

/// `(r² p, r³ q)` with `r = (u - a v)(u - b v)`; raises `k` by one.
pub fn i0star_transform(t: &WeierstrassTriple, params: &I0StarParams) -> Result<WeierstrassTriple, TransformError> {
    params.check(t)?;
    let r = params.quadratic();
    let p = r.pow(2).mul(t.p());
    let q = r.pow(3).mul(t.q());
    Ok(WeierstrassTriple::validate(t.k() + 1, p, q)?)
}

/// Applies the I₀*-transformation once per entry.
pub fn iterate_i0star(t: &WeierstrassTriple, params: &[I0StarParams]) -> Result<WeierstrassTriple, TransformError> {
    params.iter().try_fold(t.clone(), |acc, p| i0star_transform(&acc, p))
}

/// Outcome of every check in [`verify_i0star`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct I0StarVerification {
    pub k_incremented: bool,
    /// `Δ_Y = (u - a v)⁶ (u - b v)⁶ Δ`
    pub delta_relation: bool,
    pub j_preserved: bool,
    /// Fibers at `a` and `b` have valuations `(2, 3, 6)`, type I₀*.
    pub new_fibers: bool,
    /// All other fibers keep location and type.
    pub other_fibers: bool,
    /// Real nodal types flip exactly inside `(a, b)`.
    pub flips: bool,
    /// `Σ e` grows by 12.
    pub euler_sum: bool,
    pub flipped_count: u32,
}

impl I0StarVerification {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            (self.k_incremented, "k incremented"),
            (self.delta_relation, "discriminant relation"),
            (self.j_preserved, "j preserved"),
            (self.new_fibers, "two new I0* fibers"),
            (self.other_fibers, "other fibers unchanged"),
            (self.flips, "real types flip exactly inside (a, b)"),
            (self.euler_sum, "Euler sum grows by 12"),
        ];
        checks.iter().filter(|(ok, _)| !ok).map(|(_, name)| *name).collect()
    }
}

fn same_report(x: &FiberReport, y: &FiberReport) -> bool {
    let loc = match (&x.location, &y.location) {
        (FiberLocation::Point(a), FiberLocation::Point(b)) => a.same_point(b),
        (a, b) => a == b,
    };
    loc && (x.v_p, x.v_q, x.v_delta, x.kodaira, x.is_real) == (y.v_p, y.v_q, y.v_delta, y.kodaira, y.is_real)
}

/// Checks every property of the I₀*-transformation `t_y` of `t`.
pub fn verify_i0star(
    t: &WeierstrassTriple,
    params: &I0StarParams,
    t_y: &WeierstrassTriple,
) -> Result<I0StarVerification, TransformError> {
    let r = params.quadratic();
    let delta_relation = t_y.discriminant() == r.pow(6).mul(&t.discriminant());
    let j_preserved = t.j_invariant() == t_y.j_invariant();
    let k_incremented = t_y.k() == t.k() + 1;

    let fx = classify_fibers(t)?;
    let fy = classify_fibers(t_y)?;
    let euler_sum = fy.euler_sum() == fx.euler_sum() + 12;

    let at = |x: &Rational| CirclePoint::Finite(x.clone());
    let is_new = |f: &FiberReport| match &f.location {
        FiberLocation::Point(c) => c.same_point(&at(params.a())) || c.same_point(&at(params.b())),
        _ => false,
    };
    let new: Vec<&FiberReport> = fy.fibers.iter().filter(|f| is_new(f)).collect();
    let new_fibers = new.len() == 2
        && new
            .iter()
            .all(|f| (f.v_p, f.v_q, f.v_delta, f.kodaira) == (Some(2), Some(3), 6, KodairaType::IStar(0)));
    let rest: Vec<&FiberReport> = fy.fibers.iter().filter(|f| !is_new(f)).collect();
    let other_fibers =
        rest.len() == fx.fibers.len() && rest.iter().zip(&fx.fibers).all(|(y, x)| same_report(x, y));

    let mut flips = true;
    let mut flipped_count = 0;
    for (c, f) in fx.real_fibers() {
        if f.kodaira != KodairaType::I(1) {
            continue;
        }
        let before = real_type_of_nodal(t, c)?;
        let after = real_type_of_nodal(t_y, c).map_err(TopologyError::from)?;
        let flipped = after == before.flipped() && after != before;
        flipped_count += u32::from(flipped);
        if flipped != params.contains(c) {
            flips = false;
        }
    }
    Ok(I0StarVerification {
        k_incremented,
        delta_relation,
        j_preserved,
        new_fibers,
        other_fibers,
        flips,
        euler_sum,
        flipped_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn f(c: &[i64]) -> BinForm {
        BinForm::from_ints(c)
    }

    fn w1() -> WeierstrassTriple {
        let h = f(&[-1, 0, 1]).mul(&f(&[-4, 0, 1])).mul(&f(&[-9, 0, 1]));
        let q = h.add(&BinForm::constant(int(2), 6)).unwrap();
        WeierstrassTriple::validate(1, BinForm::constant(int(-3), 4), q).unwrap()
    }

    #[test]
    fn twist_is_an_involution() {
        assert_eq!(twist(&twist(&w1())).normalize(), w1().normalize());
        assert_eq!(twist(&w1()).discriminant(), w1().discriminant());
        let a = classify_fibers(&w1()).unwrap();
        let b = classify_fibers(&twist(&w1())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn i0star_on_w1_far_interval() {
        let params = I0StarParams::new(int(4), int(5)).unwrap();
        let y = i0star_transform(&w1(), &params).unwrap();
        assert_eq!(y.k(), 2);
        let v = verify_i0star(&w1(), &params, &y).unwrap();
        assert!(v.passed(), "{:?}", v.failures());
        assert_eq!(v.flipped_count, 0);
    }

    #[test]
    fn i0star_on_w1_flips_four() {
        let params = I0StarParams::new(rat(5, 2), int(0)).unwrap();
        assert_eq!(params.a(), &int(0));
        let y = i0star_transform(&w1(), &params).unwrap();
        let v = verify_i0star(&w1(), &params, &y).unwrap();
        assert!(v.passed(), "{:?}", v.failures());
        // r4, 1, 2, r5
        assert_eq!(v.flipped_count, 4);
    }

    #[test]
    fn invalid_params() {
        assert!(matches!(I0StarParams::new(int(1), int(1)), Err(TransformError::InvalidParams(_))));
        let params = I0StarParams::new(int(1), int(5)).unwrap();
        assert!(matches!(i0star_transform(&w1(), &params), Err(TransformError::InvalidParams(_))));
    }

    #[test]
    fn iteration() {
        assert_eq!(iterate_i0star(&w1(), &[]).unwrap(), w1());
        let ps = [I0StarParams::new(int(4), int(5)).unwrap(), I0StarParams::new(int(6), int(7)).unwrap()];
        let y = iterate_i0star(&w1(), &ps).unwrap();
        assert_eq!(y.k(), 3);
        let c = classify_fibers(&y).unwrap();
        let stars = c.fibers.iter().filter(|f| f.kodaira == KodairaType::IStar(0)).count();
        assert_eq!(stars, 4);
        assert_eq!(c.euler_sum(), 36);
    }
}
