//! Real fiber types, arcs of ℙ¹(ℝ), and the topology of the real locus.

use std::fmt;

use crate::arith::{isolate_real_roots, sign_at, valuation_at, BinForm, CirclePoint, IntPoly, Rational, SturmChain};
use crate::error::TopologyError;
use crate::weierstrass::{KodairaType, WeierstrassTriple};

/// Real type of a real singular fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RealFiberType {
    /// Nodal with conjugate tangents: a circle plus an isolated point.
    I1Plus,
    /// Nodal with real tangents: a connected figure-eight-like curve.
    I1Minus,
    OtherReal(KodairaType),
}

impl RealFiberType {
    pub fn flipped(self) -> Self {
        match self {
            RealFiberType::I1Plus => RealFiberType::I1Minus,
            RealFiberType::I1Minus => RealFiberType::I1Plus,
            other => other,
        }
    }
}

impl fmt::Display for RealFiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealFiberType::I1Plus => write!(f, "I1+"),
            RealFiberType::I1Minus => write!(f, "I1-"),
            RealFiberType::OtherReal(k) => write!(f, "{k}"),
        }
    }
}

/// Real type of a nodal fiber: `I1-` iff `q > 0` at the node.
pub fn real_type_of_nodal(t: &WeierstrassTriple, c: &CirclePoint) -> Result<RealFiberType, TopologyError> {
    let delta = t.discriminant();
    if valuation_at(&delta, c).expect("nonzero") != 1 {
        return Err(TopologyError::NotNodal(c.clone()));
    }
    match sign_at(t.q(), c) {
        1 => Ok(RealFiberType::I1Minus),
        -1 => Ok(RealFiberType::I1Plus),
        _ => Err(TopologyError::Inconsistent(format!("q vanishes at the node {c}"))),
    }
}

/// Number of connected components of a smooth real fiber: 2 iff `Δ < 0`.
pub fn smooth_fiber_components(t: &WeierstrassTriple, c: &CirclePoint) -> Result<u8, TopologyError> {
    match sign_at(&t.discriminant(), c) {
        0 => Err(TopologyError::SingularFiber(c.clone())),
        1 => Ok(1),
        _ => Ok(2),
    }
}

/// One arc of the base circle between consecutive real singular fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
    /// Rational interior point used to read the component count.
    pub sample: Rational,
    pub components: u8,
    pub start_type: RealFiberType,
    pub end_type: RealFiberType,
}

/// Cyclic decomposition of ℙ¹(ℝ) by the real nodal fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcDecomposition {
    pub singular_points: Vec<(CirclePoint, RealFiberType)>,
    pub arcs: Vec<Arc>,
    pub arc_plus: u32,
    pub arc_minus: u32,
}

impl ArcDecomposition {
    pub fn count(&self, ty: RealFiberType) -> u32 {
        self.singular_points.iter().filter(|(_, t)| *t == ty).count() as u32
    }
}

/// Real points of `Δ = 0` with their Kodaira types, read from valuations.
fn non_nodal_real_fibers(t: &WeierstrassTriple, points: &[CirclePoint]) -> Vec<(CirclePoint, KodairaType)> {
    let delta = t.discriminant();
    let mut out = Vec::new();
    for c in points {
        let vd = valuation_at(&delta, c).expect("nonzero");
        if vd > 1 {
            let vp = (!t.p().is_zero()).then(|| valuation_at(t.p(), c).unwrap());
            let vq = (!t.q().is_zero()).then(|| valuation_at(t.q(), c).unwrap());
            let k = KodairaType::from_valuations(vp, vq, vd).expect("minimal triple");
            out.push((c.clone(), k));
        }
    }
    out
}

fn has_multiple_real_root(f: &BinForm) -> bool {
    if f.v_exponent().is_some_and(|e| e >= 2) {
        return true;
    }
    let a = f.affine();
    let g = a.gcd(&a.derivative());
    g.degree().is_some_and(|d| d >= 1) && SturmChain::new(&IntPoly::from_poly(&g.squarefree().1)).count_all() > 0
}

/// Arc decomposition of a real-generic triple with at least one real
/// singular fiber.
pub fn arc_decomposition(t: &WeierstrassTriple) -> Result<ArcDecomposition, TopologyError> {
    let delta = t.discriminant();
    let order = isolate_real_roots(&delta).expect("nonzero");
    if order.is_empty() {
        return Err(TopologyError::NoRealSingularFibers);
    }
    if has_multiple_real_root(&delta) {
        let offenders = non_nodal_real_fibers(t, order.points());
        if !offenders.is_empty() {
            return Err(TopologyError::NotRealGeneric(offenders));
        }
    }
    let singular_points = order
        .points()
        .iter()
        .map(|c| match sign_at(t.q(), c) {
            1 => Ok((c.clone(), RealFiberType::I1Minus)),
            -1 => Ok((c.clone(), RealFiberType::I1Plus)),
            _ => Err(TopologyError::Inconsistent(format!("q vanishes at the node {c}"))),
        })
        .collect::<Result<Vec<_>, TopologyError>>()?;

    let mut arcs = Vec::new();
    for span in order.arcs() {
        let components = smooth_fiber_components(t, &CirclePoint::Finite(span.sample.clone()))?;
        arcs.push(Arc {
            start: span.start,
            end: span.end,
            sample: span.sample,
            components,
            start_type: singular_points[span.start].1,
            end_type: singular_points[span.end].1,
        });
    }
    for (i, a) in arcs.iter().enumerate() {
        let b = &arcs[(i + 1) % arcs.len()];
        if a.components == b.components {
            return Err(TopologyError::Inconsistent(format!(
                "component counts do not alternate at {}",
                singular_points[a.end].0
            )));
        }
    }
    let tally = |ty: RealFiberType| {
        arcs.iter()
            .filter(|a| a.components == 2 && a.start_type == ty && a.end_type == ty)
            .count() as u32
    };
    let arc_plus = tally(RealFiberType::I1Plus);
    let arc_minus = tally(RealFiberType::I1Minus);
    Ok(ArcDecomposition { singular_points, arcs, arc_plus, arc_minus })
}

/// Homeomorphism type of a closed connected surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceType {
    /// Orientable of genus `g` (`S0` is the sphere, `S1` the torus).
    Orientable(u32),
    /// Connected sum of `q ≥ 1` projective planes (`V2` is the Klein bottle).
    NonOrientable(u32),
}

impl SurfaceType {
    pub fn h1(&self) -> u32 {
        match self {
            SurfaceType::Orientable(g) => 2 * g,
            SurfaceType::NonOrientable(q) => *q,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - i64::from(self.h1())
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, SurfaceType::Orientable(_))
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceType::Orientable(g) => write!(f, "S{g}"),
            SurfaceType::NonOrientable(q) => write!(f, "V{q}"),
        }
    }
}

/// Pass/fail of each bound for one real locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub k: u32,
    /// `h0 ≤ 5k`
    pub components: bool,
    /// `h1 ≤ 10k`
    pub h1_bound: bool,
    /// `h1 ≡ 0 mod 2`
    pub h1_even: bool,
    /// orientable iff `k` even
    pub orientability: bool,
}

impl BoundVerdict {
    pub fn all_pass(&self) -> bool {
        self.components && self.h1_bound && self.h1_even && self.orientability
    }

    /// Human-readable list of violated statements.
    pub fn violations(&self) -> Vec<String> {
        let k = self.k;
        let mut v = Vec::new();
        if !self.components {
            v.push(format!("component bound h0 <= 5k = {}", 5 * k));
        }
        if !self.h1_bound {
            v.push(format!("h1 <= h11 = 10k = {}", 10 * k));
        }
        if !self.h1_even {
            v.push("h1 even".to_string());
        }
        if !self.orientability {
            v.push("orientable iff k even".to_string());
        }
        v
    }
}

/// Checks `h0 ≤ 5k`, `h1 ≤ 10k`, `h1` even and orientability ⇔ `k` even.
pub fn check_bounds(h0: u32, h1: u32, orientable: bool, k: u32) -> BoundVerdict {
    BoundVerdict {
        k,
        components: h0 <= 5 * k,
        h1_bound: h1 <= 10 * k,
        h1_even: h1 % 2 == 0,
        orientability: orientable == (k % 2 == 0),
    }
}

/// Mod-2 Betti numbers and component types of the real locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTopologyReport {
    pub k: u32,
    pub h0: u32,
    pub h1: u32,
    pub h2: u32,
    pub h_star: u32,
    pub chi: i64,
    pub orientable: bool,
    /// Sorted: spheres first, then the distinguished component.
    pub components: Vec<SurfaceType>,
    pub i1_plus: u32,
    pub i1_minus: u32,
    pub arc_plus: u32,
    pub arc_minus: u32,
    /// Set when no fiber over ℝ is singular; the component count then comes
    /// from the sign of `Δ` alone.
    pub caveat: Option<String>,
    pub bounds: BoundVerdict,
}

fn closed_component(k: u32, h1: u32) -> SurfaceType {
    if k % 2 == 0 {
        SurfaceType::Orientable(h1 / 2)
    } else {
        SurfaceType::NonOrientable(h1)
    }
}

fn assemble(k: u32, components: Vec<SurfaceType>, counts: (u32, u32, u32, u32), caveat: Option<String>) -> RealTopologyReport {
    let h0 = components.len() as u32;
    let h1: u32 = components.iter().map(SurfaceType::h1).sum();
    let chi: i64 = components.iter().map(SurfaceType::euler_characteristic).sum();
    let orientable = components.iter().all(SurfaceType::is_orientable);
    RealTopologyReport {
        k,
        h0,
        h1,
        h2: h0,
        h_star: 2 * h0 + h1,
        chi,
        orientable,
        components,
        i1_plus: counts.0,
        i1_minus: counts.1,
        arc_plus: counts.2,
        arc_minus: counts.3,
        caveat,
        bounds: check_bounds(h0, h1, orientable, k),
    }
}

/// Topology of `X(ℝ)`: `h0 = 1 + arc⁺`, `h1 = 2 + 2·arc⁻` when real
/// singular fibers exist; otherwise one or two tori / Klein bottles
/// according to the sign of `Δ`.
pub fn betti(t: &WeierstrassTriple) -> Result<RealTopologyReport, TopologyError> {
    let k = t.k();
    let decomposition = match arc_decomposition(t) {
        Ok(d) => d,
        Err(TopologyError::NoRealSingularFibers) => {
            let n = smooth_fiber_components(t, &CirclePoint::Infinity)?;
            let comps = vec![closed_component(k, 2); n as usize];
            let caveat = format!(
                "no real singular fibers; {n} component{} read from the sign of the discriminant",
                if n == 1 { "" } else { "s" }
            );
            return Ok(assemble(k, comps, (0, 0, 0, 0), Some(caveat)));
        }
        Err(e) => return Err(e),
    };
    let plus = decomposition.count(RealFiberType::I1Plus);
    let minus = decomposition.count(RealFiberType::I1Minus);
    let h0 = 1 + decomposition.arc_plus;
    let h1 = 2 + 2 * decomposition.arc_minus;
    let chi = i64::from(plus) - i64::from(minus);
    if chi != 2 * i64::from(h0) - i64::from(h1) {
        return Err(TopologyError::Inconsistent(format!(
            "chi = [I1+] - [I1-] = {chi} but 2h0 - h1 = {}",
            2 * i64::from(h0) - i64::from(h1)
        )));
    }
    let mut comps = vec![SurfaceType::Orientable(0); (h0 - 1) as usize];
    comps.push(closed_component(k, h1));
    Ok(assemble(
        k,
        comps,
        (plus, minus, decomposition.arc_plus, decomposition.arc_minus),
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::arith::BinForm;

    fn f(c: &[i64]) -> BinForm {
        BinForm::from_ints(c)
    }

    fn w1() -> WeierstrassTriple {
        let h = f(&[-1, 0, 1]).mul(&f(&[-4, 0, 1])).mul(&f(&[-9, 0, 1]));
        let q = h.add(&BinForm::constant(int(2), 6)).unwrap();
        WeierstrassTriple::validate(1, BinForm::constant(int(-3), 4), q).unwrap()
    }

    #[test]
    fn nodal_types_of_w1() {
        let t = w1();
        assert_eq!(real_type_of_nodal(&t, &CirclePoint::Finite(int(1))).unwrap(), RealFiberType::I1Minus);
        let tw = t.twisted();
        assert_eq!(real_type_of_nodal(&tw, &CirclePoint::Finite(int(1))).unwrap(), RealFiberType::I1Plus);
        // the root of h + 4v^6 in (0, 1)
        let h4 = f(&[-36, 0, 49, 0, -14, 0, 1]).add(&BinForm::constant(int(4), 6)).unwrap();
        let c = CirclePoint::from_isolating_interval(&h4, &int(0), &int(1)).unwrap();
        assert_eq!(real_type_of_nodal(&t, &c).unwrap(), RealFiberType::I1Plus);
        assert!(matches!(
            real_type_of_nodal(&t, &CirclePoint::Finite(int(0))),
            Err(TopologyError::NotNodal(_))
        ));
    }

    #[test]
    fn smooth_components() {
        let t = w1();
        assert_eq!(smooth_fiber_components(&t, &CirclePoint::Finite(int(0))).unwrap(), 1);
        assert_eq!(smooth_fiber_components(&t, &CirclePoint::Finite(rat(-299, 100))).unwrap(), 2);
        assert!(smooth_fiber_components(&t, &CirclePoint::Finite(int(2))).is_err());
    }

    #[test]
    fn w1_arcs() {
        use RealFiberType::*;
        let d = arc_decomposition(&w1()).unwrap();
        let types: Vec<_> = d.singular_points.iter().map(|(_, t)| *t).collect();
        assert_eq!(
            types,
            vec![I1Minus, I1Plus, I1Plus, I1Minus, I1Minus, I1Plus, I1Plus, I1Minus, I1Minus, I1Plus, I1Plus, I1Minus]
        );
        let two: Vec<_> = d.arcs.iter().filter(|a| a.components == 2).collect();
        assert_eq!(two.len(), 6);
        assert!(two.iter().all(|a| a.start_type != a.end_type));
        assert_eq!((d.arc_plus, d.arc_minus), (0, 0));
        let tw = arc_decomposition(&w1().twisted()).unwrap();
        assert!(tw.singular_points.iter().zip(&d.singular_points).all(|(a, b)| a.1 == b.1.flipped()));
        assert_eq!((tw.arc_plus, tw.arc_minus), (0, 0));
    }

    #[test]
    fn w1_betti() {
        let r = betti(&w1()).unwrap();
        assert_eq!((r.h0, r.h1, r.h2, r.chi), (1, 2, 1, 0));
        assert_eq!(r.components, vec![SurfaceType::NonOrientable(2)]);
        assert_eq!((r.i1_plus, r.i1_minus), (6, 6));
        assert!(r.bounds.all_pass());
        assert!(!r.orientable);
    }

    #[test]
    fn no_real_fibers() {
        let t = WeierstrassTriple::validate(1, BinForm::zero(4), f(&[1, 0, 0, 0, 0, 0, 1])).unwrap();
        let r = betti(&t).unwrap();
        assert_eq!((r.h0, r.h1, r.chi), (1, 2, 0));
        assert_eq!(r.components, vec![SurfaceType::NonOrientable(2)]);
        assert!(r.caveat.is_some());
    }

    #[test]
    fn non_generic_refused() {
        let mut p = vec![0; 5];
        p[2] = 1;
        let mut q = vec![0; 7];
        q[3] = 1;
        let t = WeierstrassTriple::validate(1, f(&p), f(&q)).unwrap();
        match betti(&t) {
            Err(TopologyError::NotRealGeneric(v)) => {
                assert_eq!(v.len(), 2);
                assert!(v.iter().all(|(_, k)| *k == KodairaType::IStar(0)));
                assert!(v[1].0.is_infinity());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bound_checks() {
        assert!(check_bounds(1, 2, false, 1).all_pass());
        let v = check_bounds(6, 0, false, 1);
        assert!(!v.components && v.h1_bound && v.h1_even);
        let v = check_bounds(1, 3, false, 1);
        assert!(!v.h1_even && v.components);
        assert!(!check_bounds(1, 2, true, 1).orientability);
        assert_eq!(v.violations(), vec!["h1 even".to_string()]);
    }
}
