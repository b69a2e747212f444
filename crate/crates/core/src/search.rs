//! Constructive search for surfaces with a prescribed number of real components.
//!
//! Candidates come from three real sections `s₁ + s₂ + s₃ = 0` of degree
//! `2k`. The cubic `(x - s₁)(x - s₂)(x - s₃)` has `p = s₁s₂ + s₁s₃ + s₂s₃` and
//! `q₀ = -s₁s₂s₃`; its real fiber has an oval between the two lower
//! sections and an unbounded branch through the top one, degenerating where
//! two sections cross. Replacing `q₀` by `q₀ + δr` for small `δ > 0` smooths
//! each crossing according to the sign of `r` there:
//!
//! | crossing | `r < 0`                       | `r > 0`                          |
//! |----------|-------------------------------|----------------------------------|
//! | lower    | oval pinched off (two I₁⁺)    | oval passes through              |
//! | upper    | oval stays apart              | oval joins the branch (two I₁⁻)  |
//!
//! With `g ≥ 1` pinched lower crossings and no joins the real locus is the
//! main component plus `g` spheres. For a single component every lower
//! crossing passes and the upper crossings join.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{isolate_real_roots, rational::int, sign_at, BinForm, CircleOrder, CirclePoint, Poly, Rational};
use crate::error::TransformError;
use crate::oracle::{compare, OracleComparison};
use crate::topology::{betti, RealTopologyReport};
use crate::weierstrass::{is_real_generic, WeierstrassTriple};

/// Limits and seed for [`search_extremal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_candidates: u64,
    pub rng_seed: u64,
    /// Largest numerator of the random section roots.
    pub coefficient_height_bound: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_candidates: 2000, rng_seed: 0, coefficient_height_bound: 6 }
    }
}

/// A verified search result.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub triple: WeierstrassTriple,
    pub report: RealTopologyReport,
    pub comparison: OracleComparison,
    /// Index of the accepted candidate (0-based).
    pub candidate: u64,
}

/// Kind of a crossing of two sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crossing {
    /// The third section lies above the crossing pair.
    Lower,
    /// The third section lies below.
    Upper,
}

/// Three sections summing to zero, given through `d₁₂ = s₁ - s₂` and
/// `d₂₃ = s₂ - s₃` (the sections are scaled by 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub d12: BinForm,
    pub d23: BinForm,
}

impl Arrangement {
    pub fn sections(&self) -> [BinForm; 3] {
        let two = int(2);
        let s1 = self.d12.scale(&two).add(&self.d23).unwrap();
        let s2 = self.d23.sub(&self.d12).unwrap();
        let s3 = self.d12.neg().sub(&self.d23.scale(&two)).unwrap();
        [s1, s2, s3]
    }

    /// `(p, q₀)` of the unperturbed cubic.
    pub fn weierstrass_forms(&self) -> (BinForm, BinForm) {
        let [s1, s2, s3] = self.sections();
        let p = s1.mul(&s2).add(&s1.mul(&s3)).unwrap().add(&s2.mul(&s3)).unwrap();
        let q = s1.mul(&s2).mul(&s3).neg();
        (p, q)
    }

    /// Crossings in circle order, or `None` when two crossings coincide,
    /// a crossing is tangential, or a crossing sits at `∞`.
    pub fn crossings(&self) -> Option<Vec<(CirclePoint, Crossing)>> {
        let d13 = self.d12.add(&self.d23).unwrap();
        let all = self.d12.mul(&self.d23).mul(&d13);
        if all.is_zero() || all.v_exponent() != Some(0) {
            return None;
        }
        let (g, _) = all.affine().squarefree();
        if g.degree() != Some(0) {
            return None;
        }
        let mut out = Vec::new();
        for (form, other, lower_sign) in [(&self.d12, &self.d23, -1), (&self.d23, &self.d12, 1), (&d13, &self.d12, -1)] {
            for c in isolate_real_roots(form).ok()?.points() {
                let kind = if sign_at(other, c) == lower_sign { Crossing::Lower } else { Crossing::Upper };
                out.push((c.clone(), kind));
            }
        }
        let order = CircleOrder::from_points(out.iter().map(|(c, _)| c.clone()).collect());
        let sorted = order
            .points()
            .iter()
            .map(|c| (c.clone(), out.iter().find(|(d, _)| d.same_point(c)).unwrap().1))
            .collect();
        Some(sorted)
    }
}

/// A form of degree `degree` with the prescribed nonzero sign at each point
/// of `points` (in circle order, none at `∞`), or `None` if the degree is
/// too small.
pub fn form_with_signs(points: &[CirclePoint], signs: &[i8], degree: usize) -> Option<BinForm> {
    assert_eq!(points.len(), signs.len());
    let n = points.len();
    if n == 0 {
        return (degree % 2 == 0).then(|| BinForm::from_ints(&[1, 0, 1]).pow(degree as u32 / 2));
    }
    let order = CircleOrder::from_points(points.to_vec());
    assert_eq!(order.len(), n, "distinct points");
    let arcs = order.arcs();
    let mut poly = Poly::one();
    let mut separators = 0;
    for (i, arc) in arcs.iter().enumerate() {
        if signs[i] != signs[(i + 1) % n] {
            poly = &poly * &Poly::linear_root(&arc.sample);
            separators += 1;
        }
    }
    if separators > degree || (degree - separators) % 2 == 1 {
        return None;
    }
    let rest = BinForm::from_ints(&[1, 0, 1]).pow(((degree - separators) / 2) as u32);
    let mut r = BinForm::from_affine(&poly, separators).mul(&rest);
    if sign_at(&r, &points[0]) != signs[0] {
        r = r.neg();
    }
    debug_assert!(points.iter().zip(signs).all(|(c, s)| sign_at(&r, c) == *s));
    Some(r)
}

fn random_root(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    let n = rng.gen_range(-height..=height);
    let d = if rng.gen_bool(0.5) { 1 } else { 2 };
    Rational::new(n.into(), d.into())
}

/// A random form of degree `2k` with mostly real, distinct roots.
fn random_section_difference(rng: &mut ChaCha8Rng, k: u32, height: i64) -> BinForm {
    let deg = 2 * k as usize;
    let real = if rng.gen_bool(0.8) { deg } else { deg - 2 };
    let mut roots: Vec<Rational> = Vec::new();
    while roots.len() < real {
        let r = random_root(rng, height);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let mut f = BinForm::constant(int(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }), 0);
    for r in &roots {
        f = f.mul(&BinForm::linear(r));
    }
    for _ in 0..(deg - real) / 2 {
        let c = int(rng.gen_range(1..=height.max(1) * height.max(1)));
        f = f.mul(&BinForm::new(vec![c, int(0), int(1)]));
    }
    f
}

/// Random arrangement for candidate generation.
pub fn random_arrangement(rng: &mut ChaCha8Rng, k: u32, height: i64) -> Arrangement {
    Arrangement {
        d12: random_section_difference(rng, k, height),
        d23: random_section_difference(rng, k, height),
    }
}

/// Perturbation signs that aim at `target` real components, or `None` if
/// the crossings do not allow it.
pub fn target_signs(crossings: &[(CirclePoint, Crossing)], target: u32, rng: &mut ChaCha8Rng) -> Option<Vec<i8>> {
    let lower: Vec<usize> = (0..crossings.len()).filter(|&i| crossings[i].1 == Crossing::Lower).collect();
    if target == 1 {
        if lower.len() == crossings.len() {
            return None;
        }
        return Some(crossings.iter().map(|_| 1).collect());
    }
    let gaps = (target - 1) as usize;
    if lower.len() < gaps {
        return None;
    }
    let chosen: Vec<usize> = lower.choose_multiple(rng, gaps).copied().collect();
    Some(
        (0..crossings.len())
            .map(|i| match crossings[i].1 {
                Crossing::Lower if chosen.contains(&i) => -1,
                Crossing::Lower => 1,
                Crossing::Upper => -1,
            })
            .collect(),
    )
}

/// Perturbation sizes tried for each candidate.
const DELTAS: [(i64, i64); 5] = [(1, 4), (1, 16), (1, 64), (1, 256), (1, 1024)];

/// Triple `(p, q₀ + δ r)` for an arrangement, if valid.
pub fn perturbed_triple(k: u32, arrangement: &Arrangement, r: &BinForm, delta: &Rational) -> Option<WeierstrassTriple> {
    let (p, q0) = arrangement.weierstrass_forms();
    let q = q0.add(&r.scale(delta)).ok()?;
    WeierstrassTriple::validate(k, p, q).ok()
}

fn evaluate(t: &WeierstrassTriple, target: u32) -> Option<(RealTopologyReport, OracleComparison)> {
    if !is_real_generic(t) {
        return None;
    }
    let report = betti(t).ok()?;
    if report.h0 != target || !report.bounds.all_pass() {
        return None;
    }
    let cmp = compare(t).ok()?;
    cmp.agree().then_some((report, cmp))
}

/// Deterministic search for a real-generic triple with `χ(O_X) = k` and
/// exactly `h0_target` real components; the result is oracle-verified.
pub fn search_extremal(k: u32, h0_target: u32, budget: SearchBudget) -> Result<SearchOutcome, TransformError> {
    if h0_target > 5 * k {
        return Err(TransformError::TargetExceedsBound { target: h0_target, bound: 5 * k });
    }
    if h0_target == 0 || k == 0 {
        return Err(TransformError::NotFound { tried: 0 });
    }
    let height = i64::from(budget.coefficient_height_bound.max(1));
    for idx in 0..budget.max_candidates {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.rng_seed);
        rng.set_stream(idx);
        let arrangement = random_arrangement(&mut rng, k, height);
        let Some(crossings) = arrangement.crossings() else { continue };
        let Some(signs) = target_signs(&crossings, h0_target, &mut rng) else { continue };
        let points: Vec<CirclePoint> = crossings.iter().map(|(c, _)| c.clone()).collect();
        let Some(r) = form_with_signs(&points, &signs, 6 * k as usize) else { continue };
        for (n, d) in DELTAS {
            let delta = Rational::new(n.into(), d.into());
            let Some(t) = perturbed_triple(k, &arrangement, &r, &delta) else { continue };
            let t = t.normalize();
            if let Some((report, comparison)) = evaluate(&t, h0_target) {
                return Ok(SearchOutcome { triple: t, report, comparison, candidate: idx });
            }
        }
    }
    Err(TransformError::NotFound { tried: budget.max_candidates })
}
