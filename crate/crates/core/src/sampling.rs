//! Seeded generators of valid Weierstrass triples for fuzzing.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{rational::int, BinForm, Rational};
use crate::search::{form_with_signs, perturbed_triple, random_arrangement};
use crate::weierstrass::{is_real_generic, WeierstrassTriple};

/// Families drawn from by [`random_triple`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Independent small integer coefficients.
    Dense,
    /// Smoothed three-section arrangements; many real I₁ fibers.
    Arrangement,
    /// `p = L^a p₁`, `q = L^b q₁`: a prescribed non-I₁ fiber at a rational point.
    SpecialFiber,
    /// `p = -3g²`, `q = 2g³ + εh`: I_n fibers at the roots of `g`.
    Degenerating,
}

pub const FAMILIES: [Family; 4] = [Family::Dense, Family::Arrangement, Family::SpecialFiber, Family::Degenerating];

fn random_form(rng: &mut ChaCha8Rng, degree: usize, height: i64) -> BinForm {
    loop {
        let c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-height..=height)).collect();
        if c.iter().any(|&x| x != 0) {
            return BinForm::from_ints(&c);
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into())
}

fn dense(rng: &mut ChaCha8Rng, k: u32) -> Option<WeierstrassTriple> {
    let h = rng.gen_range(1..=9);
    let p = random_form(rng, 4 * k as usize, h);
    let q = random_form(rng, 6 * k as usize, h);
    WeierstrassTriple::validate(k, p, q).ok()
}

fn arrangement(rng: &mut ChaCha8Rng, k: u32) -> Option<WeierstrassTriple> {
    let arr = random_arrangement(rng, k, 6);
    let crossings = arr.crossings()?;
    let points: Vec<_> = crossings.iter().map(|(c, _)| c.clone()).collect();
    let signs: Vec<i8> = points.iter().map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let r = form_with_signs(&points, &signs, 6 * k as usize)?;
    let delta = Rational::new(1.into(), (1i64 << (2 * rng.gen_range(1..=4))).into());
    perturbed_triple(k, &arr, &r, &delta)
}

/// Minimal valuation pairs `(v(p), v(q))` covering every non-I₁ Kodaira type
/// reachable with a single linear factor.
const SPECIAL_VALUATIONS: [(u32, u32); 9] = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (3, 5), (4, 5), (2, 4)];

fn special_fiber(rng: &mut ChaCha8Rng, k: u32) -> Option<WeierstrassTriple> {
    let (a, b) = SPECIAL_VALUATIONS[rng.gen_range(0..SPECIAL_VALUATIONS.len())];
    let (dp, dq) = (4 * k, 6 * k);
    if a > dp || b > dq {
        return None;
    }
    let l = BinForm::linear(&random_point(rng));
    let p = l.pow(a).mul(&random_form(rng, (dp - a) as usize, 5));
    let q = l.pow(b).mul(&random_form(rng, (dq - b) as usize, 5));
    WeierstrassTriple::validate(k, p, q).ok()
}

fn degenerating(rng: &mut ChaCha8Rng, k: u32) -> Option<WeierstrassTriple> {
    let g = random_form(rng, 2 * k as usize, 4);
    let h = random_form(rng, 6 * k as usize, 4);
    let eps = Rational::new(if rng.gen_bool(0.5) { 1 } else { -1 }.into(), rng.gen_range(1i64..=50).into());
    let p = g.pow(2).scale(&int(-3));
    let q = g.pow(3).scale(&int(2)).add(&h.scale(&eps)).ok()?;
    WeierstrassTriple::validate(k, p, q).ok()
}

/// One attempt from `family`; `None` when the draw is not a valid triple.
pub fn sample_family(rng: &mut ChaCha8Rng, k: u32, family: Family) -> Option<WeierstrassTriple> {
    let t = match family {
        Family::Dense => dense(rng, k),
        Family::Arrangement => arrangement(rng, k),
        Family::SpecialFiber => special_fiber(rng, k),
        Family::Degenerating => degenerating(rng, k),
    };
    t.map(|t| t.normalize())
}

/// A valid triple from a uniformly chosen family.
pub fn random_triple(rng: &mut ChaCha8Rng, k: u32) -> WeierstrassTriple {
    loop {
        let family = FAMILIES[rng.gen_range(0..FAMILIES.len())];
        if let Some(t) = sample_family(rng, k, family) {
            return t;
        }
    }
}

/// A valid real-generic triple, from the dense or arrangement family.
pub fn random_real_generic(rng: &mut ChaCha8Rng, k: u32) -> WeierstrassTriple {
    loop {
        let family = if rng.gen_bool(0.5) { Family::Dense } else { Family::Arrangement };
        if let Some(t) = sample_family(rng, k, family) {
            if is_real_generic(&t) {
                return t;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::{classify_fibers, KodairaType};
    use rand::SeedableRng;

    #[test]
    fn families_produce_valid_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for family in FAMILIES {
            let got = (0..40).filter_map(|_| sample_family(&mut rng, 1, family)).count();
            assert!(got > 10, "{family:?}: {got}");
        }
    }

    #[test]
    fn special_families_hit_special_types() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut special = 0;
        for _ in 0..30 {
            if let Some(t) = sample_family(&mut rng, 1, Family::SpecialFiber) {
                let c = classify_fibers(&t).unwrap();
                special += usize::from(c.fibers.iter().any(|f| f.kodaira != KodairaType::I(1)));
            }
        }
        assert!(special > 10);
    }

    #[test]
    fn deterministic() {
        let a = random_triple(&mut ChaCha8Rng::seed_from_u64(9), 2);
        let b = random_triple(&mut ChaCha8Rng::seed_from_u64(9), 2);
        assert_eq!(a, b);
        assert!(is_real_generic(&random_real_generic(&mut ChaCha8Rng::seed_from_u64(3), 1)));
    }
}
