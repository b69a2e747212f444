//! Independent computation of the mod-2 Betti numbers of `X(ℝ)` from an
//! exact cell decomposition.
//!
//! The base circle is cut at every real root of `Δ`, at `∞`, and at optional
//! extra rational points. Over each vertex the real fiber is decomposed into
//! cells from the exact root configuration of `x³ + p x + q`; over each open
//! arc the fiber of one rational sample is swept along the arc. The only
//! inputs are real root counts of the fiber cubics (Sturm sequences) and the
//! position of the double root at nodal fibers.

use std::fmt;

use crate::arith::{
    format_rational, isolate_real_roots, rational::int, sign_at, valuation_at, BinForm,
    CircleOrder, CirclePoint, IntPoly, Poly, Rational, SturmChain,
};
use crate::error::TopologyError;
use crate::topology::betti;
use crate::weierstrass::{KodairaType, WeierstrassTriple};

/// Combinatorial type of one real fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceKind {
    /// Smooth fiber whose cubic has 1 or 3 real roots.
    Smooth { roots: u8 },
    /// Double root below the simple root: circle plus isolated point.
    NodeIsolated,
    /// Double root above the simple root: connected nodal curve.
    NodeCrossing,
}

/// Position of a vertex inside a fiber: a real root of the cubic (by rank
/// among the distinct real roots) or the point at infinity of the fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum FiberVertex {
    Root(u8),
    Origin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Half {
    Upper,
    Lower,
}

impl Half {
    fn flipped(self) -> Half {
        match self {
            Half::Upper => Half::Lower,
            Half::Lower => Half::Upper,
        }
    }
}

type FiberEdge = (FiberVertex, FiberVertex, Half);

impl SliceKind {
    fn vertices(&self) -> Vec<FiberVertex> {
        let n = match self {
            SliceKind::Smooth { roots } => *roots,
            _ => 2,
        };
        let mut v: Vec<_> = (0..n).map(FiberVertex::Root).collect();
        v.push(FiberVertex::Origin);
        v
    }

    fn edges(&self) -> Vec<FiberEdge> {
        use FiberVertex::*;
        let both = |a, b| [(a, b, Half::Upper), (a, b, Half::Lower)];
        match self {
            SliceKind::Smooth { roots: 1 } => both(Root(0), Origin).to_vec(),
            SliceKind::Smooth { .. } => [both(Root(0), Root(1)), both(Root(2), Origin)].concat(),
            // isolated double root 0, branch through root 1
            SliceKind::NodeIsolated => both(Root(1), Origin).to_vec(),
            // simple root 0, node at 1
            SliceKind::NodeCrossing => [both(Root(0), Root(1)), both(Root(1), Origin)].concat(),
        }
    }

    /// Where the `i`-th of `m` real roots of a nearby smooth fiber ends up.
    fn limit_of_root(&self, i: u8, m: u8) -> Option<FiberVertex> {
        use FiberVertex::Root;
        Some(match (self, m) {
            (SliceKind::Smooth { roots }, _) if *roots == m => Root(i),
            (SliceKind::NodeIsolated, 3) => Root([0, 0, 1][i as usize]),
            (SliceKind::NodeCrossing, 3) => Root([0, 1, 1][i as usize]),
            (SliceKind::NodeIsolated, 1) => Root(1),
            (SliceKind::NodeCrossing, 1) => Root(0),
            _ => return None,
        })
    }

    /// Number of connected components of the real fiber.
    pub fn circles(&self) -> u8 {
        match self {
            SliceKind::Smooth { roots: 1 } => 1,
            SliceKind::Smooth { .. } => 2,
            SliceKind::NodeIsolated => 2,
            SliceKind::NodeCrossing => 1,
        }
    }
}

impl fmt::Display for SliceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceKind::Smooth { roots } => write!(f, "smooth, {roots} real roots"),
            SliceKind::NodeIsolated => write!(f, "node with isolated point"),
            SliceKind::NodeCrossing => write!(f, "node with real branches"),
        }
    }
}

/// One fiber used in the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSlice {
    pub location: CirclePoint,
    pub kind: SliceKind,
    /// Whether the slice sits over an open arc (a sample) rather than a vertex.
    pub is_sample: bool,
}

impl fmt::Display for FiberSlice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = if self.is_sample { "sample" } else { "vertex" };
        write!(f, "{role} u={}: {} ({} circle(s))", self.location, self.kind, self.kind.circles())
    }
}

/// Finite cell complex with mod-2 boundary maps.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellComplex {
    pub vertices: usize,
    /// Endpoints of each edge (equal for loops).
    pub edges: Vec<[usize; 2]>,
    /// Boundary edges of each face, each listed once per incidence.
    pub faces: Vec<Vec<usize>>,
}

impl CellComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    fn boundary1(&self) -> Vec<BitRow> {
        self.edges
            .iter()
            .map(|[a, b]| {
                let mut r = BitRow::new(self.vertices);
                r.toggle(*a);
                r.toggle(*b);
                r
            })
            .collect()
    }

    fn boundary2(&self) -> Vec<BitRow> {
        self.faces
            .iter()
            .map(|f| {
                let mut r = BitRow::new(self.edges.len());
                for &e in f {
                    r.toggle(e);
                }
                r
            })
            .collect()
    }

    /// `∂₁ ∘ ∂₂ = 0` over GF(2).
    pub fn boundary_squared_is_zero(&self) -> bool {
        let d1 = self.boundary1();
        self.boundary2().iter().all(|f| {
            let mut acc = BitRow::new(self.vertices);
            for e in f.ones() {
                acc.xor(&d1[e]);
            }
            acc.is_zero()
        })
    }

    /// `(h0, h1, h2)` with `GF(2)` coefficients.
    pub fn betti_mod2(&self) -> (usize, usize, usize) {
        let r1 = rank(self.boundary1());
        let r2 = rank(self.boundary2());
        (self.vertices - r1, self.edges.len() - r1 - r2, self.faces.len() - r2)
    }

    /// Connected components by union-find over the 1-skeleton.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for [a, b] in &self.edges {
            let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        (0..self.vertices).filter(|&x| find(&mut parent, x) == x).count()
    }
}

#[derive(Clone, Debug)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(n: usize) -> Self {
        BitRow(vec![0; n.div_ceil(64)])
    }
    fn toggle(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn xor(&mut self, o: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a ^= b;
        }
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
}

fn rank(mut rows: Vec<BitRow>) -> usize {
    let mut pivots: Vec<(usize, BitRow)> = Vec::new();
    let mut r = 0;
    for row in rows.iter_mut() {
        for (p, prow) in &pivots {
            if row.0[p / 64] >> (p % 64) & 1 == 1 {
                row.xor(prow);
            }
        }
        if let Some(p) = row.lowest() {
            for (_, prow) in pivots.iter_mut() {
                if prow.0[p / 64] >> (p % 64) & 1 == 1 {
                    prow.xor(row);
                }
            }
            pivots.push((p, row.clone()));
            r += 1;
        }
    }
    r
}

/// Result of [`oracle_topology`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTopology {
    pub h0: u32,
    pub h1: u32,
    pub h2: u32,
    pub chi: i64,
    pub slices: Vec<FiberSlice>,
    pub complex: CellComplex,
}

impl OracleTopology {
    /// One line per slice, in circle order.
    pub fn trace(&self) -> String {
        self.slices.iter().map(|s| format!("{s}\n")).collect()
    }
}

/// Number of real roots of `x³ + a x + b` for rationals with `4a³ + 27b² ≠ 0`.
fn cubic_real_roots(a: &Rational, b: &Rational) -> u8 {
    let cubic = Poly::new(vec![b.clone(), a.clone(), int(0), int(1)]);
    SturmChain::new(&IntPoly::from_poly(&cubic)).count_all() as u8
}

/// Double root `α` and simple root `β` of a rational cubic with a node.
fn node_roots(a: &Rational, b: &Rational) -> (Rational, Rational) {
    let cubic = Poly::new(vec![b.clone(), a.clone(), int(0), int(1)]);
    let g = cubic.gcd(&cubic.derivative());
    assert_eq!(g.degree(), Some(1), "cubic has a double root");
    let alpha = -g.coeff(0);
    let square = &g * &g;
    let rest = cubic.div_exact(&square).expect("double root divides");
    (alpha, -rest.coeff(0))
}

/// Fiber coefficients `(p, q)` at a rational point or at `∞`.
fn rational_coefficients(t: &WeierstrassTriple, c: &CirclePoint) -> Option<(Rational, Rational)> {
    match c {
        CirclePoint::Finite(u) => Some((t.p().affine().eval(u), t.q().affine().eval(u))),
        CirclePoint::Infinity => Some((
            t.p().coeffs()[t.p().degree()].clone(),
            t.q().coeffs()[t.q().degree()].clone(),
        )),
        CirclePoint::Algebraic(_) => None,
    }
}

fn vertex_slice(t: &WeierstrassTriple, delta: &BinForm, c: &CirclePoint) -> Result<SliceKind, TopologyError> {
    if sign_at(delta, c) != 0 {
        let (a, b) = rational_coefficients(t, c).expect("smooth vertices are rational");
        return Ok(SliceKind::Smooth { roots: cubic_real_roots(&a, &b) });
    }
    Ok(match rational_coefficients(t, c) {
        Some((a, b)) => {
            let (alpha, beta) = node_roots(&a, &b);
            if alpha < beta {
                SliceKind::NodeIsolated
            } else {
                SliceKind::NodeCrossing
            }
        }
        None => {
            // α = -3q/2p and β = 3q/p, so α < β iff p·q > 0
            if sign_at(t.p(), c) * sign_at(t.q(), c) > 0 {
                SliceKind::NodeIsolated
            } else {
                SliceKind::NodeCrossing
            }
        }
    })
}

/// `(h0, h1, χ)` of `X(ℝ)` from the cell complex, with optional extra
/// rational cut points.
pub fn oracle_topology_with(t: &WeierstrassTriple, extra: &[Rational]) -> Result<OracleTopology, TopologyError> {
    let delta = t.discriminant();
    let roots = isolate_real_roots(&delta).expect("nonzero");
    let mut offenders = Vec::new();
    for c in roots.points() {
        let vd = valuation_at(&delta, c).expect("nonzero");
        if vd > 1 {
            let vp = (!t.p().is_zero()).then(|| valuation_at(t.p(), c).unwrap());
            let vq = (!t.q().is_zero()).then(|| valuation_at(t.q(), c).unwrap());
            offenders.push((c.clone(), KodairaType::from_valuations(vp, vq, vd).expect("minimal")));
        }
    }
    if !offenders.is_empty() {
        return Err(TopologyError::NotRealGeneric(offenders));
    }

    let mut points = roots.points().to_vec();
    points.push(CirclePoint::Infinity);
    points.extend(extra.iter().cloned().map(CirclePoint::Finite));
    let order = CircleOrder::from_points(points);

    let mut slices = Vec::new();
    let mut complex = CellComplex::default();
    // per base vertex: fiber vertex ids and fiber edge ids
    let mut vertex_ids = Vec::new();
    let mut edge_ids = Vec::new();
    let mut kinds = Vec::new();
    for c in order.points() {
        let kind = vertex_slice(t, &delta, c)?;
        let mut vids = Vec::new();
        for fv in kind.vertices() {
            vids.push((fv, complex.vertices));
            complex.vertices += 1;
        }
        let id_of = |fv: FiberVertex| vids.iter().find(|(v, _)| *v == fv).unwrap().1;
        let mut eids = Vec::new();
        for (a, b, h) in kind.edges() {
            eids.push(((a, b, h), complex.edges.len()));
            complex.edges.push([id_of(a), id_of(b)]);
        }
        slices.push(FiberSlice { location: c.clone(), kind, is_sample: false });
        vertex_ids.push(vids);
        edge_ids.push(eids);
        kinds.push(kind);
    }

    let odd = t.k() % 2 == 1;
    let mut sample_slices = Vec::new();
    for arc in order.arcs() {
        let u = CirclePoint::Finite(arc.sample.clone());
        let (a, b) = rational_coefficients(t, &u).unwrap();
        let m = cubic_real_roots(&a, &b);
        let kind = SliceKind::Smooth { roots: m };
        sample_slices.push(FiberSlice { location: u, kind, is_sample: true });

        // leaving ∞ towards -∞ reverses the sign of y when k is odd
        let flip_left = odd && order.points()[arc.start].is_infinity();
        let ends = [(arc.start, flip_left), (arc.end, false)];

        let lim = |end: usize, fv: FiberVertex| -> Result<FiberVertex, TopologyError> {
            match fv {
                FiberVertex::Origin => Ok(FiberVertex::Origin),
                FiberVertex::Root(i) => kinds[end].limit_of_root(i, m).ok_or_else(|| {
                    TopologyError::Inconsistent(format!(
                        "{m} real roots at u={} do not fit the fiber at {}",
                        format_rational(&arc.sample),
                        order.points()[end]
                    ))
                }),
            }
        };
        let vid = |end: usize, fv: FiberVertex| vertex_ids[end].iter().find(|(v, _)| *v == fv).unwrap().1;

        let mut vertical = Vec::new();
        for fv in kind.vertices() {
            let l = lim(arc.start, fv)?;
            let r = lim(arc.end, fv)?;
            vertical.push((fv, complex.edges.len()));
            complex.edges.push([vid(arc.start, l), vid(arc.end, r)]);
        }
        for (a, b, h) in kind.edges() {
            let mut boundary: Vec<usize> = vertical
                .iter()
                .filter(|(fv, _)| *fv == a || *fv == b)
                .map(|(_, e)| *e)
                .collect();
            for (end, flip) in ends {
                let (la, lb) = (lim(end, a)?, lim(end, b)?);
                let half = if flip { h.flipped() } else { h };
                for ((c, d, h2), e) in &edge_ids[end] {
                    if *h2 == half && la <= *c && *d <= lb {
                        boundary.push(*e);
                    }
                }
            }
            complex.faces.push(boundary);
        }
    }

    if !complex.boundary_squared_is_zero() {
        return Err(TopologyError::Inconsistent("cell complex boundary does not square to zero".into()));
    }
    let (h0, h1, h2) = complex.betti_mod2();
    let chi = complex.euler_characteristic();
    if complex.components() != h0 || h2 != h0 || chi != 2 * h0 as i64 - h1 as i64 {
        return Err(TopologyError::Inconsistent(format!(
            "cell complex is not a closed surface: components {}, betti ({h0}, {h1}, {h2}), chi {chi}",
            complex.components()
        )));
    }

    // interleave vertex and sample slices in circle order
    let mut all = Vec::new();
    for (v, s) in slices.into_iter().zip(sample_slices) {
        all.push(v);
        all.push(s);
    }
    Ok(OracleTopology { h0: h0 as u32, h1: h1 as u32, h2: h2 as u32, chi, slices: all, complex })
}

/// `(h0, h1, χ)` of `X(ℝ)` from the cell complex.
pub fn oracle_topology(t: &WeierstrassTriple) -> Result<OracleTopology, TopologyError> {
    oracle_topology_with(t, &[])
}

/// Main pipeline against oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub main: (u32, u32, i64),
    pub oracle: (u32, u32, i64),
    pub trace: String,
}

impl OracleComparison {
    pub fn agree(&self) -> bool {
        self.main == self.oracle
    }
}

impl fmt::Display for OracleComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.main;
        let (x, y, z) = self.oracle;
        if self.agree() {
            write!(f, "agree: h0={a} h1={b} chi={c}")
        } else {
            write!(f, "DISAGREE: main (h0={a}, h1={b}, chi={c}) vs oracle (h0={x}, h1={y}, chi={z})\n{}", self.trace)
        }
    }
}

/// Runs both computations on `t`.
pub fn compare(t: &WeierstrassTriple) -> Result<OracleComparison, TopologyError> {
    let main = betti(t)?;
    let oracle = oracle_topology(t)?;
    Ok(OracleComparison {
        main: (main.h0, main.h1, main.chi),
        oracle: (oracle.h0, oracle.h1, oracle.chi),
        trace: oracle.trace(),
    })
}
