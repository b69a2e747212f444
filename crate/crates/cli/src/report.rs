//! Machine-readable report of fibers, arcs, topology and bounds, and its
//! text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use ellsurf_core::arith::{format_rational, parse_rational, BinForm, CirclePoint};
use ellsurf_core::error::TopologyError;
use ellsurf_core::topology::{arc_decomposition, betti, real_type_of_nodal, RealTopologyReport, SurfaceType};
use ellsurf_core::weierstrass::{classify_fibers, FiberLocation, KodairaType, WeierstrassTriple};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocationDoc {
    Finite { u: String },
    Infinity,
    /// The unique root of `defining` in the open interval `(lo, hi)`.
    Algebraic { defining: Vec<String>, lo: String, hi: String },
    /// `2·pairs` non-real fibers at the roots of `factor`.
    ConjugatePairs { factor: Vec<String>, pairs: u32 },
}

fn form_strings(f: &BinForm) -> Vec<String> {
    f.coeffs().iter().map(format_rational).collect()
}

fn form_from_strings(c: &[String]) -> Option<BinForm> {
    c.iter().map(|s| parse_rational(s)).collect::<Option<Vec<_>>>().map(BinForm::new)
}

impl LocationDoc {
    pub fn from_point(c: &CirclePoint) -> Self {
        match c {
            CirclePoint::Finite(r) => LocationDoc::Finite { u: format_rational(r) },
            CirclePoint::Infinity => LocationDoc::Infinity,
            CirclePoint::Algebraic(a) => LocationDoc::Algebraic {
                defining: form_strings(a.defining()),
                lo: format_rational(a.lo()),
                hi: format_rational(a.hi()),
            },
        }
    }

    fn from_fiber(loc: &FiberLocation) -> Self {
        match loc {
            FiberLocation::Point(c) => Self::from_point(c),
            FiberLocation::ConjugatePairs { factor, pairs } => {
                LocationDoc::ConjugatePairs { factor: form_strings(factor), pairs: *pairs }
            }
        }
    }

    fn render(&self) -> String {
        let form = |c: &[String]| form_from_strings(c).map_or_else(|| c.join(" "), |f| f.to_string());
        match self {
            LocationDoc::Finite { u } => format!("u = {u}"),
            LocationDoc::Infinity => "u = ∞".to_string(),
            LocationDoc::Algebraic { defining, lo, hi } => format!("u in ({lo}, {hi}), root of {}", form(defining)),
            LocationDoc::ConjugatePairs { factor, pairs } => {
                format!("{pairs} conjugate pair{} at roots of {}", if *pairs == 1 { "" } else { "s" }, form(factor))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsDoc {
    pub chi_o: u32,
    pub chi_top: u32,
    pub h11: u32,
    pub b2: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDoc {
    pub location: LocationDoc,
    pub v_p: Option<u32>,
    pub v_q: Option<u32>,
    pub v_delta: u32,
    pub kodaira: String,
    /// Euler number of one fiber.
    pub euler: u32,
    /// Number of fibers the row stands for.
    pub count: u32,
    pub real: bool,
    /// `"I1+"` or `"I1-"` for real nodal fibers.
    pub real_type: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointDoc {
    pub location: LocationDoc,
    pub real_type: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDoc {
    /// Indices into `singular_points`.
    pub start: usize,
    pub end: usize,
    pub sample: String,
    /// Components of the smooth real fiber over the arc.
    pub fiber_components: u8,
    pub start_type: String,
    pub end_type: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsDoc {
    pub h0_at_most_5k: bool,
    pub h1_at_most_10k: bool,
    pub h1_even: bool,
    pub orientable_iff_k_even: bool,
    pub all_pass: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffenderDoc {
    pub location: LocationDoc,
    pub kodaira: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TopologyDoc {
    Computed {
        singular_points: Vec<SingularPointDoc>,
        arcs: Vec<ArcDoc>,
        arc_plus: u32,
        arc_minus: u32,
        i1_plus: u32,
        i1_minus: u32,
        h0: u32,
        h1: u32,
        h2: u32,
        h_star: u32,
        chi: i64,
        orientable: bool,
        components: Vec<String>,
        caveat: Option<String>,
        bounds: BoundsDoc,
    },
    /// Some real singular fiber is not nodal; the topology is not computed.
    NotRealGeneric { offenders: Vec<OffenderDoc> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub k: u32,
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub discriminant: Vec<String>,
    pub invariants: InvariantsDoc,
    pub euler_sum: u32,
    pub fibers: Vec<FiberDoc>,
    pub topology: TopologyDoc,
}

fn bounds_doc(r: &RealTopologyReport) -> BoundsDoc {
    let b = r.bounds;
    BoundsDoc {
        h0_at_most_5k: b.components,
        h1_at_most_10k: b.h1_bound,
        h1_even: b.h1_even,
        orientable_iff_k_even: b.orientability,
        all_pass: b.all_pass(),
        violations: b.violations(),
    }
}

fn topology_doc(t: &WeierstrassTriple) -> Result<TopologyDoc, TopologyError> {
    let r = match betti(t) {
        Ok(r) => r,
        Err(TopologyError::NotRealGeneric(offenders)) => {
            return Ok(TopologyDoc::NotRealGeneric {
                offenders: offenders
                    .iter()
                    .map(|(c, k)| OffenderDoc { location: LocationDoc::from_point(c), kodaira: k.to_string() })
                    .collect(),
            })
        }
        Err(e) => return Err(e),
    };
    let (singular_points, arcs) = match arc_decomposition(t) {
        Ok(d) => (
            d.singular_points
                .iter()
                .map(|(c, ty)| SingularPointDoc { location: LocationDoc::from_point(c), real_type: ty.to_string() })
                .collect(),
            d.arcs
                .iter()
                .map(|a| ArcDoc {
                    start: a.start,
                    end: a.end,
                    sample: format_rational(&a.sample),
                    fiber_components: a.components,
                    start_type: a.start_type.to_string(),
                    end_type: a.end_type.to_string(),
                })
                .collect(),
        ),
        Err(TopologyError::NoRealSingularFibers) => (Vec::new(), Vec::new()),
        Err(e) => return Err(e),
    };
    Ok(TopologyDoc::Computed {
        singular_points,
        arcs,
        arc_plus: r.arc_plus,
        arc_minus: r.arc_minus,
        i1_plus: r.i1_plus,
        i1_minus: r.i1_minus,
        h0: r.h0,
        h1: r.h1,
        h2: r.h2,
        h_star: r.h_star,
        chi: r.chi,
        orientable: r.orientable,
        components: r.components.iter().map(SurfaceType::to_string).collect(),
        caveat: r.caveat.clone(),
        bounds: bounds_doc(&r),
    })
}

impl ReportDocument {
    pub fn build(t: &WeierstrassTriple) -> Result<Self, TopologyError> {
        let c = classify_fibers(t)?;
        let mut fibers = Vec::new();
        for f in &c.fibers {
            let real_type = match &f.location {
                FiberLocation::Point(p) if f.kodaira == KodairaType::I(1) => Some(real_type_of_nodal(t, p)?.to_string()),
                _ => None,
            };
            fibers.push(FiberDoc {
                location: LocationDoc::from_fiber(&f.location),
                v_p: f.v_p,
                v_q: f.v_q,
                v_delta: f.v_delta,
                kodaira: f.kodaira.to_string(),
                euler: f.kodaira.euler_number(),
                count: f.multiplicity(),
                real: f.is_real,
                real_type,
            });
        }
        let inv = c.invariants;
        Ok(ReportDocument {
            k: t.k(),
            p: form_strings(t.p()),
            q: form_strings(t.q()),
            discriminant: form_strings(&t.discriminant()),
            invariants: InvariantsDoc { chi_o: inv.k, chi_top: inv.chi_top, h11: inv.h11, b2: inv.b2 },
            euler_sum: c.euler_sum(),
            fibers,
            topology: topology_doc(t)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let form = |c: &[String]| form_from_strings(c).map_or_else(String::new, |f| f.to_string());
        let _ = writeln!(s, "Weierstrass data, k = {}", self.k);
        let _ = writeln!(s, "  p = {}", form(&self.p));
        let _ = writeln!(s, "  q = {}", form(&self.q));
        let inv = &self.invariants;
        let _ = writeln!(
            s,
            "Invariants: chi(O) = {}, chi_top = {}, h11 = {}, b2 = {}",
            inv.chi_o, inv.chi_top, inv.h11, inv.b2
        );
        let _ = writeln!(s, "Singular fibers (Euler sum {} = 12k: {}):", self.euler_sum, self.euler_sum == inv.chi_top);
        for f in &self.fibers {
            let v = |x: Option<u32>| x.map_or_else(|| "inf".to_string(), |x| x.to_string());
            let _ = writeln!(
                s,
                "  {:<6} e={:<2} v(p,q,D)=({},{},{})  {}{}",
                f.kodaira,
                f.euler,
                v(f.v_p),
                v(f.v_q),
                f.v_delta,
                f.location.render(),
                f.real_type.as_ref().map_or_else(String::new, |r| format!("  [{r}]")),
            );
        }
        match &self.topology {
            TopologyDoc::NotRealGeneric { offenders } => {
                let at: Vec<String> = offenders
                    .iter()
                    .map(|o| match &o.location {
                        LocationDoc::Finite { u } => u.clone(),
                        LocationDoc::Infinity => "∞".to_string(),
                        other => other.render(),
                    })
                    .collect();
                let _ = writeln!(s, "Topology: refused: non-nodal real fibers at {}", at.join(", "));
            }
            TopologyDoc::Computed {
                singular_points,
                arcs,
                arc_plus,
                arc_minus,
                h0,
                h1,
                h2,
                h_star,
                chi,
                orientable,
                components,
                caveat,
                bounds,
                ..
            } => {
                if !arcs.is_empty() {
                    let _ = writeln!(s, "Arcs of the real base circle:");
                    for a in arcs {
                        let _ = writeln!(
                            s,
                            "  [{} .. {}]  sample {}: {} oval{}, ends {} / {}",
                            singular_points[a.start].location.render(),
                            singular_points[a.end].location.render(),
                            a.sample,
                            a.fiber_components,
                            if a.fiber_components == 1 { "" } else { "s" },
                            a.start_type,
                            a.end_type
                        );
                    }
                    let _ = writeln!(s, "  arc+ = {arc_plus}, arc- = {arc_minus}");
                }
                if caveat.is_some() {
                    let names: Vec<&str> = components.iter().map(|c| surface_name(c)).collect();
                    let _ = writeln!(
                        s,
                        "Topology: no real singular fibers; {h0} component{}; {}; see caveat",
                        if *h0 == 1 { "" } else { "s" },
                        names.join(", ")
                    );
                }
                let _ = writeln!(
                    s,
                    "Topology: h0 = {h0}, h1 = {h1}, h2 = {h2}, h* = {h_star}, chi = {chi}, orientable = {}",
                    if *orientable { "yes" } else { "no" }
                );
                let named: Vec<String> = components.iter().map(|c| format!("{c} ({})", surface_name(c))).collect();
                let _ = writeln!(s, "  components: {}", named.join(" + "));
                if let Some(c) = caveat {
                    let _ = writeln!(s, "  caveat: {c}");
                }
                let mark = |ok: bool| if ok { "ok" } else { "VIOLATED" };
                let _ = writeln!(
                    s,
                    "Bounds: h0 <= 5k {}; h1 <= 10k {}; h1 even {}; orientable iff k even {}",
                    mark(bounds.h0_at_most_5k),
                    mark(bounds.h1_at_most_10k),
                    mark(bounds.h1_even),
                    mark(bounds.orientable_iff_k_even)
                );
            }
        }
        s
    }
}

/// Common name of a surface label such as `"S0"` or `"V2"`.
pub fn surface_name(label: &str) -> &'static str {
    match label {
        "S0" => "sphere",
        "S1" => "torus",
        "V1" => "projective plane",
        "V2" => "Klein bottle",
        l if l.starts_with('S') => "orientable surface",
        _ => "non-orientable surface",
    }
}
