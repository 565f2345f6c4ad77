//! Request/report layer behind the `hyperlat` binary.

use hyperlat::chambers::{choose_region, deformation_types, DeformationOptions, DeformationReport};
use hyperlat::discriminant::DiscriminantGroup;
use hyperlat::isometry::{extend_isometry, is_admissible, is_isometry};
use hyperlat::json::{int_value, vec_value, vecs_value};
use hyperlat::latspec::{parse_spec, Atom, LatticeSpec};
use hyperlat::lattice::Lattice;
use hyperlat::membership::gamma_membership;
use hyperlat::presets::Preset;
use hyperlat::spinor::{in_o_plus, spinor_norm_cd, spinor_norm_orientation};
use hyperlat::sublattice::{glue, Sublattice};
use hyperlat::walls::{enumerate_walls_in_cone, EnumOptions, WallSpec};
use hyperlat::{io, Error, IMatrix};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where the sublattice of a classify request comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Preset(String),
    Explicit { lattice: String, sublattice: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Request {
    LatticeInfo {
        lattice: String,
    },
    Discriminant {
        lattice: String,
    },
    Admissible {
        lattice: String,
        sublattice: String,
        n: Option<i64>,
    },
    WallsEnum {
        lattice: String,
        sublattice: String,
        cone: Option<String>,
        norms: Option<String>,
        signed: bool,
        bound: Option<i64>,
        n: Option<i64>,
    },
    Classify {
        source: Source,
        norms: Option<String>,
        n: Option<i64>,
        dot: bool,
    },
    Extend {
        lattice: String,
        sublattice: String,
        phi: String,
        psi: Option<String>,
    },
    Monodromy {
        lattice: String,
        matrix: String,
        n: Option<i64>,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit code 2.
    Parse(Error),
    /// Well-formed input the mathematics rejects: exit code 1.
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, e) = match self {
            CliError::Parse(e) => ("parse", e),
            CliError::Domain(e) => ("domain", e),
        };
        json!({"kind": kind, "message": e.to_string()})
    }
}

fn parse<T>(r: hyperlat::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::Parse)
}

fn domain<T>(r: hyperlat::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::Domain)
}

/// The result payload of a successful request.
pub enum Output {
    Json(Value),
    Dot(String),
}

/// Full JSON report: tool version, request echo and result or error.
pub fn report(req: &Request, result: &Result<Output, CliError>) -> Value {
    let mut obj = json!({"version": VERSION, "request": req});
    match result {
        Ok(Output::Json(v)) => obj["result"] = v.clone(),
        Ok(Output::Dot(d)) => obj["result"] = json!({"dot": d}),
        Err(e) => obj["error"] = e.to_json(),
    }
    obj
}

/// n for L2 and Ln(n) specs.
fn infer_n(spec: &LatticeSpec) -> Option<i64> {
    match spec.terms.as_slice() {
        [t] if t.scale.is_none() => match t.atom {
            Atom::L2 => Some(2),
            Atom::Ln(n) => Some(n),
            _ => None,
        },
        _ => None,
    }
}

fn lattice_and_n(text: &str, n: Option<i64>) -> Result<(Lattice, Option<i64>), CliError> {
    let spec = parse(parse_spec(text))?;
    let l = parse(spec.build())?;
    Ok((l, n.or_else(|| infer_n(&spec))))
}

fn require_n(n: Option<i64>) -> Result<i64, CliError> {
    n.ok_or_else(|| CliError::Parse(Error::Input("cannot infer n from the lattice; pass --n".into())))
}

fn wall_spec(norms: &Option<String>, n: Option<i64>) -> Result<WallSpec, CliError> {
    match norms {
        Some(s) => parse(WallSpec::parse(s)),
        None => WallSpec::for_n(require_n(n)?).map_err(CliError::Parse),
    }
}

fn rat_str(x: &hyperlat::arith::Rat) -> String {
    x.to_string()
}

fn discriminant_json(d: &DiscriminantGroup) -> Value {
    json!({
        "invariant_factors": vec_value(&d.invariant_factors),
        "order": int_value(&d.order()),
        "length": d.length(),
        "trivial": d.is_trivial(),
        "generators": d.generators.iter().map(|g| g.iter().map(rat_str).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "q": d.qform.iter().map(rat_str).collect::<Vec<_>>(),
        "b": d.pairing.iter().map(|r| r.iter().map(rat_str).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn lattice_json(l: &Lattice) -> Result<Value, CliError> {
    let (p, q) = l.signature();
    let d = domain(DiscriminantGroup::new(l.gram()))?;
    Ok(json!({
        "label": l.label(),
        "rank": l.rank(),
        "signature": [p, q],
        "det": int_value(&l.det()),
        "unimodular": l.is_unimodular(),
        "discriminant": {
            "invariant_factors": vec_value(&d.invariant_factors),
            "order": int_value(&d.order()),
            "length": d.length(),
            "trivial": d.is_trivial(),
        },
    }))
}

fn sublattice_json(m: &Sublattice) -> Value {
    let (p, q, z) = m.signature();
    json!({
        "rank": m.rank(),
        "gram": vecs_value(&m.gram().to_rows()),
        "signature": [p, q, z],
        "primitive": m.is_primitive(),
    })
}

fn read_source(source: &Source) -> Result<(Lattice, Sublattice, Option<i64>), CliError> {
    match source {
        Source::Preset(name) => {
            let p = parse(Preset::by_name(name))?;
            let m = domain(p.sublattice())?;
            Ok((m.ambient().clone(), m, Some(p.n)))
        }
        Source::Explicit { lattice, sublattice } => {
            let (l, n) = lattice_and_n(lattice, None)?;
            let m = parse(io::parse_sublattice(sublattice, &l))?;
            Ok((l, m, n))
        }
    }
}

/// Execute a request.
pub fn run(req: &Request) -> Result<Output, CliError> {
    match req {
        Request::LatticeInfo { lattice } => {
            let (l, _) = lattice_and_n(lattice, None)?;
            Ok(Output::Json(lattice_json(&l)?))
        }
        Request::Discriminant { lattice } => {
            let (l, _) = lattice_and_n(lattice, None)?;
            let d = domain(DiscriminantGroup::new(l.gram()))?;
            Ok(Output::Json(discriminant_json(&d)))
        }
        Request::Admissible { lattice, sublattice, n } => {
            let (l, n) = lattice_and_n(lattice, *n)?;
            let n = require_n(n)?;
            let m = parse(io::parse_sublattice(sublattice, &l))?;
            let rep = domain(is_admissible(&m, n))?;
            let mut out = json!({"sublattice": sublattice_json(&m), "report": rep});
            if m.is_primitive() && !m.is_degenerate() {
                let g = domain(glue(&m))?;
                let (p, q, _) = g.k.signature();
                out["complement"] = json!({"rank": g.k.rank(), "signature": [p, q], "discriminant_order": int_value(&g.disc_k.order())});
                out["glue_order"] = json!(g.order());
            }
            Ok(Output::Json(out))
        }
        Request::WallsEnum { lattice, sublattice, cone, norms, signed, bound, n } => {
            let (l, n) = lattice_and_n(lattice, *n)?;
            let m = parse(io::parse_sublattice(sublattice, &l))?;
            let spec = wall_spec(norms, n)?;
            let opts = EnumOptions { signed: *signed, bound: *bound };
            let cone = match cone {
                Some(c) => parse(io::parse_cone(c, m.rank()))?,
                None => domain(choose_region(&m, &spec, &DeformationOptions { delta_k: false, ..Default::default() }))?.0.cone(),
            };
            let w = domain(enumerate_walls_in_cone(&m, &cone, &spec, &opts))?;
            Ok(Output::Json(json!({
                "spec": spec.to_string(),
                "cone": cone,
                "walls": vecs_value(&w.classes),
                "certificate": w.certificate,
            })))
        }
        Request::Classify { source, norms, n, dot } => {
            let (_, m, n0) = read_source(source)?;
            let n = require_n(n.or(n0))?;
            let spec = wall_spec(norms, Some(n))?;
            let rep = domain(deformation_types(&m, n, &spec, &DeformationOptions::default()))?;
            if *dot {
                Ok(Output::Dot(emit_dot(&rep)))
            } else {
                Ok(Output::Json(classify_json(&rep)))
            }
        }
        Request::Extend { lattice, sublattice, phi, psi } => {
            let (l, _) = lattice_and_n(lattice, None)?;
            let m = parse(io::parse_sublattice(sublattice, &l))?;
            let g = domain(glue(&m))?;
            let phi = parse(io::parse_matrix(phi, m.rank()))?;
            let kr = g.k.rank();
            let psi_m = match psi.as_deref().map(str::trim) {
                None | Some("id") => IMatrix::identity(kr),
                Some("-id") => IMatrix::identity(kr).neg(),
                Some(text) => parse(io::parse_matrix(text, kr))?,
            };
            let ext = domain(extend_isometry(&g, &phi, &psi_m))?;
            let mut out = json!({"extension": ext, "matrix": ext.matrix.as_ref().map(|x| vecs_value(&x.to_rows()))});
            if let Some(sigma) = &ext.matrix {
                out["in_o_plus"] = json!(domain(in_o_plus(&l, sigma))?);
                out["mon2"] = json!(domain(hyperlat::spinor::mon2_condition(&l, sigma))?);
            }
            let extra: Vec<IMatrix> = psi.as_deref().filter(|p| !matches!(p.trim(), "id" | "-id")).map(|_| psi_m.clone()).into_iter().collect();
            out["gamma_membership"] = json!(domain(gamma_membership(&m, &g, &phi, &extra))?);
            Ok(Output::Json(out))
        }
        Request::Monodromy { lattice, matrix, n } => {
            let (l, n) = lattice_and_n(lattice, *n)?;
            let sigma = parse(io::parse_matrix(matrix, l.rank()))?;
            if !domain(is_isometry(&sigma, &l))? {
                return Err(CliError::Domain(Error::NotIsometry));
            }
            let (d, a) = domain(hyperlat::isometry::discriminant_action(&l, &sigma))?;
            let plus = d.is_scalar_action(&a, 1);
            let minus = d.is_scalar_action(&a, -1);
            let cd = domain(spinor_norm_cd(l.gram(), &sigma))?;
            let or = domain(spinor_norm_orientation(l.gram(), &sigma))?;
            let member = match n {
                Some(n) => domain(hyperlat::spinor::in_monodromy(&l, &sigma, n))?,
                None => domain(hyperlat::spinor::mon2_condition(&l, &sigma))?,
            };
            Ok(Output::Json(json!({
                "member": member,
                "verdict": if member { "member" } else { "non_member" },
                "real_spinor_norm": cd,
                "orientation_spinor_norm": or,
                "discriminant_action": if plus { "+1" } else if minus { "-1" } else { "other" },
            })))
        }
    }
}

fn chamber_label(i: usize) -> String {
    format!("C{i}")
}

/// The classify report with chamber labels and orbit data.
pub fn classify_json(rep: &DeformationReport) -> Value {
    let c = &rep.complex;
    let chambers: Vec<Value> = c
        .chambers
        .iter()
        .enumerate()
        .map(|(i, ch)| {
            json!({
                "label": chamber_label(i),
                "signs": ch.signs,
                "witness": vec_value(&ch.witness),
                "vertices": ch.vertices.as_ref().map(|v| vecs_value(v)),
            })
        })
        .collect();
    let adjacency: Vec<Value> = c.adjacency.iter().map(|e| json!([chamber_label(e.a), chamber_label(e.b), e.wall])).collect();
    let symmetries: Vec<Value> = rep
        .symmetries
        .iter()
        .map(|s| {
            json!({
                "matrix": vecs_value(&s.matrix.to_rows()),
                "permutes_walls": s.permutes_walls,
                "chamber_permutation": s.chamber_permutation,
                "verdict": s.membership.verdict,
                "certificate": s.membership.certificate,
                "plus_minus_id": s.membership.plus_minus_id,
            })
        })
        .collect();
    let simple: Vec<Value> = rep
        .delta_k
        .iter()
        .enumerate()
        .map(|(i, d)| json!({"chamber": chamber_label(i), "simple": d.is_simple(), "delta_k": d}))
        .collect();
    let mut out = json!({
        "admissible": rep.admissibility,
        "spec": rep.spec,
        "region": rep.region,
        "walls": {"classes": vecs_value(&c.walls), "certificate": rep.walls.certificate},
        "chambers": chambers,
        "adjacency": adjacency,
        "symmetries": symmetries,
        "orbits": rep.orbits.iter().map(|o| o.iter().map(|&i| chamber_label(i)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "orbit_representatives": rep.orbit_representatives.iter().map(|&i| chamber_label(i)).collect::<Vec<_>>(),
        "per_chamber_simple_flag": simple,
        "assumptions": rep.assumptions,
    });
    if let Some(p) = &rep.vinberg {
        out["vinberg"] = json!({"facets": vecs_value(&p.facets), "vertices": vecs_value(&p.vertices), "certificate": p.certificate});
    }
    match (rep.orbit_count, rep.orbit_interval) {
        (Some(k), _) => out["orbit_count"] = json!(k),
        (None, Some([lo, hi])) => out["orbit_interval"] = json!([lo, hi]),
        _ => {}
    }
    out
}

/// Adjacency graph: one node per chamber, one edge per shared wall.
pub fn emit_dot(rep: &DeformationReport) -> String {
    let c = &rep.complex;
    let mut orbit_of = vec![0usize; c.chambers.len()];
    for (k, o) in rep.orbits.iter().enumerate() {
        for &i in o {
            orbit_of[i] = k;
        }
    }
    let mut s = String::from("graph chambers {\n");
    for i in 0..c.chambers.len() {
        s.push_str(&format!("  {} [label=\"{}\", orbit={}];\n", chamber_label(i), chamber_label(i), orbit_of[i]));
    }
    for e in &c.adjacency {
        s.push_str(&format!("  {} -- {} [label=\"{}\"];\n", chamber_label(e.a), chamber_label(e.b), hyperlat::arith::fmt_vec(&c.walls[e.wall])));
    }
    s.push_str("}\n");
    s
}

/// Serialize a report deterministically (sorted keys, two-space indent).
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_round_trip() {
        let reqs = vec![
            Request::LatticeInfo { lattice: "U".into() },
            Request::Classify { source: Source::Preset("ex-comp".into()), norms: None, n: None, dot: true },
            Request::WallsEnum { lattice: "L2".into(), sublattice: "[]".into(), cone: Some("{}".into()), norms: Some("-2".into()), signed: true, bound: Some(3), n: Some(2) },
        ];
        for r in reqs {
            let s = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<Request>(&s).unwrap(), r);
        }
    }

    #[test]
    fn lattice_info_of_u() {
        let Ok(Output::Json(v)) = run(&Request::LatticeInfo { lattice: "U".into() }) else { panic!() };
        assert_eq!(v["rank"], 2);
        assert_eq!(v["signature"], json!([1, 1]));
        assert_eq!(v["discriminant"]["trivial"], true);
    }

    #[test]
    fn exit_codes() {
        let e = run(&Request::LatticeInfo { lattice: "U +".into() }).err().unwrap();
        assert_eq!(e.exit_code(), 2);
        let e = run(&Request::Monodromy { lattice: "U".into(), matrix: "[[2,0],[0,1]]".into(), n: None }).err().unwrap();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn identity_is_monodromy() {
        let id: Vec<Vec<i64>> = (0..23).map(|i| (0..23).map(|j| i64::from(i == j)).collect()).collect();
        let req = Request::Monodromy { lattice: "L2".into(), matrix: serde_json::to_string(&id).unwrap(), n: None };
        let Ok(Output::Json(v)) = run(&req) else { panic!() };
        assert_eq!(v["verdict"], "member");
    }
}
