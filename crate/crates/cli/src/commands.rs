//! The JSON-producing verbs.

use chabauty_core::aff::AffStratum;
use chabauty_core::complex::{eisenstein_invariants, lattice_invariants, Eisenstein, EisensteinMode, ExtReal, SubgroupC};
use chabauty_core::heis::HeisAut;
use chabauty_core::heis_sub::{
    abelian_chart, center_chart, center_data, classify_orbit, classify_stratum, normalize_lattice, p_star, rho_twist,
    LatticeN, OrbitLabel, SubgroupH,
};
use chabauty_core::sphere::{f_chart, f_inverse};
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::doc::{PointDocument, PointValue, Subgroup, SubgroupDocument};
use crate::error::{CliError, Result};
use crate::num::{fmt_f64, fmt_rational, parse_f64};
use crate::settings::Settings;

fn num(x: f64) -> Value {
    Value::String(fmt_f64(x))
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn cplx(z: Complex64) -> Value {
    json!([fmt_f64(z.re), fmt_f64(z.im)])
}

pub fn ext(x: ExtReal) -> String {
    match x {
        ExtReal::Finite(v) => fmt_f64(v),
        ExtReal::Infinity => "inf".into(),
    }
}

fn doc_value(d: &SubgroupDocument) -> Value {
    serde_json::to_value(d).expect("documents serialize")
}

fn eisenstein_value(e: &Eisenstein) -> Value {
    let (mode, radius) = match e.mode {
        EisensteinMode::Accelerated => ("accelerated", Value::Null),
        EisensteinMode::Direct { radius } => ("direct", num(radius)),
    };
    json!({
        "mode": mode,
        "truncation_radius": radius,
        "g2": cplx(e.g2),
        "g3": cplx(e.g3),
        "delta": cplx(e.delta),
        "error_bound": [fmt_f64(e.error_bound.0), fmt_f64(e.error_bound.1)],
    })
}

fn invariants_c(c: &SubgroupC, s: &Settings) -> Result<Value> {
    let inv = lattice_invariants(c);
    let eisenstein = if matches!(c, SubgroupC::Cyclic { .. } | SubgroupC::Lattice(_)) {
        let fast = eisenstein_invariants(c, EisensteinMode::Accelerated)?;
        let direct = eisenstein_invariants(
            c,
            EisensteinMode::Direct {
                radius: s.truncation_radius,
            },
        )?;
        json!({ "accelerated": eisenstein_value(&fast), "direct": eisenstein_value(&direct) })
    } else {
        Value::Null
    };
    Ok(json!({
        "space": "C",
        "stratum": c.tag(),
        "ell1": opt(inv.ell1),
        "ell2": opt(inv.ell2),
        "kappa": opt(inv.kappa),
        "coarea": inv.coarea.map_or(Value::Null, |x| Value::String(ext(x))),
        "eisenstein": eisenstein,
    }))
}

/// Stratum, region flags and orbit of a subgroup of `H`.
fn stratum_h(h: &SubgroupH) -> serde_json::Map<String, Value> {
    let tag = classify_stratum(h);
    let orbit = classify_orbit(h);
    let mut m = serde_json::Map::new();
    m.insert("space".into(), "H".into());
    m.insert("stratum".into(), tag.stratum.tag().into());
    m.insert("name".into(), tag.name().into());
    m.insert("contains_centre".into(), tag.contains_centre.into());
    m.insert("in_d_minus".into(), tag.in_d_minus.into());
    m.insert("in_d_plus".into(), tag.in_d_plus.into());
    m.insert("orbit".into(), orbit.describe().into());
    if let OrbitLabel::Z2Continuum { plane_angle } = orbit {
        m.insert("plane_angle".into(), num(plane_angle));
    }
    m
}

fn invariants_h(h: &SubgroupH) -> Value {
    let mut m = stratum_h(h);
    let cd = center_data(h);
    m.insert("center".into(), cd.centre.describe().into());
    m.insert("commutator".into(), cd.commutator.describe().into());
    let coarea = match h {
        SubgroupH::PreimageLattice(b) => num(b.coarea()),
        _ => Value::Null,
    };
    m.insert("coarea".into(), coarea);
    m.insert(
        "projection".into(),
        p_star(h).map_or(Value::Null, |c| c.tag().into()),
    );
    Value::Object(m)
}

fn invariants_lattice(l: &LatticeN<BigRational>) -> Value {
    let mut m = stratum_h(&SubgroupH::Lattice(l.to_f64()));
    let area = l.coarea();
    m.insert("n".into(), l.n.into());
    m.insert("coarea".into(), fmt_rational(&area).into());
    m.insert("center".into(), format!("({})Z", fmt_rational(&l.central_step())).into());
    m.insert("commutator".into(), format!("({})Z", fmt_rational(&area)).into());
    m.insert("j".into(), fmt_rational(&BigRational::new(1.into(), l.n.into())).into());
    m.insert("projection".into(), "LatticeC".into());
    Value::Object(m)
}

fn aff_value(a: &AffStratum) -> Value {
    let dir = |d: &(f64, f64)| json!([fmt_f64(d.0), fmt_f64(d.1)]);
    match a {
        AffStratum::Vertex => json!({ "kind": "vertex" }),
        AffStratum::DiscInterior { dir: d, r } => json!({ "kind": "disc-interior", "dir": dir(d), "r": num(*r) }),
        AffStratum::DiscBoundary {
            dir: d,
            commutator_subgroup,
        } => json!({ "kind": "disc-boundary", "dir": dir(d), "commutator_subgroup": commutator_subgroup }),
        AffStratum::IntervalInterior { lambda } => json!({ "kind": "interval-interior", "lambda": num(*lambda) }),
        AffStratum::IntervalEndpointAff => json!({ "kind": "interval-endpoint" }),
    }
}

fn aff_report(s: &Subgroup) -> Value {
    let Subgroup::Aff(a) = s else { unreachable!("called on Aff only") };
    json!({
        "space": "Aff",
        "stratum": s.to_document().stratum,
        "classification": aff_value(&a.classify()),
    })
}

pub fn invariants(s: &Subgroup, settings: &Settings) -> Result<Value> {
    match s {
        Subgroup::C(c) => invariants_c(c, settings),
        Subgroup::H(h) => Ok(invariants_h(h)),
        Subgroup::Lattice(l) => Ok(invariants_lattice(l)),
        Subgroup::Aff(_) => Ok(aff_report(s)),
    }
}

pub fn classify(s: &Subgroup) -> Value {
    match s {
        Subgroup::C(c) => json!({
            "space": "C",
            "stratum": c.tag(),
            "dual_stratum": c.dual().tag(),
        }),
        Subgroup::H(_) | Subgroup::Lattice(_) => Value::Object(stratum_h(&s.as_h().expect("H subgroup"))),
        Subgroup::Aff(_) => aff_report(s),
    }
}

fn aut_value(phi: &HeisAut<BigRational>) -> Value {
    let q = |x: &BigRational| Value::String(fmt_rational(x));
    let cq = |z: &Complex<BigRational>| json!([q(&z.re), q(&z.im)]);
    json!({
        "w": cq(&phi.w),
        "g": [[q(&phi.g[0][0]), q(&phi.g[0][1])], [q(&phi.g[1][0]), q(&phi.g[1][1])]],
    })
}

/// Canonical document; for lattices of `H` also the automorphism carrying
/// the lattice to its standard form and that standard form.
pub fn normalize(s: &Subgroup) -> Result<Value> {
    let mut m = serde_json::Map::new();
    m.insert("document".into(), doc_value(&s.to_document()));
    if let Subgroup::Lattice(l) = s {
        let (phi, n) = normalize_lattice(l);
        m.insert("automorphism".into(), aut_value(&phi));
        let standard = Subgroup::Lattice(LatticeN::standard(n)?);
        m.insert("normal_form".into(), doc_value(&standard.to_document()));
    }
    Ok(Value::Object(m))
}

pub fn dual(s: &Subgroup) -> Result<SubgroupDocument> {
    match s {
        Subgroup::C(c) => Ok(Subgroup::C(c.dual()).to_document()),
        _ => Err(CliError::schema("dual is defined for subgroups of C only")),
    }
}

pub fn chart(s: &Subgroup) -> Result<PointDocument> {
    match s {
        Subgroup::C(c) => Ok(PointDocument::plain(&f_inverse(c)?)),
        Subgroup::Aff(_) => Err(CliError::schema("the chart is defined for subgroups of C and H")),
        _ => {
            let h = s.as_h().expect("H subgroup");
            if h.contains_centre() {
                let mut d = PointDocument::plain(&center_chart(&h)?);
                d.preimage = true;
                return Ok(d);
            }
            let ch = abelian_chart(&h)?;
            let mut d = PointDocument::plain(&ch.q);
            d.plane_angle = Some(fmt_f64(ch.phi));
            d.opposite = Some(PointValue::from_sphere(&ch.q_opposite));
            d.twisted = Some(PointValue::from_sphere(&rho_twist(&ch.q, ch.phi)));
            Ok(d)
        }
    }
}

pub fn chart_inverse(d: &PointDocument) -> Result<SubgroupDocument> {
    let inner = f_chart(&d.point.to_sphere()?)?;
    let out = match (&d.plane_angle, d.preimage) {
        (Some(_), true) => return Err(CliError::schema("plane_angle and preimage exclude each other")),
        (Some(angle), false) => {
            Subgroup::from_h(SubgroupH::in_plane(Complex64::from_polar(1.0, parse_f64(angle)?), inner)?)
        }
        (None, true) => Subgroup::from_h(SubgroupH::preimage(&inner)?),
        (None, false) => Subgroup::C(inner),
    };
    Ok(out.to_document())
}
