//! JSON interchange documents for subgroups and chart points.
//!
//! A subgroup document names a space, a stratum and the canonical-form fields
//! of the subgroup as strings. Reading a document canonicalizes it; inputs
//! already in canonical form (up to `1e-12`) are kept verbatim, so writing a
//! read document reproduces it.

use std::collections::BTreeMap;

use chabauty_core::aff::{AffElement, SubgroupAff};
use chabauty_core::complex::{LatticeBasis, SubgroupC};
use chabauty_core::heis::HeisPoint;
use chabauty_core::heis_sub::{LatticeN, SubgroupH};
use chabauty_core::sphere::SpherePoint;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::num::{fmt_f64, fmt_rational, parse_f64, parse_rational};

pub const VERSION: &str = "chabauty-lab/1";

const MATCH_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    C,
    H,
    Aff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDocument {
    pub version: String,
    pub space: Space,
    pub stratum: String,
    #[serde(default)]
    pub payload: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A parsed subgroup. Lattices of `H` are kept exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Subgroup {
    C(SubgroupC),
    H(SubgroupH),
    Lattice(LatticeN<BigRational>),
    Aff(SubgroupAff),
}

impl Subgroup {
    /// Wraps an `H` subgroup; float lattices become exact through their
    /// shortest decimal digits.
    pub fn from_h(h: SubgroupH) -> Subgroup {
        match h {
            SubgroupH::Lattice(l) => {
                let q = |x: f64| parse_rational(&fmt_f64(x)).expect("finite float");
                let cq = |z: Complex64| Complex::new(q(z.re), q(z.im));
                Subgroup::Lattice(LatticeN {
                    n: l.n,
                    basis: LatticeBasis {
                        w1: cq(l.basis.w1),
                        w2: cq(l.basis.w2),
                    },
                    r: q(l.r),
                    rp: q(l.rp),
                })
            }
            h => Subgroup::H(h),
        }
    }

    pub fn space(&self) -> Space {
        match self {
            Subgroup::C(_) => Space::C,
            Subgroup::H(_) | Subgroup::Lattice(_) => Space::H,
            Subgroup::Aff(_) => Space::Aff,
        }
    }

    pub fn as_h(&self) -> Option<SubgroupH> {
        match self {
            Subgroup::H(h) => Some(h.clone()),
            Subgroup::Lattice(l) => Some(SubgroupH::Lattice(l.to_f64())),
            _ => None,
        }
    }

    pub fn to_document(&self) -> SubgroupDocument {
        let mut payload = BTreeMap::new();
        let stratum = match self {
            Subgroup::C(c) => write_c(c, "", &mut payload),
            Subgroup::H(h) => write_h(h, &mut payload),
            Subgroup::Lattice(l) => {
                payload.insert("n".into(), l.n.to_string());
                put_q(&mut payload, "w1", &l.basis.w1);
                put_q(&mut payload, "w2", &l.basis.w2);
                payload.insert("r".into(), fmt_rational(&l.r));
                payload.insert("rp".into(), fmt_rational(&l.rp));
                "LatticeN"
            }
            Subgroup::Aff(a) => write_aff(a, &mut payload),
        };
        SubgroupDocument {
            version: VERSION.into(),
            space: self.space(),
            stratum: stratum.into(),
            payload,
            note: None,
        }
    }

    pub fn from_document(doc: &SubgroupDocument) -> Result<Subgroup> {
        if doc.version != VERSION {
            return Err(CliError::schema(format!("unsupported version {:?}, expected {VERSION:?}", doc.version)));
        }
        check_keys(doc.space, &doc.stratum, &doc.payload)?;
        let fields = Fields::new(&doc.payload, "");
        if doc.space == Space::H && doc.stratum == "LatticeN" {
            let l = LatticeN::from_offsets(&fields.cq("w1")?, &fields.cq("w2")?, fields.index("n")?, fields.q("r")?, fields.q("rp")?)?;
            return Ok(Subgroup::Lattice(l));
        }
        let canonical = build(doc.space, &doc.stratum, &fields, false)?;
        let mut again = BTreeMap::new();
        let stratum = canonical.to_document_into(&mut again);
        if stratum == doc.stratum && payload_matches(&again, &doc.payload) {
            build(doc.space, &doc.stratum, &fields, true)
        } else {
            Ok(canonical)
        }
    }

    fn to_document_into(&self, payload: &mut BTreeMap<String, String>) -> String {
        let d = self.to_document();
        *payload = d.payload;
        d.stratum
    }
}

pub fn read_document(text: &str) -> Result<Subgroup> {
    let doc: SubgroupDocument =
        serde_json::from_str(text).map_err(|e| CliError::schema(format!("malformed subgroup document: {e}")))?;
    Subgroup::from_document(&doc)
}

fn payload_matches(a: &BTreeMap<String, String>, b: &BTreeMap<String, String>) -> bool {
    a.len() == b.len()
        && a.iter().all(|(k, va)| {
            let Some(vb) = b.get(k) else { return false };
            if va == vb {
                return true;
            }
            match (parse_f64(va), parse_f64(vb)) {
                (Ok(x), Ok(y)) => (x - y).abs() <= MATCH_TOL * x.abs().max(y.abs()).max(1.0),
                _ => false,
            }
        })
}

fn c_keys(stratum: &str) -> Option<&'static [&'static str]> {
    Some(match stratum {
        "TrivialC" | "FullC" => &[],
        "CyclicC" => &["w_re", "w_im"],
        "LineC" => &["dir_re", "dir_im"],
        "LineCyclicC" => &["dir_re", "dir_im", "step"],
        "LatticeC" => &["w1_re", "w1_im", "w2_re", "w2_im"],
        _ => return None,
    })
}

fn h_keys(stratum: &str) -> Option<&'static [&'static str]> {
    Some(match stratum {
        "TrivialH" | "FullH" => &[],
        "CyclicH" | "OneParamH" => &["z_re", "z_im", "t"],
        "PlaneH" => &["dir_re", "dir_im"],
        "InPlane" => &["dir_re", "dir_im", "inner_stratum"],
        "LatticeN" => &["n", "w1_re", "w1_im", "w2_re", "w2_im", "r", "rp"],
        "PreimageLattice" => &["w1_re", "w1_im", "w2_re", "w2_im"],
        "PreimageLineCyclic" => &["dir_re", "dir_im", "step"],
        _ => return None,
    })
}

fn aff_keys(stratum: &str) -> Option<&'static [&'static str]> {
    Some(match stratum {
        "TrivialAff" | "FullAff" => &[],
        "CyclicAff" => &["lambda", "tau"],
        "OneParamAff" => &["x", "y"],
        "TransPlusScale" => &["lambda"],
        _ => return None,
    })
}

fn check_keys(space: Space, stratum: &str, payload: &BTreeMap<String, String>) -> Result<()> {
    let keys = match space {
        Space::C => c_keys(stratum),
        Space::H => h_keys(stratum),
        Space::Aff => aff_keys(stratum),
    }
    .ok_or_else(|| CliError::schema(format!("unknown stratum {stratum:?} for space {space:?}")))?;
    let mut expected: Vec<String> = keys.iter().map(|k| k.to_string()).collect();
    if space == Space::H && stratum == "InPlane" {
        let inner = payload
            .get("inner_stratum")
            .ok_or_else(|| CliError::schema("missing payload key \"inner_stratum\""))?;
        let inner_keys =
            c_keys(inner).ok_or_else(|| CliError::schema(format!("unknown inner stratum {inner:?}")))?;
        expected.extend(inner_keys.iter().map(|k| format!("inner_{k}")));
    }
    for k in &expected {
        if !payload.contains_key(k) {
            return Err(CliError::schema(format!("missing payload key {k:?} for {stratum}")));
        }
    }
    if let Some(k) = payload.keys().find(|k| !expected.contains(k)) {
        return Err(CliError::schema(format!("unknown payload key {k:?} for {stratum}")));
    }
    Ok(())
}

struct Fields<'a> {
    map: &'a BTreeMap<String, String>,
    prefix: &'a str,
}

impl<'a> Fields<'a> {
    fn new(map: &'a BTreeMap<String, String>, prefix: &'a str) -> Self {
        Fields { map, prefix }
    }

    fn get(&self, key: &str) -> Result<&'a str> {
        let k = format!("{}{key}", self.prefix);
        self.map
            .get(&k)
            .map(String::as_str)
            .ok_or_else(|| CliError::schema(format!("missing payload key {k:?}")))
    }

    fn f(&self, key: &str) -> Result<f64> {
        parse_f64(self.get(key)?).map_err(|e| CliError::schema(format!("{}{key}: {e}", self.prefix)))
    }

    fn c(&self, key: &str) -> Result<Complex64> {
        Ok(Complex64::new(self.f(&format!("{key}_re"))?, self.f(&format!("{key}_im"))?))
    }

    fn q(&self, key: &str) -> Result<BigRational> {
        parse_rational(self.get(key)?).map_err(|e| CliError::schema(format!("{key}: {e}")))
    }

    fn cq(&self, key: &str) -> Result<Complex<BigRational>> {
        Ok(Complex::new(self.q(&format!("{key}_re"))?, self.q(&format!("{key}_im"))?))
    }

    fn index(&self, key: &str) -> Result<u64> {
        self.get(key)?
            .parse::<u64>()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| CliError::schema(format!("{key} must be a positive integer")))
    }
}

/// Subgroup from validated fields: through the canonicalizing constructors,
/// or (`raw`) by storing the fields as given.
fn build(space: Space, stratum: &str, f: &Fields, raw: bool) -> Result<Subgroup> {
    Ok(match space {
        Space::C => Subgroup::C(build_c(stratum, f, raw)?),
        Space::H => Subgroup::from_h(build_h(stratum, f, raw)?),
        Space::Aff => Subgroup::Aff(build_aff(stratum, f, raw)?),
    })
}

fn build_c(stratum: &str, f: &Fields, raw: bool) -> Result<SubgroupC> {
    Ok(match stratum {
        "TrivialC" => SubgroupC::Trivial,
        "FullC" => SubgroupC::Full,
        "CyclicC" if raw => SubgroupC::Cyclic { w: f.c("w")? },
        "CyclicC" => SubgroupC::cyclic(f.c("w")?)?,
        "LineC" if raw => SubgroupC::Line { dir: f.c("dir")? },
        "LineC" => SubgroupC::line(f.c("dir")?)?,
        "LineCyclicC" if raw => SubgroupC::LineCyclic {
            dir: f.c("dir")?,
            step: f.f("step")?,
        },
        "LineCyclicC" => SubgroupC::line_cyclic(f.c("dir")?, f.f("step")?)?,
        "LatticeC" if raw => SubgroupC::Lattice(LatticeBasis {
            w1: f.c("w1")?,
            w2: f.c("w2")?,
        }),
        "LatticeC" => SubgroupC::lattice(f.c("w1")?, f.c("w2")?)?,
        other => return Err(CliError::schema(format!("unknown stratum {other:?}"))),
    })
}

fn build_h(stratum: &str, f: &Fields, raw: bool) -> Result<SubgroupH> {
    let point = || -> Result<HeisPoint<f64>> { Ok(HeisPoint::new(f.c("z")?, f.f("t")?)) };
    let basis = || -> Result<LatticeBasis> {
        Ok(LatticeBasis {
            w1: f.c("w1")?,
            w2: f.c("w2")?,
        })
    };
    Ok(match stratum {
        "TrivialH" => SubgroupH::Trivial,
        "FullH" => SubgroupH::Full,
        "CyclicH" if raw => SubgroupH::Cyclic { gen: point()? },
        "CyclicH" => SubgroupH::cyclic(point()?)?,
        "OneParamH" if raw => SubgroupH::OneParam { dir: point()? },
        "OneParamH" => SubgroupH::one_param(point()?)?,
        "PlaneH" if raw => SubgroupH::Plane { dir: f.c("dir")? },
        "PlaneH" => SubgroupH::plane(f.c("dir")?)?,
        "InPlane" => {
            let inner_stratum = f.get("inner_stratum")?;
            let inner = build_c(inner_stratum, &Fields::new(f.map, "inner_"), raw)?;
            if raw {
                SubgroupH::InPlane { dir: f.c("dir")?, inner }
            } else {
                SubgroupH::in_plane(f.c("dir")?, inner)?
            }
        }
        "PreimageLattice" if raw => SubgroupH::PreimageLattice(basis()?),
        "PreimageLattice" => {
            let b = basis()?;
            SubgroupH::preimage(&SubgroupC::lattice(b.w1, b.w2)?)?
        }
        "PreimageLineCyclic" if raw => SubgroupH::PreimageLineCyclic {
            dir: f.c("dir")?,
            step: f.f("step")?,
        },
        "PreimageLineCyclic" => SubgroupH::preimage(&SubgroupC::line_cyclic(f.c("dir")?, f.f("step")?)?)?,
        other => return Err(CliError::schema(format!("unknown stratum {other:?}"))),
    })
}

fn build_aff(stratum: &str, f: &Fields, raw: bool) -> Result<SubgroupAff> {
    Ok(match stratum {
        "TrivialAff" => SubgroupAff::Trivial,
        "FullAff" => SubgroupAff::Full,
        "CyclicAff" if raw => SubgroupAff::Cyclic {
            generator: AffElement::new(f.f("lambda")?, f.f("tau")?)?,
        },
        "CyclicAff" => SubgroupAff::cyclic(AffElement::new(f.f("lambda")?, f.f("tau")?)?)?,
        "OneParamAff" if raw => SubgroupAff::OneParam {
            dir: (f.f("x")?, f.f("y")?),
        },
        "OneParamAff" => SubgroupAff::one_param(f.f("x")?, f.f("y")?)?,
        "TransPlusScale" if raw => SubgroupAff::TransPlusScale { lambda: f.f("lambda")? },
        "TransPlusScale" => SubgroupAff::trans_plus_scale(f.f("lambda")?)?,
        other => return Err(CliError::schema(format!("unknown stratum {other:?}"))),
    })
}

fn put(p: &mut BTreeMap<String, String>, key: &str, x: f64) {
    p.insert(key.into(), fmt_f64(x));
}

fn put_c(p: &mut BTreeMap<String, String>, key: &str, z: Complex64) {
    put(p, &format!("{key}_re"), z.re);
    put(p, &format!("{key}_im"), z.im);
}

fn put_q(p: &mut BTreeMap<String, String>, key: &str, z: &Complex<BigRational>) {
    p.insert(format!("{key}_re"), fmt_rational(&z.re));
    p.insert(format!("{key}_im"), fmt_rational(&z.im));
}

fn write_c(c: &SubgroupC, prefix: &str, p: &mut BTreeMap<String, String>) -> &'static str {
    let k = |s: &str| format!("{prefix}{s}");
    match c {
        SubgroupC::Trivial | SubgroupC::Full => {}
        SubgroupC::Cyclic { w } => put_c(p, &k("w"), *w),
        SubgroupC::Line { dir } => put_c(p, &k("dir"), *dir),
        SubgroupC::LineCyclic { dir, step } => {
            put_c(p, &k("dir"), *dir);
            put(p, &k("step"), *step);
        }
        SubgroupC::Lattice(b) => {
            put_c(p, &k("w1"), b.w1);
            put_c(p, &k("w2"), b.w2);
        }
    }
    c.tag()
}

fn write_h(h: &SubgroupH, p: &mut BTreeMap<String, String>) -> &'static str {
    match h {
        SubgroupH::Trivial => "TrivialH",
        SubgroupH::Full => "FullH",
        SubgroupH::Cyclic { gen } | SubgroupH::OneParam { dir: gen } => {
            put_c(p, "z", gen.z);
            put(p, "t", gen.t);
            if matches!(h, SubgroupH::Cyclic { .. }) {
                "CyclicH"
            } else {
                "OneParamH"
            }
        }
        SubgroupH::Plane { dir } => {
            put_c(p, "dir", *dir);
            "PlaneH"
        }
        SubgroupH::InPlane { dir, inner } => {
            put_c(p, "dir", *dir);
            let tag = write_c(inner, "inner_", p);
            p.insert("inner_stratum".into(), tag.into());
            "InPlane"
        }
        SubgroupH::Lattice(l) => {
            // float lattices are written through their exact decimal values
            let Subgroup::Lattice(q) = Subgroup::from_h(SubgroupH::Lattice(l.clone())) else {
                unreachable!("from_h keeps lattices")
            };
            *p = Subgroup::Lattice(q).to_document().payload;
            "LatticeN"
        }
        SubgroupH::PreimageLattice(b) => {
            put_c(p, "w1", b.w1);
            put_c(p, "w2", b.w2);
            "PreimageLattice"
        }
        SubgroupH::PreimageLineCyclic { dir, step } => {
            put_c(p, "dir", *dir);
            put(p, "step", *step);
            "PreimageLineCyclic"
        }
    }
}

fn write_aff(a: &SubgroupAff, p: &mut BTreeMap<String, String>) -> &'static str {
    match a {
        SubgroupAff::Trivial => "TrivialAff",
        SubgroupAff::Full => "FullAff",
        SubgroupAff::Cyclic { generator } => {
            put(p, "lambda", generator.lambda);
            put(p, "tau", generator.tau);
            "CyclicAff"
        }
        SubgroupAff::OneParam { dir } => {
            put(p, "x", dir.0);
            put(p, "y", dir.1);
            "OneParamAff"
        }
        SubgroupAff::TransPlusScale { lambda } => {
            put(p, "lambda", *lambda);
            "TransPlusScale"
        }
    }
}

/// A point of `C^2 u {inf}`: the string `"infinity"` or `{"a": [re, im], "b": [re, im]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointValue {
    Named(String),
    Finite(FinitePoint),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinitePoint {
    pub a: [String; 2],
    pub b: [String; 2],
}

impl PointValue {
    pub fn from_sphere(p: &SpherePoint) -> Self {
        match p {
            SpherePoint::Infinity => PointValue::Named("infinity".into()),
            SpherePoint::Finite { a, b } => PointValue::Finite(FinitePoint {
                a: [fmt_f64(a.re), fmt_f64(a.im)],
                b: [fmt_f64(b.re), fmt_f64(b.im)],
            }),
        }
    }

    pub fn to_sphere(&self) -> Result<SpherePoint> {
        match self {
            PointValue::Named(s) if s == "infinity" => Ok(SpherePoint::Infinity),
            PointValue::Named(s) => Err(CliError::schema(format!("unknown point {s:?}"))),
            PointValue::Finite(FinitePoint { a, b }) => Ok(SpherePoint::new(
                Complex64::new(parse_f64(&a[0])?, parse_f64(&a[1])?),
                Complex64::new(parse_f64(&b[0])?, parse_f64(&b[1])?),
            )),
        }
    }
}

/// Chart coordinates of a subgroup. `plane_angle` marks an abelian subgroup
/// of `H` given in plane coordinates over `e^{i angle}`; `preimage` marks a
/// subgroup of `H` containing the centre, charted through its projection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDocument {
    pub version: String,
    pub point: PointValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane_angle: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub preimage: bool,
    /// Chart point of the opposite plane orientation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opposite: Option<PointValue>,
    /// Orientation-free coordinates of an abelian subgroup.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twisted: Option<PointValue>,
}

impl PointDocument {
    pub fn plain(p: &SpherePoint) -> Self {
        PointDocument {
            version: VERSION.into(),
            point: PointValue::from_sphere(p),
            plane_angle: None,
            preimage: false,
            opposite: None,
            twisted: None,
        }
    }
}

pub fn read_point(text: &str) -> Result<PointDocument> {
    let doc: PointDocument =
        serde_json::from_str(text).map_err(|e| CliError::schema(format!("malformed point document: {e}")))?;
    if doc.version != VERSION {
        return Err(CliError::schema(format!("unsupported version {:?}, expected {VERSION:?}", doc.version)));
    }
    Ok(doc)
}
