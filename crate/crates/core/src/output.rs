//! Serializable command output. Scalars are exact strings.

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::cones::OrbitLabel;
use crate::error::{Error, Result};
use crate::lie::Covector;
use crate::matrix::Mat;
use crate::scalar::{Gauss, Rational};
use crate::triples::{DictRecord, Dictionary, RouteReport, SL2Triple};

pub type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleOutput {
    pub e: Rows,
    pub h: Rows,
    pub f: Rows,
}

impl TripleOutput {
    pub fn new<R: Rational>(dict: &Dictionary<R>, t: &SL2Triple<R>) -> Self {
        let [e, h, f] = t.matrices(dict.rz()).map(|m| m.to_strings());
        TripleOutput { e, h, f }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DictOutput {
    pub group: String,
    pub parameter: Vec<String>,
    pub chamber: Vec<i8>,
    pub chamber_class: Option<usize>,
    pub is_generic: bool,
    pub av: Option<OrbitLabel>,
    pub wf: Option<OrbitLabel>,
    pub whittaker: Option<OrbitLabel>,
    pub whittaker_representative: Option<Vec<String>>,
    pub f_pi: Option<Rows>,
    pub theta_triple: Option<TripleOutput>,
    pub real_triple: Option<TripleOutput>,
    pub f_r: Option<Rows>,
    pub kostant_witness: Option<Vec<String>>,
    pub routes: Option<RouteReport>,
}

fn strings<R: Rational>(v: &[Gauss<R>]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl DictOutput {
    pub fn new<R: Rational>(dict: &Dictionary<R>, rec: &DictRecord<R>, routes: Option<RouteReport>) -> Self {
        let rz = dict.rz();
        DictOutput {
            group: dict.entry.name.clone(),
            parameter: rec.parameter.to_strings(),
            chamber: rec.chamber.signs.clone(),
            chamber_class: rec.class_index,
            is_generic: rec.is_generic,
            av: rec.av,
            wf: rec.wf,
            whittaker: rec.whittaker.as_ref().map(|w| w.orbit),
            whittaker_representative: rec.whittaker.as_ref().map(|w| strings(&w.representative.coords)),
            f_pi: rec.f_pi.as_ref().map(|f| rz.element(f).to_strings()),
            theta_triple: rec.theta_triple.as_ref().map(|t| TripleOutput::new(dict, t)),
            real_triple: rec.real_triple.as_ref().map(|t| TripleOutput::new(dict, t)),
            f_r: rec.real_triple.as_ref().map(|t| rz.element(&t.f).to_strings()),
            kostant_witness: rec.kostant_witness.as_ref().map(|c| strings(&c.coords)),
            routes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeOutput {
    pub group: String,
    pub covector: String,
    pub covector_label: OrbitLabel,
    pub parameter: Vec<String>,
    pub wf: OrbitLabel,
    pub meets: bool,
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QactOutput {
    pub group: String,
    pub representative: String,
    pub input: OrbitLabel,
    pub output: OrbitLabel,
}

/// Parses rows of exact scalar strings back into a matrix.
pub fn parse_rows<R: Rational>(rows: &Rows) -> Result<Mat<R>> {
    Mat::parse(rows)
}

/// Parses `[-][coeff]NAME*`, where NAME is a golden basis element (dual to
/// its own golden basis) or a catalog basis element.
pub fn parse_covector<R: Rational>(entry: &CatalogEntry<R>, spec: &str) -> Result<Covector<R>> {
    let bad = || Error::Parse(format!("covector `{spec}`: expected [-][coefficient]NAME*"));
    let body = spec.trim().strip_suffix('*').ok_or_else(bad)?;
    let split = body.find(|c: char| c.is_ascii_alphabetic() && c != 'i').ok_or_else(bad)?;
    let (coeff, name) = body.split_at(split);
    let coeff: Gauss<R> = match coeff {
        "" | "+" => Gauss::from_int(1),
        "-" => Gauss::from_int(-1),
        c => c.parse()?,
    };
    let rz = &entry.realization;
    if let Some(g) = &entry.golden {
        for basis in [&g.real_basis, &g.theta_basis] {
            if let Some(k) = basis.iter().position(|n| n == name) {
                let mats = basis
                    .iter()
                    .map(|n| entry.golden_matrix(n).ok_or_else(|| Error::Parse(format!("golden matrix `{n}` missing"))))
                    .collect::<Result<Vec<_>>>()?;
                return Ok(rz.dual_basis(&mats)?[k].scale(&coeff));
            }
        }
    }
    let k = entry.basis_index(name).ok_or_else(|| Error::Parse(format!("covector `{spec}`: unknown basis element `{name}`")))?;
    let mut c = Covector::zero(rz.dim());
    c.coords[k] = coeff;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones;
    use crate::roots::HCParameter;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn parse_covector_specs() {
        let d = Dictionary::<Q>::from_bundled("sl2r").unwrap();
        let e = &d.entry;
        let er = parse_covector(e, "ER*").unwrap();
        assert_eq!(parse_covector(e, "-ER*").unwrap(), er.neg());
        assert_eq!(parse_covector(e, "2Htheta*").unwrap(), parse_covector(e, "Htheta*").unwrap().scale(&Gauss::from_int(2)));
        assert_eq!(cones::real_orbit_label(e, &er).unwrap().short(), "wf:+");
        assert!(parse_covector(e, "ER").is_err());
        assert!(parse_covector(e, "XY*").is_err());
    }

    #[test]
    fn dict_output_round_trips() {
        for (group, lam) in [("sl2r", vec![3]), ("sl2r", vec![-2]), ("sp4r", vec![3, -1]), ("sp4r", vec![3, 1])] {
            let d = Dictionary::<Q>::from_bundled(group).unwrap();
            let p = HCParameter::from_ints(&lam);
            let rec = d.dict(&p).unwrap();
            let out = DictOutput::new(&d, &rec, None);
            let text = serde_json::to_string(&out).unwrap();
            let back: DictOutput = serde_json::from_str(&text).unwrap();
            assert_eq!(back, out);
            if let Some(f) = &back.f_pi {
                assert_eq!(parse_rows::<Q>(f).unwrap(), d.rz().element(rec.f_pi.as_ref().unwrap()));
            }
            assert_eq!(back.wf, rec.wf);
        }
    }
}
