//! Catalog files: exact group data, validated on load.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::cohomology::{self, FiniteAbelianInvolution};
use crate::error::{Error, Result};
use crate::lie::{is_negative_definite, Involution, Realization};
use crate::matrix::Mat;
use crate::roots::{CompactnessGrading, Grade, RootDatum, WeylElement};
use crate::scalar::{parse_rational, Gauss, Rational};

/// The catalog shipped with the crate.
pub const BUNDLED: &str = include_str!("../data/catalog.json");

type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, Deserialize)]
pub struct RawCatalog {
    pub entries: Vec<RawEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Rows,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RawRoot {
    pub weight: Vec<i64>,
    pub coroot: Vec<String>,
    pub vector: usize,
    pub grade: Grade,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RawCenter {
    pub orders: Vec<u64>,
    pub sigma_action: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RawEntry {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub matrix_dim: usize,
    pub basis: Vec<NamedMatrix>,
    pub sigma: Rows,
    pub theta: Rows,
    pub cartan: Vec<usize>,
    pub roots: Vec<RawRoot>,
    #[serde(default)]
    pub wk_extra: Vec<Rows>,
    pub symplectic_form: Rows,
    pub q_representatives: Vec<NamedMatrix>,
    pub center: RawCenter,
    pub h1_kernel_size: u64,
    pub invariant_degrees: Vec<usize>,
    pub packet_base: Vec<String>,
    #[serde(default)]
    pub golden: Option<Golden>,
}

impl<'de> Deserialize<'de> for Grade {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "compact" => Ok(Grade::Compact),
            "noncompact" => Ok(Grade::Noncompact),
            other => Err(serde::de::Error::custom(format!("unknown grade `{other}`"))),
        }
    }
}

/// Expected values of the SL(2,ℝ) worked example, kept as data.
#[derive(Clone, Debug, Deserialize)]
pub struct Golden {
    pub matrices: Vec<NamedMatrix>,
    pub real_basis: Vec<String>,
    pub theta_basis: Vec<String>,
    pub torus_generator: Rows,
    pub change_of_basis: Vec<BasisChange>,
    pub form_constants: Vec<String>,
    pub killing_constant: String,
    pub torus_samples: Vec<[String; 2]>,
    pub torus_killing: String,
    pub torus_trace: String,
    pub psi: Vec<PsiRule>,
    pub lambda_samples: Vec<String>,
    pub lambda_factor: String,
    pub torus_identity: TorusIdentity,
    pub coroot_z: String,
    pub rho_z: String,
    pub k_values: Vec<i64>,
    pub ac_matrix: SignedPair,
    pub ac_covector: SignedPair,
    pub f_pi: SignedPair,
    pub psi_killing: Vec<PsiKilling>,
    pub av: SignedPair,
    pub ks: Vec<KsRule>,
    pub wf: SignedPair,
    pub kostant: KostantGolden,
}

#[derive(Clone, Debug, Deserialize)]
pub struct BasisChange {
    pub target: String,
    pub terms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PsiRule {
    pub element: String,
    pub dual: String,
    pub factor: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PsiKilling {
    pub element: String,
    pub covector: String,
    pub factor: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TorusIdentity {
    pub z: String,
    pub equals: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SignedPair {
    pub positive: String,
    pub negative: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct KsRule {
    pub k_orbit: String,
    pub real_orbit: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct KostantGolden {
    pub covector: String,
    pub contains: String,
    pub factor: String,
}

/// A validated catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry<R> {
    pub name: String,
    pub description: String,
    pub realization: Realization<R>,
    pub basis_names: Vec<String>,
    pub roots: RootDatum<R>,
    pub grading: CompactnessGrading,
    pub wk_extra: Vec<WeylElement<R>>,
    pub wk: Vec<WeylElement<R>>,
    pub symplectic_form: Mat<R>,
    pub q_representatives: Vec<(String, Mat<R>)>,
    pub center: FiniteAbelianInvolution,
    pub h1_kernel_size: u64,
    pub invariant_degrees: Vec<usize>,
    pub packet_base: Vec<R>,
    pub golden: Option<Golden>,
}

impl<R: Rational> CatalogEntry<R> {
    pub fn from_raw(raw: &RawEntry) -> Result<Self> {
        let name = raw.name.clone();
        let fail = |inv: String| Error::Validation { entry: name.clone(), invariant: inv };
        let field = |what: &str, e: Error| Error::Parse(format!("entry `{name}`, field `{what}`: {e}"));

        let basis = raw
            .basis
            .iter()
            .map(|b| Mat::parse(&b.matrix).map_err(|e| field(&format!("basis.{}", b.name), e)))
            .collect::<Result<Vec<_>>>()?;
        if basis.iter().any(|b| b.rows() != raw.matrix_dim) {
            return Err(fail("basis matrices have size matrix_dim".into()));
        }
        let sigma = Mat::parse(&raw.sigma).map_err(|e| field("sigma", e))?;
        let theta = Mat::parse(&raw.theta).map_err(|e| field("theta", e))?;
        let realization = Realization::new(&name, basis, sigma, theta, raw.cartan.clone())?;

        let compact = realization.real_form_basis(Involution::SigmaTheta);
        let gram = Mat::from_fn(compact.len(), compact.len(), |r, c| realization.killing_coords(&compact[r], &compact[c]));
        if compact.len() != realization.dim() || !is_negative_definite(&gram) {
            return Err(fail("Killing form negative definite on the compact form".into()));
        }

        let coroots = raw
            .roots
            .iter()
            .map(|r| r.coroot.iter().map(|s| parse_rational::<R>(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| field("roots.coroot", e))?;
        let roots = RootDatum::new(
            &realization,
            raw.roots.iter().map(|r| r.weight.clone()).collect(),
            coroots,
            raw.roots.iter().map(|r| r.vector).collect(),
        )?;
        let grading = CompactnessGrading { grades: raw.roots.iter().map(|r| r.grade).collect() };
        roots.validate_grading(&realization, &grading)?;

        let wk_extra = raw
            .wk_extra
            .iter()
            .map(|m| {
                let rows = m
                    .iter()
                    .map(|row| row.iter().map(|s| parse_rational::<R>(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| field("wk_extra", e))?;
                roots.element_from_matrix(rows).ok_or_else(|| fail("wk_extra elements permute the roots".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let wk = roots.wk_subgroup(&grading, &wk_extra).map_err(|_| fail("wk_extra preserves the grading".into()))?;

        let symplectic_form = Mat::parse(&raw.symplectic_form).map_err(|e| field("symplectic_form", e))?;
        for (k, b) in realization.basis.iter().enumerate() {
            let s = &(&b.transpose() * &symplectic_form) + &(&symplectic_form * b);
            if !s.is_zero() {
                return Err(fail(format!("basis element {k} preserves the symplectic form")));
            }
        }

        let mut q_representatives = Vec::new();
        for q in &raw.q_representatives {
            let m = Mat::parse(&q.matrix).map_err(|e| field(&format!("q_representatives.{}", q.name), e))?;
            check_q_representative(&realization, &m).map_err(|inv| fail(format!("Q representative {}: {inv}", q.name)))?;
            q_representatives.push((q.name.clone(), m));
        }

        let center = FiniteAbelianInvolution::new(raw.center.orders.clone(), raw.center.sigma_action.clone())
            .map_err(|e| fail(format!("center data: {e}")))?;
        let h1 = cohomology::h1(&center)?;
        if raw.h1_kernel_size == 0 || h1.order() % raw.h1_kernel_size != 0 {
            return Err(fail(format!("h1_kernel_size {} divides |H^1| = {}", raw.h1_kernel_size, h1.order())));
        }

        let packet_base = raw
            .packet_base
            .iter()
            .map(|s| parse_rational::<R>(s))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| field("packet_base", e))?;
        if packet_base.len() != realization.rank() {
            return Err(fail("packet_base has rank coordinates".into()));
        }
        if !roots.is_hc_parameter(&crate::roots::HCParameter::new(packet_base.clone())) {
            return Err(fail("packet_base is a regular integral parameter".into()));
        }

        Ok(CatalogEntry {
            name: raw.name.clone(),
            description: raw.description.clone(),
            realization,
            basis_names: raw.basis.iter().map(|b| b.name.clone()).collect(),
            roots,
            grading,
            wk_extra,
            wk,
            symplectic_form,
            q_representatives,
            center,
            h1_kernel_size: raw.h1_kernel_size,
            invariant_degrees: raw.invariant_degrees.clone(),
            packet_base,
            golden: raw.golden.clone(),
        })
    }

    pub fn q_order(&self) -> u64 {
        self.h1_kernel_size
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    pub fn golden_matrix(&self, name: &str) -> Option<Mat<R>> {
        let g = self.golden.as_ref()?;
        let m = g.matrices.iter().find(|m| m.name == name)?;
        Mat::parse(&m.matrix).ok()
    }
}

/// Ad(q) must map 𝔤 into itself and commute with σ and θ.
fn check_q_representative<R: Rational>(rz: &Realization<R>, q: &Mat<R>) -> std::result::Result<(), String> {
    let q_inv = crate::linalg::inverse(q).map_err(|_| "invertible".to_string())?;
    for k in 0..rz.dim() {
        let b = rz.unit(k);
        let moved = rz.group_adjoint(q, &q_inv, &b).map_err(|_| "normalizes the algebra".to_string())?;
        for which in [Involution::Sigma, Involution::Theta] {
            let lhs = rz.involution_coords(which, &moved);
            let rhs = rz.group_adjoint(q, &q_inv, &rz.involution_coords(which, &b)).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("Ad(q) commutes with {which:?}"));
            }
        }
    }
    Ok(())
}

pub fn parse_catalog<R: Rational>(text: &str) -> Result<Vec<CatalogEntry<R>>> {
    let raw: RawCatalog = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    raw.entries.iter().map(CatalogEntry::from_raw).collect()
}

pub fn load_catalog<R: Rational>(path: &Path) -> Result<Vec<CatalogEntry<R>>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

pub fn bundled<R: Rational>() -> Result<Vec<CatalogEntry<R>>> {
    parse_catalog(BUNDLED)
}

/// A single bundled entry by name.
pub fn entry<R: Rational>(name: &str) -> Result<CatalogEntry<R>> {
    let raw: RawCatalog = serde_json::from_str(BUNDLED).map_err(|e| Error::Parse(e.to_string()))?;
    let r = raw.entries.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
    CatalogEntry::from_raw(r)
}

/// Parses a scalar field of the golden block.
pub fn golden_scalar<R: Rational>(s: &str) -> Result<Gauss<R>> {
    s.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn raw() -> RawCatalog {
        serde_json::from_str(BUNDLED).unwrap()
    }

    #[test]
    fn bundled_entries_validate() {
        let entries = bundled::<Q>().unwrap();
        let names: Vec<_> = entries.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["sl2r", "sp4r"]);
        assert_eq!(entries[0].realization.dim(), 3);
        assert_eq!(entries[1].realization.dim(), 10);
        assert_eq!(entries[1].wk.len(), 2);
        assert!(entries[0].golden.is_some());
    }

    #[test]
    fn rejects_non_involutive_theta() {
        let mut r = raw();
        r.entries[0].theta[1][1] = "2".into();
        let err = CatalogEntry::<Q>::from_raw(&r.entries[0]).unwrap_err();
        assert!(err.to_string().contains("theta^2 = 1"), "{err}");
    }

    #[test]
    fn rejects_non_multiplicative_grading() {
        // In C2, (2e1) + (-e1-e2) = e1-e2: flipping 2e1 and -2e1 to compact
        // breaks multiplicativity before anything else is checked.
        let mut r = raw();
        for root in r.entries[1].roots.iter_mut() {
            if root.weight == [2, 0] || root.weight == [-2, 0] {
                root.grade = Grade::Compact;
            }
        }
        let err = CatalogEntry::<Q>::from_raw(&r.entries[1]).unwrap_err();
        assert!(err.to_string().contains("multiplicativity"), "{err}");
    }

    #[test]
    fn parse_errors_name_the_field() {
        let mut r = raw();
        r.entries[0].sigma[0][0] = "one".into();
        let err = CatalogEntry::<Q>::from_raw(&r.entries[0]).unwrap_err();
        assert!(err.to_string().contains("field `sigma`"), "{err}");
        let err = parse_catalog::<Q>("{\"entries\": [").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn bad_kernel_size_rejected() {
        let mut r = raw();
        r.entries[0].h1_kernel_size = 3;
        assert!(CatalogEntry::<Q>::from_raw(&r.entries[0]).is_err());
    }
}
