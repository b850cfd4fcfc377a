//! SL(2)-triples, the F_π construction, the explicit Kostant–Sekiguchi
//! maps, and the three invariants (associated variety, wavefront set,
//! Whittaker datum) of generic discrete series.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::cones::{self, KSignature, OrbitLabel, Side};
use crate::error::{Error, Result};
use crate::lie::{Covector, Involution, Realization};
use crate::linalg::{self, Vector};
use crate::matrix::Mat;
use crate::roots::{ChamberClass, HCParameter, WeylChamber};
use crate::scalar::{Gauss, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Adaptation {
    ThetaAdapted,
    RealAdapted,
    None,
}

/// An SL(2)-triple in basis coordinates: `[E,F] = H`, `[H,E] = 2E`, `[H,F] = −2F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SL2Triple<R> {
    pub e: Vector<R>,
    pub h: Vector<R>,
    pub f: Vector<R>,
    pub adaptation: Adaptation,
}

impl<R: Rational> SL2Triple<R> {
    pub fn is_triple(&self, rz: &Realization<R>) -> bool {
        let two = Gauss::from_int(2);
        rz.bracket_coords(&self.e, &self.f) == self.h
            && rz.bracket_coords(&self.h, &self.e) == linalg::scale_vec(&two, &self.e)
            && rz.bracket_coords(&self.h, &self.f) == linalg::scale_vec(&-two, &self.f)
    }

    /// Checks the bracket relations and the claimed adaptation.
    pub fn check(&self, rz: &Realization<R>) -> bool {
        if !self.is_triple(rz) {
            return false;
        }
        let neg = |v: &Vector<R>| -> Vector<R> { v.iter().map(|x| -x).collect() };
        let sig = |v: &Vector<R>| rz.involution_coords(Involution::Sigma, v);
        let th = |v: &Vector<R>| rz.involution_coords(Involution::Theta, v);
        match self.adaptation {
            Adaptation::ThetaAdapted => {
                th(&self.e) == neg(&self.e) && th(&self.f) == neg(&self.f) && th(&self.h) == self.h && sig(&self.e) == self.f
            }
            Adaptation::RealAdapted => {
                sig(&self.e) == neg(&self.e) && sig(&self.f) == neg(&self.f) && sig(&self.h) == self.h && th(&self.e) == self.f
            }
            Adaptation::None => true,
        }
    }

    pub fn matrices(&self, rz: &Realization<R>) -> [Mat<R>; 3] {
        [rz.element(&self.e), rz.element(&self.h), rz.element(&self.f)]
    }
}

/// Solves `op(x) = rhs` for `x` in the span of `basis`.
fn solve_in_span<R: Rational>(
    basis: &[Vector<R>],
    op: impl Fn(&Vector<R>) -> Vector<R>,
    rhs: &[Gauss<R>],
) -> Option<Vector<R>> {
    let cols: Vec<Vector<R>> = basis.iter().map(&op).collect();
    let m = Mat::from_cols(&cols).ok()?;
    let c = linalg::solve(&m, rhs)?;
    let mut out = vec![Gauss::zero(); rhs.len()];
    for (k, b) in basis.iter().enumerate() {
        if !c[k].is_zero() {
            out = linalg::axpy(&c[k], b, &out);
        }
    }
    Some(out)
}

/// Jacobson–Morozov: completes a nilpotent `e` to a triple `(e, h, f)`.
///
/// With `graded`, `e` must lie in 𝔰 and the result has `h ∈ 𝔨`, `f ∈ 𝔰`.
/// With `real`, `e` must satisfy `σe = −e` and the result has `σh = h`.
pub fn jacobson_morozov<R: Rational>(rz: &Realization<R>, e: &[Gauss<R>], graded: bool, real: bool) -> Result<SL2Triple<R>> {
    let d = rz.dim();
    let all: Vec<Vector<R>> = (0..d).map(|k| rz.unit(k)).collect();
    let space = if graded { rz.theta_eigenspace(-1) } else { all };
    let ade = rz.ad(e);
    let target: Vector<R> = e.iter().map(|x| x.scale(&R::from_int(-2))).collect();
    let mut z = solve_in_span(&space, |v| ade.apply(&ade.apply(v)), &target)
        .ok_or_else(|| Error::NoSolution("ad(e)^2 z = -2e has no solution".into()))?;
    if real {
        let sz = rz.involution_coords(Involution::Sigma, &z);
        let half = Gauss::frac(1, 2);
        z = z.iter().zip(&sz).map(|(a, b)| &(a - b) * &half).collect();
    }
    let h = ade.apply(&z);
    let adh = rz.ad(&h);
    // [e, f] = h and [h, f] = −2f, stacked.
    let stacked = |v: &Vector<R>| -> Vector<R> {
        let mut out = ade.apply(v);
        out.extend(adh.apply(v).iter().zip(v).map(|(a, b)| a + &b.scale(&R::from_int(2))));
        out
    };
    let mut rhs = h.clone();
    rhs.extend(std::iter::repeat_n(Gauss::zero(), d));
    let f = solve_in_span(&space, stacked, &rhs).ok_or_else(|| Error::NoSolution("no f completing the triple".into()))?;
    let t = SL2Triple { e: e.to_vec(), h, f, adaptation: Adaptation::None };
    if !t.is_triple(rz) {
        return Err(Error::NoSolution("Jacobson-Morozov produced a non-triple".into()));
    }
    Ok(t)
}

/// A rational `r > 0` written as a norm `u ū` with `u ∈ ℚ(i)`.
pub fn norm_preimage<R: Rational>(r: &R) -> Option<Gauss<R>> {
    if *r <= R::zero() {
        return None;
    }
    let (p, q) = r.parts();
    let n: i128 = (p * q.clone()).try_into().ok()?;
    let q: i128 = q.try_into().ok()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut x = 0i128;
    while x * x <= n {
        let rest = n - x * x;
        let y = rest.isqrt();
        if y * y == rest {
            let qq = R::from_int(q as i64);
            return Some(Gauss::new(R::from_int(x as i64) / qq.clone(), R::from_int(y as i64) / qq));
        }
        x += 1;
    }
    None
}

/// Completes `f ∈ 𝔰` in torus normal form `Σ f_α X_{−α}` (α simple for some
/// chamber) to a θ-adapted triple with `σ(E) = F`. The returned `F` is the
/// compact-torus conjugate of the input that makes σ-adaptation possible; it
/// equals the input whenever no rescaling is needed.
pub fn complete_triple_theta<R: Rational>(entry: &CatalogEntry<R>, f: &[Gauss<R>]) -> Result<SL2Triple<R>> {
    let rz = &entry.realization;
    let rd = &entry.roots;
    let minus_f: Vector<R> = f.iter().map(|x| -x).collect();
    if rz.involution_coords(Involution::Theta, f) != minus_f {
        return Err(Error::Unsupported("F is not in s".into()));
    }
    if !rz.is_regular_nilpotent(&rz.element(f)) {
        return Err(Error::NotRegularNilpotent);
    }
    // Support of f must be {X_{−α} : α ∈ S} for the simple roots S of a chamber.
    if rz.cartan.iter().any(|&c| !f[c].is_zero()) {
        return Err(Error::Unsupported("F is not in torus normal form".into()));
    }
    let mut support: Vec<usize> = (0..rd.len()).filter(|&a| !f[rd.root_vectors[a]].is_zero()).map(|a| rd.negative(a)).collect();
    support.sort_unstable();
    let chamber = rd
        .all_chambers()
        .into_iter()
        .find(|ch| {
            let mut s = ch.simple.clone();
            s.sort_unstable();
            s == support
        })
        .ok_or_else(|| Error::Unsupported("F is not in torus normal form".into()))?;

    let simple = chamber.simple.clone();
    let basis: Vec<Vector<R>> = simple.iter().map(|&a| rz.unit(rd.root_vectors[a])).collect();
    let target: Vector<R> = f.iter().map(|x| x.scale(&R::from_int(-2))).collect();
    // [[E, F], F] = −2F is linear in the coefficients of E.
    let e = solve_in_span(&basis, |v| rz.bracket_coords(&rz.bracket_coords(v, f), f), &target)
        .ok_or_else(|| Error::NoSolution("no E of the form sum c_a X_a".into()))?;
    let h = rz.bracket_coords(&e, f);
    let two_e = linalg::scale_vec(&Gauss::from_int(2), &e);
    if rz.bracket_coords(&h, &e) != two_e {
        return Err(Error::NoSolution("[[E,F],E] != 2E".into()));
    }

    // σ-adaptation: rescale each simple root line by u_α with u_α ū_α = r_α.
    let mut e_new = vec![Gauss::zero(); rz.dim()];
    let mut f_new = vec![Gauss::zero(); rz.dim()];
    for &a in &simple {
        let ia = rd.root_vectors[a];
        let ina = rd.root_vectors[rd.negative(a)];
        let s = sigma_root_coefficient(rz, ia, ina)?;
        let c = e[ia].clone();
        let fa = f[ina].clone();
        let r = fa.clone() / (&c.conj() * &s);
        if !r.is_real() || r.re <= R::zero() {
            return Err(Error::NoSolution(format!("sigma-adaptation ratio {r} is not a positive rational")));
        }
        let u = if r.re.is_one() {
            Gauss::one()
        } else {
            norm_preimage(&r.re).ok_or_else(|| Error::NoSolution(format!("{} is not a norm from Q(i)", r.re)))?
        };
        e_new[ia] = &c * &u;
        f_new[ina] = fa / u;
    }
    let t = SL2Triple { e: e_new.clone(), h: rz.bracket_coords(&e_new, &f_new), f: f_new, adaptation: Adaptation::ThetaAdapted };
    if !t.check(rz) {
        return Err(Error::NoSolution("adapted triple fails its invariants".into()));
    }
    Ok(t)
}

/// σ(X_α) = s·X_{−α}; returns s.
fn sigma_root_coefficient<R: Rational>(rz: &Realization<R>, ia: usize, ina: usize) -> Result<Gauss<R>> {
    let img = rz.involution_coords(Involution::Sigma, &rz.unit(ia));
    let s = img[ina].clone();
    if s.is_zero() || img.iter().enumerate().any(|(k, x)| k != ina && !x.is_zero()) {
        return Err(Error::Validation { entry: rz.name.clone(), invariant: "sigma maps X_alpha to a multiple of X_-alpha".into() });
    }
    Ok(s)
}

/// `E_ℝ = ½(E−F−H)`, `F_ℝ = ½(−E+F−H)`, `H_ℝ = E+F`.
pub fn ks_theta_to_real<R: Rational>(t: &SL2Triple<R>) -> Result<SL2Triple<R>> {
    if t.adaptation != Adaptation::ThetaAdapted {
        return Err(Error::Adaptation("theta_adapted".into()));
    }
    let half = Gauss::frac(1, 2);
    let comb = |a: i64, b: i64, c: i64| -> Vector<R> {
        (0..t.e.len())
            .map(|k| {
                let v = &(&t.e[k].scale(&R::from_int(a)) + &t.f[k].scale(&R::from_int(b))) + &t.h[k].scale(&R::from_int(c));
                &v * &half
            })
            .collect()
    };
    Ok(SL2Triple {
        e: comb(1, -1, -1),
        f: comb(-1, 1, -1),
        h: comb(2, 2, 0),
        adaptation: Adaptation::RealAdapted,
    })
}

/// `E_θ = ½(E_ℝ−F_ℝ+H_ℝ)`, `F_θ = ½(−E_ℝ+F_ℝ+H_ℝ)`, `H_θ = −E_ℝ−F_ℝ`.
pub fn ks_real_to_theta<R: Rational>(t: &SL2Triple<R>) -> Result<SL2Triple<R>> {
    if t.adaptation != Adaptation::RealAdapted {
        return Err(Error::Adaptation("real_adapted".into()));
    }
    let half = Gauss::frac(1, 2);
    let comb = |a: i64, b: i64, c: i64| -> Vector<R> {
        (0..t.e.len())
            .map(|k| {
                let v = &(&t.e[k].scale(&R::from_int(a)) + &t.f[k].scale(&R::from_int(b))) + &t.h[k].scale(&R::from_int(c));
                &v * &half
            })
            .collect()
    };
    Ok(SL2Triple {
        e: comb(1, -1, 1),
        f: comb(-1, 1, 1),
        h: comb(-2, -2, 0),
        adaptation: Adaptation::ThetaAdapted,
    })
}

/// Per-class data for the large chambers of one catalog entry.
#[derive(Clone, Debug)]
pub struct ClassData<R> {
    pub class: ChamberClass,
    pub f_pi: Vector<R>,
    pub theta_triple: SL2Triple<R>,
    pub real_triple: SL2Triple<R>,
    /// Real tag of ψ(−E_ℝ), the Kostant–Sekiguchi image of K·F_π.
    pub tag: i8,
    pub k_signature: KSignature<R>,
}

/// A catalog entry together with its precomputed large-chamber classes.
#[derive(Clone, Debug)]
pub struct Dictionary<R> {
    pub entry: CatalogEntry<R>,
    pub classes: Vec<ClassData<R>>,
}

/// The record returned for one parameter.
#[derive(Clone, Debug)]
pub struct DictRecord<R> {
    pub parameter: HCParameter<R>,
    pub chamber: WeylChamber,
    pub class_index: Option<usize>,
    pub is_generic: bool,
    pub av: Option<OrbitLabel>,
    pub wf: Option<OrbitLabel>,
    pub whittaker: Option<WhittakerDatum<R>>,
    pub f_pi: Option<Vector<R>>,
    pub theta_triple: Option<SL2Triple<R>>,
    pub real_triple: Option<SL2Triple<R>>,
    pub kostant_witness: Option<Covector<R>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerDatum<R> {
    pub orbit: OrbitLabel,
    pub representative: Covector<R>,
}

/// Output of [`Dictionary::whittaker_pair`].
#[derive(Clone, Debug)]
pub struct WhittakerPair<R> {
    pub borel: Vec<Vector<R>>,
    pub nilradical: Vec<Vector<R>>,
    pub simple_root_vectors: Vec<Vector<R>>,
    pub values: Vec<Gauss<R>>,
}

/// Which route produced a wavefront label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteReport {
    pub ks_of_av: OrbitLabel,
    pub explicit: OrbitLabel,
    pub cone: Option<OrbitLabel>,
    pub section: OrbitLabel,
}

impl<R: Rational> Dictionary<R> {
    pub fn new(entry: CatalogEntry<R>) -> Result<Self> {
        let rd = &entry.roots;
        let rz = &entry.realization;
        let mut classes = Vec::new();
        for class in rd.large_chambers_mod_wk(&entry.grading, &entry.wk) {
            let f_pi = f_pi_of_chamber(&entry, &class.representative);
            let theta_triple = complete_triple_theta(&entry, &f_pi)?;
            let real_triple = ks_theta_to_real(&theta_triple)?;
            if !real_triple.check(rz) {
                return Err(Error::Inconsistent("KS image is not real-adapted".into()));
            }
            let minus_e: Vector<R> = real_triple.e.iter().map(|x| -x).collect();
            let tag = cones::real_orbit_label(&entry, &rz.psi_coords(&minus_e))?.tag;
            let k_signature = cones::k_signature(&entry, &f_pi)?;
            classes.push(ClassData { class, f_pi, theta_triple, real_triple, tag, k_signature });
        }
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                if a.tag == b.tag {
                    return Err(Error::Inconsistent("two chamber classes share a KS label".into()));
                }
                if a.k_signature == b.k_signature {
                    return Err(Error::Inconsistent("two chamber classes share a K-signature".into()));
                }
            }
        }
        Ok(Dictionary { entry, classes })
    }

    pub fn from_bundled(name: &str) -> Result<Self> {
        Self::new(crate::catalog::entry(name)?)
    }

    pub fn rz(&self) -> &Realization<R> {
        &self.entry.realization
    }

    pub fn class_of_chamber(&self, ch: &WeylChamber) -> Option<usize> {
        self.classes.iter().position(|c| c.class.members.iter().any(|m| m.signs == ch.signs))
    }

    /// F_π = Σ_{α ∈ S(λ)} X_{−α}.
    pub fn f_pi(&self, lambda: &HCParameter<R>) -> Result<Vector<R>> {
        let ch = self.entry.roots.positive_system(lambda)?;
        if !self.entry.roots.is_large(&ch, &self.entry.grading) {
            return Err(Error::NotLarge);
        }
        Ok(f_pi_of_chamber(&self.entry, &ch))
    }

    /// K-orbit label of a principal nilpotent covector in 𝔰*.
    pub fn k_orbit_label(&self, xi: &Covector<R>) -> Result<OrbitLabel> {
        let x = self.rz().psi_inv_coords(xi);
        let sig = cones::k_signature(&self.entry, &x)?;
        let c = self
            .classes
            .iter()
            .find(|c| c.k_signature == sig)
            .ok_or_else(|| Error::Inconsistent("K-signature matches no large chamber class".into()))?;
        Ok(OrbitLabel::new(Side::KOrbit, c.tag))
    }

    /// AV(π) = K·ψ(F_π).
    pub fn av_of(&self, lambda: &HCParameter<R>) -> Result<OrbitLabel> {
        let f = self.f_pi(lambda)?;
        self.k_orbit_label(&self.rz().psi_coords(&f))
    }

    /// θ-adapted and real-adapted triples built from F_π.
    pub fn triples_of(&self, lambda: &HCParameter<R>) -> Result<(SL2Triple<R>, SL2Triple<R>)> {
        let f = self.f_pi(lambda)?;
        let t = complete_triple_theta(&self.entry, &f)?;
        let r = ks_theta_to_real(&t)?;
        Ok((t, r))
    }

    /// WF(π) by every available route; any disagreement is an error.
    pub fn wf_routes(&self, lambda: &HCParameter<R>) -> Result<RouteReport> {
        let rz = self.rz();
        let av = self.av_of(lambda)?;
        let ks_of_av = OrbitLabel::new(Side::RealOrbit, av.tag);
        let (_, real) = self.triples_of(lambda)?;
        let minus_f: Vector<R> = real.f.iter().map(|x| -x).collect();
        let explicit = cones::real_orbit_label(&self.entry, &rz.psi_coords(&minus_f))?;
        let cone = if self.entry.realization.matrix_dim() == 2 {
            Some(cones::real_orbit_label(&self.entry, &cones::ac_scaling_sl2(&self.entry, lambda)?)?)
        } else {
            None
        };
        let mut hits = Vec::new();
        for (label, rep) in self.real_label_representatives()? {
            let section = cones::kostant_section(&self.entry, &rep)?;
            if cones::section_meets_orbit(&self.entry, &section, lambda)?.is_some() {
                hits.push(label);
            }
        }
        if hits.len() != 1 {
            return Err(Error::Inconsistent(format!("{} Kostant sections meet the orbit of lambda", hits.len())));
        }
        let report = RouteReport { ks_of_av, explicit, cone, section: hits[0] };
        let agree = report.ks_of_av == report.explicit
            && report.section == report.explicit
            && report.cone.is_none_or(|c| c == report.explicit);
        if !agree {
            return Err(Error::Inconsistent(format!("wavefront routes disagree: {report:?}")));
        }
        Ok(report)
    }

    /// WF(π) = G(ℝ)·ψ(−F_ℝ), cross-checked against every other route.
    pub fn wf_of(&self, lambda: &HCParameter<R>) -> Result<OrbitLabel> {
        Ok(self.wf_routes(lambda)?.explicit)
    }

    /// The same label without the Kostant-section and cone routes.
    pub fn wf_fast(&self, lambda: &HCParameter<R>) -> Result<OrbitLabel> {
        let (_, real) = self.triples_of(lambda)?;
        let minus_f: Vector<R> = real.f.iter().map(|x| -x).collect();
        let explicit = cones::real_orbit_label(&self.entry, &self.rz().psi_coords(&minus_f))?;
        let av = self.av_of(lambda)?;
        if av.tag != explicit.tag {
            return Err(Error::Inconsistent("KS(AV) differs from the explicit wavefront".into()));
        }
        Ok(explicit)
    }

    pub fn whittaker_of(&self, lambda: &HCParameter<R>) -> Result<WhittakerDatum<R>> {
        let wf = self.wf_of(lambda)?;
        let (_, real) = self.triples_of(lambda)?;
        let minus_f: Vector<R> = real.f.iter().map(|x| -x).collect();
        Ok(WhittakerDatum { orbit: OrbitLabel::new(Side::Whittaker, wf.tag), representative: self.rz().psi_coords(&minus_f) })
    }

    /// One covector per real principal label: the Q-orbit of ψ(−E_ℝ) for the first class.
    pub fn real_label_representatives(&self) -> Result<Vec<(OrbitLabel, Covector<R>)>> {
        let rz = self.rz();
        let Some(first) = self.classes.first() else { return Ok(Vec::new()) };
        let minus_e: Vector<R> = first.real_triple.e.iter().map(|x| -x).collect();
        let base = rz.psi_coords(&minus_e);
        let mut out = vec![(cones::real_orbit_label(&self.entry, &base)?, base.clone())];
        for (_, q) in &self.entry.q_representatives {
            let q_inv = linalg::inverse(q)?;
            let moved = rz.group_coadjoint(q, &q_inv, &base)?;
            let label = cones::real_orbit_label(&self.entry, &moved)?;
            if !out.iter().any(|(l, _)| *l == label) {
                out.push((label, moved));
            }
        }
        Ok(out)
    }

    /// Real-adapted triples, one per real label, obtained by Ad(q) from the base triple.
    fn real_triples_by_label(&self) -> Result<Vec<(OrbitLabel, SL2Triple<R>)>> {
        let rz = self.rz();
        let Some(first) = self.classes.first() else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        let mut qs = vec![Mat::identity(rz.matrix_dim())];
        qs.extend(self.entry.q_representatives.iter().map(|(_, q)| q.clone()));
        for q in qs {
            let q_inv = linalg::inverse(&q)?;
            let t = &first.real_triple;
            let moved = SL2Triple {
                e: rz.group_adjoint(&q, &q_inv, &t.e)?,
                h: rz.group_adjoint(&q, &q_inv, &t.h)?,
                f: rz.group_adjoint(&q, &q_inv, &t.f)?,
                adaptation: Adaptation::RealAdapted,
            };
            let minus_f: Vector<R> = moved.f.iter().map(|x| -x).collect();
            let label = cones::real_orbit_label(&self.entry, &rz.psi_coords(&minus_f))?;
            if !out.iter().any(|(l, _)| *l == label) {
                out.push((label, moved));
            }
        }
        Ok(out)
    }

    /// The chamber class (within the packet of `packet`) whose wavefront is Ω,
    /// via `H_θ = −E_ℝ − F_ℝ` and `Δ⁺ = {α : α(H_θ) > 0}`.
    pub fn reconstruct_chamber(&self, omega: &OrbitLabel, packet: &HCParameter<R>) -> Result<(usize, HCParameter<R>)> {
        if omega.side != Side::RealOrbit && omega.side != Side::Whittaker {
            return Err(Error::Unsupported("reconstruction needs a real orbit label".into()));
        }
        let rz = self.rz();
        let rd = &self.entry.roots;
        let (_, t) = self
            .real_triples_by_label()?
            .into_iter()
            .find(|(l, _)| l.tag == omega.tag)
            .ok_or_else(|| Error::NoSolution("no principal orbit carries this label".into()))?;
        if !t.check(rz) {
            return Err(Error::Inconsistent("reconstruction triple is not real-adapted".into()));
        }
        let h_theta: Vector<R> = t.e.iter().zip(&t.f).map(|(a, b)| -(a + b)).collect();
        let on_torus = (0..rz.dim()).all(|k| rz.cartan.contains(&k) || h_theta[k].is_zero());
        let class = if on_torus {
            let vals: Vec<R> = rz.cartan.iter().map(|&c| h_theta[c].re.clone()).collect();
            let signs: Vec<i8> = (0..rd.len())
                .map(|a| {
                    let v = rd.roots[a].iter().zip(&vals).fold(R::zero(), |acc, (r, x)| acc + R::from_int(*r) * x.clone());
                    if v > R::zero() { 1 } else { -1 }
                })
                .collect();
            let ch = rd.chamber_from_signs(signs);
            self.class_of_chamber(&ch).ok_or(Error::NotLarge)?
        } else {
            let f_theta = ks_real_to_theta(&t)?.f;
            let sig = cones::k_signature(&self.entry, &f_theta)?;
            self.classes.iter().position(|c| c.k_signature == sig).ok_or(Error::NotLarge)?
        };
        let member = rd
            .packet(packet)
            .into_iter()
            .filter(|p| rd.positive_system(p).ok().and_then(|ch| self.class_of_chamber(&ch)) == Some(class))
            .min_by(|a, b| a.lambda.cmp(&b.lambda))
            .ok_or_else(|| Error::NoSolution("packet has no member in this class".into()))?;
        Ok((class, member))
    }

    /// The Borel subalgebra annihilated by X and the values of X on the
    /// simple root vectors of the opposite nilradical.
    pub fn whittaker_pair(&self, xi: &Covector<R>) -> Result<WhittakerPair<R>> {
        let rz = self.rz();
        let e = rz.psi_inv_coords(xi);
        if !rz.is_regular_nilpotent(&rz.element(&e)) {
            return Err(Error::NotRegularNilpotent);
        }
        let neg: Vector<R> = e.iter().map(|x| -x).collect();
        if rz.involution_coords(Involution::Sigma, &e) != neg {
            return Err(Error::Unsupported("X is not in i g(R)*".into()));
        }
        let t = jacobson_morozov(rz, &e, false, true)?;
        let adh = rz.ad(&t.h);
        let d = rz.dim() as i64;
        let mut borel = Vec::new();
        let mut nilradical = Vec::new();
        let mut minus_two = Vec::new();
        for j in -2 * d..=2 * d {
            let shifted = &adh - &Mat::identity(rz.dim()).scale(&Gauss::from_int(j));
            let space = linalg::kernel(&shifted);
            if j >= 0 {
                borel.extend(space.iter().cloned());
            } else {
                nilradical.extend(space.iter().cloned());
            }
            if j == -2 {
                minus_two = space;
            }
        }
        let simple = cones::split_root_lines(rz, &t.h, &minus_two)?;
        let simple: Vec<Vector<R>> = simple.into_iter().map(|v| cones::normalize_imaginary(rz, &v)).collect::<Result<_>>()?;
        let values: Vec<Gauss<R>> = simple.iter().map(|v| xi.pair(v)).collect();
        for v in &borel {
            if !xi.pair(v).is_zero() {
                return Err(Error::Inconsistent("X does not annihilate the Borel".into()));
            }
        }
        if values.iter().any(Zero::is_zero) {
            return Err(Error::Inconsistent("X vanishes on a simple root space".into()));
        }
        Ok(WhittakerPair { borel, nilradical, simple_root_vectors: simple, values })
    }

    /// Full dictionary record for one parameter.
    pub fn dict(&self, lambda: &HCParameter<R>) -> Result<DictRecord<R>> {
        let rd = &self.entry.roots;
        if !rd.is_hc_parameter(lambda) {
            return Err(Error::NotRegular("parameter is singular or lambda - rho is not integral".into()));
        }
        let chamber = rd.positive_system(lambda)?;
        let is_generic = rd.is_large(&chamber, &self.entry.grading);
        let mut rec = DictRecord {
            parameter: lambda.clone(),
            class_index: self.class_of_chamber(&chamber),
            chamber,
            is_generic,
            av: None,
            wf: None,
            whittaker: None,
            f_pi: None,
            theta_triple: None,
            real_triple: None,
            kostant_witness: None,
        };
        if !is_generic {
            return Ok(rec);
        }
        let (t, r) = self.triples_of(lambda)?;
        rec.f_pi = Some(self.f_pi(lambda)?);
        rec.av = Some(self.av_of(lambda)?);
        let wf = self.wf_of(lambda)?;
        rec.wf = Some(wf);
        let wh = self.whittaker_of(lambda)?;
        let section = cones::kostant_section(&self.entry, &wh.representative)?;
        rec.kostant_witness = cones::section_meets_orbit(&self.entry, &section, lambda)?;
        rec.whittaker = Some(wh);
        rec.theta_triple = Some(t);
        rec.real_triple = Some(r);
        Ok(rec)
    }

    /// Action of a Q representative on a real, K or Whittaker label.
    pub fn q_action_label(&self, q: &Mat<R>, label: &OrbitLabel) -> Result<OrbitLabel> {
        let rz = self.rz();
        let q_inv = linalg::inverse(q)?;
        match label.side {
            Side::RealOrbit | Side::Whittaker => {
                let (_, rep) = self
                    .real_label_representatives()?
                    .into_iter()
                    .find(|(l, _)| l.tag == label.tag)
                    .ok_or_else(|| Error::NoSolution("label has no representative".into()))?;
                let moved = rz.group_coadjoint(q, &q_inv, &rep)?;
                let l = cones::real_orbit_label(&self.entry, &moved)?;
                Ok(OrbitLabel::new(label.side, l.tag))
            }
            Side::KOrbit => {
                let c = self
                    .classes
                    .iter()
                    .find(|c| c.tag == label.tag)
                    .ok_or_else(|| Error::NoSolution("label has no representative".into()))?;
                let rep = rz.psi_coords(&c.f_pi);
                self.k_orbit_label(&rz.group_coadjoint(q, &q_inv, &rep)?)
            }
        }
    }

    /// Induced action of a Q representative on weights, if it normalizes 𝔱.
    pub fn q_action_weight(&self, q: &Mat<R>, lambda: &HCParameter<R>) -> Result<HCParameter<R>> {
        let rz = self.rz();
        let q_inv = linalg::inverse(q)?;
        let r = rz.rank();
        // Matrix of Ad(q⁻¹) on the Cartan basis.
        let mut m = vec![vec![R::zero(); r]; r];
        for (j, &c) in rz.cartan.iter().enumerate() {
            let img = rz.group_adjoint(&q_inv, q, &rz.unit(c))?;
            for (k, x) in img.iter().enumerate() {
                match rz.cartan.iter().position(|&cc| cc == k) {
                    Some(i) => {
                        if !x.is_real() {
                            return Err(Error::Unsupported("Q representative acts non-rationally on t".into()));
                        }
                        m[i][j] = x.re.clone();
                    }
                    None if !x.is_zero() => {
                        return Err(Error::Unsupported("Q representative does not normalize t".into()));
                    }
                    None => {}
                }
            }
        }
        // (q·λ)(t_j) = λ(Ad(q⁻¹) t_j).
        let out = (0..r)
            .map(|j| (0..r).fold(R::zero(), |acc, i| acc + m[i][j].clone() * lambda.lambda[i].clone()))
            .collect();
        Ok(HCParameter::new(out))
    }
}

impl<R: Rational> Dictionary<R> {
    /// Induced permutation action of a Q representative on chambers.
    pub fn q_action_chamber(&self, q: &Mat<R>, ch: &WeylChamber) -> Result<WeylChamber> {
        let rd = &self.entry.roots;
        let mut signs = vec![0i8; rd.len()];
        for a in 0..rd.len() {
            let w = HCParameter::new(rd.roots[a].iter().map(|&x| R::from_int(x)).collect());
            let img = self.q_action_weight(q, &w)?;
            let b = rd.find_root(&img.lambda).ok_or_else(|| Error::Unsupported("Q representative does not permute the roots".into()))?;
            signs[b] = ch.signs[a];
        }
        Ok(rd.chamber_from_signs(signs))
    }
}

pub fn f_pi_of_chamber<R: Rational>(entry: &CatalogEntry<R>, ch: &WeylChamber) -> Vector<R> {
    let rz = &entry.realization;
    let rd = &entry.roots;
    let mut f = vec![Gauss::zero(); rz.dim()];
    for &a in &ch.simple {
        f[rd.root_vectors[rd.negative(a)]] = Gauss::one();
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type D = Dictionary<BigRational>;

    fn sl2() -> D {
        D::from_bundled("sl2r").unwrap()
    }

    fn sp4() -> D {
        D::from_bundled("sp4r").unwrap()
    }

    fn lam(v: &[i64]) -> HCParameter<BigRational> {
        HCParameter::from_ints(v)
    }

    fn named(d: &D, name: &str) -> Vector<BigRational> {
        d.rz().coords(&d.entry.golden_matrix(name).unwrap()).unwrap()
    }

    #[test]
    fn sl2_theta_triple_from_f_theta() {
        let d = sl2();
        let f = named(&d, "Ftheta");
        let t = complete_triple_theta(&d.entry, &f).unwrap();
        assert_eq!(t.e, named(&d, "Etheta"));
        assert_eq!(t.h, named(&d, "Htheta"));
        assert_eq!(t.f, f);
        let r = ks_theta_to_real(&t).unwrap();
        assert_eq!(r.e, named(&d, "ER"));
        assert_eq!(r.f, named(&d, "FR"));
        assert_eq!(r.h, named(&d, "HR"));
        assert!(r.check(d.rz()));
        assert_eq!(ks_real_to_theta(&r).unwrap(), t);
    }

    #[test]
    fn ks_requires_adaptation() {
        let d = sl2();
        let t = complete_triple_theta(&d.entry, &named(&d, "Ftheta")).unwrap();
        assert_eq!(ks_real_to_theta(&t).unwrap_err(), Error::Adaptation("real_adapted".into()));
    }

    #[test]
    fn sl2_invariants_by_sign_of_k() {
        let d = sl2();
        for k in [-3i64, -2, -1, 1, 2, 3] {
            let l = lam(&[k]);
            let av = d.av_of(&l).unwrap();
            let wf = d.wf_of(&l).unwrap();
            let wh = d.whittaker_of(&l).unwrap();
            let (av_s, wf_s, wh_s) = if k > 0 { ("K·Eθ*", "G(R)·-ER*", "w(-ER*)") } else { ("K·Fθ*", "G(R)·ER*", "w(ER*)") };
            assert_eq!(av.to_string(), av_s, "k={k}");
            assert_eq!(wf.to_string(), wf_s, "k={k}");
            assert_eq!(wh.orbit.to_string(), wh_s, "k={k}");
        }
    }

    #[test]
    fn sl2_whittaker_pair() {
        let d = sl2();
        // −E_R* = ψ(−F_R/4) takes the value −1 on E_R.
        let er = named(&d, "ER");
        let fr = named(&d, "FR");
        let xi = d.rz().psi_coords(&linalg::scale_vec(&Gauss::frac(-1, 4), &fr));
        let wp = d.whittaker_pair(&xi).unwrap();
        assert_eq!(wp.simple_root_vectors, vec![er]);
        assert_eq!(wp.values, vec![Gauss::from_int(-1)]);
        assert_eq!(wp.borel.len(), 2);
    }

    #[test]
    fn sp4_classes_and_triples() {
        let d = sp4();
        assert_eq!(d.classes.len(), 2);
        for c in &d.classes {
            assert!(c.theta_triple.check(d.rz()));
            assert!(c.real_triple.check(d.rz()));
            assert_eq!(c.theta_triple.f, c.f_pi);
        }
        assert_ne!(d.classes[0].tag, d.classes[1].tag);
    }

    #[test]
    fn sp4_generic_parameters() {
        let d = sp4();
        let a = d.wf_routes(&lam(&[3, -1])).unwrap();
        let b = d.wf_routes(&lam(&[1, -3])).unwrap();
        assert_ne!(a.explicit, b.explicit);
        let r = d.dict(&lam(&[3, 1])).unwrap();
        assert!(!r.is_generic);
        assert!(r.wf.is_none());
    }

    #[test]
    fn reconstruct_round_trip() {
        for d in [sl2(), sp4()] {
            let base = HCParameter::new(d.entry.packet_base.clone());
            for p in d.entry.roots.packet(&base) {
                let ch = d.entry.roots.positive_system(&p).unwrap();
                let Some(class) = d.class_of_chamber(&ch) else { continue };
                let wf = d.wf_fast(&p).unwrap();
                let (got, _) = d.reconstruct_chamber(&wf, &base).unwrap();
                assert_eq!(got, class);
            }
        }
    }

    #[test]
    fn norm_preimages() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        for (n, dd) in [(1, 1), (2, 1), (5, 4), (25, 9), (1, 2)] {
            let u = norm_preimage(&q(n, dd)).unwrap();
            assert_eq!(u.norm(), q(n, dd));
        }
        assert!(norm_preimage(&q(3, 1)).is_none());
        assert!(norm_preimage(&q(3, 4)).is_none());
        assert!(norm_preimage(&q(-1, 1)).is_none());
    }
}
