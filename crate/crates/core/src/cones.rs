//! Orbit labels, Kostant sections and asymptotic cones.
//!
//! Real principal nilpotent orbits are labelled by the sign of
//! `v ↦ ω(N^{2n−1}v, v)` for `ψ⁻¹(ξ) = iN`; K-orbits by K-invariant power
//! traces of a graded Jacobson–Morozov semisimple element.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::lie::{Covector, Involution, Realization};
use crate::linalg::{self, Vector};
use crate::matrix::Mat;
use crate::roots::HCParameter;
use crate::scalar::{Gauss, Rational};
use crate::triples::jacobson_morozov;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    RealOrbit,
    KOrbit,
    Whittaker,
}

/// A principal orbit (or Whittaker datum) identified by a sign tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    pub side: Side,
    pub tag: i8,
}

impl OrbitLabel {
    pub fn new(side: Side, tag: i8) -> Self {
        OrbitLabel { side, tag: tag.signum() }
    }

    /// Compact form such as `wf:+`, `av:-` or `wh:+`.
    pub fn short(&self) -> String {
        let p = match self.side {
            Side::RealOrbit => "wf",
            Side::KOrbit => "av",
            Side::Whittaker => "wh",
        };
        format!("{p}:{}", if self.tag > 0 { '+' } else { '-' })
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos = self.tag > 0;
        let s = match (self.side, pos) {
            (Side::RealOrbit, true) => "G(R)·ER*",
            (Side::RealOrbit, false) => "G(R)·-ER*",
            (Side::KOrbit, true) => "K·Fθ*",
            (Side::KOrbit, false) => "K·Eθ*",
            (Side::Whittaker, true) => "w(ER*)",
            (Side::Whittaker, false) => "w(-ER*)",
        };
        f.write_str(s)
    }
}

impl FromStr for OrbitLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        for side in [Side::RealOrbit, Side::KOrbit, Side::Whittaker] {
            for tag in [1, -1] {
                let l = OrbitLabel::new(side, tag);
                if s == l.short() || s == l.to_string() {
                    return Ok(l);
                }
            }
        }
        Err(Error::Parse(format!("unknown orbit label `{s}` (expected e.g. wf:+, av:-, wh:+)")))
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OrbitLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `−i·x` as a real matrix, for `x` with `σx = −x`.
fn imaginary_part<R: Rational>(rz: &Realization<R>, x: &[Gauss<R>]) -> Result<Mat<R>> {
    let minus: Vector<R> = x.iter().map(|a| -a).collect();
    if rz.involution_coords(Involution::Sigma, x) != minus {
        return Err(Error::Unsupported("element is not in i g(R)".into()));
    }
    let n = rz.element(x).scale(&-Gauss::i());
    if !n.is_real() {
        return Err(Error::Unsupported("real form is not realized by real matrices".into()));
    }
    Ok(n)
}

/// Sign of the quadratic form `v ↦ ω(N^{2n−1}v, v)` on the matrix space,
/// where `ψ⁻¹(ξ) = iN` is principal nilpotent.
pub fn real_orbit_label<R: Rational>(entry: &CatalogEntry<R>, xi: &Covector<R>) -> Result<OrbitLabel> {
    let rz = &entry.realization;
    let x = rz.psi_inv_coords(xi);
    if !rz.is_regular_nilpotent(&rz.element(&x)) {
        return Err(Error::NotRegularNilpotent);
    }
    let n = imaginary_part(rz, &x)?;
    let m = rz.matrix_dim() as u32;
    let a = &n.pow(m - 1).transpose() * &entry.symplectic_form;
    let tr = (&a + &a.transpose()).trace();
    if tr.is_zero() {
        return Err(Error::Inconsistent("orbit form has zero trace".into()));
    }
    Ok(OrbitLabel::new(Side::RealOrbit, if tr.re > R::zero() { 1 } else { -1 }))
}

/// Ordered K-invariants of the graded JM semisimple element of `x ∈ 𝔰`.
pub type KSignature<R> = Vec<Gauss<R>>;

/// Power traces of `ad H` on the joint eigenspaces of the center of 𝔨
/// in 𝔰, where `H ∈ 𝔨` comes from a graded triple through `x`.
pub fn k_signature<R: Rational>(entry: &CatalogEntry<R>, x: &[Gauss<R>]) -> Result<KSignature<R>> {
    let rz = &entry.realization;
    let rd = &entry.roots;
    let minus: Vector<R> = x.iter().map(|a| -a).collect();
    if rz.involution_coords(Involution::Theta, x) != minus {
        return Err(Error::Unsupported("element is not in s".into()));
    }
    if !rz.is_regular_nilpotent(&rz.element(x)) {
        return Err(Error::NotRegularNilpotent);
    }
    let t = jacobson_morozov(rz, x, true, false)?;
    let adh = rz.ad(&t.h);
    // Center of 𝔨 inside 𝔱: common kernel of the compact roots.
    let r = rz.rank();
    let compact: Vec<Vector<R>> = (0..rd.len())
        .filter(|&a| entry.grading.is_compact(a))
        .map(|a| rd.roots[a].iter().map(|&v| Gauss::from_int(v)).collect())
        .collect();
    let center = if compact.is_empty() {
        (0..r).map(|k| (0..r).map(|j| Gauss::from_int(i64::from(j == k))).collect()).collect()
    } else {
        linalg::kernel(&Mat::from_rows(compact)?)
    };
    let mut groups: Vec<(Vec<Gauss<R>>, Vec<usize>)> = Vec::new();
    for a in (0..rd.len()).filter(|&a| !entry.grading.is_compact(a)) {
        let key: Vec<Gauss<R>> =
            center.iter().map(|z| rd.roots[a].iter().zip(z).fold(Gauss::zero(), |acc, (&w, c)| &acc + &c.scale(&R::from_int(w)))).collect();
        let idx = rd.root_vectors[a];
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(idx),
            None => groups.push((key, vec![idx])),
        }
    }
    groups.sort_by(|a, b| a.0.iter().map(|g| (&g.re, &g.im)).cmp(b.0.iter().map(|g| (&g.re, &g.im))));
    let mut sig = Vec::new();
    for (_, idx) in &groups {
        let block = Mat::from_fn(idx.len(), idx.len(), |i, j| adh[(idx[i], idx[j])].clone());
        let mut p = Mat::identity(idx.len());
        for _ in 0..idx.len() {
            p = &p * &block;
            sig.push(p.trace());
        }
    }
    Ok(sig)
}

/// Eigenvalue data `(b, sign)` of a regular elliptic `x ∈ i𝔤(ℝ)`: for each
/// eigenvalue `b` of `N²` (`x = iN`), the sign of `ω(Nv, v)` on `ker(N² − b)`.
pub fn elliptic_signature<R: Rational>(entry: &CatalogEntry<R>, x: &[Gauss<R>]) -> Result<Vec<(R, i8)>> {
    let rz = &entry.realization;
    let n = imaginary_part(rz, x)?;
    let n2 = &n * &n;
    let mut roots = linalg::rational_roots(&linalg::char_poly(&n2))?;
    roots.dedup();
    let omega = &entry.symplectic_form;
    let mut out = Vec::new();
    for b in roots {
        if b >= R::zero() {
            return Err(Error::Unsupported("element is not elliptic".into()));
        }
        let shifted = &n2 - &Mat::identity(n2.rows()).scale(&Gauss::real(b.clone()));
        let space = linalg::kernel(&shifted);
        let gram = Mat::from_fn(space.len(), space.len(), |i, j| {
            let nv = n.apply(&space[i]);
            let a = linalg::dot(&nv, &omega.apply(&space[j]));
            let nw = n.apply(&space[j]);
            let c = linalg::dot(&nw, &omega.apply(&space[i]));
            &(&a + &c) * &Gauss::frac(1, 2)
        });
        if !is_definite(&gram) {
            return Err(Error::Unsupported("eigenspace form is not definite".into()));
        }
        let tr = gram.trace();
        out.push((b, if tr.re > R::zero() { 1 } else { -1 }));
    }
    Ok(out)
}

fn is_definite<R: Rational>(gram: &Mat<R>) -> bool {
    crate::lie::is_negative_definite(gram) || crate::lie::is_negative_definite(&gram.scale(&-Gauss::one()))
}

/// `ψ(X₀ + Cent(Y))`, with the directions graded by `ad H` so that each
/// basic invariant is affine in its own coordinate.
#[derive(Clone, Debug)]
pub struct AffineSubspace<R> {
    pub base: Covector<R>,
    pub directions: Vec<Covector<R>>,
    /// Degrees of the invariants matched to each direction.
    pub degrees: Vec<usize>,
}

impl<R: Rational> AffineSubspace<R> {
    pub fn point(&self, t: &[Gauss<R>]) -> Covector<R> {
        t.iter().zip(&self.directions).fold(self.base.clone(), |acc, (s, d)| acc.add(&d.scale(s)))
    }

    /// Whether the direction spaces agree.
    pub fn same_directions(&self, o: &Self) -> bool {
        let a: Vec<Vector<R>> = self.directions.iter().map(|d| d.coords.clone()).collect();
        let b: Vec<Vector<R>> = o.directions.iter().map(|d| d.coords.clone()).collect();
        let mut both = a.clone();
        both.extend(b.iter().cloned());
        let r = |v: &[Vector<R>]| if v.is_empty() { 0 } else { linalg::rank(&Mat::from_cols(v).expect("equal lengths")) };
        r(&a) == r(&b) && r(&both) == r(&a)
    }
}

/// Kostant section through a principal nilpotent ξ, built from the Killing form.
pub fn kostant_section<R: Rational>(entry: &CatalogEntry<R>, xi: &Covector<R>) -> Result<AffineSubspace<R>> {
    kostant_section_scaled(entry, xi, &R::one())
}

/// Kostant section built from the form `s·κ` in place of κ.
pub fn kostant_section_scaled<R: Rational>(entry: &CatalogEntry<R>, xi: &Covector<R>, s: &R) -> Result<AffineSubspace<R>> {
    if s.is_zero() {
        return Err(Error::Singular("form scale is zero".into()));
    }
    let rz = &entry.realization;
    let inv = Gauss::real(R::one() / s.clone());
    let x0 = linalg::scale_vec(&inv, &rz.psi_inv_coords(xi));
    if !rz.is_regular_nilpotent(&rz.element(&x0)) {
        return Err(Error::NotRegularNilpotent);
    }
    let minus: Vector<R> = x0.iter().map(|a| -a).collect();
    let real = rz.involution_coords(Involution::Sigma, &x0) == minus;
    let t = jacobson_morozov(rz, &x0, false, real)?;
    let ady = rz.ad(&t.f);
    let adh = rz.ad(&t.h);
    let d = rz.dim();
    let mut directions = Vec::new();
    let mut degrees = Vec::new();
    let mut j = 0i64;
    while directions.len() < rz.rank() && j > -4 * d as i64 {
        let mut stacked = ady.to_rows();
        let shifted = &adh - &Mat::identity(d).scale(&Gauss::from_int(j));
        stacked.extend(shifted.to_rows());
        for v in linalg::kernel(&Mat::from_rows(stacked)?) {
            let v = if real { imaginary_representative(rz, &v) } else { v };
            let psi = rz.psi_coords(&v).scale(&Gauss::real(s.clone()));
            directions.push(psi);
            degrees.push((1 - j / 2) as usize);
        }
        j -= 2;
    }
    if directions.len() != rz.rank() {
        return Err(Error::Inconsistent("centralizer of Y has the wrong dimension".into()));
    }
    Ok(AffineSubspace { base: xi.clone(), directions, degrees })
}

/// A nonzero multiple of `v` with `σv = −v` (for a σ-stable line).
fn imaginary_representative<R: Rational>(rz: &Realization<R>, v: &[Gauss<R>]) -> Vector<R> {
    let sv = rz.involution_coords(Involution::Sigma, v);
    let w: Vector<R> = v.iter().zip(&sv).map(|(a, b)| a - b).collect();
    if !linalg::is_zero_vec(&w) {
        return w;
    }
    v.iter().zip(&sv).map(|(a, b)| (a + b).mul_i()).collect()
}

/// Intersects the section with `G(ℝ)·λ`; returns the meeting point.
///
/// Basic invariants are solved one direction at a time; the solution is
/// unique, and membership in the real orbit is decided by the elliptic
/// signature.
pub fn section_meets_orbit<R: Rational>(entry: &CatalogEntry<R>, section: &AffineSubspace<R>, lambda: &HCParameter<R>) -> Result<Option<Covector<R>>> {
    let rz = &entry.realization;
    let m = rz.psi_inv_coords(&lambda.covector(rz));
    let target = linalg::char_poly(&rz.element(&m));
    let n = rz.matrix_dim();
    let mut order: Vec<usize> = (0..section.directions.len()).collect();
    order.sort_by_key(|&k| section.degrees[k]);
    let mut t = vec![Gauss::zero(); section.directions.len()];
    let coeff = |t: &[Gauss<R>], deg: usize| -> Gauss<R> {
        let x = rz.psi_inv_coords(&section.point(t));
        linalg::char_poly(&rz.element(&x))[n - deg].clone()
    };
    for &k in &order {
        let deg = section.degrees[k];
        let at = |s: i64| {
            let mut tt = t.clone();
            tt[k] = Gauss::from_int(s);
            coeff(&tt, deg)
        };
        let (g0, g1, g2) = (at(0), at(1), at(2));
        if &(&g2 - &(&g1 * &Gauss::from_int(2))) + &g0 != Gauss::zero() {
            return Err(Error::Unsupported(format!("degree-{deg} invariant is not affine along its direction")));
        }
        let slope = &g1 - &g0;
        if slope.is_zero() {
            return Err(Error::Singular(format!("degree-{deg} invariant is constant along its direction")));
        }
        t[k] = (&target[n - deg] - &g0) / slope;
    }
    let point = section.point(&t);
    let p = rz.psi_inv_coords(&point);
    if linalg::char_poly(&rz.element(&p)) != target {
        return Err(Error::Inconsistent("section point has the wrong invariants".into()));
    }
    if t.iter().any(|s| !s.is_real()) {
        return Ok(None);
    }
    let minus: Vector<R> = p.iter().map(|a| -a).collect();
    if rz.involution_coords(Involution::Sigma, &p) != minus {
        return Ok(None);
    }
    let meets = elliptic_signature(entry, &p)? == elliptic_signature(entry, &m)?;
    Ok(meets.then_some(point))
}

/// Whether the principal orbit through ξ lies in the asymptotic cone of `G(ℝ)·λ`.
pub fn asymptotic_cone_member<R: Rational>(entry: &CatalogEntry<R>, xi: &Covector<R>, lambda: &HCParameter<R>) -> Result<bool> {
    let s = kostant_section(entry, xi)?;
    Ok(section_meets_orbit(entry, &s, lambda)?.is_some())
}

/// Rank-one scaling limit: conjugating `ψ⁻¹(λ)` by `diag(x, 1/x)` and
/// dividing by `x²` leaves the upper corner as `x → ∞`.
pub fn ac_scaling_sl2<R: Rational>(entry: &CatalogEntry<R>, lambda: &HCParameter<R>) -> Result<Covector<R>> {
    let rz = &entry.realization;
    if rz.matrix_dim() != 2 {
        return Err(Error::Unsupported("scaling route needs a 2x2 realization".into()));
    }
    let m = rz.psi_inv(&lambda.covector(rz));
    if m[(0, 1)].is_zero() {
        return Err(Error::Singular("upper corner vanishes".into()));
    }
    let mut l = Mat::zeros(2, 2);
    l[(0, 1)] = m[(0, 1)].clone();
    rz.psi(&l)
}

/// Splits a space into lines on which a real element of `Cent(h)` acts by
/// distinct rational scalars.
pub fn split_root_lines<R: Rational>(rz: &Realization<R>, h: &[Gauss<R>], space: &[Vector<R>]) -> Result<Vec<Vector<R>>> {
    if space.len() <= 1 {
        return Ok(space.to_vec());
    }
    let cent = rz.centralizer(h);
    let mut cands = Vec::new();
    for v in &cent {
        let sv = rz.involution_coords(Involution::Sigma, v);
        cands.push(v.iter().zip(&sv).map(|(a, b)| a + b).collect::<Vector<R>>());
        cands.push(v.iter().zip(&sv).map(|(a, b)| (a - b).mul_i()).collect::<Vector<R>>());
    }
    let cands = crate::lie::realify_independent(&cands);
    // Try basis elements, then small combinations.
    let mut tries: Vec<Vector<R>> = cands.clone();
    for a in &cands {
        for b in &cands {
            for c in 2..4 {
                tries.push(linalg::axpy(&Gauss::from_int(c), b, a));
            }
        }
    }
    for hp in tries {
        let adh = rz.ad(&hp);
        let mut cols = Vec::new();
        for v in space {
            match linalg::coordinates(space, &adh.apply(v)) {
                Some(c) => cols.push(c),
                None => return Err(Error::Inconsistent("space is not stable under the centralizer".into())),
            }
        }
        let a = Mat::from_cols(&cols)?;
        let Ok(mut roots) = linalg::rational_roots(&linalg::char_poly(&a)) else { continue };
        let before = roots.len();
        roots.dedup();
        if roots.len() != before {
            continue;
        }
        let mut lines = Vec::new();
        for mu in roots.iter().rev() {
            let k = linalg::kernel(&(&a - &Mat::identity(a.rows()).scale(&Gauss::real(mu.clone()))));
            let c = &k[0];
            let v = space.iter().zip(c).fold(vec![Gauss::zero(); rz.dim()], |acc, (b, s)| linalg::axpy(s, b, &acc));
            lines.push(v);
        }
        return Ok(lines);
    }
    Err(Error::Unsupported("no rational splitting element in the centralizer".into()))
}

/// Rescales `v ∈ i𝔤(ℝ)` so that its last nonzero matrix entry is `i`.
pub fn normalize_imaginary<R: Rational>(rz: &Realization<R>, v: &[Gauss<R>]) -> Result<Vector<R>> {
    let m = rz.element(v);
    let last = m.entries().iter().rev().find(|x| !x.is_zero()).ok_or_else(|| Error::Singular("zero vector".into()))?;
    let w = linalg::scale_vec(&(Gauss::i() / last.clone()), v);
    let minus: Vector<R> = w.iter().map(|a| -a).collect();
    if rz.involution_coords(Involution::Sigma, &w) != minus {
        return Err(Error::Unsupported("root line is not defined over the real form".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triples::Dictionary;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type D = Dictionary<BigRational>;

    fn sl2() -> D {
        D::from_bundled("sl2r").unwrap()
    }

    fn coords(d: &D, name: &str) -> Vector<BigRational> {
        d.rz().coords(&d.entry.golden_matrix(name).unwrap()).unwrap()
    }

    /// `c·X*` for a golden element X, as a covector in the realization's dual basis.
    fn dual(d: &D, name: &str, c: i64) -> Covector<BigRational> {
        let names = ["ER", "FR", "HR"];
        let mats: Vec<_> = names.iter().map(|n| d.entry.golden_matrix(n).unwrap()).collect();
        let duals = d.rz().dual_basis(&mats).unwrap();
        duals[names.iter().position(|n| *n == name).unwrap()].scale(&Gauss::from_int(c))
    }

    #[test]
    fn label_parse_and_render() {
        for s in ["wf:+", "wf:-", "av:+", "av:-", "wh:+", "wh:-"] {
            let l: OrbitLabel = s.parse().unwrap();
            assert_eq!(l.short(), s);
            assert_eq!(l.to_string().parse::<OrbitLabel>().unwrap(), l);
        }
        assert_eq!("wf:-".parse::<OrbitLabel>().unwrap().to_string(), "G(R)·-ER*");
        assert_eq!("av:-".parse::<OrbitLabel>().unwrap().to_string(), "K·Eθ*");
        assert!("xx:+".parse::<OrbitLabel>().is_err());
    }

    #[test]
    fn sl2_real_labels() {
        let d = sl2();
        let plus = real_orbit_label(&d.entry, &dual(&d, "ER", 1)).unwrap();
        let minus = real_orbit_label(&d.entry, &dual(&d, "ER", -1)).unwrap();
        assert_eq!(plus.tag, 1);
        assert_eq!(minus.tag, -1);
        assert_eq!(real_orbit_label(&d.entry, &dual(&d, "FR", 1)).unwrap(), plus);
        assert_eq!(real_orbit_label(&d.entry, &dual(&d, "HR", 1)).unwrap_err(), Error::NotRegularNilpotent);
    }

    #[test]
    fn sl2_k_labels_differ() {
        let d = sl2();
        let e = d.k_orbit_label(&d.rz().psi_coords(&coords(&d, "Etheta"))).unwrap();
        let f = d.k_orbit_label(&d.rz().psi_coords(&coords(&d, "Ftheta"))).unwrap();
        assert_ne!(e, f);
        assert_eq!(e.to_string(), "K·Fθ*");
    }

    #[test]
    fn sl2_section_contains_two_h_theta_dual() {
        let d = sl2();
        let s = kostant_section(&d.entry, &dual(&d, "ER", -1)).unwrap();
        assert_eq!(s.directions.len(), 1);
        let w = section_meets_orbit(&d.entry, &s, &HCParameter::from_ints(&[2])).unwrap().unwrap();
        let h = d.rz().cartan[0];
        let mut expect = Covector::zero(3);
        expect.coords[h] = Gauss::from_int(2);
        assert_eq!(w, expect);
    }

    #[test]
    fn section_independent_of_form_scale() {
        let d = sl2();
        let xi = dual(&d, "ER", -1);
        let a = kostant_section_scaled(&d.entry, &xi, &BigRational::from_integer(1.into())).unwrap();
        let b = kostant_section_scaled(&d.entry, &xi, &BigRational::new(1.into(), 4.into())).unwrap();
        assert!(a.same_directions(&b));
        assert_eq!(a.base, b.base);
    }

    #[test]
    fn sl2_section_meets_by_sign() {
        let d = sl2();
        for k in (-20i64..=20).filter(|&k| k != 0) {
            let l = HCParameter::from_ints(&[k]);
            for (c, meets_when_positive) in [(-1, true), (1, false)] {
                let s = kostant_section(&d.entry, &dual(&d, "ER", c)).unwrap();
                let hit = section_meets_orbit(&d.entry, &s, &l).unwrap().is_some();
                assert_eq!(hit, (k > 0) == meets_when_positive, "k={k} c={c}");
            }
            let ac = real_orbit_label(&d.entry, &ac_scaling_sl2(&d.entry, &l).unwrap()).unwrap();
            assert_eq!(ac.tag, if k > 0 { -1 } else { 1 });
        }
    }

    #[test]
    fn elliptic_signature_separates_sign() {
        let d = sl2();
        let rz = d.rz();
        let a = elliptic_signature(&d.entry, &rz.psi_inv_coords(&HCParameter::from_ints(&[3]).covector(rz))).unwrap();
        let b = elliptic_signature(&d.entry, &rz.psi_inv_coords(&HCParameter::from_ints(&[-3]).covector(rz))).unwrap();
        assert_eq!(a[0].0, b[0].0);
        assert_ne!(a[0].1, b[0].1);
    }

    proptest! {
        #[test]
        fn positive_scaling_keeps_label(n in 1i64..40, m in 1i64..40, neg in any::<bool>()) {
            let d = sl2();
            let xi = dual(&d, "ER", if neg { -1 } else { 1 });
            let c = Gauss::frac(n, m);
            prop_assert_eq!(real_orbit_label(&d.entry, &xi.scale(&c)).unwrap(), real_orbit_label(&d.entry, &xi).unwrap());
        }
    }
}
