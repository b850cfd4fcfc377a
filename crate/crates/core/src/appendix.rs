//! Replays the SL(2,ℝ) worked example from the golden block of a catalog
//! entry, one identity at a time.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalog::{golden_scalar, CatalogEntry, Golden};
use crate::cones;
use crate::error::{Error, Result};
use crate::lie::{Covector, Involution};
use crate::linalg;
use crate::matrix::{bracket, Mat};
use crate::roots::HCParameter;
use crate::scalar::{Gauss, Rational};
use crate::triples::{self, Adaptation, Dictionary, SL2Triple};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub entry: String,
    pub identities: Vec<Identity>,
    pub pass: bool,
}

impl AppendixReport {
    pub fn failures(&self) -> impl Iterator<Item = &Identity> {
        self.identities.iter().filter(|i| !i.pass)
    }
}

struct Ctx<'a, R: Rational> {
    entry: &'a CatalogEntry<R>,
    g: &'a Golden,
    dict: Dictionary<R>,
    out: Vec<Identity>,
}

impl<R: Rational> Ctx<'_, R> {
    fn record<T: ToString + PartialEq>(&mut self, id: impl Into<String>, lhs: T, rhs: T) {
        let pass = lhs == rhs;
        self.out.push(Identity { id: id.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), pass });
    }

    fn fail(&mut self, id: impl Into<String>, err: &Error) {
        self.out.push(Identity { id: id.into(), lhs: format!("error: {err}"), rhs: "-".into(), pass: false });
    }

    fn mat(&self, name: &str) -> Result<Mat<R>> {
        let (sign, base) = split_sign(name);
        let m = self
            .g
            .matrices
            .iter()
            .find(|m| m.name == base)
            .ok_or_else(|| Error::Parse(format!("golden matrix `{base}` missing")))?;
        Ok(Mat::parse(&m.matrix)?.scale(&Gauss::from_int(sign)))
    }

    fn scalar(&self, s: &str) -> Result<Gauss<R>> {
        golden_scalar(s)
    }

    fn basis_of(&self, name: &str) -> Result<(Vec<String>, Vec<Mat<R>>)> {
        let names = if self.g.real_basis.iter().any(|n| n == name) { &self.g.real_basis } else { &self.g.theta_basis };
        let mats = names.iter().map(|n| self.mat(n)).collect::<Result<Vec<_>>>()?;
        Ok((names.clone(), mats))
    }

    /// `±X*` for a golden basis element X, in the realization's dual basis.
    fn dual(&self, name: &str) -> Result<Covector<R>> {
        let (sign, base) = split_sign(name);
        let (names, mats) = self.basis_of(base)?;
        let duals = self.entry.realization.dual_basis(&mats)?;
        let k = names.iter().position(|n| n == base).ok_or_else(|| Error::Parse(format!("`{base}` not in a golden basis")))?;
        Ok(duals[k].scale(&Gauss::from_int(sign)))
    }

    /// `κ_c(x, ·)` as a covector in the dual of the basis containing `dual_of`.
    fn psi_c(&self, c: &Gauss<R>, x: &Mat<R>, dual_of: &str) -> Result<Vec<Gauss<R>>> {
        let (_, mats) = self.basis_of(dual_of)?;
        mats.iter().map(|b| Ok(&x.try_mul(b)?.trace() * c)).collect()
    }

    fn torus(&self, z: &Gauss<R>) -> Result<Mat<R>> {
        Ok(Mat::parse(&self.g.torus_generator)?.scale(z))
    }
}

fn split_sign(name: &str) -> (i64, &str) {
    match name.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, name),
    }
}

/// Replays every identity of the golden block; individual failures are
/// recorded rather than returned as errors.
pub fn verify_appendix<R: Rational>(entry: &CatalogEntry<R>) -> Result<AppendixReport> {
    let g = entry.golden.as_ref().ok_or_else(|| Error::Unsupported(format!("entry `{}` has no golden block", entry.name)))?;
    let dict = Dictionary::new(entry.clone())?;
    let mut cx = Ctx { entry, g, dict, out: Vec::new() };
    type Step<R> = fn(&mut Ctx<'_, R>) -> Result<()>;
    let steps: [(&str, Step<R>); 10] = [
        ("commutation", commutation),
        ("involutions", involutions),
        ("change-of-basis", change_of_basis),
        ("forms", forms),
        ("psi", psi),
        ("torus-weights", torus_weights),
        ("asymptotic-cone", asymptotic_cone),
        ("av-ks-wf", av_ks_wf),
        ("whittaker", whittaker),
        ("kostant", kostant),
    ];
    for (group, f) in steps {
        if let Err(e) = f(&mut cx) {
            cx.fail(format!("{group}: setup"), &e);
        }
    }
    let pass = cx.out.iter().all(|i| i.pass);
    Ok(AppendixReport { entry: entry.name.clone(), identities: cx.out, pass })
}

fn commutation<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    let bases = [cx.g.real_basis.clone(), cx.g.theta_basis.clone()];
    for names in bases {
        let [e, f, h] = [&names[0], &names[1], &names[2]];
        let (me, mf, mh) = (cx.mat(e)?, cx.mat(f)?, cx.mat(h)?);
        cx.record(format!("[{h},{e}] = 2{e}"), bracket(&mh, &me)?, me.scale(&Gauss::from_int(2)));
        cx.record(format!("[{h},{f}] = -2{f}"), bracket(&mh, &mf)?, mf.scale(&Gauss::from_int(-2)));
        cx.record(format!("[{e},{f}] = {h}"), bracket(&me, &mf)?, mh);
    }
    // The θ-basis is the conjugate of the real basis by (1 i; i 1)/√2.
    let c = Mat::parse(&[vec!["1".into(), "i".into()], vec!["i".into(), "1".into()]])?;
    let c_inv = linalg::inverse(&c)?;
    for (r, t) in cx.g.real_basis.clone().iter().zip(cx.g.theta_basis.clone().iter()) {
        let lhs = &(&c * &cx.mat(r)?) * &c_inv;
        cx.record(format!("g {r} g^-1 = {t}"), lhs, cx.mat(t)?);
    }
    Ok(())
}

fn involutions<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    let rz = &cx.entry.realization;
    let checks: [(&str, Involution, &str, &str); 9] = [
        ("sigma(ER) = -ER", Involution::Sigma, "ER", "-ER"),
        ("sigma(FR) = -FR", Involution::Sigma, "FR", "-FR"),
        ("sigma(HR) = HR", Involution::Sigma, "HR", "HR"),
        ("theta(ER) = FR", Involution::Theta, "ER", "FR"),
        ("theta(HR) = -HR", Involution::Theta, "HR", "-HR"),
        ("theta(Etheta) = -Etheta", Involution::Theta, "Etheta", "-Etheta"),
        ("theta(Ftheta) = -Ftheta", Involution::Theta, "Ftheta", "-Ftheta"),
        ("sigma(Etheta) = Ftheta", Involution::Sigma, "Etheta", "Ftheta"),
        ("sigma(Htheta) = -Htheta", Involution::Sigma, "Htheta", "-Htheta"),
    ];
    for (id, which, x, y) in checks {
        match rz.apply_involution(which, &cx.mat(x)?) {
            Ok(lhs) => cx.record(id, lhs, cx.mat(y)?),
            Err(e) => cx.fail(id, &e),
        }
    }
    Ok(())
}

fn change_of_basis<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    for rule in cx.g.change_of_basis.clone() {
        let mut sum = Mat::zeros(2, 2);
        let mut terms = Vec::new();
        for (name, coeff) in &rule.terms {
            sum = &sum + &cx.mat(name)?.scale(&cx.scalar(coeff)?);
            terms.push(format!("({coeff}){name}"));
        }
        cx.record(format!("{} = {}", rule.target, terms.join(" + ")), cx.mat(&rule.target)?, sum);
    }
    Ok(())
}

fn forms<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    let rz = &cx.entry.realization;
    let four = cx.scalar(&cx.g.killing_constant)?;
    let (names, mats) = cx.basis_of(&cx.g.real_basis[0])?;
    for (a, x) in names.iter().zip(&mats) {
        for (b, y) in names.iter().zip(&mats) {
            let id = format!("kappa({a},{b}) = {four} tr({a}{b})");
            match rz.killing_form(x, y) {
                Ok(k) => cx.record(id, k, &x.try_mul(y)?.trace() * &four),
                Err(e) => cx.fail(id, &e),
            }
        }
    }
    let killing = cx.scalar(&cx.g.torus_killing)?;
    let trace = cx.scalar(&cx.g.torus_trace)?;
    for [zs, ws] in cx.g.torus_samples.clone() {
        let (z, w) = (cx.scalar(&zs)?, cx.scalar(&ws)?);
        let (tz, tw) = (cx.torus(&z)?, cx.torus(&w)?);
        let zw = &z * &w;
        let ad = |t: &Mat<R>| rz.coords(t).map(|c| rz.ad(&c));
        let id = format!("tr(ad t_{zs} ad t_{ws}) = {killing}·zw");
        match (ad(&tz), ad(&tw)) {
            (Ok(a), Ok(b)) => cx.record(id, (&a * &b).trace(), &killing * &zw),
            (Err(e), _) | (_, Err(e)) => cx.fail(id, &e),
        }
        for cs in cx.g.form_constants.clone() {
            let c = cx.scalar(&cs)?;
            let lhs = &tz.try_mul(&tw)?.trace() * &c;
            cx.record(format!("kappa_{cs}(t_{zs}, t_{ws}) = {trace}·{cs}·zw"), lhs, &(&trace * &c) * &zw);
        }
    }
    Ok(())
}

fn psi<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    for cs in cx.g.form_constants.clone() {
        let c = cx.scalar(&cs)?;
        for rule in cx.g.psi.clone() {
            let x = cx.mat(&rule.element)?;
            let lhs = cx.psi_c(&c, &x, &rule.dual)?;
            let (names, _) = cx.basis_of(&rule.dual)?;
            let k = names.iter().position(|n| *n == rule.dual).unwrap_or(0);
            let coeff = &cx.scalar(&rule.factor)? * &c;
            let rhs: Vec<Gauss<R>> = (0..names.len()).map(|j| if j == k { coeff.clone() } else { Gauss::zero() }).collect();
            cx.record(format!("psi_{cs}({}) = {}·{cs}·{}*", rule.element, rule.factor, rule.dual), Covector::new(lhs), Covector::new(rhs));
        }
    }
    // The Killing form is κ_4: ψ on the realization.
    for rule in cx.g.psi_killing.clone() {
        let rz = &cx.entry.realization;
        let id = format!("psi({}) = {}·{}*", rule.element, rule.factor, rule.covector);
        match rz.psi(&cx.mat(&rule.element)?) {
            Ok(lhs) => {
                let rhs = cx.dual(&rule.covector)?.scale(&cx.scalar(&rule.factor)?);
                cx.record(id, lhs, rhs);
            }
            Err(e) => cx.fail(id, &e),
        }
    }
    Ok(())
}

fn torus_weights<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    let ident = cx.g.torus_identity.clone();
    cx.record(format!("t_{} = {}", ident.z, ident.equals), cx.torus(&cx.scalar(&ident.z)?)?, cx.mat(&ident.equals)?);
    // H_θ*(t_1) is the H_θ coefficient of t_1 in the θ-basis.
    let (names, mats) = cx.basis_of("Htheta")?;
    let k = names.iter().position(|n| n == "Htheta").unwrap_or(0);
    let t1 = cx.torus(&Gauss::one())?;
    let flat: Vec<_> = mats.iter().map(|m| m.entries().to_vec()).collect();
    let h_star_t1 = linalg::coordinates(&flat, t1.entries())
        .ok_or_else(|| Error::NoSolution("t_1 outside the theta basis span".into()))?
        .swap_remove(k);
    let factor = cx.scalar(&cx.g.lambda_factor)?;
    for zs in cx.g.lambda_samples.clone() {
        // λ_z(t_1) = z.
        let z = cx.scalar(&zs)?;
        cx.record(format!("lambda_{zs} = ({})·{zs}·Htheta*", cx.g.lambda_factor), z.clone(), &(&factor * &z) * &h_star_t1);
    }
    let alpha = |cx: &Ctx<'_, R>, t: &Mat<R>| -> Result<Gauss<R>> {
        let e = cx.mat("Etheta")?;
        let b = bracket(t, &e)?;
        let j = e.entries().iter().position(|x| !x.is_zero()).ok_or_else(|| Error::Singular("Etheta is zero".into()))?;
        Ok(b.entries()[j].clone() / e.entries()[j].clone())
    };
    let cz = cx.scalar(&cx.g.coroot_z)?;
    let coroot = cx.torus(&cz)?;
    cx.record("alpha(t_1) = 2i", alpha(cx, &t1)?, Gauss::new(R::zero(), R::from_int(2)));
    cx.record(format!("alpha(t_{}) = 2", cx.g.coroot_z), alpha(cx, &coroot)?, Gauss::from_int(2));
    let rz = &cx.entry.realization;
    let mut cat = vec![Gauss::zero(); rz.dim()];
    for (j, c) in cx.entry.roots.coroots[0].iter().enumerate() {
        cat[rz.cartan[j]] = Gauss::real(c.clone());
    }
    let catalog_coroot = rz.element(&cat);
    let sign = if cx.entry.roots.roots[0].first().copied().unwrap_or(0) > 0 { 1 } else { -1 };
    cx.record(format!("t_{} is the catalog coroot", cx.g.coroot_z), coroot.clone(), catalog_coroot.scale(&Gauss::from_int(sign)));
    let rho = cx.scalar(&cx.g.rho_z)?;
    cx.record(format!("rho = lambda_{}", cx.g.rho_z), &alpha(cx, &t1)? * &Gauss::frac(1, 2), rho);
    for k in cx.g.k_values.clone() {
        // λ_{ik}(t_1) = ik and λ_{ik}(t_x) = x·ik.
        let ik = Gauss::new(R::zero(), R::from_int(k));
        cx.record(format!("lambda_i{k} = {k}·Htheta*"), ik.clone(), &h_star_t1 * &Gauss::from_int(k));
        cx.record(format!("<lambda_i{k}, coroot> = {k}"), &cz * &ik, Gauss::from_int(k));
    }
    Ok(())
}

fn lambda_ik<R: Rational>(k: i64) -> HCParameter<R> {
    HCParameter::from_ints(&[k])
}

fn asymptotic_cone<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    let h = cx.mat("Htheta")?;
    for k in cx.g.k_values.clone() {
        // diag(x, 1/x)·kH_θ·diag(1/x, x) / x² → upper corner as x → ∞.
        let m = h.scale(&Gauss::from_int(k));
        let mut limit = Mat::zeros(2, 2);
        limit[(0, 1)] = m[(0, 1)].clone();
        let expect = cx.mat(if k > 0 { &cx.g.ac_matrix.positive } else { &cx.g.ac_matrix.negative })?;
        let ratio = positive_multiple(&limit, &expect);
        cx.record(format!("AC(G(R)·{k}Htheta) = G(R)·{}", signed_name(k, &cx.g.ac_matrix.positive, &cx.g.ac_matrix.negative)), ratio, true);
        let lam = lambda_ik::<R>(k);
        let golden = cx.dual(if k > 0 { &cx.g.ac_covector.positive } else { &cx.g.ac_covector.negative })?;
        let id = format!("AC(G(R)·lambda_i{k}) = G(R)·{}*", signed_name(k, &cx.g.ac_covector.positive, &cx.g.ac_covector.negative));
        match cones::ac_scaling_sl2(cx.entry, &lam).and_then(|c| cones::real_orbit_label(cx.entry, &c)) {
            Ok(l) => {
                let rhs = cones::real_orbit_label(cx.entry, &golden)?;
                cx.record(id, l, rhs);
            }
            Err(e) => cx.fail(id, &e),
        }
        // The form constant cancels: ψ_c(−sgn(k/2c)E_R) = −sgn(k/2c)·c·F_R*.
        for cs in cx.g.form_constants.clone() {
            let c = cx.scalar(&cs)?;
            let s = if (k > 0) == (c.re > R::zero()) { -1 } else { 1 };
            let cov = cx.dual("FR")?.scale(&(&c * &Gauss::from_int(s)));
            let l = cones::real_orbit_label(cx.entry, &cov)?;
            let rhs = cones::real_orbit_label(cx.entry, &golden)?;
            cx.record(format!("AC(G(R)·lambda_i{k}) via psi_{cs}"), l, rhs);
        }
    }
    Ok(())
}

fn negate_name(name: &str, sign: i64) -> String {
    match (sign < 0, name.strip_prefix('-')) {
        (false, _) => name.to_string(),
        (true, Some(rest)) => rest.to_string(),
        (true, None) => format!("-{name}"),
    }
}

fn positive_multiple<R: Rational>(a: &Mat<R>, b: &Mat<R>) -> bool {
    let Some(k) = b.entries().iter().position(|x| !x.is_zero()) else { return false };
    let r = a.entries()[k].clone() / b.entries()[k].clone();
    r.is_real() && r.re > R::zero() && *a == b.scale(&r)
}

fn signed_name<'a>(k: i64, pos: &'a str, neg: &'a str) -> &'a str {
    if k > 0 {
        pos
    } else {
        neg
    }
}

fn av_ks_wf<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    let rz = cx.entry.realization.clone();
    for k in cx.g.k_values.clone() {
        let lam = lambda_ik::<R>(k);
        let fpi_name = signed_name(k, &cx.g.f_pi.positive, &cx.g.f_pi.negative).to_string();
        match cx.dict.f_pi(&lam) {
            Ok(f) => cx.record(format!("F_pi(lambda_i{k}) = {fpi_name}"), rz.element(&f), cx.mat(&fpi_name)?),
            Err(e) => cx.fail(format!("F_pi(lambda_i{k})"), &e),
        }
        let av_name = signed_name(k, &cx.g.av.positive, &cx.g.av.negative).to_string();
        let av_golden = cx.dict.k_orbit_label(&cx.dual(&av_name)?)?;
        match cx.dict.av_of(&lam) {
            Ok(av) => cx.record(format!("AV(pi(lambda_i{k})) = K·{av_name}*"), av, av_golden),
            Err(e) => cx.fail(format!("AV(pi(lambda_i{k}))"), &e),
        }
        let wf_name = signed_name(k, &cx.g.wf.positive, &cx.g.wf.negative).to_string();
        let wf_golden = cones::real_orbit_label(cx.entry, &cx.dual(&wf_name)?)?;
        match cx.dict.wf_routes(&lam) {
            Ok(r) => {
                cx.record(format!("WF(pi(lambda_i{k})) = G(R)·{wf_name}*"), r.explicit, wf_golden);
                cx.record(format!("KS(AV(pi(lambda_i{k}))) = WF"), r.ks_of_av, wf_golden);
            }
            Err(e) => cx.fail(format!("WF(pi(lambda_i{k}))"), &e),
        }
    }
    for rule in cx.g.ks.clone() {
        // KS(K·X) = G(ℝ)·Y, read through ψ on both sides.
        let lhs = cx.dict.k_orbit_label(&rz.psi(&cx.mat(&rule.k_orbit)?)?)?;
        let rhs = cones::real_orbit_label(cx.entry, &rz.psi(&cx.mat(&rule.real_orbit)?)?)?;
        cx.record(format!("KS(K·{}) = G(R)·{}", rule.k_orbit, rule.real_orbit), lhs.tag, rhs.tag);
    }
    // The explicit maps on the standard triples.
    let coords = |cx: &Ctx<'_, R>, n: &str| -> Result<Vec<Gauss<R>>> { rz.coords(&cx.mat(n)?) };
    let theta = SL2Triple { e: coords(cx, "Etheta")?, h: coords(cx, "Htheta")?, f: coords(cx, "Ftheta")?, adaptation: Adaptation::ThetaAdapted };
    let real = SL2Triple { e: coords(cx, "ER")?, h: coords(cx, "HR")?, f: coords(cx, "FR")?, adaptation: Adaptation::RealAdapted };
    cx.record("(Etheta,Htheta,Ftheta) is theta-adapted", theta.check(&rz), true);
    cx.record("(ER,HR,FR) is real-adapted", real.check(&rz), true);
    let show = |t: &SL2Triple<R>| format!("{:?}", [&t.e, &t.h, &t.f].map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()));
    cx.record("KS(Etheta,Htheta,Ftheta) = (ER,HR,FR)", show(&triples::ks_theta_to_real(&theta)?), show(&real));
    cx.record("KS^-1(ER,HR,FR) = (Etheta,Htheta,Ftheta)", show(&triples::ks_real_to_theta(&real)?), show(&theta));
    Ok(())
}

fn whittaker<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    for k in cx.g.k_values.clone() {
        let lam = lambda_ik::<R>(k);
        let wf_name = signed_name(k, &cx.g.wf.positive, &cx.g.wf.negative).to_string();
        let golden = cones::real_orbit_label(cx.entry, &cx.dual(&wf_name)?)?;
        match cx.dict.whittaker_of(&lam) {
            Ok(w) => cx.record(format!("Wh(pi(lambda_i{k})) = w({wf_name}*)"), w.orbit.tag, golden.tag),
            Err(e) => cx.fail(format!("Wh(pi(lambda_i{k}))"), &e),
        }
    }
    Ok(())
}

fn kostant<R: Rational>(cx: &mut Ctx<'_, R>) -> Result<()> {
    let kg = cx.g.kostant.clone();
    let factor = cx.scalar(&kg.factor)?;
    for sign in [1i64, -1] {
        let xi = cx.dual(&kg.covector)?.scale(&Gauss::from_int(sign));
        let target = cx.dual(&kg.contains)?.scale(&(&factor * &Gauss::from_int(sign)));
        for cs in cx.g.form_constants.clone() {
            // κ_c = (c/4)κ.
            let c = cx.scalar(&cs)?;
            let scale = c.re.clone() / cx.scalar(&cx.g.killing_constant)?.re;
            let id = format!("K({}*) contains {}{}·{}* (psi_{cs})", negate_name(&kg.covector, sign), if sign < 0 { "-" } else { "" }, kg.factor, kg.contains);
            match cones::kostant_section_scaled(cx.entry, &xi, &scale) {
                Ok(s) => {
                    let diff = target.sub(&s.base);
                    let mut cols: Vec<Vec<Gauss<R>>> = s.directions.iter().map(|d| d.coords.clone()).collect();
                    let r0 = linalg::rank(&Mat::from_cols(&cols)?);
                    cols.push(diff.coords);
                    let r1 = linalg::rank(&Mat::from_cols(&cols)?);
                    cx.record(id, r1 == r0, true);
                }
                Err(e) => cx.fail(id, &e),
            }
        }
        let lam = HCParameter::from_ints(&[2 * sign]);
        let xi_label = cones::real_orbit_label(cx.entry, &xi)?;
        let id = format!("K({}) meets G(R)·{}Htheta*", xi_label, 2 * sign);
        match cones::kostant_section(cx.entry, &xi).and_then(|s| cones::section_meets_orbit(cx.entry, &s, &lam)) {
            Ok(w) => cx.record(id, w.map(|c| c.to_string()).unwrap_or_else(|| "no intersection".into()), target.to_string()),
            Err(e) => cx.fail(id, &e),
        }
    }
    Ok(())
}
