//! Matrix realizations of complex semisimple Lie algebras with a real
//! structure σ and a Cartan involution θ, the Killing form, and the
//! identification ψ of 𝔤 with 𝔤*.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::matrix::{bracket, Mat};
use crate::scalar::{Gauss, Rational};

/// Which involution to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    Sigma,
    Theta,
    SigmaTheta,
}

/// An element of 𝔤* in the dual of a realization's basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Covector<R> {
    pub coords: Vec<Gauss<R>>,
}

impl<R: Rational> Covector<R> {
    pub fn new(coords: Vec<Gauss<R>>) -> Self {
        Covector { coords }
    }
    pub fn zero(dim: usize) -> Self {
        Covector { coords: vec![Gauss::zero(); dim] }
    }
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
    pub fn scale(&self, s: &Gauss<R>) -> Self {
        Covector { coords: linalg::scale_vec(s, &self.coords) }
    }
    pub fn neg(&self) -> Self {
        self.scale(&-Gauss::one())
    }
    pub fn add(&self, o: &Self) -> Self {
        Covector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        Covector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coords)
    }
    /// Pairing with an element given in basis coordinates.
    pub fn pair(&self, x: &[Gauss<R>]) -> Gauss<R> {
        linalg::dot(&self.coords, x)
    }
}

impl<R: Rational> fmt::Display for Covector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<R: Rational> Serialize for Covector<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// A complex semisimple Lie algebra given by an ordered basis of matrices,
/// with σ (conjugate-linear) and θ (linear) stored as rational matrices.
///
/// σ acts on coordinates by `y = S·conj(x)` and θ by `y = T·x`.
#[derive(Clone, Debug)]
pub struct Realization<R> {
    pub name: String,
    pub basis: Vec<Mat<R>>,
    pub sigma: Mat<R>,
    pub theta: Mat<R>,
    /// Indices of the basis elements spanning the compact Cartan 𝔱.
    pub cartan: Vec<usize>,
    pivots: Vec<(usize, usize)>,
    pivot_inv: Mat<R>,
    ad_basis: Vec<Mat<R>>,
    killing: Mat<R>,
    killing_inv: Mat<R>,
}

impl<R: Rational> Realization<R> {
    /// Builds a realization and checks every structural invariant.
    pub fn new(name: &str, basis: Vec<Mat<R>>, sigma: Mat<R>, theta: Mat<R>, cartan: Vec<usize>) -> Result<Self> {
        let fail = |inv: &str| Error::Validation { entry: name.to_string(), invariant: inv.to_string() };
        let d = basis.len();
        if d == 0 {
            return Err(fail("nonempty basis"));
        }
        let n = basis[0].rows();
        if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(fail("basis matrices share one square shape"));
        }
        for (s, m) in [("sigma", &sigma), ("theta", &theta)] {
            if m.rows() != d || m.cols() != d || !m.is_real() {
                return Err(fail(&format!("{s} is a rational {d}x{d} matrix")));
            }
        }
        if cartan.iter().any(|&c| c >= d) {
            return Err(fail("cartan indices in range"));
        }
        let flat: Vec<Vector<R>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let bmat = Mat::from_cols(&flat)?;
        let (_, rows) = linalg::rref(&bmat.transpose());
        if rows.len() != d {
            return Err(fail("linearly independent basis"));
        }
        let pivots: Vec<(usize, usize)> = rows.iter().map(|&k| (k / n, k % n)).collect();
        let pmat = Mat::from_fn(d, d, |r, c| bmat[(rows[r], c)].clone());
        let pivot_inv = linalg::inverse(&pmat).map_err(|_| fail("pivot block invertible"))?;

        let mut rz = Realization {
            name: name.to_string(),
            basis,
            sigma,
            theta,
            cartan,
            pivots,
            pivot_inv,
            ad_basis: Vec::new(),
            killing: Mat::zeros(d, d),
            killing_inv: Mat::zeros(d, d),
        };

        // Structure constants: column j of ad(b_i) holds [b_i, b_j].
        let mut ad_basis = Vec::with_capacity(d);
        for i in 0..d {
            let mut cols = Vec::with_capacity(d);
            for j in 0..d {
                let br = bracket(&rz.basis[i], &rz.basis[j])?;
                let c = rz.coords(&br).map_err(|_| fail("closure under bracket"))?;
                cols.push(c);
            }
            ad_basis.push(Mat::from_cols(&cols)?);
        }
        rz.ad_basis = ad_basis;
        rz.killing = Mat::from_fn(d, d, |i, j| (&rz.ad_basis[i] * &rz.ad_basis[j]).trace());
        rz.killing_inv = linalg::inverse(&rz.killing).map_err(|_| fail("nondegenerate Killing form"))?;
        rz.validate_involutions()?;
        Ok(rz)
    }

    fn validate_involutions(&self) -> Result<()> {
        let fail = |inv: &str| Error::Validation { entry: self.name.clone(), invariant: inv.to_string() };
        let d = self.dim();
        let id = Mat::identity(d);
        if &self.sigma * &self.sigma != id {
            return Err(fail("sigma^2 = 1"));
        }
        if &self.theta * &self.theta != id {
            return Err(fail("theta^2 = 1"));
        }
        if &self.sigma * &self.theta != &self.theta * &self.sigma {
            return Err(fail("sigma theta = theta sigma"));
        }
        let e = |k: usize| {
            let mut v = vec![Gauss::zero(); d];
            v[k] = Gauss::one();
            v
        };
        for i in 0..d {
            for j in 0..d {
                let b = self.bracket_coords(&e(i), &e(j));
                for (which, label) in [(Involution::Theta, "theta is an automorphism"), (Involution::Sigma, "sigma is an automorphism")] {
                    let lhs = self.involution_coords(which, &b);
                    let rhs = self.bracket_coords(&self.involution_coords(which, &e(i)), &self.involution_coords(which, &e(j)));
                    if lhs != rhs {
                        return Err(fail(label));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn matrix_dim(&self) -> usize {
        self.basis[0].rows()
    }
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Basis coordinates of a matrix; fails if it is not in the span.
    pub fn coords(&self, x: &Mat<R>) -> Result<Vector<R>> {
        if x.rows() != self.matrix_dim() || x.cols() != self.matrix_dim() {
            return Err(Error::Dimension(format!("expected {}x{} matrix", self.matrix_dim(), self.matrix_dim())));
        }
        let rhs: Vector<R> = self.pivots.iter().map(|&(r, c)| x[(r, c)].clone()).collect();
        let c = self.pivot_inv.apply(&rhs);
        if !self.basis.is_empty() && self.element(&c) != *x {
            return Err(Error::NoSolution(format!("matrix is not in the span of {}", self.name)));
        }
        Ok(c)
    }

    pub fn element(&self, c: &[Gauss<R>]) -> Mat<R> {
        let n = self.matrix_dim();
        let mut out = Mat::zeros(n, n);
        for (k, x) in c.iter().enumerate() {
            if !x.is_zero() {
                out = &out + &self.basis[k].scale(x);
            }
        }
        out
    }

    pub fn unit(&self, k: usize) -> Vector<R> {
        let mut v = vec![Gauss::zero(); self.dim()];
        v[k] = Gauss::one();
        v
    }

    /// Matrix of ad(x) in the basis.
    pub fn ad(&self, x: &[Gauss<R>]) -> Mat<R> {
        let d = self.dim();
        let mut out = Mat::zeros(d, d);
        for (k, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.ad_basis[k].scale(c);
            }
        }
        out
    }

    pub fn bracket_coords(&self, x: &[Gauss<R>], y: &[Gauss<R>]) -> Vector<R> {
        self.ad(x).apply(y)
    }

    pub fn involution_coords(&self, which: Involution, x: &[Gauss<R>]) -> Vector<R> {
        match which {
            Involution::Theta => self.theta.apply(x),
            Involution::Sigma => {
                let cx: Vector<R> = x.iter().map(Gauss::conj).collect();
                self.sigma.apply(&cx)
            }
            Involution::SigmaTheta => {
                let s = self.involution_coords(Involution::Sigma, x);
                self.theta.apply(&s)
            }
        }
    }

    pub fn apply_involution(&self, which: Involution, x: &Mat<R>) -> Result<Mat<R>> {
        Ok(self.element(&self.involution_coords(which, &self.coords(x)?)))
    }

    /// Killing form `tr(ad x ∘ ad y)` on coordinates.
    pub fn killing_coords(&self, x: &[Gauss<R>], y: &[Gauss<R>]) -> Gauss<R> {
        linalg::dot(x, &self.killing.apply(y))
    }

    pub fn killing_form(&self, x: &Mat<R>, y: &Mat<R>) -> Result<Gauss<R>> {
        Ok(self.killing_coords(&self.coords(x)?, &self.coords(y)?))
    }

    pub fn killing_gram(&self) -> &Mat<R> {
        &self.killing
    }

    /// ψ(x)(y) = κ(x, y) for the Killing form κ.
    pub fn psi_coords(&self, x: &[Gauss<R>]) -> Covector<R> {
        Covector::new(self.killing.transpose().apply(x))
    }

    pub fn psi(&self, x: &Mat<R>) -> Result<Covector<R>> {
        Ok(self.psi_coords(&self.coords(x)?))
    }

    pub fn psi_inv_coords(&self, xi: &Covector<R>) -> Vector<R> {
        self.killing_inv.transpose().apply(&xi.coords)
    }

    pub fn psi_inv(&self, xi: &Covector<R>) -> Mat<R> {
        self.element(&self.psi_inv_coords(xi))
    }

    /// Dual covectors of another basis of 𝔤, in this realization's dual basis.
    pub fn dual_basis(&self, other: &[Mat<R>]) -> Result<Vec<Covector<R>>> {
        let cols = other.iter().map(|m| self.coords(m)).collect::<Result<Vec<_>>>()?;
        let c = Mat::from_cols(&cols)?;
        let inv = linalg::inverse(&c)?;
        Ok((0..inv.rows()).map(|r| Covector::new(inv.row(r))).collect())
    }

    /// Coadjoint action of the Lie algebra: `(ad* z ξ)(y) = −ξ([z, y])`.
    pub fn coadjoint(&self, z: &[Gauss<R>], xi: &Covector<R>) -> Covector<R> {
        let adz = self.ad(z);
        Covector::new(adz.transpose().apply(&xi.coords).into_iter().map(|x| -x).collect())
    }

    /// `g x g⁻¹` in coordinates.
    pub fn group_adjoint(&self, g: &Mat<R>, g_inv: &Mat<R>, x: &[Gauss<R>]) -> Result<Vector<R>> {
        let m = &(g * &self.element(x)) * g_inv;
        self.coords(&m)
    }

    /// Coadjoint action of a group element: `(g·ξ)(y) = ξ(g⁻¹ y g)`.
    pub fn group_coadjoint(&self, g: &Mat<R>, g_inv: &Mat<R>, xi: &Covector<R>) -> Result<Covector<R>> {
        let mut out = Vec::with_capacity(self.dim());
        for j in 0..self.dim() {
            let y = self.group_adjoint(g_inv, g, &self.unit(j))?;
            out.push(xi.pair(&y));
        }
        Ok(Covector::new(out))
    }

    pub fn centralizer(&self, x: &[Gauss<R>]) -> Vec<Vector<R>> {
        linalg::kernel(&self.ad(x))
    }

    /// Nilpotent as a matrix and with centralizer of dimension equal to the rank.
    pub fn is_regular_nilpotent(&self, x: &Mat<R>) -> bool {
        let Ok(c) = self.coords(x) else { return false };
        x.is_nilpotent() && self.centralizer(&c).len() == self.rank()
    }

    /// A ℚ-basis of the real subspace fixed by a conjugate-linear involution,
    /// namely `σ` (giving 𝔤(ℝ)) or `σθ` (giving the compact form).
    pub fn real_form_basis(&self, which: Involution) -> Vec<Vector<R>> {
        assert!(which != Involution::Theta, "theta is complex-linear");
        let mut cands = Vec::new();
        for k in 0..self.dim() {
            let b = self.unit(k);
            let sb = self.involution_coords(which, &b);
            cands.push(b.iter().zip(&sb).map(|(x, y)| x + y).collect::<Vector<R>>());
            cands.push(b.iter().zip(&sb).map(|(x, y)| (x - y).mul_i()).collect::<Vector<R>>());
        }
        realify_independent(&cands)
    }

    /// Complex basis of the θ-eigenspace with eigenvalue `±1`.
    pub fn theta_eigenspace(&self, sign: i64) -> Vec<Vector<R>> {
        let m = &self.theta - &Mat::identity(self.dim()).scale(&Gauss::from_int(sign));
        linalg::kernel(&m)
    }

    /// `c·tr(xy)` in the matrix realization.
    pub fn trace_form(&self, c: &R, x: &Mat<R>, y: &Mat<R>) -> Result<Gauss<R>> {
        trace_form(c, x, y)
    }
}

pub fn trace_form<R: Rational>(c: &R, x: &Mat<R>, y: &Mat<R>) -> Result<Gauss<R>> {
    Ok(x.try_mul(y)?.trace().scale(c))
}

/// Subfamily linearly independent over ℚ, treating ℚ(i)-vectors as
/// rational vectors of twice the length.
pub fn realify_independent<R: Rational>(vs: &[Vector<R>]) -> Vec<Vector<R>> {
    let real: Vec<Vector<R>> = vs
        .iter()
        .map(|v| v.iter().map(|x| Gauss::real(x.re.clone())).chain(v.iter().map(|x| Gauss::real(x.im.clone()))).collect())
        .collect();
    if real.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_cols(&real).expect("equal lengths");
    linalg::rref(&m).1.into_iter().map(|k| vs[k].clone()).collect()
}

/// Whether a real symmetric Gram matrix is negative definite
/// (leading principal minors alternate in sign, starting negative).
pub fn is_negative_definite<R: Rational>(gram: &Mat<R>) -> bool {
    let n = gram.rows();
    (1..=n).all(|k| {
        let minor = Mat::from_fn(k, k, |r, c| gram[(r, c)].clone());
        let d = linalg::det(&minor);
        d.is_real() && !d.is_zero() && ((d.re > R::zero()) == (k % 2 == 0))
    })
}
