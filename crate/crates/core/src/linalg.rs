//! Exact Gaussian elimination over ℚ(i): echelon forms, kernels, solves,
//! inverses, determinants and characteristic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Gauss, Rational};

pub type Vector<R> = Vec<Gauss<R>>;

/// Reduced row echelon form together with the pivot columns.
pub fn rref<R: Rational>(m: &Mat<R>) -> (Mat<R>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !a[(k, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
        }
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for k in 0..rows {
            if k == r || a[(k, c)].is_zero() {
                continue;
            }
            let f = a[(k, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let d = &f * &a[(r, j)];
                    a[(k, j)] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<R: Rational>(m: &Mat<R>) -> usize {
    rref(m).1.len()
}

/// A basis of the right null space `{x : m x = 0}`.
pub fn kernel<R: Rational>(m: &Mat<R>) -> Vec<Vector<R>> {
    let (a, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Gauss::zero(); cols];
            v[f] = Gauss::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[(r, f)];
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, with free variables set to zero.
pub fn solve<R: Rational>(m: &Mat<R>, b: &[Gauss<R>]) -> Option<Vector<R>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length");
    let aug = Mat::from_fn(m.rows(), m.cols() + 1, |r, c| if c < m.cols() { m[(r, c)].clone() } else { b[r].clone() });
    let (a, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Gauss::zero(); m.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[(r, m.cols())].clone();
    }
    Some(x)
}

pub fn inverse<R: Rational>(m: &Mat<R>) -> Result<Mat<R>> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of non-square matrix".into()));
    }
    let n = m.rows();
    let aug = Mat::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m[(r, c)].clone()
        } else if c - n == r {
            Gauss::one()
        } else {
            Gauss::zero()
        }
    });
    let (a, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular("matrix is not invertible".into()));
    }
    Ok(Mat::from_fn(n, n, |r, c| a[(r, c + n)].clone()))
}

pub fn det<R: Rational>(m: &Mat<R>) -> Gauss<R> {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut d = Gauss::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&k| !a[(k, c)].is_zero()) else {
            return Gauss::zero();
        };
        if p != c {
            for j in 0..n {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = t;
            }
            d = -d;
        }
        let piv = a[(c, c)].clone();
        d = &d * &piv;
        let inv = piv.inv().expect("nonzero pivot");
        for k in c + 1..n {
            if a[(k, c)].is_zero() {
                continue;
            }
            let f = &a[(k, c)] * &inv;
            for j in c..n {
                let t = &f * &a[(c, j)];
                a[(k, j)] -= t;
            }
        }
    }
    d
}

/// Coefficients `[c_0, …, c_n]` of the monic polynomial `det(tI − m)`,
/// computed by the Faddeev–LeVerrier recursion.
pub fn char_poly<R: Rational>(m: &Mat<R>) -> Vec<Gauss<R>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Gauss::zero(); n + 1];
    coeffs[n] = Gauss::one();
    let mut mk = Mat::zeros(n, n);
    for k in 1..=n {
        // M_k = m (M_{k-1} + c_{n-k+1} I)
        let mut prev = mk.clone();
        for d in 0..n {
            prev[(d, d)] += coeffs[n - k + 1].clone();
        }
        mk = m * &prev;
        coeffs[n - k] = -(mk.trace() / Gauss::from_int(k as i64));
    }
    coeffs
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coordinates<R: Rational>(basis: &[Vector<R>], v: &[Gauss<R>]) -> Option<Vector<R>> {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    let m = Mat::from_cols(basis).ok()?;
    solve(&m, v)
}

/// A maximal linearly independent subfamily, preserving order.
pub fn independent_subset<R: Rational>(vectors: &[Vector<R>]) -> Vec<Vector<R>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_cols(vectors).expect("equal lengths");
    rref(&m).1.into_iter().map(|c| vectors[c].clone()).collect()
}

/// Basis of the intersection of the spans of two families.
pub fn intersect_spans<R: Rational>(a: &[Vector<R>], b: &[Vector<R>]) -> Vec<Vector<R>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    let mut cols = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
    let m = Mat::from_cols(&cols).expect("equal lengths");
    let sols = kernel(&m);
    let combos: Vec<Vector<R>> = sols
        .iter()
        .map(|s| {
            let mut out = vec![Gauss::zero(); n];
            for (k, v) in a.iter().enumerate() {
                for (o, x) in out.iter_mut().zip(v) {
                    *o += &s[k] * x;
                }
            }
            out
        })
        .collect();
    independent_subset(&combos)
}

pub fn dot<R: Rational>(a: &[Gauss<R>], b: &[Gauss<R>]) -> Gauss<R> {
    a.iter().zip(b).fold(Gauss::zero(), |acc, (x, y)| acc + x * y)
}

pub fn axpy<R: Rational>(s: &Gauss<R>, x: &[Gauss<R>], y: &[Gauss<R>]) -> Vector<R> {
    x.iter().zip(y).map(|(a, b)| &(s * a) + b).collect()
}

pub fn scale_vec<R: Rational>(s: &Gauss<R>, x: &[Gauss<R>]) -> Vector<R> {
    x.iter().map(|a| s * a).collect()
}

pub fn is_zero_vec<R: Rational>(x: &[Gauss<R>]) -> bool {
    x.iter().all(Zero::is_zero)
}

/// All roots, with multiplicity, of a polynomial `[c_0, …, c_n]` with
/// rational coefficients; fails unless it splits over ℚ.
pub fn rational_roots<R: Rational>(coeffs: &[Gauss<R>]) -> Result<Vec<R>> {
    if coeffs.iter().any(|c| !c.is_real()) {
        return Err(Error::Unsupported("polynomial has non-rational coefficients".into()));
    }
    let mut p: Vec<BigRational> = coeffs.iter().map(|c| c.re.to_ratio()).collect();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 {
        if p[0].is_zero() {
            roots.push(BigRational::zero());
            p.remove(0);
            continue;
        }
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let lead = ints.last().cloned().unwrap_or_default();
        let root = divisors(&ints[0])?
            .iter()
            .flat_map(|a| divisors(&lead).into_iter().flatten().map(move |b| BigRational::new(a.clone(), b)))
            .flat_map(|r| [r.clone(), -r])
            .find(|r| horner(&p, r).is_zero())
            .ok_or_else(|| Error::Unsupported("polynomial does not split over Q".into()))?;
        p = deflate(&p, &root);
        roots.push(root);
    }
    roots.sort();
    roots.iter().map(|r| R::from_ratio(r).ok_or_else(|| Error::Unsupported("root overflows the scalar type".into()))).collect()
}

fn horner(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Quotient of `p` by `(t − r)` for a root `r`.
fn deflate(p: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let n = p.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + carry * r;
        q[k] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs().to_u128().filter(|&v| v < 1 << 80).ok_or_else(|| Error::Unsupported("coefficient too large to factor".into()))?;
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type G = Gauss<BigRational>;
    type M = Mat<BigRational>;

    #[test]
    fn rational_roots_split() {
        // (t - 1/2)(t + 3) t^2 = t^4 + 5/2 t^3 - 3/2 t^2
        let c: Vec<G> = [0, 0, -3, 5, 2].iter().map(|&x| G::frac(x, 2)).collect();
        let r = rational_roots(&c).unwrap();
        let s: Vec<String> = r.iter().map(ToString::to_string).collect();
        assert_eq!(s, ["-3", "0", "0", "1/2"]);
        let irr: Vec<G> = [-2, 0, 1].iter().map(|&x| G::from_int(x)).collect();
        assert!(rational_roots(&irr).is_err());
    }

    fn arb_mat(n: usize) -> impl Strategy<Value = M> {
        proptest::collection::vec((-4i64..5, -3i64..4), n * n).prop_map(move |v| {
            M::from_fn(n, n, |r, c| {
                let (a, b) = v[r * n + c];
                Gauss::new(G::from_int(a).re, G::from_int(b).re)
            })
        })
    }

    #[test]
    fn char_poly_of_companion() {
        // t^2 + 1 for the rotation generator.
        let m = M::from_rows(vec![vec![G::zero(), G::one()], vec![-G::one(), G::zero()]]).unwrap();
        assert_eq!(char_poly(&m), vec![G::one(), G::zero(), G::one()]);
        assert_eq!(det(&m), G::one());
    }

    #[test]
    fn singular_inverse_fails() {
        let m = M::from_rows(vec![vec![G::one(), G::i()], vec![G::i(), -G::one()]]).unwrap();
        assert_eq!(det(&m), G::zero());
        assert!(inverse(&m).is_err());
        assert_eq!(kernel(&m).len(), 1);
    }

    proptest! {
        #[test]
        fn inverse_and_det(m in arb_mat(3)) {
            let d = det(&m);
            match inverse(&m) {
                Ok(inv) => {
                    prop_assert!(!d.is_zero());
                    prop_assert_eq!(&m * &inv, M::identity(3));
                }
                Err(_) => prop_assert!(d.is_zero()),
            }
        }

        #[test]
        fn kernel_is_annihilated(m in arb_mat(3)) {
            let ker = kernel(&m);
            prop_assert_eq!(ker.len() + rank(&m), 3);
            for v in &ker {
                prop_assert!(is_zero_vec(&m.apply(v)));
            }
        }

        #[test]
        fn char_poly_matches_det(m in arb_mat(3), t in -3i64..4) {
            let cp = char_poly(&m);
            let tt = G::from_int(t);
            let val = cp.iter().rev().fold(G::zero(), |acc, c| &(&acc * &tt) + c);
            let shifted = &M::identity(3).scale(&tt) - &m;
            prop_assert_eq!(val, det(&shifted));
        }

        #[test]
        fn solve_is_consistent(m in arb_mat(3), x in proptest::collection::vec(-3i64..4, 3)) {
            let x: Vec<G> = x.into_iter().map(G::from_int).collect();
            let b = m.apply(&x);
            let y = solve(&m, &b).expect("consistent system");
            prop_assert_eq!(m.apply(&y), b);
        }
    }
}
