//! First cohomology of an involution on a finite abelian group, computed
//! with integer lattices and Smith normal form; Q(G) data and the torsor
//! count check.

use serde::Serialize;

use crate::cones::OrbitLabel;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::roots::{HCParameter, WeylChamber};
use crate::scalar::Rational;
use crate::triples::Dictionary;

/// An involution τ on ⊕ ℤ/nᵢ, given by an integer matrix acting on columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianInvolution {
    pub cyclic_orders: Vec<u64>,
    pub tau: Vec<Vec<i64>>,
}

/// A finite abelian group ⊕ ℤ/dᵢ in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Every element as a tuple of residues.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..d).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        out
    }
}

impl FiniteAbelianInvolution {
    pub fn new(cyclic_orders: Vec<u64>, tau: Vec<Vec<i64>>) -> Result<Self> {
        let m = cyclic_orders.len();
        if tau.len() != m || tau.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension(format!("tau must be {m}x{m}")));
        }
        if cyclic_orders.contains(&0) {
            return Err(Error::Dimension("cyclic orders must be positive".into()));
        }
        let a = FiniteAbelianInvolution { cyclic_orders, tau };
        // Well defined: n_j e_j maps to 0.
        for j in 0..m {
            for i in 0..m {
                if (a.cyclic_orders[j] as i128 * a.tau[i][j] as i128).rem_euclid(a.cyclic_orders[i] as i128) != 0 {
                    return Err(Error::Dimension("tau is not a homomorphism".into()));
                }
            }
        }
        for j in 0..m {
            let col: Vec<i128> = (0..m).map(|i| i128::from(i == j)).collect();
            let twice = a.apply(&a.apply(&col));
            for i in 0..m {
                let target = i128::from(i == j);
                if (twice[i] - target).rem_euclid(a.cyclic_orders[i] as i128) != 0 {
                    return Err(Error::NotInvolutive);
                }
            }
        }
        Ok(a)
    }

    /// Trivial action on a single cyclic group.
    pub fn trivial(orders: Vec<u64>) -> Self {
        let m = orders.len();
        let tau = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
        FiniteAbelianInvolution { cyclic_orders: orders, tau }
    }

    fn apply(&self, x: &[i128]) -> Vec<i128> {
        self.tau.iter().map(|row| row.iter().zip(x).map(|(a, b)| *a as i128 * b).sum()).collect()
    }

    pub fn len(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cyclic_orders.is_empty()
    }
}

/// H¹ = {a : τa = −a} / {x − τx}, computed on lattices in ℤᵐ.
pub fn h1(a: &FiniteAbelianInvolution) -> Result<FiniteAbelianGroup> {
    let m = a.len();
    if m == 0 {
        return Ok(FiniteAbelianGroup { invariant_factors: Vec::new() });
    }
    let n: Vec<i128> = a.cyclic_orders.iter().map(|&x| x as i128).collect();
    // Cocycles: x with (τ + 1)x ∈ L0 = ⊕ nᵢℤ, i.e. the x-part of ker[τ+1 | diag(n)].
    let mut big = vec![vec![0i128; 2 * m]; m];
    for i in 0..m {
        for j in 0..m {
            big[i][j] = a.tau[i][j] as i128 + i128::from(i == j);
        }
        big[i][m + i] = n[i];
    }
    let ker = integer_kernel(&big);
    let cocycles = lattice_basis(ker.iter().map(|v| v[..m].to_vec()).collect(), m);
    // Coboundaries: (1 − τ)ℤᵐ + L0.
    let mut cob_gens = Vec::new();
    for j in 0..m {
        let col: Vec<i128> = (0..m).map(|i| i128::from(i == j) - a.tau[i][j] as i128).collect();
        cob_gens.push(col);
        let mut e = vec![0i128; m];
        e[j] = n[j];
        cob_gens.push(e);
    }
    // Relations: coboundary generators in cocycle-basis coordinates.
    let k = cocycles.len();
    let mut rels = Vec::new();
    for g in &cob_gens {
        let c = lattice_coords(&cocycles, g).ok_or_else(|| Error::NoSolution("coboundary outside cocycles".into()))?;
        rels.push(c);
    }
    let diag = smith_diagonal(rels, k);
    let mut factors: Vec<u64> = Vec::new();
    for j in 0..k {
        let d = diag.get(j).copied().unwrap_or(0);
        if d == 0 {
            return Err(Error::NoSolution("H^1 is infinite (orders must be positive)".into()));
        }
        if d != 1 {
            factors.push(d as u64);
        }
    }
    Ok(FiniteAbelianGroup { invariant_factors: factors })
}

/// Basis of {x ∈ ℤᶜ : A x = 0} for an integer matrix A (rows × c).
fn integer_kernel(a: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let c = a[0].len();
    let r = a.len();
    // Rows of [Aᵀ | I]; reduce the Aᵀ block by unimodular row operations.
    let mut rows: Vec<Vec<i128>> = (0..c)
        .map(|j| {
            let mut row: Vec<i128> = (0..r).map(|i| a[i][j]).collect();
            row.extend((0..c).map(|k| i128::from(k == j)));
            row
        })
        .collect();
    let rank = echelon(&mut rows, r);
    rows[rank..].iter().map(|row| row[r..].to_vec()).collect()
}

/// Integer row echelon form on the first `width` columns; returns the rank.
fn echelon(rows: &mut [Vec<i128>], width: usize) -> usize {
    let mut top = 0;
    for col in 0..width {
        while let Some(p) = (top..rows.len()).filter(|&k| rows[k][col] != 0).min_by_key(|&k| rows[k][col].abs()) {
            rows.swap(top, p);
            let mut done = true;
            for k in top + 1..rows.len() {
                if rows[k][col] != 0 {
                    let q = rows[k][col].div_euclid(rows[top][col]);
                    let pivot = rows[top].clone();
                    for (x, y) in rows[k].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                    if rows[k][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                top += 1;
                break;
            }
        }
        if top == rows.len() {
            break;
        }
    }
    top
}

/// A ℤ-basis of the lattice spanned by the generators.
fn lattice_basis(mut gens: Vec<Vec<i128>>, m: usize) -> Vec<Vec<i128>> {
    let rank = echelon(&mut gens, m);
    gens.truncate(rank);
    gens
}

/// Integer coordinates of `v` in an echelon lattice basis.
fn lattice_coords(basis: &[Vec<i128>], v: &[i128]) -> Option<Vec<i128>> {
    let mut rest = v.to_vec();
    let mut out = vec![0i128; basis.len()];
    for (k, b) in basis.iter().enumerate() {
        let col = b.iter().position(|&x| x != 0)?;
        if rest[col] % b[col] != 0 {
            return None;
        }
        let q = rest[col] / b[col];
        out[k] = q;
        for (x, y) in rest.iter_mut().zip(b) {
            *x -= q * y;
        }
    }
    rest.iter().all(|&x| x == 0).then_some(out)
}

/// Diagonal of the Smith normal form of a relation matrix with `cols` columns.
fn smith_diagonal(mut m: Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // Bring the smallest nonzero entry of the lower-right block to (t, t).
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if m[r][c] != 0 && best.is_none_or(|(br, bc)| m[r][c].abs() < m[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else {
                diag.extend(std::iter::repeat_n(0, cols - t));
                return diag;
            };
            m.swap(t, br);
            for row in m.iter_mut() {
                row.swap(t, bc);
            }
            let p = m[t][t];
            let mut clean = true;
            for r in t + 1..rows {
                let q = m[r][t].div_euclid(p);
                if q != 0 {
                    let pivot = m[t].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
                clean &= m[r][t] == 0;
            }
            for c in t + 1..cols {
                let q = m[t][c].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut() {
                        let v = row[t];
                        row[c] -= q * v;
                    }
                }
                clean &= m[t][c] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any non-multiple into row t and retry.
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| m[r][c] % p != 0));
            if let Some(r) = bad {
                let add = m[r].clone();
                for (x, y) in m[t].iter_mut().zip(&add) {
                    *x += y;
                }
                continue;
            }
            diag.push(p.abs());
            break;
        }
    }
    if cols > rows {
        diag.extend(std::iter::repeat_n(0, cols - rows));
    }
    diag
}

/// Q(G) data: H¹ of the center and the catalog kernel size.
#[derive(Clone, Debug, Serialize)]
pub struct QGroupData {
    pub h1_z: FiniteAbelianGroup,
    pub kernel_size: u64,
}

impl QGroupData {
    pub fn new(center: &FiniteAbelianInvolution, kernel_size: u64) -> Result<Self> {
        let h1_z = h1(center)?;
        if kernel_size == 0 || h1_z.order() % kernel_size != 0 {
            return Err(Error::Validation {
                entry: "Q(G)".into(),
                invariant: format!("kernel size {kernel_size} divides |H^1(Z)| = {}", h1_z.order()),
            });
        }
        Ok(QGroupData { h1_z, kernel_size })
    }

    pub fn q_order(&self) -> u64 {
        self.kernel_size
    }
}

/// Something a Q representative acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QTarget {
    Label(OrbitLabel),
    Chamber(WeylChamber),
}

/// Ad/Ad* on orbit labels, or the induced permutation on chambers.
pub fn q_action<R: Rational>(dict: &Dictionary<R>, rep: &Mat<R>, target: &QTarget) -> Result<QTarget> {
    match target {
        QTarget::Label(l) => Ok(QTarget::Label(dict.q_action_label(rep, l)?)),
        QTarget::Chamber(c) => Ok(QTarget::Chamber(dict.q_action_chamber(rep, c)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsorCounts {
    pub chambers: usize,
    pub wf: usize,
    pub av: usize,
    pub wh: usize,
    pub q: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsorReport {
    pub entry: String,
    pub counts: TorsorCounts,
    /// Q acts simply transitively on classes and on each kind of label.
    pub simply_transitive: bool,
    pub pass: bool,
}

/// Compares the large chamber classes with the labels realized over one
/// packet, and with |Q|.
pub fn verify_torsor_counts<R: Rational>(dict: &Dictionary<R>) -> Result<TorsorReport> {
    let entry = &dict.entry;
    let rd = &entry.roots;
    let q = QGroupData::new(&entry.center, entry.h1_kernel_size)?.q_order();
    let base = HCParameter::new(entry.packet_base.clone());
    let (mut wf, mut av, mut wh) = (Vec::new(), Vec::new(), Vec::new());
    for p in rd.packet(&base) {
        let ch = rd.positive_system(&p)?;
        if !rd.is_large(&ch, &entry.grading) {
            continue;
        }
        wf.push(dict.wf_of(&p)?);
        av.push(dict.av_of(&p)?);
        wh.push(dict.whittaker_of(&p)?.orbit);
    }
    for v in [&mut wf, &mut av, &mut wh] {
        v.sort();
        v.dedup();
    }
    let counts = TorsorCounts { chambers: dict.classes.len(), wf: wf.len(), av: av.len(), wh: wh.len(), q };
    let equal = counts.wf == counts.chambers && counts.av == counts.chambers && counts.wh == counts.chambers;
    if counts.chambers == 0 {
        return Ok(TorsorReport { entry: entry.name.clone(), counts, simply_transitive: true, pass: equal });
    }
    let simply_transitive = simply_transitive(dict, &wf, &av, &wh)?;
    let pass = equal && counts.chambers as u64 == q && simply_transitive;
    Ok(TorsorReport { entry: entry.name.clone(), counts, simply_transitive, pass })
}

/// Orbit map `g ↦ g·x₀` is a bijection for every target set.
fn simply_transitive<R: Rational>(dict: &Dictionary<R>, wf: &[OrbitLabel], av: &[OrbitLabel], wh: &[OrbitLabel]) -> Result<bool> {
    let n = dict.rz().matrix_dim();
    let mut group = vec![Mat::identity(n)];
    group.extend(dict.entry.q_representatives.iter().map(|(_, m)| m.clone()));
    let classes: Vec<WeylChamber> = dict.classes.iter().map(|c| c.class.representative.clone()).collect();
    let mut orbit = Vec::new();
    for g in &group {
        let QTarget::Chamber(c) = q_action(dict, g, &QTarget::Chamber(classes[0].clone()))? else { unreachable!() };
        orbit.push(dict.class_of_chamber(&c));
    }
    let mut seen = orbit.clone();
    seen.sort();
    seen.dedup();
    if orbit.iter().any(Option::is_none) || seen.len() != group.len() || seen.len() != classes.len() {
        return Ok(false);
    }
    for labels in [wf, av, wh] {
        let mut images = Vec::new();
        for g in &group {
            let QTarget::Label(l) = q_action(dict, g, &QTarget::Label(labels[0]))? else { unreachable!() };
            images.push(l);
        }
        images.sort();
        images.dedup();
        if images.len() != group.len() || images.len() != labels.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(a: &FiniteAbelianInvolution) -> u64 {
        let elems = FiniteAbelianGroup { invariant_factors: a.cyclic_orders.clone() }.elements();
        let reduce = |v: Vec<i128>| -> Vec<u64> {
            v.iter().zip(&a.cyclic_orders).map(|(x, &n)| x.rem_euclid(n as i128) as u64).collect()
        };
        let cocycles: Vec<Vec<u64>> = elems
            .iter()
            .filter(|x| {
                let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
                let t = a.apply(&xi);
                reduce(t.iter().zip(&xi).map(|(p, q)| p + q).collect()).iter().all(|&v| v == 0)
            })
            .cloned()
            .collect();
        let cobs: std::collections::BTreeSet<Vec<u64>> = elems
            .iter()
            .map(|x| {
                let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
                let t = a.apply(&xi);
                reduce(xi.iter().zip(&t).map(|(p, q)| p - q).collect())
            })
            .collect();
        (cocycles.len() / cobs.len()) as u64
    }

    #[test]
    fn z2_trivial() {
        assert_eq!(h1(&FiniteAbelianInvolution::trivial(vec![2])).unwrap().order(), 2);
    }

    #[test]
    fn odd_trivial() {
        for n in [1, 3, 5, 9, 15] {
            assert_eq!(h1(&FiniteAbelianInvolution::trivial(vec![n])).unwrap().order(), 1);
        }
    }

    #[test]
    fn z4_inversion() {
        let a = FiniteAbelianInvolution::new(vec![4], vec![vec![-1]]).unwrap();
        let g = h1(&a).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.elements().len(), 2);
    }

    #[test]
    fn swap_is_trivial() {
        let a = FiniteAbelianInvolution::new(vec![3, 3], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(h1(&a).unwrap().order(), 1);
        let b = FiniteAbelianInvolution::new(vec![2, 2], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(h1(&b).unwrap().order(), brute_force(&b));
    }

    #[test]
    fn rejects_non_involution() {
        let err = FiniteAbelianInvolution::new(vec![5], vec![vec![2]]).unwrap_err();
        assert_eq!(err, Error::NotInvolutive);
        assert!(FiniteAbelianInvolution::new(vec![2], vec![vec![1, 0]]).is_err());
    }

    fn su2() -> Dictionary<num_rational::BigRational> {
        let mut v: serde_json::Value = serde_json::from_str(crate::catalog::BUNDLED).unwrap();
        let mut e = v["entries"][0].take();
        e["name"] = "su2".into();
        e["sigma"] = serde_json::json!([["-1", "0", "0"], ["0", "0", "-1"], ["0", "-1", "0"]]);
        e["theta"] = serde_json::json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]);
        for r in e["roots"].as_array_mut().unwrap() {
            r["grade"] = "compact".into();
        }
        e["q_representatives"] = serde_json::json!([]);
        e["h1_kernel_size"] = 1.into();
        e["golden"] = serde_json::Value::Null;
        let raw: crate::catalog::RawEntry = serde_json::from_value(e).unwrap();
        Dictionary::new(crate::catalog::CatalogEntry::from_raw(&raw).unwrap()).unwrap()
    }

    #[test]
    fn torsor_counts_bundled() {
        for name in ["sl2r", "sp4r"] {
            let d = Dictionary::<num_rational::BigRational>::from_bundled(name).unwrap();
            let r = verify_torsor_counts(&d).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.counts, TorsorCounts { chambers: 2, wf: 2, av: 2, wh: 2, q: 2 });
        }
    }

    #[test]
    fn torsor_counts_without_large_chambers() {
        let r = verify_torsor_counts(&su2()).unwrap();
        assert!(r.pass);
        assert_eq!((r.counts.chambers, r.counts.wf, r.counts.av, r.counts.wh), (0, 0, 0, 0));
    }

    #[test]
    fn sl2_q_swaps_everything() {
        let d = Dictionary::<num_rational::BigRational>::from_bundled("sl2r").unwrap();
        let q = d.entry.q_representatives[0].1.clone();
        for s in ["wf:+", "wf:-", "av:+", "av:-", "wh:+", "wh:-"] {
            let l: OrbitLabel = s.parse().unwrap();
            let QTarget::Label(m) = q_action(&d, &q, &QTarget::Label(l)).unwrap() else { panic!() };
            assert_ne!(m, l);
            assert_eq!(m.side, l.side);
            assert_eq!(q_action(&d, &q, &QTarget::Label(m)).unwrap(), QTarget::Label(l));
        }
    }

    #[test]
    fn q_data_divisibility() {
        let z = FiniteAbelianInvolution::trivial(vec![2]);
        assert_eq!(QGroupData::new(&z, 2).unwrap().q_order(), 2);
        assert!(QGroupData::new(&z, 3).is_err());
    }

    proptest! {
        #[test]
        fn matches_brute_force_on_cyclic(n in 1u64..30, minus in any::<bool>()) {
            let t = if minus { -1 } else { 1 };
            let a = FiniteAbelianInvolution::new(vec![n], vec![vec![t]]).unwrap();
            prop_assert_eq!(h1(&a).unwrap().order(), brute_force(&a));
        }

        #[test]
        fn multiplicative_over_factors(n in 1u64..12, m in 1u64..12, s in any::<bool>(), t in any::<bool>()) {
            let (a, b) = (if s { -1 } else { 1 }, if t { -1 } else { 1 });
            let x = FiniteAbelianInvolution::new(vec![n], vec![vec![a]]).unwrap();
            let y = FiniteAbelianInvolution::new(vec![m], vec![vec![b]]).unwrap();
            let xy = FiniteAbelianInvolution::new(vec![n, m], vec![vec![a, 0], vec![0, b]]).unwrap();
            prop_assert_eq!(h1(&xy).unwrap().order(), h1(&x).unwrap().order() * h1(&y).unwrap().order());
            prop_assert_eq!(h1(&xy).unwrap().order(), brute_force(&xy));
        }
    }
}
