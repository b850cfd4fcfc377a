//! Roots of the compact Cartan, Weyl groups, compactness gradings, chambers
//! and Harish-Chandra parameters.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{Covector, Involution, Realization};
use crate::scalar::{Gauss, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    Compact,
    Noncompact,
}

impl Grade {
    fn sign(self) -> i8 {
        match self {
            Grade::Compact => 1,
            Grade::Noncompact => -1,
        }
    }
}

/// Roots as integer weight vectors (values on the Cartan basis), their
/// coroots in Cartan coordinates and the basis index of each root vector.
#[derive(Clone, Debug)]
pub struct RootDatum<R> {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<R>>,
    pub root_vectors: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactnessGrading {
    pub grades: Vec<Grade>,
}

impl CompactnessGrading {
    pub fn is_compact(&self, a: usize) -> bool {
        self.grades[a] == Grade::Compact
    }
}

/// A Weyl group element: its linear action on weights and the induced
/// permutation of root indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement<R> {
    pub matrix: Vec<Vec<R>>,
    pub perm: Vec<usize>,
}

impl<R: Rational> WeylElement<R> {
    pub fn act(&self, lambda: &[R]) -> Vec<R> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(lambda).fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    pub fn compose(&self, o: &Self) -> Self {
        let n = self.matrix.len();
        let matrix = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).fold(R::zero(), |acc, k| acc + self.matrix[r][k].clone() * o.matrix[k][c].clone()))
                    .collect()
            })
            .collect();
        let perm = o.perm.iter().map(|&a| self.perm[a]).collect();
        WeylElement { matrix, perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p)
    }
}

/// A chamber given by the sign of every root (`+1` for positive roots).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylChamber {
    pub signs: Vec<i8>,
    pub simple: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberClass {
    pub representative: WeylChamber,
    pub members: Vec<WeylChamber>,
}

/// A Harish-Chandra parameter in weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HCParameter<R> {
    pub lambda: Vec<R>,
}

impl<R: Rational> HCParameter<R> {
    pub fn new(lambda: Vec<R>) -> Self {
        HCParameter { lambda }
    }
    pub fn from_ints(v: &[i64]) -> Self {
        HCParameter { lambda: v.iter().map(|&x| R::from_int(x)).collect() }
    }

    /// λ as a covector, extended by zero on the root spaces.
    pub fn covector(&self, rz: &Realization<R>) -> Covector<R> {
        let mut c = Covector::zero(rz.dim());
        for (k, &idx) in rz.cartan.iter().enumerate() {
            c.coords[idx] = Gauss::real(self.lambda[k].clone());
        }
        c
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.lambda.iter().map(ToString::to_string).collect()
    }
}

impl<R: Rational> RootDatum<R> {
    /// Validates root data against a realization: pairings, eigenvectors,
    /// closure under negation and reflections, and coroot directions.
    pub fn new(rz: &Realization<R>, roots: Vec<Vec<i64>>, coroots: Vec<Vec<R>>, root_vectors: Vec<usize>) -> Result<Self> {
        let fail = |inv: &str| Error::Validation { entry: rz.name.clone(), invariant: inv.to_string() };
        let rank = rz.rank();
        if roots.len() != coroots.len() || roots.len() != root_vectors.len() {
            return Err(fail("matching root, coroot and root vector lists"));
        }
        if roots.iter().any(|r| r.len() != rank) || coroots.iter().any(|c| c.len() != rank) {
            return Err(fail("root vectors of length rank"));
        }
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        if index.len() != roots.len() {
            return Err(fail("distinct roots"));
        }
        let rd = RootDatum { rank, roots, coroots, root_vectors, index };
        for a in 0..rd.len() {
            if rd.pair_root(a, a) != R::from_int(2) {
                return Err(fail("<alpha, alpha^vee> = 2"));
            }
            let neg: Vec<i64> = rd.roots[a].iter().map(|x| -x).collect();
            if !rd.index.contains_key(&neg) {
                return Err(fail("root set closed under negation"));
            }
            for b in 0..rd.len() {
                let n = rd.pair_root(b, a);
                if !n.is_integer() {
                    return Err(fail("integral Cartan integers"));
                }
                let refl = rd.reflect_weight(a, &rd.roots[b].iter().map(|&x| R::from_int(x)).collect::<Vec<_>>());
                if rd.find_root(&refl).is_none() {
                    return Err(fail("root set closed under reflections"));
                }
            }
            // [t, X_a] = a(t) X_a on the Cartan basis.
            let xa = rz.unit(rd.root_vectors[a]);
            for (j, &c) in rz.cartan.iter().enumerate() {
                let br = rz.bracket_coords(&rz.unit(c), &xa);
                let expect: Vec<Gauss<R>> = xa.iter().map(|x| x.scale(&R::from_int(rd.roots[a][j]))).collect();
                if br != expect {
                    return Err(fail("[t, X_alpha] = alpha(t) X_alpha"));
                }
            }
            // [X_a, X_-a] is a nonzero multiple of the coroot.
            let xn = rz.unit(rd.root_vectors[rd.negative(a)]);
            let br = rz.bracket_coords(&xa, &xn);
            let mut cor = vec![Gauss::zero(); rz.dim()];
            for (j, &c) in rz.cartan.iter().enumerate() {
                cor[c] = Gauss::real(rd.coroots[a][j].clone());
            }
            if crate::linalg::independent_subset(&[cor, br]).len() != 1 {
                return Err(fail("[X_alpha, X_-alpha] proportional to the coroot"));
            }
        }
        let mut used: Vec<usize> = rd.root_vectors.iter().copied().chain(rz.cartan.iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        if used.len() != rz.dim() {
            return Err(fail("basis = Cartan basis followed by root vectors"));
        }
        Ok(rd)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn find_root(&self, w: &[R]) -> Option<usize> {
        if w.iter().any(|x| !x.is_integer()) {
            return None;
        }
        let key: Vec<i64> = w.iter().map(|x| x.to_ratio().to_integer().try_into().unwrap_or(i64::MAX)).collect();
        self.index.get(&key).copied()
    }

    pub fn root_index(&self, w: &[i64]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn negative(&self, a: usize) -> usize {
        let neg: Vec<i64> = self.roots[a].iter().map(|x| -x).collect();
        self.index[&neg]
    }

    /// ⟨α_b, α_a∨⟩.
    pub fn pair_root(&self, b: usize, a: usize) -> R {
        self.pair(&self.roots[b].iter().map(|&x| R::from_int(x)).collect::<Vec<_>>(), a)
    }

    /// ⟨λ, α_a∨⟩.
    pub fn pair(&self, lambda: &[R], a: usize) -> R {
        lambda.iter().zip(&self.coroots[a]).fold(R::zero(), |acc, (l, c)| acc + l.clone() * c.clone())
    }

    pub fn reflect_weight(&self, a: usize, lambda: &[R]) -> Vec<R> {
        let n = self.pair(lambda, a);
        lambda.iter().zip(&self.roots[a]).map(|(l, &r)| l.clone() - n.clone() * R::from_int(r)).collect()
    }

    pub fn reflection(&self, a: usize) -> WeylElement<R> {
        let matrix = (0..self.rank)
            .map(|r| {
                (0..self.rank)
                    .map(|c| {
                        let delta = if r == c { R::one() } else { R::zero() };
                        delta - self.coroots[a][c].clone() * R::from_int(self.roots[a][r])
                    })
                    .collect()
            })
            .collect();
        self.element_from_matrix(matrix).expect("reflections permute roots")
    }

    /// Wraps a weight matrix as a Weyl element, if it permutes the roots.
    pub fn element_from_matrix(&self, matrix: Vec<Vec<R>>) -> Option<WeylElement<R>> {
        let w = WeylElement { matrix, perm: Vec::new() };
        let perm = (0..self.len())
            .map(|b| self.find_root(&w.act(&self.roots[b].iter().map(|&x| R::from_int(x)).collect::<Vec<_>>())))
            .collect::<Option<Vec<_>>>()?;
        Some(WeylElement { perm, ..w })
    }

    pub fn identity(&self) -> WeylElement<R> {
        let matrix = (0..self.rank)
            .map(|r| (0..self.rank).map(|c| if r == c { R::one() } else { R::zero() }).collect())
            .collect();
        WeylElement { matrix, perm: (0..self.len()).collect() }
    }

    /// Closure of a generating set under composition.
    pub fn generate(&self, gens: &[WeylElement<R>]) -> Vec<WeylElement<R>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let id = self.identity();
        seen.insert(id.perm.clone());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in gens {
                let x = g.compose(&w);
                if seen.insert(x.perm.clone()) {
                    out.push(x.clone());
                    queue.push_back(x);
                }
            }
        }
        out
    }

    pub fn weyl_group(&self) -> Vec<WeylElement<R>> {
        let gens: Vec<_> = (0..self.len()).map(|a| self.reflection(a)).collect();
        self.generate(&gens)
    }

    /// W_K: reflections in compact roots plus grading-preserving extras.
    pub fn wk_subgroup(&self, g: &CompactnessGrading, extra: &[WeylElement<R>]) -> Result<Vec<WeylElement<R>>> {
        for w in extra {
            if (0..self.len()).any(|a| g.grades[w.perm[a]] != g.grades[a]) {
                return Err(Error::Validation {
                    entry: "W_K".into(),
                    invariant: "extra generator preserves the grading".into(),
                });
            }
        }
        let mut gens: Vec<_> = (0..self.len()).filter(|&a| g.is_compact(a)).map(|a| self.reflection(a)).collect();
        gens.extend(extra.iter().cloned());
        Ok(self.generate(&gens))
    }

    pub fn chamber_from_signs(&self, signs: Vec<i8>) -> WeylChamber {
        let pos: Vec<usize> = (0..self.len()).filter(|&a| signs[a] > 0).collect();
        let simple = pos
            .iter()
            .copied()
            .filter(|&a| {
                !pos.iter().any(|&b| {
                    let diff: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x - y).collect();
                    self.index.get(&diff).is_some_and(|&c| signs[c] > 0)
                })
            })
            .collect();
        WeylChamber { signs, simple }
    }

    /// Δ⁺(λ) = {α : ⟨λ, α∨⟩ > 0}.
    pub fn positive_system(&self, lambda: &HCParameter<R>) -> Result<WeylChamber> {
        let mut signs = Vec::with_capacity(self.len());
        for a in 0..self.len() {
            let p = self.pair(&lambda.lambda, a);
            if p.is_zero() {
                return Err(Error::NotRegular(format!("pairing with coroot {:?} vanishes", self.roots[a])));
            }
            signs.push(if p > R::zero() { 1 } else { -1 });
        }
        Ok(self.chamber_from_signs(signs))
    }

    pub fn act_on_chamber(&self, w: &WeylElement<R>, ch: &WeylChamber) -> WeylChamber {
        let mut signs = vec![0i8; self.len()];
        for a in 0..self.len() {
            signs[w.perm[a]] = ch.signs[a];
        }
        self.chamber_from_signs(signs)
    }

    pub fn is_large(&self, ch: &WeylChamber, g: &CompactnessGrading) -> bool {
        ch.simple.iter().all(|&a| !g.is_compact(a))
    }

    pub fn all_chambers(&self) -> Vec<WeylChamber> {
        let Some(start) = self.some_regular_weight() else { return Vec::new() };
        let base = self.positive_system(&start).expect("regular weight");
        let mut out: Vec<WeylChamber> = self.weyl_group().iter().map(|w| self.act_on_chamber(w, &base)).collect();
        out.sort();
        out.dedup();
        out
    }

    fn some_regular_weight(&self) -> Option<HCParameter<R>> {
        // Generic integer weights 1, 10, 100, … avoid every coroot hyperplane at desk scale.
        let lambda: Vec<R> = (0..self.rank).map(|k| R::from_int(10i64.pow(k as u32) + 1)).collect();
        let p = HCParameter::new(lambda);
        self.positive_system(&p).ok().map(|_| p)
    }

    /// Orbits of W_K on the large chambers, with lexicographically minimal representatives.
    pub fn large_chambers_mod_wk(&self, g: &CompactnessGrading, wk: &[WeylElement<R>]) -> Vec<ChamberClass> {
        let large: Vec<WeylChamber> = self.all_chambers().into_iter().filter(|c| self.is_large(c, g)).collect();
        let mut seen = BTreeSet::new();
        let mut classes = Vec::new();
        for ch in &large {
            if seen.contains(&ch.signs) {
                continue;
            }
            let mut members: Vec<WeylChamber> = wk.iter().map(|w| self.act_on_chamber(w, ch)).collect();
            members.sort();
            members.dedup();
            for m in &members {
                seen.insert(m.signs.clone());
            }
            classes.push(ChamberClass { representative: members[0].clone(), members });
        }
        classes.sort_by(|a, b| a.representative.cmp(&b.representative));
        classes
    }

    /// Index of the class containing a chamber.
    pub fn class_of(&self, classes: &[ChamberClass], ch: &WeylChamber) -> Option<usize> {
        classes.iter().position(|c| c.members.iter().any(|m| m.signs == ch.signs))
    }

    /// ρ of a positive system.
    pub fn rho(&self, ch: &WeylChamber) -> Vec<R> {
        let half = R::one() / R::from_int(2);
        (0..self.rank)
            .map(|j| {
                let s: i64 = (0..self.len()).filter(|&a| ch.signs[a] > 0).map(|a| self.roots[a][j]).sum();
                R::from_int(s) * half.clone()
            })
            .collect()
    }

    /// Regular with λ − ρ(Δ⁺(λ)) integral.
    pub fn is_hc_parameter(&self, lambda: &HCParameter<R>) -> bool {
        let Ok(ch) = self.positive_system(lambda) else { return false };
        lambda.lambda.iter().zip(self.rho(&ch)).all(|(l, r)| (l.clone() - r).is_integer())
    }

    /// The lexicographically minimal element of the W-orbit of λ.
    pub fn packet_id(&self, lambda: &HCParameter<R>) -> Vec<R> {
        self.weyl_group().iter().map(|w| w.act(&lambda.lambda)).min().expect("nonempty W")
    }

    /// Packet members: one parameter per chamber.
    pub fn packet(&self, lambda: &HCParameter<R>) -> Vec<HCParameter<R>> {
        let mut out: Vec<Vec<R>> = self.weyl_group().iter().map(|w| w.act(&lambda.lambda)).collect();
        out.sort();
        out.dedup();
        out.into_iter().map(HCParameter::new).collect()
    }

    /// Checks grade(−α) = grade(α), multiplicativity on root triples, and
    /// agreement with θ on the root vectors.
    pub fn validate_grading(&self, rz: &Realization<R>, g: &CompactnessGrading) -> Result<()> {
        let fail = |inv: &str| Error::Validation { entry: rz.name.clone(), invariant: inv.to_string() };
        if g.grades.len() != self.len() {
            return Err(fail("one grade per root"));
        }
        for a in 0..self.len() {
            if g.grades[self.negative(a)] != g.grades[a] {
                return Err(fail("grade(-alpha) = grade(alpha)"));
            }
            for b in 0..self.len() {
                let sum: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
                if let Some(&c) = self.index.get(&sum) {
                    if g.grades[c].sign() != g.grades[a].sign() * g.grades[b].sign() {
                        return Err(fail("grading multiplicativity"));
                    }
                }
            }
            let x = rz.unit(self.root_vectors[a]);
            let tx = rz.involution_coords(Involution::Theta, &x);
            let expect: Vec<Gauss<R>> = x.iter().map(|v| v.scale(&R::from_int(g.grades[a].sign() as i64))).collect();
            if tx != expect {
                return Err(fail("theta acts on root spaces by the grade"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    /// Abstract C2 data (no realization needed for the combinatorics).
    fn c2() -> RootDatum<Q> {
        let roots: Vec<Vec<i64>> = vec![
            vec![2, 0], vec![-2, 0], vec![0, 2], vec![0, -2],
            vec![1, 1], vec![-1, -1], vec![1, -1], vec![-1, 1],
        ];
        let q = |a: i64, b: i64| vec![Q::from_integer(a.into()), Q::from_integer(b.into())];
        let coroots = vec![q(1, 0), q(-1, 0), q(0, 1), q(0, -1), q(1, 1), q(-1, -1), q(1, -1), q(-1, 1)];
        let index = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        RootDatum { rank: 2, roots, coroots, root_vectors: (2..10).collect(), index }
    }

    fn c2_grading() -> CompactnessGrading {
        let mut grades = vec![Grade::Noncompact; 8];
        grades[6] = Grade::Compact;
        grades[7] = Grade::Compact;
        CompactnessGrading { grades }
    }

    #[test]
    fn weyl_group_orders() {
        let rd = c2();
        let w = rd.weyl_group();
        assert_eq!(w.len(), 8);
        for x in &w {
            let mut p = x.perm.clone();
            p.sort_unstable();
            assert_eq!(p, (0..8).collect::<Vec<_>>());
        }
        assert_eq!(rd.all_chambers().len(), 8);
    }

    #[test]
    fn c2_positive_systems_and_largeness() {
        let rd = c2();
        let g = c2_grading();
        let ch = rd.positive_system(&HCParameter::from_ints(&[3, -1])).unwrap();
        let mut simple: Vec<_> = ch.simple.iter().map(|&a| rd.roots[a].clone()).collect();
        simple.sort();
        assert_eq!(simple, vec![vec![0, -2], vec![1, 1]]);
        assert!(rd.is_large(&ch, &g));
        let hol = rd.positive_system(&HCParameter::from_ints(&[3, 1])).unwrap();
        assert!(hol.simple.contains(&6));
        assert!(!rd.is_large(&hol, &g));
        assert!(rd.positive_system(&HCParameter::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn wk_classes() {
        let rd = c2();
        let g = c2_grading();
        let wk = rd.wk_subgroup(&g, &[]).unwrap();
        assert_eq!(wk.len(), 2);
        let classes = rd.large_chambers_mod_wk(&g, &wk);
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.members.len() == 2));
        for c in &classes {
            for w in &wk {
                let moved = rd.act_on_chamber(w, &c.representative);
                assert_eq!(rd.class_of(&classes, &moved), rd.class_of(&classes, &c.representative));
            }
        }
        // A grading-breaking extra generator is rejected.
        assert!(rd.wk_subgroup(&g, &[rd.reflection(0)]).is_err());
    }

    #[test]
    fn equivariance_of_positive_system() {
        let rd = c2();
        let lam = HCParameter::from_ints(&[5, -2]);
        let ch = rd.positive_system(&lam).unwrap();
        for w in rd.weyl_group() {
            let moved = rd.positive_system(&HCParameter::new(w.act(&lam.lambda))).unwrap();
            assert_eq!(moved, rd.act_on_chamber(&w, &ch));
        }
    }

    #[test]
    fn hc_integrality() {
        let rd = c2();
        assert!(rd.is_hc_parameter(&HCParameter::from_ints(&[3, -1])));
        let half = HCParameter::new(vec![Q::new(5.into(), 2.into()), Q::from_integer(1.into())]);
        assert!(!rd.is_hc_parameter(&half));
        assert_eq!(rd.packet_id(&HCParameter::from_ints(&[3, -1])), HCParameter::<Q>::from_ints(&[-3, -1]).lambda);
        assert_eq!(rd.packet(&HCParameter::from_ints(&[2, 1])).len(), 8);
    }
}
