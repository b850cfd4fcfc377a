//! Randomized exact conjugacy search.
//!
//! Group elements are words in Cayley transforms `(1 + tX)(1 − tX)⁻¹` of
//! basis elements of 𝔤(ℝ) (or of 𝔨), with `t ∈ {±1, ±2, ±1/2}`; each letter
//! is an exact group element and its inverse is the letter with `−t`.
//! Words are searched from both ends. `NotFound` is inconclusive.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cones::{self, OrbitLabel};
use crate::error::Result;
use crate::lie::{Involution, Realization};
use crate::triples::Dictionary;
use crate::linalg::{self, Vector};
use crate::matrix::Mat;
use crate::scalar::{Gauss, Rational};

pub const DEFAULT_BUDGET: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupSide {
    RealGroup,
    KGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleResult<R> {
    /// `g` with `g X g⁻¹ = Y`.
    Conjugate(Mat<R>),
    NotFound,
}

impl<R> OracleResult<R> {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, OracleResult::Conjugate(_))
    }
}

/// A group element with its inverse.
#[derive(Clone, Debug)]
pub struct Letter<R> {
    pub g: Mat<R>,
    pub g_inv: Mat<R>,
}

impl<R: Rational> Letter<R> {
    fn identity(n: usize) -> Self {
        Letter { g: Mat::identity(n), g_inv: Mat::identity(n) }
    }

    fn then(&self, o: &Letter<R>) -> Letter<R> {
        Letter { g: &o.g * &self.g, g_inv: &self.g_inv * &o.g_inv }
    }

    pub fn conjugate(&self, x: &Mat<R>) -> Mat<R> {
        &(&self.g * x) * &self.g_inv
    }
}

fn cayley<R: Rational>(x: &Mat<R>, t: &Gauss<R>) -> Option<Letter<R>> {
    let n = x.rows();
    let id = Mat::identity(n);
    let tx = x.scale(t);
    let plus = &id + &tx;
    let minus = &id - &tx;
    let minus_inv = linalg::inverse(&minus).ok()?;
    let plus_inv = linalg::inverse(&plus).ok()?;
    Some(Letter { g: &plus * &minus_inv, g_inv: &minus * &plus_inv })
}

/// All letters for one side, in a fixed order.
pub fn alphabet<R: Rational>(rz: &Realization<R>, side: GroupSide) -> Vec<Letter<R>> {
    let gens: Vec<Vector<R>> = match side {
        GroupSide::RealGroup => rz.real_form_basis(Involution::Sigma),
        GroupSide::KGroup => rz.theta_eigenspace(1),
    };
    let ts = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];
    let mut out = Vec::new();
    for v in &gens {
        let x = rz.element(v);
        for &(a, b) in &ts {
            if let Some(l) = cayley(&x, &Gauss::frac(a, b)) {
                out.push(l);
            }
        }
    }
    out
}

/// A random word of the given length.
pub fn random_word<R: Rational>(letters: &[Letter<R>], len: usize, rng: &mut impl Rng) -> Letter<R> {
    let n = letters.first().map_or(0, |l| l.g.rows());
    (0..len).fold(Letter::identity(n), |acc, _| acc.then(&letters[rng.gen_range(0..letters.len())]))
}

/// Searches for `g` in the chosen group with `g X g⁻¹ = Y`.
pub fn conjugacy_oracle<R: Rational>(rz: &Realization<R>, x: &Mat<R>, y: &Mat<R>, side: GroupSide, seed: u64, budget: usize) -> OracleResult<R> {
    let mut letters = alphabet(rz, side);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    letters.shuffle(&mut rng);
    conjugacy_search(&letters, x, y, budget)
}

/// Meet-in-the-middle over words of growing length, within `budget` conjugations.
pub fn conjugacy_search<R: Rational>(letters: &[Letter<R>], x: &Mat<R>, y: &Mat<R>, budget: usize) -> OracleResult<R> {
    if x == y {
        return OracleResult::Conjugate(Mat::identity(x.rows()));
    }
    if x.trace() != y.trace() || x.is_zero() != y.is_zero() {
        return OracleResult::NotFound;
    }
    let n = x.rows();
    let mut spent = 0usize;
    // Words from the X side: w X w⁻¹ ↦ w.
    let mut forward: HashMap<Mat<R>, Letter<R>> = HashMap::new();
    forward.insert(x.clone(), Letter::identity(n));
    let mut frontier = vec![Letter::identity(n)];
    let mut back_frontier = vec![Letter::identity(n)];
    loop {
        // Match the current backward layer: v⁻¹ Y v = w X w⁻¹ gives g = v w.
        for v in &back_frontier {
            let z = &(&v.g_inv * y) * &v.g;
            spent += 1;
            if let Some(w) = forward.get(&z) {
                let g = w.then(v);
                debug_assert!(g.conjugate(x) == *y);
                return OracleResult::Conjugate(g.g);
            }
            if spent >= budget {
                return OracleResult::NotFound;
            }
        }
        // Grow the forward side by one letter.
        let mut next = Vec::new();
        for w in &frontier {
            for l in letters {
                let wl = w.then(l);
                let z = wl.conjugate(x);
                spent += 1;
                if z == *y {
                    return OracleResult::Conjugate(wl.g);
                }
                forward.entry(z).or_insert_with(|| {
                    next.push(wl.clone());
                    wl
                });
                if spent >= budget {
                    return OracleResult::NotFound;
                }
            }
        }
        // Grow the backward side by one letter.
        let room = budget.saturating_sub(spent);
        let back_next: Vec<Letter<R>> = back_frontier.iter().flat_map(|v| letters.iter().map(move |l| v.then(l))).take(room).collect();
        if next.is_empty() && back_next.is_empty() {
            return OracleResult::NotFound;
        }
        frontier = next;
        back_frontier = back_next;
    }
}

/// Outcome of planted-conjugator trials.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct PlantedReport {
    pub trials: usize,
    pub label_invariant: usize,
    pub found: usize,
}

impl PlantedReport {
    pub fn found_rate(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        self.found as f64 / self.trials as f64
    }
}

/// Conjugates principal representatives by random words of length 1 or 2,
/// checks that the label is unchanged, and asks the oracle to recover a
/// conjugator.
pub fn planted_trials<R: Rational>(dict: &Dictionary<R>, side: GroupSide, trials: usize, seed: u64, budget: usize) -> Result<PlantedReport> {
    let rz = dict.rz();
    let reps: Vec<(OrbitLabel, Vec<Gauss<R>>)> = match side {
        GroupSide::RealGroup => dict.real_label_representatives()?.into_iter().map(|(l, xi)| (l, rz.psi_inv_coords(&xi))).collect(),
        GroupSide::KGroup => {
            let mut out = Vec::new();
            for c in &dict.classes {
                out.push((dict.k_orbit_label(&rz.psi_coords(&c.f_pi))?, c.f_pi.clone()));
            }
            out
        }
    };
    let mut report = PlantedReport::default();
    if reps.is_empty() {
        return Ok(report);
    }
    let letters = alphabet(rz, side);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let (label, x) = &reps[trial % reps.len()];
        let len = rng.gen_range(1..=2);
        let w = random_word(&letters, len, &mut rng);
        let xm = rz.element(x);
        let ym = w.conjugate(&xm);
        let y = rz.coords(&ym)?;
        let got = match side {
            GroupSide::RealGroup => cones::real_orbit_label(&dict.entry, &rz.psi_coords(&y))?,
            GroupSide::KGroup => dict.k_orbit_label(&rz.psi_coords(&y))?,
        };
        report.trials += 1;
        if got == *label {
            report.label_invariant += 1;
        }
        let mut shuffled = letters.clone();
        shuffled.shuffle(&mut rng);
        if let OracleResult::Conjugate(g) = conjugacy_search(&shuffled, &xm, &ym, budget) {
            let g_inv = linalg::inverse(&g)?;
            if &(&g * &xm) * &g_inv == ym {
                report.found += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn sl2() -> Dictionary<BigRational> {
        Dictionary::from_bundled("sl2r").unwrap()
    }

    fn named(d: &Dictionary<BigRational>, name: &str) -> Mat<BigRational> {
        d.entry.golden_matrix(name).unwrap()
    }

    #[test]
    fn cayley_letters_are_in_the_group() {
        let d = sl2();
        let omega = &d.entry.symplectic_form;
        for side in [GroupSide::RealGroup, GroupSide::KGroup] {
            let letters = alphabet(d.rz(), side);
            assert!(!letters.is_empty());
            for l in &letters {
                assert_eq!(&l.g * &l.g_inv, Mat::identity(2));
                assert_eq!(&(&l.g.transpose() * omega) * &l.g, *omega);
                if side == GroupSide::RealGroup {
                    assert!(l.g.is_real());
                }
            }
        }
    }

    #[test]
    fn er_and_fr_are_conjugate() {
        let d = sl2();
        let (er, fr) = (named(&d, "ER"), named(&d, "FR"));
        let r = conjugacy_oracle(d.rz(), &er, &fr, GroupSide::RealGroup, 7, DEFAULT_BUDGET);
        let OracleResult::Conjugate(g) = r else { panic!("E_R and F_R should be conjugate") };
        assert_eq!(&(&g * &er) * &linalg::inverse(&g).unwrap(), fr);
    }

    #[test]
    fn er_and_minus_er_not_found() {
        let d = sl2();
        let er = named(&d, "ER");
        let r = conjugacy_oracle(d.rz(), &er, &-&er, GroupSide::RealGroup, 3, 5_000);
        assert_eq!(r, OracleResult::NotFound);
    }

    #[test]
    fn planted_sl2() {
        let d = sl2();
        for side in [GroupSide::RealGroup, GroupSide::KGroup] {
            let r = planted_trials(&d, side, 60, 11, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.label_invariant, r.trials);
            assert_eq!(r.found, r.trials);
        }
    }
}
