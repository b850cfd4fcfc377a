//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the report reads top to bottom.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use nilpotent_dict::appendix::verify_appendix;
use nilpotent_dict::cohomology::{h1, verify_torsor_counts, FiniteAbelianInvolution};
use nilpotent_dict::cones::{self, OrbitLabel};
use nilpotent_dict::oracle::{planted_trials, GroupSide, DEFAULT_BUDGET};
use nilpotent_dict::output::parse_covector;
use nilpotent_dict::roots::WeylChamber;
use nilpotent_dict::{Dictionary, HCParameter, Matrix};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn sl2() -> Dictionary {
    Dictionary::from_bundled("sl2r").expect("bundled sl2r")
}

fn sp4() -> Dictionary {
    Dictionary::from_bundled("sp4r").expect("bundled sp4r")
}

fn sl2_ks() -> impl Iterator<Item = i64> {
    (-20..=20).filter(|k| *k != 0)
}

type Labels = (OrbitLabel, OrbitLabel, OrbitLabel);

fn labels(d: &Dictionary, p: &HCParameter) -> Result<Labels, String> {
    let av = d.av_of(p).map_err(e)?;
    let wf = d.wf_of(p).map_err(e)?;
    let wh = d.whittaker_of(p).map_err(e)?.orbit;
    Ok((av, wf, wh))
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail} in {took:.2?}"))
}

fn appendix() -> Outcome {
    timed(Duration::from_secs(1), || {
        let entry = sl2().entry;
        let r = verify_appendix(&entry).map_err(e)?;
        let failed: Vec<String> = r.failures().map(|i| format!("{}: {} vs {}", i.id, i.lhs, i.rhs)).collect();
        ensure(failed.is_empty(), || failed.join("; "))?;
        let again = verify_appendix(&entry).map_err(e)?;
        ensure(again.identities == r.identities, || "replay is not deterministic".into())?;
        Ok(format!("{} identities", r.identities.len()))
    })
}

fn bijection() -> Outcome {
    timed(Duration::from_secs(5), || {
        let d = sl2();
        let q = d.entry.q_order() as usize;
        let mut by_class: BTreeMap<usize, BTreeSet<Labels>> = BTreeMap::new();
        for k in sl2_ks() {
            let p = HCParameter::from_ints(&[k]);
            let ch = d.entry.roots.positive_system(&p).map_err(e)?;
            let class = d.class_of_chamber(&ch).ok_or_else(|| format!("k={k}: chamber not large"))?;
            let l = labels(&d, &p)?;
            by_class.entry(class).or_default().insert(l);
            let (back, member) = d.reconstruct_chamber(&l.1, &p).map_err(e)?;
            ensure(back == class, || format!("k={k}: reconstruct gave class {back}, expected {class}"))?;
            ensure(member == p, || format!("k={k}: reconstruct gave member {:?}", member.to_strings()))?;
        }
        ensure(by_class.values().all(|s| s.len() == 1), || format!("labels not constant on a class: {by_class:?}"))?;
        let images: Vec<&Labels> = by_class.values().flat_map(|s| s.iter()).collect();
        for pick in [|l: &Labels| l.0.tag, |l: &Labels| l.1.tag, |l: &Labels| l.2.tag] {
            let tags: BTreeSet<i8> = images.iter().map(|l| pick(l)).collect();
            ensure(tags.len() == images.len(), || "a label map is not injective".into())?;
            ensure(tags.len() == q, || format!("image size {} but |Q| = {q}", tags.len()))?;
        }
        Ok(format!("{} classes, |Q| = {q}, 40 parameters", by_class.len()))
    })
}

/// Regular integral weights of sp4r in a box, grouped by chamber.
fn sp4_params(d: &Dictionary, bound: i64) -> BTreeMap<WeylChamber, Vec<HCParameter>> {
    let rd = &d.entry.roots;
    let mut out: BTreeMap<WeylChamber, Vec<HCParameter>> = BTreeMap::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            let p = HCParameter::from_ints(&[a, b]);
            if rd.is_hc_parameter(&p) {
                let ch = rd.positive_system(&p).expect("regular");
                out.entry(ch).or_default().push(p);
            }
        }
    }
    out
}

fn cross_route() -> Outcome {
    let mut checked = 0;
    let d = sl2();
    for k in sl2_ks() {
        let r = d.wf_routes(&HCParameter::from_ints(&[k])).map_err(|err| format!("sl2r k={k}: {err}"))?;
        ensure(r.cone == Some(r.explicit), || format!("sl2r k={k}: cone route {:?}", r.cone))?;
        ensure(r.ks_of_av == r.explicit && r.section == r.explicit, || format!("sl2r k={k}: {r:?}"))?;
        checked += 1;
    }
    let d = sp4();
    for (ch, ps) in sp4_params(&d, 7) {
        if !d.entry.roots.is_large(&ch, &d.entry.grading) {
            continue;
        }
        for p in ps.iter().take(6) {
            let r = d.wf_routes(p).map_err(|err| format!("sp4r {:?}: {err}", p.to_strings()))?;
            ensure(r.ks_of_av == r.explicit && r.section == r.explicit, || format!("sp4r {:?}: {r:?}", p.to_strings()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} parameters, zero disagreements"))
}

fn kostant() -> Outcome {
    let d = sl2();
    let mut n = 0;
    for spec in ["ER*", "-ER*"] {
        let xi = parse_covector(&d.entry, spec).map_err(e)?;
        let label = cones::real_orbit_label(&d.entry, &xi).map_err(e)?;
        let section = cones::kostant_section(&d.entry, &xi).map_err(e)?;
        for k in sl2_ks() {
            let p = HCParameter::from_ints(&[k]);
            let meets = cones::section_meets_orbit(&d.entry, &section, &p).map_err(e)?.is_some();
            let wf = d.wf_fast(&p).map_err(e)?;
            ensure(meets == (label == wf), || format!("X={spec} k={k}: meets={meets}, wf={wf}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} (X, k) pairs"))
}

fn chamber_invariance() -> Outcome {
    let d = sl2();
    let mut sl2_by_chamber: BTreeMap<WeylChamber, BTreeSet<Labels>> = BTreeMap::new();
    for k in sl2_ks() {
        let p = HCParameter::from_ints(&[k]);
        let ch = d.entry.roots.positive_system(&p).map_err(e)?;
        sl2_by_chamber.entry(ch).or_default().insert(labels(&d, &p)?);
    }
    ensure(sl2_by_chamber.values().all(|s| s.len() == 1), || "sl2r labels vary within a chamber".into())?;
    ensure(sl2_by_chamber.values().flatten().collect::<BTreeSet<_>>().len() == sl2_by_chamber.len(), || "sl2r chambers share labels".into())?;

    let d = sp4();
    let rd = &d.entry.roots;
    let mut per_class: BTreeMap<usize, BTreeSet<Labels>> = BTreeMap::new();
    let mut large = 0;
    for (ch, ps) in sp4_params(&d, 9) {
        if !rd.is_large(&ch, &d.entry.grading) {
            continue;
        }
        large += 1;
        ensure(ps.len() >= 5, || format!("only {} parameters in a large chamber", ps.len()))?;
        let class = d.class_of_chamber(&ch).ok_or("large chamber without a class")?;
        let mut here = BTreeSet::new();
        for p in ps.iter().take(8) {
            here.insert(labels(&d, p)?);
        }
        ensure(here.len() == 1, || format!("sp4r labels vary within chamber {:?}", ch.signs))?;
        per_class.entry(class).or_default().extend(here);
    }
    ensure(per_class.values().all(|s| s.len() == 1), || "sp4r labels vary across a W_K-orbit of chambers".into())?;
    let distinct: BTreeSet<&Labels> = per_class.values().flatten().collect();
    ensure(distinct.len() == per_class.len(), || "sp4r non-conjugate chambers share labels".into())?;
    Ok(format!("sl2r {} chambers; sp4r {large} large chambers in {} classes", sl2_by_chamber.len(), per_class.len()))
}

fn torsor() -> Outcome {
    let mut parts = Vec::new();
    for d in [sl2(), sp4()] {
        let r = verify_torsor_counts(&d).map_err(e)?;
        ensure(r.pass, || format!("{}: {:?}", r.entry, r.counts))?;
        parts.push(format!("{} {}", r.entry, r.counts.chambers));
    }
    let cases: [(Vec<u64>, Vec<Vec<i64>>, u64); 5] = [
        (vec![2], vec![vec![1]], 2),
        (vec![3], vec![vec![1]], 1),
        (vec![5], vec![vec![1]], 1),
        (vec![4], vec![vec![-1]], 2),
        (vec![2, 2], vec![vec![0, 1], vec![1, 0]], 1),
    ];
    for (orders, tau, want) in cases {
        let a = FiniteAbelianInvolution::new(orders.clone(), tau.clone()).map_err(e)?;
        let got = h1(&a).map_err(e)?.order();
        ensure(got == want, || format!("H1 of Z/{orders:?} with tau {tau:?}: {got}, expected {want}"))?;
    }
    Ok(format!("counts {}; 5 H1 cases", parts.join(", ")))
}

fn oracle() -> Outcome {
    let mut parts = Vec::new();
    for (i, d) in [sl2(), sp4()].into_iter().enumerate() {
        for side in [GroupSide::RealGroup, GroupSide::KGroup] {
            let r = planted_trials(&d, side, 1000, 0x5eed + i as u64, DEFAULT_BUDGET).map_err(e)?;
            ensure(r.label_invariant == r.trials, || format!("{} {side:?}: {} label failures", d.entry.name, r.trials - r.label_invariant))?;
            ensure(r.found_rate() >= 0.99, || format!("{} {side:?}: found {}/{}", d.entry.name, r.found, r.trials))?;
            parts.push(format!("{} {side:?} {}/{}", d.entry.name, r.found, r.trials));
        }
    }
    Ok(format!("found {} (probabilistic)", parts.join(", ")))
}

fn q_equivariance() -> Outcome {
    let d = sl2();
    let q: &Matrix = &d.entry.q_representatives.iter().find(|(n, _)| n == "diag(1,-1)").ok_or("no diag(1,-1) representative")?.1;
    let rd = &d.entry.roots;
    for k in sl2_ks() {
        let p = HCParameter::from_ints(&[k]);
        let moved = d.q_action_weight(q, &p).map_err(e)?;
        ensure(moved == HCParameter::from_ints(&[-k]), || format!("k={k}: q·λ = {:?}", moved.to_strings()))?;
        let ch = rd.positive_system(&p).map_err(e)?;
        let qch = d.q_action_chamber(q, &ch).map_err(e)?;
        ensure(qch == rd.positive_system(&moved).map_err(e)?, || format!("k={k}: chamber not carried along"))?;
        ensure(d.class_of_chamber(&qch) != d.class_of_chamber(&ch), || format!("k={k}: class not swapped"))?;
        let (av, wf, wh) = labels(&d, &p)?;
        let (av2, wf2, wh2) = labels(&d, &moved)?;
        for (l, l2) in [(av, av2), (wf, wf2), (wh, wh2)] {
            let got = d.q_action_label(q, &l).map_err(e)?;
            ensure(got == l2 && got != l, || format!("k={k}: q·{l} = {got}, expected {l2}"))?;
        }
    }
    Ok("40 parameters, classes and labels swapped compatibly".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("appendix golden suite", appendix),
        ("dictionary bijection (sl2r)", bijection),
        ("cross-route consistency", cross_route),
        ("Kostant-section criterion (sl2r)", kostant),
        ("chamber invariance", chamber_invariance),
        ("torsor counts and H1", torsor),
        ("oracle soundness", oracle),
        ("Q-equivariance (sl2r)", q_equivariance),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", n + 1);
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
