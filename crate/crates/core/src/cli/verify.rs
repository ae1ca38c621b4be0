//! Independent re-verification of reports. Witnesses are rechecked from
//! the echoed config with direct orbit evaluation and brute-force counts;
//! no search routine is called.

use std::path::Path;

use num_rational::BigRational;

use super::config::{self as cfg, ExperimentConfig};
use super::report::{canonical_hash, Report, ReportOutcome};
use super::run::{finite_system, grid};
use crate::error::Result;
use crate::intset::{eval_window, generate_sg, IntegerWindow, SetDescriptor};
use crate::ramsey::TripleOutcome;
use crate::systems::{ball_verdict, orbit_point, rational_to_string, return_set, FiniteMeasureSystem, Neighborhood, SystemPoint, SystemSpec, Verdict};
use crate::witness::{cube_sample, FSWitness, SgContainment};

/// First failed check, as a sentence.
pub type Failure = String;

fn sums_of(n: &[i64]) -> Vec<i128> {
    (1usize..1 << n.len()).map(|mask| n.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v as i128).sum()).collect()
}

/// Stored sums must equal the recomputed subset sums, position by position.
fn check_sums(w: &FSWitness) -> std::result::Result<Vec<i64>, Failure> {
    let fresh = sums_of(&w.n);
    if fresh.len() != w.verified_sums.len() {
        return Err(format!("witness {:?} lists {} sums, expected {}", w.n, w.verified_sums.len(), fresh.len()));
    }
    for (i, (&stored, &sum)) in w.verified_sums.iter().zip(&fresh).enumerate() {
        if stored as i128 != sum {
            return Err(format!("sum {stored} (verified_sums[{i}]) does not equal the subset sum {sum} of {:?}", w.n));
        }
    }
    Ok(w.verified_sums.clone())
}

fn members_at(set: &SetDescriptor, values: &[i64]) -> Result<IntegerWindow> {
    let lo = values.iter().copied().min().unwrap_or(0);
    let hi = values.iter().copied().max().unwrap_or(0);
    eval_window(set, lo, hi)
}

fn check_in_set(set: &SetDescriptor, values: &[i64], what: &str) -> std::result::Result<(), Failure> {
    let w = members_at(set, values).map_err(|e| format!("cannot evaluate {what}: {e}"))?;
    match values.iter().find(|v| !w.contains(**v)) {
        Some(v) => Err(format!("sum {v} is not in {what}")),
        None => Ok(()),
    }
}

fn check_rp(sys: &SystemSpec, x: &SystemPoint, y: &SystemPoint, eps: &BigRational, w: &FSWitness) -> std::result::Result<(), Failure> {
    for s in check_sums(w)? {
        let p = orbit_point(sys, x, s).map_err(|e| format!("orbit at {s}: {e}"))?;
        match ball_verdict(sys, &p, y, eps).map_err(|e| format!("distance at {s}: {e}"))? {
            Verdict::Inside => {}
            v => return Err(format!("sum {s}: T^{s} x is not inside the ball of radius {} ({v:?})", rational_to_string(eps))),
        }
    }
    Ok(())
}

/// `|{r ∈ A : r + s·k ∈ A for every s}|`, counted directly.
fn brute_return_count(fms: &FiniteMeasureSystem, set: &str, sums: &[i64]) -> Result<u64> {
    let a = fms.residues(set)?;
    let n = fms.modulus() as i128;
    let k = fms.shift() as i128;
    let inside = |r: i128| a.binary_search(&(r.rem_euclid(n) as i64)).is_ok();
    Ok(a.iter().filter(|&&r| sums.iter().all(|&s| inside(r as i128 + s as i128 * k))).count() as u64)
}

fn ratio(num: u64, den: u64) -> String {
    rational_to_string(&BigRational::new(num.into(), den.into()))
}

fn err<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> Failure + '_ {
    move |e| format!("{what}: {e}")
}

/// Rechecks one record.
pub fn verify_record(config: &ExperimentConfig, outcome: &ReportOutcome) -> std::result::Result<(), Failure> {
    use ExperimentConfig as C;
    use ReportOutcome as O;
    match (config, outcome) {
        (_, O::PrecisionExhausted { .. } | O::AmbiguousSymbol { .. }) => Ok(()),
        (C::GenSet { set, window, .. }, O::GenSet { lo, hi, members, count, .. }) => {
            let set = cfg::set(set).map_err(err("config"))?;
            if [*lo, *hi] != *window || *count != members.len() {
                return Err("window or count does not match the config".into());
            }
            let fresh = eval_window(&set, *lo, *hi).map_err(err("evaluating the set"))?;
            if fresh.members() != members.as_slice() {
                let bad = members.iter().find(|m| !fresh.contains(**m)).copied();
                return Err(match bad {
                    Some(m) => format!("member {m} is not in the set"),
                    None => "listed members are incomplete".into(),
                });
            }
            Ok(())
        }
        (C::ReturnSet { system, point, neighborhood, window, .. }, O::ReturnSet { lo, hi, members, boundary, .. }) => {
            let sys = cfg::system(system).map_err(err("config"))?;
            let x = cfg::point(&sys, point).map_err(err("config"))?;
            let u = cfg::neighborhood(&sys, neighborhood).map_err(err("config"))?;
            if [*lo, *hi] != *window {
                return Err("window does not match the config".into());
            }
            match &u {
                Neighborhood::Ball { center, eps } => {
                    for &m in members {
                        let p = orbit_point(&sys, &x, m).map_err(err("orbit"))?;
                        if ball_verdict(&sys, &p, center, eps).map_err(err("distance"))? != Verdict::Inside {
                            return Err(format!("member {m} does not return to the ball"));
                        }
                    }
                    Ok(())
                }
                _ => {
                    let fresh = return_set(&sys, &x, &u, *lo, *hi).map_err(err("return set"))?;
                    if fresh.window.members() != members.as_slice() || &fresh.boundary != boundary {
                        return Err("return set differs from a fresh evaluation".into());
                    }
                    Ok(())
                }
            }
        }
        (C::FsWitness { set, .. }, O::FsWitness { search }) => {
            let Some(w) = search.witness() else { return Ok(()) };
            let sums = check_sums(w)?;
            check_in_set(&cfg::set(set).map_err(err("config"))?, &sums, "the target set")
        }
        (C::RpWitness { system, x, y, eps, d, .. }, O::RpWitness { search }) => {
            let Some(w) = search.witness() else { return Ok(()) };
            let sys = cfg::system(system).map_err(err("config"))?;
            if w.n.len() != d + 1 {
                return Err(format!("witness has {} entries, expected {}", w.n.len(), d + 1));
            }
            let (x, y) = (cfg::point(&sys, x).map_err(err("config"))?, cfg::point(&sys, y).map_err(err("config"))?);
            check_rp(&sys, &x, &y, &cfg::rational(eps).map_err(err("config"))?, w)
        }
        (C::SgContainment { p, d, target, window }, O::SgContainment { result }) => {
            let seq = cfg::sequence(p).generate().map_err(err("config"))?;
            let target = cfg::set(target).map_err(err("config"))?;
            let sg = generate_sg(&seq, *d).map_err(err("generating SG"))?;
            let (lo, hi) = (window[0], window[1]);
            let t = eval_window(&target, lo, hi).map_err(err("evaluating the target"))?;
            let first_miss = sg.iter().find(|&s| (lo..=hi).contains(&s) && !t.contains(s));
            let outside = sg.iter().filter(|s| !(lo..=hi).contains(s)).count();
            let expect = match first_miss {
                Some(sum) => SgContainment::Counterexample { sum },
                None if outside > 0 => SgContainment::WindowTruncated { outside },
                None => SgContainment::Contained,
            };
            if &expect != result {
                return Err(format!("containment result {result:?} does not match a fresh check ({expect:?})"));
            }
            Ok(())
        }
        (C::Intersective { p, f, f_window, .. }, O::Intersective { search }) => {
            let Some(w) = search.witness() else { return Ok(()) };
            let sums = check_sums(w)?;
            check_in_set(&cfg::set(p).map_err(err("config"))?, &sums, "P")?;
            let a = w.base.ok_or("intersective witness has no base point")?;
            let shifted: Vec<i64> = std::iter::once(a).chain(sums.iter().map(|s| a + s)).collect();
            if shifted.iter().any(|v| !(f_window[0]..=f_window[1]).contains(v)) {
                return Err(format!("a + FS leaves the window of F (a = {a})"));
            }
            check_in_set(&cfg::set(f).map_err(err("config"))?, &shifted, "F")
        }
        (C::PoincareD { finite, set, p, .. }, O::PoincareD { search, measure })
        | (C::BirkhoffD { finite, set, p, .. }, O::BirkhoffD { search, measure }) => {
            let Some(w) = search.witness() else { return Ok(()) };
            let sums = check_sums(w)?;
            check_in_set(&cfg::set(p).map_err(err("config"))?, &sums, "P")?;
            let fms = finite_system(finite).map_err(err("config"))?;
            let count = brute_return_count(&fms, set, &sums).map_err(err("config"))?;
            if count == 0 {
                return Err(format!("no point of {set} returns along FS({:?})", w.n));
            }
            let fresh = ratio(count, fms.modulus());
            if measure.as_deref() != Some(fresh.as_str()) {
                return Err(format!("measure {measure:?} differs from the recount {fresh}"));
            }
            Ok(())
        }
        (C::Pigeonhole { finite, choose: Some(choose), k, eps, .. }, O::Pigeonhole { indices, measure, bound, .. }) => {
            let fms = finite_system(finite).map_err(err("config"))?;
            let k = k.unwrap_or(2);
            let eps = cfg::rational(eps.as_deref().unwrap_or("0")).map_err(err("config"))?;
            let sets: Vec<Vec<i64>> = choose.iter().map(|c| fms.residues(c)).collect::<Result<_>>().map_err(err("config"))?;
            let n = fms.modulus();
            let a = sets.iter().map(|s| BigRational::new((s.len() as u64).into(), n.into())).min().ok_or("no sets")?;
            let fresh_bound = num_traits::pow(a, k) - eps;
            if rational_to_string(&fresh_bound) != *bound {
                return Err(format!("bound {bound} differs from the recomputed {}", rational_to_string(&fresh_bound)));
            }
            let Some(idx) = indices else { return Ok(()) };
            if idx.len() != k || idx.windows(2).any(|p| p[0] >= p[1]) || idx.iter().any(|&i| i >= sets.len()) {
                return Err(format!("indices {idx:?} are not {k} increasing positions"));
            }
            let count = (0..n as i64).filter(|r| idx.iter().all(|&i| sets[i].binary_search(r).is_ok())).count() as u64;
            let fresh = BigRational::new(count.into(), n.into());
            if measure.as_deref() != Some(rational_to_string(&fresh).as_str()) {
                return Err(format!("measure {measure:?} differs from the recount {}", rational_to_string(&fresh)));
            }
            if fresh < fresh_bound {
                return Err(format!("measure {} is below the bound {}", rational_to_string(&fresh), rational_to_string(&fresh_bound)));
            }
            Ok(())
        }
        (C::Pigeonhole { finite, set: Some(set), rounds: Some(shifts), .. }, O::PigeonholeIterative { rounds, .. }) => {
            let fms = finite_system(finite).map_err(err("config"))?;
            let n = fms.modulus() as i64;
            let k = fms.shift() as i128;
            let mut current: Vec<i64> = fms.residues(set).map_err(err("config"))?;
            for (j, r) in rounds.iter().enumerate() {
                let list = shifts.get(j).ok_or("more rounds than shift lists")?;
                let (t1, t2) = r.pair;
                if t1 >= t2 || t2 >= list.len() || list[t2] - list[t1] != r.shift_difference {
                    return Err(format!("round {j}: pair {:?} does not match its shift list", r.pair));
                }
                let a = BigRational::new((current.len() as u64).into(), (n as u64).into());
                if rational_to_string(&a) != r.a {
                    return Err(format!("round {j}: measure {} differs from the recount {}", r.a, rational_to_string(&a)));
                }
                let keep: Vec<i64> = current
                    .iter()
                    .copied()
                    .filter(|&x| current.binary_search(&((x as i128 + r.shift_difference as i128 * k).rem_euclid(n as i128) as i64)).is_ok())
                    .collect();
                let m = BigRational::new((keep.len() as u64).into(), (n as u64).into());
                if rational_to_string(&m) != r.next_measure || m.clone() * BigRational::from_integer(2.into()) < &a * &a {
                    return Err(format!("round {j}: next measure {} fails the recount or the a²/2 bound", r.next_measure));
                }
                current = keep;
            }
            Ok(())
        }
        (C::Cube { system, x, d, n }, O::Cube { entries, .. }) => {
            let sys = cfg::system(system).map_err(err("config"))?;
            let x = cfg::point(&sys, x).map_err(err("config"))?;
            let fresh = cube_sample(&sys, &x, *d, n).map_err(err("cube"))?;
            let fresh: Vec<_> = fresh.entries.iter().map(cfg::point_config).collect();
            match fresh.iter().zip(entries).position(|(a, b)| a != b) {
                Some(i) => Err(format!("cube vertex {i} differs from the recomputed point")),
                None if fresh.len() != entries.len() => Err("cube has the wrong number of vertices".into()),
                None => Ok(()),
            }
        }
        (C::AaScan { system, x, d, eps, grid: g, seed, .. }, O::AaScan { grid: listed, witnesses, .. }) => {
            let sys = cfg::system(system).map_err(err("config"))?;
            let x = cfg::point(&sys, x).map_err(err("config"))?;
            let pts = grid(&sys, g, seed.unwrap_or(0)).map_err(err("grid"))?;
            if pts.iter().map(cfg::point_config).collect::<Vec<_>>() != *listed {
                return Err("grid differs from the one the config generates".into());
            }
            let eps = cfg::rational(eps).map_err(err("config"))?;
            for hit in witnesses {
                let y = cfg::point(&sys, &hit.y).map_err(err("grid point"))?;
                if hit.witness.n.len() != d + 1 {
                    return Err(format!("witness for {:?} has the wrong length", hit.y));
                }
                check_rp(&sys, &x, &y, &eps, &hit.witness)?;
            }
            Ok(())
        }
        (C::RamseySg2 { p, window, .. }, O::RamseySg2 { classes, control }) => {
            let seq = cfg::sequence(p).generate().map_err(err("config"))?;
            let sg = generate_sg(&seq, 2).map_err(err("generating SG_2"))?;
            let (lo, hi) = (window[0], window[1]);
            let odd = generate_sg(&seq.odd_positions(), 1).map_err(err("generating SG_1"))?;
            let even = if seq.len() > 1 { Some(generate_sg(&seq.even_positions(), 1).map_err(err("generating SG_1"))?) } else { None };
            let label = |v: i64| -> Option<&'static str> {
                if !(lo..=hi).contains(&v) || !sg.contains(v) {
                    None
                } else if odd.contains(v) {
                    Some("B1")
                } else if even.as_ref().is_some_and(|e| e.contains(v)) {
                    Some("B2")
                } else {
                    Some("B0")
                }
            };
            let six = |a: [i64; 3]| [a[0], a[1], a[2], a[0] + a[1], a[1] + a[2], a[0] + a[2]];
            for c in classes {
                if let TripleOutcome::Found(t) = &c.outcome {
                    if let Some(v) = six(t.a).into_iter().find(|&v| label(v) != Some(c.class.as_str())) {
                        return Err(format!("triple {:?}: {v} is not in class {}", t.a, c.class));
                    }
                }
            }
            if let Some(TripleOutcome::Found(t)) = control {
                if let Some(v) = six(t.a).into_iter().find(|&v| label(v).is_none()) {
                    return Err(format!("control triple {:?}: {v} is not in SG_2(P) within the window", t.a));
                }
            }
            Ok(())
        }
        (c, o) => Err(format!("outcome {:?} does not belong to a {} experiment", std::mem::discriminant(o), c.kind())),
    }
}

/// Every record, then the canonical hash.
pub fn verify_report(report: &Report) -> std::result::Result<(), Failure> {
    for (i, r) in report.experiments.iter().enumerate() {
        verify_record(&r.config, &r.outcome).map_err(|f| format!("experiment {i} ({}): {f}", r.config.kind()))?;
    }
    let fresh = canonical_hash(report);
    if fresh != report.canonical_sha256 {
        return Err(format!("canonical hash mismatch: stored {}, recomputed {fresh}", report.canonical_sha256));
    }
    Ok(())
}

pub fn verify_path(path: &Path) -> std::result::Result<(), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let report: Report = serde_json::from_str(&text).map_err(|e| format!("not a report: {e}"))?;
    verify_report(&report)
}

