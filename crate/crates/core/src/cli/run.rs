use std::path::Path;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{self as cfg, ExperimentConfig, GridConfig};
use super::report::{AaHit, ClassTriples, Record, Report, ReportOutcome, Round, SearchResult};
use crate::error::{Error, Result};
use crate::intset::{banach_density_upper, eval_window, syndetic_gap, IntegerWindow, Sequence, SequenceSpec, SetDescriptor};
use crate::ramsey::{class_triple, find_monochromatic_triple, partition_sg2_checked, LabeledWindow, TripleBudget};
use crate::systems::{rational_to_string, return_set, FiniteMeasureSystem, Neighborhood, SystemPoint, SystemSpec};
use crate::witness::{
    aa_scan, birkhoff_order_witness, check_sg_containment, cube_sample, find_fs_witness, intersective_witness, iterative_pair_selection,
    pigeonhole_select, poincare_order_witness, rp_witness, Outcome, SearchBudget, SelectionOutcome,
};

/// A config translated into library inputs.
pub(crate) enum Plan {
    GenSet { set: SetDescriptor, lo: i64, hi: i64, block: Option<u64> },
    ReturnSet { sys: SystemSpec, x: SystemPoint, u: Neighborhood, lo: i64, hi: i64 },
    FsWitness { set: SetDescriptor, d: usize, budget: SearchBudget },
    RpWitness { sys: SystemSpec, x: SystemPoint, y: SystemPoint, d: usize, eps: BigRational, budget: SearchBudget },
    SgContainment { p: Sequence, d: usize, target: SetDescriptor, lo: i64, hi: i64 },
    Intersective { p: SetDescriptor, f: SetDescriptor, f_lo: i64, f_hi: i64, d: usize, budget: SearchBudget },
    Finite { birkhoff: bool, fms: FiniteMeasureSystem, set: String, p: SetDescriptor, d: usize, budget: SearchBudget },
    Pigeonhole { fms: FiniteMeasureSystem, choose: Vec<String>, k: usize, eps: BigRational },
    PigeonholeIterative { fms: FiniteMeasureSystem, set: String, rounds: Vec<Vec<i64>> },
    Cube { sys: SystemSpec, x: SystemPoint, d: usize, n: Vec<i64> },
    AaScan { sys: SystemSpec, x: SystemPoint, d: usize, eps: BigRational, grid: Vec<SystemPoint>, budget: SearchBudget },
    RamseySg2 { p: Sequence, lo: i64, hi: i64, budget: TripleBudget, control: bool, seed: u64 },
}

pub(crate) fn finite_system(c: &cfg::FiniteConfig) -> Result<FiniteMeasureSystem> {
    let mut fms = FiniteMeasureSystem::new(c.modulus, c.shift)?;
    for (name, residues) in &c.sets {
        fms.add_set(name.clone(), residues.iter().copied());
    }
    Ok(fms)
}

fn random_point(sys: &SystemSpec, den: u64, rng: &mut ChaCha8Rng) -> SystemPoint {
    use crate::systems::TorusScalar;
    let coord = |rng: &mut ChaCha8Rng| TorusScalar::rational(rng.gen_range(0..den) as i64, den as i64);
    match sys {
        SystemSpec::Rotation { .. } | SystemSpec::Sturmian { .. } => SystemPoint::Circle(coord(rng)),
        SystemSpec::WeylAffine { d, .. } => SystemPoint::Torus((0..*d).map(|_| coord(rng)).collect()),
        SystemSpec::CyclicRotation { n, .. } => SystemPoint::Residue(rng.gen_range(0..*n) as i64),
        SystemSpec::Product(parts) => SystemPoint::Tuple(parts.iter().map(|p| random_point(p, den, rng)).collect()),
    }
}

pub(crate) fn grid(sys: &SystemSpec, g: &GridConfig, seed: u64) -> Result<Vec<SystemPoint>> {
    match g {
        GridConfig::Points(ps) => ps.iter().map(|p| cfg::point(sys, p)).collect(),
        GridConfig::Random { random, denominator } => {
            if *denominator == 0 || *denominator > i64::MAX as u64 {
                return Err(Error::InvalidParameter("grid denominator must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..*random).map(|_| random_point(sys, *denominator, &mut rng)).collect())
        }
    }
}

pub(crate) fn plan(e: &ExperimentConfig) -> Result<Plan> {
    Ok(match e {
        ExperimentConfig::GenSet { set, window, density_block, .. } => {
            let (lo, hi) = cfg::window(*window)?;
            Plan::GenSet { set: cfg::set(set)?, lo, hi, block: *density_block }
        }
        ExperimentConfig::ReturnSet { system, point, neighborhood, window, .. } => {
            let sys = cfg::system(system)?;
            let (lo, hi) = cfg::window(*window)?;
            Plan::ReturnSet { x: cfg::point(&sys, point)?, u: cfg::neighborhood(&sys, neighborhood)?, sys, lo, hi }
        }
        ExperimentConfig::FsWitness { set, d, budget } => Plan::FsWitness { set: cfg::set(set)?, d: *d, budget: cfg::budget(budget)? },
        ExperimentConfig::RpWitness { system, x, y, d, eps, budget } => {
            let sys = cfg::system(system)?;
            let eps = cfg::rational(eps)?;
            Neighborhood::ball(sys.origin(), eps.clone())?;
            Plan::RpWitness { x: cfg::point(&sys, x)?, y: cfg::point(&sys, y)?, sys, d: *d, eps, budget: cfg::budget(budget)? }
        }
        ExperimentConfig::SgContainment { p, d, target, window } => {
            let (lo, hi) = cfg::window(*window)?;
            Plan::SgContainment { p: cfg::sequence(p).generate()?, d: *d, target: cfg::set(target)?, lo, hi }
        }
        ExperimentConfig::Intersective { p, f, f_window, d, budget } => {
            let (f_lo, f_hi) = cfg::window(*f_window)?;
            Plan::Intersective { p: cfg::set(p)?, f: cfg::set(f)?, f_lo, f_hi, d: *d, budget: cfg::budget(budget)? }
        }
        ExperimentConfig::PoincareD { finite, set, p, d, budget } | ExperimentConfig::BirkhoffD { finite, set, p, d, budget } => {
            let fms = finite_system(finite)?;
            fms.set(set)?;
            Plan::Finite {
                birkhoff: matches!(e, ExperimentConfig::BirkhoffD { .. }),
                fms,
                set: set.clone(),
                p: cfg::set(p)?,
                d: *d,
                budget: cfg::budget(budget)?,
            }
        }
        ExperimentConfig::Pigeonhole { finite, choose, k, eps, set, rounds } => {
            let fms = finite_system(finite)?;
            match (choose, set, rounds) {
                (Some(choose), None, None) => {
                    for name in choose {
                        fms.set(name)?;
                    }
                    let eps = cfg::rational(eps.as_deref().unwrap_or("0"))?;
                    Plan::Pigeonhole { fms, choose: choose.clone(), k: k.unwrap_or(2), eps }
                }
                (None, Some(set), Some(rounds)) if k.is_none() && eps.is_none() => {
                    fms.set(set)?;
                    Plan::PigeonholeIterative { fms, set: set.clone(), rounds: rounds.clone() }
                }
                _ => {
                    return Err(Error::InvalidParameter(
                        "pigeonhole takes either choose (with k, eps) or set with rounds".into(),
                    ))
                }
            }
        }
        ExperimentConfig::Cube { system, x, d, n } => {
            let sys = cfg::system(system)?;
            if n.len() != *d {
                return Err(Error::InvalidParameter(format!("cube needs {d} directions, got {}", n.len())));
            }
            Plan::Cube { x: cfg::point(&sys, x)?, sys, d: *d, n: n.clone() }
        }
        ExperimentConfig::AaScan { system, x, d, eps, grid: g, budget, seed } => {
            let sys = cfg::system(system)?;
            let eps = cfg::rational(eps)?;
            Neighborhood::ball(sys.origin(), eps.clone())?;
            let grid = grid(&sys, g, seed.unwrap_or(0))?;
            Plan::AaScan { x: cfg::point(&sys, x)?, sys, d: *d, eps, grid, budget: cfg::budget(budget)? }
        }
        ExperimentConfig::RamseySg2 { p, window, max_class_size, control, seed } => {
            let (lo, hi) = cfg::window(*window)?;
            let p = cfg::sequence(p).generate()?;
            p.require_super_lacunary()?;
            Plan::RamseySg2 { p, lo, hi, budget: TripleBudget { max_class_size: *max_class_size }, control: *control, seed: seed.unwrap_or(0) }
        }
    })
}

fn finite_measure(fms: &FiniteMeasureSystem, set: &str, sums: &[i64]) -> Result<String> {
    Ok(rational_to_string(&fms.measure_intersection(set, sums)?))
}

fn execute(plan: Plan) -> Result<ReportOutcome> {
    Ok(match plan {
        Plan::GenSet { set, lo, hi, block } => {
            let w = eval_window(&set, lo, hi)?;
            let density = block.map(|b| banach_density_upper(&w, b)).transpose()?.map(|r| format!("{}/{}", r.numer(), r.denom()));
            ReportOutcome::GenSet { lo, hi, count: w.len(), syndetic_gap: syndetic_gap(&w), banach_density: density, members: w.into_members() }
        }
        Plan::ReturnSet { sys, x, u, lo, hi } => {
            let r = return_set(&sys, &x, &u, lo, hi)?;
            ReportOutcome::ReturnSet { lo, hi, count: r.window.len(), members: r.window.into_members(), boundary: r.boundary }
        }
        Plan::FsWitness { set, d, budget } => {
            let target = eval_window(&set, budget.lo, budget.hi)?;
            ReportOutcome::FsWitness { search: find_fs_witness(&target, d, &budget)?.into() }
        }
        Plan::RpWitness { sys, x, y, d, eps, budget } => ReportOutcome::RpWitness { search: rp_witness(&sys, &x, &y, d, &eps, &budget)?.into() },
        Plan::SgContainment { p, d, target, lo, hi } => ReportOutcome::SgContainment { result: check_sg_containment(&p, d, &target, lo, hi)? },
        Plan::Intersective { p, f, f_lo, f_hi, d, budget } => {
            let pw = eval_window(&p, budget.lo, budget.hi)?;
            let fw = eval_window(&f, f_lo, f_hi)?;
            ReportOutcome::Intersective { search: intersective_witness(&pw, &fw, d, &budget)?.into() }
        }
        Plan::Finite { birkhoff, fms, set, p, d, budget } => {
            let pw = eval_window(&p, budget.lo, budget.hi)?;
            let out = if birkhoff {
                birkhoff_order_witness(&pw, &fms, &set, d, &budget)?
            } else {
                poincare_order_witness(&pw, &fms, &set, d, &budget)?
            };
            let measure = match &out {
                Outcome::Found(w) => Some(finite_measure(&fms, &set, &w.witness.verified_sums)?),
                Outcome::Exhausted(_) => None,
            };
            let search: SearchResult = out.map(|w| w.witness).into();
            if birkhoff {
                ReportOutcome::BirkhoffD { search, measure }
            } else {
                ReportOutcome::PoincareD { search, measure }
            }
        }
        Plan::Pigeonhole { fms, choose, k, eps } => {
            let names: Vec<&str> = choose.iter().map(String::as_str).collect();
            match pigeonhole_select(&fms, &names, k, &eps)? {
                SelectionOutcome::Found(s) => ReportOutcome::Pigeonhole {
                    indices: Some(s.indices),
                    measure: Some(rational_to_string(&s.measure)),
                    a: rational_to_string(&s.a),
                    bound: rational_to_string(&s.bound),
                    nodes: None,
                },
                SelectionOutcome::Exhausted { nodes, a, bound } => ReportOutcome::Pigeonhole {
                    indices: None,
                    measure: None,
                    a: rational_to_string(&a),
                    bound: rational_to_string(&bound),
                    nodes: Some(nodes),
                },
            }
        }
        Plan::PigeonholeIterative { fms, set, rounds } => {
            let run = iterative_pair_selection(&fms, &set, &rounds)?;
            ReportOutcome::PigeonholeIterative {
                rounds: run
                    .rounds
                    .into_iter()
                    .map(|r| Round {
                        a: rational_to_string(&r.a),
                        pair: r.pair,
                        shift_difference: r.shift_difference,
                        next_measure: rational_to_string(&r.next_measure),
                    })
                    .collect(),
                stalled_at: run.stalled_at,
            }
        }
        Plan::Cube { sys, x, d, n } => {
            let c = cube_sample(&sys, &x, d, &n)?;
            ReportOutcome::Cube { n: c.n, entries: c.entries.iter().map(cfg::point_config).collect() }
        }
        Plan::AaScan { sys, x, d, eps, grid, budget } => {
            let scan = aa_scan(&sys, &x, d, &eps, &grid, &budget)?;
            ReportOutcome::AaScan {
                grid: grid.iter().map(cfg::point_config).collect(),
                witnesses: scan.witnesses.into_iter().map(|(y, witness)| AaHit { y: cfg::point_config(&y), witness }).collect(),
                skipped_self: scan.skipped_self,
                exhausted: scan.exhausted,
            }
        }
        Plan::RamseySg2 { p, lo, hi, budget, control, seed } => {
            let lw = partition_sg2_checked(&p, lo, hi, seed)?;
            let classes = (0..lw.classes.len())
                .map(|c| ClassTriples { class: lw.classes[c].clone(), size: lw.class_window(c).len(), outcome: class_triple(&lw, c, &budget) })
                .collect();
            let control = control.then(|| find_monochromatic_triple(&LabeledWindow::single(lw.window.clone(), "SG2"), &budget));
            ReportOutcome::RamseySg2 { classes, control }
        }
    })
}

/// Runs one experiment. Precision failures become part of the payload;
/// every other error is returned.
pub fn run_experiment(e: &ExperimentConfig) -> Result<ReportOutcome> {
    match plan(e).and_then(execute) {
        Err(Error::PrecisionExhausted { n }) => Ok(ReportOutcome::PrecisionExhausted { n }),
        Err(Error::AmbiguousSymbol { n }) => Ok(ReportOutcome::AmbiguousSymbol { n }),
        other => other,
    }
}

/// Runs a batch; experiments execute in parallel and keep their order.
pub fn run_all(configs: &[ExperimentConfig]) -> Result<Report> {
    let records = configs
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let outcome = run_experiment(c)?;
            Ok(Record { config: c.clone(), outcome, wall_time_ms: start.elapsed().as_millis() as u64 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new(records))
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    use std::io::Write;
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// CSV with header `n` and one integer per row.
pub fn window_csv(members: impl IntoIterator<Item = i64>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n"]).expect("in-memory write");
    for m in members {
        w.write_record([m.to_string()]).expect("in-memory write");
    }
    w.into_inner().expect("in-memory write")
}

/// CSV dumps requested by gen-set and return-set experiments.
pub fn write_csv_dumps(report: &Report) -> std::io::Result<()> {
    for r in &report.experiments {
        let path = match &r.config {
            ExperimentConfig::GenSet { csv: Some(p), .. } | ExperimentConfig::ReturnSet { csv: Some(p), .. } => p,
            _ => continue,
        };
        if let ReportOutcome::GenSet { members, .. } | ReportOutcome::ReturnSet { members, .. } = &r.outcome {
            write_atomic(Path::new(path), &window_csv(members.iter().copied()))?;
        }
    }
    Ok(())
}

/// Members of the window described by `--kind`, for the `gen` subcommand.
pub fn gen_window(kind: &str, p: &[i64], d: Option<usize>, modulus: Option<u64>, residue: i64, lo: i64, hi: i64) -> Result<IntegerWindow> {
    let seq = SequenceSpec::Explicit(p.to_vec());
    let set = match kind {
        "fs" => SetDescriptor::Fs(seq),
        "sg" => SetDescriptor::Sg { p: seq, d: d.ok_or(Error::InvalidParameter("--kind sg needs --d".into()))? },
        "delta-fs" => SetDescriptor::Delta(Box::new(SetDescriptor::Fs(seq))),
        "delta-sg" => SetDescriptor::Delta(Box::new(SetDescriptor::Sg { p: seq, d: d.ok_or(Error::InvalidParameter("--kind delta-sg needs --d".into()))? })),
        "ap" => SetDescriptor::Ap { modulus: modulus.ok_or(Error::InvalidParameter("--kind ap needs --modulus".into()))?, residue },
        other => return Err(Error::InvalidParameter(format!("unknown set kind {other:?}; expected fs, sg, delta-fs, delta-sg or ap"))),
    };
    eval_window(&set, lo, hi)
}
