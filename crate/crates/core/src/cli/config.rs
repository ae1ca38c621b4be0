//! Experiment configuration: the TOML schema and its translation into
//! library types. Numbers that are not integers are always strings
//! (`"3/20"`, `"golden"`, `"cf:0;(2)"`), never floating literals.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intset::{IntegerWindow, SequenceSpec, SetDescriptor};
use crate::systems::{rational_to_string, Neighborhood, SystemPoint, SystemSpec, TorusScalar};
use crate::witness::{EntryRegime, SearchBudget};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointConfig {
    Int(i64),
    Text(String),
    List(Vec<PointConfig>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SequenceConfig {
    Terms(Vec<i64>),
    Geometric { first: i64, ratio: i64, count: usize },
    SuperLacunary { seed: i64, slack: i64, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SystemConfig {
    Rotation { alpha: String },
    WeylAffine { d: usize, alpha: String },
    Cyclic { n: u64, k: i64 },
    Sturmian {
        alpha: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<String>,
    },
    Product { factors: Vec<SystemConfig> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum NeighborhoodConfig {
    Ball { center: PointConfig, eps: String },
    Cylinder { center: PointConfig, radius: u32 },
    Subset { residues: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetConfig {
    Explicit { members: Vec<i64> },
    Fs { p: SequenceConfig },
    Sg { p: SequenceConfig, d: usize },
    Delta { of: Box<SetConfig> },
    Ap { modulus: u64, residue: i64 },
    ReturnSet { system: SystemConfig, point: PointConfig, neighborhood: NeighborhoodConfig },
    Union { sets: Vec<SetConfig> },
    Intersection { sets: Vec<SetConfig> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct BudgetConfig {
    /// Bounds for the witness entries `n_i`.
    pub window: [i64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_nodes: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_candidates_per_level: Option<usize>,
    #[serde(default)]
    pub allow_zero: bool,
    #[serde(default)]
    pub allow_negative: bool,
    #[serde(default)]
    pub allow_repeats: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GridConfig {
    Points(Vec<PointConfig>),
    /// `random` points with coordinates `j / denominator`, drawn from the seed.
    Random { random: usize, denominator: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExperimentConfig {
    #[serde(rename_all = "kebab-case")]
    GenSet {
        set: SetConfig,
        window: [i64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        density_block: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        csv: Option<String>,
    },
    ReturnSet {
        system: SystemConfig,
        point: PointConfig,
        neighborhood: NeighborhoodConfig,
        window: [i64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        csv: Option<String>,
    },
    FsWitness { set: SetConfig, d: usize, budget: BudgetConfig },
    RpWitness { system: SystemConfig, x: PointConfig, y: PointConfig, d: usize, eps: String, budget: BudgetConfig },
    SgContainment { p: SequenceConfig, d: usize, target: SetConfig, window: [i64; 2] },
    #[serde(rename_all = "kebab-case")]
    Intersective { p: SetConfig, f: SetConfig, f_window: [i64; 2], d: usize, budget: BudgetConfig },
    PoincareD { finite: FiniteConfig, set: String, p: SetConfig, d: usize, budget: BudgetConfig },
    BirkhoffD { finite: FiniteConfig, set: String, p: SetConfig, d: usize, budget: BudgetConfig },
    Pigeonhole {
        finite: FiniteConfig,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        choose: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eps: Option<String>,
        /// Iterated pair selection on `set`, one shift list per round.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        set: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rounds: Option<Vec<Vec<i64>>>,
    },
    Cube { system: SystemConfig, x: PointConfig, d: usize, n: Vec<i64> },
    AaScan {
        system: SystemConfig,
        x: PointConfig,
        d: usize,
        eps: String,
        grid: GridConfig,
        budget: BudgetConfig,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    #[serde(rename = "ramsey-sg2", rename_all = "kebab-case")]
    RamseySg2 {
        p: SequenceConfig,
        window: [i64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_class_size: Option<usize>,
        /// Also search the unpartitioned set.
        #[serde(default = "yes")]
        control: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

fn yes() -> bool {
    true
}

/// `Z/modulus` with the rotation `r ↦ r + shift` and named residue sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteConfig {
    pub modulus: u64,
    pub shift: i64,
    pub sets: BTreeMap<String, Vec<i64>>,
}

impl ExperimentConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            ExperimentConfig::GenSet { .. } => "gen-set",
            ExperimentConfig::ReturnSet { .. } => "return-set",
            ExperimentConfig::FsWitness { .. } => "fs-witness",
            ExperimentConfig::RpWitness { .. } => "rp-witness",
            ExperimentConfig::SgContainment { .. } => "sg-containment",
            ExperimentConfig::Intersective { .. } => "intersective",
            ExperimentConfig::PoincareD { .. } => "poincare-d",
            ExperimentConfig::BirkhoffD { .. } => "birkhoff-d",
            ExperimentConfig::Pigeonhole { .. } => "pigeonhole",
            ExperimentConfig::Cube { .. } => "cube",
            ExperimentConfig::AaScan { .. } => "aa-scan",
            ExperimentConfig::RamseySg2 { .. } => "ramsey-sg2",
        }
    }

    fn fill_seed(&mut self, seed: u64) {
        if let ExperimentConfig::AaScan { seed: s, .. } | ExperimentConfig::RamseySg2 { seed: s, .. } = self {
            s.get_or_insert(seed);
        }
    }
}

/// Reads a config holding either one experiment (a top-level `kind`) or a
/// batch under `[[experiments]]`. A top-level `seed` is inherited by
/// experiments that draw random numbers and do not set their own.
pub fn parse_config(text: &str) -> Result<Vec<ExperimentConfig>> {
    let bad = |e: &dyn std::fmt::Display| Error::InvalidParameter(format!("config: {e}"));
    let mut table: toml::Table = text.parse().map_err(|e| bad(&e))?;
    let mut experiments = if let Some(list) = table.remove("experiments") {
        let seed = table.remove("seed");
        if let Some(k) = table.keys().next() {
            return Err(bad(&format!("unknown top-level key {k:?} in a batch config")));
        }
        let seed = seed.map(|s| s.try_into::<u64>().map_err(|e| bad(&e))).transpose()?;
        let list: Vec<ExperimentConfig> = list.try_into().map_err(|e| bad(&e))?;
        if list.is_empty() {
            return Err(bad(&"batch config has no experiments"));
        }
        list.into_iter()
            .map(|mut e| {
                e.fill_seed(seed.unwrap_or(0));
                e
            })
            .collect()
    } else {
        vec![toml::Value::Table(table).try_into::<ExperimentConfig>().map_err(|e| bad(&e))?]
    };
    for e in &mut experiments {
        e.fill_seed(0);
        resolve(e)?;
    }
    Ok(experiments)
}

pub fn load_config(path: &Path) -> Result<Vec<ExperimentConfig>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

/// A config whose every field has been translated once, so errors surface
/// before any experiment starts.
fn resolve(e: &ExperimentConfig) -> Result<()> {
    crate::cli::run::plan(e).map(|_| ())
}

pub fn scalar(s: &str) -> Result<TorusScalar> {
    s.parse()
}

/// An exact rational, not reduced mod 1. Continued-fraction tags are
/// refused because radii and measures must be exact.
pub fn rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let fail = |reason: &str| Error::ScalarParse { input: s.to_string(), reason: reason.to_string() };
    if t.contains('.') || t.contains('e') || t.contains(':') {
        return Err(fail("expected an exact rational p/q"));
    }
    let r = if t.contains('/') { BigRational::from_str(t) } else { BigRational::from_str(&format!("{t}/1")) };
    r.map_err(|_| fail("expected an exact rational p/q"))
}

pub fn sequence(c: &SequenceConfig) -> SequenceSpec {
    match c {
        SequenceConfig::Terms(t) => SequenceSpec::Explicit(t.clone()),
        SequenceConfig::Geometric { first, ratio, count } => SequenceSpec::Geometric { first: *first, ratio: *ratio, count: *count },
        SequenceConfig::SuperLacunary { seed, slack, count } => SequenceSpec::SuperLacunary { seed: *seed, slack: *slack, count: *count },
    }
}

pub fn system(c: &SystemConfig) -> Result<SystemSpec> {
    let sys = match c {
        SystemConfig::Rotation { alpha } => SystemSpec::Rotation { alpha: scalar(alpha)? },
        SystemConfig::WeylAffine { d, alpha } => SystemSpec::WeylAffine { d: *d, alpha: scalar(alpha)? },
        SystemConfig::Cyclic { n, k } => SystemSpec::CyclicRotation { n: *n, k: *k },
        SystemConfig::Sturmian { alpha, base } => SystemSpec::Sturmian {
            alpha: scalar(alpha)?,
            base: base.as_deref().map(scalar).transpose()?.unwrap_or_else(TorusScalar::zero),
        },
        SystemConfig::Product { factors } => SystemSpec::Product(factors.iter().map(system).collect::<Result<_>>()?),
    };
    sys.validate()?;
    Ok(sys)
}

fn circle_coord(c: &PointConfig) -> Result<TorusScalar> {
    match c {
        PointConfig::Int(i) => Ok(TorusScalar::rational(*i, 1)),
        PointConfig::Text(s) => scalar(s),
        PointConfig::List(_) => Err(Error::ArityMismatch("expected a single coordinate".into())),
    }
}

/// Reads a point in the shape `sys` expects: a number or string for a
/// circle, a list for a torus or product, an integer for `Z/N`.
pub fn point(sys: &SystemSpec, c: &PointConfig) -> Result<SystemPoint> {
    let p = match (sys, c) {
        (SystemSpec::Rotation { .. } | SystemSpec::Sturmian { .. }, c) => SystemPoint::Circle(circle_coord(c)?),
        (SystemSpec::WeylAffine { .. }, PointConfig::List(cs)) => SystemPoint::Torus(cs.iter().map(circle_coord).collect::<Result<_>>()?),
        (SystemSpec::CyclicRotation { .. }, PointConfig::Int(r)) => SystemPoint::Residue(*r),
        (SystemSpec::Product(parts), PointConfig::List(cs)) if parts.len() == cs.len() => {
            SystemPoint::Tuple(parts.iter().zip(cs).map(|(s, c)| point(s, c)).collect::<Result<_>>()?)
        }
        _ => return Err(Error::ArityMismatch(format!("{c:?} for a {} system", sys.kind_name()))),
    };
    sys.check_point(&p)?;
    Ok(p)
}

/// Inverse of [`point`] for exact points; fixed-point coordinates are
/// written as `fixed:<hex>~<err>` in units of `2^-128`.
pub fn point_config(p: &SystemPoint) -> PointConfig {
    let coord = |s: &TorusScalar| match s {
        TorusScalar::Rational(r) => PointConfig::Text(rational_to_string(r)),
        TorusScalar::Fixed(f) => PointConfig::Text(format!("fixed:{:032x}~{}", f.value, f.err)),
    };
    match p {
        SystemPoint::Circle(s) => coord(s),
        SystemPoint::Torus(cs) => PointConfig::List(cs.iter().map(coord).collect()),
        SystemPoint::Residue(r) => PointConfig::Int(*r),
        SystemPoint::Tuple(ps) => PointConfig::List(ps.iter().map(point_config).collect()),
    }
}

pub fn neighborhood(sys: &SystemSpec, c: &NeighborhoodConfig) -> Result<Neighborhood> {
    match c {
        NeighborhoodConfig::Ball { center, eps } => Neighborhood::ball(point(sys, center)?, rational(eps)?),
        NeighborhoodConfig::Cylinder { center, radius } => Ok(Neighborhood::Cylinder { center: point(sys, center)?, radius: *radius }),
        NeighborhoodConfig::Subset { residues } => Ok(Neighborhood::Subset(residues.clone())),
    }
}

pub fn set(c: &SetConfig) -> Result<SetDescriptor> {
    Ok(match c {
        SetConfig::Explicit { members } => SetDescriptor::Explicit(IntegerWindow::spanning(members.iter().copied())),
        SetConfig::Fs { p } => SetDescriptor::Fs(sequence(p)),
        SetConfig::Sg { p, d } => SetDescriptor::Sg { p: sequence(p), d: *d },
        SetConfig::Delta { of } => SetDescriptor::Delta(Box::new(set(of)?)),
        SetConfig::Ap { modulus, residue } => SetDescriptor::Ap { modulus: *modulus, residue: *residue },
        SetConfig::ReturnSet { system: s, point: p, neighborhood: u } => {
            let sys = system(s)?;
            SetDescriptor::ReturnSet { point: point(&sys, p)?, neighborhood: neighborhood(&sys, u)?, system: sys }
        }
        SetConfig::Union { sets } => SetDescriptor::Union(sets.iter().map(set).collect::<Result<_>>()?),
        SetConfig::Intersection { sets } => SetDescriptor::Intersection(sets.iter().map(set).collect::<Result<_>>()?),
    })
}

pub fn window(w: [i64; 2]) -> Result<(i64, i64)> {
    if w[0] > w[1] {
        return Err(Error::InvalidWindow { lo: w[0], hi: w[1] });
    }
    Ok((w[0], w[1]))
}

pub fn budget(c: &BudgetConfig) -> Result<SearchBudget> {
    let (lo, hi) = window(c.window)?;
    Ok(SearchBudget {
        lo,
        hi,
        max_candidates_per_level: c.max_candidates_per_level,
        max_nodes: c.max_nodes,
        regime: EntryRegime { allow_zero: c.allow_zero, allow_negative: c.allow_negative, allow_repeats: c.allow_repeats },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_and_batch() {
        let one = parse_config(
            r#"
kind = "rp-witness"
system = { type = "rotation", alpha = "golden" }
x = 0
y = 0
d = 1
eps = "3/20"
budget = { window = [1, 100] }
"#,
        )
        .unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].kind(), "rp-witness");

        let batch = parse_config(
            r#"
seed = 7
[[experiments]]
kind = "gen-set"
set = { type = "sg", p = [1, 2, 4], d = 2 }
window = [0, 10]

[[experiments]]
kind = "aa-scan"
system = { type = "cyclic", n = 5, k = 1 }
x = 0
d = 1
eps = "1/10"
grid = { random = 3, denominator = 5 }
budget = { window = [1, 20] }
"#,
        )
        .unwrap();
        assert_eq!(batch.len(), 2);
        assert!(matches!(batch[1], ExperimentConfig::AaScan { seed: Some(7), .. }));
    }

    #[test]
    fn typos_and_floats_are_rejected() {
        assert!(parse_config("kind = \"gen-set\"\nsett = 1\n").is_err());
        let float = r#"
kind = "rp-witness"
system = { type = "rotation", alpha = "0.618" }
x = 0
y = 0
d = 1
eps = "3/20"
budget = { window = [1, 100] }
"#;
        assert!(matches!(parse_config(float), Err(Error::ScalarParse { .. })));
    }

    #[test]
    fn json_round_trip() {
        let cfgs = parse_config(
            r#"
kind = "pigeonhole"
choose = ["E0", "E1"]
k = 2
eps = "1/20"
[finite]
modulus = 10
shift = 1
sets = { E0 = [0, 1, 2, 3, 4], E1 = [9, 0, 1, 2, 3] }
"#,
        )
        .unwrap();
        let json = serde_json::to_string(&cfgs[0]).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cfgs[0]);
    }

    #[test]
    fn rationals_stay_unreduced() {
        assert_eq!(rational("3/2").unwrap(), BigRational::new(3.into(), 2.into()));
        assert!(rational("golden").is_err());
        assert!(rational("0.1").is_err());
    }
}
