use super::generate::{delta_set, generate_fs_bounded, generate_sg_bounded, DEFAULT_MAX_GENERATOR_LEN};
use super::sequence::SequenceSpec;
use super::window::IntegerWindow;
use crate::error::{Error, Result};
use crate::systems::{return_set, Neighborhood, SystemPoint, SystemSpec};

/// Intensional description of a subset of `Z`. Evaluation is only ever
/// over an explicit window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetDescriptor {
    Explicit(IntegerWindow),
    Fs(SequenceSpec),
    Sg { p: SequenceSpec, d: usize },
    /// Positive differences of a set with bounded support.
    Delta(Box<SetDescriptor>),
    Ap { modulus: u64, residue: i64 },
    /// `N(x, U)`; indices undecidable at the available precision are left out.
    ReturnSet { system: SystemSpec, point: SystemPoint, neighborhood: Neighborhood },
    Union(Vec<SetDescriptor>),
    Intersection(Vec<SetDescriptor>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    pub max_generator_len: usize,
    pub max_window_len: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { max_generator_len: DEFAULT_MAX_GENERATOR_LEN, max_window_len: 100_000_000 }
    }
}

/// Members of `s` inside `[lo, hi]`, with the default limits.
pub fn eval_window(s: &SetDescriptor, lo: i64, hi: i64) -> Result<IntegerWindow> {
    eval_window_with(&EvalConfig::default(), s, lo, hi)
}

pub fn eval_window_with(cfg: &EvalConfig, s: &SetDescriptor, lo: i64, hi: i64) -> Result<IntegerWindow> {
    if lo > hi {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let span = (hi as i128 - lo as i128 + 1) as u64;
    if span > cfg.max_window_len {
        return Err(Error::WindowTooLarge { len: span, max: cfg.max_window_len });
    }
    match s {
        SetDescriptor::Explicit(w) => IntegerWindow::from_values(lo, hi, w.iter()),
        SetDescriptor::Fs(p) => {
            let g = generate_fs_bounded(&p.generate()?, cfg.max_generator_len)?;
            IntegerWindow::from_values(lo, hi, g.iter())
        }
        SetDescriptor::Sg { p, d } => {
            let g = generate_sg_bounded(&p.generate()?, *d, cfg.max_generator_len)?;
            IntegerWindow::from_values(lo, hi, g.iter())
        }
        SetDescriptor::Delta(inner) => {
            let (a, b) = support(cfg, inner)?.ok_or(Error::Unbounded("difference sets need a bounded inner set"))?;
            let base = if a <= b { eval_window_with(cfg, inner, a, b)? } else { IntegerWindow::empty(0, 0)? };
            IntegerWindow::from_values(lo, hi, delta_set(&base)?.iter())
        }
        SetDescriptor::Ap { modulus, residue } => {
            if *modulus == 0 {
                return Err(Error::InvalidParameter("AP modulus must be >= 1".into()));
            }
            let q = *modulus as i128;
            let r = (*residue as i128).rem_euclid(q);
            let first = lo as i128 + (r - lo as i128).rem_euclid(q);
            let members = (0..).map(|i| first + i * q).take_while(|&v| v <= hi as i128).map(|v| v as i64);
            IntegerWindow::new(lo, hi, members.collect())
        }
        SetDescriptor::ReturnSet { system, point, neighborhood } => {
            Ok(return_set(system, point, neighborhood, lo, hi)?.window)
        }
        SetDescriptor::Union(parts) => {
            let mut values = Vec::new();
            for p in parts {
                values.extend(eval_window_with(cfg, p, lo, hi)?.into_members());
            }
            IntegerWindow::from_values(lo, hi, values)
        }
        SetDescriptor::Intersection(parts) => {
            let mut acc = IntegerWindow::full(lo, hi)?;
            for p in parts {
                acc = acc.intersection(&eval_window_with(cfg, p, lo, hi)?)?;
            }
            Ok(acc)
        }
    }
}

/// A finite interval containing the whole set, when one is known.
pub fn support(cfg: &EvalConfig, s: &SetDescriptor) -> Result<Option<(i64, i64)>> {
    Ok(match s {
        SetDescriptor::Explicit(w) => Some((w.lo(), w.hi())),
        SetDescriptor::Fs(p) => {
            let g = generate_fs_bounded(&p.generate()?, cfg.max_generator_len)?;
            Some(span_of(&g))
        }
        SetDescriptor::Sg { p, d } => {
            let g = generate_sg_bounded(&p.generate()?, *d, cfg.max_generator_len)?;
            Some(span_of(&g))
        }
        SetDescriptor::Delta(inner) => support(cfg, inner)?.map(|(a, b)| (0, b.saturating_sub(a).max(0))),
        SetDescriptor::Ap { .. } | SetDescriptor::ReturnSet { .. } => None,
        SetDescriptor::Union(parts) => {
            let mut acc: Option<(i64, i64)> = None;
            for p in parts {
                let (a, b) = match support(cfg, p)? {
                    Some(s) => s,
                    None => return Ok(None),
                };
                acc = Some(match acc {
                    None => (a, b),
                    Some((x, y)) => (x.min(a), y.max(b)),
                });
            }
            Some(acc.unwrap_or((0, 0)))
        }
        SetDescriptor::Intersection(parts) => {
            let mut acc: Option<(i64, i64)> = None;
            for p in parts {
                if let Some((a, b)) = support(cfg, p)? {
                    acc = Some(match acc {
                        None => (a, b),
                        Some((x, y)) => (x.max(a), y.min(b)),
                    });
                }
            }
            // an empty intersection of intervals still needs a valid window
            acc.map(|(a, b)| if a <= b { (a, b) } else { (a, a) })
        }
    })
}

fn span_of(w: &IntegerWindow) -> (i64, i64) {
    match (w.members().first(), w.members().last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (0, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::TorusScalar;
    use num_rational::BigRational;

    #[test]
    fn examples() {
        let ap = SetDescriptor::Ap { modulus: 3, residue: 0 };
        assert_eq!(eval_window(&ap, -6, 6).unwrap().members(), &[-6, -3, 0, 3, 6]);
        let fs = SetDescriptor::Fs(SequenceSpec::Explicit(vec![1, 2, 4]));
        assert_eq!(eval_window(&fs, 0, 100).unwrap().members(), &[1, 2, 3, 4, 5, 6, 7]);
        let sg = SetDescriptor::Sg { p: SequenceSpec::Explicit(vec![1, 2, 4, 8]), d: 2 };
        let expect: Vec<i64> = (1..=15).filter(|&v| v != 9).collect();
        assert_eq!(eval_window(&sg, 0, 100).unwrap().members(), expect.as_slice());
    }

    #[test]
    fn ap_negative_residue() {
        let ap = SetDescriptor::Ap { modulus: 5, residue: -1 };
        assert_eq!(eval_window(&ap, -7, 10).unwrap().members(), &[-6, -1, 4, 9]);
    }

    #[test]
    fn delta_needs_bounded_support() {
        let d = SetDescriptor::Delta(Box::new(SetDescriptor::Ap { modulus: 2, residue: 0 }));
        assert!(matches!(eval_window(&d, 0, 10), Err(Error::Unbounded(_))));
        let partial = SetDescriptor::Explicit(IntegerWindow::new(0, 7, vec![0, 1, 3, 7]).unwrap());
        let d = SetDescriptor::Delta(Box::new(partial));
        assert_eq!(eval_window(&d, 0, 100).unwrap().members(), &[1, 2, 3, 4, 6, 7]);
        assert_eq!(eval_window(&d, 3, 5).unwrap().members(), &[3, 4]);
    }

    #[test]
    fn union_and_intersection() {
        let a = SetDescriptor::Ap { modulus: 2, residue: 0 };
        let b = SetDescriptor::Ap { modulus: 3, residue: 0 };
        let u = SetDescriptor::Union(vec![a.clone(), b.clone()]);
        assert_eq!(eval_window(&u, 0, 10).unwrap().members(), &[0, 2, 3, 4, 6, 8, 9, 10]);
        let i = SetDescriptor::Intersection(vec![a, b]);
        assert_eq!(eval_window(&i, 0, 13).unwrap().members(), &[0, 6, 12]);
    }

    #[test]
    fn return_set_descriptor() {
        let s = SetDescriptor::ReturnSet {
            system: SystemSpec::Rotation { alpha: TorusScalar::rational(2, 5) },
            point: SystemPoint::Circle(TorusScalar::zero()),
            neighborhood: Neighborhood::ball(
                SystemPoint::Circle(TorusScalar::zero()),
                BigRational::new(3.into(), 20.into()),
            )
            .unwrap(),
        };
        assert_eq!(eval_window(&s, 1, 20).unwrap().members(), &[5, 10, 15, 20]);
    }

    #[test]
    fn window_budget() {
        let cfg = EvalConfig { max_window_len: 10, ..EvalConfig::default() };
        let ap = SetDescriptor::Ap { modulus: 3, residue: 0 };
        assert!(matches!(eval_window_with(&cfg, &ap, 0, 10), Err(Error::WindowTooLarge { .. })));
    }
}
