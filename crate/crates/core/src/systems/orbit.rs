use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::scalar::{biguint_floor_scaled, frac, Coef, Fixed, TorusScalar};
use super::spec::{flatten_point, residue_moduli, unflatten, CircleNum, FlatOrbit, FlatValue, Neighborhood, SystemPoint, SystemSpec};
use super::sturmian;
use crate::error::{Error, Result};
use crate::intset::IntegerWindow;

/// Largest window `return_set` will scan.
pub const MAX_RETURN_WINDOW: u64 = 100_000_000;

/// `T^n x`. Exact for rational data; for fixed-point data the result
/// carries the propagated error bound. Weyl coordinates use the closed
/// binomial form, so negative `n` is handled directly.
pub fn orbit_point(sys: &SystemSpec, x: &SystemPoint, n: i64) -> Result<SystemPoint> {
    let flat = FlatOrbit::<TorusScalar>::build(sys, x, &|s: &TorusScalar| s.clone())?;
    Ok(unflatten(sys, &mut flat.eval(n).into_iter()))
}

/// Torus distance of two points: exact, or an interval enclosing the
/// true value when fixed-point coordinates are involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distance {
    Exact(BigRational),
    Guarded { lo: BigRational, hi: BigRational },
}

impl Distance {
    pub fn lower(&self) -> &BigRational {
        match self {
            Distance::Exact(v) => v,
            Distance::Guarded { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &BigRational {
        match self {
            Distance::Exact(v) => v,
            Distance::Guarded { hi, .. } => hi,
        }
    }
}

/// Distance to the nearest integer.
pub fn circle_norm(r: &BigRational) -> BigRational {
    let f = frac(r);
    let other = BigRational::from_integer(1.into()) - &f;
    f.min(other)
}

/// Max over coordinates of the nearest-integer distance of the difference.
pub fn torus_distance(sys: &SystemSpec, a: &SystemPoint, b: &SystemPoint) -> Result<Distance> {
    sys.check_point(a)?;
    sys.check_point(b)?;
    let moduli = residue_moduli(sys);
    let get = |i: usize| moduli.get(i).copied().flatten();
    let conv = |s: &TorusScalar| s.clone();
    let fa = flatten_point(a, &get, &conv);
    let fb = flatten_point(b, &get, &conv);
    let mut exact = true;
    let (mut lo, mut hi) = (BigRational::from_integer(0.into()), BigRational::from_integer(0.into()));
    for (u, v) in fa.iter().zip(&fb) {
        let diff = u.as_circle().sub(&v.as_circle());
        let (l, h) = match diff {
            TorusScalar::Rational(r) => {
                let d = circle_norm(&r);
                (d.clone(), d)
            }
            TorusScalar::Fixed(f) => {
                exact = false;
                let d = BigInt::from(f.norm_ulps());
                let e = BigInt::from(f.err);
                let two128 = super::scalar::two_pow_128();
                let l = (&d - &e).max(BigInt::from(0));
                let h = (&d + &e).min(&two128 >> 1usize);
                (BigRational::new(l, two128.clone()), BigRational::new(h, two128))
            }
        };
        lo = lo.max(l);
        hi = hi.max(h);
    }
    Ok(if exact { Distance::Exact(lo) } else { Distance::Guarded { lo, hi } })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Inside,
    Outside,
    /// Within the error bound of the ball boundary; undecided.
    Boundary,
}

/// Precomputed comparison data for an open ball of radius `eps`.
#[derive(Debug, Clone)]
pub(crate) struct EpsThreshold {
    eps: BigRational,
    /// `ceil(eps · 2^128)`
    ceil_ulps: u128,
    /// `floor(eps · 2^126)`: the largest admissible error bound.
    quarter_ulps: u128,
}

impl EpsThreshold {
    pub fn new(eps: &BigRational) -> Self {
        let floor = biguint_floor_scaled(eps, 128);
        let exact = BigRational::from_integer(floor.clone().into()) == eps * BigRational::from_integer(super::scalar::two_pow_128());
        let ceil = if exact { floor } else { floor + 1u8 };
        EpsThreshold {
            eps: eps.clone(),
            ceil_ulps: ceil.to_u128().unwrap_or(u128::MAX),
            quarter_ulps: biguint_floor_scaled(eps, 126).to_u128().unwrap_or(u128::MAX),
        }
    }

    fn fixed(&self, diff: Fixed, n: i64) -> Result<Verdict> {
        if diff.err > self.quarter_ulps {
            return Err(Error::PrecisionExhausted { n });
        }
        let d = diff.norm_ulps();
        Ok(if d.saturating_add(diff.err) < self.ceil_ulps {
            Verdict::Inside
        } else if d >= diff.err && d - diff.err >= self.ceil_ulps {
            Verdict::Outside
        } else {
            Verdict::Boundary
        })
    }

    fn residue(&self, a: &Residue, c: &Residue) -> Verdict {
        let l = a.l.lcm(&c.l);
        let d = (a.scaled(l) + l - c.scaled(l)) % l;
        let m = d.min(l - d);
        let inside = match (self.eps.numer().to_u64(), self.eps.denom().to_u64()) {
            (Some(p), Some(q)) => (m as u128) * (q as u128) < (p as u128) * (l as u128),
            _ => BigRational::new(m.into(), l.into()) < self.eps,
        };
        if inside {
            Verdict::Inside
        } else {
            Verdict::Outside
        }
    }

    fn exact(&self, diff: &BigRational) -> Verdict {
        if circle_norm(diff) < self.eps {
            Verdict::Inside
        } else {
            Verdict::Outside
        }
    }
}

fn combine(acc: Verdict, v: Verdict) -> Verdict {
    match (acc, v) {
        (Verdict::Outside, _) | (_, Verdict::Outside) => Verdict::Outside,
        (Verdict::Boundary, _) | (_, Verdict::Boundary) => Verdict::Boundary,
        _ => Verdict::Inside,
    }
}

/// `{ n ∈ [lo, hi] : T^n x ∈ U }`. Indices whose membership cannot be
/// decided at the available precision are listed in `boundary` and left
/// out of `window`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnSet {
    pub window: IntegerWindow,
    pub boundary: Vec<i64>,
}

pub fn return_set(sys: &SystemSpec, x: &SystemPoint, u: &Neighborhood, lo: i64, hi: i64) -> Result<ReturnSet> {
    if lo > hi {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let span = (hi as i128 - lo as i128 + 1) as u64;
    if span > MAX_RETURN_WINDOW {
        return Err(Error::WindowTooLarge { len: span, max: MAX_RETURN_WINDOW });
    }
    sys.validate()?;
    sys.check_point(x)?;
    match u {
        Neighborhood::Ball { center, eps } => {
            if matches!(sys, SystemSpec::Sturmian { .. }) {
                return Err(Error::IncompatibleNeighborhood("Sturmian systems use cylinder neighborhoods".into()));
            }
            sys.check_point(center)?;
            let th = EpsThreshold::new(eps);
            if sys.uses_fixed() || x.uses_fixed() || center.uses_fixed() {
                ball_scan::<Fixed>(sys, x, center, lo, hi, &|s| s.to_fixed(), &|a, c, n| {
                    th.fixed(a.sub(*c), n)
                })
            } else if common_modulus(sys, x, center)?.is_some() {
                let exact = |s: &TorusScalar| Residue::of(s).expect("denominators checked");
                ball_scan::<Residue>(sys, x, center, lo, hi, &exact, &|a, c, _| Ok(th.residue(a, c)))
            } else {
                ball_scan::<TorusScalar>(sys, x, center, lo, hi, &|s| s.clone(), &|a, c, _| match a.sub(c) {
                    TorusScalar::Rational(r) => Ok(th.exact(&r)),
                    TorusScalar::Fixed(_) => unreachable!("rational data stays rational"),
                })
            }
        }
        Neighborhood::Subset(residues) => {
            let (SystemSpec::CyclicRotation { n: modulus, k }, SystemPoint::Residue(r)) = (sys, x) else {
                return Err(Error::IncompatibleNeighborhood("subset neighborhoods need a cyclic rotation".into()));
            };
            let m = *modulus as i128;
            let mut hit = vec![false; *modulus as usize];
            for &s in residues {
                hit[(s as i128).rem_euclid(m) as usize] = true;
            }
            let members = (lo..=hi).filter(|&n| hit[(*r as i128 + n as i128 * *k as i128).rem_euclid(m) as usize]);
            Ok(ReturnSet { window: IntegerWindow::from_values(lo, hi, members)?, boundary: Vec::new() })
        }
        Neighborhood::Cylinder { center, radius } => {
            let SystemSpec::Sturmian { .. } = sys else {
                return Err(Error::IncompatibleNeighborhood("cylinders need a Sturmian system".into()));
            };
            sys.check_point(center)?;
            sturmian::cylinder_return_set(sys, x, center, *radius, lo, hi)
        }
    }
}

/// Bound on the common denominator for the machine-integer exact path.
const SMALL_MODULUS: u64 = 1 << 62;

/// A rational point `v / l` of the circle. Only built when all the
/// denominators in play divide one common modulus below `SMALL_MODULUS`,
/// so sums and rescalings fit in machine integers.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Residue {
    v: u64,
    l: u64,
}

impl Residue {
    fn of(s: &TorusScalar) -> Option<Residue> {
        let f = frac(s.as_rational()?);
        Some(Residue { v: f.numer().to_u64()?, l: f.denom().to_u64()? })
    }

    // `l` must be a multiple of `self.l`
    fn scaled(&self, l: u64) -> u64 {
        self.v * (l / self.l)
    }
}

impl CircleNum for Residue {
    fn add(&self, other: &Self) -> Self {
        let l = self.l.lcm(&other.l);
        Residue { v: (self.scaled(l) + other.scaled(l)) % l, l }
    }
    fn mul_int(&self, c: &Coef) -> Self {
        let l = self.l as i128;
        let c = match c {
            Coef::Small(c) => c.rem_euclid(l),
            Coef::Big(b) => b.mod_floor(&BigInt::from(l)).to_i128().expect("reduced below the modulus"),
        };
        Residue { v: ((self.v as u128 * c as u128) % self.l as u128) as u64, l: self.l }
    }
    fn from_residue(r: u64, n: u64) -> Self {
        Residue { v: r % n, l: n }
    }
}

/// Least common multiple of every denominator and residue modulus in the
/// orbit of `x` and in `center`, when it stays below `SMALL_MODULUS`.
fn common_modulus(sys: &SystemSpec, x: &SystemPoint, center: &SystemPoint) -> Result<Option<u64>> {
    let flat = FlatOrbit::<TorusScalar>::build(sys, x, &|s: &TorusScalar| s.clone())?;
    let moduli = residue_moduli(sys);
    let get = |i: usize| moduli.get(i).copied().flatten();
    let center = flatten_point(center, &get, &|s: &TorusScalar| s.clone());
    let mut l: u64 = 1;
    let dens = flat.scalars.iter().chain(center.iter().filter_map(|v| match v {
        FlatValue::Circle(s) => Some(s),
        FlatValue::Residue(..) => None,
    }));
    for s in dens {
        let Some(r) = Residue::of(s) else { return Ok(None) };
        l = match (l as u128).lcm(&(r.l as u128)) {
            m if m < SMALL_MODULUS as u128 => m as u64,
            _ => return Ok(None),
        };
    }
    for n in moduli.into_iter().flatten() {
        l = match (l as u128).lcm(&(n as u128)) {
            m if m < SMALL_MODULUS as u128 => m as u64,
            _ => return Ok(None),
        };
    }
    Ok(Some(l))
}

type VerdictFn<'a, T> = dyn Fn(&T, &T, i64) -> Result<Verdict> + Sync + 'a;

fn ball_scan<T: CircleNum + Send + Sync>(
    sys: &SystemSpec,
    x: &SystemPoint,
    center: &SystemPoint,
    lo: i64,
    hi: i64,
    conv: &(dyn Fn(&TorusScalar) -> T + Sync),
    verdict: &VerdictFn<'_, T>,
) -> Result<ReturnSet> {
    let flat = FlatOrbit::<T>::build(sys, x, &conv)?;
    let moduli = residue_moduli(sys);
    let get = |i: usize| moduli.get(i).copied().flatten();
    let c: Vec<T> = flatten_point(center, &get, &conv).iter().map(FlatValue::as_circle).collect();
    let test = |n: i64| -> Result<Verdict> {
        let coords = flat.eval(n);
        let mut acc = Verdict::Inside;
        for (v, cc) in coords.iter().zip(&c) {
            acc = combine(acc, verdict(&v.as_circle(), cc, n)?);
        }
        Ok(acc)
    };
    // disjoint chunks evaluated in parallel, merged in index order
    let hits: Vec<Result<(i64, Verdict)>> = (lo..=hi)
        .into_par_iter()
        .filter_map(|n| match test(n) {
            Ok(Verdict::Outside) => None,
            other => Some(other.map(|v| (n, v))),
        })
        .collect();
    let mut members = Vec::new();
    let mut boundary = Vec::new();
    for h in hits {
        match h? {
            (n, Verdict::Inside) => members.push(n),
            (n, Verdict::Boundary) => boundary.push(n),
            (_, Verdict::Outside) => {}
        }
    }
    Ok(ReturnSet { window: IntegerWindow::new(lo, hi, members)?, boundary })
}

/// Membership verdict of a single point in a ball, used by report
/// verification independently of the scanning code.
pub fn ball_verdict(sys: &SystemSpec, p: &SystemPoint, center: &SystemPoint, eps: &BigRational) -> Result<Verdict> {
    let th = EpsThreshold::new(eps);
    let moduli = residue_moduli(sys);
    let get = |i: usize| moduli.get(i).copied().flatten();
    let conv = |s: &TorusScalar| s.clone();
    let a = flatten_point(p, &get, &conv);
    let c = flatten_point(center, &get, &conv);
    let mut acc = Verdict::Inside;
    for (u, v) in a.iter().zip(&c) {
        let v = match u.as_circle().sub(&v.as_circle()) {
            TorusScalar::Rational(r) => th.exact(&r),
            TorusScalar::Fixed(f) => th.fixed(f, 0)?,
        };
        acc = combine(acc, v);
    }
    Ok(acc)
}
