use num_rational::BigRational;
use num_traits::Signed;

use super::scalar::{binomial, Coef, Fixed, TorusScalar};
use crate::error::{Error, Result};

/// An explicit topological dynamical system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemSpec {
    /// `x ↦ x + α` on the circle.
    Rotation { alpha: TorusScalar },
    /// `(θ_1, …, θ_d) ↦ (θ_1 + α, θ_2 + θ_1, …, θ_d + θ_{d−1})` on `T^d`.
    WeylAffine { d: usize, alpha: TorusScalar },
    /// `r ↦ r + k` on `Z/N`.
    CyclicRotation { n: u64, k: i64 },
    /// The `{0,1}` coding of the rotation by `α` with respect to
    /// `[0, 1−α), [1−α, 1)`. Points are points of the underlying rotation;
    /// `base` is the default point that is coded.
    Sturmian { alpha: TorusScalar, base: TorusScalar },
    Product(Vec<SystemSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemPoint {
    Circle(TorusScalar),
    Torus(Vec<TorusScalar>),
    Residue(i64),
    Tuple(Vec<SystemPoint>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Neighborhood {
    /// Open ball in the max-over-coordinates torus metric (`Z/N` sits on
    /// the circle as `r/N`).
    Ball { center: SystemPoint, eps: BigRational },
    /// Sturmian points whose codings agree with the center's on `[−L, L]`.
    Cylinder { center: SystemPoint, radius: u32 },
    /// A finite set of residues of a cyclic rotation.
    Subset(Vec<i64>),
}

impl Neighborhood {
    pub fn ball(center: SystemPoint, eps: BigRational) -> Result<Self> {
        if !eps.is_positive() || eps > BigRational::new(1.into(), 2.into()) {
            return Err(Error::InvalidParameter(format!("ball radius {eps} must lie in (0, 1/2]")));
        }
        Ok(Neighborhood::Ball { center, eps })
    }
}

impl SystemSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SystemSpec::WeylAffine { d, .. } if *d == 0 => {
                Err(Error::InvalidParameter("Weyl system needs d >= 1".into()))
            }
            SystemSpec::CyclicRotation { n, .. } if *n == 0 => {
                Err(Error::InvalidParameter("cyclic rotation needs N >= 1".into()))
            }
            SystemSpec::Sturmian { alpha, .. } if !alpha.is_fixed() => Err(Error::RationalAngle),
            SystemSpec::Product(parts) => parts.iter().try_for_each(SystemSpec::validate),
            _ => Ok(()),
        }
    }

    /// `x` is reduced and has the shape this system expects.
    pub fn check_point(&self, x: &SystemPoint) -> Result<()> {
        let bad = || Error::ArityMismatch(format!("{x:?} for {}", self.kind_name()));
        match (self, x) {
            (SystemSpec::Rotation { .. } | SystemSpec::Sturmian { .. }, SystemPoint::Circle(_)) => Ok(()),
            (SystemSpec::WeylAffine { d, .. }, SystemPoint::Torus(c)) if c.len() == *d => Ok(()),
            (SystemSpec::CyclicRotation { n, .. }, SystemPoint::Residue(r)) if (0..*n as i128).contains(&(*r as i128)) => {
                Ok(())
            }
            (SystemSpec::Product(parts), SystemPoint::Tuple(pts)) if parts.len() == pts.len() => {
                parts.iter().zip(pts).try_for_each(|(s, p)| s.check_point(p))
            }
            _ => Err(bad()),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SystemSpec::Rotation { .. } => "rotation",
            SystemSpec::WeylAffine { .. } => "weyl-affine",
            SystemSpec::CyclicRotation { .. } => "cyclic",
            SystemSpec::Sturmian { .. } => "sturmian",
            SystemSpec::Product(_) => "product",
        }
    }

    /// For a cyclic rotation: minimal iff `gcd(k, N) = 1`.
    pub fn is_minimal_cyclic(&self) -> Option<bool> {
        match self {
            SystemSpec::CyclicRotation { n, k } => Some(num_integer::gcd(k.rem_euclid(*n as i64) as u64, *n) == 1),
            _ => None,
        }
    }

    /// The origin of the phase space (all coordinates zero).
    pub fn origin(&self) -> SystemPoint {
        match self {
            SystemSpec::Rotation { .. } | SystemSpec::Sturmian { .. } => SystemPoint::Circle(TorusScalar::zero()),
            SystemSpec::WeylAffine { d, .. } => SystemPoint::Torus(vec![TorusScalar::zero(); *d]),
            SystemSpec::CyclicRotation { .. } => SystemPoint::Residue(0),
            SystemSpec::Product(parts) => SystemPoint::Tuple(parts.iter().map(SystemSpec::origin).collect()),
        }
    }

    pub(crate) fn uses_fixed(&self) -> bool {
        match self {
            SystemSpec::Rotation { alpha } | SystemSpec::WeylAffine { alpha, .. } => alpha.is_fixed(),
            SystemSpec::Sturmian { alpha, base } => alpha.is_fixed() || base.is_fixed(),
            SystemSpec::CyclicRotation { .. } => false,
            SystemSpec::Product(parts) => parts.iter().any(SystemSpec::uses_fixed),
        }
    }
}

impl SystemPoint {
    pub(crate) fn uses_fixed(&self) -> bool {
        match self {
            SystemPoint::Circle(s) => s.is_fixed(),
            SystemPoint::Torus(c) => c.iter().any(TorusScalar::is_fixed),
            SystemPoint::Residue(_) => false,
            SystemPoint::Tuple(p) => p.iter().any(SystemPoint::uses_fixed),
        }
    }
}

/// Arithmetic shared by the exact and the fixed-point orbit evaluators.
pub(crate) trait CircleNum: Clone {
    fn add(&self, other: &Self) -> Self;
    fn mul_int(&self, c: &Coef) -> Self;
    fn from_residue(r: u64, n: u64) -> Self;
}

impl CircleNum for TorusScalar {
    fn add(&self, other: &Self) -> Self {
        TorusScalar::add(self, other)
    }
    fn mul_int(&self, c: &Coef) -> Self {
        TorusScalar::mul_int(self, c)
    }
    fn from_residue(r: u64, n: u64) -> Self {
        TorusScalar::from(BigRational::new(r.into(), n.into()))
    }
}

impl CircleNum for Fixed {
    fn add(&self, other: &Self) -> Self {
        Fixed::add(*self, *other)
    }
    fn mul_int(&self, c: &Coef) -> Self {
        Fixed::mul_int(*self, c)
    }
    fn from_residue(r: u64, n: u64) -> Self {
        Fixed::from_rational(&BigRational::new(r.into(), n.into()))
    }
}

/// One flattened coordinate of `T^n x`.
#[derive(Debug, Clone)]
pub(crate) enum CoordFormula {
    /// `Σ C(n, m) · scalars[idx]` over the listed `(m, idx)` terms.
    Circle(Vec<(usize, usize)>),
    /// `(r + n k) mod N`.
    Residue { r: i64, k: i64, n: u64 },
}

/// Orbit of one point as a list of coordinate formulas over a scalar table.
#[derive(Debug, Clone)]
pub(crate) struct FlatOrbit<T> {
    pub scalars: Vec<T>,
    pub coords: Vec<CoordFormula>,
    pub max_degree: usize,
}

impl<T: CircleNum> FlatOrbit<T> {
    pub fn build(sys: &SystemSpec, x: &SystemPoint, conv: &impl Fn(&TorusScalar) -> T) -> Result<Self> {
        sys.validate()?;
        sys.check_point(x)?;
        let mut flat = FlatOrbit { scalars: Vec::new(), coords: Vec::new(), max_degree: 1 };
        flat.push(sys, x, conv);
        Ok(flat)
    }

    fn scalar(&mut self, s: &TorusScalar, conv: &impl Fn(&TorusScalar) -> T) -> usize {
        self.scalars.push(conv(s));
        self.scalars.len() - 1
    }

    fn push(&mut self, sys: &SystemSpec, x: &SystemPoint, conv: &impl Fn(&TorusScalar) -> T) {
        match (sys, x) {
            (SystemSpec::Rotation { alpha } | SystemSpec::Sturmian { alpha, .. }, SystemPoint::Circle(x0)) => {
                let a = self.scalar(alpha, conv);
                let b = self.scalar(x0, conv);
                self.coords.push(CoordFormula::Circle(vec![(0, b), (1, a)]));
            }
            (SystemSpec::WeylAffine { d, alpha }, SystemPoint::Torus(theta)) => {
                let a = self.scalar(alpha, conv);
                let t: Vec<usize> = theta.iter().map(|s| self.scalar(s, conv)).collect();
                // θ_j(n) = Σ_{i ≤ j} C(n, j−i) θ_i + C(n, j) α
                for j in 1..=*d {
                    let mut terms: Vec<(usize, usize)> = (1..=j).map(|i| (j - i, t[i - 1])).collect();
                    terms.push((j, a));
                    self.coords.push(CoordFormula::Circle(terms));
                }
                self.max_degree = self.max_degree.max(*d);
            }
            (SystemSpec::CyclicRotation { n, k }, SystemPoint::Residue(r)) => {
                self.coords.push(CoordFormula::Residue { r: *r, k: *k, n: *n });
            }
            (SystemSpec::Product(parts), SystemPoint::Tuple(pts)) => {
                for (s, p) in parts.iter().zip(pts) {
                    self.push(s, p, conv);
                }
            }
            _ => unreachable!("shape checked before flattening"),
        }
    }

    /// Coordinates of `T^n x`; residues are returned as raw residues.
    pub fn eval(&self, n: i64) -> Vec<FlatValue<T>> {
        let binoms: Vec<Coef> = (0..=self.max_degree).map(|m| binomial(n, m)).collect();
        self.coords
            .iter()
            .map(|c| match c {
                CoordFormula::Circle(terms) => {
                    let mut acc: Option<T> = None;
                    for &(m, idx) in terms {
                        let term = if m == 0 { self.scalars[idx].clone() } else { self.scalars[idx].mul_int(&binoms[m]) };
                        acc = Some(match acc {
                            None => term,
                            Some(a) => a.add(&term),
                        });
                    }
                    FlatValue::Circle(acc.expect("nonempty formula"))
                }
                CoordFormula::Residue { r, k, n: modulus } => {
                    let m = *modulus as i128;
                    let v = (*r as i128 + (n as i128) * (*k as i128)).rem_euclid(m);
                    FlatValue::Residue(v as i64, *modulus)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub(crate) enum FlatValue<T> {
    Circle(T),
    Residue(i64, u64),
}

impl<T: CircleNum> FlatValue<T> {
    pub fn as_circle(&self) -> T {
        match self {
            FlatValue::Circle(t) => t.clone(),
            FlatValue::Residue(r, n) => T::from_residue(*r as u64, *n),
        }
    }
}

/// Flattened coordinates of a point (no dynamics), for centers of balls.
pub(crate) fn flatten_point<T: CircleNum>(x: &SystemPoint, modulus: &impl Fn(usize) -> Option<u64>, conv: &impl Fn(&TorusScalar) -> T) -> Vec<FlatValue<T>> {
    fn go<T: CircleNum>(
        x: &SystemPoint,
        modulus: &impl Fn(usize) -> Option<u64>,
        conv: &impl Fn(&TorusScalar) -> T,
        out: &mut Vec<FlatValue<T>>,
    ) {
        match x {
            SystemPoint::Circle(s) => out.push(FlatValue::Circle(conv(s))),
            SystemPoint::Torus(c) => out.extend(c.iter().map(|s| FlatValue::Circle(conv(s)))),
            SystemPoint::Residue(r) => {
                let n = modulus(out.len()).expect("residue coordinate has a modulus");
                out.push(FlatValue::Residue(*r, n));
            }
            SystemPoint::Tuple(p) => p.iter().for_each(|q| go(q, modulus, conv, out)),
        }
    }
    let mut out = Vec::new();
    go(x, modulus, conv, &mut out);
    out
}

/// Moduli of the residue coordinates of a system, by flat coordinate index.
pub(crate) fn residue_moduli(sys: &SystemSpec) -> Vec<Option<u64>> {
    fn go(sys: &SystemSpec, out: &mut Vec<Option<u64>>) {
        match sys {
            SystemSpec::Rotation { .. } | SystemSpec::Sturmian { .. } => out.push(None),
            SystemSpec::WeylAffine { d, .. } => out.extend(std::iter::repeat_n(None, *d)),
            SystemSpec::CyclicRotation { n, .. } => out.push(Some(*n)),
            SystemSpec::Product(parts) => parts.iter().for_each(|p| go(p, out)),
        }
    }
    let mut out = Vec::new();
    go(sys, &mut out);
    out
}

/// Rebuilds a structured point from flat coordinates.
pub(crate) fn unflatten(sys: &SystemSpec, flat: &mut impl Iterator<Item = FlatValue<TorusScalar>>) -> SystemPoint {
    let mut circle = || match flat.next() {
        Some(FlatValue::Circle(s)) => s,
        other => unreachable!("expected a circle coordinate, got {other:?}"),
    };
    match sys {
        SystemSpec::Rotation { .. } | SystemSpec::Sturmian { .. } => SystemPoint::Circle(circle()),
        SystemSpec::WeylAffine { d, .. } => SystemPoint::Torus((0..*d).map(|_| circle()).collect()),
        SystemSpec::CyclicRotation { .. } => match flat.next() {
            Some(FlatValue::Residue(r, _)) => SystemPoint::Residue(r),
            other => unreachable!("expected a residue, got {other:?}"),
        },
        SystemSpec::Product(parts) => SystemPoint::Tuple(parts.iter().map(|p| unflatten(p, flat)).collect()),
    }
}
