//! Points of the circle `R/Z`: exact rationals, or 128-bit fixed-point
//! fractions carrying a sound error bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A fraction `value / 2^128` of the circle together with an error bound
/// `err / 2^128`: the represented point lies within `err` ulps of `value`
/// (distance measured on the circle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fixed {
    pub value: u128,
    pub err: u128,
}

impl Fixed {
    pub fn exact(value: u128) -> Self {
        Fixed { value, err: 0 }
    }

    /// Nearest-integer distance of `value`, in ulps (at most `2^127`).
    pub fn norm_ulps(self) -> u128 {
        if self.value <= 1u128 << 127 {
            self.value
        } else {
            self.value.wrapping_neg()
        }
    }

    pub fn add(self, other: Fixed) -> Fixed {
        Fixed { value: self.value.wrapping_add(other.value), err: self.err.saturating_add(other.err) }
    }

    pub fn sub(self, other: Fixed) -> Fixed {
        Fixed { value: self.value.wrapping_sub(other.value), err: self.err.saturating_add(other.err) }
    }

    /// Integer multiple; exact modulo 1 apart from the scaled error bound.
    pub fn mul_int(self, c: &Coef) -> Fixed {
        let (residue, magnitude) = c.mod_2_128();
        Fixed { value: self.value.wrapping_mul(residue), err: self.err.saturating_mul(magnitude) }
    }

    /// `floor(r · 2^128)` for the fractional part of `r`; exact when `r` is dyadic.
    pub fn from_rational(r: &BigRational) -> Fixed {
        let f = frac(r);
        let scaled = f.numer() << 128usize;
        let (q, rem) = scaled.div_rem(f.denom());
        let value = q.to_u128().expect("fraction in [0,1) scales below 2^128");
        Fixed { value, err: if rem.is_zero() { 0 } else { 1 } }
    }

    /// The value as an exact rational in `[0, 1)`.
    pub fn value_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.value), two_pow_128())
    }

    pub fn err_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.err), two_pow_128())
    }
}

pub(crate) fn two_pow_128() -> BigInt {
    BigInt::one() << 128usize
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// Integer coefficient of an orbit formula (binomial coefficients, `n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coef {
    Small(i128),
    Big(BigInt),
}

impl Coef {
    pub fn to_bigint(&self) -> BigInt {
        match self {
            Coef::Small(v) => BigInt::from(*v),
            Coef::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Small(v) => *v == 0,
            Coef::Big(b) => b.is_zero(),
        }
    }

    /// Residue modulo `2^128` and saturated absolute value.
    fn mod_2_128(&self) -> (u128, u128) {
        match self {
            Coef::Small(v) => (*v as u128, v.unsigned_abs()),
            Coef::Big(b) => {
                let m = b.mod_floor(&two_pow_128());
                let residue = m.to_u128().unwrap_or(0);
                (residue, b.abs().to_u128().unwrap_or(u128::MAX))
            }
        }
    }
}

/// Generalized binomial coefficient `n (n−1) ⋯ (n−k+1) / k!` for any integer `n`.
pub fn binomial(n: i64, k: usize) -> Coef {
    let mut acc: i128 = 1;
    let mut small = true;
    for i in 0..k {
        match acc.checked_mul(n as i128 - i as i128) {
            Some(v) => acc = v / (i as i128 + 1),
            None => {
                small = false;
                break;
            }
        }
    }
    if small {
        return Coef::Small(acc);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n as i128 - i as i128) / BigInt::from(i as u64 + 1);
    }
    Coef::Big(acc)
}

/// A coordinate on the circle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TorusScalar {
    /// Exact, reduced to `[0, 1)`.
    Rational(BigRational),
    Fixed(Fixed),
}

impl TorusScalar {
    pub fn zero() -> Self {
        TorusScalar::Rational(BigRational::zero())
    }

    pub fn rational(num: i64, den: i64) -> Self {
        TorusScalar::from(BigRational::new(num.into(), den.into()))
    }

    /// `(√5 − 1)/2 = [0; 1, 1, 1, …]`.
    pub fn golden() -> Self {
        TorusScalar::Fixed(ContinuedFraction::periodic(vec![0], vec![1]).to_fixed())
    }

    /// `√2 − 1 = [0; 2, 2, 2, …]`.
    pub fn sqrt2_minus_1() -> Self {
        TorusScalar::Fixed(ContinuedFraction::periodic(vec![0], vec![2]).to_fixed())
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, TorusScalar::Fixed(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            TorusScalar::Rational(r) => Some(r),
            TorusScalar::Fixed(_) => None,
        }
    }

    pub fn to_fixed(&self) -> Fixed {
        match self {
            TorusScalar::Rational(r) => Fixed::from_rational(r),
            TorusScalar::Fixed(f) => *f,
        }
    }

    /// Midpoint value as `f64`, for display only.
    pub fn approx(&self) -> f64 {
        match self {
            TorusScalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            TorusScalar::Fixed(f) => f.value as f64 / 2f64.powi(128),
        }
    }

    pub fn add(&self, other: &TorusScalar) -> TorusScalar {
        match (self, other) {
            (TorusScalar::Rational(a), TorusScalar::Rational(b)) => TorusScalar::Rational(frac(&(a + b))),
            _ => TorusScalar::Fixed(self.to_fixed().add(other.to_fixed())),
        }
    }

    pub fn sub(&self, other: &TorusScalar) -> TorusScalar {
        match (self, other) {
            (TorusScalar::Rational(a), TorusScalar::Rational(b)) => TorusScalar::Rational(frac(&(a - b))),
            _ => TorusScalar::Fixed(self.to_fixed().sub(other.to_fixed())),
        }
    }

    pub fn mul_int(&self, c: &Coef) -> TorusScalar {
        match self {
            TorusScalar::Rational(r) => TorusScalar::Rational(frac(&(r * c.to_bigint()))),
            TorusScalar::Fixed(f) => TorusScalar::Fixed(f.mul_int(c)),
        }
    }
}

impl From<BigRational> for TorusScalar {
    fn from(r: BigRational) -> Self {
        TorusScalar::Rational(frac(&r))
    }
}

impl fmt::Display for TorusScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusScalar::Rational(r) => write!(f, "{r}"),
            TorusScalar::Fixed(x) => write!(f, "{:.12}±{:e}", self.approx(), x.err as f64 / 2f64.powi(128)),
        }
    }
}

/// Continued fraction `[a0; a1, …, ak, (b1, …, bm)]` with an optional
/// periodic tail. An empty period denotes a rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub prefix: Vec<u64>,
    pub period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn periodic(prefix: Vec<u64>, period: Vec<u64>) -> Self {
        ContinuedFraction { prefix, period }
    }

    fn term(&self, i: usize) -> Option<u64> {
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.prefix.len()) % self.period.len()])
        }
    }

    /// Value of a finite continued fraction.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.period.is_empty() || self.prefix.is_empty() {
            return None;
        }
        let (p, q) = self.convergent(self.prefix.len() - 1);
        Some(BigRational::new(p, q))
    }

    fn convergent(&self, k: usize) -> (BigInt, BigInt) {
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (BigInt::from(self.term(0).unwrap_or(0)), BigInt::one());
        for i in 1..=k {
            let a = BigInt::from(self.term(i).expect("term exists"));
            let p2 = &a * &p1 + &p0;
            let q2 = &a * &q1 + &q0;
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
        }
        (p1, q1)
    }

    /// Fixed-point value of an infinite (periodic) continued fraction,
    /// taken from a convergent `p/q` with `q ≥ 2^66`, so that the
    /// approximation error is below `2^-132`; with the final truncation
    /// the bound is 2 ulps.
    pub fn to_fixed(&self) -> Fixed {
        assert!(!self.period.is_empty() && self.period.iter().all(|&a| a > 0), "infinite continued fraction");
        let target = BigInt::one() << 66usize;
        let mut k = 1;
        loop {
            let (p, q) = self.convergent(k);
            if q >= target {
                let f = Fixed::from_rational(&BigRational::new(p, q));
                return Fixed { value: f.value, err: 2 };
            }
            k += 1;
        }
    }
}

impl FromStr for TorusScalar {
    type Err = Error;

    /// Accepts `p/q`, an integer, `golden`, `sqrt2m1`, or
    /// `cf:a0;a1,a2,(b1,b2)` (parenthesised block repeats forever).
    /// Decimal literals are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ScalarParse { input: s.to_string(), reason: reason.to_string() };
        let t = s.trim();
        match t {
            "golden" => return Ok(TorusScalar::golden()),
            "sqrt2m1" => return Ok(TorusScalar::sqrt2_minus_1()),
            _ => {}
        }
        if let Some(body) = t.strip_prefix("cf:") {
            let cf = parse_cf(body).map_err(|r| fail(&r))?;
            return Ok(match cf.to_rational() {
                Some(r) => TorusScalar::from(r),
                None => TorusScalar::Fixed(cf.to_fixed()),
            });
        }
        if t.contains('.') || t.contains('e') || t.contains('E') {
            return Err(fail("decimal literals are not accepted; use p/q or a continued fraction"));
        }
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| fail("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| fail("bad denominator"))?;
        if den.sign() != Sign::Plus {
            return Err(fail("denominator must be positive"));
        }
        Ok(TorusScalar::from(BigRational::new(num, den)))
    }
}

fn parse_cf(body: &str) -> std::result::Result<ContinuedFraction, String> {
    let (a0, rest) = body.split_once(';').unwrap_or((body, ""));
    let a0: u64 = a0.trim().parse().map_err(|_| "bad leading term".to_string())?;
    let mut prefix = vec![a0];
    let mut period = Vec::new();
    let rest = rest.trim();
    let (head, tail) = match rest.find('(') {
        Some(i) => {
            let close = rest.rfind(')').ok_or("unclosed period")?;
            (&rest[..i], Some(&rest[i + 1..close]))
        }
        None => (rest, None),
    };
    let parse_terms = |txt: &str| -> std::result::Result<Vec<u64>, String> {
        txt.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| match x.parse::<u64>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(format!("bad partial quotient {x:?}")),
            })
            .collect()
    };
    prefix.extend(parse_terms(head)?);
    if let Some(tail) = tail {
        period = parse_terms(tail)?;
        if period.is_empty() {
            return Err("empty period".into());
        }
    }
    Ok(ContinuedFraction { prefix, period })
}

/// Canonical text form, inverse of `FromStr` for rationals.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn biguint_floor_scaled(r: &BigRational, shift: usize) -> BigUint {
    // floor(r · 2^shift) for r >= 0
    let scaled = r.numer() << shift;
    scaled.div_floor(r.denom()).to_biguint().unwrap_or_default()
}
