use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use reclab::systems::{
    ball_verdict, factor_count, orbit_point, return_set, sturmian_code, torus_distance, Neighborhood, SystemPoint, SystemSpec, TorusScalar, Verdict,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

fn norm(r: &BigRational) -> BigRational {
    let f = frac(r);
    let g = BigRational::one() - &f;
    if f < g {
        f
    } else {
        g
    }
}

fn coords(p: &SystemPoint) -> Vec<BigRational> {
    match p {
        SystemPoint::Torus(c) => c.iter().map(|s| s.as_rational().unwrap().clone()).collect(),
        SystemPoint::Circle(s) => vec![s.as_rational().unwrap().clone()],
        other => panic!("{other:?}"),
    }
}

/// Applies the skew map `n` times, one step at a time.
fn iterate(alpha: &BigRational, start: &[BigRational], n: i64) -> Vec<BigRational> {
    let mut t = start.to_vec();
    for _ in 0..n.unsigned_abs() {
        if n > 0 {
            for j in (1..t.len()).rev() {
                t[j] = frac(&(&t[j] + &t[j - 1]));
            }
            t[0] = frac(&(&t[0] + alpha));
        } else {
            t[0] = frac(&(&t[0] - alpha));
            for j in 1..t.len() {
                t[j] = frac(&(&t[j] - &t[j - 1]));
            }
        }
    }
    t
}

#[test]
fn weyl_closed_form_matches_iteration() {
    let alpha = q(7, 23);
    let start = vec![q(1, 3), q(2, 5), q(5, 7)];
    let sys = SystemSpec::WeylAffine { d: 3, alpha: TorusScalar::from(alpha.clone()) };
    let x = SystemPoint::Torus(start.iter().cloned().map(TorusScalar::from).collect());
    let mut fwd = start.clone();
    let mut back = start.clone();
    for n in 0..=1000i64 {
        assert_eq!(coords(&orbit_point(&sys, &x, n).unwrap()), fwd, "n = {n}");
        assert_eq!(coords(&orbit_point(&sys, &x, -n).unwrap()), back, "n = -{n}");
        fwd = iterate(&alpha, &fwd, 1);
        back = iterate(&alpha, &back, -1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_closed_form_random(num in 0i64..97, den in 1i64..97, d in 1usize..5, n in -300i64..300, seed in prop::collection::vec((0i64..50, 1i64..50), 4)) {
        let alpha = frac(&q(num, den));
        let start: Vec<BigRational> = seed.iter().take(d).map(|&(a, b)| frac(&q(a, b))).collect();
        let sys = SystemSpec::WeylAffine { d, alpha: TorusScalar::from(alpha.clone()) };
        let x = SystemPoint::Torus(start.iter().cloned().map(TorusScalar::from).collect());
        prop_assert_eq!(coords(&orbit_point(&sys, &x, n).unwrap()), iterate(&alpha, &start, n));
    }

    /// `n ∈ N(x, B(x, ε))` iff `−n` is, for a rotation.
    #[test]
    fn rotation_returns_are_symmetric(num in 1i64..200, den in 2i64..200, e in 1i64..20) {
        let sys = SystemSpec::Rotation { alpha: TorusScalar::rational(num, den) };
        let x = SystemPoint::Circle(TorusScalar::rational(1, 7));
        let u = Neighborhood::ball(x.clone(), q(e, 41)).unwrap();
        let rs = return_set(&sys, &x, &u, -500, 500).unwrap();
        for n in rs.window.iter() {
            prop_assert!(rs.window.contains(-n));
        }
    }

    #[test]
    fn cyclic_returns_match_brute_force(n in 1u64..=64, k in -70i64..70, x in 0i64..64, u in prop::collection::vec(0i64..64, 0..10)) {
        let x = x % n as i64;
        let sys = SystemSpec::CyclicRotation { n, k };
        let rs = return_set(&sys, &SystemPoint::Residue(x), &Neighborhood::Subset(u.clone()), -200, 200).unwrap();
        let set: std::collections::BTreeSet<i64> = u.iter().map(|r| r.rem_euclid(n as i64)).collect();
        let expect: Vec<i64> = (-200..=200).filter(|m| set.contains(&(x + m * k).rem_euclid(n as i64))).collect();
        prop_assert_eq!(rs.window.members(), expect.as_slice());
    }

    #[test]
    fn cyclic_ball_uses_the_circle_embedding(n in 1u64..=64, k in 0i64..64, c in 0i64..64, e in 1i64..=10) {
        let c = c % n as i64;
        let sys = SystemSpec::CyclicRotation { n, k };
        let eps = q(e, 20);
        let u = Neighborhood::ball(SystemPoint::Residue(c), eps.clone()).unwrap();
        let rs = return_set(&sys, &SystemPoint::Residue(0), &u, 0, 100).unwrap();
        let expect: Vec<i64> = (0..=100).filter(|m| norm(&q((m * k).rem_euclid(n as i64) - c, n as i64)) < eps).collect();
        prop_assert_eq!(rs.window.members(), expect.as_slice());
    }
}

/// Convergent p/q of a periodic continued fraction `[0; (period)]` with at
/// least `steps` partial quotients.
fn convergent(period: &[u64], steps: usize) -> BigRational {
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for i in 0..steps {
        let a = BigInt::from(period[i % period.len()]);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    BigRational::new(p1, q1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// Inside and Outside verdicts of the fixed-point path agree with a
    /// 300-term convergent evaluated exactly.
    #[test]
    fn guarded_verdicts_are_sound(n in -1_000_000i64..1_000_000, e in 1i64..50, c in 0i64..40, which in 0usize..2) {
        let (alpha, hp) = if which == 0 { (TorusScalar::golden(), convergent(&[1], 300)) } else { (TorusScalar::sqrt2_minus_1(), convergent(&[2], 300)) };
        let sys = SystemSpec::WeylAffine { d: 2, alpha };
        let eps = q(e, 101);
        let center = SystemPoint::Torus(vec![TorusScalar::rational(c, 40), TorusScalar::rational(c, 13)]);
        let p = orbit_point(&sys, &sys.origin(), n).unwrap();
        let verdict = ball_verdict(&sys, &p, &center, &eps).unwrap();
        let nn = BigInt::from(n);
        let c2 = BigRational::from_integer(&nn * (&nn - 1) / 2);
        let d1 = norm(&(BigRational::from_integer(nn.clone()) * &hp - q(c, 40)));
        let d2 = norm(&(c2 * &hp - q(c, 13)));
        let dist = if d1 > d2 { d1 } else { d2 };
        match verdict {
            Verdict::Inside => prop_assert!(dist < eps),
            Verdict::Outside => prop_assert!(dist >= eps),
            Verdict::Boundary => {}
        }
    }
}

#[test]
fn distances_are_symmetric_and_bounded() {
    let sys = SystemSpec::Rotation { alpha: TorusScalar::golden() };
    let a = SystemPoint::Circle(TorusScalar::rational(1, 10));
    let b = SystemPoint::Circle(TorusScalar::rational(9, 10));
    let ab = torus_distance(&sys, &a, &b).unwrap();
    assert_eq!(ab, torus_distance(&sys, &b, &a).unwrap());
    assert_eq!(ab.upper(), &q(1, 5));
    assert!(!ab.upper().is_negative());
}

#[test]
fn sturmian_complexity() {
    for (alpha, base) in [(TorusScalar::golden(), q(1, 10)), (TorusScalar::sqrt2_minus_1(), q(1, 3))] {
        let sys = SystemSpec::Sturmian { alpha, base: TorusScalar::from(base) };
        let word = sturmian_code(&sys, 0, 9_999).unwrap();
        let symbols = word.certain().unwrap();
        for len in 1..=12 {
            assert_eq!(factor_count(symbols, len), len + 1);
        }
    }
}
