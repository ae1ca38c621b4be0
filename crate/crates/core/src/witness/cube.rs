use crate::error::{Error, Result};
use crate::systems::{orbit_point, SystemPoint, SystemSpec};

/// The vertices `T^{n·ε} x` of a dynamical parallelepiped, `ε ∈ {0,1}^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubePoint {
    pub d: usize,
    pub n: Vec<i64>,
    /// Indexed by the mask of `ε`; bit `i` is `ε_{i+1}`. So for `d = 2` the
    /// order is `00, 10, 01, 11`.
    pub entries: Vec<SystemPoint>,
}

impl CubePoint {
    pub fn vertex(&self, eps: &[bool]) -> Option<&SystemPoint> {
        if eps.len() != self.d {
            return None;
        }
        let mask = eps.iter().enumerate().fold(0usize, |m, (i, &b)| m | (usize::from(b) << i));
        self.entries.get(mask)
    }
}

/// `n · ε = Σ n_i ε_i` for the vertex with the given mask.
pub fn dot(n: &[i64], mask: usize) -> Result<i64> {
    n.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).try_fold(0i64, |acc, (_, &v)| {
        acc.checked_add(v).ok_or(Error::Overflow("forming n · ε"))
    })
}

pub fn cube_sample(sys: &SystemSpec, x: &SystemPoint, d: usize, n: &[i64]) -> Result<CubePoint> {
    if n.len() != d {
        return Err(Error::InvalidParameter(format!("need {d} cube directions, got {}", n.len())));
    }
    if d >= 24 {
        return Err(Error::InvalidParameter("cube dimension too large".into()));
    }
    let entries = (0..1usize << d).map(|mask| orbit_point(sys, x, dot(n, mask)?)).collect::<Result<_>>()?;
    Ok(CubePoint { d, n: n.to_vec(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::TorusScalar;

    fn q(a: i64, b: i64) -> TorusScalar {
        TorusScalar::rational(a, b)
    }

    #[test]
    fn rotation_square() {
        let sys = SystemSpec::Rotation { alpha: q(1, 4) };
        let c = cube_sample(&sys, &SystemPoint::Circle(q(0, 1)), 2, &[1, 2]).unwrap();
        let expect: Vec<SystemPoint> = [q(0, 1), q(1, 4), q(1, 2), q(3, 4)].into_iter().map(SystemPoint::Circle).collect();
        assert_eq!(c.entries, expect);
        assert_eq!(c.vertex(&[true, false]), Some(&SystemPoint::Circle(q(1, 4))));
    }

    #[test]
    fn zero_directions_give_the_diagonal() {
        let sys = SystemSpec::Rotation { alpha: TorusScalar::golden() };
        let x = SystemPoint::Circle(q(1, 3));
        let c = cube_sample(&sys, &x, 3, &[0, 0, 0]).unwrap();
        // a golden rotation yields fixed-point values, so compare vertices to each other
        assert!(c.entries.iter().all(|e| *e == c.entries[0]));
    }

    #[test]
    fn weyl_edge() {
        let sys = SystemSpec::WeylAffine { d: 2, alpha: q(1, 4) };
        let c = cube_sample(&sys, &sys.origin(), 1, &[4]).unwrap();
        assert_eq!(c.entries[1], SystemPoint::Torus(vec![q(0, 1), q(1, 2)]));
    }
}
