//! Shifting `E_*[η]_x = E_{x+η}` of a weighted filtration, its effect on the
//! numerical data and on walls, and the gluing of boundary faces of the
//! extended weight space.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{MarkedPoint, ParabolicData, SubType};
use crate::rational::Rational;

/// One shift amount per marked point, each in `[0, 1]`, in point order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShiftAmount(pub Vec<Rational>);

impl ShiftAmount {
    pub fn uniform(data: &ParabolicData, eta: Rational) -> Self {
        ShiftAmount(alloc::vec![eta; data.num_points()])
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    fn check(&self, data: &ParabolicData) -> Result<()> {
        if self.0.len() != data.num_points() {
            return Err(Error::precondition(format!(
                "{} shift amounts for {} points",
                self.0.len(),
                data.num_points()
            )));
        }
        for (p, eta) in data.points().iter().zip(&self.0) {
            if eta.is_negative() || eta > &Rational::one() {
                return Err(Error::precondition(format!("shift at {} outside [0, 1]: {eta}", p.id)));
            }
        }
        Ok(())
    }
}

/// `i = #{k : α_k < η}`; a level equal to `η` is not counted and lands on 0.
pub fn shift_index(weights: &[Rational], eta: &Rational) -> usize {
    weights.iter().filter(|a| *a < eta).count()
}

fn indices(data: &ParabolicData, eta: &ShiftAmount) -> Result<Vec<usize>> {
    eta.check(data)?;
    let w = data.weights()?;
    Ok(w.0.iter().zip(&eta.0).map(|(a, e)| shift_index(a, e)).collect())
}

/// The shifted data: at each point the levels below `η_p` wrap around to the
/// top, multiplicities rotate with them and the degree drops by the wrapped
/// multiplicities.
pub fn shift(data: &ParabolicData, eta: &ShiftAmount) -> Result<ParabolicData> {
    let idx = indices(data, eta)?;
    let w = data.weights()?;
    let mut degree = data.degree();
    let mut points = Vec::with_capacity(data.num_points());
    for (((p, a), e), &i) in data.points().iter().zip(&w.0).zip(&eta.0).zip(&idx) {
        degree -= p.mults[..i].iter().map(|&m| i64::from(m)).sum::<i64>();
        let mut mults = p.mults[i..].to_vec();
        mults.extend_from_slice(&p.mults[..i]);
        let mut levels: Vec<Rational> = a[i..].iter().map(|x| x - e).collect();
        levels.extend(a[..i].iter().map(|x| Rational::one() + x - e));
        points.push(MarkedPoint::with_weights(p.id.clone(), mults, levels));
    }
    ParabolicData::new(data.genus(), data.rank(), degree, points)
}

/// Whether shifting by `η1` then `η2` equals shifting by `η1 + η2`.
pub fn shift_compose_check(
    data: &ParabolicData,
    eta1: &ShiftAmount,
    eta2: &ShiftAmount,
) -> Result<bool> {
    let sum = ShiftAmount(eta1.0.iter().zip(&eta2.0).map(|(a, b)| a + b).collect());
    sum.check(data)
        .map_err(|_| Error::precondition("composition needs η1 + η2 ≤ 1 at every point"))?;
    let twice = shift(&shift(data, eta1)?, eta2)?;
    Ok(twice == shift(data, &sum)?)
}

/// Shifted parabolic degree, after checking it equals `pardeg − r·Σ_p η_p`.
pub fn slope_shift_law(data: &ParabolicData, eta: &ShiftAmount) -> Result<Rational> {
    let after = shift(data, eta)?.pardeg()?;
    let expected = data.pardeg()? - eta.total() * Rational::from(data.rank());
    if after != expected {
        return Err(Error::internal(format!(
            "shifted parabolic degree {after} differs from {expected}"
        )));
    }
    Ok(after)
}

/// The type on the shifted data whose wall is the image of the wall of `xi`:
/// `m'` rotates like `m`, and `d'` drops by the wrapped part of `m'`.
pub fn shift_wall_transport(data: &ParabolicData, eta: &ShiftAmount, xi: &SubType) -> Result<SubType> {
    xi.validate_for(data)?;
    let idx = indices(data, eta)?;
    let mut d_prime = xi.d_prime;
    let m_prime = xi
        .m_prime
        .iter()
        .zip(&idx)
        .map(|(mp, &i)| {
            d_prime -= mp[..i].iter().map(|&m| i64::from(m)).sum::<i64>();
            let mut out = mp[i..].to_vec();
            out.extend_from_slice(&mp[..i]);
            out
        })
        .collect();
    Ok(SubType::new(d_prime, xi.r_prime, m_prime))
}

/// `(0, γ_2, …, γ_n) ↦ (γ_2, …, γ_n, 1)` on an expanded single-point weight.
pub fn glue_coordinates(gamma: &[Rational]) -> Result<Vec<Rational>> {
    match gamma.split_first() {
        Some((first, rest)) if first.is_zero() => {
            let mut out = rest.to_vec();
            out.push(Rational::one());
            Ok(out)
        }
        _ => Err(Error::precondition("first coordinate must be 0")),
    }
}

/// Inverse of [`glue_coordinates`].
pub fn unglue_coordinates(gamma: &[Rational]) -> Result<Vec<Rational>> {
    match gamma.split_last() {
        Some((last, rest)) if *last == Rational::one() => {
            let mut out = alloc::vec![Rational::zero()];
            out.extend_from_slice(rest);
            Ok(out)
        }
        _ => Err(Error::precondition("last coordinate must be 1")),
    }
}
