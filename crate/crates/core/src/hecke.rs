//! Chains of wall crossings relating full-flag moduli at degrees `d` and
//! `d − 1` over one marked point: small weights, a shift past the first
//! level, then a straight line to small weights at the new degree.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::invariants::{epsilon, flag_dim, flip_exponents, small_weight_ok, FlipData, SlopeGap};
use crate::model::{MarkedPoint, ParabolicData, Weights};
use crate::rational::Rational;
use crate::shift::{shift, ShiftAmount};
use crate::weightspace::{on_some_wall, walls_on_segment, Wall};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeCrossing {
    pub wall: Wall,
    /// Position on the segment from the shifted weights to the end weights.
    pub t: Rational,
    /// The crossing point itself.
    pub gamma: Weights,
    pub flip: FlipData,
    /// A generic weight in the chamber entered by this crossing.
    pub witness: Weights,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeChain {
    /// Degree `d`, full flag, small generic weights.
    pub start: ParabolicData,
    pub eta: Rational,
    /// `start` shifted by `eta`, of degree `d − 1`.
    pub shifted: ParabolicData,
    /// Degree `d − 1`, full flag, small generic weights.
    pub end: ParabolicData,
    pub crossings: Vec<HeckeCrossing>,
    /// Fiber dimension `r(r − 1)/2` of the forgetful map at the start, when
    /// `gcd(r, d) = 1`.
    pub start_fiber_dim: Option<i64>,
    /// Same at the end, when `gcd(r, d − 1) = 1`.
    pub end_fiber_dim: Option<i64>,
}

fn finite_epsilon(d: i64, r: u32) -> Result<Rational> {
    match epsilon(d, r) {
        SlopeGap::Finite(e) => Ok(e),
        SlopeGap::Unbounded => Err(Error::internal("slope gap unbounded for rank ≥ 2")),
    }
}

/// `α_k = k·ε/(r(r+2))`, summing to `ε(r+1)/(2(r+2)) < ε/2`.
fn default_weights(eps: &Rational, r: u32) -> Weights {
    let c = eps / Rational::from(r * (r + 2));
    Weights(alloc::vec![(1..=r).map(|k| c.scale(k.into())).collect()])
}

/// `α_k = c·(k + t^k)` with `c = ε/(r(r+2))` and `t ≤ 1/2`: still strictly
/// increasing and below `ε/2` in total, but off any given wall for all but
/// finitely many `t`.
fn perturbed_weights(eps: &Rational, r: u32, t: &Rational) -> Weights {
    let c = eps / Rational::from(r * (r + 2));
    Weights(alloc::vec![(1..=r)
        .map(|k| &c * (Rational::from(k) + t.pow(k)))
        .collect()])
}

fn candidates(eps: &Rational, r: u32) -> impl Iterator<Item = Weights> + '_ {
    let base = default_weights(eps, r);
    let halved = (0..4u32).map(move |j| {
        let f = Rational::unit_fraction(1 << j);
        Weights(base.0.iter().map(|a| a.iter().map(|x| x * &f).collect()).collect())
    });
    halved.chain((2..2_000u64).map(move |k| perturbed_weights(eps, r, &Rational::unit_fraction(k))))
}

fn generic_in(data: &ParabolicData, w: &Weights) -> bool {
    !on_some_wall(data, w)
}

/// Crossings of the segment, provided they occur at distinct `t` and each
/// crossing point lies on a single hyperplane; `None` otherwise.
fn simple_crossings(
    data: &ParabolicData,
    from: &Weights,
    to: &Weights,
) -> Result<Option<Vec<HeckeCrossing>>> {
    let found = walls_on_segment(data, from, to)?;
    if found.windows(2).any(|p| p[0].t == p[1].t) {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(found.len());
    for (i, c) in found.iter().enumerate() {
        let gamma = from.lerp(to, &c.t);
        let flip = match flip_exponents(data, &c.wall.xi, &gamma) {
            Ok(f) => f,
            Err(Error::Precondition(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let witness = match found.get(i + 1) {
            Some(next) => from.lerp(to, &Rational::midpoint(&c.t, &next.t)),
            None => to.clone(),
        };
        if !generic_in(data, &witness) {
            return Err(Error::internal("chamber witness lies on a wall"));
        }
        out.push(HeckeCrossing {
            wall: c.wall.clone(),
            t: c.t.clone(),
            gamma,
            flip,
            witness,
        });
    }
    Ok(Some(out))
}

pub fn build_chain(g: i64, r: u32, d: i64) -> Result<HeckeChain> {
    if g < 2 || r < 2 {
        return Err(Error::precondition("requires g ≥ 2 and r ≥ 2"));
    }
    let point = MarkedPoint::new("p", alloc::vec![1; r as usize]);
    let base = ParabolicData::new(g, r, d, alloc::vec![point])?;

    let eps = finite_epsilon(d, r)?;
    let start_w = candidates(&eps, r)
        .find(|w| generic_in(&base, w))
        .ok_or_else(|| Error::internal("no generic start weight"))?;
    let start = base.with_weights(&start_w)?;

    let a = &start_w.0[0];
    let eta = Rational::midpoint(&a[0], &a[1]);
    let shifted = shift(&start, &ShiftAmount(alloc::vec![eta.clone()]))?;
    let from = shifted.weights()?;

    let eps_end = finite_epsilon(d - 1, r)?;
    let mut chosen = None;
    for w in candidates(&eps_end, r) {
        if !generic_in(&shifted, &w) {
            continue;
        }
        if let Some(crossings) = simple_crossings(&shifted, &from, &w)? {
            chosen = Some((w, crossings));
            break;
        }
    }
    let (end_w, crossings) =
        chosen.ok_or_else(|| Error::internal("no end weight with simple crossings"))?;
    let end = shifted.with_weights(&end_w)?;

    for (name, data) in [("start", &start), ("end", &end)] {
        if !small_weight_ok(data)? {
            return Err(Error::internal(format!("{name} weights exceed the slope-gap bound")));
        }
    }

    let full = flag_dim(&start.points()[0].mults);
    let ri = i64::from(r);
    Ok(HeckeChain {
        start_fiber_dim: (ri.gcd(&d) == 1).then_some(full),
        end_fiber_dim: (ri.gcd(&(d - 1)) == 1).then_some(full),
        start,
        eta,
        shifted,
        end,
        crossings,
    })
}

/// Recomputes the crossings between the stored endpoints and compares them
/// with the stored list.
pub fn replay_chain(chain: &HeckeChain) -> Result<bool> {
    let from = chain.shifted.weights()?;
    let to = chain.end.weights()?;
    let again = walls_on_segment(&chain.shifted, &from, &to)?;
    Ok(again.len() == chain.crossings.len()
        && again
            .iter()
            .zip(&chain.crossings)
            .all(|(a, b)| a.wall == b.wall && a.t == b.t))
}
