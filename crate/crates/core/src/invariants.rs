//! Closed-form numerical invariants: dimensions, wall codimensions, flip
//! exponents, slope gaps and the twisting window used for `h¹` vanishing.

use alloc::format;
use core::cmp::Ordering;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::model::{ParabolicData, SubType, Weights};
use crate::rational::Rational;
use crate::weightspace::{wall_of, walls_through};

/// Dimension of the moduli space of parabolic bundles with the given data.
pub fn moduli_dim(data: &ParabolicData, fixed_det: bool) -> i64 {
    let g = data.genus();
    let r = i64::from(data.rank());
    let flags: i64 = data.points().iter().map(|p| flag_dim(&p.mults)).sum();
    let dim = (g - 1) * r * r + 1 + flags;
    if fixed_det {
        dim - g
    } else {
        dim
    }
}

/// `½(r² − Σ m_i²)`, the dimension of the partial flag variety of type `m`.
pub fn flag_dim(mults: &[u32]) -> i64 {
    let r: i64 = mults.iter().map(|&m| i64::from(m)).sum();
    let sq: i64 = mults.iter().map(|&m| i64::from(m) * i64::from(m)).sum();
    (r * r - sq) / 2
}

/// Codimension of the locus of non-split extensions `0 → E' → E → E'' → 0`
/// of the given type, `dim M − dim M' − dim M''` (non-fixed determinant):
/// `r'r''(2g − 2 + n) − 1 − Σ_p Σ_i m'_i(p)·m''_i(p)`.
pub fn codim_sigma(data: &ParabolicData, xi: &SubType) -> Result<i64> {
    let quot = xi.complement(data)?;
    let rp = i64::from(xi.r_prime);
    let rq = i64::from(quot.r_prime);
    let n = data.num_points() as i64;
    let overlap: i64 = xi
        .m_prime
        .iter()
        .zip(&quot.m_prime)
        .flat_map(|(a, b)| a.iter().zip(b))
        .map(|(&a, &b)| i64::from(a) * i64::from(b))
        .sum();
    Ok(rp * rq * (2 * data.genus() - 2 + n) - 1 - overlap)
}

fn check_on_wall(data: &ParabolicData, xi: &SubType, gamma: &Weights) -> Result<()> {
    data.with_weights(gamma)
        .map_err(|e| Error::precondition(format!("wall weight not in the face: {e}")))?;
    if !wall_of(data, xi)?.contains(gamma) {
        return Err(Error::precondition("weight does not lie on the wall of the given type"));
    }
    Ok(())
}

/// `(χ(Q), χ(Q'))`: lengths of the skyscraper quotients `Hom/ParHom` in the
/// two directions. The sub-bundle carries the levels `γ_i(p)` with
/// multiplicities `m'_i(p)`, the quotient the same levels with `m''_i(p)`;
/// `χ(Q)` counts pairs where the quotient level exceeds the sub level.
pub fn chi_skyscrapers(data: &ParabolicData, xi: &SubType, gamma: &Weights) -> Result<(i64, i64)> {
    check_on_wall(data, xi, gamma)?;
    let quot = xi.complement(data)?;
    let (mut chi_q, mut chi_qp, mut expected) = (0i64, 0i64, 0i64);
    let rr = i64::from(xi.r_prime) * i64::from(quot.r_prime);
    for ((levels, sub), q) in gamma.0.iter().zip(&xi.m_prime).zip(&quot.m_prime) {
        let mut equal = 0i64;
        for (gj, &mj) in levels.iter().zip(sub) {
            for (gi, &mi) in levels.iter().zip(q) {
                let w = i64::from(mi) * i64::from(mj);
                match gi.cmp(gj) {
                    Ordering::Greater => chi_q += w,
                    Ordering::Less => chi_qp += w,
                    Ordering::Equal => equal += w,
                }
            }
        }
        expected += rr - equal;
    }
    if chi_q + chi_qp != expected {
        return Err(Error::internal(format!(
            "skyscraper counts {chi_q} + {chi_qp} differ from {expected}"
        )));
    }
    Ok((chi_q, chi_qp))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipData {
    pub e_alpha: i64,
    pub e_beta: i64,
    pub codim_sigma: i64,
    pub chi_q: i64,
    pub chi_q_prime: i64,
}

/// Projective fiber dimensions of the two contractions at the wall of `xi`,
/// evaluated at `gamma`, which must lie on that hyperplane and no other.
///
/// `e_α = r'd'' − r''d' + r'r''(g−1) + χ(Q) − 1` is `h¹(ParHom(E'', E')) − 1`
/// by Riemann–Roch; `e_β` swaps the roles of sub and quotient.
pub fn flip_exponents(data: &ParabolicData, xi: &SubType, gamma: &Weights) -> Result<FlipData> {
    check_on_wall(data, xi, gamma)?;
    let key = wall_of(data, xi)?.key();
    for other in walls_through(data, gamma) {
        let w = wall_of(data, &other)?;
        if !w.degenerate && w.key() != key {
            return Err(Error::precondition(format!(
                "weight also lies on the wall of ({}, {}, {:?})",
                other.d_prime, other.r_prime, other.m_prime
            )));
        }
    }
    let (chi_q, chi_q_prime) = chi_skyscrapers(data, xi, gamma)?;
    let quot = xi.complement(data)?;
    let (rp, rq) = (i64::from(xi.r_prime), i64::from(quot.r_prime));
    let (dp, dq) = (xi.d_prime, quot.d_prime);
    let base = rp * rq * (data.genus() - 1);
    let e_alpha = rp * dq - rq * dp + base + chi_q - 1;
    let e_beta = rq * dp - rp * dq + base + chi_q_prime - 1;
    let codim = codim_sigma(data, xi)?;
    if e_alpha + e_beta + 1 != codim {
        return Err(Error::internal(format!(
            "flip identity fails: {e_alpha} + {e_beta} + 1 != {codim}"
        )));
    }
    if e_alpha < -1 || e_beta < -1 {
        return Err(Error::internal(format!(
            "negative fiber dimension ({e_alpha}, {e_beta})"
        )));
    }
    Ok(FlipData {
        e_alpha,
        e_beta,
        codim_sigma: codim,
        chi_q,
        chi_q_prime,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Gaps `d/r − d'/r' > 0`.
    Plus,
    /// Gaps `d'/r' − d/r > 0`.
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SlopeGap {
    Finite(Rational),
    /// Infimum over an empty set (rank one).
    Unbounded,
}

impl SlopeGap {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            SlopeGap::Finite(x) => Some(x),
            SlopeGap::Unbounded => None,
        }
    }
}

/// `ε_±(d, r)`: the smallest positive gap on the given side between `d/r`
/// and a slope `d'/r'` with `1 ≤ r' < r`.
pub fn epsilon_pm(d: i64, r: u32, side: Side) -> SlopeGap {
    let mu = Rational::new(d, i64::from(r)).expect("rank is positive");
    let mut best: Option<Rational> = None;
    for rp in 1..i64::from(r) {
        let num = rp * d;
        let (lo, hi) = (Integer::div_floor(&num, &i64::from(r)) - 1, Integer::div_ceil(&num, &i64::from(r)) + 1);
        for dp in lo..=hi {
            let diff = &mu - Rational::new(dp, rp).unwrap();
            let gap = match side {
                Side::Plus => diff,
                Side::Minus => -diff,
            };
            if gap.is_positive() && best.as_ref().map_or(true, |b| &gap < b) {
                best = Some(gap);
            }
        }
    }
    best.map_or(SlopeGap::Unbounded, SlopeGap::Finite)
}

/// `ε(d, r) = min { ε_±(d, k) : k = 1..r }`.
pub fn epsilon(d: i64, r: u32) -> SlopeGap {
    (1..=r)
        .flat_map(|k| [epsilon_pm(d, k, Side::Plus), epsilon_pm(d, k, Side::Minus)])
        .min()
        .unwrap_or(SlopeGap::Unbounded)
}

/// `Σ_p Σ_i m_i(p)·α_i(p) < ε(d, r)/2`, under which ordinary and parabolic
/// stability are sandwiched.
pub fn small_weight_ok(data: &ParabolicData) -> Result<bool> {
    let total = data.pardeg()? - Rational::integer(data.degree());
    Ok(match epsilon(data.degree(), data.rank()) {
        SlopeGap::Unbounded => true,
        SlopeGap::Finite(e) => total < e / Rational::integer(2),
    })
}

/// `h¹` of the extension bundle `(2r' + r'')(g − 1) + r'' + 1`.
pub fn ext_rank(g: i64, r_prime: i64, r_double_prime: i64) -> Result<i64> {
    if g < 2 || r_prime < 1 || r_double_prime < 1 {
        return Err(Error::precondition("requires g ≥ 2, r' ≥ 1, r'' ≥ 1"));
    }
    Ok((2 * r_prime + r_double_prime) * (g - 1) + r_double_prime + 1)
}

/// `χ(ℓ, h) = d + r(1 − g − h) − Σ_p Σ_{i < ℓ_p} m_i(p)`, with `ℓ_p` 1-based
/// in `[1, κ_p + 1]`.
pub fn chi_twist(data: &ParabolicData, ell: &[usize], h: i64) -> Result<i64> {
    if ell.len() != data.num_points() {
        return Err(Error::precondition(format!(
            "{} indices for {} points",
            ell.len(),
            data.num_points()
        )));
    }
    let mut cut = 0i64;
    for (p, &l) in data.points().iter().zip(ell) {
        if l < 1 || l > p.kappa() + 1 {
            return Err(Error::precondition(format!(
                "index {l} at {} outside [1, {}]",
                p.id,
                p.kappa() + 1
            )));
        }
        cut += p.mults[..l - 1].iter().map(|&m| i64::from(m)).sum::<i64>();
    }
    let r = i64::from(data.rank());
    Ok(data.degree() + r * (1 - data.genus() - h) - cut)
}

/// Largest integer `h` with `h < d/r − r·n − (2g − 2)`.
pub fn h1_twist_degree_window(data: &ParabolicData) -> i64 {
    let r = i64::from(data.rank());
    let n = data.num_points() as i64;
    // d/r − rn − (2g−2) = (d − r²n − r(2g−2)) / r
    let num = data.degree() - r * r * n - r * (2 * data.genus() - 2);
    Integer::div_ceil(&num, &r) - 1
}
