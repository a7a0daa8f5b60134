//! Walls `H_ξ ∩ V_m` in the face of weights compatible with the
//! multiplicities, and everything built on them: genericity, chamber
//! signatures and the walls crossed by a straight segment.
//!
//! A wall for `ξ = (d', r', m')` is the affine equation
//!
//! ```text
//! Σ_p Σ_i (r'·m_i(p) − r·m'_i(p)) · α_i(p) = r·d' − r'·d
//! ```
//!
//! in the compressed weight coordinates. All coefficients are integers, so the
//! range of the left-hand side over the closure of `V_m` has integer
//! endpoints and feasibility is decided with integer comparisons.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::model::{weighted_sum, ParabolicData, SubType, Weights};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    /// Representative subbundle type (the smallest contributor).
    pub xi: SubType,
    pub coeffs: Vec<Vec<i64>>,
    pub rhs: i64,
    /// `H_ξ ∩ V_m ≠ ∅`.
    pub feasible: bool,
    /// `V_m ⊆ H_ξ`.
    pub degenerate: bool,
    /// Every subbundle type defining this hyperplane, sorted.
    pub contributors: Vec<SubType>,
}

/// A hyperplane up to scaling: primitive integer vector, first nonzero
/// coefficient positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperplaneKey {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

impl HyperplaneKey {
    pub fn new(coeffs: &[Vec<i64>], rhs: i64) -> Self {
        let flat: Vec<i64> = coeffs.iter().flatten().copied().collect();
        let g = flat.iter().fold(rhs.abs(), |g, c| g.gcd(c));
        if g == 0 {
            return Self { coeffs: flat, rhs };
        }
        let lead = flat.iter().copied().find(|c| *c != 0).unwrap_or(rhs);
        let s = if lead < 0 { -g } else { g };
        Self {
            coeffs: flat.iter().map(|c| c / s).collect(),
            rhs: rhs / s,
        }
    }
}

impl Wall {
    /// `Σ c·α − rhs`; zero exactly on the hyperplane.
    pub fn residual(&self, w: &Weights) -> Rational {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(&w.0)
            .flat_map(|(c, a)| c.iter().zip(a))
            .map(|(&c, x)| x.scale(c))
            .sum();
        lhs - Rational::integer(self.rhs)
    }

    pub fn contains(&self, w: &Weights) -> bool {
        self.residual(w).is_zero()
    }

    pub fn key(&self) -> HyperplaneKey {
        HyperplaneKey::new(&self.coeffs, self.rhs)
    }
}

/// Wall coefficients `c_i(p) = r'·m_i(p) − r·m'_i(p)`.
fn wall_coeffs(data: &ParabolicData, r_prime: u32, m_prime: &[Vec<u32>]) -> Vec<Vec<i64>> {
    let r = i64::from(data.rank());
    let rp = i64::from(r_prime);
    data.points()
        .iter()
        .zip(m_prime)
        .map(|(p, mp)| {
            p.mults
                .iter()
                .zip(mp)
                .map(|(&m, &mq)| rp * i64::from(m) - r * i64::from(mq))
                .collect()
        })
        .collect()
}

fn wall_rhs(data: &ParabolicData, d_prime: i64, r_prime: u32) -> i64 {
    i64::from(data.rank()) * d_prime - i64::from(r_prime) * data.degree()
}

/// Range of a per-point linear functional over `0 ≤ a_1 < … < a_κ < 1`.
///
/// The closure is a simplex with vertices `v_j` (last `j` coordinates equal
/// to 1, `j = 0..=κ`). An extreme value is attained on the half-open face iff
/// the extremal vertex set contains `v_0..v_{κ-1}`, the vertices of the
/// facet `a_1 = 0` whose relative interior belongs to the face.
#[derive(Debug, Clone)]
struct PointRange {
    vertex_values: Vec<i64>,
    lo: i64,
    hi: i64,
    lo_attained: bool,
    hi_attained: bool,
}

impl PointRange {
    fn new(c: &[i64]) -> Self {
        let k = c.len();
        let mut vertex_values = Vec::with_capacity(k + 1);
        let mut acc = 0;
        vertex_values.push(0);
        for ci in c.iter().rev() {
            acc += ci;
            vertex_values.push(acc);
        }
        let lo = *vertex_values.iter().min().unwrap();
        let hi = *vertex_values.iter().max().unwrap();
        let lo_attained = vertex_values[..k].iter().all(|&v| v == lo);
        let hi_attained = vertex_values[..k].iter().all(|&v| v == hi);
        Self {
            vertex_values,
            lo,
            hi,
            lo_attained,
            hi_attained,
        }
    }

    /// Barycenter of the vertices with value `target`.
    fn extremal_point(&self, target: i64) -> Vec<Rational> {
        let k = self.vertex_values.len() - 1;
        let picked: Vec<usize> = (0..=k).filter(|&j| self.vertex_values[j] == target).collect();
        let count = picked.len() as i64;
        (1..=k)
            .map(|i| {
                // v_j has coordinate i equal to 1 iff i > k - j
                let ones = picked.iter().filter(|&&j| i + j > k).count() as i64;
                Rational::new(ones, count).unwrap()
            })
            .collect()
    }
}

/// Interior reference point `a_i = i/(κ+1)`.
fn center(kappa: usize) -> Vec<Rational> {
    (1..=kappa)
        .map(|i| Rational::new(i as i64, kappa as i64 + 1).unwrap())
        .collect()
}

#[derive(Debug, Clone)]
struct FaceRange {
    points: Vec<PointRange>,
    lo: i64,
    hi: i64,
    lo_attained: bool,
    hi_attained: bool,
}

impl FaceRange {
    fn new(coeffs: &[Vec<i64>]) -> Self {
        let points: Vec<PointRange> = coeffs.iter().map(|c| PointRange::new(c)).collect();
        Self {
            lo: points.iter().map(|p| p.lo).sum(),
            hi: points.iter().map(|p| p.hi).sum(),
            lo_attained: points.iter().all(|p| p.lo_attained),
            hi_attained: points.iter().all(|p| p.hi_attained),
            points,
        }
    }

    fn contains(&self, rhs: i64) -> bool {
        (self.lo < rhs && rhs < self.hi)
            || (rhs == self.lo && self.lo_attained)
            || (rhs == self.hi && self.hi_attained)
    }
}

pub fn wall_of(data: &ParabolicData, xi: &SubType) -> Result<Wall> {
    xi.validate_for(data)?;
    let coeffs = wall_coeffs(data, xi.r_prime, &xi.m_prime);
    let rhs = wall_rhs(data, xi.d_prime, xi.r_prime);
    let degenerate = rhs == 0 && coeffs.iter().flatten().all(|&c| c == 0);
    let feasible = FaceRange::new(&coeffs).contains(rhs);
    Ok(Wall {
        xi: xi.clone(),
        coeffs,
        rhs,
        feasible,
        degenerate,
        contributors: vec![xi.clone()],
    })
}

fn in_face(data: &ParabolicData, w: &Weights) -> bool {
    data.with_weights(w).is_ok()
}

/// An exact point of `H_ξ ∩ V_m`, or `None` when the wall is infeasible.
pub fn wall_point(data: &ParabolicData, wall: &Wall) -> Option<Weights> {
    let range = FaceRange::new(&wall.coeffs);
    if !range.contains(wall.rhs) {
        return None;
    }
    let centers: Vec<Vec<Rational>> = data.points().iter().map(|p| center(p.kappa())).collect();
    let center_w = Weights(centers.clone());
    let f = |w: &Weights| wall.residual(w) + Rational::integer(wall.rhs);
    let rhs = Rational::integer(wall.rhs);

    let point = if range.lo == range.hi {
        center_w
    } else if wall.rhs == range.lo {
        Weights(range.points.iter().map(|p| p.extremal_point(p.lo)).collect())
    } else if wall.rhs == range.hi {
        Weights(range.points.iter().map(|p| p.extremal_point(p.hi)).collect())
    } else {
        // Pull each extremal barycenter slightly toward the center so it is
        // inside the face, then interpolate to the wall.
        let f_center = f(&center_w);
        let towards = |ext: i64| -> Weights {
            let ext_w = Weights(range.points.iter().map(|p| p.extremal_point(if ext == range.lo { p.lo } else { p.hi })).collect());
            let gap = (&rhs - Rational::integer(ext)).abs();
            let spread = (&f_center - Rational::integer(ext)).abs();
            let half = Rational::new(1, 2).unwrap();
            let delta = if spread.is_zero() {
                half.clone()
            } else {
                core::cmp::min(half, gap / spread.scale(2))
            };
            ext_w.lerp(&center_w, &delta)
        };
        let low = towards(range.lo);
        let high = towards(range.hi);
        let (fl, fh) = (f(&low), f(&high));
        let t = (&rhs - &fl) / (fh - fl);
        low.lerp(&high, &t)
    };
    if wall.contains(&point) && in_face(data, &point) {
        Some(point)
    } else {
        None
    }
}

/// All `m'` at one point with `0 ≤ m'_i ≤ m_i` and `Σ m'_i = total`.
pub fn bounded_compositions(bounds: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn go(bounds: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match bounds.split_first() {
            None => {
                if left == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&b, rest)) => {
                let room: u32 = rest.iter().sum();
                let lo = left.saturating_sub(room);
                for x in lo..=b.min(left) {
                    cur.push(x);
                    go(rest, left - x, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(bounds, total, &mut Vec::with_capacity(bounds.len()), &mut out);
    out
}

/// Visit every index tuple of the cartesian product of lists of the given
/// lengths until `f` returns `false`.
fn for_each_index(lens: &[usize], mut f: impl FnMut(&[usize]) -> bool) {
    if lens.iter().any(|&l| l == 0) {
        return;
    }
    let mut idx = vec![0usize; lens.len()];
    loop {
        if !f(&idx) {
            return;
        }
        let mut k = lens.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lens[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Per point, the admissible `m'` for subbundle rank `r_prime`.
fn shapes_for_rank(data: &ParabolicData, r_prime: u32) -> Vec<Vec<Vec<u32>>> {
    data.points()
        .iter()
        .map(|p| bounded_compositions(&p.mults, r_prime))
        .collect()
}

fn pick(shapes: &[Vec<Vec<u32>>], idx: &[usize]) -> Vec<Vec<u32>> {
    shapes.iter().zip(idx).map(|(s, &i)| s[i].clone()).collect()
}

/// Integers `d'` worth testing for rank `r'`: slope equality with weight
/// contributions in `[0, r·n)` and `[0, r'·n)` gives
/// `r'd/r − r'n < d' < r'd/r + r'n`, widened by one on each side.
fn d_prime_window(data: &ParabolicData, r_prime: u32) -> (i64, i64) {
    let r = i64::from(data.rank());
    let rp = i64::from(r_prime);
    let n = data.num_points() as i64;
    let num = rp * data.degree();
    (Integer::div_floor(&num, &r) - rp * n - 1, Integer::div_ceil(&num, &r) + rp * n + 1)
}

/// Every feasible, non-degenerate wall, deduplicated by hyperplane (so a type
/// and its complement, or proportional types, give one entry) and sorted by
/// hyperplane key.
pub fn enumerate_walls(data: &ParabolicData) -> Vec<Wall> {
    let mut groups: BTreeMap<HyperplaneKey, Wall> = BTreeMap::new();
    for r_prime in 1..data.rank() {
        let shapes = shapes_for_rank(data, r_prime);
        let lens: Vec<usize> = shapes.iter().map(Vec::len).collect();
        let (lo, hi) = d_prime_window(data, r_prime);
        for_each_index(&lens, |idx| {
            let m_prime = pick(&shapes, idx);
            let coeffs = wall_coeffs(data, r_prime, &m_prime);
            if coeffs.iter().flatten().all(|&c| c == 0) {
                return true;
            }
            let range = FaceRange::new(&coeffs);
            for d_prime in lo..=hi {
                let rhs = wall_rhs(data, d_prime, r_prime);
                if !range.contains(rhs) {
                    continue;
                }
                let xi = SubType::new(d_prime, r_prime, m_prime.clone());
                let key = HyperplaneKey::new(&coeffs, rhs);
                groups
                    .entry(key)
                    .and_modify(|w| w.contributors.push(xi.clone()))
                    .or_insert_with(|| Wall {
                        xi: xi.clone(),
                        coeffs: coeffs.clone(),
                        rhs,
                        feasible: true,
                        degenerate: false,
                        contributors: vec![xi],
                    });
            }
            true
        });
    }
    groups
        .into_values()
        .map(|mut w| {
            w.contributors.sort();
            if w.contributors[0] != w.xi {
                let xi = w.contributors[0].clone();
                w.coeffs = wall_coeffs(data, xi.r_prime, &xi.m_prime);
                w.rhs = wall_rhs(data, xi.d_prime, xi.r_prime);
                w.xi = xi;
            }
            w
        })
        .collect()
}

/// Every subbundle type whose hyperplane passes through `w` (degenerate
/// ones included). `d'` is solved for directly: `d' = r'·μ − Σ m'·w`.
pub fn walls_through(data: &ParabolicData, w: &Weights) -> Vec<SubType> {
    let mut out = Vec::new();
    visit_walls_through(data, w, |xi| {
        out.push(xi);
        true
    });
    out
}

/// Whether `w` lies on any hyperplane `H_ξ`; stops at the first one.
pub fn on_some_wall(data: &ParabolicData, w: &Weights) -> bool {
    let mut hit = false;
    visit_walls_through(data, w, |_| {
        hit = true;
        false
    });
    hit
}

/// Weights scaled to integers over a common denominator `D`, when small
/// enough for `i128` sums.
fn integer_scaled(w: &Weights) -> Option<(i128, Vec<Vec<i128>>)> {
    let mut den = BigInt::one();
    for x in w.0.iter().flatten() {
        den = den.lcm(x.denom());
    }
    if den.bits() > 48 {
        return None;
    }
    let nums = w
        .0
        .iter()
        .map(|a| {
            a.iter()
                .map(|x| (x.numer() * (&den / x.denom())).to_i128())
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some((den.to_i128()?, nums))
}

fn visit_walls_through(data: &ParabolicData, w: &Weights, mut f: impl FnMut(SubType) -> bool) {
    let scaled = integer_scaled(w);
    let r = data.rank();
    for r_prime in 1..r {
        let shapes = shapes_for_rank(data, r_prime);
        let lens: Vec<usize> = shapes.iter().map(Vec::len).collect();
        let mut go_on = true;
        match &scaled {
            Some((den, nums)) => {
                // r·D·d' = r'·(d·D + Σ m·N) − r·Σ m'·N
                let total: i128 = i128::from(data.degree()) * den
                    + data
                        .points()
                        .iter()
                        .zip(nums)
                        .flat_map(|(p, n)| p.mults.iter().zip(n))
                        .map(|(&m, x)| i128::from(m) * x)
                        .sum::<i128>();
                let target = i128::from(r_prime) * total;
                let modulus = i128::from(r) * den;
                let sums: Vec<Vec<i128>> = shapes
                    .iter()
                    .zip(nums)
                    .map(|(list, n)| {
                        list.iter()
                            .map(|mp| mp.iter().zip(n).map(|(&m, x)| i128::from(m) * x).sum())
                            .collect()
                    })
                    .collect();
                for_each_index(&lens, |idx| {
                    let sub: i128 = sums.iter().zip(idx).map(|(s, &i)| s[i]).sum();
                    let num = target - i128::from(r) * sub;
                    if num % modulus != 0 {
                        return true;
                    }
                    match i64::try_from(num / modulus) {
                        Ok(dp) => go_on = f(SubType::new(dp, r_prime, pick(&shapes, idx))),
                        Err(_) => {}
                    }
                    go_on
                });
            }
            None => {
                let mu = (Rational::integer(data.degree()) + weighted_sum(&data.mults(), w))
                    / Rational::from(r);
                let sums: Vec<Vec<Rational>> = shapes
                    .iter()
                    .zip(&w.0)
                    .map(|(list, a)| {
                        list.iter()
                            .map(|mp| mp.iter().zip(a).map(|(&m, x)| x.scale(m.into())).sum())
                            .collect()
                    })
                    .collect();
                let target = mu.scale(r_prime.into());
                for_each_index(&lens, |idx| {
                    let mut d_prime = target.clone();
                    for (s, &i) in sums.iter().zip(idx) {
                        d_prime -= &s[i];
                    }
                    if let Some(dp) = d_prime.to_i64() {
                        go_on = f(SubType::new(dp, r_prime, pick(&shapes, idx)));
                    }
                    go_on
                });
            }
        }
        if !go_on {
            return;
        }
    }
}

/// Generic-face criterion (a): `gcd{d, r, m_i(p)} = 1`. Including `r` only
/// matters when there are no marked points.
pub fn gcd_criterion(data: &ParabolicData) -> bool {
    let g = data
        .points()
        .iter()
        .flat_map(|p| p.mults.iter())
        .fold(data.degree().abs().gcd(&i64::from(data.rank())), |g, &m| {
            g.gcd(&i64::from(m))
        });
    g == 1
}

/// Generic-face criterion (b), by scanning for a type with `V_m ⊆ H_ξ`.
pub fn degenerate_wall_exists(data: &ParabolicData) -> bool {
    let r = i64::from(data.rank());
    for r_prime in 1..data.rank() {
        let num = i64::from(r_prime) * data.degree();
        if num % r != 0 {
            continue;
        }
        let d_prime = num / r;
        let shapes = shapes_for_rank(data, r_prime);
        let lens: Vec<usize> = shapes.iter().map(Vec::len).collect();
        let mut found = false;
        for_each_index(&lens, |idx| {
            let xi = SubType::new(d_prime, r_prime, pick(&shapes, idx));
            found = wall_of(data, &xi).map(|w| w.degenerate).unwrap_or(false);
            !found
        });
        if found {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericFace {
    pub generic: bool,
    /// An explicit generic weight when `generic` holds.
    pub witness: Option<Weights>,
}

/// Point on a moment curve inside `V_m`: coordinate `j` (flattened) of the
/// block `i` at a point with `κ` blocks is `(i − 1/2 + t^(j+1)/4) / κ`.
/// Any non-degenerate wall meets the curve for finitely many `t`.
fn moment_weight(data: &ParabolicData, t: &Rational) -> Weights {
    let quarter = Rational::new(1, 4).unwrap();
    let half = Rational::new(1, 2).unwrap();
    let mut j = 0u32;
    Weights(
        data.points()
            .iter()
            .map(|p| {
                let k = Rational::from(p.kappa() as u32);
                (0..p.kappa())
                    .map(|i| {
                        j += 1;
                        (Rational::from(i as u32) + &half + t.pow(j) * &quarter) / &k
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Searches `t = 1/2, 1/3, …` for a generic point of the moment curve.
pub fn find_generic_weight(data: &ParabolicData) -> Result<Weights> {
    for k in 2..10_000u64 {
        let w = moment_weight(data, &Rational::unit_fraction(k));
        if !on_some_wall(data, &w) {
            return Ok(w);
        }
    }
    Err(Error::internal("no generic weight found on the moment curve"))
}

/// Whether the face `V_m` contains a generic weight, computed by both the gcd
/// criterion and the degenerate-wall scan; disagreement is an internal error.
pub fn has_generic_weight(data: &ParabolicData) -> Result<GenericFace> {
    let by_gcd = gcd_criterion(data);
    let by_walls = !degenerate_wall_exists(data);
    if by_gcd != by_walls {
        return Err(Error::internal(format!(
            "gcd criterion says {by_gcd} but degenerate-wall scan says {by_walls}"
        )));
    }
    if !by_gcd {
        return Ok(GenericFace {
            generic: false,
            witness: None,
        });
    }
    let witness = find_generic_weight(data)?;
    Ok(GenericFace {
        generic: true,
        witness: Some(witness),
    })
}

/// Whether the data's own weights avoid every wall.
pub fn is_generic(data: &ParabolicData) -> Result<bool> {
    let w = data.weights()?;
    Ok(!on_some_wall(data, &w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        match x.signum() {
            Ordering::Less => Sign::Minus,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }
}

/// Signs of `functional − rhs` over [`enumerate_walls`], in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberSignature(pub Vec<Sign>);

impl ChamberSignature {
    pub fn is_generic(&self) -> bool {
        !self.0.contains(&Sign::Zero)
    }
}

pub fn signature_of(walls: &[Wall], w: &Weights) -> ChamberSignature {
    ChamberSignature(walls.iter().map(|wall| Sign::of(&wall.residual(w))).collect())
}

pub fn chamber_signature(data: &ParabolicData) -> Result<ChamberSignature> {
    let w = data.weights()?;
    Ok(signature_of(&enumerate_walls(data), &w))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub wall: Wall,
    /// Parameter on `t ↦ (1 − t)·α + t·β`, strictly inside `(0, 1)`.
    pub t: Rational,
}

/// Walls whose functional changes sign along the segment from `alpha` to
/// `beta`, sorted by `t` and then by wall order. Both endpoints must be
/// generic weights compatible with the data's multiplicities.
pub fn walls_on_segment(
    data: &ParabolicData,
    alpha: &Weights,
    beta: &Weights,
) -> Result<Vec<Crossing>> {
    let walls = enumerate_walls(data);
    crossings_among(data, &walls, alpha, beta)
}

/// [`walls_on_segment`] against a precomputed wall list.
pub fn crossings_among(
    data: &ParabolicData,
    walls: &[Wall],
    alpha: &Weights,
    beta: &Weights,
) -> Result<Vec<Crossing>> {
    for (name, w) in [("start", alpha), ("end", beta)] {
        data.with_weights(w)
            .map_err(|e| Error::precondition(format!("{name} weight not in the face: {e}")))?;
        if on_some_wall(data, w) {
            return Err(Error::NonGeneric(format!("{name} weight lies on a wall")));
        }
    }
    let mut out: Vec<(Rational, usize)> = Vec::new();
    for (i, wall) in walls.iter().enumerate() {
        let a = wall.residual(alpha);
        let b = wall.residual(beta);
        if a.is_zero() && b.is_zero() {
            return Err(Error::precondition("segment lies inside a wall"));
        }
        if Sign::of(&a) != Sign::of(&b) {
            let t = &a / (&a - &b);
            out.push((t, i));
        }
    }
    out.sort();
    Ok(out
        .into_iter()
        .map(|(t, i)| Crossing {
            wall: walls[i].clone(),
            t,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceOrder {
    /// The first system refines the second (the second is a proper face).
    Refines,
    Coarsens,
    Equal,
    Incomparable,
}

fn cut_set(m: &[u32]) -> Vec<u32> {
    let mut acc = 0;
    m.iter()
        .map(|&x| {
            acc += x;
            acc
        })
        .collect()
}

/// Compare two multiplicity systems by successive refinement, point by point.
pub fn face_order(m: &[Vec<u32>], other: &[Vec<u32>]) -> FaceOrder {
    if m.len() != other.len() {
        return FaceOrder::Incomparable;
    }
    let (mut finer, mut coarser) = (true, true);
    for (a, b) in m.iter().zip(other) {
        if a.iter().sum::<u32>() != b.iter().sum::<u32>() {
            return FaceOrder::Incomparable;
        }
        let (ca, cb) = (cut_set(a), cut_set(b));
        finer &= cb.iter().all(|x| ca.contains(x));
        coarser &= ca.iter().all(|x| cb.contains(x));
    }
    match (finer, coarser) {
        (true, true) => FaceOrder::Equal,
        (true, false) => FaceOrder::Refines,
        (false, true) => FaceOrder::Coarsens,
        (false, false) => FaceOrder::Incomparable,
    }
}
