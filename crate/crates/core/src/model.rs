//! Parabolic data: genus, rank, degree and per-point flag multiplicities with
//! optional weights. Also the subbundle type `ξ = (d', r', m')` that indexes a
//! wall, and the expanded (repeated) form of a weight.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result, Violation};
use crate::rational::Rational;

/// A marked point of the divisor. `mults` are the jumps `m_1..m_κ` of the
/// flag; `weights`, when present, are the matching strictly increasing
/// rationals in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPoint {
    pub id: String,
    pub mults: Vec<u32>,
    pub weights: Option<Vec<Rational>>,
}

impl MarkedPoint {
    pub fn new(id: impl Into<String>, mults: Vec<u32>) -> Self {
        Self {
            id: id.into(),
            mults,
            weights: None,
        }
    }

    pub fn with_weights(id: impl Into<String>, mults: Vec<u32>, weights: Vec<Rational>) -> Self {
        Self {
            id: id.into(),
            mults,
            weights: Some(weights),
        }
    }

    pub fn kappa(&self) -> usize {
        self.mults.len()
    }

    pub fn is_full_flag(&self) -> bool {
        self.mults.iter().all(|&m| m == 1)
    }

    pub fn is_trivial_flag(&self) -> bool {
        self.mults.len() == 1
    }

    /// `0, m_1, m_1 + m_2, ..., r`.
    pub fn prefix_sums(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.mults.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &m in &self.mults {
            acc += m;
            out.push(acc);
        }
        out
    }
}

/// Compressed weights, one list per marked point in point order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weights(pub Vec<Vec<Rational>>);

impl Weights {
    pub fn points(&self) -> &[Vec<Rational>] {
        &self.0
    }

    /// `(1 - t)·self + t·other`, coordinatewise.
    pub fn lerp(&self, other: &Weights, t: &Rational) -> Weights {
        let s = Rational::one() - t;
        Weights(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| &s * x + t * y).collect())
                .collect(),
        )
    }

    /// Sum of all weights, each counted once (the full-flag `Σ α_i` of a Hecke chain).
    pub fn total(&self) -> Rational {
        self.0.iter().flatten().sum()
    }
}

/// The universal input record `(g, r, d, points)`. Points are kept sorted by
/// id; every enumeration in the crate follows that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParabolicData {
    genus: i64,
    rank: u32,
    degree: i64,
    points: Vec<MarkedPoint>,
}

/// Full list of violated invariants for the given raw parts; empty when valid.
pub fn validate(genus: i64, rank: u32, points: &[MarkedPoint]) -> Vec<Violation> {
    let mut out = Vec::new();
    if genus < 2 {
        out.push(Violation::new("g", "genus < 2"));
    }
    if rank < 1 {
        out.push(Violation::new("r", "rank must be at least 1"));
    }
    for (i, p) in points.iter().enumerate() {
        if p.id.is_empty() {
            out.push(Violation::new(format!("points[{i}].id"), "empty point id"));
        }
        if points[..i].iter().any(|q| q.id == p.id) {
            out.push(Violation::new(
                format!("points.{}", p.id),
                "duplicate point id",
            ));
        }
        let base = format!("points.{}", p.id);
        if p.mults.is_empty() {
            out.push(Violation::new(
                format!("{base}.mults"),
                "at least one multiplicity block is required",
            ));
        }
        for (k, &m) in p.mults.iter().enumerate() {
            if m == 0 {
                out.push(Violation::new(
                    format!("{base}.mults[{k}]"),
                    "multiplicity must be positive",
                ));
            }
        }
        let total: u64 = p.mults.iter().map(|&m| u64::from(m)).sum();
        if total != u64::from(rank) {
            out.push(Violation::new(
                format!("{base}.mults"),
                format!("multiplicities sum to {total}, expected r = {rank}"),
            ));
        }
        if let Some(w) = &p.weights {
            if w.len() != p.mults.len() {
                out.push(Violation::new(
                    format!("{base}.weights"),
                    format!("{} weights for {} multiplicity blocks", w.len(), p.mults.len()),
                ));
            }
            for (k, x) in w.iter().enumerate() {
                if x.is_negative() || *x >= Rational::one() {
                    out.push(Violation::new(
                        format!("{base}.weights[{k}]"),
                        "weight outside [0,1)",
                    ));
                }
                if k > 0 && w[k - 1] >= *x {
                    out.push(Violation::new(
                        format!("{base}.weights[{k}]"),
                        "weights not strictly increasing",
                    ));
                }
            }
        }
    }
    out
}

impl ParabolicData {
    /// Validates and normalizes (points sorted by id).
    pub fn new(genus: i64, rank: u32, degree: i64, mut points: Vec<MarkedPoint>) -> Result<Self> {
        let violations = validate(genus, rank, &points);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        points.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(Self {
            genus,
            rank,
            degree,
            points,
        })
    }

    /// Trivial flags: no marked points at all.
    pub fn without_points(genus: i64, rank: u32, degree: i64) -> Result<Self> {
        Self::new(genus, rank, degree, Vec::new())
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn points(&self) -> &[MarkedPoint] {
        &self.points
    }

    /// `n = deg D`.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn mults(&self) -> Vec<Vec<u32>> {
        self.points.iter().map(|p| p.mults.clone()).collect()
    }

    pub fn has_weights(&self) -> bool {
        self.points.iter().all(|p| p.weights.is_some())
    }

    pub fn weights(&self) -> Result<Weights> {
        self.points
            .iter()
            .map(|p| p.weights.clone().ok_or(Error::MissingWeights))
            .collect::<Result<Vec<_>>>()
            .map(Weights)
    }

    /// Same data with the given weights (revalidated).
    pub fn with_weights(&self, weights: &Weights) -> Result<Self> {
        if weights.0.len() != self.points.len() {
            return Err(Error::precondition(format!(
                "{} weight lists for {} points",
                weights.0.len(),
                self.points.len()
            )));
        }
        let points = self
            .points
            .iter()
            .zip(&weights.0)
            .map(|(p, w)| MarkedPoint::with_weights(p.id.clone(), p.mults.clone(), w.clone()))
            .collect();
        Self::new(self.genus, self.rank, self.degree, points)
    }

    pub fn without_weights(&self) -> Self {
        let mut out = self.clone();
        for p in &mut out.points {
            p.weights = None;
        }
        out
    }

    pub fn with_degree(&self, degree: i64) -> Self {
        Self { degree, ..self.clone() }
    }

    /// `d + Σ_p Σ_i m_i(p) α_i(p)`.
    pub fn pardeg(&self) -> Result<Rational> {
        let w = self.weights()?;
        Ok(Rational::integer(self.degree) + weighted_sum(&self.mults(), &w))
    }

    /// `pardeg / r`.
    pub fn slope(&self) -> Result<Rational> {
        Ok(self.pardeg()? / Rational::from(self.rank))
    }

    pub fn has_trivial_flags(&self) -> bool {
        self.points.iter().all(MarkedPoint::is_trivial_flag)
    }
}

/// `Σ_p Σ_i m_i(p) w_i(p)`.
pub fn weighted_sum(mults: &[Vec<u32>], w: &Weights) -> Rational {
    mults
        .iter()
        .zip(&w.0)
        .flat_map(|(m, a)| m.iter().zip(a))
        .map(|(&m, x)| x.scale(m.into()))
        .sum()
}

/// Weights in the repeated form: exactly `r` weakly increasing values per point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpandedWeight(pub Vec<Vec<Rational>>);

pub fn expand_weights(data: &ParabolicData) -> Result<ExpandedWeight> {
    let w = data.weights()?;
    Ok(ExpandedWeight(
        data.points()
            .iter()
            .zip(&w.0)
            .map(|(p, a)| {
                p.mults
                    .iter()
                    .zip(a)
                    .flat_map(|(&m, x)| core::iter::repeat(x.clone()).take(m as usize))
                    .collect()
            })
            .collect(),
    ))
}

/// Inverse of [`expand_weights`]: fails unless each multiplicity block is
/// constant and consecutive blocks strictly increase.
pub fn compress_weights(ew: &ExpandedWeight, mults: &[Vec<u32>]) -> Result<Weights> {
    if ew.0.len() != mults.len() {
        return Err(Error::precondition("point count mismatch"));
    }
    let mut out = Vec::with_capacity(mults.len());
    for (pi, (vals, m)) in ew.0.iter().zip(mults).enumerate() {
        let total: usize = m.iter().map(|&x| x as usize).sum();
        if total != vals.len() {
            return Err(Error::precondition(format!(
                "point {pi}: {} expanded values for multiplicities summing to {total}",
                vals.len()
            )));
        }
        let mut levels: Vec<Rational> = Vec::with_capacity(m.len());
        let mut pos = 0;
        for &block in m {
            let level = &vals[pos];
            if vals[pos..pos + block as usize].iter().any(|x| x != level) {
                return Err(Error::precondition(format!(
                    "point {pi}: equality pattern does not match multiplicities"
                )));
            }
            if let Some(prev) = levels.last() {
                if prev >= level {
                    return Err(Error::precondition(format!(
                        "point {pi}: equality pattern does not match multiplicities"
                    )));
                }
            }
            levels.push(level.clone());
            pos += block as usize;
        }
        if levels.iter().any(|x| x.is_negative() || *x >= Rational::one()) {
            return Err(Error::precondition(format!("point {pi}: weight outside [0,1)")));
        }
        out.push(levels);
    }
    Ok(Weights(out))
}

/// A destabilizing-subbundle type `ξ = (d', r', m')`, with `m'` listed per
/// point in point order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubType {
    pub r_prime: u32,
    pub d_prime: i64,
    pub m_prime: Vec<Vec<u32>>,
}

impl SubType {
    pub fn new(d_prime: i64, r_prime: u32, m_prime: Vec<Vec<u32>>) -> Self {
        Self {
            r_prime,
            d_prime,
            m_prime,
        }
    }

    pub fn validate_for(&self, data: &ParabolicData) -> Result<()> {
        let r = data.rank();
        if self.r_prime < 1 || self.r_prime >= r {
            return Err(Error::precondition(format!(
                "subbundle rank {} outside [1, {r})",
                self.r_prime
            )));
        }
        if self.m_prime.len() != data.num_points() {
            return Err(Error::precondition("m' must list every marked point"));
        }
        for (p, mp) in data.points().iter().zip(&self.m_prime) {
            if mp.len() != p.mults.len() {
                return Err(Error::precondition(format!(
                    "m' at {} has {} blocks, expected {}",
                    p.id,
                    mp.len(),
                    p.mults.len()
                )));
            }
            if mp.iter().zip(&p.mults).any(|(a, b)| a > b) {
                return Err(Error::precondition(format!("m' exceeds m at {}", p.id)));
            }
            if mp.iter().sum::<u32>() != self.r_prime {
                return Err(Error::precondition(format!(
                    "m' at {} does not sum to r' = {}",
                    p.id, self.r_prime
                )));
            }
        }
        Ok(())
    }

    /// The induced quotient type `(d - d', r - r', m - m')`.
    pub fn complement(&self, data: &ParabolicData) -> Result<SubType> {
        self.validate_for(data)?;
        Ok(SubType {
            r_prime: data.rank() - self.r_prime,
            d_prime: data.degree() - self.d_prime,
            m_prime: data
                .points()
                .iter()
                .zip(&self.m_prime)
                .map(|(p, mp)| p.mults.iter().zip(mp).map(|(a, b)| a - b).collect())
                .collect(),
        })
    }
}

/// Free-function form of [`SubType::complement`].
pub fn induced_quotient_type(data: &ParabolicData, xi: &SubType) -> Result<SubType> {
    xi.complement(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use alloc::vec;
    use proptest::prelude::*;

    fn pt(id: &str, m: Vec<u32>, w: &[&str]) -> MarkedPoint {
        MarkedPoint::with_weights(id, m, w.iter().map(|s| q(s)).collect())
    }

    #[test]
    fn validate_examples() {
        assert!(ParabolicData::new(2, 2, 1, vec![pt("p", vec![1, 1], &["1/10", "1/5"])]).is_ok());

        let err = ParabolicData::new(1, 2, 1, vec![pt("p", vec![1, 1], &["1/10", "1/5"])])
            .unwrap_err();
        assert_eq!(err.violations()[0].message, "genus < 2");

        let err = ParabolicData::new(2, 2, 1, vec![pt("p", vec![1, 1], &["1/5", "1/5"])])
            .unwrap_err();
        assert_eq!(err.violations().len(), 1);
        assert_eq!(err.violations()[0].message, "weights not strictly increasing");
        assert_eq!(err.violations()[0].path, "points.p.weights[1]");
    }

    #[test]
    fn validate_reports_every_violation() {
        let err = ParabolicData::new(
            0,
            3,
            0,
            vec![
                pt("p", vec![1, 1], &["1/2", "1"]),
                MarkedPoint::new("p", vec![0, 3]),
            ],
        )
        .unwrap_err();
        let msgs: Vec<_> = err.violations().iter().map(|v| v.message.as_str()).collect();
        assert!(msgs.contains(&"genus < 2"));
        assert!(msgs.contains(&"weight outside [0,1)"));
        assert!(msgs.contains(&"duplicate point id"));
        assert!(msgs.contains(&"multiplicity must be positive"));
        assert!(msgs.iter().any(|m| m.starts_with("multiplicities sum to 2")));
    }

    #[test]
    fn points_are_sorted_by_id() {
        let d = ParabolicData::new(
            2,
            1,
            0,
            vec![MarkedPoint::new("q", vec![1]), MarkedPoint::new("b", vec![1])],
        )
        .unwrap();
        assert_eq!(d.points()[0].id, "b");
    }

    #[test]
    fn pardeg_and_slope_examples() {
        let d = ParabolicData::new(2, 2, 1, vec![pt("p", vec![1, 1], &["1/4", "1/2"])]).unwrap();
        assert_eq!(d.pardeg().unwrap(), q("7/4"));
        assert_eq!(d.slope().unwrap(), q("7/8"));

        let d = ParabolicData::new(2, 3, 0, vec![pt("p", vec![3], &["1/3"])]).unwrap();
        assert_eq!(d.pardeg().unwrap(), q("1"));

        let d = ParabolicData::new(2, 1, 5, vec![pt("p", vec![1], &["1/2"])]).unwrap();
        assert_eq!(d.slope().unwrap(), q("11/2"));

        let d = ParabolicData::new(2, 2, 0, vec![pt("p", vec![2], &["0"])]).unwrap();
        assert_eq!(d.pardeg().unwrap(), q("0"));
        assert_eq!(d.slope().unwrap(), q("0"));

        let d = ParabolicData::new(2, 2, 0, vec![MarkedPoint::new("p", vec![2])]).unwrap();
        assert_eq!(d.pardeg(), Err(Error::MissingWeights));
    }

    #[test]
    fn expand_and_compress_examples() {
        let d = ParabolicData::new(2, 3, 0, vec![pt("p", vec![2, 1], &["1/10", "1/2"])]).unwrap();
        let ew = expand_weights(&d).unwrap();
        assert_eq!(ew.0[0], vec![q("1/10"), q("1/10"), q("1/2")]);
        assert_eq!(compress_weights(&ew, &d.mults()).unwrap(), d.weights().unwrap());
        assert!(compress_weights(&ew, &[vec![1, 2]]).is_err());

        let d = ParabolicData::new(2, 3, 0, vec![pt("p", vec![1, 1, 1], &["0", "1/3", "1/2"])])
            .unwrap();
        assert_eq!(expand_weights(&d).unwrap().0[0], d.weights().unwrap().0[0]);
    }

    #[test]
    fn quotient_type_examples() {
        let d = ParabolicData::new(2, 2, 1, vec![MarkedPoint::new("p", vec![1, 1])]).unwrap();
        let xi = SubType::new(0, 1, vec![vec![1, 0]]);
        assert_eq!(
            induced_quotient_type(&d, &xi).unwrap(),
            SubType::new(1, 1, vec![vec![0, 1]])
        );
        assert!(SubType::new(1, 2, vec![vec![1, 1]]).complement(&d).is_err());

        let d = ParabolicData::new(2, 4, 7, vec![MarkedPoint::new("p", vec![2, 2])]).unwrap();
        let xi = SubType::new(1, 2, vec![vec![1, 1]]);
        assert_eq!(xi.complement(&d).unwrap(), SubType::new(6, 2, vec![vec![1, 1]]));
    }

    fn arb_point(r: u32) -> impl Strategy<Value = (Vec<u32>, Vec<(i64, i64)>)> {
        // composition of r via a bitmask of cut positions
        (0u32..(1 << (r - 1)), proptest::collection::vec((0i64..97, 97i64..98), r as usize))
            .prop_map(move |(cuts, raw)| {
                let mut mults = Vec::new();
                let mut run = 1;
                for i in 0..r - 1 {
                    if cuts & (1 << i) != 0 {
                        mults.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                mults.push(run);
                (mults, raw)
            })
    }

    proptest! {
        #[test]
        fn expand_compress_round_trip((mults, raw) in (1u32..7).prop_flat_map(arb_point)) {
            let rank: u32 = mults.iter().sum();
            let mut nums: Vec<i64> = raw.iter().map(|x| x.0).collect();
            nums.sort();
            nums.dedup();
            prop_assume!(nums.len() >= mults.len());
            let w: Vec<Rational> = nums[..mults.len()].iter().map(|&n| Rational::new(n, 97).unwrap()).collect();
            let d = ParabolicData::new(2, rank, 0, vec![MarkedPoint::with_weights("p", mults, w)]).unwrap();
            let ew = expand_weights(&d).unwrap();
            prop_assert_eq!(ew.0[0].len(), rank as usize);
            prop_assert!(ew.0[0].windows(2).all(|p| p[0] <= p[1]));
            prop_assert_eq!(compress_weights(&ew, &d.mults()).unwrap(), d.weights().unwrap());
        }

        #[test]
        fn complement_is_an_involution(cut in 1u32..5, d in -10i64..10, dp in -10i64..10) {
            let data = ParabolicData::new(2, 5, d, vec![MarkedPoint::new("p", vec![cut, 5 - cut])]).unwrap();
            let xi = SubType::new(dp, cut, vec![vec![cut, 0]]);
            let c = xi.complement(&data).unwrap();
            prop_assert_eq!(c.complement(&data).unwrap(), xi);
        }
    }
}
