//! Rationality rules for fixed-determinant moduli of parabolic bundles,
//! applied in a fixed priority order with a replayable trail.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::model::{MarkedPoint, ParabolicData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl RuleId {
    pub const ALL: [RuleId; 7] = [
        RuleId::R0,
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
    ];

    pub fn citation(self) -> &'static str {
        match self {
            RuleId::R0 => "rank one: the fixed-determinant moduli space is a point",
            RuleId::R1 => "Newstead: trivial flags and degree ±1 mod r give a rational moduli space",
            RuleId::R2 => "a full flag at some marked point gives a rational moduli space",
            RuleId::R3 => "a multiplicity-one flag step at some marked point gives a rational moduli space",
            RuleId::R4 => {
                "some term of the shifted filtration has degree ±1 mod r, so Newstead's case applies to it"
            }
            RuleId::R5 => {
                "coprime rank and degree d' with gcd(g, d') = 1 or gcd(g, r - d') = 1 give rationality; \
                 flags are forgotten via the flag-variety fibration over the coprime base"
            }
            RuleId::R6 => "coprime rank and degree: stably rational of level at most r - 1",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Conclusion {
    Rational,
    StablyRational { level_bound: u32 },
    Unknown,
}

impl Conclusion {
    pub fn name(&self) -> &'static str {
        match self {
            Conclusion::Rational => "rational",
            Conclusion::StablyRational { .. } => "stably-rational",
            Conclusion::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleOutcome {
    /// The rule applies; bindings name the values that made it fire.
    Fired(Vec<(String, String)>),
    /// The condition that failed.
    Failed(String),
}

impl RuleOutcome {
    pub fn fired(&self) -> bool {
        matches!(self, RuleOutcome::Fired(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrailEntry {
    pub rule: RuleId,
    pub citation: &'static str,
    pub outcome: RuleOutcome,
}

/// The input as the rules see it: degree modulo `r` and the flag types that
/// carry information (trivial flags dropped).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalizedInput {
    pub degree_residue: i64,
    pub mults: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub trail: Vec<TrailEntry>,
    pub normalized: NormalizedInput,
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

/// `{ d − Σ_p s_p mod r }` over prefix sums `s_p` of `m(p)`, `0` and `r` included.
pub fn reachable_degrees(data: &ParabolicData) -> BTreeSet<i64> {
    let r = i64::from(data.rank());
    let mut acc = BTreeSet::from([data.degree().mod_floor(&r)]);
    for p in data.points() {
        let mut prefixes = vec![0i64];
        prefixes.extend(p.prefix_sums().iter().map(|&s| i64::from(s)));
        acc = acc
            .iter()
            .flat_map(|d| prefixes.iter().map(move |s| (d - s).mod_floor(&r)))
            .collect();
    }
    acc
}

fn unit_mod(d: i64, r: i64) -> bool {
    let x = d.mod_floor(&r);
    x == 1 % r || x == (r - 1) % r
}

fn coprime_reachable(data: &ParabolicData) -> Vec<i64> {
    let r = i64::from(data.rank());
    reachable_degrees(data)
        .into_iter()
        .filter(|d| d.gcd(&r) == 1)
        .collect()
}

/// Evaluates one rule in isolation.
pub fn check_rule(rule: RuleId, data: &ParabolicData) -> RuleOutcome {
    let r = i64::from(data.rank());
    let d = data.degree();
    let g = data.genus();
    match rule {
        RuleId::R0 => {
            if r == 1 {
                RuleOutcome::Fired(vec![kv("r", r)])
            } else {
                RuleOutcome::Failed(format!("r = {r} > 1"))
            }
        }
        RuleId::R1 => {
            if !data.has_trivial_flags() {
                RuleOutcome::Failed("flags are not trivial".into())
            } else if unit_mod(d, r) {
                RuleOutcome::Fired(vec![kv("d mod r", d.mod_floor(&r))])
            } else {
                RuleOutcome::Failed(format!("d mod r = {} is not ±1", d.mod_floor(&r)))
            }
        }
        RuleId::R2 => match data.points().iter().find(|p| p.is_full_flag()) {
            Some(p) => RuleOutcome::Fired(vec![kv("point", &p.id)]),
            None => RuleOutcome::Failed("no marked point carries a full flag".into()),
        },
        RuleId::R3 => {
            let hit = data
                .points()
                .iter()
                .find_map(|p| p.mults.iter().position(|&m| m == 1).map(|i| (p, i)));
            match hit {
                Some((p, i)) => RuleOutcome::Fired(vec![kv("point", &p.id), kv("step", i + 1)]),
                None => RuleOutcome::Failed("no multiplicity equals 1".into()),
            }
        }
        RuleId::R4 => {
            let reach = reachable_degrees(data);
            match reach.iter().find(|&&x| unit_mod(x, r)) {
                Some(x) => RuleOutcome::Fired(vec![kv("reachable degree mod r", x)]),
                None => RuleOutcome::Failed(format!("reachable residues {reach:?} avoid ±1")),
            }
        }
        RuleId::R5 => {
            let coprime = coprime_reachable(data);
            if coprime.is_empty() {
                return RuleOutcome::Failed("no reachable degree is coprime to r".into());
            }
            for dp in &coprime {
                if g.gcd(dp) == 1 {
                    return RuleOutcome::Fired(vec![kv("d'", dp), kv("gcd(g, d')", 1)]);
                }
                if g.gcd(&(r - dp)) == 1 {
                    return RuleOutcome::Fired(vec![kv("d'", dp), kv("gcd(g, r - d')", 1)]);
                }
            }
            let dp = coprime[0];
            RuleOutcome::Failed(format!(
                "gcd(g, d') = {} and gcd(g, r - d') = {} for d' = {dp}",
                g.gcd(&dp),
                g.gcd(&(r - dp))
            ))
        }
        RuleId::R6 => match coprime_reachable(data).first() {
            Some(dp) => RuleOutcome::Fired(vec![kv("d'", dp), kv("level", r - 1)]),
            None => RuleOutcome::Failed("no reachable degree is coprime to r".into()),
        },
    }
}

fn conclusion_for(rule: RuleId, data: &ParabolicData) -> Conclusion {
    match rule {
        RuleId::R6 => Conclusion::StablyRational {
            level_bound: data.rank() - 1,
        },
        _ => Conclusion::Rational,
    }
}

/// Applies R0..R6 in order and stops at the first rule that fires.
/// Only fixed-determinant moduli are in scope.
pub fn decide(data: &ParabolicData, fixed_det: bool) -> Result<Verdict> {
    if !fixed_det {
        return Err(Error::precondition(
            "rationality verdicts cover fixed-determinant moduli only",
        ));
    }
    let r = i64::from(data.rank());
    let normalized = NormalizedInput {
        degree_residue: data.degree().mod_floor(&r),
        mults: data
            .points()
            .iter()
            .filter(|p| !p.is_trivial_flag())
            .map(|p| p.mults.clone())
            .collect(),
    };
    let mut trail = Vec::new();
    let mut conclusion = Conclusion::Unknown;
    for rule in RuleId::ALL {
        let outcome = check_rule(rule, data);
        let fired = outcome.fired();
        trail.push(TrailEntry {
            rule,
            citation: rule.citation(),
            outcome,
        });
        if fired {
            conclusion = conclusion_for(rule, data);
            break;
        }
    }
    Ok(Verdict {
        conclusion,
        trail,
        normalized,
    })
}

/// Recovers the conclusion from a trail alone.
pub fn replay(trail: &[TrailEntry]) -> Result<Conclusion> {
    let (last, before) = match trail.split_last() {
        Some(x) => x,
        None => return Err(Error::precondition("empty trail")),
    };
    if before.iter().any(|e| e.outcome.fired()) {
        return Err(Error::precondition("trail continues after a fired rule"));
    }
    for (i, e) in trail.iter().enumerate() {
        if e.rule != RuleId::ALL[i] || e.citation != e.rule.citation() {
            return Err(Error::precondition("trail out of rule order"));
        }
    }
    match &last.outcome {
        RuleOutcome::Failed(_) if last.rule == RuleId::R6 => Ok(Conclusion::Unknown),
        RuleOutcome::Failed(_) => Err(Error::precondition("trail ends before the last rule")),
        RuleOutcome::Fired(bindings) if last.rule == RuleId::R6 => {
            let level = bindings
                .iter()
                .find(|(k, _)| k == "level")
                .and_then(|(_, v)| v.parse().ok())
                .ok_or_else(|| Error::precondition("stable rationality without a level"))?;
            Ok(Conclusion::StablyRational { level_bound: level })
        }
        RuleOutcome::Fired(_) => Ok(Conclusion::Rational),
    }
}

/// Genera `g ∈ [2, g_max]` for which no rule proves rationality of the
/// trivial-flag moduli space of rank `r` and degree `d`.
pub fn open_genera(r: u32, d: i64, g_max: i64) -> Result<Vec<i64>> {
    if r == 0 {
        return Err(Error::precondition("rank must be at least 1"));
    }
    if d.gcd(&i64::from(r)) != 1 {
        return Err(Error::NotCoprime { r, d });
    }
    let mut out = Vec::new();
    for g in 2..=g_max {
        let data = ParabolicData::new(g, r, d, Vec::<MarkedPoint>::new())?;
        if decide(&data, true)?.conclusion != Conclusion::Rational {
            out.push(g);
        }
    }
    Ok(out)
}
