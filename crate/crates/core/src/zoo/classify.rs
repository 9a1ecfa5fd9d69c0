use std::fmt;

use rayon::prelude::*;

use crate::model::{Machine, RunOutcome};
use crate::numfmt::sig12;
use crate::sim::{run, EngineOptions, SimError};

use super::LanguageOracle;

/// Nonmembers accepted with at most this probability count as rejected outright.
pub const SOUNDNESS_SLACK: f64 = 1e-12;

/// Every word over `alphabet` of length at most `max_len`, in lexicographic order.
/// Multi-character symbols are joined with spaces.
pub fn enumerate_words(alphabet: &[String], max_len: usize) -> Vec<String> {
    let spaced = alphabet.iter().any(|s| s.chars().count() != 1);
    let mut words = vec![Vec::<&str>::new()];
    let mut frontier = words.clone();
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w| alphabet.iter().map(move |s| {
                let mut next = w.clone();
                next.push(s.as_str());
                next
            }))
            .collect();
        words.extend(frontier.iter().cloned());
    }
    let mut out: Vec<String> = words.into_iter().map(|w| w.join(if spaced { " " } else { "" })).collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub word: String,
    pub member: bool,
    pub outcome: RunOutcome,
}

/// Acceptance profile of a machine against a language on all short words.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub rows: Vec<SweepRow>,
    pub members: usize,
    pub nonmembers: usize,
    pub min_member_accept: Option<f64>,
    pub max_nonmember_accept: Option<f64>,
}

impl Classification {
    /// No nonmember is accepted (up to [`SOUNDNESS_SLACK`]).
    pub fn one_sided(&self) -> bool {
        self.max_nonmember_accept.is_none_or(|p| p <= SOUNDNESS_SLACK)
    }

    /// One-sided: `1 − min member acceptance`. Otherwise the larger of that and the
    /// largest nonmember acceptance.
    pub fn error_bound(&self) -> f64 {
        let miss = self.min_member_accept.map_or(0.0, |p| 1.0 - p);
        if self.one_sided() {
            miss
        } else {
            miss.max(self.max_nonmember_accept.unwrap_or(0.0))
        }
    }

    /// Half-open range `[lo, hi)` of cutpoints `λ` such that exactly the members
    /// are accepted with probability above `λ`.
    pub fn cutpoint_interval(&self) -> Option<(f64, f64)> {
        let lo = self.max_nonmember_accept.unwrap_or(0.0).max(0.0);
        let hi = self.min_member_accept.unwrap_or(1.0);
        (lo < hi).then_some((lo, hi))
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sided = if self.one_sided() { "ONE-SIDED" } else { "TWO-SIDED" };
        write!(f, "{sided} error={}", sig12(self.error_bound()))?;
        match self.cutpoint_interval() {
            Some((lo, hi)) => write!(f, " cutpoint=[{},{})", sig12(lo), sig12(hi))?,
            None => write!(f, " cutpoint=none")?,
        }
        write!(f, " members={} nonmembers={}", self.members, self.nonmembers)
    }
}

/// Runs `m` on every word over its input alphabet up to `max_len` and compares with `oracle`.
pub fn classify(
    m: &Machine,
    oracle: &LanguageOracle,
    max_len: usize,
    opts: &EngineOptions,
) -> Result<Classification, SimError> {
    classify_words(m, oracle, enumerate_words(m.input_alphabet(), max_len), opts)
}

/// As [`classify`], over an explicit word list. Rows keep the order of `words`.
pub fn classify_words(
    m: &Machine,
    oracle: &LanguageOracle,
    words: Vec<String>,
    opts: &EngineOptions,
) -> Result<Classification, SimError> {
    let rows = words
        .into_par_iter()
        .map(|word| {
            let member = oracle.contains(&word)?;
            let outcome = run(m, &word, opts)?;
            Ok(SweepRow { word, member, outcome })
        })
        .collect::<Result<Vec<_>, SimError>>()?;

    let fold = |member: bool, pick: fn(f64, f64) -> f64| {
        rows.iter().filter(|r| r.member == member).map(|r| r.outcome.accept).reduce(pick)
    };
    Ok(Classification {
        members: rows.iter().filter(|r| r.member).count(),
        nonmembers: rows.iter().filter(|r| !r.member).count(),
        min_member_accept: fold(true, f64::min),
        max_nonmember_accept: fold(false, f64::max),
        rows,
    })
}
