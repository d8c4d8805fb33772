//! Exact existence test for identity c-edge-colorings of `K_{s,t}` and the
//! distinguishing number of `K_s □ K_t`.
//!
//! All threshold comparisons against `c^s` go through [`count::pow_at_least`],
//! so `t` may be as large as `3^79` and `s` as large as `10^6` without ever
//! forming the full power when it is not needed.

use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::count::{self, BigCount};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("need at least 2 colors, got {0}")]
    TooFewColors(u64),
    #[error("part sizes must be positive, got s={s}, t={t}")]
    EmptyPart { s: u64, t: BigCount },
    #[error("x = floor(log_c(s-1)) needs s >= 2, got s={0}")]
    NoExponent(u64),
}

/// Which rule settled a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseLabel {
    #[serde(rename = "T1-i")]
    SingleColumn,
    #[serde(rename = "T1-ii")]
    FewColumns,
    #[serde(rename = "T1-iii")]
    BelowThreshold,
    #[serde(rename = "T1-iv")]
    AboveThreshold,
    #[serde(rename = "T1-v")]
    AtThreshold,
    #[serde(rename = "T1-exception")]
    Exception,
    #[serde(rename = "L-l1")]
    TooManyRows,
    #[serde(rename = "L-l3")]
    LogBound,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::SingleColumn => "T1-i",
            CaseLabel::FewColumns => "T1-ii",
            CaseLabel::BelowThreshold => "T1-iii",
            CaseLabel::AboveThreshold => "T1-iv",
            CaseLabel::AtThreshold => "T1-v",
            CaseLabel::Exception => "T1-exception",
            CaseLabel::TooManyRows => "L-l1",
            CaseLabel::LogBound => "L-l3",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A `(c, s, t)` parameter triple; serialises as three decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub c: u64,
    pub s: u64,
    pub t: BigCount,
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(3)?;
        tup.serialize_element(&self.c.to_string())?;
        tup.serialize_element(&self.s.to_string())?;
        tup.serialize_element(&self.t.to_string())?;
        tup.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub exists: bool,
    pub case_label: CaseLabel,
    /// Every triple evaluated, starting with the query itself; longer than one
    /// only when a threshold boundary delegates to `K_{x+1,s}`.
    pub recursion_chain: Vec<Triple>,
}

/// `floor(log_c(s - 1))` by exact integer powering.
pub fn x_of(c: u64, s: u64) -> Result<u64, DecideError> {
    if c < 2 {
        return Err(DecideError::TooFewColors(c));
    }
    if s < 2 {
        return Err(DecideError::NoExponent(s));
    }
    Ok(count::floor_log(c, s - 1))
}

/// Smallest `r >= 0` with `binomial(r + c - 1, r) >= s`.
pub fn r_of(c: u64, s: u64) -> u64 {
    assert!(c >= 2, "r_of needs c >= 2");
    // binomial(r + c - 1, r) built incrementally; each step is an exact division.
    let mut r: u64 = 0;
    let mut binom: u128 = 1;
    while binom < u128::from(s) {
        r += 1;
        let num = binom * u128::from(r + c - 1);
        binom = num / u128::from(r);
    }
    r
}

/// Memoised decision context. Verdicts are cached per `(c, s, t)` for the
/// lifetime of the value; separate contexts never share state.
#[derive(Debug, Default)]
pub struct Decider {
    memo: HashMap<Triple, Verdict>,
}

impl Decider {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decide(&mut self, c: u64, s: u64, t: &BigCount) -> Result<Verdict, DecideError> {
        if c < 2 {
            return Err(DecideError::TooFewColors(c));
        }
        if s == 0 || t == &BigCount::from(0u32) {
            return Err(DecideError::EmptyPart { s, t: t.clone() });
        }
        let key = Triple { c, s, t: t.clone() };
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let verdict = self.evaluate(key.clone())?;
        self.memo.insert(key, verdict.clone());
        Ok(verdict)
    }

    fn evaluate(&mut self, q: Triple) -> Result<Verdict, DecideError> {
        let (c, s) = (q.c, q.s);
        let t = q.t.clone();
        let settle = |exists, case_label, q: Triple| Verdict {
            exists,
            case_label,
            recursion_chain: vec![q],
        };

        if s == 1 {
            let ok = t >= BigCount::from(2u32) && t <= BigCount::from(c);
            return Ok(settle(ok, CaseLabel::SingleColumn, q));
        }

        let x = x_of(c, s)?;
        // t >= c^s
        if !count::pow_at_least(c, s, &(&t + 1u32)) {
            return Ok(settle(false, CaseLabel::TooManyRows, q));
        }
        // t <= x or t >= c^s - x
        if t <= BigCount::from(x) || !count::pow_at_least(c, s, &(&t + x + 1u32)) {
            return Ok(settle(false, CaseLabel::LogBound, q));
        }
        if c == 2
            && ((s == 2 && t == BigCount::from(2u32)) || (s == 3 && t == BigCount::from(3u32)))
        {
            return Ok(settle(false, CaseLabel::Exception, q));
        }
        if s <= c {
            return Ok(settle(true, CaseLabel::FewColumns, q));
        }

        // s > c forces x >= 1, so floor(log_c x) is defined.
        debug_assert!(x >= 1);
        let lx = count::floor_log(c, x);
        let threshold = u128::from(c).pow((x + 1) as u32) - u128::from(lx);
        let s_wide = u128::from(s);
        let low_edge = t == BigCount::from(x + 1);
        // t == c^s - x - 1
        let high_edge = !count::pow_at_least(c, s, &(&t + x + 2u32));

        if s_wide + 2 <= threshold {
            Ok(settle(true, CaseLabel::BelowThreshold, q))
        } else if s_wide >= threshold {
            Ok(settle(
                !(low_edge || high_edge),
                CaseLabel::AboveThreshold,
                q,
            ))
        } else if low_edge || high_edge {
            let inner = self.decide(c, x + 1, &BigCount::from(s))?;
            let mut chain = vec![q];
            chain.extend(inner.recursion_chain);
            Ok(Verdict {
                exists: inner.exists,
                case_label: CaseLabel::AtThreshold,
                recursion_chain: chain,
            })
        } else {
            Ok(settle(true, CaseLabel::AtThreshold, q))
        }
    }
}

/// Whether `K_{s,t}` has an identity c-edge-coloring, with the deciding rule.
pub fn has_identity_coloring(c: u64, s: u64, t: &BigCount) -> Result<Verdict, DecideError> {
    Decider::new().decide(c, s, t)
}

/// Convenience wrapper for small `t`.
pub fn exists(c: u64, s: u64, t: u64) -> bool {
    has_identity_coloring(c, s, &BigCount::from(t))
        .map(|v| v.exists)
        .unwrap_or(false)
}

/// A verdict at one `t` that differs from the rule covering the rest of the row,
/// or that was reached through the threshold recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjustment {
    pub t: BigCount,
    pub verdict: Verdict,
}

/// Every feasible `t` for a fixed `(c, s)`, as maximal closed intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleRow {
    pub s: u64,
    pub case_label: CaseLabel,
    pub intervals: Vec<(BigCount, BigCount)>,
    pub adjustments: Vec<Adjustment>,
}

/// Feasible `t` values for `K_{s,t}` with `c` colors.
///
/// Only the two ends of `[x+1, c^s-x-1]` and the two exceptional triples can
/// deviate from the row's rule, so the verdict is evaluated just there.
pub fn feasible_intervals(
    decider: &mut Decider,
    c: u64,
    s: u64,
) -> Result<FeasibleRow, DecideError> {
    if c < 2 {
        return Err(DecideError::TooFewColors(c));
    }
    if s == 0 {
        return Err(DecideError::EmptyPart {
            s,
            t: BigCount::from(1u32),
        });
    }
    let (lo, hi) = if s == 1 {
        (BigCount::from(2u32), BigCount::from(c))
    } else {
        let x = x_of(c, s)?;
        (BigCount::from(x + 1), count::pow(c, s) - x - 1u32)
    };
    let mut probes = vec![lo.clone(), hi.clone()];
    if c == 2 && (s == 2 || s == 3) {
        probes.push(BigCount::from(s));
    }
    probes.sort();
    probes.dedup();

    let case_label = decider.decide(c, s, &lo)?.case_label;
    let mut gaps = Vec::new();
    let mut adjustments = Vec::new();
    for t in probes {
        let verdict = decider.decide(c, s, &t)?;
        if !verdict.exists {
            gaps.push(t.clone());
        }
        if !verdict.exists || verdict.recursion_chain.len() > 1 {
            adjustments.push(Adjustment { t, verdict });
        }
    }

    let mut intervals = Vec::new();
    let mut start = lo;
    for gap in gaps {
        if gap > start {
            intervals.push((start.clone(), &gap - 1u32));
        }
        start = gap + 1u32;
    }
    if start <= hi {
        intervals.push((start, hi));
    }
    Ok(FeasibleRow {
        s,
        case_label,
        intervals,
        adjustments,
    })
}

/// Which case of the closed-form distinguishing-number formula applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorollaryCase {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguishingResult {
    /// Smallest `c` for which `K_{s,t}` has an identity c-edge-coloring.
    pub value: u64,
    /// Smallest `c` with `c^s >= t + 1`.
    pub base_c: u64,
    pub corollary_case: Option<CorollaryCase>,
    /// Value predicted by the closed form, evaluated independently of `value`.
    pub corollary_value: Option<u64>,
}

impl DistinguishingResult {
    pub fn corollary_agrees(&self) -> Option<bool> {
        self.corollary_value.map(|v| v == self.value)
    }
}

fn base_color(s: u64, t: u64) -> u64 {
    let n = BigCount::from(t) + 1u32;
    count::to_u64(&count::min_base_reaching(s, &n)).expect("base is at most t + 1")
}

/// Distinguishing number of `K_s □ K_t`; argument order does not matter.
pub fn distinguishing_number(s: u64, t: u64) -> DistinguishingResult {
    assert!(s >= 1 && t >= 1, "factor sizes must be positive");
    let (s, t) = if s <= t { (s, t) } else { (t, s) };
    let base_c = base_color(s, t);
    if s == 1 {
        // K_1 □ K_t = K_t.
        return DistinguishingResult {
            value: if t == 1 { 1 } else { t },
            base_c,
            corollary_case: None,
            corollary_value: None,
        };
    }
    let mut decider = Decider::new();
    let tb = BigCount::from(t);
    // Below base_c every c has t >= c^s, which the decision rejects outright.
    let mut c = base_c.max(2);
    while !decider.decide(c, s, &tb).expect("valid parameters").exists {
        c += 1;
    }
    let (case, predicted) = corollary_prediction(s, t);
    DistinguishingResult {
        value: c,
        base_c,
        corollary_case: Some(case),
        corollary_value: Some(predicted),
    }
}

/// Closed-form value for `2 <= s <= t`, recursing only at the threshold case.
fn corollary_prediction(s: u64, t: u64) -> (CorollaryCase, u64) {
    debug_assert!(2 <= s && s <= t);
    let c = base_color(s, t);
    let x = count::floor_log(c, s - 1);
    let tb = BigCount::from(t);
    let cs = count::pow(c, s);
    if &tb + x + 2u32 <= cs {
        let v = if (s, t) == (2, 2) { 3 } else { c };
        return (CorollaryCase::I, v);
    }
    if &tb + x >= cs {
        return (CorollaryCase::Ii, c + 1);
    }
    // t = c^s - x - 1
    if x == 0 {
        // s <= c: floor(log_c x) is unbounded below, so the first threshold case applies.
        return (CorollaryCase::Iii, c);
    }
    let lx = count::floor_log(c, x);
    let threshold = u128::from(c).pow((x + 1) as u32) - u128::from(lx);
    let sw = u128::from(s);
    if sw + 2 <= threshold {
        (CorollaryCase::Iii, c)
    } else if sw >= threshold {
        (CorollaryCase::Iv, c + 1)
    } else {
        let inner = if x + 1 == 1 {
            s
        } else {
            corollary_prediction(x + 1, s).1
        };
        (CorollaryCase::V, if inner <= c { c } else { c + 1 })
    }
}
