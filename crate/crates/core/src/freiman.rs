//! Sumset-size classification, the 3k-4 pair checker, critical-set
//! decomposition, and the progression-forcing inequality of Grynkiewicz as
//! checkable predicates.
//!
//! Everything here adjudicates a theorem's conclusion on concrete inputs:
//! the checkers never assume the statements, they evaluate both sides and
//! report pass/fail with the witnesses.

use crate::intset::{normalize, stats, sumset, IntSet, SetError};
use crate::report::{Report, Verdict};
use crate::stability::is_left_stable;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreimanError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("set must have at least {min} elements, got {got}")]
    TooSmall { min: usize, got: usize },
    #[error("|b| must not exceed |a| (got |a|={size_a}, |b|={size_b})")]
    SizeOrder { size_a: usize, size_b: usize },
    #[error("sumset lower bound violated: |A+A|={sum_size} < {bound} (falsifies the theorem)")]
    LowerBoundViolated { sum_size: usize, bound: usize },
    #[error("input is not critical (|A+A| = |A| + N_A < 3|A| - 3 required)")]
    NotCritical,
    #[error("decomposition not found (falsifies the critical-set structure theorem)")]
    DecompositionNotFound,
    #[error("|B| must be at least 3, got {0}")]
    SizeBTooSmall(usize),
    #[error("s' precondition failed: |A| = {size_a} < s'(s'-1)(|B|/2 - 1) + s' for s'={s_prime}")]
    SPrimePrecondition { size_a: usize, s_prime: u32 },
    #[error("s' must be positive")]
    SPrimeZero,
}

/// Where `|A+A|` sits relative to `min(3|A|-3, |A|+N_A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreimanCategory {
    /// `|A+A| = |A| + N_A < 3|A| - 3`: the critical case admitting the
    /// three-part decomposition.
    CriticalNa,
    /// `|A+A| = 3|A| - 3 <= |A| + N_A`.
    Equality3k3,
    /// Strictly above the lower bound.
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreimanClass {
    pub sum_size: usize,
    pub bound: usize,
    pub category: FreimanCategory,
}

/// Classifies `|A+A|` against `min(3|A|-3, |A|+N_A)`. Translation- and
/// dilation-invariant: computed on the normalized set. The lower bound is
/// asserted, not assumed; a violation is surfaced as an error since it
/// would falsify the inequality itself.
pub fn classify(a: &IntSet) -> Result<FreimanClass, FreimanError> {
    let card = a.len();
    if card < 2 {
        return Err(FreimanError::TooSmall { min: 2, got: card });
    }
    let norm = normalize(a)?;
    let st = stats(&norm)?;
    let sum_size = sumset(&norm, &norm)?.len();
    let with_na = card + st.n_a as usize;
    let three_k = 3 * card - 3;
    let bound = with_na.min(three_k);
    if sum_size < bound {
        return Err(FreimanError::LowerBoundViolated { sum_size, bound });
    }
    let category = if sum_size == with_na && with_na < three_k {
        FreimanCategory::CriticalNa
    } else if sum_size == three_k && three_k <= with_na {
        FreimanCategory::Equality3k3
    } else {
        FreimanCategory::Above
    };
    Ok(FreimanClass {
        sum_size,
        bound,
        category,
    })
}

/// Outcome of checking the 3k-4 theorem's conclusions on one pair.
#[derive(Debug, Clone)]
pub struct PairCheck3k4 {
    pub delta: u32,
    pub sum_size: usize,
    pub hypothesis_threshold: i64,
    pub hypothesis_met: bool,
    /// Common difference used for the candidate progressions.
    pub difference: u32,
    pub pa_len: usize,
    pub pa_bound: usize,
    pub pb_len: usize,
    pub pb_bound: usize,
    pub run_len: usize,
    pub run_bound: usize,
    pub verdict: Verdict,
}

impl PairCheck3k4 {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new(self.verdict);
        r.push("DELTA", self.delta);
        r.push("SUM_SIZE", self.sum_size);
        r.push("HYPOTHESIS_THRESHOLD", self.hypothesis_threshold);
        r.push("HYPOTHESIS_MET", self.hypothesis_met);
        if self.hypothesis_met {
            r.push("DIFFERENCE", self.difference);
            r.push("PA_LEN", self.pa_len);
            r.push("PA_BOUND", self.pa_bound);
            r.push("PB_LEN", self.pb_len);
            r.push("PB_BOUND", self.pb_bound);
            r.push("RUN_LEN", self.run_len);
            r.push("RUN_BOUND", self.run_bound);
        }
        r
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Longest arithmetic run with step `g` inside `s`, in element count.
fn longest_run(s: &IntSet, g: u32) -> usize {
    let mut best = 0usize;
    let mut cur = 0usize;
    let mut prev: Option<u32> = None;
    for x in s.iter() {
        cur = match prev {
            Some(p) if x == p + g => cur + 1,
            _ => 1,
        };
        // Elements off the g-grid break runs naturally since x != p + g.
        best = best.max(cur);
        prev = Some(x);
    }
    best
}

/// Checks the 3k-4 theorem on a pair: if
/// `|A+B| <= |A| + 2|B| - 3 - delta` (delta = 1 when A is a translate of B),
/// verifies that the minimal progressions of the joint difference
/// `g = gcd((A - min A) ∪ (B - min B))` satisfy
/// `|P_A| <= |A+B| - |B| + 1`, `|P_B| <= |A+B| - |A| + 1`, and that `A+B`
/// contains a g-run of length at least `|A| + |B| - 1`. Pairs that miss the
/// hypothesis report `VACUOUS`.
pub fn freiman_3k4_pair_check(a: &IntSet, b: &IntSet) -> Result<PairCheck3k4, FreimanError> {
    let sa = stats(a)?;
    let sb = stats(b)?;
    if sb.cardinality > sa.cardinality {
        return Err(FreimanError::SizeOrder {
            size_a: sa.cardinality,
            size_b: sb.cardinality,
        });
    }
    // delta = 1 exactly when A is a translate of B (no dilation).
    let translate_equal = {
        let ta: IntSet = a.iter().map(|v| v - sa.min).collect();
        let tb: IntSet = b.iter().map(|v| v - sb.min).collect();
        ta == tb
    };
    let delta = u32::from(translate_equal);
    let sum = sumset(a, b)?;
    let sum_size = sum.len();
    let threshold = sa.cardinality as i64 + 2 * sb.cardinality as i64 - 3 - delta as i64;
    let hypothesis_met = (sum_size as i64) <= threshold;

    let mut check = PairCheck3k4 {
        delta,
        sum_size,
        hypothesis_threshold: threshold,
        hypothesis_met,
        difference: 0,
        pa_len: 0,
        pa_bound: 0,
        pb_len: 0,
        pb_bound: 0,
        run_len: 0,
        run_bound: 0,
        verdict: Verdict::Vacuous,
    };
    if !hypothesis_met {
        return Ok(check);
    }

    // Joint difference: gcd over both translated sets; 0 only if both are
    // singletons, where any difference works — use 1.
    let g = {
        let mut g = 0;
        for v in a.iter() {
            g = gcd(g, v - sa.min);
        }
        for v in b.iter() {
            g = gcd(g, v - sb.min);
        }
        if g == 0 {
            1
        } else {
            g
        }
    };
    check.difference = g;
    check.pa_len = (sa.diam / g) as usize + 1;
    check.pa_bound = sum_size - sb.cardinality + 1;
    check.pb_len = (sb.diam / g) as usize + 1;
    check.pb_bound = sum_size - sa.cardinality + 1;
    check.run_len = longest_run(&sum, g);
    check.run_bound = sa.cardinality + sb.cardinality - 1;
    check.verdict = if check.pa_len <= check.pa_bound
        && check.pb_len <= check.pb_bound
        && check.run_len >= check.run_bound
    {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(check)
}

/// The three-part split of a critical set: on the normalized set,
/// `A = a1 ⊔ [run_start, run_end] ⊔ (N_A - a2)`, with the run a block of
/// consecutive integers of length at least `2|A| - N_A - 2` starting at a
/// positive integer, and `a1`/`a2` each empty or left-stable with min 0.
/// `step` and `offset` carry the dilation/translation back to the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalDecomposition {
    pub a1: IntSet,
    pub run_start: u32,
    pub run_end: u32,
    pub a2: IntSet,
    pub step: u32,
    pub offset: u32,
}

fn empty_or_stable(s: &IntSet) -> bool {
    s.is_empty() || is_left_stable(s).map(|r| r.stable).unwrap_or(false)
}

/// Searches all split points over the normalized set for the run
/// maximizing `run_end - run_start` (ties: smallest `run_start`). Inputs
/// must classify as the critical category. A missing decomposition is an
/// error surfaced loudly: the structure theorem says it cannot happen.
pub fn decompose_critical(a: &IntSet) -> Result<CriticalDecomposition, FreimanError> {
    let class = classify(a)?;
    if class.category != FreimanCategory::CriticalNa {
        return Err(FreimanError::NotCritical);
    }
    let st = stats(a)?;
    let norm = normalize(a)?;
    let n = st.n_a;
    let min_run = (2 * a.len() as i64 - n as i64 - 2).max(1) as u32;

    let mut best: Option<(u32, u32)> = None;
    // Runs must consist of positive integers, hence i >= 1.
    for i in 1..=n {
        if !norm.contains(i) {
            continue;
        }
        let mut j = i;
        while j < n && norm.contains(j + 1) {
            j += 1;
        }
        // [i, j] is the maximal run starting at i; every sub-run starting
        // at i is admissible, but only the longest can win.
        for end in (i..=j).rev() {
            let len = end - i + 1;
            if len < min_run {
                break;
            }
            if let Some((bi, bj)) = best {
                if bj - bi >= end - i {
                    break;
                }
            }
            let a1 = norm.intersect_range(0, i.wrapping_sub(1));
            let a2: IntSet = norm
                .intersect_range(end + 1, n)
                .iter()
                .map(|v| n - v)
                .collect();
            if empty_or_stable(&a1) && empty_or_stable(&a2) {
                best = Some((i, end));
            }
        }
    }
    let (run_start, run_end) = best.ok_or(FreimanError::DecompositionNotFound)?;
    let a1 = norm.intersect_range(0, run_start - 1);
    let a2: IntSet = norm
        .intersect_range(run_end + 1, n)
        .iter()
        .map(|v| n - v)
        .collect();
    Ok(CriticalDecomposition {
        a1,
        run_start,
        run_end,
        a2,
        step: st.gcd_star,
        offset: st.min,
    })
}

/// Reassembles the normalized set from a decomposition (for round-trip
/// verification): `a1 ∪ [run_start, run_end] ∪ (n - a2)`.
pub fn reassemble_critical(d: &CriticalDecomposition, n_a: u32) -> IntSet {
    let mut out = d.a1.clone();
    for v in d.run_start..=d.run_end {
        out.insert(v);
    }
    for v in d.a2.iter() {
        out.insert(n_a - v);
    }
    out
}

/// The two scale integers of the progression-forcing inequality:
/// `s` is the unique integer with
/// `s(s-1)(|B|/2 - 1) + s - 1 < |A| <= s(s+1)(|B|/2 - 1) + s`,
/// and `s_prime_max` is the largest `s'` with
/// `|A| >= s'(s'-1)(|B|/2 - 1) + s'`. Both comparisons are exact: the
/// half-integer bounds are evaluated scaled by 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrynkiewiczParams {
    pub s: u32,
    pub s_prime_max: u32,
}

pub fn grynkiewicz_params(size_a: usize, size_b: usize) -> Result<GrynkiewiczParams, FreimanError> {
    if size_b < 3 {
        return Err(FreimanError::SizeBTooSmall(size_b));
    }
    if size_a < 1 {
        return Err(FreimanError::TooSmall {
            min: 1,
            got: size_a,
        });
    }
    let a2 = 2 * size_a as i64; // compare 2|A| against scaled bounds
    let m = size_b as i64 - 2;
    let upper = |s: i64| s * (s + 1) * m + 2 * s;
    let lower = |s: i64| s * (s - 1) * m + 2 * s - 2;
    let mut s = 1i64;
    while upper(s) < a2 {
        s += 1;
    }
    debug_assert!(lower(s) < a2, "consecutive s-intervals must tile");
    let mut sp = 1i64;
    while (sp + 1) * sp * m + 2 * (sp + 1) <= a2 {
        sp += 1;
    }
    Ok(GrynkiewiczParams {
        s: s as u32,
        s_prime_max: sp as u32,
    })
}

/// Outcome of the progression-forcing check for one `(A, B, s')`.
#[derive(Debug, Clone)]
pub struct GrynkiewiczCheck {
    pub s_prime: u32,
    pub n_b: u32,
    pub sum_size: usize,
    /// `|A+B| - |A| + 1`: B fits a progression of this length or shorter
    /// unless the antecedent below holds.
    pub progression_cap: i64,
    /// `N_B > |A+B| - |A| + 1`.
    pub antecedent: bool,
    /// `|A| + s'(|B| - 2) + 1`.
    pub conclusion_bound: i64,
    pub verdict: Verdict,
}

impl GrynkiewiczCheck {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new(self.verdict);
        r.push("S_PRIME", self.s_prime);
        r.push("N_B", self.n_b);
        r.push("SUM_SIZE", self.sum_size);
        r.push("PROGRESSION_CAP", self.progression_cap);
        r.push("ANTECEDENT", self.antecedent);
        r.push("CONCLUSION_BOUND", self.conclusion_bound);
        r
    }
}

/// Evaluates the implication: if `N_B > |A+B| - |A| + 1` then
/// `|A+B| >= |A| + s'(|B| - 2) + 1`. Preconditions (`|B| >= 3`,
/// `|A| >= s'(s'-1)(|B|/2 - 1) + s'`) are errors named individually;
/// a false antecedent reports `VACUOUS`.
pub fn grynkiewicz_check(
    a: &IntSet,
    b: &IntSet,
    s_prime: u32,
) -> Result<GrynkiewiczCheck, FreimanError> {
    if s_prime == 0 {
        return Err(FreimanError::SPrimeZero);
    }
    let size_b = b.len();
    if size_b < 3 {
        return Err(FreimanError::SizeBTooSmall(size_b));
    }
    let size_a = a.len();
    let sp = s_prime as i64;
    if (2 * size_a as i64) < sp * (sp - 1) * (size_b as i64 - 2) + 2 * sp {
        return Err(FreimanError::SPrimePrecondition { size_a, s_prime });
    }
    let n_b = stats(b)?.n_a;
    let sum_size = sumset(a, b)?.len();
    let progression_cap = sum_size as i64 - size_a as i64 + 1;
    let antecedent = (n_b as i64) > progression_cap;
    let conclusion_bound = size_a as i64 + sp * (size_b as i64 - 2) + 1;
    let verdict = if !antecedent {
        Verdict::Vacuous
    } else if sum_size as i64 >= conclusion_bound {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(GrynkiewiczCheck {
        s_prime,
        n_b,
        sum_size,
        progression_cap,
        antecedent,
        conclusion_bound,
        verdict,
    })
}
