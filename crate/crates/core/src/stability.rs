//! Discrete additively left-stable sets: the stability predicate, the sharp
//! prefix-count bound `h`, the lemma-level bound behind it, and the extremal
//! construction that attains `h` at any requested prefix point.

use crate::intset::{k_fold_sum, prefix_count, stats, sumset, IntSet, SetError};
use crate::rational::{rat, rat_int, Rational};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("not anchored at 0 (min is {0})")]
    NotAnchoredAtZero(u32),
    #[error("x out of range: x={x} must satisfy 2 <= x <= {n}")]
    XOutOfRange { x: i64, n: u32 },
    #[error("n must be at least {min}, got {n}")]
    NTooSmall { n: u32, min: u32 },
    #[error("lemma hypothesis violated: {0}")]
    LemmaHypothesis(&'static str),
    #[error(
        "extremal sandwich violated for n={n}, x={x} (k={k}, h={h}): \
         {lower} <= {mid} <= {upper} fails"
    )]
    ExtremalSandwich {
        n: u32,
        x: u32,
        k: u32,
        h: u32,
        lower: i64,
        mid: i64,
        upper: i64,
    },
    #[error("extremal postcondition {which} failed for n={n}, x={x} (k={k}, h={h})")]
    ExtremalPostcondition {
        which: &'static str,
        n: u32,
        x: u32,
        k: u32,
        h: u32,
    },
}

/// A violating pair for the stability predicate: `a + b <= diam` but
/// `a + b` is missing from the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub a: u32,
    pub b: u32,
    pub sum: u32,
}

/// Outcome of the stability predicate. `witness` is present exactly when
/// the set is unstable, and is the lexicographically smallest violating
/// pair `(a, b)` with `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    pub witness: Option<Violation>,
}

/// Checks `(A+A) ∩ [0, diam A] = A` for a set anchored at 0. Since `0 ∈ A`
/// forces `A ⊆ A+A`, this is equivalent to: every pairwise sum that lands
/// within the diameter is already an element.
pub fn is_left_stable(a: &IntSet) -> Result<StabilityReport, StabilityError> {
    let st = stats(a)?;
    if st.min != 0 {
        return Err(StabilityError::NotAnchoredAtZero(st.min));
    }
    let diam = st.diam;
    let sum = sumset(a, a)?;
    if &sum.intersect_range(0, diam) == a {
        return Ok(StabilityReport {
            stable: true,
            witness: None,
        });
    }
    for p in a.iter() {
        for q in a.iter() {
            if q < p {
                continue;
            }
            let s = p + q;
            if s > diam {
                break;
            }
            if !a.contains(s) {
                return Ok(StabilityReport {
                    stable: false,
                    witness: Some(Violation { a: p, b: q, sum: s }),
                });
            }
        }
    }
    unreachable!("sumset disagreed with the pair scan");
}

/// The sharp bound of the prefix-count theorem at one point.
///
/// `k` is the unique integer with `x ∈ (n/k, n/(k-1)]`, i.e.
/// `(k-1)·x <= n < k·x`, and
/// `value = 1 + floor((2(x-1) - (2/k)(n - floor((n+1)/2))) / (k+1))`,
/// evaluated in exact integer arithmetic by clearing the inner denominator:
/// `value = 1 + floor((2k(x-1) - 2(n - floor((n+1)/2))) / (k(k+1)))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HDiscParams {
    pub n: u32,
    pub x: u32,
    pub k: u32,
    pub value: u32,
}

pub fn h_disc(n: u32, x: i64) -> Result<HDiscParams, StabilityError> {
    if n < 2 {
        return Err(StabilityError::NTooSmall { n, min: 2 });
    }
    if x < 2 || x > n as i64 {
        return Err(StabilityError::XOutOfRange { x, n });
    }
    let x = x as u32;
    let k = n / x + 1; // (k-1)x <= n < kx
    debug_assert!((k - 1) * x <= n && n < k * x);
    let n_i = n as i64;
    let x_i = x as i64;
    let k_i = k as i64;
    let half_gap = n_i - (n_i + 1).div_euclid(2); // n - floor((n+1)/2)
    let numer = 2 * k_i * (x_i - 1) - 2 * half_gap;
    let value = 1 + numer.div_euclid(k_i * (k_i + 1));
    debug_assert!(value >= 0, "h must be nonnegative on [2, n]");
    Ok(HDiscParams {
        n,
        x,
        k,
        value: value as u32,
    })
}

/// True iff `h` is nondecreasing on `[2, n]`.
pub fn h_disc_monotone_scan(n: u32) -> Result<bool, StabilityError> {
    if n < 3 {
        return Err(StabilityError::NTooSmall { n, min: 3 });
    }
    let mut prev = h_disc(n, 2)?.value;
    for x in 3..=n as i64 {
        let cur = h_disc(n, x)?.value;
        if cur < prev {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

/// Right-hand side of the lemma bounding `|A_x|` for a left-stable set:
/// `2(k-1)/k + 2/(k(k+1)) · |A_{kx}|` when `kx <= N`, and
/// `2(k-1)/k + 2/(k(k+1)) · (|A| + (kx-N)/d)` when `kx > N`,
/// where `d = gcd*(A)` and `N = diam(A)`.
///
/// The lemma's hypothesis `A ∩ [(k-1)x, N] != dZ ∩ [(k-1)x, N]` is checked
/// and a named error is returned when any clause fails. The caller asserts
/// `|A_x| <=` the returned value.
pub fn lemma_disc_bound(a: &IntSet, x: u32, k: u32) -> Result<Rational, StabilityError> {
    let report = is_left_stable(a)?;
    if !report.stable {
        return Err(StabilityError::LemmaHypothesis("set is not left-stable"));
    }
    if !a.contains(x) {
        return Err(StabilityError::LemmaHypothesis(
            "x is not an element of the set",
        ));
    }
    if k < 2 {
        return Err(StabilityError::LemmaHypothesis("k must be at least 2"));
    }
    let st = stats(a)?;
    let n = st.diam;
    let d = st.gcd_star;
    // A ∩ [(k-1)x, N] must differ from dZ ∩ [(k-1)x, N].
    let lo = (k - 1) as u64 * x as u64;
    if lo > n as u64 {
        return Err(StabilityError::LemmaHypothesis(
            "window [(k-1)x, N] is empty, so both sides coincide",
        ));
    }
    let lo = lo as u32;
    let window = a.intersect_range(lo, n);
    let full: IntSet = (lo..=n).filter(|v| v % d == 0).collect();
    if window == full {
        return Err(StabilityError::LemmaHypothesis(
            "A equals the full progression dZ on [(k-1)x, N]",
        ));
    }
    let k_i = k as i64;
    let lead = rat(2 * (k_i - 1), k_i);
    let coeff = rat(2, k_i * (k_i + 1));
    let kx = k as u64 * x as u64;
    let tail = if kx <= n as u64 {
        rat_int(prefix_count(a, kx as i64) as i64)
    } else {
        rat_int(a.len() as i64) + rat(kx as i64 - n as i64, d as i64)
    };
    Ok(lead + coeff * tail)
}

/// Sandwich check for one candidate block count `k`:
/// `(k-1)x + 1 <= t <= k(x-h+1)` with
/// `t = k(k-1)/2·(h-1) + k + n - floor((n+1)/2)`.
/// Returns `(lower, t, upper)` and whether the chain holds.
fn extremal_sandwich(n: i64, x: i64, k: i64, h: i64) -> (i64, i64, i64, bool) {
    let t = k * (k - 1) / 2 * (h - 1) + k + n - (n + 1).div_euclid(2);
    let lower = (k - 1) * x + 1;
    let upper = k * (x - h + 1);
    (lower, t, upper, x - h + 1 >= 0 && lower <= t && t <= upper)
}

fn build_extremal(n: i64, x: i64, k: i64, h: i64, t: i64) -> IntSet {
    let block_lo = x - h + 1;
    let mut out = IntSet::new();
    for i in 0..k {
        for v in i * block_lo..=i * x {
            out.insert(v as u32);
        }
    }
    for v in t..=n {
        out.insert(v as u32);
    }
    out
}

fn extremal_postconditions_hold(out: &IntSet, n: i64, x: i64, h: i64) -> bool {
    out.max_elem() == Some(n as u32)
        && out.len() as i64 == (n + 1).div_euclid(2) + 1
        && prefix_count(out, x) as i64 == h + 1
        && is_left_stable(out).map(|r| r.stable).unwrap_or(false)
}

/// Builds an extremal left-stable set for `(n, x)`: `k` consecutive-integer
/// blocks `[i(x-h+1), ix]` followed by a tail `[t, n]` with
/// `t = k(k-1)/2·(h-1) + k + n - floor((n+1)/2)` and `h = h_disc(n, x)`.
///
/// The returned set is verified to satisfy all four target properties:
/// (i) the sandwich `(k-1)x + 1 <= t <= k(x-h+1)`, (ii) left-stable with
/// min 0 and max n, (iii) cardinality `floor((n+1)/2) + 1`, and
/// (iv) prefix count at `x` equal to `h + 1`.
///
/// The block count is taken as the unique `k` with `x ∈ (n/k, n/(k-1)]` when
/// that passes verification. It does not always: at `(7, 3)` that `k` breaks
/// the sandwich, and when `x` divides `n` the tail collides with the last
/// block. In those cases the smallest `k >= 1` whose sandwich and
/// postconditions hold is used instead (any such `k` realizes the same
/// prefix count; consecutive valid `k` often produce the identical set).
/// If no `k` works the sandwich error for the primary `k` is returned.
pub fn construct_extremal_disc(n: u32, x: i64) -> Result<IntSet, StabilityError> {
    let h = h_disc(n, x)?;
    let x = x as u32;
    let hv = h.value;
    let n_i = n as i64;
    let x_i = x as i64;
    let h_i = hv as i64;

    let k_primary = h.k as i64; // x in (n/k, n/(k-1)]
    let mut candidates = vec![k_primary];
    candidates.extend((1..=n_i).filter(|&k| k != k_primary));
    for k in candidates {
        let (_, t, _, ok) = extremal_sandwich(n_i, x_i, k, h_i);
        if !ok {
            continue;
        }
        let out = build_extremal(n_i, x_i, k, h_i, t);
        if extremal_postconditions_hold(&out, n_i, x_i, h_i) {
            return Ok(out);
        }
    }
    let (lower, t, upper, _) = extremal_sandwich(n_i, x_i, k_primary, h_i);
    Err(StabilityError::ExtremalSandwich {
        n,
        x,
        k: h.k,
        h: hv,
        lower,
        mid: t,
        upper,
    })
}

/// Stability is preserved by k-fold sums restricted to the diameter:
/// `kA ∩ [0, diam A] = A` for left-stable `A`. Exposed as a helper for the
/// verification suites.
pub fn k_fold_stability_holds(a: &IntSet, k_max: u32) -> Result<bool, StabilityError> {
    let st = stats(a)?;
    for k in 1..=k_max {
        let s = k_fold_sum(a, k)?;
        if s.intersect_range(0, st.diam) != *a {
            return Ok(false);
        }
    }
    Ok(true)
}
