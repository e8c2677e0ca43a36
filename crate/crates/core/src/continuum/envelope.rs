//! Envelope checks for critical continuous sets.
//!
//! A critical set (`λ(A+A) = diam A + λ(A) < 3λ(A)`) decomposes as a
//! left-stable head, a full middle interval of measure `Δ = 2λ(A) - diam A`,
//! and a reflected left-stable tail. Its prefix-measure function
//! `g(x) = λ((A - inf A) ∩ [0, x])` must then run below the head envelope
//! `b·h(x/b)` on `[0, b]`, equal `x - b/2` on `[b, b+Δ]`, and stay above the
//! reflected envelope on `[b+Δ, d]`. Both sides of each comparison are
//! piecewise affine, so finitely many exact breakpoint checks decide it.

use crate::continuum::{h_cont, ContinuumError, IntervalUnion};
use crate::rational::{ceil_int, floor_int, rational_to_string, Rational};
use crate::report::{Report, Verdict};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// First breakpoint at which a prefix function escapes its envelope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeViolation {
    /// Which piece failed: "head", "middle", or "tail".
    pub piece: &'static str,
    /// Location in the coordinates of the (translated) input set.
    pub breakpoint: Rational,
    pub g_value: Rational,
    pub envelope_value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeCandidate {
    /// Offset of the middle interval: `b = p - inf A`.
    pub b: Rational,
    pub passed: bool,
    pub violation: Option<EnvelopeViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeCheck {
    pub delta: Rational,
    pub candidates: Vec<EnvelopeCandidate>,
    pub verdict: Verdict,
}

impl EnvelopeCheck {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new(self.verdict);
        r.push("DELTA", rational_to_string(&self.delta));
        r.push("NUM_CANDIDATES", self.candidates.len());
        for (i, c) in self.candidates.iter().enumerate() {
            r.push(&format!("CANDIDATE_{i}_B"), rational_to_string(&c.b));
            r.push(&format!("CANDIDATE_{i}_PASS"), c.passed);
            if let Some(v) = &c.violation {
                r.push(&format!("CANDIDATE_{i}_PIECE"), v.piece);
                r.push(
                    &format!("CANDIDATE_{i}_BREAKPOINT"),
                    rational_to_string(&v.breakpoint),
                );
                r.push(&format!("CANDIDATE_{i}_G"), rational_to_string(&v.g_value));
                r.push(
                    &format!("CANDIDATE_{i}_ENVELOPE"),
                    rational_to_string(&v.envelope_value),
                );
            }
        }
        let passing: Vec<String> = self
            .candidates
            .iter()
            .filter(|c| c.passed)
            .map(|c| rational_to_string(&c.b))
            .collect();
        r.push("PASSING_B", passing.join(";"));
        r
    }
}

/// Envelope value `b·h(x/b)` with the degenerate cases pinned:
/// 0 at `x = 0`, and `b/2` at `x = b`.
fn head_envelope(x: &Rational, b: &Rational) -> Rational {
    if x.is_zero() {
        Rational::zero()
    } else {
        h_cont(x, b).expect("0 < x <= b by construction")
    }
}

/// Checks `λ(u ∩ [0, x]) <= b·h(x/b)` for all `x ∈ [0, b]`, returning the
/// first violating breakpoint (ascending) or None.
///
/// `u` must be anchored at inf 0. Finitely many checkpoints suffice: the
/// prefix function is affine between consecutive interval endpoints, and
/// the envelope is affine between consecutive `b/k`. Segments where the
/// prefix is constant need only their left endpoint (the envelope is
/// nondecreasing), which also disposes of the breakpoint accumulation
/// near 0.
pub fn prefix_envelope_violation(
    u: &IntervalUnion,
    b: &Rational,
) -> Result<Option<EnvelopeViolation>, ContinuumError> {
    if b.is_negative() {
        return Err(ContinuumError::XOutOfRange {
            x: rational_to_string(b),
            d: "nonnegative b".into(),
        });
    }
    if b.is_zero() {
        return Ok(None); // degenerate head
    }
    // Endpoints of u clipped to [0, b], plus 0 and b.
    let mut points: Vec<Rational> = vec![Rational::zero(), b.clone()];
    for (lo, hi) in u.intervals() {
        for p in [lo, hi] {
            if p.is_positive() && p < b {
                points.push(p.clone());
            }
        }
    }
    points.sort();
    points.dedup();

    // Refine slope-1 segments by envelope breakpoints b/k strictly inside.
    let mut checkpoints: Vec<Rational> = Vec::new();
    for w in points.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        checkpoints.push(p.clone());
        if !p.is_zero() && u.contains_interval(p, q) {
            // b/k ∈ (p, q)  ⟺  b/q < k < b/p
            let k_lo: BigInt = floor_int(&(b / q)) + 1;
            let k_hi = ceil_int(&(b / p)) - 1;
            let mut k = k_lo;
            while k <= k_hi {
                let bp = b / Rational::from_integer(k.clone());
                if &bp > p && &bp < q {
                    checkpoints.push(bp);
                }
                k += 1;
            }
        }
    }
    checkpoints.push(b.clone());
    checkpoints.sort();
    checkpoints.dedup();

    for x in checkpoints {
        let g = u.measure_up_to(&x);
        let env = head_envelope(&x, b);
        if g > env {
            return Ok(Some(EnvelopeViolation {
                piece: "head",
                breakpoint: x,
                g_value: g,
                envelope_value: env,
            }));
        }
    }
    Ok(None)
}

/// Verifies the three-piece envelope on a critical set.
///
/// Preconditions: `λ(A+A) = diam(A) + λ(A) < 3λ(A)`, checked exactly.
/// Candidates `b`: within each component `[s, e]` of the translated set
/// with `e - s >= Δ`, the unique anchored offset `p = 2(s - g(s))` (the
/// only point where `g(p) = p/2` can hold with `[p, p+Δ] ⊆ A`), kept when
/// `s <= p <= e - Δ`. Each candidate is checked on all three pieces; the
/// report lists every candidate with its first violation, and passes if at
/// least one candidate satisfies the whole envelope.
pub fn critical_envelope_check(a: &IntervalUnion) -> Result<EnvelopeCheck, ContinuumError> {
    let lam = a.measure()?;
    let d = a.diam()?;
    let sum = a.minkowski_sum(a)?.measure()?;
    let three_lam = &lam * Rational::from_integer(BigInt::from(3));
    if sum != &d + &lam || !(sum < three_lam) {
        return Err(ContinuumError::NotCritical {
            sum: rational_to_string(&sum),
            diam_plus_lam: rational_to_string(&(&d + &lam)),
            three_lam: rational_to_string(&three_lam),
        });
    }
    let inf = a.inf().unwrap().clone();
    let t = a.translate(&(-&inf));
    let two = Rational::from_integer(BigInt::from(2));
    let delta = &two * &lam - &d;
    debug_assert!(delta.is_positive());

    // Anchored candidate per long-enough component.
    let mut bs: Vec<Rational> = Vec::new();
    for (s, e) in t.intervals() {
        if (e - s) < delta {
            continue;
        }
        let p = &two * (s - t.measure_up_to(s));
        if &p >= s && p <= e - &delta && !bs.contains(&p) {
            bs.push(p);
        }
    }
    if bs.is_empty() {
        return Err(ContinuumError::NoCandidateInterval);
    }

    let reflected = t.reflect(&d);
    let mut candidates = Vec::new();
    for b in bs {
        let violation = check_candidate(&t, &reflected, &b, &delta, &d)?;
        candidates.push(EnvelopeCandidate {
            passed: violation.is_none(),
            violation,
            b,
        });
    }
    let verdict = if candidates.iter().any(|c| c.passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(EnvelopeCheck {
        delta,
        candidates,
        verdict,
    })
}

fn check_candidate(
    t: &IntervalUnion,
    reflected: &IntervalUnion,
    b: &Rational,
    delta: &Rational,
    d: &Rational,
) -> Result<Option<EnvelopeViolation>, ContinuumError> {
    let two = Rational::from_integer(BigInt::from(2));
    // Middle: [b, b+Δ] ⊆ A and g(b) = b/2 pin g(x) = x - b/2 on the piece.
    let mid_hi = b + delta;
    if !t.contains_interval(b, &mid_hi) || t.measure_up_to(b) != b / &two {
        return Ok(Some(EnvelopeViolation {
            piece: "middle",
            breakpoint: b.clone(),
            g_value: t.measure_up_to(b),
            envelope_value: b / &two,
        }));
    }
    if let Some(v) = prefix_envelope_violation(t, b)? {
        return Ok(Some(v));
    }
    // Tail via reflection: g2(x) >= λ(A) - b2·h((d-x)/b2) on [b+Δ, d]
    // ⟺ the reflected prefix runs under the head envelope with b2.
    let b2 = d - delta - b;
    if let Some(v) = prefix_envelope_violation(reflected, &b2)? {
        return Ok(Some(EnvelopeViolation {
            piece: "tail",
            breakpoint: d - &v.breakpoint,
            g_value: v.g_value,
            envelope_value: v.envelope_value,
        }));
    }
    Ok(None)
}
