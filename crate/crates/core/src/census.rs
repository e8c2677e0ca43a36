//! Exhaustive enumeration of left-stable sets at small diameter.
//!
//! The census brute-forces the hypothesis class of the prefix-bound theorem
//! (left-stable, min 0, max n, gcd 1, half cardinality), verifying the bound
//! exhaustively and listing every set that attains it. The backtracking
//! enumerator decides membership of 1..n-1 in ascending order and forces all
//! closure sums on each insertion; `naive_enumerate_left_stable` is the
//! independent 2^(n-1) filter it is checked against.

use crate::intset::{prefix_count, IntSet, SetError};
use crate::report::{Report, Verdict};
use crate::stability::{h_disc, StabilityError};
use rayon::prelude::*;
use thiserror::Error;

/// Default ceiling for census diameter; a full run at 28 is minutes of work.
pub const DEFAULT_CENSUS_CAP: u32 = 28;

/// Subtree tasks split off after this many membership decisions.
const SPLIT_DEPTH: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("n={n} outside supported range [2, {cap}]")]
    NOutOfRange { n: u32, cap: u32 },
    #[error("x out of range: x={x} must satisfy 2 <= x <= {n}")]
    XOutOfRange { x: i64, n: u32 },
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(
        "census exceeded the theorem bound at n={n}, x={x}: achieved {achieved} > bound {bound} \
         (fatal: falsifies the prefix-bound theorem)"
    )]
    BoundExceeded {
        n: u32,
        x: u32,
        achieved: usize,
        bound: usize,
    },
}

/// Filters applied on top of the closure property (which always requires
/// `0, n ∈ A` and `a+b ∈ A` whenever `a, b ∈ A` and `a+b <= n`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CensusConstraints {
    pub require_cardinality: Option<usize>,
    pub require_gcd1: bool,
}

impl CensusConstraints {
    /// The prefix-bound theorem's hypothesis class at diameter `n`:
    /// gcd 1 and cardinality `floor((n+1)/2) + 1`.
    pub fn theorem_class(n: u32) -> Self {
        CensusConstraints {
            require_cardinality: Some((n as usize).div_ceil(2) + 1),
            require_gcd1: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// 0 uses the calling thread / global pool; otherwise a dedicated pool.
    pub jobs: usize,
    pub max_n: u32,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            jobs: 0,
            max_n: DEFAULT_CENSUS_CAP,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Undecided,
    In,
    Out,
}

/// Backtracking state. `trail` records forced insertions for undo.
#[derive(Clone)]
struct Search {
    n: u32,
    statuses: Vec<Status>,
    in_elems: Vec<u32>,
    undecided: usize,
    constraints: CensusConstraints,
}

impl Search {
    fn new(n: u32, constraints: CensusConstraints) -> Self {
        let mut statuses = vec![Status::Undecided; n as usize + 1];
        statuses[0] = Status::In;
        statuses[n as usize] = Status::In;
        Search {
            n,
            statuses,
            in_elems: vec![0, n],
            undecided: n.saturating_sub(1) as usize,
            constraints,
        }
    }

    /// Inserts `v` and everything its sums force, recording insertions in
    /// `trail`. Returns false on contradiction with an earlier exclusion.
    fn force_in(&mut self, v: u32, trail: &mut Vec<u32>) -> bool {
        let mut queue = vec![v];
        while let Some(u) = queue.pop() {
            match self.statuses[u as usize] {
                Status::In => continue,
                Status::Out => return false,
                Status::Undecided => {}
            }
            self.statuses[u as usize] = Status::In;
            self.undecided -= 1;
            self.in_elems.push(u);
            trail.push(u);
            if let Some(c) = self.constraints.require_cardinality {
                if self.in_elems.len() > c {
                    return false;
                }
            }
            for i in 0..self.in_elems.len() {
                let s = self.in_elems[i] as u64 + u as u64;
                if s <= self.n as u64 {
                    let s = s as u32;
                    if self.statuses[s as usize] == Status::Out {
                        return false;
                    }
                    if self.statuses[s as usize] == Status::Undecided {
                        queue.push(s);
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: &[u32]) {
        for &u in trail {
            self.statuses[u as usize] = Status::Undecided;
            self.undecided += 1;
        }
        self.in_elems.truncate(self.in_elems.len() - trail.len());
    }

    fn feasible(&self) -> bool {
        match self.constraints.require_cardinality {
            Some(c) => self.in_elems.len() <= c && self.in_elems.len() + self.undecided >= c,
            None => true,
        }
    }

    fn leaf_accepts(&self) -> bool {
        if let Some(c) = self.constraints.require_cardinality {
            if self.in_elems.len() != c {
                return false;
            }
        }
        if self.constraints.require_gcd1 {
            let mut g = 0u32;
            for &v in &self.in_elems {
                g = gcd(g, v);
                if g == 1 {
                    break;
                }
            }
            if g != 1 {
                return false;
            }
        }
        true
    }

    fn emit(&self) -> IntSet {
        IntSet::from_elements(self.in_elems.iter().copied())
    }

    /// Depth-first over decisions `idx, idx+1, ..., n-1`, exclusion branch
    /// first, so leaves come out in lexicographic membership-vector order.
    fn run(&mut self, idx: u32, visit: &mut impl FnMut(IntSet)) {
        if !self.feasible() {
            return;
        }
        let mut idx = idx;
        while idx < self.n && self.statuses[idx as usize] != Status::Undecided {
            idx += 1;
        }
        if idx >= self.n {
            if self.leaf_accepts() {
                visit(self.emit());
            }
            return;
        }
        self.statuses[idx as usize] = Status::Out;
        self.undecided -= 1;
        self.run(idx + 1, visit);
        self.statuses[idx as usize] = Status::Undecided;
        self.undecided += 1;

        let mut trail = Vec::new();
        if self.force_in(idx, &mut trail) {
            self.run(idx + 1, visit);
        }
        self.undo(&trail);
    }

    /// Like `run`, but stops at `depth` and hands the remaining subtree off
    /// as a cloned task. Task order equals serial traversal order.
    fn split(&mut self, idx: u32, depth: u32, tasks: &mut Vec<Search>) {
        if !self.feasible() {
            return;
        }
        let mut idx = idx;
        while idx < self.n && idx <= depth && self.statuses[idx as usize] != Status::Undecided {
            idx += 1;
        }
        if idx >= self.n || idx > depth {
            tasks.push(self.clone());
            return;
        }
        self.statuses[idx as usize] = Status::Out;
        self.undecided -= 1;
        self.split(idx + 1, depth, tasks);
        self.statuses[idx as usize] = Status::Undecided;
        self.undecided += 1;

        let mut trail = Vec::new();
        if self.force_in(idx, &mut trail) {
            self.split(idx + 1, depth, tasks);
        }
        self.undo(&trail);
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_n(n: u32, cap: u32) -> Result<(), CensusError> {
    if n < 2 || n > cap {
        return Err(CensusError::NOutOfRange { n, cap });
    }
    Ok(())
}

/// Enumerates every `A ⊆ [0, n]` with `0, n ∈ A` closed under addition
/// within `[0, n]`, subject to `constraints`. Deterministic: lexicographic
/// by membership vector of `1..n-1` (absent before present), independent of
/// the worker count.
pub fn enumerate_left_stable(
    n: u32,
    constraints: &CensusConstraints,
) -> Result<Vec<IntSet>, CensusError> {
    enumerate_left_stable_opts(n, constraints, &EnumOptions::default())
}

pub fn enumerate_left_stable_opts(
    n: u32,
    constraints: &CensusConstraints,
    opts: &EnumOptions,
) -> Result<Vec<IntSet>, CensusError> {
    check_n(n, opts.max_n)?;
    let mut root = Search::new(n, *constraints);
    let mut tasks = Vec::new();
    root.split(1, SPLIT_DEPTH.min(n.saturating_sub(1)), &mut tasks);
    let run_task = |mut task: Search| {
        let mut out = Vec::new();
        task.run(1, &mut |s| out.push(s));
        out
    };
    let chunks: Vec<Vec<IntSet>> = if opts.jobs == 0 {
        tasks.into_iter().map(run_task).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| tasks.into_par_iter().map(run_task).collect())
    };
    Ok(chunks.into_iter().flatten().collect())
}

/// Reference enumerator: filter all 2^(n-1) subsets of `[1, n-1]` with a
/// direct pairwise closure scan. Independent of the backtracking path;
/// used as its oracle. Output is ordered by subset bitmask, not
/// lexicographically — compare as sets.
pub fn naive_enumerate_left_stable(
    n: u32,
    constraints: &CensusConstraints,
) -> Result<Vec<IntSet>, CensusError> {
    check_n(n, 30)?;
    let mut out = Vec::new();
    let inner = n - 1;
    for mask in 0u64..(1u64 << inner) {
        let mut elems = vec![0u32];
        for i in 0..inner {
            if mask >> i & 1 == 1 {
                elems.push(i + 1);
            }
        }
        elems.push(n);
        let closed = 'scan: {
            for (i, &p) in elems.iter().enumerate() {
                for &q in &elems[i..] {
                    let s = p + q;
                    if s > n {
                        break;
                    }
                    if !elems.contains(&s) {
                        break 'scan false;
                    }
                }
            }
            true
        };
        if !closed {
            continue;
        }
        if let Some(c) = constraints.require_cardinality {
            if elems.len() != c {
                continue;
            }
        }
        if constraints.require_gcd1 {
            let mut g = 0;
            for &v in &elems {
                g = gcd(g, v);
            }
            if g != 1 {
                continue;
            }
        }
        out.push(IntSet::from_elements(elems));
    }
    Ok(out)
}

/// Per-(n, x) census record over the theorem's hypothesis class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub n: u32,
    pub x: u32,
    /// `h(n, x) + 1`, the theorem's cap on the prefix count.
    pub bound: usize,
    pub achieved_max: usize,
    pub extremal_sets: Vec<IntSet>,
    pub total_enumerated: usize,
}

impl CensusResult {
    pub fn sharp(&self) -> bool {
        self.achieved_max == self.bound
    }

    /// True when the row falsifies the prefix-bound theorem.
    pub fn exceeded(&self) -> bool {
        self.achieved_max > self.bound
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.x,
            self.bound,
            self.achieved_max,
            self.extremal_sets.len(),
            self.total_enumerated
        )
    }
}

pub const CENSUS_CSV_HEADER: &str = "n,x,bound,achieved_max,num_extremal,total_enumerated";

fn census_over_class(n: u32, x: u32, class: &[IntSet]) -> Result<CensusResult, CensusError> {
    let bound = h_disc(n, x as i64)?.value as usize + 1;
    let mut achieved_max = 0;
    let mut extremal_sets = Vec::new();
    for s in class {
        let c = prefix_count(s, x as i64);
        if c > achieved_max {
            achieved_max = c;
            extremal_sets.clear();
        }
        if c == achieved_max {
            extremal_sets.push(s.clone());
        }
    }
    if achieved_max > bound {
        return Err(CensusError::BoundExceeded {
            n,
            x,
            achieved: achieved_max,
            bound,
        });
    }
    Ok(CensusResult {
        n,
        x,
        bound,
        achieved_max,
        extremal_sets,
        total_enumerated: class.len(),
    })
}

/// Max prefix count at `x` over every left-stable `A` on `[0, n]` with
/// min 0, max n, gcd 1 and cardinality `floor((n+1)/2) + 1`. Exceeding the
/// bound is a fatal error (it would falsify the theorem).
pub fn sharpness_census(n: u32, x: i64) -> Result<CensusResult, CensusError> {
    sharpness_census_opts(n, x, &EnumOptions::default())
}

pub fn sharpness_census_opts(
    n: u32,
    x: i64,
    opts: &EnumOptions,
) -> Result<CensusResult, CensusError> {
    if x < 2 || x > n as i64 {
        return Err(CensusError::XOutOfRange { x, n });
    }
    let class = enumerate_left_stable_opts(n, &CensusConstraints::theorem_class(n), opts)?;
    census_over_class(n, x as u32, &class)
}

/// One enumeration pass, census rows for every `x ∈ [2, n]`. Fails fast on
/// a bound violation, like `sharpness_census`.
pub fn full_census(n: u32, opts: &EnumOptions) -> Result<Vec<CensusResult>, CensusError> {
    check_n(n, opts.max_n)?;
    let class = enumerate_left_stable_opts(n, &CensusConstraints::theorem_class(n), opts)?;
    (2..=n).map(|x| census_over_class(n, x, &class)).collect()
}

/// Diagnostic variant of `full_census` that keeps going past bound
/// violations, so a whole sweep can be cataloged even when some rows
/// falsify the theorem. Rows with `achieved_max > bound` are returned
/// as-is; callers decide how loudly to report them.
pub fn full_census_unchecked(n: u32, opts: &EnumOptions) -> Result<Vec<CensusResult>, CensusError> {
    check_n(n, opts.max_n)?;
    let class = enumerate_left_stable_opts(n, &CensusConstraints::theorem_class(n), opts)?;
    (2..=n)
        .map(|x| match census_over_class(n, x, &class) {
            Ok(row) => Ok(row),
            Err(CensusError::BoundExceeded {
                n,
                x,
                achieved,
                bound,
            }) => {
                let extremal_sets = class
                    .iter()
                    .filter(|s| prefix_count(s, x as i64) == achieved)
                    .cloned()
                    .collect();
                Ok(CensusResult {
                    n,
                    x,
                    bound,
                    achieved_max: achieved,
                    extremal_sets,
                    total_enumerated: class.len(),
                })
            }
            Err(e) => Err(e),
        })
        .collect()
}

/// The two diameter-48 sets from the sharpness discussion, hardcoded.
pub fn remark_sets() -> (IntSet, IntSet) {
    (
        "0,11-13,22-26,33-48".parse().expect("fixture A"),
        "0,10-12,20-24,30-36,40-48".parse().expect("fixture B"),
    )
}

/// Checks the hardcoded diameter-48 fixtures: stability, anchoring, gcd,
/// cardinality 25, prefix count 4 at x = 13, and that the two sets are
/// distinct (the extremal set is not unique).
pub fn verify_remark_sets() -> Report {
    use crate::intset::stats;
    use crate::stability::is_left_stable;

    let (a, b) = remark_sets();
    let mut r = Report::new(Verdict::Pass);
    let mut all_ok = true;
    for (name, s) in [("A", &a), ("B", &b)] {
        let st = stats(s).expect("fixtures are nonempty");
        let stable = is_left_stable(s).map(|v| v.stable).unwrap_or(false);
        let checks = [
            ("STABLE", stable),
            ("MIN0", st.min == 0),
            ("MAX48", st.max == 48),
            ("GCD1", st.gcd_star == 1),
            ("CARD25", st.cardinality == 25),
            ("PREFIX13_IS_4", prefix_count(s, 13) == 4),
        ];
        for (field, ok) in checks {
            r.push(&format!("{name}_{field}"), ok);
            all_ok &= ok;
        }
    }
    r.push("A_NE_B", a != b);
    all_ok &= a != b;
    r.verdict = if all_ok { Verdict::Pass } else { Verdict::Fail };
    r
}
