//! Exhaustive ground-truth search for small instances.
//!
//! Subsets are enumerated by increasing cardinality and, within each
//! cardinality, in lexicographic order of the ascending label sequence, so
//! the first valid set found is both minimum and the lexicographically
//! smallest witness. Candidates are screened by necessary-condition pruning
//! rules held as data, which lets the self-audit swap in an unpruned run.

use crate::construct::CodeKind;
use crate::topology::{cyclic, Radius, Topology, TopologyKind, VertexSet};
use crate::{Error, Result};

/// Guard rails for the exponential search.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_n: usize,
    pub max_candidates: Option<u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_n: 20,
            max_candidates: None,
        }
    }
}

impl SearchBudget {
    pub fn with_max_n(max_n: usize) -> Self {
        SearchBudget {
            max_n,
            ..Default::default()
        }
    }
}

/// Outcome of an oracle run. `minimum` is None when no code of the requested
/// kind exists at all (inadmissible r-IC instances).
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub minimum: Option<usize>,
    pub witness: Option<VertexSet>,
    pub explored: u64,
}

/// Precomputed ball masks; bit v-1 stands for label v.
struct SearchCtx {
    n: usize,
    balls: Vec<u64>,
}

impl SearchCtx {
    fn new(t: &Topology, r: Radius) -> Self {
        let n = t.n();
        assert!(n <= 63, "oracle masks hold at most 63 vertices");
        let balls = (1..=n)
            .map(|v| {
                let mut m = 0u64;
                for u in t.ball(v, r).expect("in-range vertex").iter() {
                    m |= 1 << (u - 1);
                }
                m
            })
            .collect();
        SearchCtx { n, balls }
    }

    fn ball(&self, v: usize) -> u64 {
        self.balls[v - 1]
    }
}

/// A necessary condition a valid code must satisfy; `rejects` returns true
/// when the candidate provably cannot be valid.
pub struct PruneRule {
    pub name: &'static str,
    rejects: fn(&Topology, Radius, &SearchCtx, u64) -> bool,
}

/// No window of 2r+2 consecutive vertices may have both endpoints outside
/// the code (on admissible instances the two middle vertices would get equal
/// signatures). Applies to paths always and to cycles with n >= 2r+2.
fn endpoint_window_rejects(t: &Topology, r: Radius, _ctx: &SearchCtx, d: u64) -> bool {
    let n = t.n();
    let s = 2 * r.get() + 1;
    let absent = |v: usize| d >> (v - 1) & 1 == 0;
    match t.kind() {
        TopologyKind::Path => (1..=n.saturating_sub(s)).any(|i| absent(i) && absent(i + s)),
        TopologyKind::Cycle => {
            if n < s + 1 {
                return false;
            }
            (1..=n).any(|i| absent(i) && absent(cyclic((i + s) as i64, n)))
        }
    }
}

/// Every vertex outside the code needs a code vertex within distance r.
fn dominated_rejects(t: &Topology, _r: Radius, ctx: &SearchCtx, d: u64) -> bool {
    (1..=t.n()).any(|v| d >> (v - 1) & 1 == 0 && ctx.ball(v) & d == 0)
}

/// The pruning rules used for each code kind.
pub fn prune_rules(kind: CodeKind) -> Vec<PruneRule> {
    match kind {
        CodeKind::Identifying => vec![
            PruneRule {
                name: "endpoint-window",
                rejects: endpoint_window_rejects,
            },
            PruneRule {
                name: "dominated",
                rejects: dominated_rejects,
            },
        ],
        CodeKind::LocatingDominating => vec![PruneRule {
            name: "dominated",
            rejects: dominated_rejects,
        }],
    }
}

fn is_valid_mask(ctx: &SearchCtx, kind: CodeKind, d: u64) -> bool {
    let mut sigs: Vec<u64> = Vec::with_capacity(ctx.n);
    for v in 1..=ctx.n {
        if kind == CodeKind::LocatingDominating && d >> (v - 1) & 1 == 1 {
            continue;
        }
        let sig = ctx.ball(v) & d;
        if sig == 0 {
            return false;
        }
        sigs.push(sig);
    }
    for i in 0..sigs.len() {
        for j in i + 1..sigs.len() {
            if sigs[i] == sigs[j] {
                return false;
            }
        }
    }
    true
}

fn mask_to_set(n: usize, d: u64) -> VertexSet {
    VertexSet::from_labels(n, (1..=n).filter(|&v| d >> (v - 1) & 1 == 1))
        .expect("labels in range by construction")
}

/// Advance `idx` to the next c-combination of 0..n in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let c = idx.len();
    for i in (0..c).rev() {
        if idx[i] < n - (c - i) {
            idx[i] += 1;
            for j in i + 1..c {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn search(
    t: &Topology,
    r: Radius,
    kind: CodeKind,
    budget: SearchBudget,
    rules: &[PruneRule],
) -> Result<OracleResult> {
    let n = t.n();
    if n > budget.max_n {
        return Err(Error::BudgetExceeded {
            n,
            max_n: budget.max_n,
        });
    }
    if kind == CodeKind::Identifying && !t.admits_r_ic(r) {
        return Ok(OracleResult {
            minimum: None,
            witness: None,
            explored: 0,
        });
    }
    let ctx = SearchCtx::new(t, r);
    let mut explored: u64 = 0;
    for c in 1..=n {
        let mut idx: Vec<usize> = (0..c).collect();
        loop {
            explored += 1;
            if let Some(cap) = budget.max_candidates {
                if explored > cap {
                    return Err(Error::CandidateCapExceeded { cap });
                }
            }
            let d: u64 = idx.iter().fold(0, |m, &i| m | 1 << i);
            let pruned = rules.iter().any(|rule| (rule.rejects)(t, r, &ctx, d));
            if !pruned && is_valid_mask(&ctx, kind, d) {
                return Ok(OracleResult {
                    minimum: Some(c),
                    witness: Some(mask_to_set(n, d)),
                    explored,
                });
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    // the full vertex set is always an r-LD and, on admissible instances,
    // an r-IC, so the loop above cannot fall through
    Err(Error::Internal {
        reason: format!("search exhausted all subsets of {n} vertices without a hit"),
    })
}

/// Exact minimum r-identifying code size and lexicographically smallest
/// witness.
pub fn min_ic(t: &Topology, r: Radius, budget: SearchBudget) -> Result<OracleResult> {
    search(t, r, CodeKind::Identifying, budget, &prune_rules(CodeKind::Identifying))
}

/// Exact minimum r-locating-dominating set size; always feasible.
pub fn min_ld(t: &Topology, r: Radius, budget: SearchBudget) -> Result<OracleResult> {
    search(
        t,
        r,
        CodeKind::LocatingDominating,
        budget,
        &prune_rules(CodeKind::LocatingDominating),
    )
}

/// Pruning-free run, used by the self-audit to guard against pruning bugs.
pub fn min_ic_unpruned(t: &Topology, r: Radius, budget: SearchBudget) -> Result<OracleResult> {
    search(t, r, CodeKind::Identifying, budget, &[])
}

/// Pruning-free run for r-LD sets.
pub fn min_ld_unpruned(t: &Topology, r: Radius, budget: SearchBudget) -> Result<OracleResult> {
    search(t, r, CodeKind::LocatingDominating, budget, &[])
}

/// All optimal codes of the given kind, in lexicographic order. Restricted
/// to n <= min(budget.max_n, 14) because the full enumeration is kept
/// deliberately simple.
pub fn enumerate_optima(
    t: &Topology,
    r: Radius,
    kind: CodeKind,
    budget: SearchBudget,
) -> Result<Vec<VertexSet>> {
    let n = t.n();
    let cap = budget.max_n.min(14);
    if n > cap {
        return Err(Error::BudgetExceeded { n, max_n: cap });
    }
    let base = search(t, r, kind, budget, &[])?;
    let Some(minimum) = base.minimum else {
        return Ok(Vec::new());
    };
    let ctx = SearchCtx::new(t, r);
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..minimum).collect();
    loop {
        let d: u64 = idx.iter().fold(0, |m, &i| m | 1 << i);
        if is_valid_mask(&ctx, kind, d) {
            out.push(mask_to_set(n, d));
        }
        if !next_combination(&mut idx, n) {
            break;
        }
    }
    Ok(out)
}
