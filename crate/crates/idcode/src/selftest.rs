//! The invariant suite behind `idcode selftest`.
//!
//! Each check returns a pass/fail line; the quick mode shrinks sample counts
//! and grid sizes so the whole run stays well under a minute.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::construct;
use crate::oracle::{self, SearchBudget};
use crate::topology::{Radius, Topology, TopologyKind, VertexSet};
use crate::verify;

/// One named check with its outcome.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// All check outcomes of one run.
#[derive(Debug, Clone)]
pub struct Summary {
    pub checks: Vec<CheckResult>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

const RNG_SEED: u64 = 0x1dc0de;

fn radius(x: usize) -> Radius {
    Radius::new(x).expect("positive radius")
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> VertexSet {
    let mut s = VertexSet::new(n);
    for v in 1..=n {
        if rng.gen_bool(density) {
            s.insert(v);
        }
    }
    s
}

fn pass(name: &'static str, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed: true,
        detail,
    }
}

fn fail(name: &'static str, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed: false,
        detail,
    }
}

/// Worked examples reproduced bit-exactly.
fn check_worked_examples() -> CheckResult {
    let name = "worked-examples";
    let budget = SearchBudget::default();

    let s = match construct::stream(21, 5, 1, TopologyKind::Cycle) {
        Ok(s) => s,
        Err(e) => return fail(name, e.to_string()),
    };
    if s.body != vec![1, 6, 11, 16, 21] || s.tail != Some(5) {
        return fail(name, format!("stream(21, 5, 1) gave {s:?}"));
    }

    let fs = match construct::full_streams(21, 9) {
        Ok(fs) => fs,
        Err(e) => return fail(name, e.to_string()),
    };
    if fs[2].vertices != vec![3, 12, 21, 9, 18, 6, 15, 3] {
        return fail(name, format!("full stream 3 of (21, 9) gave {:?}", fs[2]));
    }

    for (n, labels) in [(11usize, vec![1, 2, 5, 9]), (6, vec![1, 3, 5])] {
        let t = Topology::cycle(n).expect("valid cycle");
        let d = VertexSet::from_labels(n, labels.iter().copied()).expect("valid labels");
        if !verify::is_r_ld(&t, &d, radius(2)).ok {
            return fail(name, format!("witness {labels:?} fails 2-LD on C_{n}"));
        }
        let min = match oracle::min_ld(&t, radius(2), budget) {
            Ok(res) => res.minimum,
            Err(e) => return fail(name, e.to_string()),
        };
        if min != Some(labels.len()) {
            return fail(
                name,
                format!("witness {labels:?} on C_{n} is not optimal (oracle: {min:?})"),
            );
        }
    }

    match construct::build_ic_odd_cycle(9, radius(3)) {
        Ok(c) if c.code.labels() == vec![1, 2, 4, 5, 7, 8] => {}
        other => return fail(name, format!("C_9 r=3 construction gave {other:?}")),
    }
    pass(name, "streams, full streams, and witness sets match".into())
}

/// Full-stream concatenation covers every constraint exactly once.
fn check_stream_algebra(quick: bool) -> CheckResult {
    let name = "stream-algebra";
    let max_n = if quick { 25 } else { 40 };
    let mut cells = 0usize;
    for n in 3..=max_n {
        for s in 1..=n {
            let fs = match construct::full_streams(n, s) {
                Ok(fs) => fs,
                Err(e) => return fail(name, e.to_string()),
            };
            let mut left = vec![0usize; n + 1];
            let mut appearances = vec![0usize; n + 1];
            for f in &fs {
                for w in f.vertices.windows(2) {
                    left[w[0]] += 1;
                    appearances[w[0]] += 1;
                    appearances[w[1]] += 1;
                }
            }
            if left[1..].iter().any(|&c| c != 1) {
                return fail(name, format!("n={n} s={s}: uneven left-endpoint cover"));
            }
            if appearances[1..].iter().any(|&c| c != 2) {
                return fail(name, format!("n={n} s={s}: vertex not in exactly 2 constraints"));
            }
            cells += 1;
        }
    }
    pass(name, format!("{cells} (n, s) grids consistent"))
}

fn cycle_equiv_sample(
    rng: &mut ChaCha8Rng,
    n: usize,
    r: Radius,
) -> std::result::Result<(), String> {
    let t = Topology::cycle(n).map_err(|e| e.to_string())?;
    let density = rng.gen_range(0.3..0.95);
    let d = random_subset(rng, n, density);
    let definitional = verify::is_r_ic(&t, &d, r).ok;
    let (lemma, verdict) =
        verify::check_cycle_characterization(n, r, &d).map_err(|e| e.to_string())?;
    if definitional != verdict.ok {
        return Err(format!(
            "n={n} r={} D={:?}: definitional {definitional} vs {} {}",
            r.get(),
            d.labels(),
            lemma.as_str(),
            verdict.ok
        ));
    }
    Ok(())
}

/// Characterization lemmas agree with the definitional check on random
/// samples throughout their applicability ranges.
fn check_characterization_equivalence(quick: bool) -> CheckResult {
    let name = "characterization-equivalence";
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let samples = if quick { 1_500 } else { 10_000 };

    // Lemma 2 range: n >= 4r+2
    for _ in 0..samples {
        let r = rng.gen_range(1..=4usize);
        let n = rng.gen_range(4 * r + 2..=4 * r + 14);
        if let Err(e) = cycle_equiv_sample(&mut rng, n, radius(r)) {
            return fail(name, e);
        }
    }
    // Lemma 19 range: 3r+2 <= n <= 4r+1
    for _ in 0..samples {
        let r = rng.gen_range(1..=8usize);
        let n = rng.gen_range(3 * r + 2..=4 * r + 1);
        if let Err(e) = cycle_equiv_sample(&mut rng, n, radius(r)) {
            return fail(name, e);
        }
    }
    // Lemma 5 range: 2r+5 <= n <= 3r+1 (nonempty from r = 4)
    for _ in 0..samples {
        let r = rng.gen_range(4..=12usize);
        let n = rng.gen_range(2 * r + 5..=3 * r + 1);
        if let Err(e) = cycle_equiv_sample(&mut rng, n, radius(r)) {
            return fail(name, e);
        }
    }
    // Lemma 10 on paths: n >= 2r+1
    for _ in 0..samples {
        let r = rng.gen_range(1..=4usize);
        let n = rng.gen_range(2 * r + 1..=2 * r + 16);
        let t = Topology::path(n).expect("valid path");
        let density = rng.gen_range(0.3..0.95);
        let d = random_subset(&mut rng, n, density);
        let definitional = verify::is_r_ic(&t, &d, radius(r)).ok;
        let verdict = match verify::check_path_characterization(n, radius(r), &d) {
            Ok(v) => v,
            Err(e) => return fail(name, e.to_string()),
        };
        if definitional != verdict.ok {
            return fail(
                name,
                format!(
                    "path n={n} r={r} D={:?}: definitional {definitional} vs Lemma10 {}",
                    d.labels(),
                    verdict.ok
                ),
            );
        }
    }
    pass(name, format!("{samples} samples per lemma, zero discrepancies"))
}

/// Lemma 12: every code vertex 2-separates at most two pairs of each family.
fn check_census(quick: bool) -> CheckResult {
    let name = "separation-census";
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED ^ 0xce1505);
    let samples = if quick { 300 } else { 1_000 };
    for _ in 0..samples {
        let n = rng.gen_range(6..=30usize);
        let density = rng.gen_range(0.2..0.9);
        let d = random_subset(&mut rng, n, density);
        let census = match verify::separation_census(n, &d) {
            Ok(c) => c,
            Err(e) => return fail(name, e.to_string()),
        };
        for e in census {
            if e.consecutive > 2 || e.d_consecutive > 2 {
                return fail(name, format!("n={n} D={:?}: {e:?}", d.labels()));
            }
        }
    }
    pass(name, format!("{samples} random codes within the bound"))
}

/// Closed forms, constructions, and the oracle agree on the small grid.
fn check_oracle_agreement(quick: bool) -> CheckResult {
    let name = "oracle-agreement";
    let budget = SearchBudget::default();
    let (max_r_cycle, max_n) = if quick { (2, 15) } else { (4, 19) };
    let mut cells = 0usize;

    for r in 1..=max_r_cycle {
        let mut n = 2 * r + 3;
        while n <= max_n {
            let bound = match bounds::min_ic_odd_cycle(n, radius(r)) {
                Ok(b) => b,
                Err(e) => return fail(name, e.to_string()),
            };
            let t = Topology::cycle(n).expect("valid cycle");
            let res = match oracle::min_ic(&t, radius(r), budget) {
                Ok(res) => res,
                Err(e) => return fail(name, e.to_string()),
            };
            if res.minimum != Some(bound.value) {
                return fail(
                    name,
                    format!("cycle n={n} r={r}: bound {} vs oracle {:?}", bound.value, res.minimum),
                );
            }
            let c = match construct::build_ic_odd_cycle(n, radius(r)) {
                Ok(c) => c,
                Err(e) => return fail(name, format!("cycle n={n} r={r}: {e}")),
            };
            if c.code.len() != bound.value {
                return fail(name, format!("cycle n={n} r={r}: construction size off"));
            }
            cells += 1;
            n += 2;
        }
    }

    let max_r_path = if quick { 2 } else { 3 };
    let max_n_path = if quick { 14 } else { 18 };
    for r in 1..=max_r_path {
        for n in 2 * r + 1..=max_n_path {
            let bound = match bounds::min_ic_path(n, radius(r)) {
                Ok(b) => b,
                Err(e) => return fail(name, e.to_string()),
            };
            let t = Topology::path(n).expect("valid path");
            let res = match oracle::min_ic(&t, radius(r), budget) {
                Ok(res) => res,
                Err(e) => return fail(name, e.to_string()),
            };
            if res.minimum != Some(bound.value) {
                return fail(
                    name,
                    format!("path n={n} r={r}: bound {} vs oracle {:?}", bound.value, res.minimum),
                );
            }
            let c = match construct::build_ic_path(n, radius(r)) {
                Ok(c) => c,
                Err(e) => return fail(name, format!("path n={n} r={r}: {e}")),
            };
            if c.code.len() != bound.value {
                return fail(name, format!("path n={n} r={r}: construction size off"));
            }
            cells += 1;
        }
    }

    let max_n_ld = if quick { 15 } else { 18 };
    for n in 3..=max_n_ld {
        let bound = match bounds::min_ld2_cycle(n) {
            Ok(b) => b,
            Err(e) => return fail(name, e.to_string()),
        };
        if bound.value < bounds::ld_lower_bound(n) {
            return fail(name, format!("LD n={n}: below the counting lower bound"));
        }
        let t = Topology::cycle(n).expect("valid cycle");
        let res = match oracle::min_ld(&t, radius(2), budget) {
            Ok(res) => res,
            Err(e) => return fail(name, e.to_string()),
        };
        if res.minimum != Some(bound.value) {
            return fail(
                name,
                format!("LD n={n}: bound {} vs oracle {:?}", bound.value, res.minimum),
            );
        }
        let c = match construct::build_ld2_cycle(n) {
            Ok(c) => c,
            Err(e) => return fail(name, format!("LD n={n}: {e}")),
        };
        if c.code.len() != bound.value {
            return fail(name, format!("LD n={n}: construction size off"));
        }
        cells += 1;
    }
    pass(name, format!("{cells} instances agree across bound, construction, oracle"))
}

/// Constructions stay valid and formula-sized far beyond the oracle range.
fn check_construction_grid(quick: bool) -> CheckResult {
    let name = "construction-grid";
    let max_n = if quick { 101 } else { 301 };
    let mut cells = 0usize;
    for r in 1..=6 {
        let mut n = 2 * r + 3;
        while n <= max_n {
            match construct::build_ic_odd_cycle(n, radius(r)) {
                Ok(c) => {
                    let bound = bounds::min_ic_odd_cycle(n, radius(r)).expect("admissible");
                    if c.code.len() != bound.value {
                        return fail(name, format!("cycle n={n} r={r}: size off"));
                    }
                }
                Err(e) => return fail(name, format!("cycle n={n} r={r}: {e}")),
            }
            cells += 1;
            n += 2;
        }
        for n in 2 * r + 1..=max_n {
            match construct::build_ic_path(n, radius(r)) {
                Ok(c) => {
                    let bound = bounds::min_ic_path(n, radius(r)).expect("admissible");
                    if c.code.len() != bound.value {
                        return fail(name, format!("path n={n} r={r}: size off"));
                    }
                }
                Err(e) => return fail(name, format!("path n={n} r={r}: {e}")),
            }
            cells += 1;
        }
    }
    for n in 3..=max_n {
        match construct::build_ld2_cycle(n) {
            Ok(c) => {
                let bound = bounds::min_ld2_cycle(n).expect("n >= 3");
                if c.code.len() != bound.value {
                    return fail(name, format!("LD n={n}: size off"));
                }
            }
            Err(e) => return fail(name, format!("LD n={n}: {e}")),
        }
        cells += 1;
    }
    pass(name, format!("{cells} constructions verified at formula size"))
}

/// Pruned and unpruned oracle runs agree (guards the pruning rules).
fn check_oracle_audit(quick: bool) -> CheckResult {
    let name = "oracle-self-audit";
    let budget = SearchBudget::default();
    let max_n = if quick { 9 } else { 12 };
    for n in 3..=max_n {
        for kind in [TopologyKind::Path, TopologyKind::Cycle] {
            let t = Topology::new(kind, n).expect("valid topology");
            for r in 1..=2 {
                let pruned = oracle::min_ic(&t, radius(r), budget);
                let plain = oracle::min_ic_unpruned(&t, radius(r), budget);
                match (pruned, plain) {
                    (Ok(a), Ok(b)) if a.minimum == b.minimum => {}
                    other => return fail(name, format!("IC {kind:?} n={n} r={r}: {other:?}")),
                }
                let pruned = oracle::min_ld(&t, radius(r), budget);
                let plain = oracle::min_ld_unpruned(&t, radius(r), budget);
                match (pruned, plain) {
                    (Ok(a), Ok(b)) if a.minimum == b.minimum => {}
                    other => return fail(name, format!("LD {kind:?} n={n} r={r}: {other:?}")),
                }
            }
        }
    }
    pass(name, format!("pruned and unpruned runs agree up to n = {max_n}"))
}

/// Run the whole suite.
pub fn run(quick: bool) -> Summary {
    Summary {
        checks: vec![
            check_worked_examples(),
            check_stream_algebra(quick),
            check_characterization_equivalence(quick),
            check_census(quick),
            check_oracle_agreement(quick),
            check_construction_grid(quick),
            check_oracle_audit(quick),
        ],
    }
}
