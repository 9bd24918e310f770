//! Property-based invariants: symmetry, monotonicity, and stream algebra.

use idcode::bounds::gcd;
use idcode::construct::{full_streams, stream};
use idcode::topology::{cyclic, Radius, Topology, TopologyKind, VertexSet};
use idcode::verify;
use proptest::prelude::*;

fn radius(r: usize) -> Radius {
    Radius::new(r).unwrap()
}

fn subset_from_mask(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_labels(n, (1..=n).filter(|v| mask >> (v - 1) & 1 == 1)).unwrap()
}

/// (n, r, mask) with n in 3..=24, r in 1..=3, mask over 1..=n.
fn instance_strategy() -> impl Strategy<Value = (usize, usize, u64)> {
    (3usize..=24, 1usize..=3).prop_flat_map(|(n, r)| {
        (Just(n), Just(r), 0u64..(1u64 << n))
    })
}

proptest! {
    /// Rotating a cycle code never changes the identifying verdict.
    #[test]
    fn ic_verdict_is_rotation_invariant((n, r, mask) in instance_strategy(), shift in 0usize..24) {
        let t = Topology::cycle(n).unwrap();
        let code = subset_from_mask(n, mask);
        let rotated = VertexSet::from_labels(
            n,
            code.iter().map(|v| cyclic((v + shift) as i64, n)),
        ).unwrap();
        prop_assert_eq!(
            verify::is_r_ic(&t, &code, radius(r)).ok,
            verify::is_r_ic(&t, &rotated, radius(r)).ok
        );
    }

    /// Reflecting a code (cycle or path) never changes the verdict.
    #[test]
    fn ic_verdict_is_reflection_invariant((n, r, mask) in instance_strategy()) {
        let code = subset_from_mask(n, mask);
        let reflected = VertexSet::from_labels(n, code.iter().map(|v| n + 1 - v)).unwrap();
        for kind in [TopologyKind::Cycle, TopologyKind::Path] {
            let t = Topology::new(kind, n).unwrap();
            prop_assert_eq!(
                verify::is_r_ic(&t, &code, radius(r)).ok,
                verify::is_r_ic(&t, &reflected, radius(r)).ok
            );
        }
    }

    /// Adding a vertex to an identifying code keeps it identifying, and
    /// likewise for locating-dominating sets.
    #[test]
    fn codes_are_closed_under_supersets((n, r, mask) in instance_strategy(), extra in 1usize..=24) {
        prop_assume!(extra <= n);
        let code = subset_from_mask(n, mask);
        let mut larger = code.clone();
        larger.insert(extra);
        for kind in [TopologyKind::Cycle, TopologyKind::Path] {
            let t = Topology::new(kind, n).unwrap();
            if verify::is_r_ic(&t, &code, radius(r)).ok {
                prop_assert!(verify::is_r_ic(&t, &larger, radius(r)).ok);
            }
            if verify::is_r_ld(&t, &code, radius(r)).ok {
                prop_assert!(verify::is_r_ld(&t, &larger, radius(r)).ok);
            }
        }
    }

    /// An identifying code is always locating-dominating.
    #[test]
    fn ic_implies_ld((n, r, mask) in instance_strategy()) {
        let code = subset_from_mask(n, mask);
        for kind in [TopologyKind::Cycle, TopologyKind::Path] {
            let t = Topology::new(kind, n).unwrap();
            if verify::is_r_ic(&t, &code, radius(r)).ok {
                prop_assert!(verify::is_r_ld(&t, &code, radius(r)).ok);
            }
        }
    }

    /// Stream bodies with step s partition 1..=n.
    #[test]
    fn streams_partition_vertices(n in 1usize..=60, s in 1usize..=60) {
        prop_assume!(s <= n);
        let mut seen = vec![false; n + 1];
        for i in 1..=s {
            for kind in [TopologyKind::Path, TopologyKind::Cycle] {
                let st = stream(n, s, i, kind).unwrap();
                prop_assert!(st.body.first() == Some(&i));
                if kind == TopologyKind::Path {
                    for &v in &st.body {
                        prop_assert!(!seen[v], "vertex {v} in two streams");
                        seen[v] = true;
                    }
                }
            }
        }
        prop_assert!(seen[1..].iter().all(|&b| b));
    }

    /// There are gcd(s, n) full streams on the cycle, jointly covering every
    /// vertex exactly once apart from the repeated closing vertex.
    #[test]
    fn full_streams_cover_cycle(n in 1usize..=60, s in 1usize..=60) {
        prop_assume!(s <= n);
        let fs = full_streams(n, s).unwrap();
        prop_assert_eq!(fs.len(), gcd(s, n));
        let mut count = vec![0usize; n + 1];
        for f in &fs {
            prop_assert_eq!(f.vertices.first(), f.vertices.last());
            prop_assert_eq!(f.vertices.len(), n / gcd(s, n) + 1);
            for &v in &f.vertices[..f.vertices.len() - 1] {
                count[v] += 1;
            }
        }
        prop_assert!(count[1..].iter().all(|&c| c == 1));
    }

    /// The separation census never exceeds two pairs per code vertex.
    #[test]
    fn census_counts_at_most_two(n in 3usize..=24, mask in 0u64..(1u64 << 24)) {
        let code = subset_from_mask(n, mask & ((1u64 << n) - 1));
        for entry in verify::separation_census(n, &code).unwrap() {
            prop_assert!(entry.consecutive <= 2);
            prop_assert!(entry.d_consecutive <= 2);
        }
    }
}
