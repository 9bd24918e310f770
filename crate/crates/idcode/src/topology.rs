//! Path and cycle instances, distances and radius-r balls.
//!
//! Vertices are labeled 1..=n everywhere; cycle arithmetic is modulo n.

use crate::{Error, Result};

/// Which graph family an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TopologyKind {
    Path,
    Cycle,
}

impl TopologyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TopologyKind::Path => "path",
            TopologyKind::Cycle => "cycle",
        }
    }
}

/// A path or cycle on n labeled vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    kind: TopologyKind,
    n: usize,
}

/// A ball radius, always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radius(usize);

impl Radius {
    pub fn new(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroRadius);
        }
        Ok(Radius(r))
    }

    pub fn get(&self) -> usize {
        self.0
    }
}

impl Topology {
    pub fn new(kind: TopologyKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewVertices { n, min: 1 });
        }
        Ok(Topology { kind, n })
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(TopologyKind::Path, n)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(TopologyKind::Cycle, n)
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(())
    }

    /// Number of edges in a shortest path between u and v.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let diff = u.abs_diff(v);
        Ok(match self.kind {
            TopologyKind::Path => diff,
            TopologyKind::Cycle => diff.min(self.n - diff),
        })
    }

    /// The closed ball of radius r around v: all vertices at distance <= r.
    pub fn ball(&self, v: usize, r: Radius) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let r = r.get();
        let mut out = VertexSet::new(self.n);
        match self.kind {
            TopologyKind::Path => {
                let lo = v.saturating_sub(r).max(1);
                let hi = (v + r).min(self.n);
                for u in lo..=hi {
                    out.insert(u);
                }
            }
            TopologyKind::Cycle => {
                if 2 * r + 1 >= self.n {
                    return Ok(VertexSet::full(self.n));
                }
                for offset in 0..=(2 * r) {
                    // window v-r .. v+r, wrapped into 1..=n
                    let u = cyclic(v as i64 - r as i64 + offset as i64, self.n);
                    out.insert(u);
                }
            }
        }
        Ok(out)
    }

    /// Whether an r-identifying code exists at all: all balls must be
    /// pairwise distinct. Cycles need n >= 2r+2, paths n >= 2r+1.
    pub fn admits_r_ic(&self, r: Radius) -> bool {
        match self.kind {
            TopologyKind::Cycle => self.n >= 2 * r.get() + 2,
            TopologyKind::Path => self.n >= 2 * r.get() + 1,
        }
    }
}

/// Map an arbitrary integer onto the cyclic label range 1..=n.
pub fn cyclic(i: i64, n: usize) -> usize {
    let n = n as i64;
    (((i - 1) % n + n) % n + 1) as usize
}

/// A subset of the vertices 1..=n, with O(1) membership and ascending
/// iteration. Backed by a bitset so large instances stay cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            n,
            bits: vec![0; n / 64 + 1],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 1..=n {
            s.insert(v);
        }
        s
    }

    pub fn from_labels<I: IntoIterator<Item = usize>>(n: usize, labels: I) -> Result<Self> {
        let mut s = Self::new(n);
        for v in labels {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        if v == 0 || v > self.n {
            return false;
        }
        let idx = v - 1;
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v >= 1 && v <= self.n, "label {v} out of range 1..={}", self.n);
        let idx = v - 1;
        let word = &mut self.bits[idx / 64];
        if *word >> (idx % 64) & 1 == 0 {
            *word |= 1 << (idx % 64);
            self.len += 1;
        }
    }

    pub fn remove(&mut self, v: usize) {
        if self.contains(v) {
            let idx = v - 1;
            self.bits[idx / 64] &= !(1 << (idx % 64));
            self.len -= 1;
        }
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        let mut out = VertexSet::new(self.n);
        for (i, (a, b)) in self.bits.iter().zip(&other.bits).enumerate() {
            let w = a & b;
            out.bits[i] = w;
            out.len += w.count_ones() as usize;
        }
        out
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        let mut out = VertexSet::new(self.n);
        for (i, (a, b)) in self.bits.iter().zip(&other.bits).enumerate() {
            let w = a | b;
            out.bits[i] = w;
            out.len += w.count_ones() as usize;
        }
        out
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    /// Ascending label iteration.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(move |&v| self.contains(v))
    }

    pub fn labels(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Vertices of 1..=n not in the set, ascending.
    pub fn complement_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(move |&v| !self.contains(v))
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VertexSet(n={}, {:?})", self.n, self.labels())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: usize) -> Radius {
        Radius::new(x).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(Topology::cycle(10).unwrap().distance(1, 6).unwrap(), 5);
        assert_eq!(Topology::path(9).unwrap().distance(2, 7).unwrap(), 5);
        assert_eq!(Topology::cycle(7).unwrap().distance(1, 7).unwrap(), 1);
    }

    #[test]
    fn distance_rejects_out_of_range() {
        let t = Topology::path(5).unwrap();
        assert!(matches!(
            t.distance(0, 3),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            t.distance(1, 6),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn ball_examples() {
        let c7 = Topology::cycle(7).unwrap();
        assert_eq!(c7.ball(1, r(2)).unwrap().labels(), vec![1, 2, 3, 6, 7]);
        let p5 = Topology::path(5).unwrap();
        assert_eq!(p5.ball(1, r(2)).unwrap().labels(), vec![1, 2, 3]);
        let c5 = Topology::cycle(5).unwrap();
        assert_eq!(c5.ball(3, r(2)).unwrap().labels(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn admits_examples() {
        assert!(!Topology::cycle(7).unwrap().admits_r_ic(r(3)));
        assert!(Topology::path(5).unwrap().admits_r_ic(r(2)));
        assert!(Topology::cycle(8).unwrap().admits_r_ic(r(3)));
    }

    #[test]
    fn ball_symmetry_and_size() {
        for n in 1..=20 {
            for radius in 1..=5 {
                for kind in [TopologyKind::Path, TopologyKind::Cycle] {
                    let t = Topology::new(kind, n).unwrap();
                    for u in 1..=n {
                        let bu = t.ball(u, r(radius)).unwrap();
                        if kind == TopologyKind::Cycle {
                            assert_eq!(bu.len(), n.min(2 * radius + 1));
                        }
                        for v in 1..=n {
                            let bv = t.ball(v, r(radius)).unwrap();
                            assert_eq!(bu.contains(v), bv.contains(u));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn admits_agrees_with_ball_distinctness() {
        // n = 1 is excluded: a single vertex has vacuously distinct balls,
        // while the closed-form thresholds treat such degenerate instances
        // as undefined
        for n in 2..=30 {
            for radius in 1..=10 {
                for kind in [TopologyKind::Path, TopologyKind::Cycle] {
                    let t = Topology::new(kind, n).unwrap();
                    let rr = r(radius);
                    let balls: Vec<_> = (1..=n).map(|v| t.ball(v, rr).unwrap()).collect();
                    let mut distinct = true;
                    for i in 0..n {
                        for j in i + 1..n {
                            if balls[i] == balls[j] {
                                distinct = false;
                            }
                        }
                    }
                    assert_eq!(
                        t.admits_r_ic(rr),
                        distinct,
                        "kind={kind:?} n={n} r={radius}"
                    );
                }
            }
        }
    }

    #[test]
    fn cyclic_wraps_into_range() {
        assert_eq!(cyclic(0, 7), 7);
        assert_eq!(cyclic(8, 7), 1);
        assert_eq!(cyclic(-6, 7), 1);
        assert_eq!(cyclic(37, 7), 2); // 5n+2 means 2
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new(10);
        s.insert(3);
        s.insert(3);
        s.insert(7);
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && s.contains(7) && !s.contains(4));
        s.remove(3);
        assert_eq!(s.labels(), vec![7]);
        assert!(VertexSet::from_labels(5, [6]).is_err());
    }
}
