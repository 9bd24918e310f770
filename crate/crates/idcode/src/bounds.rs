//! Closed-form minimum cardinalities, dispatched by n-range and then by
//! gcd/parity subcase. Everything here is exact integer arithmetic.
//!
//! Case tag dispatch table (odd cycles, n = 2k+1, admissible n >= 2r+3):
//!
//! | n-range            | tag    | value                                   |
//! |--------------------|--------|-----------------------------------------|
//! | n = 2r+3           | Thm21  | floor((4r+6)/3)                         |
//! | 2r+5 <= n <= 3r+1  | Thm6-1 | k+2 (l odd, m=q-1, n>=5q; or l even, m=1)|
//! |                    | Thm6-2 | g*ceil(n/2g), g = gcd(q, n), q = n-2r-1 |
//! | 3r+2 <= n <= 4r+1  | Thm20  | g*ceil(n/2g), g = gcd(2r+1, n)          |
//! | n >= 4r+3          | Thm3a  | g*ceil(n/2g) if g = gcd(2r+1, n) != 1   |
//! |                    | Thm3b  | k+2 if g = 1 and k mod (2r+1) in {0,2r} |
//! |                    | Thm3c  | k+1 otherwise                           |
//!
//! The four ranges partition the odd admissible n: 2r+4 and 4r+2 are even,
//! and no odd value lies strictly between 2r+3 and 2r+5.

use crate::topology::Radius;
use crate::{Error, Result};

/// Euclidean gcd.
pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Which theorem case produced a bound or construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    Thm3a,
    Thm3b,
    Thm3c,
    Thm6_1,
    Thm6_2,
    Thm20,
    Thm21,
    /// Path dispatch: q-range 1..=3 and parity of p.
    Thm11 { range: u8, p_even: bool },
    /// 2-LD on cycles, by size class or residue of n mod 6.
    Thm15Small,
    Thm15C6,
    Thm15C11,
    Thm15Mod6(u8),
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseTag::Thm3a => write!(f, "Thm3a"),
            CaseTag::Thm3b => write!(f, "Thm3b"),
            CaseTag::Thm3c => write!(f, "Thm3c"),
            CaseTag::Thm6_1 => write!(f, "Thm6-1"),
            CaseTag::Thm6_2 => write!(f, "Thm6-2"),
            CaseTag::Thm20 => write!(f, "Thm20"),
            CaseTag::Thm21 => write!(f, "Thm21"),
            CaseTag::Thm11 { range, p_even } => {
                write!(f, "Thm11-{range}-{}", if *p_even { "even" } else { "odd" })
            }
            CaseTag::Thm15Small => write!(f, "Thm15-small"),
            CaseTag::Thm15C6 => write!(f, "Thm15-6"),
            CaseTag::Thm15C11 => write!(f, "Thm15-11"),
            CaseTag::Thm15Mod6(0) => write!(f, "Thm15-6k"),
            CaseTag::Thm15Mod6(m) => write!(f, "Thm15-6k+{m}"),
        }
    }
}

/// A closed-form value together with the case that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundResult {
    pub value: usize,
    pub case: CaseTag,
}

/// Euclidean decomposition k = (2r+1)p + q used by the large-cycle and path
/// theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamDecomposition {
    pub p: usize,
    pub q: usize,
}

impl StreamDecomposition {
    pub fn of(value: usize, r: usize) -> Self {
        let step = 2 * r + 1;
        StreamDecomposition {
            p: value / step,
            q: value % step,
        }
    }
}

/// Small-cycle decomposition n = l*q + m for q = n - (2r+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallCycleDecomposition {
    pub q: usize,
    pub l: usize,
    pub m: usize,
}

impl SmallCycleDecomposition {
    pub fn of(n: usize, r: usize) -> Self {
        let q = n - (2 * r + 1);
        SmallCycleDecomposition {
            q,
            l: n / q,
            m: n % q,
        }
    }
}

fn parity_bound(n: usize, step: usize) -> usize {
    let g = gcd(step, n);
    g * n.div_ceil(2 * g)
}

/// Minimum size of an r-identifying code of the odd cycle C_n.
///
/// Even n is rejected outright; n <= 2r+1 has no code at all.
pub fn min_ic_odd_cycle(n: usize, r: Radius) -> Result<BoundResult> {
    if n % 2 == 0 {
        return Err(Error::EvenCycle { n });
    }
    let r = r.get();
    if n < 2 * r + 3 {
        return Err(Error::Undefined {
            reason: format!("no r-IC exists on a cycle with n = {n} <= 2r+1 = {}", 2 * r + 1),
        });
    }
    let k = (n - 1) / 2;
    if n == 2 * r + 3 {
        return Ok(BoundResult {
            value: (4 * r + 6) / 3,
            case: CaseTag::Thm21,
        });
    }
    if n <= 3 * r + 1 {
        let d = SmallCycleDecomposition::of(n, r);
        let exceptional = gcd(d.q, n) == 1
            && ((d.l % 2 == 1 && d.m == d.q - 1 && n >= 5 * d.q) || (d.l % 2 == 0 && d.m == 1));
        return Ok(if exceptional {
            BoundResult {
                value: k + 2,
                case: CaseTag::Thm6_1,
            }
        } else {
            BoundResult {
                value: parity_bound(n, d.q),
                case: CaseTag::Thm6_2,
            }
        });
    }
    if n <= 4 * r + 1 {
        return Ok(BoundResult {
            value: parity_bound(n, 2 * r + 1),
            case: CaseTag::Thm20,
        });
    }
    // n >= 4r+3
    if gcd(2 * r + 1, n) != 1 {
        return Ok(BoundResult {
            value: parity_bound(n, 2 * r + 1),
            case: CaseTag::Thm3a,
        });
    }
    let d = StreamDecomposition::of(k, r);
    Ok(if d.q == 0 || d.q == 2 * r {
        BoundResult {
            value: k + 2,
            case: CaseTag::Thm3b,
        }
    } else {
        BoundResult {
            value: k + 1,
            case: CaseTag::Thm3c,
        }
    })
}

/// Minimum size of an r-identifying code of the path P_n.
pub fn min_ic_path(n: usize, r: Radius) -> Result<BoundResult> {
    let r = r.get();
    if n <= 2 * r {
        return Err(Error::Undefined {
            reason: format!("no r-IC exists on a path with n = {n} <= 2r = {}", 2 * r),
        });
    }
    let step = 2 * r + 1;
    let d = StreamDecomposition::of(n, r);
    let (p, q) = (d.p, d.q);
    let p_even = p % 2 == 0;
    let (range, value) = if q == 0 {
        (
            1,
            if p_even {
                step * p / 2 + 1
            } else {
                step * (p - 1) / 2 + 2 * r
            },
        )
    } else if q <= r + 1 {
        (
            2,
            if p_even {
                step * p / 2 + q
            } else {
                step * (p - 1) / 2 + 2 * r + 1
            },
        )
    } else {
        (
            3,
            if p_even {
                step * p / 2 + q - 1
            } else {
                step * (p - 1) / 2 + 2 * r + 1
            },
        )
    };
    Ok(BoundResult {
        value,
        case: CaseTag::Thm11 { range, p_even },
    })
}

/// Minimum size of a 2-locating-dominating set of the cycle C_n.
///
/// For n <= 5 every pair of vertices is within distance 2, so all non-code
/// vertices share the signature D; a valid set therefore leaves at most one
/// vertex out and the minimum is n-1 (exhaustive search confirms this).
pub fn min_ld2_cycle(n: usize) -> Result<BoundResult> {
    if n < 3 {
        return Err(Error::InvalidInput {
            reason: format!("a cycle needs at least 3 vertices, got {n}"),
        });
    }
    Ok(if n <= 5 {
        BoundResult {
            value: n - 1,
            case: CaseTag::Thm15Small,
        }
    } else if n == 6 {
        BoundResult {
            value: 3,
            case: CaseTag::Thm15C6,
        }
    } else if n % 6 == 3 {
        BoundResult {
            value: n.div_ceil(3) + 1,
            case: CaseTag::Thm15Mod6(3),
        }
    } else if n == 11 {
        BoundResult {
            value: n.div_ceil(3),
            case: CaseTag::Thm15C11,
        }
    } else {
        BoundResult {
            value: n.div_ceil(3),
            case: CaseTag::Thm15Mod6((n % 6) as u8),
        }
    })
}

/// The counting lower bound ceil(n/3) for 2-LD sets on cycles; not always
/// tight (n = 6 and n = 6k+3 need one more vertex).
pub fn ld_lower_bound(n: usize) -> usize {
    n.div_ceil(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: usize) -> Radius {
        Radius::new(x).unwrap()
    }

    #[test]
    fn odd_cycle_examples() {
        // k=10, r=4: n=21 >= 4r+3, gcd(9,21)=3
        let b = min_ic_odd_cycle(21, r(4)).unwrap();
        assert_eq!((b.value, b.case), (12, CaseTag::Thm3a));
        // n = 2r+3
        let b = min_ic_odd_cycle(9, r(3)).unwrap();
        assert_eq!((b.value, b.case), (6, CaseTag::Thm21));
        // r=1, k=3: n=7, gcd(3,7)=1, q=0
        let b = min_ic_odd_cycle(7, r(1)).unwrap();
        assert_eq!((b.value, b.case), (5, CaseTag::Thm3b));
    }

    #[test]
    fn odd_cycle_rejects_bad_input() {
        assert!(matches!(
            min_ic_odd_cycle(10, r(2)),
            Err(Error::EvenCycle { n: 10 })
        ));
        assert!(matches!(
            min_ic_odd_cycle(7, r(3)),
            Err(Error::Undefined { .. })
        ));
    }

    #[test]
    fn path_examples() {
        let b = min_ic_path(7, r(1)).unwrap();
        assert_eq!(
            (b.value, b.case),
            (4, CaseTag::Thm11 { range: 2, p_even: true })
        );
        let b = min_ic_path(9, r(2)).unwrap();
        assert_eq!(
            (b.value, b.case),
            (5, CaseTag::Thm11 { range: 3, p_even: false })
        );
        let b = min_ic_path(12, r(2)).unwrap();
        assert_eq!(
            (b.value, b.case),
            (7, CaseTag::Thm11 { range: 2, p_even: true })
        );
        assert!(min_ic_path(4, r(2)).is_err());
    }

    #[test]
    fn ld_examples() {
        assert_eq!(min_ld2_cycle(6).unwrap().value, 3);
        // balls cover all of C_5, so leaving one vertex out still locates it
        assert_eq!(min_ld2_cycle(5).unwrap().value, 4);
        assert_eq!(min_ld2_cycle(3).unwrap().value, 2);
        let b = min_ld2_cycle(9).unwrap();
        assert_eq!((b.value, b.case), (4, CaseTag::Thm15Mod6(3)));
        assert!(min_ld2_cycle(2).is_err());
    }

    #[test]
    fn ld_lower_bound_examples() {
        assert_eq!(ld_lower_bound(9), 3);
        assert_eq!(ld_lower_bound(10), 4);
        // not tight at n = 6
        assert_eq!(ld_lower_bound(6), 2);
        assert_eq!(min_ld2_cycle(6).unwrap().value, 3);
        for n in 3..=60 {
            assert!(min_ld2_cycle(n).unwrap().value >= ld_lower_bound(n));
        }
    }

    #[test]
    fn odd_cycle_dispatch_is_total_and_unambiguous() {
        for rr in 1..=10 {
            for n in (2 * rr + 3..=12 * rr + 9).step_by(2) {
                let b = min_ic_odd_cycle(n, r(rr)).unwrap();
                let expected = if n == 2 * rr + 3 {
                    CaseTag::Thm21
                } else if n <= 3 * rr + 1 {
                    let exceptional = {
                        let d = SmallCycleDecomposition::of(n, rr);
                        gcd(d.q, n) == 1
                            && ((d.l % 2 == 1 && d.m == d.q - 1 && n >= 5 * d.q)
                                || (d.l % 2 == 0 && d.m == 1))
                    };
                    if exceptional {
                        CaseTag::Thm6_1
                    } else {
                        CaseTag::Thm6_2
                    }
                } else if n <= 4 * rr + 1 {
                    CaseTag::Thm20
                } else if gcd(2 * rr + 1, n) != 1 {
                    CaseTag::Thm3a
                } else {
                    let d = StreamDecomposition::of((n - 1) / 2, rr);
                    if d.q == 0 || d.q == 2 * rr {
                        CaseTag::Thm3b
                    } else {
                        CaseTag::Thm3c
                    }
                };
                assert_eq!(b.case, expected, "n={n} r={rr}");
            }
        }
    }

    #[test]
    fn thm20_matches_thm3a_expression() {
        for rr in 1..=12 {
            for n in 3 * rr + 2..=4 * rr + 1 {
                if n % 2 == 1 && n > 2 * rr + 3 {
                    let b = min_ic_odd_cycle(n, r(rr)).unwrap();
                    assert_eq!(b.case, CaseTag::Thm20);
                    assert_eq!(b.value, parity_bound(n, 2 * rr + 1));
                }
            }
        }
    }

    #[test]
    fn case_tag_rendering() {
        assert_eq!(CaseTag::Thm6_1.to_string(), "Thm6-1");
        assert_eq!(
            CaseTag::Thm11 { range: 2, p_even: true }.to_string(),
            "Thm11-2-even"
        );
        assert_eq!(CaseTag::Thm15Mod6(3).to_string(), "Thm15-6k+3");
        assert_eq!(CaseTag::Thm15Mod6(0).to_string(), "Thm15-6k");
    }
}
