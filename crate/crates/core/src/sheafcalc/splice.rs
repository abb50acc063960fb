//! Dimension chase through the twelve-term long exact sequence of a short
//! exact sequence `0 -> A -> B -> C -> 0` at one twist.
//!
//! Positions are numbered `p = 3 i + slot` (slot 0, 1, 2 for A, B, C) and
//! `r_p` is the rank of the map leaving position `p`. Exactness says
//! `dim V_p = r_{p-1} + r_p` with `r_{-1} = r_11 = 0`. Every constraint links
//! two neighbouring ranks, so interval propagation along the chain gives the
//! exact feasible range of each rank.

use crate::cohomology::Entry;

pub(crate) const INF: i64 = 1 << 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Iv {
    lo: i64,
    hi: i64,
}

impl Iv {
    fn of(e: Entry) -> Self {
        let (lo, hi) = e.bounds();
        Iv {
            lo,
            hi: hi.map_or(INF, |h| h.min(INF)),
        }
    }

    fn to_entry(self) -> Entry {
        Entry::from_bounds(self.lo, (self.hi < INF).then_some(self.hi))
    }
}

/// How the undetermined maps between the two given sheaves are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Maps between the two given terms take the largest feasible rank,
    /// lowest cohomological degree first.
    #[default]
    Generic,
    /// No assumption; every entry is the full feasible interval.
    Unconstrained,
}

/// Solves for the row of slot `unknown` given the rows of the other two.
///
/// Returns `None` if the given dimensions admit no exact sequence.
pub(crate) fn solve_row(rows: [[Entry; 4]; 3], unknown: usize, policy: Policy) -> Option<[Entry; 4]> {
    let mut dims = [Iv { lo: 0, hi: INF }; 12];
    for (p, d) in dims.iter_mut().enumerate() {
        let (degree, slot) = (p / 3, p % 3);
        if slot != unknown {
            *d = Iv::of(rows[slot][degree]);
        }
    }
    // ranks[q + 1] = r_q for q = -1..=11
    let mut ranks = [Iv { lo: 0, hi: INF }; 13];
    ranks[0] = Iv { lo: 0, hi: 0 };
    ranks[12] = Iv { lo: 0, hi: 0 };
    propagate(&dims, &mut ranks)?;

    if policy == Policy::Generic {
        for p in 0..11 {
            if p % 3 == unknown || (p + 1) % 3 == unknown {
                continue;
            }
            let r = ranks[p + 1];
            if r.hi >= INF {
                continue;
            }
            ranks[p + 1] = Iv { lo: r.hi, hi: r.hi };
            propagate(&dims, &mut ranks)?;
        }
    }

    let mut out = [Entry::Unknown; 4];
    for (degree, slot) in out.iter_mut().enumerate() {
        let p = 3 * degree + unknown;
        let (before, after) = (ranks[p], ranks[p + 1]);
        let hi = before.hi.saturating_add(after.hi).min(INF);
        *slot = Iv {
            lo: before.lo + after.lo,
            hi,
        }
        .to_entry();
    }
    Some(out)
}

fn propagate(dims: &[Iv; 12], ranks: &mut [Iv; 13]) -> Option<()> {
    loop {
        let mut changed = false;
        for (p, d) in dims.iter().enumerate() {
            let (prev, next) = (ranks[p], ranks[p + 1]);
            let next_new = Iv {
                lo: next.lo.max(d.lo - prev.hi),
                hi: if d.hi >= INF { next.hi } else { next.hi.min(d.hi - prev.lo) },
            };
            let prev_new = Iv {
                lo: prev.lo.max(d.lo - next_new.hi),
                hi: if d.hi >= INF { prev.hi } else { prev.hi.min(d.hi - next_new.lo) },
            };
            if next_new.lo > next_new.hi || prev_new.lo > prev_new.hi {
                return None;
            }
            if next_new != next || prev_new != prev {
                ranks[p + 1] = next_new;
                ranks[p] = prev_new;
                changed = true;
            }
        }
        if !changed {
            return Some(());
        }
    }
}
