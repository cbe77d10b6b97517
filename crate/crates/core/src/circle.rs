//! Circle growing: one Dijkstra search per center, interleaved through a
//! single queue in global score order.
//!
//! The first search to settle an unmatched node claims it. A search stops
//! as soon as its center is full; until then it keeps expanding through
//! nodes already claimed by other centers, since its remaining matches may
//! lie beyond them.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::model::{Assignment, Instance};
use crate::score::Score;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleEvent {
    /// `node` finalized in the search of `center`.
    Settle { center: usize, node: usize, dist: f64 },
    Match { center: usize, node: usize, dist: f64 },
    /// `center` reached its quota; its search stops.
    Halt { center: usize, node: usize, dist: f64 },
}

pub trait CircleObserver {
    fn event(&mut self, event: CircleEvent);
}

impl CircleObserver for () {
    #[inline]
    fn event(&mut self, _: CircleEvent) {}
}

impl<F: FnMut(CircleEvent)> CircleObserver for F {
    fn event(&mut self, event: CircleEvent) {
        self(event)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CircleOptions {
    pub instrument: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WorkCounters {
    pub settled_total: u64,
    pub pushed_total: u64,
    pub settled_per_center: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("run was not instrumented")]
pub struct InstrumentationDisabled;

#[derive(Debug, Clone)]
pub struct CircleRun {
    pub assignment: Assignment,
    counters: Option<WorkCounters>,
}

impl CircleRun {
    pub fn work_counters(&self) -> Result<&WorkCounters, InstrumentationDisabled> {
        self.counters.as_ref().ok_or(InstrumentationDisabled)
    }
}

pub fn solve_circle_growing(inst: &Instance<'_>) -> Assignment {
    run_circle_growing(inst, CircleOptions::default(), &mut ()).assignment
}

pub fn run_circle_growing(
    inst: &Instance<'_>,
    opts: CircleOptions,
    observer: &mut impl CircleObserver,
) -> CircleRun {
    let g = inst.graph();
    let (n, k) = (inst.node_count(), inst.center_count());
    let mut queue: BinaryHeap<Reverse<Score>> = BinaryHeap::new();
    let mut settled = FixedBitSet::with_capacity(n * k);
    let mut remaining = inst.quotas().to_vec();
    let mut center_of = vec![usize::MAX; n];
    let mut dist = vec![f64::INFINITY; n];
    let mut unmatched = n;
    let mut counters = WorkCounters {
        settled_per_center: vec![0; k],
        ..WorkCounters::default()
    };

    for (c, &node) in inst.centers().iter().enumerate() {
        queue.push(Reverse(Score::new(0.0, node, c)));
        counters.pushed_total += 1;
    }

    let mut last: Option<Score> = None;
    while unmatched > 0 {
        let Reverse(top) = queue.pop().expect("quotas sum to n, so some center is active");
        debug_assert!(last.is_none_or(|l| l <= top), "pop order regressed");
        last = Some(top);
        let Score { dist: d, node: u, center: c } = top;
        if remaining[c] == 0 || settled.put(c * n + u) {
            continue;
        }
        counters.settled_total += 1;
        counters.settled_per_center[c] += 1;
        observer.event(CircleEvent::Settle { center: c, node: u, dist: d });

        if center_of[u] == usize::MAX {
            center_of[u] = c;
            dist[u] = d;
            unmatched -= 1;
            remaining[c] -= 1;
            observer.event(CircleEvent::Match { center: c, node: u, dist: d });
            if remaining[c] == 0 {
                observer.event(CircleEvent::Halt { center: c, node: u, dist: d });
                continue;
            }
        }
        for (v, w) in g.neighbors(u) {
            if !settled.contains(c * n + v) {
                queue.push(Reverse(Score::new(d + w, v, c)));
                counters.pushed_total += 1;
            }
        }
    }

    CircleRun {
        assignment: Assignment { center_of, dist },
        counters: opts.instrument.then_some(counters),
    }
}
