//! Ordered merge of arithmetic progressions, used to enumerate bases that are
//! unions of an interval and finitely many runs of multiples below a cutoff.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::arith::Nat;

/// Arithmetic progression `next, next + step, ..., last`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Run {
    pub next: Nat,
    pub step: Nat,
    pub last: Nat,
}

/// Ascending, duplicate-free stream over the union of several runs.
#[derive(Debug)]
pub struct Elements {
    runs: Vec<Run>,
    heap: BinaryHeap<Reverse<(Nat, usize)>>,
    prev: Option<Nat>,
}

impl Elements {
    pub(crate) fn new(runs: Vec<Run>) -> Self {
        let heap = runs
            .iter()
            .enumerate()
            .filter(|(_, r)| r.next <= r.last)
            .map(|(i, r)| Reverse((r.next.clone(), i)))
            .collect();
        Self { runs, heap, prev: None }
    }
}

impl Iterator for Elements {
    type Item = Nat;

    fn next(&mut self) -> Option<Nat> {
        while let Some(Reverse((value, idx))) = self.heap.pop() {
            let run = &mut self.runs[idx];
            run.next += &run.step;
            if run.next <= run.last {
                self.heap.push(Reverse((run.next.clone(), idx)));
            }
            if self.prev.as_ref() != Some(&value) {
                self.prev = Some(value.clone());
                return Some(value);
            }
        }
        None
    }
}
