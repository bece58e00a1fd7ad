//! Search plumbing shared by every enumeration: the candidate budget, a
//! mixed-radix odometer, and a disjoint-set forest.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;
use thiserror::Error;

/// Default cap on candidate evaluations.
pub const DEFAULT_MAX_SEARCH: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("search budget of {cap} candidates exhausted")]
pub struct BudgetExceeded {
    pub cap: u64,
}

/// A shared counter of candidate evaluations.
///
/// One budget is threaded through a whole computation; every enumeration
/// and witness search charges it as it goes.
#[derive(Debug)]
pub struct Budget {
    cap: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(cap: u64) -> Self {
        Budget {
            cap,
            used: AtomicU64::new(0),
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn charge(&self, n: u64) -> Result<(), BudgetExceeded> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before + n > self.cap {
            Err(BudgetExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_MAX_SEARCH)
    }
}

/// Visits every tuple `t` with `t[i] < radices[i]` in lexicographic order
/// (last slot fastest). An empty radix list visits the empty tuple once.
pub fn for_each_tuple<E>(radices: &[usize], mut visit: impl FnMut(&[usize]) -> Result<(), E>) -> Result<(), E> {
    if radices.contains(&0) {
        return Ok(());
    }
    let mut tuple = vec![0usize; radices.len()];
    loop {
        visit(&tuple)?;
        let mut pos = radices.len();
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < radices[pos] {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Decodes `index` as a tuple in the same order as [`for_each_tuple`].
pub fn decode_tuple(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    out
}

/// A forest of disjoint sets.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
        }
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges two sets, keeping the smaller index as the root so that every
    /// class is represented by its least member.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
