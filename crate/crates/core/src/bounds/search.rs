//! Monotone satisfiability over a finite cell set: positive clauses ("some
//! cell of this set is in the code") plus at-most-k limits on cell sets.
//! Unit propagation, limit saturation and shortest-clause branching.

use std::fmt;

/// Fixed-width bitset over cell indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::new(n);
        for i in idx {
            b.set(i);
        }
        b
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    pub fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    pub fn or_assign(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a |= b;
        }
    }

    pub fn intersects(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    pub fn count_and(&self, o: &Bits) -> usize {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + t)
            })
        })
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

/// Drops duplicate clauses and clauses that contain another clause.
pub fn minimize_clauses(mut clauses: Vec<Bits>) -> Vec<Bits> {
    clauses.sort_by_key(|c| c.count());
    clauses.dedup();
    let mut kept: Vec<Bits> = Vec::new();
    for c in clauses {
        if !kept.iter().any(|k| k.is_subset(&c)) {
            kept.push(c);
        }
    }
    kept
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub n: usize,
    pub clauses: Vec<Bits>,
    /// (cells, k): at most k of these cells are chosen.
    pub limits: Vec<(Bits, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// A satisfying choice; unassigned cells left out.
    Sat(Bits),
    Unsat,
    /// Node budget exhausted before a decision.
    Exhausted,
}

struct Search<'a> {
    p: &'a Problem,
    nodes: u64,
    budget: u64,
}

impl Problem {
    /// Decides satisfiability with the given cells forced in or out.
    pub fn solve(&self, chosen: &Bits, excluded: &Bits, budget: u64) -> Outcome {
        let mut s = Search {
            p: self,
            nodes: 0,
            budget,
        };
        s.run(chosen.clone(), excluded.clone())
    }
}

impl Search<'_> {
    fn propagate(&self, t: &mut Bits, f: &mut Bits) -> bool {
        loop {
            let mut changed = false;
            for (set, k) in &self.p.limits {
                let c = t.count_and(set);
                if c > *k {
                    return false;
                }
                if c == *k {
                    let rest = set.and_not(t);
                    if !rest.is_subset(f) {
                        f.or_assign(&rest);
                        changed = true;
                    }
                }
            }
            if t.intersects(f) {
                return false;
            }
            for cl in &self.p.clauses {
                if cl.intersects(t) {
                    continue;
                }
                let free = cl.and_not(f);
                match free.count() {
                    0 => return false,
                    1 => {
                        t.or_assign(&free);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, mut t: Bits, mut f: Bits) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::Exhausted;
        }
        if !self.propagate(&mut t, &mut f) {
            return Outcome::Unsat;
        }
        let branch = self
            .p
            .clauses
            .iter()
            .filter(|cl| !cl.intersects(&t))
            .map(|cl| cl.and_not(&f))
            .min_by_key(|free| free.count());
        let Some(free) = branch else {
            return Outcome::Sat(t);
        };
        let mut f_acc = f.clone();
        let mut exhausted = false;
        for lit in free.ones().collect::<Vec<_>>() {
            let mut t2 = t.clone();
            t2.set(lit);
            match self.run(t2, f_acc.clone()) {
                Outcome::Sat(s) => return Outcome::Sat(s),
                Outcome::Exhausted => exhausted = true,
                Outcome::Unsat => {}
            }
            if exhausted {
                return Outcome::Exhausted;
            }
            f_acc.set(lit);
        }
        Outcome::Unsat
    }
}
