//! Bounded Pareto archive with niche-count crowding: eviction by roulette
//! over niche counts, guide selection by roulette over inverse niche counts.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::math;
use crate::objective::{dominates, ObjectiveVector, Solution};

/// One archived non-dominated solution with its objectives.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub solution: Solution,
    pub objectives: ObjectiveVector,
}

/// Bounded set of mutually non-dominated entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    entries: Vec<ArchiveEntry>,
    capacity: usize,
    /// Niche radius as a fraction of the per-objective min-max range.
    niche_fraction: f64,
}

impl Archive {
    pub fn new(capacity: usize, niche_fraction: f64) -> Self {
        Archive { entries: Vec::new(), capacity, niche_fraction }
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn niche_fraction(&self) -> f64 {
        self.niche_fraction
    }

    /// Merge the evaluated population into the archive: keep the mutually
    /// non-dominated subset of the union, then evict by crowding roulette
    /// until back at capacity.
    pub fn update<R: Rng>(&mut self, population: Vec<ArchiveEntry>, rng: &mut R) {
        let mut pool = core::mem::take(&mut self.entries);
        pool.extend(population);
        self.entries = non_dominated(pool);
        self.evict_to_capacity(rng);
    }

    pub(crate) fn set_entries(&mut self, entries: Vec<ArchiveEntry>) {
        self.entries = entries;
    }

    /// Evict entries by roulette proportional to their niche count until
    /// the archive is back at capacity. Niche geometry (objective ranges
    /// and the neighbor relation) is frozen at entry so one update costs
    /// O(n^2) total, matching the published complexity of the algorithm;
    /// counts are kept exact against that frozen geometry while entries
    /// leave.
    pub(crate) fn evict_to_capacity<R: Rng>(&mut self, rng: &mut R) {
        if self.entries.len() <= self.capacity {
            return;
        }
        let neighbors = self.neighbor_lists();
        let mut counts: Vec<f64> = neighbors.iter().map(|n| n.len() as f64).collect();
        let mut alive: Vec<bool> = alloc::vec![true; self.entries.len()];
        let mut remaining = self.entries.len();

        while remaining > self.capacity {
            let total: f64 = counts
                .iter()
                .zip(&alive)
                .filter(|(_, &a)| a)
                .map(|(&c, _)| c)
                .sum();
            let victim = if total > 0.0 {
                let mut pick = rng.gen::<f64>() * total;
                let mut chosen = usize::MAX;
                for (idx, (&c, &a)) in counts.iter().zip(&alive).enumerate() {
                    if !a {
                        continue;
                    }
                    pick -= c;
                    if pick <= 0.0 {
                        chosen = idx;
                        break;
                    }
                    chosen = idx; // keep last alive index against rounding
                }
                chosen
            } else {
                // Every survivor is isolated; evict uniformly.
                let k = rng.gen_range(0..remaining);
                self.nth_alive(&alive, k)
            };
            alive[victim] = false;
            remaining -= 1;
            for &n in &neighbors[victim] {
                counts[n] -= 1.0;
            }
        }

        let mut kept = Vec::with_capacity(self.capacity);
        for (entry, keep) in self.entries.drain(..).zip(alive) {
            if keep {
                kept.push(entry);
            }
        }
        self.entries = kept;
    }

    fn nth_alive(&self, alive: &[bool], k: usize) -> usize {
        let mut seen = 0;
        for (idx, &a) in alive.iter().enumerate() {
            if a {
                if seen == k {
                    return idx;
                }
                seen += 1;
            }
        }
        unreachable!("fewer alive entries than requested index")
    }

    /// Per-objective min-max ranges over the current entries.
    fn objective_ranges(&self) -> [(f64, f64); 3] {
        let mut ranges = [(f64::INFINITY, f64::NEG_INFINITY); 3];
        for e in &self.entries {
            let v = e.objectives.values();
            for o in 0..3 {
                ranges[o].0 = ranges[o].0.min(v[o]);
                ranges[o].1 = ranges[o].1.max(v[o]);
            }
        }
        ranges
    }

    fn normalized_distance(a: &ObjectiveVector, b: &ObjectiveVector, ranges: &[(f64, f64); 3]) -> f64 {
        let av = a.values();
        let bv = b.values();
        let mut sum = 0.0;
        for o in 0..3 {
            let span = ranges[o].1 - ranges[o].0;
            if span > 0.0 {
                let d = (av[o] - bv[o]) / span;
                sum += d * d;
            }
        }
        math::sqrt(sum)
    }

    fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        let ranges = self.objective_ranges();
        let n = self.entries.len();
        let mut lists = alloc::vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = Self::normalized_distance(
                    &self.entries[i].objectives,
                    &self.entries[j].objectives,
                    &ranges,
                );
                if d < self.niche_fraction {
                    lists[i].push(j);
                    lists[j].push(i);
                }
            }
        }
        lists
    }

    /// Number of neighbors of each entry within the niche radius in
    /// min-max-normalized objective space.
    pub fn niche_counts(&self) -> Vec<usize> {
        self.neighbor_lists().iter().map(|l| l.len()).collect()
    }

    /// Roulette selection favoring sparse regions: entry probability is
    /// proportional to `1 / (1 + niche count)`.
    pub fn roulette_select<R: Rng>(&self, rng: &mut R) -> Result<&ArchiveEntry> {
        let counts = self.niche_counts();
        self.roulette_select_with_counts(&counts, rng)
    }

    /// Same as [`Archive::roulette_select`] with precomputed niche counts,
    /// so one iteration of the optimizer can reuse them for every member.
    pub fn roulette_select_with_counts<R: Rng>(
        &self,
        counts: &[usize],
        rng: &mut R,
    ) -> Result<&ArchiveEntry> {
        if self.entries.is_empty() {
            return Err(Error::EmptyArchive);
        }
        debug_assert_eq!(counts.len(), self.entries.len());
        let weights: Vec<f64> = counts.iter().map(|&c| 1.0 / (1.0 + c as f64)).collect();
        let total: f64 = weights.iter().sum();
        let mut pick = rng.gen::<f64>() * total;
        let mut chosen = self.entries.len() - 1;
        for (idx, &w) in weights.iter().enumerate() {
            pick -= w;
            if pick <= 0.0 {
                chosen = idx;
                break;
            }
        }
        Ok(&self.entries[chosen])
    }
}

/// The mutually non-dominated subset of a pool. Duplicated objective
/// vectors do not dominate each other, so exact twins survive together.
pub fn non_dominated(pool: Vec<ArchiveEntry>) -> Vec<ArchiveEntry> {
    let keep: Vec<bool> = pool
        .iter()
        .map(|candidate| {
            !pool
                .iter()
                .any(|other| dominates(&other.objectives, &candidate.objectives))
        })
        .collect();
    pool.into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect()
}
