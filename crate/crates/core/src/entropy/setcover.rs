//! Minimum set cover over a small finite universe.

/// A fixed-width bitset over the universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub(crate) fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| i * 64 + b)
        })
    }
}

/// Drops empty sets, duplicates and sets contained in another set. The
/// minimum cover size is unchanged.
pub(crate) fn reduce(sets: &[Bits]) -> Vec<Bits> {
    let mut uniq: Vec<Bits> = sets.iter().filter(|s| !s.is_zero()).cloned().collect();
    uniq.sort_by_key(|s| std::cmp::Reverse(s.count()));
    uniq.dedup();
    let mut kept: Vec<Bits> = Vec::new();
    for s in uniq {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept
}

/// Greedy cover size; every element must be covered by some set.
pub(crate) fn greedy(universe: usize, sets: &[Bits]) -> usize {
    let mut left = Bits::full(universe);
    let mut used = 0;
    while !left.is_zero() {
        let best = sets
            .iter()
            .max_by_key(|s| s.and_count(&left))
            .expect("cover is non-empty");
        left = left.and_not(best);
        used += 1;
    }
    used
}

/// Size of a greedily chosen family of elements no two of which share a
/// set; a lower bound for any cover.
pub(crate) fn packing(universe: usize, sets: &[Bits]) -> usize {
    let mut blocked = Bits::empty(universe);
    let mut chosen = 0;
    // Elements in few sets first: they block the least.
    let mut order: Vec<(usize, usize)> = (0..universe)
        .map(|e| (sets.iter().filter(|s| s.get(e)).count(), e))
        .collect();
    order.sort();
    for (_, e) in order {
        if blocked.get(e) {
            continue;
        }
        chosen += 1;
        for s in sets.iter().filter(|s| s.get(e)) {
            for x in s.ones() {
                blocked.set(x);
            }
        }
    }
    chosen
}

/// Exact minimum by branch and bound: branch on the uncovered element with
/// the fewest covering sets, prune with `used + ⌈left / largest⌉ ≥ best`.
pub(crate) fn exact(universe: usize, sets: &[Bits]) -> usize {
    let mut best = greedy(universe, sets);
    let largest = sets.iter().map(Bits::count).max().unwrap_or(1).max(1);
    let containing: Vec<Vec<usize>> = (0..universe)
        .map(|e| (0..sets.len()).filter(|&i| sets[i].get(e)).collect())
        .collect();
    search(
        &Bits::full(universe),
        0,
        sets,
        &containing,
        largest,
        &mut best,
    );
    best
}

fn search(
    left: &Bits,
    used: usize,
    sets: &[Bits],
    containing: &[Vec<usize>],
    largest: usize,
    best: &mut usize,
) {
    let Some(first) = left.first() else {
        *best = (*best).min(used);
        return;
    };
    if used + left.count().div_ceil(largest) >= *best {
        return;
    }
    let pivot = left
        .ones()
        .min_by_key(|&e| containing[e].len())
        .unwrap_or(first);
    let mut options: Vec<usize> = containing[pivot].clone();
    options.sort_by_key(|&i| std::cmp::Reverse(sets[i].and_count(left)));
    for i in options {
        search(
            &left.and_not(&sets[i]),
            used + 1,
            sets,
            containing,
            largest,
            best,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize, xs: &[usize]) -> Bits {
        let mut b = Bits::empty(n);
        for &x in xs {
            b.set(x);
        }
        b
    }

    #[test]
    fn greedy_is_not_optimal_here() {
        // Universe 0..6; greedy takes the big middle set first.
        let n = 6;
        let sets = vec![
            bits(n, &[0, 1, 2]),
            bits(n, &[3, 4, 5]),
            bits(n, &[1, 2, 3, 4]),
            bits(n, &[0]),
            bits(n, &[5]),
        ];
        let sets = reduce(&sets);
        assert_eq!(greedy(n, &sets), 3);
        assert_eq!(exact(n, &sets), 2);
        assert!(packing(n, &sets) <= 2);
    }

    #[test]
    fn reduce_drops_dominated() {
        let n = 4;
        let sets = vec![
            bits(n, &[0, 1]),
            bits(n, &[0]),
            bits(n, &[0, 1]),
            bits(n, &[]),
        ];
        assert_eq!(reduce(&sets), vec![bits(n, &[0, 1])]);
    }

    #[test]
    fn wide_universe() {
        let n = 130;
        let sets: Vec<Bits> = (0..n).map(|i| bits(n, &[i])).collect();
        assert_eq!(exact(n, &sets), n);
        assert_eq!(packing(n, &sets), n);
    }
}
