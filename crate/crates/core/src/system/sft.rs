use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

use super::shift::{
    all_patterns, forced_symbols, pattern_act, pattern_contains, touched_coordinates,
};
use super::{unknown_witness, Query, Region, System, Verdict, Witness};

/// Square boolean matrix with rows packed into `u64` masks.
type Mat = Vec<u64>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .map(|&row| {
            let mut out = 0u64;
            let mut bits = row;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                out |= b[j];
                bits &= bits - 1;
            }
            out
        })
        .collect()
}

fn identity(m: usize) -> Mat {
    (0..m).map(|i| 1u64 << i).collect()
}

/// A one-dimensional shift of finite type given by an adjacency matrix.
///
/// Emptiness is exact: forced symbols are checked pairwise between
/// consecutive constrained coordinates by reachability in the transition
/// graph, with long gaps handled by repeated squaring.
#[derive(Debug)]
pub struct ShiftOfFiniteType {
    adjacency: Vec<Vec<bool>>,
    group: GroupDescriptor,
    /// Symbols lying on some bi-infinite path.
    live: u64,
    /// Adjacency restricted to live symbols.
    step: Mat,
    /// `step^(2^i)`, filled on demand.
    squarings: Mutex<Vec<Mat>>,
}

impl ShiftOfFiniteType {
    pub fn new(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let m = adjacency.len();
        if m == 0 || m > 64 {
            return Err(Error::InvalidSystem(format!(
                "adjacency matrix must have between 1 and 64 symbols, got {m}"
            )));
        }
        if adjacency.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidSystem(
                "adjacency matrix is not square".into(),
            ));
        }
        let rows: Mat = adjacency
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .fold(0u64, |acc, (j, _)| acc | (1 << j))
            })
            .collect();
        let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };

        // Symbols with an infinite forward path, then with an infinite
        // backward path, by pruning dead ends to a fixed point.
        let mut fwd = all;
        loop {
            let next = (0..m)
                .filter(|&i| fwd >> i & 1 == 1 && rows[i] & fwd != 0)
                .fold(0u64, |acc, i| acc | (1 << i));
            if next == fwd {
                break;
            }
            fwd = next;
        }
        let mut bwd = all;
        loop {
            let next = (0..m)
                .filter(|&j| {
                    bwd >> j & 1 == 1 && (0..m).any(|i| bwd >> i & 1 == 1 && rows[i] >> j & 1 == 1)
                })
                .fold(0u64, |acc, j| acc | (1 << j));
            if next == bwd {
                break;
            }
            bwd = next;
        }
        let live = fwd & bwd;
        if live == 0 {
            return Err(Error::InvalidSystem(
                "adjacency matrix admits no bi-infinite path".into(),
            ));
        }
        let step: Mat = (0..m)
            .map(|i| {
                if live >> i & 1 == 1 {
                    rows[i] & live
                } else {
                    0
                }
            })
            .collect();
        Ok(ShiftOfFiniteType {
            adjacency,
            group: GroupDescriptor::Integers,
            live,
            squarings: Mutex::new(vec![step.clone()]),
            step,
        })
    }

    /// The golden-mean shift: binary sequences with no two adjacent 1s.
    pub fn golden_mean() -> Self {
        ShiftOfFiniteType::new(vec![vec![true, true], vec![true, false]]).expect("valid matrix")
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    pub fn symbols(&self) -> usize {
        self.adjacency.len()
    }

    fn is_live(&self, v: u32) -> bool {
        (v as usize) < self.symbols() && self.live >> v & 1 == 1
    }

    /// `step^d` for `d ≥ 1`.
    fn power(&self, d: &BigInt) -> Mat {
        let bits = d.bits() as usize;
        let mut sq = self.squarings.lock().expect("squaring cache poisoned");
        while sq.len() < bits {
            let last = sq.last().expect("seeded with step").clone();
            sq.push(mat_mul(&last, &last));
        }
        let mut acc = identity(self.symbols());
        for i in 0..bits {
            if d.bit(i as u64) {
                acc = mat_mul(&acc, &sq[i]);
            }
        }
        acc
    }

    /// Whether symbol `a` at one coordinate can be followed by `b` exactly
    /// `d ≥ 1` steps later on an admissible sequence.
    fn reachable(&self, a: u32, b: u32, d: &BigInt) -> bool {
        if d.is_one() {
            return self.step[a as usize] >> b & 1 == 1;
        }
        self.power(d)[a as usize] >> b & 1 == 1
    }

    /// Whether a partial assignment extends to a point of the shift.
    fn extends(&self, forced: &BTreeMap<Element, u32>) -> bool {
        let mut prev: Option<(&BigInt, u32)> = None;
        for (c, &v) in forced {
            let Element::Int(c) = c else { return false };
            if !self.is_live(v) {
                return false;
            }
            if let Some((pc, pv)) = prev {
                let gap = c - pc;
                debug_assert!(gap.is_positive());
                if !self.reachable(pv, v, &gap) {
                    return false;
                }
            }
            prev = Some((c, v));
        }
        true
    }
}

impl System for ShiftOfFiniteType {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn name(&self) -> String {
        let rows: Vec<String> = self
            .adjacency
            .iter()
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect();
        format!("sft[{}]", rows.join(","))
    }

    fn emptiness(&self, query: &Query) -> Result<Verdict> {
        let Some(forced) = forced_symbols(self, &self.group, query)? else {
            return Ok(Verdict::Empty);
        };
        if self.extends(&forced) {
            Ok(Verdict::Witness(Witness::pattern(forced)))
        } else {
            Ok(Verdict::Empty)
        }
    }

    fn contains(&self, w: &Witness, region: &Region) -> Result<bool> {
        pattern_contains(self, w, region)
    }

    fn act(&self, g: &Element, w: &Witness) -> Result<Witness> {
        pattern_act(self, &self.group, g, w)
    }

    fn admissible(&self, w: &Witness) -> Result<bool> {
        let pattern = w.as_pattern().ok_or_else(|| unknown_witness(self))?;
        Ok(self.extends(&pattern))
    }

    fn universe(&self, queries: &[Query]) -> Result<Vec<Witness>> {
        let coords = touched_coordinates(self, &self.group, queries)?;
        let mut out = Vec::new();
        for w in all_patterns(&coords, self.symbols() as u32)? {
            if self.admissible(&w)? {
                out.push(w);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_at(c: i64) -> (Element, Region) {
        (
            Element::int(c),
            Region::cylinder([(Element::int(0), 1)]).unwrap(),
        )
    }

    #[test]
    fn golden_mean_forbids_adjacent_ones() {
        let sys = ShiftOfFiniteType::golden_mean();
        let q = Query::from_pairs([one_at(0), one_at(1)]);
        assert!(sys.emptiness(&q).unwrap().is_empty());
        let q = Query::from_pairs([one_at(0), one_at(2)]);
        assert!(!sys.emptiness(&q).unwrap().is_empty());
    }

    #[test]
    fn golden_mean_single_one() {
        let sys = ShiftOfFiniteType::golden_mean();
        let q = Query::from_pairs([one_at(0)]);
        let w = sys.emptiness(&q).unwrap().witness().unwrap();
        assert!(sys.satisfies(&w, &q).unwrap());
    }

    #[test]
    fn full_matrix_is_full_shift() {
        let sys = ShiftOfFiniteType::new(vec![vec![true; 2]; 2]).unwrap();
        let q = Query::from_pairs([one_at(0), one_at(1), one_at(5)]);
        assert!(!sys.emptiness(&q).unwrap().is_empty());
    }

    #[test]
    fn huge_gaps_use_squaring() {
        // Period-2 shift: 0 -> 1 -> 0, so symbols repeat with period 2.
        let sys = ShiftOfFiniteType::new(vec![vec![false, true], vec![true, false]]).unwrap();
        let far: BigInt = BigInt::from(10).pow(40);
        let q = Query::from_pairs([
            (
                Element::int(0),
                Region::cylinder([(Element::int(0), 0)]).unwrap(),
            ),
            (
                Element::Int(far.clone()),
                Region::cylinder([(Element::int(0), 0)]).unwrap(),
            ),
        ]);
        assert!(!sys.emptiness(&q).unwrap().is_empty());
        let q = Query::from_pairs([
            (
                Element::int(0),
                Region::cylinder([(Element::int(0), 0)]).unwrap(),
            ),
            (
                Element::Int(far + 1),
                Region::cylinder([(Element::int(0), 0)]).unwrap(),
            ),
        ]);
        assert!(sys.emptiness(&q).unwrap().is_empty());
    }

    #[test]
    fn dead_symbols_are_excluded() {
        // Symbol 2 can only be entered, never left.
        let sys = ShiftOfFiniteType::new(vec![
            vec![true, true, true],
            vec![true, false, false],
            vec![false, false, false],
        ])
        .unwrap();
        let q = Query::from_pairs([(
            Element::int(0),
            Region::cylinder([(Element::int(0), 2)]).unwrap(),
        )]);
        assert!(sys.emptiness(&q).unwrap().is_empty());
    }

    #[test]
    fn degenerate_matrices_rejected() {
        assert!(ShiftOfFiniteType::new(vec![vec![false]]).is_err());
        assert!(ShiftOfFiniteType::new(vec![vec![true, false]]).is_err());
        assert!(ShiftOfFiniteType::new(vec![]).is_err());
    }

    #[test]
    fn universe_drops_forbidden_words() {
        let sys = ShiftOfFiniteType::golden_mean();
        let q = Query::from_pairs([one_at(0), one_at(1)]);
        assert_eq!(sys.universe(&[q]).unwrap().len(), 3);
    }
}
