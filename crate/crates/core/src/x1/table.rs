use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigstr;
use crate::error::{Error, Result};

/// Largest level a table may be built for; words `s ∈ F(k)` are packed into
/// a `u64` with one bit per position `0..=k`.
pub const MAX_LEVEL: u32 = 62;

/// The integer data `n_q^k` of the construction, with the jump numbers
/// derived from it.
///
/// Schedule: `n_0^k = 0`, `n_1^1 = 9`, `n_{q+1}^k = 100·n_q^k + 1` and
/// `n_1^{k+1} = 100·n_k^k + 1`. The jump number `j_q^k` is the floor of the
/// segment midpoint and does not depend on the word `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpTable {
    /// `rows[k-1][q] = n_q^k`.
    rows: Vec<Vec<BigInt>>,
}

fn next_row(prev: &[BigInt]) -> Vec<BigInt> {
    let k = prev.len();
    let mut row = Vec::with_capacity(k + 2);
    row.push(BigInt::zero());
    let mut last = prev.last().expect("rows are non-empty").clone();
    for _ in 0..k {
        last = last * 100 + 1;
        row.push(last.clone());
    }
    row
}

/// Bit `q` of the word `s`.
pub fn bit(s: u64, q: u32) -> u32 {
    ((s >> q) & 1) as u32
}

/// Number of words in `F(k) = {0,1}^{0..k}`.
pub fn words(k: u32) -> u64 {
    1u64 << (k + 1)
}

impl JumpTable {
    pub fn build(levels: u32) -> Result<Self> {
        if levels == 0 || levels > MAX_LEVEL {
            return Err(Error::Invalid(format!(
                "jump table level cap must lie in 1..={MAX_LEVEL}, got {levels}"
            )));
        }
        let mut rows = vec![vec![BigInt::zero(), BigInt::from(9)]];
        while rows.len() < levels as usize {
            let row = next_row(rows.last().unwrap());
            rows.push(row);
        }
        Ok(JumpTable { rows })
    }

    pub fn levels(&self) -> u32 {
        self.rows.len() as u32
    }

    pub(crate) fn check_level(&self, k: u32) -> Result<()> {
        if k == 0 || k > self.levels() {
            return Err(Error::Invalid(format!(
                "level {k} outside the table (1..={})",
                self.levels()
            )));
        }
        Ok(())
    }

    /// `n_q^k` for `1 ≤ k ≤ levels`, `0 ≤ q ≤ k`.
    pub fn n(&self, k: u32, q: u32) -> &BigInt {
        &self.rows[k as usize - 1][q as usize]
    }

    pub fn row(&self, k: u32) -> &[BigInt] {
        &self.rows[k as usize - 1]
    }

    /// `n_m^m` for any `m ≥ 1`, continuing the schedule past the table.
    pub fn diag(&self, m: u32) -> BigInt {
        if m == 0 {
            return BigInt::zero();
        }
        if m <= self.levels() {
            return self.n(m, m).clone();
        }
        let mut row = self.rows.last().unwrap().clone();
        for _ in self.levels()..m {
            row = next_row(&row);
        }
        row.last().unwrap().clone()
    }

    /// `j_{s,q}^k = ⌊(n_q^k − n_{q−1}^k)/2⌋` for `1 ≤ q ≤ k`.
    pub fn j(&self, k: u32, q: u32) -> BigInt {
        (self.n(k, q) - self.n(k, q - 1)).div_floor(&BigInt::from(2))
    }

    /// `p_{s,q}^k = n_q^k − n_{q−1}^k − j_{s,q}^k − s(q)`.
    pub fn p(&self, k: u32, s: u64, q: u32) -> BigInt {
        self.n(k, q) - self.n(k, q - 1) - self.j(k, q) - bit(s, q)
    }

    /// `min(j_{s,1}^k, p_{s,1}^k) − 1`: the largest `|j|` for which the
    /// slice formula applies.
    pub fn slice_bound(&self, k: u32, s: u64) -> BigInt {
        self.j(k, 1).min(self.p(k, s, 1)) - 1
    }

    /// Every violated table invariant, as a readable line. Empty when the
    /// table is sound.
    pub fn check_invariants(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.levels() >= 1 && *self.n(1, 1) != BigInt::from(9) {
            bad.push(format!("n_1^1 = {} (expected 9)", self.n(1, 1)));
        }
        for k in 1..=self.levels() {
            if !self.n(k, 0).is_zero() {
                bad.push(format!("n_0^{k} = {} is not 0", self.n(k, 0)));
            }
            for q in 1..=k {
                let n = self.n(k, q);
                if *n <= BigInt::from(2 * k + 4) {
                    bad.push(format!("n_{q}^{k} = {n} is not above 2k+4"));
                }
                if q < k && *self.n(k, q + 1) <= n * 100 {
                    bad.push(format!("n_{}^{k} is not above 100·n_{q}^{k}", q + 1));
                }
                let d = n - self.n(k, q - 1);
                let j = self.j(k, q);
                let gap: BigInt = &d - &j * 2;
                if gap.abs() > BigInt::from(k) {
                    bad.push(format!(
                        "j_{q}^{k} = {j} is more than k/2 from the midpoint"
                    ));
                }
                for s in 0..words(k) {
                    let p = self.p(k, s, q);
                    if p != &d - &j - bit(s, q) {
                        bad.push(format!("p_{{s={s},{q}}}^{k} breaks its definition"));
                    }
                    if (&j - &p).abs() > BigInt::from(k + 1) {
                        bad.push(format!("|j - p| > k+1 at s={s}, q={q}, k={k}"));
                    }
                    if q < k {
                        if j >= self.j(k, q + 1) {
                            bad.push(format!("j not increasing at q={q}, k={k}"));
                        }
                        if p >= self.p(k, s, q + 1) {
                            bad.push(format!("p not increasing at s={s}, q={q}, k={k}"));
                        }
                    }
                }
            }
            if k < self.levels() {
                if *self.n(k + 1, 1) <= self.n(k, k) * 100 {
                    bad.push(format!("n_1^{} is not above 100·n_{k}^{k}", k + 1));
                }
                if self.j(k, k) >= self.j(k + 1, 1) {
                    bad.push(format!("j_k^k >= j_1^(k+1) at k={k}"));
                }
                for s in 0..words(k) {
                    for s2 in 0..words(k + 1) {
                        if self.p(k, s, k) >= self.p(k + 1, s2, 1) {
                            bad.push(format!("p_k^k >= p_1^(k+1) at k={k}, s={s}, s'={s2}"));
                        }
                    }
                }
            }
        }
        bad
    }

    pub fn export(&self) -> JumpTableExport {
        JumpTableExport {
            levels: self.levels(),
            rows: (1..=self.levels())
                .map(|k| JumpRow {
                    k,
                    n: self.row(k).to_vec(),
                    j: (1..=k).map(|q| self.j(k, q)).collect(),
                    p_bit0: (1..=k).map(|q| self.p(k, 0, q)).collect(),
                    p_bit1: (1..=k).map(|q| self.p(k, u64::MAX, q)).collect(),
                })
                .collect(),
        }
    }
}

/// JSON form of a [`JumpTable`]. `j` and the two `p` columns are indexed by
/// `q = 1..=k`; `p_bit0` applies when `s(q) = 0`, `p_bit1` when `s(q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpTableExport {
    pub levels: u32,
    pub rows: Vec<JumpRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpRow {
    pub k: u32,
    #[serde(with = "bigstr::vec")]
    pub n: Vec<BigInt>,
    #[serde(with = "bigstr::vec")]
    pub j: Vec<BigInt>,
    #[serde(with = "bigstr::vec")]
    pub p_bit0: Vec<BigInt>,
    #[serde(with = "bigstr::vec")]
    pub p_bit1: Vec<BigInt>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_values() {
        let t = JumpTable::build(2).unwrap();
        assert_eq!(*t.n(1, 1), BigInt::from(9));
        assert_eq!(*t.n(2, 1), BigInt::from(901));
        assert_eq!(*t.n(2, 2), BigInt::from(90101));
        assert_eq!(t.j(2, 1), BigInt::from(450));
        assert_eq!(t.p(2, 0b010, 1), BigInt::from(901 - 450 - 1));
        assert_eq!(t.p(2, 0b000, 1), BigInt::from(901 - 450));
    }

    #[test]
    fn diag_continues_schedule() {
        let small = JumpTable::build(2).unwrap();
        let big = JumpTable::build(5).unwrap();
        for m in 1..=5 {
            assert_eq!(small.diag(m), big.diag(m));
        }
        assert_eq!(small.diag(3), BigInt::from(90101010101u64));
    }

    #[test]
    fn invariants_hold() {
        let t = JumpTable::build(6).unwrap();
        assert!(
            t.check_invariants().is_empty(),
            "{:?}",
            t.check_invariants()
        );
    }

    #[test]
    fn level_bounds() {
        assert!(JumpTable::build(0).is_err());
        assert!(JumpTable::build(MAX_LEVEL + 1).is_err());
        assert!(JumpTable::build(3).unwrap().check_level(4).is_err());
    }

    #[test]
    fn export_round_trip() {
        let t = JumpTable::build(3).unwrap();
        let json = serde_json::to_string(&t.export()).unwrap();
        let back: JumpTableExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t.export());
        assert_eq!(back.rows[1].n[2], BigInt::from(90101));
    }
}
