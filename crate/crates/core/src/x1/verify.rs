//! Checkers for the combinatorial facts about orbit slices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bigstr;
use crate::error::Result;
use crate::exec::Exec;
use crate::system::Region;

use super::point::{word_string, PointRef};
use super::table::{bit, words, JumpTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarPositionsReport {
    pub bound: u32,
    /// Ordered pairs of index pairs with equal iterative distance.
    pub quadruples: u64,
    pub violations: Vec<String>,
}

/// Checks that equal iterative distances inside `X_s ∩ U¹(a₀)` and
/// `X_{s'} ∩ U¹(a₀)` force equal levels and equal slot positions, for all
/// words of level at most `bound`.
pub fn similar_positions_verify(jt: &JumpTable, bound: u32) -> Result<SimilarPositionsReport> {
    jt.check_level(bound)?;
    // distance -> (level, word, slot of x, slot of y)
    let mut by_distance: BTreeMap<BigInt, Vec<(u32, u64, usize, usize)>> = BTreeMap::new();
    for k in 1..=bound {
        for s in 0..words(k) {
            let slice: Vec<BigInt> = jt
                .center_indices(k, s, &BigInt::from(0))?
                .into_iter()
                .map(|(i, _)| i)
                .collect();
            for a in 0..slice.len() {
                for b in a + 1..slice.len() {
                    by_distance
                        .entry(&slice[b] - &slice[a])
                        .or_default()
                        .push((k, s, a, b));
                }
            }
        }
    }
    let mut quadruples = 0u64;
    let mut violations = Vec::new();
    for (d, entries) in &by_distance {
        quadruples += (entries.len() * entries.len()) as u64;
        let (k0, s0, a0, b0) = entries[0];
        for &(k, s, a, b) in &entries[1..] {
            if (k, a, b) != (k0, a0, b0) {
                violations.push(format!(
                    "distance {d}: word {} slots ({a0},{b0}) vs word {} slots ({a},{b})",
                    word_string(k0, s0),
                    word_string(k, s)
                ));
            }
        }
    }
    Ok(SimilarPositionsReport {
        bound,
        quadruples,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub level: u32,
    #[serde(with = "bigstr")]
    pub window_lo: BigInt,
    #[serde(with = "bigstr")]
    pub window_hi: BigInt,
    /// `(word, j, neighborhood level)` triples compared.
    pub comparisons: u64,
    pub discrepancies: Vec<String>,
}

/// Compares the slice formula against a scan of membership over the window
/// `[−n_k^k − k − 2, 2·n_k^k]`, for every word of level `k`, every admissible
/// `j` and every neighborhood level `1..=k`. Only practical for `k ≤ 2`.
pub fn slice_scan(jt: &JumpTable, k: u32, exec: Exec) -> Result<SliceReport> {
    jt.check_level(k)?;
    let nk = jt.n(k, k).clone();
    let lo: BigInt = -(nk.clone() + BigInt::from(k + 2));
    let hi: BigInt = &nk * 2u32;
    let width = (&hi - &lo as &BigInt)
        .to_usize()
        .expect("window fits in memory")
        + 1;
    let per_word = exec.map_range(words(k) as usize, |s| -> Result<(u64, Vec<String>)> {
        let s = s as u64;
        let bound = jt.slice_bound(k, s);
        let b = bound.to_i64().expect("small bound");
        // bucket[j + b] = indices whose native center is j, with their level
        let mut buckets: Vec<Vec<(BigInt, BigInt)>> = vec![Vec::new(); (2 * b + 1) as usize];
        for off in 0..width {
            let i = &lo + off;
            let addr = jt.address(k, s, &i)?;
            if addr.center.abs() <= bound {
                let slot = (addr.center.to_i64().unwrap() + b) as usize;
                buckets[slot].push((i, addr.level));
            }
        }
        let mut comparisons = 0;
        let mut bad = Vec::new();
        for j in -b..=b {
            let jj = BigInt::from(j);
            for level in 1..=k {
                let formula = jt.orbit_slice(k, s, level, &jj)?;
                let scanned: Vec<BigInt> = buckets[(j + b) as usize]
                    .iter()
                    .filter(|(_, l)| *l >= BigInt::from(level))
                    .map(|(i, _)| i.clone())
                    .collect();
                // Spot-check membership against the region form as well.
                for i in &formula {
                    let x = PointRef::orbit(k, s, i.clone());
                    if !jt.member(&x, &Region::nbhd(level, jj.clone()))? {
                        bad.push(format!(
                            "x[{}]_{i} not in U^{level}(a_{j})",
                            word_string(k, s)
                        ));
                    }
                }
                if scanned != formula {
                    bad.push(format!(
                        "word {} j={j} level {level}: scan {scanned:?} vs formula {formula:?}",
                        word_string(k, s)
                    ));
                }
                comparisons += 1;
            }
        }
        Ok((comparisons, bad))
    });
    let mut comparisons = 0;
    let mut discrepancies = Vec::new();
    for r in per_word {
        let (c, bad) = r?;
        comparisons += c;
        discrepancies.extend(bad);
    }
    Ok(SliceReport {
        level: k,
        window_lo: lo,
        window_hi: hi,
        comparisons,
        discrepancies,
    })
}

/// Targeted check for large `k`: the formula's indices are members, their
/// neighbours at distance 1 and 2 are not (unless predicted), and the
/// closed-form center inversion agrees. Returns the discrepancies.
pub fn slice_probe(jt: &JumpTable, k: u32, s: u64, j: &BigInt) -> Result<Vec<String>> {
    let formula = jt.orbit_slice(k, s, k, j)?;
    let region = Region::nbhd(k, j.clone());
    let mut bad = Vec::new();
    for i in &formula {
        for d in -2i64..=2 {
            let probe = i + d;
            let expected = formula.contains(&probe);
            let got = jt.member(&PointRef::orbit(k, s, probe.clone()), &region)?;
            if got != expected {
                bad.push(format!(
                    "x[{}]_{probe}: member={got}, formula={expected}",
                    word_string(k, s)
                ));
            }
        }
    }
    let inverted: Vec<BigInt> = jt
        .center_indices(k, s, j)?
        .into_iter()
        .map(|(i, _)| i)
        .collect();
    if inverted != formula {
        bad.push(format!(
            "word {} j={j}: inversion {inverted:?} vs formula {formula:?}",
            word_string(k, s)
        ));
    }
    Ok(bad)
}

/// `x_{s,n_q^k}` sits in `U^k(a_{s(q)})` for every `q`.
pub fn slots_hit_word(jt: &JumpTable, k: u32, s: u64) -> Result<bool> {
    for q in 0..=k {
        let x = PointRef::orbit(k, s, jt.n(k, q).clone());
        if !jt.member(&x, &Region::nbhd(k, bit(s, q)))? {
            return Ok(false);
        }
    }
    Ok(true)
}
