use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bigstr;
use crate::error::{Error, Result};
use crate::system::{Center, Region};

use super::table::{bit, words, JumpTable};

/// A symbolic point of `X₁`: `a_i`, the fixed point `a_∞`, or the orbit
/// point `x_{s,i}` for a word `s ∈ F(level)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointRef {
    A {
        #[serde(with = "bigstr")]
        index: BigInt,
    },
    AInf,
    Orbit {
        level: u32,
        word: u64,
        #[serde(with = "bigstr")]
        index: BigInt,
    },
}

impl PointRef {
    pub fn a(i: impl Into<BigInt>) -> Self {
        PointRef::A { index: i.into() }
    }

    pub fn orbit(level: u32, word: u64, index: impl Into<BigInt>) -> Self {
        PointRef::Orbit {
            level,
            word,
            index: index.into(),
        }
    }

    /// `T^t`.
    pub fn shift(&self, t: &BigInt) -> PointRef {
        match self {
            PointRef::A { index } => PointRef::A { index: index + t },
            PointRef::AInf => PointRef::AInf,
            PointRef::Orbit { level, word, index } => PointRef::Orbit {
                level: *level,
                word: *word,
                index: index + t,
            },
        }
    }
}

/// `s(0)s(1)…s(k)` as a bit string.
pub fn word_string(level: u32, word: u64) -> String {
    (0..=level)
        .map(|q| if bit(word, q) == 1 { '1' } else { '0' })
        .collect()
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointRef::A { index } => write!(f, "a_{index}"),
            PointRef::AInf => write!(f, "a_inf"),
            PointRef::Orbit { level, word, index } => {
                write!(f, "x[{}]_{index}", word_string(*level, *word))
            }
        }
    }
}

/// The native neighborhood `U^level(a_center)` of an orbit point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Address {
    #[serde(with = "bigstr")]
    pub level: BigInt,
    #[serde(with = "bigstr")]
    pub center: BigInt,
}

impl JumpTable {
    fn check_word(&self, k: u32, s: u64) -> Result<()> {
        self.check_level(k)?;
        if s >= words(k) {
            return Err(Error::Invalid(format!("word {s} does not lie in F({k})")));
        }
        Ok(())
    }

    /// Native neighborhood of `x_{s,i}` for `s ∈ F(k)`, by arithmetic on the
    /// segment boundaries.
    pub fn address(&self, k: u32, s: u64, i: &BigInt) -> Result<Address> {
        self.check_word(k, s)?;
        let nk = self.n(k, k);
        if i.is_negative() {
            let r = -i;
            return Ok(Address {
                level: &r + k,
                center: BigInt::from(bit(s, 0)) - r,
            });
        }
        if i > nk {
            let r = i - nk;
            return Ok(Address {
                level: &r + k,
                center: BigInt::from(bit(s, k)) + r,
            });
        }
        let q = (1..=k)
            .find(|&q| i <= self.n(k, q))
            .expect("i lies within [0, n_k^k]");
        let off = i - self.n(k, q - 1);
        let j = self.j(k, q);
        let center = if off < j {
            off + bit(s, q - 1)
        } else {
            off - j - self.p(k, s, q)
        };
        Ok(Address {
            level: BigInt::from(k),
            center,
        })
    }

    /// Every index `i` with `x_{s,i}` natively centered at `a_c`, sorted,
    /// paired with the native level. At most `2k + 2` entries.
    pub fn center_indices(&self, k: u32, s: u64, c: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
        self.check_word(k, s)?;
        let interior = BigInt::from(k);
        let mut out: Vec<(BigInt, BigInt)> = Vec::new();
        for q in 1..=k {
            let base = self.n(k, q - 1);
            let len = self.n(k, q) - base;
            let j = self.j(k, q);
            let up = c - bit(s, q - 1);
            if !up.is_negative() && up < j {
                out.push((base + up, interior.clone()));
            }
            let down = c + self.p(k, s, q);
            if !down.is_negative() && down <= &len - &j {
                out.push((base + &j + down, interior.clone()));
            }
        }
        let right = c - bit(s, k);
        if right.is_positive() {
            out.push((self.n(k, k) + &right, right + k));
        }
        let left = BigInt::from(bit(s, 0)) - c;
        if left.is_positive() {
            out.push((-&left, left + k));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Whether the point lies in a neighborhood or singleton region.
    pub fn member(&self, p: &PointRef, region: &Region) -> Result<bool> {
        let (m, center, singleton) = match region {
            Region::Whole => return Ok(true),
            Region::Nbhd { level, center } => {
                if *level == 0 {
                    return Err(Error::Invalid("neighborhood levels start at 1".into()));
                }
                (*level, center, false)
            }
            Region::APoint(center) => (0, center, true),
            other => {
                return Err(Error::UnknownRegion {
                    region: other.to_string(),
                    system: "x1".into(),
                })
            }
        };
        Ok(match (p, center) {
            (PointRef::AInf, Center::Infinity) => true,
            (PointRef::AInf, Center::Finite(_)) => false,
            (PointRef::A { index }, Center::Finite(j)) => index == j,
            (PointRef::A { .. }, Center::Infinity) if singleton => false,
            (PointRef::A { index }, Center::Infinity) => index.abs() > self.diag(m),
            (PointRef::Orbit { .. }, _) if singleton => false,
            (PointRef::Orbit { level, word, index }, c) => {
                let addr = self.address(*level, *word, index)?;
                if addr.level < BigInt::from(m) {
                    false
                } else {
                    match c {
                        Center::Finite(j) => addr.center == *j,
                        Center::Infinity => addr.center.abs() > self.diag(m),
                    }
                }
            }
        })
    }

    /// `{i : x_{s,i} ∈ U^{level}(a_j)}` by the closed-form slice formula
    /// `{n_q^k − s(q) + j : q = 0..k}`.
    pub fn orbit_slice(&self, k: u32, s: u64, level: u32, j: &BigInt) -> Result<Vec<BigInt>> {
        self.check_word(k, s)?;
        if level == 0 || level > k {
            return Err(Error::Invalid(format!(
                "slice level {level} must lie in 1..={k}"
            )));
        }
        let bound = self.slice_bound(k, s);
        if j.abs() > bound {
            return Err(Error::SliceRange {
                index: j.to_string(),
                bound: bound.to_string(),
            });
        }
        Ok((0..=k).map(|q| self.n(k, q) - bit(s, q) + j).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(i: i64) -> BigInt {
        BigInt::from(i)
    }

    #[test]
    fn address_examples() {
        let t = JumpTable::build(3).unwrap();
        for k in 1..=3 {
            for s in 0..words(k) {
                let a = t.address(k, s, &big(0)).unwrap();
                assert_eq!(a.level, big(k as i64));
                assert_eq!(a.center, big(bit(s, 0) as i64));
                let i = t.n(k, k) + 3;
                let a = t.address(k, s, &i).unwrap();
                assert_eq!(a.level, big(k as i64 + 3));
                assert_eq!(a.center, big(bit(s, k) as i64 + 3));
                for q in 0..=k {
                    let a = t.address(k, s, t.n(k, q)).unwrap();
                    assert_eq!(a.center, big(bit(s, q) as i64));
                }
            }
        }
    }

    #[test]
    fn center_indices_invert_address() {
        let t = JumpTable::build(2).unwrap();
        for k in 1..=2 {
            for s in 0..words(k) {
                let lo: BigInt = -(t.n(k, k) + 5u32);
                let hi: BigInt = t.n(k, k) * 2u32;
                let mut i = lo;
                while i <= hi {
                    let a = t.address(k, s, &i).unwrap();
                    let back = t.center_indices(k, s, &a.center).unwrap();
                    assert!(
                        back.contains(&(i.clone(), a.level.clone())),
                        "k={k} s={s} i={i}"
                    );
                    i += 1;
                }
            }
        }
    }

    #[test]
    fn membership_rules() {
        let t = JumpTable::build(2).unwrap();
        assert!(t.member(&PointRef::a(5), &Region::nbhd(3, 5)).unwrap());
        assert!(!t.member(&PointRef::a(5), &Region::nbhd(3, 6)).unwrap());
        assert!(t.member(&PointRef::a(10), &Region::nbhd_inf(1)).unwrap());
        assert!(!t.member(&PointRef::a(9), &Region::nbhd_inf(1)).unwrap());
        assert!(t.member(&PointRef::AInf, &Region::nbhd_inf(7)).unwrap());
        assert!(!t.member(&PointRef::AInf, &Region::nbhd(1, 0)).unwrap());
        // x_{s,0} has native level 2, so it misses every level-3 neighborhood.
        let x = PointRef::orbit(2, 0, 0);
        assert!(t.member(&x, &Region::nbhd(2, 0)).unwrap());
        assert!(t.member(&x, &Region::nbhd(1, 0)).unwrap());
        assert!(!t.member(&x, &Region::nbhd(3, 0)).unwrap());
        assert!(!t
            .member(&x, &Region::APoint(Center::Finite(big(0))))
            .unwrap());
        let s = 0b101;
        let at_n1 = PointRef::orbit(2, s, t.n(2, 1).clone());
        assert!(t.member(&at_n1, &Region::nbhd(2, 0)).unwrap());
    }

    #[test]
    fn slice_formula_examples() {
        let t = JumpTable::build(2).unwrap();
        let s = 0b110; // s = (0,1,1)
        assert_eq!(
            t.orbit_slice(2, s, 2, &big(0)).unwrap(),
            vec![big(0), big(900), big(90100)]
        );
        assert_eq!(
            t.orbit_slice(2, s, 2, &big(1)).unwrap(),
            vec![big(1), big(901), big(90101)]
        );
        assert_eq!(t.slice_bound(1, 0), big(3));
        assert!(matches!(
            t.orbit_slice(1, 0, 1, &big(4)),
            Err(Error::SliceRange { .. })
        ));
    }

    #[test]
    fn shift_is_invertible() {
        let p = PointRef::orbit(2, 3, 17);
        let t = big(-40);
        assert_eq!(p.shift(&t).shift(&-&t), p);
        assert_eq!(PointRef::AInf.shift(&t), PointRef::AInf);
    }

    #[test]
    fn point_json() {
        let p = PointRef::orbit(2, 6, 900);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["kind"], "orbit");
        assert_eq!(v["index"], "900");
        assert_eq!(serde_json::from_value::<PointRef>(v).unwrap(), p);
        assert_eq!(p.to_string(), "x[011]_900");
    }
}
