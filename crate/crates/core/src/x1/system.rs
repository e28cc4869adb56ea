use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};
use crate::system::{unknown_witness, Center, Query, Region, Scope, System, Verdict, Witness};

use super::point::PointRef;
use super::table::{words, JumpTable};

/// `(X₁, ℤ, T)` with orbits `X_s` searched up to level `k_max`.
///
/// Witnesses are exact. `Empty` means no point among `a_∞`, the `a_i` and
/// the orbits of level at most `k_max` satisfies the query.
#[derive(Clone, Debug)]
pub struct X1System {
    table: Arc<JumpTable>,
    k_max: u32,
    group: GroupDescriptor,
}

impl X1System {
    pub fn new(table: Arc<JumpTable>, k_max: u32) -> Result<Self> {
        if k_max == 0 || k_max > table.levels() {
            return Err(Error::InvalidSystem(format!(
                "truncation {k_max} must lie in 1..={}",
                table.levels()
            )));
        }
        Ok(X1System {
            table,
            k_max,
            group: GroupDescriptor::Integers,
        })
    }

    pub fn table(&self) -> &JumpTable {
        &self.table
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    fn translations<'q>(&self, query: &'q Query) -> Result<Vec<(&'q BigInt, &'q Region)>> {
        query
            .constraints()
            .iter()
            .map(|c| match &c.g {
                Element::Int(t) => Ok((t, &c.region)),
                other => Err(Error::ForeignElement {
                    element: other.to_string(),
                    group: self.group.to_string(),
                }),
            })
            .collect()
    }

    fn satisfies_all(&self, p: &PointRef, cs: &[(&BigInt, &Region)]) -> Result<bool> {
        for (t, r) in cs {
            if !self.table.member(&p.shift(t), r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl System for X1System {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn name(&self) -> String {
        format!(
            "x1(levels={}, truncate={})",
            self.table.levels(),
            self.k_max
        )
    }

    fn emptiness(&self, query: &Query) -> Result<Verdict> {
        let cs = self.translations(query)?;
        let found = |p: PointRef| Ok(Verdict::Witness(Witness::X1 { x1: p }));

        if self.satisfies_all(&PointRef::AInf, &cs)? {
            return found(PointRef::AInf);
        }
        // a_∞ failed, so some constraint names a finite center and pins the
        // only candidate on the a-orbit.
        let pinned = cs.iter().find_map(|(t, r)| match r {
            Region::Nbhd {
                center: Center::Finite(j),
                ..
            }
            | Region::APoint(Center::Finite(j)) => Some(j - *t),
            _ => None,
        });
        if let Some(i) = pinned {
            let a = PointRef::A { index: i };
            if self.satisfies_all(&a, &cs)? {
                return found(a);
            }
        }
        if cs.iter().any(|(_, r)| matches!(r, Region::APoint(_))) {
            return Ok(Verdict::Empty);
        }
        let Some((t0, m0, j0)) = cs.iter().find_map(|(t, r)| match r {
            Region::Nbhd {
                level,
                center: Center::Finite(j),
            } => Some((*t, *level, j)),
            _ => None,
        }) else {
            return Ok(Verdict::Empty);
        };
        let m0 = BigInt::from(m0);
        for k in 1..=self.k_max {
            for s in 0..words(k) {
                for (idx, level) in self.table.center_indices(k, s, j0)? {
                    if level < m0 {
                        continue;
                    }
                    let x = PointRef::Orbit {
                        level: k,
                        word: s,
                        index: idx - t0,
                    };
                    if self.satisfies_all(&x, &cs)? {
                        return found(x);
                    }
                }
            }
        }
        Ok(Verdict::Empty)
    }

    fn contains(&self, w: &Witness, region: &Region) -> Result<bool> {
        match w {
            Witness::X1 { x1 } => self.table.member(x1, region),
            _ => Err(unknown_witness(self)),
        }
    }

    fn act(&self, g: &Element, w: &Witness) -> Result<Witness> {
        let (Element::Int(t), Witness::X1 { x1 }) = (g, w) else {
            return Err(unknown_witness(self));
        };
        Ok(Witness::X1 { x1: x1.shift(t) })
    }

    fn admissible(&self, w: &Witness) -> Result<bool> {
        match w {
            Witness::X1 {
                x1: PointRef::Orbit { level, word, .. },
            } => Ok(*level >= 1 && *level <= self.k_max && *word < words(*level)),
            Witness::X1 { .. } => Ok(true),
            _ => Err(unknown_witness(self)),
        }
    }

    fn scope(&self) -> Scope {
        Scope::WithinTruncation { k_max: self.k_max }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::x1::table::bit;

    fn sys(k_max: u32) -> X1System {
        X1System::new(Arc::new(JumpTable::build(k_max).unwrap()), k_max).unwrap()
    }

    #[test]
    fn fixed_point_answers_infinity_queries() {
        let x = sys(2);
        let q = Query::from_pairs([
            (Element::int(0), Region::nbhd_inf(2)),
            (Element::int(7), Region::nbhd_inf(2)),
        ]);
        assert_eq!(
            x.emptiness(&q).unwrap(),
            Verdict::Witness(Witness::X1 { x1: PointRef::AInf })
        );
    }

    #[test]
    fn slice_translates_are_satisfiable() {
        let x = sys(3);
        let t = x.table().clone();
        for k in 1..=3 {
            for s in 0..words(k) {
                let q = Query::from_pairs(
                    (0..=k).map(|q| (Element::Int(t.n(k, q).clone()), Region::nbhd(k, bit(s, q)))),
                );
                let w = x.emptiness(&q).unwrap().witness().unwrap();
                assert!(x.satisfies(&w, &q).unwrap());
            }
        }
    }

    #[test]
    fn nearby_distinct_centers_are_empty() {
        let x = sys(4);
        for k in 2..=3 {
            let q = Query::from_pairs([
                (Element::int(0), Region::nbhd(k, 0)),
                (Element::int(1), Region::nbhd(k, 5)),
            ]);
            assert!(x.emptiness(&q).unwrap().is_empty(), "k={k}");
        }
    }

    #[test]
    fn a_orbit_witness() {
        let x = sys(1);
        let q = Query::from_pairs([
            (
                Element::int(3),
                Region::APoint(Center::Finite(BigInt::from(10))),
            ),
            (Element::int(0), Region::nbhd(5, 7)),
        ]);
        assert_eq!(
            x.emptiness(&q).unwrap(),
            Verdict::Witness(Witness::X1 { x1: PointRef::a(7) })
        );
    }

    #[test]
    fn truncation_is_reported() {
        assert_eq!(sys(3).scope(), Scope::WithinTruncation { k_max: 3 });
        assert!(X1System::new(Arc::new(JumpTable::build(2).unwrap()), 3).is_err());
    }
}
