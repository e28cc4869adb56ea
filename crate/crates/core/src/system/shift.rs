use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

use super::{
    cartesian, unknown_region, unknown_witness, Query, Region, System, Verdict, Witness,
    UNIVERSE_CAP,
};

/// The Bernoulli shift `{0..m-1}^G` with `α_g(f)(h) = f(hg)`.
#[derive(Clone, Debug)]
pub struct FullShift {
    alphabet: u32,
    group: GroupDescriptor,
}

impl FullShift {
    pub fn new(alphabet: u32, group: GroupDescriptor) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidSystem("alphabet must be non-empty".into()));
        }
        Ok(FullShift { alphabet, group })
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }
}

/// Absolute coordinate requirements of a query on a shift over `group`:
/// constraint `(g, C)` forces `f(h·g) = v` for each `(h, v) ∈ C`.
/// Returns `None` on a clash.
pub(crate) fn forced_symbols(
    sys: &dyn System,
    group: &GroupDescriptor,
    query: &Query,
) -> Result<Option<BTreeMap<Element, u32>>> {
    let mut forced = BTreeMap::new();
    for c in query.constraints() {
        match &c.region {
            Region::Whole => {}
            Region::Cylinder(pairs) => {
                for (h, v) in pairs {
                    let coord = group.mul(h, &c.g);
                    if let Some(old) = forced.insert(coord, *v) {
                        if old != *v {
                            return Ok(None);
                        }
                    }
                }
            }
            other => return Err(unknown_region(sys, other)),
        }
    }
    Ok(Some(forced))
}

pub(crate) fn pattern_contains(sys: &dyn System, w: &Witness, region: &Region) -> Result<bool> {
    let pattern = w.as_pattern().ok_or_else(|| unknown_witness(sys))?;
    match region {
        Region::Whole => Ok(true),
        Region::Cylinder(pairs) => Ok(pairs.iter().all(|(h, v)| pattern.get(h) == Some(v))),
        other => Err(unknown_region(sys, other)),
    }
}

/// `α_g` on a pattern: the symbol at `c` moves to `c·g⁻¹`.
pub(crate) fn pattern_act(
    sys: &dyn System,
    group: &GroupDescriptor,
    g: &Element,
    w: &Witness,
) -> Result<Witness> {
    let pattern = w.as_pattern().ok_or_else(|| unknown_witness(sys))?;
    let gi = group.inv(g);
    Ok(Witness::pattern(
        pattern
            .into_iter()
            .map(|(c, v)| (group.mul(&c, &gi), v))
            .collect(),
    ))
}

/// Every coordinate any constraint of `queries` touches.
pub(crate) fn touched_coordinates(
    sys: &dyn System,
    group: &GroupDescriptor,
    queries: &[Query],
) -> Result<Vec<Element>> {
    let mut coords = BTreeSet::new();
    for q in queries {
        for c in q.constraints() {
            match &c.region {
                Region::Whole => {}
                Region::Cylinder(pairs) => {
                    coords.extend(pairs.iter().map(|(h, _)| group.mul(h, &c.g)));
                }
                other => return Err(unknown_region(sys, other)),
            }
        }
    }
    Ok(coords.into_iter().collect())
}

/// All patterns on `coords` over `alphabet` symbols.
pub(crate) fn all_patterns(coords: &[Element], alphabet: u32) -> Result<Vec<Witness>> {
    let symbols: Vec<u32> = (0..alphabet).collect();
    let lists = vec![symbols; coords.len()];
    Ok(cartesian(&lists, UNIVERSE_CAP)?
        .into_iter()
        .map(|syms| Witness::Pattern {
            coordinates: coords.to_vec(),
            symbols: syms,
        })
        .collect())
}

impl System for FullShift {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn name(&self) -> String {
        format!("full_shift({}) over {}", self.alphabet, self.group)
    }

    fn emptiness(&self, query: &Query) -> Result<Verdict> {
        let Some(forced) = forced_symbols(self, &self.group, query)? else {
            return Ok(Verdict::Empty);
        };
        if forced.values().any(|&v| v >= self.alphabet) {
            return Ok(Verdict::Empty);
        }
        Ok(Verdict::Witness(Witness::pattern(forced)))
    }

    fn contains(&self, w: &Witness, region: &Region) -> Result<bool> {
        pattern_contains(self, w, region)
    }

    fn act(&self, g: &Element, w: &Witness) -> Result<Witness> {
        pattern_act(self, &self.group, g, w)
    }

    fn admissible(&self, w: &Witness) -> Result<bool> {
        let pattern = w.as_pattern().ok_or_else(|| unknown_witness(self))?;
        Ok(pattern
            .iter()
            .all(|(c, &v)| v < self.alphabet && self.group.check(c).is_ok()))
    }

    fn universe(&self, queries: &[Query]) -> Result<Vec<Witness>> {
        let coords = touched_coordinates(self, &self.group, queries)?;
        all_patterns(&coords, self.alphabet)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyl(c: Element, v: u32) -> Region {
        Region::cylinder([(c, v)]).unwrap()
    }

    #[test]
    fn distinct_coordinates_never_clash() {
        let sys = FullShift::new(2, GroupDescriptor::Integers).unwrap();
        let q = Query::from_pairs([
            (Element::int(0), cyl(Element::int(0), 0)),
            (Element::int(1), cyl(Element::int(0), 1)),
        ]);
        let w = sys.emptiness(&q).unwrap().witness().unwrap();
        assert_eq!(
            w.as_pattern().unwrap(),
            BTreeMap::from([(Element::int(0), 0), (Element::int(1), 1)])
        );
        assert!(sys.satisfies(&w, &q).unwrap());
    }

    #[test]
    fn clash_is_empty() {
        let sys = FullShift::new(2, GroupDescriptor::Integers).unwrap();
        let q = Query::from_pairs([
            (Element::int(3), cyl(Element::int(0), 0)),
            (Element::int(0), cyl(Element::int(3), 1)),
        ]);
        assert!(sys.emptiness(&q).unwrap().is_empty());
    }

    #[test]
    fn one_symbol_shift_is_never_empty() {
        let sys = FullShift::new(1, GroupDescriptor::Integers).unwrap();
        let q = Query::from_pairs((0..5).map(|i| (Element::int(i), cyl(Element::int(0), 0))));
        assert!(!sys.emptiness(&q).unwrap().is_empty());
    }

    #[test]
    fn semidirect_transport() {
        let g = GroupDescriptor::Semidirect;
        let sys = FullShift::new(2, g.clone()).unwrap();
        let a = Element::semi(1, true);
        let b = Element::semi(1, false);
        // coordinate e·a and e·b are distinct
        assert_ne!(g.mul(&g.identity(), &a), g.mul(&g.identity(), &b));
        let q = Query::from_pairs([(a, cyl(g.identity(), 0)), (b, cyl(g.identity(), 1))]);
        let w = sys.emptiness(&q).unwrap().witness().unwrap();
        assert!(sys.satisfies(&w, &q).unwrap());
    }

    #[test]
    fn empty_query_has_witness() {
        let sys = FullShift::new(3, GroupDescriptor::Semidirect).unwrap();
        assert!(!sys.emptiness(&Query::default()).unwrap().is_empty());
    }

    #[test]
    fn foreign_region_is_rejected() {
        let sys = FullShift::new(2, GroupDescriptor::Integers).unwrap();
        let q = Query::from_pairs([(Element::int(0), Region::points([0]))]);
        assert!(matches!(
            sys.emptiness(&q),
            Err(Error::UnknownRegion { .. })
        ));
    }
}
