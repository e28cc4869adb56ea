use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

use super::{unknown_region, unknown_witness, Query, Region, System, Verdict, Witness};

/// `n` points with the trivial action of a group.
#[derive(Clone, Debug)]
pub struct TrivialFinite {
    points: u32,
    group: GroupDescriptor,
}

impl TrivialFinite {
    pub fn new(points: u32, group: GroupDescriptor) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidSystem("finite system needs a point".into()));
        }
        Ok(TrivialFinite { points, group })
    }

    pub fn points(&self) -> u32 {
        self.points
    }

    fn member(&self, p: u32, region: &Region) -> Result<bool> {
        match region {
            Region::Whole => Ok(true),
            Region::Points { points, complement } => Ok(points.contains(&p) != *complement),
            other => Err(unknown_region(self, other)),
        }
    }
}

impl System for TrivialFinite {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn name(&self) -> String {
        format!("trivial({}) over {}", self.points, self.group)
    }

    fn emptiness(&self, query: &Query) -> Result<Verdict> {
        for p in 0..self.points {
            let mut ok = true;
            for c in query.constraints() {
                if !self.member(p, &c.region)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Verdict::Witness(Witness::Point { point: p }));
            }
        }
        // Validate regions even when no point survives.
        for c in query.constraints() {
            self.member(0, &c.region)?;
        }
        Ok(Verdict::Empty)
    }

    fn contains(&self, w: &Witness, region: &Region) -> Result<bool> {
        match w {
            Witness::Point { point } => self.member(*point, region),
            _ => Err(unknown_witness(self)),
        }
    }

    fn act(&self, _g: &Element, w: &Witness) -> Result<Witness> {
        Ok(w.clone())
    }

    fn admissible(&self, w: &Witness) -> Result<bool> {
        match w {
            Witness::Point { point } => Ok(*point < self.points),
            _ => Err(unknown_witness(self)),
        }
    }

    fn universe(&self, _queries: &[Query]) -> Result<Vec<Witness>> {
        Ok((0..self.points)
            .map(|point| Witness::Point { point })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(pairs: &[(i64, &[u32])]) -> Query {
        Query::from_pairs(
            pairs
                .iter()
                .map(|(g, pts)| (Element::int(*g), Region::points(pts.iter().copied()))),
        )
    }

    #[test]
    fn same_point_everywhere() {
        let sys = TrivialFinite::new(2, GroupDescriptor::Integers).unwrap();
        assert_eq!(
            sys.emptiness(&q(&[(5, &[0]), (9, &[0])])).unwrap(),
            Verdict::Witness(Witness::Point { point: 0 })
        );
        assert!(sys
            .emptiness(&q(&[(5, &[0]), (9, &[1])]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn single_point_system() {
        let sys = TrivialFinite::new(1, GroupDescriptor::Integers).unwrap();
        assert!(!sys
            .emptiness(&q(&[(1, &[0]), (-7, &[0])]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn complement_regions() {
        let sys = TrivialFinite::new(3, GroupDescriptor::Integers).unwrap();
        let not0 = Region::Points {
            points: [0].into(),
            complement: true,
        };
        let query = Query::from_pairs([
            (Element::int(0), not0),
            (Element::int(1), Region::points([0, 2])),
        ]);
        assert_eq!(
            sys.emptiness(&query).unwrap(),
            Verdict::Witness(Witness::Point { point: 2 })
        );
    }
}
