use serde::Serialize;

use super::UPoly;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::finite_field::FqPoly;
use crate::hahn_series::ValBound;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub slope: Exponent,
    /// Valuation of the roots this segment accounts for, `-slope`.
    pub root_valuation: Exponent,
}

impl Segment {
    pub fn length(&self) -> usize {
        self.end - self.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Exponent)>,
    pub segments: Vec<Segment>,
}

fn slope(a: &(usize, Exponent), b: &(usize, Exponent)) -> Exponent {
    (&b.1 - &a.1).div_int((b.0 - a.0) as i64)
}

/// Lower convex hull of `(i, v(c_i))`. Exact-zero coefficients are skipped;
/// coefficients known only as `O(t^k)` must lie strictly above the hull.
pub fn newton_polygon(g: &UPoly) -> Result<NewtonPolygon> {
    let mut points = Vec::new();
    let mut vague = Vec::new();
    for (i, c) in g.coeffs().iter().enumerate() {
        match c.val() {
            ValBound::Known(v) => points.push((i, v)),
            ValBound::AtLeast(v) => vague.push((i, v)),
            ValBound::Infinite => {}
        }
    }
    let n = g.coeffs().len();
    if points.len() < 2 || points.last().map(|p| p.0) != Some(n - 1) {
        return Err(Error::precision("Newton polygon needs the leading and one more valuation"));
    }
    let mut hull: Vec<(usize, Exponent)> = Vec::new();
    for p in points {
        while hull.len() >= 2 && slope(&hull[hull.len() - 2], &hull[hull.len() - 1]) >= slope(&hull[hull.len() - 1], &p) {
            hull.pop();
        }
        hull.push(p);
    }
    let polygon = NewtonPolygon {
        segments: hull
            .windows(2)
            .map(|w| {
                let s = slope(&w[0], &w[1]);
                Segment {
                    start: w[0].0,
                    end: w[1].0,
                    root_valuation: -&s,
                    slope: s,
                }
            })
            .collect(),
        vertices: hull,
    };
    for (i, v) in vague {
        match polygon.height_at(i) {
            Some(h) if v > h => {}
            _ => return Err(Error::precision(format!("coefficient of Y^{i} too imprecise"))),
        }
    }
    Ok(polygon)
}

impl NewtonPolygon {
    /// Height of the hull above index `i`, if `i` is within its range.
    pub fn height_at(&self, i: usize) -> Option<Exponent> {
        let seg = self.segments.iter().find(|s| s.start <= i && i <= s.end)?;
        let base = &self.vertices.iter().find(|v| v.0 == seg.start)?.1;
        Some(base + &seg.slope.mul_int((i - seg.start) as i64))
    }

    pub fn root_valuations(&self) -> Vec<Exponent> {
        self.segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.root_valuation.clone(), s.length()))
            .collect()
    }
}

/// Residue polynomial `sum_i lc(c_{start+i}) X^i` over the points on `seg`.
pub fn residual_polynomial(g: &UPoly, polygon: &NewtonPolygon, seg: &Segment) -> FqPoly {
    let ctx = g.context();
    let codes = (seg.start..=seg.end)
        .map(|i| {
            let c = &g.coeffs()[i];
            match (c.leading(), polygon.height_at(i)) {
                (Some((v, lc)), Some(h)) if *v == h => lc.code(),
                _ => 0,
            }
        })
        .collect();
    FqPoly::from_codes(ctx, codes)
}
