//! Bigon counting and index computations in the universal cover.
//!
//! A candidate disk from x to y is bounded by the horizontal arc from a lift
//! of x to the unique lift of y on the same horizontal line and the same
//! component of the beta preimage, followed by the beta arc back. It counts
//! for the differential exactly when that closed curve is embedded, has
//! rotation index +1, and turns left at both corners.

use num_traits::{Signed, Zero};

use super::geometry::{
    cross, dist_sq_to_segment, int_range, on_segment, polyline_is_simple, pow2_at_most_sqrt, rat,
    rat_int, turning_number, winding, BBox, Pt, Rat,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Crossing {
    pub seg: usize,
    /// Parameter along the directed segment, strictly between 0 and 1.
    pub t: Rat,
    pub point: Pt,
    /// Height of the alpha line this crossing lies on.
    pub line: i64,
    pub upward: bool,
}

/// One period of the beta lift plus its translation vector. The vertex list
/// includes the far endpoint: verts[last] = verts[0] + trans.
pub struct BetaLift {
    pub verts: Vec<Pt>,
    pub trans: Pt,
}

impl BetaLift {
    pub fn nseg(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn seg_dir(&self, seg: usize) -> Pt {
        self.verts[seg + 1].sub(&self.verts[seg])
    }

    fn vertex(&self, period: i64, v: usize) -> Pt {
        self.verts[v].add(&self.trans.scaled(period))
    }
}

/// A point on the infinite beta lift, ordered along the path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pos {
    period: i64,
    seg: usize,
    t: Rat,
}

/// Crossings of one beta period with the integer-height lines, in path order.
pub fn crossings(beta: &BetaLift) -> Vec<Crossing> {
    let mut out = Vec::new();
    for seg in 0..beta.nseg() {
        let a = &beta.verts[seg];
        let b = &beta.verts[seg + 1];
        let (lo, hi) = if a.y < b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
        for h in int_range(lo, hi) {
            let hr = rat_int(h);
            if hr <= *lo || hr >= *hi {
                continue;
            }
            let t = (&hr - &a.y) / (&b.y - &a.y);
            let x = &a.x + &t * (&b.x - &a.x);
            out.push(Crossing {
                seg,
                t,
                point: Pt::new(x, hr),
                line: h,
                upward: b.y > a.y,
            });
        }
    }
    out.sort_by(|c1, c2| (c1.seg, &c1.t).cmp(&(c2.seg, &c2.t)));
    out
}

fn canonical(period: i64, v: usize, nseg: usize) -> (i64, usize) {
    if v == nseg {
        (period + 1, 0)
    } else {
        (period, v)
    }
}

/// Beta vertices strictly between two points of the lift, in path order.
fn interior_vertices(beta: &BetaLift, from: &Pos, to: &Pos) -> Vec<Pt> {
    let mut out = Vec::new();
    let (mut p, mut v) = canonical(from.period, from.seg + 1, beta.nseg());
    loop {
        let pos = Pos {
            period: p,
            seg: v,
            t: Rat::zero(),
        };
        if pos >= *to {
            break;
        }
        out.push(beta.vertex(p, v));
        let (np, nv) = canonical(p, v + 1, beta.nseg());
        p = np;
        v = nv;
    }
    out
}

/// The closed curve for the ordered pair (x, y): the horizontal arc from the
/// base lift of x to the lift of y on the same line, then back along beta.
/// Vertex cycle: [x~, y~, interior beta vertices from y~ towards x~].
fn gamma(x: &Crossing, y: &Crossing, n: i64, beta: &BetaLift) -> Vec<Pt> {
    let k = n * (x.line - y.line);
    let y_lift = y.point.add(&beta.trans.scaled(k));
    let pos_x = Pos {
        period: 0,
        seg: x.seg,
        t: x.t.clone(),
    };
    let pos_y = Pos {
        period: k,
        seg: y.seg,
        t: y.t.clone(),
    };
    let mut verts = vec![x.point.clone(), y_lift];
    if pos_y < pos_x {
        verts.extend(interior_vertices(beta, &pos_y, &pos_x));
    } else {
        let mut back = interior_vertices(beta, &pos_x, &pos_y);
        back.reverse();
        verts.extend(back);
    }
    verts
}

/// Signs of the corner turns at y~ (alpha into beta) and x~ (beta into
/// alpha). Never zero: beta crosses the horizontal lines transversally.
fn corner_signs(verts: &[Pt]) -> (i32, i32) {
    let m = verts.len();
    debug_assert!(m >= 3);
    let alpha = verts[1].sub(&verts[0]);
    let out_y = verts[2].sub(&verts[1]);
    let in_x = verts[0].sub(&verts[m - 1]);
    let sgn = |r: Rat| -> i32 {
        debug_assert!(!r.is_zero());
        if r.is_negative() {
            -1
        } else {
            1
        }
    };
    (sgn(cross(&alpha, &out_y)), sgn(cross(&in_x, &alpha)))
}

/// Total winding of the closed curve around all lattice translates of p.
fn lattice_winding_sum(verts: &[Pt], p: &Pt) -> i64 {
    let bb = BBox::of(verts);
    let mut total = 0;
    for j in int_range(&(&bb.x0 - &p.x), &(&bb.x1 - &p.x)) {
        for h in int_range(&(&bb.y0 - &p.y), &(&bb.y1 - &p.y)) {
            let q = p.add(&Pt::from_ints(j, h));
            total += winding(verts, &q);
        }
    }
    total
}

/// Average multiplicity of the four sectors cut at q by the horizontal line
/// and the beta direction, sampled just off both lines. Probes stay closer
/// to q than any part of the curve not through q, so each lands in the open
/// region its sector germ belongs to.
fn sector_average(verts: &[Pt], q: &Pt, beta_dir: &Pt) -> Rat {
    let m = verts.len();
    let mut any_incident = false;
    let mut d2min: Option<Rat> = None;
    for i in 0..m {
        let a = &verts[i];
        let b = &verts[(i + 1) % m];
        if on_segment(a, b, q) {
            any_incident = true;
        } else {
            let d2 = dist_sq_to_segment(a, b, q);
            if d2min.as_ref().is_none_or(|cur| d2 < *cur) {
                d2min = Some(d2);
            }
        }
    }
    if !any_incident {
        return rat_int(winding(verts, q));
    }
    let dir = if beta_dir.y > Rat::zero() {
        beta_dir.clone()
    } else {
        beta_dir.negated()
    };
    let t = &dir.x / &dir.y;
    let eps = match d2min {
        Some(d2) => {
            let f = t.abs() + rat(3, 2);
            pow2_at_most_sqrt(&(d2 / (rat_int(4) * &f * &f)))
        }
        None => rat(1, 4),
    };
    let delta = &eps / rat_int(2);
    let mut total = 0i64;
    for sy in [1i64, -1] {
        for side in [1i64, -1] {
            let syr = rat_int(sy);
            let probe = Pt::new(
                &q.x + &syr * &t * &eps + rat_int(side) * &delta,
                &q.y + &syr * &eps,
            );
            total += winding(verts, &probe);
        }
    }
    rat(total, 4)
}

/// Sum of sector averages over all lattice translates of p that meet the
/// curve's bounding box.
fn corner_multiplicity_sum(verts: &[Pt], p: &Pt, beta_dir: &Pt) -> Rat {
    let bb = BBox::of(verts);
    let mut total = Rat::zero();
    for j in int_range(&(&bb.x0 - &p.x), &(&bb.x1 - &p.x)) {
        for h in int_range(&(&bb.y0 - &p.y), &(&bb.y1 - &p.y)) {
            let q = p.add(&Pt::from_ints(j, h));
            total += sector_average(verts, &q, beta_dir);
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bigon {
    pub nw: u32,
    pub nz: u32,
}

/// The differential contribution of the ordered pair (x, y), if any.
pub fn bigon(x: &Crossing, y: &Crossing, n: i64, beta: &BetaLift, w: &Pt, z: &Pt) -> Option<Bigon> {
    let verts = gamma(x, y, n, beta);
    if !polyline_is_simple(&verts) {
        return None;
    }
    if turning_number(&verts) != 1 {
        return None;
    }
    let (s1, s2) = corner_signs(&verts);
    if s1 <= 0 || s2 <= 0 {
        return None;
    }
    let nw = lattice_winding_sum(&verts, w);
    let nz = lattice_winding_sum(&verts, z);
    debug_assert!(nw >= 0 && nz >= 0, "embedded disk has nonnegative multiplicities");
    Some(Bigon {
        nw: nw as u32,
        nz: nz as u32,
    })
}

/// Grading drops across the ordered pair (x, y): the index of the connecting
/// domain minus twice its multiplicity at each basepoint. The index is the
/// Euler measure plus the two corner vertex multiplicities; the Euler
/// measure is the rotation index corrected by a quarter per corner.
pub fn connecting_domain_drop(
    x: &Crossing,
    y: &Crossing,
    n: i64,
    beta: &BetaLift,
    w: &Pt,
    z: &Pt,
) -> Result<(i64, i64)> {
    let verts = gamma(x, y, n, beta);
    let t = turning_number(&verts);
    let (s1, s2) = corner_signs(&verts);
    let e = rat_int(t) - rat(i64::from(s1 + s2), 4);
    let nx = corner_multiplicity_sum(&verts, &x.point, &beta.seg_dir(x.seg));
    let ny = corner_multiplicity_sum(&verts, &y.point, &beta.seg_dir(y.seg));
    let mu = e + nx + ny;
    if !mu.is_integer() {
        return Err(Error::Internal(format!(
            "connecting domain index {mu} is not an integer"
        )));
    }
    let mu = num_traits::ToPrimitive::to_i64(&mu.to_integer()).ok_or_else(|| {
        Error::Internal("connecting domain index out of range".into())
    })?;
    let nw = lattice_winding_sum(&verts, w);
    let nz = lattice_winding_sum(&verts, z);
    Ok((mu - 2 * nw, mu - 2 * nz))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertical_beta() -> BetaLift {
        // One segment from (1/2, -1/4) to (1/2, 3/4), translation (0, 1).
        BetaLift {
            verts: vec![
                Pt::new(rat(1, 2), rat(-1, 4)),
                Pt::new(rat(1, 2), rat(3, 4)),
            ],
            trans: Pt::from_ints(0, 1),
        }
    }

    #[test]
    fn crossings_of_vertical_strand() {
        let beta = vertical_beta();
        let xs = crossings(&beta);
        assert_eq!(xs.len(), 1);
        assert_eq!(xs[0].line, 0);
        assert!(xs[0].upward);
        assert_eq!(xs[0].point, Pt::new(rat(1, 2), rat_int(0)));
    }

    #[test]
    fn interior_vertices_walk_periods() {
        let beta = vertical_beta();
        let from = Pos {
            period: 0,
            seg: 0,
            t: rat(1, 4),
        };
        let to = Pos {
            period: 2,
            seg: 0,
            t: rat(1, 2),
        };
        let vs = interior_vertices(&beta, &from, &to);
        assert_eq!(
            vs,
            vec![
                Pt::new(rat(1, 2), rat(3, 4)),
                Pt::new(rat(1, 2), rat(7, 4)),
            ]
        );
    }
}
