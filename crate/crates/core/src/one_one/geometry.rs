//! Exact planar primitives for diagram geometry.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Pt {
        Pt { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Pt {
        Pt::new(rat_int(x), rat_int(y))
    }

    pub fn add(&self, o: &Pt) -> Pt {
        Pt::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scaled(&self, k: i64) -> Pt {
        let kr = rat_int(k);
        Pt::new(&self.x * &kr, &self.y * &kr)
    }

    pub fn negated(&self) -> Pt {
        Pt::new(-self.x.clone(), -self.y.clone())
    }
}

pub fn cross(a: &Pt, b: &Pt) -> Rat {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Pt, b: &Pt) -> Rat {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the cross product of (b - a) and (p - a): +1 when p is left of
/// the directed line a -> b.
pub fn orient_sign(a: &Pt, b: &Pt, p: &Pt) -> i32 {
    let c = cross(&b.sub(a), &p.sub(a));
    if c.is_zero() {
        0
    } else if c.is_negative() {
        -1
    } else {
        1
    }
}

fn in_box(a: &Pt, b: &Pt, p: &Pt) -> bool {
    let (x0, x1) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (y0, y1) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    *x0 <= p.x && p.x <= *x1 && *y0 <= p.y && p.y <= *y1
}

/// p lies on the closed segment from a to b.
pub fn on_segment(a: &Pt, b: &Pt, p: &Pt) -> bool {
    orient_sign(a, b, p) == 0 && in_box(a, b, p)
}

/// The closed segments p1p2 and q1q2 share at least one point.
pub fn segments_intersect(p1: &Pt, p2: &Pt, q1: &Pt, q2: &Pt) -> bool {
    let d1 = orient_sign(q1, q2, p1);
    let d2 = orient_sign(q1, q2, p2);
    let d3 = orient_sign(p1, p2, q1);
    let d4 = orient_sign(p1, p2, q2);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && in_box(q1, q2, p1))
        || (d2 == 0 && in_box(q1, q2, p2))
        || (d3 == 0 && in_box(p1, p2, q1))
        || (d4 == 0 && in_box(p1, p2, q2))
}

/// Squared distance from p to the closed segment ab (a != b).
pub fn dist_sq_to_segment(a: &Pt, b: &Pt, p: &Pt) -> Rat {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let len2 = dot(&ab, &ab);
    let mut t = dot(&ap, &ab) / &len2;
    if t.is_negative() {
        t = Rat::zero();
    } else if t > Rat::one() {
        t = Rat::one();
    }
    let proj = Pt::new(&a.x + &t * &ab.x, &a.y + &t * &ab.y);
    let d = p.sub(&proj);
    dot(&d, &d)
}

/// A power of two r with r² ≤ bound (bound > 0).
pub fn pow2_at_most_sqrt(bound: &Rat) -> Rat {
    debug_assert!(*bound > Rat::zero());
    let half = rat(1, 2);
    let mut r = Rat::one();
    while &r * &r > *bound {
        r = &r * &half;
    }
    r
}

#[derive(Debug, Clone)]
pub struct BBox {
    pub x0: Rat,
    pub x1: Rat,
    pub y0: Rat,
    pub y1: Rat,
}

impl BBox {
    pub fn of(pts: &[Pt]) -> BBox {
        let mut b = BBox {
            x0: pts[0].x.clone(),
            x1: pts[0].x.clone(),
            y0: pts[0].y.clone(),
            y1: pts[0].y.clone(),
        };
        for p in &pts[1..] {
            if p.x < b.x0 {
                b.x0 = p.x.clone();
            }
            if p.x > b.x1 {
                b.x1 = p.x.clone();
            }
            if p.y < b.y0 {
                b.y0 = p.y.clone();
            }
            if p.y > b.y1 {
                b.y1 = p.y.clone();
            }
        }
        b
    }
}

/// All integers from floor(lo) to ceil(hi).
pub fn int_range(lo: &Rat, hi: &Rat) -> std::ops::RangeInclusive<i64> {
    let a = lo.floor().to_integer().to_i64().expect("coordinate fits i64");
    let b = hi.ceil().to_integer().to_i64().expect("coordinate fits i64");
    a..=b
}

/// Winding number of the closed polyline around p (p not on the curve),
/// by signed crossings of the rightward horizontal ray from p.
pub fn winding(verts: &[Pt], p: &Pt) -> i64 {
    let m = verts.len();
    let mut total = 0;
    for i in 0..m {
        let a = &verts[i];
        let b = &verts[(i + 1) % m];
        let a_le = a.y <= p.y;
        let b_le = b.y <= p.y;
        if a_le == b_le {
            continue;
        }
        let x_int = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
        if x_int > p.x {
            total += if b_le { -1 } else { 1 };
        }
    }
    total
}

/// Rotation index of a closed polyline with no zero-length segments and no
/// 180-degree reversals: signed count of how often the direction vector
/// sweeps past a reference direction parallel to no segment.
pub fn turning_number(verts: &[Pt]) -> i64 {
    let m = verts.len();
    let dirs: Vec<Pt> = (0..m).map(|i| verts[(i + 1) % m].sub(&verts[i])).collect();
    let r = {
        let mut n = 0i64;
        loop {
            let cand = Pt::new(Rat::one(), rat_int(n));
            if dirs.iter().all(|d| !cross(d, &cand).is_zero()) {
                break cand;
            }
            n += 1;
        }
    };
    let mut total = 0;
    for i in 0..m {
        let d1 = &dirs[i];
        let d2 = &dirs[(i + 1) % m];
        let c12 = cross(d1, d2);
        if c12.is_zero() {
            continue;
        }
        let c1r = cross(d1, &r);
        let cr2 = cross(&r, d2);
        if c12 > Rat::zero() && c1r > Rat::zero() && cr2 > Rat::zero() {
            total += 1;
        } else if c12 < Rat::zero() && c1r < Rat::zero() && cr2 < Rat::zero() {
            total -= 1;
        }
    }
    total
}

/// A closed polyline is simple when adjacent segments meet only at their
/// shared vertex and all other pairs are disjoint.
pub fn polyline_is_simple(verts: &[Pt]) -> bool {
    let m = verts.len();
    for i in 0..m {
        for j in i + 1..m {
            let (a1, b1) = (&verts[i], &verts[(i + 1) % m]);
            let (a2, b2) = (&verts[j], &verts[(j + 1) % m]);
            if j == i + 1 {
                // shared vertex b1 == a2
                if on_segment(a1, b1, b2) || on_segment(a2, b2, a1) {
                    return false;
                }
            } else if i == 0 && j == m - 1 {
                // shared vertex b2 == a1
                if on_segment(a2, b2, b1) || on_segment(a1, b1, a2) {
                    return false;
                }
            } else if segments_intersect(a1, b1, a2, b2) {
                return false;
            }
        }
    }
    true
}
