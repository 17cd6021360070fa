//! From a validated diagram to a bigraded knot complex.

use super::bigons::{bigon, connecting_domain_drop, crossings, BetaLift};
use super::geometry::{int_range, on_segment, segments_intersect, Pt, Rat};
use crate::algebra::complex::{BigradedComplex, Generator};
use crate::algebra::eliminate::{reduce_w, PivotRule};
use crate::algebra::poly::PolyUV;
use crate::algebra::wcomplex::WComplex;
use crate::error::{Error, Result};

/// A genus-1 doubly pointed diagram: one period of the beta curve's lift,
/// the period translation, and the two basepoints. The final beta point
/// must equal the first plus the translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneOneDiagram {
    pub beta: Vec<(Rat, Rat)>,
    pub translation: (i64, i64),
    pub w: (Rat, Rat),
    pub z: (Rat, Rat),
}

struct Validated {
    beta: BetaLift,
    w: Pt,
    z: Pt,
    n: i64,
}

fn validated_parts(d: &OneOneDiagram) -> Result<Validated> {
    let bad = |msg: String| Error::InvalidDiagram(msg);
    if d.beta.len() < 2 {
        return Err(bad("the beta path needs at least two points".into()));
    }
    let (m, n) = d.translation;
    if n.abs() != 1 {
        return Err(bad(format!(
            "translation ({m}, {n}) must have vertical part 1 or -1"
        )));
    }
    let verts: Vec<Pt> = d
        .beta
        .iter()
        .map(|(x, y)| Pt::new(x.clone(), y.clone()))
        .collect();
    let trans = Pt::from_ints(m, n);
    let want = verts[0].add(&trans);
    if *verts.last().unwrap() != want {
        return Err(bad(
            "the beta path must end at its starting point plus the translation".into(),
        ));
    }
    for (i, v) in verts.iter().enumerate() {
        if v.y.is_integer() {
            return Err(bad(format!("beta vertex {i} lies at integer height {}", v.y)));
        }
    }
    let nseg = verts.len() - 1;
    for i in 0..nseg {
        if verts[i] == verts[i + 1] {
            return Err(bad(format!("beta segment {i} has zero length")));
        }
    }

    // The path must be embedded: adjacent segments meet only at their shared
    // vertex, all other pairs within a period are disjoint.
    for i in 0..nseg {
        for j in i + 1..nseg {
            if j == i + 1 {
                if on_segment(&verts[i], &verts[i + 1], &verts[j + 1])
                    || on_segment(&verts[j], &verts[j + 1], &verts[i])
                {
                    return Err(bad(format!("beta segments {i} and {j} overlap")));
                }
            } else if segments_intersect(&verts[i], &verts[i + 1], &verts[j], &verts[j + 1]) {
                return Err(bad(format!("beta segments {i} and {j} intersect")));
            }
        }
    }

    // Distinct lattice translates of the path must be disjoint on the
    // torus, except that consecutive periods share the junction vertex.
    // Checking the upper half-lattice suffices: disjointness is symmetric.
    let bb = super::geometry::BBox::of(&verts);
    let span_of = |lo: &Rat, hi: &Rat| -> i64 {
        num_traits::ToPrimitive::to_i64(&(hi - lo).ceil().to_integer())
            .expect("path span fits i64")
            + 1
    };
    let y_span = span_of(&bb.y0, &bb.y1);
    let x_span = span_of(&bb.x0, &bb.x1);
    for dy in 0..=y_span {
        for dx in -x_span..=x_span {
            if dy == 0 && dx <= 0 {
                continue;
            }
            let off = Pt::from_ints(dx, dy);
            // Consecutive periods share one corner: the end of the last
            // segment against the start of the first (or the mirror pair,
            // for a downward translation). The shared vertex is fine;
            // overlap along either segment is not.
            let junction = if (dx, dy) == (m, n) {
                Some((nseg - 1, 0))
            } else if (dx, dy) == (-m, -n) {
                Some((0, nseg - 1))
            } else {
                None
            };
            for i in 0..nseg {
                for j in 0..nseg {
                    let qa = verts[j].add(&off);
                    let qb = verts[j + 1].add(&off);
                    if junction == Some((i, j)) {
                        let (far_theirs, far_ours) = if (dx, dy) == (m, n) {
                            (&qb, &verts[i])
                        } else {
                            (&qa, &verts[i + 1])
                        };
                        if on_segment(&verts[i], &verts[i + 1], far_theirs)
                            || on_segment(&qa, &qb, far_ours)
                        {
                            return Err(bad(
                                "the beta path overlaps its translate at the junction".into(),
                            ));
                        }
                    } else if segments_intersect(&verts[i], &verts[i + 1], &qa, &qb) {
                        return Err(bad(format!(
                            "the beta path intersects its translate by ({dx}, {dy})"
                        )));
                    }
                }
            }
        }
    }

    // Basepoints: off every horizontal integer line and every translate of
    // the beta path.
    let check_basepoint = |name: &str, (px, py): &(Rat, Rat)| -> Result<Pt> {
        if py.is_integer() {
            return Err(bad(format!("basepoint {name} lies at integer height")));
        }
        let p = Pt::new(px.clone(), py.clone());
        for j in int_range(&(&bb.x0 - &p.x), &(&bb.x1 - &p.x)) {
            for h in int_range(&(&bb.y0 - &p.y), &(&bb.y1 - &p.y)) {
                let q = p.add(&Pt::from_ints(j, h));
                for s in 0..nseg {
                    if on_segment(&verts[s], &verts[s + 1], &q) {
                        return Err(bad(format!("basepoint {name} lies on the beta curve")));
                    }
                }
            }
        }
        Ok(p)
    };
    let w = check_basepoint("w", &d.w)?;
    let z = check_basepoint("z", &d.z)?;

    Ok(Validated {
        beta: BetaLift { verts, trans },
        w,
        z,
        n,
    })
}

/// A validated diagram's headline numbers: how many generators the curves
/// cut out, and the signed crossing count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramReport {
    pub generators: usize,
    pub intersection_number: i64,
}

/// Check every diagram invariant and summarize the intersection pattern.
pub fn validate_diagram(d: &OneOneDiagram) -> Result<DiagramReport> {
    let v = validated_parts(d)?;
    let xs = crossings(&v.beta);
    Ok(DiagramReport {
        generators: xs.len(),
        intersection_number: xs.iter().map(|c| if c.upward { 1 } else { -1 }).sum(),
    })
}

/// The algebraic intersection number α·β: up-crossings minus down-crossings
/// within one period of the lift. This is the 1×1 H₁ presentation entry for
/// the diagram's ambient manifold, so a valid knot diagram always reports
/// the vertical part of its translation, ±1 — presenting S³.
pub fn algebraic_intersection_number(d: &OneOneDiagram) -> Result<i64> {
    Ok(validate_diagram(d)?.intersection_number)
}

/// Labels of the intersection-point generators, in the order the beta path
/// meets them.
pub fn enumerate_generators(d: &OneOneDiagram) -> Result<Vec<String>> {
    let v = validated_parts(d)?;
    Ok((0..crossings(&v.beta).len()).map(gen_label).collect())
}

/// One accepted index-one disk: source and target generators together with
/// the basepoint multiplicities decorating its differential entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigonCount {
    pub from: String,
    pub to: String,
    pub w_multiplicity: u32,
    pub z_multiplicity: u32,
}

/// Every embedded bigon between distinct generators. The pairing of lifts is
/// unique, so this list is exactly the unreduced differential's support.
pub fn count_bigons(d: &OneOneDiagram) -> Result<Vec<BigonCount>> {
    let v = validated_parts(d)?;
    let xs = crossings(&v.beta);
    let mut out = Vec::new();
    for i in 0..xs.len() {
        for j in 0..xs.len() {
            if i == j {
                continue;
            }
            if let Some(b) = bigon(&xs[i], &xs[j], v.n, &v.beta, &v.w, &v.z) {
                out.push(BigonCount {
                    from: gen_label(i),
                    to: gen_label(j),
                    w_multiplicity: b.nw,
                    z_multiplicity: b.nz,
                });
            }
        }
    }
    Ok(out)
}

/// Spreadsheet-style generator names: a, b, ..., z, aa, ab, ...
fn gen_label(mut i: usize) -> String {
    let mut bytes = Vec::new();
    loop {
        bytes.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    bytes.reverse();
    String::from_utf8(bytes).expect("ascii labels")
}

/// Grading of the lone generator surviving unit cancellation, or an error
/// when the specialization is not a single free tower.
fn tower_grading(wcx: &WComplex, which: &str) -> Result<i64> {
    let red = reduce_w(wcx, PivotRule::MinFill);
    if red.minimal.len() != 1 || red.minimal.entries().next().is_some() {
        return Err(Error::InvalidDiagram(format!(
            "setting {which} = 1 does not leave a single tower; the diagram does not present a knot"
        )));
    }
    Ok(red.minimal.gen(0).grading)
}

/// Build the knot complex of a diagram: generators are the crossings with
/// the alpha lines, the differential counts embedded index-one disks, and
/// gradings come from connecting domains, pinned so that each localized
/// tower sits in degree zero.
pub fn cfk_from_diagram(d: &OneOneDiagram) -> Result<BigradedComplex> {
    let v = validated_parts(d)?;
    let xs = crossings(&v.beta);
    let count = xs.len();

    let mut diff = vec![Vec::new(); count];
    for i in 0..count {
        for j in 0..count {
            if i == j {
                continue;
            }
            if let Some(b) = bigon(&xs[i], &xs[j], v.n, &v.beta, &v.w, &v.z) {
                diff[i].push((j, PolyUV::monomial(b.nw, b.nz)));
            }
        }
    }

    let mut gr_u = vec![0i64; count];
    let mut gr_v = vec![0i64; count];
    for i in 0..count.saturating_sub(1) {
        let (du, dv) = connecting_domain_drop(&xs[i], &xs[i + 1], v.n, &v.beta, &v.w, &v.z)?;
        gr_u[i + 1] = gr_u[i] - du;
        gr_v[i + 1] = gr_v[i] - dv;
    }

    let gens: Vec<Generator> = (0..count)
        .map(|i| Generator::new(gen_label(i), gr_u[i], gr_v[i]))
        .collect();
    let cx = BigradedComplex::new(gens, diff).map_err(|e| {
        Error::Internal(format!("bigon count produced an inconsistent complex: {e}"))
    })?;

    let shift_u = -tower_grading(&cx.specialize_v1(), "V")?;
    let shift_v = -tower_grading(&cx.specialize_u1(), "U")?;
    Ok(cx.shifted(shift_u, shift_v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::grading::Bigrading;
    use crate::knots::hfk_hat;
    use std::collections::BTreeMap;

    fn r(n: i64, d: i64) -> Rat {
        super::super::geometry::rat(n, d)
    }

    fn pt(n1: i64, d1: i64, n2: i64, d2: i64) -> (Rat, Rat) {
        (r(n1, d1), r(n2, d2))
    }

    fn trefoil_diagram() -> OneOneDiagram {
        OneOneDiagram {
            beta: vec![
                pt(1, 10, -1, 4),
                pt(1, 10, 2, 5),
                pt(1, 2, 2, 5),
                pt(1, 2, -1, 4),
                pt(4, 5, -1, 4),
                pt(4, 5, 7, 10),
                pt(1, 10, 3, 4),
            ],
            translation: (0, 1),
            w: pt(3, 10, 1, 5),
            z: pt(13, 20, -1, 8),
        }
    }

    fn unknot_diagram() -> OneOneDiagram {
        OneOneDiagram {
            beta: vec![pt(1, 2, -1, 4), pt(1, 2, 3, 4)],
            translation: (0, 1),
            w: pt(1, 4, 1, 5),
            z: pt(3, 4, 1, 5),
        }
    }

    #[test]
    fn trefoil_diagram_matches_model() {
        let cx = cfk_from_diagram(&trefoil_diagram()).unwrap();
        assert_eq!(cx.len(), 3);
        let labels: Vec<&str> = cx.gens().iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, vec!["a", "b", "c"]);
        assert_eq!(cx.gen(0).grading, Bigrading::new(0, 2));
        assert_eq!(cx.gen(1).grading, Bigrading::new(1, 1));
        assert_eq!(cx.gen(2).grading, Bigrading::new(2, 0));
        assert_eq!(cx.diff()[0], vec![(1, PolyUV::monomial(1, 0))]);
        assert_eq!(cx.diff()[2], vec![(1, PolyUV::monomial(0, 1))]);
        assert!(cx.diff()[1].is_empty());
        assert!(cx.structure_eq(&crate::algebra::complex::fixtures::left_trefoil()));
    }

    #[test]
    fn unknot_diagram_is_one_generator() {
        let cx = cfk_from_diagram(&unknot_diagram()).unwrap();
        assert_eq!(cx.len(), 1);
        assert_eq!(cx.gen(0).grading, Bigrading::new(0, 0));
        assert!(cx.diff()[0].is_empty());
    }

    fn figure_eight_diagram() -> OneOneDiagram {
        OneOneDiagram {
            beta: vec![
                pt(1, 10, -11, 16),
                pt(1, 10, 3, 16),
                pt(7, 10, 3, 16),
                pt(7, 10, -7, 16),
                pt(1, 2, -7, 16),
                pt(1, 2, 1, 16),
                pt(3, 10, 1, 16),
                pt(3, 10, -9, 16),
                pt(9, 10, -9, 16),
                pt(9, 10, 5, 16),
                pt(1, 10, 5, 16),
            ],
            translation: (0, 1),
            w: pt(2, 5, 1, 64),
            z: pt(3, 5, -1, 64),
        }
    }

    #[test]
    fn figure_eight_diagram_matches_the_alternating_model() {
        use crate::knots::{
            euler_characteristic, genus, hfk_minus, is_fibered, thin_from_alexander_signature,
            LaurentPoly,
        };
        let cx = cfk_from_diagram(&figure_eight_diagram()).unwrap();
        assert_eq!(cx.len(), 5);
        let delta = LaurentPoly::from_pairs(&[(1, -1), (0, 3), (-1, -1)]).unwrap();
        let model = thin_from_alexander_signature(&delta, 0).unwrap();
        assert_eq!(hfk_hat(&cx).unwrap(), hfk_hat(&model).unwrap());
        assert_eq!(
            hfk_minus(&cx).unwrap().0,
            hfk_minus(&model).unwrap().0
        );
        assert_eq!(genus(&cx).unwrap(), 1);
        assert!(is_fibered(&cx).unwrap());
        assert_eq!(euler_characteristic(&cx).unwrap(), delta);
    }

    #[test]
    fn slanted_translation_unknot() {
        let d = OneOneDiagram {
            beta: vec![pt(1, 2, -1, 4), pt(3, 2, 3, 4)],
            translation: (1, 1),
            w: pt(1, 4, 2, 5),
            z: pt(1, 4, 3, 5),
        };
        let cx = cfk_from_diagram(&d).unwrap();
        assert_eq!(cx.len(), 1);
        assert_eq!(cx.gen(0).grading, Bigrading::new(0, 0));
    }

    #[test]
    fn stabilized_unknot_reduces_to_trivial_homology() {
        // Three crossings, two of which cancel through basepoint-free disks.
        let d = OneOneDiagram {
            beta: vec![
                pt(1, 4, -1, 4),
                pt(1, 4, 1, 4),
                pt(1, 2, 1, 4),
                pt(1, 2, -1, 8),
                pt(3, 4, -1, 8),
                pt(3, 4, 3, 4),
                pt(1, 4, 3, 4),
            ],
            translation: (0, 1),
            w: pt(1, 8, 1, 8),
            z: pt(1, 8, 1, 16),
        };
        let cx = cfk_from_diagram(&d).unwrap();
        assert_eq!(cx.len(), 3);
        let hat = hfk_hat(&cx).unwrap();
        let expect: BTreeMap<(i64, i64), usize> = [((0, 0), 1)].into_iter().collect();
        assert_eq!(hat, expect);
    }

    #[test]
    fn bigon_counts_for_the_worked_diagrams() {
        assert_eq!(
            enumerate_generators(&trefoil_diagram()).unwrap(),
            vec!["a", "b", "c"]
        );
        let report = validate_diagram(&trefoil_diagram()).unwrap();
        assert_eq!(report.generators, 3);
        assert_eq!(report.intersection_number, 1);

        let bigons = count_bigons(&trefoil_diagram()).unwrap();
        let listed: Vec<(&str, &str, u32, u32)> = bigons
            .iter()
            .map(|b| (b.from.as_str(), b.to.as_str(), b.w_multiplicity, b.z_multiplicity))
            .collect();
        assert_eq!(listed, vec![("a", "b", 1, 0), ("c", "b", 0, 1)]);

        // Swapping the basepoints swaps the roles of the two variables.
        let mut swapped = trefoil_diagram();
        std::mem::swap(&mut swapped.w, &mut swapped.z);
        let bigons = count_bigons(&swapped).unwrap();
        let listed: Vec<(&str, &str, u32, u32)> = bigons
            .iter()
            .map(|b| (b.from.as_str(), b.to.as_str(), b.w_multiplicity, b.z_multiplicity))
            .collect();
        assert_eq!(listed, vec![("a", "b", 0, 1), ("c", "b", 1, 0)]);

        assert!(count_bigons(&unknot_diagram()).unwrap().is_empty());
        assert_eq!(
            validate_diagram(&figure_eight_diagram()).unwrap().generators,
            5
        );
    }

    #[test]
    fn intersection_number_matches_the_translation() {
        assert_eq!(
            algebraic_intersection_number(&trefoil_diagram()).unwrap(),
            1
        );
        assert_eq!(algebraic_intersection_number(&unknot_diagram()).unwrap(), 1);

        // A downward period reports -1.
        let down = OneOneDiagram {
            beta: vec![pt(1, 2, 1, 4), pt(1, 2, -3, 4)],
            translation: (0, -1),
            w: pt(1, 4, 1, 5),
            z: pt(3, 4, 1, 5),
        };
        assert_eq!(algebraic_intersection_number(&down).unwrap(), -1);
        assert_eq!(cfk_from_diagram(&down).unwrap().len(), 1);
    }

    #[test]
    fn diagram_rejections() {
        // Vertex at integer height.
        let mut d = trefoil_diagram();
        d.beta[1] = pt(1, 10, 0, 1);
        assert!(matches!(
            cfk_from_diagram(&d),
            Err(Error::InvalidDiagram(_))
        ));

        // Translation with |n| != 1.
        let mut d = trefoil_diagram();
        d.translation = (0, 2);
        assert!(cfk_from_diagram(&d).is_err());

        // Path does not close up to the translation.
        let mut d = trefoil_diagram();
        d.beta.pop();
        assert!(cfk_from_diagram(&d).is_err());

        // Basepoint on the curve (at a non-integer height).
        let mut d = trefoil_diagram();
        d.w = pt(1, 10, 1, 5);
        assert!(cfk_from_diagram(&d).is_err());

        // Self-intersecting path.
        let d = OneOneDiagram {
            beta: vec![
                pt(1, 10, -1, 4),
                pt(4, 5, 1, 2),
                pt(2, 5, -1, 5),
                pt(1, 10, 3, 4),
            ],
            translation: (0, 1),
            w: pt(1, 20, 1, 5),
            z: pt(19, 20, 1, 5),
        };
        let err = cfk_from_diagram(&d).unwrap_err();
        assert!(matches!(err, Error::InvalidDiagram(_)));
    }
}
