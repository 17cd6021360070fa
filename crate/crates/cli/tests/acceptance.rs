//! Acceptance suite: one test per shipping criterion, each asserting exact
//! values (no tolerances) and printing a pass line on success.

use std::collections::{BTreeMap, BTreeSet};

use knotfloer::algebra::{
    homology_dvr, homology_dvr_certified, reduce_bigraded, reduce_w, BigradedComplex, Bigrading,
    DvrModule, Element, Generator, GradingMode, PivotRule, PolyUV, TruncationSettings,
};
use knotfloer::h1::{h1_group, stabilize, IntersectionMatrix};
use knotfloer::knots::{self, KnotSpec, LaurentPoly};
use knotfloer::one_one::{cfk_from_diagram, OneOneDiagram, Rat};
use knotfloer::surgery::{
    alexander_summand, is_lspace_result, large_surgery, surgery_homology, SurgeryOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_pairs(pairs).expect("valid polynomial")
}

fn lspace(pairs: &[(i64, i64)]) -> BigradedComplex {
    knots::build(&KnotSpec::LSpace {
        alexander: poly(pairs),
    })
    .expect("valid L-space pattern")
}

fn unknot() -> BigradedComplex {
    lspace(&[(0, 1)])
}

fn right_trefoil() -> BigradedComplex {
    lspace(&[(1, 1), (0, -1), (-1, 1)])
}

fn left_trefoil() -> BigradedComplex {
    knots::build(&KnotSpec::Mirror {
        of: Box::new(KnotSpec::LSpace {
            alexander: poly(&[(1, 1), (0, -1), (-1, 1)]),
        }),
    })
    .expect("valid spec")
}

fn figure_eight() -> BigradedComplex {
    knots::build(&KnotSpec::Alternating {
        alexander: poly(&[(1, -1), (0, 3), (-1, -1)]),
        signature: 0,
    })
    .expect("valid thin pair")
}

fn torus_3_4() -> BigradedComplex {
    lspace(&[(3, 1), (2, -1), (0, 1), (-2, -1), (-3, 1)])
}

fn granny() -> BigradedComplex {
    let trefoil = KnotSpec::LSpace {
        alexander: poly(&[(1, 1), (0, -1), (-1, 1)]),
    };
    knots::build(&KnotSpec::Sum {
        summands: vec![trefoil.clone(), trefoil],
    })
    .expect("valid spec")
}

fn knot_suite() -> Vec<(&'static str, BigradedComplex)> {
    vec![
        ("unknot", unknot()),
        ("right trefoil", right_trefoil()),
        ("left trefoil", left_trefoil()),
        ("figure eight", figure_eight()),
        ("(3,4) torus knot", torus_3_4()),
        ("granny knot", granny()),
    ]
}

fn diagram_from_json(text: &str) -> OneOneDiagram {
    #[derive(serde::Deserialize)]
    struct Doc {
        beta: Vec<(String, String)>,
        translation: (i64, i64),
        w: (String, String),
        z: (String, String),
    }
    let doc: Doc = serde_json::from_str(text).expect("well-formed diagram file");
    let pt = |p: &(String, String)| -> (Rat, Rat) {
        (
            p.0.parse().expect("rational coordinate"),
            p.1.parse().expect("rational coordinate"),
        )
    };
    OneOneDiagram {
        beta: doc.beta.iter().map(&pt).collect(),
        translation: doc.translation,
        w: pt(&doc.w),
        z: pt(&doc.z),
    }
}

#[test]
fn criterion_1_worked_diagram_round_trip() {
    let d = diagram_from_json(include_str!("../data/trefoil.json"));
    let cx = cfk_from_diagram(&d).expect("diagram yields a complex");

    // Generator table: (label, gr_U, gr_V, Alexander), exactly.
    let table: Vec<(&str, i64, i64, i64)> = cx
        .gens()
        .iter()
        .map(|g| {
            (
                g.label.as_str(),
                g.grading.u,
                g.grading.v,
                g.grading.alexander(),
            )
        })
        .collect();
    assert_eq!(
        table,
        vec![("a", 0, 2, -1), ("b", 1, 1, 0), ("c", 2, 0, 1)],
        "grading table"
    );

    // d(a) = U b, d(b) = 0, d(c) = V b.
    assert_eq!(cx.diff()[0], vec![(1, PolyUV::monomial(1, 0))]);
    assert_eq!(cx.diff()[1], vec![]);
    assert_eq!(cx.diff()[2], vec![(1, PolyUV::monomial(0, 1))]);

    // Homology over the two-variable ring: one free summand generated at
    // (0, 0) and one F at (1, 1). In any window that means dimension 1 at
    // (0,0) - (2i, 2j), dimension 1 at (1,1), zero elsewhere.
    let dims = cx.homology_dims_in_window((-6, 2), (-6, 2));
    for p in -6..=2 {
        for q in -6..=2 {
            let want = if (p, q) == (1, 1) {
                1
            } else if p <= 0 && q <= 0 && p % 2 == 0 && q % 2 == 0 {
                1
            } else {
                0
            };
            assert_eq!(
                dims.get(&(p, q)).copied().unwrap_or(0),
                want,
                "homology dimension at ({p},{q})"
            );
        }
    }

    // The free summand is generated by [Va + Uc]: the class and its
    // W-multiple are nonzero. The F at (1,1) is [b], killed by U and V.
    let va_uc: Element = BTreeMap::from([
        (0usize, PolyUV::monomial(0, 1)),
        (2usize, PolyUV::monomial(1, 0)),
    ]);
    assert!(cx.homology_class_is_nonzero(&va_uc).unwrap());
    let w_va_uc: Element = BTreeMap::from([
        (0usize, PolyUV::monomial(1, 2)),
        (2usize, PolyUV::monomial(2, 1)),
    ]);
    assert!(cx.homology_class_is_nonzero(&w_va_uc).unwrap());
    let b: Element = BTreeMap::from([(1usize, PolyUV::one())]);
    assert!(cx.homology_class_is_nonzero(&b).unwrap());
    let ub: Element = BTreeMap::from([(1usize, PolyUV::monomial(1, 0))]);
    let vb: Element = BTreeMap::from([(1usize, PolyUV::monomial(0, 1))]);
    assert!(!cx.homology_class_is_nonzero(&ub).unwrap());
    assert!(!cx.homology_class_is_nonzero(&vb).unwrap());

    println!("acceptance 1 (worked diagram round trip): pass");
}

#[test]
fn criterion_2_left_trefoil_knot_invariants() {
    let cx = left_trefoil();
    let hat = knots::hfk_hat(&cx).unwrap();
    let want: BTreeMap<(i64, i64), usize> =
        BTreeMap::from([((0, -1), 1), ((1, 0), 1), ((2, 1), 1)]);
    assert_eq!(hat, want, "hat table");
    let (minus, _) = knots::hfk_minus(&cx).unwrap();
    assert_eq!(minus, DvrModule::absolute(vec![2], vec![(1, 1)]), "minus module");
    println!("acceptance 2 (left trefoil knot invariants): pass");
}

#[test]
fn criterion_3_left_trefoil_surgeries() {
    let cx = left_trefoil();
    let opts = SurgeryOptions::default();

    // +1: one tower plus one exponent-1 torsion summand one grading above
    // the tower generator, in relative gradings.
    let plus1 = surgery_homology(&cx, 1, &opts).unwrap();
    assert_eq!(plus1.classes.len(), 1);
    let m = &plus1.classes[0].module;
    assert_eq!(m.mode(), GradingMode::Relative);
    assert_eq!(m.free(), &[0]);
    assert_eq!(m.torsion(), &[(1, 1)]);

    // +3 per class: [0] tower + torsion, [1] and [2] tower only.
    let plus3 = surgery_homology(&cx, 3, &opts).unwrap();
    assert_eq!(plus3.classes.len(), 3);
    for class in &plus3.classes {
        let want = if class.class == 0 {
            DvrModule::relative(vec![0], vec![(1, 1)])
        } else {
            DvrModule::relative(vec![0], vec![])
        };
        assert_eq!(class.module, want, "class {}", class.class);
    }

    println!("acceptance 3 (left trefoil surgeries): pass");
}

#[test]
fn criterion_4_two_surgery_routes_agree() {
    let trunc = TruncationSettings::default();
    let opts = SurgeryOptions::default();
    for (name, cx) in knot_suite() {
        let g = knots::genus(&cx).unwrap();
        let lo = (2 * g - 1).max(1);
        for n in lo..=(2 * g + 3) {
            let cone = surgery_homology(&cx, n, &opts).unwrap();
            assert_eq!(cone.classes.len(), n as usize, "{name} n={n}: class count");
            for k in 0..n {
                let s = if 2 * k <= n { k } else { k - n };
                let (fast, _) = large_surgery(&cx, n, s, &trunc).unwrap();
                let class = cone
                    .classes
                    .iter()
                    .find(|c| c.class == k)
                    .unwrap_or_else(|| panic!("{name} n={n}: missing class {k}"));
                assert!(
                    class.module.isomorphic(&fast).unwrap(),
                    "{name} n={n} class {k}: cone {} vs large-surgery {}",
                    class.module,
                    fast
                );
            }
        }
    }
    println!("acceptance 4 (mapping cone vs large surgery): pass");
}

fn random_staircase_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let m: usize = rng.gen_range(0..=4);
    let mut exps: Vec<i64> = Vec::new();
    let mut next: i64 = rng.gen_range(1..=3);
    for _ in 0..m {
        exps.push(next);
        next += rng.gen_range(1..=3);
    }
    exps.reverse();
    let mut pairs = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        pairs.push((e, sign));
        pairs.push((-e, sign));
    }
    pairs.push((0, if m % 2 == 0 { 1 } else { -1 }));
    poly(&pairs)
}

fn random_thin_pair(rng: &mut ChaCha8Rng) -> (LaurentPoly, i64) {
    let tau: i64 = rng.gen_range(-2..=2);
    let sigma = -2 * tau;
    let mut dims: BTreeMap<i64, i64> = (-tau.abs()..=tau.abs()).map(|s| (s, 1)).collect();
    for _ in 0..rng.gen_range(0..=3) {
        let c: i64 = rng.gen_range(0..=3);
        let centers = if c == 0 { vec![0] } else { vec![c, -c] };
        for center in centers {
            *dims.entry(center + 1).or_insert(0) += 1;
            *dims.entry(center).or_insert(0) += 2;
            *dims.entry(center - 1).or_insert(0) += 1;
        }
    }
    let pairs: Vec<(i64, i64)> = dims
        .iter()
        .map(|(&s, &d)| {
            let sign = if (s + sigma / 2).rem_euclid(2) == 0 { 1 } else { -1 };
            (s, sign * d)
        })
        .collect();
    (poly(&pairs), sigma)
}

#[test]
fn criterion_5_euler_characteristic_matches_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
    for trial in 0..50 {
        let delta = random_staircase_poly(&mut rng);
        let cx = knots::build(&KnotSpec::LSpace {
            alexander: delta.clone(),
        })
        .unwrap_or_else(|e| panic!("staircase trial {trial} ({delta}): {e}"));
        assert_eq!(
            knots::euler_characteristic(&cx).unwrap(),
            delta,
            "staircase trial {trial}"
        );
    }
    for trial in 0..20 {
        let (delta, sigma) = random_thin_pair(&mut rng);
        let cx = knots::build(&KnotSpec::Alternating {
            alexander: delta.clone(),
            signature: sigma,
        })
        .unwrap_or_else(|e| panic!("thin trial {trial} ({delta}, sigma {sigma}): {e}"));
        assert_eq!(
            knots::euler_characteristic(&cx).unwrap(),
            delta,
            "thin trial {trial} (sigma {sigma})"
        );
    }
    println!("acceptance 5 (Euler characteristic round trip): pass");
}

#[test]
fn criterion_6_genus_and_fiberedness() {
    let torus_cases: Vec<((i64, i64), BigradedComplex)> = vec![
        ((2, 3), right_trefoil()),
        ((2, 5), lspace(&[(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)])),
        ((3, 4), torus_3_4()),
        (
            (3, 5),
            lspace(&[
                (4, 1),
                (3, -1),
                (1, 1),
                (0, -1),
                (-1, 1),
                (-3, -1),
                (-4, 1),
            ]),
        ),
    ];
    for ((p, q), cx) in torus_cases {
        assert_eq!(
            knots::genus(&cx).unwrap(),
            (p - 1) * (q - 1) / 2,
            "genus of the ({p},{q}) torus knot"
        );
        assert!(
            knots::is_fibered(&cx).unwrap(),
            "({p},{q}) torus knot is fibered"
        );
    }
    let fig8 = figure_eight();
    assert_eq!(knots::genus(&fig8).unwrap(), 1, "figure-eight genus");
    assert!(knots::is_fibered(&fig8).unwrap(), "figure-eight is fibered");
    println!("acceptance 6 (genus and fiberedness): pass");
}

#[test]
fn criterion_7_l_space_suite() {
    let opts = SurgeryOptions::default();
    let u = unknot();
    for n in 1..=7 {
        let res = surgery_homology(&u, n, &opts).unwrap();
        assert_eq!(res.classes.len(), n as usize, "unknot n={n}: class count");
        assert!(
            res.classes.iter().all(|c| c.module.is_torsion_free()),
            "unknot n={n}: torsion-free classes"
        );
        assert!(is_lspace_result(&res), "unknot n={n} is a lens space");
    }
    let t34 = surgery_homology(&torus_3_4(), 5, &opts).unwrap();
    assert!(is_lspace_result(&t34), "(3,4) torus knot at n=5");
    let left = surgery_homology(&left_trefoil(), 1, &opts).unwrap();
    assert!(!is_lspace_result(&left), "left trefoil at n=+1");
    println!("acceptance 7 (L-space suite): pass");
}

/// A copy of `cx` with every label prefixed, so direct sums of complexes
/// drawn from the same leaves keep their labels distinct.
fn prefixed(cx: &BigradedComplex, tag: &str) -> BigradedComplex {
    BigradedComplex::new(
        cx.gens()
            .iter()
            .map(|g| Generator::new(format!("{tag}.{}", g.label), g.grading.u, g.grading.v))
            .collect(),
        cx.diff().to_vec(),
    )
    .expect("relabeling preserves validity")
}

#[test]
fn criterion_8_property_suites() {
    // 200 randomized tensor/dual/sum compositions all validate: d^2 = 0,
    // gradings homogeneous of bidegree (-1,-1), single-monomial entries.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0008);
    let leaves: Vec<BigradedComplex> = vec![
        unknot(),
        right_trefoil(),
        left_trefoil(),
        figure_eight(),
        torus_3_4(),
    ];
    let mut pool = leaves.clone();
    let mut small: Vec<BigradedComplex> = Vec::new();
    for round in 0..200 {
        let pick = rng.gen_range(0..pool.len());
        let cx = match rng.gen_range(0..3u8) {
            0 => pool[pick].dualize(),
            1 => {
                let other = &leaves[rng.gen_range(0..leaves.len())];
                if pool[pick].len() * other.len() > 120 {
                    pool[pick].dualize()
                } else {
                    pool[pick].tensor(other)
                }
            }
            _ => {
                let other = &leaves[rng.gen_range(0..leaves.len())];
                pool[pick].direct_sum(&prefixed(other, &format!("r{round}")))
            }
        };
        let report = cx.validate();
        assert!(
            report.is_valid(),
            "round {round}: composition invalid: {:?}",
            report.problems
        );
        if cx.len() <= 20 && small.len() < 60 {
            small.push(cx.clone());
        }
        pool.push(cx);
        if pool.len() > 40 {
            pool.remove(0);
        }
    }

    // Elimination vs dense rank computation on every complex of at most 20
    // generators: the reduced hat model has zero differential and its
    // generator count per bigrading equals the dense homology dimensions;
    // the reduced one-variable model has the same series homology.
    let mut small_checked = 0usize;
    for cx in leaves.iter().chain(small.iter()) {
        if cx.len() > 20 {
            continue;
        }
        let hat = cx.specialize_uv0();
        let brute = hat.homology_f2().unwrap();
        let red = reduce_bigraded(&hat, PivotRule::MinFill);
        assert!(
            red.minimal.diff().iter().all(|col| col.is_empty()),
            "hat reduction not minimal"
        );
        let mut dims: BTreeMap<Bigrading, usize> = BTreeMap::new();
        for g in red.minimal.gens() {
            *dims.entry(g.grading).or_insert(0) += 1;
        }
        assert_eq!(dims, brute, "elimination vs dense homology");

        let w = cx.specialize_v0();
        let direct = homology_dvr(&w, 64).unwrap();
        let wred = reduce_w(&w, PivotRule::MinFill);
        assert_eq!(
            homology_dvr(&wred.minimal, 64).unwrap(),
            direct,
            "series homology changed under elimination"
        );
        small_checked += 1;
    }
    assert!(small_checked >= 10, "too few small complexes exercised");

    // Truncation stability: order N vs N + 4 on every Alexander summand of
    // the knot suite, and truncation window vs window + 2 on small surgeries.
    for (name, cx) in knot_suite() {
        let g = knots::genus(&cx).unwrap();
        for s in -g..=g {
            let a = alexander_summand(&cx, s);
            let (m, stability) =
                homology_dvr_certified(&a, &TruncationSettings::default()).unwrap();
            let again = homology_dvr(&a, stability.order_used + 4).unwrap();
            assert_eq!(m, again, "{name} summand {s}: truncation unstable");
        }
        for n in [1, 2] {
            let base = surgery_homology(&cx, n, &SurgeryOptions::default()).unwrap();
            let wide = surgery_homology(
                &cx,
                n,
                &SurgeryOptions {
                    window_slack: 2,
                    ..SurgeryOptions::default()
                },
            )
            .unwrap();
            for (b, w) in base.classes.iter().zip(wide.classes.iter()) {
                assert!(
                    b.module.isomorphic(&w.module).unwrap(),
                    "{name} n={n} class {}: window-sensitive result",
                    b.class
                );
            }
        }
    }

    println!("acceptance 8 (property suites): pass");
}

#[test]
fn criterion_9_first_homology_checks() {
    let order_two = IntersectionMatrix::new(vec![vec![2]]).unwrap();
    assert_eq!(h1_group(&order_two).unwrap().to_string(), "Z/2");

    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0009);
    for trial in 0..100 {
        let k = rng.gen_range(1..=4);
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..k).map(|_| rng.gen_range(-6..=6)).collect())
            .collect();
        let m = IntersectionMatrix::new(rows).unwrap();
        assert_eq!(
            h1_group(&m).unwrap(),
            h1_group(&stabilize(&m)).unwrap(),
            "trial {trial}: stabilization changed the group"
        );
    }

    for (name, cx) in [("left trefoil", left_trefoil()), ("figure eight", figure_eight())] {
        for n in [-3i64, -1, 1, 2, 5] {
            let res = surgery_homology(&cx, n, &SurgeryOptions::default()).unwrap();
            assert_eq!(
                res.classes.len(),
                n.unsigned_abs() as usize,
                "{name} n={n}: class count"
            );
            let labels: BTreeSet<i64> = res.classes.iter().map(|c| c.class).collect();
            let want: BTreeSet<i64> = (0..n.abs()).collect();
            assert_eq!(labels, want, "{name} n={n}: class labels");
        }
    }

    println!("acceptance 9 (first homology checks): pass");
}
