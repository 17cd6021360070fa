//! The built-in worked-example corpus: every value the engine is expected
//! to reproduce exactly, replayed end to end. `knotfloer corpus` prints one
//! line per check and fails (exit 4) if any expectation is violated.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;

use knotfloer::algebra::eliminate::{apply_columns, sparse_from_w, Combo};
use knotfloer::algebra::{
    homology_dvr, plus_and_hat_views, reduce_w, reduction_identities_hold, BigradedComplex,
    Bigrading, DvrModule, Generator, PivotRule, PolyUV, TruncationSettings, WPoly, WRing,
};
use knotfloer::h1::{h1_group, hf_dimension_check, stabilize, AbelianGroup, IntersectionMatrix};
use knotfloer::knots::{self, KnotSpec, LaurentPoly};
use knotfloer::one_one::{
    cfk_from_diagram, count_bigons, enumerate_generators, validate_diagram, BigonCount,
};
use knotfloer::surgery::{
    alexander_summand, b_summand, build_cone, is_lspace_result, large_surgery, surgery_homology,
    SurgeryOptions,
};

use crate::commands::{diagram_document, h1_document, hfk_document, surgery_document};
use crate::docs::{BigonEntry, DiagramDocument, HatEntry, SpecDocument, TorsionEntry};
use crate::Failure;

type Check = Result<(), String>;

fn er<E: Display>(e: E) -> String {
    e.to_string()
}

macro_rules! check_eq {
    ($got:expr, $want:expr, $what:expr) => {{
        let got = &$got;
        let want = &$want;
        if got != want {
            return Err(format!("{}: got {:?}, want {:?}", $what, got, want));
        }
    }};
}

/// The left-handed trefoil model: three generators a, b, c with
/// d(a) = Ub, d(c) = Vb. Every knot-side check is anchored here.
fn trefoil_model() -> BigradedComplex {
    BigradedComplex::new(
        vec![
            Generator::new("a", 0, 2),
            Generator::new("b", 1, 1),
            Generator::new("c", 2, 0),
        ],
        vec![
            vec![(1, PolyUV::monomial(1, 0))],
            vec![],
            vec![(1, PolyUV::monomial(0, 1))],
        ],
    )
    .expect("the trefoil model is a valid complex")
}

fn trefoil_alexander() -> LaurentPoly {
    LaurentPoly::from_pairs(&[(1, 1), (0, -1), (-1, 1)]).expect("valid polynomial")
}

const WORKED_DIAGRAM: &str = include_str!("../data/trefoil.json");

const MIRROR_SPEC: &str = r#"{
  "knot": {
    "type": "mirror",
    "of": { "type": "lspace", "alexander": [[1, 1], [0, -1], [-1, 1]] }
  }
}"#;

fn worked_diagram_doc() -> Result<DiagramDocument, String> {
    serde_json::from_str(WORKED_DIAGRAM).map_err(er)
}

fn spec_doc() -> Result<SpecDocument, String> {
    serde_json::from_str(MIRROR_SPEC).map_err(er)
}

fn fail_msg(f: Failure) -> String {
    f.message().to_string()
}

fn model_validates() -> Check {
    let cx = trefoil_model();
    let report = cx.validate();
    if !report.is_valid() {
        return Err(format!("validation problems: {:?}", report.problems));
    }
    check_eq!(cx.len(), 3, "generator count");
    Ok(())
}

fn dual_transposes_the_differential() -> Check {
    let dual = trefoil_model().dualize();
    let gradings: Vec<(i64, i64)> = dual
        .gens()
        .iter()
        .map(|g| (g.grading.u, g.grading.v))
        .collect();
    check_eq!(gradings, vec![(0, -2), (-1, -1), (-2, 0)], "dual gradings");
    check_eq!(dual.diff()[0], vec![], "dual d(a*)");
    check_eq!(dual.diff()[2], vec![], "dual d(c*)");
    let middle: BTreeMap<usize, PolyUV> = dual.diff()[1].iter().cloned().collect();
    let want: BTreeMap<usize, PolyUV> =
        BTreeMap::from([(0, PolyUV::monomial(1, 0)), (2, PolyUV::monomial(0, 1))]);
    check_eq!(middle, want, "dual d(b*)");
    Ok(())
}

fn hat_specialization_kills_the_differential() -> Check {
    let cx = trefoil_model().specialize_uv0();
    check_eq!(cx.len(), 3, "generator count");
    if cx.diff().iter().any(|col| !col.is_empty()) {
        return Err("expected a zero differential".into());
    }
    Ok(())
}

fn minus_specialization_keeps_the_u_arrow() -> Check {
    let cx = trefoil_model().specialize_v0();
    check_eq!(cx.len(), 3, "generator count");
    check_eq!(cx.diff()[0], vec![(1, WPoly::monomial(1))], "d(a)");
    check_eq!(cx.diff()[1], vec![], "d(b)");
    check_eq!(cx.diff()[2], vec![], "d(c)");
    Ok(())
}

fn v1_localization_is_a_tower_on_a_plus_uc() -> Check {
    let v1 = trefoil_model().specialize_v1();
    let red = reduce_w(&v1, PivotRule::MinFill);
    check_eq!(red.minimal.len(), 1, "minimal model size");
    check_eq!(red.minimal.entries().count(), 0, "minimal differential");
    // The cycle a + Uc becomes {a: 1, c: W} after setting V = 1; its image
    // in the one-generator model must be exactly the surviving generator.
    let class: Combo<WPoly> = BTreeMap::from([(0, WPoly::one()), (2, WPoly::monomial(1))]);
    let image = apply_columns(&WRing::exact(), &red.reduction.proj, &class);
    let want: Combo<WPoly> = BTreeMap::from([(red.alive[0], WPoly::one())]);
    check_eq!(image, want, "projected class");
    Ok(())
}

fn middle_alexander_summand() -> Check {
    let a0 = alexander_summand(&trefoil_model(), 0);
    let labels: Vec<&str> = a0.gens().iter().map(|g| g.label.as_str()).collect();
    check_eq!(labels, vec!["Va", "b", "Uc"], "labels");
    let gradings: Vec<i64> = a0.gens().iter().map(|g| g.grading).collect();
    check_eq!(gradings, vec![0, 1, 0], "gradings");
    check_eq!(a0.diff()[0], vec![(1, WPoly::monomial(1))], "d(Va)");
    check_eq!(a0.diff()[1], vec![], "d(b)");
    check_eq!(a0.diff()[2], vec![(1, WPoly::monomial(1))], "d(Uc)");
    Ok(())
}

fn lower_alexander_summand() -> Check {
    let a = alexander_summand(&trefoil_model(), -1);
    let labels: Vec<&str> = a.gens().iter().map(|g| g.label.as_str()).collect();
    check_eq!(labels, vec!["a", "Ub", "U^2c"], "labels");
    check_eq!(a.diff()[0], vec![(1, WPoly::one())], "d(a)");
    check_eq!(a.diff()[1], vec![], "d(Ub)");
    check_eq!(a.diff()[2], vec![(1, WPoly::monomial(1))], "d(U^2c)");
    Ok(())
}

fn v1_elimination_leaves_one_generator() -> Check {
    let v1 = trefoil_model().specialize_v1();
    let red = reduce_w(&v1, PivotRule::MinFill);
    check_eq!(red.alive, vec![0], "surviving generator");
    check_eq!(red.minimal.gen(0).label.as_str(), "a", "surviving label");
    check_eq!(red.minimal.gen(0).grading, 0, "surviving grading");
    if !reduction_identities_hold(&WRing::exact(), &sparse_from_w(&v1), &red.reduction) {
        return Err("reduction identities violated".into());
    }
    Ok(())
}

fn hat_homology_dimensions() -> Check {
    let dims = trefoil_model()
        .specialize_uv0()
        .homology_f2()
        .map_err(er)?;
    let want: BTreeMap<Bigrading, usize> = BTreeMap::from([
        (Bigrading::new(0, 2), 1),
        (Bigrading::new(1, 1), 1),
        (Bigrading::new(2, 0), 1),
    ]);
    check_eq!(dims, want, "hat dimensions");
    Ok(())
}

fn series_homology_of_middle_summand() -> Check {
    let m = homology_dvr(&alexander_summand(&trefoil_model(), 0), 8).map_err(er)?;
    check_eq!(m, DvrModule::absolute(vec![0], vec![(1, 1)]), "module");
    Ok(())
}

fn series_homology_of_lower_summand() -> Check {
    let m = homology_dvr(&alexander_summand(&trefoil_model(), -1), 8).map_err(er)?;
    check_eq!(m.free().len(), 1, "tower count");
    check_eq!(m.torsion().len(), 0, "torsion count");
    Ok(())
}

fn d_invariant_of_middle_summand() -> Check {
    let m = homology_dvr(&alexander_summand(&trefoil_model(), 0), 8).map_err(er)?;
    check_eq!(m.d_invariant().map_err(er)?, 0, "d-invariant");
    Ok(())
}

fn d_invariant_of_a_bare_tower() -> Check {
    let m = DvrModule::absolute(vec![0], vec![]);
    check_eq!(m.d_invariant().map_err(er)?, 0, "d-invariant");
    Ok(())
}

fn quotient_and_hat_views_of_a_bare_tower() -> Check {
    let (plus, hat) = plus_and_hat_views(&DvrModule::absolute(vec![0], vec![]));
    check_eq!(plus.tower_bottoms, vec![2], "quotient tower bottom");
    check_eq!(hat.dim, 1, "hat dimension");
    Ok(())
}

fn mirrored_staircase_matches_the_model() -> Check {
    let spec = KnotSpec::Mirror {
        of: Box::new(KnotSpec::LSpace {
            alexander: trefoil_alexander(),
        }),
    };
    let built = knots::build(&spec).map_err(er)?;
    if !built.structure_eq(&trefoil_model()) {
        return Err(format!("mirror differs from the model: {built:?}"));
    }
    Ok(())
}

fn reversal_returns_the_same_complex() -> Check {
    let leaf = KnotSpec::LSpace {
        alexander: trefoil_alexander(),
    };
    let reversed = knots::build(&KnotSpec::Reverse {
        of: Box::new(leaf.clone()),
    })
    .map_err(er)?;
    check_eq!(reversed, knots::build(&leaf).map_err(er)?, "complex");
    Ok(())
}

fn hat_invariants_of_the_model() -> Check {
    let hat = knots::hfk_hat(&trefoil_model()).map_err(er)?;
    let want: BTreeMap<(i64, i64), usize> =
        BTreeMap::from([((0, -1), 1), ((1, 0), 1), ((2, 1), 1)]);
    check_eq!(hat, want, "hat table");
    Ok(())
}

fn minus_invariants_of_the_model() -> Check {
    let (m, _) = knots::hfk_minus(&trefoil_model()).map_err(er)?;
    check_eq!(m, DvrModule::absolute(vec![2], vec![(1, 1)]), "module");
    Ok(())
}

fn euler_characteristic_recovers_alexander() -> Check {
    let chi = knots::euler_characteristic(&trefoil_model()).map_err(er)?;
    check_eq!(chi, trefoil_alexander(), "polynomial");
    Ok(())
}

fn worked_diagram_validates() -> Check {
    let d = worked_diagram_doc()?.to_diagram().map_err(fail_msg)?;
    let report = validate_diagram(&d).map_err(er)?;
    check_eq!(report.generators, 3, "generators");
    check_eq!(report.intersection_number, 1, "intersection number");
    Ok(())
}

fn worked_diagram_generator_labels() -> Check {
    let d = worked_diagram_doc()?.to_diagram().map_err(fail_msg)?;
    let labels = enumerate_generators(&d).map_err(er)?;
    check_eq!(labels, vec!["a", "b", "c"], "labels");
    Ok(())
}

fn worked_diagram_bigon_counts() -> Check {
    let d = worked_diagram_doc()?.to_diagram().map_err(fail_msg)?;
    let bigons = count_bigons(&d).map_err(er)?;
    let want = vec![
        BigonCount {
            from: "a".into(),
            to: "b".into(),
            w_multiplicity: 1,
            z_multiplicity: 0,
        },
        BigonCount {
            from: "c".into(),
            to: "b".into(),
            w_multiplicity: 0,
            z_multiplicity: 1,
        },
    ];
    check_eq!(bigons, want, "bigons");
    Ok(())
}

fn worked_diagram_complex_equals_the_model() -> Check {
    let d = worked_diagram_doc()?.to_diagram().map_err(fail_msg)?;
    let cx = cfk_from_diagram(&d).map_err(er)?;
    check_eq!(cx, trefoil_model(), "complex");
    Ok(())
}

fn v_inverted_summand_is_a_tower_on_va_plus_uc() -> Check {
    let b0 = b_summand(&trefoil_model(), 0).map_err(er)?;
    let labels: Vec<&str> = b0.gens().iter().map(|g| g.label.as_str()).collect();
    check_eq!(labels, vec!["Va", "b", "V^-1c"], "labels");
    let red = reduce_w(&b0, PivotRule::MinFill);
    check_eq!(red.minimal.len(), 1, "tower rank");
    check_eq!(red.minimal.entries().count(), 0, "tower differential");
    // Va + Uc = Va + W(V^-1 c): index 0 with coefficient 1, index 2 with W.
    let class: Combo<WPoly> = BTreeMap::from([(0, WPoly::one()), (2, WPoly::monomial(1))]);
    let image = apply_columns(&WRing::exact(), &red.reduction.proj, &class);
    let want: Combo<WPoly> = BTreeMap::from([(red.alive[0], WPoly::one())]);
    check_eq!(image, want, "projected class");
    Ok(())
}

fn v_inverted_summands_at_adjacent_levels_agree() -> Check {
    let b0 = b_summand(&trefoil_model(), 0).map_err(er)?;
    let b_minus = b_summand(&trefoil_model(), -1).map_err(er)?;
    check_eq!(b_minus.diff(), b0.diff(), "differential");
    let g0: Vec<i64> = b0.gens().iter().map(|g| g.grading).collect();
    let g1: Vec<i64> = b_minus.gens().iter().map(|g| g.grading).collect();
    check_eq!(g1, g0, "gradings");
    let labels: Vec<&str> = b_minus.gens().iter().map(|g| g.label.as_str()).collect();
    check_eq!(labels, vec!["a", "V^-1b", "V^-2c"], "relabeling");
    Ok(())
}

fn large_surgery_at_the_central_level() -> Check {
    let (m, _) = large_surgery(&trefoil_model(), 3, 0, &TruncationSettings::default())
        .map_err(er)?;
    check_eq!(m, DvrModule::relative(vec![0], vec![(1, 1)]), "module");
    Ok(())
}

fn large_surgery_at_the_flanking_levels() -> Check {
    for s in [-1, 1] {
        let (m, _) = large_surgery(&trefoil_model(), 3, s, &TruncationSettings::default())
            .map_err(er)?;
        check_eq!(
            m,
            DvrModule::relative(vec![0], vec![]),
            format!("module at level {s}")
        );
    }
    Ok(())
}

fn cone_columns_for_plus_one() -> Check {
    let cone = build_cone(&trefoil_model(), 1, &SurgeryOptions::default()).map_err(er)?;
    check_eq!(cone.a_columns, vec![0], "A columns");
    check_eq!(cone.b_columns, Vec::<i64>::new(), "B columns");
    check_eq!(cone.classes.len(), 1, "classes");
    Ok(())
}

fn cone_columns_for_minus_one() -> Check {
    let cone = build_cone(&trefoil_model(), -1, &SurgeryOptions::default()).map_err(er)?;
    check_eq!(cone.a_columns, vec![0], "A columns");
    check_eq!(cone.b_columns, vec![-1, 0], "B columns");
    check_eq!(cone.classes.len(), 1, "classes");
    Ok(())
}

fn plus_one_surgery_homology() -> Check {
    let res = surgery_homology(&trefoil_model(), 1, &SurgeryOptions::default()).map_err(er)?;
    check_eq!(res.classes.len(), 1, "classes");
    check_eq!(res.classes[0].class, 0, "class label");
    check_eq!(
        res.classes[0].module,
        DvrModule::relative(vec![0], vec![(1, 1)]),
        "module"
    );
    Ok(())
}

fn plus_three_surgery_homology() -> Check {
    let res = surgery_homology(&trefoil_model(), 3, &SurgeryOptions::default()).map_err(er)?;
    check_eq!(res.classes.len(), 3, "classes");
    for (k, class) in res.classes.iter().enumerate() {
        check_eq!(class.class, k as i64, "class label");
        let want = if k == 0 {
            DvrModule::relative(vec![0], vec![(1, 1)])
        } else {
            DvrModule::relative(vec![0], vec![])
        };
        check_eq!(&class.module, &want, format!("module in class {k}"));
    }
    Ok(())
}

fn plus_one_surgery_is_not_an_l_space() -> Check {
    let res = surgery_homology(&trefoil_model(), 1, &SurgeryOptions::default()).map_err(er)?;
    check_eq!(is_lspace_result(&res), false, "L-space flag");
    Ok(())
}

fn order_two_first_homology() -> Check {
    let m = IntersectionMatrix::new(vec![vec![2]]).map_err(er)?;
    let group = h1_group(&m).map_err(er)?;
    check_eq!(
        group,
        AbelianGroup {
            invariant_factors: vec![2],
            free_rank: 0
        },
        "group"
    );
    check_eq!(group.to_string(), "Z/2", "display");
    Ok(())
}

fn stabilization_appends_a_unit_handle() -> Check {
    let m = IntersectionMatrix::new(vec![vec![2]]).map_err(er)?;
    check_eq!(
        stabilize(&m).entries().to_vec(),
        vec![vec![2, 0], vec![0, 1]],
        "entries"
    );
    Ok(())
}

fn dimension_bound_for_plus_one() -> Check {
    let report = hf_dimension_check(&IntersectionMatrix::surgery(1), &[3]).map_err(er)?;
    check_eq!(report.group_order, 1u128, "group order");
    check_eq!(report.total_hat_dimension, 3, "total hat dimension");
    check_eq!(report.bound_holds, true, "bound holds");
    check_eq!(report.is_l_space, false, "L-space flag");
    Ok(())
}

fn dimension_bound_for_plus_three() -> Check {
    let report = hf_dimension_check(&IntersectionMatrix::surgery(3), &[3, 1, 1]).map_err(er)?;
    check_eq!(report.group_order, 3u128, "group order");
    check_eq!(report.total_hat_dimension, 5, "total hat dimension");
    check_eq!(report.bound_holds, true, "bound holds");
    check_eq!(report.is_l_space, false, "L-space flag");
    Ok(())
}

fn hfk_command_on_the_mirrored_staircase() -> Check {
    let out = hfk_document(&spec_doc()?, Path::new("."), None, None).map_err(fail_msg)?;
    let inv = out
        .invariants
        .ok_or_else(|| "missing invariants section".to_string())?;
    let want = vec![
        HatEntry {
            maslov: 0,
            alexander: -1,
            dim: 1,
        },
        HatEntry {
            maslov: 1,
            alexander: 0,
            dim: 1,
        },
        HatEntry {
            maslov: 2,
            alexander: 1,
            dim: 1,
        },
    ];
    check_eq!(inv.hfk_hat, want, "hat table");
    check_eq!(inv.genus, 1, "genus");
    check_eq!(inv.fibered, true, "fibered");
    Ok(())
}

fn surgery_command_at_plus_one() -> Check {
    let out =
        surgery_document(&spec_doc()?, Path::new("."), 1, true, None, None).map_err(fail_msg)?;
    let s = out
        .surgery
        .ok_or_else(|| "missing surgery section".to_string())?;
    check_eq!(s.method.as_str(), "large_surgery", "method");
    check_eq!(s.verified, true, "verified");
    check_eq!(s.l_space, false, "L-space flag");
    check_eq!(s.classes.len(), 1, "classes");
    let class = &s.classes[0];
    check_eq!(class.d, 0, "d-invariant");
    check_eq!(class.module.grading_mode.as_str(), "relative", "mode");
    check_eq!(class.module.free, vec![0], "free part");
    check_eq!(
        class.module.torsion,
        vec![TorsionEntry {
            grading: 1,
            length: 1
        }],
        "torsion part"
    );
    check_eq!(s.h1.consistent, true, "first-homology cross-check");
    Ok(())
}

fn surgery_command_at_plus_three() -> Check {
    let out =
        surgery_document(&spec_doc()?, Path::new("."), 3, true, None, None).map_err(fail_msg)?;
    let s = out
        .surgery
        .ok_or_else(|| "missing surgery section".to_string())?;
    check_eq!(s.verified, true, "verified");
    check_eq!(s.l_space, false, "L-space flag");
    check_eq!(s.classes.len(), 3, "classes");
    for (k, class) in s.classes.iter().enumerate() {
        check_eq!(class.class, k as i64, "class label");
        check_eq!(class.module.free, vec![0], format!("free part in class {k}"));
        let want_torsion = if k == 0 {
            vec![TorsionEntry {
                grading: 1,
                length: 1,
            }]
        } else {
            vec![]
        };
        check_eq!(
            &class.module.torsion,
            &want_torsion,
            format!("torsion part in class {k}")
        );
    }
    check_eq!(s.h1.order, 3, "group order");
    check_eq!(s.h1.consistent, true, "first-homology cross-check");
    Ok(())
}

fn diagram_command_on_the_worked_diagram() -> Check {
    let out = diagram_document(&worked_diagram_doc()?, None, None).map_err(fail_msg)?;
    let section = out
        .diagram
        .ok_or_else(|| "missing diagram section".to_string())?;
    check_eq!(section.generators, 3, "generators");
    check_eq!(
        section.generator_labels,
        vec!["a".to_string(), "b".to_string(), "c".to_string()],
        "labels"
    );
    let want_bigons = vec![
        BigonEntry {
            from: "a".into(),
            to: "b".into(),
            w: 1,
            z: 0,
        },
        BigonEntry {
            from: "c".into(),
            to: "b".into(),
            w: 0,
            z: 1,
        },
    ];
    check_eq!(section.bigons, want_bigons, "bigons");
    let inv = out
        .invariants
        .ok_or_else(|| "missing invariants section".to_string())?;
    check_eq!(inv.genus, 1, "genus");
    check_eq!(inv.fibered, true, "fibered");
    check_eq!(inv.hfk_minus.grading_mode.as_str(), "absolute", "mode");
    check_eq!(inv.hfk_minus.free, vec![2], "free part");
    check_eq!(
        inv.hfk_minus.torsion,
        vec![TorsionEntry {
            grading: 1,
            length: 1
        }],
        "torsion part"
    );
    check_eq!(inv.alexander, vec![(-1, 1), (0, -1), (1, 1)], "polynomial");
    Ok(())
}

fn h1_command_on_the_order_two_matrix() -> Check {
    let out = h1_document(vec![vec![2]]).map_err(fail_msg)?;
    let h = out.h1.ok_or_else(|| "missing h1 section".to_string())?;
    check_eq!(h.group.as_str(), "Z/2", "group");
    check_eq!(h.invariant_factors, vec![2], "invariant factors");
    check_eq!(h.free_rank, 0, "free rank");
    check_eq!(h.order, Some(2), "order");
    Ok(())
}

pub fn run() -> Result<(), Failure> {
    let checks: &[(&str, fn() -> Check)] = &[
        ("trefoil model validates", model_validates),
        ("dual transposes the differential", dual_transposes_the_differential),
        ("hat specialization kills the differential", hat_specialization_kills_the_differential),
        ("minus specialization keeps the U arrow", minus_specialization_keeps_the_u_arrow),
        ("V=1 localization is a tower on [a+Uc]", v1_localization_is_a_tower_on_a_plus_uc),
        ("middle Alexander summand", middle_alexander_summand),
        ("lower Alexander summand", lower_alexander_summand),
        ("V=1 elimination leaves one generator", v1_elimination_leaves_one_generator),
        ("hat homology dimensions", hat_homology_dimensions),
        ("series homology of the middle summand", series_homology_of_middle_summand),
        ("series homology of the lower summand", series_homology_of_lower_summand),
        ("d-invariant of the middle summand", d_invariant_of_middle_summand),
        ("d-invariant of a bare tower", d_invariant_of_a_bare_tower),
        ("quotient and hat views of a bare tower", quotient_and_hat_views_of_a_bare_tower),
        ("mirrored staircase matches the model", mirrored_staircase_matches_the_model),
        ("reversal returns the same complex", reversal_returns_the_same_complex),
        ("hat invariants of the model", hat_invariants_of_the_model),
        ("minus invariants of the model", minus_invariants_of_the_model),
        ("Euler characteristic recovers Alexander", euler_characteristic_recovers_alexander),
        ("worked diagram validates", worked_diagram_validates),
        ("worked diagram generator labels", worked_diagram_generator_labels),
        ("worked diagram bigon counts", worked_diagram_bigon_counts),
        ("worked diagram complex equals the model", worked_diagram_complex_equals_the_model),
        ("V-inverted summand is a tower on [Va+Uc]", v_inverted_summand_is_a_tower_on_va_plus_uc),
        (
            "V-inverted summands at adjacent levels agree",
            v_inverted_summands_at_adjacent_levels_agree,
        ),
        ("large surgery at the central level", large_surgery_at_the_central_level),
        ("large surgery at the flanking levels", large_surgery_at_the_flanking_levels),
        ("cone columns for +1", cone_columns_for_plus_one),
        ("cone columns for -1", cone_columns_for_minus_one),
        ("+1 surgery homology", plus_one_surgery_homology),
        ("+3 surgery homology", plus_three_surgery_homology),
        ("+1 surgery is not an L-space", plus_one_surgery_is_not_an_l_space),
        ("order-two first homology", order_two_first_homology),
        ("stabilization appends a unit handle", stabilization_appends_a_unit_handle),
        ("dimension bound for +1", dimension_bound_for_plus_one),
        ("dimension bound for +3", dimension_bound_for_plus_three),
        ("hfk command on the mirrored staircase", hfk_command_on_the_mirrored_staircase),
        ("surgery command at +1", surgery_command_at_plus_one),
        ("surgery command at +3", surgery_command_at_plus_three),
        ("diagram command on the worked diagram", diagram_command_on_the_worked_diagram),
        ("h1 command on the order-two matrix", h1_command_on_the_order_two_matrix),
    ];
    let mut failed = 0usize;
    for (name, check) in checks {
        match check() {
            Ok(()) => crate::emit(&format!("ok   {name}\n")),
            Err(why) => {
                failed += 1;
                crate::emit(&format!("FAIL {name}: {why}\n"));
            }
        }
    }
    crate::emit(&format!("{} checks, {} failed\n", checks.len(), failed));
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Internal(format!("{failed} corpus checks failed")))
    }
}
