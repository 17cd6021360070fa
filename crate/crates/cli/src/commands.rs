//! The four computation commands, split into a document layer (pure
//! functions on parsed documents, reused by the regression corpus) and
//! thin file-reading wrappers.

use std::path::Path;

use knotfloer::algebra::{BigradedComplex, PivotRule, TruncationSettings};
use knotfloer::algebra::homology_dvr_certified;
use knotfloer::h1::{h1_group, hf_dimension_check, IntersectionMatrix};
use knotfloer::knots;
use knotfloer::one_one::{cfk_from_diagram, count_bigons, enumerate_generators, validate_diagram};
use knotfloer::surgery::{
    is_lspace_result, large_surgery, spin_c_class, surgery_homology, ClassResult, SurgeryOptions,
    SurgeryResult,
};

use crate::docs::{
    module_report, read_json, to_knot_spec, BigonEntry, ClassReport, DiagramDocument,
    DiagramSection, H1CrossCheck, H1Report, HatEntry, InvariantsReport, OptionsNode,
    ResultDocument, SpecDocument, SurgeryReport,
};
use crate::Failure;

/// Effective computation settings: command-line flags override the spec
/// document's options block.
pub struct Settings {
    pub truncation: TruncationSettings,
    pub window_slack: u32,
}

pub fn settings_for(
    cli_truncation: Option<u32>,
    cli_slack: Option<u32>,
    doc: Option<&OptionsNode>,
) -> Settings {
    Settings {
        truncation: TruncationSettings {
            order: cli_truncation.or_else(|| doc.and_then(|o| o.truncation)),
            ..TruncationSettings::default()
        },
        window_slack: cli_slack
            .or_else(|| doc.and_then(|o| o.window_slack))
            .unwrap_or(0),
    }
}

fn base_dir(path: &Path) -> &Path {
    let parent = path.parent().unwrap_or_else(|| Path::new(""));
    if parent.as_os_str().is_empty() {
        Path::new(".")
    } else {
        parent
    }
}

fn checked_complex(spec_cx: BigradedComplex) -> Result<BigradedComplex, Failure> {
    let report = spec_cx.validate();
    if report.is_valid() {
        Ok(spec_cx)
    } else {
        Err(Failure::Internal(format!(
            "constructed complex fails validation: {}",
            report.problems.join("; ")
        )))
    }
}

pub fn invariants_report(
    cx: &BigradedComplex,
    truncation: &TruncationSettings,
) -> Result<InvariantsReport, Failure> {
    let hat = knots::hfk_hat(cx)?;
    let (minus, stability) = homology_dvr_certified(&cx.specialize_v0(), truncation)?;
    Ok(InvariantsReport {
        hfk_hat: hat
            .into_iter()
            .map(|((maslov, alexander), dim)| HatEntry {
                maslov,
                alexander,
                dim,
            })
            .collect(),
        hfk_minus: module_report(&minus, Some(&stability)),
        genus: knots::genus(cx)?,
        fibered: knots::is_fibered(cx)?,
        alexander: knots::euler_characteristic(cx)?.pairs().collect(),
    })
}

pub fn hfk_document(
    doc: &SpecDocument,
    base: &Path,
    cli_truncation: Option<u32>,
    cli_slack: Option<u32>,
) -> Result<ResultDocument, Failure> {
    let settings = settings_for(cli_truncation, cli_slack, doc.options.as_ref());
    let cx = checked_complex(knots::build(&to_knot_spec(&doc.knot, base)?)?)?;
    Ok(ResultDocument {
        invariants: Some(invariants_report(&cx, &settings.truncation)?),
        ..ResultDocument::default()
    })
}

pub fn hfk(path: &Path, truncation: Option<u32>, slack: Option<u32>) -> Result<ResultDocument, Failure> {
    let doc: SpecDocument = read_json(path)?;
    hfk_document(&doc, base_dir(path), truncation, slack)
}

/// The large-surgery route: one Alexander-summand homology per spin^c
/// class, taking the representative of smallest absolute value.
fn large_surgery_all_classes(
    cx: &BigradedComplex,
    n: i64,
    truncation: &TruncationSettings,
) -> Result<SurgeryResult, Failure> {
    let mut classes = Vec::with_capacity(n as usize);
    for k in 0..n {
        let s = if 2 * k <= n { k } else { k - n };
        let (module, stability) = large_surgery(cx, n, s, truncation)?;
        classes.push(ClassResult {
            class: spin_c_class(s, n),
            module,
            stability,
        });
    }
    Ok(SurgeryResult { n, classes })
}

/// The two routes must agree class by class, as relatively graded modules.
fn compare_results(a: &SurgeryResult, b: &SurgeryResult) -> Result<(), Failure> {
    if a.classes.len() != b.classes.len() {
        return Err(Failure::Internal(format!(
            "cross-validation mismatch: {} classes against {}",
            a.classes.len(),
            b.classes.len()
        )));
    }
    for (x, y) in a.classes.iter().zip(&b.classes) {
        if x.class != y.class || !x.module.isomorphic(&y.module)? {
            return Err(Failure::Internal(format!(
                "cross-validation mismatch in class {}: {} against {}",
                x.class, x.module, y.module
            )));
        }
    }
    Ok(())
}

pub fn surgery_document(
    doc: &SpecDocument,
    base: &Path,
    n: i64,
    verify: bool,
    cli_truncation: Option<u32>,
    cli_slack: Option<u32>,
) -> Result<ResultDocument, Failure> {
    let settings = settings_for(cli_truncation, cli_slack, doc.options.as_ref());
    let cx = checked_complex(knots::build(&to_knot_spec(&doc.knot, base)?)?)?;
    if n == 0 {
        return Err(Failure::from(knotfloer::Error::ZeroSurgeryCoefficient));
    }
    let opts = SurgeryOptions {
        truncation: settings.truncation,
        window_slack: settings.window_slack,
        flip_rule: PivotRule::MinFill,
    };
    let threshold = (2 * knots::genus(&cx)? - 1).max(1);
    let (method, result, verified) = if n >= threshold {
        let result = large_surgery_all_classes(&cx, n, &settings.truncation)?;
        if verify {
            compare_results(&result, &surgery_homology(&cx, n, &opts)?)?;
        }
        ("large_surgery", result, verify)
    } else {
        let result = surgery_homology(&cx, n, &opts)?;
        if verify {
            let wider = SurgeryOptions {
                window_slack: opts.window_slack + 2,
                ..opts
            };
            compare_results(&result, &surgery_homology(&cx, n, &wider)?)?;
        }
        ("mapping_cone", result, verify)
    };

    let l_space = is_lspace_result(&result);
    let mut classes = Vec::with_capacity(result.classes.len());
    for c in &result.classes {
        classes.push(ClassReport {
            class: c.class,
            d: c.module.d_invariant()?,
            module: module_report(&c.module, Some(&c.stability)),
        });
    }

    let hat_dims: Vec<usize> = result
        .classes
        .iter()
        .map(|c| c.module.hat_dimension())
        .collect();
    let check = hf_dimension_check(&IntersectionMatrix::surgery(n), &hat_dims)?;
    let classes_expected = n.unsigned_abs() as u128;
    let consistent = check.group_order == classes_expected
        && result.classes.len() as u128 == classes_expected
        && check.bound_holds
        && check.is_l_space == l_space;
    if !consistent {
        return Err(Failure::Internal(format!(
            "first-homology cross-check failed: group {} of order {}, {} spin^c classes, \
             total hat dimension {}, bound_holds={}, is_l_space={} against {}",
            check.group,
            check.group_order,
            result.classes.len(),
            check.total_hat_dimension,
            check.bound_holds,
            check.is_l_space,
            l_space,
        )));
    }

    Ok(ResultDocument {
        surgery: Some(SurgeryReport {
            n,
            method: method.to_string(),
            verified,
            l_space,
            classes,
            h1: H1CrossCheck {
                group: check.group.to_string(),
                order: check.group_order as u64,
                total_hat_dimension: check.total_hat_dimension,
                bound_holds: check.bound_holds,
                consistent,
            },
        }),
        ..ResultDocument::default()
    })
}

pub fn surgery(
    path: &Path,
    n: i64,
    verify: bool,
    truncation: Option<u32>,
    slack: Option<u32>,
) -> Result<ResultDocument, Failure> {
    let doc: SpecDocument = read_json(path)?;
    surgery_document(&doc, base_dir(path), n, verify, truncation, slack)
}

pub fn diagram_document(
    doc: &DiagramDocument,
    cli_truncation: Option<u32>,
    cli_slack: Option<u32>,
) -> Result<ResultDocument, Failure> {
    let settings = settings_for(cli_truncation, cli_slack, None);
    let d = doc.to_diagram()?;
    let report = validate_diagram(&d)?;
    let labels = enumerate_generators(&d)?;
    let bigons = count_bigons(&d)?;
    let cx = checked_complex(cfk_from_diagram(&d)?)?;
    Ok(ResultDocument {
        diagram: Some(DiagramSection {
            generators: report.generators,
            intersection_number: report.intersection_number,
            generator_labels: labels,
            bigons: bigons
                .into_iter()
                .map(|b| BigonEntry {
                    from: b.from,
                    to: b.to,
                    w: b.w_multiplicity,
                    z: b.z_multiplicity,
                })
                .collect(),
        }),
        invariants: Some(invariants_report(&cx, &settings.truncation)?),
        ..ResultDocument::default()
    })
}

pub fn diagram(path: &Path, truncation: Option<u32>, slack: Option<u32>) -> Result<ResultDocument, Failure> {
    let doc: DiagramDocument = read_json(path)?;
    diagram_document(&doc, truncation, slack)
}

pub fn h1_document(rows: Vec<Vec<i64>>) -> Result<ResultDocument, Failure> {
    let m = IntersectionMatrix::new(rows)?;
    let group = h1_group(&m)?;
    Ok(ResultDocument {
        h1: Some(H1Report {
            group: group.to_string(),
            invariant_factors: group.invariant_factors.clone(),
            free_rank: group.free_rank,
            order: group.order().and_then(|o| u64::try_from(o).ok()),
        }),
        ..ResultDocument::default()
    })
}

pub fn h1(path: &Path) -> Result<ResultDocument, Failure> {
    h1_document(read_json(path)?)
}
