//! The JSON documents the CLI reads and writes.
//!
//! Inputs: a knot spec document (a tree of constructors with an optional
//! options block), a diagram document (exact rational coordinates encoded
//! as strings, so geometry stays deterministic), and a bare integer matrix
//! for first-homology queries. Output: a single `ResultDocument` whose
//! sections mirror the subcommands; it serializes losslessly, so
//! `parse(emit(x)) = x`.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use knotfloer::algebra::{DvrModule, Stability};
use knotfloer::knots::{KnotSpec, LaurentPoly};
use knotfloer::one_one::{OneOneDiagram, Rat};

use crate::Failure;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub knot: KnotNode,
    #[serde(default)]
    pub options: Option<OptionsNode>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsNode {
    /// Truncation order for power-series homology.
    #[serde(default)]
    pub truncation: Option<u32>,
    /// Extra columns kept on each side of the surgery truncation window.
    #[serde(default)]
    pub window_slack: Option<u32>,
}

/// One node of the knot constructor tree. `alexander` lists Laurent
/// coefficients as `[exponent, coefficient]` pairs; `diagram` names a
/// diagram file, resolved relative to the spec file's directory.
#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum KnotNode {
    Lspace {
        alexander: Vec<(i64, i64)>,
    },
    Alternating {
        alexander: Vec<(i64, i64)>,
        signature: i64,
    },
    Sum {
        summands: Vec<KnotNode>,
    },
    Mirror {
        of: Box<KnotNode>,
    },
    Reverse {
        of: Box<KnotNode>,
    },
    OneOne {
        diagram: String,
    },
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDocument {
    pub beta: Vec<(String, String)>,
    pub translation: (i64, i64),
    pub w: (String, String),
    pub z: (String, String),
}

/// Parse an exact rational written as `"p"` or `"p/q"`. Anything else —
/// decimals included — is rejected, never rounded.
pub fn parse_rational(text: &str) -> Result<Rat, Failure> {
    let bad = |what: &str| Failure::Schema(format!("bad rational {text:?}: {what}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
    let den: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
    if den == BigInt::from(0) {
        return Err(bad("denominator is zero"));
    }
    Ok(Rat::new(num, den))
}

impl DiagramDocument {
    pub fn to_diagram(&self) -> Result<OneOneDiagram, Failure> {
        let pt = |p: &(String, String)| -> Result<(Rat, Rat), Failure> {
            Ok((parse_rational(&p.0)?, parse_rational(&p.1)?))
        };
        Ok(OneOneDiagram {
            beta: self.beta.iter().map(pt).collect::<Result<_, _>>()?,
            translation: self.translation,
            w: pt(&self.w)?,
            z: pt(&self.z)?,
        })
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Schema(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))
}

fn laurent(pairs: &[(i64, i64)]) -> Result<LaurentPoly, Failure> {
    LaurentPoly::from_pairs(pairs).map_err(Failure::from)
}

/// Lower a document node to the library's constructor tree, loading any
/// referenced diagram files along the way.
pub fn to_knot_spec(node: &KnotNode, base: &Path) -> Result<KnotSpec, Failure> {
    Ok(match node {
        KnotNode::Lspace { alexander } => KnotSpec::LSpace {
            alexander: laurent(alexander)?,
        },
        KnotNode::Alternating {
            alexander,
            signature,
        } => KnotSpec::Alternating {
            alexander: laurent(alexander)?,
            signature: *signature,
        },
        KnotNode::Sum { summands } => KnotSpec::Sum {
            summands: summands
                .iter()
                .map(|s| to_knot_spec(s, base))
                .collect::<Result<_, _>>()?,
        },
        KnotNode::Mirror { of } => KnotSpec::Mirror {
            of: Box::new(to_knot_spec(of, base)?),
        },
        KnotNode::Reverse { of } => KnotSpec::Reverse {
            of: Box::new(to_knot_spec(of, base)?),
        },
        KnotNode::OneOne { diagram } => {
            let doc: DiagramDocument = read_json(&base.join(diagram))?;
            KnotSpec::OneOne {
                diagram: doc.to_diagram()?,
            }
        }
    })
}

#[derive(Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surgery: Option<SurgeryReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<H1Report>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsReport {
    /// Hat-flavor dimensions by (Maslov, Alexander) grading.
    pub hfk_hat: Vec<HatEntry>,
    pub hfk_minus: ModuleReport,
    pub genus: i64,
    pub fibered: bool,
    /// Alexander polynomial as `[exponent, coefficient]` pairs, ascending.
    pub alexander: Vec<(i64, i64)>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HatEntry {
    pub maslov: i64,
    pub alexander: i64,
    pub dim: usize,
}

/// A graded module over the one-variable power-series ring: free tower
/// gradings plus torsion summands (top grading, length). `grading_mode`
/// tags the gradings as absolute or relative.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleReport {
    pub grading_mode: String,
    pub free: Vec<i64>,
    pub torsion: Vec<TorsionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilityReport>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionEntry {
    pub grading: i64,
    pub length: u32,
}

/// Evidence that the module survived a truncation-refinement recheck.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityReport {
    pub order_used: u32,
    pub recheck_order: u32,
    pub doublings: u32,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryReport {
    pub n: i64,
    /// Which route produced the modules: "large_surgery" or "mapping_cone".
    pub method: String,
    /// Whether an independent second route confirmed the result.
    pub verified: bool,
    pub l_space: bool,
    pub classes: Vec<ClassReport>,
    pub h1: H1CrossCheck,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassReport {
    pub class: i64,
    /// Grading of the class's unique free tower (mode per the module).
    pub d: i64,
    pub module: ModuleReport,
}

/// First-homology consistency data for a surgery: the presentation-matrix
/// group must have order |n|, one spin^c class apiece, and its dimension
/// bound must agree with the modules.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H1CrossCheck {
    pub group: String,
    pub order: u64,
    pub total_hat_dimension: usize,
    pub bound_holds: bool,
    pub consistent: bool,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSection {
    pub generators: usize,
    pub intersection_number: i64,
    pub generator_labels: Vec<String>,
    pub bigons: Vec<BigonEntry>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BigonEntry {
    pub from: String,
    pub to: String,
    pub w: u32,
    pub z: u32,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H1Report {
    pub group: String,
    pub invariant_factors: Vec<i64>,
    pub free_rank: usize,
    /// Group order when finite and within 64 bits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

pub fn module_report(m: &DvrModule, stability: Option<&Stability>) -> ModuleReport {
    ModuleReport {
        grading_mode: m.mode().to_string(),
        free: m.free().to_vec(),
        torsion: m
            .torsion()
            .iter()
            .map(|&(grading, length)| TorsionEntry { grading, length })
            .collect(),
        stability: stability.map(|s| StabilityReport {
            order_used: s.order_used,
            recheck_order: s.recheck_order,
            doublings: s.doublings,
        }),
    }
}
