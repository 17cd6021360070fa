//! HF⁻ of integer Dehn surgeries on a knot in S³.
//!
//! Over F₂[U, V] the knot complex splits, as a complex of modules over
//! F₂[W] with W = UV, into Alexander-grading summands A_s. Two routes
//! from that splitting to the surgery homology are implemented:
//!
//! * [`large_surgery`]: for n ≥ max(1, 2g − 1), the class-[s] summand of
//!   HF⁻(S³_n(K)) is the homology of the single summand A_s.
//! * [`surgery_homology`]: for any n ≠ 0, the mapping cone of
//!   D_n = ι_V + Vⁿ∘φ∘ι_U from ⊕ A_s into ⊕ B_s computes HF⁻(S³_n(K)),
//!   split over spin^c classes [s] ∈ Z/nZ by Alexander grading mod n.
//!
//! Here B_s is the Alexander-grading-s summand of the complex with V
//! inverted, which for a knot has single-tower homology, and φ is a
//! grading-preserving quasi-isomorphism from the U-inverted summand to
//! the V-inverted one, built through their one-generator minimal models.
//!
//! The cone is truncated to a finite window of columns: ι_V: A_s → B_s
//! is a homotopy equivalence for s ≥ g and the flip edge A_s → B_{s+n}
//! is one for s ≤ −g, so those pairs cancel from the outside in without
//! introducing any new edges among the retained columns. Gradings of the
//! retained columns are solved per class by propagating the requirement
//! that every differential entry have degree −1; the per-class modules
//! are reported relatively graded, normalized so the tower generator
//! sits in grading 0.

use std::collections::{BTreeMap, VecDeque};
use std::ops::RangeInclusive;

use crate::algebra::eliminate::{combo_add_scaled, Combo};
use crate::algebra::{
    homology_dvr_certified, reduce_w, BigradedComplex, DvrModule, GradingMode, PivotRule,
    Stability, TruncationSettings, WComplex, WGenerator, WPoly, WReduction, WRing,
};
use crate::error::{Error, Result};
use crate::knots::genus;

/// Knobs shared by the surgery entry points. `window_slack` widens the
/// cone's retained column window symmetrically on both sides; it never
/// changes any output (a checked property), only the amount of work.
/// `flip_rule` selects the pivot order used to build φ; any choice yields
/// the same homology, which the regression suite checks rather than
/// assumes.
#[derive(Debug, Clone, Copy)]
pub struct SurgeryOptions {
    pub truncation: TruncationSettings,
    pub window_slack: u32,
    pub flip_rule: PivotRule,
}

impl Default for SurgeryOptions {
    fn default() -> Self {
        SurgeryOptions {
            truncation: TruncationSettings::default(),
            window_slack: 0,
            flip_rule: PivotRule::MinFill,
        }
    }
}

fn power_label(var: char, e: i64, base: &str) -> String {
    match e {
        0 => base.to_string(),
        1 => format!("{var}{base}"),
        _ => format!("{var}^{e}{base}"),
    }
}

/// For each generator, the exponents (p, q) of its minimal representative
/// U^p V^q x in Alexander grading s: p = max(A(x) − s, 0), q = max(s − A(x), 0).
fn summand_powers(c: &BigradedComplex, s: i64) -> Vec<(u32, u32)> {
    c.gens()
        .iter()
        .map(|g| {
            let a = g.grading.alexander();
            (
                u32::try_from((a - s).max(0)).expect("U-power fits u32"),
                u32::try_from((s - a).max(0)).expect("V-power fits u32"),
            )
        })
        .collect()
}

/// The Alexander-grading-s summand A_s of the knot complex, as a complex
/// over F₂[W]. Generators are the minimal monomial multiples U^(A(x)−s)·x
/// (for A(x) ≥ s) or V^(s−A(x))·x (for A(x) < s) of the original
/// generators, graded by gr_U of the representative.
pub fn alexander_summand(c: &BigradedComplex, s: i64) -> WComplex {
    let powers = summand_powers(c, s);
    let gens = c
        .gens()
        .iter()
        .zip(&powers)
        .map(|(g, &(p, q))| WGenerator {
            label: if p > 0 {
                power_label('U', p.into(), &g.label)
            } else {
                power_label('V', q.into(), &g.label)
            },
            grading: g.grading.u - 2 * i64::from(p),
        })
        .collect();
    let diff = c
        .diff()
        .iter()
        .enumerate()
        .map(|(i, col)| {
            let (p_i, q_i) = powers[i];
            col.iter()
                .map(|(j, coeff)| {
                    let m = coeff
                        .single_term()
                        .expect("homogeneous differential entries are single monomials");
                    let (p_j, q_j) = powers[*j];
                    let k = i64::from(p_i) + i64::from(m.u) - i64::from(p_j);
                    debug_assert_eq!(k, i64::from(q_i) + i64::from(m.v) - i64::from(q_j));
                    debug_assert!(k >= 0);
                    (*j, WPoly::monomial(k as u32))
                })
                .collect()
        })
        .collect();
    let cx = WComplex::new(gens, diff, GradingMode::Absolute)
        .expect("a summand of a valid complex is a valid complex");
    debug_assert!(cx.check_homogeneous().is_ok());
    cx
}

/// The V-inverted summand in Alexander grading s, with each generator
/// written as its canonical representative V^(s−A(x))·x. The underlying
/// complex is independent of s — only the labels move, which is exactly
/// the isomorphism V: B_s → B_(s+1).
fn b_presentation(c: &BigradedComplex, s: i64) -> WComplex {
    let base = c.invert_v();
    let gens = base
        .gens()
        .iter()
        .enumerate()
        .map(|(i, g)| WGenerator {
            label: power_label('V', s - c.gen(i).grading.alexander(), &g.label),
            grading: g.grading,
        })
        .collect();
    WComplex::new(gens, base.diff().to_vec(), GradingMode::Absolute)
        .expect("relabelling preserves validity")
}

/// The U-inverted summand in Alexander grading s, generators written as
/// U^(A(x)−s)·x and graded by gr_V.
fn u_hat_presentation(c: &BigradedComplex, s: i64) -> WComplex {
    let base = c.invert_u();
    let gens = base
        .gens()
        .iter()
        .enumerate()
        .map(|(i, g)| WGenerator {
            label: power_label('U', c.gen(i).grading.alexander() - s, &g.label),
            grading: g.grading,
        })
        .collect();
    WComplex::new(gens, base.diff().to_vec(), GradingMode::Absolute)
        .expect("relabelling preserves validity")
}

/// Reduce to a minimal model and insist on a single generator with no
/// remaining differential. The homology of a knot's localized summand is
/// one free tower, so anything else means the input does not present a
/// knot.
fn tower_reduction(cx: &WComplex, rule: PivotRule, what: &str) -> Result<WReduction> {
    let red = reduce_w(cx, rule);
    if red.minimal.len() != 1 || red.minimal.entries().next().is_some() {
        return Err(Error::InvalidComplex(format!(
            "{what} does not reduce to a single tower ({} generators and {} differential \
             entries remain); the input does not present a knot",
            red.minimal.len(),
            red.minimal.entries().count(),
        )));
    }
    Ok(red)
}

/// The Alexander-grading-s summand B_s of the complex with V inverted:
/// one generator V^(s−A(x))·x per original generator, graded by gr_U,
/// with every differential term U^a V^b contributing W^a. Validates that
/// the homology is a single free tower.
pub fn b_summand(c: &BigradedComplex, s: i64) -> Result<WComplex> {
    let cx = b_presentation(c, s);
    tower_reduction(&cx, PivotRule::MinFill, "the V-inverted summand")?;
    Ok(cx)
}

/// A grading-preserving quasi-isomorphism φ_s from the U-inverted summand
/// to the V-inverted summand in Alexander grading s, built by reducing
/// both sides to their one-generator minimal models and identifying the
/// two towers by the unit 1×1 map.
pub struct FlipMap {
    pub s: i64,
    /// Source presentation (U inverted, graded by gr_V).
    pub u_side: WComplex,
    /// Target presentation (V inverted, graded by gr_U).
    pub b_side: WComplex,
    /// matrix[j] is the image of the j-th source generator as a
    /// combination of target generators.
    pub matrix: Vec<Combo<WPoly>>,
    /// Elimination witnesses for the two sides.
    pub u_witness: WReduction,
    pub b_witness: WReduction,
}

impl FlipMap {
    /// φ∘∂ = ∂∘φ, checked exactly over F₂[W].
    pub fn commutes_with_differentials(&self) -> bool {
        let ring = WRing::exact();
        let b_cols: Vec<Combo<WPoly>> = self
            .b_side
            .diff()
            .iter()
            .map(|col| col.iter().map(|(t, e)| (*t, e.clone())).collect())
            .collect();
        (0..self.u_side.len()).all(|j| {
            let mut lhs = Combo::new();
            for (t, e) in &self.u_side.diff()[j] {
                combo_add_scaled(&ring, &mut lhs, &self.matrix[*t], e);
            }
            let mut rhs = Combo::new();
            for (i, e) in &self.matrix[j] {
                combo_add_scaled(&ring, &mut rhs, &b_cols[*i], e);
            }
            lhs == rhs
        })
    }

    /// φ carries the source tower representative to the target tower
    /// representative on the nose, certifying that the induced map on
    /// homology sends the free generator to the free generator by a unit.
    pub fn maps_tower_by_unit(&self) -> bool {
        let ring = WRing::exact();
        let su = self.u_witness.alive[0];
        let sb = self.b_witness.alive[0];
        let mut image = Combo::new();
        for (i, e) in &self.u_witness.reduction.incl[su] {
            combo_add_scaled(&ring, &mut image, &self.matrix[*i], e);
        }
        image == self.b_witness.reduction.incl[sb]
    }
}

/// Build φ_s with the given pivot order. Any pivot order produces a valid
/// φ; exposing the choice lets the tests check that the cone homology
/// does not depend on it.
pub fn flip_map_with_rule(c: &BigradedComplex, s: i64, rule: PivotRule) -> Result<FlipMap> {
    let u_side = u_hat_presentation(c, s);
    let b_side = b_presentation(c, s);
    let u_witness = tower_reduction(&u_side, rule, "the U-inverted summand")?;
    let b_witness = tower_reduction(&b_side, rule, "the V-inverted summand")?;
    let su = u_witness.alive[0];
    let sb = b_witness.alive[0];
    let ring = WRing::exact();
    let matrix = (0..u_side.len())
        .map(|j| {
            let mut image = Combo::new();
            if let Some(cj) = u_witness.reduction.proj[j].get(&su) {
                combo_add_scaled(&ring, &mut image, &b_witness.reduction.incl[sb], cj);
            }
            image
        })
        .collect();
    let flip = FlipMap {
        s,
        u_side,
        b_side,
        matrix,
        u_witness,
        b_witness,
    };
    debug_assert!(flip.commutes_with_differentials());
    Ok(flip)
}

pub fn flip_map(c: &BigradedComplex, s: i64) -> Result<FlipMap> {
    flip_map_with_rule(c, s, PivotRule::MinFill)
}

/// The retained column windows for the truncated cone: A-columns in the
/// first range, B-columns in the second.
///
/// Starting from hi = g and lo = −g, the A-window [lo+1, hi−1] is what
/// survives cancelling (A_s, B_s) via ι_V for s ≥ hi and (A_s, B_(s+n))
/// via the flip edge for s ≤ lo; the surviving B-columns are then
/// [lo+n+1, hi−1]. When n+1 (for n > 0; one column suffices for n < 0)
/// exceeds the span 2g, the window grows symmetrically so that every
/// spin^c class retains at least one column.
fn truncation_window(g: i64, n: i64, slack: u32) -> (RangeInclusive<i64>, RangeInclusive<i64>) {
    debug_assert!(n != 0);
    let mut hi = g;
    let mut lo = -g;
    let need = if n > 0 { n + 1 } else { 1 };
    let deficit = need - (hi - lo);
    if deficit > 0 {
        hi += (deficit + 1) / 2;
        lo -= deficit / 2;
    }
    hi += i64::from(slack);
    lo -= i64::from(slack);
    (lo + 1..=hi - 1, lo + n + 1..=hi - 1)
}

/// Which side of the cone a retained column lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    /// An Alexander-grading summand A_s of the knot complex.
    A,
    /// A V-inverted summand B_s.
    B,
}

/// One retained column of the truncated cone, as a block of generators in
/// its class complex.
#[derive(Debug, Clone)]
pub struct ConeColumn {
    pub kind: ColumnKind,
    pub s: i64,
    /// Index of the column's first generator in the class complex.
    pub start: usize,
    pub len: usize,
}

/// Whether a cone edge is the inclusion ι_V: A_s → B_s or the flip edge
/// Vⁿ∘φ∘ι_U: A_s → B_(s+n). The Vⁿ factor is absorbed by writing the
/// target in its B_(s+n) normal form, so no negative exponent is ever
/// materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Vertical,
    Horizontal,
}

/// One retained edge map of the cone, recorded as explicit matrix entries
/// between class-complex generator indices.
#[derive(Debug, Clone)]
pub struct ConeEdge {
    pub kind: EdgeKind,
    pub from_s: i64,
    pub to_s: i64,
    pub entries: Vec<(usize, usize, WPoly)>,
}

/// The truncated mapping cone of D_n restricted to one spin^c class.
#[derive(Debug, Clone)]
pub struct ConeClass {
    pub class: i64,
    pub columns: Vec<ConeColumn>,
    pub edges: Vec<ConeEdge>,
    /// The assembled, relatively graded complex over F₂[W].
    pub complex: WComplex,
}

/// The truncated mapping cone of D_n, split by spin^c class.
#[derive(Debug)]
pub struct ConeSystem {
    pub n: i64,
    /// Retained A-column Alexander gradings.
    pub a_columns: Vec<i64>,
    /// Retained B-column Alexander gradings.
    pub b_columns: Vec<i64>,
    /// One entry per spin^c class, indexed by s mod |n| in 0..|n|.
    pub classes: Vec<ConeClass>,
}

/// The spin^c class of Alexander grading s under n-surgery, as an index
/// in 0..|n|.
pub fn spin_c_class(s: i64, n: i64) -> i64 {
    debug_assert!(n != 0);
    s.rem_euclid(n.abs())
}

/// Assemble the truncated cone of D_n = ι_V + Vⁿ∘φ∘ι_U.
pub fn build_cone(c: &BigradedComplex, n: i64, opts: &SurgeryOptions) -> Result<ConeSystem> {
    if n == 0 {
        return Err(Error::ZeroSurgeryCoefficient);
    }
    let g = genus(c)?;
    let (a_range, b_range) = truncation_window(g, n, opts.window_slack);
    // Both localized presentations are independent of the Alexander
    // grading, so φ_s has the same matrix for every s: build it once.
    let flip = flip_map_with_rule(c, 0, opts.flip_rule)?;
    let classes = (0..n.abs())
        .map(|class| assemble_class(c, n, class, &a_range, &b_range, &flip))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConeSystem {
        n,
        a_columns: a_range.collect(),
        b_columns: b_range.collect(),
        classes,
    })
}

struct RawEdge {
    kind: EdgeKind,
    from_col: usize,
    to_col: usize,
    /// (source generator, target generator, coefficient), column-local.
    entries: Vec<(usize, usize, WPoly)>,
}

fn assemble_class(
    c: &BigradedComplex,
    n: i64,
    class: i64,
    a_range: &RangeInclusive<i64>,
    b_range: &RangeInclusive<i64>,
    flip: &FlipMap,
) -> Result<ConeClass> {
    let in_class = |s: i64| spin_c_class(s, n) == class;

    // Column blocks: A-columns in ascending Alexander grading, then
    // B-columns.
    let mut cols: Vec<(ColumnKind, i64, WComplex)> = Vec::new();
    for s in a_range.clone().filter(|s| in_class(*s)) {
        let block = alexander_summand(c, s).relabeled(&format!("A({s})·"));
        cols.push((ColumnKind::A, s, block));
    }
    for u in b_range.clone().filter(|u| in_class(*u)) {
        let block = b_presentation(c, u).relabeled(&format!("B({u})·"));
        cols.push((ColumnKind::B, u, block));
    }
    if cols.is_empty() {
        return Err(Error::Internal(format!(
            "spin^c class {class} of the n = {n} cone retained no columns"
        )));
    }
    let mut b_index: BTreeMap<i64, usize> = BTreeMap::new();
    for (k, (kind, s, _)) in cols.iter().enumerate() {
        if *kind == ColumnKind::B {
            b_index.insert(*s, k);
        }
    }
    let mut starts = Vec::with_capacity(cols.len());
    let mut total = 0usize;
    for (_, _, block) in &cols {
        starts.push(total);
        total += block.len();
    }

    // Edge maps out of each A-column: ι_V sends the representative
    // U^p V^q x to W^p times the B_s normal form of x; the flip edge
    // sends it to W^q times φ(x) in the B_(s+n) normal form.
    let mut raw: Vec<RawEdge> = Vec::new();
    for (k, (kind, s, _)) in cols.iter().enumerate() {
        if *kind != ColumnKind::A {
            continue;
        }
        let powers = summand_powers(c, *s);
        if let Some(&bk) = b_index.get(s) {
            let entries = (0..c.len())
                .map(|i| (i, i, WPoly::monomial(powers[i].0)))
                .collect();
            raw.push(RawEdge {
                kind: EdgeKind::Vertical,
                from_col: k,
                to_col: bk,
                entries,
            });
        }
        if let Some(&bk) = b_index.get(&(s + n)) {
            let mut entries = Vec::new();
            for (i, &(_, q)) in powers.iter().enumerate() {
                for (tgt, coeff) in &flip.matrix[i] {
                    entries.push((i, *tgt, coeff.times_power(q)));
                }
            }
            raw.push(RawEdge {
                kind: EdgeKind::Horizontal,
                from_col: k,
                to_col: bk,
                entries,
            });
        }
    }

    // Solve one integer shift per column so every edge entry W^k from a
    // generator of grading g_src to one of grading g_tgt satisfies
    // (g_tgt + σ_tgt) − 2k = (g_src + σ_src) − 1. The first entry of an
    // edge determines the relative shift; the homogeneity check on the
    // assembled complex verifies all the others.
    let mut shift: Vec<Option<i64>> = vec![None; cols.len()];
    shift[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let sk = shift[k].expect("queued columns have solved shifts");
        for e in &raw {
            let (src_local, tgt_local, coeff) = match e.entries.first() {
                Some(first) => first,
                None => continue,
            };
            let k0 = coeff
                .exponents()
                .next()
                .expect("edge coefficients are nonzero") as i64;
            let delta = cols[e.from_col].2.gen(*src_local).grading
                - cols[e.to_col].2.gen(*tgt_local).grading
                - 1
                + 2 * k0;
            if e.from_col == k && shift[e.to_col].is_none() {
                shift[e.to_col] = Some(sk + delta);
                queue.push_back(e.to_col);
            } else if e.to_col == k && shift[e.from_col].is_none() {
                shift[e.from_col] = Some(sk - delta);
                queue.push_back(e.from_col);
            }
        }
    }
    if shift.iter().any(Option::is_none) {
        return Err(Error::Internal(format!(
            "spin^c class {class} of the n = {n} cone is not connected by its edges"
        )));
    }

    let mut gens = Vec::with_capacity(total);
    for (k, (_, _, block)) in cols.iter().enumerate() {
        let dg = shift[k].expect("all shifts solved");
        for g in block.gens() {
            gens.push(WGenerator {
                label: g.label.clone(),
                grading: g.grading + dg,
            });
        }
    }
    let mut diff: Vec<Vec<(usize, WPoly)>> = vec![Vec::new(); total];
    for (k, (_, _, block)) in cols.iter().enumerate() {
        for (src, col) in block.diff().iter().enumerate() {
            diff[starts[k] + src].extend(col.iter().map(|(t, e)| (starts[k] + t, e.clone())));
        }
    }
    let mut edges = Vec::new();
    for e in raw {
        let entries: Vec<(usize, usize, WPoly)> = e
            .entries
            .into_iter()
            .map(|(i, j, w)| (starts[e.from_col] + i, starts[e.to_col] + j, w))
            .collect();
        for (i, j, w) in &entries {
            diff[*i].push((*j, w.clone()));
        }
        edges.push(ConeEdge {
            kind: e.kind,
            from_s: cols[e.from_col].1,
            to_s: cols[e.to_col].1,
            entries,
        });
    }
    let complex = WComplex::new(gens, diff, GradingMode::Relative)
        .map_err(|err| Error::Internal(format!("cone assembly produced an invalid complex: {err}")))?;
    complex.check_homogeneous()?;
    let columns = cols
        .iter()
        .enumerate()
        .map(|(k, (kind, s, block))| ConeColumn {
            kind: *kind,
            s: *s,
            start: starts[k],
            len: block.len(),
        })
        .collect();
    Ok(ConeClass {
        class,
        columns,
        edges,
        complex,
    })
}

/// The class-[s] summand of HF⁻ of n-surgery for one spin^c class.
#[derive(Debug, Clone)]
pub struct ClassResult {
    pub class: i64,
    pub module: DvrModule,
    pub stability: Stability,
}

/// HF⁻(S³_n(K)): one relatively graded module per spin^c class.
#[derive(Debug, Clone)]
pub struct SurgeryResult {
    pub n: i64,
    /// Indexed by class in 0..|n|.
    pub classes: Vec<ClassResult>,
}

/// The large-coefficient shortcut: for n ≥ max(1, 2g − 1) and |s| ≤ ⌊n/2⌋,
/// the class-[s] summand of HF⁻(S³_n(K)) is the homology of A_s alone,
/// reported relatively graded.
pub fn large_surgery(
    c: &BigradedComplex,
    n: i64,
    s: i64,
    truncation: &TruncationSettings,
) -> Result<(DvrModule, Stability)> {
    if n == 0 {
        return Err(Error::ZeroSurgeryCoefficient);
    }
    let threshold = (2 * genus(c)? - 1).max(1);
    if n < threshold {
        return Err(Error::BelowLargeSurgeryThreshold { n, threshold });
    }
    if 2 * s.abs() > n {
        return Err(Error::InvalidInput(format!(
            "spin^c representative {s} outside [-{m}, {m}] for n = {n}",
            m = n / 2
        )));
    }
    let (module, stability) = homology_dvr_certified(&alexander_summand(c, s), truncation)?;
    Ok((module.to_relative(), stability))
}

/// The general route: homology of the truncated mapping cone of D_n, one
/// module per spin^c class. Each class must have exactly one free
/// summand; anything else is rejected.
pub fn surgery_homology(c: &BigradedComplex, n: i64, opts: &SurgeryOptions) -> Result<SurgeryResult> {
    let cone = build_cone(c, n, opts)?;
    let mut classes = Vec::with_capacity(cone.classes.len());
    for cls in &cone.classes {
        let (module, stability) = homology_dvr_certified(&cls.complex, &opts.truncation)?;
        if module.free().len() != 1 {
            return Err(Error::FreeSummandCount(module.free().len()));
        }
        classes.push(ClassResult {
            class: cls.class,
            module,
            stability,
        });
    }
    Ok(SurgeryResult { n, classes })
}

/// A surgery is an L-space surgery exactly when every spin^c class has
/// torsion-free homology.
pub fn is_lspace_result(res: &SurgeryResult) -> bool {
    res.classes.iter().all(|c| c.module.is_torsion_free())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::complex::fixtures::{left_trefoil, unknot};
    use crate::algebra::Generator;
    use crate::knots::{staircase_from_alexander, LaurentPoly};

    fn trefoil_delta() -> LaurentPoly {
        LaurentPoly::from_pairs(&[(1, 1), (0, -1), (-1, 1)]).unwrap()
    }

    fn torus_3_4_delta() -> LaurentPoly {
        LaurentPoly::from_pairs(&[(3, 1), (2, -1), (0, 1), (-2, -1), (-3, 1)]).unwrap()
    }

    fn labels(cx: &WComplex) -> Vec<&str> {
        cx.gens().iter().map(|g| g.label.as_str()).collect()
    }

    fn gradings(cx: &WComplex) -> Vec<i64> {
        cx.gens().iter().map(|g| g.grading).collect()
    }

    #[test]
    fn summand_at_zero_matches_the_worked_trefoil_example() {
        let a0 = alexander_summand(&left_trefoil(), 0);
        assert_eq!(labels(&a0), ["Va", "b", "Uc"]);
        assert_eq!(gradings(&a0), [0, 1, 0]);
        assert_eq!(a0.diff()[0], vec![(1, WPoly::monomial(1))]);
        assert_eq!(a0.diff()[1], vec![]);
        assert_eq!(a0.diff()[2], vec![(1, WPoly::monomial(1))]);
    }

    #[test]
    fn summands_at_nonzero_gradings_have_tower_homology() {
        let c = left_trefoil();

        let a_minus = alexander_summand(&c, -1);
        assert_eq!(labels(&a_minus), ["a", "Ub", "U^2c"]);
        assert_eq!(gradings(&a_minus), [0, -1, -2]);
        assert_eq!(a_minus.diff()[0], vec![(1, WPoly::one())]);
        assert_eq!(a_minus.diff()[2], vec![(1, WPoly::monomial(1))]);
        let (m, _) = homology_dvr_certified(&a_minus, &TruncationSettings::default()).unwrap();
        assert_eq!(m, DvrModule::absolute(vec![-2], vec![]));

        let a_plus = alexander_summand(&c, 1);
        assert_eq!(labels(&a_plus), ["V^2a", "Vb", "c"]);
        let (m, _) = homology_dvr_certified(&a_plus, &TruncationSettings::default()).unwrap();
        assert_eq!(m, DvrModule::absolute(vec![0], vec![]));
    }

    #[test]
    fn torus_3_4_summand_eliminates_to_one_generator() {
        let c = staircase_from_alexander(&torus_3_4_delta()).unwrap();
        let a0 = alexander_summand(&c, 0);
        assert_eq!(labels(&a0), ["U^3x0", "U^2x1", "x2", "V^2x3", "V^3x4"]);
        let red = reduce_w(&a0, PivotRule::MinFill);
        assert_eq!(red.minimal.len(), 1);
        assert_eq!(red.minimal.entries().count(), 0);
    }

    #[test]
    fn b_summand_normal_form_and_translation() {
        let c = left_trefoil();
        let b0 = b_summand(&c, 0).unwrap();
        assert_eq!(labels(&b0), ["Va", "b", "V^-1c"]);
        assert_eq!(gradings(&b0), [0, 1, 2]);
        assert_eq!(b0.diff()[0], vec![(1, WPoly::monomial(1))]);
        assert_eq!(b0.diff()[2], vec![(1, WPoly::one())]);

        // Multiplication by V carries the grading-(-1) summand to the
        // grading-0 one: identical complexes, relabelled generators.
        let b_minus = b_summand(&c, -1).unwrap();
        assert_eq!(labels(&b_minus), ["a", "V^-1b", "V^-2c"]);
        assert_eq!(b_minus.diff(), b0.diff());
        assert_eq!(gradings(&b_minus), gradings(&b0));
    }

    #[test]
    fn b_summand_rejects_a_two_tower_complex() {
        let two = BigradedComplex::new(
            vec![Generator::new("x", 0, 0), Generator::new("y", 0, 0)],
            vec![vec![], vec![]],
        )
        .unwrap();
        let err = b_summand(&two, 0).unwrap_err();
        assert!(matches!(err, Error::InvalidComplex(_)));
    }

    #[test]
    fn flip_of_the_unknot_is_the_identity() {
        let flip = flip_map(&unknot(), 5).unwrap();
        assert_eq!(flip.matrix.len(), 1);
        assert_eq!(flip.matrix[0], Combo::from([(0, WPoly::one())]));
        assert!(flip.commutes_with_differentials());
        assert!(flip.maps_tower_by_unit());
    }

    #[test]
    fn flip_of_the_trefoil_is_a_chain_quasi_isomorphism() {
        let c = left_trefoil();
        for rule in [PivotRule::MinFill, PivotRule::Reverse, PivotRule::First] {
            let flip = flip_map_with_rule(&c, 0, rule).unwrap();
            assert_eq!(labels(&flip.u_side), ["U^-1a", "b", "Uc"]);
            assert_eq!(labels(&flip.b_side), ["Va", "b", "V^-1c"]);
            assert!(flip.commutes_with_differentials());
            assert!(flip.maps_tower_by_unit());
        }
    }

    #[test]
    fn truncation_windows() {
        let window = |g, n, slack| {
            let (a, b) = truncation_window(g, n, slack);
            (a.collect::<Vec<i64>>(), b.collect::<Vec<i64>>())
        };
        assert_eq!(window(1, 1, 0), (vec![0], vec![]));
        assert_eq!(window(1, -1, 0), (vec![0], vec![-1, 0]));
        assert_eq!(window(1, -3, 0), (vec![0], vec![-3, -2, -1, 0]));
        assert_eq!(window(0, 3, 0), (vec![-1, 0, 1], vec![]));
        assert_eq!(window(0, -1, 0), (vec![], vec![0]));
        assert_eq!(window(2, 1, 0), (vec![-1, 0, 1], vec![0, 1]));
        assert_eq!(window(2, 7, 0), ((-3..=3).collect(), vec![]));
        assert_eq!(window(1, 1, 1), (vec![-1, 0, 1], vec![0, 1]));
    }

    #[test]
    fn plus_one_surgery_on_the_left_trefoil() {
        let c = left_trefoil();
        let cone = build_cone(&c, 1, &SurgeryOptions::default()).unwrap();
        assert_eq!(cone.classes.len(), 1);
        let cls = &cone.classes[0];
        assert_eq!(cls.columns.len(), 1);
        assert_eq!((cls.columns[0].kind, cls.columns[0].s), (ColumnKind::A, 0));
        assert!(cls.edges.is_empty());

        let res = surgery_homology(&c, 1, &SurgeryOptions::default()).unwrap();
        assert_eq!(res.classes[0].module, DvrModule::relative(vec![0], vec![(1, 1)]));
        assert!(!is_lspace_result(&res));
    }

    #[test]
    fn minus_one_surgery_on_the_left_trefoil_is_an_l_space() {
        let c = left_trefoil();
        let cone = build_cone(&c, -1, &SurgeryOptions::default()).unwrap();
        let cls = &cone.classes[0];
        let shape: Vec<(ColumnKind, i64)> = cls.columns.iter().map(|c| (c.kind, c.s)).collect();
        assert_eq!(
            shape,
            [(ColumnKind::A, 0), (ColumnKind::B, -1), (ColumnKind::B, 0)]
        );
        let kinds: Vec<(EdgeKind, i64, i64)> =
            cls.edges.iter().map(|e| (e.kind, e.from_s, e.to_s)).collect();
        assert_eq!(
            kinds,
            [
                (EdgeKind::Vertical, 0, 0),
                (EdgeKind::Horizontal, 0, -1)
            ]
        );

        let res = surgery_homology(&c, -1, &SurgeryOptions::default()).unwrap();
        assert_eq!(res.classes[0].module, DvrModule::relative(vec![0], vec![]));
        assert!(is_lspace_result(&res));
    }

    #[test]
    fn plus_three_surgery_on_the_left_trefoil_splits_by_class() {
        let c = left_trefoil();
        let res = surgery_homology(&c, 3, &SurgeryOptions::default()).unwrap();
        assert_eq!(res.classes.len(), 3);
        assert_eq!(res.classes[0].module, DvrModule::relative(vec![0], vec![(1, 1)]));
        assert_eq!(res.classes[1].module, DvrModule::relative(vec![0], vec![]));
        assert_eq!(res.classes[2].module, DvrModule::relative(vec![0], vec![]));

        // The large-surgery route computes the same modules per class.
        for s in [-1, 0, 1] {
            let (large, _) = large_surgery(&c, 3, s, &TruncationSettings::default()).unwrap();
            let class = spin_c_class(s, 3) as usize;
            assert!(res.classes[class].module.isomorphic(&large).unwrap());
        }
    }

    #[test]
    fn unknot_surgeries_give_one_tower_per_class() {
        let u = unknot();
        for n in [3, -2] {
            let res = surgery_homology(&u, n, &SurgeryOptions::default()).unwrap();
            assert_eq!(res.classes.len(), n.unsigned_abs() as usize);
            for cls in &res.classes {
                assert_eq!(cls.module, DvrModule::relative(vec![0], vec![]));
            }
            assert!(is_lspace_result(&res));
        }
        assert!(matches!(
            surgery_homology(&u, 0, &SurgeryOptions::default()),
            Err(Error::ZeroSurgeryCoefficient)
        ));
    }

    #[test]
    fn cone_shape_for_a_genus_two_knot() {
        let c23 = staircase_from_alexander(&trefoil_delta()).unwrap();
        let granny = c23.tensor(&c23);
        let cone = build_cone(&granny, 1, &SurgeryOptions::default()).unwrap();
        let cls = &cone.classes[0];
        let shape: Vec<(ColumnKind, i64)> = cls.columns.iter().map(|c| (c.kind, c.s)).collect();
        assert_eq!(
            shape,
            [
                (ColumnKind::A, -1),
                (ColumnKind::A, 0),
                (ColumnKind::A, 1),
                (ColumnKind::B, 0),
                (ColumnKind::B, 1)
            ]
        );
        // Each A-column keeps exactly the edges whose B-target is retained.
        let mut out: BTreeMap<i64, Vec<(EdgeKind, i64)>> = BTreeMap::new();
        for e in &cls.edges {
            out.entry(e.from_s).or_default().push((e.kind, e.to_s));
        }
        assert_eq!(out[&-1], [(EdgeKind::Horizontal, 0)]);
        assert_eq!(out[&0], [(EdgeKind::Vertical, 0), (EdgeKind::Horizontal, 1)]);
        assert_eq!(out[&1], [(EdgeKind::Vertical, 1)]);
    }

    #[test]
    fn cone_matches_large_surgery_for_the_granny_knot() {
        let c23 = staircase_from_alexander(&trefoil_delta()).unwrap();
        let granny = c23.tensor(&c23);
        let res = surgery_homology(&granny, 7, &SurgeryOptions::default()).unwrap();
        assert_eq!(res.classes.len(), 7);
        for s in -3..=3 {
            let (large, _) = large_surgery(&granny, 7, s, &TruncationSettings::default()).unwrap();
            let class = spin_c_class(s, 7) as usize;
            assert!(res.classes[class].module.isomorphic(&large).unwrap());
        }
    }

    #[test]
    fn flip_rule_and_window_slack_leave_the_modules_unchanged() {
        let c = left_trefoil();
        let base = surgery_homology(&c, -1, &SurgeryOptions::default()).unwrap();
        let alternate = SurgeryOptions {
            flip_rule: PivotRule::Reverse,
            ..SurgeryOptions::default()
        };
        let widened = SurgeryOptions {
            window_slack: 2,
            ..SurgeryOptions::default()
        };
        for opts in [alternate, widened] {
            let res = surgery_homology(&c, -1, &opts).unwrap();
            for (a, b) in base.classes.iter().zip(&res.classes) {
                assert_eq!(a.module, b.module);
            }
        }
    }

    #[test]
    fn large_surgery_input_errors() {
        let c23 = staircase_from_alexander(&trefoil_delta()).unwrap();
        let granny = c23.tensor(&c23);
        assert!(matches!(
            large_surgery(&granny, 2, 0, &TruncationSettings::default()),
            Err(Error::BelowLargeSurgeryThreshold { n: 2, threshold: 3 })
        ));
        let c = left_trefoil();
        assert!(matches!(
            large_surgery(&c, 1, 1, &TruncationSettings::default()),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            large_surgery(&c, 0, 0, &TruncationSettings::default()),
            Err(Error::ZeroSurgeryCoefficient)
        ));
    }
}
