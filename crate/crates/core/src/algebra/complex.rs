use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::f2::F2Matrix;
use crate::algebra::grading::{Bigrading, GradingMode};
use crate::algebra::poly::{Monomial, PolyUV, WPoly};
use crate::algebra::wcomplex::{WComplex, WGenerator};
use crate::error::{Error, Result};

/// A free generator of a bigraded complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub grading: Bigrading,
}

impl Generator {
    pub fn new(label: impl Into<String>, u: i64, v: i64) -> Self {
        Generator {
            label: label.into(),
            grading: Bigrading::new(u, v),
        }
    }
}

/// An element of the complex, as a map from generator index to coefficient.
pub type Element = BTreeMap<usize, PolyUV>;

/// Outcome of the structural checks on a candidate complex.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// A finitely generated free complex over F2[U,V]: bigraded generators and a
/// square-zero differential of bidegree (-1, -1).
///
/// Homogeneity has a useful consequence used throughout: since each generator
/// contributes a single bigrading and U, V have distinct bidegrees, every
/// nonzero coefficient of the differential is forced to be one monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedComplex {
    gens: Vec<Generator>,
    /// diff[i] lists the terms of d(gens[i]) as (target index, coefficient).
    diff: Vec<Vec<(usize, PolyUV)>>,
}

impl BigradedComplex {
    /// Build a complex, rejecting it unless all structural checks pass.
    /// Duplicate (source, target) entries are combined; zeros dropped.
    pub fn new(gens: Vec<Generator>, diff: Vec<Vec<(usize, PolyUV)>>) -> Result<Self> {
        let cx = BigradedComplex::assemble(gens, diff)?;
        let report = cx.validate();
        if report.is_valid() {
            Ok(cx)
        } else {
            Err(Error::InvalidComplex(report.problems.join("; ")))
        }
    }

    fn assemble(gens: Vec<Generator>, diff: Vec<Vec<(usize, PolyUV)>>) -> Result<Self> {
        if diff.len() != gens.len() {
            return Err(Error::InvalidComplex(format!(
                "{} generators but {} differential columns",
                gens.len(),
                diff.len()
            )));
        }
        let n = gens.len();
        let mut cols = Vec::with_capacity(n);
        for col in diff {
            let mut merged: BTreeMap<usize, PolyUV> = BTreeMap::new();
            for (tgt, coeff) in col {
                if tgt >= n {
                    return Err(Error::InvalidComplex(format!(
                        "differential target {tgt} out of range (n = {n})"
                    )));
                }
                let entry = merged.entry(tgt).or_default();
                *entry = entry.add(&coeff);
            }
            merged.retain(|_, c| !c.is_zero());
            cols.push(merged.into_iter().collect());
        }
        Ok(BigradedComplex { gens, diff: cols })
    }

    /// Run all structural checks, collecting every violation: unique labels,
    /// equal grading parities, homogeneous differential of bidegree (-1,-1),
    /// and d^2 = 0.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut labels = BTreeSet::new();
        for g in &self.gens {
            if !labels.insert(g.label.as_str()) {
                report
                    .problems
                    .push(format!("duplicate generator label {:?}", g.label));
            }
            if (g.grading.u - g.grading.v).rem_euclid(2) != 0 {
                report.problems.push(format!(
                    "generator {} has gradings {} of unequal parity",
                    g.label, g.grading
                ));
            }
        }
        for (i, col) in self.diff.iter().enumerate() {
            for (j, coeff) in col {
                for m in coeff.terms() {
                    let src = self.gens[i].grading;
                    let tgt = self.gens[*j].grading;
                    let got = (
                        tgt.u - 2 * m.u as i64 - src.u,
                        tgt.v - 2 * m.v as i64 - src.v,
                    );
                    if got != (-1, -1) {
                        report.problems.push(format!(
                            "term {m}·{} in d({}) has bidegree ({}, {}), not (-1, -1)",
                            self.gens[*j].label, self.gens[i].label, got.0, got.1
                        ));
                    }
                }
            }
        }
        for i in 0..self.len() {
            let d1 = self.apply_diff(&Element::from([(i, PolyUV::one())]));
            let dd = self.apply_diff(&d1);
            if let Some((k, _)) = dd.iter().next() {
                report.problems.push(format!(
                    "d^2({}) has a nonzero component on {}",
                    self.gens[i].label, self.gens[*k].label
                ));
            }
        }
        report
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn diff(&self) -> &[Vec<(usize, PolyUV)>] {
        &self.diff
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.label == label)
    }

    /// Apply the differential to an element, dropping cancelled terms.
    pub fn apply_diff(&self, elem: &Element) -> Element {
        let mut acc: Element = BTreeMap::new();
        for (i, c) in elem {
            for (j, e) in &self.diff[*i] {
                let entry = acc.entry(*j).or_default();
                *entry = entry.add(&c.mul(e));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }

    /// The complex with all bigradings shifted by (du, dv).
    pub fn shifted(&self, du: i64, dv: i64) -> BigradedComplex {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.grading = g.grading.shifted(du, dv);
        }
        out
    }

    /// Generators of the tensor product are pairs, in lexicographic order,
    /// labelled "x|y"; the differential is the Leibniz rule (no signs in
    /// characteristic 2).
    pub fn tensor(&self, other: &BigradedComplex) -> BigradedComplex {
        let n2 = other.len();
        let idx = |i: usize, j: usize| i * n2 + j;
        let mut gens = Vec::with_capacity(self.len() * n2);
        for gi in &self.gens {
            for gj in &other.gens {
                gens.push(Generator {
                    label: format!("{}|{}", gi.label, gj.label),
                    grading: gi.grading.plus(gj.grading),
                });
            }
        }
        let mut diff = vec![Vec::new(); gens.len()];
        for i in 0..self.len() {
            for j in 0..n2 {
                let col = &mut diff[idx(i, j)];
                for (i2, e) in &self.diff[i] {
                    col.push((idx(*i2, j), e.clone()));
                }
                for (j2, f) in &other.diff[j] {
                    col.push((idx(i, *j2), f.clone()));
                }
            }
        }
        BigradedComplex::assemble(gens, diff).expect("tensor of valid complexes")
    }

    /// The dual complex: gradings negate and the differential transposes.
    pub fn dualize(&self) -> BigradedComplex {
        let gens = self
            .gens
            .iter()
            .map(|g| Generator {
                label: format!("{}*", g.label),
                grading: g.grading.negated(),
            })
            .collect();
        let mut diff = vec![Vec::new(); self.len()];
        for (i, col) in self.diff.iter().enumerate() {
            for (j, coeff) in col {
                diff[*j].push((i, coeff.clone()));
            }
        }
        BigradedComplex::assemble(gens, diff).expect("dual of valid complex")
    }

    pub fn direct_sum(&self, other: &BigradedComplex) -> BigradedComplex {
        let off = self.len();
        let gens = self
            .gens
            .iter()
            .cloned()
            .chain(other.gens.iter().cloned())
            .collect();
        let mut diff = self.diff.clone();
        for col in &other.diff {
            diff.push(col.iter().map(|(j, c)| (j + off, c.clone())).collect());
        }
        BigradedComplex::assemble(gens, diff).expect("sum of valid complexes")
    }

    /// Positional isomorphism test ignoring labels: same gradings and the
    /// same differential entries, generator by generator.
    pub fn structure_eq(&self, other: &BigradedComplex) -> bool {
        self.len() == other.len()
            && self
                .gens
                .iter()
                .zip(&other.gens)
                .all(|(a, b)| a.grading == b.grading)
            && self.diff == other.diff
    }

    /// Set V = 0: the complex over F2[W] spanned by the same generators in
    /// grading gr_U, keeping the U-power of each V-free term.
    pub fn specialize_v0(&self) -> WComplex {
        self.w_specialization(|m| (m.v == 0).then_some(m.u), |g| g.u)
    }

    /// Set U = 0: grading gr_V, keeping the V-power of each U-free term.
    pub fn specialize_u0(&self) -> WComplex {
        self.w_specialization(|m| (m.u == 0).then_some(m.v), |g| g.v)
    }

    /// Set V = 1: grading gr_U; every term U^a V^b contributes W^a.
    pub fn specialize_v1(&self) -> WComplex {
        self.w_specialization(|m| Some(m.u), |g| g.u)
    }

    /// Set U = 1: grading gr_V; every term U^a V^b contributes W^b.
    pub fn specialize_u1(&self) -> WComplex {
        self.w_specialization(|m| Some(m.v), |g| g.v)
    }

    /// The grading-s summand of the complex with V inverted, written in its
    /// polynomial normal form on the generators V^(s - A(x))·x. The
    /// presentation is independent of s, and coincides with V = 1: entries
    /// keep the U-power of every term, graded by gr_U.
    pub fn invert_v(&self) -> WComplex {
        self.specialize_v1()
    }

    /// The grading-s summand of the complex with U inverted; coincides with
    /// U = 1: entries keep the V-power of every term, graded by gr_V.
    pub fn invert_u(&self) -> WComplex {
        self.specialize_u1()
    }

    fn w_specialization(
        &self,
        term: impl Fn(Monomial) -> Option<u32>,
        grading: impl Fn(Bigrading) -> i64,
    ) -> WComplex {
        let gens = self
            .gens
            .iter()
            .map(|g| WGenerator {
                label: g.label.clone(),
                grading: grading(g.grading),
            })
            .collect();
        let diff = self
            .diff
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(j, coeff)| {
                        let w: WPoly = coeff.terms().filter_map(&term).collect();
                        (!w.is_zero()).then_some((*j, w))
                    })
                    .collect()
            })
            .collect();
        WComplex::assemble(gens, diff, GradingMode::Absolute)
            .expect("specialization of valid complex")
    }

    /// Set U = V = 0: same generators, keeping only constant terms.
    pub fn specialize_uv0(&self) -> BigradedComplex {
        let diff = self
            .diff
            .iter()
            .map(|col| {
                col.iter()
                    .filter(|(_, coeff)| coeff.terms().any(|m| m.is_one()))
                    .map(|(j, _)| (*j, PolyUV::one()))
                    .collect()
            })
            .collect();
        BigradedComplex::assemble(self.gens.clone(), diff)
            .expect("specialization of valid complex")
    }

    /// F2 vector-space homology per bigrading, for complexes whose entries
    /// are all constants (the U = V = 0 specialization).
    pub fn homology_f2(&self) -> Result<BTreeMap<Bigrading, usize>> {
        for (i, col) in self.diff.iter().enumerate() {
            for (j, coeff) in col {
                if !coeff.is_one() {
                    return Err(Error::InvalidInput(format!(
                        "entry {coeff} from {} to {} is not constant",
                        self.gens[i].label, self.gens[*j].label
                    )));
                }
            }
        }
        let mut by_grading: BTreeMap<Bigrading, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.gens.iter().enumerate() {
            by_grading.entry(g.grading).or_default().push(i);
        }
        // rank of the block of d leaving each bigrading
        let mut rank_out: BTreeMap<Bigrading, usize> = BTreeMap::new();
        for (g, srcs) in &by_grading {
            let tgt_grading = g.shifted(-1, -1);
            let empty = Vec::new();
            let tgts = by_grading.get(&tgt_grading).unwrap_or(&empty);
            let pos: BTreeMap<usize, usize> =
                tgts.iter().enumerate().map(|(p, i)| (*i, p)).collect();
            let mut mat = F2Matrix::new(srcs.len());
            for _ in tgts {
                mat.push_empty_row();
            }
            for (c, src) in srcs.iter().enumerate() {
                for (j, _) in &self.diff[*src] {
                    mat.set(pos[j], c);
                }
            }
            rank_out.insert(*g, mat.rank());
        }
        let mut dims = BTreeMap::new();
        for (g, gens) in &by_grading {
            let out = rank_out.get(g).copied().unwrap_or(0);
            let inn = rank_out.get(&g.shifted(1, 1)).copied().unwrap_or(0);
            let dim = gens.len() - out - inn;
            if dim > 0 {
                dims.insert(*g, dim);
            }
        }
        Ok(dims)
    }

    /// Basis of the bigraded piece at `g` of the underlying free module:
    /// pairs (generator, monomial), where the monomial is the unique U^a V^b
    /// moving that generator's bigrading to `g`, when it exists.
    fn module_basis_at(&self, g: Bigrading) -> Vec<(usize, Monomial)> {
        let mut basis = Vec::new();
        for (i, gen) in self.gens.iter().enumerate() {
            let du = gen.grading.u - g.u;
            let dv = gen.grading.v - g.v;
            if du >= 0 && dv >= 0 && du % 2 == 0 && dv % 2 == 0 {
                basis.push((i, Monomial::new((du / 2) as u32, (dv / 2) as u32)));
            }
        }
        basis
    }

    fn rank_at(&self, g: Bigrading) -> usize {
        let srcs = self.module_basis_at(g);
        let tgts = self.module_basis_at(g.shifted(-1, -1));
        let pos: BTreeMap<(usize, Monomial), usize> = tgts
            .iter()
            .enumerate()
            .map(|(p, &(i, m))| ((i, m), p))
            .collect();
        let mut mat = F2Matrix::new(srcs.len());
        for _ in &tgts {
            mat.push_empty_row();
        }
        for (c, &(i, m)) in srcs.iter().enumerate() {
            for (j, coeff) in &self.diff[i] {
                for t in coeff.terms() {
                    mat.set(pos[&(*j, m.times(t))], c);
                }
            }
        }
        mat.rank()
    }

    /// Dimension over F2 of each bigraded piece of the homology of the full
    /// module, for every bigrading in the given inclusive window.
    pub fn homology_dims_in_window(
        &self,
        u_range: (i64, i64),
        v_range: (i64, i64),
    ) -> BTreeMap<(i64, i64), usize> {
        let mut dims = BTreeMap::new();
        for p in u_range.0..=u_range.1 {
            for q in v_range.0..=v_range.1 {
                let g = Bigrading::new(p, q);
                let n = self.module_basis_at(g).len();
                if n == 0 {
                    continue;
                }
                let out = self.rank_at(g);
                let inn = self.rank_at(g.shifted(1, 1));
                let dim = n - out - inn;
                if dim > 0 {
                    dims.insert((p, q), dim);
                }
            }
        }
        dims
    }

    /// The common bigrading of a homogeneous element, or an error.
    fn element_bigrading(&self, elem: &Element) -> Result<Bigrading> {
        let mut grading = None;
        for (i, coeff) in elem {
            for m in coeff.terms() {
                let g = self.gens[*i]
                    .grading
                    .shifted(-2 * m.u as i64, -2 * m.v as i64);
                match grading {
                    None => grading = Some(g),
                    Some(prev) if prev != g => {
                        return Err(Error::InvalidInput(format!(
                            "element is not homogeneous: terms at {prev} and {g}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        grading.ok_or_else(|| Error::InvalidInput("element is zero".into()))
    }

    pub fn is_cycle(&self, elem: &Element) -> bool {
        self.apply_diff(elem).is_empty()
    }

    /// Whether a homogeneous element is in the image of the differential.
    pub fn is_boundary(&self, elem: &Element) -> Result<bool> {
        let g = self.element_bigrading(elem)?;
        let srcs = self.module_basis_at(g.shifted(1, 1));
        let tgts = self.module_basis_at(g);
        let pos: BTreeMap<(usize, Monomial), usize> = tgts
            .iter()
            .enumerate()
            .map(|(p, &(i, m))| ((i, m), p))
            .collect();
        let mut mat = F2Matrix::new(srcs.len() + 1);
        for _ in &tgts {
            mat.push_empty_row();
        }
        for (c, &(i, m)) in srcs.iter().enumerate() {
            for (j, coeff) in &self.diff[i] {
                for t in coeff.terms() {
                    mat.set(pos[&(*j, m.times(t))], c);
                }
            }
        }
        for (i, coeff) in elem {
            for m in coeff.terms() {
                mat.set(pos[&(*i, m)], srcs.len());
            }
        }
        Ok(mat.solvable_with_last_column_as_rhs())
    }

    /// Whether a homogeneous cycle represents a nonzero homology class.
    pub fn homology_class_is_nonzero(&self, elem: &Element) -> Result<bool> {
        if !self.is_cycle(elem) {
            return Err(Error::InvalidInput("element is not a cycle".into()));
        }
        Ok(!self.is_boundary(elem)?)
    }
}

impl fmt::Display for BigradedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            write!(f, "{} {}", g.label, g.grading)?;
            if !self.diff[i].is_empty() {
                write!(f, ": d = ")?;
                for (k, (j, c)) in self.diff[i].iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    if c.is_one() {
                        write!(f, "{}", self.gens[*j].label)?;
                    } else {
                        write!(f, "({c})·{}", self.gens[*j].label)?;
                    }
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
