use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::complex::BigradedComplex;
use crate::algebra::poly::{PolyUV, WPoly};
use crate::algebra::wcomplex::{WComplex, WGenerator};

/// Coefficient arithmetic for sparse elimination. `inv_unit` is only called
/// on entries for which `is_unit` returned true.
pub trait EntryRing {
    type E: Clone + Eq + std::fmt::Debug;
    fn one(&self) -> Self::E;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_unit(&self, e: &Self::E) -> bool;
    fn inv_unit(&self, e: &Self::E) -> Self::E;
}

/// F2[U,V]. The only unit is 1; in a homogeneous complex every entry is a
/// single monomial, so unit entries are literal 1s.
pub struct UvRing;

impl EntryRing for UvRing {
    type E = PolyUV;

    fn one(&self) -> PolyUV {
        PolyUV::one()
    }
    fn is_zero(&self, e: &PolyUV) -> bool {
        e.is_zero()
    }
    fn add(&self, a: &PolyUV, b: &PolyUV) -> PolyUV {
        a.add(b)
    }
    fn mul(&self, a: &PolyUV, b: &PolyUV) -> PolyUV {
        a.mul(b)
    }
    fn is_unit(&self, e: &PolyUV) -> bool {
        e.is_one()
    }
    fn inv_unit(&self, e: &PolyUV) -> PolyUV {
        assert!(e.is_one());
        PolyUV::one()
    }
}

/// F2[W], optionally working modulo W^n. Untruncated, the only unit is 1;
/// truncated, anything with a constant term inverts by geometric series.
pub struct WRing {
    pub trunc: Option<u32>,
}

impl WRing {
    pub fn exact() -> Self {
        WRing { trunc: None }
    }

    pub fn modulo(n: u32) -> Self {
        WRing { trunc: Some(n) }
    }

    pub fn reduce(&self, e: &WPoly) -> WPoly {
        match self.trunc {
            Some(n) => e.truncated(n),
            None => e.clone(),
        }
    }
}

impl EntryRing for WRing {
    type E = WPoly;

    fn one(&self) -> WPoly {
        WPoly::one()
    }
    fn is_zero(&self, e: &WPoly) -> bool {
        e.is_zero()
    }
    fn add(&self, a: &WPoly, b: &WPoly) -> WPoly {
        a.add(b)
    }
    fn mul(&self, a: &WPoly, b: &WPoly) -> WPoly {
        match self.trunc {
            Some(n) => a.mul_trunc(b, n),
            None => a.mul(b),
        }
    }
    fn is_unit(&self, e: &WPoly) -> bool {
        match self.trunc {
            Some(_) => e.has_constant_term(),
            None => e.is_one(),
        }
    }
    fn inv_unit(&self, e: &WPoly) -> WPoly {
        match self.trunc {
            Some(n) => e.inv_unit_trunc(n),
            None => {
                assert!(e.is_one());
                WPoly::one()
            }
        }
    }
}

/// Square sparse matrix with both column-major entries and a row index,
/// viewed as a differential: entry (tgt, src) is the coefficient of tgt
/// in d(src).
#[derive(Debug, Clone)]
pub struct SparseMat<E> {
    cols: Vec<BTreeMap<usize, E>>,
    rows: Vec<BTreeSet<usize>>,
}

impl<E: Clone + Eq> SparseMat<E> {
    pub fn new(n: usize) -> Self {
        SparseMat {
            cols: vec![BTreeMap::new(); n],
            rows: vec![BTreeSet::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, tgt: usize, src: usize) -> Option<&E> {
        self.cols[src].get(&tgt)
    }

    pub fn set(&mut self, tgt: usize, src: usize, e: E) {
        self.cols[src].insert(tgt, e);
        self.rows[tgt].insert(src);
    }

    pub fn remove(&mut self, tgt: usize, src: usize) {
        self.cols[src].remove(&tgt);
        self.rows[tgt].remove(&src);
    }

    pub fn col(&self, src: usize) -> &BTreeMap<usize, E> {
        &self.cols[src]
    }

    pub fn row_sources(&self, tgt: usize) -> &BTreeSet<usize> {
        &self.rows[tgt]
    }

    pub fn add_to<R: EntryRing<E = E>>(&mut self, ring: &R, tgt: usize, src: usize, delta: &E) {
        let cur = match self.get(tgt, src) {
            Some(e) => ring.add(e, delta),
            None => delta.clone(),
        };
        if ring.is_zero(&cur) {
            self.remove(tgt, src);
        } else {
            self.set(tgt, src, cur);
        }
    }

    pub fn clear_generator(&mut self, i: usize) {
        for (tgt, _) in std::mem::take(&mut self.cols[i]) {
            self.rows[tgt].remove(&i);
        }
        for src in std::mem::take(&mut self.rows[i]) {
            self.cols[src].remove(&i);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(src, col)| col.iter().map(move |(tgt, e)| (*tgt, src, e)))
    }

    pub fn entry_count(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }
}

/// How to pick among the available unit pivots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Fewest incident nonzeros, then smallest (source, target).
    MinFill,
    /// First in column order.
    First,
    /// Last in column order.
    Reverse,
}

/// A linear combination of generators, by index.
pub type Combo<E> = BTreeMap<usize, E>;

pub fn combo_add_scaled<R: EntryRing>(
    ring: &R,
    dst: &mut Combo<R::E>,
    src: &Combo<R::E>,
    scale: &R::E,
) {
    for (k, v) in src {
        let add = ring.mul(scale, v);
        let cur = match dst.get(k) {
            Some(e) => ring.add(e, &add),
            None => add,
        };
        if ring.is_zero(&cur) {
            dst.remove(k);
        } else {
            dst.insert(*k, cur);
        }
    }
}

/// Apply a map stored column-wise (map[j] = image of generator j) to a combo.
pub fn apply_columns<R: EntryRing>(
    ring: &R,
    map: &[Combo<R::E>],
    elem: &Combo<R::E>,
) -> Combo<R::E> {
    let mut out = Combo::new();
    for (j, c) in elem {
        combo_add_scaled(ring, &mut out, &map[*j], c);
    }
    out
}

/// Result of cancelling unit pivots: the reduced differential together with
/// the maps of the homotopy equivalence, all indexed over the original
/// generators (dead generators keep empty columns).
#[derive(Debug, Clone)]
pub struct Reduction<E> {
    pub alive: Vec<bool>,
    pub diff: SparseMat<E>,
    /// Projection C -> C_min.
    pub proj: Vec<Combo<E>>,
    /// Inclusion C_min -> C.
    pub incl: Vec<Combo<E>>,
    /// Homotopy C -> C with incl∘proj + id = d∘h + h∘d.
    pub homotopy: Vec<Combo<E>>,
    /// Cancelled (target, source) pairs, in order.
    pub cancelled: Vec<(usize, usize)>,
}

impl<E> Reduction<E> {
    pub fn alive_indices(&self) -> Vec<usize> {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.then_some(i))
            .collect()
    }
}

fn pick_pivot<R: EntryRing>(
    ring: &R,
    d: &SparseMat<R::E>,
    rule: PivotRule,
) -> Option<(usize, usize)> {
    match rule {
        PivotRule::First => {
            for src in 0..d.n() {
                for (tgt, e) in d.col(src) {
                    if ring.is_unit(e) {
                        return Some((*tgt, src));
                    }
                }
            }
            None
        }
        PivotRule::Reverse => {
            for src in (0..d.n()).rev() {
                for (tgt, e) in d.col(src).iter().rev() {
                    if ring.is_unit(e) {
                        return Some((*tgt, src));
                    }
                }
            }
            None
        }
        PivotRule::MinFill => {
            let mut best: Option<(usize, (usize, usize))> = None;
            for (tgt, src, e) in d.entries() {
                if !ring.is_unit(e) {
                    continue;
                }
                let score = d.row_sources(tgt).len() + d.col(src).len();
                let key = (score, (src, tgt));
                if best.map_or(true, |(s, k)| key < (s, k)) {
                    best = Some((score, (src, tgt)));
                }
            }
            best.map(|(_, (src, tgt))| (tgt, src))
        }
    }
}

/// Cancel unit pivots until none remain, maintaining the full homotopy
/// equivalence data.
pub fn reduce<R: EntryRing>(ring: &R, mut d: SparseMat<R::E>, rule: PivotRule) -> Reduction<R::E> {
    let n = d.n();
    let mut alive = vec![true; n];
    let mut proj: Vec<Combo<R::E>> = (0..n).map(|j| Combo::from([(j, ring.one())])).collect();
    let mut incl: Vec<Combo<R::E>> = (0..n).map(|j| Combo::from([(j, ring.one())])).collect();
    let mut homotopy: Vec<Combo<R::E>> = vec![Combo::new(); n];
    let mut cancelled = Vec::new();

    while let Some((x, y)) = pick_pivot(ring, &d, rule) {
        debug_assert!(x != y, "diagonal pivot in a differential");
        let u_inv = ring.inv_unit(d.get(x, y).unwrap());

        // Snapshots of the pivot row and column, without the pivot itself.
        let row_x: Vec<(usize, R::E)> = d
            .row_sources(x)
            .iter()
            .filter(|&&z| z != y)
            .map(|&z| (z, d.get(x, z).unwrap().clone()))
            .collect();
        let col_y: Vec<(usize, R::E)> = d
            .col(y)
            .iter()
            .filter(|(&w, _)| w != x)
            .map(|(&w, f)| (w, f.clone()))
            .collect();
        let incl_y = incl[y].clone();

        // Homotopy picks up (coefficient of x in old proj)·u^-1·(old incl of y).
        for j in 0..n {
            if let Some(alpha) = proj[j].get(&x).cloned() {
                let scale = ring.mul(&alpha, &u_inv);
                combo_add_scaled(ring, &mut homotopy[j], &incl_y, &scale);
            }
        }

        // Inclusion: survivors z with an entry d[x,z] pick up a y-correction.
        for (z, e_z) in &row_x {
            let scale = ring.mul(&u_inv, e_z);
            combo_add_scaled(ring, &mut incl[*z], &incl_y, &scale);
        }
        incl[x].clear();
        incl[y].clear();

        // Projection: x maps to u^-1·(the rest of d(y)); y maps to zero.
        for j in 0..n {
            proj[j].remove(&y);
            if let Some(alpha) = proj[j].remove(&x) {
                let scale = ring.mul(&alpha, &u_inv);
                for (w, f_w) in &col_y {
                    let add = ring.mul(&scale, f_w);
                    let cur = match proj[j].get(w) {
                        Some(e) => ring.add(e, &add),
                        None => add,
                    };
                    if ring.is_zero(&cur) {
                        proj[j].remove(w);
                    } else {
                        proj[j].insert(*w, cur);
                    }
                }
            }
        }

        // Differential: d[w,z] += d[x,z]·u^-1·d[w,y].
        for (z, e_z) in &row_x {
            let scale = ring.mul(e_z, &u_inv);
            for (w, f_w) in &col_y {
                let delta = ring.mul(&scale, f_w);
                d.add_to(ring, *w, *z, &delta);
            }
        }
        d.clear_generator(x);
        d.clear_generator(y);
        alive[x] = false;
        alive[y] = false;
        cancelled.push((x, y));
    }

    Reduction {
        alive,
        diff: d,
        proj,
        incl,
        homotopy,
        cancelled,
    }
}

/// Check incl∘proj + id = d∘h + h∘d, proj∘d = d_red∘proj and d∘incl =
/// incl∘d_red on every generator. Quadratic; meant for tests.
pub fn reduction_identities_hold<R: EntryRing>(
    ring: &R,
    original: &SparseMat<R::E>,
    red: &Reduction<R::E>,
) -> bool {
    let n = original.n();
    let d_cols: Vec<Combo<R::E>> = (0..n).map(|j| original.col(j).clone()).collect();
    let dr_cols: Vec<Combo<R::E>> = (0..n).map(|j| red.diff.col(j).clone()).collect();
    for j in 0..n {
        let basis = Combo::from([(j, ring.one())]);

        // incl(proj(j)) + j
        let mut lhs = apply_columns(ring, &red.incl, &proj_combo(ring, red, &basis));
        combo_add_scaled(ring, &mut lhs, &basis, &ring.one());

        // d(h(j)) + h(d(j))
        let mut rhs = apply_columns(ring, &d_cols, &red.homotopy[j]);
        let hd = apply_columns(ring, &red.homotopy, &d_cols[j]);
        combo_add_scaled(ring, &mut rhs, &hd, &ring.one());
        if lhs != rhs {
            return false;
        }

        // chain-map conditions
        let pd = apply_columns(ring, &red.proj, &d_cols[j]);
        let dp = apply_columns(ring, &dr_cols, &red.proj[j]);
        if pd != dp {
            return false;
        }
        if red.alive[j] {
            let di = apply_columns(ring, &d_cols, &red.incl[j]);
            let id = apply_columns(ring, &red.incl, &dr_cols[j]);
            if di != id {
                return false;
            }
        }
    }
    true
}

fn proj_combo<R: EntryRing>(ring: &R, red: &Reduction<R::E>, elem: &Combo<R::E>) -> Combo<R::E> {
    apply_columns(ring, &red.proj, elem)
}

/// A W-complex reduced to its minimal model, with the witnesses kept in the
/// original index space.
pub struct WReduction {
    pub minimal: WComplex,
    /// Original indices of the surviving generators, in order.
    pub alive: Vec<usize>,
    pub reduction: Reduction<WPoly>,
}

pub fn sparse_from_w(cx: &WComplex) -> SparseMat<WPoly> {
    let mut d = SparseMat::new(cx.len());
    for (src, col) in cx.diff().iter().enumerate() {
        for (tgt, e) in col {
            d.set(*tgt, src, e.clone());
        }
    }
    d
}

/// Cancel all literal-unit pivots of a W-complex (exact arithmetic).
pub fn reduce_w(cx: &WComplex, rule: PivotRule) -> WReduction {
    let ring = WRing::exact();
    let reduction = reduce(&ring, sparse_from_w(cx), rule);
    let alive = reduction.alive_indices();
    let pos: BTreeMap<usize, usize> = alive.iter().enumerate().map(|(p, i)| (*i, p)).collect();
    let gens: Vec<WGenerator> = alive.iter().map(|&i| cx.gen(i).clone()).collect();
    let diff = alive
        .iter()
        .map(|&i| {
            reduction
                .diff
                .col(i)
                .iter()
                .map(|(tgt, e)| (pos[tgt], e.clone()))
                .collect()
        })
        .collect();
    let minimal =
        WComplex::assemble(gens, diff, cx.mode).expect("reduction preserves well-formedness");
    WReduction {
        minimal,
        alive,
        reduction,
    }
}

/// A bigraded complex reduced to its minimal model.
pub struct BigradedReduction {
    pub minimal: BigradedComplex,
    pub alive: Vec<usize>,
    pub reduction: Reduction<PolyUV>,
}

pub fn sparse_from_bigraded(cx: &BigradedComplex) -> SparseMat<PolyUV> {
    let mut d = SparseMat::new(cx.len());
    for (src, col) in cx.diff().iter().enumerate() {
        for (tgt, e) in col {
            d.set(*tgt, src, e.clone());
        }
    }
    d
}

/// Cancel all constant pivots of a bigraded complex.
pub fn reduce_bigraded(cx: &BigradedComplex, rule: PivotRule) -> BigradedReduction {
    let ring = UvRing;
    let reduction = reduce(&ring, sparse_from_bigraded(cx), rule);
    let alive = reduction.alive_indices();
    let pos: BTreeMap<usize, usize> = alive.iter().enumerate().map(|(p, i)| (*i, p)).collect();
    let gens = alive.iter().map(|&i| cx.gen(i).clone()).collect();
    let diff = alive
        .iter()
        .map(|&i| {
            reduction
                .diff
                .col(i)
                .iter()
                .map(|(tgt, e)| (pos[tgt], e.clone()))
                .collect()
        })
        .collect();
    let minimal = BigradedComplex::new(gens, diff).expect("reduction preserves well-formedness");
    BigradedReduction {
        minimal,
        alive,
        reduction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::complex::fixtures::left_trefoil;
    use crate::algebra::grading::GradingMode;

    fn wgen(label: &str, grading: i64) -> WGenerator {
        WGenerator {
            label: label.into(),
            grading,
        }
    }

    #[test]
    fn single_pair_cancels_to_nothing() {
        let cx = WComplex::new(
            vec![wgen("x", 0), wgen("y", 1)],
            vec![vec![], vec![(0, WPoly::one())]],
            GradingMode::Absolute,
        )
        .unwrap();
        let red = reduce_w(&cx, PivotRule::MinFill);
        assert!(red.minimal.is_empty());
        assert!(reduction_identities_hold(
            &WRing::exact(),
            &sparse_from_w(&cx),
            &red.reduction
        ));
    }

    #[test]
    fn trefoil_v1_reduces_to_one_generator() {
        // At V = 1: d(a) = W·b, d(c) = b. Cancelling (b, c) leaves a with
        // inclusion a + W·c: the generator of the homology tower.
        let cx = left_trefoil().specialize_v1();
        let red = reduce_w(&cx, PivotRule::MinFill);
        assert_eq!(red.minimal.len(), 1);
        assert_eq!(red.minimal.gen(0).label, "a");
        assert_eq!(red.minimal.gen(0).grading, 0);
        assert!(red.minimal.diff()[0].is_empty());

        let a = red.alive[0];
        assert_eq!(
            red.reduction.incl[a],
            Combo::from([(0, WPoly::one()), (2, WPoly::monomial(1))]),
            "tower class is a + W·c"
        );
        assert!(reduction_identities_hold(
            &WRing::exact(),
            &sparse_from_w(&cx),
            &red.reduction
        ));
    }

    #[test]
    fn pivot_rules_agree_on_survivor_count() {
        let cx = left_trefoil().specialize_v1();
        for rule in [PivotRule::MinFill, PivotRule::First, PivotRule::Reverse] {
            let red = reduce_w(&cx, rule);
            assert_eq!(red.minimal.len(), 1);
            assert!(reduction_identities_hold(
                &WRing::exact(),
                &sparse_from_w(&cx),
                &red.reduction
            ));
        }
    }

    #[test]
    fn bigraded_reduction_of_hat_complex() {
        // Tensor square of the trefoil at U = V = 0 has differential zero,
        // so nothing cancels; with honest entries the unit pairs do.
        let t = left_trefoil();
        let tt = t.tensor(&t);
        let red = reduce_bigraded(&tt.specialize_uv0(), PivotRule::MinFill);
        assert_eq!(red.minimal.len(), 9);

        let cx = WComplex::new(
            vec![wgen("p", 0), wgen("q", 1), wgen("r", 1), wgen("s", 2)],
            vec![
                vec![],
                vec![(0, WPoly::one())],
                vec![(0, WPoly::one())],
                vec![(1, WPoly::monomial(1)), (2, WPoly::monomial(1))],
            ],
            GradingMode::Absolute,
        )
        .unwrap();
        let red = reduce_w(&cx, PivotRule::MinFill);
        assert_eq!(red.minimal.len(), 2);
        assert!(reduction_identities_hold(
            &WRing::exact(),
            &sparse_from_w(&cx),
            &red.reduction
        ));
        // The surviving differential is W·(something) -> no units left.
        for (_, _, e) in red.reduction.diff.entries() {
            assert!(e.valuation().unwrap() >= 1);
        }
    }

    #[test]
    fn truncated_ring_inverts_mixed_units() {
        let ring = WRing::modulo(8);
        let unit: WPoly = [0, 1].into_iter().collect();
        assert!(ring.is_unit(&unit));
        let inv = ring.inv_unit(&unit);
        assert!(ring.mul(&unit, &inv).is_one());
        assert!(!ring.is_unit(&WPoly::monomial(1)));
        assert!(!WRing::exact().is_unit(&unit));
    }
}
