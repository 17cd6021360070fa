use std::collections::BTreeMap;

use crate::algebra::eliminate::{sparse_from_w, EntryRing, SparseMat, WRing};
use crate::algebra::grading::GradingMode;
use crate::algebra::poly::WPoly;
use crate::algebra::wcomplex::WComplex;
use crate::error::{Error, Result};

/// Isomorphism class of a finitely generated graded module over F2[[W]]:
/// free summands F[[W]] with generator grading d, and torsion summands
/// F[[W]]/(W^n) with generator (top) grading c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DvrModule {
    free: Vec<i64>,
    torsion: Vec<(i64, u32)>,
    mode: GradingMode,
}

impl DvrModule {
    /// Canonical form: summands sorted; in relative mode all gradings are
    /// shifted so the lowest free generator (or, failing that, the lowest
    /// torsion generator) sits at 0.
    pub fn new(mode: GradingMode, mut free: Vec<i64>, torsion: Vec<(i64, u32)>) -> Self {
        free.sort_unstable();
        let mut torsion: Vec<(i64, u32)> = torsion.into_iter().filter(|&(_, n)| n > 0).collect();
        torsion.sort_unstable();
        if mode == GradingMode::Relative {
            let anchor = free
                .first()
                .copied()
                .or_else(|| torsion.iter().map(|&(c, _)| c).min());
            if let Some(a) = anchor {
                for d in &mut free {
                    *d -= a;
                }
                for (c, _) in &mut torsion {
                    *c -= a;
                }
            }
        }
        DvrModule {
            free,
            torsion,
            mode,
        }
    }

    pub fn absolute(free: Vec<i64>, torsion: Vec<(i64, u32)>) -> Self {
        DvrModule::new(GradingMode::Absolute, free, torsion)
    }

    pub fn relative(free: Vec<i64>, torsion: Vec<(i64, u32)>) -> Self {
        DvrModule::new(GradingMode::Relative, free, torsion)
    }

    pub fn mode(&self) -> GradingMode {
        self.mode
    }

    pub fn free(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion(&self) -> &[(i64, u32)] {
        &self.torsion
    }

    pub fn to_relative(&self) -> DvrModule {
        DvrModule::new(
            GradingMode::Relative,
            self.free.clone(),
            self.torsion.clone(),
        )
    }

    /// Compare up to isomorphism. Comparing across grading modes is an
    /// error, never a silent coercion.
    pub fn isomorphic(&self, other: &DvrModule) -> Result<bool> {
        if self.mode != other.mode {
            return Err(Error::GradingModeMismatch);
        }
        Ok(self.free == other.free && self.torsion == other.torsion)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Dimension of the homology with W set to zero in the coefficients:
    /// one per free summand, two per torsion summand.
    pub fn hat_dimension(&self) -> usize {
        self.free.len() + 2 * self.torsion.len()
    }

    /// The grading of the unique free summand.
    pub fn d_invariant(&self) -> Result<i64> {
        if self.free.len() != 1 {
            return Err(Error::FreeSummandCount(self.free.len()));
        }
        Ok(self.free[0])
    }
}

impl std::fmt::Display for DvrModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.free.iter().map(|d| format!("F[W]({d})")).collect();
        parts.extend(
            self.torsion
                .iter()
                .map(|(c, n)| format!("F[W]/W^{n}({c})")),
        );
        if parts.is_empty() {
            write!(f, "0 ({})", self.mode)
        } else {
            write!(f, "{} ({})", parts.join(" + "), self.mode)
        }
    }
}

/// The same module presented through the quotient rather than the kernel:
/// each free summand becomes a tower with bottom grading d + 2, each torsion
/// summand survives with top grading c + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlusView {
    pub tower_bottoms: Vec<i64>,
    pub torsion: Vec<(i64, u32)>,
    pub mode: GradingMode,
}

/// The W = 0 slice: total dimension, with gradings when absolute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatView {
    pub dim: usize,
    pub gradings: Option<Vec<i64>>,
    pub mode: GradingMode,
}

/// Read the quotient and W = 0 presentations off a module. Each torsion
/// summand F[W]/W^n with top grading c contributes hat classes at c and at
/// c - 2(n - 1) - 1; a free summand at d contributes one class at d.
pub fn plus_and_hat_views(m: &DvrModule) -> (PlusView, HatView) {
    let plus = PlusView {
        tower_bottoms: m.free().iter().map(|d| d + 2).collect(),
        torsion: m.torsion().iter().map(|&(c, n)| (c + 1, n)).collect(),
        mode: m.mode(),
    };
    let gradings = if m.mode() == GradingMode::Absolute {
        let mut g: Vec<i64> = m.free().to_vec();
        for &(c, n) in m.torsion() {
            g.push(c);
            g.push(c - 2 * (n as i64 - 1) - 1);
        }
        g.sort_unstable();
        Some(g)
    } else {
        None
    };
    let hat = HatView {
        dim: m.hat_dimension(),
        gradings,
        mode: m.mode(),
    };
    (plus, hat)
}

fn min_valuation_pivot(d: &SparseMat<WPoly>) -> Option<(usize, usize, u32)> {
    let mut best: Option<((u32, usize, (usize, usize)), (usize, usize))> = None;
    for (tgt, src, e) in d.entries() {
        let k = e.valuation().expect("stored entries are nonzero");
        let weight = d.row_sources(tgt).len() + d.col(src).len();
        let key = (k, weight, (src, tgt));
        if best.as_ref().map_or(true, |(bk, _)| key < *bk) {
            best = Some((key, (tgt, src)));
        }
    }
    best.map(|((k, _, _), (tgt, src))| (tgt, src, k))
}

/// Homology of a W-complex as a module over F2[[W]], computed modulo
/// W^order. Pivots are processed from the smallest W-valuation up; a pivot
/// of valuation k isolates one torsion summand F[W]/(W^k) (nothing, when k
/// is 0 and the pivot is a unit). Residues that the truncation can no longer
/// see are checked to be below the working precision before being dropped;
/// anything larger reports instability instead of corrupting the answer.
pub fn homology_dvr(cx: &WComplex, order: u32) -> Result<DvrModule> {
    if order == 0 {
        return Err(Error::InvalidInput("truncation order must be positive".into()));
    }
    let ring = WRing::modulo(order);
    let mut d: SparseMat<WPoly> = SparseMat::new(cx.len());
    for (tgt, src, e) in sparse_from_w(cx).entries() {
        let t = e.truncated(order);
        if !t.is_zero() {
            d.set(tgt, src, t);
        }
    }
    let mut alive = vec![true; cx.len()];
    let mut torsion: Vec<(i64, u32)> = Vec::new();

    while let Some((x, y, k)) = min_valuation_pivot(&d) {
        let c = d.get(x, y).unwrap().clone();
        let c_unit_inv = c.shifted_down(k).inv_unit_trunc(order);

        let row_x: Vec<(usize, WPoly)> = d
            .row_sources(x)
            .iter()
            .filter(|&&z| z != y)
            .map(|&z| (z, d.get(x, z).unwrap().clone()))
            .collect();
        let col_y: Vec<(usize, WPoly)> = d
            .col(y)
            .iter()
            .map(|(&w, f)| (w, f.clone()))
            .collect();

        // Clear the pivot row with column operations (source basis changes
        // z -> z + coef·y). Every entry in play has valuation >= k, so the
        // quotients below are exact.
        for (z, e) in &row_x {
            let coef = ring.mul(&e.shifted_down(k), &c_unit_inv);
            for (w, f) in &col_y {
                d.add_to(&ring, *w, *z, &ring.mul(&coef, f));
            }
            debug_assert!(d.get(x, *z).is_none(), "row sweep must clear the pivot row");
        }

        // Clear the pivot column with the target basis change
        // x' = x + sum over w of (f_w / c)·w. Columns other than y are
        // unaffected since the pivot row is now a single entry; what remains
        // of d(x') is below precision by d^2 = 0, which we verify before
        // dropping both generators.
        let mut junk: BTreeMap<usize, WPoly> = d.col(x).clone();
        for (w, f) in &col_y {
            if *w == x {
                continue;
            }
            let lambda = ring.mul(&f.shifted_down(k), &c_unit_inv);
            for (tgt, e) in d.col(*w) {
                let add = ring.mul(&lambda, e);
                let cur = match junk.get(tgt) {
                    Some(v) => v.add(&add),
                    None => add,
                };
                if cur.is_zero() {
                    junk.remove(tgt);
                } else {
                    junk.insert(*tgt, cur);
                }
            }
        }
        let floor = order - k;
        for e in junk.values() {
            if e.valuation().unwrap_or(order) < floor {
                return Err(Error::TruncationUnstable(format!(
                    "residue of valuation {} below floor {floor} at order {order}",
                    e.valuation().unwrap()
                )));
            }
        }
        // Entries into the cancelled source are cleared exactly by the
        // source basis change z -> z + (d(y,z)/c)·y; its effect on the
        // surviving columns cancels against the row sweep above, so the
        // entries are simply dropped. The minimal-valuation pivot makes
        // the division exact.
        debug_assert!(d
            .row_sources(y)
            .iter()
            .all(|&z| z == x || d.get(y, z).unwrap().valuation().unwrap_or(order) >= k));

        if k > 0 {
            torsion.push((cx.gen(x).grading, k));
        }
        d.clear_generator(x);
        d.clear_generator(y);
        alive[x] = false;
        alive[y] = false;
    }

    let free = alive
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.then(|| cx.gen(i).grading))
        .collect();
    Ok(DvrModule::new(cx.mode, free, torsion))
}

/// Settings for certified homology: `order` overrides the span-derived
/// default; doubling stops at `max_order`.
#[derive(Debug, Clone, Copy)]
pub struct TruncationSettings {
    pub order: Option<u32>,
    pub max_order: u32,
}

impl Default for TruncationSettings {
    fn default() -> Self {
        TruncationSettings {
            order: None,
            max_order: 1 << 14,
        }
    }
}

/// Evidence that the reported module is stable under refining the truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stability {
    pub order_used: u32,
    pub recheck_order: u32,
    pub doublings: u32,
}

/// Compute modulo W^N and again modulo W^(N+4); accept on agreement,
/// otherwise double N up to the cap.
pub fn homology_dvr_certified(
    cx: &WComplex,
    settings: &TruncationSettings,
) -> Result<(DvrModule, Stability)> {
    let default_order = (2 * cx.grading_span() + 8).clamp(4, settings.max_order as i64) as u32;
    let mut order = settings.order.unwrap_or(default_order).max(2);
    let mut doublings = 0;
    loop {
        let outcome = match (homology_dvr(cx, order), homology_dvr(cx, order + 4)) {
            (Ok(a), Ok(b)) if a == b => Some((a, b)),
            _ => None,
        };
        if let Some((a, _)) = outcome {
            return Ok((
                a,
                Stability {
                    order_used: order,
                    recheck_order: order + 4,
                    doublings,
                },
            ));
        }
        if order >= settings.max_order {
            return Err(Error::TruncationUnstable(format!(
                "no agreement between orders {order} and {} at the cap",
                order + 4
            )));
        }
        order = (order.saturating_mul(2)).min(settings.max_order);
        doublings += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::complex::fixtures::left_trefoil;
    use crate::algebra::wcomplex::WGenerator;

    fn wgen(label: &str, grading: i64) -> WGenerator {
        WGenerator {
            label: label.into(),
            grading,
        }
    }

    fn certified(cx: &WComplex) -> DvrModule {
        homology_dvr_certified(cx, &TruncationSettings::default())
            .unwrap()
            .0
    }

    #[test]
    fn homology_of_a_point() {
        let cx = WComplex::new(vec![wgen("s", 0)], vec![vec![]], GradingMode::Absolute).unwrap();
        let m = certified(&cx);
        assert_eq!(m, DvrModule::absolute(vec![0], vec![]));
        assert_eq!(m.d_invariant().unwrap(), 0);
        assert!(m.is_torsion_free());
    }

    #[test]
    fn one_torsion_pair() {
        // d(y) = W^2·x: homology F[W]/W^2 on [x].
        let cx = WComplex::new(
            vec![wgen("x", 0), wgen("y", -3)],
            vec![vec![], vec![(0, WPoly::monomial(2))]],
            GradingMode::Absolute,
        )
        .unwrap();
        assert_eq!(certified(&cx), DvrModule::absolute(vec![], vec![(0, 2)]));
    }

    #[test]
    fn unit_pivot_with_arrows_into_the_cancelled_source() {
        // A unit arrow q -> r whose source q also receives W-arrows,
        // compensated in d^2 = 0 through parallel columns. The reduction
        // must discard the entries into q (they are cleared exactly by a
        // source basis change) rather than mistake them for truncation
        // residue. The matrix is an acyclic square plus a W-thickened
        // square glued along one edge; total homology is one free tower.
        let gens = vec![
            wgen("p", 0),
            wgen("q", 1),
            wgen("p'", 0),
            wgen("a", -1),
            wgen("m", 0),
            wgen("c", 1),
            wgen("a'", -1),
            wgen("r", 0),
            wgen("c'", 1),
        ];
        let w = WPoly::monomial(1);
        let one = WPoly::one();
        let diff = vec![
            vec![(1, w.clone()), (6, one.clone())],
            vec![(7, one.clone())],
            vec![(1, w.clone()), (3, one.clone()), (5, w.clone()), (8, w.clone())],
            vec![(4, w.clone())],
            vec![],
            vec![(4, one.clone())],
            vec![(7, w.clone())],
            vec![],
            vec![(7, one.clone())],
        ];
        let cx = WComplex::new(gens, diff, GradingMode::Relative).unwrap();
        cx.check_homogeneous().unwrap();
        assert_eq!(certified(&cx), DvrModule::relative(vec![0], vec![]));
    }

    #[test]
    fn trefoil_large_surgery_shape() {
        // Two generators both mapping by W onto a third: after one column
        // sweep a free class and one F[W]/W remain. This is the s = 0 piece
        // of the left trefoil under large surgery.
        let cx = WComplex::new(
            vec![wgen("Va", 0), wgen("b", 1), wgen("Uc", 0)],
            vec![
                vec![(1, WPoly::monomial(1))],
                vec![],
                vec![(1, WPoly::monomial(1))],
            ],
            GradingMode::Relative,
        )
        .unwrap();
        let m = certified(&cx);
        assert_eq!(m, DvrModule::relative(vec![0], vec![(1, 1)]));
        assert_eq!(m.hat_dimension(), 3);
    }

    #[test]
    fn unit_with_higher_terms_cancels_cleanly() {
        // d(y) = (1 + W)·x is invertible at any truncation: acyclic.
        let cx = WComplex::new(
            vec![wgen("x", 0), wgen("y", 1)],
            vec![vec![], vec![(0, WPoly::one().add(&WPoly::monomial(1)))]],
            GradingMode::Absolute,
        )
        .unwrap();
        assert_eq!(certified(&cx), DvrModule::absolute(vec![], vec![]));
    }

    #[test]
    fn valuation_pivot_with_unit_tail() {
        // d(y) = (W + W^3)·x = W·(1 + W^2)·x: torsion exponent exactly 1.
        let cx = WComplex::new(
            vec![wgen("x", 0), wgen("y", -1)],
            vec![
                vec![],
                vec![(0, [1u32, 3].into_iter().collect::<WPoly>())],
            ],
            GradingMode::Absolute,
        )
        .unwrap();
        assert_eq!(certified(&cx), DvrModule::absolute(vec![], vec![(0, 1)]));
    }

    #[test]
    fn square_of_pairs_with_cross_terms() {
        // d(c) = W·a, d(d) = W·b + W^2·a: column reduction must not disturb
        // the smaller pivot: torsion W at [a] and at [b].
        let cx = WComplex::new(
            vec![wgen("a", 0), wgen("b", 2), wgen("c", 3), wgen("d", 3)],
            vec![
                vec![],
                vec![],
                vec![(0, WPoly::monomial(1))],
                vec![(1, WPoly::monomial(1)), (0, WPoly::monomial(2))],
            ],
            GradingMode::Absolute,
        )
        .unwrap();
        let m = certified(&cx);
        assert_eq!(m, DvrModule::absolute(vec![], vec![(0, 1), (2, 1)]));
    }

    #[test]
    fn left_trefoil_minus_homology_from_v0() {
        let v0 = left_trefoil().specialize_v0();
        let m = certified(&v0);
        assert_eq!(m, DvrModule::absolute(vec![2], vec![(1, 1)]));
    }

    #[test]
    fn relative_normalization_and_mode_guard() {
        let a = DvrModule::relative(vec![7], vec![(8, 1)]);
        let b = DvrModule::relative(vec![0], vec![(1, 1)]);
        assert!(a.isomorphic(&b).unwrap());
        let abs = DvrModule::absolute(vec![0], vec![(1, 1)]);
        assert!(matches!(
            a.isomorphic(&abs),
            Err(Error::GradingModeMismatch)
        ));
        assert_eq!(a.to_relative(), b);
        let t = DvrModule::relative(vec![], vec![(5, 2), (3, 1)]);
        assert_eq!(t.torsion(), &[(0, 1), (2, 2)]);
    }

    #[test]
    fn d_invariant_requires_unique_tower() {
        let none = DvrModule::absolute(vec![], vec![]);
        assert!(matches!(
            none.d_invariant(),
            Err(Error::FreeSummandCount(0))
        ));
        let two = DvrModule::absolute(vec![0, 2], vec![]);
        assert!(matches!(
            two.d_invariant(),
            Err(Error::FreeSummandCount(2))
        ));
    }

    #[test]
    fn views_of_the_three_sphere_and_torsion() {
        let s3 = DvrModule::absolute(vec![0], vec![]);
        let (plus, hat) = plus_and_hat_views(&s3);
        assert_eq!(plus.tower_bottoms, vec![2]);
        assert!(plus.torsion.is_empty());
        assert_eq!(hat.dim, 1);
        assert_eq!(hat.gradings, Some(vec![0]));

        let m = DvrModule::absolute(vec![0], vec![(1, 1)]);
        let (plus, hat) = plus_and_hat_views(&m);
        assert_eq!(plus.tower_bottoms, vec![2]);
        assert_eq!(plus.torsion, vec![(2, 1)]);
        assert_eq!(hat.dim, 3);
        assert_eq!(hat.gradings, Some(vec![0, 0, 1]));
    }

    #[test]
    fn explicit_order_is_respected() {
        let cx = WComplex::new(
            vec![wgen("x", 0), wgen("y", -1)],
            vec![vec![], vec![(0, WPoly::monomial(1))]],
            GradingMode::Absolute,
        )
        .unwrap();
        let settings = TruncationSettings {
            order: Some(64),
            max_order: 1 << 14,
        };
        let (m, st) = homology_dvr_certified(&cx, &settings).unwrap();
        assert_eq!(st.order_used, 64);
        assert_eq!(st.recheck_order, 68);
        assert_eq!(m, DvrModule::absolute(vec![], vec![(0, 1)]));
    }
}
