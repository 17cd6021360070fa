//! Knot complexes built from classical data: staircases of L-space knots,
//! thin complexes of alternating knots, connected sums and mirrors; plus the
//! invariants read off a complex.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::complex::{BigradedComplex, Generator};
use crate::algebra::dvr::{homology_dvr_certified, DvrModule, Stability, TruncationSettings};
use crate::algebra::poly::PolyUV;
use crate::error::{Error, Result};
use crate::one_one::{cfk_from_diagram, OneOneDiagram};

/// Integer Laurent polynomial in t.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::term(1, 0)
    }

    pub fn term(coeff: i64, exp: i64) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(coeff, exp);
        p
    }

    /// Build from (exponent, coefficient) pairs, rejecting duplicates.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        let mut p = LaurentPoly::default();
        for &(exp, coeff) in pairs {
            if p.coeffs.contains_key(&exp) && coeff != 0 {
                return Err(Error::InvalidInput(format!(
                    "duplicate exponent {exp} in polynomial"
                )));
            }
            p.add_term(coeff, exp);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        let c = self.coeffs.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Pairs (exponent, coefficient) in increasing exponent order.
    pub fn pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeff(-e) == *c)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.pairs() {
            out.add_term(c, e);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (e1, c1) in self.pairs() {
            for (e2, c2) in other.pairs() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }

    pub fn negated(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, e) => write!(f, "t^{e}")?,
                (m, 1) => write!(f, "{m}t")?,
                (m, e) => write!(f, "{m}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// A knot described by the data the complex constructors understand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotSpec {
    /// An L-space knot with the given Alexander polynomial.
    LSpace { alexander: LaurentPoly },
    /// A thin (e.g. alternating) knot with the given Alexander polynomial
    /// and signature.
    Alternating {
        alexander: LaurentPoly,
        signature: i64,
    },
    Sum { summands: Vec<KnotSpec> },
    Mirror { of: Box<KnotSpec> },
    Reverse { of: Box<KnotSpec> },
    /// A genus-1 doubly pointed Heegaard diagram.
    OneOne { diagram: OneOneDiagram },
}

/// Build the knot complex of a specification.
pub fn build(spec: &KnotSpec) -> Result<BigradedComplex> {
    match spec {
        KnotSpec::LSpace { alexander } => staircase_from_alexander(alexander),
        KnotSpec::Alternating {
            alexander,
            signature,
        } => thin_from_alexander_signature(alexander, *signature),
        KnotSpec::Sum { summands } => {
            let mut acc = unknot_complex();
            for s in summands {
                acc = acc.tensor(&build(s)?);
            }
            Ok(acc)
        }
        KnotSpec::Mirror { of } => Ok(build(of)?.dualize()),
        // Reversal does not change the complex.
        KnotSpec::Reverse { of } => build(of),
        KnotSpec::OneOne { diagram } => cfk_from_diagram(diagram),
    }
}

pub fn unknot_complex() -> BigradedComplex {
    BigradedComplex::new(vec![Generator::new("x0", 0, 0)], vec![vec![]])
        .expect("unknot complex is valid")
}

/// The staircase complex of an L-space knot with Alexander polynomial
/// `delta`. Writing the exponents in decreasing order a_0 > ... > a_{2m}
/// (coefficients alternating +1, -1, ...), the generators are x_0, ..., x_{2m}
/// with d(x_i) = U^{b_i} x_{i-1} + V^{b_{i+1}} x_{i+1} for odd i, where
/// b_i = a_{i-1} - a_i; gradings are pinned by gr_U(x_0) = 0, gr_V(x_{2m}) = 0.
pub fn staircase_from_alexander(delta: &LaurentPoly) -> Result<BigradedComplex> {
    let bad = |msg: String| Err(Error::NotLSpaceKnotPolynomial(msg));
    if delta.is_zero() {
        return bad("polynomial is zero".into());
    }
    if !delta.is_symmetric() {
        return bad(format!("{delta} is not symmetric under t -> 1/t"));
    }
    let mut exps: Vec<i64> = delta.pairs().map(|(e, _)| e).collect();
    exps.reverse();
    if exps.len() % 2 != 1 {
        return bad(format!("{delta} has an even number of terms"));
    }
    for (i, &e) in exps.iter().enumerate() {
        let expect = if i % 2 == 0 { 1 } else { -1 };
        if delta.coeff(e) != expect {
            return bad(format!(
                "{delta}: coefficient of t^{e} is {}, want {expect} (alternating from +1 at the top)",
                delta.coeff(e)
            ));
        }
    }
    debug_assert_eq!(delta.eval_at_one(), 1);

    let n = exps.len() - 1;
    let b = |i: usize| (exps[i - 1] - exps[i]) as u32;

    let mut gr_u = vec![0i64; n + 1];
    for i in (1..n).step_by(2) {
        gr_u[i] = gr_u[i - 1] + 1 - 2 * b(i) as i64;
        gr_u[i + 1] = gr_u[i] - 1;
    }
    let mut gr_v = vec![0i64; n + 1];
    for i in (1..n).step_by(2).rev() {
        gr_v[i] = gr_v[i + 1] + 1 - 2 * b(i + 1) as i64;
        gr_v[i - 1] = gr_v[i] - 1;
    }

    let gens: Vec<Generator> = (0..=n)
        .map(|i| Generator::new(format!("x{i}"), gr_u[i], gr_v[i]))
        .collect();
    let mut diff = vec![Vec::new(); n + 1];
    for i in (1..=n).step_by(2) {
        diff[i].push((i - 1, PolyUV::monomial(b(i), 0)));
        diff[i].push((i + 1, PolyUV::monomial(0, b(i + 1))));
    }

    let cx = BigradedComplex::new(gens, diff).map_err(|e| {
        Error::Internal(format!("staircase construction produced an invalid complex: {e}"))
    })?;
    for (i, g) in cx.gens().iter().enumerate() {
        debug_assert_eq!(g.grading.alexander(), exps[i]);
    }
    Ok(cx)
}

/// The step-1 staircase of length 2|tau| + 1 on the diagonal of signature
/// -2·tau: the complex of the (2, 2·tau ± 1) torus knot family.
fn step_one_staircase(tau: i64) -> BigradedComplex {
    if tau == 0 {
        return BigradedComplex::new(vec![Generator::new("g", 0, 0)], vec![vec![]])
            .expect("point complex is valid");
    }
    let mut delta = LaurentPoly::zero();
    for i in 0..=2 * tau.abs() {
        delta.add_term(if i % 2 == 0 { 1 } else { -1 }, tau.abs() - i);
    }
    let stair = staircase_from_alexander(&delta).expect("step-1 polynomial is valid");
    if tau > 0 {
        stair
    } else {
        stair.dualize()
    }
}

/// The thin complex with Alexander polynomial `delta` and signature `sigma`:
/// everything on the diagonal gr_U = A + sigma/2, built as one step-1
/// staircase plus square pieces d(e1) = U·e2 + V·e3, d(e2) = V·e4,
/// d(e3) = U·e4. Which squares fit where is forced, top Alexander grading
/// down; inconsistent (delta, sigma) pairs are rejected.
pub fn thin_from_alexander_signature(
    delta: &LaurentPoly,
    sigma: i64,
) -> Result<BigradedComplex> {
    let bad = |msg: String| Err(Error::ThinRealization(msg));
    if sigma % 2 != 0 {
        return bad(format!("signature {sigma} is odd"));
    }
    if delta.is_zero() || !delta.is_symmetric() {
        return bad(format!("{delta} is not a symmetric nonzero polynomial"));
    }
    if delta.eval_at_one() != 1 {
        return bad(format!(
            "{delta} evaluates to {} at t = 1, want 1",
            delta.eval_at_one()
        ));
    }
    let tau = -sigma / 2;

    // On the diagonal, the coefficient of t^s has sign (-1)^(s + sigma/2).
    for (s, c) in delta.pairs() {
        let expect = if (s + sigma / 2).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        if c.signum() != expect {
            return bad(format!(
                "coefficient {c} of t^{s} in {delta} has the wrong sign for signature {sigma}"
            ));
        }
    }

    // Dimensions left after removing the staircase, processed top down.
    let lo = delta.min_exp().unwrap() - 2;
    let hi = delta.max_exp().unwrap();
    let mut remaining: BTreeMap<i64, i64> = BTreeMap::new();
    for (s, c) in delta.pairs() {
        remaining.insert(s, c.abs());
    }
    for s in -tau.abs()..=tau.abs() {
        *remaining.entry(s).or_insert(0) -= 1;
    }

    let mut cx = step_one_staircase(tau);
    let mut boxes = 0usize;
    for s in (lo..=hi).rev() {
        let q = remaining.get(&s).copied().unwrap_or(0);
        if q < 0 {
            return bad(format!(
                "{delta} with signature {sigma} leaves dimension {q} at Alexander grading {s}"
            ));
        }
        if q == 0 {
            continue;
        }
        // q squares whose top generator e2 sits at Alexander grading s.
        for _ in 0..q {
            let a = s - 1; // Alexander grading of e1
            let m = a + sigma / 2;
            let e1 = Generator::new(format!("b{boxes}e1"), m, m - 2 * a);
            let e2 = Generator::new(format!("b{boxes}e2"), m + 1, m - 2 * a - 1);
            let e3 = Generator::new(format!("b{boxes}e3"), m - 1, m - 2 * a + 1);
            let e4 = Generator::new(format!("b{boxes}e4"), m, m - 2 * a);
            let square = BigradedComplex::new(
                vec![e1, e2, e3, e4],
                vec![
                    vec![(1, PolyUV::monomial(1, 0)), (2, PolyUV::monomial(0, 1))],
                    vec![(3, PolyUV::monomial(0, 1))],
                    vec![(3, PolyUV::monomial(1, 0))],
                ]
                .into_iter()
                .chain(std::iter::once(vec![]))
                .collect(),
            )
            .map_err(|e| Error::Internal(format!("square piece invalid: {e}")))?;
            cx = cx.direct_sum(&square);
            boxes += 1;
        }
        *remaining.entry(s).or_insert(0) = 0;
        *remaining.entry(s - 1).or_insert(0) -= 2 * q;
        *remaining.entry(s - 2).or_insert(0) -= q;
    }
    if let Some((s, q)) = remaining.iter().find(|(_, q)| **q != 0) {
        return bad(format!(
            "{delta} with signature {sigma} leaves dimension {q} at Alexander grading {s}"
        ));
    }
    Ok(cx)
}

/// Dimensions of the homology with both variables set to zero, keyed by
/// (Maslov grading m = gr_U, Alexander grading s).
pub fn hfk_hat(cx: &BigradedComplex) -> Result<BTreeMap<(i64, i64), usize>> {
    let dims = cx.specialize_uv0().homology_f2()?;
    Ok(dims
        .into_iter()
        .map(|(g, d)| ((g.u, g.alexander()), d))
        .collect())
}

/// Homology of the V = 0 specialization over F2[[W]] (absolute gradings),
/// with the truncation-stability evidence.
pub fn hfk_minus(cx: &BigradedComplex) -> Result<(DvrModule, Stability)> {
    homology_dvr_certified(&cx.specialize_v0(), &TruncationSettings::default())
}

/// The largest Alexander grading supporting homology; 0 for the unknot.
pub fn genus(cx: &BigradedComplex) -> Result<i64> {
    let hat = hfk_hat(cx)?;
    Ok(hat.keys().map(|&(_, s)| s).max().unwrap_or(0))
}

/// Fibered iff the top Alexander grading supports exactly one dimension.
pub fn is_fibered(cx: &BigradedComplex) -> Result<bool> {
    let hat = hfk_hat(cx)?;
    let g = hat.keys().map(|&(_, s)| s).max().unwrap_or(0);
    Ok(hat
        .iter()
        .filter(|((_, s), _)| *s == g)
        .map(|(_, d)| d)
        .sum::<usize>()
        == 1)
}

/// The graded Euler characteristic: sum of (-1)^m dim t^s. Recovers the
/// Alexander polynomial.
pub fn euler_characteristic(cx: &BigradedComplex) -> Result<LaurentPoly> {
    let hat = hfk_hat(cx)?;
    let mut p = LaurentPoly::zero();
    for ((m, s), d) in hat {
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        p.add_term(sign * d as i64, s);
    }
    Ok(p)
}
