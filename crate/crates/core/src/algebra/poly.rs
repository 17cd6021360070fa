use std::collections::BTreeSet;
use std::fmt;

/// A monomial `U^u V^v`. Over F2 the coefficient is implicitly 1, so a
/// polynomial is just a set of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub u: u32,
    pub v: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { u: 0, v: 0 };

    pub fn new(u: u32, v: u32) -> Self {
        Monomial { u, v }
    }

    pub fn is_one(&self) -> bool {
        self.u == 0 && self.v == 0
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial {
            u: self.u + other.u,
            v: self.v + other.v,
        }
    }

    /// Exact division, when `other` divides `self`.
    pub fn divided_by(self, other: Monomial) -> Option<Monomial> {
        if self.u >= other.u && self.v >= other.v {
            Some(Monomial {
                u: self.u - other.u,
                v: self.v - other.v,
            })
        } else {
            None
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        match self.u {
            0 => {}
            1 => write!(f, "U")?,
            u => write!(f, "U^{u}")?,
        }
        match self.v {
            0 => {}
            1 => write!(f, "V")?,
            v => write!(f, "V^{v}")?,
        }
        Ok(())
    }
}

/// A polynomial in F2[U,V], stored as the set of monomials with coefficient 1.
/// Addition is symmetric difference: adding a monomial it already contains
/// cancels it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PolyUV(BTreeSet<Monomial>);

impl PolyUV {
    pub fn zero() -> Self {
        PolyUV(BTreeSet::new())
    }

    pub fn one() -> Self {
        PolyUV::from(Monomial::ONE)
    }

    pub fn monomial(u: u32, v: u32) -> Self {
        PolyUV::from(Monomial::new(u, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.contains(&Monomial::ONE)
    }

    pub fn term_count(&self) -> usize {
        self.0.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.0.iter().copied()
    }

    /// The unique term, if the polynomial is a single monomial.
    pub fn single_term(&self) -> Option<Monomial> {
        if self.0.len() == 1 {
            self.0.iter().next().copied()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add(&self, other: &PolyUV) -> PolyUV {
        let mut out = self.clone();
        for m in other.terms() {
            out.add_term(m);
        }
        out
    }

    pub fn mul(&self, other: &PolyUV) -> PolyUV {
        let mut out = PolyUV::zero();
        for a in self.terms() {
            for b in other.terms() {
                out.add_term(a.times(b));
            }
        }
        out
    }

    pub fn times_monomial(&self, m: Monomial) -> PolyUV {
        PolyUV(self.0.iter().map(|t| t.times(m)).collect())
    }
}

impl From<Monomial> for PolyUV {
    fn from(m: Monomial) -> Self {
        let mut s = BTreeSet::new();
        s.insert(m);
        PolyUV(s)
    }
}

impl FromIterator<Monomial> for PolyUV {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut p = PolyUV::zero();
        for m in iter {
            p.add_term(m);
        }
        p
    }
}

impl fmt::Display for PolyUV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// A polynomial in F2[W], stored as the set of exponents with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WPoly(BTreeSet<u32>);

impl WPoly {
    pub fn zero() -> Self {
        WPoly(BTreeSet::new())
    }

    pub fn one() -> Self {
        WPoly::monomial(0)
    }

    pub fn monomial(k: u32) -> Self {
        let mut s = BTreeSet::new();
        s.insert(k);
        WPoly(s)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.contains(&0)
    }

    pub fn has_constant_term(&self) -> bool {
        self.0.contains(&0)
    }

    pub fn term_count(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// The unique exponent, if the polynomial is a single power of W.
    pub fn single_exponent(&self) -> Option<u32> {
        if self.0.len() == 1 {
            self.0.iter().next().copied()
        } else {
            None
        }
    }

    /// The W-adic valuation: the smallest exponent present.
    pub fn valuation(&self) -> Option<u32> {
        self.0.iter().next().copied()
    }

    pub fn add_term(&mut self, k: u32) {
        if !self.0.remove(&k) {
            self.0.insert(k);
        }
    }

    pub fn add(&self, other: &WPoly) -> WPoly {
        let mut out = self.clone();
        for k in other.exponents() {
            out.add_term(k);
        }
        out
    }

    pub fn mul(&self, other: &WPoly) -> WPoly {
        let mut out = WPoly::zero();
        for a in self.exponents() {
            for b in other.exponents() {
                out.add_term(a + b);
            }
        }
        out
    }

    pub fn times_power(&self, k: u32) -> WPoly {
        WPoly(self.0.iter().map(|e| e + k).collect())
    }

    /// Drop all terms of degree >= n.
    pub fn truncated(&self, n: u32) -> WPoly {
        WPoly(self.0.iter().copied().filter(|&e| e < n).collect())
    }

    pub fn mul_trunc(&self, other: &WPoly, n: u32) -> WPoly {
        let mut out = WPoly::zero();
        for a in self.exponents() {
            for b in other.exponents() {
                if a + b < n {
                    out.add_term(a + b);
                }
            }
        }
        out
    }

    /// Exact division by W^k; requires valuation >= k.
    pub fn shifted_down(&self, k: u32) -> WPoly {
        debug_assert!(self.0.iter().all(|&e| e >= k));
        WPoly(self.0.iter().map(|e| e - k).collect())
    }

    /// The inverse of a unit modulo W^n, by the truncated geometric series:
    /// (1 + p)^-1 = 1 + p + p^2 + ... where p has positive valuation.
    pub fn inv_unit_trunc(&self, n: u32) -> WPoly {
        debug_assert!(self.has_constant_term());
        let mut p = self.truncated(n);
        p.add_term(0); // p = self - 1
        if p.is_zero() {
            return WPoly::one();
        }
        // p has positive valuation, so powers of p gain valuation and the
        // series terminates within n rounds.
        let mut inv = WPoly::one();
        let mut power = WPoly::one();
        loop {
            power = power.mul_trunc(&p, n);
            if power.is_zero() {
                return inv;
            }
            inv = inv.add(&power);
        }
    }
}

impl FromIterator<u32> for WPoly {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut p = WPoly::zero();
        for k in iter {
            p.add_term(k);
        }
        p
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "1")?,
                1 => write!(f, "W")?,
                k => write!(f, "W^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_two_addition_cancels() {
        let p = PolyUV::monomial(1, 0);
        assert!(p.add(&p).is_zero());
        let q = p.add(&PolyUV::monomial(0, 1));
        assert_eq!(q.term_count(), 2);
        assert_eq!(q.add(&p), PolyUV::monomial(0, 1));
    }

    #[test]
    fn mul_collects_cross_terms() {
        // (U + V)^2 = U^2 + V^2 over F2.
        let p = PolyUV::monomial(1, 0).add(&PolyUV::monomial(0, 1));
        let sq = p.mul(&p);
        assert_eq!(
            sq,
            PolyUV::monomial(2, 0).add(&PolyUV::monomial(0, 2))
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(PolyUV::one().to_string(), "1");
        assert_eq!(PolyUV::monomial(2, 1).to_string(), "U^2V");
        assert_eq!(PolyUV::zero().to_string(), "0");
        assert_eq!(WPoly::monomial(3).to_string(), "W^3");
        let p = WPoly::one().add(&WPoly::monomial(1));
        assert_eq!(p.to_string(), "1 + W");
    }

    #[test]
    fn wpoly_valuation_and_shift() {
        let p: WPoly = [2, 5].into_iter().collect();
        assert_eq!(p.valuation(), Some(2));
        assert_eq!(p.shifted_down(2), [0, 3].into_iter().collect());
    }

    #[test]
    fn geometric_series_inverse() {
        let n = 12;
        for unit in [
            WPoly::one(),
            WPoly::one().add(&WPoly::monomial(1)),
            WPoly::one().add(&WPoly::monomial(2)).add(&WPoly::monomial(3)),
            [0, 1, 4, 7].into_iter().collect::<WPoly>(),
        ] {
            let inv = unit.inv_unit_trunc(n);
            assert_eq!(unit.mul_trunc(&inv, n), WPoly::one(), "unit {unit}");
        }
    }

    #[test]
    fn truncation_drops_high_terms() {
        let p: WPoly = [0, 3, 9].into_iter().collect();
        assert_eq!(p.truncated(4), [0, 3].into_iter().collect());
        assert_eq!(p.mul_trunc(&WPoly::monomial(2), 4), WPoly::monomial(2));
    }
}
