use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::grading::GradingMode;
use crate::algebra::poly::WPoly;
use crate::error::{Error, Result};

/// A generator of a graded complex over F2[W].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WGenerator {
    pub label: String,
    pub grading: i64,
}

/// A finitely generated free complex over F2[W], with gr(W) = -2 and
/// differential of degree -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WComplex {
    gens: Vec<WGenerator>,
    /// diff[i] lists the terms of d(gens[i]) as (target index, coefficient).
    diff: Vec<Vec<(usize, WPoly)>>,
    pub mode: GradingMode,
}

impl WComplex {
    /// Build and validate: entries in range, labels unique, d^2 = 0.
    /// Duplicate (source, target) entries are combined; zeros dropped.
    pub fn new(
        gens: Vec<WGenerator>,
        diff: Vec<Vec<(usize, WPoly)>>,
        mode: GradingMode,
    ) -> Result<Self> {
        let cx = WComplex::assemble(gens, diff, mode)?;
        cx.check_d_squared()?;
        Ok(cx)
    }

    pub(crate) fn assemble(
        gens: Vec<WGenerator>,
        diff: Vec<Vec<(usize, WPoly)>>,
        mode: GradingMode,
    ) -> Result<Self> {
        if diff.len() != gens.len() {
            return Err(Error::InvalidComplex(format!(
                "{} generators but {} differential columns",
                gens.len(),
                diff.len()
            )));
        }
        let mut labels = std::collections::BTreeSet::new();
        for g in &gens {
            if !labels.insert(g.label.as_str()) {
                return Err(Error::InvalidComplex(format!(
                    "duplicate generator label {:?}",
                    g.label
                )));
            }
        }
        let n = gens.len();
        let mut cols = Vec::with_capacity(n);
        for col in diff {
            let mut merged: BTreeMap<usize, WPoly> = BTreeMap::new();
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
        Ok(WComplex {
            gens,
            diff: cols,
            mode,
        })
    }

    fn check_d_squared(&self) -> Result<()> {
        for i in 0..self.len() {
            let mut acc: BTreeMap<usize, WPoly> = BTreeMap::new();
            for (j, c) in &self.diff[i] {
                for (k, e) in &self.diff[*j] {
                    let entry = acc.entry(*k).or_default();
                    *entry = entry.add(&c.mul(e));
                }
            }
            if let Some((k, _)) = acc.iter().find(|(_, c)| !c.is_zero()) {
                return Err(Error::InvalidComplex(format!(
                    "d^2({}) has a nonzero component on {}",
                    self.gens[i].label, self.gens[*k].label
                )));
            }
        }
        Ok(())
    }

    /// Check that every term W^k from x to y satisfies
    /// gr(y) - 2k = gr(x) - 1.
    pub fn check_homogeneous(&self) -> Result<()> {
        for (i, col) in self.diff.iter().enumerate() {
            for (j, coeff) in col {
                for k in coeff.exponents() {
                    let expected = self.gens[i].grading - 1;
                    let actual = self.gens[*j].grading - 2 * k as i64;
                    if actual != expected {
                        return Err(Error::GradingInconsistent(format!(
                            "term W^{k} from {} (gr {}) to {} (gr {}) has degree {}, not -1",
                            self.gens[i].label,
                            self.gens[i].grading,
                            self.gens[*j].label,
                            self.gens[*j].grading,
                            actual - self.gens[i].grading
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[WGenerator] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &WGenerator {
        &self.gens[i]
    }

    pub fn diff(&self) -> &[Vec<(usize, WPoly)>] {
        &self.diff
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &WPoly)> + '_ {
        self.diff
            .iter()
            .enumerate()
            .flat_map(|(i, col)| col.iter().map(move |(j, c)| (i, *j, c)))
    }

    /// Difference between the largest and smallest generator grading.
    pub fn grading_span(&self) -> i64 {
        let min = self.gens.iter().map(|g| g.grading).min();
        let max = self.gens.iter().map(|g| g.grading).max();
        match (min, max) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn shifted(&self, dg: i64) -> WComplex {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.grading += dg;
        }
        out
    }

    pub fn relabeled(&self, prefix: &str) -> WComplex {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.label = format!("{prefix}{}", g.label);
        }
        out
    }

    pub fn with_mode(mut self, mode: GradingMode) -> WComplex {
        self.mode = mode;
        self
    }
}

impl fmt::Display for WComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            write!(f, "{} (gr {})", g.label, g.grading)?;
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

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(label: &str, grading: i64) -> WGenerator {
        WGenerator {
            label: label.into(),
            grading,
        }
    }

    #[test]
    fn builds_and_merges_duplicate_entries() {
        let cx = WComplex::new(
            vec![gen("x", 0), gen("y", 1)],
            vec![
                vec![],
                vec![(0, WPoly::monomial(1)), (0, WPoly::monomial(1))],
            ],
            GradingMode::Absolute,
        )
        .unwrap();
        assert!(cx.diff()[1].is_empty(), "duplicate terms must cancel");
    }

    #[test]
    fn rejects_d_squared_nonzero() {
        let err = WComplex::new(
            vec![gen("x", 0), gen("y", 1), gen("z", 2)],
            vec![
                vec![],
                vec![(0, WPoly::one())],
                vec![(1, WPoly::one())],
            ],
            GradingMode::Absolute,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidComplex(_)));
    }

    #[test]
    fn homogeneity_check() {
        // A term W^k from x to y needs gr(y) - 2k = gr(x) - 1.
        let ok = WComplex::new(
            vec![gen("x", 0), gen("y", -1)],
            vec![vec![], vec![(0, WPoly::monomial(1))]],
            GradingMode::Absolute,
        )
        .unwrap();
        assert!(ok.check_homogeneous().is_ok());

        let bad = WComplex::new(
            vec![gen("x", 0), gen("y", 2)],
            vec![vec![], vec![(0, WPoly::monomial(1))]],
            GradingMode::Absolute,
        )
        .unwrap();
        assert!(bad.check_homogeneous().is_err());
    }

    #[test]
    fn rejects_duplicate_labels() {
        let err = WComplex::new(
            vec![gen("x", 0), gen("x", 1)],
            vec![vec![], vec![]],
            GradingMode::Absolute,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidComplex(_)));
    }
}
