//! First homology from Heegaard diagram intersection data.
//!
//! A genus-g diagram presents H₁ of the underlying 3-manifold by the g×g
//! matrix of algebraic intersection numbers between the α- and β-curves.
//! Smith normal form over Z turns the presentation into invariant factors
//! plus a free rank, which feed two consistency checks against the Floer
//! side: the group order counts spin^c classes of a surgery, and the total
//! hat-flavor dimension is bounded below by the order, with equality
//! exactly for L-spaces.

use std::fmt;

use crate::error::{Error, Result};

/// A g×g matrix of algebraic intersection numbers; entry (i, j) pairs α_i
/// with β_j. Genus 0 is the empty matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        // Accept [[]] as a synonym for the genus-0 empty matrix.
        let entries = if entries.len() == 1 && entries[0].is_empty() {
            Vec::new()
        } else {
            entries
        };
        let g = entries.len();
        if entries.iter().any(|row| row.len() != g) {
            return Err(Error::InvalidInput(format!(
                "intersection matrix must be square; got {} rows of lengths {:?}",
                g,
                entries.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        Ok(IntersectionMatrix { entries })
    }

    /// The presentation matrix of n-surgery on a knot: a single curve pair
    /// meeting n times.
    pub fn surgery(n: i64) -> Self {
        IntersectionMatrix {
            entries: vec![vec![n]],
        }
    }

    pub fn genus(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// A finitely generated abelian group in canonical form: an ascending
/// divisibility chain of invariant factors ≥ 2, plus a free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<i64>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// The order of a finite group; `None` when the group is infinite (or
    /// the product of factors exceeds u128, which no diagram-sized input
    /// reaches).
    pub fn order(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        self.invariant_factors
            .iter()
            .try_fold(1u128, |acc, &f| acc.checked_mul(f as u128))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|k| format!("Z/{k}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

fn overflow() -> Error {
    Error::InvalidInput("intersection matrix entries exceed the supported range".into())
}

fn cadd(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or_else(overflow)
}

fn cmul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(overflow)
}

/// The diagonal of the Smith normal form: nonnegative entries in an
/// ascending divisibility chain, padded with zeros up to the rank
/// deficiency.
fn smith_diagonal(m: &IntersectionMatrix) -> Result<Vec<i128>> {
    let g = m.genus();
    let mut a: Vec<Vec<i128>> = m
        .entries
        .iter()
        .map(|row| row.iter().map(|&e| i128::from(e)).collect())
        .collect();
    let mut diag = Vec::with_capacity(g);
    let mut t = 0;
    'pivot: while t < g {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..g {
            for j in t..g {
                if a[i][j] != 0
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            break; // trailing block is zero: the rest is free rank
        };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let p = a[t][t];
        let mut clean = true;
        for i in t + 1..g {
            if a[i][t] != 0 {
                let q = a[i][t] / p;
                for j in t..g {
                    a[i][j] = cadd(a[i][j], -cmul(q, a[t][j])?)?;
                }
                clean &= a[i][t] == 0;
            }
        }
        for j in t + 1..g {
            if a[t][j] != 0 {
                let q = a[t][j] / p;
                for i in t..g {
                    a[i][j] = cadd(a[i][j], -cmul(q, a[i][t])?)?;
                }
                clean &= a[t][j] == 0;
            }
        }
        if !clean {
            continue; // a remainder smaller than |p| is the next pivot
        }
        // The pivot must divide the whole trailing block so that the
        // diagonal comes out as a divisibility chain; folding a bad row
        // into row t creates a smaller remainder on the next pass.
        for i in t + 1..g {
            if let Some(j) = (t + 1..g).find(|&j| a[i][j] % p != 0) {
                let _ = j;
                for col in t..g {
                    a[t][col] = cadd(a[t][col], a[i][col])?;
                }
                continue 'pivot;
            }
        }
        diag.push(p.abs());
        t += 1;
    }
    debug_assert!(diag.windows(2).all(|w| w[1] % w[0] == 0));
    diag.resize(g, 0);
    Ok(diag)
}

/// H₁ of the manifold presented by the intersection matrix: the cokernel
/// of the matrix in canonical form.
pub fn h1_group(m: &IntersectionMatrix) -> Result<AbelianGroup> {
    let diag = smith_diagonal(m)?;
    let free_rank = diag.iter().filter(|&&d| d == 0).count();
    let invariant_factors = diag
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| i64::try_from(d).map_err(|_| overflow()))
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianGroup {
        invariant_factors,
        free_rank,
    })
}

/// Adding a handle with a fresh curve pair meeting in a single point:
/// block-extend the matrix by a diagonal 1. Leaves h1_group unchanged.
pub fn stabilize(m: &IntersectionMatrix) -> IntersectionMatrix {
    let g = m.genus();
    let mut entries: Vec<Vec<i64>> = m
        .entries
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.push(0);
            r
        })
        .collect();
    let mut last = vec![0; g];
    last.push(1);
    entries.push(last);
    IntersectionMatrix { entries }
}

/// Outcome of comparing a surgery's hat-flavor dimensions against the
/// order of H₁ from the presentation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub group: AbelianGroup,
    pub group_order: u128,
    pub total_hat_dimension: usize,
    /// Σ dims ≥ |H₁| — a violation signals inconsistent modules.
    pub bound_holds: bool,
    /// Equality in the bound: the L-space criterion.
    pub is_l_space: bool,
}

/// Check Σ hat_dims ≥ |H₁(m)|, with equality exactly for L-spaces.
/// Requires the group to be finite (a rational homology sphere).
pub fn hf_dimension_check(
    m: &IntersectionMatrix,
    hat_dims: &[usize],
) -> Result<DimensionReport> {
    let group = h1_group(m)?;
    let group_order = group.order().ok_or_else(|| {
        Error::InvalidInput(
            "the dimension bound applies to rational homology spheres; H₁ here is infinite"
                .into(),
        )
    })?;
    let total_hat_dimension = hat_dims.iter().sum::<usize>();
    let total = total_hat_dimension as u128;
    Ok(DimensionReport {
        bound_holds: total >= group_order,
        is_l_space: total == group_order,
        group,
        group_order,
        total_hat_dimension,
    })
}
