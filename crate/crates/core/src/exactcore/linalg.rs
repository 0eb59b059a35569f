//! Exact sparse Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rat::Rat;
use crate::error::{Error, Result};

/// Column index → coefficient; zero entries are never stored.
pub type SparseRow = BTreeMap<usize, Rat>;

/// Affine solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub nvars: usize,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// A particular solution with every free variable set to zero.
    pub particular: Vec<Rat>,
    /// One basis vector per free variable.
    pub kernel: Vec<Vec<Rat>>,
}

impl Solution {
    pub fn nullity(&self) -> usize {
        self.nvars - self.rank
    }
}

fn axpy(row: &mut SparseRow, rhs: &mut Rat, factor: &Rat, prow: &SparseRow, prhs: &Rat) {
    for (&c, v) in prow {
        let e = row.entry(c).or_insert_with(Rat::zero);
        *e -= factor * v;
        if e.is_zero() {
            row.remove(&c);
        }
    }
    *rhs -= factor * prhs;
}

/// Row echelon form built one row at a time.
#[derive(Default, Debug, Clone)]
pub struct Echelon {
    /// pivot column → (row with leading 1 at the pivot, rhs)
    rows: BTreeMap<usize, (SparseRow, Rat)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces a row against the current pivots. Returns the residual row.
    fn reduce(&self, mut row: SparseRow, mut rhs: Rat) -> (SparseRow, Rat) {
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, factor)) = next else { break };
            let (prow, prhs) = &self.rows[&col];
            axpy(&mut row, &mut rhs, &factor, prow, prhs);
            cursor = col + 1;
        }
        (row, rhs)
    }

    /// Adds a row. Returns `Ok(true)` if it raised the rank, `Ok(false)` if it
    /// was dependent and consistent, and `Err(rhs)` if it reduced to `0 = rhs`
    /// with `rhs ≠ 0`.
    pub fn push(&mut self, row: SparseRow, rhs: Rat) -> std::result::Result<bool, Rat> {
        let (row, rhs) = self.reduce(row, rhs);
        match row.iter().next() {
            None if rhs.is_zero() => Ok(false),
            None => Err(rhs),
            Some((&lead, lc)) => {
                let inv = Rat::one() / lc;
                let row: SparseRow = row.iter().map(|(&c, v)| (c, v * &inv)).collect();
                self.rows.insert(lead, (row, rhs * inv));
                Ok(true)
            }
        }
    }

    fn back_substitute(&self, nvars: usize, fixed: &BTreeMap<usize, Rat>, homogeneous: bool) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); nvars];
        for (&c, v) in fixed {
            x[c] = v.clone();
        }
        for (&p, (row, rhs)) in self.rows.iter().rev() {
            let mut val = if homogeneous { Rat::zero() } else { rhs.clone() };
            for (&c, a) in row.range(p + 1..) {
                if !x[c].is_zero() {
                    val -= a * &x[c];
                }
            }
            x[p] = val;
        }
        x
    }

    pub fn solution(&self, nvars: usize) -> Solution {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let particular = self.back_substitute(nvars, &BTreeMap::new(), false);
        let kernel = (0..nvars)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let fixed = BTreeMap::from([(free, Rat::one())]);
                self.back_substitute(nvars, &fixed, true)
            })
            .collect();
        Solution { nvars, rank: pivots.len(), pivots, particular, kernel }
    }
}

/// Solves a sparse system exactly; an inconsistent row is reported by index.
pub fn solve_sparse<I>(rows: I, nvars: usize) -> Result<Solution>
where
    I: IntoIterator<Item = (SparseRow, Rat)>,
{
    let mut ech = Echelon::new();
    for (i, (row, rhs)) in rows.into_iter().enumerate() {
        debug_assert!(row.keys().all(|&c| c < nvars));
        if let Err(rhs) = ech.push(row, rhs) {
            return Err(Error::Inconsistent { row: i, rhs });
        }
    }
    Ok(ech.solution(nvars))
}

/// Rank of a dense matrix.
pub fn rank_dense(rows: &[Vec<Rat>]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        let sparse: SparseRow = r
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        let _ = ech.push(sparse, Rat::zero());
    }
    ech.rank()
}

/// Determinant of a small dense square matrix by cofactor-free elimination.
pub fn det_dense(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}
