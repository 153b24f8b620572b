//! Searching a linear (or affine) family of block-diagonal matrices for an
//! invertible member.
//!
//! Isomorphism tests for modules, A-objects and deformation elements all reduce
//! to this question: given `B + c_1 D_1 + ... + c_k D_k`, is there a choice of
//! coefficients making every block invertible? The determinant of each block is
//! a polynomial of degree at most the block size, so a finite grid decides the
//! question exactly whenever the grid is affordable: a nonzero polynomial of
//! degree `d` cannot vanish on all of `S^k` when `|S| > d`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// Limits for searches that may be exponential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of candidate evaluations (or enumerated objects).
    pub budget: u64,
    /// Random samples tried before falling back to exhaustive grids.
    pub trials: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 200_000,
            trials: 64,
            seed: 0x5eed_1234,
        }
    }
}

impl SearchConfig {
    /// Default configuration with the budget overridden by `NCDEF_BUDGET`.
    pub fn from_env() -> Self {
        let mut cfg = SearchConfig::default();
        if let Some(b) = std::env::var("NCDEF_BUDGET").ok().and_then(|v| v.parse().ok()) {
            cfg.budget = b;
        }
        cfg
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// Outcome of an invertibility search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvertibleSearch {
    /// Coefficients of an invertible member.
    Found(Vec<Scalar>),
    /// Certified: no member is invertible.
    Absent,
    /// Budget exhausted without a decision.
    Undecided,
}

/// `base + sum_j c_j directions[j]`, each term a list of square blocks.
#[derive(Clone, Debug)]
pub struct BlockFamily {
    field: Field,
    base: Vec<Matrix>,
    directions: Vec<Vec<Matrix>>,
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn grid_point(field: Field, mut index: u64, side: u64, k: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(field.element(index % side));
        index /= side;
    }
    out
}

impl BlockFamily {
    pub fn linear(field: Field, sizes: &[usize], directions: Vec<Vec<Matrix>>) -> BlockFamily {
        let base = sizes.iter().map(|&d| Matrix::zeros(field, d, d)).collect();
        BlockFamily::affine(field, base, directions)
    }

    pub fn affine(field: Field, base: Vec<Matrix>, directions: Vec<Vec<Matrix>>) -> BlockFamily {
        for b in &base {
            assert!(b.is_square(), "blocks must be square");
        }
        for d in &directions {
            assert_eq!(d.len(), base.len(), "direction block count");
            for (x, y) in d.iter().zip(&base) {
                assert!(x.rows() == y.rows() && x.cols() == y.cols(), "direction block shape");
            }
        }
        BlockFamily { field, base, directions }
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn evaluate(&self, coeffs: &[Scalar]) -> Vec<Matrix> {
        (0..self.base.len())
            .map(|b| self.evaluate_block(b, coeffs))
            .collect()
    }

    fn evaluate_block(&self, block: usize, coeffs: &[Scalar]) -> Matrix {
        let mut m = self.base[block].clone();
        for (c, dir) in coeffs.iter().zip(&self.directions) {
            if !c.is_zero() {
                m = &m + &dir[block].scale(c);
            }
        }
        m
    }

    fn invertible_at(&self, coeffs: &[Scalar]) -> bool {
        (0..self.base.len()).all(|b| self.evaluate_block(b, coeffs).is_invertible())
    }

    fn sample<R: Rng>(&self, rng: &mut R, spread: i64) -> Vec<Scalar> {
        (0..self.dimension())
            .map(|_| match self.field {
                Field::Rationals => self.field.from_i64(rng.gen_range(0..=spread)),
                Field::Prime(_) => self.field.random(rng, 0),
            })
            .collect()
    }

    /// A block has a common kernel (or cokernel) vector with every member.
    fn has_common_kernel(&self) -> bool {
        (0..self.base.len()).any(|b| {
            let d = self.base[b].rows();
            if d == 0 {
                return false;
            }
            let mut parts = vec![&self.base[b]];
            parts.extend(self.directions.iter().map(|dir| &dir[b]));
            let v = Matrix::vstack(self.field, d, &parts);
            let h = Matrix::hstack(self.field, d, &parts);
            v.rank() < d || h.rank() < d
        })
    }

    /// Searches for coefficients giving an invertible member.
    pub fn search(&self, cfg: &SearchConfig) -> InvertibleSearch {
        let k = self.dimension();
        if k == 0 {
            return if self.invertible_at(&[]) {
                InvertibleSearch::Found(vec![])
            } else {
                InvertibleSearch::Absent
            };
        }
        if self.base.iter().all(|b| b.rows() == 0) {
            return InvertibleSearch::Found(vec![self.field.zero(); k]);
        }
        if self.has_common_kernel() {
            return InvertibleSearch::Absent;
        }
        let total: usize = self.base.iter().map(|b| b.rows()).sum();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let spread = (4 * total as i64).max(16);
        for _ in 0..cfg.trials {
            let c = self.sample(&mut rng, spread);
            if self.invertible_at(&c) {
                return InvertibleSearch::Found(c);
            }
        }
        // Whole finite field.
        if let Some(q) = self.field.order() {
            if let Some(n) = checked_pow(q, k).filter(|&n| n <= cfg.budget) {
                for idx in 0..n {
                    let c = grid_point(self.field, idx, q, k);
                    if self.invertible_at(&c) {
                        return InvertibleSearch::Found(c);
                    }
                }
                return InvertibleSearch::Absent;
            }
        }
        // Grid for the product of all block determinants.
        let degree = total as u64;
        if self.field.exceeds(degree) {
            if let Some(n) = checked_pow(degree + 1, k).filter(|&n| n <= cfg.budget) {
                for idx in 0..n {
                    let c = grid_point(self.field, idx, degree + 1, k);
                    if self.invertible_at(&c) {
                        return InvertibleSearch::Found(c);
                    }
                }
                return InvertibleSearch::Absent;
            }
        }
        // Certify a vanishing block determinant on a smaller grid.
        for b in 0..self.base.len() {
            let d = self.base[b].rows() as u64;
            if !self.field.exceeds(d) {
                continue;
            }
            if let Some(n) = checked_pow(d + 1, k).filter(|&n| n <= cfg.budget) {
                let vanishes = (0..n).all(|idx| {
                    let c = grid_point(self.field, idx, d + 1, k);
                    !self.evaluate_block(b, &c).is_invertible()
                });
                if vanishes {
                    return InvertibleSearch::Absent;
                }
            }
        }
        InvertibleSearch::Undecided
    }
}
