//! Gabriel products `X * Y`: modules `C` with a short exact sequence
//! `0 -> X -> C -> Y -> 0`, `X` in the first class and `Y` in the second.

use super::membership::in_additive_closure;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, SearchConfig};
use crate::rep::{quotient, subrep, Rep};

#[derive(Clone, Debug)]
pub enum ModuleClass {
    /// Finite direct sums of the listed modules (the empty sum included).
    Additive(Vec<Rep>),
    Product(Box<ModuleClass>, Box<ModuleClass>),
}

impl ModuleClass {
    pub fn additive(members: Vec<Rep>) -> ModuleClass {
        ModuleClass::Additive(members)
    }

    pub fn product(self, other: ModuleClass) -> ModuleClass {
        ModuleClass::Product(Box::new(self), Box::new(other))
    }

    pub fn contains(&self, m: &Rep, cfg: &SearchConfig) -> Result<bool> {
        match self {
            ModuleClass::Additive(list) => in_additive_closure(m, list, cfg),
            ModuleClass::Product(x, y) => {
                for bases in all_subreps(m, cfg.budget)? {
                    let sub = subrep(m, &bases)?;
                    if !x.contains(sub.source(), cfg)? {
                        continue;
                    }
                    let q = quotient(m, &bases)?;
                    if y.contains(q.target(), cfg)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// Column bases of all subspaces of `k^n` over a finite field, in reduced echelon form.
pub fn all_subspaces(field: Field, n: usize, budget: u64) -> Result<Vec<Matrix>> {
    let q = field
        .order()
        .ok_or_else(|| Error::Unsupported("enumerating subspaces over the rationals".into()))?;
    let mut out = vec![Matrix::zeros(field, n, 0)];
    let mut pivots = Vec::new();
    fn choose(start: usize, n: usize, r: usize, pivots: &mut Vec<usize>, sets: &mut Vec<Vec<usize>>) {
        if pivots.len() == r {
            sets.push(pivots.clone());
            return;
        }
        for p in start..n {
            pivots.push(p);
            choose(p + 1, n, r, pivots, sets);
            pivots.pop();
        }
    }
    for r in 1..=n {
        let mut sets = Vec::new();
        choose(0, n, r, &mut pivots, &mut sets);
        for set in sets {
            // Free entries: row i, column j > set[i] with j not a pivot.
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| ((set[i] + 1)..n).filter(|j| !set.contains(j)).map(move |j| (i, j)))
                .collect();
            let count = (q as u128).pow(free.len() as u32);
            if out.len() as u128 + count > budget as u128 {
                return Err(Error::BudgetExceeded(format!("subspaces of a {n}-dimensional space")));
            }
            for mut idx in 0..count as u64 {
                let mut basis = Matrix::zeros(field, n, r);
                for (i, &p) in set.iter().enumerate() {
                    basis.set(p, i, field.one());
                }
                for &(i, j) in &free {
                    basis.set(j, i, field.element(idx % q));
                    idx /= q;
                }
                out.push(basis);
            }
        }
    }
    Ok(out)
}

/// Per-vertex bases of every subrepresentation of `m` (finite fields only).
pub fn all_subreps(m: &Rep, budget: u64) -> Result<Vec<Vec<Matrix>>> {
    let field = m.field();
    let spaces: Vec<Vec<Matrix>> = m
        .dims()
        .iter()
        .map(|&d| all_subspaces(field, d, budget))
        .collect::<Result<_>>()?;
    let q = m.quiver();
    let mut out = Vec::new();
    let mut current: Vec<Matrix> = Vec::new();
    let mut spent = 0u64;
    fn closed(m: &Rep, current: &[Matrix], q: &crate::algebra::Quiver) -> bool {
        // Checks the arrows whose endpoints are both assigned; the newest
        // vertex is the last one.
        let newest = current.len() - 1;
        q.arrows().iter().enumerate().all(|(a, arr)| {
            let (u, v) = (arr.source, arr.target);
            if u > newest || v > newest || (u != newest && v != newest) {
                return true;
            }
            let moved = m.map(a) * &current[v];
            Matrix::hstack(m.field(), m.dims()[u], &[&current[u], &moved]).rank() == current[u].cols()
        })
    }
    fn go(
        m: &Rep,
        q: &crate::algebra::Quiver,
        spaces: &[Vec<Matrix>],
        current: &mut Vec<Matrix>,
        out: &mut Vec<Vec<Matrix>>,
        spent: &mut u64,
        budget: u64,
    ) -> Result<()> {
        let v = current.len();
        if v == spaces.len() {
            out.push(current.clone());
            return Ok(());
        }
        for s in &spaces[v] {
            *spent += 1;
            if *spent > budget {
                return Err(Error::BudgetExceeded("enumerating subrepresentations".into()));
            }
            current.push(s.clone());
            if closed(m, current, q) {
                go(m, q, spaces, current, out, spent, budget)?;
            }
            current.pop();
        }
        Ok(())
    }
    go(m, q, &spaces, &mut current, &mut out, &mut spent, budget)?;
    Ok(out)
}

/// Agreement of `(X * Y) * Z` and `X * (Y * Z)` on sample modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityReport {
    pub checked: usize,
    pub agreements: usize,
    /// Samples lying in both products.
    pub members: usize,
    /// Indices of samples where the two orders disagree.
    pub disagreements: Vec<usize>,
}

pub fn gabriel_associativity_check(
    x: &[Rep],
    y: &[Rep],
    z: &[Rep],
    samples: &[Rep],
    cfg: &SearchConfig,
) -> Result<AssociativityReport> {
    let cx = || ModuleClass::additive(x.to_vec());
    let cy = || ModuleClass::additive(y.to_vec());
    let cz = || ModuleClass::additive(z.to_vec());
    let left = cx().product(cy()).product(cz());
    let right = cx().product(cy().product(cz()));
    let mut report = AssociativityReport {
        checked: 0,
        agreements: 0,
        members: 0,
        disagreements: Vec::new(),
    };
    for (idx, m) in samples.iter().enumerate() {
        let a = left.contains(m, cfg)?;
        let b = right.contains(m, cfg)?;
        report.checked += 1;
        if a == b {
            report.agreements += 1;
            if a {
                report.members += 1;
            }
        } else {
            report.disagreements.push(idx);
        }
    }
    Ok(report)
}
