//! Membership in `Ex_k`: modules with a filtration of length at most `k + 1`
//! whose layers are direct sums of members of the collection.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, SearchConfig};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::rep::{direct_sum_in, hom_dim, hom_space, is_isomorphic, quotient, subrep, IsoVerdict, Rep, RepMap};

/// One step `S -> current -> next` of a filtration, with `S` an internal
/// direct sum of embedded members.
#[derive(Clone, Debug)]
pub struct Layer {
    /// Index into the collection of every summand of `S`.
    pub summands: Vec<usize>,
    /// Embeddings `Z_{summands[t]} -> current`.
    pub embeddings: Vec<RepMap>,
    /// `S -> current`.
    pub inclusion: RepMap,
    /// `current -> current / S`.
    pub projection: RepMap,
}

#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub module: Rep,
    pub layers: Vec<Layer>,
}

impl MembershipCertificate {
    /// The least `k` with the module in `Ex_k` according to this certificate.
    pub fn level(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    /// Re-checks every step against the collection.
    pub fn verify(&self, sigma: &[Rep]) -> bool {
        let mut current = self.module.clone();
        for layer in &self.layers {
            if layer.inclusion.target() != &current || layer.projection.source() != &current {
                return false;
            }
            if !layer.inclusion.is_mono() || !layer.projection.is_epi() {
                return false;
            }
            let composite = match layer.projection.after(&layer.inclusion) {
                Ok(f) => f,
                Err(_) => return false,
            };
            if !composite.is_zero() {
                return false;
            }
            if layer.inclusion.source().dim() + layer.projection.target().dim() != current.dim() {
                return false;
            }
            let mut total = 0;
            for (&i, e) in layer.summands.iter().zip(&layer.embeddings) {
                if i >= sigma.len() || e.source() != &sigma[i] || e.target() != &current || !e.is_mono() {
                    return false;
                }
                total += sigma[i].dim();
            }
            // The embedded summands must span S and be independent.
            let spans = (0..current.dims().len()).all(|v| {
                let blocks: Vec<&Matrix> = layer.embeddings.iter().map(|e| e.block(v)).collect();
                let joint = Matrix::hstack(current.field(), current.dims()[v], &blocks);
                let sub = layer.inclusion.block(v);
                joint.rank() == joint.cols() && joint.same_column_space(sub)
            });
            if !spans || total != layer.inclusion.source().dim() {
                return false;
            }
            current = layer.projection.target().clone();
        }
        current.is_zero()
    }
}

/// A submodule that is the image of a monomorphism from a member.
#[derive(Clone, Debug)]
struct Atom {
    summand: usize,
    embedding: RepMap,
}

fn subspace_key(field: Field, bases: &[Matrix]) -> Vec<Matrix> {
    bases
        .iter()
        .map(|b| {
            if b.cols() == 0 {
                return Matrix::zeros(field, 0, b.rows());
            }
            let (r, pivots) = b.transpose().rref();
            r.submatrix(0, 0, pivots.len(), r.cols())
        })
        .collect()
}

/// Representatives of the nonzero vectors of `k^d` up to scaling: the first
/// nonzero coordinate is one. Over the rationals only `d <= 1` is allowed.
pub(crate) fn projective_points(field: Field, d: usize, budget: u64) -> Result<Vec<Vec<Scalar>>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let q = match field.order() {
        Some(q) => q,
        None if d == 1 => return Ok(vec![vec![field.one()]]),
        None => {
            return Err(Error::Unsupported(format!(
                "enumerating a {d}-dimensional hom space over the rationals"
            )))
        }
    };
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let count = (q as u128).pow(free as u32);
        if out.len() as u128 + count > budget as u128 {
            return Err(Error::BudgetExceeded(format!("{d}-dimensional hom space over a field of {q} elements")));
        }
        for mut idx in 0..count as u64 {
            let mut v = vec![field.zero(); d];
            v[lead] = field.one();
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = field.element(idx % q);
                idx /= q;
            }
            out.push(v);
        }
    }
    Ok(out)
}

struct Search<'a> {
    sigma: &'a [Rep],
    cfg: &'a SearchConfig,
    spent: u64,
    rng: ChaCha8Rng,
    /// Which dimension vectors are sums of dimension vectors of members.
    monoid: HashMap<Vec<usize>, bool>,
    /// Modules already shown to lie outside `Ex_k`, bucketed by invariants.
    failures: HashMap<Vec<usize>, Vec<(Rep, usize)>>,
}

impl<'a> Search<'a> {
    fn charge(&mut self, n: u64) -> Result<()> {
        self.spent += n;
        if self.spent > self.cfg.budget {
            return Err(Error::BudgetExceeded(format!(
                "membership search exceeded {} candidate steps",
                self.cfg.budget
            )));
        }
        Ok(())
    }

    fn in_monoid(&mut self, dims: &[usize]) -> bool {
        if dims.iter().all(|&d| d == 0) {
            return true;
        }
        if let Some(&known) = self.monoid.get(dims) {
            return known;
        }
        let mut found = false;
        for z in self.sigma {
            if z.dims().iter().zip(dims).all(|(a, b)| a <= b) {
                let rest: Vec<usize> = dims.iter().zip(z.dims()).map(|(b, a)| b - a).collect();
                if self.in_monoid(&rest) {
                    found = true;
                    break;
                }
            }
        }
        self.monoid.insert(dims.to_vec(), found);
        found
    }

    /// Multiplicity vectors `m` with `sum_i m_i dim Z_i = dims`.
    fn multiplicities(&self, dims: &[usize]) -> Vec<Vec<usize>> {
        fn go(sigma: &[Rep], i: usize, rest: Vec<usize>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == sigma.len() {
                if rest.iter().all(|&d| d == 0) {
                    out.push(current.clone());
                }
                return;
            }
            let mut rest = rest;
            let mut count = 0;
            loop {
                current.push(count);
                go(sigma, i + 1, rest.clone(), current, out);
                current.pop();
                let fits = sigma[i].dims().iter().zip(&rest).all(|(a, b)| a <= b);
                if !fits || sigma[i].is_zero() {
                    break;
                }
                rest = rest.iter().zip(sigma[i].dims()).map(|(b, a)| b - a).collect();
                count += 1;
            }
        }
        let mut out = Vec::new();
        go(self.sigma, 0, dims.to_vec(), &mut Vec::new(), &mut out);
        out
    }

    /// Isomorphism invariants: dimensions, arrow ranks and Hom dimensions
    /// to and from the members.
    fn invariant(&self, m: &Rep) -> Result<Vec<usize>> {
        let mut out = m.dims().to_vec();
        out.extend(m.maps().iter().map(|a| a.rank()));
        for z in self.sigma {
            out.push(hom_dim(z, m)?);
            out.push(hom_dim(m, z)?);
        }
        Ok(out)
    }

    fn known_failure(&self, key: &[usize], m: &Rep, k: usize) -> Result<bool> {
        let Some(bucket) = self.failures.get(key) else {
            return Ok(false);
        };
        for (other, level) in bucket {
            if *level >= k && (other == m || is_isomorphic(other, m, self.cfg)?.is_isomorphic()) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Decides `m` in add(sigma) by comparing with every direct sum of members
    /// of the right dimension.
    fn additive(&mut self, m: &Rep, key: &[usize]) -> Result<Option<Layer>> {
        let field = m.field();
        let mut undecided = false;
        for mult in self.multiplicities(m.dims()) {
            self.charge(1)?;
            let summands: Vec<usize> = mult.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat(i).take(c)).collect();
            let parts: Vec<&Rep> = summands.iter().map(|&i| &self.sigma[i]).collect();
            let sum = direct_sum_in(m.base(), &parts)?;
            if self.invariant(&sum.rep)? != key {
                continue;
            }
            match is_isomorphic(&sum.rep, m, self.cfg)? {
                IsoVerdict::Isomorphic(phi) => {
                    let full: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::identity(field, d)).collect();
                    let embeddings = sum
                        .injections
                        .iter()
                        .map(|inj| phi.after(inj))
                        .collect::<Result<Vec<_>>>()?;
                    return Ok(Some(Layer {
                        summands,
                        embeddings,
                        inclusion: subrep(m, &full)?,
                        projection: quotient(m, &full)?,
                    }));
                }
                IsoVerdict::NotIsomorphic => {}
                IsoVerdict::ProbablyNot => undecided = true,
            }
        }
        if undecided {
            return Err(Error::BudgetExceeded(
                "could not decide whether a module is a direct sum of members".into(),
            ));
        }
        Ok(None)
    }

    fn atoms(&mut self, m: &Rep) -> Result<Vec<Atom>> {
        let field = m.field();
        let mut seen = HashSet::new();
        let mut atoms = Vec::new();
        for (i, z) in self.sigma.iter().enumerate() {
            if z.dims().iter().zip(m.dims()).any(|(a, b)| a > b) {
                continue;
            }
            let basis = hom_space(z, m)?;
            let points = projective_points(field, basis.len(), self.cfg.budget)?;
            self.charge(points.len() as u64)?;
            for p in points {
                let f = RepMap::combination(&basis, &p);
                if !f.is_mono() {
                    continue;
                }
                let key = subspace_key(field, f.blocks());
                if seen.insert((i, key)) {
                    atoms.push(Atom {
                        summand: i,
                        embedding: f,
                    });
                }
            }
        }
        Ok(atoms)
    }

    fn layer(&self, m: &Rep, atoms: &[Atom], chosen: &[usize]) -> Result<Layer> {
        let field = m.field();
        let bases: Vec<Matrix> = (0..m.dims().len())
            .map(|v| {
                let blocks: Vec<&Matrix> = chosen.iter().map(|&a| atoms[a].embedding.block(v)).collect();
                Matrix::hstack(field, m.dims()[v], &blocks)
            })
            .collect();
        Ok(Layer {
            summands: chosen.iter().map(|&a| atoms[a].summand).collect(),
            embeddings: chosen.iter().map(|&a| atoms[a].embedding.clone()).collect(),
            inclusion: subrep(m, &bases)?,
            projection: quotient(m, &bases)?,
        })
    }

    fn run(&mut self, m: &Rep, k: usize) -> Result<Option<Vec<Layer>>> {
        if m.is_zero() {
            return Ok(Some(Vec::new()));
        }
        if !self.in_monoid(m.dims()) {
            return Ok(None);
        }
        let key = self.invariant(m)?;
        if self.known_failure(&key, m, k)? {
            return Ok(None);
        }
        let found = if k == 0 {
            self.additive(m, &key)?.map(|layer| vec![layer])
        } else {
            self.layered(m, k)?
        };
        if found.is_none() {
            self.failures.entry(key).or_default().push((m.clone(), k));
        }
        Ok(found)
    }

    /// Depth-first search over internal direct sums of atoms. Each sum is
    /// tested after all its extensions, so maximal sums come first; every
    /// subspace is visited once.
    fn layered(&mut self, m: &Rep, k: usize) -> Result<Option<Vec<Layer>>> {
        let field = m.field();
        let nv = m.dims().len();
        let mut atoms = self.atoms(m)?;
        atoms.shuffle(&mut self.rng);
        let mut seen = HashSet::new();
        struct Frame {
            chosen: Vec<usize>,
            bases: Vec<Matrix>,
            dim: usize,
            next: usize,
        }
        let mut stack = vec![Frame {
            chosen: Vec::new(),
            bases: m.dims().iter().map(|&d| Matrix::zeros(field, d, 0)).collect(),
            dim: 0,
            next: 0,
        }];
        while let Some(top) = stack.last_mut() {
            // Look for the next atom that extends this sum.
            let mut child = None;
            while top.next < atoms.len() {
                let a = top.next;
                top.next += 1;
                let add = atoms[a].embedding.source().dim();
                if top.dim + add > m.dim() {
                    continue;
                }
                let next: Vec<Matrix> = (0..nv)
                    .map(|v| Matrix::hstack(field, m.dims()[v], &[&top.bases[v], atoms[a].embedding.block(v)]))
                    .collect();
                if next.iter().map(|b| b.rank()).sum::<usize>() != top.dim + add {
                    continue;
                }
                let remaining: Vec<usize> = m.dims().iter().zip(&next).map(|(d, b)| d - b.cols()).collect();
                if !self.in_monoid(&remaining) || !seen.insert(subspace_key(field, &next)) {
                    continue;
                }
                let mut chosen = top.chosen.clone();
                chosen.push(a);
                child = Some(Frame {
                    chosen,
                    bases: next,
                    dim: top.dim + add,
                    next: 0,
                });
                break;
            }
            self.charge(1)?;
            if let Some(frame) = child {
                stack.push(frame);
                continue;
            }
            let frame = stack.pop().expect("nonempty stack");
            if frame.chosen.is_empty() {
                break;
            }
            let layer = self.layer(m, &atoms, &frame.chosen)?;
            let rest = layer.projection.target().clone();
            if let Some(mut tail) = self.run(&rest, k - 1)? {
                tail.insert(0, layer);
                return Ok(Some(tail));
            }
        }
        Ok(None)
    }
}

/// Searches for a filtration `0 = F_0 < ... < F_{k+1} = m` whose layers are
/// direct sums of members of `sigma`. `None` is a proof of non-membership.
///
/// Over the rationals every `Hom(Z_i, -)` met during the search must have
/// dimension at most one; otherwise the search refuses.
pub fn ex_membership(m: &Rep, sigma: &[Rep], k: usize, cfg: &SearchConfig) -> Result<Option<MembershipCertificate>> {
    for z in sigma {
        if z.base() != m.base() {
            return Err(Error::BaseMismatch);
        }
    }
    let mut search = Search {
        sigma,
        cfg,
        spent: 0,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        monoid: HashMap::new(),
        failures: HashMap::new(),
    };
    Ok(search.run(m, k)?.map(|layers| MembershipCertificate {
        module: m.clone(),
        layers,
    }))
}

/// Membership in the additive closure of `sigma` (finite direct sums, including 0).
pub fn in_additive_closure(m: &Rep, sigma: &[Rep], cfg: &SearchConfig) -> Result<bool> {
    Ok(ex_membership(m, sigma, 0, cfg)?.is_some())
}
