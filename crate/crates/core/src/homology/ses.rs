//! Short exact sequences and the constructions on them: pullback, pushout,
//! direct sum and Baer sum.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{
    direct_sum, factor_through_epi, factor_through_mono, map_between_sums, HomSystem, Rep, RepMap,
};

/// `0 -> sub --i--> middle --p--> quotient -> 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortExact {
    i: RepMap,
    p: RepMap,
}

impl ShortExact {
    pub fn new(i: RepMap, p: RepMap) -> Result<ShortExact> {
        if i.target() != p.source() {
            return Err(Error::NotExact("maps are not composable".into()));
        }
        if !i.is_mono() {
            return Err(Error::NotExact("first map is not injective".into()));
        }
        if !p.is_epi() {
            return Err(Error::NotExact("second map is not surjective".into()));
        }
        if !p.after(&i)?.is_zero() {
            return Err(Error::NotExact("composite is not zero".into()));
        }
        let additive = (0..i.blocks().len())
            .all(|v| i.source().dims()[v] + p.target().dims()[v] == i.target().dims()[v]);
        if !additive {
            return Err(Error::NotExact("not exact in the middle".into()));
        }
        Ok(ShortExact { i, p })
    }

    /// `0 -> n -> n + m -> m -> 0`.
    pub fn split(m: &Rep, n: &Rep) -> Result<ShortExact> {
        let sum = direct_sum(&[n, m])?;
        ShortExact::new(sum.injections[0].clone(), sum.projections[1].clone())
    }

    pub fn inclusion(&self) -> &RepMap {
        &self.i
    }

    pub fn projection(&self) -> &RepMap {
        &self.p
    }

    pub fn sub(&self) -> &Rep {
        self.i.source()
    }

    pub fn middle(&self) -> &Rep {
        self.i.target()
    }

    pub fn quotient(&self) -> &Rep {
        self.p.target()
    }

    /// Pullback along `f: m' -> quotient`.
    pub fn pullback(&self, f: &RepMap) -> Result<ShortExact> {
        if f.target() != self.quotient() {
            return Err(Error::InvalidRepMap("pullback map has the wrong target".into()));
        }
        let sum = direct_sum(&[self.middle(), f.source()])?;
        let quot = direct_sum(&[self.quotient()])?;
        let h = map_between_sums(&sum, &quot, &[vec![self.p.clone(), f.scale(&-f.field().one())]])?;
        let h = quot.projections[0].after(&h)?;
        let k = h.kernel();
        let into_sum = sum.injections[0].after(&self.i)?;
        let i = factor_through_mono(&k, &into_sum)?;
        let p = sum.projections[1].after(&k)?;
        ShortExact::new(i, p)
    }

    /// Pushout along `g: sub -> n'`.
    pub fn pushout(&self, g: &RepMap) -> Result<ShortExact> {
        if g.source() != self.sub() {
            return Err(Error::InvalidRepMap("pushout map has the wrong source".into()));
        }
        let sum = direct_sum(&[g.target(), self.middle()])?;
        let sub = direct_sum(&[self.sub()])?;
        let h = map_between_sums(&sub, &sum, &[vec![g.scale(&-g.field().one())], vec![self.i.clone()]])?;
        let h = h.after(&sub.injections[0])?;
        let q = h.cokernel();
        let i = q.after(&sum.injections[0])?;
        let to_quotient = self.p.after(&sum.projections[1])?;
        let p = factor_through_epi(&q, &to_quotient)?;
        ShortExact::new(i, p)
    }

    /// Componentwise direct sum of two sequences.
    pub fn direct_sum(&self, other: &ShortExact) -> Result<ShortExact> {
        let subs = direct_sum(&[self.sub(), other.sub()])?;
        let mids = direct_sum(&[self.middle(), other.middle()])?;
        let quots = direct_sum(&[self.quotient(), other.quotient()])?;
        let zero = |a: &Rep, b: &Rep| RepMap::zero(a, b);
        let i = map_between_sums(
            &subs,
            &mids,
            &[
                vec![self.i.clone(), zero(other.sub(), self.middle())],
                vec![zero(self.sub(), other.middle()), other.i.clone()],
            ],
        )?;
        let p = map_between_sums(
            &mids,
            &quots,
            &[
                vec![self.p.clone(), zero(other.middle(), self.quotient())],
                vec![zero(self.middle(), other.quotient()), other.p.clone()],
            ],
        )?;
        ShortExact::new(i, p)
    }

    /// Baer sum; both sequences must have the same end terms.
    pub fn baer_sum(&self, other: &ShortExact) -> Result<ShortExact> {
        if self.sub() != other.sub() || self.quotient() != other.quotient() {
            return Err(Error::NotExact("Baer sum needs equal end terms".into()));
        }
        let both = self.direct_sum(other)?;
        let m = self.quotient();
        let n = self.sub();
        let ms = direct_sum(&[m, m])?;
        let ns = direct_sum(&[n, n])?;
        let diagonal = ms.injections[0].add(&ms.injections[1])?;
        let codiagonal = ns.projections[0].add(&ns.projections[1])?;
        // `both` lives on the sums built inside `direct_sum`; they coincide with
        // `ms` and `ns` because the construction is deterministic.
        both.pullback(&diagonal)?.pushout(&codiagonal)
    }

    /// Whether there is a middle map `E -> E'` that is the identity on both ends.
    pub fn equivalent(&self, other: &ShortExact) -> bool {
        if self.sub() != other.sub() || self.quotient() != other.quotient() {
            return false;
        }
        let sys = HomSystem::new(self.middle(), other.middle());
        let field = self.sub().field();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for v in 0..self.sub().dims().len() {
            let id_e2 = Matrix::identity(field, other.middle().dims()[v]);
            rows.push(sys.sandwich(v, &id_e2, self.i.block(v)));
            rhs.extend(other.i.block(v).entries().iter().cloned());
            let id_e1 = Matrix::identity(field, self.middle().dims()[v]);
            rows.push(sys.sandwich(v, other.p.block(v), &id_e1));
            rhs.extend(self.p.block(v).entries().iter().cloned());
        }
        let refs: Vec<&Matrix> = rows.iter().collect();
        let extra = Matrix::vstack(field, sys.vars(), &refs);
        sys.solve_affine(&extra, &rhs).is_some()
    }
}
