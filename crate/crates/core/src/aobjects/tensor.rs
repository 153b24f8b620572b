//! The right exact functor `M -> M (x)_A Z` computed from projective presentations.

use super::AObject;
use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::rep::{
    direct_sum_in, factor_through_epi, map_between_sums, projective_cover, DirectSum, ModuleBase,
    ProjectiveModule, Rep, RepMap,
};

/// `P_1 --d--> P_0 --cover--> m -> 0`, with `d` recorded as algebra elements:
/// generator `s` of `P_1` goes to `(relations[s][t])_t`, where
/// `relations[s][t]` lies in `e_{i_t} A e_{j_s}`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: ProjectiveModule,
    pub cover: RepMap,
    pub p1: ProjectiveModule,
    pub relations: Vec<Vec<Element>>,
}

impl Presentation {
    /// Projective cover of `m` followed by a projective cover of the syzygy.
    pub fn minimal(m: &Rep) -> Result<Presentation> {
        let (p0, cover) = projective_cover(m)?;
        let syzygy = cover.kernel();
        let (p1, c1) = projective_cover(syzygy.source())?;
        let d = syzygy.after(&c1)?;
        let relations = (0..p1.summands().len())
            .map(|s| {
                let (j, pos) = p1.generator(s);
                p0.elements_of(j, &d.block(j).column(pos))
            })
            .collect();
        Ok(Presentation {
            p0,
            cover,
            p1,
            relations,
        })
    }

    /// Adds, for every `(k, y)`, a generator `e_k` to `P_0` mapped to the image
    /// of `y` (an element of `P_0` at `k`, one entry per summand) and a relation
    /// killing the difference. The cokernel does not change.
    pub fn padded(&self, extra: &[(usize, Vec<Element>)]) -> Result<Presentation> {
        let algebra = self.p0.algebra().clone();
        let m = self.cover.target();
        let old0 = self.p0.summands().len();
        let mut summands0 = self.p0.summands().to_vec();
        summands0.extend(extra.iter().map(|(k, _)| *k));
        let p0 = ProjectiveModule::new(&algebra, summands0.clone());
        let mut images: Vec<Vec<Scalar>> = (0..old0)
            .map(|t| {
                let (i, pos) = self.p0.generator(t);
                self.cover.block(i).column(pos)
            })
            .collect();
        for (k, y) in extra {
            if y.len() != old0 {
                return Err(Error::InvalidRepMap("padding element needs one entry per summand".into()));
            }
            images.push(self.cover.block(*k).mul_vec(&self.p0.coords_of(*k, y)));
        }
        let cover = p0.map_from_generators(m, &images)?;
        let mut summands1 = self.p1.summands().to_vec();
        summands1.extend(extra.iter().map(|(k, _)| *k));
        let p1 = ProjectiveModule::new(&algebra, summands1);
        let mut relations: Vec<Vec<Element>> = self
            .relations
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.extend(extra.iter().map(|_| algebra.zero()));
                r
            })
            .collect();
        for (n, (k, y)) in extra.iter().enumerate() {
            let mut row: Vec<Element> = y.iter().map(|x| algebra.scale(&-algebra.field().one(), x)).collect();
            row.extend((0..extra.len()).map(|_| algebra.zero()));
            row[old0 + n] = algebra.vertex(*k);
            relations.push(row);
        }
        Ok(Presentation {
            p0,
            cover,
            p1,
            relations,
        })
    }

    /// The differential `P_1 -> P_0`.
    pub fn differential(&self) -> Result<RepMap> {
        self.p1.map_by_elements(&self.p0, &self.relations)
    }
}

/// `m (x)_A Z` with the data used to compute it.
#[derive(Clone, Debug)]
pub struct Tensored {
    pub presentation: Presentation,
    /// `T(P_0) = sum_t Z_{i_t}`.
    pub t_p0: DirectSum,
    /// `T(P_0) -> m (x)_A Z`.
    pub projection: RepMap,
}

impl Tensored {
    pub fn rep(&self) -> &Rep {
        self.projection.target()
    }
}

fn components_sum(z: &AObject, summands: &[usize]) -> Result<DirectSum> {
    let parts: Vec<&Rep> = summands.iter().map(|&i| z.component(i)).collect();
    direct_sum_in(z.target_base(), &parts)
}

fn check_module(z: &AObject, m: &Rep) -> Result<()> {
    if m.base() != &ModuleBase::Algebra(z.algebra().clone()) {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

pub fn tensor_apply(z: &AObject, m: &Rep) -> Result<Tensored> {
    check_module(z, m)?;
    tensor_apply_with(z, Presentation::minimal(m)?)
}

pub fn tensor_apply_with(z: &AObject, presentation: Presentation) -> Result<Tensored> {
    let t_p0 = components_sum(z, presentation.p0.summands())?;
    let t_p1 = components_sum(z, presentation.p1.summands())?;
    let entries: Vec<Vec<RepMap>> = presentation
        .p0
        .summands()
        .iter()
        .enumerate()
        .map(|(t, &i)| {
            presentation
                .p1
                .summands()
                .iter()
                .enumerate()
                .map(|(s, &j)| z.block(&presentation.relations[s][t], i, j))
                .collect()
        })
        .collect();
    let d = map_between_sums(&t_p1, &t_p0, &entries)?;
    let projection = d.cokernel();
    Ok(Tensored {
        presentation,
        t_p0,
        projection,
    })
}

/// `f (x) Z` between already tensored source and target.
pub fn tensor_map(z: &AObject, f: &RepMap, source: &Tensored, target: &Tensored) -> Result<RepMap> {
    let ps = &source.presentation;
    let pt = &target.presentation;
    if f.source() != ps.cover.target() || f.target() != pt.cover.target() {
        return Err(Error::InvalidRepMap("map does not match the presentations".into()));
    }
    // Lift f through the covers generator by generator.
    let lifts: Vec<Vec<Element>> = (0..ps.p0.summands().len())
        .map(|t| -> Result<Vec<Element>> {
            let (i, pos) = ps.p0.generator(t);
            let image = f.block(i).mul_vec(&ps.cover.block(i).column(pos));
            let sol = pt
                .cover
                .block(i)
                .solve(&Matrix::column_vector(f.field(), &image))?
                .ok_or_else(|| Error::InvalidRepMap("cover is not surjective".into()))?;
            Ok(pt.p0.elements_of(i, &sol.particular.column(0)))
        })
        .collect::<Result<_>>()?;
    let entries: Vec<Vec<RepMap>> = pt
        .p0
        .summands()
        .iter()
        .enumerate()
        .map(|(u, &k)| {
            ps.p0
                .summands()
                .iter()
                .enumerate()
                .map(|(t, &i)| z.block(&lifts[t][u], k, i))
                .collect()
        })
        .collect();
    let lifted = map_between_sums(&source.t_p0, &target.t_p0, &entries)?;
    factor_through_epi(&source.projection, &target.projection.after(&lifted)?)
}

/// `X (x)_A Z` for a right `A`-module `X`, straight from the definition: the
/// quotient of `sum_v X_v (x) Z_v` by `x a (x) z - x (x) a z`. Returns the
/// projection from `sum_v X_v (x) Z_v` and that sum.
pub fn balanced_tensor(x: &Rep, z: &AObject) -> Result<(RepMap, DirectSum)> {
    check_module(z, x)?;
    let algebra = z.algebra();
    let q = algebra.quiver();
    let parts: Vec<Rep> = (0..q.vertex_count())
        .map(|v| scalar_tensor(x.dims()[v], z.component(v)))
        .collect();
    let refs: Vec<&Rep> = parts.iter().collect();
    let sum = direct_sum_in(z.target_base(), &refs)?;
    let rel_parts: Vec<Rep> = q
        .arrows()
        .iter()
        .map(|arr| scalar_tensor(x.dims()[arr.target], z.component(arr.source)))
        .collect();
    let rel_refs: Vec<&Rep> = rel_parts.iter().collect();
    let rels = direct_sum_in(z.target_base(), &rel_refs)?;
    let mut entries: Vec<Vec<RepMap>> = (0..q.vertex_count())
        .map(|v| rel_parts.iter().map(|r| RepMap::zero(r, &parts[v])).collect())
        .collect();
    for (a, arr) in q.arrows().iter().enumerate() {
        let (u, v) = (arr.source, arr.target);
        // x a (x) z lands in X_u (x) Z_u; x (x) a z in X_v (x) Z_v.
        let act_x = kron_map(x.map(a), &RepMap::identity(z.component(u)), &rel_parts[a], &parts[u]);
        let id_x = Matrix::identity(x.field(), x.dims()[v]);
        let act_z = kron_map(&id_x, &z.arrow_map(a), &rel_parts[a], &parts[v]);
        entries[u][a] = entries[u][a].add(&act_x)?;
        entries[v][a] = entries[v][a].sub(&act_z)?;
    }
    let d = map_between_sums(&rels, &sum, &entries)?;
    Ok((d.cokernel(), sum))
}

/// `k^d (x) Z`: `d` copies of `Z`, coordinates ordered (copy, vector).
pub(crate) fn scalar_tensor(d: usize, z: &Rep) -> Rep {
    let field = z.field();
    let dims = z.dims().iter().map(|&n| d * n).collect();
    let maps = z
        .maps()
        .iter()
        .map(|m| Matrix::identity(field, d).kronecker(m))
        .collect();
    Rep::new(z.base().clone(), dims, maps).expect("copies of a representation")
}

/// `L (x) f` between scalar tensors.
pub(crate) fn kron_map(l: &Matrix, f: &RepMap, source: &Rep, target: &Rep) -> RepMap {
    let blocks = f.blocks().iter().map(|b| l.kronecker(b)).collect();
    RepMap::new(source.clone(), target.clone(), blocks).expect("tensor of maps")
}
