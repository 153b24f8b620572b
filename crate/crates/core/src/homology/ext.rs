//! `Ext^1(m, n)` with explicit cocycles, and the dictionary between classes
//! and short exact sequences.
//!
//! Two models are available. The arrow model uses cochains `xi_a: m_v -> n_u`
//! for arrows `a: u -> v`; the extension with cochain `xi` has arrow action
//! `[[N_a, xi_a], [0, M_a]]` on `n + m`. Every relation imposes a linear
//! condition on `xi` (the upper right block of the relation evaluated on the
//! extension), so this model works over any bound quiver. The syzygy model
//! uses `coker(Hom(P_0, n) -> Hom(Omega m, n))` for a projective cover
//! `P_0 -> m` and needs a finite-dimensional algebra.

use super::ses::ShortExact;
use crate::error::{Error, Result};
use crate::linalg::{complement_columns, Field, Matrix, Scalar};
use crate::rep::{
    direct_sum, factor_through_epi, hom_space, map_between_sums, projective_cover, HomSystem, ProjectiveModule,
    Rep, RepMap,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtMode {
    ArrowComplex,
    Syzygy,
}

#[derive(Clone, Debug)]
struct SyzygyData {
    cover: ProjectiveModule,
    /// `P_0 -> m`.
    pi: RepMap,
    /// `Omega m -> P_0`.
    iota: RepMap,
    /// Unknowns of maps `Omega m -> n`.
    system: HomSystem,
}

/// A basis of `Ext^1(m, n)` given by cocycle representatives.
#[derive(Clone, Debug)]
pub struct Ext1Space {
    m: Rep,
    n: Rep,
    mode: ExtMode,
    /// Offsets of the arrow cochain blocks (arrow model).
    offsets: Vec<usize>,
    syzygy: Option<SyzygyData>,
    ambient: usize,
    /// Columns: cocycles representing the basis classes.
    reps: Matrix,
    /// Columns: a basis of the coboundaries.
    boundaries: Matrix,
}

/// `Ext^1(m, n)` in the default model: syzygies over an algebra, arrow
/// cochains over a bare quiver.
pub fn ext1(m: &Rep, n: &Rep) -> Result<Ext1Space> {
    let mode = if m.base().algebra().is_some() {
        ExtMode::Syzygy
    } else {
        ExtMode::ArrowComplex
    };
    Ext1Space::with_mode(m, n, mode)
}

/// Vectorisation of `x -> left * x * right` on a block stored at `offset`.
fn sandwich(field: Field, ambient: usize, offset: usize, left: &Matrix, right: &Matrix) -> Matrix {
    let local = left.kronecker(&right.transpose());
    let mut out = Matrix::zeros(field, left.rows() * right.cols(), ambient);
    out.set_block(0, offset, &local);
    out
}

impl Ext1Space {
    pub fn with_mode(m: &Rep, n: &Rep, mode: ExtMode) -> Result<Ext1Space> {
        if m.base() != n.base() {
            return Err(Error::BaseMismatch);
        }
        match mode {
            ExtMode::ArrowComplex => Ok(Ext1Space::arrow_model(m, n)),
            ExtMode::Syzygy => Ext1Space::syzygy_model(m, n),
        }
    }

    fn arrow_model(m: &Rep, n: &Rep) -> Ext1Space {
        let field = m.field();
        let q = m.quiver();
        let mut offsets = Vec::with_capacity(q.arrow_count());
        let mut ambient = 0;
        for arr in q.arrows() {
            offsets.push(ambient);
            ambient += n.dims()[arr.source] * m.dims()[arr.target];
        }
        // Cocycle conditions from the relations.
        let mut rows = Vec::new();
        for rel in m.base().bound().relations() {
            let Some((s, t)) = rel.endpoints() else { continue };
            let mut acc = Matrix::zeros(field, n.dims()[s] * m.dims()[t], ambient);
            for (c, path) in rel.terms() {
                let arrows = path.arrows();
                for (k, &a) in arrows.iter().enumerate() {
                    let arr = q.arrow(a);
                    let mut left = Matrix::identity(field, n.dims()[s]);
                    for &b in &arrows[..k] {
                        left = &left * n.map(b);
                    }
                    let mut right = Matrix::identity(field, m.dims()[arr.target]);
                    for &b in &arrows[k + 1..] {
                        right = &right * m.map(b);
                    }
                    acc = &acc + &sandwich(field, ambient, offsets[a], &left, &right).scale(c);
                }
            }
            rows.push(acc);
        }
        let refs: Vec<&Matrix> = rows.iter().collect();
        let cocycles = Matrix::vstack(field, ambient, &refs).kernel_basis();
        // The coboundary of f = (f_v: m_v -> n_v) is N_a f_v - f_u M_a, which is
        // exactly the intertwining defect, laid out arrow by arrow.
        let boundaries = HomSystem::new(m, n).intertwining().image_basis();
        let reps = complement_columns(&boundaries, &cocycles);
        Ext1Space {
            m: m.clone(),
            n: n.clone(),
            mode: ExtMode::ArrowComplex,
            offsets,
            syzygy: None,
            ambient,
            reps,
            boundaries,
        }
    }

    fn syzygy_model(m: &Rep, n: &Rep) -> Result<Ext1Space> {
        let field = m.field();
        m.base().require_algebra("syzygy model of Ext")?;
        let (cover, pi) = projective_cover(m)?;
        let iota = pi.kernel();
        let system = HomSystem::new(iota.source(), n);
        let ambient = system.vars();
        let cocycles = system.intertwining().kernel_basis();
        let restricted: Vec<Vec<Scalar>> = hom_space(cover.rep(), n)?
            .iter()
            .map(|g| g.after(&iota).map(|h| h.flatten()))
            .collect::<Result<_>>()?;
        let boundaries = Matrix::from_columns(field, ambient, &restricted).image_basis();
        let reps = complement_columns(&boundaries, &cocycles);
        Ok(Ext1Space {
            m: m.clone(),
            n: n.clone(),
            mode: ExtMode::Syzygy,
            offsets: Vec::new(),
            syzygy: Some(SyzygyData {
                cover,
                pi,
                iota,
                system,
            }),
            ambient,
            reps,
            boundaries,
        })
    }

    pub fn mode(&self) -> ExtMode {
        self.mode
    }

    /// The first argument `m` (the quotient of the extensions).
    pub fn source(&self) -> &Rep {
        &self.m
    }

    /// The second argument `n` (the subobject of the extensions).
    pub fn target(&self) -> &Rep {
        &self.n
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn field(&self) -> Field {
        self.m.field()
    }

    /// Number of cochain coordinates.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// The syzygy `Omega m -> P_0` (syzygy model only).
    pub fn syzygy(&self) -> Option<&RepMap> {
        self.syzygy.as_ref().map(|s| &s.iota)
    }

    pub fn zero_class(&self) -> Vec<Scalar> {
        vec![self.field().zero(); self.dim()]
    }

    pub fn basis_class(&self, j: usize) -> Vec<Scalar> {
        let mut x = self.zero_class();
        x[j] = self.field().one();
        x
    }

    fn check_class(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::InvalidClass(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                x.len()
            )));
        }
        Ok(())
    }

    /// The cocycle representing coordinates `x`.
    pub fn cocycle(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_class(x)?;
        Ok(self.reps.mul_vec(x))
    }

    /// Coordinates of the class of a cocycle.
    pub fn coordinates(&self, cocycle: &[Scalar]) -> Result<Vec<Scalar>> {
        if cocycle.len() != self.ambient {
            return Err(Error::InvalidClass("cochain has the wrong size".into()));
        }
        let field = self.field();
        let joint = Matrix::hstack(field, self.ambient, &[&self.reps, &self.boundaries]);
        let sol = joint
            .solve(&Matrix::column_vector(field, cocycle))?
            .ok_or_else(|| Error::InvalidClass("cochain is not a cocycle".into()))?;
        Ok(sol.particular.column(0)[..self.dim()].to_vec())
    }

    /// Arrow cochain blocks `xi_a: m_v -> n_u` of a cocycle (arrow model).
    fn arrow_blocks(&self, cocycle: &[Scalar]) -> Vec<Matrix> {
        let q = self.m.quiver();
        (0..q.arrow_count())
            .map(|a| {
                let arr = q.arrow(a);
                let (r, c) = (self.n.dims()[arr.source], self.m.dims()[arr.target]);
                let data = cocycle[self.offsets[a]..self.offsets[a] + r * c].to_vec();
                Matrix::from_row_major(self.field(), r, c, data).expect("block shape")
            })
            .collect()
    }

    /// The coordinates of the class of a short exact sequence `0 -> n -> e -> m -> 0`.
    pub fn class_of(&self, ses: &ShortExact) -> Result<Vec<Scalar>> {
        if ses.sub() != &self.n || ses.quotient() != &self.m {
            return Err(Error::NotExact("sequence has the wrong end terms".into()));
        }
        match &self.syzygy {
            None => {
                let e = ses.middle();
                let q = self.m.quiver();
                let mut sections = Vec::new();
                let mut retractions = Vec::new();
                for v in 0..q.vertex_count() {
                    let s = ses
                        .projection()
                        .block(v)
                        .right_inverse()
                        .expect("projection is surjective");
                    let frame = Matrix::hstack(self.field(), e.dims()[v], &[ses.inclusion().block(v), &s]);
                    let inv = frame.inverse().expect("exact sequences split over a field");
                    retractions.push(inv.submatrix(0, 0, self.n.dims()[v], e.dims()[v]));
                    sections.push(s);
                }
                let mut cocycle = Vec::with_capacity(self.ambient);
                for a in 0..q.arrow_count() {
                    let arr = q.arrow(a);
                    let xi = &(&retractions[arr.source] * e.map(a)) * &sections[arr.target];
                    cocycle.extend(xi.entries().iter().cloned());
                }
                self.coordinates(&cocycle)
            }
            Some(syz) => {
                // Lift the cover through e, restrict to the syzygy, divide by i.
                let images: Vec<Vec<Scalar>> = (0..syz.cover.summands().len())
                    .map(|s| {
                        let (v, pos) = syz.cover.generator(s);
                        let target = syz.pi.block(v).column(pos);
                        let sol = ses
                            .projection()
                            .block(v)
                            .solve(&Matrix::column_vector(self.field(), &target))
                            .expect("shapes")
                            .expect("projection is surjective");
                        sol.particular.column(0)
                    })
                    .collect();
                let lift = syz.cover.map_from_generators(ses.middle(), &images)?;
                let g = lift.after(&syz.iota)?;
                let h = crate::rep::factor_through_mono(ses.inclusion(), &g)?;
                self.coordinates(&h.flatten())
            }
        }
    }

    /// A short exact sequence with class `x`.
    pub fn extension(&self, x: &[Scalar]) -> Result<ShortExact> {
        let cocycle = self.cocycle(x)?;
        let field = self.field();
        match &self.syzygy {
            None => {
                let blocks = self.arrow_blocks(&cocycle);
                let q = self.m.quiver();
                let dims: Vec<usize> = (0..q.vertex_count()).map(|v| self.n.dims()[v] + self.m.dims()[v]).collect();
                let maps = (0..q.arrow_count())
                    .map(|a| {
                        let arr = q.arrow(a);
                        let (u, v) = (arr.source, arr.target);
                        let mut e = Matrix::zeros(field, dims[u], dims[v]);
                        e.set_block(0, 0, self.n.map(a));
                        e.set_block(0, self.n.dims()[v], &blocks[a]);
                        e.set_block(self.n.dims()[u], self.n.dims()[v], self.m.map(a));
                        e
                    })
                    .collect();
                let middle = Rep::new(self.m.base().clone(), dims.clone(), maps)?;
                let mut i_blocks = Vec::new();
                let mut p_blocks = Vec::new();
                for v in 0..q.vertex_count() {
                    let (nv, mv) = (self.n.dims()[v], self.m.dims()[v]);
                    let mut i = Matrix::zeros(field, dims[v], nv);
                    i.set_block(0, 0, &Matrix::identity(field, nv));
                    let mut p = Matrix::zeros(field, mv, dims[v]);
                    p.set_block(0, nv, &Matrix::identity(field, mv));
                    i_blocks.push(i);
                    p_blocks.push(p);
                }
                let i = RepMap::new(self.n.clone(), middle.clone(), i_blocks)?;
                let p = RepMap::new(middle, self.m.clone(), p_blocks)?;
                ShortExact::new(i, p)
            }
            Some(syz) => {
                // E = coker(Omega -> n + P_0, w -> (-h w, iota w)).
                let h = syz.system.decode(&cocycle);
                let omega = syz.iota.source();
                let sum = direct_sum(&[&self.n, syz.cover.rep()])?;
                let single = direct_sum(&[omega])?;
                let embed = map_between_sums(
                    &single,
                    &sum,
                    &[vec![h.scale(&-field.one())], vec![syz.iota.clone()]],
                )?
                .after(&single.injections[0])?;
                let q = embed.cokernel();
                let i = q.after(&sum.injections[0])?;
                let to_m = syz.pi.after(&sum.projections[1])?;
                let p = factor_through_epi(&q, &to_m)?;
                ShortExact::new(i, p)
            }
        }
    }

    /// `g_* x` for `g: n -> n'`; `to` must be `Ext^1(m, n')` in the same model.
    pub fn pushforward(&self, g: &RepMap, x: &[Scalar], to: &Ext1Space) -> Result<Vec<Scalar>> {
        if g.source() != &self.n || g.target() != &to.n || to.m != self.m || to.mode != self.mode {
            return Err(Error::InvalidClass("pushforward between incompatible spaces".into()));
        }
        let cocycle = self.cocycle(x)?;
        match &self.syzygy {
            None => {
                let q = self.m.quiver();
                let blocks = self.arrow_blocks(&cocycle);
                let mut out = Vec::with_capacity(to.ambient);
                for (a, xi) in blocks.iter().enumerate() {
                    out.extend((g.block(q.arrow(a).source) * xi).entries().iter().cloned());
                }
                to.coordinates(&out)
            }
            Some(syz) => {
                let h = syz.system.decode(&cocycle);
                to.coordinates(&g.after(&h)?.flatten())
            }
        }
    }

    /// `f^* x` for `f: m' -> m`; `to` must be `Ext^1(m', n)`.
    pub fn pullback(&self, f: &RepMap, x: &[Scalar], to: &Ext1Space) -> Result<Vec<Scalar>> {
        if f.target() != &self.m || f.source() != &to.m || to.n != self.n {
            return Err(Error::InvalidClass("pullback between incompatible spaces".into()));
        }
        match (&self.syzygy, &to.syzygy) {
            (None, None) => {
                let cocycle = self.cocycle(x)?;
                let q = self.m.quiver();
                let blocks = self.arrow_blocks(&cocycle);
                let mut out = Vec::with_capacity(to.ambient);
                for (a, xi) in blocks.iter().enumerate() {
                    out.extend((xi * f.block(q.arrow(a).target)).entries().iter().cloned());
                }
                to.coordinates(&out)
            }
            _ => to.class_of(&self.extension(x)?.pullback(f)?),
        }
    }

    /// Whether `x` is the zero class.
    pub fn is_zero_class(&self, x: &[Scalar]) -> bool {
        x.iter().all(|c| c.is_zero())
    }
}
