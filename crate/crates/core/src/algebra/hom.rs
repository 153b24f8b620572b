use std::fmt;
use std::sync::Arc;

use super::path_algebra::{Element, PathAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SearchConfig};

/// A homomorphism of path algebras compatible with the vertex labelling:
/// `alpha(e_i) = e_{vertex_map[i]}` modulo the radical.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    source: Arc<PathAlgebra>,
    target: Arc<PathAlgebra>,
    vertex_map: Vec<usize>,
    /// Column `j` holds the target coordinates of the image of source basis element `j`.
    images: Matrix,
}

/// First identity violated by a candidate homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    Unit,
    Multiplicativity { left: usize, right: usize },
    Relation { index: usize },
    QCompatibility { vertex: usize },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Unit => write!(f, "alpha(1) != 1"),
            HomViolation::Multiplicativity { left, right } => {
                write!(f, "alpha(b{left} b{right}) != alpha(b{left}) alpha(b{right})")
            }
            HomViolation::Relation { index } => write!(f, "relation {index} is not killed"),
            HomViolation::QCompatibility { vertex } => {
                write!(f, "alpha(e_{vertex}) is not congruent to its labelled idempotent mod rad")
            }
        }
    }
}

/// Outcome of [`are_conjugate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// A unit `u` with `u alpha(a) = beta(a) u` for all `a`.
    Conjugate(Element),
    NotConjugate,
    ProbablyNot,
}

impl AlgebraHom {
    /// Checks shapes only; use [`AlgebraHom::check`] for the algebraic identities.
    pub fn from_basis_images(
        source: Arc<PathAlgebra>,
        target: Arc<PathAlgebra>,
        vertex_map: Vec<usize>,
        images: Matrix,
    ) -> Result<AlgebraHom> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field().to_string(), target.field().to_string()));
        }
        if images.rows() != target.dim() || images.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "hom images are {}x{}, expected {}x{}",
                images.rows(),
                images.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if vertex_map.len() != source.vertex_count()
            || vertex_map.iter().any(|&v| v >= target.vertex_count())
        {
            return Err(Error::DimensionMismatch("vertex correspondence has the wrong shape".into()));
        }
        Ok(AlgebraHom {
            source,
            target,
            vertex_map,
            images,
        })
    }

    /// Extends images of the vertex idempotents and arrows along basis paths.
    pub fn from_generators(
        source: Arc<PathAlgebra>,
        target: Arc<PathAlgebra>,
        vertex_map: Vec<usize>,
        vertex_images: Vec<Element>,
        arrow_images: Vec<Element>,
    ) -> Result<AlgebraHom> {
        let n = source.vertex_count();
        if vertex_images.len() != n || arrow_images.len() != source.quiver().arrow_count() {
            return Err(Error::DimensionMismatch("one image per vertex and arrow is required".into()));
        }
        if vertex_images
            .iter()
            .chain(&arrow_images)
            .any(|x| x.len() != target.dim())
        {
            return Err(Error::DimensionMismatch("image has the wrong length".into()));
        }
        let cols: Vec<Element> = source
            .basis()
            .iter()
            .map(|p| {
                if p.is_trivial() {
                    return vertex_images[p.source()].clone();
                }
                let mut acc = arrow_images[p.arrows()[0]].clone();
                for &a in &p.arrows()[1..] {
                    acc = target.mul(&arrow_images[a], &acc);
                }
                acc
            })
            .collect();
        let images = Matrix::from_columns(target.field(), target.dim(), &cols);
        AlgebraHom::from_basis_images(source, target, vertex_map, images)
    }

    /// Vertex idempotents go to the labelled idempotents, arrows as given.
    pub fn from_arrow_images(
        source: Arc<PathAlgebra>,
        target: Arc<PathAlgebra>,
        vertex_map: Vec<usize>,
        arrow_images: Vec<Element>,
    ) -> Result<AlgebraHom> {
        if vertex_map.iter().any(|&v| v >= target.vertex_count()) {
            return Err(Error::DimensionMismatch("vertex correspondence out of range".into()));
        }
        let vertex_images = vertex_map.iter().map(|&v| target.vertex(v)).collect();
        AlgebraHom::from_generators(source, target, vertex_map, vertex_images, arrow_images)
    }

    pub fn identity(a: Arc<PathAlgebra>) -> AlgebraHom {
        let n = a.dim();
        let map = (0..a.vertex_count()).collect();
        AlgebraHom {
            source: a.clone(),
            target: a.clone(),
            vertex_map: map,
            images: Matrix::identity(a.field(), n),
        }
    }

    pub fn source(&self) -> &Arc<PathAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PathAlgebra> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn images(&self) -> &Matrix {
        &self.images
    }

    pub fn image_of_basis(&self, j: usize) -> Element {
        self.images.column(j)
    }

    pub fn apply(&self, x: &[Scalar]) -> Element {
        self.images.mul_vec(x)
    }

    /// `u alpha(-) u^{-1}`.
    pub fn conjugate_by(&self, u: &[Scalar]) -> Result<AlgebraHom> {
        let t = &self.target;
        let inv = t
            .inverse(u)
            .ok_or_else(|| Error::Precondition("conjugating element is not a unit".into()))?;
        let cols: Vec<Element> = (0..self.source.dim())
            .map(|j| t.mul(&t.mul(u, &self.image_of_basis(j)), &inv))
            .collect();
        let images = Matrix::from_columns(t.field(), t.dim(), &cols);
        AlgebraHom::from_basis_images(self.source.clone(), t.clone(), self.vertex_map.clone(), images)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &AlgebraHom) -> Result<AlgebraHom> {
        if *self.target != *next.source {
            return Err(Error::BaseMismatch);
        }
        let map = self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect();
        AlgebraHom::from_basis_images(
            self.source.clone(),
            next.target.clone(),
            map,
            &next.images * &self.images,
        )
    }

    /// Verifies unit, relations, multiplicativity on all basis pairs and
    /// compatibility with the vertex labelling, in that order.
    pub fn check(&self) -> Option<HomViolation> {
        let (s, t) = (&*self.source, &*self.target);
        if self.apply(&s.one()) != t.one() {
            return Some(HomViolation::Unit);
        }
        for (index, r) in s.bound().relations().iter().enumerate() {
            let mut acc = t.zero();
            for (c, p) in r.terms() {
                let mut img = self.image_of_basis(s.arrow_index(p.arrows()[0]));
                for &a in &p.arrows()[1..] {
                    img = t.mul(&self.image_of_basis(s.arrow_index(a)), &img);
                }
                acc = t.add(&acc, &t.scale(c, &img));
            }
            if acc.iter().any(|c| !c.is_zero()) {
                return Some(HomViolation::Relation { index });
            }
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let mut prod = s.zero();
                for (k, c) in s.basis_product(i, j) {
                    prod[*k] = c.clone();
                }
                let lhs = self.apply(&prod);
                let rhs = t.mul(&self.image_of_basis(i), &self.image_of_basis(j));
                if lhs != rhs {
                    return Some(HomViolation::Multiplicativity { left: i, right: j });
                }
            }
        }
        for v in 0..s.vertex_count() {
            let diff = t.sub(&self.apply(&s.vertex(v)), &t.vertex(self.vertex_map[v]));
            if !t.in_radical(&diff) {
                return Some(HomViolation::QCompatibility { vertex: v });
            }
        }
        None
    }

    /// Generators of the source: vertex idempotents followed by arrows.
    fn generator_images(&self) -> Vec<Element> {
        let s = &self.source;
        (0..s.vertex_count())
            .map(|v| self.image_of_basis(s.vertex_index(v)))
            .chain((0..s.quiver().arrow_count()).map(|a| self.image_of_basis(s.arrow_index(a))))
            .collect()
    }
}

/// Decides whether `alpha = u^{-1} beta u` for a unit `u` of the target.
///
/// The `u` with `u alpha(g) = beta(g) u` on generators form a subspace. Since
/// the target is basic, `u` is a unit exactly when each of its vertex
/// coefficients is nonzero, so the question is whether finitely many linear
/// forms on the subspace can be made simultaneously nonzero. Over `Q` or a
/// large prime field a point on the moment curve always settles it; small
/// prime fields are scanned exhaustively within the budget.
pub fn are_conjugate(alpha: &AlgebraHom, beta: &AlgebraHom, cfg: &SearchConfig) -> Result<Conjugacy> {
    if *alpha.source != *beta.source || *alpha.target != *beta.target {
        return Err(Error::BaseMismatch);
    }
    let t = &*alpha.target;
    let field = t.field();
    let ga = alpha.generator_images();
    let gb = beta.generator_images();
    let blocks: Vec<Matrix> = ga
        .iter()
        .zip(&gb)
        .map(|(a, b)| &t.right_matrix(a) - &t.left_matrix(b))
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let system = Matrix::vstack(field, t.dim(), &refs);
    let kernel = system.kernel_basis();
    let k = kernel.cols();
    if k == 0 {
        return Ok(Conjugacy::NotConjugate);
    }
    // forms[v][j] = coefficient of e_v in the j-th kernel vector.
    let forms: Vec<Vec<Scalar>> = (0..t.vertex_count())
        .map(|v| kernel.row(t.vertex_index(v)).to_vec())
        .collect();
    if forms.iter().any(|f| f.iter().all(|c| c.is_zero())) {
        return Ok(Conjugacy::NotConjugate);
    }
    let eval = |c: &[Scalar]| -> Option<Element> {
        let ok = forms.iter().all(|f| {
            let s = f
                .iter()
                .zip(c)
                .fold(field.zero(), |acc, (x, y)| &acc + &(x * y));
            !s.is_zero()
        });
        ok.then(|| kernel.mul_vec(c))
    };
    let n = t.vertex_count() as u64;
    let moment_points = n * (k as u64 - 1) + 1;
    if field.exceeds(moment_points) {
        for s in 0..moment_points {
            let t_val = field.from_i64(s as i64);
            let mut c = Vec::with_capacity(k);
            let mut pow = field.one();
            for _ in 0..k {
                c.push(pow.clone());
                pow = &pow * &t_val;
            }
            if let Some(u) = eval(&c) {
                return Ok(Conjugacy::Conjugate(u));
            }
        }
        unreachable!("a nonzero polynomial of degree below the grid size has a non-root");
    }
    // Small field: the values (f_v(c))_v range over the image of the forms,
    // which has dimension at most the number of vertices. Scan that image for
    // a point with no zero coordinate and pull it back.
    let q = field.order().expect("small fields are finite");
    let data: Vec<Scalar> = forms.iter().flatten().cloned().collect();
    let form_matrix = Matrix::from_row_major(field, forms.len(), k, data)?;
    let image = form_matrix.image_basis();
    let r = image.cols();
    let total = (0..r).try_fold(1u64, |acc, _| acc.checked_mul(q));
    match total.filter(|&tot| tot <= cfg.budget) {
        Some(tot) => {
            for idx in 0..tot {
                let mut d = Vec::with_capacity(r);
                let mut rest = idx;
                for _ in 0..r {
                    d.push(field.element(rest % q));
                    rest /= q;
                }
                let w = image.mul_vec(&d);
                if w.iter().any(|x| x.is_zero()) {
                    continue;
                }
                let c = form_matrix
                    .solve(&Matrix::column_vector(field, &w))?
                    .expect("w lies in the image")
                    .particular
                    .column(0);
                if let Some(u) = eval(&c) {
                    return Ok(Conjugacy::Conjugate(u));
                }
            }
            Ok(Conjugacy::NotConjugate)
        }
        None => Ok(Conjugacy::ProbablyNot),
    }
}
