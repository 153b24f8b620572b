use std::collections::{BTreeMap, HashMap};

use super::quiver::{BoundQuiver, Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// An element of a path algebra in basis coordinates.
pub type Element = Vec<Scalar>;

/// Limits for [`PathAlgebra::build_with`].
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Longest path considered while certifying that the arrow ideal is nilpotent.
    pub length_cap: usize,
    /// Maximum number of paths enumerated.
    pub path_limit: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            length_cap: 32,
            path_limit: 200_000,
        }
    }
}

/// A finite-dimensional quotient `kQ/I` of a path algebra with a basis of
/// residue paths and its multiplication table.
///
/// Multiplication is composition: `p * q` is "first `q`, then `p`", which is
/// non-zero only if `q` ends where `p` starts. With this order `e_i A` is
/// spanned by the paths ending at `i`, and a right module sends an arrow
/// `u -> v` to a linear map from its `v` component to its `u` component.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    bound: BoundQuiver,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Sparse products of basis elements, `table[i][j] = b_i * b_j`.
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// `J^nilpotency` lies in the relation ideal.
    nilpotency: usize,
}

impl PartialEq for PathAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound
    }
}

/// Incremental sparse elimination keyed by the smallest path of each row.
struct Eliminator {
    rows: BTreeMap<usize, Vec<(usize, Scalar)>>,
}

impl Eliminator {
    fn new() -> Self {
        Eliminator {
            rows: BTreeMap::new(),
        }
    }

    fn reduce(&self, mut v: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        while let Some((k, c)) = v.pop_first() {
            match self.rows.get(&k) {
                Some(row) => {
                    for (p, rc) in row.iter().skip(1) {
                        let e = v.entry(*p).or_insert_with(|| c.field().zero());
                        *e = &*e - &(&c * rc);
                        if e.is_zero() {
                            v.remove(p);
                        }
                    }
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        out
    }

    fn insert(&mut self, v: BTreeMap<usize, Scalar>) {
        let r = self.reduce(v);
        let Some((&lead, c)) = r.iter().next() else { return };
        let inv = c.inv().expect("leading coefficient is nonzero");
        let row: Vec<(usize, Scalar)> = r.iter().map(|(&k, x)| (k, x * &inv)).collect();
        self.rows.insert(lead, row);
    }
}

/// All paths up to some length, sorted and indexed consistently with [`Path`]'s order.
struct PathTable {
    by_len: Vec<Vec<Path>>,
    id: HashMap<Path, usize>,
    paths: Vec<Path>,
}

impl PathTable {
    fn new(q: &Quiver) -> Self {
        let trivial: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
        let mut t = PathTable {
            by_len: vec![],
            id: HashMap::new(),
            paths: vec![],
        };
        t.push_level(trivial);
        t
    }

    fn push_level(&mut self, mut level: Vec<Path>) {
        level.sort();
        for p in &level {
            self.id.insert(p.clone(), self.paths.len());
            self.paths.push(p.clone());
        }
        self.by_len.push(level);
    }

    fn extend_to(&mut self, q: &Quiver, len: usize, limit: usize) -> Result<()> {
        while self.by_len.len() <= len {
            let last = self.by_len.last().expect("level 0 exists");
            let mut next = Vec::new();
            for p in last {
                for a in q.arrows_from(p.target()) {
                    next.push(p.then(&Path::arrow(q, a)).expect("composable"));
                }
            }
            if self.paths.len() + next.len() > limit {
                return Err(Error::TooManyPaths {
                    count: self.paths.len() + next.len(),
                    limit,
                });
            }
            self.push_level(next);
        }
        Ok(())
    }

    fn level(&self, len: usize) -> &[Path] {
        self.by_len.get(len).map_or(&[], |v| v.as_slice())
    }
}

/// Calls `f(q, p)` for every pair of paths with `q` ending at the source of `r`,
/// `p` starting at its target and `len(q) + len(p) = total`.
fn for_each_multiple(table: &PathTable, r: &Relation, total: usize, mut f: impl FnMut(&Path, &Path)) {
    let (s, t) = r.endpoints().expect("nonzero relation");
    for lq in 0..=total {
        let lp = total - lq;
        for q in table.level(lq).iter().filter(|q| q.target() == s) {
            for p in table.level(lp).iter().filter(|p| p.source() == t) {
                f(q, p);
            }
        }
    }
}

fn multiple_vector(
    table: &PathTable,
    r: &Relation,
    q: &Path,
    p: &Path,
    below: usize,
) -> BTreeMap<usize, Scalar> {
    let mut v = BTreeMap::new();
    for (c, term) in r.terms() {
        let path = q.then(term).and_then(|x| x.then(p)).expect("composable");
        if path.len() >= below {
            continue;
        }
        let id = table.id[&path];
        let e = v.entry(id).or_insert_with(|| c.field().zero());
        *e = &*e + c;
    }
    v.retain(|_, c: &mut Scalar| !c.is_zero());
    v
}

impl PathAlgebra {
    pub fn build(bound: BoundQuiver) -> Result<PathAlgebra> {
        PathAlgebra::build_with(bound, BuildOptions::default())
    }

    /// Builds `kQ/I`, certifying along the way that `J^N` lies in `I` for some `N`.
    ///
    /// For a cap `L`, the span of all `p r q` whose terms have length at most `L`
    /// lies in `I`. Once every path of some length `N` is in that span we know
    /// `J^N` is in `I`, and the algebra is `kQ_{<N}` modulo the truncated
    /// multiples of the relations.
    pub fn build_with(bound: BoundQuiver, opts: BuildOptions) -> Result<PathAlgebra> {
        let q = bound.quiver().clone();
        let relations: Vec<&Relation> = bound.relations().iter().filter(|r| !r.is_zero()).collect();
        for (index, r) in bound.relations().iter().enumerate() {
            if let Some((_, p)) = r.terms().iter().find(|(_, p)| p.len() < 2) {
                return Err(Error::NonAdmissible {
                    index,
                    reason: format!("term {} has length {}", p.display(&q), p.len()),
                });
            }
        }

        let mut table = PathTable::new(&q);
        let mut span = Eliminator::new();
        let mut nilpotency = None;
        'outer: for cap in 1..=opts.length_cap {
            table.extend_to(&q, cap + 1, opts.path_limit)?;
            for r in &relations {
                if r.max_len() > cap {
                    continue;
                }
                let extra = cap - r.max_len();
                let mut vecs = Vec::new();
                for_each_multiple(&table, r, extra, |qq, pp| {
                    vecs.push(multiple_vector(&table, r, qq, pp, usize::MAX));
                });
                for v in vecs {
                    span.insert(v);
                }
            }
            for n in 1..=cap + 1 {
                let all_in = table.level(n).iter().all(|p| {
                    let v = BTreeMap::from([(table.id[p], bound.field().one())]);
                    span.reduce(v).is_empty()
                });
                if all_in {
                    nilpotency = Some(n);
                    break 'outer;
                }
            }
        }
        let Some(n) = nilpotency else {
            return Err(Error::InfiniteDimensional {
                cap: opts.length_cap,
            });
        };

        // Second pass inside kQ_{<n}.
        let mut trunc = Eliminator::new();
        for r in &relations {
            if r.min_len() >= n {
                continue;
            }
            let mut vecs = Vec::new();
            for extra in 0..n - r.min_len() {
                for_each_multiple(&table, r, extra, |qq, pp| {
                    vecs.push(multiple_vector(&table, r, qq, pp, n));
                });
            }
            for v in vecs {
                trunc.insert(v);
            }
        }
        let mut basis = Vec::new();
        for len in 0..n {
            for p in table.level(len) {
                if !trunc.rows.contains_key(&table.id[p]) {
                    basis.push(p.clone());
                }
            }
        }
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let normal_form = |p: &Path| -> Vec<(usize, Scalar)> {
            if p.len() >= n {
                return vec![];
            }
            let v = BTreeMap::from([(table.id[p], bound.field().one())]);
            trunc
                .reduce(v)
                .into_iter()
                .map(|(id, c)| (index[&table.paths[id]], c))
                .collect()
        };
        let mut mult = vec![vec![vec![]; basis.len()]; basis.len()];
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                if let Some(path) = bj.then(bi) {
                    mult[i][j] = normal_form(&path);
                }
            }
        }
        Ok(PathAlgebra {
            bound,
            basis,
            index,
            table: mult,
            nilpotency: n,
        })
    }

    /// `k^n`: `n` vertices, no arrows.
    pub fn semisimple(field: Field, n: usize) -> PathAlgebra {
        PathAlgebra::build(BoundQuiver::free(Quiver::discrete(n), field)).expect("semisimple algebra")
    }

    /// `k[x]/(x^n)` as a one-loop quiver with the relation `x^n`, for `n >= 2`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Result<PathAlgebra> {
        if n < 2 {
            return Err(Error::Unsupported(
                "k[x]/(x^n) with n < 2 needs a non-admissible relation".into(),
            ));
        }
        let q = Quiver::build(&["1"], &[("x", "1", "1")])?;
        let rel = Relation::monomial(Path::new(&q, vec![0; n])?, field);
        PathAlgebra::build(BoundQuiver::new(q, vec![rel], field)?)
    }

    pub fn bound(&self) -> &BoundQuiver {
        &self.bound
    }

    pub fn quiver(&self) -> &Quiver {
        self.bound.quiver()
    }

    pub fn field(&self) -> Field {
        self.bound.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver().vertex_count()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Smallest `N` with `J^N = 0` in the quotient was certified below this bound.
    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency
    }

    pub fn zero(&self) -> Element {
        vec![self.field().zero(); self.dim()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = self.field().one();
        e
    }

    pub fn vertex(&self, v: usize) -> Element {
        self.basis_element(self.index[&Path::trivial(v)])
    }

    pub fn vertex_index(&self, v: usize) -> usize {
        self.index[&Path::trivial(v)]
    }

    pub fn arrow_index(&self, a: usize) -> usize {
        self.index[&Path::arrow(self.quiver(), a)]
    }

    pub fn arrow(&self, a: usize) -> Element {
        self.basis_element(self.arrow_index(a))
    }

    pub fn one(&self) -> Element {
        let mut e = self.zero();
        for v in 0..self.vertex_count() {
            e[self.vertex_index(v)] = self.field().one();
        }
        e
    }

    /// Product of basis elements as a sparse vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn scale(&self, c: &Scalar, x: &[Scalar]) -> Element {
        x.iter().map(|a| c * a).collect()
    }

    /// Residue class of an arbitrary path.
    pub fn path_element(&self, p: &Path) -> Element {
        if p.is_trivial() {
            return self.vertex(p.source());
        }
        let mut acc = self.arrow(p.arrows()[0]);
        for &a in &p.arrows()[1..] {
            acc = self.mul(&self.arrow(a), &acc);
        }
        acc
    }

    /// Matrix of `y -> x * y`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Element> = (0..self.dim())
            .map(|j| self.mul(x, &self.basis_element(j)))
            .collect();
        Matrix::from_columns(self.field(), self.dim(), &cols)
    }

    /// Matrix of `y -> y * x`.
    pub fn right_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Element> = (0..self.dim())
            .map(|j| self.mul(&self.basis_element(j), x))
            .collect();
        Matrix::from_columns(self.field(), self.dim(), &cols)
    }

    /// Indices of the basis paths spanning `rad^k`, i.e. those of length `>= k`.
    pub fn radical_power_basis(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].len() >= k).collect()
    }

    /// Least `l` with `rad^{l+1} = 0`.
    pub fn loewy_length(&self) -> usize {
        self.basis.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    /// Whether `x` lies in the radical (no component on vertex idempotents).
    pub fn in_radical(&self, x: &[Scalar]) -> bool {
        (0..self.vertex_count()).all(|v| x[self.vertex_index(v)].is_zero())
    }

    /// The image of `x` in `A / rad A = k^n`.
    pub fn top_coefficients(&self, x: &[Scalar]) -> Vec<Scalar> {
        (0..self.vertex_count())
            .map(|v| x[self.vertex_index(v)].clone())
            .collect()
    }

    /// Inverse of `x`, if it is a unit.
    pub fn inverse(&self, x: &[Scalar]) -> Option<Element> {
        if self.top_coefficients(x).iter().any(|c| c.is_zero()) {
            return None;
        }
        let sol = self
            .left_matrix(x)
            .solve(&Matrix::column_vector(self.field(), &self.one()))
            .ok()??;
        Some(sol.particular.column(0))
    }

    /// Basis indices of the paths from `source` to `target`.
    pub fn paths_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].source() == source && self.basis[i].target() == target)
            .collect()
    }

    pub fn display_element(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let p = self.basis[i].display(self.quiver()).to_string();
                if c.is_one() {
                    p
                } else {
                    format!("{c}*{p}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
