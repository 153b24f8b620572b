use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with labelled vertices and named arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label {v:?}")));
            }
        }
        let mut names = HashMap::new();
        for a in &arrows {
            if names.insert(a.name.as_str(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {:?}", a.name)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {:?} refers to a vertex out of range",
                    a.name
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Quiver on vertices labelled by `labels`, arrows given as `(name, source, target)` labels.
    pub fn build(labels: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        let vertices: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let find = |l: &str| {
            vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {l:?}")))
        };
        let mut out = Vec::new();
        for &(name, s, t) in arrows {
            out.push(Arrow {
                name: name.to_string(),
                source: find(s)?,
                target: find(t)?,
            });
        }
        Quiver::new(vertices, out)
    }

    /// Vertices labelled `1..=n` and no arrows.
    pub fn discrete(n: usize) -> Quiver {
        Quiver {
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            arrows: vec![],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }
}

/// A path, stored in travel order. Trivial paths have no arrows.
///
/// The order is by length, then lexicographic on arrow indices, then by
/// source. Path reduction rewrites towards larger paths, so the smallest path
/// in a relation is the one eliminated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: vec![],
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        let arr = q.arrow(a);
        Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        }
    }

    /// A non-empty composable arrow sequence.
    pub fn new(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidQuiver("empty arrow sequence; use a trivial path".into()));
        };
        if arrows.iter().any(|&a| a >= q.arrow_count()) {
            return Err(Error::InvalidQuiver("arrow index out of range".into()));
        }
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(Error::InvalidQuiver(format!(
                    "arrows {:?} and {:?} do not compose",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        let last = *arrows.last().expect("non-empty");
        Ok(Path {
            source: q.arrow(first).source,
            target: q.arrow(last).target,
            arrows,
        })
    }

    /// Path from arrow names, in travel order.
    pub fn from_names(q: &Quiver, names: &[&str]) -> Result<Path> {
        let idx = names
            .iter()
            .map(|n| {
                q.arrow_index(n)
                    .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Path::new(q, idx)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Travels `self` and then `next`; `None` if they do not meet.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e{}", self.quiver.vertices()[self.path.source]);
        }
        let names: Vec<&str> = self
            .path
            .arrows
            .iter()
            .map(|&a| self.quiver.arrow(a).name.as_str())
            .collect();
        write!(f, "{}", names.join("."))
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    /// Collects like terms and drops zero coefficients.
    pub fn new(terms: Vec<(Scalar, Path)>) -> Relation {
        let mut acc: Vec<(Scalar, Path)> = Vec::new();
        for (c, p) in terms {
            match acc.iter_mut().find(|(_, q)| *q == p) {
                Some(entry) => entry.0 = &entry.0 + &c,
                None => acc.push((c, p)),
            }
        }
        acc.retain(|(c, _)| !c.is_zero());
        acc.sort_by(|a, b| a.1.cmp(&b.1));
        Relation { terms: acc }
    }

    /// `terms` as `(coefficient, arrow names in travel order)`.
    pub fn from_names(q: &Quiver, field: Field, terms: &[(i64, &[&str])]) -> Result<Relation> {
        let mut out = Vec::new();
        for (c, names) in terms {
            out.push((field.from_i64(*c), Path::from_names(q, names)?));
        }
        Ok(Relation::new(out))
    }

    /// A single path set to zero.
    pub fn monomial(path: Path, field: Field) -> Relation {
        Relation::new(vec![(field.one(), path)])
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    /// Common `(source, target)` of the terms, if any.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        self.terms.first().map(|(_, p)| (p.source(), p.target()))
    }
}

/// A quiver, its relations and the ground field. Modules over a bound quiver
/// are representations satisfying the relations; the quotient algebra need
/// not be finite-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, field: Field) -> Result<BoundQuiver> {
        for (index, r) in relations.iter().enumerate() {
            let Some((s, t)) = r.endpoints() else { continue };
            for (c, p) in r.terms() {
                if c.field() != field {
                    return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
                }
                if p.source() != s || p.target() != t {
                    return Err(Error::IllTypedRelation {
                        index,
                        reason: "terms are not parallel paths".into(),
                    });
                }
                if p.source() >= quiver.vertex_count()
                    || p.arrows().iter().any(|&a| a >= quiver.arrow_count())
                {
                    return Err(Error::IllTypedRelation {
                        index,
                        reason: "path does not belong to the quiver".into(),
                    });
                }
            }
        }
        Ok(BoundQuiver {
            quiver,
            relations,
            field,
        })
    }

    /// The quiver with no relations.
    pub fn free(quiver: Quiver, field: Field) -> BoundQuiver {
        BoundQuiver {
            quiver,
            relations: vec![],
            field,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_order_is_degree_then_lex() {
        let q = Quiver::build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let e1 = Path::trivial(0);
        let e2 = Path::trivial(1);
        let a = Path::from_names(&q, &["a"]).unwrap();
        let b = Path::from_names(&q, &["b"]).unwrap();
        let ab = Path::from_names(&q, &["a", "b"]).unwrap();
        let mut v = vec![ab.clone(), b.clone(), e2.clone(), a.clone(), e1.clone()];
        v.sort();
        assert_eq!(v, vec![e1, e2, a.clone(), b.clone(), ab.clone()]);
        assert_eq!(a.then(&b), Some(ab));
        assert_eq!(a.then(&a), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Quiver::build(&["1", "1"], &[]).is_err());
        assert!(Quiver::build(&["1"], &[("a", "1", "2")]).is_err());
        let q = Quiver::build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        assert!(Path::from_names(&q, &["a", "b"]).is_err());
        let f = Field::Rationals;
        let r = Relation::from_names(&q, f, &[(1, &["a"]), (1, &["b"])]).unwrap();
        assert!(BoundQuiver::new(q.clone(), vec![r], f).is_ok());
        let q2 = Quiver::build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let r = Relation::from_names(&q2, f, &[(1, &["a"]), (1, &["b"])]).unwrap();
        assert!(matches!(
            BoundQuiver::new(q2, vec![r], f),
            Err(Error::IllTypedRelation { index: 0, .. })
        ));
    }

    #[test]
    fn relation_collects_terms() {
        let q = Quiver::build(&["1"], &[("x", "1", "1")]).unwrap();
        let f = Field::Rationals;
        let r = Relation::from_names(&q, f, &[(1, &["x", "x"]), (-1, &["x", "x"])]).unwrap();
        assert!(r.is_zero());
    }
}
