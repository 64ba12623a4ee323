//! Quivers with relations and the finite-dimensional algebras they present.

mod basis;
mod lambda;
mod text;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use basis::{build_path_basis, BasisPath, PathBasis, DEFAULT_LENGTH_BOUND};
pub use lambda::{build_lambda, build_lambda1prime, build_subquiver_u, family_from_spec, vertex_name, U_VERTICES};
pub(crate) use text::strip_comment;
pub use text::{emit_presentation, parse_presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("unknown arrow '{0}'")]
    UnknownArrow(String),
    #[error("duplicate name '{0}'")]
    Duplicate(String),
    #[error("relation path '{0}' is not composable")]
    NotComposable(String),
    #[error("relation '{0}' relates paths with different endpoints")]
    NotParallel(String),
    #[error("empty relation path")]
    EmptyPath,
    #[error("path length bound {bound} reached by surviving path '{path}'")]
    BoundExceeded { bound: usize, path: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// The two letter classes of a special biserial quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LetterClass {
    Alpha,
    Beta,
}

impl LetterClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LetterClass::Alpha => "alpha",
            LetterClass::Beta => "beta",
        }
    }
}

impl fmt::Display for LetterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
    pub class: LetterClass,
}

impl Arrow {
    pub fn new(name: &str, class: LetterClass, source: &str, target: &str) -> Arrow {
        Arrow { name: name.into(), source: source.into(), target: target.into(), class }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationKind {
    Zero,
    Equal,
}

/// A relation between paths. Paths are arrow names in written order: the leftmost arrow is
/// applied last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl Relation {
    pub fn zero(path: &[&str]) -> Relation {
        Relation { kind: RelationKind::Zero, left: path.iter().map(|s| s.to_string()).collect(), right: vec![] }
    }

    pub fn equal(left: &[&str], right: &[&str]) -> Relation {
        Relation {
            kind: RelationKind::Equal,
            left: left.iter().map(|s| s.to_string()).collect(),
            right: right.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RelationKind::Zero => write!(f, "rel zero {}", self.left.join(" ")),
            RelationKind::Equal => write!(f, "rel eq {} = {}", self.left.join(" "), self.right.join(" ")),
        }
    }
}

/// Vertices and arrows, kept sorted by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// A quiver with relations. Construction validates names and relation paths and sorts all
/// lists, so structural equality is independent of input order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Presentation {
    name: String,
    quiver: Quiver,
    relations: Vec<Relation>,
    #[serde(skip)]
    vertex_index: HashMap<String, usize>,
    #[serde(skip)]
    arrow_index: HashMap<String, usize>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Eq for Presentation {}

impl Presentation {
    pub fn new(
        name: &str,
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
    ) -> Result<Presentation, PresentationError> {
        let mut vertices = vertices;
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(PresentationError::Duplicate(w[0].clone()));
        }
        let mut arrows = arrows;
        arrows.sort_by(|a, b| a.name.cmp(&b.name));
        if let Some(w) = arrows.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(PresentationError::Duplicate(w[0].name.clone()));
        }
        let vertex_index: HashMap<String, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let arrow_index: HashMap<String, usize> = arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), i)).collect();
        for a in &arrows {
            if vertex_index.contains_key(&a.name) {
                return Err(PresentationError::Duplicate(a.name.clone()));
            }
            for v in [&a.source, &a.target] {
                if !vertex_index.contains_key(v) {
                    return Err(PresentationError::UnknownVertex(v.clone()));
                }
            }
        }
        let mut relations = relations;
        relations.sort();
        relations.dedup();
        let p = Presentation {
            name: name.to_string(),
            quiver: Quiver { vertices, arrows },
            relations,
            vertex_index,
            arrow_index,
        };
        for r in &p.relations {
            let (s, t) = p.path_endpoints(&r.left)?;
            if r.kind == RelationKind::Equal {
                if p.path_endpoints(&r.right)? != (s, t) {
                    return Err(PresentationError::NotParallel(r.to_string()));
                }
            }
        }
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertices(&self) -> &[String] {
        &self.quiver.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.quiver.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.vertex_index.contains_key(name)
    }

    pub fn require_vertex(&self, name: &str) -> Result<usize, PresentationError> {
        self.vertex(name).ok_or_else(|| PresentationError::UnknownVertex(name.to_string()))
    }

    pub fn require_arrow(&self, name: &str) -> Result<usize, PresentationError> {
        self.arrow(name).ok_or_else(|| PresentationError::UnknownArrow(name.to_string()))
    }

    /// Source and target vertex indices of arrow `a`.
    pub fn ends(&self, a: usize) -> (usize, usize) {
        let arrow = &self.quiver.arrows[a];
        (self.vertex_index[&arrow.source], self.vertex_index[&arrow.target])
    }

    /// Arrow indices of a written path in application order (first applied first).
    pub fn path_indices(&self, written: &[String]) -> Result<Vec<usize>, PresentationError> {
        written.iter().rev().map(|n| self.require_arrow(n)).collect()
    }

    /// Endpoints `(source, target)` of a written path; errors when not composable.
    pub fn path_endpoints(&self, written: &[String]) -> Result<(usize, usize), PresentationError> {
        let idx = self.path_indices(written)?;
        let (first, last) = match (idx.first(), idx.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(PresentationError::EmptyPath),
        };
        for w in idx.windows(2) {
            if self.ends(w[0]).1 != self.ends(w[1]).0 {
                return Err(PresentationError::NotComposable(written.join(" ")));
            }
        }
        Ok((self.ends(first).0, self.ends(last).1))
    }

    /// Arrows starting at vertex `x`.
    pub fn arrows_from(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrow_count()).filter(move |&a| self.ends(a).0 == x)
    }

    /// Arrows ending at vertex `x`.
    pub fn arrows_into(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrow_count()).filter(move |&a| self.ends(a).1 == x)
    }

    /// First violation of the special biserial arrow condition, if any: a vertex where two
    /// arrows of one letter class start or two end.
    pub fn special_biserial_violation(&self) -> Option<String> {
        for (x, v) in self.vertices().iter().enumerate() {
            for class in [LetterClass::Alpha, LetterClass::Beta] {
                let out = self.arrows_from(x).filter(|&a| self.arrows()[a].class == class).count();
                let inc = self.arrows_into(x).filter(|&a| self.arrows()[a].class == class).count();
                if out > 1 {
                    return Some(format!("{out} {class}-arrows start at {v}"));
                }
                if inc > 1 {
                    return Some(format!("{inc} {class}-arrows end at {v}"));
                }
            }
        }
        None
    }

    pub fn is_special_biserial(&self) -> bool {
        self.special_biserial_violation().is_none()
    }

    /// The presentation of the factor algebra obtained by killing every vertex outside `keep`:
    /// the full subquiver on `keep`, relations among surviving arrows, and an equality with one
    /// side through a killed vertex turned into a zero relation.
    pub fn restrict_to(&self, name: &str, keep: &BTreeSet<String>) -> Result<Presentation, PresentationError> {
        for v in keep {
            self.require_vertex(v)?;
        }
        let arrows: Vec<Arrow> =
            self.arrows().iter().filter(|a| keep.contains(&a.source) && keep.contains(&a.target)).cloned().collect();
        let alive: BTreeSet<&str> = arrows.iter().map(|a| a.name.as_str()).collect();
        let survives = |p: &[String]| p.iter().all(|n| alive.contains(n.as_str()));
        let mut relations = Vec::new();
        for r in &self.relations {
            let l = survives(&r.left);
            match r.kind {
                RelationKind::Zero if l => relations.push(r.clone()),
                RelationKind::Zero => {}
                RelationKind::Equal => match (l, survives(&r.right)) {
                    (true, true) => relations.push(r.clone()),
                    (true, false) => {
                        relations.push(Relation { kind: RelationKind::Zero, left: r.left.clone(), right: vec![] })
                    }
                    (false, true) => {
                        relations.push(Relation { kind: RelationKind::Zero, left: r.right.clone(), right: vec![] })
                    }
                    (false, false) => {}
                },
            }
        }
        Presentation::new(name, keep.iter().cloned().collect(), arrows, relations)
    }

    /// Whether `self` sits inside `big` as the full subquiver on its vertices, with every arrow
    /// carried by the same name and endpoints.
    pub fn is_subquiver_of(&self, big: &Presentation) -> bool {
        self.vertices().iter().all(|v| big.has_vertex(v))
            && self.arrows().iter().all(|a| big.arrow(&a.name).map(|i| &big.arrows()[i]) == Some(a))
            && big
                .arrows()
                .iter()
                .filter(|a| self.has_vertex(&a.source) && self.has_vertex(&a.target))
                .all(|a| self.arrow(&a.name).is_some())
    }

    /// Renames the presentation.
    pub fn with_name(mut self, name: &str) -> Presentation {
        self.name = name.to_string();
        self
    }
}
