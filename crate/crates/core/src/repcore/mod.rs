//! Finite-dimensional representations of a presentation.

mod algebra;
mod construct;
mod dot;
mod map;
mod string;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{Field, LinalgError, Matrix};
use crate::presentation::{Presentation, PresentationError, RelationKind};

pub use algebra::Algebra;
pub use construct::{
    direct_sum, inflate, map_from_projective, projective, random_module, restrict, scramble, simple, supported_on,
    zero_module, DirectSum,
};
pub use dot::{presentation_dot, representation_dot};
pub use map::{check_morphism, ModuleMap};
pub use string::{string_module, Direction, Letter, StringWord};
pub use text::{emit_module, parse_modules, ModuleDef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("invalid string: {0}")]
    InvalidString(String),
    #[error("modules live over different presentations or fields")]
    Mixed,
    #[error("incompatible presentations: {0}")]
    Incompatible(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A module given by one vector space per vertex and one matrix per arrow
/// (`rows = dim(target)`, `cols = dim(source)`).
#[derive(Clone, Debug)]
pub struct Representation {
    presentation: Arc<Presentation>,
    field: Field,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.presentation, &other.presentation)
            && self.field == other.field
            && self.dims == other.dims
            && self.mats == other.mats
    }
}

impl Eq for Representation {}

pub(crate) fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(
        presentation: Arc<Presentation>,
        field: Field,
        dims: Vec<usize>,
        mats: Vec<Matrix>,
    ) -> Result<Representation, RepError> {
        let rep = Representation { presentation, field, dims, mats };
        rep.check_shapes()?;
        rep.check_relations()?;
        Ok(rep)
    }

    /// Skips validation; for modules that satisfy the relations by construction.
    pub(crate) fn assemble(
        presentation: Arc<Presentation>,
        field: Field,
        dims: Vec<usize>,
        mats: Vec<Matrix>,
    ) -> Representation {
        let rep = Representation { presentation, field, dims, mats };
        debug_assert!(rep.check_shapes().is_ok());
        rep
    }

    fn check_shapes(&self) -> Result<(), RepError> {
        let p = &self.presentation;
        if self.dims.len() != p.vertex_count() || self.mats.len() != p.arrow_count() {
            return Err(RepError::Shape(format!(
                "{} dims and {} matrices for {} vertices and {} arrows",
                self.dims.len(),
                self.mats.len(),
                p.vertex_count(),
                p.arrow_count()
            )));
        }
        for (a, m) in self.mats.iter().enumerate() {
            let (s, t) = p.ends(a);
            if m.shape() != (self.dims[t], self.dims[s]) || m.field() != self.field {
                return Err(RepError::Shape(format!(
                    "arrow {} has a {}x{} matrix, expected {}x{}",
                    p.arrows()[a].name,
                    m.rows(),
                    m.cols(),
                    self.dims[t],
                    self.dims[s]
                )));
            }
        }
        Ok(())
    }

    /// Errors naming the first relation that does not hold.
    pub fn check_relations(&self) -> Result<(), RepError> {
        let p = &self.presentation;
        for r in p.relations() {
            let left = self.eval_path(&p.path_indices(&r.left)?);
            let ok = match r.kind {
                RelationKind::Zero => left.is_zero(),
                RelationKind::Equal => left == self.eval_path(&p.path_indices(&r.right)?),
            };
            if !ok {
                return Err(RepError::RelationViolated(r.to_string()));
            }
        }
        Ok(())
    }

    /// Matrix of a nonempty path given in application order.
    pub fn eval_path(&self, arrows: &[usize]) -> Matrix {
        let mut acc = self.mats[arrows[0]].clone();
        for &a in &arrows[1..] {
            acc = &self.mats[a] * &acc;
        }
        acc
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }

    pub fn mat_named(&self, arrow: &str) -> Result<&Matrix, RepError> {
        Ok(&self.mats[self.presentation.require_arrow(arrow)?])
    }

    pub fn dim_named(&self, vertex: &str) -> usize {
        self.presentation.vertex(vertex).map_or(0, |x| self.dims[x])
    }

    /// Nonzero dimensions keyed by vertex name.
    pub fn dim_vector(&self) -> BTreeMap<String, usize> {
        self.presentation
            .vertices()
            .iter()
            .zip(&self.dims)
            .filter(|(_, &d)| d > 0)
            .map(|(v, &d)| (v.clone(), d))
            .collect()
    }

    pub(crate) fn compatible(&self, other: &Representation) -> Result<(), RepError> {
        if self.field != other.field || !same_presentation(&self.presentation, &other.presentation) {
            return Err(RepError::Mixed);
        }
        Ok(())
    }
}

/// Formats a dimension vector as `{a0:1, c2:2}`.
pub fn format_dims(dims: &BTreeMap<String, usize>) -> String {
    let parts: Vec<String> = dims.iter().map(|(v, d)| format!("{v}:{d}")).collect();
    format!("{{{}}}", parts.join(", "))
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", format_dims(&self.dim_vector()), self.presentation.name())
    }
}
