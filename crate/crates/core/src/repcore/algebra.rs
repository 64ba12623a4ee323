use std::sync::Arc;

use crate::linalg::Field;
use crate::presentation::{build_path_basis, PathBasis, Presentation, DEFAULT_LENGTH_BOUND};

use super::{projective, simple, RepError, Representation};

/// A presentation together with its path basis and indecomposable projectives.
#[derive(Clone, Debug)]
pub struct Algebra {
    basis: PathBasis,
    projectives: Vec<Representation>,
}

impl Algebra {
    pub fn new(p: &Presentation, field: Field) -> Result<Algebra, RepError> {
        Ok(Algebra::from_basis(build_path_basis(p, field, DEFAULT_LENGTH_BOUND)?))
    }

    pub fn from_basis(basis: PathBasis) -> Algebra {
        let projectives = basis
            .presentation()
            .vertices()
            .iter()
            .map(|v| projective(&basis, v).expect("vertex of the presentation"))
            .collect();
        Algebra { basis, projectives }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.basis.presentation()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn basis(&self) -> &PathBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn projective(&self, x: usize) -> &Representation {
        &self.projectives[x]
    }

    pub fn projective_named(&self, v: &str) -> Result<&Representation, RepError> {
        Ok(&self.projectives[self.presentation().require_vertex(v)?])
    }

    pub fn simple(&self, v: &str) -> Result<Representation, RepError> {
        simple(self.presentation(), self.field(), v)
    }
}
