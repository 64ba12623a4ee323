use crate::linalg::{FieldElem, Matrix};

use super::{RepError, Representation};

/// Vertexwise matrices from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: Representation,
    target: Representation,
    mats: Vec<Matrix>,
}

impl ModuleMap {
    /// Checks shapes only; use [`check_morphism`] for the intertwining condition.
    pub fn new(source: Representation, target: Representation, mats: Vec<Matrix>) -> Result<ModuleMap, RepError> {
        source.compatible(&target)?;
        let n = source.presentation().vertex_count();
        if mats.len() != n {
            return Err(RepError::Shape(format!("{} vertex matrices for {n} vertices", mats.len())));
        }
        for (x, m) in mats.iter().enumerate() {
            if m.shape() != (target.dim_at(x), source.dim_at(x)) {
                return Err(RepError::Shape(format!(
                    "map at {} is {}x{}, expected {}x{}",
                    source.presentation().vertices()[x],
                    m.rows(),
                    m.cols(),
                    target.dim_at(x),
                    source.dim_at(x)
                )));
            }
        }
        Ok(ModuleMap { source, target, mats })
    }

    pub(crate) fn assemble(source: Representation, target: Representation, mats: Vec<Matrix>) -> ModuleMap {
        ModuleMap { source, target, mats }
    }

    pub fn zero(source: &Representation, target: &Representation) -> ModuleMap {
        let f = source.field();
        let mats = (0..source.dims().len()).map(|x| Matrix::zeros(f, target.dim_at(x), source.dim_at(x))).collect();
        ModuleMap { source: source.clone(), target: target.clone(), mats }
    }

    pub fn identity(m: &Representation) -> ModuleMap {
        let mats = m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        ModuleMap { source: m.clone(), target: m.clone(), mats }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn at(&self, x: usize) -> &Matrix {
        &self.mats[x]
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Matrix::is_zero)
    }

    /// `self ∘ g`.
    pub fn compose_after(&self, g: &ModuleMap) -> Result<ModuleMap, RepError> {
        if g.target.dims() != self.source.dims() {
            return Err(RepError::Shape("composition of maps with mismatched modules".into()));
        }
        let mats = self.mats.iter().zip(&g.mats).map(|(a, b)| a * b).collect();
        Ok(ModuleMap { source: g.source.clone(), target: self.target.clone(), mats })
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.add(b)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), mats }
    }

    pub fn scale(&self, c: &FieldElem) -> ModuleMap {
        let mats = self.mats.iter().map(|a| a.scale(c)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), mats }
    }

    /// Whether every vertex matrix is invertible.
    pub fn is_iso(&self) -> bool {
        self.mats.iter().all(Matrix::is_invertible)
    }

    /// Vertexwise inverse, when every vertex matrix is invertible.
    pub fn inverse(&self) -> Option<ModuleMap> {
        let mats = self.mats.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { source: self.target.clone(), target: self.source.clone(), mats })
    }

    pub fn is_injective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.rows())
    }

    /// First arrow at which the intertwining condition fails.
    pub fn first_violation(&self) -> Option<String> {
        let p = self.source.presentation();
        (0..p.arrow_count()).find_map(|a| {
            let (s, t) = p.ends(a);
            let left = &self.mats[t] * self.source.mat(a);
            let right = self.target.mat(a) * &self.mats[s];
            (left != right).then(|| p.arrows()[a].name.clone())
        })
    }

    /// Flattened entries, vertex by vertex, row-major.
    pub fn to_vector(&self) -> Vec<FieldElem> {
        self.mats.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }
}

/// Whether `f` intertwines the arrow actions; errors on shape mismatch.
pub fn check_morphism(f: &ModuleMap) -> Result<bool, RepError> {
    let checked = ModuleMap::new(f.source.clone(), f.target.clone(), f.mats.clone())?;
    Ok(checked.first_violation().is_none())
}
