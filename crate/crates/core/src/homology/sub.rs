use crate::linalg::Matrix;
use crate::repcore::{ModuleMap, Representation};

/// The submodule spanned at each vertex by the columns of `bases[x]`, which must be linearly
/// independent and stable under the arrows.
pub fn submodule(m: &Representation, bases: Vec<Matrix>) -> (Representation, ModuleMap) {
    try_submodule(m, bases).expect("subspace is stable under the arrows")
}

/// Like [`submodule`], but `None` when some arrow leaves the subspace.
pub fn try_submodule(m: &Representation, bases: Vec<Matrix>) -> Option<(Representation, ModuleMap)> {
    let p = m.presentation();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut mats = Vec::with_capacity(p.arrow_count());
    for a in 0..p.arrow_count() {
        let (s, t) = p.ends(a);
        let image = m.mat(a) * &bases[s];
        if dims[s] == 0 || dims[t] == 0 {
            if !image.is_zero() {
                return None;
            }
            mats.push(Matrix::zeros(m.field(), dims[t], dims[s]));
            continue;
        }
        mats.push(bases[t].solve(&image).ok()?);
    }
    let sub = Representation::assemble(p.clone(), m.field(), dims, mats);
    let inc = ModuleMap::new(sub.clone(), m.clone(), bases).ok()?;
    Some((sub, inc))
}

/// The quotient of `m` by the stable subspaces spanned by `bases[x]`.
pub fn quotient(m: &Representation, bases: &[Matrix]) -> (Representation, ModuleMap) {
    let p = m.presentation();
    let field = m.field();
    let mut reps = Vec::new();
    let mut projs = Vec::new();
    for (x, b) in bases.iter().enumerate() {
        let c = b.complement();
        let n = m.dim_at(x);
        let proj = if n == 0 {
            Matrix::zeros(field, 0, 0)
        } else {
            let full = b.hstack(&c).inverse().expect("basis and complement span");
            full.submatrix(b.cols(), c.cols(), 0, n)
        };
        reps.push(c);
        projs.push(proj);
    }
    let dims: Vec<usize> = reps.iter().map(Matrix::cols).collect();
    let mats = (0..p.arrow_count())
        .map(|a| {
            let (s, t) = p.ends(a);
            if dims[s] == 0 || dims[t] == 0 {
                return Matrix::zeros(field, dims[t], dims[s]);
            }
            &(&projs[t] * m.mat(a)) * &reps[s]
        })
        .collect();
    let q = Representation::assemble(p.clone(), field, dims, mats);
    let pi = ModuleMap::new(m.clone(), q.clone(), projs).expect("projection shapes");
    (q, pi)
}

/// Basis of `rad(m)` at every vertex: the span of all arrow images.
pub fn radical_bases(m: &Representation) -> Vec<Matrix> {
    let p = m.presentation();
    (0..p.vertex_count())
        .map(|y| {
            let mut acc = Matrix::zeros(m.field(), m.dim_at(y), 0);
            for a in p.arrows_into(y) {
                acc = acc.hstack(m.mat(a));
            }
            acc.column_space()
        })
        .collect()
}

/// The radical with its inclusion.
pub fn radical(m: &Representation) -> (Representation, ModuleMap) {
    submodule(m, radical_bases(m))
}

/// Dimensions of `m / rad(m)` per vertex.
pub fn top_dims(m: &Representation) -> Vec<usize> {
    radical_bases(m).iter().zip(m.dims()).map(|(r, d)| d - r.cols()).collect()
}

/// Dimensions of the socle per vertex: vectors killed by every arrow.
pub fn socle_dims(m: &Representation) -> Vec<usize> {
    socle_bases(m).iter().map(Matrix::cols).collect()
}

pub(crate) fn socle_bases(m: &Representation) -> Vec<Matrix> {
    let p = m.presentation();
    (0..p.vertex_count())
        .map(|x| {
            let mut stacked = Matrix::zeros(m.field(), 0, m.dim_at(x));
            for a in p.arrows_from(x) {
                stacked = stacked.vstack(m.mat(a));
            }
            stacked.kernel_basis()
        })
        .collect()
}

/// Vertexwise kernel of `f` as a submodule of its source.
pub fn kernel_of(f: &ModuleMap) -> (Representation, ModuleMap) {
    let bases = f.mats().iter().map(Matrix::kernel_basis).collect();
    submodule(f.source(), bases)
}

/// Vertexwise image of `f` as a submodule of its target.
pub fn image_of(f: &ModuleMap) -> (Representation, ModuleMap) {
    let bases = f.mats().iter().map(Matrix::column_space).collect();
    submodule(f.target(), bases)
}

/// Vertexwise cokernel of `f` with the projection from its target.
pub fn cokernel_of(f: &ModuleMap) -> (Representation, ModuleMap) {
    let bases: Vec<Matrix> = f.mats().iter().map(Matrix::column_space).collect();
    quotient(f.target(), &bases)
}
