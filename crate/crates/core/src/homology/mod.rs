//! Radicals, projective covers, syzygies, Hom spaces, isomorphism certificates and
//! projective dimension.

mod cover;
mod hom;
mod pd;
mod sub;

pub use cover::{projective_cover, syzygy, syzygy_chain, CoverData};
pub use hom::{certified_iso, default_trials, hom_basis, is_direct_summand_simple, HomBasis, IsoOutcome, SplitPair};
pub use pd::{projdim, PdOptions, PdReport, Verdict};
pub use sub::{
    cokernel_of, image_of, kernel_of, quotient, radical, radical_bases, socle_dims, submodule, top_dims, try_submodule,
};
