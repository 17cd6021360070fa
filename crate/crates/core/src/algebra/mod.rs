pub mod complex;
pub mod dvr;
pub mod eliminate;
pub mod f2;
pub mod grading;
pub mod poly;
pub mod wcomplex;

pub use complex::{BigradedComplex, Element, Generator, ValidationReport};
pub use dvr::{
    homology_dvr, homology_dvr_certified, plus_and_hat_views, DvrModule, HatView, PlusView,
    Stability, TruncationSettings,
};
pub use eliminate::{
    reduce, reduce_bigraded, reduce_w, reduction_identities_hold, BigradedReduction, EntryRing,
    PivotRule, Reduction, SparseMat, UvRing, WReduction, WRing,
};
pub use grading::{Bigrading, GradingMode};
pub use poly::{Monomial, PolyUV, WPoly};
pub use wcomplex::{WComplex, WGenerator};
