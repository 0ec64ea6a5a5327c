//! Exact-arithmetic models of bielliptic surfaces and the classification of
//! their Brauer maps: curves are rank-2 lattices, isogenies are complex
//! multipliers, and every verdict is decided by integer linear algebra.

pub mod classify;
pub mod exact;
pub mod isogeny;
pub mod lattice;
pub mod surface;
pub(crate) mod zmat;

pub use classify::{
    classify_canonical, classify_intermediate_cover, BrauerClassification, ClassifyError,
    ConditionReport, MapKind,
};
pub use exact::{AmbientTag, ExactError, QuadElement, Rational};
pub use isogeny::{
    generating_isogeny, hom_module, quotient_by_cyclic, EllipticCurve, HomKind, HomModule,
    Isogeny, IsogenyError, SpecialJ,
};
pub use lattice::{colon_lattice, multiplier_ring, ColonResult, Lattice, LatticeError,
    MultiplierRing, TorsionPoint};
pub use surface::{
    validate, GroupShape, SurfaceError, SurfaceInvariants, SurfacePoints, SurfaceSpec,
    ValidatedSurface,
};
